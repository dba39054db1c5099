//! Integer partitions (Young diagrams) and arm/leg lengths.

use alloc::vec::Vec;
use core::fmt;

/// A partition with weakly decreasing positive parts; `parts[i]` is the
/// length of row `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts; trailing zeros are dropped. Returns
    /// `None` if the parts increase anywhere.
    pub fn new(parts: &[u32]) -> Option<Self> {
        let parts: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length `lambda_i` (1-based), zero past the last row.
    pub fn row(&self, i: i32) -> i32 {
        if i < 1 {
            return 0;
        }
        self.parts.get(i as usize - 1).map_or(0, |&p| p as i32)
    }

    /// Column length `lambda'_j` (1-based).
    pub fn col(&self, j: i32) -> i32 {
        if j < 1 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p as i32 >= j).count() as i32
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0) as i32;
        Partition {
            parts: (1..=w).map(|j| self.col(j) as u32).collect(),
        }
    }

    /// Arm length `lambda_i - j` of cell `(i, j)`; negative outside the diagram.
    pub fn arm(&self, i: i32, j: i32) -> i32 {
        self.row(i) - j
    }

    /// Leg length `lambda'_j - i` of cell `(i, j)`.
    pub fn leg(&self, i: i32, j: i32) -> i32 {
        self.col(j) - i
    }

    pub fn hook(&self, i: i32, j: i32) -> i32 {
        self.arm(i, j) + self.leg(i, j) + 1
    }

    /// Cells `(i, j)`, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len as i32).map(move |j| (r as i32 + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first, then
/// `(n-1, 1)`, and so on down to `(1, ..., 1)`.
pub fn partitions_of(n: i64) -> crate::Result<Vec<Partition>> {
    if n < 0 {
        return Err(crate::Error::NegativeSize);
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n as u32, n as u32, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// `partitions_of(k)` for every `k <= n`.
pub fn partitions_up_to(n: u32) -> Vec<Vec<Partition>> {
    (0..=n)
        .map(|k| partitions_of(k as i64).expect("nonnegative"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        assert_eq!(partitions_of(0).unwrap(), [Partition::empty()]);
        let p4 = partitions_of(4).unwrap();
        assert_eq!(p4.len(), 5);
        assert_eq!(p4[0].parts(), &[4]);
        assert_eq!(p4[1].parts(), &[3, 1]);
        assert_eq!(p4[4].parts(), &[1, 1, 1, 1]);
        assert_eq!(partitions_of(-1), Err(crate::Error::NegativeSize));
    }

    #[test]
    fn arm_leg_outside() {
        let e = Partition::empty();
        assert_eq!(e.arm(1, 1), -1);
        assert_eq!(e.leg(1, 1), -1);
        let l = Partition::new(&[3, 1]).unwrap();
        assert_eq!(l.arm(1, 1), 2);
        assert_eq!(l.leg(1, 1), 1);
        assert_eq!(l.hook(1, 1), 4);
        assert_eq!(l.conjugate().parts(), &[2, 1, 1]);
    }
}
