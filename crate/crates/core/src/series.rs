//! Truncated series in `zeta = Z^(1/4)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::num::Complex;
use crate::scalar::Scalar;

/// A series `sum_k c_k zeta^k` known through `zeta^order`.
///
/// Absent exponents are zero; coefficients above `order` are never stored.
#[derive(Clone, Debug)]
pub struct GradedSeries<S> {
    order: i32,
    coeffs: BTreeMap<i32, S>,
}

impl<S: Scalar> GradedSeries<S> {
    /// The zero series.
    pub fn zero(order: i32) -> Self {
        GradedSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant `c`.
    pub fn constant(c: S, order: i32) -> Self {
        GradedSeries::monomial(0, c, order)
    }

    /// `c zeta^k`.
    pub fn monomial(k: i32, c: S, order: i32) -> Self {
        let mut s = GradedSeries::zero(order);
        s.add_term(k, c);
        s
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i32, S)>>(it: I, order: i32) -> Self {
        let mut s = GradedSeries::zero(order);
        for (k, c) in it {
            s.add_term(k, c);
        }
        s
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Adds `c zeta^k` in place; ignored above the order.
    pub fn add_term(&mut self, k: i32, c: S) {
        if k > self.order || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(v) => {
                *v = v.plus(&c);
                if v.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn coeff(&self, k: i32) -> Option<&S> {
        self.coeffs.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &S)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Drops terms above `order` and lowers the recorded order.
    pub fn truncate(&self, order: i32) -> Self {
        let order = order.min(self.order);
        GradedSeries {
            order,
            coeffs: self
                .coeffs
                .range(..=order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut r = self.truncate(order);
        for (k, v) in o.coeffs.range(..=order) {
            r.add_term(*k, v.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        GradedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.negated())).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    ///
    /// Sound when both operands start at a nonnegative exponent; for series
    /// with negative exponents the caller picks the order to keep.
    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut r = GradedSeries::zero(order);
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                if i + j > order {
                    break;
                }
                r.add_term(i + j, a.times(b));
            }
        }
        r
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &S) -> Self {
        let mut r = GradedSeries::zero(self.order);
        for (k, v) in &self.coeffs {
            r.add_term(*k, v.times(c));
        }
        r
    }

    /// Multiplies by `zeta^k`; the known order moves with it.
    pub fn shift(&self, k: i32) -> Self {
        GradedSeries {
            order: self.order + k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (e + k, v.clone()))
                .collect(),
        }
    }

    /// Multiplies the coefficient of `zeta^k` by `f(k)`; realizes substitutions
    /// `Z -> c Z` with `f(k) = c^(k/4)`.
    pub fn scale_z_by(&self, f: impl Fn(i32) -> S) -> Self {
        let mut r = GradedSeries::zero(self.order);
        for (k, v) in &self.coeffs {
            r.add_term(*k, v.times(&f(*k)));
        }
        r
    }

    /// Multiplies the coefficient of `zeta^k` by `c^k` (`c` is the image of
    /// `zeta` under the substitution). Exponents must be nonnegative.
    pub fn scale_z(&self, c: &S) -> Self {
        let top = self.coeffs.keys().next_back().copied().unwrap_or(0);
        assert!(
            self.min_exponent().unwrap_or(0) >= 0,
            "scale_z needs nonnegative exponents; use scale_z_by"
        );
        let mut pows = Vec::with_capacity(top as usize + 1);
        pows.push(c.one_like());
        for k in 1..=top as usize {
            let next = pows[k - 1].times(c);
            pows.push(next);
        }
        self.scale_z_by(|k| pows[k as usize].clone())
    }

    /// Flips the branch of `Z^(1/2)`: coefficients at `zeta^k` with
    /// `k = 2 mod 4` change sign. Meaningful for series on even exponents.
    pub fn flip_sqrt_branch(&self) -> Self {
        GradedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| {
                    (
                        *k,
                        if k.rem_euclid(4) == 2 {
                            v.negated()
                        } else {
                            v.clone()
                        },
                    )
                })
                .collect(),
        }
    }

    /// Coefficients that are not negligible at tolerance `10^tol_exp10`.
    pub fn residuals(&self, tol_exp10: i32) -> Vec<(i32, S)> {
        self.coeffs
            .iter()
            .filter(|(_, v)| !v.negligible(tol_exp10))
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }

    /// Largest log10 magnitude among coefficients (`-inf` for zero).
    pub fn max_log10(&self) -> f64 {
        self.coeffs
            .values()
            .map(|v| v.log10_abs())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedSeries<T> {
        let mut r = GradedSeries::zero(self.order);
        for (k, v) in &self.coeffs {
            r.add_term(*k, f(v));
        }
        r
    }

    /// Keeps only exponents with `k mod m == r`.
    pub fn sector(&self, m: i32, r: i32) -> Self {
        GradedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.rem_euclid(m) == r)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

impl GradedSeries<Complex> {
    /// Sums the series at a value of `zeta`.
    pub fn eval(&self, zeta: &Complex) -> Complex {
        let mut acc = Complex::zero(zeta.precision());
        for (k, v) in &self.coeffs {
            acc = &acc + &(v * &zeta.powi(*k as i64));
        }
        acc
    }
}

impl<S: Scalar + PartialEq> PartialEq for GradedSeries<S> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactScalar;

    fn ex(v: i64) -> ExactScalar {
        ExactScalar::from_i64(v)
    }

    #[test]
    fn difference_of_squares() {
        let f = GradedSeries::from_coeffs([(0, ex(1)), (4, ex(1))], 8);
        let g = GradedSeries::from_coeffs([(0, ex(1)), (4, ex(-1))], 8);
        let p = f.mul(&g);
        assert_eq!(p, GradedSeries::from_coeffs([(0, ex(1)), (8, ex(-1))], 8));
        assert!(f.mul(&GradedSeries::zero(8)).is_zero());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let f = GradedSeries::from_coeffs([(0, ex(1)), (2, ex(1))], 3);
        let p = f.mul(&f);
        assert_eq!(p, GradedSeries::from_coeffs([(0, ex(1)), (2, ex(2))], 3));
    }

    #[test]
    fn scale_z_examples() {
        let a = ExactScalar::var(0, 1);
        let z = GradedSeries::monomial(4, ex(1), 8);
        assert_eq!(z.scale_z(&a).coeff(4), Some(&ExactScalar::var(0, 4)));
        let one = GradedSeries::constant(ex(1), 8);
        assert_eq!(one.scale_z(&a), one);
        let half = GradedSeries::monomial(2, ex(1), 8);
        let back = half.scale_z_by(|k| ExactScalar::var(0, -k));
        assert_eq!(back.coeff(2), Some(&ExactScalar::var(0, -2)));
    }

    #[test]
    fn residual_listing() {
        let p = crate::num::Precision::digits(30);
        let s = GradedSeries::from_coeffs(
            [
                (4, Complex::from_f64(1e-8, p)),
                (8, Complex::from_f64(1e-25, p)),
            ],
            8,
        );
        let r = s.residuals(-20);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, 4);
        assert!(GradedSeries::<ExactScalar>::zero(4)
            .residuals(-20)
            .is_empty());
    }
}
