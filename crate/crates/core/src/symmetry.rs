//! The group `W = Dih_4 ⋉ W(A_1^(1))` acting on the surface coordinates
//! `(Z, q, F, G)` and on the four tau letters.
//!
//! Generators act as maps of points, and words compose as functions: the word
//! `[a, b]` is `a ∘ b`, so `b` acts first. In this convention
//! `T = π2^-1 ∘ s0` reproduces the printed overline formulas.
//!
//! Quarter powers are independent generators: a letter state carries
//! `q^(1/4)` and `Z^(1/4)`, and `π1` inverts `q^(1/4)` formally.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::num::{Complex, Precision};
use crate::sample::Sampler;

/// Field operations for the sample types.
pub trait Field: Clone + Debug {
    fn int_like(&self, v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Fails with `SingularLocus` on a (numerically) vanishing value.
    fn inv(&self) -> Result<Self>;
    /// `log10 |a - b| / max(1, |a|, |b|)`; `-inf` for exact equality.
    fn discrepancy(&self, o: &Self) -> f64;

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
    fn sqr(&self) -> Self {
        self.mul(self)
    }
    fn one_like(&self) -> Self {
        self.int_like(1)
    }
}

impl Field for BigRational {
    fn int_like(&self, v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::SingularLocus)
        } else {
            Ok(self.recip())
        }
    }
    fn discrepancy(&self, o: &Self) -> f64 {
        if self == o {
            return f64::NEG_INFINITY;
        }
        let d = (self - o).abs().to_f64().unwrap_or(f64::INFINITY);
        let s = self
            .abs()
            .max(o.abs())
            .max(BigRational::one())
            .to_f64()
            .unwrap_or(1.0);
        num_traits::Float::log10(d / s)
    }
}

impl Field for Complex {
    fn int_like(&self, v: i64) -> Self {
        Complex::from_i64(v, self.precision())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Result<Self> {
        if self.below(-(self.precision().get() as i32) + 10) {
            Err(Error::SingularLocus)
        } else {
            Ok(Complex::inv(self))
        }
    }
    fn discrepancy(&self, o: &Self) -> f64 {
        let s = self.log10_abs().max(o.log10_abs()).max(0.0);
        (self - o).log10_abs() - s
    }
}

impl Field for ExactScalar {
    fn int_like(&self, v: i64) -> Self {
        ExactScalar::from_i64(v)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Result<Self> {
        ExactScalar::inv(self).ok_or(Error::SingularLocus)
    }
    fn discrepancy(&self, o: &Self) -> f64 {
        if self == o {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    }
}

/// Generators and distinguished elements of `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S0,
    S1,
    Pi1,
    Pi2,
    Pi2Inv,
    /// `π2^2`, the Bäcklund transformation.
    Pi2Sq,
    /// `T = π2^-1 ∘ s0`.
    T,
    TInv,
}

impl Gen {
    pub const ALL: [Gen; 8] = [
        Gen::S0,
        Gen::S1,
        Gen::Pi1,
        Gen::Pi2,
        Gen::Pi2Inv,
        Gen::Pi2Sq,
        Gen::T,
        Gen::TInv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gen::S0 => "s0",
            Gen::S1 => "s1",
            Gen::Pi1 => "pi1",
            Gen::Pi2 => "pi2",
            Gen::Pi2Inv => "pi2^-1",
            Gen::Pi2Sq => "pi2^2",
            Gen::T => "T",
            Gen::TInv => "T^-1",
        }
    }
}

/// Which version of the action to use. `CorruptedPi2` perturbs the image of
/// `π2` (the sign of `F` on the surface, `T2 -> T2 - T1` on letters) and
/// serves as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Printed,
    CorruptedPi2,
}

/// A point `(Z, q, F, G)` of the surface.
#[derive(Clone, Debug, PartialEq)]
pub struct Surface<S> {
    pub z: S,
    pub q: S,
    pub f: S,
    pub g: S,
}

/// Tau letters `T1..T4` together with `q^(1/4)` and `Z^(1/4)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Letters<S> {
    pub t: [S; 4],
    pub q4: S,
    pub z4: S,
}

/// States the group acts on.
pub trait State: Sized + Clone {
    fn apply(&self, g: Gen, variant: Variant) -> Result<Self>;

    /// The largest [`Field::discrepancy`] over all coordinates.
    fn discrepancy(&self, o: &Self) -> f64;

    /// Applies a word, rightmost generator first.
    fn apply_word(&self, word: &[Gen], variant: Variant) -> Result<Self> {
        let mut s = self.clone();
        for g in word.iter().rev() {
            s = s.apply(*g, variant)?;
        }
        Ok(s)
    }
}

fn max_disc<S: Field>(pairs: &[(&S, &S)]) -> f64 {
    pairs
        .iter()
        .map(|(a, b)| a.discrepancy(b))
        .fold(f64::NEG_INFINITY, f64::max)
}

impl<S: Field> Surface<S> {
    fn pi2(&self, variant: Variant) -> Result<Self> {
        let Surface { z, q, f, g } = self;
        let mut f_new = g.div(z)?;
        if variant == Variant::CorruptedPi2 {
            f_new = f_new.int_like(0).sub(&f_new);
        }
        Ok(Surface {
            z: q.mul(z).inv()?,
            q: q.clone(),
            f: f_new,
            g: f.inv()?,
        })
    }

    fn pi2_inv(&self) -> Result<Self> {
        let Surface { z, q, f, g } = self;
        let qz = q.mul(z);
        Ok(Surface {
            z: qz.inv()?,
            q: q.clone(),
            f: g.inv()?,
            g: f.div(&qz)?,
        })
    }

    fn s0(&self) -> Result<Self> {
        let Surface { z, q, f, g } = self;
        let one = z.one_like();
        let qz = q.mul(z);
        let ratio = one.sub(f).div(&qz.sub(f))?;
        Ok(Surface {
            z: q.mul(&qz).inv()?,
            q: q.clone(),
            f: f.div(&qz)?,
            g: g.mul(&ratio.sqr()),
        })
    }

    fn t(&self) -> Result<Self> {
        let Surface { z, q, f, g } = self;
        let one = z.one_like();
        let qz = q.mul(z);
        let num = f.sub(&qz).sqr();
        let den = f.sub(&one).sqr().mul(g);
        Ok(Surface {
            z: qz,
            q: q.clone(),
            f: num.div(&den)?,
            g: f.clone(),
        })
    }

    fn t_inv(&self) -> Result<Self> {
        let Surface { z, q, f, g } = self;
        let one = z.one_like();
        let num = g.sub(z).sqr();
        let den = f.mul(&g.sub(&one).sqr());
        Ok(Surface {
            z: z.div(q)?,
            q: q.clone(),
            f: g.clone(),
            g: num.div(&den)?,
        })
    }
}

impl<S: Field> State for Surface<S> {
    fn apply(&self, gen: Gen, variant: Variant) -> Result<Self> {
        let Surface { z, q, f, g } = self;
        let one = z.one_like();
        match gen {
            Gen::Pi1 => Ok(Surface {
                z: z.inv()?,
                q: q.inv()?,
                f: f.div(&q.mul(z))?,
                g: g.inv()?,
            }),
            Gen::Pi2 => self.pi2(variant),
            Gen::Pi2Inv if variant == Variant::Printed => self.pi2_inv(),
            Gen::Pi2Inv => self.apply_word(&[Gen::Pi2, Gen::Pi2, Gen::Pi2], variant),
            Gen::Pi2Sq => self.pi2(variant)?.pi2(variant),
            Gen::S1 => {
                let ratio = g.sub(&one).div(&g.sub(z))?;
                Ok(Surface {
                    z: z.inv()?,
                    q: q.clone(),
                    f: f.mul(&ratio.sqr()),
                    g: g.div(z)?,
                })
            }
            Gen::S0 => self.s0(),
            Gen::T => self.t(),
            Gen::TInv => self.t_inv(),
        }
    }

    fn discrepancy(&self, o: &Self) -> f64 {
        max_disc(&[
            (&self.z, &o.z),
            (&self.q, &o.q),
            (&self.f, &o.f),
            (&self.g, &o.g),
        ])
    }
}

impl<S: Field> Letters<S> {
    /// `Z`.
    pub fn z(&self) -> S {
        self.z4.sqr().sqr()
    }

    /// `q`.
    pub fn q(&self) -> S {
        self.q4.sqr().sqr()
    }

    /// The surface point with `F = -(qZ)^(1/2) T2^2 / T4^2` and
    /// `G = -Z^(1/2) T1^2 / T3^2`.
    pub fn surface(&self) -> Result<Surface<S>> {
        let [t1, t2, t3, t4] = &self.t;
        let zero = self.z4.int_like(0);
        let qz2 = self.q4.mul(&self.z4).sqr();
        let f = zero.sub(&qz2.mul(&t2.sqr()).div(&t4.sqr())?);
        let g = zero.sub(&self.z4.sqr().mul(&t1.sqr()).div(&t3.sqr())?);
        Ok(Surface {
            z: self.z(),
            q: self.q(),
            f,
            g,
        })
    }

    fn permuted(&self, images: [usize; 4], z4: S, q4: S) -> Self {
        let t = images.map(|i| self.t[i].clone());
        Letters { t, q4, z4 }
    }

    /// `(a^2 + w^2 b^2) / (w c)`.
    fn mutation(a: &S, b: &S, c: &S, w: &S) -> Result<S> {
        a.sqr().add(&w.sqr().mul(&b.sqr())).div(&w.mul(c))
    }

    fn pi2(&self, variant: Variant) -> Result<Self> {
        let z4 = self.q4.mul(&self.z4).inv()?;
        let mut out = self.permuted([3, 0, 1, 2], z4, self.q4.clone());
        if variant == Variant::CorruptedPi2 {
            out.t[1] = out.t[1].int_like(0).sub(&out.t[1]).add(&out.t[2]);
        }
        Ok(out)
    }

    fn s0(&self) -> Result<Self> {
        let [t1, t2, t3, t4] = &self.t;
        let w = self.q4.mul(&self.z4);
        let z4 = self.q4.sqr().mul(&self.z4).inv()?;
        Ok(Letters {
            t: [
                Self::mutation(t4, t2, t3, &w)?,
                t2.clone(),
                Self::mutation(t2, t4, t1, &w)?,
                t4.clone(),
            ],
            q4: self.q4.clone(),
            z4,
        })
    }
}

impl<S: Field> State for Letters<S> {
    fn apply(&self, gen: Gen, variant: Variant) -> Result<Self> {
        let [t1, t2, t3, t4] = &self.t;
        match gen {
            Gen::Pi1 => Ok(self.permuted([2, 1, 0, 3], self.z4.inv()?, self.q4.inv()?)),
            Gen::Pi2 => self.pi2(variant),
            Gen::Pi2Inv if variant == Variant::Printed => {
                let z4 = self.q4.mul(&self.z4).inv()?;
                Ok(self.permuted([1, 2, 3, 0], z4, self.q4.clone()))
            }
            Gen::Pi2Inv => self.apply_word(&[Gen::Pi2, Gen::Pi2, Gen::Pi2], variant),
            Gen::Pi2Sq => self.pi2(variant)?.pi2(variant),
            Gen::S1 => {
                let w = &self.z4;
                Ok(Letters {
                    t: [
                        t1.clone(),
                        Self::mutation(t3, t1, t4, w)?,
                        t3.clone(),
                        Self::mutation(t1, t3, t2, w)?,
                    ],
                    q4: self.q4.clone(),
                    z4: w.inv()?,
                })
            }
            Gen::S0 => self.s0(),
            Gen::T => {
                let w = self.q4.mul(&self.z4);
                Ok(Letters {
                    t: [
                        t2.clone(),
                        Self::mutation(t2, t4, t1, &w)?,
                        t4.clone(),
                        Self::mutation(t4, t2, t3, &w)?,
                    ],
                    q4: self.q4.clone(),
                    z4: w,
                })
            }
            // T^-1 = s0 ∘ π2
            Gen::TInv => self.pi2(variant)?.s0(),
        }
    }

    fn discrepancy(&self, o: &Self) -> f64 {
        let mut pairs: Vec<(&S, &S)> = self.t.iter().zip(o.t.iter()).collect();
        pairs.push((&self.q4, &o.q4));
        pairs.push((&self.z4, &o.z4));
        max_disc(&pairs)
    }
}

/// A relation `lhs = rhs` between words.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: &'static [Gen],
    pub rhs: &'static [Gen],
}

use Gen::*;

/// The defining relations of `W`, the conjugation relations of the
/// letter representation and the definitions of `T`, `T^-1` and `π2^±1`.
pub const RELATIONS: &[Relation] = &[
    Relation {
        name: "s0^2 = 1",
        lhs: &[S0, S0],
        rhs: &[],
    },
    Relation {
        name: "s1^2 = 1",
        lhs: &[S1, S1],
        rhs: &[],
    },
    Relation {
        name: "pi1^2 = 1",
        lhs: &[Pi1, Pi1],
        rhs: &[],
    },
    Relation {
        name: "pi2^4 = 1",
        lhs: &[Pi2, Pi2, Pi2, Pi2],
        rhs: &[],
    },
    Relation {
        name: "(pi1 pi2)^2 = 1",
        lhs: &[Pi1, Pi2, Pi1, Pi2],
        rhs: &[],
    },
    Relation {
        name: "s1 = pi2 s0 pi2^-1",
        lhs: &[S1],
        rhs: &[Pi2, S0, Pi2Inv],
    },
    Relation {
        name: "s0 = pi2^2 s0 pi2^-2",
        lhs: &[S0],
        rhs: &[Pi2, Pi2, S0, Pi2Inv, Pi2Inv],
    },
    Relation {
        name: "s0 = pi1 s0 pi1^-1",
        lhs: &[S0],
        rhs: &[Pi1, S0, Pi1],
    },
    Relation {
        name: "s1 = pi1 s1 pi1^-1",
        lhs: &[S1],
        rhs: &[Pi1, S1, Pi1],
    },
    Relation {
        name: "s1 = pi2^2 s1 pi2^-2",
        lhs: &[S1],
        rhs: &[Pi2, Pi2, S1, Pi2Inv, Pi2Inv],
    },
    Relation {
        name: "pi2 pi2^-1 = 1",
        lhs: &[Pi2, Pi2Inv],
        rhs: &[],
    },
    Relation {
        name: "pi2^2 = pi2 pi2",
        lhs: &[Pi2Sq],
        rhs: &[Pi2, Pi2],
    },
    Relation {
        name: "T = pi2^-1 s0",
        lhs: &[T],
        rhs: &[Pi2Inv, S0],
    },
    Relation {
        name: "T T^-1 = 1",
        lhs: &[T, TInv],
        rhs: &[],
    },
    Relation {
        name: "T^-1 T = 1",
        lhs: &[TInv, T],
        rhs: &[],
    },
];

/// The discrepancy of a relation at a state.
pub fn relation_discrepancy<St: State>(
    rel: &Relation,
    state: &St,
    variant: Variant,
) -> Result<f64> {
    let a = state.apply_word(rel.lhs, variant)?;
    let b = state.apply_word(rel.rhs, variant)?;
    Ok(a.discrepancy(&b))
}

/// Compares the surface map of `gen` with the action induced through
/// `F, G` of the letters.
pub fn induced_discrepancy<S: Field>(gen: Gen, letters: &Letters<S>) -> Result<f64> {
    let direct = letters.surface()?.apply(gen, Variant::Printed)?;
    let induced = letters.apply(gen, Variant::Printed)?.surface()?;
    Ok(direct.discrepancy(&induced))
}

/// `G(qZ) G(Z/q) (G - 1)^2 - (G - Z)^2` from the `T`, `T^-1` maps.
pub fn qpp_residual<S: Field>(p: &Surface<S>) -> Result<S> {
    let up = p.apply(Gen::T, Variant::Printed)?;
    let down = p.apply(Gen::TInv, Variant::Printed)?;
    let one = p.z.one_like();
    Ok(up
        .g
        .mul(&down.g)
        .mul(&p.g.sub(&one).sqr())
        .sub(&p.g.sub(&p.z).sqr()))
}

/// `T1`, `T3` along a `T`-orbit: entry `k` belongs to `q^(k - offset) Z`.
#[derive(Clone, Debug)]
pub struct Orbit<S> {
    pub t1: Vec<S>,
    pub t3: Vec<S>,
    pub offset: usize,
    pub q4: S,
    pub z4: S,
}

impl<S: Field> Orbit<S> {
    /// The orbit `T^k(letters)` for `-radius <= k <= radius`.
    pub fn of(letters: &Letters<S>, radius: usize) -> Result<Self> {
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        let mut s = letters.clone();
        for _ in 0..radius {
            s = s.apply(Gen::T, Variant::Printed)?;
            fwd.push(s.clone());
        }
        let mut s = letters.clone();
        for _ in 0..radius {
            s = s.apply(Gen::TInv, Variant::Printed)?;
            back.push(s.clone());
        }
        back.reverse();
        let states: Vec<Letters<S>> = back
            .into_iter()
            .chain(core::iter::once(letters.clone()))
            .chain(fwd)
            .collect();
        Ok(Orbit {
            t1: states.iter().map(|s| s.t[0].clone()).collect(),
            t3: states.iter().map(|s| s.t[2].clone()).collect(),
            offset: radius,
            q4: letters.q4.clone(),
            z4: letters.z4.clone(),
        })
    }

    fn idx(&self, k: i64) -> usize {
        (k + self.offset as i64) as usize
    }

    /// `Z^(1/4)` at step `k`.
    fn z4_at(&self, k: i64) -> Result<S> {
        let mut w = self.z4.clone();
        for _ in 0..k.unsigned_abs() {
            w = if k > 0 {
                w.mul(&self.q4)
            } else {
                w.div(&self.q4)?
            };
        }
        Ok(w)
    }

    /// Residuals of `Z^(1/4) T(qZ) T(Z/q) = T^2 + Z^(1/2) T'^2` for
    /// `(T, T') = (T1, T3)` and `(T3, T1)` at step `k`.
    pub fn tau13(&self, k: i64) -> Result<[S; 2]> {
        let w = self.z4_at(k)?;
        let (i, up, dn) = (self.idx(k), self.idx(k + 1), self.idx(k - 1));
        let one = |a: &[S], b: &[S]| {
            a[up]
                .mul(&a[dn])
                .mul(&w)
                .sub(&a[i].sqr())
                .sub(&w.sqr().mul(&b[i].sqr()))
        };
        Ok([one(&self.t1, &self.t3), one(&self.t3, &self.t1)])
    }

    /// `x = q^(-1/4) Z^(1/4) T3(Z/q) T1(qZ) / (T3 T1)` at step `k`.
    pub fn x(&self, k: i64) -> Result<S> {
        let (i, up, dn) = (self.idx(k), self.idx(k + 1), self.idx(k - 1));
        let num = self.z4_at(k)?.mul(&self.t3[dn]).mul(&self.t1[up]);
        num.div(&self.q4.mul(&self.t3[i]).mul(&self.t1[i]))
    }

    /// `y = q^(1/4) T3(qZ) T1 / (T3 T1(qZ))` at step `k`.
    pub fn y(&self, k: i64) -> Result<S> {
        let (i, up) = (self.idx(k), self.idx(k + 1));
        self.q4
            .mul(&self.t3[up])
            .mul(&self.t1[i])
            .div(&self.t3[i].mul(&self.t1[up]))
    }

    /// Residuals of `(x(qZ) y - 1)(x y - 1) = Z y^2` and
    /// `(x y - 1)(x y(Z/q) - 1) = Z` at step `k`.
    pub fn gr_residuals(&self, k: i64) -> Result<[S; 2]> {
        let (x, y) = (self.x(k)?, self.y(k)?);
        let one = x.one_like();
        let z = self.z4_at(k)?.sqr().sqr();
        let xy1 = x.mul(&y).sub(&one);
        let a = self
            .x(k + 1)?
            .mul(&y)
            .sub(&one)
            .mul(&xy1)
            .sub(&z.mul(&y.sqr()));
        let b = xy1.mul(&x.mul(&self.y(k - 1)?).sub(&one)).sub(&z);
        Ok([a, b])
    }

    /// `g = 1 - x y`.
    pub fn g(&self, k: i64) -> Result<S> {
        Ok(self.x(k)?.one_like().sub(&self.x(k)?.mul(&self.y(k)?)))
    }

    /// `f = -q^(1/2) g(Z/q) / y(Z/q)`.
    pub fn f(&self, k: i64) -> Result<S> {
        let v = self.q4.sqr().mul(&self.g(k - 1)?).div(&self.y(k - 1)?)?;
        Ok(v.int_like(0).sub(&v))
    }

    /// Residuals of `f f(qZ) = g (Z - g) / (g - 1)` and `g g(qZ) = f(qZ)^2`
    /// at step `k`.
    pub fn sakai_residuals(&self, k: i64) -> Result<[S; 2]> {
        let (f, g) = (self.f(k)?, self.g(k)?);
        let (f1, g1) = (self.f(k + 1)?, self.g(k + 1)?);
        let z = self.z4_at(k)?.sqr().sqr();
        let one = g.one_like();
        let a = f.mul(&f1).sub(&g.mul(&z.sub(&g)).div(&g.sub(&one))?);
        let b = g.mul(&g1).sub(&f1.sqr());
        Ok([a, b])
    }
}

/// Which state space a check samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Surface,
    Letters,
}

/// How states are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Random rationals with numerator and denominator at most `10^3`.
    Rational,
    /// Random complex points at the given precision.
    Numeric(Precision),
    /// One generic point: every coordinate an independent generator.
    Symbolic,
}

impl Sampling {
    /// The `log10` discrepancy a passing check may reach.
    pub fn threshold(self) -> f64 {
        match self {
            Sampling::Numeric(p) => -(p.get() as f64 - 10.0),
            _ => f64::NEG_INFINITY,
        }
    }

    fn passes(self, d: f64) -> bool {
        match self {
            Sampling::Numeric(_) => d < self.threshold(),
            _ => d == f64::NEG_INFINITY,
        }
    }
}

/// Outcome of a randomized check.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialSummary {
    pub trials: usize,
    /// Samples drawn on a singular locus and replaced.
    pub resampled: usize,
    /// Largest `log10` discrepancy seen.
    pub max_log10: f64,
    /// Names of the checks that failed on some sample.
    pub failures: Vec<&'static str>,
}

impl TrialSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Check<St> = (&'static str, fn(&St) -> Result<f64>);

fn run_trials<St>(
    trials: usize,
    sampling: Sampling,
    mut draw: impl FnMut() -> St,
    checks: &[Check<St>],
) -> TrialSummary {
    let trials = if sampling == Sampling::Symbolic {
        1
    } else {
        trials
    };
    let mut out = TrialSummary {
        trials,
        resampled: 0,
        max_log10: f64::NEG_INFINITY,
        failures: Vec::new(),
    };
    let mut done = 0;
    while done < trials {
        let st = draw();
        let results: Result<Vec<f64>> = checks.iter().map(|(_, c)| c(&st)).collect();
        let Ok(results) = results else {
            out.resampled += 1;
            if out.resampled > 10 * trials + 10 {
                out.failures.push("too many singular samples");
                return out;
            }
            continue;
        };
        for ((name, _), d) in checks.iter().zip(results) {
            out.max_log10 = out.max_log10.max(d);
            if !sampling.passes(d) && !out.failures.contains(name) {
                out.failures.push(name);
            }
        }
        done += 1;
    }
    out
}

/// Draws surface points.
pub fn surface_sample<S: Field>(
    sampler: &mut Sampler,
    draw: &mut impl FnMut(&mut Sampler) -> S,
) -> Surface<S> {
    Surface {
        z: draw(sampler),
        q: draw(sampler),
        f: draw(sampler),
        g: draw(sampler),
    }
}

/// Draws letter states.
pub fn letters_sample<S: Field>(
    sampler: &mut Sampler,
    draw: &mut impl FnMut(&mut Sampler) -> S,
) -> Letters<S> {
    Letters {
        t: [draw(sampler), draw(sampler), draw(sampler), draw(sampler)],
        q4: draw(sampler),
        z4: draw(sampler),
    }
}

fn rational_coordinate(s: &mut Sampler) -> BigRational {
    s.rational(1000)
}

fn complex_coordinate(s: &mut Sampler) -> Complex {
    s.polar(0.5, 2.0, 3.1)
}

/// Dispatches a generic check body over the three samplings.
macro_rules! over_sampling {
    ($sampling:expr, $seed:expr, |$sampler:ident, $draw:ident| $body:expr) => {{
        let p = match $sampling {
            Sampling::Numeric(p) => p,
            _ => Precision::digits(30),
        };
        let mut $sampler = Sampler::new($seed, p);
        match $sampling {
            Sampling::Rational => {
                let mut $draw = rational_coordinate;
                $body
            }
            Sampling::Numeric(_) => {
                let mut $draw = complex_coordinate;
                $body
            }
            Sampling::Symbolic => {
                let mut next = 0;
                let mut $draw = move |_: &mut Sampler| {
                    next += 1;
                    ExactScalar::var(next - 1, 1)
                };
                $body
            }
        }
    }};
}

fn relation_checks<St: State>(variant: Variant) -> Vec<Check<St>> {
    fn at<St: State, const I: usize, const C: bool>(st: &St) -> Result<f64> {
        let v = if C {
            Variant::CorruptedPi2
        } else {
            Variant::Printed
        };
        relation_discrepancy(&RELATIONS[I], st, v)
    }
    macro_rules! list {
        ($($i:literal),*) => {
            if variant == Variant::Printed {
                vec![$((RELATIONS[$i].name, at::<St, $i, false> as fn(&St) -> Result<f64>)),*]
            } else {
                vec![$((RELATIONS[$i].name, at::<St, $i, true> as fn(&St) -> Result<f64>)),*]
            }
        };
    }
    list!(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14)
}

/// Checks every entry of [`RELATIONS`] on sampled states.
pub fn verify_relations(
    trials: usize,
    seed: u64,
    representation: Representation,
    sampling: Sampling,
    variant: Variant,
) -> TrialSummary {
    over_sampling!(sampling, seed, |sampler, draw| match representation {
        Representation::Surface => run_trials(
            trials,
            sampling,
            || surface_sample(&mut sampler, &mut draw),
            &relation_checks(variant),
        ),
        Representation::Letters => run_trials(
            trials,
            sampling,
            || letters_sample(&mut sampler, &mut draw),
            &relation_checks(variant),
        ),
    })
}

fn induced_checks<S: Field>() -> Vec<Check<Letters<S>>> {
    fn at<S: Field, const I: usize>(l: &Letters<S>) -> Result<f64> {
        induced_discrepancy(Gen::ALL[I], l)
    }
    vec![
        ("induced s0", at::<S, 0>),
        ("induced s1", at::<S, 1>),
        ("induced pi1", at::<S, 2>),
        ("induced pi2", at::<S, 3>),
        ("induced pi2^-1", at::<S, 4>),
        ("induced pi2^2", at::<S, 5>),
        ("induced T", at::<S, 6>),
        ("induced T^-1", at::<S, 7>),
    ]
}

/// Compares the surface action with the action induced from the letters
/// through `F` and `G`, for every generator.
pub fn verify_induced_action(trials: usize, seed: u64, sampling: Sampling) -> TrialSummary {
    over_sampling!(sampling, seed, |sampler, draw| run_trials(
        trials,
        sampling,
        || letters_sample(&mut sampler, &mut draw),
        &induced_checks()
    ))
}

fn zero_discrepancy<S: Field>(v: &S) -> f64 {
    v.discrepancy(&v.int_like(0))
}

fn qpp_check<S: Field>(p: &Surface<S>) -> Result<f64> {
    Ok(zero_discrepancy(&qpp_residual(p)?))
}

/// `G(qZ) G(Z/q) (G-1)^2 = (G-Z)^2` as a consequence of the `T^±1` maps.
pub fn verify_qpp(trials: usize, seed: u64, sampling: Sampling) -> TrialSummary {
    over_sampling!(sampling, seed, |sampler, draw| run_trials(
        trials,
        sampling,
        || surface_sample(&mut sampler, &mut draw),
        &[("qPp from T, T^-1", qpp_check)]
    ))
}

fn orbit_of<S: Field>(l: &Letters<S>, constrained: bool) -> Result<Orbit<S>> {
    let mut o = Orbit::of(l, 3)?;
    if !constrained {
        let i = o.offset - 1;
        o.t1[i] = o.t1[i].add(&o.t1[i].one_like());
    }
    Ok(o)
}

fn max_zero<S: Field>(vs: &[S]) -> f64 {
    vs.iter()
        .map(zero_discrepancy)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn orbit_checks<S: Field, const C: bool>() -> Vec<Check<Letters<S>>> {
    fn tau13<S: Field, const C: bool>(l: &Letters<S>) -> Result<f64> {
        Ok(max_zero(&orbit_of(l, C)?.tau13(0)?))
    }
    fn gr<S: Field, const C: bool>(l: &Letters<S>) -> Result<f64> {
        Ok(max_zero(&orbit_of(l, C)?.gr_residuals(0)?))
    }
    fn sakai<S: Field, const C: bool>(l: &Letters<S>) -> Result<f64> {
        Ok(max_zero(&orbit_of(l, C)?.sakai_residuals(0)?))
    }
    vec![
        ("Tau13", tau13::<S, C>),
        ("A7' (x, y) system", gr::<S, C>),
        ("A7' (f, g) system", sakai::<S, C>),
    ]
}

/// The bilinear pair on `T`-orbits and the two first-order systems built
/// from it. With `constrained = false`, `T1(Z/q)` is perturbed so that the
/// bilinear pair fails.
pub fn verify_tau13_and_forms(
    trials: usize,
    seed: u64,
    sampling: Sampling,
    constrained: bool,
) -> TrialSummary {
    over_sampling!(sampling, seed, |sampler, draw| {
        let checks = if constrained {
            orbit_checks::<_, true>()
        } else {
            orbit_checks::<_, false>()
        };
        run_trials(
            trials,
            sampling,
            || letters_sample(&mut sampler, &mut draw),
            &checks,
        )
    })
}
