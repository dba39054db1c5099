//! Multivariate polynomial gcd over the integers.
//!
//! Recursive primitive pseudo-remainder sequences: a polynomial is viewed as
//! univariate in its first used generator with coefficients in the remaining
//! ones. Inputs must be genuine polynomials (no negative exponents).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{mono_var, Monomial, Poly, MAX_VARS};

/// Coefficients of `p` as a polynomial in generator `v`, lowest degree first.
fn to_univariate(p: &Poly, v: usize) -> Vec<Poly> {
    let deg = p.degree_in(v).max(0) as usize;
    let mut out = vec_of_zero(deg + 1);
    for (m, c) in p.terms() {
        let mut rest: Monomial = *m;
        let d = rest[v] as usize;
        rest[v] = 0;
        out[d].add_term(rest, c.clone());
    }
    out
}

fn vec_of_zero(n: usize) -> Vec<Poly> {
    let mut v = Vec::with_capacity(n);
    v.resize_with(n, Poly::zero);
    v
}

fn from_univariate(cs: &[Poly], v: usize) -> Poly {
    let mut out = Poly::zero();
    for (d, c) in cs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sh = mono_var(v, d as i32);
        for (m, k) in c.terms() {
            let mut mm = *m;
            mm[v] += sh[v];
            out.add_term(mm, k.clone());
        }
    }
    out
}

fn trim(cs: &mut Vec<Poly>) {
    while cs.len() > 1 && cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
}

fn first_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..MAX_VARS).find(|&v| a.uses_var(v) || b.uses_var(v))
}

/// Normalizes sign so that the leading coefficient is positive.
fn positive(p: Poly) -> Poly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

/// Gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    if a.is_one() || b.is_one() {
        return Poly::one();
    }
    let Some(v) = first_var(a, b) else {
        return Poly::constant(a.constant_term().gcd(&b.constant_term()));
    };
    // Common power of v factors out first.
    let amin = a.min_exponents().map(|m| m[v]).unwrap_or(0);
    let bmin = b.min_exponents().map(|m| m[v]).unwrap_or(0);
    let common = amin.min(bmin);
    let a = a.shift(&mono_var(v, -amin));
    let b = b.shift(&mono_var(v, -bmin));
    let g = gcd_in(&a, &b, v);
    positive(g.shift(&mono_var(v, common)))
}

fn content_in(cs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(cs: &[Poly]) -> (Poly, Vec<Poly>) {
    let c = content_in(cs);
    if c.is_one() || c.is_zero() {
        return (c, cs.to_vec());
    }
    let pp = cs
        .iter()
        .map(|x| x.div_exact(&c).expect("content divides"))
        .collect();
    (c, pp)
}

fn gcd_in(a: &Poly, b: &Poly, v: usize) -> Poly {
    let ua = to_univariate(a, v);
    let ub = to_univariate(b, v);
    if ua.len() == 1 || ub.len() == 1 {
        // One side is free of v: the gcd divides every v-coefficient of the other.
        let (free, other) = if ua.len() == 1 {
            (&ua[0], &ub)
        } else {
            (&ub[0], &ua)
        };
        let mut g = free.clone();
        for c in other.iter() {
            if c.is_zero() {
                continue;
            }
            g = poly_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        return g;
    }
    let (ca, mut pa) = primitive_part(&ua);
    let (cb, mut pb) = primitive_part(&ub);
    let cg = poly_gcd(&ca, &cb);
    if pa.len() < pb.len() {
        core::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let mut r = pseudo_rem(&pa, &pb);
        trim(&mut r);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        if r.len() == 1 {
            // nonzero constant in v: primitive parts are coprime in v
            pb = vec![Poly::one()];
            break;
        }
        let (_, pr) = primitive_part(&r);
        pa = pb;
        pb = pr;
    }
    let g = from_univariate(&pb, v);
    &g * &cg
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &lr;
            r[i + shift] = &r[i + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(Poly::zero());
        }
    }
    r
}

/// Sign- and content-free representative used in canonical forms.
pub fn make_primitive(p: &Poly) -> (BigInt, Poly) {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return (
            if c.is_zero() {
                BigInt::zero()
            } else {
                BigInt::one()
            },
            p.clone(),
        );
    }
    (c.clone(), p.div_exact_int(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, e: i32) -> Poly {
        Poly::var(i, e)
    }

    fn one() -> Poly {
        Poly::one()
    }

    #[test]
    fn univariate_cyclotomic() {
        let a = &x(0, 12) - &one();
        let b = &x(0, 8) - &one();
        assert_eq!(poly_gcd(&a, &b), &x(0, 4) - &one());
    }

    #[test]
    fn bivariate_common_factor() {
        // (a - b)(a + 2b) and (a - b)(3a - b^2)
        let f = &x(0, 1) - &x(1, 1);
        let g1 = &x(0, 1) + &x(1, 1).scale(&BigInt::from(2));
        let g2 = &x(0, 1).scale(&BigInt::from(3)) - &x(1, 2);
        let g = poly_gcd(&(&f * &g1), &(&f * &g2));
        assert_eq!(g, f);
    }

    #[test]
    fn coprime_and_constants() {
        let a = &x(0, 2) + &one();
        let b = &x(0, 1) + &x(1, 1);
        assert!(poly_gcd(&a, &b).is_one());
        assert_eq!(
            poly_gcd(&Poly::from_i64(6), &Poly::from_i64(-4)),
            Poly::from_i64(2)
        );
    }

    #[test]
    fn monomial_factors() {
        let a = &x(0, 3) * &(&x(1, 1) + &one());
        let b = &x(0, 2) * &(&x(1, 2) - &one());
        let expect = &x(0, 2) * &(&x(1, 1) + &one());
        assert_eq!(poly_gcd(&a, &b), expect);
    }
}
