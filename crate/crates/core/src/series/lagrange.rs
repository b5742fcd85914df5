//! Coefficient extraction for systems `A_i = a_i Φ_i(A_1, A_2)`.
//!
//! [`bivariate_lagrange`] uses the two-variable Lagrange formula
//!
//! ```text
//! [a1^n1 a2^n2] F(A1, A2) = 1/(n1 n2) [x1^(n1-1) x2^(n2-1)] (
//!       F_12 Φ1^n1 Φ2^n2 + F_1 ∂2(Φ1^n1) Φ2^n2 + F_2 ∂1(Φ2^n2) Φ1^n1 )
//! ```
//!
//! and [`direct_extraction`] solves the system by iteration and composes,
//! as an independent check.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LagrangeError {
    #[error("Φ{0} has zero constant term")]
    Degenerate(u8),
}

/// Polynomial in `x1, x2` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2::default()
    }

    pub fn one() -> Poly2 {
        Poly2::from_ints(&[(0, 0, 1)])
    }

    /// From `(i, j, c)` triples meaning `c x1^i x2^j`.
    pub fn from_ints(terms: &[(u32, u32, i64)]) -> Poly2 {
        let mut p = Poly2::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    /// `(1 + x1)^e1 (1 + x2)^e2`.
    pub fn binomial_product(e1: u32, e2: u32) -> Poly2 {
        let x1 = Poly2::from_ints(&[(0, 0, 1), (1, 0, 1)]);
        let x2 = Poly2::from_ints(&[(0, 0, 1), (0, 1, 1)]);
        let big = (e1, e2);
        x1.pow(e1, big).mul(&x2.pow(e2, big), big)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    /// Product keeping only `x1^i x2^j` with `i <= d1`, `j <= d2`.
    pub fn mul(&self, other: &Poly2, (d1, d2): (u32, u32)) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if i <= d1 && j <= d2 {
                    out.add_term(i, j, c1 * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32, bound: (u32, u32)) -> Poly2 {
        let mut acc = Poly2::one();
        for _ in 0..n {
            acc = acc.mul(self, bound);
        }
        acc
    }

    pub fn d1(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * BigRational::from_integer(i.into()));
            }
        }
        out
    }

    pub fn d2(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * BigRational::from_integer(j.into()));
            }
        }
        out
    }

    /// `P(0, x2)` or `P(x1, 0)` as a polynomial in the remaining variable,
    /// kept in the same slot.
    fn restrict(&self, keep_first: bool) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if (keep_first && j == 0) || (!keep_first && i == 0) {
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    /// `P(A1, A2)` truncated to `bound`.
    pub fn compose(&self, a1: &Poly2, a2: &Poly2, bound: (u32, u32)) -> Poly2 {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut p1 = vec![Poly2::one()];
        for k in 1..=max_i as usize {
            let next = p1[k - 1].mul(a1, bound);
            p1.push(next);
        }
        let mut p2 = vec![Poly2::one()];
        for k in 1..=max_j as usize {
            let next = p2[k - 1].mul(a2, bound);
            p2.push(next);
        }
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&p1[i as usize].mul(&p2[j as usize], bound).scale(c));
        }
        out
    }

    /// Random polynomial with integer coefficients in `-3..=3` and degree at
    /// most `deg` in each variable; `nonzero_constant` forces a nonzero
    /// constant term.
    pub fn random(rng: &mut impl Rng, deg: u32, nonzero_constant: bool) -> Poly2 {
        let mut p = Poly2::zero();
        for i in 0..=deg {
            for j in 0..=deg {
                let c: i64 = rng.gen_range(-3..=3);
                p.add_term(i, j, BigRational::from_integer(c.into()));
            }
        }
        if nonzero_constant && p.coeff(0, 0).is_zero() {
            p.add_term(0, 0, BigRational::from_integer((rng.gen_range(1..=3i64)).into()));
        }
        p
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&(i, j), c)| format!("({c})x1^{i}x2^{j}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn check_nondegenerate(phi1: &Poly2, phi2: &Poly2) -> Result<(), LagrangeError> {
    if phi1.coeff(0, 0).is_zero() {
        return Err(LagrangeError::Degenerate(1));
    }
    if phi2.coeff(0, 0).is_zero() {
        return Err(LagrangeError::Degenerate(2));
    }
    Ok(())
}

/// `[a1^n1 a2^n2] F(A1, A2)` by Lagrange inversion. When one index is zero
/// the other unknown vanishes and the univariate formula applies.
pub fn bivariate_lagrange(
    phi1: &Poly2,
    phi2: &Poly2,
    f: &Poly2,
    n1: u32,
    n2: u32,
) -> Result<BigRational, LagrangeError> {
    check_nondegenerate(phi1, phi2)?;
    let bound = (n1, n2);
    match (n1, n2) {
        (0, 0) => Ok(f.coeff(0, 0)),
        (0, n) => {
            let g = f.restrict(false).d2().mul(&phi2.restrict(false).pow(n, bound), bound);
            Ok(g.coeff(0, n - 1) / BigRational::from_integer(n.into()))
        }
        (n, 0) => {
            let g = f.restrict(true).d1().mul(&phi1.restrict(true).pow(n, bound), bound);
            Ok(g.coeff(n - 1, 0) / BigRational::from_integer(n.into()))
        }
        (n1, n2) => {
            let p1n = phi1.pow(n1, bound);
            let p2n = phi2.pow(n2, bound);
            let t1 = f.d1().d2().mul(&p1n, bound).mul(&p2n, bound);
            let t2 = f.d1().mul(&p1n.d2(), bound).mul(&p2n, bound);
            let t3 = f.d2().mul(&p2n.d1(), bound).mul(&p1n, bound);
            let total = t1.add(&t2).add(&t3);
            Ok(total.coeff(n1 - 1, n2 - 1) / BigRational::from_integer((n1 * n2).into()))
        }
    }
}

/// The same coefficient by solving the system with fixed-point iteration in
/// `a1, a2` and composing with `F`.
pub fn direct_extraction(
    phi1: &Poly2,
    phi2: &Poly2,
    f: &Poly2,
    n1: u32,
    n2: u32,
) -> Result<BigRational, LagrangeError> {
    check_nondegenerate(phi1, phi2)?;
    let bound = (n1, n2);
    let a1 = Poly2::from_ints(&[(1, 0, 1)]);
    let a2 = Poly2::from_ints(&[(0, 1, 1)]);
    let (mut s1, mut s2) = (Poly2::zero(), Poly2::zero());
    for _ in 0..=n1 + n2 {
        let next1 = a1.mul(&phi1.compose(&s1, &s2, bound), bound);
        let next2 = a2.mul(&phi2.compose(&s1, &s2, bound), bound);
        s1 = next1;
        s2 = next2;
    }
    Ok(f.compose(&s1, &s2, bound).coeff(n1, n2))
}

/// A reproducible random test system `(Φ1, Φ2, F, n1, n2)`.
pub fn random_system(seed: u64) -> (Poly2, Poly2, Poly2, u32, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi1 = Poly2::random(&mut rng, 2, true);
    let phi2 = Poly2::random(&mut rng, 2, true);
    let f = Poly2::random(&mut rng, 3, false);
    let n1 = rng.gen_range(0..=3);
    let n2 = rng.gen_range(0..=3);
    (phi1, phi2, f, n1, n2)
}

/// `Φ1 = (1+x1)(1+x2)^2`, `Φ2 = (1+x1)^2(1+x2)`: the system satisfied by
/// `R̄` and `S̄` at `t = 1`.
pub fn fish_system() -> (Poly2, Poly2) {
    (Poly2::binomial_product(1, 2), Poly2::binomial_product(2, 1))
}

/// `B = (1 + x1)(1 + x2)` in terms of `R̄, S̄` at `t = 1`.
pub fn fish_b() -> Poly2 {
    Poly2::binomial_product(1, 1)
}

/// `P(1) = (1 + x1)(1 + x2)(1 - x1 x2)` in terms of `R̄, S̄` at `t = 1`.
pub fn fish_p1() -> Poly2 {
    fish_b().mul(&Poly2::from_ints(&[(0, 0, 1), (1, 1, -1)]), (u32::MAX, u32::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{fish_count_ij, marked_tail_count};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn trivial_system() {
        let f = Poly2::from_ints(&[(1, 1, 1)]);
        let one = Poly2::one();
        assert_eq!(bivariate_lagrange(&one, &one, &f, 1, 1).unwrap(), q(1));
        assert_eq!(direct_extraction(&one, &one, &f, 1, 1).unwrap(), q(1));
    }

    #[test]
    fn fish_examples() {
        let (p1, p2) = fish_system();
        assert_eq!(bivariate_lagrange(&p1, &p2, &fish_b(), 1, 1).unwrap(), q(5));
        assert_eq!(bivariate_lagrange(&p1, &p2, &fish_p1(), 1, 1).unwrap(), q(4));
    }

    #[test]
    fn fish_tables() {
        let (p1, p2) = fish_system();
        for i in 1..=6u32 {
            for j in 1..=6u32 {
                let n = bivariate_lagrange(&p1, &p2, &fish_p1(), i - 1, j - 1).unwrap();
                assert_eq!(n, BigRational::from_integer(fish_count_ij(i as u64, j as u64).unwrap().into()));
                let m = bivariate_lagrange(&p1, &p2, &fish_b(), i - 1, j - 1).unwrap();
                assert_eq!(m, BigRational::from_integer(marked_tail_count(i as u64, j as u64).unwrap().into()));
            }
        }
    }

    #[test]
    fn random_systems_agree() {
        for seed in 0..20 {
            let (p1, p2, f, n1, n2) = random_system(seed);
            assert_eq!(
                bivariate_lagrange(&p1, &p2, &f, n1, n2).unwrap(),
                direct_extraction(&p1, &p2, &f, n1, n2).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn degenerate_rejected() {
        let x1 = Poly2::from_ints(&[(1, 0, 1)]);
        assert_eq!(
            bivariate_lagrange(&x1, &Poly2::one(), &x1, 1, 1),
            Err(LagrangeError::Degenerate(1))
        );
        assert_eq!(
            direct_extraction(&Poly2::one(), &Poly2::zero(), &x1, 1, 1),
            Err(LagrangeError::Degenerate(2))
        );
    }
}
