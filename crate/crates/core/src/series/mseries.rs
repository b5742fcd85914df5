use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Mono, Poly, Var};
use super::SeriesError;

/// Power series in `t` truncated after `t^order`, each coefficient a
/// polynomial in (y, a, b, u). Binary operations truncate to the smaller
/// order of their operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSeries {
    coeffs: Vec<Poly>,
}

/// The first coefficient at which two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub t_exp: usize,
    pub mono: Mono,
    pub left: BigRational,
    pub right: BigRational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[t^{} {}]: {} vs {}", self.t_exp, self.mono, self.left, self.right)
    }
}

impl MSeries {
    pub fn zero(order: usize) -> MSeries {
        MSeries {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn constant(p: Poly, order: usize) -> MSeries {
        let mut s = MSeries::zero(order);
        s.coeffs[0] = p;
        s
    }

    pub fn one(order: usize) -> MSeries {
        MSeries::constant(Poly::one(), order)
    }

    pub fn int(n: i64, order: usize) -> MSeries {
        MSeries::constant(Poly::int(n), order)
    }

    pub fn var(v: Var, order: usize) -> MSeries {
        MSeries::constant(Poly::var(v), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> MSeries {
        let mut s = MSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = Poly::one();
        }
        s
    }

    /// Builds from coefficients of `t^0, t^1, ...`; missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<Poly>, order: usize) -> MSeries {
        coeffs.resize(order + 1, Poly::zero());
        MSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> MSeries {
        let order = order.min(self.order());
        MSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> MSeries {
        MSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MSeries {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> MSeries {
        self.map(|q| q * p)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.coeffs.iter().any(|p| p.contains(v))
    }

    /// `t^k * self`, known to order `order + k`.
    pub fn shift_t(&self, k: usize) -> MSeries {
        let mut coeffs = vec![Poly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        MSeries { coeffs }
    }

    /// `t ∂/∂t`.
    pub fn theta(&self) -> MSeries {
        MSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, p)| p.scale(&BigRational::from_integer((k as i64).into())))
                .collect(),
        }
    }

    /// `∂/∂t`, known to one order less.
    pub fn d_t(&self) -> MSeries {
        if self.order() == 0 {
            return MSeries::zero(0);
        }
        MSeries {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, p)| p.scale(&BigRational::from_integer(((k + 1) as i64).into())))
                .collect(),
        }
    }

    /// `v ∂/∂v` applied coefficientwise.
    pub fn euler(&self, v: Var) -> MSeries {
        self.map(|p| p.euler(v))
    }

    pub fn eval(&self, v: Var, value: &BigRational) -> MSeries {
        self.map(|p| p.eval(v, value))
    }

    /// Exact division by the variable `v`.
    pub fn div_var(&self, v: Var) -> Result<MSeries, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, p) in self.coeffs.iter().enumerate() {
            coeffs.push(p.div_var(v).ok_or(SeriesError::InexactDivision { t_exp: k })?);
        }
        Ok(MSeries { coeffs })
    }

    pub fn pow(&self, n: usize) -> MSeries {
        let mut acc = MSeries::one(self.order());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self / d`; the `t^0` coefficient of `d` must be a nonzero constant.
    pub fn div(&self, d: &MSeries) -> Result<MSeries, SeriesError> {
        let order = self.order().min(d.order());
        let c0 = d.coeffs[0].as_constant().ok_or(SeriesError::NonConstantDivisor)?;
        if c0.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        let inv = c0.recip();
        let mut q: Vec<Poly> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                if !d.coeffs[i].is_zero() && !q[k - i].is_zero() {
                    acc = &acc - &(&d.coeffs[i] * &q[k - i]);
                }
            }
            q.push(acc.scale(&inv));
        }
        Ok(MSeries { coeffs: q })
    }

    pub fn recip(&self) -> Result<MSeries, SeriesError> {
        MSeries::one(self.order()).div(self)
    }

    /// Substitutes the series `sub` for `u`. `sub` must not involve `u`.
    pub fn subst_u(&self, sub: &MSeries) -> Result<MSeries, SeriesError> {
        if sub.contains(Var::U) {
            return Err(SeriesError::SubstitutionInvolvesU);
        }
        let order = self.order().min(sub.order());
        let max_deg = self.coeffs.iter().map(|p| p.degree_in(Var::U)).max().unwrap_or(0) as usize;
        let sub = sub.truncate(order);
        let mut powers = vec![MSeries::one(order)];
        for m in 1..=max_deg {
            let next = &powers[m - 1] * &sub;
            powers.push(next);
        }
        let mut out = vec![Poly::zero(); order + 1];
        for k in 0..=order {
            let p = &self.coeffs[k];
            if p.is_zero() {
                continue;
            }
            for m in 0..=p.degree_in(Var::U) as usize {
                let c = p.coeff_in(Var::U, m as u16);
                if c.is_zero() {
                    continue;
                }
                for n in k..=order {
                    let term = &c * &powers[m].coeffs[n - k];
                    out[n] = &out[n] + &term;
                }
            }
        }
        Ok(MSeries { coeffs: out })
    }

    /// `(P(1) - P(u)) / (1 - u)`, by exact synthetic division of each
    /// coefficient.
    pub fn catalytic_quotient(&self) -> Result<MSeries, SeriesError> {
        let one = BigRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, p) in self.coeffs.iter().enumerate() {
            let numer = &p.eval(Var::U, &one) - p;
            let d = numer.degree_in(Var::U) as usize;
            // Divide by (u - 1): q_{m-1} = n_m + q_m.
            let mut q = vec![Poly::zero(); d.max(1)];
            let mut carry = Poly::zero();
            for m in (1..=d).rev() {
                carry = &numer.coeff_in(Var::U, m as u16) + &carry;
                q[m - 1] = carry.clone();
            }
            let remainder = &numer.coeff_in(Var::U, 0) + &carry;
            if !remainder.is_zero() {
                return Err(SeriesError::InexactDivision { t_exp: k });
            }
            let mut out = Poly::zero();
            for (m, c) in q.iter().enumerate() {
                out = &out - &c.mul_mono(Mono::new(0, 0, 0, m as u16));
            }
            coeffs.push(out);
        }
        Ok(MSeries { coeffs })
    }

    /// `u (P(u) - P(1)) / (u - 1)`, i.e. `u^k -> u + ... + u^k`.
    pub fn delta(&self) -> Result<MSeries, SeriesError> {
        Ok(self.catalytic_quotient()?.mul_poly(&Poly::var(Var::U)))
    }

    /// Lexicographically first differing coefficient up to the common order.
    pub fn first_difference(&self, other: &MSeries) -> Option<Mismatch> {
        let order = self.order().min(other.order());
        for k in 0..=order {
            let d = &self.coeffs[k] - &other.coeffs[k];
            let first = d.terms().next().map(|(m, _)| *m);
            if let Some(m) = first {
                return Some(Mismatch {
                    t_exp: k,
                    mono: m,
                    left: self.coeffs[k].coeff(m),
                    right: other.coeffs[k].coeff(m),
                });
            }
        }
        None
    }

    /// Total number of stored monomials.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(Poly::len).sum()
    }

    /// One line per nonzero monomial: `t^i y^j a^k b^l u^m : value`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p.terms() {
                out.push_str(&format!("t^{k} {m} : {c}\n"));
            }
        }
        out
    }

    /// Coefficients of `t^0..` after setting every variable to 1.
    pub fn totals(&self) -> Vec<BigRational> {
        let one = BigRational::one();
        self.coeffs
            .iter()
            .map(|p| {
                let mut q = p.clone();
                for v in Var::ALL {
                    q = q.eval(v, &one);
                }
                q.as_constant().unwrap_or_else(BigRational::zero)
            })
            .collect()
    }
}

fn zip_coeffs(a: &MSeries, b: &MSeries, f: impl Fn(&Poly, &Poly) -> Poly) -> MSeries {
    let order = a.order().min(b.order());
    MSeries {
        coeffs: (0..=order).map(|k| f(&a.coeffs[k], &b.coeffs[k])).collect(),
    }
}

impl Add for &MSeries {
    type Output = MSeries;
    fn add(self, rhs: &MSeries) -> MSeries {
        zip_coeffs(self, rhs, |x, y| x + y)
    }
}

impl Sub for &MSeries {
    type Output = MSeries;
    fn sub(self, rhs: &MSeries) -> MSeries {
        zip_coeffs(self, rhs, |x, y| x - y)
    }
}

impl Neg for &MSeries {
    type Output = MSeries;
    fn neg(self) -> MSeries {
        self.map(|p| -p)
    }
}

impl Mul for &MSeries {
    type Output = MSeries;
    fn mul(self, rhs: &MSeries) -> MSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Poly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &rhs.coeffs[j];
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        MSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MSeries {
            type Output = MSeries;
            fn $f(self, rhs: MSeries) -> MSeries {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MSeries> for MSeries {
            type Output = MSeries;
            fn $f(self, rhs: &MSeries) -> MSeries {
                (&self).$f(rhs)
            }
        }
        impl $tr<MSeries> for &MSeries {
            type Output = MSeries;
            fn $f(self, rhs: MSeries) -> MSeries {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MSeries {
    type Output = MSeries;
    fn neg(self) -> MSeries {
        -&self
    }
}

/// Solves `X = f(X)` for a t-adic contraction `f`.
///
/// Iteration `m` works at order `min(m, order)`; the coefficients of `t^0 ..
/// t^{m-2}` must agree with the previous iterate, otherwise `f` is not a
/// contraction and [`SeriesError::Divergence`] is returned. After at most
/// `order + 1` iterations the result is confirmed to be a fixed point.
pub fn solve_fixed_point<F>(order: usize, f: F) -> Result<MSeries, SeriesError>
where
    F: Fn(&MSeries) -> Result<MSeries, SeriesError>,
{
    let mut v = solve_fixed_point_system(order, 1, |xs| Ok(vec![f(&xs[0])?]))?;
    Ok(v.pop().expect("one component"))
}

/// [`solve_fixed_point`] for a system of `dim` unknowns.
pub fn solve_fixed_point_system<F>(order: usize, dim: usize, f: F) -> Result<Vec<MSeries>, SeriesError>
where
    F: Fn(&[MSeries]) -> Result<Vec<MSeries>, SeriesError>,
{
    let mut x: Vec<MSeries> = vec![MSeries::zero(0); dim];
    for m in 1..=order + 1 {
        let work = m.min(order);
        let input: Vec<MSeries> = x.iter().map(|s| pad(s, work)).collect();
        let next = f(&input)?;
        check_dim(&next, dim, work)?;
        for (old, new) in x.iter().zip(&next) {
            for k in 0..(m - 1).min(old.order() + 1) {
                if old.coeff(k) != new.coeff(k) {
                    return Err(SeriesError::Divergence { t_exp: k, iteration: m });
                }
            }
        }
        x = next.into_iter().map(|s| s.truncate(work)).collect();
    }
    let check = f(&x)?;
    check_dim(&check, dim, order)?;
    for (a, b) in x.iter().zip(&check) {
        if let Some(mm) = a.first_difference(b) {
            return Err(SeriesError::Divergence {
                t_exp: mm.t_exp,
                iteration: order + 2,
            });
        }
    }
    Ok(x)
}

fn pad(s: &MSeries, order: usize) -> MSeries {
    let mut c = s.coeffs.clone();
    c.truncate(order + 1);
    MSeries::from_coeffs(c, order)
}

fn check_dim(v: &[MSeries], dim: usize, order: usize) -> Result<(), SeriesError> {
    if v.len() != dim {
        return Err(SeriesError::Internal(format!("fixed-point map returned {} components, expected {dim}", v.len())));
    }
    if let Some(s) = v.iter().find(|s| s.order() < order) {
        return Err(SeriesError::Internal(format!(
            "fixed-point map returned order {} below working order {order}",
            s.order()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::*;

    fn ints(s: &MSeries) -> Vec<i64> {
        s.totals().iter().map(|q| q.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn ternary_fixed_point() {
        let t = solve_fixed_point(5, |x| Ok(&MSeries::one(x.order()) + &MSeries::t(x.order()) * x.pow(3))).unwrap();
        assert_eq!(ints(&t), vec![1, 1, 3, 12, 55, 273]);
    }

    #[test]
    fn b_fixed_point_and_division() {
        let order = 4;
        let b = solve_fixed_point(order, |x| {
            let o = x.order();
            let d = (&MSeries::one(o) - x).pow(2);
            MSeries::t(o).div(&d)
        })
        .unwrap();
        assert_eq!(ints(&b), vec![0, 1, 2, 7, 30]);
    }

    #[test]
    fn divergence_is_detected() {
        let r = solve_fixed_point(4, |x| Ok(&MSeries::one(x.order()) + &x.scale(&rat(2))));
        assert!(matches!(r, Err(SeriesError::Divergence { .. })));
    }

    #[test]
    fn division_requires_constant_unit() {
        let u = MSeries::var(Var::U, 3);
        assert_eq!(MSeries::one(3).div(&u), Err(SeriesError::NonConstantDivisor));
        assert_eq!(MSeries::one(3).div(&MSeries::t(3)), Err(SeriesError::ZeroDivisor));
        let one_minus_t = &MSeries::one(3) - &MSeries::t(3);
        assert_eq!(ints(&one_minus_t.recip().unwrap()), vec![1, 1, 1, 1]);
    }

    #[test]
    fn delta_examples() {
        let u = Poly::var(Var::U);
        let u3 = &(&u * &u) * &u;
        let d1 = MSeries::constant(u.clone(), 0).delta().unwrap();
        assert_eq!(d1.coeff(0), &u);
        let d3 = MSeries::constant(u3, 0).delta().unwrap();
        let want = &(&u + &(&u * &u)) + &(&(&u * &u) * &u);
        assert_eq!(d3.coeff(0), &want);
    }

    #[test]
    fn substitution_and_derivatives() {
        let order = 4;
        let two_u = MSeries::constant(&Poly::var(Var::U) * &Poly::var(Var::U), order);
        let one_plus_t = &MSeries::one(order) + &MSeries::t(order);
        let s = two_u.subst_u(&one_plus_t).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 1, 0, 0]);
        assert!(s.subst_u(&MSeries::var(Var::U, order)).is_err());
        let tp = one_plus_t.shift_t(1);
        assert_eq!(ints(&tp.d_t()), vec![1, 2, 0, 0, 0]);
        assert_eq!(ints(&one_plus_t.theta()), vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn text_format() {
        let s = &MSeries::t(2) * &MSeries::var(Var::U, 2);
        assert_eq!(s.to_text(), "t^1 y^0 a^0 b^0 u^1 : 1\n");
    }
}
