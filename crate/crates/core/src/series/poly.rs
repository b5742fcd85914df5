use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One of the four non-`t` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Y,
    A,
    B,
    U,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Y, Var::A, Var::B, Var::U];

    fn shift(self) -> u32 {
        match self {
            Var::Y => 48,
            Var::A => 32,
            Var::B => 16,
            Var::U => 0,
        }
    }

    pub fn name(self) -> char {
        match self {
            Var::Y => 'y',
            Var::A => 'a',
            Var::B => 'b',
            Var::U => 'u',
        }
    }
}

/// Monomial `y^j a^k b^l u^m`, packed 16 bits per exponent so that
/// multiplication is integer addition and `Ord` is lexicographic in (y, a, b, u).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(y: u16, a: u16, b: u16, u: u16) -> Mono {
        Mono((y as u64) << 48 | (a as u64) << 32 | (b as u64) << 16 | u as u64)
    }

    pub fn var(v: Var) -> Mono {
        Mono(1 << v.shift())
    }

    pub fn exp(self, v: Var) -> u16 {
        (self.0 >> v.shift()) as u16
    }

    pub fn exps(self) -> [u16; 4] {
        Var::ALL.map(|v| self.exp(v))
    }

    pub fn with_exp(self, v: Var, e: u16) -> Mono {
        let mask = !(0xffffu64 << v.shift());
        Mono(self.0 & mask | (e as u64) << v.shift())
    }

    fn times(self, other: Mono) -> Mono {
        debug_assert!(Var::ALL.iter().all(|&v| self.exp(v) as u32 + other.exp(v) as u32 <= u16::MAX as u32));
        Mono(self.0 + other.0)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [y, a, b, u] = self.exps();
        write!(f, "y^{y} a^{a} b^{b} u^{u}")
    }
}

/// Sparse polynomial in (y, a, b, u) with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(rat(n))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Mono::var(v), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mono) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.times(m), v.clone())).collect(),
        }
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// The coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coeff_in(&self, v: Var, k: u16) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Substitutes the constant `value` for `v`.
    pub fn eval(&self, v: Var, value: &BigRational) -> Poly {
        let mut out = Poly::zero();
        let mut powers: Vec<BigRational> = vec![BigRational::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exp(v, 0), c * &powers[e]);
        }
        out
    }

    /// `v ∂/∂v`.
    pub fn euler(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * rat(m.exp(v) as i64));
        }
        out
    }

    /// Exact division by the variable `v`; `None` if some term lacks it.
    pub fn div_var(&self, v: Var) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                return None;
            }
            terms.insert(m.with_exp(v, e - 1), c.clone());
        }
        Some(Poly { terms })
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(*m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sep = if i == 0 {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            write!(f, "{sep}{}*{m}", c.abs())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mono_packing() {
        let m = Mono::new(1, 2, 3, 4);
        assert_eq!(m.exps(), [1, 2, 3, 4]);
        assert_eq!(m.with_exp(Var::B, 0).exps(), [1, 2, 0, 4]);
        assert!(Mono::new(0, 0, 0, 9) < Mono::new(0, 0, 1, 0));
        assert_eq!(m.to_string(), "y^1 a^2 b^3 u^4");
    }

    #[test]
    fn arithmetic() {
        let x = &Poly::var(Var::A) + &Poly::one();
        let sq = &x * &x;
        assert_eq!(sq.coeff(Mono::new(0, 1, 0, 0)), rat(2));
        assert_eq!((&sq - &sq), Poly::zero());
        assert_eq!(sq.eval(Var::A, &rat(2)), Poly::int(9));
        assert_eq!(sq.euler(Var::A).coeff(Mono::new(0, 2, 0, 0)), rat(2));
        assert_eq!(sq.coeff_in(Var::A, 1), Poly::int(2));
        assert!(sq.div_var(Var::A).is_none());
        assert_eq!(Poly::var(Var::Y).div_var(Var::Y), Some(Poly::one()));
        assert_eq!(Poly::int(3).as_constant(), Some(rat(3)));
        assert_eq!(x.as_constant(), None);
    }
}
