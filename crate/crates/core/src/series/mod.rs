//! Truncated power series in `t` over polynomials in (y, a, b, u) with
//! exact rational coefficients, and the generating series built from them.
//!
//! `t, y, a, b, u` mark size, tails, right size, left size and fin length,
//! each decreased by one.

mod builders;
mod catalog;
pub mod lagrange;
mod ledger;
mod mseries;
mod poly;
mod tree_series;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use builders::{
    build_marked, build_p, build_parametrization, build_pu_param, build_rs, build_u_v, Marked, Parametrization,
    PuParam, RsSeries, UvSeries,
};
pub use catalog::{SeriesCatalog, SeriesName};
pub use ledger::{identity_ledger, rs_ledger, tree_ledger, IdentityCheck};
pub use mseries::{solve_fixed_point, solve_fixed_point_system, MSeries, Mismatch};
pub use poly::{rat, Mono, Poly, Var};
pub use tree_series::TreeSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("divisor has a non-constant t^0 coefficient")]
    NonConstantDivisor,
    #[error("divisor has zero t^0 coefficient")]
    ZeroDivisor,
    #[error("inexact polynomial division at t^{t_exp}")]
    InexactDivision { t_exp: usize },
    #[error("fixed-point iteration {iteration} changed the already fixed coefficient of t^{t_exp}")]
    Divergence { t_exp: usize, iteration: usize },
    #[error("substituted series must not involve u")]
    SubstitutionInvolvesU,
    #[error("{0} requires the specialization y=a=b=1")]
    TreeSpecializationRequired(String),
    #[error("{0} requires y=1")]
    YOneRequired(String),
    #[error("tree index j = {j} out of range for {name}")]
    IndexOutOfRange { name: &'static str, j: i64 },
    #[error("unknown series name {0:?}")]
    UnknownName(String),
    #[error("bad specialization {0:?}")]
    BadSpecialization(String),
    #[error("order must be at least 1")]
    OrderTooSmall,
    #[error("internal: {0}")]
    Internal(String),
}

/// Which of y, a, b, u are kept symbolic (`None`) and which are set to a
/// rational constant.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vars {
    pub y: Option<BigRational>,
    pub a: Option<BigRational>,
    pub b: Option<BigRational>,
    pub u: Option<BigRational>,
}

impl Vars {
    /// Everything symbolic.
    pub fn symbolic() -> Vars {
        Vars::default()
    }

    /// `y = a = b = 1`, `u` symbolic.
    pub fn ones() -> Vars {
        Vars {
            y: Some(BigRational::one()),
            a: Some(BigRational::one()),
            b: Some(BigRational::one()),
            u: None,
        }
    }

    pub fn get(&self, v: Var) -> &Option<BigRational> {
        match v {
            Var::Y => &self.y,
            Var::A => &self.a,
            Var::B => &self.b,
            Var::U => &self.u,
        }
    }

    pub fn set(&mut self, v: Var, value: Option<BigRational>) {
        match v {
            Var::Y => self.y = value,
            Var::A => self.a = value,
            Var::B => self.b = value,
            Var::U => self.u = value,
        }
    }

    pub fn with(mut self, v: Var, value: Option<BigRational>) -> Vars {
        self.set(v, value);
        self
    }

    /// The variable as a polynomial: its constant value, or the variable itself.
    pub fn poly(&self, v: Var) -> Poly {
        match self.get(v) {
            Some(c) => Poly::constant(c.clone()),
            None => Poly::var(v),
        }
    }

    /// Parses `y=1,a=1,b=1` (any subset, rational values such as `1/2`).
    /// The empty string keeps everything symbolic.
    pub fn parse(spec: &str) -> Result<Vars, SeriesError> {
        let mut vars = Vars::symbolic();
        let bad = || SeriesError::BadSpecialization(spec.to_owned());
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part.split_once('=').ok_or_else(bad)?;
            let v = match name.trim() {
                "y" => Var::Y,
                "a" => Var::A,
                "b" => Var::B,
                "u" => Var::U,
                _ => return Err(bad()),
            };
            let q: BigRational = value.trim().parse().map_err(|_| bad())?;
            vars.set(v, Some(q));
        }
        Ok(vars)
    }

    pub fn is_ones(&self) -> bool {
        [&self.y, &self.a, &self.b]
            .iter()
            .all(|v| v.as_ref().is_some_and(|c| c.is_one()))
    }

    /// Evaluates every specified variable in `s`.
    pub fn apply(&self, s: &MSeries) -> MSeries {
        let mut out = s.clone();
        for v in Var::ALL {
            if let Some(c) = self.get(v) {
                if out.contains(v) {
                    out = out.eval(v, c);
                }
            }
        }
        out
    }

    fn check_y_one(&self, what: &str) -> Result<(), SeriesError> {
        match &self.y {
            Some(c) if !c.is_one() => Err(SeriesError::YOneRequired(what.to_owned())),
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for Vars {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter_map(|&v| self.get(v).as_ref().map(|c| format!("{}={}", v.name(), c)))
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn check_order(order: usize) -> Result<(), SeriesError> {
    if order < 1 {
        Err(SeriesError::OrderTooSmall)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vars_parse() {
        let v = Vars::parse("y=1, a=1,b=1").unwrap();
        assert!(v.is_ones());
        assert_eq!(v.to_string(), "y=1,a=1,b=1");
        assert_eq!(Vars::parse("").unwrap(), Vars::symbolic());
        assert_eq!(Vars::parse("a=1/2").unwrap().a, Some(BigRational::new(1.into(), 2.into())));
        assert!(Vars::parse("z=1").is_err());
        assert!(Vars::parse("y").is_err());
        assert!(Vars::parse("y=x").is_err());
    }
}
