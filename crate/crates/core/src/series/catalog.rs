use std::fmt;
use std::str::FromStr;

use super::builders::{
    build_marked, build_p, build_parametrization, build_pu_param, build_rs, build_u_v,
};
use super::mseries::MSeries;
use super::tree_series::TreeSeries;
use super::{SeriesError, Vars};

/// Every named series the catalog can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesName {
    /// `P(u)` from the catalytic equation.
    P,
    /// `P(u)` from the closed form in `B(u)` and `B`.
    PClosed,
    P1,
    B,
    U,
    /// `1 + y abB^2 / (1 - abB^2)`.
    UAlt,
    V,
    Bu,
    PLt,
    PGt,
    PMinus,
    DeltaP,
    RBar,
    SBar,
    T,
    X,
    BTree,
    Tu,
    BTreeU,
    Tj(i64),
    Hj(i64),
    Tju(i64),
}

impl SeriesName {
    pub const FIXED: [SeriesName; 19] = [
        SeriesName::P,
        SeriesName::PClosed,
        SeriesName::P1,
        SeriesName::B,
        SeriesName::U,
        SeriesName::UAlt,
        SeriesName::V,
        SeriesName::Bu,
        SeriesName::PLt,
        SeriesName::PGt,
        SeriesName::PMinus,
        SeriesName::DeltaP,
        SeriesName::RBar,
        SeriesName::SBar,
        SeriesName::T,
        SeriesName::X,
        SeriesName::BTree,
        SeriesName::Tu,
        SeriesName::BTreeU,
    ];

    fn label(self) -> &'static str {
        match self {
            SeriesName::P => "P",
            SeriesName::PClosed => "Pclosed",
            SeriesName::P1 => "P1",
            SeriesName::B => "B",
            SeriesName::U => "U",
            SeriesName::UAlt => "Ualt",
            SeriesName::V => "V",
            SeriesName::Bu => "Bu",
            SeriesName::PLt => "Plt",
            SeriesName::PGt => "Pgt",
            SeriesName::PMinus => "Pminus",
            SeriesName::DeltaP => "DeltaP",
            SeriesName::RBar => "Rbar",
            SeriesName::SBar => "Sbar",
            SeriesName::T => "T",
            SeriesName::X => "X",
            SeriesName::BTree => "Btree",
            SeriesName::Tu => "Tu",
            SeriesName::BTreeU => "Btreeu",
            SeriesName::Tj(_) => "Tj",
            SeriesName::Hj(_) => "Hj",
            SeriesName::Tju(_) => "Tju",
        }
    }

    /// Tree series exist only at `y = a = b = 1`.
    pub fn is_tree_series(self) -> bool {
        matches!(
            self,
            SeriesName::T
                | SeriesName::X
                | SeriesName::BTree
                | SeriesName::Tu
                | SeriesName::BTreeU
                | SeriesName::Tj(_)
                | SeriesName::Hj(_)
                | SeriesName::Tju(_)
        )
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesName::Tj(j) | SeriesName::Hj(j) | SeriesName::Tju(j) => write!(f, "{}:{j}", self.label()),
            _ => f.write_str(self.label()),
        }
    }
}

impl FromStr for SeriesName {
    type Err = SeriesError;

    /// Accepts the labels printed by `Display` plus a few aliases
    /// (`P(u)`, `P(1)`, `B(u)`, `T(u)`, `T_j:2`, ...).
    fn from_str(s: &str) -> Result<SeriesName, SeriesError> {
        let unknown = || SeriesError::UnknownName(s.to_owned());
        if let Some((head, idx)) = s.split_once(':') {
            let j: i64 = idx.trim().parse().map_err(|_| unknown())?;
            return match head.trim() {
                "Tj" | "T_j" => Ok(SeriesName::Tj(j)),
                "Hj" | "H_j" => Ok(SeriesName::Hj(j)),
                "Tju" | "T_j(u)" => Ok(SeriesName::Tju(j)),
                _ => Err(unknown()),
            };
        }
        let alias = match s.trim() {
            "P(u)" => "P",
            "P(1)" => "P1",
            "B(u)" => "Bu",
            "T(u)" => "Tu",
            "U'" => "Ualt",
            "P<" => "Plt",
            "P>" => "Pgt",
            "P-" => "Pminus",
            other => other,
        };
        SeriesName::FIXED
            .iter()
            .copied()
            .find(|n| n.label().eq_ignore_ascii_case(alias))
            .ok_or_else(unknown)
    }
}

/// Builds named series for one truncation order and specialization.
/// Every lookup recomputes from the defining equations, so results depend
/// only on `(order, vars)`.
#[derive(Clone, Debug)]
pub struct SeriesCatalog {
    pub order: usize,
    pub vars: Vars,
}

impl SeriesCatalog {
    pub fn new(order: usize, vars: Vars) -> SeriesCatalog {
        SeriesCatalog { order, vars }
    }

    pub fn get(&self, name: SeriesName) -> Result<MSeries, SeriesError> {
        let (n, v) = (self.order, &self.vars);
        if name.is_tree_series() && !v.is_ones() {
            return Err(SeriesError::TreeSpecializationRequired(name.to_string()));
        }
        let raw = match name {
            SeriesName::P => build_p(n, v)?,
            SeriesName::PClosed => build_pu_param(n, v)?.pu,
            SeriesName::P1 => build_parametrization(n, v)?.p1,
            SeriesName::B => build_parametrization(n, v)?.b,
            SeriesName::U => build_u_v(n, v)?.u,
            SeriesName::UAlt => build_u_v(n, v)?.u_alt,
            SeriesName::V => build_u_v(n, v)?.v,
            SeriesName::Bu => build_pu_param(n, v)?.bu,
            SeriesName::PLt => build_marked(n, v)?.lt,
            SeriesName::PGt => build_marked(n, v)?.gt,
            SeriesName::PMinus => build_marked(n, v)?.minus,
            SeriesName::DeltaP => build_p(n, v)?.delta()?,
            SeriesName::RBar => build_rs(n, v)?.rbar,
            SeriesName::SBar => build_rs(n, v)?.sbar,
            SeriesName::T => TreeSeries::build(n, 0)?.t,
            SeriesName::X => TreeSeries::build(n, 0)?.x,
            SeriesName::BTree => TreeSeries::build(n, 0)?.b,
            SeriesName::Tu => TreeSeries::build(n, 0)?.tu,
            SeriesName::BTreeU => TreeSeries::build(n, 0)?.bu,
            SeriesName::Tj(j) => TreeSeries::build(n, j)?.tj(j)?,
            SeriesName::Hj(j) => TreeSeries::build(n, j)?.hj(j)?,
            SeriesName::Tju(j) => TreeSeries::build(n, j)?.tju(j)?,
        };
        Ok(v.apply(&raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::rat;

    fn ints(s: &MSeries) -> Vec<i64> {
        s.totals().iter().map(|q| q.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn names_round_trip() {
        for n in SeriesName::FIXED.into_iter().chain([SeriesName::Tj(3), SeriesName::Hj(-2), SeriesName::Tju(-1)]) {
            assert_eq!(n.to_string().parse::<SeriesName>().unwrap(), n);
        }
        assert_eq!("P(1)".parse::<SeriesName>().unwrap(), SeriesName::P1);
        assert_eq!("T_j:2".parse::<SeriesName>().unwrap(), SeriesName::Tj(2));
        assert!("Q".parse::<SeriesName>().is_err());
        assert!("Tj:x".parse::<SeriesName>().is_err());
    }

    #[test]
    fn catalog_lookups() {
        let cat = SeriesCatalog::new(5, Vars::ones().with(super::super::Var::U, Some(rat(1))));
        assert_eq!(ints(&cat.get(SeriesName::P1).unwrap()), vec![0, 1, 2, 6, 22, 91]);
        assert_eq!(ints(&cat.get(SeriesName::P).unwrap()), vec![0, 1, 2, 6, 22, 91]);
        assert_eq!(ints(&cat.get(SeriesName::T).unwrap()), vec![1, 1, 3, 12, 55, 273]);
        let sym = SeriesCatalog::new(3, Vars::symbolic());
        assert!(matches!(sym.get(SeriesName::T), Err(SeriesError::TreeSpecializationRequired(_))));
    }
}
