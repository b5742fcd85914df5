use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{ReportBuilder, SubCheck, SuiteReport, ValidationError};
use crate::formulas::{fish_count, fish_count_ij, marked_tail_count};
use crate::grammar::{build, decompose, enumerate_terms, joint_distribution, StatVector, TermCatalog};
use crate::series::{build_p, MSeries, Vars};
use crate::surface::{enumerate_by_area, OracleCensus};
use crate::{Budget, JointTable};

/// Terms up to this size are also built and their realized statistics
/// compared with the grammar's predictions.
const REALIZE_MAX_SIZE: usize = 8;
const ROUNDTRIP_MAX_SIZE: usize = 7;

fn enumerated_stats(cat: &TermCatalog) -> JointTable<StatVector> {
    let mut t = JointTable::new();
    for r in cat.iter() {
        t.add_one(r.info.stats);
    }
    t
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

/// Enumerated counts by size, by `(lsize, rsize)` and tail-weighted by
/// `(lsize, rsize)`, against the closed forms, for sizes up to `max_n + 1`.
pub fn check_formulas(max_n: usize, budget: Budget) -> Result<SuiteReport, ValidationError> {
    let mut rb = ReportBuilder::new("formulas", &[("max_n", json!(max_n))]);
    let max_size = max_n + 1;
    let cat = enumerate_terms(max_size, budget)?;
    let stats = enumerated_stats(&cat);

    let mut want = JointTable::new();
    for s in 2..=max_size {
        want.add(s, fish_count(s as u64 - 1)?);
    }
    rb.push(SubCheck::tables("fish_count", &want, &stats.marginal(|k| k.size)));

    let (mut want_ij, mut want_tails) = (JointTable::new(), JointTable::new());
    for i in 1..max_size {
        for j in 1..=max_size - i {
            want_ij.add((i, j), fish_count_ij(i as u64, j as u64)?);
            want_tails.add((i, j), marked_tail_count(i as u64, j as u64)?);
        }
    }
    rb.push(SubCheck::tables("fish_count_ij", &want_ij, &stats.marginal(|k| (k.lsize, k.rsize))));
    let mut tails = JointTable::new();
    for (k, v) in stats.iter() {
        tails.add((k.lsize, k.rsize), v * big(k.tails));
    }
    rb.push(SubCheck::tables("marked_tail_count", &want_tails, &tails));

    rb.push(SubCheck::tables("joint_dp", &joint_distribution(max_size)?, &stats));

    let realize: Vec<_> = (2..=max_size.min(REALIZE_MAX_SIZE)).flat_map(|s| cat.of_size(s)).collect();
    let mismatch = realize
        .par_iter()
        .map(|r| -> Result<Option<String>, ValidationError> {
            let s = build(&r.term)?.stats()?;
            let p = r.info.stats;
            let real = StatVector {
                size: s.size,
                tails: s.tails,
                rsize: s.rsize,
                lsize: s.lsize,
                fin: s.fin,
            };
            Ok((real != p || s.area != r.info.area).then(|| r.term.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .next();
    rb.push(match mismatch {
        None => SubCheck::ok("realized_stats", realize.len() as u64),
        Some(t) => SubCheck::failed("realized_stats", realize.len() as u64, t, "predicted", "realized differs"),
    });
    Ok(rb.finish())
}

/// Converts a fish series `sum t^{s-1} y^{h-1} a^{r-1} b^{l-1} u^{f-1}` back
/// into a count table; the error names the first non-natural coefficient.
fn series_table(p: &MSeries) -> Result<JointTable<StatVector>, String> {
    let mut t = JointTable::new();
    for k in 0..=p.order() {
        for (m, c) in p.coeff(k).terms() {
            let [y, a, b, u] = m.exps();
            if !c.is_integer() || c.is_negative() {
                return Err(format!("t^{k} {m}: {c}"));
            }
            let key = StatVector {
                size: k + 1,
                tails: y as usize + 1,
                rsize: a as usize + 1,
                lsize: b as usize + 1,
                fin: u as usize + 1,
            };
            t.add(key, c.to_integer().to_biguint().expect("nonnegative"));
        }
    }
    Ok(t)
}

/// Every coefficient of the catalytic solution with all variables symbolic
/// against the enumerated joint table, up to t-order `order`.
pub fn check_series_vs_enum(order: usize, budget: Budget) -> Result<SuiteReport, ValidationError> {
    let mut rb = ReportBuilder::new("series", &[("order", json!(order))]);
    let p = build_p(order, &Vars::symbolic())?;
    let cat = enumerate_terms(order + 1, budget)?;
    let enumerated = enumerated_stats(&cat);
    match series_table(&p) {
        Ok(from_series) => {
            rb.push(SubCheck::tables("P_vs_enumeration", &enumerated, &from_series));
            rb.push(SubCheck::tables("P_vs_joint_dp", &joint_distribution(order + 1)?, &from_series));
        }
        Err(e) => rb.push(SubCheck::failed("P_natural_coefficients", 1, e, "natural number", "other")),
    }
    rb.details = json!({ "terms": p.term_count() });
    Ok(rb.finish())
}

/// Smallest element of the symmetric difference of two code sets, tagged
/// with the side it is missing from.
fn set_difference(oracle: &BTreeSet<String>, grammar: &BTreeSet<String>) -> Option<(String, &'static str)> {
    let a = oracle.difference(grammar).next().map(|c| (c.clone(), "missing from grammar"));
    let b = grammar.difference(oracle).next().map(|c| (c.clone(), "missing from oracle"));
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
        (x, y) => x.or(y),
    }
}

/// Growth oracle against the grammar by canonical code, the census, and
/// both round trips.
pub fn check_oracle(max_area: usize, budget: Budget) -> Result<SuiteReport, ValidationError> {
    let mut rb = ReportBuilder::new("oracle", &[("max_area", json!(max_area))]);
    let levels = enumerate_by_area(max_area, budget)?;
    let cat = enumerate_terms((max_area + 1).max(ROUNDTRIP_MAX_SIZE), budget)?;

    let built = cat
        .iter()
        .filter(|r| r.info.area <= max_area)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|r| -> Result<_, ValidationError> {
            let c = build(&r.term)?;
            Ok((c.cell_count(), c.canonical_code(), r.info.area))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut grammar: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    let mut area_mismatch = None;
    for (cells, code, predicted) in &built {
        if cells != predicted && area_mismatch.is_none() {
            area_mismatch = Some((code.clone(), *predicted, *cells));
        }
        grammar.entry(*cells).or_default().insert(code.clone());
    }
    rb.push(match area_mismatch {
        None => SubCheck::ok("predicted_area", built.len() as u64),
        Some((code, p, c)) => SubCheck::failed("predicted_area", built.len() as u64, code, p.to_string(), c.to_string()),
    });
    let distinct: usize = grammar.values().map(BTreeSet::len).sum();
    rb.push(SubCheck::equal("grammar_injective", "distinct codes", built.len(), distinct));

    let empty = BTreeSet::new();
    let mut codes_checked = 0u64;
    let mut code_failure = None;
    for area in 1..=max_area {
        let oracle: BTreeSet<String> = levels[area - 1].keys().cloned().collect();
        let from_grammar = grammar.get(&area).unwrap_or(&empty);
        codes_checked += oracle.len().max(from_grammar.len()) as u64;
        if code_failure.is_none() {
            if let Some((code, side)) = set_difference(&oracle, from_grammar) {
                code_failure = Some((format!("area {area}: {code}"), side));
            }
        }
    }
    rb.push(match code_failure {
        None => SubCheck::ok("code_sets", codes_checked),
        Some((key, side)) => SubCheck::failed("code_sets", codes_checked, key, "present in both", side),
    });

    let census = OracleCensus::of_levels(&levels);
    let sum_to = |upto: usize, f: fn(&OracleCensus, usize) -> usize| (1..=upto.min(max_area)).map(|a| f(&census, a)).sum::<usize>();
    if max_area >= 4 {
        rb.push(SubCheck::equal("census_non_polyomino_area_4", "area 4", 2, census.non_polyomino_at(4)));
    }
    rb.push(SubCheck::equal("census_non_polyomino_area_le_3", "area <= 3", 0, sum_to(3, OracleCensus::non_polyomino_at)));
    if max_area >= 5 {
        rb.push(SubCheck::equal("census_non_planar_area_5", "area 5", 1, census.non_planar_at(5)));
    }
    rb.push(SubCheck::equal("census_non_planar_area_le_4", "area <= 4", 0, sum_to(4, OracleCensus::non_planar_at)));

    let small: Vec<_> = (2..=ROUNDTRIP_MAX_SIZE).flat_map(|s| cat.of_size(s)).collect();
    let bad = small
        .par_iter()
        .filter_map(|r| {
            let back = build(&r.term).and_then(|c| decompose(&c));
            match back {
                Ok(t) if t == *r.term => None,
                Ok(t) => Some((r.term.to_string(), t.to_string())),
                Err(e) => Some((r.term.to_string(), e.to_string())),
            }
        })
        .min();
    rb.push(match bad {
        None => SubCheck::ok("decompose_build", small.len() as u64),
        Some((t, got)) => SubCheck::failed("decompose_build", small.len() as u64, t.clone(), t, got),
    });

    let oracle_fish: Vec<_> = levels.iter().flat_map(|l| l.iter()).collect();
    let bad = oracle_fish
        .par_iter()
        .filter_map(|(code, c)| {
            let back = decompose(c).and_then(|t| build(&t));
            match back {
                Ok(b) if b.canonical_code() == **code => None,
                Ok(b) => Some(((*code).clone(), b.canonical_code())),
                Err(e) => Some(((*code).clone(), e.to_string())),
            }
        })
        .min();
    rb.push(match bad {
        None => SubCheck::ok("build_decompose", oracle_fish.len() as u64),
        Some((code, got)) => SubCheck::failed("build_decompose", oracle_fish.len() as u64, code.clone(), code, got),
    });

    rb.details = json!({ "census": census.rows.iter().map(|r| json!({
        "area": r.0, "fish": r.1, "non_polyomino": r.2, "non_planar": r.3
    })).collect::<Vec<_>>() });
    Ok(rb.finish())
}

/// One row of the area diagnostic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaRow {
    pub size: usize,
    pub fish: String,
    pub total_area: String,
    /// Exact mean as `p/q` (or `p`).
    pub mean: String,
    pub mean_approx: f64,
    pub mean_per_size: f64,
    /// `log(mean_n / mean_{n-1}) / log(n / (n-1))`; absent for the first row.
    pub slope: Option<f64>,
}

/// Exact mean area per size from realized fish. Asserts that the means and
/// the ratios mean/size are strictly increasing; slopes are informational.
pub fn area_report(max_size: usize, budget: Budget) -> Result<SuiteReport, ValidationError> {
    let mut rb = ReportBuilder::new("area", &[("max_size", json!(max_size))]);
    let cat = enumerate_terms(max_size, budget)?;
    let mut means: Vec<(usize, BigRational)> = Vec::new();
    let mut rows = Vec::new();
    let mut predicted_bad = None;
    let mut realized = 0u64;
    for s in 2..=max_size {
        let terms = cat.of_size(s);
        let areas = terms
            .par_iter()
            .map(|r| -> Result<(usize, usize), ValidationError> { Ok((build(&r.term)?.cell_count(), r.info.area)) })
            .collect::<Result<Vec<_>, _>>()?;
        realized += areas.len() as u64;
        if predicted_bad.is_none() {
            predicted_bad = areas.iter().position(|(a, p)| a != p).map(|i| terms[i].term.to_string());
        }
        let total: usize = areas.iter().map(|(a, _)| a).sum();
        let mean = BigRational::new(BigInt::from(total), BigInt::from(terms.len()));
        let approx = mean.to_f64().unwrap_or(f64::NAN);
        let slope = means.last().map(|(ps, pm)| {
            (approx / pm.to_f64().unwrap_or(f64::NAN)).ln() / (s as f64 / *ps as f64).ln()
        });
        rows.push(AreaRow {
            size: s,
            fish: terms.len().to_string(),
            total_area: total.to_string(),
            mean: mean.to_string(),
            mean_approx: approx,
            mean_per_size: approx / s as f64,
            slope,
        });
        means.push((s, mean));
    }
    rb.push(match predicted_bad {
        None => SubCheck::ok("realized_area", realized),
        Some(t) => SubCheck::failed("realized_area", realized, t, "predicted area", "realized differs"),
    });
    rb.push(increasing("mean_increasing", means.iter().map(|(s, m)| (*s, m.clone()))));
    rb.push(increasing(
        "mean_per_size_increasing",
        means.iter().map(|(s, m)| (*s, m / BigRational::from_integer(BigInt::from(*s)))),
    ));
    rb.details = json!({ "rows": rows });
    Ok(rb.finish())
}

fn increasing(name: &str, seq: impl Iterator<Item = (usize, BigRational)>) -> SubCheck {
    let mut prev: Option<BigRational> = None;
    let mut checked = 0;
    for (s, v) in seq {
        if let Some(p) = &prev {
            checked += 1;
            if v <= *p {
                return SubCheck::failed(name, checked, format!("size {s}"), format!("> {p}"), v.to_string());
            }
        }
        prev = Some(v);
    }
    SubCheck::ok(name, checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas_small() {
        let r = check_formulas(3, Budget::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.check("fish_count").unwrap().checked, 3);
    }

    #[test]
    fn series_small() {
        let r = check_series_vs_enum(5, Budget::default()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn oracle_small() {
        let r = check_oracle(5, Budget::default()).unwrap();
        assert!(r.pass, "{:?}", r.failure);
    }

    #[test]
    fn area_small() {
        let r = area_report(6, Budget::default()).unwrap();
        assert!(r.pass, "{:?}", r.failure);
        let rows = &r.details["rows"];
        assert_eq!(rows[0]["mean"], "1");
    }

    #[test]
    fn budget_is_reported() {
        let e = check_formulas(9, Budget::new(10)).unwrap_err();
        assert!(e.is_budget());
    }
}
