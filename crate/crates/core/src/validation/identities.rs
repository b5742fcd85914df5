use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;

use super::{ReportBuilder, SubCheck, SuiteReport, ValidationError};
use crate::formulas::{fish_count_ij, marked_tail_count};
use crate::grammar::joint_distribution;
use crate::series::lagrange::{bivariate_lagrange, direct_extraction, fish_b, fish_p1, fish_system, random_system};
use crate::series::{build_marked, identity_ledger, rs_ledger, tree_ledger, IdentityCheck, MSeries, Var, Vars};
use crate::JointTable;

const FULL_VARIABLE_ORDER: usize = 10;
const TREE_JMAX: i64 = 7;
const LAGRANGE_TABLE: u32 = 6;
const RANDOM_SYSTEMS: u64 = 20;

fn push_ledger(rb: &mut ReportBuilder, prefix: &str, ledger: Vec<IdentityCheck>) {
    for c in ledger {
        let name = format!("{prefix}:{}", c.name);
        rb.push(match c.failure {
            None => SubCheck::ok(&name, (c.order + 1) as u64),
            Some(f) => SubCheck::failed(&name, 1, f, "lhs = rhs", "differs"),
        });
    }
}

/// Coefficients of a `u`-free marked series keyed like fish
/// `(size, tails, rsize, lsize)`.
fn marked_table(s: &MSeries) -> Result<JointTable<(usize, usize, usize, usize)>, String> {
    let mut t = JointTable::new();
    for k in 0..=s.order() {
        for (m, c) in s.coeff(k).terms() {
            if !c.is_integer() || c.is_negative() || m.exp(Var::U) != 0 {
                return Err(format!("t^{k} {m}: {c}"));
            }
            let [y, a, b, _] = m.exps();
            let key = (k + 1, y as usize + 1, a as usize + 1, b as usize + 1);
            t.add(key, c.to_integer().to_biguint().expect("nonnegative"));
        }
    }
    Ok(t)
}

fn q(n: BigUint) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The whole series identity ledger (with `y = a = b = 1` to `order`, with
/// every variable symbolic to `min(order, 10)`), marked-fish series against
/// enumeration-side weighted counts, and the Lagrange extractions.
pub fn check_identities(order: usize) -> Result<SuiteReport, ValidationError> {
    let mut rb = ReportBuilder::new("identities", &[("order", json!(order))]);
    let full = order.min(FULL_VARIABLE_ORDER);
    push_ledger(&mut rb, "ones", identity_ledger(order, &Vars::ones())?);
    push_ledger(&mut rb, "symbolic", identity_ledger(full, &Vars::symbolic())?);
    let y_one = Vars::symbolic().with(Var::Y, Some(BigRational::from_integer(1.into())));
    push_ledger(&mut rb, "rs", rs_ledger(full, &y_one)?);
    push_ledger(&mut rb, "trees", tree_ledger(full, TREE_JMAX)?);

    let joint = joint_distribution(full + 1)?;
    let marked = build_marked(full, &Vars::symbolic())?;
    let key = |k: &crate::grammar::StatVector| (k.size, k.tails, k.rsize, k.lsize);
    let weighted = |w: fn(&crate::grammar::StatVector) -> usize| {
        let mut t = JointTable::new();
        for (k, v) in joint.iter() {
            t.add(key(k), v * BigUint::from(w(k)));
        }
        t
    };
    let cases: [(&str, &MSeries, fn(&crate::grammar::StatVector) -> usize); 3] = [
        ("marked:P> vs tails", &marked.gt, |k| k.tails),
        ("marked:P< vs tails-1", &marked.lt, |k| k.tails - 1),
        ("marked:P- vs size-tails", &marked.minus, |k| k.size - k.tails),
    ];
    for (name, series, w) in cases {
        rb.push(match marked_table(series) {
            Ok(t) => SubCheck::tables(name, &weighted(w), &t),
            Err(e) => SubCheck::failed(name, 1, e, "natural, u-free", "other"),
        });
    }

    let (phi1, phi2) = fish_system();
    rb.push(SubCheck::equal(
        "lagrange:fish_count (2,2)",
        "(i,j)=(2,2)",
        q(BigUint::from(4u32)),
        bivariate_lagrange(&phi1, &phi2, &fish_p1(), 1, 1)?,
    ));
    rb.push(SubCheck::equal(
        "lagrange:marked_tail (2,2)",
        "(i,j)=(2,2)",
        q(BigUint::from(5u32)),
        bivariate_lagrange(&phi1, &phi2, &fish_b(), 1, 1)?,
    ));
    let mut table_fail = None;
    let mut table_checked = 0;
    'outer: for i in 1..=LAGRANGE_TABLE {
        for j in 1..=LAGRANGE_TABLE {
            let pairs = [
                (fish_p1(), fish_count_ij(i.into(), j.into())?),
                (fish_b(), marked_tail_count(i.into(), j.into())?),
            ];
            for (f, want) in pairs {
                table_checked += 1;
                let got = bivariate_lagrange(&phi1, &phi2, &f, i - 1, j - 1)?;
                if got != q(want.clone()) {
                    table_fail = Some((format!("(i,j)=({i},{j})"), want.to_string(), got.to_string()));
                    break 'outer;
                }
            }
        }
    }
    rb.push(match table_fail {
        None => SubCheck::ok("lagrange:closed_form_table", table_checked),
        Some((k, e, a)) => SubCheck::failed("lagrange:closed_form_table", table_checked, k, e, a),
    });
    for seed in 0..RANDOM_SYSTEMS {
        let (p1, p2, f, n1, n2) = random_system(seed);
        rb.push(SubCheck::equal(
            &format!("lagrange:random seed={seed}"),
            &format!("seed {seed}, (n1,n2)=({n1},{n2})"),
            direct_extraction(&p1, &p2, &f, n1, n2)?,
            bivariate_lagrange(&p1, &p2, &f, n1, n2)?,
        ));
    }
    Ok(rb.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_small() {
        let r = check_identities(5).unwrap();
        assert!(r.pass, "{:?}", r.failure);
        assert!(r.checks_pass("lagrange:"));
        assert!(r.checks_pass("marked:"));
    }
}
