use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::json;

use super::{ReportBuilder, SubCheck, SuiteReport, ValidationError};
use crate::formulas::fish_count;
use crate::grammar::{enumerate_terms, joint_distribution, StatVector};
use crate::series::{MSeries, TreeSeries};
use crate::trees::{enumerate_trees, joint_distribution_trees, tabulate_trees, TreeKey};
use crate::{Budget, JointTable};

/// Sizes up to this bound are also compared by brute-force enumeration of
/// both families, not only by the two dynamic programs.
const BRUTE_MAX_SIZE: usize = 9;

/// Fish `(size, fin)` against left ternary trees `(nodes + 1, core + 1)`.
pub fn check_fincore(max_size: usize) -> Result<SuiteReport, ValidationError> {
    let mut rb = ReportBuilder::new("fincore", &[("max_size", json!(max_size))]);
    if max_size < 2 {
        return Err(ValidationError::Param(format!("max_size must be at least 2, got {max_size}")));
    }
    let fish = joint_distribution(max_size)?.marginal(|k| (k.size, k.fin));
    let trees = joint_distribution_trees(max_size - 1)?.marginal(|k| (k.nodes + 1, k.core + 1));
    rb.push(SubCheck::tables("fin_vs_core", &fish, &trees));

    let mut want = JointTable::new();
    for s in 2..=max_size {
        want.add(s, fish_count(s as u64 - 1)?);
    }
    rb.push(SubCheck::tables("tree_totals", &want, &trees.marginal(|k| k.0)));

    let small = max_size.min(BRUTE_MAX_SIZE);
    let mut fish_brute = JointTable::new();
    for r in enumerate_terms(small, Budget::default())?.iter() {
        fish_brute.add_one((r.info.stats.size, r.info.stats.fin));
    }
    let tree_brute = tabulate_trees(&enumerate_trees(0, small - 1, Budget::default())?, 0)
        .marginal(|k| (k.nodes + 1, k.core + 1));
    rb.push(SubCheck::tables("fin_vs_core_brute_force", &fish_brute, &tree_brute));
    Ok(rb.finish())
}

/// Which fish statistic is matched with non-root even-abscissa nodes; the
/// other goes to odd-abscissa nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Non-root even nodes count `lsize - 1`.
    EvenIsLeft,
    /// Non-root even nodes count `rsize - 1`.
    EvenIsRight,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::EvenIsLeft, Orientation::EvenIsRight];

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::EvenIsLeft => "non_root_even=lsize-1,odd=rsize-1",
            Orientation::EvenIsRight => "non_root_even=rsize-1,odd=lsize-1",
        }
    }

    /// The tree statistics a fish with statistics `k` is predicted to match.
    pub fn align(self, k: &StatVector) -> TreeKey {
        let (even, odd) = match self {
            Orientation::EvenIsLeft => (k.lsize - 1, k.rsize - 1),
            Orientation::EvenIsRight => (k.rsize - 1, k.lsize - 1),
        };
        TreeKey {
            nodes: k.size - 1,
            right_branches: k.tails - 1,
            non_root_even: even,
            odd,
            core: k.fin - 1,
        }
    }
}

/// The five-statistic fish/tree correspondence under both parity
/// orientations. Passes when at least one orientation matches everywhere.
pub fn check_conjecture(max_size: usize) -> Result<SuiteReport, ValidationError> {
    let mut rb = ReportBuilder::new("conjecture", &[("max_size", json!(max_size))]);
    if max_size < 2 {
        return Err(ValidationError::Param(format!("max_size must be at least 2, got {max_size}")));
    }
    let fish = joint_distribution(max_size)?;
    let trees = joint_distribution_trees(max_size - 1)?;
    let mut matching = Vec::new();
    let mut results = Vec::new();
    for o in Orientation::BOTH {
        let aligned = fish.marginal(|k| o.align(k));
        let first_bad = trees.first_difference(&aligned).map(|(k, _, _)| k);
        let check = SubCheck::tables(&format!("orientation {}", o.as_str()), &trees, &aligned);
        if check.pass {
            matching.push(o.as_str());
        }
        results.push((first_bad, check));
    }
    // Passing checks first, then failures by smallest counterexample.
    results.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, c) in results {
        rb.push(c);
    }
    rb.details = json!({
        "orientations_matching": matching,
        "fish_keys": fish.len(),
        "tree_keys": trees.len(),
    });
    let pass = !matching.is_empty();
    Ok(rb.finish_with(pass))
}

fn natural_table<K: Ord + Clone>(s: &MSeries, key: impl Fn(usize, [u16; 4]) -> K) -> Result<JointTable<K>, String> {
    let mut t = JointTable::new();
    for n in 0..=s.order() {
        for (m, c) in s.coeff(n).terms() {
            let v = c
                .to_integer()
                .to_u64()
                .filter(|_| c.is_integer())
                .ok_or_else(|| format!("t^{n} {m}: {c}"))?;
            t.add(key(n, m.exps()), BigUint::from(v));
        }
    }
    Ok(t)
}

/// Closed forms for `T_j` and `T_j(u)` against brute force j-positive trees
/// for `0 <= j <= 3` and nodes up to `max_nodes`, plus the `T_j(u)`
/// recurrence for `-1 <= j <= 6` to order 10.
pub fn check_trees(max_nodes: usize, budget: Budget) -> Result<SuiteReport, ValidationError> {
    const JMAX: i64 = 3;
    const REC_ORDER: usize = 10;
    const REC_JMAX: i64 = 6;
    let mut rb = ReportBuilder::new("trees", &[("max_nodes", json!(max_nodes))]);
    let mut ts = TreeSeries::build(max_nodes, JMAX)?;
    for j in 0..=JMAX {
        let trees = enumerate_trees(j, max_nodes, budget)?;
        let mut by_nodes = JointTable::new();
        let mut by_core = JointTable::new();
        for t in &trees {
            match t.stats_at(j) {
                Ok(s) => {
                    by_nodes.add_one(s.nodes);
                    by_core.add_one((s.nodes, s.core_size));
                }
                Err(_) => {
                    by_nodes.add_one(0);
                    by_core.add_one((0, 0));
                }
            }
        }
        let name = format!("T_{j}");
        match natural_table(&ts.tj(j)?, |n, _| n) {
            Ok(series) => rb.push(SubCheck::tables(&name, &by_nodes, &series)),
            Err(e) => rb.push(SubCheck::failed(&name, 1, e, "natural", "other")),
        }
        let name = format!("T_{j}(u)");
        match natural_table(&ts.tju(j)?, |n, e| (n, e[3] as usize)) {
            Ok(series) => rb.push(SubCheck::tables(&name, &by_core, &series)),
            Err(e) => rb.push(SubCheck::failed(&name, 1, e, "natural", "other")),
        }
    }
    let mut rec = TreeSeries::build(REC_ORDER, REC_JMAX + 1)?;
    for j in -1..=REC_JMAX {
        let name = format!("recurrence_j={j}");
        rb.push(match rec.recurrence_mismatch(j)? {
            None => SubCheck::ok(&name, (REC_ORDER + 1) as u64),
            Some(m) => SubCheck::failed(&name, 1, format!("t^{} {}", m.t_exp, m.mono), m.left.to_string(), m.right.to_string()),
        });
    }
    let brute = tabulate_trees(&enumerate_trees(0, max_nodes.min(BRUTE_MAX_SIZE - 1), budget)?, 0);
    let dp = joint_distribution_trees(max_nodes.min(BRUTE_MAX_SIZE - 1))?;
    rb.push(SubCheck::tables("joint_dp_vs_brute_force", &brute, &dp));
    Ok(rb.finish())
}
