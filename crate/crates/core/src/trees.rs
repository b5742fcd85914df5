//! Ternary trees embedded on the integer line.
//!
//! A node at abscissa `x` has its left child at `x + 1`, its middle child at
//! `x` and its right child at `x - 1`. A tree rooted at `j` is *j-positive*
//! when every node has a non-negative abscissa; 0-positive trees are the
//! left ternary trees.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::{Budget, BudgetExceeded, JointTable};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TernaryTree {
    Empty,
    Node(Arc<[TernaryTree; 3]>),
}

/// Child slots in (left, middle, right) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Left = 0,
    Middle = 1,
    Right = 2,
}

impl Branch {
    pub fn shift(self) -> i64 {
        match self {
            Branch::Left => 1,
            Branch::Middle => 0,
            Branch::Right => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub nodes: usize,
    pub core_size: usize,
    pub right_branches: usize,
    pub even_nodes: usize,
    pub odd_nodes: usize,
    pub non_root_even: usize,
}

/// Key of the tree joint table: (nodes, right branches, non-root even
/// nodes, odd nodes, core size).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TreeKey {
    pub nodes: usize,
    pub right_branches: usize,
    pub non_root_even: usize,
    pub odd: usize,
    pub core: usize,
}

/// The tree DP stores per-subtree statistics in `u8`.
pub const MAX_DP_NODES: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree is empty")]
    Empty,
    #[error("j must be non-negative, got {0}")]
    NegativeRoot(i64),
    #[error("at most {max} nodes supported, got {0}", max = MAX_DP_NODES)]
    TooLarge(usize),
    #[error("tree text: {0}")]
    Parse(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

impl TernaryTree {
    pub fn node(left: TernaryTree, middle: TernaryTree, right: TernaryTree) -> Self {
        TernaryTree::Node(Arc::new([left, middle, right]))
    }

    pub fn leaf() -> Self {
        Self::node(TernaryTree::Empty, TernaryTree::Empty, TernaryTree::Empty)
    }

    /// A path from the root following `branches`.
    pub fn chain(branches: &[Branch]) -> Self {
        match branches.split_first() {
            None => Self::leaf(),
            Some((&b, rest)) => {
                let mut kids = [TernaryTree::Empty, TernaryTree::Empty, TernaryTree::Empty];
                kids[b as usize] = Self::chain(rest);
                TernaryTree::Node(Arc::new(kids))
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, TernaryTree::Empty)
    }

    pub fn nodes(&self) -> usize {
        match self {
            TernaryTree::Empty => 0,
            TernaryTree::Node(k) => 1 + k.iter().map(TernaryTree::nodes).sum::<usize>(),
        }
    }

    /// Abscissas in preorder (node, left, middle, right).
    pub fn abscissas(&self, root_x: i64) -> Vec<i64> {
        let mut out = Vec::new();
        self.collect_abscissas(root_x, &mut out);
        out
    }

    fn collect_abscissas(&self, x: i64, out: &mut Vec<i64>) {
        if let TernaryTree::Node(k) = self {
            out.push(x);
            for (b, child) in [Branch::Left, Branch::Middle, Branch::Right].iter().zip(k.iter()) {
                child.collect_abscissas(x + b.shift(), out);
            }
        }
    }

    /// True iff every node has non-negative abscissa when the root sits at `j`.
    /// The empty tree is j-positive for every `j >= -1`.
    pub fn is_j_positive(&self, j: i64) -> bool {
        match self {
            TernaryTree::Empty => j >= -1,
            TernaryTree::Node(_) => self.abscissas(j).iter().all(|&x| x >= 0),
        }
    }

    /// Statistics with the root at abscissa 0.
    pub fn stats(&self) -> Result<TreeStats, TreeError> {
        self.stats_at(0)
    }

    pub fn stats_at(&self, root_x: i64) -> Result<TreeStats, TreeError> {
        if self.is_empty() {
            return Err(TreeError::Empty);
        }
        let mut s = TreeStats {
            nodes: 0,
            core_size: 0,
            right_branches: 0,
            even_nodes: 0,
            odd_nodes: 0,
            non_root_even: 0,
        };
        self.walk(root_x, true, false, &mut s);
        s.non_root_even = s.even_nodes - usize::from(root_x.rem_euclid(2) == 0);
        Ok(s)
    }

    fn walk(&self, x: i64, in_core: bool, via_right: bool, s: &mut TreeStats) {
        let TernaryTree::Node(k) = self else { return };
        s.nodes += 1;
        if in_core {
            s.core_size += 1;
        }
        if x.rem_euclid(2) == 0 {
            s.even_nodes += 1;
        } else {
            s.odd_nodes += 1;
        }
        k[0].walk(x + 1, in_core, false, s);
        k[1].walk(x, in_core, false, s);
        if !k[2].is_empty() && !via_right {
            s.right_branches += 1;
        }
        k[2].walk(x - 1, false, true, s);
    }

    pub fn key(&self) -> Result<TreeKey, TreeError> {
        let s = self.stats()?;
        Ok(TreeKey {
            nodes: s.nodes,
            right_branches: s.right_branches,
            non_root_even: s.non_root_even,
            odd: s.odd_nodes,
            core: s.core_size,
        })
    }

    /// Parses the text form: `.` for the empty tree, `(L M R)` for a node.
    pub fn parse(text: &str) -> Result<TernaryTree, TreeError> {
        let mut toks = text
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_owned)
            .collect::<Vec<_>>()
            .into_iter()
            .peekable();
        let t = parse_tree(&mut toks)?;
        if toks.next().is_some() {
            return Err(TreeError::Parse("trailing input".into()));
        }
        Ok(t)
    }
}

fn parse_tree(toks: &mut std::iter::Peekable<std::vec::IntoIter<String>>) -> Result<TernaryTree, TreeError> {
    match toks.next().as_deref() {
        Some(".") => Ok(TernaryTree::Empty),
        Some("(") => {
            let l = parse_tree(toks)?;
            let m = parse_tree(toks)?;
            let r = parse_tree(toks)?;
            match toks.next().as_deref() {
                Some(")") => Ok(TernaryTree::node(l, m, r)),
                _ => Err(TreeError::Parse("expected ')'".into())),
            }
        }
        Some(t) => Err(TreeError::Parse(format!("unexpected token {t:?}"))),
        None => Err(TreeError::Parse("unexpected end of input".into())),
    }
}

impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TernaryTree::Empty => f.write_str("."),
            TernaryTree::Node(k) => write!(f, "({} {} {})", k[0], k[1], k[2]),
        }
    }
}

/// All j-positive trees with at most `max_nodes` nodes, by increasing node
/// count. Subtrees that would leave the non-negative half-line are pruned
/// during generation.
pub fn enumerate_trees(j: i64, max_nodes: usize, budget: Budget) -> Result<Vec<TernaryTree>, TreeError> {
    if j < 0 {
        return Err(TreeError::NegativeRoot(j));
    }
    // Check the exact count first so oversized requests fail before allocating.
    let counts = joint_distribution_trees_at(j, max_nodes)?;
    let total = counts.total().to_u64().unwrap_or(u64::MAX).saturating_add(1);
    budget.check(total)?;
    let mut memo: HashMap<(i64, usize), Arc<Vec<TernaryTree>>> = HashMap::new();
    let mut out = Vec::new();
    for n in 0..=max_nodes {
        out.extend(trees_exact(j, n, &mut memo).iter().cloned());
    }
    Ok(out)
}

/// Unrestricted ternary trees with `n` nodes.
pub fn ternary_count(n: u64) -> BigUint {
    // C(3n, n) / (2n + 1)
    num_integer::binomial(BigUint::from(3 * n), BigUint::from(n)) / BigUint::from(2 * n + 1)
}

fn trees_exact(
    x: i64,
    n: usize,
    memo: &mut HashMap<(i64, usize), Arc<Vec<TernaryTree>>>,
) -> Arc<Vec<TernaryTree>> {
    if let Some(v) = memo.get(&(x, n)) {
        return v.clone();
    }
    let v = if n == 0 {
        vec![TernaryTree::Empty]
    } else if x < 0 {
        Vec::new()
    } else {
        let mut v = Vec::new();
        for nl in 0..n {
            for nm in 0..n - nl {
                let nr = n - 1 - nl - nm;
                let ls = trees_exact(x + 1, nl, memo);
                let ms = trees_exact(x, nm, memo);
                let rs = trees_exact(x - 1, nr, memo);
                for l in ls.iter() {
                    for m in ms.iter() {
                        for r in rs.iter() {
                            v.push(TernaryTree::node(l.clone(), m.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        v
    };
    let v = Arc::new(v);
    memo.insert((x, n), v.clone());
    v
}

/// Statistics of a subtree, before the root-parity correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct SubKey {
    nodes: u8,
    right_branches: u8,
    even: u8,
    odd: u8,
    core: u8,
}

type SubTable = HashMap<SubKey, BigUint>;

struct TreeDp {
    memo: HashMap<(i64, bool, bool, usize), std::rc::Rc<SubTable>>,
}

impl TreeDp {
    /// Subtrees with exactly `n` nodes rooted at `x`; `in_core` says whether
    /// the root belongs to the core, `via_right` whether it hangs from a
    /// right edge.
    fn table(&mut self, x: i64, in_core: bool, via_right: bool, n: usize) -> std::rc::Rc<SubTable> {
        let key = (x, in_core, via_right, n);
        if let Some(t) = self.memo.get(&key) {
            return t.clone();
        }
        let mut out = SubTable::new();
        if n == 0 {
            out.insert(
                SubKey {
                    nodes: 0,
                    right_branches: 0,
                    even: 0,
                    odd: 0,
                    core: 0,
                },
                BigUint::from(1u32),
            );
        } else if x >= 0 {
            let even = u8::from(x % 2 == 0);
            for nl in 0..n {
                for nm in 0..n - nl {
                    let nr = n - 1 - nl - nm;
                    let lt = self.table(x + 1, in_core, false, nl);
                    let mt = self.table(x, in_core, false, nm);
                    let rt = self.table(x - 1, false, true, nr);
                    let new_branch = u8::from(nr > 0 && !via_right);
                    for (lk, lv) in lt.iter() {
                        for (mk, mv) in mt.iter() {
                            let lm = lv * mv;
                            for (rk, rv) in rt.iter() {
                                let k = SubKey {
                                    nodes: 1 + lk.nodes + mk.nodes + rk.nodes,
                                    right_branches: new_branch
                                        + lk.right_branches
                                        + mk.right_branches
                                        + rk.right_branches,
                                    even: even + lk.even + mk.even + rk.even,
                                    odd: (1 - even) + lk.odd + mk.odd + rk.odd,
                                    core: u8::from(in_core) + lk.core + mk.core + rk.core,
                                };
                                *out.entry(k).or_default() += &lm * rv;
                            }
                        }
                    }
                }
            }
        }
        let out = std::rc::Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }
}

/// Joint distribution of j-positive trees with 1..=max_nodes nodes by
/// (nodes, right branches, non-root even nodes, odd nodes, core size).
pub fn joint_distribution_trees_at(j: i64, max_nodes: usize) -> Result<JointTable<TreeKey>, TreeError> {
    if j < 0 {
        return Err(TreeError::NegativeRoot(j));
    }
    if max_nodes > MAX_DP_NODES {
        return Err(TreeError::TooLarge(max_nodes));
    }
    let mut dp = TreeDp {
        memo: HashMap::new(),
    };
    let root_even = usize::from(j % 2 == 0);
    let mut table = JointTable::new();
    for n in 1..=max_nodes {
        for (k, v) in dp.table(j, true, false, n).iter() {
            table.add(
                TreeKey {
                    nodes: k.nodes as usize,
                    right_branches: k.right_branches as usize,
                    non_root_even: k.even as usize - root_even,
                    odd: k.odd as usize,
                    core: k.core as usize,
                },
                v.clone(),
            );
        }
    }
    Ok(table)
}

/// [`joint_distribution_trees_at`] for left ternary trees (`j = 0`).
pub fn joint_distribution_trees(max_nodes: usize) -> Result<JointTable<TreeKey>, TreeError> {
    joint_distribution_trees_at(0, max_nodes)
}

/// Brute-force aggregation of [`enumerate_trees`] into a joint table.
pub fn tabulate_trees(trees: &[TernaryTree], j: i64) -> JointTable<TreeKey> {
    let mut t = JointTable::new();
    for tree in trees.iter().filter(|t| !t.is_empty()) {
        let s = tree.stats_at(j).expect("nonempty");
        t.add_one(TreeKey {
            nodes: s.nodes,
            right_branches: s.right_branches,
            non_root_even: s.non_root_even,
            odd: s.odd_nodes,
            core: s.core_size,
        });
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use Branch::*;

    fn count_by_nodes(trees: &[TernaryTree], n: usize) -> usize {
        trees.iter().filter(|t| t.nodes() == n).count()
    }

    #[test]
    fn abscissa_examples() {
        assert_eq!(TernaryTree::leaf().abscissas(0), vec![0]);
        assert_eq!(TernaryTree::chain(&[Left]).abscissas(0), vec![0, 1]);
        assert_eq!(TernaryTree::chain(&[Middle, Right]).abscissas(0), vec![0, 0, -1]);
    }

    #[test]
    fn positivity_examples() {
        assert!(TernaryTree::Empty.is_j_positive(-1));
        assert!(!TernaryTree::Empty.is_j_positive(-2));
        assert!(!TernaryTree::chain(&[Right]).is_j_positive(0));
        assert!(TernaryTree::chain(&[Left, Right]).is_j_positive(0));
    }

    #[test]
    fn stats_examples() {
        let s = TernaryTree::leaf().stats().unwrap();
        assert_eq!((s.nodes, s.core_size, s.right_branches, s.even_nodes, s.odd_nodes), (1, 1, 0, 1, 0));
        let lr = TernaryTree::chain(&[Left, Right]).stats().unwrap();
        assert_eq!((lr.core_size, lr.right_branches, lr.non_root_even, lr.odd_nodes), (2, 1, 1, 1));
        let rr = TernaryTree::chain(&[Right, Right, Middle, Right]).stats_at(5).unwrap();
        assert_eq!(rr.right_branches, 2);
        assert!(TernaryTree::Empty.stats().is_err());
    }

    #[test]
    fn three_node_left_trees() {
        let trees = enumerate_trees(0, 3, Budget::default()).unwrap();
        let three: Vec<_> = trees.iter().filter(|t| t.nodes() == 3).cloned().collect();
        assert_eq!(three.len(), 6);
        let t = tabulate_trees(&three, 0);
        let core = t.marginal(|k| k.core);
        assert_eq!(core.get(&2), BigUint::from(1u32));
        assert_eq!(core.get(&3), BigUint::from(5u32));
        let rb = t.marginal(|k| k.right_branches);
        assert_eq!(rb.get(&0), BigUint::from(5u32));
        assert_eq!(rb.get(&1), BigUint::from(1u32));
    }

    #[test]
    fn enumeration_counts() {
        let t0 = enumerate_trees(0, 3, Budget::default()).unwrap();
        assert_eq!(count_by_nodes(&t0, 1), 1);
        assert_eq!(count_by_nodes(&t0, 3), 6);
        let t1 = enumerate_trees(1, 2, Budget::default()).unwrap();
        assert_eq!(count_by_nodes(&t1, 2), 3);
        assert!(enumerate_trees(-1, 2, Budget::default()).is_err());
        for t in &t0 {
            assert!(t.is_j_positive(0));
        }
    }

    #[test]
    fn monotone_in_j_and_saturates() {
        let n = 6;
        let mut prev = vec![0; n + 1];
        for j in 0..=n as i64 + 1 {
            let trees = enumerate_trees(j, n, Budget::default()).unwrap();
            for k in 0..=n {
                let c = count_by_nodes(&trees, k);
                assert!(c >= prev[k]);
                prev[k] = c;
                if j as usize >= n {
                    assert_eq!(BigUint::from(c), ternary_count(k as u64));
                }
            }
        }
    }

    #[test]
    fn dp_matches_brute_force() {
        for j in 0..=4 {
            let trees = enumerate_trees(j, 7, Budget::default()).unwrap();
            let brute = tabulate_trees(&trees, j);
            let dp = joint_distribution_trees_at(j, 7).unwrap();
            assert_eq!(brute.first_difference(&dp), None, "j = {j}");
        }
    }

    #[test]
    fn dp_examples() {
        let t = joint_distribution_trees(9).unwrap();
        let two = t.filter(|k| k.nodes == 2).marginal(|k| (k.non_root_even, k.odd));
        assert_eq!(two.get(&(1, 0)), BigUint::from(1u32));
        assert_eq!(two.get(&(0, 1)), BigUint::from(1u32));
        let by_nodes = t.marginal(|k| k.nodes);
        let want = [1u32, 2, 6, 22, 91, 408, 1938, 9614, 49335];
        for (n, w) in (1..).zip(want) {
            assert_eq!(by_nodes.get(&n), BigUint::from(w));
        }
    }

    #[test]
    fn core_is_everything_without_right_edges() {
        for t in enumerate_trees(0, 5, Budget::default()).unwrap() {
            if t.is_empty() {
                continue;
            }
            let s = t.stats().unwrap();
            if s.right_branches == 0 {
                assert_eq!(s.core_size, s.nodes);
            }
            assert_eq!(s.nodes, s.even_nodes + s.odd_nodes);
            assert_eq!(s.non_root_even + 1, s.even_nodes);
        }
    }

    #[test]
    fn text_form() {
        let t = TernaryTree::chain(&[Left, Right]);
        assert_eq!(t.to_string(), "((. . (. . .)) . .)");
        assert_eq!(TernaryTree::parse(&t.to_string()).unwrap(), t);
        assert_eq!(TernaryTree::parse(".").unwrap(), TernaryTree::Empty);
        assert!(TernaryTree::parse("(. .)").is_err());
    }
}
