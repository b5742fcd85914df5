use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{GrammarError, StatVector};
use crate::JointTable;

/// Counts of fish by (size, tails, rsize, lsize, fin).
pub type JointDistribution = JointTable<StatVector>;

type Level = BTreeMap<StatVector, BigUint>;

/// Exact joint statistics of all fish of size at most `max_size`, by
/// dynamic programming over the grammar.
///
/// For a pair of operands with fin lengths `f1` and `f2`, the `C2`/`C3`
/// choices together contribute one fish of each fin length
/// `f2 + 1 ..= f2 + f1 - 1`.
pub fn joint_distribution(max_size: usize) -> Result<JointDistribution, GrammarError> {
    if max_size < 2 {
        return Err(GrammarError::SizeTooSmall(max_size));
    }
    let mut levels: Vec<Level> = vec![BTreeMap::from([(StatVector::SINGLE_CELL, BigUint::from(1u32))])];
    for size in 3..=max_size {
        let mut next: Level = BTreeMap::new();
        let mut put = |k: StatVector, v: BigUint| {
            debug_assert!(k.tails <= k.size / 2 + 1 && k.fin <= k.size);
            *next.entry(k).or_default() += v;
        };
        for (k, v) in &levels[size - 3] {
            put(
                StatVector {
                    size,
                    lsize: k.lsize + 1,
                    fin: k.fin + 1,
                    ..*k
                },
                v.clone(),
            );
            put(
                StatVector {
                    size,
                    rsize: k.rsize + 1,
                    fin: k.fin + 1,
                    ..*k
                },
                v.clone(),
            );
        }
        for s1 in 2..=size - 2 {
            let s2 = size - s1;
            for (k1, v1) in &levels[s1 - 2] {
                for (k2, v2) in &levels[s2 - 2] {
                    let v = v1 * v2;
                    let base = StatVector {
                        size,
                        tails: k1.tails + k2.tails,
                        rsize: k1.rsize + k2.rsize,
                        lsize: k1.lsize + k2.lsize,
                        fin: 0,
                    };
                    put(
                        StatVector {
                            tails: base.tails - 1,
                            fin: k1.fin + k2.fin,
                            ..base
                        },
                        v.clone(),
                    );
                    for fin in k2.fin + 1..k2.fin + k1.fin {
                        put(StatVector { fin, ..base }, v.clone());
                    }
                }
            }
        }
        levels.push(next);
    }
    Ok(levels.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_four_marginals() {
        let t = joint_distribution(4).unwrap();
        let four = t.filter(|k| k.size == 4);
        let by_fin = four.marginal(|k| k.fin);
        assert_eq!(by_fin.get(&3), BigUint::from(1u32));
        assert_eq!(by_fin.get(&4), BigUint::from(5u32));
        let by_lr = four.marginal(|k| (k.lsize, k.rsize));
        assert_eq!(by_lr.get(&(3, 1)), BigUint::from(1u32));
        assert_eq!(by_lr.get(&(2, 2)), BigUint::from(4u32));
        assert_eq!(by_lr.get(&(1, 3)), BigUint::from(1u32));
        assert_eq!(four.weighted_sum(|k| k.tails as u64), BigUint::from(7u32));
        let two_two = four.filter(|k| k.lsize == 2 && k.rsize == 2);
        assert_eq!(two_two.weighted_sum(|k| k.tails as u64), BigUint::from(5u32));
    }

    #[test]
    fn totals_by_size() {
        let t = joint_distribution(8).unwrap();
        let by_size = t.marginal(|k| k.size);
        let want = [1u32, 2, 6, 22, 91, 408, 1938];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(by_size.get(&(i + 2)), BigUint::from(*w));
        }
    }
}
