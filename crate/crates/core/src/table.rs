use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

/// Exact counts indexed by a statistic tuple, iterated in lexicographic
/// key order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointTable<K: Ord> {
    counts: BTreeMap<K, BigUint>,
}

impl<K: Ord> Default for JointTable<K> {
    fn default() -> Self {
        JointTable {
            counts: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> JointTable<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: K, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(key).or_default() += count;
    }

    pub fn add_one(&mut self, key: K) {
        self.add(key, BigUint::from(1u32));
    }

    pub fn get(&self, key: &K) -> BigUint {
        self.counts.get(key).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigUint)> {
        self.counts.iter()
    }

    /// Projects keys through `f`, summing counts that collide.
    pub fn marginal<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> JointTable<K2> {
        let mut out = JointTable::new();
        for (k, v) in &self.counts {
            out.add(f(k), v.clone());
        }
        out
    }

    /// Keeps only the entries whose key satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&K) -> bool) -> JointTable<K> {
        JointTable {
            counts: self
                .counts
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Sum of `weight(key) * count` over the table.
    pub fn weighted_sum(&self, weight: impl Fn(&K) -> u64) -> BigUint {
        self.counts
            .iter()
            .map(|(k, v)| v * BigUint::from(weight(k)))
            .sum()
    }

    /// First key (in order) where the two tables differ, with both counts.
    pub fn first_difference(&self, other: &JointTable<K>) -> Option<(K, BigUint, BigUint)> {
        let keys: std::collections::BTreeSet<&K> =
            self.counts.keys().chain(other.counts.keys()).collect();
        for k in keys {
            let a = self.get(k);
            let b = other.get(k);
            if a != b {
                return Some((k.clone(), a, b));
            }
        }
        None
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigUint)> for JointTable<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigUint)>>(iter: I) -> Self {
        let mut t = JointTable::new();
        for (k, v) in iter {
            t.add(k, v);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marginals_and_differences() {
        let mut t: JointTable<(u8, u8)> = JointTable::new();
        t.add_one((1, 2));
        t.add_one((1, 3));
        t.add((2, 2), BigUint::from(5u32));
        t.add((9, 9), BigUint::zero());
        assert_eq!(t.len(), 3);
        let m = t.marginal(|k| k.0);
        assert_eq!(m.get(&1), BigUint::from(2u32));
        assert_eq!(m.total(), BigUint::from(7u32));
        assert_eq!(t.weighted_sum(|k| k.1 as u64), BigUint::from(15u32));
        let mut u = t.clone();
        u.add_one((1, 3));
        assert_eq!(
            t.first_difference(&u),
            Some(((1, 3), BigUint::from(1u32), BigUint::from(2u32)))
        );
        assert_eq!(t.first_difference(&t), None);
    }
}
