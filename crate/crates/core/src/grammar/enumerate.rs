use std::sync::Arc;

use num_traits::ToPrimitive;

use super::{FishTerm, GrammarError, TermInfo};
use crate::formulas::fish_count;
use crate::surface::Letter;
use crate::Budget;

/// A generated term with its grammar-predicted statistics.
#[derive(Clone, Debug)]
pub struct TermRecord {
    pub term: Arc<FishTerm>,
    pub info: TermInfo,
}

/// Every valid term up to a maximum size, grouped by size.
#[derive(Clone, Debug, Default)]
pub struct TermCatalog {
    by_size: Vec<Vec<TermRecord>>,
}

impl TermCatalog {
    pub fn max_size(&self) -> usize {
        self.by_size.len() + 1
    }

    /// Terms of exactly `size` (empty outside the generated range).
    pub fn of_size(&self, size: usize) -> &[TermRecord] {
        if size < 2 {
            return &[];
        }
        self.by_size.get(size - 2).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TermRecord> {
        self.by_size.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Generates every valid term of size at most `max_size`, each exactly once.
pub fn enumerate_terms(max_size: usize, budget: Budget) -> Result<TermCatalog, GrammarError> {
    if max_size < 2 {
        return Err(GrammarError::SizeTooSmall(max_size));
    }
    let total: u64 = (1..max_size as u64)
        .map(|n| fish_count(n).ok().and_then(|c| c.to_u64()).unwrap_or(u64::MAX))
        .fold(0u64, u64::saturating_add);
    budget.check(total)?;

    let mut by_size: Vec<Vec<TermRecord>> = Vec::with_capacity(max_size - 1);
    by_size.push(vec![TermRecord {
        term: Arc::new(FishTerm::A),
        info: FishTerm::A.info()?,
    }]);
    for size in 3..=max_size {
        let mut level = Vec::new();
        for r in &by_size[size - 3] {
            level.push(TermRecord {
                term: Arc::new(FishTerm::B1(r.term.clone())),
                info: r.info.extend_b1(),
            });
        }
        for r in &by_size[size - 3] {
            level.push(TermRecord {
                term: Arc::new(FishTerm::B2(r.term.clone())),
                info: r.info.extend_b2(),
            });
        }
        for s1 in 2..=size - 2 {
            let s2 = size - s1;
            for r1 in &by_size[s1 - 2] {
                for r2 in &by_size[s2 - 2] {
                    level.push(TermRecord {
                        term: Arc::new(FishTerm::C1(r1.term.clone(), r2.term.clone())),
                        info: r1.info.combine_c1(&r2.info),
                    });
                    let letters = r1.info.fin_word.letters();
                    for p in 1..letters.len() {
                        let letter = letters[p - 1];
                        let info = r1.info.combine_c23(p, &r2.info, letter)?;
                        let term = match letter {
                            Letter::R => FishTerm::C2(r1.term.clone(), p, r2.term.clone()),
                            Letter::L => FishTerm::C3(r1.term.clone(), p, r2.term.clone()),
                        };
                        level.push(TermRecord {
                            term: Arc::new(term),
                            info,
                        });
                    }
                }
            }
        }
        by_size.push(level);
    }
    Ok(TermCatalog { by_size })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        let cat = enumerate_terms(5, Budget::default()).unwrap();
        assert_eq!(cat.of_size(2).len(), 1);
        assert_eq!(cat.of_size(3).len(), 2);
        let four: Vec<String> = cat.of_size(4).iter().map(|r| r.term.to_string()).collect();
        let mut sorted = four.clone();
        sorted.sort();
        assert_eq!(
            sorted,
            vec!["B1(B1(A))", "B1(B2(A))", "B2(B1(A))", "B2(B2(A))", "C1(A,A)", "C3(A,1,A)"]
        );
        assert_eq!(cat.of_size(5).len(), 22);
        assert_eq!(cat.len(), 31);
    }

    #[test]
    fn size_below_two_is_rejected() {
        assert!(matches!(
            enumerate_terms(1, Budget::default()),
            Err(GrammarError::SizeTooSmall(1))
        ));
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            enumerate_terms(10, Budget::new(1000)),
            Err(GrammarError::Budget(_))
        ));
    }
}
