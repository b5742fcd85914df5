//! The incremental growth process, used as an independent oracle for the
//! grammar.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{FishComplex, SideKind, SideRef};
use crate::{Budget, BudgetExceeded};

fn with_new_cell(c: &FishComplex, glue_to: &[(SideKind, SideRef)]) -> FishComplex {
    let mut glue = c.raw().to_vec();
    let n = glue.len();
    let mut fresh = [None; 4];
    for &(k, t) in glue_to {
        fresh[k.index()] = Some(t);
        glue[t.cell][t.side.index()] = Some(SideRef::new(n, k));
    }
    glue.push(fresh);
    FishComplex::from_raw(glue, c.head())
}

/// Every complex obtained by attaching one cell with one of the three
/// growth rules. Duplicates up to isomorphism are not removed.
pub fn grow_all(c: &FishComplex) -> Vec<FishComplex> {
    let mut out = Vec::new();
    for a in 0..c.cell_count() {
        let ur = SideRef::new(a, SideKind::UR);
        if c.is_free(ur) {
            out.push(with_new_cell(c, &[(SideKind::LL, ur)]));
        }
        let lr = SideRef::new(a, SideKind::LR);
        if c.is_free(lr) {
            out.push(with_new_cell(c, &[(SideKind::UL, lr)]));
        }
        // Rule 3: fill the notch between the cells on a's two right sides.
        if let (Some(b), Some(cc)) = (c.partner(ur), c.partner(lr)) {
            let b_lr = SideRef::new(b.cell, SideKind::LR);
            let c_ur = SideRef::new(cc.cell, SideKind::UR);
            if c.is_free(b_lr) && c.is_free(c_ur) {
                out.push(with_new_cell(
                    c,
                    &[(SideKind::UL, b_lr), (SideKind::LL, c_ur)],
                ));
            }
        }
    }
    out
}

/// All fighting fish of area at most `max_area`, keyed by canonical code,
/// grouped by area (index 0 holds area 1).
pub fn enumerate_by_area(
    max_area: usize,
    budget: Budget,
) -> Result<Vec<BTreeMap<String, FishComplex>>, BudgetExceeded> {
    let mut levels: Vec<BTreeMap<String, FishComplex>> = Vec::new();
    if max_area == 0 {
        return Ok(levels);
    }
    let single = FishComplex::single_cell();
    levels.push(BTreeMap::from([(single.canonical_code(), single)]));
    for area in 2..=max_area {
        let frontier = levels.last().expect("nonempty");
        let needed = 4 * area as u64 * frontier.len() as u64 * 3 * area as u64;
        budget.check(needed)?;
        let grown: Vec<(String, FishComplex)> = frontier
            .par_iter()
            .flat_map_iter(|(_, c)| grow_all(c).into_iter())
            .map(|g| {
                let g = g.canonical_form();
                (g.canonical_code(), g)
            })
            .collect();
        levels.push(grown.into_iter().collect());
    }
    Ok(levels)
}

/// Polyomino / planarity census of a set of fish, per area.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleCensus {
    /// `(area, total, non_polyomino, non_planar)` rows.
    pub rows: Vec<(usize, usize, usize, usize)>,
}

impl OracleCensus {
    pub fn of_levels(levels: &[BTreeMap<String, FishComplex>]) -> Self {
        let rows = levels
            .iter()
            .enumerate()
            .map(|(i, lvl)| {
                let mut non_poly = 0;
                let mut non_planar = 0;
                for c in lvl.values() {
                    let cl = c.classify().expect("oracle fish project consistently");
                    if !cl.polyomino {
                        non_poly += 1;
                    }
                    if !cl.planar {
                        non_planar += 1;
                    }
                }
                (i + 1, lvl.len(), non_poly, non_planar)
            })
            .collect();
        OracleCensus { rows }
    }

    pub fn non_polyomino_at(&self, area: usize) -> usize {
        self.rows.iter().find(|r| r.0 == area).map_or(0, |r| r.2)
    }

    pub fn non_planar_at(&self, area: usize) -> usize {
        self.rows.iter().find(|r| r.0 == area).map_or(0, |r| r.3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_has_two_extensions() {
        let g = grow_all(&FishComplex::single_cell());
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn two_cell_fish_extensions_count_free_right_sides() {
        for c in grow_all(&FishComplex::single_cell()) {
            let free_right = (0..c.cell_count())
                .flat_map(|i| [SideKind::UR, SideKind::LR].map(|k| SideRef::new(i, k)))
                .filter(|&s| c.is_free(s))
                .count();
            assert_eq!(grow_all(&c).len(), free_right);
        }
    }

    #[test]
    fn rule_three_fills_the_notch() {
        let v = FishComplex::from_gluings(
            3,
            &[
                (SideRef::new(0, SideKind::UR), SideRef::new(1, SideKind::LL)),
                (SideRef::new(0, SideKind::LR), SideRef::new(2, SideKind::UL)),
            ],
        )
        .unwrap();
        let grown = grow_all(&v);
        let filled = grown.iter().find(|g| {
            let last = g.cell_count() - 1;
            !g.is_free(SideRef::new(last, SideKind::UL)) && !g.is_free(SideRef::new(last, SideKind::LL))
        });
        let filled = filled.expect("rule 3 applies");
        filled.validate().unwrap();
        let cl = filled.classify().unwrap();
        assert!(cl.polyomino);
        let pos = filled.project().unwrap().positions;
        let mut sorted = pos.clone();
        sorted.sort();
        assert_eq!(sorted, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn area_census() {
        let levels = enumerate_by_area(5, Budget::default()).unwrap();
        assert_eq!(levels[0].len(), 1);
        for lvl in &levels {
            for c in lvl.values() {
                c.validate().unwrap();
            }
        }
        let census = OracleCensus::of_levels(&levels);
        assert_eq!(census.non_polyomino_at(3), 0);
        assert_eq!(census.non_polyomino_at(4), 2);
        assert_eq!(census.non_planar_at(4), 0);
        assert_eq!(census.non_planar_at(5), 1);
        for c in levels[3].values() {
            if !c.classify().unwrap().polyomino {
                assert_eq!(c.stats().unwrap().size, 5);
            }
        }
        for c in levels[4].values() {
            if !c.classify().unwrap().planar {
                assert_eq!(c.stats().unwrap().size, 6);
            }
        }
    }

    #[test]
    fn budget_guard_trips() {
        let r = enumerate_by_area(6, Budget::new(10));
        assert!(r.is_err());
    }
}
