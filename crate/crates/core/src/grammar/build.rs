use super::{FishTerm, GrammarError};
use crate::surface::{FishComplex, SideKind, SideRef};

type Glue = Vec<[Option<SideRef>; 4]>;

fn glue_pair(glue: &mut Glue, x: SideRef, y: SideRef) {
    debug_assert_eq!(x.side.partner(), y.side);
    debug_assert!(glue[x.cell][x.side.index()].is_none());
    debug_assert!(glue[y.cell][y.side.index()].is_none());
    glue[x.cell][x.side.index()] = Some(y);
    glue[y.cell][y.side.index()] = Some(x);
}

/// Hangs a new cell under every lower-left edge among the first `prefix`
/// fin edges. Consecutive strip cells are glued to each other; when an `R`
/// edge separates them, the later cell is glued to that edge instead.
/// Returns the first and last strip cells.
fn strip(glue: &mut Glue, fin: &[SideRef], prefix: usize) -> (usize, usize) {
    let mut first = None;
    let mut prev = None;
    for i in 0..prefix {
        if fin[i].side != SideKind::LL {
            continue;
        }
        let d = glue.len();
        glue.push([None; 4]);
        glue_pair(glue, SideRef::new(d, SideKind::UR), fin[i]);
        if let Some(pd) = prev {
            let before = fin[i - 1];
            let target = if before.side == SideKind::LL {
                SideRef::new(pd, SideKind::LR)
            } else {
                before
            };
            glue_pair(glue, SideRef::new(d, SideKind::UL), target);
        }
        first.get_or_insert(d);
        prev = Some(d);
    }
    (
        first.expect("fin starts with a lower-left edge"),
        prev.expect("fin starts with a lower-left edge"),
    )
}

/// Appends `second` and glues its head's upper-left side to `target`.
fn attach(glue: &mut Glue, second: &FishComplex, target: SideRef) {
    let offset = glue.len();
    for sides in second.raw() {
        glue.push(sides.map(|s| s.map(|t| SideRef::new(t.cell + offset, t.side))));
    }
    glue_pair(
        glue,
        SideRef::new(second.head() + offset, SideKind::UL),
        target,
    );
}

fn build_unchecked(term: &FishTerm) -> Result<FishComplex, GrammarError> {
    Ok(match term {
        FishTerm::A => FishComplex::single_cell(),
        FishTerm::B1(t) => {
            let p1 = build_unchecked(t)?;
            let mut glue = p1.raw().to_vec();
            let n = glue.len();
            glue.push([None; 4]);
            glue_pair(
                &mut glue,
                SideRef::new(n, SideKind::LR),
                SideRef::new(p1.head(), SideKind::UL),
            );
            FishComplex::from_raw(glue, n)
        }
        FishTerm::B2(t) => {
            let p1 = build_unchecked(t)?;
            let fin = p1.fin_sides()?;
            let mut glue = p1.raw().to_vec();
            let (head, _) = strip(&mut glue, &fin, fin.len());
            FishComplex::from_raw(glue, head)
        }
        FishTerm::C1(a, b) => {
            let p1 = build_unchecked(a)?;
            let p2 = build_unchecked(b)?;
            let fin = p1.fin_sides()?;
            let mut glue = p1.raw().to_vec();
            let (head, _) = strip(&mut glue, &fin, fin.len());
            attach(&mut glue, &p2, *fin.last().expect("nonempty fin"));
            FishComplex::from_raw(glue, head)
        }
        FishTerm::C2(a, p, b) | FishTerm::C3(a, p, b) => {
            let is_c2 = matches!(term, FishTerm::C2(..));
            let p1 = build_unchecked(a)?;
            let p2 = build_unchecked(b)?;
            let fin = p1.fin_sides()?;
            let p = *p;
            if p == 0 || p >= fin.len() {
                return Err(GrammarError::PositionOutOfRange {
                    position: p,
                    fin: fin.len(),
                });
            }
            let edge = fin[p - 1];
            let (want, op, letter) = if is_c2 {
                (SideKind::LR, "C2", 'R')
            } else {
                (SideKind::LL, "C3", 'L')
            };
            if edge.side != want {
                return Err(GrammarError::PositionKind {
                    op,
                    position: p,
                    expected: letter,
                });
            }
            let mut glue = p1.raw().to_vec();
            if is_c2 {
                let (head, _) = strip(&mut glue, &fin, p - 1);
                attach(&mut glue, &p2, edge);
                FishComplex::from_raw(glue, head)
            } else {
                let (head, last) = strip(&mut glue, &fin, p);
                attach(&mut glue, &p2, SideRef::new(last, SideKind::LR));
                FishComplex::from_raw(glue, head)
            }
        }
    })
}

/// Realizes a term as a glued-cell complex.
pub fn build(term: &FishTerm) -> Result<FishComplex, GrammarError> {
    let c = build_unchecked(term)?;
    c.validate()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::StatVector;

    fn stats(t: &FishTerm) -> (usize, usize, usize, usize, usize, usize, String) {
        let s = build(t).unwrap().stats().unwrap();
        (s.size, s.lsize, s.rsize, s.tails, s.fin, s.area, s.fin_word)
    }

    #[test]
    fn single_cell() {
        assert_eq!(build(&FishTerm::A).unwrap(), FishComplex::single_cell());
    }

    #[test]
    fn worked_examples() {
        let a = FishTerm::A;
        assert_eq!(
            stats(&FishTerm::c3(a.clone(), 1, a.clone())),
            (4, 2, 2, 2, 3, 3, "LLR".into())
        );
        assert_eq!(
            stats(&FishTerm::b2(FishTerm::c1(a.clone(), a.clone()))),
            (5, 2, 3, 1, 5, 5, "LRLRR".into())
        );
        let c2 = FishTerm::c2(FishTerm::b2(a.clone()), 2, a.clone());
        let s = stats(&c2);
        assert_eq!((s.0, s.3, s.5, s.6.as_str()), (5, 2, 4, "LRLR"));
    }

    #[test]
    fn c1_lower_boundary() {
        let c = build(&FishTerm::c1(FishTerm::A, FishTerm::A)).unwrap();
        let lower: Vec<_> = c
            .trace_boundary()
            .unwrap()
            .into_iter()
            .take_while(|s| s.side.is_lower())
            .collect();
        assert_eq!(lower.len(), 4);
        // new head's two lower sides, then both lower sides of the second fish.
        assert_eq!(lower[0].cell, c.head());
        assert_eq!(lower[1].cell, c.head());
        assert_eq!(lower[2].cell, lower[3].cell);
        assert_ne!(lower[2].cell, c.head());
    }

    #[test]
    fn strip_glues_across_right_edge() {
        // B2(C1(A,A)): the second strip cell sits on the R edge between the
        // two L edges of the fin.
        let c = build(&FishTerm::b2(FishTerm::c1(FishTerm::A, FishTerm::A))).unwrap();
        assert_eq!(c.cell_count(), 5);
        let glued_uls = (0..5)
            .filter(|&i| i != c.head() && !c.is_free(SideRef::new(i, SideKind::UL)))
            .count();
        assert!(glued_uls >= 2);
    }

    #[test]
    fn bad_positions() {
        let a = FishTerm::A;
        assert!(build(&FishTerm::c2(a.clone(), 1, a.clone())).is_err());
        assert!(build(&FishTerm::c3(a.clone(), 5, a.clone())).is_err());
    }

    #[test]
    fn predictions_match_realizations_small() {
        let a = FishTerm::A;
        for t in [
            FishTerm::b1(FishTerm::b2(a.clone())),
            FishTerm::b2(FishTerm::b1(a.clone())),
            FishTerm::c3(FishTerm::b1(a.clone()), 2, FishTerm::b2(a.clone())),
        ] {
            let info = t.info().unwrap();
            let s = build(&t).unwrap().stats().unwrap();
            assert_eq!(
                info.stats,
                StatVector {
                    size: s.size,
                    tails: s.tails,
                    rsize: s.rsize,
                    lsize: s.lsize,
                    fin: s.fin
                }
            );
            assert_eq!(info.fin_word.to_string(), s.fin_word);
            assert_eq!(info.area, s.area);
        }
    }
}
