use super::{FishTerm, GrammarError};
use crate::surface::{FishComplex, SideKind, SideRef};

/// Fin position (1-based) of `side` in `c`.
fn fin_position(c: &FishComplex, side: SideRef) -> Result<(usize, usize), GrammarError> {
    let fin = c.fin_sides()?;
    fin.iter()
        .position(|&s| s == side)
        .map(|i| (i + 1, fin.len()))
        .ok_or_else(|| GrammarError::NoCase(format!("side {side} is not on the fin")))
}

fn index_in(cells: &[usize], c: usize) -> usize {
    cells.iter().position(|&x| x == c).expect("cell in component")
}

/// Inverse of [`build`](super::build): recovers the unique term of a fish.
///
/// Fin cells are scanned from the nose; the head and every following fin
/// cell whose upper-left side is not a cut edge are removable. Either all
/// fin cells are removable (`B2`), or the first non-removable one is the
/// head of the second operand hanging from its upper-left side.
pub fn decompose(c: &FishComplex) -> Result<FishTerm, GrammarError> {
    c.validate()?;
    decompose_valid(c)
}

fn decompose_valid(c: &FishComplex) -> Result<FishTerm, GrammarError> {
    let n = c.cell_count();
    if n == 1 {
        return Ok(FishTerm::A);
    }
    let fin = c.fin_sides()?;
    let fin_cells: Vec<usize> = fin
        .iter()
        .filter(|s| s.side == SideKind::LL)
        .map(|s| s.cell)
        .collect();
    let mut removable = vec![fin_cells[0]];
    let mut blocker = None;
    for &fc in &fin_cells[1..] {
        if c.is_cut_edge(SideRef::new(fc, SideKind::UL)) {
            blocker = Some(fc);
            break;
        }
        removable.push(fc);
    }
    let mut is_removable = vec![false; n];
    for &r in &removable {
        is_removable[r] = true;
    }

    let Some(second_head) = blocker else {
        let rest: Vec<usize> = (0..n).filter(|&i| !is_removable[i]).collect();
        if rest.is_empty() {
            return Err(GrammarError::NoCase("every cell is removable".into()));
        }
        let p1 = c.induced(&rest)?;
        return Ok(FishTerm::b2(decompose_valid(&p1)?));
    };

    let cut = SideRef::new(second_head, SideKind::UL);
    let anchor = c.partner(cut).expect("fin cells other than the head have a glued UL");
    let mut second_cells = c.component_without(second_head, Some(cut));
    second_cells.sort_unstable();
    let mut in_second = vec![false; n];
    for &x in &second_cells {
        in_second[x] = true;
    }
    let first_cells: Vec<usize> = (0..n)
        .filter(|&i| !in_second[i] && !is_removable[i])
        .collect();
    let p2 = c.induced(&second_cells)?;
    let t2 = decompose_valid(&p2)?;

    if first_cells.is_empty() {
        if removable.len() == 1 && removable[0] == anchor.cell {
            return Ok(FishTerm::b1(t2));
        }
        return Err(GrammarError::NoCase(
            "empty first operand with more than one removable cell".into(),
        ));
    }

    let p1 = c.induced(&first_cells)?;
    let t1 = decompose_valid(&p1)?;
    if is_removable[anchor.cell] {
        // The second fish hangs from a strip cell: that cell's UR is glued
        // to the chosen L edge of the first fish's fin.
        let ell = c
            .partner(SideRef::new(anchor.cell, SideKind::UR))
            .ok_or_else(|| GrammarError::NoCase("strip cell with free UR".into()))?;
        let local = SideRef::new(index_in(&first_cells, ell.cell), ell.side);
        let (p, _) = fin_position(&p1, local)?;
        Ok(FishTerm::c3(t1, p, t2))
    } else {
        let local = SideRef::new(index_in(&first_cells, anchor.cell), anchor.side);
        let (p, len) = fin_position(&p1, local)?;
        if p == len {
            Ok(FishTerm::c1(t1, t2))
        } else {
            Ok(FishTerm::c2(t1, p, t2))
        }
    }
}
