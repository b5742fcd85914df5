use std::collections::VecDeque;

use thiserror::Error;

use super::{FishComplex, SideKind, SideRef, StructureError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeParseError {
    #[error("cell {cell}: expected 4 sides, found {found}")]
    SideCount { cell: usize, found: usize },
    #[error("cell {cell}: bad side token {token:?}")]
    BadToken { cell: usize, token: String },
    #[error("gluing data is not symmetric at cell {0}")]
    Asymmetric(usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl FishComplex {
    /// Breadth-first numbering from the head, visiting sides in the order
    /// UL, LL, LR, UR. Returns `order[i]` = original index of the i-th
    /// discovered cell.
    fn canonical_order(&self) -> Vec<usize> {
        let n = self.cell_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.head()]);
        seen[self.head()] = true;
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for k in SideKind::ALL {
                if let Some(t) = self.partner(SideRef::new(c, k)) {
                    if !seen[t.cell] {
                        seen[t.cell] = true;
                        queue.push_back(t.cell);
                    }
                }
            }
        }
        order
    }

    /// The same complex renumbered in canonical order (head is cell 0).
    pub fn canonical_form(&self) -> FishComplex {
        let order = self.canonical_order();
        let mut rank = vec![0; order.len()];
        for (i, &c) in order.iter().enumerate() {
            rank[c] = i;
        }
        let glue = order
            .iter()
            .map(|&c| {
                let mut sides = [None; 4];
                for k in SideKind::ALL {
                    if let Some(t) = self.partner(SideRef::new(c, k)) {
                        sides[k.index()] = Some(SideRef::new(rank[t.cell], t.side));
                    }
                }
                sides
            })
            .collect();
        FishComplex::from_raw(glue, 0)
    }

    /// Isomorphism-invariant code: cells in canonical order separated by
    /// `/`, each listing its UL, LL, LR, UR sides as `F` (free) or the
    /// canonical index of the glued neighbour.
    pub fn canonical_code(&self) -> String {
        let order = self.canonical_order();
        let mut rank = vec![0; order.len()];
        for (i, &c) in order.iter().enumerate() {
            rank[c] = i;
        }
        let mut out = String::with_capacity(order.len() * 10);
        for (i, &c) in order.iter().enumerate() {
            if i > 0 {
                out.push('/');
            }
            for k in SideKind::ALL {
                if k != SideKind::UL {
                    out.push(',');
                }
                match self.partner(SideRef::new(c, k)) {
                    None => out.push('F'),
                    Some(t) => out.push_str(&rank[t.cell].to_string()),
                }
            }
        }
        out
    }

    /// Inverse of [`FishComplex::canonical_code`].
    pub fn from_canonical_code(code: &str) -> Result<FishComplex, CodeParseError> {
        let mut neighbours: Vec<[Option<usize>; 4]> = Vec::new();
        for (cell, part) in code.trim().split('/').enumerate() {
            let tokens: Vec<&str> = part.split(',').map(str::trim).collect();
            if tokens.len() != 4 {
                return Err(CodeParseError::SideCount {
                    cell,
                    found: tokens.len(),
                });
            }
            let mut sides = [None; 4];
            for (k, tok) in tokens.iter().enumerate() {
                if *tok != "F" {
                    let v = tok.parse::<usize>().map_err(|_| CodeParseError::BadToken {
                        cell,
                        token: tok.to_string(),
                    })?;
                    sides[k] = Some(v);
                }
            }
            neighbours.push(sides);
        }
        let n = neighbours.len();
        let mut gluings = Vec::new();
        for (c, sides) in neighbours.iter().enumerate() {
            for k in [SideKind::UR, SideKind::LR] {
                if let Some(d) = sides[k.index()] {
                    if d >= n || neighbours[d][k.partner().index()] != Some(c) {
                        return Err(CodeParseError::Asymmetric(c));
                    }
                    gluings.push((SideRef::new(c, k), SideRef::new(d, k.partner())));
                }
            }
            for k in [SideKind::UL, SideKind::LL] {
                if let Some(d) = sides[k.index()] {
                    if d >= n || neighbours[d][k.partner().index()] != Some(c) {
                        return Err(CodeParseError::Asymmetric(c));
                    }
                }
            }
        }
        Ok(FishComplex::from_gluings(n, &gluings)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SideKind::*;

    #[test]
    fn single_cell_code() {
        assert_eq!(FishComplex::single_cell().canonical_code(), "F,F,F,F");
    }

    #[test]
    fn code_ignores_labels() {
        let a = FishComplex::from_gluings(
            3,
            &[
                (SideRef::new(0, UR), SideRef::new(1, LL)),
                (SideRef::new(0, LR), SideRef::new(2, UL)),
            ],
        )
        .unwrap();
        let b = FishComplex::from_gluings(
            3,
            &[
                (SideRef::new(2, UR), SideRef::new(0, LL)),
                (SideRef::new(2, LR), SideRef::new(1, UL)),
            ],
        )
        .unwrap();
        assert_eq!(a.canonical_code(), b.canonical_code());
        assert_eq!(a.canonical_code(), "F,F,1,2/0,F,F,F/F,0,F,F");
        let back = FishComplex::from_canonical_code(&a.canonical_code()).unwrap();
        assert_eq!(back, a.canonical_form());
    }

    #[test]
    fn bad_codes() {
        assert!(matches!(
            FishComplex::from_canonical_code("F,F,F"),
            Err(CodeParseError::SideCount { .. })
        ));
        assert!(matches!(
            FishComplex::from_canonical_code("F,F,x,F"),
            Err(CodeParseError::BadToken { .. })
        ));
        assert!(matches!(
            FishComplex::from_canonical_code("F,F,F,1/F,F,F,F"),
            Err(CodeParseError::Asymmetric(0))
        ));
    }
}
