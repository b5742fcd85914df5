//! Fighting fish as combinatorial surfaces of glued square cells.
//!
//! A [`FishComplex`] is a set of cells, each with four sides, together with a
//! fixed-point-free partial involution (the gluing) pairing a lower-left side
//! with an upper-right side, or an upper-left side with a lower-right side.
//! Everything else (boundary, fin, statistics, plane projection) is derived
//! from that data by walking the combinatorial map.

mod code;
mod growth;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use code::CodeParseError;
pub use growth::{enumerate_by_area, grow_all, OracleCensus};

/// One of the four sides of a cell.
///
/// The discriminants follow the order used by canonical codes
/// (UL, LL, LR, UR), which is also the counterclockwise order around a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SideKind {
    UL = 0,
    LL = 1,
    LR = 2,
    UR = 3,
}

impl SideKind {
    pub const ALL: [SideKind; 4] = [SideKind::UL, SideKind::LL, SideKind::LR, SideKind::UR];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> SideKind {
        Self::ALL[i % 4]
    }

    /// Next side counterclockwise: LL -> LR -> UR -> UL -> LL.
    #[inline]
    pub fn ccw_next(self) -> SideKind {
        Self::from_index(self.index() + 1)
    }

    /// The only kind this side may be glued to.
    #[inline]
    pub fn partner(self) -> SideKind {
        Self::from_index(self.index() + 2)
    }

    pub fn is_lower(self) -> bool {
        matches!(self, SideKind::LL | SideKind::LR)
    }

    /// Offset in diagonal coordinates of the cell glued across this side.
    pub fn offset(self) -> (i64, i64) {
        match self {
            SideKind::UR => (1, 0),
            SideKind::LR => (0, 1),
            SideKind::LL => (-1, 0),
            SideKind::UL => (0, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SideKind::UL => "UL",
            SideKind::LL => "LL",
            SideKind::LR => "LR",
            SideKind::UR => "UR",
        }
    }

    pub fn parse(s: &str) -> Option<SideKind> {
        match s {
            "UL" => Some(SideKind::UL),
            "LL" => Some(SideKind::LL),
            "LR" => Some(SideKind::LR),
            "UR" => Some(SideKind::UR),
            _ => None,
        }
    }
}

impl fmt::Display for SideKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A side of a particular cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideRef {
    pub cell: usize,
    pub side: SideKind,
}

impl SideRef {
    pub fn new(cell: usize, side: SideKind) -> Self {
        SideRef { cell, side }
    }
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.cell, self.side)
    }
}

/// A letter of the fin word: `L` for a free lower-left side, `R` for a free
/// lower-right side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    L,
    R,
}

/// Word over {L, R} read along the fin from the nose.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinWord(pub Vec<Letter>);

impl FinWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn parse(s: &str) -> Option<FinWord> {
        s.chars()
            .map(|c| match c {
                'L' => Some(Letter::L),
                'R' => Some(Letter::R),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(FinWord)
    }
}

impl fmt::Display for FinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::L => "L",
                Letter::R => "R",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("complex has no cells")]
    Empty,
    #[error("side {0} refers to a missing cell")]
    DanglingSide(SideRef),
    #[error("gluing {0} <-> {1} pairs incompatible side kinds")]
    KindMismatch(SideRef, SideRef),
    #[error("gluing is not an involution at {0}")]
    NotInvolution(SideRef),
    #[error("side {0} is glued to itself")]
    SelfGlued(SideRef),
    #[error("cells are not connected")]
    Disconnected,
    #[error("expected exactly one head cell, found {0}")]
    HeadCount(usize),
    #[error("head index {given} does not match the unique head {actual}")]
    WrongHead { given: usize, actual: usize },
    #[error("{lower} free lower sides but {upper} free upper sides")]
    UnbalancedBoundary { lower: usize, upper: usize },
    #[error("plane projection is inconsistent at cell {0}")]
    InconsistentProjection(usize),
    #[error("boundary walk did not close up at {0}")]
    OpenBoundary(SideRef),
    #[error("fin walk met the upper side {0}")]
    UpperSideOnFin(SideRef),
    #[error("no final cell reachable along the fin")]
    NoTail,
}

/// Counting statistics of a fish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FishStats {
    pub size: usize,
    pub lsize: usize,
    pub rsize: usize,
    pub tails: usize,
    pub fin: usize,
    pub fin_word: String,
    pub area: usize,
    pub branch_points: usize,
    pub lower_flats: usize,
}

/// Diagonal coordinates of every cell, indexed by cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePlacement {
    pub positions: Vec<(i64, i64)>,
}

impl PlanePlacement {
    /// Tilted plane coordinates `(p + q, p - q)` of a cell.
    pub fn tilted(&self, cell: usize) -> (i64, i64) {
        let (p, q) = self.positions[cell];
        (p + q, p - q)
    }

    /// Number of cells at each occupied position.
    pub fn multiplicities(&self) -> BTreeMap<(i64, i64), usize> {
        let mut m = BTreeMap::new();
        for &pos in &self.positions {
            *m.entry(pos).or_insert(0) += 1;
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub planar: bool,
    pub polyomino: bool,
}

/// A fighting fish realized as glued cells. Immutable once constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FishComplex {
    glue: Vec<[Option<SideRef>; 4]>,
    head: usize,
}

impl FishComplex {
    /// The single-cell fish.
    pub fn single_cell() -> Self {
        FishComplex {
            glue: vec![[None; 4]],
            head: 0,
        }
    }

    /// Builds a complex from a list of gluings and checks every structural
    /// invariant. The head is located automatically.
    pub fn from_gluings(
        cells: usize,
        gluings: &[(SideRef, SideRef)],
    ) -> Result<Self, StructureError> {
        if cells == 0 {
            return Err(StructureError::Empty);
        }
        let mut glue = vec![[None; 4]; cells];
        for &(x, y) in gluings {
            for s in [x, y] {
                if s.cell >= cells {
                    return Err(StructureError::DanglingSide(s));
                }
            }
            if x == y {
                return Err(StructureError::SelfGlued(x));
            }
            if x.side.partner() != y.side {
                return Err(StructureError::KindMismatch(x, y));
            }
            for (s, t) in [(x, y), (y, x)] {
                if glue[s.cell][s.side.index()].is_some() {
                    return Err(StructureError::NotInvolution(s));
                }
                glue[s.cell][s.side.index()] = Some(t);
            }
        }
        let head = find_head(&glue).unwrap_or(0);
        let c = FishComplex { glue, head };
        c.validate()?;
        Ok(c)
    }

    /// Wraps raw gluing data without validation. Callers are builders that
    /// maintain the invariants themselves; `validate` can be run afterwards.
    pub(crate) fn from_raw(glue: Vec<[Option<SideRef>; 4]>, head: usize) -> Self {
        FishComplex { glue, head }
    }

    pub(crate) fn raw(&self) -> &[[Option<SideRef>; 4]] {
        &self.glue
    }

    /// Checks every structural invariant of a fish complex.
    pub fn validate(&self) -> Result<(), StructureError> {
        let n = self.glue.len();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        for (c, sides) in self.glue.iter().enumerate() {
            for k in SideKind::ALL {
                let here = SideRef::new(c, k);
                if let Some(t) = sides[k.index()] {
                    if t.cell >= n {
                        return Err(StructureError::DanglingSide(t));
                    }
                    if t == here {
                        return Err(StructureError::SelfGlued(here));
                    }
                    if t.side != k.partner() {
                        return Err(StructureError::KindMismatch(here, t));
                    }
                    if self.glue[t.cell][t.side.index()] != Some(here) {
                        return Err(StructureError::NotInvolution(here));
                    }
                }
            }
        }
        if !self.is_connected_without(None) {
            return Err(StructureError::Disconnected);
        }
        let head = find_head(&self.glue)?;
        if head != self.head {
            return Err(StructureError::WrongHead {
                given: self.head,
                actual: head,
            });
        }
        let (mut lower, mut upper) = (0, 0);
        for sides in &self.glue {
            for k in SideKind::ALL {
                if sides[k.index()].is_none() {
                    if k.is_lower() {
                        lower += 1;
                    } else {
                        upper += 1;
                    }
                }
            }
        }
        if lower != upper {
            return Err(StructureError::UnbalancedBoundary { lower, upper });
        }
        self.project()?;
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.glue.len()
    }

    pub fn head(&self) -> usize {
        self.head
    }

    /// The side glued to `s`, if any.
    #[inline]
    pub fn partner(&self, s: SideRef) -> Option<SideRef> {
        self.glue[s.cell][s.side.index()]
    }

    #[inline]
    pub fn is_free(&self, s: SideRef) -> bool {
        self.partner(s).is_none()
    }

    /// A final cell has both right sides free.
    pub fn is_final(&self, cell: usize) -> bool {
        self.glue[cell][SideKind::LR.index()].is_none()
            && self.glue[cell][SideKind::UR.index()].is_none()
    }

    /// All gluings, each listed once from its right side (UR or LR).
    pub fn gluings(&self) -> Vec<(SideRef, SideRef)> {
        let mut out = Vec::new();
        for (c, sides) in self.glue.iter().enumerate() {
            for k in [SideKind::UR, SideKind::LR] {
                if let Some(t) = sides[k.index()] {
                    out.push((SideRef::new(c, k), t));
                }
            }
        }
        out
    }

    /// Connectivity of the cell adjacency graph, optionally ignoring one
    /// gluing (given by either of its sides).
    pub(crate) fn is_connected_without(&self, cut: Option<SideRef>) -> bool {
        self.component_without(0, cut).len() == self.glue.len()
    }

    /// Cells reachable from `start` when the gluing at `cut` is ignored.
    pub(crate) fn component_without(&self, start: usize, cut: Option<SideRef>) -> Vec<usize> {
        let cut_pair = cut.map(|s| (s, self.partner(s)));
        let mut seen = vec![false; self.glue.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(c) = queue.pop_front() {
            out.push(c);
            for k in SideKind::ALL {
                let here = SideRef::new(c, k);
                if let Some((s, t)) = cut_pair {
                    if here == s || Some(here) == t {
                        continue;
                    }
                }
                if let Some(t) = self.glue[c][k.index()] {
                    if !seen[t.cell] {
                        seen[t.cell] = true;
                        queue.push_back(t.cell);
                    }
                }
            }
        }
        out
    }

    /// True if cutting the gluing at `s` disconnects the complex.
    pub fn is_cut_edge(&self, s: SideRef) -> bool {
        self.partner(s).is_some() && !self.is_connected_without(Some(s))
    }

    /// Boundary successor of a free side: rotate through glued corners.
    pub fn boundary_successor(&self, s: SideRef) -> Result<SideRef, StructureError> {
        let mut cand = SideRef::new(s.cell, s.side.ccw_next());
        // Each corner rotation visits a distinct (cell, side); more than
        // 4 * cells steps means the gluing is not a surface.
        for _ in 0..=4 * self.glue.len() {
            match self.partner(cand) {
                None => return Ok(cand),
                Some(p) => cand = SideRef::new(p.cell, p.side.ccw_next()),
            }
        }
        Err(StructureError::OpenBoundary(s))
    }

    /// The boundary cycle starting at the head's lower-left side.
    pub fn trace_boundary(&self) -> Result<Vec<SideRef>, StructureError> {
        let start = SideRef::new(self.head, SideKind::LL);
        if !self.is_free(start) {
            return Err(StructureError::HeadCount(0));
        }
        let free_total: usize = self
            .glue
            .iter()
            .map(|s| s.iter().filter(|x| x.is_none()).count())
            .sum();
        let mut out = vec![start];
        let mut cur = start;
        loop {
            let next = self.boundary_successor(cur)?;
            if next == start {
                break;
            }
            if out.len() >= free_total {
                return Err(StructureError::OpenBoundary(next));
            }
            out.push(next);
            cur = next;
        }
        Ok(out)
    }

    /// Fin sides from the nose to the lower-right side of the first final cell.
    pub fn fin_sides(&self) -> Result<Vec<SideRef>, StructureError> {
        let mut cur = SideRef::new(self.head, SideKind::LL);
        if !self.is_free(cur) {
            return Err(StructureError::HeadCount(0));
        }
        let mut out = Vec::new();
        for _ in 0..=4 * self.glue.len() {
            if !cur.side.is_lower() {
                return Err(StructureError::UpperSideOnFin(cur));
            }
            out.push(cur);
            if cur.side == SideKind::LR && self.is_final(cur.cell) {
                return Ok(out);
            }
            cur = self.boundary_successor(cur)?;
        }
        Err(StructureError::NoTail)
    }

    pub fn fin(&self) -> Result<(Vec<SideRef>, FinWord), StructureError> {
        let sides = self.fin_sides()?;
        let word = FinWord(
            sides
                .iter()
                .map(|s| {
                    if s.side == SideKind::LL {
                        Letter::L
                    } else {
                        Letter::R
                    }
                })
                .collect(),
        );
        Ok((sides, word))
    }

    pub fn stats(&self) -> Result<FishStats, StructureError> {
        let mut lsize = 0;
        let mut rsize = 0;
        let mut tails = 0;
        for (c, sides) in self.glue.iter().enumerate() {
            if sides[SideKind::LL.index()].is_none() {
                lsize += 1;
            }
            if sides[SideKind::LR.index()].is_none() {
                rsize += 1;
            }
            if self.is_final(c) {
                tails += 1;
            }
        }
        let (_, word) = self.fin()?;
        let size = lsize + rsize;
        Ok(FishStats {
            size,
            lsize,
            rsize,
            tails,
            fin: word.len(),
            fin_word: word.to_string(),
            area: self.glue.len(),
            branch_points: tails - 1,
            lower_flats: size - tails,
        })
    }

    /// Breadth-first placement of cells in diagonal coordinates.
    pub fn project(&self) -> Result<PlanePlacement, StructureError> {
        let n = self.glue.len();
        let mut pos: Vec<Option<(i64, i64)>> = vec![None; n];
        pos[self.head] = Some((0, 0));
        let mut queue = VecDeque::from([self.head]);
        while let Some(c) = queue.pop_front() {
            let (p, q) = pos[c].expect("queued cells are placed");
            for k in SideKind::ALL {
                if let Some(t) = self.glue[c][k.index()] {
                    let (dp, dq) = k.offset();
                    let want = (p + dp, q + dq);
                    match pos[t.cell] {
                        None => {
                            pos[t.cell] = Some(want);
                            queue.push_back(t.cell);
                        }
                        Some(have) if have != want => {
                            return Err(StructureError::InconsistentProjection(t.cell));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let positions = pos
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(StructureError::Disconnected)?;
        Ok(PlanePlacement { positions })
    }

    pub fn classify(&self) -> Result<Classification, StructureError> {
        let placement = self.project()?;
        let mut at: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (c, &p) in placement.positions.iter().enumerate() {
            if at.insert(p, c).is_some() {
                return Ok(Classification {
                    planar: false,
                    polyomino: false,
                });
            }
        }
        let mut polyomino = true;
        'cells: for (c, &(p, q)) in placement.positions.iter().enumerate() {
            for k in [SideKind::UR, SideKind::LR] {
                let (dp, dq) = k.offset();
                if let Some(&d) = at.get(&(p + dp, q + dq)) {
                    if self.partner(SideRef::new(c, k)) != Some(SideRef::new(d, k.partner())) {
                        polyomino = false;
                        break 'cells;
                    }
                }
            }
        }
        Ok(Classification {
            planar: true,
            polyomino,
        })
    }

    /// The subcomplex induced on `cells` (in the given order). Gluings to
    /// cells outside the set become free sides.
    pub fn induced(&self, cells: &[usize]) -> Result<FishComplex, StructureError> {
        if cells.is_empty() {
            return Err(StructureError::Empty);
        }
        let mut index = vec![usize::MAX; self.glue.len()];
        for (i, &c) in cells.iter().enumerate() {
            index[c] = i;
        }
        let glue: Vec<[Option<SideRef>; 4]> = cells
            .iter()
            .map(|&c| {
                let mut sides = [None; 4];
                for k in SideKind::ALL {
                    if let Some(t) = self.glue[c][k.index()] {
                        if index[t.cell] != usize::MAX {
                            sides[k.index()] = Some(SideRef::new(index[t.cell], t.side));
                        }
                    }
                }
                sides
            })
            .collect();
        let head = find_head(&glue)?;
        let sub = FishComplex { glue, head };
        sub.validate()?;
        Ok(sub)
    }
}

fn find_head(glue: &[[Option<SideRef>; 4]]) -> Result<usize, StructureError> {
    let heads: Vec<usize> = glue
        .iter()
        .enumerate()
        .filter(|(_, s)| s[SideKind::UL.index()].is_none() && s[SideKind::LL.index()].is_none())
        .map(|(c, _)| c)
        .collect();
    if heads.len() != 1 {
        return Err(StructureError::HeadCount(heads.len()));
    }
    Ok(heads[0])
}

/// Serialized form: `{"cells": N, "head": 0, "gluings": [[c1, "UR", c2, "LL"], ...]}`
/// in canonical numbering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FishJson {
    pub cells: usize,
    pub head: usize,
    pub gluings: Vec<(usize, SideKind, usize, SideKind)>,
}

impl FishComplex {
    pub fn to_json(&self) -> FishJson {
        let c = self.canonical_form();
        FishJson {
            cells: c.cell_count(),
            head: c.head,
            gluings: c
                .gluings()
                .into_iter()
                .map(|(s, t)| (s.cell, s.side, t.cell, t.side))
                .collect(),
        }
    }

    pub fn from_json(j: &FishJson) -> Result<FishComplex, StructureError> {
        let gluings: Vec<_> = j
            .gluings
            .iter()
            .map(|&(c1, k1, c2, k2)| (SideRef::new(c1, k1), SideRef::new(c2, k2)))
            .collect();
        let c = FishComplex::from_gluings(j.cells, &gluings)?;
        if c.head != j.head {
            return Err(StructureError::WrongHead {
                given: j.head,
                actual: c.head,
            });
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c1: usize, k1: SideKind, c2: usize, k2: SideKind) -> (SideRef, SideRef) {
        (SideRef::new(c1, k1), SideRef::new(c2, k2))
    }

    use SideKind::*;

    /// Head 0, a=1 on head.UR, b=2 on head.LR.
    fn vee() -> Vec<(SideRef, SideRef)> {
        vec![g(0, UR, 1, LL), g(0, LR, 2, UL)]
    }

    #[test]
    fn side_order_and_pairing() {
        assert_eq!(LL.ccw_next(), LR);
        assert_eq!(LR.ccw_next(), UR);
        assert_eq!(UR.ccw_next(), UL);
        assert_eq!(UL.ccw_next(), LL);
        assert_eq!(LL.partner(), UR);
        assert_eq!(UL.partner(), LR);
    }

    #[test]
    fn single_cell_boundary_and_stats() {
        let c = FishComplex::single_cell();
        c.validate().unwrap();
        let b: Vec<_> = c.trace_boundary().unwrap().iter().map(|s| s.side).collect();
        assert_eq!(b, vec![LL, LR, UR, UL]);
        let (_, w) = c.fin().unwrap();
        assert_eq!(w.to_string(), "LR");
        let s = c.stats().unwrap();
        assert_eq!((s.size, s.lsize, s.rsize, s.tails, s.fin, s.area), (2, 1, 1, 1, 2, 1));
        assert_eq!(c.project().unwrap().positions, vec![(0, 0)]);
        assert_eq!(
            c.classify().unwrap(),
            Classification {
                planar: true,
                polyomino: true
            }
        );
    }

    #[test]
    fn b1_projection_places_old_cell_below_right() {
        // new head 1 glued by its LR to the old cell's UL.
        let c = FishComplex::from_gluings(2, &[g(1, LR, 0, UL)]).unwrap();
        assert_eq!(c.head(), 1);
        let p = c.project().unwrap();
        assert_eq!(p.positions[1], (0, 0));
        assert_eq!(p.positions[0], (0, 1));
        let b = c.trace_boundary().unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(&b[..3], &[SideRef::new(1, LL), SideRef::new(0, LL), SideRef::new(0, LR)]);
    }

    #[test]
    fn area_four_non_polyominoes() {
        // c on a.LR and d on b.UR respectively.
        let mut x = vee();
        x.push(g(1, LR, 3, UL));
        let c = FishComplex::from_gluings(4, &x).unwrap();
        assert_eq!(c.stats().unwrap().size, 5);
        assert_eq!(
            c.classify().unwrap(),
            Classification {
                planar: true,
                polyomino: false
            }
        );
        let mut y = vee();
        y.push(g(2, UR, 3, LL));
        let d = FishComplex::from_gluings(4, &y).unwrap();
        assert_eq!(
            d.classify().unwrap(),
            Classification {
                planar: true,
                polyomino: false
            }
        );
        assert_ne!(c.canonical_code(), d.canonical_code());
    }

    #[test]
    fn area_five_fish_is_not_planar() {
        let mut x = vee();
        x.push(g(1, LR, 3, UL));
        x.push(g(2, UR, 4, LL));
        let c = FishComplex::from_gluings(5, &x).unwrap();
        let s = c.stats().unwrap();
        assert_eq!((s.size, s.area), (6, 5));
        let p = c.project().unwrap();
        assert_eq!(p.positions[3], p.positions[4]);
        assert!(!c.classify().unwrap().planar);
        assert_eq!(p.multiplicities().values().filter(|&&m| m == 2).count(), 1);
    }

    #[test]
    fn filled_notch_is_a_polyomino() {
        let mut x = vee();
        x.push(g(1, LR, 3, UL));
        x.push(g(2, UR, 3, LL));
        let c = FishComplex::from_gluings(4, &x).unwrap();
        assert_eq!(
            c.classify().unwrap(),
            Classification {
                planar: true,
                polyomino: true
            }
        );
        let s = c.stats().unwrap();
        assert_eq!((s.size, s.tails, s.fin), (4, 1, 4));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(FishComplex::from_gluings(0, &[]), Err(StructureError::Empty));
        assert!(matches!(
            FishComplex::from_gluings(2, &[g(0, UR, 1, UL)]),
            Err(StructureError::KindMismatch(..))
        ));
        assert!(matches!(
            FishComplex::from_gluings(3, &[g(0, UR, 1, LL), g(0, UR, 2, LL)]),
            Err(StructureError::NotInvolution(..))
        ));
        assert_eq!(
            FishComplex::from_gluings(2, &[]),
            Err(StructureError::Disconnected)
        );
        assert!(matches!(
            FishComplex::from_gluings(2, &[g(0, UR, 0, LL)]),
            Err(StructureError::Disconnected)
        ));
    }

    #[test]
    fn inconsistent_projection_is_rejected() {
        // Cell 1 glued to cell 0 across both UR and LR.
        let r = FishComplex::from_gluings(2, &[g(0, UR, 1, LL), g(0, LR, 1, UL)]);
        assert!(r.is_err());
    }

    #[test]
    fn cut_edges() {
        let c = FishComplex::from_gluings(3, &vee()).unwrap();
        assert!(c.is_cut_edge(SideRef::new(0, UR)));
        assert!(!c.is_cut_edge(SideRef::new(0, UL)));
    }

    #[test]
    fn json_roundtrip() {
        let mut x = vee();
        x.push(g(1, LR, 3, UL));
        let c = FishComplex::from_gluings(4, &x).unwrap();
        let j = c.to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with("{\"cells\":4,\"head\":0,\"gluings\":[[0,\"UR\""));
        let back: FishJson = serde_json::from_str(&text).unwrap();
        let d = FishComplex::from_json(&back).unwrap();
        assert_eq!(c.canonical_code(), d.canonical_code());
    }
}
