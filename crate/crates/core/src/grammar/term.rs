use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::GrammarError;
use crate::surface::{FinWord, Letter};

/// A wasp-waist decomposition tree. Positions in `C2`/`C3` are 1-based
/// indices into the fin of the first operand's realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FishTerm {
    A,
    B1(Arc<FishTerm>),
    B2(Arc<FishTerm>),
    C1(Arc<FishTerm>, Arc<FishTerm>),
    C2(Arc<FishTerm>, usize, Arc<FishTerm>),
    C3(Arc<FishTerm>, usize, Arc<FishTerm>),
}

/// Exponent tuple of a fish, stored undecremented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StatVector {
    pub size: usize,
    pub tails: usize,
    pub rsize: usize,
    pub lsize: usize,
    pub fin: usize,
}

impl StatVector {
    pub const SINGLE_CELL: StatVector = StatVector {
        size: 2,
        tails: 1,
        rsize: 1,
        lsize: 1,
        fin: 2,
    };
}

/// Statistics of a term derived from the grammar alone, without building.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermInfo {
    pub stats: StatVector,
    pub fin_word: FinWord,
    pub area: usize,
}

impl FishTerm {
    pub fn b1(t: FishTerm) -> FishTerm {
        FishTerm::B1(Arc::new(t))
    }

    pub fn b2(t: FishTerm) -> FishTerm {
        FishTerm::B2(Arc::new(t))
    }

    pub fn c1(t1: FishTerm, t2: FishTerm) -> FishTerm {
        FishTerm::C1(Arc::new(t1), Arc::new(t2))
    }

    pub fn c2(t1: FishTerm, p: usize, t2: FishTerm) -> FishTerm {
        FishTerm::C2(Arc::new(t1), p, Arc::new(t2))
    }

    pub fn c3(t1: FishTerm, p: usize, t2: FishTerm) -> FishTerm {
        FishTerm::C3(Arc::new(t1), p, Arc::new(t2))
    }

    pub fn size(&self) -> usize {
        match self {
            FishTerm::A => 2,
            FishTerm::B1(t) | FishTerm::B2(t) => t.size() + 1,
            FishTerm::C1(a, b) | FishTerm::C2(a, _, b) | FishTerm::C3(a, _, b) => {
                a.size() + b.size()
            }
        }
    }

    /// Predicted statistics, fin word and area; fails if a position
    /// precondition is violated anywhere in the term.
    pub fn info(&self) -> Result<TermInfo, GrammarError> {
        Ok(match self {
            FishTerm::A => TermInfo {
                stats: StatVector::SINGLE_CELL,
                fin_word: FinWord(vec![Letter::L, Letter::R]),
                area: 1,
            },
            FishTerm::B1(t) => t.info()?.extend_b1(),
            FishTerm::B2(t) => t.info()?.extend_b2(),
            FishTerm::C1(a, b) => a.info()?.combine_c1(&b.info()?),
            FishTerm::C2(a, p, b) => a.info()?.combine_c23(*p, &b.info()?, Letter::R)?,
            FishTerm::C3(a, p, b) => a.info()?.combine_c23(*p, &b.info()?, Letter::L)?,
        })
    }

    pub fn predicted_stats(&self) -> Result<StatVector, GrammarError> {
        Ok(self.info()?.stats)
    }

    pub fn parse(s: &str) -> Result<FishTerm, TermParseError> {
        let mut p = Parser {
            s: s.as_bytes(),
            i: 0,
        };
        let t = p.term()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(TermParseError::Trailing(p.i));
        }
        Ok(t)
    }
}

impl TermInfo {
    pub(crate) fn extend_b1(&self) -> TermInfo {
        let mut w = Vec::with_capacity(self.fin_word.len() + 1);
        w.push(Letter::L);
        w.extend_from_slice(self.fin_word.letters());
        TermInfo {
            stats: StatVector {
                size: self.stats.size + 1,
                lsize: self.stats.lsize + 1,
                fin: self.stats.fin + 1,
                ..self.stats
            },
            fin_word: FinWord(w),
            area: self.area + 1,
        }
    }

    pub(crate) fn extend_b2(&self) -> TermInfo {
        let letters = self.fin_word.letters();
        let last_l = letters
            .iter()
            .rposition(|&l| l == Letter::L)
            .expect("fin words start with L");
        let mut w = letters.to_vec();
        w.insert(last_l + 1, Letter::R);
        TermInfo {
            stats: StatVector {
                size: self.stats.size + 1,
                rsize: self.stats.rsize + 1,
                fin: self.stats.fin + 1,
                ..self.stats
            },
            fin_word: FinWord(w),
            area: self.area + self.fin_word.count(Letter::L),
        }
    }

    pub(crate) fn combine_c1(&self, second: &TermInfo) -> TermInfo {
        let mut w = self.fin_word.0.clone();
        w.extend_from_slice(second.fin_word.letters());
        TermInfo {
            stats: StatVector {
                size: self.stats.size + second.stats.size,
                tails: self.stats.tails + second.stats.tails - 1,
                rsize: self.stats.rsize + second.stats.rsize,
                lsize: self.stats.lsize + second.stats.lsize,
                fin: self.stats.fin + second.stats.fin,
            },
            fin_word: FinWord(w),
            area: self.area + second.area + self.fin_word.count(Letter::L),
        }
    }

    /// `C2` (edge `R`) or `C3` (edge `L`) at 1-based fin position `p`.
    pub(crate) fn combine_c23(
        &self,
        p: usize,
        second: &TermInfo,
        expected: Letter,
    ) -> Result<TermInfo, GrammarError> {
        let f1 = self.fin_word.len();
        if p == 0 || p >= f1 {
            return Err(GrammarError::PositionOutOfRange {
                position: p,
                fin: f1,
            });
        }
        let letters = self.fin_word.letters();
        if letters[p - 1] != expected {
            return Err(GrammarError::PositionKind {
                op: if expected == Letter::R { "C2" } else { "C3" },
                position: p,
                expected: if expected == Letter::R { 'R' } else { 'L' },
            });
        }
        let prefix = &letters[..p];
        let mut w = prefix.to_vec();
        w.extend_from_slice(second.fin_word.letters());
        let strip_cells = prefix.iter().filter(|&&l| l == Letter::L).count();
        Ok(TermInfo {
            stats: StatVector {
                size: self.stats.size + second.stats.size,
                tails: self.stats.tails + second.stats.tails,
                rsize: self.stats.rsize + second.stats.rsize,
                lsize: self.stats.lsize + second.stats.lsize,
                fin: p + second.stats.fin,
            },
            fin_word: FinWord(w),
            area: self.area + second.area + strip_cells,
        })
    }
}

impl fmt::Display for FishTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FishTerm::A => f.write_str("A"),
            FishTerm::B1(t) => write!(f, "B1({t})"),
            FishTerm::B2(t) => write!(f, "B2({t})"),
            FishTerm::C1(a, b) => write!(f, "C1({a},{b})"),
            FishTerm::C2(a, p, b) => write!(f, "C2({a},{p},{b})"),
            FishTerm::C3(a, p, b) => write!(f, "C3({a},{p},{b})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected character at byte {0}")]
    Unexpected(usize),
    #[error("trailing input at byte {0}")]
    Trailing(usize),
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Result<u8, TermParseError> {
        self.ws();
        self.s.get(self.i).copied().ok_or(TermParseError::Eof)
    }

    fn expect(&mut self, c: u8) -> Result<(), TermParseError> {
        if self.peek()? == c {
            self.i += 1;
            Ok(())
        } else {
            Err(TermParseError::Unexpected(self.i))
        }
    }

    fn number(&mut self) -> Result<usize, TermParseError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|d| d.parse().ok())
            .ok_or(TermParseError::Unexpected(start))
    }

    fn term(&mut self) -> Result<FishTerm, TermParseError> {
        let at = self.i;
        match self.peek()? {
            b'A' => {
                self.i += 1;
                Ok(FishTerm::A)
            }
            b'B' | b'C' => {
                let head = self.s[self.i];
                self.i += 1;
                let k = self.s.get(self.i).copied().ok_or(TermParseError::Eof)?;
                self.i += 1;
                self.expect(b'(')?;
                let first = self.term()?;
                let t = match (head, k) {
                    (b'B', b'1') => FishTerm::b1(first),
                    (b'B', b'2') => FishTerm::b2(first),
                    (b'C', b'1') => {
                        self.expect(b',')?;
                        FishTerm::c1(first, self.term()?)
                    }
                    (b'C', b'2') | (b'C', b'3') => {
                        self.expect(b',')?;
                        let p = self.number()?;
                        self.expect(b',')?;
                        let second = self.term()?;
                        if k == b'2' {
                            FishTerm::c2(first, p, second)
                        } else {
                            FishTerm::c3(first, p, second)
                        }
                    }
                    _ => return Err(TermParseError::Unexpected(at)),
                };
                self.expect(b')')?;
                Ok(t)
            }
            _ => Err(TermParseError::Unexpected(self.i)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(size: usize, tails: usize, rsize: usize, lsize: usize, fin: usize) -> StatVector {
        StatVector {
            size,
            tails,
            rsize,
            lsize,
            fin,
        }
    }

    #[test]
    fn predicted_examples() {
        let a = FishTerm::A;
        assert_eq!(FishTerm::b1(a.clone()).predicted_stats().unwrap(), sv(3, 1, 1, 2, 3));
        assert_eq!(
            FishTerm::c1(a.clone(), a.clone()).predicted_stats().unwrap(),
            sv(4, 1, 2, 2, 4)
        );
        assert_eq!(
            FishTerm::c3(a.clone(), 1, a.clone()).predicted_stats().unwrap(),
            sv(4, 2, 2, 2, 3)
        );
        let i = FishTerm::b2(FishTerm::c1(a.clone(), a.clone())).info().unwrap();
        assert_eq!(i.fin_word.to_string(), "LRLRR");
        assert_eq!(i.stats, sv(5, 1, 3, 2, 5));
        assert_eq!(i.area, 5);
    }

    #[test]
    fn position_preconditions() {
        let a = FishTerm::A;
        // fin of A is "LR": position 1 is L, position 2 is the last edge.
        assert!(matches!(
            FishTerm::c2(a.clone(), 1, a.clone()).info(),
            Err(GrammarError::PositionKind { .. })
        ));
        assert!(matches!(
            FishTerm::c3(a.clone(), 2, a.clone()).info(),
            Err(GrammarError::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            FishTerm::c3(a.clone(), 0, a.clone()).info(),
            Err(GrammarError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn text_form() {
        let t = FishTerm::c2(FishTerm::b2(FishTerm::A), 2, FishTerm::A);
        assert_eq!(t.to_string(), "C2(B2(A),2,A)");
        assert_eq!(FishTerm::parse("C2( B2(A), 2, A )").unwrap(), t);
        assert!(FishTerm::parse("B3(A)").is_err());
        assert!(FishTerm::parse("B1(A").is_err());
        assert!(FishTerm::parse("A A").is_err());
        assert!(FishTerm::parse("").is_err());
    }
}
