//! Closed-form counts of fighting fish, evaluated in exact big integers.
//!
//! Every division is checked to be exact; a remainder means the formula was
//! transcribed wrongly and is reported as an error rather than rounded.

use num_bigint::BigUint;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("inexact division in {0}")]
    Inexact(&'static str),
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn choose(n: u64, k: u64) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(big(n), big(k))
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(big).product::<BigUint>().max(BigUint::one())
}

fn exact_div(num: BigUint, den: BigUint, what: &'static str) -> Result<BigUint, FormulaError> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(FormulaError::Inexact(what))
    }
}

/// Number of fish with `n + 1` free lower sides: `2 / ((n+1)(2n+1)) * C(3n, n)`.
pub fn fish_count(n: u64) -> Result<BigUint, FormulaError> {
    if n < 1 {
        return Err(FormulaError::OutOfRange(format!("n = {n}, need n >= 1")));
    }
    exact_div(
        big(2) * choose(3 * n, n),
        big((n + 1) * (2 * n + 1)),
        "fish_count",
    )
}

fn check_ij(i: u64, j: u64) -> Result<(), FormulaError> {
    if i < 1 || j < 1 {
        return Err(FormulaError::OutOfRange(format!(
            "(i, j) = ({i}, {j}), need both >= 1"
        )));
    }
    Ok(())
}

/// Fish with `i` free lower-left and `j` free lower-right sides,
/// binomial form `C(2i+j-2, j-1) C(2j+i-2, i-1) / (ij)`.
pub fn fish_count_ij(i: u64, j: u64) -> Result<BigUint, FormulaError> {
    check_ij(i, j)?;
    exact_div(
        choose(2 * i + j - 2, j - 1) * choose(2 * j + i - 2, i - 1),
        big(i * j),
        "fish_count_ij",
    )
}

/// Factorial form of [`fish_count_ij`]:
/// `(2i+j-2)! (2j+i-2)! / (i! j! (2i-1)! (2j-1)!)`.
pub fn fish_count_ij_factorial(i: u64, j: u64) -> Result<BigUint, FormulaError> {
    check_ij(i, j)?;
    exact_div(
        factorial(2 * i + j - 2) * factorial(2 * j + i - 2),
        factorial(i) * factorial(j) * factorial(2 * i - 1) * factorial(2 * j - 1),
        "fish_count_ij_factorial",
    )
}

/// Fish with `i` free lower-left and `j` free lower-right sides and a
/// marked tail: `(2i+2j-3) / ((2i-1)(2j-1)) * C(2i+j-3, j-1) C(2j+i-3, i-1)`.
pub fn marked_tail_count(i: u64, j: u64) -> Result<BigUint, FormulaError> {
    check_ij(i, j)?;
    exact_div(
        big(2 * i + 2 * j - 3) * choose(2 * i + j - 3, j - 1) * choose(2 * j + i - 3, i - 1),
        big((2 * i - 1) * (2 * j - 1)),
        "marked_tail_count",
    )
}

/// Lines `n a(n)` of a b-file, for `n` in `range`.
pub fn bfile<I, F>(range: I, f: F) -> Result<String, FormulaError>
where
    I: IntoIterator<Item = u64>,
    F: Fn(u64) -> Result<BigUint, FormulaError>,
{
    let mut out = String::new();
    for n in range {
        out.push_str(&format!("{} {}\n", n, f(n)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn fish_count_values() {
        let want = [1u64, 2, 6, 22, 91, 408, 1938, 9614, 49335];
        for (n, w) in (1..).zip(want) {
            assert_eq!(fish_count(n).unwrap(), u(w), "n = {n}");
        }
        assert!(fish_count(0).is_err());
    }

    #[test]
    fn bivariate_values() {
        assert_eq!(fish_count_ij(1, 1).unwrap(), u(1));
        assert_eq!(fish_count_ij(2, 2).unwrap(), u(4));
        assert_eq!(fish_count_ij(3, 2).unwrap(), u(10));
        assert_eq!(marked_tail_count(1, 1).unwrap(), u(1));
        assert_eq!(marked_tail_count(2, 2).unwrap(), u(5));
        assert_eq!(marked_tail_count(3, 1).unwrap(), u(1));
        assert!(fish_count_ij(0, 3).is_err());
        assert!(marked_tail_count(2, 0).is_err());
    }

    #[test]
    fn row_sums_symmetry_and_forms() {
        for n in 1..=30u64 {
            let row: BigUint = (1..=n).map(|i| fish_count_ij(i, n + 1 - i).unwrap()).sum();
            assert_eq!(row, fish_count(n).unwrap(), "n = {n}");
        }
        for i in 1..=30 {
            for j in 1..=30 {
                let a = fish_count_ij(i, j).unwrap();
                assert_eq!(a, fish_count_ij(j, i).unwrap());
                assert_eq!(a, fish_count_ij_factorial(i, j).unwrap());
                let m = marked_tail_count(i, j).unwrap();
                assert_eq!(m, marked_tail_count(j, i).unwrap());
                assert!(m >= a);
            }
        }
    }

    #[test]
    fn bfile_format() {
        assert_eq!(bfile(1..=3, fish_count).unwrap(), "1 1\n2 2\n3 6\n");
    }
}
