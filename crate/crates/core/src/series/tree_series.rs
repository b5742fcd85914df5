use super::mseries::{solve_fixed_point, MSeries, Mismatch};
use super::poly::Var;
use super::{check_order, SeriesError};

/// Tree generating series, all at `y = a = b = 1`.
#[derive(Clone, Debug)]
pub struct TreeSeries {
    pub order: usize,
    /// Ternary trees: `T = 1 + tT^3`.
    pub t: MSeries,
    /// `B = tT^2`.
    pub b: MSeries,
    /// `X = B(1 + X + X^2)`.
    pub x: MSeries,
    /// `T(u) = 1 + tuT(u)^2 T`.
    pub tu: MSeries,
    /// `B(u) = tuT(u)^2`.
    pub bu: MSeries,
    x_pows: Vec<MSeries>,
}

impl TreeSeries {
    /// Builds the base series and caches the powers of `X` needed for
    /// indices up to `jmax`.
    pub fn build(order: usize, jmax: i64) -> Result<TreeSeries, SeriesError> {
        check_order(order)?;
        let t = solve_fixed_point(order, |x| {
            let o = x.order();
            Ok(&MSeries::one(o) + &(&MSeries::t(o) * &x.pow(3)))
        })?;
        let b = &MSeries::t(order) * &t.pow(2);
        let x = solve_fixed_point(order, |x| Ok(&b * &(&MSeries::one(x.order()) + x + x.pow(2))))?;
        let tu = solve_fixed_point(order, |s| {
            let o = s.order();
            let tu_mono = &MSeries::t(o) * &MSeries::var(Var::U, o);
            Ok(&MSeries::one(o) + &(&tu_mono * &s.pow(2) * &t))
        })?;
        let bu = &(&MSeries::t(order) * &MSeries::var(Var::U, order)) * &tu.pow(2);
        let max_power = (jmax.max(0) + 6) as usize;
        let mut x_pows = vec![MSeries::one(order)];
        for k in 1..=max_power {
            let next = &x_pows[k - 1] * &x;
            x_pows.push(next);
        }
        Ok(TreeSeries {
            order,
            t,
            b,
            x,
            tu,
            bu,
            x_pows,
        })
    }

    fn xp(&mut self, k: usize) -> MSeries {
        while self.x_pows.len() <= k {
            let next = self.x_pows.last().expect("X^0") * &self.x;
            self.x_pows.push(next);
        }
        self.x_pows[k].clone()
    }

    fn one_minus_xp(&mut self, k: usize) -> MSeries {
        &MSeries::one(self.order) - &self.xp(k)
    }

    /// `T_j = T (1 - X^{j+5})(1 - X^{j+2}) / ((1 - X^{j+4})(1 - X^{j+3}))`,
    /// for `j >= -1`; `T_{-2} = 0`.
    pub fn tj(&mut self, j: i64) -> Result<MSeries, SeriesError> {
        if j == -2 {
            return Ok(MSeries::zero(self.order));
        }
        if j < -2 {
            return Err(SeriesError::IndexOutOfRange { name: "T_j", j });
        }
        let k = (j + 2) as usize;
        let (f3, f0) = (self.one_minus_xp(k + 3), self.one_minus_xp(k));
        let (f2, f1) = (self.one_minus_xp(k + 2), self.one_minus_xp(k + 1));
        let num = &self.t * &f3 * f0;
        let den = f2 * f1;
        num.div(&den)
    }

    /// `H_j(u) = (1 - X^{j+1}) X T(u) - (1 + X)(1 - X^{j+2})`, for `j >= -2`.
    pub fn hj(&mut self, j: i64) -> Result<MSeries, SeriesError> {
        if j < -2 {
            return Err(SeriesError::IndexOutOfRange { name: "H_j", j });
        }
        // (1 - X^{j+1}) X, written as X - X^{j+2} so that j = -2 needs no X^{-1}.
        let k = (j + 2) as usize;
        let xk = self.xp(k);
        let lead = &self.x - &xk;
        let one_plus_x = &MSeries::one(self.order) + &self.x;
        let tail = self.one_minus_xp(k);
        Ok(&lead * &self.tu - &one_plus_x * &tail)
    }

    /// `T_j(u) = T(u) H_j / H_{j-1} * (1 - X^{j+2}) / (1 - X^{j+3})`, for `j >= -1`.
    pub fn tju(&mut self, j: i64) -> Result<MSeries, SeriesError> {
        if j < -1 {
            return Err(SeriesError::IndexOutOfRange { name: "T_j(u)", j });
        }
        let k = (j + 2) as usize;
        let (h, h_prev) = (self.hj(j)?, self.hj(j - 1)?);
        let (f0, f1) = (self.one_minus_xp(k), self.one_minus_xp(k + 1));
        let num = &self.tu * &h * f0;
        let den = h_prev * f1;
        num.div(&den)
    }

    /// Checks `T_j(u) = 1 + tu T_{j+1}(u) T_j(u) T_{j-1}`; returns the first
    /// mismatch, if any.
    pub fn recurrence_mismatch(&mut self, j: i64) -> Result<Option<Mismatch>, SeriesError> {
        let lhs = self.tju(j)?;
        let o = self.order;
        let tu_mono = &MSeries::t(o) * &MSeries::var(Var::U, o);
        let rhs = &MSeries::one(o) + &(&tu_mono * &self.tju(j + 1)? * &lhs * self.tj(j - 1)?);
        Ok(lhs.first_difference(&rhs))
    }
}
