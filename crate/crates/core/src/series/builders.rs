use num_rational::BigRational;
use num_traits::One;

use super::mseries::{solve_fixed_point, solve_fixed_point_system, MSeries};
use super::poly::Var;
use super::{check_order, SeriesError, Vars};

/// Series constants at a fixed working order.
pub(crate) struct Ctx {
    pub one: MSeries,
    pub t: MSeries,
    pub y: MSeries,
    pub a: MSeries,
    pub b: MSeries,
    pub u: MSeries,
}

impl Ctx {
    pub fn new(order: usize, vars: &Vars) -> Ctx {
        Ctx {
            one: MSeries::one(order),
            t: MSeries::t(order),
            y: MSeries::constant(vars.poly(Var::Y), order),
            a: MSeries::constant(vars.poly(Var::A), order),
            b: MSeries::constant(vars.poly(Var::B), order),
            u: MSeries::var(Var::U, order),
        }
    }

    /// `a * b`
    pub fn ab(&self) -> MSeries {
        &self.a * &self.b
    }

    /// `y t a b`
    pub fn ytab(&self) -> MSeries {
        &(&self.y * &self.t) * &self.ab()
    }
}

/// `P(u)` as the solution of the catalytic equation
/// `P(u) = t u (1 + aP(u))(1 + bP(u)) + y t a b u P(u) (P(1) - P(u)) / (1 - u)`.
pub fn build_p(order: usize, vars: &Vars) -> Result<MSeries, SeriesError> {
    check_order(order)?;
    let vars = vars.clone().with(Var::U, None);
    solve_fixed_point(order, |p| {
        let c = Ctx::new(p.order(), &vars);
        let quotient = p.catalytic_quotient()?;
        let lin = &(&c.t * &c.u) * &(&c.one + &(&c.a * p)) * (&c.one + &(&c.b * p));
        let cat = &(&c.ytab() * &c.u) * &(p * &quotient);
        Ok(lin + cat)
    })
}

#[derive(Clone, Debug)]
pub struct Parametrization {
    pub b: MSeries,
    pub p1: MSeries,
}

/// `B = t (1 + y abB^2/(1 - abB^2))^2 (1 + aB)(1 + bB)` and
/// `P(1) = B - y ab B^3 (1 + aB)(1 + bB) / (1 - abB^2)^2`.
pub fn build_parametrization(order: usize, vars: &Vars) -> Result<Parametrization, SeriesError> {
    check_order(order)?;
    let b = solve_fixed_point(order, |x| {
        let c = Ctx::new(x.order(), vars);
        let abb2 = &c.ab() * &x.pow(2);
        let k = &c.y * &abb2.div(&(&c.one - &abb2))?;
        Ok(&c.t * &(&c.one + &k).pow(2) * (&c.one + &(&c.a * x)) * (&c.one + &(&c.b * x)))
    })?;
    let p1 = p1_from_b(&b, vars)?;
    Ok(Parametrization { b, p1 })
}

/// `B - y ab B^3 (1 + aB)(1 + bB) / (1 - abB^2)^2`.
pub(crate) fn p1_from_b(b: &MSeries, vars: &Vars) -> Result<MSeries, SeriesError> {
    let c = Ctx::new(b.order(), vars);
    let kernel = &c.one - &(&c.ab() * &b.pow(2));
    let num = &(&c.y * &c.ab()) * &b.pow(3) * (&c.one + &(&c.a * b)) * (&c.one + &(&c.b * b));
    Ok(b - &num.div(&kernel.pow(2))?)
}

#[derive(Clone, Debug)]
pub struct UvSeries {
    /// `U = 1 / (1 - V)`.
    pub u: MSeries,
    /// `U' = 1 + y abB^2 / (1 - abB^2)`.
    pub u_alt: MSeries,
    /// `V = y t a b (t d/dt) P(1)`.
    pub v: MSeries,
}

pub fn build_u_v(order: usize, vars: &Vars) -> Result<UvSeries, SeriesError> {
    let param = build_parametrization(order, vars)?;
    u_v_from(&param, vars)
}

pub(crate) fn u_v_from(param: &Parametrization, vars: &Vars) -> Result<UvSeries, SeriesError> {
    let c = Ctx::new(param.b.order(), vars);
    let v = &c.ytab() * &param.p1.theta();
    let u = (&c.one - &v).recip()?;
    let abb2 = &c.ab() * &param.b.pow(2);
    let u_alt = &c.one + &(&c.y * &abb2.div(&(&c.one - &abb2))?);
    Ok(UvSeries { u, u_alt, v })
}

#[derive(Clone, Debug)]
pub struct Marked {
    /// Marked branch point: `y d/dy P(1)`.
    pub lt: MSeries,
    /// Marked tail: `d/dy (y P(1))`.
    pub gt: MSeries,
    /// Marked lower flat point: `d/dt (t P(1)) - P^>`.
    pub minus: MSeries,
}

/// The marked-point series. `y` is kept symbolic internally and then
/// specialized as requested.
pub fn build_marked(order: usize, vars: &Vars) -> Result<Marked, SeriesError> {
    let sym = vars.clone().with(Var::Y, None);
    let p1 = build_parametrization(order, &sym)?.p1;
    marked_from_p1(&p1, vars)
}

pub(crate) fn marked_from_p1(p1: &MSeries, vars: &Vars) -> Result<Marked, SeriesError> {
    let lt = p1.euler(Var::Y);
    let gt = p1.mul_poly(&super::Poly::var(Var::Y)).euler(Var::Y).div_var(Var::Y)?;
    let minus = &p1.shift_t(1).d_t() - &gt;
    Ok(Marked {
        lt: vars.apply(&lt),
        gt: vars.apply(&gt),
        minus: vars.apply(&minus),
    })
}

#[derive(Clone, Debug)]
pub struct PuParam {
    pub bu: MSeries,
    pub pu: MSeries,
}

/// `B(u)` from its fixed-point equation and `P(u)` in closed form in terms
/// of `B(u)` and `B`.
pub fn build_pu_param(order: usize, vars: &Vars) -> Result<PuParam, SeriesError> {
    let param = build_parametrization(order, vars)?;
    pu_param_from(&param.b, vars)
}

pub(crate) fn pu_param_from(b: &MSeries, vars: &Vars) -> Result<PuParam, SeriesError> {
    let order = b.order();
    let vars = vars.clone().with(Var::U, None);
    let c = Ctx::new(order, &vars);
    let kernel = &c.one - &(&c.ab() * &b.pow(2));
    let rbar = (&(&c.a * b) * &(&c.one + &(&c.b * b))).div(&kernel)?;
    let sbar = (&(&c.b * b) * &(&c.one + &(&c.a * b))).div(&kernel)?;
    let bu = solve_fixed_point(order, |x| {
        let c = Ctx::new(x.order(), &vars);
        let left = &c.one + &(&c.a * x) + (&c.y * &c.a) * x * &sbar;
        let right = &c.one + &(&c.b * x) + (&c.y * &c.b) * x * &rbar;
        Ok(&(&c.t * &c.u) * &left * right)
    })?;
    let yab = &c.y * &c.ab();
    let bub = &bu * b;
    let num = &yab * &bu.pow(2) * b * (&c.one + &(&c.a * b)) * (&c.one + &(&c.b * b))
        * (&kernel + &(&yab * &b.pow(2)));
    let den = kernel.pow(2) * (&c.one - &(&c.ab() * &bub) + &yab * &bub);
    let pu = &bu - &num.div(&den)?;
    Ok(PuParam { bu, pu })
}

#[derive(Clone, Debug)]
pub struct RsSeries {
    /// `aB(1 + bB) / (1 - abB^2)` at `y = 1`.
    pub rbar: MSeries,
    /// `bB(1 + aB) / (1 - abB^2)` at `y = 1`.
    pub sbar: MSeries,
    /// Solution of `R = ta(1 + R)(1 + S)^2, S = tb(1 + R)^2(1 + S)`.
    pub rbar_sys: MSeries,
    pub sbar_sys: MSeries,
    pub b: MSeries,
    pub p1: MSeries,
}

/// The series `R̄`, `S̄` of the bivariate parametrization, at `y = 1`.
pub fn build_rs(order: usize, vars: &Vars) -> Result<RsSeries, SeriesError> {
    check_order(order)?;
    vars.check_y_one("R̄/S̄")?;
    let vars = vars.clone().with(Var::Y, Some(BigRational::one()));
    let param = build_parametrization(order, &vars)?;
    let b = &param.b;
    let c = Ctx::new(order, &vars);
    let kernel = &c.one - &(&c.ab() * &b.pow(2));
    let rbar = (&(&c.a * b) * &(&c.one + &(&c.b * b))).div(&kernel)?;
    let sbar = (&(&c.b * b) * &(&c.one + &(&c.a * b))).div(&kernel)?;
    let sys = solve_fixed_point_system(order, 2, |x| {
        let c = Ctx::new(x[0].order(), &vars);
        let r1 = &c.one + &x[0];
        let s1 = &c.one + &x[1];
        Ok(vec![
            &(&c.t * &c.a) * &r1 * s1.pow(2),
            &(&c.t * &c.b) * &r1.pow(2) * s1,
        ])
    })?;
    let mut sys = sys.into_iter();
    Ok(RsSeries {
        rbar,
        sbar,
        rbar_sys: sys.next().expect("two components"),
        sbar_sys: sys.next().expect("two components"),
        b: param.b,
        p1: param.p1,
    })
}
