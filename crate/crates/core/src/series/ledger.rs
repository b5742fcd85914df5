use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::builders::{build_p, build_parametrization, build_rs, marked_from_p1, pu_param_from, u_v_from, Ctx};
use super::mseries::MSeries;
use super::poly::Var;
use super::tree_series::TreeSeries;
use super::{SeriesError, Vars};

/// Outcome of one series identity, checked coefficientwise to `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub order: usize,
    /// First failing coefficient, if any.
    pub failure: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn eq(name: &str, lhs: &MSeries, rhs: &MSeries) -> IdentityCheck {
        IdentityCheck {
            name: name.to_owned(),
            order: lhs.order().min(rhs.order()),
            failure: lhs.first_difference(rhs).map(|m| m.to_string()),
        }
    }
}

/// The catalytic equation against both parametrizations, `U` and `V`, the
/// marked-point relations and the `u := U` derivation chain.
pub fn identity_ledger(order: usize, vars: &Vars) -> Result<Vec<IdentityCheck>, SeriesError> {
    let vars = vars.clone().with(Var::U, None);
    let one = BigRational::one();
    let c = Ctx::new(order, &vars);
    let p = build_p(order, &vars)?;
    let p1 = p.eval(Var::U, &one);
    let par = build_parametrization(order, &vars)?;
    let cor = pu_param_from(&par.b, &vars)?;
    let uv = u_v_from(&par, &vars)?;
    let marked = if vars.y.is_some() {
        let sym = vars.clone().with(Var::Y, None);
        marked_from_p1(&build_parametrization(order, &sym)?.p1, &vars)?
    } else {
        marked_from_p1(&par.p1, &vars)?
    };
    let (u, v) = (&uv.u, &uv.v);
    let pu = p.subst_u(u)?;
    let d_tp1 = p1.shift_t(1).d_t();
    let ytab = c.ytab();
    let ab = c.ab();
    let (lt, gt, minus) = (&marked.lt, &marked.gt, &marked.minus);
    let one_a = |s: &MSeries| &c.one + &(&c.a * s);
    let one_b = |s: &MSeries| &c.one + &(&c.b * s);
    let kernel_u = &c.one - &(&ab * &pu.pow(2));

    let mut out = vec![
        IdentityCheck::eq("catalytic P(1) = parametrized P(1)", &p1, &par.p1),
        IdentityCheck::eq("catalytic P(u) = closed-form P(u)", &p, &cor.pu),
        IdentityCheck::eq("closed-form P(u) at u=1 = P(1)", &cor.pu.eval(Var::U, &one), &par.p1),
        IdentityCheck::eq("B(u) at u=1 = B", &cor.bu.eval(Var::U, &one), &par.b),
        IdentityCheck::eq("U = 1/(1-V) = 1 + y abB^2/(1-abB^2)", u, &uv.u_alt),
        IdentityCheck::eq("V = 1 - 1/U'", v, &(&c.one - &uv.u_alt.recip()?)),
        IdentityCheck::eq(
            "P(1) + 2P^- + P^> + P^< = 2 d/dt(tP(1))",
            &(&p1 + &minus.scale(&BigRational::from_integer(2.into())) + gt + lt),
            &d_tp1.scale(&BigRational::from_integer(2.into())),
        ),
        IdentityCheck::eq("P(1) + P^< = P^>", &(&p1 + lt), gt),
        IdentityCheck::eq("P^- + P^> = d/dt(tP(1))", &(minus + gt), &d_tp1),
        IdentityCheck::eq("V = ytab(P^- + P^<)", v, &(&ytab * &(minus + lt))),
        IdentityCheck::eq("P^> = P(U)", gt, &pu),
        IdentityCheck::eq("P^< = P(U) - P(1)", lt, &(&pu - &p1)),
        IdentityCheck::eq("V = ytab (DeltaP)(U)", v, &(&ytab * &p.delta()?.subst_u(u)?)),
        IdentityCheck::eq("ytab P^< = V^2", &(&ytab * lt), &v.pow(2)),
        IdentityCheck::eq(
            "P^> = tU^2(1+aP^>)(1+bP^>)",
            gt,
            &(&c.t * &u.pow(2) * one_a(gt) * one_b(gt)),
        ),
        IdentityCheck::eq(
            "P^> = tU(1+aP^>)(1+bP^>) + V P^>",
            gt,
            &(&c.t * u * one_a(gt) * one_b(gt) + v * gt),
        ),
        IdentityCheck::eq("P(U) = B", &pu, &par.b),
        IdentityCheck::eq(
            "(U-1)P(U) = tU(U-1)(1+aP(U))(1+bP(U)) + ytUabP(U)(P(U)-P(1))",
            &((u - &c.one) * &pu),
            &(&c.t * u * (u - &c.one) * one_a(&pu) * one_b(&pu) + &ytab * u * &pu * (&pu - &p1)),
        ),
        IdentityCheck::eq(
            "U-1 = tU(U-1)(a+b+2abP(U)) + ytabU(2P(U)-P(1))",
            &(u - &c.one),
            &(&c.t * u * (u - &c.one) * (&c.a + &c.b + &ab * &pu.scale(&BigRational::from_integer(2.into())))
                + &ytab * u * (pu.scale(&BigRational::from_integer(2.into())) - &p1)),
        ),
        IdentityCheck::eq(
            "P(U) = t(2U-1)(1+aP(U))(1+bP(U)) + ytabP(U)(P(U)-P(1))",
            &pu,
            &(&c.t * (u.scale(&BigRational::from_integer(2.into())) - &c.one) * one_a(&pu) * one_b(&pu)
                + &ytab * &pu * (&pu - &p1)),
        ),
        IdentityCheck::eq(
            "P(U) = tU^2(1+aP(U))(1+bP(U))",
            &pu,
            &(&c.t * &u.pow(2) * one_a(&pu) * one_b(&pu)),
        ),
        IdentityCheck::eq(
            "U = 1 + y abP(U)^2/(1-abP(U)^2)",
            u,
            &(&c.one + &(&c.y * &(&ab * &pu.pow(2)).div(&kernel_u)?)),
        ),
    ];
    let correction = (&(&c.y * &ab) * &pu.pow(3) * one_a(&pu) * one_b(&pu)).div(&kernel_u.pow(2))?;
    out.push(IdentityCheck::eq(
        "P(U) - P(1) = y abP(U)^3(1+aP(U))(1+bP(U))/(1-abP(U)^2)^2",
        &(&pu - &p1),
        &correction,
    ));
    out.push(IdentityCheck::eq(
        "P(1) = P(U) - y abP(U)^3(1+aP(U))(1+bP(U))/(1-abP(U)^2)^2",
        &p1,
        &(&pu - &correction),
    ));
    if vars.y.is_none() {
        let divisible = (&par.b - &par.p1).div_var(Var::Y).is_ok();
        out.push(IdentityCheck {
            name: "B - P(1) divisible by y".to_owned(),
            order,
            failure: (!divisible).then(|| "B - P(1) has a y-free term".to_owned()),
        });
    }
    Ok(out)
}

/// The `R̄`, `S̄` parametrization at `y = 1`.
pub fn rs_ledger(order: usize, vars: &Vars) -> Result<Vec<IdentityCheck>, SeriesError> {
    let rs = build_rs(order, vars)?;
    let vars = vars.clone().with(Var::Y, Some(BigRational::one()));
    let c = Ctx::new(order, &vars);
    let r1 = &c.one + &rs.rbar;
    let s1 = &c.one + &rs.sbar;
    let b = &rs.b;
    Ok(vec![
        IdentityCheck::eq("R̄ = ta(1+R̄)(1+S̄)^2", &rs.rbar, &rs.rbar_sys),
        IdentityCheck::eq("S̄ = tb(1+R̄)^2(1+S̄)", &rs.sbar, &rs.sbar_sys),
        IdentityCheck::eq("B = t(1+R̄)(1+S̄)", b, &(&c.t * &r1 * &s1)),
        IdentityCheck::eq(
            "P(1) = t(1+R̄)(1+S̄)(1-R̄S̄)",
            &rs.p1,
            &(&c.t * &r1 * &s1 * (&c.one - &(&rs.rbar * &rs.sbar))),
        ),
        IdentityCheck::eq(
            "B = t(1+aB)(1+bB)/(1-abB^2)^2",
            b,
            &(&c.t * (&c.one + &(&c.a * b)) * (&c.one + &(&c.b * b))).div(&(&c.one - &(&c.ab() * &b.pow(2))).pow(2))?,
        ),
    ])
}

/// Tree series relations at `y = a = b = 1`, including the recurrence for
/// `T_j(u)` with `-1 <= j <= jmax - 1`.
pub fn tree_ledger(order: usize, jmax: i64) -> Result<Vec<IdentityCheck>, SeriesError> {
    let ones = Vars::ones();
    let one = BigRational::one();
    let mut ts = TreeSeries::build(order, jmax)?;
    let o = MSeries::one(order);
    let p = build_p(order, &ones)?;
    let par = build_parametrization(order, &ones)?;
    let cor = pu_param_from(&par.b, &ones)?;
    let (t, b, x, tu, bu) = (ts.t.clone(), ts.b.clone(), ts.x.clone(), ts.tu.clone(), ts.bu.clone());
    let mut out = vec![
        IdentityCheck::eq("T = 1/(1-B)", &t, &(&o - &b).recip()?),
        IdentityCheck::eq("T - 1 = BT", &(&t - &o), &(&b * &t)),
        IdentityCheck::eq("T - 1 = X/(1+X^2)", &(&t - &o), &x.div(&(&o + &x.pow(2)))?),
        IdentityCheck::eq("B = X/(1+X+X^2)", &b, &x.div(&(&o + &x + x.pow(2)))?),
        IdentityCheck::eq("tree B = fish B", &b, &par.b),
        IdentityCheck::eq("T(u) = 1 + B(u)T", &tu, &(&o + &(&bu * &t))),
        IdentityCheck::eq("B(u) = (T(u)-1)(1-B)", &bu, &((&tu - &o) * (&o - &b))),
        IdentityCheck::eq("tree B(u) = fish B(u)", &bu, &cor.bu),
        IdentityCheck::eq("1 + P(u) = T(u)(1+B) - T(u)^2 B", &(&o + &p), &(&tu * &(&o + &b) - tu.pow(2) * &b)),
        IdentityCheck::eq("T_0(u) = 1 + P(u)", &ts.tju(0)?, &(&o + &p)),
        IdentityCheck::eq("T_{-1} = 1", &ts.tj(-1)?, &o),
        IdentityCheck::eq("T_{-1}(u) = 1", &ts.tju(-1)?, &o),
    ];
    for j in -1..jmax {
        let lhs = ts.tju(j)?;
        let tu_mono = &MSeries::t(order) * &MSeries::var(Var::U, order);
        let rhs = &o + &(&tu_mono * &ts.tju(j + 1)? * &lhs * ts.tj(j - 1)?);
        out.push(IdentityCheck::eq(
            &format!("T_{j}(u) = 1 + tu T_{}(u) T_{j}(u) T_{}", j + 1, j - 1),
            &lhs,
            &rhs,
        ));
    }
    for j in -1..=jmax {
        out.push(IdentityCheck::eq(
            &format!("T_{j}(u) at u=1 = T_{j}"),
            &ts.tju(j)?.eval(Var::U, &one),
            &ts.tj(j)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all(checks: &[IdentityCheck]) {
        for c in checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.failure);
        }
    }

    #[test]
    fn ledger_specialized() {
        assert_all(&identity_ledger(7, &Vars::ones()).unwrap());
    }

    #[test]
    fn ledger_symbolic_low_order() {
        let checks = identity_ledger(5, &Vars::symbolic()).unwrap();
        assert!(checks.iter().any(|c| c.name.contains("divisible")));
        assert_all(&checks);
    }

    #[test]
    fn rs_and_trees() {
        assert_all(&rs_ledger(6, &Vars::symbolic()).unwrap());
        assert_all(&tree_ledger(7, 4).unwrap());
    }

    #[test]
    fn wrong_identity_is_caught() {
        let a = MSeries::t(3);
        let b = a.shift_t(1);
        let c = IdentityCheck::eq("bogus", &a, &b);
        assert!(!c.passed());
        assert!(c.failure.unwrap().starts_with("[t^1"));
    }
}
