use finfish_core::grammar::joint_distribution;
use finfish_core::series::{build_marked, build_p, MSeries, Mono, SeriesCatalog, SeriesName, Var, Vars};
use finfish_core::trees::joint_distribution_trees;
use finfish_core::validation::{area_report, check_conjecture, check_formulas, check_oracle, SuiteName};
use finfish_core::Budget;
use num_bigint::BigUint;
use num_rational::BigRational;

fn int(q: &BigRational) -> i64 {
    assert!(q.is_integer());
    q.to_integer().try_into().unwrap()
}

fn ones_u1() -> Vars {
    Vars::ones().with(Var::U, Some(BigRational::from_integer(1.into())))
}

#[test]
fn small_counts() {
    let r = check_formulas(3, Budget::default()).unwrap();
    assert!(r.pass);
    let t = joint_distribution(4).unwrap();
    let by_size = t.marginal(|k| k.size);
    assert_eq!((2..=4).map(|s| by_size.get(&s)).collect::<Vec<_>>(), [1u32, 2, 6].map(BigUint::from));
}

#[test]
fn catalytic_coefficients() {
    let p = build_p(4, &Vars::symbolic()).unwrap();
    // [t^3] split by fin: u^2 -> 1, u^3 -> 5.
    let by_fin = |e: u16| -> i64 { p.coeff(3).terms().filter(|(m, _)| m.exp(Var::U) == e).map(|(_, c)| int(c)).sum() };
    assert_eq!((by_fin(2), by_fin(3)), (1, 5));
    let two_tails: i64 = p.coeff(3).terms().filter(|(m, _)| m.exp(Var::Y) == 1).map(|(_, c)| int(c)).sum();
    assert_eq!(two_tails, 1);
    let total = ones_u1().apply(&p);
    assert_eq!(int(&total.coeff(4).coeff(Mono::ONE)), 22);
}

#[test]
fn marked_series_coefficients() {
    let m = build_marked(3, &Vars::ones()).unwrap();
    let at = |s: &MSeries| int(&s.coeff(3).coeff(Mono::ONE));
    assert_eq!((at(&m.gt), at(&m.lt)), (7, 1));
}

#[test]
fn census_values() {
    let r = check_oracle(5, Budget::default()).unwrap();
    assert!(r.pass);
    let rows = r.details["census"].as_array().unwrap();
    assert_eq!(rows[3]["non_polyomino"], 2);
    assert_eq!(rows[4]["non_planar"], 1);
    assert!(rows[..3].iter().all(|x| x["non_polyomino"] == 0));
}

#[test]
fn tails_match_right_branches() {
    let fish = joint_distribution(4).unwrap().filter(|k| k.size == 4 && k.tails == 2);
    let trees = joint_distribution_trees(3).unwrap().filter(|k| k.nodes == 3 && k.right_branches == 1);
    assert_eq!(fish.total(), BigUint::from(1u32));
    assert_eq!(trees.total(), BigUint::from(1u32));
    let r = check_conjecture(6).unwrap();
    assert!(r.pass);
}

#[test]
fn mean_area_at_size_three_is_two() {
    let r = area_report(3, Budget::default()).unwrap();
    assert_eq!(r.details["rows"][1]["mean"], "2");
}

#[test]
fn tree_series_need_ones() {
    let cat = SeriesCatalog::new(4, Vars::symbolic());
    assert!(cat.get(SeriesName::Tj(1)).is_err());
    assert!(SeriesCatalog::new(4, Vars::ones()).get(SeriesName::Tj(1)).is_ok());
}

#[test]
fn suites_reject_oversized_parameters() {
    assert!("oracle".parse::<SuiteName>().unwrap().run(99, Budget::default()).is_err());
    assert!("bogus".parse::<SuiteName>().is_err());
}

#[test]
fn reports_are_deterministic() {
    let a = check_formulas(6, Budget::default()).unwrap();
    let b = check_formulas(6, Budget::default()).unwrap();
    assert_eq!(a.checks, b.checks);
    assert_eq!(a.pass, b.pass);
}
