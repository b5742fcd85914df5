//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use finfish_core::validation::{
    area_report, check_conjecture, check_fincore, check_formulas, check_identities, check_oracle, check_trees,
    SuiteReport, ValidationError,
};
use finfish_core::Budget;

struct Outcome {
    pass: bool,
    note: String,
}

fn from_report(r: &SuiteReport, names: &[&str], prefixes: &[&str]) -> Outcome {
    let mut pass = true;
    let mut note = format!("{} comparisons, {:.2}s", r.checked, r.seconds);
    for n in names {
        match r.check(n) {
            Some(c) if c.pass => {}
            Some(c) => {
                pass = false;
                note = format!("{n} failed: {:?}", c.failure);
            }
            None => {
                pass = false;
                note = format!("{n} missing");
            }
        }
    }
    for p in prefixes {
        if !r.checks_pass(p) {
            pass = false;
            let bad = r.checks.iter().find(|c| c.name.starts_with(p) && !c.pass);
            note = format!("{p}* failed: {:?}", bad.and_then(|c| c.failure.clone()));
        }
    }
    Outcome { pass, note }
}

fn run(label: &str, f: impl FnOnce() -> Result<Outcome, ValidationError>) -> bool {
    let start = Instant::now();
    let out = f().unwrap_or_else(|e| Outcome {
        pass: false,
        note: format!("error: {e}"),
    });
    println!(
        "[{}] {label}: {} ({:.2}s)",
        if out.pass { "PASS" } else { "FAIL" },
        out.note,
        start.elapsed().as_secs_f64()
    );
    out.pass
}

fn main() -> ExitCode {
    let budget = Budget::default();
    let mut all = true;

    all &= run("1 counting, sizes 2-10", || {
        let start = Instant::now();
        let r = check_formulas(9, budget)?;
        let mut o = from_report(&r, &["fish_count"], &[]);
        let sizes: Vec<String> = (2..=10).map(|s| s.to_string()).collect();
        if start.elapsed() >= Duration::from_secs(120) {
            o.pass = false;
            o.note = format!("took {:?}, limit 2 minutes", start.elapsed());
        } else if o.pass {
            o.note = format!("sizes {} match fish_count", sizes.join(","));
        }
        Ok(o)
    });

    let size_eleven = check_formulas(10, budget);
    all &= run("2 bivariate counts, i+j <= 11", || {
        Ok(from_report(size_eleven.as_ref().map_err(clone_err)?, &["fish_count_ij"], &[]))
    });
    all &= run("3 marked tails, i+j <= 10", || {
        let r = check_formulas(9, budget)?;
        Ok(from_report(&r, &["marked_tail_count"], &[]))
    });

    let oracle = check_oracle(6, budget);
    all &= run("4 oracle equivalence and round trips, area <= 6", || {
        Ok(from_report(
            oracle.as_ref().map_err(clone_err)?,
            &["code_sets", "decompose_build", "build_decompose", "grammar_injective"],
            &[],
        ))
    });
    all &= run("5 census", || {
        let r = oracle.as_ref().map_err(clone_err)?;
        let mut o = from_report(r, &[], &["census_"]);
        if o.pass {
            o.note = format!("rows (area, fish, non-polyomino, non-planar): {}", r.details["census"]);
        }
        Ok(o)
    });

    all &= run("6 series identities and Lagrange", || {
        let r = check_identities(12)?;
        Ok(from_report(&r, &[], &["ones:", "symbolic:", "rs:", "lagrange:", "marked:"]))
    });

    all &= run("7 fin/core, sizes <= 10", || Ok(from_report(&check_fincore(10)?, &["fin_vs_core"], &[])));

    all &= run("8 tree formulas", || {
        let r = check_trees(8, budget)?;
        Ok(from_report(&r, &[], &["T_", "recurrence_"]))
    });

    all &= run("9 conjecture checker, sizes <= 9", || {
        let r = check_conjecture(9)?;
        let matching = r.details["orientations_matching"].clone();
        Ok(Outcome {
            pass: r.pass,
            note: if r.pass {
                format!("matching orientation(s): {matching}")
            } else {
                format!("no orientation matches; first counterexample {:?}", r.failure)
            },
        })
    });

    all &= run("10 area diagnostic, sizes 2-10", || {
        let r = area_report(10, budget)?;
        let mut o = from_report(&r, &["mean_increasing", "mean_per_size_increasing", "realized_area"], &[]);
        if o.pass {
            let rows = r.details["rows"].as_array().cloned().unwrap_or_default();
            let means: Vec<String> = rows.iter().map(|x| x["mean"].as_str().unwrap_or("?").to_owned()).collect();
            let slopes: Vec<String> = rows
                .iter()
                .filter_map(|x| x["slope"].as_f64())
                .map(|s| format!("{s:.3}"))
                .collect();
            o.note = format!("means [{}], slopes [{}]", means.join(", "), slopes.join(", "));
        }
        Ok(o)
    });

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn clone_err(e: &ValidationError) -> ValidationError {
    ValidationError::Param(e.to_string())
}
