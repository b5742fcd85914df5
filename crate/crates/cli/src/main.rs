mod cache;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finfish_core::formulas::{bfile, fish_count, fish_count_ij, marked_tail_count};
use finfish_core::grammar::{build, enumerate_terms, joint_distribution, FishTerm, StatVector};
use finfish_core::series::{SeriesCatalog, SeriesName, Var, Vars};
use finfish_core::surface::{enumerate_by_area, FishComplex, OracleCensus};
use finfish_core::trees::{enumerate_trees, joint_distribution_trees_at, TreeKey};
use finfish_core::validation::{area_report, SuiteName, SuiteReport, ValidationError};
use finfish_core::Budget;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use cache::Cache;

#[derive(Parser)]
#[command(name = "finfish", version, about = "Exact enumeration and generating series of fighting fish")]
struct Cli {
    /// Work budget for enumerations, in abstract units.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_UNITS)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fish from the grammar or the growth oracle.
    #[command(subcommand)]
    Fish(FishCmd),
    /// Ternary trees with j-positive embeddings.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Generating series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Closed-form counts.
    Formulas(FormulasArgs),
    /// Run validation suites; exit 1 if any fails.
    Check(CheckArgs),
    /// Draw a fish as SVG or ASCII.
    Render(RenderArgs),
    /// Diagnostic reports.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Subcommand)]
enum FishCmd {
    /// Every fish of size at most N, one per line.
    Enum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=13))]
        max_size: u64,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Every fish of area at most A, from incremental growth.
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=9))]
        max_area: u64,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Joint counts by the chosen statistics.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=40))]
        max_size: u64,
        /// Comma-separated subset of size,tails,rsize,lsize,fin.
        #[arg(long, default_value = "size,tails,rsize,lsize,fin")]
        by: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum TreesCmd {
    /// Every nonempty j-positive tree with at most N nodes.
    Enum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10))]
        max_nodes: u64,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(i64).range(0..=64))]
        root: i64,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Joint counts by the chosen statistics.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=40))]
        max_nodes: u64,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(i64).range(0..=64))]
        root: i64,
        /// Comma-separated subset of nodes,right_branches,non_root_even,odd,core.
        #[arg(long, default_value = "nodes,right_branches,non_root_even,odd,core")]
        by: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesFormat {
    /// One line per monomial.
    Text,
    /// Comma-separated coefficients of t^0..t^order; needs a full specialization.
    Coeffs,
    Jsonl,
    Csv,
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Evaluate a named series to a t-order.
    Eval {
        /// P, Pclosed, P1, B, U, Ualt, V, Bu, Plt, Pgt, Pminus, DeltaP, Rbar,
        /// Sbar, T, X, Btree, Tu, Btreeu, Tj:<j>, Hj:<j>, Tju:<j>.
        #[arg(long)]
        name: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=40))]
        order: u64,
        /// Values for some of y, a, b, u, e.g. `y=1,a=1,b=1`.
        #[arg(long, default_value = "")]
        specialize: String,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Coeffs)]
        format: SeriesFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormulaKind {
    /// `fish_count(n)` as a b-file.
    Count,
    /// `fish_count_ij(i, j)` for `i + j <= max`.
    Ij,
    /// `marked_tail_count(i, j)` for `i + j <= max`.
    Tails,
}

#[derive(Args)]
struct FormulasArgs {
    #[arg(value_enum)]
    kind: FormulaKind,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=2000))]
    max: u64,
    /// First index of the b-file.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    offset: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// formulas, series, oracle, fincore, conjecture, identities, trees, area.
    #[arg(required_unless_present = "all")]
    suites: Vec<String>,
    #[arg(long)]
    all: bool,
    /// Size, order or area bound for every requested suite (suite defaults otherwise).
    #[arg(long)]
    max: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct RenderSource {
    /// Canonical code of the fish.
    #[arg(long)]
    code: Option<String>,
    /// Grammar term, e.g. `C2(B1(A),1,A)`.
    #[arg(long)]
    term: Option<String>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    source: RenderSource,
    #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
    format: RenderFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    /// Exact mean area per size.
    Area,
    /// Polyomino and planarity counts per area.
    Census,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(value_enum)]
    kind: ReportKind,
    /// Size bound (area) or area bound (census).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=11))]
    max: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

fn budget_or_failed(e: impl std::fmt::Display, budget: bool) -> CliError {
    if budget {
        CliError::Budget(e.to_string())
    } else {
        CliError::Failed(e.to_string())
    }
}

impl From<finfish_core::grammar::GrammarError> for CliError {
    fn from(e: finfish_core::grammar::GrammarError) -> CliError {
        let b = matches!(e, finfish_core::grammar::GrammarError::Budget(_));
        budget_or_failed(e, b)
    }
}

impl From<finfish_core::trees::TreeError> for CliError {
    fn from(e: finfish_core::trees::TreeError) -> CliError {
        use finfish_core::trees::TreeError;
        match e {
            TreeError::Budget(_) => CliError::Budget(e.to_string()),
            TreeError::TooLarge(_) | TreeError::NegativeRoot(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<finfish_core::BudgetExceeded> for CliError {
    fn from(e: finfish_core::BudgetExceeded) -> CliError {
        CliError::Budget(e.to_string())
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> CliError {
        match e {
            ValidationError::Param(_) => CliError::Usage(e.to_string()),
            _ => {
                let b = e.is_budget();
                budget_or_failed(e, b)
            }
        }
    }
}

impl From<finfish_core::series::SeriesError> for CliError {
    fn from(e: finfish_core::series::SeriesError) -> CliError {
        use finfish_core::series::SeriesError as S;
        match e {
            S::UnknownName(_)
            | S::BadSpecialization(_)
            | S::TreeSpecializationRequired(_)
            | S::YOneRequired(_)
            | S::IndexOutOfRange { .. }
            | S::OrderTooSmall => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<finfish_core::formulas::FormulaError> for CliError {
    fn from(e: finfish_core::formulas::FormulaError) -> CliError {
        CliError::Failed(e.to_string())
    }
}

impl From<finfish_core::surface::StructureError> for CliError {
    fn from(e: finfish_core::surface::StructureError) -> CliError {
        CliError::Failed(e.to_string())
    }
}

/// Row-oriented output shared by every JSONL/CSV command.
struct Rows {
    header: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Rows {
    fn new(header: &[&str]) -> Rows {
        Rows {
            header: header.iter().map(|h| (*h).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write(&self, format: Format, out: &mut impl Write) -> Result<(), CliError> {
        match format {
            Format::Jsonl => {
                for r in &self.rows {
                    let obj: Map<String, Value> = self.header.iter().cloned().zip(r.iter().cloned()).collect();
                    writeln!(out, "{}", Value::Object(obj))?;
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header).map_err(|e| CliError::Failed(e.to_string()))?;
                for r in &self.rows {
                    let cells: Vec<String> = r
                        .iter()
                        .map(|v| match v {
                            Value::String(s) => s.clone(),
                            Value::Null => String::new(),
                            other => other.to_string(),
                        })
                        .collect();
                    w.write_record(&cells).map_err(|e| CliError::Failed(e.to_string()))?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

const FISH_STATS: [&str; 5] = ["size", "tails", "rsize", "lsize", "fin"];
const TREE_STATS: [&str; 5] = ["nodes", "right_branches", "non_root_even", "odd", "core"];

fn parse_by(by: &str, allowed: &[&str; 5]) -> Result<Vec<usize>, CliError> {
    let idx: Vec<usize> = by
        .split(',')
        .map(str::trim)
        .map(|s| {
            allowed
                .iter()
                .position(|a| *a == s)
                .ok_or_else(|| CliError::Usage(format!("unknown statistic {s:?}; expected one of {}", allowed.join(","))))
        })
        .collect::<Result<_, _>>()?;
    let mut seen = idx.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != idx.len() {
        return Err(CliError::Usage(format!("repeated statistic in {by:?}")));
    }
    Ok(idx)
}

fn fish_vec(k: &StatVector) -> [usize; 5] {
    [k.size, k.tails, k.rsize, k.lsize, k.fin]
}

fn tree_vec(k: &TreeKey) -> [usize; 5] {
    [k.nodes, k.right_branches, k.non_root_even, k.odd, k.core]
}

/// A projected count table, rows in lexicographic key order; counts are
/// decimal strings so they stay exact.
#[derive(Serialize, Deserialize)]
struct CountTable {
    header: Vec<String>,
    rows: Vec<(Vec<usize>, String)>,
}

impl CountTable {
    fn project<'a>(
        names: &[&str; 5],
        by: &[usize],
        entries: impl Iterator<Item = ([usize; 5], &'a num_bigint::BigUint)>,
    ) -> CountTable {
        let mut acc: std::collections::BTreeMap<Vec<usize>, num_bigint::BigUint> = Default::default();
        for (k, v) in entries {
            *acc.entry(by.iter().map(|&i| k[i]).collect()).or_default() += v;
        }
        CountTable {
            header: by.iter().map(|&i| names[i].to_owned()).collect(),
            rows: acc.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
        }
    }

    fn rows(&self) -> Rows {
        let mut header: Vec<&str> = self.header.iter().map(String::as_str).collect();
        header.push("count");
        let mut r = Rows::new(&header);
        for (k, v) in &self.rows {
            let mut row: Vec<Value> = k.iter().map(|&x| json!(x)).collect();
            row.push(json!(v));
            r.push(row);
        }
        r
    }
}

fn fish_row(term: &str, c: &FishComplex) -> Result<Vec<Value>, CliError> {
    let s = c.stats()?;
    Ok(vec![
        json!(term),
        json!(c.canonical_code()),
        json!(s.size),
        json!(s.tails),
        json!(s.rsize),
        json!(s.lsize),
        json!(s.fin),
        json!(s.fin_word),
        json!(s.area),
    ])
}

fn cmd_fish(cmd: FishCmd, budget: Budget, cache: &Cache, out: &mut impl Write) -> Result<(), CliError> {
    match cmd {
        FishCmd::Enum { max_size, format } => {
            let cat = enumerate_terms(max_size as usize, budget)?;
            let mut recs: Vec<_> = cat.iter().map(|r| (r.info.stats, r.term.to_string(), r)).collect();
            recs.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            let mut rows = Rows::new(&["term", "code", "size", "tails", "rsize", "lsize", "fin", "fin_word", "area"]);
            for (_, text, r) in recs {
                rows.push(fish_row(&text, &build(&r.term)?)?);
            }
            rows.write(format, out)
        }
        FishCmd::Oracle { max_area, format } => {
            #[derive(Serialize, Deserialize)]
            struct OracleRow(String, usize, usize, usize, usize, usize, usize, String, bool, bool);
            let rows: Vec<OracleRow> = cache.get_or_compute("fish oracle", json!({ "max_area": max_area }), || {
                let levels = enumerate_by_area(max_area as usize, budget)?;
                let mut rows = Vec::new();
                for (i, level) in levels.iter().enumerate() {
                    for (code, c) in level {
                        let s = c.stats()?;
                        let cl = c.classify()?;
                        rows.push(OracleRow(
                            code.clone(),
                            i + 1,
                            s.size,
                            s.tails,
                            s.rsize,
                            s.lsize,
                            s.fin,
                            s.fin_word,
                            cl.polyomino,
                            cl.planar,
                        ));
                    }
                }
                Ok::<_, CliError>(rows)
            })?;
            let mut out_rows = Rows::new(&[
                "code", "area", "size", "tails", "rsize", "lsize", "fin", "fin_word", "polyomino", "planar",
            ]);
            for r in rows {
                out_rows.push(vec![
                    json!(r.0),
                    json!(r.1),
                    json!(r.2),
                    json!(r.3),
                    json!(r.4),
                    json!(r.5),
                    json!(r.6),
                    json!(r.7),
                    json!(r.8),
                    json!(r.9),
                ]);
            }
            out_rows.write(format, out)
        }
        FishCmd::Table { max_size, by, format } => {
            let by = parse_by(&by, &FISH_STATS)?;
            let table = cache.get_or_compute("fish table", json!({ "max_size": max_size, "by": by }), || {
                let joint = joint_distribution(max_size as usize)?;
                Ok::<_, CliError>(CountTable::project(&FISH_STATS, &by, joint.iter().map(|(k, v)| (fish_vec(k), v))))
            })?;
            table.rows().write(format, out)
        }
    }
}

fn cmd_trees(cmd: TreesCmd, budget: Budget, cache: &Cache, out: &mut impl Write) -> Result<(), CliError> {
    match cmd {
        TreesCmd::Enum { max_nodes, root, format } => {
            let trees = enumerate_trees(root, max_nodes as usize, budget)?;
            let mut recs = Vec::new();
            for t in trees.iter().filter(|t| !t.is_empty()) {
                let st = t.stats_at(root)?;
                let k = [st.nodes, st.right_branches, st.non_root_even, st.odd_nodes, st.core_size];
                recs.push((k, t.to_string()));
            }
            recs.sort();
            let mut header = vec!["tree"];
            header.extend(TREE_STATS);
            let mut rows = Rows::new(&header);
            for (k, text) in recs {
                let mut row = vec![json!(text)];
                row.extend(k.iter().map(|&x| json!(x)));
                rows.push(row);
            }
            rows.write(format, out)
        }
        TreesCmd::Table { max_nodes, root, by, format } => {
            let by = parse_by(&by, &TREE_STATS)?;
            let params = json!({ "max_nodes": max_nodes, "root": root, "by": by });
            let table = cache.get_or_compute("trees table", params, || {
                let joint = joint_distribution_trees_at(root, max_nodes as usize)?;
                Ok::<_, CliError>(CountTable::project(&TREE_STATS, &by, joint.iter().map(|(k, v)| (tree_vec(k), v))))
            })?;
            table.rows().write(format, out)
        }
    }
}

fn cmd_series(cmd: SeriesCmd, cache: &Cache, out: &mut impl Write) -> Result<(), CliError> {
    let SeriesCmd::Eval { name, order, specialize, format } = cmd;
    let series_name: SeriesName = name.parse()?;
    let vars = Vars::parse(&specialize)?;
    // (t, y, a, b, u, coefficient) per monomial, in t then monomial order.
    type Terms = Vec<(usize, [u16; 4], String)>;
    let params = json!({ "name": series_name.to_string(), "order": order, "specialize": specialize });
    let terms: Terms = cache.get_or_compute("series eval", params, || {
        let s = SeriesCatalog::new(order as usize, vars.clone()).get(series_name)?;
        let mut terms = Vec::new();
        for k in 0..=s.order() {
            for (m, c) in s.coeff(k).terms() {
                terms.push((k, m.exps(), c.to_string()));
            }
        }
        Ok::<_, CliError>(terms)
    })?;
    match format {
        SeriesFormat::Coeffs => {
            let mut coeffs = vec!["0".to_owned(); order as usize + 1];
            for (k, e, c) in &terms {
                if e.iter().any(|&x| x != 0) {
                    let free: Vec<char> = Var::ALL.iter().filter(|v| vars.get(**v).is_none()).map(|v| v.name()).collect();
                    return Err(CliError::Usage(format!(
                        "coefficient of t^{k} still depends on {}; use --specialize or --format text",
                        free.iter().map(char::to_string).collect::<Vec<_>>().join(",")
                    )));
                }
                coeffs[*k] = c.clone();
            }
            writeln!(out, "{}", coeffs.join(","))?;
            Ok(())
        }
        SeriesFormat::Text => {
            for (k, e, c) in &terms {
                writeln!(out, "t^{k} y^{} a^{} b^{} u^{} : {c}", e[0], e[1], e[2], e[3])?;
            }
            Ok(())
        }
        SeriesFormat::Jsonl | SeriesFormat::Csv => {
            let mut rows = Rows::new(&["t", "y", "a", "b", "u", "coeff"]);
            for (k, e, c) in &terms {
                rows.push(vec![json!(k), json!(e[0]), json!(e[1]), json!(e[2]), json!(e[3]), json!(c)]);
            }
            let f = if format == SeriesFormat::Jsonl { Format::Jsonl } else { Format::Csv };
            rows.write(f, out)
        }
    }
}

fn cmd_formulas(args: FormulasArgs, out: &mut impl Write) -> Result<(), CliError> {
    match args.kind {
        FormulaKind::Count => {
            if args.offset > args.max {
                return Err(CliError::Usage(format!("--offset {} exceeds --max {}", args.offset, args.max)));
            }
            write!(out, "{}", bfile(args.offset..=args.max, fish_count)?)?;
            Ok(())
        }
        FormulaKind::Ij | FormulaKind::Tails => {
            let f = if args.kind == FormulaKind::Ij { fish_count_ij } else { marked_tail_count };
            let mut rows = Rows::new(&["i", "j", "value"]);
            for i in 1..args.max {
                for j in 1..=args.max - i {
                    rows.push(vec![json!(i), json!(j), json!(f(i, j)?.to_string())]);
                }
            }
            rows.write(args.format, out)
        }
    }
}

fn cmd_check(args: CheckArgs, budget: Budget, out: &mut impl Write) -> Result<bool, CliError> {
    let suites: Vec<SuiteName> = if args.all {
        SuiteName::ALL.to_vec()
    } else {
        args.suites.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    for s in &suites {
        let p = args.max.unwrap_or(s.default_param());
        if p > s.max_param() {
            return Err(CliError::Usage(format!("{} accepts --max up to {}, got {p}", s.as_str(), s.max_param())));
        }
    }
    // Suites are independent; each result is buffered and printed in request order.
    let results: Vec<Result<SuiteReport, ValidationError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| scope.spawn(move || s.run(args.max.unwrap_or(s.default_param()), budget)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let mut all_pass = true;
    for r in results {
        let report = r?;
        all_pass &= report.pass;
        eprintln!(
            "{} {}: {} checks in {:.2}s",
            if report.pass { "PASS" } else { "FAIL" },
            report.suite,
            report.checked,
            report.seconds
        );
        writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    }
    Ok(all_pass)
}

fn cmd_render(args: RenderArgs, out: &mut impl Write) -> Result<(), CliError> {
    let fish = match (&args.source.code, &args.source.term) {
        (Some(code), _) => FishComplex::from_canonical_code(code).map_err(|e| CliError::Usage(format!("invalid code: {e}")))?,
        (None, Some(term)) => {
            let t = FishTerm::parse(term).map_err(|e| CliError::Usage(format!("invalid term: {e}")))?;
            build(&t).map_err(|e| CliError::Usage(format!("invalid term: {e}")))?
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let text = match args.format {
        RenderFormat::Svg => render::svg(&fish)?,
        RenderFormat::Ascii => render::ascii(&fish)?,
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn cmd_report(args: ReportArgs, budget: Budget, out: &mut impl Write) -> Result<bool, CliError> {
    match args.kind {
        ReportKind::Area => {
            let r = area_report(args.max as usize, budget)?;
            let mut rows = Rows::new(&["size", "fish", "total_area", "mean", "mean_approx", "mean_per_size", "slope"]);
            for row in r.details["rows"].as_array().into_iter().flatten() {
                rows.push(
                    ["size", "fish", "total_area", "mean", "mean_approx", "mean_per_size", "slope"]
                        .iter()
                        .map(|k| row[*k].clone())
                        .collect(),
                );
            }
            rows.write(args.format, out)?;
            if !r.pass {
                eprintln!("area diagnostic failed: {:?}", r.failure);
            }
            Ok(r.pass)
        }
        ReportKind::Census => {
            let levels = enumerate_by_area(args.max as usize, budget)?;
            let census = OracleCensus::of_levels(&levels);
            let mut rows = Rows::new(&["area", "fish", "non_polyomino", "non_planar"]);
            for (a, n, np, nl) in census.rows {
                rows.push(vec![json!(a), json!(n), json!(np), json!(nl)]);
            }
            rows.write(args.format, out)?;
            Ok(true)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let budget = Budget::new(cli.budget);
    let cache = Cache::from_env();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let pass = match cli.command {
        Command::Fish(c) => cmd_fish(c, budget, &cache, &mut out).map(|_| true),
        Command::Trees(c) => cmd_trees(c, budget, &cache, &mut out).map(|_| true),
        Command::Series(c) => cmd_series(c, &cache, &mut out).map(|_| true),
        Command::Formulas(a) => cmd_formulas(a, &mut out).map(|_| true),
        Command::Check(a) => cmd_check(a, budget, &mut out),
        Command::Render(a) => cmd_render(a, &mut out).map(|_| true),
        Command::Report(a) => cmd_report(a, budget, &mut out),
    }?;
    out.flush()?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("finfish: {e}");
            ExitCode::from(e.code())
        }
    }
}
