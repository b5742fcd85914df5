use std::path::Path;
use std::process::{Command, Output};

fn finfish(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_finfish"));
    cmd.args(args).env_remove("FINFISH_CACHE");
    if let Some(dir) = cache {
        cmd.env("FINFISH_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn fish_enum_lists_nine_objects() {
    let o = finfish(&["fish", "enum", "--max-size", "4", "--format", "jsonl"], None);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines.iter().filter(|v| v["size"] == 4).count(), 6);
    assert_eq!(lines[0]["term"], "A");
}

#[test]
fn series_eval_p1() {
    let o = finfish(&["series", "eval", "--name", "P1", "--order", "5", "--specialize", "y=1,a=1,b=1"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "0,1,2,6,22,91");
}

#[test]
fn check_formulas_passes() {
    let o = finfish(&["check", "formulas", "--max", "8"], None);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["suite"], "formulas");
    assert_eq!(report["pass"], true);
    assert!(report.get("failure").is_none());
}

#[test]
fn exit_codes() {
    assert_eq!(finfish(&["fish", "enum", "--max-size", "1"], None).status.code(), Some(2));
    assert_eq!(finfish(&["check", "nonsense"], None).status.code(), Some(2));
    assert_eq!(finfish(&["series", "eval", "--name", "Q", "--order", "3"], None).status.code(), Some(2));
    assert_eq!(finfish(&["fish", "table", "--max-size", "4", "--by", "size,size"], None).status.code(), Some(2));
    assert_eq!(finfish(&["render", "--code", "nope"], None).status.code(), Some(2));
    let o = finfish(&["--budget", "10", "fish", "enum", "--max-size", "8"], None);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn tables_are_sorted_csv() {
    let o = finfish(&["fish", "table", "--max-size", "4", "--by", "size,fin"], None);
    assert_eq!(stdout(&o), "size,fin,count\n2,2,1\n3,3,2\n4,3,1\n4,4,5\n");
    let o = finfish(&["trees", "table", "--max-nodes", "3", "--by", "nodes,core"], None);
    assert_eq!(stdout(&o), "nodes,core,count\n1,1,1\n2,2,2\n3,2,1\n3,3,5\n");
}

#[test]
fn bfile_format() {
    let o = finfish(&["formulas", "count", "--max", "5"], None);
    assert_eq!(stdout(&o), "1 1\n2 2\n3 6\n4 22\n5 91\n");
    let o = finfish(&["formulas", "ij", "--max", "4"], None);
    assert!(stdout(&o).contains("\n2,2,4\n"));
    let o = finfish(&["formulas", "tails", "--max", "4"], None);
    assert!(stdout(&o).contains("\n2,2,5\n"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["fish", "table", "--max-size", "9"];
    let first = finfish(&args, Some(dir.path()));
    assert!(stderr(&first).contains("cache: stored"));
    let second = finfish(&args, Some(dir.path()));
    assert!(stderr(&second).contains("cache: hit"));
    assert_eq!(first.stdout, second.stdout);

    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), b"{ not json").unwrap();
    }
    let third = finfish(&args, Some(dir.path()));
    assert!(stderr(&third).contains("discarding"));
    assert_eq!(first.stdout, third.stdout);

    let uncached = finfish(&args, None);
    assert!(!stderr(&uncached).contains("cache:"));
    assert_eq!(first.stdout, uncached.stdout);
}

#[test]
fn render_outputs() {
    let o = finfish(&["render", "--term", "A"], None);
    assert_eq!(stdout(&o).matches("<polygon").count(), 1);

    let oracle = finfish(&["fish", "oracle", "--max-area", "5"], None);
    let fish: Vec<serde_json::Value> = stdout(&oracle).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let non_planar: Vec<_> = fish.iter().filter(|f| f["planar"] == false).collect();
    assert_eq!(non_planar.len(), 1);
    let code = non_planar[0]["code"].as_str().unwrap();
    let svg = stdout(&finfish(&["render", "--code", code], None));
    assert_eq!(svg.matches("class=\"badge\"").count(), 1);
    assert!(svg.contains(">2</text>"));
    let ascii = stdout(&finfish(&["render", "--code", code, "--format", "ascii"], None));
    assert_eq!(ascii.matches('2').count(), 1);
}

#[test]
fn report_area_rows() {
    let o = finfish(&["report", "area", "--max", "4"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "size,fish,total_area,mean,mean_approx,mean_per_size,slope");
    assert!(lines[1].starts_with("2,1,1,1,"));
    assert!(lines[3].starts_with("4,6,19,19/6,"));
}
