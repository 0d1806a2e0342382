use std::path::Path;
use std::process::{Command, Output};

fn wallkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallkit"))
        .args(args)
        .env_remove("WALLKIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_examples(dir: &Path) {
    let o = wallkit(&["examples", "--write", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write_examples(dir.path());
    let file = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let o = wallkit(&["check", &file("tv_12_7.pres"), "--lambda", "1/6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("max piece ratio 1/7"));
    assert_eq!(wallkit(&["check", &file("tv_12_6.pres"), "--lambda", "1/6"]).status.code(), Some(1));
    std::fs::write(dir.path().join("broken.pres"), "gens: a b\nrel: a c\n").unwrap();
    assert_eq!(wallkit(&["check", &file("broken.pres")]).status.code(), Some(2));
    assert_eq!(wallkit(&["check", &file("missing.pres")]).status.code(), Some(2));
    let o = wallkit(&["check", &file("tv_12_7.pres"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_ratio"], "1/7");
}

#[test]
fn separation_on_the_ball() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = wallkit(&[
        "separation", "--family", "tv", "--I", "1,2", "--k", "7", "--radius", "8", "--out", out, "--dot", "--jobs", "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["constant"], "1/12");
    assert!(v["settled_pairs"].as_u64().unwrap() > 0);
    let min = wallkit::rational::parse_rational(v["min_ratio"].as_str().unwrap()).unwrap();
    assert!(min >= wallkit::Rational::new(1, 12));
    let csv = std::fs::read_to_string(dir.path().join("separation.csv")).unwrap();
    assert!(csv.starts_with("p,q,d,dw,ratio_num,ratio_den,settled,in_A_count\n"));
    assert!(dir.path().join("summary.json").exists());
    assert!(std::fs::read_to_string(dir.path().join("walls.dot")).unwrap().contains("graph trace_"));
}

#[test]
fn separation_reports_are_stable_across_jobs() {
    let run = |jobs: &str| {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        let o = wallkit(&["--jobs", jobs, "separation", "--family", "tv", "--I", "1", "--radius", "7", "--out", out]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read_to_string(dir.path().join("separation.csv")).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn separation_observe_example1() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = wallkit(&["separation", "--example", "example1", "--n", "1,2,3", "--observe", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("separation.csv")).unwrap();
    for n in 1..=3 {
        let row = format!("a{n},e{n},{},6,", 2 * n + 6);
        assert!(csv.lines().any(|l| l.starts_with(&row)), "missing {row}");
    }
    // without --observe the complex is refused: it is not C'(1/6)
    let o = wallkit(&["separation", "--example", "example1", "--n", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn separation_free_group() {
    let o = wallkit(&["separation", "--family", "none", "--radius", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["min_ratio"], "1/1");
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_wallkit"))
        .args(["separation", "--family", "tv", "--radius", "8"])
        .env("WALLKIT_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_wallkit"))
        .args(["check", "x.pres"])
        .env("WALLKIT_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn word_command() {
    let o = wallkit(&["word", "--family", "tv", "--I", "1", "(a b)^7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("trivial\n") && !stdout(&o).contains("non-trivial"));
    let o = wallkit(&["word", "--family", "tv", "--I", "1", "a"]);
    assert!(stdout(&o).contains("shortlex: a\n") && stdout(&o).contains("non-trivial"));
    let o = wallkit(&["word", "--family", "tv", "--I", "1", "(a b)^4"]);
    let form = stdout(&o).lines().find_map(|l| l.strip_prefix("shortlex: ")).unwrap().to_string();
    assert!(form.split_whitespace().count() <= 6, "{form}");
    assert_eq!(wallkit(&["word", "--family", "tv", "--k", "6", "a"]).status.code(), Some(1));
    assert_eq!(wallkit(&["word", "--family", "tv", "--I", "1", "c"]).status.code(), Some(2));
}

#[test]
fn walls_dump_and_dot() {
    let o = wallkit(&["walls-dump", "--example", "example2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("walls "));
    assert!(text.lines().skip(1).all(|l| l.starts_with("w ") && l.contains("settled=1")));
    let o = wallkit(&["walls-dump", "--example", "example2", "--hypergraph", "0", "--trace", "0"]);
    assert!(stdout(&o).contains("graph wall_0") && stdout(&o).contains("graph trace_0"));
    assert_eq!(wallkit(&["walls-dump", "--example", "example2", "--hypergraph", "99999"]).status.code(), Some(2));
}
