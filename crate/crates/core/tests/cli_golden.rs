//! Byte-for-byte comparisons of the `hpd` binary against `tests/golden`.
//! Regenerate with `UPDATE_GOLDEN=1 cargo test --test cli_golden`.

use std::path::PathBuf;
use std::process::Command;

use hpd_calc::cli::{example_names, parse_report, CliReport};

struct Case {
    file: String,
    args: Vec<String>,
    code: i32,
}

fn case(file: &str, args: &[&str], code: i32) -> Case {
    Case {
        file: file.to_string(),
        args: args.iter().map(|s| s.to_string()).collect(),
        code,
    }
}

fn cases() -> Vec<Case> {
    let mut out: Vec<Case> = example_names()
        .into_iter()
        .map(|name| {
            case(
                &format!("example_{name}.json"),
                &["example", "--name", name],
                0,
            )
        })
        .collect();
    out.extend([
        case(
            "example_quadric_even_n3.json",
            &["example", "--name", "quadric_even", "--n", "3"],
            0,
        ),
        case(
            "example_grassmannian_n2.ascii",
            &[
                "example",
                "--name",
                "grassmannian_lefschetz",
                "--n",
                "2",
                "--format",
                "ascii",
            ],
            0,
        ),
        case(
            "hpd2_cubic_fourfold.json",
            &[
                "hpd2", "--m", "5", "--d", "3", "--ell", "1", "--format", "json",
            ],
            0,
        ),
        case(
            "hpd2_m5_d2_ell4.ascii",
            &[
                "hpd2", "--m", "5", "--d", "2", "--ell", "4", "--format", "ascii",
            ],
            0,
        ),
        case(
            "hpd2_m5_d2_ell4.tsv",
            &[
                "hpd2", "--m", "5", "--d", "2", "--ell", "4", "--format", "tsv",
            ],
            0,
        ),
        case(
            "hpd2_m5_d3_ell3.svg",
            &[
                "hpd2", "--m", "5", "--d", "3", "--ell", "3", "--format", "svg",
            ],
            0,
        ),
        case(
            "hpd2_i1.ascii",
            &[
                "hpd2", "--m", "3", "--d", "4", "--ell", "2", "--format", "ascii",
            ],
            0,
        ),
        case(
            "hpd1_m5_d3_ell2.json",
            &["hpd1", "--m", "5", "--d", "3", "--ell", "2"],
            0,
        ),
        case(
            "walk_i3_ell3.ascii",
            &["walk", "--i", "3", "--ell", "3", "--format", "ascii"],
            0,
        ),
        case(
            "walk_i3_ell5.svg",
            &["walk", "--i", "3", "--ell", "5", "--format", "svg"],
            0,
        ),
        case(
            "cohom_acyclic.json",
            &["cohom", "--n", "3", "--p", "2", "--k", "2"],
            0,
        ),
        case(
            "cohom_sweep.tsv",
            &["cohom", "--n", "2", "--sweep", "k=-3..3", "--format", "tsv"],
            0,
        ),
        case(
            "chi_two_cubics.json",
            &["chi", "--n", "5", "--degrees", "3;3"],
            0,
        ),
        case(
            "gram_not_exceptional.json",
            &["gram", "--n", "2", "--twists", "0,3"],
            1,
        ),
        case(
            "mutate_left.json",
            &[
                "mutate", "--n", "2", "--twists", "0,1,2", "--index", "2", "--side", "left",
            ],
            0,
        ),
        case(
            "ext_hl.json",
            &[
                "ext", "--m", "5", "--d", "3", "--ell", "2", "--from", "0,0", "--to", "3,1",
            ],
            0,
        ),
        case(
            "hpd2_sweep.tsv",
            &[
                "hpd2",
                "--sweep",
                "m=1..7,d=1..4,ell=1..3",
                "--format",
                "tsv",
            ],
            0,
        ),
    ]);
    out
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_bin(args: &[String]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hpd"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for c in cases() {
        let (code, stdout, stderr) = run_bin(&c.args);
        assert_eq!(code, c.code, "{:?}: {stderr}", c.args);
        let path = golden_dir().join(&c.file);
        if update {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != stdout {
            mismatches.push(c.file.clone());
        }
    }
    assert!(mismatches.is_empty(), "golden mismatch: {mismatches:?}");
}

#[test]
fn identical_argv_gives_identical_bytes() {
    for c in cases() {
        let first = run_bin(&c.args);
        let second = run_bin(&c.args);
        assert_eq!(first, second, "{:?}", c.args);
    }
}

#[test]
fn exit_code_tracks_certificates() {
    for c in cases().into_iter().filter(|c| c.file.ends_with(".json")) {
        let (code, stdout, _) = run_bin(&c.args);
        let report = parse_report(&stdout).unwrap();
        assert_eq!(code == 0, report.all_pass(), "{:?}", c.args);
    }
}

#[test]
fn json_round_trip() {
    for c in cases().into_iter().filter(|c| c.file.ends_with(".json")) {
        let (_, stdout, _) = run_bin(&c.args);
        let report: CliReport = parse_report(&stdout).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(again, stdout, "{:?}", c.args);
        assert_eq!(parse_report(&again).unwrap(), report);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["hpd1", "--m", "2", "--d", "1", "--ell", "5"],
        vec!["hpd2", "--m", "4", "--d", "2", "--ell", "1"],
        vec!["hpd2", "--m", "x"],
        vec!["walk", "--i", "3", "--ell", "2"],
        vec!["example", "--name", "nope"],
        vec!["cohom", "--n", "2", "--p", "5", "--k", "0"],
        vec!["gram", "--n", "2", "--twists", "0,1", "--format", "svg"],
        vec!["frobnicate"],
        vec![],
    ] {
        let args: Vec<String> = args.into_iter().map(String::from).collect();
        let (code, stdout, stderr) = run_bin(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(stdout.is_empty(), "{args:?}");
        assert!(stderr.contains("Usage"), "{args:?}: {stderr}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hpd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args: Vec<String> = ["example", "--name", "cubic_fourfold", "--out"]
        .iter()
        .map(|s| s.to_string())
        .chain([path.display().to_string()])
        .collect();
    let (code, stdout, _) = run_bin(&args);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let golden = std::fs::read_to_string(golden_dir().join("example_cubic_fourfold.json")).unwrap();
    assert_eq!(written, golden);
    std::fs::remove_dir_all(&dir).unwrap();
}
