use std::path::PathBuf;
use std::process::{Command, Output};

fn bessel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bessel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

const IK_A1: &str = "{{1,2},{3,4},{6,11},{7,12},{13,14},{16,17},{19,20},{21,22},{23,24}}";
const IK_A2: &str = "{{2,3},{6,7},{8,9},{11,12},{14,15},{16,21},{19,24}}";
const IN_A1: &str = "{{1,2},{3,4},{5,10},{6,11},{7,12},{13,14},{18,19},{20,25},{23,24}}";
const IN_A2: &str = "{{2,3},{6,7},{8,9},{11,12},{14,15},{17,18},{19,20}}";

#[test]
fn table_bessel2_csv() {
    let out = bessel(&["table", "bessel2", "--n-max", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "n,k,value\n0,0,1\n1,0,0\n1,1,1\n2,0,0\n2,1,1\n2,2,1\n"
    );
}

#[test]
fn table_bessel1_single_entry() {
    let out = bessel(&["table", "bessel1", "--n-max", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[{\"n\":0,\"values\":[\"1\"]}]\n");
}

#[test]
fn table_matching_row_four() {
    let out = bessel(&["table", "matching", "--n-max", "4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        rows[4]["values"],
        serde_json::json!(["1", "6", "3", "0", "0"])
    );
}

#[test]
fn table_values_are_decimal_strings() {
    let out = bessel(&[
        "table",
        "bessel1-signless",
        "--n-max",
        "60",
        "--format",
        "json",
    ]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // a(60,1) = 118!/(2^59 59!) does not fit in 64 bits.
    let big = rows[60]["values"][1].as_str().unwrap();
    assert!(big.len() > 20);
    assert!(big.chars().all(|c| c.is_ascii_digit()));
}

#[test]
fn trace_goldens() {
    let cases: [(&[&str], &str); 4] = [
        (
            &[
                "trace",
                "i1",
                "--n",
                "7",
                "--l",
                "2",
                "--alpha",
                "{{2,3},{4,7}}",
                "--beta",
                "{{1,10},{5,11},{8,9}}",
            ],
            "i1_example.txt",
        ),
        (
            &[
                "trace",
                "i2",
                "--n",
                "10",
                "--l",
                "5",
                "--k",
                "8",
                "--alpha",
                "{{2,3},{4,11}}",
                "--beta",
                "{{1,7},{5,10},{8,9}}",
            ],
            "i2_example.txt",
        ),
        (
            &[
                "trace",
                "ik",
                "--ambient",
                "25",
                "--alpha1",
                IK_A1,
                "--alpha2",
                IK_A2,
            ],
            "ik_example.txt",
        ),
        (
            &[
                "trace", "in", "--n", "17", "--k", "9", "--a1", IN_A1, "--a2", IN_A2,
            ],
            "in_example.txt",
        ),
    ];
    for (args, file) in cases {
        let out = bessel(args);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stderr(&out));
        assert_eq!(stdout(&out), golden(file), "{file}");
    }
}

#[test]
fn trace_outputs_match_printed_pairs() {
    let i1 = golden("i1_example.txt");
    assert!(i1.contains("alpha' = {{4,7}}"));
    assert!(i1.contains("beta'  = {{2,3},{8,9},{1,10},{5,11}}"));
    let i2 = golden("i2_example.txt");
    assert!(i2.contains("output (k = 9, ambient: K_11"));
    assert!(i2.contains("beta'  = {{1,7},{8,9},{5,10},{4,11}}"));
    let n = golden("in_example.txt");
    assert!(n.contains("x = 20\n"));
    assert!(n.contains("y = 16\n"));
}

#[test]
fn trace_is_routes_both_branches() {
    let out = bessel(&[
        "trace", "is", "--n", "17", "--k", "9", "--a1", IN_A1, "--a2", IN_A2,
    ]);
    let text = stdout(&out);
    assert!(text.contains("branch: I_N"));
    assert!(text.ends_with(
        &golden("in_example.txt")
            .lines()
            .skip(5)
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    ));

    let out = bessel(&[
        "trace",
        "is",
        "--n",
        "5",
        "--k",
        "3",
        "--a1",
        "{{1,2},{3,5},{4,6}}",
        "--a2",
        "{{1,4}}",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("branch: I_K"));
}

#[test]
fn fixed_point_is_reported() {
    let out = bessel(&[
        "trace", "i1", "--n", "3", "--l", "3", "--alpha", "{}", "--beta", "{}",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("fixed point"));
}

#[test]
fn exit_codes() {
    let usage: [&[&str]; 5] = [
        &["table", "nope", "--n-max", "3"],
        &["table", "bessel2", "--format", "xml"],
        &["verify", "everything"],
        &[
            "trace", "i1", "--n", "3", "--l", "1", "--alpha", "{{1,2}", "--beta", "{}",
        ],
        &["trace", "ik", "--ambient", "6", "--alpha1", "{{1,2}}"],
    ];
    for args in usage {
        assert_eq!(bessel(args).status.code(), Some(2), "{args:?}");
    }

    let infeasible: [&[&str]; 4] = [
        &["table", "bessel2", "--n-max", "201"],
        &["verify", "involution-i1", "--n-max", "9"],
        &["verify", "injection-ik", "--ambient-max", "11"],
        &["verify", "injection-is", "--nk-bound", "11"],
    ];
    for args in infeasible {
        assert_eq!(bessel(args).status.code(), Some(3), "{args:?}");
    }

    // Vertex 4 lies outside [n] for alpha.
    let out = bessel(&[
        "trace", "i1", "--n", "3", "--l", "1", "--alpha", "{{1,4}}", "--beta", "{}",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("precondition"));
}

#[test]
fn verify_examples_pass() {
    let out = bessel(&["verify", "inverse", "--n-max", "30"]);
    assert_eq!(out.status.code(), Some(0));

    let out = bessel(&[
        "verify",
        "involution-i1",
        "--n",
        "7",
        "--l",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["cells"][0]["facts"]["fixed_points"], "0");

    let out = bessel(&["verify", "injection-is", "--nk-bound", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn output_is_independent_of_parallelism() {
    let suites: [&[&str]; 3] = [
        &[
            "verify",
            "injection-is",
            "--nk-bound",
            "9",
            "--format",
            "json",
        ],
        &[
            "verify",
            "injection-ik",
            "--ambient-max",
            "8",
            "--format",
            "json",
        ],
        &["verify", "lemmas", "--seed", "7", "--format", "json"],
    ];
    for args in suites {
        let runs: Vec<Vec<u8>> = ["1", "3", "0"]
            .iter()
            .map(|p| {
                let mut full = args.to_vec();
                full.extend(["--parallelism", p]);
                let out = bessel(&full);
                assert_eq!(out.status.code(), Some(0));
                out.stdout
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn seed_selects_random_sequences() {
    let a = bessel(&["verify", "lemmas", "--seed", "1", "--format", "json"]);
    let b = bessel(&["verify", "lemmas", "--seed", "2", "--format", "json"]);
    assert_ne!(a.stdout, b.stdout);
}
