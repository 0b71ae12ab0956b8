use std::io::Write;
use std::process::{Command, Output};

use finseg::alphabet::Alphabet;
use finseg::json::{
    block_path_from_json, envelope_from_json, factorization_from_json, upset_from_json,
};
use serde_json::Value;
use tempfile::NamedTempFile;

fn alphabet_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn ab() -> NamedTempFile {
    alphabet_file(r#"{"letters":["a","b"],"order":[],"involution":[]}"#)
}

fn finseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finseg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_alphabet(file: &NamedTempFile, args: &[&str]) -> Output {
    let path = file.path().to_str().unwrap();
    let mut all = args.to_vec();
    all.extend(["--alphabet", path]);
    finseg(&all)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_out(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn documented_examples() {
    let al = ab();
    let out = with_alphabet(&al, &["factorize", r#"{"gens":["ab"]}"#]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"factors":[{"gens":["a"]},{"gens":["b"]}]}"#
    );
    assert_eq!(out.status.code(), Some(0));

    let out = with_alphabet(&al, &["gamma", r#"{"gens":[]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty segment"));

    let out = with_alphabet(&al, &["irreducible", r#"{"gens":["aa","bb"]}"#]);
    assert_eq!(stdout(&out).trim(), r#"{"irreducible":true}"#);
}

#[test]
fn set_operations() {
    let al = ab();
    let cases: &[(&[&str], &str)] = &[
        (
            &["min", r#"{"gens":["a","ab","b"]}"#],
            r#"{"gens":["a","b"]}"#,
        ),
        (
            &["member", r#"{"gens":["ab"]}"#, "aab"],
            r#"{"member":true}"#,
        ),
        (
            &["member", r#"{"gens":["ab"]}"#, "ba"],
            r#"{"member":false}"#,
        ),
        (&["leq", "ab", "aabb"], r#"{"leq":true}"#),
        (&["leq", "ab", "ba"], r#"{"leq":false}"#),
        (
            &["concat", r#"{"gens":["a"]}"#, r#"{"gens":["b"]}"#],
            r#"{"gens":["ab"]}"#,
        ),
        (
            &["meet", r#"{"gens":["aa"]}"#, r#"{"gens":["bb"]}"#],
            r#"{"gens":["aa","bb"]}"#,
        ),
        (
            &["intersect", r#"{"gens":["a"]}"#, r#"{"gens":["b"]}"#],
            r#"{"gens":["ab","ba"]}"#,
        ),
        (
            &["quotient", r#"{"gens":["ab"]}"#, "b"],
            r#"{"gens":["a"]}"#,
        ),
        (
            &["quotient", r#"{"gens":["ab"]}"#, "a", "--side", "left"],
            r#"{"gens":["b"]}"#,
        ),
        (
            &["residual", r#"{"gens":["ab"]}"#, r#"{"gens":["b"]}"#],
            r#"{"gens":["a"]}"#,
        ),
        (
            &[
                "residual",
                r#"{"gens":["ab"]}"#,
                r#"{"gens":["ab"]}"#,
                "--side",
                "left",
            ],
            r#"{"gens":[""]}"#,
        ),
        (&["gamma", r#"{"gens":["aa","b"]}"#], r#"{"gamma":1}"#),
        (
            &["irreducible", r#"{"gens":["ab"]}"#],
            r#"{"irreducible":false}"#,
        ),
        (
            &["distance", r#"{"gens":["a"]}"#, r#"{"gens":["ab"]}"#],
            r#"{"gens":["b"]}"#,
        ),
        (&["closure", r#"{"gens":["aa","bb"]}"#], r#"{"gens":[""]}"#),
        (&["is-closed", r#"{"gens":["ab"]}"#], r#"{"closed":true}"#),
        (
            &["closed-union", r#"{"gens":["aa"]}"#, r#"{"gens":["bb"]}"#],
            r#"{"gens":[""]}"#,
        ),
        (
            &["factorize-blocks", r#"{"gens":["ab"]}"#],
            r#"{"factors":[{"gens":["a"]},{"gens":["b"]}]}"#,
        ),
        (
            &["blocks", r#"{"gens":["ab"]}"#],
            r#"{"blocks":[[0,1],[1,2]],"cuts":[1]}"#,
        ),
    ];
    for (args, expected) in cases {
        let out = with_alphabet(&al, args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out).trim(), *expected, "{args:?}");
    }
}

#[test]
fn involution_and_operand_files() {
    let pm = alphabet_file(r#"{"letters":["+","-"],"order":[],"involution":[["+","-"]]}"#);
    let alphabet = Alphabet::from_json(&std::fs::read_to_string(pm.path()).unwrap()).unwrap();
    let operand = alphabet_file(r#"{"gens":["++-"]}"#);
    let out = with_alphabet(
        &pm,
        &[
            "distance",
            r#"{"gens":[""]}"#,
            operand.path().to_str().unwrap(),
        ],
    );
    let v = json_out(&out);
    assert_eq!(
        upset_from_json(&alphabet, &v).unwrap(),
        upset_from_json(&alphabet, &serde_json::json!({"gens":["++-"]})).unwrap()
    );
    // Distances are involuted when the arguments swap.
    let out = with_alphabet(
        &pm,
        &[
            "distance",
            operand.path().to_str().unwrap(),
            r#"{"gens":[""]}"#,
        ],
    );
    assert_eq!(stdout(&out).trim(), r#"{"gens":["+--"]}"#);
}

#[test]
fn methods_agree_and_unknown_method_is_usage_error() {
    let al = ab();
    for gens in [
        r#"{"gens":["abb","bab"]}"#,
        r#"{"gens":["aa","bb"]}"#,
        r#"{"gens":[""]}"#,
    ] {
        let a = with_alphabet(&al, &["factorize", gens, "--method", "antichain"]);
        let b = with_alphabet(&al, &["factorize", gens, "--method", "blocks"]);
        assert_eq!(json_out(&a), json_out(&b), "{gens}");
    }
    let out = with_alphabet(
        &al,
        &["factorize", r#"{"gens":["ab"]}"#, "--method", "guess"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("antichain, blocks"));
}

#[test]
fn exit_codes() {
    let al = ab();
    // Parse and validation problems.
    assert_eq!(
        with_alphabet(&al, &["min", r#"{"gens":["z"]}"#])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        with_alphabet(&al, &["min", r#"{"gens":"#]).status.code(),
        Some(2)
    );
    assert_eq!(finseg(&["min", r#"{"gens":["a"]}"#]).status.code(), Some(2));
    assert_eq!(finseg(&["frobnicate"]).status.code(), Some(2));
    let bad = alphabet_file(r#"{"letters":["a","b"],"order":[["a","b"],["b","a"]]}"#);
    assert_eq!(
        with_alphabet(&bad, &["min", r#"{"gens":["a"]}"#])
            .status
            .code(),
        Some(2)
    );
    // Domain problems, including refusals above the instance limits.
    assert_eq!(
        with_alphabet(&al, &["factorize", r#"{"gens":[]}"#])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        with_alphabet(&al, &["factorize", r#"{"gens":["aaaaaaa"]}"#])
            .status
            .code(),
        Some(1)
    );
    let out = with_alphabet(
        &al,
        &["factorize", r#"{"gens":["aaaaaaa"]}"#, "--max-len", "7"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        with_alphabet(&al, &["min", r#"{"gens":["a","b"]}"#, "--max-gens", "1"])
            .status
            .code(),
        Some(1)
    );
    let five = alphabet_file(r#"{"letters":["a","b","c","d","e"]}"#);
    assert_eq!(
        with_alphabet(&five, &["min", r#"{"gens":["a"]}"#])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn emitted_json_reparses() {
    let al = ab();
    let alphabet = Alphabet::discrete(&["a", "b"]).unwrap();
    for gens in [
        r#"{"gens":["ab"]}"#,
        r#"{"gens":["abb","bab"]}"#,
        r#"{"gens":[]}"#,
        r#"{"gens":[""]}"#,
    ] {
        let v = json_out(&with_alphabet(&al, &["min", gens]));
        let f = upset_from_json(&alphabet, &v).unwrap();
        // Feeding output back in is a fixed point.
        let again = json_out(&with_alphabet(&al, &["min", &v.to_string()]));
        assert_eq!(again, v);

        let env = json_out(&with_alphabet(&al, &["envelope", gens, "--json"]));
        let s = envelope_from_json(&alphabet, &env).unwrap();
        assert_eq!(s.segment(), &f);
        assert_eq!(finseg::json::envelope_to_json(&alphabet, &s), env);

        if !f.is_empty() {
            let fac = json_out(&with_alphabet(&al, &["factorize", gens]));
            let parsed = factorization_from_json(&alphabet, &fac).unwrap();
            assert_eq!(parsed.product(&alphabet), f);
            assert_eq!(finseg::json::factorization_to_json(&alphabet, &parsed), fac);
        }
        if !f.is_all() && !f.is_empty() {
            let bp = json_out(&with_alphabet(&al, &["blocks", gens]));
            let parsed = block_path_from_json(&bp).unwrap();
            assert_eq!(finseg::json::block_path_to_json(&parsed), bp);
        }
    }
}

#[test]
fn dot_output() {
    let al = ab();
    let out = with_alphabet(&al, &["envelope", r#"{"gens":["ab"]}"#, "--dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.trim_end().ends_with('}'));
    assert_eq!(text.matches(" -> ").count(), 4);
    let out = with_alphabet(&al, &["blocks", r#"{"gens":["ab"]}"#, "--dot"]);
    assert!(stdout(&out).contains("graph"));
}

#[test]
fn selfcheck_is_deterministic() {
    let args = [
        "selfcheck",
        "--seed",
        "42",
        "--cases",
        "4",
        "--suite",
        "oracle",
        "--suite",
        "blocks",
    ];
    let a = finseg(&args);
    let b = finseg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["ok"], Value::Bool(true));
    let names: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["blocks", "oracle"]);
    let other = finseg(&[
        "selfcheck",
        "--seed",
        "43",
        "--cases",
        "4",
        "--suite",
        "oracle",
    ]);
    assert_ne!(
        other.stdout,
        finseg(&[
            "selfcheck",
            "--seed",
            "42",
            "--cases",
            "4",
            "--suite",
            "oracle"
        ])
        .stdout
    );
    assert_eq!(
        finseg(&["selfcheck", "--suite", "nope"]).status.code(),
        Some(2)
    );
}
