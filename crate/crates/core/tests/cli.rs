use std::process::Command;

use adcforms::cli::{run, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use adcforms::forms::descriptor::{fixture_names, load_fixture};
use adcforms::AnyForm;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("adcforms").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn fixtures_round_trip() {
    let names = fixture_names();
    assert!(names.len() >= 8);
    for name in names {
        let form = load_fixture(&name).unwrap();
        let again = AnyForm::from_json(&form.to_json()).unwrap();
        assert_eq!(again, form, "{name}");
        assert_eq!(again.to_json(), form.to_json(), "{name}");
    }
}

#[test]
fn exit_codes_across_subcommands() {
    let cases: &[(&[&str], i32)] = &[
        (&["eval", "--fixture", "q1", "--x", "1/2,1/3"], EXIT_OK),
        (&["eval", "--fixture", "q1", "--x", "1"], EXIT_INPUT),
        (&["bilinear", "--form", "diag:1,1", "--x", "1,0", "--y", "1,1"], EXIT_OK),
        (&["disc", "--fixture", "nebe5"], EXIT_OK),
        (&["is-euclidean", "--fixture", "sum3"], EXIT_OK),
        (&["is-euclidean", "--fixture", "fqt-sum2"], EXIT_OK),
        (&["euclideanity", "--fixture", "sum2", "--denoms", "3"], EXIT_OK),
        (&["euclideanity", "--form", "diag:1,-1"], EXIT_INPUT),
        (&["step", "--fixture", "sum3", "--x", "1/2,1/3,5/2"], EXIT_OK),
        (&["step", "--fixture", "q2", "--x", "1/2,1/2"], EXIT_NEGATIVE),
        (&["descend", "--fixture", "sum3", "--d", "3", "--t", "3", "--xprime", "1,1,5"], EXIT_OK),
        (&["descend", "--fixture", "sum3", "--d", "3", "--t", "2", "--xprime", "1,1,5"], EXIT_INPUT),
        (&["descend", "--fixture", "sum3", "--d", "7", "--t-bound", "3"], EXIT_INCONCLUSIVE),
        (&["witness", "--fixture", "sum3", "--d", "6", "--nonintegral"], EXIT_OK),
        (&["witness", "--fixture", "sum3", "--d", "0"], EXIT_INPUT),
        (&["represents", "--fixture", "sum3", "--d", "14"], EXIT_OK),
        (&["represents", "--fixture", "sum3", "--d", "15"], EXIT_NEGATIVE),
        (&["represents", "--form", "diag:1,-2", "--d", "5", "--box-bound", "3"], EXIT_INCONCLUSIVE),
        (&["certify", "--fixture", "q2", "--a", "2", "--b", "1"], EXIT_OK),
        (&["certify", "--fixture", "sum3", "--a", "2", "--b", "7"], EXIT_NEGATIVE),
        (&["certify-search", "--fixture", "q2"], EXIT_OK),
        (&["certify-search", "--fixture", "sum3"], EXIT_INCONCLUSIVE),
        (&["audit-adc", "--fixture", "q1", "--d", "30"], EXIT_OK),
        (&["audit-adc", "--fixture", "q2", "--d", "10", "--t-bound", "4"], EXIT_NEGATIVE),
        (&["audit-adc", "--fixture", "sum3", "--d", "100", "--samples", "10", "--seed", "4"], EXIT_OK),
        (&["three-squares", "14"], EXIT_OK),
        (&["three-squares", "28"], EXIT_NEGATIVE),
        (&["three-squares", "abc"], EXIT_INPUT),
        (&["local", "--fixture", "sum3", "--d", "3"], EXIT_OK),
        (&["local", "--fixture", "sum3", "--d", "7", "--p", "2"], EXIT_NEGATIVE),
        (&["check-290", "--fixture", "sum4"], EXIT_OK),
        (&["check-290", "--form", "diag:2,2,2,2"], EXIT_NEGATIVE),
        (&["check-290", "--fixture", "sum3"], EXIT_INPUT),
        (&["classify-diagonal"], EXIT_OK),
        (&["maximality", "--fixture", "sum3"], EXIT_OK),
        (&["maximality", "--fixture", "sum4"], EXIT_NEGATIVE),
        (&["maximality", "--fixture", "sum3", "--p", "2"], EXIT_INPUT),
        (&["frobnicate"], EXIT_INPUT),
        (&["eval", "--fixture", "nope", "--x", "1"], EXIT_INPUT),
        (&["--help"], EXIT_OK),
    ];
    for (args, want) in cases {
        let (code, out, err) = call(args);
        assert_eq!(code, *want, "{args:?}\nstdout: {out}\nstderr: {err}");
        if code == EXIT_INPUT {
            assert!(!err.is_empty(), "{args:?} gave no message");
        }
    }
}

#[test]
fn json_output_parses() {
    let cases: &[&[&str]] = &[
        &["--json", "eval", "--fixture", "q1", "--x", "1/2,1/3"],
        &["--json", "euclideanity", "--fixture", "sum3"],
        &["--json", "descend", "--fixture", "sum3", "--d", "3", "--t", "3", "--xprime", "1,1,5"],
        &["--json", "certify", "--fixture", "q2", "--a", "2", "--b", "1"],
        &["--json", "local", "--fixture", "sum3", "--d", "28"],
        &["--json", "three-squares", "7"],
    ];
    for args in cases {
        let (_, out, err) = call(args);
        let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}{err}"));
        assert!(v.is_object() || v.is_array(), "{args:?}");
    }
    let (_, out, _) = call(&["--json", "certify", "--fixture", "q2", "--a", "2", "--b", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["a"], "2");
    assert_eq!(v["b"], "1");
    let (_, out, _) = call(&["--json", "eval", "--fixture", "q1", "--x", "1/2,1/3"]);
    assert!(out.contains("7/12"), "{out}");
}

#[test]
fn descent_trace_has_every_step() {
    let (code, out, _) = call(&["descend", "--fixture", "sum3", "--d", "3", "--t", "3", "--xprime", "1,1,5", "--trace"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    for key in ["t", "xprime", "y", "z", "q_z", "a", "b", "T", "X"] {
        assert!(steps[0].get(key).is_some(), "missing {key}");
    }
    let y: Vec<i64> = v["outcome"]["success"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(y.iter().map(|a| a * a).sum::<i64>(), 3);
}

#[test]
fn binary_honours_the_exit_contract() {
    let bin = env!("CARGO_BIN_EXE_adcforms");
    let cases: &[(&[&str], i32)] = &[
        (&["three-squares", "2000"], EXIT_OK),
        (&["three-squares", "7"], EXIT_NEGATIVE),
        (&["represents", "--form", "{bad", "--d", "1"], EXIT_INPUT),
        (&["descend", "--fixture", "sum3", "--d", "7", "--t-bound", "2"], EXIT_INCONCLUSIVE),
    ];
    for (args, want) in cases {
        let out = Command::new(bin).args(*args).output().unwrap();
        assert_eq!(out.status.code(), Some(*want), "{args:?}");
    }
    let out = Command::new(bin)
        .args(["represents", "--fixture", "sum4", "--d", "290"])
        .env("ADCFORMS_MAX_ENUM", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INCONCLUSIVE));
}

#[test]
fn file_source_and_shorthand_agree() {
    let dir = std::env::temp_dir().join(format!("adcforms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    std::fs::write(&path, load_fixture("q1").unwrap().to_json()).unwrap();
    let path = path.to_str().unwrap();
    let (c1, a, _) = call(&["disc", "--file", path]);
    let (c2, b, _) = call(&["disc", "--form", "diag:1,3"]);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(a, b);
    let _ = std::fs::remove_dir_all(&dir);
}
