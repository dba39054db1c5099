use std::process::{Command, Output};

use serde_json::Value;

fn qtau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn reports(o: &Output) -> Vec<Value> {
    let v: Value = serde_json::from_slice(&o.stdout).expect("json output");
    v["reports"].as_array().unwrap().clone()
}

#[test]
fn exact_bilinear_passes() {
    let o = qtau(&["bilinear", "--order", "4", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &reports(&o)[0];
    assert_eq!(r["pass"], true);
    assert_eq!(r["residual_max"], "0");
    assert_eq!(r["order"], "4");
}

#[test]
fn algebraic_single_sign() {
    let o = qtau(&[
        "algebraic",
        "--order",
        "4",
        "--sign",
        "-1",
        "--mode",
        "exact",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["parameters"]["sign"], "-1");
}

#[test]
fn fiber_base_passes_by_failing() {
    let o = qtau(&[
        "fiber-base",
        "--order",
        "8",
        "--q",
        "0.5",
        "--u",
        "0.3",
        "--zz",
        "0.2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = &reports(&o)[0];
    assert_eq!(r["direction"], "above");
    let res: f64 = r["residual_max"].as_str().unwrap().parse().unwrap();
    assert!(res > 1e-6);
}

#[test]
fn failing_check_exits_one() {
    let o = qtau(&["appendix-b", "--order", "2", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["failed"].as_array().unwrap().len(), 2);
    assert!(reports(&o).iter().all(|r| r["conjecture"] == true));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["nonsense"][..],
        &["bilinear", "--mode", "fuzzy"],
        &["bilinear", "--u", "1+"],
        &["algebraic", "--sign", "3"],
    ] {
        let o = qtau(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_reproducible() {
    let args = ["qtoda", "--trials", "1", "--order", "6", "--seed", "7"];
    let a = qtau(&args);
    let b = qtau(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(reports(&a)
        .iter()
        .all(|r| r["conjecture"] == true && r["wall_time_ms"] == "0"));
    let c = qtau(&["qtoda", "--trials", "1", "--order", "6", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn config_supplies_defaults_and_flags_override() {
    let path = std::env::temp_dir().join(format!("qtau-config-{}.txt", std::process::id()));
    std::fs::write(&path, "# desk run\norder = 2\nmode = exact\nout = csv\n").unwrap();
    let p = path.to_str().unwrap();
    let o = qtau(&["bilinear", "--config", p]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("check_name,"), "{text}");
    assert!(text.contains("bilinear,2,0,0,below,true"), "{text}");
    let o = qtau(&["bilinear", "--config", p, "--order", "3", "--out", "json"]);
    assert_eq!(reports(&o)[0]["order"], "3");
    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(qtau(&["bilinear", "--config", p]).status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn block_prints_coefficients() {
    let o = qtau(&["block", "--order", "1"]);
    let r = &reports(&o)[0];
    assert_eq!(r["details"]["zeta^000"], "1");
    assert!(r["details"]["zeta^004"]
        .as_str()
        .unwrap()
        .contains("a^4*b^4"));
    let o = qtau(&[
        "block", "--order", "2", "--mode", "numeric", "--u", "0.3+0.2i", "--q", "0.4",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn timing_flag_records_time() {
    let o = qtau(&["bilinear", "--order", "1", "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(reports(&o)[0]["wall_time_ms"]
        .as_str()
        .unwrap()
        .parse::<u64>()
        .is_ok());
}
