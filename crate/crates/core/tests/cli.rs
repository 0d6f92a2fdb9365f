use std::process::Command;

fn ncpos(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncpos")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = ncpos(&full);
    (code, serde_json::from_str(&out).expect("valid json"))
}

#[test]
fn normal_form_and_degree() {
    let (code, out, _) = ncpos(&["nf", "q*p"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(0+1*i)*p^0*q^0 + (1+0*i)*p^1*q^1");
    let (_, out, _) = ncpos(&["--preset", "axb", "nf", "b*a"]);
    assert_eq!(out.trim(), "(0-1*i)*a^0*b^1 + (1+0*i)*a^1*b^1");
    let (_, out, _) = ncpos(&["deg", "p^2*q + q"]);
    assert_eq!(out.trim(), "(2,1)");
}

#[test]
fn random_rewriting_is_seed_stable() {
    let a = ncpos(&["nf", "q^3*p^2*q", "--strategy", "random", "--seed", "11"]);
    let b = ncpos(&["nf", "q^3*p^2*q", "--strategy", "random", "--seed", "11"]);
    let c = ncpos(&["nf", "q^3*p^2*q"]);
    assert_eq!(a, b);
    assert_eq!(a.1, c.1);
}

#[test]
fn star_and_fraction_round_trip() {
    let (_, out, _) = ncpos(&["star", "2*i*p*q"]);
    assert_eq!(out.trim(), "(2+0*i)*p^0*q^0 + (0-2*i)*p^1*q^1");
    let (code, prod, _) = ncpos(&["frac", "mul", "inv(s1)", "q"]);
    assert_eq!(code, 0);
    let (_, diff, _) = ncpos(&["frac", "sub", prod.trim(), prod.trim()]);
    assert_eq!(diff.trim(), "0");
}

#[test]
fn conditions_and_membership() {
    for preset in ["weyl", "axb"] {
        let (code, v) = json(&["--preset", preset, "check-conditions", "--which", "relations"]);
        assert_eq!(code, 0);
        assert_eq!(v["passed"], true);
    }
    let (code, v) = json(&["member", "p*inv(s1*s2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["decision"], "InX");
    let (code, v) = json(&["member", "p^2*inv(s1)"]);
    assert_eq!(code, 2);
    assert_eq!(v["decision"], "CriterionFailed");
}

#[test]
fn sohs_exit_codes() {
    let (code, v) = json(&["sohs", "p^2 + q^2 + 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Found");
    assert_eq!(v["s"], "1");
    assert_eq!(v["certificate"]["valid"], true);
    let (code, v) = json(&["sohs", "--max-denom-len", "0", "--", "-1"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "NotFoundWithinCaps");
    let (code, v) = json(&["sohs", "q^2", "--mode", "marshall", "--epsilon", "1", "--t", "s2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "Found");
}

#[test]
fn rep_check_report_envelope() {
    let (code, v) = json(&["rep-check", "--kind", "schroedinger", "--expr", "p^2+q^2+1", "--N", "32,64", "--margin", "1"]);
    assert_eq!(code, 0);
    for key in ["check", "preset", "params", "N_sequence", "residuals", "decision"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v.get("matrix").is_none());
    assert_eq!(v["decision"], "margin_positive");
    let (_, v) = json(&["rep-check", "--kind", "schroedinger", "--expr", "q^2", "--N", "4", "--dump-matrices"]);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
    let (code, v) = json(&["--preset", "axb", "rep-check", "--kind", "axb-scalar", "--gamma", "-2/3", "--resolvent"]);
    assert_eq!(code, 0);
    assert_eq!(v["decision"], "passed");
}

#[test]
fn hyp2_and_sturm() {
    let (code, v) = json(&["hyp2", "p^2*q^2 + 2*i*p*q + p^2 + q^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["decision"], "Holds");
    let (_, v) = json(&["hyp2", "p^2 + q^2 + 1"]);
    assert_eq!(v["decision"], "Fails");
    let (_, v) = json(&["sturm", "t^4 + 1", "--var", "t"]);
    assert_eq!(v["strictly_positive"], true);
    let (_, v) = json(&["sturm", "x^2 - 2*x + 1"]);
    assert_eq!(v["strictly_positive"], false);
}

#[test]
fn vanish_and_pi_rho() {
    let (code, v) = json(&["--preset", "axb", "vanish", "1", "--s", "s[0]", "--t", "sb"]);
    assert_eq!(code, 0);
    assert!(v.get("Vanishes").is_some());
    let (code, v) = json(&["pi-rho", "x", "--atoms", "0,0;1/2,1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["torsion"], serde_json::json!([0]));
    assert!((v["pi_rho"][0].as_f64().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn errors_exit_one() {
    let (code, _, err) = ncpos(&["nf", "p*z"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown generator"));
    let (code, _, _) = ncpos(&["nf", "p q"]);
    assert_eq!(code, 1);
    let (code, _, _) = ncpos(&["--preset", "axb", "--alpha", "-2", "nf", "a"]);
    assert_eq!(code, 1);
    let (code, _, _) = ncpos(&["no-such-command"]);
    assert_eq!(code, 1);
}
