use lefschetz::fixtures::{builtin_model, builtin_pencil};
use lefschetz::model::projective_space;
use lefschetz::suite::{emit_operator, parse_d_range, parse_suites, run, Input, Params, RunError, Selection, SUITES};

fn select(suites: &[&str], input: Input) -> Selection {
    Selection { suites: parse_suites(suites).unwrap(), input, params: Params::default() }
}

#[test]
fn suite_names() {
    assert_eq!(parse_suites(&["all"]).unwrap(), SUITES.to_vec());
    assert_eq!(parse_suites(&["chern", "sl2", "sl2"]).unwrap(), vec!["sl2", "chern"]);
    assert!(matches!(parse_suites(&["bogus"]), Err(RunError::UnknownSuite(s)) if s == "bogus"));
}

#[test]
fn d_ranges() {
    assert_eq!(parse_d_range("1..4").unwrap(), (1, 4));
    assert!(parse_d_range("4..1").is_err());
    assert!(parse_d_range("x").is_err());
}

#[test]
fn model_input_skips_pencil_suites() {
    let r = run(&select(&["all"], Input::Model(projective_space(2)))).unwrap();
    assert!(r.all_passed());
    let skipped = r.parameters["skipped"].as_array().unwrap();
    assert!(skipped.iter().any(|s| s == "mainthm"));
    assert!(matches!(run(&select(&["leray"], Input::Model(projective_space(2)))), Err(RunError::NeedsPencil(_))));
}

#[test]
fn invalid_model_is_a_validation_error() {
    let bad = projective_space(2).with_xi(vec![lefschetz::linalg::q(0)]).unwrap();
    match run(&select(&["sl2"], Input::Model(bad))) {
        Err(RunError::Validation(v)) => assert!(v.failures().iter().any(|f| f.name.starts_with("hard-lefschetz"))),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn multiplier_override_is_recorded() {
    let p = builtin_pencil("hyperplane-p3").unwrap();
    let sel = Selection { suites: parse_suites(&["power"]).unwrap(), input: Input::Pencil(p), params: Params { m: Some(3), ..Default::default() } };
    let r = run(&sel).unwrap();
    assert!(r.all_passed());
    assert_eq!(r.parameters["power.m"], 3);
    let bad = Selection { params: Params { m: Some(0), ..Default::default() }, ..sel };
    assert!(matches!(run(&bad), Err(RunError::Parameter(_))));
}

#[test]
fn emitted_operators() {
    let p3 = Input::Model(builtin_model("p3").unwrap());
    let v: serde_json::Value = serde_json::from_str(&emit_operator(&p3, "Lambda", &Params::default()).unwrap()).unwrap();
    assert_eq!(v["degree"], -2);
    let sources: Vec<u64> = v["blocks"].as_array().unwrap().iter().map(|b| b["source_degree"].as_u64().unwrap()).collect();
    assert_eq!(sources, vec![2, 4, 6]);
    assert!(v["blocks"].as_array().unwrap().iter().all(|b| b["rows"] == serde_json::json!([["1"]])));

    let pencil = Input::Pencil(builtin_pencil("p1cubed").unwrap());
    for name in ["H_rho", "Lambda_rho", "cLambda_rho", "L_rho", "Lambda-p", "pi:1,2", "pi_rho:2", "p_rho:1"] {
        assert!(emit_operator(&pencil, name, &Params::default()).is_ok(), "{name}");
    }
    assert!(matches!(emit_operator(&p3, "nope", &Params::default()), Err(RunError::UnknownOperator(_))));
}
