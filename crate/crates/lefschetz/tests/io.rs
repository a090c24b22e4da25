use lefschetz::fixtures::{builtin_model, builtin_pencil, builtin_pencils};
use lefschetz::io::{
    load_model, load_pencil, load_section, model_from_json, model_to_json, pencil_from_json, pencil_to_json, section_to_json,
    IoError,
};
use proptest::prelude::*;

#[test]
fn pencils_round_trip() {
    for p in builtin_pencils() {
        let text = pencil_to_json(&p);
        assert_eq!(pencil_from_json(&text, "mem", None).unwrap(), p, "{}", p.name);
        assert_eq!(pencil_to_json(&pencil_from_json(&text, "mem", None).unwrap()), text);
    }
}

#[test]
fn model_references_resolve_relative_to_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = builtin_pencil("hyperplane-p3").unwrap();
    std::fs::write(dir.path().join("y.json"), model_to_json(&p.y)).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&pencil_to_json(&p)).unwrap();
    doc["y"] = "y.json".into();
    doc["x"] = "builtin:p3".into();
    let path = dir.path().join("pencil.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(load_pencil(&path).unwrap(), p);

    let s = p.section();
    let spath = dir.path().join("section.json");
    std::fs::write(&spath, section_to_json(&s)).unwrap();
    assert_eq!(load_section(&spath).unwrap(), s);
}

#[test]
fn builtin_names() {
    assert_eq!(load_model("builtin:dp6").unwrap(), builtin_model("dp6").unwrap());
    assert!(matches!(load_model("builtin:nope"), Err(IoError::UnknownBuiltin(_))));
    assert!(matches!(load_pencil("builtin:nope"), Err(IoError::UnknownBuiltin(_))));
    assert!(matches!(load_model("/nonexistent/model.json"), Err(IoError::Read { .. })));
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let err = model_from_json("{\n  \"n\": 1,\n  oops\n}", "m.json").unwrap_err();
    match err {
        IoError::Syntax { location, .. } => assert_eq!(location, "m.json:3:3"),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let mut doc: serde_json::Value = serde_json::from_str(&model_to_json(&builtin_model("p1").unwrap())).unwrap();
    doc["extra"] = 1.into();
    assert!(matches!(model_from_json(&doc.to_string(), "m"), Err(IoError::Syntax { .. })));
}

#[test]
fn invalid_values_name_their_location() {
    let mut doc: serde_json::Value = serde_json::from_str(&model_to_json(&builtin_model("p1").unwrap())).unwrap();
    doc["trace"][0] = "one".into();
    let err = model_from_json(&doc.to_string(), "m").unwrap_err();
    assert!(err.to_string().starts_with("m.trace[0]"), "{err}");

    let mut doc: serde_json::Value = serde_json::from_str(&model_to_json(&builtin_model("p1").unwrap())).unwrap();
    doc["mult"][0]["result"] = serde_json::json!(["1", "2"]);
    let err = model_from_json(&doc.to_string(), "m").unwrap_err();
    assert!(err.to_string().starts_with("m.mult[0]"), "{err}");
}

#[test]
fn block_shapes_are_checked() {
    let p = builtin_pencil("hyperplane-p3").unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&pencil_to_json(&p)).unwrap();
    doc["iota"][0]["matrix"] = serde_json::json!([["1", "0"]]);
    let err = pencil_from_json(&doc.to_string(), "p", None).unwrap_err();
    assert!(err.to_string().contains("p.iota[0]"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn models_round_trip(name in prop::sample::select(vec!["p2", "p1xp3", "p2xp2", "p1xp1xp1", "dp6", "elliptic", "quadric-surface", "blowup-p1cubed"])) {
        let m = builtin_model(name).unwrap();
        let text = model_to_json(&m);
        prop_assert_eq!(model_from_json(&text, "mem").unwrap(), m);
    }
}
