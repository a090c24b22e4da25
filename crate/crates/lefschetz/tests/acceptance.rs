//! End-to-end acceptance battery. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any criterion fails.

use lefschetz::blowup::blowup_model;
use lefschetz::chern::{chi_delta, projective_space_chern};
use lefschetz::fixtures::{builtin_model, builtin_pencil, builtin_pencils, model_battery, PENCIL_NAMES};
use lefschetz::hyperplane::SectionContext;
use lefschetz::linalg::q;
use lefschetz::report::Report;
use lefschetz::suite::{parse_suites, run, Input, Params, Selection};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn run_on(suites: &[&str], input: Input, params: Params) -> Result<Report, String> {
    let sel = Selection { suites: parse_suites(suites).map_err(|e| e.to_string())?, input, params };
    run(&sel).map_err(|e| e.to_string())
}

fn pencil(name: &str) -> Input {
    Input::Pencil(builtin_pencil(name).expect("builtin pencil"))
}

fn all_pass(what: &str, r: &Report) -> Outcome {
    match r.failures().first() {
        None if !r.identities.is_empty() => Ok(()),
        None => Err(format!("{what}: no identities checked")),
        Some(f) => Err(format!("{what}: {} failed ({:?})", f.name, f.witness)),
    }
}

/// The model battery, the blow-ups, and the pieces of every pencil.
fn validated_models() -> Vec<(String, lefschetz::model::PoincareModel)> {
    let mut out = model_battery();
    for p in builtin_pencils() {
        out.push((format!("blowup-{}", p.name), blowup_model(&p).model));
        out.push((format!("{}.Y", p.name), p.y.clone()));
        out.push((format!("{}.Delta", p.name), p.delta.clone()));
    }
    out
}

fn models_validate() -> Outcome {
    for (name, m) in validated_models() {
        all_pass(&name, &m.validate())?;
    }
    for p in builtin_pencils() {
        all_pass(&p.name, &p.validate())?;
    }
    Ok(())
}

fn sl2_brackets() -> Outcome {
    for (name, m) in validated_models() {
        let r = run_on(&["sl2"], Input::Model(m), Params { samples: Some(10), ..Default::default() })?;
        all_pass(&name, &r)?;
        let sampled = r.identities.iter().filter(|i| i.name.contains("[H, u")).count();
        if sampled < 10 {
            return Err(format!("{name}: commutator law checked on {sampled} operators"));
        }
    }
    Ok(())
}

fn ring_closures() -> Outcome {
    for (name, m) in validated_models() {
        all_pass(&name, &run_on(&["ring"], Input::Model(m), Params::default())?)?;
    }
    for name in ["p1xp1xp1", "quadric-surface", "dp6", "elliptic"] {
        let m = builtin_model(name).expect("builtin model");
        all_pass(name, &run_on(&["ring"], Input::Model(m), Params::default())?)?;
    }
    for name in PENCIL_NAMES {
        all_pass(name, &run_on(&["ring"], pencil(name), Params::default())?)?;
    }
    Ok(())
}

fn theta() -> Outcome {
    for p in builtin_pencils() {
        for (tag, s) in [("X>Y", p.section()), ("Y>Delta", p.base_section())] {
            let ctx = SectionContext::new(&s).map_err(|e| e.to_string())?;
            let r = ctx.theta_suite();
            all_pass(&format!("{}/{tag}", p.name), &r)?;
            if r.identities.len() != 2 * ctx.n() {
                return Err(format!("{}/{tag}: expected both theta checks for each i < n", p.name));
            }
        }
    }
    Ok(())
}

fn leray() -> Outcome {
    for (name, expected) in [("hyperplane-p3", 0), ("quadric-p3", 2), ("p1cubed", 2)] {
        let r = run_on(&["leray"], pencil(name), Params::default())?;
        all_pass(name, &r)?;
        let dim = r.parameters.get("leray.dim_pi_mid_1").and_then(|v| v.as_u64());
        if dim != Some(expected) {
            return Err(format!("{name}: dim Im pi^(n-1,1) = {dim:?}, expected {expected}"));
        }
    }
    Ok(())
}

fn relative() -> Outcome {
    for name in PENCIL_NAMES {
        all_pass(name, &run_on(&["relative", "structural"], pencil(name), Params::default())?)?;
    }
    Ok(())
}

fn tilde_powers() -> Outcome {
    for name in PENCIL_NAMES {
        for m in 1..=3 {
            let params = Params { m: Some(m), r_max: Some(3), ..Default::default() };
            all_pass(&format!("{name} m={m}"), &run_on(&["power"], pencil(name), params)?)?;
        }
    }
    Ok(())
}

fn main_theorem() -> Outcome {
    for name in PENCIL_NAMES {
        let r = run_on(&["mainthm"], pencil(name), Params::default())?;
        all_pass(name, &r)?;
        for key in ["mainthm.lemafinal.i_range", "mainthm.finalsi.j_range", "mainthm.reconstruct.sandwich_factor"] {
            if !r.parameters.contains_key(key) {
                return Err(format!("{name}: range parameter {key} not recorded"));
            }
        }
    }
    let r = run_on(&["mainthm"], pencil("p1cubed"), Params::default())?;
    match r.parameters.get("mainthm.assembly.rank_p_n_plus_1").and_then(|v| v.as_u64()) {
        Some(2) => Ok(()),
        other => Err(format!("p1cubed: rank p^(n+1) = {other:?}, expected 2")),
    }
}

fn liftability() -> Outcome {
    for (name, feasible) in [("hyperplane-p3", true), ("quadric-p3", true), ("p1cubed", false)] {
        let r = run_on(&["mainthm"], pencil(name), Params::default())?;
        let got = r.parameters.get("mainthm.pnplus1.lift_feasible").and_then(|v| v.as_bool());
        if got != Some(feasible) {
            return Err(format!("{name}: lift_feasible = {got:?}, expected {feasible}"));
        }
    }
    Ok(())
}

fn induction_bound() -> Outcome {
    let n = 3;
    let short = run_on(&["prinduccion"], pencil("hyperplane-p3"), Params { j_max: Some(2 * n - 2), ..Default::default() })?;
    let failures = short.failures();
    let Some(first) = failures.first() else {
        return Err("j_max = 2n-2 unexpectedly passes".into());
    };
    let location = first.witness.as_ref().map(|w| w.location.clone()).unwrap_or_default();
    if !first.name.starts_with("prinduccion/X>Y/") || !location.contains(&format!("H^{}", 2 * n)) {
        return Err(format!("j_max = 2n-2 fails at {} ({location}), expected a witness in H^{}", first.name, 2 * n));
    }
    // The base section Y > Delta has relative dimension n-1, so its top is H^{2n-2}.
    let outside = |f: &&lefschetz::report::IdentityResult| {
        let top = if f.name.starts_with("prinduccion/X>Y/") { 2 * n } else { 2 * n - 2 };
        !f.name.ends_with(&format!("on H^{top}"))
    };
    if let Some(f) = failures.iter().copied().find(outside) {
        return Err(format!("j_max = 2n-2 fails away from the top degree: {}", f.name));
    }
    let full = run_on(&["prinduccion"], pencil("hyperplane-p3"), Params { j_max: Some(2 * n), ..Default::default() })?;
    all_pass("j_max = 2n", &full)
}

fn chern() -> Outcome {
    let data = projective_space_chern(3);
    let chi = chi_delta(&data.chern, &data.deg_x, 3);
    let expected = [q(0), q(0), q(4), q(-2)];
    if chi.coeffs() != expected {
        return Err(format!("chi(Delta(d)) on P^3 = {chi}"));
    }
    for (d, v) in [(1, 2), (2, 0), (3, -18)] {
        if chi.eval(&q(d)) != q(v) {
            return Err(format!("chi at d={d} is {}, expected {v}", chi.eval(&q(d))));
        }
    }
    if chi.degree() != Some(3) {
        return Err(format!("degree in d is {:?}", chi.degree()));
    }
    for name in PENCIL_NAMES {
        all_pass(name, &run_on(&["chern"], pencil(name), Params::default())?)?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    for name in PENCIL_NAMES {
        let a = run_on(&["all"], pencil(name), Params::default())?.to_json();
        let b = run_on(&["all"], pencil(name), Params::default())?.to_json();
        if a != b {
            return Err(format!("{name}: reports differ"));
        }
    }
    for name in ["p3", "p1xp2"] {
        let m = || Input::Model(builtin_model(name).expect("builtin model"));
        if run_on(&["all"], m(), Params::default())?.to_json() != run_on(&["all"], m(), Params::default())?.to_json() {
            return Err(format!("{name}: reports differ"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("model validation", models_validate),
        ("sl2 brackets", sl2_brackets),
        ("operator-ring closures", ring_closures),
        ("theta chains", theta),
        ("leray splitting", leray),
        ("relative sl2", relative),
        ("tilde power formulas", tilde_powers),
        ("main theorem", main_theorem),
        ("non-liftability", liftability),
        ("induction bound", induction_bound),
        ("chern euler", chern),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match check() {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", k + 1, start.elapsed()),
            Err(e) => {
                println!("FAIL {:>2} {name}: {e}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
