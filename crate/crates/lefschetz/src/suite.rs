//! Suite selection, execution in dependency order, and operator dumps.

use serde_json::json;
use thiserror::Error;

use crate::absolute::LefschetzContext;
use crate::blowup::blowup_model;
use crate::bootstrap::BootstrapPipeline;
use crate::chern::{chern_suite, pencil_chern, ChernData};
use crate::closure::ring_suite;
use crate::graded::GradedOperator;
use crate::hyperplane::SectionContext;
use crate::linalg::fmt_q;
use crate::model::PoincareModel;
use crate::relative::PencilContext;
use crate::report::{Report, Witness};
use crate::section::PencilDatum;

/// Suite names in execution order.
pub const SUITES: [&str; 13] = [
    "validate",
    "sl2",
    "decompose",
    "ring",
    "theta",
    "lemabc",
    "prinduccion",
    "leray",
    "relative",
    "power",
    "structural",
    "mainthm",
    "chern",
];

const MODEL_SUITES: [&str; 4] = ["validate", "sl2", "decompose", "ring"];

#[derive(Debug, Error)]
pub enum RunError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("suite `{0}` needs a pencil")]
    NeedsPencil(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("input failed validation")]
    Validation(Report),
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
}

#[derive(Clone, Debug)]
pub enum Input {
    Model(PoincareModel),
    Pencil(PencilDatum),
}

#[derive(Clone, Debug, Default)]
pub struct Params {
    pub m: Option<i64>,
    pub j_max: Option<usize>,
    pub r_max: Option<usize>,
    pub d_range: Option<(i64, i64)>,
    pub samples: Option<usize>,
    pub chern: Option<ChernData>,
}

#[derive(Clone, Debug)]
pub struct Selection {
    pub suites: Vec<String>,
    pub input: Input,
    pub params: Params,
}

/// Expands `all`, rejects unknown names, and sorts into execution order.
pub fn parse_suites<S: AsRef<str>>(names: &[S]) -> Result<Vec<String>, RunError> {
    let mut chosen = Vec::new();
    for s in names {
        let s = s.as_ref();
        if s == "all" {
            chosen.extend(SUITES.iter().map(|x| x.to_string()));
        } else if SUITES.contains(&s) {
            chosen.push(s.to_string());
        } else {
            return Err(RunError::UnknownSuite(s.to_string()));
        }
    }
    chosen.sort_by_key(|s| SUITES.iter().position(|x| x == s));
    chosen.dedup();
    Ok(chosen)
}

/// Parses `a..b` or `a..=b` (both inclusive) or a single integer.
pub fn parse_d_range(s: &str) -> Result<(i64, i64), RunError> {
    let bad = || RunError::Parameter(format!("d-range `{s}` is not of the form a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn construction_failure(suite: &str, what: &str, err: String) -> Report {
    let mut r = Report::new(suite);
    r.fail(format!("construct {what}"), Witness { location: what.into(), lhs: err, rhs: "constructible".into() });
    r
}

fn model_suite(name: &str, model: &PoincareModel, samples: usize) -> Report {
    if name == "validate" {
        return model.validate();
    }
    let ctx = match LefschetzContext::new(model) {
        Ok(c) => c,
        Err(e) => return construction_failure(name, "Lefschetz context", e.to_string()),
    };
    match name {
        "sl2" => ctx.sl2_verify(samples),
        "decompose" => ctx.decomposition_verify(),
        "ring" => ring_suite(&ctx),
        _ => unreachable!("not a model suite"),
    }
}

fn pencil_validation(p: &PencilDatum) -> Report {
    let mut r = p.validate();
    let b = blowup_model(p);
    r.absorb("X~", b.model.validate());
    r.absorb("X~", b.verify_maps(p));
    r
}

/// Runs the selection. Inputs that fail validation are an error; failures
/// inside later suites are reported, not raised.
pub fn run(sel: &Selection) -> Result<Report, RunError> {
    let samples = sel.params.samples.unwrap_or(10);
    let mut out = Report::new(&sel.suites.join("+"));
    match &sel.input {
        Input::Model(model) => {
            let v = model.validate();
            if !v.all_passed() {
                return Err(RunError::Validation(v));
            }
            let mut skipped = Vec::new();
            for s in &sel.suites {
                if MODEL_SUITES.contains(&s.as_str()) {
                    out.absorb(s, model_suite(s, model, samples));
                } else if let (true, Some(data)) = (s == "chern", &sel.params.chern) {
                    out.absorb(s, chern_report(data, &sel.params, Some(model)));
                } else if sel.suites.len() == 1 && s == "chern" {
                    return Err(RunError::Parameter("chern needs --chern and --deg-x".into()));
                } else if sel.suites.len() == 1 {
                    return Err(RunError::NeedsPencil(s.clone()));
                } else {
                    skipped.push(s.clone());
                }
            }
            if !skipped.is_empty() {
                out.param("skipped", skipped);
            }
        }
        Input::Pencil(p) => {
            let p = match sel.params.m {
                Some(m) => p.with_m(m).map_err(|e| RunError::Parameter(e.to_string()))?,
                None => p.clone(),
            };
            let v = pencil_validation(&p);
            if !v.all_passed() {
                return Err(RunError::Validation(v));
            }
            let mut pipeline: Option<Result<BootstrapPipeline, String>> = None;
            for s in &sel.suites {
                let report = if s == "validate" {
                    v.clone()
                } else if MODEL_SUITES.contains(&s.as_str()) {
                    let mut r = Report::new(s);
                    let xt = blowup_model(&p).model;
                    for (tag, m) in [("X", &p.x), ("Y", &p.y), ("Delta", &p.delta), ("X~", &xt)] {
                        r.absorb(tag, model_suite(s, m, samples));
                    }
                    r
                } else if s == "chern" {
                    let data = match sel.params.chern.clone() {
                        Some(d) => Some(d),
                        None => pencil_chern(&p.name).map(|(d, _)| d),
                    };
                    match data {
                        Some(d) => {
                            let mut r = chern_report(&d, &sel.params, Some(&p.x));
                            if let Some(c) = crate::chern::pencil_consistency(&p) {
                                r.absorb("pencil", c);
                            }
                            r
                        }
                        None if sel.suites.len() == 1 => {
                            return Err(RunError::Parameter(format!("no Chern data for pencil `{}`; pass --chern and --deg-x", p.name)))
                        }
                        None => continue,
                    }
                } else {
                    let bp = pipeline.get_or_insert_with(|| BootstrapPipeline::new(&p));
                    match bp {
                        Err(e) => construction_failure(s, "pencil context", e.clone()),
                        Ok(bp) => pencil_suite(s, bp, &sel.params, samples),
                    }
                };
                out.absorb(s, report);
            }
        }
    }
    Ok(out)
}

fn chern_report(data: &ChernData, params: &Params, model: Option<&PoincareModel>) -> Report {
    let (a, b) = params.d_range.unwrap_or((1, 3));
    let mut data = data.clone();
    if let Some(m) = model.filter(|m| m.n() == data.n()) {
        data.betti = (0..=m.top()).map(|k| m.betti(k) as i64).collect();
    }
    chern_suite(&data, a..=b)
}

fn pencil_suite(name: &str, bp: &BootstrapPipeline, params: &Params, samples: usize) -> Report {
    let pc = &bp.pencil;
    let n = bp.n();
    let j_max = params.j_max.unwrap_or(2 * n);
    let sections = || -> Vec<(&'static str, Result<SectionContext, String>)> {
        let p = &pc.leray.pencil;
        vec![
            ("X>Y", SectionContext::new(&p.section()).map_err(|e| e.to_string())),
            ("Y>Delta", SectionContext::new(&p.base_section()).map_err(|e| e.to_string())),
        ]
    };
    let per_section = |f: &dyn Fn(&SectionContext) -> Report| {
        let mut r = Report::new(name);
        for (tag, s) in sections() {
            match s {
                Ok(s) => r.absorb(tag, f(&s)),
                Err(e) => r.absorb(tag, construction_failure(name, "section context", e)),
            }
        }
        r
    };
    match name {
        "theta" => per_section(&|s| s.theta_suite()),
        "lemabc" => per_section(&|s| s.lemabc_suite()),
        "prinduccion" => {
            let mut r = Report::new(name);
            for (tag, s) in sections() {
                match s {
                    Ok(s) => {
                        let jm = params.j_max.map_or(2 * s.n(), |j| (j as i64 - 2 * (n - s.n()) as i64).max(0) as usize);
                        r.absorb(tag, s.induction_suite(jm));
                    }
                    Err(e) => r.absorb(tag, construction_failure(name, "section context", e)),
                }
            }
            r
        }
        "leray" => pc.leray.leray_suite(),
        "relative" => pc.relative_suite(samples),
        "power" => pc.tilde_power_suite(params.r_max.unwrap_or(n)),
        "structural" => pc.structural_suite(),
        "mainthm" => bp.mainthm_suite(j_max),
        _ => unreachable!("unknown pencil suite"),
    }
}

/// Exact per-degree blocks of a named operator as a JSON document.
pub fn emit_operator(input: &Input, name: &str, params: &Params) -> Result<String, RunError> {
    let unknown = || RunError::UnknownOperator(name.to_string());
    let index = |s: &str| -> Result<usize, RunError> { s.parse().map_err(|_| unknown()) };
    let op: GradedOperator = match input {
        Input::Model(m) => {
            let ctx = LefschetzContext::new(m).map_err(|e| RunError::Parameter(e.to_string()))?;
            absolute_operator(&ctx, name, &index)?.ok_or_else(unknown)?
        }
        Input::Pencil(p) => {
            let p = match params.m {
                Some(m) => p.with_m(m).map_err(|e| RunError::Parameter(e.to_string()))?,
                None => p.clone(),
            };
            let bp = BootstrapPipeline::new(&p).map_err(RunError::Parameter)?;
            match absolute_operator(&bp.pencil.x, name, &index)? {
                Some(op) => op,
                None => pencil_operator(&bp, name, &index)?.ok_or_else(unknown)?,
            }
        }
    };
    let blocks: Vec<serde_json::Value> = (0..op.src_dims().len())
        .filter_map(|k| {
            let t = op.target_of(k)?;
            let b = op.block(k);
            if b.rows() == 0 || b.cols() == 0 {
                return None;
            }
            let rows: Vec<Vec<String>> = b.to_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect();
            Some(json!({ "source_degree": k, "target_degree": t, "rows": rows }))
        })
        .collect();
    let doc = json!({ "operator": name, "degree": op.degree(), "blocks": blocks });
    Ok(serde_json::to_string_pretty(&doc).expect("serializable"))
}

type IndexFn<'a> = dyn Fn(&str) -> Result<usize, RunError> + 'a;

fn absolute_operator(ctx: &LefschetzContext, name: &str, index: &IndexFn) -> Result<Option<GradedOperator>, RunError> {
    let top = ctx.model.top();
    let bad = || RunError::UnknownOperator(name.to_string());
    Ok(Some(match name {
        "L" => ctx.l.clone(),
        "Lambda" => ctx.lambda(),
        "cLambda" => ctx.clambda(),
        "H" => ctx.h_op(),
        _ => {
            if let Some(i) = name.strip_prefix("pi:").filter(|s| !s.contains(',')) {
                let i = index(i)?;
                (i <= top).then(|| ctx.kunneth_projector(i)).ok_or_else(bad)?
            } else if let Some(i) = name.strip_prefix("p:") {
                let i = index(i)?;
                (i <= top).then(|| ctx.primitive_projector(i)).ok_or_else(bad)?
            } else if let Some(i) = name.strip_prefix("theta:") {
                let i = index(i)?;
                (i < ctx.n()).then(|| ctx.theta(i)).ok_or_else(bad)?
            } else {
                return Ok(None);
            }
        }
    }))
}

fn pencil_operator(bp: &BootstrapPipeline, name: &str, index: &IndexFn) -> Result<Option<GradedOperator>, RunError> {
    let pc: &PencilContext = &bp.pencil;
    let le = &pc.leray;
    let rel_top = le.relative_top();
    let bad = || RunError::UnknownOperator(name.to_string());
    Ok(Some(match name {
        "H_rho" => pc.rel.h_rho.clone(),
        "Lambda_rho" => pc.rel.lambda_rho.clone(),
        "cLambda_rho" => pc.rel.clambda_rho.clone(),
        "L_rho" => pc.rel.l_rho.clone(),
        "Lambda-p" => bp.assemble_lambda_minus_p().0,
        _ => {
            if let Some(rest) = name.strip_prefix("pi:") {
                let (k, e) = rest.split_once(',').ok_or_else(bad)?;
                let (k, e) = (index(k)?, index(e)?);
                (k <= rel_top && e <= 2).then(|| le.pi(k as i64, e)).ok_or_else(bad)?
            } else if let Some(k) = name.strip_prefix("pi_rho:") {
                let k = index(k)?;
                (k <= rel_top).then(|| le.pi_rho(k as i64)).ok_or_else(bad)?
            } else if let Some(k) = name.strip_prefix("p_rho:") {
                let k = index(k)?;
                (k <= rel_top).then(|| pc.rel.p_rho(le, k)).ok_or_else(bad)?
            } else {
                return Ok(None);
            }
        }
    }))
}
