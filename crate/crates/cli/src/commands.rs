//! The subcommands. Each returns an exit code and the rendered report.

use mixbraid::analysis::{image_finiteness, ImageVerdict};
use mixbraid::braid::{relations_general, relations_m2, BraidWord, MixedBraidSpec};
use mixbraid::burau::{burau_word, duality_check, evaluate_at, reduce, theta_via_burau};
use mixbraid::cover::{
    chevalley_weil_signature, eigenspace_dim, genus, infinity_order, primed_characters, Character, CoverSpec,
};
use mixbraid::rep::{
    gram_determinant_check, gram_matrix, is_irreducible, linear_relation_check, signature_consistency,
    signature_from_gram, tau_report, verify_unitary, RepError, ThetaRep,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{JobConfig, OutputFormat, RhoChoice};
use crate::render::{grid, laurent_json, matrix_json, matrix_text};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn domain(e: impl ToString) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: u8,
    pub output: String,
}

fn emit(cfg: &JobConfig, value: &Value, text: String, code: u8) -> Report {
    let output = match cfg.output {
        OutputFormat::Json => serde_json::to_string_pretty(value).expect("serializable report") + "\n",
        OutputFormat::Text => text,
    };
    Report { code, output }
}

fn braid_spec(cfg: &JobConfig) -> Result<MixedBraidSpec, CliError> {
    if cfg.parts.is_empty() {
        return Err(usage("--parts is required"));
    }
    MixedBraidSpec::new(cfg.parts.clone()).map_err(usage)
}

fn cover(cfg: &JobConfig) -> Result<CoverSpec, CliError> {
    let spec = braid_spec(cfg)?;
    if cfg.degrees.is_empty() {
        return Err(usage("--degrees is required"));
    }
    CoverSpec::from_spec(spec, cfg.degrees.clone()).map_err(usage)
}

/// The configured characters; `required` turns a missing choice into a usage
/// error, otherwise it yields none.
fn characters(cfg: &JobConfig, c: &CoverSpec, required: bool) -> Result<Vec<Character>, CliError> {
    match &cfg.rho {
        RhoChoice::Unset if required => Err(usage("--rho or --all-rho is required")),
        RhoChoice::Unset => Ok(Vec::new()),
        RhoChoice::All => Ok(primed_characters(c).collect()),
        RhoChoice::Exps(e) => Ok(vec![Character::new(c, e.clone()).map_err(usage)?]),
    }
}

fn word(cfg: &JobConfig, spec: &MixedBraidSpec) -> Result<BraidWord, CliError> {
    let text = cfg.word.as_deref().ok_or_else(|| usage("--word or --gen is required"))?;
    let w = BraidWord::parse(text, cfg.raw).map_err(usage)?;
    w.validate(spec).map_err(usage)?;
    Ok(w)
}

fn rho_label(rho: &Character) -> String {
    let e: Vec<String> = rho.exps().iter().map(u32::to_string).collect();
    format!("({})", e.join(","))
}

fn rep_error(e: RepError) -> CliError {
    match e {
        RepError::DegenerateCharacter => domain(
            "θ_ρ needs ρ_jρ_k ≠ 1 for j < k and ρ_j ≠ −1 on blocks of size ≥ 2; \
             otherwise some generator has a zero self-pairing and is not a reflection",
        ),
        other => domain(other),
    }
}

pub fn cmd_gram(cfg: &JobConfig) -> Result<Report, CliError> {
    let c = cover(cfg)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for rho in characters(cfg, &c, true)? {
        let m = gram_matrix(&c, &rho).map_err(rep_error)?;
        let (pos, neg) = signature_from_gram(&m).map_err(domain)?;
        let mj = matrix_json(&m, cfg.precision);
        let det = m.det();
        text.push_str(&format!(
            "ρ = {}: rank {}, signature (+{pos}, −{neg}), det {det}\n{}",
            rho_label(&rho),
            m.rank(),
            matrix_text(&mj)
        ));
        results.push(json!({
            "rho": rho.exps(),
            "gram": mj,
            "rank": m.rank(),
            "determinant": det.to_string(),
            "signature": {"positive": pos, "negative": neg},
        }));
    }
    let v = json!({"parts": c.parts(), "degrees": c.degrees(), "results": results});
    Ok(emit(cfg, &v, text, EXIT_OK))
}

pub fn cmd_rep(cfg: &JobConfig) -> Result<Report, CliError> {
    let c = cover(cfg)?;
    let w = word(cfg, &c.spec)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for rho in characters(cfg, &c, true)? {
        let m = if w.raw {
            if !rho.reflections_defined(&c) {
                return Err(rep_error(RepError::DegenerateCharacter));
            }
            theta_via_burau(&c, &rho, &w).map_err(rep_error)?
        } else {
            ThetaRep::new(&c, &rho).and_then(|mut t| t.word(&w)).map_err(rep_error)?
        };
        let mj = matrix_json(&m, cfg.precision);
        text.push_str(&format!("θ_ρ({w}) at ρ = {}\n{}", rho_label(&rho), matrix_text(&mj)));
        results.push(json!({"rho": rho.exps(), "matrix": mj}));
    }
    let v = json!({"parts": c.parts(), "degrees": c.degrees(), "word": w.to_string(), "results": results});
    Ok(emit(cfg, &v, text, EXIT_OK))
}

pub fn cmd_burau(cfg: &JobConfig) -> Result<Report, CliError> {
    let spec = braid_spec(cfg)?;
    let w = word(cfg, &spec)?;
    let full = burau_word(&w, &spec).map_err(domain)?;
    let m = if cfg.reduced { reduce(&full, &spec) } else { full };
    let entries = laurent_json(&m);
    let kind = if cfg.reduced { "reduced colored Burau" } else { "colored Burau" };
    let mut text = format!("{kind} matrix of {w}\n{}", grid(&entries));
    let mut evaluated = Vec::new();
    if cfg.rho != RhoChoice::Unset {
        let c = cover(cfg)?;
        for rho in characters(cfg, &c, false)? {
            let e = matrix_json(&evaluate_at(&m, &c, &rho, false), cfg.precision);
            text.push_str(&format!("at t ↦ ρ = {}\n{}", rho_label(&rho), matrix_text(&e)));
            evaluated.push(json!({"rho": rho.exps(), "matrix": e}));
        }
    }
    let mut v = json!({"parts": spec.parts(), "word": w.to_string(), "reduced": cfg.reduced, "matrix": entries});
    if !evaluated.is_empty() {
        v["evaluated"] = Value::Array(evaluated);
    }
    Ok(emit(cfg, &v, text, EXIT_OK))
}

pub fn cmd_cover(cfg: &JobConfig) -> Result<Report, CliError> {
    let c = cover(cfg)?;
    let g = genus(&c).map_err(domain)?;
    let (f, e) = infinity_order(&c);
    let mut text = format!(
        "cover Λ = {} d = {:?}: genus={g}, f={f}, e={e}, |Γ|={}\n",
        c.spec,
        c.degrees(),
        c.group_order()
    );
    let mut chars = Vec::new();
    for rho in characters(cfg, &c, false)? {
        let dim = eigenspace_dim(&c, &rho);
        let sig = chevalley_weil_signature(&c, &rho).ok();
        text.push_str(&format!("  ρ = {}: dim {dim}", rho_label(&rho)));
        if let Some((r, s)) = sig {
            text.push_str(&format!(", signature (r, s) = ({r}, {s})"));
        }
        text.push_str(&format!(", nondegenerate {}\n", rho.is_primed() && rho.is_nondegenerate(&c)));
        chars.push(json!({
            "rho": rho.exps(),
            "dim": dim,
            "signature": sig.map(|(r, s)| json!({"r": r, "s": s})),
            "primed": rho.is_primed(),
            "nondegenerate": rho.is_primed() && rho.is_nondegenerate(&c),
        }));
    }
    let v = json!({
        "parts": c.parts(),
        "degrees": c.degrees(),
        "genus": g.to_string(),
        "f": f,
        "e": e.to_string(),
        "group_order": c.group_order().to_string(),
        "characters": chars,
    });
    Ok(emit(cfg, &v, text, EXIT_OK))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn check(name: &'static str, r: Result<(bool, String), RepError>) -> CheckResult {
    match r {
        Ok((true, detail)) => CheckResult { name, status: Status::Pass, detail },
        Ok((false, detail)) => CheckResult { name, status: Status::Fail, detail },
        Err(e) => CheckResult { name, status: Status::Fail, detail: e.to_string() },
    }
}

fn skip(name: &'static str, why: &str) -> CheckResult {
    CheckResult { name, status: Status::Skip, detail: why.to_string() }
}

/// The invariant suite for one character.
pub fn verify_character(c: &CoverSpec, rho: &Character) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if !rho.is_primed() {
        out.push(skip("character", "not primed"));
        return out;
    }
    let reflections = rho.reflections_defined(c);
    let nondegenerate = rho.is_nondegenerate(c);
    let product_one = rho.total_product_is_one(c);
    out.push(if reflections {
        check(
            "relations",
            (|| {
                let rels = if c.m() == 2 { relations_m2(&c.spec)? } else { relations_general(&c.spec) };
                let mut theta = ThetaRep::new(c, rho)?;
                for (l, r) in &rels {
                    if theta.word(l)? != theta.word(r)? {
                        return Ok((false, format!("{l} ≠ {r}")));
                    }
                }
                Ok((true, format!("{} relation instances", rels.len())))
            })(),
        )
    } else {
        skip("relations", "θ_ρ undefined (degenerate character)")
    });
    out.push(if reflections {
        check(
            "unitarity",
            (|| {
                let m = gram_matrix(c, rho)?;
                let mut theta = ThetaRep::new(c, rho)?;
                for g in c.spec.generators() {
                    let a = theta.generator(g)?;
                    if !verify_unitary(&a, &m) {
                        return Ok((false, format!("{g} does not preserve the form")));
                    }
                }
                Ok((true, format!("{} generators", c.spec.generators().len())))
            })(),
        )
    } else {
        skip("unitarity", "θ_ρ undefined (degenerate character)")
    });
    out.push(check("determinant", gram_determinant_check(c, rho).map(|ok| (ok, "det M = closed form".into()))));
    out.push(if product_one {
        check("linear_relation", linear_relation_check(c, rho).map(|ok| (ok, "rᵀM = 0".into())))
    } else {
        skip("linear_relation", "Π ρ_j^(n_j) ≠ 1")
    });
    out.push(if nondegenerate && !product_one {
        check(
            "duality",
            (|| {
                for g in c.spec.generators() {
                    if !duality_check(c, rho, g)? {
                        return Ok((false, format!("fails for {g}")));
                    }
                }
                Ok((true, "B⁻¹D(g)B = diag(θ_ρ(g), 1)".into()))
            })(),
        )
    } else {
        skip("duality", "needs a nondegenerate character with Π ρ_j^(n_j) ≠ 1")
    });
    out.push(if nondegenerate && !product_one {
        check(
            "signature",
            signature_consistency(c, rho).map(|ok| {
                let (r, s) = chevalley_weil_signature(c, rho).unwrap_or((0, 0));
                (ok, format!("Gram (positive, negative) = ({s}, {r}) = Chevalley–Weil (s, r)"))
            }),
        )
    } else {
        skip("signature", "needs a nondegenerate character with Π ρ_j^(n_j) ≠ 1")
    });
    out.push(check(
        "tau_power",
        tau_report(c, rho).map(|t| {
            let scalar = match (&t.scalar, t.matches_product, t.matches_inverse_product) {
                (None, _, _) => "not scalar".to_string(),
                (Some(_), true, true) => "θ(τ) = Π ρ_j^(n_j) = its inverse".into(),
                (Some(_), true, false) => "θ(τ) = Π ρ_j^(n_j)".into(),
                (Some(_), false, true) => "θ(τ) = (Π ρ_j^(n_j))⁻¹".into(),
                (Some(l), false, false) => format!("θ(τ) = {l}"),
            };
            (t.power_is_identity && t.central, format!("θ(τ)^{} = Id, central; {scalar}", t.f))
        }),
    ));
    out.push(if nondegenerate {
        check("irreducible", is_irreducible(c, rho).map(|ok| (ok, "span saturation".into())))
    } else {
        skip("irreducible", "needs a nondegenerate character")
    });
    out
}

pub fn cmd_verify(cfg: &JobConfig) -> Result<Report, CliError> {
    let c = cover(cfg)?;
    let mut all_pass = true;
    let mut results = Vec::new();
    let mut text = String::new();
    for rho in characters(cfg, &c, true)? {
        let checks = verify_character(&c, &rho);
        let pass = checks.iter().all(|r| r.status != Status::Fail);
        all_pass &= pass;
        let summary: Vec<String> = checks
            .iter()
            .map(|r| {
                let s = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skip => "skip",
                };
                format!("{}={s}", r.name)
            })
            .collect();
        text.push_str(&format!(
            "ρ = {} {} {}\n",
            rho_label(&rho),
            if pass { "PASS" } else { "FAIL" },
            summary.join(" ")
        ));
        results.push(json!({"rho": rho.exps(), "passed": pass, "checks": checks}));
    }
    let v = json!({"parts": c.parts(), "degrees": c.degrees(), "passed": all_pass, "results": results});
    Ok(emit(cfg, &v, text, if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED }))
}

pub fn cmd_analyze(cfg: &JobConfig) -> Result<Report, CliError> {
    let c = cover(cfg)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for rho in characters(cfg, &c, true)? {
        let v = image_finiteness(&c, &rho);
        let line = match v {
            ImageVerdict::Infinite { witness } => format!(
                "infinite (block {} has (n, d) = ({}, {}) with primitive ρ)",
                witness.block, witness.size, witness.degree
            ),
            ImageVerdict::ExceptionalPairOnly => "undecided: every qualifying block is an exceptional pair".into(),
            ImageVerdict::CriterionSilent => "undecided: no block of size ≥ 3 with primitive ρ".into(),
        };
        text.push_str(&format!("ρ = {}: {line}\n", rho_label(&rho)));
        results.push(json!({"rho": rho.exps(), "image": v}));
    }
    let v = json!({"parts": c.parts(), "degrees": c.degrees(), "results": results});
    Ok(emit(cfg, &v, text, EXIT_OK))
}
