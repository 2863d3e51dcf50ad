//! JSON reports. Every top-level object carries `"schema": 1` and a `"kind"`;
//! keys are sorted, so equal inputs give byte-identical text.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use pisot_core::algebraic::{PvAnalysis, PvVerdict};
use pisot_core::quantum::{QuantumState, SecondKindLimit, SimulationRun};
use pisot_core::roots::RootCount;
use pisot_core::spacing::{AngleList, GapStats};
use pisot_core::{Alphabet, IntPolynomial, PisotMode, PisotReport, RealApprox, Substitution, Word};

use crate::format::{approx_json, round12};
use crate::spec_file::write_spec;

pub const SCHEMA: u64 = 1;

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// `{"schema": 1, "kind": kind, ..fields}`.
pub fn envelope(kind: &str, fields: Value) -> Value {
    let mut map = match fields {
        Value::Object(m) => m,
        other => Map::from_iter([("value".to_string(), other)]),
    };
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("kind".into(), json!(kind));
    Value::Object(map)
}

pub fn spec_json(sigma: &Substitution) -> Value {
    serde_json::from_str(&write_spec(sigma)).expect("canonical spec is valid JSON")
}

fn int_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| json!(x.to_string()), |v| json!(v))
}

pub fn poly_json(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(int_json).collect())
}

pub fn counts_json(c: &RootCount) -> Value {
    json!({"inside": c.inside, "on_circle": c.on_circle, "outside": c.outside})
}

pub fn substitution_json(sigma: &Substitution) -> Value {
    let m = sigma.incidence_matrix();
    envelope(
        "substitution",
        json!({
            "spec": spec_json(sigma),
            "display": sigma.to_string(),
            "incidence_matrix": m.rows(),
            "primitive": sigma.is_primitive(),
            "fixed_point_letters": sigma.fixed_point_letters().iter().map(|&a| sigma.alphabet().symbol(a)).collect::<Vec<_>>(),
        }),
    )
}

pub fn pisot_report_json(sigma: &Substitution, r: &PisotReport) -> Value {
    envelope(
        "pisot-report",
        json!({
            "substitution": spec_json(sigma),
            "mode": match r.mode { PisotMode::Loose => "loose", PisotMode::Strict => "strict" },
            "primitive": r.primitive,
            "char_poly": poly_json(&r.char_poly),
            "char_poly_display": r.char_poly.to_string(),
            "leading_eigenvalue": approx_json(&r.leading_eigenvalue),
            "conjugate_moduli_bound": approx_json(&r.conjugate_moduli_bound),
            "root_counts": counts_json(&r.root_counts),
            "irreducible": r.irreducible,
            "pisot_loose": r.pisot_loose,
            "pisot_strict": r.pisot_strict,
            "pisot": r.is_pisot(),
            "frequencies": r.frequencies.as_ref().map(|f| f.iter().map(approx_json).collect::<Vec<_>>()),
            "frequencies_iterative": r.frequencies_iterative.iter().map(|&x| round12(x)).collect::<Vec<_>>(),
            "frequencies_agree": r.frequencies_agree,
        }),
    )
}

pub fn verdict_name(v: PvVerdict) -> &'static str {
    match v {
        PvVerdict::Pv => "pv",
        PvVerdict::Conditional => "conditional",
        PvVerdict::NotPv => "not-pv",
    }
}

/// `decay` holds `(n, |s_n - lambda^n|)` rows.
pub fn pv_json(p: &IntPolynomial, a: &PvAnalysis, root: Option<&RealApprox>, decay: &[(usize, RealApprox)]) -> Value {
    envelope(
        "pv",
        json!({
            "polynomial": poly_json(p),
            "display": p.to_string(),
            "pv": a.verdict != PvVerdict::NotPv,
            "verdict": verdict_name(a.verdict),
            "root_counts": counts_json(&a.root_counts),
            "irreducible": a.irreducible,
            "root": root.map(approx_json),
            "decay": decay.iter().map(|(n, d)| json!({"n": n, "distance": approx_json(d)})).collect::<Vec<_>>(),
        }),
    )
}

pub fn gap_json(g: &GapStats) -> Value {
    json!({
        "count": g.count,
        "mean": round12(g.mean),
        "variance": round12(g.variance),
        "min_gap": round12(g.min_gap),
        "max_gap": round12(g.max_gap),
        "distinct_gaps": g.distinct_gaps,
    })
}

pub fn angles_json(a: &AngleList) -> Value {
    Value::Array(a.angles().iter().map(|&t| json!(round12(t))).collect())
}

pub fn spacing_json(mode: &str, params: Value, angles: &AngleList, gaps: &GapStats) -> Value {
    envelope("spacing", json!({"mode": mode, "params": params, "gaps": gap_json(gaps), "angles": angles_json(angles)}))
}

/// Seed, size, substitution and step angles of a measurement-driven walk,
/// enough to rerun it bit for bit, plus its outcome counts.
pub fn run_manifest(sigma: &Substitution, betas: &[f64], beta_text: &str, count: usize, seed: u64, run: &SimulationRun, perron: &[RealApprox]) -> Value {
    envelope(
        "quantum-run",
        json!({
            "seed": seed,
            "count": count,
            "substitution": spec_json(sigma),
            "betas": betas,
            "betas_requested": beta_text,
            "generator": "chacha8",
            "counts": run.counts,
            "rates": run.rates(),
            "perron_probabilities": perron.iter().map(approx_json).collect::<Vec<_>>(),
        }),
    )
}

pub fn second_kind_json(sigma: &Substitution, lim: &SecondKindLimit, perron: Option<&[RealApprox]>) -> Value {
    envelope(
        "second-kind",
        json!({
            "substitution": spec_json(sigma),
            "probabilities": lim.probabilities,
            "iterations": lim.iterations,
            "converged": lim.converged,
            "residuals": lim.residuals,
            "perron_probabilities": perron.map(|p| p.iter().map(approx_json).collect::<Vec<_>>()),
        }),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    word: String,
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
struct StateFile {
    alphabet: Vec<String>,
    records: Vec<Record>,
}

/// `{"alphabet": [...], "records": [{"word", "re", "im"}, ...]}`, amplitudes
/// at full precision so that reading back gives the same state.
pub fn state_json(psi: &QuantumState) -> Value {
    let records: Vec<Value> = psi.records().into_iter().map(|(w, re, im)| json!({"word": w, "re": re, "im": im})).collect();
    envelope("quantum-state", json!({"alphabet": psi.alphabet().symbols(), "records": records}))
}

#[derive(Debug, thiserror::Error)]
pub enum StateError {
    #[error("malformed state: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid state: {0}")]
    Core(#[from] pisot_core::Error),
    #[error("amplitude of {0:?} is not finite")]
    NotFinite(String),
}

pub fn parse_state(text: &str) -> Result<QuantumState, StateError> {
    let mut v: Value = serde_json::from_str(text)?;
    if let Value::Object(m) = &mut v {
        m.remove("schema");
        m.remove("kind");
    }
    let f: StateFile = serde_json::from_value(v)?;
    let a = Alphabet::new(f.alphabet)?;
    let mut terms = Vec::with_capacity(f.records.len());
    for r in f.records {
        if !r.re.is_finite() || !r.im.is_finite() {
            return Err(StateError::NotFinite(r.word));
        }
        terms.push((Word::parse(&a, &r.word)?, Complex64::new(r.re, r.im)));
    }
    Ok(QuantumState::from_terms(&a, terms)?)
}
