//! Per-claim checks and the seeded randomized suite.
//!
//! Proven claims (spectral monotonicity, form monotonicity, McKean–Singer,
//! Dirac interlacing, Euler–Poincaré, complexity monotonicity, the Kirchhoff
//! degree bound, unimodularity of whole/closed connection Laplacians) can
//! fail a run. Announced or conjectured claims (fusion inequality, the 2σ
//! bound, Det/trace super-multiplicativity, the Hodge degree bound, the
//! hydrogen identity) are observations: violations are recorded with a
//! witness but never affect the exit status.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::{euler_characteristic, Complex, ComplexError, Graph, Simplex, Subset};
use crate::exact;
use crate::operators::{connection_laplacian, dirac, hodge};
use crate::spectral::{
    betti_exact, eigenvalues_sym_int, hodge_det, hodge_forest_det, hodge_spectra, merge_spectra,
    pad_left, SpectralError, Spectrum,
};

/// Comparison tolerance factor for float inequalities:
/// `ε = 1e-7 · max(1, λ_max)`.
pub const CMP_TOL_FACTOR: f64 = 1e-7;
/// Relative tolerance for log-space determinant comparisons.
pub const LOG_REL_TOL: f64 = 1e-6;
/// Residual threshold below which the hydrogen identity counts as holding.
pub const HYDROGEN_TOL: f64 = 1e-8;
/// Locally maximal deletions examined per generated complex.
const INTERLACING_SAMPLES: usize = 3;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("subset is neither open nor closed in the parent complex")]
    NotOpenOrClosed,
    #[error("subset is not open in the parent complex")]
    NotOpen,
    #[error("hydrogen identity needs dimension ≤ 1, got {0}")]
    NotOneDimensional(usize),
    #[error("invalid trial parameters: {0}")]
    BadTrialSpec(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// How an element list sits inside its parent; decides which claims are
/// proven for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetClass {
    Whole,
    Open,
    Closed,
}

impl SetClass {
    fn as_str(self) -> &'static str {
        match self {
            SetClass::Whole => "whole",
            SetClass::Open => "open",
            SetClass::Closed => "closed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Observation,
}

/// Result of one check: worst margin (most negative slack), a witness when
/// something failed or an observation found a counterexample, and the seed
/// that drove the instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    pub status: Status,
    pub worst_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub trials: usize,
    pub seed: u64,
    pub info: Value,
}

impl VerifyReport {
    fn new(check: &str, status: Status, margin: f64, info: Value) -> Self {
        VerifyReport {
            check: check.to_string(),
            status,
            worst_margin: margin,
            witness: None,
            trials: 1,
            seed: 0,
            info,
        }
    }

    fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

/// One JSONL line: a per-trial, per-check record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    #[serde(flatten)]
    pub report: VerifyReport,
}

fn simplices_json(els: &[Simplex]) -> Value {
    Value::Array(
        els.iter()
            .map(|s| Value::Array(s.vertices().iter().map(|&v| json!(v)).collect()))
            .collect(),
    )
}

fn witness_of(g: &Complex, subset: Option<&[Simplex]>, extra: Value) -> Value {
    let mut w = json!({ "parent_facets": simplices_json(&g.facets()) });
    if let Some(s) = subset {
        w["subset"] = simplices_json(s);
    }
    if let Value::Object(extra) = extra {
        for (k, v) in extra {
            w[k] = v;
        }
    }
    w
}

fn require_parent(g: &Complex, s: &Subset) -> Result<(), VerifyError> {
    if s.parent_id() != g.id() {
        return Err(ComplexError::ParentMismatch.into());
    }
    Ok(())
}

fn full_spectrum(els: &[Simplex]) -> Result<(Vec<Spectrum>, Spectrum), VerifyError> {
    let h = hodge(els);
    let blocks = hodge_spectra(&h)?;
    let full = merge_spectra(&blocks);
    Ok((blocks, full))
}

/// Left-padded spectral monotonicity `λ_j(S) ≤ λ_j(G)` for an open or
/// closed subset `S ⊆ G`. The margin is `min_j (λ_j(G) - λ_j(S))`.
pub fn check_spectral_monotonicity(g: &Complex, s: &Subset) -> Result<VerifyReport, VerifyError> {
    require_parent(g, s)?;
    if !s.is_open() && !s.is_closed() {
        return Err(VerifyError::NotOpenOrClosed);
    }
    let (_, spec_g) = full_spectrum(g.elements())?;
    let (_, spec_s) = full_spectrum(s.elements())?;
    let padded = pad_left(&spec_s, g.len())?;
    let mut margin = 0.0f64;
    let mut arg = None;
    for (j, (lg, ls)) in spec_g.values().iter().zip(padded.values()).enumerate() {
        let m = lg - ls;
        if m < margin {
            margin = m;
            arg = Some((j, *lg, *ls));
        }
    }
    let tol = CMP_TOL_FACTOR * spec_g.lambda_max().max(1.0);
    let status = if margin >= -tol {
        Status::Pass
    } else {
        Status::Fail
    };
    let info = json!({
        "subset_kind": s.kind(),
        "n": g.len(),
        "m": s.len(),
        "lambda_max": spec_g.lambda_max(),
    });
    let mut report = VerifyReport::new("spectral_monotonicity", status, margin, info);
    if status == Status::Fail {
        let (j, lg, ls) = arg.unwrap();
        report = report.with_witness(witness_of(
            g,
            Some(s.elements()),
            json!({ "j": j, "lambda_g": lg, "lambda_s": ls }),
        ));
    }
    Ok(report)
}

/// Spectral monotonicity restricted to every k-form block, each padded to
/// the block size of the parent.
pub fn check_form_monotonicity(g: &Complex, s: &Subset) -> Result<VerifyReport, VerifyError> {
    require_parent(g, s)?;
    if !s.is_open() && !s.is_closed() {
        return Err(VerifyError::NotOpenOrClosed);
    }
    let (blocks_g, spec_g) = full_spectrum(g.elements())?;
    let (blocks_s, _) = full_spectrum(s.elements())?;
    let tol = CMP_TOL_FACTOR * spec_g.lambda_max().max(1.0);
    let mut margin = 0.0f64;
    let mut arg = None;
    let mut per_block = Vec::new();
    for (k, bg) in blocks_g.iter().enumerate() {
        let bs = blocks_s.get(k).cloned().unwrap_or_else(Spectrum::empty);
        let padded = pad_left(&bs, bg.len())?;
        let mut block_margin = 0.0f64;
        for (j, (lg, ls)) in bg.values().iter().zip(padded.values()).enumerate() {
            let m = lg - ls;
            if m < block_margin {
                block_margin = m;
            }
            if m < margin {
                margin = m;
                arg = Some((k, j, *lg, *ls));
            }
        }
        per_block.push(block_margin);
    }
    let status = if margin >= -tol {
        Status::Pass
    } else {
        Status::Fail
    };
    let info = json!({
        "subset_kind": s.kind(),
        "per_block_margins": per_block,
        "lambda_max": spec_g.lambda_max(),
    });
    let mut report = VerifyReport::new("form_monotonicity", status, margin, info);
    if status == Status::Fail {
        let (k, j, lg, ls) = arg.unwrap();
        report = report.with_witness(witness_of(
            g,
            Some(s.elements()),
            json!({ "k": k, "j": j, "lambda_g": lg, "lambda_s": ls }),
        ));
    }
    Ok(report)
}

/// McKean–Singer symmetry: the non-zero Hodge eigenvalues are distributed
/// equally on even and odd form degrees, and the supertrace of `e^{-tL}`
/// equals the Euler characteristic. The margin is the smaller of the two
/// tolerance slacks.
pub fn check_mckean_singer(els: &[Simplex]) -> Result<VerifyReport, VerifyError> {
    let (blocks, full) = full_spectrum(els)?;
    let betti = betti_exact(els);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (k, spec) in blocks.iter().enumerate() {
        // non-zero count pinned by the exact Betti number, not by the
        // floating tolerance
        let zeros = betti.counts()[k];
        let nz = &spec.values()[zeros..];
        if k % 2 == 0 {
            even.extend_from_slice(nz);
        } else {
            odd.extend_from_slice(nz);
        }
    }
    even.sort_by(|a, b| a.partial_cmp(b).unwrap());
    odd.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tol_pair = CMP_TOL_FACTOR * full.lambda_max().max(1.0);
    let chi = euler_characteristic(els) as f64;
    let mut supertrace_dev = 0.0f64;
    for t in [0.1, 1.0, 10.0] {
        let mut st = 0.0;
        for (k, spec) in blocks.iter().enumerate() {
            let sum: f64 = spec.values().iter().map(|l| (-t * l).exp()).sum();
            st += if k % 2 == 0 { sum } else { -sum };
        }
        supertrace_dev = supertrace_dev.max((st - chi).abs());
    }
    let (status, margin, witness) = if even.len() != odd.len() {
        let m = -((even.len() as f64 - odd.len() as f64).abs());
        (
            Status::Fail,
            m,
            Some(witness_of(
                &Complex::closure(els).unwrap_or_else(|_| Complex::empty()),
                Some(els),
                json!({ "even_count": even.len(), "odd_count": odd.len() }),
            )),
        )
    } else {
        let max_diff = even
            .iter()
            .zip(&odd)
            .map(|(e, o)| (e - o).abs())
            .fold(0.0f64, f64::max);
        let margin = (tol_pair - max_diff).min(1e-7 - supertrace_dev);
        if margin >= 0.0 {
            (Status::Pass, margin, None)
        } else {
            (
                Status::Fail,
                margin,
                Some(json!({
                    "elements": simplices_json(els),
                    "max_pair_diff": max_diff,
                    "supertrace_dev": supertrace_dev,
                })),
            )
        }
    };
    let info = json!({
        "nonzero_per_parity": even.len(),
        "supertrace_dev": supertrace_dev,
    });
    let mut report = VerifyReport::new("mckean_singer", status, margin, info);
    if let Some(w) = witness {
        report = report.with_witness(w);
    }
    Ok(report)
}

/// Cauchy interlacing of the Dirac spectra under deletion of one locally
/// maximal element: `μ_j(D_G) ≤ μ_j(D_K) ≤ μ_{j+1}(D_G)`.
pub fn check_dirac_interlacing(g: &Complex, x: &Simplex) -> Result<VerifyReport, VerifyError> {
    let k = g.delete_locally_maximal(x)?;
    let mu = eigenvalues_sym_int(&dirac(g.elements()))?;
    let nu = eigenvalues_sym_int(&dirac(k.elements()))?;
    let tol = CMP_TOL_FACTOR * mu.lambda_max().max(1.0);
    let mut margin = 0.0f64;
    for j in 0..nu.len() {
        let lower = nu.values()[j] - mu.values()[j];
        let upper = mu.values()[j + 1] - nu.values()[j];
        margin = margin.min(lower).min(upper);
    }
    let status = if margin >= -tol {
        Status::Pass
    } else {
        Status::Fail
    };
    let info = json!({ "n": g.len(), "deleted": simplices_json(std::slice::from_ref(x)) });
    let mut report = VerifyReport::new("dirac_interlacing", status, margin, info);
    if status == Status::Fail {
        report = report.with_witness(witness_of(
            g,
            None,
            json!({ "deleted": simplices_json(std::slice::from_ref(x)) }),
        ));
    }
    Ok(report)
}

/// Euler–Poincaré: `Σ (-1)^k f_k = Σ (-1)^k b_k`, exact integers.
pub fn check_euler_poincare(els: &[Simplex]) -> Result<VerifyReport, VerifyError> {
    let chi_f = euler_characteristic(els);
    let chi_b = betti_exact(els).euler_characteristic();
    let status = if chi_f == chi_b {
        Status::Pass
    } else {
        Status::Fail
    };
    let margin = -((chi_f - chi_b).abs() as f64);
    let info = json!({ "chi_f": chi_f, "chi_b": chi_b });
    let mut report = VerifyReport::new("euler_poincare", status, margin, info);
    if status == Status::Fail {
        report = report.with_witness(json!({ "elements": simplices_json(els) }));
    }
    Ok(report)
}

/// The announced fusion inequality `b(U) + b(K) ≥ b(G)` for an open/closed
/// partition. Always an observation; a violation is recorded as a witness.
pub fn check_fusion_inequality(g: &Complex, u: &Subset) -> Result<VerifyReport, VerifyError> {
    require_parent(g, u)?;
    if !u.is_open() {
        return Err(VerifyError::NotOpen);
    }
    let k = g.complement(u)?;
    let b_u = betti_exact(u.elements());
    let b_k = betti_exact(k.elements());
    let b_g = betti_exact(g.elements());
    let len = b_g.len().max(b_u.len()).max(b_k.len());
    let (pu, pk, pg) = (b_u.padded(len), b_k.padded(len), b_g.padded(len));
    let slack: Vec<i64> = (0..len)
        .map(|i| pu[i] as i64 + pk[i] as i64 - pg[i] as i64)
        .collect();
    let margin = slack.iter().copied().min().unwrap_or(0) as f64;
    let info = json!({ "b_u": pu, "b_k": pk, "b_g": pg, "slack": slack });
    let mut report = VerifyReport::new("fusion_inequality", Status::Observation, margin, info);
    if margin < 0.0 {
        report = report.with_witness(witness_of(g, Some(u.elements()), json!({ "slack": slack })));
    }
    Ok(report)
}

/// Monotonicity of the complexity `Det(L)`, the forest quantity
/// `det(L + 1)`, and the total energy `tr(L)` under passing to an open or
/// closed subset. Exact comparisons whenever both sides are exact.
pub fn check_complexity_monotone(g: &Complex, s: &Subset) -> Result<VerifyReport, VerifyError> {
    require_parent(g, s)?;
    if !s.is_open() && !s.is_closed() {
        return Err(VerifyError::NotOpenOrClosed);
    }
    let det_g = hodge_det(g.elements())?;
    let det_s = hodge_det(s.elements())?;
    let forest_g = hodge_forest_det(g.elements())?;
    let forest_s = hodge_forest_det(s.elements())?;
    let tr_g = hodge(g.elements()).full().trace();
    let tr_s = hodge(s.elements()).full().trace();

    let det_ok = det_s.le(&det_g, LOG_REL_TOL);
    let forest_ok = forest_s.le(&forest_g, LOG_REL_TOL);
    let trace_ok = tr_s <= tr_g;
    let det_margin = det_s.log_margin(&det_g);
    let forest_margin = forest_s.log_margin(&forest_g);
    let trace_margin = (tr_g - tr_s) as f64 / (tr_g.abs() as f64).max(1.0);
    let margin = det_margin.min(forest_margin).min(trace_margin);
    let status = if det_ok && forest_ok && trace_ok {
        Status::Pass
    } else {
        Status::Fail
    };
    let info = json!({
        "subset_kind": s.kind(),
        "det": { "g": det_g, "s": det_s, "ok": det_ok },
        "forest": { "g": forest_g, "s": forest_s, "ok": forest_ok },
        "trace": { "g": tr_g, "s": tr_s, "ok": trace_ok },
        "exact": det_g.is_exact() && det_s.is_exact(),
    });
    let mut report = VerifyReport::new("complexity_monotone", status, margin, info);
    if status == Status::Fail {
        report = report.with_witness(witness_of(g, Some(s.elements()), json!({})));
    }
    Ok(report)
}

/// Experimental observations for an open/closed partition `G = U ⊔ K`:
/// `σ(L_U ⊕ L_K) ≤ 2 σ(L_G)` elementwise, `Det(G) ≥ Det(K)·Det(U)`, and
/// `tr(G) ≥ tr(K) + tr(U)`. Never fails a run.
pub fn check_conjectures(g: &Complex, u: &Subset) -> Result<VerifyReport, VerifyError> {
    require_parent(g, u)?;
    if !u.is_open() {
        return Err(VerifyError::NotOpen);
    }
    let k = g.complement(u)?;
    let (_, spec_g) = full_spectrum(g.elements())?;
    let (_, spec_u) = full_spectrum(u.elements())?;
    let (_, spec_k) = full_spectrum(k.elements())?;
    let joint = merge_spectra(&[spec_u.clone(), spec_k.clone()]);
    debug_assert_eq!(joint.len(), g.len());
    let mut two_sigma_margin = f64::INFINITY;
    for (l_joint, l_g) in joint.values().iter().zip(spec_g.values()) {
        two_sigma_margin = two_sigma_margin.min(2.0 * l_g - l_joint);
    }
    if !two_sigma_margin.is_finite() {
        two_sigma_margin = 0.0;
    }
    let tol_sigma = CMP_TOL_FACTOR * (2.0 * spec_g.lambda_max()).max(1.0);

    let det_g = hodge_det(g.elements())?;
    let det_u = hodge_det(u.elements())?;
    let det_k = hodge_det(k.elements())?;
    let det_prod = det_u.mul(&det_k);
    let det_ok = det_prod.le(&det_g, LOG_REL_TOL);
    let det_margin = det_prod.log_margin(&det_g);

    let tr_g = hodge(g.elements()).full().trace();
    let tr_u = hodge(u.elements()).full().trace();
    let tr_k = hodge(k.elements()).full().trace();
    let trace_margin = (tr_g - tr_u - tr_k) as f64;

    let violated = two_sigma_margin < -tol_sigma || !det_ok || trace_margin < 0.0;
    let margin = two_sigma_margin.min(det_margin).min(trace_margin);
    let info = json!({
        "two_sigma_margin": two_sigma_margin,
        "det_log_margin": det_margin,
        "trace_margin": trace_margin,
        "det_ratio_log": det_margin,
        "violated": violated,
    });
    let mut report = VerifyReport::new("conjectures", Status::Observation, margin, info);
    if violated {
        report = report.with_witness(witness_of(
            g,
            Some(u.elements()),
            json!({
                "two_sigma_margin": two_sigma_margin,
                "det_log_margin": det_margin,
                "trace_margin": trace_margin,
            }),
        ));
    }
    Ok(report)
}

/// Eigenvalue bounds from the diagonal. The Kirchhoff bound
/// `λ_k ≤ a_k + a_{k-1}` (ascending diagonal, `a_0 = 0`) is a proven claim
/// for whole complexes and closed subsets; for open sets it is reported as
/// an observation. The Hodge-level bound `λ_k ≤ 2a_k + a_{k-1} + a_{k-2}`
/// is always an observation, carried in `info`.
pub fn check_degree_bounds(els: &[Simplex], class: SetClass) -> Result<VerifyReport, VerifyError> {
    let h = hodge(els);
    let blocks = hodge_spectra(&h)?;
    // Kirchhoff part: the 0-form block
    let (kirchhoff_margin, l0_max) = if let Some(b0) = h.blocks().first() {
        let spec = &blocks[0];
        let mut diag: Vec<i64> = b0.diagonal();
        diag.sort_unstable();
        let mut margin = f64::INFINITY;
        for (j, l) in spec.values().iter().enumerate() {
            let a_j = diag[j] as f64;
            let a_prev = if j >= 1 { diag[j - 1] as f64 } else { 0.0 };
            margin = margin.min(a_j + a_prev - l);
        }
        (
            if margin.is_finite() { margin } else { 0.0 },
            spec.lambda_max(),
        )
    } else {
        (0.0, 0.0)
    };
    let tol0 = CMP_TOL_FACTOR * l0_max.max(1.0);

    // Hodge part: the full diagonal against the merged spectrum
    let full = merge_spectra(&blocks);
    let mut diag: Vec<i64> = h.full().diagonal();
    diag.sort_unstable();
    let mut hodge_margin = f64::INFINITY;
    for (j, l) in full.values().iter().enumerate() {
        let a = |i: isize| {
            if i >= 0 {
                diag[i as usize] as f64
            } else {
                0.0
            }
        };
        let bound = 2.0 * a(j as isize) + a(j as isize - 1) + a(j as isize - 2);
        hodge_margin = hodge_margin.min(bound - l);
    }
    if !hodge_margin.is_finite() {
        hodge_margin = 0.0;
    }
    let tol_h = CMP_TOL_FACTOR * full.lambda_max().max(1.0);
    let hodge_violated = hodge_margin < -tol_h;

    let kirchhoff_ok = kirchhoff_margin >= -tol0;
    let status = match class {
        SetClass::Open => Status::Observation,
        _ if kirchhoff_ok => Status::Pass,
        _ => Status::Fail,
    };
    let info = json!({
        "target": class.as_str(),
        "kirchhoff_margin": kirchhoff_margin,
        "hodge_margin": hodge_margin,
        "hodge_violated": hodge_violated,
        "hodge_witness": if hodge_violated { Some(simplices_json(els)) } else { None },
    });
    let mut report = VerifyReport::new("degree_bounds", status, kirchhoff_margin, info);
    if status == Status::Fail || (class == SetClass::Open && !kirchhoff_ok) {
        report = report.with_witness(json!({ "elements": simplices_json(els) }));
    }
    Ok(report)
}

/// Unimodularity of the connection Laplacian: `|det H| = 1`, exactly, for
/// whole complexes and closed subsets. For open sets the determinant is
/// reported (singular connection Laplacians are expected there).
pub fn check_unimodularity(els: &[Simplex], class: SetClass) -> Result<VerifyReport, VerifyError> {
    let h = connection_laplacian(els);
    let det = exact::det_exact(&h);
    let abs = det.abs();
    let unimodular = abs == num_bigint::BigInt::from(1);
    let det_str = det.to_string();
    match class {
        SetClass::Open => {
            let info = json!({
                "target": "open",
                "det": det_str,
                "singular": det.is_zero(),
            });
            Ok(VerifyReport::new(
                "unimodularity",
                Status::Observation,
                0.0,
                info,
            ))
        }
        _ => {
            let margin = if unimodular {
                0.0
            } else if det.is_zero() {
                -1.0
            } else {
                -(crate::spectral::PseudoDet::from_exact(det.clone())
                    .log_abs
                    .abs()
                    + 1.0)
            };
            let status = if unimodular {
                Status::Pass
            } else {
                Status::Fail
            };
            let info = json!({ "target": class.as_str(), "det": det_str });
            let mut report = VerifyReport::new("unimodularity", status, margin, info);
            if status == Status::Fail {
                report = report.with_witness(json!({ "elements": simplices_json(els) }));
            }
            Ok(report)
        }
    }
}

/// The hydrogen identity `L = H - H^{-1}` for complexes of dimension ≤ 1.
/// The residual is reported; it counts as a pass only when it vanishes to
/// `1e-8`, otherwise the report is an observation (sign conventions for `H`
/// differ across the literature). A singular `H` is reported, not an error.
pub fn check_hydrogen_identity(g: &Complex) -> Result<VerifyReport, VerifyError> {
    if let Some(d) = g.dim() {
        if d > 1 {
            return Err(VerifyError::NotOneDimensional(d));
        }
    }
    let h = connection_laplacian(g.elements());
    let det = exact::det_exact(&h);
    if det.is_zero() {
        let info = json!({ "singular": true, "det": "0" });
        return Ok(VerifyReport::new(
            "hydrogen_identity",
            Status::Observation,
            0.0,
            info,
        ));
    }
    let hf = h.to_f64();
    let Some(hinv) = hf.clone().try_inverse() else {
        let info = json!({ "singular": true, "det": det.to_string() });
        return Ok(VerifyReport::new(
            "hydrogen_identity",
            Status::Observation,
            0.0,
            info,
        ));
    };
    let l = hodge(g.elements()).full().to_f64();
    let mut residual = 0.0f64;
    for i in 0..l.nrows() {
        for j in 0..l.ncols() {
            residual = residual.max((l[(i, j)] - (hf[(i, j)] - hinv[(i, j)])).abs());
        }
    }
    let status = if residual <= HYDROGEN_TOL {
        Status::Pass
    } else {
        Status::Observation
    };
    let info = json!({
        "residual": residual,
        "det": det.to_string(),
        "singular": false,
    });
    Ok(VerifyReport::new(
        "hydrogen_identity",
        status,
        -residual,
        info,
    ))
}

// ---------------------------------------------------------------------------
// Randomized suite

/// Family of complexes a suite draws from.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// Whitney complexes of Erdős–Rényi graphs; `nv` and `edge_prob` are
    /// inclusive ranges sampled per trial.
    WhitneyGnp {
        nv: (u32, u32),
        edge_prob: (f64, f64),
    },
    /// A fixed complex, given by facets; the split still varies per trial.
    Explicit { facets: Vec<Vec<u32>> },
}

/// How each trial splits the complex into an open set and its closed
/// complement.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Split {
    /// Union of `k` random stars (`k` sampled from the inclusive range).
    RandomOpenSet { stars: (usize, usize) },
    /// Delete one uniformly chosen locally maximal element; the open part is
    /// that single element.
    DeleteLocallyMaximal,
    /// Repeatedly delete a uniformly chosen locally maximal element — the
    /// reverse Morse filtration — leaving a random closed subcomplex.
    RandomSubcomplex { deletions: (usize, usize) },
}

/// Parameters of a randomized verification run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialSpec {
    pub generator: Generator,
    pub split: Split,
    pub seed: u64,
    pub trials: usize,
}

impl Default for TrialSpec {
    /// Desk-scale default: Whitney complexes of `G(8..14, 0.3..0.6)` split
    /// by 1–6 random stars.
    fn default() -> Self {
        TrialSpec {
            generator: Generator::WhitneyGnp {
                nv: (8, 14),
                edge_prob: (0.3, 0.6),
            },
            split: Split::RandomOpenSet { stars: (1, 6) },
            seed: 0,
            trials: 100,
        }
    }
}

impl TrialSpec {
    pub fn validate(&self) -> Result<(), VerifyError> {
        match &self.generator {
            Generator::WhitneyGnp { nv, edge_prob } => {
                if nv.0 < 1 || nv.0 > nv.1 {
                    return Err(VerifyError::BadTrialSpec(format!(
                        "vertex range {}..={} is invalid",
                        nv.0, nv.1
                    )));
                }
                let ok = edge_prob.0.is_finite()
                    && edge_prob.1.is_finite()
                    && (0.0..=1.0).contains(&edge_prob.0)
                    && (0.0..=1.0).contains(&edge_prob.1)
                    && edge_prob.0 <= edge_prob.1;
                if !ok {
                    return Err(VerifyError::BadTrialSpec(format!(
                        "edge probability range {}..={} is invalid",
                        edge_prob.0, edge_prob.1
                    )));
                }
            }
            Generator::Explicit { facets } => {
                for f in facets {
                    Simplex::new(f.clone())
                        .map_err(|e| VerifyError::BadTrialSpec(e.to_string()))?;
                }
            }
        }
        match &self.split {
            Split::RandomOpenSet { stars } => {
                if stars.0 < 1 || stars.0 > stars.1 {
                    return Err(VerifyError::BadTrialSpec(format!(
                        "star range {}..={} is invalid",
                        stars.0, stars.1
                    )));
                }
            }
            Split::RandomSubcomplex { deletions } => {
                if deletions.0 > deletions.1 {
                    return Err(VerifyError::BadTrialSpec(format!(
                        "deletion range {}..={} is invalid",
                        deletions.0, deletions.1
                    )));
                }
            }
            Split::DeleteLocallyMaximal => {}
        }
        Ok(())
    }
}

/// Everything a suite run produces: per-trial records (the JSONL stream),
/// aggregated per-check reports, and the exit flag driven by proven claims
/// only.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<VerifyReport>,
    pub records: Vec<TrialRecord>,
    pub passed: bool,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    splitmix64(seed ^ splitmix64(trial as u64 + 1))
}

fn generate_complex<R: Rng>(generator: &Generator, rng: &mut R) -> Result<Complex, VerifyError> {
    match generator {
        Generator::WhitneyGnp { nv, edge_prob } => {
            let n = rng.gen_range(nv.0..=nv.1);
            let p = if edge_prob.0 == edge_prob.1 {
                edge_prob.0
            } else {
                rng.gen_range(edge_prob.0..=edge_prob.1)
            };
            Ok(Complex::whitney(&Graph::gnp(n, p, rng)))
        }
        Generator::Explicit { facets } => {
            let simplices: Result<Vec<Simplex>, _> =
                facets.iter().map(|f| Simplex::new(f.clone())).collect();
            Ok(Complex::closure(&simplices?)?)
        }
    }
}

fn split_complex<R: Rng>(
    g: &Complex,
    split: &Split,
    rng: &mut R,
) -> Result<(Subset, Subset), VerifyError> {
    let u = match split {
        Split::RandomOpenSet { stars } => {
            let k = rng.gen_range(stars.0..=stars.1);
            g.random_open_set_with(k, rng)?
        }
        Split::DeleteLocallyMaximal => {
            let lm = g.locally_maximal_indices();
            let i = lm[rng.gen_range(0..lm.len())];
            g.subset(vec![g.elements()[i].clone()])?
        }
        Split::RandomSubcomplex { deletions } => {
            let m = rng.gen_range(deletions.0..=deletions.1);
            let mut k = g.clone();
            for _ in 0..m {
                if k.is_empty() {
                    break;
                }
                let lm = k.locally_maximal_indices();
                let i = lm[rng.gen_range(0..lm.len())];
                k = k.delete_locally_maximal(&k.elements()[i].clone())?;
            }
            let k_subset = g.subset(k.elements().to_vec())?;
            g.complement(&k_subset)?
        }
    };
    let k = g.complement(&u)?;
    Ok((u, k))
}

fn push(
    records: &mut Vec<TrialRecord>,
    trial: usize,
    seed: u64,
    mut report: VerifyReport,
    target: Option<&str>,
) {
    report.seed = seed;
    if let Some(t) = target {
        report.info["target"] = json!(t);
    }
    records.push(TrialRecord { trial, report });
}

fn run_trial(spec: &TrialSpec, trial: usize) -> Result<Vec<TrialRecord>, VerifyError> {
    let seed = trial_seed(spec.seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = generate_complex(&spec.generator, &mut rng)?;
    let mut records = Vec::new();
    if g.is_empty() {
        let info = json!({ "empty": true });
        push(
            &mut records,
            trial,
            seed,
            VerifyReport::new("trial_instance", Status::Observation, 0.0, info),
            None,
        );
        return Ok(records);
    }
    let (u, k) = split_complex(&g, &spec.split, &mut rng)?;

    let info = json!({
        "n": g.len(),
        "dim": g.dim(),
        "f_vector": g.f_vector(),
        "u_size": u.len(),
        "k_size": k.len(),
        "u_kind": u.kind(),
        "k_kind": k.kind(),
    });
    push(
        &mut records,
        trial,
        seed,
        VerifyReport::new("trial_instance", Status::Observation, 0.0, info),
        None,
    );

    push(
        &mut records,
        trial,
        seed,
        check_euler_poincare(g.elements())?,
        Some("whole"),
    );
    push(
        &mut records,
        trial,
        seed,
        check_euler_poincare(k.elements())?,
        Some("closed"),
    );
    push(
        &mut records,
        trial,
        seed,
        check_euler_poincare(u.elements())?,
        Some("open"),
    );

    push(
        &mut records,
        trial,
        seed,
        check_spectral_monotonicity(&g, &k)?,
        Some("closed"),
    );
    push(
        &mut records,
        trial,
        seed,
        check_spectral_monotonicity(&g, &u)?,
        Some("open"),
    );

    push(
        &mut records,
        trial,
        seed,
        check_form_monotonicity(&g, &k)?,
        Some("closed"),
    );
    push(
        &mut records,
        trial,
        seed,
        check_form_monotonicity(&g, &u)?,
        Some("open"),
    );

    push(
        &mut records,
        trial,
        seed,
        check_mckean_singer(g.elements())?,
        Some("whole"),
    );
    push(
        &mut records,
        trial,
        seed,
        check_mckean_singer(k.elements())?,
        Some("closed"),
    );
    push(
        &mut records,
        trial,
        seed,
        check_mckean_singer(u.elements())?,
        Some("open"),
    );

    let lm = g.locally_maximal_indices();
    let count = lm.len().min(INTERLACING_SAMPLES);
    let picks = rand::seq::index::sample(&mut rng, lm.len(), count);
    for idx in picks.iter() {
        let x = g.elements()[lm[idx]].clone();
        push(
            &mut records,
            trial,
            seed,
            check_dirac_interlacing(&g, &x)?,
            None,
        );
    }

    push(
        &mut records,
        trial,
        seed,
        check_complexity_monotone(&g, &k)?,
        Some("closed"),
    );
    push(
        &mut records,
        trial,
        seed,
        check_complexity_monotone(&g, &u)?,
        Some("open"),
    );

    push(
        &mut records,
        trial,
        seed,
        check_fusion_inequality(&g, &u)?,
        None,
    );
    push(&mut records, trial, seed, check_conjectures(&g, &u)?, None);

    push(
        &mut records,
        trial,
        seed,
        check_degree_bounds(g.elements(), SetClass::Whole)?,
        None,
    );
    push(
        &mut records,
        trial,
        seed,
        check_degree_bounds(k.elements(), SetClass::Closed)?,
        None,
    );
    // open-set variants are observations; report them under their own name
    // so the hard check aggregates cleanly
    let mut r = check_degree_bounds(u.elements(), SetClass::Open)?;
    r.check = "degree_bounds_open".into();
    push(&mut records, trial, seed, r, None);

    push(
        &mut records,
        trial,
        seed,
        check_unimodularity(g.elements(), SetClass::Whole)?,
        None,
    );
    push(
        &mut records,
        trial,
        seed,
        check_unimodularity(k.elements(), SetClass::Closed)?,
        None,
    );
    let mut r = check_unimodularity(u.elements(), SetClass::Open)?;
    r.check = "unimodularity_open".into();
    push(&mut records, trial, seed, r, None);

    if g.dim().unwrap_or(0) <= 1 {
        push(
            &mut records,
            trial,
            seed,
            check_hydrogen_identity(&g)?,
            None,
        );
    }

    Ok(records)
}

/// Aggregates the per-trial records into one report per check, preserving
/// first-seen check order. The worst margin wins; its witness comes along.
pub fn aggregate(records: &[TrialRecord], seed: u64) -> Vec<VerifyReport> {
    let mut order: Vec<String> = Vec::new();
    let mut by_check: std::collections::BTreeMap<String, VerifyReport> =
        std::collections::BTreeMap::new();
    let mut violations: std::collections::BTreeMap<String, usize> =
        std::collections::BTreeMap::new();
    for rec in records {
        let r = &rec.report;
        if r.check == "trial_instance" {
            continue;
        }
        let violated =
            r.status == Status::Fail || (r.status == Status::Observation && r.witness.is_some());
        if violated {
            *violations.entry(r.check.clone()).or_insert(0) += 1;
        }
        match by_check.get_mut(&r.check) {
            None => {
                order.push(r.check.clone());
                let mut agg = r.clone();
                agg.seed = seed;
                by_check.insert(r.check.clone(), agg);
            }
            Some(agg) => {
                agg.trials += 1;
                if r.worst_margin < agg.worst_margin {
                    agg.worst_margin = r.worst_margin;
                    if r.witness.is_some() {
                        agg.witness = r.witness.clone();
                    }
                }
                if r.witness.is_some() && agg.witness.is_none() {
                    agg.witness = r.witness.clone();
                }
                let escalate = matches!(
                    (agg.status, r.status),
                    (Status::Pass, Status::Fail)
                        | (Status::Pass, Status::Observation)
                        | (Status::Observation, Status::Fail)
                );
                if escalate {
                    agg.status = r.status;
                }
            }
        }
    }

    // Derived observations: the conjectured Hodge degree bound, and whether
    // any open set exhibited a singular connection Laplacian.
    let mut hodge_margin = f64::INFINITY;
    let mut hodge_violations = 0usize;
    let mut hodge_witness = None;
    let mut degree_trials = 0usize;
    let mut singular_seen = 0usize;
    let mut open_conn_trials = 0usize;
    for rec in records {
        let r = &rec.report;
        if r.check.starts_with("degree_bounds") {
            degree_trials += 1;
            if let Some(m) = r.info["hodge_margin"].as_f64() {
                if m < hodge_margin {
                    hodge_margin = m;
                }
            }
            if r.info["hodge_violated"].as_bool() == Some(true) {
                hodge_violations += 1;
                if hodge_witness.is_none() {
                    hodge_witness = Some(r.info["hodge_witness"].clone());
                }
            }
        }
        if r.check == "unimodularity_open" {
            open_conn_trials += 1;
            if r.info["singular"].as_bool() == Some(true) {
                singular_seen += 1;
            }
        }
    }
    let mut reports: Vec<VerifyReport> = order
        .into_iter()
        .map(|name| {
            let mut r = by_check.remove(&name).unwrap();
            r.info = json!({ "violations": violations.get(&name).copied().unwrap_or(0) });
            r
        })
        .collect();
    if degree_trials > 0 {
        let mut r = VerifyReport::new(
            "degree_bound_hodge",
            Status::Observation,
            if hodge_margin.is_finite() {
                hodge_margin
            } else {
                0.0
            },
            json!({ "violations": hodge_violations }),
        );
        r.trials = degree_trials;
        r.seed = seed;
        if let Some(w) = hodge_witness {
            r.witness = Some(w);
        }
        reports.push(r);
    }
    if open_conn_trials > 0 {
        let mut r = VerifyReport::new(
            "open_connection_singular",
            Status::Observation,
            0.0,
            json!({
                "singular_seen": singular_seen,
                "absent": singular_seen == 0,
            }),
        );
        r.trials = open_conn_trials;
        r.seed = seed;
        reports.push(r);
    }
    reports
}

/// Runs the seeded randomized suite. Deterministic for a fixed spec; trials
/// may execute in parallel, the record stream is ordered by trial index.
pub fn run_suite(spec: &TrialSpec) -> Result<SuiteOutcome, VerifyError> {
    spec.validate()?;
    let trial_results: Vec<Result<Vec<TrialRecord>, VerifyError>> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..spec.trials)
                .into_par_iter()
                .map(|t| run_trial(spec, t))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..spec.trials).map(|t| run_trial(spec, t)).collect()
        }
    };
    let mut records = Vec::new();
    for r in trial_results {
        records.extend(r?);
    }
    let reports = aggregate(&records, spec.seed);
    let passed = !reports.iter().any(|r| r.is_fail());
    Ok(SuiteOutcome {
        reports,
        records,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn interval() -> Complex {
        Complex::closure(&[sx(&[1, 2])]).unwrap()
    }

    fn circle() -> Complex {
        Complex::closure(&[sx(&[1, 2]), sx(&[2, 3]), sx(&[3, 4]), sx(&[4, 1])]).unwrap()
    }

    #[test]
    fn monotonicity_on_circle_examples() {
        let g = circle();
        let k = g.subset(vec![sx(&[1]), sx(&[2]), sx(&[1, 2])]).unwrap();
        let r = check_spectral_monotonicity(&g, &k).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.worst_margin >= -1e-9);

        let whole = g.subset(g.elements().to_vec()).unwrap();
        let r = check_spectral_monotonicity(&g, &whole).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.worst_margin.abs() <= 1e-9, "equality when S = G");
    }

    #[test]
    fn monotonicity_strict_fusion_example() {
        let g = interval();
        let k = g.subset(vec![sx(&[1]), sx(&[2])]).unwrap();
        let r = check_spectral_monotonicity(&g, &k).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(
            r.worst_margin.abs() <= 1e-9,
            "padded zeros against {{0,2,2}}"
        );
    }

    #[test]
    fn monotonicity_rejects_neither_subsets() {
        let g = Complex::closure(&[sx(&[1, 2]), sx(&[2, 3])]).unwrap();
        let s = g.subset(vec![sx(&[1]), sx(&[2, 3])]).unwrap();
        assert!(matches!(
            check_spectral_monotonicity(&g, &s),
            Err(VerifyError::NotOpenOrClosed)
        ));
    }

    #[test]
    fn form_monotonicity_circle_vs_interval() {
        let g = circle();
        let k = g.subset(vec![sx(&[1]), sx(&[2]), sx(&[1, 2])]).unwrap();
        let r = check_form_monotonicity(&g, &k).unwrap();
        assert_eq!(r.status, Status::Pass);
        let u = g.complement(&k).unwrap();
        let r = check_form_monotonicity(&g, &u).unwrap();
        assert_eq!(r.status, Status::Pass);

        // the k = 1 blocks directly: σ(L_1(G)) = {0,2,2,4} against the
        // padded σ(L_1(K)) = {0,0,0,2}
        let blocks_g = hodge_spectra(&hodge(g.elements())).unwrap();
        let blocks_k = hodge_spectra(&hodge(k.elements())).unwrap();
        let padded = pad_left(&blocks_k[1], 4).unwrap();
        let want_g = [0.0, 2.0, 2.0, 4.0];
        let want_k = [0.0, 0.0, 0.0, 2.0];
        for j in 0..4 {
            assert!((blocks_g[1].values()[j] - want_g[j]).abs() < 1e-9);
            assert!((padded.values()[j] - want_k[j]).abs() < 1e-9);
        }
    }

    #[test]
    fn form_monotonicity_handles_empty_blocks() {
        // a subset missing a whole degree: its 0x0 block pads to zeros
        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        let k = tri.subset(vec![sx(&[1]), sx(&[2]), sx(&[3])]).unwrap();
        let r = check_form_monotonicity(&tri, &k).unwrap();
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn mckean_singer_fixed_cases() {
        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        let r = check_mckean_singer(tri.elements()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.info["nonzero_per_parity"], json!(3));

        let zero_dim = Complex::closure(&[sx(&[1]), sx(&[2])]).unwrap();
        let r = check_mckean_singer(zero_dim.elements()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.info["nonzero_per_parity"], json!(0));
    }

    #[test]
    fn interlacing_fixed_cases() {
        let g = interval();
        let r = check_dirac_interlacing(&g, &sx(&[1, 2])).unwrap();
        assert_eq!(r.status, Status::Pass);

        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        let r = check_dirac_interlacing(&tri, &sx(&[1, 2, 3])).unwrap();
        assert_eq!(r.status, Status::Pass);

        let point = Complex::closure(&[sx(&[7])]).unwrap();
        let r = check_dirac_interlacing(&point, &sx(&[7])).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.worst_margin, 0.0);

        assert!(check_dirac_interlacing(&tri, &sx(&[1])).is_err());
    }

    #[test]
    fn fusion_examples() {
        // equality on the circle
        let g = circle();
        let k = g.subset(vec![sx(&[1]), sx(&[2]), sx(&[1, 2])]).unwrap();
        let u = g.complement(&k).unwrap();
        let r = check_fusion_inequality(&g, &u).unwrap();
        assert_eq!(r.status, Status::Observation);
        assert_eq!(r.worst_margin, 0.0);
        assert_eq!(r.info["slack"], json!([0, 0]));

        // strict inequality on the interval
        let g = interval();
        let u = g.subset(vec![sx(&[1, 2])]).unwrap();
        let r = check_fusion_inequality(&g, &u).unwrap();
        assert_eq!(r.info["slack"], json!([1, 1]));
        assert_eq!(r.worst_margin, 1.0);
        assert!(r.witness.is_none());

        let k = g.subset(vec![sx(&[1]), sx(&[2])]).unwrap();
        assert!(matches!(
            check_fusion_inequality(&g, &k),
            Err(VerifyError::NotOpen)
        ));
    }

    #[test]
    fn fusion_on_the_octahedron_sphere() {
        // 2-sphere = open ball (vertex star) + closed ball:
        // (0,0,1) + (1,0,0) = (1,0,1), slack zero
        let mut edges = Vec::new();
        for i in 1..=6u32 {
            for j in (i + 1)..=6 {
                if !matches!((i, j), (1, 4) | (2, 5) | (3, 6)) {
                    edges.push((i, j));
                }
            }
        }
        let octa = Complex::whitney(&Graph::new(vec![], edges).unwrap());
        let u = octa.star(&sx(&[1])).unwrap();
        let r = check_fusion_inequality(&octa, &u).unwrap();
        assert_eq!(r.status, Status::Observation);
        assert_eq!(r.info["b_u"], json!([0, 0, 1]));
        assert_eq!(r.info["b_k"], json!([1, 0, 0]));
        assert_eq!(r.info["b_g"], json!([1, 0, 1]));
        assert_eq!(r.info["slack"], json!([0, 0, 0]));
    }

    #[test]
    fn complexity_monotone_examples() {
        let g = circle();
        let k = g.subset(vec![sx(&[1]), sx(&[2]), sx(&[1, 2])]).unwrap();
        let r = check_complexity_monotone(&g, &k).unwrap();
        assert_eq!(r.status, Status::Pass);
        let whole = g.subset(g.elements().to_vec()).unwrap();
        let r = check_complexity_monotone(&g, &whole).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.worst_margin, 0.0, "equalities when S = G");
    }

    #[test]
    fn conjectures_on_strict_fusion_example() {
        let g = interval();
        let u = g.subset(vec![sx(&[1, 2])]).unwrap();
        let r = check_conjectures(&g, &u).unwrap();
        assert_eq!(r.status, Status::Observation);
        assert_eq!(r.info["violated"], json!(false));
        // σ(L_{U,K}) = {0,0,0} vs 2σ(L_G) = {0,4,4}
        assert!(r.info["two_sigma_margin"].as_f64().unwrap() >= -1e-9);
    }

    #[test]
    fn conjectures_on_circle_split() {
        // tr(G) = 16 against tr(K) + tr(U) = 4 + 10
        let g = circle();
        let k = g.subset(vec![sx(&[1]), sx(&[2]), sx(&[1, 2])]).unwrap();
        let u = g.complement(&k).unwrap();
        let r = check_conjectures(&g, &u).unwrap();
        assert_eq!(r.status, Status::Observation);
        assert_eq!(r.info["violated"], json!(false));
        assert!(r.info["trace_margin"].as_f64().unwrap() >= 0.0);
        assert!(r.info["det_log_margin"].as_f64().unwrap() >= -1e-9);
    }

    #[test]
    fn degree_bounds_on_k3() {
        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        let r = check_degree_bounds(tri.elements(), SetClass::Whole).unwrap();
        assert_eq!(r.status, Status::Pass);
        // λ = {0,3,3}, degrees {2,2,2}: worst slack is 2+2-3 = 1
        assert!((r.worst_margin - 1.0).abs() < 1e-9);

        let zero_dim = Complex::closure(&[sx(&[1]), sx(&[2])]).unwrap();
        let r = check_degree_bounds(zero_dim.elements(), SetClass::Whole).unwrap();
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn unimodularity_fixed_cases() {
        let g = interval();
        let r = check_unimodularity(g.elements(), SetClass::Whole).unwrap();
        assert_eq!(r.status, Status::Pass);
        let u = g.subset(vec![sx(&[1, 2])]).unwrap();
        let r = check_unimodularity(u.elements(), SetClass::Open).unwrap();
        assert_eq!(r.status, Status::Observation);
    }

    #[test]
    fn hydrogen_fixed_cases() {
        let point = Complex::closure(&[sx(&[1])]).unwrap();
        let r = check_hydrogen_identity(&point).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.worst_margin, 0.0);

        // the raw identity misses by exactly 2 in this sign convention
        let r = check_hydrogen_identity(&interval()).unwrap();
        assert_eq!(r.status, Status::Observation);
        assert!((r.info["residual"].as_f64().unwrap() - 2.0).abs() < 1e-9);

        let r = check_hydrogen_identity(&circle()).unwrap();
        assert_eq!(r.status, Status::Observation);
        assert!((r.info["residual"].as_f64().unwrap() - 2.0).abs() < 1e-9);

        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        assert!(matches!(
            check_hydrogen_identity(&tri),
            Err(VerifyError::NotOneDimensional(2))
        ));
    }

    #[test]
    fn euler_poincare_fixed_cases() {
        for els in [
            circle().elements().to_vec(),
            interval().elements().to_vec(),
            vec![sx(&[0]), sx(&[1]), sx(&[2]), sx(&[3, 4]), sx(&[5, 6, 7, 8])],
        ] {
            let r = check_euler_poincare(&els).unwrap();
            assert_eq!(r.status, Status::Pass, "{els:?}");
        }
    }

    /// Pseudo-determinant monotonicity has genuine counterexamples on sparse
    /// complexes (splitting a tree raises the rooted-forest count), so a
    /// `complexity_monotone` failure is expected there — but only in its
    /// `Det` component. Every other proven claim must hold.
    fn assert_only_det_failures(out: &SuiteOutcome) {
        for r in out.reports.iter().filter(|r| r.is_fail()) {
            assert_eq!(r.check, "complexity_monotone", "unexpected failure: {r:?}");
        }
        for rec in &out.records {
            if rec.report.check == "complexity_monotone" && rec.report.status == Status::Fail {
                assert_eq!(rec.report.info["forest"]["ok"], json!(true));
                assert_eq!(rec.report.info["trace"]["ok"], json!(true));
                assert_eq!(rec.report.info["det"]["ok"], json!(false));
            }
        }
    }

    #[test]
    fn suite_is_deterministic_and_validates() {
        let spec = TrialSpec {
            generator: Generator::WhitneyGnp {
                nv: (6, 8),
                edge_prob: (0.3, 0.5),
            },
            split: Split::RandomOpenSet { stars: (1, 3) },
            seed: 7,
            trials: 3,
        };
        let a = run_suite(&spec).unwrap();
        let b = run_suite(&spec).unwrap();
        let ja = serde_json::to_string(&a.records).unwrap();
        let jb = serde_json::to_string(&b.records).unwrap();
        assert_eq!(ja, jb);
        assert_only_det_failures(&a);

        let bad = TrialSpec {
            generator: Generator::WhitneyGnp {
                nv: (5, 3),
                edge_prob: (0.3, 0.5),
            },
            ..spec.clone()
        };
        assert!(matches!(run_suite(&bad), Err(VerifyError::BadTrialSpec(_))));

        let empty = TrialSpec {
            trials: 0,
            ..spec.clone()
        };
        let out = run_suite(&empty).unwrap();
        assert!(out.records.is_empty());
        assert!(out.reports.is_empty());
        assert!(out.passed);
    }

    #[test]
    fn suite_covers_other_splits() {
        let base = TrialSpec {
            generator: Generator::WhitneyGnp {
                nv: (6, 7),
                edge_prob: (0.4, 0.5),
            },
            split: Split::DeleteLocallyMaximal,
            seed: 11,
            trials: 2,
        };
        assert_only_det_failures(&run_suite(&base).unwrap());
        let sub = TrialSpec {
            split: Split::RandomSubcomplex { deletions: (0, 6) },
            ..base
        };
        assert_only_det_failures(&run_suite(&sub).unwrap());
    }

    #[test]
    fn complexity_det_counterexample_is_detected() {
        // the 7-vertex tree loses Det monotonicity when an open set around
        // vertex 5 is removed: Det(L_K) = 8·8 = 64 > 49 = 7·7 = Det(L_G)
        let g = Complex::closure(&[
            sx(&[1, 2]),
            sx(&[1, 3]),
            sx(&[2, 6]),
            sx(&[4, 5]),
            sx(&[4, 6]),
            sx(&[4, 7]),
        ])
        .unwrap();
        let u = g.subset(vec![sx(&[5]), sx(&[4, 5]), sx(&[4, 6])]).unwrap();
        assert!(u.is_open());
        let k = g.complement(&u).unwrap();
        let det_g = crate::spectral::hodge_det(g.elements()).unwrap();
        let det_k = crate::spectral::hodge_det(k.elements()).unwrap();
        assert_eq!(det_g.exact, Some(num_bigint::BigInt::from(49)));
        assert_eq!(det_k.exact, Some(num_bigint::BigInt::from(64)));
        let r = check_complexity_monotone(&g, &k).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.info["det"]["ok"], json!(false));
        assert_eq!(r.info["forest"]["ok"], json!(true));
        assert_eq!(r.info["trace"]["ok"], json!(true));
        // the spectral theorem itself still holds on the same pair
        let m = check_spectral_monotonicity(&g, &k).unwrap();
        assert_eq!(m.status, Status::Pass);
    }

    #[test]
    fn suite_on_explicit_complex() {
        let spec = TrialSpec {
            generator: Generator::Explicit {
                facets: vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
            },
            split: Split::RandomOpenSet { stars: (1, 4) },
            seed: 3,
            trials: 4,
        };
        let out = run_suite(&spec).unwrap();
        assert!(out.passed);
        // hydrogen check runs on one-dimensional complexes
        assert!(out.reports.iter().any(|r| r.check == "hydrogen_identity"));
    }
}
