//! Browser bindings for the demo page: build a complex (from facets or a
//! random graph), split it into a random open set and its closed
//! complement, and hand the padded spectra, differences, and invariants to
//! JavaScript as JSON strings.
//!
//! The `_impl` functions carry the logic and are testable on any target;
//! the exported wrappers only translate errors into `JsValue`.

use wasm_bindgen::prelude::*;

use hodge_core::complex::{Complex, Graph, Simplex};
use hodge_core::operators::hodge;
use hodge_core::spectral::{
    betti_exact, hodge_det, hodge_spectra, merge_spectra, pad_left, Spectrum,
};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse_facets(facets_json: &str) -> Result<Vec<Simplex>, String> {
    // accept either {"facets": [[...]]} or a bare [[...]]
    let value: serde_json::Value = serde_json::from_str(facets_json).map_err(err)?;
    let arr = value.get("facets").cloned().unwrap_or(value);
    let lists: Vec<Vec<u32>> = serde_json::from_value(arr).map_err(err)?;
    lists
        .into_iter()
        .map(|v| Simplex::new(v).map_err(err))
        .collect()
}

fn complex_summary(c: &Complex) -> serde_json::Value {
    serde_json::json!({
        "facets": c.facets().iter().map(|s| s.vertices().to_vec()).collect::<Vec<_>>(),
        "size": c.len(),
        "dimension": c.dim(),
        "f_vector": c.f_vector(),
        "euler_characteristic": c.euler_characteristic(),
        "betti": betti_exact(c.elements()),
    })
}

fn build_complex_impl(facets_json: &str) -> Result<String, String> {
    let facets = parse_facets(facets_json)?;
    let c = Complex::closure(&facets).map_err(err)?;
    Ok(complex_summary(&c).to_string())
}

fn random_whitney_impl(nv: u32, edge_prob: f64, seed: u64) -> Result<String, String> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err("edge probability must lie in [0, 1]".into());
    }
    if nv == 0 || nv > 24 {
        return Err("vertex count must lie in 1..=24".into());
    }
    let c = Complex::whitney(&Graph::gnp_seeded(nv, edge_prob, seed));
    Ok(complex_summary(&c).to_string())
}

fn padded_diff(
    spec_g: &Spectrum,
    spec_s: &Spectrum,
    n: usize,
) -> Result<(Vec<f64>, Vec<f64>), String> {
    let padded = pad_left(spec_s, n).map_err(err)?;
    let diffs = spec_g
        .values()
        .iter()
        .zip(padded.values())
        .map(|(g, s)| g - s)
        .collect();
    Ok((padded.values().to_vec(), diffs))
}

fn split_spectra_impl(facets_json: &str, stars: u32, seed: u64) -> Result<String, String> {
    let facets = parse_facets(facets_json)?;
    let g = Complex::closure(&facets).map_err(err)?;
    if g.is_empty() {
        return Err("the complex is empty".into());
    }
    if g.len() > 4000 {
        return Err("complex too large for the in-browser demo".into());
    }
    let u = g
        .random_open_set(stars.max(1) as usize, seed)
        .map_err(err)?;
    let k = g.complement(&u).map_err(err)?;

    let blocks_g = hodge_spectra(&hodge(g.elements())).map_err(err)?;
    let blocks_u = hodge_spectra(&hodge(u.elements())).map_err(err)?;
    let blocks_k = hodge_spectra(&hodge(k.elements())).map_err(err)?;
    let full_g = merge_spectra(&blocks_g);
    let full_u = merge_spectra(&blocks_u);
    let full_k = merge_spectra(&blocks_k);
    let (pad_u, diff_u) = padded_diff(&full_g, &full_u, g.len())?;
    let (pad_k, diff_k) = padded_diff(&full_g, &full_k, g.len())?;
    let joint = merge_spectra(&[full_u.clone(), full_k.clone()]);

    let mut per_form = Vec::new();
    for (kk, bg) in blocks_g.iter().enumerate() {
        let bu = blocks_u.get(kk).cloned().unwrap_or_else(Spectrum::empty);
        let bk = blocks_k.get(kk).cloned().unwrap_or_else(Spectrum::empty);
        let (_, du) = padded_diff(bg, &bu, bg.len())?;
        let (_, dk) = padded_diff(bg, &bk, bg.len())?;
        per_form.push(serde_json::json!({
            "k": kk,
            "lambda_g": bg.values(),
            "diff_u": du,
            "diff_k": dk,
        }));
    }

    let b_g = betti_exact(g.elements());
    let b_u = betti_exact(u.elements());
    let b_k = betti_exact(k.elements());
    let len = b_g.len().max(b_u.len()).max(b_k.len());
    let (pg, pu, pk) = (b_g.padded(len), b_u.padded(len), b_k.padded(len));
    let slack: Vec<i64> = (0..len)
        .map(|i| pu[i] as i64 + pk[i] as i64 - pg[i] as i64)
        .collect();

    let det_g = hodge_det(g.elements()).map_err(err)?;
    let det_u = hodge_det(u.elements()).map_err(err)?;
    let det_k = hodge_det(k.elements()).map_err(err)?;
    let tr = |els: &[Simplex]| hodge(els).full().trace();

    let out = serde_json::json!({
        "n": g.len(),
        "f_vector": g.f_vector(),
        "u": { "elements": u.elements().iter().map(|s| s.vertices().to_vec()).collect::<Vec<_>>(),
               "size": u.len(), "betti": pu, "kind": u.kind() },
        "k": { "size": k.len(), "betti": pk, "kind": k.kind() },
        "betti_g": pg,
        "fusion_slack": slack,
        "lambda_g": full_g.values(),
        "lambda_u_padded": pad_u,
        "lambda_k_padded": pad_k,
        "lambda_joint": joint.values(),
        "diff_u": diff_u,
        "diff_k": diff_k,
        "per_form": per_form,
        "invariants": {
            "trace_g": tr(g.elements()), "trace_u": tr(u.elements()), "trace_k": tr(k.elements()),
            "det_g": det_g, "det_u": det_u, "det_k": det_k,
        },
    });
    Ok(out.to_string())
}

/// Closure of the given facets, with f-vector, Euler characteristic and
/// Betti vector. Input: `{"facets": [[1,2,3],...]}` or `[[1,2,3],...]`.
#[wasm_bindgen]
pub fn build_complex(facets_json: &str) -> Result<String, JsValue> {
    build_complex_impl(facets_json).map_err(|e| JsValue::from_str(&e))
}

/// Whitney complex of a seeded Erdős–Rényi graph G(nv, edge_prob).
#[wasm_bindgen]
pub fn random_whitney(nv: u32, edge_prob: f64, seed: u64) -> Result<String, JsValue> {
    random_whitney_impl(nv, edge_prob, seed).map_err(|e| JsValue::from_str(&e))
}

/// Splits the complex into a random open set (union of `stars` stars) and
/// its closed complement, and returns padded spectra, per-form differences,
/// Betti vectors, fusion slack, and complexity invariants as JSON.
#[wasm_bindgen]
pub fn split_spectra(facets_json: &str, stars: u32, seed: u64) -> Result<String, JsValue> {
    split_spectra_impl(facets_json, stars, seed).map_err(|e| JsValue::from_str(&e))
}
