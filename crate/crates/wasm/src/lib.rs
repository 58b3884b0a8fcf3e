//! Browser bindings. Every export returns a JSON string; errors come back as
//! a JS exception carrying the message.

use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use gelfand::group::Limits;
use gelfand::harness::family::cyclic_family;
use gelfand::harness::suites::suite_weight;
use gelfand::harness::{catalog, find};
use gelfand::pair::GelfandPair;
use gelfand::sobolev::{
    class_moduli, embedding_lp_constant, embedding_sup_constant, SobolevParams, WeightDocument,
};

fn load(name: &str) -> Result<GelfandPair, String> {
    let entry = find(name).map_err(|e| e.to_string())?;
    if !entry.expect_gelfand {
        return Err(format!("{name} is not a Gelfand pair"));
    }
    entry.pair(&Limits::default()).map_err(|e| e.to_string())
}

fn pack(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn pairs_json() -> String {
    let entries: Vec<Value> = catalog()
        .iter()
        .filter(|e| e.expect_gelfand)
        .map(|e| json!({"name": e.name, "description": e.description}))
        .collect();
    Value::Array(entries).to_string()
}

/// Class sizes, spherical functions on classes and Plancherel weights.
pub fn spherical_table_json(pair: &str) -> Result<String, String> {
    let pair = load(pair)?;
    let space = pair.space();
    let doc = json!({
        "pair": pair.name(),
        "order": pair.group().order(),
        "classSizes": (0..space.len()).map(|c| space.class_size(c)).collect::<Vec<_>>(),
        "basis": pair.basis().functions().iter().map(|f| pack(f.class_values())).collect::<Vec<_>>(),
        "plancherel": pair.plancherel().weights,
    });
    Ok(doc.to_string())
}

/// γ, the embedding constants and the translation modulus on each class.
/// An empty `weight` selects the Cayley weight on `D_1 ∪ D_1⁻¹`.
pub fn sobolev_profile_json(pair: &str, weight: &str, s: f64, alpha: f64) -> Result<String, String> {
    let pair = load(pair)?;
    let doc = if weight.trim().is_empty() {
        None
    } else {
        Some(WeightDocument::parse(weight).map_err(|e| e.to_string())?)
    };
    let gamma = suite_weight(&pair, doc.as_ref()).map_err(|e| e.to_string())?;
    let params = SobolevParams::new(s, Some(alpha)).map_err(|e| e.to_string())?;
    let out = json!({
        "gamma": gamma.gamma,
        "mode": gamma.mode,
        "supConstant": embedding_sup_constant(&pair, &gamma, s).map_err(|e| e.to_string())?,
        "lpConstant": embedding_lp_constant(&pair, &gamma, &params).map_err(|e| e.to_string())?,
        "p": params.p().map_err(|e| e.to_string())?,
        "pConjugate": params.p_conjugate().map_err(|e| e.to_string())?,
        "moduli": class_moduli(&pair, &gamma, s).map_err(|e| e.to_string())?,
    });
    Ok(out.to_string())
}

/// Translation moduli of `ℤ_n`, `n = 4, 8, ..., ≤ max_n`.
pub fn cyclic_family_json(max_n: usize, s: f64) -> Result<String, String> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(format!("s = {s} must be >= 0"));
    }
    let ns: Vec<usize> = (1..).map(|k| 4 * k).take_while(|n| *n <= max_n.min(1024)).collect();
    Ok(serde_json::to_string(&cyclic_family(&ns, s)).unwrap())
}

#[wasm_bindgen]
pub fn pairs() -> String {
    pairs_json()
}

#[wasm_bindgen]
pub fn spherical_table(pair: &str) -> Result<String, JsValue> {
    spherical_table_json(pair).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sobolev_profile(pair: &str, weight: &str, s: f64, alpha: f64) -> Result<String, JsValue> {
    sobolev_profile_json(pair, weight, s, alpha).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cyclic_family_moduli(max_n: usize, s: f64) -> Result<String, JsValue> {
    cyclic_family_json(max_n, s).map_err(|e| JsValue::from_str(&e))
}
