//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; the page does the drawing. The JSON
//! builders live in [`demo`] so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod demo;

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Out-degree histogram of `G(r, n)` with the large-`N` law alongside.
#[wasm_bindgen(js_name = degreeDistribution)]
pub fn degree_distribution(r: u32, n: u32) -> Result<String, JsValue> {
    to_js(demo::degree_distribution(r as u64, n as u64))
}

/// Random and targeted attack curves for `G(r, n)` and a static-model graph
/// of the same size and mean out-degree.
#[wasm_bindgen(js_name = attackCurves)]
pub fn attack_curves(r: u32, n: u32, trials: u32, seed: u32) -> Result<String, JsValue> {
    to_js(demo::attack_curves(r as u64, n as u64, trials as usize, seed as u64))
}

/// Solves congruences given one `"<r> mod <m>"` per line.
#[wasm_bindgen(js_name = solveCongruences)]
pub fn solve_congruences(text: &str) -> Result<String, JsValue> {
    to_js(demo::solve_congruences(text))
}
