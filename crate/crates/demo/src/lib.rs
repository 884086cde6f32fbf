//! WebAssembly bindings for the browser demo.
//!
//! Each exported function returns a JSON string. The plain Rust functions
//! behind them are public so they can be tested natively.

use catalan_zi::bounds::sin_threshold;
use catalan_zi::elliptic::{fiber_quadratic_3r, fiber_quadratic_4r};
use catalan_zi::interval::{abs_sin_two_pi_ratio, Interval};
use catalan_zi::search::{nontrivial, search_catalan, SearchBox};
use catalan_zi::GaussianInt;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest search bound the page accepts.
pub const MAX_DEMO_BOUND: u64 = 40;
/// Largest slope magnitude the page plots.
pub const MAX_DEMO_SLOPE: i64 = 200;

#[derive(Debug, Serialize)]
pub struct SearchView {
    pub p: u32,
    pub q: u32,
    pub bound: u64,
    pub total: usize,
    pub nontrivial: Vec<(GaussianInt, GaussianInt)>,
    pub trivial: Vec<(GaussianInt, GaussianInt)>,
}

#[derive(Debug, Serialize)]
pub struct SinRow {
    pub n: u32,
    pub lo: f64,
    pub hi: f64,
    /// Exact lower endpoint minus the threshold, as `num/den`.
    pub margin: String,
    pub certified: bool,
}

#[derive(Debug, Serialize)]
pub struct SinView {
    pub p: u32,
    pub threshold: String,
    pub threshold_f64: f64,
    pub rows: Vec<SinRow>,
}

#[derive(Debug, Serialize)]
pub struct SlopeRow {
    pub m: i64,
    pub discriminant: String,
    pub negative: bool,
    pub admissible: bool,
}

#[derive(Debug, Serialize)]
pub struct FiberView {
    pub target: String,
    pub rows: Vec<SlopeRow>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Solutions of `x^p - y^q = 1` in the box `max(|re|, |im|) ≤ bound`.
pub fn search(p: u32, q: u32, bound: u64) -> Result<String, String> {
    if bound > MAX_DEMO_BOUND {
        return Err(format!("bound is limited to {MAX_DEMO_BOUND} in the demo"));
    }
    let sols = search_catalan(p, q, SearchBox::new(bound)).map_err(|e| e.to_string())?;
    let trivial = sols.iter().filter(|s| s.trivial).map(|s| (s.x.clone(), s.y.clone())).collect();
    to_json(&SearchView { p, q, bound, total: sols.len(), nontrivial: nontrivial(&sols), trivial })
}

/// `|sin(2πn/p)|` enclosures against the threshold `(6/p)·3^{-(p-3)/2}`.
pub fn sin_margins(p: u32, bits: u32) -> Result<String, String> {
    if !(7..=199).contains(&p) || !catalan_zi::search::is_prime(p) {
        return Err(format!("p must be a prime in 7..=199, got {p}"));
    }
    let threshold = sin_threshold(p);
    let point = Interval::point(threshold.clone());
    let rows = (1..p)
        .map(|n| {
            let e = abs_sin_two_pi_ratio(n as i64, p as i64, bits).map_err(|e| e.to_string())?;
            let (lo, hi) = e.to_f64_pair();
            Ok(SinRow {
                n,
                lo,
                hi,
                margin: (e.lo() - &threshold).to_string(),
                certified: e.compare(&point) == Some(std::cmp::Ordering::Greater),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    to_json(&SinView {
        p,
        threshold: threshold.to_string(),
        threshold_f64: point.to_f64_pair().0,
        rows,
    })
}

/// Discriminants of the fiber quadratics over `4R` (even slopes) or `3R`
/// (odd slopes) for `|m| ≤ max_slope`.
pub fn fiber_discriminants(target: &str, max_slope: i64) -> Result<String, String> {
    if !(1..=MAX_DEMO_SLOPE).contains(&max_slope) {
        return Err(format!("slope range must lie in 1..={MAX_DEMO_SLOPE}"));
    }
    let (parity, quad): (i64, fn(i64) -> catalan_zi::Result<_>) = match target {
        "4R" => (0, fiber_quadratic_4r),
        "3R" => (1, fiber_quadratic_3r),
        other => return Err(format!("target must be 4R or 3R, got {other}")),
    };
    let rows = (-max_slope..=max_slope)
        .filter(|m| m.rem_euclid(2) == parity)
        .map(|m| {
            let f = quad(m).map_err(|e| e.to_string())?;
            Ok(SlopeRow {
                m,
                negative: f.discriminant < 0.into(),
                discriminant: f.discriminant.to_string(),
                admissible: f.admissible,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    to_json(&FiberView { target: target.to_string(), rows })
}

#[wasm_bindgen(js_name = search)]
pub fn search_js(p: u32, q: u32, bound: u32) -> Result<String, JsValue> {
    search(p, q, bound as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = sinMargins)]
pub fn sin_margins_js(p: u32, bits: u32) -> Result<String, JsValue> {
    sin_margins(p, bits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fiberDiscriminants)]
pub fn fiber_discriminants_js(target: &str, max_slope: i32) -> Result<String, JsValue> {
    fiber_discriminants(target, max_slope as i64).map_err(|e| JsValue::from_str(&e))
}
