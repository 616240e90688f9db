//! Browser demo: three operations exposed to JavaScript through wasm-bindgen.
//!
//! Each export is a thin wrapper over a plain function returning JSON text, so
//! the logic can be tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use parcol::bounds::{ceil_lg, gray_count_bound, hopf_stiefel, pathpower_bounds};
use parcol::coloring::{canonicalize, spec_violation, ColoringError, EdgeColoring};
use parcol::graph::{generate, Family, Graph};
use parcol::gray::gray_coloring;

/// Largest path power the page will draw.
pub const MAX_GRAY_N: usize = 1024;
/// Largest Hopf-Stiefel table.
pub const MAX_TABLE: u64 = 64;

/// Gray code coloring of the path power `P_n^ell` with its census and bounds.
pub fn gray_json(n: usize, ell: usize) -> Result<String, String> {
    if n > MAX_GRAY_N {
        return Err(format!("n is limited to {MAX_GRAY_N} in the demo"));
    }
    let gc = gray_coloring(n, ell).map_err(|e| e.to_string())?;
    let edges: Vec<_> = gc
        .graph
        .edges()
        .iter()
        .zip(gc.coloring.colors())
        .map(|(&(u, v), &c)| json!([u, v, c]))
        .collect();
    let labels: Vec<String> = gc.labeling.labels().iter().map(|x| x.to_hex()).collect();
    let bounds = if gc.in_regime {
        pathpower_bounds(n as u64, ell as u64)
            .ok()
            .map(|(lo, hi)| json!({ "lower": lo, "gray_count": gray_count_bound(n as u64, ell as u64), "upper": hi }))
    } else {
        None
    };
    Ok(json!({
        "n": n,
        "ell": ell,
        "lg_n": ceil_lg(n as u64),
        "in_regime": gc.in_regime,
        "labels": labels,
        "edges": edges,
        "num_colors": gc.coloring.num_colors(),
        "census": if gc.in_regime { json!(gc.census()) } else { json!(null) },
        "bounds": bounds,
    })
    .to_string())
}

/// Parses `"cycle 6"`, `"complete_bipartite 2 3"` and the like, or graph JSON.
pub fn parse_graph(spec: &str) -> Result<Graph, String> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return serde_json::from_str(spec).map_err(|e| e.to_string());
    }
    let mut words = spec.split_whitespace();
    let name = words.next().ok_or("empty graph description")?;
    let params = words.map(|w| w.parse::<usize>().map_err(|e| format!("{w}: {e}"))).collect::<Result<Vec<_>, _>>()?;
    let family = Family::parse(name, &params).map_err(|e| e.to_string())?;
    if family_size(&family) > 64 {
        return Err("the demo draws graphs with at most 64 vertices".into());
    }
    generate(family).map_err(|e| e.to_string())
}

fn family_size(f: &Family) -> usize {
    match *f {
        Family::Complete(n) | Family::Path(n) | Family::PathPower(n, _) | Family::Cycle(n) => n,
        Family::BipartitePathPower(n, _) => n,
        Family::CompleteBipartite(s, t) => s.saturating_add(t),
        Family::Hypercube(k) => 1usize.checked_shl(k as u32).unwrap_or(usize::MAX),
    }
}

/// Canonicalizes a user coloring, or reports two vertices joined by an open
/// parity walk.
pub fn canonicalize_json(graph: &str, coloring: &str) -> Result<String, String> {
    let g = parse_graph(graph)?;
    let phi = EdgeColoring::parse_list(coloring).map_err(|e| e.to_string())?;
    phi.check_graph(&g).map_err(|e| e.to_string())?;
    let edges: Vec<_> = g.edges().iter().map(|&(u, v)| json!([u, v])).collect();
    match canonicalize(&g, &phi, 0) {
        Ok(res) => {
            let mut out = res.to_json();
            out["spec"] = json!(true);
            out["n"] = json!(g.n());
            out["edges"] = json!(edges);
            out["coloring"] = json!(phi.colors());
            Ok(out.to_string())
        }
        Err(ColoringError::NotSpec(..)) => {
            let pair = spec_violation(&g, &phi, 0).map_err(|e| e.to_string())?;
            Ok(json!({
                "spec": false,
                "n": g.n(),
                "edges": edges,
                "coloring": phi.colors(),
                "parity_walk_between": pair,
            })
            .to_string())
        }
        Err(e) => Err(e.to_string()),
    }
}

/// `s ∘ t` for `1 <= s, t <= max`, row by row.
pub fn hopf_stiefel_json(max: u64) -> Result<String, String> {
    if !(1..=MAX_TABLE).contains(&max) {
        return Err(format!("table size must be between 1 and {MAX_TABLE}"));
    }
    let rows: Vec<Vec<u64>> = (1..=max).map(|s| (1..=max).map(|t| hopf_stiefel(s, t)).collect()).collect();
    Ok(json!({ "max": max, "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn gray(n: usize, ell: usize) -> Result<String, JsValue> {
    gray_json(n, ell).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = canonicalizeColoring)]
pub fn canonicalize_coloring(graph: &str, coloring: &str) -> Result<String, JsValue> {
    canonicalize_json(graph, coloring).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = hopfStiefelTable)]
pub fn hopf_stiefel_table(max: u32) -> Result<String, JsValue> {
    hopf_stiefel_json(max.into()).map_err(|e| JsValue::from_str(&e))
}
