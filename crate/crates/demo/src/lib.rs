//! Browser bindings for the `linperm` core.
//!
//! Every export takes plain strings and numbers and returns a JSON string,
//! so the page needs no generated TypeScript glue beyond `JSON.parse`.
//! The same functions are callable natively, which is how they are tested.

use linperm::{build_special, dickson_of, generic_inverse, is_permutation, table_of, FieldSpec, LinPoly};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest degree the page will render as a matrix grid.
pub const GRID_MAX_N: usize = 64;
/// Largest degree for which a full scatter of `x -> P(x)` is drawn.
pub const SCATTER_MAX_N: usize = 12;

#[derive(Debug, Serialize)]
pub struct SpecialView {
    pub n: usize,
    pub modulus: String,
    pub a: String,
    pub poly: Vec<String>,
    pub inverse: Vec<String>,
    pub tilde_matrix: Vec<Vec<String>>,
    pub cofactors: Vec<CofactorCheck>,
    pub composes_to_identity: bool,
}

#[derive(Debug, Serialize)]
pub struct CofactorCheck {
    pub i: usize,
    pub formula: String,
    pub matrix: String,
}

#[derive(Debug, Serialize)]
pub struct MatrixView {
    pub n: usize,
    pub modulus: String,
    pub rows: Vec<Vec<String>>,
    pub det: String,
    pub permutation: bool,
    pub inverse: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ScatterView {
    pub n: usize,
    pub forward: Vec<u32>,
    pub inverse: Vec<u32>,
}

fn field(n: usize) -> Result<FieldSpec, String> {
    if n > GRID_MAX_N {
        return Err(format!("n = {n} is above the demo limit of {GRID_MAX_N}"));
    }
    FieldSpec::new(n).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Closed-form inverse of `x + x^2 + tr(x/a)` plus the cofactor table
/// that backs it.
pub fn special_view(n: usize, a: &str) -> Result<SpecialView, String> {
    let f = field(n)?;
    let a = f.parse_element(a).map_err(|e| e.to_string())?;
    let p = build_special(&f, &a).map_err(|e| e.to_string())?;
    let inverse = p.closed_inverse_b();
    let d = dickson_of(&p.tilde_poly());
    let cofactors = (0..n)
        .map(|i| {
            let formula = p.ptilde_cofactor(i).map_err(|e| e.to_string())?;
            let matrix = d.cofactor_col0(i).map_err(|e| e.to_string())?;
            Ok(CofactorCheck { i, formula: formula.to_hex(), matrix: matrix.to_hex() })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let composes_to_identity = p.poly().compose(&inverse).map_err(|e| e.to_string())?.is_identity();
    Ok(SpecialView {
        n,
        modulus: f.modulus_hex(),
        a: a.to_hex(),
        poly: p.poly().to_hex(),
        inverse: inverse.to_hex(),
        tilde_matrix: d.to_hex_rows(),
        cofactors,
        composes_to_identity,
    })
}

/// Dickson matrix of an arbitrary linearized polynomial given as
/// comma-separated hex coefficients, with its inverse when one exists.
pub fn matrix_view(n: usize, coeffs: &str) -> Result<MatrixView, String> {
    let f = field(n)?;
    let parts: Vec<&str> = coeffs.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let l = LinPoly::from_hex(&f, &parts).map_err(|e| e.to_string())?;
    let d = dickson_of(&l);
    let permutation = is_permutation(&l);
    let inverse = if permutation { Some(generic_inverse(&l).map_err(|e| e.to_string())?.to_hex()) } else { None };
    Ok(MatrixView { n, modulus: f.modulus_hex(), rows: d.to_hex_rows(), det: d.det().to_hex(), permutation, inverse })
}

/// Value tables of `P` and its closed-form inverse, for plotting.
pub fn scatter_view(n: usize, a: &str) -> Result<ScatterView, String> {
    if n > SCATTER_MAX_N {
        return Err(format!("scatter is limited to n <= {SCATTER_MAX_N}"));
    }
    let f = field(n)?;
    let a = f.parse_element(a).map_err(|e| e.to_string())?;
    let p = build_special(&f, &a).map_err(|e| e.to_string())?;
    let forward = table_of(p.poly()).map_err(|e| e.to_string())?;
    let inverse = table_of(&p.closed_inverse_b()).map_err(|e| e.to_string())?;
    Ok(ScatterView { n, forward: forward.images().to_vec(), inverse: inverse.images().to_vec() })
}

/// All `a` in GF(2^n) that give a member of the special class, capped at
/// `limit` entries.
pub fn valid_parameters(n: usize, limit: usize) -> Result<Vec<String>, String> {
    let f = field(n)?;
    if n.is_multiple_of(2) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let top = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    for v in 1..=top {
        if out.len() >= limit {
            break;
        }
        let a = f.element(v).map_err(|e| e.to_string())?;
        if build_special(&f, &a).is_ok() {
            out.push(a.to_hex());
        }
    }
    Ok(out)
}

#[wasm_bindgen(js_name = specialInverse)]
pub fn special_inverse(n: usize, a: &str) -> Result<String, JsError> {
    special_view(n, a).and_then(|v| to_json(&v)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = dicksonMatrix)]
pub fn dickson_matrix(n: usize, coeffs: &str) -> Result<String, JsError> {
    matrix_view(n, coeffs).and_then(|v| to_json(&v)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = permutationScatter)]
pub fn permutation_scatter(n: usize, a: &str) -> Result<String, JsError> {
    scatter_view(n, a).and_then(|v| to_json(&v)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = validParameters)]
pub fn valid_parameters_js(n: usize, limit: usize) -> Result<String, JsError> {
    valid_parameters(n, limit).and_then(|v| to_json(&v)).map_err(|e| JsError::new(&e))
}
