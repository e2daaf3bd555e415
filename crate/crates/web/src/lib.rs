//! Browser bindings. Every export returns a JSON string; the plain functions
//! underneath are what the native tests call.

use paritylab::arith::{parse_rational, render_rational, Rational};
use paritylab::curve::{CurveModel, CurveRecord, TwoIsogenyData};
use paritylab::hilbert::{hilbert_symbol, PlaceQ};
use paritylab::localdata::{tate_algorithm, LocalField};
use paritylab::parity::{correction_term, sigma_real, Place};
use paritylab::rootnum::{bad_primes, global_root_number_q, local_root_number_detail};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_GRID: i64 = 60;
const MAX_VALUES: usize = 24;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// σ_∞, the correction term and w_∞ = −1 on the grid of integral (a, b)
/// with b(a² − 4b) ≠ 0, for y² = x³ + ax² + bx.
pub fn real_place_map(a_min: i64, a_max: i64, b_min: i64, b_max: i64) -> Result<Value, String> {
    if a_min > a_max || b_min > b_max {
        return Err("empty range".into());
    }
    if a_max - a_min > MAX_GRID || b_max - b_min > MAX_GRID {
        return Err(format!("each range may span at most {MAX_GRID}"));
    }
    let mut cells = vec![];
    for b in b_min..=b_max {
        for a in a_min..=a_max {
            if b == 0 || a * a == 4 * b {
                continue;
            }
            let iso = TwoIsogenyData::from_ab(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
                .map_err(err)?;
            let sigma = sigma_real(&iso).map_err(err)?.value;
            let corr = correction_term(&iso, Place::Real).map_err(err)?;
            cells.push(json!({ "a": a, "b": b, "sigma": sigma, "corr": corr, "equal": sigma * corr == -1 }));
        }
    }
    Ok(json!({ "w": -1, "cells": cells }))
}

fn parse_curve(text: &str) -> Result<CurveModel, String> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let ainvs: Vec<String> = t.split(',').map(|s| s.trim().trim_matches('"').to_string()).collect();
    CurveRecord { label: None, ainvs }.to_model().map_err(err)
}

/// Tate's algorithm at every bad prime plus the local and global root numbers.
pub fn curve_local_data(ainvs: &str) -> Result<Value, String> {
    let e = parse_curve(ainvs)?;
    let mut places = vec![];
    for p in bad_primes(&e).map_err(err)? {
        let k = LocalField::new(p, 1).map_err(err)?;
        let ld = tate_algorithm(&e, k);
        let w = match local_root_number_detail(&e, k) {
            Ok((w, prov)) => json!({ "w": w, "provenance": prov }),
            Err(x) => json!({ "w": null, "why": x.to_string() }),
        };
        places.push(json!({
            "p": p,
            "kodaira": ld.kodaira.to_string(),
            "reduction": ld.reduction,
            "conductor_exponent": ld.conductor_exponent,
            "tamagawa": ld.tamagawa,
            "min_disc_valuation": ld.min_disc_valuation,
            "root_number": w,
        }));
    }
    let global = global_root_number_q(&e).ok();
    Ok(json!({
        "curve": CurveRecord::from_model(None, &e),
        "discriminant": render_rational(&e.discriminant()),
        "j": render_rational(&e.j_invariant()),
        "places": places,
        "global_root_number": global,
    }))
}

fn parse_place(s: &str) -> Result<PlaceQ, String> {
    match s.trim() {
        "inf" | "infinity" | "real" => Ok(PlaceQ::Real),
        t => PlaceQ::finite(t.parse::<u64>().map_err(|_| format!("bad place {t:?}"))?).map_err(err),
    }
}

/// (x, y)_v for every pair from a comma-separated list of nonzero rationals.
pub fn hilbert_symbol_table(values: &str, place: &str) -> Result<Value, String> {
    let v = parse_place(place)?;
    let xs: Vec<Rational> = values.split(',').map(|s| parse_rational(s.trim()).map_err(err)).collect::<Result<_, _>>()?;
    if xs.len() > MAX_VALUES {
        return Err(format!("at most {MAX_VALUES} values"));
    }
    let mut rows = vec![];
    for x in &xs {
        let row: Vec<i8> = xs.iter().map(|y| hilbert_symbol(x, y, v)).collect::<Result<_, _>>().map_err(err)?;
        rows.push(row);
    }
    let labels: Vec<String> = xs.iter().map(render_rational).collect();
    Ok(json!({ "place": v.to_string(), "values": labels, "table": rows }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = realPlaceMap)]
pub fn real_place_map_js(a_min: i32, a_max: i32, b_min: i32, b_max: i32) -> Result<String, JsValue> {
    to_js(real_place_map(a_min.into(), a_max.into(), b_min.into(), b_max.into()))
}

#[wasm_bindgen(js_name = localData)]
pub fn local_data_js(ainvs: &str) -> Result<String, JsValue> {
    to_js(curve_local_data(ainvs))
}

#[wasm_bindgen(js_name = hilbertTable)]
pub fn hilbert_table_js(values: &str, place: &str) -> Result<String, JsValue> {
    to_js(hilbert_symbol_table(values, place))
}
