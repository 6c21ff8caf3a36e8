//! wasm-bindgen exports for the browser demo in `www/`. Every export returns a JSON
//! string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use classpec::exactmath::Nat;
use classpec::groups::{normalize, Epsilon, Family, GroupSpec, NormalizedSpec};
use classpec::matgrp::witness_for_order;
use classpec::spectrum::{contains as formula_contains, mu, omega_generators};
use classpec::{Error, Result};

fn group(family: &str, n: u32, q: u32, eps: &str) -> Result<NormalizedSpec> {
    let family =
        Family::from_cli_name(family).ok_or_else(|| Error::InvalidArgument(format!("unknown family {family:?}")))?;
    let eps = match eps {
        "" => Epsilon::None,
        "+" => Epsilon::Plus,
        "-" => Epsilon::Minus,
        o => return Err(Error::InvalidEpsilon(o.to_string())),
    };
    normalize(&GroupSpec::new(family, n, q as u64, eps)?)
}

fn order(m: &str) -> Result<Nat> {
    m.trim()
        .parse()
        .ok()
        .filter(|m: &Nat| *m != Nat::default())
        .ok_or_else(|| Error::InvalidArgument(format!("bad order {m:?}")))
}

fn finish(r: Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e.to_string() })).to_string()
}

pub fn spectrum_json(family: &str, n: u32, q: u32, eps: &str) -> String {
    finish((|| {
        let g = group(family, n, q, eps)?;
        let gens = omega_generators(&g)?;
        let anti = mu(&gens).values;
        let sources: Vec<Value> = anti
            .iter()
            .map(|v| {
                let items: Vec<String> = gens
                    .values
                    .iter()
                    .filter(|x| &x.value == v)
                    .map(|x| format!("{} {}", x.item, x.detail).trim_end().to_string())
                    .collect();
                json!({ "value": v.to_string(), "items": items })
            })
            .collect();
        Ok(json!({
            "group": g.original.to_string(),
            "evaluated_as": g.spec.to_string(),
            "notes": g.notes,
            "mu": anti.iter().map(Nat::to_string).collect::<Vec<_>>(),
            "sources": sources,
        }))
    })())
}

pub fn contains_json(family: &str, n: u32, q: u32, eps: &str, m: &str) -> String {
    finish((|| {
        let g = group(family, n, q, eps)?;
        let m = order(m)?;
        Ok(json!({ "group": g.original.to_string(), "order": m.to_string(), "contains": formula_contains(&g, &m)? }))
    })())
}

pub fn witness_json(family: &str, n: u32, q: u32, eps: &str, m: &str) -> String {
    finish((|| {
        let g = group(family, n, q, eps)?;
        let w = witness_for_order(&g, &order(m)?)?;
        Ok(json!({
            "group": w.group.to_string(),
            "order": w.order.to_string(),
            "source": w.source,
            "power": w.power.to_string(),
            "field": format!("GF({})", w.field.q()),
            "modulus": w.field.modulus(),
            "matrix": w.matrix.rows(),
        }))
    })())
}

#[wasm_bindgen]
pub fn spectrum(family: &str, n: u32, q: u32, eps: &str) -> String {
    spectrum_json(family, n, q, eps)
}

#[wasm_bindgen]
pub fn contains(family: &str, n: u32, q: u32, eps: &str, m: &str) -> String {
    contains_json(family, n, q, eps, m)
}

#[wasm_bindgen]
pub fn witness(family: &str, n: u32, q: u32, eps: &str, m: &str) -> String {
    witness_json(family, n, q, eps, m)
}
