//! Text and JSON renderings shared by the subcommands and the corpus runner.
//!
//! JSON objects are built as `serde_json::Value`, whose maps are ordered by
//! key, so every document comes out key-sorted.

use std::collections::BTreeSet;

use reesval_core::{
    AsymptoticReport, ExponentVector, FacetInequality, MonomialIdeal, MonomialPrime,
    MonomialValuation, Rational64, RingContext,
};
use serde_json::{json, Value};

use crate::parse::render_monomial;

pub fn prime_text(p: &MonomialPrime, ring: &RingContext) -> String {
    format!("({})", p.variable_names(ring).join(", "))
}

pub fn primes_text(set: &BTreeSet<MonomialPrime>, ring: &RingContext) -> String {
    let parts: Vec<String> = set.iter().map(|p| prime_text(p, ring)).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn primes_json(set: &BTreeSet<MonomialPrime>, ring: &RingContext) -> Value {
    set.iter().map(|p| json!(p.variable_names(ring))).collect()
}

pub fn exponents_json(gens: &[ExponentVector]) -> Value {
    gens.iter().map(|g| json!(g.coords())).collect()
}

pub fn rational_text(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A linear form such as `3*x + 2*y`.
pub fn linear_form_text(normal: &[u32], ring: &RingContext) -> String {
    let terms: Vec<String> = normal
        .iter()
        .zip(ring.names())
        .filter(|(&a, _)| a > 0)
        .map(|(&a, v)| {
            if a == 1 {
                v.clone()
            } else {
                format!("{a}*{v}")
            }
        })
        .collect();
    terms.join(" + ")
}

pub fn facet_text(f: &FacetInequality, ring: &RingContext) -> String {
    format!("{} >= {}", linear_form_text(&f.normal, ring), f.offset)
}

pub fn facet_json(f: &FacetInequality) -> Value {
    json!({ "normal": f.normal, "offset": f.offset })
}

/// `[[normal], value]`.
pub fn valuation_json(v: &MonomialValuation) -> Value {
    json!([v.normal(), v.ideal_value()])
}

pub fn ring_json(ring: &RingContext) -> Value {
    json!(ring.names())
}

pub fn ideal_json(j: &MonomialIdeal) -> Value {
    exponents_json(j.generators())
}

pub fn chain_json(report: &AsymptoticReport) -> Value {
    let ring = report.ideal.ring();
    report
        .chain
        .iter()
        .map(|(n, set)| json!({ "n": n, "primes": primes_json(set, ring) }))
        .collect()
}

pub fn monomial_text(m: &ExponentVector, ring: &RingContext) -> String {
    render_monomial(m, ring)
}
