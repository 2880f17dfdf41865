//! Closure membership decided from raw powers of the ideal, with no reference
//! to the Newton polyhedron.
//!
//! `x^m` is integral over `I^n` iff `x^{km} ∈ I^{kn}` for some `k >= 1`. The
//! witness `k` is searched up to a fixed bound.

use crate::error::{invalid, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::samuel_order;

/// Default upper bound on the witness exponent `k`.
pub const DEFAULT_WITNESS_BOUND: u32 = 12;

/// The least `k <= k_max` with `x^{km} ∈ I^{kn}`, if any.
pub fn power_witness(
    ideal: &MonomialIdeal,
    m: &ExponentVector,
    n: u32,
    k_max: u32,
) -> Result<Option<u32>> {
    if n == 0 {
        return Err(invalid("power must be positive"));
    }
    for k in 1..=k_max {
        let target = k * n;
        if samuel_order(ideal, &m.scale(k), target)? == target {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
