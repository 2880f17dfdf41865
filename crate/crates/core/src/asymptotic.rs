//! The chain `Ass(R / closure(I^n))`, its stable value and the checks built on it.

use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};
use crate::monomial::MonomialIdeal;
use crate::newton::{closure_power_from_np, compute_np};
use crate::primes::{associated_primes, minimal_primes, MonomialPrime};
use crate::rees::{valuations_from_np, BStarSet, MonomialValuation};

pub const DEFAULT_N_CAP: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub ideal: MonomialIdeal,
    /// `(n, Ass(R / closure(I^n)))` for `n = 1, ..., stabilization_index`.
    pub chain: Vec<(u32, BTreeSet<MonomialPrime>)>,
    pub stable_set: BTreeSet<MonomialPrime>,
    pub stabilization_index: u32,
    pub b_star: BStarSet,
    pub valuations: Vec<MonomialValuation>,
    pub verdict_cor26: bool,
    pub verdict_monotone: bool,
}

/// Compute the chain of associated primes of closures of powers until it
/// reaches the set of Rees-valuation centers, which is its terminal value.
pub fn a_star(ideal: &MonomialIdeal, n_cap: u32) -> Result<AsymptoticReport> {
    if n_cap == 0 {
        return Err(invalid("power cap must be positive"));
    }
    let np = compute_np(ideal)?;
    let valuations = valuations_from_np(&np);
    let centers: BTreeSet<MonomialPrime> =
        valuations.iter().map(MonomialValuation::center).collect();

    let mut chain = Vec::new();
    for n in 1..=n_cap {
        let closure = closure_power_from_np(&np, ideal, n)?;
        let ass = associated_primes(&closure)?;
        let reached = ass == centers;
        chain.push((n, ass));
        if reached {
            let verdict_monotone = chain.windows(2).all(|w| w[0].1.is_subset(&w[1].1));
            return Ok(AsymptoticReport {
                ideal: ideal.clone(),
                stable_set: centers.clone(),
                stabilization_index: n,
                b_star: BStarSet { centers },
                valuations,
                verdict_cor26: true,
                verdict_monotone,
                chain,
            });
        }
    }
    Err(Error::NotStabilized { cap: n_cap })
}

/// Whether the stable associated primes equal the Rees-valuation centers.
/// Errors with [`Error::NotStabilized`] when the chain does not get there
/// within `n_cap` powers.
pub fn verify_stable_primes_are_centers(
    ideal: &MonomialIdeal,
    n_cap: u32,
) -> Result<(bool, AsymptoticReport)> {
    let report = a_star(ideal, n_cap)?;
    let ok = report.stable_set == report.b_star.centers;
    Ok((ok, report))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationReport {
    pub ideal: MonomialIdeal,
    pub s_vars: Vec<usize>,
    /// No variable of `S` lies in any Rees-valuation center.
    pub admissible: bool,
    /// `(n, saturation of closure(I^n) by S equals closure(I^n))`.
    pub per_n: Vec<(u32, bool)>,
}

impl LocalizationReport {
    /// Smallest `n` where contraction from `R_S` enlarged the closure.
    pub fn counter_witness(&self) -> Option<u32> {
        self.per_n.iter().find(|(_, ok)| !ok).map(|(n, _)| *n)
    }

    /// For admissible `S` every power must pass; inadmissible `S` is
    /// observational and always holds.
    pub fn holds(&self) -> bool {
        !self.admissible || self.per_n.iter().all(|(_, ok)| *ok)
    }
}

/// Compare `closure(I^n) R_S ∩ R` with `closure(I^n)` for `n = 1..=n_cap`,
/// where `S` is generated by the variables `s_vars`.
pub fn verify_localization(
    ideal: &MonomialIdeal,
    s_vars: &[usize],
    n_cap: u32,
) -> Result<LocalizationReport> {
    if s_vars.is_empty() {
        return Err(invalid(
            "the multiplicative set needs at least one variable",
        ));
    }
    let d = ideal.dim();
    if let Some(&bad) = s_vars.iter().find(|&&i| i >= d) {
        return Err(invalid(format!(
            "variable index {bad} out of range for dimension {d}"
        )));
    }
    let mut s_vars = s_vars.to_vec();
    s_vars.sort_unstable();
    s_vars.dedup();

    let np = compute_np(ideal)?;
    let centers: BTreeSet<MonomialPrime> = valuations_from_np(&np)
        .iter()
        .map(MonomialValuation::center)
        .collect();
    let admissible = centers
        .iter()
        .all(|p| s_vars.iter().all(|&i| !p.contains_var(i)));

    let mut per_n = Vec::new();
    for n in 1..=n_cap {
        let closure = closure_power_from_np(&np, ideal, n)?;
        let contracted = closure.saturate(&s_vars)?;
        per_n.push((n, contracted == closure));
    }
    Ok(LocalizationReport {
        ideal: ideal.clone(),
        s_vars,
        admissible,
        per_n,
    })
}

/// Whether every minimal prime of `I` is among the stable associated primes.
pub fn verify_minimal_primes_stable(ideal: &MonomialIdeal, n_cap: u32) -> Result<bool> {
    let report = a_star(ideal, n_cap)?;
    Ok(minimal_primes(ideal)?.is_subset(&report.stable_set))
}
