//! Rees valuations of monomial ideals and their centers.
//!
//! Each facet `a . x >= b` of `NP(I)` with `b > 0` gives the monomial
//! valuation `v(x^m) = a . m` with `v(I) = b`. Its center is the prime
//! generated by the variables where `a` is positive.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::{compute_np, FacetInequality, NewtonPolyhedron};
use crate::primes::MonomialPrime;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialValuation {
    normal: Vec<u32>,
    ideal_value: u64,
}

impl MonomialValuation {
    pub fn new(normal: Vec<u32>, ideal_value: u64) -> Result<Self> {
        if normal.iter().all(|&a| a == 0) {
            return Err(invalid("valuation normal must be nonzero"));
        }
        if ideal_value == 0 {
            return Err(invalid("valuation ideal value must be positive"));
        }
        Ok(Self {
            normal,
            ideal_value,
        })
    }

    pub fn normal(&self) -> &[u32] {
        &self.normal
    }

    /// `v(I)`.
    pub fn ideal_value(&self) -> u64 {
        self.ideal_value
    }

    pub fn value(&self, m: &ExponentVector) -> Result<u64> {
        if m.len() != self.normal.len() {
            return Err(invalid(format!(
                "exponent vector of length {} for a valuation on {} variables",
                m.len(),
                self.normal.len()
            )));
        }
        Ok(self.value_unchecked(m))
    }

    pub(crate) fn value_unchecked(&self, m: &ExponentVector) -> u64 {
        self.normal
            .iter()
            .zip(m.coords())
            .map(|(&a, &e)| u64::from(a) * u64::from(e))
            .sum()
    }

    pub fn center(&self) -> MonomialPrime {
        let vars = (0..self.normal.len())
            .filter(|&i| self.normal[i] > 0)
            .collect();
        MonomialPrime::new(vars).expect("nonzero normal")
    }

    fn as_facet(&self) -> FacetInequality {
        FacetInequality {
            normal: self.normal.clone(),
            offset: self.ideal_value,
        }
    }

    /// Report order: larger center first, then descending normal.
    pub fn report_cmp(&self, other: &Self) -> Ordering {
        self.as_facet().report_cmp(&other.as_facet())
    }
}

/// The set `B*(I)` of centers of Rees valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BStarSet {
    pub centers: BTreeSet<MonomialPrime>,
}

pub fn rees_valuations(ideal: &MonomialIdeal) -> Result<Vec<MonomialValuation>> {
    let np = compute_np(ideal)?;
    Ok(valuations_from_np(&np))
}

pub fn valuations_from_np(np: &NewtonPolyhedron) -> Vec<MonomialValuation> {
    let mut vals: Vec<MonomialValuation> = np
        .positive_facets()
        .map(|f| MonomialValuation {
            normal: f.normal.clone(),
            ideal_value: f.offset,
        })
        .collect();
    vals.sort_by(MonomialValuation::report_cmp);
    vals
}

pub fn value(v: &MonomialValuation, m: &ExponentVector) -> Result<u64> {
    v.value(m)
}

pub fn center(v: &MonomialValuation) -> MonomialPrime {
    v.center()
}

pub fn b_star(ideal: &MonomialIdeal) -> Result<BStarSet> {
    Ok(BStarSet {
        centers: rees_valuations(ideal)?
            .iter()
            .map(MonomialValuation::center)
            .collect(),
    })
}
