//! Newton polyhedra of monomial ideals, integral closures of powers and the
//! asymptotic Samuel function.
//!
//! For a monomial ideal `I`, `NP(I) = conv(exponents of I) + R_{>=0}^d`, and a
//! monomial `x^m` lies in the integral closure of `I^n` exactly when
//! `m ∈ n * NP(I)`. Each facet `a . x >= b` with `b > 0` is a Rees valuation.

use std::cmp::Ordering;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::hull::orthant_hull_facets;
use crate::monomial::{box_points, ExponentVector, MonomialIdeal, RingContext};

/// A facet `normal . x >= offset` of a Newton polyhedron, with primitive
/// non-negative normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacetInequality {
    pub normal: Vec<u32>,
    pub offset: u64,
}

impl FacetInequality {
    pub fn evaluate(&self, m: &ExponentVector) -> u64 {
        self.normal
            .iter()
            .zip(m.coords())
            .map(|(&a, &e)| u64::from(a) * u64::from(e))
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.normal
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Report order: larger support first, then descending normal, then offset.
    pub fn report_cmp(&self, other: &Self) -> Ordering {
        other
            .support()
            .len()
            .cmp(&self.support().len())
            .then_with(|| other.normal.cmp(&self.normal))
            .then_with(|| self.offset.cmp(&other.offset))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    ring: RingContext,
    facets: Vec<FacetInequality>,
    points: Vec<ExponentVector>,
}

impl NewtonPolyhedron {
    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn facets(&self) -> &[FacetInequality] {
        &self.facets
    }

    /// Generator exponent vectors the polyhedron was built from.
    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    /// Facets not through the origin.
    pub fn positive_facets(&self) -> impl Iterator<Item = &FacetInequality> {
        self.facets.iter().filter(|f| f.offset > 0)
    }

    /// Whether the rational point `q` lies in `scale * NP`.
    pub fn contains(&self, q: &[Rational64], scale: Rational64) -> Result<bool> {
        if q.len() != self.ring.dim() {
            return Err(invalid(format!(
                "point of length {} in a ring of dimension {}",
                q.len(),
                self.ring.dim()
            )));
        }
        if q.iter().any(|c| *c < Rational64::zero()) {
            return Err(invalid("point coordinates must be non-negative"));
        }
        if scale < Rational64::zero() {
            return Err(invalid("scale must be non-negative"));
        }
        Ok(self.facets.iter().all(|f| {
            let lhs: Rational64 = f
                .normal
                .iter()
                .zip(q)
                .map(|(&a, c)| Rational64::from_integer(i64::from(a)) * c)
                .sum();
            lhs >= scale * Rational64::from_integer(f.offset as i64)
        }))
    }

    /// Whether the lattice point `m` lies in `n * NP`.
    pub fn contains_lattice(&self, m: &ExponentVector, n: u32) -> bool {
        self.facets
            .iter()
            .all(|f| f.evaluate(m) >= u64::from(n) * f.offset)
    }
}

/// Facet description of `NP(I)`.
pub fn compute_np(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    ideal.require_proper_nonzero("Newton polyhedron")?;
    ideal.check_input_caps()?;
    let points: Vec<Vec<u32>> = ideal
        .generators()
        .iter()
        .map(|g| g.coords().to_vec())
        .collect();
    let mut facets = Vec::new();
    for (normal, offset) in orthant_hull_facets(&points)? {
        if normal.iter().any(|&a| a < 0) || offset < 0 {
            return Err(Error::Internal(format!(
                "facet {normal:?} >= {offset} violates the orthant recession cone"
            )));
        }
        let normal: Vec<u32> = normal
            .iter()
            .map(|&a| u32::try_from(a).map_err(|_| Error::Internal("facet normal overflow".into())))
            .collect::<Result<_>>()?;
        facets.push(FacetInequality {
            normal,
            offset: offset as u64,
        });
    }
    facets.sort_by(FacetInequality::report_cmp);
    for f in &facets {
        let values = ideal.generators().iter().map(|g| f.evaluate(g));
        if values.clone().any(|v| v < f.offset) {
            return Err(Error::Internal(format!("generator violates facet {f:?}")));
        }
        if f.offset > 0 && values.min() != Some(f.offset) {
            return Err(Error::Internal(format!(
                "facet {f:?} is not tight at any generator"
            )));
        }
    }
    Ok(NewtonPolyhedron {
        ring: ideal.ring().clone(),
        facets,
        points: ideal.generators().to_vec(),
    })
}

/// Whether `q` lies in `scale * NP(I)`.
pub fn np_contains(np: &NewtonPolyhedron, q: &[Rational64], scale: Rational64) -> Result<bool> {
    np.contains(q, scale)
}

/// Monomial generators of the integral closure of `I^n`.
pub fn integral_closure_power(ideal: &MonomialIdeal, n: u32) -> Result<MonomialIdeal> {
    let np = compute_np(ideal)?;
    closure_power_from_np(&np, ideal, n)
}

/// Lattice points of `n * NP` reduced to minimal generators.
///
/// Minimal generators lie in the box `[0, n*M_1] x ... x [0, n*M_d]`, where
/// `M_i` is the largest `i`-th generator exponent. The scan walks the box one
/// fibre at a time: for each prefix of the first `d - 1` coordinates the
/// smallest admissible last coordinate is read off the facets, and a fibre
/// minimum is a minimal generator exactly when stepping down in any earlier
/// coordinate raises that minimum.
pub(crate) fn closure_power_from_np(
    np: &NewtonPolyhedron,
    ideal: &MonomialIdeal,
    n: u32,
) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(invalid("closure power must be positive"));
    }
    let d = ideal.dim();
    let last = d - 1;
    let upper: Vec<u32> = ideal.max_exponents().iter().map(|&m| m * n).collect();
    let prefix_upper = &upper[..last];

    // Mixed-radix index of a prefix.
    let strides: Vec<usize> = {
        let mut s = vec![1usize; last];
        for i in (0..last.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * (prefix_upper[i + 1] as usize + 1);
        }
        s
    };
    let index =
        |p: &[u32]| -> usize { p.iter().zip(&strides).map(|(&c, &s)| c as usize * s).sum() };

    let scale = u64::from(n);
    let fibre_min = |prefix: &[u32]| -> Option<u32> {
        let mut need: u64 = 0;
        for f in &np.facets {
            let partial: u64 = f.normal[..last]
                .iter()
                .zip(prefix)
                .map(|(&a, &c)| u64::from(a) * u64::from(c))
                .sum();
            let target = scale * f.offset;
            let a_last = u64::from(f.normal[last]);
            if partial >= target {
                continue;
            }
            if a_last == 0 {
                return None;
            }
            need = need.max((target - partial).div_ceil(a_last));
        }
        Some(need as u32)
    };

    let table: Vec<Option<u32>> = box_points(prefix_upper)
        .map(|p| fibre_min(p.coords()))
        .collect();

    let mut gens = Vec::new();
    for p in box_points(prefix_upper) {
        let Some(top) = table[index(p.coords())] else {
            continue;
        };
        let mut coords = p.coords().to_vec();
        let minimal = (0..last).all(|i| {
            if coords[i] == 0 {
                return true;
            }
            coords[i] -= 1;
            let below = table[index(&coords)];
            coords[i] += 1;
            below.is_none_or(|b| b > top)
        });
        if minimal {
            coords.push(top);
            gens.push(ExponentVector::new(coords));
        }
    }
    MonomialIdeal::new(ideal.ring().clone(), gens)
}

/// The asymptotic Samuel function `min_v v(m) / v(I)` over the Rees valuations.
pub fn vbar(ideal: &MonomialIdeal, m: &ExponentVector) -> Result<Rational64> {
    ideal.ring().check(m)?;
    let np = compute_np(ideal)?;
    vbar_from_np(&np, m)
}

pub(crate) fn vbar_from_np(np: &NewtonPolyhedron, m: &ExponentVector) -> Result<Rational64> {
    np.positive_facets()
        .map(|f| Rational64::new(f.evaluate(m) as i64, f.offset as i64))
        .min()
        .ok_or_else(|| Error::Internal("Newton polyhedron has no facet off the origin".into()))
}

/// Largest `t <= t_max` with `x^m ∈ J^t`, computed from raw powers of `J`.
pub fn samuel_order(j: &MonomialIdeal, m: &ExponentVector, t_max: u32) -> Result<u32> {
    j.ring().check(m)?;
    let mut layer = vec![ExponentVector::zero(j.dim())];
    let mut t = 0;
    while t < t_max {
        layer = j.next_truncated_layer(&layer, m);
        if layer.is_empty() {
            break;
        }
        t += 1;
    }
    Ok(t)
}
