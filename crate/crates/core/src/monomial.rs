//! Exponent vectors and monomial ideals of `k[x_1, ..., x_d]`.
//!
//! The coefficient field never appears: a monomial ideal is determined by the
//! up-set of exponent vectors it contains, which in turn is determined by its
//! finite antichain of minimal generators.
//!
//! Encodings:
//! - the zero ideal has no generators;
//! - the unit ideal has the single generator `(0, ..., 0)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Result};

/// Largest supported number of variables.
pub const MAX_DIMENSION: usize = 6;

/// Soft cap on generator exponents of user-supplied ideals. Inputs above the
/// cap are rejected by [`MonomialIdeal::check_input_caps`] and by the Newton
/// polyhedron construction.
pub const MAX_GENERATOR_EXPONENT: u32 = 12;

/// The polynomial ring `k[x_1, ..., x_d]`, identified by its variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Arc<[String]>,
}

impl RingContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(invalid("a ring needs at least one variable"));
        }
        if names.len() > MAX_DIMENSION {
            return Err(invalid(format!(
                "{} variables exceeds the supported maximum of {MAX_DIMENSION}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(invalid("variable names must be non-empty"));
            }
            if names[..i].contains(name) {
                return Err(invalid(format!("duplicate variable name `{name}`")));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    /// A ring with `d` variables named `x, y, z, w` (or `x1..xd` when `d > 4`).
    pub fn with_dimension(d: usize) -> Result<Self> {
        const SHORT: [&str; 4] = ["x", "y", "z", "w"];
        if d <= SHORT.len() {
            Self::new(SHORT[..d].iter().copied())
        } else {
            Self::new((1..=d).map(|i| format!("x{i}")))
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn check(&self, m: &ExponentVector) -> Result<()> {
        if m.len() != self.dim() {
            return Err(invalid(format!(
                "exponent vector of length {} in a ring of dimension {}",
                m.len(),
                self.dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{}]", self.names.join(","))
    }
}

/// Exponent vector of a monomial; a lattice point of `N^d`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// The exponent vector of the variable `x_i`.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self <= other`, i.e. the monomial divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Componentwise `max(self_i - other_i, 0)`.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    pub fn scale(&self, k: u32) -> Self {
        Self(self.0.iter().map(|e| e * k).collect())
    }

    /// Indices of the variables occurring in the monomial.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `Some(i)` when the monomial is a positive power of the single variable `x_i`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        match self.support().as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    pub fn max_coord(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Canonical generator order: ascending total degree, then lexicographically
    /// descending (so `x^2` precedes `x*y` precedes `y^2`).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        Self(v.to_vec())
    }
}

/// All lattice points of the box `[0, upper_1] x ... x [0, upper_d]`, last
/// coordinate varying fastest.
pub fn box_points(upper: &[u32]) -> impl Iterator<Item = ExponentVector> + '_ {
    let mut cur = Some(vec![0u32; upper.len()]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        for i in (0..next.len()).rev() {
            if next[i] < upper[i] {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(ExponentVector(out))
    })
}

/// Number of lattice points in the box with the given upper corner.
pub fn box_size(upper: &[u32]) -> u64 {
    upper.iter().map(|&u| u64::from(u) + 1).product()
}

/// Reduce a set of exponent vectors to its canonically ordered antichain of
/// componentwise-minimal elements.
fn minimalize(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort_by(ExponentVector::canonical_cmp);
    gens.dedup();
    // A proper divisor has strictly smaller degree, so it is already kept.
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// A monomial ideal, stored as its canonical minimal generating set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: RingContext,
    gens: Vec<ExponentVector>,
}

/// Build the ideal generated by `gens`, reduced to canonical minimal generators.
pub fn normalize(gens: Vec<ExponentVector>, ring: &RingContext) -> Result<MonomialIdeal> {
    MonomialIdeal::new(ring.clone(), gens)
}

impl MonomialIdeal {
    pub fn new(ring: RingContext, gens: Vec<ExponentVector>) -> Result<Self> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Self::from_trusted(ring, gens))
    }

    /// Caller guarantees every vector has the ring's dimension.
    pub(crate) fn from_trusted(ring: RingContext, gens: Vec<ExponentVector>) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == ring.dim()));
        Self {
            ring,
            gens: minimalize(gens),
        }
    }

    pub fn zero(ring: RingContext) -> Self {
        Self {
            ring,
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: RingContext) -> Self {
        let d = ring.dim();
        Self {
            ring,
            gens: vec![ExponentVector::zero(d)],
        }
    }

    /// The monomial prime generated by the given variables.
    pub fn from_variables(ring: RingContext, vars: &[usize]) -> Result<Self> {
        let d = ring.dim();
        if let Some(&bad) = vars.iter().find(|&&i| i >= d) {
            return Err(invalid(format!(
                "variable index {bad} out of range for dimension {d}"
            )));
        }
        let gens = vars.iter().map(|&i| ExponentVector::unit(d, i)).collect();
        Ok(Self::from_trusted(ring, gens))
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    /// Neither zero nor the whole ring.
    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub(crate) fn require_proper_nonzero(&self, what: &str) -> Result<()> {
        if self.is_zero() {
            Err(invalid(format!("{what} requires a nonzero ideal")))
        } else if self.is_unit() {
            Err(invalid(format!("{what} requires a proper ideal")))
        } else {
            Ok(())
        }
    }

    /// Reject inputs beyond the supported generator-exponent cap.
    pub fn check_input_caps(&self) -> Result<()> {
        let max = self
            .gens
            .iter()
            .map(ExponentVector::max_coord)
            .max()
            .unwrap_or(0);
        if max > MAX_GENERATOR_EXPONENT {
            return Err(invalid(format!(
                "generator exponent {max} exceeds the supported maximum of {MAX_GENERATOR_EXPONENT}"
            )));
        }
        Ok(())
    }

    /// Per-coordinate maximum over the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut max = vec![0; self.dim()];
        for g in &self.gens {
            for (m, &e) in max.iter_mut().zip(g.coords()) {
                *m = (*m).max(e);
            }
        }
        max
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(invalid(format!(
                "ring mismatch: {:?} vs {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    /// Membership of the monomial `x^m`.
    pub fn contains_monomial(&self, m: &ExponentVector) -> Result<bool> {
        self.ring.check(m)?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_trusted(self.ring.clone(), gens))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &Self) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.add(b)))
            .collect();
        Self::from_trusted(self.ring.clone(), gens)
    }

    /// `J^n`. By convention `J^0` is the unit ideal.
    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::unit(self.ring.clone());
        for _ in 0..n {
            acc = acc.product_unchecked(self);
        }
        acc
    }

    /// The minimal generators of `J^n` that divide `bound`. Membership of any
    /// monomial dividing `bound` in `J^n` is decided by this set alone.
    pub fn truncated_power(&self, n: u32, bound: &ExponentVector) -> Result<Vec<ExponentVector>> {
        self.ring.check(bound)?;
        let mut layer = vec![ExponentVector::zero(self.dim())];
        for _ in 0..n {
            layer = self.next_truncated_layer(&layer, bound);
            if layer.is_empty() {
                break;
            }
        }
        Ok(layer)
    }

    /// Given the minimal generators of `J^t` dividing `bound`, return those of `J^{t+1}`.
    pub(crate) fn next_truncated_layer(
        &self,
        layer: &[ExponentVector],
        bound: &ExponentVector,
    ) -> Vec<ExponentVector> {
        let next = layer
            .iter()
            .flat_map(|s| self.gens.iter().map(move |g| s.add(g)))
            .filter(|c| c.divides(bound))
            .collect();
        minimalize(next)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Ok(Self::from_trusted(self.ring.clone(), gens))
    }

    /// `(J : x^m)`. The zero ideal stays zero; if `x^m ∈ J` the result is the unit ideal.
    pub fn colon(&self, m: &ExponentVector) -> Result<Self> {
        self.ring.check(m)?;
        Ok(self.colon_unchecked(m))
    }

    pub(crate) fn colon_unchecked(&self, m: &ExponentVector) -> Self {
        let gens = self.gens.iter().map(|g| g.saturating_sub(m)).collect();
        Self::from_trusted(self.ring.clone(), gens)
    }

    /// `J R_S ∩ R` for `S` the multiplicative set generated by the variables in
    /// `vars`, i.e. `(J : (∏ vars)^∞)`.
    pub fn saturate(&self, vars: &[usize]) -> Result<Self> {
        if vars.is_empty() {
            return Err(invalid("saturation needs at least one variable"));
        }
        let d = self.dim();
        if let Some(&bad) = vars.iter().find(|&&i| i >= d) {
            return Err(invalid(format!(
                "variable index {bad} out of range for dimension {d}"
            )));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut c = g.coords().to_vec();
                for &i in vars {
                    c[i] = 0;
                }
                ExponentVector(c)
            })
            .collect();
        Ok(Self::from_trusted(self.ring.clone(), gens))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialIdeal")
            .field("ring", &self.ring)
            .field("gens", &self.gens)
            .finish()
    }
}
