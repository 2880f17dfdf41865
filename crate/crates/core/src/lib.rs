//! Rees valuations, integral closures of powers and asymptotic associated
//! primes of monomial ideals in `k[x_1, ..., x_d]`, computed exactly.
//!
//! The central objects are [`MonomialIdeal`], its [`NewtonPolyhedron`], the
//! [`MonomialValuation`]s read off the polyhedron's facets, and the
//! [`AsymptoticReport`] comparing the stable associated primes of
//! `closure(I^n)` with the centers of those valuations.

mod error;
mod hull;

pub mod asymptotic;
pub mod monomial;
pub mod newton;
pub mod oracle;
pub mod primes;
pub mod rees;

pub use asymptotic::{
    a_star, verify_localization, verify_minimal_primes_stable, verify_stable_primes_are_centers,
    AsymptoticReport, LocalizationReport, DEFAULT_N_CAP,
};
pub use error::{Error, Result};
pub use monomial::{
    normalize, ExponentVector, MonomialIdeal, RingContext, MAX_DIMENSION, MAX_GENERATOR_EXPONENT,
};
pub use newton::{
    compute_np, integral_closure_power, np_contains, samuel_order, vbar, FacetInequality,
    NewtonPolyhedron,
};
pub use oracle::{power_witness, DEFAULT_WITNESS_BOUND};
pub use primes::{
    associated_primes, associated_primes_bruteforce, default_box_bound, irreducible_decomposition,
    minimal_primes, IrreducibleComponent, MonomialPrime,
};
pub use rees::{b_star, rees_valuations, BStarSet, MonomialValuation};

pub use num_rational::Rational64;
