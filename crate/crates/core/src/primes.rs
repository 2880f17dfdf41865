//! Associated and minimal primes of monomial ideals.
//!
//! Every associated prime of a monomial ideal is generated by a subset of the
//! variables, so primes are stored as variable-index sets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{invalid, Result};
use crate::monomial::{box_points, ExponentVector, MonomialIdeal, RingContext};

/// The prime ideal generated by a non-empty set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<usize>) -> Result<Self> {
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() {
            return Err(invalid("a monomial prime needs at least one variable"));
        }
        Ok(Self { vars })
    }

    /// Ascending variable indices.
    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.vars.binary_search(&i).is_ok()
    }

    pub fn to_ideal(&self, ring: &RingContext) -> Result<MonomialIdeal> {
        MonomialIdeal::from_variables(ring.clone(), &self.vars)
    }

    pub fn variable_names<'a>(&self, ring: &'a RingContext) -> Vec<&'a str> {
        self.vars
            .iter()
            .map(|&i| ring.names()[i].as_str())
            .collect()
    }
}

/// Primes order by height first, then lexicographically on variable indices.
impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars
            .len()
            .cmp(&other.vars.len())
            .then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An irreducible monomial ideal `(x_i^{e_i} : i in bounds)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleComponent {
    bounds: BTreeMap<usize, u32>,
}

impl IrreducibleComponent {
    pub fn new(bounds: BTreeMap<usize, u32>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(invalid(
                "an irreducible component needs at least one variable",
            ));
        }
        if bounds.values().any(|&e| e == 0) {
            return Err(invalid("irreducible component exponents must be positive"));
        }
        Ok(Self { bounds })
    }

    pub fn bounds(&self) -> &BTreeMap<usize, u32> {
        &self.bounds
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime {
            vars: self.bounds.keys().copied().collect(),
        }
    }

    /// `self ⊆ other` as ideals.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bounds
            .iter()
            .all(|(i, e)| other.bounds.get(i).is_some_and(|f| f <= e))
    }

    pub fn to_ideal(&self, ring: &RingContext) -> Result<MonomialIdeal> {
        let d = ring.dim();
        let gens = self
            .bounds
            .iter()
            .map(|(&i, &e)| {
                if i >= d {
                    return Err(invalid(format!("variable index {i} out of range")));
                }
                let mut v = vec![0; d];
                v[i] = e;
                Ok(ExponentVector::new(v))
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(ring.clone(), gens)
    }
}

fn require_proper(j: &MonomialIdeal, what: &str) -> Result<()> {
    j.require_proper_nonzero(what)
}

/// Drop every component that contains another one. For irreducible monomial
/// ideals this is the same as dropping components that contain the
/// intersection of the rest.
fn irredundant(mut comps: Vec<IrreducibleComponent>) -> Vec<IrreducibleComponent> {
    comps.sort();
    comps.dedup();
    let keep: Vec<bool> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            !comps
                .iter()
                .enumerate()
                .any(|(k, other)| k != i && other.is_subset_of(c))
        })
        .collect();
    comps
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

struct Splitter {
    memo: HashMap<Vec<ExponentVector>, Vec<IrreducibleComponent>>,
}

impl Splitter {
    fn decompose(&mut self, j: &MonomialIdeal) -> Vec<IrreducibleComponent> {
        if let Some(hit) = self.memo.get(j.generators()) {
            return hit.clone();
        }
        let mixed = j
            .generators()
            .iter()
            .find(|g| g.pure_power_variable().is_none());
        let result = match mixed {
            None => {
                let bounds = j
                    .generators()
                    .iter()
                    .map(|g| {
                        let i = g.pure_power_variable().expect("pure power");
                        (i, g.coords()[i])
                    })
                    .collect();
                vec![IrreducibleComponent { bounds }]
            }
            Some(g) => {
                // g = x_i^{g_i} * rest with i the first variable of g.
                let d = j.dim();
                let i = g.support()[0];
                let mut head = vec![0; d];
                head[i] = g.coords()[i];
                let mut rest = g.coords().to_vec();
                rest[i] = 0;
                let mut comps = Vec::new();
                for part in [head, rest] {
                    let mut gens = j.generators().to_vec();
                    gens.push(ExponentVector::new(part));
                    let branch = MonomialIdeal::from_trusted(j.ring().clone(), gens);
                    comps.extend(self.decompose(&branch));
                }
                irredundant(comps)
            }
        };
        self.memo.insert(j.generators().to_vec(), result.clone());
        result
    }
}

/// Irredundant irreducible decomposition of a proper nonzero monomial ideal.
pub fn irreducible_decomposition(j: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    require_proper(j, "irreducible decomposition")?;
    let mut splitter = Splitter {
        memo: HashMap::new(),
    };
    Ok(splitter.decompose(j))
}

/// `Ass(R/J)`: radicals of the irredundant irreducible components.
pub fn associated_primes(j: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    Ok(irreducible_decomposition(j)?
        .iter()
        .map(IrreducibleComponent::radical)
        .collect())
}

/// Default colon-scan box: one more than the largest generator exponent.
pub fn default_box_bound(j: &MonomialIdeal) -> u32 {
    1 + j.max_exponents().into_iter().max().unwrap_or(0)
}

/// `Ass(R/J)` by scanning `(J : x^m)` over every `m` in `[0, box_bound]^d` and
/// keeping the colons that are generated by variables.
pub fn associated_primes_bruteforce(
    j: &MonomialIdeal,
    box_bound: u32,
) -> Result<BTreeSet<MonomialPrime>> {
    require_proper(j, "associated primes")?;
    if box_bound == 0 {
        return Err(invalid("box bound must be positive"));
    }
    let upper = vec![box_bound; j.dim()];
    let mut found = BTreeSet::new();
    for m in box_points(&upper) {
        if j.contains_unchecked(&m) {
            continue;
        }
        let c = j.colon_unchecked(&m);
        if c.generators().iter().all(|g| g.degree() == 1) {
            let vars = c.generators().iter().map(|g| g.support()[0]).collect();
            found.insert(MonomialPrime::new(vars)?);
        }
    }
    Ok(found)
}

/// Inclusion-minimal variable sets meeting the support of every generator.
pub fn minimal_primes(j: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    require_proper(j, "minimal primes")?;
    let d = j.dim();
    let supports: Vec<u32> = j
        .generators()
        .iter()
        .map(|g| g.support().iter().fold(0u32, |acc, &i| acc | 1 << i))
        .collect();
    let covers: Vec<u32> = (1u32..1 << d)
        .filter(|mask| supports.iter().all(|s| s & mask != 0))
        .collect();
    let minimal = covers
        .iter()
        .filter(|&&c| !covers.iter().any(|&o| o != c && o & c == o));
    minimal
        .map(|&mask| MonomialPrime::new((0..d).filter(|i| mask >> i & 1 == 1).collect()))
        .collect()
}
