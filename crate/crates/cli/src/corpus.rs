//! Batch verification over a JSON-lines corpus.
//!
//! Each line is `{"id": .., "ring": [..], "gens": [[..]], "s_vars": [..]?}`.
//! Entries run on a worker pool; results are collected in input order so the
//! report does not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::seq::index;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use reesval_core::monomial::{box_points, box_size};
use reesval_core::{
    a_star, associated_primes, associated_primes_bruteforce, compute_np, default_box_bound,
    integral_closure_power, minimal_primes, power_witness, vbar, verify_localization,
    AsymptoticReport, Error as CoreError, ExponentVector, MonomialIdeal, Rational64, RingContext,
    DEFAULT_N_CAP, DEFAULT_WITNESS_BOUND,
};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{chain_json, ideal_json, primes_json, ring_json, valuation_json};

/// Most monomials checked per entry and power by the closure oracle.
pub const SAMPLE_CAP: usize = 500;
/// Powers `n = 1..=3` compared against raw powers.
pub const ORACLE_POWERS: u32 = 3;
/// Thresholds `k = 1..=4` for the vbar / closure equivalence.
pub const VBAR_THRESHOLDS: u32 = 4;
/// Powers checked for saturation by a multiplicative set.
pub const LOCALIZATION_POWERS: u32 = 4;
/// Extra powers past the stabilization index re-checked for the stable set.
pub const PERSISTENCE_POWERS: u32 = 2;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    ring: Vec<String>,
    gens: Vec<Vec<u32>>,
    #[serde(default)]
    s_vars: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub line: usize,
    pub id: String,
    pub ideal: MonomialIdeal,
    pub s_vars: Option<Vec<usize>>,
}

fn validate(raw: RawEntry, line: usize) -> Result<CorpusEntry, CorpusError> {
    let bad = |message: String| CorpusError::Malformed { line, message };
    if raw.id.is_empty() {
        return Err(bad("empty id".into()));
    }
    let ring = RingContext::new(raw.ring).map_err(|e| bad(e.to_string()))?;
    if raw.gens.is_empty() {
        return Err(bad("no generators".into()));
    }
    let gens = raw.gens.into_iter().map(ExponentVector::new).collect();
    let ideal = MonomialIdeal::new(ring.clone(), gens).map_err(|e| bad(e.to_string()))?;
    if !ideal.is_proper_nonzero() {
        return Err(bad("the ideal must be proper and nonzero".into()));
    }
    ideal.check_input_caps().map_err(|e| bad(e.to_string()))?;
    let s_vars = match raw.s_vars {
        None => None,
        Some(names) if names.is_empty() => return Err(bad("s_vars is empty".into())),
        Some(names) => {
            let mut idx = Vec::with_capacity(names.len());
            for name in &names {
                let i = ring
                    .index_of(name)
                    .ok_or_else(|| bad(format!("s_vars names unknown variable `{name}`")))?;
                if idx.contains(&i) {
                    return Err(bad(format!("s_vars repeats `{name}`")));
                }
                idx.push(i);
            }
            idx.sort_unstable();
            Some(idx)
        }
    };
    Ok(CorpusEntry {
        line,
        id: raw.id,
        ideal,
        s_vars,
    })
}

/// Parse and validate corpus text. Blank lines are skipped; line numbers
/// count from 1.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw_line.trim().trim_start_matches('\u{feff}');
        if trimmed.is_empty() {
            continue;
        }
        let raw: RawEntry = serde_json::from_str(trimmed).map_err(|e| CorpusError::Malformed {
            line,
            message: e.to_string(),
        })?;
        let entry = validate(raw, line)?;
        if !seen.insert(entry.id.clone()) {
            return Err(CorpusError::Malformed {
                line,
                message: format!("duplicate id `{}`", entry.id),
            });
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let text = fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_corpus(&text)
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub n_cap: u32,
    pub timings: bool,
    pub jobs: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            n_cap: DEFAULT_N_CAP,
            timings: false,
            jobs: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Pass,
    Fail,
    NotStabilized,
    Error,
}

impl EntryStatus {
    fn as_str(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::NotStabilized => "not_stabilized",
            Self::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct EntryOutcome {
    pub id: String,
    pub status: EntryStatus,
    pub stabilization_index: Option<u32>,
    pub verdicts: BTreeMap<&'static str, bool>,
    /// Full per-entry report, key-sorted.
    pub report: Value,
}

/// A closure-oracle disagreement between facet membership and raw powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub n: u32,
    pub monomial: Vec<u32>,
    pub by_facets: bool,
    pub witness: Option<u32>,
}

/// Up to `cap` distinct points of the box, in box order. Boxes no larger than
/// `cap` are returned whole.
pub fn sample_box(upper: &[u32], cap: usize, rng: &mut ChaCha8Rng) -> Vec<ExponentVector> {
    let size = box_size(upper);
    if size <= cap as u64 {
        return box_points(upper).collect();
    }
    let mut picks = index::sample(rng, size as usize, cap).into_vec();
    picks.sort_unstable();
    picks
        .into_iter()
        .map(|mut k| {
            let mut coords = vec![0u32; upper.len()];
            for i in (0..upper.len()).rev() {
                let radix = upper[i] as usize + 1;
                coords[i] = (k % radix) as u32;
                k /= radix;
            }
            ExponentVector::new(coords)
        })
        .collect()
}

/// Sampled monomials for each power `n = 1..=ORACLE_POWERS`, drawn from the
/// box `[0, n*M_1] x ... x [0, n*M_d]`. The stream depends only on the seed
/// and the entry's position.
pub fn oracle_samples(
    ideal: &MonomialIdeal,
    seed: u64,
    position: usize,
) -> Vec<(u32, Vec<ExponentVector>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(position as u64);
    (1..=ORACLE_POWERS)
        .map(|n| {
            let upper: Vec<u32> = ideal.max_exponents().iter().map(|&m| m * n).collect();
            (n, sample_box(&upper, SAMPLE_CAP, &mut rng))
        })
        .collect()
}

/// Compare facet membership in `n * NP(I)` with the raw-power witness search
/// on every sample.
pub fn closure_oracle(
    ideal: &MonomialIdeal,
    samples: &[(u32, Vec<ExponentVector>)],
) -> Result<Vec<Discrepancy>, CoreError> {
    let np = compute_np(ideal)?;
    let mut out = Vec::new();
    for (n, points) in samples {
        for m in points {
            let by_facets = np.contains_lattice(m, *n);
            let witness = power_witness(ideal, m, *n, DEFAULT_WITNESS_BOUND)?;
            if by_facets != witness.is_some() {
                out.push(Discrepancy {
                    n: *n,
                    monomial: m.coords().to_vec(),
                    by_facets,
                    witness,
                });
            }
        }
    }
    Ok(out)
}

/// Monomials where `vbar(m) >= k` and `m ∈ closure(I^k)` disagree, for
/// `k = 1..=VBAR_THRESHOLDS`.
pub fn vbar_threshold_mismatches(
    ideal: &MonomialIdeal,
    monomials: &[ExponentVector],
) -> Result<Vec<(u32, Vec<u32>)>, CoreError> {
    let closures = (1..=VBAR_THRESHOLDS)
        .map(|k| integral_closure_power(ideal, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for m in monomials {
        let v = vbar(ideal, m)?;
        for (k, closure) in (1..).zip(&closures) {
            let above = v >= Rational64::from_integer(i64::from(k));
            if above != closure.contains_monomial(m)? {
                out.push((k, m.coords().to_vec()));
            }
        }
    }
    Ok(out)
}

/// Associated primes by decomposition and by colon scan agree on `I` and on
/// its integral closure.
pub fn ass_oracle_agrees(ideal: &MonomialIdeal) -> Result<bool, CoreError> {
    let closure = integral_closure_power(ideal, 1)?;
    for j in [ideal, &closure] {
        if associated_primes(j)? != associated_primes_bruteforce(j, default_box_bound(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn chain_extension(
    ideal: &MonomialIdeal,
    report: &AsymptoticReport,
) -> Result<Vec<(u32, BTreeSet<reesval_core::MonomialPrime>)>, CoreError> {
    let start = report.stabilization_index + 1;
    (start..start + PERSISTENCE_POWERS)
        .map(|n| Ok((n, associated_primes(&integral_closure_power(ideal, n)?)?)))
        .collect()
}

fn localization_json(ring: &RingContext, r: &reesval_core::LocalizationReport) -> Value {
    let names: Vec<&str> = r.s_vars.iter().map(|&i| ring.names()[i].as_str()).collect();
    json!({
        "admissible": r.admissible,
        "counter_witness": r.counter_witness(),
        "holds": r.holds(),
        "per_n": r.per_n.iter().map(|(n, ok)| json!([n, ok])).collect::<Value>(),
        "s_vars": names,
    })
}

struct Verified {
    report: AsymptoticReport,
    verdicts: BTreeMap<&'static str, bool>,
    extra: BTreeMap<&'static str, Value>,
}

fn verify_entry(
    entry: &CorpusEntry,
    position: usize,
    opts: &RunOptions,
) -> Result<Verified, CoreError> {
    let ideal = &entry.ideal;
    let ring = ideal.ring();
    let report = a_star(ideal, opts.n_cap)?;
    let mut verdicts = BTreeMap::new();
    let mut extra = BTreeMap::new();

    verdicts.insert(
        "cor26",
        report.verdict_cor26 && report.stable_set == report.b_star.centers,
    );

    let tail = chain_extension(ideal, &report)?;
    let persistent = tail.iter().all(|(_, set)| *set == report.stable_set);
    let monotone = report
        .chain
        .iter()
        .chain(&tail)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0].1.is_subset(&w[1].1));
    verdicts.insert("monotone", report.verdict_monotone && monotone);
    verdicts.insert("persistent", persistent);

    verdicts.insert(
        "lemma21i",
        minimal_primes(ideal)?.is_subset(&report.stable_set),
    );
    verdicts.insert("ass_oracle", ass_oracle_agrees(ideal)?);

    let samples = oracle_samples(ideal, opts.seed, position);
    let discrepancies = closure_oracle(ideal, &samples)?;
    verdicts.insert("closure_oracle", discrepancies.is_empty());
    let checked: usize = samples.iter().map(|(_, s)| s.len()).sum();
    extra.insert("oracle_samples", json!(checked));
    if let Some(d) = discrepancies.first() {
        extra.insert(
            "closure_discrepancy",
            json!({ "by_facets": d.by_facets, "monomial": d.monomial, "n": d.n, "witness": d.witness }),
        );
    }

    let mut pooled: Vec<ExponentVector> = samples.into_iter().flat_map(|(_, s)| s).collect();
    pooled.sort_by(|a, b| a.coords().cmp(b.coords()));
    pooled.dedup();
    let mismatches = vbar_threshold_mismatches(ideal, &pooled)?;
    verdicts.insert("vbar_threshold", mismatches.is_empty());
    if let Some((k, m)) = mismatches.first() {
        extra.insert("vbar_mismatch", json!({ "k": k, "monomial": m }));
    }

    let mut singles = Vec::new();
    let mut singles_ok = true;
    for i in 0..ideal.dim() {
        let r = verify_localization(ideal, &[i], LOCALIZATION_POWERS)?;
        singles_ok &= r.holds();
        if r.admissible {
            singles.push(ring.names()[i].clone());
        }
    }
    verdicts.insert("thm31_single", singles_ok);
    extra.insert("admissible_single_vars", json!(singles));

    if let Some(s) = &entry.s_vars {
        let r = verify_localization(ideal, s, LOCALIZATION_POWERS)?;
        verdicts.insert("thm31", r.holds());
        extra.insert("localization", localization_json(ring, &r));
    }

    Ok(Verified {
        report,
        verdicts,
        extra,
    })
}

/// Verify one entry. `position` seeds the entry's sample stream.
pub fn run_entry(entry: &CorpusEntry, position: usize, opts: &RunOptions) -> EntryOutcome {
    let started = Instant::now();
    let ideal = &entry.ideal;
    let ring = ideal.ring();
    let mut obj = serde_json::Map::new();
    obj.insert("id".into(), json!(entry.id));
    obj.insert("ring".into(), ring_json(ring));
    obj.insert("gens".into(), ideal_json(ideal));

    let (status, index, verdicts) = match verify_entry(entry, position, opts) {
        Ok(v) => {
            let r = &v.report;
            obj.insert("stable_set".into(), primes_json(&r.stable_set, ring));
            obj.insert("b_star".into(), primes_json(&r.b_star.centers, ring));
            obj.insert("stabilization_index".into(), json!(r.stabilization_index));
            obj.insert("chain".into(), chain_json(r));
            obj.insert(
                "valuations".into(),
                r.valuations.iter().map(valuation_json).collect(),
            );
            obj.insert("verdicts".into(), json!(v.verdicts));
            for (k, val) in v.extra {
                obj.insert(k.into(), val);
            }
            let ok = v.verdicts.values().all(|&b| b);
            let status = if ok {
                EntryStatus::Pass
            } else {
                EntryStatus::Fail
            };
            (status, Some(r.stabilization_index), v.verdicts)
        }
        Err(e) => {
            obj.insert("error".into(), json!(e.to_string()));
            let status = match e {
                CoreError::NotStabilized { .. } => EntryStatus::NotStabilized,
                _ => EntryStatus::Error,
            };
            (status, None, BTreeMap::new())
        }
    };
    obj.insert("status".into(), json!(status.as_str()));
    if opts.timings {
        obj.insert(
            "timings_ms".into(),
            json!(started.elapsed().as_millis() as u64),
        );
    }
    EntryOutcome {
        id: entry.id.clone(),
        status,
        stabilization_index: index,
        verdicts,
        report: Value::Object(obj),
    }
}

#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub entries: Vec<EntryOutcome>,
}

impl CorpusRun {
    fn count(&self, status: EntryStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn max_stabilization_index(&self) -> Option<u32> {
        self.entries
            .iter()
            .filter_map(|e| e.stabilization_index)
            .max()
    }

    /// Aggregate counts, including failures per verdict name.
    pub fn summary(&self) -> Value {
        let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
        let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
        for e in &self.entries {
            for (name, ok) in &e.verdicts {
                if !ok {
                    *failures.entry(name).or_default() += 1;
                }
            }
            if let Some(i) = e.stabilization_index {
                *histogram.entry(i.to_string()).or_default() += 1;
            }
        }
        json!({
            "entries": self.entries.len(),
            "errors": self.count(EntryStatus::Error),
            "failed": self.count(EntryStatus::Fail),
            "max_stabilization_index": self.max_stabilization_index(),
            "not_stabilized": self.count(EntryStatus::NotStabilized),
            "passed": self.count(EntryStatus::Pass),
            "stabilization_index_histogram": histogram,
            "verdict_failures": failures,
        })
    }

    /// 0 when every entry passes, 3 when any entry failed to stabilize,
    /// otherwise 1.
    pub fn exit_code(&self) -> i32 {
        if self.count(EntryStatus::NotStabilized) > 0 {
            3
        } else if self.entries.iter().all(|e| e.status == EntryStatus::Pass) {
            0
        } else {
            1
        }
    }

    /// One JSON object per entry, then `{"summary": ...}`, newline-terminated.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.report.to_string());
            out.push('\n');
        }
        out.push_str(&json!({ "summary": self.summary() }).to_string());
        out.push('\n');
        out
    }
}

pub fn run_corpus(entries: &[CorpusEntry], opts: &RunOptions) -> Result<CorpusRun, String> {
    let work = || {
        entries
            .par_iter()
            .enumerate()
            .map(|(i, e)| run_entry(e, i, opts))
            .collect::<Vec<_>>()
    };
    let outcomes = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| e.to_string())?
            .install(work),
        None => work(),
    };
    Ok(CorpusRun { entries: outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_valid_lines_and_skips_blanks() {
        let text = "{\"id\":\"a\",\"ring\":[\"x\",\"y\"],\"gens\":[[2,0],[1,1]]}\n\n\
                    {\"id\":\"b\",\"ring\":[\"x\",\"y\"],\"gens\":[[1,0]],\"s_vars\":[\"y\"]}\n";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[1].line, 3);
        assert_eq!(entries[1].s_vars, Some(vec![1]));
    }

    #[test]
    fn rejects_malformed_lines_with_line_numbers() {
        let cases = [
            "{\"id\":\"e2\",\"ring\":[\"x\",\"y\"],\"gens\":[[1,1]],\"s_vars\":[]}",
            "{\"id\":\"e\",\"ring\":[\"x\",\"y\"],\"gens\":[[1]]}",
            "{\"id\":\"e\",\"ring\":[\"x\",\"y\"],\"gens\":[]}",
            "{\"id\":\"e\",\"ring\":[\"x\",\"y\"],\"gens\":[[0,0]]}",
            "{\"id\":\"e\",\"ring\":[\"x\",\"x\"],\"gens\":[[1,0]]}",
            "{\"id\":\"e\",\"ring\":[\"x\"],\"gens\":[[1]],\"s_vars\":[\"z\"]}",
            "{\"id\":\"e\",\"ring\":[\"x\"],\"gens\":[[1]],\"extra\":1}",
            "{\"id\":\"e\",\"ring\":[\"x\"],\"gens\":[[13]]}",
            "not json",
        ];
        for case in cases {
            let text = format!("\n{case}\n");
            match parse_corpus(&text) {
                Err(CorpusError::Malformed { line, .. }) => assert_eq!(line, 2, "{case}"),
                other => panic!("{case}: {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_duplicate_ids() {
        let line = "{\"id\":\"a\",\"ring\":[\"x\"],\"gens\":[[1]]}";
        match parse_corpus(&format!("{line}\n{line}\n")) {
            Err(CorpusError::Malformed { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn samples_are_distinct_and_reproducible() {
        let upper = [12, 12, 12];
        let a = sample_box(&upper, 500, &mut ChaCha8Rng::seed_from_u64(7));
        let b = sample_box(&upper, 500, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert_eq!(a.len(), 500);
        let set: BTreeSet<_> = a.iter().map(|m| m.coords().to_vec()).collect();
        assert_eq!(set.len(), 500);
        assert!(a.iter().all(|m| m.coords().iter().all(|&c| c <= 12)));
        assert_eq!(
            sample_box(&[2, 3], 500, &mut ChaCha8Rng::seed_from_u64(0)).len(),
            12
        );
    }

    #[test]
    fn single_entry_passes() {
        let entries =
            parse_corpus("{\"id\":\"e1\",\"ring\":[\"x\",\"y\"],\"gens\":[[2,0],[1,1]]}").unwrap();
        let run = run_corpus(&entries, &RunOptions::default()).unwrap();
        let e = &run.entries[0];
        assert_eq!(e.status, EntryStatus::Pass, "{}", e.report);
        assert_eq!(e.report["stable_set"], json!([["x"], ["x", "y"]]));
        assert_eq!(run.exit_code(), 0);
    }

    #[test]
    fn cap_too_small_reports_not_stabilized() {
        let entries = parse_corpus(
            "{\"id\":\"s\",\"ring\":[\"x\",\"y\",\"z\"],\"gens\":[[1,1,1],[0,2,1],[4,0,0]]}",
        )
        .unwrap();
        let opts = RunOptions {
            n_cap: 1,
            ..RunOptions::default()
        };
        let run = run_corpus(&entries, &opts).unwrap();
        assert_eq!(run.entries[0].status, EntryStatus::NotStabilized);
        assert_eq!(run.exit_code(), 3);
    }
}
