//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use reesval_cli::corpus::{
    closure_oracle, load_corpus, oracle_samples, vbar_threshold_mismatches, CorpusEntry,
    LOCALIZATION_POWERS, ORACLE_POWERS, SAMPLE_CAP, VBAR_THRESHOLDS,
};
use reesval_cli::parse::{render_ideal, render_ring};
use reesval_core::monomial::box_points;
use reesval_core::{
    a_star, associated_primes, associated_primes_bruteforce, default_box_bound,
    integral_closure_power, power_witness, rees_valuations, samuel_order, vbar,
    verify_localization, verify_stable_primes_are_centers, ExponentVector, MonomialIdeal,
    MonomialPrime, Rational64, RingContext, DEFAULT_N_CAP, DEFAULT_WITNESS_BOUND,
};

const RUNTIME_LIMIT: Duration = Duration::from_secs(60);
const SEED: &str = "0";

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/examples.jsonl")
}

fn ideal(names: &[&str], gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(
        RingContext::new(names.iter().copied()).unwrap(),
        gens.iter()
            .map(|g| ExponentVector::new(g.to_vec()))
            .collect(),
    )
    .unwrap()
}

fn primes(sets: &[&[usize]]) -> BTreeSet<MonomialPrime> {
    sets.iter()
        .map(|s| MonomialPrime::new(s.to_vec()).unwrap())
        .collect()
}

/// Examples worked by hand that the corpus must contain, with their
/// multiplicative sets where one is part of the example.
fn worked_examples() -> Vec<(MonomialIdeal, Option<Vec<usize>>)> {
    vec![
        (ideal(&["x", "y"], &[&[2, 0], &[0, 3]]), None),
        (ideal(&["x", "y"], &[&[1, 0]]), Some(vec![1])),
        (ideal(&["x", "y"], &[&[2, 0], &[1, 1]]), None),
        (ideal(&["x", "y"], &[&[1, 1]]), None),
        (ideal(&["x", "y"], &[&[2, 3]]), None),
        (ideal(&["x", "y"], &[&[1, 0], &[0, 1]]), None),
        (ideal(&["x"], &[&[1]]), None),
        (
            ideal(&["x", "y", "z"], &[&[2, 0, 0], &[1, 1, 0]]),
            Some(vec![2]),
        ),
        (ideal(&["x", "y"], &[&[2, 0], &[1, 1]]), Some(vec![1])),
    ]
}

fn corpus_shape(entries: &[CorpusEntry]) -> Result<(), String> {
    if entries.len() < 30 {
        return Err(format!("only {} entries", entries.len()));
    }
    for e in entries {
        let j = &e.ideal;
        if j.dim() > 4 || j.generators().len() > 8 || j.max_exponents().iter().any(|&m| m > 6) {
            return Err(format!("{} exceeds the corpus limits", e.id));
        }
    }
    for (want, s) in worked_examples() {
        let found = entries
            .iter()
            .any(|e| e.ideal == want && (s.is_none() || e.s_vars == s));
        if !found {
            return Err(format!("missing worked example ({})", render_ideal(&want)));
        }
    }
    Ok(())
}

/// Every entry through the `verify cor26` subcommand.
fn stable_primes(entries: &[CorpusEntry]) -> Outcome {
    if let Err(e) = corpus_shape(entries) {
        return outcome(false, e);
    }
    let started = Instant::now();
    let mut failed = Vec::new();
    for e in entries {
        let status = Command::new(env!("CARGO_BIN_EXE_reesval"))
            .args(["verify", "cor26", "--ring", &render_ring(e.ideal.ring())])
            .args(["--ideal", &render_ideal(&e.ideal)])
            .output()
            .expect("binary runs")
            .status;
        let in_process = verify_stable_primes_are_centers(&e.ideal, DEFAULT_N_CAP)
            .map(|(ok, _)| ok)
            .unwrap_or(false);
        if status.code() != Some(0) || !in_process {
            failed.push(e.id.clone());
        }
    }
    let elapsed = started.elapsed();
    let pass = failed.is_empty() && elapsed <= RUNTIME_LIMIT;
    outcome(
        pass,
        format!(
            "{}/{} entries verified in {:.1}s (limit {}s){}",
            entries.len() - failed.len(),
            entries.len(),
            elapsed.as_secs_f64(),
            RUNTIME_LIMIT.as_secs(),
            if failed.is_empty() {
                String::new()
            } else {
                format!("; failed: {}", failed.join(", "))
            }
        ),
    )
}

/// Chain recomputed power by power from closures, two powers past the
/// stabilization index.
fn monotone_chain(entries: &[CorpusEntry]) -> Outcome {
    let mut failed = Vec::new();
    let mut steps = 0;
    let mut max_index = 0;
    for e in entries {
        let Ok(report) = a_star(&e.ideal, DEFAULT_N_CAP) else {
            failed.push(e.id.clone());
            continue;
        };
        max_index = max_index.max(report.stabilization_index);
        let chain: Vec<BTreeSet<MonomialPrime>> = (1..=report.stabilization_index + 2)
            .map(|n| associated_primes(&integral_closure_power(&e.ideal, n).unwrap()).unwrap())
            .collect();
        let reported: Vec<&BTreeSet<MonomialPrime>> = report.chain.iter().map(|(_, s)| s).collect();
        let agrees = chain.iter().zip(&reported).all(|(a, b)| a == *b);
        steps += chain.len() - 1;
        if !agrees || !chain.windows(2).all(|w| w[0].is_subset(&w[1])) {
            failed.push(e.id.clone());
        }
    }
    outcome(
        failed.is_empty(),
        format!(
            "{steps} inclusions checked, max stabilization index {max_index}{}",
            if failed.is_empty() {
                String::new()
            } else {
                format!("; failed: {}", failed.join(", "))
            }
        ),
    )
}

fn closure_oracles(entries: &[CorpusEntry]) -> Outcome {
    let mut checked = 0;
    let mut discrepancies = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let samples = oracle_samples(&e.ideal, SEED.parse().unwrap(), i);
        checked += samples.iter().map(|(_, s)| s.len()).sum::<usize>();
        for d in closure_oracle(&e.ideal, &samples).unwrap() {
            discrepancies.push(format!("{} n={} m={:?}", e.id, d.n, d.monomial));
        }
    }
    outcome(
        discrepancies.is_empty(),
        format!(
            "{checked} monomials (n <= {ORACLE_POWERS}, <= {SAMPLE_CAP} per box, k <= {DEFAULT_WITNESS_BOUND}), {} discrepancies{}",
            discrepancies.len(),
            discrepancies.first().map_or(String::new(), |d| format!("; first: {d}"))
        ),
    )
}

fn vbar_thresholds(entries: &[CorpusEntry]) -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let mut pooled: Vec<ExponentVector> = oracle_samples(&e.ideal, SEED.parse().unwrap(), i)
            .into_iter()
            .flat_map(|(_, s)| s)
            .collect();
        pooled.sort_by(|a, b| a.coords().cmp(b.coords()));
        pooled.dedup();
        checked += pooled.len() * VBAR_THRESHOLDS as usize;
        for (k, m) in vbar_threshold_mismatches(&e.ideal, &pooled).unwrap() {
            mismatches.push(format!("{} k={k} m={m:?}", e.id));
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{checked} (monomial, k) pairs for k = 1..{VBAR_THRESHOLDS}, {} mismatches{}",
            mismatches.len(),
            mismatches
                .first()
                .map_or(String::new(), |d| format!("; first: {d}"))
        ),
    )
}

/// Closure generators recomputed from raw powers alone: every box point with
/// a power witness, minimalized.
fn closure_from_powers(j: &MonomialIdeal, n: u32) -> MonomialIdeal {
    let upper: Vec<u32> = j.max_exponents().iter().map(|&m| m * n).collect();
    let pts = box_points(&upper)
        .filter(|m| {
            power_witness(j, m, n, DEFAULT_WITNESS_BOUND)
                .unwrap()
                .is_some()
        })
        .collect();
    MonomialIdeal::new(j.ring().clone(), pts).unwrap()
}

fn golden_examples() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let p23 = ideal(&["x", "y"], &[&[2, 0], &[0, 3]]);
    let expected = ideal(&["x", "y"], &[&[2, 0], &[1, 2], &[0, 3]]);
    let oracle = closure_from_powers(&p23, 1);
    check(
        "closure of (x^2, y^3)",
        oracle == expected && integral_closure_power(&p23, 1).unwrap() == oracle,
    );

    let vals = rees_valuations(&p23).unwrap();
    // Oracle: the line through both generators is 3a + 2b = 6, and every
    // generator lies on or above it.
    let tight = p23
        .generators()
        .iter()
        .all(|g| 3 * g.coords()[0] + 2 * g.coords()[1] == 6);
    check(
        "Rees valuation of (x^2, y^3)",
        tight && vals.len() == 1 && vals[0].normal() == [3, 2] && vals[0].ideal_value() == 6,
    );

    let e1 = ideal(&["x", "y"], &[&[2, 0], &[1, 1]]);
    let b_star: BTreeSet<MonomialPrime> = rees_valuations(&e1)
        .unwrap()
        .iter()
        .map(|v| v.center())
        .collect();
    let report = a_star(&e1, DEFAULT_N_CAP).unwrap();
    // Oracle: colon-scan Ass of closures of the first three powers, each
    // closure itself rebuilt from raw powers.
    let scanned: Vec<BTreeSet<MonomialPrime>> = (1..=3)
        .map(|n| {
            let c = closure_from_powers(&e1, n);
            associated_primes_bruteforce(&c, default_box_bound(&c)).unwrap()
        })
        .collect();
    let want = primes(&[&[0], &[0, 1]]);
    check(
        "B*((x^2, xy)) = A*((x^2, xy))",
        b_star == want && report.stable_set == want && scanned.iter().all(|s| *s == want),
    );

    let x2y3 = ideal(&["x", "y"], &[&[2, 3]]);
    let b: BTreeSet<MonomialPrime> = rees_valuations(&x2y3)
        .unwrap()
        .iter()
        .map(|v| v.center())
        .collect();
    let c2 = closure_from_powers(&x2y3, 2);
    let scan = associated_primes_bruteforce(&c2, default_box_bound(&c2)).unwrap();
    check("B*((x^2 y^3))", b == primes(&[&[0], &[1]]) && scan == b);

    let xy: ExponentVector = [1, 1].into();
    let v = vbar(&p23, &xy).unwrap();
    let order = samuel_order(&p23, &[6, 6].into(), 10).unwrap();
    // Oracle: samuel_order(x^{km}) / k approaches vbar from below and meets
    // it at k = 6; no k up to 30 overshoots it.
    let ratios_ok = (1..=30u32).all(|k| {
        let t = samuel_order(&p23, &xy.scale(k), 10 * k).unwrap();
        Rational64::new(i64::from(t), i64::from(k)) <= Rational64::new(5, 6)
    });
    check(
        "vbar((x^2, y^3), xy) = 5/6",
        v == Rational64::new(5, 6) && order == 5 && ratios_ok,
    );

    let total = 5;
    outcome(
        failures.is_empty(),
        format!(
            "{}/{total} golden values match their oracles{}",
            total - failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failed: {}", failures.join(", "))
            }
        ),
    )
}

/// Saturation recomputed as a single colon by a high power of the variable.
fn saturate_by_colon(j: &MonomialIdeal, var: usize) -> MonomialIdeal {
    let top = j.max_exponents()[var];
    j.colon(&ExponentVector::unit(j.dim(), var).scale(top))
        .unwrap()
}

fn localization(entries: &[CorpusEntry]) -> Outcome {
    let mut admissible_pairs = 0;
    let mut failed = Vec::new();
    for e in entries {
        let centers: BTreeSet<MonomialPrime> = rees_valuations(&e.ideal)
            .unwrap()
            .iter()
            .map(|v| v.center())
            .collect();
        for var in 0..e.ideal.dim() {
            if centers.iter().any(|p| p.contains_var(var)) {
                continue;
            }
            admissible_pairs += 1;
            let report = verify_localization(&e.ideal, &[var], LOCALIZATION_POWERS).unwrap();
            let by_colon = (1..=LOCALIZATION_POWERS).all(|n| {
                let c = integral_closure_power(&e.ideal, n).unwrap();
                saturate_by_colon(&c, var) == c
            });
            if !report.admissible || !report.holds() || !by_colon {
                failed.push(format!("{}:{}", e.id, e.ideal.ring().names()[var]));
            }
        }
    }
    let neg = ideal(&["x", "y"], &[&[2, 0], &[1, 1]]);
    let r = verify_localization(&neg, &[1], LOCALIZATION_POWERS).unwrap();
    let closure = integral_closure_power(&neg, 1).unwrap();
    let neg_ok = !r.admissible
        && r.counter_witness() == Some(1)
        && saturate_by_colon(&closure, 1) == ideal(&["x", "y"], &[&[1, 0]]);
    outcome(
        failed.is_empty() && neg_ok && admissible_pairs > 0,
        format!(
            "{admissible_pairs} admissible (entry, variable) pairs hold for n = 1..{LOCALIZATION_POWERS}; (x^2, xy) with S = {{y}}: {}{}",
            if neg_ok { "counter-witness at n = 1" } else { "no counter-witness at n = 1" },
            if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
        ),
    )
}

fn ass_oracle(entries: &[CorpusEntry]) -> Outcome {
    let mut compared = 0;
    let mut failed = Vec::new();
    for e in entries {
        let mut ideals = vec![e.ideal.clone()];
        ideals.extend((1..=2).map(|n| integral_closure_power(&e.ideal, n).unwrap()));
        for j in &ideals {
            compared += 1;
            let by_decomposition = associated_primes(j).unwrap();
            let by_colons = associated_primes_bruteforce(j, default_box_bound(j)).unwrap();
            if by_decomposition != by_colons {
                failed.push(e.id.clone());
            }
        }
    }
    outcome(
        failed.is_empty(),
        format!(
            "{compared} ideals (each entry, its closure and the closure of its square){}",
            if failed.is_empty() {
                String::new()
            } else {
                format!("; failed: {}", failed.join(", "))
            }
        ),
    )
}

fn determinism() -> Outcome {
    let path = corpus_path();
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_reesval"))
            .args([
                "corpus",
                path.to_str().unwrap(),
                "--json",
                "--seed",
                SEED,
                "--jobs",
                jobs,
            ])
            .output()
            .expect("binary runs")
    };
    let a = run("1");
    let b = run("4");
    let identical = a.stdout == b.stdout;
    let pass = identical
        && a.status.code() == Some(0)
        && b.status.code() == Some(0)
        && !a.stdout.is_empty();
    outcome(
        pass,
        format!(
            "two corpus runs (1 and 4 workers): {} bytes, {}, exit codes {:?}/{:?}",
            a.stdout.len(),
            if identical {
                "byte-identical"
            } else {
                "different"
            },
            a.status.code(),
            b.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let entries = load_corpus(&corpus_path()).expect("shipped corpus loads");
    let criteria: Vec<(&str, Check<'_>)> = vec![
        (
            "stable associated primes equal Rees-valuation centers",
            Box::new(|| stable_primes(&entries)),
        ),
        (
            "monotone chain of associated primes",
            Box::new(|| monotone_chain(&entries)),
        ),
        (
            "closure by facets agrees with raw powers",
            Box::new(|| closure_oracles(&entries)),
        ),
        (
            "vbar(m) >= k iff m in closure(I^k)",
            Box::new(|| vbar_thresholds(&entries)),
        ),
        ("golden examples", Box::new(golden_examples)),
        (
            "saturation by variables outside every center",
            Box::new(|| localization(&entries)),
        ),
        (
            "associated primes by decomposition and by colon scan",
            Box::new(|| ass_oracle(&entries)),
        ),
        ("deterministic corpus reports", Box::new(determinism)),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let o = check();
        all &= o.pass;
        println!(
            "criterion {} [PRIMARY] {name}: {} ({}) [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            started.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
