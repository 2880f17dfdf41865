//! Argument handling and subcommand dispatch.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use reesval_core::{
    a_star, compute_np, integral_closure_power, minimal_primes, rees_valuations, vbar,
    verify_localization, verify_stable_primes_are_centers, Error as CoreError, LocalizationReport,
    MonomialIdeal, MonomialValuation, RingContext, DEFAULT_N_CAP,
};
use serde_json::{json, Value};

use crate::corpus::{
    load_corpus, run_corpus, CorpusError, EntryStatus, RunOptions, LOCALIZATION_POWERS,
};
use crate::parse::{parse_ideal, parse_monomial, parse_ring, render_ideal, ParseError};
use crate::report::{
    chain_json, facet_json, facet_text, ideal_json, linear_form_text, prime_text, primes_json,
    primes_text, rational_text, ring_json, valuation_json,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_STABILIZED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "reesval",
    version,
    about = "Rees valuations, integral closures and asymptotic primes of monomial ideals"
)]
struct Cli {
    /// Polynomial ring, e.g. "Q[x,y,z]".
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Monomial generators, e.g. "x^2*y, y^3".
    #[arg(long, global = true)]
    ideal: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Facets of the Newton polyhedron.
    Np,
    /// Integral closure of a power of the ideal.
    Closure {
        #[arg(long)]
        power: u32,
    },
    /// Rees valuations and their centers.
    Rees,
    /// Asymptotic Samuel function at a monomial.
    Vbar {
        #[arg(long)]
        monomial: String,
    },
    /// Associated primes of closures of powers until they stabilize.
    Astar {
        #[arg(long, default_value_t = DEFAULT_N_CAP)]
        cap: u32,
    },
    /// Check a statement about the ideal.
    Verify {
        #[arg(value_enum)]
        statement: Statement,
        #[arg(long, default_value_t = DEFAULT_N_CAP)]
        cap: u32,
        /// Variables generating the multiplicative set, comma separated.
        /// Without it every single variable is tried.
        #[arg(long, value_delimiter = ',')]
        s_vars: Vec<String>,
        /// Number of powers checked for saturation.
        #[arg(long, default_value_t = LOCALIZATION_POWERS)]
        powers: u32,
    },
    /// Run every check over a JSON-lines corpus.
    Corpus {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_N_CAP)]
        cap: u32,
        /// Include per-entry wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        /// Worker threads; defaults to one per core.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Statement {
    /// Stable associated primes of closures equal the Rees-valuation centers.
    #[value(name = "cor26")]
    StablePrimes,
    /// Closures of powers are saturated by variables outside every center.
    #[value(name = "thm31")]
    Localization,
    /// Both of the above, plus chain monotonicity and minimal primes.
    All,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse { what: &'static str, err: ParseError },
    Core(CoreError),
    Corpus(CorpusError),
    Io(io::Error),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse { .. } | Failure::Corpus(_) => EXIT_USAGE,
            Failure::Core(CoreError::InvalidInput(_)) => EXIT_USAGE,
            Failure::Core(CoreError::NotStabilized { .. }) => EXIT_NOT_STABILIZED,
            Failure::Core(CoreError::Internal(_)) | Failure::Io(_) => EXIT_FAILED,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Parse { what, err } => format!("cannot parse {what}: {err}"),
            Failure::Core(e) => e.to_string(),
            Failure::Corpus(e) => e.to_string(),
            Failure::Io(e) => format!("i/o error: {e}"),
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn ring(&self) -> Result<RingContext, Failure> {
        let text = self
            .cli
            .ring
            .as_deref()
            .ok_or_else(|| Failure::Usage("--ring is required".into()))?;
        parse_ring(text).map_err(|err| Failure::Parse {
            what: "--ring",
            err,
        })
    }

    fn ideal(&self) -> Result<MonomialIdeal, Failure> {
        let ring = self.ring()?;
        let text = self
            .cli
            .ideal
            .as_deref()
            .ok_or_else(|| Failure::Usage("--ideal is required".into()))?;
        parse_ideal(text, &ring).map_err(|err| Failure::Parse {
            what: "--ideal",
            err,
        })
    }

    fn emit_json(&mut self, v: &Value) -> Result<(), Failure> {
        writeln!(self.out, "{v}")?;
        Ok(())
    }
}

/// Parse `args` (including the program name) and run the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, out };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    match &ctx.cli.command {
        Command::Np => cmd_np(ctx),
        Command::Closure { power } => cmd_closure(ctx, *power),
        Command::Rees => cmd_rees(ctx),
        Command::Vbar { monomial } => cmd_vbar(ctx, monomial),
        Command::Astar { cap } => cmd_astar(ctx, *cap),
        Command::Verify {
            statement,
            cap,
            s_vars,
            powers,
        } => cmd_verify(ctx, *statement, *cap, s_vars, *powers),
        Command::Corpus {
            path,
            cap,
            timings,
            jobs,
        } => {
            let opts = RunOptions {
                seed: ctx.cli.seed,
                n_cap: *cap,
                timings: *timings,
                jobs: *jobs,
            };
            cmd_corpus(ctx, path, &opts)
        }
    }
}

fn cmd_np(ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let ideal = ctx.ideal()?;
    let np = compute_np(&ideal)?;
    if ctx.cli.json {
        let facets: Value = np.facets().iter().map(facet_json).collect();
        ctx.emit_json(&json!({
            "facets": facets,
            "gens": ideal_json(&ideal),
            "ring": ring_json(ideal.ring()),
        }))?;
    } else {
        for f in np.facets() {
            writeln!(ctx.out, "{}", facet_text(f, ideal.ring()))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_closure(ctx: &mut Ctx<'_>, power: u32) -> Result<i32, Failure> {
    let ideal = ctx.ideal()?;
    let closure = integral_closure_power(&ideal, power)?;
    if ctx.cli.json {
        ctx.emit_json(&json!({
            "closure": ideal_json(&closure),
            "power": power,
            "ring": ring_json(ideal.ring()),
        }))?;
    } else {
        writeln!(ctx.out, "{}", render_ideal(&closure))?;
    }
    Ok(EXIT_OK)
}

fn centers(vals: &[MonomialValuation]) -> BTreeSet<reesval_core::MonomialPrime> {
    vals.iter().map(MonomialValuation::center).collect()
}

fn cmd_rees(ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let ideal = ctx.ideal()?;
    let ring = ideal.ring();
    let vals = rees_valuations(&ideal)?;
    let centers = centers(&vals);
    if ctx.cli.json {
        ctx.emit_json(&json!({
            "centers": primes_json(&centers, ring),
            "valuations": vals.iter().map(valuation_json).collect::<Value>(),
        }))?;
    } else {
        for v in &vals {
            writeln!(
                ctx.out,
                "v = {}, v(I) = {}, center {}",
                linear_form_text(v.normal(), ring),
                v.ideal_value(),
                prime_text(&v.center(), ring)
            )?;
        }
        writeln!(ctx.out, "B* = {}", primes_text(&centers, ring))?;
    }
    Ok(EXIT_OK)
}

fn cmd_vbar(ctx: &mut Ctx<'_>, monomial: &str) -> Result<i32, Failure> {
    let ideal = ctx.ideal()?;
    let m = parse_monomial(monomial, ideal.ring()).map_err(|err| Failure::Parse {
        what: "--monomial",
        err,
    })?;
    let v = vbar(&ideal, &m)?;
    if ctx.cli.json {
        ctx.emit_json(&json!({ "monomial": m.coords(), "vbar": rational_text(v) }))?;
    } else {
        writeln!(ctx.out, "{}", rational_text(v))?;
    }
    Ok(EXIT_OK)
}

fn cmd_astar(ctx: &mut Ctx<'_>, cap: u32) -> Result<i32, Failure> {
    let ideal = ctx.ideal()?;
    let ring = ideal.ring();
    let report = a_star(&ideal, cap)?;
    if ctx.cli.json {
        ctx.emit_json(&json!({
            "b_star": primes_json(&report.b_star.centers, ring),
            "chain": chain_json(&report),
            "stabilization_index": report.stabilization_index,
            "stable_set": primes_json(&report.stable_set, ring),
        }))?;
    } else {
        for (n, set) in &report.chain {
            writeln!(ctx.out, "n = {n}: {}", primes_text(set, ring))?;
        }
        writeln!(
            ctx.out,
            "stable set: {}",
            primes_text(&report.stable_set, ring)
        )?;
        writeln!(
            ctx.out,
            "stabilization index: {}",
            report.stabilization_index
        )?;
    }
    Ok(EXIT_OK)
}

fn localization_line(r: &LocalizationReport, ring: &RingContext) -> String {
    let names: Vec<&str> = r.s_vars.iter().map(|&i| ring.names()[i].as_str()).collect();
    let s = format!("S = {{{}}}", names.join(", "));
    let n_max = r.per_n.last().map_or(0, |(n, _)| *n);
    match (r.admissible, r.counter_witness()) {
        (true, None) => {
            format!("{s}: admissible, saturation fixes every closure for n = 1..{n_max}: PASS")
        }
        (true, Some(n)) => {
            format!("{s}: admissible, saturation enlarges the closure at n = {n}: FAIL")
        }
        (false, None) => format!("{s}: not admissible, no counter-witness for n = 1..{n_max}"),
        (false, Some(n)) => format!("{s}: not admissible, counter-witness at n = {n}"),
    }
}

fn localization_value(r: &LocalizationReport, ring: &RingContext) -> Value {
    let names: Vec<&str> = r.s_vars.iter().map(|&i| ring.names()[i].as_str()).collect();
    json!({
        "admissible": r.admissible,
        "counter_witness": r.counter_witness(),
        "holds": r.holds(),
        "per_n": r.per_n.iter().map(|(n, ok)| json!([n, ok])).collect::<Value>(),
        "s_vars": names,
    })
}

fn cmd_verify(
    ctx: &mut Ctx<'_>,
    statement: Statement,
    cap: u32,
    s_vars: &[String],
    powers: u32,
) -> Result<i32, Failure> {
    let ideal = ctx.ideal()?;
    let ring = ideal.ring().clone();
    let mut doc = serde_json::Map::new();
    let mut lines = Vec::new();
    let mut verified = true;

    if statement != Statement::Localization {
        let (ok, report) = verify_stable_primes_are_centers(&ideal, cap)?;
        verified &= ok;
        lines.push(format!(
            "cor26: stable set {} at n = {}, B* {}: {}",
            primes_text(&report.stable_set, &ring),
            report.stabilization_index,
            primes_text(&report.b_star.centers, &ring),
            if ok { "PASS" } else { "FAIL" }
        ));
        doc.insert(
            "cor26".into(),
            json!({
                "b_star": primes_json(&report.b_star.centers, &ring),
                "holds": ok,
                "stabilization_index": report.stabilization_index,
                "stable_set": primes_json(&report.stable_set, &ring),
            }),
        );
        if statement == Statement::All {
            verified &= report.verdict_monotone;
            lines.push(format!(
                "monotone chain: {}",
                if report.verdict_monotone {
                    "PASS"
                } else {
                    "FAIL"
                }
            ));
            doc.insert("monotone".into(), json!(report.verdict_monotone));
            let min = minimal_primes(&ideal)?;
            let ok = min.is_subset(&report.stable_set);
            verified &= ok;
            lines.push(format!(
                "lemma21i: minimal primes {} within the stable set: {}",
                primes_text(&min, &ring),
                if ok { "PASS" } else { "FAIL" }
            ));
            doc.insert(
                "lemma21i".into(),
                json!({ "holds": ok, "minimal_primes": primes_json(&min, &ring) }),
            );
        }
    }

    if statement != Statement::StablePrimes {
        let sets: Vec<Vec<usize>> = if s_vars.is_empty() {
            (0..ring.dim()).map(|i| vec![i]).collect()
        } else {
            let mut idx = Vec::new();
            for name in s_vars {
                let i = ring.index_of(name.trim()).ok_or_else(|| {
                    Failure::Usage(format!("--s-vars names unknown variable `{name}`"))
                })?;
                idx.push(i);
            }
            vec![idx]
        };
        let mut reports = Vec::new();
        for s in &sets {
            let r = verify_localization(&ideal, s, powers)?;
            verified &= r.holds();
            lines.push(format!("thm31: {}", localization_line(&r, &ring)));
            reports.push(localization_value(&r, &ring));
        }
        doc.insert("thm31".into(), Value::Array(reports));
    }

    if ctx.cli.json {
        doc.insert("verified".into(), json!(verified));
        ctx.emit_json(&Value::Object(doc))?;
    } else {
        for l in lines {
            writeln!(ctx.out, "{l}")?;
        }
    }
    Ok(if verified { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_corpus(ctx: &mut Ctx<'_>, path: &Path, opts: &RunOptions) -> Result<i32, Failure> {
    if opts.n_cap == 0 {
        return Err(Failure::Usage("--cap must be positive".into()));
    }
    if opts.jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be positive".into()));
    }
    let entries = load_corpus(path).map_err(Failure::Corpus)?;
    let run = run_corpus(&entries, opts).map_err(Failure::Usage)?;
    if ctx.cli.json {
        ctx.out.write_all(run.to_json_lines().as_bytes())?;
    } else {
        let width = run.entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
        for e in &run.entries {
            let detail = match e.status {
                EntryStatus::Pass | EntryStatus::Fail => {
                    let failed: Vec<&str> = e
                        .verdicts
                        .iter()
                        .filter(|(_, ok)| !**ok)
                        .map(|(k, _)| *k)
                        .collect();
                    let index = e.stabilization_index.unwrap_or(0);
                    if failed.is_empty() {
                        format!("PASS  index {index}  stable {}", e.report["stable_set"])
                    } else {
                        format!("FAIL  {}", failed.join(", "))
                    }
                }
                EntryStatus::NotStabilized | EntryStatus::Error => {
                    format!("ERROR {}", e.report["error"].as_str().unwrap_or(""))
                }
            };
            writeln!(ctx.out, "{:<width$}  {detail}", e.id)?;
        }
        let s = run.summary();
        writeln!(
            ctx.out,
            "{} entries: {} passed, {} failed, {} not stabilized, {} errors; max stabilization index {}",
            s["entries"], s["passed"], s["failed"], s["not_stabilized"], s["errors"],
            s["max_stabilization_index"]
        )?;
    }
    Ok(run.exit_code())
}
