//! The `numsg` command line: argument parsing, dispatch and output formats.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a
//! counterexample, 2 for usage errors and any other failure.

pub mod cache;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bijections::{zhai_partial_sum, MAX_TRUNCATION};
use crate::enumerate::{count_with_plan, EnumerationPlan};
use crate::error::Error;
use crate::kunzcount::{count_embedding_deficit, count_multiplicity_deficit, f_polynomial, h_polynomial};
use crate::stats::{
    default_epsilons, expectation, f1, figure_data, membership_probability, pair_miss_probability,
    phi, proportion, to_decimal, variance, AggregateConfig, FigureRow, GenusAggregate, Invariant,
    Predicate,
};

use cache::{aggregate_for, Cache};
use verify::{run_suite, Suite};

/// Significant digits of every decimal printed by the CLI.
pub const DIGITS: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "numsg", version, about = "Numerical semigroups by genus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Runtime {
    /// Worker threads for enumeration (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Directory of cached per-genus aggregates.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl Runtime {
    fn threads(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }

    fn cache(&self) -> Result<Option<Cache>, Failure> {
        self.cache_dir
            .as_ref()
            .map(|d| Cache::open(d).map_err(|e| Failure::Io(format!("{}: {e}", d.display()))))
            .transpose()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count (or aggregate) the semigroups of one genus or of every genus up to a bound.
    Enumerate {
        #[arg(long, conflicts_with = "gmax", required_unless_present = "gmax")]
        genus: Option<u32>,
        #[arg(long)]
        gmax: Option<u32>,
        /// Print the canonical aggregate JSON of each genus.
        #[arg(long)]
        json: bool,
        /// Write the aggregates, one JSON document per line.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        runtime: Runtime,
    },
    /// Means, variance and proportions over one genus.
    Stats {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        runtime: Runtime,
    },
    /// CSV data behind the band and mean figures.
    Figures {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        figure: u8,
        #[arg(long, default_value_t = 1)]
        gmin: u32,
        #[arg(long)]
        gmax: u32,
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        runtime: Runtime,
    },
    /// Exhaustive checks; exits 1 with the first counterexample.
    Verify {
        /// A suite name, or `all`.
        #[arg(long)]
        suite: String,
        /// Largest genus (the genus itself for `membership`).
        #[arg(long)]
        gmax: Option<u32>,
        #[command(flatten)]
        runtime: Runtime,
    },
    /// Closed-form counts of semigroups with m = g - k or e = g - k.
    Count {
        #[arg(long, value_enum)]
        mode: CountMode,
        #[arg(long, allow_negative_numbers = true)]
        deficit: i64,
        /// Evaluate at this genus; without it the counting polynomial is printed.
        #[arg(long)]
        genus: Option<i64>,
        /// Also enumerate the genus and compare.
        #[arg(long, requires = "genus")]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Partial sums of the limiting series for N(g)/phi^g.
    Zhai {
        #[arg(long, default_value_t = 10)]
        k: u32,
        /// Also report N(g)/phi^g for 20 <= g <= gmax.
        #[arg(long)]
        gmax: Option<u32>,
        #[command(flatten)]
        runtime: Runtime,
    },
    /// Membership probabilities P[n in S] and pair avoidance probabilities.
    Prob {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        /// `i,j`; may be repeated.
        #[arg(long)]
        pair: Vec<String>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        runtime: Runtime,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMode {
    Multiplicity,
    Embedding,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
    /// A verification suite failed; the report is already printed.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the CLI on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing to the given streams and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = dispatch(cli.command, out, err);
    let _ = out.flush();
    match result {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) | Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Enumerate {
            genus,
            gmax,
            json,
            out: path,
            runtime,
        } => {
            let genera = match (genus, gmax) {
                (Some(g), _) => g..=g,
                (None, Some(g)) => 0..=g,
                (None, None) => unreachable!("clap requires one of them"),
            };
            cmd_enumerate(genera, json, path, &runtime, out, err)
        }
        Command::Stats { genus, json, runtime } => cmd_stats(genus, json, &runtime, out, err),
        Command::Figures {
            figure,
            gmin,
            gmax,
            eps,
            out: path,
            runtime,
        } => cmd_figures(figure, gmin..=gmax, eps, path, &runtime, out, err),
        Command::Verify { suite, gmax, runtime } => cmd_verify(&suite, gmax, &runtime, out, err),
        Command::Count {
            mode,
            deficit,
            genus,
            check,
            json,
        } => cmd_count(mode, deficit, genus, check, json, out),
        Command::Zhai { k, gmax, runtime } => cmd_zhai(k, gmax, &runtime, out),
        Command::Prob {
            genus,
            n,
            pair,
            json,
            runtime,
        } => cmd_prob(genus, n, &pair, json, &runtime, out, err),
    }
}

fn cmd_enumerate(
    genera: std::ops::RangeInclusive<u32>,
    json: bool,
    path: Option<PathBuf>,
    runtime: &Runtime,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let cache = runtime.cache()?;
    let full = json || path.is_some() || cache.is_some();
    let mut lines = Vec::new();
    for g in genera {
        if full {
            let agg = aggregate_for(g, runtime.threads(), cache.as_ref(), err)?;
            let text = agg.to_json().to_string();
            if json {
                writeln!(out, "{text}")?;
            } else {
                writeln!(out, "g={g} N={}", agg.count())?;
            }
            lines.push(text);
        } else {
            let plan = EnumerationPlan::new(g).with_workers(runtime.threads());
            writeln!(out, "g={g} N={}", count_with_plan(&plan)?)?;
        }
    }
    if let Some(p) = path {
        let mut body = lines.join("\n");
        body.push('\n');
        fs::write(&p, body).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn decimal(q: &BigRational) -> String {
    to_decimal(q, DIGITS)
}

fn stats_rows(agg: &GenusAggregate) -> Result<Vec<(String, BigRational)>, Error> {
    let g = BigRational::from_integer(agg.genus().into());
    let g2 = &g * &g;
    let mut rows = Vec::new();
    for inv in [
        Invariant::EmbeddingDim,
        Invariant::E1,
        Invariant::E2,
        Invariant::Type,
        Invariant::T1,
        Invariant::T2,
        Invariant::Multiplicity,
        Invariant::Frobenius,
    ] {
        rows.push((format!("E[{}]/g", inv.name()), expectation(agg, inv)? / &g));
    }
    rows.push(("E[w]/g^2".into(), expectation(agg, Invariant::Weight)? / &g2));
    rows.push(("Var[w]".into(), variance(agg, Invariant::Weight)?));
    for (name, pred) in [
        ("P[e>=m/2]", Predicate::EmbeddingAtLeastHalfM),
        ("P[e>=m/3]", Predicate::EmbeddingAtLeastThirdM),
        ("P[symmetric]", Predicate::Symmetric),
        ("P[F<2m]", Predicate::FrobeniusBelow2M),
    ] {
        rows.push((name.into(), proportion(agg, pred)?));
    }
    Ok(rows)
}

fn cmd_stats(genus: u32, json: bool, runtime: &Runtime, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if genus == 0 {
        return Err(Failure::Usage("stats needs --genus >= 1".into()));
    }
    let cache = runtime.cache()?;
    let agg = aggregate_for(genus, runtime.threads(), cache.as_ref(), err)?;
    let rows = stats_rows(&agg)?;
    if json {
        let mut values = Map::new();
        for (name, q) in &rows {
            values.insert(name.clone(), json!({ "exact": q.to_string(), "decimal": decimal(q) }));
        }
        let doc = json!({
            "genus": genus.to_string(),
            "count": agg.count().to_string(),
            "values": values,
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "g={genus} N={}", agg.count())?;
        for (name, q) in &rows {
            writeln!(out, "{name} = {} ({q})", decimal(q))?;
        }
    }
    Ok(())
}

fn figure_comment(figure: u8) -> &'static str {
    match figure {
        1 => "# figure 1: proportion of S of genus g with |e(S) - g/sqrt(5)| < epsilon*g",
        2 => "# figure 2: proportion of S of genus g with |t(S) - (1-gamma)g| < epsilon*g, gamma = (5+sqrt(5))/10",
        3 => "# figure 3: proportion of S of genus g with |w(S) - g^2/(10 phi)| < epsilon*g^2",
        4 => "# figure 4: E[e]/g, E[e1]/g, E[e2]/g over S of genus g; e1 counts generators in [m, 2m-1]",
        _ => "# figure 5: E[t]/g, E[t1]/g, E[t2]/g over S of genus g; t1 counts pseudo-Frobenius numbers in [F-m+1, F]",
    }
}

/// The CSV text of one figure.
pub fn render_figure(figure: u8, rows: &[FigureRow]) -> String {
    let mut s = String::new();
    s.push_str(figure_comment(figure));
    s.push('\n');
    s.push_str(if figure <= 3 {
        "g,epsilon,proportion\n"
    } else {
        "g,mean_total,mean_part1,mean_part2\n"
    });
    for row in rows {
        match row {
            FigureRow::Band {
                genus,
                epsilon,
                proportion,
            } => s.push_str(&format!("{genus},{epsilon},{}\n", decimal(proportion))),
            FigureRow::Means {
                genus,
                total,
                part1,
                part2,
            } => s.push_str(&format!(
                "{genus},{},{},{}\n",
                decimal(total),
                decimal(part1),
                decimal(part2)
            )),
        }
    }
    s
}

fn cmd_figures(
    figure: u8,
    genera: std::ops::RangeInclusive<u32>,
    eps: Vec<f64>,
    path: Option<PathBuf>,
    runtime: &Runtime,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if genera.is_empty() {
        return Err(Failure::Usage("--gmin exceeds --gmax".into()));
    }
    let eps = if eps.is_empty() { default_epsilons(figure) } else { eps };
    if let Some(e) = eps.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(Failure::Usage(format!("epsilon {e} must be positive")));
    }
    let cache = runtime.cache()?;
    let mut aggregates = BTreeMap::new();
    for g in genera.clone() {
        aggregates.insert(g, aggregate_for(g, runtime.threads(), cache.as_ref(), err)?);
    }
    let rows = figure_data(figure, &aggregates, genera, &eps)?;
    let text = render_figure(figure, &rows);
    match path {
        Some(p) => fs::write(&p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    gmax: Option<u32>,
    runtime: &Runtime,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(Failure::Usage)?]
    };
    let cache = runtime.cache()?;
    let mut failed = false;
    for s in suites {
        let g = gmax.unwrap_or_else(|| s.default_gmax());
        match run_suite(s, g, runtime.threads(), cache.as_ref(), err)? {
            Ok(report) => {
                writeln!(out, "PASS {s} gmax={g} checks={}", report.checks)?;
                for note in &report.notes {
                    writeln!(out, "  note: {note}")?;
                }
            }
            Err(c) => {
                writeln!(out, "FAIL {s} gmax={g}: {c}")?;
                failed = true;
            }
        }
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn cmd_count(
    mode: CountMode,
    deficit: i64,
    genus: Option<i64>,
    check: bool,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let (what, threshold) = match mode {
        CountMode::Multiplicity => ("m", format!("g >= {}", 4 * deficit + 3)),
        CountMode::Embedding => ("e", format!("2g >= {}", 9 * deficit + 7)),
    };
    let Some(g) = genus else {
        let poly = match mode {
            CountMode::Multiplicity => {
                let fact: BigInt = (1..=deficit + 1).map(BigInt::from).product();
                let f = f_polynomial(deficit)?;
                f.scale(&BigRational::new(1.into(), fact))
            }
            CountMode::Embedding => h_polynomial(deficit)?,
        };
        if json {
            let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
            let doc = json!({
                "mode": what,
                "deficit": deficit.to_string(),
                "variable": "t",
                "coefficients": coeffs,
                "valid_for": threshold,
            });
            writeln!(out, "{doc}")?;
        } else {
            writeln!(out, "#{{S : g(S) = t, {what}(S) = t - {deficit}}} = {poly}   for {threshold}")?;
        }
        return Ok(());
    };
    let (value, proved) = match mode {
        CountMode::Multiplicity => {
            let c = count_multiplicity_deficit(g, deficit)?;
            (c.value, c.in_range)
        }
        CountMode::Embedding => {
            let c = count_embedding_deficit(g, deficit)?;
            (c.value, c.above_9l_7)
        }
    };
    let enumerated = if check {
        let gu = u32::try_from(g).map_err(|_| Failure::Usage(format!("genus {g} is negative")))?;
        let target = g - deficit;
        let mut n = 0u64;
        crate::enumerate::visit_genus(gu, |_, r| {
            let v = match mode {
                CountMode::Multiplicity => r.multiplicity,
                CountMode::Embedding => r.embedding_dim,
            };
            if v as i64 == target {
                n += 1;
            }
        })?;
        Some(n)
    } else {
        None
    };
    if json {
        let mut doc = json!({
            "mode": what,
            "deficit": deficit.to_string(),
            "genus": g.to_string(),
            "value": value.to_string(),
            "proved_range": proved,
        });
        if let Some(n) = enumerated {
            doc["enumerated"] = Value::String(n.to_string());
        }
        writeln!(out, "{doc}")?;
    } else {
        let note = if proved { "" } else { " (outside the proved range)" };
        writeln!(out, "g={g} {what}=g-{deficit} count={value}{note}")?;
        if let Some(n) = enumerated {
            writeln!(out, "enumerated={n}")?;
        }
    }
    match enumerated {
        Some(n) if proved && BigInt::from(n) != value => Err(Failure::Verification),
        _ => Ok(()),
    }
}

fn cmd_zhai(k: u32, gmax: Option<u32>, runtime: &Runtime, out: &mut dyn Write) -> Outcome {
    if k > MAX_TRUNCATION {
        return Err(Error::TruncationTooLarge(k, MAX_TRUNCATION).into());
    }
    for t in 0..=k {
        writeln!(out, "K={t} partial_sum={:.12}", zhai_partial_sum(t)?)?;
    }
    if let Some(gmax) = gmax {
        let mut previous: Option<f64> = None;
        let mut increasing = true;
        for g in 20..=gmax {
            let plan = EnumerationPlan::new(g).with_workers(runtime.threads());
            let n = count_with_plan(&plan)?;
            let ratio = n as f64 / phi().powi(g as i32);
            if previous.is_some_and(|p| ratio <= p) {
                increasing = false;
            }
            previous = Some(ratio);
            writeln!(out, "g={g} N={n} N/phi^g={ratio:.12}")?;
        }
        if gmax >= 21 {
            writeln!(out, "increasing={increasing}")?;
        }
    }
    Ok(())
}

fn parse_pair(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Usage(format!("--pair expects `i,j`, got `{s}`"));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

fn cmd_prob(
    genus: u32,
    ns: Vec<u32>,
    pairs: &[String],
    json: bool,
    runtime: &Runtime,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if genus == 0 {
        return Err(Failure::Usage("prob needs --genus >= 1".into()));
    }
    let pairs: Vec<(u32, u32)> = pairs.iter().map(|p| parse_pair(p)).collect::<Result<_, _>>()?;
    let config = AggregateConfig::for_genus(genus);
    for &(i, j) in &pairs {
        if !config.pairs.contains(&(i.min(j), i.max(j))) {
            let tracked: Vec<String> = config.pairs.iter().map(|(a, b)| format!("{a},{b}")).collect();
            return Err(Failure::Usage(format!(
                "pair {i},{j} is not tracked at genus {genus}; tracked pairs: {}",
                tracked.join(" ")
            )));
        }
    }
    let ns = if ns.is_empty() && pairs.is_empty() {
        (1..=2 * genus).collect()
    } else {
        ns
    };
    let cache = runtime.cache()?;
    let agg = aggregate_for(genus, runtime.threads(), cache.as_ref(), err)?;
    let gf = genus as f64;
    let mut members = Vec::new();
    for &n in &ns {
        let p = membership_probability(&agg, n)?;
        let limit = f1(n as f64 / gf).ok();
        members.push((n, p, limit));
    }
    let mut avoid = Vec::new();
    for &(i, j) in &pairs {
        avoid.push((i, j, pair_miss_probability(&agg, i.min(j), i.max(j))?));
    }
    if json {
        let members: Vec<Value> = members
            .iter()
            .map(|(n, p, limit)| {
                json!({
                    "n": n.to_string(),
                    "probability": p.to_string(),
                    "decimal": decimal(p),
                    "f1": limit.map(|x| format!("{x:.12}")),
                })
            })
            .collect();
        let avoid: Vec<Value> = avoid
            .iter()
            .map(|(i, j, p)| json!({ "pair": [i.to_string(), j.to_string()], "probability": p.to_string(), "decimal": decimal(p) }))
            .collect();
        let doc = json!({
            "genus": genus.to_string(),
            "count": agg.count().to_string(),
            "membership": members,
            "pairs": avoid,
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "g={genus} N={}", agg.count())?;
        if !members.is_empty() {
            writeln!(out, "n,n/g,probability,f1")?;
        }
        for (n, p, limit) in &members {
            let limit = limit.map_or("undefined".to_string(), |x| format!("{x:.12}"));
            writeln!(out, "{n},{:.6},{},{limit}", *n as f64 / gf, decimal(p))?;
        }
        for (i, j, p) in &avoid {
            let pf = p.to_f64().unwrap_or(f64::NAN);
            writeln!(out, "P[{i} and {j} both gaps]={} ({pf:.6})", decimal(p))?;
        }
    }
    Ok(())
}
