mod report;
mod source;

use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use rado_core::analysis::{lower_bound_scan, predict_commonness, robust_sum_set, scan_csv};
use rado_core::fourier::{construct_uncommon_spectrum, deviation, prob_coloring_from_spectrum};
use rado_core::search::{improve_coloring, local_search, SearchConfig};
use rado_core::verify::{run_suite, Suite};
use rado_core::{count_stats, exact_min_mu, parse_equation, Domain, LinearEquation};

use report::{round6, Frac, Recorder, RunReport};

#[derive(Parser)]
#[command(
    name = "rado-lab",
    version,
    about = "Monochromatic solutions of linear equations under two-colorings"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "RADO_LAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DomainArgs {
    /// Color the interval [1, n].
    #[arg(long)]
    n: Option<usize>,
    /// Color the cyclic group Z_m.
    #[arg(long)]
    zm: Option<usize>,
}

impl DomainArgs {
    fn domain(&self) -> Domain {
        match (self.n, self.zm) {
            (Some(n), _) => Domain::Interval(n),
            (_, Some(m)) => Domain::Cyclic(m),
            _ => unreachable!("clap requires one of --n, --zm"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count total and monochromatic solutions under a coloring.
    Count {
        equation: String,
        #[command(flatten)]
        domain: DomainArgs,
        /// schur | altprefix:c | blocks:spec | point[:m] | random:seed |
        /// lift:m:file | red | blue | file:path
        #[arg(long)]
        coloring: String,
    },
    /// Exact minimum proportion by exhaustive search.
    Min {
        equation: String,
        #[command(flatten)]
        domain: DomainArgs,
        /// Maximum number of colorings to evaluate.
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// Run a reproduction suite.
    Verify { suite: Suite },
    /// Branch, commonness prediction and certificate.
    Classify { equation: String },
    /// Local search for a low-proportion coloring of [n].
    Search {
        equation: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long)]
        max_passes: Option<usize>,
        /// Descend from this coloring instead of random starts.
        #[arg(long)]
        start: Option<String>,
        /// Write the best coloring here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Minimum monochromatic counts over a range of n, as CSV.
    Scan {
        equation: String,
        /// Inclusive range `a..b`.
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
        /// Emit the JSON report instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Uncommon spectrum for `ax + by + cz = 0` over Z_|c|.
    Spectrum {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
    },
    /// Sums with at least `threshold` ordered representations.
    Sumset {
        /// Comma-separated integers.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        set: Vec<i64>,
        #[arg(long, default_value_t = 1)]
        threshold: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0} of {1} checks failed")]
    Verify(usize, usize),
    #[error("budget exhausted after {0} colorings; result is partial")]
    Budget(u64),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(f) = cause.downcast_ref::<Failure>() {
            return match f {
                Failure::Verify(..) => 3,
                Failure::Budget(_) => 4,
            };
        }
        if cause.is::<rado_core::ParseError>() || cause.is::<clap::Error>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<rado_core::Error>() {
            return match e {
                rado_core::Error::Parse(_) => 2,
                rado_core::Error::TooLarge(_) => 4,
                _ => 1,
            };
        }
    }
    1
}

fn equation(text: &str) -> Result<LinearEquation> {
    parse_equation(text).with_context(|| format!("parsing equation '{text}'"))
}

fn emit(report: &RunReport) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli, rec: Recorder) -> Result<()> {
    match cli.command {
        Command::Count {
            equation: text,
            domain,
            coloring,
        } => {
            let e = equation(&text)?;
            let domain = domain.domain();
            let f = source::resolve(&coloring, domain)?;
            let s = count_stats(&e, &f)?;
            emit(&rec.finish(
                source::seed_of(&coloring),
                json!({ "equation": e, "domain": domain, "coloring": coloring }),
                json!({
                    "total": s.total,
                    "monochromatic": s.monochromatic,
                    "red": s.red,
                    "blue": s.blue,
                    "proportion": Frac::from(s.proportion),
                }),
            ))
        }
        Command::Min {
            equation: text,
            domain,
            budget,
        } => {
            let e = equation(&text)?;
            let domain = domain.domain();
            let r = exact_min_mu(&e, domain, budget)?;
            emit(&rec.finish(
                None,
                json!({ "equation": e, "domain": domain, "budget": budget }),
                json!({
                    "proportion": Frac::from(r.proportion),
                    "monochromatic": r.monochromatic,
                    "total": r.total,
                    "witness": r.witness.to_text(),
                    "exhaustive": r.exhaustive,
                    "evaluated": r.evaluated,
                }),
            ))?;
            if !r.exhaustive {
                bail!(Failure::Budget(r.evaluated));
            }
            Ok(())
        }
        Command::Verify { suite } => {
            let checks = run_suite(suite)?;
            for c in &checks {
                eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            emit(&rec.finish(
                None,
                json!({ "suite": suite }),
                json!({ "passed": failed == 0, "checks": checks }),
            ))?;
            if failed > 0 {
                bail!(Failure::Verify(failed, checks.len()));
            }
            Ok(())
        }
        Command::Classify { equation: text } => {
            let e = equation(&text)?;
            let v = predict_commonness(&e)?;
            emit(&rec.finish(None, json!({ "equation": e }), serde_json::to_value(&v)?))
        }
        Command::Search {
            equation: text,
            n,
            seed,
            restarts,
            max_passes,
            start,
            out,
        } => {
            let e = equation(&text)?;
            let cfg = SearchConfig {
                seed,
                restarts,
                max_passes: max_passes.unwrap_or(usize::MAX),
                n,
            };
            let inputs = json!({
                "equation": e,
                "n": n,
                "restarts": restarts,
                "max_passes": max_passes,
                "start": start,
            });
            let (witness, outputs) = match &start {
                Some(spec) => {
                    let f = source::resolve(spec, Domain::Interval(n))?;
                    let r = improve_coloring(&e, &f, &cfg)?;
                    let outputs = json!({
                        "before": r.before,
                        "after": r.after,
                        "total": r.total,
                        "proportion": Frac::from(num_rational::Ratio::new(r.after, r.total)),
                        "passes": r.passes,
                        "improved": r.improved,
                    });
                    (r.coloring, outputs)
                }
                None => {
                    let r = local_search(&e, &cfg)?;
                    let outputs = json!({
                        "proportion": Frac::from(r.proportion),
                        "monochromatic": r.monochromatic,
                        "total": r.total,
                        "best_restart": r.best_restart,
                        "trace": r.trace,
                    });
                    (r.witness, outputs)
                }
            };
            if let Some(path) = &out {
                std::fs::write(path, witness.to_text() + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&rec.finish(Some(seed), inputs, outputs))
        }
        Command::Scan {
            equation: text,
            n,
            budget,
            json: as_json,
        } => {
            let e = equation(&text)?;
            let ns = parse_range(&n)?;
            let rows = lower_bound_scan(&e, &ns, budget)?;
            if as_json {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "n": r.n,
                            "total": r.total,
                            "min_mono": r.min_mono,
                            "min_mu": Frac::from(r.min_mu),
                            "per_n_squared": round6(r.per_n_squared()),
                            "exact": r.exact,
                        })
                    })
                    .collect();
                emit(&rec.finish(
                    Some(0),
                    json!({ "equation": e, "n": ns, "budget": budget }),
                    json!({ "rows": rows }),
                ))
            } else {
                print!("# {}\n{}", rec.command_line(), scan_csv(&rows));
                Ok(())
            }
        }
        Command::Spectrum { a, b, c } => {
            let s = construct_uncommon_spectrum(a, b, c)?;
            let dev = deviation(a, b, &s)?;
            let f = prob_coloring_from_spectrum(&s)?;
            let values: Vec<f64> = f.values().iter().map(|&v| round6(v)).collect();
            emit(&rec.finish(
                None,
                json!({ "a": a, "b": b, "c": c }),
                json!({
                    "spectrum": s,
                    "deviation": round6(dev),
                    "expected_mu": round6(0.25 + dev),
                    "coloring": values,
                }),
            ))
        }
        Command::Sumset { set, threshold } => {
            if threshold == 0 {
                bail!("threshold must be positive");
            }
            let set: BTreeSet<i64> = set.into_iter().collect();
            let out = robust_sum_set(&set, threshold);
            emit(&rec.finish(
                None,
                json!({ "set": set, "threshold": threshold }),
                json!({ "sums": out, "size": out.len() }),
            ))
        }
    }
}

/// `a..b` (inclusive) or a single value.
fn parse_range(text: &str) -> Result<Vec<usize>> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .with_context(|| format!("bad bound '{s}' in '{text}'"))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty range '{text}'");
    }
    Ok((lo..=hi).collect())
}

fn main() -> ExitCode {
    let command: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli, Recorder::start(command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
