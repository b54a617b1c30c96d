//! Command-line front end: thin, deterministic plumbing over the library.
//!
//! Subcommands: `solve` (α→β), `forward` (β→α), `estimate` (asymptotic
//! count), `count` (exact count), `sample` (measure/uniform draws or an
//! empirical shape), `shape` (limit-shape curve), `qj` (feasibility-lattice
//! listing), `validate` (the acceptance suite).
//!
//! Conventions, kept strictly for scriptability:
//! - JSON to stdout (CSV for shape data); `--out FILE` redirects the body.
//! - Every serialized float is rounded to 12 significant digits; object
//!   keys are sorted — identical configuration and seed give byte-identical
//!   output.
//! - Profiles serialize as `{"power": "decimal string"}`, partitions as
//!   `{"part": multiplicity}`, lattice polynomials as
//!   `{"power": "num/den"}`.
//! - Non-finite floats (e.g. the log-estimate of an infeasible profile)
//!   serialize as JSON `null`.
//! - Exit codes: 0 success; 2 solver non-convergence (or sampling that
//!   exhausted its tries); 3 infeasible request (estimate/count of a
//!   profile off the feasibility lattice); 1 internal error; 64 usage.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::rational::Rational64;
use serde_json::{Map, Number, Value};

use crate::asymptotics::{estimate_p, EstimateBreakdown, EstimateMode};
use crate::domain::{
    profile_of, round_sig12, MomentVector, Partition, Profile, ProfileSet,
};
use crate::error::{Error, Result};
use crate::exact_count::count_exact;
use crate::intpoly::{enumerate_qj, is_n_feasible, DEFAULT_DEGREE_CAP};
use crate::maxent_continuous::{forward_moments, solve_beta, DualVector, SolveOptions};
use crate::maxent_discrete::{natural_scale, solve_beta_hat};
use crate::sampler::{
    empirical_shape, limit_shape, sample_mu, sample_uniform_exact, ShapeCurve,
};
use crate::validation::run_suite;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeFlag {
    Leading,
    Refined,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureFlag {
    /// Rejection to the exact profile: uniform on the profile class.
    Uniform,
    /// Unconditioned draws from the maximum-entropy measure.
    Mu,
}

/// A fully validated run request.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

#[derive(Clone, Debug)]
pub enum Command {
    Solve {
        set: ProfileSet,
        alpha: Vec<f64>,
        tol: f64,
        max_iter: usize,
    },
    Forward {
        set: ProfileSet,
        beta: Vec<f64>,
    },
    Estimate {
        set: ProfileSet,
        alpha: Vec<f64>,
        n: u64,
        mode: ModeFlag,
    },
    Count {
        set: ProfileSet,
        profile: Vec<u64>,
    },
    Sample {
        set: ProfileSet,
        profile: Vec<u64>,
        draws: usize,
        seed: u64,
        max_tries: u64,
        measure: MeasureFlag,
        grid: (f64, f64, usize),
    },
    Shape {
        set: ProfileSet,
        beta: Option<Vec<f64>>,
        alpha: Option<Vec<f64>>,
        grid: (f64, f64, usize),
    },
    Qj {
        set: ProfileSet,
        degree_cap: u32,
    },
    Validate {
        criteria: Option<Vec<usize>>,
    },
}

#[derive(Parser, Debug)]
#[command(
    name = "mep",
    version,
    about = "Asymptotics, exact counts, samples, and limit shapes for integer partitions with constrained power sums"
)]
pub struct CliArgs {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Write the report body to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; defaults to json (shape and csv-capable sample
    /// default to csv where noted).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Solve the dual problem: moment targets α → dual vector β.
    Solve {
        /// Comma-separated powers, e.g. `1,2`.
        #[arg(short = 'J', value_name = "POWERS")]
        powers: String,
        /// Comma-separated moment targets matched to -J's order.
        #[arg(short = 'a', value_name = "LIST")]
        alpha: String,
        /// Relative residual tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Newton iteration budget.
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
    /// Forward map: dual vector β → moments α.
    Forward {
        #[arg(short = 'J', value_name = "POWERS")]
        powers: String,
        /// Comma-separated dual coefficients matched to -J's order.
        #[arg(short = 'b', value_name = "LIST")]
        beta: String,
    },
    /// Asymptotic estimate of the number of partitions with profile
    /// ⌊α_j·n^{(j+1)/2}⌋.
    Estimate {
        #[arg(short = 'J', value_name = "POWERS")]
        powers: String,
        #[arg(short = 'a', value_name = "LIST")]
        alpha: String,
        /// Scale parameter n.
        #[arg(short = 'n')]
        n: u64,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeFlag,
    },
    /// Exact count of partitions with the given profile.
    Count {
        #[arg(short = 'J', value_name = "POWERS")]
        powers: String,
        /// Comma-separated profile entries matched to -J's order.
        #[arg(short = 'N', value_name = "LIST")]
        profile: String,
    },
    /// Draw partitions with the given profile (uniform via rejection, or
    /// raw measure draws); `--format csv` emits the empirical shape of a
    /// single draw.
    Sample {
        #[arg(short = 'J', value_name = "POWERS")]
        powers: String,
        #[arg(short = 'N', value_name = "LIST")]
        profile: String,
        /// Number of partitions to draw.
        #[arg(long, default_value_t = 1)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rejection budget per uniform draw.
        #[arg(long, default_value_t = 1_000_000)]
        max_tries: u64,
        #[arg(long, value_enum, default_value = "uniform")]
        measure: MeasureFlag,
        /// Shape grid as lo:hi:points (csv output only).
        #[arg(long, default_value = "0.05:4:80")]
        grid: String,
    },
    /// The limit-shape curve φ_∞ for a dual vector (or for the dual solved
    /// from moments).
    Shape {
        #[arg(short = 'J', value_name = "POWERS")]
        powers: String,
        /// Dual coefficients; exactly one of -b / -a.
        #[arg(short = 'b', value_name = "LIST")]
        beta: Option<String>,
        /// Moment targets to solve first; exactly one of -b / -a.
        #[arg(short = 'a', value_name = "LIST")]
        alpha: Option<String>,
        /// Grid as lo:hi:points.
        #[arg(long, default_value = "0.05:4:200")]
        grid: String,
    },
    /// List the integer-valued-polynomial lattice Q_J.
    Qj {
        #[arg(short = 'J', value_name = "POWERS")]
        powers: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: u32,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Validate {
        /// Comma-separated criterion ids (default: all twelve).
        #[arg(long, value_name = "IDS")]
        criteria: Option<String>,
    },
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("cannot parse {what} entry {p:?} as a real")))
        })
        .collect()
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Usage(format!("cannot parse {what} entry {p:?} as an integer")))
        })
        .collect()
}

fn parse_powers(text: &str) -> Result<ProfileSet> {
    let powers = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Usage(format!("cannot parse power {p:?}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    ProfileSet::new(powers).map_err(|e| Error::Usage(e.to_string()))
}

fn parse_grid(text: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = text.split(':').collect();
    let usage = || Error::Usage(format!("grid must be lo:hi:points, got {text:?}"));
    if parts.len() != 3 {
        return Err(usage());
    }
    let lo = parts[0].trim().parse::<f64>().map_err(|_| usage())?;
    let hi = parts[1].trim().parse::<f64>().map_err(|_| usage())?;
    let points = parts[2].trim().parse::<usize>().map_err(|_| usage())?;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) || points < 2 {
        return Err(Error::Usage(format!(
            "grid needs 0 < lo < hi and points >= 2, got {text:?}"
        )));
    }
    Ok((lo, hi, points))
}

fn require_matching_len(set: &ProfileSet, len: usize, what: &str) -> Result<()> {
    if set.len() != len {
        return Err(Error::Usage(format!(
            "{what} has {len} entries but -J names {} powers",
            set.len()
        )));
    }
    Ok(())
}

impl TryFrom<CliArgs> for RunConfig {
    type Error = Error;

    fn try_from(args: CliArgs) -> Result<RunConfig> {
        let command = match args.command {
            CliCommand::Solve {
                powers,
                alpha,
                tol,
                max_iter,
            } => {
                let set = parse_powers(&powers)?;
                let alpha = parse_f64_list(&alpha, "-a")?;
                require_matching_len(&set, alpha.len(), "-a")?;
                if !(tol > 0.0 && tol.is_finite()) || max_iter == 0 {
                    return Err(Error::Usage(
                        "--tol must be positive and --max-iter at least 1".into(),
                    ));
                }
                Command::Solve {
                    set,
                    alpha,
                    tol,
                    max_iter,
                }
            }
            CliCommand::Forward { powers, beta } => {
                let set = parse_powers(&powers)?;
                let beta = parse_f64_list(&beta, "-b")?;
                require_matching_len(&set, beta.len(), "-b")?;
                Command::Forward { set, beta }
            }
            CliCommand::Estimate {
                powers,
                alpha,
                n,
                mode,
            } => {
                let set = parse_powers(&powers)?;
                let alpha = parse_f64_list(&alpha, "-a")?;
                require_matching_len(&set, alpha.len(), "-a")?;
                if n == 0 {
                    return Err(Error::Usage("-n must be at least 1".into()));
                }
                Command::Estimate {
                    set,
                    alpha,
                    n,
                    mode,
                }
            }
            CliCommand::Count { powers, profile } => {
                let set = parse_powers(&powers)?;
                let profile = parse_u64_list(&profile, "-N")?;
                require_matching_len(&set, profile.len(), "-N")?;
                Command::Count { set, profile }
            }
            CliCommand::Sample {
                powers,
                profile,
                draws,
                seed,
                max_tries,
                measure,
                grid,
            } => {
                let set = parse_powers(&powers)?;
                let profile = parse_u64_list(&profile, "-N")?;
                require_matching_len(&set, profile.len(), "-N")?;
                if draws == 0 {
                    return Err(Error::Usage("--draws must be at least 1".into()));
                }
                Command::Sample {
                    set,
                    profile,
                    draws,
                    seed,
                    max_tries,
                    measure,
                    grid: parse_grid(&grid)?,
                }
            }
            CliCommand::Shape {
                powers,
                beta,
                alpha,
                grid,
            } => {
                let set = parse_powers(&powers)?;
                let beta = beta.map(|b| parse_f64_list(&b, "-b")).transpose()?;
                let alpha = alpha.map(|a| parse_f64_list(&a, "-a")).transpose()?;
                match (&beta, &alpha) {
                    (Some(b), None) => require_matching_len(&set, b.len(), "-b")?,
                    (None, Some(a)) => require_matching_len(&set, a.len(), "-a")?,
                    _ => {
                        return Err(Error::Usage(
                            "shape needs exactly one of -b (dual) or -a (moments)".into(),
                        ))
                    }
                }
                Command::Shape {
                    set,
                    beta,
                    alpha,
                    grid: parse_grid(&grid)?,
                }
            }
            CliCommand::Qj { powers, degree_cap } => Command::Qj {
                set: parse_powers(&powers)?,
                degree_cap,
            },
            CliCommand::Validate { criteria } => {
                let criteria = criteria
                    .map(|c| {
                        c.split(',')
                            .map(|p| {
                                p.trim().parse::<usize>().map_err(|_| {
                                    Error::Usage(format!("bad criterion id {p:?}"))
                                })
                            })
                            .collect::<Result<Vec<usize>>>()
                    })
                    .transpose()?;
                Command::Validate { criteria }
            }
        };
        Ok(RunConfig {
            command,
            out: args.out,
            format: args.format,
        })
    }
}

/// What a run produced: a report body for stdout (or `--out`), a message
/// for stderr, and the process exit code.
#[derive(Clone, Debug)]
pub struct CliOutcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. } | Error::MaxTriesExceeded { .. } => EXIT_NO_CONVERGENCE,
        Error::Usage(_)
        | Error::InvalidInput(_)
        | Error::ZeroEntry { .. }
        | Error::DomainViolation(_)
        | Error::DegreeCapExceeded { .. } => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// Run a validated config to completion.  Never panics; all failures are
/// folded into the outcome.
pub fn execute(config: &RunConfig) -> CliOutcome {
    match run(config) {
        Ok((stdout, code)) => CliOutcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => CliOutcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code_for(&e),
        },
    }
}

// ---------- JSON helpers (12 significant digits, sorted keys) ----------

fn num(x: f64) -> Value {
    Number::from_f64(round_sig12(x)).map_or(Value::Null, Value::Number)
}

fn rational(r: Rational64) -> (Value, Value) {
    let as_float = *r.numer() as f64 / *r.denom() as f64;
    (num(as_float), Value::String(format!("{}/{}", r.numer(), r.denom())))
}

fn powers_json(set: &ProfileSet) -> Value {
    Value::Array(set.powers().iter().map(|&j| Value::from(j)).collect())
}

fn keyed_floats(set: &ProfileSet, values: &[f64]) -> Value {
    let mut map = Map::new();
    for (&j, &v) in set.powers().iter().zip(values) {
        map.insert(j.to_string(), num(v));
    }
    Value::Object(map)
}

fn profile_json(profile: &Profile) -> Value {
    let mut map = Map::new();
    for (&j, v) in profile.set().powers().iter().zip(profile.values()) {
        map.insert(j.to_string(), Value::String(v.to_string()));
    }
    Value::Object(map)
}

fn partition_json(lambda: &Partition) -> Value {
    let mut map = Map::new();
    for (part, mult) in lambda.multiplicities() {
        map.insert(part.to_string(), Value::from(mult));
    }
    Value::Object(map)
}

fn estimate_json(est: &EstimateBreakdown) -> Value {
    let mut map = Map::new();
    map.insert("converged".into(), Value::Bool(est.converged));
    map.insert("log_estimate".into(), num(est.log_estimate));
    map.insert(
        "estimate".into(),
        est.linear_estimate.map_or(Value::Null, num),
    );
    if let Some(h) = est.entropy {
        map.insert("entropy".into(), num(h));
    }
    if let Some(l) = est.log_lclt {
        map.insert("log_lclt_factor".into(), num(l));
    }
    Value::Object(map)
}

fn body(value: Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

// ---------- subcommand implementations ----------

fn run(config: &RunConfig) -> Result<(String, i32)> {
    match &config.command {
        Command::Solve {
            set,
            alpha,
            tol,
            max_iter,
        } => {
            let target = MomentVector::new(set.clone(), alpha.clone())?;
            let options = SolveOptions {
                tol: *tol,
                max_iter: *max_iter,
                ..SolveOptions::default()
            };
            let report = solve_beta(&target, &options)?;
            let mut map = Map::new();
            map.insert("powers".into(), powers_json(set));
            map.insert("alpha".into(), keyed_floats(set, alpha));
            map.insert("beta".into(), keyed_floats(set, report.beta.values()));
            map.insert("converged".into(), Value::Bool(report.converged));
            map.insert("iterations".into(), Value::from(report.iterations));
            map.insert("residual".into(), num(report.residual));
            map.insert("moments".into(), keyed_floats(set, &report.moments));
            let code = if report.converged {
                EXIT_OK
            } else {
                EXIT_NO_CONVERGENCE
            };
            Ok((body(Value::Object(map)), code))
        }

        Command::Forward { set, beta } => {
            let dual = DualVector::new(set.clone(), beta.clone())?;
            let alpha = forward_moments(&dual)?;
            let mut map = Map::new();
            map.insert("powers".into(), powers_json(set));
            map.insert("beta".into(), keyed_floats(set, beta));
            map.insert("alpha".into(), keyed_floats(set, alpha.values()));
            Ok((body(Value::Object(map)), EXIT_OK))
        }

        Command::Estimate {
            set,
            alpha,
            n,
            mode,
        } => {
            let target = MomentVector::new(set.clone(), alpha.clone())?;
            let modes: &[(&str, EstimateMode)] = match mode {
                ModeFlag::Leading => &[("leading", EstimateMode::Leading)],
                ModeFlag::Refined => &[("refined", EstimateMode::Refined)],
                ModeFlag::Both => &[
                    ("leading", EstimateMode::Leading),
                    ("refined", EstimateMode::Refined),
                ],
            };
            let mut map = Map::new();
            let mut feasible = true;
            let mut converged = true;
            for (label, m) in modes {
                let est = estimate_p(&target, *n, *m)?;
                if map.is_empty() {
                    map.insert("powers".into(), powers_json(set));
                    map.insert("alpha".into(), keyed_floats(set, alpha));
                    map.insert("n".into(), Value::from(*n));
                    map.insert("scaled_profile".into(), profile_json(&est.scaled));
                    map.insert("feasible".into(), Value::Bool(est.feasible));
                    map.insert("M".into(), num(est.m));
                    let (b, b_exact) = rational(est.b);
                    map.insert("b".into(), b);
                    map.insert("b_rational".into(), b_exact);
                    map.insert("c".into(), num(est.c));
                    let (b1, b1_exact) = rational(est.b1);
                    map.insert("b1".into(), b1);
                    map.insert("b1_rational".into(), b1_exact);
                    map.insert("c1".into(), num(est.c1));
                    feasible = est.feasible;
                }
                converged &= est.converged;
                map.insert((*label).into(), estimate_json(&est));
            }
            let code = if !feasible {
                EXIT_INFEASIBLE
            } else if !converged {
                EXIT_NO_CONVERGENCE
            } else {
                EXIT_OK
            };
            Ok((body(Value::Object(map)), code))
        }

        Command::Count { set, profile } => {
            let target = Profile::from_u64(set.clone(), profile)?;
            let count = count_exact(&target)?;
            let lattice = enumerate_qj(set, DEFAULT_DEGREE_CAP)?;
            let feasible = is_n_feasible(&target, &lattice)?;
            let mut map = Map::new();
            map.insert("powers".into(), powers_json(set));
            map.insert("profile".into(), profile_json(&target));
            map.insert("count".into(), Value::String(count.to_string()));
            map.insert("feasible".into(), Value::Bool(feasible));
            let code = if feasible { EXIT_OK } else { EXIT_INFEASIBLE };
            Ok((body(Value::Object(map)), code))
        }

        Command::Sample {
            set,
            profile,
            draws,
            seed,
            max_tries,
            measure,
            grid,
        } => {
            let target = Profile::from_u64(set.clone(), profile)?;
            let report = solve_beta_hat(&target, &SolveOptions::default())?;
            if !report.converged {
                return Err(Error::NoConvergence {
                    iterations: report.iterations,
                    residual: report.residual,
                });
            }
            let mut rng = ChaCha12Rng::seed_from_u64(*seed);
            let format = config.format.unwrap_or(OutputFormat::Json);
            if format == OutputFormat::Csv {
                if *draws != 1 {
                    return Err(Error::Usage(
                        "--format csv emits one empirical shape; use --draws 1".into(),
                    ));
                }
                let lambda = match measure {
                    MeasureFlag::Uniform => {
                        sample_uniform_exact(&target, &report.dual, &mut rng, *max_tries)?
                            .partition
                    }
                    MeasureFlag::Mu => sample_mu(&report.dual, &mut rng),
                };
                let n = natural_scale(&target)?.round().max(1.0) as u64;
                let points = crate::sampler::linear_grid(grid.0, grid.1, grid.2)?;
                let curve = empirical_shape(&lambda, n, &points)?;
                return Ok((curve.to_csv(), EXIT_OK));
            }
            let mut samples = Vec::with_capacity(*draws);
            for _ in 0..*draws {
                match measure {
                    MeasureFlag::Uniform => {
                        let s =
                            sample_uniform_exact(&target, &report.dual, &mut rng, *max_tries)?;
                        let mut entry = Map::new();
                        entry.insert("partition".into(), partition_json(&s.partition));
                        entry.insert("tries".into(), Value::from(s.tries));
                        samples.push(Value::Object(entry));
                    }
                    MeasureFlag::Mu => {
                        let lambda = sample_mu(&report.dual, &mut rng);
                        let mut entry = Map::new();
                        entry.insert(
                            "profile".into(),
                            profile_json(&profile_of(&lambda, set)),
                        );
                        entry.insert("partition".into(), partition_json(&lambda));
                        samples.push(Value::Object(entry));
                    }
                }
            }
            let mut map = Map::new();
            map.insert("powers".into(), powers_json(set));
            map.insert("profile".into(), profile_json(&target));
            map.insert("seed".into(), Value::from(*seed));
            map.insert(
                "measure".into(),
                Value::String(
                    match measure {
                        MeasureFlag::Uniform => "uniform",
                        MeasureFlag::Mu => "mu",
                    }
                    .into(),
                ),
            );
            map.insert("samples".into(), Value::Array(samples));
            Ok((body(Value::Object(map)), EXIT_OK))
        }

        Command::Shape {
            set,
            beta,
            alpha,
            grid,
        } => {
            let dual = match (beta, alpha) {
                (Some(b), None) => DualVector::new(set.clone(), b.clone())?,
                (None, Some(a)) => {
                    let target = MomentVector::new(set.clone(), a.clone())?;
                    let report = solve_beta(&target, &SolveOptions::default())?;
                    if !report.converged {
                        return Err(Error::NoConvergence {
                            iterations: report.iterations,
                            residual: report.residual,
                        });
                    }
                    report.beta
                }
                _ => unreachable!("validated at parse time"),
            };
            let points = crate::sampler::linear_grid(grid.0, grid.1, grid.2)?;
            let curve = limit_shape(&dual, &points)?;
            match config.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => Ok((curve.to_csv(), EXIT_OK)),
                OutputFormat::Json => {
                    let mut map = Map::new();
                    map.insert("powers".into(), powers_json(set));
                    map.insert("beta".into(), keyed_floats(set, dual.values()));
                    map.insert("t".into(), curve_json(&curve, true));
                    map.insert("phi".into(), curve_json(&curve, false));
                    Ok((body(Value::Object(map)), EXIT_OK))
                }
            }
        }

        Command::Qj { set, degree_cap } => {
            let lattice = enumerate_qj(set, *degree_cap)?;
            let mut polys = Vec::new();
            for p in lattice.polys() {
                let mut map = Map::new();
                for (&j, s) in set.powers().iter().zip(p.coeff_strings()) {
                    map.insert(j.to_string(), Value::String(s));
                }
                polys.push(Value::Object(map));
            }
            let mut map = Map::new();
            map.insert("powers".into(), powers_json(set));
            map.insert("degree_cap".into(), Value::from(*degree_cap));
            map.insert("cardinality".into(), Value::from(lattice.cardinality()));
            map.insert("polynomials".into(), Value::Array(polys));
            Ok((body(Value::Object(map)), EXIT_OK))
        }

        Command::Validate { criteria } => {
            let reports = run_suite(criteria.as_deref());
            let all_passed = reports.iter().all(|r| r.passed);
            match config.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Json => {
                    let items: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            let mut m = Map::new();
                            m.insert("id".into(), Value::from(r.id));
                            m.insert("name".into(), Value::String(r.name.into()));
                            m.insert("passed".into(), Value::Bool(r.passed));
                            m.insert("details".into(), Value::String(r.details.clone()));
                            m.insert("seconds".into(), num(r.seconds));
                            Value::Object(m)
                        })
                        .collect();
                    let mut map = Map::new();
                    map.insert("criteria".into(), Value::Array(items));
                    map.insert("all_passed".into(), Value::Bool(all_passed));
                    Ok((
                        body(Value::Object(map)),
                        if all_passed { EXIT_OK } else { EXIT_INTERNAL },
                    ))
                }
                OutputFormat::Csv => {
                    // Human table (the default for validate).
                    let mut out = String::new();
                    for r in &reports {
                        out.push_str(&r.line());
                        out.push('\n');
                    }
                    out.push_str(&format!(
                        "{}/{} criteria passed\n",
                        reports.iter().filter(|r| r.passed).count(),
                        reports.len()
                    ));
                    Ok((out, if all_passed { EXIT_OK } else { EXIT_INTERNAL }))
                }
            }
        }
    }
}

fn curve_json(curve: &ShapeCurve, grid: bool) -> Value {
    let slice = if grid { curve.grid() } else { curve.values() };
    Value::Array(slice.iter().map(|&x| num(x)).collect())
}

/// Entry point for the binary: parse, validate, execute, write, exit.
pub fn main_entry() -> ! {
    let args = match CliArgs::try_parse() {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(EXIT_OK);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(EXIT_USAGE);
                }
            }
        }
    };
    let config = match RunConfig::try_from(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_USAGE);
        }
    };
    let outcome = execute(&config);
    if !outcome.stdout.is_empty() {
        match &config.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &outcome.stdout) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(EXIT_INTERNAL);
                }
            }
            None => print!("{}", outcome.stdout),
        }
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    std::process::exit(outcome.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_from(line: &[&str]) -> RunConfig {
        let args = CliArgs::try_parse_from(line).expect("parse");
        RunConfig::try_from(args).expect("validate")
    }

    #[test]
    fn estimate_json_contains_growth_constants() {
        let config = config_from(&["mep", "estimate", "-J", "1", "-a", "1", "-n", "100"]);
        let outcome = execute(&config);
        assert_eq!(outcome.code, EXIT_OK, "{}", outcome.stderr);
        let v: Value = serde_json::from_str(&outcome.stdout).unwrap();
        let m = v["M"].as_f64().unwrap();
        assert!((m - 2.5650996).abs() < 1e-6, "M = {m}");
        assert_eq!(v["b"].as_f64().unwrap(), 1.0);
        let c = v["c"].as_f64().unwrap();
        assert!((c - 0.1443376).abs() < 1e-6, "c = {c}");
        assert!(v["leading"]["estimate"].as_f64().unwrap() > 0.0);
        assert!(v["refined"]["estimate"].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn count_reports_parity_infeasibility() {
        let config = config_from(&["mep", "count", "-J", "1,2", "-N", "3,4"]);
        let outcome = execute(&config);
        assert_eq!(outcome.code, EXIT_INFEASIBLE);
        let v: Value = serde_json::from_str(&outcome.stdout).unwrap();
        assert_eq!(v["count"], Value::String("0".into()));
        assert_eq!(v["feasible"], Value::Bool(false));
    }

    #[test]
    fn count_positive_case() {
        let config = config_from(&["mep", "count", "-J", "1,2", "-N", "4,10"]);
        let outcome = execute(&config);
        assert_eq!(outcome.code, EXIT_OK);
        let v: Value = serde_json::from_str(&outcome.stdout).unwrap();
        assert_eq!(v["count"], Value::String("1".into()));
        assert_eq!(v["feasible"], Value::Bool(true));
    }

    #[test]
    fn shape_csv_has_header_and_rows() {
        let config = config_from(&[
            "mep", "shape", "-J", "1,2,3", "-b", "4.0,-8.5,4.6", "--grid", "0.1:2:5",
        ]);
        let outcome = execute(&config);
        assert_eq!(outcome.code, EXIT_OK);
        let mut lines = outcome.stdout.lines();
        assert_eq!(lines.next(), Some("t,phi"));
        assert_eq!(lines.count(), 5);
    }

    #[test]
    fn sampling_is_reproducible_byte_for_byte() {
        let line = &[
            "mep", "sample", "-J", "1", "-N", "20", "--draws", "3", "--seed", "42",
        ];
        let a = execute(&config_from(line));
        let b = execute(&config_from(line));
        assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
        let c = execute(&config_from(&[
            "mep", "sample", "-J", "1", "-N", "20", "--draws", "3", "--seed", "43",
        ]));
        assert_ne!(a.stdout, c.stdout);
    }

    #[test]
    fn qj_lists_the_parity_polynomial() {
        let config = config_from(&["mep", "qj", "-J", "1,2"]);
        let outcome = execute(&config);
        assert_eq!(outcome.code, EXIT_OK);
        let v: Value = serde_json::from_str(&outcome.stdout).unwrap();
        assert_eq!(v["cardinality"], Value::from(2));
        let polys = v["polynomials"].as_array().unwrap();
        assert!(polys.contains(&serde_json::json!({"1": "1/2", "2": "1/2"})));
    }

    #[test]
    fn usage_errors_are_usage_coded() {
        let args = CliArgs::try_parse_from(["mep", "solve", "-J", "1,2", "-a", "1"]).unwrap();
        match RunConfig::try_from(args) {
            Err(e) => assert_eq!(exit_code_for(&e), EXIT_USAGE),
            Ok(_) => panic!("length mismatch must fail"),
        }
        let args =
            CliArgs::try_parse_from(["mep", "shape", "-J", "1", "-b", "1", "-a", "1"]).unwrap();
        assert!(RunConfig::try_from(args).is_err());
    }

    #[test]
    fn infeasible_estimate_exits_three_with_null_log() {
        let config = config_from(&[
            "mep", "estimate", "-J", "1,2", "-a", "1,1", "-n", "7", "--mode", "refined",
        ]);
        let outcome = execute(&config);
        assert_eq!(outcome.code, EXIT_INFEASIBLE);
        let v: Value = serde_json::from_str(&outcome.stdout).unwrap();
        assert_eq!(v["feasible"], Value::Bool(false));
        assert_eq!(v["refined"]["log_estimate"], Value::Null);
        assert_eq!(v["refined"]["estimate"].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn forward_inverts_solve() {
        let solve = execute(&config_from(&["mep", "solve", "-J", "1,2", "-a", "1.0,1.1"]));
        assert_eq!(solve.code, EXIT_OK, "{}", solve.stderr);
        let v: Value = serde_json::from_str(&solve.stdout).unwrap();
        let b1 = v["beta"]["1"].as_f64().unwrap();
        let b2 = v["beta"]["2"].as_f64().unwrap();
        let fwd = execute(&config_from(&[
            "mep",
            "forward",
            "-J",
            "1,2",
            "-b",
            &format!("{b1},{b2}"),
        ]));
        assert_eq!(fwd.code, EXIT_OK);
        let w: Value = serde_json::from_str(&fwd.stdout).unwrap();
        assert!((w["alpha"]["1"].as_f64().unwrap() - 1.0).abs() < 1e-6);
        assert!((w["alpha"]["2"].as_f64().unwrap() - 1.1).abs() < 1e-6);
    }
}
