//! Command-line driver behind the `graphdyn` binary.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::backward::{
    alpha_estimate, default_tail_fraction, steer_branch, SteeringPlan, Strategy, DEFAULT_DWELL, DEFAULT_LOOKAHEAD,
    RECURRENCE_PERIOD_BOUND,
};
use crate::builtins;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::orbits::{epsilon_net_ordered, omega_estimate, Certificate, PeriodicOrbit};
use crate::plmap::PlMap;
use crate::rational::{self, Q};
use crate::report::{self, Report};
use crate::structure::{entropy, is_mixing, is_transitive, markov_partition, spectral_radius};
use crate::suites::{self, Suite, SuiteConfig};
use crate::topograph::{GraphPoint, PointSet};

#[derive(Debug, Parser)]
#[command(name = "graphdyn", version, about = "Exact dynamics of piecewise-linear graph maps")]
pub struct Cli {
    /// Omit the wall-clock field so reports are byte-reproducible.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Builtin map, e.g. `tent` or `cantor_bumps:3`.
    #[arg(long, conflicts_with = "map")]
    pub builtin: Option<String>,
    /// Map-spec JSON file (a builtin name is also accepted).
    #[arg(long)]
    pub map: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    GreedyNearest,
    GreedyWithLookahead,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward orbit, ω-limit estimate and periodicity of a point.
    Analyze {
        #[command(flatten)]
        map: MapArgs,
        /// Point as `edge:p/q`.
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value = "1/256")]
        epsilon: String,
        /// Defaults to half of `--iters`.
        #[arg(long)]
        burn_in: Option<usize>,
        /// Defaults to `--iters` minus the burn-in.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Steer a backward branch toward a target set.
    Steer {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        start: String,
        /// Target the exact periodic orbit of this point.
        #[arg(long, group = "target")]
        target_orbit: Option<String>,
        /// Target the ω-limit estimate of this point.
        #[arg(long, group = "target")]
        target_omega: Option<String>,
        /// Target an explicit comma-separated point list.
        #[arg(long, group = "target")]
        target_set: Option<String>,
        #[arg(long, default_value_t = 60)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_DWELL)]
        dwell: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::GreedyWithLookahead)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_LOOKAHEAD)]
        lookahead: usize,
        #[arg(long, default_value = "1/256")]
        epsilon: String,
        /// Burn-in for `--target-omega`.
        #[arg(long, default_value_t = 200)]
        burn_in: usize,
        /// Samples for `--target-omega`.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Branch export file (JSON); a CSV sidecar is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Markov partition, transition matrix, entropy and mixing.
    Entropy {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = suites::MARKOV_DEPTH)]
        depth: usize,
    },
    /// Run a verification suite.
    Verify {
        /// One of mixing, zero-entropy, figure2, chain.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        map: MapArgs,
        /// Number of random cases.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Loads `--builtin` or `--map` (file path first, then builtin name).
pub fn load_map(args: &MapArgs) -> Result<PlMap> {
    match (&args.builtin, &args.map) {
        (Some(b), _) => builtins::builtin(b),
        (None, Some(m)) => {
            let path = Path::new(m);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{m}: {e}")))?;
                PlMap::from_json(&text)
            } else {
                builtins::builtin(m).map_err(|_| Error::Parse(format!("{m:?} is neither a map file nor a builtin")))
            }
        }
        (None, None) => Err(Error::Parse("a map is required: --builtin NAME or --map FILE".into())),
    }
}

fn parse_positive(text: &str, what: &str) -> Result<Q> {
    let x = rational::parse(text)?;
    if x <= rational::zero() {
        return Err(Error::Domain(format!("{what} must be positive, got {text}")));
    }
    Ok(x)
}

fn parse_point_list(f: &PlMap, text: &str) -> Result<Vec<GraphPoint>> {
    let pts: Vec<GraphPoint> = text.split(',').map(|s| f.parse_point(s.trim())).collect::<Result<_>>()?;
    if pts.is_empty() {
        return Err(Error::Parse("empty target set".into()));
    }
    Ok(pts)
}

/// Runs a parsed command; `argv` is echoed into the report.
pub fn execute(cli: &Cli, argv: Vec<String>) -> Result<Report> {
    let started = Instant::now();
    let limits = Limits::from_env()?;
    let mut report = match &cli.command {
        Command::Analyze { map, point, iters, epsilon, burn_in, samples } => {
            let f = load_map(map)?;
            let g = f.graph();
            let x = f.parse_point(point)?;
            let eps = parse_positive(epsilon, "epsilon")?;
            let burn = burn_in.unwrap_or(iters / 2);
            let samples = samples.unwrap_or(iters.saturating_sub(burn).max(1));
            let orbit = f.iterate(&x, *iters)?;
            let omega = omega_estimate(&f, &x, burn, samples, &eps)?;
            let periodic = PeriodicOrbit::from_point(&f, &x, (*iters).max(1), Certificate::ExactSolve);
            let results = json!({
                "point": report::point(g, &x),
                "orbit": report::points(g, &orbit),
                "omega_estimate": report::estimate(g, &omega),
                "omega_invariant": omega.is_exactly_invariant(&f),
                "periodic": periodic.as_ref().map(|o| report::orbit(g, o)),
                "fixed_point": periodic.as_ref().is_some_and(|o| o.period == 1),
            });
            Report::new(argv, Some(&f), results)
        }
        Command::Steer {
            map,
            start,
            target_orbit,
            target_omega,
            target_set,
            depth,
            dwell,
            strategy,
            lookahead,
            epsilon,
            burn_in,
            samples,
            out,
        } => {
            let f = load_map(map)?;
            let g = f.graph();
            let x = f.parse_point(start)?;
            let eps = parse_positive(epsilon, "epsilon")?;
            let (kind, waypoints) = match (target_orbit, target_omega, target_set) {
                (Some(p), _, _) => {
                    let z = f.parse_point(p)?;
                    let orbit = PeriodicOrbit::from_point(&f, &z, RECURRENCE_PERIOD_BOUND, Certificate::ExactSolve)
                        .ok_or_else(|| {
                            Error::Domain(format!("{p} is not periodic with period <= {RECURRENCE_PERIOD_BOUND}"))
                        })?;
                    let start = orbit.cycle.iter().position(|c| *c == g.normalize_unchecked(&z)).unwrap_or(0);
                    let mut cycle = orbit.cycle.clone();
                    cycle.rotate_left(start);
                    ("orbit", cycle)
                }
                (None, Some(p), _) => {
                    let z = f.parse_point(p)?;
                    let head = f.iterate_n(&z, *burn_in);
                    let tail = f.iterate(&head, (*samples).max(1))?;
                    ("omega", epsilon_net_ordered(g, &tail, &eps))
                }
                (None, None, Some(s)) => ("set", parse_point_list(&f, s)?),
                _ => {
                    return Err(Error::Parse(
                        "a target is required: --target-orbit, --target-omega or --target-set".into(),
                    ))
                }
            };
            let strategy = match strategy {
                StrategyArg::GreedyNearest => Strategy::GreedyNearest,
                StrategyArg::GreedyWithLookahead => Strategy::GreedyWithLookahead(*lookahead),
            };
            let plan = SteeringPlan::new(waypoints.clone(), *dwell, strategy)?;
            let branch = steer_branch(&f, &x, &plan, *depth)?;
            let alpha = alpha_estimate(&f, &branch, &default_tail_fraction(), &eps)?;
            let target = PointSet::new(g, waypoints)?;
            let d = g.hausdorff(&alpha.points, &target)?;
            if let Some(path) = out {
                let export = serde_json::to_string_pretty(&report::branch_export(&f, &branch, Some(&plan)))
                    .expect("export serializes");
                write_file(path, &(export + "\n"))?;
                write_file(&path.with_extension("csv"), &branch.to_csv(g))?;
            }
            let results = json!({
                "start": report::point(g, &x),
                "target": {"kind": kind, "points": report::points(g, &target)},
                "plan": report::plan(g, &plan),
                "branch": report::branch_summary(&f, &branch),
                "dead_end": branch.dead_end.is_some(),
                "alpha_estimate": report::estimate(g, &alpha),
                "hausdorff_to_target": report::rat(&d),
                "hausdorff_to_target_approx": rational::to_f64(&d),
                "export": out.as_ref().map(|p| p.display().to_string()),
            });
            Report::new(argv, Some(&f), results)
        }
        Command::Entropy { map, depth } => {
            let f = load_map(map)?;
            let mp = markov_partition(&f, *depth)?;
            let h = entropy(&mp.matrix)?;
            let rho = spectral_radius(&mp.matrix)?;
            let results = json!({
                "partition": report::partition(f.graph(), &mp),
                "markov_verified": mp.verify(&f),
                "entropy": h,
                "spectral_radius": {"lower": rho.lower, "upper": rho.upper, "iterations": rho.iterations},
                "transitive": is_transitive(&mp.matrix),
                "mixing": is_mixing(&mp.matrix),
            });
            Report::new(argv, Some(&f), results)
        }
        Command::Verify { suite, map, budget, seed } => {
            let suite = Suite::parse(suite)?;
            let cfg = SuiteConfig { budget: *budget, seed: *seed, limits };
            if suite == Suite::Chain && map.builtin.is_none() && map.map.is_none() {
                let rep = suites::chain_default(&cfg)?;
                Report::new(argv, None, serde_json::to_value(&rep).expect("suite report serializes"))
            } else {
                let f = if map.builtin.is_none() && map.map.is_none() {
                    builtins::builtin(suite.default_map())?
                } else {
                    load_map(map)?
                };
                let rep = suites::run(suite, &f, &cfg)?;
                Report::new(argv, Some(&f), serde_json::to_value(&rep).expect("suite report serializes"))
            }
        }
    };
    if !cli.no_timestamp {
        report.wall_clock_ms = Some(started.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}

/// Parses `args` (without the program name), runs, and returns the report
/// text and the process exit code. Errors go to the returned string with
/// code 1, 2 or 3.
pub fn main_with_args(args: Vec<String>) -> (String, String, i32) {
    let cli = match Cli::try_parse_from(std::iter::once("graphdyn".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (text, String::new(), 0) } else { (String::new(), text, 1) };
        }
    };
    match execute(&cli, args) {
        Ok(r) => (r.to_json(), String::new(), 0),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (String, String, i32) {
        main_with_args(args.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn analyze_period_two() {
        let (out, _, code) =
            run(&["--no-timestamp", "analyze", "--builtin", "tent", "--point", "e0:2/5", "--iters", "100"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["omega_estimate"]["points"], json!(["e0:2/5", "e0:4/5"]));
        assert!(v.get("wall_clock_ms").is_none());
    }

    #[test]
    fn analyze_fixed_point() {
        let (out, _, code) = run(&["analyze", "--builtin", "tent", "--point", "e0:2/3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["fixed_point"], json!(true));
        assert!(v.get("wall_clock_ms").is_some());
    }

    #[test]
    fn bad_rational_exits_one() {
        let (_, err, code) = run(&["analyze", "--builtin", "tent", "--point", "e0:1/0"]);
        assert_eq!(code, 1);
        assert!(err.contains("error"));
    }

    #[test]
    fn missing_map_and_bad_flags_exit_one() {
        assert_eq!(run(&["analyze", "--point", "e0:1/2"]).2, 1);
        assert_eq!(run(&["frobnicate"]).2, 1);
        assert_eq!(run(&["verify", "--suite", "nope"]).2, 1);
    }

    #[test]
    fn entropy_of_edge_swap() {
        let (out, _, code) = run(&["entropy", "--builtin", "edge_swap"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["entropy"], json!(0.0));
        assert_eq!(v["results"]["mixing"], json!(false));
    }

    #[test]
    fn steer_fixed_point_to_itself() {
        let (out, _, code) =
            run(&["steer", "--builtin", "tent", "--start", "e0:2/3", "--target-set", "e0:2/3", "--depth", "10"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["hausdorff_to_target"], json!("0/1"));
    }

    #[test]
    fn steer_requires_periodic_orbit_target() {
        let (_, _, code) = run(&["steer", "--builtin", "tent", "--start", "e0:1/2", "--target-orbit", "e0:2/7"]);
        assert_eq!(code, 0);
        let (_, err, code) = run(&["steer", "--builtin", "figure2", "--start", "e0:1/2", "--target-orbit", "e0:1/3"]);
        assert_eq!(code, 1, "{err}");
    }

    #[test]
    fn not_markov_exits_one() {
        let (_, err, code) = run(&["entropy", "--builtin", "tent", "--depth", "0"]);
        assert_eq!(code, 1, "{err}");
        assert!(err.contains("not Markov"));
    }
}
