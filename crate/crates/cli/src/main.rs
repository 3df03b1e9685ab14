use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heisot::geodesic::{dilation_ray, linear_interpolation, right_translation_curve};
use heisot::json::{parse_config, parse_horizontal, parse_line, parse_measure, parse_plane_map, parse_radon_sample};
use heisot::lifting::{certify_lift, lift_map};
use heisot::radon::{project_measure, reconstruct, reconstruct_from_samples};
use heisot::rigidity::{s_plus_minus_sets, step4_certificate};
use heisot::suite::{run_suite, SuiteConfig};
use heisot::{export_curve, solve_wp, verify_map_optimality, DiscreteMeasure, Error, ExportFormat, GroundCost};

#[derive(Parser)]
#[command(name = "heisot", version, about = "Exact optimal transport on the Heisenberg group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print W_p between two measures.
    Dist(PairArgs),
    /// Print an optimal plan with its cost, distance and support.
    Plan(PairArgs),
    /// Compare the cost of a map against the optimal plan from μ to its image.
    MapCheck(MapCheckArgs),
    /// Sample a geodesic curve to CSV or JSON.
    Geodesic {
        #[command(subcommand)]
        kind: GeodesicCommand,
    },
    /// Vertical-line projections and reconstruction from them.
    Radon {
        #[command(subcommand)]
        action: RadonCommand,
    },
    /// Lift a plane map and compare plane and Heisenberg optimality gaps.
    Lift {
        #[command(subcommand)]
        action: LiftCommand,
    },
    /// Certificates for the two-point rigidity constructions.
    Rigidity {
        #[command(subcommand)]
        action: RigidityCommand,
    },
    /// Run seeded property suites. Exits with 1 if any property fails.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Use the Euclidean metric on the (x, y) plane instead.
    #[arg(long)]
    plane: bool,
    source: PathBuf,
    target: PathBuf,
}

#[derive(Args)]
struct MapCheckArgs {
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    measure: PathBuf,
    /// Right translation by t·U (t defaults to 1), with U given as comma-separated u…,v….
    #[arg(long, conflicts_with_all = ["dilate", "lift"])]
    translate: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Horizontal dilation by λ.
    #[arg(long, conflicts_with = "lift")]
    dilate: Option<f64>,
    /// Lift of a plane lookup map read from this file.
    #[arg(long)]
    lift: Option<PathBuf>,
}

#[derive(Args)]
struct CurveOutput {
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t1: Option<f64>,
    #[arg(long, default_value_t = 11)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum GeodesicCommand {
    RightTranslation {
        measure: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        output: CurveOutput,
    },
    DilationRay {
        measure: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        output: CurveOutput,
    },
    LinearW1 {
        source: PathBuf,
        target: PathBuf,
        #[command(flatten)]
        output: CurveOutput,
    },
}

#[derive(Subcommand)]
enum RadonCommand {
    /// Project a measure onto a vertical line.
    Project {
        measure: PathBuf,
        #[arg(long)]
        line: PathBuf,
    },
    /// Recover a measure from a directory of samples or by querying a known source.
    Reconstruct {
        /// Directory of `*.json` samples, one `{"line","projection"}` per file.
        #[arg(long, conflicts_with = "source", required_unless_present = "source")]
        oracle_dir: Option<PathBuf>,
        /// Answer projection queries from this measure.
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_atoms: usize,
        #[arg(long, env = "HEISOT_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum LiftCommand {
    Certify {
        measure: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
}

#[derive(Subcommand)]
enum RigidityCommand {
    Step4 {
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
    },
    Splusminus {
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, env = "HEISOT_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Flat key=value configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` overrides, e.g. `tol.gap=1e-7`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

fn measure(path: &Path) -> Result<DiscreteMeasure, Error> {
    parse_measure(&read(path)?)
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn emit_curve(curve: heisot::geodesic::GeodesicCurve, output: &CurveOutput) -> Result<String, Error> {
    let (a, b) = curve.sampling_window();
    let t0 = output.t0.unwrap_or(a);
    let t1 = output.t1.unwrap_or(b);
    let format = match output.format {
        Format::Csv => ExportFormat::Csv,
        Format::Json => ExportFormat::Json,
    };
    let text = export_curve(&curve, t0, t1, output.steps, format)?;
    match &output.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Output text and whether every check passed.
fn run(command: Command) -> Result<(String, bool), Error> {
    let text = match command {
        Command::Dist(args) => {
            let ground = if args.plane {
                GroundCost::EuclideanPlane
            } else {
                GroundCost::Heisenberg
            };
            let result = solve_wp(&measure(&args.source)?, &measure(&args.target)?, args.p, ground)?;
            format!("{}", result.distance)
        }
        Command::Plan(args) => {
            let ground = if args.plane {
                GroundCost::EuclideanPlane
            } else {
                GroundCost::Heisenberg
            };
            solve_wp(&measure(&args.source)?, &measure(&args.target)?, args.p, ground)?.to_json()
        }
        Command::MapCheck(args) => {
            let mu = measure(&args.measure)?;
            let report = if let Some(u) = &args.translate {
                let u = parse_horizontal(u)?;
                let t = args.t.unwrap_or(1.0);
                verify_map_optimality(&mu, |q| q.right_translate_horizontal(&u, t), args.p)?
            } else if let Some(lambda) = args.dilate {
                verify_map_optimality(&mu, |q| q.horizontal_dilation(lambda), args.p)?
            } else if let Some(path) = &args.lift {
                let lifted = lift_map(parse_plane_map(&read(path)?)?);
                verify_map_optimality(&mu, |q| lifted.apply(q), args.p)?
            } else {
                return Err(Error::Usage("map-check needs --translate, --dilate or --lift".into()));
            };
            json(&report)?
        }
        Command::Geodesic { kind } => match kind {
            GeodesicCommand::RightTranslation {
                measure: m,
                u,
                p,
                output,
            } => emit_curve(
                right_translation_curve(&measure(&m)?, &parse_horizontal(&u)?, p)?,
                &output,
            )?,
            GeodesicCommand::DilationRay { measure: m, p, output } => {
                emit_curve(dilation_ray(&measure(&m)?, p)?, &output)?
            }
            GeodesicCommand::LinearW1 { source, target, output } => {
                emit_curve(linear_interpolation(&measure(&source)?, &measure(&target)?)?, &output)?
            }
        },
        Command::Radon { action } => match action {
            RadonCommand::Project { measure: m, line } => {
                let sample = project_measure(&measure(&m)?, &parse_line(&read(&line)?)?)?;
                json(&sample)?
            }
            RadonCommand::Reconstruct {
                oracle_dir: Some(dir), ..
            } => {
                let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                    .map_err(|e| Error::Usage(format!("{}: {e}", dir.display())))?
                    .filter_map(|entry| entry.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|e| e == "json"))
                    .collect();
                paths.sort();
                let samples = paths
                    .iter()
                    .map(|p| parse_radon_sample(&read(p)?))
                    .collect::<Result<Vec<_>, _>>()?;
                reconstruct_from_samples(&samples)?.to_json()
            }
            RadonCommand::Reconstruct {
                source,
                max_atoms,
                seed,
                ..
            } => {
                let path = source.ok_or_else(|| Error::Usage("reconstruct needs --oracle-dir or --source".into()))?;
                let mu = measure(&path)?;
                reconstruct(|l| Ok(project_measure(&mu, l)?.projected), mu.dim(), max_atoms, seed)?.to_json()
            }
        },
        Command::Lift {
            action: LiftCommand::Certify { measure: m, map, p },
        } => json(&certify_lift(&measure(&m)?, &parse_plane_map(&read(&map)?)?, p)?)?,
        Command::Rigidity { action } => match action {
            RigidityCommand::Step4 { alpha } => json(&step4_certificate(alpha)?)?,
            RigidityCommand::Splusminus { r } => json(&s_plus_minus_sets(r)?)?,
        },
        Command::Verify(args) => {
            let mut config = match &args.config {
                Some(path) => parse_config(&read(path)?)?,
                None => SuiteConfig::default(),
            };
            for pair in &args.overrides {
                let (key, value) = pair
                    .split_once('=')
                    .ok_or_else(|| Error::Usage(format!("override `{pair}` is not key=value")))?;
                config.set(key.trim(), value.trim())?;
            }
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            if let Some(trials) = args.trials {
                config.trials = trials;
            }
            let report = run_suite(&config, &args.suite)?;
            for p in &report.properties {
                eprintln!(
                    "{} {} ({} checks, max deviation {:e})",
                    if p.pass { "PASS" } else { "FAIL" },
                    p.name,
                    p.checks,
                    p.max_deviation
                );
            }
            return Ok((report.to_json(), report.pass));
        }
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, pass)) => {
            // A closed pipe downstream is not an error of ours.
            if !text.is_empty() {
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
