use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use valcalc_core::monomial::{dxi_trace, valuation_ideal};
use valcalc_core::positivity::{seshadri, waldschmidt, Invariant, Route};
use valcalc_core::surface::{dxi, volume};
use valcalc_core::{format_rational, parse_rational, Basis, MonomialIdeal, WeightVector};

use valcalc::error::CliError;
use valcalc::io::{read_json, to_json, IdealDoc, SurfaceInput, Q};
use valcalc::verify::{Status, Suite};
use valcalc::{closure_options_from_env, grid, scan, verify};

#[derive(Parser)]
#[command(name = "valcalc", version, about = "Exact local positivity invariants of valuations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Limit,
    Model,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvariantArg {
    Eps,
    Omega,
    /// The coefficient along the ray (1, 0).
    Dxi,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Monomial,
    Surface,
    Positivity,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of D_ξ, from monomial weights or a surface valuation.
    Dxi {
        #[arg(long, required_unless_present = "cluster", conflicts_with = "cluster")]
        weights: Option<String>,
        #[arg(long)]
        cluster: Option<PathBuf>,
    },
    /// Generators of the valuation ideal a_m of a monomial valuation.
    Ideal {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        m: String,
    },
    /// Log-canonical threshold of a monomial ideal.
    Lct {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Volume 1/Σv_i² of a surface valuation.
    Volume {
        #[arg(long)]
        cluster: PathBuf,
    },
    /// Seshadri constant of H at the monomial valuation w on the plane.
    Seshadri {
        #[arg(long)]
        weights: String,
        #[arg(long, value_enum, default_value = "both")]
        via: Via,
    },
    /// Asymptotic order of vanishing of H along the monomial valuation w.
    Waldschmidt {
        #[arg(long)]
        weights: String,
        #[arg(long)]
        deg_cap: u64,
    },
    /// Evaluate an invariant on a grid; writes CSV and `<out>.summary.json`.
    Scan {
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum)]
        invariant: InvariantArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite and print one JSON certificate per line.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Serialize)]
struct RayValue {
    ray: Vec<u64>,
    value: String,
}

#[derive(Serialize)]
struct MonomialDxi {
    weights: String,
    coefficients: Vec<RayValue>,
}

#[derive(Serialize)]
struct SurfaceDxi {
    values: Vec<Q>,
    volume: Q,
    total_transform: Vec<Q>,
    prime: Vec<Q>,
}

fn weights(s: &str) -> Result<WeightVector, CliError> {
    WeightVector::parse(s).map_err(|e| CliError::Parse(format!("--weights: {e}")))
}

fn qs(v: Vec<valcalc_core::Rational>) -> Vec<Q> {
    v.into_iter().map(Q).collect()
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Dxi { weights: Some(w), .. } => {
            let w = weights(&w)?;
            let c = w.len();
            let mut rays: Vec<Vec<u64>> =
                (0..c).map(|i| (0..c).map(|k| u64::from(i == k)).collect()).collect();
            if c > 1 {
                rays.push(vec![1; c]);
            }
            let coefficients = rays
                .into_iter()
                .map(|ray| Ok(RayValue { value: dxi_trace(&w, &ray)?.to_string(), ray }))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(to_json(&MonomialDxi { weights: w.to_string(), coefficients }))
        }
        Command::Dxi { cluster: Some(path), .. } => {
            let v = read_json::<SurfaceInput>(&path)?.to_valuation()?;
            let d = dxi(&v).exceptional;
            Ok(to_json(&SurfaceDxi {
                values: qs(v.values().as_slice().to_vec()),
                volume: Q(volume(&v)),
                total_transform: qs(d.coeffs_in(Basis::TotalTransform)),
                prime: qs(d.coeffs_in(Basis::Prime)),
            }))
        }
        Command::Dxi { .. } => Err(CliError::Parse("one of --weights or --cluster is required".into())),
        Command::Ideal { weights: w, m } => {
            let m = parse_rational(&m).map_err(|e| CliError::Parse(format!("--m: {e}")))?;
            let a: MonomialIdeal = valuation_ideal(&weights(&w)?, &m)?;
            let doc = IdealDoc::from_ideal(&a);
            Ok(format!("{}\n", serde_json::to_string(&doc).expect("plain arrays serialize")))
        }
        Command::Lct { ideal } => {
            let a = read_json::<IdealDoc>(&ideal)?.to_ideal()?;
            Ok(format!("{}\n", format_rational(&valcalc_core::monomial::lct(&a)?)))
        }
        Command::Volume { cluster } => {
            let v = read_json::<SurfaceInput>(&cluster)?.to_valuation()?;
            Ok(format!("{}\n", format_rational(&volume(&v))))
        }
        Command::Seshadri { weights: w, via } => {
            let w = weights(&w)?;
            // the limit route needs positive weights; boundary points use the model alone
            let route = match via {
                Via::Model => Route::Model,
                Via::Limit => Route::Limit,
                Via::Both if w.is_positive_finite() => Route::Both,
                Via::Both => Route::Model,
            };
            let report = seshadri(&w, route)?;
            if report.disagreement() {
                let limit = report.limit.as_ref().map(|l| format_rational(&l.value));
                let model = report.model.as_ref().map(format_rational);
                return Err(CliError::Failed(format!(
                    "routes disagree: model {}, limit {}",
                    model.unwrap_or_default(),
                    limit.unwrap_or_default()
                )));
            }
            Ok(format!("{}\n", format_rational(report.value())))
        }
        Command::Waldschmidt { weights: w, deg_cap } => {
            if deg_cap == 0 {
                return Err(CliError::Parse("--deg-cap must be positive".into()));
            }
            let report = waldschmidt(&weights(&w)?, deg_cap)?;
            Ok(format!("{}\n", format_rational(&report.value)))
        }
        Command::Scan { grid: spec, invariant, out } => {
            let g = grid::parse(&spec)?;
            let inv = match invariant {
                InvariantArg::Eps => Invariant::Epsilon,
                InvariantArg::Omega => Invariant::Omega,
                InvariantArg::Dxi => Invariant::Dxi(0),
            };
            let report = scan::run(&g, &spec, inv, &out)?;
            Ok(format!("{} rows written to {}\n", report.rows.len(), out.display()))
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Monomial => Suite::Monomial,
                SuiteArg::Surface => Suite::Surface,
                SuiteArg::Positivity => Suite::Positivity,
            };
            let certs = verify::run(suite, closure_options_from_env()?)?;
            let mut out = String::new();
            for c in &certs {
                out.push_str(&serde_json::to_string(c).expect("certificates serialize"));
                out.push('\n');
            }
            let count = |s: Status| certs.iter().filter(|c| c.status == s).count();
            let failed = count(Status::Fail);
            eprintln!(
                "{} certificates: {} EXACT_PASS, {} BOUND_PASS, {} FAIL",
                certs.len(),
                count(Status::ExactPass),
                count(Status::BoundPass),
                failed
            );
            if failed > 0 {
                print!("{out}");
                return Err(CliError::Failed(format!("{failed} certificates failed")));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("valcalc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
