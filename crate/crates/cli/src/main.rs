use clap::{Args, Parser, Subcommand};
use repvar_core::braid::{parse_braid, BraidWord};
use repvar_core::chern::chern_report;
use repvar_core::hessian::hessian_report;
use repvar_core::invariants::{
    alexander, compare_khovanov, determinant, read_khovanov_ranks, two_bridge_prediction,
    KhovanovComparison, TwoBridgePrediction,
};
use repvar_core::table::{KnotTable, BUILTIN_KHOVANOV_RANKS};
use repvar_core::variety::{analyze, variety_rank, SolverConfig, VarietyReport, SCHEMA_VERSION};
use repvar_core::verify::{run_suite, Suite};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

mod table;

#[derive(Parser, Debug)]
#[command(
    name = "repvar",
    version,
    about = "Trace-free SU(2) representation varieties of braid closures"
)]
struct Cli {
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table instead of JSON.
    #[arg(long, global = true, env = "REPVAR_TABLE")]
    table: bool,
    /// Directory receiving one JSON record per invocation.
    #[arg(long, global = true, env = "REPVAR_RUN_DIR")]
    run_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct Knot {
    /// Name from the built-in knot table, e.g. 3_1 or 9_42.
    #[arg(long)]
    name: Option<String>,
    /// Braid word such as "3: 1 -2 1 -2".
    #[arg(long)]
    braid: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct SolverFlags {
    #[arg(long, env = "REPVAR_SEED", default_value_t = 1)]
    seed: u64,
    /// Bound on the squared residual of accepted solutions.
    #[arg(long, env = "REPVAR_TOL", default_value_t = 1e-12)]
    tol: f64,
    /// Number of random restarts.
    #[arg(long, env = "REPVAR_SEEDS", default_value_t = 400)]
    seeds: usize,
    #[arg(long, env = "REPVAR_LINK_RADIUS", default_value_t = 0.15)]
    link_radius: f64,
    #[arg(long, env = "REPVAR_MAX_ITERS", default_value_t = 400)]
    max_iters: usize,
    #[arg(long, env = "REPVAR_PCA_THRESHOLD", default_value_t = 1e-3)]
    pca_threshold: f64,
    #[arg(long, env = "REPVAR_SAMPLES", default_value_t = 48)]
    samples_per_component: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve for the fixed-point set and report its components.
    Variety {
        #[command(flatten)]
        knot: Knot,
        #[command(flatten)]
        solver: SolverFlags,
        /// CSV of "name,rank" Khovanov ranks; defaults to the bundled file.
        #[arg(long, env = "REPVAR_KHOVANOV_CSV")]
        khovanov_csv: Option<PathBuf>,
    },
    /// Run a verification suite: symplectic, lagrangian, hessian, chern, monotone or all.
    Verify {
        suite: String,
        #[arg(long, env = "REPVAR_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Alexander polynomial, determinant and the two-bridge prediction.
    Invariants {
        #[command(flatten)]
        knot: Knot,
    },
    /// Hessian at the singular stratum and its Pfaffian data.
    Hessian {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Winding of the section determinant and the Chern pairing.
    Chern {
        #[arg(long, default_value_t = repvar_core::chern::DEFAULT_SAMPLES)]
        samples: usize,
    },
}

#[derive(Serialize)]
struct RunRecord {
    schema_version: u32,
    command: String,
    config: Value,
    timestamp: u64,
    pass: bool,
    result: Value,
}

struct Outcome {
    config: Value,
    result: Value,
    pass: bool,
    table: String,
}

#[derive(Serialize)]
struct VarietyOutput {
    name: Option<String>,
    #[serde(flatten)]
    report: VarietyReport,
    variety_rank: Option<u64>,
    determinant: Option<u64>,
    two_bridge_prediction: Option<TwoBridgePrediction>,
    khovanov: Option<KhovanovComparison>,
}

fn resolve(knot: &Knot) -> Result<(Option<String>, BraidWord), String> {
    match (&knot.name, &knot.braid) {
        (Some(n), _) => {
            let t = KnotTable::builtin();
            let e = t.get(n).map_err(|e| e.to_string())?;
            Ok((Some(n.clone()), e.word.clone()))
        }
        (None, Some(b)) => Ok((None, parse_braid(b).map_err(|e| e.to_string())?)),
        (None, None) => Err("one of --name or --braid is required".into()),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_variety(knot: &Knot, s: &SolverFlags, csv: &Option<PathBuf>) -> Result<Outcome, String> {
    let (name, word) = resolve(knot)?;
    let cfg = SolverConfig {
        seeds: s.seeds,
        rng_seed: s.seed,
        descent_tol: s.tol,
        max_iters: s.max_iters,
        link_radius: s.link_radius,
        pca_threshold: s.pca_threshold,
        samples_per_component: s.samples_per_component,
    };
    let report = analyze(&word, &cfg).map_err(|e| e.to_string())?;
    let ranks: BTreeMap<String, u64> = match csv {
        Some(p) => {
            let f = File::open(p).map_err(|e| format!("{}: {e}", p.display()))?;
            read_khovanov_ranks(f).map_err(|e| e.to_string())?
        }
        None => {
            read_khovanov_ranks(BUILTIN_KHOVANOV_RANKS.as_bytes()).map_err(|e| e.to_string())?
        }
    };
    let rank = variety_rank(&report.components);
    let det = determinant(&word).ok();
    let khovanov = match (&name, rank) {
        (Some(n), Some(r)) if ranks.contains_key(n) => Some(compare_khovanov(n, r, &ranks)),
        _ => None,
    };
    let out = VarietyOutput {
        name: name.clone(),
        variety_rank: rank,
        determinant: det,
        two_bridge_prediction: det.and_then(|d| two_bridge_prediction(d).ok()),
        khovanov,
        report,
    };
    let table = table::variety(&out.report, name.as_deref(), rank, out.khovanov.as_ref());
    Ok(Outcome {
        config: json!({ "braid": word.to_string(), "name": name, "solver": cfg }),
        result: to_value(&out),
        pass: true,
        table,
    })
}

fn cmd_invariants(knot: &Knot) -> Result<Outcome, String> {
    let (name, word) = resolve(knot)?;
    let a = alexander(&word).map_err(|e| e.to_string())?;
    let d = determinant(&word).map_err(|e| e.to_string())?;
    let p = two_bridge_prediction(d).map_err(|e| e.to_string())?;
    let table = format!(
        "braid        {word}\nalexander    {a}\ndeterminant  {d}\npredicted    {} components (1 S2 + {} RP3), rank {}\n",
        p.components, p.rp3, p.cohomology_rank
    );
    Ok(Outcome {
        config: json!({ "braid": word.to_string(), "name": name }),
        result: json!({
            "alexander": a.to_string(),
            "alexander_coefficients": a.coeffs,
            "determinant": d,
            "two_bridge_prediction": p,
        }),
        pass: true,
        table,
    })
}

fn run(cli: &Cli) -> Result<(String, Outcome), String> {
    Ok(match &cli.command {
        Command::Variety { knot, solver, khovanov_csv } => {
            ("variety".into(), cmd_variety(knot, solver, khovanov_csv)?)
        }
        Command::Invariants { knot } => ("invariants".into(), cmd_invariants(knot)?),
        Command::Verify { suite, seed } => {
            let s: Suite =
                suite.parse().map_err(|e: repvar_core::verify::UnknownSuite| e.to_string())?;
            let card = run_suite(s, *seed);
            let table = table::scorecard(&card);
            (
                "verify".into(),
                Outcome {
                    config: json!({ "suite": s, "seed": seed }),
                    pass: card.pass,
                    result: to_value(&card),
                    table,
                },
            )
        }
        Command::Hessian { n } => {
            let r = hessian_report(*n).map_err(|e| e.to_string())?;
            let table = table::hessian(&r);
            (
                "hessian".into(),
                Outcome { config: json!({ "n": n }), pass: r.pass, result: to_value(&r), table },
            )
        }
        Command::Chern { samples } => {
            let r = chern_report(*samples).map_err(|e| e.to_string())?;
            let table = table::chern(&r);
            (
                "chern".into(),
                Outcome {
                    config: json!({ "samples": samples }),
                    pass: r.pass,
                    result: to_value(&r),
                    table,
                },
            )
        }
    })
}

fn persist(dir: &PathBuf, rec: &RunRecord) -> Result<PathBuf, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
    let path = dir.join(format!("{}-{nanos}.json", rec.command));
    let text = serde_json::to_string_pretty(rec).expect("serializable");
    std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, out) = match run(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rec = RunRecord {
        schema_version: SCHEMA_VERSION,
        command,
        config: out.config,
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        pass: out.pass,
        result: out.result,
    };
    if let Some(dir) = &cli.run_dir {
        if let Err(e) = persist(dir, &rec) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if cli.table && !cli.json {
        print!("{}", out.table);
    } else {
        println!("{}", serde_json::to_string_pretty(&rec).expect("serializable"));
    }
    if rec.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
