//! `symmkit` command line: grid-file rearrangements, property checks, and
//! the experiments.
//!
//! Exit status is 0 on success, 1 when a checked property fails, and 2 on
//! usage, input or output errors.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use symmkit::chord::chord_move_gridset;
use symmkit::experiments::{build_gallery, converge, GalleryConfig, Strategy};
use symmkit::geometry::io::{load_function, load_json, load_set, save_function, save_json, save_set};
use symmkit::harness::{
    check_equimeasurable, check_lp_contracting, check_modulus_reducing, check_monotonic, check_setmap_properties,
    classify_rearrangement, CheckConfig, PropertyReport,
};
use symmkit::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "symmkit", version, about = "Polarization, symmetrization and chord-movement maps on grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polarize a grid function in an oriented hyperplane.
    Polarize {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        plane: Plane,
    },
    /// Steiner symmetrize a grid function along an axis.
    Steiner {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        axis: usize,
    },
    /// Schwarz symmetrize a grid function about an axis.
    Schwarz {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        axis: usize,
    },
    /// Move the columns of a grid set along an axis by a contraction.
    Chordmap {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        axis: usize,
        /// JSON file `{"breakpoints": [[t, phi], ...]}`.
        #[arg(long)]
        contraction: PathBuf,
    },
    /// Run the property battery and classification on a transformer.
    Verify {
        /// JSON map description; polarization in the `--normal` plane by default.
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        plane: Plane,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Iterate random polarizations toward the Steiner symmetral.
    Converge {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        axis: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV trace output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON trace output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Reproduce the counterexample gallery.
    Gallery {
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InOut {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct Plane {
    /// Comma-separated normal, e.g. `1,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
    normal: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    offset: f64,
    /// Side the normal points into: `+` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    positive: String,
}

impl Plane {
    fn hyperplane(&self) -> Result<OrientedHyperplane> {
        OrientedHyperplane::new(self.normal.clone(), self.offset, parse_orientation(&self.positive)?)
    }

    fn map_config(&self) -> MapConfig {
        MapConfig {
            normal: Some(self.normal.clone()),
            offset: self.offset,
            positive: self.positive.clone(),
            ..MapConfig::named("polarize")
        }
    }
}

enum Outcome {
    Done,
    PropertyFailed(String),
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match symmkit::parallel::init_thread_pool().and_then(|()| run(cli.command)) {
        Ok(Outcome::Done) => EXIT_OK,
        Ok(Outcome::PropertyFailed(msg)) => {
            eprintln!("symmkit: {msg}");
            EXIT_PROPERTY
        }
        Err(e) => {
            eprintln!("symmkit: {e}");
            EXIT_USAGE
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Polarize { io, plane } => {
            let f = load_function(&io.input)?;
            save_function(&io.out, &polarize(&f, &plane.hyperplane()?)?)?;
        }
        Command::Steiner { io, axis } => {
            let f = load_function(&io.input)?;
            save_function(&io.out, &steiner_symmetrize_function(&f, Axis(axis))?)?;
        }
        Command::Schwarz { io, axis } => {
            let f = load_function(&io.input)?;
            save_function(&io.out, &schwarz_symmetrize_function(&f, Axis(axis))?)?;
        }
        Command::Chordmap { io, axis, contraction } => {
            let phi: PLContraction = load_json(&contraction)?;
            let a = load_set(&io.input)?;
            save_set(&io.out, &chord_move_gridset(&a, &phi, Axis(axis))?)?;
        }
        Command::Verify { map, plane, trials, seed, report } => {
            let cfg = match map {
                Some(path) => load_json(&path)?,
                None => plane.map_config(),
            };
            return verify(&cfg, trials, seed, report.as_deref());
        }
        Command::Converge { input, axis, iters, seed, out, report } => {
            let f = load_function(&input)?;
            let trace = converge(&f, Axis(axis), &Strategy::RandomParallel, iters, seed)?;
            if let Some(path) = out {
                trace.save_csv(path)?;
            }
            if let Some(path) = report {
                save_json(path, &trace)?;
            }
            println!("initial L1 {} final L1 {} after {iters} steps", trace.initial_l1, trace.final_l1());
        }
        Command::Gallery { trials, seed, report } => {
            let cfg = GalleryConfig { trials, seed };
            let gallery = build_gallery(&cfg);
            if let Some(path) = report {
                save_json(path, &gallery)?;
            }
            for row in gallery.summary() {
                println!("{:<26} {:?} {}", row.example, row.status, if row.matches { "ok" } else { "MISMATCH" });
            }
            if !gallery.all_match {
                let err = SymmError::GalleryMismatch(gallery.mismatches().join(", "));
                return Ok(Outcome::PropertyFailed(err.to_string()));
            }
        }
    }
    Ok(Outcome::Done)
}

fn verify(map: &MapConfig, trials: usize, seed: u64, report: Option<&Path>) -> Result<Outcome> {
    let t: Arc<dyn FunctionMap> = map.function_map()?;
    let cfg = CheckConfig::new(trials, seed);
    let mut functions: Vec<PropertyReport> = vec![check_equimeasurable(&*t, &cfg), check_monotonic(&*t, &cfg)];
    for p in [1.0, 2.0, f64::INFINITY] {
        functions.push(check_lp_contracting(&*t, p, &cfg));
    }
    functions.push(check_modulus_reducing(&*t, &cfg));
    let set_map = map.set_map().unwrap_or_else(|_| SetMap::Induced(t.clone()));
    let sets = check_setmap_properties(&set_map, &CheckConfig::sets(trials, seed));
    let h = map.hyperplane().ok();
    let classification = match classify_rearrangement(t.clone(), h.as_ref(), &cfg) {
        Ok(r) => json!(r),
        Err(SymmError::NotARearrangement(why)) => json!({ "classification": null, "note": why }),
        Err(e) => return Err(e),
    };

    let failed: Vec<String> =
        functions.iter().chain(&sets).filter(|r| r.fails()).map(|r| r.property.name().to_string()).collect();
    for r in functions.iter().chain(&sets) {
        println!("{:<32} {:?}", r.property.name(), r.verdict);
    }
    if let Some(path) = report {
        let doc = json!({
            "map": t.name(),
            "trials": trials,
            "seed": seed,
            "function_properties": functions,
            "set_properties": sets,
            "classification": classification,
        });
        save_json(path, &doc)?;
    }
    Ok(if failed.is_empty() {
        Outcome::Done
    } else {
        Outcome::PropertyFailed(format!("{} fails {}", t.name(), failed.join(", ")))
    })
}
