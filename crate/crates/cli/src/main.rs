//! `fuzzynav`: validate rule files and run navigation scenarios.
//!
//! Exit codes: 0 reached/valid, 1 timeout/invalid rule content, 2 usage or
//! file error, 3 collision.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fuzzynav_core::control::{OAFLC_SOURCE, TFLC_SOURCE};
use fuzzynav_core::dsl;
use fuzzynav_core::runner::{load_scenario, RunError, ScenarioFile};
use fuzzynav_core::{
    run, Navigator, ScenarioConfig, ScenarioOutcome, TrajectoryRecord, Verdict, World,
};
use rayon::prelude::*;

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COLLISION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fuzzynav",
    version,
    about = "Fuzzy-logic robot navigation simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate `.fis` rule files.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run one scenario and print its outcome.
    Run {
        scenario: PathBuf,
        /// Trajectory CSV destination.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run every `.scn` file in a directory.
    Batch {
        dir: PathBuf,
        outdir: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Args, Clone)]
struct Overrides {
    /// Tracking controller rule file (default: shipped).
    #[arg(long)]
    tflc: Option<PathBuf>,
    /// Obstacle-avoidance controller rule file (default: shipped).
    #[arg(long)]
    oaflc: Option<PathBuf>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long = "max-time")]
    max_time: Option<f64>,
    /// Fusion distances as `<d_low>,<d_high>`.
    #[arg(long, value_parser = parse_pair)]
    fusion: Option<(f64, f64)>,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected <d_low>,<d_high>")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

impl Overrides {
    fn navigator(&self) -> Result<Navigator, String> {
        let read = |path: &Option<PathBuf>, shipped: &'static str| match path {
            Some(p) => fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
            None => Ok(shipped.to_string()),
        };
        let tflc = read(&self.tflc, TFLC_SOURCE)?;
        let oaflc = read(&self.oaflc, OAFLC_SOURCE)?;
        Navigator::from_sources(&tflc, &oaflc).map_err(|e| format!("rule files: {e}"))
    }

    fn apply(&self, mut file: ScenarioFile, world: World) -> Result<ScenarioConfig, String> {
        if let Some(dt) = self.dt {
            file.dt = dt;
        }
        if let Some(t) = self.max_time {
            file.max_time = t;
        }
        if let Some(f) = self.fusion {
            file.fusion = f;
        }
        file.into_config(world).map_err(|e| e.to_string())
    }

    fn config(&self, scenario: &Path) -> Result<ScenarioConfig, String> {
        let (file, world) = load_scenario(scenario).map_err(|e| match e {
            // These already name the offending file.
            RunError::Io(..) | RunError::World(..) => e.to_string(),
            _ => format!("{}: {e}", scenario.display()),
        })?;
        self.apply(file, world)
            .map_err(|e| format!("{}: {e}", scenario.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check { files } => check(&files),
        Command::Run {
            scenario,
            out,
            overrides,
        } => run_one(&scenario, out.as_deref(), &overrides),
        Command::Batch {
            dir,
            outdir,
            overrides,
        } => batch(&dir, &outdir, &overrides),
    };
    ExitCode::from(code)
}

fn check(files: &[PathBuf]) -> u8 {
    let mut code = EXIT_OK;
    for path in files {
        let source = match fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                code = EXIT_USAGE;
                continue;
            }
        };
        let name = path.display().to_string();
        match dsl::parse_document(&name, &source).and_then(|doc| doc.build()) {
            Ok(fis) => println!(
                "{name}: ok, {} inputs, {} outputs, {} rules",
                fis.inputs().len(),
                fis.outputs().len(),
                fis.rules().len()
            ),
            Err(e) => {
                eprintln!("{name}:{e}");
                code = code.max(EXIT_FAILED);
            }
        }
    }
    code
}

fn exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Reached => EXIT_OK,
        Verdict::Timeout => EXIT_FAILED,
        Verdict::Collision => EXIT_COLLISION,
    }
}

fn summary_line(o: &ScenarioOutcome) -> String {
    format!(
        "verdict={} time={:.2}s path={:.3}m clearance={:.3}m",
        o.verdict, o.elapsed, o.path_length, o.min_clearance
    )
}

fn write_csv(record: &TrajectoryRecord, path: &Path) -> Result<(), String> {
    let fail = |e: std::io::Error| format!("{}: {e}", path.display());
    let mut sink = BufWriter::new(fs::File::create(path).map_err(fail)?);
    record.write_csv(&mut sink).map_err(fail)?;
    sink.flush().map_err(fail)
}

fn run_one(scenario: &Path, out: Option<&Path>, overrides: &Overrides) -> u8 {
    let prepared = overrides
        .navigator()
        .and_then(|nav| Ok((nav, overrides.config(scenario)?)));
    let (nav, config) = match prepared {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    let (record, outcome) = match run(&config, &nav) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}: {e}", scenario.display());
            return EXIT_USAGE;
        }
    };
    if let Some(path) = out {
        if let Err(e) = write_csv(&record, path) {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    }
    println!("{}", summary_line(&outcome));
    exit_code(outcome.verdict)
}

fn batch(dir: &Path, outdir: &Path, overrides: &Overrides) -> u8 {
    let nav = match overrides.navigator() {
        Ok(n) => n,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    let mut scenarios: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "scn"))
            .collect(),
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            return EXIT_USAGE;
        }
    };
    if scenarios.is_empty() {
        eprintln!("{}: no .scn files", dir.display());
        return EXIT_USAGE;
    }
    scenarios.sort();
    if let Err(e) = fs::create_dir_all(outdir) {
        eprintln!("{}: {e}", outdir.display());
        return EXIT_USAGE;
    }

    let results: Vec<(String, Result<ScenarioOutcome, String>)> = scenarios
        .par_iter()
        .map(|path| {
            let name = path
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            let result = overrides.config(path).and_then(|config| {
                let (record, outcome) =
                    run(&config, &nav).map_err(|e| format!("{}: {e}", path.display()))?;
                write_csv(&record, &outdir.join(format!("{name}.csv")))?;
                Ok(outcome)
            });
            (name, result)
        })
        .collect();

    let mut summary = String::from("name,verdict,time,path_length,min_clearance\n");
    let mut code = EXIT_OK;
    for (name, result) in &results {
        match result {
            Ok(o) => {
                let _ = writeln!(
                    summary,
                    "{name},{},{},{},{}",
                    o.verdict, o.elapsed, o.path_length, o.min_clearance
                );
                println!("{name}: {}", summary_line(o));
                if o.verdict != Verdict::Reached && code == EXIT_OK {
                    code = EXIT_FAILED;
                }
            }
            Err(e) => {
                let _ = writeln!(summary, "{name},Error,,,");
                eprintln!("{e}");
                code = EXIT_USAGE;
            }
        }
    }
    let summary_path = outdir.join("summary.csv");
    if let Err(e) = fs::write(&summary_path, summary) {
        eprintln!("{}: {e}", summary_path.display());
        return EXIT_USAGE;
    }
    code
}
