use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

mod commands;
mod scenario;

use scenario::{ConstantsSource, InvalidScenario, Scenario, SweepSpec, CONSTANTS_ENV};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "qgl", version, about = "Deterministic scenario runner for quantum geometric limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Event-count bounds for the scenario's solid.
    Bounds(Args),
    /// Radar geometry, four-volume and world-sheet of the solid.
    Region(Args),
    /// Orthogonality times of the scenario's quantum clocks.
    Clock(Args),
    /// Deficit angles and curvature sums of simplicial complexes.
    Regge(Args),
    /// Planck-scale cosmology estimates.
    Cosmo(Args),
}

#[derive(clap::Args)]
struct Args {
    #[arg(long, value_name = "PATH")]
    scenario: PathBuf,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "PARAM:LO:HI:STEPS")]
    sweep: Option<String>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Bounds(_) => "bounds",
            Command::Region(_) => "region",
            Command::Clock(_) => "clock",
            Command::Regge(_) => "regge",
            Command::Cosmo(_) => "cosmo",
        }
    }

    fn args(&self) -> &Args {
        match self {
            Command::Bounds(a)
            | Command::Region(a)
            | Command::Clock(a)
            | Command::Regge(a)
            | Command::Cosmo(a) => a,
        }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    schema_version: u32,
    command: &'static str,
    scenario: &'a Scenario,
    constants: qgl_core::PhysicalConstants,
    constants_source: ConstantsSource,
    results: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepSummary>,
    diagnostics: Vec<String>,
}

#[derive(Serialize)]
struct SweepSummary {
    csv: String,
    rows: usize,
    monotonicity: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvalidScenario>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn run(command: &Command) -> Result<Vec<PathBuf>> {
    let args = command.args();
    let path = args.scenario.as_path();
    let mut scenario = scenario::load(path)?;
    if let Some(seed) = args.seed {
        scenario.seed = Some(seed);
    }
    if let Some(text) = &args.sweep {
        scenario.sweep = Some(SweepSpec::parse(text)?);
    }
    let env_file = std::env::var_os(CONSTANTS_ENV).map(PathBuf::from);
    let (k, source) = scenario::resolve_constants(&scenario, env_file.as_deref())?;
    let base = path.parent().unwrap_or(Path::new("."));

    let out_dir = match (&args.out, scenario.output.as_ref().and_then(|o| o.dir.clone())) {
        (Some(dir), _) => dir.clone(),
        (None, Some(dir)) => base.join(dir),
        (None, None) => PathBuf::from("qgl-out"),
    };

    let name = command.name();
    let needs_seed = matches!(command, Command::Bounds(_) | Command::Region(_));
    let seed = if needs_seed { scenario::seed(&scenario)? } else { scenario.seed.unwrap_or(0) };

    // Sweep validation happens before any heavy computation.
    let sweep_table = match &scenario.sweep {
        Some(spec) => Some(commands::sweep(name, &scenario, k, seed, spec)?),
        None => None,
    };

    let mut diagnostics = Vec::new();
    let mut extra_files: Vec<(String, Vec<u8>)> = Vec::new();
    let results = match command {
        Command::Bounds(_) => serde_json::to_value(commands::bounds(&scenario, k, seed, &mut diagnostics)?)?,
        Command::Region(_) => {
            let mut r = commands::region(&scenario, k, seed, &mut diagnostics)?;
            if let Some(csv) = r.axis_csv.take() {
                extra_files.push((format!("{}.axis.csv", scenario.name), csv));
            }
            serde_json::to_value(r)?
        }
        Command::Clock(_) => serde_json::to_value(commands::clock(&scenario, k, &mut diagnostics)?)?,
        Command::Regge(_) => serde_json::to_value(commands::regge(&scenario, base)?)?,
        Command::Cosmo(_) => serde_json::to_value(commands::cosmo(&scenario, k)?)?,
    };

    fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut written = Vec::new();

    let sweep = match sweep_table {
        Some(table) => {
            let file = format!("{}.{name}.csv", scenario.name);
            let monotonicity = commands::monotonicity(&table);
            let p = out_dir.join(&file);
            fs::write(&p, render_csv(&table, &monotonicity)?)
                .with_context(|| format!("writing {}", p.display()))?;
            written.push(p);
            Some(SweepSummary {
                csv: file,
                rows: table.rows.len(),
                monotonicity,
            })
        }
        None => None,
    };
    for (file, bytes) in extra_files {
        let p = out_dir.join(file);
        fs::write(&p, bytes).with_context(|| format!("writing {}", p.display()))?;
        written.push(p);
    }

    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: name,
        scenario: &scenario,
        constants: k,
        constants_source: source,
        results,
        sweep,
        diagnostics,
    };
    let p = out_dir.join(format!("{}.{name}.json", scenario.name));
    let mut json = serde_json::to_vec_pretty(&report)?;
    json.push(b'\n');
    fs::write(&p, json).with_context(|| format!("writing {}", p.display()))?;
    written.insert(0, p);
    Ok(written)
}

fn render_csv(table: &commands::Table, footer: &[String]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|x| format!("{x:e}")))?;
    }
    let mut bytes = w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?;
    for line in footer {
        bytes.extend_from_slice(b"# ");
        bytes.extend_from_slice(line.as_bytes());
        bytes.push(b'\n');
    }
    Ok(bytes)
}
