//! Command-line front end: `ngsim <gen-graph|run|ensemble|sweep|presets>`.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use naming_rgg::analysis::FitResult;
use naming_rgg::experiment::{self, ExperimentConfig};
use naming_rgg::observables::aggregate;
use naming_rgg::topology::write_edge_list;
use naming_rgg::Error;

#[derive(Parser)]
#[command(name = "ngsim", version, about = "Naming Game on random geometric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one graph and write it as an edge list.
    GenGraph(Common),
    /// Run one realization; writes the time series and any snapshots.
    Run(Common),
    /// Run an ensemble of independent realizations.
    Ensemble(Common),
    /// Run an ensemble per sweep value and fit t_c against it.
    Sweep(Common),
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
struct Common {
    /// Start from a built-in preset.
    #[arg(long)]
    preset: Option<String>,
    /// key=value config file, applied after the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set topology.n=2048`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory.
    #[arg(long, short)]
    out: PathBuf,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.preset {
            Some(name) => ExperimentConfig::preset(name)?,
            None => ExperimentConfig::default(),
        };
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)?;
            cfg.apply_text(&text)?;
        }
        for kv in &self.overrides {
            let (k, v) =
                kv.split_once('=').ok_or_else(|| Error::Config(format!("override `{kv}` is not key=value")))?;
            cfg.set(k, v)?;
        }
        if let Some(seed) = self.seed {
            cfg.master_seed = seed;
        }
        if let Some(runs) = self.runs {
            cfg.runs = runs;
        }
        if let Some(workers) = self.workers {
            cfg.workers = workers;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, Error> {
    fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn describe_fit(label: &str, fit: Option<&FitResult>) -> String {
    match fit {
        Some(f) => format!(
            "{label}: exponent={} amplitude={} window=[{},{}] r2={} points={}",
            f.exponent, f.amplitude, f.window.0, f.window.1, f.r_squared, f.point_count
        ),
        None => format!("{label}: no fit (fewer than two usable points)"),
    }
}

fn gen_graph(args: &Common) -> Result<(), Error> {
    let cfg = args.config()?;
    let report = experiment::gen_graph(&cfg)?;
    let mut out = create(&args.out, "graph.txt")?;
    write_edge_list(&report.graph, &mut out)?;
    out.flush()?;
    println!("{}", report.describe());
    Ok(())
}

fn run_one(args: &Common) -> Result<(), Error> {
    let cfg = args.config()?;
    let single = experiment::run_single(&cfg)?;
    let series = aggregate(std::slice::from_ref(&single.series))?;
    let mut out = create(&args.out, "series.csv")?;
    experiment::write_ensemble_csv(&series, &mut out)?;
    out.flush()?;
    for (i, snap) in single.snapshots.iter().enumerate() {
        let mut out = create(&args.out, &format!("snapshot_{i}.csv"))?;
        experiment::write_snapshot(snap, &mut out)?;
        out.flush()?;
        println!("snapshot t={} distinct_words={}", snap.requested_t, snap.distinct_words());
    }
    match single.t_c {
        Some(t_c) => {
            println!("t_c={t_c}");
            Ok(())
        }
        None => Err(Error::NotConverged { max_time: cfg.max_time }),
    }
}

fn ensemble(args: &Common) -> Result<(), Error> {
    let cfg = args.config()?;
    let report = experiment::run_ensemble(&cfg)?;
    let mut out = create(&args.out, "ensemble.csv")?;
    experiment::write_ensemble_csv(&report.series, &mut out)?;
    out.flush()?;
    let mut out = create(&args.out, "summary.csv")?;
    experiment::write_summary(&report.summary, &mut out)?;
    out.flush()?;
    let fits = [
        describe_fit("nw/n-1", report.fits.nw.as_ref()),
        describe_fit("nd/n", report.fits.nd.as_ref()),
        describe_fit("1-s", report.fits.failure.as_ref()),
    ]
    .join("\n");
    fs::write(args.out.join("fits.txt"), format!("{fits}\n"))?;
    println!("{}", experiment::SUMMARY_HEADER);
    println!("{}", experiment::summary_line(&report.summary));
    println!("{fits}");
    if report.summary.unconverged > 0 {
        return Err(Error::NotConverged { max_time: cfg.max_time });
    }
    Ok(())
}

fn sweep(args: &Common) -> Result<(), Error> {
    let cfg = args.config()?;
    let report = experiment::run_sweep(&cfg)?;
    let table = experiment::sweep_table(&report);
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("sweep.csv"), &table)?;
    for (i, row) in report.rows.iter().enumerate() {
        let mut out = create(&args.out, &format!("ensemble_{i}.csv"))?;
        experiment::write_ensemble_csv(&row.series, &mut out)?;
        out.flush()?;
    }
    let fits = format!(
        "{}\n{}\n",
        describe_fit("mean_tc", report.tc_fit.as_ref()),
        describe_fit("std_tc", report.std_fit.as_ref())
    );
    fs::write(args.out.join("fits.txt"), &fits)?;
    print!("{table}{fits}");
    if report.rows.iter().any(|r| r.summary.unconverged > 0) {
        return Err(Error::NotConverged { max_time: cfg.max_time });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::GenGraph(a) => gen_graph(a),
        Command::Run(a) => run_one(a),
        Command::Ensemble(a) => ensemble(a),
        Command::Sweep(a) => sweep(a),
        Command::Presets => {
            for (name, text) in experiment::PRESETS {
                println!("[{name}]\n{text}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ngsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
