//! Ensemble averages of total words, distinct words and success rate on an
//! RGG with k=12.
//!
//! `cargo run --release --example observables -- [runs]`

use naming_rgg::experiment::{run_ensemble, write_ensemble_csv, ExperimentConfig};

fn main() -> naming_rgg::Result<()> {
    let mut cfg = ExperimentConfig::preset("fig2")?;
    if let Some(runs) = std::env::args().nth(1) {
        cfg.set("run.runs", &runs)?;
    }
    let report = run_ensemble(&cfg)?;
    let n = report.summary.n as f64;

    println!("{:>10} {:>10} {:>10} {:>8}", "t", "N_w/N", "N_d", "S");
    for p in report.series.points.iter().step_by(5) {
        let s = p.s.map_or(f64::NAN, |s| s.mean);
        println!("{:>10.3} {:>10.4} {:>10.2} {:>8.4}", p.t, p.n_w.mean / n, p.n_d.mean, s);
    }
    let peak = report.series.points.iter().max_by(|a, b| a.n_w.mean.total_cmp(&b.n_w.mean)).expect("non-empty series");
    println!("N_w peak {:.1} at t={:.3}", peak.n_w.mean, peak.t);
    println!("mean t_c {:.2} +- {:.2}", report.summary.mean_tc, report.summary.std_tc);

    let mut out = std::io::sink();
    write_ensemble_csv(&report.series, &mut out)?;
    Ok(())
}
