//! Shortcut-driven speedup: t_c against shortcut density at fixed N, and
//! against N at fixed density next to the pure RGG.
//!
//! `cargo run --release --example small_world -- [runs]`

use naming_rgg::analysis::predict_crossover;
use naming_rgg::experiment::{run_sweep, ExperimentConfig};

fn main() -> naming_rgg::Result<()> {
    let runs = std::env::args().nth(1).unwrap_or_else(|| "30".into());

    let mut by_p = ExperimentConfig::preset("fig5")?;
    by_p.set("run.runs", &runs)?;
    let report = run_sweep(&by_p)?;
    println!("{:>8} {:>10} {:>10} {:>6}", "p", "t_c", "t_x", "onset");
    for row in &report.rows {
        let t_x = predict_crossover(row.value, 0.4, 2).unwrap_or(f64::NAN);
        println!("{:>8} {:>10.2} {:>10.2} {:>6}", row.value, row.summary.mean_tc, t_x, row.sw_onset);
    }
    if let Some(f) = &report.tc_fit {
        println!("t_c ~ p^{:.3} over [{}, {}]", f.exponent, f.window.0, f.window.1);
    }

    for preset in ["fig6", "fig6-pure"] {
        let mut cfg = ExperimentConfig::preset(preset)?;
        cfg.set("run.runs", &runs)?;
        let report = run_sweep(&cfg)?;
        let tcs: Vec<String> = report.rows.iter().map(|r| format!("{:.1}", r.summary.mean_tc)).collect();
        let exp = report.tc_fit.map_or(f64::NAN, |f| f.exponent);
        println!("{preset:<10} t_c = [{}]  ~ N^{exp:.3}", tcs.join(", "));
    }
    Ok(())
}
