//! Pairwise Naming Game on complete graphs and periodic square lattices.
//!
//! `cargo run --release --example pairwise_baselines -- [runs]`

use naming_rgg::experiment::{run_sweep, ExperimentConfig};

fn main() -> naming_rgg::Result<()> {
    let runs = std::env::args().nth(1).unwrap_or_else(|| "20".into());
    for preset in ["fc-pairwise", "lattice-pairwise"] {
        let mut cfg = ExperimentConfig::preset(preset)?;
        cfg.set("run.runs", &runs)?;
        let report = run_sweep(&cfg)?;
        println!("[{preset}]");
        for row in &report.rows {
            println!("  n={:<6} t_c={:.2} +- {:.2}", row.value, row.summary.mean_tc, row.summary.std_tc);
        }
        if let Some(f) = &report.tc_fit {
            println!("  t_c ~ N^{:.3}", f.exponent);
        }
    }
    Ok(())
}
