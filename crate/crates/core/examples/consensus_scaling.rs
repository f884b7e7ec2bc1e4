//! Mean and spread of the consensus time against system size at k=50.
//!
//! `cargo run --release --example consensus_scaling -- [runs]`

use naming_rgg::experiment::{run_sweep, sweep_table, ExperimentConfig};

fn main() -> naming_rgg::Result<()> {
    let mut cfg = ExperimentConfig::preset("fig4")?;
    cfg.set("run.runs", &std::env::args().nth(1).unwrap_or_else(|| "50".into()))?;
    let report = run_sweep(&cfg)?;
    print!("{}", sweep_table(&report));
    if let Some(f) = &report.tc_fit {
        println!("t_c ~ N^{:.3} (r2 {:.4})", f.exponent, f.r_squared);
    }
    if let Some(f) = &report.std_fit {
        println!("dt_c ~ N^{:.3}", f.exponent);
    }
    Ok(())
}
