//! Power-law fits of the coarsening observables at k=50, for a few sizes.
//!
//! `cargo run --release --example coarsening -- [runs]`

use naming_rgg::analysis::predict_scaling;
use naming_rgg::experiment::{run_ensemble, ExperimentConfig};

fn main() -> naming_rgg::Result<()> {
    let mut cfg = ExperimentConfig::preset("fig3")?;
    if let Some(runs) = std::env::args().nth(1) {
        cfg.set("run.runs", &runs)?;
    }
    let pred = predict_scaling(0.4, 2)?;
    println!(
        "predicted slopes: N_w/N-1 {:.3}  N_d/N {:.3}  1-S {:.3}",
        pred.nw_slope(),
        pred.nd_slope(),
        pred.failure_slope()
    );
    let sizes = cfg.sweep.as_ref().map(|s| s.values.clone()).unwrap_or_default();
    for n in sizes {
        cfg.set("topology.n", &n.to_string())?;
        let report = run_ensemble(&cfg)?;
        let show = |f: &Option<naming_rgg::analysis::FitResult>| f.as_ref().map_or(f64::NAN, |f| f.exponent);
        println!(
            "n={n:<6} t_c={:.2}  N_w/N-1 {:.3}  N_d/N {:.3}  1-S {:.3}",
            report.summary.mean_tc,
            show(&report.fits.nw),
            show(&report.fits.nd),
            show(&report.fits.failure)
        );
    }
    Ok(())
}
