//! Coarsening predictions for a few exponents and dimensions, the small-world
//! crossover time, and the onset check.

use naming_rgg::analysis::{predict_crossover, predict_scaling, sw_onset_check};

fn main() -> naming_rgg::Result<()> {
    println!("{:>6} {:>3} {:>8} {:>8} {:>8} {:>8}", "gamma", "d", "N_d", "N_w", "1-S", "t_c");
    for (gamma, d) in [(0.5, 1), (0.5, 2), (0.4, 2), (0.4, 3)] {
        let p = predict_scaling(gamma, d)?;
        println!(
            "{gamma:>6} {d:>3} {:>8.3} {:>8.3} {:>8.3} {:>8.3}",
            p.nd_slope(),
            p.nw_slope(),
            p.failure_slope(),
            p.tc_exponent()
        );
    }
    for p in [0.001, 0.01, 0.05, 0.1] {
        let t_x = predict_crossover(p, 0.4, 2)?;
        println!("p={p:<6} t_x={t_x:>10.2}  onset at N=2048: {}", sw_onset_check(2048, p));
    }
    Ok(())
}
