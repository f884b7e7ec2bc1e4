mod common;

use naming_rgg::dynamics::{run, InteractionMode};
use naming_rgg::experiment::{run_ensemble, ExperimentConfig};
use naming_rgg::observables::*;
use naming_rgg::seed::realization_rng;
use naming_rgg::topology::*;

fn rgg(n: usize, seed: u64) -> Graph {
    let cfg = RggConfig::with_density(n, 1.0, Range::AvgDegree(12.0), Boundary::Periodic).unwrap();
    generate_connected_rgg(&cfg, ConnectivityPolicy::Regenerate, &mut realization_rng(seed, 0)).unwrap().graph
}

#[test]
fn absorbing_values_after_consensus() {
    let schedule = SampleSchedule::logarithmic(0.1, 1e4, 20).unwrap();
    for seed in 0..10 {
        let g = rgg(256, seed);
        let mut rec = Recorder::new(schedule.clone());
        let mut rng = realization_rng(seed, 1);
        let res = run(&g, InteractionMode::Broadcast, &mut rng, &mut rec, 1e4).unwrap();
        let t_c = res.t_c.unwrap();
        let series = rec.finish(g.node_count(), res.t_c);
        assert_eq!(series.points.len(), schedule.len());
        for p in series.points.iter().filter(|p| p.t >= t_c) {
            assert_eq!((p.n_w, p.n_d), (256, 1));
        }
        // bins entirely after consensus are pure success
        let mut after = series.points.iter().filter(|p| p.t >= t_c).skip(1);
        assert!(after.all(|p| p.s == Some(1.0)));
        for p in &series.points {
            assert!(p.n_d <= p.n_w);
            if let Some(s) = p.s {
                assert!((0.0..=1.0).contains(&s));
            }
        }
    }
}

#[test]
fn ensemble_tail_decreases_to_n() {
    let cfg = ExperimentConfig::from_text(
        "topology.n=512\ntopology.k=12\nrun.runs=40\nrun.max_time=10000\nrun.workers=1\nrun.seed=3\n",
    )
    .unwrap();
    let report = run_ensemble(&cfg).unwrap();
    assert_eq!(report.summary.unconverged, 0);
    let pts = &report.series.points;
    let peak = pts.iter().enumerate().max_by(|a, b| a.1.n_w.mean.total_cmp(&b.1.n_w.mean)).unwrap().0;
    // late-time mean may wobble by sampling noise; require a net decrease over each decade
    let tail = &pts[peak..];
    for w in tail.windows(20) {
        assert!(w[19].n_w.mean <= w[0].n_w.mean + 1e-9, "{} -> {}", w[0].n_w.mean, w[19].n_w.mean);
    }
    let last = pts.last().unwrap();
    assert_eq!(last.n_w.mean, 512.0);
    assert_eq!(last.n_d.mean, 1.0);
    assert_eq!(last.s.unwrap().mean, 1.0);
}

#[test]
fn aggregating_identical_series_is_identity() {
    let g = rgg(128, 7);
    let mut rec = Recorder::new(SampleSchedule::logarithmic(0.1, 1e3, 10).unwrap());
    let res = run(&g, InteractionMode::Broadcast, &mut realization_rng(1, 1), &mut rec, 1e3).unwrap();
    let series = rec.finish(g.node_count(), res.t_c);
    let agg = aggregate(&vec![series.clone(); 5]).unwrap();
    assert_eq!(agg.run_count, 5);
    for (a, p) in agg.points.iter().zip(&series.points) {
        assert_eq!(a.n_w, Stat { mean: p.n_w as f64, std: 0.0 });
        assert_eq!(a.n_d, Stat { mean: p.n_d as f64, std: 0.0 });
        assert_eq!(a.s.map(|s| s.mean), p.s);
        assert_eq!(a.s.map_or(0.0, |s| s.std), 0.0);
    }
}

#[test]
fn k3_ensemble_convergence_stats_match_oracle() {
    let cfg = ExperimentConfig::from_text(
        "topology.kind=complete\ntopology.n=3\ndynamics.mode=pairwise\nrun.runs=100000\nrun.max_time=100\nschedule.points_per_decade=2\nrun.seed=12\n",
    )
    .unwrap();
    let report = run_ensemble(&cfg).unwrap();
    let stats = report.convergence.unwrap();
    assert_eq!(stats.unconverged_count, 0);
    let exact = common::markov::k3_pairwise_expected_steps() / 3.0;
    assert!((stats.mean_tc - exact).abs() < 3.0 * stats.sem_tc(), "{} vs {exact}", stats.mean_tc);
}
