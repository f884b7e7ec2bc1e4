//! End-to-end experiments: graph generation, single runs with snapshots,
//! ensembles and parameter sweeps.
//!
//! Realization `i` of an ensemble draws everything (graph and dynamics) from
//! the stream [`realization_rng`]`(master_seed, i)`. Realizations may run on
//! several threads; results are always merged in index order, so outputs do
//! not depend on the worker count.

mod config;
mod output;

use rand::Rng;
use rayon::prelude::*;

pub use self::config::{
    preset_names, ExperimentConfig, FitWindows, ScheduleParams, SweepAxis, SweepParams, TopologyKind, TopologyParams,
    PRESETS,
};
pub use self::output::{
    snapshot_text, summary_line, sweep_table, write_ensemble_csv, write_snapshot, write_summary, SUMMARY_HEADER,
};

use crate::analysis::{fit_power_law, sw_onset_check, FitResult};
use crate::dynamics::{run, Observer, SimState, StepOutcome};
use crate::error::{Error, Result};
use crate::observables::{aggregate, convergence_stats, ConvergenceStats, EnsembleSeries, Recorder, RunSeries};
use crate::seed::{realization_rng, realization_seed};
use crate::topology::{
    add_shortcuts, connected_components, generate_complete, generate_connected_rgg, generate_lattice_2d, Graph,
    Point2D, RggConfig, SwConfig,
};

/// Builds one graph realization. Returns the graph and the number of RGG
/// draws it took.
pub fn realize_graph<R: Rng + ?Sized>(
    topo: &TopologyParams,
    cfg: &ExperimentConfig,
    rng: &mut R,
) -> Result<(Graph, usize)> {
    match topo.kind {
        TopologyKind::Rgg | TopologyKind::SwRgg => {
            let rgg = RggConfig::new(topo.n, topo.box_length(), topo.range, topo.boundary);
            let real = generate_connected_rgg(&rgg, cfg.connectivity, rng)?;
            let graph = if topo.kind == TopologyKind::SwRgg {
                add_shortcuts(real.graph, SwConfig::new(topo.shortcut_density), rng)?
            } else {
                real.graph
            };
            Ok((graph, real.attempts))
        }
        TopologyKind::Lattice2d => Ok((generate_lattice_2d(topo.lattice_side()?, topo.periodic)?, 1)),
        TopologyKind::Complete => Ok((generate_complete(topo.n)?, 1)),
    }
}

#[derive(Debug, Clone)]
pub struct GraphReport {
    pub graph: Graph,
    pub attempts: usize,
    pub component_count: usize,
}

impl GraphReport {
    pub fn describe(&self) -> String {
        format!(
            "n={} K={} k_measured={} components={} attempts={}",
            self.graph.node_count(),
            self.graph.edge_count(),
            self.graph.measured_avg_degree(),
            self.component_count,
            self.attempts
        )
    }
}

/// Generates the graph of realization 0.
pub fn gen_graph(cfg: &ExperimentConfig) -> Result<GraphReport> {
    cfg.validate()?;
    let mut rng = realization_rng(cfg.master_seed, 0);
    let (graph, attempts) = realize_graph(&cfg.topology, cfg, &mut rng)?;
    let component_count = connected_components(&graph).count();
    Ok(GraphReport { graph, attempts, component_count })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub vocab_size: usize,
    /// The held word, or `-1` unless exactly one word is held.
    pub word: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRecord {
    pub requested_t: f64,
    /// Time of the event after which the snapshot was taken.
    pub t: f64,
    pub n: usize,
    pub box_length: f64,
    pub rows: Vec<SnapshotRow>,
}

impl SnapshotRecord {
    fn capture(requested_t: f64, state: &SimState, positions: &[Point2D], box_length: f64) -> Self {
        let rows = state
            .vocabularies()
            .iter()
            .zip(positions)
            .enumerate()
            .map(|(id, (v, p))| SnapshotRow {
                id: id as u32,
                x: p.x,
                y: p.y,
                vocab_size: v.len(),
                word: v.single().map_or(-1, |w| i64::from(w.token())),
            })
            .collect();
        SnapshotRecord { requested_t, t: state.time(), n: state.node_count(), box_length, rows }
    }

    pub fn distinct_words(&self) -> usize {
        let mut words: Vec<i64> = self.rows.iter().map(|r| r.word).filter(|&w| w >= 0).collect();
        words.sort_unstable();
        words.dedup();
        words.len()
    }
}

struct Snapshotter<'a> {
    times: &'a [f64],
    positions: &'a [Point2D],
    box_length: f64,
    taken: Vec<SnapshotRecord>,
}

impl Observer for Snapshotter<'_> {
    fn on_step(&mut self, state: &SimState, _: &StepOutcome) {
        while let Some(&t) = self.times.get(self.taken.len()) {
            if state.time() < t {
                break;
            }
            self.taken.push(SnapshotRecord::capture(t, state, self.positions, self.box_length));
        }
    }
}

#[derive(Debug, Clone)]
pub struct SingleRun {
    pub graph: Graph,
    pub series: RunSeries,
    pub t_c: Option<f64>,
    pub snapshots: Vec<SnapshotRecord>,
}

/// One realization (index 0) with time series and optional snapshots.
/// Snapshots requested after the run stopped show the final state.
pub fn run_single(cfg: &ExperimentConfig) -> Result<SingleRun> {
    cfg.validate()?;
    let mut rng = realization_rng(cfg.master_seed, 0);
    let (graph, _) = realize_graph(&cfg.topology, cfg, &mut rng)?;
    let mut recorder = Recorder::new(cfg.sample_schedule()?);
    let (positions, box_length) = match (graph.positions(), graph.box_length()) {
        (Some(p), Some(l)) => (p, l),
        _ => (&[][..], 0.0),
    };
    let mut snaps = Snapshotter { times: &cfg.snapshot_times, positions, box_length, taken: Vec::new() };
    let result = run(&graph, cfg.mode, &mut rng, (&mut recorder, &mut snaps), cfg.max_time)?;
    let mut snapshots = snaps.taken;
    for &t in &cfg.snapshot_times[snapshots.len()..] {
        snapshots.push(SnapshotRecord::capture(t, &result.final_state, positions, box_length));
    }
    let series = recorder.finish(graph.node_count(), result.t_c);
    Ok(SingleRun { graph, series, t_c: result.t_c, snapshots })
}

/// Outcome of one ensemble member.
#[derive(Debug, Clone)]
pub struct Realization {
    pub series: RunSeries,
    pub measured_degree: f64,
    pub attempts: usize,
}

/// Power-law fits of the coarsening observables on ensemble means.
#[derive(Debug, Clone, Default)]
pub struct CoarseningFits {
    /// `N_w / N - 1` against `t`.
    pub nw: Option<FitResult>,
    /// `N_d / N` against `t`.
    pub nd: Option<FitResult>,
    /// `1 - S` against `t`.
    pub failure: Option<FitResult>,
}

#[derive(Debug, Clone)]
pub struct SummaryRecord {
    pub n: usize,
    pub k_target: f64,
    pub k_measured_mean: f64,
    pub p: f64,
    pub mode: crate::dynamics::InteractionMode,
    pub runs: usize,
    pub unconverged: usize,
    pub mean_tc: f64,
    pub std_tc: f64,
}

#[derive(Debug, Clone)]
pub struct EnsembleReport {
    pub series: EnsembleSeries,
    pub realizations: Vec<Realization>,
    pub convergence: Option<ConvergenceStats>,
    pub summary: SummaryRecord,
    pub fits: CoarseningFits,
}

impl EnsembleReport {
    pub fn t_c_values(&self) -> Vec<f64> {
        self.realizations.iter().filter_map(|r| r.series.t_c).collect()
    }
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

/// Runs `cfg.runs` independent realizations (fresh graph each) and aggregates them.
pub fn run_ensemble(cfg: &ExperimentConfig) -> Result<EnsembleReport> {
    cfg.validate()?;
    let schedule = cfg.sample_schedule()?;
    // deterministic topologies draw nothing from the stream, so one copy serves every run
    let shared = if cfg.topology.kind.is_spatial() {
        None
    } else {
        Some(realize_graph(&cfg.topology, cfg, &mut realization_rng(cfg.master_seed, 0))?)
    };
    let one = |i: usize| -> Result<Realization> {
        let mut rng = realization_rng(cfg.master_seed, i as u64);
        let owned;
        let (graph, attempts) = match &shared {
            Some((g, a)) => (g, *a),
            None => {
                owned = realize_graph(&cfg.topology, cfg, &mut rng)
                    .map_err(|e| with_context(e, format!("realization {i}")))?;
                (&owned.0, owned.1)
            }
        };
        let mut recorder = Recorder::new(schedule.clone());
        let result = run(graph, cfg.mode, &mut rng, &mut recorder, cfg.max_time)?;
        Ok(Realization {
            series: recorder.finish(graph.node_count(), result.t_c),
            measured_degree: graph.measured_avg_degree(),
            attempts,
        })
    };
    let realizations: Vec<Realization> =
        with_pool(cfg.workers, || (0..cfg.runs).into_par_iter().map(one).collect::<Result<Vec<_>>>())??;

    let series: Vec<RunSeries> = realizations.iter().map(|r| r.series.clone()).collect();
    let ensemble = aggregate(&series)?;
    let t_c: Vec<f64> = series.iter().filter_map(|s| s.t_c).collect();
    let unconverged = series.len() - t_c.len();
    let convergence = convergence_stats(&t_c, unconverged).ok();
    let k_measured_mean = realizations.iter().map(|r| r.measured_degree).sum::<f64>() / cfg.runs as f64;
    let mean_n = series.iter().map(|s| s.n as f64).sum::<f64>() / cfg.runs as f64;
    let summary = SummaryRecord {
        n: cfg.topology.n,
        k_target: cfg.topology.target_degree(),
        k_measured_mean,
        p: cfg.topology.effective_p(),
        mode: cfg.mode,
        runs: cfg.runs,
        unconverged,
        mean_tc: convergence.map_or(f64::NAN, |c| c.mean_tc),
        std_tc: convergence.map_or(f64::NAN, |c| c.std_tc),
    };
    let fits = coarsening_fits(&ensemble, mean_n, &cfg.fit);
    Ok(EnsembleReport { series: ensemble, realizations, convergence, summary, fits })
}

fn with_context(e: Error, ctx: String) -> Error {
    match e {
        Error::Topology(msg) => Error::Topology(format!("{ctx}: {msg}")),
        other => other,
    }
}

/// Fits the three coarsening observables over their configured windows.
/// Points where the observable is zero are skipped.
pub fn coarsening_fits(series: &EnsembleSeries, n: f64, windows: &FitWindows) -> CoarseningFits {
    let pts = |f: &dyn Fn(&crate::observables::EnsemblePoint) -> Option<f64>| -> Vec<(f64, f64)> {
        series.points.iter().filter_map(|p| f(p).map(|y| (p.t, y))).collect()
    };
    let nw = pts(&|p| Some(p.n_w.mean / n - 1.0));
    let nd = pts(&|p| Some(p.n_d.mean / n));
    let failure = pts(&|p| p.s.map(|s| 1.0 - s.mean));
    CoarseningFits {
        nw: fit_power_law(&nw, windows.nw).ok(),
        nd: fit_power_law(&nd, windows.nd).ok(),
        failure: fit_power_law(&failure, windows.failure).ok(),
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub summary: SummaryRecord,
    pub series: EnsembleSeries,
    pub sw_onset: bool,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
    /// `mean_tc` against the sweep variable.
    pub tc_fit: Option<FitResult>,
    /// `std_tc` against `n` (n sweeps only).
    pub std_fit: Option<FitResult>,
}

const SWEEP_SALT: u64 = 0x5eed_5eed_5eed_5eed;

/// Config of sweep point `index` taking the value `value`.
pub fn sweep_point(cfg: &ExperimentConfig, axis: SweepAxis, index: usize, value: f64) -> Result<ExperimentConfig> {
    let mut point = cfg.clone();
    point.sweep = None;
    point.master_seed = realization_seed(cfg.master_seed ^ SWEEP_SALT, index as u64);
    match axis {
        SweepAxis::N => {
            if !(value >= 1.0) || value.fract() != 0.0 {
                return Err(Error::Config(format!("sweep value {value} is not a node count")));
            }
            point.topology.n = value as usize;
        }
        SweepAxis::P => point.topology.shortcut_density = value,
    }
    point.validate()?;
    Ok(point)
}

/// Runs an ensemble per sweep value and fits `t_c` against the swept variable.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    let sweep = cfg.sweep.as_ref().ok_or_else(|| Error::Config("no sweep configured".into()))?;
    if sweep.values.len() < 3 {
        return Err(Error::Config("a sweep needs at least three values".into()));
    }
    let mut rows = Vec::with_capacity(sweep.values.len());
    for (i, &value) in sweep.values.iter().enumerate() {
        let point = sweep_point(cfg, sweep.axis, i, value)?;
        let report = run_ensemble(&point)?;
        let p = point.topology.effective_p();
        rows.push(SweepRow {
            value,
            sw_onset: p > 0.0 && sw_onset_check(point.topology.n, p),
            summary: report.summary,
            series: report.series,
        });
    }
    let window = cfg.fit.tc.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    let fit = |f: &dyn Fn(&SummaryRecord) -> f64| {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.value, f(&r.summary))).collect();
        fit_power_law(&pts, window).ok()
    };
    let tc_fit = fit(&|s| s.mean_tc);
    let std_fit = match sweep.axis {
        SweepAxis::N => fit(&|s| s.std_tc),
        SweepAxis::P => None,
    };
    Ok(SweepReport { axis: sweep.axis, rows, tc_fit, std_fit })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: &str) -> ExperimentConfig {
        ExperimentConfig::from_text(&format!(
            "topology.kind={kind}\ntopology.n=64\ntopology.k=10\nrun.runs=4\nrun.max_time=200\nrun.workers=1\n"
        ))
        .unwrap()
    }

    #[test]
    fn complete_single_run() {
        let mut cfg = small("complete");
        cfg.topology.n = 16;
        let run = run_single(&cfg).unwrap();
        assert_eq!(run.t_c, Some(1.0 / 16.0));
        assert!(run.series.points.iter().all(|p| p.n_w == 16 && p.n_d == 1));
    }

    #[test]
    fn snapshots_are_taken_in_order() {
        let mut cfg = small("rgg");
        cfg.snapshot_times = vec![0.5, 1.0, 1e4];
        cfg.max_time = 1e5;
        let run = run_single(&cfg).unwrap();
        assert_eq!(run.snapshots.len(), 3);
        assert!(run.snapshots[0].t >= 0.5);
        assert!(run.snapshots[1].t >= 1.0);
        let last = &run.snapshots[2];
        assert_eq!(last.requested_t, 1e4);
        assert!(last.rows.iter().all(|r| r.vocab_size == 1 && r.word == last.rows[0].word));
        for s in &run.snapshots {
            for r in &s.rows {
                assert_eq!(r.word == -1, r.vocab_size != 1);
            }
        }
    }

    #[test]
    fn ensemble_is_worker_independent() {
        let mut cfg = small("sw_rgg");
        cfg.topology.shortcut_density = 0.1;
        cfg.workers = 1;
        let a = run_ensemble(&cfg).unwrap();
        cfg.workers = 3;
        let b = run_ensemble(&cfg).unwrap();
        assert_eq!(a.series, b.series);
        assert_eq!(a.t_c_values(), b.t_c_values());
    }

    #[test]
    fn sweep_needs_three_values() {
        let mut cfg = small("rgg");
        cfg.sweep = Some(SweepParams { axis: SweepAxis::N, values: vec![16.0, 32.0] });
        assert!(run_sweep(&cfg).is_err());
        cfg.sweep = None;
        assert!(run_sweep(&cfg).is_err());
    }

    #[test]
    fn sweep_point_rejects_fractional_n() {
        let cfg = small("rgg");
        assert!(sweep_point(&cfg, SweepAxis::N, 0, 10.5).is_err());
        let p = sweep_point(&cfg, SweepAxis::N, 1, 32.0).unwrap();
        assert_eq!(p.topology.n, 32);
        assert_ne!(p.master_seed, cfg.master_seed);
    }
}
