//! Time-grid sampling of `N_w(t)`, `N_d(t)` and the success rate `S(t)`, plus
//! ensemble aggregation and convergence-time statistics.

use crate::dynamics::{Observer, SimState, StepOutcome};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Logarithmic { points_per_decade: u32 },
    Linear,
}

/// Strictly increasing sampling times, all positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSchedule {
    grid: Vec<f64>,
    spacing: Spacing,
}

impl SampleSchedule {
    /// `t_min * 10^(i / points_per_decade)` up to `t_max`; `t_max` itself is
    /// appended when it does not fall on the grid.
    pub fn logarithmic(t_min: f64, t_max: f64, points_per_decade: u32) -> Result<Self> {
        check_range(t_min, t_max)?;
        if points_per_decade == 0 {
            return Err(Error::param("points_per_decade must be positive"));
        }
        let ppd = f64::from(points_per_decade);
        let mut grid = Vec::new();
        for i in 0.. {
            let t = t_min * 10f64.powf(f64::from(i) / ppd);
            if t > t_max * (1.0 + 1e-12) {
                break;
            }
            grid.push(t.min(t_max));
        }
        if *grid.last().unwrap() < t_max {
            grid.push(t_max);
        }
        Ok(SampleSchedule { grid, spacing: Spacing::Logarithmic { points_per_decade } })
    }

    /// `count` evenly spaced points from `t_min` to `t_max` inclusive.
    pub fn linear(t_min: f64, t_max: f64, count: usize) -> Result<Self> {
        check_range(t_min, t_max)?;
        if count < 2 {
            return Err(Error::param("linear schedule needs at least two points"));
        }
        let dt = (t_max - t_min) / (count - 1) as f64;
        let mut grid: Vec<f64> = (0..count).map(|i| t_min + dt * i as f64).collect();
        grid[count - 1] = t_max;
        Ok(SampleSchedule { grid, spacing: Spacing::Linear })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

fn check_range(t_min: f64, t_max: f64) -> Result<()> {
    if !(t_min > 0.0) || !(t_max > t_min) || !t_max.is_finite() {
        return Err(Error::param(format!("need 0 < t_min < t_max, got [{t_min}, {t_max}]")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSeriesPoint {
    pub t: f64,
    pub n_w: usize,
    pub n_d: usize,
    /// Pooled success rate over the bin ending at `t`; `None` if the bin
    /// saw no listeners.
    pub s: Option<f64>,
}

/// One realization sampled on a schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSeries {
    pub points: Vec<TimeSeriesPoint>,
    pub n: usize,
    pub t_c: Option<f64>,
}

/// Bins step outcomes on a [`SampleSchedule`].
///
/// The sample at grid time `g` carries the state after every event with
/// `t <= g`, and `s` pools all outcomes since the previous sample as
/// total successes over total listeners.
#[derive(Debug, Clone)]
pub struct Recorder {
    schedule: SampleSchedule,
    next: usize,
    points: Vec<TimeSeriesPoint>,
    listeners: u64,
    successes: u64,
    last_t: f64,
    last_nw: usize,
    last_nd: usize,
}

impl Recorder {
    pub fn new(schedule: SampleSchedule) -> Self {
        let cap = schedule.len();
        Recorder {
            schedule,
            next: 0,
            points: Vec::with_capacity(cap),
            listeners: 0,
            successes: 0,
            last_t: 0.0,
            last_nw: 0,
            last_nd: 0,
        }
    }

    pub fn schedule(&self) -> &SampleSchedule {
        &self.schedule
    }

    pub fn points(&self) -> &[TimeSeriesPoint] {
        &self.points
    }

    fn emit(&mut self, n_w: usize, n_d: usize) {
        let s = (self.listeners > 0).then(|| self.successes as f64 / self.listeners as f64);
        self.points.push(TimeSeriesPoint { t: self.schedule.grid[self.next], n_w, n_d, s });
        self.next += 1;
        self.listeners = 0;
        self.successes = 0;
    }

    /// Feeds one event, `t` being the time after it.
    ///
    /// # Panics
    /// If `t` is smaller than the time of the previous event.
    pub fn record(&mut self, t: f64, n_w: usize, n_d: usize, outcome: &StepOutcome) {
        assert!(t >= self.last_t, "events out of order: {t} after {}", self.last_t);
        let grid_len = self.schedule.len();
        while self.next < grid_len && self.schedule.grid[self.next] < t {
            self.emit(self.last_nw, self.last_nd);
        }
        self.listeners += u64::from(outcome.listener_count);
        self.successes += u64::from(outcome.success_count);
        self.last_t = t;
        self.last_nw = n_w;
        self.last_nd = n_d;
        if self.next < grid_len && self.schedule.grid[self.next] <= t {
            self.emit(n_w, n_d);
        }
    }

    /// Completes the series. Converged runs are padded with the absorbing
    /// values `n_w = n`, `n_d = 1`, `s = 1`; unconverged runs are padded with
    /// their final state.
    pub fn finish(mut self, n: usize, t_c: Option<f64>) -> RunSeries {
        let grid_len = self.schedule.len();
        if self.next < grid_len {
            let (nw, nd) = (self.last_nw, self.last_nd);
            if t_c.is_some() && self.listeners == 0 {
                // nothing but absorbing events would have filled this bin
                self.listeners = 1;
                self.successes = 1;
            }
            self.emit(nw, nd);
        }
        while self.next < grid_len {
            let s = t_c.map(|_| 1.0);
            let t = self.schedule.grid[self.next];
            self.points.push(TimeSeriesPoint { t, n_w: self.last_nw, n_d: self.last_nd, s });
            self.next += 1;
        }
        RunSeries { points: self.points, n, t_c }
    }
}

impl Observer for Recorder {
    fn on_step(&mut self, state: &SimState, outcome: &StepOutcome) {
        self.record(state.time(), state.total_words(), state.distinct_words(), outcome);
    }
}

/// Mean and sample standard deviation (divisor `len - 1`, zero for one value).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Option<Stat> {
        if values.is_empty() {
            return None;
        }
        let k = values.len() as f64;
        // shifted by the first value so identical inputs reproduce it exactly
        let base = values[0];
        let mean = base + values.iter().map(|v| v - base).sum::<f64>() / k;
        let std = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
        };
        Some(Stat { mean, std })
    }

    /// Standard error of the mean for `count` samples.
    pub fn sem(&self, count: usize) -> f64 {
        self.std / (count as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsemblePoint {
    pub t: f64,
    pub n_w: Stat,
    pub n_d: Stat,
    /// Over the runs that had listeners in this bin; `None` if none did.
    pub s: Option<Stat>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSeries {
    pub points: Vec<EnsemblePoint>,
    pub run_count: usize,
}

impl EnsembleSeries {
    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.t)
    }
}

/// Pointwise mean and sample standard deviation across runs.
pub fn aggregate(runs: &[RunSeries]) -> Result<EnsembleSeries> {
    let first = runs.first().ok_or_else(|| Error::param("cannot aggregate zero runs"))?;
    let len = first.points.len();
    for r in runs {
        if r.points.len() != len || r.points.iter().zip(&first.points).any(|(a, b)| a.t != b.t) {
            return Err(Error::param("runs do not share a time grid"));
        }
    }
    let mut buf = Vec::with_capacity(runs.len());
    let mut column = |f: &dyn Fn(&TimeSeriesPoint) -> Option<f64>, i: usize| {
        buf.clear();
        buf.extend(runs.iter().filter_map(|r| f(&r.points[i])));
        Stat::of(&buf)
    };
    let points = (0..len)
        .map(|i| EnsemblePoint {
            t: first.points[i].t,
            n_w: column(&|p| Some(p.n_w as f64), i).unwrap(),
            n_d: column(&|p| Some(p.n_d as f64), i).unwrap(),
            s: column(&|p| p.s, i),
        })
        .collect();
    Ok(EnsembleSeries { points, run_count: runs.len() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceStats {
    pub mean_tc: f64,
    pub std_tc: f64,
    /// Converged runs entering the statistics.
    pub run_count: usize,
    pub unconverged_count: usize,
}

impl ConvergenceStats {
    pub fn sem_tc(&self) -> f64 {
        self.std_tc / (self.run_count as f64).sqrt()
    }
}

pub fn convergence_stats(t_c: &[f64], unconverged: usize) -> Result<ConvergenceStats> {
    let stat = Stat::of(t_c).ok_or_else(|| Error::param("no converged runs"))?;
    Ok(ConvergenceStats { mean_tc: stat.mean, std_tc: stat.std, run_count: t_c.len(), unconverged_count: unconverged })
}
