//! Flat `section.key = value` experiment configuration and named presets.

use std::fmt;
use std::str::FromStr;

use crate::dynamics::InteractionMode;
use crate::error::{Error, Result};
use crate::observables::{SampleSchedule, Spacing};
use crate::topology::{Boundary, ConnectivityPolicy, Range};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyKind {
    Rgg,
    SwRgg,
    Lattice2d,
    Complete,
}

impl TopologyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TopologyKind::Rgg => "rgg",
            TopologyKind::SwRgg => "sw_rgg",
            TopologyKind::Lattice2d => "lattice2d",
            TopologyKind::Complete => "complete",
        }
    }

    pub fn is_spatial(self) -> bool {
        matches!(self, TopologyKind::Rgg | TopologyKind::SwRgg)
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rgg" => TopologyKind::Rgg,
            "sw_rgg" => TopologyKind::SwRgg,
            "lattice2d" => TopologyKind::Lattice2d,
            "complete" => TopologyKind::Complete,
            other => return Err(Error::Config(format!("unknown topology `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopologyParams {
    pub kind: TopologyKind,
    /// Node count; for lattices, `side * side`.
    pub n: usize,
    pub range: Range,
    pub density: f64,
    /// Overrides `density` when set.
    pub box_length: Option<f64>,
    pub boundary: Boundary,
    pub shortcut_density: f64,
    pub periodic: bool,
}

impl Default for TopologyParams {
    fn default() -> Self {
        TopologyParams {
            kind: TopologyKind::Rgg,
            n: 1024,
            range: Range::AvgDegree(12.0),
            density: 1.0,
            box_length: None,
            boundary: Boundary::Periodic,
            shortcut_density: 0.0,
            periodic: true,
        }
    }
}

impl TopologyParams {
    pub fn lattice_side(&self) -> Result<usize> {
        let side = (self.n as f64).sqrt().round() as usize;
        if side * side != self.n {
            return Err(Error::Config(format!("lattice needs a square node count, got {}", self.n)));
        }
        Ok(side)
    }

    pub fn box_length(&self) -> f64 {
        self.box_length.unwrap_or_else(|| (self.n as f64 / self.density).sqrt())
    }

    /// Nominal average degree of the topology.
    pub fn target_degree(&self) -> f64 {
        match self.kind {
            TopologyKind::Rgg | TopologyKind::SwRgg => match self.range {
                Range::AvgDegree(k) => k,
                Range::Radius(r) => {
                    let l = self.box_length();
                    self.n as f64 / (l * l) * std::f64::consts::PI * r * r
                }
            },
            TopologyKind::Lattice2d => 4.0,
            TopologyKind::Complete => self.n.saturating_sub(1) as f64,
        }
    }

    /// Shortcut density in effect (zero for everything but `sw_rgg`).
    pub fn effective_p(&self) -> f64 {
        if self.kind == TopologyKind::SwRgg {
            self.shortcut_density
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleParams {
    pub t_min: f64,
    pub spacing: Spacing,
    /// Point count for linear spacing.
    pub points: usize,
}

impl Default for ScheduleParams {
    fn default() -> Self {
        ScheduleParams { t_min: 0.1, spacing: Spacing::Logarithmic { points_per_decade: 20 }, points: 100 }
    }
}

/// Fit windows `[lo, hi]` in time (observables) or in the sweep variable (`tc`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindows {
    pub nw: (f64, f64),
    pub nd: (f64, f64),
    pub failure: (f64, f64),
    pub tc: Option<(f64, f64)>,
}

impl Default for FitWindows {
    fn default() -> Self {
        FitWindows { nw: (3.0, 30.0), nd: (3.0, 30.0), failure: (3.0, 30.0), tc: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    N,
    P,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::N => "n",
            SweepAxis::P => "p",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepParams {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub topology: TopologyParams,
    pub connectivity: ConnectivityPolicy,
    pub mode: InteractionMode,
    pub runs: usize,
    pub max_time: f64,
    pub master_seed: u64,
    /// Worker threads for ensembles; `0` means one per available core.
    pub workers: usize,
    pub schedule: ScheduleParams,
    pub snapshot_times: Vec<f64>,
    pub fit: FitWindows,
    pub sweep: Option<SweepParams>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            topology: TopologyParams::default(),
            connectivity: ConnectivityPolicy::Regenerate,
            mode: InteractionMode::Broadcast,
            runs: 100,
            max_time: 1e5,
            master_seed: 1,
            workers: 0,
            schedule: ScheduleParams::default(),
            snapshot_times: Vec::new(),
            fit: FitWindows::default(),
            sweep: None,
        }
    }
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| cfg_err(format!("bad value `{value}` for `{key}`")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value.split(',').map(|v| parse(key, v.trim())).collect()
}

fn parse_window(key: &str, value: &str) -> Result<(f64, f64)> {
    match parse_list(key, value)?.as_slice() {
        &[lo, hi] if lo < hi => Ok((lo, hi)),
        _ => Err(cfg_err(format!("`{key}` needs `lo,hi` with lo < hi, got `{value}`"))),
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(cfg_err(format!("bad boolean `{value}` for `{key}`"))),
    }
}

impl ExperimentConfig {
    /// Sets one `section.key` entry.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let topo = &mut self.topology;
        match key.trim() {
            "topology.kind" => topo.kind = parse(key, value)?,
            "topology.n" => topo.n = parse(key, value)?,
            "topology.side" => {
                let side: usize = parse(key, value)?;
                topo.n = side * side;
            }
            "topology.k" => topo.range = Range::AvgDegree(parse(key, value)?),
            "topology.radius" => topo.range = Range::Radius(parse(key, value)?),
            "topology.density" => {
                topo.density = parse(key, value)?;
                topo.box_length = None;
            }
            "topology.box_length" => topo.box_length = Some(parse(key, value)?),
            "topology.boundary" => {
                topo.boundary = value.parse().map_err(|_| cfg_err(format!("bad boundary `{value}`")))?
            }
            "topology.p" => topo.shortcut_density = parse(key, value)?,
            "topology.periodic" => topo.periodic = parse_bool(key, value)?,
            "topology.connectivity" => {
                self.connectivity = match value {
                    "regenerate" => ConnectivityPolicy::Regenerate,
                    "giant_component" => ConnectivityPolicy::GiantComponent,
                    _ => return Err(cfg_err(format!("unknown connectivity policy `{value}`"))),
                }
            }
            "dynamics.mode" => self.mode = value.parse().map_err(|_| cfg_err(format!("bad mode `{value}`")))?,
            "run.runs" => self.runs = parse(key, value)?,
            "run.max_time" => self.max_time = parse(key, value)?,
            "run.seed" => self.master_seed = parse(key, value)?,
            "run.workers" => self.workers = parse(key, value)?,
            "schedule.t_min" => self.schedule.t_min = parse(key, value)?,
            "schedule.points_per_decade" => {
                self.schedule.spacing = Spacing::Logarithmic { points_per_decade: parse(key, value)? }
            }
            "schedule.spacing" => {
                self.schedule.spacing = match value {
                    "log" | "logarithmic" => match self.schedule.spacing {
                        s @ Spacing::Logarithmic { .. } => s,
                        Spacing::Linear => Spacing::Logarithmic { points_per_decade: 20 },
                    },
                    "linear" => Spacing::Linear,
                    _ => return Err(cfg_err(format!("unknown spacing `{value}`"))),
                }
            }
            "schedule.points" => self.schedule.points = parse(key, value)?,
            "snapshot.times" => {
                self.snapshot_times = if value.is_empty() { Vec::new() } else { parse_list(key, value)? }
            }
            "fit.nw" => self.fit.nw = parse_window(key, value)?,
            "fit.nd" => self.fit.nd = parse_window(key, value)?,
            "fit.failure" => self.fit.failure = parse_window(key, value)?,
            "fit.tc" => self.fit.tc = Some(parse_window(key, value)?),
            "sweep.axis" => {
                let axis = match value {
                    "n" => SweepAxis::N,
                    "p" => SweepAxis::P,
                    _ => return Err(cfg_err(format!("unknown sweep axis `{value}`"))),
                };
                self.sweep.get_or_insert(SweepParams { axis, values: Vec::new() }).axis = axis;
            }
            "sweep.values" => {
                let values = parse_list(key, value)?;
                self.sweep.get_or_insert(SweepParams { axis: SweepAxis::N, values: Vec::new() }).values = values;
            }
            other => return Err(cfg_err(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| cfg_err(format!("line {}: expected `key=value`", i + 1)))?;
            self.set(key, value).map_err(|e| cfg_err(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Serializes back to the `key=value` form accepted by [`apply_text`](Self::apply_text).
    pub fn to_text(&self) -> String {
        let t = &self.topology;
        let mut lines = vec![format!("topology.kind={}", t.kind.as_str()), format!("topology.n={}", t.n)];
        match t.range {
            Range::AvgDegree(k) => lines.push(format!("topology.k={k}")),
            Range::Radius(r) => lines.push(format!("topology.radius={r}")),
        }
        lines.push(format!("topology.density={}", t.density));
        if let Some(l) = t.box_length {
            lines.push(format!("topology.box_length={l}"));
        }
        lines.push(format!("topology.boundary={}", t.boundary));
        lines.push(format!("topology.p={}", t.shortcut_density));
        lines.push(format!("topology.periodic={}", t.periodic));
        lines.push(format!(
            "topology.connectivity={}",
            match self.connectivity {
                ConnectivityPolicy::Regenerate => "regenerate",
                ConnectivityPolicy::GiantComponent => "giant_component",
            }
        ));
        lines.push(format!("dynamics.mode={}", self.mode));
        lines.push(format!("run.runs={}", self.runs));
        lines.push(format!("run.max_time={}", self.max_time));
        lines.push(format!("run.seed={}", self.master_seed));
        lines.push(format!("run.workers={}", self.workers));
        lines.push(format!("schedule.t_min={}", self.schedule.t_min));
        match self.schedule.spacing {
            Spacing::Logarithmic { points_per_decade } => {
                lines.push(format!("schedule.points_per_decade={points_per_decade}"))
            }
            Spacing::Linear => lines.push("schedule.spacing=linear".into()),
        }
        lines.push(format!("schedule.points={}", self.schedule.points));
        let join = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        lines.push(format!("snapshot.times={}", join(&self.snapshot_times)));
        let f = &self.fit;
        lines.push(format!("fit.nw={},{}", f.nw.0, f.nw.1));
        lines.push(format!("fit.nd={},{}", f.nd.0, f.nd.1));
        lines.push(format!("fit.failure={},{}", f.failure.0, f.failure.1));
        if let Some((lo, hi)) = f.tc {
            lines.push(format!("fit.tc={lo},{hi}"));
        }
        if let Some(s) = &self.sweep {
            lines.push(format!("sweep.axis={}", s.axis));
            lines.push(format!("sweep.values={}", join(&s.values)));
        }
        lines.join("\n") + "\n"
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.topology;
        if t.n == 0 {
            return Err(cfg_err("topology.n must be at least 1"));
        }
        if self.runs == 0 {
            return Err(cfg_err("run.runs must be at least 1"));
        }
        if !(self.max_time > 0.0) {
            return Err(cfg_err("run.max_time must be positive"));
        }
        if !(t.shortcut_density >= 0.0) {
            return Err(cfg_err("topology.p must be non-negative"));
        }
        if t.kind.is_spatial() {
            let ok = match t.range {
                Range::AvgDegree(k) => k > 0.0,
                Range::Radius(r) => r > 0.0,
            };
            if !ok || !(t.box_length() > 0.0) {
                return Err(cfg_err("RGG needs positive degree/radius and box size"));
            }
        }
        if t.kind == TopologyKind::Lattice2d {
            let side = t.lattice_side()?;
            if side < 2 {
                return Err(cfg_err("lattice side must be at least 2"));
            }
        }
        if self.snapshot_times.windows(2).any(|w| w[0] > w[1]) {
            return Err(cfg_err("snapshot.times must be sorted"));
        }
        if !self.snapshot_times.is_empty() && !t.kind.is_spatial() {
            return Err(cfg_err("snapshots need a spatial topology (rgg or sw_rgg)"));
        }
        if let Some(s) = &self.sweep {
            if s.axis == SweepAxis::P && t.kind != TopologyKind::SwRgg {
                return Err(cfg_err("a p sweep needs topology.kind=sw_rgg"));
            }
        }
        self.sample_schedule()?;
        Ok(())
    }

    pub fn sample_schedule(&self) -> Result<SampleSchedule> {
        let s = &self.schedule;
        match s.spacing {
            Spacing::Logarithmic { points_per_decade } => {
                SampleSchedule::logarithmic(s.t_min, self.max_time, points_per_decade)
            }
            Spacing::Linear => SampleSchedule::linear(s.t_min, self.max_time, s.points),
        }
        .map_err(|e| cfg_err(format!("schedule: {e}")))
    }

    pub fn preset(name: &str) -> Result<Self> {
        let text = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| *t)
            .ok_or_else(|| cfg_err(format!("unknown preset `{name}` (known: {})", preset_names().join(", "))))?;
        ExperimentConfig::from_text(text)
    }
}

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

/// Named configurations. Ensemble sizes are scaled down from 1000 runs.
pub const PRESETS: &[(&str, &str)] = &[
    (
        "fig1",
        "# snapshots of one run on a free-boundary RGG
topology.kind=rgg
topology.n=1000
topology.k=12
topology.boundary=free
run.runs=1
run.max_time=100000
snapshot.times=1,43,169,291
",
    ),
    (
        "fig2",
        "topology.kind=rgg
topology.n=1024
topology.k=12
run.runs=200
run.max_time=10000
",
    ),
    (
        "fig3",
        "# three system sizes at k=50; the sizes themselves are an assumption
topology.kind=rgg
topology.n=1024
topology.k=50
run.runs=200
run.max_time=1000
fit.nw=0.15,2
fit.nd=0.15,2
fit.failure=0.15,2
sweep.axis=n
sweep.values=1024,2048,4096
",
    ),
    (
        "fig4",
        "topology.kind=rgg
topology.k=50
run.runs=200
run.max_time=10000
sweep.axis=n
sweep.values=256,512,1024,2048
",
    ),
    (
        "fig5",
        "topology.kind=sw_rgg
topology.n=2048
topology.k=12
run.runs=100
run.max_time=100000
sweep.axis=p
sweep.values=0.005,0.01,0.02,0.05,0.1
fit.tc=0.02,0.1
",
    ),
    (
        "fig6",
        "topology.kind=sw_rgg
topology.k=12
topology.p=0.05
run.runs=100
run.max_time=100000
sweep.axis=n
sweep.values=512,1024,2048,4096
",
    ),
    (
        "fig6-pure",
        "topology.kind=rgg
topology.k=12
run.runs=100
run.max_time=100000
sweep.axis=n
sweep.values=512,1024,2048,4096
",
    ),
    (
        "fc-pairwise",
        "topology.kind=complete
dynamics.mode=pairwise
run.runs=100
run.max_time=100000
sweep.axis=n
sweep.values=128,256,512,1024,2048
",
    ),
    (
        "lattice-pairwise",
        "topology.kind=lattice2d
topology.periodic=true
dynamics.mode=pairwise
run.runs=100
run.max_time=1000000
sweep.axis=n
sweep.values=256,576,1024,2304,4096
",
    ),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_parse() {
        for name in preset_names() {
            ExperimentConfig::preset(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(ExperimentConfig::preset("nope").is_err());
    }

    #[test]
    fn text_round_trip() {
        for name in preset_names() {
            let cfg = ExperimentConfig::preset(name).unwrap();
            let back = ExperimentConfig::from_text(&cfg.to_text()).unwrap();
            assert_eq!(back, cfg, "{name}");
        }
    }

    #[test]
    fn overrides_and_errors() {
        let mut cfg = ExperimentConfig::from_text("topology.n = 64 # comment\nrun.seed=9\n").unwrap();
        assert_eq!(cfg.topology.n, 64);
        assert_eq!(cfg.master_seed, 9);
        cfg.set("topology.side", "5").unwrap();
        assert_eq!(cfg.topology.n, 25);
        assert!(cfg.set("topology.colour", "red").is_err());
        assert!(cfg.set("run.runs", "many").is_err());
        assert!(cfg.set("fit.nd", "5,1").is_err());
        assert!(ExperimentConfig::from_text("run.runs=0").is_err());
        assert!(ExperimentConfig::from_text("snapshot.times=5,1").is_err());
        assert!(ExperimentConfig::from_text("topology.kind=complete\nsnapshot.times=1").is_err());
        assert!(ExperimentConfig::from_text("topology.kind=lattice2d\ntopology.n=10").is_err());
        assert!(ExperimentConfig::from_text("sweep.axis=p\nsweep.values=0.1,0.2,0.3").is_err());
        assert!(ExperimentConfig::from_text("garbage").is_err());
    }

    #[test]
    fn nominal_degrees() {
        let mut t = TopologyParams { n: 100, range: Range::Radius(1.0), ..Default::default() };
        assert!((t.target_degree() - std::f64::consts::PI).abs() < 1e-12);
        t.kind = TopologyKind::Complete;
        assert_eq!(t.target_degree(), 99.0);
        assert_eq!(t.effective_p(), 0.0);
    }
}
