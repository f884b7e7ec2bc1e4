//! CSV and text writers. Floats are printed with shortest round-trip
//! formatting; missing values print as `NaN`.

use std::io::Write;

use super::{SnapshotRecord, SummaryRecord, SweepReport};
use crate::error::Result;
use crate::observables::EnsembleSeries;

pub const ENSEMBLE_HEADER: &str = "t,nw_mean,nw_std,nd_mean,nd_std,s_mean,s_std";
pub const SUMMARY_HEADER: &str = "n,k_target,k_measured_mean,p,mode,runs,unconverged,mean_tc,std_tc";

pub fn write_ensemble_csv<W: Write>(series: &EnsembleSeries, mut out: W) -> Result<()> {
    writeln!(out, "{ENSEMBLE_HEADER}")?;
    for p in &series.points {
        let (sm, ss) = p.s.map_or((f64::NAN, f64::NAN), |s| (s.mean, s.std));
        writeln!(out, "{},{},{},{},{},{},{}", p.t, p.n_w.mean, p.n_w.std, p.n_d.mean, p.n_d.std, sm, ss)?;
    }
    Ok(())
}

pub fn summary_line(s: &SummaryRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        s.n, s.k_target, s.k_measured_mean, s.p, s.mode, s.runs, s.unconverged, s.mean_tc, s.std_tc
    )
}

pub fn write_summary<W: Write>(s: &SummaryRecord, mut out: W) -> Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    writeln!(out, "{}", summary_line(s))?;
    Ok(())
}

pub fn snapshot_text(s: &SnapshotRecord) -> String {
    let mut text = format!("# t={} n={} L={}\n# t_event={}\n", s.requested_t, s.n, s.box_length, s.t);
    for r in &s.rows {
        text.push_str(&format!("{},{},{},{},{}\n", r.id, r.x, r.y, r.vocab_size, r.word));
    }
    text
}

pub fn write_snapshot<W: Write>(s: &SnapshotRecord, mut out: W) -> Result<()> {
    out.write_all(snapshot_text(s).as_bytes())?;
    Ok(())
}

/// Summary rows of a sweep, with the swept value and the shortcut-onset flag.
pub fn sweep_table(report: &SweepReport) -> String {
    let mut text = format!("{},{SUMMARY_HEADER},sw_onset\n", report.axis);
    for row in &report.rows {
        text.push_str(&format!("{},{},{}\n", row.value, summary_line(&row.summary), row.sw_onset));
    }
    text
}
