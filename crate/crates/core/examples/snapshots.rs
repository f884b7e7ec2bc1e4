//! One run on a free-boundary RGG with vocabulary snapshots, printed as a
//! coarse character map of the dominant words.
//!
//! `cargo run --release --example snapshots -- [n]`

use std::collections::HashMap;

use naming_rgg::experiment::{run_single, ExperimentConfig, SnapshotRecord};

const COLS: usize = 48;
const ROWS: usize = 20;

fn render(snap: &SnapshotRecord) {
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for r in &snap.rows {
        *counts.entry(r.word).or_default() += 1;
    }
    let mut ranked: Vec<_> = counts.into_iter().filter(|(w, _)| *w >= 0).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let glyph: HashMap<i64, char> =
        ranked.iter().zip("ABCDEFGHIJKLMNOPQRSTUVWXYZ".chars()).map(|(w, c)| (w.0, c)).collect();

    let mut grid = vec![[' '; COLS]; ROWS];
    for r in &snap.rows {
        let cx = ((r.x / snap.box_length) * COLS as f64) as usize;
        let cy = ((r.y / snap.box_length) * ROWS as f64) as usize;
        let c = if r.vocab_size > 1 { '+' } else { *glyph.get(&r.word).unwrap_or(&'.') };
        grid[cy.min(ROWS - 1)][cx.min(COLS - 1)] = c;
    }
    for row in grid {
        println!("  |{}|", row.iter().collect::<String>());
    }
}

fn main() -> naming_rgg::Result<()> {
    let n = std::env::args().nth(1).unwrap_or_else(|| "1000".into());
    let mut cfg = ExperimentConfig::preset("fig1")?;
    cfg.set("topology.n", &n)?;
    let single = run_single(&cfg)?;
    for snap in &single.snapshots {
        println!("t={} (event at t={}): {} distinct words", snap.requested_t, snap.t, snap.distinct_words());
        render(snap);
    }
    match single.t_c {
        Some(t) => println!("consensus at t_c={t}"),
        None => println!("no consensus by t={}", cfg.max_time),
    }
    Ok(())
}
