use rand::Rng;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Density of long-range links: `p` expected shortcuts per node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwConfig {
    pub shortcut_density: f64,
}

impl SwConfig {
    pub fn new(shortcut_density: f64) -> Self {
        SwConfig { shortcut_density }
    }

    /// Number of links added to an `n`-node graph, `round(p * n)`.
    pub fn shortcut_count(&self, n: usize) -> usize {
        (self.shortcut_density * n as f64).round() as usize
    }
}

/// Adds `round(p * n)` links between uniformly chosen, previously
/// non-adjacent pairs. Pairs are drawn by rejection; after `100 * m`
/// consecutive rejections the call fails.
pub fn add_shortcuts<R: Rng + ?Sized>(mut graph: Graph, sw: SwConfig, rng: &mut R) -> Result<Graph> {
    let p = sw.shortcut_density;
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::param(format!("shortcut density must be non-negative, got {p}")));
    }
    let n = graph.node_count();
    let m = sw.shortcut_count(n);
    if m == 0 {
        return Ok(graph);
    }
    let free_pairs = (n * n.saturating_sub(1) / 2).saturating_sub(graph.edge_count());
    if free_pairs < m {
        return Err(Error::topology(format!("cannot add {m} shortcuts: only {free_pairs} non-adjacent pairs")));
    }

    let max_rejections = 100 * m;
    let mut rejections = 0;
    let mut added = 0;
    while added < m {
        let u = rng.gen_range(0..n) as NodeId;
        let v = rng.gen_range(0..n) as NodeId;
        if u == v || graph.has_edge(u, v) {
            rejections += 1;
            if rejections >= max_rejections {
                return Err(Error::topology(format!(
                    "gave up after {rejections} consecutive rejections ({added} of {m} shortcuts placed)"
                )));
            }
            continue;
        }
        rejections = 0;
        graph.insert_edge(u, v);
        graph.push_shortcut(u, v);
        added += 1;
    }
    Ok(graph)
}
