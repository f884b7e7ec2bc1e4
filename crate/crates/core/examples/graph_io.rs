//! Build a periodic RGG and a small-world variant, round-trip them through
//! the edge-list format, and print their basic statistics.
//!
//! `cargo run --release --example graph_io -- [n] [k]`

use naming_rgg::seed::realization_rng;
use naming_rgg::topology::{
    add_shortcuts, connected_components, generate_connected_rgg, read_edge_list, write_edge_list, Boundary,
    ConnectivityPolicy, Range, RggConfig, SwConfig,
};

fn main() -> naming_rgg::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(2000, |s| s.parse().expect("n"));
    let k: f64 = args.next().map_or(12.0, |s| s.parse().expect("k"));

    let cfg = RggConfig::with_density(n, 1.0, Range::AvgDegree(k), Boundary::Periodic)?;
    let mut rng = realization_rng(1, 0);
    let real = generate_connected_rgg(&cfg, ConnectivityPolicy::Regenerate, &mut rng)?;
    let graph = real.graph;
    println!(
        "rgg: n={} L={:.3} R={:.4} edges={} k_measured={:.3} attempts={}",
        graph.node_count(),
        cfg.box_length,
        cfg.radius()?,
        graph.edge_count(),
        graph.measured_avg_degree(),
        real.attempts
    );

    let graph = add_shortcuts(graph, SwConfig::new(0.05), &mut rng)?;
    println!(
        "sw-rgg: shortcuts={} edges={} components={}",
        graph.shortcut_edges().len(),
        graph.edge_count(),
        connected_components(&graph).count()
    );

    let mut buf = Vec::new();
    write_edge_list(&graph, &mut buf)?;
    let back = read_edge_list(buf.as_slice())?;
    assert_eq!(back.edges().collect::<Vec<_>>(), graph.edges().collect::<Vec<_>>());
    assert_eq!(back.shortcut_edges().len(), graph.shortcut_edges().len());
    println!("round trip ok ({} bytes)", buf.len());
    Ok(())
}
