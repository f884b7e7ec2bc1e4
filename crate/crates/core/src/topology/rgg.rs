use rand::Rng;

use super::{connected_components, Boundary, Graph, NodeId, Point2D, RggConfig};
use crate::error::{Error, Result};

/// Maximum number of fresh realizations tried under [`ConnectivityPolicy::Regenerate`].
pub const MAX_CONNECT_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConnectivityPolicy {
    /// Draw fresh positions until the graph is connected.
    #[default]
    Regenerate,
    /// Keep the first draw and restrict it to its largest component.
    GiantComponent,
}

/// A connected RGG together with how it was obtained.
#[derive(Debug, Clone)]
pub struct RggRealization {
    pub graph: Graph,
    /// Number of position draws used (1 unless regeneration kicked in).
    pub attempts: usize,
}

/// Squared distance between two points, using minimum-image wrapping on a torus.
#[inline]
fn dist2(a: Point2D, b: Point2D, box_length: f64, boundary: Boundary) -> f64 {
    let mut dx = (a.x - b.x).abs();
    let mut dy = (a.y - b.y).abs();
    if boundary == Boundary::Periodic {
        dx = dx.min(box_length - dx);
        dy = dy.min(box_length - dy);
    }
    dx * dx + dy * dy
}

fn uniform_coord<R: Rng + ?Sized>(rng: &mut R, box_length: f64) -> f64 {
    let x = rng.gen::<f64>() * box_length;
    // rounding can land exactly on L
    if x < box_length {
        x
    } else {
        0.0
    }
}

/// Places `n` nodes uniformly in the box and links every pair within the
/// connection radius.
pub fn generate_rgg<R: Rng + ?Sized>(config: &RggConfig, rng: &mut R) -> Result<Graph> {
    let radius = config.radius()?;
    let l = config.box_length;
    let positions: Vec<Point2D> = (0..config.n)
        .map(|_| {
            let x = uniform_coord(rng, l);
            let y = uniform_coord(rng, l);
            Point2D { x, y }
        })
        .collect();
    let adjacency = link_within_radius(&positions, l, radius, config.boundary);
    Ok(Graph::from_adjacency(adjacency).with_embedding(positions, l, config.boundary))
}

/// Cell-list neighbor search. Cells have side at least `radius`, so every
/// partner of a node lies in the 3x3 block of cells around it.
fn link_within_radius(positions: &[Point2D], l: f64, radius: f64, boundary: Boundary) -> Vec<Vec<NodeId>> {
    let n = positions.len();
    let r2 = radius * radius;
    let mut adjacency = vec![Vec::new(); n];
    let per_side = ((l / radius).floor() as usize).clamp(1, 1 << 12);

    // with fewer than 3 cells per side the periodic 3x3 block visits cells twice
    if per_side < 3 {
        for i in 0..n {
            for j in i + 1..n {
                if dist2(positions[i], positions[j], l, boundary) <= r2 {
                    adjacency[i].push(j as NodeId);
                    adjacency[j].push(i as NodeId);
                }
            }
        }
        return adjacency;
    }

    let cell_side = l / per_side as f64;
    let cell_of = |c: f64| ((c / cell_side) as usize).min(per_side - 1);
    let mut cells: Vec<Vec<NodeId>> = vec![Vec::new(); per_side * per_side];
    for (i, p) in positions.iter().enumerate() {
        cells[cell_of(p.y) * per_side + cell_of(p.x)].push(i as NodeId);
    }

    let side = per_side as isize;
    for i in 0..n {
        let p = positions[i];
        let (cx, cy) = (cell_of(p.x) as isize, cell_of(p.y) as isize);
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (mut nx, mut ny) = (cx + dx, cy + dy);
                match boundary {
                    Boundary::Periodic => {
                        nx = nx.rem_euclid(side);
                        ny = ny.rem_euclid(side);
                    }
                    Boundary::Free => {
                        if nx < 0 || ny < 0 || nx >= side || ny >= side {
                            continue;
                        }
                    }
                }
                for &j in &cells[(ny * side + nx) as usize] {
                    if (j as usize) > i && dist2(p, positions[j as usize], l, boundary) <= r2 {
                        adjacency[i].push(j);
                        adjacency[j as usize].push(i as NodeId);
                    }
                }
            }
        }
    }
    adjacency
}

/// Generates an RGG and enforces connectivity according to `policy`.
pub fn generate_connected_rgg<R: Rng + ?Sized>(
    config: &RggConfig,
    policy: ConnectivityPolicy,
    rng: &mut R,
) -> Result<RggRealization> {
    match policy {
        ConnectivityPolicy::Regenerate => {
            for attempts in 1..=MAX_CONNECT_ATTEMPTS {
                let graph = generate_rgg(config, rng)?;
                if connected_components(&graph).count() <= 1 {
                    return Ok(RggRealization { graph, attempts });
                }
            }
            Err(Error::topology(format!(
                "no connected RGG after {MAX_CONNECT_ATTEMPTS} attempts (n = {}, L = {}, range = {:?})",
                config.n, config.box_length, config.range
            )))
        }
        ConnectivityPolicy::GiantComponent => {
            let graph = generate_rgg(config, rng)?;
            let comps = connected_components(&graph);
            let graph = if comps.count() <= 1 { graph } else { graph.induced_subgraph(comps.giant()) };
            Ok(RggRealization { graph, attempts: 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::topology::Range;

    #[test]
    fn single_node_has_no_edges() {
        let cfg = RggConfig::new(1, 1.0, Range::Radius(5.0), Boundary::Periodic);
        let g = generate_rgg(&cfg, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.positions().unwrap().len(), 1);
    }

    #[test]
    fn two_nodes_always_linked_beyond_max_torus_distance() {
        let l = 3.0;
        let cfg = RggConfig::new(2, l, Range::Radius(l * 2f64.sqrt() / 2.0), Boundary::Periodic);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            assert_eq!(generate_rgg(&cfg, &mut rng).unwrap().edge_count(), 1);
        }
    }

    #[test]
    fn positions_inside_box() {
        let cfg = RggConfig::new(500, 7.5, Range::AvgDegree(6.0), Boundary::Free);
        let g = generate_rgg(&cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert!(g.positions().unwrap().iter().all(|p| (0.0..7.5).contains(&p.x) && (0.0..7.5).contains(&p.y)));
        g.validate().unwrap();
    }

    #[test]
    fn giant_component_policy_yields_connected_graph() {
        // below the percolation degree the first draw is almost surely fragmented
        let cfg = RggConfig::with_density(400, 1.0, Range::AvgDegree(3.0), Boundary::Periodic).unwrap();
        let real = generate_connected_rgg(&cfg, ConnectivityPolicy::GiantComponent, &mut ChaCha8Rng::seed_from_u64(4))
            .unwrap();
        assert!(real.graph.node_count() < 400);
        assert_eq!(connected_components(&real.graph).count(), 1);
        real.graph.validate().unwrap();
    }

    #[test]
    fn regenerate_policy_gives_up() {
        let cfg = RggConfig::with_density(400, 1.0, Range::AvgDegree(1.0), Boundary::Periodic).unwrap();
        let err = generate_connected_rgg(&cfg, ConnectivityPolicy::Regenerate, &mut ChaCha8Rng::seed_from_u64(5));
        assert!(matches!(err, Err(Error::Topology(_))));
    }

    #[test]
    fn invalid_config() {
        let cfg = RggConfig::new(0, 1.0, Range::Radius(1.0), Boundary::Free);
        assert!(generate_rgg(&cfg, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        let cfg = RggConfig::new(3, 1.0, Range::Radius(-1.0), Boundary::Free);
        assert!(generate_rgg(&cfg, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }
}
