#![allow(dead_code)]

pub mod markov;

use naming_rgg::topology::{Boundary, Graph, Point2D};

/// O(n^2) reference adjacency of a spatial graph.
pub fn brute_force_edges(positions: &[Point2D], l: f64, radius: f64, boundary: Boundary) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            let (a, b) = (positions[i], positions[j]);
            let (mut dx, mut dy) = ((a.x - b.x).abs(), (a.y - b.y).abs());
            if boundary == Boundary::Periodic {
                if dx > l / 2.0 {
                    dx = l - dx;
                }
                if dy > l / 2.0 {
                    dy = l - dy;
                }
            }
            if dx.hypot(dy) <= radius {
                edges.push((i as u32, j as u32));
            }
        }
    }
    edges
}

pub fn edge_vec(g: &Graph) -> Vec<(u32, u32)> {
    g.edges().collect()
}
