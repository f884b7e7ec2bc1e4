//! Communication graphs: random geometric graphs, shortcut-augmented
//! ("small-world") RGGs, square lattices and complete graphs.
//!
//! All generators produce a [`Graph`] with sorted, duplicate-free, symmetric
//! neighbor lists. A `Graph` is immutable once built and can be shared across
//! simulation workers.

mod io;
mod rgg;
mod shortcuts;

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub use self::io::{read_edge_list, write_edge_list};
pub use self::rgg::{generate_connected_rgg, generate_rgg, ConnectivityPolicy, RggRealization};
pub use self::shortcuts::{add_shortcuts, SwConfig};

use crate::error::{Error, Result};

pub type NodeId = u32;

/// A node position inside the `L x L` box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Torus with minimum-image distances.
    Periodic,
    /// Plain Euclidean distances inside the box.
    Free,
}

impl Boundary {
    pub fn as_str(self) -> &'static str {
        match self {
            Boundary::Periodic => "periodic",
            Boundary::Free => "free",
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(Boundary::Periodic),
            "free" => Ok(Boundary::Free),
            other => Err(Error::param(format!("unknown boundary `{other}`"))),
        }
    }
}

/// How the interaction range of an RGG is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Range {
    Radius(f64),
    /// Target average degree; the radius follows from `k = rho * pi * R^2`.
    AvgDegree(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RggConfig {
    pub n: usize,
    pub box_length: f64,
    pub range: Range,
    pub boundary: Boundary,
}

impl RggConfig {
    pub fn new(n: usize, box_length: f64, range: Range, boundary: Boundary) -> Self {
        RggConfig { n, box_length, range, boundary }
    }

    /// Builds a config from a node density `rho = n / L^2` instead of a box side.
    pub fn with_density(n: usize, density: f64, range: Range, boundary: Boundary) -> Result<Self> {
        if !(density > 0.0) || !density.is_finite() {
            return Err(Error::param(format!("density must be positive, got {density}")));
        }
        Ok(RggConfig::new(n, (n as f64 / density).sqrt(), range, boundary))
    }

    pub fn density(&self) -> f64 {
        self.n as f64 / (self.box_length * self.box_length)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::param("RGG needs at least one node"));
        }
        if !(self.box_length > 0.0) || !self.box_length.is_finite() {
            return Err(Error::param(format!("box length must be positive, got {}", self.box_length)));
        }
        match self.range {
            Range::Radius(r) if !(r > 0.0) || !r.is_finite() => {
                Err(Error::param(format!("radius must be positive, got {r}")))
            }
            Range::AvgDegree(k) if !(k > 0.0) || !k.is_finite() => {
                Err(Error::param(format!("average degree must be positive, got {k}")))
            }
            _ => Ok(()),
        }
    }

    /// Connection radius, derived from the target degree when needed.
    pub fn radius(&self) -> Result<f64> {
        self.validate()?;
        match self.range {
            Range::Radius(r) => Ok(r),
            Range::AvgDegree(k) => radius_for_degree(k, self.density()),
        }
    }
}

/// Radius giving average degree `avg_degree` at node density `density`,
/// from `k = rho * pi * R^2`.
pub fn radius_for_degree(avg_degree: f64, density: f64) -> Result<f64> {
    if !(avg_degree > 0.0) || !(density > 0.0) {
        return Err(Error::param(format!("degree and density must be positive (k = {avg_degree}, rho = {density})")));
    }
    Ok((avg_degree / (PI * density)).sqrt())
}

/// Undirected simple graph with optional spatial embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    positions: Option<Vec<Point2D>>,
    box_length: Option<f64>,
    boundary: Option<Boundary>,
    shortcut_edges: Vec<(NodeId, NodeId)>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops and out-of-range ids are
    /// rejected; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::param(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at node {u}")));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Ok(Graph::from_adjacency(adjacency))
    }

    /// Sorts and deduplicates every neighbor list.
    pub(crate) fn from_adjacency(mut adjacency: Vec<Vec<NodeId>>) -> Self {
        let mut total = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        Graph {
            adjacency,
            edge_count: total / 2,
            positions: None,
            box_length: None,
            boundary: None,
            shortcut_edges: Vec::new(),
        }
    }

    pub(crate) fn with_embedding(mut self, positions: Vec<Point2D>, box_length: f64, boundary: Boundary) -> Self {
        debug_assert_eq!(positions.len(), self.adjacency.len());
        self.positions = Some(positions);
        self.box_length = Some(box_length);
        self.boundary = Some(boundary);
        self
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node as usize]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node as usize].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn positions(&self) -> Option<&[Point2D]> {
        self.positions.as_deref()
    }

    pub fn box_length(&self) -> Option<f64> {
        self.box_length
    }

    pub fn boundary(&self) -> Option<Boundary> {
        self.boundary
    }

    pub fn shortcut_edges(&self) -> &[(NodeId, NodeId)] {
        &self.shortcut_edges
    }

    pub fn is_spatial(&self) -> bool {
        self.positions.is_some()
    }

    /// Iterates every edge once as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as NodeId;
            list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Measured average degree `2K / N`.
    pub fn measured_avg_degree(&self) -> f64 {
        if self.adjacency.is_empty() {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / self.adjacency.len() as f64
    }

    /// Inserts an edge known to be absent, keeping neighbor lists sorted.
    pub(crate) fn insert_edge(&mut self, u: NodeId, v: NodeId) {
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adjacency[a as usize];
            let at = list.binary_search(&b).unwrap_err();
            list.insert(at, b);
        }
        self.edge_count += 1;
    }

    pub(crate) fn push_shortcut(&mut self, u: NodeId, v: NodeId) {
        self.shortcut_edges.push((u.min(v), u.max(v)));
    }

    /// Subgraph induced by `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Graph {
        let mut relabel = vec![NodeId::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            relabel[old as usize] = new as NodeId;
        }
        let adjacency = nodes
            .iter()
            .map(|&old| {
                self.neighbors(old).iter().map(|&v| relabel[v as usize]).filter(|&v| v != NodeId::MAX).collect()
            })
            .collect();
        let mut sub = Graph::from_adjacency(adjacency);
        if let (Some(pos), Some(l), Some(b)) = (&self.positions, self.box_length, self.boundary) {
            let pos = nodes.iter().map(|&old| pos[old as usize]).collect();
            sub = sub.with_embedding(pos, l, b);
        }
        sub.shortcut_edges = self
            .shortcut_edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (relabel[u as usize], relabel[v as usize]);
                (a != NodeId::MAX && b != NodeId::MAX).then(|| (a.min(b), a.max(b)))
            })
            .collect();
        sub
    }

    /// Checks every structural invariant; used by tests and the edge-list reader.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        let mut total = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::topology(format!("neighbor list of {u} not strictly sorted")));
            }
            for &v in list {
                if v as usize >= n {
                    return Err(Error::topology(format!("neighbor {v} of {u} out of range")));
                }
                if v as usize == u {
                    return Err(Error::topology(format!("self-loop at {u}")));
                }
                if !self.has_edge(v, u as NodeId) {
                    return Err(Error::topology(format!("edge ({u}, {v}) is not symmetric")));
                }
            }
            total += list.len();
        }
        if total != 2 * self.edge_count {
            return Err(Error::topology("edge count does not match neighbor lists"));
        }
        for &(u, v) in &self.shortcut_edges {
            if u == v || (u as usize) >= n || (v as usize) >= n || !self.has_edge(u, v) {
                return Err(Error::topology(format!("shortcut ({u}, {v}) missing from adjacency")));
            }
        }
        if let Some(pos) = &self.positions {
            if pos.len() != n {
                return Err(Error::topology("position count does not match node count"));
            }
        }
        Ok(())
    }
}

/// 2-d square lattice with 4 nearest neighbors, `side * side` nodes.
/// Node `(row, col)` has id `row * side + col`.
pub fn generate_lattice_2d(side: usize, periodic: bool) -> Result<Graph> {
    if side < 2 {
        return Err(Error::param(format!("lattice side must be at least 2, got {side}")));
    }
    let id = |r: usize, c: usize| (r * side + c) as NodeId;
    let mut edges = Vec::with_capacity(2 * side * side);
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((id(r, c), id(r, c + 1)));
            } else if periodic {
                edges.push((id(r, c), id(r, 0)));
            }
            if r + 1 < side {
                edges.push((id(r, c), id(r + 1, c)));
            } else if periodic {
                edges.push((id(r, c), id(0, c)));
            }
        }
    }
    Graph::from_edges(side * side, edges)
}

pub fn generate_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("complete graph needs at least one node"));
    }
    let adjacency = (0..n as NodeId).map(|u| (0..n as NodeId).filter(|&v| v != u).collect()).collect();
    Ok(Graph::from_adjacency(adjacency))
}

/// Connected components, largest first (ties broken by smallest member id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    members: Vec<Vec<NodeId>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn giant(&self) -> &[NodeId] {
        self.members.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = &[NodeId]> {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

pub fn connected_components(graph: &Graph) -> Components {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start as NodeId);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in graph.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }
    // stable sort keeps discovery order (smallest id first) among equal sizes
    members.sort_by_key(|c| std::cmp::Reverse(c.len()));
    Components { members }
}

pub fn is_connected(graph: &Graph) -> bool {
    graph.node_count() <= 1 || connected_components(graph).count() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_for_degree_values() {
        assert!((radius_for_degree(PI, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((radius_for_degree(4.5, 1.0).unwrap() - 1.196_826_841_204_298).abs() < 1e-12);
        assert!((radius_for_degree(12.0, 1.0).unwrap() - 1.954_410_047_611_679_7).abs() < 1e-12);
        assert!(radius_for_degree(0.0, 1.0).is_err());
        assert!(radius_for_degree(1.0, -1.0).is_err());
    }

    #[test]
    fn lattice_counts() {
        let g = generate_lattice_2d(2, true).unwrap();
        assert_eq!(g.node_count(), 4);
        assert!((0..4).all(|u| g.degree(u) == 2));

        let g = generate_lattice_2d(3, true).unwrap();
        assert_eq!(g.node_count(), 9);
        assert_eq!(g.edge_count(), 18);
        assert!((0..9).all(|u| g.degree(u) == 4));
        assert_eq!(g.measured_avg_degree(), 4.0);

        let g = generate_lattice_2d(3, false).unwrap();
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.degree(4), 4);
        g.validate().unwrap();

        assert!(generate_lattice_2d(1, true).is_err());
    }

    #[test]
    fn complete_counts() {
        assert_eq!(generate_complete(1).unwrap().edge_count(), 0);
        assert_eq!(generate_complete(4).unwrap().edge_count(), 6);
        assert_eq!(generate_complete(32).unwrap().edge_count(), 496);
        assert_eq!(generate_complete(4).unwrap().measured_avg_degree(), 3.0);
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(3, []).unwrap();
        let c = connected_components(&g);
        assert_eq!(c.sizes(), vec![1, 1, 1]);
        assert_eq!(g.measured_avg_degree(), 0.0);

        assert_eq!(connected_components(&generate_complete(5).unwrap()).count(), 1);

        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (4, 5), (5, 6), (6, 4)]).unwrap();
        let c = connected_components(&g);
        assert_eq!(c.sizes(), vec![3, 3, 1]);
        assert_eq!(c.giant(), &[0, 1, 2]);
        assert!(!is_connected(&g));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::from_edges(5, [(0, 1), (1, 3), (3, 4), (2, 4)]).unwrap();
        let sub = g.induced_subgraph(&[1, 3, 4]);
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        sub.validate().unwrap();
    }
}
