//! Graph measurements: materialized adjacency, BFS, the all-pairs distance
//! index and cross-checks of the closed distance formulas.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{PointSet, SpaceDescriptor};

/// Distance sentinel for unreachable pairs.
pub const UNREACHABLE: u8 = u8::MAX;

/// Default cap on vertices for the all-pairs index (N² bytes).
pub const DEFAULT_INDEX_CAP: usize = 8192;

/// Simple undirected graph on `0..n` with sorted adjacency lists and an
/// adjacency bit matrix for constant-time edge tests.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    bits: Vec<u64>,
    words: usize,
}

impl Graph {
    fn from_lists(adj: Vec<Vec<u32>>) -> Self {
        let n = adj.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                bits[u * words + v as usize / 64] |= 1 << (v % 64);
            }
        }
        Graph { adj, bits, words }
    }

    /// Evaluates the space's adjacency oracle once per unordered pair.
    pub fn from_space(space: &PointSet) -> Self {
        let n = space.len();
        let upper: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|u| ((u + 1)..n).filter(|&v| space.adjacent(u, v)).map(|v| v as u32).collect())
            .collect();
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, list) in upper.iter().enumerate() {
            for &v in list {
                adj[u].push(v);
                adj[v as usize].push(u as u32);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph::from_lists(adj)
    }

    /// Synthetic graph from an edge list; loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpace("a graph needs at least one vertex".into()));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidSpace(format!("bad edge ({u},{v}) on {n} vertices")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph::from_lists(adj))
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v as usize > u).map(move |&v| (u, v as usize)))
    }
}

/// Shortest-path distances from `source`; [`UNREACHABLE`] where there is no path.
pub fn bfs_from(graph: &Graph, source: usize) -> Vec<u8> {
    let mut dist = vec![UNREACHABLE; graph.len()];
    bfs_into(graph, source, &mut dist);
    dist
}

fn bfs_into(graph: &Graph, source: usize, dist: &mut [u8]) {
    dist.fill(UNREACHABLE);
    dist[source] = 0;
    let mut frontier = vec![source as u32];
    let mut next = Vec::new();
    let mut level = 0u8;
    while !frontier.is_empty() {
        level += 1;
        for &u in &frontier {
            for &v in graph.neighbors(u as usize) {
                if dist[v as usize] == UNREACHABLE {
                    dist[v as usize] = level;
                    next.push(v);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
}

/// All-pairs distances with diameter and connectivity.
#[derive(Clone, Debug)]
pub struct DistanceIndex {
    graph: Graph,
    dist: Vec<u8>,
    diameter: usize,
    connected: bool,
}

impl DistanceIndex {
    pub fn build(graph: Graph) -> Result<Self> {
        Self::build_with_cap(graph, DEFAULT_INDEX_CAP)
    }

    pub fn build_with_cap(graph: Graph, cap: usize) -> Result<Self> {
        let n = graph.len();
        if n > cap {
            return Err(Error::PointCapExceeded { count: n as u128, cap });
        }
        let mut dist = vec![UNREACHABLE; n * n];
        dist.par_chunks_mut(n.max(1)).enumerate().for_each(|(s, row)| bfs_into(&graph, s, row));
        let connected = dist.iter().all(|&d| d != UNREACHABLE);
        let diameter = dist.iter().filter(|&&d| d != UNREACHABLE).copied().max().unwrap_or(0) as usize;
        Ok(DistanceIndex { graph, dist, diameter, connected })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    #[inline]
    pub fn d(&self, u: usize, v: usize) -> u8 {
        self.dist[u * self.graph.len() + v]
    }

    pub fn row(&self, u: usize) -> &[u8] {
        let n = self.graph.len();
        &self.dist[u * n..(u + 1) * n]
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Vertices at distance exactly `k` from `v`.
    pub fn shell(&self, v: usize, k: usize) -> Vec<usize> {
        self.row(v).iter().enumerate().filter(|&(_, &d)| d as usize == k).map(|(u, _)| u).collect()
    }

    /// `{ w : d(a,w) = 1 ∧ d(b,w) = 1 }`, ascending.
    pub fn common_neighbors(&self, a: usize, b: usize) -> Vec<usize> {
        self.graph.neighbors(a).iter().map(|&w| w as usize).filter(|&w| self.d(b, w) == 1).collect()
    }

    /// Ordered-pair counts per finite distance; unreachable pairs are left out.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for &d in &self.dist {
            if d != UNREACHABLE {
                *h.entry(d as u32).or_insert(0) += 1;
            }
        }
        h
    }

    pub fn unreachable_pairs(&self) -> u64 {
        self.dist.iter().filter(|&&d| d == UNREACHABLE).count() as u64
    }
}

/// Enumerated space plus its materialized graph and distance index.
pub fn build_index(space: &PointSet) -> Result<DistanceIndex> {
    build_index_with_cap(space, DEFAULT_INDEX_CAP)
}

pub fn build_index_with_cap(space: &PointSet, cap: usize) -> Result<DistanceIndex> {
    if space.len() > cap {
        return Err(Error::PointCapExceeded { count: space.len() as u128, cap });
    }
    DistanceIndex::build_with_cap(Graph::from_space(space), cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaMode {
    /// BFS distance must equal the closed formula for every pair.
    Exact,
    /// Symmetric matrices in characteristic 2, even n: only the diameter
    /// `n + 1` and the characterization of diameter pairs are asserted.
    CharTwoSymmetric,
    /// Nothing asserted; the joint census is reported.
    Descriptive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaViolation {
    pub x: usize,
    pub y: usize,
    pub bfs: u32,
    pub formula: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaReport {
    pub space: String,
    pub mode: FormulaMode,
    pub pass: bool,
    pub pairs_checked: u64,
    pub diameter: usize,
    pub expected_diameter: Option<usize>,
    pub first_violation: Option<FormulaViolation>,
    /// `(formula value, BFS distance) -> ordered pair count`.
    pub census: Vec<(u32, u32, u64)>,
}

/// Pair counts keyed by `(formula, bfs)`.
type Census = BTreeMap<(u32, u32), u64>;

/// Compares BFS distances against the closed formula of the geometry.
/// In [`FormulaMode::CharTwoSymmetric`] the formula value reported is
/// `rank(A − B)` and a violation is a pair where "distance is n + 1" and
/// "difference is alternate of rank n" disagree.
pub fn verify_distance_formula(space: &PointSet, index: &DistanceIndex) -> FormulaReport {
    let d = space.descriptor();
    let mode = match d {
        SpaceDescriptor::Rectangular { .. } | SpaceDescriptor::Grassmann { .. } => FormulaMode::Exact,
        SpaceDescriptor::Hermitian { involution, n } => {
            if involution.check_restrictions().both() {
                FormulaMode::Exact
            } else if d.is_char2_symmetric() && n % 2 == 0 {
                FormulaMode::CharTwoSymmetric
            } else {
                FormulaMode::Descriptive
            }
        }
    };
    let n_pts = space.len();
    let dim = match *d {
        SpaceDescriptor::Hermitian { n, .. } => n,
        _ => 0,
    };

    let rows: Vec<(Census, Option<FormulaViolation>)> = (0..n_pts)
        .into_par_iter()
        .map(|x| {
            let mut census = BTreeMap::new();
            let mut violation = None;
            for y in 0..n_pts {
                let bfs = index.d(x, y) as u32;
                let formula = space.formula_distance(x, y) as u32;
                *census.entry((formula, bfs)).or_insert(0u64) += 1;
                if violation.is_some() {
                    continue;
                }
                let bad = match mode {
                    FormulaMode::Exact => bfs != formula,
                    FormulaMode::CharTwoSymmetric => {
                        let diff = space.point(x).sub(space.point(y)).expect("same space");
                        let antipodal = diff.is_alternate().expect("square") && formula as usize == dim;
                        (bfs as usize == dim + 1) != antipodal
                    }
                    FormulaMode::Descriptive => false,
                };
                if bad {
                    violation = Some(FormulaViolation { x, y, bfs, formula });
                }
            }
            (census, violation)
        })
        .collect();

    let mut census = BTreeMap::new();
    let mut first_violation = None;
    for (row, v) in rows {
        for (k, c) in row {
            *census.entry(k).or_insert(0) += c;
        }
        if first_violation.is_none() {
            first_violation = v;
        }
    }
    let expected_diameter = d.expected_diameter();
    let diameter_ok = match mode {
        FormulaMode::Descriptive => true,
        _ => index.is_connected() && expected_diameter.is_none_or(|e| e == index.diameter()),
    };
    FormulaReport {
        space: d.to_string(),
        mode,
        pass: diameter_ok && first_violation.is_none(),
        pairs_checked: (n_pts * n_pts) as u64,
        diameter: index.diameter(),
        expected_diameter,
        first_violation,
        census: census.into_iter().map(|((f, b), c)| (f, b, c)).collect(),
    }
}
