//! Brute-force ground truth for small instances.

mod faithful;
mod gg;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::extract::{konig_certificate, BipartiteGraph};
use crate::graphmodel::{Color, SimpleForest, TotalColoredGraph, Vertex};

pub use faithful::{
    faithfulness_check, faithfulness_check_prefix, FaithfulnessReport, FaithfulnessViolation,
    DEFAULT_FAITHFULNESS_CAP,
};
pub use gg::{gg_bound, gg_verify, EdgeColoring, GgMode, GgReport, EXHAUSTIVE_MAX_N};

pub const DEFAULT_PATH_CAP: usize = 20;
/// Bitmask tables are indexed by `u32`.
const HARD_CAP: usize = 26;

/// A longest monochromatic path, as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoPath {
    pub color: Color,
    pub path: Vec<Vertex>,
}

impl MonoPath {
    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// True when consecutive vertices are joined by edges of the path colour
    /// and no vertex repeats.
    pub fn is_valid_in(&self, g: &TotalColoredGraph) -> bool {
        let distinct: BTreeSet<_> = self.path.iter().collect();
        distinct.len() == self.path.len()
            && self.path.iter().all(|&v| g.contains(v))
            && self
                .path
                .windows(2)
                .all(|w| g.edge_color(w[0], w[1]) == Some(self.color))
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if cap > HARD_CAP {
        return Err(Error::precondition(format!(
            "cap {cap} exceeds the supported {HARD_CAP}"
        )));
    }
    if n > cap {
        return Err(Error::precondition(format!("n = {n} exceeds the cap {cap}")));
    }
    Ok(())
}

/// `reach[S]` has bit `v` set when some path with vertex set `S` ends at `v`.
/// Vertices are bit indices `0..n`.
pub(crate) fn path_reach(adj: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for s in 1..reach.len() {
        let mut ends = reach[s];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut ext = adj[v] & !(s as u32);
            while ext != 0 {
                let u = ext.trailing_zeros();
                ext &= ext - 1;
                reach[s | 1 << u] |= 1 << u;
            }
        }
    }
    reach
}

/// Walks back from `(set, end)` to a path with that vertex set.
pub(crate) fn reconstruct(reach: &[u32], adj: &[u32], mut set: u32, mut end: usize) -> Vec<usize> {
    let mut path = vec![end];
    while set.count_ones() > 1 {
        let rest = set & !(1 << end);
        let prev = reach[rest as usize] & adj[end];
        debug_assert!(prev != 0);
        end = prev.trailing_zeros() as usize;
        set = rest;
        path.push(end);
    }
    path.reverse();
    path
}

fn color_adjacency(g: &TotalColoredGraph, color: Color) -> Vec<u32> {
    let n = g.n();
    (1..=n)
        .map(|v| {
            (1..=n)
                .filter(|&u| g.edge_color(u, v) == Some(color))
                .fold(0u32, |m, u| m | 1 << (u - 1))
        })
        .collect()
}

/// Longest path using only `color` edges; vertex colours play no role. A
/// single vertex is a path, so the answer is at least 1 for `n ≥ 1`.
pub fn longest_mono_path(g: &TotalColoredGraph, color: Color, cap: usize) -> Result<MonoPath> {
    check_cap(g.n(), cap)?;
    if g.n() == 0 {
        return Ok(MonoPath {
            color,
            path: Vec::new(),
        });
    }
    let adj = color_adjacency(g, color);
    let reach = path_reach(&adj);
    let (set, ends) = reach
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .max_by_key(|(s, _)| (s.count_ones(), std::cmp::Reverse(*s)))
        .expect("singletons are reachable");
    let end = ends.trailing_zeros() as usize;
    let path = reconstruct(&reach, &adj, set as u32, end)
        .into_iter()
        .map(|v| v + 1)
        .collect();
    Ok(MonoPath { color, path })
}

/// Maximum `|V(F) ∩ [t]|` over simple forests `F` of `color`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalForest {
    pub coverage: usize,
    pub forest: SimpleForest,
}

/// Every `color` vertex in `[t]` can be taken as an isolated vertex; the
/// other vertices in `[t]` are covered only through a `color` edge to a
/// vertex of colour `color`, disjoint from the other such edges. The optimum
/// is therefore the number of `color` vertices in `[t]` plus a maximum
/// matching between the remaining vertices of `[t]` and the `color` vertices.
pub fn optimal_simple_forest(g: &TotalColoredGraph, color: Color, t: usize) -> Result<OptimalForest> {
    if t > g.n() {
        return Err(Error::precondition(format!("t = {t} exceeds n = {}", g.n())));
    }
    let others: Vec<Vertex> = (1..=t).filter(|&v| g.vertex_color(v) != color).collect();
    let own = g.vertices_of(color);
    let mut bip = BipartiteGraph::new(others.len(), own.len());
    for (i, &u) in others.iter().enumerate() {
        for (j, &v) in own.iter().enumerate() {
            if g.edge_color(u, v) == Some(color) {
                bip.add_edge(i, j)?;
            }
        }
    }
    let cert = konig_certificate(&bip);
    let edges: Vec<(Vertex, Vertex)> = cert.matching.iter().map(|&(i, j)| (others[i], own[j])).collect();
    let matched: BTreeSet<Vertex> = edges.iter().map(|e| e.1).collect();
    let isolated = own
        .iter()
        .copied()
        .filter(|&v| v <= t && !matched.contains(&v))
        .collect();
    let forest = SimpleForest {
        color,
        edges,
        isolated,
    };
    let coverage = forest.vertex_set().range(..=t).count();
    Ok(OptimalForest { coverage, forest })
}
