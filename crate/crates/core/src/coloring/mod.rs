//! The geometric block colouring, its two canonical matchings, the
//! interleaving order `f` and the density profile of a matching along `f`.
//!
//! Blocks `A_0, A_1, …` are consecutive runs of vertices with `|A_i| = ⌊q^i⌋`.
//! An edge is red when the smaller of its endpoints' block indices is odd,
//! and a vertex is red when its own block index is odd.

mod growth;
mod profile;
pub mod quadratic;
mod reorder;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graphmodel::{Color, SimpleForest, TotalColoredGraph, Vertex};

pub use growth::{cmp_density_bound, density_bound_f64, minimize_density_bound, BoundValue, GrowthRate};
pub use profile::{
    density_profile, sweep_q, write_breakpoints_csv, write_profile_csv, write_sweep_csv, Breakpoint,
    DensityProfile, SweepRow,
};
pub use quadratic::{QuadraticInt, SurdRational};
pub use reorder::{ell_b, ell_b_closed_form, ell_r, ell_r_closed_form, Reordering, StarStop};

/// Colour attached to block index `i`.
pub fn level_color(i: usize) -> Color {
    if i % 2 == 1 {
        Color::Red
    } else {
        Color::Blue
    }
}

/// A prefix of the geometric colouring ending at a block boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricColoring {
    q: GrowthRate,
    sizes: Vec<usize>,
    /// `starts[i]` is the first vertex of `A_i`; the last entry is `n + 1`.
    starts: Vec<usize>,
}

impl GeometricColoring {
    /// Smallest prefix made of whole blocks with at least `n_min` vertices.
    pub fn build(q: GrowthRate, n_min: usize) -> Result<Self> {
        if !q.is_greater_than_one() {
            return Err(Error::precondition(format!("growth rate {q} must exceed 1")));
        }
        if n_min == 0 {
            return Err(Error::precondition("n_min must be at least 1"));
        }
        let mut sizes = Vec::new();
        let mut starts = vec![1usize];
        let mut n = 0usize;
        while n < n_min {
            let i = u32::try_from(sizes.len()).map_err(|_| Error::Overflow("block index".into()))?;
            let size = usize::try_from(q.floor_pow(i)?)
                .map_err(|_| Error::Overflow(format!("size of block {i}")))?;
            n = n
                .checked_add(size)
                .ok_or_else(|| Error::Overflow("prefix length".into()))?;
            sizes.push(size);
            starts.push(n + 1);
        }
        Ok(GeometricColoring { q, sizes, starts })
    }

    /// Prefix consisting of exactly `blocks` blocks.
    pub fn with_blocks(q: GrowthRate, blocks: usize) -> Result<Self> {
        if blocks == 0 {
            return Err(Error::precondition("at least one block is required"));
        }
        let mut n = 0usize;
        for i in 0..blocks {
            let i = u32::try_from(i).map_err(|_| Error::Overflow("block index".into()))?;
            let size = usize::try_from(q.floor_pow(i)?)
                .map_err(|_| Error::Overflow(format!("size of block {i}")))?;
            n = n
                .checked_add(size)
                .ok_or_else(|| Error::Overflow("prefix length".into()))?;
        }
        let c = GeometricColoring::build(q, n)?;
        debug_assert_eq!(c.num_levels(), blocks);
        Ok(c)
    }

    /// Fewest whole blocks such that the vertices `1..=n` avoid the last
    /// block.
    pub fn covering(q: GrowthRate, n: usize) -> Result<Self> {
        let mut blocks = 1;
        loop {
            let c = GeometricColoring::with_blocks(q, blocks)?;
            if c.starts[c.num_levels() - 1] > n {
                return Ok(c);
            }
            blocks += 1;
        }
    }

    pub fn q(&self) -> GrowthRate {
        self.q
    }

    pub fn n(&self) -> usize {
        self.starts[self.sizes.len()] - 1
    }

    pub fn num_levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// First vertex of each block, followed by `n + 1`.
    pub fn block_starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn block(&self, i: usize) -> std::ops::Range<Vertex> {
        self.starts[i]..self.starts[i + 1]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.n()).contains(&v)
    }

    /// Block index of `v`. Panics if `v` is outside `[n]`.
    pub fn level(&self, v: Vertex) -> usize {
        assert!(self.contains(v), "vertex {v} outside 1..={}", self.n());
        self.starts.partition_point(|&s| s <= v) - 1
    }

    pub fn vertex_color(&self, v: Vertex) -> Color {
        level_color(self.level(v))
    }

    pub fn edge_color(&self, u: Vertex, v: Vertex) -> Result<Color> {
        for w in [u, v] {
            if !self.contains(w) {
                return Err(Error::precondition(format!(
                    "vertex {w} outside 1..={}",
                    self.n()
                )));
            }
        }
        if u == v {
            return Err(Error::precondition(format!("no loop at vertex {u}")));
        }
        Ok(level_color(self.level(u).min(self.level(v))))
    }

    /// The prefix as a complete totally coloured graph.
    pub fn to_total_graph(&self) -> Result<TotalColoredGraph> {
        let levels: Vec<usize> = (1..=self.n()).map(|v| self.level(v)).collect();
        TotalColoredGraph::complete_from_fn(
            self.n(),
            |v| level_color(levels[v - 1]),
            |u, v| level_color(levels[u - 1].min(levels[v - 1])),
        )
    }

    /// `M_r` pairs `A_{2i-1}` with the start of `A_{2i}`, `M_b` pairs `A_{2i}`
    /// with the start of `A_{2i+1}`. Pairs reaching past the last block are
    /// dropped.
    pub fn matchings(&self) -> Result<(BlockMatching, BlockMatching)> {
        let mut red = BlockMatching::empty(Color::Red, self.n());
        let mut blue = BlockMatching::empty(Color::Blue, self.n());
        for i in 0..self.num_levels().saturating_sub(1) {
            let m = if level_color(i) == Color::Red {
                &mut red
            } else {
                &mut blue
            };
            let (lo, hi) = (self.starts[i], self.starts[i + 1]);
            if self.sizes[i] > self.sizes[i + 1] {
                return Err(Error::invariant(format!(
                    "block {i} is larger than block {}",
                    i + 1
                )));
            }
            for d in 0..self.sizes[i] {
                m.push(lo + d, hi + d);
            }
        }
        for m in [&red, &blue] {
            for &(u, v) in &m.pairs {
                if self.edge_color(u, v)? != m.color {
                    return Err(Error::invariant(format!(
                        "{} matching pair {u} {v} has the wrong colour",
                        m.color
                    )));
                }
            }
        }
        Ok((red, blue))
    }
}

/// One of the two canonical matchings of a geometric prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatching {
    color: Color,
    pairs: Vec<(Vertex, Vertex)>,
    covered: Vec<bool>,
}

impl BlockMatching {
    fn empty(color: Color, n: usize) -> Self {
        BlockMatching {
            color,
            pairs: Vec::new(),
            covered: vec![false; n + 1],
        }
    }

    fn push(&mut self, u: Vertex, v: Vertex) {
        self.covered[u] = true;
        self.covered[v] = true;
        self.pairs.push((u, v));
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.covered.get(v).copied().unwrap_or(false)
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// The matching viewed as a simple forest without isolated vertices.
    pub fn to_forest(&self) -> SimpleForest {
        SimpleForest {
            color: self.color,
            edges: self.pairs.clone(),
            isolated: Vec::new(),
        }
    }
}
