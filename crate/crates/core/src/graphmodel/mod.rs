//! Ordered, totally 2-coloured graphs on `[n]` and the monochromatic forests
//! that live inside them.
//!
//! Vertices are the integers `1..=n` in their natural order. Each vertex and
//! each present edge carries a [`Color`]; a missing edge is simply absent
//! from the edge table, never a third colour.

mod forest;
pub mod io;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use forest::{ForestViolation, PathForest, SimpleForest};

pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn complement(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::Red),
            'B' => Some(Color::Blue),
            _ => None,
        }
    }

    fn code(self) -> u8 {
        match self {
            Color::Red => 1,
            Color::Blue => 2,
        }
    }

    fn from_code(code: u8) -> Option<Color> {
        match code {
            1 => Some(Color::Red),
            2 => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Red => f.write_str("red"),
            Color::Blue => f.write_str("blue"),
        }
    }
}

/// `|H ∩ [t]| / t` as an exact rational.
pub fn density_at(h: &BTreeSet<Vertex>, t: usize) -> Result<Ratio<u64>> {
    if t == 0 {
        return Err(Error::precondition("density horizon t must be at least 1"));
    }
    let count = h.range(1..=t).count();
    Ok(Ratio::new(count as u64, t as u64))
}

/// Index of the unordered pair `{u, v}` (`u < v`, both 1-based) in the
/// strictly lower-triangular edge table.
#[inline]
fn pair_index(u: Vertex, v: Vertex) -> usize {
    debug_assert!(u < v);
    (v - 1) * (v - 2) / 2 + (u - 1)
}

/// A graph on `[n]` with a colour on every vertex and on every present edge.
///
/// `alpha` bounds the number of non-neighbours of each vertex by `alpha * n`;
/// with `alpha = 0` the graph is complete.
#[derive(Clone, PartialEq, Eq)]
pub struct TotalColoredGraph {
    n: usize,
    vertex_colors: Vec<Color>,
    edges: Vec<u8>,
    alpha: Ratio<u64>,
}

impl fmt::Debug for TotalColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TotalColoredGraph")
            .field("n", &self.n)
            .field("alpha", &self.alpha)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl TotalColoredGraph {
    /// Complete graph with colours supplied by closures (`u < v` for edges).
    pub fn complete_from_fn(
        n: usize,
        mut vertex_color: impl FnMut(Vertex) -> Color,
        mut edge_color: impl FnMut(Vertex, Vertex) -> Color,
    ) -> Result<Self> {
        let mut builder = GraphBuilder::new((1..=n).map(&mut vertex_color).collect());
        for v in 2..=n {
            for u in 1..v {
                builder.set_edge(u, v, edge_color(u, v))?;
            }
        }
        builder.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> Ratio<u64> {
        self.alpha
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.n).contains(&v)
    }

    pub fn vertex_color(&self, v: Vertex) -> Color {
        self.vertex_colors[v - 1]
    }

    pub fn vertex_colors(&self) -> &[Color] {
        &self.vertex_colors
    }

    pub fn vertices_of(&self, color: Color) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| self.vertex_color(v) == color)
            .collect()
    }

    /// Colour of the edge `{u, v}`, or `None` when the edge is missing or
    /// `u == v`.
    pub fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        if u == v {
            return None;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        Color::from_code(self.edges[pair_index(a, b)])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_color(u, v).is_some()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.vertices().filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|&&c| c != 0).count()
    }

    /// Present edges as `(u, v, colour)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        (1..=self.n)
            .flat_map(move |u| (u + 1..=self.n).filter_map(move |v| self.edge_color(u, v).map(|c| (u, v, c))))
    }

    /// Largest number of non-neighbours (self excluded) allowed per vertex:
    /// `floor(alpha * n)`.
    pub fn max_missing_per_vertex(&self) -> usize {
        (self.alpha * Ratio::from_integer(self.n as u64))
            .floor()
            .to_integer() as usize
    }

    pub fn is_complete(&self) -> bool {
        self.edges.iter().all(|&c| c != 0)
    }

    /// Checks the minimum-degree invariant by a degree scan.
    pub fn check_degree_bound(&self) -> Result<()> {
        let allowed = self.max_missing_per_vertex();
        for v in self.vertices() {
            let missing = self.n - 1 - self.degree(v);
            if missing > allowed {
                return Err(Error::precondition(format!(
                    "vertex {v} misses {missing} edges, more than alpha*n = {}",
                    self.alpha * Ratio::from_integer(self.n as u64)
                )));
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`TotalColoredGraph`]. Edges start out
/// missing.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    vertex_colors: Vec<Color>,
    edges: Vec<u8>,
    alpha: Ratio<u64>,
}

impl GraphBuilder {
    pub fn new(vertex_colors: Vec<Color>) -> Self {
        let n = vertex_colors.len();
        GraphBuilder {
            vertex_colors,
            edges: vec![0; n * n.saturating_sub(1) / 2],
            alpha: Ratio::from_integer(0),
        }
    }

    pub fn alpha(mut self, alpha: Ratio<u64>) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn n(&self) -> usize {
        self.vertex_colors.len()
    }

    /// Sets the colour of `{u, v}`. Re-setting an edge is an error.
    pub fn set_edge(&mut self, u: Vertex, v: Vertex, color: Color) -> Result<()> {
        let n = self.n();
        if u == v {
            return Err(Error::precondition(format!("loop at vertex {u}")));
        }
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(Error::precondition(format!("vertex {w} out of range 1..={n}")));
            }
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let slot = &mut self.edges[pair_index(a, b)];
        if *slot != 0 {
            return Err(Error::precondition(format!("duplicate edge {a} {b}")));
        }
        *slot = color.code();
        Ok(())
    }

    pub fn build(self) -> Result<TotalColoredGraph> {
        if self.vertex_colors.is_empty() {
            return Err(Error::precondition("graph needs at least one vertex"));
        }
        if self.alpha >= Ratio::from_integer(1) {
            return Err(Error::precondition("alpha must lie in [0, 1)"));
        }
        let g = TotalColoredGraph {
            n: self.vertex_colors.len(),
            vertex_colors: self.vertex_colors,
            edges: self.edges,
            alpha: self.alpha,
        };
        g.check_degree_bound()?;
        Ok(g)
    }
}

/// Complete graph with independent uniform vertex and edge colours,
/// deterministic per `seed`.
pub fn complete_random_coloring(n: usize, seed: u64) -> Result<TotalColoredGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertex_colors: Vec<Color> = (0..n).map(|_| random_color(&mut rng)).collect();
    TotalColoredGraph::complete_from_fn(n, |v| vertex_colors[v - 1], |_, _| random_color(&mut rng))
}

fn random_color(rng: &mut impl Rng) -> Color {
    if rng.gen::<bool>() {
        Color::Red
    } else {
        Color::Blue
    }
}
