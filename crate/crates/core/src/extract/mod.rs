//! Dense monochromatic simple forests from the blue-degree sequence of the
//! red vertices.
//!
//! Only edges between a red and a blue vertex are used. For a red vertex
//! `v`, `d_b(v)` counts its blue edges to blue vertices; sorting these gives
//! `a_1 ≤ … ≤ a_{|R|}`. Depending on where that sequence sits relative to
//! the diagonal, a greedy blue matching or a König red matching covers
//! almost every vertex of an initial segment `[ℓ + t]`.

mod certificate;
mod konig;
mod pipeline;

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graphmodel::{density_at, Color, SimpleForest, TotalColoredGraph, Vertex};
use crate::sequences::{ell_minus, ell_plus, oscillation, OscillationSequence};

pub use certificate::{read_certificate, write_certificate, ForestCertificate};
pub use konig::{konig_certificate, BipartiteGraph, KonigCertificate};
pub use pipeline::{simple_forest_pipeline, PipelineReport, PipelineRoute};

/// The red–blue edges of a totally coloured graph, split by side.
#[derive(Debug, Clone)]
pub struct BipartiteReduction<'g> {
    source: &'g TotalColoredGraph,
    red: Vec<Vertex>,
    blue: Vec<Vertex>,
}

/// A König certificate on a sub-reduction, with indices mapped back to
/// vertices.
#[derive(Debug, Clone)]
pub struct SideCertificate {
    pub graph: BipartiteGraph,
    pub certificate: KonigCertificate,
    pub reds: Vec<Vertex>,
    pub blues: Vec<Vertex>,
}

impl SideCertificate {
    /// Matching edges as `(red vertex, blue vertex)`.
    pub fn matching(&self) -> Vec<(Vertex, Vertex)> {
        self.certificate
            .matching
            .iter()
            .map(|&(u, v)| (self.reds[u], self.blues[v]))
            .collect()
    }

    pub fn cover_red(&self) -> Vec<Vertex> {
        self.certificate
            .cover_left
            .iter()
            .map(|&u| self.reds[u])
            .collect()
    }

    pub fn cover_blue(&self) -> Vec<Vertex> {
        self.certificate
            .cover_right
            .iter()
            .map(|&v| self.blues[v])
            .collect()
    }

    pub fn cover_size(&self) -> usize {
        self.certificate.cover_size()
    }
}

impl<'g> BipartiteReduction<'g> {
    pub fn new(source: &'g TotalColoredGraph) -> Self {
        BipartiteReduction {
            source,
            red: source.vertices_of(Color::Red),
            blue: source.vertices_of(Color::Blue),
        }
    }

    pub fn source(&self) -> &TotalColoredGraph {
        self.source
    }

    pub fn red_side(&self) -> &[Vertex] {
        &self.red
    }

    pub fn blue_side(&self) -> &[Vertex] {
        &self.blue
    }

    /// Red–blue edges of one colour, or `None` for a pair of the same
    /// vertex colour.
    pub fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        if self.source.vertex_color(u) == self.source.vertex_color(v) {
            None
        } else {
            self.source.edge_color(u, v)
        }
    }

    /// Edges of `color` between `reds` and `blues` as a bipartite graph.
    pub fn colored_graph(&self, color: Color, reds: &[Vertex], blues: &[Vertex]) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(reds.len(), blues.len());
        for (i, &r) in reds.iter().enumerate() {
            for (j, &b) in blues.iter().enumerate() {
                if self.source.edge_color(r, b) == Some(color) {
                    g.add_edge(i, j).expect("indices are in range");
                }
            }
        }
        g
    }

    pub fn konig_on(&self, color: Color, reds: &[Vertex], blues: &[Vertex]) -> SideCertificate {
        let graph = self.colored_graph(color, reds, blues);
        let certificate = konig_certificate(&graph);
        SideCertificate {
            graph,
            certificate,
            reds: reds.to_vec(),
            blues: blues.to_vec(),
        }
    }

    /// Maximum matching and minimum vertex cover of the `color` edges.
    pub fn konig(&self, color: Color) -> SideCertificate {
        self.konig_on(color, &self.red, &self.blue)
    }

    /// `d_b(v)`: blue edges from the red vertex `v` to blue vertices.
    pub fn blue_degree(&self, v: Vertex) -> usize {
        self.blue
            .iter()
            .filter(|&&b| self.source.edge_color(v, b) == Some(Color::Blue))
            .count()
    }
}

/// `a_1 ≤ … ≤ a_{|R|}` together with the red vertex behind each entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    pub values: Vec<usize>,
    pub witness: Vec<Vertex>,
}

impl DegreeSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_i`, 1-based.
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn to_oscillation_sequence(&self) -> OscillationSequence {
        OscillationSequence::from_integers(&self.values).expect("sorted nonnegative integers")
    }
}

/// Sorted blue degrees of the red vertices, ties broken by vertex index.
pub fn degree_sequence(g: &TotalColoredGraph) -> Result<DegreeSequence> {
    let red = BipartiteReduction::new(g);
    if red.red_side().is_empty() {
        return Err(Error::precondition("the graph has no red vertices"));
    }
    let mut pairs: Vec<(usize, Vertex)> = red.red_side().iter().map(|&v| (red.blue_degree(v), v)).collect();
    pairs.sort();
    Ok(DegreeSequence {
        values: pairs.iter().map(|p| p.0).collect(),
        witness: pairs.iter().map(|p| p.1).collect(),
    })
}

fn check_side(g: &TotalColoredGraph, set: &[Vertex], color: Color) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &v in set {
        if !g.contains(v) || g.vertex_color(v) != color || !seen.insert(v) {
            return Err(Error::precondition(format!(
                "vertex {v} is not a distinct {color} vertex of the graph"
            )));
        }
    }
    Ok(())
}

fn alpha_n(g: &TotalColoredGraph) -> Ratio<u64> {
    g.alpha() * Ratio::from_integer(g.n() as u64)
}

/// Blue simple forest on `R' ∪ B` missing at most `t` vertices of it.
///
/// Requires `a_j > j − t` for `1 ≤ j ≤ |R'| − 1`. With `R'` ordered by blue
/// degree, `v_t, v_{t+1}, …, v_{|R'|−1}` are matched in that order to their
/// lowest unused blue neighbour; `v_j` has more than `j − t` blue neighbours
/// and only `j − t` are taken before it. Any other vertex of `R'` that can
/// still be matched is matched afterwards, and all remaining blue vertices
/// are isolated.
pub fn extract_blue_forest(g: &TotalColoredGraph, r_prime: &[Vertex], t: usize) -> Result<SimpleForest> {
    check_side(g, r_prime, Color::Red)?;
    if t == 0 {
        return Err(Error::precondition("t must be positive"));
    }
    let a = degree_sequence(g)?;
    for j in 1..r_prime.len() {
        if a.get(j) + t <= j {
            return Err(Error::Hypothesis {
                claim: "blue",
                index: j,
            });
        }
    }

    let red = BipartiteReduction::new(g);
    let mut order: Vec<(usize, Vertex)> = r_prime.iter().map(|&v| (red.blue_degree(v), v)).collect();
    order.sort();
    let order: Vec<Vertex> = order.into_iter().map(|p| p.1).collect();

    let mut used = vec![false; g.n() + 1];
    let mut edges = Vec::new();
    let mut try_match = |v: Vertex, used: &mut Vec<bool>| -> bool {
        let partner = red
            .blue_side()
            .iter()
            .copied()
            .find(|&b| !used[b] && g.edge_color(v, b) == Some(Color::Blue));
        match partner {
            Some(b) => {
                used[b] = true;
                used[v] = true;
                edges.push((v, b));
                true
            }
            None => false,
        }
    };
    let m = order.len();
    for j in t..m {
        let v = order[j - 1];
        if !try_match(v, &mut used) {
            return Err(Error::invariant(format!(
                "greedy blue matching got stuck at v_{j} = {v}"
            )));
        }
    }
    for &v in &order {
        if !used[v] {
            try_match(v, &mut used);
        }
    }
    let isolated = red.blue_side().iter().copied().filter(|&b| !used[b]).collect();
    let forest = SimpleForest {
        color: Color::Blue,
        edges,
        isolated,
    };
    forest
        .validate(g)
        .map_err(|e| Error::invariant(format!("blue forest is invalid: {e}")))?;

    let covered = forest.vertex_set();
    let missed = r_prime.iter().filter(|v| !covered.contains(v)).count();
    if missed > t {
        return Err(Error::invariant(format!(
            "blue forest misses {missed} vertices of R', more than t = {t}"
        )));
    }
    Ok(forest)
}

/// Red simple forest on `R ∪ B'` missing at most `t + αn` vertices of it.
///
/// Requires `a_i < i + t` for `1 ≤ i ≤ |B'| − t`. Under that hypothesis a
/// minimum vertex cover of the red `R`–`B'` edges has at least
/// `|B'| − t − αn` vertices, so a maximum red matching covers that many
/// vertices of `B'`; every unmatched red vertex is isolated.
pub fn extract_red_forest(g: &TotalColoredGraph, b_prime: &[Vertex], t: usize) -> Result<SimpleForest> {
    check_side(g, b_prime, Color::Blue)?;
    if t == 0 {
        return Err(Error::precondition("t must be positive"));
    }
    let a = degree_sequence(g)?;
    for i in 1..=b_prime.len().saturating_sub(t).min(a.len()) {
        if a.get(i) >= i + t {
            return Err(Error::Hypothesis {
                claim: "red",
                index: i,
            });
        }
    }

    let red = BipartiteReduction::new(g);
    let side = red.konig_on(Color::Red, red.red_side(), b_prime);
    let slack = alpha_n(g) + Ratio::from_integer((side.cover_size() + t) as u64);
    if slack < Ratio::from_integer(b_prime.len() as u64) {
        return Err(Error::invariant(format!(
            "red cover has {} vertices, fewer than |B'| - t - alpha*n",
            side.cover_size()
        )));
    }
    let edges = side.matching();
    let matched: BTreeSet<Vertex> = edges.iter().map(|e| e.0).collect();
    let isolated = red
        .red_side()
        .iter()
        .copied()
        .filter(|v| !matched.contains(v))
        .collect();
    let forest = SimpleForest {
        color: Color::Red,
        edges,
        isolated,
    };
    forest
        .validate(g)
        .map_err(|e| Error::invariant(format!("red forest is invalid: {e}")))?;
    Ok(forest)
}

/// Outcome of [`extract_forest`].
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub forest: SimpleForest,
    pub t: usize,
    pub lplus: usize,
    pub lminus: usize,
    /// `ℓ + t`, clipped to `n`.
    pub horizon: usize,
    pub density: Ratio<u64>,
    /// `(ℓ − αn) / (ℓ + t)` for the red branch, `ℓ / (ℓ + t)` for the blue one.
    pub bound: Ratio<u64>,
}

impl Extraction {
    pub fn ell(&self) -> usize {
        self.lplus + self.lminus
    }
}

/// Forest at horizon `ℓ + t` with `ℓ = ℓ⁺(t) + ℓ⁻(t)` of the degree
/// sequence.
///
/// With `R' = R ∩ [ℓ + t]` and `B' = B ∩ [ℓ + t]` we have
/// `ℓ = |R'| + |B'| − t`, so `ℓ⁻(t) ≥ |R'|` (blue branch) or
/// `ℓ⁺(t) > |B'| − t` (red branch). The blue branch is preferred when both
/// hold. Since `ℓ⁺(t) + t ≤ |B|` and `ℓ⁻(t) ≤ |R|`, the horizon never
/// exceeds `n`; it is clipped to `n` all the same.
pub fn extract_forest(g: &TotalColoredGraph, t: usize) -> Result<Extraction> {
    let a = degree_sequence(g)?;
    let s = a.to_oscillation_sequence();
    let osc = oscillation(&s)?.value;
    if t == 0 || t as f64 > osc {
        return Err(Error::precondition(format!(
            "t = {t} must lie in 1..={osc}, the oscillation of the degree sequence"
        )));
    }
    let lplus = ell_plus(&s, t as f64)?;
    let lminus = ell_minus(&s, t as f64)?;
    let ell = lplus + lminus;
    let horizon = (ell + t).min(g.n());
    let r_prime: Vec<Vertex> = (1..=horizon)
        .filter(|&v| g.vertex_color(v) == Color::Red)
        .collect();
    let b_prime: Vec<Vertex> = (1..=horizon)
        .filter(|&v| g.vertex_color(v) == Color::Blue)
        .collect();

    let full = Ratio::from_integer(ell as u64);
    let (forest, numerator) = if lminus >= r_prime.len() {
        (extract_blue_forest(g, &r_prime, t)?, full)
    } else if lplus + t > b_prime.len() {
        let an = alpha_n(g);
        let num = if an > full {
            Ratio::from_integer(0)
        } else {
            full - an
        };
        (extract_red_forest(g, &b_prime, t)?, num)
    } else {
        return Err(Error::invariant(format!(
            "neither branch applies: l- = {lminus}, |R'| = {}, l+ = {lplus}, |B'| = {}",
            r_prime.len(),
            b_prime.len()
        )));
    };
    let density = density_at(&forest.vertex_set(), horizon)?;
    let bound = numerator / Ratio::from_integer((ell + t) as u64);
    if density < bound {
        return Err(Error::invariant(format!(
            "forest density {density} at {horizon} is below {bound}"
        )));
    }
    Ok(Extraction {
        forest,
        t,
        lplus,
        lminus,
        horizon,
        density,
        bound,
    })
}

/// Indices with `a_i − i ≥ n/8` and `j − a_j ≥ n/8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OscillationWitness {
    pub i: usize,
    pub j: usize,
    pub a_i: usize,
    pub a_j: usize,
    pub n: usize,
}

impl OscillationWitness {
    /// Recomputes the degree sequence and checks both inequalities.
    pub fn verify(&self, g: &TotalColoredGraph) -> Result<()> {
        let a = degree_sequence(g)?;
        let ok = self.n == g.n()
            && (1..=a.len()).contains(&self.i)
            && (1..=a.len()).contains(&self.j)
            && a.get(self.i) == self.a_i
            && a.get(self.j) == self.a_j
            && 8 * self.a_i >= 8 * self.i + self.n
            && 8 * self.j >= 8 * self.a_j + self.n;
        if ok {
            Ok(())
        } else {
            Err(Error::invariant(format!(
                "oscillation witness {self:?} does not hold"
            )))
        }
    }
}

/// A simple forest covering at least `7n/8 − αn` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ForestWitness {
    pub forest: SimpleForest,
    pub density: Ratio<u64>,
}

impl ForestWitness {
    pub fn verify(&self, g: &TotalColoredGraph) -> Result<()> {
        self.forest
            .validate(g)
            .map_err(|e| Error::invariant(format!("forest witness is invalid: {e}")))?;
        let density = density_at(&self.forest.vertex_set(), g.n())?;
        let target = Ratio::new(7, 8) - g.alpha().min(Ratio::new(7, 8));
        if density != self.density || density < target {
            return Err(Error::invariant(format!(
                "forest density {density} does not reach {target}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OscillationOrForest {
    Oscillation(OscillationWitness),
    Forest(ForestWitness),
}

impl OscillationOrForest {
    pub fn verify(&self, g: &TotalColoredGraph) -> Result<()> {
        match self {
            OscillationOrForest::Oscillation(w) => w.verify(g),
            OscillationOrForest::Forest(w) => w.verify(g),
        }
    }
}

fn forest_witness(g: &TotalColoredGraph, forest: SimpleForest) -> Result<OscillationOrForest> {
    let density = density_at(&forest.vertex_set(), g.n())?;
    let w = ForestWitness { forest, density };
    w.verify(g)?;
    Ok(OscillationOrForest::Forest(w))
}

/// Either the degree sequence oscillates by at least `n/8`, or a simple
/// forest covers at least `7n/8 − αn` vertices.
///
/// `X` is a minimum cover of the red edges and `Y` of the blue edges. A large
/// `X` gives a red matching that, with the red vertices, is the forest; a
/// large `Y` does the same in blue. Otherwise `i = |X ∩ R| + 1` and
/// `j = |R| − |Y ∩ R|` witness the oscillation. When `X ⊇ R` there is no
/// index `i` and the dichotomy can fail; that case is an invariant
/// violation.
pub fn oscillation_or_forest(g: &TotalColoredGraph) -> Result<OscillationOrForest> {
    let red = BipartiteReduction::new(g);
    let n = g.n();
    let (r, b) = (red.red_side().len(), red.blue_side().len());
    if r == 0 || b == 0 {
        let forest = SimpleForest {
            color: if r == 0 { Color::Blue } else { Color::Red },
            edges: Vec::new(),
            isolated: (1..=n).collect(),
        };
        return forest_witness(g, forest);
    }
    let eighth = Ratio::new(n as u64, 8);
    let an = alpha_n(g);

    let x = red.konig(Color::Red);
    if Ratio::from_integer(x.cover_size() as u64) + eighth + an >= Ratio::from_integer(b as u64) {
        let edges = x.matching();
        let matched: BTreeSet<Vertex> = edges.iter().map(|e| e.0).collect();
        let isolated = red
            .red_side()
            .iter()
            .copied()
            .filter(|v| !matched.contains(v))
            .collect();
        let forest = SimpleForest {
            color: Color::Red,
            edges,
            isolated,
        };
        return forest_witness(g, forest);
    }

    let y = red.konig(Color::Blue);
    if Ratio::from_integer(y.cover_size() as u64) + eighth > Ratio::from_integer(r as u64) {
        let edges = y.matching();
        let matched: BTreeSet<Vertex> = edges.iter().map(|e| e.1).collect();
        let isolated = red
            .blue_side()
            .iter()
            .copied()
            .filter(|v| !matched.contains(v))
            .collect();
        let forest = SimpleForest {
            color: Color::Blue,
            edges,
            isolated,
        };
        return forest_witness(g, forest);
    }

    let a = degree_sequence(g)?;
    let i = x.cover_red().len() + 1;
    let j = r - y.cover_red().len();
    if i > r || j == 0 {
        return Err(Error::invariant(format!(
            "no oscillation index: |X ∩ R| = {}, |Y ∩ R| = {}, |R| = {r}",
            x.cover_red().len(),
            y.cover_red().len()
        )));
    }
    let w = OscillationWitness {
        i,
        j,
        a_i: a.get(i),
        a_j: a.get(j),
        n,
    };
    w.verify(g)?;
    Ok(OscillationOrForest::Oscillation(w))
}
