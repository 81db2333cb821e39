use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use super::{density_at, Color, TotalColoredGraph, Vertex};
use crate::error::Result;

/// First clause of a forest definition that a candidate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForestViolation {
    VertexOutOfRange(Vertex),
    DuplicateVertex(Vertex),
    NotVertexDisjoint(Vertex),
    MissingEdge(Vertex, Vertex),
    EdgeWrongColor(Vertex, Vertex),
    NoColoredEndpoint(Vertex, Vertex),
    IsolatedWrongColor(Vertex),
    LeafWrongColor(Vertex),
    EmptyPath,
}

impl fmt::Display for ForestViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ForestViolation::*;
        match self {
            VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            DuplicateVertex(v) => write!(f, "vertex {v} used twice"),
            NotVertexDisjoint(v) => write!(f, "not vertex-disjoint at {v}"),
            MissingEdge(u, v) => write!(f, "edge {u} {v} not present"),
            EdgeWrongColor(u, v) => write!(f, "edge {u} {v} has the wrong colour"),
            NoColoredEndpoint(u, v) => write!(f, "no c-colored endpoint on edge {u} {v}"),
            IsolatedWrongColor(v) => write!(f, "isolated vertex {v} has the wrong colour"),
            LeafWrongColor(v) => write!(f, "leaf {v} has the wrong colour"),
            EmptyPath => f.write_str("empty path"),
        }
    }
}

impl std::error::Error for ForestViolation {}

/// A matching plus isolated vertices, all of one colour `c`: every edge has
/// colour `c` and at least one endpoint of vertex colour `c`; every isolated
/// vertex has colour `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleForest {
    pub color: Color,
    pub edges: Vec<(Vertex, Vertex)>,
    pub isolated: Vec<Vertex>,
}

impl SimpleForest {
    pub fn new(color: Color) -> Self {
        SimpleForest {
            color,
            edges: Vec::new(),
            isolated: Vec::new(),
        }
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(self.isolated.iter().copied())
            .collect()
    }

    pub fn density_at(&self, t: usize) -> Result<Ratio<u64>> {
        density_at(&self.vertex_set(), t)
    }

    pub fn validate(&self, g: &TotalColoredGraph) -> Result<(), ForestViolation> {
        let c = self.color;
        let mut seen = BTreeSet::new();
        let mut claim = |v: Vertex| {
            if !g.contains(v) {
                Err(ForestViolation::VertexOutOfRange(v))
            } else if !seen.insert(v) {
                Err(ForestViolation::DuplicateVertex(v))
            } else {
                Ok(())
            }
        };
        for &(u, v) in &self.edges {
            claim(u)?;
            claim(v)?;
        }
        for &v in &self.isolated {
            claim(v)?;
        }
        for &(u, v) in &self.edges {
            match g.edge_color(u, v) {
                None => return Err(ForestViolation::MissingEdge(u, v)),
                Some(ec) if ec != c => return Err(ForestViolation::EdgeWrongColor(u, v)),
                Some(_) => {}
            }
            if g.vertex_color(u) != c && g.vertex_color(v) != c {
                return Err(ForestViolation::NoColoredEndpoint(u, v));
            }
        }
        for &v in &self.isolated {
            if g.vertex_color(v) != c {
                return Err(ForestViolation::IsolatedWrongColor(v));
            }
        }
        Ok(())
    }
}

/// Vertex-disjoint monochromatic paths; a singleton path is an isolated
/// vertex. Edges, leaves and isolated vertices carry the forest's colour,
/// interior vertices are unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathForest {
    pub color: Color,
    pub paths: Vec<Vec<Vertex>>,
}

impl PathForest {
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.paths.iter().flatten().copied().collect()
    }

    pub fn density_at(&self, t: usize) -> Result<Ratio<u64>> {
        density_at(&self.vertex_set(), t)
    }

    pub fn validate(&self, g: &TotalColoredGraph) -> Result<(), ForestViolation> {
        let c = self.color;
        let mut seen = BTreeSet::new();
        for path in &self.paths {
            for &v in path {
                if !g.contains(v) {
                    return Err(ForestViolation::VertexOutOfRange(v));
                }
                if !seen.insert(v) {
                    return Err(ForestViolation::NotVertexDisjoint(v));
                }
            }
        }
        for path in &self.paths {
            let (first, last) = match (path.first(), path.last()) {
                (Some(&a), Some(&b)) => (a, b),
                _ => return Err(ForestViolation::EmptyPath),
            };
            for w in path.windows(2) {
                match g.edge_color(w[0], w[1]) {
                    None => return Err(ForestViolation::MissingEdge(w[0], w[1])),
                    Some(ec) if ec != c => return Err(ForestViolation::EdgeWrongColor(w[0], w[1])),
                    Some(_) => {}
                }
            }
            if path.len() == 1 {
                if g.vertex_color(first) != c {
                    return Err(ForestViolation::IsolatedWrongColor(first));
                }
            } else {
                for leaf in [first, last] {
                    if g.vertex_color(leaf) != c {
                        return Err(ForestViolation::LeafWrongColor(leaf));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphmodel::GraphBuilder;

    fn graph(colors: &str, edges: &[(Vertex, Vertex, Color)]) -> TotalColoredGraph {
        let vc = colors.chars().map(|c| Color::from_char(c).unwrap()).collect();
        let mut b = GraphBuilder::new(vc);
        for &(u, v, c) in edges {
            b.set_edge(u, v, c).unwrap();
        }
        b.alpha(Ratio::new(99, 100)).build().unwrap()
    }

    #[test]
    fn simple_forest_examples() {
        let g = graph("BB", &[(1, 2, Color::Blue)]);
        let f = SimpleForest {
            color: Color::Blue,
            edges: vec![(1, 2)],
            isolated: vec![],
        };
        assert_eq!(f.validate(&g), Ok(()));

        let g = graph("RR", &[(1, 2, Color::Blue)]);
        let err = f.validate(&g).unwrap_err();
        assert_eq!(err, ForestViolation::NoColoredEndpoint(1, 2));
        assert!(err.to_string().contains("no c-colored endpoint"));
    }

    #[test]
    fn simple_forest_structural_errors() {
        let g = graph("BBB", &[(1, 2, Color::Blue), (2, 3, Color::Red)]);
        let dup = SimpleForest {
            color: Color::Blue,
            edges: vec![(1, 2)],
            isolated: vec![2],
        };
        assert_eq!(dup.validate(&g), Err(ForestViolation::DuplicateVertex(2)));
        let oob = SimpleForest {
            color: Color::Blue,
            edges: vec![],
            isolated: vec![4],
        };
        assert_eq!(oob.validate(&g), Err(ForestViolation::VertexOutOfRange(4)));
        let wrong = SimpleForest {
            color: Color::Blue,
            edges: vec![(2, 3)],
            isolated: vec![],
        };
        assert_eq!(wrong.validate(&g), Err(ForestViolation::EdgeWrongColor(2, 3)));
        let missing = SimpleForest {
            color: Color::Blue,
            edges: vec![(1, 3)],
            isolated: vec![],
        };
        assert_eq!(missing.validate(&g), Err(ForestViolation::MissingEdge(1, 3)));
    }

    #[test]
    fn vertex_count_identity() {
        let g = graph("BBRB", &[(1, 2, Color::Blue), (3, 4, Color::Blue)]);
        let f = SimpleForest {
            color: Color::Blue,
            edges: vec![(1, 2), (3, 4)],
            isolated: vec![],
        };
        f.validate(&g).unwrap();
        assert_eq!(f.edges.len() * 2 + f.isolated.len(), f.vertex_set().len());
        assert_eq!(f.density_at(2).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn path_forest_examples() {
        let g = graph("RRR", &[(1, 2, Color::Red), (2, 3, Color::Red)]);
        let p = PathForest {
            color: Color::Red,
            paths: vec![vec![1, 2, 3]],
        };
        assert_eq!(p.validate(&g), Ok(()));

        // interior vertex colour is unconstrained
        let g = graph("RBR", &[(1, 2, Color::Red), (2, 3, Color::Red)]);
        assert_eq!(p.validate(&g), Ok(()));

        let reuse = PathForest {
            color: Color::Red,
            paths: vec![vec![1, 2], vec![2, 3]],
        };
        let err = reuse.validate(&g).unwrap_err();
        assert_eq!(err, ForestViolation::NotVertexDisjoint(2));
        assert!(err.to_string().contains("not vertex-disjoint"));

        let blue_leaf = PathForest {
            color: Color::Red,
            paths: vec![vec![2, 3]],
        };
        assert_eq!(blue_leaf.validate(&g), Err(ForestViolation::LeafWrongColor(2)));
        let blue_single = PathForest {
            color: Color::Red,
            paths: vec![vec![2]],
        };
        assert_eq!(
            blue_single.validate(&g),
            Err(ForestViolation::IsolatedWrongColor(2))
        );
    }
}
