//! Hopcroft–Karp maximum matching with a König minimum vertex cover.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Bipartite graph with sides `0..left` and `0..right`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = BipartiteGraph::new(left, right);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.left || v >= self.right {
            return Err(Error::precondition(format!(
                "edge ({u}, {v}) outside {}x{}",
                self.left, self.right
            )));
        }
        self.adj[u].push(v);
        Ok(())
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

/// A maximum matching together with a vertex cover of the same size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KonigCertificate {
    /// `(left, right)` pairs.
    pub matching: Vec<(usize, usize)>,
    pub cover_left: Vec<usize>,
    pub cover_right: Vec<usize>,
}

impl KonigCertificate {
    pub fn matching_size(&self) -> usize {
        self.matching.len()
    }

    pub fn cover_size(&self) -> usize {
        self.cover_left.len() + self.cover_right.len()
    }

    /// Checks that the matching is a matching of `g`, that the cover touches
    /// every edge, and that both have the same size.
    pub fn verify(&self, g: &BipartiteGraph) -> Result<()> {
        let mut used_l = vec![false; g.left()];
        let mut used_r = vec![false; g.right()];
        for &(u, v) in &self.matching {
            if u >= g.left() || v >= g.right() || !g.neighbors(u).contains(&v) {
                return Err(Error::invariant(format!("({u}, {v}) is not an edge")));
            }
            if std::mem::replace(&mut used_l[u], true) || std::mem::replace(&mut used_r[v], true) {
                return Err(Error::invariant(format!("({u}, {v}) reuses a vertex")));
            }
        }
        let mut in_l = vec![false; g.left()];
        let mut in_r = vec![false; g.right()];
        for &u in &self.cover_left {
            in_l[u] = true;
        }
        for &v in &self.cover_right {
            in_r[v] = true;
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| !in_l[u] && !in_r[v]) {
            return Err(Error::invariant(format!("edge ({u}, {v}) is uncovered")));
        }
        if self.matching_size() != self.cover_size() {
            return Err(Error::invariant(format!(
                "matching has {} edges but cover has {} vertices",
                self.matching_size(),
                self.cover_size()
            )));
        }
        Ok(())
    }
}

const NIL: usize = usize::MAX;

/// Maximum matching by Hopcroft–Karp; the cover is `(L \ Z) ∪ (R ∩ Z)`
/// where `Z` is everything reachable from free left vertices along
/// alternating paths.
pub fn konig_certificate(g: &BipartiteGraph) -> KonigCertificate {
    let (mate_l, mate_r) = hopcroft_karp(g);

    let mut z_left = vec![false; g.left()];
    let mut z_right = vec![false; g.right()];
    let mut queue: VecDeque<usize> = (0..g.left()).filter(|&u| mate_l[u] == NIL).collect();
    for &u in &queue {
        z_left[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if mate_l[u] == v || z_right[v] {
                continue;
            }
            z_right[v] = true;
            let w = mate_r[v];
            if w != NIL && !z_left[w] {
                z_left[w] = true;
                queue.push_back(w);
            }
        }
    }

    KonigCertificate {
        matching: (0..g.left())
            .filter(|&u| mate_l[u] != NIL)
            .map(|u| (u, mate_l[u]))
            .collect(),
        cover_left: (0..g.left()).filter(|&u| !z_left[u]).collect(),
        cover_right: (0..g.right()).filter(|&v| z_right[v]).collect(),
    }
}

fn hopcroft_karp(g: &BipartiteGraph) -> (Vec<usize>, Vec<usize>) {
    let mut mate_l = vec![NIL; g.left()];
    let mut mate_r = vec![NIL; g.right()];
    let mut dist = vec![0usize; g.left()];
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..g.left() {
            if mate_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let w = mate_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; g.left()];
        for u in 0..g.left() {
            if mate_l[u] == NIL {
                augment(g, u, &mut mate_l, &mut mate_r, &mut dist, &mut next);
            }
        }
    }
    (mate_l, mate_r)
}

/// Iterative DFS along the BFS layers; flips the path on success.
fn augment(
    g: &BipartiteGraph,
    root: usize,
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        let nbrs = g.neighbors(u);
        if next[u] == nbrs.len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = nbrs[next[u]];
        next[u] += 1;
        let w = mate_r[v];
        if w == NIL {
            // stack holds the left vertices of the path; pair each with the
            // right vertex it stepped through
            let mut v = v;
            while let Some(u) = stack.pop() {
                let prev = mate_l[u];
                mate_l[u] = v;
                mate_r[v] = u;
                v = prev;
            }
            return true;
        }
        if dist[w] == dist[u] + 1 {
            stack.push(w);
        }
    }
    false
}
