//! Every 2-edge-colouring of `K_n` has a monochromatic path on
//! `⌈(2n+1)/3⌉` vertices.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::check_cap;
use crate::error::{Error, Result};
use crate::graphmodel::{Color, TotalColoredGraph};

pub const EXHAUSTIVE_MAX_N: usize = 7;

pub fn gg_bound(n: usize) -> usize {
    (2 * n + 3) / 3
}

/// An edge colouring of `K_n` stored as red adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    red: Vec<u32>,
}

impl EdgeColoring {
    /// Bit `i` of `bits` colours the `i`-th pair `(u, v)`, `u < v`, in
    /// lexicographic order; a set bit means red.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        let mut red = vec![0u32; n];
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> i & 1 == 1 {
                    red[u] |= 1 << v;
                    red[v] |= 1 << u;
                }
                i += 1;
            }
        }
        EdgeColoring { red }
    }

    pub fn from_fn(n: usize, mut is_red: impl FnMut(usize, usize) -> bool) -> Self {
        let mut red = vec![0u32; n];
        for u in 0..n {
            for v in u + 1..n {
                if is_red(u, v) {
                    red[u] |= 1 << v;
                    red[v] |= 1 << u;
                }
            }
        }
        EdgeColoring { red }
    }

    pub fn n(&self) -> usize {
        self.red.len()
    }

    fn adjacency(&self, color: Color) -> Vec<u32> {
        let full = if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        };
        match color {
            Color::Red => self.red.clone(),
            Color::Blue => (0..self.n()).map(|v| !self.red[v] & full & !(1 << v)).collect(),
        }
    }

    /// The colouring as a complete graph with every vertex red.
    pub fn to_total_graph(&self) -> Result<TotalColoredGraph> {
        TotalColoredGraph::complete_from_fn(
            self.n(),
            |_| Color::Red,
            |u, v| {
                if self.red[u - 1] >> (v - 1) & 1 == 1 {
                    Color::Red
                } else {
                    Color::Blue
                }
            },
        )
    }

    /// Vertices on a longest monochromatic path.
    pub fn longest_mono_path(&self) -> usize {
        let mut buf = Vec::new();
        longest_in(&self.adjacency(Color::Red), &mut buf)
            .max(longest_in(&self.adjacency(Color::Blue), &mut buf))
    }
}

/// Edge colours as `R`/`B` in lexicographic pair order.
impl fmt::Display for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                let c = if self.red[u] >> v & 1 == 1 { 'R' } else { 'B' };
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

fn longest_in(adj: &[u32], reach: &mut Vec<u32>) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    reach.clear();
    reach.resize(1 << n, 0);
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    let mut best = 1;
    for s in 1..reach.len() {
        let mut ends = reach[s];
        if ends == 0 {
            continue;
        }
        best = best.max(s.count_ones() as usize);
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
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GgReport {
    pub check: &'static str,
    pub n: usize,
    pub bound: usize,
    pub mode: &'static str,
    pub colorings: u64,
    /// Smallest longest-monochromatic-path length over the colourings seen.
    pub min_max: usize,
    pub extremal: String,
    pub counterexample: Option<String>,
    pub holds: bool,
}

/// Checks the bound on every colouring (`n ≤ 7`) or on `samples` colourings
/// drawn from ChaCha8 keyed by `seed`, one stream per sample.
pub fn gg_verify(n: usize, mode: GgMode, cap: usize) -> Result<GgReport> {
    if n == 0 {
        return Err(Error::precondition("n must be positive"));
    }
    check_cap(n, cap)?;
    let bound = gg_bound(n);
    let pairs = n * (n - 1) / 2;

    let (colorings, (min_max, extremal)) = match mode {
        GgMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N {
                return Err(Error::precondition(format!(
                    "exhaustive mode supports n <= {EXHAUSTIVE_MAX_N}, got {n}"
                )));
            }
            let total = 1u64 << pairs;
            let best = (0..total)
                .into_par_iter()
                .fold(
                    || (usize::MAX, 0u64, Vec::new()),
                    |(best, arg, mut buf), bits| {
                        let c = EdgeColoring::from_bits(n, bits);
                        let mut len = longest_in(&c.adjacency(Color::Red), &mut buf);
                        if len < n {
                            len = len.max(longest_in(&c.adjacency(Color::Blue), &mut buf));
                        }
                        if (len, bits) < (best, arg) {
                            (len, bits, buf)
                        } else {
                            (best, arg, buf)
                        }
                    },
                )
                .map(|(len, bits, _)| (len, bits))
                .min()
                .expect("at least one colouring");
            (total, (best.0, EdgeColoring::from_bits(n, best.1)))
        }
        GgMode::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::precondition("at least one sample is required"));
            }
            let best = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    let c = EdgeColoring::from_fn(n, |_, _| rng.gen::<bool>());
                    (c.longest_mono_path(), i, c)
                })
                .min_by_key(|(len, i, _)| (*len, *i))
                .expect("at least one sample");
            (samples, (best.0, best.2))
        }
    };

    let holds = min_max >= bound;
    Ok(GgReport {
        check: "gg",
        n,
        bound,
        mode: match mode {
            GgMode::Exhaustive => "exhaustive",
            GgMode::Sampled { .. } => "sampled",
        },
        colorings,
        min_max,
        extremal: extremal.to_string(),
        counterexample: (!holds).then(|| extremal.to_string()),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::longest_mono_path;

    #[test]
    fn bound_values() {
        let expect = [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 5), (7, 5), (10, 7)];
        for (n, b) in expect {
            assert_eq!(gg_bound(n), b, "n = {n}");
        }
    }

    #[test]
    fn exhaustive_small() {
        for n in 1..=5 {
            let r = gg_verify(n, GgMode::Exhaustive, 20).unwrap();
            assert!(r.holds, "n = {n}");
            assert_eq!(r.colorings, 1 << (n * (n - 1) / 2));
            assert_eq!(r.min_max, gg_bound(n), "n = {n}");
        }
    }

    #[test]
    fn three_vertices() {
        let r = gg_verify(3, GgMode::Exhaustive, 20).unwrap();
        assert_eq!(r.colorings, 8);
        assert_eq!(r.min_max, 3);
    }

    #[test]
    fn exhaustive_cap() {
        assert!(gg_verify(8, GgMode::Exhaustive, 20).is_err());
        assert!(gg_verify(9, GgMode::Sampled { samples: 1, seed: 0 }, 8).is_err());
    }

    #[test]
    fn sampled_is_reproducible() {
        let mode = GgMode::Sampled {
            samples: 200,
            seed: 7,
        };
        let a = gg_verify(9, mode, 20).unwrap();
        let b = gg_verify(9, mode, 20).unwrap();
        assert_eq!(a, b);
        assert!(a.holds);
    }

    #[test]
    fn bitmask_agrees_with_graph_dp() {
        for bits in [0u64, 0b1_0110_1101_0011_1001, 0x3_5a5a, 0x1_ffff] {
            let c = EdgeColoring::from_bits(7, bits);
            let g = c.to_total_graph().unwrap();
            let direct = [Color::Red, Color::Blue]
                .iter()
                .map(|&col| longest_mono_path(&g, col, 20).unwrap().len())
                .max()
                .unwrap();
            assert_eq!(c.longest_mono_path(), direct);
        }
    }
}
