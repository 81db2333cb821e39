//! No monochromatic path meets an initial segment of the reordering in more
//! vertices than the canonical matching of its colour.

use serde::Serialize;

use super::{check_cap, path_reach, reconstruct};
use crate::coloring::{BlockMatching, GeometricColoring, Reordering};
use crate::error::{Error, Result};
use crate::graphmodel::{Color, Vertex};

pub const DEFAULT_FAITHFULNESS_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaithfulnessViolation {
    pub color: String,
    pub path: Vec<Vertex>,
    pub k: usize,
    pub path_count: usize,
    pub matching_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub check: &'static str,
    pub q: String,
    /// Vertices `1..=n` of the colouring take part.
    pub n: usize,
    /// Largest `k` checked.
    pub k_max: usize,
    /// Distinct vertex sets of admissible red and blue paths.
    pub red_paths: u64,
    pub blue_paths: u64,
    pub violation: Option<FaithfulnessViolation>,
    pub holds: bool,
}

/// [`faithfulness_check_prefix`] on all of `c`.
pub fn faithfulness_check(c: &GeometricColoring, cap: usize) -> Result<FaithfulnessReport> {
    faithfulness_check_prefix(c, c.n(), cap)
}

/// Checks `|V(P) ∩ f([k])| ≤ |V(M_c) ∩ f([k])|` for every path `P` in
/// `c`-coloured edges on the vertices `1..=n` that has an endpoint of vertex
/// colour `c`, and every `k` such that `f([k])` lies in `1..=n` and avoids
/// the last block. Vertices of the last block lack their matching partners,
/// so larger `k` say nothing about the unbounded colouring.
///
/// Paths are handled through their vertex sets: a subset DP records, for
/// each set, the endpoints of paths spanning it.
pub fn faithfulness_check_prefix(c: &GeometricColoring, n: usize, cap: usize) -> Result<FaithfulnessReport> {
    check_cap(n, cap)?;
    if n > c.n() {
        return Err(Error::precondition(format!(
            "prefix {n} exceeds the colouring size {}",
            c.n()
        )));
    }
    let (mr, mb) = c.matchings()?;
    let f = Reordering::from_matchings(c, &mr, &mb);
    let last = c.block(c.num_levels() - 1);

    let mut k_max = 0;
    while k_max < c.n() {
        let v = f.f(k_max + 1);
        if v > n || last.contains(&v) {
            break;
        }
        k_max += 1;
    }
    // prefix masks of f([k]) over bit indices v - 1
    let segments: Vec<u32> = (1..=k_max)
        .scan(0u32, |m, k| {
            *m |= 1 << (f.f(k) - 1);
            Some(*m)
        })
        .collect();

    let mut report = FaithfulnessReport {
        check: "faithfulness",
        q: c.q().to_string(),
        n,
        k_max,
        red_paths: 0,
        blue_paths: 0,
        violation: None,
        holds: true,
    };
    for (color, matching) in [(Color::Red, &mr), (Color::Blue, &mb)] {
        let (count, violation) = check_color(c, n, &segments, color, matching);
        match color {
            Color::Red => report.red_paths = count,
            Color::Blue => report.blue_paths = count,
        }
        if violation.is_some() {
            report.violation = violation;
            report.holds = false;
            break;
        }
    }
    Ok(report)
}

fn check_color(
    c: &GeometricColoring,
    n: usize,
    segments: &[u32],
    color: Color,
    matching: &BlockMatching,
) -> (u64, Option<FaithfulnessViolation>) {
    let adj: Vec<u32> = (1..=n)
        .map(|v| {
            (1..=n)
                .filter(|&u| u != v && c.edge_color(u, v).ok() == Some(color))
                .fold(0u32, |m, u| m | 1 << (u - 1))
        })
        .collect();
    let own: u32 = (1..=n)
        .filter(|&v| c.vertex_color(v) == color)
        .fold(0, |m, v| m | 1 << (v - 1));
    let covered: u32 = (1..=n)
        .filter(|&v| matching.covers(v))
        .fold(0, |m, v| m | 1 << (v - 1));
    let limits: Vec<u32> = segments.iter().map(|&s| (s & covered).count_ones()).collect();

    let reach = path_reach(&adj);
    let mut count = 0u64;
    for (s, &ends) in reach.iter().enumerate() {
        let ends = ends & own;
        if ends == 0 {
            continue;
        }
        count += 1;
        let s = s as u32;
        for (k, (&seg, &limit)) in segments.iter().zip(&limits).enumerate() {
            let hits = (s & seg).count_ones();
            if hits > limit {
                let end = ends.trailing_zeros() as usize;
                let violation = FaithfulnessViolation {
                    color: color.to_string(),
                    path: reconstruct(&reach, &adj, s, end)
                        .into_iter()
                        .map(|v| v + 1)
                        .collect(),
                    k: k + 1,
                    path_count: hits as usize,
                    matching_count: limit as usize,
                };
                return (count, Some(violation));
            }
        }
    }
    (count, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::GrowthRate;

    #[test]
    fn single_block_is_vacuous() {
        let c = GeometricColoring::with_blocks(GrowthRate::integer(2), 1).unwrap();
        let r = faithfulness_check(&c, 18).unwrap();
        assert!(r.holds);
        assert_eq!(r.k_max, 0);
    }

    #[test]
    fn q_two_prefixes() {
        let c = GeometricColoring::with_blocks(GrowthRate::integer(2), 5).unwrap();
        for n in 1..=15 {
            let r = faithfulness_check_prefix(&c, n, 18).unwrap();
            assert!(r.holds, "n = {n}: {:?}", r.violation);
        }
        assert!(faithfulness_check_prefix(&c, 15, 18).unwrap().k_max > 0);
    }

    #[test]
    fn three_halves_prefixes() {
        let c = GeometricColoring::build(GrowthRate::Rational(num_rational::Ratio::new(3, 2)), 20).unwrap();
        for n in 1..=12 {
            assert!(faithfulness_check_prefix(&c, n, 18).unwrap().holds, "n = {n}");
        }
    }

    #[test]
    fn cap_and_size_are_enforced() {
        let c = GeometricColoring::with_blocks(GrowthRate::integer(2), 5).unwrap();
        assert!(faithfulness_check(&c, 18).is_err());
        assert!(faithfulness_check_prefix(&c, 15, 10).is_err());
        let small = GeometricColoring::with_blocks(GrowthRate::integer(2), 2).unwrap();
        assert!(faithfulness_check_prefix(&small, 4, 18).is_err());
    }

    #[test]
    fn wrong_matching_is_caught() {
        let c = GeometricColoring::with_blocks(GrowthRate::integer(2), 4).unwrap();
        let (mr, mb) = c.matchings().unwrap();
        let f = Reordering::from_matchings(&c, &mr, &mb);
        // f(7) = 8 is the first vertex of the last block
        let segments: Vec<u32> = (1..=6)
            .scan(0u32, |m, k| {
                *m |= 1 << (f.f(k) - 1);
                Some(*m)
            })
            .collect();
        let (_, ok) = check_color(&c, c.n(), &segments, Color::Red, &mr);
        assert!(ok.is_none());
        let (_, ok) = check_color(&c, c.n(), &segments, Color::Blue, &mb);
        assert!(ok.is_none());
        // the blue path 2-1-4-5-6 lies in f([6]) while M_r covers only 2..5 there
        let (_, bad) = check_color(&c, c.n(), &segments, Color::Blue, &mr);
        let bad = bad.expect("blue paths beat M_r");
        assert!(bad.path_count > bad.matching_count);
    }
}
