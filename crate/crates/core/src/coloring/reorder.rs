use crate::error::{Error, Result};
use crate::graphmodel::{Color, Vertex};

use super::{BlockMatching, GeometricColoring};

/// A position of `f` at which a star vertex is enumerated and the colour
/// being enumerated switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarStop {
    pub position: usize,
    pub vertex: Vertex,
    pub color: Color,
    /// `t` such that `vertex` is the `t`-th star of its colour.
    pub t: usize,
}

/// The interleaving bijection `f: [n] → [n]`.
///
/// Blue stars `b_t*` are the blue vertices missed by `M_r`; red stars `r_t*`
/// are the red vertices missed by `M_b`. `f` lists blue vertices in order up
/// to `b_1*`, then red vertices up to `r_1*`, then blue up to `b_2*`, and so
/// on. Once one colour runs out the rest of the other colour follows.
#[derive(Debug, Clone)]
pub struct Reordering {
    fwd: Vec<Vertex>,
    inv: Vec<usize>,
    red_stars: Vec<Vertex>,
    blue_stars: Vec<Vertex>,
    red_star_rank: Vec<usize>,
    blue_star_rank: Vec<usize>,
    star_stops: Vec<StarStop>,
}

impl Reordering {
    pub fn new(c: &GeometricColoring) -> Result<Self> {
        let (mr, mb) = c.matchings()?;
        Ok(Reordering::from_matchings(c, &mr, &mb))
    }

    pub fn from_matchings(c: &GeometricColoring, mr: &BlockMatching, mb: &BlockMatching) -> Self {
        let n = c.n();
        let mut reds = Vec::new();
        let mut blues = Vec::new();
        let mut red_stars = Vec::new();
        let mut blue_stars = Vec::new();
        let mut red_star_rank = Vec::new();
        let mut blue_star_rank = Vec::new();
        // per colour: is the vertex at this rank a star
        let mut red_is_star = Vec::new();
        let mut blue_is_star = Vec::new();
        for v in 1..=n {
            match c.vertex_color(v) {
                Color::Red => {
                    reds.push(v);
                    let star = !mb.covers(v);
                    red_is_star.push(star);
                    if star {
                        red_stars.push(v);
                        red_star_rank.push(reds.len());
                    }
                }
                Color::Blue => {
                    blues.push(v);
                    let star = !mr.covers(v);
                    blue_is_star.push(star);
                    if star {
                        blue_stars.push(v);
                        blue_star_rank.push(blues.len());
                    }
                }
            }
        }

        let mut fwd = Vec::with_capacity(n);
        let mut star_stops = Vec::new();
        let (mut ri, mut bi) = (0usize, 0usize);
        let (mut rt, mut bt) = (0usize, 0usize);
        let mut current = Color::Blue;
        while fwd.len() < n {
            let (list, is_star, idx, t) = match current {
                Color::Blue => (&blues, &blue_is_star, &mut bi, &mut bt),
                Color::Red => (&reds, &red_is_star, &mut ri, &mut rt),
            };
            if *idx == list.len() {
                current = current.complement();
                continue;
            }
            let v = list[*idx];
            let star = is_star[*idx];
            *idx += 1;
            fwd.push(v);
            if star {
                *t += 1;
                star_stops.push(StarStop {
                    position: fwd.len(),
                    vertex: v,
                    color: current,
                    t: *t,
                });
                current = current.complement();
            }
        }

        let mut inv = vec![0usize; n + 1];
        for (k, &v) in fwd.iter().enumerate() {
            inv[v] = k + 1;
        }
        Reordering {
            fwd,
            inv,
            red_stars,
            blue_stars,
            red_star_rank,
            blue_star_rank,
            star_stops,
        }
    }

    pub fn n(&self) -> usize {
        self.fwd.len()
    }

    /// `f(k)` for `1 ≤ k ≤ n`.
    pub fn f(&self, k: usize) -> Vertex {
        self.fwd[k - 1]
    }

    /// `f^{-1}(v)`.
    pub fn position(&self, v: Vertex) -> usize {
        self.inv[v]
    }

    pub fn forward(&self) -> &[Vertex] {
        &self.fwd
    }

    pub fn red_stars(&self) -> &[Vertex] {
        &self.red_stars
    }

    pub fn blue_stars(&self) -> &[Vertex] {
        &self.blue_stars
    }

    pub fn star_stops(&self) -> &[StarStop] {
        &self.star_stops
    }

    /// Largest `t` for which both `r_t*` and `b_t*` lie in the prefix.
    pub fn realized(&self) -> usize {
        self.red_stars.len().min(self.blue_stars.len())
    }

    pub fn red_star(&self, t: usize) -> Option<Vertex> {
        t.checked_sub(1).and_then(|i| self.red_stars.get(i).copied())
    }

    pub fn blue_star(&self, t: usize) -> Option<Vertex> {
        t.checked_sub(1).and_then(|i| self.blue_stars.get(i).copied())
    }

    /// Rank of `r_t*` among the red vertices.
    pub fn ell_r(&self, t: usize) -> Option<usize> {
        t.checked_sub(1).and_then(|i| self.red_star_rank.get(i).copied())
    }

    /// Rank of `b_t*` among the blue vertices.
    pub fn ell_b(&self, t: usize) -> Option<usize> {
        t.checked_sub(1).and_then(|i| self.blue_star_rank.get(i).copied())
    }
}

fn missing_star(color: Color, t: usize) -> Error {
    Error::precondition(format!("the prefix has fewer than {t} {color} star vertices"))
}

/// Rank of `r_t*` among red vertices, by enumerating the matching `M_b`.
pub fn ell_r(c: &GeometricColoring, t: usize) -> Result<usize> {
    Reordering::new(c)?
        .ell_r(t)
        .ok_or_else(|| missing_star(Color::Red, t))
}

/// Rank of `b_t*` among blue vertices, by enumerating the matching `M_r`.
pub fn ell_b(c: &GeometricColoring, t: usize) -> Result<usize> {
    Reordering::new(c)?
        .ell_b(t)
        .ok_or_else(|| missing_star(Color::Blue, t))
}

/// `ℓ_r(t) = t + |A_0| + |A_2| + … + |A_{2i}|` where `A_{2i+1}` holds `r_t*`.
pub fn ell_r_closed_form(c: &GeometricColoring, t: usize) -> Result<usize> {
    if t == 0 {
        return Err(missing_star(Color::Red, t));
    }
    let a = c.block_sizes();
    let mut stars_before = 0usize;
    let mut even_sum = 0usize;
    let mut i = 0usize;
    while 2 * i + 1 < a.len() {
        even_sum += a[2 * i];
        stars_before += a[2 * i + 1] - a[2 * i];
        if t <= stars_before {
            return Ok(t + even_sum);
        }
        i += 1;
    }
    Err(missing_star(Color::Red, t))
}

/// `ℓ_b(t) = t + |A_1| + |A_3| + … + |A_{2i-1}|` where `A_{2i}` holds `b_t*`.
pub fn ell_b_closed_form(c: &GeometricColoring, t: usize) -> Result<usize> {
    if t == 0 {
        return Err(missing_star(Color::Blue, t));
    }
    let a = c.block_sizes();
    let mut stars_before = a[0];
    if t <= stars_before {
        return Ok(t);
    }
    let mut odd_sum = 0usize;
    let mut i = 1usize;
    while 2 * i < a.len() {
        odd_sum += a[2 * i - 1];
        stars_before += a[2 * i] - a[2 * i - 1];
        if t <= stars_before {
            return Ok(t + odd_sum);
        }
        i += 1;
    }
    Err(missing_star(Color::Blue, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::GrowthRate;
    use num_rational::Ratio;

    fn two(blocks: usize) -> GeometricColoring {
        GeometricColoring::with_blocks(GrowthRate::integer(2), blocks).unwrap()
    }

    #[test]
    fn stars_q2() {
        let f = Reordering::new(&two(6)).unwrap();
        assert_eq!(&f.blue_stars()[..3], &[1, 6, 7]);
        assert_eq!(&f.red_stars()[..4], &[3, 12, 13, 14]);
    }

    #[test]
    fn hand_simulated_prefix_q2() {
        let f = Reordering::new(&two(6)).unwrap();
        let fwd = f.forward();
        assert_eq!(&fwd[..6], &[1, 2, 3, 4, 5, 6]);
        assert_eq!(&fwd[6..11], &[8, 9, 10, 11, 12]);
        assert_eq!(f.f(12), 7);
        assert_eq!(f.f(13), 13);
        assert_eq!(&fwd[13..22], &[16, 17, 18, 19, 20, 21, 22, 23, 24]);
        assert_eq!(f.f(23), 14);
        assert_eq!(f.red_star(4), Some(14));
    }

    #[test]
    fn ell_values_q2() {
        let c = two(6);
        assert_eq!(ell_r(&c, 4).unwrap(), 9);
        assert_eq!(ell_b(&c, 4).unwrap(), 14);
        assert_eq!(ell_r(&c, 1).unwrap(), 2);
        assert_eq!(ell_b(&c, 1).unwrap(), 1);
        assert_eq!(ell_r_closed_form(&c, 4).unwrap(), 9);
        assert_eq!(ell_b_closed_form(&c, 4).unwrap(), 14);
        assert!(ell_r(&c, 0).is_err());
        assert!(ell_r(&c, 10_000).is_err());
        assert!(ell_b_closed_form(&c, 10_000).is_err());
    }

    #[test]
    fn bijection_and_order() {
        for q in [
            GrowthRate::integer(2),
            GrowthRate::SILVER,
            GrowthRate::Rational(Ratio::new(3, 2)),
        ] {
            let c = GeometricColoring::with_blocks(q, 10).unwrap();
            let f = Reordering::new(&c).unwrap();
            for k in 1..=c.n() {
                assert_eq!(f.position(f.f(k)), k);
            }
            for color in [Color::Red, Color::Blue] {
                let seq: Vec<Vertex> = f
                    .forward()
                    .iter()
                    .copied()
                    .filter(|&v| c.vertex_color(v) == color)
                    .collect();
                assert!(seq.windows(2).all(|w| w[0] < w[1]));
            }
            for t in 1..=f.realized() {
                let k = f.ell_b(t).unwrap() + f.ell_r(t).unwrap();
                assert_eq!(f.f(k), f.red_star(t).unwrap());
            }
        }
    }

    #[test]
    fn stops_alternate() {
        let f = Reordering::new(&GeometricColoring::with_blocks(GrowthRate::SILVER, 8).unwrap()).unwrap();
        let stops = f.star_stops();
        for (i, s) in stops.iter().take(2 * f.realized()).enumerate() {
            let expected = if i % 2 == 0 { Color::Blue } else { Color::Red };
            assert_eq!(s.color, expected);
            assert_eq!(s.t, i / 2 + 1);
            assert_eq!(f.f(s.position), s.vertex);
        }
    }

    #[test]
    fn single_block_prefix() {
        let c = two(1);
        let f = Reordering::new(&c).unwrap();
        assert_eq!(f.forward(), &[1]);
        assert_eq!(f.realized(), 0);
    }
}
