use std::io::Write;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphmodel::Color;

use super::{BlockMatching, GeometricColoring, GrowthRate, Reordering, SurdRational};

/// A local maximum candidate of the profile, indexed by the star count `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Breakpoint {
    pub t: usize,
    /// Horizon `ℓ_r(t) + ℓ_b(t) − 1`, the position just before `r_t*`.
    pub k: usize,
    pub value: Ratio<u64>,
    /// `1 − (t − 1) / (ℓ_r(t) + ℓ_b(t) − 1)`.
    pub envelope: Ratio<u64>,
}

/// `k ↦ |V(M) ∩ f([k])| / k` for `k = 1..=n`.
#[derive(Debug, Clone)]
pub struct DensityProfile {
    color: Color,
    covered: Vec<u64>,
    breakpoints: Vec<Breakpoint>,
}

impl DensityProfile {
    pub fn color(&self) -> Color {
        self.color
    }

    pub fn len(&self) -> usize {
        self.covered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covered.is_empty()
    }

    /// Number of matched vertices among `f(1), …, f(k)`.
    pub fn covered(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.covered[k - 1]
        }
    }

    pub fn value(&self, k: usize) -> Ratio<u64> {
        Ratio::new(self.covered(k), k as u64)
    }

    pub fn values(&self) -> impl Iterator<Item = (usize, Ratio<u64>)> + '_ {
        (1..=self.len()).map(|k| (k, self.value(k)))
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn max_breakpoint(&self) -> Option<&Breakpoint> {
        self.breakpoints.iter().max_by(|a, b| a.value.cmp(&b.value))
    }
}

/// Density of `M` along `f`, with breakpoints at the realized `t ≥ 2` where
/// `ℓ_c(t) − t` jumps, `c` the colour of `M`.
///
/// A `t` is realized when `r_t*` and `b_t*` exist and `f([ℓ_r(t)+ℓ_b(t)−1])`
/// contains no vertex of the last block, whose matching edges are cut off.
pub fn density_profile(c: &GeometricColoring, m: &BlockMatching, f: &Reordering) -> Result<DensityProfile> {
    if f.n() != c.n() {
        return Err(Error::precondition(format!(
            "reordering has {} vertices, colouring has {}",
            f.n(),
            c.n()
        )));
    }
    let mut covered = Vec::with_capacity(c.n());
    let mut count = 0u64;
    for &v in f.forward() {
        if m.covers(v) {
            count += 1;
        }
        covered.push(count);
    }

    let last = c.block(c.num_levels() - 1);
    let frontier = last.map(|v| f.position(v)).min().unwrap_or(usize::MAX);
    let ell_c = |t: usize| match m.color() {
        Color::Red => f.ell_r(t),
        Color::Blue => f.ell_b(t),
    };

    let mut breakpoints = Vec::new();
    for t in 2..=f.realized() {
        let (Some(lr), Some(lb)) = (f.ell_r(t), f.ell_b(t)) else {
            break;
        };
        let k = lr + lb - 1;
        if k >= frontier {
            break;
        }
        let (Some(now), Some(before)) = (ell_c(t), ell_c(t - 1)) else {
            break;
        };
        if now - t > before - (t - 1) {
            breakpoints.push(Breakpoint {
                t,
                k,
                value: Ratio::new(covered[k - 1], k as u64),
                envelope: Ratio::from_integer(1) - Ratio::new((t - 1) as u64, k as u64),
            });
        }
    }
    Ok(DensityProfile {
        color: m.color(),
        covered,
        breakpoints,
    })
}

/// One row of a growth-rate sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub q: GrowthRate,
    pub n: usize,
    pub blocks: usize,
    pub closed_form: f64,
    pub exact: Option<SurdRational>,
    /// Largest breakpoint value of the `M_r` profile, if any breakpoint exists.
    pub empirical: Option<Ratio<u64>>,
}

pub fn sweep_q(qs: &[GrowthRate], n_min: usize) -> Result<Vec<SweepRow>> {
    qs.par_iter()
        .map(|&q| {
            let bound = q.density_bound()?;
            let c = GeometricColoring::build(q, n_min)?;
            let (mr, mb) = c.matchings()?;
            let f = Reordering::from_matchings(&c, &mr, &mb);
            let profile = density_profile(&c, &mr, &f)?;
            Ok(SweepRow {
                q,
                n: c.n(),
                blocks: c.num_levels(),
                closed_form: bound.to_f64(),
                exact: bound.exact(),
                empirical: profile.max_breakpoint().map(|b| b.value),
            })
        })
        .collect()
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// CSV of the breakpoints: `k,density_num,density_den,density`.
pub fn write_breakpoints_csv<W: Write>(p: &DensityProfile, mut out: W) -> Result<()> {
    writeln!(out, "k,density_num,density_den,density")?;
    for b in p.breakpoints() {
        writeln!(
            out,
            "{},{},{},{:.9}",
            b.k,
            b.value.numer(),
            b.value.denom(),
            ratio_f64(b.value)
        )?;
    }
    Ok(())
}

/// CSV of every profile value, same columns as the breakpoint table.
pub fn write_profile_csv<W: Write>(p: &DensityProfile, mut out: W) -> Result<()> {
    writeln!(out, "k,density_num,density_den,density")?;
    for (k, v) in p.values() {
        writeln!(out, "{k},{},{},{:.9}", v.numer(), v.denom(), ratio_f64(v))?;
    }
    Ok(())
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(
        out,
        "q,n,blocks,closed_form,exact,empirical_num,empirical_den,empirical"
    )?;
    for r in rows {
        let exact = r.exact.map(|e| e.to_string()).unwrap_or_default();
        match r.empirical {
            Some(e) => writeln!(
                out,
                "{},{},{},{:.9},{},{},{},{:.9}",
                r.q,
                r.n,
                r.blocks,
                r.closed_form,
                exact,
                e.numer(),
                e.denom(),
                ratio_f64(e)
            )?,
            None => writeln!(
                out,
                "{},{},{},{:.9},{},,,",
                r.q, r.n, r.blocks, r.closed_form, exact
            )?,
        }
    }
    Ok(())
}
