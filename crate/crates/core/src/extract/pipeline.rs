use num_rational::Ratio;

use super::{degree_sequence, extract_forest, oscillation_or_forest, OscillationOrForest};
use crate::error::{Error, Result};
use crate::graphmodel::{SimpleForest, TotalColoredGraph};
use crate::sequences::{choose_n, find_oscillation_t_with_scale};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineRoute {
    /// The dichotomy produced a forest covering `7n/8 − αn` vertices.
    Forest,
    /// The dichotomy produced an oscillation and the forest comes from
    /// [`extract_forest`].
    Oscillation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub route: PipelineRoute,
    /// For the forest route this is `⌈k/8⌉`, the least admissible value.
    pub t: usize,
    /// The real threshold found by the sequence search.
    pub t_real: Option<f64>,
    pub forest: SimpleForest,
    pub horizon: usize,
    pub density: Ratio<u64>,
    pub k: usize,
    pub n_scale: usize,
    pub gamma: f64,
    /// Hypotheses that do not hold for this input. When empty, the density
    /// is guaranteed to reach `(12 + √8)/17 − γ`.
    pub notes: Vec<String>,
}

impl PipelineReport {
    pub fn preconditions_met(&self) -> bool {
        self.notes.is_empty()
    }

    pub fn target(&self) -> f64 {
        (12.0 + 8f64.sqrt()) / 17.0 - self.gamma
    }
}

/// Forest of density close to `(12 + √8)/17` on some initial segment.
///
/// `n` must equal `kN`. With `δ = γ/4`, the dichotomy either yields a forest
/// directly or an oscillation of at least `kN/8`; in the latter case a real
/// threshold `t' ∈ [k/8, kN/8]` with `ℓ⁺ + ℓ⁻ ≥ (4 + √8 − δ) t'` is found and
/// the forest is extracted at `t = ⌈t'⌉`, which leaves `ℓ⁺` and `ℓ⁻`
/// unchanged on integer sequences.
///
/// Unmet hypotheses (`k < 8/δ`, `N` below `choose_n(δ)`, `α > δ/(8N)`) are
/// listed in [`PipelineReport::notes`]; failures are wrapped in
/// [`Error::Stage`].
pub fn simple_forest_pipeline(g: &TotalColoredGraph, k: usize, gamma: f64) -> Result<PipelineReport> {
    let n = g.n();
    if k == 0 || n == 0 || !n.is_multiple_of(k) {
        return Err(Error::precondition(format!(
            "n = {n} is not a positive multiple of k = {k}"
        )));
    }
    let n_scale = n / k;
    let delta = gamma / 4.0;
    let required = choose_n(delta).map_err(|e| e.in_stage("choose_n"))?;

    let mut notes = Vec::new();
    if (k as f64) * delta < 8.0 {
        notes.push(format!("k = {k} is below 32/gamma = {}", 8.0 / delta));
    }
    if required.to_u64().is_none_or(|r| (n_scale as u64) < r) {
        notes.push(format!(
            "N = {n_scale} is below choose_n(gamma/4) = {}",
            required.n
        ));
    }
    let alpha = g.alpha();
    if (*alpha.numer() as f64) * 8.0 * (n_scale as f64) > delta * (*alpha.denom() as f64) {
        notes.push(format!("alpha = {alpha} exceeds gamma/(32N)"));
    }

    let k_eighth = Ratio::new(k as u64, 8);
    let t_min = k_eighth.ceil().to_integer() as usize;
    let report = match oscillation_or_forest(g).map_err(|e| e.in_stage("dichotomy"))? {
        OscillationOrForest::Forest(w) => PipelineReport {
            route: PipelineRoute::Forest,
            t: t_min.max(1),
            t_real: None,
            forest: w.forest,
            horizon: n,
            density: w.density,
            k,
            n_scale,
            gamma,
            notes,
        },
        OscillationOrForest::Oscillation(_) => {
            let s = degree_sequence(g)?.to_oscillation_sequence();
            let found = find_oscillation_t_with_scale(&s, k as f64 / 8.0, delta, n_scale as f64)
                .map_err(|e| e.in_stage("threshold"))?;
            let t = found.t.ceil() as usize;
            let e = extract_forest(g, t).map_err(|e| e.in_stage("extract"))?;
            if (e.lplus, e.lminus) != (found.lplus, found.lminus) {
                return Err(
                    Error::invariant(format!("rounding t = {} up to {t} changed l+/l-", found.t))
                        .in_stage("extract"),
                );
            }
            PipelineReport {
                route: PipelineRoute::Oscillation,
                t,
                t_real: Some(found.t),
                forest: e.forest,
                horizon: e.horizon,
                density: e.density,
                k,
                n_scale,
                gamma,
                notes,
            }
        }
    };

    if Ratio::from_integer(report.t as u64) < k_eighth || report.t > n {
        return Err(Error::invariant(format!(
            "t = {} outside [k/8, kN] = [{k_eighth}, {n}]",
            report.t
        )));
    }
    if report.preconditions_met() {
        let d = *report.density.numer() as f64 / *report.density.denom() as f64;
        if d < report.target() {
            return Err(Error::invariant(format!(
                "density {} is below (12+sqrt8)/17 - gamma",
                report.density
            )));
        }
    }
    Ok(report)
}
