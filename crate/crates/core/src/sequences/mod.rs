//! Oscillation of nondecreasing sequences around the diagonal `a_i = i`,
//! gap sequences and their `k`-goodness, the search for a good threshold,
//! and the second-order recurrence that bounds how long such a search can
//! fail.
//!
//! Indices are 1-based throughout, matching the combinatorial statements.

mod recurrence;
mod search;

use std::io::BufRead;

use crate::error::{Error, Result};

pub use recurrence::{
    choose_n, closed_form_coefficients, extremal_sequence, recurrence_trace, ChosenN, RecurrenceTrace, Rho,
};
pub use search::{
    find_good_t, find_good_t_with_scale, find_oscillation_t, find_oscillation_t_with_scale, GoodT,
    OscillationT,
};

/// Nondecreasing sequence of nonnegative reals.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationSequence {
    values: Vec<f64>,
}

/// Nonnegative sequence, not necessarily monotone.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSequence {
    values: Vec<f64>,
}

fn check_nonnegative(values: &[f64]) -> Result<()> {
    if let Some((i, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || **v < 0.0)
    {
        return Err(Error::precondition(format!(
            "entry {} is {v}, expected a finite nonnegative number",
            i + 1
        )));
    }
    Ok(())
}

impl OscillationSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_nonnegative(&values)?;
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::precondition(format!(
                "sequence decreases at index {}",
                i + 2
            )));
        }
        Ok(OscillationSequence { values })
    }

    pub fn from_integers(values: &[usize]) -> Result<Self> {
        OscillationSequence::new(values.iter().map(|&v| v as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_i` for `1 ≤ i ≤ n`.
    pub fn get(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.fract() == 0.0)
    }
}

impl GapSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_nonnegative(&values)?;
        Ok(GapSequence { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `T` with witnesses `a_i − i ≥ T` and `j − a_j ≥ T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillation {
    pub value: f64,
    pub i: usize,
    pub j: usize,
}

pub fn oscillation(s: &OscillationSequence) -> Result<Oscillation> {
    if s.is_empty() {
        return Err(Error::precondition("oscillation of an empty sequence"));
    }
    let (mut best_up, mut i) = (f64::NEG_INFINITY, 0);
    let (mut best_down, mut j) = (f64::NEG_INFINITY, 0);
    for (idx, &a) in s.values().iter().enumerate() {
        let pos = (idx + 1) as f64;
        if a - pos > best_up {
            best_up = a - pos;
            i = idx + 1;
        }
        if pos - a > best_down {
            best_down = pos - a;
            j = idx + 1;
        }
    }
    Ok(Oscillation {
        value: best_up.min(best_down).max(0.0),
        i,
        j,
    })
}

fn check_threshold(s: &OscillationSequence, t: f64) -> Result<()> {
    let osc = oscillation(s)?.value;
    if !(t > 0.0 && t <= osc) {
        return Err(Error::precondition(format!(
            "threshold {t} must lie in (0, {osc}]"
        )));
    }
    Ok(())
}

/// `ℓ⁺(t) = min{i : a_i ≥ i + t}` for `0 < t ≤ T`.
pub fn ell_plus(s: &OscillationSequence, t: f64) -> Result<usize> {
    check_threshold(s, t)?;
    first_above(s, t).ok_or_else(|| Error::invariant("no index reaches the threshold"))
}

/// `ℓ⁻(t) = min{j : a_j ≤ j − t}` for `0 < t ≤ T`.
pub fn ell_minus(s: &OscillationSequence, t: f64) -> Result<usize> {
    check_threshold(s, t)?;
    first_below(s, t).ok_or_else(|| Error::invariant("no index reaches the threshold"))
}

pub(crate) fn first_above(s: &OscillationSequence, t: f64) -> Option<usize> {
    s.values()
        .iter()
        .enumerate()
        .position(|(idx, &a)| a - (idx + 1) as f64 >= t)
        .map(|p| p + 1)
}

pub(crate) fn first_below(s: &OscillationSequence, t: f64) -> Option<usize> {
    s.values()
        .iter()
        .enumerate()
        .position(|(idx, &a)| (idx + 1) as f64 - a >= t)
        .map(|p| p + 1)
}

/// Maximal runs of indices on one side of the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalPartition {
    /// Inclusive 1-based `(start, end)` pairs tiling `[n]`.
    pub intervals: Vec<(usize, usize)>,
    /// `s_i = max |a_j − j|` over `I_i`.
    pub gaps: Vec<f64>,
    /// Whether the odd-numbered intervals lie on or above the diagonal,
    /// which happens exactly when `a_1 ≥ 1`.
    pub odd_above: bool,
}

impl IntervalPartition {
    pub fn gap_sequence(&self) -> GapSequence {
        GapSequence {
            values: self.gaps.clone(),
        }
    }

    /// Whether interval `i` (1-based) lies on or above the diagonal.
    pub fn is_above(&self, i: usize) -> bool {
        (i % 2 == 1) == self.odd_above
    }
}

pub fn interval_partition(s: &OscillationSequence) -> Result<IntervalPartition> {
    if s.is_empty() {
        return Err(Error::precondition("partition of an empty sequence"));
    }
    let above = |idx: usize| s.values()[idx] >= (idx + 1) as f64;
    let mut intervals = Vec::new();
    let mut gaps = Vec::new();
    let mut start = 0usize;
    let mut gap = 0.0f64;
    for idx in 0..s.len() {
        if idx > start && above(idx) != above(start) {
            intervals.push((start + 1, idx));
            gaps.push(gap);
            start = idx;
            gap = 0.0;
        }
        gap = gap.max((s.values()[idx] - (idx + 1) as f64).abs());
    }
    intervals.push((start + 1, s.len()));
    gaps.push(gap);
    Ok(IntervalPartition {
        intervals,
        gaps,
        odd_above: above(0),
    })
}

/// First odd and first even index (1-based) whose value reaches `k`, if both
/// exist.
pub fn is_k_good(g: &GapSequence, k: f64) -> Option<(usize, usize)> {
    Some((first_reaching(g, k, 1)?, first_reaching(g, k, 0)?))
}

/// First index of the given parity (1 = odd, 0 = even) with `a_i ≥ t`.
fn first_reaching(g: &GapSequence, t: f64, parity: usize) -> Option<usize> {
    g.values()
        .iter()
        .enumerate()
        .map(|(idx, &a)| (idx + 1, a))
        .find(|&(i, a)| i % 2 == parity && a >= t)
        .map(|(i, _)| i)
}

fn prefix_sum(g: &GapSequence, before: usize) -> f64 {
    g.values()[..before - 1].iter().sum()
}

fn not_good(t: f64) -> Error {
    Error::precondition(format!("sequence is not {t}-good"))
}

/// `u_o(t) = a_1 + … + a_{i_o − 1}`, `i_o` the first odd index with `a_i ≥ t`.
pub fn u_odd(g: &GapSequence, t: f64) -> Result<f64> {
    let (io, _) = is_k_good(g, t).ok_or_else(|| not_good(t))?;
    Ok(prefix_sum(g, io))
}

/// `u_e(t) = a_1 + … + a_{i_e − 1}`, `i_e` the first even index with `a_i ≥ t`.
pub fn u_even(g: &GapSequence, t: f64) -> Result<f64> {
    let (_, ie) = is_k_good(g, t).ok_or_else(|| not_good(t))?;
    Ok(prefix_sum(g, ie))
}

/// Reads whitespace-separated nonnegative numbers; `#` starts a comment.
pub fn read_sequence<R: BufRead>(input: R) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (ln, line) in input.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("");
        for tok in body.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::parse(ln + 1, format!("bad number {tok:?}")))?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::parse(ln + 1, format!("{tok} is not a nonnegative number")));
            }
            values.push(v);
        }
    }
    Ok(values)
}
