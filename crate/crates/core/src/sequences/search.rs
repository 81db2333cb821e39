use super::{
    first_above, first_below, interval_partition, is_k_good, oscillation, u_even, u_odd, GapSequence,
    OscillationSequence,
};
use num_rational::BigRational;
use num_traits::Zero;

use super::recurrence::{choose_n, Rho};
use crate::error::{Error, Result};

/// A threshold `t` with `u_o(t) + u_e(t) ≥ ρ t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodT {
    pub t: f64,
    pub u_odd: f64,
    pub u_even: f64,
    pub rho: f64,
}

/// A threshold `t` with `ℓ⁺(t) + ℓ⁻(t) ≥ (ρ + 1) t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationT {
    pub t: f64,
    pub lplus: usize,
    pub lminus: usize,
    pub rho: f64,
}

impl OscillationT {
    pub fn ell(&self) -> usize {
        self.lplus + self.lminus
    }
}

fn check_scale(k: f64, n_scale: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::precondition(format!("k must be positive, got {k}")));
    }
    if !(n_scale.is_finite() && n_scale >= 1.0) {
        return Err(Error::precondition(format!(
            "N must be at least 1, got {n_scale}"
        )));
    }
    Ok(())
}

fn u_total(g: &GapSequence, t: f64) -> Result<(f64, f64)> {
    Ok((u_odd(g, t)?, u_even(g, t)?))
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

/// `prefix[i] = a_1 + … + a_i`, summed without rounding.
fn exact_prefix_sums(g: &GapSequence) -> Vec<BigRational> {
    let mut sums = vec![BigRational::zero()];
    for &a in g.values() {
        let next = sums.last().expect("nonempty") + exact(a);
        sums.push(next);
    }
    sums
}

/// Searches `[k, kN]` for `t` with `u_o(t) + u_e(t) ≥ (3 + √8 − γ) t`.
///
/// `u_o` and `u_e` only change where `t` passes a value of the sequence, so
/// the range splits into the point `{k}` and half-open pieces `(v, v']`
/// between consecutive values. On each piece the sums are constant and the
/// best choice is `min(v', U / ρ)`. The first piece admitting a valid `t` wins.
pub fn find_good_t_with_scale(g: &GapSequence, k: f64, gamma: f64, n_scale: f64) -> Result<GoodT> {
    check_scale(k, n_scale)?;
    let exact_rho = Rho::from_gamma(gamma)?;
    let rho = exact_rho.to_f64();
    let upper = k * n_scale;
    if is_k_good(g, upper).is_none() {
        return Err(Error::precondition(format!("sequence is not {upper}-good")));
    }

    let mut cuts: Vec<f64> = g
        .values()
        .iter()
        .copied()
        .filter(|&v| v > k && v < upper)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.push(upper);
    let prefix = exact_prefix_sums(g);

    let accept = |t: f64, lo: Option<f64>| -> Result<Option<GoodT>> {
        let mut t = t;
        loop {
            if let Some(lo) = lo {
                if t <= lo {
                    return Ok(None);
                }
            }
            let (io, ie) =
                is_k_good(g, t).ok_or_else(|| Error::invariant(format!("sequence is not {t}-good")))?;
            let total = &prefix[io - 1] + &prefix[ie - 1];
            if exact_rho.scaled_at_most(&exact(t), &total) {
                let (uo, ue) = u_total(g, t)?;
                return Ok(Some(GoodT {
                    t,
                    u_odd: uo,
                    u_even: ue,
                    rho,
                }));
            }
            if lo.is_none() {
                return Ok(None);
            }
            // U / ρ rounded past the exact crossing
            t = t.next_down();
        }
    };

    if let Some(found) = accept(k, None)? {
        return Ok(found);
    }
    let mut lo = k;
    for &hi in &cuts {
        let (uo, ue) = u_total(g, hi)?;
        let t = hi.min((uo + ue) / rho);
        if t > lo {
            if let Some(found) = accept(t, Some(lo))? {
                return Ok(found);
            }
        }
        lo = hi;
    }

    let required = choose_n(gamma)?;
    if n_scale >= required.to_f64() {
        Err(Error::invariant(format!(
            "no t in [{k}, {upper}] satisfies the good-sequence bound with N = {n_scale}"
        )))
    } else {
        Err(Error::precondition(format!(
            "no t in [{k}, {upper}] found at N = {n_scale}, below the guaranteed N = {}",
            required.n
        )))
    }
}

/// [`find_good_t_with_scale`] at `N = choose_n(γ)`, where a miss is an
/// invariant violation.
pub fn find_good_t(g: &GapSequence, k: f64, gamma: f64) -> Result<GoodT> {
    let n = choose_n(gamma)?.to_f64();
    find_good_t_with_scale(g, k, gamma, n)
}

/// Searches `[k, kN]` for `t` with `ℓ⁺(t) + ℓ⁻(t) ≥ (4 + √8 − γ) t` by
/// running the good-threshold search on the gaps of the diagonal partition.
pub fn find_oscillation_t_with_scale(
    s: &OscillationSequence,
    k: f64,
    gamma: f64,
    n_scale: f64,
) -> Result<OscillationT> {
    check_scale(k, n_scale)?;
    let upper = k * n_scale;
    let osc = oscillation(s)?.value;
    if osc < upper {
        return Err(Error::precondition(format!(
            "oscillation {osc} is below kN = {upper}"
        )));
    }
    let partition = interval_partition(s)?;
    let good = find_good_t_with_scale(&partition.gap_sequence(), k, gamma, n_scale)?;
    let rho = Rho::from_gamma(gamma)?;
    let t = good.t;
    let (lplus, lminus) = match (first_above(s, t), first_below(s, t)) {
        (Some(p), Some(m)) => (p, m),
        _ => {
            return Err(Error::invariant(format!(
                "threshold {t} is within the oscillation but a side is never reached"
            )))
        }
    };
    let t_exact = exact(t);
    let excess = BigRational::from_integer((lplus + lminus).into()) - &t_exact;
    if !rho.scaled_at_most(&t_exact, &excess) {
        return Err(Error::invariant(format!(
            "l+({t}) + l-({t}) = {} is below {}",
            lplus + lminus,
            (good.rho + 1.0) * t
        )));
    }
    Ok(OscillationT {
        t,
        lplus,
        lminus,
        rho: good.rho,
    })
}

pub fn find_oscillation_t(s: &OscillationSequence, k: f64, gamma: f64) -> Result<OscillationT> {
    let n = choose_n(gamma)?.to_f64();
    find_oscillation_t_with_scale(s, k, gamma, n)
}
