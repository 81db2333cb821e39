use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GapSequence;
use crate::coloring::quadratic::{big_ratio_to_f64, surd_ratio_to_f64, surd_sign};
use crate::error::{Error, Result};

/// `ρ = (a + b√2) / d` with `d > 0`, held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rho {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

impl Rho {
    pub fn new(a: BigInt, b: BigInt, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::precondition("zero denominator"));
        }
        let g = a.gcd(&b).gcd(&d);
        let g = if d.is_negative() { -g } else { g };
        Ok(Rho {
            a: a / &g,
            b: b / &g,
            d: d / g,
        })
    }

    pub fn rational(p: i64, q: u64) -> Result<Self> {
        Rho::new(BigInt::from(p), BigInt::zero(), BigInt::from(q))
    }

    /// The exact value stored in `x`.
    pub fn from_f64(x: f64) -> Result<Self> {
        let r =
            BigRational::from_float(x).ok_or_else(|| Error::precondition(format!("{x} is not finite")))?;
        Rho::new(r.numer().clone(), BigInt::zero(), r.denom().clone())
    }

    /// `3 + √8`, where the characteristic roots collide.
    pub fn critical() -> Self {
        Rho {
            a: BigInt::from(3),
            b: BigInt::from(2),
            d: BigInt::one(),
        }
    }

    /// `3 + √8 − γ` with `γ` read exactly; requires `0 < γ < 3 + √8`.
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        let g = BigRational::from_float(gamma)
            .ok_or_else(|| Error::precondition(format!("gamma {gamma} is not finite")))?;
        let (gn, gd) = (g.numer().clone(), g.denom().clone());
        // 3 + 2√2 − gn/gd = (3gd − gn + 2gd√2) / gd
        let rho = Rho::new(&gd * 3 - &gn, &gd * 2, gd)?;
        if gamma <= 0.0 || surd_sign(&rho.a, &rho.b) != Ordering::Greater {
            return Err(Error::precondition(format!(
                "gamma must lie in (0, 3+sqrt8), got {gamma}"
            )));
        }
        Ok(rho)
    }

    pub fn to_f64(&self) -> f64 {
        surd_ratio_to_f64(&self.a, &self.b, &self.d)
    }

    /// Exact test of `ρ t ≤ total`.
    pub fn scaled_at_most(&self, t: &BigRational, total: &BigRational) -> bool {
        // d·total − a·t ≥ b·t·√2, cleared of denominators
        let x = total * BigRational::from(self.d.clone()) - t * BigRational::from(self.a.clone());
        let y = t * BigRational::from(self.b.clone());
        let den = x.denom().lcm(y.denom());
        let xi = (x * BigRational::from(den.clone())).to_integer();
        let yi = (y * BigRational::from(den)).to_integer();
        surd_sign(&xi, &-yi) != Ordering::Less
    }

    /// Sign of `ρ² − 6ρ + 1`.
    pub fn discriminant_sign(&self) -> Ordering {
        let (a, b, d) = (&self.a, &self.b, &self.d);
        let rational = a * a + b * b * 2 - d * a * 6 + d * d;
        let surd = a * b * 2 - d * b * 6;
        surd_sign(&rational, &surd)
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = if self.b.is_zero() {
            self.a.to_string()
        } else if self.b.is_negative() {
            format!("{}-{}*sqrt2", self.a, -&self.b)
        } else {
            format!("{}+{}*sqrt2", self.a, self.b)
        };
        if self.d.is_one() {
            f.write_str(&top)
        } else {
            write!(f, "({top})/{}", self.d)
        }
    }
}

#[derive(Clone)]
struct Surd {
    a: BigInt,
    b: BigInt,
}

impl Surd {
    fn mul(&self, o: &Surd) -> Surd {
        Surd {
            a: &self.a * &o.a + &self.b * &o.b * 2,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn sub(&self, o: &Surd) -> Surd {
        Surd {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn sign(&self) -> Ordering {
        surd_sign(&self.a, &self.b)
    }
}

/// `b_1 = 1`, `b_2 = ρ − 2`, `b_{i+1} = (ρ − 1) b_i − ρ b_{i−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTrace {
    pub rho: Rho,
    /// `b_1, b_2, …`, ending at the first negative term if there is one.
    pub values: Vec<f64>,
    /// 1-based index of the first negative term.
    pub first_negative: Option<usize>,
}

/// Exact signs via `d^{i−1} b_i ∈ Z[√2]`; the floats are rounded from the
/// exact values.
fn trace_prefix(rho: &Rho, max_len: usize) -> RecurrenceTrace {
    let d = &rho.d;
    let step = Surd {
        a: &rho.a - d,
        b: rho.b.clone(),
    };
    let lag = Surd {
        a: d * &rho.a,
        b: d * &rho.b,
    };
    let mut values = Vec::new();
    let mut first_negative = None;
    let mut prev = Surd {
        a: BigInt::zero(),
        b: BigInt::zero(),
    };
    let mut cur = Surd {
        a: BigInt::one(),
        b: BigInt::zero(),
    };
    let mut scale = BigInt::one();
    for i in 1..=max_len {
        values.push(surd_ratio_to_f64(&cur.a, &cur.b, &scale));
        if cur.sign() == Ordering::Less {
            first_negative = Some(i);
            break;
        }
        let next = if i == 1 {
            Surd {
                a: &rho.a - d * 2,
                b: rho.b.clone(),
            }
        } else {
            step.mul(&cur).sub(&lag.mul(&prev))
        };
        prev = std::mem::replace(&mut cur, next);
        scale *= d;
    }
    RecurrenceTrace {
        rho: rho.clone(),
        values,
        first_negative,
    }
}

/// Runs the recurrence until its first negative term or `max_len` terms.
/// When `ρ² − 6ρ + 1 < 0` a negative term is guaranteed, so running out of
/// terms first is reported as an error.
pub fn recurrence_trace(rho: &Rho, max_len: usize) -> Result<RecurrenceTrace> {
    let trace = trace_prefix(rho, max_len);
    if trace.first_negative.is_none() && rho.discriminant_sign() == Ordering::Less {
        return Err(Error::precondition(format!(
            "no negative term among the first {max_len} for rho = {rho}; raise the length"
        )));
    }
    Ok(trace)
}

/// `(z, α)` with `b_i = 2 Re(z α^i)`, defined when the characteristic roots
/// are non-real.
pub fn closed_form_coefficients(rho: f64) -> Option<(Complex64, Complex64)> {
    let disc = rho * rho - 6.0 * rho + 1.0;
    if disc >= 0.0 {
        return None;
    }
    let alpha = Complex64::new((rho - 1.0) / 2.0, (-disc).sqrt() / 2.0);
    let a2 = alpha * alpha;
    // 2 Re(z α) = 1 and 2 Re(z α²) = ρ − 2, linear in (Re z, Im z)
    let (m11, m12, r1) = (alpha.re, -alpha.im, 0.5);
    let (m21, m22, r2) = (a2.re, -a2.im, (rho - 2.0) / 2.0);
    let det = m11 * m22 - m12 * m21;
    let x = (r1 * m22 - m12 * r2) / det;
    let y = (m11 * r2 - r1 * m21) / det;
    Some((Complex64::new(x, y), alpha))
}

/// `N = 6 · 4^m` with `m` the first negative index at `ρ = 3 + √8 − γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChosenN {
    pub m: usize,
    pub n: BigUint,
    pub rho: Rho,
}

impl ChosenN {
    pub fn to_f64(&self) -> f64 {
        big_ratio_to_f64(&BigInt::from(self.n.clone()), &BigInt::one())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.n.to_u64()
    }
}

const CHOOSE_N_MAX_LEN: usize = 1_000_000;

pub fn choose_n(gamma: f64) -> Result<ChosenN> {
    let rho = Rho::from_gamma(gamma)?;
    let trace = recurrence_trace(&rho, CHOOSE_N_MAX_LEN)?;
    let m = trace
        .first_negative
        .ok_or_else(|| Error::invariant(format!("no negative term for rho = {rho}")))?;
    let n = BigUint::from(6u32) << (2 * m);
    Ok(ChosenN { m, n, rho })
}

/// `b_1, …, b_length`: the sequence satisfying
/// `a'_{j+1} = (ρ − 2) a'_j − 2 (a'_1 + … + a'_{j−1})` with equality.
pub fn extremal_sequence(rho: &Rho, length: usize) -> Result<GapSequence> {
    let trace = trace_prefix(rho, length);
    if let Some(m) = trace.first_negative {
        return Err(Error::precondition(format!(
            "length {length} reaches the first negative term at {m}"
        )));
    }
    if let Some(p) = trace.values.iter().position(|&v| v <= 0.0) {
        return Err(Error::precondition(format!("term {} is not positive", p + 1)));
    }
    GapSequence::new(trace.values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho(p: i64, q: u64) -> Rho {
        Rho::rational(p, q).unwrap()
    }

    #[test]
    fn first_steps() {
        let t = recurrence_trace(&rho(29, 5), 100).unwrap();
        assert_eq!(t.values[0], 1.0);
        assert!((t.values[1] - 3.8).abs() < 1e-15);
        assert!((t.values[2] - 12.44).abs() < 1e-13);
    }

    #[test]
    fn first_negative_indices() {
        let m = |p, q| recurrence_trace(&rho(p, q), 1000).unwrap().first_negative;
        assert_eq!(m(4, 1), Some(4));
        assert_eq!(m(5, 1), Some(7));
        assert_eq!(m(11, 2), Some(11));
        assert_eq!(m(29, 5), Some(38));
        assert_eq!(m(1, 1), Some(2));
    }

    #[test]
    fn critical_rho_stays_positive() {
        let r = Rho::critical();
        assert_eq!(r.discriminant_sign(), Ordering::Equal);
        let t = recurrence_trace(&r, 10_000).unwrap();
        assert_eq!(t.first_negative, None);
        assert_eq!(t.values.len(), 10_000);
    }

    #[test]
    fn too_short_is_reported() {
        assert!(recurrence_trace(&rho(29, 5), 10).is_err());
        // above the critical value the roots are real and nothing is promised
        let t = recurrence_trace(&rho(6, 1), 50).unwrap();
        assert_eq!(t.first_negative, None);
    }

    #[test]
    fn two_term_form_agrees() {
        let r = rho(11, 2);
        let t = recurrence_trace(&r, 100).unwrap();
        let rf = r.to_f64();
        let b = &t.values;
        for i in 1..b.len() - 1 {
            // b_{i+2} = (ρ−2) b_{i+1} − 2 (b_1 + … + b_i), all 1-based
            let sum: f64 = b[..i].iter().sum();
            let expected = (rf - 2.0) * b[i] - 2.0 * sum;
            assert!((b[i + 1] - expected).abs() <= 1e-9 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn closed_form_matches() {
        for (p, q) in [(4, 1), (5, 1), (11, 2), (29, 5)] {
            let r = rho(p, q);
            let t = recurrence_trace(&r, 1000).unwrap();
            let (z, alpha) = closed_form_coefficients(r.to_f64()).unwrap();
            for (i, &b) in t.values.iter().enumerate() {
                let c = 2.0 * (z * alpha.powu(i as u32 + 1)).re;
                assert!((c - b).abs() <= 1e-6 * b.abs(), "rho={p}/{q} i={}", i + 1);
            }
        }
        assert!(closed_form_coefficients(6.0).is_none());
    }

    #[test]
    fn gamma_to_n() {
        let c = choose_n(0.5).unwrap();
        assert_eq!(c.m, 9);
        assert_eq!(c.n, BigUint::from(6u64 * 4u64.pow(9)));
        assert!(choose_n(0.0).is_err());
        assert!(choose_n(6.0).is_err());
        // ρ below 2 makes b_2 negative
        assert_eq!(choose_n(4.5).unwrap().m, 2);
    }

    #[test]
    fn m_is_monotone_in_gamma() {
        let mut last = usize::MAX;
        for i in 1..=40 {
            let m = choose_n(i as f64 * 0.125).unwrap().m;
            assert!(m <= last);
            last = m;
        }
    }

    #[test]
    fn extremal_prefix() {
        let s = extremal_sequence(&rho(29, 5), 3).unwrap();
        let v = s.values();
        assert_eq!(v[0], 1.0);
        assert!((v[1] - 3.8).abs() < 1e-15 && (v[2] - 12.44).abs() < 1e-13);
        assert!(extremal_sequence(&rho(29, 5), 37).is_ok());
        assert!(extremal_sequence(&rho(29, 5), 38).is_err());
    }
}
