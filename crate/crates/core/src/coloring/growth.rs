use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use super::quadratic::{QuadraticInt, SurdRational};
use crate::error::{Error, Result};

/// Block growth parameter `q > 1`.
///
/// A `Float` value is read as the exact dyadic rational it stores, so every
/// floor `⌊q^i⌋` is still computed without rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthRate {
    Rational(Ratio<u64>),
    Quadratic(QuadraticInt),
    Float(f64),
}

/// Exact or approximate value of the density bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Exact(SurdRational),
    Approx(f64),
}

impl BoundValue {
    pub fn to_f64(self) -> f64 {
        match self {
            BoundValue::Exact(s) => s.to_f64(),
            BoundValue::Approx(x) => x,
        }
    }

    pub fn exact(self) -> Option<SurdRational> {
        match self {
            BoundValue::Exact(s) => Some(s),
            BoundValue::Approx(_) => None,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(s) => write!(f, "{s}"),
            BoundValue::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl GrowthRate {
    pub const SILVER: GrowthRate = GrowthRate::Quadratic(QuadraticInt::SILVER);

    pub fn integer(k: u64) -> Self {
        GrowthRate::Rational(Ratio::from_integer(k))
    }

    /// `num/den`, which must exceed 1.
    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::precondition("zero denominator"));
        }
        let q = GrowthRate::Rational(Ratio::new(num, den));
        if !q.is_greater_than_one() {
            return Err(Error::precondition(format!("growth rate {q} must exceed 1")));
        }
        Ok(q)
    }

    pub fn is_greater_than_one(&self) -> bool {
        match *self {
            GrowthRate::Rational(r) => r.numer() > r.denom(),
            GrowthRate::Quadratic(x) => x.exact_cmp(QuadraticInt::ONE) == Ordering::Greater,
            GrowthRate::Float(x) => x.is_finite() && x > 1.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            GrowthRate::Rational(r) => *r.numer() as f64 / *r.denom() as f64,
            GrowthRate::Quadratic(x) => x.to_f64(),
            GrowthRate::Float(x) => x,
        }
    }

    /// Exact `⌊q^i⌋`.
    pub fn floor_pow(&self, i: u32) -> Result<u64> {
        let overflow = || Error::Overflow(format!("floor({self}^{i})"));
        match *self {
            GrowthRate::Rational(r) => {
                let num = BigUint::from(*r.numer()).pow(i);
                let den = BigUint::from(*r.denom()).pow(i);
                (num / den).to_u64().ok_or_else(overflow)
            }
            GrowthRate::Quadratic(x) => {
                let p = x.checked_pow(i).ok_or_else(overflow)?;
                let fl = p.floor().ok_or_else(overflow)?;
                u64::try_from(fl).map_err(|_| overflow())
            }
            GrowthRate::Float(x) => {
                let (mantissa, exp) = dyadic(x);
                let m = BigUint::from(mantissa).pow(i);
                let e = exp * i as i64;
                let v = if e >= 0 { m << e as u64 } else { m >> (-e) as u64 };
                v.to_u64().ok_or_else(overflow)
            }
        }
    }

    /// `(q² + 2q − 1) / (q² + 3q − 2)`, exact unless `q` is a float.
    pub fn density_bound(&self) -> Result<BoundValue> {
        if !self.is_greater_than_one() {
            return Err(Error::precondition(format!("growth rate {self} must exceed 1")));
        }
        let overflow = || Error::Overflow(format!("density bound at q = {self}"));
        match *self {
            GrowthRate::Rational(r) => {
                let p = QuadraticInt::from_int(*r.numer() as i128);
                let s = QuadraticInt::from_int(*r.denom() as i128);
                let poly = |c1: i128, c0: i128| -> Option<i128> {
                    let pp = p.checked_mul(p)?;
                    let ps = p.checked_mul(s)?.checked_scale(c1)?;
                    let ss = s.checked_mul(s)?.checked_scale(c0)?;
                    Some(pp.checked_add(ps)?.checked_sub(ss)?.a)
                };
                let num = poly(2, 1).ok_or_else(overflow)?;
                let den = poly(3, 2).ok_or_else(overflow)?;
                let v = SurdRational::new(num, 0, den).ok_or_else(overflow)?;
                Ok(BoundValue::Exact(v))
            }
            GrowthRate::Quadratic(q) => {
                let q2 = q.checked_mul(q).ok_or_else(overflow)?;
                let num = q2
                    .checked_add(q.checked_scale(2).ok_or_else(overflow)?)
                    .and_then(|x| x.checked_sub(QuadraticInt::from_int(1)))
                    .ok_or_else(overflow)?;
                let den = q2
                    .checked_add(q.checked_scale(3).ok_or_else(overflow)?)
                    .and_then(|x| x.checked_sub(QuadraticInt::from_int(2)))
                    .ok_or_else(overflow)?;
                let v = SurdRational::quotient(num, den).ok_or_else(overflow)?;
                Ok(BoundValue::Exact(v))
            }
            GrowthRate::Float(x) => Ok(BoundValue::Approx(density_bound_f64(x))),
        }
    }
}

/// `x = mantissa * 2^exp` exactly, for finite positive `x`.
fn dyadic(x: f64) -> (u64, i64) {
    let bits = x.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    }
}

/// Floating evaluation of the density bound, for searches over real `q`.
pub fn density_bound_f64(q: f64) -> f64 {
    (q * q + 2.0 * q - 1.0) / (q * q + 3.0 * q - 2.0)
}

/// Exact comparison of the density bound at two finite floats, each read
/// as the rational it stores.
pub fn cmp_density_bound(q1: f64, q2: f64) -> Ordering {
    let exact = |q: f64| {
        let q = BigRational::from_float(q).expect("finite growth rate");
        let one = BigRational::one();
        let two = &one + &one;
        let three = &two + &one;
        let num = &q * &q + &two * &q - &one;
        let den = &q * &q + three * &q - two;
        num / den
    };
    exact(q1).cmp(&exact(q2))
}

/// Ternary search for the minimiser of the density bound on `[lo, hi]`.
/// Probes are compared exactly, since the bound is flat to within `f64`
/// resolution near its minimum.
pub fn minimize_density_bound(lo: f64, hi: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if m1 >= m2 {
            break;
        }
        if cmp_density_bound(m1, m2) != Ordering::Greater {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

impl fmt::Display for GrowthRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthRate::Rational(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            GrowthRate::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            GrowthRate::Quadratic(x) if *x == QuadraticInt::SILVER => f.write_str("silver"),
            GrowthRate::Quadratic(x) => write!(f, "{x}"),
            GrowthRate::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Accepts `silver`, `a/b`, an integer `k`, or a decimal literal.
impl FromStr for GrowthRate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::precondition(format!("cannot parse growth rate {s:?}"));
        let q = if s.eq_ignore_ascii_case("silver") {
            GrowthRate::SILVER
        } else if let Some((a, b)) = s.split_once('/') {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            return GrowthRate::ratio(a, b);
        } else if let Ok(k) = s.parse::<u64>() {
            GrowthRate::integer(k)
        } else {
            GrowthRate::Float(s.parse::<f64>().map_err(|_| bad())?)
        };
        if !q.is_greater_than_one() {
            return Err(Error::precondition(format!("growth rate {s} must exceed 1")));
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(q: GrowthRate, k: u32) -> Vec<u64> {
        (0..k).map(|i| q.floor_pow(i).unwrap()).collect()
    }

    #[test]
    fn block_sizes() {
        assert_eq!(sizes(GrowthRate::integer(2), 5), vec![1, 2, 4, 8, 16]);
        assert_eq!(sizes(GrowthRate::SILVER, 5), vec![1, 2, 5, 14, 33]);
        let three_halves = GrowthRate::Rational(Ratio::new(3, 2));
        assert_eq!(sizes(three_halves, 5), vec![1, 1, 2, 3, 5]);
        assert_eq!(sizes(GrowthRate::Float(1.5), 5), vec![1, 1, 2, 3, 5]);
    }

    #[test]
    fn silver_floors_match_pell_numbers() {
        // (1+√2)^i = x + y√2 and |x - y√2| < 1 has sign (-1)^i
        let mut p = (1i128, 1i128);
        for i in 1..50u32 {
            let expected = if i % 2 == 0 { 2 * p.0 - 1 } else { 2 * p.0 };
            assert_eq!(
                GrowthRate::SILVER.floor_pow(i).unwrap() as i128,
                expected,
                "i = {i}"
            );
            p = (p.0 + 2 * p.1, p.0 + p.1);
        }
    }

    #[test]
    fn overflow_is_an_error() {
        assert!(matches!(
            GrowthRate::integer(2).floor_pow(64),
            Err(Error::Overflow(_))
        ));
        assert!(matches!(
            GrowthRate::SILVER.floor_pow(120),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn bound_values() {
        let silver = GrowthRate::SILVER.density_bound().unwrap();
        assert_eq!(silver.exact(), SurdRational::new(12, 2, 17));
        assert!((silver.to_f64() - 0.872_260_41).abs() < 1e-8);
        let two = GrowthRate::integer(2).density_bound().unwrap();
        assert_eq!(two.exact(), SurdRational::new(7, 0, 8));
        assert!(GrowthRate::Rational(Ratio::new(1, 1)).density_bound().is_err());
    }

    #[test]
    fn ternary_search_finds_silver() {
        let q = minimize_density_bound(1.0 + 1e-9, 4.0, 1e-13);
        assert!((q - (1.0 + 2f64.sqrt())).abs() < 1e-9);
        // the derivative's numerator is q² − 2q − 1
        let silver = 1.0 + 2f64.sqrt();
        assert_eq!(cmp_density_bound(silver - 1e-6, silver), Ordering::Greater);
        assert_eq!(cmp_density_bound(silver + 1e-6, silver), Ordering::Greater);
    }

    #[test]
    fn parse() {
        assert_eq!("silver".parse::<GrowthRate>().unwrap(), GrowthRate::SILVER);
        assert_eq!("2".parse::<GrowthRate>().unwrap(), GrowthRate::integer(2));
        assert_eq!(
            "3/2".parse::<GrowthRate>().unwrap(),
            GrowthRate::Rational(Ratio::new(3, 2))
        );
        assert_eq!("2.5".parse::<GrowthRate>().unwrap(), GrowthRate::Float(2.5));
        for bad in ["1", "1/2", "x", "3/0", "0.5", ""] {
            assert!(bad.parse::<GrowthRate>().is_err(), "{bad}");
        }
    }
}
