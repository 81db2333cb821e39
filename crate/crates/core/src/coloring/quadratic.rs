//! Exact arithmetic in `Z[√2]` and `Q(√2)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};

/// `a + b√2` with `i128` coefficients. Arithmetic is checked; `None` means
/// the exact result does not fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticInt {
    pub a: i128,
    pub b: i128,
}

impl QuadraticInt {
    /// The silver ratio `1 + √2`.
    pub const SILVER: QuadraticInt = QuadraticInt { a: 1, b: 1 };
    pub const ONE: QuadraticInt = QuadraticInt { a: 1, b: 0 };

    pub const fn new(a: i128, b: i128) -> Self {
        QuadraticInt { a, b }
    }

    pub const fn from_int(a: i128) -> Self {
        QuadraticInt { a, b: 0 }
    }

    pub fn conjugate(self) -> Self {
        QuadraticInt::new(self.a, -self.b)
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(QuadraticInt::new(
            self.a.checked_add(o.a)?,
            self.b.checked_add(o.b)?,
        ))
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(QuadraticInt::new(
            self.a.checked_sub(o.a)?,
            self.b.checked_sub(o.b)?,
        ))
    }

    pub fn checked_mul(self, o: Self) -> Option<Self> {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let ac = self.a.checked_mul(o.a)?;
        let bd2 = self.b.checked_mul(o.b)?.checked_mul(2)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(QuadraticInt::new(ac.checked_add(bd2)?, ad.checked_add(bc)?))
    }

    pub fn checked_scale(self, k: i128) -> Option<Self> {
        Some(QuadraticInt::new(self.a.checked_mul(k)?, self.b.checked_mul(k)?))
    }

    pub fn checked_pow(self, exp: u32) -> Option<Self> {
        let mut acc = QuadraticInt::ONE;
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    /// Field norm `a² − 2b²`.
    pub fn checked_norm(self) -> Option<i128> {
        self.a
            .checked_mul(self.a)?
            .checked_sub(self.b.checked_mul(self.b)?.checked_mul(2)?)
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(self) -> Ordering {
        surd_sign(&BigInt::from(self.a), &BigInt::from(self.b))
    }

    /// Exact comparison; never rounds.
    pub fn exact_cmp(self, other: Self) -> Ordering {
        let a = BigInt::from(self.a) - BigInt::from(other.a);
        let b = BigInt::from(self.b) - BigInt::from(other.b);
        surd_sign(&a, &b)
    }

    /// Exact `⌊a + b√2⌋`, or `None` if it does not fit in `i128`.
    pub fn floor(self) -> Option<i128> {
        surd_floor(&BigInt::from(self.a), &BigInt::from(self.b)).to_i128()
    }

    pub fn to_f64(self) -> f64 {
        surd_to_f64(&BigInt::from(self.a), &BigInt::from(self.b))
    }
}

impl fmt::Display for QuadraticInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}*sqrt2"),
            (a, b) if b < 0 => write!(f, "{a}-{}*sqrt2", -b),
            (a, b) => write!(f, "{a}+{b}*sqrt2"),
        }
    }
}

/// Sign of `a + b√2` for arbitrary integers.
pub(crate) fn surd_sign(a: &BigInt, b: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    match (sa, sb) {
        (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
        (Sign::Plus | Sign::NoSign, Sign::Plus | Sign::NoSign) => Ordering::Greater,
        (Sign::Minus | Sign::NoSign, Sign::Minus | Sign::NoSign) => Ordering::Less,
        // opposite signs: compare a² with 2b²; equality would make √2 rational
        (Sign::Plus, Sign::Minus) => {
            if a * a > b * b * 2 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        (Sign::Minus, Sign::Plus) => {
            if b * b * 2 > a * a {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
    }
}

/// `⌊a + b√2⌋`: `b√2 = ±sqrt(2b²)` is irrational for `b ≠ 0`, so its floor
/// is the integer square root (or one less than its negation).
pub(crate) fn surd_floor(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_zero() {
        return a.clone();
    }
    let root: BigInt = Roots::sqrt(&(b * b * 2));
    if b.is_positive() {
        a + root
    } else {
        a - root - 1
    }
}

/// Close floating approximation of `a + b√2`, avoiding cancellation when
/// the two terms have opposite signs by going through the conjugate.
pub(crate) fn surd_to_f64(a: &BigInt, b: &BigInt) -> f64 {
    surd_ratio_to_f64(a, b, &BigInt::from(1))
}

/// Floating approximation of `(a + b√2) / d` for `d > 0`.
pub(crate) fn surd_ratio_to_f64(a: &BigInt, b: &BigInt, d: &BigInt) -> f64 {
    let same_sign = a.sign() == b.sign() || a.is_zero() || b.is_zero();
    if same_sign {
        big_ratio_to_f64(a, d) + std::f64::consts::SQRT_2 * big_ratio_to_f64(b, d)
    } else {
        // a + b√2 = (a² − 2b²) / (a − b√2), and a − b√2 has no cancellation
        let norm = a * a - b * b * 2;
        let conj = big_ratio_to_f64(a, d) - std::f64::consts::SQRT_2 * big_ratio_to_f64(b, d);
        let norm_over_d2 = big_ratio_to_f64(&norm, &(d * d));
        norm_over_d2 / conj
    }
}

/// `num / den` rounded to `f64` with ~1 ulp accuracy, saturating to ±inf.
pub(crate) fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.is_negative() != den.is_negative();
    let n = num.abs();
    let d = den.abs();
    // scale so the integer quotient carries 64+ significant bits
    let shift = 64i64 - (n.bits() as i64 - d.bits() as i64);
    let q = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let mantissa = q.to_f64().unwrap_or(f64::INFINITY);
    let exp = -shift;
    let v = if exp > 2000 {
        f64::INFINITY
    } else if exp < -2000 {
        0.0
    } else {
        mantissa * 2f64.powi(exp as i32)
    };
    if negative {
        -v
    } else {
        v
    }
}

/// `(a + b√2) / d` with `d > 0` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurdRational {
    pub a: i128,
    pub b: i128,
    pub d: i128,
}

impl SurdRational {
    pub fn new(a: i128, b: i128, d: i128) -> Option<Self> {
        if d == 0 {
            return None;
        }
        let g = a.gcd(&b).gcd(&d);
        let g = if d < 0 { -g } else { g };
        Some(SurdRational {
            a: a / g,
            b: b / g,
            d: d / g,
        })
    }

    /// `num / den` for two elements of `Z[√2]`.
    pub fn quotient(num: QuadraticInt, den: QuadraticInt) -> Option<Self> {
        let norm = den.checked_norm()?;
        let top = num.checked_mul(den.conjugate())?;
        SurdRational::new(top.a, top.b, norm)
    }

    pub fn to_f64(self) -> f64 {
        surd_ratio_to_f64(
            &BigInt::from(self.a),
            &BigInt::from(self.b),
            &BigInt::from(self.d),
        )
    }

    pub fn is_rational(self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for SurdRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = QuadraticInt::new(self.a, self.b);
        if self.d == 1 {
            write!(f, "{top}")
        } else if self.b == 0 {
            write!(f, "{}/{}", self.a, self.d)
        } else {
            write!(f, "({top})/{}", self.d)
        }
    }
}
