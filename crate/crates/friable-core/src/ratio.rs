//! Exact nonnegative rationals over `BigUint`.
//!
//! Values are kept with their natural denominators (`n!`, `q^n`, products of
//! both) and are *not* reduced on construction: equality and ordering go
//! through cross-multiplication, so repeated gcds are avoided. `reduce`
//! normalizes on demand.

use alloc::string::String;

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::math;

#[derive(Debug, Clone)]
pub struct ExactRatio {
    num: BigUint,
    den: BigUint,
}

impl ExactRatio {
    /// Builds `num/den`; panics on a zero denominator.
    pub fn new(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        ExactRatio { num, den }
    }

    pub fn zero() -> Self {
        ExactRatio {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn from_integer(n: u64) -> Self {
        ExactRatio {
            num: BigUint::from(n),
            den: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value lies in [0, 1].
    pub fn is_proper(&self) -> bool {
        self.num <= self.den
    }

    /// Returns the same value in lowest terms.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let g = self.num.gcd(&self.den);
        ExactRatio {
            num: &self.num / &g,
            den: &self.den / &g,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        ExactRatio {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    /// `self - other`; returns None when the difference would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let left = &self.num * &other.den;
        let right = &other.num * &self.den;
        if left < right {
            return None;
        }
        Some(ExactRatio {
            num: left - right,
            den: &self.den * &other.den,
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExactRatio {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    /// Correctly-rounded-ish f64 value (about 1 ulp of slack); under/overflows
    /// saturate to 0 or infinity.
    pub fn to_f64(&self) -> f64 {
        if self.num.is_zero() {
            return 0.0;
        }
        let nb = self.num.bits() as i64;
        let db = self.den.bits() as i64;
        // Scale the quotient into ~80 significant bits before dividing.
        let shift = db + 80 - nb;
        let q = if shift >= 0 {
            (&self.num << shift as u64) / &self.den
        } else {
            &self.num / (&self.den << (-shift) as u64)
        };
        let qf = q.to_f64().unwrap_or(f64::INFINITY);
        qf * math::exp2i(-shift)
    }

    /// Natural log of the value; `-inf` for zero. Accurate to ~1e-13 absolute
    /// even when the parts exceed f64 range.
    pub fn ln(&self) -> f64 {
        if self.num.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_biguint(&self.num) - ln_biguint(&self.den)
    }

    /// Decimal string of the unreduced pair, `num/den`.
    pub fn display_fraction(&self) -> String {
        let mut s = self.num.to_str_radix(10);
        s.push('/');
        s.push_str(&self.den.to_str_radix(10));
        s
    }
}

impl PartialEq for ExactRatio {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ExactRatio {}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_fraction())
    }
}

/// ln of a positive big integer via its top 64 bits plus a power-of-two shift.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 64 {
        return math::ln(x.to_u64().unwrap().to_f64().unwrap());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    math::ln(top as f64) + shift as f64 * core::f64::consts::LN_2
}

impl From<u64> for ExactRatio {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}
