//! Validated problem parameters: the field order `q = p^k` and the pair
//! `(n, m)` with `1 <= m <= n`.

use crate::error::{Error, Result};
use crate::math;

/// A prime power `q = p^k`, stored with its decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    q: u64,
    p: u64,
    k: u32,
}

impl PrimePower {
    /// Validates `q >= 2` as a prime power by trial factorization.
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = validate_prime_power(q)?;
        Ok(PrimePower { q, p, k })
    }

    pub fn value(&self) -> u64 {
        self.q
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn is_prime(&self) -> bool {
        self.k == 1
    }
}

/// Returns `(p, k)` with `q = p^k` and `p` prime, or `NotAPrimePower`.
///
/// Trial factorization up to `sqrt(q)`; practical sweeps keep `q` small, so
/// probabilistic primality is not needed.
pub fn validate_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotAPrimePower(q));
    }
    // Smallest prime factor of q.
    let mut p = q;
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    // q must be a power of p.
    let mut rest = q;
    let mut k = 0u32;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Ok((p, k))
    } else {
        Err(Error::NotAPrimePower(q))
    }
}

/// The triple `(q, n, m)` with `q` a prime power, `n >= 1`, `1 <= m <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    q: PrimePower,
    n: u32,
    m: u32,
}

impl Params {
    pub fn new(q: u64, n: u32, m: u32) -> Result<Self> {
        let q = PrimePower::new(q)?;
        if n < 1 || m < 1 || m > n {
            return Err(Error::InvalidParams { q: q.value(), n, m });
        }
        Ok(Params { q, n, m })
    }

    pub fn from_prime_power(q: PrimePower, n: u32, m: u32) -> Result<Self> {
        if n < 1 || m < 1 || m > n {
            return Err(Error::InvalidParams { q: q.value(), n, m });
        }
        Ok(Params { q, n, m })
    }

    pub fn q(&self) -> u64 {
        self.q.value()
    }

    pub fn prime_power(&self) -> PrimePower {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The friability ratio `u = n/m`.
    pub fn u(&self) -> f64 {
        self.n as f64 / self.m as f64
    }

    /// `ceil((m+1)/2)`, the exponent in the `q^{-ceil((m+1)/2)}` error scale.
    pub fn half_exponent(&self) -> u32 {
        (self.m + 2) / 2
    }

    /// `log_q n = ln n / ln q`.
    pub fn log_q_n(&self) -> f64 {
        math::ln(self.n as f64) / math::ln(self.q.value() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_examples() {
        assert_eq!(validate_prime_power(2).unwrap(), (2, 1));
        assert_eq!(validate_prime_power(9).unwrap(), (3, 2));
        assert_eq!(validate_prime_power(12), Err(Error::NotAPrimePower(12)));
    }

    #[test]
    fn prime_power_more() {
        assert_eq!(validate_prime_power(4).unwrap(), (2, 2));
        assert_eq!(validate_prime_power(8).unwrap(), (2, 3));
        assert_eq!(validate_prime_power(5).unwrap(), (5, 1));
        assert_eq!(validate_prime_power(1024).unwrap(), (2, 10));
        assert_eq!(validate_prime_power(7919).unwrap(), (7919, 1));
        assert!(validate_prime_power(0).is_err());
        assert!(validate_prime_power(1).is_err());
        assert!(validate_prime_power(6).is_err());
        assert!(validate_prime_power(100).is_err());
    }

    #[test]
    fn params_validation() {
        let p = Params::new(9, 10, 3).unwrap();
        assert_eq!(p.q(), 9);
        assert_eq!(p.prime_power().prime(), 3);
        assert_eq!(p.prime_power().exponent(), 2);
        assert!((p.u() - 10.0 / 3.0).abs() < 1e-15);
        assert_eq!(p.half_exponent(), 2);
        assert!(Params::new(9, 3, 10).is_err());
        assert!(Params::new(9, 0, 0).is_err());
        assert!(Params::new(9, 5, 0).is_err());
        assert!(Params::new(10, 5, 2).is_err());
    }

    #[test]
    fn half_exponent_parity() {
        // ceil((m+1)/2): m=1 -> 1, m=2 -> 2, m=3 -> 2, m=4 -> 3
        let he = |m| Params::new(2, 10, m).unwrap().half_exponent();
        assert_eq!(he(1), 1);
        assert_eq!(he(2), 2);
        assert_eq!(he(3), 2);
        assert_eq!(he(4), 3);
        assert_eq!(he(5), 3);
    }
}
