//! Exact counts of monic irreducible polynomials over `F_q`.
//!
//! The degree-`d` count `pi_q(d)` comes from Möbius inversion of the identity
//! `sum_{d | N} d * pi_q(d) = q^N`, which also serves as the table's built-in
//! consistency check. The weighted divisor sums `W(i) = sum_{d | i, d <= m}
//! d * pi_q(d)` are the integer numerators of the log-series coefficients of
//! the field correction factor (`a_i = W(i) / q^i`).

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::error::Result;
use crate::params::PrimePower;

/// Möbius function. 0 on squareful n, else (-1)^(number of prime factors).
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius needs n >= 1");
    let mut rest = n;
    let mut factors = 0u32;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            rest /= d;
            if rest % d == 0 {
                return 0;
            }
            factors += 1;
        }
        d += 1;
    }
    if rest > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Immutable table of `pi_q(d)` for `1 <= d <= max_degree`.
///
/// Safe for concurrent reads once built; construction verifies the degree-N
/// factorization identity for every tabulated N.
#[derive(Debug, Clone)]
pub struct IrreducibleTable {
    q: PrimePower,
    counts: Vec<BigUint>,
}

impl IrreducibleTable {
    pub fn new(q: PrimePower, max_degree: u32) -> Self {
        let qb = BigUint::from(q.value());
        // q^d for d = 0..=max_degree
        let mut pows = Vec::with_capacity(max_degree as usize + 1);
        pows.push(BigUint::from(1u32));
        for d in 1..=max_degree {
            let next = &pows[(d - 1) as usize] * &qb;
            pows.push(next);
        }

        let mut counts = Vec::with_capacity(max_degree as usize);
        for d in 1..=max_degree {
            counts.push(count_from_inversion(d, &pows));
        }

        let table = IrreducibleTable { q, counts };
        for n in 1..=max_degree {
            assert_eq!(
                table.degree_mass(n),
                pows[n as usize],
                "factorization-count identity failed at q={}, N={n}",
                q.value()
            );
        }
        table
    }

    /// Convenience constructor validating `q` first.
    pub fn for_field(q: u64, max_degree: u32) -> Result<Self> {
        Ok(Self::new(PrimePower::new(q)?, max_degree))
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn max_degree(&self) -> u32 {
        self.counts.len() as u32
    }

    /// `pi_q(d)`; panics if `d` is 0 or beyond the tabulated range.
    pub fn count(&self, d: u32) -> &BigUint {
        &self.counts[(d - 1) as usize]
    }

    /// `sum_{d | n} d * pi_q(d)`, which must equal `q^n`.
    fn degree_mass(&self, n: u32) -> BigUint {
        let mut acc = BigUint::zero();
        for d in 1..=n {
            if n % d == 0 {
                acc += self.count(d) * BigUint::from(d);
            }
        }
        acc
    }

    /// `W(i) = sum_{d | i, d <= m} d * pi_q(d)`, the integer numerator of the
    /// log-series coefficient `a_i = W(i)/q^i`. Equals `q^i` for `i <= m`.
    ///
    /// Needs the table built up to degree `min(m, i)`.
    pub fn weighted_divisor_sum(&self, m: u32, i: u32) -> BigUint {
        assert!(i >= 1 && m >= 1);
        let cap = m.min(i);
        assert!(
            cap <= self.max_degree(),
            "table built to degree {} but degree {cap} requested",
            self.max_degree()
        );
        let mut acc = BigUint::zero();
        for d in 1..=cap {
            if i % d == 0 {
                acc += self.count(d) * BigUint::from(d);
            }
        }
        acc
    }
}

fn count_from_inversion(d: u32, pows: &[BigUint]) -> BigUint {
    // pi_q(d) = (1/d) * sum_{e | d} mu(e) q^{d/e}
    let mut acc = BigInt::zero();
    for e in 1..=d {
        if d % e == 0 {
            let term = BigInt::from_biguint(Sign::Plus, pows[(d / e) as usize].clone());
            match mobius(e as u64) {
                1 => acc += term,
                -1 => acc -= term,
                _ => {}
            }
        }
    }
    let (sign, mag) = acc.into_parts();
    assert!(sign != Sign::Minus, "negative irreducible count at d={d}");
    let (quot, rem) = num_integer::Integer::div_rem(&mag, &BigUint::from(d));
    assert!(rem.is_zero(), "Möbius inversion not divisible by d={d}");
    quot
}

/// One-shot `pi_q(d)`.
pub fn count_irreducibles(q: u64, d: u32) -> Result<BigUint> {
    Ok(IrreducibleTable::for_field(q, d)?.count(d).clone())
}

/// One-shot `W(i)` for the field of order `q`.
pub fn weighted_divisor_sum(q: u64, m: u32, i: u32) -> Result<BigUint> {
    Ok(IrreducibleTable::for_field(q, m.min(i))?.weighted_divisor_sum(m, i))
}
