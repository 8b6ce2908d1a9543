//! Exact friable counters and their brute-force oracles.
//!
//! `psi_perm(n, m)` counts permutations of `S_n` with all cycles of length
//! at most `m`; `psi_poly(q, n, m)` counts monic degree-`n` polynomials over
//! `F_q` with all irreducible factors of degree at most `m`. Both run on
//! exact recurrences obtained by logarithmic differentiation of the
//! exponential generating functions:
//!
//! ```text
//! n * psi_perm(n, m) / n!  = sum_{i=1}^{min(m,n)} psi_perm(n-i, m) / (n-i)!
//! n * psi_poly(q, n, m)    = sum_{k=1}^{n} psi_poly(q, n-k, m) * W(k)
//! ```
//!
//! with `W(k)` the weighted divisor sum from [`crate::census`]. The oracles
//! (`psi_perm_oracle` via partition sums, `psi_poly_oracle` via full
//! enumeration and trial-division factorization) are independent of those
//! recurrences and pin them down on small instances.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::census::IrreducibleTable;
use crate::error::{Error, Result};
use crate::params::{Params, PrimePower};
use crate::ratio::ExactRatio;

/// Which family is being counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Perm,
    Poly,
}

pub fn factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn power(q: u64, n: u32) -> BigUint {
    BigUint::from(q).pow(n)
}

/// All `psi_perm(n, m)` for `0 <= n <= n_max` at fixed `m`, built bottom-up.
#[derive(Debug, Clone)]
pub struct PermFriableTable {
    m: u32,
    psi: Vec<BigUint>,
}

impl PermFriableTable {
    pub fn new(m: u32, n_max: u32) -> Self {
        assert!(m >= 1);
        let mut psi: Vec<BigUint> = Vec::with_capacity(n_max as usize + 1);
        psi.push(BigUint::one());
        for n in 1..=n_max {
            let cap = m.min(n);
            // falling factorial (n-1)!/(n-i)! built incrementally
            let mut falling = BigUint::one();
            let mut sum = BigUint::zero();
            for i in 1..=cap {
                sum += &falling * &psi[(n - i) as usize];
                if i < cap {
                    falling *= BigUint::from(n - i);
                }
            }
            psi.push(sum);
        }
        PermFriableTable { m, psi }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_max(&self) -> u32 {
        (self.psi.len() - 1) as u32
    }

    pub fn psi(&self, n: u32) -> &BigUint {
        &self.psi[n as usize]
    }
}

/// Exact count of `m`-friable permutations on `n` elements.
pub fn psi_perm(n: u32, m: u32) -> BigUint {
    PermFriableTable::new(m, n).psi(n).clone()
}

const PERM_ORACLE_BUDGET: u32 = 30;

/// Partition-sum oracle: sums `n!/prod_k (k^{c_k} c_k!)` over all partitions
/// of `n` whose parts are at most `m`. Independent of the recurrence path.
pub fn psi_perm_oracle(n: u32, m: u32) -> Result<BigUint> {
    assert!(m >= 1);
    if n > PERM_ORACLE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "partition enumeration",
            limit: PERM_ORACLE_BUDGET as u64,
            requested: n as u64,
        });
    }
    let n_fact = factorial(n);
    let mut total = BigUint::zero();
    // Enumerate partitions by largest part, tracking prod k^{c_k} c_k!.
    fn walk(
        remaining: u32,
        max_part: u32,
        weight: &BigUint,
        n_fact: &BigUint,
        total: &mut BigUint,
    ) {
        if remaining == 0 {
            let (quot, rem) = n_fact.div_rem(weight);
            debug_assert!(rem.is_zero());
            let _ = rem;
            *total += quot;
            return;
        }
        if max_part == 0 {
            return;
        }
        let k = max_part.min(remaining);
        // count of parts equal to k: c = 0, 1, ..., remaining/k
        let mut w = weight.clone();
        for c in 0..=(remaining / k) {
            if c > 0 {
                w *= BigUint::from(k) * BigUint::from(c);
            }
            walk(remaining - c * k, k - 1, &w, n_fact, total);
        }
    }
    walk(n, m.min(n), &BigUint::one(), &n_fact, &mut total);
    Ok(total)
}

/// All `psi_poly(q, n, m)` for `0 <= n <= n_max` at fixed `(q, m)`, with the
/// weighted divisor sums and the irreducible census kept for reuse.
#[derive(Debug, Clone)]
pub struct PolyFriableTable {
    q: PrimePower,
    m: u32,
    psi: Vec<BigUint>,
    weights: Vec<BigUint>,
    census: IrreducibleTable,
}

impl PolyFriableTable {
    pub fn new(q: PrimePower, m: u32, n_max: u32) -> Self {
        assert!(m >= 1);
        let census = IrreducibleTable::new(q, m.min(n_max).max(1));
        // weights[k-1] = W(k) = sum_{d | k, d <= m} d*pi_q(d); equals q^k for k <= m
        let weights: Vec<BigUint> = (1..=n_max)
            .map(|k| census.weighted_divisor_sum(m, k))
            .collect();
        let mut psi: Vec<BigUint> = Vec::with_capacity(n_max as usize + 1);
        psi.push(BigUint::one());
        for n in 1..=n_max {
            let mut sum = BigUint::zero();
            for k in 1..=n {
                sum += &psi[(n - k) as usize] * &weights[(k - 1) as usize];
            }
            let (quot, rem) = sum.div_rem(&BigUint::from(n));
            assert!(
                rem.is_zero(),
                "polynomial count recurrence not divisible by n={n} (q={}, m={})",
                q.value(),
                m
            );
            psi.push(quot);
        }
        PolyFriableTable {
            q,
            m,
            psi,
            weights,
            census,
        }
    }

    pub fn for_field(q: u64, m: u32, n_max: u32) -> Result<Self> {
        Ok(Self::new(PrimePower::new(q)?, m, n_max))
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_max(&self) -> u32 {
        (self.psi.len() - 1) as u32
    }

    pub fn psi(&self, n: u32) -> &BigUint {
        &self.psi[n as usize]
    }

    /// `W(k)` as used by the recurrence.
    pub fn weight(&self, k: u32) -> &BigUint {
        &self.weights[(k - 1) as usize]
    }

    pub fn census(&self) -> &IrreducibleTable {
        &self.census
    }

    /// Re-checks `n * psi(n) = sum_k psi(n-k) W(k)` from stored values, with
    /// the weights recomputed from the census.
    pub fn verify_recurrence(&self, n: u32) -> bool {
        let mut sum = BigUint::zero();
        for k in 1..=n {
            sum += self.psi(n - k) * self.census.weighted_divisor_sum(self.m, k);
        }
        sum == self.psi(n) * BigUint::from(n)
    }
}

/// Exact count of `m`-friable monic degree-`n` polynomials over `F_q`.
pub fn psi_poly(q: u64, n: u32, m: u32) -> Result<BigUint> {
    Ok(PolyFriableTable::for_field(q, m, n)?.psi(n).clone())
}

const POLY_ORACLE_BUDGET: u64 = 1_000_000;

/// Enumeration oracle for prime fields: factors every monic polynomial of
/// degree `n` over `F_p` by trial division and tallies the largest
/// irreducible-factor degree.
#[derive(Debug, Clone)]
pub struct PolyEnumeration {
    p: u64,
    n: u32,
    /// `histogram[l]` = number of monic degree-`n` polynomials whose largest
    /// irreducible factor has degree `l` (`l = 0` only for `n = 0`).
    histogram: Vec<u64>,
}

impl PolyEnumeration {
    pub fn new(q: u64, n: u32) -> Result<Self> {
        let pp = PrimePower::new(q)?;
        if !pp.is_prime() {
            return Err(Error::NonPrimeField(q));
        }
        let total = crate::math::powi(q as f64, n as i32);
        if total > POLY_ORACLE_BUDGET as f64 {
            return Err(Error::BudgetExceeded {
                what: "polynomial enumeration",
                limit: POLY_ORACLE_BUDGET,
                requested: total as u64,
            });
        }
        let p = q;
        let mut histogram = vec![0u64; n as usize + 1];
        if n == 0 {
            histogram[0] = 1;
            return Ok(PolyEnumeration { p, n, histogram });
        }
        let irreducibles = enumerate_irreducibles(p, n / 2);
        let mut f = vec![0u32; n as usize + 1];
        f[n as usize] = 1;
        loop {
            let l = largest_factor_degree(&f, &irreducibles, p);
            histogram[l as usize] += 1;
            // next monic polynomial: increment base-p counter on the low coefficients
            let mut carry = true;
            for c in f.iter_mut().take(n as usize) {
                *c += 1;
                if u64::from(*c) == p {
                    *c = 0;
                } else {
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
        debug_assert_eq!(histogram.iter().sum::<u64>() as f64, total);
        Ok(PolyEnumeration { p, n, histogram })
    }

    pub fn q(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn histogram(&self) -> &[u64] {
        &self.histogram
    }

    /// Number of `m`-friable monic degree-`n` polynomials.
    pub fn friable_count(&self, m: u32) -> u64 {
        self.histogram.iter().take(m as usize + 1).sum()
    }
}

/// Enumeration oracle with the `psi_poly` contract.
pub fn psi_poly_oracle(q: u64, n: u32, m: u32) -> Result<BigUint> {
    assert!(m >= 1);
    Ok(BigUint::from(PolyEnumeration::new(q, n)?.friable_count(m)))
}

// --- dense polynomial helpers over F_p (coefficients low-to-high) ---

fn poly_degree(f: &[u32]) -> usize {
    f.iter().rposition(|&c| c != 0).unwrap_or(0)
}

/// Divides `f` by monic `g` in place of a scratch copy; returns the quotient
/// if the remainder is zero.
fn poly_exact_div(f: &[u32], g: &[u32], p: u64) -> Option<Vec<u32>> {
    let df = poly_degree(f);
    let dg = poly_degree(g);
    debug_assert_eq!(g[dg], 1, "divisor must be monic");
    if df < dg {
        return None;
    }
    let mut rem: Vec<u64> = f.iter().map(|&c| u64::from(c)).collect();
    let mut quot = vec![0u32; df - dg + 1];
    for i in (0..=df - dg).rev() {
        let coeff = rem[i + dg] % p;
        quot[i] = coeff as u32;
        if coeff != 0 {
            for j in 0..=dg {
                let sub = coeff * u64::from(g[j]) % p;
                rem[i + j] = (rem[i + j] + p - sub) % p;
            }
        }
    }
    if rem.iter().take(dg).all(|&c| c % p == 0) {
        quot.truncate(poly_degree(&quot) + 1);
        Some(quot)
    } else {
        None
    }
}

/// All monic irreducibles of degree 1..=d_max over F_p, ordered by degree.
/// A degree-d candidate is irreducible iff no irreducible of degree <= d/2
/// divides it.
fn enumerate_irreducibles(p: u64, d_max: u32) -> Vec<Vec<u32>> {
    let mut irr: Vec<Vec<u32>> = Vec::new();
    for d in 1..=d_max {
        let count = p.pow(d);
        for idx in 0..count {
            let mut f = vec![0u32; d as usize + 1];
            let mut v = idx;
            for c in f.iter_mut().take(d as usize) {
                *c = (v % p) as u32;
                v /= p;
            }
            f[d as usize] = 1;
            let reducible = irr
                .iter()
                .take_while(|g| poly_degree(g) as u32 * 2 <= d)
                .any(|g| poly_exact_div(&f, g, p).is_some());
            if !reducible {
                irr.push(f);
            }
        }
    }
    irr
}

/// Largest irreducible-factor degree of a nonconstant monic `f`, given all
/// irreducibles of degree <= deg(f)/2. Whatever survives trial division is a
/// single irreducible factor.
fn largest_factor_degree(f: &[u32], irreducibles: &[Vec<u32>], p: u64) -> u32 {
    let mut work = f.to_vec();
    let mut largest = 0u32;
    for g in irreducibles {
        let dg = poly_degree(g) as u32;
        if poly_degree(&work) < dg as usize {
            break;
        }
        while let Some(q) = poly_exact_div(&work, g, p) {
            work = q;
            largest = largest.max(dg);
        }
    }
    let residual = poly_degree(&work) as u32;
    if residual > 0 {
        largest.max(residual)
    } else {
        largest
    }
}

// --- probabilities and expectations ---

/// Exact friability probability bundle.
#[derive(Debug, Clone)]
pub struct FriableProfile {
    pub kind: Kind,
    pub params: Params,
    pub psi: BigUint,
    pub total: BigUint,
    pub prob: ExactRatio,
}

/// `P(pi_n is m-friable) = psi_perm/n!` or `P(f_n is m-friable) = psi_poly/q^n`.
pub fn friable_prob(kind: Kind, params: &Params) -> Result<FriableProfile> {
    let (psi, total) = match kind {
        Kind::Perm => (psi_perm(params.n(), params.m()), factorial(params.n())),
        Kind::Poly => (
            PolyFriableTable::new(params.prime_power(), params.m(), params.n())
                .psi(params.n())
                .clone(),
            power(params.q(), params.n()),
        ),
    };
    assert!(psi <= total);
    let prob = ExactRatio::new(psi.clone(), total.clone());
    debug_assert!(prob.is_proper());
    Ok(FriableProfile {
        kind,
        params: *params,
        psi,
        total,
        prob,
    })
}

/// Exact expectation of the largest cycle length / largest factor degree for
/// a uniform element of size `n`, via `E X = 1 + sum_{i>=1} (1 - P(X <= i))`.
///
/// Returned over the natural denominator (`n!` or `q^n`).
pub fn expected_largest(kind: Kind, n: u32, q: Option<u64>) -> Result<ExactRatio> {
    assert!(n >= 1);
    match kind {
        Kind::Perm => {
            let total = factorial(n);
            let mut num = total.clone();
            for i in 1..n {
                num += &total - PermFriableTable::new(i, n).psi(n);
            }
            Ok(ExactRatio::new(num, total))
        }
        Kind::Poly => {
            let q = q.ok_or(Error::Domain("polynomial expectation needs q"))?;
            let pp = PrimePower::new(q)?;
            let total = power(q, n);
            let mut num = total.clone();
            for i in 1..n {
                num += &total - PolyFriableTable::new(pp, i, n).psi(n);
            }
            Ok(ExactRatio::new(num, total))
        }
    }
}

/// The nonnegative expectation gap
/// `sum_{m=1}^{n} (P(f_n m-friable) - P(pi_n m-friable))
///   = E L(pi_n) - E L_q(f_n)`,
/// exact over the denominator `q^n * n!`.
pub fn expectation_gap(n: u32, q: u64) -> Result<ExactRatio> {
    assert!(n >= 1);
    let pp = PrimePower::new(q)?;
    let mut poly_sum = BigUint::zero();
    let mut perm_sum = BigUint::zero();
    for m in 1..=n {
        poly_sum += PolyFriableTable::new(pp, m, n).psi(n);
        perm_sum += PermFriableTable::new(m, n).psi(n);
    }
    let n_fact = factorial(n);
    let q_n = power(q, n);
    let lhs = poly_sum * &n_fact;
    let rhs = perm_sum * &q_n;
    assert!(
        lhs >= rhs,
        "expectation gap must be nonnegative (n={n}, q={q})"
    );
    Ok(ExactRatio::new(lhs - rhs, q_n * n_fact))
}

/// Float-mode `P(pi_n is m-friable)` by the probability recurrence
/// `k P(k) = sum_{i=1}^{min(m,k)} P(k-i)`, with compensated accumulation.
/// Underflows for tiny probabilities are harmless for expectation sums.
pub fn perm_friable_prob_f64(n: u32, m: u32) -> f64 {
    assert!(m >= 1);
    let mut p = Vec::with_capacity(n as usize + 1);
    p.push(1.0f64);
    for k in 1..=n {
        let cap = m.min(k) as usize;
        let mut acc = crate::math::CompensatedSum::new();
        for i in 1..=cap {
            acc.add(p[k as usize - i]);
        }
        p.push(acc.value() / k as f64);
    }
    p[n as usize]
}

/// Float-mode `P(f_n is m-friable)` via the weighted recurrence
/// `n P(n) = sum_k P(n-k) W(k)/q^k`, with the weights taken exactly from the
/// census and rounded once.
pub fn poly_friable_prob_f64(q: u64, n: u32, m: u32) -> Result<f64> {
    assert!(m >= 1);
    let pp = PrimePower::new(q)?;
    let census = IrreducibleTable::new(pp, m.min(n).max(1));
    let weights: Vec<f64> = (1..=n)
        .map(|k| ExactRatio::new(census.weighted_divisor_sum(m, k), power(q, k)).to_f64())
        .collect();
    let mut p = Vec::with_capacity(n as usize + 1);
    p.push(1.0f64);
    for k in 1..=n as usize {
        let mut acc = crate::math::CompensatedSum::new();
        for i in 1..=k {
            acc.add(p[k - i] * weights[i - 1]);
        }
        p.push(acc.value() / k as f64);
    }
    Ok(p[n as usize])
}

/// Float-mode expected relative largest-cycle length `E L(pi_n) / n`.
///
/// Budget: `n <= 1000` (the full recurrence sweep is cubic in `n`).
pub fn golomb_dickman_estimate_f64(n: u32) -> Result<f64> {
    if n == 0 || n > 1000 {
        return Err(Error::BudgetExceeded {
            what: "float-mode expectation recurrence",
            limit: 1000,
            requested: n as u64,
        });
    }
    let mut expectation = crate::math::CompensatedSum::new();
    expectation.add(1.0);
    for m in 1..n {
        expectation.add(1.0 - perm_friable_prob_f64(n, m));
    }
    Ok(expectation.value() / n as f64)
}

/// Exact-mode expected relative largest-cycle length, `n <= 200`.
pub fn golomb_dickman_estimate_exact(n: u32) -> Result<ExactRatio> {
    if n == 0 || n > 200 {
        return Err(Error::BudgetExceeded {
            what: "exact expectation recurrence",
            limit: 200,
            requested: n as u64,
        });
    }
    let e = expected_largest(Kind::Perm, n, None)?;
    Ok(ExactRatio::new(
        e.numerator().clone(),
        e.denominator() * BigUint::from(n),
    ))
}
