//! Saddle-point machinery for the coefficient-extraction estimates.
//!
//! `solve_x` finds the saddle radius `x` with `sum_{j<=m} x^j = n`;
//! `power_sums` produces the curvature `lambda = sum j x^j`, the second
//! moment `lambda2 = sum j^2 x^j` and the amplitude
//! `Q(x) = exp(sum x^j/j) x^{-m}`; `perm_saddle_estimate` turns those into
//! the permutation friability estimate `exp(sum x^j/j - n ln x)/sqrt(2 pi
//! lambda)`. `g_q_eval` sums the field-correction log series
//! `sum_{i>m} a_i z^i / i` with a certified geometric tail, and
//! `ratio_prediction` classifies `(q, n, m)` into the applicable
//! error-envelope regime (all implied constants set to 1; empirical
//! constants are the verification suites' job).

use num_traits::ToPrimitive;

use crate::census::IrreducibleTable;
use crate::error::{Error, Result};
use crate::logreal::LogReal;
use crate::math::{self, CompensatedSum};
use crate::params::Params;
use crate::ratio::ln_biguint;

/// The positive root of `sum_{j=1}^{m} x^j = n`, in `[1, n^{1/m}]`.
///
/// Exactly `n` for `m = 1` and exactly `1` for `m = n`; Newton from the
/// upper bracket end elsewhere (the sum is increasing and convex, so the
/// iteration is monotone; a bisection safeguard guards the bracket anyway).
pub fn solve_x(n: u32, m: u32) -> f64 {
    assert!(1 <= m && m <= n, "solve_x needs 1 <= m <= n");
    if m == 1 {
        return n as f64;
    }
    if m == n {
        return 1.0;
    }
    let nf = n as f64;
    let eval = |x: f64| -> (f64, f64) {
        // value - n and derivative, by compensated power sums
        let mut s = CompensatedSum::new();
        let mut d = CompensatedSum::new();
        let mut pow = 1.0f64;
        for j in 1..=m {
            d.add(j as f64 * pow);
            pow *= x;
            s.add(pow);
        }
        (s.value() - nf, d.value())
    };
    let mut lo = 1.0f64;
    let mut hi = math::powf(nf, 1.0 / m as f64);
    let mut x = hi;
    for _ in 0..100 {
        let (f, fp) = eval(x);
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - f / fp;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-16 * x {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// `lambda = sum_{j<=m} j x^j`, `lambda2 = sum j^2 x^j`, and the amplitude
/// `Q(x) = exp(sum_{j<=m} x^j / j) * x^{-m}` in the log domain.
pub fn power_sums(x: f64, m: u32) -> (f64, f64, LogReal) {
    assert!(x > 0.0);
    let mut lambda = CompensatedSum::new();
    let mut lambda2 = CompensatedSum::new();
    let mut amp = CompensatedSum::new();
    let mut pow = 1.0f64;
    for j in 1..=m {
        pow *= x;
        let jf = j as f64;
        lambda.add(jf * pow);
        lambda2.add(jf * jf * pow);
        amp.add(pow / jf);
    }
    let log_q = amp.value() - m as f64 * math::ln(x);
    let budget = 1e-15 * (amp.value().abs() + m as f64 * math::ln(x).abs() + 1.0);
    (
        lambda.value(),
        lambda2.value(),
        LogReal::from_log(log_q, budget),
    )
}

/// Saddle estimate of `P(pi_n is m-friable)`:
/// `exp(sum_{j<=m} x^j/j - n ln x) / sqrt(2 pi lambda)`.
pub fn perm_saddle_estimate(n: u32, m: u32) -> LogReal {
    let x = solve_x(n, m);
    let mut amp = CompensatedSum::new();
    let mut lambda = CompensatedSum::new();
    let mut pow = 1.0f64;
    for j in 1..=m {
        pow *= x;
        amp.add(pow / j as f64);
        lambda.add(j as f64 * pow);
    }
    let log_est = amp.value()
        - n as f64 * math::ln(x)
        - 0.5 * math::ln(2.0 * core::f64::consts::PI * lambda.value());
    let budget = 1e-15 * (amp.value() + n as f64 * math::ln(x).abs() + 1.0);
    LogReal::from_log(log_est, budget)
}

/// A `G_q` series evaluation with its certified truncation error.
#[derive(Debug, Clone, Copy)]
pub struct GqValue {
    pub value: f64,
    /// Certified bound on the truncation error of `value`.
    pub tail_bound: f64,
    /// The series was summed for `m < i <= truncation_index`.
    pub truncation_index: u32,
}

struct LogSeries {
    a: f64,
    a_prime: f64,
    a_second: f64,
    tail_a: f64,
    tail_prime: f64,
    tail_second: f64,
    last_index: u32,
}

/// Sums `A(z) = sum_{i>m} a_i z^i / i` and its two term-wise derivatives,
/// with `a_i = W(i)/q^i` taken exactly from the census. Tails are bounded by
/// `a_i <= 2 q^{min(m, floor(i/2)) - i}`: past `i = 2m` that is geometric
/// with ratio `z/q < q^{-1/2}`, so a short extension suffices.
fn log_series(census: &IrreducibleTable, m: u32, z: f64) -> Result<LogSeries> {
    let q = census.q().value();
    let qf = q as f64;
    if !(z >= 0.0) {
        return Err(Error::Domain("G_q series needs z >= 0"));
    }
    if z * z >= qf {
        return Err(Error::DivergenceRisk { z, q });
    }
    assert!(census.max_degree() >= m, "census table too small for m");
    if z == 0.0 {
        return Ok(LogSeries {
            a: 0.0,
            a_prime: 0.0,
            a_second: if m == 1 {
                (census.count(1) * 1u32).to_f64().unwrap() / (qf * qf)
            } else {
                0.0
            },
            tail_a: 0.0,
            tail_prime: 0.0,
            tail_second: 0.0,
            last_index: m + 2,
        });
    }
    let ln_z = math::ln(z);
    let ln_q = math::ln(qf);
    let ratio = z / qf;
    let mut a = CompensatedSum::new();
    let mut ap = CompensatedSum::new();
    let mut app = CompensatedSum::new();
    let mut i = m + 1;
    loop {
        // a_i z^i = exp(ln W(i) + i (ln z - ln q))
        let w = census.weighted_divisor_sum(m, i);
        let az = math::exp(ln_biguint(&w) + i as f64 * (ln_z - ln_q));
        a.add(az / i as f64);
        ap.add(az / z);
        app.add(az * (i - 1) as f64 / (z * z));
        if i > 2 * m {
            // bound on a_j z^j for j > i: B_j = 2 q^m (z/q)^j
            let ln_b = core::f64::consts::LN_2 + m as f64 * ln_q + (i + 1) as f64 * (ln_z - ln_q);
            let b = math::exp(ln_b);
            let geo = 1.0 - ratio;
            let tail_a = b / ((i + 1) as f64 * geo);
            let tail_prime = b / (z * geo);
            // sum_{j>i} j r^j = r^{i+1}((i+1)/(1-r) + r/(1-r)^2)
            let tail_second = b * ((i + 1) as f64 / geo + ratio / (geo * geo)) / (z * z);
            let settled = tail_a <= 1e-14 * (1.0 + a.value())
                && tail_prime <= 1e-12 * ap.value() + 1e-280
                && tail_second <= 1e-12 * app.value() + 1e-280;
            if settled || i > 2 * m + 4000 {
                return Ok(LogSeries {
                    a: a.value(),
                    a_prime: ap.value(),
                    a_second: app.value(),
                    tail_a,
                    tail_prime,
                    tail_second,
                    last_index: i,
                });
            }
        }
        i += 1;
    }
}

/// `G_q(z) = exp(sum_{i>m} a_i z^i / i)` for real `z` in `[0, sqrt(q))`,
/// with a certified truncation bound at the `1e-12 * value` level.
pub fn g_q_eval(census: &IrreducibleTable, m: u32, z: f64) -> Result<GqValue> {
    let s = log_series(census, m, z)?;
    let value = math::exp(s.a);
    Ok(GqValue {
        value,
        tail_bound: value * math::exp_m1(s.tail_a),
        truncation_index: s.last_index,
    })
}

/// `(G_q'(x), G_q''(x))` via the term-wise differentiated log series:
/// `G' = A' G`, `G'' = (A'' + A'^2) G`. Truncation certified at 1e-10
/// relative by the series driver.
pub fn g_q_derivatives(census: &IrreducibleTable, m: u32, x: f64) -> Result<(f64, f64)> {
    let s = log_series(census, m, x)?;
    debug_assert!(s.tail_prime <= 1e-10 * s.a_prime + 1e-270);
    debug_assert!(s.tail_second <= 1e-10 * s.a_second + 1e-270);
    let g = math::exp(s.a);
    Ok((s.a_prime * g, (s.a_second + s.a_prime * s.a_prime) * g))
}

/// Which stated error-envelope regime applies to `(q, n, m)`.
///
/// Range arithmetic uses natural logs (`log_q n = ln n / ln q`); boundary
/// points fall through to the next regime or to `NotCovered`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `m > 6 ln n`: envelope `u ln(u+1) / (m q^{ceil((m+1)/2)})`, main term 1.
    LargeM,
    /// `8 ln n > m > 2 log_q n`: envelope `u n^{(1+a)/m} / q^{ceil((m+1)/2)}`,
    /// `a = 1` iff `m` even; main term 1.
    MediumM,
    /// `n/(ln n ln^3 ln(n+1)) > m > 2 log_q n`: main term `G_q(x)`, envelope
    /// `n^{(1+a)/m} min(m, ln u) / (m q^{ceil((m+1)/2)})`.
    MediumMCorrected,
    /// `2 log_q n > m > log_q n`: main term `G_q(x)`, envelope
    /// `n^{max(1-2eps, -eps)}` with the best admissible `eps`.
    SmallMCorrected,
    /// `min{n/(ln n ln^3 ln(n+1)), n/3} > m > log_q n`: main term `G_q(x)`,
    /// envelope `(G'' x^2 + G' x m)/(n m G)`.
    SaddleEnvelope,
    /// Outside every stated range; reported, never silently dropped.
    NotCovered,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::LargeM => "large_m",
            Regime::MediumM => "medium_m",
            Regime::MediumMCorrected => "medium_m_gq",
            Regime::SmallMCorrected => "small_m_gq",
            Regime::SaddleEnvelope => "saddle_envelope",
            Regime::NotCovered => "not_covered",
        }
    }

    /// True when the regime's main term is `G_q(x)` rather than 1.
    pub fn uses_correction(&self) -> bool {
        matches!(
            self,
            Regime::MediumMCorrected | Regime::SmallMCorrected | Regime::SaddleEnvelope
        )
    }
}

/// The predicted polynomial/permutation ratio: main term plus envelope.
#[derive(Debug, Clone)]
pub struct RatioPrediction {
    pub params: Params,
    pub regime: Regime,
    /// `G_q(x)`; absent when `x^2 >= q` keeps the series tail uncertified.
    pub g_q_x: Option<GqValue>,
    /// The regime's bracketed error expression with implied constant 1;
    /// absent for `NotCovered` (and for `SaddleEnvelope` without `G_q`).
    pub envelope: Option<f64>,
    /// Set when the two stated forms of the medium-range cap (with and
    /// without the `n/3` term) classify this point differently.
    pub range_conflict: bool,
}

fn regime_for(params: &Params) -> (Regime, bool) {
    let n = params.n() as f64;
    let m = params.m() as f64;
    let ln_n = math::ln(n);
    let lqn = params.log_q_n();
    let lll = math::ln(math::ln(n + 1.0));
    let cap_text = n / (ln_n * lll * lll * lll);
    let cap_min = cap_text.min(n / 3.0);
    let conflict = cap_min < cap_text && m >= cap_min && m < cap_text;
    // sharpest applicable statement wins: the corrected medium range refines
    // the plain medium range wherever its cap admits it
    let regime = if m > 6.0 * ln_n {
        Regime::LargeM
    } else if cap_min > m && m > 2.0 * lqn {
        Regime::MediumMCorrected
    } else if 8.0 * ln_n > m && m > 2.0 * lqn {
        Regime::MediumM
    } else if 2.0 * lqn > m && m > lqn {
        Regime::SmallMCorrected
    } else if cap_min > m && m > lqn {
        Regime::SaddleEnvelope
    } else {
        Regime::NotCovered
    };
    (regime, conflict)
}

/// Classifies `(q, n, m)` and evaluates the predicted ratio pieces.
pub fn ratio_prediction(params: &Params) -> Result<RatioPrediction> {
    let (regime, range_conflict) = regime_for(params);
    let n = params.n() as f64;
    let mf = params.m() as f64;
    let u = params.u();
    let q = params.q() as f64;
    let x = solve_x(params.n(), params.m());

    let census;
    let g_q_x = if x * x < q {
        census = IrreducibleTable::new(params.prime_power(), params.m());
        Some(g_q_eval(&census, params.m(), x)?)
    } else {
        None
    };

    let half = params.half_exponent() as f64;
    let parity_boost = if params.m() % 2 == 0 { 1.0 } else { 0.0 };
    let envelope = match regime {
        Regime::LargeM => Some(math::exp(
            math::ln(u) + math::ln(math::ln_1p(u)) - math::ln(mf) - half * math::ln(q),
        )),
        Regime::MediumM => Some(math::exp(
            math::ln(u) + (1.0 + parity_boost) / mf * math::ln(n) - half * math::ln(q),
        )),
        Regime::MediumMCorrected => Some(math::exp(
            (1.0 + parity_boost) / mf * math::ln(n) + math::ln(mf.min(math::ln(u)))
                - math::ln(mf)
                - half * math::ln(q),
        )),
        Regime::SmallMCorrected => {
            let eps = (mf / params.log_q_n() - 1.0).min(2.0 - mf / params.log_q_n());
            Some(math::powf(n, (1.0 - 2.0 * eps).max(-eps)))
        }
        Regime::SaddleEnvelope => match g_q_x {
            Some(gq) => {
                let table = IrreducibleTable::new(params.prime_power(), params.m());
                let (gp, gpp) = g_q_derivatives(&table, params.m(), x)?;
                Some((gpp * x * x + gp * x * mf) / (n * mf * gq.value))
            }
            None => None,
        },
        Regime::NotCovered => None,
    };
    if let Some(e) = envelope {
        debug_assert!(e >= 0.0);
    }
    Ok(RatioPrediction {
        params: *params,
        regime,
        g_q_x,
        envelope,
        range_conflict,
    })
}

/// The full saddle bundle for one `(q, n, m)`.
#[derive(Debug, Clone)]
pub struct SaddleData {
    pub params: Params,
    pub x: f64,
    pub lambda: f64,
    pub lambda2: f64,
    /// `Q(x) = exp(sum_{j<=m} x^j/j) x^{-m}` as displayed; the probability
    /// estimate itself carries `x^{-n}`.
    pub amplitude: LogReal,
    /// `G_q(x)` with its certified tail; absent when `x^2 >= q`.
    pub g_q_x: Option<GqValue>,
    /// log of the `P(pi_n m-friable)` saddle estimate.
    pub estimate_log: f64,
    pub regime: Regime,
    pub envelope: Option<f64>,
    pub range_conflict: bool,
}

pub fn saddle_data(params: &Params) -> Result<SaddleData> {
    let x = solve_x(params.n(), params.m());
    let (lambda, lambda2, amplitude) = power_sums(x, params.m());
    debug_assert!(
        {
            let mut s = CompensatedSum::new();
            let mut pow = 1.0;
            for _ in 0..params.m() {
                pow *= x;
                s.add(pow);
            }
            (s.value() - params.n() as f64).abs() <= 1e-10 * params.n() as f64
        },
        "saddle residual out of tolerance"
    );
    debug_assert!(x >= 1.0 - 1e-12);
    debug_assert!(lambda > 0.0);
    let prediction = ratio_prediction(params)?;
    let estimate = perm_saddle_estimate(params.n(), params.m());
    Ok(SaddleData {
        params: *params,
        x,
        lambda,
        lambda2,
        amplitude,
        g_q_x: prediction.g_q_x,
        estimate_log: estimate.log_value(),
        regime: prediction.regime,
        envelope: prediction.envelope,
        range_conflict: prediction.range_conflict,
    })
}
