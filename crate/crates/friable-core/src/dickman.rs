//! The Dickman function and its Laplace-side companions.
//!
//! `rho` solves the delay equation `t rho'(t) + rho(t-1) = 0` with
//! `rho = 1` on `[0, 1]`. The table marches one unit interval at a time:
//! on `[k, k+1]` the function is a power series around the midpoint, the
//! delay equation turns the previous interval's coefficients into the next
//! interval's by an exact recurrence, and the integrated identity
//! `u rho(u) = int_{u-1}^{u} rho` pins the constant term. Each interval
//! keeps its own log-domain scale factor, so the table survives the
//! superexponential decay (`rho(t) = t^{-t+o(t)}`) far past the f64
//! underflow point. Construction certifies itself by re-checking the same
//! integrated identity pointwise across the table.
//!
//! `xi(u)` is the positive root of `e^xi = 1 + u xi`; `I(s)` the entire
//! integral of `(e^v - 1)/v`; `rho_laplace` the closed form
//! `exp(gamma + I(-s))` of the Laplace transform of `rho`; `t_correction`
//! the discreteness correction `T(s)` integrated along the straight segment.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::logreal::LogReal;
use crate::math;
use crate::quad;

pub mod constants {
    //! Named constants and harmonic numbers.

    use crate::math;
    use crate::ratio::ExactRatio;
    use num_bigint::BigUint;
    use num_traits::Zero;

    /// Euler-Mascheroni constant, nearest f64.
    pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    /// gamma to 40 decimal digits, for documentation and extended-precision
    /// cross-checks.
    pub const EULER_GAMMA_DIGITS: &str = "0.5772156649015328606065120900824024310422";

    /// `H_n` as an exact rational over the denominator `n!` (unreduced).
    pub fn harmonic_exact(n: u32) -> ExactRatio {
        if n == 0 {
            return ExactRatio::zero();
        }
        let n_fact = crate::counts::factorial(n);
        let mut num = BigUint::zero();
        for i in 1..=n {
            num += &n_fact / BigUint::from(i);
        }
        ExactRatio::new(num, n_fact)
    }

    /// `H_n` in f64 with compensated accumulation.
    pub fn harmonic_f64(n: u32) -> f64 {
        let mut acc = math::CompensatedSum::new();
        for i in 1..=n {
            acc.add(1.0 / i as f64);
        }
        acc.value()
    }
}

const DEFAULT_DEGREE: usize = 48;
pub const DEFAULT_U_MAX: u32 = 100;

/// Minimum accepted tolerance request for `rho`.
pub const RHO_TOL_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone)]
struct Piece {
    /// log of the scale factor; coefficients are normalized to coeffs[0] = 1.
    log_scale: f64,
    coeffs: Vec<f64>,
}

/// Piecewise power-series table for `rho` on `[0, u_max]`.
#[derive(Debug, Clone)]
pub struct RhoTable {
    u_max: u32,
    pieces: Vec<Piece>,
    certified_log_err: f64,
}

impl RhoTable {
    pub fn new(u_max: u32) -> Self {
        Self::with_degree(u_max, DEFAULT_DEGREE)
    }

    pub fn with_degree(u_max: u32, degree: usize) -> Self {
        assert!(u_max >= 1);
        assert!(degree >= 16, "piece degree must be at least 16");
        let mut pieces = Vec::with_capacity(u_max as usize);
        let mut first = Piece {
            log_scale: 0.0,
            coeffs: alloc::vec![0.0; degree + 1],
        };
        first.coeffs[0] = 1.0;
        pieces.push(first);
        for k in 1..u_max {
            let prev = &pieces[(k - 1) as usize];
            pieces.push(march(prev, k, degree));
        }
        let mut table = RhoTable {
            u_max,
            pieces,
            certified_log_err: 0.0,
        };
        table.certified_log_err = table.measure_certificate();
        table
    }

    pub fn u_max(&self) -> f64 {
        self.u_max as f64
    }

    /// Certified bound on the absolute error of `log rho`, i.e. the relative
    /// error of the tabulated values.
    pub fn certified_log_err(&self) -> f64 {
        self.certified_log_err
    }

    /// `rho(u)`; exact 1 on `[0, 1]`, log-domain beyond.
    pub fn rho(&self, u: f64) -> Result<LogReal> {
        if !(u >= 0.0) {
            return Err(Error::Domain("rho needs u >= 0"));
        }
        if u > self.u_max as f64 {
            return Err(Error::OutOfTabulatedRange {
                u,
                u_max: self.u_max as f64,
            });
        }
        if u <= 1.0 {
            return Ok(LogReal::one());
        }
        let (log, _) = self.eval_log(u);
        Ok(LogReal::from_log(log, self.certified_log_err + 1e-15))
    }

    /// Convenience linear-domain value (0.0 once past underflow).
    pub fn rho_f64(&self, u: f64) -> Result<f64> {
        Ok(self.rho(u)?.value())
    }

    /// (log rho(u), index of the piece used); `u` must be in `(1, u_max]`.
    fn eval_log(&self, u: f64) -> (f64, usize) {
        let k = (math::floor(u) as usize).min(self.u_max as usize - 1);
        let piece = &self.pieces[k];
        let y = u - (k as f64 + 0.5);
        let mut v = 0.0;
        for &c in piece.coeffs.iter().rev() {
            v = v * y + c;
        }
        // rho <= 1 everywhere; clamp float residue at the [1,2] boundary
        ((piece.log_scale + math::ln(v)).min(0.0), k)
    }

    /// Relative residual of the integrated delay identity
    /// `int_{u-1}^{u} rho = u rho(u)` at `u in [1, u_max]`.
    pub fn delay_identity_residual(&self, u: f64) -> Result<f64> {
        if !(1.0 <= u && u <= self.u_max as f64) {
            return Err(Error::Domain("identity residual needs 1 <= u <= u_max"));
        }
        let (log_rho, k_ref) = if u <= 1.0 { (0.0, 0) } else { self.eval_log(u) };
        let scale_ref = self.pieces[k_ref].log_scale;
        let integral = self.integral_scaled(u - 1.0, u, scale_ref);
        let value = u * math::exp(log_rho - scale_ref);
        Ok((integral - value).abs() / value)
    }

    /// `int_a^b rho` divided by `exp(log_ref)`, summed piecewise with exact
    /// antiderivatives of the series pieces. Spans at most a few pieces, so
    /// the scale ratios stay representable.
    fn integral_scaled(&self, a: f64, b: f64, log_ref: f64) -> f64 {
        assert!(0.0 <= a && a <= b && b <= self.u_max as f64);
        let mut acc = 0.0;
        let mut left = a;
        while left < b {
            let k = (math::floor(left) as usize).min(self.u_max as usize - 1);
            let right = b.min((k + 1) as f64);
            let piece = &self.pieces[k];
            let c = k as f64 + 0.5;
            let y0 = left - c;
            let y1 = right - c;
            // antiderivative sum_j coeffs[j] y^{j+1}/(j+1), evaluated at both ends
            let mut seg = 0.0;
            for (j, &cf) in piece.coeffs.iter().enumerate().rev() {
                let jp = (j + 1) as f64;
                seg += cf * (math::powi(y1, j as i32 + 1) - math::powi(y0, j as i32 + 1)) / jp;
            }
            acc += math::exp(piece.log_scale - log_ref) * seg;
            left = right;
        }
        acc
    }

    fn measure_certificate(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 1..=self.u_max {
            let u = k as f64 + if k == self.u_max { 0.0 } else { 0.5 };
            if let Ok(r) = self.delay_identity_residual(u.min(self.u_max as f64)) {
                worst = worst.max(r);
            }
        }
        // Residual measures the marching + evaluation error; keep headroom
        // for points between probes.
        (worst * 4.0).max(1e-15)
    }
}

/// One marching step: series on `[k, k+1]` from the series on `[k-1, k]`.
///
/// The nonconstant coefficients come from the delay equation,
/// `c (j+1) a_{j+1} + j a_j = -b_j`. The constant term is pinned by the
/// integrated identity `u rho(u) = int_{u-1}^{u} rho` at the midpoint: that
/// version balances commensurate positive quantities, so the per-step
/// roundoff stays at machine level instead of compounding by the e^xi scale
/// ratio per interval (which continuity matching at the endpoint would do).
fn march(prev: &Piece, k: u32, degree: usize) -> Piece {
    let c = k as f64 + 0.5;
    let b = &prev.coeffs;
    let mut raw = alloc::vec![0.0; degree + 1];
    for j in 0..degree {
        raw[j + 1] = -(b[j] + j as f64 * raw[j]) / (c * (j + 1) as f64);
    }
    // c a_0 = int_0^{1/2} prev + int_{-1/2}^{0} new, i.e.
    // a_0 (c - 1/2) = sum_i b_i 2^{-(i+1)}/(i+1)
    //               + sum_{i>=1} a_i (-1)^i 2^{-(i+1)}/(i+1)
    let mut rhs = 0.0f64;
    let mut half_pow = 0.5f64;
    for i in 0..=degree {
        rhs += b[i] * half_pow / (i + 1) as f64;
        if i >= 1 {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            rhs += sign * raw[i] * half_pow / (i + 1) as f64;
        }
        half_pow *= 0.5;
    }
    let a0 = rhs / (c - 0.5);
    raw[0] = a0;
    let log_scale = prev.log_scale + math::ln(a0);
    let coeffs = raw.iter().map(|&x| x / a0).collect();
    Piece { log_scale, coeffs }
}

/// `rho(u)` through a freshly built (or, with `std`, a shared) default table.
///
/// `tol` must be at least `RHO_TOL_FLOOR`; requests below the table's
/// certified accuracy are answered at the certified accuracy, which the
/// returned budget reports honestly.
pub fn rho(u: f64, tol: f64) -> Result<LogReal> {
    if !(tol >= RHO_TOL_FLOOR) {
        return Err(Error::Domain("rho tolerance below 1e-14 floor"));
    }
    if !(u >= 0.0) {
        return Err(Error::Domain("rho needs u >= 0"));
    }
    if u > DEFAULT_U_MAX as f64 {
        return Err(Error::OutOfTabulatedRange {
            u,
            u_max: DEFAULT_U_MAX as f64,
        });
    }
    shared_table().rho(u)
}

#[cfg(feature = "std")]
fn shared_table() -> &'static RhoTable {
    use std::sync::OnceLock;
    static TABLE: OnceLock<RhoTable> = OnceLock::new();
    TABLE.get_or_init(|| RhoTable::new(DEFAULT_U_MAX))
}

#[cfg(not(feature = "std"))]
fn shared_table() -> alloc::boxed::Box<RhoTable> {
    alloc::boxed::Box::new(RhoTable::new(DEFAULT_U_MAX))
}

/// The positive root of `e^xi = 1 + u xi`, for `u > 1`.
///
/// Newton seeded at `log(u log u)`, safeguarded by the bracket
/// `(log u, 2 log u]` which always contains the root.
pub fn xi(u: f64) -> Result<f64> {
    if !(u > 1.0) {
        return Err(Error::Domain("xi needs u > 1"));
    }
    let lo = math::ln(u);
    let hi = 2.0 * lo;
    let f = |x: f64| math::exp(x) - 1.0 - u * x;
    let fp = |x: f64| math::exp(x) - u;
    let seed = math::ln(u * lo.max(1e-300));
    let mut x = if seed > lo && seed < hi {
        seed
    } else {
        0.5 * (lo + hi)
    };
    let mut bracket = (lo, hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx > 0.0 {
            bracket.1 = x;
        } else {
            bracket.0 = x;
        }
        let step = fx / fp(x);
        let mut next = x - step;
        if !(next > bracket.0 && next < bracket.1) {
            next = 0.5 * (bracket.0 + bracket.1);
        }
        if (next - x).abs() <= 1e-16 * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// `xi'(u) = xi / (u xi - u + 1)`, by implicit differentiation of the
/// defining equation (validated against finite differences in tests).
pub fn xi_prime(u: f64) -> Result<f64> {
    let x = xi(u)?;
    Ok(x / (u * x - u + 1.0))
}

/// Budget for `|s|` in the exponential-integral family.
pub const EXP_INTEGRAL_BUDGET: f64 = 200.0;

/// How much cancellation the plain series is allowed before switching to
/// segment quadrature: `|s| - max(Re s, 0)` beyond this loses too many bits.
const SERIES_CANCEL_LIMIT: f64 = 6.0;

/// `I(s) = int_0^s (e^v - 1)/v dv`, entire in `s`.
///
/// Evaluated by the defining series `sum_{k>=1} s^k/(k * k!)` where that sum
/// is well-conditioned (always the case on the nonnegative real axis), and by
/// Gauss-Kronrod quadrature along the straight segment otherwise.
pub fn exp_integral(s: Complex64) -> Result<Complex64> {
    let r = s.norm();
    if r > EXP_INTEGRAL_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "exponential integral series",
            limit: EXP_INTEGRAL_BUDGET as u64,
            requested: r as u64,
        });
    }
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if r - s.re.max(0.0) <= SERIES_CANCEL_LIMIT {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0); // s^k / k!
        for k in 1..=1000u32 {
            pow *= s / k as f64;
            let term = pow / k as f64;
            acc += term;
            if k as f64 > r && term.norm() <= 1e-18 * acc.norm() {
                break;
            }
        }
        Ok(acc)
    } else {
        quad::integrate_zero_to(expm1_over, s, 1e-13)
    }
}

/// `(e^v - 1)/v` with the removable singularity filled by series.
fn expm1_over(v: Complex64) -> Complex64 {
    if v.norm() <= 0.5 {
        // sum_{k>=0} v^k/(k+1)!
        let mut acc = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for k in 1..=20 {
            acc += term;
            term *= v / (k + 1) as f64;
        }
        acc
    } else {
        (v.exp() - 1.0) / v
    }
}

/// The Laplace transform of `rho`: `rho_hat(s) = exp(gamma + I(-s))`.
pub fn rho_laplace(s: Complex64) -> Result<Complex64> {
    Ok((constants::EULER_GAMMA + exp_integral(-s)?).exp())
}

/// Discreteness-correction factor inside `T`:
/// `g(w) = w e^w/(e^w - 1) - 1 = w/(1 - e^{-w}) - 1`.
fn t_factor(w: Complex64) -> Complex64 {
    if w.norm() <= 0.5 {
        // Bernoulli series: w/2 + w^2/12 - w^4/720 + w^6/30240 - ...
        let w2 = w * w;
        let w4 = w2 * w2;
        w / 2.0 + w2 / 12.0 - w4 / 720.0 + w4 * w2 / 30240.0 - w4 * w4 / 1209600.0
            + w4 * w4 * w2 / 47900160.0
    } else {
        w / (1.0 - (-w).exp()) - 1.0
    }
}

/// `T(s) = int_0^s (e^v - 1)/v * (v/m * e^{v/m}/(e^{v/m} - 1) - 1) dv`,
/// integrated along the straight segment, valid in the window
/// `|Re s| <= pi m`, `|Im s| <= pi m`.
pub fn t_correction(s: Complex64, m: u32) -> Result<Complex64> {
    assert!(m >= 1);
    let window = core::f64::consts::PI * m as f64 * (1.0 + 1e-12);
    if s.re.abs() > window || s.im.abs() > window {
        return Err(Error::Domain(
            "t_correction outside the |Re s|,|Im s| <= pi*m window",
        ));
    }
    if s.re.abs() > 700.0 {
        return Err(Error::Domain("t_correction segment would overflow exp"));
    }
    let mf = m as f64;
    quad::integrate_zero_to(|v| expm1_over(v) * t_factor(v / mf), s, 1e-11)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::CompensatedSum;

    fn table() -> RhoTable {
        RhoTable::new(50)
    }

    #[test]
    fn rho_is_one_up_to_one() {
        let t = table();
        for u in [0.0, 0.25, 0.5, 0.99, 1.0] {
            assert_eq!(t.rho_f64(u).unwrap(), 1.0);
        }
    }

    #[test]
    fn rho_closed_form_on_second_interval() {
        // direct integration of the delay equation: rho(t) = 1 - ln t on [1,2]
        let t = table();
        for u in [1.1f64, 1.25, 1.5, 1.75, 2.0] {
            let expect = 1.0 - u.ln();
            assert!(
                (t.rho_f64(u).unwrap() - expect).abs() <= 1e-13,
                "u={u}: {} vs {expect}",
                t.rho_f64(u).unwrap()
            );
        }
    }

    /// Independent quadrature oracle on [2,3]:
    /// rho(v) = rho(2) - int_2^v (1 - ln(s-1))/s ds, 40-point Gauss-Legendre
    /// built from Newton-refined Legendre roots.
    fn rho3_oracle() -> f64 {
        let (nodes, weights) = gauss_legendre(40);
        let a = 2.0f64;
        let b = 3.0f64;
        let mut acc = CompensatedSum::new();
        for (x, w) in nodes.iter().zip(&weights) {
            let s = 0.5 * (b - a) * x + 0.5 * (a + b);
            acc.add(w * (1.0 - (s - 1.0).ln()) / s);
        }
        (1.0 - 2.0f64.ln()) - 0.5 * (b - a) * acc.value()
    }

    fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
        // standard Newton-on-Chebyshev-seed construction
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0f64, 0.0f64);
                for j in 0..n {
                    let p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p2) / (j + 1) as f64;
                }
                let dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
                let dx = p0 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (mut p0, mut p1) = (1.0f64, 0.0f64);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            let dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    }

    #[test]
    fn rho_three_matches_quadrature_oracle() {
        let t = table();
        let oracle = rho3_oracle();
        assert!((oracle - 0.0486084).abs() < 1e-6, "oracle sanity: {oracle}");
        assert!((t.rho_f64(3.0).unwrap() - oracle).abs() <= 1e-12);
    }

    #[test]
    fn delay_identity_certificate() {
        let t = table();
        assert!(
            t.certified_log_err() <= 1e-12,
            "cert = {}",
            t.certified_log_err()
        );
        for u in [1.5, 2.5, 5.0, 10.0, 20.0] {
            let r = t.delay_identity_residual(u).unwrap();
            assert!(r <= 1e-10, "residual {r} at u={u}");
        }
    }

    #[test]
    fn rho_monotone_and_positive() {
        let t = table();
        let mut prev = 1.0f64;
        let mut u = 0.0;
        while u <= 30.0 {
            let v = t.rho_f64(u).unwrap();
            assert!(v > 0.0);
            assert!(v <= prev, "rho increased at u={u}");
            prev = v;
            u += 0.01;
        }
    }

    #[test]
    fn rho_log_domain_deep() {
        let t = RhoTable::new(100);
        let v = t.rho(100.0).unwrap();
        // rho(100) ~ 1e-266: still linear-representable, log must agree
        assert!(
            v.log_value() < -500.0 && v.log_value() > -700.0,
            "{}",
            v.log_value()
        );
        let lin = t.rho_f64(100.0).unwrap();
        assert!((lin.ln() - v.log_value()).abs() < 1e-9);
    }

    #[test]
    fn rho_free_function_contract() {
        assert_eq!(rho(0.5, 1e-12).unwrap().value(), 1.0);
        assert!(matches!(rho(0.5, 1e-15), Err(Error::Domain(_))));
        assert!(matches!(
            rho(101.0, 1e-12),
            Err(Error::OutOfTabulatedRange { .. })
        ));
        assert!(rho(-1.0, 1e-12).is_err());
    }

    #[test]
    fn hildebrand_ratio_residual_shrinks() {
        // |rho(u-t)/rho(u) * e^{-t xi} - 1| <= C/u, residual decreasing in u
        let t = RhoTable::new(50);
        let mut last = f64::INFINITY;
        for u in [5.0, 10.0, 20.0, 40.0] {
            let x = xi(u).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..=10 {
                let tt = i as f64 / 10.0;
                let ratio =
                    (t.rho(u - tt).unwrap().log_value() - t.rho(u).unwrap().log_value() - tt * x)
                        .exp();
                worst = worst.max((ratio - 1.0).abs());
            }
            assert!(
                worst < last,
                "residual should shrink with u: {worst} at u={u}"
            );
            assert!(worst <= 3.0 / u, "u={u}: worst {worst}");
            last = worst;
        }
    }

    #[test]
    fn xi_examples_and_bounds() {
        // bisection oracle at u=2
        let (mut lo, mut hi) = (2.0f64.ln(), 2.0 * 2.0f64.ln());
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid.exp() - 1.0 - 2.0 * mid > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert!((oracle - 1.2564).abs() < 1e-4);
        assert!((xi(2.0).unwrap() - oracle).abs() <= 1e-12);

        for u in [1.01, 1.5, 2.0, 5.0, 10.0, 100.0, 1e4] {
            let x = xi(u).unwrap();
            assert!(
                u.ln() < x && x <= 2.0 * u.ln(),
                "bracket fails at u={u}: xi={x}"
            );
            let resid = (x.exp() - 1.0 - u * x).abs();
            assert!(resid <= 1e-10 * (1.0 + u * x), "residual at u={u}");
        }
        assert!(xi(1.0).is_err());
        assert!(xi(0.5).is_err());
        // boundary: xi -> 0+ as u -> 1+
        assert!(xi(1.0001).unwrap() < 3e-4);
    }

    #[test]
    fn xi_prime_matches_finite_difference() {
        for u in [1.5, 2.0, 5.0, 20.0, 200.0] {
            let h = 1e-6 * u;
            let fd = (xi(u + h).unwrap() - xi(u - h).unwrap()) / (2.0 * h);
            let cf = xi_prime(u).unwrap();
            assert!((fd - cf).abs() <= 1e-6 * cf.abs(), "u={u}: {fd} vs {cf}");
            assert!(cf >= 1.0 / u, "xi' >= 1/u fails at {u}");
        }
    }

    #[test]
    fn exp_integral_examples() {
        assert_eq!(
            exp_integral(Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        // oracle: 25 partial-sum terms with a crude remainder bound
        let mut partial = 0.0f64;
        let mut fact = 1.0f64;
        for k in 1..=25u32 {
            fact *= k as f64;
            partial += 1.0 / (k as f64 * fact);
        }
        let remainder = 1e-27;
        let i1 = exp_integral(Complex64::new(1.0, 0.0)).unwrap().re;
        assert!((i1 - partial).abs() <= remainder + 1e-14);
        assert!((i1 - 1.3179).abs() < 1e-4);

        // real and increasing on the positive axis
        let mut prev = 0.0;
        for s in [0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 199.0] {
            let v = exp_integral(Complex64::new(s, 0.0)).unwrap();
            assert!(v.im == 0.0 || v.im.abs() < 1e-12 * v.re);
            assert!(v.re > prev);
            prev = v.re;
        }
        assert!(matches!(
            exp_integral(Complex64::new(201.0, 0.0)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn exp_integral_series_quadrature_agree() {
        // points straddling the route switch must agree to ~1e-12
        for &s in &[
            Complex64::new(3.0, 3.0),
            Complex64::new(-4.0, 1.0),
            Complex64::new(2.0, 5.5),
            Complex64::new(0.0, 4.0),
        ] {
            let series = {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut pow = Complex64::new(1.0, 0.0);
                for k in 1..=200u32 {
                    pow *= s / k as f64;
                    acc += pow / k as f64;
                }
                acc
            };
            let quadr = quad::integrate_zero_to(expm1_over, s, 1e-13).unwrap();
            assert!(
                (series - quadr).norm() <= 1e-12 * series.norm().max(1.0),
                "s={s}"
            );
            let main = exp_integral(s).unwrap();
            assert!((main - quadr).norm() <= 1e-11 * quadr.norm().max(1.0));
        }
    }

    #[test]
    fn rho_laplace_at_zero_is_exp_gamma() {
        let v = rho_laplace(Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.re - constants::EULER_GAMMA.exp()).abs() < 1e-14);
        assert!((v.re - 1.7811).abs() < 1e-4);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn rho_laplace_matches_direct_quadrature() {
        // int_0^{u_max} e^{-v} rho(v) dv against exp(gamma + I(-1)); the
        // truncated tail is far below the 1e-8 comparison level.
        let t = RhoTable::new(60);
        let (nodes, weights) = gauss_legendre(24);
        let mut acc = CompensatedSum::new();
        for k in 0..60u32 {
            let (a, b) = (k as f64, k as f64 + 1.0);
            for (x, w) in nodes.iter().zip(&weights) {
                let v = 0.5 * (b - a) * x + 0.5 * (a + b);
                acc.add(0.5 * w * (-v).exp() * t.rho_f64(v).unwrap());
            }
        }
        let closed = rho_laplace(Complex64::new(1.0, 0.0)).unwrap().re;
        assert!(
            (acc.value() - closed).abs() <= 1e-8,
            "{} vs {closed}",
            acc.value()
        );
    }

    #[test]
    fn laplace_saddle_identity_residual_decays() {
        // exp(gamma - u xi + I(xi)) / (rho(u) sqrt(2 pi / xi')) -> 1
        let t = RhoTable::new(50);
        let residual = |u: f64| {
            let x = xi(u).unwrap();
            let ix = exp_integral(Complex64::new(x, 0.0)).unwrap().re;
            let log_lhs = constants::EULER_GAMMA - u * x + ix;
            let log_rhs = t.rho(u).unwrap().log_value()
                + 0.5 * (2.0 * core::f64::consts::PI / xi_prime(u).unwrap()).ln();
            ((log_lhs - log_rhs).exp() - 1.0).abs()
        };
        let r5 = residual(5.0);
        let r20 = residual(20.0);
        assert!(r20 < r5, "residual must shrink: r5={r5} r20={r20}");
        assert!(r20 <= 0.1, "r20={r20}");
    }

    #[test]
    fn t_correction_basics() {
        assert_eq!(
            t_correction(Complex64::new(0.0, 0.0), 5).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        // fixed s, m -> infinity: T -> 0 (like s/(2m))
        let s = Complex64::new(1.0, 0.0);
        let mut prev = f64::INFINITY;
        for m in [2u32, 10, 100, 1000] {
            let v = t_correction(s, m).unwrap().norm();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-3);
        // outside the window
        assert!(t_correction(Complex64::new(10.0, 0.0), 2).is_err());
    }

    #[test]
    fn t_correction_matches_fixed_order_oracle() {
        // independent fixed-order Gauss-Legendre along [0, s], s real
        let m = 2u32;
        let s = 1.0f64;
        let (nodes, weights) = gauss_legendre(40);
        let mut acc = CompensatedSum::new();
        for (x, w) in nodes.iter().zip(&weights) {
            let v = 0.5 * s * x + 0.5 * s;
            let e1 = if v.abs() < 1e-12 { 1.0 } else { v.exp_m1() / v };
            let wm = v / m as f64;
            let g = wm / (1.0 - (-wm).exp()) - 1.0;
            acc.add(w * e1 * g);
        }
        let oracle = 0.5 * s * acc.value();
        let got = t_correction(Complex64::new(s, 0.0), m).unwrap();
        assert!((got.re - oracle).abs() <= 1e-10 * oracle.abs().max(1.0));
        assert!(got.im.abs() < 1e-14);
    }

    #[test]
    fn t_bound_window_grid() {
        // |T(s) + s/(2m)| <= 4 e^eta / m + tau^2/(12 m^2) on the window
        for m in [2u32, 5, 10, 20] {
            let pm = core::f64::consts::PI * m as f64;
            for &eta in &[0.0, 0.5, 1.0, pm * 0.5, pm * 0.95] {
                for &tau in &[0.0, 1.0, -pm * 0.4, pm * 0.9] {
                    let s = Complex64::new(eta, tau);
                    let t = t_correction(s, m).unwrap();
                    let lhs = (t + s / (2.0 * m as f64)).norm();
                    let rhs = 4.0 * eta.exp() / m as f64 + tau * tau / (12.0 * (m * m) as f64);
                    assert!(lhs <= rhs * (1.0 + 1e-9), "m={m} s={s}: {lhs} vs {rhs}");
                }
            }
        }
    }

    #[test]
    fn generating_function_bridge() {
        // exp(sum_{i<=m} z^i/i) = exp(H_m + I(m ln z) + T(m ln z))
        for &z in &[1.1f64, 1.5, 2.0] {
            for &m in &[5u32, 10, 20] {
                let mut direct = CompensatedSum::new();
                let mut zp = 1.0;
                for i in 1..=m {
                    zp *= z;
                    direct.add(zp / i as f64);
                }
                let s = m as f64 * z.ln();
                let rhs = constants::harmonic_f64(m)
                    + exp_integral(Complex64::new(s, 0.0)).unwrap().re
                    + t_correction(Complex64::new(s, 0.0), m).unwrap().re;
                let rel = ((direct.value() - rhs) / direct.value()).abs();
                assert!(rel <= 1e-8, "z={z} m={m}: rel={rel}");
            }
        }
    }

    #[test]
    fn harmonic_exact_values() {
        use num_bigint::BigUint;
        let h4 = constants::harmonic_exact(4).reduce();
        assert_eq!(h4.numerator(), &BigUint::from(25u32));
        assert_eq!(h4.denominator(), &BigUint::from(12u32));
        let h1 = constants::harmonic_exact(1);
        assert_eq!(h1.to_f64(), 1.0);
        // float accessor tracks the exact one through the full stated range
        for n in [10u32, 100, 1000, 10_000] {
            let exact = constants::harmonic_exact(n).to_f64();
            assert!((constants::harmonic_f64(n) - exact).abs() < 1e-11, "n={n}");
        }
        // H_n ~ ln n + gamma
        let h = constants::harmonic_f64(10_000);
        assert!((h - (10_000f64).ln() - constants::EULER_GAMMA).abs() < 1e-4);
    }

    #[test]
    fn gamma_digit_string_matches_constant() {
        let parsed: f64 = constants::EULER_GAMMA_DIGITS.parse().unwrap();
        assert_eq!(parsed, constants::EULER_GAMMA);
        assert_eq!(constants::EULER_GAMMA_DIGITS.len(), 42); // "0." + 40 digits
    }
}
