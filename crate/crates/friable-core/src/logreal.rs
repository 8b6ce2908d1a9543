//! Nonnegative reals carried in the log domain.
//!
//! Used wherever values underflow f64 (`rho(u) = u^{-u+o(u)}`, friability
//! probabilities at large `u`, saddle amplitudes). `abs_err_budget` is the
//! absolute error bound on `log_value`, i.e. the relative error bound on the
//! represented value.

use core::cmp::Ordering;
use core::fmt;

use crate::math;

#[derive(Debug, Clone, Copy)]
pub struct LogReal {
    log_value: f64,
    zero: bool,
    abs_err_budget: f64,
}

impl LogReal {
    pub fn zero() -> Self {
        LogReal {
            log_value: f64::NEG_INFINITY,
            zero: true,
            abs_err_budget: 0.0,
        }
    }

    pub fn one() -> Self {
        LogReal {
            log_value: 0.0,
            zero: false,
            abs_err_budget: 0.0,
        }
    }

    /// Wraps a known log value with its error budget.
    pub fn from_log(log_value: f64, abs_err_budget: f64) -> Self {
        LogReal {
            log_value,
            zero: false,
            abs_err_budget,
        }
    }

    /// Wraps a positive value; panics on negatives.
    pub fn from_value(v: f64) -> Self {
        assert!(v >= 0.0, "LogReal represents nonnegative values");
        if v == 0.0 {
            Self::zero()
        } else {
            LogReal {
                log_value: math::ln(v),
                zero: false,
                abs_err_budget: f64::EPSILON,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn log_value(&self) -> f64 {
        self.log_value
    }

    pub fn abs_err_budget(&self) -> f64 {
        self.abs_err_budget
    }

    /// Linear-domain value; underflows to 0 and overflows to infinity.
    pub fn value(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            math::exp(self.log_value)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.zero || other.zero {
            return Self::zero();
        }
        LogReal {
            log_value: self.log_value + other.log_value,
            zero: false,
            abs_err_budget: self.abs_err_budget + other.abs_err_budget,
        }
    }

    /// `self / other`; panics when dividing by zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.zero, "division by LogReal zero");
        if self.zero {
            return Self::zero();
        }
        LogReal {
            log_value: self.log_value - other.log_value,
            zero: false,
            abs_err_budget: self.abs_err_budget + other.abs_err_budget,
        }
    }

    pub fn powi(&self, k: i32) -> Self {
        if self.zero {
            return Self::zero();
        }
        LogReal {
            log_value: self.log_value * k as f64,
            zero: false,
            abs_err_budget: self.abs_err_budget * k.unsigned_abs() as f64,
        }
    }
}

impl PartialEq for LogReal {
    fn eq(&self, other: &Self) -> bool {
        self.zero == other.zero && (self.zero || self.log_value == other.log_value)
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.zero, other.zero) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => self.log_value.partial_cmp(&other.log_value),
        }
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            write!(f, "0")
        } else {
            write!(f, "exp({})", self.log_value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let half = LogReal::from_value(0.5);
        assert!((half.value() - 0.5).abs() < 1e-16);
        let q = half.mul(&half);
        assert!((q.value() - 0.25).abs() < 1e-16);
        assert!(LogReal::zero() < half);
        assert!(half < LogReal::one());
        assert_eq!(LogReal::zero().value(), 0.0);
        assert_eq!(LogReal::zero().mul(&half).value(), 0.0);
    }

    #[test]
    fn deep_underflow_survives() {
        let tiny = LogReal::from_log(-2000.0, 1e-13);
        assert_eq!(tiny.value(), 0.0); // f64 underflow, but
        assert_eq!(tiny.log_value(), -2000.0); // the log is intact
        let ratio = tiny.div(&LogReal::from_log(-2001.0, 1e-13));
        assert!((ratio.value() - core::f64::consts::E).abs() < 1e-12);
        assert!((ratio.abs_err_budget() - 2e-13).abs() < 1e-20);
    }
}
