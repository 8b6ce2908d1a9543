//! Error type shared by all modules.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The order of a finite field must be p^k with p prime, k >= 1.
    NotAPrimePower(u64),
    /// Parameters violate `1 <= m <= n` (or `n >= 1`).
    InvalidParams { q: u64, n: u32, m: u32 },
    /// A brute-force oracle was asked for more work than its stated budget.
    BudgetExceeded {
        what: &'static str,
        limit: u64,
        requested: u64,
    },
    /// The enumeration oracle only handles prime fields.
    NonPrimeField(u64),
    /// `rho` was asked for a point beyond the tabulated range.
    OutOfTabulatedRange { u: f64, u_max: f64 },
    /// Argument outside the operation's stated domain.
    Domain(&'static str),
    /// `G_q` series evaluation requires `z^2 < q` for its certified tail.
    DivergenceRisk { z: f64, q: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::InvalidParams { q, n, m } => {
                write!(
                    f,
                    "invalid parameters q={q}, n={n}, m={m} (need n >= 1, 1 <= m <= n)"
                )
            }
            Error::BudgetExceeded {
                what,
                limit,
                requested,
            } => {
                write!(
                    f,
                    "budget exceeded for {what}: requested {requested}, limit {limit}"
                )
            }
            Error::NonPrimeField(q) => {
                write!(f, "enumeration oracle needs a prime field, got q={q}")
            }
            Error::OutOfTabulatedRange { u, u_max } => {
                write!(f, "u={u} outside tabulated range [0, {u_max}]")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DivergenceRisk { z, q } => {
                write!(f, "series tail not certified: z={z} with z^2 >= q={q}")
            }
        }
    }
}

impl core::error::Error for Error {}
