//! Exact polynomial and rational-function arithmetic.
//!
//! Everything downstream of the enumeration engines works over the
//! rationals with no floating point: multivariate polynomials in the area
//! marker `q` and the column markers `t`, `u`, `v` ([`MultiPoly`]), their
//! quotients ([`MultiRat`]), and canonical single-variable quotients of
//! integer polynomials in `q` ([`UniRat`]) for final generating functions.
//! [`solve_linear`] eliminates over the `UniRat` field and double-checks
//! its result by residual substitution.

mod linsolve;
mod multipoly;
mod multirat;
mod parse;
mod unipoly;
mod unirat;

pub use linsolve::solve_linear;
pub use multipoly::{MultiPoly, Variable};
pub use multirat::MultiRat;
pub use parse::{parse_unirat, ParseError};
pub use unipoly::IntPoly;
pub use unirat::UniRat;

use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExactAlgError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("substitution makes the denominator vanish identically")]
    SingularSubstitution,
    #[error("evaluation point is a pole of the function")]
    PoleAtPoint,
    #[error("expression still involves {0}, expected a function of q alone")]
    NotUnivariate(&'static str),
    #[error("no power series at q = 0, the denominator vanishes there")]
    NoSeriesExpansion,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// Cauchy product of two power series truncated to `len` coefficients.
pub fn series_mul(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    use num_traits::Zero;
    let mut out = vec![BigRational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}
