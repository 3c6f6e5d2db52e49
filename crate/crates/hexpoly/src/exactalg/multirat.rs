//! Quotients of multivariate polynomials.
//!
//! A `MultiRat` is `num / den` with `den` not identically zero. No common
//! factors are cancelled: multivariate GCDs are expensive and nothing here
//! needs them, since the expressions stay small and equality checks go
//! through cross multiplication. Differentiation and substitution preserve
//! the invariant, substitution fails loudly when it would zero out the
//! denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{ExactAlgError, IntPoly, MultiPoly, UniRat, Variable};

#[derive(Clone, Debug)]
pub struct MultiRat {
    num: MultiPoly,
    den: MultiPoly,
}

impl MultiRat {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactAlgError> {
        if den.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        Ok(MultiRat { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        MultiRat {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn zero() -> Self {
        MultiRat::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        MultiRat::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value equality through cross multiplication; sound without reduced
    /// forms because polynomials over the rationals form an integral domain.
    pub fn equiv(&self, other: &MultiRat) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn div(&self, other: &MultiRat) -> Result<MultiRat, ExactAlgError> {
        if other.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        Ok(MultiRat {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        })
    }

    /// Quotient-rule derivative; the squared denominator stays nonzero.
    pub fn differentiate(&self, v: Variable) -> MultiRat {
        let num = &(&self.num.differentiate(v) * &self.den)
            - &(&self.num * &self.den.differentiate(v));
        MultiRat {
            num,
            den: &self.den * &self.den,
        }
    }

    /// Replaces one variable by a rational constant.
    pub fn substitute(&self, v: Variable, value: &BigRational) -> Result<MultiRat, ExactAlgError> {
        let den = self.den.substitute(v, value);
        if den.is_zero() {
            return Err(ExactAlgError::SingularSubstitution);
        }
        Ok(MultiRat {
            num: self.num.substitute(v, value),
            den,
        })
    }

    pub fn eval(&self, point: &[BigRational; 4]) -> Result<BigRational, ExactAlgError> {
        use num_traits::Zero;
        let den = self.den.eval(point);
        if den.is_zero() {
            return Err(ExactAlgError::PoleAtPoint);
        }
        Ok(self.num.eval(point) / den)
    }

    /// Converts a function of `q` alone into a canonical quotient of
    /// integer polynomials, clearing rational coefficients.
    pub fn to_unirat(&self) -> Result<UniRat, ExactAlgError> {
        for (poly, _) in [(&self.num, "numerator"), (&self.den, "denominator")] {
            for v in [Variable::T, Variable::U, Variable::V] {
                if poly.degree(v).unwrap_or(0) > 0 {
                    return Err(ExactAlgError::NotUnivariate(v.name()));
                }
            }
        }
        let num = clear_denominators(&self.num);
        let den = clear_denominators(&self.den);
        // Scaling numerator and denominator by different constants is fine,
        // UniRat::new never sees the intermediate value: build explicitly.
        let (np, nc) = num;
        let (dp, dc) = den;
        // self = (np / nc) / (dp / dc) = (np * dc) / (dp * nc)
        UniRat::new(
            &np * &IntPoly::constant(dc),
            &dp * &IntPoly::constant(nc),
        )
    }
}

/// Writes a `q`-only polynomial as `(integer polynomial) / (positive
/// integer)`.
fn clear_denominators(p: &MultiPoly) -> (IntPoly, num_bigint::BigInt) {
    use num_integer::Integer;
    let coeffs = p.q_coefficients();
    let mut lcm = num_bigint::BigInt::from(1);
    for c in coeffs.values() {
        lcm = lcm.lcm(c.denom());
    }
    let deg = coeffs.keys().next_back().map_or(0, |&d| d as usize);
    let mut out = vec![num_bigint::BigInt::from(0); deg + 1];
    for (&e, c) in &coeffs {
        out[e as usize] = c.numer() * (&lcm / c.denom());
    }
    (IntPoly::from_big_coeffs(out), lcm)
}

impl Add for &MultiRat {
    type Output = MultiRat;

    fn add(self, rhs: &MultiRat) -> MultiRat {
        MultiRat {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &MultiRat {
    type Output = MultiRat;

    fn sub(self, rhs: &MultiRat) -> MultiRat {
        MultiRat {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul for &MultiRat {
    type Output = MultiRat;

    fn mul(self, rhs: &MultiRat) -> MultiRat {
        MultiRat {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &MultiRat {
    type Output = MultiRat;

    fn neg(self) -> MultiRat {
        MultiRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for MultiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn poly_q() -> MultiPoly {
        MultiPoly::var(Variable::Q)
    }

    fn poly_t() -> MultiPoly {
        MultiPoly::var(Variable::T)
    }

    fn qt() -> MultiPoly {
        &poly_q() * &poly_t()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// qt / (1 - qt), the weight of a single run read column by column.
    fn geometric_qt() -> MultiRat {
        MultiRat::new(qt(), &MultiPoly::one() - &qt()).unwrap()
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(
            MultiRat::new(MultiPoly::one(), MultiPoly::zero()).unwrap_err(),
            ExactAlgError::ZeroDenominator
        );
    }

    #[test]
    fn derivative_of_geometric_series() {
        // d/dt [qt / (1 - qt)] = q / (1 - qt)^2
        let d = geometric_qt().differentiate(Variable::T);
        let expect = MultiRat::new(poly_q(), (&MultiPoly::one() - &qt()).pow(2)).unwrap();
        assert!(d.equiv(&expect));
    }

    #[test]
    fn derivative_matches_symmetric_difference_quotient() {
        // For rational f, (f(x+h) - f(x-h)) / 2h - f'(x) is O(h^2); with h
        // = 1/1000 and these smooth points a bound of 10 h^2 is generous.
        let f = geometric_qt();
        let df = f.differentiate(Variable::T);
        let h = rat(1, 1000);
        let points = [
            (rat(1, 3), rat(1, 2)),
            (rat(1, 5), rat(2, 3)),
            (rat(1, 7), rat(-3, 4)),
            (rat(2, 7), rat(5, 4)),
            (rat(-1, 4), rat(1, 6)),
        ];
        let bound = rat(10, 1) * &h * &h;
        for (qv, tv) in points {
            let at = |tval: BigRational| {
                let point = [qv.clone(), tval, BigRational::zero(), BigRational::zero()];
                f.eval(&point).unwrap()
            };
            let fd = (at(&tv + &h) - at(&tv - &h)) / (rat(2, 1) * &h);
            let exact = df
                .eval(&[qv.clone(), tv, BigRational::zero(), BigRational::zero()])
                .unwrap();
            let err = if fd > exact {
                &fd - &exact
            } else {
                &exact - &fd
            };
            assert!(err <= bound, "error {err} exceeds {bound}");
        }
    }

    #[test]
    fn substitute_examples() {
        let f = geometric_qt();
        // t = 1 turns the weight into q / (1 - q).
        let at_one = f.substitute(Variable::T, &rat(1, 1)).unwrap();
        let expect =
            MultiRat::new(poly_q(), &MultiPoly::one() - &poly_q()).unwrap();
        assert!(at_one.equiv(&expect));
        // t = 0 kills every positive power of t.
        let at_zero = f.substitute(Variable::T, &rat(0, 1)).unwrap();
        assert!(at_zero.is_zero());
    }

    #[test]
    fn singular_substitution_is_reported() {
        // 1 / (1 - t) has no value at t = 1.
        let f = MultiRat::new(MultiPoly::one(), &MultiPoly::one() - &poly_t()).unwrap();
        assert_eq!(
            f.substitute(Variable::T, &rat(1, 1)).unwrap_err(),
            ExactAlgError::SingularSubstitution
        );
    }

    #[test]
    fn field_identities_hold() {
        let f = geometric_qt();
        let g = MultiRat::new(
            &MultiPoly::one() + &poly_t(),
            &MultiPoly::one() - &(&poly_q() * &poly_q()),
        )
        .unwrap();
        let h = MultiRat::from_poly(&qt() - &MultiPoly::one());
        let left = &(&f + &g) * &h;
        let right = &(&f * &h) + &(&g * &h);
        assert!(left.equiv(&right));
        let back = f.div(&g).unwrap();
        assert!((&back * &g).equiv(&f));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn to_unirat_requires_q_only() {
        let f = geometric_qt();
        assert_eq!(
            f.to_unirat().unwrap_err(),
            ExactAlgError::NotUnivariate("t")
        );
        let g = f.substitute(Variable::T, &rat(1, 1)).unwrap();
        let u = g.to_unirat().unwrap();
        assert_eq!(u.to_string(), "(q) / (1 - q)");
    }

    #[test]
    fn to_unirat_clears_rational_coefficients() {
        // (q/2) / (1 - q/3) = (3 q) / (6 - 2 q)
        let half_q = MultiPoly::monomial(rat(1, 2), [1, 0, 0, 0]);
        let third_q = MultiPoly::monomial(rat(1, 3), [1, 0, 0, 0]);
        let f = MultiRat::new(half_q, &MultiPoly::one() - &third_q).unwrap();
        let u = f.to_unirat().unwrap();
        assert_eq!(u.to_string(), "(3*q) / (6 - 2*q)");
    }
}
