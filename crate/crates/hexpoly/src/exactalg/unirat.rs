//! Canonical quotients of integer polynomials in `q`, the final form of
//! every generating function in this crate.
//!
//! A `UniRat` is kept fully reduced: numerator and denominator share no
//! polynomial factor, their integer contents are coprime, and the sign is
//! fixed by making the denominator's constant term positive (or its leading
//! coefficient when the constant term is zero). One value then has exactly
//! one representation, so `==` is value equality. Denominators with
//! constant term 1 display as themselves, which all the generating
//! functions here have.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactAlgError, IntPoly, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRat {
    num: IntPoly,
    den: IntPoly,
}

impl UniRat {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, ExactAlgError> {
        if den.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: IntPoly, mut den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return UniRat {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        if !g.is_zero() && g.degree() > Some(0) {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let shared = num.content().gcd(&den.content());
        if !shared.is_one() {
            num = IntPoly::from_big_coeffs(num.coeffs().iter().map(|c| c / &shared).collect());
            den = IntPoly::from_big_coeffs(den.coeffs().iter().map(|c| c / &shared).collect());
        }
        let anchor = if den.coeff(0).is_zero() {
            den.leading_coeff()
        } else {
            den.coeff(0)
        };
        if anchor.is_negative() {
            num = -&num;
            den = -&den;
        }
        UniRat { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        UniRat {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn zero() -> Self {
        UniRat::from_poly(IntPoly::zero())
    }

    pub fn one() -> Self {
        UniRat::from_poly(IntPoly::one())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &UniRat) -> UniRat {
        UniRat::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &UniRat) -> UniRat {
        UniRat::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &UniRat) -> UniRat {
        UniRat::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn neg(&self) -> UniRat {
        UniRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn div(&self, rhs: &UniRat) -> Result<UniRat, ExactAlgError> {
        if rhs.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        Ok(UniRat::reduced(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    /// Value equality by cross multiplication; on canonical forms it agrees
    /// with `==` and exists to double-check that.
    pub fn equiv(&self, rhs: &UniRat) -> bool {
        &self.num * &rhs.den == &rhs.num * &self.den
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ExactAlgError> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(ExactAlgError::PoleAtPoint);
        }
        Ok(self.num.eval(x) / den)
    }

    /// First `len` power series coefficients around `q = 0`, computed by
    /// the linear recurrence the denominator imposes:
    /// `den[0] c_n = num_n - sum_{j>=1} den[j] c_{n-j}`.
    pub fn series(&self, len: usize) -> Result<Vec<BigRational>, ExactAlgError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(ExactAlgError::NoSeriesExpansion);
        }
        let d0 = BigRational::from_integer(d0);
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        for n in 0..len {
            let mut c = BigRational::from_integer(self.num.coeff(n));
            for j in 1..=n.min(self.den.degree().unwrap_or(0)) {
                c -= BigRational::from_integer(self.den.coeff(j)) * &out[n - j];
            }
            out.push(c / &d0);
        }
        Ok(out)
    }
}

impl fmt::Display for UniRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl FromStr for UniRat {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_unirat(s)
    }
}
