//! Sparse polynomials over the rationals in the variables `q`, `t`, `u`,
//! `v`.
//!
//! `q` marks area throughout the crate; `t` marks the height of the last
//! column and `u`, `v` the sizes of its upper and lower run when a column
//! is split. Terms live in a sorted map from exponent vectors to nonzero
//! rational coefficients, so equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Q,
    T,
    U,
    V,
}

impl Variable {
    pub const ALL: [Variable; 4] = [Variable::Q, Variable::T, Variable::U, Variable::V];

    fn index(self) -> usize {
        match self {
            Variable::Q => 0,
            Variable::T => 1,
            Variable::U => 2,
            Variable::V => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variable::Q => "q",
            Variable::T => "t",
            Variable::U => "u",
            Variable::V => "v",
        }
    }
}

type Exps = [u16; 4];

/// A polynomial in `q`, `t`, `u`, `v` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exps, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MultiPoly::default();
        if !c.is_zero() {
            p.terms.insert([0; 4], c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(v: Variable) -> Self {
        MultiPoly::monomial_int(1, {
            let mut e = [0u16; 4];
            e[v.index()] = 1;
            e
        })
    }

    /// The monomial `c * q^e0 t^e1 u^e2 v^e3`.
    pub fn monomial(c: BigRational, exps: [u16; 4]) -> Self {
        let mut p = MultiPoly::default();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn monomial_int(c: i64, exps: [u16; 4]) -> Self {
        MultiPoly::monomial(BigRational::from_integer(c.into()), exps)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; 4]).is_some_and(One::is_one)
    }

    /// Highest exponent of `v` appearing, `None` for the zero polynomial.
    pub fn degree(&self, v: Variable) -> Option<u16> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    /// True when no variable other than `q` appears.
    pub fn is_univariate_in_q(&self) -> bool {
        self.terms.keys().all(|e| e[1] == 0 && e[2] == 0 && e[3] == 0)
    }

    /// Coefficients as a map from the `q`-exponent, valid only when
    /// [`MultiPoly::is_univariate_in_q`] holds.
    pub fn q_coefficients(&self) -> BTreeMap<u16, BigRational> {
        debug_assert!(self.is_univariate_in_q());
        self.terms.iter().map(|(e, c)| (e[0], c.clone())).collect()
    }

    fn insert_term(&mut self, exps: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn differentiate(&self, v: Variable) -> MultiPoly {
        let i = v.index();
        let mut out = MultiPoly::default();
        for (&exps, c) in &self.terms {
            if exps[i] == 0 {
                continue;
            }
            let mut e = exps;
            e[i] -= 1;
            out.insert_term(e, c * BigRational::from_integer(exps[i].into()));
        }
        out
    }

    /// Replaces `v` by a rational constant.
    pub fn substitute(&self, v: Variable, value: &BigRational) -> MultiPoly {
        let i = v.index();
        let mut out = MultiPoly::default();
        for (&exps, c) in &self.terms {
            let mut e = exps;
            e[i] = 0;
            let scaled = if exps[i] == 0 {
                c.clone()
            } else if value.is_zero() {
                continue;
            } else {
                c * Pow::pow(value, exps[i] as i32)
            };
            out.insert_term(e, scaled);
        }
        out
    }

    /// Evaluates at a full point `(q, t, u, v)`.
    pub fn eval(&self, point: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= Pow::pow(&point[i], e as i32);
                }
            }
            acc += term;
        }
        acc
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_term(e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps = [
                    ea[0] + eb[0],
                    ea[1] + eb[1],
                    ea[2] + eb[2],
                    ea[3] + eb[3],
                ];
                out.insert_term(exps, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            let mut mon = String::new();
            for (v, &e) in Variable::ALL.iter().zip(exps) {
                if e == 1 {
                    mon.push_str(&format!("{}*", v.name()));
                } else if e > 1 {
                    mon.push_str(&format!("{}^{}*", v.name(), e));
                }
            }
            mon.pop();
            let lead_minus = c < &BigRational::zero();
            let mag = if lead_minus { -c.clone() } else { c.clone() };
            if i == 0 {
                if lead_minus {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if lead_minus { "-" } else { "+" })?;
            }
            if mon.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{mag}*{mon}")?;
            }
        }
        Ok(())
    }
}
