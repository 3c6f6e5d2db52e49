//! Text format for [`UniRat`]: `(polynomial) / (polynomial)` with
//! polynomials written as sums of `c`, `q`, `c*q` and `c*q^k` terms in any
//! order, matching what [`UniRat`]'s `Display` emits. Parsing accepts
//! arbitrary whitespace between tokens and repeated terms with the same
//! exponent (they are summed), so `parse(render(f)) == f` and parsed input
//! is always in canonical form.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{IntPoly, UniRat};

/// Exponents above this are rejected to keep hostile input from forcing
/// huge dense allocations; every generating function here has degree
/// below thirty.
const MAX_EXPONENT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {:?}", ch as char))
        }
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let digits = &self.bytes[start..self.pos];
        Ok(BigInt::parse_bytes(digits, 10).expect("digits form an integer"))
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let n = self.number()?;
        match usize::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(ParseError {
                pos: start,
                message: format!("exponent exceeds the limit of {MAX_EXPONENT}"),
            }),
        }
    }

    /// `q`, `q^k`, `c`, `c*q` or `c*q^k`, returned as `(coefficient,
    /// exponent)`.
    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                Ok((BigInt::from(1), e))
            }
            Some(d) if d.is_ascii_digit() => {
                let c = self.number()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.bytes.get(self.pos) != Some(&b'q') {
                        return self.err("expected q after '*'");
                    }
                    self.pos += 1;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    Ok((c, e))
                } else {
                    Ok((c, 0))
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn poly(&mut self) -> Result<IntPoly, ParseError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut sign = BigInt::from(1);
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = BigInt::from(-1);
            }
            Some(b'+') => {
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let (c, e) = self.term()?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += sign * c;
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigInt::from(1);
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = BigInt::from(-1);
                }
                _ => return Ok(IntPoly::from_big_coeffs(coeffs)),
            }
        }
    }
}

pub fn parse_unirat(s: &str) -> Result<UniRat, ParseError> {
    let mut sc = Scanner::new(s);
    sc.expect(b'(')?;
    let num = sc.poly()?;
    sc.expect(b')')?;
    sc.expect(b'/')?;
    sc.expect(b'(')?;
    let den = sc.poly()?;
    sc.expect(b')')?;
    if sc.peek().is_some() {
        return sc.err("unexpected trailing input");
    }
    if den.is_zero() {
        return sc.err("denominator polynomial is zero");
    }
    Ok(UniRat::new(num, den).expect("nonzero denominator"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ur(num: &[i64], den: &[i64]) -> UniRat {
        UniRat::new(
            IntPoly::from_coeffs(num.iter().copied()),
            IntPoly::from_coeffs(den.iter().copied()),
        )
        .unwrap()
    }

    #[test]
    fn parses_display_output() {
        for f in [
            ur(&[0, 1, -3, 3, -1], &[1, -6, 10, -7, 1]),
            ur(&[0, 1], &[1, -1]),
            ur(&[5], &[1]),
            ur(&[0], &[1]),
            ur(&[-1, 0, 7], &[0, 0, 3]),
        ] {
            let text = f.to_string();
            let back: UniRat = text.parse().unwrap();
            assert_eq!(back, f, "round-trip through {text:?}");
        }
    }

    #[test]
    fn accepts_flexible_spacing_and_term_order() {
        let f: UniRat = "( q^2+ q -3*q^2+ 2 )/( 1 - q )".parse().unwrap();
        assert_eq!(f, ur(&[2, 1, -2], &[1, -1]));
        let g: UniRat = "(0)/(7)".parse().unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn parsed_values_are_canonical() {
        let f: UniRat = "(2*q) / (2 - 2*q)".parse().unwrap();
        assert_eq!(f, ur(&[0, 1], &[1, -1]));
        let g: UniRat = "(1) / (0 - 1 + q)".parse().unwrap();
        assert_eq!(g, ur(&[-1], &[1, -1]));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "(q)",
            "(q) / ",
            "(q) / (0)",
            "(q) / (q - q)",
            "(q) (1)",
            "(q) / (1) extra",
            "(q + ) / (1)",
            "(* q) / (1)",
            "(3 * ) / (1)",
            "(q^) / (1)",
            "(q^-1) / (1)",
            "(q^99999999) / (1)",
            "(q^18446744073709551616) / (1)",
            "(t) / (1)",
        ] {
            assert!(bad.parse::<UniRat>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let err = "(q) / (1".parse::<UniRat>().unwrap_err();
        assert_eq!(err.pos, 8);
        let err = "(w) / (1)".parse::<UniRat>().unwrap_err();
        assert_eq!(err.pos, 1);
    }
}
