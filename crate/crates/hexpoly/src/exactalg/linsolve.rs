//! Exact Gaussian elimination over the field of rational functions.
//!
//! The systems solved here are tiny (at most seven unknowns) with `UniRat`
//! entries, so plain elimination with the first nonzero pivot is plenty.
//! Because the arithmetic is exact there is no conditioning concern; the
//! solution is still substituted back as a defence against logic errors.

use super::{ExactAlgError, UniRat};

/// Solves `matrix * x = rhs`, requiring a square nonsingular system.
pub fn solve_linear(matrix: &[Vec<UniRat>], rhs: &[UniRat]) -> Result<Vec<UniRat>, ExactAlgError> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "matrix and right-hand side sizes differ");
    for row in matrix {
        assert_eq!(row.len(), n, "matrix must be square");
    }

    let mut a: Vec<Vec<UniRat>> = matrix.to_vec();
    let mut b: Vec<UniRat> = rhs.to_vec();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(ExactAlgError::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = UniRat::one().div(&a[col][col])?;
        for entry in a[col][col..].iter_mut() {
            *entry = entry.mul(&inv);
        }
        b[col] = b[col].mul(&inv);
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (entry, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *entry = entry.sub(&factor.mul(p));
            }
            b[r] = b[r].sub(&factor.mul(&b[col]));
        }
    }

    // Exact residual check: the eliminated matrix says Ax = b, make the
    // original matrix agree.
    for (row, want) in matrix.iter().zip(rhs) {
        let mut acc = UniRat::zero();
        for (coeff, x) in row.iter().zip(&b) {
            acc = acc.add(&coeff.mul(x));
        }
        assert_eq!(&acc, want, "residual check failed");
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPoly;

    fn ur(num: &[i64], den: &[i64]) -> UniRat {
        UniRat::new(
            IntPoly::from_coeffs(num.iter().copied()),
            IntPoly::from_coeffs(den.iter().copied()),
        )
        .unwrap()
    }

    fn c(n: i64) -> UniRat {
        ur(&[n], &[1])
    }

    #[test]
    fn identity_system() {
        let a = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let b = vec![ur(&[0, 1], &[1, -1]), c(3)];
        assert_eq!(solve_linear(&a, &b).unwrap(), b);
    }

    #[test]
    fn rational_function_system() {
        // x + q y = 1/(1-q);  x - y = 0  =>  x = y = 1/((1-q)(1+q))
        let a = vec![vec![c(1), ur(&[0, 1], &[1])], vec![c(1), c(-1)]];
        let b = vec![ur(&[1], &[1, -1]), c(0)];
        let x = solve_linear(&a, &b).unwrap();
        let expect = ur(&[1], &[1, 0, -1]);
        assert_eq!(x, vec![expect.clone(), expect]);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = vec![vec![c(0), c(2)], vec![c(3), c(0)]];
        let b = vec![c(4), c(9)];
        let x = solve_linear(&a, &b).unwrap();
        assert_eq!(x, vec![c(3), c(2)]);
    }

    #[test]
    fn singular_systems_are_detected() {
        let a = vec![vec![c(1), c(2)], vec![c(2), c(4)]];
        let b = vec![c(1), c(2)];
        assert_eq!(
            solve_linear(&a, &b).unwrap_err(),
            ExactAlgError::SingularSystem
        );
    }
}
