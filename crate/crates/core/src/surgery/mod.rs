//! Dehn-surgery slope arithmetic: recognizing S^3 among surgeries on the
//! Hopf link, the two shared-slope tuples attached to the knot families, and
//! the first-homology order of an integer framing matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Whether `(p/q, r/s)`-surgery on the Hopf link yields `S^3`, which happens
/// exactly when `p*r - q*s = ±1`.
pub fn hopf_s3_test(p: i64, q: i64, r: i64, s: i64) -> Result<bool> {
    check_slope(p, q)?;
    check_slope(r, s)?;
    let d = p
        .checked_mul(r)
        .zip(q.checked_mul(s))
        .and_then(|(pr, qs)| pr.checked_sub(qs))
        .ok_or_else(|| Error::InvalidSlope("slope product overflows".into()))?;
    Ok(d == 1 || d == -1)
}

fn check_slope(p: i64, q: i64) -> Result<()> {
    if p == 0 && q == 0 {
        return Err(Error::InvalidSlope("slope 0/0 is not allowed".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidSlope(format!(
            "slope {p}/{q} is not in lowest terms"
        )));
    }
    Ok(())
}

/// The four integer slopes shared by the two `n`-th family knots, depending
/// on the sign of the linking number between the B and G curves:
/// `(n+1, n+2, n+3, 2n+2)` for `lk = -1` and `(n-3, n-2, n-1, 2n-2)` for
/// `lk = +1`.
pub fn shared_slopes(n: i64, lk_bg: i64) -> Result<(i64, i64, i64, i64)> {
    match lk_bg {
        -1 => Ok((n + 1, n + 2, n + 3, 2 * n + 2)),
        1 => Ok((n - 3, n - 2, n - 1, 2 * n - 2)),
        other => Err(Error::InvalidSlope(format!(
            "linking number must be -1 or +1, got {other}"
        ))),
    }
}

/// The order of the first homology of the surgered manifold described by an
/// integer framing matrix (framings on the diagonal, linking numbers off the
/// diagonal): the absolute value of the determinant, with 0 encoding an
/// infinite first homology.
pub fn homology_order(framing_matrix: &[Vec<i64>]) -> Result<BigInt> {
    let n = framing_matrix.len();
    for row in framing_matrix {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got a row of length {} in a \
                 {n}-row matrix",
                row.len()
            )));
        }
    }
    Ok(determinant(framing_matrix).abs())
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev; // exact by Bareiss
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests;
