//! Exact integer determinants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::permanent::{native_entries, require_square};

pub const DEFAULT_LAPLACE_DET_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeterminantEngine {
    Bareiss,
    Laplace,
}

impl DeterminantEngine {
    pub fn name(self) -> &'static str {
        match self {
            DeterminantEngine::Bareiss => "bareiss",
            DeterminantEngine::Laplace => "laplace",
        }
    }

    pub fn determinant(self, x: &Matrix) -> Result<BigInt> {
        match self {
            DeterminantEngine::Bareiss => determinant_bareiss(x),
            DeterminantEngine::Laplace => determinant_laplace(x),
        }
    }
}

impl fmt::Display for DeterminantEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DeterminantEngine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bareiss" => Ok(DeterminantEngine::Bareiss),
            "laplace" => Ok(DeterminantEngine::Laplace),
            other => Err(Error::Parse(format!(
                "unknown determinant method {other:?}"
            ))),
        }
    }
}

/// Fraction-free (Bareiss) elimination. Every division is exact.
pub fn determinant_bareiss(x: &Matrix) -> Result<BigInt> {
    let n = require_square(x)?;
    let mut a: Vec<Vec<BigInt>> = x.row_slices().map(<[BigInt]>::to_vec).collect();
    let mut prev_pivot = BigInt::one();
    let mut negate = false;

    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let t = &pivot_row[k] * &row[j] - &row[k] * &pivot_row[j];
                row[j] = t / &prev_pivot;
            }
            row[k] = BigInt::zero();
        }
        prev_pivot = a[k][k].clone();
    }

    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Signed cofactor expansion along rows.
pub fn determinant_laplace(x: &Matrix) -> Result<BigInt> {
    determinant_laplace_with_cap(x, DEFAULT_LAPLACE_DET_CAP)
}

pub fn determinant_laplace_with_cap(x: &Matrix, cap: usize) -> Result<BigInt> {
    let n = require_square(x)?;
    if n > cap {
        return Err(Error::OverCap {
            engine: "laplace",
            n,
            cap,
        });
    }
    if n > 63 {
        return Err(Error::OverCap {
            engine: "laplace",
            n,
            cap: 63,
        });
    }
    match native_entries(x, n) {
        Some(small) => Ok(BigInt::from(cofactor_native(&small, 0, 0, n))),
        None => Ok(cofactor(x, 0, 0, n)),
    }
}

fn cofactor_native(a: &[i128], row: usize, used: u64, n: usize) -> i128 {
    if row == n {
        return 1;
    }
    let mut sum = 0;
    let mut rank = 0usize;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let v = a[row * n + col];
        if v != 0 {
            let term = v * cofactor_native(a, row + 1, used | (1 << col), n);
            if rank.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
        }
        rank += 1;
    }
    sum
}

fn cofactor(x: &Matrix, row: usize, used: u64, n: usize) -> BigInt {
    if row == n {
        return BigInt::one();
    }
    let mut sum = BigInt::zero();
    // Position of `col` among the still-unused columns fixes the cofactor sign.
    let mut rank = 0usize;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let a = x.at(row, col);
        if !a.is_zero() {
            let term = a * cofactor(x, row + 1, used | (1 << col), n);
            if rank.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
        }
        rank += 1;
    }
    sum
}
