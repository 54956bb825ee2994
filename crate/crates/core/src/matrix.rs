//! Dense matrices of arbitrary-precision integers, the banded matrix
//! families, the Hadamard product and row/column contraction.
//!
//! Public indices are 1-based throughout (`get`, `contract_column`,
//! error messages). Storage is row-major.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Axis, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("{rows}x{cols} has no entries")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a list of rows, which must all have the same length.
    pub fn from_rows<T, R>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        T: Into<BigInt>,
        R: IntoIterator<Item = T>,
    {
        let mut entries = Vec::new();
        let mut cols = None;
        let mut count = 0;
        for row in rows {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let len = entries.len() - before;
            match cols {
                None => cols = Some(len),
                Some(c) if c != len => {
                    return Err(Error::Shape(format!(
                        "row {} has {len} entries, expected {c}",
                        count + 1
                    )))
                }
                _ => {}
            }
            count += 1;
        }
        Matrix::new(count, cols.unwrap_or(0), entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Matrix::filled(rows, cols, BigInt::zero())
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Matrix::filled(rows, cols, BigInt::one())
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Matrix::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        Ok(m)
    }

    fn filled(rows: usize, cols: usize, value: BigInt) -> Result<Self> {
        Matrix::new(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 1-based position (`row`, `col`).
    pub fn get(&self, row: usize, col: usize) -> Option<&BigInt> {
        if row == 0 || col == 0 || row > self.rows || col > self.cols {
            return None;
        }
        Some(&self.entries[(row - 1) * self.cols + col - 1])
    }

    /// Sets the entry at 1-based position (`row`, `col`).
    pub fn set(&mut self, row: usize, col: usize, value: impl Into<BigInt>) -> Result<()> {
        if row == 0 || row > self.rows {
            return Err(Error::IndexOutOfRange {
                axis: Axis::Row,
                index: row,
                len: self.rows,
            });
        }
        if col == 0 || col > self.cols {
            return Err(Error::IndexOutOfRange {
                axis: Axis::Column,
                index: col,
                len: self.cols,
            });
        }
        self.entries[(row - 1) * self.cols + col - 1] = value.into();
        Ok(())
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Rows as slices, top to bottom.
    pub fn row_slices(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.cols)
    }

    // 0-based access for the engines.
    pub(crate) fn at(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// First 1-based (row, col) holding a negative entry, if any.
    pub fn first_negative(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| e.is_negative())
            .map(|p| (p / self.cols + 1, p % self.cols + 1))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_default()
    }

    fn nonzero_rows_in_column(&self, col: usize) -> Vec<usize> {
        (0..self.rows)
            .filter(|&r| !self.at(r, col).is_zero())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (r, row) in cells.chunks(self.cols).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

/// The five matrix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Band matrix with diagonal (3, 1, 1, ...), subdiagonal 1, superdiagonal 2.
    H,
    /// Band matrix with diagonal (1, 3, 1, ...), subdiagonal 1, superdiagonal 2.
    K,
    /// Sign matrix: -1 on the subdiagonal, 1 elsewhere.
    S,
    /// `H ∘ S`.
    A,
    /// `K ∘ S`.
    B,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::H, Family::K, Family::S, Family::A, Family::B];

    pub fn build(self, n: usize) -> Result<Matrix> {
        match self {
            Family::H => build_h(n),
            Family::K => build_k(n),
            Family::S => build_s(n),
            Family::A => build_a(n),
            Family::B => build_b(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::H => "H",
            Family::K => "K",
            Family::S => "S",
            Family::A => "A",
            Family::B => "B",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "H" | "h" => Ok(Family::H),
            "K" | "k" => Ok(Family::K),
            "S" | "s" => Ok(Family::S),
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            other => Err(Error::Parse(format!(
                "unknown matrix family {other:?} (expected H, K, S, A or B)"
            ))),
        }
    }
}

/// Tridiagonal band with the given diagonal, subdiagonal and superdiagonal values.
fn band(n: usize, diag: impl Fn(usize) -> i64, sub: i64, sup: i64) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::EmptyFamily);
    }
    let mut m = Matrix::zeros(n, n)?;
    for i in 0..n {
        m.entries[i * n + i] = diag(i).into();
        if i + 1 < n {
            m.entries[(i + 1) * n + i] = sub.into();
            m.entries[i * n + i + 1] = sup.into();
        }
    }
    Ok(m)
}

pub fn build_h(n: usize) -> Result<Matrix> {
    band(n, |i| if i == 0 { 3 } else { 1 }, 1, 2)
}

pub fn build_k(n: usize) -> Result<Matrix> {
    band(n, |i| if i == 1 { 3 } else { 1 }, 1, 2)
}

pub fn build_s(n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::EmptyFamily);
    }
    let mut m = Matrix::ones(n, n)?;
    for i in 1..n {
        m.entries[i * n + i - 1] = -BigInt::one();
    }
    Ok(m)
}

pub fn build_a(n: usize) -> Result<Matrix> {
    hadamard(&build_h(n)?, &build_s(n)?)
}

pub fn build_b(n: usize) -> Result<Matrix> {
    hadamard(&build_k(n)?, &build_s(n)?)
}

/// Entrywise product of two matrices of equal shape.
pub fn hadamard(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    if x.rows != y.rows || x.cols != y.cols {
        return Err(Error::DimensionMismatch {
            left_rows: x.rows,
            left_cols: x.cols,
            right_rows: y.rows,
            right_cols: y.cols,
        });
    }
    let entries = x
        .entries
        .iter()
        .zip(&y.entries)
        .map(|(a, b)| a * b)
        .collect();
    Matrix::new(x.rows, x.cols, entries)
}

/// Contraction on 1-based column `k`.
///
/// Column `k` must hold exactly two nonzeros, at rows `i < j`. Row `i` becomes
/// `a[j][k] * row_i + a[i][k] * row_j`; then row `j` and column `k` are deleted.
/// For nonnegative matrices the permanent is unchanged.
pub fn contract_column(x: &Matrix, k: usize) -> Result<Matrix> {
    Ok(contract_column_detailed(x, k)?.0)
}

/// As [`contract_column`], also returning the merged 1-based rows `(i, j)`.
pub fn contract_column_detailed(x: &Matrix, k: usize) -> Result<(Matrix, (usize, usize))> {
    if x.rows < 2 || x.cols < 2 {
        return Err(Error::TooSmallToContract {
            rows: x.rows,
            cols: x.cols,
        });
    }
    if k == 0 || k > x.cols {
        return Err(Error::IndexOutOfRange {
            axis: Axis::Column,
            index: k,
            len: x.cols,
        });
    }
    let col = k - 1;
    let nz = x.nonzero_rows_in_column(col);
    if nz.len() != 2 {
        return Err(Error::NotContractible {
            axis: Axis::Column,
            index: k,
            nonzeros: nz.len(),
        });
    }
    let (i, j) = (nz[0], nz[1]);
    let a_ik = x.at(i, col);
    let a_jk = x.at(j, col);

    let mut entries = Vec::with_capacity((x.rows - 1) * (x.cols - 1));
    for r in (0..x.rows).filter(|&r| r != j) {
        for c in (0..x.cols).filter(|&c| c != col) {
            if r == i {
                entries.push(a_jk * x.at(i, c) + a_ik * x.at(j, c));
            } else {
                entries.push(x.at(r, c).clone());
            }
        }
    }
    let out = Matrix::new(x.rows - 1, x.cols - 1, entries)?;
    Ok((out, (i + 1, j + 1)))
}

/// Contraction on 1-based row `k`: transpose, contract on column `k`, transpose back.
pub fn contract_row(x: &Matrix, k: usize) -> Result<Matrix> {
    contract_column(&x.transpose(), k)
        .map(|m| m.transpose())
        .map_err(|e| match e {
            Error::NotContractible {
                index, nonzeros, ..
            } => Error::NotContractible {
                axis: Axis::Row,
                index,
                nonzeros,
            },
            Error::IndexOutOfRange { index, len, .. } => Error::IndexOutOfRange {
                axis: Axis::Row,
                index,
                len,
            },
            Error::TooSmallToContract { rows, cols } => Error::TooSmallToContract {
                rows: cols,
                cols: rows,
            },
            other => other,
        })
}

/// Smallest 1-based column with exactly two nonzero entries.
pub fn find_contractible_column(x: &Matrix) -> Option<usize> {
    (0..x.cols)
        .find(|&c| {
            (0..x.rows)
                .filter(|&r| !x.at(r, c).is_zero())
                .take(3)
                .count()
                == 2
        })
        .map(|c| c + 1)
}
