//! Permanent engines.
//!
//! * [`permanent_laplace`]: expansion along rows over all permutations. The oracle.
//! * [`permanent_ryser`]: inclusion-exclusion over column subsets in Gray-code order.
//! * [`permanent_contraction`]: repeated contraction on the smallest contractible
//!   column down to a 2x2 matrix. Only valid for nonnegative matrices and only
//!   finishes when every intermediate matrix has a contractible column.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{decimal, decimal_pair};
use crate::matrix::Matrix;

pub const DEFAULT_LAPLACE_CAP: usize = 10;
pub const DEFAULT_RYSER_CAP: usize = 24;

/// Largest sizes the exponential engines accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineCaps {
    pub laplace: usize,
    pub ryser: usize,
}

impl Default for EngineCaps {
    fn default() -> Self {
        EngineCaps {
            laplace: DEFAULT_LAPLACE_CAP,
            ryser: DEFAULT_RYSER_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PermanentEngine {
    Laplace,
    Ryser,
    Contraction,
}

impl PermanentEngine {
    pub const ALL: [PermanentEngine; 3] = [
        PermanentEngine::Laplace,
        PermanentEngine::Ryser,
        PermanentEngine::Contraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PermanentEngine::Laplace => "laplace",
            PermanentEngine::Ryser => "ryser",
            PermanentEngine::Contraction => "contraction",
        }
    }

    /// Size cap for this engine, `None` when unbounded.
    pub fn cap(self, caps: &EngineCaps) -> Option<usize> {
        match self {
            PermanentEngine::Laplace => Some(caps.laplace),
            PermanentEngine::Ryser => Some(caps.ryser),
            PermanentEngine::Contraction => None,
        }
    }

    pub fn permanent(self, x: &Matrix, caps: &EngineCaps) -> Result<BigInt> {
        match self {
            PermanentEngine::Laplace => permanent_laplace_with_cap(x, caps.laplace),
            PermanentEngine::Ryser => permanent_ryser_with_cap(x, caps.ryser),
            PermanentEngine::Contraction => permanent_contraction(x),
        }
    }
}

impl fmt::Display for PermanentEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PermanentEngine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace" => Ok(PermanentEngine::Laplace),
            "ryser" => Ok(PermanentEngine::Ryser),
            "contraction" => Ok(PermanentEngine::Contraction),
            other => Err(Error::Parse(format!("unknown permanent method {other:?}"))),
        }
    }
}

pub(crate) fn require_square(x: &Matrix) -> Result<usize> {
    if x.is_square() {
        Ok(x.rows())
    } else {
        Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        })
    }
}

fn check_cap(engine: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::OverCap { engine, n, cap })
    } else {
        Ok(())
    }
}

pub fn permanent_laplace(x: &Matrix) -> Result<BigInt> {
    permanent_laplace_with_cap(x, DEFAULT_LAPLACE_CAP)
}

/// Sum over all permutations of the products `a[i][σ(i)]`, expanded row by row.
pub fn permanent_laplace_with_cap(x: &Matrix, cap: usize) -> Result<BigInt> {
    let n = require_square(x)?;
    check_cap("laplace", n, cap)?;
    check_cap("laplace", n, 63)?;
    match native_entries(x, n) {
        Some(small) => Ok(BigInt::from(expand_rows_native(&small, 0, 0, n))),
        None => Ok(expand_rows(x, 0, 0, n)),
    }
}

/// Entries as i128 when `n! * max|a|^n` fits, which bounds every partial sum
/// of the permutation expansion (signed or not).
pub(crate) fn native_entries(x: &Matrix, n: usize) -> Option<Vec<i128>> {
    let max = x.max_abs_entry().to_u128()?;
    let mut bound: u128 = 1;
    for k in 1..=n as u128 {
        bound = bound.checked_mul(k)?.checked_mul(max.max(1))?;
    }
    if bound > i128::MAX as u128 {
        return None;
    }
    x.entries().iter().map(|e| e.to_i128()).collect()
}

fn expand_rows_native(a: &[i128], row: usize, used: u64, n: usize) -> i128 {
    if row == n {
        return 1;
    }
    let mut sum = 0;
    for col in 0..n {
        if used & (1 << col) != 0 || a[row * n + col] == 0 {
            continue;
        }
        sum += a[row * n + col] * expand_rows_native(a, row + 1, used | (1 << col), n);
    }
    sum
}

fn expand_rows(x: &Matrix, row: usize, used: u64, n: usize) -> BigInt {
    if row == n {
        return BigInt::from(1);
    }
    let mut sum = BigInt::zero();
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let a = x.at(row, col);
        if a.is_zero() {
            continue;
        }
        let minor = expand_rows(x, row + 1, used | (1 << col), n);
        if !minor.is_zero() {
            sum += a * minor;
        }
    }
    sum
}

pub fn permanent_ryser(x: &Matrix) -> Result<BigInt> {
    permanent_ryser_with_cap(x, DEFAULT_RYSER_CAP)
}

/// Ryser's formula
/// `per(A) = (-1)^n Σ_S (-1)^|S| Π_i Σ_{j∈S} a[i][j]`
/// with subsets visited in Gray-code order so each step adds or removes one column.
pub fn permanent_ryser_with_cap(x: &Matrix, cap: usize) -> Result<BigInt> {
    let n = require_square(x)?;
    check_cap("ryser", n, cap)?;
    // Hard limit of the u64 subset counter.
    check_cap("ryser", n, 63)?;
    match small_entries(x, n) {
        Some(small) => Ok(ryser_small(&small, n)),
        None => Ok(ryser_big(x, n)),
    }
}

/// Entries as i64 when every row sum is guaranteed to fit.
fn small_entries(x: &Matrix, n: usize) -> Option<Vec<i64>> {
    let bound = x.max_abs_entry().to_i64()?;
    bound.checked_mul(n as i64)?;
    x.entries().iter().map(|e| e.to_i64()).collect()
}

/// Signed sum accumulated in i128, spilling into a `BigInt` on overflow.
#[derive(Default)]
struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    fn add_small(&mut self, term: i128) {
        match self.small.checked_add(term) {
            Some(v) => self.small = v,
            None => {
                self.big += self.small;
                self.small = term;
            }
        }
    }

    fn add_big(&mut self, term: BigInt) {
        self.big += term;
    }

    fn total(self) -> BigInt {
        self.big + self.small
    }
}

fn ryser_small(a: &[i64], n: usize) -> BigInt {
    let mut row_sums = vec![0i64; n];
    let mut acc = Accumulator::default();
    let mut odd = false;
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let bit = k.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let adding = gray & (1 << bit) != 0;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            let v = a[i * n + bit];
            if adding {
                *sum += v;
            } else {
                *sum -= v;
            }
        }
        odd = !odd;
        if row_sums.contains(&0) {
            continue;
        }
        let mut product: Option<i128> = Some(1);
        for &s in &row_sums {
            product = product.and_then(|p| p.checked_mul(s as i128));
        }
        // Sign (-1)^(n - |S|).
        let negate = odd != (n % 2 == 1);
        match product {
            Some(p) => acc.add_small(if negate { -p } else { p }),
            None => {
                let p: BigInt = row_sums.iter().map(|&s| BigInt::from(s)).product();
                acc.add_big(if negate { -p } else { p });
            }
        }
    }
    acc.total()
}

fn ryser_big(x: &Matrix, n: usize) -> BigInt {
    let mut row_sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut odd = false;
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let bit = k.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let adding = gray & (1 << bit) != 0;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            if adding {
                *sum += x.at(i, bit);
            } else {
                *sum -= x.at(i, bit);
            }
        }
        odd = !odd;
        if row_sums.iter().any(Zero::is_zero) {
            continue;
        }
        let p: BigInt = row_sums.iter().product();
        if odd != (n % 2 == 1) {
            total -= p;
        } else {
            total += p;
        }
    }
    total
}

/// One contraction step of a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    /// 1-based pivot column in the matrix being contracted.
    #[serde(rename = "pivot")]
    pub pivot_column: usize,
    /// 1-based rows `(i, j)`, `i < j`; row `i` is replaced and row `j` deleted.
    #[serde(rename = "rows")]
    pub merged_rows: (usize, usize),
    /// First two entries of the first row after the step.
    #[serde(rename = "leading", with = "decimal_pair")]
    pub leading_pair: (BigInt, BigInt),
}

/// Record of a full contraction chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub steps: Vec<ContractionStep>,
    /// 2x2 matrix the chain stops at (the input itself when it is 1x1 or 2x2).
    pub terminal: Matrix,
    #[serde(with = "decimal")]
    pub value: BigInt,
}

impl ContractionTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialization is infallible")
    }
}

pub fn permanent_contraction(x: &Matrix) -> Result<BigInt> {
    contraction_chain(x).map(|t| t.value)
}

/// Contracts on the smallest contractible column until the matrix is 2x2,
/// recording each step.
pub fn contraction_chain(x: &Matrix) -> Result<ContractionTrace> {
    let n = require_square(x)?;
    if let Some((row, col)) = x.first_negative() {
        return Err(Error::NegativeEntry { row, col });
    }
    let mut work = Workspace::new(x, n);
    let mut steps = Vec::with_capacity(n.saturating_sub(2));
    while work.size() > 2 {
        steps.push(work.contract_smallest()?);
    }
    let terminal = work.materialize();
    let value = small_permanent(&terminal);
    Ok(ContractionTrace {
        steps,
        terminal,
        value,
    })
}

fn small_permanent(m: &Matrix) -> BigInt {
    match m.rows() {
        1 => m.at(0, 0).clone(),
        2 => m.at(0, 0) * m.at(1, 1) + m.at(0, 1) * m.at(1, 0),
        _ => unreachable!("chain terminals are at most 2x2"),
    }
}

/// Working copy for a contraction chain. Deleted rows and columns are dropped
/// from the active index lists instead of being copied out, and per-column
/// nonzero counts are kept current, so each step costs O(n).
struct Workspace {
    cells: Vec<Vec<BigInt>>,
    active_rows: Vec<usize>,
    active_cols: Vec<usize>,
    col_nonzeros: Vec<usize>,
}

impl Workspace {
    fn new(x: &Matrix, n: usize) -> Self {
        let cells: Vec<Vec<BigInt>> = x.row_slices().map(<[BigInt]>::to_vec).collect();
        let col_nonzeros = (0..n)
            .map(|c| cells.iter().filter(|row| !row[c].is_zero()).count())
            .collect();
        Workspace {
            cells,
            active_rows: (0..n).collect(),
            active_cols: (0..n).collect(),
            col_nonzeros,
        }
    }

    fn size(&self) -> usize {
        self.active_rows.len()
    }

    fn contract_smallest(&mut self) -> Result<ContractionStep> {
        let size = self.size();
        let pivot_pos = self
            .active_cols
            .iter()
            .position(|&c| self.col_nonzeros[c] == 2)
            .ok_or(Error::Stuck { size })?;
        let pivot = self.active_cols[pivot_pos];

        let mut hits = self
            .active_rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| !self.cells[r][pivot].is_zero())
            .map(|(pos, &r)| (pos, r));
        let (pos_i, i) = hits.next().expect("column has two nonzeros");
        let (pos_j, j) = hits.next().expect("column has two nonzeros");

        let coef_i = self.cells[j][pivot].clone();
        let coef_j = self.cells[i][pivot].clone();
        let (row_i, row_j) = pair_mut(&mut self.cells, i, j);
        for &c in &self.active_cols {
            let was_i = !row_i[c].is_zero();
            let was_j = !row_j[c].is_zero();
            if !was_i && !was_j {
                continue;
            }
            let merged = &coef_i * &row_i[c] + &coef_j * &row_j[c];
            let now = !merged.is_zero();
            self.col_nonzeros[c] =
                self.col_nonzeros[c] + usize::from(now) - usize::from(was_i) - usize::from(was_j);
            row_i[c] = merged;
        }
        self.active_rows.remove(pos_j);
        self.active_cols.remove(pivot_pos);

        let first = &self.cells[self.active_rows[0]];
        let leading_pair = (
            first[self.active_cols[0]].clone(),
            first[self.active_cols[1]].clone(),
        );
        Ok(ContractionStep {
            pivot_column: pivot_pos + 1,
            merged_rows: (pos_i + 1, pos_j + 1),
            leading_pair,
        })
    }

    fn materialize(&self) -> Matrix {
        let entries = self
            .active_rows
            .iter()
            .flat_map(|&r| {
                self.active_cols
                    .iter()
                    .map(move |&c| self.cells[r][c].clone())
            })
            .collect();
        Matrix::new(self.size(), self.active_cols.len(), entries)
            .expect("workspace keeps a nonempty square shape")
    }
}

fn pair_mut<T>(items: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    debug_assert!(i != j);
    if i < j {
        let (lo, hi) = items.split_at_mut(j);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = items.split_at_mut(i);
        (&mut hi[0], &mut lo[j])
    }
}
