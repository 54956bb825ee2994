//! Jacobsthal and Jacobsthal-Lucas numbers by direct iteration of
//! `x(n+2) = x(n+1) + 2 x(n)`, plus the Cassini-like residual.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// Seeds (0, 1).
    Jacobsthal,
    /// Seeds (2, 1).
    JacobsthalLucas,
}

impl SequenceKind {
    pub fn seeds(self) -> (BigInt, BigInt) {
        match self {
            SequenceKind::Jacobsthal => (BigInt::zero(), BigInt::one()),
            SequenceKind::JacobsthalLucas => (BigInt::from(2), BigInt::one()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Jacobsthal => "jacobsthal",
            SequenceKind::JacobsthalLucas => "jacobsthal-lucas",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobsthal" => Ok(SequenceKind::Jacobsthal),
            "jacobsthal-lucas" => Ok(SequenceKind::JacobsthalLucas),
            other => Err(Error::Parse(format!("unknown sequence {other:?}"))),
        }
    }
}

/// Iterator over the terms of a sequence starting at index 0.
#[derive(Debug, Clone)]
pub struct Terms {
    current: BigInt,
    next: BigInt,
}

impl Iterator for Terms {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let after = &self.next + (&self.current << 1);
        let next = std::mem::replace(&mut self.next, after);
        Some(std::mem::replace(&mut self.current, next))
    }
}

pub fn terms(kind: SequenceKind) -> Terms {
    let (current, next) = kind.seeds();
    Terms { current, next }
}

/// The `n`-th term.
pub fn term(kind: SequenceKind, n: u64) -> BigInt {
    let n = usize::try_from(n).expect("index does not fit in memory-addressable range");
    terms(kind).nth(n).expect("the sequence is infinite")
}

/// Terms `from..=to` computed in a single pass.
pub fn range(kind: SequenceKind, from: u64, to: u64) -> Result<Vec<BigInt>> {
    if from > to {
        return Err(Error::InvertedRange { from, to });
    }
    let skip = usize::try_from(from).map_err(|_| Error::Domain(format!("from = {from}")))?;
    let len = usize::try_from(to - from + 1).map_err(|_| Error::Domain(format!("to = {to}")))?;
    Ok(terms(kind).skip(skip).take(len).collect())
}

/// `J(n+1) J(n-1) - J(n)^2 - (-1)^n 2^(n-1)`; zero exactly when the identity holds.
pub fn cassini_residual(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain(
            "cassini residual needs n >= 1 (J(-1) is not defined here)".into(),
        ));
    }
    let window = range(SequenceKind::Jacobsthal, n - 1, n + 1)?;
    let (prev, cur, next) = (&window[0], &window[1], &window[2]);
    let shift = usize::try_from(n - 1).map_err(|_| Error::Domain(format!("n = {n}")))?;
    let mut power = BigInt::one() << shift;
    if n % 2 == 1 {
        power = -power;
    }
    Ok(next * prev - cur * cur - power)
}
