//! Verification suites tying the matrix families to the sequences.
//!
//! Every suite returns a [`VerificationReport`]; a mismatch or an engine
//! error is recorded as the first failure and the sweep continues, so
//! `checks_run` always covers the full requested range.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::determinant::{determinant_bareiss, DeterminantEngine};
use crate::error::{Error, Result};
use crate::io::{decimal, decimal_opt};
use crate::matrix::{
    build_h, build_k, build_s, contract_column, find_contractible_column, hadamard, Matrix,
};
use crate::permanent::{
    permanent_contraction, permanent_laplace_with_cap, EngineCaps, PermanentEngine,
};
use crate::sequences::{cassini_residual, term, SequenceKind};

/// Engine that produced a value in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Permanent(PermanentEngine),
    Determinant(DeterminantEngine),
    /// The sequence recurrence itself (Cassini suite).
    Recurrence,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineKind::Permanent(e) => write!(f, "{e}"),
            EngineKind::Determinant(DeterminantEngine::Laplace) => f.write_str("laplace-det"),
            EngineKind::Determinant(e) => write!(f, "{e}"),
            EngineKind::Recurrence => f.write_str("recurrence"),
        }
    }
}

impl Serialize for EngineKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: usize,
    #[serde(with = "decimal")]
    pub expected: BigInt,
    /// `None` when the engine returned an error instead of a value.
    #[serde(with = "decimal_opt")]
    pub actual: Option<BigInt>,
    pub engine: EngineKind,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub max_n: usize,
    /// `max_n` after clamping to the engine cap.
    pub effective_max_n: usize,
    pub engine: Option<EngineKind>,
    pub checks_run: usize,
    pub passed: bool,
    pub first_failure: Option<Failure>,
}

impl VerificationReport {
    fn new(suite: Suite, max_n: usize, effective_max_n: usize, engine: Option<EngineKind>) -> Self {
        VerificationReport {
            suite: suite.name().to_string(),
            max_n,
            effective_max_n,
            engine,
            checks_run: 0,
            passed: true,
            first_failure: None,
        }
    }

    fn check(&mut self, n: usize, engine: EngineKind, expected: &BigInt, actual: Result<BigInt>) {
        self.checks_run += 1;
        let failure = match actual {
            Ok(ref v) if v == expected => return,
            Ok(v) => Failure {
                n,
                expected: expected.clone(),
                actual: Some(v),
                engine,
                error: None,
            },
            Err(e) => Failure {
                n,
                expected: expected.clone(),
                actual: None,
                engine,
                error: Some(e.to_string()),
            },
        };
        self.passed = false;
        self.first_failure.get_or_insert(failure);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Thm1,
    Thm2,
    Detper,
    Cassini,
    Contraction,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Thm1,
        Suite::Thm2,
        Suite::Detper,
        Suite::Cassini,
        Suite::Contraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Detper => "detper",
            Suite::Cassini => "cassini",
            Suite::Contraction => "contraction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Parameters shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub engine: PermanentEngine,
    pub seed: u64,
    pub trials: usize,
    pub caps: EngineCaps,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 9,
            engine: PermanentEngine::Contraction,
            seed: 42,
            trials: 200,
            caps: EngineCaps::default(),
        }
    }
}

impl SuiteConfig {
    pub fn run(&self, suite: Suite) -> VerificationReport {
        match suite {
            Suite::Thm1 => verify_thm1_with(self.max_n, self.engine, &self.caps),
            Suite::Thm2 => verify_thm2_with(self.max_n, self.engine, &self.caps),
            Suite::Detper => verify_detper(self.max_n),
            Suite::Cassini => verify_cassini(self.max_n),
            Suite::Contraction => verify_contraction_invariance_with(
                self.trials,
                self.max_n,
                self.seed,
                self.caps.laplace,
            ),
        }
    }

    /// Runs the given suites on separate threads; reports come back in input order.
    pub fn run_all(&self, suites: &[Suite]) -> Vec<VerificationReport> {
        std::thread::scope(|scope| {
            let handles: Vec<_> = suites
                .iter()
                .map(|&suite| scope.spawn(move || self.run(suite)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread panicked"))
                .collect()
        })
    }
}

/// per(H_n) = J(n+2) for n in 1..=max_n.
pub fn verify_thm1(max_n: usize, engine: PermanentEngine) -> VerificationReport {
    verify_thm1_with(max_n, engine, &EngineCaps::default())
}

pub fn verify_thm1_with(
    max_n: usize,
    engine: PermanentEngine,
    caps: &EngineCaps,
) -> VerificationReport {
    family_permanents(Suite::Thm1, max_n, engine, caps, build_h, |n| {
        term(SequenceKind::Jacobsthal, n as u64 + 2)
    })
}

/// per(K_n) = j(n) for n in 1..=max_n.
pub fn verify_thm2(max_n: usize, engine: PermanentEngine) -> VerificationReport {
    verify_thm2_with(max_n, engine, &EngineCaps::default())
}

pub fn verify_thm2_with(
    max_n: usize,
    engine: PermanentEngine,
    caps: &EngineCaps,
) -> VerificationReport {
    family_permanents(Suite::Thm2, max_n, engine, caps, build_k, |n| {
        term(SequenceKind::JacobsthalLucas, n as u64)
    })
}

fn family_permanents(
    suite: Suite,
    max_n: usize,
    engine: PermanentEngine,
    caps: &EngineCaps,
    build: impl Fn(usize) -> Result<Matrix>,
    expected: impl Fn(usize) -> BigInt,
) -> VerificationReport {
    let effective = engine.cap(caps).map_or(max_n, |cap| max_n.min(cap));
    let mut report =
        VerificationReport::new(suite, max_n, effective, Some(EngineKind::Permanent(engine)));
    for n in 1..=effective {
        let actual = build(n).and_then(|m| engine.permanent(&m, caps));
        report.check(n, EngineKind::Permanent(engine), &expected(n), actual);
    }
    report
}

/// det(H_n ∘ S) = J(n+2) and det(K_n ∘ S) = j(n) by Bareiss elimination, each also
/// cross-checked against the contraction permanent of H_n and K_n.
pub fn verify_detper(max_n: usize) -> VerificationReport {
    detper_with(max_n, build_h, build_k)
}

fn detper_with(
    max_n: usize,
    build_h: impl Fn(usize) -> Result<Matrix>,
    build_k: impl Fn(usize) -> Result<Matrix>,
) -> VerificationReport {
    let bareiss = EngineKind::Determinant(DeterminantEngine::Bareiss);
    let contraction = EngineKind::Permanent(PermanentEngine::Contraction);
    let mut report = VerificationReport::new(Suite::Detper, max_n, max_n, Some(bareiss));
    for n in 1..=max_n {
        let j = term(SequenceKind::Jacobsthal, n as u64 + 2);
        let jl = term(SequenceKind::JacobsthalLucas, n as u64);
        let signed_det = |m: Matrix| determinant_bareiss(&hadamard(&m, &build_s(n)?)?);
        report.check(n, bareiss, &j, build_h(n).and_then(signed_det));
        report.check(n, bareiss, &jl, build_k(n).and_then(signed_det));
        report.check(
            n,
            contraction,
            &j,
            build_h(n).and_then(|m| permanent_contraction(&m)),
        );
        report.check(
            n,
            contraction,
            &jl,
            build_k(n).and_then(|m| permanent_contraction(&m)),
        );
    }
    report
}

/// Cassini residual is zero for n in 1..=max_n.
pub fn verify_cassini(max_n: usize) -> VerificationReport {
    let mut report =
        VerificationReport::new(Suite::Cassini, max_n, max_n, Some(EngineKind::Recurrence));
    let zero = BigInt::zero();
    for n in 1..=max_n {
        report.check(n, EngineKind::Recurrence, &zero, cassini_residual(n as u64));
    }
    report
}

/// One contraction step preserves the permanent on `trials` seeded random
/// nonnegative matrices of size 2..=max_n with entries 0..=9.
pub fn verify_contraction_invariance(trials: usize, max_n: usize, seed: u64) -> VerificationReport {
    verify_contraction_invariance_with(trials, max_n, seed, EngineCaps::default().laplace)
}

pub fn verify_contraction_invariance_with(
    trials: usize,
    max_n: usize,
    seed: u64,
    laplace_cap: usize,
) -> VerificationReport {
    let effective = max_n.min(laplace_cap);
    let corpus = if effective >= 2 {
        random_contractible_matrices(trials, effective, seed)
    } else {
        Vec::new()
    };
    contraction_report(max_n, effective, laplace_cap, &corpus)
}

/// The same check on caller-supplied matrices. Matrices that are not square,
/// not nonnegative or have no contractible column are skipped.
pub fn verify_contraction_on(matrices: &[Matrix]) -> VerificationReport {
    let cap = EngineCaps::default().laplace;
    let max_n = matrices.iter().map(Matrix::rows).max().unwrap_or(0);
    contraction_report(max_n, max_n.min(cap), cap, matrices)
}

fn contraction_report(
    max_n: usize,
    effective: usize,
    cap: usize,
    matrices: &[Matrix],
) -> VerificationReport {
    let laplace = EngineKind::Permanent(PermanentEngine::Laplace);
    let mut report = VerificationReport::new(Suite::Contraction, max_n, effective, Some(laplace));
    for x in matrices {
        let admissible = x.is_square() && x.rows() >= 2 && x.rows() <= cap && x.is_nonnegative();
        let Some(k) = find_contractible_column(x).filter(|_| admissible) else {
            continue;
        };
        let before = match permanent_laplace_with_cap(x, cap) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let after = contract_column(x, k).and_then(|c| permanent_laplace_with_cap(&c, cap));
        report.check(x.rows(), laplace, &before, after);
    }
    report
}

/// Seeded random nonnegative square matrices with at least one contractible column.
///
/// Sizes are uniform in 2..=max_n and entries uniform in 0..=9; one random
/// column is then overwritten with exactly two nonzeros in 1..=9.
pub fn random_contractible_matrices(count: usize, max_n: usize, seed: u64) -> Vec<Matrix> {
    assert!(max_n >= 2, "contractible matrices need n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let mut entries: Vec<BigInt> = (0..n * n)
                .map(|_| BigInt::from(rng.gen_range(0..=9u8)))
                .collect();
            let col = rng.gen_range(0..n);
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            for r in 0..n {
                entries[r * n + col] = BigInt::zero();
            }
            entries[i * n + col] = BigInt::from(rng.gen_range(1..=9u8));
            entries[j * n + col] = BigInt::from(rng.gen_range(1..=9u8));
            Matrix::new(n, n, entries).expect("shape is consistent")
        })
        .collect()
}

/// Seeded random square matrices of size 1..=max_n with entries in `lo..=hi`.
pub fn random_square_matrices(
    count: usize,
    max_n: usize,
    lo: i64,
    hi: i64,
    seed: u64,
) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let entries = (0..n * n)
                .map(|_| BigInt::from(rng.gen_range(lo..=hi)))
                .collect();
            Matrix::new(n, n, entries).expect("shape is consistent")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::build_a;

    #[test]
    fn thm1_examples() {
        let r = verify_thm1(9, PermanentEngine::Contraction);
        assert!(r.passed);
        assert_eq!(r.checks_run, 9);
        assert_eq!(term(SequenceKind::Jacobsthal, 11), BigInt::from(683));
        assert!(verify_thm1(1, PermanentEngine::Laplace).passed);
        assert!(verify_thm1(6, PermanentEngine::Ryser).passed);
    }

    #[test]
    fn thm2_examples() {
        assert!(verify_thm2(9, PermanentEngine::Contraction).passed);
        assert!(verify_thm2(2, PermanentEngine::Laplace).passed);
        assert!(verify_thm2(7, PermanentEngine::Ryser).passed);
    }

    #[test]
    fn clamping_is_reported() {
        let r = verify_thm1(40, PermanentEngine::Laplace);
        assert_eq!(r.max_n, 40);
        assert_eq!(r.effective_max_n, 10);
        assert_eq!(r.checks_run, 10);
        assert!(r.passed);
        let caps = EngineCaps {
            laplace: 10,
            ryser: 5,
        };
        let r = verify_thm2_with(9, PermanentEngine::Ryser, &caps);
        assert_eq!(r.effective_max_n, 5);
    }

    #[test]
    fn detper_examples() {
        for max_n in [1, 3, 64] {
            let r = verify_detper(max_n);
            assert!(r.passed, "{r:?}");
            assert_eq!(r.checks_run, 4 * max_n);
        }
    }

    #[test]
    fn cassini_examples() {
        for max_n in [1, 3, 256] {
            assert!(verify_cassini(max_n).passed);
        }
    }

    #[test]
    fn contraction_examples() {
        let r = verify_contraction_invariance(200, 6, 42);
        assert!(r.passed);
        assert_eq!(r.checks_run, 200);
        assert!(verify_contraction_invariance(50, 4, 7).passed);
        let fixture = Matrix::from_rows([[1, 7], [1, 9]]).unwrap();
        let r = verify_contraction_on(&[fixture]);
        assert!(r.passed);
        assert_eq!(r.checks_run, 1);
    }

    #[test]
    fn fixture_skips_inadmissible_matrices() {
        let ones = Matrix::ones(3, 3).unwrap();
        let negative = Matrix::from_rows([[1, -7], [1, 9]]).unwrap();
        let r = verify_contraction_on(&[ones, negative]);
        assert_eq!(r.checks_run, 0);
        assert!(r.passed);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_contraction_invariance(30, 6, 99);
        let b = verify_contraction_invariance(30, 6, 99);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(
            random_contractible_matrices(5, 5, 1),
            random_contractible_matrices(5, 5, 1)
        );
    }

    #[test]
    fn failures_are_recorded_not_raised() {
        let broken = |n: usize| {
            build_h(n).map(|mut m| {
                m.set(1, 1, 4).unwrap();
                m
            })
        };
        let r = family_permanents(
            Suite::Thm1,
            3,
            PermanentEngine::Ryser,
            &EngineCaps::default(),
            broken,
            |n| term(SequenceKind::Jacobsthal, n as u64 + 2),
        );
        assert!(!r.passed);
        assert_eq!(r.checks_run, 3);
        let f = r.first_failure.unwrap();
        assert_eq!(f.n, 1);
        assert_eq!(f.expected, BigInt::from(3));
        assert_eq!(f.actual, Some(BigInt::from(4)));
    }

    #[test]
    fn engine_errors_become_failures() {
        let signed = |n: usize| build_a(n);
        let r = family_permanents(
            Suite::Thm1,
            2,
            PermanentEngine::Contraction,
            &EngineCaps::default(),
            signed,
            |n| term(SequenceKind::Jacobsthal, n as u64 + 2),
        );
        let f = r.first_failure.unwrap();
        assert_eq!(f.n, 2);
        assert!(f.actual.is_none());
        assert!(f.error.unwrap().contains("nonnegative"));
    }

    /// Band positions (1-based) of an n x n tridiagonal matrix with max(i, j) <= 4.
    fn band_positions() -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=4usize {
            for j in 1..=4usize {
                if i.abs_diff(j) <= 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn mutate(
        build: fn(usize) -> Result<Matrix>,
        pos: (usize, usize),
        delta: i64,
    ) -> impl Fn(usize) -> Result<Matrix> {
        move |n| {
            let mut m = build(n)?;
            if pos.0 <= n && pos.1 <= n {
                let v = m.get(pos.0, pos.1).unwrap() + delta;
                m.set(pos.0, pos.1, v).unwrap();
            }
            Ok(m)
        }
    }

    #[test]
    fn band_mutants_are_caught_by_n_4() {
        let caps = EngineCaps::default();
        for pos in band_positions() {
            for delta in [-1, 1] {
                let thm1 = family_permanents(
                    Suite::Thm1,
                    4,
                    PermanentEngine::Ryser,
                    &caps,
                    mutate(build_h, pos, delta),
                    |n| term(SequenceKind::Jacobsthal, n as u64 + 2),
                );
                let thm2 = family_permanents(
                    Suite::Thm2,
                    4,
                    PermanentEngine::Ryser,
                    &caps,
                    mutate(build_k, pos, delta),
                    |n| term(SequenceKind::JacobsthalLucas, n as u64),
                );
                let detper_h = detper_with(4, mutate(build_h, pos, delta), build_k);
                let detper_k = detper_with(4, build_h, mutate(build_k, pos, delta));
                assert!(
                    !thm1.passed && !detper_h.passed,
                    "H mutant {pos:?} {delta:+}"
                );
                assert!(
                    !thm2.passed && !detper_k.passed,
                    "K mutant {pos:?} {delta:+}"
                );
            }
        }
    }

    #[test]
    fn suite_names_and_parallel_run() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nosuch".parse::<Suite>().is_err());
        let config = SuiteConfig::default();
        let reports = config.run_all(&Suite::ALL);
        let names: Vec<&str> = reports.iter().map(|r| r.suite.as_str()).collect();
        assert_eq!(names, ["thm1", "thm2", "detper", "cassini", "contraction"]);
        assert!(reports.iter().all(|r| r.passed && r.checks_run > 0));
    }

    #[test]
    fn report_json_layout() {
        let r = verify_thm1(1, PermanentEngine::Laplace);
        assert_eq!(
            r.to_json(),
            r#"{"suite":"thm1","max_n":1,"effective_max_n":1,"engine":"laplace","checks_run":1,"passed":true,"first_failure":null}"#
        );
    }
}
