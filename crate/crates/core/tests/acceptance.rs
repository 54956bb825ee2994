//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails. All checks are exact equalities.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use permseq::determinant::determinant_laplace;
use permseq::verify::{random_contractible_matrices, random_square_matrices};
use permseq::*;
use std::result::Result;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Result<String, String>,
}

fn expect_eq(what: &str, actual: &BigInt, expected: &BigInt) -> Result<(), String> {
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected}, got {actual}"))
    }
}

fn engine_value(engine: PermanentEngine, x: &Matrix) -> Result<BigInt, String> {
    engine
        .permanent(x, &EngineCaps::default())
        .map_err(|e| format!("{engine}: {e}"))
}

// Value table, n = 1..9, extended by J(10) = 341, J(11) = 683.
const J_3_TO_11: [u64; 9] = [3, 5, 11, 21, 43, 85, 171, 341, 683];
const JL_1_TO_9: [u64; 9] = [1, 5, 7, 17, 31, 65, 127, 257, 511];

/// Engine caps the criteria run under.
const LAPLACE_LIMIT: usize = 10;
const RYSER_LIMIT: usize = 20;
const CONTRACTION_LIMIT: usize = 512;

fn family_reproduction(
    build: fn(usize) -> permseq::Result<Matrix>,
    table: &[u64; 9],
) -> Result<String, String> {
    let mut checks = 0;
    for n in 1..=9usize {
        let x = build(n).map_err(|e| e.to_string())?;
        let expected = BigInt::from(table[n - 1]);
        for (engine, limit) in [
            (PermanentEngine::Laplace, LAPLACE_LIMIT),
            (PermanentEngine::Ryser, RYSER_LIMIT),
            (PermanentEngine::Contraction, CONTRACTION_LIMIT),
        ] {
            if n <= limit {
                expect_eq(
                    &format!("{engine} n={n}"),
                    &engine_value(engine, &x)?,
                    &expected,
                )?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact checks"))
}

fn criterion_1() -> Result<String, String> {
    for (i, &v) in J_3_TO_11.iter().enumerate() {
        expect_eq(
            "table",
            &term(SequenceKind::Jacobsthal, i as u64 + 3),
            &BigInt::from(v),
        )?;
    }
    family_reproduction(build_h, &J_3_TO_11)
}

fn criterion_2() -> Result<String, String> {
    for (i, &v) in JL_1_TO_9.iter().enumerate() {
        expect_eq(
            "table",
            &term(SequenceKind::JacobsthalLucas, i as u64 + 1),
            &BigInt::from(v),
        )?;
    }
    family_reproduction(build_k, &JL_1_TO_9)
}

fn criterion_3() -> Result<String, String> {
    for n in 1..=64usize {
        let j = term(SequenceKind::Jacobsthal, n as u64 + 2);
        let jl = term(SequenceKind::JacobsthalLucas, n as u64);
        let det_a = determinant_bareiss(&build_a(n).unwrap()).map_err(|e| e.to_string())?;
        let det_b = determinant_bareiss(&build_b(n).unwrap()).map_err(|e| e.to_string())?;
        let per_h = permanent_contraction(&build_h(n).unwrap()).map_err(|e| e.to_string())?;
        let per_k = permanent_contraction(&build_k(n).unwrap()).map_err(|e| e.to_string())?;
        expect_eq(&format!("det A_{n}"), &det_a, &j)?;
        expect_eq(&format!("det B_{n}"), &det_b, &jl)?;
        expect_eq(&format!("det A_{n} vs per H_{n}"), &det_a, &per_h)?;
        expect_eq(&format!("det B_{n} vs per K_{n}"), &det_b, &per_k)?;
    }
    let report = verify::verify_detper(64);
    if !report.passed {
        return Err(format!("detper suite failed: {:?}", report.first_failure));
    }
    Ok("n = 1..64, 256 exact checks".into())
}

fn leading_pairs(x: Matrix, count: usize) -> Result<Vec<(BigInt, BigInt)>, String> {
    let trace = contraction_chain(&x).map_err(|e| e.to_string())?;
    Ok(trace
        .steps
        .iter()
        .take(count)
        .map(|s| s.leading_pair.clone())
        .collect())
}

fn pairs(values: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
    values
        .iter()
        .map(|&(a, b)| (BigInt::from(a), BigInt::from(b)))
        .collect()
}

fn criterion_4() -> Result<String, String> {
    let h_display = pairs(&[(5, 6), (11, 10), (21, 22)]);
    let k_display = pairs(&[(5, 2), (7, 10)]);
    for n in 7..=32 {
        let h = leading_pairs(build_h(n).unwrap(), 3)?;
        let k = leading_pairs(build_k(n).unwrap(), 2)?;
        if h != h_display {
            return Err(format!("H_{n} leading pairs {h:?}"));
        }
        if k != k_display {
            return Err(format!("K_{n} leading pairs {k:?}"));
        }
    }
    Ok("H_n steps 1-3 and K_n steps 1-2 for n = 7..32".into())
}

fn criterion_5() -> Result<String, String> {
    for n in 1..=256u64 {
        let r = cassini_residual(n).map_err(|e| e.to_string())?;
        if !r.is_zero() {
            return Err(format!("n = {n}: residual {r}"));
        }
    }
    Ok("n = 1..256".into())
}

fn criterion_6() -> Result<String, String> {
    let corpus = random_contractible_matrices(200, 6, 42);
    let mut checked = 0;
    for x in &corpus {
        let k = find_contractible_column(x).ok_or_else(|| format!("not contractible:\n{x}"))?;
        let before = permanent_laplace(x).map_err(|e| e.to_string())?;
        let after = permanent_laplace(&contract_column(x, k).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        expect_eq(&format!("contraction of\n{x}\n"), &after, &before)?;
        checked += 1;
    }
    let report = verify::verify_contraction_invariance(200, 6, 42);
    if !report.passed || report.checks_run != 200 {
        return Err(format!("suite report: {}", report.to_json()));
    }
    Ok(format!("{checked}/200 instances preserved"))
}

fn criterion_7() -> Result<String, String> {
    let corpus = random_square_matrices(200, 7, -9, 9, 7);
    for x in &corpus {
        let laplace = permanent_laplace(x).map_err(|e| e.to_string())?;
        let ryser = permanent_ryser(x).map_err(|e| e.to_string())?;
        expect_eq(&format!("permanent of\n{x}\n"), &ryser, &laplace)?;
        let bareiss = determinant_bareiss(x).map_err(|e| e.to_string())?;
        let cofactor = determinant_laplace(x).map_err(|e| e.to_string())?;
        expect_eq(&format!("determinant of\n{x}\n"), &bareiss, &cofactor)?;
    }
    Ok("200/200 permanents and determinants agree".into())
}

fn criterion_8() -> Result<String, String> {
    for n in 1..=20 {
        let s = build_s(n).unwrap();
        for (name, x) in [("H", build_h(n).unwrap()), ("K", build_k(n).unwrap())] {
            let det = determinant_bareiss(&hadamard(&x, &s).unwrap()).map_err(|e| e.to_string())?;
            let per = permanent_ryser(&x).map_err(|e| e.to_string())?;
            expect_eq(&format!("{name}_{n}"), &det, &per)?;
        }
    }
    Ok("n = 1..20 for H and K".into())
}

fn criterion_9() -> Result<String, String> {
    let x = build_h(512).unwrap();
    let start = Instant::now();
    let value = permanent_contraction(&x).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    expect_eq("per H_512", &value, &term(SequenceKind::Jacobsthal, 514))?;
    if elapsed >= Duration::from_secs(2) {
        return Err(format!("contraction took {elapsed:?}"));
    }
    Ok(format!(
        "{} digits in {elapsed:.2?}",
        value.to_string().len()
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "per(H_n) = J(n+2), n = 1..9, all engines",
            budget: Some(Duration::from_secs(5)),
            run: criterion_1,
        },
        Criterion {
            id: 2,
            title: "per(K_n) = j(n), n = 1..9, all engines",
            budget: Some(Duration::from_secs(5)),
            run: criterion_2,
        },
        Criterion {
            id: 3,
            title: "det(A_n) = J(n+2), det(B_n) = j(n), n = 1..64",
            budget: Some(Duration::from_secs(10)),
            run: criterion_3,
        },
        Criterion {
            id: 4,
            title: "contraction chain leading pairs",
            budget: None,
            run: criterion_4,
        },
        Criterion {
            id: 5,
            title: "Cassini residual zero, n = 1..256",
            budget: Some(Duration::from_secs(1)),
            run: criterion_5,
        },
        Criterion {
            id: 6,
            title: "one contraction step preserves the permanent (200 seeded)",
            budget: None,
            run: criterion_6,
        },
        Criterion {
            id: 7,
            title: "Laplace = Ryser and Bareiss = Laplace (200 seeded)",
            budget: None,
            run: criterion_7,
        },
        Criterion {
            id: 8,
            title: "det(X o S) = per(X) for H_n, K_n, n = 1..20",
            budget: None,
            run: criterion_8,
        },
        Criterion {
            id: 9,
            title: "contraction per(H_512) = J(514) in < 2 s",
            budget: None,
            run: criterion_9,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(budget)) if elapsed >= budget => {
                Err(format!("over time budget: {elapsed:.2?} >= {budget:?}"))
            }
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] AC{} {} ({detail}; {elapsed:.2?})", c.id, c.title),
            Err(why) => {
                failures += 1;
                println!("[FAIL] AC{} {}: {why}", c.id, c.title);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
