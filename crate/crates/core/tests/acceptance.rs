//! The acceptance suite: one PASS/FAIL line per criterion, nonzero exit if
//! any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::strategies::{nonzero_poly, poly, scalar, unit};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use qhomfly::holonomy::{fit_and_validate, kernel_dimension, GuessOptions, SequenceWindow};
use qhomfly::oracle::{homfly, jones, plat_diagram, ENGINE_CONVENTION, ENGINE_STYLE};
use qhomfly::skein::{close_s_one, consistent_starts, final_state, natural_start};
use qhomfly::twobridge::enumerate_corpus;
use qhomfly::{eval_reduced, Normalize, QScalar, Start, Substitution, TwoBridgeLink};

type Outcome = Result<String, String>;

/// Number, name, time budget, check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn link(cf: &str) -> TwoBridgeLink {
    TwoBridgeLink::new(cf.parse().unwrap()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nested_sum_equivalence() -> Outcome {
    let corpus = enumerate_corpus(4);
    ensure(corpus.len() == 15, || format!("expected 15 continued fractions, found {}", corpus.len()))?;
    let mut cases = 0;
    for l in &corpus {
        for start in consistent_starts(l) {
            for j in 0..=3 {
                let engine = eval_reduced(l, j, start, Normalize::Raw).map_err(|e| e.to_string())?;
                let reference = common::nested_sum(l, j, start);
                ensure(engine == reference, || format!("cf {} start {} j {j}", l.cf, start.name()))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (cf, start, j) cases equal term for term"))
}

fn classical_agreement() -> Outcome {
    let corpus = enumerate_corpus(8);
    for l in &corpus {
        let start = natural_start(l);
        let fundamental = eval_reduced(l, 1, start, Normalize::Raw)
            .and_then(|v| v.substitute(&Substitution::s_to_one()))
            .map_err(|e| format!("cf {}: {e}", l.cf))?;
        let d = plat_diagram(&l.cf, start, ENGINE_STYLE);
        let h = homfly(&d, ENGINE_CONVENTION);
        let engine_c = fundamental.canonicalize().unwrap();
        ensure(engine_c == h.canonicalize().unwrap(), || {
            format!("cf {}: HOMFLY mismatch, engine {engine_c}, oracle {h}", l.cf)
        })?;
        let engine_j = fundamental.substitute(&Substitution::a_to_q_pow(2)).unwrap().canonicalize().unwrap();
        let oracle_j = QScalar::from_poly(jones(&d)).canonicalize().unwrap();
        ensure(engine_j == oracle_j, || format!("cf {}: Jones mismatch", l.cf))?;
    }
    Ok(format!("{} continued fractions agree with HOMFLY and Jones", corpus.len()))
}

fn smoke() -> Outcome {
    let unknot = link("1");
    for j in 0..=10 {
        let v = eval_reduced(&unknot, j, natural_start(&unknot), Normalize::Canonical).unwrap();
        ensure(v == QScalar::one(), || format!("[1] at j = {j} gave {v}"))?;
    }
    let corpus = enumerate_corpus(6);
    for l in &corpus {
        for start in consistent_starts(l) {
            let v = eval_reduced(l, 0, start, Normalize::Canonical).unwrap();
            ensure(v == QScalar::one(), || format!("cf {} at j = 0 gave {v}", l.cf))?;
        }
    }
    Ok(format!("unknot j <= 10 and {} continued fractions at j = 0", corpus.len()))
}

fn knot_integrality() -> Outcome {
    let knots: Vec<_> = enumerate_corpus(8).into_iter().filter(|l| l.is_knot()).collect();
    for l in &knots {
        for j in 0..=4 {
            let v = eval_reduced(l, j, natural_start(l), Normalize::Raw).unwrap();
            ensure(v.den().is_empty(), || format!("cf {} j {j}: denominator {v}", l.cf))?;
        }
    }
    Ok(format!("{} knots, j <= 4", knots.len()))
}

fn figure_eight_amphichirality() -> Outcome {
    let l = link("2,2");
    for j in 1..=3 {
        let v = eval_reduced(&l, j, natural_start(&l), Normalize::Canonical).unwrap();
        let m = v.mirrored().canonicalize().unwrap();
        ensure(v == m, || format!("j {j}: {v} vs mirrored {m}"))?;
    }
    Ok("j = 1, 2, 3".into())
}

fn determinant_coloring() -> Outcome {
    let knots: Vec<_> = enumerate_corpus(6).into_iter().filter(|l| l.is_knot()).collect();
    for l in &knots {
        for j in 1..=3 {
            let v = eval_reduced(l, j, natural_start(l), Normalize::Raw)
                .unwrap()
                .substitute(&Substitution::a_to_q_pow(j as i32))
                .unwrap();
            ensure(v.is_signed_monomial(), || format!("cf {} j {j}: {v}", l.cf))?;
        }
    }
    Ok(format!("{} knots, j = 1, 2, 3", knots.len()))
}

fn recurrence_pipeline() -> Outcome {
    let window = |cf: &str, max: u32| {
        let l = link(cf);
        let values = (0..=max).map(|j| eval_reduced(&l, j, natural_start(&l), Normalize::Canonical).unwrap());
        SequenceWindow::new(0, values.collect()).unwrap()
    };
    let unknot = window("1", 12);
    let found = fit_and_validate(&unknot, 4, 8, 3, GuessOptions::default()).map_err(|e| e.to_string())?;
    let (op, report) = found.ok_or("unknot: none found")?;
    ensure(op.to_string() == "L - 1" && report.passed, || format!("unknot gave {op}"))?;

    let trefoil = window("3", 25);
    for a_free in [false, true] {
        let opts = GuessOptions { a_free, ..Default::default() };
        let found = fit_and_validate(&trefoil, 4, 8, 5, opts).map_err(|e| e.to_string())?;
        if let Some((op, report)) = found {
            ensure(report.passed, || format!("trefoil operator {op} failed on held-out colors {:?}", report.checked))?;
            return Ok(format!("unknot L - 1; trefoil d = {}, mdeg = {} validates on j = 21..25", op.order(), op.mdeg()));
        }
    }
    // Evidence for the failure: the grid point (4, 8) contains every smaller
    // ansatz, so an empty kernel there on a long window rules them all out.
    let long = window("3", 50);
    let kernels: Vec<usize> = [false, true].iter().map(|&a| kernel_dimension(&long, 4, 8, a)).collect();
    Err(format!(
        "unknot gives L - 1, but no trefoil operator with d <= 4, mdeg <= 8 fits j = 0..20; \
         kernel dimension of the (4, 8) ansatz on j = 0..50 is {} (a-dependent) and {} (a-free)",
        kernels[0], kernels[1]
    ))
}

fn arithmetic_properties() -> Outcome {
    let mut total = 0;
    let mut run = |cases: u32, name: &str, f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
        f(&mut runner).map_err(|e| format!("{name}: {e}"))?;
        total += cases;
        Ok::<(), String>(())
    };
    run(400, "ring axioms", &mut |r| {
        r.run(&(scalar(), scalar(), scalar()), |(x, y, z)| {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    run(400, "canonicalize", &mut |r| {
        r.run(&(scalar(), unit()), |(x, u)| {
            if !x.is_zero() {
                let c = x.canonicalize().unwrap();
                prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
                prop_assert_eq!(x.mul_poly(&u).canonicalize().unwrap(), c);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    run(400, "exact division", &mut |r| {
        r.run(&(poly(8), 1u32..=5, poly(6), nonzero_poly(4)), |(x, l, y, d)| {
            prop_assert_eq!(x.mul_quantum_factor(l).exact_div_by_quantum(l), Some(x.clone()));
            if let Some(qt) = x.exact_div_by_quantum(l) {
                prop_assert_eq!(qt.mul_quantum_factor(l), x);
            }
            prop_assert_eq!((&y * &d).div_exact(&d), Some(y));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })?;
    Ok(format!("{total} randomized cases"))
}

fn performance() -> Outcome {
    let l = link("3");
    let state = final_state(&l, 50, Start::Up);
    let v = close_s_one(&state).map_err(|e| e.to_string())?;
    ensure(v.den().is_empty(), || "trefoil at j = 50 kept a denominator".into())?;
    Ok(format!("trefoil j = 50 raw, {} terms", v.num_terms()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "nested-sum equivalence", Duration::from_secs(30), nested_sum_equivalence),
        (2, "classical agreement", Duration::from_secs(300), classical_agreement),
        (3, "unknot and rank-0 smoke tests", Duration::from_secs(10), smoke),
        (4, "knot integrality", Duration::from_secs(600), knot_integrality),
        (5, "figure-eight amphichirality", Duration::from_secs(600), figure_eight_amphichirality),
        (6, "determinant-coloring monomiality", Duration::from_secs(600), determinant_coloring),
        (7, "recurrence pipeline", Duration::from_secs(600), recurrence_pipeline),
        (8, "arithmetic property suite", Duration::from_secs(30), arithmetic_properties),
        (9, "performance target", Duration::from_secs(60), performance),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}, but took longer than {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {n} ({name}): PASS in {elapsed:.2?}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL in {elapsed:.2?}: {msg}");
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
