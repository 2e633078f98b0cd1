//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p gmcheck --test acceptance -- --nocapture --test-threads=1`
//! to see them.

mod common;

use std::time::{Duration, Instant};

use gmcheck::fixtures;
use gmcheck::io::parse_manifold;
use gmcheck::linalg::{integer_kernel_basis, rational_rank, IntMatrix};
use gmcheck::ls1::{bound_c, build_ls1, corank_c};
use gmcheck::ls2::{assemble_ls2, bound_c_prime, build_ls2, corank_c_prime, fiber_data, reversed_fiber_data};
use gmcheck::manifold::{apply_basis_change, validate};
use gmcheck::random::random_unimodular;
use gmcheck::report::{run, RunOptions, Verdict};
use num_bigint::BigInt;
use num_rational::BigRational;

const EXAMPLE_JSON: &str = include_str!("../fixtures/example_4d.json");

/// c' of the bundled example, obtained by eliminating the three fiber-intersection
/// equations in (x, y, z) by hand: with d = [[1,1],[3,2]] and kernel vectors
/// (0,1), (1,-1), (2,-1) the rows are (-1,-4,-3), (1,-2,0), (3,-12,-15), whose
/// determinant is -72, so the rank is 3 and c' = 3 - 3 = 0.
const EXAMPLE_C_PRIME: i64 = 0;
/// c of the bundled example from an independent symbolic rank computation of the
/// 20 x 24 system.
const EXAMPLE_C: i64 = 4;

fn report(id: u32, name: &str, ok: bool, detail: String) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id}: {name} ({detail})");
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn criterion_1_published_rank() {
    let a = fixtures::published_coefficient_matrix();
    let start = Instant::now();
    let rank = rational_rank(&a);
    let elapsed = start.elapsed();
    let ok = rank == 3 && elapsed < Duration::from_millis(1);
    report(1, "published coefficient matrix has rank 3", ok, format!("rank {rank}, {elapsed:?}"));
    assert_eq!(rank, 3);
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
}

#[test]
fn criterion_2_lemma_bounds() {
    let cp = bound_c_prime(4, 1, 6);
    let c = bound_c(4, 1, 6, 1);
    let ok = cp == rational(0) && c == rational(4);
    report(2, "lemma bounds for the example", ok, format!("bound c' = {cp}, bound c = {c}"));
    assert_eq!(cp, rational(0));
    assert_eq!(c, rational(4));
}

#[test]
fn criterion_3_example_end_to_end() {
    let start = Instant::now();
    let spec = parse_manifold(EXAMPLE_JSON).unwrap();
    let m = validate(&spec).unwrap();
    let ls1 = build_ls1(&m);
    let ls2 = build_ls2(&m).unwrap();
    let c = ls1.corank();
    let c_prime = ls2.corank();
    let full = run(&spec, &RunOptions::default()).unwrap();
    let elapsed = start.elapsed();

    let shapes = (ls2.num_variables(), ls2.num_equations(), ls1.num_variables(), ls1.num_equations());
    let documented = full.notes.iter().any(|n| n.contains("not mutually consistent"))
        && full.render_text().contains("not mutually consistent");
    let ok = shapes == (3, 3, 24, 20)
        && c_prime == EXAMPLE_C_PRIME
        && c == EXAMPLE_C
        && full.verdict == Verdict::ObstructedCPrime
        && documented
        && elapsed < Duration::from_millis(100);
    report(
        3,
        "bundled example end to end",
        ok,
        format!("LS2 {}x{}, LS1 {}x{}, c = {c}, c' = {c_prime}, {elapsed:?}", shapes.1, shapes.0, shapes.3, shapes.2),
    );
    assert_eq!(shapes, (3, 3, 24, 20));
    assert_eq!(c_prime, EXAMPLE_C_PRIME);
    assert_eq!(c, EXAMPLE_C);
    assert_eq!(full.verdict, Verdict::ObstructedCPrime);
    assert!(documented);
    assert!(elapsed < Duration::from_millis(100), "took {elapsed:?}");
}

#[test]
fn criterion_4_basis_invariance() {
    let start = Instant::now();
    let mut trials = 0;
    let mut failures = Vec::new();
    for n in [4, 5] {
        for (i, (m, bc)) in common::change_pairs(n, 60, 10_000 * n as u64).into_iter().enumerate() {
            let changed = apply_basis_change(&m, &bc).unwrap();
            let before = (corank_c(&m), corank_c_prime(&m).unwrap());
            let after = (corank_c(&changed), corank_c_prime(&changed).unwrap());
            trials += 1;
            if before != after {
                failures.push((n, i, before, after));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = trials >= 100 && failures.is_empty() && elapsed < Duration::from_secs(60);
    report(
        4,
        "c and c' invariant under random basis changes",
        ok,
        format!("{trials} pairs, {} failures, {elapsed:?}", failures.len()),
    );
    assert!(trials >= 100);
    assert!(failures.is_empty(), "{failures:?}");
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
}

#[test]
fn criterion_5_lemma_properties() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in [4, 5] {
        for (i, (m, _)) in common::change_pairs(n, 60, 10_000 * n as u64).into_iter().enumerate() {
            let (nv, nw, nwd) = (m.num_blocks(), m.num_gluing_tori(), m.num_boundary_tori());
            let c = corank_c(&m);
            let c_prime = corank_c_prime(&m).unwrap();
            checked += 1;
            if rational(c) < bound_c(n, nv, nw, nwd) {
                failures.push(format!("n={n} #{i}: c = {c} below bound"));
            }
            if rational(c_prime) < bound_c_prime(n, nv, nw) {
                failures.push(format!("n={n} #{i}: c' = {c_prime} below bound"));
            }
            if n == 4 && c <= 0 {
                failures.push(format!("n=4 #{i}: c = {c} not positive"));
            }
        }
    }
    for (i, m) in common::population(3, 60, 30_000).into_iter().enumerate() {
        let (nv, nw, nwd) = (m.num_blocks(), m.num_gluing_tori(), m.num_boundary_tori());
        let c = corank_c(&m);
        checked += 1;
        if rational(c) < bound_c(3, nv, nw, nwd) || c <= 0 {
            failures.push(format!("n=3 #{i}: c = {c}"));
        }
    }
    let ok = failures.is_empty();
    report(
        5,
        "lemma bounds and positivity for n = 3, 4",
        ok,
        format!("{checked} manifolds, {} failures", failures.len()),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_6_kernel_and_orientation_independence() {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in [4, 5] {
        for (i, m) in common::population(n, 30, 50_000 * n as u64).into_iter().enumerate() {
            let base = build_ls2(&m).unwrap();
            let corank = base.corank();

            let mut data = fiber_data(&m).unwrap();
            let mut rng = common::rng(i as u64 + 77);
            for d in &mut data {
                let u = random_unimodular(&mut rng, n - 3, 6, 3);
                d.data.kernel = &d.data.kernel * &u;
            }
            let rekerneled = assemble_ls2(&m, &data).corank();

            let mut with_reverse = base.clone();
            with_reverse.extend(&assemble_ls2(&m, &reversed_fiber_data(&m).unwrap()));
            let widened = with_reverse.corank();

            checked += 1;
            if rekerneled != corank || widened != corank {
                failures.push((n, i, corank, rekerneled, widened));
            }
        }
    }
    let ok = checked >= 50 && failures.is_empty();
    report(
        6,
        "c' independent of kernel basis and gluing orientation",
        ok,
        format!("{checked} manifolds, {} failures", failures.len()),
    );
    assert!(checked >= 50);
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_7_rank_and_kernel_oracles() {
    let mut rng = common::rng(7);
    let mut rank_mismatch = 0;
    let mut kernel_failures = 0;
    let mut deficient = 0;
    let total = 1200;
    for _ in 0..total {
        let a: IntMatrix = common::random_small_matrix(&mut rng);
        let rank = rational_rank(&a);
        if rank != common::naive_rank(&a) {
            rank_mismatch += 1;
        }
        if rank < a.rows().min(a.cols()) {
            deficient += 1;
        }
        let k = integer_kernel_basis(&a);
        if !(&a * &k).is_zero() || k.cols() != a.cols() - rank || k.rows() != a.cols() {
            kernel_failures += 1;
        }
    }
    let ok = rank_mismatch == 0 && kernel_failures == 0;
    report(
        7,
        "fraction-free rank and integer kernels agree with oracles",
        ok,
        format!("{total} matrices ({deficient} rank-deficient), {rank_mismatch} rank mismatches, {kernel_failures} kernel failures"),
    );
    assert_eq!(rank_mismatch, 0);
    assert_eq!(kernel_failures, 0);
}
