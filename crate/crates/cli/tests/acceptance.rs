//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line; run with `--nocapture` to see them.

use std::process::Command as Process;
use std::time::{Duration, Instant};

use qfischer::harmonic::{harmonic_basis, harmonic_decompose};
use qfischer::ops::named;
use qfischer::sample::{round_trip_inputs, DEFAULT_SEED};
use qfischer::structures::{
    complex_structure, embed_complex, embed_quaternion, is_skew_hermitian, satisfies_symplectic_relation, Matrix,
};
use qfischer::symplectic::{dims, isomorphism_checks, projection_decompose, symplectic_decompose};
use qfischer::verify::{
    full_round_trip, run_suite, same_matrix, t_maps_kernel, t_squared_is_minus_one, Suite, VerifyConfig,
};
use qfischer::{Bidegree, Context, Poly, Scalar};
use qfischer_cli::DecomposeJson;

type Outcome = Result<String, String>;

fn report(n: u32, name: &str, outcome: Outcome) {
    match &outcome {
        Ok(detail) => println!("criterion {n:>2}: PASS  {name}: {detail}"),
        Err(why) => println!("criterion {n:>2}: FAIL  {name}: {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {n} failed: {why}");
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn ctx(p: usize) -> Context {
    Context::new(p).unwrap()
}

fn bin(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_qfischer")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn suite_passes(suite: Suite, p: usize, cap: u32) -> Result<usize, String> {
    let cfg = VerifyConfig::new(p, cap);
    let mut cases = 0;
    for r in run_suite(suite, &cfg).map_err(|e| e.to_string())? {
        ensure(r.passed(), || r.to_string())?;
        cases += r.checks.iter().map(|c| c.cases).sum::<usize>();
    }
    Ok(cases)
}

fn golden() -> Outcome {
    let start = Instant::now();
    let (code, out) =
        bin(&["decompose", "--p", "2", "--mode", "symplectic", "--input", "z3^2*zb1^2", "--output", "json"]);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let report: DecomposeJson = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let c = ctx(2);
    let p = |s: &str| Poly::parse(s, c).unwrap();
    let expected = [
        (
            0,
            "none",
            p("1/3*z3^2*zb1^2 + 1/3*z2^2*zb4^2 + 2/3*z2*z3*zb1*zb4"),
            p("1/3*z3^2*zb1^2 + 1/3*z2^2*zb4^2 + 2/3*z2*z3*zb1*zb4"),
        ),
        (1, "Edag", p("-1/2*z2*z3^2*zb1 - 1/2*z2^2*z3*zb4"), p("1/2*z3^2*zb1^2 - 1/2*z2^2*zb4^2")),
        (2, "Edag", p("1/12*z2^2*z3^2"), p("1/6*z3^2*zb1^2 + 1/6*z2^2*zb4^2 - 2/3*z2*z3*zb1*zb4")),
    ];
    ensure(report.parts.len() == 3, || format!("{} parts", report.parts.len()))?;
    for (part, (t, op, h, image)) in report.parts.iter().zip(expected) {
        ensure(part.op_power == t && part.op == op && part.r2_power == 0 && part.bidegree == [2, 2], || {
            format!("part header {part:?}")
        })?;
        ensure(p(&part.component) == h, || format!("t={t}: component {}", part.component))?;
        ensure(p(&part.image) == image, || format!("t={t}: image {}", part.image))?;
        let raised = named::edag().pow(t).apply(&h).unwrap();
        ensure(raised == image, || format!("t={t}: Edag^{t} of the component is {raised}"))?;
    }
    ensure(report.reassembly_ok && report.reevaluate().unwrap(), || "reassembly".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("three parts exact, {elapsed:?}"))
}

#[test]
fn criterion_01_golden_example() {
    report(1, "golden example via CLI", golden());
}

fn concordance() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    for p in 1..=2 {
        for bd in Bidegree::up_to(6) {
            let r = dims(ctx(p), bd).map_err(|e| e.to_string())?;
            ensure(r.dim_hs_formula == r.dim_hs_rank && r.dim_hs_rank == r.dim_weyl, || format!("p={p} {bd}: {r:?}"))?;
            ensure(r.dim_h == r.dim_h_rank, || format!("p={p} {bd}: dim H {} vs rank {}", r.dim_h, r.dim_h_rank))?;
            rows += 1;
        }
    }
    let r = dims(ctx(2), Bidegree::new(2, 2)).unwrap();
    ensure(r.dim_h == 84 && r.dim_hs_rank == 14, || format!("(2,2): {r:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{rows} bidegrees, dim H(2,2) = 84, dim HS(2,2) = 14, {elapsed:?}"))
}

#[test]
fn criterion_02_dimension_concordance() {
    report(2, "dimension concordance", concordance());
}

fn branching() -> Outcome {
    for p in 1..=2 {
        for bd in Bidegree::up_to(6) {
            let r = dims(ctx(p), bd).map_err(|e| e.to_string())?;
            ensure(r.branching_sum == r.dim_h, || format!("p={p} {bd}: {} vs {}", r.branching_sum, r.dim_h))?;
        }
    }
    let c = ctx(2);
    let w = |a, b| qfischer::symplectic::weyl_dimension(&c, a, b);
    let parts = (w(2, 2), w(3, 1), w(4, 0));
    ensure(parts == (14u32.into(), 35u32.into(), 35u32.into()), || format!("{parts:?}"))?;
    Ok("sum of Weyl dimensions = dim H for a+b <= 6; 84 = 14 + 35 + 35".into())
}

#[test]
fn criterion_03_branching() {
    report(3, "branching", branching());
}

#[test]
fn criterion_04_operator_identities() {
    let outcome = (|| {
        let cases = suite_passes(Suite::Commutators, 1, 4)? + suite_passes(Suite::Commutators, 2, 4)?;
        Ok(format!("{cases} matrix identities, p <= 2, a+b <= 4"))
    })();
    report(4, "operator identities", outcome);
}

#[test]
fn criterion_05_adjointness() {
    let outcome = suite_passes(Suite::Adjoint, 2, 3).map(|n| format!("{n} cases, p = 2, a+b <= 3"));
    report(5, "adjointness", outcome);
}

fn round_trips() -> Outcome {
    let inputs = round_trip_inputs(DEFAULT_SEED, 100);
    let mut parts = 0;
    for f in &inputs {
        let problems = full_round_trip(f).map_err(|e| e.to_string())?;
        ensure(problems.is_empty(), || format!("f = {f}: {problems:?}"))?;
        parts += qfischer::symplectic::full_decompose(f).unwrap().parts.len();
    }
    Ok(format!("100 inputs, {parts} parts"))
}

#[test]
fn criterion_06_round_trip() {
    report(6, "round trip", round_trips());
}

fn peel_vs_oracle() -> Outcome {
    let mut compared = 0;
    for f in round_trip_inputs(DEFAULT_SEED, 100) {
        for piece in f.bidegree_split().into_values() {
            for part in harmonic_decompose(&piece).map_err(|e| e.to_string())?.parts {
                let d = symplectic_decompose(&part.h).map_err(|e| e.to_string())?;
                let oracle = projection_decompose(&part.h, d.orientation).map_err(|e| e.to_string())?;
                ensure(d == oracle, || format!("h = {}", part.h))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} harmonic components agree part by part"))
}

#[test]
fn criterion_07_peel_vs_oracle() {
    report(7, "peel vs oracle", peel_vs_oracle());
}

fn transforms_literal() -> Outcome {
    let mut failures = Vec::new();
    for p in 1..=2 {
        for bd in Bidegree::up_to(4) {
            if !t_squared_is_minus_one(ctx(p), bd).map_err(|e| e.to_string())? {
                failures.push(format!("p={p} {bd}"));
            }
        }
    }
    transforms_rest()?;
    ensure(failures.is_empty(), || format!("T^2 = -1 fails on {}", failures.join(", ")))?;
    Ok("T^2 = -1 everywhere".into())
}

fn transforms_rest() -> Outcome {
    let t = named::twist_t();
    for p in 1..=2 {
        for bd in Bidegree::up_to(4) {
            let c = ctx(p);
            let lhs = named::edag() * t.clone();
            let rhs = -(t.clone() * named::e());
            ensure(same_matrix(c, bd, &lhs, &rhs).unwrap(), || format!("Edag T = -T E fails, p={p} {bd}"))?;
            ensure(t_maps_kernel(c, bd, &t).unwrap(), || format!("T[HS] not in Ker Edag with equal rank, p={p} {bd}"))?;
        }
    }
    Ok("Edag T = -T E and T[HS] in Ker Edag with equal rank, p <= 2, a+b <= 4".into())
}

/// Runs the whole criterion as stated. `T` is a linear substitution, so on
/// `P(a,b)` it squares to `(-1)^(a+b)`; the literal `T^2 = -1` cannot hold
/// in even total degree and this test fails.
#[test]
#[ignore = "T^2 = -1 is false on even total degree; run with --include-ignored"]
fn criterion_08_transforms() {
    report(8, "transforms", transforms_literal());
}

/// The parts of criterion 8 that hold, so they stay guarded in the default run.
#[test]
fn criterion_08_transforms_attainable_parts() {
    let outcome = transforms_rest();
    match &outcome {
        Ok(detail) => println!("criterion  8 (partial): PASS  {detail}"),
        Err(why) => println!("criterion  8 (partial): FAIL  {why}"),
    }
    outcome.unwrap();
}

fn subspaces() -> Outcome {
    let c = ctx(2);
    let mut n = 0;
    for k in 0..=2 {
        for bd in [Bidegree::new(k, k), Bidegree::new(k, k + 1)] {
            let rep = isomorphism_checks(c, bd, k).map_err(|e| e.to_string())?;
            for check in &rep.checks {
                ensure(check.ok, || format!("{}: ranks {} / {}", check.name, check.left_rank, check.right_rank))?;
                n += 1;
            }
            // Each image Edag^j HS(k+j,k-j) lies inside H(k,k).
            let h = harmonic_basis(c, bd);
            for j in 0..=k {
                let (src, power) = if bd.a == bd.b {
                    (Bidegree::new(k + j, k - j), j)
                } else {
                    (Bidegree::new(k + 1 + j, k - j), j + 1)
                };
                for g in &qfischer::symplectic::symplectic_harmonic_basis(c, src, false).elements {
                    let img = named::edag().pow(power).apply(g).unwrap();
                    ensure(h.contains(&img).unwrap(), || format!("Edag^{power} of {g} is not in H{bd}"))?;
                }
            }
        }
    }
    Ok(format!("{n} span equalities, p = 2, k <= 2"))
}

#[test]
fn criterion_09_subspace_equalities() {
    report(9, "subspace equalities", subspaces());
}

fn structures() -> Outcome {
    for n in 1..=4 {
        let ie = Matrix::from_fn(n, n, |i, j| if i == j { Scalar::i() } else { Scalar::from_int(0) });
        ensure(embed_complex(&ie).unwrap() == complex_structure(n), || format!("phi(iE_{n})"))?;
    }
    let mut r = qfischer::sample::rng(DEFAULT_SEED);
    for k in 0..50 {
        let p = k % 3 + 1;
        let a = qfischer::sample::skew_symplectic(&mut r, p);
        let m = embed_quaternion(&a).unwrap();
        ensure(is_skew_hermitian(&m) && satisfies_symplectic_relation(&m), || format!("A = {a}"))?;
    }
    Ok("phi(iE_n) = I_2n for n <= 4; 50 skew-symplectic matrices map correctly".into())
}

#[test]
fn criterion_10_structures() {
    report(10, "structures", structures());
}

fn discrepancy() -> Outcome {
    let (code, out) = bin(&["verify", "--suite", "dims", "--p", "2"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    let line = out.lines().find(|l| l.contains("printed closed form")).ok_or("no discrepancy note")?;
    ensure(line.contains("(2,2): 14 vs 84"), || format!("note lacks (2,2): {line}"))?;
    Ok("exit 0, (2,2): 14 vs 84 reported".into())
}

#[test]
fn criterion_11_discrepancy_report() {
    report(11, "discrepancy report", discrepancy());
}
