//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::Instant;

use quasiep::fractional::{default_tol, DEFAULT_MAX_ITER};
use quasiep::monotonicity::DEFAULT_TOL as PARAMONOTONE_TOL;
use quasiep::{
    check_paramonotone, compute_a_hat, dinkelbach_minimize, fejer_audit, generate_instances,
    grid_bruteforce_minimize, lemma4_audit, normal_subgradient_solve, run_benchmark,
    AffineFractionalInstance, AffineVIInstance, BenchConfig, BoxSet, EquilibriumOracle,
    FeasibleSet, GeneratorConfig, Matrix, SolverConfig, Variant, Vector, Xoshiro256StarStar,
};

const SEED: u64 = 20_190_611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn v(x: &[f64]) -> Vector<f64> {
    Vector::new(x.to_vec()).unwrap()
}

fn instances(n: usize, count: usize, seed: u64) -> Vec<AffineFractionalInstance<f64>> {
    generate_instances(&GeneratorConfig::new(n, count, seed)).unwrap()
}

fn random_point(rng: &mut Xoshiro256StarStar, b: &BoxSet<f64>) -> Vector<f64> {
    v(&(0..b.dim())
        .map(|i| rng.uniform(b.lo()[i], b.hi()[i]))
        .collect::<Vec<_>>())
}

/// 1. T1 (F(x) = x − 2 on [1, 3]), s = 1, x⁰ = 1.
fn toy_vi_convergence() -> Outcome {
    let t1 = AffineVIInstance::new(Matrix::diag(&[1.0]), v(&[-2.0]), BoxSet::cube(1, 1.0, 3.0).unwrap())
        .unwrap();
    let cfg = SolverConfig::new(Variant::Ng1)
        .with_scale(1.0)
        .unwrap()
        .with_start(v(&[1.0]));
    let rep = normal_subgradient_solve(&t1, t1.feasible_box(), &cfg).unwrap();
    let err = (rep.x_final[0] - 2.0).abs();
    outcome(
        err <= 1e-9 && rep.iterations <= 5,
        format!("x_final = {}, |x - 2| = {err:e}, iterations = {}, status {:?}", rep.x_final[0], rep.iterations, rep.status),
    )
}

/// Shared by 2 and 3: 20 solves each for n ∈ {2, 5, 10}. Each instance is
/// solved with the reference schedule and with s = 1 (longer traces).
fn audit_runs() -> Vec<(AffineFractionalInstance<f64>, quasiep::Report64)> {
    let mut out = Vec::new();
    for (i, n) in [2usize, 5, 10].into_iter().enumerate() {
        for (j, inst) in instances(n, 20, SEED + i as u64).into_iter().enumerate() {
            let variant = if j % 2 == 0 { Variant::Ng1 } else { Variant::Ng2 };
            let scale = if j % 4 < 2 { 100.0 } else { 1.0 };
            let cfg = SolverConfig::new(variant).with_scale(scale).unwrap();
            let rep = normal_subgradient_solve(&inst, inst.feasible_box(), &cfg).unwrap();
            out.push((inst, rep));
        }
    }
    out
}

/// 2. ‖x^{k+1} − x^k‖ <= α_k on every iteration.
fn lemma4(runs: &[(AffineFractionalInstance<f64>, quasiep::Report64)]) -> Outcome {
    let records: usize = runs.iter().map(|(_, r)| r.trace.len()).sum();
    let failing = runs.iter().filter(|(_, r)| !lemma4_audit(&r.trace)).count();
    outcome(
        runs.len() == 60 && failing == 0,
        format!("{} solves, {records} iterations, {failing} failing solves", runs.len()),
    )
}

/// 3. Fejér-type inequality (2α² constant) with z = box center.
fn fejer(runs: &[(AffineFractionalInstance<f64>, quasiep::Report64)]) -> Outcome {
    let failing = runs
        .iter()
        .filter(|(inst, r)| !fejer_audit(&r.trace, &inst.feasible_box().center()).unwrap())
        .count();
    outcome(
        runs.len() == 60 && failing == 0,
        format!("{} solves, {failing} failing solves", runs.len()),
    )
}

/// 4. Dinkelbach against a 401×401 grid on 50 n = 2 best-response problems.
fn dinkelbach_vs_grid() -> Outcome {
    let insts = instances(2, 50, SEED + 10);
    let mut rng = Xoshiro256StarStar::seed_from_u64(SEED + 11);
    let mut worst_gap = 0.0f64;
    let mut worst_iter = 0usize;
    for inst in &insts {
        let x = random_point(&mut rng, inst.feasible_box());
        let obj = inst.objective_at(&x).unwrap();
        let dk = dinkelbach_minimize(&obj, inst.feasible_box(), default_tol(), DEFAULT_MAX_ITER).unwrap();
        let (_, grid) = grid_bruteforce_minimize(&obj, inst.feasible_box(), 401).unwrap();
        worst_gap = worst_gap.max((dk.value - grid).abs());
        worst_iter = worst_iter.max(dk.iterations);
    }
    outcome(
        worst_gap <= 1e-3 && worst_iter <= 20,
        format!("max |dinkelbach - grid| = {worst_gap:e}, max iterations = {worst_iter}"),
    )
}

/// 5. Sampled GP-membership of the diagonal subgradient.
fn gp_membership() -> Outcome {
    let insts = instances(5, 20, SEED + 20);
    let mut rng = Xoshiro256StarStar::seed_from_u64(SEED + 21);
    let mut violations = 0;
    let mut checked = 0;
    for inst in &insts {
        let mut accepted = 0;
        let mut draws = 0;
        while accepted < 1000 && draws < 1_000_000 {
            draws += 1;
            let x = random_point(&mut rng, inst.feasible_box());
            let y = random_point(&mut rng, inst.feasible_box());
            if inst.value(&x, &y).unwrap() >= -1e-10 {
                continue;
            }
            accepted += 1;
            let g = inst.diagonal_subgradient(&x).unwrap();
            if g.dot(&y.sub(&x)) >= 0.0 {
                violations += 1;
            }
        }
        checked += accepted;
    }
    outcome(
        violations == 0 && checked == 20_000,
        format!("{checked} pairs with f(x,y) < -1e-10, {violations} violations"),
    )
}

fn desk_bench(variant: Variant) -> quasiep::BenchmarkReport {
    run_benchmark(&BenchConfig::new(vec![5, 10, 20], 20, SEED + 30, variant)).unwrap()
}

/// 6. NG2 desk-scale sweep.
fn table2(report: &quasiep::BenchmarkReport, secs: f64) -> Outcome {
    let ok = report
        .rows
        .iter()
        .all(|r| r.n_success as f64 >= 0.9 * r.n_prob as f64 && r.mean_error <= 1e-2);
    let rows: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("n={} {}/{} err={:.2e}", r.n, r.n_success, r.n_prob, r.mean_error))
        .collect();
    outcome(ok && secs <= 120.0, format!("{} in {secs:.2}s", rows.join(", ")))
}

/// 7. NG1 desk-scale sweep.
fn table1(report: &quasiep::BenchmarkReport) -> Outcome {
    let ok = report
        .rows
        .iter()
        .all(|r| r.n_success as f64 >= 0.85 * r.n_prob as f64);
    let rows: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("n={} {}/{} err={:.2e}", r.n, r.n_success, r.n_prob, r.mean_error))
        .collect();
    outcome(ok, rows.join(", "))
}

/// 8. Residual decreases to below 1e-3 on 10 NG2 runs.
fn error_decay() -> Outcome {
    let mut fails = 0;
    let mut detail = Vec::new();
    for inst in instances(5, 10, SEED + 40) {
        let rep = normal_subgradient_solve(&inst, inst.feasible_box(), &SolverConfig::new(Variant::Ng2)).unwrap();
        let first = rep.trace.first().and_then(|r| r.residual).unwrap();
        let last = rep.final_residual.unwrap();
        if !(last < 1e-3 && last < first) {
            fails += 1;
        }
        detail.push(format!("{first:.2e}->{last:.1e}"));
    }
    outcome(fails == 0, format!("{fails} failing runs [{}]", detail.join(" ")))
}

/// 9. Paramonotonicity checker examples and sampled PSD agreement.
fn paramonotone() -> Outcome {
    let i2 = Matrix::<f64>::identity(2);
    let z2 = v(&[0.0, 0.0]);
    let bx = BoxSet::cube(2, 1.0, 3.0).unwrap();
    let make = |a1: Matrix<f64>, b1: &[f64], c: &[f64]| {
        AffineFractionalInstance::new(i2.clone(), z2.clone(), a1, v(b1), v(c), 1.0, bx.clone()).unwrap()
    };
    let identity = check_paramonotone(&make(i2.clone(), &[0.0, 0.0], &[0.0, 0.0]), PARAMONOTONE_TOL).unwrap();
    let rank_one = check_paramonotone(&make(i2.clone(), &[1.0, 0.0], &[1.0, 0.0]), PARAMONOTONE_TOL).unwrap();
    let negative = check_paramonotone(&make(i2.scale(-1.0), &[0.0, 0.0], &[0.0, 0.0]), PARAMONOTONE_TOL).unwrap();
    let examples_ok = identity.verdict && rank_one.verdict && !negative.verdict;

    let mut rng = Xoshiro256StarStar::seed_from_u64(SEED + 50);
    let mut disagreements = 0;
    let mut psd_count = 0;
    for inst in instances(5, 20, SEED + 51) {
        let report = check_paramonotone(&inst, PARAMONOTONE_TOL).unwrap();
        let sym = compute_a_hat(&inst).symmetric_part().unwrap();
        let mut sampled_psd = true;
        for _ in 0..10_000 {
            let raw: Vec<f64> = (0..5).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let u = v(&raw);
            let u = u.scale(1.0 / u.norm());
            if u.dot(&sym.matvec(&u)) < -1e-8 {
                sampled_psd = false;
                break;
            }
        }
        let eig_psd = report.min_eigenvalue >= -report.tol;
        psd_count += eig_psd as usize;
        if sampled_psd != eig_psd {
            disagreements += 1;
        }
    }
    outcome(
        examples_ok && disagreements == 0,
        format!(
            "examples {}, {disagreements} disagreements on 20 instances ({psd_count} PSD)",
            if examples_ok { "ok" } else { "wrong" }
        ),
    )
}

/// 10. Equal seeds, equal sweeps (timing excluded).
fn reproducibility(first: &quasiep::BenchmarkReport) -> Outcome {
    let second = desk_bench(first.variant);
    let key = |r: &quasiep::BenchmarkReport| -> Vec<(usize, usize, u64)> {
        r.rows.iter().map(|row| (row.n, row.n_success, row.mean_error.to_bits())).collect()
    };
    outcome(key(first) == key(&second), format!("rows {:?}", key(first)))
}

fn main() {
    let started = Instant::now();
    let runs = audit_runs();
    let t = Instant::now();
    let ng2 = desk_bench(Variant::Ng2);
    let ng2_secs = t.elapsed().as_secs_f64();
    let ng1 = desk_bench(Variant::Ng1);

    let results = vec![
        ("AC-1 toy VI convergence", toy_vi_convergence()),
        ("AC-2 step-length audit", lemma4(&runs)),
        ("AC-3 Fejer-type audit", fejer(&runs)),
        ("AC-4 Dinkelbach vs grid", dinkelbach_vs_grid()),
        ("AC-5 GP-membership", gp_membership()),
        ("AC-6 NG2 desk sweep", table2(&ng2, ng2_secs)),
        ("AC-7 NG1 desk sweep", table1(&ng1)),
        ("AC-8 residual decay", error_decay()),
        ("AC-9 paramonotonicity", paramonotone()),
        ("AC-10 reproducibility", reproducibility(&ng2)),
    ];

    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    println!(
        "acceptance: {}/{} passed in {:.2}s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
