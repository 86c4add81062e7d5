//! Acceptance suite: one pass/fail line per criterion, non-zero exit on any failure.

use std::time::{Duration, Instant};

use acphase::check::CheckReport;
use acphase::dirac::{check_phase_commutation_spinhalf, DiracAlgebra};
use acphase::fields::{FieldConfig, LoopPath};
use acphase::grid::Grid;
use acphase::kemmer::{check_spin_structure, check_xi_commutators, kemmer_amplitude_exact, printed_betas, KemmerAlgebra, SpinOperators};
use acphase::phase::{
    spin_ratio_experiment, verify_ansatz_dirac, verify_ansatz_kemmer, verify_ansatz_proca, GridSpec, PhaseAnsatz, PhaseReport, Spin,
};
use acphase::proca::{check_projection_identities, check_spin_correspondence, interaction_transport_suite, kemmer_to_proca_exact, ProjectionOperators};
use acphase::scalar::exact;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn all(report: &CheckReport, filter: impl Fn(&str) -> bool) -> (usize, usize) {
    let picked: Vec<_> = report.checks.iter().filter(|c| filter(&c.name)).collect();
    (picked.iter().filter(|c| c.passed).count(), picked.len())
}

fn kemmer_ring() -> Outcome {
    let report = KemmerAlgebra::from_matrices(printed_betas()).check_ring();
    let (ok, n) = all(&report, |_| true);
    outcome(ok == 64 && n == 64, format!("{ok}/{n} triples exact"))
}

fn clifford() -> Outcome {
    let report = DiracAlgebra::build().check_clifford();
    let (ok_pairs, pairs) = all(&report, |n| n.starts_with("clifford"));
    let (ok_g5, g5) = all(&report, |n| n.starts_with("gamma5 anticommutes"));
    outcome(ok_pairs == 16 && pairs == 16 && ok_g5 == 4 && g5 == 4, format!("{ok_pairs}/{pairs} anticommutators, gamma5 {ok_g5}/{g5}"))
}

fn phase_operator_commutators() -> Outcome {
    let dirac = check_phase_commutation_spinhalf(&DiracAlgebra::build(), 1, 2);
    let alg = KemmerAlgebra::build().unwrap();
    let xi = check_xi_commutators(&alg, &SpinOperators::build(&alg));
    let (ok_d, n_d) = all(&dirac, |_| true);
    let (ok_k, n_k) = all(&xi, |n| n.starts_with("[xi3"));
    outcome(ok_d == 4 && n_d == 4 && ok_k == 4 && n_k == 4, format!("Dirac {ok_d}/{n_d}, Kemmer {ok_k}/{n_k}"))
}

fn bridge_identities() -> Outcome {
    let alg = KemmerAlgebra::build().unwrap();
    let spin = SpinOperators::build(&alg);
    let proj = ProjectionOperators::build(&alg).unwrap();
    let ids = check_projection_identities(&alg, &proj);
    let (ok_anti, anti) = all(&ids, |n| n.contains("= -U^"));
    let (ok_triple, triple) = all(&ids, |n| n.contains("eta^"));
    let corr = check_spin_correspondence(&alg, &spin);
    let structure = check_spin_structure(&alg, &spin);
    let b0xi = corr.find("b0 xi3 = xi3 b0 = diag(S3, 0, S3, 0)").is_some_and(|c| c.passed);
    let sigma = corr.find("Sigma3 = S~3").is_some_and(|c| c.passed);
    let printed = structure.find("xi3 (eps sum) = printed block form").is_some_and(|c| c.passed);
    outcome(
        ok_anti == 16 && anti == 16 && ok_triple == 64 && triple == 64 && b0xi && sigma && printed,
        format!("antisymmetry {ok_anti}/{anti}, U b b {ok_triple}/{triple}, b0 xi3 block {b0xi}, Sigma3 = S~3 {sigma}"),
    )
}

fn interaction_transport() -> Outcome {
    let alg = KemmerAlgebra::build().unwrap();
    let proj = ProjectionOperators::build(&alg).unwrap();
    let report = interaction_transport_suite(&alg, &proj, 20_240_917, 128);
    let (ok, n) = all(&report, |_| true);
    outcome(ok == n && n >= 100, format!("{ok}/{n} seeded exact samples"))
}

fn loop_phase() -> Outcome {
    let (mu, lambda, tol, accept): (f64, f64, f64, f64) = (0.5, 1.0, 1e-9, 1e-6);
    let field = FieldConfig::line_charge(lambda);
    let one = PhaseAnsatz::new(Spin::One, 1, mu, field.clone()).unwrap();
    let half = PhaseAnsatz::new(Spin::Half, 1, mu, field).unwrap();
    let enclosing = [
        LoopPath::circle([0.0, 0.0], 1.0, 64, 1).unwrap(),
        LoopPath::ellipse([0.3, -0.2], 2.0, 0.7, 48, 1).unwrap(),
        LoopPath::polygon(vec![[-1.0, -0.5], [2.0, -1.0], [1.5, 2.0], [-0.5, 1.0]]).unwrap(),
    ];
    let outside = [LoopPath::rectangle([1.0, 1.0], [2.0, 3.0]).unwrap(), LoopPath::circle([3.0, 0.0], 1.0, 32, 1).unwrap()];
    let mut worst: f64 = 0.0;
    for p in &enclosing {
        worst = worst.max((one.measured_loop_phase(p, tol).unwrap() - 1.0).abs());
        worst = worst.max((half.measured_loop_phase(p, tol).unwrap() - 0.5).abs());
    }
    for p in &outside {
        worst = worst.max(one.measured_loop_phase(p, tol).unwrap().abs());
        worst = worst.max(half.measured_loop_phase(p, tol).unwrap().abs());
    }
    let ratio = spin_ratio_experiment(mu, lambda, &enclosing[0], tol).unwrap();
    outcome(worst <= accept && (ratio - 2.0).abs() <= accept, format!("max phase error {worst:.1e}, ratio {ratio:.9}"))
}

fn residuals() -> Outcome {
    let dirac = DiracAlgebra::build();
    let kemmer = KemmerAlgebra::build().unwrap();
    let spin = SpinOperators::build(&kemmer);
    let proj = ProjectionOperators::build(&kemmer).unwrap();
    let moving = [1.25, 0.45, 0.6, 0.0];
    let rest = [1.0, 0.0, 0.0, 0.0];
    let line = (FieldConfig::line_charge(1.0), Grid::square([1.0, 0.3], 0.2, 7), [1.0, 0.3]);
    let uniform = (FieldConfig::uniform_e([0.0, 0.4, 0.0]), Grid::square([0.0, 0.0], 0.3, 7), [0.0, 0.0]);
    let mut good = Vec::new();
    let mut controls = Vec::new();
    let mut record = |label: String, r: PhaseReport<f64>, control: PhaseReport<f64>| {
        let orders: Vec<String> = r.residuals.iter().map(|x| format!("{:.2}", x.order)).collect();
        good.push((label.clone(), r.passed(), orders.join("/")));
        controls.push((label, !control.passed(), control.residuals[0].order));
    };
    for (name, (field, grid, base)) in [("line charge", &line), ("uniform E", &uniform)] {
        for s in [1, -1] {
            let half = PhaseAnsatz::new(Spin::Half, s, 0.5, field.clone()).unwrap().with_base(*base);
            let one = PhaseAnsatz::new(Spin::One, s, 0.5, field.clone()).unwrap().with_base(*base);
            let at = |momentum| GridSpec { grid: *grid, h: 0.01, momentum, mass: 1.0 };
            record(
                format!("Dirac {name} s={s}"),
                verify_ansatz_dirac(&dirac, &half, &at(moving)).unwrap(),
                verify_ansatz_dirac(&dirac, &half.clone().with_coupling_scale(0.9), &at(moving)).unwrap(),
            );
            record(
                format!("Kemmer {name} s={s}"),
                verify_ansatz_kemmer(&kemmer, &spin, &one, &at(moving)).unwrap(),
                verify_ansatz_kemmer(&kemmer, &spin, &one.clone().with_coupling_scale(0.9), &at(moving)).unwrap(),
            );
            record(
                format!("Proca {name} s={s}"),
                verify_ansatz_proca(&kemmer, &proj, &one, &at(rest)).unwrap(),
                verify_ansatz_proca(&kemmer, &proj, &one.clone().with_coupling_scale(0.9), &at(rest)).unwrap(),
            );
        }
    }
    let failed: Vec<String> = good.iter().filter(|g| !g.1).map(|g| format!("{} ({})", g.0, g.2)).collect();
    let leaky: Vec<String> = controls.iter().filter(|c| !c.1).map(|c| format!("{} control order {:.2}", c.0, c.2)).collect();
    let passed = failed.is_empty() && leaky.is_empty();
    let detail = if passed {
        let worst = controls.iter().map(|c| c.2.abs()).fold(0.0, f64::max);
        format!("{} verifications converge at order 2; detuned controls stall (|order| <= {worst:.2})", good.len())
    } else {
        format!("failed: {failed:?} {leaky:?}")
    };
    outcome(passed, detail)
}

fn eigencolumn_structure() -> Outcome {
    let alg = KemmerAlgebra::build().unwrap();
    let proj = ProjectionOperators::build(&alg).unwrap();
    let zero = exact(0, 0);
    let mut facts = Vec::new();
    for m in [1, 4, 9] {
        let mass = exact(m, 0);
        let p = [mass.clone(), zero.clone(), zero.clone(), zero.clone()];
        for s in [1i64, -1] {
            let u = kemmer_amplitude_exact(&alg, &p, &mass, s as i32).unwrap();
            let st = kemmer_to_proca_exact(&u, &mass, &proj).unwrap();
            let psi = &st.psi;
            facts.push(psi[0] == zero && psi[3] == zero);
            facts.push(psi[1] == exact(0, -s) * psi[2].clone() && psi[1] != zero);
            facts.push(st.g[1][2] == zero && st.g[2][3] == zero);
        }
    }
    let ok = facts.iter().filter(|f| **f).count();
    outcome(ok == facts.len(), format!("{ok}/{} structural facts exact over m in {{1, 4, 9}}, s = +1, -1", facts.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Kemmer ring relation on the printed beta matrices", Duration::from_secs(1), kemmer_ring),
        ("Clifford anticommutators and gamma5", Duration::from_secs(1), clifford),
        ("phase-operator commutators (2+1 restriction)", Duration::from_secs(1), phase_operator_commutators),
        ("Kemmer-Proca bridge identities", Duration::from_secs(1), bridge_identities),
        ("interaction transport on seeded exact samples", Duration::from_secs(5), interaction_transport),
        ("loop phases, null loops and spin ratio", Duration::from_secs(10), loop_phase),
        ("phase-ansatz residual convergence and detuned controls", Duration::from_secs(120), residuals),
        ("eigencolumn structure of constructed states", Duration::from_secs(1), eigencolumn_structure),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| outcome(false, "panicked"));
        let elapsed = start.elapsed();
        let in_budget = elapsed <= *budget;
        let passed = result.passed && in_budget;
        failures += usize::from(!passed);
        let timing = if in_budget { String::new() } else { format!(" over budget {budget:?}") };
        println!(
            "criterion {} [{}] {name}: {} ({:.2} s{timing})",
            k + 1,
            if passed { "pass" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
