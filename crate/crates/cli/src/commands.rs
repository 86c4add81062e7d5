//! The `verify-algebra` and `verify-phase` suites.

use acphase::check::CheckReport;
use acphase::dirac::{check_phase_commutation_spinhalf, check_phase_operator_identity, DiracAlgebra};
use acphase::kemmer::{
    check_normalization_pinned, check_operator_identity_one, check_spin_structure, check_xi_commutators, printed_betas, KemmerAlgebra,
    SpinOperators,
};
use acphase::phase::{
    check_operator_consistency, spin_ratio_experiment, verify_ansatz_dirac, verify_ansatz_kemmer, verify_ansatz_proca, PhaseAnsatz, PhaseReport,
    Spin, ORDER_WINDOW,
};
use acphase::proca::{check_projection_identities, check_spin_correspondence, interaction_transport_suite, ComponentLayout, ProjectionOperators};
use acphase::scalar::exact;

use crate::report::{Record, RunReport, Status, Table};
use crate::scenario::{Scenario, Verification};

/// Command-line overrides shared by the suites.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub grid_h: Option<f64>,
    /// Test hook: perturbs one entry of a beta matrix before the suites run.
    pub perturb_beta: bool,
}

pub const DEFAULT_ALGEBRA_SEED: u64 = 20_240_917;
pub const TRANSPORT_SAMPLES: usize = 128;

/// Every exact identity suite on the Dirac and Kemmer algebras.
pub fn verify_algebra(opts: &RunOptions) -> RunReport {
    let mut report = RunReport::new("verify-algebra");
    let seed = opts.seed.unwrap_or(DEFAULT_ALGEBRA_SEED);
    report.param("seed", seed);
    report.param("transport_samples", TRANSPORT_SAMPLES);
    report.param("perturb_beta", opts.perturb_beta);

    let dirac = DiracAlgebra::build();
    report.push_checks("clifford", &dirac.check_clifford());
    report.push_checks("spin-1/2", &check_phase_commutation_spinhalf(&dirac, 1, 2));
    report.push_checks("spin-1/2", &check_phase_operator_identity(&dirac));

    let mut betas = printed_betas();
    if opts.perturb_beta {
        betas[2][(3, 8)] = exact(0, 0);
    }
    let kemmer = KemmerAlgebra::from_matrices(betas);
    report.push_checks("ring", &kemmer.check_ring());
    let spin = SpinOperators::build(&kemmer);
    report.push_checks("xi", &check_xi_commutators(&kemmer, &spin));
    report.push_checks("identity", &check_operator_identity_one(&kemmer, &spin));
    report.push_checks("identity", &check_normalization_pinned(&kemmer));
    report.push_checks("spin", &check_spin_structure(&kemmer, &spin));

    let unchecked = ProjectionOperators::build_unchecked(&kemmer);
    report.push_checks("projection", &check_projection_identities(&kemmer, &unchecked));
    report.push_checks("bridge", &check_spin_correspondence(&kemmer, &spin));
    match ProjectionOperators::build(&kemmer) {
        Ok(proj) => {
            let transport = interaction_transport_suite(&kemmer, &proj, seed, TRANSPORT_SAMPLES);
            report.push_checks("transport", &transport);
            match ComponentLayout::derive(&proj) {
                Ok(layout) => report.tables.push(Table {
                    name: "component layout".into(),
                    columns: ["component", "slot", "coefficient", "mass power"].map(String::from).to_vec(),
                    rows: layout.rows().into_iter().map(|r| r.to_vec()).collect(),
                }),
                Err(e) => report.push(Record::new("bridge", "component layout", Status::Fail).detail(e.to_string())),
            }
        }
        Err(e) => {
            report.push(Record::new("transport", "interaction transport", Status::Skipped).detail(format!("projection operators unavailable: {e}")))
        }
    }
    match check_operator_consistency(&dirac, &kemmer, &spin) {
        Ok(c) => report.push_checks("operators", &c),
        Err(e) => report.push(Record::new("operators", "exponent operators on eigenstates", Status::Fail).detail(e.to_string())),
    }
    report
}

fn push_phase_report(out: &mut RunReport, group: &str, report: &PhaseReport<f64>) {
    let tol = (ORDER_WINDOW.1 - ORDER_WINDOW.0) / 2.0;
    for r in &report.residuals {
        out.push(
            Record::new(group, format!("{} convergence order", r.equation), Status::from_bool(r.passed))
                .measured(r.order, 2.0, tol)
                .detail(format!("h={:e} r(h)={:.3e} r(h/2)={:.3e} scale={:.3e}", r.h, r.coarse, r.fine, r.scale)),
        );
    }
    out.push_checks(group, &report.checks);
}

fn push_control(out: &mut RunReport, group: &str, label: &str, result: acphase::Result<PhaseReport<f64>>) {
    let record = match result {
        Ok(r) => {
            let order = r.residuals.first().map_or(f64::NAN, |x| x.order);
            Record::new(group, format!("{label} is rejected"), Status::from_bool(!r.passed()))
                .measured(order, 0.0, 0.5)
                .detail("negative control: residual must not converge")
        }
        Err(e) => Record::new(group, format!("{label} is rejected"), Status::Fail).detail(e.to_string()),
    };
    out.push(record);
}

/// Phase prediction, loop measurement, residual verifications and controls for one scenario.
pub fn verify_phase(scenario: &Scenario, opts: &RunOptions) -> RunReport {
    let mut report = RunReport::new("verify-phase");
    let qtol = opts.tol.unwrap_or(scenario.quadrature_tol);
    let seed = opts.seed.unwrap_or(scenario.seed);
    let spec = scenario.grid_spec(opts.grid_h);
    report.param("scenario", &scenario.name);
    report.param("spin", scenario.spin);
    report.param("s", scenario.s);
    report.param("mu", scenario.mu);
    report.param("lambda", scenario.line_density());
    report.param("quadrature_tol", qtol);
    report.param("phase_tol", scenario.phase_tol);
    report.param("grid_h", spec.h);
    report.param("seed", seed);

    let field = scenario.field_config();
    let ansatz = match PhaseAnsatz::new(scenario.spin, scenario.s, scenario.mu, field.clone()) {
        Ok(a) => a.with_base(scenario.grid.center),
        Err(e) => {
            report.push(Record::new("scenario", "phase ansatz", Status::Fail).detail(e.to_string()));
            return report;
        }
    };

    let path = scenario.loop_path();
    let loop_phase = path.as_ref().map_err(Clone::clone).and_then(|p| ansatz.loop_phase(p, qtol, scenario.phase_tol));
    match &loop_phase {
        Ok(lp) => report.push(
            Record::new("loop", "measured loop phase equals predicted phase", Status::from_bool(lp.passed))
                .measured(lp.measured, lp.predicted, lp.tolerance)
                .detail(format!("winding {}", lp.winding)),
        ),
        Err(e) => report.push(Record::new("loop", "measured loop phase equals predicted phase", Status::Fail).detail(e.to_string())),
    }
    if let (Ok(p), Ok(lp)) = (&path, &loop_phase) {
        if scenario.s != 0 {
            let flipped = PhaseAnsatz { s: -scenario.s, ..ansatz.clone() }.measured_loop_phase(p, qtol);
            let rec = Record::new("loop", "phase flips sign with s", Status::Fail);
            report.push(match flipped {
                Ok(f) => Record { status: Status::from_bool(f == -lp.measured), ..rec }.measured(f, -lp.measured, 0.0),
                Err(e) => rec.detail(e.to_string()),
            });
        }
        if scenario.verify.contains(&Verification::Ratio) {
            let name = "spin-1 to spin-1/2 phase ratio";
            let rec = if scenario.line_density() == 0.0 || lp.winding == 0 {
                Record::new("loop", name, Status::Skipped).detail("ratio undefined: no enclosed charge")
            } else {
                match spin_ratio_experiment(scenario.mu, scenario.line_density(), p, qtol) {
                    Ok(r) => Record::new("loop", name, Status::from_bool((r - 2.0).abs() <= scenario.phase_tol)).measured(r, 2.0, scenario.phase_tol),
                    Err(e) => Record::new("loop", name, Status::Fail).detail(e.to_string()),
                }
            };
            report.push(rec);
        }
    }

    let dirac = DiracAlgebra::build();
    let kemmer = match KemmerAlgebra::build() {
        Ok(k) => k,
        Err(e) => {
            report.push(Record::new("kemmer", "algebra construction", Status::Fail).detail(e.to_string()));
            return report;
        }
    };
    let spin_ops = SpinOperators::build(&kemmer);
    let controls = scenario.verify.contains(&Verification::Controls);
    let detuned = |scale: f64| ansatz.clone().with_coupling_scale(scale);
    let wanted = |v: Verification, spin: Spin| scenario.verify.contains(&v) && scenario.spin == spin;

    if scenario.verify.contains(&Verification::Dirac) && scenario.spin != Spin::Half {
        report.push(Record::new("dirac", "Dirac-Pauli verification", Status::Skipped).detail("scenario is spin 1"));
    }
    if wanted(Verification::Dirac, Spin::Half) {
        match verify_ansatz_dirac(&dirac, &ansatz, &spec) {
            Ok(r) => {
                push_phase_report(&mut report, "dirac", &r);
                if controls {
                    push_control(&mut report, "dirac", "coupling detuned to 0.9", verify_ansatz_dirac(&dirac, &detuned(0.9), &spec));
                    push_control(&mut report, "dirac", "reversed phase sign", verify_ansatz_dirac(&dirac, &detuned(-1.0), &spec));
                }
            }
            Err(e) => report.push(Record::new("dirac", "precondition", Status::Fail).detail(e.to_string())),
        }
    }
    for v in [Verification::Kemmer, Verification::Proca] {
        if scenario.verify.contains(&v) && scenario.spin != Spin::One {
            report.push(Record::new(if v == Verification::Kemmer { "kemmer" } else { "proca" }, "verification", Status::Skipped).detail("scenario is spin 1/2"));
        }
    }
    if wanted(Verification::Kemmer, Spin::One) {
        match verify_ansatz_kemmer(&kemmer, &spin_ops, &ansatz, &spec) {
            Ok(r) => {
                push_phase_report(&mut report, "kemmer", &r);
                if controls {
                    push_control(&mut report, "kemmer", "coupling detuned to 0.9", verify_ansatz_kemmer(&kemmer, &spin_ops, &detuned(0.9), &spec));
                    push_control(&mut report, "kemmer", "reversed phase sign", verify_ansatz_kemmer(&kemmer, &spin_ops, &detuned(-1.0), &spec));
                }
            }
            Err(e) => report.push(Record::new("kemmer", "precondition", Status::Fail).detail(e.to_string())),
        }
    }
    if wanted(Verification::Proca, Spin::One) {
        if scenario.grid.momentum != [0.0, 0.0] {
            report.push(Record::new("proca", "Proca verification", Status::Skipped).detail("Proca verification runs in the rest frame only"));
        } else {
            match ProjectionOperators::build(&kemmer).and_then(|proj| {
                let main = verify_ansatz_proca(&kemmer, &proj, &ansatz, &spec)?;
                let control = controls.then(|| verify_ansatz_proca(&kemmer, &proj, &detuned(0.9), &spec));
                Ok((main, control))
            }) {
                Ok((r, control)) => {
                    push_phase_report(&mut report, "proca", &r);
                    if let Some(c) = control {
                        push_control(&mut report, "proca", "coupling detuned to 0.9", c);
                    }
                }
                Err(e) => report.push(Record::new("proca", "precondition", Status::Fail).detail(e.to_string())),
            }
        }
    }

    if scenario.spin == Spin::One && scenario.transport_samples > 0 {
        match ProjectionOperators::build(&kemmer) {
            Ok(proj) => {
                let t = interaction_transport_suite(&kemmer, &proj, seed, scenario.transport_samples);
                report.push(
                    Record::new("transport", "interaction transport on seeded exact samples", Status::from_bool(t.all_passed()))
                        .detail(format!("{}/{} exact", t.passed_count(), t.len())),
                );
            }
            Err(e) => report.push(Record::new("transport", "interaction transport", Status::Fail).detail(e.to_string())),
        }
    }
    match check_operator_consistency(&dirac, &kemmer, &spin_ops) {
        Ok(c) => {
            let mut summary = CheckReport::new();
            summary.push("exponent operators act as their eigenvalues", c.all_passed(), format!("{}/{} exact", c.passed_count(), c.len()));
            report.push_checks("operators", &summary);
        }
        Err(e) => report.push(Record::new("operators", "exponent operators act as their eigenvalues", Status::Fail).detail(e.to_string())),
    }
    report
}
