use acphase::dirac::DiracAlgebra;
use acphase::fields::FieldConfig;
use acphase::grid::Grid;
use acphase::kemmer::{KemmerAlgebra, SpinOperators};
use acphase::phase::{verify_ansatz_dirac, verify_ansatz_kemmer, verify_ansatz_proca, GridSpec, PhaseAnsatz, Spin};
use acphase::proca::ProjectionOperators;
use acphase::Error;

fn line_charge_spec(momentum: [f64; 4], mass: f64) -> GridSpec<f64> {
    GridSpec { grid: Grid::square([1.0, 0.3], 0.2, 7), h: 0.01, momentum, mass }
}

fn moving() -> [f64; 4] {
    // on shell for m = 1: 1.25^2 - 0.45^2 - 0.6^2 = 1
    [1.25, 0.45, 0.6, 0.0]
}

#[test]
fn dirac_ansatz_converges_and_detuned_fails() {
    let alg = DiracAlgebra::build();
    let field = FieldConfig::line_charge(1.0);
    for s in [1, -1] {
        let a = PhaseAnsatz::new(Spin::Half, s, 0.5, field.clone()).unwrap().with_base([1.0, 0.3]);
        let r = verify_ansatz_dirac(&alg, &a, &line_charge_spec(moving(), 1.0)).unwrap();
        println!("{r}");
        assert!(r.passed(), "{r}");
        let detuned = a.clone().with_coupling_scale(0.9);
        let r = verify_ansatz_dirac(&alg, &detuned, &line_charge_spec(moving(), 1.0)).unwrap();
        println!("{r}");
        assert!(!r.passed());
        let wrong = a.with_coupling_scale(-1.0);
        assert!(!verify_ansatz_dirac(&alg, &wrong, &line_charge_spec(moving(), 1.0)).unwrap().passed());
    }
}

#[test]
fn kemmer_ansatz_converges_and_detuned_fails() {
    let alg = KemmerAlgebra::build().unwrap();
    let ops = SpinOperators::build(&alg);
    let field = FieldConfig::line_charge(1.0);
    for p in [[1.0, 0.0, 0.0, 0.0], moving()] {
        for s in [1, -1] {
            let a = PhaseAnsatz::new(Spin::One, s, 0.5, field.clone()).unwrap().with_base([1.0, 0.3]);
            let r = verify_ansatz_kemmer(&alg, &ops, &a, &line_charge_spec(p, 1.0)).unwrap();
            println!("{r}");
            assert!(r.passed(), "{r}");
            let r = verify_ansatz_kemmer(&alg, &ops, &a.with_coupling_scale(0.9), &line_charge_spec(p, 1.0)).unwrap();
            assert!(!r.passed());
        }
    }
}

#[test]
fn proca_ansatz_at_rest() {
    let alg = KemmerAlgebra::build().unwrap();
    let proj = ProjectionOperators::build(&alg).unwrap();
    let field = FieldConfig::line_charge(1.0);
    for s in [1, -1] {
        let a = PhaseAnsatz::new(Spin::One, s, 0.5, field.clone()).unwrap().with_base([1.0, 0.3]);
        let r = verify_ansatz_proca(&alg, &proj, &a, &line_charge_spec([1.0, 0.0, 0.0, 0.0], 1.0)).unwrap();
        println!("{r}");
        assert!(r.passed(), "{r}");
        let r = verify_ansatz_proca(&alg, &proj, &a.clone().with_coupling_scale(0.9), &line_charge_spec([1.0, 0.0, 0.0, 0.0], 1.0)).unwrap();
        println!("{r}");
        assert!(!r.passed());
        assert!(matches!(
            verify_ansatz_proca(&alg, &proj, &a, &line_charge_spec(moving(), 1.0)),
            Err(Error::UnsupportedState(_))
        ));
    }
}

#[test]
fn uniform_field_and_non_ac_rejection() {
    let alg = KemmerAlgebra::build().unwrap();
    let ops = SpinOperators::build(&alg);
    let spec = GridSpec { grid: Grid::square([0.0, 0.0], 0.3, 7), h: 0.01, momentum: moving(), mass: 1.0 };
    let a = PhaseAnsatz::new(Spin::One, 1, 0.5, FieldConfig::uniform_e([0.4, -0.2, 0.0])).unwrap().with_base([0.0, 0.0]);
    let r = verify_ansatz_kemmer(&alg, &ops, &a, &spec).unwrap();
    println!("{r}");
    assert!(r.passed(), "{r}");
    let b = PhaseAnsatz::new(Spin::One, 1, 0.5, FieldConfig::uniform([0.4, 0.0, 0.0], [0.0, 0.0, 0.3])).unwrap();
    assert!(matches!(verify_ansatz_kemmer(&alg, &ops, &b, &spec), Err(Error::NotAcConfiguration(_))));
}
