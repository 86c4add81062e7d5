//! Spin-1/2 layer: the Dirac algebra, the phase operator `Gamma gamma^0` and
//! the Dirac-Pauli residual.
//!
//! The representation is the standard (Dirac) one with `gamma^0 = diag(1, 1, -1, -1)`.
//! Every statement checked here is representation independent.

use num_complex::Complex;
use num_traits::Zero;

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::fields::{lower_tensor, FieldConfig, METRIC};
use crate::grid::{first_order_residual_at, max_abs, max_over_interior, Grid, Point, Spinor};
use crate::linalg::{to_numeric, Matrix};
use crate::scalar::{exact, ExactScalar, Real, Scalar};

pub type ExactMatrix = Matrix<ExactScalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct DiracAlgebra {
    gamma: [ExactMatrix; 4],
}

impl Default for DiracAlgebra {
    fn default() -> Self {
        Self::build()
    }
}

impl DiracAlgebra {
    /// Standard representation. Block form `gamma^0 = [[1, 0], [0, -1]]`,
    /// `gamma^k = [[0, sigma_k], [-sigma_k, 0]]`.
    pub fn build() -> Self {
        let z = (0, 0);
        let g0 = ExactMatrix::from_int_pairs(
            4,
            4,
            &[(1, 0), z, z, z, z, (1, 0), z, z, z, z, (-1, 0), z, z, z, z, (-1, 0)],
        )
        .expect("gamma0");
        let pauli: [[(i64, i64); 4]; 3] = [
            [z, (1, 0), (1, 0), z],
            [z, (0, -1), (0, 1), z],
            [(1, 0), z, z, (-1, 0)],
        ];
        let gk = |p: &[(i64, i64); 4]| {
            let neg = |(a, b): (i64, i64)| (-a, -b);
            let entries = [
                z, z, p[0], p[1],
                z, z, p[2], p[3],
                neg(p[0]), neg(p[1]), z, z,
                neg(p[2]), neg(p[3]), z, z,
            ];
            ExactMatrix::from_int_pairs(4, 4, &entries).expect("gamma k")
        };
        Self { gamma: [g0, gk(&pauli[0]), gk(&pauli[1]), gk(&pauli[2])] }
    }

    /// Wraps arbitrary 4x4 matrices without checking the Clifford relations.
    pub fn from_matrices(gamma: [ExactMatrix; 4]) -> Self {
        Self { gamma }
    }

    pub fn gamma(&self, mu: usize) -> &ExactMatrix {
        &self.gamma[mu]
    }

    pub fn gammas(&self) -> &[ExactMatrix; 4] {
        &self.gamma
    }

    /// `gamma_5 = i gamma^0 gamma^1 gamma^2 gamma^3`.
    pub fn gamma5(&self) -> ExactMatrix {
        let g = &self.gamma;
        (&(&(&g[0] * &g[1]) * &g[2]) * &g[3]).scale(&exact(0, 1))
    }

    /// `sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu]`.
    pub fn sigma(&self, mu: usize, nu: usize) -> ExactMatrix {
        let c = self.gamma[mu].commutator(&self.gamma[nu]).expect("square");
        c.scale(&(ExactScalar::i() * ExactScalar::from_frac(1, 2)))
    }

    /// `sigma_{mu nu}` with both indices lowered.
    pub fn sigma_lower(&self, mu: usize, nu: usize) -> ExactMatrix {
        self.sigma(mu, nu).scale(&ExactScalar::from_i64((METRIC[mu] * METRIC[nu]) as i64))
    }

    /// `gamma_5 gamma^3`, whose eigenvalues label the spin along the 3-axis.
    pub fn spin_operator(&self) -> ExactMatrix {
        &self.gamma5() * &self.gamma[3]
    }

    /// `Gamma gamma^0` for `Gamma = gamma^a gamma^b`.
    pub fn phase_operator(&self, a: usize, b: usize) -> PhaseOperatorSpinHalf {
        let op = &(&self.gamma[a] * &self.gamma[b]) * &self.gamma[0];
        let normal = (1..4).find(|k| *k != a && *k != b).unwrap_or(3);
        PhaseOperatorSpinHalf { gamma_operator: op, plane: (a, b), normal }
    }

    /// Clifford relations for all 16 ordered pairs, `gamma_5` anticommutation
    /// with each `gamma^mu`, and hermiticity of the representation.
    pub fn check_clifford(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let id = ExactMatrix::identity(4);
        for mu in 0..4 {
            for nu in 0..4 {
                let lhs = self.gamma[mu].anticommutator(&self.gamma[nu]).expect("square");
                let eta = if mu == nu { 2 * METRIC[mu] as i64 } else { 0 };
                let ok = lhs == id.scale(&ExactScalar::from_i64(eta));
                report.push(format!("clifford {{g{mu}, g{nu}}} = 2 eta^{mu}{nu}"), ok, "exact");
            }
        }
        let g5 = self.gamma5();
        for mu in 0..4 {
            let ok = g5.anticommutator(&self.gamma[mu]).expect("square").is_zero();
            report.push(format!("gamma5 anticommutes with g{mu}"), ok, "exact");
        }
        report.push("gamma5^2 = 1", &g5 * &g5 == id, "exact");
        for mu in 0..4 {
            let adj = self.gamma[mu].adjoint();
            let expected = if mu == 0 { self.gamma[0].clone() } else { -&self.gamma[mu] };
            report.push(format!("hermiticity of g{mu}"), adj == expected, "exact");
        }
        report
    }
}

/// The operator `Gamma gamma^0` that multiplies the line integral in the spin-1/2 phase.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseOperatorSpinHalf {
    pub gamma_operator: ExactMatrix,
    pub plane: (usize, usize),
    /// The spatial axis whose gamma matrix is absent from `Gamma`.
    pub normal: usize,
}

impl PhaseOperatorSpinHalf {
    pub fn squares_to_minus_identity(&self) -> bool {
        &self.gamma_operator * &self.gamma_operator == -&ExactMatrix::identity(4)
    }
}

/// Commutators `[gamma^nu, Gamma gamma^0]` for `nu = 0..3`, with `Gamma = gamma^a gamma^b`.
///
/// The commutator must vanish for `nu` in `{0, a, b}` and survive for the
/// remaining spatial index, which is the coordinate the wave function may not depend on.
pub fn check_phase_commutation_spinhalf(alg: &DiracAlgebra, a: usize, b: usize) -> CheckReport {
    let op = alg.phase_operator(a, b);
    let mut report = CheckReport::new();
    for nu in 0..4 {
        let c = alg.gamma(nu).commutator(&op.gamma_operator).expect("square");
        let should_vanish = nu != op.normal;
        let ok = c.is_zero() == should_vanish;
        let what = if should_vanish { "= 0" } else { "!= 0" };
        report.push(format!("[g{nu}, g{a} g{b} g0] {what}"), ok, format!("{} nonzero entries", c.nonzero_count()));
    }
    report
}

/// Exact identities tying the phase operator to `gamma_5`.
///
/// With `gamma_5 = i g0 g1 g2 g3` one finds `i Gamma gamma^0 = gamma_5 gamma_3`
/// (lower index, `gamma_3 = -gamma^3`).
pub fn check_phase_operator_identity(alg: &DiracAlgebra) -> CheckReport {
    let op = alg.phase_operator(1, 2);
    let lhs = op.gamma_operator.scale(&exact(0, 1));
    let g5_g3_lower = -&alg.spin_operator();
    let mut report = CheckReport::new();
    report.push("(Gamma g0)^2 = -1", op.squares_to_minus_identity(), "exact");
    report.push("i Gamma g0 = gamma5 gamma_3", lhs == g5_g3_lower, "lower-index gamma_3 = -gamma^3");
    let spin = alg.spin_operator();
    report.push("(gamma5 g3)^2 = 1", &spin * &spin == ExactMatrix::identity(4), "exact");
    report
}

/// `(A'_1, A'_2) = (-E_2, E_1)`.
pub fn effective_potential_spinhalf<F: Real>(e: [F; 2]) -> [F; 2] {
    [-e[1], e[0]]
}

pub(crate) fn validate_spin(s: i32) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::InvalidSpin { s, context: "plane wave (expected +1 or -1)" })
    }
}

pub(crate) fn validate_momentum<F: Real>(p: &[F; 4], mass: F) -> Result<()> {
    if !(mass > F::zero()) {
        return Err(Error::NonPositiveMass);
    }
    if p[3] != F::zero() {
        return Err(Error::MomentumAlongAxis(p[3].as_f64()));
    }
    let shell = p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - mass * mass;
    let scale = (p[0] * p[0]).max(mass * mass);
    if shell.abs() > F::lit(1e-12) * scale || p[0] <= F::zero() {
        return Err(Error::OffShell(shell.as_f64()));
    }
    Ok(())
}

/// Column of `m` with the largest magnitude; deterministic on ties.
pub(crate) fn dominant_column<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let mut best = 0;
    let mut best_mag: f64 = -1.0;
    for c in 0..m.cols() {
        let mag: f64 = (0..m.rows()).map(|r| m[(r, c)].magnitude()).sum();
        if mag > best_mag + 1e-12 * best_mag.abs() {
            best = c;
            best_mag = mag;
        }
    }
    (0..m.rows()).map(|r| m[(r, best)].clone()).collect()
}

/// `gamma^mu p_mu` for contravariant `p`.
fn slash<T: Scalar>(gammas: &[Matrix<T>; 4], p: &[T; 4]) -> Matrix<T> {
    let n = gammas[0].rows();
    (0..4).fold(Matrix::zeros(n, n), |acc, mu| {
        let lowered = if METRIC[mu] > 0 { p[mu].clone() } else { -p[mu].clone() };
        &acc + &gammas[mu].scale(&lowered)
    })
}

/// Positive-energy spinor amplitude with `gamma_5 gamma^3 u = s u`:
/// `u = (1 + s gamma_5 gamma^3)/2 (p-slash + m) w` for the dominant column `w`.
pub fn dirac_amplitude<T: Scalar>(gammas: &[Matrix<T>; 4], spin_op: &Matrix<T>, p: &[T; 4], mass: &T, s: i32) -> Vec<T> {
    let id = Matrix::identity(4);
    let energy = &slash(gammas, p) + &id.scale(mass);
    let proj = (&id + &spin_op.scale(&T::from_i64(s as i64))).scale(&T::from_frac(1, 2));
    dominant_column(&(&proj * &energy))
}

/// Exact amplitude for rational momenta.
pub fn dirac_amplitude_exact(alg: &DiracAlgebra, p: &[ExactScalar; 4], mass: &ExactScalar, s: i32) -> Result<Vec<ExactScalar>> {
    validate_spin(s)?;
    if !p[3].is_zero() {
        return Err(Error::MomentumAlongAxis(p[3].to_complex64().re));
    }
    let shell = p[0].clone() * p[0].clone() - p[1].clone() * p[1].clone() - p[2].clone() * p[2].clone() - mass.clone() * mass.clone();
    if !shell.is_zero() {
        return Err(Error::OffShell(shell.to_complex64().re));
    }
    Ok(dirac_amplitude(alg.gammas(), &alg.spin_operator(), p, mass, s))
}

/// Free plane wave `u(p, s) exp(-i p.x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracPlaneWave<F> {
    pub momentum: [F; 4],
    pub mass: F,
    pub spin: i32,
    pub amplitude: Spinor<F>,
}

/// Builds the free plane wave for an on-shell momentum in the 1-2 plane.
pub fn free_plane_wave_dirac<F: Real>(alg: &DiracAlgebra, p: [F; 4], mass: F, s: i32) -> Result<DiracPlaneWave<F>> {
    validate_spin(s)?;
    validate_momentum(&p, mass)?;
    let gammas = alg.gammas().clone().map(|g| to_numeric::<F>(&g));
    let spin_op = to_numeric::<F>(&alg.spin_operator());
    let pc = p.map(|x| Complex::new(x, F::zero()));
    let mut amplitude = dirac_amplitude(&gammas, &spin_op, &pc, &Complex::new(mass, F::zero()), s);
    let norm = max_abs(&amplitude);
    for a in amplitude.iter_mut() {
        *a = *a / norm;
    }
    Ok(DiracPlaneWave { momentum: p, mass, spin: s, amplitude })
}

impl<F: Real> DiracPlaneWave<F> {
    pub fn phase_at(&self, x: Point<F>) -> Complex<F> {
        let p = &self.momentum;
        let px = p[0] * x[0] - p[1] * x[1] - p[2] * x[2] - p[3] * x[3];
        Complex::new(F::zero(), -px).exp()
    }

    pub fn eval(&self, x: Point<F>) -> Spinor<F> {
        let ph = self.phase_at(x);
        self.amplitude.iter().map(|a| a * ph).collect()
    }

    /// Max-norm of `(gamma^mu p_mu - m) u`, i.e. the free equation with exact derivatives.
    pub fn analytic_residual(&self, alg: &DiracAlgebra) -> F {
        let gammas = alg.gammas().clone().map(|g| to_numeric::<F>(&g));
        let pc = self.momentum.map(|x| Complex::new(x, F::zero()));
        let op = &slash(&gammas, &pc) - &Matrix::identity(4).scale(&Complex::new(self.mass, F::zero()));
        max_abs(&op.apply(&self.amplitude).expect("4-spinor"))
    }
}

/// `(1/2) mu sigma_{ab} F^{ab}` at a point.
pub fn pauli_term<F: Real>(alg: &DiracAlgebra, field: &FieldConfig<F>, mu: F, x: Point<F>) -> Result<Matrix<Complex<F>>> {
    let f = field.tensor_at([x[1], x[2], x[3]])?;
    let mut out = Matrix::zeros(4, 4);
    for a in 0..4 {
        for b in 0..4 {
            if a == b || f[a][b] == F::zero() {
                continue;
            }
            let coeff = Complex::new(mu * f[a][b] / F::lit(2.0), F::zero());
            out = &out + &to_numeric::<F>(&alg.sigma_lower(a, b)).scale(&coeff);
        }
    }
    Ok(out)
}

/// Max-norm finite-difference residual of
/// `(i gamma^mu d_mu + (1/2) mu sigma_{ab} F^{ab} - m) psi` over interior grid nodes.
pub fn dirac_pauli_residual<F: Real>(
    alg: &DiracAlgebra,
    psi: &(dyn Fn(Point<F>) -> Spinor<F> + Sync),
    field: &FieldConfig<F>,
    mu: F,
    mass: F,
    grid: &Grid<F>,
    h: F,
) -> Result<F> {
    grid.validate(field, h)?;
    let gammas = alg.gammas().clone().map(|g| to_numeric::<F>(&g));
    max_over_interior(grid, |x| {
        let v = pauli_term(alg, field, mu, x)?;
        Ok(max_abs(&first_order_residual_at(&gammas, &v, mass, psi, x, h)))
    })
}

/// Max-norm of the interaction term applied to `psi` over the grid.
pub fn pauli_scale<F: Real>(
    alg: &DiracAlgebra,
    psi: &(dyn Fn(Point<F>) -> Spinor<F> + Sync),
    field: &FieldConfig<F>,
    mu: F,
    grid: &Grid<F>,
) -> Result<F> {
    max_over_interior(grid, |x| {
        let v = pauli_term(alg, field, mu, x)?;
        Ok(max_abs(&v.apply(&psi(x)).expect("4-spinor")))
    })
}

/// `F_{mu nu}` (both lowered) at a point, as a convenience for callers that
/// assemble interaction terms by hand.
pub fn lowered_tensor_at<F: Real>(field: &FieldConfig<F>, x: Point<F>) -> Result<[[F; 4]; 4]> {
    Ok(lower_tensor(&field.tensor_at([x[1], x[2], x[3]])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact_frac;

    #[test]
    fn squares_of_gammas() {
        let alg = DiracAlgebra::build();
        let id = ExactMatrix::identity(4);
        assert_eq!(alg.gamma(0) * alg.gamma(0), id);
        assert_eq!(alg.gamma(1) * alg.gamma(1), -&id);
    }

    #[test]
    fn clifford_suite_passes() {
        let report = DiracAlgebra::build().check_clifford();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.len(), 16 + 4 + 1 + 4);
    }

    #[test]
    fn sigma_antisymmetry_and_commutation() {
        let alg = DiracAlgebra::build();
        assert!(alg.sigma(0, 0).is_zero());
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(alg.sigma(mu, nu), -&alg.sigma(nu, mu));
            }
        }
        assert!(alg.sigma(1, 2).commutator(&alg.spin_operator()).unwrap().is_zero());
        // boosts along 1 preserve the spin label
        assert!(alg.sigma(0, 1).commutator(&alg.spin_operator()).unwrap().is_zero());
    }

    #[test]
    fn phase_commutators_select_the_normal_axis() {
        let alg = DiracAlgebra::build();
        let r = check_phase_commutation_spinhalf(&alg, 1, 2);
        assert!(r.all_passed(), "{r}");
        let c3 = alg.gamma(3).commutator(&alg.phase_operator(1, 2).gamma_operator).unwrap();
        assert!(!c3.is_zero());
        // relabeled: Gamma = g1 g3 fails for nu = 2 instead
        let op13 = alg.phase_operator(1, 3);
        assert_eq!(op13.normal, 2);
        assert!(!alg.gamma(2).commutator(&op13.gamma_operator).unwrap().is_zero());
        assert!(alg.gamma(3).commutator(&op13.gamma_operator).unwrap().is_zero());
        assert!(check_phase_commutation_spinhalf(&alg, 1, 3).all_passed());
    }

    #[test]
    fn phase_operator_identity_sign() {
        let alg = DiracAlgebra::build();
        let r = check_phase_operator_identity(&alg);
        assert!(r.all_passed(), "{r}");
        // the upper-index form differs by a sign
        let lhs = alg.phase_operator(1, 2).gamma_operator.scale(&exact(0, 1));
        assert_eq!(lhs, -&alg.spin_operator());
    }

    #[test]
    fn effective_potential_values() {
        assert_eq!(effective_potential_spinhalf([0.0, 0.0]), [-0.0, 0.0]);
        assert_eq!(effective_potential_spinhalf([1.0, 0.0]), [-0.0, 1.0]);
        assert_eq!(effective_potential_spinhalf([3.0, -4.0]), [4.0, 3.0]);
    }

    #[test]
    fn rest_frame_amplitude_is_exact_eigenvector() {
        let alg = DiracAlgebra::build();
        let m = exact(1, 0);
        let p = [m.clone(), exact(0, 0), exact(0, 0), exact(0, 0)];
        for s in [1, -1] {
            let u = dirac_amplitude_exact(&alg, &p, &m, s).unwrap();
            assert!(u.iter().any(|x| !x.is_zero()));
            let g0u = alg.gamma(0).apply(&u).unwrap();
            assert_eq!(g0u, u, "(g0 - 1) u = 0");
            let su = alg.spin_operator().apply(&u).unwrap();
            let expected: Vec<_> = u.iter().map(|x| x.clone() * ExactScalar::from_i64(s as i64)).collect();
            assert_eq!(su, expected);
        }
    }

    #[test]
    fn moving_amplitude_solves_free_equation_exactly() {
        // m = 12/13, p = (1, 3/13, 4/13, 0)
        let alg = DiracAlgebra::build();
        let m = exact_frac(12, 13);
        let p = [exact(1, 0), exact_frac(3, 13), exact_frac(4, 13), exact(0, 0)];
        for s in [1, -1] {
            let u = dirac_amplitude_exact(&alg, &p, &m, s).unwrap();
            let op = &slash(alg.gammas(), &p) - &ExactMatrix::identity(4).scale(&m);
            assert!(op.apply(&u).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn plane_wave_errors() {
        let alg = DiracAlgebra::build();
        assert!(matches!(free_plane_wave_dirac(&alg, [1.0, 0.5, 0.0, 0.0], 1.0, 1), Err(Error::OffShell(_))));
        assert!(matches!(free_plane_wave_dirac(&alg, [1.5, 0.0, 0.0, 0.5], 1.118, 1), Err(Error::MomentumAlongAxis(_))));
        assert!(matches!(free_plane_wave_dirac(&alg, [1.0, 0.0, 0.0, 0.0], 1.0, 0), Err(Error::InvalidSpin { .. })));
    }

    #[test]
    fn numeric_plane_wave_solves_free_equation() {
        let alg = DiracAlgebra::build();
        let m = 0.8_f64;
        let p = [(m * m + 0.36 + 0.09_f64).sqrt(), 0.6, 0.3, 0.0];
        let w = free_plane_wave_dirac(&alg, p, m, -1).unwrap();
        assert!(w.analytic_residual(&alg) < 1e-14);
    }
}
