//! Spin-1 layer: the 10-dimensional Kemmer algebra, its spin operators and the
//! Kemmer residual.
//!
//! Slot layout of the 10-spinor: three 3-blocks `0..3`, `3..6`, `6..9` and a
//! scalar slot `9`. See [`crate::proca`] for what each slot carries.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::check::CheckReport;
use crate::dirac::{dominant_column, validate_momentum, validate_spin};
use crate::error::{Error, Result};
use crate::fields::{lower_tensor, FieldConfig, Tensor, METRIC};
use crate::grid::{first_order_residual_at, max_abs, max_over_interior, Grid, Point, Spinor};
use crate::linalg::{root_multiplicity, to_numeric, Matrix};
use crate::scalar::{exact, ExactScalar, Real, Scalar};
use crate::ExactMatrix;

pub const DIM: usize = 10;

/// The 3x3 spin-1 block `S^k` (`k = 1, 2, 3`), `(S^k)_{ij} = -i eps_{kij}`.
pub fn spin_block(k: usize) -> ExactMatrix {
    let z = (0, 0);
    let entries = match k {
        1 => [z, z, z, z, z, (0, -1), z, (0, 1), z],
        2 => [z, z, (0, 1), z, z, z, (0, -1), z, z],
        3 => [z, (0, -1), z, (0, 1), z, z, z, z, z],
        _ => panic!("spin block index {k} out of range"),
    };
    ExactMatrix::from_int_pairs(3, 3, &entries).expect("3x3")
}

/// Unit row `K^k` (1x3).
pub fn unit_row(k: usize) -> ExactMatrix {
    ExactMatrix::from_fn(1, 3, |_, c| if c + 1 == k { ExactScalar::one() } else { ExactScalar::zero() })
}

fn assemble(blocks: [[&ExactMatrix; 4]; 4]) -> ExactMatrix {
    let rows: Vec<Vec<&ExactMatrix>> = blocks.iter().map(|r| r.to_vec()).collect();
    ExactMatrix::from_blocks(&rows).expect("consistent block shapes")
}

struct Blocks {
    o: ExactMatrix,
    id: ExactMatrix,
    col: ExactMatrix,
    row: ExactMatrix,
    zero: ExactMatrix,
}

impl Blocks {
    fn new() -> Self {
        Self {
            o: ExactMatrix::zeros(3, 3),
            id: ExactMatrix::identity(3),
            col: ExactMatrix::zeros(3, 1),
            row: ExactMatrix::zeros(1, 3),
            zero: ExactMatrix::zeros(1, 1),
        }
    }
}

/// The four matrices exactly as printed, without any check.
pub fn printed_betas() -> [ExactMatrix; 4] {
    let b = Blocks::new();
    let beta0 = assemble([
        [&b.o, &b.o, &b.id, &b.col],
        [&b.o, &b.o, &b.o, &b.col],
        [&b.id, &b.o, &b.o, &b.col],
        [&b.row, &b.row, &b.row, &b.zero],
    ]);
    let minus_i = exact(0, -1);
    let beta_k = |k: usize| {
        let s = spin_block(k);
        let neg_s = -&s;
        let kr = unit_row(k).scale(&minus_i);
        let kc = unit_row(k).adjoint().scale(&minus_i);
        assemble([
            [&b.o, &b.o, &b.o, &kc],
            [&b.o, &b.o, &s, &b.col],
            [&b.o, &neg_s, &b.o, &b.col],
            [&kr, &b.row, &b.row, &b.zero],
        ])
    };
    [beta0, beta_k(1), beta_k(2), beta_k(3)]
}

/// `xi_3` in the printed block form.
pub fn printed_xi3() -> ExactMatrix {
    let b = Blocks::new();
    let s3 = spin_block(3);
    let kc = unit_row(3).adjoint().scale(&exact(0, -1));
    let kr = unit_row(3).scale(&exact(0, 1));
    assemble([
        [&b.o, &b.o, &s3, &b.col],
        [&b.o, &b.o, &b.o, &kc],
        [&s3, &b.o, &b.o, &b.col],
        [&b.row, &kr, &b.row, &b.zero],
    ])
}

/// `diag(S_3, 0, S_3, 0)`: the printed value of `beta^0 xi_3`.
pub fn printed_beta0_xi3() -> ExactMatrix {
    let b = Blocks::new();
    let s3 = spin_block(3);
    assemble([
        [&s3, &b.o, &b.o, &b.col],
        [&b.o, &b.o, &b.o, &b.col],
        [&b.o, &b.o, &s3, &b.col],
        [&b.row, &b.row, &b.row, &b.zero],
    ])
}

/// `S~_3 = diag(S_3, S_3, S_3, 0)`, the spin matrix acting on Proca components.
pub fn spin_tilde3() -> ExactMatrix {
    let b = Blocks::new();
    let s3 = spin_block(3);
    assemble([
        [&s3, &b.o, &b.o, &b.col],
        [&b.o, &s3, &b.o, &b.col],
        [&b.o, &b.o, &s3, &b.col],
        [&b.row, &b.row, &b.row, &b.zero],
    ])
}

/// Lower-index totally antisymmetric symbol with `eps^{0123} = +1`, hence `eps_{0123} = -1`.
pub fn levi_civita_lower(idx: [usize; 4]) -> i64 {
    let mut v = idx;
    let mut sign = -1;
    for i in 0..4 {
        for j in i + 1..4 {
            if v[i] == v[j] {
                return 0;
            }
            if v[i] > v[j] {
                v.swap(i, j);
                sign = -sign;
            }
        }
    }
    sign
}

/// `beta^l beta^m beta^n + beta^n beta^m beta^l = eta^{lm} beta^n + eta^{mn} beta^l`
/// for all 64 ordered triples, on any four square matrices of equal size.
pub fn check_ring_relation(beta: &[ExactMatrix; 4]) -> CheckReport {
    let mut report = CheckReport::new();
    let eta = |a: usize, b: usize| if a == b { ExactScalar::from_i64(METRIC[a] as i64) } else { ExactScalar::zero() };
    for l in 0..4 {
        for m in 0..4 {
            let lm = &beta[l] * &beta[m];
            for n in 0..4 {
                let lhs = &(&lm * &beta[n]) + &(&(&beta[n] * &beta[m]) * &beta[l]);
                let rhs = &beta[n].scale(&eta(l, m)) + &beta[l].scale(&eta(m, n));
                let diff = &lhs - &rhs;
                let detail = if diff.is_zero() { "exact".to_string() } else { format!("{} entries differ", diff.nonzero_count()) };
                report.push(format!("ring b{l} b{m} b{n}"), diff.is_zero(), detail);
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct KemmerAlgebra {
    beta: [ExactMatrix; 4],
}

impl KemmerAlgebra {
    /// Assembles the printed matrices and verifies all 64 ring triples.
    pub fn build() -> Result<Self> {
        let alg = Self { beta: printed_betas() };
        let ring = alg.check_ring();
        if let Some(c) = ring.failures().next() {
            return Err(Error::Construction(format!("{}: {}", c.name, c.detail)));
        }
        Ok(alg)
    }

    /// Wraps arbitrary matrices without checking the ring relation.
    pub fn from_matrices(beta: [ExactMatrix; 4]) -> Self {
        Self { beta }
    }

    pub fn beta(&self, mu: usize) -> &ExactMatrix {
        &self.beta[mu]
    }

    pub fn betas(&self) -> &[ExactMatrix; 4] {
        &self.beta
    }

    /// `beta_mu = eta_{mu mu} beta^mu`.
    pub fn beta_lower(&self, mu: usize) -> ExactMatrix {
        if METRIC[mu] > 0 {
            self.beta[mu].clone()
        } else {
            -&self.beta[mu]
        }
    }

    pub fn dim(&self) -> usize {
        self.beta[0].rows()
    }

    pub fn check_ring(&self) -> CheckReport {
        check_ring_relation(&self.beta)
    }

    /// `xi_mu = (i/2) eps_{mu nu la rho} beta^nu beta^la beta^rho`.
    pub fn xi(&self, mu: usize) -> ExactMatrix {
        let n = self.dim();
        let mut sum = ExactMatrix::zeros(n, n);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let e = levi_civita_lower([mu, a, b, c]);
                    if e != 0 {
                        let prod = &(&self.beta[a] * &self.beta[b]) * &self.beta[c];
                        sum = &sum + &prod.scale(&ExactScalar::from_i64(e));
                    }
                }
            }
        }
        sum.scale(&(ExactScalar::i() * ExactScalar::from_frac(1, 2)))
    }

    /// `i (beta^a beta^b beta^c + beta^b beta^c beta^a + beta^c beta^a beta^b)`.
    pub fn xi_from_ordering(&self, [a, b, c]: [usize; 3]) -> ExactMatrix {
        let p = |x: usize, y: usize, z: usize| &(&self.beta[x] * &self.beta[y]) * &self.beta[z];
        (&(&p(a, b, c) + &p(b, c, a)) + &p(c, a, b)).scale(&ExactScalar::i())
    }

    /// `[beta^mu, beta^nu]` for all index pairs.
    pub fn commutators(&self) -> [[ExactMatrix; 4]; 4] {
        std::array::from_fn(|mu| std::array::from_fn(|nu| self.beta[mu].commutator(&self.beta[nu]).expect("square")))
    }
}

/// `S_{mu nu}`, `Sigma_i` and `xi_mu` built from a Kemmer algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperators {
    /// `S_{mu nu} = b (beta_mu beta_nu - beta_nu beta_mu)`, lower indices.
    pub s: [[ExactMatrix; 4]; 4],
    /// `Sigma_1, Sigma_2, Sigma_3` at indices 0, 1, 2.
    pub sigma: [ExactMatrix; 3],
    pub xi: [ExactMatrix; 4],
    pub b: ExactScalar,
}

/// Normalization of `S_{mu nu}` that makes the `beta_mu xi_3` identity exact.
pub fn default_normalization() -> ExactScalar {
    exact(0, 2)
}

impl SpinOperators {
    pub fn build(alg: &KemmerAlgebra) -> Self {
        Self::with_normalization(alg, default_normalization())
    }

    pub fn with_normalization(alg: &KemmerAlgebra, b: ExactScalar) -> Self {
        let low: [ExactMatrix; 4] = std::array::from_fn(|mu| alg.beta_lower(mu));
        let s = std::array::from_fn(|mu| std::array::from_fn(|nu| low[mu].commutator(&low[nu]).expect("square").scale(&b)));
        // Sigma_i = i [beta_j, beta_k] for cyclic (i, j, k)
        let sigma = std::array::from_fn(|i| {
            let (j, k) = ((i + 1) % 3 + 1, (i + 2) % 3 + 1);
            low[j].commutator(&low[k]).expect("square").scale(&ExactScalar::i())
        });
        let xi = std::array::from_fn(|mu| alg.xi(mu));
        Self { s, sigma, xi, b }
    }

    /// `Sigma_i` for `i = 1, 2, 3`.
    pub fn sigma(&self, i: usize) -> &ExactMatrix {
        &self.sigma[i - 1]
    }

    pub fn xi3(&self) -> &ExactMatrix {
        &self.xi[3]
    }
}

/// Solves `beta_1 xi_3 = -(1/2) b (beta_0 beta_2 - beta_2 beta_0) beta_1^2` for `b`.
pub fn solve_normalization(alg: &KemmerAlgebra) -> Option<ExactScalar> {
    let xi3 = alg.xi(3);
    let lhs = &alg.beta_lower(1) * &xi3;
    let (b0, b2, b1) = (alg.beta_lower(0), alg.beta_lower(2), alg.beta_lower(1));
    let unit = (&(&b0 * &b2) - &(&b2 * &b0)).scale(&ExactScalar::from_frac(-1, 2));
    let rhs = &unit * &(&b1 * &b1);
    let (r, c) = rhs.support().into_iter().next()?;
    let b = lhs[(r, c)].clone() / rhs[(r, c)].clone();
    (lhs == rhs.scale(&b)).then_some(b)
}

/// `[xi_3, beta^mu]` vanishes for `mu = 0, 1, 2` and survives for `mu = 3`;
/// plus the Baker-Hausdorff consequence that conjugating by `exp(i xi_3)` leaves
/// `beta^0, beta^1, beta^2` fixed at every order.
pub fn check_xi_commutators(alg: &KemmerAlgebra, ops: &SpinOperators) -> CheckReport {
    let mut report = CheckReport::new();
    let xi3 = ops.xi3();
    for mu in 0..4 {
        let c = xi3.commutator(alg.beta(mu)).expect("square");
        let should_vanish = mu != 3;
        let what = if should_vanish { "= 0" } else { "!= 0" };
        report.push(format!("[xi3, b{mu}] {what}"), c.is_zero() == should_vanish, format!("{} nonzero entries", c.nonzero_count()));
    }
    for mu in 0..3 {
        let ok = (0..=4).all(|order| bch_fixed(xi3, alg.beta(mu), order));
        report.push(format!("exp(-i xi3) b{mu} exp(i xi3) = b{mu} to order 4"), ok, "truncated series");
    }
    let moved = !bch_fixed(xi3, alg.beta(3), 2);
    report.push("exp(-i xi3) b3 exp(i xi3) != b3 at order 2", moved, "truncated series");
    report
}

fn bch_fixed(x: &ExactMatrix, g: &ExactMatrix, order: usize) -> bool {
    crate::linalg::bch_conjugate(x, g, order).map(|m| &m == g).unwrap_or(false)
}

/// `-beta^mu xi_3 = beta_mu xi_3 = -eps_{mu nu} (1/2) S_{0 nu} beta_mu^2` and
/// `beta_mu (beta_mu xi_3) = (1/2) eps_{mu nu} beta_mu S_{0 nu}` for `(mu, nu) = (1, 2), (2, 1)`.
pub fn check_operator_identity_one(alg: &KemmerAlgebra, ops: &SpinOperators) -> CheckReport {
    let mut report = CheckReport::new();
    let xi3 = ops.xi3();
    let half = ExactScalar::from_frac(1, 2);
    for (mu, nu, eps) in [(1usize, 2usize, 1i64), (2, 1, -1)] {
        let low = alg.beta_lower(mu);
        let lhs = &low * xi3;
        report.push(format!("-b{mu} xi3 = b_{mu} xi3"), -&(alg.beta(mu) * xi3) == lhs, "exact");
        let sq = &low * &low;
        let coeff = half.clone() * ExactScalar::from_i64(-eps);
        let right = (&ops.s[0][nu] * &sq).scale(&coeff);
        let left = (&sq * &ops.s[0][nu]).scale(&coeff);
        report.push(
            format!("b_{mu} xi3 = -eps{mu}{nu} S_0{nu} b_{mu}^2 / 2"),
            lhs == right && lhs == left,
            format!("b = {}", fmt_exact(&ops.b)),
        );
        let chain = &low * &lhs;
        let expected = (&low * &ops.s[0][nu]).scale(&(half.clone() * ExactScalar::from_i64(eps)));
        report.push(format!("b_{mu} (b_{mu} xi3) = eps{mu}{nu} b_{mu} S_0{nu} / 2"), chain == expected, "exact");
    }
    report
}

/// The identity holds at the default normalization and fails when it is doubled.
pub fn check_normalization_pinned(alg: &KemmerAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    let b = default_normalization();
    let solved = solve_normalization(alg);
    report.push(
        "normalization solved from the identity",
        solved.as_ref() == Some(&b),
        solved.map(|x| format!("b = {}", fmt_exact(&x))).unwrap_or_else(|| "no solution".into()),
    );
    let doubled = b.clone() * ExactScalar::from_i64(2);
    let fails = !check_operator_identity_one(alg, &SpinOperators::with_normalization(alg, doubled.clone())).all_passed();
    report.push("identity fails at 2b", fails, format!("b' = {}", fmt_exact(&doubled)));
    report
}

pub(crate) fn fmt_exact(x: &ExactScalar) -> String {
    match (x.re.is_zero(), x.im.is_zero()) {
        (_, true) => format!("{}", x.re),
        (true, false) => format!("{}i", x.im),
        _ => format!("{} + {}i", x.re, x.im),
    }
}

/// Multiplicities of the eigenvalues `1, -1, 0` from the exact characteristic polynomial.
pub fn spectrum_multiplicities(m: &ExactMatrix) -> Result<[usize; 3]> {
    let poly = m.char_poly()?;
    Ok([1, -1, 0].map(|v| root_multiplicity(&poly, &ExactScalar::from_i64(v))))
}

/// Spectral and structural facts about `xi_3`, `Sigma_3` and `beta^0 xi_3`.
pub fn check_spin_structure(alg: &KemmerAlgebra, ops: &SpinOperators) -> CheckReport {
    let mut report = CheckReport::new();
    let xi3 = ops.xi3();
    report.push("xi3 (eps sum) = printed block form", *xi3 == printed_xi3(), "exact");
    let cyclic = alg.xi_from_ordering([0, 1, 2]);
    report.push("xi3 = i(b0 b1 b2 + b1 b2 b0 + b2 b0 b1)", *xi3 == cyclic, "exact");
    let rotations_equal = alg.xi_from_ordering([1, 2, 0]) == cyclic && alg.xi_from_ordering([2, 0, 1]) == cyclic;
    report.push("cyclic reordering leaves xi3 unchanged", rotations_equal, "exact");
    let swaps_flip = [[1, 0, 2], [0, 2, 1], [2, 1, 0]].iter().all(|o| alg.xi_from_ordering(*o) == -&cyclic);
    report.push("transposed ordering flips xi3", swaps_flip, "exact");
    let antisymmetric = (0..4).all(|mu| (0..4).all(|nu| ops.s[mu][nu] == -&ops.s[nu][mu]));
    report.push("S_mu nu = -S_nu mu (16 pairs)", antisymmetric, "exact");
    let b0xi = alg.beta(0) * xi3;
    let xib0 = xi3 * alg.beta(0);
    report.push("b0 xi3 = xi3 b0", b0xi == xib0, "exact");
    match spectrum_multiplicities(ops.sigma(3)) {
        Ok(m) => report.push("Sigma3 spectrum {1:3, -1:3, 0:4}", m == [3, 3, 4], format!("{m:?}")),
        Err(e) => report.push("Sigma3 spectrum {1:3, -1:3, 0:4}", false, e.to_string()),
    }
    match spectrum_multiplicities(&b0xi) {
        Ok(m) => report.push("b0 xi3 spectrum in {1, -1, 0}", m.iter().sum::<usize>() == DIM, format!("{m:?}")),
        Err(e) => report.push("b0 xi3 spectrum in {1, -1, 0}", false, e.to_string()),
    }
    let cube = &(xi3 * xi3) * xi3;
    report.push("xi3^3 = xi3 (xi3 annihilates its zero modes)", &cube == xi3, "exact");
    report
}

/// `(A'_1, A'_2) = (-2 mu E_2, 2 mu E_1)`.
pub fn effective_potential_spinone<F: Real>(e: [F; 2], mu: F) -> [F; 2] {
    let two_mu = F::lit(2.0) * mu;
    [-two_mu * e[1], two_mu * e[0]]
}

/// `beta^mu p_mu` for contravariant `p`.
pub fn beta_slash<T: Scalar>(betas: &[Matrix<T>; 4], p: &[T; 4]) -> Matrix<T> {
    let n = betas[0].rows();
    (0..4).fold(Matrix::zeros(n, n), |acc, mu| {
        let lowered = if METRIC[mu] > 0 { p[mu].clone() } else { -p[mu].clone() };
        &acc + &betas[mu].scale(&lowered)
    })
}

/// Free positive-energy amplitude with `xi_3 u = s u`.
///
/// With `B = beta^mu p_mu` one has `B^3 = p^2 B`, so `B (B + m) / (2 m^2)` projects
/// onto `B u = m u`; `xi_3 (xi_3 + s) / 2` selects the spin, and commutes with `B`
/// because `p_3 = 0`. Returns the dominant column of the product.
pub fn kemmer_amplitude<T: Scalar>(betas: &[Matrix<T>; 4], xi3: &Matrix<T>, p: &[T; 4], mass: &T, s: i32) -> Vec<T> {
    let id = Matrix::identity(betas[0].rows());
    let b = beta_slash(betas, p);
    let energy = (&b * &(&b + &id.scale(mass))).scale(&(T::one() / (mass.clone() * mass.clone() * T::from_i64(2))));
    let spin = (xi3 * &(xi3 + &id.scale(&T::from_i64(s as i64)))).scale(&T::from_frac(1, 2));
    dominant_column(&(&spin * &energy))
}

/// Exact amplitude for rational on-shell momenta.
pub fn kemmer_amplitude_exact(alg: &KemmerAlgebra, p: &[ExactScalar; 4], mass: &ExactScalar, s: i32) -> Result<Vec<ExactScalar>> {
    validate_spin(s)?;
    if !p[3].is_zero() {
        return Err(Error::MomentumAlongAxis(p[3].to_complex64().re));
    }
    if mass.is_zero() {
        return Err(Error::NonPositiveMass);
    }
    let shell = p[0].clone() * p[0].clone() - p[1].clone() * p[1].clone() - p[2].clone() * p[2].clone() - mass.clone() * mass.clone();
    if !shell.is_zero() {
        return Err(Error::OffShell(shell.to_complex64().re));
    }
    Ok(kemmer_amplitude(alg.betas(), &alg.xi(3), p, mass, s))
}

/// Free plane wave `u exp(-i p.x)` on the 10-component spinor space.
#[derive(Clone, Debug, PartialEq)]
pub struct KemmerPlaneWave<F> {
    pub momentum: [F; 4],
    pub mass: F,
    pub spin: i32,
    pub amplitude: Spinor<F>,
}

/// Free spin eigenstate for an on-shell momentum in the 1-2 plane, normalized to unit max-norm.
pub fn kemmer_plane_wave<F: Real>(alg: &KemmerAlgebra, p: [F; 4], mass: F, s: i32) -> Result<KemmerPlaneWave<F>> {
    validate_spin(s)?;
    validate_momentum(&p, mass)?;
    let betas = alg.betas().clone().map(|b| to_numeric::<F>(&b));
    let xi3 = to_numeric::<F>(&alg.xi(3));
    let pc = p.map(|x| Complex::new(x, F::zero()));
    let mut amplitude = kemmer_amplitude(&betas, &xi3, &pc, &Complex::new(mass, F::zero()), s);
    let norm = max_abs(&amplitude);
    for a in amplitude.iter_mut() {
        *a = *a / norm;
    }
    Ok(KemmerPlaneWave { momentum: p, mass, spin: s, amplitude })
}

impl<F: Real> KemmerPlaneWave<F> {
    pub fn phase_at(&self, x: Point<F>) -> Complex<F> {
        let p = &self.momentum;
        let px = p[0] * x[0] - p[1] * x[1] - p[2] * x[2] - p[3] * x[3];
        Complex::new(F::zero(), -px).exp()
    }

    pub fn eval(&self, x: Point<F>) -> Spinor<F> {
        let ph = self.phase_at(x);
        self.amplitude.iter().map(|a| a * ph).collect()
    }

    /// Max-norm of `(beta^mu p_mu - m) u`.
    pub fn analytic_residual(&self, alg: &KemmerAlgebra) -> F {
        let betas = alg.betas().clone().map(|b| to_numeric::<F>(&b));
        let pc = self.momentum.map(|x| Complex::new(x, F::zero()));
        let op = &beta_slash(&betas, &pc) - &Matrix::identity(DIM).scale(&Complex::new(self.mass, F::zero()));
        max_abs(&op.apply(&self.amplitude).expect("10-spinor"))
    }
}

/// `i mu [beta^a, beta^b] F_{ab}` from precomputed commutators and a lowered field tensor.
pub fn interaction_matrix<T: Scalar>(commutators: &[[Matrix<T>; 4]; 4], f_lower: &[[T; 4]; 4], mu: &T) -> Matrix<T> {
    let n = commutators[0][0].rows();
    let mut out = Matrix::zeros(n, n);
    for a in 0..4 {
        for b in 0..4 {
            if f_lower[a][b].is_zero() {
                continue;
            }
            out = &out + &commutators[a][b].scale(&f_lower[a][b]);
        }
    }
    out.scale(&(T::i() * mu.clone()))
}

/// `(1/2) mu S_{ab} F^{ab}`, the spin-operator form of the same interaction.
pub fn interaction_from_spin_operators(ops: &SpinOperators, f_upper: &[[ExactScalar; 4]; 4], mu: &ExactScalar) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(DIM, DIM);
    for a in 0..4 {
        for b in 0..4 {
            if !f_upper[a][b].is_zero() {
                out = &out + &ops.s[a][b].scale(&f_upper[a][b]);
            }
        }
    }
    out.scale(&(mu.clone() * ExactScalar::from_frac(1, 2)))
}

/// Numeric view of the algebra used by grid residuals.
#[derive(Clone, Debug)]
pub struct NumericKemmer<F: Real> {
    pub betas: [Matrix<Complex<F>>; 4],
    pub commutators: [[Matrix<Complex<F>>; 4]; 4],
}

impl<F: Real> NumericKemmer<F> {
    pub fn new(alg: &KemmerAlgebra) -> Self {
        let c = alg.commutators();
        Self {
            betas: alg.betas().clone().map(|b| to_numeric::<F>(&b)),
            commutators: std::array::from_fn(|a| std::array::from_fn(|b| to_numeric::<F>(&c[a][b]))),
        }
    }

    /// Interaction matrix at a spacetime point.
    pub fn interaction(&self, field: &FieldConfig<F>, mu: F, x: Point<F>) -> Result<Matrix<Complex<F>>> {
        let f = field.tensor_at([x[1], x[2], x[3]])?;
        Ok(interaction_matrix(&self.commutators, &complex_tensor(&lower_tensor(&f)), &Complex::new(mu, F::zero())))
    }
}

pub(crate) fn complex_tensor<F: Real>(t: &Tensor<F>) -> [[Complex<F>; 4]; 4] {
    t.map(|row| row.map(|x| Complex::new(x, F::zero())))
}

/// Max-norm finite-difference residual of `(i beta^mu d_mu + i mu [beta^a, beta^b] F_{ab} - m) phi`.
pub fn kemmer_residual<F: Real>(
    alg: &KemmerAlgebra,
    phi: &(dyn Fn(Point<F>) -> Spinor<F> + Sync),
    field: &FieldConfig<F>,
    mu: F,
    mass: F,
    grid: &Grid<F>,
    h: F,
) -> Result<F> {
    grid.validate(field, h)?;
    let num = NumericKemmer::new(alg);
    max_over_interior(grid, |x| {
        let v = num.interaction(field, mu, x)?;
        Ok(max_abs(&first_order_residual_at(&num.betas, &v, mass, phi, x, h)))
    })
}

/// Max-norm of the interaction term applied to `phi` over the grid.
pub fn kemmer_interaction_scale<F: Real>(
    alg: &KemmerAlgebra,
    phi: &(dyn Fn(Point<F>) -> Spinor<F> + Sync),
    field: &FieldConfig<F>,
    mu: F,
    grid: &Grid<F>,
) -> Result<F> {
    let num = NumericKemmer::new(alg);
    max_over_interior(grid, |x| {
        let v = num.interaction(field, mu, x)?;
        Ok(max_abs(&v.apply(&phi(x)).expect("10-spinor")))
    })
}
