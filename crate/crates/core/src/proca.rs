//! Projection of Kemmer spinors onto the Proca vector `psi^mu` and field
//! tensor `G^{mu nu}`, and the identities that carry the spin-1 phase across.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::fields::METRIC;
use crate::kemmer::{fmt_exact, interaction_matrix, printed_beta0_xi3, spin_tilde3, KemmerAlgebra, SpinOperators, DIM};
use crate::linalg::{to_numeric, Matrix};
use crate::scalar::{exact, ExactScalar, Real, Scalar};
use crate::ExactMatrix;

/// `U^mu` and `U^{mu nu} = U^mu beta^nu`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionOperators<T = ExactScalar> {
    pub u: [Matrix<T>; 4],
    pub u2: [[Matrix<T>; 4]; 4],
    /// The single row on which every projection is supported.
    pub row: usize,
}

impl ProjectionOperators<ExactScalar> {
    /// `U^mu = -(beta^1)^2 (beta^2)^2 (beta^3)^2 (beta^mu beta^0 - eta^{mu 0})`.
    pub fn build(alg: &KemmerAlgebra) -> Result<Self> {
        let ops = Self::build_unchecked(alg);
        let report = check_projection_identities(alg, &ops);
        if let Some(c) = report.failures().next() {
            return Err(Error::Construction(format!("{}: {}", c.name, c.detail)));
        }
        let rows: Vec<usize> = ops.u.iter().chain(ops.u2.iter().flatten()).flat_map(|m| m.support()).map(|(r, _)| r).collect();
        match rows.first() {
            Some(&r) if rows.iter().all(|x| *x == r) => Ok(Self { row: r, ..ops }),
            _ => Err(Error::Construction("projections are not supported on a single row".into())),
        }
    }

    /// Builds the operators without checking their identities.
    pub fn build_unchecked(alg: &KemmerAlgebra) -> Self {
        let sq = |k: usize| alg.beta(k) * alg.beta(k);
        let prefix = (&(&sq(1) * &sq(2)) * &sq(3)).scale(&ExactScalar::from_i64(-1));
        let id = ExactMatrix::identity(alg.dim());
        let u: [ExactMatrix; 4] = std::array::from_fn(|mu| {
            let mut inner = alg.beta(mu) * alg.beta(0);
            if mu == 0 {
                inner = &inner - &id;
            }
            &prefix * &inner
        });
        let u2 = std::array::from_fn(|mu| std::array::from_fn(|nu| &u[mu] * alg.beta(nu)));
        Self { u, u2, row: DIM - 1 }
    }

    pub fn to_numeric<F: Real>(&self) -> ProjectionOperators<Complex<F>> {
        ProjectionOperators {
            u: self.u.clone().map(|m| to_numeric::<F>(&m)),
            u2: std::array::from_fn(|a| std::array::from_fn(|b| to_numeric::<F>(&self.u2[a][b]))),
            row: self.row,
        }
    }
}

impl<T: Scalar> ProjectionOperators<T> {
    fn project(&self, m: &Matrix<T>, phi: &[T]) -> T {
        (0..m.cols()).fold(T::zero(), |acc, c| acc + m[(self.row, c)].clone() * phi[c].clone())
    }

    /// Raw projections `(U^nu phi, U^{mu nu} phi)`, free of any mass factor.
    pub fn components(&self, phi: &[T]) -> Result<([T; 4], [[T; 4]; 4])> {
        if phi.len() != self.u[0].cols() {
            return Err(Error::DimensionMismatch { op: "projection", left: self.u[0].shape(), right: (phi.len(), 1) });
        }
        let a = std::array::from_fn(|nu| self.project(&self.u[nu], phi));
        let g = std::array::from_fn(|mu| std::array::from_fn(|nu| self.project(&self.u2[mu][nu], phi)));
        Ok((a, g))
    }
}

/// `U^{mu nu} = -U^{nu mu}` (16 pairs) and `U^mu beta^nu beta^si = eta^{nu si} U^mu - eta^{mu si} U^nu` (64 triples).
pub fn check_projection_identities(alg: &KemmerAlgebra, ops: &ProjectionOperators) -> CheckReport {
    let mut report = CheckReport::new();
    for mu in 0..4 {
        for nu in 0..4 {
            let ok = ops.u2[mu][nu] == -&ops.u2[nu][mu];
            report.push(format!("U^{mu}{nu} = -U^{nu}{mu}"), ok, "exact");
        }
    }
    for mu in 0..4 {
        for nu in 0..4 {
            for si in 0..4 {
                let diff = &triple_lhs(alg, ops, mu, nu, si) - &triple_rhs(ops, mu, nu, si, true);
                report.push(
                    format!("U^{mu} b{nu} b{si} = eta^{nu}{si} U^{mu} - eta^{mu}{si} U^{nu}"),
                    diff.is_zero(),
                    if diff.is_zero() { "exact".to_string() } else { format!("{} entries differ", diff.nonzero_count()) },
                );
            }
        }
    }
    report
}

fn triple_lhs(alg: &KemmerAlgebra, ops: &ProjectionOperators, mu: usize, nu: usize, si: usize) -> ExactMatrix {
    &(&ops.u[mu] * alg.beta(nu)) * alg.beta(si)
}

fn triple_rhs(ops: &ProjectionOperators, mu: usize, nu: usize, si: usize, metric: bool) -> ExactMatrix {
    let coeff = |a: usize, b: usize| {
        if a != b {
            ExactScalar::zero()
        } else if metric {
            ExactScalar::from_i64(METRIC[a] as i64)
        } else {
            ExactScalar::one()
        }
    };
    &ops.u[mu].scale(&coeff(nu, si)) - &ops.u[nu].scale(&coeff(mu, si))
}

/// Number of triples on which the Kronecker-delta reading of the third identity fails.
pub fn delta_reading_failures(alg: &KemmerAlgebra, ops: &ProjectionOperators) -> usize {
    let mut count = 0;
    for mu in 0..4 {
        for nu in 0..4 {
            for si in 0..4 {
                if triple_lhs(alg, ops, mu, nu, si) != triple_rhs(ops, mu, nu, si, false) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Which Proca component a Kemmer slot carries.
#[derive(Clone, Debug, PartialEq)]
pub struct LayoutEntry {
    /// `"psi^2"`, `"G^13"` and so on.
    pub component: String,
    pub slot: usize,
    pub coefficient: ExactScalar,
    /// Power of `sqrt(m)` multiplying the slot value: `-1` for vector components, `+1` for tensor components.
    pub mass_power: i32,
}

/// Component layout: `component = coefficient * sqrt(m)^mass_power * phi[slot]`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComponentLayout {
    pub entries: Vec<LayoutEntry>,
}

impl ComponentLayout {
    /// Reads the layout off the projections by applying them to each basis vector.
    pub fn derive(ops: &ProjectionOperators) -> Result<Self> {
        let single = |m: &ExactMatrix| -> Result<(usize, ExactScalar)> {
            let support = m.support();
            match support.as_slice() {
                [(r, c)] => Ok((*c, m[(*r, *c)].clone())),
                _ => Err(Error::Construction(format!("projection has {} nonzero entries", support.len()))),
            }
        };
        let mut entries = Vec::new();
        let minus_i = exact(0, -1);
        for nu in 0..4 {
            let (slot, v) = single(&ops.u[nu])?;
            entries.push(LayoutEntry { component: format!("psi^{nu}"), slot, coefficient: v * minus_i.clone(), mass_power: -1 });
        }
        for mu in 0..4 {
            for nu in mu + 1..4 {
                let (slot, v) = single(&ops.u2[mu][nu])?;
                entries.push(LayoutEntry { component: format!("G^{mu}{nu}"), slot, coefficient: v, mass_power: 1 });
            }
        }
        Ok(Self { entries })
    }

    pub fn slot_of(&self, component: &str) -> Option<usize> {
        self.entries.iter().find(|e| e.component == component).map(|e| e.slot)
    }

    /// Rows `(component, slot, coefficient, mass factor)` for reports.
    pub fn rows(&self) -> Vec<[String; 4]> {
        self.entries
            .iter()
            .map(|e| {
                let factor = if e.mass_power < 0 { "1/sqrt(m)" } else { "sqrt(m)" };
                [e.component.clone(), e.slot.to_string(), fmt_exact(&e.coefficient), factor.to_string()]
            })
            .collect()
    }
}

impl fmt::Display for ComponentLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for [c, slot, coeff, factor] in self.rows() {
            writeln!(f, "{c:6} = ({coeff}) {factor} phi[{slot}]")?;
        }
        Ok(())
    }
}

/// Proca vector and field tensor of a spin-1 configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcaState<T> {
    pub psi: [T; 4],
    pub g: [[T; 4]; 4],
    pub mass: T,
}

impl<T: Scalar> ProcaState<T> {
    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|a| (0..4).all(|b| self.g[a][b] == -self.g[b][a].clone()))
    }

    /// `(G^01, G^02, G^03, G^23, G^31, G^12, psi^1, psi^2, psi^3, psi^0)`, the
    /// ordering on which `S~_3` acts.
    pub fn stacked(&self) -> Vec<T> {
        let g = &self.g;
        let p = &self.psi;
        vec![
            g[0][1].clone(),
            g[0][2].clone(),
            g[0][3].clone(),
            g[2][3].clone(),
            g[3][1].clone(),
            g[1][2].clone(),
            p[1].clone(),
            p[2].clone(),
            p[3].clone(),
            p[0].clone(),
        ]
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            psi: self.psi.clone().map(|x| x * k.clone()),
            g: self.g.clone().map(|r| r.map(|x| x * k.clone())),
            mass: self.mass.clone(),
        }
    }
}

/// `psi^nu = U^nu phi / (i sqrt m)`, `G^{mu nu} = sqrt(m) U^{mu nu} phi`, given `sqrt(m)`.
pub fn kemmer_to_proca_with_root<T: Scalar>(phi: &[T], sqrt_mass: &T, ops: &ProjectionOperators<T>) -> Result<ProcaState<T>> {
    if sqrt_mass.is_zero() {
        return Err(Error::NonPositiveMass);
    }
    let (a, g) = ops.components(phi)?;
    let denom = T::i() * sqrt_mass.clone();
    Ok(ProcaState {
        psi: a.map(|x| x / denom.clone()),
        g: g.map(|r| r.map(|x| x * sqrt_mass.clone())),
        mass: sqrt_mass.clone() * sqrt_mass.clone(),
    })
}

/// Floating-point transformation for a strictly positive mass.
pub fn kemmer_to_proca<F: Real>(phi: &[Complex<F>], mass: F, ops: &ProjectionOperators<Complex<F>>) -> Result<ProcaState<Complex<F>>> {
    if !(mass > F::zero()) {
        return Err(Error::NonPositiveMass);
    }
    kemmer_to_proca_with_root(phi, &Complex::new(mass.sqrt(), F::zero()), ops)
}

/// Exact transformation; the mass must be the square of a positive rational.
pub fn kemmer_to_proca_exact(phi: &[ExactScalar], mass: &ExactScalar, ops: &ProjectionOperators) -> Result<ProcaState<ExactScalar>> {
    let root = exact_sqrt(mass)?;
    kemmer_to_proca_with_root(phi, &root, ops)
}

/// Square root of a positive rational perfect square.
pub fn exact_sqrt(x: &ExactScalar) -> Result<ExactScalar> {
    if !x.im.is_zero() || !x.re.is_positive() {
        return Err(Error::NonPositiveMass);
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    match (root(x.re.numer()), root(x.re.denom())) {
        (Some(n), Some(d)) => Ok(Complex::new(BigRational::new(n, d), BigRational::zero())),
        _ => Err(Error::NotPerfectSquare(x.re.to_string())),
    }
}

/// `F^nu_sigma psi^sigma` for a contravariant tensor `F^{mu nu}`.
pub fn interaction_vector<T: Scalar>(f_upper: &[[T; 4]; 4], psi: &[T; 4]) -> [T; 4] {
    std::array::from_fn(|nu| {
        (0..4).fold(T::zero(), |acc, s| {
            let term = f_upper[nu][s].clone() * psi[s].clone();
            if METRIC[s] > 0 {
                acc + term
            } else {
                acc - term
            }
        })
    })
}

pub(crate) fn lower_exact(f: &[[ExactScalar; 4]; 4]) -> [[ExactScalar; 4]; 4] {
    std::array::from_fn(|a| std::array::from_fn(|b| f[a][b].clone() * ExactScalar::from_i64((METRIC[a] * METRIC[b]) as i64)))
}

/// `F^{mu nu}` from exact `E` and `B`.
pub fn exact_field_tensor(e: &[ExactScalar; 3], b: &[ExactScalar; 3]) -> [[ExactScalar; 4]; 4] {
    let mut f: [[ExactScalar; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| ExactScalar::zero()));
    for i in 0..3 {
        f[0][i + 1] = e[i].clone();
        f[i + 1][0] = -e[i].clone();
    }
    let pairs = [(1, 2, 2, -1), (1, 3, 1, 1), (2, 3, 0, -1)];
    for (i, j, k, sign) in pairs {
        f[i][j] = b[k].clone() * ExactScalar::from_i64(sign);
        f[j][i] = -f[i][j].clone();
    }
    f
}

/// One transport sample: `i U^nu (i mu [beta^a, beta^b] F_ab phi) = -2 mu F^nu_sigma (U^sigma phi)`.
///
/// Multiplying by `sqrt(m)` and substituting `U^sigma phi = i sqrt(m) psi^sigma`
/// gives the Proca interaction `-2 i mu m F^nu_sigma psi^sigma`.
pub fn check_interaction_transport(
    alg: &KemmerAlgebra,
    ops: &ProjectionOperators,
    f_upper: &[[ExactScalar; 4]; 4],
    phi: &[ExactScalar],
    mu: &ExactScalar,
) -> Result<bool> {
    transport_holds(&alg.commutators(), ops, f_upper, phi, mu)
}

fn transport_holds(
    commutators: &[[ExactMatrix; 4]; 4],
    ops: &ProjectionOperators,
    f_upper: &[[ExactScalar; 4]; 4],
    phi: &[ExactScalar],
    mu: &ExactScalar,
) -> Result<bool> {
    let v = interaction_matrix(commutators, &lower_exact(f_upper), mu);
    let (lhs, _) = ops.components(&v.apply(phi)?)?;
    let lhs = lhs.map(|x| x * ExactScalar::i());
    let (a, _) = ops.components(phi)?;
    let rhs = interaction_vector(f_upper, &a).map(|x| x * mu.clone() * ExactScalar::from_i64(-2));
    Ok(lhs == rhs)
}

/// Small Gaussian rational with numerators in `[-9, 9]` and denominators in `[1, 9]`.
fn random_exact(rng: &mut ChaCha8Rng) -> ExactScalar {
    let mut part = || BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=9)));
    Complex::new(part(), part())
}

fn random_real(rng: &mut ChaCha8Rng) -> ExactScalar {
    let x = random_exact(rng);
    Complex::new(x.re, BigRational::zero())
}

/// Runs the transport check on `samples` seeded random exact `(E, B, phi, mu)`;
/// one record per sample. The generator is ChaCha8 seeded with `seed`.
pub fn interaction_transport_suite(alg: &KemmerAlgebra, ops: &ProjectionOperators, seed: u64, samples: usize) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    let commutators = alg.commutators();
    for k in 0..samples {
        let e: [ExactScalar; 3] = std::array::from_fn(|_| random_real(&mut rng));
        let b: [ExactScalar; 3] = std::array::from_fn(|_| random_real(&mut rng));
        let phi: Vec<ExactScalar> = (0..DIM).map(|_| random_exact(&mut rng)).collect();
        let mu = random_real(&mut rng);
        let f = exact_field_tensor(&e, &b);
        let ok = transport_holds(&commutators, ops, &f, &phi, &mu).unwrap_or(false);
        report.push(format!("interaction transport sample {k}"), ok, format!("seed {seed}"));
    }
    report
}

/// `beta^0 xi_3` against the printed block matrix, `Sigma_3 = S~_3`, and the
/// difference `S~_3 - beta^0 xi_3` confined to the `G^{23}` block.
pub fn check_spin_correspondence(alg: &KemmerAlgebra, spin: &SpinOperators) -> CheckReport {
    let mut report = CheckReport::new();
    let b0xi = alg.beta(0) * spin.xi3();
    report.push("b0 xi3 = xi3 b0 = diag(S3, 0, S3, 0)", b0xi == printed_beta0_xi3() && b0xi == spin.xi3() * alg.beta(0), "exact");
    report.push("Sigma3 = S~3", *spin.sigma(3) == spin_tilde3(), "exact");
    let diff = spin.sigma(3) - &b0xi;
    let confined = diff.support().iter().all(|&(r, c)| (3..6).contains(&r) && (3..6).contains(&c));
    report.push("Sigma3 - b0 xi3 supported on the G^23 block", confined && !diff.is_zero(), format!("{} nonzero entries", diff.nonzero_count()));
    report
}

/// `S~_3` acting on the stacked Proca components reproduces the Kemmer spin eigenvalue.
pub fn check_eigenvalue_transport<T: Scalar>(state: &ProcaState<T>, st3: &Matrix<T>, s: i32) -> bool {
    let v = state.stacked();
    let sv: Vec<T> = v.iter().map(|x| x.clone() * T::from_i64(s as i64)).collect();
    match st3.apply(&v) {
        Ok(w) => w.iter().zip(&sv).all(|(a, b)| (a.clone() - b.clone()).magnitude() <= tolerance::<T>(&v)),
        Err(_) => false,
    }
}

fn tolerance<T: Scalar>(v: &[T]) -> f64 {
    if T::EXACT {
        0.0
    } else {
        1e-12 * v.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// For plane waves `exp(-i p.x)`, the raw projections `a^nu = U^nu phi`,
/// `g^{mu nu} = U^{mu nu} phi` must satisfy `m g^{mu nu} = -(p^mu a^nu - p^nu a^mu)`
/// (the field definition) and `p_mu g^{mu nu} + m a^nu = 0` (the vector equation).
pub fn check_free_transport<T: Scalar>(p: &[T; 4], mass: &T, a: &[T; 4], g: &[[T; 4]; 4]) -> CheckReport {
    let mut report = CheckReport::new();
    let scale = a.iter().chain(g.iter().flatten()).map(Scalar::magnitude).fold(0.0, f64::max)
        * (1.0 + p.iter().map(Scalar::magnitude).fold(mass.magnitude(), f64::max));
    let tol = if T::EXACT { 0.0 } else { 1e-12 * scale };
    let close = |x: T| x.magnitude() <= tol;
    let field_ok = (0..4).all(|mu| {
        (0..4).all(|nu| close(mass.clone() * g[mu][nu].clone() + p[mu].clone() * a[nu].clone() - p[nu].clone() * a[mu].clone()))
    });
    report.push("field definition G = d psi - d psi (plane wave)", field_ok, if T::EXACT { "exact" } else { "1e-12 relative" });
    let vector_ok = (0..4).all(|nu| {
        let div = (0..4).fold(T::zero(), |acc, mu| {
            let term = p[mu].clone() * g[mu][nu].clone();
            if METRIC[mu] > 0 {
                acc + term
            } else {
                acc - term
            }
        });
        close(div + mass.clone() * a[nu].clone())
    });
    report.push("vector equation d_mu G^{mu nu} + m^2 psi^nu = 0 (plane wave)", vector_ok, if T::EXACT { "exact" } else { "1e-12 relative" });
    report
}

/// Exact reduction of the Proca interaction on a spin eigenstate at rest with
/// `B = E_3 = 0`, where `psi^0 = psi^3 = 0` and `psi^2 = i s psi^1`:
///
/// - `F^i_sigma psi^sigma = 0` for `i = 1, 2, 3`;
/// - `-2 i mu m F^0_sigma psi^sigma = 2 i mu m (E_1 psi^1 + E_2 psi^2)`;
/// - `s m (A'^1 psi^1 + A'^2 psi^2) = 2 i mu m (E_1 psi^1 + E_2 psi^2)` with `A' = 2 mu (-E_2, E_1)`;
/// - the subsidiary link `2 i mu d_nu F^nu = -i s m A'_nu psi^nu`, with `d_0 -> -i m` at rest.
pub fn check_reduction_at_rest(e: &[ExactScalar; 2], mu: &ExactScalar, mass: &ExactScalar, psi: &[ExactScalar; 4], s: i32) -> CheckReport {
    let mut report = CheckReport::new();
    let zero = ExactScalar::zero();
    let f = exact_field_tensor(&[e[0].clone(), e[1].clone(), zero.clone()], &[zero.clone(), zero.clone(), zero.clone()]);
    let fv = interaction_vector(&f, psi);
    let sc = ExactScalar::from_i64(s as i64);
    let two = ExactScalar::from_i64(2);
    let i = ExactScalar::i();
    let e_dot = e[0].clone() * psi[1].clone() + e[1].clone() * psi[2].clone();
    let target = two.clone() * i.clone() * mu.clone() * mass.clone() * e_dot;

    report.push("F^i_sigma psi^sigma = 0 on the eigenstate", fv[1..].iter().all(Zero::is_zero), "exact");
    let interaction0 = -(two.clone() * i.clone() * mu.clone() * mass.clone()) * fv[0].clone();
    report.push("-2 i mu m F^0 = 2 i mu m (E1 psi^1 + E2 psi^2)", interaction0 == target, "exact");

    let a_prime = [-(two.clone() * mu.clone() * e[1].clone()), two.clone() * mu.clone() * e[0].clone()];
    let a_dot = a_prime[0].clone() * psi[1].clone() + a_prime[1].clone() * psi[2].clone();
    report.push("s m (A'^1 psi^1 + A'^2 psi^2) = 2 i mu m (E1 psi^1 + E2 psi^2)", sc.clone() * mass.clone() * a_dot.clone() == target, "exact");

    // A'_nu psi^nu = -(A' . psi) with A'_0 = 0
    let lhs = two * i.clone() * mu.clone() * (-(i.clone() * mass.clone())) * fv[0].clone();
    let rhs = -(i * sc * mass.clone()) * (-a_dot);
    report.push("2 i mu d_nu F^nu = -i s m A'_nu psi^nu", lhs == rhs, "exact, rest frame");
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kemmer::kemmer_amplitude_exact;
    use crate::scalar::exact_frac;

    fn setup() -> (KemmerAlgebra, ProjectionOperators) {
        let alg = KemmerAlgebra::build().unwrap();
        let ops = ProjectionOperators::build(&alg).unwrap();
        (alg, ops)
    }

    #[test]
    fn projection_identities() {
        let (alg, ops) = setup();
        let r = check_projection_identities(&alg, &ops);
        assert_eq!(r.len(), 16 + 64);
        assert!(r.all_passed(), "{r}");
        assert_eq!(ops.row, 9);
        assert_eq!(delta_reading_failures(&alg, &ops), 18);
    }

    #[test]
    fn projection_entries() {
        let (_, ops) = setup();
        assert_eq!(ops.u[0].support(), vec![(9, 9)]);
        assert_eq!(ops.u[0][(9, 9)], exact(-1, 0));
        for k in 1..4 {
            assert_eq!(ops.u[k].support(), vec![(9, 5 + k)]);
            assert_eq!(ops.u[k][(9, 5 + k)], exact(0, -1));
        }
        assert_eq!(ops.u2[0][1][(9, 0)], exact(0, 1));
        assert_eq!(ops.u2[1][2][(9, 5)], exact(-1, 0));
        assert_eq!(ops.u2[1][3][(9, 4)], exact(1, 0));
        assert_eq!(ops.u2[2][3][(9, 3)], exact(-1, 0));
    }

    #[test]
    fn layout_table() {
        let (_, ops) = setup();
        let layout = ComponentLayout::derive(&ops).unwrap();
        assert_eq!(layout.entries.len(), 10);
        let slots: Vec<usize> = ["psi^0", "psi^1", "psi^2", "psi^3", "G^01", "G^02", "G^03", "G^23", "G^13", "G^12"]
            .iter()
            .map(|c| layout.slot_of(c).unwrap())
            .collect();
        assert_eq!(slots, vec![9, 6, 7, 8, 0, 1, 2, 3, 4, 5]);
        let psi0 = &layout.entries[0];
        assert_eq!(psi0.coefficient, exact(0, 1));
        assert_eq!(layout.entries[1].coefficient, exact(-1, 0));
        // U^0 sees only the psi^0 slot
        for c in 0..DIM {
            let mut e = vec![ExactScalar::zero(); DIM];
            e[c] = ExactScalar::one();
            let hit = !ops.u[0].apply(&e).unwrap().iter().all(Zero::is_zero);
            assert_eq!(hit, c == 9);
        }
        assert!(layout.to_string().contains("psi^0"));
    }

    #[test]
    fn transform_basics() {
        let (alg, ops) = setup();
        let zero = vec![ExactScalar::zero(); DIM];
        let st = kemmer_to_proca_exact(&zero, &exact(4, 0), &ops).unwrap();
        assert!(st.psi.iter().all(Zero::is_zero));
        assert!(matches!(kemmer_to_proca_exact(&zero, &exact(0, 0), &ops), Err(Error::NonPositiveMass)));
        assert!(matches!(kemmer_to_proca_exact(&zero, &exact(2, 0), &ops), Err(Error::NotPerfectSquare(_))));
        let num = ops.to_numeric::<f64>();
        assert!(matches!(kemmer_to_proca(&[Complex::new(0.0, 0.0); DIM], -1.0, &num), Err(Error::NonPositiveMass)));

        // rest frame eigencolumn
        let m = exact(1, 0);
        let p = [m.clone(), exact(0, 0), exact(0, 0), exact(0, 0)];
        for s in [1i64, -1] {
            let u = kemmer_amplitude_exact(&alg, &p, &m, s as i32).unwrap();
            let st = kemmer_to_proca_exact(&u, &m, &ops).unwrap();
            assert!(st.psi[0].is_zero() && st.psi[3].is_zero());
            assert_eq!(st.psi[1], -(exact(0, s) * st.psi[2].clone()));
            assert!(st.g[1][2].is_zero() && st.g[2][3].is_zero());
            assert!(st.is_antisymmetric());
            assert!(check_eigenvalue_transport(&st, &spin_tilde3(), s as i32));
        }
    }

    #[test]
    fn exact_sqrt_of_fractions() {
        assert_eq!(exact_sqrt(&exact_frac(9, 4)).unwrap(), exact_frac(3, 2));
        assert!(exact_sqrt(&exact(0, 1)).is_err());
    }

    #[test]
    fn free_transport_exact_for_moving_wave() {
        let (alg, ops) = setup();
        let m = exact(5, 0);
        let p = [exact(13, 0), exact(12, 0), exact(0, 0), exact(0, 0)];
        for s in [1, -1] {
            let u = kemmer_amplitude_exact(&alg, &p, &m, s).unwrap();
            let (a, g) = ops.components(&u).unwrap();
            let r = check_free_transport(&p, &m, &a, &g);
            assert!(r.all_passed(), "{r}");
            assert!(!a[0].is_zero(), "moving states carry psi^0");
        }
    }

    #[test]
    fn transport_suite_and_zero_field() {
        let (alg, ops) = setup();
        let r = interaction_transport_suite(&alg, &ops, 7, 12);
        assert!(r.all_passed(), "{r}");
        let zero: [[ExactScalar; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| ExactScalar::zero()));
        let phi: Vec<ExactScalar> = (0..DIM as i64).map(|k| exact(k, 1 - k)).collect();
        assert!(check_interaction_transport(&alg, &ops, &zero, &phi, &exact(1, 0)).unwrap());
    }

    #[test]
    fn spin_correspondence() {
        let alg = KemmerAlgebra::build().unwrap();
        let spin = SpinOperators::build(&alg);
        let r = check_spin_correspondence(&alg, &spin);
        assert_eq!(r.len(), 3);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn reduction_on_rest_eigenstates() {
        let e = [exact_frac(3, 10), exact_frac(-7, 10)];
        for s in [1i64, -1] {
            let psi = [exact(0, 0), exact(1, 0), exact(0, s), exact(0, 0)];
            let r = check_reduction_at_rest(&e, &exact_frac(2, 5), &exact(3, 0), &psi, s as i32);
            assert!(r.all_passed(), "{r}");
        }
    }
}
