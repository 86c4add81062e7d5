//! Electromagnetic environments, closed loops and loop quadrature.
//!
//! Units are rationalized: an infinite line charge of density `lambda` along
//! the 3-axis has 2-d flux `lambda` through any contour winding once around it,
//! so `E = lambda x / (2 pi |x|^2)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature;
use crate::scalar::Real;

pub type Vec2<F> = [F; 2];
pub type Vec3<F> = [F; 3];
/// Contravariant field-strength tensor `F^{mu nu}`.
pub type Tensor<F> = [[F; 4]; 4];

/// Minkowski metric diagonal, signature (+, -, -, -).
pub const METRIC: [i32; 4] = [1, -1, -1, -1];

/// Field of an infinite line charge on the 3-axis.
pub fn line_charge_e<F: Real>(lambda: F, x: Vec2<F>) -> Result<Vec2<F>> {
    let r2 = x[0] * x[0] + x[1] * x[1];
    if r2 == F::zero() {
        return Err(Error::Singularity);
    }
    let k = lambda / (F::lit(2.0) * F::PI() * r2);
    Ok([k * x[0], k * x[1]])
}

/// `F^{0i} = E_i`, `F^{ij} = -eps_{ijk} B_k`, antisymmetric.
pub fn field_tensor<F: Real>(e: Vec3<F>, b: Vec3<F>) -> Tensor<F> {
    let z = F::zero();
    let mut f = [[z; 4]; 4];
    for i in 0..3 {
        f[0][i + 1] = e[i];
        f[i + 1][0] = -e[i];
    }
    f[1][2] = -b[2];
    f[2][1] = b[2];
    f[1][3] = b[1];
    f[3][1] = -b[1];
    f[2][3] = -b[0];
    f[3][2] = b[0];
    f
}

/// Lowers both indices with the metric.
pub fn lower_tensor<F: Real>(f: &Tensor<F>) -> Tensor<F> {
    let mut out = *f;
    for (mu, row) in out.iter_mut().enumerate() {
        for (nu, x) in row.iter_mut().enumerate() {
            if METRIC[mu] * METRIC[nu] < 0 {
                *x = -*x;
            }
        }
    }
    out
}

pub type FieldFn<F> = Arc<dyn Fn(Vec3<F>) -> (Vec3<F>, Vec3<F>) + Send + Sync>;

#[derive(Clone)]
pub enum FieldKind<F> {
    UniformE { e: Vec3<F>, b: Vec3<F> },
    LineCharge { lambda: F },
    /// Arbitrary static field `x -> (E, B)`; `lambda` is the line density it encloses.
    Custom { f: FieldFn<F>, lambda: F },
}

impl<F: fmt::Debug> fmt::Debug for FieldKind<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::UniformE { e, b } => f.debug_struct("UniformE").field("e", e).field("b", b).finish(),
            FieldKind::LineCharge { lambda } => f.debug_struct("LineCharge").field("lambda", lambda).finish(),
            FieldKind::Custom { lambda, .. } => f.debug_struct("Custom").field("lambda", lambda).finish(),
        }
    }
}

/// Static electromagnetic environment; the charge axis is the 3-axis through the origin.
#[derive(Clone, Debug)]
pub struct FieldConfig<F> {
    pub kind: FieldKind<F>,
}

impl<F: Real> FieldConfig<F> {
    pub fn uniform_e(e: Vec3<F>) -> Self {
        Self { kind: FieldKind::UniformE { e, b: [F::zero(); 3] } }
    }

    pub fn uniform(e: Vec3<F>, b: Vec3<F>) -> Self {
        Self { kind: FieldKind::UniformE { e, b } }
    }

    pub fn line_charge(lambda: F) -> Self {
        Self { kind: FieldKind::LineCharge { lambda } }
    }

    pub fn custom(lambda: F, f: impl Fn(Vec3<F>) -> (Vec3<F>, Vec3<F>) + Send + Sync + 'static) -> Self {
        Self { kind: FieldKind::Custom { f: Arc::new(f), lambda } }
    }

    /// `(E, B)` at a spatial point.
    pub fn fields_at(&self, x: Vec3<F>) -> Result<(Vec3<F>, Vec3<F>)> {
        let z = F::zero();
        match &self.kind {
            FieldKind::UniformE { e, b } => Ok((*e, *b)),
            FieldKind::LineCharge { lambda } => {
                let e = line_charge_e(*lambda, [x[0], x[1]])?;
                Ok(([e[0], e[1], z], [z; 3]))
            }
            FieldKind::Custom { f, .. } => Ok(f(x)),
        }
    }

    pub fn e_at(&self, x: Vec3<F>) -> Result<Vec3<F>> {
        self.fields_at(x).map(|(e, _)| e)
    }

    pub fn tensor_at(&self, x: Vec3<F>) -> Result<Tensor<F>> {
        let (e, b) = self.fields_at(x)?;
        Ok(field_tensor(e, b))
    }

    /// Line charge density enclosed by a winding-one loop.
    pub fn line_density(&self) -> F {
        match &self.kind {
            FieldKind::UniformE { .. } => F::zero(),
            FieldKind::LineCharge { lambda } | FieldKind::Custom { lambda, .. } => *lambda,
        }
    }

    /// Whether the field is singular on the 3-axis.
    pub fn singular_on_axis(&self) -> bool {
        !matches!(self.kind, FieldKind::UniformE { .. })
    }

    /// Checks `B = 0` and `E_3 = 0` at the given points (fields are static and
    /// `x^3`-independent by construction for the built-in kinds).
    pub fn check_ac(&self, points: &[Vec3<F>]) -> Result<()> {
        let probe = [[F::one(), F::lit(0.5), F::zero()]];
        let points = if points.is_empty() { &probe[..] } else { points };
        for &x in points {
            let (e, b) = self.fields_at(x)?;
            if b.iter().any(|c| *c != F::zero()) {
                return Err(Error::NotAcConfiguration("magnetic field must vanish (B = 0)"));
            }
            if e[2] != F::zero() {
                return Err(Error::NotAcConfiguration("field along the charge axis must vanish (E3 = 0)"));
            }
            if let FieldKind::Custom { f, .. } = &self.kind {
                let shifted = f([x[0], x[1], x[2] + F::one()]);
                if shifted.0 != e || shifted.1 != b {
                    return Err(Error::NotAcConfiguration("fields must not depend on x3"));
                }
            }
        }
        Ok(())
    }
}

/// Ordered polyline in the 1-2 plane. Closed iff the last vertex repeats the first.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopPath<F> {
    vertices: Vec<Vec2<F>>,
}

impl<F: Real> LoopPath<F> {
    pub fn new(vertices: Vec<Vec2<F>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::DegeneratePath);
        }
        if vertices.iter().any(|v| v[0] == F::zero() && v[1] == F::zero()) {
            return Err(Error::Singularity);
        }
        Ok(Self { vertices })
    }

    /// Closed polygon through the given corners.
    pub fn polygon(mut corners: Vec<Vec2<F>>) -> Result<Self> {
        if let Some(&first) = corners.first() {
            if corners.last() != Some(&first) {
                corners.push(first);
            }
        }
        Self::new(corners)
    }

    /// Regular `n`-gon inscribed in a circle, traversed `turns` times
    /// (negative turns run clockwise). Refining `n` converges to the circle.
    pub fn circle(center: Vec2<F>, radius: F, n: usize, turns: i32) -> Result<Self> {
        Self::ellipse(center, radius, radius, n, turns)
    }

    pub fn ellipse(center: Vec2<F>, a: F, b: F, n: usize, turns: i32) -> Result<Self> {
        if n < 3 || turns == 0 {
            return Err(Error::DegeneratePath);
        }
        let total = n * turns.unsigned_abs() as usize;
        let dir = if turns > 0 { F::one() } else { -F::one() };
        let mut vertices = Vec::with_capacity(total + 1);
        for k in 0..total {
            let t = dir * F::lit(2.0) * F::PI() * F::from_usize(k).unwrap() / F::from_usize(n).unwrap();
            vertices.push([center[0] + a * t.cos(), center[1] + b * t.sin()]);
        }
        vertices.push(vertices[0]);
        Self::new(vertices)
    }

    /// Axis-aligned rectangle, counter-clockwise.
    pub fn rectangle(min: Vec2<F>, max: Vec2<F>) -> Result<Self> {
        Self::polygon(vec![min, [max[0], min[1]], max, [min[0], max[1]]])
    }

    pub fn vertices(&self) -> &[Vec2<F>] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Vec2<F>, Vec2<F>)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Signed number of turns about the charge axis.
    pub fn winding_number(&self) -> Result<i64> {
        if !self.is_closed() {
            return Err(Error::OpenPath);
        }
        self.check_segments()?;
        let total: F = self
            .segments()
            .map(|(a, b)| {
                let cross = a[0] * b[1] - a[1] * b[0];
                let dot = a[0] * b[0] + a[1] * b[1];
                cross.atan2(dot)
            })
            .sum();
        Ok((total / (F::lit(2.0) * F::PI())).round().to_i64().unwrap_or(0))
    }

    fn check_segments(&self) -> Result<()> {
        for (k, (a, b)) in self.segments().enumerate() {
            if distance_to_origin(a, b) <= F::epsilon() * norm(a).max(norm(b)) {
                return Err(Error::SegmentCrossesAxis(k));
            }
        }
        Ok(())
    }
}

fn norm<F: Real>(v: Vec2<F>) -> F {
    v[0].hypot(v[1])
}

/// Distance from the origin to the segment [a, b].
pub fn distance_to_origin<F: Real>(a: Vec2<F>, b: Vec2<F>) -> F {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    if len2 == F::zero() {
        return norm(a);
    }
    let t = (-(a[0] * d[0] + a[1] * d[1]) / len2).max(F::zero()).min(F::one());
    norm([a[0] + t * d[0], a[1] + t * d[1]])
}

/// Line integral of a 2-d vector field along every segment of `path`, each
/// segment integrated adaptively with an equal share of `tol`.
pub fn path_integral<F: Real>(field: impl Fn(Vec2<F>) -> Vec2<F>, path: &LoopPath<F>, tol: F) -> Result<F> {
    path.check_segments()?;
    let n = F::from_usize(path.vertices.len() - 1).unwrap();
    let share = tol / n;
    let mut total = F::zero();
    for (a, b) in path.segments() {
        let d = [b[0] - a[0], b[1] - a[1]];
        let integrand = |t: F| {
            let v = field([a[0] + t * d[0], a[1] + t * d[1]]);
            v[0] * d[0] + v[1] * d[1]
        };
        total = total + quadrature::adaptive(integrand, F::zero(), F::one(), share)?;
    }
    Ok(total)
}

/// Circulation of `aprime` around a closed path.
pub fn loop_integral<F: Real>(aprime: impl Fn(Vec2<F>) -> Vec2<F>, path: &LoopPath<F>, tol: F) -> Result<F> {
    if !path.is_closed() {
        return Err(Error::OpenPath);
    }
    path_integral(aprime, path, tol)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussCheck<F> {
    /// Outward flux of E through the contour (counter-clockwise orientation).
    pub flux: F,
    /// Winding number times the configured line density.
    pub enclosed_charge: F,
}

/// Contour flux of the in-plane electric field against the enclosed line charge.
pub fn gauss_check<F: Real>(field: &FieldConfig<F>, region: &LoopPath<F>, tol: F) -> Result<GaussCheck<F>> {
    let winding = region.winding_number()?;
    // E . n dl with n dl = (dy, -dx) is the circulation of the rotated field (-E2, E1).
    let flux = loop_integral(
        |x| {
            let e = field.e_at([x[0], x[1], F::zero()]).unwrap_or([F::nan(); 3]);
            [-e[1], e[0]]
        },
        region,
        tol,
    )?;
    Ok(GaussCheck { flux, enclosed_charge: F::from_i64(winding).unwrap() * field.line_density() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_density_has_zero_field() {
        assert_eq!(line_charge_e(0.0, [0.3, -2.0]).unwrap(), [0.0, 0.0]);
        assert_eq!(line_charge_e(1.0, [0.0, 0.0]), Err(Error::Singularity));
    }

    #[test]
    fn two_pi_density_at_unit_radius() {
        let e = line_charge_e(2.0 * std::f64::consts::PI, [1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(e[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[1], 0.0);
    }

    #[test]
    fn tensor_layout() {
        let f = field_tensor([1.0, 0.0, 0.0], [0.0; 3]);
        let mut expected = [[0.0; 4]; 4];
        expected[0][1] = 1.0;
        expected[1][0] = -1.0;
        assert_eq!(f, expected);
        assert_eq!(field_tensor([0.0; 3], [0.0; 3]), [[0.0; 4]; 4]);
        let g = field_tensor([0.1, -0.2, 0.3], [1.5, 2.5, -3.5]);
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(g[mu][nu], -g[nu][mu]);
            }
        }
        // F^{12} = -B_3
        assert_eq!(g[1][2], 3.5);
        let low = lower_tensor(&g);
        assert_eq!(low[0][1], -0.1);
        assert_eq!(low[1][2], 3.5);
    }

    #[test]
    fn path_construction() {
        assert_eq!(LoopPath::<f64>::new(vec![[1.0, 0.0]]), Err(Error::DegeneratePath));
        assert_eq!(LoopPath::new(vec![[0.0, 0.0], [1.0, 0.0]]), Err(Error::Singularity));
        let open = LoopPath::new(vec![[1.0, 0.0], [2.0, 0.0]]).unwrap();
        assert!(!open.is_closed());
        assert_eq!(loop_integral(|_| [1.0, 0.0], &open, 1e-9), Err(Error::OpenPath));
        let through = LoopPath::polygon(vec![[-1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(through.winding_number(), Err(Error::SegmentCrossesAxis(0)));
    }

    #[test]
    fn winding_numbers() {
        let c = LoopPath::circle([0.0, 0.0], 1.0, 16, 1).unwrap();
        assert_eq!(c.winding_number().unwrap(), 1);
        let c2 = LoopPath::circle([0.2, 0.1], 1.0, 16, 2).unwrap();
        assert_eq!(c2.winding_number().unwrap(), 2);
        let cw = LoopPath::circle([0.0, 0.0], 1.0, 16, -1).unwrap();
        assert_eq!(cw.winding_number().unwrap(), -1);
        let off = LoopPath::rectangle([2.0, 2.0], [3.0, 4.0]).unwrap();
        assert_eq!(off.winding_number().unwrap(), 0);
    }

    #[test]
    fn zero_potential_has_zero_circulation() {
        let c = LoopPath::circle([0.0, 0.0], 1.0, 8, 1).unwrap();
        assert_eq!(loop_integral(|_| [0.0, 0.0], &c, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn gauss_law_on_unit_circle() {
        let field = FieldConfig::line_charge(1.0);
        let c = LoopPath::circle([0.0, 0.0], 1.0, 64, 1).unwrap();
        let g = gauss_check(&field, &c, 1e-9).unwrap();
        assert_abs_diff_eq!(g.flux, 1.0, epsilon = 1e-9);
        assert_eq!(g.enclosed_charge, 1.0);
        let away = LoopPath::rectangle([0.5, 0.5], [1.5, 2.0]).unwrap();
        let g0 = gauss_check(&field, &away, 1e-9).unwrap();
        assert_abs_diff_eq!(g0.flux, 0.0, epsilon = 1e-9);
        assert_eq!(g0.enclosed_charge, 0.0);
    }

    #[test]
    fn ac_condition_guards() {
        let ok = FieldConfig::uniform_e([0.0, 1.0, 0.0]);
        assert!(ok.check_ac(&[]).is_ok());
        let with_b = FieldConfig::uniform([0.0, 1.0, 0.0], [0.0, 0.0, 0.1]);
        assert!(matches!(with_b.check_ac(&[]), Err(Error::NotAcConfiguration(_))));
        let with_e3 = FieldConfig::uniform_e([0.0, 1.0, 0.2]);
        assert!(with_e3.check_ac(&[]).is_err());
        let depends_on_z = FieldConfig::custom(0.0, |x: [f64; 3]| ([x[2], 0.0, 0.0], [0.0; 3]));
        assert!(depends_on_z.check_ac(&[[1.0, 1.0, 0.0]]).is_err());
    }
}
