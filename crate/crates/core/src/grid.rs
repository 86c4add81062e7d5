//! Finite-difference residuals on a rectangular patch of the 1-2 plane.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{distance_to_origin, FieldConfig};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// Spacetime point `(t, x1, x2, x3)`.
pub type Point<F> = [F; 4];
pub type Spinor<F> = Vec<Complex<F>>;

/// Node set for residual sampling: an `n1 x n2` uniform grid over a rectangle
/// at time `t` and `x3 = 0`. Residuals are taken at interior nodes only; the
/// finite-difference step is chosen independently so that refining it keeps the
/// sampled points fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid<F> {
    pub t: F,
    pub x1: (F, F),
    pub x2: (F, F),
    pub n1: usize,
    pub n2: usize,
}

impl<F: Real> Grid<F> {
    /// Square patch of half-width `half` centered at `center`.
    pub fn square(center: [F; 2], half: F, n: usize) -> Self {
        Self {
            t: F::zero(),
            x1: (center[0] - half, center[0] + half),
            x2: (center[1] - half, center[1] + half),
            n1: n,
            n2: n,
        }
    }

    pub fn center(&self) -> [F; 2] {
        let two = F::lit(2.0);
        [(self.x1.0 + self.x1.1) / two, (self.x2.0 + self.x2.1) / two]
    }

    /// Rejects grids that are too coarse or that come within `10 h` of the charge axis.
    pub fn validate(&self, field: &FieldConfig<F>, h: F) -> Result<()> {
        if self.n1 < 3 || self.n2 < 3 {
            return Err(Error::GridTooSmall(self.n1, self.n2));
        }
        if !(h > F::zero()) || !h.is_finite() || !(self.x1.1 > self.x1.0) || !(self.x2.1 > self.x2.0) {
            return Err(Error::BadTolerance);
        }
        if field.singular_on_axis() {
            let required = F::lit(10.0) * h;
            let distance = self.distance_to_axis();
            if distance < required {
                return Err(Error::GridNearSingularity { distance: distance.as_f64(), required: required.as_f64() });
            }
        }
        Ok(())
    }

    /// Distance from the rectangle (grown by nothing) to the origin of the plane.
    pub fn distance_to_axis(&self) -> F {
        let inside_x = self.x1.0 <= F::zero() && F::zero() <= self.x1.1;
        let inside_y = self.x2.0 <= F::zero() && F::zero() <= self.x2.1;
        if inside_x && inside_y {
            return F::zero();
        }
        let corners = [[self.x1.0, self.x2.0], [self.x1.1, self.x2.0], [self.x1.1, self.x2.1], [self.x1.0, self.x2.1]];
        (0..4)
            .map(|k| distance_to_origin(corners[k], corners[(k + 1) % 4]))
            .fold(F::infinity(), F::min)
    }

    pub fn nodes(&self) -> Vec<Point<F>> {
        let step = |(lo, hi): (F, F), n: usize, k: usize| lo + (hi - lo) * F::from_usize(k).unwrap() / F::from_usize(n - 1).unwrap();
        let mut out = Vec::with_capacity(self.n1 * self.n2);
        for i in 0..self.n1 {
            for j in 0..self.n2 {
                out.push([self.t, step(self.x1, self.n1, i), step(self.x2, self.n2, j), F::zero()]);
            }
        }
        out
    }

    pub fn interior_nodes(&self) -> Vec<Point<F>> {
        let all = self.nodes();
        let n2 = self.n2;
        all.into_iter()
            .enumerate()
            .filter(|(k, _)| {
                let (i, j) = (k / n2, k % n2);
                i > 0 && i + 1 < self.n1 && j > 0 && j + 1 < n2
            })
            .map(|(_, p)| p)
            .collect()
    }
}

/// Second-order central difference of a vector-valued field along coordinate `mu`.
pub fn central_diff<F: Real, V>(f: &V, x: Point<F>, mu: usize, h: F) -> Spinor<F>
where
    V: Fn(Point<F>) -> Spinor<F> + ?Sized,
{
    let mut fwd = x;
    let mut bwd = x;
    fwd[mu] = fwd[mu] + h;
    bwd[mu] = bwd[mu] - h;
    let a = f(fwd);
    let b = f(bwd);
    let inv = Complex::new(F::one() / (F::lit(2.0) * h), F::zero());
    a.iter().zip(&b).map(|(p, q)| (p - q) * inv).collect()
}

pub fn max_abs<F: Real>(v: &[Complex<F>]) -> F {
    v.iter().map(|z| z.norm()).fold(F::zero(), F::max)
}

/// Pointwise value of `(i M^mu d_mu + V(x) - m) psi` with central differences.
pub fn first_order_residual_at<F: Real>(
    coeffs: &[Matrix<Complex<F>>; 4],
    interaction: &Matrix<Complex<F>>,
    mass: F,
    psi: &(dyn Fn(Point<F>) -> Spinor<F> + Sync),
    x: Point<F>,
    h: F,
) -> Spinor<F> {
    let i = Complex::new(F::zero(), F::one());
    let value = psi(x);
    let mut out: Spinor<F> = interaction
        .apply(&value)
        .expect("interaction shape")
        .into_iter()
        .zip(&value)
        .map(|(v, p)| v - p * mass)
        .collect();
    for (mu, m) in coeffs.iter().enumerate() {
        let d = central_diff(psi, x, mu, h);
        for (o, t) in out.iter_mut().zip(m.apply(&d).expect("coefficient shape")) {
            *o = *o + i * t;
        }
    }
    out
}

/// Max-norm over interior nodes of a pointwise residual, evaluated in parallel.
pub fn max_over_interior<F: Real>(grid: &Grid<F>, pointwise: impl Fn(Point<F>) -> Result<F> + Sync + Send) -> Result<F> {
    let values: Result<Vec<F>> = grid.interior_nodes().into_par_iter().map(pointwise).collect();
    Ok(values?.into_iter().fold(F::zero(), F::max))
}

/// `log2(r(h) / r(h/2))`.
pub fn convergence_order<F: Real>(coarse: F, fine: F) -> F {
    (coarse / fine).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_count() {
        let g = Grid::square([1.0, 0.0], 0.1, 5);
        assert_eq!(g.nodes().len(), 25);
        assert_eq!(g.interior_nodes().len(), 9);
    }

    #[test]
    fn validation() {
        let line = FieldConfig::line_charge(1.0);
        assert_eq!(Grid::square([1.0, 0.0], 0.1, 2).validate(&line, 0.01), Err(Error::GridTooSmall(2, 2)));
        let near = Grid::square([0.2, 0.0], 0.1, 5);
        assert!(matches!(near.validate(&line, 0.02), Err(Error::GridNearSingularity { .. })));
        assert!(near.validate(&FieldConfig::uniform_e([0.0, 1.0, 0.0]), 0.02).is_ok());
        let touching = Grid::square([0.0, 0.0], 0.1, 5);
        assert_eq!(touching.distance_to_axis(), 0.0);
    }

    #[test]
    fn central_difference_is_second_order() {
        let f = |x: Point<f64>| vec![Complex::new(x[1].sin(), 0.0)];
        let x = [0.0, 0.7, 0.0, 0.0];
        let err = |h: f64| (central_diff(&f, x, 1, h)[0].re - 0.7f64.cos()).abs();
        let order = convergence_order(err(1e-2), err(5e-3));
        assert!((order - 2.0).abs() < 0.01, "{order}");
    }
}
