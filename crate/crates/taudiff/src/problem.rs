//! Problem definitions: membership region, initial value, source term, and
//! the elliptical-domain benchmark problem with a manufactured solution.

use crate::error::{Error, Result};
use crate::grid::riesz_constant;
use crate::special::gamma;

type RegionFn = dyn Fn(f64, f64) -> bool + Send + Sync;
type FieldFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type SourceFn = dyn Fn(f64, f64, f64, f64) -> f64 + Send + Sync;
type ExactFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

/// A diffusion problem on a region Ω embedded in the grid rectangle.
///
/// The initial value, source, and exact solution are zero-extended: the
/// accessors return 0 at points outside Ω regardless of the wrapped closure.
pub struct ProblemDef {
    region: Box<RegionFn>,
    u0: Box<FieldFn>,
    source: Box<SourceFn>,
    exact: Option<Box<ExactFn>>,
}

impl std::fmt::Debug for ProblemDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemDef")
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemDef {
    pub fn new(
        region: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
        u0: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        source: impl Fn(f64, f64, f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            region: Box::new(region),
            u0: Box::new(u0),
            source: Box::new(source),
            exact: None,
        }
    }

    pub fn with_exact(
        mut self,
        exact: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.exact = Some(Box::new(exact));
        self
    }

    pub fn in_region(&self, x: f64, y: f64) -> bool {
        (self.region)(x, y)
    }

    /// Initial value, zero outside Ω.
    pub fn initial(&self, x: f64, y: f64) -> f64 {
        if self.in_region(x, y) {
            (self.u0)(x, y)
        } else {
            0.0
        }
    }

    /// Source f(u, x, y, t), zero outside Ω.
    pub fn source(&self, u: f64, x: f64, y: f64, t: f64) -> f64 {
        if self.in_region(x, y) {
            (self.source)(u, x, y, t)
        } else {
            0.0
        }
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact solution when known, zero-extended outside Ω.
    pub fn exact(&self, x: f64, y: f64, t: f64) -> Option<f64> {
        self.exact.as_ref().map(|e| {
            if self.in_region(x, y) {
                e(x, y, t)
            } else {
                0.0
            }
        })
    }
}

/// One Riemann-Liouville derivative of the chord quartic s²(s−2d)²:
/// h(α, s, d) = 24 s^(4−α)/Γ(5−α) − 24 d s^(3−α)/Γ(4−α) + 8 d² s^(2−α)/Γ(3−α).
fn chord_derivative(alpha: f64, s: f64, d: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    24.0 * s.powf(4.0 - alpha) / gamma(5.0 - alpha)
        - 24.0 * d * s.powf(3.0 - alpha) / gamma(4.0 - alpha)
        + 8.0 * d * d * s.powf(2.0 - alpha) / gamma(3.0 - alpha)
}

/// Benchmark problem on the ellipse (x−a)²/a² + (y−b)²/b² ≤ 1 hosted by the
/// rectangle (0, 2a) × (0, 2b).
///
/// The exact solution is u = e^(−t)·((x−a)²/a² + (y−b)²/b² − 1)² and the
/// source is manufactured so that u satisfies the diffusion equation with
/// diffusivities kx, ky and orders α1, α2.
pub fn elliptical_problem(
    a: f64,
    b: f64,
    alpha1: f64,
    alpha2: f64,
    kx: f64,
    ky: f64,
) -> Result<ProblemDef> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "semi-axes must be positive, got a={a}, b={b}"
        )));
    }
    for (name, alpha) in [("alpha1", alpha1), ("alpha2", alpha2)] {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::ParameterDomain(format!(
                "{name} must lie in (1, 2), got {alpha}"
            )));
        }
    }
    if !(kx > 0.0 && ky > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "diffusivities must be positive, got kx={kx}, ky={ky}"
        )));
    }

    let level = move |x: f64, y: f64| {
        (x - a) * (x - a) / (a * a) + (y - b) * (y - b) / (b * b) - 1.0
    };
    let region = move |x: f64, y: f64| level(x, y) <= 0.0;
    let exact = move |x: f64, y: f64, t: f64| (-t).exp() * level(x, y) * level(x, y);
    let u0 = move |x: f64, y: f64| exact(x, y, 0.0);

    let c_a1 = riesz_constant(alpha1);
    let c_a2 = riesz_constant(alpha2);
    let source = move |u: f64, x: f64, y: f64, t: f64| {
        // Half-chord lengths of the ellipse through (x, y).
        let cy = a * (1.0 - (y - b) * (y - b) / (b * b)).max(0.0).sqrt();
        let cx = b * (1.0 - (x - a) * (x - a) / (a * a)).max(0.0).sqrt();
        let et = (-t).exp();
        let fx = kx * c_a1 * et / (a * a * a * a)
            * (chord_derivative(alpha1, x - a + cy, cy)
                + chord_derivative(alpha1, a + cy - x, cy));
        let fy = ky * c_a2 * et / (b * b * b * b)
            * (chord_derivative(alpha2, y - b + cx, cx)
                + chord_derivative(alpha2, b + cx - y, cx));
        -u - fx - fy
    };

    Ok(ProblemDef::new(region, u0, source).with_exact(exact))
}
