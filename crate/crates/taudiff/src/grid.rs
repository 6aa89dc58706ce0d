//! Grid geometry and fractional-problem parameters.

use crate::error::{Error, Result};

/// Uniform space-time grid on the rectangle (a, b) × (c, d).
///
/// Interior nodes are x_i = a + i·hx (i = 1..n1) and y_j = c + j·hy
/// (j = 1..n2) with hx = (b−a)/(n1+1), hy = (d−c)/(n2+1); the rectangle
/// boundary carries the homogeneous Dirichlet condition and is eliminated
/// from the unknown vector. Time is split into m steps of dt = T/m.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub t_final: f64,
}

impl GridSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        n1: usize,
        n2: usize,
        m: usize,
        t_final: f64,
    ) -> Result<Self> {
        if !(b > a && d > c) {
            return Err(Error::ParameterDomain(format!(
                "rectangle bounds must satisfy a < b and c < d, got ({a}, {b}) x ({c}, {d})"
            )));
        }
        if n1 == 0 || n2 == 0 || m == 0 {
            return Err(Error::ParameterDomain(
                "grid sizes n1, n2 and step count m must be positive".into(),
            ));
        }
        if !(t_final > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "final time must be positive, got {t_final}"
            )));
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            n1,
            n2,
            m,
            t_final,
        })
    }

    pub fn hx(&self) -> f64 {
        (self.b - self.a) / (self.n1 + 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.d - self.c) / (self.n2 + 1) as f64
    }

    pub fn dt(&self) -> f64 {
        self.t_final / self.m as f64
    }

    /// Interior node abscissa, i = 1..=n1.
    pub fn x(&self, i: usize) -> f64 {
        self.a + i as f64 * self.hx()
    }

    /// Interior node ordinate, j = 1..=n2.
    pub fn y(&self, j: usize) -> f64 {
        self.c + j as f64 * self.hy()
    }

    /// Number of unknowns n1·n2.
    pub fn n_unknowns(&self) -> usize {
        self.n1 * self.n2
    }
}

/// Riesz scaling constant c_α = −1/(2 cos(απ/2)), positive on (1, 2).
pub fn riesz_constant(alpha: f64) -> f64 {
    -1.0 / (2.0 * (alpha * std::f64::consts::FRAC_PI_2).cos())
}

/// Fractional orders, diffusivities, and the derived scheme constants.
#[derive(Debug, Clone, Copy)]
pub struct FractionalParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub kx: f64,
    pub ky: f64,
    pub c_alpha1: f64,
    pub c_alpha2: f64,
    /// cx = dt·kx·c_α1 / hx^α1
    pub cx: f64,
    /// cy = dt·ky·c_α2 / hy^α2
    pub cy: f64,
}

impl FractionalParams {
    pub fn new(alpha1: f64, alpha2: f64, kx: f64, ky: f64, grid: &GridSpec) -> Result<Self> {
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
        let c_alpha1 = riesz_constant(alpha1);
        let c_alpha2 = riesz_constant(alpha2);
        let dt = grid.dt();
        let cx = dt * kx * c_alpha1 / grid.hx().powf(alpha1);
        let cy = dt * ky * c_alpha2 / grid.hy().powf(alpha2);
        debug_assert!(c_alpha1 > 0.0 && c_alpha2 > 0.0 && cx > 0.0 && cy > 0.0);
        Ok(Self {
            alpha1,
            alpha2,
            kx,
            ky,
            c_alpha1,
            c_alpha2,
            cx,
            cy,
        })
    }
}
