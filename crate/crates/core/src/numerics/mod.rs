//! Special functions and quadrature primitives shared by the physics modules.
//!
//! Re-exports:
//! - [`fresnel_c`], [`fresnel_s`]: Fresnel integrals C(u), S(u)
//! - [`erfc_complex`], [`erf_complex`], [`faddeeva_w`]: complex error functions
//! - [`integrate_1d`], [`integrate_2d`]: adaptive Gauss–Kronrod quadrature of
//!   complex-valued integrands, with optional phase-derivative hints
//! - [`real_roots_in_interval`]: real root isolation for low-degree polynomials

mod erfc;
mod fresnel;
mod quad;
mod roots;

pub use erfc::{erf_complex, erfc_complex, faddeeva_w};
pub use fresnel::{fresnel_c, fresnel_s};
pub use quad::{integrate_1d, integrate_1d_hinted, integrate_2d, integrate_2d_hinted, Quadrature};
pub use roots::real_roots_in_interval;

use crate::error::{Error, Result};

/// Controls for the adaptive quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
    /// Maximum phase advance (radians) per panel when a phase-derivative
    /// hint is supplied; panels are pre-split to stay under this budget.
    pub panel_oscillation_budget: f64,
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0)
            || !(self.absolute_tolerance >= 0.0)
            || self.max_subdivisions < 1
            || !(self.panel_oscillation_budget > 0.0)
        {
            return Err(Error::Domain(format!("invalid quadrature spec: {self:?}")));
        }
        Ok(())
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn with_tolerances(mut self, rel: f64, abs: f64) -> Self {
        self.relative_tolerance = rel;
        self.absolute_tolerance = abs;
        self
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-10,
            absolute_tolerance: 1e-14,
            max_subdivisions: 2000,
            panel_oscillation_budget: std::f64::consts::PI,
        }
    }
}
