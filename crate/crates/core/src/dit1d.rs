//! One-dimensional diffraction in time (shutter problem): a source at x0 < 0,
//! a shutter at x1 = 0 that opens at time t1 ≥ 0, observation at x > 0.
//!
//! The absorbing-shutter propagator has both a closed form (an erfc
//! expression) and a time-integral representation used as an oracle:
//!
//!   K⁰(x,t; X,0) = ½ ∫_{t1}^t dτ [−X/τ + x/(t−τ)] G₀(x; t−τ) G₀(−X; τ)
//!
//! The integrand is a perfect derivative: with
//!   w(τ) = (xτ + X(t−τ)) √(m/(2iℏt)) / √(τ(t−τ))
//! one has K⁰ = G₀(x−X; t) · ½ erfc(w(t1)) (principal branch of the square
//! root, √(1/i) = e^{−iπ/4}). This is derived by differentiating erfc(w(τ))
//! and matching the integrand exactly; it fixes both the branch and the
//! overall constant, and is verified against the integral oracle in tests.
//!
//! The integral oracle evaluates the τ-integral on a fixed complex contour
//! τ(s) = t1 + (t−t1)(s + iδ s(1−s)(2s−1)), which leaves the lower endpoint
//! into the lower half-plane and approaches the upper endpoint from the upper
//! half-plane. Along those directions both oscillatory endpoint singularities
//! become exponentially damped, while the contour keeps Re τ ∈ (t1, t) so no
//! branch cut of the kernels is crossed; by analyticity the value equals the
//! real-line improper integral.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::free_propagators::{free_kernel_ct, g0_free_1d};
use crate::numerics::{erfc_complex, integrate_1d, QuadratureSpec};
use crate::types::{BoundaryCondition, Particle};

/// Shutter geometry: source x0 < 0, shutter at the origin opening at t1,
/// observation at x > 0 and time t > t1.
#[derive(Debug, Clone, Copy)]
pub struct ShutterProblem1D {
    pub x0: f64,
    pub x: f64,
    pub t: f64,
    pub t1: f64,
    pub bc: BoundaryCondition,
    pub particle: Particle,
}

impl ShutterProblem1D {
    pub fn new(
        x0: f64,
        x: f64,
        t: f64,
        t1: f64,
        bc: BoundaryCondition,
        particle: Particle,
    ) -> Result<Self> {
        if !(x0 < 0.0 && x > 0.0) {
            return Err(Error::Domain(format!("require x0 < 0 < x, got x0={x0}, x={x}")));
        }
        if !(t > 0.0 && (0.0..t).contains(&t1)) {
            return Err(Error::Domain(format!("require 0 <= t1 < t, got t1={t1}, t={t}")));
        }
        Ok(Self { x0, x, t, t1, bc, particle })
    }
}

/// Closed form of K⁰ for an arbitrary source coordinate (used at ±X for the
/// image combination).
fn k0_closed_at(x: f64, source: f64, t: f64, t1: f64, p: &Particle) -> Result<Complex64> {
    let g0 = g0_free_1d(x - source, t, p)?;
    let erfc_val = if t1 == 0.0 {
        // Limit of the erfc argument as t1 → 0⁺: ±∞ along e^{∓iπ/4}·sign.
        if source < 0.0 {
            Complex64::new(2.0, 0.0)
        } else if source > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    } else {
        let root = (p.mass * t / (2.0 * p.hbar * t1 * (t - t1))).sqrt();
        let branch = Complex64::from_polar(root, -std::f64::consts::FRAC_PI_4);
        let w = branch * ((x * t1 + source * (t - t1)) / t);
        erfc_complex(w)?
    };
    Ok(g0 * erfc_val * 0.5)
}

/// Time-integral form of K⁰, evaluated on the deformed contour.
fn k0_integral_at(
    x: f64,
    source: f64,
    t: f64,
    t1: f64,
    p: &Particle,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let half = Complex64::new(0.5, 0.0);
    k_bracket_integral(t, t1, p, spec, (x * x).max(source * source), |tau, t_minus| {
        let bracket = -source / tau + x / t_minus;
        let k_out = free_kernel_ct((x * x).into(), t_minus, p, 1);
        let k_in = free_kernel_ct((source * source).into(), tau, p, 1);
        half * bracket * k_out * k_in
    })
}

/// Integrate f(τ, t−τ) over τ from t1 to t on a complex contour that damps the
/// oscillatory endpoint singularities of the shutter integrand.
///
/// For t1 > 0 only the upper endpoint τ = t is singular, and the contour is an
/// upward bump τ = t1 + T(s + iδ s(1−s)); approaching t from the upper
/// half-plane turns e^{imx²/2ℏ(t−τ)} into exponential decay. For t1 = 0 the
/// lower endpoint needs the opposite orientation, so an S-shaped twist
/// τ = T(s + iδ s(1−s)(2s−1)) is used, which dips below the axis near τ = 0
/// (damping e^{imX²/2ℏτ}) and rises above it near τ = t. In both cases δ is
/// capped so that the off-axis growth of the *other*, regular kernel factor
/// stays within a safe exponent, preventing overflow for extreme geometries.
/// The contour keeps Re τ inside (t1, t) where the integrand is analytic, so
/// the value equals the improper real-line integral.
fn k_bracket_integral(
    t: f64,
    t1: f64,
    p: &Particle,
    spec: &QuadratureSpec,
    q_sqr_max: f64,
    f: impl Fn(Complex64, Complex64) -> Complex64,
) -> Result<Complex64> {
    let big_t = t - t1;
    let scale = p.mass / (2.0 * p.hbar);
    let q_sqr_max = q_sqr_max.max(1e-300);
    let g = |s: f64| -> Complex64 {
        let (twist, dtwist) = if t1 == 0.0 {
            (
                Complex64::new(s, s * (1.0 - s) * (2.0 * s - 1.0)),
                Complex64::new(1.0, -6.0 * s * s + 6.0 * s - 1.0),
            )
        } else {
            (
                Complex64::new(s, s * (1.0 - s)),
                Complex64::new(1.0, 1.0 - 2.0 * s),
            )
        };
        let delta = if t1 == 0.0 {
            // Off-axis growth exponent ≲ scale·q²·δ·0.4/t; cap it at ~30.
            0.5f64.min(75.0 * t / (scale * q_sqr_max))
        } else {
            // Growth of the incoming kernel ≲ scale·q²·δ·T/(4 t1²); cap at ~30.
            0.5f64.min(120.0 * t1 * t1 / (scale * q_sqr_max * big_t))
        };
        let tau = t1 + big_t * Complex64::new(twist.re, delta * twist.im);
        let dtau = big_t * Complex64::new(dtwist.re, delta * dtwist.im);
        let t_minus = t - tau;
        if tau.norm() == 0.0 || t_minus.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        f(tau, t_minus) * dtau
    };
    Ok(integrate_1d(g, 0.0, 1.0, spec)?.value)
}

/// Absorbing-shutter propagator, closed erfc form.
pub fn k0_absorbing_closed(p: &ShutterProblem1D) -> Result<Complex64> {
    k0_closed_at(p.x, p.x0, p.t, p.t1, &p.particle)
}

/// Absorbing-shutter propagator by direct time quadrature (oracle).
pub fn k0_absorbing_integral(p: &ShutterProblem1D) -> Result<Complex64> {
    let spec = QuadratureSpec::default()
        .with_tolerances(1e-9, 1e-16)
        .with_max_subdivisions(20_000);
    k0_integral_at(p.x, p.x0, p.t, p.t1, &p.particle, &spec)
}

/// General-boundary-condition shutter propagator:
/// K^G = λ1 K⁰(X) − λ2 K⁰(−X) with X = x0.
pub fn k_general_bc(p: &ShutterProblem1D) -> Result<Complex64> {
    let direct = k0_closed_at(p.x, p.x0, p.t, p.t1, &p.particle)?;
    let image = k0_closed_at(p.x, -p.x0, p.t, p.t1, &p.particle)?;
    Ok(p.bc.lambda1 * direct - p.bc.lambda2 * image)
}

/// Shutter wave function for a Gaussian source of width σ centered at x0:
/// ψ(x,t) = ∫ dX K⁰(x,t;X,0|t1) e^{−(X−x0)²/4σ²} / (2πσ²)^{1/4}.
pub fn psi_gaussian_1d(p: &ShutterProblem1D, sigma: f64) -> Result<Complex64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("psi_gaussian_1d requires sigma > 0, got {sigma}")));
    }
    let norm = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25);
    let lo = p.x0 - 8.0 * sigma;
    let hi = (p.x0 + 8.0 * sigma).min(-1e-12 * sigma.max(p.x0.abs()));
    let spec = QuadratureSpec::default().with_tolerances(1e-9, 1e-16);
    let q = integrate_1d(
        |source| {
            let k = k0_closed_at(p.x, source, p.t, p.t1, &p.particle)
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            let gauss = (-(source - p.x0).powi(2) / (4.0 * sigma * sigma)).exp();
            k * gauss * norm
        },
        lo,
        hi,
        &spec,
    )?;
    Ok(q.value)
}
