//! Exact and semiclassical 3D one-point-source slit propagators.
//!
//! The propagator from a source r0 (x0 < 0) through a fixed point r1 on the
//! slit plane x = 0 to a screen point r (x > 0) in time t is, as a surface
//! integral over the opening time τ,
//!
//!   K(r,t; r0,0 | r1) = ∫₀ᵗ dτ [−x0/τ η1 + x/(t−τ) η2] G₀(r−r1; t−τ) G₀(r1−r0; τ)
//!
//! and has the closed form K = A_t e^{iφ_t}, φ_t = m ρ²/(2ℏt) with
//! ρ = |r−r1| + |r1−r0|, A_t = η1 A^N + η2 A^D. The stationary-phase
//! (semiclassical) approximation keeps only the leading terms of A^N/A^D and
//! is accurate to O(1/μ), μ = m ρ²/(ℏt).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::free_propagators::free_kernel_ct;
use crate::numerics::{integrate_1d, QuadratureSpec};
use crate::types::{BoundaryCondition, Particle, Vec3};

/// Source, slit-plane point, screen point and flight time.
#[derive(Debug, Clone, Copy)]
pub struct PointSourceGeometry {
    pub r0: Vec3,
    pub r1: Vec3,
    pub r: Vec3,
    pub t: f64,
    pub bc: BoundaryCondition,
    pub particle: Particle,
}

impl PointSourceGeometry {
    pub fn new(
        r0: Vec3,
        r1: Vec3,
        r: Vec3,
        t: f64,
        bc: BoundaryCondition,
        particle: Particle,
    ) -> Result<Self> {
        if !(r0.x < 0.0) || !(r.x > 0.0) || r1.x != 0.0 {
            return Err(Error::Domain(format!(
                "require r0.x < 0 = r1.x < r.x, got x0={}, x1={}, x={}",
                r0.x, r1.x, r.x
            )));
        }
        if !(t > 0.0) {
            return Err(Error::Domain(format!("require t > 0, got {t}")));
        }
        Ok(Self { r0, r1, r, t, bc, particle })
    }

    /// Leg from source to slit point.
    pub fn u1(&self) -> Vec3 {
        self.r1 - self.r0
    }

    /// Leg from slit point to screen point.
    pub fn u2(&self) -> Vec3 {
        self.r - self.r1
    }

    /// Semiclassical path length ρ = |u2| + |u1|.
    pub fn rho_path(&self) -> f64 {
        self.u1().norm() + self.u2().norm()
    }
}

/// Diagnostic numbers controlling semiclassical validity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalDiagnostics {
    /// μ = m ρ²/(ℏt) with ρ the source–slit–screen path length; the phase of
    /// the propagator is μ/2, and the stationary-phase error is O(1/μ).
    pub mu: f64,
    /// The stationary-phase variant μ/2 (both normalizations are in use).
    pub mu_sp: f64,
    /// Quantum fluctuation length λ0 = √(2πℏt/m).
    pub lambda0: f64,
    /// Stationary passage time through the slit plane.
    pub tau_sc: f64,
    /// Semiclassical path length |r−r1| + |r1−r0|.
    pub rho_path: f64,
}

/// (2iπℏt/m)^{−p/2} on the principal branch, continued to complex t.
fn inv_beta_pow(t: Complex64, p: f64, part: &Particle) -> Complex64 {
    let w = Complex64::new(0.0, 1.0) * t * (2.0 * std::f64::consts::PI * part.hbar / part.mass);
    w.powc(Complex64::new(-p / 2.0, 0.0))
}

/// Exact propagator phase φ_t = m ρ²/(2ℏt).
pub fn phase_exact(geo: &PointSourceGeometry) -> f64 {
    let rho = geo.rho_path();
    geo.particle.mass * rho * rho / (2.0 * geo.particle.hbar * geo.t)
}

/// Closed-form Neumann amplitude, including the subleading term.
pub fn amplitude_neumann(geo: &PointSourceGeometry) -> Complex64 {
    let p = &geo.particle;
    let u1 = geo.u1().norm();
    let u2 = geo.u2().norm();
    let rho = u1 + u2;
    let w3 = inv_beta_pow(geo.t.into(), 3.0, p);
    // m/(2iπℏt) = −i m/(2πℏt)
    let m_over = Complex64::new(0.0, -p.mass / (2.0 * std::f64::consts::PI * p.hbar * geo.t));
    let leading = m_over * (rho * rho / (u2 * u1 * u1));
    let subleading = Complex64::new(1.0 / (2.0 * std::f64::consts::PI * u1.powi(3)), 0.0);
    w3 * (-geo.r0.x) * (leading + subleading)
}

/// Closed-form Dirichlet amplitude; related to the Neumann one by the
/// symmetry (−x0 ↔ x, u1 ↔ u2).
pub fn amplitude_dirichlet(geo: &PointSourceGeometry) -> Complex64 {
    let p = &geo.particle;
    let u1 = geo.u1().norm();
    let u2 = geo.u2().norm();
    let rho = u1 + u2;
    let w3 = inv_beta_pow(geo.t.into(), 3.0, p);
    let m_over = Complex64::new(0.0, -p.mass / (2.0 * std::f64::consts::PI * p.hbar * geo.t));
    let leading = m_over * (rho * rho / (u1 * u2 * u2));
    let subleading = Complex64::new(1.0 / (2.0 * std::f64::consts::PI * u2.powi(3)), 0.0);
    w3 * geo.r.x * (leading + subleading)
}

/// Exact one-point-source propagator K = (η1 A^N + η2 A^D) e^{iφ_t}.
pub fn k_point_exact(geo: &PointSourceGeometry) -> Complex64 {
    let amp = geo.bc.eta1() * amplitude_neumann(geo) + geo.bc.eta2() * amplitude_dirichlet(geo);
    amp * Complex64::new(0.0, phase_exact(geo)).exp()
}

/// Direct τ-quadrature oracle at complexified times t(1−iε), extrapolated to
/// ε → 0 by polynomial (Neville) extrapolation in ε.
///
/// Each fixed-ε integral is evaluated on the contour
/// τ = t_ε (s + iδ s(1−s)(2s−1)), which approaches both endpoints along
/// exponentially damped directions; by analyticity this equals the straight
/// τ ∈ [0, t_ε] integral.
pub fn k_point_oracle(geo: &PointSourceGeometry, eps_list: &[f64]) -> Result<Complex64> {
    if eps_list.is_empty() {
        return Err(Error::Domain("eps_list must be non-empty".into()));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) || eps_list.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::Domain("eps_list must be positive and strictly decreasing".into()));
    }

    let values: Vec<Complex64> = eps_list
        .iter()
        .map(|&eps| k_point_at_complex_time(geo, eps))
        .collect::<Result<_>>()?;

    if values.len() == 1 {
        return Ok(values[0]);
    }
    let (value, err) = neville_at_zero(eps_list, &values);
    if err > 0.05 * value.norm() {
        return Err(Error::Convergence { estimate: value, error_bound: err });
    }
    Ok(value)
}

fn k_point_at_complex_time(geo: &PointSourceGeometry, eps: f64) -> Result<Complex64> {
    let p = &geo.particle;
    let eta1 = geo.bc.eta1();
    let eta2 = geo.bc.eta2();
    let u1_sqr = geo.u1().norm_sqr();
    let u2_sqr = geo.u2().norm_sqr();
    let t_eps = Complex64::new(geo.t, -geo.t * eps);
    let delta = 0.5;

    let f = |s: f64| -> Complex64 {
        let w = Complex64::new(s, delta * s * (1.0 - s) * (2.0 * s - 1.0));
        let tau = t_eps * w;
        let t_minus = t_eps * (1.0 - w);
        if tau.norm() == 0.0 || t_minus.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let dtau = t_eps * Complex64::new(1.0, delta * (-6.0 * s * s + 6.0 * s - 1.0));
        let bracket = eta1 * (-geo.r0.x) / tau + eta2 * geo.r.x / t_minus;
        let k_out = free_kernel_ct(u2_sqr.into(), t_minus, p, 3);
        let k_in = free_kernel_ct(u1_sqr.into(), tau, p, 3);
        bracket * k_out * k_in * dtau
    };
    let spec = QuadratureSpec::default()
        .with_tolerances(1e-9, 1e-18)
        .with_max_subdivisions(40_000);
    Ok(integrate_1d(f, 0.0, 1.0, &spec)?.value)
}

/// Polynomial extrapolation of (xs, ys) to x = 0 with an error estimate from
/// the last refinement step.
fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> (Complex64, f64) {
    let n = xs.len();
    let mut tab = ys.to_vec();
    let mut prev = tab[0];
    for m in 1..n {
        for i in 0..n - m {
            tab[i] = (tab[i + 1] * xs[i] - tab[i] * xs[i + m]) / (xs[i] - xs[i + m]);
        }
        if m == n - 1 {
            return (tab[0], (tab[0] - prev).norm());
        }
        prev = tab[0];
    }
    (tab[0], 0.0)
}

/// Stationary passage time τ_sc = |u1| t / (|u2| + |u1|).
pub fn tau_semiclassical(geo: &PointSourceGeometry) -> f64 {
    let u1 = geo.u1().norm();
    let u2 = geo.u2().norm();
    geo.t * u1 / (u1 + u2)
}

/// Stationary-phase propagator: the leading amplitude terms only,
/// K_sc = ρ²/((2iπℏt/m)^{5/2} |u2||u1|) (−x0/|u1| η1 + x/|u2| η2) e^{iφ_t}.
pub fn k_point_semiclassical(geo: &PointSourceGeometry) -> Complex64 {
    let u1 = geo.u1().norm();
    let u2 = geo.u2().norm();
    let rho = u1 + u2;
    let w5 = inv_beta_pow(geo.t.into(), 5.0, &geo.particle);
    let weights = geo.bc.eta1() * (-geo.r0.x / u1) + geo.bc.eta2() * (geo.r.x / u2);
    w5 * (rho * rho / (u2 * u1)) * weights * Complex64::new(0.0, phase_exact(geo)).exp()
}

/// The σ amplitude factor of the factorized semiclassical form:
/// σ = (λ0²/ρ)(−m x0/(2πℏ τ_sc) η1 + m x/(2πℏ(t−τ_sc)) η2) = (t/ρ)(−x0/τ_sc η1 + x/(t−τ_sc) η2).
pub fn sigma_semiclassical(geo: &PointSourceGeometry) -> Complex64 {
    let tau = tau_semiclassical(geo);
    let rho = geo.rho_path();
    (geo.bc.eta1() * (-geo.r0.x / tau) + geo.bc.eta2() * (geo.r.x / (geo.t - tau))) * (geo.t / rho)
}

/// 2D (strip-slit) semiclassical integrand factor for a geometry confined to
/// the (x, z) plane: source (x0, z0), slit point (0, z1), screen point (x, z).
///
/// Value: e^{im(x−x0)²/2ℏt}/√(2iπℏt/m) · σ · K_z(z−z1; t−τ_sc) K_z(z1−z0; τ_sc)
/// with 1D transverse kernels K_z and the stationary time of the 2D legs.
/// The axial kernel uses the full source–screen separation (x−x0), which is
/// the reading consistent with integrating the 3D form over y1.
pub fn k_point_semiclassical_2d(
    x0: f64,
    z0: f64,
    x: f64,
    z: f64,
    z1: f64,
    t: f64,
    bc: &BoundaryCondition,
    p: &Particle,
) -> Complex64 {
    let u1 = (x0 * x0 + (z1 - z0) * (z1 - z0)).sqrt();
    let u2 = (x * x + (z - z1) * (z - z1)).sqrt();
    let rho = u1 + u2;
    let tau = t * u1 / rho;
    let sigma = (bc.eta1() * (-x0 / tau) + bc.eta2() * (x / (t - tau))) * (t / rho);
    let axial = free_kernel_ct(((x - x0) * (x - x0)).into(), t.into(), p, 1);
    let out = free_kernel_ct(((z - z1) * (z - z1)).into(), (t - tau).into(), p, 1);
    let inc = free_kernel_ct(((z1 - z0) * (z1 - z0)).into(), tau.into(), p, 1);
    axial * sigma * out * inc
}

/// Semiclassical validity diagnostics for a geometry.
pub fn diagnostics(geo: &PointSourceGeometry) -> SemiclassicalDiagnostics {
    let p = &geo.particle;
    let rho = geo.rho_path();
    let mu = p.mass * rho * rho / (p.hbar * geo.t);
    SemiclassicalDiagnostics {
        mu,
        mu_sp: mu / 2.0,
        lambda0: (2.0 * std::f64::consts::PI * p.hbar * geo.t / p.mass).sqrt(),
        tau_sc: tau_semiclassical(geo),
        rho_path: geo.rho_path(),
    }
}
