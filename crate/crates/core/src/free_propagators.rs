//! Free-particle and uniform-gravity Green functions, Gaussian packets, and
//! image-combination Green functions for Dirichlet/Neumann/free screens.
//!
//! Branch convention: every power (m/2iπℏt)^{d/2} is evaluated as the
//! principal complex power of 1/(i·2πℏt/m), i.e. 1/(2i) = e^{−iπ/2}/2. The
//! same convention continues to complex times with Re t > 0, Im t ≤ 0, where
//! the principal branch stays continuous.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{BoundaryCondition, Particle, SpacetimePoint, Vec3};

/// Free kernel at complex time: (m/2iπℏ dt)^{dim/2} e^{i m q²/(2ℏ dt)},
/// where q² is the squared spatial separation. Valid for Re dt > 0, Im dt ≤ 0.
pub(crate) fn free_kernel_ct(q_sqr: Complex64, dt: Complex64, p: &Particle, dim: u32) -> Complex64 {
    let w = Complex64::new(0.0, 1.0) * dt * (2.0 * std::f64::consts::PI * p.hbar / p.mass);
    let pref = w.powc(Complex64::new(-(dim as f64) / 2.0, 0.0));
    let phase = (Complex64::new(0.0, 1.0) * q_sqr * p.mass / (2.0 * p.hbar * dt)).exp();
    pref * phase
}

/// 3D free propagator G₀(dr; dt) = (m/2iπℏ dt)^{3/2} e^{im|dr|²/2ℏ dt} θ(dt).
pub fn g0_free(dr: Vec3, dt: f64, p: &Particle) -> Result<Complex64> {
    if dt == 0.0 {
        return Err(Error::SingularTime("g0_free at dt = 0".into()));
    }
    if dt < 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(free_kernel_ct(dr.norm_sqr().into(), dt.into(), p, 3))
}

/// 1D free propagator.
pub fn g0_free_1d(dx: f64, dt: f64, p: &Particle) -> Result<Complex64> {
    if dt == 0.0 {
        return Err(Error::SingularTime("g0_free_1d at dt = 0".into()));
    }
    if dt < 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(free_kernel_ct((dx * dx).into(), dt.into(), p, 1))
}

/// Propagator in a uniform gravity field with acceleration g along +e_z
/// (potential V(z) = −mgz, so particles fall toward larger z; pass −g for
/// the opposite orientation):
/// G_g = G₀ · e^{im/2ℏ (g(z+z')(t−t') − g²(t−t')³/12)}.
pub fn g_gravity(ra: SpacetimePoint, rb: SpacetimePoint, p: &Particle, g: f64) -> Result<Complex64> {
    let dt = ra.t - rb.t;
    if dt == 0.0 {
        return Err(Error::SingularTime("g_gravity at equal times".into()));
    }
    if dt < 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(g_gravity_ct(ra.r - rb.r, ra.r.z, rb.r.z, dt.into(), p, g))
}

/// Gravity propagator continued to complex time differences.
pub(crate) fn g_gravity_ct(
    dr: Vec3,
    z_a: f64,
    z_b: f64,
    dt: Complex64,
    p: &Particle,
    g: f64,
) -> Complex64 {
    let free = free_kernel_ct(dr.norm_sqr().into(), dt, p, 3);
    let dt3 = dt * dt * dt;
    let arg = Complex64::new(0.0, p.mass / (2.0 * p.hbar))
        * (dt * (g * (z_a + z_b)) - dt3 * (g * g / 12.0));
    free * arg.exp()
}

/// Image-combination Green function for a screen in the x = 0 plane:
/// G = λ1 G₀(r − r1) + λ2 G₀(r − r1*), with r1* the mirror image of r1.
pub fn green_general(
    r: Vec3,
    t: f64,
    r1: Vec3,
    tau: f64,
    bc: &BoundaryCondition,
    p: &Particle,
) -> Result<Complex64> {
    if t <= tau {
        return Err(Error::Causality(format!("green_general requires t > tau, got t={t}, tau={tau}")));
    }
    let direct = Vec3::new(r.x - r1.x, r.y - r1.y, r.z - r1.z);
    let image = Vec3::new(r.x + r1.x, r.y - r1.y, r.z - r1.z);
    let dt = t - tau;
    Ok(bc.lambda1 * g0_free(direct, dt, p)? + bc.lambda2 * g0_free(image, dt, p)?)
}

/// Normalized Gaussian packet with carrier wave vector k0:
/// φ(R) = (2πσ²)^{−3/4} e^{−|R−r0|²/4σ²} e^{i k0·(R−r0)}.
pub fn gaussian_packet(r_pt: Vec3, r0: Vec3, sigma: f64, k0: Vec3) -> Result<Complex64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("gaussian_packet requires sigma > 0, got {sigma}")));
    }
    let d = r_pt - r0;
    let norm = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.75);
    let envelope = (-d.norm_sqr() / (4.0 * sigma * sigma)).exp();
    let phase = Complex64::new(0.0, k0.dot(&d)).exp();
    Ok(norm * envelope * phase)
}
