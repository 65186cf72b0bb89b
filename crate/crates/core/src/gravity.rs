//! Slit propagator in a uniform gravity field.
//!
//! The field points along +e_z (potential V(z) = −mgz, matching the kernel
//! in `free_propagators`): particles released at the origin fall toward
//! larger z. The slit plane is z-normal at height z1 with in-plane aperture
//! coordinates (x1, y1); the screen point lies beyond the plane.
//!
//! Three computations are provided: the exact surface-integral form (a τ
//! quadrature on a complex contour nested inside the 2D aperture
//! quadrature), the stationary-phase form built on the quintic passage-time
//! equation, and the quintic solver itself. The exact form keeps its
//! prefactor exactly as the source formula states it; the constant ratio to
//! the flat-space module at g = 0 is exposed by [`calibration_factor`]
//! rather than silently absorbed.

use num_complex::Complex64;

use crate::approx::{regime_report, RegimeReport, RegimeThresholds, TruncationScenario};
use crate::error::{Error, Result};
use crate::free_propagators::g_gravity_ct;
use crate::numerics::{integrate_1d, integrate_2d, real_roots_in_interval, QuadratureSpec};
use crate::types::{BoundaryCondition, Particle, Vec3};

/// Slit-under-gravity configuration: source at the origin, z-normal slit
/// plane at height `slit_z` with aperture x1 ∈ [−a, a], y1 ∈ [−b, b], flight
/// time `t`.
#[derive(Debug, Clone, Copy)]
pub struct GravityScenario {
    pub particle: Particle,
    /// Field strength (acceleration along +e_z); ≥ 0.
    pub g: f64,
    /// Height of the slit plane above the source.
    pub slit_z: f64,
    /// Aperture half-size along the in-plane x1 direction.
    pub half_size_x: f64,
    /// Aperture half-size along the in-plane y1 direction.
    pub half_size_y: f64,
    pub t: f64,
    pub bc: BoundaryCondition,
    /// When set, the second propagator leg of the exact form is evaluated
    /// with the literally printed time arguments (slit point at the final
    /// time, duration t−τ) instead of the physical source→slit reading
    /// (duration τ). Default false.
    pub verbatim_time_arguments: bool,
}

impl GravityScenario {
    pub fn new(
        particle: Particle,
        g: f64,
        slit_z: f64,
        half_size_x: f64,
        half_size_y: f64,
        t: f64,
        bc: BoundaryCondition,
    ) -> Result<Self> {
        if !(g >= 0.0) {
            return Err(Error::Domain(format!("require g >= 0, got {g}")));
        }
        if !(slit_z > 0.0) || !(half_size_x > 0.0) || !(half_size_y > 0.0) || !(t > 0.0) {
            return Err(Error::Domain(format!(
                "require slit_z, half-sizes, t > 0: slit_z={slit_z}, a={half_size_x}, b={half_size_y}, t={t}"
            )));
        }
        Ok(Self {
            particle,
            g,
            slit_z,
            half_size_x,
            half_size_y,
            t,
            bc,
            verbatim_time_arguments: false,
        })
    }

    fn validate_screen(&self, screen: Vec3) -> Result<()> {
        if !(screen.z > self.slit_z) {
            return Err(Error::Domain(format!(
                "screen must lie beyond the slit plane: screen.z={} vs slit_z={}",
                screen.z, self.slit_z
            )));
        }
        Ok(())
    }
}

/// Surface-term weight of the exact form,
/// χ_{t,τ}(z, z1) = η1 z1/τ + η2 (z−z1)/(t−τ) − iη2 g t + i(η1+η2) g τ
///                  − i(η1−η2) g τ/2,
/// implemented verbatim (the last two terms are not algebraically combined).
pub fn chi(t: f64, tau: f64, z: f64, z1: f64, bc: &BoundaryCondition, g: f64) -> Result<Complex64> {
    if !(0.0 < tau && tau < t) {
        return Err(Error::Domain(format!("require 0 < tau < t, got tau={tau}, t={t}")));
    }
    Ok(chi_ct(t, tau.into(), z, z1, bc, g))
}

fn chi_ct(t: f64, tau: Complex64, z: f64, z1: f64, bc: &BoundaryCondition, g: f64) -> Complex64 {
    let eta1 = bc.eta1();
    let eta2 = bc.eta2();
    let i = Complex64::new(0.0, 1.0);
    eta1 * z1 / tau + eta2 * (z - z1) / (Complex64::from(t) - tau) - i * eta2 * g * t
        + i * (eta1 + eta2) * g * tau
        - i * (eta1 - eta2) * g * tau / 2.0
}

/// Constant ratio between the flat-space slit propagator and the printed
/// exact gravity form at g = 0: flat = calibration_factor · k_gravity. The
/// printed prefactor iℏ/2m is retained in [`k_gravity`]; this factor (2m/iℏ)
/// is reported so cross-module comparisons are explicit.
pub fn calibration_factor(p: &Particle) -> Complex64 {
    Complex64::new(0.0, -2.0 * p.mass / p.hbar)
}

/// τ-integrand point value of the exact form at one aperture point: the
/// full complex-contour τ quadrature of (iℏ/2m) χ G_g G_g, before aperture
/// integration.
pub fn k_gravity_point(sc: &GravityScenario, screen: Vec3, x1: f64, y1: f64) -> Result<Complex64> {
    sc.validate_screen(screen)?;
    let p = &sc.particle;
    let t = sc.t;
    let z1 = sc.slit_z;
    let r1 = Vec3::new(x1, y1, z1);
    let delta = 0.5;
    // Contour τ = t·w(s) leaving both endpoints into their exponential-decay
    // sectors; equals the real-line improper integral by analyticity.
    let f = |s: f64| -> Complex64 {
        let w = Complex64::new(s, delta * s * (1.0 - s) * (2.0 * s - 1.0));
        let tau = w * t;
        let t_minus = (Complex64::new(1.0, 0.0) - w) * t;
        if tau.norm() == 0.0 || t_minus.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let dtau = Complex64::new(1.0, delta * (-6.0 * s * s + 6.0 * s - 1.0)) * t;
        let weight = chi_ct(t, tau, screen.z, z1, &sc.bc, sc.g);
        let leg_out = g_gravity_ct(screen - r1, screen.z, z1, t_minus, p, sc.g);
        let leg_in = if sc.verbatim_time_arguments {
            g_gravity_ct(r1, z1, 0.0, t_minus, p, sc.g)
        } else {
            g_gravity_ct(r1, z1, 0.0, tau, p, sc.g)
        };
        weight * leg_out * leg_in * dtau
    };
    let spec = QuadratureSpec::default()
        .with_tolerances(1e-9, 1e-18)
        .with_max_subdivisions(40_000);
    let integral = integrate_1d(f, 0.0, 1.0, &spec)?.value;
    // iℏ/2m, exactly as the exact form states it.
    Ok(Complex64::new(0.0, p.hbar / (2.0 * p.mass)) * integral)
}

/// Exact slit propagator under gravity: the aperture integral of
/// [`k_gravity_point`]. Reduces to the flat-space slit propagator at g = 0
/// up to [`calibration_factor`] and the plane-orientation transposition.
pub fn k_gravity(sc: &GravityScenario, screen: Vec3, spec: &QuadratureSpec) -> Result<Complex64> {
    sc.validate_screen(screen)?;
    let (a, b) = (sc.half_size_x, sc.half_size_y);
    let inner_failure: std::sync::Mutex<Option<Error>> = std::sync::Mutex::new(None);
    let value = integrate_2d(
        |x1, y1| match k_gravity_point(sc, screen, x1, y1) {
            Ok(v) => v,
            Err(e) => {
                *inner_failure.lock().unwrap() = Some(e);
                Complex64::new(0.0, 0.0)
            }
        },
        [-a, a, -b, b],
        spec,
    )?
    .value;
    if let Some(e) = inner_failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(value)
}

/// Stationary passage time under gravity, with the full root set of the
/// quintic.
#[derive(Debug, Clone, PartialEq)]
pub struct GravityStationaryTime {
    /// The physical root: continuously connected to the g = 0 solution by a
    /// 10-step homotopy in g.
    pub tau: f64,
    /// All real roots in (0, t) at the requested g, sorted ascending.
    pub all_roots: Vec<f64>,
}

/// Ascending coefficients of the passage-time quintic
/// |r−r1|²τ² − |r1|²(t−τ)² − gz τ²(t−τ)² + (g²/4)τ²(t−τ)²((t−τ)² − τ²) = 0;
/// the τ⁶ terms of the expansion cancel identically.
fn quintic_coefficients(r: Vec3, r1: Vec3, t: f64, g: f64) -> [f64; 6] {
    let u1s = r1.norm_sqr();
    let u2s = (r - r1).norm_sqr();
    let z = r.z;
    let g2 = g * g;
    [
        -u1s * t * t,
        2.0 * u1s * t,
        u2s - u1s - g * z * t * t + g2 * t.powi(4) / 4.0,
        2.0 * g * z * t - g2 * t.powi(3),
        -g * z + 1.25 * g2 * t * t,
        -0.5 * g2 * t,
    ]
}

/// Solves the passage-time quintic for the stationary slit-crossing time.
///
/// The physical root is selected by continuation from the closed-form g = 0
/// solution |r1| t / (|r−r1| + |r1|); all real roots in (0, t) at the final
/// g are reported alongside. At the returned root the per-mass energy
/// identity ½|v0|² = ½|v1|² − g z1 holds.
pub fn tau_sc_gravity(r: Vec3, r1: Vec3, t: f64, g: f64) -> Result<GravityStationaryTime> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("require t > 0, got {t}")));
    }
    let u1 = r1.norm();
    let u2 = (r - r1).norm();
    if u1 == 0.0 || u2 == 0.0 {
        return Err(Error::Domain("source, slit point and screen point must be distinct".into()));
    }
    let mut tau = t * u1 / (u1 + u2);
    if g > 0.0 {
        for k in 1..=10 {
            let gk = g * k as f64 / 10.0;
            let roots = real_roots_in_interval(&quintic_coefficients(r, r1, t, gk), 0.0, t)?;
            let Some(&next) = roots
                .iter()
                .min_by(|&&p, &&q| (p - tau).abs().total_cmp(&(q - tau).abs()))
            else {
                return Err(Error::NoStationaryTime(format!(
                    "no passage time in (0, {t}) at g={gk}"
                )));
            };
            tau = next;
        }
    }
    let all_roots = real_roots_in_interval(&quintic_coefficients(r, r1, t, g), 0.0, t)?;
    Ok(GravityStationaryTime { tau, all_roots })
}

/// Second τ-derivative of the stationary phase,
/// ω_sc = (m/ℏ)(|r−r1|²/(t−τ)³ + |r1|²/τ³) − m g² t/(4ℏ).
pub fn omega_sc_gravity(r: Vec3, r1: Vec3, t: f64, tau: f64, g: f64, p: &Particle) -> f64 {
    let u1s = r1.norm_sqr();
    let u2s = (r - r1).norm_sqr();
    p.mass / p.hbar * (u2s / (t - tau).powi(3) + u1s / tau.powi(3))
        - p.mass * g * g * t / (4.0 * p.hbar)
}

/// Stationary phase of the two gravity legs at passage time τ:
/// φ = (m/2ℏ)[|r−r1|²/(t−τ) + |r1|²/τ + g(z+z1)(t−τ) + g z1 τ
///     − (g²/12)((t−τ)³ + τ³)].
pub fn phase_sc_gravity(r: Vec3, r1: Vec3, t: f64, tau: f64, g: f64, p: &Particle) -> f64 {
    let u1s = r1.norm_sqr();
    let u2s = (r - r1).norm_sqr();
    p.mass / (2.0 * p.hbar)
        * (u2s / (t - tau) + u1s / tau
            + g * (r.z + r1.z) * (t - tau)
            + g * r1.z * tau
            - g * g / 12.0 * ((t - tau).powi(3) + tau.powi(3)))
}

fn semiclassical_point(sc: &GravityScenario, screen: Vec3, x1: f64, y1: f64) -> Result<Complex64> {
    let p = &sc.particle;
    let r1 = Vec3::new(x1, y1, sc.slit_z);
    let t = sc.t;
    let st = tau_sc_gravity(screen, r1, t, sc.g)?;
    let tau = st.tau;
    let omega = omega_sc_gravity(screen, r1, t, tau, sc.g, p);
    if !(omega > 0.0) {
        return Err(Error::DegenerateStationaryPoint(format!(
            "omega_sc = {omega} <= 0 at tau = {tau}; stationary-phase form invalid here"
        )));
    }
    let weight = chi_ct(t, tau.into(), screen.z, sc.slit_z, &sc.bc, sc.g);
    let beta = Complex64::new(0.0, 2.0 * std::f64::consts::PI * p.hbar / p.mass);
    let amp_denominator = beta.powi(3) * ((t - tau) * tau).powf(1.5);
    let turning = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) / omega).sqrt();
    let phase = phase_sc_gravity(screen, r1, t, tau, sc.g, p);
    Ok(weight / amp_denominator * turning * Complex64::new(0.0, phase).exp())
}

/// Stationary-phase slit propagator under gravity: the 2D aperture
/// quadrature of the stationary integrand. At g = 0 this equals the
/// flat-space stationary-phase slit propagator (transposed to the z-normal
/// plane) with no extra constant. Returns
/// [`Error::DegenerateStationaryPoint`] when ω_sc ≤ 0 anywhere on the
/// aperture.
pub fn k_gravity_semiclassical(
    sc: &GravityScenario,
    screen: Vec3,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    sc.validate_screen(screen)?;
    let (a, b) = (sc.half_size_x, sc.half_size_y);
    let inner_failure: std::sync::Mutex<Option<Error>> = std::sync::Mutex::new(None);
    let value = integrate_2d(
        |x1, y1| match semiclassical_point(sc, screen, x1, y1) {
            Ok(v) => v,
            Err(e) => {
                *inner_failure.lock().unwrap() = Some(e);
                Complex64::new(0.0, 0.0)
            }
        },
        [-a, a, -b, b],
        spec,
    )?
    .value;
    if let Some(e) = inner_failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(value)
}

/// Diagnostics of the free-fall neon scenario: release from rest, fall l1 to
/// the slit plane, then a further l2 to the detection plane.
#[derive(Debug, Clone)]
pub struct NeonDiagnostics {
    /// Fall time to the slit, t1 = √(2 l1/g).
    pub t1: f64,
    /// Total fall time to the detection plane.
    pub t_total: f64,
    /// De Broglie wavelength at the slit, λ = h/(m g t1).
    pub lambda: f64,
    /// Semiclassical parameter m l2²/(ℏ t_total) at the detection plane.
    pub mu: f64,
    /// Regime numbers of the equivalent slit scenario (nominal aperture
    /// half-sizes; λ, μ and the Fresnel classification are the meaningful
    /// outputs).
    pub report: RegimeReport,
}

/// Computes the neon free-fall numbers: m = 3.349e-26 kg, l1 = 0.1 m to the
/// slit, l2 = 0.113 m to the detector, g = 9.81 m/s². The aperture
/// half-sizes entering the regime report are nominal (1 μm × 100 μm).
pub fn neon_scenario_diagnostics() -> NeonDiagnostics {
    let hbar = 1.054_571_817e-34_f64;
    let mass = 3.349e-26_f64;
    let g = 9.81_f64;
    let l1 = 0.1_f64;
    let l2 = 0.113_f64;
    let particle = Particle::new(mass, hbar).unwrap();
    let t1 = (2.0 * l1 / g).sqrt();
    let v1 = g * t1;
    let lambda = 2.0 * std::f64::consts::PI * hbar / (mass * v1);
    // l2 = v1 t2 + g t2²/2 continues the free fall beyond the slit.
    let t2 = -t1 + (t1 * t1 + 2.0 * l2 / g).sqrt();
    let t_total = t1 + t2;
    let scenario =
        TruncationScenario::single(-l1, 0.0, l2, t_total, 1e-4, 1e-6, particle).unwrap();
    let report = regime_report(&scenario, (0.0, 0.0), RegimeThresholds::default());
    NeonDiagnostics {
        t1,
        t_total,
        lambda,
        mu: report.mu,
        report,
    }
}
