//! Truncation approximation and its fourth-order correction.
//!
//! In the truncation picture the axial motion is classical: the particle
//! crosses the slit plane at the fixed time t_c, and only the transverse
//! motion is quantum. Each transverse direction contributes a Fresnel-integral
//! window factor F, and the slit propagator factorizes as
//!
//!   K = e^{im((x−x0)² + y² + z²)/2ℏt} / (2i (2iπℏt/m)^{3/2}) Σ_j F_j(z) F_j(y)
//!
//! summed over slit windows j. The fourth-order correction re-expands the
//! exact spherical phase one order beyond the paraxial term, which shrinks the
//! effective half-height a → a(1 − (z²/2x²)(t_c/t)) and shifts the crossing
//! time t_c → t_c(1 − (z²/x²)(t_c/t)); the fringe spacing grows accordingly
//! and the n-th minimum moves out by the relative shift δ(z) = z²/(2γL²).
//!
//! The module also computes the dimensionless regime numbers (Fresnel numbers,
//! zoom and coherence parameters) that decide when each approximation is
//! valid.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{fresnel_c, fresnel_s};
use crate::types::Particle;

/// One rectangular slit window in the slit plane, centered at (center_y,
/// center_z) with half-sizes (half_width_y, half_height_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitWindow {
    pub center_y: f64,
    pub center_z: f64,
    pub half_width_y: f64,
    pub half_height_z: f64,
}

impl SlitWindow {
    pub fn centered(half_width_y: f64, half_height_z: f64) -> Self {
        Self { center_y: 0.0, center_z: 0.0, half_width_y, half_height_z }
    }
}

/// Geometry of a truncation-approximation run: source plane x0, slit plane
/// x1, screen plane x (x0 < x1 < x), flight time t, and the slit windows.
///
/// The approximation assumes |x − x1| and |x1 − x0| are large compared to the
/// slit sizes; this is recorded, not enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationScenario {
    pub x0: f64,
    pub x1: f64,
    pub x: f64,
    pub t: f64,
    pub slits: Vec<SlitWindow>,
    pub particle: Particle,
}

impl TruncationScenario {
    pub fn new(
        x0: f64,
        x1: f64,
        x: f64,
        t: f64,
        slits: Vec<SlitWindow>,
        particle: Particle,
    ) -> Result<Self> {
        if !(x0 < x1 && x1 < x) {
            return Err(Error::Domain(format!(
                "require x0 < x1 < x, got x0={x0}, x1={x1}, x={x}"
            )));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("require t > 0, got {t}")));
        }
        if slits.is_empty() {
            return Err(Error::Domain("at least one slit window required".into()));
        }
        for s in &slits {
            if !(s.half_width_y > 0.0) || !(s.half_height_z > 0.0) {
                return Err(Error::Domain(format!("slit half-sizes must be > 0: {s:?}")));
            }
        }
        Ok(Self { x0, x1, x, t, slits, particle })
    }

    /// Single slit centered on the axis with half-sizes (b, a).
    pub fn single(x0: f64, x1: f64, x: f64, t: f64, b: f64, a: f64, p: Particle) -> Result<Self> {
        Self::new(x0, x1, x, t, vec![SlitWindow::centered(b, a)], p)
    }

    /// Classical slit-crossing time of this scenario.
    pub fn t_c(&self) -> f64 {
        classical_time(self.x0, self.x1, self.x, self.t)
    }

    /// Source–screen separation |x − x0|.
    pub fn axial_span(&self) -> f64 {
        self.x - self.x0
    }

    /// Slit–screen distance L = |x − x1|.
    pub fn l_screen(&self) -> f64 {
        self.x - self.x1
    }

    /// Magnification γ = |x − x0| / |x1 − x0|.
    pub fn gamma(&self) -> f64 {
        (self.x - self.x0) / (self.x1 - self.x0)
    }
}

/// Classical crossing time t_c = |x1−x0| t / (|x−x1| + |x1−x0|): the time at
/// which a uniformly moving particle released at x0 and detected at x after a
/// time t passes the plane x1.
pub fn classical_time(x0: f64, x1: f64, x: f64, t: f64) -> f64 {
    let d_in = x1 - x0;
    let d_out = x - x1;
    t * d_in / (d_out + d_in)
}

/// Endpoint of the Fresnel window: the scaled aperture coordinate
/// u(z1) = (z1 − z t_c/t) √(mt / (πℏ t_c (t−t_c))).
fn window_scale(t: f64, t_c: f64, p: &Particle) -> f64 {
    (p.mass * t / (std::f64::consts::PI * p.hbar * t_c * (t - t_c))).sqrt()
}

/// Fresnel factor of one transverse direction for a window centered at
/// `center` with half-size `half`, observed at coordinate v:
/// F = (C[u₊] − C[u₋]) + i(S[u₊] − S[u₋]) with u± the scaled window edges.
pub fn fresnel_window(
    v: f64,
    center: f64,
    half: f64,
    t: f64,
    t_c: f64,
    p: &Particle,
) -> Result<Complex64> {
    if !(0.0 < t_c && t_c < t) {
        return Err(Error::Domain(format!("require 0 < t_c < t, got t_c={t_c}, t={t}")));
    }
    let s = window_scale(t, t_c, p);
    let u_hi = (center + half - v * t_c / t) * s;
    let u_lo = (center - half - v * t_c / t) * s;
    Ok(Complex64::new(
        fresnel_c(u_hi)? - fresnel_c(u_lo)?,
        fresnel_s(u_hi)? - fresnel_s(u_lo)?,
    ))
}

/// Centered-window Fresnel factor
/// F(v, h) = C[α(v,h)] + C[α(v,−h)] + i(S[α(v,h)] + S[α(v,−h)])
/// with α(v, h) = √(m h² t / (πℏ t_c (t−t_c))) (1 − (v/h)(t_c/t)).
pub fn fresnel_factor(v: f64, half: f64, t: f64, t_c: f64, p: &Particle) -> Result<Complex64> {
    fresnel_window(v, 0.0, half, t, t_c, p)
}

/// The scaled window-edge coordinate α(v, h) of the centered window.
pub fn alpha_window(v: f64, half: f64, t: f64, t_c: f64, p: &Particle) -> f64 {
    window_scale(t, t_c, p) * (half - v * t_c / t)
}

fn axial_prefactor(sc: &TruncationScenario, y: f64, z: f64) -> Complex64 {
    let p = &sc.particle;
    let dx = sc.axial_span();
    let phase = Complex64::new(
        0.0,
        p.mass * (dx * dx + y * y + z * z) / (2.0 * p.hbar * sc.t),
    )
    .exp();
    let beta = Complex64::new(0.0, 2.0 * std::f64::consts::PI * p.hbar * sc.t / p.mass);
    // 1 / (2i β^{3/2}): the per-direction Gaussian integrals contribute
    // 1/(2i√(πℏt/m)) each, and the axial direction 1/√β.
    phase / (Complex64::new(0.0, 2.0) * beta.powf(1.5))
}

/// Truncation slit propagator at the screen point (y, z): the Fresnel-window
/// product summed over slit windows. Equals the direct transverse 2D
/// quadrature of the two-leg Gaussian kernels at t_c (tested to 1e-8).
pub fn k_truncation(sc: &TruncationScenario, y: f64, z: f64) -> Result<Complex64> {
    let t_c = sc.t_c();
    let mut windows = Complex64::new(0.0, 0.0);
    for s in &sc.slits {
        let fz = fresnel_window(z, s.center_z, s.half_height_z, sc.t, t_c, &sc.particle)?;
        let fy = fresnel_window(y, s.center_y, s.half_width_y, sc.t, t_c, &sc.particle)?;
        windows += fz * fy;
    }
    Ok(axial_prefactor(sc, y, z) * windows)
}

/// |k_truncation|².
pub fn intensity_truncation(sc: &TruncationScenario, y: f64, z: f64) -> Result<f64> {
    Ok(k_truncation(sc, y, z)?.norm_sqr())
}

/// Single-slit probability density of the truncation model,
/// P = (1/4abγ³) |F(z,a)|² |F(y,b)|².
pub fn probability_truncation(sc: &TruncationScenario, y: f64, z: f64) -> Result<f64> {
    let s = sc.slits[0];
    let t_c = sc.t_c();
    let fz = fresnel_window(z, s.center_z, s.half_height_z, sc.t, t_c, &sc.particle)?;
    let fy = fresnel_window(y, s.center_y, s.half_width_y, sc.t, t_c, &sc.particle)?;
    let gamma = sc.gamma();
    Ok(fz.norm_sqr() * fy.norm_sqr()
        / (4.0 * s.half_height_z * s.half_width_y * gamma * gamma * gamma))
}

/// Fourth-order-corrected slit propagator.
///
/// Relative to [`k_truncation`], the z-direction window shrinks to the primed
/// half-height a′ = a (1 − (z²/2x²)(t_c/t)) (window coordinates scale the same
/// way) and the extra screen phase e^{imθz²/2ℏt} with
/// θ = −(z²/4x²)(t_c/(t−t_c)) is applied. At z = 0 this reduces to
/// `k_truncation` exactly. The constant σ amplitude factor of the stationary
/// axial integration is intensity-shape-neutral and not included here; see
/// `point_source::sigma_semiclassical`.
pub fn k_fourth_order(sc: &TruncationScenario, y: f64, z: f64) -> Result<Complex64> {
    let p = &sc.particle;
    let t_c = sc.t_c();
    let x_sqr = sc.l_screen() * sc.l_screen();
    let shrink = 1.0 - (z * z / (2.0 * x_sqr)) * (t_c / sc.t);
    if !(shrink > 0.0) {
        return Err(Error::Domain(format!(
            "fourth-order correction outside its validity range: z={z}, x={}",
            sc.x - sc.x1
        )));
    }
    let theta = -(z * z / (4.0 * x_sqr)) * (t_c / (sc.t - t_c));
    let extra_phase = Complex64::new(0.0, p.mass * theta * z * z / (2.0 * p.hbar * sc.t)).exp();
    let mut windows = Complex64::new(0.0, 0.0);
    for s in &sc.slits {
        let fz = fresnel_window(
            z,
            s.center_z * shrink,
            s.half_height_z * shrink,
            sc.t,
            t_c,
            p,
        )?;
        let fy = fresnel_window(y, s.center_y, s.half_width_y, sc.t, t_c, p)?;
        windows += fz * fy;
    }
    Ok(axial_prefactor(sc, y, z) * extra_phase * windows)
}

/// Diffraction-regime classification by the Fresnel number of the slit
/// half-height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeClass {
    Fraunhofer,
    Intermediate,
    Fresnel,
}

impl RegimeClass {
    pub fn name(&self) -> &'static str {
        match self {
            RegimeClass::Fraunhofer => "fraunhofer",
            RegimeClass::Intermediate => "intermediate",
            RegimeClass::Fresnel => "fresnel",
        }
    }
}

/// Regime thresholds on N_F(a): below `fraunhofer_below` → Fraunhofer, above
/// `fresnel_above` → Fresnel, otherwise intermediate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    pub fraunhofer_below: f64,
    pub fresnel_above: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self { fraunhofer_below: 0.1, fresnel_above: 10.0 }
    }
}

/// Dimensionless diagnostic numbers of a slit scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    /// Fresnel number of the slit half-height, N_F(a) = 2a²/(λL).
    pub n_f_a: f64,
    /// Fresnel number of the slit half-width, N_F(b) = 2b²/(λL).
    pub n_f_b: f64,
    /// Magnification γ = |x−x0|/|x1−x0|.
    pub gamma: f64,
    /// γ′ = |x−x0|/L.
    pub gamma_prime: f64,
    /// Axial quantum-fluctuation parameter κ = λ0/|x−x0|.
    pub kappa: f64,
    /// Inverse zoom parameter ρ = (a/L)√(8γ/γ′).
    pub rho_zoom_inv: f64,
    /// Coherence number q = κ²/ρ, the validity gauge of the fourth-order
    /// correction.
    pub q: f64,
    /// Semiclassical parameter μ = m|r|²/(ℏt) at the screen point r measured
    /// from the slit plane (on the window axis).
    pub mu: f64,
    /// Quantum fluctuation length λ0 = √(2πℏt/m).
    pub lambda0: f64,
    /// Effective wavelength λ = λ0²/|x−x0|.
    pub lambda: f64,
    /// Flight time the numbers refer to.
    pub t: f64,
    pub regime: RegimeClass,
}

impl RegimeReport {
    /// Expected Fraunhofer fringe spacing Δz ≈ λL/2a for half-height a at
    /// slit–screen distance l.
    pub fn fringe_spacing(&self, a: f64, l: f64) -> f64 {
        self.lambda * l / (2.0 * a)
    }
}

/// Computes the regime numbers of a scenario; the (y, z) screen window only
/// enters through its midpoint, which fixes the screen point of μ.
pub fn regime_report(
    sc: &TruncationScenario,
    z_window: (f64, f64),
    thresholds: RegimeThresholds,
) -> RegimeReport {
    let p = &sc.particle;
    let a = sc.slits[0].half_height_z;
    let b = sc.slits[0].half_width_y;
    let l = sc.l_screen();
    let span = sc.axial_span();
    let lambda0 = (2.0 * std::f64::consts::PI * p.hbar * sc.t / p.mass).sqrt();
    let lambda = lambda0 * lambda0 / span;
    let n_f_a = 2.0 * a * a / (lambda * l);
    let n_f_b = 2.0 * b * b / (lambda * l);
    let gamma = sc.gamma();
    let gamma_prime = span / l;
    let kappa = lambda0 / span;
    let rho_zoom_inv = (a / l) * (8.0 * gamma / gamma_prime).sqrt();
    let q = kappa * kappa / rho_zoom_inv;
    let z_mid = 0.5 * (z_window.0 + z_window.1);
    let mu = p.mass * (l * l + z_mid * z_mid) / (p.hbar * sc.t);
    let regime = if n_f_a < thresholds.fraunhofer_below {
        RegimeClass::Fraunhofer
    } else if n_f_a > thresholds.fresnel_above {
        RegimeClass::Fresnel
    } else {
        RegimeClass::Intermediate
    };
    RegimeReport {
        n_f_a,
        n_f_b,
        gamma,
        gamma_prime,
        kappa,
        rho_zoom_inv,
        q,
        mu,
        lambda0,
        lambda,
        t: sc.t,
        regime,
    }
}

/// Predicted relative fringe shift δ(z) = z²/(2γL²) of a minimum located at
/// z, versus the truncation pattern.
pub fn fringe_shift_prediction(z: f64, gamma: f64, l: f64) -> f64 {
    z * z / (2.0 * gamma * l * l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_propagators::g0_free_1d;
    use crate::numerics::{integrate_1d, integrate_2d, QuadratureSpec};
    use rand::{Rng, SeedableRng};

    fn natural() -> Particle {
        Particle::natural()
    }

    #[test]
    fn classical_time_values() {
        assert!((classical_time(-1.0, 0.0, 1.0, 0.005) - 0.0025).abs() < 1e-18);
        assert!((classical_time(-1.0, 0.0, 1.0, 1.0) - 0.5).abs() < 1e-15);
        // Asymmetric arms split t in proportion to the distances.
        assert!((classical_time(-1.0, 0.0, 3.0, 1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn classical_time_is_transverse_limit_of_stationary_time() {
        // The stationary crossing time |u1| t / (|u1| + |u2|) approaches t_c
        // as the transverse offsets shrink, with relative gap O((z/x)²).
        let (x0, x, t) = (-1.0f64, 1.0f64, 0.4f64);
        let tc = classical_time(x0, 0.0, x, t);
        let mut prev_gap = f64::INFINITY;
        for &z in &[0.3, 0.15, 0.075, 0.0375] {
            let u1 = x0.hypot(0.01);
            let u2 = x.hypot(z - 0.01);
            let tau = t * u1 / (u1 + u2);
            let gap = (tau - tc).abs() / tc;
            assert!(gap < (z / x) * (z / x) + 1e-4, "gap {gap} at z={z}");
            assert!(gap < prev_gap);
            prev_gap = gap;
        }
    }

    #[test]
    fn fresnel_factor_open_aperture_limit() {
        // h → ∞: both edges reach the C[∞] = S[∞] = 1/2 plateau, F → 1 + i.
        let p = natural();
        let f = fresnel_factor(0.3, 1e6, 0.05, 0.02, &p).unwrap();
        assert!((f - Complex64::new(1.0, 1.0)).norm() < 1e-4, "F = {f}");
    }

    #[test]
    fn fresnel_factor_on_axis_symmetry() {
        // v = 0: both window edges are at the same |α|, so F = 2(C[α] + iS[α]).
        let p = natural();
        let (h, t, tc) = (0.013, 0.05, 0.02);
        let f = fresnel_factor(0.0, h, t, tc, &p).unwrap();
        let alpha = alpha_window(0.0, h, t, tc, &p);
        let want = 2.0 * Complex64::new(fresnel_c(alpha).unwrap(), fresnel_s(alpha).unwrap());
        assert!((f - want).norm() < 1e-15);
    }

    #[test]
    fn fresnel_factor_matches_gaussian_window_quadrature() {
        // Oracle: the two-leg Gaussian kernel integral over the window,
        // ∫ dz1 K(z−z1; t−tc) K(z1; tc) = F(z, h) e^{imz²/2ℏt} / (2i √(πℏt/m)).
        let p = natural();
        let spec = QuadratureSpec::default().with_tolerances(1e-12, 1e-16);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let t: f64 = rng.gen_range(0.01..0.5);
            let tc: f64 = t * rng.gen_range(0.2..0.8);
            let h: f64 = rng.gen_range(0.005..0.05);
            let z: f64 = rng.gen_range(-0.6..0.6);
            let quad = integrate_1d(
                |z1| {
                    g0_free_1d(z - z1, t - tc, &p).unwrap() * g0_free_1d(z1, tc, &p).unwrap()
                },
                -h,
                h,
                &spec,
            )
            .unwrap()
            .value;
            let f = fresnel_factor(z, h, t, tc, &p).unwrap();
            let closed = f * Complex64::new(0.0, p.mass * z * z / (2.0 * p.hbar * t)).exp()
                / (Complex64::new(0.0, 2.0)
                    * (std::f64::consts::PI * p.hbar * t / p.mass).sqrt());
            let rel = (quad - closed).norm() / closed.norm().max(1e-30);
            assert!(rel < 1e-8, "rel {rel:.2e} at t={t}, tc={tc}, h={h}, z={z}");
        }
    }

    #[test]
    fn truncation_matches_2d_transverse_quadrature() {
        // Full 2D oracle: k_truncation equals the axial kernel times the 2D
        // transverse window quadrature of the two-leg Gaussian kernels.
        let p = natural();
        let spec = QuadratureSpec::default()
            .with_tolerances(1e-11, 1e-18)
            .with_max_subdivisions(8000);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let t: f64 = rng.gen_range(0.02..0.2);
            let a: f64 = rng.gen_range(0.005..0.03);
            let b: f64 = rng.gen_range(0.02..0.1);
            let z: f64 = rng.gen_range(-0.5..0.5);
            let y: f64 = rng.gen_range(-0.2..0.2);
            let sc = TruncationScenario::single(-1.0, 0.0, 1.0, t, b, a, p).unwrap();
            let tc = sc.t_c();
            let axial = g0_free_1d(2.0, t, &p).unwrap();
            let quad = integrate_2d(
                |z1, y1| {
                    let kz = g0_free_1d(z - z1, t - tc, &p).unwrap()
                        * g0_free_1d(z1, tc, &p).unwrap();
                    let ky = g0_free_1d(y - y1, t - tc, &p).unwrap()
                        * g0_free_1d(y1, tc, &p).unwrap();
                    kz * ky
                },
                [-a, a, -b, b],
                &spec,
            )
            .unwrap()
            .value;
            let want = axial * quad;
            let got = k_truncation(&sc, y, z).unwrap();
            let rel = (got - want).norm() / want.norm().max(1e-30);
            assert!(rel < 1e-8, "rel {rel:.2e} at t={t}, a={a}, b={b}, y={y}, z={z}");
        }
    }

    #[test]
    fn multi_slit_is_sum_of_single_slits() {
        let p = natural();
        let w1 = SlitWindow { center_y: 0.0, center_z: 0.1, half_width_y: 0.1, half_height_z: 0.01 };
        let w2 = SlitWindow { center_y: 0.0, center_z: -0.1, half_width_y: 0.1, half_height_z: 0.01 };
        let both = TruncationScenario::new(-50.0, 0.0, 50.0, 0.05, vec![w1, w2], p).unwrap();
        let s1 = TruncationScenario::new(-50.0, 0.0, 50.0, 0.05, vec![w1], p).unwrap();
        let s2 = TruncationScenario::new(-50.0, 0.0, 50.0, 0.05, vec![w2], p).unwrap();
        for &(y, z) in &[(0.0, 0.0), (0.05, 3.0), (-0.1, -7.0)] {
            let k = k_truncation(&both, y, z).unwrap();
            let sum = k_truncation(&s1, y, z).unwrap() + k_truncation(&s2, y, z).unwrap();
            assert!((k - sum).norm() < 1e-14 * sum.norm().max(1e-30));
        }
    }

    #[test]
    fn transverse_probability_is_conserved() {
        // Free transverse evolution is unitary, so the window's probability
        // mass at t_c equals the screen integral of the transverse density:
        // (m/4πℏt) ∫ dz |F(z)|² = (m/2πℏ t_c) 2a, i.e. ∫ |F|² dz = 4a t/t_c.
        // A near-field window keeps the 1/z² Fraunhofer tail small enough for
        // a finite integration range; composite Simpson resolves the ripples.
        let p = natural();
        let (t, tc, a) = (0.004, 0.002, 0.5);
        let (lo, hi, n) = (-4.5f64, 4.5f64, 400_000usize);
        let h = (hi - lo) / n as f64;
        let f = |z: f64| fresnel_factor(z, a, t, tc, &p).unwrap().norm_sqr();
        let mut sum = f(lo) + f(hi);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(lo + k as f64 * h);
        }
        let lhs = sum * h / 3.0;
        let rhs = 4.0 * a * t / tc;
        let rel = (lhs - rhs).abs() / rhs;
        assert!(rel < 2e-3, "lhs {lhs}, rhs {rhs}, rel {rel:.2e}");
    }

    #[test]
    fn fraunhofer_fringe_spacing() {
        // Minima of the pattern at the predicted spacing Δz = λL/2a.
        let p = natural();
        let sc = TruncationScenario::single(-50.0, 0.0, 50.0, 0.005, 0.1, 0.01, p).unwrap();
        let report = regime_report(&sc, (0.0, 0.0), RegimeThresholds::default());
        let dz = report.fringe_spacing(0.01, 50.0);
        // Scan around the first two predicted minima.
        for n in 1..=2 {
            let z0 = n as f64 * dz;
            let mut best = (f64::INFINITY, 0.0);
            let mut zz = 0.85 * z0;
            while zz <= 1.15 * z0 {
                let i = intensity_truncation(&sc, 0.0, zz).unwrap();
                if i < best.0 {
                    best = (i, zz);
                }
                zz += dz / 400.0;
            }
            let rel = (best.1 - z0).abs() / z0;
            assert!(rel < 0.02, "minimum {n} at {} vs predicted {z0}", best.1);
        }
    }

    #[test]
    fn fourth_order_reduces_to_truncation_on_axis() {
        let p = natural();
        let sc = TruncationScenario::single(-50.0, 0.0, 50.0, 0.05, 0.1, 0.01, p).unwrap();
        let k4 = k_fourth_order(&sc, 0.3, 0.0).unwrap();
        let kt = k_truncation(&sc, 0.3, 0.0).unwrap();
        assert_eq!(k4, kt);
    }

    #[test]
    fn fourth_order_difference_is_quadratic_in_z() {
        // |k4 − ktr| grows like z² near the axis: log-log slope 2 ± 0.2.
        let p = natural();
        let sc = TruncationScenario::single(-50.0, 0.0, 50.0, 0.05, 0.1, 0.01, p).unwrap();
        let diff = |z: f64| {
            (k_fourth_order(&sc, 0.0, z).unwrap() - k_truncation(&sc, 0.0, z).unwrap()).norm()
        };
        // Sample below the crossover to the quartic correction phase.
        let (z1, z2) = (0.05, 0.1);
        let slope = (diff(z2) / diff(z1)).ln() / (z2 / z1 as f64).ln();
        assert!((slope - 2.0).abs() < 0.3, "slope {slope}");
    }

    #[test]
    fn fourth_order_minima_shift_matches_prediction() {
        // The n-th minimum of the corrected pattern sits at
        // z_n (1 + δ(z_n)) with δ(z) = z²/(2γL²).
        let p = natural();
        let sc = TruncationScenario::single(-50.0, 0.0, 50.0, 0.05, 0.1, 0.01, p).unwrap();
        let report = regime_report(&sc, (0.0, 0.0), RegimeThresholds::default());
        let dz = report.fringe_spacing(0.01, 50.0);
        let gamma = sc.gamma();
        let scan_min = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, step: f64| {
            let mut best = (f64::INFINITY, 0.0);
            let mut zz = lo;
            while zz <= hi {
                let i = f(zz);
                if i < best.0 {
                    best = (i, zz);
                }
                zz += step;
            }
            best.1
        };
        // Fringes 1 and 3 only: by fringe 5 the predicted shift (~15%) is
        // beyond the first-order window correction's self-consistency range
        // and the literal minimum of the corrected formula runs away, even
        // though the shift *prediction* still matches the exact pattern.
        for n in [1usize, 3] {
            let guess = n as f64 * dz;
            // Measured reference minimum of the uncorrected pattern.
            let z_ref = scan_min(
                &|z| intensity_truncation(&sc, 0.0, z).unwrap(),
                guess - 0.4 * dz,
                guess + 0.4 * dz,
                dz / 2000.0,
            );
            let z_shifted = scan_min(
                &|z| k_fourth_order(&sc, 0.0, z).unwrap().norm_sqr(),
                z_ref * 0.98,
                z_ref * 1.30,
                dz / 2000.0,
            );
            let measured = (z_shifted - z_ref) / z_ref;
            let predicted = fringe_shift_prediction(z_ref, gamma, 50.0);
            assert!(
                (measured - predicted).abs() < 0.25 * predicted + 2e-3,
                "fringe {n}: measured {measured:.4}, predicted {predicted:.4}"
            );
        }
    }

    #[test]
    fn regime_numbers_far_screen() {
        // x = ±50, a = 0.01, b = 0.1 at three flight times; printed values
        // are order-of-magnitude anchors.
        let p = natural();
        let mk = |t| TruncationScenario::single(-50.0, 0.0, 50.0, t, 0.1, 0.01, p).unwrap();
        let r1 = regime_report(&mk(1.0), (0.0, 0.0), RegimeThresholds::default());
        assert!((0.5..2.0).contains(&r1.q), "q = {}", r1.q);
        assert!((r1.mu - 2500.0).abs() < 1e-9);
        assert!(r1.n_f_a > 1e-5 && r1.n_f_a < 1e-4, "N_F(a) = {}", r1.n_f_a);
        assert!(r1.n_f_b > 1e-3 && r1.n_f_b < 1e-2, "N_F(b) = {}", r1.n_f_b);

        let r2 = regime_report(&mk(0.05), (0.0, 0.0), RegimeThresholds::default());
        assert!((3e-2..1.2e-1).contains(&r2.q), "q = {}", r2.q);
        assert!((2e4..1e5).contains(&r2.mu), "mu = {}", r2.mu);
        assert!(r2.n_f_a > 2e-4 && r2.n_f_a < 2e-3, "N_F(a) = {}", r2.n_f_a);

        let r3 = regime_report(&mk(0.005), (0.0, 0.0), RegimeThresholds::default());
        assert!((2e-3..2e-2).contains(&r3.q), "q = {}", r3.q);
        assert!((2e5..1e6).contains(&r3.mu), "mu = {}", r3.mu);
        assert!(r3.regime == RegimeClass::Fraunhofer);
    }

    #[test]
    fn wavelength_identity() {
        let p = natural();
        let sc = TruncationScenario::single(-50.0, 0.0, 50.0, 0.05, 0.1, 0.01, p).unwrap();
        let r = regime_report(&sc, (0.0, 0.0), RegimeThresholds::default());
        assert_eq!(r.lambda, r.lambda0 * r.lambda0 / sc.axial_span());
    }

    #[test]
    fn shift_prediction_values() {
        assert_eq!(fringe_shift_prediction(0.0, 2.0, 50.0), 0.0);
        assert!((fringe_shift_prediction(1.0, 0.5, 1.0) - 1.0).abs() < 1e-15);
        // Far-screen configuration: the minima near 8, 24, 40 shift by
        // ~0.6%, ~6%, ~15%.
        let d1 = fringe_shift_prediction(7.854, 2.0, 50.0);
        let d3 = fringe_shift_prediction(23.56, 2.0, 50.0);
        let d5 = fringe_shift_prediction(39.27, 2.0, 50.0);
        assert!(d1 < 0.01, "{d1}");
        assert!((0.03..0.14).contains(&d3), "{d3}");
        assert!((0.08..0.32).contains(&d5), "{d5}");
    }

    #[test]
    fn scenario_validation() {
        let p = natural();
        assert!(TruncationScenario::single(1.0, 0.0, -1.0, 0.1, 0.1, 0.01, p).is_err());
        assert!(TruncationScenario::single(-1.0, 0.0, 1.0, -0.1, 0.1, 0.01, p).is_err());
        assert!(TruncationScenario::single(-1.0, 0.0, 1.0, 0.1, -0.1, 0.01, p).is_err());
        assert!(TruncationScenario::new(-1.0, 0.0, 1.0, 0.1, vec![], p).is_err());
    }
}
