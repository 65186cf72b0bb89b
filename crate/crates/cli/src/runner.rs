//! Pattern computation over a screen grid for every supported method, plus
//! the diagnostics and comparison reports.

use rayon::prelude::*;
use serde_json::json;
use slitprop::analysis::{compare_fringes, find_minima};
use slitprop::aperture::Aperture;
use slitprop::approx::{
    k_fourth_order, k_truncation, regime_report, RegimeThresholds, SlitWindow,
    TruncationScenario,
};
use slitprop::gravity::{k_gravity, k_gravity_semiclassical, GravityScenario};
use slitprop::point_source::{diagnostics, PointSourceGeometry};
use slitprop::{Complex64, Error, Vec3};

use crate::config::{ApertureShape, MethodKind, Resolved};
use crate::CliError;

/// A computed pattern: amplitudes `[iy][iz]`, the grid-window normalizer Ω,
/// and the per-point convergence bookkeeping.
#[derive(Debug, Clone)]
pub struct PatternOutput {
    pub method: MethodKind,
    pub y_values: Vec<f64>,
    pub z_values: Vec<f64>,
    pub amplitudes: Vec<Vec<Complex64>>,
    pub intensities: Vec<Vec<f64>>,
    pub omega: f64,
    pub captured_fraction: f64,
    /// Points where the quadrature stopped at its error bound; their best
    /// estimates are kept in `amplitudes` and the output is flagged partial.
    pub convergence_failures: usize,
}

impl PatternOutput {
    pub fn probability_density(&self, iy: usize, iz: usize) -> f64 {
        self.intensities[iy][iz] / self.omega
    }
}

fn trapezoid_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    if n == 1 {
        return vec![1.0];
    }
    let mut w = vec![0.0; n];
    for i in 0..n - 1 {
        let h = axis[i + 1] - axis[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    w
}

fn library_aperture(shape: &ApertureShape) -> Result<Aperture, CliError> {
    let ap = match *shape {
        ApertureShape::Rect { half_width_y, half_height_z } => {
            Aperture::rect(half_width_y, half_height_z)
        }
        ApertureShape::Double { center_offset_z, half_height_z, half_width_y } => {
            Aperture::double(center_offset_z, half_height_z, half_width_y)
        }
    };
    ap.map_err(|e| CliError::Validation(e.to_string()))
}

fn slit_windows(shape: &ApertureShape) -> Vec<SlitWindow> {
    match *shape {
        ApertureShape::Rect { half_width_y, half_height_z } => {
            vec![SlitWindow::centered(half_width_y, half_height_z)]
        }
        ApertureShape::Double { center_offset_z, half_height_z, half_width_y } => vec![
            SlitWindow {
                center_y: 0.0,
                center_z: center_offset_z,
                half_width_y,
                half_height_z,
            },
            SlitWindow {
                center_y: 0.0,
                center_z: -center_offset_z,
                half_width_y,
                half_height_z,
            },
        ],
    }
}

/// Flat-geometry truncation scenario equivalent of a run (slit plane at 0).
pub fn truncation_scenario(r: &Resolved) -> Result<TruncationScenario, CliError> {
    TruncationScenario::new(
        r.x0,
        0.0,
        r.x_screen,
        r.t,
        slit_windows(&r.aperture),
        r.particle,
    )
    .map_err(|e| CliError::Validation(e.to_string()))
}

fn gravity_scenario(r: &Resolved) -> Result<GravityScenario, CliError> {
    if matches!(r.aperture, ApertureShape::Double { .. }) {
        return Err(CliError::Validation(
            "gravity methods support only rect apertures".into(),
        ));
    }
    GravityScenario::new(
        r.particle,
        r.g.expect("method_or checked the gravity table"),
        -r.x0,
        r.aperture.half_height_z(),
        r.aperture.half_width_y(),
        r.t,
        r.bc,
    )
    .map_err(|e| CliError::Validation(e.to_string()))
}

/// A per-point amplitude with a flag marking a kept convergence estimate.
type PointValue = Result<(Complex64, bool), CliError>;

fn keep_estimate(res: Result<Complex64, Error>) -> PointValue {
    match res {
        Ok(v) => Ok((v, false)),
        Err(Error::Convergence { estimate, .. }) => Ok((estimate, true)),
        Err(e) => Err(CliError::Validation(e.to_string())),
    }
}

/// Computes the amplitude pattern for one method on the configured grid.
/// Points whose quadrature stops at its error bound keep the best estimate
/// and are counted in `convergence_failures`.
pub fn compute_pattern(r: &Resolved, method: MethodKind) -> Result<PatternOutput, CliError> {
    let ny = r.y_values.len();
    let nz = r.z_values.len();
    let points: Vec<(usize, usize)> =
        (0..ny).flat_map(|iy| (0..nz).map(move |iz| (iy, iz))).collect();

    let point_fn: Box<dyn Fn(f64, f64) -> PointValue + Sync> = match method {
        MethodKind::Exact | MethodKind::Semiclassical => {
            let aperture = library_aperture(&r.aperture)?;
            let lib_method = if method == MethodKind::Exact {
                slitprop::aperture::Method::Exact
            } else {
                slitprop::aperture::Method::Semiclassical
            };
            let rr = r.clone();
            Box::new(move |y, z| {
                let geo = slitprop::aperture::SlitGeometry::new(
                    Vec3::new(rr.x0, 0.0, 0.0),
                    Vec3::new(rr.x_screen, y, z),
                    rr.t,
                    rr.bc,
                    rr.particle,
                )
                .map_err(|e| CliError::Validation(e.to_string()))?;
                keep_estimate(slitprop::aperture::k_slit(&geo, &aperture, lib_method, &rr.spec))
            })
        }
        MethodKind::Truncation | MethodKind::FourthOrder => {
            let sc = truncation_scenario(r)?;
            Box::new(move |y, z| {
                keep_estimate(if method == MethodKind::Truncation {
                    k_truncation(&sc, y, z)
                } else {
                    k_fourth_order(&sc, y, z)
                })
            })
        }
        MethodKind::Gravity | MethodKind::GravitySemiclassical => {
            let sc = gravity_scenario(r)?;
            let plane = sc.slit_z + r.x_screen;
            let spec = r.spec;
            Box::new(move |y, z| {
                // Grid z maps to the in-plane x1-parallel screen coordinate;
                // the detection plane is normal to the fall direction.
                let screen = Vec3::new(z, y, plane);
                keep_estimate(if method == MethodKind::Gravity {
                    k_gravity(&sc, screen, &spec)
                } else {
                    k_gravity_semiclassical(&sc, screen, &spec)
                })
            })
        }
    };

    let flat: Vec<PointValue> = points
        .par_iter()
        .map(|&(iy, iz)| point_fn(r.y_values[iy], r.z_values[iz]))
        .collect();

    let mut amplitudes = vec![vec![Complex64::new(0.0, 0.0); nz]; ny];
    let mut convergence_failures = 0usize;
    for (&(iy, iz), val) in points.iter().zip(flat) {
        let (a, failed) = val?;
        amplitudes[iy][iz] = a;
        if failed {
            convergence_failures += 1;
        }
    }
    let intensities: Vec<Vec<f64>> = amplitudes
        .iter()
        .map(|row| row.iter().map(|a| a.norm_sqr()).collect())
        .collect();

    let wy = trapezoid_weights(&r.y_values);
    let wz = trapezoid_weights(&r.z_values);
    let mut omega = 0.0;
    for iy in 0..ny {
        for iz in 0..nz {
            omega += wy[iy] * wz[iz] * intensities[iy][iz];
        }
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(CliError::Convergence(format!(
            "pattern normalizer is not positive and finite (Ω = {omega}); no usable output"
        )));
    }
    // Beyond the grid's z edges the intensity is extrapolated with a 1/z²
    // tail: ∫_{|z_e|}^∞ I_e (z_e/z)² dz = I_e |z_e| per y-row.
    let mut tail = 0.0;
    for iy in 0..ny {
        for &iz in &[0usize, nz - 1] {
            let z_edge = r.z_values[iz];
            if z_edge.abs() > 0.0 {
                tail += wy[iy] * intensities[iy][iz] * z_edge.abs();
            }
        }
    }

    Ok(PatternOutput {
        method,
        y_values: r.y_values.clone(),
        z_values: r.z_values.clone(),
        amplitudes,
        intensities,
        omega,
        captured_fraction: omega / (omega + tail),
        convergence_failures,
    })
}

/// Expected Fraunhofer fringe spacing of the run: λL/2a with the half-height
/// for a single slit, λL/2c with the center offset for a double slit.
pub fn expected_fringe_spacing(r: &Resolved) -> Result<f64, CliError> {
    let sc = truncation_scenario(r)?;
    let report = regime_report(&sc, (0.0, 0.0), RegimeThresholds::default());
    let scale = match r.aperture {
        ApertureShape::Rect { half_height_z, .. } => half_height_z,
        ApertureShape::Double { center_offset_z, .. } => center_offset_z,
    };
    Ok(report.fringe_spacing(scale, sc.l_screen()))
}

/// Builds the diagnostics sidecar: regime numbers, both semiclassical-μ
/// conventions, t_c, normalization and run metadata.
pub fn diagnostics_json(
    r: &Resolved,
    out: &PatternOutput,
    threads: usize,
) -> Result<serde_json::Value, CliError> {
    let sc = truncation_scenario(r)?;
    let (z_min, z_max) = (r.z_values[0], *r.z_values.last().unwrap());
    let report = regime_report(&sc, (z_min, z_max), RegimeThresholds::default());

    // Path-length μ of the axial ray: source → slit center → on-axis screen
    // point, μ = m ρ²/(ℏt). The window-midpoint variant is `mu_window`.
    let mu_path = PointSourceGeometry::new(
        Vec3::new(r.x0, 0.0, 0.0),
        Vec3::ZERO,
        Vec3::new(r.x_screen, 0.0, 0.0),
        r.t,
        r.bc,
        r.particle,
    )
    .map(|geo| diagnostics(&geo).mu)
    .map_err(|e| CliError::Validation(e.to_string()))?;

    let mut value = json!({
        "schema_version": crate::config::SCHEMA_VERSION,
        "method": out.method.name(),
        "boundary_condition": r.bc_label,
        "aperture": r.aperture.describe(),
        "overlap_warning": r.aperture.overlaps(),
        "t": r.t,
        "t_c": sc.t_c(),
        "mu": mu_path,
        "mu_path": mu_path,
        "mu_window": report.mu,
        "regime": {
            "class": report.regime.name(),
            "n_f_a": report.n_f_a,
            "n_f_b": report.n_f_b,
            "gamma": report.gamma,
            "gamma_prime": report.gamma_prime,
            "kappa": report.kappa,
            "rho_zoom_inv": report.rho_zoom_inv,
            "q": report.q,
            "lambda0": report.lambda0,
            "lambda": report.lambda,
        },
        "expected_fringe_spacing": expected_fringe_spacing(r)?,
        "omega": out.omega,
        "captured_fraction": out.captured_fraction,
        "grid": {
            "n_y": r.y_values.len(),
            "n_z": r.z_values.len(),
            "z_min": z_min,
            "z_max": z_max,
        },
        "threads": threads,
        "status": if out.convergence_failures == 0 { "ok" } else { "partial" },
        "convergence_failures": out.convergence_failures,
    });
    if let Some(g) = r.g {
        value["gravity"] = json!({ "g": g, "slit_z": -r.x0 });
    }
    Ok(value)
}

/// Fringe comparison of several patterns against the last one (the
/// reference): per-minimum position shifts, per-spacing deltas, and the
/// maximum probability-density gap over the grid.
pub fn compare_json(
    r: &Resolved,
    outputs: &[PatternOutput],
) -> Result<serde_json::Value, CliError> {
    let reference = outputs.last().expect("compare requires at least two methods");
    let spacing = expected_fringe_spacing(r)?;
    // Fringe extraction runs along z on the y-row closest to the axis.
    let row = r
        .y_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();

    let ref_profile: Vec<f64> =
        (0..r.z_values.len()).map(|iz| reference.probability_density(row, iz)).collect();
    let ref_fringes = find_minima(&r.z_values, &ref_profile, spacing);
    let ref_peak = ref_profile.iter().cloned().fold(0.0_f64, f64::max);

    let mut methods = Vec::new();
    for out in &outputs[..outputs.len() - 1] {
        let profile: Vec<f64> =
            (0..r.z_values.len()).map(|iz| out.probability_density(row, iz)).collect();
        let gap = profile
            .iter()
            .zip(&ref_profile)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0_f64, f64::max)
            / ref_peak;

        let fringes = match (&ref_fringes, find_minima(&r.z_values, &profile, spacing)) {
            (Ok(rf), Ok(tf)) => match compare_fringes(&tf, rf) {
                Ok(rep) => json!({
                    "minima_z": tf.minima_z,
                    "reference_minima_z": rf.minima_z,
                    "position_shifts": rep.position_shifts,
                    "delta_spacings": rep.delta_spacings,
                    "length_mismatch_warning": rep.length_mismatch_warning,
                }),
                Err(e) => json!({ "error": e.to_string() }),
            },
            (Err(e), _) => json!({ "error": format!("reference fringes: {e}") }),
            (_, Err(e)) => json!({ "error": e.to_string() }),
        };
        methods.push(json!({
            "method": out.method.name(),
            "max_relative_amplitude_gap": gap,
            "convergence_failures": out.convergence_failures,
            "fringes": fringes,
        }));
    }

    Ok(json!({
        "schema_version": crate::config::SCHEMA_VERSION,
        "reference_method": reference.method.name(),
        "expected_fringe_spacing": spacing,
        "comparison_row_y": r.y_values[row],
        "methods": methods,
    }))
}
