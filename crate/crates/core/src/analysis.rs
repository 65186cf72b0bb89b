//! Fringe extraction and comparison for computed diffraction patterns.
//!
//! Operates on sampled intensity profiles only — no model assumptions beyond
//! "oscillatory with a known approximate fringe spacing". Minima are located
//! to sub-sample accuracy by quadratic interpolation; patterns from different
//! propagation models are compared by per-fringe spacing changes
//! δ_n = (Δz′_n − Δz_n)/Δz_n and by per-minimum position shifts
//! (z′_n − z_n)/z_n.

use crate::error::{Error, Result};

/// Fringe structure extracted from one intensity profile.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeSet {
    /// Sub-sample minima locations, sorted ascending.
    pub minima_z: Vec<f64>,
    /// Successive differences of `minima_z`; one shorter.
    pub spacings: Vec<f64>,
    /// Per-minimum relative position shifts vs a reference set; empty until
    /// [`FringeSet::set_reference`] or [`compare_fringes`] fills it.
    pub shifts_vs_reference: Vec<f64>,
    /// Local maximum intensity between consecutive minima (and flanking
    /// them), in order.
    pub peak_amplitudes: Vec<f64>,
}

impl FringeSet {
    /// Fills `shifts_vs_reference` with (z_n − z_ref_n)/z_ref_n paired by
    /// index up to the shorter length.
    pub fn set_reference(&mut self, reference: &FringeSet) {
        let n = self.minima_z.len().min(reference.minima_z.len());
        self.shifts_vs_reference = (0..n)
            .map(|i| {
                let zr = reference.minima_z[i];
                if zr.abs() < 1e-300 {
                    self.minima_z[i] - zr
                } else {
                    (self.minima_z[i] - zr) / zr
                }
            })
            .collect();
    }

    pub fn mean_spacing(&self) -> Option<f64> {
        if self.spacings.is_empty() {
            None
        } else {
            Some(self.spacings.iter().sum::<f64>() / self.spacings.len() as f64)
        }
    }
}

/// Comparison of two fringe sets.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftReport {
    /// δ_n = (Δz′_n − Δz_n)/Δz_n per spacing index.
    pub delta_spacings: Vec<f64>,
    /// (z′_n − z_n)/z_n per minimum index (absolute difference where the
    /// reference minimum sits at z = 0).
    pub position_shifts: Vec<f64>,
    /// True when the two sets had different fringe counts and were paired up
    /// to the shorter length.
    pub length_mismatch_warning: bool,
}

/// A local minimum qualifies only when it is below `MIN_CONTRAST` times both
/// neighboring maxima; this suppresses quadrature-noise ripples on nearly
/// flat stretches.
const MIN_CONTRAST: f64 = 0.8;

fn vertex_of_three(z: &[f64], v: &[f64], i: usize) -> f64 {
    // Standard three-point parabola vertex (uniform or non-uniform grid).
    let (x0, x1, x2) = (z[i - 1], z[i], z[i + 1]);
    let (y0, y1, y2) = (v[i - 1], v[i], v[i + 1]);
    let denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
    let a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
    let b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
    if a.abs() < 1e-300 {
        x1
    } else {
        -b / (2.0 * a)
    }
}

/// Locates intensity minima of a sampled profile.
///
/// `z` must be strictly increasing; `expected_spacing` is the caller's fringe
/// spacing estimate (e.g. λL/2a), used to verify the sampling resolves the
/// fringes (≥ 8 samples per fringe). Needs at least 5 samples. Returns
/// [`Error::InsufficientFringes`] when fewer than 2 qualifying minima exist.
pub fn find_minima(z: &[f64], intensity: &[f64], expected_spacing: f64) -> Result<FringeSet> {
    if z.len() != intensity.len() {
        return Err(Error::Domain(format!(
            "z and intensity lengths differ: {} vs {}",
            z.len(),
            intensity.len()
        )));
    }
    if z.len() < 5 {
        return Err(Error::Domain(format!("need at least 5 samples, got {}", z.len())));
    }
    if !(expected_spacing > 0.0) {
        return Err(Error::Domain(format!(
            "expected fringe spacing must be > 0, got {expected_spacing}"
        )));
    }
    let mut max_step = 0.0f64;
    for w in z.windows(2) {
        let step = w[1] - w[0];
        if !(step > 0.0) {
            return Err(Error::Domain("z samples must be strictly increasing".into()));
        }
        max_step = max_step.max(step);
    }
    if max_step > expected_spacing / 8.0 {
        return Err(Error::Domain(format!(
            "sampling too coarse: step {max_step} exceeds expected_spacing/8 = {}",
            expected_spacing / 8.0
        )));
    }

    // Discrete local minima / maxima (strict on one side to survive plateaus
    // of length 2 from symmetric sampling).
    let n = z.len();
    let mut min_idx = Vec::new();
    let mut max_idx = Vec::new();
    for i in 1..n - 1 {
        if intensity[i] < intensity[i - 1] && intensity[i] <= intensity[i + 1] {
            min_idx.push(i);
        }
        if intensity[i] > intensity[i - 1] && intensity[i] >= intensity[i + 1] {
            max_idx.push(i);
        }
    }

    let neighbor_max = |i: usize, side_right: bool| -> f64 {
        // Largest intensity between this minimum and the adjacent extreme of
        // the profile / next minimum, approximated by the nearest discrete
        // maximum on that side (profile edge counts as a maximum candidate).
        if side_right {
            max_idx
                .iter()
                .find(|&&m| m > i)
                .map(|&m| intensity[m])
                .unwrap_or_else(|| intensity[i + 1..].iter().cloned().fold(f64::MIN, f64::max))
        } else {
            max_idx
                .iter()
                .rev()
                .find(|&&m| m < i)
                .map(|&m| intensity[m])
                .unwrap_or_else(|| intensity[..i].iter().cloned().fold(f64::MIN, f64::max))
        }
    };

    let mut minima_z = Vec::new();
    let mut kept_idx = Vec::new();
    for &i in &min_idx {
        let left = neighbor_max(i, false);
        let right = neighbor_max(i, true);
        if intensity[i] < MIN_CONTRAST * left && intensity[i] < MIN_CONTRAST * right {
            minima_z.push(vertex_of_three(z, intensity, i));
            kept_idx.push(i);
        }
    }
    if minima_z.len() < 2 {
        return Err(Error::InsufficientFringes(format!(
            "found {} qualifying minima, need at least 2",
            minima_z.len()
        )));
    }

    // Peak amplitudes: highest sample before the first minimum, between each
    // consecutive pair, and after the last.
    let mut peak_amplitudes = Vec::with_capacity(kept_idx.len() + 1);
    let mut segment_peak = |lo: usize, hi: usize| {
        if lo < hi {
            peak_amplitudes.push(intensity[lo..hi].iter().cloned().fold(f64::MIN, f64::max));
        }
    };
    segment_peak(0, kept_idx[0]);
    for w in kept_idx.windows(2) {
        segment_peak(w[0] + 1, w[1]);
    }
    segment_peak(kept_idx[kept_idx.len() - 1] + 1, n);

    let spacings = minima_z.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(FringeSet {
        minima_z,
        spacings,
        shifts_vs_reference: Vec::new(),
        peak_amplitudes,
    })
}

/// Compares a test fringe set against a reference set: per-fringe spacing
/// changes δ_n and per-minimum position shifts, paired by index. Different
/// lengths pair up to the shorter length and set the warning flag.
pub fn compare_fringes(test: &FringeSet, reference: &FringeSet) -> Result<ShiftReport> {
    if test.minima_z.len() < 2 || reference.minima_z.len() < 2 {
        return Err(Error::InsufficientFringes(
            "both fringe sets need at least 2 minima to compare".into(),
        ));
    }
    let ns = test.spacings.len().min(reference.spacings.len());
    let delta_spacings = (0..ns)
        .map(|i| (test.spacings[i] - reference.spacings[i]) / reference.spacings[i])
        .collect();
    let nm = test.minima_z.len().min(reference.minima_z.len());
    let position_shifts = (0..nm)
        .map(|i| {
            let zr = reference.minima_z[i];
            if zr.abs() < 1e-300 {
                test.minima_z[i] - zr
            } else {
                (test.minima_z[i] - zr) / zr
            }
        })
        .collect();
    Ok(ShiftReport {
        delta_spacings,
        position_shifts,
        length_mismatch_warning: test.minima_z.len() != reference.minima_z.len(),
    })
}

/// Upper envelope of an oscillatory profile: the profile's local maxima,
/// linearly interpolated back onto the input grid. Returns
/// [`Error::InsufficientPeaks`] with fewer than 3 interior peaks.
pub fn envelope(z: &[f64], intensity: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if z.len() != intensity.len() || z.len() < 5 {
        return Err(Error::Domain(
            "envelope needs equal-length z/intensity with at least 5 samples".into(),
        ));
    }
    let n = z.len();
    let mut peaks_z = Vec::new();
    let mut peaks_v = Vec::new();
    for i in 1..n - 1 {
        if intensity[i] > intensity[i - 1] && intensity[i] >= intensity[i + 1] {
            peaks_z.push(vertex_of_three(z, intensity, i));
            // Peak height from the same parabola, clamped to the sample
            // value from below.
            let zi = *peaks_z.last().unwrap();
            let h = parabola_value(z, intensity, i, zi).max(intensity[i]);
            peaks_v.push(h);
        }
    }
    if peaks_z.len() < 3 {
        return Err(Error::InsufficientPeaks(format!(
            "found {} peaks, need at least 3",
            peaks_z.len()
        )));
    }
    // Interpolate the peak polyline onto the input grid (clamped at ends).
    let mut env = Vec::with_capacity(n);
    let mut j = 0usize;
    for &zz in z {
        while j + 1 < peaks_z.len() && peaks_z[j + 1] < zz {
            j += 1;
        }
        let v = if zz <= peaks_z[0] {
            peaks_v[0]
        } else if zz >= *peaks_z.last().unwrap() {
            *peaks_v.last().unwrap()
        } else {
            let (za, zb) = (peaks_z[j], peaks_z[j + 1]);
            let (va, vb) = (peaks_v[j], peaks_v[j + 1]);
            va + (vb - va) * (zz - za) / (zb - za)
        };
        env.push(v);
    }
    Ok((z.to_vec(), env))
}

fn parabola_value(z: &[f64], v: &[f64], i: usize, at: f64) -> f64 {
    let (x0, x1, x2) = (z[i - 1], z[i], z[i + 1]);
    let (y0, y1, y2) = (v[i - 1], v[i], v[i + 1]);
    let l0 = (at - x1) * (at - x2) / ((x0 - x1) * (x0 - x2));
    let l1 = (at - x0) * (at - x2) / ((x1 - x0) * (x1 - x2));
    let l2 = (at - x0) * (at - x1) / ((x2 - x0) * (x2 - x1));
    y0 * l0 + y1 * l1 + y2 * l2
}

/// Pearson correlation coefficient of two equal-length samples.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::Domain(
            "pearson needs two equal-length samples of at least 2 points".into(),
        ));
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        return Err(Error::Domain("pearson undefined for a constant sample".into()));
    }
    Ok(cov / (va * vb).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn sin_squared_minima_at_multiples_of_period() {
        let delta = 0.7;
        let z = grid(0.1, 5.0, 4001);
        let v: Vec<f64> = z
            .iter()
            .map(|&zz| (std::f64::consts::PI * zz / delta).sin().powi(2))
            .collect();
        let fs = find_minima(&z, &v, delta).unwrap();
        assert!(fs.minima_z.len() >= 6, "found {:?}", fs.minima_z.len());
        for &m in &fs.minima_z {
            let nearest = (m / delta).round() * delta;
            assert!((m - nearest).abs() < 1e-3 * delta, "minimum at {m}");
        }
        for &s in &fs.spacings {
            assert!((s - delta).abs() < 2e-3 * delta);
        }
        // Interior segments each straddle a full carrier peak; the flanking
        // segments may be cut off by the profile edges.
        for &pk in &fs.peak_amplitudes[1..fs.peak_amplitudes.len() - 1] {
            assert!((pk - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn constant_profile_has_no_fringes() {
        let z = grid(0.0, 1.0, 101);
        let v = vec![3.5; 101];
        match find_minima(&z, &v, 0.1) {
            Err(Error::InsufficientFringes(_)) => {}
            other => panic!("expected InsufficientFringes, got {other:?}"),
        }
    }

    #[test]
    fn shallow_ripples_are_rejected() {
        // 5% ripples never drop below 0.8× the neighboring maxima.
        let z = grid(0.0, 10.0, 2001);
        let v: Vec<f64> = z.iter().map(|&zz| 1.0 + 0.05 * (8.0 * zz).cos()).collect();
        match find_minima(&z, &v, 2.0 * std::f64::consts::PI / 8.0) {
            Err(Error::InsufficientFringes(_)) => {}
            other => panic!("expected InsufficientFringes, got {other:?}"),
        }
    }

    #[test]
    fn coarse_sampling_is_rejected() {
        let z = grid(0.0, 10.0, 21);
        let v: Vec<f64> = z.iter().map(|&zz| zz.sin().powi(2)).collect();
        assert!(matches!(find_minima(&z, &v, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn rescaling_invariance() {
        let z = grid(0.1, 5.0, 2001);
        let v: Vec<f64> = z
            .iter()
            .map(|&zz| (std::f64::consts::PI * zz / 0.7).sin().powi(2))
            .collect();
        let v_scaled: Vec<f64> = v.iter().map(|&x| 17.3 * x).collect();
        let a = find_minima(&z, &v, 0.7).unwrap();
        let b = find_minima(&z, &v_scaled, 0.7).unwrap();
        assert_eq!(a.minima_z.len(), b.minima_z.len());
        for (x, y) in a.minima_z.iter().zip(&b.minima_z) {
            // Same minima up to rounding of the vertex arithmetic.
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn translation_covariance() {
        let delta = 0.7;
        let c = 0.1234;
        let profile = |zz: f64| (std::f64::consts::PI * zz / delta).sin().powi(2) * (1.0 + 0.1 * zz);
        let z = grid(0.1, 5.0, 3001);
        let v: Vec<f64> = z.iter().map(|&zz| profile(zz)).collect();
        let v_shifted: Vec<f64> = z.iter().map(|&zz| profile(zz - c)).collect();
        let a = find_minima(&z, &v, delta).unwrap();
        let b = find_minima(&z, &v_shifted, delta).unwrap();
        let n = a.minima_z.len().min(b.minima_z.len());
        let mut matched = 0;
        for i in 0..n {
            // Pair minima by nearest shifted partner.
            if let Some(&bm) = b
                .minima_z
                .iter()
                .min_by(|&&p, &&q| {
                    (p - a.minima_z[i] - c).abs().total_cmp(&(q - a.minima_z[i] - c).abs())
                })
            {
                if (bm - a.minima_z[i] - c).abs() < 1e-6 * delta {
                    matched += 1;
                }
            }
        }
        assert!(matched >= n - 1, "only {matched} of {n} minima translate");
    }

    #[test]
    fn compare_identical_sets() {
        let z = grid(0.1, 5.0, 2001);
        let v: Vec<f64> = z
            .iter()
            .map(|&zz| (std::f64::consts::PI * zz / 0.7).sin().powi(2))
            .collect();
        let fs = find_minima(&z, &v, 0.7).unwrap();
        let rep = compare_fringes(&fs, &fs).unwrap();
        assert!(rep.delta_spacings.iter().all(|&d| d == 0.0));
        assert!(rep.position_shifts.iter().all(|&d| d == 0.0));
        assert!(!rep.length_mismatch_warning);
    }

    #[test]
    fn uniform_spacing_stretch_gives_constant_delta() {
        let reference = FringeSet {
            minima_z: vec![1.0, 2.0, 3.0, 4.0],
            spacings: vec![1.0, 1.0, 1.0],
            shifts_vs_reference: vec![],
            peak_amplitudes: vec![],
        };
        let test = FringeSet {
            minima_z: vec![1.0, 2.1, 3.2, 4.3],
            spacings: vec![1.1, 1.1, 1.1],
            shifts_vs_reference: vec![],
            peak_amplitudes: vec![],
        };
        let rep = compare_fringes(&test, &reference).unwrap();
        for &d in &rep.delta_spacings {
            assert!((d - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn length_mismatch_warns() {
        let reference = FringeSet {
            minima_z: vec![1.0, 2.0, 3.0],
            spacings: vec![1.0, 1.0],
            shifts_vs_reference: vec![],
            peak_amplitudes: vec![],
        };
        let test = FringeSet {
            minima_z: vec![1.0, 2.0],
            spacings: vec![1.0],
            shifts_vs_reference: vec![],
            peak_amplitudes: vec![],
        };
        let rep = compare_fringes(&test, &reference).unwrap();
        assert!(rep.length_mismatch_warning);
        assert_eq!(rep.delta_spacings.len(), 1);
        assert_eq!(rep.position_shifts.len(), 2);
    }

    #[test]
    fn envelope_recovers_gaussian() {
        // sin² carrier under a Gaussian: envelope within 5% RMS of the
        // Gaussian over the well-sampled interior.
        let z = grid(-3.0, 3.0, 6001);
        let gauss = |zz: f64| (-zz * zz / 2.0).exp();
        let v: Vec<f64> = z
            .iter()
            .map(|&zz| gauss(zz) * (20.0 * zz).sin().powi(2))
            .collect();
        let (_, env) = envelope(&z, &v).unwrap();
        let mut sq = 0.0;
        let mut cnt = 0usize;
        for (i, &zz) in z.iter().enumerate() {
            if zz.abs() < 2.5 {
                let rel = (env[i] - gauss(zz)) / gauss(zz);
                sq += rel * rel;
                cnt += 1;
            }
        }
        let rms = (sq / cnt as f64).sqrt();
        assert!(rms < 0.05, "envelope RMS error {rms:.3}");
    }

    #[test]
    fn monotone_profile_has_no_peaks() {
        let z = grid(0.0, 1.0, 101);
        let v: Vec<f64> = z.iter().map(|&zz| zz * zz).collect();
        match envelope(&z, &v) {
            Err(Error::InsufficientPeaks(_)) => {}
            other => panic!("expected InsufficientPeaks, got {other:?}"),
        }
    }

    #[test]
    fn pearson_basics() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [2.0, 4.0, 6.0, 8.0];
        let c = [8.0, 6.0, 4.0, 2.0];
        assert!((pearson(&a, &b).unwrap() - 1.0).abs() < 1e-14);
        assert!((pearson(&a, &c).unwrap() + 1.0).abs() < 1e-14);
        assert!(pearson(&a, &[1.0, 1.0, 1.0, 1.0]).is_err());
    }
}
