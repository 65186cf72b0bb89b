//! Complex error functions via the Faddeeva function w(z) = e^{−z²} erfc(−iz).
//!
//! w(z) in the upper half-plane is computed with Weideman's rational
//! approximation (N = 64 terms, coefficients built once by a direct DFT of
//! samples of e^{−t²}); for |z| > 8 a Laplace continued fraction is used
//! instead. The lower half-plane follows from w(−z) = 2e^{−z²} − w(z).
//! erfc(z) for Re z ≥ 0 is e^{−z²} w(iz); Re z < 0 uses erfc(z) = 2 − erfc(−z).

use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const N_WEIDEMAN: usize = 64;
const INV_SQRT_PI: f64 = 0.564189583547756286948079451560772586_f64;

/// Polynomial coefficients of the Weideman approximation, highest degree first.
static WEIDEMAN_A: Lazy<[f64; N_WEIDEMAN]> = Lazy::new(|| {
    let n = N_WEIDEMAN;
    let m = 2 * n; // 128
    let m2 = 2 * m; // 256
    let l = (n as f64 / std::f64::consts::SQRT_2).sqrt();

    // Samples of e^{−t²}(L² + t²) on the mapped grid t = L tan(θ/2),
    // θ = kπ/M for k = −M+1 .. M−1, with a leading zero entry.
    let mut f = vec![0.0f64; m2];
    for (i, k) in (-(m as i64) + 1..=(m as i64) - 1).enumerate() {
        let theta = k as f64 * PI / m as f64;
        let t = l * (theta / 2.0).tan();
        f[i + 1] = (-t * t).exp() * (l * l + t * t);
    }

    // a_n = Re(DFT(fftshift(f)))_n / M2 for n = 1..N, stored reversed.
    let mut a = [0.0f64; N_WEIDEMAN];
    for nn in 1..=n {
        let mut acc = 0.0;
        for (j, _) in f.iter().enumerate() {
            let jj = (j + m) % m2;
            let ang = -2.0 * PI * (nn as f64) * (j as f64) / m2 as f64;
            acc += f[jj] * ang.cos();
        }
        a[nn - 1] = acc / m2 as f64;
    }
    a.reverse();
    a
});

/// Weideman rational approximation of w(z), valid for Im z ≥ 0, moderate |z|.
fn w_weideman(z: Complex64) -> Complex64 {
    let l = (N_WEIDEMAN as f64 / std::f64::consts::SQRT_2).sqrt();
    let iz = Complex64::new(-z.im, z.re); // i z
    let denom = l - iz;
    let zz = (l + iz) / denom;
    let mut p = Complex64::new(0.0, 0.0);
    for &c in WEIDEMAN_A.iter() {
        p = p * zz + c;
    }
    p * 2.0 / (denom * denom) + INV_SQRT_PI / denom
}

/// Laplace continued fraction for w(z), accurate for large |z| with Im z ≥ 0.
fn w_continued_fraction(z: Complex64) -> Complex64 {
    let mut r = Complex64::new(0.0, 0.0);
    for k in (1..=36).rev() {
        r = (k as f64 / 2.0) / (z - r);
    }
    Complex64::new(0.0, INV_SQRT_PI) / (z - r)
}

fn w_upper(z: Complex64) -> Complex64 {
    if z.norm_sqr() > 64.0 {
        w_continued_fraction(z)
    } else {
        w_weideman(z)
    }
}

/// Faddeeva function w(z) = e^{−z²} erfc(−iz) for arbitrary complex z.
pub fn faddeeva_w(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        w_upper(z)
    } else {
        // w(z) = 2 e^{−z²} − w(−z); may overflow for large |Im z|, which is
        // the true behaviour of w there.
        (-z * z).exp() * 2.0 - w_upper(-z)
    }
}

/// Complementary error function of a complex argument.
pub fn erfc_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("erfc of non-finite argument {z}")));
    }
    Ok(erfc_unchecked(z))
}

fn erfc_unchecked(z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        let iz = Complex64::new(-z.im, z.re);
        (-z * z).exp() * w_upper(iz)
    } else {
        2.0 - erfc_unchecked(-z)
    }
}

/// Error function of a complex argument.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    Ok(1.0 - erfc_complex(z)?)
}
