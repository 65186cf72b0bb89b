//! Fresnel integrals C(u) = ∫₀ᵘ cos(πw²/2) dw and S(u) = ∫₀ᵘ sin(πw²/2) dw.
//!
//! Small arguments use the defining power series; larger arguments use the
//! exact identity C(u) + iS(u) = (1+i)/2 · erf(√π/2 (1−i) u), evaluated with
//! the complex error function (which switches to a continued fraction for
//! large moduli, so the full argument range up to ~1e3 is covered).

use num_complex::Complex64;
use std::f64::consts::PI;

use super::erfc::erf_complex;
use crate::error::{Error, Result};

const SERIES_CUTOFF: f64 = 1.6;

fn fresnel_series(u: f64) -> (f64, f64) {
    // C: Σ (−1)^k (π/2)^{2k} u^{4k+1} / ((2k)! (4k+1))
    // S: Σ (−1)^k (π/2)^{2k+1} u^{4k+3} / ((2k+1)! (4k+3))
    let x = PI / 2.0 * u * u;
    let x2 = x * x;
    let mut c = 0.0;
    let mut s = 0.0;
    // term_c = (−1)^k x^{2k} / (2k)!, term_s = (−1)^k x^{2k+1} / (2k+1)!
    let mut term_c = 1.0;
    let mut term_s = x;
    for k in 0..40 {
        let kc = 4.0 * k as f64 + 1.0;
        let ks = 4.0 * k as f64 + 3.0;
        c += term_c / kc;
        s += term_s / ks;
        let div = ((2 * k + 2) * (2 * k + 3)) as f64;
        term_c *= -x2 / ((2 * k + 1) as f64 * (2 * k + 2) as f64);
        term_s *= -x2 / div;
        if term_c.abs() < 1e-18 && term_s.abs() < 1e-18 {
            break;
        }
    }
    (u * c, u * s)
}

fn fresnel_erf(u: f64) -> (f64, f64) {
    let half_sqrt_pi = PI.sqrt() / 2.0;
    let zeta = Complex64::new(half_sqrt_pi * u, -half_sqrt_pi * u);
    let e = erf_complex(zeta).expect("finite argument");
    let v = Complex64::new(0.5, 0.5) * e;
    (v.re, v.im)
}

fn fresnel_pair(u: f64) -> Result<(f64, f64)> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("fresnel of non-finite argument {u}")));
    }
    let (c, s) = if u.abs() <= SERIES_CUTOFF {
        fresnel_series(u.abs())
    } else {
        fresnel_erf(u.abs())
    };
    if u >= 0.0 {
        Ok((c, s))
    } else {
        Ok((-c, -s))
    }
}

pub fn fresnel_c(u: f64) -> Result<f64> {
    fresnel_pair(u).map(|(c, _)| c)
}

pub fn fresnel_s(u: f64) -> Result<f64> {
    fresnel_pair(u).map(|(_, s)| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_zero() {
        assert_eq!(fresnel_c(0.0).unwrap(), 0.0);
        assert_eq!(fresnel_s(0.0).unwrap(), 0.0);
    }

    #[test]
    fn odd_symmetry() {
        for u in [0.3, 0.7, 1.3, 2.4, 17.0] {
            assert_eq!(fresnel_c(u).unwrap(), -fresnel_c(-u).unwrap());
            assert_eq!(fresnel_s(u).unwrap(), -fresnel_s(-u).unwrap());
        }
    }

    #[test]
    fn reference_values() {
        // C(1), S(1), C(2), S(2) from standard tables.
        assert!((fresnel_c(1.0).unwrap() - 0.779893400376823).abs() < 1e-13);
        assert!((fresnel_s(1.0).unwrap() - 0.438259147390355).abs() < 1e-13);
        assert!((fresnel_c(2.0).unwrap() - 0.488253406075341).abs() < 1e-12);
        assert!((fresnel_s(2.0).unwrap() - 0.343415678363698).abs() < 1e-12);
    }

    #[test]
    fn series_and_erf_branches_agree_at_crossover() {
        for u in [1.2, 1.4, 1.59, 1.6] {
            let (cs, ss) = fresnel_series(u);
            let (ce, se) = fresnel_erf(u);
            assert!((cs - ce).abs() < 1e-13, "C mismatch at {u}: {cs} vs {ce}");
            assert!((ss - se).abs() < 1e-13, "S mismatch at {u}: {ss} vs {se}");
        }
    }

    #[test]
    fn limit_at_large_argument() {
        // C, S → 1/2 as u → ∞; asymptotic leading corrections ~ 1/(πu).
        for u in [50.0, 400.0, 1e3] {
            let c = fresnel_c(u).unwrap();
            let s = fresnel_s(u).unwrap();
            assert!((c - 0.5).abs() < 1.0 / (PI * u) * 1.01 + 1e-12);
            assert!((s - 0.5).abs() < 1.0 / (PI * u) * 1.01 + 1e-12);
        }
    }

    #[test]
    fn non_finite_rejected() {
        assert!(fresnel_c(f64::NAN).is_err());
        assert!(fresnel_s(f64::INFINITY).is_err());
    }
}
