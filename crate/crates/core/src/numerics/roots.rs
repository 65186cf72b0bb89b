//! Real root isolation for low-degree polynomials by recursive critical-point
//! splitting: the roots of p' partition (lo, hi) into monotone pieces, each of
//! which holds at most one root found by bisection and polished by Newton.

use crate::error::{Error, Result};

/// Evaluate a polynomial with ascending coefficients at x.
fn eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

/// Effective degree after dropping negligible leading coefficients.
fn trim(coeffs: &[f64]) -> &[f64] {
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].abs() <= 1e-14 * max {
        n -= 1;
    }
    &coeffs[..n]
}

fn bisect_refine(coeffs: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = eval(coeffs, a);
    for _ in 0..120 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = eval(coeffs, m);
        if fm == 0.0 {
            return m;
        }
        if (fa < 0.0) == (fm < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    // Newton polish within the bracket.
    let deriv = derivative(coeffs);
    let mut x = 0.5 * (a + b);
    for _ in 0..4 {
        let d = eval(&deriv, x);
        if d == 0.0 {
            break;
        }
        let step = eval(coeffs, x) / d;
        let xn = x - step;
        if xn > a && xn < b {
            x = xn;
        } else {
            break;
        }
    }
    x
}

fn roots_recursive(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let coeffs = trim(coeffs);
    let degree = coeffs.len().saturating_sub(1);
    match degree {
        0 => Vec::new(),
        1 => {
            let r = -coeffs[0] / coeffs[1];
            if r > lo && r < hi {
                vec![r]
            } else {
                Vec::new()
            }
        }
        _ => {
            let deriv = derivative(coeffs);
            let mut cuts = vec![lo];
            cuts.extend(roots_recursive(&deriv, lo, hi));
            cuts.push(hi);

            let max_c = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let xscale = lo.abs().max(hi.abs()).max(1.0);
            let tol = 1e-12 * max_c * xscale.powi(degree as i32);

            let mut found = Vec::new();
            for w in cuts.windows(2) {
                let (a, b) = (w[0], w[1]);
                if !(b > a) {
                    continue;
                }
                let fa = eval(coeffs, a);
                let fb = eval(coeffs, b);
                if (fa < 0.0) != (fb < 0.0) && fa != 0.0 && fb != 0.0 {
                    found.push(bisect_refine(coeffs, a, b));
                } else if fb == 0.0 || (fb.abs() <= tol * 1e-2 && b < hi) {
                    // Root at a critical point (even multiplicity) or exact hit.
                    if b > lo && b < hi {
                        found.push(b);
                    }
                }
            }
            found
        }
    }
}

/// All real roots of the polynomial (ascending coefficients, degree ≤ 6)
/// strictly inside (lo, hi), sorted ascending, multiplicity-collapsed.
pub fn real_roots_in_interval(coeffs: &[f64], lo: f64, hi: f64) -> Result<Vec<f64>> {
    if coeffs.len() > 7 {
        return Err(Error::Domain(format!(
            "polynomial degree {} exceeds supported degree 6",
            coeffs.len() - 1
        )));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("invalid interval ({lo}, {hi})")));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain("non-finite polynomial coefficient".into()));
    }
    if trim(coeffs).is_empty() {
        return Err(Error::Domain("degenerate all-zero polynomial".into()));
    }

    let mut roots = roots_recursive(coeffs, lo, hi);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (hi - lo));
    roots.retain(|r| *r > lo && *r < hi);
    Ok(roots)
}
