//! Adaptive Gauss–Kronrod (7–15) quadrature for complex-valued integrands.
//!
//! Panels are kept in a worst-error-first queue and split until the summed
//! error estimate meets the requested tolerance. An optional phase-derivative
//! hint pre-splits the initial interval so that no starting panel carries more
//! than `panel_oscillation_budget` radians of phase advance, which keeps the
//! adaptive stage close to optimal on highly oscillatory integrands.

use num_complex::Complex64;
use std::collections::BinaryHeap;

use super::QuadratureSpec;
use crate::error::{Error, Result};

// 15-point Kronrod abscissae (positive half) and weights; embedded 7-point
// Gauss weights. Standard double-precision values.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// A quadrature estimate together with its error bound.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    pub error_bound: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// One Gauss–Kronrod 7–15 application on [a, b].
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];

    let mut samples = [Complex64::new(0.0, 0.0); 15];
    samples[7] = fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        samples[j] = f1;
        samples[14 - j] = f2;
        let sum = f1 + f2;
        resk += sum * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg += sum * WG[j / 2];
        }
    }

    let mean = resk * 0.5;
    let mut resasc = (fc - mean).norm() * WGK[7];
    for j in 0..7 {
        resasc += ((samples[j] - mean).norm() + (samples[14 - j] - mean).norm()) * WGK[j];
    }

    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let eps = f64::EPSILON * 50.0;
    if resabs > f64::MIN_POSITIVE / eps {
        err = err.max(eps * resabs);
    }
    (value, err)
}

/// Recursively split [a, b] until the estimated phase advance per panel,
/// from a |dφ/dx| hint, is below the budget.
fn presplit(hint: &dyn Fn(f64) -> f64, a: f64, b: f64, budget: f64, depth: u32, out: &mut Vec<(f64, f64)>) {
    let m = 0.5 * (a + b);
    let advance = (hint(a).abs() + 4.0 * hint(m).abs() + hint(b).abs()) / 6.0 * (b - a);
    if depth >= 40 || !(advance > budget) {
        out.push((a, b));
    } else {
        presplit(hint, a, m, budget, depth + 1, out);
        presplit(hint, m, b, budget, depth + 1, out);
    }
}

/// Adaptive integration of a complex-valued function on [a, b].
pub fn integrate_1d<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    integrate_1d_hinted(f, a, b, spec, None::<fn(f64) -> f64>)
}

/// As [`integrate_1d`], with an optional |dφ/dx| hint used to pre-split panels.
pub fn integrate_1d_hinted<F, H>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    phase_derivative: Option<H>,
) -> Result<Quadrature>
where
    F: Fn(f64) -> Complex64,
    H: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
    }

    let mut initial = Vec::new();
    match &phase_derivative {
        Some(h) => presplit(h, a, b, spec.panel_oscillation_budget, 0, &mut initial),
        None => initial.push((a, b)),
    }

    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut evals = 0usize;
    for &(pa, pb) in &initial {
        let (v, e) = gk15(&f, pa, pb);
        evals += 15;
        total += v;
        total_err += e;
        heap.push(Panel { a: pa, b: pb, value: v, error: e });
    }

    let mut panels = initial.len();
    loop {
        let tol = spec
            .absolute_tolerance
            .max(spec.relative_tolerance * total.norm());
        if total_err <= tol {
            return Ok(Quadrature { value: total, error_bound: total_err, evaluations: evals });
        }
        if panels >= spec.max_subdivisions {
            return Err(Error::Convergence { estimate: total, error_bound: total_err });
        }
        let worst = heap.pop().expect("non-empty heap");
        let m = 0.5 * (worst.a + worst.b);
        if !(worst.a < m && m < worst.b) {
            // Interval exhausted at machine precision; accept what we have.
            heap.push(worst);
            return Ok(Quadrature { value: total, error_bound: total_err, evaluations: evals });
        }
        let (v1, e1) = gk15(&f, worst.a, m);
        let (v2, e2) = gk15(&f, m, worst.b);
        evals += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: m, value: v1, error: e1 });
        heap.push(Panel { a: m, b: worst.b, value: v2, error: e2 });
        panels += 1;
    }
}

/// Iterated 2D integration over [a1, b1] × [a2, b2]; the first axis is the
/// inner integral.
pub fn integrate_2d<F: Fn(f64, f64) -> Complex64>(
    f: F,
    rect: [f64; 4],
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    integrate_2d_hinted(f, rect, spec, None::<fn(f64, f64) -> f64>, None::<fn(f64) -> f64>)
}

/// Iterated 2D integration with optional per-axis phase-derivative hints.
///
/// `hint_inner(u, v)` estimates |dφ/du| at fixed outer coordinate v;
/// `hint_outer(v)` estimates |dφ/dv| along a representative inner line.
pub fn integrate_2d_hinted<F, Hi, Ho>(
    f: F,
    rect: [f64; 4],
    spec: &QuadratureSpec,
    hint_inner: Option<Hi>,
    hint_outer: Option<Ho>,
) -> Result<Quadrature>
where
    F: Fn(f64, f64) -> Complex64,
    Hi: Fn(f64, f64) -> f64,
    Ho: Fn(f64) -> f64,
{
    let [a1, b1, a2, b2] = rect;
    let inner_spec = QuadratureSpec {
        relative_tolerance: spec.relative_tolerance * 0.1,
        absolute_tolerance: spec.absolute_tolerance * 0.1 / (b2 - a2).abs().max(1e-300),
        ..*spec
    };
    let evals = std::cell::Cell::new(0usize);
    let inner_failed = std::cell::Cell::new(false);
    let outer = |v: f64| -> Complex64 {
        let r = integrate_1d_hinted(
            |u| f(u, v),
            a1,
            b1,
            &inner_spec,
            hint_inner.as_ref().map(|h| move |u: f64| h(u, v)),
        );
        match r {
            Ok(q) => {
                evals.set(evals.get() + q.evaluations);
                q.value
            }
            Err(Error::Convergence { estimate, .. }) => {
                inner_failed.set(true);
                estimate
            }
            Err(_) => {
                inner_failed.set(true);
                Complex64::new(f64::NAN, f64::NAN)
            }
        }
    };
    let result = integrate_1d_hinted(outer, a2, b2, spec, hint_outer);
    match result {
        Ok(mut q) => {
            if inner_failed.get() {
                return Err(Error::Convergence { estimate: q.value, error_bound: f64::INFINITY });
            }
            q.evaluations += evals.get();
            Ok(q)
        }
        e => e,
    }
}
