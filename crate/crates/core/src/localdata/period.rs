use std::f64::consts::PI;

use num_traits::Signed;

use crate::arith::to_f64;
use crate::curve::CurveModel;

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..100 {
        if (a - b).abs() <= 1e-16 * a.abs() {
            break;
        }
        let m = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = m;
    }
    0.5 * (a + b)
}

/// Real roots of g(x) = 4x³ + b2x² + 2b4x + b6, descending.
fn real_roots(e: &CurveModel) -> Vec<f64> {
    let b2 = to_f64(&e.b2());
    let b4 = to_f64(&e.b4());
    let b6 = to_f64(&e.b6());
    // x³ + Bx² + Cx + D
    let (bb, cc, dd) = (b2 / 4.0, b4 / 2.0, b6 / 4.0);
    let shift = bb / 3.0;
    let pp = cc - bb * bb / 3.0;
    let qq = 2.0 * bb * bb * bb / 27.0 - bb * cc / 3.0 + dd;
    let mut roots = if e.discriminant().is_positive() {
        let m = 2.0 * (-pp / 3.0).sqrt();
        let arg = (3.0 * qq / (pp * m)).clamp(-1.0, 1.0);
        let th = arg.acos() / 3.0;
        (0..3).map(|k| m * (th - 2.0 * PI * k as f64 / 3.0).cos() - shift).collect::<Vec<_>>()
    } else {
        let disc = (qq * qq / 4.0 + pp * pp * pp / 27.0).max(0.0).sqrt();
        let t = (-qq / 2.0 + disc).cbrt() + (-qq / 2.0 - disc).cbrt();
        vec![t - shift]
    };
    let g = |x: f64| ((x + bb) * x + cc) * x + dd;
    let dg = |x: f64| (3.0 * x + 2.0 * bb) * x + cc;
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let d = dg(*r);
            if d == 0.0 {
                break;
            }
            let step = g(*r) / d;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

/// ∫|ω| over all of E(ℝ) for the standard differential ω = dx/(2y + a1x + a3).
pub fn real_period(e: &CurveModel) -> f64 {
    let r = real_roots(e);
    if r.len() == 3 {
        let (e1, e2, e3) = (r[0], r[1], r[2]);
        // two components of equal measure
        2.0 * PI / agm((e1 - e3).sqrt(), (e1 - e2).sqrt())
    } else {
        let (beta, alpha) = beta_alpha(e, r[0]);
        2.0 * PI / agm(2.0 * beta.sqrt(), (2.0 * beta + alpha).sqrt())
    }
}

fn beta_alpha(e: &CurveModel, e1: f64) -> (f64, f64) {
    let b2 = to_f64(&e.b2());
    let b4 = to_f64(&e.b4());
    let beta = (3.0 * e1 * e1 + b2 / 2.0 * e1 + b4 / 2.0).sqrt();
    (beta, 3.0 * e1 + b2 / 4.0)
}

/// Covolume of the period lattice of ω.
pub fn lattice_area(e: &CurveModel) -> f64 {
    let r = real_roots(e);
    if r.len() == 3 {
        let (e1, e2, e3) = (r[0], r[1], r[2]);
        let w1 = PI / agm((e1 - e3).sqrt(), (e1 - e2).sqrt());
        let w2 = PI / agm((e1 - e3).sqrt(), (e2 - e3).sqrt());
        w1 * w2
    } else {
        let (beta, alpha) = beta_alpha(e, r[0]);
        let w1 = 2.0 * PI / agm(2.0 * beta.sqrt(), (2.0 * beta + alpha).sqrt());
        let im = PI / agm(2.0 * beta.sqrt(), (2.0 * beta - alpha).sqrt());
        w1 * im
    }
}

/// Twice the area of E(ℂ) = ℂ/Λ measured by (i/2)·ω∧ω̄, i.e. 2·covol(Λ).
/// This is the normalization for which C_{E/ℚ}·C_{E_d/ℚ}·√|d| = C_{E/ℚ(√d)}
/// at infinity when d < 0.
pub fn complex_c_term(e: &CurveModel) -> f64 {
    2.0 * lattice_area(e)
}
