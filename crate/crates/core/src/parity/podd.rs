use std::collections::BTreeMap;

use serde::Serialize;

use super::{Place, PlaceReport, SigmaTerm};
use crate::arith::poly::QPoly;
use crate::arith::{is_prime_u64, to_f64};
use crate::rootnum::bad_primes;
use crate::curve::{velu_isogenous, CurveModel};
use crate::error::{arg, unsupported, Result};
use crate::hilbert::{artin_symbol_minus_one, LocalExtension};
use crate::localdata::{tate_algorithm, LocalField};
use crate::rootnum::{local_root_number_detail, Provenance};

/// Whether the points of the kernel are real. Complex conjugation acts on the
/// cyclic kernel by ±1, so the x-coordinates are always real and the points are
/// real exactly when 4x³ + b2x² + 2b4x + b6 is positive at a root.
pub fn kernel_is_real(e: &CurveModel, kernel: &QPoly) -> bool {
    let n = kernel.degree();
    assert!(n >= 1);
    let lead = to_f64(&kernel.lead());
    let c: Vec<f64> = kernel.coeffs().iter().map(|x| to_f64(x) / lead).collect();
    // Newton from above every root converges to the largest one
    let bound = 1.0 + c[..n as usize].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let f = |x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
    let df = |x: f64| {
        c.iter().enumerate().skip(1).rev().fold(0.0, |acc, (i, k)| acc * x + i as f64 * k)
    };
    let mut x = bound;
    for _ in 0..500 {
        let step = f(x) / df(x);
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.abs() <= 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    let g = e.two_division_polynomial();
    g.eval_f64(x) > 0.0
}

/// σ_φ(E/K_v) for a cyclic isogeny of odd prime degree p with the given kernel.
pub fn sigma_p_odd(e: &CurveModel, kernel: &QPoly, p: u64, v: Place) -> Result<SigmaTerm> {
    if p < 3 || !is_prime_u64(p) || kernel.degree() as u64 != (p - 1) / 2 {
        return arg(format!("kernel of degree {} does not describe an odd prime degree {p}", kernel.degree()));
    }
    match v {
        // |ker| = p, |coker| = 1
        Place::Complex => Ok(SigmaTerm { place: v, value: -1, coker_order: Some(1) }),
        Place::Real => {
            // a non-real kernel gives |ker| = 1 and a cokernel that is both a
            // 2-group and killed by p, so trivial
            let value = if kernel_is_real(e, kernel) { -1 } else { 1 };
            Ok(SigmaTerm { place: v, value, coker_order: Some(1) })
        }
        Place::Finite(k) => {
            if k.p() == p {
                return unsupported(format!("residue characteristic equals the isogeny degree {p}"));
            }
            let ep = velu_isogenous(e, kernel)?;
            let c = tate_algorithm(e, k).tamagawa;
            let cp = tate_algorithm(&ep, k).tamagawa;
            let ord = |mut t: u64| {
                let mut n = 0i64;
                while t % p == 0 {
                    t /= p;
                    n += 1;
                }
                n
            };
            let value = if (ord(c) - ord(cp)) % 2 == 0 { 1 } else { -1 };
            Ok(SigmaTerm { place: v, value, coker_order: None })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conj62Report {
    pub degree: u64,
    pub isogenous: String,
    /// `corr` holds the Artin symbol (−1, F/K_v).
    pub places: Vec<PlaceReport>,
    pub skipped: Vec<(String, String)>,
    pub all_equal: bool,
}

/// w(E/K_v) against σ_φ·(−1, F/K_v) at ∞ and at the bad primes other than p.
/// Extension data for additive places comes from `ext` keyed by prime.
pub fn check_conjecture_6_2(
    e: &CurveModel,
    kernel: &QPoly,
    p: u64,
    ext: &BTreeMap<u64, LocalExtension>,
) -> Result<Conj62Report> {
    let ep = velu_isogenous(e, kernel)?;
    let mut places = vec![];
    let mut skipped = vec![];

    let sigma = sigma_p_odd(e, kernel, p, Place::Real)?.value;
    let artin = if kernel_is_real(e, kernel) { 1 } else { -1 };
    places.push(PlaceReport { place: Place::Real, w: -1, sigma, corr: artin, equal: -1 == sigma * artin, provenance: Provenance::Independent });

    let mut primes = vec![];
    primes.extend(bad_primes(e)?);
    primes.extend(bad_primes(&ep)?);
    primes.sort_unstable();
    primes.dedup();
    for q in primes {
        if q == p {
            skipped.push((q.to_string(), "residue characteristic equals the isogeny degree".into()));
            continue;
        }
        let k = LocalField::new(q, 1)?;
        let v = Place::Finite(k);
        let (w, provenance) = match local_root_number_detail(e, k) {
            Ok(x) => x,
            Err(err) => {
                skipped.push((q.to_string(), err.to_string()));
                continue;
            }
        };
        let reduction = tate_algorithm(e, k).reduction;
        let artin = if reduction.is_additive() {
            match ext.get(&q) {
                Some(x) => artin_symbol_minus_one(x)?,
                None => {
                    skipped.push((q.to_string(), "additive place without extension data".into()));
                    continue;
                }
            }
        } else {
            // good or multiplicative: K_v(ker φ) is unramified
            1
        };
        let sigma = sigma_p_odd(e, kernel, p, v)?.value;
        places.push(PlaceReport { place: v, w, sigma, corr: artin, equal: w == sigma * artin, provenance });
    }
    Ok(Conj62Report {
        degree: p,
        isogenous: ep.to_string(),
        all_equal: places.iter().all(|r| r.equal),
        places,
        skipped,
    })
}
