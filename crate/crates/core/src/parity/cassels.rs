use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::push_primes;
use crate::arith::{is_prime_u64, render_rational, square_class, to_f64, val, Rational};
use crate::rootnum::bad_primes;
use crate::curve::CurveModel;
use crate::error::{arg, Result};
use crate::localdata::{local_c_term, real_period, LocalField};

/// Best rational approximation with denominator ≤ max_den, accepted only
/// within a relative tolerance.
pub fn rationalize(x: f64, max_den: u64, rel_tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let y = x.abs();
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = y;
    let mut best = None;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - y).abs() <= rel_tol * y.max(f64::MIN_POSITIVE) {
            best = Some((h1, k1));
            break;
        }
        let frac = r - a;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    let (h, k) = best?;
    let q = Rational::new(BigInt::from(h), BigInt::from(k));
    Some(if neg { -q } else { q })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CasselsReport {
    pub degree: u64,
    /// ∏_v C(E/ℚ_v, ω) / C(E′/ℚ_v, ω′) as an exact rational.
    pub ratio: String,
    pub archimedean_ratio: String,
    pub square_class: String,
    pub ord_p: i64,
    pub rank_parity: u8,
    pub fixture_agrees: Option<bool>,
    /// Set when the archimedean ratio could not be recognised as a rational.
    pub partial: bool,
}

/// `omega`, `omega_p` express the chosen differentials as multiples of the
/// standard differentials of `e` and `ep`.
pub fn cassels_ratio(
    e: &CurveModel,
    ep: &CurveModel,
    degree: u64,
    omega: &Rational,
    omega_p: &Rational,
    rank_parity_fixture: Option<u8>,
) -> Result<CasselsReport> {
    if degree != 1 && !is_prime_u64(degree) {
        return arg(format!("isogeny degree must be prime (or 1), got {degree}"));
    }
    if omega.is_zero() || omega_p.is_zero() {
        return arg("zero differential");
    }
    let mut primes = vec![];
    primes.extend(bad_primes(e)?);
    primes.extend(bad_primes(ep)?);
    for x in [omega, omega_p] {
        push_primes(x.numer(), &mut primes)?;
        push_primes(x.denom(), &mut primes)?;
    }
    if degree > 1 {
        primes.push(degree);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut ratio = Rational::one();
    for p in primes {
        let k = LocalField::new(p, 1)?;
        let c = local_c_term(e, omega, k)?.exact().unwrap();
        let cp = local_c_term(ep, omega_p, k)?.exact().unwrap();
        ratio *= c / cp;
    }
    let re = real_period(e) * to_f64(omega).abs();
    let rp = real_period(ep) * to_f64(omega_p).abs();
    let arch = rationalize(re / rp, 100_000, 1e-9);
    let partial = arch.is_none();
    let arch = arch.unwrap_or_else(Rational::one);
    ratio *= &arch;
    let p_for_ord = if degree == 1 { 2 } else { degree };
    let ord_p = val(&ratio, p_for_ord).unwrap();
    let rank_parity = (ord_p.rem_euclid(2)) as u8;
    let class = square_class(&ratio)?;
    Ok(CasselsReport {
        degree,
        ratio: render_rational(&ratio),
        archimedean_ratio: render_rational(&arch),
        square_class: class.to_string(),
        ord_p,
        rank_parity,
        fixture_agrees: rank_parity_fixture.map(|r| r % 2 == rank_parity),
        partial,
    })
}
