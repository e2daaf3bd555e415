use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::split::{splitting_type, PlaceDecomposition};
use super::{squarefree_part, NumberField};
use crate::arith::poly::QPoly;
use crate::arith::{frac, kronecker, rat, Rational};
use crate::curve::CurveModel;
use crate::error::{arg, unsupported, Error, Result};
use crate::localdata::{count_points, frobenius_trace_power, reduction_type, LocalField, ReductionType};
use crate::rootnum::{bad_primes, global_root_number_q};

/// (−1)^{#v|∞}·(−1)^{#v split multiplicative} for E semistable over ℚ.
/// A nonsplit place over ℚ_p becomes split over K_v iff f_v is even.
pub fn semistable_global_root_number(e: &CurveModel, k: &NumberField) -> Result<i8> {
    let mut minus = k.infinite_place_count();
    for p in bad_primes(e)? {
        let red = reduction_type(e, LocalField::new(p, 1)?);
        if red.is_additive() {
            return arg(format!("{e} is not semistable at {p}"));
        }
        if !red.is_multiplicative() {
            continue;
        }
        let d = splitting_type(k, p)?;
        for &(_, f) in &d.places {
            if red == ReductionType::SplitMult || f % 2 == 0 {
                minus += 1;
            }
        }
    }
    Ok(if minus % 2 == 0 { 1 } else { -1 })
}

/// w(E/K). Semistable E uses the place count; otherwise K must be
/// multiquadratic and w(E/K) is the product of w(E_d/ℚ) over d = 1 and the
/// quadratic subfields ℚ(√d).
pub fn global_root_number_over(e: &CurveModel, k: &NumberField) -> Result<i8> {
    if k.degree() == 1 {
        return global_root_number_q(e);
    }
    let mut semistable = true;
    for p in bad_primes(e)? {
        semistable &= !reduction_type(e, LocalField::new(p, 1)?).is_additive();
    }
    if semistable {
        return semistable_global_root_number(e, k);
    }
    let Some(ds) = k.quadratic_subfields() else {
        return unsupported(format!("{e} has additive reduction and {k} is not multiquadratic"));
    };
    let mut w = global_root_number_q(e)?;
    for d in ds {
        w *= global_root_number_q(&e.quadratic_twist(&rat(d))?)?;
    }
    Ok(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldfeldReport {
    pub d0: i64,
    /// (d, w(E_d), w(E_{d·d0})) for every supported d.
    pub pairs: Vec<(i64, i8, i8)>,
    pub failures: Vec<i64>,
    pub skipped: usize,
    /// Fraction of +1 among w(E_d) and w(E_{d·d0}) over all checked pairs.
    pub plus_density: f64,
}

/// Checks w(E_{d·d0}) = −w(E_d) for squarefree d with 0 < |d| ≤ bound, after
/// verifying that every p | 2Δ splits in ℚ(√d0).
pub fn goldfeld_flip_check(e: &CurveModel, d0: i64, bound: i64) -> Result<GoldfeldReport> {
    if d0 >= 0 || squarefree_part(d0) != d0 {
        return arg(format!("d0 = {d0} must be negative and squarefree"));
    }
    let mut primes = bad_primes(e)?;
    if !primes.contains(&2) {
        primes.insert(0, 2);
    }
    let disc = if d0.rem_euclid(4) == 1 { d0 } else { 4 * d0 };
    let offending: Vec<String> =
        primes.iter().filter(|&&p| kronecker(&BigInt::from(disc), p) != 1).map(|p| p.to_string()).collect();
    if !offending.is_empty() {
        return arg(format!("primes not split in Q(sqrt({d0})): {}", offending.join(", ")));
    }
    let mut pairs = vec![];
    let mut failures = vec![];
    let mut skipped = 0;
    for d in -bound..=bound {
        if d == 0 || squarefree_part(d) != d {
            continue;
        }
        let w = |t: i64| -> Result<i8> {
            if t == 1 {
                return global_root_number_q(e);
            }
            global_root_number_q(&e.quadratic_twist(&rat(t))?)
        };
        match (w(d), w(d * d0)) {
            (Ok(a), Ok(b)) => {
                if a != -b {
                    failures.push(d);
                }
                pairs.push((d, a, b));
            }
            (Err(Error::Unsupported(_)), _) | (_, Err(Error::Unsupported(_))) => skipped += 1,
            (Err(x), _) | (_, Err(x)) => return Err(x),
        }
    }
    let plus = pairs.iter().map(|&(_, a, b)| (a == 1) as usize + (b == 1) as usize).sum::<usize>();
    let plus_density = if pairs.is_empty() { 0.0 } else { plus as f64 / (2 * pairs.len()) as f64 };
    Ok(GoldfeldReport { d0, pairs, failures, skipped, plus_density })
}

fn substitute_power(f: &QPoly, m: usize) -> QPoly {
    let mut c = vec![Rational::zero(); (f.degree().max(0) as usize) * m + 1];
    for (i, a) in f.coeffs().iter().enumerate() {
        c[i * m] = a.clone();
    }
    QPoly::new(c)
}

/// ∏_{v | p} F_v(T^{f_v}) with T = p^{−s} (so L_p = 1/that).
pub fn euler_factor_over_k(e: &CurveModel, k: &NumberField, p: u64) -> Result<QPoly> {
    let red = reduction_type(e, LocalField::new(p, 1)?);
    let d: PlaceDecomposition = splitting_type(k, p)?;
    let mut out = QPoly::one();
    let ap = if red == ReductionType::Good {
        let qp = LocalField::new(p, 1)?;
        let ld = crate::localdata::tate_algorithm(e, qp);
        Some(p as i64 + 1 - count_points(&ld.minimal_model, qp)? as i64)
    } else {
        None
    };
    for &(ev, f) in &d.places {
        let local = match red {
            ReductionType::Good => {
                let a = frobenius_trace_power(ap.unwrap(), p, f);
                let q = (p as i64).checked_pow(f).ok_or_else(|| Error::Resource("p^f overflows".into()))?;
                QPoly::from_i64(&[1, -a, q])
            }
            ReductionType::SplitMult => QPoly::from_i64(&[1, -1]),
            ReductionType::NonsplitMult if f % 2 == 0 => QPoly::from_i64(&[1, -1]),
            ReductionType::NonsplitMult => QPoly::from_i64(&[1, 1]),
            _ if ev == 1 && f <= 2 => QPoly::one(),
            _ => return unsupported(format!("additive reduction at {p} over a place with e = {ev}, f = {f}")),
        };
        out = out.mul(&substitute_power(&local, f as usize));
    }
    Ok(out)
}

/// The polynomial r with r(0) = 1 and r⁴ = f, if it exists over ℚ.
pub fn fourth_root(f: &QPoly) -> Option<QPoly> {
    let n = f.degree();
    if n < 0 || n % 4 != 0 || !f.coeff(0).is_one() {
        return None;
    }
    let m = (n / 4) as usize;
    // n·g_n = Σ_{j=1}^{n} (j/4 − (n − j))·f_j·g_{n−j} for g = f^{1/4}
    let mut g = vec![Rational::one()];
    for i in 1..=m {
        let mut s = Rational::zero();
        for j in 1..=i {
            let coef = frac(j as i64, 4) - rat((i - j) as i64);
            s += coef * f.coeff(j) * &g[i - j];
        }
        g.push(s / rat(i as i64));
    }
    let r = QPoly::new(g);
    (r.pow(4) == *f).then_some(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct FourthPowerRow {
    pub p: u64,
    pub places: Vec<(u32, u32)>,
    #[serde(serialize_with = "ser_poly")]
    pub factor: QPoly,
    #[serde(serialize_with = "ser_opt_poly")]
    pub fourth_root: Option<QPoly>,
}

fn ser_poly<S: serde::Serializer>(p: &QPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(|c| c.to_integer().to_string()))
}

fn ser_opt_poly<S: serde::Serializer>(p: &Option<QPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => ser_poly(p, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FourthPowerReport {
    pub rows: Vec<FourthPowerRow>,
    /// Primes whose factor could not be computed, with the reason.
    pub skipped: Vec<(u64, String)>,
    pub all_fourth_powers: bool,
}

pub fn fourth_power_check(e: &CurveModel, k: &NumberField, bound: u64) -> Result<FourthPowerReport> {
    let mut rows = vec![];
    let mut skipped = vec![];
    for p in crate::arith::factor::primes_up_to(bound) {
        match euler_factor_over_k(e, k, p) {
            Ok(factor) => {
                let places = splitting_type(k, p)?.places;
                let root = fourth_root(&factor);
                rows.push(FourthPowerRow { p, places, factor, fourth_root: root });
            }
            Err(Error::Unsupported(why)) => skipped.push((p, why)),
            Err(x) => return Err(x),
        }
    }
    let all_fourth_powers = !rows.is_empty() && rows.iter().all(|r| r.fourth_root.is_some());
    Ok(FourthPowerReport { rows, skipped, all_fourth_powers })
}
