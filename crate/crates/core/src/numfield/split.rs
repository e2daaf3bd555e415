use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{FieldShape, NumberField};
use crate::arith::ff::{Fq, FqElem, FqPoly};
use crate::arith::{check_prime, kronecker, mod_u64};
use crate::error::{unsupported, Result};

/// Places above a rational prime (or ∞ when `prime` is None) as (e, f) pairs,
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceDecomposition {
    pub prime: Option<u64>,
    pub places: Vec<(u32, u32)>,
}

impl PlaceDecomposition {
    pub fn count(&self) -> usize {
        self.places.len()
    }

    pub fn degree(&self) -> u32 {
        self.places.iter().map(|(e, f)| e * f).sum()
    }

    fn sorted(prime: Option<u64>, mut places: Vec<(u32, u32)>) -> PlaceDecomposition {
        places.sort_unstable();
        PlaceDecomposition { prime, places }
    }
}

/// r₁ real places (1, 1) and r₂ complex places (1, 2).
pub fn infinite_places(k: &NumberField) -> PlaceDecomposition {
    let (r1, r2) = k.signature();
    let mut places = vec![(1, 1); r1];
    places.extend(vec![(1, 2); r2]);
    PlaceDecomposition::sorted(None, places)
}

pub fn splitting_type(k: &NumberField, p: u64) -> Result<PlaceDecomposition> {
    check_prime(p)?;
    let d = match k.shape() {
        FieldShape::Multiquadratic(_) => multiquadratic(k, p),
        FieldShape::PureCubic(m) => pure_cubic(*m, p),
        _ => dedekind(k, p)?,
    };
    debug_assert_eq!(d.degree() as usize, k.degree());
    Ok(d)
}

/// (C₂)^r Galois group: characters ↔ quadratic subfields ℚ(√d) with
/// discriminant D. #unramified characters = 2^r / e, #characters trivial on
/// the decomposition group = g.
fn multiquadratic(k: &NumberField, p: u64) -> PlaceDecomposition {
    let subs = k.quadratic_subfields().expect("multiquadratic shape");
    let n = (subs.len() + 1) as u32;
    let mut unram = 1u32;
    let mut split = 1u32;
    for d in subs {
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        if disc.rem_euclid(p as i64) == 0 {
            continue;
        }
        unram += 1;
        if kronecker(&BigInt::from(disc), p) == 1 {
            split += 1;
        }
    }
    let e = n / unram;
    let g = split;
    let f = n / (e * g);
    PlaceDecomposition::sorted(Some(p), vec![(e, f); g as usize])
}

/// ℚ(∛m), m cube-free.
fn pure_cubic(m: i64, p: u64) -> PlaceDecomposition {
    let pl = |v: Vec<(u32, u32)>| PlaceDecomposition::sorted(Some(p), v);
    let pi = p as i64;
    if p == 3 {
        if m % 3 != 0 && [1, 8].contains(&m.rem_euclid(9)) {
            return pl(vec![(1, 1), (2, 1)]);
        }
        return pl(vec![(3, 1)]);
    }
    if m % pi == 0 {
        return pl(vec![(3, 1)]);
    }
    if p % 3 == 2 {
        return pl(vec![(1, 1), (1, 2)]);
    }
    let fq = Fq::new(p, 1).unwrap();
    if fq.pow(fq.from_i64(m), ((p - 1) / 3) as u128) == fq.one() {
        pl(vec![(1, 1); 3])
    } else {
        pl(vec![(1, 3)])
    }
}

fn reduce(fq: &Fq, f: &[BigInt]) -> FqPoly {
    fq.poly_trim(f.iter().map(|c| fq.from_int(c)).collect())
}

/// Irreducible monic factors with multiplicity over 𝔽_p.
pub(crate) fn factor_mod_p(fq: &Fq, f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let f = fq.poly_monic(f);
    if f.len() <= 1 {
        return vec![];
    }
    let df = fq.poly_derivative(&f);
    if df.is_empty() {
        // f = h(x^p) = h(x)^p over 𝔽_p
        let p = fq.p() as usize;
        let h: FqPoly = f.iter().step_by(p).copied().collect();
        return factor_mod_p(fq, &h).into_iter().map(|(g, k)| (g, k * p as u32)).collect();
    }
    let g = fq.poly_gcd(&f, &df);
    let w = fq.poly_divrem(&f, &g).0;
    let mut rng = ChaCha8Rng::seed_from_u64(fq.p());
    let mut out = vec![];
    let mut rest = f.clone();
    for (d, prod) in fq.distinct_degree(&w) {
        for h in fq.equal_degree_split(&prod, d, &mut rng) {
            let mut k = 0;
            loop {
                let (q, r) = fq.poly_divrem(&rest, &h);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                k += 1;
            }
            out.push((h, k));
        }
    }
    out.extend(factor_mod_p(fq, &rest));
    out
}

fn lift(f: &FqPoly) -> Vec<BigInt> {
    f.iter().map(|c: &FqElem| BigInt::from(c.c0)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Factor f mod p; the factorization gives the places when p does not divide
/// the index [O_K : ℤ[α]], which Dedekind's criterion decides.
fn dedekind(k: &NumberField, p: u64) -> Result<PlaceDecomposition> {
    let fq = Fq::new(p, 1)?;
    let f = k.coefficients();
    let factors = factor_mod_p(&fq, &reduce(&fq, f));
    let places: Vec<(u32, u32)> = factors.iter().map(|(g, e)| (*e, (g.len() - 1) as u32)).collect();
    if mod_u64(k.poly_discriminant(), p) != 0 || factors.iter().all(|(_, e)| *e == 1) {
        return Ok(PlaceDecomposition::sorted(Some(p), places));
    }
    // g = ∏ gᵢ, h = ∏ gᵢ^{eᵢ−1} (lifted); F = (f − g·h)/p
    let one = vec![BigInt::from(1)];
    let mut g = one.clone();
    let mut h = one;
    for (gi, e) in &factors {
        let l = lift(gi);
        g = zmul(&g, &l);
        for _ in 1..*e {
            h = zmul(&h, &l);
        }
    }
    let gh = zmul(&g, &h);
    let n = f.len().max(gh.len());
    let pb = BigInt::from(p);
    let diff: Vec<BigInt> = (0..n)
        .map(|i| {
            let a = f.get(i).cloned().unwrap_or_default();
            let b = gh.get(i).cloned().unwrap_or_default();
            let (q, r) = (a - b).div_rem(&pb);
            debug_assert!(r.is_zero());
            q
        })
        .collect();
    let fbar = reduce(&fq, &diff);
    let gbar = reduce(&fq, &g);
    let hbar = reduce(&fq, &h);
    let t = fq.poly_gcd(&fq.poly_gcd(&fbar, &gbar), &hbar);
    if t.len() == 1 {
        return Ok(PlaceDecomposition::sorted(Some(p), places));
    }
    unsupported(format!(
        "{p} divides the index of Z[x]/({}) and the field has no dedicated splitting rule",
        k.poly()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_mod_p_with_repeats() {
        let fq = Fq::new(3, 1).unwrap();
        // (x+1)^3 (x^2+1)
        let f = fq.poly_from_i64(&[1, 3, 4, 4, 3, 1]);
        let mut fs = factor_mod_p(&fq, &f);
        fs.sort();
        let degs: Vec<(usize, u32)> = fs.iter().map(|(g, k)| (g.len() - 1, *k)).collect();
        assert!(degs.contains(&(1, 3)) && degs.contains(&(2, 1)));
    }
}
