//! Factorization over ℚ: squarefree split, factorization mod a small prime,
//! Hensel lifting, and recombination of modular factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::factor::primes_up_to;
use super::ff::{Fq, FqPoly};
use super::poly::QPoly;
use super::mod_u64;
use crate::error::{arg, Result};

type ZPoly = Vec<BigInt>;

/// Monic irreducible factors over ℚ with multiplicities (sorted by degree, then coefficients).
pub fn factor_rational(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if f.degree() < 0 {
        return arg("factor of the zero polynomial");
    }
    let mut out = vec![];
    for (g, k) in squarefree_q(f) {
        for h in factor_squarefree(&g) {
            out.push((h, k));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

pub fn is_irreducible(f: &QPoly) -> Result<bool> {
    if f.degree() < 1 {
        return Ok(false);
    }
    let fac = factor_rational(f)?;
    Ok(fac.len() == 1 && fac[0].1 == 1)
}

fn squarefree_q(f: &QPoly) -> Vec<(QPoly, usize)> {
    let f = f.monic();
    let mut out = vec![];
    if f.degree() < 1 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    out
}

fn factor_squarefree(g: &QPoly) -> Vec<QPoly> {
    if g.degree() <= 1 {
        return vec![g.monic()];
    }
    let (zf, _) = g.to_integer_primitive();
    let n = zf.len() - 1;
    let lc = zf[n].clone();

    // pick the prime giving the fewest modular factors among the first few admissible ones
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<FqPoly>)> = None;
    let mut tried = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        if mod_u64(&lc, p) == 0 {
            continue;
        }
        let k = Fq::new(p, 1).unwrap();
        let fp = to_fp(&k, &zf);
        if k.poly_gcd(&fp, &k.poly_derivative(&fp)).len() != 1 {
            continue;
        }
        let facs: Vec<FqPoly> = k.factor(&fp, &mut rng).into_iter().map(|(h, _)| h).collect();
        if facs.len() == 1 {
            return vec![g.monic()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 8 {
            break;
        }
    }
    let (p, modfacs) = best.expect("no admissible prime");
    let k = Fq::new(p, 1).unwrap();

    // Mignotte-style bound on factor coefficients, times lc
    let norm2: BigInt = zf.iter().map(|c| c * c).sum::<BigInt>().sqrt() + BigInt::one();
    let bound = (BigInt::one() << n) * norm2 * lc.abs();
    let mut modulus = BigInt::from(p);
    let mut e = 1u32;
    while modulus <= &bound * 2 {
        modulus *= p;
        e += 1;
    }
    let lifted = hensel_multi(&k, &zf, &modfacs, e);

    // recombination
    let mut remaining = zf.clone();
    let mut pool: Vec<ZPoly> = lifted;
    let mut found: Vec<ZPoly> = vec![];
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in combinations(pool.len(), size) {
            let lcr = remaining.last().unwrap().clone();
            let mut cand: ZPoly = vec![lcr.clone()];
            for &i in &subset {
                cand = mul_mod(&cand, &pool[i], &modulus);
            }
            let cand = primitive(&symmetric(&cand, &modulus));
            if let Some(q) = exact_div(&remaining, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
            }
            None => size += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(remaining);
    }
    found.into_iter().map(|h| QPoly::from_ints(&h).monic()).collect()
}

fn to_fp(k: &Fq, f: &[BigInt]) -> FqPoly {
    k.poly_trim(f.iter().map(|c| k.from_int(c)).collect())
}

fn from_fp(f: &FqPoly) -> ZPoly {
    f.iter().map(|c| BigInt::from(c.c0)).collect()
}

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zadd_scaled(a: &[BigInt], b: &[BigInt], s: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z) * s).collect())
}

fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    reduce(&zmul(a, b), m)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return a.to_vec();
    }
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// a / b over ℤ if exact.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.len() > a.len() {
        return None;
    }
    let (q, r) = QPoly::from_ints(a).divrem(&QPoly::from_ints(b));
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// s, t with s·a + t·b = 1 over 𝔽_p.
fn xgcd(k: &Fq, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![k.one()], vec![]);
    let (mut t0, mut t1): (FqPoly, FqPoly) = (vec![], vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = k.poly_divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = k.poly_sub(&s0, &k.poly_mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = k.poly_sub(&t0, &k.poly_mul(&q, &t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert_eq!(r0.len(), 1, "factors not coprime");
    let inv = k.inv(r0[0]).unwrap();
    (k.poly_scale(&s0, inv), k.poly_scale(&t0, inv))
}

/// Lift f ≡ g·h (mod p), g monic, to the same congruence mod p^e.
fn hensel_pair(k: &Fq, f: &[BigInt], g1: &FqPoly, h1: &FqPoly, e: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(k.p());
    let (s, t) = xgcd(k, g1, h1);
    let mut g = from_fp(g1);
    let mut h = from_fp(h1);
    let mut pk = p.clone();
    for _ in 1..e {
        let diff = zsub(f, &zmul(&g, &h));
        let ebar: ZPoly = diff.iter().map(|c| c / &pk).collect();
        debug_assert!(diff.iter().all(|c| (c % &pk).is_zero()));
        let ebar = to_fp(k, &ebar);
        let (q, r) = k.poly_divrem(&k.poly_mul(&t, &ebar), g1);
        let dg = r;
        let dh = k.poly_add(&k.poly_mul(&s, &ebar), &k.poly_mul(&q, h1));
        g = zadd_scaled(&g, &from_fp(&dg), &pk);
        h = zadd_scaled(&h, &from_fp(&dh), &pk);
        pk *= &p;
    }
    (reduce(&g, &pk), reduce(&h, &pk))
}

/// Monic lifts mod p^e of the monic modular factors of f.
fn hensel_multi(k: &Fq, f: &[BigInt], facs: &[FqPoly], e: u32) -> Vec<ZPoly> {
    let pe = num_traits::pow(BigInt::from(k.p()), e as usize);
    if facs.len() == 1 {
        let lc = f.last().unwrap();
        let inv = modinv(lc, &pe);
        return vec![reduce(&f.iter().map(|c| c * &inv).collect::<ZPoly>(), &pe)];
    }
    let mid = facs.len() / 2;
    let mut g1 = vec![k.one()];
    for a in &facs[..mid] {
        g1 = k.poly_mul(&g1, a);
    }
    let lcf = k.from_int(f.last().unwrap());
    let mut h1 = vec![lcf];
    for a in &facs[mid..] {
        h1 = k.poly_mul(&h1, a);
    }
    let (g, h) = hensel_pair(k, f, &g1, &h1, e);
    let mut out = hensel_multi_mod(k, &g, &facs[..mid], e, &pe);
    out.extend(hensel_multi_mod(k, &h, &facs[mid..], e, &pe));
    out
}

// f is only known mod p^e here; lifting mod p^e is unaffected.
fn hensel_multi_mod(k: &Fq, f: &[BigInt], facs: &[FqPoly], e: u32, pe: &BigInt) -> Vec<ZPoly> {
    let out = hensel_multi(k, f, facs, e);
    out.into_iter().map(|g| reduce(&g, pe)).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn swinnerton_dyer_style() {
        // x^4 - 10x^2 + 1 is irreducible but splits mod every prime
        assert!(is_irreducible(&qp(&[1, 0, -10, 0, 1])).unwrap());
    }

    #[test]
    fn product_recovered() {
        let a = qp(&[-2, 0, 0, 1]);
        let b = qp(&[3, -1, 5]);
        let c = qp(&[1, 1]);
        let f = a.mul(&b).mul(&c).mul(&c);
        let fac = factor_rational(&f).unwrap();
        assert_eq!(fac.len(), 3);
        let mut prod = QPoly::one();
        for (g, k) in &fac {
            prod = prod.mul(&g.pow(*k as u32));
        }
        assert_eq!(prod, f.monic());
        assert!(fac.contains(&(c.clone(), 2)));
    }

    #[test]
    fn cyclotomic_eight_is_irreducible() {
        assert!(is_irreducible(&qp(&[1, 0, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&qp(&[-1, 0, 0, 0, 1])).unwrap());
    }
}
