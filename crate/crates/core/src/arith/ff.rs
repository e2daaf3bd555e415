//! Finite fields 𝔽_p and 𝔽_{p²}, and dense polynomials over them.

use num_bigint::BigInt;
use rand::Rng;

use super::{check_prime, inv_mod, legendre_u64, mod_u64, mul_mod, Rational};
use crate::error::{arg, Result};

/// c0 + c1·θ, where θ generates 𝔽_{p²} over 𝔽_p (c1 = 0 when f = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    pub c0: u64,
    pub c1: u64,
}

/// Field context. For f = 2, θ² = m0 + m1·θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    f: u32,
    m0: u64,
    m1: u64,
}

pub type FqPoly = Vec<FqElem>;

impl Fq {
    pub fn new(p: u64, f: u32) -> Result<Fq> {
        check_prime(p)?;
        match f {
            1 => Ok(Fq { p, f, m0: 0, m1: 0 }),
            2 if p == 2 => {
                // x² + x + 1: θ² = θ + 1
                let fq = Fq { p, f, m0: 1, m1: 1 };
                debug_assert!((0..2).all(|x| (x * x + x + 1) % 2 != 0));
                Ok(fq)
            }
            2 => {
                let r = (2..p).find(|&r| legendre_u64(r, p) == -1).unwrap();
                Ok(Fq { p, f, m0: r, m1: 0 })
            }
            _ => arg(format!("residue degree {f} not in {{1,2}}")),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u128 {
        (self.p as u128).pow(self.f)
    }

    /// Constants (m0, m1) of the defining relation θ² = m0 + m1·θ.
    pub fn modulus(&self) -> (u64, u64) {
        (self.m0, self.m1)
    }

    pub fn zero(&self) -> FqElem {
        FqElem { c0: 0, c1: 0 }
    }

    pub fn one(&self) -> FqElem {
        FqElem { c0: 1 % self.p, c1: 0 }
    }

    pub fn theta(&self) -> FqElem {
        assert_eq!(self.f, 2);
        FqElem { c0: 0, c1: 1 }
    }

    pub fn from_u64(&self, a: u64) -> FqElem {
        FqElem { c0: a % self.p, c1: 0 }
    }

    pub fn from_i64(&self, a: i64) -> FqElem {
        FqElem { c0: a.rem_euclid(self.p as i64) as u64, c1: 0 }
    }

    pub fn from_int(&self, a: &BigInt) -> FqElem {
        FqElem { c0: mod_u64(a, self.p), c1: 0 }
    }

    /// Reduction of a p-integral rational; `None` if p divides the denominator.
    pub fn from_rational(&self, a: &Rational) -> Option<FqElem> {
        let d = mod_u64(a.denom(), self.p);
        let di = inv_mod(d, self.p)?;
        Some(FqElem { c0: mul_mod(mod_u64(a.numer(), self.p), di, self.p), c1: 0 })
    }

    pub fn elem(&self, c0: u64, c1: u64) -> FqElem {
        if self.f == 1 {
            assert_eq!(c1 % self.p, 0);
        }
        FqElem { c0: c0 % self.p, c1: c1 % self.p }
    }

    pub fn is_zero(&self, a: FqElem) -> bool {
        a.c0 == 0 && a.c1 == 0
    }

    fn addp(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    fn subp(&self, a: u64, b: u64) -> u64 {
        self.addp(a, self.p - b % self.p)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem { c0: self.addp(a.c0, b.c0), c1: self.addp(a.c1, b.c1) }
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem { c0: self.subp(a.c0, b.c0), c1: self.subp(a.c1, b.c1) }
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        self.sub(self.zero(), a)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p;
        if self.f == 1 {
            return FqElem { c0: mul_mod(a.c0, b.c0, p), c1: 0 };
        }
        let hh = mul_mod(a.c1, b.c1, p);
        let c0 = self.addp(mul_mod(a.c0, b.c0, p), mul_mod(hh, self.m0, p));
        let cross = self.addp(mul_mod(a.c0, b.c1, p), mul_mod(a.c1, b.c0, p));
        let c1 = self.addp(cross, mul_mod(hh, self.m1, p));
        FqElem { c0, c1 }
    }

    pub fn pow(&self, a: FqElem, mut e: u128) -> FqElem {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.q() - 2))
        }
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Option<FqElem> {
        Some(self.mul(a, self.inv(b)?))
    }

    /// Zero counts as a square.
    pub fn is_square(&self, a: FqElem) -> bool {
        if self.p == 2 || self.is_zero(a) {
            return true;
        }
        self.pow(a, (self.q() - 1) / 2) == self.one()
    }

    /// Norm to 𝔽_p.
    pub fn norm(&self, a: FqElem) -> u64 {
        if self.f == 1 {
            return a.c0;
        }
        let n = self.mul(a, self.pow(a, self.p as u128));
        debug_assert_eq!(n.c1, 0);
        n.c0
    }

    pub fn random(&self, rng: &mut impl Rng) -> FqElem {
        let c1 = if self.f == 2 { rng.gen_range(0..self.p) } else { 0 };
        FqElem { c0: rng.gen_range(0..self.p), c1 }
    }

    /// All q elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let p = self.p;
        let top = if self.f == 2 { p } else { 1 };
        (0..top).flat_map(move |c1| (0..p).map(move |c0| FqElem { c0, c1 }))
    }

    // ---- polynomials (coefficient vectors, lowest degree first) ----

    pub fn poly_trim(&self, mut a: FqPoly) -> FqPoly {
        while a.last().is_some_and(|&c| self.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn poly_from_i64(&self, coeffs: &[i64]) -> FqPoly {
        self.poly_trim(coeffs.iter().map(|&c| self.from_i64(c)).collect())
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn poly_deg(&self, a: &FqPoly) -> isize {
        self.poly_trim(a.clone()).len() as isize - 1
    }

    pub fn poly_add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let out = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&z), *b.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(out)
    }

    pub fn poly_sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let nb: FqPoly = b.iter().map(|&c| self.neg(c)).collect();
        self.poly_add(a, &nb)
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.poly_trim(out)
    }

    pub fn poly_scale(&self, a: &FqPoly, c: FqElem) -> FqPoly {
        self.poly_trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_divrem(&self, a: &FqPoly, m: &FqPoly) -> (FqPoly, FqPoly) {
        let m = self.poly_trim(m.clone());
        assert!(!m.is_empty(), "polynomial division by zero");
        let mut r = self.poly_trim(a.clone());
        let dm = m.len() - 1;
        let lead_inv = self.inv(m[dm]).unwrap();
        if r.len() < m.len() {
            return (vec![], r);
        }
        let mut q = vec![self.zero(); r.len() - dm];
        while r.len() >= m.len() {
            let k = r.len() - 1 - dm;
            let c = self.mul(*r.last().unwrap(), lead_inv);
            q[k] = c;
            for (i, &mi) in m.iter().enumerate() {
                r[k + i] = self.sub(r[k + i], self.mul(c, mi));
            }
            r = self.poly_trim(r);
        }
        (self.poly_trim(q), r)
    }

    pub fn poly_rem(&self, a: &FqPoly, m: &FqPoly) -> FqPoly {
        self.poly_divrem(a, m).1
    }

    pub fn poly_monic(&self, a: &FqPoly) -> FqPoly {
        let a = self.poly_trim(a.clone());
        match a.last() {
            None => a,
            Some(&l) => {
                let li = self.inv(l).unwrap();
                self.poly_scale(&a, li)
            }
        }
    }

    pub fn poly_gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let mut a = self.poly_trim(a.clone());
        let mut b = self.poly_trim(b.clone());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_derivative(&self, a: &FqPoly) -> FqPoly {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, self.from_u64(i as u64)))
            .collect();
        self.poly_trim(out)
    }

    pub fn poly_powmod(&self, base: &FqPoly, mut e: u128, m: &FqPoly) -> FqPoly {
        let mut r = self.poly_rem(&vec![self.one()], m);
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_rem(&self.poly_mul(&r, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    pub fn poly_eval(&self, a: &FqPoly, x: FqElem) -> FqElem {
        a.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Number of distinct roots in 𝔽_q; the zero polynomial reports q.
    pub fn count_roots(&self, a: &FqPoly) -> u128 {
        let a = self.poly_trim(a.clone());
        if a.is_empty() {
            return self.q();
        }
        if a.len() == 1 {
            return 0;
        }
        let x = vec![self.zero(), self.one()];
        let xq = self.poly_powmod(&x, self.q(), &a);
        let g = self.poly_gcd(&self.poly_sub(&xq, &x), &a);
        (g.len() - 1) as u128
    }

    pub fn has_root(&self, a: &FqPoly) -> bool {
        self.count_roots(a) > 0
    }

    /// Roots of a squarefree polynomial that splits into linear factors (equal-degree splitting).
    pub fn roots(&self, a: &FqPoly, rng: &mut impl Rng) -> Vec<FqElem> {
        let x = vec![self.zero(), self.one()];
        let a = self.poly_monic(a);
        if a.len() <= 1 {
            return vec![];
        }
        let xq = self.poly_powmod(&x, self.q(), &a);
        let lin = self.poly_gcd(&self.poly_sub(&xq, &x), &a);
        let mut out = vec![];
        for g in self.equal_degree_split(&lin, 1, rng) {
            out.push(self.neg(g[0]));
        }
        out.sort();
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs (d, product of all irreducible factors of degree d).
    pub fn distinct_degree(&self, a: &FqPoly) -> Vec<(usize, FqPoly)> {
        let x = vec![self.zero(), self.one()];
        let mut rest = self.poly_monic(a);
        let mut out = vec![];
        let mut xp = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.len() - 1, rest.clone()));
                break;
            }
            xp = self.poly_powmod(&xp, self.q(), &rest);
            let g = self.poly_gcd(&self.poly_sub(&xp, &x), &rest);
            if g.len() > 1 {
                out.push((d, g.clone()));
                rest = self.poly_divrem(&rest, &g).0;
                xp = self.poly_rem(&xp, &rest);
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree d.
    pub fn equal_degree_split(&self, a: &FqPoly, d: usize, rng: &mut impl Rng) -> Vec<FqPoly> {
        let a = self.poly_monic(a);
        let n = a.len() - 1;
        if n == d {
            return vec![a];
        }
        if n == 0 {
            return vec![];
        }
        loop {
            let r: FqPoly = (0..n).map(|_| self.random(rng)).collect();
            let r = self.poly_trim(r);
            if r.len() <= 1 {
                continue;
            }
            let g = if self.p == 2 {
                // trace map r + r² + … + r^{2^{k-1}}, k = f·d
                let k = self.f as usize * d;
                let mut t = r.clone();
                let mut acc = r.clone();
                for _ in 1..k {
                    t = self.poly_rem(&self.poly_mul(&t, &t), &a);
                    acc = self.poly_add(&acc, &t);
                }
                self.poly_gcd(&acc, &a)
            } else {
                let e = (self.q().pow(d as u32) - 1) / 2;
                let h = self.poly_powmod(&r, e, &a);
                self.poly_gcd(&self.poly_sub(&h, &vec![self.one()]), &a)
            };
            if g.len() > 1 && g.len() < a.len() {
                let other = self.poly_divrem(&a, &g).0;
                let mut out = self.equal_degree_split(&g, d, rng);
                out.extend(self.equal_degree_split(&other, d, rng));
                return out;
            }
        }
    }

    /// Squarefree decomposition: pairs (g, k) with a = lc · ∏ g^k.
    pub fn squarefree(&self, a: &FqPoly) -> Vec<(FqPoly, usize)> {
        let a = self.poly_monic(a);
        if a.len() <= 1 {
            return vec![];
        }
        let mut out = vec![];
        let da = self.poly_derivative(&a);
        if da.is_empty() {
            // a = b^p
            let b = self.pth_root(&a);
            for (g, k) in self.squarefree(&b) {
                out.push((g, k * self.p as usize));
            }
            return out;
        }
        let mut c = self.poly_gcd(&a, &da);
        let mut w = self.poly_divrem(&a, &c).0;
        let mut i = 1;
        while w.len() > 1 {
            let y = self.poly_gcd(&w, &c);
            let fac = self.poly_divrem(&w, &y).0;
            if fac.len() > 1 {
                out.push((fac, i));
            }
            w = y;
            c = self.poly_divrem(&c, &w).0;
            i += 1;
        }
        if c.len() > 1 {
            let b = self.pth_root(&c);
            for (g, k) in self.squarefree(&b) {
                out.push((g, k * self.p as usize));
            }
        }
        out
    }

    fn pth_root(&self, a: &FqPoly) -> FqPoly {
        let p = self.p as usize;
        // coefficientwise inverse Frobenius: c^{q/p}
        let e = self.q() / self.p as u128;
        (0..a.len())
            .step_by(p)
            .map(|i| self.pow(a[i], e))
            .collect()
    }

    /// Degrees of irreducible factors with multiplicities, sorted.
    pub fn factor_degrees(&self, a: &FqPoly) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (g, k) in self.squarefree(a) {
            for (d, h) in self.distinct_degree(&g) {
                for _ in 0..(h.len() - 1) / d {
                    out.push((d, k));
                }
            }
        }
        out.sort();
        out
    }

    /// Full factorization into monic irreducibles with multiplicities.
    pub fn factor(&self, a: &FqPoly, rng: &mut impl Rng) -> Vec<(FqPoly, usize)> {
        let mut out = vec![];
        for (g, k) in self.squarefree(a) {
            for (d, h) in self.distinct_degree(&g) {
                for irr in self.equal_degree_split(&h, d, rng) {
                    out.push((irr, k));
                }
            }
        }
        out.sort();
        out
    }
}
