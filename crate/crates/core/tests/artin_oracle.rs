//! −1 ∈ N(F^×) decided by computing norms in F = K_f[π]/(π^e − p) modulo p^k,
//! where K_f is the unramified extension of degree f ≤ 2.

mod common;

use paritylab::hilbert::{artin_symbol_minus_one, LocalExtension, TameCyclicExt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
struct Ring {
    m: u64,
    f: u32,
    // θ² = s0 + s1·θ
    s0: u64,
    s1: u64,
}

type K = (u64, u64);

impl Ring {
    fn new(p: u64, k: u32, f: u32) -> Ring {
        let m = p.pow(k);
        let (s0, s1) = if f == 1 {
            (0, 0)
        } else if p == 2 {
            (m - 1, m - 1) // θ² + θ + 1 = 0
        } else {
            let r = (2..p).find(|&r| (1..p).all(|t| (t * t) % p != r)).unwrap();
            (r, 0)
        };
        Ring { m, f, s0, s1 }
    }
    fn add(&self, a: K, b: K) -> K {
        ((a.0 + b.0) % self.m, (a.1 + b.1) % self.m)
    }
    fn sub(&self, a: K, b: K) -> K {
        ((a.0 + self.m - b.0) % self.m, (a.1 + self.m - b.1) % self.m)
    }
    fn mul(&self, a: K, b: K) -> K {
        let m = self.m as u128;
        let (a0, a1, b0, b1) = (a.0 as u128, a.1 as u128, b.0 as u128, b.1 as u128);
        let hh = a1 * b1 % m;
        let c0 = (a0 * b0 + hh * self.s0 as u128) % m;
        let c1 = (a0 * b1 + a1 * b0 + hh * self.s1 as u128) % m;
        (c0 as u64, c1 as u64)
    }
    fn scalar(&self, c: u64) -> K {
        (c % self.m, 0)
    }
    /// Norm to ℤ/m.
    fn norm(&self, a: K) -> u64 {
        if self.f == 1 {
            return a.0;
        }
        // conjugate θ̄ = s1 − θ
        let conj = ((a.0 + a.1 * self.s1) % self.m, (self.m - a.1) % self.m);
        let n = self.mul(a, conj);
        assert_eq!(n.1, 0);
        n.0
    }
    fn inv(&self, a: K) -> Option<K> {
        let n = self.norm(a);
        let ni = (1..self.m).find(|&t| (t as u128 * n as u128 % self.m as u128) == 1)?;
        let conj = ((a.0 + a.1 * self.s1) % self.m, (self.m - a.1) % self.m);
        Some(self.mul(conj, (ni, 0)))
    }
}

/// det of an e×e matrix over the local ring K_f/p^k, pivoting on units.
fn det(r: &Ring, mut a: Vec<Vec<K>>) -> K {
    let n = a.len();
    let mut d = r.scalar(1);
    for c in 0..n {
        let piv = (c..n).find(|&i| r.inv(a[i][c]).is_some()).expect("unit determinant expected");
        if piv != c {
            a.swap(piv, c);
            d = r.sub((0, 0), d);
        }
        let inv = r.inv(a[c][c]).unwrap();
        d = r.mul(d, a[c][c]);
        for i in c + 1..n {
            let factor = r.mul(a[i][c], inv);
            for j in c..n {
                let t = r.mul(factor, a[c][j]);
                a[i][j] = r.sub(a[i][j], t);
            }
        }
    }
    d
}

fn norm_of(r: &Ring, p: u64, e: usize, x: &[K]) -> u64 {
    // column j holds x·π^j in the basis 1, π, …, π^{e−1}
    let mut mat = vec![vec![(0, 0); e]; e];
    for j in 0..e {
        for (i, &c) in x.iter().enumerate() {
            let deg = i + j;
            let (row, c) = if deg >= e { (deg - e, r.mul(c, r.scalar(p))) } else { (deg, c) };
            mat[row][j] = r.add(mat[row][j], c);
        }
    }
    r.norm(det(r, mat))
}

fn minus_one_is_norm(p: u64, e: usize, f: u32, rng: &mut ChaCha8Rng) -> bool {
    let k = if p == 2 { 3 } else { 2 };
    let r = Ring::new(p, k, f);
    let m = r.m;
    let mut gens = vec![];
    for _ in 0..24 {
        let mut x: Vec<K> = (0..e)
            .map(|_| (rng.gen_range(0..m), if f == 2 { rng.gen_range(0..m) } else { 0 }))
            .collect();
        while x[0].0 % p == 0 && x[0].1 % p == 0 {
            x[0] = (rng.gen_range(0..m), if f == 2 { rng.gen_range(0..m) } else { 0 });
        }
        gens.push(norm_of(&r, p, e, &x));
    }
    // subgroup of (ℤ/m)^× generated by the sampled norms
    let mut group = vec![1u64];
    let mut seen = std::collections::HashSet::from([1u64]);
    let mut i = 0;
    while i < group.len() {
        let g = group[i];
        for &h in &gens {
            let t = (g as u128 * h as u128 % m as u128) as u64;
            if seen.insert(t) {
                group.push(t);
            }
        }
        i += 1;
    }
    seen.contains(&(m - 1))
}

#[test]
fn tame_rule_matches_norm_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for p in common::primes_below(50) {
        for e in 1..=6u32 {
            if e as u64 % p == 0 {
                continue;
            }
            for f in 1..=2u32 {
                let ext = TameCyclicExt::new(p, f, e).unwrap();
                let rule = artin_symbol_minus_one(&LocalExtension::Tame(ext)).unwrap();
                let brute = if minus_one_is_norm(p, e as usize, f, &mut rng) { 1 } else { -1 };
                assert_eq!(rule, brute, "p={p} e={e} f={f}");
                checked += 1;
            }
        }
    }
    assert!(checked > 150);
}

#[test]
fn seven_cubic_is_plus_one_by_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert!(minus_one_is_norm(7, 3, 1, &mut rng));
}

#[test]
fn wild_extension_rejected() {
    assert!(TameCyclicExt::new(2, 1, 2).is_err());
    assert!(TameCyclicExt::new(5, 2, 5).is_err());
}
