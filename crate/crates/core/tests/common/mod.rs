#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn rand_nonzero_rational(rng: &mut impl Rng, bound: i64) -> Q {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound);
        if n != 0 {
            return qf(n, d);
        }
    }
}

/// v_p by repeated division, written independently of the library.
pub fn vp(x: &Q, p: u64) -> i64 {
    assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut k = 0;
        while n.is_multiple_of(&pb) {
            n /= &pb;
            k += 1;
        }
        k
    };
    count(x.numer()) - count(x.denom())
}

pub fn residue(x: &Q, m: u64) -> u64 {
    let mb = BigInt::from(m);
    let n = x.numer().mod_floor(&mb).to_u64().unwrap();
    let d = x.denom().mod_floor(&mb).to_u64().unwrap();
    let di = (1..m).find(|&t| (t * d) % m == 1).expect("denominator not invertible");
    (n * di) % m
}

/// Exact test for x ∈ (ℚ_p^×)²: even valuation and unit part a square
/// (≡ 1 mod 8 at p = 2, a nonzero square mod p otherwise).
pub fn is_padic_square(x: &Q, p: u64) -> bool {
    if x.is_zero() {
        return false;
    }
    let v = vp(x, p);
    if v % 2 != 0 {
        return false;
    }
    let mut u = x.clone();
    let pq = Q::from_integer(BigInt::from(p));
    for _ in 0..v.abs() {
        if v > 0 {
            u /= &pq;
        } else {
            u *= &pq;
        }
    }
    if p == 2 {
        residue(&u, 8) == 1
    } else {
        let r = residue(&u, p);
        (1..p).any(|t| (t * t) % p == r)
    }
}

pub fn is_rational_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(x.numer()) && sq(x.denom())
}

pub fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}
