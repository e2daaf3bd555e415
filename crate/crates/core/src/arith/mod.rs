//! Exact integers and rationals, p-adic valuations, square classes and residue symbols.

pub mod factor;
pub mod ff;
pub mod matrix;
pub mod poly;
pub mod zfactor;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{arg, unsupported, Error, Result};

pub use factor::{factorize, is_prime, is_prime_u64, Factorization};

pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Always `num/den`, also for integers.
pub fn render_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        arg(format!("{p} is not prime"))
    }
}

/// v_p(x); `None` stands for +∞ (x = 0).
pub fn valuation(x: &Rational, p: u64) -> Result<Option<i64>> {
    check_prime(p)?;
    Ok(val(x, p))
}

pub(crate) fn val(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(val_int(x.numer(), p).unwrap() - val_int(x.denom(), p).unwrap())
}

pub(crate) fn val_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

pub(crate) fn p_pow(p: u64, k: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base, (-k) as usize).recip()
    }
}

/// x / p^{v_p(x)}.
pub(crate) fn unit_part(x: &Rational, p: u64) -> Rational {
    match val(x, p) {
        None => Rational::zero(),
        Some(v) => x / p_pow(p, v),
    }
}

pub(crate) fn mod_u64(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Image of a rational in ℤ/m; `None` if the denominator is not invertible.
pub(crate) fn residue_mod(x: &Rational, m: u64) -> Option<u64> {
    let n = mod_u64(x.numer(), m);
    let d = mod_u64(x.denom(), m);
    let di = inv_mod(d, m)?;
    Some(mul_mod(n, di, m))
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u128, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Legendre symbol of a unit residue via Euler's criterion, p odd.
pub(crate) fn legendre_u64(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, ((p - 1) / 2) as u128, p) == 1 {
        1
    } else {
        -1
    }
}

/// Quadratic character of 𝔽_q (q = p^f, f ≤ 2) evaluated on an integer.
pub fn legendre_symbol(a: &BigInt, p: u64, f: u32) -> Result<i8> {
    check_prime(p)?;
    if p == 2 {
        return unsupported("legendre symbol in characteristic 2");
    }
    if !(1..=2).contains(&f) {
        return arg(format!("residue degree {f} not in {{1,2}}"));
    }
    let r = legendre_u64(mod_u64(a, p), p);
    Ok(if f == 2 && r != 0 { 1 } else { r })
}

/// Kronecker symbol (a/n) for n > 0; used for splitting in quadratic fields.
pub fn kronecker(a: &BigInt, n: u64) -> i8 {
    assert!(n > 0);
    let mut n = n;
    let mut result: i8 = 1;
    let a = a.clone();
    while n % 2 == 0 {
        n /= 2;
        let r = mod_u64(&a, 8);
        if r % 2 == 0 {
            return 0;
        }
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    if n == 1 {
        return result;
    }
    // Jacobi symbol (a/n), n odd
    let mut a = mod_u64(&a, n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Element of ℚ×/ℚ×², stored as its squarefree integer representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn one() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&other.0);
        SquareClass((&self.0 / &g) * (&other.0 / &g))
    }

    pub fn from_i64(n: i64) -> Result<Self> {
        square_class(&rat(n))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let fac = factorize(n)?;
    let mut s = BigInt::from(fac.sign);
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

pub fn square_class(x: &Rational) -> Result<SquareClass> {
    if x.is_zero() {
        return arg("square class of zero");
    }
    // x ~ num·den mod squares
    let n = x.numer() * x.denom();
    Ok(SquareClass(squarefree_part(&n)?))
}

pub fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_square(x: &Rational) -> bool {
    !x.is_negative() && is_square_int(x.numer()) && is_square_int(x.denom())
}

pub(crate) fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // huge numerators: scale down by bit length
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let shift = nb.max(db) - 1000;
        let n: f64 = (x.numer() >> shift.max(0) as usize).to_f64().unwrap();
        let d: f64 = (x.denom() >> shift.max(0) as usize).to_f64().unwrap();
        n / d
    })
}

pub(crate) fn sign_of(x: &Rational) -> i8 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("-6").unwrap(), rat(-6));
        assert_eq!(parse_rational(" 6/-4 ").unwrap(), frac(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(render_rational(&frac(-3, 2)), "-3/2");
        assert_eq!(render_rational(&rat(5)), "5/1");
    }

    #[test]
    fn kronecker_small() {
        assert_eq!(kronecker(&int(17), 2), 1);
        assert_eq!(kronecker(&int(-1), 2), 1);
        assert_eq!(kronecker(&int(-4), 2), 0);
        assert_eq!(kronecker(&int(5), 2), -1);
        assert_eq!(kronecker(&int(-4), 3), -1);
        assert_eq!(kronecker(&int(2), 7), 1);
        assert_eq!(kronecker(&int(7), 7), 0);
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 8), None);
    }
}
