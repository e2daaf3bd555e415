//! Hilbert symbols over ℝ and ℚ_p, and the Artin symbol (−1, F/ℚ_p).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{check_prime, factorize, legendre_u64, residue_mod, sign_of, unit_part, val, Rational};
use crate::error::{arg, unsupported, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceQ {
    Real,
    /// An archimedean complex place (only arises over imaginary fields).
    Complex,
    Finite(u64),
}

impl PlaceQ {
    pub fn finite(p: u64) -> Result<PlaceQ> {
        check_prime(p)?;
        Ok(PlaceQ::Finite(p))
    }

    pub fn is_archimedean(&self) -> bool {
        !matches!(self, PlaceQ::Finite(_))
    }
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Real => write!(f, "inf"),
            PlaceQ::Complex => write!(f, "C"),
            PlaceQ::Finite(p) => write!(f, "{p}"),
        }
    }
}

pub fn hilbert_symbol(x: &Rational, y: &Rational, v: PlaceQ) -> Result<i8> {
    if x.is_zero() || y.is_zero() {
        return arg("Hilbert symbol of zero");
    }
    match v {
        PlaceQ::Real => Ok(if sign_of(x) < 0 && sign_of(y) < 0 { -1 } else { 1 }),
        PlaceQ::Complex => Ok(1),
        PlaceQ::Finite(p) => {
            check_prime(p)?;
            Ok(hilbert_p(x, y, p))
        }
    }
}

fn hilbert_p(x: &Rational, y: &Rational, p: u64) -> i8 {
    let a = val(x, p).unwrap();
    let b = val(y, p).unwrap();
    let u = unit_part(x, p);
    let w = unit_part(y, p);
    if p == 2 {
        let u8 = residue_mod(&u, 8).unwrap();
        let w8 = residue_mod(&w, 8).unwrap();
        let eps = |t: u64| ((t - 1) / 2) % 2;
        let omega = |t: u64| ((t * t - 1) / 8) % 2;
        let e = eps(u8) * eps(w8) + (a.rem_euclid(2) as u64) * omega(w8) + (b.rem_euclid(2) as u64) * omega(u8);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s: i8 = 1;
        if (a * b).rem_euclid(2) == 1 && p % 4 == 3 {
            s = -s;
        }
        let ur = residue_mod(&u, p).unwrap();
        let wr = residue_mod(&w, p).unwrap();
        if b.rem_euclid(2) == 1 {
            s *= legendre_u64(ur, p);
        }
        if a.rem_euclid(2) == 1 {
            s *= legendre_u64(wr, p);
        }
        s
    }
}

/// Places where (x, y) can be nontrivial: ∞ and the primes dividing 2xy.
pub fn relevant_places(x: &Rational, y: &Rational) -> Result<Vec<PlaceQ>> {
    if x.is_zero() || y.is_zero() {
        return arg("Hilbert symbol of zero");
    }
    let n: BigInt = BigInt::from(2) * x.numer() * x.denom() * y.numer() * y.denom();
    let mut places = vec![PlaceQ::Real];
    for p in factorize(&n)?.primes() {
        match u64::try_from(p) {
            Ok(p) => places.push(PlaceQ::Finite(p)),
            Err(_) => return unsupported(format!("prime {p} exceeds 64 bits")),
        }
    }
    Ok(places)
}

/// Symbols at every relevant place; panics if their product is not +1.
pub fn product_formula_check(x: &Rational, y: &Rational) -> Result<Vec<(PlaceQ, i8)>> {
    let mut out = vec![];
    for v in relevant_places(x, y)? {
        out.push((v, hilbert_symbol(x, y, v)?));
    }
    let prod: i8 = out.iter().map(|(_, s)| *s).product();
    assert_eq!(prod, 1, "product formula violated for ({x}, {y}): {out:?}");
    Ok(out)
}

/// Tamely ramified extension of ℚ_p with residue degree f and ramification e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TameCyclicExt {
    p: u64,
    f: u32,
    e: u32,
}

impl TameCyclicExt {
    pub fn new(p: u64, f: u32, e: u32) -> Result<TameCyclicExt> {
        check_prime(p)?;
        if f == 0 || e == 0 {
            return arg("degrees must be positive");
        }
        if e as u64 % p == 0 {
            return unsupported(format!("wild ramification: p = {p} divides e = {e}"));
        }
        Ok(TameCyclicExt { p, f, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn degree(&self) -> u32 {
        self.e * self.f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalExtension {
    Tame(TameCyclicExt),
    /// ℚ_p(√d), any p including 2.
    Quadratic { p: u64, d: Rational },
}

/// +1 iff −1 is a norm from the extension.
pub fn artin_symbol_minus_one(ext: &LocalExtension) -> Result<i8> {
    match ext {
        LocalExtension::Quadratic { p, d } => hilbert_symbol(&Rational::from_integer((-1).into()), d, PlaceQ::finite(*p)?),
        LocalExtension::Tame(t) => Ok(tame_minus_one(t)),
    }
}

// Norms of units land exactly in the units whose residue lies in
// N(𝔽_q^×)^e = (𝔽_p^×)^e, and 1-units are norms in tame extensions.
fn tame_minus_one(t: &TameCyclicExt) -> i8 {
    let p = t.p;
    if p == 2 {
        return 1;
    }
    let g = gcd_u64(t.e as u64, p - 1);
    if ((p - 1) / 2) % g == 0 {
        1
    } else {
        -1
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}
