//! Number fields given by a monic integer polynomial. Only decomposition data
//! of primes is computed; no arithmetic inside the field.

mod predict;
mod split;

pub use predict::{
    euler_factor_over_k, fourth_power_check, fourth_root, global_root_number_over, goldfeld_flip_check,
    semistable_global_root_number,
    FourthPowerReport, FourthPowerRow, GoldfeldReport,
};
pub use split::{infinite_places, splitting_type, PlaceDecomposition};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::matrix::QMatrix;
use crate::arith::poly::QPoly;
use crate::arith::zfactor::is_irreducible;
use crate::arith::Rational;
use crate::error::{arg, Error, Result};

/// How the field was described; shapes with dedicated splitting logic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldShape {
    General,
    /// ℚ(√d₁, …, √d_k) with independent squarefree generators.
    Multiquadratic(Vec<i64>),
    /// ℚ(∛m), m cube-free.
    PureCubic(i64),
    Cyclotomic(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumberField {
    /// Coefficients lowest degree first.
    #[serde(serialize_with = "ser_ints")]
    poly: Vec<BigInt>,
    #[serde(serialize_with = "ser_int")]
    disc: BigInt,
    signature: (usize, usize),
    shape: FieldShape,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn squarefree_part(n: i64) -> i64 {
    let mut m = n.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2;
    while p * p <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if k % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out *= m;
    n.signum() * out as i64
}

fn cube_free_part(n: i64) -> i64 {
    let mut m = n.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2;
    while p * p <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        out *= p.pow(k % 3);
        p += 1;
    }
    out *= m;
    n.signum() * out as i64
}

/// q(x + √d)·q(x − √d): the polynomial whose roots are the roots of q shifted by ±√d.
fn adjoin_sqrt(q: &QPoly, d: i64) -> QPoly {
    let d = Rational::from_integer(d.into());
    // (x + t)^k = A_k + B_k·t with t² = d
    let (mut a, mut b) = (QPoly::zero(), QPoly::zero());
    let (mut pa, mut pb) = (QPoly::one(), QPoly::zero());
    for c in q.coeffs() {
        a = a.add(&pa.scale(c));
        b = b.add(&pb.scale(c));
        let na = pa.mul(&QPoly::x()).add(&pb.scale(&d));
        let nb = pb.mul(&QPoly::x()).add(&pa);
        pa = na;
        pb = nb;
    }
    a.mul(&a).sub(&b.mul(&b).scale(&d))
}

fn cyclotomic_poly(n: u32) -> QPoly {
    let mut f = QPoly::from_i64(&[-1]).add(&QPoly::x().pow(n));
    for d in 1..n {
        if n % d == 0 {
            f = f.divrem(&cyclotomic_poly(d)).0;
        }
    }
    f
}

fn sturm_real_roots(f: &QPoly) -> usize {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        seq.push(r);
    }
    seq.pop();
    let changes = |signs: Vec<i32>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_pos: Vec<i32> = seq.iter().map(|p| if p.lead().is_positive() { 1 } else { -1 }).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| {
            let s = if p.lead().is_positive() { 1 } else { -1 };
            if p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

fn resultant(f: &QPoly, g: &QPoly) -> Rational {
    let (m, n) = (f.degree() as usize, g.degree() as usize);
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut s = QMatrix::zeros(size, size);
    for i in 0..n {
        for j in 0..=m {
            s.set(i, i + j, f.coeff(m - j));
        }
    }
    for i in 0..m {
        for j in 0..=n {
            s.set(n + i, i + j, g.coeff(n - j));
        }
    }
    s.det()
}

impl NumberField {
    /// Monic integer coefficients, lowest degree first.
    pub fn new(poly: Vec<BigInt>) -> Result<NumberField> {
        NumberField::with_shape(poly, FieldShape::General)
    }

    fn with_shape(mut poly: Vec<BigInt>, shape: FieldShape) -> Result<NumberField> {
        while poly.last().is_some_and(Zero::is_zero) {
            poly.pop();
        }
        if poly.len() < 2 || !poly.last().unwrap().is_one() {
            return arg("defining polynomial must be monic of degree >= 1");
        }
        let f = QPoly::from_ints(&poly);
        if !is_irreducible(&f)? {
            return arg(format!("{f} is reducible over Q"));
        }
        let n = f.degree() as usize;
        let r1 = sturm_real_roots(&f);
        let res = resultant(&f, &f.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let disc = (res * Rational::from_integer(sign.into())).to_integer();
        Ok(NumberField { poly, disc, signature: (r1, (n - r1) / 2), shape })
    }

    pub fn rationals() -> NumberField {
        NumberField::new(vec![BigInt::zero(), BigInt::one()]).unwrap()
    }

    fn from_qpoly(f: QPoly, shape: FieldShape) -> Result<NumberField> {
        let coeffs = f.coeffs().iter().map(|c| c.to_integer()).collect();
        NumberField::with_shape(coeffs, shape)
    }

    pub fn quad(d: i64) -> Result<NumberField> {
        NumberField::multiquad(&[d])
    }

    pub fn biquad(d1: i64, d2: i64) -> Result<NumberField> {
        NumberField::multiquad(&[d1, d2])
    }

    /// ℚ(√d₁, …, √d_k) via the minimal polynomial of √d₁ + … + √d_k.
    pub fn multiquad(ds: &[i64]) -> Result<NumberField> {
        if ds.is_empty() || ds.len() > 4 {
            return arg("multiquadratic fields take 1 to 4 generators");
        }
        let mut f = QPoly::x();
        let mut gens = vec![];
        for &d in ds {
            if d == 0 {
                return arg("sqrt(0) generates nothing");
            }
            gens.push(squarefree_part(d));
            f = adjoin_sqrt(&f, d);
        }
        NumberField::from_qpoly(f, FieldShape::Multiquadratic(gens))
            .map_err(|_| Error::Argument(format!("{ds:?} are not independent modulo squares")))
    }

    pub fn purecubic(m: i64) -> Result<NumberField> {
        let c = cube_free_part(m);
        if c.abs() == 1 || m == 0 {
            return arg(format!("{m} is a cube"));
        }
        NumberField::from_qpoly(QPoly::from_i64(&[-c, 0, 0, 1]), FieldShape::PureCubic(c))
    }

    pub fn cyclotomic(n: u32) -> Result<NumberField> {
        if !(1..=16).contains(&n) {
            return arg("cyclotomic fields are limited to n <= 16");
        }
        NumberField::from_qpoly(cyclotomic_poly(n), FieldShape::Cyclotomic(n))
    }

    /// "quad(d)", "biquad(d1,d2)", "multiquad(d1,d2,d3)", "purecubic(m)",
    /// "cyclotomic(n)", "rationals", or a coefficient list "[1,0,1]" written
    /// from the leading coefficient down.
    pub fn parse(spec: &str) -> Result<NumberField> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let perr = || Error::Parse(format!("cannot read field {spec:?}"));
        if s == "rationals" || s == "Q" {
            return Ok(NumberField::rationals());
        }
        if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut c: Vec<BigInt> =
                body.split(',').map(|x| x.parse::<BigInt>().map_err(|_| perr())).collect::<Result<_>>()?;
            c.reverse();
            return NumberField::new(c);
        }
        let open = s.find('(').ok_or_else(perr)?;
        let args = s[open + 1..].strip_suffix(')').ok_or_else(perr)?;
        let nums: Vec<i64> = args.split(',').map(|x| x.parse::<i64>().map_err(|_| perr())).collect::<Result<_>>()?;
        match (&s[..open], nums.as_slice()) {
            ("quad", [d]) => NumberField::quad(*d),
            ("biquad", [a, b]) => NumberField::biquad(*a, *b),
            ("multiquad", ds) => NumberField::multiquad(ds),
            ("purecubic", [m]) => NumberField::purecubic(*m),
            ("cyclotomic", [n]) if *n > 0 => NumberField::cyclotomic(*n as u32),
            _ => Err(perr()),
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> QPoly {
        QPoly::from_ints(&self.poly)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.poly
    }

    /// Discriminant of the defining polynomial (not of the ring of integers).
    pub fn poly_discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn infinite_place_count(&self) -> usize {
        self.signature.0 + self.signature.1
    }

    pub fn shape(&self) -> &FieldShape {
        &self.shape
    }

    /// The squarefree d with ℚ(√d) ⊆ K, for multiquadratic K (1 excluded).
    pub fn quadratic_subfields(&self) -> Option<Vec<i64>> {
        let FieldShape::Multiquadratic(gens) = &self.shape else { return None };
        let mut out = vec![];
        for mask in 1u32..(1 << gens.len()) {
            let mut prod = 1i128;
            for (i, g) in gens.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod *= *g as i128;
                }
            }
            out.push(squarefree_part(prod.to_i64()?));
        }
        Some(out)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            FieldShape::Multiquadratic(ds) if ds.len() == 1 => write!(f, "quad({})", ds[0]),
            FieldShape::Multiquadratic(ds) if ds.len() == 2 => write!(f, "biquad({},{})", ds[0], ds[1]),
            FieldShape::Multiquadratic(ds) => {
                let s: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "multiquad({})", s.join(","))
            }
            FieldShape::PureCubic(m) => write!(f, "purecubic({m})"),
            FieldShape::Cyclotomic(n) => write!(f, "cyclotomic({n})"),
            FieldShape::General => write!(f, "Q[x]/({})", self.poly()),
        }
    }
}
