//! Dense univariate polynomials over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat, Rational};

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly(Vec<Rational>);

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> QPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn from_ints(c: &[BigInt]) -> QPoly {
        QPoly::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    pub fn zero() -> QPoly {
        QPoly(vec![])
    }

    pub fn one() -> QPoly {
        QPoly(vec![Rational::one()])
    }

    pub fn x() -> QPoly {
        QPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn divrem(&self, m: &QPoly) -> (QPoly, QPoly) {
        assert!(!m.is_zero(), "polynomial division by zero");
        let dm = m.0.len() - 1;
        let li = m.lead().recip();
        let mut r = self.0.clone();
        if r.len() <= dm {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dm];
        for k in (0..q.len()).rev() {
            let c = &r[k + dm] * &li;
            if !c.is_zero() {
                for (i, mi) in m.0.iter().enumerate() {
                    r[k + i] -= &c * mi;
                }
            }
            q[k] = c;
        }
        r.truncate(dm);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, m: &QPoly) -> QPoly {
        self.divrem(m).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            // keep sizes in check
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Same polynomial up to a nonzero rational scalar, with integer coprime coefficients.
    pub fn primitive_rational(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (ints, _) = self.to_integer_primitive();
        QPoly::from_ints(&ints)
    }

    /// Integer primitive part (positive leading coefficient) and the scalar c with self = c·prim.
    pub fn to_integer_primitive(&self) -> (Vec<BigInt>, Rational) {
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return (ints, Rational::zero());
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (prim, Rational::new(g, l))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + super::to_f64(c))
    }

    /// self(g(x)).
    pub fn compose(&self, g: &QPoly) -> QPoly {
        self.0.iter().rev().fold(QPoly::zero(), |acc, c| acc.mul(g).add(&QPoly::constant(c.clone())))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Rational roots of a nonzero polynomial (distinct, ascending).
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() < 1 {
            return vec![];
        }
        let mut f = self.clone();
        let mut roots = vec![];
        // strip x^k
        if f.coeff(0).is_zero() {
            roots.push(Rational::zero());
            while f.coeff(0).is_zero() {
                f = f.divrem(&QPoly::x()).0;
            }
        }
        if f.degree() >= 1 {
            let (ints, _) = f.to_integer_primitive();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let num_divs = divisors(&a0);
            let den_divs = divisors(&an);
            for n in &num_divs {
                for d in &den_divs {
                    for s in [1i64, -1] {
                        let r = Rational::new(n * s, d.clone());
                        if f.eval(&r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let fac = super::factorize(n).expect("nonzero");
    let mut out = vec![BigInt::one()];
    for (p, e) in &fac.factors {
        let mut next = vec![];
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
