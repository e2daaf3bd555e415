use num_traits::{One, Zero};

use super::{division_polynomial, doubling_x, CurveModel, ModelMap};
use crate::arith::poly::QPoly;
use crate::arith::zfactor::factor_rational;
use crate::arith::{is_prime_u64, rat, Rational};
use crate::error::{arg, unsupported, Result};

/// E_{a,b}: y² = x³ + ax² + bx and E′: y² = x³ − 2ax² + δx, δ = a² − 4b, with
/// φ(x, y) = (x + a + b/x, y − by/x²). φ pulls dx/2y on E′ back to dx/2y on E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoIsogenyData {
    pub a: Rational,
    pub b: Rational,
    pub delta: Rational,
    pub source: CurveModel,
    pub target: CurveModel,
    /// From the curve the data was built from to `source`; u = 1, so the
    /// standard differentials agree.
    pub map: ModelMap,
}

impl TwoIsogenyData {
    pub fn from_ab(a: Rational, b: Rational) -> Result<TwoIsogenyData> {
        let delta = &a * &a - rat(4) * &b;
        if b.is_zero() || delta.is_zero() {
            return arg(format!("degenerate 2-isogeny data a = {a}, b = {b}"));
        }
        let z = Rational::zero();
        let source = CurveModel::from_ainvs([z.clone(), a.clone(), z.clone(), b.clone(), z.clone()])?;
        let target = CurveModel::from_ainvs([z.clone(), rat(-2) * &a, z.clone(), delta.clone(), z])?;
        Ok(TwoIsogenyData { a, b, delta, source, target, map: ModelMap::identity() })
    }

    /// The dual direction: E′ → E″ ≅ E_{4a, 16b} (x ↦ x/4 rescales back to E_{a,b}).
    pub fn dual(&self) -> Result<TwoIsogenyData> {
        TwoIsogenyData::from_ab(rat(-2) * &self.a, self.delta.clone())
    }

    pub fn phi(&self, x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
        if x.is_zero() {
            return None;
        }
        let x2 = x * x;
        Some((x + &self.a + &self.b / x, y - &self.b * y / x2))
    }
}

/// Rational x-coordinates of the nontrivial 2-torsion points.
pub fn two_torsion_x(e: &CurveModel) -> Vec<Rational> {
    e.two_division_polynomial().rational_roots()
}

pub fn two_isogeny_pair(e: &CurveModel, x0: &Rational) -> Result<TwoIsogenyData> {
    if !e.two_division_polynomial().eval(x0).is_zero() {
        return arg(format!("x = {x0} is not the x-coordinate of a 2-torsion point"));
    }
    let (short, m1) = e.completed_square();
    let m2 = ModelMap::translation(x0.clone(), Rational::zero(), Rational::zero());
    let moved = short.change(&m2);
    debug_assert!(moved.a6().is_zero() && moved.a1().is_zero() && moved.a3().is_zero());
    let mut data = TwoIsogenyData::from_ab(moved.a2().clone(), moved.a4().clone())?;
    data.map = m1.then(&m2);
    Ok(data)
}

/// Quotient of E by the subgroup whose nonzero x-coordinates are the roots
/// of `kernel` (odd order), via Kohel's form of Vélu's formulas.
pub fn velu_isogenous(e: &CurveModel, kernel: &QPoly) -> Result<CurveModel> {
    if kernel.is_zero() {
        return arg("zero kernel polynomial");
    }
    if kernel.lead() != Rational::one() {
        return arg("kernel polynomial must be monic");
    }
    let n = kernel.degree() as usize;
    if n == 0 {
        return Ok(e.clone());
    }
    let l = 2 * n + 1;
    if !is_prime_u64(l as u64) {
        return arg(format!("kernel degree {n} does not give an odd prime degree"));
    }
    if l > 13 {
        return unsupported(format!("kernel validation only implemented for l <= 13, got {l}"));
    }
    if !division_polynomial(e, l).rem(kernel).is_zero() {
        return arg(format!("kernel does not divide the {l}-division polynomial"));
    }
    if !closed_under_doubling(e, kernel) {
        return arg("kernel not closed under doubling");
    }
    let c = kernel.coeffs();
    let s1 = -c[n - 1].clone();
    let s2 = if n >= 2 { c[n - 2].clone() } else { Rational::zero() };
    let s3 = if n >= 3 { -c[n - 3].clone() } else { Rational::zero() };
    let (b2, b4, b6) = (e.b2(), e.b4(), e.b6());
    let nn = rat(n as i64);
    let p2 = &s1 * &s1 - rat(2) * &s2;
    let t = rat(6) * &p2 + &b2 * &s1 + &nn * &b4;
    let w = rat(10) * (&s1 * &s1 * &s1 - rat(3) * &s1 * &s2 + rat(3) * &s3) + rat(2) * &b2 * &p2 + rat(3) * &b4 * &s1 + &nn * &b6;
    let [a1, a2, a3, a4, a6] = e.ainvs().clone();
    CurveModel::from_ainvs([a1, a2, a3, a4 - rat(5) * &t, a6 - &b2 * &t - rat(7) * &w])
}

fn closed_under_doubling(e: &CurveModel, kernel: &QPoly) -> bool {
    let (num, den) = doubling_x(e);
    let n = kernel.degree() as u32;
    // kernel(num/den)·den^n reduced mod kernel
    let mut acc = QPoly::zero();
    for (i, c) in kernel.coeffs().iter().enumerate() {
        let term = num.pow(i as u32).mul(&den.pow(n - i as u32)).scale(c);
        acc = acc.add(&term).rem(kernel);
    }
    acc.is_zero() && den.gcd(kernel).degree() == 0
}

/// Kernel polynomials of all rational cyclic l-isogenies (odd prime l ≤ 13).
pub fn kernel_polynomials(e: &CurveModel, l: usize) -> Result<Vec<QPoly>> {
    if l % 2 == 0 || !is_prime_u64(l as u64) || l > 13 {
        return unsupported(format!("kernel search for l = {l}"));
    }
    let n = (l - 1) / 2;
    let fl = division_polynomial(e, l);
    let factors: Vec<QPoly> = factor_rational(&fl)?
        .into_iter()
        .filter(|(g, _)| g.degree() as usize <= n)
        .map(|(g, _)| g)
        .collect();
    let mut out = vec![];
    // products of distinct irreducible factors of total degree n
    let m = factors.len();
    let mut stack: Vec<(usize, QPoly)> = vec![(0, QPoly::one())];
    while let Some((start, prod)) = stack.pop() {
        let d = prod.degree() as usize;
        if d == n {
            if closed_under_doubling(e, &prod) {
                out.push(prod);
            }
            continue;
        }
        for i in start..m {
            if d + factors[i].degree() as usize <= n {
                stack.push((i + 1, prod.mul(&factors[i])));
            }
        }
    }
    out.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(out)
}
