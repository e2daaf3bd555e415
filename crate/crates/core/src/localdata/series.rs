//! q-expansions for the Tate curve y² + xy = x³ + a4(q)x + a6(q) and its
//! 2-torsion points.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{frac, rat, render_rational, Rational};
use crate::error::{arg, Result};

/// Truncated power series in q, exact through q^order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> PowerSeries {
        PowerSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> PowerSeries {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Smallest k with a nonzero coefficient, None for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &PowerSeries) -> PowerSeries {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, o: &PowerSeries) -> PowerSeries {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add_const(&self, c: &Rational) -> PowerSeries {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let n = self.order().min(o.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// f(q) ↦ f(q^m), same truncation order.
    pub fn substitute_power(&self, m: usize) -> PowerSeries {
        let mut out = PowerSeries::zero(self.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * m <= self.order() {
                out.coeffs[k * m] = c.clone();
            }
        }
        out
    }

    /// Σ_{k≥1} w(k)·c^k·q^{ek} for e ≥ 1.
    fn add_monomial_series(&mut self, c: &Rational, e: usize, w: impl Fn(i64) -> Rational) {
        assert!(e >= 1);
        let mut ck = Rational::one();
        let mut k = 1;
        while k * e <= self.order() {
            ck *= c;
            self.coeffs[k * e] += w(k as i64) * &ck;
            k += 1;
        }
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(render_rational).collect();
        v.serialize(s)
    }
}

impl std::fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = vec![];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*q"),
                _ => format!("{c}*q^{k}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(q^{})", parts.join(" + "), self.order() + 1)
    }
}

/// s_k(q) = Σ_{n≥1} n^k qⁿ/(1 − qⁿ).
pub(crate) fn s_k(k: u32, order: usize) -> PowerSeries {
    let mut s = PowerSeries::zero(order);
    for n in 1..=order {
        let nk = rat((n as i64).pow(k));
        s.add_monomial_series(&Rational::one(), n, |_| nk.clone());
    }
    s
}

fn a4_series(order: usize) -> PowerSeries {
    s_k(3, order).scale(&rat(-5))
}

fn a6_series(order: usize) -> PowerSeries {
    s_k(3, order).scale(&rat(5)).add(&s_k(5, order).scale(&rat(7))).scale(&frac(-1, 12))
}

/// X(u, Q) and Y(u, Q) for u = c·q^j and Q = q^m (0 ≤ j < m, c ≠ 1 if j = 0):
/// X = Σ_{n∈ℤ} Qⁿu/(1−Qⁿu)² − 2s₁(Q), Y = Σ_{n∈ℤ} (Qⁿu)²/(1−Qⁿu)³ + s₁(Q).
fn xy_series(c: &Rational, j: usize, m: usize, order: usize) -> (PowerSeries, PowerSeries) {
    assert!(j < m && !(j == 0 && c.is_one()));
    let lin = |k: i64| rat(k);
    let tri = |k: i64| rat(k * (k - 1) / 2);
    let tri1 = |k: i64| rat(-(k * (k + 1) / 2));
    let ci = c.recip();
    let mut x = PowerSeries::zero(order);
    let mut y = PowerSeries::zero(order);
    // n = 0
    if j == 0 {
        let one_minus = Rational::one() - c;
        x.coeffs[0] += c / (&one_minus * &one_minus);
        y.coeffs[0] += c * c / (&one_minus * &one_minus * &one_minus);
    } else {
        x.add_monomial_series(c, j, lin);
        y.add_monomial_series(c, j, tri);
    }
    let mut n = 1;
    while m * n - j <= order {
        // z = Qⁿu and w = Qⁿ/u = 1/(Q⁻ⁿu)
        let (ez, ew) = (m * n + j, m * n - j);
        if ez <= order {
            x.add_monomial_series(c, ez, lin);
            y.add_monomial_series(c, ez, tri);
        }
        x.add_monomial_series(&ci, ew, lin);
        y.add_monomial_series(&ci, ew, tri1);
        n += 1;
    }
    let s1 = s_k(1, order).substitute_power(m);
    (x.sub(&s1.scale(&rat(2))), y.add(&s1))
}

/// A rational 2-torsion point of the Tate curve moved to (0, 0) on
/// y² = x³ + ax² + bx (after completing the square), with δ = a² − 4b.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTorsionSeries {
    pub x: PowerSeries,
    pub y: PowerSeries,
    pub r: PowerSeries,
    pub a: PowerSeries,
    pub b: PowerSeries,
    pub delta: PowerSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateSeries {
    pub order: usize,
    pub a4: PowerSeries,
    pub a6: PowerSeries,
    /// The point X(−1, q) on E_q.
    pub minus_one: TwoTorsionSeries,
    /// The point X(q, q²) on E_{q²}.
    pub q_over_q2: TwoTorsionSeries,
    /// y² + xy = x³ + a4†x + a6† reached from y² = x³ − 2ax² + δx by
    /// x ↦ 4x − 2r + 1/2, y ↦ 8y + 4x in the X(−1, q) case.
    pub dagger_a4: PowerSeries,
    pub dagger_a6: PowerSeries,
}

fn two_torsion(x: PowerSeries, y: PowerSeries, a4: &PowerSeries) -> TwoTorsionSeries {
    let r = x.scale(&rat(-1));
    let a = r.scale(&rat(-3)).add_const(&frac(1, 4));
    // translate x by −r on y² = x³ + x²/4 + a4x + a6
    let b = a4.add(&r.mul(&r).scale(&rat(3))).sub(&r.scale(&frac(1, 2)));
    let delta = a.mul(&a).sub(&b.scale(&rat(4)));
    TwoTorsionSeries { x, y, r, a, b, delta }
}

pub fn tate_q_expansions(order: usize) -> Result<TateSeries> {
    if order == 0 || order > 30 {
        return arg(format!("series order must be in 1..=30, got {order}"));
    }
    let a4 = a4_series(order);
    let a6 = a6_series(order);

    let (x1, y1) = xy_series(&rat(-1), 0, 1, order);
    let minus_one = two_torsion(x1, y1, &a4);
    let (x2, y2) = xy_series(&rat(1), 1, 2, order);
    let q_over_q2 = two_torsion(x2, y2, &a4.substitute_power(2));

    let t = &minus_one;
    let c = t.r.scale(&rat(-2)).add_const(&frac(1, 2));
    let c2 = c.mul(&c);
    let inv64 = frac(1, 64);
    let dagger_a4 = c2.scale(&rat(12)).sub(&t.a.mul(&c).scale(&rat(16))).add(&t.delta.scale(&rat(4))).scale(&inv64);
    let dagger_a6 = c2.mul(&c).sub(&t.a.mul(&c2).scale(&rat(2))).add(&t.delta.mul(&c)).scale(&inv64);
    // the x² coefficient (48c − 32a)/64 − 1/4 vanishes identically
    debug_assert!(c.scale(&rat(3)).sub(&t.a.scale(&rat(2))) == PowerSeries::constant(rat(1), order));

    Ok(TateSeries { order, a4, a6, minus_one, q_over_q2, dagger_a4, dagger_a6 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_terms() {
        let s = tate_q_expansions(5).unwrap();
        let a4: Vec<Rational> = [0, -5, -45, -140, -365, -630].map(rat).to_vec();
        assert_eq!(s.a4.coeffs(), &a4[..]);
        let a6: Vec<Rational> = [0, -1, -23, -154, -647, -1876].map(rat).to_vec();
        assert_eq!(s.a6.coeffs(), &a6[..]);
    }
}
