//! Weierstrass models over ℚ, their invariants, changes of model and twists.

mod division;
mod isogeny;

pub use division::{division_polynomial, doubling_x};
pub use isogeny::{kernel_polynomials, two_isogeny_pair, two_torsion_x, velu_isogenous, TwoIsogenyData};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::poly::QPoly;
use crate::arith::{parse_rational, rat, render_rational, Rational};
use crate::error::{arg, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveModel {
    a: [Rational; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub disc: Rational,
    pub j: Rational,
}

impl CurveModel {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Result<CurveModel> {
        CurveModel::from_ainvs([a1, a2, a3, a4, a6])
    }

    pub fn from_ainvs(a: [Rational; 5]) -> Result<CurveModel> {
        let e = CurveModel { a };
        if e.discriminant().is_zero() {
            return arg(format!("singular model {e}"));
        }
        Ok(e)
    }

    pub fn from_i64(a: [i64; 5]) -> Result<CurveModel> {
        CurveModel::from_ainvs(a.map(rat))
    }

    pub fn ainvs(&self) -> &[Rational; 5] {
        &self.a
    }

    pub fn a1(&self) -> &Rational {
        &self.a[0]
    }
    pub fn a2(&self) -> &Rational {
        &self.a[1]
    }
    pub fn a3(&self) -> &Rational {
        &self.a[2]
    }
    pub fn a4(&self) -> &Rational {
        &self.a[3]
    }
    pub fn a6(&self) -> &Rational {
        &self.a[4]
    }

    pub fn b2(&self) -> Rational {
        self.a1() * self.a1() + rat(4) * self.a2()
    }
    pub fn b4(&self) -> Rational {
        rat(2) * self.a4() + self.a1() * self.a3()
    }
    pub fn b6(&self) -> Rational {
        self.a3() * self.a3() + rat(4) * self.a6()
    }
    pub fn b8(&self) -> Rational {
        let [a1, a2, a3, a4, a6] = &self.a;
        a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }
    pub fn c4(&self) -> Rational {
        let b2 = self.b2();
        &b2 * &b2 - rat(24) * self.b4()
    }
    pub fn c6(&self) -> Rational {
        let b2 = self.b2();
        -(&b2 * &b2 * &b2) + rat(36) * &b2 * self.b4() - rat(216) * self.b6()
    }
    pub fn discriminant(&self) -> Rational {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6 + rat(9) * &b2 * &b4 * &b6
    }
    pub fn j_invariant(&self) -> Rational {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            b2: self.b2(),
            b4: self.b4(),
            b6: self.b6(),
            b8: self.b8(),
            c4: self.c4(),
            c6: self.c6(),
            disc: self.discriminant(),
            j: self.j_invariant(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|c| c.is_integer())
    }

    /// 4x³ + b2x² + 2b4x + b6, whose roots are the x-coordinates of 2-torsion.
    pub fn two_division_polynomial(&self) -> QPoly {
        QPoly::new(vec![self.b6(), rat(2) * self.b4(), self.b2(), rat(4)])
    }

    pub fn contains_point(&self, x: &Rational, y: &Rational) -> bool {
        let [a1, a2, a3, a4, a6] = &self.a;
        y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6
    }

    pub fn change(&self, m: &ModelMap) -> CurveModel {
        let [a1, a2, a3, a4, a6] = &self.a;
        let ModelMap { u, r, s, t } = m;
        let two = rat(2);
        let three = rat(3);
        let n1 = a1 + &two * s;
        let n2 = a2 - s * a1 + &three * r - s * s;
        let n3 = a3 + r * a1 + &two * t;
        let n4 = a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        CurveModel { a: [n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6] }
    }

    /// y² = x³ + a2x² + a4x + a6 obtained by completing the square (u = 1, so
    /// the standard differential becomes dx/2y).
    pub fn completed_square(&self) -> (CurveModel, ModelMap) {
        let m = ModelMap {
            u: Rational::one(),
            r: Rational::zero(),
            s: -self.a1() / rat(2),
            t: -self.a3() / rat(2),
        };
        (self.change(&m), m)
    }

    /// The quadratic twist d·y² = x³ + a2x² + a4x + a6 of the completed-square
    /// model, written as y² = x³ + d·a2x² + d²·a4x + d³·a6.
    pub fn quadratic_twist(&self, d: &Rational) -> Result<CurveModel> {
        if d.is_zero() {
            return arg("twist by zero");
        }
        let (e, _) = self.completed_square();
        let d2 = d * d;
        let d3 = &d2 * d;
        CurveModel::from_ainvs([
            Rational::zero(),
            d * e.a2(),
            Rational::zero(),
            d2 * e.a4(),
            d3 * e.a6(),
        ])
    }
}

impl std::fmt::Display for CurveModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// (x, y) = (u²x′ + r, u³y′ + su²x′ + t).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelMap {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl ModelMap {
    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Result<ModelMap> {
        if u.is_zero() {
            return arg("model map with u = 0");
        }
        Ok(ModelMap { u, r, s, t })
    }

    pub fn identity() -> ModelMap {
        ModelMap { u: Rational::one(), r: Rational::zero(), s: Rational::zero(), t: Rational::zero() }
    }

    pub fn scaling(u: Rational) -> ModelMap {
        ModelMap { u, ..ModelMap::identity() }
    }

    pub fn translation(r: Rational, s: Rational, t: Rational) -> ModelMap {
        ModelMap { r, s, t, ..ModelMap::identity() }
    }

    /// `E.change(&a.then(&b)) == E.change(&a).change(&b)`.
    pub fn then(&self, b: &ModelMap) -> ModelMap {
        let u1 = &self.u;
        let u1sq = u1 * u1;
        ModelMap {
            u: u1 * &b.u,
            r: &self.r + &u1sq * &b.r,
            s: &self.s + u1 * &b.s,
            t: &self.t + &u1sq * u1 * &b.t + &self.s * &u1sq * &b.r,
        }
    }

    pub fn inverse(&self) -> ModelMap {
        let u = &self.u;
        ModelMap {
            u: u.recip(),
            r: -&self.r / (u * u),
            s: -&self.s / u,
            t: (&self.r * &self.s - &self.t) / (u * u * u),
        }
    }

    /// Coordinates on the new model of a point given on the old one.
    pub fn map_point(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let u2 = &self.u * &self.u;
        let xn = (x - &self.r) / &u2;
        let yn = (y - &self.s * &u2 * &xn - &self.t) / (&u2 * &self.u);
        (xn, yn)
    }
}

/// JSON curve record: `{label?, ainvs: [5 rationals as strings]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub ainvs: Vec<String>,
}

impl CurveRecord {
    pub fn from_model(label: Option<&str>, e: &CurveModel) -> CurveRecord {
        CurveRecord {
            label: label.map(str::to_string),
            ainvs: e.ainvs().iter().map(render_rational).collect(),
        }
    }

    pub fn to_model(&self) -> Result<CurveModel> {
        if self.ainvs.len() != 5 {
            return Err(crate::Error::Parse(format!("expected 5 a-invariants, got {}", self.ainvs.len())));
        }
        let v: Vec<Rational> = self.ainvs.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
        let a: [Rational; 5] = v.try_into().unwrap();
        CurveModel::from_ainvs(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::square_class;

    #[test]
    fn cm_curve() {
        let e = CurveModel::from_i64([0, 0, 0, -1, 0]).unwrap();
        assert_eq!(e.discriminant(), rat(64));
        assert_eq!(e.j_invariant(), rat(1728));
    }

    #[test]
    fn curve_91b1_discriminant_class() {
        let e = CurveModel::from_i64([0, 1, 1, -7, 5]).unwrap();
        assert_eq!(square_class(&e.discriminant()).unwrap().representative(), &(-91).into());
    }

    #[test]
    fn singular_rejected() {
        assert!(CurveModel::from_i64([0, 0, 0, 0, 0]).is_err());
        assert!(CurveModel::from_i64([0, 0, 0, -3, 2]).is_err());
    }

    #[test]
    fn map_roundtrip() {
        let e = CurveModel::from_i64([1, -1, 1, -3, 3]).unwrap();
        let m = ModelMap::new(rat(2), rat(3), rat(-1), rat(5)).unwrap();
        assert_eq!(e.change(&m).change(&m.inverse()), e);
        assert_eq!(m.then(&m.inverse()), ModelMap::identity());
    }

    #[test]
    fn record_roundtrip() {
        let e = CurveModel::from_i64([0, 1, 1, -7, 5]).unwrap();
        let r = CurveRecord::from_model(Some("91b1"), &e);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"label":"91b1","ainvs":["0/1","1/1","1/1","-7/1","5/1"]}"#);
        assert_eq!(serde_json::from_str::<CurveRecord>(&s).unwrap().to_model().unwrap(), e);
    }
}
