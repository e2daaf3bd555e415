//! Local invariants of elliptic curves: Tate's algorithm over ℚ_p and its
//! unramified quadratic extension, Euler factors, local C-terms and periods.

mod euler;
mod period;
mod series;
mod stability;
mod tate;

pub use euler::{count_points, euler_factor, frobenius_trace_power, EulerFactor};
pub use period::{complex_c_term, lattice_area, real_period};
pub use series::{tate_q_expansions, PowerSeries, TateSeries, TwoTorsionSeries};
pub use stability::{perturbation_stability, StabilityReport};

use serde::Serialize;

use crate::arith::{check_prime, val, Rational};
use crate::curve::{CurveModel, ModelMap};
use crate::error::{arg, unsupported, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LocalField {
    p: u64,
    f: u32,
}

impl LocalField {
    pub fn new(p: u64, f: u32) -> Result<LocalField> {
        check_prime(p)?;
        if f == 0 {
            return arg("residue degree must be positive");
        }
        if f > 2 {
            return unsupported(format!("only Q_p and its unramified quadratic extension are supported, got f = {f}"));
        }
        Ok(LocalField { p, f })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// Normalized valuation: the uniformizer is p, so this is just v_p.
    pub fn valuation(&self, x: &Rational) -> Option<i64> {
        val(x, self.p)
    }
}

impl std::fmt::Display for LocalField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.f == 1 {
            write!(f, "Q_{}", self.p)
        } else {
            write!(f, "Q_{}^{}", self.p, self.f)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl std::fmt::Display for Kodaira {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ReductionType {
    Good,
    SplitMult,
    NonsplitMult,
    AdditivePotMult,
    AdditivePotGood,
}

impl ReductionType {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, ReductionType::SplitMult | ReductionType::NonsplitMult)
    }

    pub fn is_additive(self) -> bool {
        matches!(self, ReductionType::AdditivePotMult | ReductionType::AdditivePotGood)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub field: LocalField,
    pub kodaira: Kodaira,
    pub conductor_exponent: u32,
    pub tamagawa: u64,
    pub min_disc_valuation: i64,
    /// v(u) for the change of variables to the minimal model; the minimal
    /// model's standard differential is u times the input one.
    pub scaling_valuation: i64,
    pub reduction: ReductionType,
    pub minimal_model: CurveModel,
    pub to_minimal: ModelMap,
}

pub fn tate_algorithm(e: &CurveModel, k: LocalField) -> LocalData {
    tate::run(e, k)
}

pub fn reduction_type(e: &CurveModel, k: LocalField) -> ReductionType {
    tate::run(e, k).reduction
}

/// c_v·|ω/ω°|_v at a finite place, or the archimedean integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalCTerm {
    pub tamagawa: u64,
    pub q: u64,
    /// The value is tamagawa · q^scale_exponent at finite places.
    pub scale_exponent: i64,
    pub archimedean_value: Option<f64>,
}

impl LocalCTerm {
    pub fn exact(&self) -> Option<Rational> {
        if self.archimedean_value.is_some() {
            return None;
        }
        let q = Rational::from_integer(self.q.into());
        let mut v = Rational::from_integer(self.tamagawa.into());
        for _ in 0..self.scale_exponent.unsigned_abs() {
            if self.scale_exponent > 0 {
                v *= &q;
            } else {
                v /= &q;
            }
        }
        Some(v)
    }

    pub fn value(&self) -> f64 {
        match self.archimedean_value {
            Some(x) => x,
            None => self.tamagawa as f64 * (self.q as f64).powi(self.scale_exponent as i32),
        }
    }
}

/// `u` expresses the chosen differential as u·(standard differential of E).
pub fn local_c_term(e: &CurveModel, u: &Rational, k: LocalField) -> Result<LocalCTerm> {
    if u == &Rational::from_integer(0.into()) {
        return arg("zero differential");
    }
    let ld = tate_algorithm(e, k);
    // ω = u·ω_E = (u / u_min)·ω°
    let scale_exponent = ld.scaling_valuation - val(u, k.p).unwrap();
    Ok(LocalCTerm { tamagawa: ld.tamagawa, q: k.q(), scale_exponent, archimedean_value: None })
}

/// ∫|ω| over E(ℝ) (real) or 2∫|ω∧ω̄| over E(ℂ) (complex), ω = u·ω_E.
pub fn archimedean_c_term(e: &CurveModel, u: &Rational, complex: bool) -> Result<LocalCTerm> {
    let uf = crate::arith::to_f64(u).abs();
    if uf == 0.0 {
        return arg("zero differential");
    }
    let value = if complex { complex_c_term(e) * uf * uf } else { real_period(e) * uf };
    Ok(LocalCTerm { tamagawa: 1, q: 1, scale_exponent: 0, archimedean_value: Some(value) })
}
