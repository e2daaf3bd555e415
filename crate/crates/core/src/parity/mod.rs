//! Isogeny parity terms: σ_φ at each place, the Hilbert-symbol correction,
//! place-wise and global comparisons with root numbers, Cassels' C-ratio and
//! the Kramer–Tunnell expression.

mod cassels;
mod kt;
mod podd;

pub use cassels::{cassels_ratio, rationalize, CasselsReport};
pub use kt::{kramer_tunnell_parity, KramerTunnellReport, KtPlace, Splitting};
pub use podd::{check_conjecture_6_2, kernel_is_real, sigma_p_odd, Conj62Report};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::factor::prime_divisors;
use crate::arith::{rat, Rational};
use crate::curve::{two_isogeny_pair, two_torsion_x, CurveModel, TwoIsogenyData};
use crate::error::{arg, unsupported, Result};
use crate::hilbert::{hilbert_symbol, PlaceQ};
use crate::localdata::{local_c_term, LocalField};
use crate::rootnum::{local_root_number_detail, Provenance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Complex,
    Finite(LocalField),
}

impl Place {
    pub fn finite(p: u64) -> Result<Place> {
        Ok(Place::Finite(LocalField::new(p, 1)?))
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Complex => f.write_str("C"),
            Place::Finite(k) if k.f() == 1 => write!(f, "{}", k.p()),
            Place::Finite(k) => write!(f, "{}(f={})", k.p(), k.f()),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// (x, y)_v for rationals x, y. Over a quadratic extension K of ℚ_p the
/// symbol of two elements of ℚ_p is (x, N(y))_{ℚ_p} = (x, y²) = 1.
pub fn hilbert_at(x: &Rational, y: &Rational, v: Place) -> Result<i8> {
    match v {
        Place::Real => hilbert_symbol(x, y, PlaceQ::Real),
        Place::Complex => Ok(1),
        Place::Finite(k) if k.f() == 1 => hilbert_symbol(x, y, PlaceQ::Finite(k.p())),
        Place::Finite(_) => {
            if x.is_zero() || y.is_zero() {
                return arg("Hilbert symbol of zero");
            }
            Ok(1)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaTerm {
    pub place: Place,
    pub value: i8,
    /// |coker φ_v| when it is determined directly (archimedean places).
    pub coker_order: Option<u64>,
}

/// |ker φ_v| for the 2-isogeny: both (0,0) and O are always rational.
pub const TWO_ISOGENY_KERNEL_ORDER: u64 = 2;

fn from_coker(place: Place, coker: u64) -> SigmaTerm {
    // σ = (−1)^{ord₂ |coker|/|ker|} with |ker| = 2
    let ord = coker.trailing_zeros() as i64 - 1;
    SigmaTerm { place, value: if ord % 2 == 0 { 1 } else { -1 }, coker_order: Some(coker) }
}

pub fn sigma_real(iso: &TwoIsogenyData) -> Result<SigmaTerm> {
    let (a, b, d) = (&iso.a, &iso.b, &iso.delta);
    if b.is_zero() || d.is_zero() {
        return arg("degenerate isogeny: b = 0 or δ = 0");
    }
    let surjective = b.is_negative() || (d.is_positive() && a.is_positive());
    Ok(from_coker(Place::Real, if surjective { 1 } else { 2 }))
}

pub fn sigma_complex() -> SigmaTerm {
    from_coker(Place::Complex, 1)
}

/// ord₂ C(E, ω)/C(E′, ω′) with ω, ω′ the standard differentials dx/2y of the
/// two models, so that φ*ω′ = ω.
pub fn sigma_finite(iso: &TwoIsogenyData, k: LocalField) -> Result<SigmaTerm> {
    let c = local_c_term(&iso.source, &rat(1), k)?;
    let cp = local_c_term(&iso.target, &rat(1), k)?;
    let ord2 = |t: u64| t.trailing_zeros() as i64;
    let mut ord = ord2(c.tamagawa) - ord2(cp.tamagawa);
    if k.p() == 2 {
        ord += k.f() as i64 * (c.scale_exponent - cp.scale_exponent);
    }
    Ok(SigmaTerm { place: Place::Finite(k), value: if ord % 2 == 0 { 1 } else { -1 }, coker_order: None })
}

pub fn sigma_at(iso: &TwoIsogenyData, v: Place) -> Result<SigmaTerm> {
    match v {
        Place::Real => sigma_real(iso),
        Place::Complex => Ok(sigma_complex()),
        Place::Finite(k) => sigma_finite(iso, k),
    }
}

/// (a, −b)_v·(−2a, δ)_v, or (−2, −b)_v when a = 0.
pub fn correction_term(iso: &TwoIsogenyData, v: Place) -> Result<i8> {
    let (a, b, d) = (&iso.a, &iso.b, &iso.delta);
    if a.is_zero() {
        hilbert_at(&rat(-2), &-b, v)
    } else {
        Ok(hilbert_at(a, &-b, v)? * hilbert_at(&(rat(-2) * a), d, v)?)
    }
}

/// σ_φ·corr at a finite place for the first rational 2-torsion point of E.
pub fn two_isogeny_local_w(e: &CurveModel, k: LocalField) -> Result<Option<i8>> {
    let xs = two_torsion_x(e);
    let Some(x0) = xs.first() else { return Ok(None) };
    let iso = two_isogeny_pair(e, x0)?;
    let v = Place::Finite(k);
    Ok(Some(sigma_finite(&iso, k)?.value * correction_term(&iso, v)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceReport {
    pub place: Place,
    pub w: i8,
    pub sigma: i8,
    pub corr: i8,
    pub equal: bool,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conj55Report {
    pub a: String,
    pub b: String,
    pub places: Vec<PlaceReport>,
    pub product_w: i8,
    pub product_sigma_corr: i8,
    pub product_corr: i8,
    pub global_equal: bool,
    /// (−1)^{rk₂} = ∏ σ_v.
    pub rank_parity_sign: i8,
    pub formula_defined_places: usize,
}

fn push_primes(n: &BigInt, out: &mut Vec<u64>) -> Result<()> {
    if n.is_zero() {
        return Ok(());
    }
    for p in prime_divisors(n)? {
        match p.to_u64() {
            Some(p) => out.push(p),
            None => return unsupported(format!("prime {p} does not fit in 64 bits")),
        }
    }
    Ok(())
}

/// Places where w, σ or corr can differ from +1: ∞ and primes of 2abδ.
pub fn relevant_places(iso: &TwoIsogenyData) -> Result<Vec<Place>> {
    let mut ps = vec![2u64];
    for x in [&iso.a, &iso.b, &iso.delta] {
        push_primes(x.numer(), &mut ps)?;
        push_primes(x.denom(), &mut ps)?;
    }
    ps.sort_unstable();
    ps.dedup();
    let mut out = vec![Place::Real];
    for p in ps {
        out.push(Place::finite(p)?);
    }
    Ok(out)
}

/// Place-by-place comparison of w(E/ℚ_v) with σ_φ·corr for the 2-isogeny
/// attached to the first rational 2-torsion point.
pub fn check_conjecture_5_5(e: &CurveModel) -> Result<Conj55Report> {
    let xs = two_torsion_x(e);
    let Some(x0) = xs.first() else {
        return arg(format!("{e} has no rational 2-torsion point"));
    };
    let iso = two_isogeny_pair(e, x0)?;
    check_conjecture_5_5_iso(&iso)
}

pub fn check_conjecture_5_5_iso(iso: &TwoIsogenyData) -> Result<Conj55Report> {
    let mut places = vec![];
    for v in relevant_places(iso)? {
        let sigma = sigma_at(iso, v)?.value;
        let corr = correction_term(iso, v)?;
        let (w, provenance) = match v {
            Place::Finite(k) => local_root_number_detail(&iso.source, k)?,
            _ => (-1, Provenance::Independent),
        };
        places.push(PlaceReport { place: v, w, sigma, corr, equal: w == sigma * corr, provenance });
    }
    let prod = |f: &dyn Fn(&PlaceReport) -> i8| places.iter().map(f).product::<i8>();
    let product_w = prod(&|r| r.w);
    let product_sigma_corr = prod(&|r| r.sigma * r.corr);
    let product_corr = prod(&|r| r.corr);
    let rank_parity_sign = prod(&|r| r.sigma);
    let formula_defined_places = places.iter().filter(|r| r.provenance == Provenance::FormulaDefined).count();
    Ok(Conj55Report {
        a: crate::arith::render_rational(&iso.a),
        b: crate::arith::render_rational(&iso.b),
        global_equal: product_w == product_sigma_corr,
        places,
        product_w,
        product_sigma_corr,
        product_corr,
        rank_parity_sign,
        formula_defined_places,
    })
}
