//! Local and global root numbers of elliptic curves.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{int, legendre_symbol, val, Rational};
use crate::curve::CurveModel;
use crate::error::{arg, unsupported, Result};
use crate::hilbert::{artin_symbol_minus_one, hilbert_symbol, LocalExtension, PlaceQ};
use crate::localdata::{tate_algorithm, LocalField, ReductionType};

/// How a local root number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Reduction-type classification.
    Independent,
    /// Defined as σ_φ·corr for a rational 2-isogeny (additive places above 2, 3).
    FormulaDefined,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Independent => "independent",
            Provenance::FormulaDefined => "formula-defined",
        })
    }
}

pub fn archimedean_root_number(_v: PlaceQ) -> i8 {
    -1
}

pub fn local_root_number(e: &CurveModel, k: LocalField) -> Result<i8> {
    local_root_number_detail(e, k).map(|(w, _)| w)
}

/// Root number at a finite place together with how it was found.
pub fn local_root_number_detail(e: &CurveModel, k: LocalField) -> Result<(i8, Provenance)> {
    let ld = tate_algorithm(e, k);
    let (p, f) = (k.p(), k.f());
    let w = match ld.reduction {
        ReductionType::Good | ReductionType::NonsplitMult => 1,
        ReductionType::SplitMult => -1,
        _ if p <= 3 => {
            return match crate::parity::two_isogeny_local_w(e, k)? {
                Some(w) => Ok((w, Provenance::FormulaDefined)),
                None => unsupported(format!(
                    "additive reduction at {p} without a rational 2-isogeny ({}: {e})",
                    ld.kodaira
                )),
            };
        }
        ReductionType::AdditivePotMult => {
            // E is the twist of a split multiplicative curve by the ramified
            // quadratic character of Q_p(√γ), γ = −c6
            let gamma = -ld.minimal_model.c6();
            if f == 1 {
                hilbert_symbol(&Rational::from_integer(int(-1)), &gamma, PlaceQ::Finite(p))?
            } else {
                legendre_symbol(&int(-1), p, f)?.pow(val(&gamma, p).unwrap().rem_euclid(2) as u32)
            }
        }
        ReductionType::AdditivePotGood => {
            let e_ord = 12 / ld.min_disc_valuation.gcd(&12);
            match e_ord {
                1 => 1,
                2 | 6 => legendre_symbol(&int(-1), p, f)?,
                3 => legendre_symbol(&int(-3), p, f)?,
                4 => legendre_symbol(&int(-2), p, f)?,
                _ => unreachable!("e = {e_ord}"),
            }
        }
    };
    Ok((w, Provenance::Independent))
}

/// Primes where the model can fail to have good reduction: those of Δ and
/// those where some aᵢ is not integral.
pub fn bad_primes(e: &CurveModel) -> Result<Vec<u64>> {
    let d = e.discriminant();
    let mut n = d.numer() * d.denom();
    for a in e.ainvs() {
        n *= a.denom();
    }
    let mut out = vec![];
    for q in crate::arith::factor::prime_divisors(&n)? {
        match q.to_u64() {
            Some(q) => out.push(q),
            None => return unsupported(format!("prime {q} does not fit in 64 bits")),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn global_root_number_q(e: &CurveModel) -> Result<i8> {
    let mut w = archimedean_root_number(PlaceQ::Real);
    for p in bad_primes(e)? {
        w *= local_root_number(e, LocalField::new(p, 1)?)?;
    }
    Ok(w)
}

/// w(E/K_p) = (−1, F/K_p) for additive E with an l-isogeny, l ≥ 5, p ≠ l, where
/// F = K_p(ker φ).
pub fn isogeny_root_number(e: &CurveModel, k: LocalField, l: u64, ext: &LocalExtension) -> Result<i8> {
    if l < 5 || !crate::arith::is_prime_u64(l) {
        return arg(format!("isogeny degree must be a prime l >= 5, got {l}"));
    }
    if k.p() == l {
        return arg(format!("residue characteristic equals the isogeny degree {l}"));
    }
    if !tate_algorithm(e, k).reduction.is_additive() {
        return arg(format!("{e} does not have additive reduction at {}", k.p()));
    }
    let ext_p = match ext {
        LocalExtension::Tame(t) => t.p(),
        LocalExtension::Quadratic { p, .. } => *p,
    };
    if ext_p != k.p() {
        return arg(format!("extension lives over Q_{ext_p}, not over Q_{}", k.p()));
    }
    if k.f() != 1 {
        return unsupported("isogeny root numbers are implemented over Q_p only");
    }
    artin_symbol_minus_one(ext)
}
