use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{push_primes, rationalize};
use crate::arith::{is_square_int, kronecker, rat_int, render_rational, val, Rational};
use crate::rootnum::bad_primes;
use crate::curve::CurveModel;
use crate::error::{arg, unsupported, Result};
use crate::localdata::{complex_c_term, local_c_term, real_period, tate_algorithm, LocalField, ReductionType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KtPlace {
    pub p: u64,
    pub splitting: Splitting,
    pub c_e: String,
    pub c_twist: String,
    pub c_over_m: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KramerTunnellReport {
    pub d: String,
    pub disc_m: String,
    pub places: Vec<KtPlace>,
    /// C_∞(E)·C_∞(E_d)·√|Δ_M| / C_∞(E/M), recognised as a rational.
    pub archimedean: String,
    pub ratio: String,
    /// rk₂ E/ℚ(√d) mod 2.
    pub parity: u8,
}

/// ord₂ of C_{E/ℚ}·C_{E_d/ℚ}·√|Δ_M| / C_{E/M} for M = ℚ(√d), using the
/// standard differential of the given model of E and of the twist model.
pub fn kramer_tunnell_parity(e: &CurveModel, d: &BigInt) -> Result<KramerTunnellReport> {
    if d.is_zero() || d.is_one() || is_square_int(d) {
        return arg(format!("d = {d} does not define a quadratic field"));
    }
    let squarefree = crate::arith::factorize(d)?.factors.iter().all(|(_, m)| *m == 1);
    if !squarefree {
        return arg(format!("d = {d} is not squarefree"));
    }
    let disc_m: BigInt = if d.mod_floor(&BigInt::from(4)) == BigInt::one() { d.clone() } else { d * 4 };
    let twist = e.quadratic_twist(&rat_int(d))?;

    let mut primes = vec![];
    primes.extend(bad_primes(e)?);
    primes.extend(bad_primes(&twist)?);
    push_primes(&disc_m, &mut primes)?;
    primes.sort_unstable();
    primes.dedup();

    let mut ratio = Rational::one();
    let mut places = vec![];
    for p in primes {
        let k1 = LocalField::new(p, 1)?;
        let c_e = local_c_term(e, &Rational::one(), k1)?.exact().unwrap();
        let c_tw = local_c_term(&twist, &Rational::one(), k1)?.exact().unwrap();
        let splitting = match kronecker(&disc_m, p) {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => Splitting::Ramified,
        };
        let c_m = match splitting {
            Splitting::Split => &c_e * &c_e,
            Splitting::Inert => local_c_term(e, &Rational::one(), LocalField::new(p, 2)?)?.exact().unwrap(),
            Splitting::Ramified => {
                let ld = tate_algorithm(e, k1);
                if ld.reduction != ReductionType::Good || ld.scaling_valuation != 0 {
                    return unsupported(format!(
                        "prime {p} ramifies in Q(sqrt({d})) but the model is not of good reduction with minimal differential there"
                    ));
                }
                Rational::one()
            }
        };
        ratio *= &c_e * &c_tw / &c_m;
        places.push(KtPlace {
            p,
            splitting,
            c_e: render_rational(&c_e),
            c_twist: render_rational(&c_tw),
            c_over_m: render_rational(&c_m),
        });
    }

    let sqrt_disc = crate::arith::to_f64(&rat_int(&disc_m)).abs().sqrt();
    let (om, om_tw) = (real_period(e), real_period(&twist));
    let arch_f = if d.is_positive() {
        om * om_tw * sqrt_disc / (om * om)
    } else {
        om * om_tw * sqrt_disc / complex_c_term(e)
    };
    let Some(arch) = rationalize(arch_f, 100_000, 1e-9) else {
        return unsupported(format!("archimedean factor {arch_f} not recognised as rational"));
    };
    ratio *= &arch;
    let ord2 = val(&ratio, 2).unwrap();
    Ok(KramerTunnellReport {
        d: d.to_string(),
        disc_m: disc_m.to_string(),
        places,
        archimedean: render_rational(&arch),
        ratio: render_rational(&ratio),
        parity: ord2.rem_euclid(2) as u8,
    })
}
