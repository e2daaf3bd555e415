use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{tate_algorithm, Kodaira, LocalData, LocalField};
use crate::arith::{p_pow, rat};
use crate::curve::CurveModel;
use crate::error::{arg, Result};

const SAMPLES: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub requested_depth: u32,
    /// Least d such that every sampled perturbation at every depth in
    /// d..=requested_depth preserved the local data.
    pub threshold: Option<u32>,
    pub stable_at_requested: bool,
    /// Deepest depth at which a change was seen, with the perturbed curve
    /// and its Kodaira symbol.
    pub counterexample: Option<(u32, String, Kodaira)>,
}

fn same(a: &LocalData, b: &LocalData) -> bool {
    a.kodaira == b.kodaira
        && a.conductor_exponent == b.conductor_exponent
        && a.tamagawa == b.tamagawa
        && a.min_disc_valuation == b.min_disc_valuation
        && a.reduction == b.reduction
}

/// Perturbs each a-invariant by p^d·t (t sampled from a seeded stream) for
/// d = 0..=depth and reports where Tate's algorithm output settles.
pub fn perturbation_stability(e: &CurveModel, k: LocalField, depth: u32) -> Result<StabilityReport> {
    if depth > 64 {
        return arg(format!("depth must be at most 64, got {depth}"));
    }
    let base = tate_algorithm(e, k);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ k.p() ^ ((depth as u64) << 32));
    let mut counterexample = None;
    for d in 0..=depth {
        let pd = p_pow(k.p(), d as i64);
        for _ in 0..SAMPLES {
            let mut a = e.ainvs().clone();
            for ai in a.iter_mut() {
                *ai += &pd * rat(rng.gen_range(-40..=40));
            }
            let Ok(pert) = CurveModel::from_ainvs(a) else { continue };
            let ld = tate_algorithm(&pert, k);
            if !same(&base, &ld) {
                counterexample = Some((d, pert.to_string(), ld.kodaira));
                break;
            }
        }
    }
    let threshold = match &counterexample {
        None => Some(0),
        Some((d, _, _)) if *d < depth => Some(d + 1),
        Some(_) => None,
    };
    Ok(StabilityReport {
        requested_depth: depth,
        threshold,
        stable_at_requested: threshold.is_some(),
        counterexample,
    })
}
