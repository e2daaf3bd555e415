//! Finite permutation groups, subgroup classes, Brauer relations and
//! regulator constants over ℚ.

mod group;
mod relations;
mod rep;
mod subgroups;

pub use group::{FiniteGroup, MAX_ORDER};
pub use relations::{detect_relations, BrauerRelation};
pub use rep::{regulator_constant, regulator_ratio_check, GramMatrix, RationalRepresentation, RegulatorRatio};
pub use subgroups::{permutation_character, subgroup_classes, SubgroupClass};

use crate::arith::{is_prime_u64, SquareClass};
use crate::error::{arg, Result};

/// V = a·1 ⊕ b·ε ⊕ c·ρ for S₃: the ranks over the fixed fields of S₃, C₃,
/// C₂, 1 and the class 3^{a+b+c}.
pub fn s3_parity_bookkeeping(a: u64, b: u64, c: u64) -> (SquareClass, [u64; 4]) {
    let class = if (a + b + c) % 2 == 1 { SquareClass::from_i64(3).unwrap() } else { SquareClass::one() };
    (class, [a, a + b, a + c, a + b + 2 * c])
}

/// n_triv + n_eps + n_rho mod 2 for D₂ₚ.
pub fn dihedral_parity_expression(p: u64, n_triv: u64, n_eps: u64, n_rho: u64) -> Result<u8> {
    if p == 2 || !is_prime_u64(p) {
        return arg(format!("{p} is not an odd prime"));
    }
    Ok(((n_triv + n_eps + n_rho) % 2) as u8)
}
