use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::group::FiniteGroup;
use super::subgroups::{permutation_character, subgroup_classes, SubgroupClass};
use crate::error::{Error, Result};

/// Σ nᵢ·Hᵢ over subgroup classes with Σ nᵢ·ℚ[G/Hᵢ] = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerRelation {
    pub terms: Vec<(SubgroupClass, i64)>,
}

impl BrauerRelation {
    pub fn coefficient(&self, name: &str) -> i64 {
        self.terms.iter().find(|(h, _)| h.name == name).map_or(0, |t| t.1)
    }

    /// Character of Σ nᵢ·ℚ[G/Hᵢ] on each element.
    pub fn induced_character(&self, g: &FiniteGroup) -> Vec<i64> {
        (0..g.order())
            .map(|x| self.terms.iter().map(|(h, n)| n * permutation_character(g, h, x)).sum())
            .collect()
    }

    pub fn is_relation(&self, g: &FiniteGroup) -> bool {
        self.induced_character(g).iter().all(|&c| c == 0)
    }
}

impl fmt::Display for BrauerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (h, n) in &self.terms {
            if *n == 0 {
                continue;
            }
            let name = if h.order == 1 { "{1}" } else { h.name.as_str() };
            let sign = if *n < 0 { "-" } else { "+" };
            let m = n.unsigned_abs();
            let coef = if m == 1 { String::new() } else { m.to_string() };
            if first {
                let lead = if *n < 0 { "-" } else { "" };
                write!(f, "{lead}{coef}{name}")?;
                first = false;
            } else {
                write!(f, " {sign} {coef}{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Row-style Hermite normal form: positive pivots, entries above a pivot
/// reduced into [0, pivot). Zero rows dropped.
pub(crate) fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
            else {
                break;
            };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Basis of the lattice of Brauer relations: the integer left kernel of the
/// permutation-character matrix, in Hermite form.
pub fn detect_relations(g: &FiniteGroup) -> Result<Vec<BrauerRelation>> {
    let classes = subgroup_classes(g);
    let ccl = g.conjugacy_classes();
    let m = classes.len();
    let k = ccl.len();
    let rows: Vec<Vec<BigInt>> = classes
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut row: Vec<BigInt> = ccl.iter().map(|c| BigInt::from(permutation_character(g, h, c[0]))).collect();
            row.extend((0..m).map(|j| BigInt::from((i == j) as i64)));
            row
        })
        .collect();
    let h = hermite_rows(rows);
    let kernel: Vec<Vec<BigInt>> =
        h.into_iter().filter(|r| r[..k].iter().all(Zero::is_zero)).map(|r| r[k..].to_vec()).collect();
    let kernel = hermite_rows(kernel);
    let mut out = vec![];
    for v in kernel {
        let terms = classes
            .iter()
            .zip(&v)
            .filter(|(_, n)| !n.is_zero())
            .map(|(h, n)| Ok((h.clone(), n.to_i64().ok_or_else(|| Error::Resource("relation coefficient overflow".into()))?)))
            .collect::<Result<Vec<_>>>()?;
        let rel = BrauerRelation { terms };
        assert!(rel.is_relation(g), "kernel vector is not a relation: {rel}");
        out.push(rel);
    }
    Ok(out)
}
