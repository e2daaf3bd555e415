use serde::Serialize;

use super::{tate_algorithm, LocalField, ReductionType};
use crate::arith::ff::{Fq, FqElem};
use crate::curve::CurveModel;
use crate::error::{arg, Error, Result};

const MAX_Q: u64 = 1_000_000;

/// 1 + c1·T + c2·T² (coefficients stored from the constant term up).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactor {
    pub coeffs: Vec<i64>,
}

impl EulerFactor {
    pub fn good(a: i64, q: u64) -> EulerFactor {
        EulerFactor { coeffs: vec![1, -a, q as i64] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The trace a with F = 1 − aT + qT², or ∓1 for multiplicative factors.
    pub fn trace(&self) -> i64 {
        -self.coeffs.get(1).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = String::from("1");
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { " - " } else { " + " };
            let m = c.unsigned_abs();
            let coef = if m == 1 { String::new() } else { m.to_string() };
            let var = if i == 1 { "T".to_string() } else { format!("T^{i}") };
            s.push_str(&format!("{sign}{coef}{var}"));
        }
        f.write_str(&s)
    }
}

/// #E(𝔽_q) for the reduction of a p-integral model, singular point included.
pub fn count_points(e: &CurveModel, k: LocalField) -> Result<u64> {
    let q = k.q();
    if q > MAX_Q {
        return Err(Error::Resource(format!("point count over F_{q} exceeds the q <= {MAX_Q} guard")));
    }
    let fq = Fq::new(k.p(), k.f())?;
    let mut red = Vec::with_capacity(5);
    for a in e.ainvs() {
        match fq.from_rational(a) {
            Some(x) => red.push(x),
            None => return arg(format!("model {e} is not {}-integral", k.p())),
        }
    }
    let [a1, a2, a3, a4, a6]: [FqElem; 5] = red.try_into().unwrap();
    let n = if k.p() == 2 {
        let mut n = 1u64;
        for x in fq.elements() {
            let rhs = fq.add(fq.mul(fq.add(fq.mul(fq.add(x, a2), x), a4), x), a6);
            let lin = fq.add(fq.mul(a1, x), a3);
            for y in fq.elements() {
                if fq.add(fq.mul(y, y), fq.mul(lin, y)) == rhs {
                    n += 1;
                }
            }
        }
        n
    } else {
        // (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6
        let (b2, b4, b6) = (e.b2(), e.b4(), e.b6());
        let [b2, b4, b6] = [b2, b4, b6].map(|b| fq.from_rational(&b).unwrap());
        let two_b4 = fq.add(b4, b4);
        let four = fq.from_u64(4);
        let p = k.p();
        let mut sq = vec![false; p as usize];
        for t in 1..p {
            sq[((t * t) % p) as usize] = true;
        }
        let chi = |z: FqElem| -> i64 {
            if fq.is_zero(z) {
                0
            } else if sq[fq.norm(z) as usize] {
                1
            } else {
                -1
            }
        };
        let mut s: i64 = 0;
        for x in fq.elements() {
            let g = fq.add(fq.mul(fq.add(fq.mul(fq.add(fq.mul(four, x), b2), x), two_b4), x), b6);
            s += chi(g);
        }
        (q as i64 + 1 + s) as u64
    };
    let a = q as i64 + 1 - n as i64;
    assert!((a * a) as u64 <= 4 * q || !is_smooth(e, k), "Hasse bound violated: a = {a} over F_{q}");
    Ok(n)
}

fn is_smooth(e: &CurveModel, k: LocalField) -> bool {
    k.valuation(&e.discriminant()) == Some(0)
}

/// a_{p^n} from a_p by a_{p^{k+1}} = a_p·a_{p^k} − p·a_{p^{k−1}}.
pub fn frobenius_trace_power(ap: i64, p: u64, n: u32) -> i64 {
    let p = p as i128;
    let (mut prev, mut cur) = (2i128, ap as i128);
    if n == 0 {
        return 2;
    }
    for _ in 1..n {
        let next = ap as i128 * cur - p * prev;
        prev = cur;
        cur = next;
    }
    cur as i64
}

pub fn euler_factor(e: &CurveModel, k: LocalField) -> Result<EulerFactor> {
    let ld = tate_algorithm(e, k);
    Ok(match ld.reduction {
        ReductionType::Good => {
            let n = count_points(&ld.minimal_model, k)?;
            EulerFactor::good(k.q() as i64 + 1 - n as i64, k.q())
        }
        ReductionType::SplitMult => EulerFactor { coeffs: vec![1, -1] },
        ReductionType::NonsplitMult => EulerFactor { coeffs: vec![1, 1] },
        _ => EulerFactor { coeffs: vec![1] },
    })
}
