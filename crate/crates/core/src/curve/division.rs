use num_traits::Zero;

use super::CurveModel;
use crate::arith::poly::QPoly;
use crate::arith::{rat, Rational};

/// f_n(x): ψ_n for odd n, ψ_n/ψ_2 for even n, where ψ_2² = 4x³ + b2x² + 2b4x + b6.
pub fn division_polynomial(e: &CurveModel, n: usize) -> QPoly {
    let (b2, b4, b6, b8) = (e.b2(), e.b4(), e.b6(), e.b8());
    let big_f = e.two_division_polynomial();
    let f2 = big_f.mul(&big_f);
    let mut f: Vec<QPoly> = vec![
        QPoly::zero(),
        QPoly::one(),
        QPoly::one(),
        QPoly::new(vec![b8.clone(), rat(3) * &b6, rat(3) * &b4, b2.clone(), rat(3)]),
        QPoly::new(vec![
            &b4 * &b8 - &b6 * &b6,
            &b2 * &b8 - &b4 * &b6,
            rat(10) * &b8,
            rat(10) * &b6,
            rat(5) * &b4,
            b2.clone(),
            rat(2),
        ]),
    ];
    for k in 5..=n {
        let m = k / 2;
        let next = if k % 2 == 1 {
            let a = f[m + 2].mul(&f[m].pow(3));
            let b = f[m - 1].mul(&f[m + 1].pow(3));
            if m % 2 == 0 {
                f2.mul(&a).sub(&b)
            } else {
                a.sub(&f2.mul(&b))
            }
        } else {
            let a = f[m + 2].mul(&f[m - 1].pow(2));
            let b = f[m - 2].mul(&f[m + 1].pow(2));
            f[m].mul(&a.sub(&b))
        };
        f.push(next);
    }
    f.swap_remove(n)
}

/// x(2P) as numerator/denominator: (x⁴ − b4x² − 2b6x − b8) / (4x³ + b2x² + 2b4x + b6).
pub fn doubling_x(e: &CurveModel) -> (QPoly, QPoly) {
    let num = QPoly::new(vec![-e.b8(), rat(-2) * e.b6(), -e.b4(), Rational::zero(), rat(1)]);
    (num, e.two_division_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let e = CurveModel::from_i64([0, 1, 1, -7, 5]).unwrap();
        for n in 3..10usize {
            let expect = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n - 4) / 2 };
            assert_eq!(division_polynomial(&e, n).degree(), expect as isize, "n = {n}");
        }
    }
}
