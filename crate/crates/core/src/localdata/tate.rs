//! Tate's algorithm over ℚ_p and its unramified quadratic extension.
//!
//! Every coordinate change uses p-integral rationals: the roots taken are of
//! residues lying in 𝔽_p (square roots at p = 2, cube roots at p = 3), so only
//! the root-existence tests depend on the residue field 𝔽_q.

use num_traits::Zero;

use super::{Kodaira, LocalData, LocalField, ReductionType};
use crate::arith::ff::Fq;
use crate::arith::{inv_mod, p_pow, rat, residue_mod, val, Rational};
use crate::curve::{CurveModel, ModelMap};

struct Ctx {
    p: u64,
    pr: Rational,
    k: Fq,
}

impl Ctx {
    fn v(&self, x: &Rational) -> i64 {
        val(x, self.p).unwrap_or(i64::MAX)
    }

    fn div(&self, x: &Rational) -> bool {
        x.is_zero() || self.v(x) > 0
    }

    /// Integer in [0, p) congruent to a p-integral rational.
    fn reduce(&self, x: &Rational) -> Rational {
        rat(residue_mod(x, self.p).expect("p-integral value expected") as i64)
    }

    fn inv(&self, x: &Rational) -> Rational {
        let r = residue_mod(x, self.p).expect("p-integral value expected");
        rat(inv_mod(r, self.p).expect("unit expected") as i64)
    }

    /// A root in 𝔽_p of t^e = x̄ (e = 2 at p = 2, e = 3 at p = 3: Frobenius is bijective).
    fn root(&self, x: &Rational, e: u32) -> Rational {
        let r = residue_mod(x, self.p).unwrap();
        let ans = (0..self.p).find(|t| (t.pow(e) % self.p) == r).unwrap();
        rat(ans as i64)
    }

    fn pk(&self, k: i64) -> Rational {
        p_pow(self.p, k)
    }

    /// Whether a·T² + b·T + c has a root in 𝔽_q (all true when the form vanishes).
    fn quad_roots(&self, a: &Rational, b: &Rational, c: &Rational) -> bool {
        let coeffs = [c, b, a].map(|x| self.k.from_rational(x).expect("p-integral"));
        self.k.has_root(&self.k.poly_trim(coeffs.to_vec()))
    }

    fn cubic_roots(&self, b: &Rational, c: &Rational, d: &Rational) -> u64 {
        let coeffs = [d, c, b].map(|x| self.k.from_rational(x).expect("p-integral"));
        let mut v = coeffs.to_vec();
        v.push(self.k.one());
        self.k.count_roots(&v) as u64
    }
}

fn rst(c: &CurveModel, r: &Rational, s: &Rational, t: &Rational, map: &mut ModelMap) -> CurveModel {
    let m = ModelMap::translation(r.clone(), s.clone(), t.clone());
    *map = map.then(&m);
    c.change(&m)
}

pub(super) fn run(e: &CurveModel, field: LocalField) -> LocalData {
    let p = field.p();
    let ctx = Ctx { p, pr: rat(p as i64), k: Fq::new(p, field.f()).unwrap() };
    let pi = ctx.pr.clone();
    let pi2 = ctx.pk(2);
    let pi3 = ctx.pk(3);
    let pi4 = ctx.pk(4);
    let half = if p == 2 { Rational::zero() } else { ctx.inv(&rat(2)) };

    let mut map = ModelMap::identity();
    let mut c = e.clone();

    // make the model p-integral
    let weights = [1i64, 2, 3, 4, 6];
    let mut scale = 0i64;
    for (a, w) in c.ainvs().iter().zip(weights) {
        if !a.is_zero() {
            let v = ctx.v(a);
            if v < 0 {
                scale = scale.max((-v + w - 1) / w);
            }
        }
    }
    if scale > 0 {
        let m = ModelMap::scaling(ctx.pk(-scale));
        c = c.change(&m);
        map = map.then(&m);
    }

    let max_rounds = ctx.v(&c.discriminant()) / 12 + 2;
    let mut rounds = 0;
    loop {
        rounds += 1;
        assert!(rounds <= max_rounds, "Tate's algorithm failed to terminate on {e} at {p}");
        let (c4, vd) = (c.c4(), ctx.v(&c.discriminant()));
        if vd == 0 {
            return finish(field, &c, map, Kodaira::I(0), 0, 1, vd, Some(true));
        }

        // move the singular point to (0,0): p | a3, a4, a6
        let (b2, b4, b6) = (c.b2(), c.b4(), c.b6());
        let (a1, a2, a3, a4, a6) = split(&c);
        let (r, t) = if p == 2 {
            if ctx.div(&b2) {
                let r = ctx.root(&a4, 2);
                let t = ctx.root(&(((&r + &a2) * &r + &a4) * &r + &a6), 2);
                (r, t)
            } else {
                let temp = ctx.inv(&a1);
                let r = &temp * &a3;
                let t = &temp * (&a4 + &r * &r);
                (r, t)
            }
        } else if p == 3 {
            let r = if ctx.div(&b2) { ctx.root(&(-&b6), 3) } else { -ctx.inv(&b2) * &b4 };
            let t = &a1 * &r + &a3;
            (r, t)
        } else {
            let r = if ctx.div(&c4) {
                -ctx.inv(&rat(12)) * &b2
            } else {
                -ctx.inv(&(rat(12) * &c4)) * (c.c6() + &b2 * &c4)
            };
            let t = -&half * (&a1 * &r + &a3);
            (r, t)
        };
        let (r, t) = (ctx.reduce(&r), ctx.reduce(&t));
        c = rst(&c, &r, &Rational::zero(), &t, &mut map);
        let (a1, a2, a3, a4, a6) = split(&c);
        debug_assert!(ctx.div(&a3) && ctx.div(&a4) && ctx.div(&a6));

        if !ctx.div(&c4) {
            // multiplicative: the tangent cone y² + a1xy − a2x² decides splitness
            let split = ctx.quad_roots(&rat(1), &a1, &(-&a2));
            let cp = if split {
                vd as u64
            } else if vd % 2 == 0 {
                2
            } else {
                1
            };
            return finish(field, &c, map, Kodaira::I(vd as u32), 1, cp, vd, Some(split));
        }

        if ctx.v(&a6) < 2 {
            return finish(field, &c, map, Kodaira::II, vd as u32, 1, vd, None);
        }
        if ctx.v(&c.b8()) < 3 {
            return finish(field, &c, map, Kodaira::III, (vd - 1) as u32, 2, vd, None);
        }
        if ctx.v(&c.b6()) < 3 {
            let cp = if ctx.quad_roots(&rat(1), &(&a3 / &pi), &(-&a6 / &pi2)) { 3 } else { 1 };
            return finish(field, &c, map, Kodaira::IV, (vd - 2) as u32, cp, vd, None);
        }

        // p | a1, a2; p² | a3, a4; p³ | a6
        let (s, t) = if p == 2 {
            (ctx.root(&a2, 2), &pi * ctx.root(&(&a6 / &pi2), 2))
        } else if p == 3 {
            (a1.clone(), a3.clone())
        } else {
            (-&a1 * &half, -&a3 * &half)
        };
        c = rst(&c, &Rational::zero(), &s, &t, &mut map);
        let (_, a2, _, a4, a6) = split(&c);

        let b = &a2 / &pi;
        let cc = &a4 / &pi2;
        let d = &a6 / &pi3;
        let w = rat(27) * &d * &d - &b * &b * &cc * &cc + rat(4) * &b * &b * &b * &d - rat(18) * &b * &cc * &d
            + rat(4) * &cc * &cc * &cc;
        let x = rat(3) * &cc - &b * &b;
        let sw = if ctx.div(&w) {
            if ctx.div(&x) {
                3
            } else {
                2
            }
        } else {
            1
        };

        if sw == 1 {
            let cp = 1 + ctx.cubic_roots(&b, &cc, &d);
            return finish(field, &c, map, Kodaira::IStar(0), (vd - 4) as u32, cp, vd, None);
        }

        if sw == 2 {
            // move the double root to 0
            let r = if p == 2 {
                ctx.root(&cc, 2)
            } else if p == 3 {
                &cc * ctx.inv(&b)
            } else {
                (&b * &cc - rat(9) * &d) * ctx.inv(&(rat(2) * &x))
            };
            let r = &pi * ctx.reduce(&r);
            c = rst(&c, &r, &Rational::zero(), &Rational::zero(), &mut map);
            let (mut ix, mut iy) = (3i64, 3i64);
            let (mut mx, mut my) = (pi2.clone(), pi2.clone());
            let cp;
            loop {
                let (_, a2, a3, a4, a6) = split(&c);
                let a3t = &a3 / &my;
                let a6t = &a6 / (&mx * &my);
                if ctx.div(&(&a3t * &a3t + rat(4) * &a6t)) {
                    let t = if p == 2 { &my * ctx.root(&a6t, 2) } else { &my * ctx.reduce(&(-&a3t * &half)) };
                    c = rst(&c, &Rational::zero(), &Rational::zero(), &t, &mut map);
                    my = &my * &pi;
                    iy += 1;
                    let (_, a2, _, a4, a6) = split(&c);
                    let a2t = &a2 / &pi;
                    let a4t = &a4 / (&pi * &mx);
                    let a6t = &a6 / (&mx * &my);
                    if ctx.div(&(&a4t * &a4t - rat(4) * &a6t * &a2t)) {
                        let r = if p == 2 {
                            &mx * ctx.root(&(&a6t * ctx.inv(&a2t)), 2)
                        } else {
                            &mx * ctx.reduce(&(-&a4t * ctx.inv(&(rat(2) * &a2t))))
                        };
                        c = rst(&c, &r, &Rational::zero(), &Rational::zero(), &mut map);
                        mx = &mx * &pi;
                        ix += 1;
                    } else {
                        cp = if ctx.quad_roots(&a2t, &a4t, &a6t) { 4 } else { 2 };
                        break;
                    }
                } else {
                    let _ = (a2, a4);
                    cp = if ctx.quad_roots(&rat(1), &a3t, &(-&a6t)) { 4 } else { 2 };
                    break;
                }
            }
            let n = (ix + iy - 5) as u32;
            return finish(field, &c, map, Kodaira::IStar(n), (vd - ix - iy + 1) as u32, cp, vd, None);
        }

        // triple root: move it to 0
        let r = if p == 2 {
            b.clone()
        } else if p == 3 {
            ctx.root(&(-&d), 3)
        } else {
            -&b * ctx.inv(&rat(3))
        };
        let r = &pi * ctx.reduce(&r);
        c = rst(&c, &r, &Rational::zero(), &Rational::zero(), &mut map);
        let (_, _, a3, _, a6) = split(&c);
        let a3t = &a3 / &pi2;
        let a6t = &a6 / &pi4;
        if !ctx.div(&(&a3t * &a3t + rat(4) * &a6t)) {
            let cp = if ctx.quad_roots(&rat(1), &a3t, &(-&a6t)) { 3 } else { 1 };
            return finish(field, &c, map, Kodaira::IVStar, (vd - 6) as u32, cp, vd, None);
        }
        let t = if p == 2 { -&pi2 * ctx.root(&a6t, 2) } else { &pi2 * ctx.reduce(&(-&a3t * &half)) };
        c = rst(&c, &Rational::zero(), &Rational::zero(), &t, &mut map);
        let (_, _, _, a4, a6) = split(&c);
        if ctx.v(&a4) < 4 {
            return finish(field, &c, map, Kodaira::IIIStar, (vd - 7) as u32, 2, vd, None);
        }
        if ctx.v(&a6) < 6 {
            return finish(field, &c, map, Kodaira::IIStar, (vd - 8) as u32, 1, vd, None);
        }
        // non-minimal: divide a_i by p^i
        let m = ModelMap::scaling(pi.clone());
        c = c.change(&m);
        map = map.then(&m);
    }
}

fn split(c: &CurveModel) -> (Rational, Rational, Rational, Rational, Rational) {
    let [a1, a2, a3, a4, a6] = c.ainvs().clone();
    (a1, a2, a3, a4, a6)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    field: LocalField,
    c: &CurveModel,
    map: ModelMap,
    kodaira: Kodaira,
    conductor_exponent: u32,
    tamagawa: u64,
    vd: i64,
    split: Option<bool>,
) -> LocalData {
    let p = field.p();
    let reduction = match (conductor_exponent, split) {
        (0, _) => ReductionType::Good,
        (1, Some(true)) => ReductionType::SplitMult,
        (1, Some(false)) => ReductionType::NonsplitMult,
        _ => {
            let c4 = c.c4();
            // v(j) = 3v(c4) − v(Δ); c4 = 0 means j = 0
            let vj = if c4.is_zero() { 0 } else { 3 * val(&c4, p).unwrap() - vd };
            if vj < 0 {
                ReductionType::AdditivePotMult
            } else {
                ReductionType::AdditivePotGood
            }
        }
    };
    let scaling_valuation = val(&map.u, p).unwrap();
    debug_assert!(c.ainvs().iter().all(|a| a.is_zero() || val(a, p).unwrap() >= 0));
    LocalData {
        field,
        kodaira,
        conductor_exponent,
        tamagawa,
        min_disc_valuation: vd,
        scaling_valuation,
        reduction,
        minimal_model: c.clone(),
        to_minimal: map,
    }
}
