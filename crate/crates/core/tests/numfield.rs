use num_bigint::BigInt;
use num_traits::Zero;
use paritylab::arith::factor::primes_up_to;
use paritylab::arith::poly::QPoly;
use paritylab::curve::CurveModel;
use paritylab::localdata::{euler_factor, reduction_type, LocalField, ReductionType};
use paritylab::numfield::*;
use paritylab::rootnum::global_root_number_q;
use paritylab::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn curve(a: [i64; 5]) -> CurveModel {
    CurveModel::from_i64(a).unwrap()
}

fn semistable(e: &CurveModel) -> bool {
    let d = e.discriminant().to_integer();
    primes_dividing(&d).into_iter().all(|p| !reduction_type(e, LocalField::new(p, 1).unwrap()).is_additive())
}

fn primes_dividing(n: &BigInt) -> Vec<u64> {
    paritylab::arith::factorize(n).unwrap().primes().map(|p| p.try_into().unwrap()).collect()
}

fn squarefree(n: i64) -> bool {
    (2..=n.abs()).take_while(|k| k * k <= n.abs()).all(|k| n % (k * k) != 0)
}

fn cube_free(n: i64) -> bool {
    (2..=n.abs()).take_while(|k| k * k * k <= n.abs()).all(|k| n % (k * k * k) != 0)
}

/// Real roots by sign changes of f on a fine grid inside the Cauchy bound.
fn grid_real_roots(k: &NumberField) -> usize {
    let f = k.poly();
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_integer().to_string().parse::<f64>().unwrap()).collect();
    let bound = 1.0 + c.iter().take(c.len() - 1).map(|x| x.abs()).fold(0.0, f64::max);
    let n = 400_000;
    let mut count = 0;
    let mut prev = f.eval_f64(-bound);
    for i in 1..=n {
        let x = -bound + 2.0 * bound * i as f64 / n as f64;
        let v = f.eval_f64(x);
        if v == 0.0 || v.signum() != prev.signum() {
            count += 1;
        }
        prev = v;
    }
    count
}

#[test]
fn signatures() {
    for m in [2, 3, 5, 10, 12] {
        let k = NumberField::purecubic(m).unwrap();
        assert_eq!(k.signature(), (1, 1));
        assert_eq!(k.infinite_place_count(), 2);
    }
    assert_eq!(NumberField::biquad(-1, 17).unwrap().signature(), (0, 2));
    // ℚ(ζ₃, ∛11) = ℚ(√−3, ∛11), generated by ∛11 + ζ₃
    let k = NumberField::parse("[1,3,6,-15,-27,36,144]").unwrap();
    assert_eq!(k.degree(), 6);
    assert_eq!(k.signature(), (0, 3));
    for spec in ["quad(5)", "quad(-7)", "biquad(2,3)", "multiquad(-1,41,73)", "cyclotomic(7)", "purecubic(7)", "[1,0,-4,1]"] {
        let k = NumberField::parse(spec).unwrap();
        let (r1, r2) = k.signature();
        assert_eq!(r1 + 2 * r2, k.degree());
        assert_eq!(r1, grid_real_roots(&k), "{spec}");
    }
    assert_eq!(NumberField::multiquad(&[-1, 41, 73]).unwrap().signature(), (0, 4));
    assert_eq!(NumberField::quad(-1).unwrap().poly_discriminant(), &BigInt::from(-4));
    assert_eq!(NumberField::cyclotomic(5).unwrap().poly_discriminant(), &BigInt::from(125));
}

#[test]
fn field_construction_errors() {
    assert!(matches!(NumberField::quad(4), Err(Error::Argument(_))));
    assert!(matches!(NumberField::biquad(2, 8), Err(Error::Argument(_))));
    assert!(matches!(NumberField::purecubic(27), Err(Error::Argument(_))));
    assert!(matches!(NumberField::cyclotomic(17), Err(Error::Argument(_))));
    assert!(matches!(NumberField::parse("[1,0,-1]"), Err(Error::Argument(_))));
    assert!(matches!(NumberField::parse("[2,0,1]"), Err(Error::Argument(_))));
    assert!(matches!(NumberField::parse("quad(x)"), Err(Error::Parse(_))));
    assert!(matches!(NumberField::parse("cubic(2)"), Err(Error::Parse(_))));
    assert_eq!(NumberField::parse("purecubic(16)").unwrap().to_string(), "purecubic(2)");
}

#[test]
fn splitting_examples() {
    let k = NumberField::biquad(-1, 17).unwrap();
    assert_eq!(splitting_type(&k, 3).unwrap().places, [(1, 2), (1, 2)]);
    let two = splitting_type(&k, 2).unwrap();
    assert_eq!(two.places, [(2, 1), (2, 1)]);
    assert_eq!(two.count() % 2, 0);
    assert_eq!(splitting_type(&k, 17).unwrap().places, [(2, 1), (2, 1)]);
    let k = NumberField::purecubic(2).unwrap();
    assert_eq!(splitting_type(&k, 19).unwrap().places, [(1, 3)]);
    assert_eq!(splitting_type(&k, 2).unwrap().places, [(3, 1)]);
    assert_eq!(splitting_type(&k, 3).unwrap().places, [(3, 1)]);
    assert_eq!(splitting_type(&NumberField::purecubic(10).unwrap(), 3).unwrap().places, [(1, 1), (2, 1)]);
    assert_eq!(splitting_type(&NumberField::cyclotomic(8).unwrap(), 2).unwrap().places, [(4, 1)]);
    assert!(splitting_type(&k, 4).is_err());
    let inf = infinite_places(&NumberField::purecubic(2).unwrap());
    assert_eq!(inf.places, [(1, 1), (1, 2)]);
}

#[test]
fn even_place_counts_over_q_i_sqrt17() {
    let k = NumberField::biquad(-1, 17).unwrap();
    let generic = NumberField::new(k.coefficients().to_vec()).unwrap();
    let disc = k.poly_discriminant().clone();
    for p in primes_up_to(1000) {
        let d = splitting_type(&k, p).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.count() % 2, 0, "p = {p}: {:?}", d.places);
        if !(&disc % BigInt::from(p)).is_zero() {
            assert_eq!(splitting_type(&generic, p).unwrap(), d, "p = {p}");
        }
    }
}

#[test]
fn multiquadratic_against_dedekind() {
    for ds in [vec![-1, 41, 73], vec![2, 3], vec![-3, 5, 7], vec![-2], vec![13]] {
        let k = NumberField::multiquad(&ds).unwrap();
        let generic = NumberField::new(k.coefficients().to_vec()).unwrap();
        let mut agree = 0;
        for p in primes_up_to(300) {
            let d = splitting_type(&k, p).unwrap();
            assert_eq!(d.degree() as usize, k.degree());
            // Galois: all places alike
            assert!(d.places.iter().all(|x| *x == d.places[0]));
            if let Ok(g) = splitting_type(&generic, p) {
                assert_eq!(g, d, "{ds:?} p = {p}");
                agree += 1;
            }
        }
        assert!(agree > 40);
    }
}

#[test]
fn pure_cubic_table_against_root_counts() {
    for m in (2..60).filter(|&m| cube_free(m)) {
        let k = NumberField::purecubic(m).unwrap();
        let generic = NumberField::new(k.coefficients().to_vec()).unwrap();
        for p in primes_up_to(200) {
            let d = splitting_type(&k, p).unwrap();
            assert_eq!(d.degree(), 3);
            if p != 3 && m % p as i64 != 0 {
                let roots = (0..p).filter(|&x| (x * x % p * x % p + p - (m as u64 % p)) % p == 0).count();
                let expect = match roots {
                    3 => vec![(1, 1); 3],
                    1 => vec![(1, 1), (1, 2)],
                    _ => vec![(1, 3)],
                };
                assert_eq!(d.places, expect, "m = {m}, p = {p}");
            }
            if let Ok(g) = splitting_type(&generic, p) {
                assert_eq!(g, d, "m = {m}, p = {p}");
            }
        }
    }
}

fn multiplicative_order(p: u64, n: u64) -> u64 {
    let mut k = 1;
    let mut x = p % n;
    while x != 1 {
        x = x * p % n;
        k += 1;
    }
    k
}

#[test]
fn cyclotomic_splitting() {
    for n in 3..=16u64 {
        let k = NumberField::cyclotomic(n as u32).unwrap();
        for p in primes_up_to(100) {
            let d = splitting_type(&k, p).unwrap();
            assert_eq!(d.degree() as usize, k.degree());
            if n % p != 0 {
                let f = multiplicative_order(p, n) as u32;
                assert!(d.places.iter().all(|&(e, ff)| e == 1 && ff == f), "n = {n}, p = {p}");
                assert_eq!(d.count() * f as usize, k.degree());
            }
        }
    }
}

#[test]
fn nineteen_a3_over_pure_cubics() {
    let e = curve([0, 1, 1, 1, 0]);
    assert_eq!(global_root_number_q(&e).unwrap(), 1);
    let mut n = 0;
    for m in (2..=50).filter(|&m| cube_free(m)) {
        let k = NumberField::purecubic(m).unwrap();
        assert_eq!(semistable_global_root_number(&e, &k).unwrap(), -1, "m = {m}");
        n += 1;
    }
    assert!(n > 40);
}

fn semistable_fixtures() -> Vec<CurveModel> {
    let named = [
        [0, -1, 1, -10, -20],
        [1, 0, 1, 4, -6],
        [1, 1, 1, -10, -10],
        [0, 0, 1, -1, 0],
        [0, 1, 1, 1, 0],
        [0, 1, 1, -2, 0],
        [0, 0, 1, -7, 6],
        [0, -1, 1, 0, 0],
    ];
    let mut out: Vec<CurveModel> = named.iter().map(|&a| curve(a)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    while out.len() < 24 {
        let a = [1, rng.gen_range(-2..=2), 1, rng.gen_range(-30..=30), rng.gen_range(-30..=30)];
        if let Ok(e) = CurveModel::from_i64(a) {
            if semistable(&e) {
                out.push(e);
            }
        }
    }
    out
}

#[test]
fn semistable_curves_over_q_i_sqrt17() {
    let k = NumberField::biquad(-1, 17).unwrap();
    let fixtures = semistable_fixtures();
    for e in &fixtures {
        assert!(semistable(e), "{e}");
        assert_eq!(semistable_global_root_number(e, &k).unwrap(), 1, "{e}");
    }
    assert!(fixtures.len() >= 20);
}

#[test]
fn semistable_root_number_over_q_matches_rootnum() {
    let q = NumberField::rationals();
    for e in semistable_fixtures() {
        assert_eq!(semistable_global_root_number(&e, &q).unwrap(), global_root_number_q(&e).unwrap(), "{e}");
    }
    assert!(semistable_global_root_number(&curve([0, 0, 0, -1, 0]), &q).is_err());
}

#[test]
fn split_at_two_over_q_zeta8() {
    let k = NumberField::cyclotomic(8).unwrap();
    let cands = [
        [1, 0, 1, 4, -6],
        [1, 0, 1, -5, -8],
        [1, -1, 1, -3, 3],
        [1, 0, 1, 1, 2],
        [1, 0, 0, -3, 1],
        [1, 1, 1, 0, 1],
        [1, 0, 1, 0, 1],
        [1, 1, 0, -1, 0],
    ];
    let (mut split, mut nonsplit) = (0, 0);
    for a in cands {
        let Ok(e) = CurveModel::from_i64(a) else { continue };
        if !semistable(&e) {
            continue;
        }
        let w = semistable_global_root_number(&e, &k).unwrap();
        match reduction_type(&e, LocalField::new(2, 1).unwrap()) {
            ReductionType::SplitMult => {
                assert_eq!(w, -1, "{e}");
                split += 1;
            }
            ReductionType::NonsplitMult => {
                assert_eq!(w, 1, "{e}");
                nonsplit += 1;
            }
            _ => {}
        }
    }
    assert!(split > 0 && nonsplit > 0, "{split} {nonsplit}");
}

#[test]
fn goldfeld_flip() {
    let e = curve([0, -1, 1, -10, -20]);
    // 2 and 11 split in ℚ(√−7): −7 ≡ 1 mod 8, (−7/11) = 1
    let r = goldfeld_flip_check(&e, -7, 250).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert!(r.pairs.len() > 50, "{}", r.pairs.len());
    assert!(r.pairs.iter().any(|&(d, _, _)| d == 1));
    assert!((r.plus_density - 0.5).abs() < 1e-12);
    // 14a1 has a rational 2-torsion point, so even d are supported too
    let e14 = curve([1, 0, 1, 4, -6]);
    let r = goldfeld_flip_check(&e14, -31, 60).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert!(r.pairs.len() > 50, "{}", r.pairs.len());
    assert!(r.pairs.iter().any(|&(d, _, _)| d % 2 == 0));
    match goldfeld_flip_check(&e, -3, 10) {
        Err(Error::Argument(m)) => assert!(m.contains('2'), "{m}"),
        x => panic!("{x:?}"),
    }
    assert!(goldfeld_flip_check(&e, 5, 10).is_err());
    assert!(goldfeld_flip_check(&e, -28, 10).is_err());
}

#[test]
fn fourth_powers_for_480a1() {
    let e = curve([0, -1, 0, -6, 0]);
    let k = NumberField::multiquad(&[-1, 41, 73]).unwrap();
    let r = fourth_power_check(&e, &k, 100).unwrap();
    assert!(r.all_fourth_powers);
    assert_eq!(r.skipped.iter().map(|s| s.0).collect::<Vec<_>>(), [2]);
    assert_eq!(r.rows.len(), 24);
    let three = r.rows.iter().find(|x| x.p == 3).unwrap();
    assert_eq!(three.places, [(1, 2); 4]);
    assert_eq!(three.factor, QPoly::from_i64(&[1, 0, -1]).pow(4));
    assert_eq!(three.fourth_root, Some(QPoly::from_i64(&[1, 0, -1])));
    for row in &r.rows {
        assert!(row.places.len() % 4 == 0, "p = {}", row.p);
    }
    // control over ℚ
    let q = fourth_power_check(&e, &NumberField::rationals(), 100).unwrap();
    assert!(!q.all_fourth_powers);
    assert!(q.rows.iter().filter(|x| x.fourth_root.is_none()).count() > 20);
}

#[test]
fn inert_factor_against_point_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 40 {
        let a = [0, rng.gen_range(-3..=3), 0, rng.gen_range(-20..=20), rng.gen_range(-20..=20)];
        let Ok(e) = CurveModel::from_i64(a) else { continue };
        let d = *[-1i64, 2, -2, 3, 5, -7].iter().nth(rng.gen_range(0..6)).unwrap();
        let m = NumberField::quad(d).unwrap();
        for p in [3u64, 5, 7, 11, 13] {
            let ld = reduction_type(&e, LocalField::new(p, 1).unwrap());
            if ld != ReductionType::Good || d % p as i64 == 0 {
                continue;
            }
            let over_m = euler_factor_over_k(&e, &m, p).unwrap();
            let places = splitting_type(&m, p).unwrap().places;
            if places == [(1, 2)] {
                let direct = euler_factor(&e, LocalField::new(p, 2).unwrap()).unwrap();
                let ap = euler_factor(&e, LocalField::new(p, 1).unwrap()).unwrap().trace();
                let expect = QPoly::from_i64(&[1, 0, -(ap * ap - 2 * p as i64), 0, (p * p) as i64]);
                assert_eq!(over_m, expect);
                assert_eq!(direct.coeffs, [1, -(ap * ap - 2 * p as i64), (p * p) as i64]);
                checked += 1;
            }
        }
    }
}

fn to_poly(c: &[i64]) -> QPoly {
    QPoly::from_i64(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// L(E/M) = L(E/ℚ)·L(E_d/ℚ) locally at good p ∤ disc(M).
    #[test]
    fn artin_formalism_quadratic(a2 in -3i64..=3, a4 in -25i64..=25, a6 in -25i64..=25, d in -30i64..=30) {
        prop_assume!(d != 0 && d != 1 && squarefree(d));
        let Ok(e) = CurveModel::from_i64([0, a2, 0, a4, a6]) else { return Ok(()) };
        let ed = e.quadratic_twist(&paritylab::arith::rat(d)).unwrap();
        let m = NumberField::quad(d).unwrap();
        let mut n = 0;
        for p in primes_up_to(40).into_iter().filter(|&p| p > 2 && d % p as i64 != 0) {
            let k = LocalField::new(p, 1).unwrap();
            if reduction_type(&e, k) != ReductionType::Good {
                continue;
            }
            let fe = euler_factor(&e, k).unwrap();
            let fd = euler_factor(&ed, k).unwrap();
            let prod = to_poly(&fe.coeffs).mul(&to_poly(&fd.coeffs));
            prop_assert_eq!(euler_factor_over_k(&e, &m, p).unwrap(), prod);
            n += 1;
        }
        prop_assert!(n > 0);
    }

    #[test]
    fn place_degrees_sum_to_field_degree(d1 in -40i64..40, d2 in -40i64..40, p in prop::sample::select(primes_up_to(120))) {
        let Ok(k) = NumberField::biquad(d1, d2) else { return Ok(()) };
        let s = splitting_type(&k, p).unwrap();
        prop_assert_eq!(s.degree(), 4);
    }
}

#[test]
fn root_number_over_multiquadratic_fields() {
    // semistable: the place count and the twist product agree
    for e in semistable_fixtures().iter().take(8) {
        for k in [NumberField::quad(-1).unwrap(), NumberField::biquad(-1, 17).unwrap(), NumberField::quad(5).unwrap()] {
            let by_places = semistable_global_root_number(e, &k).unwrap();
            let mut by_twists = global_root_number_q(e).unwrap();
            let mut twists_ok = true;
            for d in k.quadratic_subfields().unwrap() {
                match e.quadratic_twist(&paritylab::arith::rat(d)).and_then(|t| global_root_number_q(&t)) {
                    Ok(w) => by_twists *= w,
                    Err(_) => twists_ok = false,
                }
            }
            assert_eq!(global_root_number_over(e, &k).unwrap(), by_places);
            if twists_ok {
                assert_eq!(by_places, by_twists, "{e} over {k}");
            }
        }
    }
    let e480 = curve([0, -1, 0, -6, 0]);
    assert_eq!(global_root_number_over(&e480, &NumberField::multiquad(&[-1, 41, 73]).unwrap()).unwrap(), 1);
    assert_eq!(global_root_number_over(&e480, &NumberField::rationals()).unwrap(), global_root_number_q(&e480).unwrap());
    assert!(matches!(
        global_root_number_over(&e480, &NumberField::purecubic(2).unwrap()),
        Err(Error::Unsupported(_))
    ));
}
