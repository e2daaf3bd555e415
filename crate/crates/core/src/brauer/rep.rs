use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::group::FiniteGroup;
use super::relations::BrauerRelation;
use super::subgroups::SubgroupClass;
use crate::arith::matrix::QMatrix;
use crate::arith::{frac, rat, square_class, Rational, SquareClass};
use crate::error::{arg, Result};

/// A ℚG-module given by one matrix per group element (acting on columns).
#[derive(Clone, Debug)]
pub struct RationalRepresentation {
    dim: usize,
    mats: Vec<QMatrix>,
}

impl RationalRepresentation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &QMatrix {
        &self.mats[g]
    }

    /// Checks ρ(e) = 1 and ρ(ab) = ρ(a)ρ(b) on every pair.
    pub fn from_matrices(g: &FiniteGroup, mats: Vec<QMatrix>) -> Result<RationalRepresentation> {
        if mats.len() != g.order() {
            return arg(format!("need {} matrices, got {}", g.order(), mats.len()));
        }
        let dim = mats[0].rows();
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return arg("matrices must be square of one size");
        }
        if mats[0] != QMatrix::identity(dim) {
            return arg("identity does not act trivially");
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if mats[a].mul(&mats[b]) != mats[g.mul(a, b)] {
                    return arg(format!("not a homomorphism at ({}, {})", g.label(a), g.label(b)));
                }
            }
        }
        Ok(RationalRepresentation { dim, mats })
    }

    /// Extends images of `gens` (element indices) to all of G.
    pub fn from_generator_images(g: &FiniteGroup, gens: &[usize], images: &[QMatrix]) -> Result<RationalRepresentation> {
        if gens.len() != images.len() || images.is_empty() {
            return arg("one image per generator required");
        }
        let dim = images[0].rows();
        let mut mats: Vec<Option<QMatrix>> = vec![None; g.order()];
        mats[0] = Some(QMatrix::identity(dim));
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for (&s, m) in gens.iter().zip(images) {
                let y = g.mul(s, x);
                if mats[y].is_none() {
                    mats[y] = Some(m.mul(mats[x].as_ref().unwrap()));
                    queue.push(y);
                }
            }
        }
        let Some(mats) = mats.into_iter().collect::<Option<Vec<_>>>() else {
            return arg("generators do not generate the group");
        };
        RationalRepresentation::from_matrices(g, mats)
    }

    pub fn trivial(g: &FiniteGroup) -> RationalRepresentation {
        RationalRepresentation { dim: 1, mats: vec![QMatrix::identity(1); g.order()] }
    }

    /// One-dimensional character with kernel H (index 2).
    pub fn index_two(g: &FiniteGroup, h: &SubgroupClass) -> Result<RationalRepresentation> {
        if h.order * 2 != g.order() {
            return arg(format!("{} does not have index 2", h.name));
        }
        let mats = (0..g.order()).map(|x| QMatrix::from_i64(&[vec![if h.contains(x) { 1 } else { -1 }]])).collect();
        Ok(RationalRepresentation { dim: 1, mats })
    }

    /// The sign of the permutation action on points.
    pub fn sign(g: &FiniteGroup) -> RationalRepresentation {
        let mats = (0..g.order()).map(|x| QMatrix::from_i64(&[vec![g.perm_sign(x) as i64]])).collect();
        RationalRepresentation { dim: 1, mats }
    }

    /// ℚ[points] with g·eᵢ = e_{g(i)}.
    pub fn permutation(g: &FiniteGroup) -> RationalRepresentation {
        let n = g.degree();
        let mats = (0..g.order())
            .map(|x| {
                let mut m = QMatrix::zeros(n, n);
                for (i, &j) in g.perm(x).iter().enumerate() {
                    m.set(j, i, Rational::one());
                }
                m
            })
            .collect();
        RationalRepresentation { dim: n, mats }
    }

    /// The sum-zero part of ℚ[points], basis eᵢ − eₙ.
    pub fn sum_zero(g: &FiniteGroup) -> RationalRepresentation {
        let n = g.degree();
        let d = n.saturating_sub(1);
        let mats = (0..g.order())
            .map(|x| {
                let p = g.perm(x);
                let mut m = QMatrix::zeros(d, d);
                for i in 0..d {
                    // eᵢ − eₙ ↦ e_{p(i)} − e_{p(n)} = f_{p(i)} − f_{p(n)}, f_n = 0
                    for (pt, s) in [(p[i], 1), (p[n - 1], -1)] {
                        if pt != n - 1 {
                            let v = m.get(pt, i) + rat(s);
                            m.set(pt, i, v);
                        }
                    }
                }
                m
            })
            .collect();
        RationalRepresentation { dim: d, mats }
    }

    /// ℚ[G/H] with basis the left cosets xH.
    pub fn coset(g: &FiniteGroup, h: &SubgroupClass) -> RationalRepresentation {
        let mut cosets: Vec<u64> = vec![];
        let mut which = vec![0usize; g.order()];
        for x in 0..g.order() {
            let c = h.elements().into_iter().fold(0u64, |m, e| m | 1 << g.mul(x, e));
            let idx = match cosets.iter().position(|&d| d == c) {
                Some(i) => i,
                None => {
                    cosets.push(c);
                    cosets.len() - 1
                }
            };
            which[x] = idx;
        }
        let reps: Vec<usize> = cosets.iter().map(|c| c.trailing_zeros() as usize).collect();
        let n = cosets.len();
        let mats = (0..g.order())
            .map(|x| {
                let mut m = QMatrix::zeros(n, n);
                for (i, &r) in reps.iter().enumerate() {
                    m.set(which[g.mul(x, r)], i, Rational::one());
                }
                m
            })
            .collect();
        RationalRepresentation { dim: n, mats }
    }

    pub fn direct_sum(&self, o: &RationalRepresentation) -> RationalRepresentation {
        let d = self.dim + o.dim;
        let mats = self
            .mats
            .iter()
            .zip(&o.mats)
            .map(|(a, b)| {
                let mut m = QMatrix::zeros(d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..o.dim {
                    for j in 0..o.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        RationalRepresentation { dim: d, mats }
    }

    pub fn character(&self) -> Vec<Rational> {
        self.mats.iter().map(|m| (0..self.dim).map(|i| m.get(i, i).clone()).sum()).collect()
    }

    /// Basis (as columns) of the H-fixed vectors: image of (1/|H|)Σ ρ(h).
    pub fn fixed_space(&self, h: &SubgroupClass) -> QMatrix {
        let mut p = QMatrix::zeros(self.dim, self.dim);
        for e in h.elements() {
            p = p.add(&self.mats[e]);
        }
        p.scale(&frac(1, h.order as i64)).column_space()
    }
}

/// A symmetric bilinear form on ℚⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(QMatrix);

impl GramMatrix {
    pub fn new(m: QMatrix) -> Result<GramMatrix> {
        if !m.is_symmetric() {
            return arg("Gram matrix must be symmetric");
        }
        Ok(GramMatrix(m))
    }

    pub fn standard(n: usize) -> GramMatrix {
        GramMatrix(QMatrix::identity(n))
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn det(&self) -> Rational {
        self.0.det()
    }

    pub fn is_invariant(&self, v: &RationalRepresentation) -> bool {
        v.mats.iter().all(|r| r.transpose().mul(&self.0).mul(r) == self.0)
    }

    /// Σ_g ρ(g)ᵀ A ρ(g) for a random positive definite integer A.
    pub fn random_invariant<R: Rng>(v: &RationalRepresentation, rng: &mut R) -> GramMatrix {
        let n = v.dim;
        let b = QMatrix::from_rows((0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect()).collect());
        let a = b.transpose().mul(&b).add(&QMatrix::identity(n));
        let mut s = QMatrix::zeros(n, n);
        for r in &v.mats {
            s = s.add(&r.transpose().mul(&a).mul(r));
        }
        GramMatrix(s)
    }

    /// Restriction to the span of the columns of `basis`.
    pub fn restrict(&self, basis: &QMatrix) -> QMatrix {
        basis.transpose().mul(&self.0).mul(basis)
    }
}

/// C_Θ(V) = ∏ det((1/|H|)⟨,⟩ on V^H)^{n_H}, as a square class.
pub fn regulator_constant(
    theta: &BrauerRelation,
    v: &RationalRepresentation,
    pairing: &GramMatrix,
) -> Result<SquareClass> {
    if pairing.0.rows() != v.dim {
        return arg("pairing and representation have different dimensions");
    }
    if !pairing.is_invariant(v) {
        return arg("pairing is not G-invariant");
    }
    if pairing.det().is_zero() {
        return arg("pairing is degenerate");
    }
    let mut total = Rational::one();
    for (h, n) in &theta.terms {
        let b = v.fixed_space(h);
        let d = pairing.restrict(&b).scale(&frac(1, h.order as i64)).det();
        if d.is_zero() {
            return arg(format!("pairing is degenerate on the fixed space of {}", h.name));
        }
        let f = if *n < 0 { d.recip() } else { d };
        for _ in 0..n.unsigned_abs() {
            total *= &f;
        }
    }
    square_class(&total)
}

/// Outcome of the regulator-ratio identity for an isogeny of degree d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegulatorRatio {
    pub det: Rational,
    pub det_image: Rational,
    pub class: SquareClass,
}

/// Builds Λ′ ⊇ φ(Λ) of the given index (first basis vector divided by the
/// index), checks dⁿ·det = det′·index² and returns the class of det′/det.
pub fn regulator_ratio_check(d: i64, gram: &GramMatrix, index: u64) -> Result<RegulatorRatio> {
    if d < 1 || index < 1 {
        return arg("degree and index must be positive");
    }
    let n = gram.0.rows();
    let det = gram.det();
    if det.is_zero() {
        return arg("singular Gram matrix");
    }
    let k = rat(index as i64);
    let mut g2 = gram.0.scale(&rat(d));
    if n > 0 {
        for j in 0..n {
            let v = g2.get(0, j) / &k;
            g2.set(0, j, v.clone());
            if j != 0 {
                g2.set(j, 0, v);
            }
        }
        let v = g2.get(0, 0) / &k;
        g2.set(0, 0, v);
    }
    let det_image = g2.det();
    let lhs = (0..n).fold(det.clone(), |acc, _| acc * rat(d));
    if n > 0 && lhs != &det_image * &k * &k {
        return arg("regulator ratio identity fails");
    }
    let ratio = &det_image / &det;
    if ratio.is_negative() && n > 0 {
        // cannot happen for d > 0
        return arg("negative ratio");
    }
    Ok(RegulatorRatio { class: square_class(&ratio)?, det, det_image })
}
