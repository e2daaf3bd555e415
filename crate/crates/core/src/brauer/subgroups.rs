use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::group::{mask_elements, FiniteGroup};

/// A conjugacy class of subgroups, stored by the representative with the
/// smallest bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubgroupClass {
    pub id: usize,
    pub name: String,
    pub mask: u64,
    pub order: usize,
    /// Number of conjugates.
    pub size: usize,
}

impl SubgroupClass {
    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.mask)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask & (1 << g) != 0
    }

    pub fn index(&self, group_order: usize) -> usize {
        group_order / self.order
    }
}

fn conjugate_mask(g: &FiniteGroup, mask: u64, x: usize) -> u64 {
    mask_elements(mask).into_iter().fold(0, |m, h| m | 1 << g.conj(x, h))
}

fn describe(g: &FiniteGroup, mask: u64) -> String {
    let els = mask_elements(mask);
    let n = els.len();
    if n == 1 {
        return "1".into();
    }
    if n == g.order() {
        return "G".into();
    }
    if els.iter().any(|&e| g.element_order(e) == n) {
        return format!("C{n}");
    }
    if n == 4 {
        return "C2xC2".into();
    }
    let abelian = els.iter().all(|&a| els.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if !abelian && n % 2 == 0 && n >= 6 {
        // dihedral if it has a cyclic subgroup of index 2 and an involution outside it
        let half = n / 2;
        if let Some(&r) = els.iter().find(|&&e| g.element_order(e) == half) {
            let rot = g.closure(&[r]);
            if els.iter().all(|&e| rot & (1 << e) != 0 || g.element_order(e) == 2) {
                return format!("D{n}");
            }
        }
    }
    format!("H{n}")
}

/// All subgroups up to conjugacy, sorted by order then representative mask.
pub fn subgroup_classes(g: &FiniteGroup) -> Vec<SubgroupClass> {
    let n = g.order();
    let mut all: BTreeSet<u64> = BTreeSet::from([1u64]);
    let mut frontier = vec![1u64];
    // every subgroup is the join of a smaller subgroup and one element
    while let Some(h) = frontier.pop() {
        let gens: Vec<usize> = mask_elements(h);
        for x in 0..n {
            if h & (1 << x) != 0 {
                continue;
            }
            let mut gs = gens.clone();
            gs.push(x);
            let k = g.closure(&gs);
            if all.insert(k) {
                frontier.push(k);
            }
        }
    }
    let mut reps: BTreeMap<(usize, u64), usize> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for &h in &all {
        if seen.contains(&h) {
            continue;
        }
        let conj: BTreeSet<u64> = (0..n).map(|x| conjugate_mask(g, h, x)).collect();
        let rep = *conj.iter().next().unwrap();
        reps.insert((h.count_ones() as usize, rep), conj.len());
        seen.extend(conj);
    }
    let mut out: Vec<SubgroupClass> = reps
        .into_iter()
        .enumerate()
        .map(|(id, ((order, mask), size))| SubgroupClass { id, name: describe(g, mask), mask, order, size })
        .collect();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for c in &out {
        *counts.entry(c.name.clone()).or_default() += 1;
    }
    let mut k: BTreeMap<String, usize> = BTreeMap::new();
    for c in &mut out {
        if counts[&c.name] > 1 {
            let i = k.entry(c.name.clone()).or_default();
            *i += 1;
            c.name = format!("{}#{}", c.name, i);
        }
    }
    out
}

/// Permutation character of G on G/H at g: #{x : x⁻¹gx ∈ H} / |H|.
pub fn permutation_character(g: &FiniteGroup, h: &SubgroupClass, elem: usize) -> i64 {
    let hits = (0..g.order()).filter(|&x| h.contains(g.conj(x, elem))).count();
    (hits / h.order) as i64
}
