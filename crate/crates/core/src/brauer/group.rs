use std::collections::{BTreeMap, VecDeque};

use crate::error::{arg, Error, Result};

pub const MAX_ORDER: usize = 48;

/// A permutation group with its multiplication table. Element 0 is the identity;
/// `mul(a, b)` is the permutation "b first, then a".
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    perms: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

impl FiniteGroup {
    /// Closure of the generators in Sym(degree); points are 0-based.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return arg(format!("{g:?} is not a permutation of {degree} points"));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut index = BTreeMap::new();
        index.insert(id.clone(), 0);
        let mut perms = vec![id];
        let mut queue = VecDeque::from([0usize]);
        let mut generators = vec![];
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(g.clone());
            }
            generators.push(index[g]);
        }
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let h = compose(g, &perms[i]);
                if !index.contains_key(&h) {
                    if perms.len() == MAX_ORDER {
                        return Err(Error::Resource(format!("group order exceeds {MAX_ORDER}")));
                    }
                    index.insert(h.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(h);
                }
            }
        }
        let n = perms.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&compose(&perms[a], &perms[b])]).collect()).collect();
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).unwrap()).collect();
        let g = FiniteGroup { degree, perms, table, inverse, generators };
        g.verify()?;
        Ok(g)
    }

    /// Generators in cycle notation with 1-based points, separated by ';' or
    /// newlines: "(1,2,3); (1,2)". An empty generator is the identity.
    pub fn parse(text: &str) -> Result<FiniteGroup> {
        let mut cycles_per_gen = vec![];
        let mut degree = 1;
        for part in text.split([';', '\n']).map(str::trim).filter(|s| !s.is_empty()) {
            let mut cycles = vec![];
            let mut rest = part;
            while let Some(open) = rest.find('(') {
                if !rest[..open].trim().is_empty() {
                    return Err(Error::Parse(format!("unexpected text in {part:?}")));
                }
                let close = rest[open..].find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {part:?}")))? + open;
                let pts: Vec<usize> = rest[open + 1..close]
                    .split([',', ' '])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.trim().parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::Parse(format!("bad point in {part:?}")))?;
                degree = degree.max(pts.iter().max().map_or(0, |m| m + 1));
                cycles.push(pts);
                rest = &rest[close + 1..];
            }
            if !rest.trim().is_empty() {
                return Err(Error::Parse(format!("unexpected text in {part:?}")));
            }
            cycles_per_gen.push(cycles);
        }
        let mut gens = vec![];
        for cycles in cycles_per_gen {
            let mut p: Vec<usize> = (0..degree).collect();
            let mut used = vec![false; degree];
            for c in cycles {
                for (k, &x) in c.iter().enumerate() {
                    if std::mem::replace(&mut used[x], true) {
                        return Err(Error::Parse(format!("point {} repeated in a generator", x + 1)));
                    }
                    p[x] = c[(k + 1) % c.len()];
                }
            }
            gens.push(p);
        }
        FiniteGroup::from_permutations(degree, &gens)
    }

    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        if n <= 1 {
            return FiniteGroup::from_permutations(1, &[]);
        }
        let cyc: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut tr: Vec<usize> = (0..n).collect();
        tr.swap(0, 1);
        FiniteGroup::from_permutations(n, &[cyc, tr])
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        FiniteGroup::from_permutations(n, &[(0..n).map(|i| (i + 1) % n).collect()])
    }

    /// D_{2n}, the symmetries of an n-gon (order 2n).
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n < 3 {
            return arg("dihedral group needs n >= 3");
        }
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutations(n, &[rot, refl])
    }

    pub fn klein_four() -> Result<FiniteGroup> {
        FiniteGroup::from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
    }

    fn verify(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.table[0][a] != a || self.table[a][0] != a || self.table[a][self.inverse[a]] != 0 {
                return arg("identity or inverse axiom fails");
            }
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return arg("multiplication is not associative");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// Element indices of the generators, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn perm(&self, a: usize) -> &[usize] {
        &self.perms[a]
    }

    pub fn conj(&self, x: usize, g: usize) -> usize {
        // x⁻¹ g x
        self.mul(self.inverse[x], self.mul(g, x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Cycle notation with 1-based points, "()" for the identity.
    pub fn label(&self, a: usize) -> String {
        let p = &self.perms[a];
        let mut seen = vec![false; self.degree];
        let mut out = String::new();
        for s in 0..self.degree {
            if seen[s] || p[s] == s {
                continue;
            }
            let mut c = vec![];
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push((x + 1).to_string());
                x = p[x];
            }
            out += &format!("({})", c.join(","));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }

    /// Parity of the permutation: +1 even, −1 odd.
    pub fn perm_sign(&self, a: usize) -> i8 {
        let p = &self.perms[a];
        let mut seen = vec![false; self.degree];
        let mut s = 1;
        for i in 0..self.degree {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut x = i;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// Conjugacy classes of elements, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut cls = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = vec![];
        for g in 0..n {
            if cls[g] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = (0..n).map(|x| self.conj(x, g)).collect();
            c.sort_unstable();
            c.dedup();
            for &h in &c {
                cls[h] = out.len();
            }
            out.push(c);
        }
        out
    }

    /// Subgroup generated by `gens`, as a bitmask.
    pub fn closure(&self, gens: &[usize]) -> u64 {
        let mut mask = 1u64;
        let mut elems = vec![0usize];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if mask & (1 << y) == 0 {
                    mask |= 1 << y;
                    elems.push(y);
                }
            }
            i += 1;
        }
        mask
    }
}

pub(crate) fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}
