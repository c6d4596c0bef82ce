//! Finite groups given by Cayley tables.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Largest group order accepted by the constructions.
pub const MAX_ORDER: usize = 24;

/// A finite group on `0..order`, with `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// For each element, a word in `generators` (indices into it) evaluating to it.
    words: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validate a Cayley table: closure, identity, associativity, inverses.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("empty Cayley table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeGuard(format!("group order {n} exceeds {MAX_ORDER}")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Validation(format!("entry {x} in row {i} is not an element")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::IdentityLaw("no two-sided identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::Associativity(a, b, c));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or(Error::InverseLaw(a))?;
        }
        let mut g = FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverse,
            generators: Vec::new(),
            words: Vec::new(),
        };
        g.compute_generators();
        Ok(g)
    }

    fn compute_generators(&mut self) {
        let n = self.order();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.closure(&gens);
        for a in 0..n {
            if !span[a] {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        // Breadth-first words: each element as a shortest product of generators.
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let b = self.table[a][g];
                if words[b].is_none() {
                    let mut w = words[a].clone().unwrap();
                    w.push(k);
                    words[b] = Some(w);
                    queue.push_back(b);
                }
            }
        }
        self.generators = gens;
        self.words = words.into_iter().map(Option::unwrap).collect();
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.table[a][g];
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    /// Generate a permutation group; element 0 is the identity.
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Result<Self> {
        let deg = gens.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..deg).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..deg).map(|i| p[q[i]]).collect() };
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let h = compose(&elems[i], g);
                if !index.contains_key(&h) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::SizeGuard(format!("generated group exceeds order {MAX_ORDER}")));
                    }
                    index.insert(h.clone(), elems.len());
                    elems.push(h);
                }
            }
            i += 1;
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(name, table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(format!("Z{n}"), table).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutations(format!("D{}", 2 * n), &[r, s]).expect("dihedral group")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(t);
            gens.push(c);
        } else {
            gens.push((0..n.max(1)).collect());
        }
        FiniteGroup::from_permutations(format!("S{n}"), &gens).expect("symmetric group")
    }

    pub fn alternating4() -> Self {
        FiniteGroup::from_permutations("A4", &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]).expect("A4")
    }

    /// Quaternion group of order 8 as permutations of {±1, ±i, ±j, ±k}.
    pub fn quaternion() -> Self {
        // Points: 0:1 1:i 2:j 3:k 4:-1 5:-i 6:-j 7:-k; left multiplication by i and j.
        let li = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let lj = vec![2, 7, 4, 1, 6, 3, 0, 5];
        FiniteGroup::from_permutations("Q8", &[li, lj]).expect("Q8")
    }

    /// Dicyclic group of order 12, `Z3 ⋊ Z4`.
    pub fn dicyclic12() -> Self {
        // Generated by a 6-cycle a and b with b² = a³, b a b⁻¹ = a⁻¹, acting on 12 points
        // via left multiplication on the group itself.
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|e| (0..6).map(move |k| (k, e))).collect();
        // Element a^k b^e; product (a^k b^e)(a^l b^f).
        let mul = |(k, e): (usize, usize), (l, f): (usize, usize)| -> (usize, usize) {
            let l2 = if e == 1 { (6 - l) % 6 } else { l };
            let mut k2 = (k + l2) % 6;
            let mut e2 = e + f;
            if e2 == 2 {
                k2 = (k2 + 3) % 6;
                e2 = 0;
            }
            (k2, e2)
        };
        let idx = |x: (usize, usize)| elems.iter().position(|&y| y == x).unwrap();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| idx(mul(a, b))).collect()).collect();
        FiniteGroup::from_table("Dic12", table).expect("dicyclic group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (m, n) = (a.order(), b.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("{}x{}", a.name, b.name), table).expect("direct product")
    }

    /// All 24 groups of order at most 12, up to isomorphism.
    pub fn corpus_up_to_12() -> Vec<FiniteGroup> {
        let z = FiniteGroup::cyclic;
        vec![
            z(1),
            z(2),
            z(3),
            z(4),
            FiniteGroup::direct_product(&z(2), &z(2)),
            z(5),
            z(6),
            FiniteGroup::symmetric(3),
            z(7),
            z(8),
            FiniteGroup::direct_product(&z(2), &z(4)),
            FiniteGroup::direct_product(&FiniteGroup::direct_product(&z(2), &z(2)), &z(2)),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion(),
            z(9),
            FiniteGroup::direct_product(&z(3), &z(3)),
            z(10),
            FiniteGroup::dihedral(5),
            z(11),
            z(12),
            FiniteGroup::direct_product(&z(2), &z(6)),
            FiniteGroup::dihedral(6),
            FiniteGroup::alternating4(),
            FiniteGroup::dicyclic12(),
        ]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// A word in the generators (as positions in [`Self::generators`]) for `a`.
    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Product `x_0 x_1 ⋯ x_k`.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// Whether `f` is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_orders_and_classes() {
        let c = FiniteGroup::corpus_up_to_12();
        assert_eq!(c.len(), 24);
        let orders: Vec<usize> = c.iter().map(FiniteGroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8, 9, 9, 10, 10, 11, 12, 12, 12, 12, 12]);
        assert!(!FiniteGroup::quaternion().is_abelian());
        let q8 = FiniteGroup::quaternion();
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        let dic = FiniteGroup::dicyclic12();
        assert_eq!((0..12).filter(|&a| dic.element_order(a) == 2).count(), 1);
        assert!(!dic.is_abelian());
        let a4 = FiniteGroup::alternating4();
        assert_eq!((0..12).filter(|&a| a4.element_order(a) == 2).count(), 3);
    }

    #[test]
    fn words_evaluate_correctly() {
        let g = FiniteGroup::symmetric(3);
        for a in 0..g.order() {
            let w: Vec<usize> = g.word(a).iter().map(|&k| g.generators()[k]).collect();
            assert_eq!(g.product(&w), a);
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        // Z3 with two entries swapped keeps the identity row but breaks associativity.
        let mut t = FiniteGroup::cyclic(3).table().to_vec();
        t[1][1] = 0;
        t[1][2] = 2;
        assert!(matches!(FiniteGroup::from_table("bad", t), Err(Error::Associativity(..))));
        let no_id = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(FiniteGroup::from_table("bad", no_id), Err(Error::IdentityLaw(_))));
    }
}
