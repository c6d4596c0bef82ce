//! Finite simplicial sets and groups, comonads on finite G-sets, and the
//! standard construction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Simplicial set truncated at degree `top`, maps stored as index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    pub sizes: Vec<usize>,
    /// `faces[n][j]: X_n → X_{n−1}`, `j = 0..=n` (empty for `n = 0`).
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][j]: X_n → X_{n+1}`, `j = 0..=n`, for `n < top`.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

impl SimplicialSet {
    pub fn top(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn constant(size: usize, top: usize) -> Self {
        let id: Vec<usize> = (0..size).collect();
        SimplicialSet {
            sizes: vec![size; top + 1],
            faces: (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degeneracies: (0..=top).map(|n| if n < top { vec![id.clone(); n + 1] } else { Vec::new() }).collect(),
        }
    }

    /// Check every simplicial identity, exhaustively on elements.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::SimplicialIdentity(what));
        let d = |n: usize, j: usize| &self.faces[n][j];
        let s = |n: usize, j: usize| &self.degeneracies[n][j];
        let top = self.top();
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    if compose(d(n - 1, i), d(n, j)) != compose(d(n - 1, j - 1), d(n, i)) {
                        return fail(format!("d{i} d{j} = d{} d{i} in degree {n}", j - 1));
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if compose(s(n + 1, i), s(n, j)) != compose(s(n + 1, j + 1), s(n, i)) {
                        return fail(format!("s{i} s{j} = s{} s{i} in degree {n}", j + 1));
                    }
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = compose(d(n + 1, i), s(n, j));
                    let rhs = if i < j {
                        compose(s(n - 1, j - 1), d(n, i))
                    } else if i == j || i == j + 1 {
                        (0..self.sizes[n]).collect()
                    } else {
                        compose(s(n - 1, j), d(n, i - 1))
                    };
                    if lhs != rhs {
                        return fail(format!("d{i} s{j} in degree {n}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Degreewise map of simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Check that the map commutes with faces and degeneracies, and whether it is bijective.
    pub fn check(&self, src: &SimplicialSet, tgt: &SimplicialSet) -> Result<bool> {
        let top = src.top().min(tgt.top()).min(self.levels.len() - 1);
        for n in 0..=top {
            let f = &self.levels[n];
            if f.len() != src.sizes[n] || f.iter().any(|&y| y >= tgt.sizes[n]) {
                return Err(Error::DimensionMismatch(format!("simplicial map in degree {n}")));
            }
            if n > 0 {
                for j in 0..=n {
                    if compose(&self.levels[n - 1], &src.faces[n][j]) != compose(&tgt.faces[n][j], f) {
                        return Err(Error::VerificationFailed(format!("map does not commute with d{j} in degree {n}")));
                    }
                }
            }
            if n < top {
                for j in 0..=n {
                    if compose(&self.levels[n + 1], &src.degeneracies[n][j]) != compose(&tgt.degeneracies[n][j], f)
                    {
                        return Err(Error::VerificationFailed(format!("map does not commute with s{j} in degree {n}")));
                    }
                }
            }
        }
        Ok((0..=top).all(|n| {
            let mut seen = vec![false; tgt.sizes[n]];
            src.sizes[n] == tgt.sizes[n] && self.levels[n].iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        }))
    }
}

/// A finite left G-set; `gens[k][p]` is the action of the `k`-th generator on point `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    pub group: Arc<FiniteGroup>,
    pub size: usize,
    pub gens: Vec<Vec<usize>>,
}

impl GSet {
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let k = group.generators().len();
        GSet { group, size: 1, gens: vec![vec![0]; k] }
    }

    /// Action of an arbitrary element, through its word in the generators.
    pub fn act(&self, x: usize, p: usize) -> usize {
        // Left action: x = g_{k1}⋯g_{kr} acts as g_{k1}(⋯ g_{kr}(p)).
        self.group.word(x).iter().rev().fold(p, |q, &k| self.gens[k][q])
    }

    /// Whether `f: self → tgt` is equivariant.
    pub fn is_equivariant(&self, f: &[usize], tgt: &GSet) -> bool {
        self.gens.iter().zip(&tgt.gens).all(|(a, b)| compose(f, a) == compose(b, f))
    }
}

/// A comonad on finite G-sets.
pub trait Comonad {
    fn name(&self) -> String;
    fn apply(&self, z: &GSet) -> GSet;
    fn apply_morphism(&self, f: &[usize], src: &GSet, tgt: &GSet) -> Vec<usize>;
    /// `c_Z: L(Z) → Z`.
    fn counit(&self, z: &GSet) -> Vec<usize>;
    /// `δ_Z: L(Z) → L(L(Z))`.
    fn diagonal(&self, z: &GSet) -> Vec<usize>;
}

/// `L = Id`.
pub struct IdentityComonad;

impl Comonad for IdentityComonad {
    fn name(&self) -> String {
        "Id".into()
    }
    fn apply(&self, z: &GSet) -> GSet {
        z.clone()
    }
    fn apply_morphism(&self, f: &[usize], _: &GSet, _: &GSet) -> Vec<usize> {
        f.to_vec()
    }
    fn counit(&self, z: &GSet) -> Vec<usize> {
        (0..z.size).collect()
    }
    fn diagonal(&self, z: &GSet) -> Vec<usize> {
        (0..z.size).collect()
    }
}

fn product_with_group(z: &GSet, diagonal: bool) -> GSet {
    let g = &z.group;
    let n = g.order();
    let gens = g
        .generators()
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            (0..n * z.size)
                .map(|i| {
                    let (y, q) = (i / z.size, i % z.size);
                    let q2 = if diagonal { z.gens[k][q] } else { q };
                    g.mul(x, y) * z.size + q2
                })
                .collect()
        })
        .collect();
    GSet { group: g.clone(), size: n * z.size, gens }
}

fn lift(f: &[usize], src: &GSet, tgt: &GSet) -> Vec<usize> {
    let n = src.group.order();
    (0..n * src.size).map(|i| (i / src.size) * tgt.size + f[i % src.size]).collect()
}

/// `V(Z) = G × Z` with the diagonal action, `γ(x, q) = (x, x, q)`, counit `(x, q) ↦ q`.
pub struct DiagonalComonad;

impl Comonad for DiagonalComonad {
    fn name(&self) -> String {
        "V".into()
    }
    fn apply(&self, z: &GSet) -> GSet {
        product_with_group(z, true)
    }
    fn apply_morphism(&self, f: &[usize], src: &GSet, tgt: &GSet) -> Vec<usize> {
        lift(f, src, tgt)
    }
    fn counit(&self, z: &GSet) -> Vec<usize> {
        (0..z.group.order() * z.size).map(|i| i % z.size).collect()
    }
    fn diagonal(&self, z: &GSet) -> Vec<usize> {
        let n = z.group.order();
        let inner = n * z.size;
        (0..inner).map(|i| (i / z.size) * inner + i).collect()
    }
}

/// `L(Z) = G × Z` acting on the first factor only, counit `(x, q) ↦ x·q`, `δ(x, q) = (x, e, q)`.
pub struct TranslationComonad;

impl Comonad for TranslationComonad {
    fn name(&self) -> String {
        "L".into()
    }
    fn apply(&self, z: &GSet) -> GSet {
        product_with_group(z, false)
    }
    fn apply_morphism(&self, f: &[usize], src: &GSet, tgt: &GSet) -> Vec<usize> {
        lift(f, src, tgt)
    }
    fn counit(&self, z: &GSet) -> Vec<usize> {
        (0..z.group.order() * z.size).map(|i| z.act(i / z.size, i % z.size)).collect()
    }
    fn diagonal(&self, z: &GSet) -> Vec<usize> {
        let n = z.group.order();
        let inner = n * z.size;
        let e = z.group.identity();
        (0..inner).map(|i| (i / z.size) * inner + e * z.size + i % z.size).collect()
    }
}

fn comonad_law<C: Comonad>(c: &C, law: &str, z: &GSet) -> Error {
    Error::ComonadLawViolation { law: format!("{} on {}", law, c.name()), object: format!("G-set of size {}", z.size) }
}

/// Check the comonad laws and equivariance of `c`, `δ` on `chain = [Z, LZ, LLZ, LLLZ]`.
pub fn check_comonad_laws_on_chain<C: Comonad>(c: &C, chain: &[GSet]) -> Result<()> {
    let (z, lz, llz) = (&chain[0], &chain[1], &chain[2]);
    let cz = c.counit(z);
    let dz = c.diagonal(z);
    if !lz.is_equivariant(&cz, z) {
        return Err(comonad_law(c, "counit is not equivariant", z));
    }
    if !lz.is_equivariant(&dz, llz) {
        return Err(comonad_law(c, "diagonal is not equivariant", z));
    }
    let id: Vec<usize> = (0..lz.size).collect();
    if compose(&c.counit(lz), &dz) != id {
        return Err(comonad_law(c, "cL∘δ = id", z));
    }
    if compose(&c.apply_morphism(&cz, lz, z), &dz) != id {
        return Err(comonad_law(c, "Lc∘δ = id", z));
    }
    if chain.len() >= 4 {
        let l_d = c.apply_morphism(&dz, lz, llz);
        let d_l = c.diagonal(lz);
        if compose(&l_d, &dz) != compose(&d_l, &dz) {
            return Err(comonad_law(c, "Lδ∘δ = δL∘δ", z));
        }
    }
    Ok(())
}

/// Simplicial G-set `X_n = L^{n+1}(w)` with `d_j = L^j c L^{n−j}`, `s_j = L^j δ L^{n−j−1}`.
#[derive(Clone, Debug)]
pub struct StandardConstruction {
    pub objects: Vec<GSet>,
    pub set: SimplicialSet,
}

/// Build the standard construction through degree `top`, checking the
/// comonad laws on every object whose third iterate is built.
pub fn standard_construction<C: Comonad>(c: &C, w: &GSet, top: usize) -> Result<StandardConstruction> {
    // iter[k] = L^k(w), k = 0..=top+2.
    let mut iter = vec![w.clone()];
    for _ in 0..top + 2 {
        iter.push(c.apply(iter.last().unwrap()));
    }
    for k in 0..iter.len().saturating_sub(3) {
        check_comonad_laws_on_chain(c, &iter[k..(k + 4).min(iter.len())])?;
    }
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    let mut degens: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for n in 0..=top {
        // Level n is iter[n + 1].
        if n >= 1 {
            let mut fs = vec![c.counit(&iter[n])];
            for j in 1..=n {
                let prev = if n == 1 { c.counit(&iter[0]) } else { faces[n - 1][j - 1].clone() };
                fs.push(c.apply_morphism(&prev, &iter[n], &iter[n - 1]));
            }
            faces[n] = fs;
        }
        if n < top {
            let mut ss = vec![c.diagonal(&iter[n])];
            for j in 1..=n {
                ss.push(c.apply_morphism(&degens[n - 1][j - 1], &iter[n], &iter[n + 1]));
            }
            degens[n] = ss;
        }
    }
    let objects: Vec<GSet> = iter[1..=top + 1].to_vec();
    for n in 0..=top {
        let obj = &objects[n];
        for (j, f) in faces[n].iter().enumerate() {
            if !obj.is_equivariant(f, &objects[n - 1]) {
                return Err(comonad_law(c, &format!("face d{j} in degree {n} is not equivariant"), w));
            }
        }
        for (j, s) in degens[n].iter().enumerate() {
            if !obj.is_equivariant(s, &objects[n + 1]) {
                return Err(comonad_law(c, &format!("degeneracy s{j} in degree {n} is not equivariant"), w));
            }
        }
    }
    let set = SimplicialSet { sizes: objects.iter().map(|o| o.size).collect(), faces, degeneracies: degens };
    set.check_identities()?;
    Ok(StandardConstruction { objects, set })
}

/// Tuple `(x_0, …, x_n)` of the element with index `i` in `G^{n+1}`, `x_0` most significant.
pub fn decode(order: usize, n: usize, mut i: usize) -> Vec<usize> {
    let mut xs = vec![0; n + 1];
    for k in (0..=n).rev() {
        xs[k] = i % order;
        i /= order;
    }
    xs
}

pub fn encode(order: usize, xs: &[usize]) -> usize {
    xs.iter().fold(0, |acc, &x| acc * order + x)
}

/// Which group structure a simplicial group on `G^{n+1}` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EgKind {
    /// `EG`: componentwise product, omit/repeat faces and degeneracies.
    Homogeneous,
    /// `(EG)^left`: adjacent-product faces, product transported along partial products.
    Left,
}

/// `EG` or `(EG)^left` truncated at degree `top`.
#[derive(Clone, Debug)]
pub struct SimplicialGroup {
    pub group: Arc<FiniteGroup>,
    pub kind: EgKind,
    pub construction: StandardConstruction,
}

impl SimplicialGroup {
    pub fn set(&self) -> &SimplicialSet {
        &self.construction.set
    }

    /// Product in degree `n`.
    pub fn mul(&self, n: usize, a: usize, b: usize) -> usize {
        let g = &self.group;
        let (xa, xb) = (decode(g.order(), n, a), decode(g.order(), n, b));
        match self.kind {
            EgKind::Homogeneous => encode(g.order(), &(0..=n).map(|k| g.mul(xa[k], xb[k])).collect::<Vec<_>>()),
            EgKind::Left => {
                // (x·x')_k = y'_{k−1}⁻¹ x_k y'_{k−1} x'_k with y'_k = x'_0 ⋯ x'_k.
                let mut out = Vec::with_capacity(n + 1);
                let mut y = g.identity();
                for k in 0..=n {
                    let conj = g.mul(g.mul(g.inv(y), xa[k]), y);
                    out.push(g.mul(conj, xb[k]));
                    y = g.mul(y, xb[k]);
                }
                encode(g.order(), &out)
            }
        }
    }

    /// Check that faces and degeneracies are homomorphisms, exhaustively.
    pub fn check_homomorphisms(&self) -> Result<()> {
        let set = self.set();
        for n in 0..=set.top() {
            let size = set.sizes[n];
            let maps = set.faces[n]
                .iter()
                .map(|f| (f, n - 1, "face"))
                .chain(set.degeneracies[n].iter().map(|s| (s, n + 1, "degeneracy")));
            for (f, m, what) in maps {
                for a in 0..size {
                    for b in 0..size {
                        if f[self.mul(n, a, b)] != self.mul(m, f[a], f[b]) {
                            return Err(Error::VerificationFailed(format!(
                                "{what} in degree {n} is not a homomorphism at ({a},{b})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `EG` as the standard construction of [`DiagonalComonad`] on a point.
pub fn build_eg(group: Arc<FiniteGroup>, top: usize) -> Result<SimplicialGroup> {
    let construction = standard_construction(&DiagonalComonad, &GSet::point(group.clone()), top)?;
    Ok(SimplicialGroup { group, kind: EgKind::Homogeneous, construction })
}

/// `(EG)^left` as the standard construction of [`TranslationComonad`] on a point.
pub fn build_eg_left(group: Arc<FiniteGroup>, top: usize) -> Result<SimplicialGroup> {
    let construction = standard_construction(&TranslationComonad, &GSet::point(group.clone()), top)?;
    Ok(SimplicialGroup { group, kind: EgKind::Left, construction })
}

/// Partial products `(x_0, x_0x_1, …, x_0⋯x_n)` in degree `n`.
pub fn partial_products(g: &FiniteGroup, xs: &[usize]) -> Vec<usize> {
    let mut y = g.identity();
    xs.iter()
        .map(|&x| {
            y = g.mul(y, x);
            y
        })
        .collect()
}

/// The partial-product map `(EG)^left → EG`, verified to be a bijective
/// homomorphism commuting with all faces and degeneracies.
pub fn iso_eg_left_to_eg(left: &SimplicialGroup, eg: &SimplicialGroup) -> Result<SimplicialMap> {
    let g = &left.group;
    let top = left.set().top().min(eg.set().top());
    let levels: Vec<Vec<usize>> = (0..=top)
        .map(|n| {
            (0..left.set().sizes[n])
                .map(|i| encode(g.order(), &partial_products(g, &decode(g.order(), n, i))))
                .collect()
        })
        .collect();
    let map = SimplicialMap { levels };
    if !map.check(left.set(), eg.set())? {
        return Err(Error::VerificationFailed("partial-product map is not bijective".into()));
    }
    for n in 0..=top {
        let f = &map.levels[n];
        let size = left.set().sizes[n];
        for a in 0..size {
            for b in 0..size {
                if f[left.mul(n, a, b)] != eg.mul(n, f[a], f[b]) {
                    return Err(Error::VerificationFailed(format!(
                        "partial-product map is not a homomorphism at ({a},{b}) in degree {n}"
                    )));
                }
            }
        }
        let (lo, eo) = (&left.construction.objects[n], &eg.construction.objects[n]);
        if !lo.is_equivariant(f, eo) {
            return Err(Error::VerificationFailed(format!("partial-product map is not equivariant in degree {n}")));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_comonad_is_constant() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let sc = standard_construction(&IdentityComonad, &GSet::point(g), 3).unwrap();
        assert_eq!(sc.set, SimplicialSet::constant(1, 3));
    }

    #[test]
    fn eg_sizes_and_faces() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let eg = build_eg(g.clone(), 3).unwrap();
        assert_eq!(eg.set().sizes, vec![2, 4, 8, 16]);
        // d_1(x_0, x_1, x_2) omits x_1.
        assert_eq!(eg.set().faces[2][1][encode(2, &[1, 0, 1])], encode(2, &[1, 1]));
        let left = build_eg_left(g, 3).unwrap();
        // ∂_n drops the last entry, ∂_0 multiplies the first two.
        assert_eq!(left.set().faces[2][2][encode(2, &[1, 0, 1])], encode(2, &[1, 0]));
        assert_eq!(left.set().faces[2][0][encode(2, &[1, 1, 1])], encode(2, &[0, 1]));
        // s_0(x_0) = (x_0, e).
        assert_eq!(left.set().degeneracies[0][0][1], encode(2, &[1, 0]));
    }

    #[test]
    fn s3_objects_are_simplicial_groups_and_isomorphic() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let eg = build_eg(g.clone(), 3).unwrap();
        let left = build_eg_left(g.clone(), 3).unwrap();
        eg.check_homomorphisms().unwrap();
        left.check_homomorphisms().unwrap();
        let iso = iso_eg_left_to_eg(&left, &eg).unwrap();
        assert_eq!(iso.levels[0], (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn partial_products_in_z2() {
        let g = FiniteGroup::cyclic(2);
        assert_eq!(partial_products(&g, &[1, 1]), vec![1, 0]);
    }
}
