//! Exterior algebras on a finite basis, and spaces of alternating forms
//! `Λ(R^n)* ⊗ W` laid out for truncation by total degree.

use crate::complex::GradedSpace;
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::scalar::{Field, Scalar};

/// Largest supported number of exterior generators.
pub const MAX_GENERATORS: usize = 16;

/// `Λ` on generators `e^0..e^{n−1}`. Monomials are bit masks, ordered by
/// size and then lexicographically on their sorted elements.
#[derive(Clone, Debug)]
pub struct Exterior {
    n: usize,
    masks: Vec<u32>,
    pos: Vec<usize>,
}

/// Parity of the permutation sorting `seq`, or `None` on a repeated entry.
pub fn sort_sign(seq: &[usize]) -> Option<(u32, bool)> {
    let mut mask = 0u32;
    let mut neg = false;
    for (i, &a) in seq.iter().enumerate() {
        if mask & (1 << a) != 0 {
            return None;
        }
        mask |= 1 << a;
        neg ^= seq[..i].iter().filter(|&&b| b > a).count() % 2 == 1;
    }
    Some((mask, neg))
}

impl Exterior {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_GENERATORS {
            return Err(Error::SizeGuard(format!("{n} exterior generators exceed {MAX_GENERATORS}")));
        }
        let mut masks: Vec<u32> = (0..1u32 << n).collect();
        masks.sort_by_key(|&m| (m.count_ones(), Self::elements_of(m)));
        let mut pos = vec![0; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            pos[m as usize] = i;
        }
        Ok(Exterior { n, masks, pos })
    }

    fn elements_of(mask: u32) -> Vec<usize> {
        (0..32).filter(|b| mask & (1 << b) != 0).collect()
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, idx: usize) -> u32 {
        self.masks[idx]
    }

    pub fn index(&self, mask: u32) -> usize {
        self.pos[mask as usize]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.masks[idx].count_ones() as usize
    }

    pub fn elements(&self, idx: usize) -> Vec<usize> {
        Self::elements_of(self.masks[idx])
    }

    /// `e^{M1} ∧ e^{M2}` as (monomial index, negated), or `None` if zero.
    pub fn wedge(&self, i1: usize, i2: usize) -> Option<(usize, bool)> {
        let (m1, m2) = (self.masks[i1], self.masks[i2]);
        if m1 & m2 != 0 {
            return None;
        }
        // Count pairs (a ∈ M1, b ∈ M2) with a > b.
        let mut inv = 0;
        for b in Self::elements_of(m2) {
            inv += (m1 >> (b + 1)).count_ones();
        }
        Some((self.pos[(m1 | m2) as usize], inv % 2 == 1))
    }

    /// Index of the one-element monomial `e^k`.
    pub fn single(&self, k: usize) -> usize {
        self.pos[1 << k]
    }

    /// Left multiplication `e^k ∧ ·` as a matrix.
    pub fn wedge_operator(&self, k: usize, field: Field) -> SparseMatrix {
        let s = self.single(k);
        let entries = (0..self.len()).filter_map(|c| {
            self.wedge(s, c).map(|(r, neg)| (r, c, if neg { field.one().neg() } else { field.one() }))
        });
        SparseMatrix::from_triplets(self.len(), self.len(), field, entries).expect("wedge operator")
    }

    /// Contraction `ι_k e^J = Σ_r (−1)^{r−1} δ_{k,j_r} e^{J∖j_r}`.
    pub fn contraction(&self, k: usize, field: Field) -> SparseMatrix {
        let entries = (0..self.len()).filter_map(|c| {
            let m = self.masks[c];
            if m & (1 << k) == 0 {
                return None;
            }
            let before = (m & ((1 << k) - 1)).count_ones();
            let s = if before % 2 == 1 { field.one().neg() } else { field.one() };
            Some((self.pos[(m & !(1 << k)) as usize], c, s))
        });
        SparseMatrix::from_triplets(self.len(), self.len(), field, entries).expect("contraction")
    }

    /// The degree-zero derivation extending `e^c ↦ Σ_b m[b][c] e^b`.
    pub fn linear_derivation(&self, m: &SparseMatrix) -> SparseMatrix {
        let field = m.field();
        let cols = m.transpose().into_rows();
        let mut entries = Vec::new();
        for col in 0..self.len() {
            let els = self.elements(col);
            for (r, &c) in els.iter().enumerate() {
                for (b, x) in &cols[c] {
                    let mut seq = els.clone();
                    seq[r] = *b;
                    if let Some((mask, neg)) = sort_sign(&seq) {
                        entries.push((self.pos[mask as usize], col, if neg { x.neg() } else { x.clone() }));
                    }
                }
            }
        }
        SparseMatrix::accumulate(self.len(), self.len(), field, entries)
    }

    /// The derivation sending `e^c` to `−e^i ∧ e^j` and every other generator to zero.
    pub fn replacement(&self, c: usize, i: usize, j: usize, field: Field) -> SparseMatrix {
        let entries = (0..self.len()).filter_map(|col| {
            let els = self.elements(col);
            let r = els.iter().position(|&x| x == c)?;
            let mut seq: Vec<usize> = els[..r].to_vec();
            seq.extend([i, j]);
            seq.extend(&els[r + 1..]);
            let (mask, neg) = sort_sign(&seq)?;
            // (−1)^r from moving the derivation past r factors, times the −1 of the replacement.
            let neg = neg ^ (r % 2 == 1) ^ true;
            Some((self.pos[mask as usize], col, if neg { field.one().neg() } else { field.one() }))
        });
        SparseMatrix::from_triplets(self.len(), self.len(), field, entries).expect("replacement")
    }
}

/// Basis of `Λ ⊗ W` through total degree `cap`, ordered by total degree,
/// then monomial, then the basis of `W`.
#[derive(Clone, Debug)]
pub struct AltLayout {
    pub grading: GradedSpace,
    pub inner: GradedSpace,
    /// `(monomial index, inner index)` per basis vector.
    pub basis: Vec<(usize, usize)>,
    index: Vec<u32>,
    inner_dim: usize,
}

const ABSENT: u32 = u32::MAX;

impl AltLayout {
    pub fn new(ext: &Exterior, inner: &GradedSpace, cap: i64) -> Self {
        let inner_dim = inner.total();
        let n = ext.generators() as i64;
        let lo = inner.lo;
        let hi = (inner.hi() + n).min(cap);
        let mut basis = Vec::new();
        let mut dims = Vec::new();
        let mut index = vec![ABSENT; ext.len() * inner_dim];
        for t in lo..=hi {
            let start = basis.len();
            for mi in 0..ext.len() {
                let deg = t - ext.degree(mi) as i64;
                let off = inner.offset(deg);
                for w in off..off + inner.dim(deg) {
                    index[mi * inner_dim + w] = basis.len() as u32;
                    basis.push((mi, w));
                }
            }
            dims.push(basis.len() - start);
        }
        let grading = GradedSpace::new(lo, if hi >= lo { dims } else { Vec::new() });
        AltLayout { grading, inner: inner.clone(), basis, index, inner_dim }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, monomial: usize, w: usize) -> Option<usize> {
        match self.index[monomial * self.inner_dim + w] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    /// `A ⊗ B` (`B = None` meaning the identity), with the extra sign
    /// `(−1)^{|M|}` on the column monomial `M` when `koszul` is set.
    /// Entries landing beyond the truncation are dropped.
    pub fn tensor(&self, ext: &Exterior, a: &SparseMatrix, b: Option<&SparseMatrix>, koszul: bool) -> SparseMatrix {
        let field = a.field();
        let a_cols = a.transpose().into_rows();
        let b_cols = b.map(|b| b.transpose().into_rows());
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (col, &(m, w)) in self.basis.iter().enumerate() {
            let neg = koszul && ext.degree(m) % 2 == 1;
            for (m2, x) in &a_cols[m] {
                let x = if neg { x.neg() } else { x.clone() };
                match &b_cols {
                    None => {
                        if let Some(r) = self.index(*m2, w) {
                            entries.push((r, col, x.clone()));
                        }
                    }
                    Some(bc) => {
                        for (w2, y) in &bc[w] {
                            if let Some(r) = self.index(*m2, *w2) {
                                entries.push((r, col, x.mul(y)));
                            }
                        }
                    }
                }
            }
        }
        SparseMatrix::accumulate(self.dim(), self.dim(), field, entries)
    }
}

/// Data of a Chevalley–Eilenberg type differential on `Λ ⊗ W`:
/// `d(e^J ⊗ w) = Σ_{(c,i,j,K)} D^c_{ij} e^J ⊗ K w + Σ_k e^k ∧ e^J ⊗ ρ_k w + (−1)^{|J|} e^J ⊗ d_W w`,
/// where `D^c_{ij}` is [`Exterior::replacement`].
pub struct AltDifferential<'a> {
    /// `(c, i, j, K)` with `i < j`: the coefficient of `−e^i ∧ e^j` in `d e^c` acts on `W` by `K`.
    pub bracket: Vec<(usize, usize, usize, SparseMatrix)>,
    pub action: &'a [SparseMatrix],
    pub inner_d: Option<&'a SparseMatrix>,
}

impl AltDifferential<'_> {
    pub fn build(&self, ext: &Exterior, layout: &AltLayout, field: Field) -> SparseMatrix {
        let n = layout.dim();
        let mut d = SparseMatrix::zeros(n, n, field);
        for (c, i, j, k) in &self.bracket {
            d = d.add(&layout.tensor(ext, &ext.replacement(*c, *i, *j, field), Some(k), false));
        }
        for (k, rho) in self.action.iter().enumerate() {
            d = d.add(&layout.tensor(ext, &ext.wedge_operator(k, field), Some(rho), false));
        }
        if let Some(dw) = self.inner_d {
            let id = SparseMatrix::identity(ext.len(), field);
            d = d.add(&layout.tensor(ext, &id, Some(dw), true));
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_signs() {
        let e = Exterior::new(3).unwrap();
        let els: Vec<Vec<usize>> = (0..e.len()).map(|i| e.elements(i)).collect();
        assert_eq!(els[0], Vec::<usize>::new());
        assert_eq!(els[4], vec![0, 1]);
        assert_eq!(els[5], vec![0, 2]);
        assert_eq!(els[7], vec![0, 1, 2]);
        // e^1 ∧ e^0 = −e^0 ∧ e^1
        assert_eq!(e.wedge(e.single(1), e.single(0)), Some((4, true)));
        assert_eq!(sort_sign(&[2, 0, 1]), Some((7, false)));
        assert_eq!(sort_sign(&[1, 1]), None);
    }

    #[test]
    fn contraction_anticommutes_with_wedge() {
        let f = Field::Rational;
        let e = Exterior::new(3).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                let ac = e.contraction(k, f).anticommutator(&e.wedge_operator(l, f));
                if k == l {
                    assert!(ac.is_identity());
                } else {
                    assert!(ac.is_zero());
                }
            }
        }
    }
}
