//! Commutative algebras, differential graded algebras with contraction and
//! Lie-derivative operators, and the cosimplicial object of their tensor powers.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::{CochainComplex, GradedSpace};
use crate::cosimplicial::{CosimplicialModule, Level};
use crate::error::{Error, Result};
use crate::matrix::{axpy, canonical, SparseMatrix, SparseVec};
use crate::scalar::{Field, Scalar};

/// Product of two sparse vectors through a table of basis products.
fn bilinear(table: &[Vec<SparseVec>], x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
    let mut acc: Vec<(usize, Scalar)> = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            let ab = a.mul(b);
            acc.extend(table[*i][*j].iter().map(|(k, c)| (*k, c.mul(&ab))));
        }
    }
    canonical(acc)
}

fn table_matrix(table: &[Vec<SparseVec>], x: &[(usize, Scalar)], dim: usize, field: Field) -> SparseMatrix {
    let cols: Vec<SparseVec> = (0..dim).map(|j| bilinear(table, x, &[(j, field.one())])).collect();
    SparseMatrix::from_columns(dim, field, &cols)
}

/// A finite-dimensional commutative associative unital algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct CommAlgebra {
    field: Field,
    mult: Vec<Vec<SparseVec>>,
    unit: SparseVec,
}

impl CommAlgebra {
    /// Validate commutativity, associativity and the unit on basis elements.
    pub fn new(field: Field, mult: Vec<Vec<SparseVec>>, unit: SparseVec) -> Result<Self> {
        let n = mult.len();
        if mult.iter().any(|r| r.len() != n) || mult.iter().flatten().flatten().any(|(k, _)| *k >= n) {
            return Err(Error::DimensionMismatch(format!("multiplication table is not {n}x{n} over a basis of size {n}")));
        }
        if unit.iter().any(|(k, _)| *k >= n) {
            return Err(Error::DimensionMismatch("unit outside the algebra".into()));
        }
        let a = CommAlgebra { field, mult, unit };
        for s in 0..n {
            for t in 0..n {
                if a.mult[s][t] != a.mult[t][s] {
                    return Err(Error::Validation(format!("multiplication is not commutative at (a{s}, a{t})")));
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let l = a.mul(&a.mult[s][t], &[(u, field.one())]);
                    let r = a.mul(&[(s, field.one())], &a.mult[t][u]);
                    if l != r {
                        return Err(Error::Associativity(s, t, u));
                    }
                }
            }
        }
        for s in 0..n {
            if a.mul(&a.unit, &[(s, field.one())]) != vec![(s, field.one())] {
                return Err(Error::IdentityLaw(format!("unit does not fix basis element a{s}")));
            }
        }
        Ok(a)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        CommAlgebra::truncated_polynomial(field, 1)
    }

    /// `R[x]/(x^k)` on the basis `1, x, …, x^{k−1}`.
    pub fn truncated_polynomial(field: Field, k: usize) -> Self {
        let mult = (0..k)
            .map(|s| (0..k).map(|t| if s + t < k { vec![(s + t, field.one())] } else { Vec::new() }).collect())
            .collect();
        CommAlgebra::new(field, mult, vec![(0, field.one())]).expect("truncated polynomial ring")
    }

    /// `R[x]/(x²)`.
    pub fn dual_numbers(field: Field) -> Self {
        CommAlgebra::truncated_polynomial(field, 2)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.mult.len()
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn table(&self) -> &[Vec<SparseVec>] {
        &self.mult
    }

    pub fn basis_vector(&self, s: usize) -> SparseVec {
        vec![(s, self.field.one())]
    }

    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        bilinear(&self.mult, x, y)
    }

    /// Matrix of multiplication by `x`.
    pub fn mult_matrix(&self, x: &[(usize, Scalar)]) -> SparseMatrix {
        table_matrix(&self.mult, x, self.dim(), self.field)
    }

    /// A pair of basis indices violating the Leibniz rule for `d`, if any.
    pub fn derivation_witness(&self, d: &SparseMatrix) -> Option<(usize, usize)> {
        let n = self.dim();
        for s in 0..n {
            for t in 0..n {
                let lhs = d.mul_vec(&self.mult[s][t]);
                let rhs = canonical(
                    self.mul(&d.mul_vec(&self.basis_vector(s)), &self.basis_vector(t))
                        .into_iter()
                        .chain(self.mul(&self.basis_vector(s), &d.mul_vec(&self.basis_vector(t))))
                        .collect(),
                );
                if lhs != rhs {
                    return Some((s, t));
                }
            }
        }
        None
    }

    /// `A ⊗ B` on the basis `a_s ⊗ b_t` at index `s·dim B + t`.
    pub fn tensor(&self, o: &CommAlgebra) -> CommAlgebra {
        let (n, m) = (self.dim(), o.dim());
        let mut mult = vec![vec![Vec::new(); n * m]; n * m];
        for s in 0..n {
            for t in 0..m {
                for s2 in 0..n {
                    for t2 in 0..m {
                        let mut acc = Vec::new();
                        for (a, x) in &self.mult[s][s2] {
                            for (b, y) in &o.mult[t][t2] {
                                acc.push((a * m + b, x.mul(y)));
                            }
                        }
                        mult[s * m + t][s2 * m + t2] = canonical(acc);
                    }
                }
            }
        }
        let mut unit = Vec::new();
        for (a, x) in &self.unit {
            for (b, y) in &o.unit {
                unit.push((a * m + b, x.mul(y)));
            }
        }
        CommAlgebra::new(self.field, mult, canonical(unit)).expect("tensor product of algebras")
    }
}

/// A cochain complex on a basis sorted by degree, with operators `λ_k`
/// (degree 0) and `i_k` (degree −1).
#[derive(Clone, Debug, PartialEq)]
pub struct CartanComplex {
    pub field: Field,
    pub degrees: Vec<i64>,
    pub d: SparseMatrix,
    pub lambda: Vec<SparseMatrix>,
    pub iota: Vec<SparseMatrix>,
}

fn fail(what: String) -> Error {
    Error::VerificationFailed(what)
}

impl CartanComplex {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn grading(&self) -> GradedSpace {
        grading_of(&self.degrees)
    }

    /// Shapes, degrees, `d² = 0`, `[d, λ] = 0`, `i_j i_k + i_k i_j = 0` and
    /// the Cartan relation `λ_k = d i_k + i_k d`.
    pub fn check(&self) -> Result<()> {
        let n = self.dim();
        if self.degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation("basis is not sorted by degree".into()));
        }
        if self.lambda.len() != self.iota.len() {
            return Err(Error::DimensionMismatch("different numbers of λ and i operators".into()));
        }
        let ops = std::iter::once((&self.d, 1)).chain(self.lambda.iter().map(|m| (m, 0))).chain(self.iota.iter().map(|m| (m, -1)));
        for (m, shift) in ops {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!("operator is {}x{}, space has dimension {n}", m.rows(), m.cols())));
            }
            if let Some((r, c, _)) = m.entries().find(|(r, c, _)| self.degrees[*r] != self.degrees[*c] + shift) {
                return Err(Error::Validation(format!("operator entry ({r},{c}) has the wrong degree")));
            }
        }
        if !self.d.mul(&self.d).is_zero() {
            return Err(fail("d² ≠ 0".into()));
        }
        for (k, (l, i)) in self.lambda.iter().zip(&self.iota).enumerate() {
            if !l.commutator(&self.d).is_zero() {
                return Err(fail(format!("λ_{k} does not commute with d")));
            }
            if self.d.anticommutator(i) != *l {
                return Err(fail(format!("Cartan relation d i_{k} + i_{k} d = λ_{k} fails")));
            }
            for (j, i2) in self.iota.iter().enumerate() {
                if !i.anticommutator(i2).is_zero() {
                    return Err(fail(format!("i_{k} and i_{j} do not anticommute")));
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> Result<CochainComplex> {
        complex_of(self.field, &self.grading(), &self.d)
    }
}

/// Degrees of a basis sorted by degree, as a graded space.
pub fn grading_of(degrees: &[i64]) -> GradedSpace {
    match (degrees.first(), degrees.last()) {
        (Some(&lo), Some(&hi)) => {
            let mut dims = vec![0; (hi - lo + 1) as usize];
            for &d in degrees {
                dims[(d - lo) as usize] += 1;
            }
            GradedSpace::new(lo, dims)
        }
        _ => GradedSpace::new(0, Vec::new()),
    }
}

/// Split a degree-one endomorphism of a graded space into a cochain complex.
pub fn complex_of(field: Field, g: &GradedSpace, d: &SparseMatrix) -> Result<CochainComplex> {
    let diffs = (g.lo..g.hi())
        .map(|k| d.block(g.offset(k + 1), g.offset(k + 2), g.offset(k), g.offset(k + 1)))
        .collect();
    CochainComplex::new(field, g.clone(), diffs)
}

/// A graded commutative differential graded algebra with Cartan operators
/// acting by derivations.
#[derive(Clone, Debug, PartialEq)]
pub struct DgAlgebra {
    pub space: CartanComplex,
    /// `mult[s][t] = b_s · b_t`.
    pub mult: Vec<Vec<SparseVec>>,
    pub unit: SparseVec,
}

impl DgAlgebra {
    pub fn field(&self) -> Field {
        self.space.field
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        bilinear(&self.mult, x, y)
    }

    /// Matrix of left multiplication by `x`.
    pub fn mult_matrix(&self, x: &[(usize, Scalar)]) -> SparseMatrix {
        table_matrix(&self.mult, x, self.dim(), self.field())
    }

    /// All structure identities: associativity, graded commutativity, unit,
    /// the operators of [`CartanComplex::check`], and that `d`, `λ_k`, `i_k`
    /// are derivations of the product.
    pub fn check(&self) -> Result<()> {
        self.space.check()?;
        let n = self.dim();
        let f = self.field();
        let deg = &self.space.degrees;
        let e = |s: usize| vec![(s, f.one())];
        for s in 0..n {
            if self.mul(&self.unit, &e(s)) != e(s) {
                return Err(fail(format!("unit does not fix basis element {s}")));
            }
            for t in 0..n {
                let st = &self.mult[s][t];
                if st.iter().any(|(k, _)| deg[*k] != deg[s] + deg[t]) {
                    return Err(fail(format!("product of basis elements {s}, {t} is not homogeneous")));
                }
                let sign = if deg[s] * deg[t] % 2 != 0 { f.one().neg() } else { f.one() };
                let ts: SparseVec = self.mult[t][s].iter().map(|(k, c)| (*k, c.mul(&sign))).collect();
                if *st != ts {
                    return Err(fail(format!("product is not graded commutative at ({s}, {t})")));
                }
                for u in 0..n {
                    if self.mul(st, &e(u)) != self.mul(&e(s), &self.mult[t][u]) {
                        return Err(Error::Associativity(s, t, u));
                    }
                }
            }
        }
        let ops = std::iter::once((&self.space.d, 1, "d".to_string()))
            .chain(self.space.lambda.iter().enumerate().map(|(k, m)| (m, 0, format!("λ_{k}"))))
            .chain(self.space.iota.iter().enumerate().map(|(k, m)| (m, -1, format!("i_{k}"))));
        for (op, odeg, name) in ops {
            for s in 0..n {
                for t in 0..n {
                    let lhs = op.mul_vec(&self.mult[s][t]);
                    let sign = if odeg * deg[s] % 2 != 0 { f.one().neg() } else { f.one() };
                    let rhs = axpy(
                        &self.mul(&op.mul_vec(&e(s)), &e(t)),
                        &sign,
                        &self.mul(&e(s), &op.mul_vec(&e(t))),
                    );
                    if lhs != rhs {
                        return Err(fail(format!("{name} is not a derivation at ({s}, {t})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cohomology dimensions of the underlying complex.
    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        let c = self.space.complex()?;
        c.cohomology_dims(c.lo(), c.hi())
    }
}

/// Basis tuples of a tensor product of graded factors, through total degree `cap`,
/// ordered by total degree and then lexicographically.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub tuples: Vec<Vec<u16>>,
    pub grading: GradedSpace,
    index: HashMap<Vec<u16>, usize>,
}

impl TensorLayout {
    pub fn new(factors: &[&[i64]], cap: i64) -> Self {
        let lo: i64 = factors.iter().map(|d| d.first().copied().unwrap_or(0)).sum();
        let mins: Vec<i64> = factors.iter().map(|d| d.first().copied().unwrap_or(0)).collect();
        let mut rest_min = vec![0i64; factors.len() + 1];
        for i in (0..factors.len()).rev() {
            rest_min[i] = rest_min[i + 1] + mins[i];
        }
        let mut found: Vec<(i64, Vec<u16>)> = Vec::new();
        let mut cur: Vec<u16> = Vec::new();
        fn rec(
            factors: &[&[i64]],
            rest_min: &[i64],
            cap: i64,
            sum: i64,
            cur: &mut Vec<u16>,
            out: &mut Vec<(i64, Vec<u16>)>,
        ) {
            let i = cur.len();
            if i == factors.len() {
                out.push((sum, cur.clone()));
                return;
            }
            for (b, &d) in factors[i].iter().enumerate() {
                if sum + d + rest_min[i + 1] > cap {
                    break;
                }
                cur.push(b as u16);
                rec(factors, rest_min, cap, sum + d, cur, out);
                cur.pop();
            }
        }
        if factors.iter().all(|d| !d.is_empty()) {
            rec(factors, &rest_min, cap, 0, &mut cur, &mut found);
        }
        found.sort();
        let hi = found.last().map_or(lo - 1, |x| x.0);
        let mut dims = vec![0usize; (hi - lo + 1).max(0) as usize];
        for (d, _) in &found {
            dims[(d - lo) as usize] += 1;
        }
        let tuples: Vec<Vec<u16>> = found.into_iter().map(|x| x.1).collect();
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        TensorLayout { tuples, grading: GradedSpace::new(lo, dims), index }
    }

    pub fn dim(&self) -> usize {
        self.tuples.len()
    }

    pub fn index(&self, t: &[u16]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// The factors of a tensor power, each a [`CartanComplex`].
struct Factors<'a> {
    list: Vec<&'a CartanComplex>,
}

impl Factors<'_> {
    /// Derivation extension of a factor operator of degree `odeg`, chosen by `pick`.
    fn extend(
        &self,
        layout: &TensorLayout,
        odeg: i64,
        pick: impl Fn(&CartanComplex) -> &SparseMatrix + Sync,
        field: Field,
    ) -> SparseMatrix {
        let cols: Vec<Vec<SparseVec>> = self.list.iter().map(|c| pick(c).transpose().into_rows()).collect();
        let entries: Vec<(usize, usize, Scalar)> = layout
            .tuples
            .par_iter()
            .enumerate()
            .flat_map_iter(|(col, t)| {
                let mut out = Vec::new();
                let mut before = 0i64;
                for (r, &b) in t.iter().enumerate() {
                    let neg = odeg * before % 2 != 0;
                    for (b2, x) in &cols[r][b as usize] {
                        let mut t2 = t.clone();
                        t2[r] = *b2 as u16;
                        if let Some(row) = layout.index(&t2) {
                            out.push((row, col, if neg { x.neg() } else { x.clone() }));
                        }
                    }
                    before += self.list[r].degrees[b as usize];
                }
                out
            })
            .collect();
        SparseMatrix::accumulate(layout.dim(), layout.dim(), field, entries)
    }
}

/// The cosimplicial object with `n`-th term `𝒜^{⊗(n+1)} ⊗ 𝒩` (or `𝒜^{⊗(n+1)}`
/// without `passive`), cofaces inserting the unit, codegeneracies multiplying
/// adjacent factors of `𝒜`, and `d`, `λ_k`, `i_k` extended as derivations.
///
/// Built far enough for [`crate::cosimplicial::normalized_total`] through total degree `top`.
pub fn tensor_cosimplicial(alg: &DgAlgebra, passive: Option<&CartanComplex>, top: i64) -> Result<CosimplicialModule> {
    let field = alg.field();
    if let Some(p) = passive {
        if p.lambda.len() != alg.space.lambda.len() {
            return Err(Error::DimensionMismatch(format!(
                "coefficients carry {} operators, the algebra {}",
                p.lambda.len(),
                alg.space.lambda.len()
            )));
        }
    }
    if alg.space.degrees.first().is_some_and(|&d| d < 0) {
        return Err(Error::Validation("algebra has negative degrees".into()));
    }
    let lo = passive.and_then(|p| p.degrees.first().copied()).unwrap_or(0);
    let nlev = (top - lo).max(0) as usize + 1;
    let cap = |n: usize| top - n as i64;
    let layouts: Vec<TensorLayout> = (0..nlev)
        .map(|n| {
            let mut f: Vec<&[i64]> = vec![&alg.space.degrees; n + 1];
            if let Some(p) = passive {
                f.push(&p.degrees);
            }
            TensorLayout::new(&f, cap(n))
        })
        .collect();
    if let Some(n) = (0..nlev).find(|&n| layouts[n].dim() > crate::monad::DEFAULT_SIZE_LIMIT) {
        return Err(Error::SizeGuard(format!("tensor level {n} has dimension {}", layouts[n].dim())));
    }
    let nops = alg.space.lambda.len();
    let levels = (0..nlev)
        .into_par_iter()
        .map(|n| {
            let lay = &layouts[n];
            let mut list = vec![&alg.space; n + 1];
            if let Some(p) = passive {
                list.push(p);
            }
            let fs = Factors { list };
            let differential = Some(fs.extend(lay, 1, |c| &c.d, field));
            let mut invariant_ops: Vec<SparseMatrix> =
                (0..nops).map(|k| fs.extend(lay, 0, |c| &c.lambda[k], field)).collect();
            invariant_ops.extend((0..nops).map(|k| fs.extend(lay, -1, |c| &c.iota[k], field)));
            let cofaces = if n + 1 < nlev {
                let next = &layouts[n + 1];
                let ncols = lay.grading.prefix_len(cap(n + 1));
                (0..=n + 1)
                    .map(|j| {
                        let mut entries = Vec::new();
                        for (col, t) in lay.tuples[..ncols].iter().enumerate() {
                            for (u, c) in &alg.unit {
                                let mut t2 = t.clone();
                                t2.insert(j, *u as u16);
                                if let Some(row) = next.index(&t2) {
                                    entries.push((row, col, c.clone()));
                                }
                            }
                        }
                        SparseMatrix::accumulate(next.dim(), ncols, field, entries)
                    })
                    .collect()
            } else {
                Vec::new()
            };
            let codegeneracies = if n >= 1 {
                let prev = &layouts[n - 1];
                (0..n)
                    .map(|j| {
                        let mut entries = Vec::new();
                        for (col, t) in lay.tuples.iter().enumerate() {
                            for (p, c) in &alg.mult[t[j] as usize][t[j + 1] as usize] {
                                let mut t2 = t.clone();
                                t2[j] = *p as u16;
                                t2.remove(j + 1);
                                let row = prev.index(&t2).expect("product within the previous level");
                                entries.push((row, col, c.clone()));
                            }
                        }
                        SparseMatrix::accumulate(prev.dim(), lay.dim(), field, entries)
                    })
                    .collect()
            } else {
                Vec::new()
            };
            Level { grading: lay.grading.clone(), cap: cap(n), cofaces, codegeneracies, invariant_ops, differential }
        })
        .collect();
    Ok(CosimplicialModule { field, levels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomials_validate() {
        let a = CommAlgebra::truncated_polynomial(Field::Rational, 3);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.mul(&a.basis_vector(1), &a.basis_vector(2)), Vec::new());
        let t = a.tensor(&CommAlgebra::dual_numbers(Field::Rational));
        assert_eq!(t.dim(), 6);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let f = Field::Rational;
        let one = f.one();
        // Basis 1, x, y with x² = y, xy = 0, y² = y: (xx)x = yx = 0 but x(xx) = xy = 0; (xx)y = y² = y ≠ x(xy) = 0.
        let e = |k: usize| vec![(k, one.clone())];
        let mult = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), Vec::new()],
            vec![e(2), Vec::new(), e(2)],
        ];
        assert!(matches!(CommAlgebra::new(f, mult, e(0)), Err(Error::Associativity(_, _, _))));
    }

    #[test]
    fn tensor_layout_order() {
        let a: &[i64] = &[0, 1];
        let l = TensorLayout::new(&[a, a], 1);
        assert_eq!(l.tuples, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(l.grading.dims, vec![1, 2]);
    }
}
