//! Truncated cosimplicial modules, their identities, conormalization, and
//! the normalized invariant total complex of a graded cosimplicial object.

use rayon::prelude::*;

use crate::complex::{ChainMap, CochainComplex, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, Kernel};
use crate::matrix::{canonical, SparseMatrix, SparseVec};
use crate::scalar::{Field, Scalar};

/// Column access to a matrix: `apply(v) = M·v` for sparse `v`.
#[derive(Clone, Debug)]
pub struct ColMajor {
    rows: usize,
    field: Field,
    cols: Vec<SparseVec>,
}

impl ColMajor {
    pub fn new(m: &SparseMatrix) -> Self {
        ColMajor { rows: m.rows(), field: m.field(), cols: m.transpose().into_rows() }
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (i, s) in v {
            for (r, a) in &self.cols[*i] {
                acc.push((*r, a.mul(s)));
            }
        }
        canonical(acc)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Cap of a level that was never truncated.
pub const UNBOUNDED: i64 = i64::MAX / 4;

/// One cosimplicial degree.
///
/// `grading` is the internal grading, complete through internal degree
/// `cap`. Maps preserve internal degree, so restricting to a lower cap is
/// taking a prefix.
#[derive(Clone, Debug)]
pub struct Level {
    pub grading: GradedSpace,
    pub cap: i64,
    /// `ε^j` into the next level, `j = 0..=n+1`, restricted to the next level's cap.
    pub cofaces: Vec<SparseMatrix>,
    /// `η^j` into the previous level, `j = 0..n`, with rows truncated to this level's cap.
    pub codegeneracies: Vec<SparseMatrix>,
    /// Operators whose joint kernel cuts out the invariants.
    pub invariant_ops: Vec<SparseMatrix>,
    /// Internal differential raising internal degree by one (truncated).
    pub differential: Option<SparseMatrix>,
}

impl Level {
    pub fn dim(&self) -> usize {
        self.grading.total()
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }
}

#[derive(Clone, Debug)]
pub struct CosimplicialModule {
    pub field: Field,
    pub levels: Vec<Level>,
}

fn trunc_map(m: &SparseMatrix, tgt: &GradedSpace, src: &GradedSpace, cap: i64) -> SparseMatrix {
    m.prefix(tgt.prefix_len(cap).min(m.rows()), src.prefix_len(cap).min(m.cols()))
}

impl CosimplicialModule {
    /// Highest cosimplicial degree present.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// The constant object: every level `V`, every map the identity.
    pub fn constant(field: Field, dim: usize, levels: usize) -> Self {
        let id = SparseMatrix::identity(dim, field);
        let levels = (0..levels)
            .map(|n| Level {
                grading: GradedSpace::new(0, vec![dim]),
                cap: UNBOUNDED,
                cofaces: if n + 1 < levels { vec![id.clone(); n + 2] } else { Vec::new() },
                codegeneracies: vec![id.clone(); n],
                invariant_ops: Vec::new(),
                differential: None,
            })
            .collect();
        CosimplicialModule { field, levels }
    }

    /// `ε^j: X^n → X^{n+1}` restricted to internal degrees ≤ `cap`.
    pub fn coface(&self, n: usize, j: usize, cap: i64) -> SparseMatrix {
        let m = &self.levels[n].cofaces[j];
        trunc_map(m, &self.levels[n + 1].grading, &self.levels[n].grading, cap)
    }

    /// `η^j: X^{n+1} → X^n` restricted to internal degrees ≤ `cap`.
    pub fn codegeneracy(&self, n: usize, j: usize, cap: i64) -> SparseMatrix {
        let m = &self.levels[n + 1].codegeneracies[j];
        trunc_map(m, &self.levels[n].grading, &self.levels[n + 1].grading, cap)
    }

    fn shape_check(&self) -> Result<()> {
        for (n, l) in self.levels.iter().enumerate() {
            let has_next = n + 1 < self.levels.len();
            if has_next && l.cofaces.len() != n + 2 {
                return Err(Error::CosimplicialIdentity(format!("level {n} needs {} cofaces", n + 2)));
            }
            if l.codegeneracies.len() != n {
                return Err(Error::CosimplicialIdentity(format!("level {n} needs {n} codegeneracies")));
            }
            if has_next {
                let cap = self.levels[n + 1].cap();
                let rows = self.levels[n + 1].dim();
                let cols = l.grading.prefix_len(cap);
                for (j, e) in l.cofaces.iter().enumerate() {
                    if e.rows() != rows || e.cols() != cols {
                        return Err(Error::DimensionMismatch(format!(
                            "coface {j} out of level {n} is {}x{}, expected {rows}x{cols}",
                            e.rows(),
                            e.cols()
                        )));
                    }
                }
            }
            if n > 0 {
                let rows = self.levels[n - 1].grading.prefix_len(l.cap());
                for (j, e) in l.codegeneracies.iter().enumerate() {
                    if e.rows() != rows || e.cols() != l.dim() {
                        return Err(Error::DimensionMismatch(format!(
                            "codegeneracy {j} out of level {n} is {}x{}, expected {rows}x{}",
                            e.rows(),
                            e.cols(),
                            l.dim()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Check every cosimplicial identity as a matrix identity.
    pub fn check_identities(&self) -> Result<()> {
        self.shape_check()?;
        let top = self.top();
        let fail = |s: String| Err(Error::CosimplicialIdentity(s));
        let cap_of = |n: usize| self.levels[n].cap();
        // ε^j ε^i = ε^i ε^{j−1}, i < j, on X^n → X^{n+2}.
        for n in 0..top.saturating_sub(1) {
            let cap = cap_of(n + 2);
            for j in 1..=n + 2 {
                for i in 0..j {
                    let l = self.coface(n + 1, j, cap).mul(&self.coface(n, i, cap));
                    let r = self.coface(n + 1, i, cap).mul(&self.coface(n, j - 1, cap));
                    if l != r {
                        return fail(format!("ε^{j}ε^{i} ≠ ε^{i}ε^{} on level {n}", j - 1));
                    }
                }
            }
        }
        // η^j η^i = η^i η^{j+1}, i ≤ j, on X^{n+2} → X^n.
        for n in 0..top.saturating_sub(1) {
            let cap = cap_of(n + 2);
            for j in 0..=n {
                for i in 0..=j {
                    let l = self.codegeneracy(n, j, cap).mul(&self.codegeneracy(n + 1, i, cap));
                    let r = self.codegeneracy(n, i, cap).mul(&self.codegeneracy(n + 1, j + 1, cap));
                    if l != r {
                        return fail(format!("η^{j}η^{i} ≠ η^{i}η^{} on level {}", j + 1, n + 2));
                    }
                }
            }
        }
        // Mixed identities on X^n → X^n: η^j ε^i with η^j: X^{n+1} → X^n.
        for n in 0..top {
            let cap = cap_of(n + 1);
            let dim = self.levels[n].grading.prefix_len(cap);
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let l = self.codegeneracy(n, j, cap).mul(&self.coface(n, i, cap));
                    let r = if i < j {
                        self.coface(n - 1, i, cap).mul(&self.codegeneracy(n - 1, j - 1, cap))
                    } else if i == j || i == j + 1 {
                        SparseMatrix::identity(dim, self.field)
                    } else {
                        self.coface(n - 1, i - 1, cap).mul(&self.codegeneracy(n - 1, j, cap))
                    };
                    if l != r {
                        return fail(format!("η^{j}ε^{i} identity fails on level {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Unnormalized alternating-sum complex of an ungraded object; degree
    /// `n` is level `n`, reliable below the top level.
    pub fn unnormalized(&self) -> Result<CochainComplex> {
        self.require_ungraded()?;
        let dims: Vec<usize> = self.levels.iter().map(Level::dim).collect();
        let diffs = (0..self.top())
            .map(|n| {
                let mut d = SparseMatrix::zeros(dims[n + 1], dims[n], self.field);
                for j in 0..=n + 1 {
                    let e = self.coface(n, j, 0);
                    d = if j % 2 == 0 { d.add(&e) } else { d.sub(&e) };
                }
                d
            })
            .collect();
        Ok(CochainComplex::new(self.field, GradedSpace::new(0, dims), diffs)?
            .with_reliable_up_to(self.top() as i64 - 1))
    }

    fn require_ungraded(&self) -> Result<()> {
        if self.levels.iter().any(|l| l.grading.lo != 0 || l.grading.dims.len() != 1) {
            return Err(Error::Validation("expected levels concentrated in internal degree 0".into()));
        }
        Ok(())
    }

    /// Conormalized complex `∩_j ker η^j` with `Σ(−1)^j ε^j`; reliable below the top level.
    pub fn conormalize(&self) -> Result<CochainComplex> {
        self.check_identities()?;
        let top = self.top() as i64;
        Ok(normalized_total(self, top, false)?.complex)
    }
}

/// A summand of bidegree (level, internal degree) of the total complex.
#[derive(Clone, Debug)]
pub struct Piece {
    pub level: usize,
    pub degree: i64,
    /// Start of this internal degree inside the level.
    pub offset: usize,
    /// Width of this internal degree inside the level.
    pub width: usize,
    /// Normalized (and, if requested, invariant) vectors in piece coordinates.
    pub kernel: Kernel,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }
}

/// Normalized (invariant) total complex together with its summands.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub complex: CochainComplex,
    /// `pieces[k − lo]` lists the summands of total degree `k`, ordered by level.
    pub pieces: Vec<Vec<Piece>>,
    pub lo: i64,
}

impl TotalComplex {
    pub fn pieces_at(&self, k: i64) -> &[Piece] {
        let i = k - self.lo;
        if i < 0 || i as usize >= self.pieces.len() {
            &[]
        } else {
            &self.pieces[i as usize]
        }
    }

    /// Coordinates of a level vector (supported in one piece) in the total basis of degree `k`.
    pub fn coordinates(&self, k: i64, level: usize, v: &[(usize, Scalar)]) -> Result<SparseVec> {
        let mut base = 0;
        for p in self.pieces_at(k) {
            if p.level == level {
                let local: SparseVec = v
                    .iter()
                    .filter(|e| e.0 >= p.offset && e.0 < p.offset + p.width)
                    .map(|(i, s)| (i - p.offset, s.clone()))
                    .collect();
                if local.len() != v.len() {
                    return Err(Error::VerificationFailed(format!(
                        "vector of level {level} leaves internal degree {}",
                        p.degree
                    )));
                }
                return Ok(crate::complex::coordinates(&p.kernel, &local)
                    .into_iter()
                    .map(|(j, s)| (j + base, s))
                    .collect());
            }
            base += p.dim();
        }
        if v.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Error::VerificationFailed(format!("no summand of level {level} in degree {k}")))
        }
    }

    /// Basis vectors of degree `k` as (level, level-coordinate vector) pairs.
    pub fn basis(&self, k: i64) -> Vec<(usize, SparseVec)> {
        let mut out = Vec::new();
        for p in self.pieces_at(k) {
            for v in &p.kernel.basis {
                out.push((p.level, v.iter().map(|(i, s)| (i + p.offset, s.clone())).collect()));
            }
        }
        out
    }
}

/// Build the total complex of normalized (optionally invariant) elements,
/// in total degrees `lo..=top`, where `lo` is the lowest internal degree.
///
/// Degree `top` carries only its space; the result is reliable up to `top − 1`.
/// Summands with total degree ≤ `top` must all be present: level `n` must
/// exist and be truncated no lower than `top − n`.
pub fn normalized_total(cs: &CosimplicialModule, top: i64, use_ops: bool) -> Result<TotalComplex> {
    let field = cs.field;
    let lo = cs.levels.iter().map(|l| l.grading.lo).min().unwrap_or(0);
    let need_levels = (top - lo).max(0) as usize;
    if cs.top() < need_levels {
        return Err(Error::TruncationInsufficient(format!(
            "total degree {top} needs cosimplicial levels up to {need_levels}, have {}",
            cs.top()
        )));
    }
    for n in 0..=need_levels {
        let l = &cs.levels[n];
        if l.grading.lo <= top - n as i64 && l.cap() < top - n as i64 {
            return Err(Error::TruncationInsufficient(format!(
                "level {n} truncated at internal degree {}, need {}",
                l.cap(),
                top - n as i64
            )));
        }
    }
    // Every (level, internal degree) summand with total degree in [lo, top].
    let mut specs: Vec<(usize, i64)> = Vec::new();
    for (n, l) in cs.levels.iter().enumerate().take(need_levels + 1) {
        for m in l.grading.lo..=l.cap().min(l.grading.hi()) {
            let k = n as i64 + m;
            if k <= top && l.grading.dim(m) > 0 {
                specs.push((n, m));
            }
        }
    }
    let kernels: Vec<(usize, i64, usize, usize, Kernel, SparseMatrix)> = specs
        .par_iter()
        .map(|&(n, m)| {
            let l = &cs.levels[n];
            let off = l.grading.offset(m);
            let w = l.grading.dim(m);
            let mut blocks: Vec<SparseMatrix> = l
                .codegeneracies
                .iter()
                .map(|e| e.block(0, e.rows(), off, off + w))
                .collect();
            if use_ops {
                blocks.extend(l.invariant_ops.iter().map(|o| o.block(0, o.rows(), off, off + w)));
            }
            let refs: Vec<&SparseMatrix> = blocks.iter().collect();
            let stacked = SparseMatrix::vstack(&refs, w, field);
            let k = linalg::kernel(&stacked);
            (n, m, off, w, k, stacked)
        })
        .collect();
    let nk = (top - lo + 1) as usize;
    let mut pieces: Vec<Vec<Piece>> = vec![Vec::new(); nk];
    let mut checks: Vec<Vec<SparseMatrix>> = vec![Vec::new(); nk];
    for (n, m, off, w, k, stacked) in kernels {
        let ki = (n as i64 + m - lo) as usize;
        pieces[ki].push(Piece { level: n, degree: m, offset: off, width: w, kernel: k });
        checks[ki].push(stacked);
    }
    for (ps, cs_) in pieces.iter_mut().zip(checks.iter_mut()) {
        let mut idx: Vec<usize> = (0..ps.len()).collect();
        idx.sort_by_key(|&i| ps[i].level);
        *ps = idx.iter().map(|&i| ps[i].clone()).collect();
        *cs_ = idx.iter().map(|&i| cs_[i].clone()).collect();
    }
    let dims: Vec<usize> = pieces.iter().map(|ps| ps.iter().map(Piece::dim).sum()).collect();

    // Column-major forms of the differential ingredients, per level.
    let coface_sum: Vec<Option<ColMajor>> = (0..cs.levels.len())
        .map(|n| {
            if n >= need_levels {
                return None;
            }
            let cap = cs.levels[n + 1].cap();
            let mut d = SparseMatrix::zeros(
                cs.levels[n + 1].dim(),
                cs.levels[n].grading.prefix_len(cap),
                field,
            );
            for j in 0..=n + 1 {
                let e = cs.coface(n, j, cap);
                d = if j % 2 == 0 { d.add(&e) } else { d.sub(&e) };
            }
            Some(ColMajor::new(&d))
        })
        .collect();
    let internal: Vec<Option<ColMajor>> = cs
        .levels
        .iter()
        .map(|l| l.differential.as_ref().map(ColMajor::new))
        .collect();

    let mut diffs = Vec::new();
    for k in lo..top {
        let ki = (k - lo) as usize;
        let src = &pieces[ki];
        let tgt = &pieces[ki + 1];
        let tchecks: Vec<ColMajor> = checks[ki + 1].iter().map(ColMajor::new).collect();
        let mut tbase = Vec::new();
        let mut acc = 0;
        for p in tgt {
            tbase.push(acc);
            acc += p.dim();
        }
        let cols: Result<Vec<Vec<SparseVec>>> = src
            .par_iter()
            .map(|p| {
                let sign_int = if p.level % 2 == 0 { field.one() } else { field.one().neg() };
                let mut out = Vec::with_capacity(p.dim());
                for v in &p.kernel.basis {
                    let lv: SparseVec = v.iter().map(|(i, s)| (i + p.offset, s.clone())).collect();
                    let mut col: SparseVec = Vec::new();
                    // Cosimplicial part into (level + 1, same internal degree).
                    if let Some(cm) = &coface_sum[p.level] {
                        let img = cm.apply(&lv);
                        col.extend(project(&img, tgt, &tbase, &tchecks, p.level + 1, p.degree, k)?);
                    }
                    // Internal part into (same level, internal degree + 1).
                    if let Some(dm) = &internal[p.level] {
                        let img: SparseVec =
                            dm.apply(&lv).into_iter().map(|(i, s)| (i, s.mul(&sign_int))).collect();
                        col.extend(project(&img, tgt, &tbase, &tchecks, p.level, p.degree + 1, k)?);
                    }
                    out.push(canonical(col));
                }
                Ok(out)
            })
            .collect();
        let cols: Vec<SparseVec> = cols?.into_iter().flatten().collect();
        diffs.push(SparseMatrix::from_columns(dims[ki + 1], field, &cols));
    }
    let complex = CochainComplex::new(field, GradedSpace::new(lo, dims), diffs)?.with_reliable_up_to(top - 1);
    Ok(TotalComplex { complex, pieces, lo })
}

/// Coordinates of `img` (a vector of `level`, supported in internal degree
/// `deg`) in the target summand, after checking it lies in the subspace.
fn project(
    img: &[(usize, Scalar)],
    tgt: &[Piece],
    tbase: &[usize],
    tchecks: &[ColMajor],
    level: usize,
    deg: i64,
    k: i64,
) -> Result<SparseVec> {
    if img.is_empty() {
        return Ok(Vec::new());
    }
    let Some(t) = tgt.iter().position(|p| p.level == level && p.degree == deg) else {
        // The summand is zero-dimensional (or truncated away); the image must vanish there.
        return Err(Error::NotClosedUnderDifferential(k));
    };
    let p = &tgt[t];
    let local: SparseVec = img
        .iter()
        .filter(|e| e.0 >= p.offset && e.0 < p.offset + p.width)
        .map(|(i, s)| (i - p.offset, s.clone()))
        .collect();
    if local.len() != img.len() || !tchecks[t].apply(&local).is_empty() {
        return Err(Error::NotClosedUnderDifferential(k));
    }
    Ok(crate::complex::coordinates(&p.kernel, &local)
        .into_iter()
        .map(|(j, s)| (j + tbase[t], s))
        .collect())
}

/// Express a degreewise family of level maps between two total complexes
/// as a chain map in total coordinates.
///
/// `f(level, v)` returns the image of a level vector as a level vector of the target.
pub fn induced_chain_map(
    src: &TotalComplex,
    tgt: &TotalComplex,
    f: impl Fn(usize, &SparseVec) -> Result<SparseVec> + Sync,
) -> Result<ChainMap> {
    let lo = src.complex.lo().max(tgt.complex.lo());
    let hi = src.complex.hi().min(tgt.complex.hi());
    let field = src.complex.field();
    let mut components = Vec::new();
    for k in lo..=hi {
        let cols: Result<Vec<SparseVec>> = src
            .basis(k)
            .par_iter()
            .map(|(level, v)| {
                let img = f(*level, v)?;
                tgt.coordinates(k, *level, &img)
            })
            .collect();
        components.push((k, SparseMatrix::from_columns(tgt.complex.dim(k), field, &cols?)));
    }
    Ok(ChainMap { source: src.complex.clone(), target: tgt.complex.clone(), components })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_object_is_acyclic_above_zero() {
        let cs = CosimplicialModule::constant(Field::Rational, 3, 6);
        cs.check_identities().unwrap();
        let c = cs.conormalize().unwrap();
        assert_eq!(c.cohomology_dims(0, 4).unwrap(), vec![3, 0, 0, 0, 0]);
        let u = cs.unnormalized().unwrap();
        assert_eq!(u.cohomology_dims(0, 4).unwrap(), vec![3, 0, 0, 0, 0]);
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut cs = CosimplicialModule::constant(Field::Rational, 2, 4);
        cs.levels[1].cofaces[0] = SparseMatrix::from_i64(Field::Rational, &[vec![0, 1], vec![1, 0]]);
        assert!(matches!(cs.check_identities(), Err(Error::CosimplicialIdentity(_))));
    }
}
