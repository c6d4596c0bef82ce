//! Cochain complexes, chain maps, operators and their cohomology.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{SparseMatrix, SparseVec};
use crate::scalar::Field;

/// Finite-dimensional vector spaces in the contiguous degrees `lo..lo+dims.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    pub lo: i64,
    pub dims: Vec<usize>,
    pub labels: Option<Vec<Vec<String>>>,
}

impl GradedSpace {
    pub fn new(lo: i64, dims: Vec<usize>) -> Self {
        GradedSpace { lo, dims, labels: None }
    }

    pub fn with_labels(lo: i64, labels: Vec<Vec<String>>) -> Result<Self> {
        for (i, ls) in labels.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for l in ls {
                if !seen.insert(l) {
                    return Err(Error::Validation(format!(
                        "duplicate basis label {l:?} in degree {}",
                        lo + i as i64
                    )));
                }
            }
        }
        let dims = labels.iter().map(Vec::len).collect();
        Ok(GradedSpace { lo, dims, labels: Some(labels) })
    }

    /// One past the top degree.
    pub fn end(&self) -> i64 {
        self.lo + self.dims.len() as i64
    }

    pub fn hi(&self) -> i64 {
        self.end() - 1
    }

    pub fn dim(&self, deg: i64) -> usize {
        if deg < self.lo || deg >= self.end() {
            0
        } else {
            self.dims[(deg - self.lo) as usize]
        }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Start of degree `deg` inside the total space (degrees ascending).
    pub fn offset(&self, deg: i64) -> usize {
        let k = (deg - self.lo).clamp(0, self.dims.len() as i64) as usize;
        self.dims[..k].iter().sum()
    }

    /// Number of basis vectors of degree ≤ `cap`.
    pub fn prefix_len(&self, cap: i64) -> usize {
        self.offset(cap + 1)
    }

    pub fn truncated(&self, cap: i64) -> GradedSpace {
        let keep = (cap + 1 - self.lo).clamp(0, self.dims.len() as i64) as usize;
        GradedSpace {
            lo: self.lo,
            dims: self.dims[..keep].to_vec(),
            labels: self.labels.as_ref().map(|l| l[..keep].to_vec()),
        }
    }

    /// Degree of the basis vector at total index `i`.
    pub fn degree_of(&self, mut i: usize) -> i64 {
        for (k, &d) in self.dims.iter().enumerate() {
            if i < d {
                return self.lo + k as i64;
            }
            i -= d;
        }
        panic!("index outside graded space")
    }
}

/// Graded space with differentials `d^n: C^n → C^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex {
    field: Field,
    space: GradedSpace,
    diffs: Vec<SparseMatrix>,
    reliable_up_to: Option<i64>,
}

impl CochainComplex {
    /// Checks shapes and `d∘d = 0`.
    pub fn new(field: Field, space: GradedSpace, diffs: Vec<SparseMatrix>) -> Result<Self> {
        let c = CochainComplex { field, space, diffs, reliable_up_to: None };
        c.check()?;
        Ok(c)
    }

    /// Every degree of `space` with zero differentials.
    pub fn zero_differential(field: Field, space: GradedSpace) -> Self {
        let diffs = (0..space.dims.len().saturating_sub(1))
            .map(|i| SparseMatrix::zeros(space.dims[i + 1], space.dims[i], field))
            .collect();
        CochainComplex { field, space, diffs, reliable_up_to: None }
    }

    fn check(&self) -> Result<()> {
        let n = self.space.dims.len();
        if self.diffs.len() != n.saturating_sub(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {} differentials, got {}",
                n,
                n.saturating_sub(1),
                self.diffs.len()
            )));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            if d.cols() != self.space.dims[i] || d.rows() != self.space.dims[i + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    self.space.lo + i as i64,
                    d.rows(),
                    d.cols(),
                    self.space.dims[i + 1],
                    self.space.dims[i]
                )));
            }
            if d.field() != self.field {
                return Err(Error::Validation("differential over the wrong field".into()));
            }
        }
        for i in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[i + 1].mul(&self.diffs[i]).is_zero() {
                return Err(Error::CompositionNotZero(self.space.lo + i as i64));
            }
        }
        Ok(())
    }

    pub fn with_reliable_up_to(mut self, deg: i64) -> Self {
        self.reliable_up_to = Some(deg);
        self
    }

    pub fn reliable_up_to(&self) -> Option<i64> {
        self.reliable_up_to
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn lo(&self) -> i64 {
        self.space.lo
    }

    pub fn hi(&self) -> i64 {
        self.space.hi()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.space.dim(n)
    }

    /// `d^n: C^n → C^{n+1}`; zero outside the stored range.
    pub fn d(&self, n: i64) -> SparseMatrix {
        let i = n - self.space.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            SparseMatrix::zeros(self.dim(n + 1), self.dim(n), self.field)
        }
    }

    pub fn d_ref(&self, n: i64) -> Option<&SparseMatrix> {
        let i = n - self.space.lo;
        if i >= 0 {
            self.diffs.get(i as usize)
        } else {
            None
        }
    }

    fn rank_d(&self, n: i64) -> usize {
        self.d_ref(n).map_or(0, linalg::rank)
    }

    pub fn cohomology_dim(&self, n: i64) -> Result<usize> {
        if let Some(r) = self.reliable_up_to {
            if n > r {
                return Err(Error::TruncationInsufficient(format!(
                    "degree {n} requested, complex reliable only up to {r}"
                )));
            }
        }
        Ok(self.dim(n) - self.rank_d(n) - self.rank_d(n - 1))
    }

    /// Cohomology dimensions for `lo ≤ n ≤ hi`.
    pub fn cohomology_dims(&self, lo: i64, hi: i64) -> Result<Vec<usize>> {
        if let Some(r) = self.reliable_up_to {
            if hi > r {
                return Err(Error::TruncationInsufficient(format!(
                    "degree {hi} requested, complex reliable only up to {r}"
                )));
            }
        }
        if hi < lo {
            return Ok(Vec::new());
        }
        let ranks: Vec<usize> = ((lo - 1)..=hi).into_par_iter().map(|n| self.rank_d(n)).collect();
        Ok((lo..=hi)
            .enumerate()
            .map(|(k, n)| self.dim(n) - ranks[k + 1] - ranks[k])
            .collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo()..=self.hi())
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n) as i64)
            .sum()
    }

    /// Text form: header, dims, then `d n row col scalar` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "complex v1").unwrap();
        writeln!(s, "field {}", self.field).unwrap();
        writeln!(s, "lo {}", self.space.lo).unwrap();
        let dims: Vec<String> = self.space.dims.iter().map(|d| d.to_string()).collect();
        writeln!(s, "dims {}", dims.join(" ")).unwrap();
        if let Some(r) = self.reliable_up_to {
            writeln!(s, "reliable {r}").unwrap();
        }
        for (i, d) in self.diffs.iter().enumerate() {
            let n = self.space.lo + i as i64;
            for (r, c, v) in d.entries() {
                writeln!(s, "d {n} {r} {c} {v}").unwrap();
            }
        }
        writeln!(s, "end").unwrap();
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("complex text: {m}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some("complex v1") {
            return Err(bad("missing header"));
        }
        let mut field = None;
        let mut lo = None;
        let mut dims: Option<Vec<usize>> = None;
        let mut reliable = None;
        let mut entries: Vec<Vec<(usize, usize, String)>> = Vec::new();
        let mut ended = false;
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts[0] {
                "field" => field = Some(Field::from_flag(parts.get(1).ok_or_else(|| bad("field"))?)?),
                "lo" => lo = Some(parts.get(1).and_then(|v| v.parse().ok()).ok_or_else(|| bad("lo"))?),
                "dims" => {
                    let d: std::result::Result<Vec<usize>, _> = parts[1..].iter().map(|v| v.parse()).collect();
                    let d = d.map_err(|_| bad("dims"))?;
                    entries = vec![Vec::new(); d.len().saturating_sub(1)];
                    dims = Some(d);
                }
                "reliable" => {
                    reliable = Some(parts.get(1).and_then(|v| v.parse().ok()).ok_or_else(|| bad("reliable"))?)
                }
                "d" => {
                    if parts.len() != 5 {
                        return Err(bad("differential entry needs 4 fields"));
                    }
                    let n: i64 = parts[1].parse().map_err(|_| bad("degree"))?;
                    let lo = lo.ok_or_else(|| bad("lo before entries"))?;
                    let i = usize::try_from(n - lo).map_err(|_| bad("degree below lo"))?;
                    let r = parts[2].parse().map_err(|_| bad("row"))?;
                    let c = parts[3].parse().map_err(|_| bad("col"))?;
                    entries.get_mut(i).ok_or_else(|| bad("degree out of range"))?.push((r, c, parts[4].to_string()));
                }
                "end" => {
                    ended = true;
                    break;
                }
                other => return Err(bad(&format!("unknown record {other:?}"))),
            }
        }
        if !ended {
            return Err(bad("missing end marker"));
        }
        let field = field.ok_or_else(|| bad("missing field"))?;
        let dims = dims.ok_or_else(|| bad("missing dims"))?;
        let lo = lo.ok_or_else(|| bad("missing lo"))?;
        let mut diffs = Vec::new();
        for (i, es) in entries.into_iter().enumerate() {
            let trip: Result<Vec<_>> = es.into_iter().map(|(r, c, v)| Ok((r, c, field.parse(&v)?))).collect();
            diffs.push(SparseMatrix::from_triplets(dims[i + 1], dims[i], field, trip?)?);
        }
        let c = CochainComplex::new(field, GradedSpace::new(lo, dims), diffs)?;
        Ok(match reliable {
            Some(r) => c.with_reliable_up_to(r),
            None => c,
        })
    }

    /// Mapping cone of `f: A → B`: `cone^k = A^{k+1} ⊕ B^k`, `d(a,b) = (−da, f a + db)`.
    pub fn mapping_cone(f: &ChainMap) -> Result<CochainComplex> {
        let (a, b) = (&f.source, &f.target);
        let field = a.field;
        let lo = (a.lo() - 1).min(b.lo());
        let hi = (a.hi() - 1).max(b.hi());
        let dims: Vec<usize> = (lo..=hi).map(|k| a.dim(k + 1) + b.dim(k)).collect();
        let mut diffs = Vec::new();
        for k in lo..hi {
            let da = a.d(k + 1).neg();
            let fa = f.component(k + 1);
            let db = b.d(k);
            let za = SparseMatrix::zeros(a.dim(k + 2), b.dim(k), field);
            let top = SparseMatrix::hstack(&[&da, &za], a.dim(k + 2), field);
            let bot = SparseMatrix::hstack(&[&fa, &db], b.dim(k + 1), field);
            diffs.push(SparseMatrix::vstack(&[&top, &bot], a.dim(k + 1) + b.dim(k), field));
        }
        let c = CochainComplex::new(field, GradedSpace::new(lo, dims), diffs)?;
        let rel = match (a.reliable_up_to, b.reliable_up_to) {
            (Some(x), Some(y)) => Some((x - 1).min(y)),
            (Some(x), None) => Some(x - 1),
            (None, Some(y)) => Some(y),
            (None, None) => None,
        };
        Ok(match rel {
            Some(r) => c.with_reliable_up_to(r),
            None => c,
        })
    }
}

/// Degreewise matrices `f^n: A^n → B^n`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: CochainComplex,
    pub target: CochainComplex,
    /// `(degree, matrix)` pairs; missing degrees are zero.
    pub components: Vec<(i64, SparseMatrix)>,
}

impl ChainMap {
    pub fn identity(c: &CochainComplex) -> ChainMap {
        let components = (c.lo()..=c.hi())
            .map(|n| (n, SparseMatrix::identity(c.dim(n), c.field)))
            .collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn component(&self, n: i64) -> SparseMatrix {
        self.components
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.dim(n), self.source.dim(n), self.source.field))
    }
}

/// Outcome of [`verify_chain_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapCheck {
    pub ok: bool,
    pub first_failing_degree: Option<i64>,
}

/// Whether `f^{n+1}∘d = d∘f^n` in every degree where both sides are defined.
pub fn verify_chain_map(f: &ChainMap) -> Result<ChainMapCheck> {
    let (a, b) = (&f.source, &f.target);
    for (n, m) in &f.components {
        if m.rows() != b.dim(*n) || m.cols() != a.dim(*n) {
            return Err(Error::DimensionMismatch(format!(
                "component in degree {n} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                b.dim(*n),
                a.dim(*n)
            )));
        }
    }
    let lo = a.lo().max(b.lo());
    let mut hi = a.hi().min(b.hi());
    if let Some(r) = a.reliable_up_to {
        hi = hi.min(r);
    }
    if let Some(r) = b.reliable_up_to {
        hi = hi.min(r);
    }
    for n in (lo - 1)..=hi {
        let left = f.component(n + 1).mul(&a.d(n));
        let right = b.d(n).mul(&f.component(n));
        if left != right {
            return Ok(ChainMapCheck { ok: false, first_failing_degree: Some(n) });
        }
    }
    Ok(ChainMapCheck { ok: true, first_failing_degree: None })
}

/// Rank of the map `H^n(f): H^n(A) → H^n(B)`.
pub fn cohomology_map_rank(f: &ChainMap, n: i64) -> Result<usize> {
    let (a, b) = (&f.source, &f.target);
    let field = a.field;
    let cycles = linalg::kernel_basis(&a.d(n));
    let images: Vec<SparseVec> = {
        let fm = f.component(n);
        let cols = SparseMatrix::from_columns(a.dim(n), field, &cycles);
        let img = fm.mul(&cols).transpose();
        img.into_rows()
    };
    let boundaries = b.d(n - 1).transpose().into_rows();
    let stacked: Vec<SparseVec> = boundaries.iter().cloned().chain(images).collect();
    let with = SparseMatrix::from_rows(b.dim(n), field, stacked);
    let without = SparseMatrix::from_rows(b.dim(n), field, boundaries);
    Ok(linalg::rank(&with) - linalg::rank(&without))
}

/// First degree in `lo..=hi` where `f` fails to induce an isomorphism on cohomology.
pub fn quasi_isomorphism_failure(f: &ChainMap, lo: i64, hi: i64) -> Result<Option<i64>> {
    for n in lo..=hi {
        let ha = f.source.cohomology_dim(n)?;
        let hb = f.target.cohomology_dim(n)?;
        if ha != hb || cohomology_map_rank(f, n)? != hb {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// A graded endomorphism of a complex with fixed degree shift.
#[derive(Clone, Debug)]
pub struct Operator {
    pub degree_shift: i64,
    /// `(n, matrix C^n → C^{n+shift})`; missing degrees are zero.
    pub components: Vec<(i64, SparseMatrix)>,
}

impl Operator {
    pub fn component(&self, c: &CochainComplex, n: i64) -> SparseMatrix {
        self.components
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| SparseMatrix::zeros(c.dim(n + self.degree_shift), c.dim(n), c.field))
    }

    pub fn identity(c: &CochainComplex) -> Operator {
        Operator {
            degree_shift: 0,
            components: (c.lo()..=c.hi()).map(|n| (n, SparseMatrix::identity(c.dim(n), c.field))).collect(),
        }
    }

    fn check(&self, c: &CochainComplex) -> Result<()> {
        for (n, m) in &self.components {
            if m.cols() != c.dim(*n) || m.rows() != c.dim(n + self.degree_shift) {
                return Err(Error::DimensionMismatch(format!(
                    "operator component in degree {n} does not respect shift {}",
                    self.degree_shift
                )));
            }
        }
        Ok(())
    }
}

/// A subcomplex given by degreewise bases, plus its inclusion.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: CochainComplex,
    pub inclusion: ChainMap,
    pub bases: Vec<(i64, crate::linalg::Kernel)>,
}

/// Degreewise coordinates of `v` (in the ambient space) in a reduced kernel basis.
pub fn coordinates(k: &linalg::Kernel, v: &[(usize, crate::scalar::Scalar)]) -> SparseVec {
    let mut out = Vec::new();
    let mut j = 0;
    for (i, s) in v {
        while j < k.free_cols.len() && k.free_cols[j] < *i {
            j += 1;
        }
        if j < k.free_cols.len() && k.free_cols[j] == *i {
            out.push((j, s.clone()));
        }
    }
    out
}

/// The span of `∩ ker(op)` in each degree, checked to be closed under `d`.
pub fn joint_kernel_subcomplex(c: &CochainComplex, ops: &[Operator]) -> Result<Subcomplex> {
    for op in ops {
        op.check(c)?;
    }
    let field = c.field;
    let degrees: Vec<i64> = (c.lo()..=c.hi()).collect();
    let bases: Vec<(i64, linalg::Kernel)> = degrees
        .par_iter()
        .map(|&n| {
            let comps: Vec<SparseMatrix> = ops.iter().map(|op| op.component(c, n)).collect();
            let refs: Vec<&SparseMatrix> = comps.iter().collect();
            let stacked = SparseMatrix::vstack(&refs, c.dim(n), field);
            (n, linalg::kernel(&stacked))
        })
        .collect();
    let mut diffs = Vec::new();
    for w in bases.windows(2) {
        let (n, kn) = (&w[0].0, &w[0].1);
        let k1 = &w[1].1;
        let d = c.d(*n);
        let mut cols = Vec::with_capacity(kn.dim());
        for v in &kn.basis {
            let img = d.mul_vec(v);
            // Closure: the image must be reproduced by its own free coordinates.
            let coords = coordinates(k1, &img);
            let mut recon: SparseVec = Vec::new();
            for (j, s) in &coords {
                recon = crate::matrix::axpy(&recon, s, &k1.basis[*j]);
            }
            if recon != img {
                return Err(Error::NotClosedUnderDifferential(*n));
            }
            cols.push(coords);
        }
        diffs.push(SparseMatrix::from_columns(k1.dim(), field, &cols));
    }
    let space = GradedSpace::new(c.lo(), bases.iter().map(|(_, k)| k.dim()).collect());
    let mut sub = CochainComplex::new(field, space, diffs)?;
    if let Some(r) = c.reliable_up_to {
        sub = sub.with_reliable_up_to(r);
    }
    let components = bases
        .iter()
        .map(|(n, k)| (*n, k.matrix(c.dim(*n), field)))
        .collect();
    let inclusion = ChainMap { source: sub.clone(), target: c.clone(), components };
    Ok(Subcomplex { complex: sub, inclusion, bases })
}

/// Total complex of a bicomplex.
///
/// `rows[a]` is the row at auxiliary degree `a0 + a`, a complex in the
/// horizontal degree p; `vertical[a]` is a chain map `rows[a] → rows[a+1]`.
/// The total differential on the summand of bidegree (p, a) is
/// `d_row + (−1)^p d_col`; summands of `Tot^k` are ordered by ascending `a`.
pub fn totalize_bicomplex(a0: i64, rows: &[CochainComplex], vertical: &[ChainMap]) -> Result<CochainComplex> {
    if rows.is_empty() {
        return Err(Error::Validation("bicomplex without rows".into()));
    }
    if vertical.len() + 1 != rows.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows need {} vertical maps, got {}",
            rows.len(),
            rows.len() - 1,
            vertical.len()
        )));
    }
    let field = rows[0].field;
    for (a, v) in vertical.iter().enumerate() {
        if !verify_chain_map(v)?.ok {
            return Err(Error::VerificationFailed(format!(
                "vertical map out of row {} does not commute with the row differentials",
                a0 + a as i64
            )));
        }
    }
    let plo = rows.iter().map(|r| r.lo()).min().unwrap();
    let phi = rows.iter().map(|r| r.hi()).max().unwrap();
    let nrows = rows.len() as i64;
    let klo = plo + a0;
    let khi = phi + a0 + nrows - 1;
    // offsets[k][a] = start of summand (k − a, a) inside Tot^k.
    let summand = |k: i64, a: usize| rows[a].dim(k - a0 - a as i64);
    let mut dims = Vec::new();
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    for k in klo..=khi {
        let mut off = Vec::new();
        let mut acc = 0;
        for a in 0..rows.len() {
            off.push(acc);
            acc += summand(k, a);
        }
        offsets.push(off);
        dims.push(acc);
    }
    let mut diffs = Vec::new();
    for k in klo..khi {
        let ki = (k - klo) as usize;
        let mut trip = Vec::new();
        for a in 0..rows.len() {
            let p = k - a0 - a as i64;
            let src = offsets[ki][a];
            let dr = rows[a].d(p);
            let dst = offsets[ki + 1][a];
            for (r, c, v) in dr.entries() {
                trip.push((dst + r, src + c, v.clone()));
            }
            if a + 1 < rows.len() {
                let vm = vertical[a].component(p);
                let dst = offsets[ki + 1][a + 1];
                let neg = p.rem_euclid(2) == 1;
                for (r, c, v) in vm.entries() {
                    trip.push((dst + r, src + c, if neg { v.neg() } else { v.clone() }));
                }
            }
        }
        diffs.push(SparseMatrix::accumulate(dims[ki + 1], dims[ki], field, trip));
    }
    CochainComplex::new(field, GradedSpace::new(klo, dims), diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn cohomology_examples() {
        let c = CochainComplex::zero_differential(q(), GradedSpace::new(0, vec![1, 2, 1]));
        assert_eq!(c.cohomology_dims(0, 2).unwrap(), vec![1, 2, 1]);
        let acyc = CochainComplex::new(
            q(),
            GradedSpace::new(0, vec![1, 1]),
            vec![SparseMatrix::identity(1, q())],
        )
        .unwrap();
        assert_eq!(acyc.cohomology_dims(0, 1).unwrap(), vec![0, 0]);
        let koszul = CochainComplex::new(
            q(),
            GradedSpace::new(0, vec![1, 1]),
            vec![SparseMatrix::zeros(1, 1, q())],
        )
        .unwrap();
        assert_eq!(koszul.cohomology_dims(0, 1).unwrap(), vec![1, 1]);
    }

    #[test]
    fn rejects_nonzero_composite() {
        let i = SparseMatrix::identity(1, q());
        let r = CochainComplex::new(q(), GradedSpace::new(0, vec![1, 1, 1]), vec![i.clone(), i]);
        assert_eq!(r.unwrap_err(), Error::CompositionNotZero(0));
    }

    #[test]
    fn reliability_guard() {
        let c = CochainComplex::zero_differential(q(), GradedSpace::new(0, vec![1, 1, 1])).with_reliable_up_to(1);
        assert!(matches!(c.cohomology_dims(0, 2), Err(Error::TruncationInsufficient(_))));
        assert_eq!(c.cohomology_dims(0, 1).unwrap(), vec![1, 1]);
    }

    #[test]
    fn chain_map_checks() {
        let d = SparseMatrix::from_i64(q(), &[vec![1, 1]]);
        let c = CochainComplex::new(q(), GradedSpace::new(0, vec![2, 1]), vec![d]).unwrap();
        let id = ChainMap::identity(&c);
        assert!(verify_chain_map(&id).unwrap().ok);
        let mut bad = id.clone();
        bad.components[0].1 = SparseMatrix::from_i64(q(), &[vec![1, 0], vec![0, 2]]);
        let r = verify_chain_map(&bad).unwrap();
        assert!(!r.ok);
        assert_eq!(r.first_failing_degree, Some(0));
    }

    #[test]
    fn joint_kernel_examples() {
        let d = SparseMatrix::from_i64(q(), &[vec![1, 1]]);
        let c = CochainComplex::new(q(), GradedSpace::new(0, vec![2, 1]), vec![d]).unwrap();
        let s = joint_kernel_subcomplex(&c, &[]).unwrap();
        assert_eq!(s.complex.space().dims, vec![2, 1]);
        let s = joint_kernel_subcomplex(&c, &[Operator::identity(&c)]).unwrap();
        assert_eq!(s.complex.space().dims, vec![0, 0]);
        assert!(verify_chain_map(&s.inclusion).unwrap().ok);
    }

    #[test]
    fn bicomplex_examples() {
        let row = CochainComplex::new(
            q(),
            GradedSpace::new(0, vec![1, 1]),
            vec![SparseMatrix::zeros(1, 1, q())],
        )
        .unwrap();
        let one = totalize_bicomplex(0, std::slice::from_ref(&row), &[]).unwrap();
        assert_eq!(one, row);
        let v = ChainMap::identity(&row);
        let two = totalize_bicomplex(0, &[row.clone(), row.clone()], &[v]).unwrap();
        assert_eq!(two.cohomology_dims(two.lo(), two.hi()).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn text_round_trip_and_cone() {
        let d = SparseMatrix::from_i64(q(), &[vec![1, -1]]);
        let c = CochainComplex::new(q(), GradedSpace::new(-1, vec![2, 1]), vec![d]).unwrap();
        let back = CochainComplex::from_text(&c.to_text()).unwrap();
        assert_eq!(back, c);
        let cone = CochainComplex::mapping_cone(&ChainMap::identity(&c)).unwrap();
        assert!(cone.cohomology_dims(cone.lo(), cone.hi()).unwrap().iter().all(|&h| h == 0));
    }
}
