//! Row-major sparse matrices over a [`Field`].

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<SparseVec>,
}

/// Scatter accumulator reused across rows of a product.
struct Accum {
    slots: Vec<Option<Scalar>>,
    touched: Vec<usize>,
}

impl Accum {
    fn new(n: usize) -> Self {
        Accum { slots: vec![None; n], touched: Vec::new() }
    }

    fn add(&mut self, i: usize, v: Scalar) {
        match &mut self.slots[i] {
            Some(s) => *s = s.add(&v),
            slot @ None => {
                *slot = Some(v);
                self.touched.push(i);
            }
        }
    }

    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            if let Some(s) = self.slots[i].take() {
                if !s.is_zero() {
                    out.push((i, s));
                }
            }
        }
        self.touched.clear();
        out
    }
}

/// Sum of two sparse vectors, `a + c*b`.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        SparseMatrix { rows, cols, field, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let one = field.one();
        let data = (0..n).map(|i| vec![(i, one.clone())]).collect();
        SparseMatrix { rows: n, cols: n, field, data }
    }

    /// Build from triplets; rejects duplicates, out-of-range indices and stored zeros.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: Field,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
            if v.field() != field {
                return Err(Error::Validation(format!("entry ({r},{c}) is over {}", v.field())));
            }
            if v.is_zero() {
                return Err(Error::Validation(format!("stored zero at ({r},{c})")));
            }
            data[r].push((c, v));
        }
        for (r, row) in data.iter_mut().enumerate() {
            row.sort_by_key(|e| e.0);
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::Validation(format!("duplicate entry ({r},{})", w[0].0)));
            }
        }
        Ok(SparseMatrix { rows, cols, field, data })
    }

    /// Build by summing possibly repeated triplets; zeros are dropped.
    pub fn accumulate(
        rows: usize,
        cols: usize,
        field: Field,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            debug_assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            data[r].push((c, v));
        }
        for row in data.iter_mut() {
            *row = canonical(std::mem::take(row));
        }
        SparseMatrix { rows, cols, field, data }
    }

    /// Build from already-canonical rows (sorted, no zeros).
    pub fn from_rows(cols: usize, field: Field, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| is_canonical(r, cols)));
        SparseMatrix { rows: data.len(), cols, field, data }
    }

    /// Build from canonical columns.
    pub fn from_columns(rows: usize, field: Field, cols: &[SparseVec]) -> Self {
        SparseMatrix::from_rows(rows, field, cols.to_vec()).transpose()
    }

    pub fn from_i64(field: Field, dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        SparseMatrix::accumulate(
            rows,
            cols,
            field,
            dense.iter().enumerate().flat_map(|(r, row)| {
                row.iter().enumerate().map(move |(c, &v)| (r, c, field.from_i64(v)))
            }),
        )
    }

    pub fn from_dense(field: Field, dense: &[Vec<Scalar>], cols: usize) -> Self {
        SparseMatrix::accumulate(
            dense.len(),
            cols,
            field,
            dense.iter().enumerate().flat_map(|(r, row)| {
                row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, field: self.field, data }
    }

    /// Exact product `self · b`.
    pub fn compose(&self, b: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        Ok(self.mul(b))
    }

    /// Product; panics on shape mismatch (internal use).
    pub fn mul(&self, b: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, b.rows, "shape mismatch in product");
        let cols = b.cols;
        let work = |acc: &mut Accum, row: &SparseVec| -> SparseVec {
            for (k, a) in row {
                for (j, v) in &b.data[*k] {
                    acc.add(*j, a.mul(v));
                }
            }
            acc.drain()
        };
        let data: Vec<SparseVec> = if self.nnz() > 20_000 {
            self.data.par_iter().map_init(|| Accum::new(cols), work).collect()
        } else {
            let mut acc = Accum::new(cols);
            self.data.iter().map(|r| work(&mut acc, r)).collect()
        };
        SparseMatrix { rows: self.rows, cols, field: self.field, data }
    }

    pub fn mul_vec(&self, v: &[(usize, Scalar)]) -> SparseVec {
        // Row-major: compute each row's dot product against v.
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let s = sparse_dot(row, v, self.field);
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        out
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        let one = self.field.one();
        let data = self.data.iter().zip(&o.data).map(|(a, b)| axpy(a, &one, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in difference");
        let m1 = self.field.one().neg();
        let data = self.data.iter().zip(&o.data).map(|(a, b)| axpy(a, &m1, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols, self.field);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v.mul(c))).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scale(&self.field.one().neg())
    }

    /// Rows and columns `[0, r) × [0, c)`.
    pub fn prefix(&self, r: usize, c: usize) -> SparseMatrix {
        assert!(r <= self.rows && c <= self.cols);
        let data = self.data[..r]
            .iter()
            .map(|row| row.iter().take_while(|e| e.0 < c).cloned().collect())
            .collect();
        SparseMatrix { rows: r, cols: c, field: self.field, data }
    }

    /// Rows `[r0, r1)` and columns `[c0, c1)`, reindexed from zero.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> SparseMatrix {
        let data = self.data[r0..r1]
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|e| e.0 >= c0 && e.0 < c1)
                    .map(|(j, v)| (j - c0, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: r1 - r0, cols: c1 - c0, field: self.field, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> SparseMatrix {
        let data = idx.iter().map(|&i| self.data[i].clone()).collect();
        SparseMatrix { rows: idx.len(), cols: self.cols, field: self.field, data }
    }

    /// Keep the listed columns (strictly increasing), renumbered in order.
    pub fn select_cols(&self, idx: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.cols];
        for (k, &c) in idx.iter().enumerate() {
            map[c] = k;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|e| map[e.0] != usize::MAX)
                    .map(|(j, v)| (map[*j], v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: idx.len(), field: self.field, data }
    }

    pub fn vstack(blocks: &[&SparseMatrix], cols: usize, field: Field) -> SparseMatrix {
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        SparseMatrix { rows: data.len(), cols, field, data }
    }

    pub fn hstack(blocks: &[&SparseMatrix], rows: usize, field: Field) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (r, row) in b.data.iter().enumerate() {
                data[r].extend(row.iter().map(|(j, v)| (j + off, v.clone())));
            }
            off += b.cols;
        }
        SparseMatrix { rows, cols: off, field, data }
    }

    pub fn block_diag(blocks: &[&SparseMatrix], field: Field) -> SparseMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut off = 0;
        for b in blocks {
            for row in &b.data {
                data.push(row.iter().map(|(j, v)| (j + off, v.clone())).collect());
            }
            off += b.cols;
        }
        SparseMatrix { rows, cols, field, data }
    }

    /// `I_n ⊗ self`: n diagonal copies.
    pub fn repeat_diag(&self, n: usize) -> SparseMatrix {
        let mut data = Vec::with_capacity(n * self.rows);
        for k in 0..n {
            let off = k * self.cols;
            for row in &self.data {
                data.push(row.iter().map(|(j, v)| (j + off, v.clone())).collect());
            }
        }
        SparseMatrix { rows: n * self.rows, cols: n * self.cols, field: self.field, data }
    }

    /// Kronecker product with row index `(i, k) ↦ i·o.rows + k`.
    pub fn kron(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut data = Vec::with_capacity(self.rows * o.rows);
        for row in &self.data {
            for orow in &o.data {
                let mut r = Vec::with_capacity(row.len() * orow.len());
                for (j, a) in row {
                    for (l, b) in orow {
                        r.push((j * o.cols + l, a.mul(b)));
                    }
                }
                data.push(r);
            }
        }
        SparseMatrix { rows: self.rows * o.rows, cols: self.cols * o.cols, field: self.field, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Commutator `self·o − o·self`.
    pub fn commutator(&self, o: &SparseMatrix) -> SparseMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// Anticommutator `self·o + o·self`.
    pub fn anticommutator(&self, o: &SparseMatrix) -> SparseMatrix {
        self.mul(o).add(&o.mul(self))
    }

    /// First index where `self` and `o` differ, for diagnostics.
    pub fn first_difference(&self, o: &SparseMatrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Some((usize::MAX, usize::MAX));
        }
        for (r, (a, b)) in self.data.iter().zip(&o.data).enumerate() {
            if a != b {
                let d = self.sub(o);
                let c = d.data[r].first().map_or(0, |e| e.0);
                return Some((r, c));
            }
        }
        None
    }
}

fn is_canonical(r: &[(usize, Scalar)], cols: usize) -> bool {
    r.windows(2).all(|w| w[0].0 < w[1].0) && r.iter().all(|e| e.0 < cols && !e.1.is_zero())
}

/// Sort by index, merge duplicates, drop zeros.
pub fn canonical(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, s) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = last.1.add(&s),
            _ => out.push((i, s)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn sparse_dot(a: &[(usize, Scalar)], b: &[(usize, Scalar)], field: Field) -> Scalar {
    let mut s = field.zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s = s.add(&a[i].1.mul(&b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    s
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        if self.rows <= 16 && self.cols <= 16 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  nnz = {}", self.nnz())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_shear() {
        let q = Field::Rational;
        let m = SparseMatrix::from_i64(q, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.compose(&m).unwrap(), SparseMatrix::from_i64(q, &[vec![1, 2], vec![0, 1]]));
        let i = SparseMatrix::identity(2, q);
        assert_eq!(i.compose(&m).unwrap(), m);
        let z = SparseMatrix::zeros(2, 3, q);
        assert!(m.compose(&z).unwrap().is_zero());
        assert!(z.compose(&m).is_err());
    }

    #[test]
    fn triplets_are_validated() {
        let q = Field::Rational;
        let one = q.one();
        assert!(SparseMatrix::from_triplets(2, 2, q, [(0, 0, one.clone()), (0, 0, one.clone())]).is_err());
        assert!(SparseMatrix::from_triplets(2, 2, q, [(2, 0, one.clone())]).is_err());
        assert!(SparseMatrix::from_triplets(2, 2, q, [(0, 0, q.zero())]).is_err());
    }

    #[test]
    fn kron_and_blocks() {
        let q = Field::Rational;
        let a = SparseMatrix::from_i64(q, &[vec![1, 2], vec![3, 4]]);
        let i2 = SparseMatrix::identity(2, q);
        assert_eq!(i2.kron(&a), a.repeat_diag(2));
        assert_eq!(SparseMatrix::block_diag(&[&a, &a], q), a.repeat_diag(2));
        let big = i2.kron(&a);
        assert_eq!(big.block(2, 4, 2, 4), a);
        assert_eq!(a.transpose().transpose(), a);
    }
}
