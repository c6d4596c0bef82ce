//! Exact sparse Gaussian elimination: rank, kernels, solving.
//!
//! Over ℚ rows are kept as primitive integer vectors and combined by
//! cross-multiplication, so no fractions appear until kernel vectors are
//! read off. Over 𝔽p pivots are scaled to one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::scalar::{Field, Int, Rat, Scalar};

type Row<E> = Vec<(usize, E)>;

trait RowArith {
    type E: Clone;
    fn load(&self, row: &[(usize, Scalar)]) -> Row<Self::E>;
    /// Eliminate `target[pos]` using `pivot`, whose leading column equals `target[pos].0`.
    fn reduce_at(&self, target: &Row<Self::E>, pos: usize, pivot: &Row<Self::E>) -> Row<Self::E>;
    fn normalize(&self, row: &mut Row<Self::E>);
    /// `-num/den` as a field element.
    fn neg_ratio(&self, num: &Self::E, den: &Self::E) -> Scalar;
}

struct ModP(u64);

impl RowArith for ModP {
    type E = u64;

    fn load(&self, row: &[(usize, Scalar)]) -> Row<u64> {
        row.iter()
            .map(|(j, v)| match v {
                Scalar::Mod { value, .. } => (*j, *value),
                Scalar::Rat(_) => panic!("rational entry in 𝔽p elimination"),
            })
            .collect()
    }

    fn reduce_at(&self, target: &Row<u64>, pos: usize, pivot: &Row<u64>) -> Row<u64> {
        let p = self.0;
        let f = p - target[pos].1;
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        out.extend_from_slice(&target[..pos]);
        let (mut i, mut j) = (pos + 1, 1);
        let a = &target;
        while i < a.len() || j < pivot.len() {
            if j == pivot.len() || (i < a.len() && a[i].0 < pivot[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || pivot[j].0 < a[i].0 {
                out.push((pivot[j].0, f * pivot[j].1 % p));
                j += 1;
            } else {
                let v = (a[i].1 + f * pivot[j].1) % p;
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    fn normalize(&self, row: &mut Row<u64>) {
        if let Some(&(_, lead)) = row.first() {
            if lead != 1 {
                let inv = crate::scalar::inv_mod(lead, self.0);
                for e in row.iter_mut() {
                    e.1 = e.1 * inv % self.0;
                }
            }
        }
    }

    fn neg_ratio(&self, num: &u64, den: &u64) -> Scalar {
        let p = self.0;
        let v = num * crate::scalar::inv_mod(*den, p) % p;
        Scalar::Mod { value: (p - v) % p, p }
    }
}

struct Integers;

impl RowArith for Integers {
    type E = Int;

    fn load(&self, row: &[(usize, Scalar)]) -> Row<Int> {
        let rats: Vec<&Rat> = row
            .iter()
            .map(|(_, v)| match v {
                Scalar::Rat(r) => r,
                Scalar::Mod { .. } => panic!("modular entry in rational elimination"),
            })
            .collect();
        let mut lcm = BigInt::one();
        for r in &rats {
            if !matches!(r, Rat::Small(_, 1)) {
                lcm = lcm.lcm(&r.denom());
            }
        }
        let mut out: Row<Int> = row
            .iter()
            .zip(rats)
            .map(|((j, _), r)| match r {
                Rat::Small(a, 1) if lcm.is_one() => (*j, Int::S(*a)),
                _ => (*j, Int::from_rat_scaled(r, &lcm)),
            })
            .collect();
        self.normalize(&mut out);
        out
    }

    fn reduce_at(&self, target: &Row<Int>, pos: usize, pivot: &Row<Int>) -> Row<Int> {
        let t = &target[pos].1;
        let p = &pivot[0].1;
        let (ps, ts) = if p.is_unit() || t.is_unit() {
            (p.clone(), t.clone())
        } else {
            let g = p.gcd(t);
            (p.div_exact(&g), t.div_exact(&g))
        };
        let zero = Int::S(0);
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        for (c, v) in &target[..pos] {
            out.push((*c, Int::cross(&ps, v, &zero, &zero)));
        }
        let a = target;
        let (mut i, mut j) = (pos + 1, 1);
        while i < a.len() || j < pivot.len() {
            if j == pivot.len() || (i < a.len() && a[i].0 < pivot[j].0) {
                out.push((a[i].0, Int::cross(&ps, &a[i].1, &zero, &zero)));
                i += 1;
            } else if i == a.len() || pivot[j].0 < a[i].0 {
                out.push((pivot[j].0, Int::cross(&zero, &zero, &ts, &pivot[j].1)));
                j += 1;
            } else {
                let v = Int::cross(&ps, &a[i].1, &ts, &pivot[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.normalize(&mut out);
        out
    }

    fn normalize(&self, row: &mut Row<Int>) {
        if row.is_empty() {
            return;
        }
        let mut g = Int::S(0);
        for (_, v) in row.iter() {
            g = g.gcd(v);
            if g.is_unit() {
                break;
            }
        }
        let flip = row[0].1.is_negative();
        if !g.is_unit() {
            for e in row.iter_mut() {
                e.1 = e.1.div_exact(&g);
            }
        }
        if flip {
            for e in row.iter_mut() {
                e.1 = e.1.neg();
            }
        }
    }

    fn neg_ratio(&self, num: &Int, den: &Int) -> Scalar {
        Scalar::Rat(num.neg().to_rat_over(den))
    }
}

const NONE: u32 = u32::MAX;

/// Forward elimination. Returns pivot rows (in insertion order) and the
/// column → pivot-row index map. Stops once `stop_at` pivots exist.
fn forward<A: RowArith>(
    a: &A,
    m: &SparseMatrix,
    stop_at: usize,
) -> (Vec<Row<A::E>>, Vec<u32>) {
    let mut order: Vec<usize> = (0..m.rows()).filter(|&r| !m.row(r).is_empty()).collect();
    order.sort_by_key(|&r| (m.row(r).len(), m.row(r)[0].0));
    let mut piv = vec![NONE; m.cols()];
    let mut pivots: Vec<Row<A::E>> = Vec::new();
    for r in order {
        if pivots.len() >= stop_at {
            break;
        }
        let mut row = a.load(m.row(r));
        while let Some(&(c, _)) = row.first() {
            let pi = piv[c];
            if pi == NONE {
                a.normalize(&mut row);
                piv[c] = pivots.len() as u32;
                pivots.push(row);
                break;
            }
            row = a.reduce_at(&row, 0, &pivots[pi as usize]);
        }
    }
    (pivots, piv)
}

/// Back-substitute so every pivot row is zero at all other pivot columns.
fn reduce_fully<A: RowArith>(a: &A, pivots: &mut [Row<A::E>], piv: &[u32]) {
    let mut by_col: Vec<usize> = (0..pivots.len()).collect();
    by_col.sort_by_key(|&i| std::cmp::Reverse(pivots[i][0].0));
    for &i in &by_col {
        let mut row = std::mem::take(&mut pivots[i]);
        let mut pos = 1;
        while pos < row.len() {
            let pi = piv[row[pos].0];
            if pi == NONE {
                pos += 1;
            } else {
                row = a.reduce_at(&row, pos, &pivots[pi as usize]);
            }
        }
        pivots[i] = row;
    }
}

fn kernel_from_rref<A: RowArith>(
    a: &A,
    pivots: &[Row<A::E>],
    piv: &[u32],
    ncols: usize,
    field: Field,
) -> Kernel {
    let free_cols: Vec<usize> = (0..ncols).filter(|&c| piv[c] == NONE).collect();
    let mut slot = vec![usize::MAX; ncols];
    for (k, &f) in free_cols.iter().enumerate() {
        slot[f] = k;
    }
    let mut basis: Vec<SparseVec> = free_cols.iter().map(|&f| vec![(f, field.one())]).collect();
    for row in pivots {
        let (p, lead) = (&row[0].0, &row[0].1);
        for (f, v) in &row[1..] {
            basis[slot[*f]].push((*p, a.neg_ratio(v, lead)));
        }
    }
    for v in basis.iter_mut() {
        v.sort_by_key(|e| e.0);
    }
    let mut pivot_cols: Vec<usize> = pivots.iter().map(|r| r[0].0).collect();
    pivot_cols.sort_unstable();
    Kernel { basis, free_cols, pivot_cols }
}

/// Right null space in reduced form.
///
/// `basis[k]` has a one at `free_cols[k]` and zeros at every other free
/// column, so the coordinates of any kernel vector in this basis are its
/// entries at the free columns.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub basis: Vec<SparseVec>,
    pub free_cols: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as the columns of a matrix.
    pub fn matrix(&self, ambient: usize, field: Field) -> SparseMatrix {
        SparseMatrix::from_columns(ambient, field, &self.basis)
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let t;
    let m = if m.cols() > m.rows() {
        t = m.transpose();
        &t
    } else {
        m
    };
    let stop = m.cols();
    match m.field() {
        Field::Prime(p) => forward(&ModP(p), m, stop).0.len(),
        Field::Rational => forward(&Integers, m, stop).0.len(),
    }
}

pub fn kernel(m: &SparseMatrix) -> Kernel {
    let field = m.field();
    match field {
        Field::Prime(p) => {
            let a = ModP(p);
            let (mut pv, piv) = forward(&a, m, usize::MAX);
            reduce_fully(&a, &mut pv, &piv);
            kernel_from_rref(&a, &pv, &piv, m.cols(), field)
        }
        Field::Rational => {
            let a = Integers;
            let (mut pv, piv) = forward(&a, m, usize::MAX);
            reduce_fully(&a, &mut pv, &piv);
            kernel_from_rref(&a, &pv, &piv, m.cols(), field)
        }
    }
}

pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    kernel(m).basis
}

/// Columns that are not pivots of a row echelon form of `m`.
///
/// Every vector of `ker m` is determined by its entries on these columns.
pub fn free_columns(m: &SparseMatrix) -> Vec<usize> {
    let piv = match m.field() {
        Field::Prime(p) => forward(&ModP(p), m, usize::MAX).1,
        Field::Rational => forward(&Integers, m, usize::MAX).1,
    };
    (0..m.cols()).filter(|&c| piv[c] == NONE).collect()
}

/// `dim ker(d_out) − rank(d_in)`, after checking `d_out·d_in = 0`.
pub fn subquotient_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch(format!(
            "d_in lands in dimension {}, d_out starts from {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::CompositionNotZero(0));
    }
    Ok(d_out.cols() - rank(d_out) - rank(d_in))
}

/// A solution of `m·x = b`, if one exists.
pub fn solve(m: &SparseMatrix, b: &[(usize, Scalar)]) -> Option<SparseVec> {
    let field = m.field();
    let col = SparseMatrix::from_columns(m.rows(), field, &[b.to_vec()]);
    let aug = SparseMatrix::hstack(&[m, &col], m.rows(), field);
    let k = kernel(&aug);
    let last = m.cols();
    let idx = k.free_cols.iter().position(|&c| c == last)?;
    let v = &k.basis[idx];
    Some(
        v.iter()
            .filter(|e| e.0 != last)
            .map(|(j, s)| (*j, s.neg()))
            .collect(),
    )
}

/// Whether the columns of `vs` are linearly independent.
pub fn independent(vs: &[SparseVec], ambient: usize, field: Field) -> bool {
    rank(&SparseMatrix::from_rows(ambient, field, vs.to_vec())) == vs.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_i64(Field::Rational, rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(0, 0, Field::Rational)), 0);
        assert_eq!(rank(&SparseMatrix::identity(3, Field::Rational)), 3);
        assert_eq!(rank(&q(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(2, Field::Rational)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3, Field::Rational)).len(), 3);
        let f2 = Field::Prime(2);
        let k = kernel_basis(&SparseMatrix::from_i64(f2, &[vec![1, 1]]));
        assert_eq!(k, vec![vec![(0, f2.one()), (1, f2.one())]]);
    }

    #[test]
    fn subquotient_examples() {
        let f = Field::Rational;
        let n = 4;
        assert_eq!(
            subquotient_dim(&SparseMatrix::zeros(n, n, f), &SparseMatrix::zeros(n, n, f)).unwrap(),
            n
        );
        assert_eq!(
            subquotient_dim(&SparseMatrix::identity(n, f), &SparseMatrix::zeros(n, n, f)).unwrap(),
            0
        );
        assert_eq!(
            subquotient_dim(&SparseMatrix::zeros(2, 0, f), &q(&[vec![1, 1]])).unwrap(),
            1
        );
        assert_eq!(
            subquotient_dim(&SparseMatrix::identity(2, f), &q(&[vec![1, 1]])),
            Err(Error::CompositionNotZero(0))
        );
    }

    #[test]
    fn rational_entries_and_growth() {
        let f = Field::Rational;
        let h: Vec<Vec<Scalar>> = (0..6)
            .map(|i| (0..6).map(|j| Scalar::Rat(Rat::Small(1, (i + j + 1) as i64))).collect())
            .collect();
        let m = SparseMatrix::from_dense(f, &h, 6);
        assert_eq!(rank(&m), 6);
        let mut h5 = h.clone();
        h5[5] = h[0].iter().zip(&h[1]).map(|(a, b)| a.add(b)).collect();
        let m5 = SparseMatrix::from_dense(f, &h5, 6);
        assert_eq!(rank(&m5), 5);
        let k = kernel_basis(&m5.transpose());
        assert_eq!(k.len(), 1);
        assert!(m5.transpose().mul_vec(&k[0]).is_empty());
    }

    #[test]
    fn solve_finds_preimages() {
        let m = q(&[vec![1, 2, 0], vec![0, 1, 1]]);
        let f = Field::Rational;
        let b = vec![(0, f.from_i64(3)), (1, f.from_i64(5))];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let m2 = q(&[vec![1, 1], vec![1, 1]]);
        assert!(solve(&m2, &[(0, f.one())]).is_none());
    }
}
