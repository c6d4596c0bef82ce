//! Lie algebras over the ground field, Chevalley–Eilenberg complexes with
//! contraction and Lie derivative, the cone `C𝔤`, the monad `V ↦ Alt(𝔤, V)`
//! on `C𝔤`-module complexes, and infinitesimal equivariant cohomology by two routes.

use std::sync::Arc;

use crate::complex::{CochainComplex, GradedSpace};
use crate::cosimplicial::{normalized_total, UNBOUNDED};
use crate::dga::{self, CartanComplex, CommAlgebra, DgAlgebra};
use crate::error::{Error, Result};
use crate::exterior::{AltDifferential, AltLayout, Exterior};
use crate::linalg;
use crate::matrix::{canonical, SparseMatrix, SparseVec};
use crate::monad::{dual_standard_construction, Monad, MonadObject, DEFAULT_SIZE_LIMIT};
use crate::scalar::{Field, Scalar};

/// A finite-dimensional Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    name: String,
    field: Field,
    c: Vec<Vec<SparseVec>>,
}

impl LieAlgebra {
    /// From brackets of pairs; `[e_j, e_i]` defaults to `−[e_i, e_j]` and
    /// unlisted pairs bracket to zero.
    pub fn from_brackets(name: &str, field: Field, dim: usize, brackets: &[(usize, usize, SparseVec)]) -> Result<Self> {
        let mut c: Vec<Vec<Option<SparseVec>>> = vec![vec![None; dim]; dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::DimensionMismatch(format!("bracket ({i},{j}) outside dimension {dim}")));
            }
            if c[*i][*j].is_some() {
                return Err(Error::Validation(format!("bracket ({i},{j}) given twice")));
            }
            c[*i][*j] = Some(canonical(v.clone()));
        }
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i][j] = match (&c[i][j], &c[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => w.iter().map(|(k, s)| (*k, s.neg())).collect(),
                    (None, None) => Vec::new(),
                };
            }
        }
        LieAlgebra::from_table(name, field, table)
    }

    /// From the full table `c[i][j] = [e_i, e_j]`, validating antisymmetry and Jacobi.
    pub fn from_table(name: &str, field: Field, c: Vec<Vec<SparseVec>>) -> Result<Self> {
        let n = c.len();
        if c.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("bracket table is not {n}x{n}")));
        }
        if c.iter().flatten().flatten().any(|(_, s)| s.field() != field) {
            return Err(Error::Validation(format!("structure constants not over {field}")));
        }
        for i in 0..n {
            for j in i..n {
                let neg: SparseVec = c[j][i].iter().map(|(k, s)| (*k, s.neg())).collect();
                if c[i][j] != neg {
                    return Err(Error::AntisymmetryFailure(i, j));
                }
            }
        }
        let g = LieAlgebra { name: name.to_string(), field, c };
        g.check_jacobi()?;
        Ok(g)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let e = |k: usize| vec![(k, self.field.one())];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket_vec(&e(i), &self.c[j][k]);
                    let b = self.bracket_vec(&e(j), &self.c[k][i]);
                    let c = self.bracket_vec(&e(k), &self.c[i][j]);
                    if !canonical(a.into_iter().chain(b).chain(c).collect()).is_empty() {
                        return Err(Error::JacobiFailure(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(field: Field) -> Self {
        LieAlgebra { name: "0".into(), field, c: Vec::new() }
    }

    pub fn abelian(field: Field, n: usize) -> Self {
        LieAlgebra { name: format!("R^{n}"), field, c: vec![vec![Vec::new(); n]; n] }
    }

    /// `sl2` on the basis `e, f, h`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn sl2(field: Field) -> Self {
        let v = |k: usize, x: i64| vec![(k, field.from_i64(x))];
        LieAlgebra::from_brackets("sl2", field, 3, &[(0, 1, v(2, 1)), (2, 0, v(0, 2)), (2, 1, v(1, -2))])
            .expect("sl2")
    }

    /// Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg(field: Field) -> Self {
        LieAlgebra::from_brackets("heis3", field, 3, &[(0, 1, vec![(2, field.one())])]).expect("heisenberg")
    }

    /// Two-dimensional non-abelian algebra `[x, y] = y`.
    pub fn affine_line(field: Field) -> Self {
        LieAlgebra::from_brackets("aff1", field, 2, &[(0, 1, vec![(1, field.one())])]).expect("aff(1)")
    }

    /// Upper triangular 2×2 matrices on the basis `E11, E22, E12`.
    pub fn borel2(field: Field) -> Self {
        let one = field.one();
        LieAlgebra::from_brackets(
            "b2",
            field,
            3,
            &[(0, 2, vec![(2, one.clone())]), (1, 2, vec![(2, one.neg())])],
        )
        .expect("b2")
    }

    pub fn direct_sum(&self, o: &LieAlgebra) -> LieAlgebra {
        let (n, m) = (self.dim(), o.dim());
        let mut c = vec![vec![Vec::new(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                c[i][j] = self.c[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                c[n + i][n + j] = o.c[i][j].iter().map(|(k, s)| (k + n, s.clone())).collect();
            }
        }
        LieAlgebra { name: format!("{}+{}", self.name, o.name), field: self.field, c }
    }

    /// The same algebra on the basis `f_i = Σ_a p[a][i] e_a` (columns of `p`).
    pub fn change_basis(&self, p: &SparseMatrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n || linalg::rank(p) != n {
            return Err(Error::Validation("change of basis is not invertible".into()));
        }
        let cols = p.transpose().into_rows();
        let mut c = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = self.bracket_vec(&cols[i], &cols[j]);
                c[i][j] = linalg::solve(p, &v).expect("invertible change of basis");
            }
        }
        LieAlgebra::from_table(&format!("{}'", self.name), self.field, c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.c[i][j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.c[i][j].iter().find(|e| e.0 == k).map_or(self.field.zero(), |e| e.1.clone())
    }

    pub fn bracket_vec(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.mul(b);
                acc.extend(self.c[*i][*j].iter().map(|(k, s)| (*k, s.mul(&ab))));
            }
        }
        canonical(acc)
    }

    /// `ad(e_i)`.
    pub fn adjoint(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.dim(), self.field, &self.c[i])
    }

    /// `Σ_{i<j,k} c_{ij}^k D^k_{ij}`: the differential of `Λ𝔤*`, as `(c, i, j, c_{ij}^c)`.
    fn dual_bracket_terms(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, s) in &self.c[i][j] {
                    out.push((*k, i, j, s.clone()));
                }
            }
        }
        out
    }
}

/// A representation of a Lie algebra on a graded space, optionally a complex.
#[derive(Clone, Debug)]
pub struct LieModule {
    g: Arc<LieAlgebra>,
    degrees: Vec<i64>,
    d: Option<SparseMatrix>,
    rho: Vec<SparseMatrix>,
}

impl LieModule {
    /// Validate `ρ_{[x,y]} = [ρ_x, ρ_y]`, degrees, and `d` if present.
    pub fn new(g: Arc<LieAlgebra>, degrees: Vec<i64>, d: Option<SparseMatrix>, rho: Vec<SparseMatrix>) -> Result<Self> {
        let n = degrees.len();
        let f = g.field();
        if rho.len() != g.dim() {
            return Err(Error::DimensionMismatch(format!("{} action matrices for dimension {}", rho.len(), g.dim())));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation("basis is not sorted by degree".into()));
        }
        for (k, r) in rho.iter().enumerate() {
            if r.rows() != n || r.cols() != n || r.field() != f {
                return Err(Error::DimensionMismatch(format!("action matrix {k} has the wrong shape")));
            }
            if r.entries().any(|(a, b, _)| degrees[a] != degrees[b]) {
                return Err(Error::ActionLaw(format!("action of e{k} does not preserve degree")));
            }
        }
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = combine(&rho, g.bracket(i, j), n, f);
                if lhs != rho[i].commutator(&rho[j]) {
                    return Err(Error::ActionLaw(format!("ρ([e{i}, e{j}]) ≠ [ρ(e{i}), ρ(e{j})]")));
                }
            }
        }
        if let Some(d) = &d {
            if d.rows() != n || d.cols() != n || d.entries().any(|(a, b, _)| degrees[a] != degrees[b] + 1) {
                return Err(Error::DimensionMismatch("differential does not raise degree by one".into()));
            }
            if !d.mul(d).is_zero() {
                return Err(Error::CompositionNotZero(degrees.first().copied().unwrap_or(0)));
            }
            if let Some(k) = rho.iter().position(|r| !r.commutator(d).is_zero()) {
                return Err(Error::ActionLaw(format!("action of e{k} does not commute with d")));
            }
        }
        Ok(LieModule { g, degrees, d, rho })
    }

    pub fn trivial(g: Arc<LieAlgebra>, dim: usize) -> Self {
        let f = g.field();
        let rho = vec![SparseMatrix::zeros(dim, dim, f); g.dim()];
        LieModule { g, degrees: vec![0; dim], d: None, rho }
    }

    pub fn adjoint(g: Arc<LieAlgebra>) -> Self {
        let rho = (0..g.dim()).map(|i| g.adjoint(i)).collect();
        LieModule::new(g.clone(), vec![0; g.dim()], None, rho).expect("adjoint representation")
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn action(&self) -> &[SparseMatrix] {
        &self.rho
    }

    /// Dimension of `{v : ρ_k v = 0 for all k}` in degree 0, among cocycles if `d` is present.
    pub fn invariant_dim(&self) -> usize {
        let f = self.g.field();
        let mut ops: Vec<&SparseMatrix> = self.rho.iter().collect();
        if let Some(d) = &self.d {
            ops.push(d);
        }
        linalg::kernel(&SparseMatrix::vstack(&ops, self.dim(), f)).dim()
    }
}

fn combine(ops: &[SparseMatrix], coeffs: &[(usize, Scalar)], n: usize, f: Field) -> SparseMatrix {
    coeffs.iter().fold(SparseMatrix::zeros(n, n, f), |acc, (k, s)| acc.add(&ops[*k].scale(s)))
}

/// Precomputed exterior algebra `Λ𝔤*` with its operators.
#[derive(Clone, Debug)]
struct Forms {
    ext: Exterior,
    bracket: Vec<(usize, usize, usize, Scalar)>,
    contraction: Vec<SparseMatrix>,
    coadjoint: Vec<SparseMatrix>,
}

impl Forms {
    fn new(g: &LieAlgebra) -> Result<Self> {
        let f = g.field();
        let ext = Exterior::new(g.dim())?;
        let bracket = g.dual_bracket_terms();
        let mut d = SparseMatrix::zeros(ext.len(), ext.len(), f);
        for (c, i, j, s) in &bracket {
            d = d.add(&ext.replacement(*c, *i, *j, f).scale(s));
        }
        let contraction: Vec<SparseMatrix> = (0..g.dim()).map(|k| ext.contraction(k, f)).collect();
        let coadjoint = contraction.iter().map(|i| d.anticommutator(i)).collect();
        Ok(Forms { ext, bracket, contraction, coadjoint })
    }

    /// `Alt(𝔤, W)` through total degree `cap` for a 𝔤-complex `W`.
    fn alt(&self, inner: &GradedSpace, cap: i64, rho: &[SparseMatrix], d: Option<&SparseMatrix>, f: Field) -> (AltLayout, CartanComplex) {
        let layout = AltLayout::new(&self.ext, inner, cap);
        let wdim = inner.total();
        let bracket = self
            .bracket
            .iter()
            .map(|(c, i, j, s)| (*c, *i, *j, SparseMatrix::identity(wdim, f).scale(s)))
            .collect();
        let d = AltDifferential { bracket, action: rho, inner_d: d }.build(&self.ext, &layout, f);
        let iota = self.contraction.iter().map(|i| layout.tensor(&self.ext, i, None, false)).collect();
        let id = SparseMatrix::identity(self.ext.len(), f);
        let lambda = self
            .coadjoint
            .iter()
            .zip(rho)
            .map(|(l, r)| layout.tensor(&self.ext, l, None, false).add(&layout.tensor(&self.ext, &id, Some(r), false)))
            .collect();
        let degrees = degrees_of(&layout.grading);
        (layout, CartanComplex { field: f, degrees, d, lambda, iota })
    }
}

fn degrees_of(g: &GradedSpace) -> Vec<i64> {
    g.dims.iter().enumerate().flat_map(|(i, &n)| std::iter::repeat_n(g.lo + i as i64, n)).collect()
}

/// A complex with a `C𝔤`-module structure: Lie derivatives `λ_k` and
/// contractions `i_k` satisfying the Cartan relations.
///
/// `cap` records the internal degree through which the object is complete.
#[derive(Clone, Debug)]
pub struct CgComplex {
    g: Arc<LieAlgebra>,
    space: CartanComplex,
    grading: GradedSpace,
    cap: i64,
}

impl CgComplex {
    /// Validate `d² = 0`, `[d, λ] = 0`, `[i, i]₊ = 0`, `d i + i d = λ`,
    /// `[λ_x, λ_y] = λ_{[x,y]}` and `[λ_x, i_y] = i_{[x,y]}`.
    pub fn new(g: Arc<LieAlgebra>, space: CartanComplex) -> Result<Self> {
        if space.lambda.len() != g.dim() {
            return Err(Error::DimensionMismatch(format!("{} operators for a Lie algebra of dimension {}", space.lambda.len(), g.dim())));
        }
        if space.field != g.field() {
            return Err(Error::Validation(format!("complex over {}, Lie algebra over {}", space.field, g.field())));
        }
        let grading = space.grading();
        let c = CgComplex { g, space, grading, cap: UNBOUNDED };
        c.check()?;
        Ok(c)
    }

    /// `R^dim` in degree 0 with every operator zero.
    pub fn trivial(g: Arc<LieAlgebra>, dim: usize) -> Self {
        let f = g.field();
        let z = SparseMatrix::zeros(dim, dim, f);
        let space = CartanComplex {
            field: f,
            degrees: vec![0; dim],
            d: z.clone(),
            lambda: vec![z.clone(); g.dim()],
            iota: vec![z; g.dim()],
        };
        CgComplex { grading: space.grading(), g, space, cap: UNBOUNDED }
    }

    pub fn check(&self) -> Result<()> {
        self.space.check()?;
        let g = &self.g;
        let (n, f) = (self.space.dim(), g.field());
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let br = g.bracket(i, j);
                if self.space.lambda[i].commutator(&self.space.lambda[j]) != combine(&self.space.lambda, br, n, f) {
                    return Err(Error::VerificationFailed(format!("[λ_{i}, λ_{j}] ≠ λ of [e{i}, e{j}]")));
                }
                if self.space.lambda[i].commutator(&self.space.iota[j]) != combine(&self.space.iota, br, n, f) {
                    return Err(Error::VerificationFailed(format!("[λ_{i}, i_{j}] ≠ i of [e{i}, e{j}]")));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    pub fn space(&self) -> &CartanComplex {
        &self.space
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn complex(&self) -> Result<CochainComplex> {
        dga::complex_of(self.g.field(), &self.grading, &self.space.d)
    }

    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        let c = self.complex()?;
        c.cohomology_dims(c.lo(), c.hi())
    }
}

impl MonadObject for CgComplex {
    fn field(&self) -> Field {
        self.g.field()
    }

    fn grading(&self) -> &GradedSpace {
        &self.grading
    }

    fn truncate(&self, cap: i64) -> Self {
        let grading = self.grading.truncated(cap);
        let k = grading.total();
        let p = |m: &SparseMatrix| m.prefix(k, k);
        let space = CartanComplex {
            field: self.space.field,
            degrees: self.space.degrees[..k].to_vec(),
            d: p(&self.space.d),
            lambda: self.space.lambda.iter().map(p).collect(),
            iota: self.space.iota.iter().map(p).collect(),
        };
        CgComplex { g: self.g.clone(), space, grading, cap: self.cap.min(cap) }
    }

    fn invariant_operators(&self) -> Vec<SparseMatrix> {
        self.space.lambda.iter().chain(&self.space.iota).cloned().collect()
    }

    fn structure_maps(&self) -> Vec<SparseMatrix> {
        self.invariant_operators()
    }

    fn differential(&self) -> Option<SparseMatrix> {
        Some(self.space.d.clone())
    }

    fn describe(&self) -> String {
        format!("C{}-complex of dimension {}", self.g.name(), self.space.dim())
    }
}

/// The Chevalley–Eilenberg complex `Alt(𝔤, V)` with its contractions and Lie
/// derivatives; for a graded `V` with differential, the total complex.
pub fn cce_complex(g: &Arc<LieAlgebra>, v: &LieModule) -> Result<CgComplex> {
    if !Arc::ptr_eq(g, &v.g) && **g != *v.g {
        return Err(Error::Validation("module is over a different Lie algebra".into()));
    }
    let forms = Forms::new(g)?;
    let inner = dga::grading_of(&v.degrees);
    let (_, space) = forms.alt(&inner, UNBOUNDED, &v.rho, v.d.as_ref(), g.field());
    CgComplex::new(g.clone(), space).map_err(|e| Error::VerificationFailed(format!("Chevalley–Eilenberg complex: {e}")))
}

/// Contraction `i_X` on `Alt(𝔤, V)` for `X = Σ x_k e_k`, from the basis operators.
pub fn contraction(c: &CgComplex, x: &[(usize, Scalar)]) -> SparseMatrix {
    combine(&c.space.iota, x, c.space.dim(), c.g.field())
}

/// Lie derivative on `Alt(𝔤, V)` from its defining formula
/// `(λ_X ω)(Y_1, …) = X·ω(Y_1, …) − Σ_r ω(…, [X, Y_r], …)`, independent of `d`.
pub fn lie_derivative(g: &Arc<LieAlgebra>, v: &LieModule, x: &[(usize, Scalar)]) -> Result<SparseMatrix> {
    let f = g.field();
    let n = g.dim();
    let ext = Exterior::new(n)?;
    let layout = AltLayout::new(&ext, &dga::grading_of(&v.degrees), UNBOUNDED);
    let ad = combine(&(0..n).map(|i| g.adjoint(i)).collect::<Vec<_>>(), x, n, f);
    let coad = ext.linear_derivation(&ad.transpose().neg());
    let rho = combine(&v.rho, x, v.dim(), f);
    let id = SparseMatrix::identity(ext.len(), f);
    Ok(layout.tensor(&ext, &coad, None, false).add(&layout.tensor(&ext, &id, Some(&rho), false)))
}

/// A graded Lie algebra with a differential of degree +1.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLieAlgebra {
    pub field: Field,
    pub degrees: Vec<i64>,
    /// `bracket[a][b] = [x_a, x_b]`.
    pub bracket: Vec<Vec<SparseVec>>,
    pub d: SparseMatrix,
}

impl GradedLieAlgebra {
    fn sign(&self, a: usize, b: usize) -> Scalar {
        if self.degrees[a] * self.degrees[b] % 2 != 0 {
            self.field.one().neg()
        } else {
            self.field.one()
        }
    }

    pub fn bracket_vec(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.mul(b);
                acc.extend(self.bracket[*i][*j].iter().map(|(k, s)| (*k, s.mul(&ab))));
            }
        }
        canonical(acc)
    }

    /// Graded antisymmetry, graded Jacobi, `d² = 0`, and `d` a derivation of the bracket.
    pub fn check(&self) -> Result<()> {
        let n = self.degrees.len();
        let f = self.field;
        let e = |k: usize| vec![(k, f.one())];
        for a in 0..n {
            for b in 0..n {
                let ab = &self.bracket[a][b];
                if ab.iter().any(|(k, _)| self.degrees[*k] != self.degrees[a] + self.degrees[b]) {
                    return Err(Error::Validation(format!("[x{a}, x{b}] is not homogeneous")));
                }
                let s = self.sign(a, b).neg();
                let ba: SparseVec = self.bracket[b][a].iter().map(|(k, c)| (*k, c.mul(&s))).collect();
                if *ab != ba {
                    return Err(Error::AntisymmetryFailure(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.bracket_vec(&e(a), &self.bracket[b][c]);
                    let r1 = self.bracket_vec(&self.bracket[a][b], &e(c));
                    let r2 = self.bracket_vec(&e(b), &self.bracket[a][c]);
                    let rhs = crate::matrix::axpy(&r1, &self.sign(a, b), &r2);
                    if lhs != rhs {
                        return Err(Error::JacobiFailure(a, b, c));
                    }
                }
            }
        }
        if !self.d.mul(&self.d).is_zero() {
            return Err(Error::CompositionNotZero(self.degrees.first().copied().unwrap_or(0)));
        }
        if let Some((r, c, _)) = self.d.entries().find(|(r, c, _)| self.degrees[*r] != self.degrees[*c] + 1) {
            return Err(Error::Validation(format!("differential entry ({r},{c}) does not raise degree by one")));
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = self.d.mul_vec(&self.bracket[a][b]);
                let sa = if self.degrees[a] % 2 != 0 { f.one().neg() } else { f.one() };
                let rhs = crate::matrix::axpy(
                    &self.bracket_vec(&self.d.mul_vec(&e(a)), &e(b)),
                    &sa,
                    &self.bracket_vec(&e(a), &self.d.mul_vec(&e(b))),
                );
                if lhs != rhs {
                    return Err(Error::VerificationFailed(format!("d is not a derivation at (x{a}, x{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> Result<CochainComplex> {
        dga::complex_of(self.field, &dga::grading_of(&self.degrees), &self.d)
    }
}

/// The cone `C𝔤 = s𝔤 ⋊ 𝔤` on the basis `s e_0, …, s e_{n−1}` (degree −1)
/// followed by `e_0, …, e_{n−1}` (degree 0), with `d(s e_i) = e_i`.
pub fn cone(g: &LieAlgebra) -> Result<GradedLieAlgebra> {
    let n = g.dim();
    let f = g.field();
    let mut bracket = vec![vec![Vec::new(); 2 * n]; 2 * n];
    let shift = |v: &SparseVec, by: usize| -> SparseVec { v.iter().map(|(k, s)| (k + by, s.clone())).collect() };
    for i in 0..n {
        for j in 0..n {
            bracket[n + i][n + j] = shift(g.bracket(i, j), n);
            // [e_i, s e_j] = s[e_i, e_j] and [s e_j, e_i] = s[e_j, e_i].
            bracket[n + i][j] = g.bracket(i, j).clone();
            bracket[j][n + i] = g.bracket(j, i).clone();
        }
    }
    let d = SparseMatrix::from_triplets(2 * n, 2 * n, f, (0..n).map(|i| (n + i, i, f.one()))).expect("cone differential");
    let mut degrees = vec![-1; n];
    degrees.extend(vec![0; n]);
    let c = GradedLieAlgebra { field: f, degrees, bracket, d };
    c.check()?;
    let h = c.complex()?.cohomology_dims(-1, 0)?;
    if h != vec![0, 0] {
        return Err(Error::VerificationFailed(format!("cone is not acyclic: {h:?}")));
    }
    Ok(c)
}

/// `T(W) = Alt(𝔤, W)` with its `C𝔤`-structure, as a monad on `C𝔤`-complexes.
///
/// The unit sends `w` to `Σ_J e^{j_1}∧…∧e^{j_p} ⊗ i_{j_p}⋯i_{j_1} w`; the
/// multiplication keeps the outer form and the constant part of the inner one.
#[derive(Clone, Debug)]
pub struct AltMonad {
    g: Arc<LieAlgebra>,
    forms: Forms,
}

impl AltMonad {
    pub fn new(g: Arc<LieAlgebra>) -> Result<Self> {
        let forms = Forms::new(&g)?;
        Ok(AltMonad { g, forms })
    }

    fn layout(&self, x: &CgComplex) -> AltLayout {
        AltLayout::new(&self.forms.ext, &x.grading, x.cap)
    }
}

impl Monad for AltMonad {
    type Obj = CgComplex;

    fn name(&self) -> String {
        format!("Alt({}, -)", self.g.name())
    }

    fn apply(&self, x: &CgComplex) -> Result<CgComplex> {
        let (layout, space) =
            self.forms.alt(&x.grading, x.cap, &x.space.lambda, Some(&x.space.d), self.g.field());
        Ok(CgComplex { g: self.g.clone(), space, grading: layout.grading, cap: x.cap })
    }

    fn apply_morphism(&self, f: &SparseMatrix, src: &CgComplex, tgt: &CgComplex) -> SparseMatrix {
        let (ls, lt) = (self.layout(src), self.layout(tgt));
        let fcols = f.transpose().into_rows();
        let mut entries = Vec::new();
        for (col, &(m, w)) in ls.basis.iter().enumerate() {
            for (w2, a) in &fcols[w] {
                if let Some(r) = lt.index(m, *w2) {
                    entries.push((r, col, a.clone()));
                }
            }
        }
        SparseMatrix::accumulate(lt.dim(), ls.dim(), f.field(), entries)
    }

    fn unit(&self, x: &CgComplex) -> SparseMatrix {
        let field = self.g.field();
        let ext = &self.forms.ext;
        let layout = self.layout(x);
        // c[M] = i_{max M} c[M ∖ max M], c[∅] = id.
        let mut c: Vec<SparseMatrix> = Vec::with_capacity(ext.len());
        c.push(SparseMatrix::identity(x.space.dim(), field));
        for mi in 1..ext.len() {
            let els = ext.elements(mi);
            let top = *els.last().expect("nonempty monomial");
            let rest = ext.index(ext.mask(mi) & !(1 << top));
            c.push(x.space.iota[top].mul(&c[rest]));
        }
        let mut entries = Vec::new();
        for (mi, cm) in c.iter().enumerate() {
            for (w2, w, s) in cm.entries() {
                let r = layout.index(mi, w2).expect("unit stays in degree");
                entries.push((r, w, s.clone()));
            }
        }
        SparseMatrix::accumulate(layout.dim(), x.space.dim(), field, entries)
    }

    fn multiplication(&self, x: &CgComplex) -> SparseMatrix {
        let inner = self.layout(x);
        let outer = AltLayout::new(&self.forms.ext, &inner.grading, x.cap);
        let field = self.g.field();
        let entries = outer.basis.iter().enumerate().filter_map(|(col, &(m, y))| {
            let (m2, w) = inner.basis[y];
            (m2 == 0).then(|| (inner.index(m, w).expect("constant part stays in degree"), col, field.one()))
        });
        SparseMatrix::from_triplets(inner.dim(), outer.dim(), field, entries).expect("multiplication")
    }
}

/// `dim Ext^k_{(C𝔤,𝔤)}(R, V)` for `0 ≤ k ≤ max_degree`, from the invariant
/// normalized dual standard construction of [`AltMonad`].
pub fn equivariant_ext(g: &Arc<LieAlgebra>, v: &CgComplex, max_degree: usize) -> Result<Vec<usize>> {
    let m = AltMonad::new(g.clone())?;
    let top = max_degree as i64 + 1;
    let c = dual_standard_construction(&m, v, top, DEFAULT_SIZE_LIMIT)?;
    let total = normalized_total(&c.module, top, true)?;
    total.complex.cohomology_dims(0, max_degree as i64)
}

/// A commutative algebra on which a Lie algebra acts by derivations.
#[derive(Clone, Debug)]
pub struct ModuleAlgebra {
    pub algebra: CommAlgebra,
    pub action: Vec<SparseMatrix>,
}

impl ModuleAlgebra {
    /// Validate that each `ρ_k` is a derivation and `ρ` is a representation.
    pub fn new(g: &Arc<LieAlgebra>, algebra: CommAlgebra, action: Vec<SparseMatrix>) -> Result<Self> {
        let m = LieModule::new(g.clone(), vec![0; algebra.dim()], None, action)?;
        for (k, r) in m.rho.iter().enumerate() {
            if let Some((s, t)) = algebra.derivation_witness(r) {
                return Err(Error::AnchorNotDerivation { generator: k, witness: format!("product a{s}·a{t}") });
            }
        }
        Ok(ModuleAlgebra { algebra, action: m.rho })
    }

    /// `a` with the zero action.
    pub fn trivial(g: &LieAlgebra, algebra: CommAlgebra) -> Self {
        let n = algebra.dim();
        let action = vec![SparseMatrix::zeros(n, n, algebra.field()); g.dim()];
        ModuleAlgebra { algebra, action }
    }
}

/// The differential graded algebra `Alt(𝔤, a)` with `λ_k`, `i_k`.
pub fn alt_algebra(g: &Arc<LieAlgebra>, a: &ModuleAlgebra) -> Result<DgAlgebra> {
    let f = g.field();
    let forms = Forms::new(g)?;
    let inner = GradedSpace::new(0, vec![a.algebra.dim()]);
    let (layout, space) = forms.alt(&inner, UNBOUNDED, &a.action, None, f);
    let ext = &forms.ext;
    let n = layout.dim();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for (x, &(m1, s)) in layout.basis.iter().enumerate() {
        for (y, &(m2, t)) in layout.basis.iter().enumerate() {
            if let Some((m, neg)) = ext.wedge(m1, m2) {
                let prod = a.algebra.mul(&a.algebra.basis_vector(s), &a.algebra.basis_vector(t));
                mult[x][y] = canonical(
                    prod.into_iter()
                        .map(|(u, c)| (layout.index(m, u).expect("complete layout"), if neg { c.neg() } else { c }))
                        .collect(),
                );
            }
        }
    }
    let unit = canonical(a.algebra.unit().iter().map(|(u, c)| (layout.index(0, *u).expect("constants"), c.clone())).collect());
    let alg = DgAlgebra { space, mult, unit };
    alg.check().map_err(|e| Error::VerificationFailed(format!("Alt({}, a): {e}", g.name())))?;
    Ok(alg)
}

/// Equivariant cohomology through the cosimplicial algebra `Alt(𝔤, a)^{⊗(•+1)}`:
/// conormalize, take `C𝔤`-invariants, and return dimensions in degrees `0..=max_degree`.
/// Without `a`, the ground field is used.
pub fn cosimplicial_mc(g: &Arc<LieAlgebra>, a: Option<&ModuleAlgebra>, max_degree: usize) -> Result<Vec<usize>> {
    let ground;
    let a = match a {
        Some(a) => a,
        None => {
            ground = ModuleAlgebra::trivial(g, CommAlgebra::ground(g.field()));
            &ground
        }
    };
    let alg = alt_algebra(g, a)?;
    mc_cohomology(&alg, None, max_degree)
}

/// Invariant cohomology of [`dga::tensor_cosimplicial`] in degrees `0..=max_degree`.
pub fn mc_cohomology(alg: &DgAlgebra, passive: Option<&CartanComplex>, max_degree: usize) -> Result<Vec<usize>> {
    let top = max_degree as i64 + 1;
    let cs = dga::tensor_cosimplicial(alg, passive, top)?;
    let total = normalized_total(&cs, top, true)?;
    total.complex.cohomology_dims(0, max_degree as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::check_monad_laws;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn perturbed_constants_fail_jacobi() {
        let g = LieAlgebra::sl2(q());
        let mut c = g.c.clone();
        c[0][1] = vec![(2, q().from_i64(1)), (0, q().from_i64(1))];
        c[1][0] = vec![(2, q().from_i64(-1)), (0, q().from_i64(-1))];
        assert!(matches!(LieAlgebra::from_table("bad", q(), c.clone()), Err(Error::JacobiFailure(_, _, _))));
        c[1][0] = vec![(2, q().from_i64(-1))];
        assert_eq!(LieAlgebra::from_table("bad", q(), c), Err(Error::AntisymmetryFailure(0, 1)));
    }

    #[test]
    fn cce_of_sl2_and_abelian() {
        let g = Arc::new(LieAlgebra::sl2(q()));
        let c = cce_complex(&g, &LieModule::trivial(g.clone(), 1)).unwrap();
        assert_eq!(c.cohomology_dims().unwrap(), vec![1, 0, 0, 1]);
        let a = Arc::new(LieAlgebra::abelian(q(), 4));
        let c = cce_complex(&a, &LieModule::trivial(a.clone(), 1)).unwrap();
        assert_eq!(c.cohomology_dims().unwrap(), vec![1, 4, 6, 4, 1]);
        let ad = cce_complex(&g, &LieModule::adjoint(g.clone())).unwrap();
        assert_eq!(ad.cohomology_dims().unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn cone_is_acyclic_and_brackets_vanish_on_suspension() {
        let g = LieAlgebra::sl2(q());
        let c = cone(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(c.bracket[i][j].is_empty());
            }
        }
    }

    #[test]
    fn alt_monad_laws_and_dimensions() {
        for g in [LieAlgebra::abelian(q(), 1), LieAlgebra::affine_line(q()), LieAlgebra::zero(q())] {
            let g = Arc::new(g);
            let m = AltMonad::new(g.clone()).unwrap();
            let v = CgComplex::trivial(g.clone(), 1);
            check_monad_laws(&m, &v, 100_000).unwrap();
            let tv = m.apply(&v).unwrap();
            tv.check().unwrap();
            assert_eq!(tv.space.dim(), 1 << g.dim());
            let ttv = m.apply(&tv).unwrap();
            ttv.check().unwrap();
        }
    }

    #[test]
    fn equivariant_ext_abelian_line() {
        let g = Arc::new(LieAlgebra::abelian(q(), 1));
        let v = CgComplex::trivial(g.clone(), 1);
        assert_eq!(equivariant_ext(&g, &v, 4).unwrap(), vec![1, 0, 1, 0, 1]);
        assert_eq!(cosimplicial_mc(&g, None, 4).unwrap(), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn zero_algebra_gives_ground_field() {
        let g = Arc::new(LieAlgebra::zero(q()));
        let v = CgComplex::trivial(g.clone(), 1);
        assert_eq!(equivariant_ext(&g, &v, 3).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(cosimplicial_mc(&g, None, 3).unwrap(), vec![1, 0, 0, 0]);
    }
}
