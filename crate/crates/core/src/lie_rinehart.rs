//! Lie–Rinehart algebras `(A, L)` with `A` finite-dimensional and `L` free
//! over `A`: validation, comorphisms, products and the diagonal,
//! Maurer–Cartan algebras `Alt_A(L, M)`, extensions and their cones, the
//! twisted complex `N ⊗_A Λ_A[sL']`, and equivariant cohomology.

use std::sync::Arc;

use crate::complex::{CochainComplex, GradedSpace};
use crate::dga::{CartanComplex, CommAlgebra, DgAlgebra};
use crate::error::{Error, Result};
use crate::exterior::{sort_sign, AltDifferential, AltLayout, Exterior};
use crate::lie::{GradedLieAlgebra, LieAlgebra, ModuleAlgebra};
use crate::linalg;
use crate::matrix::{canonical, SparseMatrix, SparseVec};
use crate::scalar::{Field, Scalar};

fn scaled(v: &[(usize, Scalar)], s: &Scalar) -> SparseVec {
    canonical(v.iter().map(|(k, c)| (*k, c.mul(s))).collect())
}

fn sum(vs: impl IntoIterator<Item = SparseVec>) -> SparseVec {
    canonical(vs.into_iter().flatten().collect())
}

/// A Lie–Rinehart algebra with `L` free on generators `α_0, …, α_{r−1}`.
///
/// As a vector space `L` has the basis `a_s α_k` at index `k·dim A + s`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieRinehartAlgebra {
    name: String,
    a: CommAlgebra,
    anchor: Vec<SparseMatrix>,
    /// `brackets[i][j][k] ∈ A`: `[α_i, α_j] = Σ_k brackets[i][j][k] α_k`.
    brackets: Vec<Vec<Vec<SparseVec>>>,
}

impl LieRinehartAlgebra {
    /// Validate that each anchor is a derivation, that the brackets are
    /// antisymmetric, and the Leibniz rule and Jacobi identity for the
    /// induced Lie bracket on `L` over the ground field.
    pub fn new(
        name: &str,
        a: CommAlgebra,
        anchor: Vec<SparseMatrix>,
        brackets: &[(usize, usize, Vec<SparseVec>)],
    ) -> Result<Self> {
        let r = anchor.len();
        let m = a.dim();
        for (k, d) in anchor.iter().enumerate() {
            if d.rows() != m || d.cols() != m {
                return Err(Error::DimensionMismatch(format!("anchor {k} is {}x{}, A has dimension {m}", d.rows(), d.cols())));
            }
            if let Some((s, t)) = a.derivation_witness(d) {
                return Err(Error::AnchorNotDerivation {
                    generator: k,
                    witness: format!("Leibniz fails on the product a{s}·a{t}"),
                });
            }
        }
        let mut given: Vec<Vec<Option<Vec<SparseVec>>>> = vec![vec![None; r]; r];
        for (i, j, v) in brackets {
            if *i >= r || *j >= r || v.len() != r || v.iter().flatten().any(|(s, _)| *s >= m) {
                return Err(Error::DimensionMismatch(format!("bracket ({i},{j}) has the wrong shape")));
            }
            given[*i][*j] = Some(v.iter().map(|x| canonical(x.clone())).collect());
        }
        let mut table = vec![vec![vec![Vec::new(); r]; r]; r];
        for i in 0..r {
            for j in 0..r {
                table[i][j] = match (&given[i][j], &given[j][i]) {
                    (Some(v), Some(w)) if v.iter().zip(w).any(|(x, y)| *x != scaled(y, &a.field().one().neg())) => {
                        return Err(Error::AntisymmetryFailure(i, j));
                    }
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => w.iter().map(|y| scaled(y, &a.field().one().neg())).collect(),
                    (None, None) => vec![Vec::new(); r],
                };
            }
            if table[i][i].iter().any(|c| !c.is_empty()) {
                return Err(Error::AntisymmetryFailure(i, i));
            }
        }
        let lr = LieRinehartAlgebra { name: name.to_string(), a, anchor, brackets: table };
        lr.check_leibniz()?;
        lr.check_jacobi()?;
        Ok(lr)
    }

    /// `A = R`: an ordinary Lie algebra.
    pub fn from_lie(g: &LieAlgebra) -> Self {
        let f = g.field();
        let a = CommAlgebra::ground(f);
        let n = g.dim();
        let brackets: Vec<(usize, usize, Vec<SparseVec>)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, (0..n).map(|k| {
                let c = g.constant(i, j, k);
                if c.is_zero() { Vec::new() } else { vec![(0, c)] }
            }).collect()))
            .collect();
        let anchor = vec![SparseMatrix::zeros(1, 1, f); n];
        LieRinehartAlgebra::new(g.name(), a, anchor, &brackets).expect("Lie algebra as a Lie–Rinehart algebra")
    }

    /// The crossed product `A ⊙ 𝔤` for `𝔤` acting on `A` by derivations.
    pub fn crossed_product(g: &LieAlgebra, a: &ModuleAlgebra) -> Result<Self> {
        let n = g.dim();
        let alg = a.algebra.clone();
        let unit = alg.unit().clone();
        let brackets: Vec<(usize, usize, Vec<SparseVec>)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, (0..n).map(|k| scaled(&unit, &g.constant(i, j, k))).collect()))
            .collect();
        LieRinehartAlgebra::new(&format!("A⊙{}", g.name()), alg, a.action.clone(), &brackets)
    }

    /// `R[x]/(x²)` with one generator acting as the Euler derivation `x ↦ x`.
    pub fn euler_dual_numbers(field: Field) -> Self {
        let a = CommAlgebra::dual_numbers(field);
        let d = SparseMatrix::from_i64(field, &[vec![0, 0], vec![0, 1]]);
        LieRinehartAlgebra::new("(R[x]/x², Euler)", a, vec![d], &[]).expect("Euler derivation")
    }

    /// `A` with `L = A^rank`, zero anchor and zero bracket.
    pub fn abelian_over(a: &CommAlgebra, rank: usize) -> Self {
        let m = a.dim();
        let anchor = vec![SparseMatrix::zeros(m, m, a.field()); rank];
        LieRinehartAlgebra::new(&format!("A^{rank}"), a.clone(), anchor, &[]).expect("abelian")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &CommAlgebra {
        &self.a
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn rank(&self) -> usize {
        self.anchor.len()
    }

    pub fn anchor(&self) -> &[SparseMatrix] {
        &self.anchor
    }

    /// `[α_i, α_j]` as coefficients in `A`.
    pub fn bracket(&self, i: usize, j: usize) -> &[SparseVec] {
        &self.brackets[i][j]
    }

    /// Dimension of `L` over the ground field.
    pub fn real_dim(&self) -> usize {
        self.rank() * self.a.dim()
    }

    /// Flatten `A`-coefficients per generator into a vector of `L`.
    pub fn flatten(&self, coeffs: &[SparseVec]) -> SparseVec {
        let m = self.a.dim();
        sum(coeffs.iter().enumerate().map(|(k, c)| c.iter().map(|(s, x)| (k * m + s, x.clone())).collect()))
    }

    /// Split a vector of `L` into `A`-coefficients per generator.
    pub fn unflatten(&self, v: &[(usize, Scalar)]) -> Vec<SparseVec> {
        let m = self.a.dim();
        let mut out = vec![Vec::new(); self.rank()];
        for (i, x) in v {
            out[i / m].push((i % m, x.clone()));
        }
        out
    }

    /// The anchor of a vector of `L`, as an endomorphism of `A`.
    pub fn anchor_of(&self, v: &[(usize, Scalar)]) -> SparseMatrix {
        let m = self.a.dim();
        let f = self.field();
        v.iter().fold(SparseMatrix::zeros(m, m, f), |acc, (i, x)| {
            acc.add(&self.a.mult_matrix(&[(i % m, x.clone())]).mul(&self.anchor[i / m]))
        })
    }

    /// `[a_s α_i, a_t α_j] = a_s a_t [α_i, α_j] + a_s α_i(a_t) α_j − a_t α_j(a_s) α_i`.
    fn basis_bracket(&self, x: usize, y: usize) -> SparseVec {
        let m = self.a.dim();
        let (i, s, j, t) = (x / m, x % m, y / m, y % m);
        let (es, et) = (self.a.basis_vector(s), self.a.basis_vector(t));
        let ast = self.a.mul(&es, &et);
        let mut coeffs: Vec<SparseVec> = self.brackets[i][j].iter().map(|c| self.a.mul(&ast, c)).collect();
        coeffs[j] = sum([coeffs[j].clone(), self.a.mul(&es, &self.anchor[i].mul_vec(&et))]);
        let minus = self.a.mul(&et, &self.anchor[j].mul_vec(&es));
        coeffs[i] = sum([coeffs[i].clone(), scaled(&minus, &self.field().one().neg())]);
        self.flatten(&coeffs)
    }

    /// Bracket of two vectors of `L`.
    pub fn bracket_vec(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                acc.extend(scaled(&self.basis_bracket(*i, *j), &a.mul(b)));
            }
        }
        canonical(acc)
    }

    /// `a·v` for `a ∈ A` and `v ∈ L`.
    pub fn scale(&self, a: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> SparseVec {
        let coeffs: Vec<SparseVec> = self.unflatten(v).iter().map(|c| self.a.mul(a, c)).collect();
        self.flatten(&coeffs)
    }

    fn e(&self, k: usize) -> SparseVec {
        vec![(k, self.field().one())]
    }

    fn check_leibniz(&self) -> Result<()> {
        let m = self.a.dim();
        for x in 0..self.real_dim() {
            for j in 0..self.rank() {
                for t in 0..m {
                    let at = self.a.basis_vector(t);
                    let lhs = self.bracket_vec(&self.e(x), &self.e(j * m + t));
                    let rhs = sum([
                        self.scale(&at, &self.bracket_vec(&self.e(x), &self.e(j * m))),
                        self.scale(&self.anchor_of(&self.e(x)).mul_vec(&at), &self.e(j * m)),
                    ]);
                    if lhs != rhs {
                        return Err(Error::LeibnizFailure(format!("[x{x}, a{t}·α{j}] ≠ a{t}[x{x}, α{j}] + x{x}(a{t})α{j}")));
                    }
                }
            }
        }
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let br = self.anchor_of(&self.bracket_vec(&self.e(i * m), &self.e(j * m)));
                if br != self.anchor[i].commutator(&self.anchor[j]) {
                    return Err(Error::LeibnizFailure(format!(
                        "anchor of [α{i}, α{j}] is not the commutator of the anchors"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.real_dim();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let a = self.bracket_vec(&self.e(x), &self.basis_bracket(y, z));
                    let b = self.bracket_vec(&self.e(y), &self.basis_bracket(z, x));
                    let c = self.bracket_vec(&self.e(z), &self.basis_bracket(x, y));
                    if !sum([a, b, c]).is_empty() {
                        return Err(Error::JacobiFailure(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// `L` as a Lie algebra over the ground field.
    pub fn real_lie_algebra(&self) -> Result<LieAlgebra> {
        let n = self.real_dim();
        let table = (0..n).map(|x| (0..n).map(|y| self.basis_bracket(x, y)).collect()).collect();
        LieAlgebra::from_table(&self.name, self.field(), table)
    }
}

/// `Alt_A(L, A)` laid out as `Λ(R^r)* ⊗ A`.
fn mc_layout(lr: &LieRinehartAlgebra) -> Result<(Exterior, AltLayout)> {
    let ext = Exterior::new(lr.rank())?;
    let layout = AltLayout::new(&ext, &GradedSpace::new(0, vec![lr.a.dim()]), crate::cosimplicial::UNBOUNDED);
    Ok((ext, layout))
}

/// The Maurer–Cartan algebra `Alt_A(L, A)` with the Rinehart differential,
/// cup product, and operators `i_{a_s α_k} = a_s·i_{α_k}`, `λ_{a_s α_k} = [d, i_{a_s α_k}]`
/// indexed like the basis of `L`.
pub fn mc_algebra(lr: &LieRinehartAlgebra) -> Result<DgAlgebra> {
    let f = lr.field();
    let a = &lr.a;
    let (ext, layout) = mc_layout(lr)?;
    let r = lr.rank();
    let mut bracket = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for (c, coeff) in lr.brackets[i][j].iter().enumerate() {
                if !coeff.is_empty() {
                    bracket.push((c, i, j, a.mult_matrix(coeff)));
                }
            }
        }
    }
    let d = AltDifferential { bracket, action: &lr.anchor, inner_d: None }.build(&ext, &layout, f);
    let mut iota = Vec::new();
    for k in 0..r {
        let ik = ext.contraction(k, f);
        for s in 0..a.dim() {
            iota.push(layout.tensor(&ext, &ik, Some(&a.mult_matrix(&a.basis_vector(s))), false));
        }
    }
    let lambda = iota.iter().map(|i| d.anticommutator(i)).collect();
    let degrees: Vec<i64> = layout.basis.iter().map(|&(mi, _)| ext.degree(mi) as i64).collect();
    let n = layout.dim();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for (x, &(m1, s)) in layout.basis.iter().enumerate() {
        for (y, &(m2, t)) in layout.basis.iter().enumerate() {
            if let Some((mm, neg)) = ext.wedge(m1, m2) {
                let prod = a.mul(&a.basis_vector(s), &a.basis_vector(t));
                mult[x][y] = canonical(
                    prod.into_iter()
                        .map(|(u, c)| (layout.index(mm, u).expect("complete layout"), if neg { c.neg() } else { c }))
                        .collect(),
                );
            }
        }
    }
    let unit = canonical(a.unit().iter().map(|(u, c)| (layout.index(0, *u).expect("constants"), c.clone())).collect());
    let alg = DgAlgebra { space: CartanComplex { field: f, degrees, d, lambda, iota }, mult, unit };
    alg.check().map_err(|e| Error::VerificationFailed(format!("Alt_A(L, A) for {}: {e}", lr.name())))?;
    Ok(alg)
}

/// Index of `a_s` (a 0-form) and of `a_s e^k` (a 1-form) in [`mc_algebra`].
fn form_index(layout: &AltLayout, ext: &Exterior, k: Option<usize>, s: usize) -> usize {
    let mi = k.map_or(0, |k| ext.single(k));
    layout.index(mi, s).expect("form of degree at most one")
}

/// A differential graded module `𝒩` over `Alt_A(L, A)` with contractions
/// `i_α` on generators; `i_{aα} = a·i_α` and `λ_{aα} = [d, i_{aα}]`.
/// Construction checks the identity `λ_{aα} = aλ_α + da ∪ i_α` degreewise.
#[derive(Clone, Debug)]
pub struct AclModule {
    lr: Arc<LieRinehartAlgebra>,
    mc: Arc<DgAlgebra>,
    /// Operators indexed like the basis of `L`, ready for the tensor construction.
    pub space: CartanComplex,
    /// Action of each basis element of `Alt_A(L, A)`.
    pub action: Vec<SparseMatrix>,
}

impl AclModule {
    pub fn new(
        lr: Arc<LieRinehartAlgebra>,
        mc: Arc<DgAlgebra>,
        degrees: Vec<i64>,
        d: SparseMatrix,
        action: Vec<SparseMatrix>,
        contractions: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let f = lr.field();
        let n = degrees.len();
        let m = lr.a.dim();
        if action.len() != mc.dim() || contractions.len() != lr.rank() {
            return Err(Error::DimensionMismatch("module data does not match the algebra".into()));
        }
        if action.iter().chain(&contractions).chain([&d]).any(|x| x.rows() != n || x.cols() != n) {
            return Err(Error::DimensionMismatch(format!("module operators must be {n}x{n}")));
        }
        let act = |x: &[(usize, Scalar)]| {
            x.iter().fold(SparseMatrix::zeros(n, n, f), |acc, (k, c)| acc.add(&action[*k].scale(c)))
        };
        let mdeg = &mc.space.degrees;
        let sgn = |p: i64| if p % 2 != 0 { f.one().neg() } else { f.one() };
        // Module axioms and compatibility with d.
        if act(&mc.unit) != SparseMatrix::identity(n, f) {
            return Err(Error::Validation("unit does not act as the identity".into()));
        }
        let (ext, layout) = mc_layout(&lr)?;
        for x in 0..mc.dim() {
            if action[x].entries().any(|(r, c, _)| degrees[r] != degrees[c] + mdeg[x]) {
                return Err(Error::Validation(format!("action of basis form {x} has the wrong degree")));
            }
            for y in 0..mc.dim() {
                if act(&mc.mult[x][y]) != action[x].mul(&action[y]) {
                    return Err(Error::Validation(format!("action is not multiplicative at ({x}, {y})")));
                }
            }
            let lhs = d.mul(&action[x]);
            let rhs = act(&mc.space.d.mul_vec(&[(x, f.one())])).add(&action[x].mul(&d).scale(&sgn(mdeg[x])));
            if lhs != rhs {
                return Err(Error::Validation(format!("d is not a derivation for the action of form {x}")));
            }
        }
        if !d.mul(&d).is_zero() {
            return Err(Error::CompositionNotZero(degrees.first().copied().unwrap_or(0)));
        }
        let mut iota = Vec::new();
        for ik in &contractions {
            for s in 0..m {
                iota.push(action[form_index(&layout, &ext, None, s)].mul(ik));
            }
        }
        let lambda: Vec<SparseMatrix> = iota.iter().map(|i| d.anticommutator(i)).collect();
        // λ_{aα} = aλ_α + da ∪ i_α, with λ_α the operator of 1·α.
        let u = first_unit_index(&lr);
        for k in 0..lr.rank() {
            let lam_alpha = &lambda[k * m + u];
            for s in 0..m {
                let a_form = form_index(&layout, &ext, None, s);
                let da = mc.space.d.mul_vec(&[(a_form, f.one())]);
                let rhs = action[a_form].mul(lam_alpha).add(&act(&da).mul(&contractions[k]));
                if lambda[k * m + s] != rhs {
                    return Err(Error::Validation(format!("λ_(a{s}α{k}) ≠ a{s}λ_α{k} + da{s} ∪ i_α{k}")));
                }
            }
        }
        let space = CartanComplex { field: f, degrees, d, lambda, iota };
        space.check()?;
        Ok(AclModule { lr, mc, space, action })
    }

    /// `Alt_A(L, A)` as a module over itself.
    pub fn regular(lr: Arc<LieRinehartAlgebra>) -> Result<Self> {
        let mc = Arc::new(mc_algebra(&lr)?);
        let f = lr.field();
        let action = (0..mc.dim()).map(|x| mc.mult_matrix(&[(x, f.one())])).collect();
        let m = lr.a.dim();
        let contractions = (0..lr.rank()).map(|k| mc.space.iota[k * m + first_unit_index(&lr)].clone()).collect();
        AclModule::new(lr, mc.clone(), mc.space.degrees.clone(), mc.space.d.clone(), action, contractions)
    }

    /// `A` in degree 0 with zero differential, forms of positive degree acting by zero.
    pub fn degree_zero(lr: Arc<LieRinehartAlgebra>) -> Result<Self> {
        let mc = Arc::new(mc_algebra(&lr)?);
        let f = lr.field();
        let m = lr.a.dim();
        let (_, layout) = mc_layout(&lr)?;
        let action = layout
            .basis
            .iter()
            .map(|&(mi, s)| {
                if mi == 0 {
                    lr.a.mult_matrix(&lr.a.basis_vector(s))
                } else {
                    SparseMatrix::zeros(m, m, f)
                }
            })
            .collect();
        let z = SparseMatrix::zeros(m, m, f);
        AclModule::new(lr.clone(), mc, vec![0; m], z.clone(), action, vec![z; lr.rank()])
    }

    /// A complex over the ground field with `Alt_A(L, A)` acting through
    /// `A = R` in degree 0; only for `dim A = 1`.
    pub fn through_augmentation(lr: Arc<LieRinehartAlgebra>, degrees: Vec<i64>, d: SparseMatrix) -> Result<Self> {
        if lr.a.dim() != 1 {
            return Err(Error::Validation("augmentation needs A = R".into()));
        }
        let mc = Arc::new(mc_algebra(&lr)?);
        let f = lr.field();
        let n = degrees.len();
        let unit_scale = lr.a.unit()[0].1.inv();
        let action = mc
            .space
            .degrees
            .iter()
            .map(|&deg| if deg == 0 { SparseMatrix::identity(n, f).scale(&unit_scale) } else { SparseMatrix::zeros(n, n, f) })
            .collect();
        let z = SparseMatrix::zeros(n, n, f);
        AclModule::new(lr.clone(), mc, degrees, d, action, vec![z; lr.rank()])
    }

    /// The ground field in degree 0; only for `dim A = 1`.
    pub fn ground(lr: Arc<LieRinehartAlgebra>) -> Result<Self> {
        let f = lr.field();
        AclModule::through_augmentation(lr, vec![0], SparseMatrix::zeros(1, 1, f))
    }

    pub fn lie_rinehart(&self) -> &Arc<LieRinehartAlgebra> {
        &self.lr
    }

    pub fn mc(&self) -> &Arc<DgAlgebra> {
        &self.mc
    }
}

/// Index `s` of a basis element of `A` equal to the unit (the unit must be a basis vector).
fn first_unit_index(lr: &LieRinehartAlgebra) -> usize {
    let u = lr.a.unit();
    assert!(u.len() == 1 && u[0].1.is_one(), "unit of A must be a basis vector");
    u[0].0
}

/// The operators `λ_α`, `i_α` of the generators `α_k = 1·α_k` only.
fn generator_operators(space: &CartanComplex, lr: &LieRinehartAlgebra) -> CartanComplex {
    let (m, u) = (lr.a.dim(), first_unit_index(lr));
    let pick = |ops: &[SparseMatrix]| (0..lr.rank()).map(|k| ops[k * m + u].clone()).collect();
    CartanComplex { lambda: pick(&space.lambda), iota: pick(&space.iota), ..space.clone() }
}

/// `H_{(A,L)}(𝒩)` in degrees `0..=max_degree` from the cosimplicial algebra
/// `Alt_A(L, A)^{⊗(•+1)} ⊗ 𝒩` (tensor products over the ground field).
///
/// The cone acts A-linearly, so invariance is imposed for the generators `α_k`
/// of `L` over `A`.
pub fn lr_equivariant_cohomology(n: &AclModule, max_degree: usize) -> Result<Vec<usize>> {
    let mc = DgAlgebra { space: generator_operators(&n.mc.space, &n.lr), ..(*n.mc).clone() };
    crate::lie::mc_cohomology(&mc, Some(&generator_operators(&n.space, &n.lr)), max_degree)
}

/// A comorphism `(φ, Φ): (A, L) → (A', L')`: an algebra map `φ: A' → A` and
/// `Φ(α_i) = Σ_k f_{ik} ⊗ α'_k` with `f_{ik} ∈ A`.
#[derive(Clone, Debug)]
pub struct Comorphism {
    pub source: Arc<LieRinehartAlgebra>,
    pub target: Arc<LieRinehartAlgebra>,
    pub phi: SparseMatrix,
    pub big_phi: Vec<Vec<SparseVec>>,
}

impl Comorphism {
    /// `Φ(x) ∈ A ⊗_{A'} L' ≅ A^{r'}` for a vector `x` of `L`.
    fn apply(&self, x: &[(usize, Scalar)]) -> Vec<SparseVec> {
        let a = &self.source.a;
        let coeffs = self.source.unflatten(x);
        (0..self.target.rank())
            .map(|k| sum(coeffs.iter().zip(&self.big_phi).map(|(c, row)| a.mul(c, &row[k]))))
            .collect()
    }
}

/// What was verified about a comorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComorphismReport {
    pub algebra_map: bool,
    pub condition_i: bool,
    pub condition_ii: bool,
}

/// Check that `φ` is a unital algebra map, the anchor condition (i), and the bracket condition (ii).
pub fn validate_comorphism(c: &Comorphism) -> Result<ComorphismReport> {
    let (src, tgt) = (&c.source, &c.target);
    let (a, ap) = (&src.a, &tgt.a);
    let f = src.field();
    if c.phi.rows() != a.dim() || c.phi.cols() != ap.dim() || c.big_phi.len() != src.rank()
        || c.big_phi.iter().any(|r| r.len() != tgt.rank())
    {
        return Err(Error::DimensionMismatch("comorphism data has the wrong shape".into()));
    }
    if c.phi.mul_vec(ap.unit()) != *a.unit() {
        return Err(Error::Validation("φ does not preserve the unit".into()));
    }
    for u in 0..ap.dim() {
        for v in 0..ap.dim() {
            let lhs = c.phi.mul_vec(&ap.table()[u][v]);
            let rhs = a.mul(&c.phi.mul_vec(&ap.basis_vector(u)), &c.phi.mul_vec(&ap.basis_vector(v)));
            if lhs != rhs {
                return Err(Error::Validation(format!("φ is not multiplicative at (a'{u}, a'{v})")));
            }
        }
    }
    let e = |k: usize| vec![(k, f.one())];
    // (i): X(φ(a')) = Σ_k g_k φ(α'_k(a')) where Φ(X) = Σ_k g_k ⊗ α'_k.
    for x in 0..src.real_dim() {
        let g = c.apply(&e(x));
        let ax = src.anchor_of(&e(x));
        for u in 0..ap.dim() {
            let lhs = ax.mul_vec(&c.phi.mul_vec(&ap.basis_vector(u)));
            let rhs = sum(g.iter().enumerate().map(|(k, gk)| a.mul(gk, &c.phi.mul_vec(&tgt.anchor[k].mul_vec(&ap.basis_vector(u))))));
            if lhs != rhs {
                return Err(Error::ConditionIFailure(format!("anchor of basis vector {x} of L on a'{u}")));
            }
        }
    }
    // (ii): Φ[X1, X2] = Σ g_k h_l φ(c'^m_{kl}) α'_m + Σ_l X1(h_l) α'_l − Σ_k X2(g_k) α'_k.
    for x1 in 0..src.real_dim() {
        for x2 in 0..src.real_dim() {
            let lhs = c.apply(&src.bracket_vec(&e(x1), &e(x2)));
            let (g, h) = (c.apply(&e(x1)), c.apply(&e(x2)));
            let (d1, d2) = (src.anchor_of(&e(x1)), src.anchor_of(&e(x2)));
            let mut rhs: Vec<SparseVec> = vec![Vec::new(); tgt.rank()];
            for k in 0..tgt.rank() {
                for l in 0..tgt.rank() {
                    let gh = a.mul(&g[k], &h[l]);
                    for (mm, cc) in tgt.brackets[k][l].iter().enumerate() {
                        rhs[mm] = sum([rhs[mm].clone(), a.mul(&gh, &c.phi.mul_vec(cc))]);
                    }
                }
            }
            for l in 0..tgt.rank() {
                rhs[l] = sum([rhs[l].clone(), d1.mul_vec(&h[l]), scaled(&d2.mul_vec(&g[l]), &f.one().neg())]);
            }
            if lhs != rhs {
                return Err(Error::ConditionIIFailure(format!("brackets of basis vectors {x1}, {x2} of L")));
            }
        }
    }
    Ok(ComorphismReport { algebra_map: true, condition_i: true, condition_ii: true })
}

/// The map `Alt_{A'}(L', A') → Alt_A(L, A)`, `a' e'^{k_1}∧… ↦ φ(a') Φ^*e'^{k_1} ∧ …`
/// with `Φ^*e'^k = Σ_i f_{ik} e^i`, verified to be a unital map of
/// differential graded algebras.
pub fn induced_mca_map(c: &Comorphism) -> Result<SparseMatrix> {
    validate_comorphism(c)?;
    let (src, tgt) = (&c.source, &c.target);
    let f = src.field();
    let mc = mc_algebra(src)?;
    let mcp = mc_algebra(tgt)?;
    let (ext, layout) = mc_layout(src)?;
    let (extp, layoutp) = mc_layout(tgt)?;
    let pull: Vec<SparseVec> = (0..tgt.rank())
        .map(|k| {
            sum((0..src.rank()).map(|i| {
                c.big_phi[i][k].iter().map(|(s, x)| (form_index(&layout, &ext, Some(i), *s), x.clone())).collect()
            }))
        })
        .collect();
    let zero_form = |v: &SparseVec| -> SparseVec {
        v.iter().map(|(s, x)| (form_index(&layout, &ext, None, *s), x.clone())).collect()
    };
    let cols: Vec<SparseVec> = layoutp
        .basis
        .iter()
        .map(|&(mi, u)| {
            let mut acc = zero_form(&c.phi.mul_vec(&tgt.a.basis_vector(u)));
            for k in extp.elements(mi) {
                acc = mc.mul(&acc, &pull[k]);
            }
            acc
        })
        .collect();
    let map = SparseMatrix::from_columns(mc.dim(), f, &cols);
    if map.mul(&mcp.space.d) != mc.space.d.mul(&map) {
        return Err(Error::VerificationFailed("induced map does not commute with the differentials".into()));
    }
    if map.mul_vec(&mcp.unit) != mc.unit {
        return Err(Error::VerificationFailed("induced map does not preserve the unit".into()));
    }
    for x in 0..mcp.dim() {
        for y in 0..mcp.dim() {
            let lhs = map.mul_vec(&mcp.mult[x][y]);
            let rhs = mc.mul(&map.mul_vec(&[(x, f.one())]), &map.mul_vec(&[(y, f.one())]));
            if lhs != rhs {
                return Err(Error::VerificationFailed(format!("induced map is not multiplicative at ({x}, {y})")));
            }
        }
    }
    Ok(map)
}

/// The product `(A ⊗ A, L^×)` with `L^× = L⊗A ⊕ A⊗L` free on
/// `α_i ⊗ 1` (generator `i`) and `1 ⊗ α_i` (generator `r + i`).
pub fn lr_product(lr: &LieRinehartAlgebra) -> Result<LieRinehartAlgebra> {
    let a = &lr.a;
    let aa = a.tensor(a);
    let (m, r, f) = (a.dim(), lr.rank(), lr.field());
    let id = SparseMatrix::identity(m, f);
    let mut anchor: Vec<SparseMatrix> = lr.anchor.iter().map(|d| d.kron(&id)).collect();
    anchor.extend(lr.anchor.iter().map(|d| id.kron(d)));
    let left = |v: &SparseVec| -> SparseVec {
        canonical(v.iter().flat_map(|(s, x)| a.unit().iter().map(move |(t, y)| (s * m + t, x.mul(y)))).collect())
    };
    let right = |v: &SparseVec| -> SparseVec {
        canonical(a.unit().iter().flat_map(|(s, y)| v.iter().map(move |(t, x)| (s * m + t, x.mul(y)))).collect())
    };
    let mut brackets = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut l = vec![Vec::new(); 2 * r];
            let mut rr = vec![Vec::new(); 2 * r];
            for k in 0..r {
                l[k] = left(&lr.brackets[i][j][k]);
                rr[r + k] = right(&lr.brackets[i][j][k]);
            }
            brackets.push((i, j, l));
            brackets.push((r + i, r + j, rr));
        }
    }
    LieRinehartAlgebra::new(&format!("{}×{}", lr.name, lr.name), aa, anchor, &brackets)
}

/// The diagonal `(μ, Δ): (A, L) → (A ⊗ A, L^×)`, `Δ(α) = 1⊗(α⊗1) + 1⊗(1⊗α)`.
pub fn lr_diagonal(lr: &Arc<LieRinehartAlgebra>) -> Result<Comorphism> {
    let prod = Arc::new(lr_product(lr)?);
    let a = &lr.a;
    let (m, r) = (a.dim(), lr.rank());
    let cols: Vec<SparseVec> = (0..m * m).map(|st| a.mul(&a.basis_vector(st / m), &a.basis_vector(st % m))).collect();
    let phi = SparseMatrix::from_columns(m, lr.field(), &cols);
    let big_phi = (0..r)
        .map(|i| {
            let mut row = vec![Vec::new(); 2 * r];
            row[i] = a.unit().clone();
            row[r + i] = a.unit().clone();
            row
        })
        .collect();
    Ok(Comorphism { source: lr.clone(), target: prod, phi, big_phi })
}

/// The multiplication `Alt_A(L,A) ⊗ Alt_A(L,A) → Alt_A(L,A)` written on the
/// basis of `Alt_{A⊗A}(L^×, A⊗A)`, where `(a ⊗ b) e^{K_1} e^{r+K_2}`
/// corresponds to `a e^{K_1} ⊗ b e^{K_2}`.
pub fn product_multiplication_map(lr: &LieRinehartAlgebra) -> Result<SparseMatrix> {
    let prod = lr_product(lr)?;
    let mc = mc_algebra(lr)?;
    let (ext, layout) = mc_layout(lr)?;
    let (extp, layoutp) = mc_layout(&prod)?;
    let (m, r) = (lr.a.dim(), lr.rank());
    let f = lr.field();
    let cols: Vec<SparseVec> = layoutp
        .basis
        .iter()
        .map(|&(mi, st)| {
            let mask = extp.mask(mi);
            let (k1, k2) = (mask & ((1 << r) - 1), mask >> r);
            let x = layout.index(ext.index(k1), st / m).expect("complete layout");
            let y = layout.index(ext.index(k2), st % m).expect("complete layout");
            mc.mul(&[(x, f.one())], &[(y, f.one())])
        })
        .collect();
    Ok(SparseMatrix::from_columns(mc.dim(), f, &cols))
}

/// Degreewise dimensions of `Alt_A(L, A)`.
pub fn mc_dims(lr: &LieRinehartAlgebra) -> Result<Vec<usize>> {
    let (_, layout) = mc_layout(lr)?;
    Ok(layout.grading.dims)
}

/// An `(A, L)`-module: an `A`-module with a compatible action of `L`.
#[derive(Clone, Debug)]
pub struct LrModule {
    pub lr: Arc<LieRinehartAlgebra>,
    /// Action of each basis element of `A`.
    pub a_action: Vec<SparseMatrix>,
    /// Action of each generator of `L`.
    pub l_action: Vec<SparseMatrix>,
}

impl LrModule {
    /// Validate the `A`-module axioms, `α(a n) = α(a) n + a α(n)` and
    /// `ρ[α_i, α_j] = [ρ α_i, ρ α_j]`.
    pub fn new(lr: Arc<LieRinehartAlgebra>, a_action: Vec<SparseMatrix>, l_action: Vec<SparseMatrix>) -> Result<Self> {
        let a = &lr.a;
        let f = lr.field();
        let n = a_action.first().map_or(0, |x| x.rows());
        if a_action.len() != a.dim() || l_action.len() != lr.rank() {
            return Err(Error::DimensionMismatch("module data does not match (A, L)".into()));
        }
        let m = LrModule { lr: lr.clone(), a_action, l_action };
        if m.act_a(a.unit()) != SparseMatrix::identity(n, f) {
            return Err(Error::Validation("unit of A does not act as the identity".into()));
        }
        for s in 0..a.dim() {
            for t in 0..a.dim() {
                if m.act_a(&a.table()[s][t]) != m.a_action[s].mul(&m.a_action[t]) {
                    return Err(Error::Validation(format!("A-action is not multiplicative at (a{s}, a{t})")));
                }
            }
            for k in 0..lr.rank() {
                let lhs = m.l_action[k].commutator(&m.a_action[s]);
                let rhs = m.act_a(&lr.anchor[k].mul_vec(&a.basis_vector(s)));
                if lhs != rhs {
                    return Err(Error::LeibnizFailure(format!("α{k}(a{s}·n) ≠ α{k}(a{s})·n + a{s}·α{k}(n)")));
                }
            }
        }
        for i in 0..lr.rank() {
            for j in 0..lr.rank() {
                let lhs = m.act_l(&lr.flatten(lr.bracket(i, j)));
                if lhs != m.l_action[i].commutator(&m.l_action[j]) {
                    return Err(Error::ActionLaw(format!("ρ[α{i}, α{j}] ≠ [ρα{i}, ρα{j}]")));
                }
            }
        }
        Ok(m)
    }

    /// `A` with `L` acting through the anchor.
    pub fn algebra(lr: Arc<LieRinehartAlgebra>) -> Result<Self> {
        let a = lr.a.clone();
        let a_action = (0..a.dim()).map(|s| a.mult_matrix(&a.basis_vector(s))).collect();
        let l_action = lr.anchor.clone();
        LrModule::new(lr, a_action, l_action)
    }

    pub fn dim(&self) -> usize {
        self.a_action.first().map_or(0, |x| x.rows())
    }

    pub fn act_a(&self, x: &[(usize, Scalar)]) -> SparseMatrix {
        let (n, f) = (self.dim(), self.lr.field());
        x.iter().fold(SparseMatrix::zeros(n, n, f), |acc, (s, c)| acc.add(&self.a_action[*s].scale(c)))
    }

    /// Action of a vector of `L`.
    pub fn act_l(&self, v: &[(usize, Scalar)]) -> SparseMatrix {
        let (n, f) = (self.dim(), self.lr.field());
        let m = self.lr.a.dim();
        v.iter().fold(SparseMatrix::zeros(n, n, f), |acc, (i, c)| {
            acc.add(&self.a_action[i % m].mul(&self.l_action[i / m]).scale(c))
        })
    }
}

/// A short exact sequence `0 → L' → L → L'' → 0` of Lie–Rinehart algebras over `A`,
/// with `L'` acting trivially on `A`. Maps are given on generators with coefficients in `A`.
#[derive(Clone, Debug)]
pub struct LrExtension {
    pub sub: Arc<LieRinehartAlgebra>,
    pub mid: Arc<LieRinehartAlgebra>,
    pub quot: Arc<LieRinehartAlgebra>,
    /// `incl[u][k]`: coefficient of `α_k` in the image of the `u`-th generator of `L'`.
    pub incl: Vec<Vec<SparseVec>>,
    /// `proj[k][v]`: coefficient of `α''_v` in the image of `α_k`.
    pub proj: Vec<Vec<SparseVec>>,
}

/// Matrix over the ground field of an `A`-linear map given on generators.
fn linear_map(src: &LieRinehartAlgebra, tgt: &LieRinehartAlgebra, on_gens: &[Vec<SparseVec>]) -> SparseMatrix {
    let a = &src.a;
    let m = a.dim();
    let cols: Vec<SparseVec> = (0..src.real_dim())
        .map(|x| {
            let (k, s) = (x / m, x % m);
            let coeffs: Vec<SparseVec> = on_gens[k].iter().map(|c| a.mul(&a.basis_vector(s), c)).collect();
            tgt.flatten(&coeffs)
        })
        .collect();
    SparseMatrix::from_columns(tgt.real_dim(), src.field(), &cols)
}

fn check_lr_morphism(src: &LieRinehartAlgebra, tgt: &LieRinehartAlgebra, f: &SparseMatrix, what: &str) -> Result<()> {
    let e = |k: usize| vec![(k, src.field().one())];
    for x in 0..src.real_dim() {
        if tgt.anchor_of(&f.mul_vec(&e(x))) != src.anchor_of(&e(x)) {
            return Err(Error::Validation(format!("{what} does not commute with the anchors at basis vector {x}")));
        }
        for y in 0..src.real_dim() {
            let lhs = f.mul_vec(&src.bracket_vec(&e(x), &e(y)));
            let rhs = tgt.bracket_vec(&f.mul_vec(&e(x)), &f.mul_vec(&e(y)));
            if lhs != rhs {
                return Err(Error::Validation(format!("{what} does not preserve the bracket at ({x}, {y})")));
            }
        }
    }
    Ok(())
}

impl LrExtension {
    pub fn new(
        sub: Arc<LieRinehartAlgebra>,
        mid: Arc<LieRinehartAlgebra>,
        quot: Arc<LieRinehartAlgebra>,
        incl: Vec<Vec<SparseVec>>,
        proj: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        if sub.a != mid.a || mid.a != quot.a {
            return Err(Error::Validation("extension over different algebras".into()));
        }
        if incl.len() != sub.rank() || incl.iter().any(|r| r.len() != mid.rank())
            || proj.len() != mid.rank() || proj.iter().any(|r| r.len() != quot.rank())
        {
            return Err(Error::DimensionMismatch("extension maps have the wrong shape".into()));
        }
        if sub.anchor.iter().any(|d| !d.is_zero()) {
            return Err(Error::Validation("L' must act trivially on A".into()));
        }
        let e = LrExtension { sub, mid, quot, incl, proj };
        let (i, p) = (e.incl_matrix(), e.proj_matrix());
        check_lr_morphism(&e.sub, &e.mid, &i, "inclusion")?;
        check_lr_morphism(&e.mid, &e.quot, &p, "projection")?;
        if !p.mul(&i).is_zero() {
            return Err(Error::Validation("projection ∘ inclusion ≠ 0".into()));
        }
        let (ri, rp) = (linalg::rank(&i), linalg::rank(&p));
        if ri != e.sub.real_dim() || rp != e.quot.real_dim() || ri + rp != e.mid.real_dim() {
            return Err(Error::Validation("sequence is not exact".into()));
        }
        Ok(e)
    }

    /// `0 → 𝔤 → 𝔤 → 0 → 0` over `A = R`.
    pub fn split(g: &LieAlgebra) -> Self {
        let lr = Arc::new(LieRinehartAlgebra::from_lie(g));
        let n = g.dim();
        let one = vec![(0, g.field().one())];
        let incl = (0..n).map(|u| (0..n).map(|k| if k == u { one.clone() } else { Vec::new() }).collect()).collect();
        let zero = Arc::new(LieRinehartAlgebra::from_lie(&LieAlgebra::zero(g.field())));
        LrExtension::new(lr.clone(), lr, zero, incl, vec![Vec::new(); n]).expect("split extension")
    }

    /// `0 → L' → L' → 0 → 0` for an `A`-Lie algebra `L'`.
    pub fn identity_of(sub: Arc<LieRinehartAlgebra>) -> Result<Self> {
        let r = sub.rank();
        let unit = sub.a.unit().clone();
        let incl = (0..r).map(|u| (0..r).map(|k| if k == u { unit.clone() } else { Vec::new() }).collect()).collect();
        let zero = Arc::new(LieRinehartAlgebra::abelian_over(&sub.a, 0));
        LrExtension::new(sub.clone(), sub, zero, incl, vec![Vec::new(); r])
    }

    pub fn incl_matrix(&self) -> SparseMatrix {
        linear_map(&self.sub, &self.mid, &self.incl)
    }

    pub fn proj_matrix(&self) -> SparseMatrix {
        linear_map(&self.mid, &self.quot, &self.proj)
    }
}

/// The differential graded Lie–Rinehart algebra `(A, C^eL)` over the ground field.
#[derive(Clone, Debug)]
pub struct ConeExtension {
    /// Basis: `a_s · sY_u` (degree −1) at `u·dim A + s`, then the basis of `L` (degree 0).
    pub algebra: GradedLieAlgebra,
    /// Anchor of each basis vector (zero on `sL'`).
    pub anchor: Vec<SparseMatrix>,
    /// The morphism onto `L''` (degree 0).
    pub to_quotient: SparseMatrix,
    /// `[C^eL, sL'] ⊆ sL'`.
    pub suspension_is_ideal: bool,
    /// `d(sL') ⊆ sL'`.
    pub suspension_is_dg_ideal: bool,
    /// Cohomology of the underlying complex in degrees −1, 0.
    pub cohomology: Vec<usize>,
}

/// `C^eL = sL' ⋊ L` with `d(sY) = Y`, verified as a differential graded Lie
/// algebra with a morphism onto `L''` whose cohomology is `L''` in degree 0.
pub fn cone_extension(e: &LrExtension) -> Result<ConeExtension> {
    let f = e.mid.field();
    let m = e.mid.a.dim();
    let ns = e.sub.real_dim();
    let nl = e.mid.real_dim();
    let n = ns + nl;
    let incl = e.incl_matrix();
    let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, x)| (k + ns, x.clone())).collect() };
    let pull_back = |v: &SparseVec| -> Result<SparseVec> {
        linalg::solve(&incl, v).ok_or_else(|| Error::Validation("L' is not an ideal of L".into()))
    };
    let ev = |k: usize| vec![(k, f.one())];
    let mut bracket = vec![vec![Vec::new(); n]; n];
    for x in 0..nl {
        for y in 0..nl {
            bracket[ns + x][ns + y] = shift(&e.mid.bracket_vec(&ev(x), &ev(y)));
        }
        for y in 0..ns {
            let v = pull_back(&e.mid.bracket_vec(&ev(x), &incl.mul_vec(&ev(y))))?;
            bracket[y][ns + x] = scaled(&v, &f.one().neg());
            bracket[ns + x][y] = v;
        }
    }
    let d_entries: Vec<(usize, usize, Scalar)> =
        (0..ns).flat_map(|y| incl.mul_vec(&ev(y)).into_iter().map(move |(k, x)| (ns + k, y, x))).collect();
    let d = SparseMatrix::from_triplets(n, n, f, d_entries)?;
    let mut degrees = vec![-1; ns];
    degrees.extend(vec![0; nl]);
    let algebra = GradedLieAlgebra { field: f, degrees, bracket, d };
    algebra.check()?;
    let mut anchor = vec![SparseMatrix::zeros(m, m, f); ns];
    anchor.extend((0..nl).map(|x| e.mid.anchor_of(&ev(x))));
    let proj = e.proj_matrix();
    let to_quotient = SparseMatrix::hstack(&[&SparseMatrix::zeros(e.quot.real_dim(), ns, f), &proj], e.quot.real_dim(), f);
    for x in 0..n {
        for y in 0..n {
            let lhs = to_quotient.mul_vec(&algebra.bracket[x][y]);
            let rhs = e.quot.bracket_vec(&to_quotient.mul_vec(&ev(x)), &to_quotient.mul_vec(&ev(y)));
            if lhs != rhs {
                return Err(Error::VerificationFailed(format!("projection to L'' is not a bracket map at ({x}, {y})")));
            }
        }
    }
    if !to_quotient.mul(&algebra.d).is_zero() {
        return Err(Error::VerificationFailed("projection to L'' is not a chain map".into()));
    }
    let in_sub = |v: &SparseVec| v.iter().all(|(k, _)| *k < ns);
    let suspension_is_ideal = (0..n).all(|x| (0..ns).all(|y| in_sub(&algebra.bracket[x][y])));
    let suspension_is_dg_ideal = (0..ns).all(|y| in_sub(&algebra.d.mul_vec(&ev(y))));
    let cohomology = algebra.complex()?.cohomology_dims(-1, 0)?;
    let cohomology = if ns == 0 { vec![0, cohomology.last().copied().unwrap_or(0)] } else { cohomology };
    if cohomology != vec![0, e.quot.real_dim()] {
        return Err(Error::VerificationFailed(format!("cone cohomology {cohomology:?} is not L'' in degree 0")));
    }
    Ok(ConeExtension { algebra, anchor, to_quotient, suspension_is_ideal, suspension_is_dg_ideal, cohomology })
}

/// The complex `N ⊗_A Λ_A[sL']` with the Chevalley–Eilenberg homology
/// differential for the right action `n·Y = −ρ(Y)n`, placed in degrees
/// `−r'..=0` so that `H^{−p}` is `H_p`.
///
/// Induction follows the resolvent-pair convention: the tensor product is
/// over the enveloping algebra of the sub-algebra `(A, L')`.
pub fn functor_f(e: &LrExtension, n: &LrModule) -> Result<CochainComplex> {
    if *n.lr != *e.mid {
        return Err(Error::Validation("module is not over the middle term of the extension".into()));
    }
    let f = e.mid.field();
    let sub = &e.sub;
    let r = sub.rank();
    let dn = n.dim();
    let ext = Exterior::new(r)?;
    // ρ(Y_u) through the inclusion.
    let rho: Vec<SparseMatrix> = (0..r).map(|u| n.act_l(&e.mid.flatten(&e.incl[u]))).collect();
    let by_degree: Vec<Vec<usize>> = (0..=r).map(|p| (0..ext.len()).filter(|&i| ext.degree(i) == p).collect()).collect();
    let pos = |p: usize, mi: usize| by_degree[p].iter().position(|&x| x == mi).expect("monomial of degree p");
    let mut diffs = Vec::new();
    // Differential from degree −p to −p+1, for p = r down to 1.
    for p in (1..=r).rev() {
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (ci, &mi) in by_degree[p].iter().enumerate() {
            let els = ext.elements(mi);
            for w in 0..dn {
                let col = ci * dn + w;
                let ew = vec![(w, f.one())];
                for (i, &yi) in els.iter().enumerate() {
                    // (−1)^{i} with i zero-based equals (−1)^{i+1} one-based; n·Y = −ρ(Y)n.
                    let sign = if i % 2 == 0 { f.one().neg() } else { f.one() };
                    let rest: Vec<usize> = els.iter().copied().filter(|&x| x != yi).collect();
                    let (mask, _) = sort_sign(&rest).expect("distinct");
                    let row0 = pos(p - 1, ext.index(mask)) * dn;
                    for (w2, x) in rho[yi].mul_vec(&ew) {
                        entries.push((row0 + w2, col, x.mul(&sign)));
                    }
                }
                for i in 0..els.len() {
                    for j in i + 1..els.len() {
                        let sign_ij = if (i + j) % 2 == 0 { f.one() } else { f.one().neg() };
                        let rest: Vec<usize> = els.iter().copied().filter(|&x| x != els[i] && x != els[j]).collect();
                        for (k, ck) in sub.bracket(els[i], els[j]).iter().enumerate() {
                            if ck.is_empty() {
                                continue;
                            }
                            let mut seq = vec![k];
                            seq.extend(&rest);
                            let Some((mask, neg)) = sort_sign(&seq) else { continue };
                            let s = if neg { sign_ij.neg() } else { sign_ij.clone() };
                            let row0 = pos(p - 1, ext.index(mask)) * dn;
                            for (w2, x) in n.act_a(ck).mul_vec(&ew) {
                                entries.push((row0 + w2, col, x.mul(&s)));
                            }
                        }
                    }
                }
            }
        }
        diffs.push(SparseMatrix::accumulate(by_degree[p - 1].len() * dn, by_degree[p].len() * dn, f, entries));
    }
    let dims: Vec<usize> = (0..=r).rev().map(|p| by_degree[p].len() * dn).collect();
    CochainComplex::new(f, GradedSpace::new(-(r as i64), dims), diffs)
}

/// `H_p(N ⊗_A Λ_A[sL'])` for `p = 0..=rank L'`, with `H_0` checked against the coinvariants.
pub fn functor_f_homology(e: &LrExtension, n: &LrModule) -> Result<Vec<usize>> {
    let c = functor_f(e, n)?;
    let r = e.sub.rank() as i64;
    let mut h = c.cohomology_dims(-r, 0)?;
    h.reverse();
    let f = e.mid.field();
    let rho: Vec<SparseMatrix> = (0..e.sub.rank()).map(|u| n.act_l(&e.mid.flatten(&e.incl[u]))).collect();
    let refs: Vec<&SparseMatrix> = rho.iter().collect();
    let image = if refs.is_empty() { 0 } else { linalg::rank(&SparseMatrix::hstack(&refs, n.dim(), f)) };
    if h[0] != n.dim() - image {
        return Err(Error::VerificationFailed(format!("H_0 = {} but the coinvariants have dimension {}", h[0], n.dim() - image)));
    }
    Ok(h)
}

/// Express `Alt_A(L, A)` for `A = R` as the Chevalley–Eilenberg algebra of `L`.
pub fn mc_matches_cce(lr: &LieRinehartAlgebra) -> Result<bool> {
    if lr.a.dim() != 1 {
        return Ok(false);
    }
    let g = Arc::new(lr.real_lie_algebra()?);
    let a = ModuleAlgebra::trivial(&g, CommAlgebra::ground(lr.field()));
    Ok(crate::lie::alt_algebra(&g, &a)? == mc_algebra(lr)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn dual_numbers_euler_mc_algebra() {
        let lr = LieRinehartAlgebra::euler_dual_numbers(q());
        let mc = mc_algebra(&lr).unwrap();
        assert_eq!(mc.cohomology_dims().unwrap()[0], 1);
        assert_eq!(mc_dims(&lr).unwrap(), vec![2, 2]);
    }

    #[test]
    fn lie_case_matches_cce() {
        let lr = LieRinehartAlgebra::from_lie(&LieAlgebra::sl2(q()));
        assert!(mc_matches_cce(&lr).unwrap());
    }
}
