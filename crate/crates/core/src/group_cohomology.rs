//! The monads `T` (translation) and `U` (diagonal) on G-modules, the
//! isomorphisms relating them, and group cohomology as relative Ext.

use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::{joint_kernel_subcomplex, CochainComplex, Operator};
use crate::cosimplicial::{normalized_total, CosimplicialModule, Level, TotalComplex};
use crate::error::{Error, Result};
use crate::gmodule::{GComplex, GModule, Side};
use crate::group::FiniteGroup;
use crate::linalg;
use crate::matrix::SparseMatrix;
use crate::monad::{check_morphism, dual_standard_construction, Construction, Monad, MonadObject, DEFAULT_SIZE_LIMIT};
use crate::scalar::Field;
use crate::simplicial::{decode, encode, partial_products, SimplicialGroup};

/// Which of the two monads on G-modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonadKind {
    /// `Map(G, V)` with translation in the argument only.
    T,
    /// `Map(G, V)` with the diagonal action.
    U,
}

/// `T` or `U` on modules of a fixed side.
#[derive(Clone, Debug)]
pub struct GroupMonad {
    pub kind: MonadKind,
    pub side: Side,
    pub group: Arc<FiniteGroup>,
}

/// Matrix on `Map(G, W)` (index `y·d + i`) whose block row `y` is `b` placed in block column `target(y)`.
fn block_shift(n: usize, b: &SparseMatrix, target: impl Fn(usize) -> usize) -> SparseMatrix {
    let d = b.cols();
    let mut rows = Vec::with_capacity(n * b.rows());
    for y in 0..n {
        let off = target(y) * d;
        for r in b.row_data() {
            rows.push(r.iter().map(|(j, v)| (j + off, v.clone())).collect());
        }
    }
    SparseMatrix::from_rows(n * d, b.field(), rows)
}

/// Selection matrix with a single one in each row.
fn selection(rows: usize, cols: usize, field: Field, col_of: impl Fn(usize) -> usize) -> SparseMatrix {
    let one = field.one();
    SparseMatrix::from_rows(cols, field, (0..rows).map(|r| vec![(col_of(r), one.clone())]).collect())
}

impl GroupMonad {
    pub fn new(kind: MonadKind, side: Side, group: Arc<FiniteGroup>) -> Self {
        GroupMonad { kind, side, group }
    }

    /// `T` on right modules.
    pub fn monad_t(group: Arc<FiniteGroup>) -> Self {
        GroupMonad::new(MonadKind::T, Side::Right, group)
    }

    /// `U` on right modules.
    pub fn monad_u(group: Arc<FiniteGroup>) -> Self {
        GroupMonad::new(MonadKind::U, Side::Right, group)
    }

    fn check_side(&self, w: &GModule) -> Result<()> {
        if w.side() != self.side || **w.group() != *self.group {
            return Err(Error::Validation(format!(
                "{} expects {:?} modules over {}, got {}",
                self.name(),
                self.side,
                self.group.name(),
                w.describe()
            )));
        }
        Ok(())
    }
}

impl Monad for GroupMonad {
    type Obj = GModule;

    fn name(&self) -> String {
        let k = match self.kind {
            MonadKind::T => "T",
            MonadKind::U => "U",
        };
        format!("{k}[{}, {:?}]", self.group.name(), self.side)
    }

    fn apply(&self, w: &GModule) -> Result<GModule> {
        self.check_side(w)?;
        let g = &self.group;
        let n = g.order();
        let d = w.dim();
        let field = w.field();
        let id = SparseMatrix::identity(d, field);
        let gens = g
            .generators()
            .iter()
            .zip(w.generator_actions())
            .map(|(&x, a)| {
                let b = match self.kind {
                    MonadKind::T => &id,
                    MonadKind::U => a,
                };
                match self.side {
                    // Right: (α·x)(y) = α(xy)[·x]; left: (x·α)(y) = [x·]α(yx).
                    Side::Right => block_shift(n, b, |y| g.mul(x, y)),
                    Side::Left => block_shift(n, b, |y| g.mul(y, x)),
                }
            })
            .collect();
        let mut out = GModule::unchecked(g.clone(), field, self.side, gens);
        if g.generators().is_empty() {
            out = GModule::trivial(g.clone(), field, self.side, n * d);
        }
        Ok(out)
    }

    fn apply_morphism(&self, f: &SparseMatrix, _: &GModule, _: &GModule) -> SparseMatrix {
        f.repeat_diag(self.group.order())
    }

    fn unit(&self, w: &GModule) -> SparseMatrix {
        let n = self.group.order();
        let d = w.dim();
        match self.kind {
            // u(v)(y) = v·y (right) or y·v (left): block row y is A_y.
            MonadKind::T => {
                let blocks: Vec<&SparseMatrix> = w.actions().iter().collect();
                SparseMatrix::vstack(&blocks, d, w.field())
            }
            // ω(v) is constant.
            MonadKind::U => selection(n * d, d, w.field(), |r| r % d),
        }
    }

    fn multiplication(&self, w: &GModule) -> SparseMatrix {
        let g = &self.group;
        let n = g.order();
        let d = w.dim();
        let e = g.identity();
        match self.kind {
            // μ(Φ)(x) = Φ(x)(e).
            MonadKind::T => selection(n * d, n * n * d, w.field(), |r| ((r / d) * n + e) * d + r % d),
            // ν(Ψ)(x) = Ψ(x)(x).
            MonadKind::U => selection(n * d, n * n * d, w.field(), |r| ((r / d) * n + r / d) * d + r % d),
        }
    }
}

/// `θ_W: U(W) → T(W)`, `θ(ρ)(y) = ρ(y)·y` (or `y·ρ(y)` on the left).
pub fn theta(w: &GModule) -> SparseMatrix {
    let blocks: Vec<&SparseMatrix> = w.actions().iter().collect();
    SparseMatrix::block_diag(&blocks, w.field())
}

fn fail(what: String) -> Error {
    Error::VerificationFailed(what)
}

/// Check that `θ_V` is an equivariant isomorphism compatible with units and
/// multiplications, and natural with respect to `f: V → W` when given.
pub fn verify_theta(v: &GModule, naturality: Option<(&SparseMatrix, &GModule)>) -> Result<SparseMatrix> {
    let g = v.group().clone();
    let (tm, um) = (GroupMonad::new(MonadKind::T, v.side(), g.clone()), GroupMonad::new(MonadKind::U, v.side(), g));
    let (tv, uv) = (tm.apply(v)?, um.apply(v)?);
    let th = theta(v);
    check_morphism(&th, &uv, &tv).map_err(|w| fail(format!("θ is not equivariant: {w}")))?;
    if linalg::rank(&th) != th.rows() {
        return Err(fail("θ is not invertible".into()));
    }
    if th.mul(&um.unit(v)) != tm.unit(v) {
        return Err(fail("θ∘ω ≠ u".into()));
    }
    // θ∘ν = μ∘(θ∗θ) with θ∗θ = θ_T ∘ U(θ) = T(θ) ∘ θ_U.
    let uuv = um.apply(&uv)?;
    let ttv = tm.apply(&tv)?;
    let h1 = theta(&tv).mul(&um.apply_morphism(&th, &uv, &tv));
    let h2 = tm.apply_morphism(&th, &uv, &tv).mul(&theta(&uv));
    if h1 != h2 {
        return Err(fail("the two horizontal composites θ∗θ differ".into()));
    }
    check_morphism(&h1, &uuv, &ttv).map_err(|w| fail(format!("θ∗θ is not equivariant: {w}")))?;
    if th.mul(&um.multiplication(v)) != tm.multiplication(v).mul(&h1) {
        return Err(fail("θ∘ν ≠ μ∘(θ∗θ)".into()));
    }
    if let Some((f, w)) = naturality {
        if !v.is_equivariant(f, w) {
            return Err(Error::Validation("naturality test map is not equivariant".into()));
        }
        let lhs = theta(w).mul(&um.apply_morphism(f, v, w));
        let rhs = tm.apply_morphism(f, v, w).mul(&th);
        if lhs != rhs {
            return Err(fail("θ is not natural".into()));
        }
    }
    Ok(th)
}

/// Dual standard construction of `m` on `v`, through cosimplicial degree `top`.
pub fn construction(m: &GroupMonad, v: &GModule, top: usize) -> Result<Construction<GModule>> {
    dual_standard_construction(m, v, top as i64, DEFAULT_SIZE_LIMIT)
}

/// Component of an explicit degreewise map between functions on `G^{n+1}`:
/// block row `x̄` is `block(x̄)` placed in block column `col(x̄)`.
fn tuple_map(
    g: &FiniteGroup,
    n: usize,
    d: usize,
    field: Field,
    col: impl Fn(&[usize]) -> usize + Sync,
    block: impl Fn(&[usize]) -> SparseMatrix + Sync,
) -> SparseMatrix {
    let size = g.order().pow(n as u32 + 1);
    let rows: Vec<Vec<_>> = (0..size)
        .into_par_iter()
        .map(|i| {
            let xs = decode(g.order(), n, i);
            let off = col(&xs) * d;
            block(&xs).row_data().iter().map(|r| r.iter().map(|(j, v)| (j + off, v.clone())).collect()).collect()
        })
        .collect();
    SparseMatrix::from_rows(size * d, field, rows.into_iter().flatten().collect())
}

/// `Θ_n(α)(x̄) = α(x_0, x_0x_1, …, x_0⋯x_n)·x_0⋯x_n` for `n = 0..=top`.
pub fn big_theta(v: &GModule, top: usize) -> Vec<SparseMatrix> {
    let g = v.group();
    (0..=top)
        .map(|n| {
            tuple_map(g, n, v.dim(), v.field(), |xs| encode(g.order(), &partial_products(g, xs)), |xs| {
                v.action(g.product(xs)).clone()
            })
        })
        .collect()
}

/// `Φ_n(α)(x̄) = α(x̄)·x_0⋯x_n` from `Map((EG)^left, V)` to the `T`-construction.
pub fn phi(v: &GModule, top: usize) -> Vec<SparseMatrix> {
    let g = v.group();
    (0..=top)
        .map(|n| tuple_map(g, n, v.dim(), v.field(), |xs| encode(g.order(), xs), |xs| v.action(g.product(xs)).clone()))
        .collect()
}

/// `Ψ_n(α)(x̄) = α(x_0, x_0x_1, …)` from `Map(EG, V)` to `Map((EG)^left, V)`.
pub fn psi(v: &GModule, top: usize) -> Vec<SparseMatrix> {
    let g = v.group();
    let id = SparseMatrix::identity(v.dim(), v.field());
    (0..=top)
        .map(|n| {
            tuple_map(g, n, v.dim(), v.field(), |xs| encode(g.order(), &partial_products(g, xs)), |_| id.clone())
        })
        .collect()
}

/// `Θ` as iterated horizontal composites `θ_{T^k V} ∘ U(Θ^{(k)})`.
pub fn big_theta_composite(v: &GModule, top: usize) -> Result<Vec<SparseMatrix>> {
    let g = v.group().clone();
    let tm = GroupMonad::new(MonadKind::T, v.side(), g.clone());
    let um = GroupMonad::new(MonadKind::U, v.side(), g);
    let mut out = vec![theta(v)];
    let mut tk = v.clone();
    let mut uk = v.clone();
    for _ in 0..top {
        let next_t = tm.apply(&tk)?;
        let prev = out.last().unwrap();
        let lifted = um.apply_morphism(prev, &uk, &tk);
        out.push(theta(&next_t).mul(&lifted));
        uk = um.apply(&uk)?;
        tk = next_t;
    }
    Ok(out)
}

/// Check that `maps[n]: X^n → Y^n` commute with all cofaces and codegeneracies,
/// intertwine the structure maps, and are bijective.
pub fn verify_cosimplicial_iso(
    src: &CosimplicialModule,
    src_objs: &[GModule],
    tgt: &CosimplicialModule,
    tgt_objs: &[GModule],
    maps: &[SparseMatrix],
) -> Result<()> {
    let top = maps.len() - 1;
    if src.top() < top || tgt.top() < top {
        return Err(Error::TruncationInsufficient(format!("maps reach degree {top}")));
    }
    for n in 0..=top {
        let f = &maps[n];
        if f.rows() != tgt.levels[n].dim() || f.cols() != src.levels[n].dim() {
            return Err(Error::DimensionMismatch(format!("component {n} has the wrong shape")));
        }
        check_morphism(f, &src_objs[n], &tgt_objs[n]).map_err(|w| fail(format!("component {n}: {w}")))?;
        if linalg::rank(f) != f.rows() || f.rows() != f.cols() {
            return Err(fail(format!("component {n} is not bijective")));
        }
        if n < top {
            for j in 0..=n + 1 {
                let lhs = maps[n + 1].mul(&src.levels[n].cofaces[j]);
                let rhs = tgt.levels[n].cofaces[j].mul(f);
                if lhs != rhs {
                    return Err(fail(format!("component {} does not commute with ε^{j}", n + 1)));
                }
            }
            for j in 0..=n {
                let lhs = f.mul(&src.levels[n + 1].codegeneracies[j]);
                let rhs = tgt.levels[n + 1].codegeneracies[j].mul(&maps[n + 1]);
                if lhs != rhs {
                    return Err(fail(format!("component {n} does not commute with η^{j}")));
                }
            }
        }
    }
    Ok(())
}

/// Functions on a simplicial G-set with values in a right module, with the
/// diagonal action `(α·x)(p) = α(x·p)·x`; cofaces and codegeneracies are pullbacks.
pub fn map_cosimplicial(x: &SimplicialGroup, v: &GModule) -> Result<(CosimplicialModule, Vec<GModule>)> {
    if v.side() != Side::Right {
        return Err(Error::Validation("functions on a simplicial G-set need a right module".into()));
    }
    let set = x.set();
    let d = v.dim();
    let field = v.field();
    let id = SparseMatrix::identity(d, field);
    let pullback = |src_points: usize, f: &[usize]| -> SparseMatrix {
        let mut out = Vec::with_capacity(f.len() * d);
        for &q in f.iter() {
            for r in id.row_data() {
                out.push(r.iter().map(|(j, s)| (j + q * d, s.clone())).collect());
            }
        }
        SparseMatrix::from_rows(src_points * d, field, out)
    };
    let top = set.top();
    let mut objs = Vec::new();
    let mut levels = Vec::new();
    for n in 0..=top {
        let size = set.sizes[n];
        let gset = &x.construction.objects[n];
        let gens: Vec<SparseMatrix> = gset
            .gens
            .iter()
            .zip(v.generator_actions())
            .map(|(act, a)| block_shift(size, a, |p| act[p]))
            .collect();
        let obj = if gens.is_empty() {
            GModule::trivial(v.group().clone(), field, Side::Right, size * d)
        } else {
            GModule::unchecked(v.group().clone(), field, Side::Right, gens)
        };
        let cofaces = if n < top {
            (0..=n + 1).map(|j| pullback(set.sizes[n], &set.faces[n + 1][j])).collect()
        } else {
            Vec::new()
        };
        let codegeneracies =
            if n >= 1 { (0..n).map(|j| pullback(set.sizes[n], &set.degeneracies[n - 1][j])).collect() } else { Vec::new() };
        levels.push(Level {
            grading: obj.grading().clone(),
            cap: crate::cosimplicial::UNBOUNDED,
            cofaces,
            codegeneracies,
            invariant_ops: obj.invariant_operators(),
            differential: None,
        });
        objs.push(obj);
    }
    let cs = CosimplicialModule { field, levels };
    cs.check_identities()?;
    Ok((cs, objs))
}

/// How cohomology is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    T,
    U,
}

/// Result of a group cohomology computation.
#[derive(Clone, Debug)]
pub struct GroupCohomology {
    pub dims: Vec<usize>,
    pub total: TotalComplex,
}

/// `dim H^n(G, V)` for `0 ≤ n ≤ maxdeg`: cohomology of the fixed points of the
/// conormalized dual standard construction.
pub fn group_cohomology(v: &GModule, maxdeg: usize, via: Via) -> Result<GroupCohomology> {
    let kind = match via {
        Via::T => MonadKind::T,
        Via::U => MonadKind::U,
    };
    let m = GroupMonad::new(kind, v.side(), v.group().clone());
    let top = maxdeg + 1;
    let c = construction(&m, v, top)?;
    let total = normalized_total(&c.module, top as i64, true)?;
    let dims = total.complex.cohomology_dims(0, maxdeg as i64)?;
    Ok(GroupCohomology { dims, total })
}

/// Fixed points of a complex of G-modules, degreewise, with the restricted differential.
pub fn invariants_functor(c: &GComplex) -> Result<CochainComplex> {
    let space = c.complex.space();
    let k = c.modules.first().map_or(0, |m| m.generator_actions().len());
    let ops: Vec<Operator> = (0..k)
        .map(|g| Operator {
            degree_shift: 0,
            components: c
                .modules
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let a = &m.generator_actions()[g];
                    (space.lo + i as i64, a.sub(&SparseMatrix::identity(m.dim(), m.field())))
                })
                .collect(),
        })
        .collect();
    Ok(joint_kernel_subcomplex(&c.complex, &ops)?.complex)
}

/// `Hom_R(W, V)` as a module of the same side, `(f·x) = ρ_V(x) f ρ_W(x)⁻¹` in matrix form,
/// vectorized row-major (`f[i][j]` at index `i·dim W + j`).
pub fn hom_module(w: &GModule, v: &GModule) -> Result<GModule> {
    if w.side() != v.side() || w.group() != v.group() || w.field() != v.field() {
        return Err(Error::Validation("Hom needs modules of the same side over the same group".into()));
    }
    let g = v.group();
    // vec(A f B) = (A ⊗ Bᵀ) vec(f) for row-major vectorization.
    let all: Vec<SparseMatrix> = (0..g.order())
        .map(|x| v.action(x).kron(&w.action(g.inv(x)).transpose()))
        .collect();
    GModule::new(g.clone(), v.field(), v.side(), all)
}

/// `dim Ext^n_G(W, V) = dim H^n(G, Hom_R(W, V))` for `0 ≤ n ≤ maxdeg`.
pub fn ext_group(w: &GModule, v: &GModule, maxdeg: usize) -> Result<Vec<usize>> {
    Ok(group_cohomology(&hom_module(w, v)?, maxdeg, Via::U)?.dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::check_monad_laws;
    use crate::simplicial::{build_eg, build_eg_left};

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn monads_satisfy_laws_and_dimensions() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let v = GModule::standard_s3(g.clone(), Field::Rational, Side::Right).unwrap();
        for kind in [MonadKind::T, MonadKind::U] {
            let m = GroupMonad::new(kind, Side::Right, g.clone());
            assert_eq!(m.apply(&v).unwrap().dim(), 12);
            check_monad_laws(&m, &v, DEFAULT_SIZE_LIMIT).unwrap();
        }
        let vl = v.opposite();
        for kind in [MonadKind::T, MonadKind::U] {
            let m = GroupMonad::new(kind, Side::Left, g.clone());
            check_monad_laws(&m, &vl, DEFAULT_SIZE_LIMIT).unwrap();
        }
    }

    #[test]
    fn unit_and_multiplication_formulas() {
        let g = z(3);
        let f = Field::prime(3).unwrap();
        let v = GModule::regular(g.clone(), f, Side::Right);
        let t = GroupMonad::monad_t(g.clone());
        let u = t.unit(&v);
        for x in 0..3 {
            assert_eq!(u.block(x * 3, x * 3 + 3, 0, 3), *v.action(x));
        }
        let mu = t.multiplication(&v);
        // μ(Φ)(x) = Φ(x)(e): entry ((x, i), ((x, 0), i)).
        for x in 0..3 {
            for i in 0..3 {
                assert!(mu.get(x * 3 + i, (x * 3) * 3 + i).is_one());
            }
        }
        let um = GroupMonad::monad_u(z(2));
        let w = GModule::trivial(z(2), Field::Rational, Side::Right, 1);
        let nu = um.multiplication(&w);
        assert!(nu.get(1, 3).is_one() && nu.get(0, 0).is_one());
    }

    #[test]
    fn theta_on_sign_flips_nonidentity_value() {
        let v = GModule::sign_of_cyclic2(Field::Rational, Side::Right);
        let th = verify_theta(&v, None).unwrap();
        assert_eq!(th, SparseMatrix::from_i64(Field::Rational, &[vec![1, 0], vec![0, -1]]));
        let triv = GModule::trivial(z(2), Field::Rational, Side::Right, 1);
        assert!(verify_theta(&triv, None).unwrap().is_identity());
    }

    #[test]
    fn cohomology_of_small_cyclic_groups() {
        let v = GModule::trivial(z(2), Field::prime(2).unwrap(), Side::Right, 1);
        for via in [Via::T, Via::U] {
            assert_eq!(group_cohomology(&v, 4, via).unwrap().dims, vec![1, 1, 1, 1, 1]);
        }
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let q = GModule::trivial(s3, Field::Rational, Side::Right, 1);
        assert_eq!(group_cohomology(&q, 3, Via::U).unwrap().dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn big_theta_matches_composite_and_factorization() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let v = GModule::standard_s3(g.clone(), Field::Rational, Side::Right).unwrap();
        let th = big_theta(&v, 2);
        assert_eq!(th, big_theta_composite(&v, 2).unwrap());
        let (ph, ps) = (phi(&v, 2), psi(&v, 2));
        for n in 0..=2 {
            assert_eq!(ph[n].mul(&ps[n]), th[n]);
        }
        let eg = build_eg(g.clone(), 2).unwrap();
        let left = build_eg_left(g.clone(), 2).unwrap();
        let (meg, meg_objs) = map_cosimplicial(&eg, &v).unwrap();
        let (mleft, mleft_objs) = map_cosimplicial(&left, &v).unwrap();
        let uc = construction(&GroupMonad::monad_u(g.clone()), &v, 2).unwrap();
        let tc = construction(&GroupMonad::monad_t(g.clone()), &v, 2).unwrap();
        let uobjs = &uc.objects[1..];
        let tobjs = &tc.objects[1..];
        verify_cosimplicial_iso(&uc.module, uobjs, &tc.module, tobjs, &th).unwrap();
        verify_cosimplicial_iso(&meg, &meg_objs, &mleft, &mleft_objs, &ps).unwrap();
        verify_cosimplicial_iso(&mleft, &mleft_objs, &tc.module, tobjs, &ph).unwrap();
        for n in 0..=2 {
            assert_eq!(meg.levels[n].codegeneracies, uc.module.levels[n].codegeneracies);
            assert_eq!(meg_objs[n].generator_actions(), uobjs[n].generator_actions());
        }
        for n in 0..2 {
            assert_eq!(meg.levels[n].cofaces, uc.module.levels[n].cofaces);
        }
    }

    #[test]
    fn invariants_of_regular_complex() {
        let g = z(2);
        let m = GModule::regular(g, Field::Rational, Side::Right);
        let c = CochainComplex::zero_differential(Field::Rational, crate::complex::GradedSpace::new(0, vec![2, 2]));
        let gc = GComplex::new(c, vec![m.clone(), m]).unwrap();
        assert_eq!(invariants_functor(&gc).unwrap().space().dims, vec![1, 1]);
    }

    #[test]
    fn ext_from_trivial_equals_cohomology() {
        let g = z(3);
        let f = Field::prime(3).unwrap();
        let r = GModule::trivial(g.clone(), f, Side::Right, 1);
        let reg = GModule::regular(g, f, Side::Right);
        assert_eq!(ext_group(&r, &r, 2).unwrap(), vec![1, 1, 1]);
        // The regular module is injective.
        assert_eq!(ext_group(&r, &reg, 2).unwrap(), vec![1, 0, 0]);
    }
}
