//! Finite transitive groupoids presented as `B × B × G`, their modules, the
//! monad `F`, groupoid cohomology and restriction to a vertex group.

use std::sync::Arc;

use crate::complex::{quasi_isomorphism_failure, verify_chain_map, GradedSpace};
use crate::cosimplicial::{induced_chain_map, normalized_total};
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Side};
use crate::group::FiniteGroup;
use crate::group_cohomology::{MonadKind, GroupMonad};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::monad::{dual_standard_construction, Monad, MonadObject, DEFAULT_SIZE_LIMIT};
use crate::scalar::Field;

/// Arrow `(target, source, g)`.
pub type Arrow = (usize, usize, usize);

/// The gauge groupoid of the trivial bundle `B × G → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitiveGroupoid {
    base: usize,
    vertex: Arc<FiniteGroup>,
}

impl TransitiveGroupoid {
    /// Build and verify the groupoid axioms exhaustively.
    pub fn gauge(base: usize, vertex: Arc<FiniteGroup>) -> Result<Self> {
        if base == 0 {
            return Err(Error::Validation("empty base".into()));
        }
        let om = TransitiveGroupoid { base, vertex };
        om.check_axioms()?;
        Ok(om)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn vertex_group(&self) -> &Arc<FiniteGroup> {
        &self.vertex
    }

    pub fn arrow_count(&self) -> usize {
        self.base * self.base * self.vertex.order()
    }

    pub fn index(&self, a: Arrow) -> usize {
        (a.0 * self.base + a.1) * self.vertex.order() + a.2
    }

    pub fn arrow(&self, i: usize) -> Arrow {
        let n = self.vertex.order();
        let g = i % n;
        let ts = i / n;
        (ts / self.base, ts % self.base, g)
    }

    pub fn identity(&self, b: usize) -> Arrow {
        (b, b, self.vertex.identity())
    }

    pub fn inverse(&self, a: Arrow) -> Arrow {
        (a.1, a.0, self.vertex.inv(a.2))
    }

    /// `a ∘ c`, defined when `source(a) = target(c)`.
    pub fn compose(&self, a: Arrow, c: Arrow) -> Option<Arrow> {
        (a.1 == c.0).then(|| (a.0, c.1, self.vertex.mul(a.2, c.2)))
    }

    fn check_axioms(&self) -> Result<()> {
        let all: Vec<Arrow> = (0..self.arrow_count()).map(|i| self.arrow(i)).collect();
        for &a in &all {
            if self.compose(self.identity(a.0), a) != Some(a) || self.compose(a, self.identity(a.1)) != Some(a) {
                return Err(Error::IdentityLaw(format!("arrow {a:?}")));
            }
            if self.compose(a, self.inverse(a)) != Some(self.identity(a.0)) {
                return Err(Error::InverseLaw(self.index(a)));
            }
            for &b in all.iter().filter(|b| b.0 == a.1) {
                let ab = self.compose(a, b).unwrap();
                for &c in all.iter().filter(|c| c.0 == b.1) {
                    if self.compose(ab, c) != self.compose(a, self.compose(b, c).unwrap()) {
                        return Err(Error::Associativity(self.index(a), self.index(b), self.index(c)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Generating arrows relative to base point `q`: `(b, q, e)` for `b ≠ q`, then
    /// `(q, q, g)` for the generators `g` of the vertex group.
    pub fn generators(&self, q: usize) -> Vec<Arrow> {
        let e = self.vertex.identity();
        (0..self.base)
            .filter(|&b| b != q)
            .map(|b| (b, q, e))
            .chain(self.vertex.generators().iter().map(|&g| (q, q, g)))
            .collect()
    }

    /// Arrows with source `q`, in local order `b·|G| + g`.
    pub fn star(&self, q: usize) -> Vec<Arrow> {
        (0..self.base).flat_map(|b| (0..self.vertex.order()).map(move |g| (b, q, g))).collect()
    }
}

/// A representation of a transitive groupoid in degree 0: one matrix per arrow.
#[derive(Clone, Debug)]
pub struct GroupoidModule {
    pub groupoid: Arc<TransitiveGroupoid>,
    pub field: Field,
    pub fiber_dim: usize,
    /// `actions[index(a)]: E_{source(a)} → E_{target(a)}`.
    pub actions: Vec<SparseMatrix>,
}

impl GroupoidModule {
    /// Validate functoriality on every composable pair.
    pub fn new(
        groupoid: Arc<TransitiveGroupoid>,
        field: Field,
        fiber_dim: usize,
        actions: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let om = &groupoid;
        if actions.len() != om.arrow_count() {
            return Err(Error::ActionLaw(format!("{} matrices for {} arrows", actions.len(), om.arrow_count())));
        }
        for (i, a) in actions.iter().enumerate() {
            if a.rows() != fiber_dim || a.cols() != fiber_dim || a.field() != field {
                return Err(Error::DimensionMismatch(format!("action of arrow {:?}", om.arrow(i))));
            }
        }
        for b in 0..om.base() {
            if !actions[om.index(om.identity(b))].is_identity() {
                return Err(Error::ActionLaw(format!("identity at {b} does not act trivially")));
            }
        }
        for i in 0..om.arrow_count() {
            let a = om.arrow(i);
            for j in 0..om.arrow_count() {
                let c = om.arrow(j);
                if let Some(ac) = om.compose(a, c) {
                    if actions[om.index(ac)] != actions[i].mul(&actions[j]) {
                        return Err(Error::ActionLaw(format!("M({a:?}∘{c:?}) ≠ M({a:?})M({c:?})")));
                    }
                }
            }
        }
        Ok(GroupoidModule { groupoid, field, fiber_dim, actions })
    }

    /// Fibers `E_b = V`, arrow `(b', b, g)` acting by `ρ(g)`.
    pub fn induced(groupoid: Arc<TransitiveGroupoid>, v: &GModule) -> Result<Self> {
        if v.side() != Side::Left || **v.group() != **groupoid.vertex_group() {
            return Err(Error::Validation("induction needs a left module of the vertex group".into()));
        }
        let actions = (0..groupoid.arrow_count()).map(|i| v.action(groupoid.arrow(i).2).clone()).collect();
        GroupoidModule::new(groupoid, v.field(), v.dim(), actions)
    }

    /// Functions on an `Ω`-set with fibers of size `k` induced from a left G-set
    /// `perm[g][p]`: arrow `(b', b, g)` sends `e_p` to `e_{g·p}`.
    pub fn functions_on_induced_set(
        groupoid: Arc<TransitiveGroupoid>,
        field: Field,
        perm: &[Vec<usize>],
    ) -> Result<Self> {
        let k = perm.first().map_or(0, |p| p.len());
        let g = groupoid.vertex_group().clone();
        let mats: Vec<SparseMatrix> = perm
            .iter()
            .map(|p| SparseMatrix::from_triplets(k, k, field, (0..k).map(|i| (p[i], i, field.one()))))
            .collect::<Result<_>>()?;
        let v = GModule::new(g, field, Side::Left, mats)?;
        GroupoidModule::induced(groupoid, &v)
    }

    /// The vertex group at `q` acting on `E_q`, as a left module.
    pub fn restrict(&self, q: usize) -> Result<GModule> {
        let om = &self.groupoid;
        let g = om.vertex_group().clone();
        let actions = (0..g.order()).map(|x| self.actions[om.index((q, q, x))].clone()).collect();
        GModule::new(g, self.field, Side::Left, actions)
    }

    /// Degree-0 monad object with generators taken relative to base point `q`.
    pub fn object(&self, q: usize) -> GroupoidObject {
        let om = &self.groupoid;
        let m = om.base();
        let d = self.fiber_dim;
        let gens = om
            .generators(q)
            .into_iter()
            .map(|a| {
                let block = &self.actions[om.index(a)];
                place(block, m * d, a.0 * d, a.1 * d)
            })
            .collect();
        GroupoidObject {
            groupoid: om.clone(),
            base_point: q,
            field: self.field,
            grading: GradedSpace::new(0, vec![m * d]),
            fiber_dims: vec![d],
            gens,
            differential: None,
        }
    }
}

/// `block` placed at `(r0, c0)` inside an `n × n` zero matrix.
fn place(block: &SparseMatrix, n: usize, r0: usize, c0: usize) -> SparseMatrix {
    let mut rows: Vec<SparseVec> = vec![Vec::new(); n];
    for (i, r) in block.row_data().iter().enumerate() {
        rows[r0 + i] = r.iter().map(|(j, v)| (j + c0, v.clone())).collect();
    }
    SparseMatrix::from_rows(n, block.field(), rows)
}

/// A graded groupoid module with optional fiberwise differential, stored on
/// the total space ordered by (degree, base point, fiber coordinate).
#[derive(Clone, Debug)]
pub struct GroupoidObject {
    pub groupoid: Arc<TransitiveGroupoid>,
    pub base_point: usize,
    pub field: Field,
    pub grading: GradedSpace,
    /// Fiber dimension in each degree.
    pub fiber_dims: Vec<usize>,
    /// Total-space actions of [`TransitiveGroupoid::generators`] at `base_point`.
    pub gens: Vec<SparseMatrix>,
    pub differential: Option<SparseMatrix>,
}

impl GroupoidObject {
    /// A complex of groupoid modules `ζ^lo → ζ^{lo+1} → ⋯` with fiberwise
    /// differentials `diffs[k][b]: E^k_b → E^{k+1}_b`, checked equivariant.
    pub fn complex(modules: &[GroupoidModule], lo: i64, diffs: &[Vec<SparseMatrix>], q: usize) -> Result<Self> {
        let first = modules.first().ok_or_else(|| Error::Validation("empty complex".into()))?;
        let om = first.groupoid.clone();
        let m = om.base();
        let field = first.field;
        let fiber_dims: Vec<usize> = modules.iter().map(|z| z.fiber_dim).collect();
        let grading = GradedSpace::new(lo, fiber_dims.iter().map(|d| m * d).collect());
        let total = grading.total();
        let gens = om
            .generators(q)
            .into_iter()
            .map(|a| {
                let mut rows: Vec<SparseVec> = vec![Vec::new(); total];
                for (k, z) in modules.iter().enumerate() {
                    let off = grading.offset(lo + k as i64);
                    let d = z.fiber_dim;
                    for (i, r) in z.actions[om.index(a)].row_data().iter().enumerate() {
                        rows[off + a.0 * d + i] = r.iter().map(|(j, v)| (off + a.1 * d + j, v.clone())).collect();
                    }
                }
                SparseMatrix::from_rows(total, field, rows)
            })
            .collect();
        let mut entries = Vec::new();
        for (k, per_base) in diffs.iter().enumerate() {
            if per_base.len() != m || k + 1 >= modules.len() {
                return Err(Error::DimensionMismatch(format!("differential in degree {}", lo + k as i64)));
            }
            let (so, to) = (grading.offset(lo + k as i64), grading.offset(lo + k as i64 + 1));
            let (sd, td) = (fiber_dims[k], fiber_dims[k + 1]);
            for (b, db) in per_base.iter().enumerate() {
                if db.rows() != td || db.cols() != sd {
                    return Err(Error::DimensionMismatch(format!("differential block at base point {b}")));
                }
                for (r, c, v) in db.entries() {
                    entries.push((to + b * td + r, so + b * sd + c, v.clone()));
                }
            }
        }
        let d = SparseMatrix::accumulate(total, total, field, entries);
        if !d.mul(&d).is_zero() {
            return Err(Error::CompositionNotZero(lo));
        }
        let obj = GroupoidObject {
            groupoid: om,
            base_point: q,
            field,
            grading,
            fiber_dims,
            gens,
            differential: Some(d.clone()),
        };
        for a in &obj.gens {
            if d.mul(a) != a.mul(&d) {
                return Err(Error::ActionLaw("differential is not equivariant".into()));
            }
        }
        Ok(obj)
    }

    fn fiber_index(&self, k: i64, b: usize, i: usize) -> usize {
        let kk = (k - self.grading.lo) as usize;
        self.grading.offset(k) + b * self.fiber_dims[kk] + i
    }

    fn projection(&self, b: usize) -> SparseMatrix {
        let one = self.field.one();
        let total = self.grading.total();
        let mut rows: Vec<SparseVec> = vec![Vec::new(); total];
        for k in self.grading.lo..=self.grading.hi() {
            let fd = self.fiber_dims[(k - self.grading.lo) as usize];
            for i in 0..fd {
                let r = self.fiber_index(k, b, i);
                rows[r] = vec![(r, one.clone())];
            }
        }
        SparseMatrix::from_rows(total, self.field, rows)
    }
}

impl MonadObject for GroupoidObject {
    fn field(&self) -> Field {
        self.field
    }

    fn grading(&self) -> &GradedSpace {
        &self.grading
    }

    fn truncate(&self, cap: i64) -> Self {
        let g = self.grading.truncated(cap);
        let n = g.total();
        GroupoidObject {
            groupoid: self.groupoid.clone(),
            base_point: self.base_point,
            field: self.field,
            fiber_dims: self.fiber_dims[..g.dims.len()].to_vec(),
            gens: self.gens.iter().map(|a| a.prefix(n, n)).collect(),
            differential: self.differential.as_ref().map(|d| d.prefix(n, n)),
            grading: g,
        }
    }

    /// `P_{target(a)} − M(a)` for each generating arrow `a`.
    fn invariant_operators(&self) -> Vec<SparseMatrix> {
        let gens = self.groupoid.generators(self.base_point);
        gens.iter().zip(&self.gens).map(|(a, m)| self.projection(a.0).sub(m)).collect()
    }

    fn structure_maps(&self) -> Vec<SparseMatrix> {
        (0..self.groupoid.base()).map(|b| self.projection(b)).chain(self.gens.iter().cloned()).collect()
    }

    fn differential(&self) -> Option<SparseMatrix> {
        self.differential.clone()
    }

    fn describe(&self) -> String {
        format!(
            "groupoid module over {} points with vertex group {}, fiber dimensions {:?}",
            self.groupoid.base(),
            self.groupoid.vertex_group().name(),
            self.fiber_dims
        )
    }
}

/// The monad `F(ζ)_q = Map(Ω^q, ζ_q)`, `(x·ρ)(u) = x(ρ(u·x))`, constant-map unit, `ν(Ψ)(x) = Ψ(x)(x)`.
#[derive(Clone, Debug)]
pub struct GroupoidMonad {
    pub groupoid: Arc<TransitiveGroupoid>,
}

impl GroupoidMonad {
    fn star_size(&self) -> usize {
        self.groupoid.base() * self.groupoid.vertex_group().order()
    }

    fn image(&self, z: &GroupoidObject) -> GroupoidObject {
        let s = self.star_size();
        let m = self.groupoid.base();
        let fiber_dims: Vec<usize> = z.fiber_dims.iter().map(|d| d * s).collect();
        GroupoidObject {
            groupoid: z.groupoid.clone(),
            base_point: z.base_point,
            field: z.field,
            grading: GradedSpace::new(z.grading.lo, fiber_dims.iter().map(|d| d * m).collect()),
            fiber_dims,
            gens: Vec::new(),
            differential: None,
        }
    }

    /// Lift a fiberwise map `f: ζ → η` to `F(ζ) → F(η)`.
    fn lift(&self, f: &SparseMatrix, src: &GroupoidObject, tgt: &GroupoidObject) -> SparseMatrix {
        let s = self.star_size();
        let (fs, ft) = (self.image(src), self.image(tgt));
        let locate = |o: &GroupoidObject, mut i: usize| -> (i64, usize, usize) {
            let k = o.grading.degree_of(i);
            i -= o.grading.offset(k);
            let fd = o.fiber_dims[(k - o.grading.lo) as usize];
            (k, i / fd, i % fd)
        };
        let mut entries = Vec::with_capacity(f.nnz() * s);
        for (r, c, v) in f.entries() {
            let (kr, br, ir) = locate(tgt, r);
            let (kc, bc, ic) = locate(src, c);
            debug_assert_eq!(br, bc, "map is not fiberwise");
            let (fr, fc) = (tgt.fiber_dims[(kr - tgt.grading.lo) as usize], src.fiber_dims[(kc - src.grading.lo) as usize]);
            for u in 0..s {
                entries.push((ft.fiber_index(kr, br, u * fr + ir), fs.fiber_index(kc, bc, u * fc + ic), v.clone()));
            }
        }
        SparseMatrix::accumulate(ft.grading.total(), fs.grading.total(), f.field(), entries)
    }
}

impl Monad for GroupoidMonad {
    type Obj = GroupoidObject;

    fn name(&self) -> String {
        format!("F[{} points, {}]", self.groupoid.base(), self.groupoid.vertex_group().name())
    }

    fn apply(&self, z: &GroupoidObject) -> Result<GroupoidObject> {
        let om = &self.groupoid;
        let g = om.vertex_group();
        let mut out = self.image(z);
        let total = out.grading.total();
        let arrows = om.generators(z.base_point);
        out.gens = arrows
            .iter()
            .zip(&z.gens)
            .map(|(&(t, src, h), a)| {
                // Block row (t, u = (b, t, y)) reads (src, u·x = (b, src, y h)) through M(x).
                let mut rows: Vec<SparseVec> = vec![Vec::new(); total];
                for k in z.grading.lo..=z.grading.hi() {
                    let fd = z.fiber_dims[(k - z.grading.lo) as usize];
                    for b in 0..om.base() {
                        for y in 0..g.order() {
                            let u = b * g.order() + y;
                            let ux = b * g.order() + g.mul(y, h);
                            for i in 0..fd {
                                let row = a.row(z.fiber_index(k, t, i));
                                let base = z.fiber_index(k, src, 0);
                                rows[out.fiber_index(k, t, u * fd + i)] = row
                                    .iter()
                                    .map(|(j, v)| (out.fiber_index(k, src, ux * fd + (j - base)), v.clone()))
                                    .collect();
                            }
                        }
                    }
                }
                SparseMatrix::from_rows(total, z.field, rows)
            })
            .collect();
        out.differential = z.differential.as_ref().map(|d| self.lift(d, z, z));
        Ok(out)
    }

    fn apply_morphism(&self, f: &SparseMatrix, src: &GroupoidObject, tgt: &GroupoidObject) -> SparseMatrix {
        self.lift(f, src, tgt)
    }

    fn unit(&self, z: &GroupoidObject) -> SparseMatrix {
        let s = self.star_size();
        let fz = self.image(z);
        let one = z.field.one();
        let mut entries = Vec::new();
        for k in z.grading.lo..=z.grading.hi() {
            let fd = z.fiber_dims[(k - z.grading.lo) as usize];
            for b in 0..self.groupoid.base() {
                for u in 0..s {
                    for i in 0..fd {
                        entries.push((fz.fiber_index(k, b, u * fd + i), z.fiber_index(k, b, i), one.clone()));
                    }
                }
            }
        }
        SparseMatrix::accumulate(fz.grading.total(), z.grading.total(), z.field, entries)
    }

    fn multiplication(&self, z: &GroupoidObject) -> SparseMatrix {
        let s = self.star_size();
        let fz = self.image(z);
        let ffz = self.image(&fz);
        let one = z.field.one();
        let mut entries = Vec::new();
        for k in z.grading.lo..=z.grading.hi() {
            let fd = z.fiber_dims[(k - z.grading.lo) as usize];
            for b in 0..self.groupoid.base() {
                for u in 0..s {
                    for i in 0..fd {
                        entries.push((
                            fz.fiber_index(k, b, u * fd + i),
                            ffz.fiber_index(k, b, (u * s + u) * fd + i),
                            one.clone(),
                        ));
                    }
                }
            }
        }
        SparseMatrix::accumulate(fz.grading.total(), ffz.grading.total(), z.field, entries)
    }
}

/// `dim H^n(Ω, ζ)` for `lo ≤ n ≤ maxdeg`: cohomology of the invariant sections of the
/// conormalized `F`-construction.
pub fn groupoid_cohomology(z: &GroupoidObject, maxdeg: i64) -> Result<Vec<usize>> {
    let m = GroupoidMonad { groupoid: z.groupoid.clone() };
    let top = maxdeg + 1;
    let c = dual_standard_construction(&m, z, top, DEFAULT_SIZE_LIMIT)?;
    let total = normalized_total(&c.module, top, true)?;
    total.complex.cohomology_dims(z.grading.lo, maxdeg)
}

/// Outcome of [`restrict_to_vertex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub groupoid_dims: Vec<usize>,
    pub vertex_dims: Vec<usize>,
    /// First degree where the restriction map fails to be a quasi-isomorphism.
    pub quasi_iso_failure: Option<i64>,
}

/// Compare groupoid cohomology with the cohomology of the vertex group at `q`,
/// through the degreewise restriction map `Map(Ω^q, −) → Map(Ω_q^q, −)`.
pub fn restrict_to_vertex(z: &GroupoidModule, q: usize, maxdeg: usize) -> Result<RestrictionReport> {
    let om = z.groupoid.clone();
    if q >= om.base() {
        return Err(Error::Validation(format!("base point {q} outside the base")));
    }
    let g = om.vertex_group().clone();
    let top = maxdeg as i64 + 1;
    let obj = z.object(q);
    let fm = GroupoidMonad { groupoid: om.clone() };
    let fc = dual_standard_construction(&fm, &obj, top, DEFAULT_SIZE_LIMIT)?;
    let ftot = normalized_total(&fc.module, top, true)?;
    let v = z.restrict(q)?;
    let um = GroupMonad::new(MonadKind::U, Side::Left, g.clone());
    let uc = dual_standard_construction(&um, &v, top, DEFAULT_SIZE_LIMIT)?;
    let utot = normalized_total(&uc.module, top, true)?;

    // r_n selects the fiber at q and, in every layer, the arrows (q, q, y).
    let (n, m, d) = (g.order(), om.base(), z.fiber_dim);
    let s = m * n;
    let restriction = |level: usize, vec: &SparseVec| -> Result<SparseVec> {
        let layers = level + 1;
        let fd = s.pow(layers as u32) * d;
        let mut out = Vec::new();
        for (idx, val) in vec {
            if idx / fd != q {
                continue;
            }
            let mut local = idx % fd;
            let i = local % d;
            local /= d;
            let mut ys = vec![0; layers];
            let mut keep = true;
            for l in (0..layers).rev() {
                let u = local % s;
                local /= s;
                if u / n != q {
                    keep = false;
                    break;
                }
                ys[l] = u % n;
            }
            if keep {
                let pos = ys.iter().fold(0, |acc, &y| acc * n + y) * d + i;
                out.push((pos, val.clone()));
            }
        }
        Ok(crate::matrix::canonical(out))
    };
    let chain = induced_chain_map(&ftot, &utot, restriction)?;
    let check = verify_chain_map(&chain)?;
    if !check.ok {
        return Err(Error::VerificationFailed(format!(
            "restriction is not a chain map in degree {:?}",
            check.first_failing_degree
        )));
    }
    let groupoid_dims = ftot.complex.cohomology_dims(0, maxdeg as i64)?;
    let vertex_dims = utot.complex.cohomology_dims(0, maxdeg as i64)?;
    let quasi_iso_failure = quasi_isomorphism_failure(&chain, 0, maxdeg as i64)?;
    Ok(RestrictionReport { groupoid_dims, vertex_dims, quasi_iso_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::check_monad_laws;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn gauge_groupoid_counts() {
        let om = TransitiveGroupoid::gauge(2, z(2)).unwrap();
        assert_eq!(om.arrow_count(), 8);
        assert_eq!(om.star(0).len(), 4);
    }

    #[test]
    fn monad_laws_on_small_groupoid() {
        let om = Arc::new(TransitiveGroupoid::gauge(2, z(2)).unwrap());
        let f2 = Field::prime(2).unwrap();
        let v = GModule::trivial(z(2), f2, Side::Left, 1);
        let zeta = GroupoidModule::induced(om.clone(), &v).unwrap();
        let m = GroupoidMonad { groupoid: om };
        check_monad_laws(&m, &zeta.object(0), DEFAULT_SIZE_LIMIT).unwrap();
    }

    #[test]
    fn single_point_matches_group_cohomology() {
        let om = Arc::new(TransitiveGroupoid::gauge(1, z(2)).unwrap());
        let f2 = Field::prime(2).unwrap();
        let v = GModule::trivial(z(2), f2, Side::Left, 1);
        let zeta = GroupoidModule::induced(om, &v).unwrap();
        assert_eq!(groupoid_cohomology(&zeta.object(0), 3).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn pair_groupoid_has_only_constant_sections() {
        let om = Arc::new(TransitiveGroupoid::gauge(3, Arc::new(FiniteGroup::trivial())).unwrap());
        let v = GModule::trivial(om.vertex_group().clone(), Field::Rational, Side::Left, 2);
        let zeta = GroupoidModule::induced(om, &v).unwrap();
        assert_eq!(groupoid_cohomology(&zeta.object(1), 3).unwrap(), vec![2, 0, 0, 0]);
    }

    #[test]
    fn restriction_is_a_quasi_isomorphism() {
        let om = Arc::new(TransitiveGroupoid::gauge(2, z(2)).unwrap());
        let f2 = Field::prime(2).unwrap();
        let sign = GModule::character(z(2), f2, Side::Left, &[1, -1]).unwrap();
        let zeta = GroupoidModule::induced(om, &sign).unwrap();
        let r = restrict_to_vertex(&zeta, 1, 2).unwrap();
        assert_eq!(r.groupoid_dims, r.vertex_dims);
        assert_eq!(r.groupoid_dims, vec![1, 1, 1]);
        assert_eq!(r.quasi_iso_failure, None);
    }
}
