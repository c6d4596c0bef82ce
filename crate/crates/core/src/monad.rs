//! Monads evaluated as matrices, and the dual standard construction.

use crate::complex::GradedSpace;
use crate::cosimplicial::{CosimplicialModule, Level};
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::scalar::Field;

/// Default bound on the dimension of any constructed object.
pub const DEFAULT_SIZE_LIMIT: usize = 300_000;

/// An object of a represented category: a graded space plus structure.
pub trait MonadObject: Clone + Send + Sync {
    fn field(&self) -> Field;
    /// Internal grading of the underlying space, truncated at the object's cap.
    fn grading(&self) -> &GradedSpace;
    /// Restrict to internal degrees ≤ `cap`; the basis of the result is a prefix.
    fn truncate(&self, cap: i64) -> Self;
    /// Operators whose joint kernel is the space of morphisms from the unit object.
    fn invariant_operators(&self) -> Vec<SparseMatrix>;
    /// Structure maps that any morphism `f: X → Y` must intertwine, in matching order.
    fn structure_maps(&self) -> Vec<SparseMatrix>;
    /// Internal differential, if the object is a complex.
    fn differential(&self) -> Option<SparseMatrix>;
    fn describe(&self) -> String;

    fn dim(&self) -> usize {
        self.grading().total()
    }
}

/// A monad `(T, u, μ)` whose components are computed on demand.
pub trait Monad: Sync {
    type Obj: MonadObject;

    fn name(&self) -> String;
    /// `T(x)`, truncated at the cap of `x`.
    fn apply(&self, x: &Self::Obj) -> Result<Self::Obj>;
    /// `T(f): T(src) → T(tgt)` for a morphism `f: src → tgt` (same cap).
    fn apply_morphism(&self, f: &SparseMatrix, src: &Self::Obj, tgt: &Self::Obj) -> SparseMatrix;
    /// `u_x: x → T(x)`.
    fn unit(&self, x: &Self::Obj) -> SparseMatrix;
    /// `μ_x: T(T(x)) → T(x)`.
    fn multiplication(&self, x: &Self::Obj) -> SparseMatrix;
}

/// Check that `f: src → tgt` intertwines all structure maps.
pub fn check_morphism<O: MonadObject>(f: &SparseMatrix, src: &O, tgt: &O) -> std::result::Result<(), String> {
    if f.cols() != src.dim() || f.rows() != tgt.dim() {
        return Err(format!(
            "map is {}x{}, objects have dimensions {} and {}",
            f.rows(),
            f.cols(),
            src.dim(),
            tgt.dim()
        ));
    }
    let (s, t) = (src.structure_maps(), tgt.structure_maps());
    if s.len() != t.len() {
        return Err("objects carry different structure".into());
    }
    for (k, (a, b)) in s.iter().zip(&t).enumerate() {
        if f.mul(a) != b.mul(f) {
            return Err(format!("structure map {k} not preserved"));
        }
    }
    if let (Some(a), Some(b)) = (src.differential(), tgt.differential()) {
        if f.mul(&a) != b.mul(f) {
            return Err("differential not preserved".into());
        }
    }
    Ok(())
}

fn law<M: Monad>(law: &str, x: &M::Obj) -> Error {
    Error::MonadLawViolation { law: law.to_string(), object: x.describe() }
}

/// Check the unit and associativity laws, and that `u`, `μ` are morphisms,
/// on `chain = [X, TX, TTX, TTTX]` (all at the same cap).
pub fn check_laws_on_chain<M: Monad>(m: &M, chain: &[M::Obj]) -> Result<()> {
    assert!(chain.len() >= 3);
    let (x, tx, ttx) = (&chain[0], &chain[1], &chain[2]);
    let field = x.field();
    let u = m.unit(x);
    let mu = m.multiplication(x);
    check_morphism(&u, x, tx).map_err(|w| law::<M>(&format!("unit is not a morphism: {w}"), x))?;
    check_morphism(&mu, ttx, tx).map_err(|w| law::<M>(&format!("multiplication is not a morphism: {w}"), x))?;
    let id = SparseMatrix::identity(tx.dim(), field);
    let u_t = m.unit(tx);
    if mu.mul(&u_t) != id {
        return Err(law::<M>("μ∘uT = id", x));
    }
    let t_u = m.apply_morphism(&u, x, tx);
    if mu.mul(&t_u) != id {
        return Err(law::<M>("μ∘Tu = id", x));
    }
    if chain.len() >= 4 {
        let t_mu = m.apply_morphism(&mu, ttx, tx);
        let mu_t = m.multiplication(tx);
        if mu.mul(&t_mu) != mu.mul(&mu_t) {
            return Err(law::<M>("μ∘Tμ = μ∘μT", x));
        }
    }
    Ok(())
}

/// Check the monad laws on `x` by building `T x`, `T² x`, `T³ x`.
pub fn check_monad_laws<M: Monad>(m: &M, x: &M::Obj, size_limit: usize) -> Result<()> {
    let mut chain = vec![x.clone()];
    for _ in 0..3 {
        let next = m.apply(chain.last().unwrap())?;
        if next.dim() > size_limit {
            break;
        }
        chain.push(next);
    }
    if chain.len() < 3 {
        return Err(Error::SizeGuard(format!("T²({}) exceeds {size_limit}", x.describe())));
    }
    check_laws_on_chain(m, &chain)
}

/// The dual standard construction together with the objects `Tⁿ(v)`.
#[derive(Clone, Debug)]
pub struct Construction<O> {
    /// `objects[k] = T^k(v)`, truncated at `top − k + 1` (and `v` at `top`).
    pub objects: Vec<O>,
    pub module: CosimplicialModule,
    pub top: i64,
}

fn trunc_map(f: &SparseMatrix, tgt: &GradedSpace, src: &GradedSpace, cap: i64) -> SparseMatrix {
    f.prefix(tgt.prefix_len(cap), src.prefix_len(cap))
}

/// Degree-`n` object `T^{n+1}(v)`, cofaces `ε^j = T^j u T^{n−j+1}`,
/// codegeneracies `η^j = T^j μ T^{n−j}`, built far enough to compute the
/// normalized total complex through total degree `top`.
///
/// Monad laws are verified on `v` and on every `T^k v` whose `T^{k+3}` is built.
pub fn dual_standard_construction<M: Monad>(
    m: &M,
    v: &M::Obj,
    top: i64,
    size_limit: usize,
) -> Result<Construction<M::Obj>> {
    let lo = v.grading().lo;
    let nlev = (top - lo).max(0) as usize + 1;
    let field = v.field();
    let cap_obj = |k: usize| if k == 0 { top } else { top - k as i64 + 1 };
    let mut objects = vec![v.truncate(cap_obj(0))];
    for k in 1..=nlev {
        let prev = objects[k - 1].truncate(cap_obj(k));
        let next = m.apply(&prev)?;
        if next.dim() > size_limit {
            return Err(Error::SizeGuard(format!(
                "{}^{k} has dimension {} > {size_limit}",
                m.name(),
                next.dim()
            )));
        }
        objects.push(next);
    }
    // Monad laws.
    for k in 0..objects.len() {
        if k + 3 < objects.len() {
            let cap = cap_obj(k + 3);
            let chain: Vec<M::Obj> = (k..=k + 3).map(|i| objects[i].truncate(cap)).collect();
            check_laws_on_chain(m, &chain)?;
        } else if k == 0 {
            check_monad_laws(m, &objects[0], size_limit)?;
        }
    }
    // Level n is objects[n+1]; build cofaces and codegeneracies recursively:
    // ε^0 = u_{T^{n+1}v}, ε^j = T(ε^{j−1} of level n−1); same for η with μ.
    let mut cofaces: Vec<Vec<SparseMatrix>> = Vec::with_capacity(nlev);
    let mut codegens: Vec<Vec<SparseMatrix>> = Vec::with_capacity(nlev);
    for n in 0..nlev {
        let mut cf = Vec::new();
        if n + 1 < nlev {
            let cap = cap_obj(n + 2);
            let x = |i: usize| objects[i].truncate(cap);
            cf.push(m.unit(&x(n + 1)));
            for j in 1..=n + 1 {
                // T(ε^{j−1}: level n−1 → level n), restricted to `cap`; level −1 has only u_v.
                let prev = if n == 0 {
                    m.unit(&x(0))
                } else {
                    trunc_map(&cofaces[n - 1][j - 1], objects[n + 1].grading(), objects[n].grading(), cap)
                };
                cf.push(m.apply_morphism(&prev, &x(n), &x(n + 1)));
            }
        }
        let mut cd = Vec::new();
        if n >= 1 {
            let cap = cap_obj(n + 1);
            let x = |i: usize| objects[i].truncate(cap);
            cd.push(m.multiplication(&x(n - 1)));
            for j in 1..n {
                let prev: &SparseMatrix = &codegens[n - 1][j - 1];
                let prev = trunc_map(prev, objects[n - 1].grading(), objects[n].grading(), cap);
                cd.push(m.apply_morphism(&prev, &x(n), &x(n - 1)));
            }
        }
        cofaces.push(cf);
        codegens.push(cd);
    }
    let levels = (0..nlev)
        .map(|n| {
            let o = &objects[n + 1];
            Level {
                grading: o.grading().clone(),
                cap: cap_obj(n + 1),
                cofaces: std::mem::take(&mut cofaces[n]),
                codegeneracies: std::mem::take(&mut codegens[n]),
                invariant_ops: o.invariant_operators(),
                differential: o.differential(),
            }
        })
        .collect();
    Ok(Construction { objects, module: CosimplicialModule { field, levels }, top })
}

/// A graded space with optional differential and structure, for the identity monad.
#[derive(Clone, Debug)]
pub struct PlainObject {
    pub field: Field,
    pub grading: GradedSpace,
    pub differential: Option<SparseMatrix>,
    pub ops: Vec<SparseMatrix>,
}

impl PlainObject {
    pub fn new(field: Field, dim: usize) -> Self {
        PlainObject { field, grading: GradedSpace::new(0, vec![dim]), differential: None, ops: Vec::new() }
    }
}

impl MonadObject for PlainObject {
    fn field(&self) -> Field {
        self.field
    }

    fn grading(&self) -> &GradedSpace {
        &self.grading
    }

    fn truncate(&self, cap: i64) -> Self {
        let g = self.grading.truncated(cap);
        let n = g.total();
        PlainObject {
            field: self.field,
            differential: self.differential.as_ref().map(|d| d.prefix(n, n)),
            ops: self.ops.iter().map(|o| o.prefix(n, n)).collect(),
            grading: g,
        }
    }

    fn invariant_operators(&self) -> Vec<SparseMatrix> {
        self.ops.clone()
    }

    fn structure_maps(&self) -> Vec<SparseMatrix> {
        self.ops.clone()
    }

    fn differential(&self) -> Option<SparseMatrix> {
        self.differential.clone()
    }

    fn describe(&self) -> String {
        format!("space of dimension {}", self.dim())
    }
}

/// `T = Id`, `u = μ = id`.
pub struct IdentityMonad;

impl Monad for IdentityMonad {
    type Obj = PlainObject;

    fn name(&self) -> String {
        "Id".into()
    }

    fn apply(&self, x: &PlainObject) -> Result<PlainObject> {
        Ok(x.clone())
    }

    fn apply_morphism(&self, f: &SparseMatrix, _: &PlainObject, _: &PlainObject) -> SparseMatrix {
        f.clone()
    }

    fn unit(&self, x: &PlainObject) -> SparseMatrix {
        SparseMatrix::identity(x.dim(), x.field)
    }

    fn multiplication(&self, x: &PlainObject) -> SparseMatrix {
        SparseMatrix::identity(x.dim(), x.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::normalized_total;

    #[test]
    fn identity_monad_gives_constant_object() {
        let v = PlainObject::new(Field::Rational, 2);
        let c = dual_standard_construction(&IdentityMonad, &v, 4, DEFAULT_SIZE_LIMIT).unwrap();
        let k = CosimplicialModule::constant(Field::Rational, 2, c.module.levels.len());
        for (a, b) in c.module.levels.iter().zip(&k.levels) {
            assert_eq!(a.cofaces, b.cofaces);
            assert_eq!(a.codegeneracies, b.codegeneracies);
        }
        c.module.check_identities().unwrap();
        let t = normalized_total(&c.module, 4, true).unwrap();
        assert_eq!(t.complex.cohomology_dims(0, 3).unwrap(), vec![2, 0, 0, 0]);
    }

    #[test]
    fn codegeneracy_after_coface_is_identity() {
        let v = PlainObject::new(Field::Prime(3), 3);
        let c = dual_standard_construction(&IdentityMonad, &v, 3, DEFAULT_SIZE_LIMIT).unwrap();
        for n in 0..c.module.top() {
            let e = c.module.coface(n, 0, 0);
            let s = c.module.codegeneracy(n, 0, 0);
            assert!(s.mul(&e).is_identity());
        }
    }
}
