//! Finite-dimensional modules over finite groups, with an explicit side.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::complex::GradedSpace;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::SparseMatrix;
use crate::monad::MonadObject;
use crate::scalar::Field;

/// Which side the group acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A module over a finite group. Vectors are columns; for a right module the
/// matrices satisfy `A_{xy} = A_y A_x`, for a left module `A_{xy} = A_x A_y`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    field: Field,
    side: Side,
    grading: GradedSpace,
    gens: Vec<SparseMatrix>,
    all: OnceLock<Vec<SparseMatrix>>,
}

impl PartialEq for GModule {
    fn eq(&self, o: &Self) -> bool {
        self.group == o.group && self.field == o.field && self.side == o.side && self.gens == o.gens
    }
}

fn action_err(what: String) -> Error {
    Error::ActionLaw(what)
}

impl GModule {
    /// Build from one matrix per element and validate the action law exhaustively.
    pub fn new(group: Arc<FiniteGroup>, field: Field, side: Side, actions: Vec<SparseMatrix>) -> Result<Self> {
        let n = group.order();
        if actions.len() != n {
            return Err(action_err(format!("{} matrices for a group of order {n}", actions.len())));
        }
        let dim = actions[group.identity()].rows();
        for (x, a) in actions.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch(format!("action matrix of element {x} is not {dim}x{dim}")));
            }
            if a.field() != field {
                return Err(Error::Validation(format!("action matrix of element {x} is over {}", a.field())));
            }
        }
        if !actions[group.identity()].is_identity() {
            return Err(action_err("identity element does not act as the identity".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = &actions[group.mul(x, y)];
                let rhs = match side {
                    Side::Left => actions[x].mul(&actions[y]),
                    Side::Right => actions[y].mul(&actions[x]),
                };
                if *lhs != rhs {
                    return Err(action_err(format!("action of {x}·{y} is not the composite")));
                }
            }
        }
        let gens = group.generators().iter().map(|&g| actions[g].clone()).collect();
        let all = OnceLock::new();
        let _ = all.set(actions);
        Ok(GModule { group, field, side, grading: GradedSpace::new(0, vec![dim]), gens, all })
    }

    /// Build from the action of each generator of `group`, then validate.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        field: Field,
        side: Side,
        gens: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(action_err(format!(
                "{} generator matrices, the group has {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let m = GModule::unchecked(group.clone(), field, side, gens);
        let all = m.actions().to_vec();
        GModule::new(group, field, side, all)
    }

    /// A module whose laws are guaranteed by construction.
    pub(crate) fn unchecked(group: Arc<FiniteGroup>, field: Field, side: Side, gens: Vec<SparseMatrix>) -> Self {
        let dim = gens.first().map_or(0, |g| g.rows());
        GModule { group, field, side, grading: GradedSpace::new(0, vec![dim]), gens, all: OnceLock::new() }
    }

    /// Trivial action on `R^dim`.
    pub fn trivial(group: Arc<FiniteGroup>, field: Field, side: Side, dim: usize) -> Self {
        let k = group.generators().len();
        let gens = vec![SparseMatrix::identity(dim, field); k];
        let mut m = GModule::unchecked(group, field, side, gens);
        // `unchecked` cannot read the dimension off an empty generator list.
        m.grading = GradedSpace::new(0, vec![dim]);
        m
    }

    /// Permutation module on the group itself: `x·e_g = e_{xg}` or `e_g·x = e_{gx}`.
    pub fn regular(group: Arc<FiniteGroup>, field: Field, side: Side) -> Self {
        let n = group.order();
        let actions = (0..n)
            .map(|x| {
                SparseMatrix::from_triplets(
                    n,
                    n,
                    field,
                    (0..n).map(|g| {
                        let to = match side {
                            Side::Left => group.mul(x, g),
                            Side::Right => group.mul(g, x),
                        };
                        // Column g (basis vector e_g) goes to row `to`.
                        (to, g, field.one())
                    }),
                )
                .expect("permutation matrix")
            })
            .collect();
        GModule::new(group, field, side, actions).expect("regular module")
    }

    /// One-dimensional module through a character `χ: G → {±1}`.
    pub fn character(group: Arc<FiniteGroup>, field: Field, side: Side, chi: &[i64]) -> Result<Self> {
        let actions = chi.iter().map(|&c| SparseMatrix::from_i64(field, &[vec![c]])).collect();
        GModule::new(group, field, side, actions)
    }

    /// `Z/2` acting on a line by `−1`.
    pub fn sign_of_cyclic2(field: Field, side: Side) -> Self {
        GModule::character(Arc::new(FiniteGroup::cyclic(2)), field, side, &[1, -1]).expect("sign module")
    }

    /// Two-dimensional standard representation of `S3` (as built by [`FiniteGroup::symmetric`]).
    pub fn standard_s3(group: Arc<FiniteGroup>, field: Field, side: Side) -> Result<Self> {
        // Generators: a transposition and a 3-cycle, acting on {v ∈ R³ : Σv = 0}
        // with basis e0 − e2, e1 − e2.
        let t = SparseMatrix::from_i64(field, &[vec![0, 1], vec![1, 0]]);
        let c = SparseMatrix::from_i64(field, &[vec![-1, -1], vec![1, 0]]);
        let gens = match side {
            Side::Left => vec![t, c],
            Side::Right => vec![t.transpose(), c.transpose()],
        };
        GModule::from_generators(group, field, side, gens)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.grading.total()
    }

    /// Matrices of the generators, in the order of [`FiniteGroup::generators`].
    pub fn generator_actions(&self) -> &[SparseMatrix] {
        &self.gens
    }

    /// Matrices of all elements, computed on first use.
    pub fn actions(&self) -> &[SparseMatrix] {
        self.all.get_or_init(|| {
            let id = SparseMatrix::identity(self.dim(), self.field);
            (0..self.group.order())
                .map(|x| {
                    self.group.word(x).iter().fold(id.clone(), |acc, &k| match self.side {
                        Side::Left => acc.mul(&self.gens[k]),
                        Side::Right => self.gens[k].mul(&acc),
                    })
                })
                .collect()
        })
    }

    pub fn action(&self, x: usize) -> &SparseMatrix {
        &self.actions()[x]
    }

    /// The same space with the other side, through `x ↦ x⁻¹`.
    pub fn opposite(&self) -> GModule {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        let gens = self.group.generators().iter().map(|&g| self.action(self.group.inv(g)).clone()).collect();
        GModule::unchecked(self.group.clone(), self.field, side, gens)
    }

    /// Dimension of the fixed subspace.
    pub fn fixed_dim(&self) -> usize {
        let id = SparseMatrix::identity(self.dim(), self.field);
        let ops: Vec<SparseMatrix> = self.gens.iter().map(|a| a.sub(&id)).collect();
        let refs: Vec<&SparseMatrix> = ops.iter().collect();
        let stacked = SparseMatrix::vstack(&refs, self.dim(), self.field);
        self.dim() - crate::linalg::rank(&stacked)
    }

    /// Whether `f: self → tgt` commutes with the action.
    pub fn is_equivariant(&self, f: &SparseMatrix, tgt: &GModule) -> bool {
        self.gens.iter().zip(&tgt.gens).all(|(a, b)| f.mul(a) == b.mul(f))
    }
}

impl MonadObject for GModule {
    fn field(&self) -> Field {
        self.field
    }

    fn grading(&self) -> &GradedSpace {
        &self.grading
    }

    fn truncate(&self, cap: i64) -> Self {
        if cap >= 0 {
            self.clone()
        } else {
            GModule::trivial(self.group.clone(), self.field, self.side, 0)
        }
    }

    fn invariant_operators(&self) -> Vec<SparseMatrix> {
        let id = SparseMatrix::identity(self.dim(), self.field);
        self.gens.iter().map(|a| a.sub(&id)).collect()
    }

    fn structure_maps(&self) -> Vec<SparseMatrix> {
        self.gens.clone()
    }

    fn differential(&self) -> Option<SparseMatrix> {
        None
    }

    fn describe(&self) -> String {
        format!("{:?} {}-module of dimension {} over {}", self.side, self.group.name(), self.dim(), self.field)
    }
}

/// A cochain complex whose terms are G-modules and whose differentials are equivariant.
#[derive(Clone, Debug)]
pub struct GComplex {
    pub complex: crate::complex::CochainComplex,
    pub modules: Vec<GModule>,
}

impl GComplex {
    /// Validate sizes, sides and equivariance of every differential.
    pub fn new(complex: crate::complex::CochainComplex, modules: Vec<GModule>) -> Result<Self> {
        let space = complex.space();
        if modules.len() != space.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} modules for {} degrees",
                modules.len(),
                space.dims.len()
            )));
        }
        for (i, m) in modules.iter().enumerate() {
            let deg = space.lo + i as i64;
            if m.dim() != space.dim(deg) {
                return Err(Error::DimensionMismatch(format!("module in degree {deg} has dimension {}", m.dim())));
            }
            if m.group() != modules[0].group() || m.side() != modules[0].side() {
                return Err(Error::Validation(format!("module in degree {deg} is over a different group or side")));
            }
        }
        for i in 0..modules.len().saturating_sub(1) {
            let deg = space.lo + i as i64;
            if !modules[i].is_equivariant(&complex.d(deg), &modules[i + 1]) {
                return Err(Error::ActionLaw(format!("differential in degree {deg} is not equivariant")));
            }
        }
        Ok(GComplex { complex, modules })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_rep_of_s3_is_valid_on_both_sides() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        for side in [Side::Left, Side::Right] {
            let m = GModule::standard_s3(g.clone(), Field::Rational, side).unwrap();
            assert_eq!(m.dim(), 2);
            assert_eq!(m.fixed_dim(), 0);
            let o = m.opposite();
            GModule::new(g.clone(), Field::Rational, o.side(), o.actions().to_vec()).unwrap();
        }
    }

    #[test]
    fn regular_module_has_one_fixed_line() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = GModule::regular(g, Field::Rational, Side::Right);
        assert_eq!(m.fixed_dim(), 1);
    }

    #[test]
    fn bad_action_is_rejected() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let f = Field::Rational;
        let a = SparseMatrix::from_i64(f, &[vec![-1]]);
        let r = GModule::new(g, f, Side::Left, vec![SparseMatrix::identity(1, f), a.clone(), a]);
        assert!(matches!(r, Err(Error::ActionLaw(_))));
    }
}
