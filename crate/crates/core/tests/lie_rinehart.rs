use std::sync::Arc;

use relext::dga::CommAlgebra;
use relext::error::Error;
use relext::lie::{cone, LieAlgebra, ModuleAlgebra};
use relext::lie_rinehart::*;
use relext::matrix::SparseMatrix;
use relext::scalar::Field;

const Q: Field = Field::Rational;

/// `R[x]/x³` with `E = x∂` and `F = x²∂`, `[E, F] = F`.
fn truncated_cubic_crossed_product() -> LieRinehartAlgebra {
    let g = Arc::new(LieAlgebra::affine_line(Q));
    let a = CommAlgebra::truncated_polynomial(Q, 3);
    let e = SparseMatrix::from_i64(Q, &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
    let f = SparseMatrix::from_i64(Q, &[vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 0]]);
    let ma = ModuleAlgebra::new(&g, a, vec![e, f]).unwrap();
    LieRinehartAlgebra::crossed_product(&g, &ma).unwrap()
}

fn instances() -> Vec<Arc<LieRinehartAlgebra>> {
    vec![
        Arc::new(LieRinehartAlgebra::from_lie(&LieAlgebra::sl2(Q))),
        Arc::new(LieRinehartAlgebra::euler_dual_numbers(Q)),
        Arc::new(truncated_cubic_crossed_product()),
    ]
}

#[test]
fn diagonal_induces_the_cup_product() {
    for lr in instances() {
        let diag = lr_diagonal(&lr).unwrap();
        let report = validate_comorphism(&diag).unwrap();
        assert!(report.condition_i && report.condition_ii);
        let induced = induced_mca_map(&diag).unwrap();
        assert_eq!(induced, product_multiplication_map(&lr).unwrap(), "{}", lr.name());
    }
}

#[test]
fn perturbed_anchor_breaks_condition_i() {
    let a = CommAlgebra::dual_numbers(Q);
    let twice = SparseMatrix::from_i64(Q, &[vec![0, 0], vec![0, 2]]);
    let lr2 = Arc::new(LieRinehartAlgebra::new("2·Euler", a, vec![twice], &[]).unwrap());
    let honest = lr_diagonal(&Arc::new(LieRinehartAlgebra::euler_dual_numbers(Q))).unwrap();
    let bad = Comorphism { source: lr2, ..honest };
    assert!(matches!(validate_comorphism(&bad), Err(Error::ConditionIFailure(_))));
    assert!(induced_mca_map(&bad).is_err());
}

#[test]
fn invalid_lie_rinehart_data_is_rejected() {
    let a = CommAlgebra::dual_numbers(Q);
    let not_derivation = SparseMatrix::from_i64(Q, &[vec![1, 0], vec![0, 0]]);
    assert!(matches!(
        LieRinehartAlgebra::new("bad", a.clone(), vec![not_derivation], &[]),
        Err(Error::AnchorNotDerivation { generator: 0, .. })
    ));
    // [α0, α1] = α0 with both anchors Euler: the anchor is not a Lie map.
    let d = SparseMatrix::from_i64(Q, &[vec![0, 0], vec![0, 1]]);
    let one = a.unit().clone();
    let r = LieRinehartAlgebra::new("bad", a.clone(), vec![d.clone(), d.clone()], &[(0, 1, vec![one.clone(), vec![]])]);
    assert!(matches!(r, Err(Error::LeibnizFailure(_))));
    // Antisymmetry is enforced on the diagonal.
    let z = SparseMatrix::zeros(2, 2, Q);
    let r = LieRinehartAlgebra::new("bad", a, vec![z], &[(0, 0, vec![one])]);
    assert!(matches!(r, Err(Error::AntisymmetryFailure(0, 0))));
}

#[test]
fn mc_algebra_reduces_to_cce_over_the_ground_field() {
    for g in [LieAlgebra::sl2(Q), LieAlgebra::heisenberg(Q), LieAlgebra::borel2(Q)] {
        assert!(mc_matches_cce(&LieRinehartAlgebra::from_lie(&g)).unwrap());
    }
}

#[test]
fn mc_algebra_dimensions() {
    assert_eq!(mc_dims(&truncated_cubic_crossed_product()).unwrap(), vec![3, 6, 3]);
    let mc = mc_algebra(&truncated_cubic_crossed_product()).unwrap();
    // Functions killed by x∂ and x²∂: the constants.
    assert_eq!(mc.cohomology_dims().unwrap()[0], 1);
}

#[test]
fn cone_of_split_extension_is_the_lie_cone() {
    for g in [LieAlgebra::sl2(Q), LieAlgebra::heisenberg(Q), LieAlgebra::abelian(Q, 2)] {
        let c = cone_extension(&LrExtension::split(&g)).unwrap();
        assert_eq!(c.algebra, cone(&g).unwrap());
        assert_eq!(c.cohomology, vec![0, 0]);
    }
}

/// `0 → Aβ → L → Aα → 0` over the dual numbers, `α` Euler, `[α, β] = β`.
fn dual_number_extension() -> LrExtension {
    let a = CommAlgebra::dual_numbers(Q);
    let euler = SparseMatrix::from_i64(Q, &[vec![0, 0], vec![0, 1]]);
    let zero = SparseMatrix::zeros(2, 2, Q);
    let one = a.unit().clone();
    let mid = Arc::new(
        LieRinehartAlgebra::new("L", a.clone(), vec![euler, zero], &[(0, 1, vec![vec![], one.clone()])]).unwrap(),
    );
    let sub = Arc::new(LieRinehartAlgebra::abelian_over(&a, 1));
    let quot = Arc::new(LieRinehartAlgebra::euler_dual_numbers(Q));
    LrExtension::new(sub, mid, quot, vec![vec![vec![], one.clone()]], vec![vec![one], vec![vec![]]]).unwrap()
}

#[test]
fn cone_of_a_nonsplit_extension() {
    let c = cone_extension(&dual_number_extension()).unwrap();
    assert_eq!(c.cohomology, vec![0, 2]);
    assert!(c.suspension_is_ideal);
    assert!(!c.suspension_is_dg_ideal);
}

#[test]
fn exactness_is_checked() {
    let e = dual_number_extension();
    let r = LrExtension::new(e.sub.clone(), e.mid.clone(), e.quot.clone(), e.incl.clone(), vec![vec![vec![]], vec![vec![]]]);
    assert!(r.is_err());
}

#[test]
fn functor_f_examples() {
    let a = CommAlgebra::dual_numbers(Q);
    let sub = Arc::new(LieRinehartAlgebra::abelian_over(&a, 1));
    let e = LrExtension::identity_of(sub.clone()).unwrap();
    let n = LrModule::algebra(sub).unwrap();
    assert_eq!(functor_f_homology(&e, &n).unwrap(), vec![2, 2]);

    let ab3 = LieAlgebra::abelian(Q, 3);
    let e = LrExtension::split(&ab3);
    let n = LrModule::algebra(e.mid.clone()).unwrap();
    assert_eq!(functor_f_homology(&e, &n).unwrap(), vec![1, 3, 3, 1]);

    // Trivial L': F(N) = N.
    let e = LrExtension::identity_of(Arc::new(LieRinehartAlgebra::abelian_over(&a, 0))).unwrap();
    let n = LrModule::algebra(e.mid.clone()).unwrap();
    assert_eq!(functor_f_homology(&e, &n).unwrap(), vec![2]);

    // sl2 acting on its adjoint representation: H_0 is the coinvariants.
    let g = LieAlgebra::sl2(Q);
    let e = LrExtension::split(&g);
    let adj = (0..3).map(|i| g.adjoint(i)).collect();
    let n = LrModule::new(e.mid.clone(), vec![SparseMatrix::identity(3, Q)], adj).unwrap();
    assert_eq!(functor_f_homology(&e, &n).unwrap(), vec![0, 0, 0, 0]);
}

#[test]
fn equivariant_cohomology_over_the_ground_field() {
    let ab = Arc::new(LieRinehartAlgebra::from_lie(&LieAlgebra::abelian(Q, 1)));
    let n = AclModule::ground(ab).unwrap();
    assert_eq!(lr_equivariant_cohomology(&n, 6).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
    let sl2 = Arc::new(LieRinehartAlgebra::from_lie(&LieAlgebra::sl2(Q)));
    let n = AclModule::ground(sl2).unwrap();
    assert_eq!(lr_equivariant_cohomology(&n, 5).unwrap(), vec![1, 0, 0, 0, 1, 0]);
}

#[test]
fn acl_modules_over_the_dual_numbers() {
    let lr = Arc::new(LieRinehartAlgebra::euler_dual_numbers(Q));
    let reg = AclModule::regular(lr.clone()).unwrap();
    let deg0 = AclModule::degree_zero(lr.clone()).unwrap();
    assert!(reg.space.check().is_ok() && deg0.space.check().is_ok());
    assert_eq!(lr_equivariant_cohomology(&reg, 4).unwrap(), vec![1, 0, 0, 0, 0]);
    // L acts trivially on A placed in degree 0, so the ground-field table is tensored with A.
    assert_eq!(lr_equivariant_cohomology(&deg0, 4).unwrap(), vec![2, 0, 2, 0, 2]);
    let cp = Arc::new(truncated_cubic_crossed_product());
    assert!(AclModule::regular(cp).is_ok());
    assert!(AclModule::ground(lr).is_err());
}

#[test]
fn passive_coefficients_over_a_crossed_product() {
    let g = LieAlgebra::abelian(Q, 1);
    let ma = ModuleAlgebra::trivial(&g, CommAlgebra::dual_numbers(Q));
    let lr = Arc::new(LieRinehartAlgebra::crossed_product(&g, &ma).unwrap());
    let n = AclModule::degree_zero(lr).unwrap();
    assert_eq!(lr_equivariant_cohomology(&n, 4).unwrap(), vec![2, 0, 2, 0, 2]);

    let ab = Arc::new(LieRinehartAlgebra::from_lie(&g));
    let acyclic = AclModule::through_augmentation(ab, vec![0, 1], SparseMatrix::from_i64(Q, &[vec![0, 0], vec![1, 0]]));
    assert_eq!(lr_equivariant_cohomology(&acyclic.unwrap(), 4).unwrap(), vec![0; 5]);
}
