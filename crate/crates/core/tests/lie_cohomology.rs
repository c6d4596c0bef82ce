mod common;

use std::sync::Arc;
use std::time::Instant;

use common::random_lie_algebra;
use rand::{Rng, SeedableRng};
use relext::dga::CommAlgebra;
use relext::lie::{
    cce_complex, contraction, cosimplicial_mc, equivariant_ext, lie_derivative, CgComplex, LieAlgebra, LieModule,
    ModuleAlgebra,
};
use relext::{Error, Field, SparseMatrix};

fn q() -> Field {
    Field::Rational
}

#[test]
fn abelian_line_through_degree_six() {
    let g = Arc::new(LieAlgebra::abelian(q(), 1));
    let v = CgComplex::trivial(g.clone(), 1);
    assert_eq!(equivariant_ext(&g, &v, 6).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
    assert_eq!(cosimplicial_mc(&g, None, 6).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
}

#[test]
fn sl2_through_degree_five() {
    let g = Arc::new(LieAlgebra::sl2(q()));
    let v = CgComplex::trivial(g.clone(), 1);
    let t = Instant::now();
    assert_eq!(equivariant_ext(&g, &v, 5).unwrap(), vec![1, 0, 0, 0, 1, 0]);
    assert_eq!(cosimplicial_mc(&g, None, 5).unwrap(), vec![1, 0, 0, 0, 1, 0]);
    assert!(t.elapsed().as_secs() < 120);
}

#[test]
fn dual_numbers_with_trivial_action_match_the_ground_field() {
    // The tensor powers of a commutative algebra with cofaces inserting the
    // unit form an acyclic object, so the coefficient algebra drops out.
    let g = Arc::new(LieAlgebra::abelian(q(), 1));
    let a = ModuleAlgebra::trivial(&g, CommAlgebra::dual_numbers(q()));
    assert_eq!(cosimplicial_mc(&g, Some(&a), 4).unwrap(), vec![1, 0, 1, 0, 1]);
}

#[test]
fn degree_zero_is_invariants_of_h0() {
    for g in [LieAlgebra::sl2(q()), LieAlgebra::affine_line(q()), LieAlgebra::abelian(q(), 2)] {
        let g = Arc::new(g);
        let v = CgComplex::trivial(g.clone(), 2);
        assert_eq!(equivariant_ext(&g, &v, 1).unwrap()[0], 2);
    }
}

#[test]
fn cartan_formula_for_random_elements() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let t = Instant::now();
    for _ in 0..5 {
        let g = Arc::new(random_lie_algebra(&mut rng, q()));
        for v in [LieModule::trivial(g.clone(), 1), LieModule::adjoint(g.clone())] {
            let c = cce_complex(&g, &v).unwrap();
            let d = &c.space().d;
            for _ in 0..4 {
                let x: Vec<_> = (0..g.dim()).map(|k| (k, q().from_i64(rng.gen_range(-3..=3)))).filter(|e| !e.1.is_zero()).collect();
                let i = contraction(&c, &x);
                assert_eq!(d.anticommutator(&i), lie_derivative(&g, &v, &x).unwrap());
            }
        }
    }
    assert!(t.elapsed().as_secs() < 10);
}

#[test]
fn abelian_cohomology_is_binomial() {
    for n in 0..=4 {
        let g = Arc::new(LieAlgebra::abelian(q(), n));
        let c = cce_complex(&g, &LieModule::trivial(g.clone(), 1)).unwrap();
        let binom: Vec<usize> = (0..=n).map(|p| (0..p).fold(1, |acc, i| acc * (n - i) / (i + 1))).collect();
        assert_eq!(c.cohomology_dims().unwrap(), binom);
    }
}

#[test]
fn invalid_module_and_derivation_are_rejected() {
    let g = Arc::new(LieAlgebra::affine_line(q()));
    // ρ(x) = 1, ρ(y) = 1 on a line: [ρx, ρy] = 0 ≠ ρ([x,y]) = ρ(y).
    let one = SparseMatrix::identity(1, q());
    let r = LieModule::new(g.clone(), vec![0], None, vec![one.clone(), one]);
    assert!(matches!(r, Err(Error::ActionLaw(_))));
    let h = Arc::new(LieAlgebra::abelian(q(), 1));
    // On R[x]/(x²), 1 ↦ 1 is not a derivation.
    let bad = SparseMatrix::from_i64(q(), &[vec![1, 0], vec![0, 0]]);
    let r = ModuleAlgebra::new(&h, CommAlgebra::dual_numbers(q()), vec![bad]);
    assert!(matches!(r, Err(Error::AnchorNotDerivation { .. })));
}

#[test]
fn fp_coefficients() {
    let g = Arc::new(LieAlgebra::abelian(Field::Prime(5), 1));
    let v = CgComplex::trivial(g.clone(), 1);
    assert_eq!(equivariant_ext(&g, &v, 4).unwrap(), vec![1, 0, 1, 0, 1]);
}
