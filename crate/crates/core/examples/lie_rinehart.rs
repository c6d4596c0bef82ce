//! Lie–Rinehart algebras: the Maurer–Cartan algebra, the diagonal comorphism,
//! cones of extensions and equivariant cohomology.

use std::sync::Arc;

use relext::dga::CommAlgebra;
use relext::lie_rinehart::{
    cone_extension, functor_f_homology, induced_mca_map, lr_diagonal, lr_equivariant_cohomology, mc_algebra,
    product_multiplication_map, validate_comorphism, AclModule, LieRinehartAlgebra, LrExtension, LrModule,
};
use relext::Field;

fn main() -> relext::Result<()> {
    let q = Field::Rational;
    let lr = Arc::new(LieRinehartAlgebra::euler_dual_numbers(q));
    let mc = mc_algebra(&lr)?;
    println!("{}: Maurer–Cartan cohomology {:?}", lr.name(), mc.cohomology_dims()?);

    let diag = lr_diagonal(&lr)?;
    let report = validate_comorphism(&diag)?;
    println!("diagonal: {report:?}");
    println!("diagonal induces the product: {}", induced_mca_map(&diag)? == product_multiplication_map(&lr)?);

    let sub = Arc::new(LieRinehartAlgebra::abelian_over(&CommAlgebra::dual_numbers(q), 1));
    let e = LrExtension::identity_of(sub.clone())?;
    let cone = cone_extension(&e)?;
    println!(
        "cone of the identity extension: cohomology {:?}, dg ideal {}",
        cone.cohomology, cone.suspension_is_dg_ideal
    );
    println!("F(A) homology: {:?}", functor_f_homology(&e, &LrModule::algebra(sub)?)?);

    for n in [AclModule::regular(lr.clone())?, AclModule::degree_zero(lr)?] {
        println!("equivariant cohomology: {:?}", lr_equivariant_cohomology(&n, 4)?);
    }
    Ok(())
}
