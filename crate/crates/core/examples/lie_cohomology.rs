//! Chevalley–Eilenberg cohomology and the Cartan relation d i_X + i_X d = λ_X.

use std::sync::Arc;

use relext::lie::{cce_complex, contraction, lie_derivative, LieAlgebra, LieModule};
use relext::Field;

fn main() -> relext::Result<()> {
    let q = Field::Rational;
    for g in [LieAlgebra::sl2(q), LieAlgebra::heisenberg(q), LieAlgebra::abelian(q, 3)] {
        let g = Arc::new(g);
        let c = cce_complex(&g, &LieModule::trivial(g.clone(), 1))?;
        println!("H({}; Q) = {:?}", g.name(), c.cohomology_dims()?);
    }

    let sl2 = Arc::new(LieAlgebra::sl2(q));
    let adj = LieModule::adjoint(sl2.clone());
    let c = cce_complex(&sl2, &adj)?;
    let x = vec![(0, q.one()), (2, q.from_i64(-3))];
    let cartan = c.space().d.anticommutator(&contraction(&c, &x)) == lie_derivative(&sl2, &adj, &x)?;
    println!("Cartan relation for X = e - 3f on the adjoint cochains: {cartan}");
    Ok(())
}
