//! Infinitesimal equivariant cohomology, directly and through the cosimplicial
//! Maurer–Cartan algebra.

use std::sync::Arc;

use relext::lie::{cosimplicial_mc, equivariant_ext, CgComplex, LieAlgebra};
use relext::Field;

fn main() -> relext::Result<()> {
    for (g, top) in [(LieAlgebra::abelian(Field::Rational, 1), 6), (LieAlgebra::sl2(Field::Rational), 5)] {
        let g = Arc::new(g);
        let ext = equivariant_ext(&g, &CgComplex::trivial(g.clone(), 1), top)?;
        let mc = cosimplicial_mc(&g, None, top)?;
        println!("{}: Ext = {ext:?}, cosimplicial = {mc:?}", g.name());
    }
    Ok(())
}
