//! Group cohomology from the two monads T and U on G-modules.

use std::sync::Arc;

use relext::gmodule::{GModule, Side};
use relext::group::FiniteGroup;
use relext::group_cohomology::{group_cohomology, Via};
use relext::Field;

fn main() -> relext::Result<()> {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let v = GModule::trivial(z2, Field::prime(2)?, Side::Right, 1);
    for via in [Via::T, Via::U] {
        println!("H(Z/2; F2) via {via:?}: {:?}", group_cohomology(&v, 4, via)?.dims);
    }

    let s3 = Arc::new(FiniteGroup::symmetric(3));
    for field in [Field::Rational, Field::prime(3)?] {
        let v = GModule::trivial(s3.clone(), field, Side::Right, 1);
        println!("H(S3; {field}): {:?}", group_cohomology(&v, 4, Via::U)?.dims);
    }
    // In S3 the transpositions are exactly the elements of order 2.
    let signs: Vec<i64> = (0..s3.order()).map(|g| if s3.element_order(g) == 2 { -1 } else { 1 }).collect();
    let sign = GModule::character(s3, Field::prime(3)?, Side::Right, &signs)?;
    println!("H(S3; F3 sign) = {:?}", group_cohomology(&sign, 4, Via::T)?.dims);
    Ok(())
}
