//! Cohomology of a gauge groupoid agrees with that of its vertex group.

use std::sync::Arc;

use relext::gmodule::{GModule, Side};
use relext::group::FiniteGroup;
use relext::groupoid::{restrict_to_vertex, GroupoidModule, TransitiveGroupoid};
use relext::Field;

fn main() -> relext::Result<()> {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let gauge = Arc::new(TransitiveGroupoid::gauge(3, z2.clone())?);
    let sign = GModule::character(z2, Field::prime(2)?, Side::Left, &[1, -1])?;
    let zeta = GroupoidModule::induced(gauge, &sign)?;
    let r = restrict_to_vertex(&zeta, 0, 3)?;
    println!("groupoid: {:?}", r.groupoid_dims);
    println!("vertex:   {:?}", r.vertex_dims);
    match r.quasi_iso_failure {
        None => println!("restriction is a quasi-isomorphism"),
        Some(n) => println!("restriction fails in degree {n}"),
    }
    Ok(())
}
