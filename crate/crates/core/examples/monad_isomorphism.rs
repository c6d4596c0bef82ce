//! Machine-check U ≅ T and its factorization through the universal bundle EG.

use std::sync::Arc;

use relext::gmodule::{GModule, Side};
use relext::group::FiniteGroup;
use relext::verify::monad_isomorphism_findings;
use relext::Field;

fn main() -> relext::Result<()> {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let v = GModule::standard_s3(s3, Field::Rational, Side::Right)?;
    for f in monad_isomorphism_findings(&v, 2)? {
        let status = if f.passed { "ok" } else { "FAILED" };
        println!("{status:>6}  {}", f.name);
    }
    Ok(())
}
