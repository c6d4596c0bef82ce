use std::sync::Arc;
use std::time::Instant;

use relext::gmodule::{GModule, Side};
use relext::group::FiniteGroup;
use relext::group_cohomology::{group_cohomology, Via};
use relext::Field;

#[test]
fn rational_cohomology_vanishes_for_small_groups() {
    for g in FiniteGroup::corpus_up_to_12() {
        let t = Instant::now();
        let g = Arc::new(g);
        let v = GModule::trivial(g.clone(), Field::Rational, Side::Right, 1);
        let dims = group_cohomology(&v, 3, Via::U).unwrap().dims;
        assert_eq!(dims, vec![1, 0, 0, 0], "{}", g.name());
        eprintln!("{} {:?}", g.name(), t.elapsed());
    }
}
