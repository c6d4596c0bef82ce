//! Rank and kernel over Q and F_p, and the cohomology of a small complex.

use relext::complex::{CochainComplex, GradedSpace};
use relext::{linalg, Field, SparseMatrix};

fn main() -> relext::Result<()> {
    let rows = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
    for field in [Field::Rational, Field::prime(3)?] {
        let m = SparseMatrix::from_i64(field, &rows);
        println!("over {field}: rank {} and kernel dimension {}", linalg::rank(&m), linalg::kernel(&m).dim());
    }

    // The simplicial cochains of a hollow triangle: H^0 = H^1 = Q.
    let q = Field::Rational;
    let d0 = SparseMatrix::from_i64(q, &[vec![-1, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]]);
    let c = CochainComplex::new(q, GradedSpace::new(0, vec![3, 3]), vec![d0])?;
    println!("hollow triangle: H = {:?}, Euler characteristic {}", c.cohomology_dims(0, 1)?, c.euler_characteristic());
    let text = c.to_text();
    assert_eq!(CochainComplex::from_text(&text)?, c);
    print!("{text}");
    Ok(())
}
