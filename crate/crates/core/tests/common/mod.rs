use rand::Rng;
use relext::lie::LieAlgebra;
use relext::{Field, SparseMatrix};

/// A Lie algebra from a fixed pool, under a random invertible integer change of basis.
pub fn random_lie_algebra(rng: &mut impl Rng, field: Field) -> LieAlgebra {
    let pool = [
        LieAlgebra::sl2(field),
        LieAlgebra::heisenberg(field),
        LieAlgebra::borel2(field),
        LieAlgebra::affine_line(field).direct_sum(&LieAlgebra::abelian(field, 1)),
        LieAlgebra::sl2(field).direct_sum(&LieAlgebra::affine_line(field)),
    ];
    let g = &pool[rng.gen_range(0..pool.len())];
    let n = g.dim();
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        if let Ok(h) = g.change_basis(&SparseMatrix::from_i64(field, &rows)) {
            return h;
        }
    }
}
