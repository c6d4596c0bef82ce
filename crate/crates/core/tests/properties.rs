use proptest::prelude::*;

use relext::complex::{CochainComplex, GradedSpace};
use relext::{linalg, Field, Scalar, SparseMatrix};

fn rational_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![
            3 => Just((0i64, 1i64)),
            2 => (-4i64..=4, 1i64..=3),
        ];
        proptest::collection::vec(proptest::collection::vec(entry, c), r).prop_map(move |rows| {
            let q = Field::Rational;
            let dense: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|row| row.iter().map(|(n, d)| q.parse(&format!("{n}/{d}")).unwrap()).collect())
                .collect();
            SparseMatrix::from_dense(q, &dense, c)
        })
    })
}

fn integer_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r))
}

/// `d1` is built from combinations of vectors annihilating the image of `d0`.
fn three_term_complex(d0: &SparseMatrix, mix: &[Vec<i64>]) -> CochainComplex {
    let q = d0.field();
    let left_kernel = linalg::kernel_basis(&d0.transpose());
    let rows = mix
        .iter()
        .map(|coeffs| {
            let m = SparseMatrix::from_columns(d0.rows(), q, &left_kernel);
            let c: Vec<_> = coeffs.iter().take(left_kernel.len()).enumerate().map(|(i, &x)| (i, q.from_i64(x))).collect();
            m.mul_vec(&c.into_iter().filter(|e| !e.1.is_zero()).collect::<Vec<_>>())
        })
        .collect();
    let d1 = SparseMatrix::from_rows(d0.rows(), q, rows);
    CochainComplex::new(q, GradedSpace::new(0, vec![d0.cols(), d0.rows(), mix.len()]), vec![d0.clone(), d1]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn row_rank_equals_column_rank(m in rational_matrix(7, 7)) {
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }

    #[test]
    fn kernel_is_annihilated_and_rank_nullity_holds(m in rational_matrix(6, 8)) {
        let k = linalg::kernel(&m);
        for v in &k.basis {
            prop_assert!(m.mul_vec(v).is_empty());
        }
        prop_assert_eq!(k.dim() + linalg::rank(&m), m.cols());
    }

    #[test]
    fn reduction_mod_p_never_raises_rank(rows in integer_matrix(6), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let q = SparseMatrix::from_i64(Field::Rational, &rows);
        let fp = SparseMatrix::from_i64(Field::prime(p).unwrap(), &rows);
        prop_assert!(linalg::rank(&fp) <= linalg::rank(&q));
        let reduced: Vec<Vec<Scalar>> = q.to_dense().iter().map(|r| r.iter().map(|x| x.reduce_mod(p).unwrap()).collect()).collect();
        prop_assert_eq!(SparseMatrix::from_dense(fp.field(), &reduced, q.cols()), fp);
    }

    #[test]
    fn euler_characteristic_matches_cohomology(
        d0 in rational_matrix(5, 5),
        mix in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 5), 0..4),
    ) {
        let c = three_term_complex(&d0, &mix);
        let h = c.cohomology_dims(0, 2).unwrap();
        prop_assert_eq!(c.euler_characteristic(), h[0] as i64 - h[1] as i64 + h[2] as i64);
    }

    #[test]
    fn complexes_round_trip_through_text(
        d0 in rational_matrix(4, 4),
        mix in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..3),
    ) {
        let c = three_term_complex(&d0, &mix);
        prop_assert_eq!(CochainComplex::from_text(&c.to_text()).unwrap(), c);
    }
}
