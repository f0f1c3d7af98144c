//! Randomized properties of the exact linear algebra layer — the foundation
//! every homology dimension in the library rests on.

use proptest::prelude::*;

use parhom::{ExactMatrix, FieldSpec, QuotientSpace, Subspace};

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::PrimeField(2)),
        Just(FieldSpec::PrimeField(3)),
        Just(FieldSpec::PrimeField(7)),
    ]
}

/// A matrix with entries in -3..=3, dims 1..=5.
fn matrices() -> impl Strategy<Value = ExactMatrix> {
    (fields(), 1usize..=5, 1usize..=5).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| ExactMatrix::from_fn(f, r, c, |i, j| f.from_i64(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in matrices()) {
        let k = a.kernel_matrix();
        prop_assert_eq!(a.rank() + k.rows(), a.cols());
        // kernel rows really are in the kernel
        for i in 0..k.rows() {
            prop_assert!(a.matmul(&k.row(i).transpose()).is_zero());
        }
        // and independent
        prop_assert_eq!(k.rank(), k.rows());
    }

    #[test]
    fn solve_substitutes(a in matrices(), coeffs in proptest::collection::vec(-2i64..=2, 5)) {
        // rhs = a * y is always solvable, and any solution substitutes back
        let f = a.field();
        let y = ExactMatrix::from_fn(f, a.cols(), 1, |i, _| f.from_i64(coeffs[i]));
        let rhs = a.matmul(&y);
        let x = a.solve(&rhs).expect("constructed to be solvable");
        prop_assert_eq!(a.matmul(&x), rhs);
    }

    #[test]
    fn row_space_is_canonical(a in matrices()) {
        // the canonical form is idempotent and membership-complete
        let s = Subspace::from_rows(&a);
        let again = Subspace::from_rows(s.basis());
        prop_assert_eq!(s.basis(), again.basis());
        prop_assert_eq!(s.dim(), a.rank());
        for i in 0..a.rows() {
            prop_assert!(s.contains(&a.row(i).transpose()));
        }
    }

    #[test]
    fn sum_is_monotone_and_bounded(a in matrices(), extra in proptest::collection::vec(-2i64..=2, 5)) {
        let f = a.field();
        let b = ExactMatrix::from_fn(f, 1, a.cols(), |_, j| f.from_i64(extra[j]));
        let u = Subspace::from_rows(&a);
        let refs = [&a, &b];
        let sum = Subspace::from_rows(&ExactMatrix::vstack(&refs));
        prop_assert!(sum.dim() >= u.dim());
        prop_assert!(sum.dim() <= u.dim() + 1);
        prop_assert!(sum.contains(&b.row(0).transpose()));
    }

    #[test]
    fn quotient_splits(a in matrices()) {
        // projection . section = id on the quotient, and the section's image
        // meets the subspace only at 0
        let sub = Subspace::from_rows(&a);
        let q = QuotientSpace::quotient_by(&sub);
        prop_assert_eq!(sub.dim() + q.dim, a.cols());
        let ps = q.projection.matmul(&q.section);
        prop_assert_eq!(ps, ExactMatrix::identity(a.field(), q.dim));
        // every ambient vector = section(projection(v)) + something in sub
        for j in 0..a.cols() {
            let mut v = ExactMatrix::zeros(a.field(), a.cols(), 1);
            v.set(j, 0, a.field().one());
            let back = q.section.matmul(&q.projection.matmul(&v));
            let diff = v.sub(&back);
            prop_assert!(diff.is_zero() || sub.contains(&diff));
        }
    }

    #[test]
    fn transpose_preserves_rank(a in matrices()) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }
}
