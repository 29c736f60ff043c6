use std::collections::HashSet;

use gavsa_core::algebra::SignedBlade;
use gavsa_core::cartan::{
    blade_matrix, generator_matrix, multivector_matrix, signature, ComplexMatrix, Form, Signature,
};
use gavsa_core::{BladeMask, Multivector};
use proptest::prelude::*;

fn multivector(n: u32, max_terms: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u64..1 << n, -2i64..=2), 0..=max_terms).prop_map(move |terms| {
        Multivector::from_terms(
            n,
            terms.into_iter().map(|(b, c)| (BladeMask::new(b, n).unwrap(), c)),
        )
        .unwrap()
    })
}

fn pair(n_range: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (Multivector, Multivector)> {
    n_range.prop_flat_map(|n| (multivector(n, 4), multivector(n, 4)))
}

/// Ordered product of generator matrices, the definition the fast path must match.
fn generator_product(mask: BladeMask, form: Form) -> ComplexMatrix {
    let n = mask.dimension();
    let side = 1usize << form.factor_count(n);
    mask.generators().fold(ComplexMatrix::identity(side), |acc, i| {
        acc.matmul(&generator_matrix(i, n, form).unwrap()).unwrap()
    })
}

#[test]
fn blade_matrices_are_generator_products() {
    for form in [Form::Full, Form::Reduced] {
        for n in 1..=6 {
            for bits in 0..1u64 << n {
                let m = BladeMask::new(bits, n).unwrap();
                let fast = blade_matrix(SignedBlade::positive(m), form).unwrap();
                assert_eq!(fast, generator_product(m, form), "{form:?} {m}");
                assert!(fast.is_unit_monomial());
            }
        }
    }
}

#[test]
fn generators_satisfy_clifford_relations() {
    for form in [Form::Full, Form::Reduced] {
        for n in 1..=8 {
            let side = 1usize << form.factor_count(n);
            let id = ComplexMatrix::identity(side);
            for i in 1..=n {
                let bi = generator_matrix(i, n, form).unwrap();
                assert_eq!(bi.matmul(&bi).unwrap(), id);
                for j in i + 1..=n {
                    let bj = generator_matrix(j, n, form).unwrap();
                    let anti = bi.matmul(&bj).unwrap().add(&bj.matmul(&bi).unwrap()).unwrap();
                    assert_eq!(anti, ComplexMatrix::zero(side), "{form:?} n={n} {i},{j}");
                }
            }
        }
    }
}

#[test]
fn blade_orientation_follows_grade_parity() {
    for n in 1..=8u32 {
        let half = 1usize << n.div_ceil(2);
        for bits in 0..1u64 << n {
            let m = BladeMask::new(bits, n).unwrap();
            let matrix = blade_matrix(SignedBlade::positive(m), Form::Reduced).unwrap();
            let even = m.grade().is_multiple_of(2);
            for (r, c, _) in matrix.nonzeros() {
                assert_eq!((r < half) == (c < half), even, "n={n} {m}");
            }
        }
    }
}

#[test]
fn signature_is_top_rows_of_reduced_matrix() {
    let mut rng = rand::rng();
    for n in 1..=9 {
        for _ in 0..20 {
            let terms: Vec<_> = (0..5)
                .map(|i| (BladeMask::random(n, &mut rng).unwrap(), i - 2))
                .collect();
            let a = Multivector::from_terms(n, terms).unwrap();
            let rows = 1usize << n.div_ceil(2);
            let m = multivector_matrix(&a, Form::Reduced).unwrap();
            let sig = signature(&a).unwrap();
            assert_eq!(sig, Signature::from_matrix_rows(&m, rows));
            assert_eq!(sig.entry_count(), 1 << (2 * n.div_ceil(2) + 1));
        }
    }
}

#[test]
fn blade_signatures_are_distinct() {
    for n in 1..=7 {
        let sigs: HashSet<Vec<(usize, usize, (i64, i64))>> = (0..1u64 << n)
            .map(|b| {
                let a = Multivector::from_blade(BladeMask::new(b, n).unwrap());
                signature(&a)
                    .unwrap()
                    .nonzeros()
                    .map(|(r, c, v)| (r, c, (v.re, v.im)))
                    .collect()
            })
            .collect();
        assert_eq!(sigs.len(), 1 << n, "n={n}");
    }
}

#[test]
fn blade_signature_supports_distinct_in_small_dimensions() {
    for n in 2..=3 {
        let supports: HashSet<Vec<(usize, usize)>> = (0..1u64 << n)
            .map(|b| {
                let a = Multivector::from_blade(BladeMask::new(b, n).unwrap());
                signature(&a).unwrap().nonzeros().map(|(r, c, _)| (r, c)).collect()
            })
            .collect();
        assert_eq!(supports.len(), 1 << n, "n={n}");
    }
}

#[test]
fn blade_signature_supports_collide_from_four_generators() {
    // Supports only see the column permutation, and the top half of the
    // reduced matrix has 2^{⌈n/2⌉+1} possible permutations for 2^n blades.
    for n in 4..=6 {
        let supports: HashSet<Vec<(usize, usize)>> = (0..1u64 << n)
            .map(|b| {
                let a = Multivector::from_blade(BladeMask::new(b, n).unwrap());
                signature(&a).unwrap().nonzeros().map(|(r, c, _)| (r, c)).collect()
            })
            .collect();
        assert!(supports.len() < 1 << n, "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn full_form_is_homomorphism((a, b) in pair(2..=8)) {
        let ab = a.geometric_product(&b).unwrap();
        let lhs = multivector_matrix(&ab, Form::Full).unwrap();
        let rhs = multivector_matrix(&a, Form::Full).unwrap()
            .matmul(&multivector_matrix(&b, Form::Full).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_form_is_homomorphism((a, b) in pair(2..=8)) {
        let ab = a.geometric_product(&b).unwrap();
        let lhs = multivector_matrix(&ab, Form::Reduced).unwrap();
        let rhs = multivector_matrix(&a, Form::Reduced).unwrap()
            .matmul(&multivector_matrix(&b, Form::Reduced).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_representation_is_linear((a, b) in pair(2..=6)) {
        for form in [Form::Full, Form::Reduced] {
            let sum = multivector_matrix(&a.try_add(&b).unwrap(), form).unwrap();
            let parts = multivector_matrix(&a, form).unwrap()
                .add(&multivector_matrix(&b, form).unwrap()).unwrap();
            prop_assert_eq!(sum, parts);
        }
    }
}
