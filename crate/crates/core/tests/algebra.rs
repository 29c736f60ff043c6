use gavsa_core::algebra::{blade_product, dense_oracle_product, sign_exponent};
use gavsa_core::{BladeMask, Multivector};
use proptest::prelude::*;

fn mask(n: u32) -> impl Strategy<Value = BladeMask> {
    (0u64..1 << n).prop_map(move |b| BladeMask::new(b, n).unwrap())
}

fn multivector(n: u32, max_terms: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u64..1 << n, -3i64..=3), 0..=max_terms).prop_map(move |terms| {
        Multivector::from_terms(
            n,
            terms.into_iter().map(|(b, c)| (BladeMask::new(b, n).unwrap(), c)),
        )
        .unwrap()
    })
}

fn dim_and<T: std::fmt::Debug>(
    f: impl Fn(u32) -> BoxedStrategy<T> + 'static,
) -> impl Strategy<Value = (u32, T)> {
    (2u32..=8).prop_flat_map(move |n| (Just(n), f(n)))
}

#[test]
fn exhaustive_blade_pairs_match_oracle() {
    for n in 1..=5 {
        for x in 0..1u64 << n {
            for y in 0..1u64 << n {
                let a = Multivector::from_blade(BladeMask::new(x, n).unwrap());
                let b = Multivector::from_blade(BladeMask::new(y, n).unwrap());
                assert_eq!(
                    a.geometric_product(&b).unwrap(),
                    dense_oracle_product(&a, &b).unwrap(),
                    "n={n} x={x:b} y={y:b}"
                );
            }
        }
    }
}

#[test]
fn sign_exponent_counts_pairs() {
    for n in 1..=6u32 {
        for x in 0..1u64 << n {
            for y in 0..1u64 << n {
                // D = Σ_{k<l} y_k x_l with positions numbered from b_1.
                let bit = |v: u64, i: u32| (v >> (i - 1)) & 1;
                let mut d = 0;
                for k in 1..=n {
                    for l in k + 1..=n {
                        d += bit(y, k) * bit(x, l);
                    }
                }
                let got = sign_exponent(BladeMask::new(x, n).unwrap(), BladeMask::new(y, n).unwrap());
                assert_eq!(u64::from(got.unwrap()), d);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_products_match_oracle(
        (_, (a, b)) in dim_and(|n| (multivector(n, 6), multivector(n, 6)).boxed())
    ) {
        prop_assert_eq!(a.geometric_product(&b).unwrap(), dense_oracle_product(&a, &b).unwrap());
    }
}

proptest! {
    #[test]
    fn product_is_associative(
        (_, (a, b, c)) in dim_and(|n| (multivector(n, 4), multivector(n, 4), multivector(n, 4)).boxed())
    ) {
        let left = a.geometric_product(&b).unwrap().geometric_product(&c).unwrap();
        let right = a.geometric_product(&b.geometric_product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_distributes(
        (_, (a, b, c)) in dim_and(|n| (multivector(n, 4), multivector(n, 4), multivector(n, 4)).boxed())
    ) {
        let left = a.geometric_product(&b.try_add(&c).unwrap()).unwrap();
        let right = a.geometric_product(&b).unwrap().try_add(&a.geometric_product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn blade_product_is_xor_up_to_sign((_, (x, y)) in dim_and(|n| (mask(n), mask(n)).boxed())) {
        let p = blade_product(x, y).unwrap();
        prop_assert_eq!(p.mask().bits(), x.bits() ^ y.bits());
    }

    #[test]
    fn blade_squares_are_reversion_signs((_, x) in dim_and(|n| mask(n).boxed())) {
        let sq = blade_product(x, x).unwrap();
        prop_assert!(sq.mask().is_scalar());
        prop_assert_eq!(sq.sign(), x.reversion_sign());
    }

    #[test]
    fn reversion_is_involutive_anti_automorphism(
        (_, (a, b)) in dim_and(|n| (multivector(n, 5), multivector(n, 5)).boxed())
    ) {
        prop_assert_eq!(a.reversion().reversion(), a.clone());
        let ab = a.geometric_product(&b).unwrap().reversion();
        prop_assert_eq!(ab, b.reversion().geometric_product(&a.reversion()).unwrap());
    }

    #[test]
    fn right_inverse_of_blades((_, (q, s)) in dim_and(|n| (mask(n), multivector(n, 5)).boxed())) {
        let q = Multivector::from_blade(q);
        let unit = q.reversion().geometric_product(&q).unwrap();
        prop_assert_eq!(unit.geometric_product(&s).unwrap(), s);
    }

    #[test]
    fn inner_product_symmetric_and_positive(
        (_, (a, b)) in dim_and(|n| (multivector(n, 5), multivector(n, 5)).boxed())
    ) {
        prop_assert_eq!(a.inner_product(&b).unwrap(), b.inner_product(&a).unwrap());
        // ⟨A⁺|A⟩ is the sum of squared coefficients.
        let norm: i64 = a.terms().map(|(_, c)| c * c).sum();
        prop_assert_eq!(a.reversion().inner_product(&a).unwrap(), norm);
    }

    #[test]
    fn text_round_trip((n, a) in dim_and(|n| multivector(n, 6).boxed())) {
        let text = a.to_string();
        prop_assert_eq!(Multivector::parse_with_dimension(&text, n).unwrap(), a);
    }
}
