use gct_core::hhh::{
    brion_bound, build_hhh, hhh_rank, hhh_rank_by_weights, kernel_basis, kernel_character, kernel_vanishes_on_chow,
    normalization_holds, space_dims, HhhLimits,
};
use gct_core::scalar::binomial;
use gct_core::{Field, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lim() -> HhhLimits {
    HhhLimits::default()
}

fn multiset_count(n: u64, k: u64) -> BigInt {
    binomial(n + k - 1, k)
}

#[test]
fn full_space_dimensions() {
    for (d, n, v) in [(2, 2, 2), (3, 3, 3), (2, 4, 3), (4, 2, 2)] {
        let (dom, cod) = space_dims(d, n, v, None);
        let inner = multiset_count(v as u64, n as u64);
        let inner: u64 = inner.try_into().unwrap();
        assert_eq!(BigInt::from(dom), multiset_count(inner, d as u64));
        let outer: u64 = multiset_count(v as u64, d as u64).try_into().unwrap();
        assert_eq!(BigInt::from(cod), multiset_count(outer, n as u64));
    }
}

#[test]
fn weight_decomposition_reproduces_full_rank() {
    for (d, n, v) in [(2, 2, 3), (3, 2, 3), (2, 3, 3), (3, 3, 3), (4, 2, 3), (2, 4, 2)] {
        let full = build_hhh(d, n, v, None, &lim()).unwrap();
        let report = hhh_rank_by_weights(d, n, v, &lim()).unwrap();
        assert_eq!(report.domain_dim, full.domain.len() as u128);
        assert_eq!(report.codomain_dim, full.codomain.len() as u128);
        assert_eq!(report.rank, hhh_rank(&full).rank as u128, "({d},{n},{v})");
        assert_eq!(report.kernel_dim(), kernel_basis(&full).len() as u128);
    }
}

#[test]
fn kernel_partitions_stabilize_in_the_number_of_variables() {
    // with d ≤ v the kernel of h_{d,n} is described by the same partitions
    let small = kernel_character(4, 3, 4, &lim()).unwrap();
    let large = kernel_character(4, 3, 5, &lim()).unwrap();
    assert_eq!(small, large);
    assert!(kernel_character(3, 4, 4, &lim()).unwrap().is_empty());
}

#[test]
fn kernel_equations_vanish_on_products_of_linear_forms() {
    let report = kernel_vanishes_on_chow(4, 3, 4, 6, 99, &lim()).unwrap();
    assert!(report.kernel_vectors > 0);
    assert!(report.all_vanish, "{report:?}");
}

#[test]
fn normalization_identity_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (d, n, v) in [(2, 2, 2), (3, 2, 3), (2, 3, 3), (3, 3, 2)] {
        let map = build_hhh(d, n, v, None, &lim()).unwrap();
        for _ in 0..10 {
            let forms: Vec<Vec<Rational>> = (0..d)
                .map(|_| (0..v).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect())
                .collect();
            assert!(normalization_holds(&map, &forms).unwrap());
        }
    }
}

#[test]
fn brion_values() {
    assert_eq!(brion_bound(3, 3).unwrap(), BigInt::from(12));
    assert_eq!(brion_bound(1, 7).unwrap(), BigInt::from(0));
    assert_eq!(brion_bound(2, 2).unwrap(), BigInt::from(-1));
}

#[test]
fn capacity_is_reported_before_any_elimination() {
    let tight = HhhLimits {
        max_basis: 50,
        max_elimination_work: 100,
    };
    let err = hhh_rank_by_weights(3, 3, 3, &tight).unwrap_err().to_string();
    assert!(err.contains("over the limits"), "{err}");
    assert!(build_hhh(3, 3, 3, None, &tight).is_err());
}
