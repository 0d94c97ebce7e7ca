use proptest::prelude::*;
use quandlekit::congruence::{cg, is_congruence};
use quandlekit::extensions::tetrahedral_quandle;
use quandlekit::extensions::{extend, normalization_witness, normalize, AbelianCocycle};
use quandlekit::io::{format_quandle, parse_quandle};
use quandlekit::quandle::{affine_cyclic, are_isomorphic, FiniteQuandle};
use quandlekit::recipe::build_recipe;
use quandlekit::verify::table_axioms;

fn small_affine() -> impl Strategy<Value = FiniteQuandle> {
    (2u64..14, 1i64..14).prop_filter_map("unit multiplier", |(n, f)| affine_cyclic(n, f % n as i64).ok())
}

fn small_quandle() -> impl Strategy<Value = FiniteQuandle> {
    prop_oneof![
        small_affine(),
        (small_affine(), small_affine())
            .prop_filter("size", |(a, b)| a.size() * b.size() <= 60)
            .prop_map(|(a, b)| FiniteQuandle::direct_product(&a, &b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn file_round_trip(q in small_quandle()) {
        let text = format_quandle(&q);
        let back = parse_quandle(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(format_quandle(&back), text);
    }

    #[test]
    fn constructions_satisfy_axioms(q in small_quandle()) {
        prop_assert!(table_axioms(&q).is_ok());
    }

    #[test]
    fn generated_congruence_is_least(q in small_quandle(), a in 0usize..64, b in 0usize..64) {
        let n = q.size();
        let (a, b) = (a % n, b % n);
        let alpha = cg(&q, &[(a, b)]);
        prop_assert!(is_congruence(&q, &alpha));
        prop_assert!(alpha.related(a, b));
        // any congruence containing (a, b) contains cg(a, b)
        for beta in [q.lambda_cong(), q.orbit_partition()] {
            if beta.related(a, b) {
                prop_assert!(alpha.le(&beta));
            }
        }
    }

    #[test]
    fn relabeling_preserves_isomorphism(q in small_affine(), shift in 0usize..13) {
        let n = q.size();
        let images: Vec<u32> = (0..n).map(|i| ((i + shift) % n) as u32).collect();
        let perm = quandlekit::permgroup::Perm::from_images(images).unwrap();
        prop_assert!(are_isomorphic(&q, &q.relabel(&perm)));
    }

    #[test]
    fn normalization_keeps_the_extension(lambda in 1u64..5, gamma in proptest::collection::vec(1u64..5, 4)) {
        let p = 5;
        let beta = AbelianCocycle::constant(tetrahedral_quandle(), p, lambda).unwrap();
        let twisted = beta.twist(&gamma).unwrap();
        prop_assert!(twisted.check().is_ok());
        let norm = normalize(&twisted, 0).unwrap();
        let w = normalization_witness(&twisted, 0).unwrap();
        let (e1, e2) = (extend(&twisted).unwrap(), extend(&norm).unwrap());
        prop_assert!(e1.is_homomorphism(&e2, &w));
        prop_assert!(are_isomorphic(&e1, &e2));
    }

    #[test]
    fn recipes_are_deterministic(p in prop::sample::select(vec![3u64, 5, 7, 11]), f in 2i64..11) {
        let r = format!("affine:Z{p}:{}", f % p as i64);
        if let Ok(q) = build_recipe(&r) {
            prop_assert_eq!(q, build_recipe(&r).unwrap());
        }
    }
}
