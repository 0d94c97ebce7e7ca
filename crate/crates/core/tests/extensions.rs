use quandlekit::classify::classify_4p;
use quandlekit::congruence::{cg, is_subdirectly_irreducible};
use quandlekit::extensions::*;
use quandlekit::quandle::are_isomorphic;

fn is_constant_family(f: &NormalizedFamily, p: u64) -> bool {
    f.cocycle.psi_constant() && f.cocycle.phi.iter().all(|&x| (x + f.params.lambda) % p == 1)
}

#[test]
fn normalized_cocycles_constant_plus_sign_twisted_families() {
    for p in [3u64, 5, 7, 11, 13] {
        let fams = enumerate_normalized_cocycles(p).unwrap();
        let constant: Vec<u64> = fams.iter().filter(|f| is_constant_family(f, p)).map(|f| f.params.lambda).collect();
        assert_eq!(constant, (1..p).collect::<Vec<_>>());
        let other: Vec<&NormalizedFamily> = fams.iter().filter(|f| !is_constant_family(f, p)).collect();
        for f in &other {
            let l = f.params.lambda;
            assert_eq!(f.params.mu, p - l);
            assert_eq!(l * l % p * l % p, 1);
            assert!(f.cocycle.check().is_ok());
        }
        let expected = match p {
            3 => 2,
            _ if p % 3 == 1 => 3,
            _ => 1,
        };
        assert_eq!(other.len(), expected, "p = {p}");
    }
}

#[test]
fn latin_size_28_quandles_are_abelian_extensions() {
    let r = classify_4p(7).unwrap();
    let fams = enumerate_normalized_cocycles(7).unwrap();
    for (lambda, id) in [(2, "4p:7:SI4:lambda=k"), (4, "4p:7:SI4:lambda=k2")] {
        let f = fams.iter().find(|f| f.params.lambda == lambda && f.params.mu == 7 - lambda).unwrap();
        let e = extend(&f.cocycle).unwrap();
        assert!(e.is_latin());
        let target = r.subdirectly_irreducible.iter().find(|c| c.id == id).unwrap();
        assert!(are_isomorphic(&e, &target.quandle));
    }
}

#[test]
fn normalization_preserves_extension() {
    for fam in enumerate_normalized_cocycles(7).unwrap() {
        let base = fam.with_theta(&vec![2; fam.theta_basis.len()]);
        let twisted = base.twist(&[2, 3, 4, 5]).unwrap();
        let n = normalize(&twisted, 0).unwrap();
        assert!(match_norm_pattern(&n, 0).is_some());
        let w = normalization_witness(&twisted, 0).unwrap();
        assert!(extend(&twisted).unwrap().is_homomorphism(&extend(&n).unwrap(), &w));
        assert!(are_isomorphic(&extend(&twisted).unwrap(), &extend(&n).unwrap()));
    }
}

#[test]
fn two_copies_of_z2_have_two_atoms() {
    let m = small_medial_lss().unwrap();
    let q = &m[1].quandle;
    let a = cg(q, &[(0, 1)]);
    let b = cg(q, &[(2, 3)]);
    assert_ne!(a, b);
    assert!(a.meet(&b).is_discrete() && !a.is_full() && !b.is_full());
    assert!(!is_subdirectly_irreducible(q));
}

#[test]
fn unions_over_three() {
    let u = paper_unions(3).unwrap();
    assert_eq!(u[2].size, 6);
    assert!(u.iter().all(|c| c.lss));
}
