//! Catalog relation suite: twist relations hold up to inner automorphism,
//! with the homology side checked exactly.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use prym_core::defaults::{default_aux_catalog, default_torelli_catalog};
use prym_core::freegrp::{EndoMap, GeneratorCatalog, Word};
use prym_core::surface::{
    equal_up_to_inner, inner_conjugator, validate_mapping_class, SurfacePresentation,
};

fn aux() -> GeneratorCatalog {
    default_aux_catalog()
}

fn endo(cat: &GeneratorCatalog, n: &str) -> EndoMap {
    cat.get(n).unwrap().endo.clone()
}

fn pairing(s: &SurfacePresentation, u: &[BigInt], v: &[BigInt]) -> BigInt {
    s.pairing(u, v)
}

/// Homology-level check is exact: commuting twists multiply to a matrix
/// independent of order; braiding twists conjugate one transvection into
/// the other.
#[test]
fn twist_relations_on_homology_are_exact() {
    let s = SurfacePresentation::new(3);
    let cat = aux();
    let names = ["ta1", "tb1", "ta2", "tb2", "ta3", "tb3", "d12", "d23", "d31"];
    let curves: Vec<Vec<BigInt>> = names
        .iter()
        .map(|n| cat.get(n).unwrap().curve.clone().unwrap())
        .collect();
    for (i, ni) in names.iter().enumerate() {
        for (j, nj) in names.iter().enumerate() {
            if j <= i {
                continue;
            }
            let mi = validate_mapping_class(&s, &endo(&cat, ni)).unwrap().homology;
            let mj = validate_mapping_class(&s, &endo(&cat, nj)).unwrap().homology;
            let pair = pairing(&s, &curves[i], &curves[j]);
            if pair.is_zero() {
                assert_eq!(mi.mul(&mj), mj.mul(&mi), "{ni} {nj}");
            } else if pair.abs() == BigInt::from(1) {
                // braid on homology: A B A = B A B
                assert_eq!(
                    mi.mul(&mj).mul(&mi),
                    mj.mul(&mi).mul(&mj),
                    "{ni} {nj}"
                );
            }
        }
    }
}

/// Once-intersecting pairs satisfy the braid relation as endomorphisms up
/// to an inner automorphism found by conjugator search.
#[test]
fn braid_relations_up_to_inner() {
    let cat = aux();
    let pairs = [
        ("ta1", "tb1"),
        ("ta2", "tb2"),
        ("ta3", "tb3"),
        ("d12", "ta1"),
        ("d12", "tb2"),
        ("d23", "ta2"),
        ("d23", "tb3"),
        ("d31", "ta3"),
        ("d31", "tb1"),
    ];
    for (x, y) in pairs {
        let (f, fi) = (endo(&cat, x), endo(&cat, &format!("{x}_inv")));
        let (g, gi) = (endo(&cat, y), endo(&cat, &format!("{y}_inv")));
        let lhs = f.compose(&g).unwrap().compose(&f).unwrap();
        let rhs_inv = gi.compose(&fi).unwrap().compose(&gi).unwrap();
        let k = lhs.compose(&rhs_inv).unwrap();
        assert!(
            inner_conjugator(3, &k).is_some(),
            "braid {x} {y} failed"
        );
    }
}

/// Twists about disjoint curves commute up to inner automorphism.
#[test]
fn disjoint_twists_commute_up_to_inner() {
    let cat = aux();
    let pairs = [
        ("ta1", "ta2"),
        ("ta1", "tb2"),
        ("tb1", "tb3"),
        ("d12", "tb1"),
        ("d12", "ta2"),
        ("d12", "ta3"),
        ("d12", "tb3"),
    ];
    for (x, y) in pairs {
        let (f, fi) = (endo(&cat, x), endo(&cat, &format!("{x}_inv")));
        let (g, gi) = (endo(&cat, y), endo(&cat, &format!("{y}_inv")));
        let k = f
            .compose(&g)
            .unwrap()
            .compose(&fi)
            .unwrap()
            .compose(&gi)
            .unwrap();
        assert!(inner_conjugator(3, &k).is_some(), "commute {x} {y} failed");
    }
}

/// The two-handle chain relation ties the whole convention stack
/// together: (ta1 tb1)^6 is the separating twist about the handle
/// boundary (with the opposite handedness in these conventions).
#[test]
fn two_chain_relation_hits_the_separating_twist() {
    let cat = aux();
    let tor = default_torelli_catalog();
    let step = endo(&cat, "ta1").compose(&endo(&cat, "tb1")).unwrap();
    let mut chain = EndoMap::identity(6);
    for _ in 0..6 {
        chain = step.compose(&chain).unwrap();
    }
    let sep1 = endo(&tor, "sep1");
    let sep1_inv = endo(&tor, "sep1_inv");
    assert!(equal_up_to_inner(3, &chain, &sep1_inv, &sep1));
    assert!(!equal_up_to_inner(3, &chain, &sep1, &sep1_inv));
}

#[test]
fn catalog_compose_is_associative() {
    let cat = default_torelli_catalog();
    let seq = ["sep1", "bp1", "sep2v1", "bp2_inv", "sep23"];
    let left_split = cat
        .compose(&seq[..2])
        .unwrap()
        .compose(&cat.compose(&Vec::<String>::new()).unwrap())
        .unwrap();
    let _ = left_split;
    // compose(xy) = compose(y-part) . compose(x-part)
    let whole = cat.compose(&seq).unwrap();
    for split in 1..seq.len() {
        let first = cat.compose(&seq[..split]).unwrap();
        let second = cat.compose(&seq[split..]).unwrap();
        assert_eq!(second.compose(&first).unwrap(), whole, "split {split}");
    }
}

/// sigma vanishes on random normal-closure elements of the relator.
#[test]
fn sigma_vanishes_on_relator_normal_closure() {
    use rand_core::{RngCore, SeedableRng};
    let s = SurfacePresentation::new(3);
    let r = s.relator();
    let mut rng = rand_chacha::ChaCha8Rng::from_seed([31u8; 32]);
    for p in prym_core::surface::enumerate_covers(3).into_iter().step_by(7) {
        for _ in 0..40 {
            let len = (rng.next_u64() % 8) as usize;
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let l = (rng.next_u64() % 6 + 1) as i32;
                    if rng.next_u64() % 2 == 0 {
                        l
                    } else {
                        -l
                    }
                })
                .collect();
            let u = Word::new(letters);
            let sample = r.conjugate_by(&u).concat(&r.inverse().conjugate_by(&u.inverse()));
            assert_eq!(p.sigma_word(&sample), 0);
            assert_eq!(p.sigma_word(&r.conjugate_by(&u)), 0);
        }
    }
}
