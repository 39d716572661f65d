use std::sync::Arc;

use burnside_core::explicit::ExplicitBiset;
use burnside_core::sample::{random_actual, random_virtual};
use burnside_core::{
    all_pairs, canonical_key, canonicalize, conjugate_pairs, group_as_biset, int, OrbitKey, Scalar, VirtualBiset,
};
use group_core::catalog::lookup;
use group_core::{injective_homs, Elem, Embedding, Group, Hom, Subgroup};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn g(name: &str) -> Arc<Group> {
    lookup(name).unwrap()
}

fn trivial_orbit(r: &Arc<Group>, s: &Arc<Group>) -> VirtualBiset {
    let one = Subgroup::trivial(r);
    VirtualBiset::transitive(r, s, &one, &Hom::from_fn(r.order(), &one, |_| 0))
}

#[test]
fn identity_is_neutral() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (a, b) in [("D8", "C4"), ("V4", "Q8"), ("S3", "C2")] {
        let (r, s) = (g(a), g(b));
        let x = random_virtual(&mut rng, &r, &s, 3, 2);
        assert_eq!(VirtualBiset::identity(&r).odot(&x), x);
        assert_eq!(x.odot(&VirtualBiset::identity(&s)), x);
    }
}

#[test]
fn free_orbit_squares() {
    let c2 = g("C2");
    let one = trivial_orbit(&c2, &c2);
    assert_eq!(one.odot(&one), one.scale(&int(2)));
    assert_eq!(one.augmentation(), int(4));
}

#[test]
fn composition_with_full_orbit_composes_maps() {
    // [H, φ]_R^S ⊙ [S, ψ]_S^T = [H, ψ∘φ]_R^T
    let (r, s, t) = (g("D8"), g("V4"), g("C2xC2xC2"));
    for h in r.all_subgroups().unwrap().iter() {
        for phi in injective_homs(&r, h, &s).into_iter().take(3) {
            for psi in injective_homs(&s, &Subgroup::whole(&s), &t).into_iter().take(5) {
                let lhs = VirtualBiset::transitive(&r, &s, h, &phi).odot(&VirtualBiset::from_hom(&s, &t, &psi));
                let rhs = VirtualBiset::transitive(&r, &t, h, &phi.then(&psi));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn compose_rejects_mismatched_groups() {
    let x = VirtualBiset::identity(&g("C2"));
    let y = VirtualBiset::identity(&g("C3"));
    assert!(x.compose(&y).is_err());
}

#[test]
fn canonical_forms_of_conjugate_pairs_agree() {
    let d8 = g("D8");
    let s = Subgroup::whole(&d8);
    assert_eq!(canonicalize(&d8, &d8, &s, &Hom::inclusion(8, &s)), OrbitKey::identity(&d8));
    // reflections r^i s sit at 4..8; ⟨s⟩ and ⟨r²s⟩ are conjugate
    let c1 = Subgroup::generated(&d8, &[4]);
    let c2 = Subgroup::generated(&d8, &[6]);
    let f1 = Hom::from_fn(8, &c1, |x| if x == 0 { 0 } else { 5 });
    let f2 = Hom::from_fn(8, &c2, |x| if x == 0 { 0 } else { 7 });
    assert!(conjugate_pairs(&d8, &d8, (&c1, &f1), (&c2, &f2)));
    assert_eq!(canonicalize(&d8, &d8, &c1, &f1), canonicalize(&d8, &d8, &c2, &f2));
}

#[test]
fn canonical_key_classifies_like_exhaustive_search() {
    for (a, b) in [("D8", "D8"), ("A4", "V4"), ("Q8", "C4xC2"), ("S3", "C6")] {
        let (r, s) = (g(a), g(b));
        let mut pairs: Vec<(Subgroup, Hom)> = Vec::new();
        for p in r.all_subgroups().unwrap().iter() {
            for h in group_core::all_homs(&r, p, &s) {
                pairs.push((p.clone(), h));
            }
        }
        let keys: Vec<OrbitKey> = pairs.iter().map(|(p, h)| canonicalize(&r, &s, p, h)).collect();
        for i in (0..pairs.len()).step_by(3) {
            for j in (0..pairs.len()).step_by(5) {
                let same = conjugate_pairs(&r, &s, (&pairs[i].0, &pairs[i].1), (&pairs[j].0, &pairs[j].1));
                assert_eq!(same, keys[i] == keys[j], "{a} {b} {i} {j}");
            }
        }
        for k in &keys {
            let again = canonical_key(&r, &s, &k.stab, |x| k.hom(&r, &s).apply(x));
            assert_eq!(&again, k);
        }
    }
}

#[test]
fn marks_of_identity() {
    for name in ["D8", "Q8", "C4", "S3"] {
        let s = g(name);
        let id = VirtualBiset::identity(&s);
        let one = Subgroup::trivial(&s);
        assert_eq!(id.mark(&one, &Hom::from_fn(s.order(), &one, |_| 0)), int(s.order() as i64));
        let whole = Subgroup::whole(&s);
        let centre = s.centralizer(&whole.gens(&s)).order();
        assert_eq!(id.mark(&whole, &Hom::inclusion(s.order(), &whole)), int(centre as i64));
        assert!(VirtualBiset::zero(&s, &s).marks().is_zero());
    }
}

#[test]
fn marks_match_explicit_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (a, b) in [("D8", "C4"), ("A4", "V4"), ("S3", "S3"), ("Q8", "D8")] {
        let (r, s) = (g(a), g(b));
        for _ in 0..3 {
            let x = random_actual(&mut rng, &r, &s, 3);
            let e = ExplicitBiset::from_biset(&x).unwrap();
            for k in all_pairs(&r, &s, false) {
                let q = k.stab_subgroup(&r);
                let psi = k.hom(&r, &s);
                assert_eq!(x.mark(&q, &psi), int(e.fixed_points(&q, &psi) as i64));
            }
        }
    }
}

#[test]
fn mark_matrix_is_triangular_with_nonzero_diagonal() {
    for (a, b) in [("C2", "C2"), ("V4", "C2"), ("C4", "C4"), ("D8", "C2"), ("S3", "C3")] {
        let (r, s) = (g(a), g(b));
        let mut keys = all_pairs(&r, &s, true);
        keys.sort_by_key(|k| std::cmp::Reverse(k.order()));
        for (i, ki) in keys.iter().enumerate() {
            let x = VirtualBiset::orbit(&r, &s, ki.clone());
            for (j, kj) in keys.iter().enumerate() {
                let m = x.mark(&kj.stab_subgroup(&r), &kj.hom(&r, &s));
                if i == j {
                    assert!(!m.is_zero());
                } else if kj.order() >= ki.order() {
                    assert!(m.is_zero(), "{a} {b}: orbit {i} has a mark at larger pair {j}");
                }
            }
        }
    }
}

#[test]
fn augmentation_and_restriction() {
    let s = g("D8");
    assert_eq!(VirtualBiset::identity(&s).augmentation(), int(8));
    let p = Subgroup::generated(&s, &[1]);
    let emb = Embedding::new(&s, &p, "C4");
    let restricted = VirtualBiset::identity(&s).restrict_left_to(&emb);
    let incl = Hom::from_fn(4, &Subgroup::whole(&emb.sub), |x| emb.to_ambient(x));
    assert_eq!(restricted, VirtualBiset::from_hom(&emb.sub, &s, &incl));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_virtual(&mut rng, &s, &g("C4"), 4, 2);
    let all = Embedding::new(&s, &Subgroup::whole(&s), "D8");
    assert_eq!(x.restrict_left_to(&all).with_groups(&s, x.right()), x);
}

#[test]
fn group_as_biset_counts_points() {
    let a4 = g("A4");
    let v = a4.sylow(2);
    let emb = Embedding::new(&a4, &v, "V4");
    let x = group_as_biset(&a4, &emb, &emb);
    assert_eq!(x.augmentation(), int(12));
    assert!(x.is_bifree() && x.is_actual());
    // three double cosets V4\A4/V4, each a single coset of V4
    assert_eq!(x.terms().values().fold(Scalar::zero(), |a, c| a + c), int(3));
    let whole = Embedding::new(&a4, &Subgroup::whole(&a4), "A4");
    assert_eq!(group_as_biset(&a4, &whole, &whole), VirtualBiset::identity(&whole.sub));
    // marks at (P, c_g|_P) do not depend on g
    let s = &emb.sub;
    for p in s.all_subgroups().unwrap().iter() {
        let mut seen = std::collections::BTreeSet::new();
        for y in a4.elements() {
            let pa: Vec<Elem> = p.members().iter().map(|&m| emb.to_ambient(m)).collect();
            if pa.iter().all(|&m| emb.to_sub(a4.conj(y, m)).is_some()) {
                let h = Hom::from_fn(s.order(), p, |m| emb.to_sub(a4.conj(y, emb.to_ambient(m))).unwrap());
                seen.insert(x.mark(p, &h));
            }
        }
        assert_eq!(seen.len(), 1);
    }
}

#[test]
fn product_of_orbits() {
    let (a, b) = (g("C2"), g("S3"));
    let x = VirtualBiset::identity(&a).product(&VirtualBiset::identity(&b));
    assert_eq!(x, VirtualBiset::identity(x.left()));
    let y = trivial_orbit(&a, &a).product(&VirtualBiset::identity(&b));
    assert_eq!(y.augmentation(), int(4 * 6));
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (a, b) in [("D8", "C4"), ("A4", "V4"), ("S3", "C3")] {
        let x = random_virtual(&mut rng, &g(a), &g(b), 4, 3);
        let text = x.to_json_string();
        let back = VirtualBiset::from_json_str(&text).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.to_json_string(), text);
    }
    assert!(VirtualBiset::from_json_str(r#"{"left":"C2","right":"C2","terms":[{"stab":[0,1],"phi":[0,1],"coeff":"1"}]}"#)
        .is_err());
    assert!(VirtualBiset::from_json_str(r#"{"left":"C2","right":"C2","terms":[{"stab":[1],"phi":[],"coeff":"1"}]}"#)
        .is_err());
}

fn small_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["C2", "C4", "V4", "S3", "D8", "Q8", "C3"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn composition_matches_set_level_product(a in small_group(), b in small_group(), c in small_group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, s, t) = (g(a), g(b), g(c));
        let x = random_actual(&mut rng, &r, &s, 2);
        let y = random_actual(&mut rng, &s, &t, 2);
        let xy = x.odot(&y);
        let ex = ExplicitBiset::from_biset(&x).unwrap().compose(&ExplicitBiset::from_biset(&y).unwrap());
        prop_assert!(ex.agrees_with(&xy));
        prop_assert_eq!(xy.augmentation(), x.augmentation() * y.augmentation() / int(s.order() as i64));
    }

    #[test]
    fn composition_is_associative(a in small_group(), b in small_group(), c in small_group(), d in small_group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, s, t, u) = (g(a), g(b), g(c), g(d));
        let x = random_virtual(&mut rng, &r, &s, 2, 2);
        let y = random_virtual(&mut rng, &s, &t, 2, 2);
        let z = random_virtual(&mut rng, &t, &u, 2, 2);
        prop_assert_eq!(x.odot(&y).odot(&z), x.odot(&y.odot(&z)));
    }

    #[test]
    fn marks_determine_bisets(a in prop::sample::select(vec!["C2", "C4", "V4", "S3"]), b in prop::sample::select(vec!["C2", "C4", "V4"]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, s) = (g(a), g(b));
        let x = random_virtual(&mut rng, &r, &s, 3, 2);
        let y = random_virtual(&mut rng, &r, &s, 3, 2);
        prop_assert_eq!(x.marks() == y.marks(), x == y);
        prop_assert_eq!(x.marks().is_zero(), x.is_zero());
    }

    #[test]
    fn canonicalization_is_idempotent(a in small_group(), b in small_group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, s) = (g(a), g(b));
        let x = random_actual(&mut rng, &r, &s, 1);
        for k in x.terms().keys() {
            let h = k.hom(&r, &s);
            prop_assert_eq!(&canonicalize(&r, &s, &k.stab_subgroup(&r), &h), k);
        }
    }
}
