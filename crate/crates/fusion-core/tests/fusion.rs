use std::collections::BTreeMap;
use std::sync::Arc;

use burnside_core::linalg::solve_unique;
use burnside_core::{all_pairs, frac, int, orbit_mark, OrbitKey, Scalar, VirtualBiset};
use fusion_core::*;
use group_core::catalog::lookup;
use group_core::{injective_homs, Elem, Group, Hom, Subgroup};
use num_traits::{One, Zero};

fn realized(name: &str, p: u64) -> Arc<FusionSystem> {
    FusionSystem::realized(&lookup(name).unwrap(), p).unwrap()
}

fn trivial(name: &str) -> Arc<FusionSystem> {
    FusionSystem::trivial(&lookup(name).unwrap(), 2).unwrap()
}

fn corpus() -> Vec<Arc<FusionSystem>> {
    let mut v: Vec<_> = ["C4", "V4", "D8", "Q8"].iter().map(|n| trivial(n)).collect();
    v.extend(["A4", "S4", "SL(2,3)"].iter().map(|n| realized(n, 2)));
    v.extend(["S3", "A4"].iter().map(|n| realized(n, 3)));
    v
}

fn identity_hom(g: &Group) -> Hom {
    Hom::inclusion(g.order(), &Subgroup::whole(g))
}

/// `ω_F` solved from scratch as one linear system: marks equal across each
/// `(F,F)`-class and coefficient sums `[P = S]`, with unknowns on every
/// `F`-generated orbit. Returns `None` unless the solution is unique.
fn omega_by_linear_system(f: &FusionSystem) -> Option<VirtualBiset> {
    let s = f.s();
    let keys: Vec<OrbitKey> =
        all_pairs(s, s, true).into_iter().filter(|k| f.contains_hom(&k.hom(s, s))).collect();
    let mut classes: BTreeMap<Vec<Subgroup>, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        classes.entry(f.class_of(&k.stab_subgroup(s))).or_default().push(i);
    }
    let mark = |row: &OrbitKey, col: &OrbitKey| {
        Scalar::from_integer(orbit_mark(s, s, col, &row.stab_subgroup(s), &row.hom(s, s)).into())
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (class, idx) in &classes {
        for w in idx.windows(2) {
            a.push(keys.iter().map(|c| mark(&keys[w[0]], c) - mark(&keys[w[1]], c)).collect());
            b.push(Scalar::zero());
        }
        a.push((0..keys.len()).map(|j| if idx.contains(&j) { Scalar::one() } else { Scalar::zero() }).collect());
        b.push(if class[0].order() == s.order() { Scalar::one() } else { Scalar::zero() });
    }
    let c = solve_unique(&a, &b)?;
    let mut x = VirtualBiset::zero(s, s);
    for (k, v) in keys.into_iter().zip(c) {
        x.add_term(k, v);
    }
    Some(x)
}

#[test]
fn homset_of_v4_in_a4() {
    let f = realized("A4", 2);
    let v4 = Subgroup::whole(f.s());
    let homs = f.hom_set(&v4, &v4);
    assert_eq!(homs.len(), 3);
    // the three maps form a group of order 3 under composition
    let sigma = homs.iter().find(|h| !h.images_of(v4.members()).iter().eq(v4.members().iter())).unwrap();
    let sq = sigma.then(sigma);
    assert!(!sq.images_of(v4.members()).iter().eq(v4.members().iter()));
    let cube = sq.then(sigma);
    assert!(cube.images_of(v4.members()).iter().eq(v4.members().iter()));
}

#[test]
fn homsets_of_trivial_systems_are_inner() {
    let f = trivial("D8");
    let s = f.s();
    for p in s.all_subgroups().unwrap().iter() {
        for q in s.all_subgroups().unwrap().iter() {
            let mut want = std::collections::BTreeSet::new();
            for x in s.elements() {
                let img: Vec<Elem> = p.gens(s).iter().map(|&g| s.conj(x, g)).collect();
                if img.iter().all(|&y| q.contains(y)) {
                    want.insert(img);
                }
            }
            let got: std::collections::BTreeSet<Vec<Elem>> =
                f.hom_set(p, q).iter().map(|h| h.images_of(&p.gens(s))).collect();
            assert_eq!(got, want);
        }
    }
    assert!(f.is_trivial());
    assert!(!realized("A4", 2).is_trivial());
}

#[test]
fn homsets_are_closed_and_contain_conjugations() {
    for f in corpus() {
        let s = f.s();
        let whole = Subgroup::whole(s);
        let subs = s.all_subgroups().unwrap();
        for p in subs.iter() {
            let homs = f.hom_set(p, &whole);
            assert!(homs.iter().any(|h| p.members().iter().all(|&x| h.apply(x) == x)), "{f:?}: id missing");
            for x in s.elements() {
                let c = Hom::from_fn(s.order(), p, |y| s.conj(x, y));
                assert!(f.contains_hom(&c), "{f:?}: inner map missing");
            }
            for phi in homs.iter() {
                let img = phi.image(s.order());
                for psi in f.hom_set(&img, &whole).iter() {
                    assert!(f.contains_hom(&phi.then(psi)), "{f:?}: not closed under composition");
                }
                for q in subs.iter().filter(|q| q.is_subgroup_of(p)) {
                    assert!(f.contains_hom(&phi.restrict(q)), "{f:?}: not closed under restriction");
                }
            }
        }
    }
}

#[test]
fn omega_of_trivial_systems_is_the_identity() {
    for n in ["C4", "V4", "D8", "Q8"] {
        let f = trivial(n);
        assert_eq!(*f.omega().unwrap(), VirtualBiset::identity(f.s()));
    }
}

#[test]
fn omega_of_a4_at_two() {
    let f = realized("A4", 2);
    let s = f.s();
    let v4 = Subgroup::whole(s);
    let mut want = VirtualBiset::zero(s, s);
    for h in f.hom_set(&v4, &v4).iter() {
        want.add_assign_scaled(&VirtualBiset::transitive(s, s, &v4, h), &frac(1, 3));
    }
    let w = f.omega().unwrap();
    assert_eq!(*w, want);
    assert_eq!(w.len(), 3);
    assert_eq!(w.augmentation(), int(4));
    assert_eq!(omega_by_linear_system(&f).unwrap(), want);
}

#[test]
fn corpus_idempotents_are_characteristic() {
    for f in corpus() {
        let w = f.omega().unwrap();
        let report = check_characteristic(&f, &w);
        assert!(report.all(), "{f:?}: {:?}", report.failures());
        assert_eq!(omega_by_linear_system(&f).as_ref(), Some(&*w), "{f:?}");
        assert_eq!(stabilize(&f, TieOrder::Reverse).unwrap(), *w);
    }
}

#[test]
fn stability_checks_reject_non_stable_bisets() {
    let f = realized("A4", 2);
    let id = VirtualBiset::identity(f.s());
    let report = check_characteristic(&f, &id);
    assert!(report.f_generated && report.idempotent && report.unit_augmentation);
    assert!(!report.left_stable && !report.right_stable && !report.marks_constant);
}

#[test]
fn omega_of_sl23_contains_the_centre() {
    let f = realized("SL(2,3)", 2);
    let s = f.s();
    let z: Vec<Elem> = s.elements().filter(|&x| s.elem_order(x) == 2).collect();
    assert_eq!(z.len(), 1);
    let a = z[0];
    let w = f.omega().unwrap();
    assert!(w.len() > 1);
    for k in w.terms().keys() {
        assert!(k.stab.contains(&a));
        assert_eq!(k.hom(s, s).apply(a), a);
    }
}

#[test]
fn product_idempotent_uses_the_factor() {
    let inner = realized("A4", 2);
    let a = lookup("C4").unwrap();
    let f = FusionSystem::product(&a, &inner).unwrap();
    let w = f.omega().unwrap();
    let expect = VirtualBiset::identity(&a).product_into(&inner.omega().unwrap(), f.s(), f.s());
    assert_eq!(*w, expect);
    assert_eq!(stabilize(&f, TieOrder::Forward).unwrap(), expect);
}

#[test]
fn fusion_preservation_examples() {
    let a4 = realized("A4", 2);
    let d8 = trivial("D8");
    let v4 = a4.s();
    let s = d8.s();
    // any injective map V4 → D8 fails to carry the order 3 automorphism
    let whole = Subgroup::whole(v4);
    for h in injective_homs(v4, &whole, s) {
        assert!(!is_fusion_preserving(&h, &a4, &d8).unwrap());
    }
    for f in corpus() {
        assert!(is_fusion_preserving(&identity_hom(f.s()), &f, &f).unwrap());
    }
    // the inclusion of V4 into S4's Sylow subgroup carries the A4 fusion
    let s4 = realized("S4", 2);
    let homs = injective_homs(v4, &whole, s4.s());
    let verdicts: Vec<bool> = homs.iter().map(|h| is_fusion_preserving(h, &a4, &s4).unwrap()).collect();
    assert!(verdicts.contains(&true) && verdicts.contains(&false));
}

#[test]
fn fusion_preservation_methods_agree() {
    let small: Vec<_> = corpus().into_iter().filter(|f| f.s().order() <= 4).collect();
    for e in &small {
        for f in &small {
            let whole = Subgroup::whole(e.s());
            for h in injective_homs(e.s(), &whole, f.s()) {
                assert_eq!(preserving_direct(&h, e, f), preserving_by_idempotents(&h, e, f).unwrap());
            }
        }
    }
}

#[test]
fn projection_examples() {
    let f = realized("S4", 2);
    let w = f.omega().unwrap();
    assert_eq!(project_to_fusion(&w, &f, &f).unwrap(), *w);
    let zero = VirtualBiset::zero(f.s(), f.s());
    assert_eq!(project_to_fusion(&zero, &f, &f).unwrap(), zero);
    assert!(is_stable(&w, &f, &f).unwrap());
    assert!(!is_stable(&VirtualBiset::identity(f.s()), &f, &f).unwrap());

    // a fusion preserving [S, f] is already left stable after ⊙ ω_F
    let e = realized("A4", 2);
    let whole = Subgroup::whole(e.s());
    for h in injective_homs(e.s(), &whole, f.s()) {
        if is_fusion_preserving(&h, &e, &f).unwrap() {
            let x = VirtualBiset::from_hom(e.s(), f.s(), &h).odot(&w);
            assert_eq!(project_to_fusion(&x, &e, &f).unwrap(), x);
        }
    }
}

#[test]
fn fusion_basis_composition() {
    let e = realized("A4", 2);
    let f = realized("S4", 2);
    let (r, s) = (e.s(), f.s());
    let g = FusionSystem::trivial(s, 2).unwrap();
    let rw = Subgroup::whole(r);
    let sw = Subgroup::whole(s);
    let pres: Vec<Hom> =
        injective_homs(r, &rw, s).into_iter().filter(|h| is_fusion_preserving(h, &e, &f).unwrap()).collect();
    assert!(!pres.is_empty());
    // [H, φ] ⊙ [S, ψ] = [H, ψ∘φ] for fusion preserving ψ
    let sid = identity_hom(s);
    for h in &pres {
        let b1 = BasisPair::new(rw.clone(), h.clone());
        let b2 = BasisPair::new(sw.clone(), sid.clone());
        let got = compose_fusion_basis(&e, &b1, &f, &b2, &f).unwrap();
        let want = project_to_fusion(&VirtualBiset::from_hom(r, s, h), &e, &f).unwrap();
        assert_eq!(got, want);
    }
    // smaller subgroups on both sides
    for p in s.all_subgroups().unwrap().iter().filter(|p| p.order() == 2 || p.order() == 4) {
        let b2 = BasisPair::new(p.clone(), Hom::inclusion(s.order(), p));
        for q in r.all_subgroups().unwrap().iter().filter(|q| q.order() == 2) {
            let b1 = BasisPair::new(q.clone(), pres[0].restrict(q));
            compose_fusion_basis(&e, &b1, &f, &b2, &g).unwrap();
        }
    }
    let b = BasisPair::new(sw.clone(), sid);
    let ww = compose_fusion_basis(&f, &b, &f, &b, &f).unwrap();
    assert_eq!(ww, *f.omega().unwrap());
}

#[test]
fn tuples_and_centralizers() {
    let f = realized("A4", 2);
    let s = f.s();
    let invol: Vec<Elem> = s.elements().skip(1).collect();
    for &a in &invol {
        assert_eq!(f.tuple_class(&[a]).len(), 3);
        let (c, emb) = f.centralizer(&[a]).unwrap();
        assert_eq!(c.s().order(), 4);
        assert_eq!(emb.sub.order(), 4);
        assert!(c.is_trivial());
    }
    let g = realized("S4", 2);
    let s = g.s();
    let bad = s.elements().find(|&x| !g.is_fully_centralized(&[x]));
    if let Some(x) = bad {
        assert!(g.centralizer(&[x]).is_err());
    }
    assert!(g.tuples_conjugate(&[0], &[0]));
}

#[test]
fn fusoid_requires_one_prime() {
    assert!(Fusoid::new(vec![]).is_err());
    assert!(Fusoid::new(vec![realized("A4", 2), realized("A4", 3)]).is_err());
    assert_eq!(Fusoid::new(vec![realized("A4", 2), trivial("C4")]).unwrap().len(), 2);
}

mod projection_props {
    use super::*;
    use burnside_core::sample::random_virtual;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Projection is idempotent, lands in stable elements and is compatible with `⊙`.
        #[test]
        fn projection_is_a_retraction(seed in any::<u64>(), i in 0usize..7, j in 0usize..7, k in 0usize..7) {
            let c = corpus();
            let (e, f, g) = (&c[i], &c[j], &c[k]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_virtual(&mut rng, e.s(), f.s(), 3, 2);
            let y = random_virtual(&mut rng, f.s(), g.s(), 3, 2);
            let px = project_to_fusion(&x, e, f).unwrap();
            prop_assert!(is_stable(&px, e, f).unwrap());
            prop_assert_eq!(&project_to_fusion(&px, e, f).unwrap(), &px);
            let py = project_to_fusion(&y, f, g).unwrap();
            let lhs = project_to_fusion(&px.odot(&py), e, g).unwrap();
            prop_assert!(is_stable(&px.odot(&py), e, g).unwrap());
            prop_assert_eq!(lhs, px.odot(&py));
        }
    }
}
