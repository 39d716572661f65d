use std::collections::BTreeSet;

use group_core::catalog::lookup;
use group_core::io::{group_ref, parse_group_ref, GroupFile};
use group_core::{
    commuting_tuples, cyclic_pe, direct_product, injective_homs, power, canonical_tuple, Elem, Group, Subgroup,
};
use proptest::prelude::*;

fn g(name: &str) -> std::sync::Arc<Group> {
    lookup(name).unwrap()
}

fn class_sizes(name: &str) -> (usize, usize) {
    let grp = g(name);
    let classes = grp.subgroup_classes().unwrap();
    (classes.iter().map(|c| c.members.len()).sum(), classes.len())
}

/// Brute force: every subset closed under multiplication. Only for tiny groups.
fn brute_force_subgroup_count(grp: &Group) -> usize {
    let n = grp.order();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter(|mask| {
            mask & 1 == 1 && {
                let m: Vec<Elem> = (0..n as Elem).filter(|&i| mask >> i & 1 == 1).collect();
                Subgroup::is_closed(grp, &m)
            }
        })
        .count()
}

#[test]
fn subgroup_counts() {
    assert_eq!(class_sizes("C2"), (2, 2));
    assert_eq!(class_sizes("V4"), (5, 5));
    assert_eq!(class_sizes("D8"), (10, 8));
    assert_eq!(class_sizes("Q8"), (6, 6));
    assert_eq!(class_sizes("A4"), (10, 5));
    assert_eq!(class_sizes("S4"), (30, 11));
    assert_eq!(class_sizes("SL(2,3)"), (15, 7));
    for name in ["C4", "V4", "D8", "Q8", "S3", "C2xC4"] {
        let grp = g(name);
        assert_eq!(grp.all_subgroups().unwrap().len(), brute_force_subgroup_count(&grp), "{name}");
    }
}

#[test]
fn classes_are_sorted_and_orbit_stabilizer_holds() {
    for name in ["D8", "A4", "S4", "SL(2,3)", "Q8xC2"] {
        let grp = g(name);
        let classes = grp.subgroup_classes().unwrap();
        for w in classes.windows(2) {
            let a = (std::cmp::Reverse(w[0].representative.order()), w[0].representative.members());
            let b = (std::cmp::Reverse(w[1].representative.order()), w[1].representative.members());
            assert!(a < b);
        }
        for c in &classes {
            let n = grp.normalizer(&c.representative);
            assert_eq!(c.members.len() * n.order(), grp.order());
            assert!(c.members.contains(&c.representative));
            assert_eq!(c.members[0], c.representative, "least member set is the representative");
        }
    }
}

#[test]
fn bound_is_reported() {
    let grp = g("S4xS4xC2");
    let err = grp.all_subgroups().map(|_| ()).unwrap_err().to_string();
    assert!(err.contains("S4xS4xC2") && err.contains("1024"), "{err}");
}

#[test]
fn centralizers() {
    let a4 = g("A4");
    for x in a4.elements().filter(|&x| a4.elem_order(x) == 2) {
        let c = a4.centralizer(&[x]);
        assert_eq!(c.order(), 4);
        assert!(c.members().iter().all(|&y| y == 0 || a4.elem_order(y) == 2));
    }
    assert_eq!(a4.centralizer(&[]).order(), 12);
    let q8 = g("Q8");
    // -1 sits at index 1
    assert_eq!(q8.elem_order(1), 2);
    assert_eq!(q8.centralizer(&[1]).order(), 8);
}

#[test]
fn sylow_subgroups() {
    let s4 = g("S4");
    let p = s4.sylow(2);
    assert_eq!(p.order(), 8);
    let (d, _) = s4.subgroup_group(&p, "P");
    let orders: Vec<u32> = d.elements().map(|x| d.elem_order(x)).collect();
    assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
    assert!(!d.is_abelian());
    let a4 = g("A4");
    let v = a4.sylow(2);
    assert_eq!(v.order(), 4);
    assert!(v.members().iter().all(|&y| a4.elem_order(y) <= 2));
    assert_eq!(g("C3").sylow(2).order(), 1);
    assert_eq!(g("SL(2,3)").sylow(2).order(), 8);
    assert_eq!(g("S3").sylow(3).order(), 3);
}

#[test]
fn injective_hom_counts() {
    let c2 = g("C2");
    let v4 = g("V4");
    assert_eq!(injective_homs(&c2, &Subgroup::whole(&c2), &c2).len(), 1);
    assert_eq!(injective_homs(&c2, &Subgroup::whole(&c2), &v4).len(), 3);
    let d8 = g("D8");
    let homs = injective_homs(&v4, &Subgroup::whole(&v4), &d8);
    // brute force over all assignments of all four elements
    let mut count = 0;
    for a in d8.elements() {
        for b in d8.elements() {
            for c in d8.elements() {
                let img = [0, a, b, c];
                let mult = v4.elements().all(|x| {
                    v4.elements().all(|y| img[v4.mul(x, y) as usize] == d8.mul(img[x as usize], img[y as usize]))
                });
                let inj = img.iter().collect::<BTreeSet<_>>().len() == 4;
                if mult && inj {
                    count += 1;
                }
            }
        }
    }
    assert_eq!(homs.len(), count);
    assert_eq!(count, 12);
    for h in &homs {
        assert!(h.is_multiplicative(&v4, &d8) && h.is_injective());
    }
}

#[test]
fn products() {
    assert_eq!(cyclic_pe(2, 3).order(), 8);
    let c2 = g("C2");
    let v = direct_product(&c2, &c2).unwrap();
    assert_eq!(v.order(), 4);
    assert_eq!(v.exponent(), 2);
    assert_eq!(power(&cyclic_pe(2, 3), 2).unwrap().order(), 64);
    assert_eq!(power(&c2, 0).unwrap().order(), 1);
    let big = g("S5");
    assert!(direct_product(&big, &big).is_err());
}

#[test]
fn commuting_tuple_classes() {
    let a4 = g("A4");
    assert_eq!(commuting_tuples(&a4, 0, None), vec![Vec::<Elem>::new()]);
    let t = commuting_tuples(&a4, 1, Some(2));
    assert_eq!(t.len(), 2);
    assert_eq!(t[0], vec![0]);
    assert_eq!(a4.elem_order(t[1][0]), 2);
    assert_eq!(commuting_tuples(&g("V4"), 1, None).len(), 4);
    // conjugacy classes of A4: 1, (12)(34), two classes of 3-cycles
    assert_eq!(commuting_tuples(&a4, 1, None).len(), 4);
}

#[test]
fn commuting_pairs_match_exhaustive_classification() {
    for name in ["A4", "D8", "S3", "Q8"] {
        let grp = g(name);
        let mut classes = BTreeSet::new();
        for a in grp.elements() {
            for b in grp.elements() {
                if grp.commute(a, b) {
                    classes.insert(canonical_tuple(&grp, &[a, b]));
                }
            }
        }
        let reps: BTreeSet<Vec<Elem>> = commuting_tuples(&grp, 2, None).into_iter().collect();
        assert_eq!(reps, classes, "{name}");
        for r in &reps {
            assert_eq!(&canonical_tuple(&grp, r), r);
        }
    }
}

#[test]
fn catalog_groups_satisfy_axioms() {
    for name in group_core::catalog::names() {
        let grp = g(&name);
        let rows = grp.table_rows();
        let rebuilt = Group::from_table(&name, &rows).unwrap();
        assert_eq!(rebuilt, *grp);
        for x in grp.elements() {
            assert_eq!(grp.order() as u32 % grp.elem_order(x), 0);
            assert_eq!(grp.mul(x, grp.inv(x)), 0);
        }
    }
}

#[test]
fn invalid_tables_are_rejected() {
    assert!(Group::from_table("bad", &[vec![0, 1], vec![1, 1]]).is_err());
    assert!(Group::from_table("bad", &[vec![0, 1], vec![1]]).is_err());
    assert!(Group::from_table("bad", &[vec![0, 2], vec![1, 0]]).is_err());
    // a Latin square that is not associative
    let rows = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    assert!(Group::from_table("loop", &rows).is_err());
}

#[test]
fn identity_is_relabelled() {
    // C2 with the identity at index 1
    let grp = Group::from_table("C2'", &[vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(grp.mul(0, 0), 0);
    assert_eq!(grp.mul(1, 1), 0);
}

#[test]
fn group_json_round_trip() {
    for name in ["A4", "V4", "C4xC2", "SL(2,3)"] {
        let grp = g(name);
        let v = group_ref(&grp);
        assert_eq!(v, serde_json::Value::String(name.into()));
        assert_eq!(*parse_group_ref(&v).unwrap(), *grp);
        let file = GroupFile::from_group(&grp);
        let text = serde_json::to_string(&file).unwrap();
        let back: GroupFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(*back.build().unwrap(), *grp);
    }
    let custom = Group::from_table("mine", &g("C3").table_rows()).unwrap();
    let v = group_ref(&custom);
    assert!(v.is_object());
    assert_eq!(*parse_group_ref(&v).unwrap(), custom);
}

#[test]
fn perm_group_file() {
    let text = r#"{"name": "S3p", "kind": "perm", "generators": [[[0, 1]], [[0, 1, 2]]]}"#;
    let file: GroupFile = serde_json::from_str(text).unwrap();
    let grp = file.build().unwrap();
    assert_eq!(grp.order(), 6);
    assert!(!grp.is_abelian());
    let bad: GroupFile = serde_json::from_str(r#"{"name": "x", "kind": "perm", "generators": [[[0, 0]]]}"#).unwrap();
    assert!(bad.build().is_err());
}

#[test]
fn subgroup_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    group_core::cache::set_cache_dir(Some(dir.path().to_path_buf()));
    // a fresh table so that nothing is memoized in memory yet
    let cold = Group::from_table("D8c", &g("D8").table_rows()).unwrap();
    let a = cold.all_subgroups().unwrap();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let warm = Group::from_table("D8w", &g("D8").table_rows()).unwrap();
    let b = warm.all_subgroups().unwrap();
    assert_eq!(a, b);
    group_core::cache::set_cache_dir(None);
}

proptest! {
    #[test]
    fn centralizer_matches_scan(name in prop::sample::select(vec!["A4", "D8", "S4", "Q8", "SL(2,3)"]), seed in 0usize..10_000) {
        let grp = g(name);
        let a = (seed % grp.order()) as Elem;
        let c = grp.centralizer(&[a]);
        let b = c.members()[(seed / 7) % c.order()];
        let c2 = grp.centralizer(&[a, b]);
        let scan: Vec<Elem> = grp.elements().filter(|&x| grp.commute(x, a) && grp.commute(x, b)).collect();
        prop_assert_eq!(c2.members(), scan.as_slice());
        let gen = Subgroup::generated(&grp, &[a, b]);
        prop_assert!(gen.is_subgroup_of(&c2) || !grp.commute(a, b));
    }

    #[test]
    fn conjugate_subgroups_share_canonical_form(name in prop::sample::select(vec!["D8", "S4", "A4"]), i in 0usize..100, x in 0u32..24) {
        let grp = g(name);
        let subs = grp.all_subgroups().unwrap();
        let s = &subs[i % subs.len()];
        let y = x % grp.order() as u32;
        let t = s.conjugate_by(&grp, y);
        let cs = grp.conj_info(s.members());
        let ct = grp.conj_info(t.members());
        prop_assert_eq!(&cs.canonical, &ct.canonical);
        let moved = s.conjugate_by(&grp, cs.conjugator);
        prop_assert_eq!(moved.members(), cs.canonical.as_slice());
    }
}
