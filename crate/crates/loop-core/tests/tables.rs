mod common;

use std::collections::BTreeSet;

use common::*;
use fusion_core::FusionSystem;
use group_core::{is_commuting, Elem, Subgroup};
use loop_core::{centralizer_fusion, GroupTable, RepPolicy, TupleClassTable};

/// Classes of commuting tuples by brute force over the ambient group.
fn exhaustive_classes(f: &FusionSystem, n: usize) -> BTreeSet<Vec<Vec<Elem>>> {
    let s = f.s();
    let mut tuples: Vec<Vec<Elem>> = vec![vec![]];
    for _ in 0..n {
        tuples = tuples
            .iter()
            .flat_map(|t| s.elements().map(move |x| [t.clone(), vec![x]].concat()))
            .filter(|t| is_commuting(s, t))
            .collect();
    }
    let amb = f.ambient();
    let emb = f.embedding();
    let mut classes = BTreeSet::new();
    for t in &tuples {
        let mut class = BTreeSet::new();
        for g in amb.elements() {
            let img: Option<Vec<Elem>> = t.iter().map(|&x| emb.to_sub(amb.conj(g, emb.to_ambient(x)))).collect();
            if let Some(u) = img {
                class.insert(u);
            }
        }
        classes.insert(class.into_iter().collect());
    }
    classes
}

fn check_table(t: &TupleClassTable) {
    let f = t.fusion();
    let classes = exhaustive_classes(f, t.n());
    assert_eq!(t.len(), classes.len(), "{} n = {}", f.name(), t.n());
    let total: usize = classes.iter().map(|c| c.len()).sum();
    assert_eq!(t.tuple_count(), total);
    let mut hit = BTreeSet::new();
    for (i, r) in t.reps().iter().enumerate() {
        assert!(f.is_fully_centralized(r));
        let class = classes.iter().find(|c| c.contains(r)).expect("rep lies in some class");
        assert!(hit.insert(class.clone()), "two reps in one class");
        for u in class {
            assert_eq!(t.index_of(u), Some(i));
        }
        // fully centralized means maximal centralizer in the class
        let best = class.iter().map(|u| f.s().centralizer(u).order()).max().unwrap();
        assert_eq!(f.s().centralizer(r).order(), best);
    }
}

#[test]
fn tables_match_exhaustive_classification() {
    for f in corpus_p2().into_iter().chain(corpus_p3()) {
        for n in 0..=2 {
            for policy in [RepPolicy::Least, RepPolicy::Greatest] {
                check_table(&TupleClassTable::build(&f, n, policy).unwrap());
            }
        }
    }
}

#[test]
fn a4_tables() {
    let f = realized("A4", 2);
    let t0 = TupleClassTable::build(&f, 0, RepPolicy::Least).unwrap();
    assert_eq!(t0.reps(), &[Vec::<Elem>::new()]);
    assert!(std::sync::Arc::ptr_eq(&centralizer_fusion(&t0, &[]).unwrap(), &f));
    let t1 = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
    assert_eq!(t1.len(), 2);
    assert_eq!(t1.rep(0), &[0]);
    // the three involutions of V4 are fused
    assert_eq!(t1.tuple_count(), 4);
    let t2 = TupleClassTable::build(&f, 2, RepPolicy::Least).unwrap();
    // (1,1), (1,x), (x,1), (x,x) and two classes of pairs of distinct involutions
    assert_eq!(t2.len(), 6);
    assert_eq!(t2.tuple_count(), 16);
}

#[test]
fn prefixes_are_representatives() {
    for f in corpus_p2() {
        for policy in [RepPolicy::Least, RepPolicy::Greatest] {
            let t1 = TupleClassTable::build(&f, 1, policy).unwrap();
            let t2 = TupleClassTable::build(&f, 2, policy).unwrap();
            for r in t2.reps() {
                let i = t1.index_of(&r[..1]).unwrap();
                assert_eq!(t1.rep(i), &r[..1]);
                let y = t1.embedding(i).to_sub(r[1]).unwrap();
                assert!(t1.centralizer(i).is_fully_centralized(&[y]));
            }
        }
    }
}

#[test]
fn centralizer_systems() {
    // C_{A4}(x) = V4 with trivial fusion
    let f = realized("A4", 2);
    let t = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
    let c = centralizer_fusion(&t, t.rep(1)).unwrap();
    assert_eq!(c.s().order(), 4);
    assert_eq!(c.ambient().order(), 4);
    assert!(c.is_trivial());
    // -1 is central in SL(2,3): C_F(-1) = F
    let f = realized("SL(2,3)", 2);
    let t = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
    let z: Elem = f.s().elements().find(|&x| x != 0 && f.s().elem_order(x) == 2).unwrap();
    let i = t.index_of(&[z]).unwrap();
    assert_eq!(t.rep(i), &[z]);
    let c = centralizer_fusion(&t, &[z]).unwrap();
    assert_eq!(c.ambient().order(), 24);
    assert_eq!(c.s().order(), 8);
}

/// Morphisms of `C_F(a)` are the maps of `F` between subgroups of `C_S(a)`
/// that extend to `⟨a⟩` fixing `a`.
#[test]
fn centralizer_morphisms_match_extension_condition() {
    for f in corpus_p2() {
        let t = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
        for (i, a) in t.reps().iter().enumerate() {
            let (c, emb) = (t.centralizer(i), t.embedding(i));
            let cs = &emb.sub;
            for q in cs.all_subgroups().unwrap().iter() {
                let pushed = emb.push(f.s().order(), q);
                let qa = pushed.join_elem(f.s(), a[0]);
                let whole = Subgroup::whole(f.s());
                let want: BTreeSet<Vec<Elem>> = f
                    .hom_set(&qa, &whole)
                    .iter()
                    .filter(|h| h.apply(a[0]) == a[0])
                    .map(|h| pushed.members().iter().map(|&x| h.apply(x)).collect())
                    .collect();
                let got: BTreeSet<Vec<Elem>> = c
                    .hom_set(q, &Subgroup::whole(cs))
                    .iter()
                    .map(|h| q.members().iter().map(|&x| emb.to_ambient(h.apply(x))).collect())
                    .collect();
                assert_eq!(got, want, "{} at {a:?}", f.name());
            }
        }
    }
}

#[test]
fn custom_representatives_are_validated() {
    let f = realized("A4", 2);
    let good = TupleClassTable::build(&f, 1, RepPolicy::Greatest).unwrap();
    let t = TupleClassTable::with_reps(&f, 1, good.reps().to_vec()).unwrap();
    assert_eq!(t.reps(), good.reps());
    // two fused involutions
    let inv: Vec<Elem> = f.s().elements().filter(|&x| x != 0).collect();
    assert!(TupleClassTable::with_reps(&f, 1, vec![vec![0], vec![inv[0]], vec![inv[1]]]).is_err());
    // a class left out
    assert!(TupleClassTable::with_reps(&f, 1, vec![vec![0]]).is_err());
    // in S4 an involution outside the centre of D8 is not fully centralized
    let f = realized("S4", 2);
    let t = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
    let mut reps = t.reps().to_vec();
    let bad = f.s().elements().find(|&x| f.s().elem_order(x) == 2 && !f.is_fully_centralized(&[x]));
    if let Some(b) = bad {
        let i = t.index_of(&[b]).unwrap();
        reps[i] = vec![b];
        assert!(TupleClassTable::with_reps(&f, 1, reps).is_err());
    }
}

#[test]
fn group_tables_classify_by_conjugacy() {
    let g = group_core::catalog::lookup("S4").unwrap();
    let t = GroupTable::new(&g, 1, Some(2));
    // 1, transpositions, double transpositions, 4-cycles
    assert_eq!(t.reps().len(), 4);
    use loop_core::ColumnClasses;
    for x in g.elements() {
        if let Some((j, y)) = t.conjugate_to_rep(&[x]) {
            assert_eq!(g.conj(y, x), t.rep(j)[0]);
        } else {
            assert_eq!(g.elem_order(x), 3);
        }
    }
}
