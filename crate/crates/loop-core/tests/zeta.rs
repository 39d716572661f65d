mod common;

use common::*;
use fusion_core::is_stable;
use group_core::Elem;
use loop_core::{centralizer_group, extensions, zeta, zeta_to_rep, zeta_with, RepPolicy, TupleClassTable};

#[test]
fn zeta_to_itself_is_the_idempotent() {
    for f in corpus_p2() {
        for n in 1..=2 {
            let t = TupleClassTable::build(&f, n, RepPolicy::Least).unwrap();
            for (i, a) in t.reps().iter().enumerate() {
                let z = zeta(&f, a, a, t.centralizer(i), t.embedding(i)).unwrap();
                assert_eq!(z.biset, *t.centralizer(i).omega().unwrap());
            }
        }
    }
}

/// Every extension gives the same `ζ`, and `ζ` is stable on both sides.
#[test]
fn zeta_is_independent_of_the_extension() {
    for f in corpus_p2() {
        let t = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
        for a in f.s().elements() {
            let (j, z) = zeta_to_rep(&t, &[a]).unwrap();
            let src = centralizer_group(f.s(), &[a]);
            let exts = extensions(&f, &[a], t.rep(j), &src, t.embedding(j), usize::MAX);
            assert!(!exts.is_empty());
            for e in &exts {
                assert!(e.is_injective());
                assert_eq!(e.apply(src.to_sub(a).unwrap()), t.embedding(j).to_sub(t.rep(j)[0]).unwrap());
                let other = zeta_with(&[a], t.rep(j), &src, t.centralizer(j), e).unwrap();
                assert_eq!(other.biset, z.biset);
            }
            // left stability for C_F(a) needs a fully centralized a
            if f.is_fully_centralized(&[a]) {
                let (ca, _) = f.centralizer(&[a]).unwrap();
                assert!(is_stable(&z.biset.with_groups(ca.s(), z.biset.right()), &ca, t.centralizer(j)).unwrap());
            }
        }
    }
}

#[test]
fn zeta_composes() {
    for f in corpus_p2().into_iter().chain(corpus_p3()) {
        let s = f.s();
        for a in s.elements() {
            let class = f.tuple_class(&[a]);
            let full: Vec<&Vec<Elem>> = class.iter().filter(|b| f.is_fully_centralized(b)).collect();
            for b in &full {
                let (cb, eb) = f.centralizer(b).unwrap();
                let zab = zeta(&f, &[a], b, &cb, &eb).unwrap();
                for c in &full {
                    let (cc, ec) = f.centralizer(c).unwrap();
                    let zbc = zeta(&f, b, c, &cc, &ec).unwrap();
                    let zac = zeta(&f, &[a], c, &cc, &ec).unwrap();
                    let lhs = zab.biset.with_groups(zab.biset.left(), zbc.biset.left()).odot(&zbc.biset);
                    assert_eq!(lhs, zac.biset, "{}: {a} -> {b:?} -> {c:?}", f.name());
                }
            }
        }
    }
}

/// In `A4` the fused involutions are related by an element of order 3.
#[test]
fn zeta_between_fused_involutions_of_a4() {
    let f = realized("A4", 2);
    let t = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
    let x = t.rep(1)[0];
    let y = f.s().elements().find(|&y| y != 0 && y != x).unwrap();
    let z = zeta(&f, &[y], &[x], t.centralizer(1), t.embedding(1)).unwrap();
    let src = centralizer_group(f.s(), &[y]);
    assert_eq!(z.extension.apply(src.to_sub(y).unwrap()), t.embedding(1).to_sub(x).unwrap());
    // not the identity of V4, and a single orbit since C_F(x) is trivial
    assert_eq!(z.biset.len(), 1);
    assert_ne!(z.biset, *t.centralizer(1).omega().unwrap());
}

#[test]
fn non_conjugate_tuples_are_rejected() {
    let f = realized("A4", 2);
    let t = TupleClassTable::build(&f, 1, RepPolicy::Least).unwrap();
    assert!(zeta(&f, &[0], t.rep(1), t.centralizer(1), t.embedding(1)).is_err());
}
