use group_core::catalog::lookup;
use group_core::{commuting_tuples, pair, split, Elem, Subgroup};
use loop_core::{centralizer_group, ev, wind_data, Twist};
use proptest::prelude::*;

fn is_power_of(k: u64, p: u64) -> bool {
    let mut k = k;
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

/// Every invariant of the winding data, checked pointwise.
fn check(name: &str, n: usize) {
    let s = lookup(name).unwrap();
    let tw = Twist::new(2, Twist::minimal_e(2, s.order()), n).unwrap();
    for a in commuting_tuples(&s, n, None) {
        let emb = centralizer_group(&s, &a);
        let c = &emb.sub;
        let ac = tw.over(c).unwrap();
        let a_c: Vec<Elem> = a.iter().map(|&x| emb.to_sub(x).unwrap()).collect();
        for p in c.all_subgroups().unwrap().iter() {
            let wd = wind_data(&tw, c, &ac, &a_c, p);
            for (i, &k) in wd.k.iter().enumerate() {
                assert!(k >= 1 && p.contains(c.pow(a_c[i], k as i64)));
                assert!((1..k).all(|j| !p.contains(c.pow(a_c[i], j as i64))));
                assert!(is_power_of(k, 2) && c.elem_order(a_c[i]) as u64 % k == 0);
            }
            let pre: Vec<Elem> = ac.elements().filter(|&x| p.contains(ev(&tw, c, &a_c, x))).collect();
            assert_eq!(wd.preimage.members(), &pre[..]);
            let ak = wd.powered(c);
            let nc = c.order();
            let mut images = std::collections::BTreeSet::new();
            for &x in wd.preimage.members() {
                let w = wd.wind.apply(x);
                let (t, z) = split(nc, w);
                assert_eq!(t, split(nc, x).0);
                assert!(p.contains(z));
                // ev_{a^k} ∘ wind = ev_a
                assert_eq!(ev(&tw, c, &ak, w), ev(&tw, c, &a_c, x));
                images.insert(w);
            }
            // a bijection onto A × P
            assert_eq!(images.len(), tw.torus.order() * p.order());
            assert!(wd.wind.is_multiplicative(&ac, &ac));
            let unwound = a_c.iter().all(|&x| p.contains(x));
            assert_eq!(wd.is_unwound(), unwound);
            let full: Vec<Elem> = tw.torus.elements().flat_map(|t| p.members().iter().map(move |&z| pair(nc, t, z))).collect();
            let mut full = full;
            full.sort_unstable();
            assert_eq!(unwound, wd.preimage.members() == &full[..]);
            if unwound {
                assert!(wd.preimage.members().iter().all(|&x| wd.wind.apply(x) == x));
            }
        }
    }
}

#[test]
fn wind_invariants_on_small_groups() {
    for name in ["C2", "C4", "V4", "C8", "D8", "Q8"] {
        check(name, 1);
    }
    for name in ["C4", "V4", "D8"] {
        check(name, 2);
    }
}

#[test]
fn wind_in_c4() {
    let s = lookup("C4").unwrap();
    let tw = Twist::new(2, 2, 1).unwrap();
    let ac = tw.over(&s).unwrap();
    let p = Subgroup::generated(&s, &[2]);
    let wd = wind_data(&tw, &s, &ac, &[1], &p);
    assert_eq!(wd.k, vec![2]);
    for t in 0..4u32 {
        for z in 0..4u32 {
            let x = pair(4, t, z);
            let inside = (t + z) % 2 == 0;
            assert_eq!(wd.preimage.contains(x), inside);
            if inside {
                // (t, a^{-t} z)
                assert_eq!(wd.wind.apply(x), pair(4, t, (z + 4 - t) % 4));
            }
        }
    }
}

#[test]
fn empty_tuple_winds_trivially() {
    let s = lookup("D8").unwrap();
    let tw = Twist::new(2, 3, 0).unwrap();
    let ac = tw.over(&s).unwrap();
    for p in s.all_subgroups().unwrap().iter() {
        let wd = wind_data(&tw, &s, &ac, &[], p);
        assert!(wd.k.is_empty());
        assert_eq!(wd.preimage, *p);
        assert!(p.members().iter().all(|&x| wd.wind.apply(x) == x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    /// The contract holds for any larger `e` as well.
    #[test]
    fn wind_contract_for_larger_e(e in 2u32..5, x in 0u32..8, py in 0u32..8) {
        let s = lookup("C8").unwrap();
        let tw = Twist::new(2, e.max(3), 1).unwrap();
        let ac = tw.over(&s).unwrap();
        let p = Subgroup::generated(&s, &[py]);
        let wd = wind_data(&tw, &s, &ac, &[x], &p);
        let ak = wd.powered(&s);
        for &v in wd.preimage.members() {
            prop_assert_eq!(ev(&tw, &s, &ak, wd.wind.apply(v)), ev(&tw, &s, &[x], v));
        }
    }
}
