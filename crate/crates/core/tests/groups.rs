use std::sync::Arc;

use groupeq_core::arith::factorize;
use groupeq_core::enumerate::groups_of_order;
use groupeq_core::group::{affine_group, cyclic, direct_product, from_generators, semidirect_product};
use groupeq_core::iso::isomorphism;
use groupeq_core::perm::Perm;
use groupeq_core::subgroup::{commutator_subgroup, normal_subgroups, quotient, sylow_subgroup};
use groupeq_core::{Caps, FiniteGroup, Homomorphism};
use proptest::prelude::*;

fn perms(name: &str, gens: &[&str]) -> FiniteGroup {
    let gens: Vec<Perm> = gens.iter().map(|s| Perm::parse_cycles(s).unwrap()).collect();
    from_generators(name, &gens, &Caps::default()).unwrap()
}

fn zoo() -> Vec<FiniteGroup> {
    let caps = Caps::default();
    let mut v = vec![
        cyclic(1).unwrap(),
        cyclic(9).unwrap(),
        direct_product(&cyclic(2).unwrap(), &cyclic(6).unwrap(), &caps).unwrap(),
        affine_group(5).unwrap(),
        affine_group(7).unwrap(),
        perms("S4", &["(1 2)", "(1 2 3 4)"]),
        perms("A4", &["(1 2 3)", "(1 2)(3 4)"]),
        perms("Q8", &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]),
    ];
    // C7 ⋊ C3 with the generator acting by squaring
    let c7 = cyclic(7).unwrap();
    let c3 = cyclic(3).unwrap();
    let action: Vec<Vec<usize>> = (0..3u32)
        .map(|k| (0..7).map(|x| x * 2usize.pow(k) % 7).collect())
        .collect();
    v.push(semidirect_product(&c7, &c3, &action, &caps).unwrap());
    for n in [8, 12] {
        v.extend(groups_of_order(n, &caps).unwrap());
    }
    v
}

#[test]
fn axioms_hold_everywhere() {
    for g in zoo() {
        assert!(g.check_axioms().is_ok(), "{}", g.name());
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
            for y in g.elements() {
                for z in g.elements() {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
    }
}

#[test]
fn commutator_subgroup_below_abelian_quotients() {
    let caps = Caps::default();
    for g in zoo() {
        let d = commutator_subgroup(&g);
        for n in normal_subgroups(&g, &caps).unwrap() {
            let (q, _) = quotient(&g, &n).unwrap();
            if q.is_abelian() {
                assert!(d.is_subgroup_of(&n), "{}", g.name());
            }
        }
    }
}

#[test]
fn sylow_orders_are_maximal_prime_powers() {
    for g in zoo() {
        for (p, e) in factorize(g.order() as u64) {
            let s = sylow_subgroup(&g, p).unwrap();
            assert_eq!(s.order() as u64, p.pow(e), "{} p={p}", g.name());
        }
    }
}

#[test]
fn quotient_projection_is_surjective_with_kernel_n() {
    let caps = Caps::default();
    for g in zoo() {
        for n in normal_subgroups(&g, &caps).unwrap() {
            let (q, pi) = quotient(&g, &n).unwrap();
            assert!(pi.is_homomorphism(&g, &q));
            let mut image: Vec<usize> = g.elements().map(|x| pi.apply(x)).collect();
            image.sort_unstable();
            image.dedup();
            assert_eq!(image.len(), q.order());
            assert_eq!(pi.kernel(), n.elements());
        }
    }
}

#[test]
fn isomorphism_is_reflexive() {
    let caps = Caps::default();
    for g in zoo() {
        let h = isomorphism(&g, &g, &caps).unwrap().expect("reflexive");
        assert!(h.is_isomorphism(&g, &g));
    }
}

/// `g` with its non-identity elements relabelled by `perm`.
fn relabel(g: &FiniteGroup, perm: &[usize]) -> (FiniteGroup, Homomorphism) {
    let n = g.order();
    let mut map = vec![0];
    map.extend(perm.iter().map(|&i| i + 1));
    let mut inv = vec![0; n];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| map[g.mul(inv[a], inv[b])]).collect())
        .collect();
    (
        FiniteGroup::from_table("relabelled", &rows, None).unwrap(),
        Homomorphism::new(map),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isomorphism_is_symmetric(idx in 0usize..14, seed in any::<u64>()) {
        let caps = Caps::default();
        let groups = zoo();
        let g = &groups[idx % groups.len()];
        let n = g.order();
        let mut perm: Vec<usize> = (0..n.saturating_sub(1)).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let (h, map) = relabel(g, &perm);
        prop_assert!(map.is_isomorphism(g, &h));
        let gh = isomorphism(g, &h, &caps).unwrap();
        let hg = isomorphism(&h, g, &caps).unwrap();
        prop_assert!(gh.is_some() && hg.is_some());
        prop_assert!(gh.unwrap().is_isomorphism(g, &h));
        prop_assert!(hg.unwrap().is_isomorphism(&h, g));
        // and a non-isomorphic partner of the same order is rejected both ways
        let c = cyclic(n).unwrap();
        prop_assert_eq!(isomorphism(g, &c, &caps).unwrap().is_some(), isomorphism(&c, g, &caps).unwrap().is_some());
    }
}

#[test]
fn shared_groups_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>(_: &T) {}
    let g = Arc::new(cyclic(4).unwrap());
    assert_send_sync(&g);
    let h = std::thread::spawn({
        let g = g.clone();
        move || g.mul(1, 3)
    });
    assert_eq!(h.join().unwrap(), 0);
}
