use groupeq_core::equations::{is_p_nonsingular, EquationSystem};
use groupeq_core::group::{cyclic, direct_product, from_generators};
use groupeq_core::perm::Perm;
use groupeq_core::subgroup::normal_subgroups;
use groupeq_core::verify::{random_wreath_system, transform_round_trip};
use groupeq_core::wreath::{
    extract_rows, kaloujnine_krasner, lemma2_transform, normalize_top_component, reconstruct_solution, wreath_product,
    WreathGroup,
};
use groupeq_core::{Caps, Error, FiniteGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(n: usize) -> FiniteGroup {
    cyclic(n).unwrap()
}

fn s3() -> FiniteGroup {
    let gens = [
        Perm::parse_cycles("(1 2)").unwrap(),
        Perm::parse_cycles("(1 2 3)").unwrap(),
    ];
    from_generators("S3", &gens, &Caps::default()).unwrap()
}

fn products() -> Vec<WreathGroup> {
    let caps = Caps::default();
    let v4 = direct_product(&c(2), &c(2), &caps).unwrap();
    let c6 = direct_product(&c(2), &c(3), &caps).unwrap();
    vec![
        wreath_product(&c(3), &c(2), &caps).unwrap(),
        wreath_product(&s3(), &c(2), &caps).unwrap(),
        wreath_product(&c(2), &c(4), &caps).unwrap(),
        wreath_product(&c(2), &v4, &caps).unwrap(),
        wreath_product(&c(2), &c6, &caps).unwrap(),
    ]
}

#[test]
fn orders_and_axioms() {
    let orders: Vec<usize> = products().iter().map(|w| w.group().order()).collect();
    assert_eq!(orders, vec![18, 72, 64, 64, 384]);
    for w in products().iter().take(4) {
        w.group().check_axioms().unwrap();
    }
}

#[test]
fn coordinate_law() {
    for w in products() {
        let (g, b) = (w.group(), w.top());
        let h = w.base();
        for x in g.elements().step_by(7) {
            let s = w.top_component(x);
            for y in g.elements().step_by(5) {
                let xy = g.mul(x, y);
                assert_eq!(w.top_component(xy), b.mul(s, w.top_component(y)));
                for bb in b.elements() {
                    let expect = h.mul(w.coordinate(x, bb), w.coordinate(y, b.mul(bb, s)));
                    assert_eq!(w.coordinate(xy, bb), expect, "{}", g.name());
                }
            }
        }
    }
}

#[test]
fn top_conjugation_shifts_coordinates() {
    for w in products() {
        let (g, b) = (w.group(), w.top());
        for d in b.elements() {
            let dt = w.top_element(d);
            for x in g.elements().filter(|&x| w.is_in_base(x)).step_by(3) {
                let y = g.conj(x, dt);
                assert!(w.is_in_base(y));
                for bb in b.elements() {
                    assert_eq!(w.coordinate(y, bb), w.coordinate(x, b.mul(bb, b.inv(d))));
                }
            }
        }
    }
}

#[test]
fn encode_decode_and_delta() {
    for w in products() {
        for x in w.group().elements() {
            let (f, s) = w.decode(x);
            assert_eq!(w.encode(&f, s), x);
        }
        let (h, b) = (w.base(), w.top());
        for bb in b.elements() {
            for hh in h.elements() {
                let d = w.delta(bb, hh);
                assert!(w.is_in_base(d));
                for cc in b.elements() {
                    assert_eq!(w.coordinate(d, cc), if cc == bb { hh } else { 0 });
                }
            }
        }
    }
}

#[test]
fn embedding_into_wreath_products() {
    let caps = Caps::default();
    let zoo = vec![c(6), s3(), c(2), direct_product(&c(2), &c(4), &caps).unwrap()];
    let mut embedded = 0;
    for g in zoo {
        for n in normal_subgroups(&g, &caps).unwrap() {
            match kaloujnine_krasner(&g, &n, &caps) {
                Ok((w, hom)) => {
                    assert!(hom.is_homomorphism(&g, w.group()));
                    assert!(hom.is_injective());
                    assert_eq!(w.base().order(), n.order());
                    assert_eq!(w.top().order(), g.order() / n.order());
                    // the normal subgroup lands in the base
                    for &x in n.elements() {
                        assert!(w.is_in_base(hom.apply(x)));
                    }
                    embedded += 1;
                }
                Err(Error::CapExceeded { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(embedded >= 10);
}

#[test]
fn bound_example_transforms_and_reconstructs() {
    let caps = Caps::default();
    let w = wreath_product(&c(2), &c(2), &caps).unwrap();
    let mut s = EquationSystem::new(vec!["x".into(), "y".into()], vec!["a".into(), "b".into()]).unwrap();
    s.push_equation("x a y^(b) x", 1).unwrap();
    s.push_equation("y^2 x b", 2).unwrap();
    s.bind_by_name(
        w.group().clone(),
        &[("a".into(), "[g,1;g]".into()), ("b".into(), "[1,g;1]".into())],
    )
    .unwrap();
    assert!(is_p_nonsingular(&s, 2).unwrap());
    let ws = normalize_top_component(&w, &s, 2, &caps).unwrap();
    let ts = lemma2_transform(&ws).unwrap();
    let rows = extract_rows(&ts, 2).unwrap();
    assert!(rows.relation_holds && rows.augmentation_matches);
    let sols = groupeq_core::verify::all_solutions(&ts.system, &caps).unwrap();
    for pointwise in &sols {
        let xs = reconstruct_solution(&ts, pointwise).unwrap();
        assert!(s.is_solution(&xs).unwrap());
    }
    let r = transform_round_trip(&w, &s, 2, &caps).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn generated_suite_round_trips() {
    let caps = Caps::default();
    let c2 = c(2);
    let cases = [
        (wreath_product(&c2, &c2, &caps).unwrap(), 2u64, 2usize, 2usize, 60usize),
        (wreath_product(&c(3), &c2, &caps).unwrap(), 2, 1, 1, 20),
        (wreath_product(&c2, &c(3), &caps).unwrap(), 3, 1, 1, 20),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (w, p, vars, eqs, want) in cases {
        let mut done = 0;
        let mut tries = 0;
        while done < want {
            tries += 1;
            assert!(tries < 100 * want, "generator rarely produced {p}-nonsingular systems");
            let s = random_wreath_system(&w, vars, eqs, &mut rng).unwrap();
            if !is_p_nonsingular(&s, p).unwrap() {
                continue;
            }
            let r = transform_round_trip(&w, &s, p, &caps).unwrap();
            assert!(r.passed(), "{} over {}: {r:?}", s.render_equation(0), w.group().name());
            done += 1;
        }
    }
}
