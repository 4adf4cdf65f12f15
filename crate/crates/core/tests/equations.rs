use std::sync::Arc;

use groupeq_core::arith::is_prime;
use groupeq_core::equations::{
    classify_matrix, evaluate_word, parse_word, smith_normal_form, solve_abelian_p_system, EquationSystem, IntMatrix,
    SingularPrimes, Word,
};
use groupeq_core::group::{cyclic, direct_product};
use groupeq_core::Caps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors.
fn minor_gcd(a: &[Vec<i64>], k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(a.len(), k) {
        for cols in subsets(a[0].len(), k) {
            let m: Vec<Vec<i128>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect())
                .collect();
            g = g.gcd(&BigInt::from(det_i128(&m)));
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_invariants(rows in matrix(6)) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
    }

    #[test]
    fn smith_factors_match_minor_gcds(rows in matrix(4)) {
        let s = smith_normal_form(&IntMatrix::from_rows(&rows));
        let diag = s.diagonal();
        let mut prod = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            prod *= d;
            prop_assert_eq!(&prod, &minor_gcd(&rows, k + 1));
        }
    }

    #[test]
    fn unimodular_iff_nonsingular_mod_every_prime(rows in matrix(6)) {
        let a = IntMatrix::from_rows(&rows);
        let c = classify_matrix(&a);
        let m = a.rows();
        let mut primes: Vec<u64> = (2..=100).filter(|&p| is_prime(p)).collect();
        if let SingularPrimes::Finite(v) = &c.singular_primes {
            primes.extend(v);
        }
        let all_full = primes.iter().all(|&p| a.rank_mod_p(p).unwrap() == m);
        prop_assert_eq!(c.unimodular, all_full);
        prop_assert_eq!(c.unimodular, c.invariant_factors.len() == m && c.invariant_factors.iter().all(|d| d.is_one()));
        for &p in &primes {
            prop_assert_eq!(c.is_p_nonsingular(p), a.rank_mod_p(p).unwrap() == m);
        }
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];
const COEFFS: [&str; 2] = ["g", "h"];

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn word_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        proptest::sample::select(VARS.to_vec()).prop_map(str::to_string),
        proptest::sample::select(COEFFS.to_vec()).prop_map(str::to_string),
        Just("1".to_string()),
    ];
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 1..4).prop_map(|v| v.join(" ")),
            (inner.clone(), -3i64..=3).prop_map(|(w, k)| format!("({w})^{k}")),
            (inner.clone(), inner.clone()).prop_map(|(w, u)| format!("({w})^({u})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("[{a},{b}]")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parse_render_parse(text in word_text()) {
        let (v, c) = (names(&VARS), names(&COEFFS));
        let w = parse_word(&text, 1, &v, &c).unwrap();
        let again = parse_word(&w.render(&v, &c), 1, &v, &c).unwrap();
        prop_assert_eq!(again, w);
    }

    #[test]
    fn exponent_sums_survive_conjugating_a_subword(
        text in word_text(),
        conj in word_text(),
        cut in (0usize..64, 0usize..64),
    ) {
        let (v, c) = (names(&VARS), names(&COEFFS));
        let w = parse_word(&text, 1, &v, &c).unwrap();
        let u = parse_word(&conj, 1, &v, &c).unwrap();
        let n = w.letters().len();
        let (mut i, mut j) = (cut.0 % (n + 1), cut.1 % (n + 1));
        if i > j {
            std::mem::swap(&mut i, &mut j);
        }
        let middle = Word(w.letters()[i..j].to_vec()).conjugate(&u);
        let changed = Word(w.letters()[..i].to_vec()).concat(&middle).concat(&Word(w.letters()[j..].to_vec()));
        let mut s1 = EquationSystem::new(v.clone(), c.clone()).unwrap();
        let mut s2 = EquationSystem::new(v, c).unwrap();
        s1.push_word(w).unwrap();
        s2.push_word(changed).unwrap();
        prop_assert_eq!(s1.exponent_matrix(), s2.exponent_matrix());
    }
}

fn p_group(p: usize, exps: &[u32]) -> groupeq_core::FiniteGroup {
    let caps = Caps::default();
    exps.iter().fold(cyclic(1).unwrap(), |acc, &e| {
        direct_product(&acc, &cyclic(p.pow(e)).unwrap(), &caps).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn abelian_p_solutions_verify(
        p in proptest::sample::select(vec![2u64, 3, 5]),
        exps in proptest::collection::vec(1u32..=2, 1..=2),
        rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 2), 1..=2),
        coeff_seed in any::<u64>(),
    ) {
        let g = Arc::new(p_group(p as usize, &exps));
        prop_assume!(g.order() <= 81);
        let a = IntMatrix::from_rows(&rows);
        prop_assume!(a.rank_mod_p(p).unwrap() == rows.len());
        let mut s = EquationSystem::new(names(&["x", "y"]), names(&["g", "h"])).unwrap();
        for r in &rows {
            let text = format!("x^{} g y^{} h^-1", r[0], r[1]);
            s.push_equation(&text, 1).unwrap();
        }
        let n = g.order() as u64;
        s.bind(g.clone(), vec![(coeff_seed % n) as usize, ((coeff_seed / n) % n) as usize]).unwrap();
        let sol = solve_abelian_p_system(&s, p, &Caps::default()).unwrap();
        // p-nonsingular: no extension needed
        prop_assert!(sol.raised_by.iter().all(|&e| e == 0));
        let b = s.binding().unwrap();
        let coeffs: Vec<usize> = b.values.iter().map(|&v| sol.embedding.apply(v)).collect();
        for w in s.words() {
            prop_assert_eq!(evaluate_word(&sol.extended_group, w, &coeffs, &sol.assignment), 0);
        }
        prop_assert!(sol.embedding.is_homomorphism(&g, &sol.extended_group));
        prop_assert!(sol.embedding.is_injective());
    }
}

#[test]
fn singular_prime_raises_the_group() {
    // x^5 = g over C5 needs C25
    let mut s = EquationSystem::new(names(&["x"]), names(&["g"])).unwrap();
    s.push_equation("x^5 g^-1", 1).unwrap();
    s.bind(Arc::new(cyclic(5).unwrap()), vec![1]).unwrap();
    let sol = solve_abelian_p_system(&s, 5, &Caps::default()).unwrap();
    assert_eq!(sol.extended_group.order(), 25);
    let g = sol.embedding.apply(1);
    assert_eq!(sol.extended_group.pow(sol.assignment[0], 5), g);
}
