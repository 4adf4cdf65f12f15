use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use super::brute::all_solutions;
use crate::algebra::certify_row_independence;
use crate::equations::{evaluate_word, EquationSystem, Letter, Word};
use crate::group::Elem;
use crate::wreath::{
    extract_rows, lemma2_transform, normalize_top_component, normalize_with_shift, reconstruct_solution, WreathGroup,
};
use crate::{Caps, Error, Result};

/// The transform checked end to end on one system over a wreath product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// `m_{j,b} = b·m_{j,1}`.
    pub relation_holds: bool,
    /// Augmentation of `m_{j,1}` equals the exponent-sum row mod `p`.
    pub augmentation_matches: bool,
    /// The rows `m_{j,1}` are certified independent.
    pub certified: bool,
    /// Brute-force solutions in the wreath product.
    pub original: Vec<Vec<Elem>>,
    /// Solutions rebuilt from coordinate solutions, over every top solution.
    pub reconstructed: Vec<Vec<Elem>>,
    /// Top assignments solving the image system.
    pub shifts: usize,
}

impl RoundTrip {
    pub fn solutions_agree(&self) -> bool {
        self.original == self.reconstructed
    }

    pub fn passed(&self) -> bool {
        self.relation_holds && self.augmentation_matches && self.certified && self.solutions_agree()
    }
}

fn top_assignments(n: usize, vars: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = n.pow(vars as u32);
    (0..total).map(move |mut code| {
        let mut a = alloc::vec![0; vars];
        for slot in a.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        a
    })
}

/// Runs the normalization, the coordinate split and the row certificate for
/// a `p`-nonsingular system bound to `w`, and compares the brute-force
/// solution set with the union of reconstructions over all top solutions.
pub fn transform_round_trip(w: &WreathGroup, system: &EquationSystem, p: u64, caps: &Caps) -> Result<RoundTrip> {
    let ws = normalize_top_component(w, system, p, caps)?;
    if ws.wreath.top().order() != w.top().order() {
        return Err(Error::pre(
            "the top group had to be extended; solution sets live in different groups",
        ));
    }
    let ts = lemma2_transform(&ws)?;
    let rows = extract_rows(&ts, p)?;
    let certified = certify_row_independence(&rows.rows)?.is_some();

    let original = all_solutions(system, caps)?;
    let binding = system.binding().ok_or_else(|| Error::pre("the system is not bound"))?;
    let top = w.top();
    let tops: Vec<Elem> = binding.values.iter().map(|&v| w.top_component(v)).collect();
    let mut reconstructed = Vec::new();
    let mut shifts = 0;
    for beta in top_assignments(top.order(), system.num_variables()) {
        if system
            .words()
            .iter()
            .any(|word| evaluate_word(top, word, &tops, &beta) != 0)
        {
            continue;
        }
        shifts += 1;
        let ts = lemma2_transform(&normalize_with_shift(w, system, &beta)?)?;
        for pointwise in all_solutions(&ts.system, caps)? {
            reconstructed.push(reconstruct_solution(&ts, &pointwise)?);
        }
    }
    reconstructed.sort();
    reconstructed.dedup();
    Ok(RoundTrip {
        relation_holds: rows.relation_holds,
        augmentation_matches: rows.augmentation_matches,
        certified,
        original,
        reconstructed,
        shifts,
    })
}

/// A random system over `w` with `vars` variables and `eqs` equations. Each
/// equation is a product of 1 to 5 factors: a fresh coefficient, or a
/// variable to the power ±1 or ±2, possibly conjugated by a fresh
/// coefficient. Coefficients are `c1, c2, …`, bound to random elements.
pub fn random_wreath_system<R: Rng + ?Sized>(
    w: &WreathGroup,
    vars: usize,
    eqs: usize,
    rng: &mut R,
) -> Result<EquationSystem> {
    let names: Vec<String> = ["x", "y", "z", "u", "v", "w"]
        .iter()
        .take(vars)
        .map(|s| String::from(*s))
        .collect();
    if names.len() < vars {
        return Err(Error::pre("at most six variables"));
    }
    let mut words = Vec::new();
    let mut ncoeffs = 0;
    for _ in 0..eqs {
        let mut letters = Vec::new();
        for _ in 0..rng.gen_range(1..=5) {
            if rng.gen_bool(0.35) {
                letters.push(Letter::Coeff(ncoeffs, 1));
                ncoeffs += 1;
                continue;
            }
            let var = rng.gen_range(0..vars);
            let e = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            let x = Word(alloc::vec![Letter::Var(var, 1)]).pow(e);
            if rng.gen_bool(0.4) {
                let c = Word(alloc::vec![Letter::Coeff(ncoeffs, 1)]);
                ncoeffs += 1;
                letters.extend(x.conjugate(&c).0);
            } else {
                letters.extend(x.0);
            }
        }
        words.push(Word(letters));
    }
    let coeffs = (1..=ncoeffs).map(|i| format!("c{i}")).collect();
    let mut s = EquationSystem::new(names, coeffs)?;
    for word in words {
        s.push_word(word)?;
    }
    let g = w.group();
    let values = (0..ncoeffs).map(|_| rng.gen_range(0..g.order())).collect();
    s.bind(g.clone(), values)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::is_p_nonsingular;
    use crate::group::cyclic;
    use crate::wreath::wreath_product;
    use rand::SeedableRng;

    #[test]
    fn seeded_systems_round_trip() {
        let c2 = cyclic(2).unwrap();
        let w = wreath_product(&c2, &c2, &Caps::default()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 20 {
            let s = random_wreath_system(&w, 2, 2, &mut rng).unwrap();
            if !is_p_nonsingular(&s, 2).unwrap() {
                continue;
            }
            let r = transform_round_trip(&w, &s, 2, &Caps::default()).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.shifts > 0);
            checked += 1;
        }
    }
}
