use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::brute::brute_force_solve;
use crate::arith::prime_power;
use crate::equations::{EquationSystem, Letter, Word};
use crate::group::FiniteGroup;
use crate::{Caps, Error, Result};

/// A one-variable equation `c_1 x^{e_1} … c_k x^{e_k} c_{k+1} x^f = 1` with
/// random coefficients and `e_1 + … + e_k + f = ±1`.
pub fn random_unimodular_equation<R: Rng + ?Sized>(g: &Arc<FiniteGroup>, rng: &mut R) -> Result<EquationSystem> {
    let k = rng.gen_range(1..=4usize);
    let coeffs: Vec<String> = (1..=k + 1).map(|i| format!("g{i}")).collect();
    let mut s = EquationSystem::new(alloc::vec![String::from("x")], coeffs)?;
    let mut letters = Vec::new();
    let mut sum = 0i64;
    let push_power = |letters: &mut Vec<Letter>, e: i64| {
        let sign = if e < 0 { -1 } else { 1 };
        letters.extend(core::iter::repeat_n(Letter::Var(0, sign), e.unsigned_abs() as usize));
    };
    for i in 0..k {
        letters.push(Letter::Coeff(i, 1));
        let e = rng.gen_range(-2..=2i64);
        push_power(&mut letters, e);
        sum += e;
    }
    letters.push(Letter::Coeff(k, 1));
    let target = if rng.gen_bool(0.5) { 1 } else { -1 };
    push_power(&mut letters, target - sum);
    s.push_word(Word(letters))?;
    let values = (0..=k).map(|_| rng.gen_range(0..g.order())).collect();
    s.bind(g.clone(), values)?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkReport {
    pub p: u64,
    pub trials: usize,
    pub solved: usize,
    /// Rendered equations without a solution in the group.
    pub unsolved: Vec<String>,
}

/// Solves `trials` random unimodular one-variable equations inside a finite
/// `p`-group by brute force.
pub fn lemma_pk_check<R: Rng + ?Sized>(
    g: &Arc<FiniteGroup>,
    trials: usize,
    rng: &mut R,
    caps: &Caps,
) -> Result<PkReport> {
    let (p, _) =
        prime_power(g.order() as u64).ok_or_else(|| Error::pre(format!("order {} is not a prime power", g.order())))?;
    let mut solved = 0;
    let mut unsolved = Vec::new();
    for _ in 0..trials {
        let s = random_unimodular_equation(g, rng)?;
        match brute_force_solve(&s, caps)?.solution {
            Some(a) if s.is_solution(&a)? => solved += 1,
            _ => unsolved.push(s.render_equation(0)),
        }
    }
    Ok(PkReport {
        p,
        trials,
        solved,
        unsolved,
    })
}
