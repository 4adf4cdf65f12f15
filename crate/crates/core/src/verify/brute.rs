use alloc::vec::Vec;

use crate::equations::{evaluate_word, EquationSystem};
use crate::group::Elem;
use crate::{Caps, Error, Result};

/// Outcome of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForce {
    /// Least solution in the lexicographic order of assignments (first
    /// variable most significant), or `None` after trying every candidate.
    pub solution: Option<Vec<Elem>>,
    pub candidates: u128,
}

/// Size of the assignment space, checked against the work cap.
pub fn search_space(system: &EquationSystem, caps: &Caps) -> Result<u128> {
    let b = system
        .binding()
        .ok_or_else(|| Error::pre("the system is not bound to a group"))?;
    let total = (b.group.order() as u128)
        .checked_pow(system.num_variables() as u32)
        .unwrap_or(u128::MAX);
    if total > caps.brute_force_work {
        return Err(Error::cap("brute-force search space", total, caps.brute_force_work));
    }
    Ok(total)
}

fn assignment(code: u128, n: usize, vars: usize) -> Vec<Elem> {
    let mut a = alloc::vec![0; vars];
    let mut c = code;
    for slot in a.iter_mut().rev() {
        *slot = (c % n as u128) as usize;
        c /= n as u128;
    }
    a
}

fn satisfies(system: &EquationSystem, a: &[Elem]) -> bool {
    let b = system.binding().expect("checked by search_space");
    system
        .words()
        .iter()
        .all(|w| evaluate_word(&b.group, w, &b.values, a) == 0)
}

/// Least solution with code in `range`, for splitting the search.
pub fn brute_force_solve_range(system: &EquationSystem, range: core::ops::Range<u128>) -> Option<Vec<Elem>> {
    let n = system.binding().expect("bound system").group.order();
    let vars = system.num_variables();
    range
        .map(|code| assignment(code, n, vars))
        .find(|a| satisfies(system, a))
}

pub fn brute_force_solve(system: &EquationSystem, caps: &Caps) -> Result<BruteForce> {
    let total = search_space(system, caps)?;
    let solution = brute_force_solve_range(system, 0..total);
    Ok(BruteForce {
        solution,
        candidates: total,
    })
}

/// Searches from the other end and returns the greatest solution.
pub fn brute_force_solve_reversed(system: &EquationSystem, caps: &Caps) -> Result<BruteForce> {
    let total = search_space(system, caps)?;
    let n = system.binding().expect("checked").group.order();
    let vars = system.num_variables();
    let solution = (0..total)
        .rev()
        .map(|code| assignment(code, n, vars))
        .find(|a| satisfies(system, a));
    Ok(BruteForce {
        solution,
        candidates: total,
    })
}

/// Every solution, in lexicographic order.
pub fn all_solutions(system: &EquationSystem, caps: &Caps) -> Result<Vec<Vec<Elem>>> {
    let total = search_space(system, caps)?;
    let n = system.binding().expect("checked").group.order();
    let vars = system.num_variables();
    Ok((0..total)
        .map(|code| assignment(code, n, vars))
        .filter(|a| satisfies(system, a))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use alloc::string::ToString;
    use alloc::sync::Arc;

    fn bound(n: usize, eq: &str, g: Elem) -> EquationSystem {
        let mut s = EquationSystem::new(alloc::vec!["x".to_string()], alloc::vec!["g".to_string()]).unwrap();
        s.push_equation(eq, 1).unwrap();
        s.bind(Arc::new(cyclic(n).unwrap()), alloc::vec![g]).unwrap();
        s
    }

    #[test]
    fn inverse_of_coefficient() {
        let s = bound(5, "x g", 2);
        assert_eq!(
            brute_force_solve(&s, &Caps::default()).unwrap().solution,
            Some(alloc::vec![3])
        );
    }

    #[test]
    fn square_root_in_c3() {
        // x^2 = g means x^2 g^-1 = 1
        let s = bound(3, "x^2 g^-1", 1);
        assert_eq!(
            brute_force_solve(&s, &Caps::default()).unwrap().solution,
            Some(alloc::vec![2])
        );
    }

    #[test]
    fn exhaustive_failure_and_reverse() {
        let s = bound(4, "x^2 g", 1);
        let r = brute_force_solve(&s, &Caps::default()).unwrap();
        assert_eq!(r.solution, None);
        assert_eq!(r.candidates, 4);
        assert_eq!(brute_force_solve_reversed(&s, &Caps::default()).unwrap().solution, None);
        let t = bound(4, "x^2 g", 2);
        assert_eq!(all_solutions(&t, &Caps::default()).unwrap(), [[1], [3]]);
        assert_eq!(
            brute_force_solve_reversed(&t, &Caps::default()).unwrap().solution,
            Some(alloc::vec![3])
        );
    }

    #[test]
    fn work_cap() {
        let s = bound(5, "x g", 2);
        let caps = Caps {
            brute_force_work: 4,
            ..Caps::default()
        };
        assert!(matches!(brute_force_solve(&s, &caps), Err(Error::CapExceeded { .. })));
    }
}
