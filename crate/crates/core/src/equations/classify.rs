use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intmat::IntMatrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use super::system::EquationSystem;
use crate::arith::{factorize, is_prime};
use crate::{Error, Result};

/// Primes `p` for which the rows are dependent over `Z_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularPrimes {
    /// Exactly the primes dividing the last invariant factor.
    Finite(Vec<u64>),
    /// The rows are dependent over the rationals, hence over every `Z_p`.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub equations: usize,
    pub rank: usize,
    pub nonsingular: bool,
    pub singular_primes: SingularPrimes,
    pub unimodular: bool,
    pub invariant_factors: Vec<BigInt>,
}

impl Classification {
    /// `true` when the rows stay independent over `Z_p`.
    pub fn is_p_nonsingular(&self, p: u64) -> bool {
        match &self.singular_primes {
            SingularPrimes::All => false,
            SingularPrimes::Finite(v) => !v.contains(&p),
        }
    }

    /// The last invariant factor `d_r` (1 for an empty system).
    pub fn last_invariant_factor(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }
}

fn prime_factors(n: &BigInt) -> Vec<u64> {
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        return factorize(small).into_iter().map(|(p, _)| p).collect();
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    loop {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        if n.is_multiple_of(&bd) {
            out.push(d);
            while n.is_multiple_of(&bd) {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("remaining prime factor exceeds u64"));
    }
    out
}

pub fn classify_matrix(a: &IntMatrix) -> Classification {
    let snf: SmithDecomposition = smith_normal_form(a);
    let invariant_factors = snf.invariant_factors();
    let rank = invariant_factors.len();
    let equations = a.rows();
    let nonsingular = rank == equations;
    let singular_primes = if nonsingular {
        match invariant_factors.last() {
            Some(d) if !d.is_zero() => SingularPrimes::Finite(prime_factors(d)),
            _ => SingularPrimes::Finite(Vec::new()),
        }
    } else {
        SingularPrimes::All
    };
    let unimodular = matches!(&singular_primes, SingularPrimes::Finite(v) if v.is_empty());
    Classification {
        equations,
        rank,
        nonsingular,
        singular_primes,
        unimodular,
        invariant_factors,
    }
}

/// Non-singular, `p`-nonsingular and unimodular verdicts for a system.
pub fn classify(system: &EquationSystem) -> Classification {
    classify_matrix(&system.exponent_matrix())
}

/// Direct check: the exponent rows are independent over `Z_p`.
pub fn is_p_nonsingular(system: &EquationSystem, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(system.exponent_matrix().rank_mod_p(p)? == system.num_equations())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn system(vars: &[&str], eqs: &[&str]) -> EquationSystem {
        let mut s = EquationSystem::new(
            vars.iter().map(|v| v.to_string()).collect(),
            vec!["g1".into(), "g2".into(), "g3".into()],
        )
        .unwrap();
        for (i, e) in eqs.iter().enumerate() {
            s.push_equation(e, i + 1).unwrap();
        }
        s
    }

    #[test]
    fn worked_system() {
        let s = system(&["x", "y", "z"], &["[x,y] x^2 g1 y^-3", "[y,z] z", "x g2 y g3 z"]);
        assert_eq!(
            s.exponent_matrix(),
            IntMatrix::from_rows(&[vec![2, -3, 0], vec![0, 0, 1], vec![1, 1, 1]])
        );
        let c = classify(&s);
        assert!(c.nonsingular && !c.unimodular);
        assert_eq!(c.singular_primes, SingularPrimes::Finite(vec![5]));
        for p in [2, 3, 7, 11, 13] {
            assert!(c.is_p_nonsingular(p));
            assert!(is_p_nonsingular(&s, p).unwrap());
        }
        assert!(!c.is_p_nonsingular(5));
        assert!(!is_p_nonsingular(&s, 5).unwrap());
    }

    #[test]
    fn empty_and_single() {
        let c = classify(&system(&["x"], &[]));
        assert!(c.unimodular && c.nonsingular);
        let c = classify(&system(&["x"], &["x^2"]));
        assert!(c.nonsingular && !c.unimodular);
        assert_eq!(c.singular_primes, SingularPrimes::Finite(vec![2]));
        let c = classify(&system(&["x", "y"], &["x y x^-1 y^-1"]));
        assert_eq!(c.singular_primes, SingularPrimes::All);
        assert!(!c.nonsingular);
    }
}
