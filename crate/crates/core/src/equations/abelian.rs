//! Finite abelian groups and solving non-singular systems in finite
//! extensions of them.
//!
//! A divisible hull is infinite; here only the finitely many extra roots a
//! given system needs are adjoined, by raising the exponent of each cyclic
//! factor `Z/q^k` to `q^{k+e}` where `e` is the `q`-adic valuation of the last
//! invariant factor of the exponent matrix.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::intmat::IntMatrix;
use super::smith::smith_normal_form;
use super::system::EquationSystem;
use super::word::Letter;
use crate::arith::{prime_divisors, prime_power, valuation};
use crate::group::{Elem, FiniteGroup, Homomorphism};
use crate::subgroup::Subgroup;
use crate::{Caps, Error, Result};

/// `⊕ Z/q_l^{k_l}`, given by `(q_l, k_l)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub factors: Vec<(u64, u32)>,
}

impl AbelianGroup {
    pub fn moduli(&self) -> Vec<u64> {
        self.factors.iter().map(|&(q, k)| q.pow(k)).collect()
    }

    pub fn order(&self) -> u128 {
        self.moduli().iter().map(|&m| m as u128).product()
    }

    /// Mixed-radix index of a coordinate vector (last factor fastest).
    pub fn index_of(&self, coords: &[u64]) -> Elem {
        self.moduli()
            .iter()
            .zip(coords)
            .fold(0, |acc, (&m, &c)| acc * m as usize + (c % m) as usize)
    }

    pub fn coords_of(&self, mut x: Elem) -> Vec<u64> {
        let moduli = self.moduli();
        let mut c = vec![0; moduli.len()];
        for (l, &m) in moduli.iter().enumerate().rev() {
            c[l] = (x % m as usize) as u64;
            x /= m as usize;
        }
        c
    }

    /// Realizes the group as a Cayley table; element names are coordinate tuples.
    pub fn realize(&self, caps: &Caps) -> Result<FiniteGroup> {
        let n = self.order();
        if n > caps.group_order as u128 {
            return Err(Error::cap("abelian group order", n, caps.group_order as u128));
        }
        let n = n as usize;
        let moduli = self.moduli();
        let coords: Vec<Vec<u64>> = (0..n).map(|x| self.coords_of(x)).collect();
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let sum: Vec<u64> = (0..moduli.len())
                    .map(|l| (coords[x][l] + coords[y][l]) % moduli[l])
                    .collect();
                table[x * n + y] = self.index_of(&sum) as u32;
            }
        }
        let names = coords
            .iter()
            .enumerate()
            .map(|(x, c)| {
                if x == 0 {
                    "1".to_string()
                } else {
                    let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                    format!("({})", parts.join(","))
                }
            })
            .collect();
        let label: Vec<String> = self.moduli().iter().map(|m| format!("C{m}")).collect();
        let label = if label.is_empty() {
            "C1".to_string()
        } else {
            label.join("x")
        };
        FiniteGroup::from_parts(label, table, names)
    }
}

/// A finite abelian group written as a direct sum of cyclic groups of prime
/// power order, with coordinates for every element.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    pub group: AbelianGroup,
    /// Generator of each cyclic factor.
    pub basis: Vec<Elem>,
    coords: Vec<Vec<u64>>,
}

impl AbelianDecomposition {
    pub fn of(g: &FiniteGroup) -> Result<Self> {
        if !g.is_abelian() {
            return Err(Error::pre(format!("{} is not abelian", g.name())));
        }
        let mut factors = Vec::new();
        let mut basis = Vec::new();
        for q in prime_divisors(g.order() as u64) {
            let is_q_power = |k: usize| k == 1 || prime_power(k as u64).is_some_and(|(r, _)| r == q);
            let sylow: Vec<Elem> = g.elements().filter(|&x| is_q_power(g.element_order(x))).collect();
            let mut span = Subgroup::trivial();
            let mut gens: Vec<Elem> = Vec::new();
            while span.order() < sylow.len() {
                // element of largest order modulo the current span
                let order_mod = |x: Elem| {
                    let mut y = x;
                    let mut t = 1;
                    while !span.contains(y) {
                        y = g.mul(y, x);
                        t += 1;
                    }
                    t
                };
                let (best, t) = sylow
                    .iter()
                    .map(|&x| (x, order_mod(x)))
                    .max_by_key(|&(x, t)| (t, core::cmp::Reverse(x)))
                    .expect("Sylow subgroup is non-empty");
                // a lift of the same order exists in the coset best·span
                let lift = span
                    .elements()
                    .iter()
                    .map(|&s| g.mul(best, s))
                    .filter(|&y| g.element_order(y) == t)
                    .min()
                    .ok_or_else(|| Error::Invalid("no complement found for a cyclic factor".into()))?;
                gens.push(lift);
                span = Subgroup::generated(g, &gens);
                factors.push((q, valuation(t as u64, q)));
                basis.push(lift);
            }
        }
        let group = AbelianGroup { factors };
        let n = g.order();
        let mut coords = vec![Vec::new(); n];
        for idx in 0..n {
            let c = group.coords_of(idx);
            let x = basis
                .iter()
                .zip(&c)
                .fold(0, |acc, (&b, &k)| g.mul(acc, g.pow(b, k as i64)));
            coords[x] = c;
        }
        debug_assert!(coords.iter().all(|c| c.len() == basis.len()));
        Ok(AbelianDecomposition { group, basis, coords })
    }

    pub fn coords(&self, x: Elem) -> &[u64] {
        &self.coords[x]
    }

    pub fn element(&self, g: &FiniteGroup, coords: &[u64]) -> Elem {
        self.basis
            .iter()
            .zip(coords)
            .fold(0, |acc, (&b, &k)| g.mul(acc, g.pow(b, k as i64)))
    }
}

/// Solution of a system over a finite abelian group `B`, found in an
/// extension `B' ⊇ B`.
#[derive(Clone, Debug)]
pub struct AbelianSolution {
    pub decomposition: AbelianDecomposition,
    pub extended: AbelianGroup,
    /// How many times each cyclic factor's exponent was raised.
    pub raised_by: Vec<u32>,
    pub extended_group: FiniteGroup,
    /// `B → B'`, multiplying coordinate `l` by `q_l^{raised_by[l]}`.
    pub embedding: Homomorphism,
    /// Value of each variable in `B'`.
    pub assignment: Vec<Elem>,
}

/// Solves `matrix · y = -rhs` coordinate-wise in an extension of `group`.
///
/// `rhs[j]` are the coordinates of the constant part of equation `j`.
/// Returns the extended group, the raise per factor and the coordinates of
/// each variable in the extended group.
pub fn solve_coordinates(
    matrix: &IntMatrix,
    rhs: &[Vec<u64>],
    group: &AbelianGroup,
) -> Result<(AbelianGroup, Vec<u32>, Vec<Vec<u64>>)> {
    let (m, n) = (matrix.rows(), matrix.cols());
    let snf = smith_normal_form(matrix);
    let diag = snf.diagonal();
    if snf.rank() < m {
        return Err(Error::pre("the system is singular over the rationals"));
    }
    let last = diag.last().cloned().unwrap_or_else(BigInt::one);
    let mut extended = Vec::new();
    let mut raised_by = Vec::new();
    let mut solution = vec![vec![0u64; group.factors.len()]; n];
    for (l, &(q, k)) in group.factors.iter().enumerate() {
        let bq = BigInt::from(q);
        let mut e = 0u32;
        let mut rest = last.clone();
        while !rest.is_zero() && rest.is_multiple_of(&bq) {
            rest /= &bq;
            e += 1;
        }
        let modulus = BigInt::from(q).pow(k + e);
        let shift = BigInt::from(q).pow(e);
        let target: Vec<BigInt> = (0..m)
            .map(|j| (-(&shift * BigInt::from(rhs[j][l]))).mod_floor(&modulus))
            .collect();
        let mut z = vec![BigInt::zero(); n];
        for i in 0..m {
            let w: BigInt = (0..m)
                .map(|j| snf.u.get(i, j) * &target[j])
                .sum::<BigInt>()
                .mod_floor(&modulus);
            let mut d = diag[i].clone();
            let mut w = w;
            while d.is_multiple_of(&bq) {
                d /= &bq;
                debug_assert!(w.is_multiple_of(&bq));
                w /= &bq;
            }
            let inv = d.extended_gcd(&modulus).x.mod_floor(&modulus);
            z[i] = (w * inv).mod_floor(&modulus);
        }
        for (i, slot) in solution.iter_mut().enumerate() {
            let y: BigInt = (0..n).map(|t| snf.v.get(i, t) * &z[t]).sum::<BigInt>();
            slot[l] = y.mod_floor(&modulus).to_u64().expect("residue fits in u64");
        }
        extended.push((q, k + e));
        raised_by.push(e);
    }
    Ok((AbelianGroup { factors: extended }, raised_by, solution))
}

/// Solves a non-singular system bound to a finite abelian group, in a finite
/// abelian extension. The result is verified by evaluation.
pub fn solve_abelian(system: &EquationSystem, caps: &Caps) -> Result<AbelianSolution> {
    let binding = system
        .binding()
        .ok_or_else(|| Error::pre("the system is not bound to a group"))?;
    let g = &binding.group;
    let dec = AbelianDecomposition::of(g)?;
    let moduli = dec.group.moduli();
    let rhs: Vec<Vec<u64>> = system
        .words()
        .iter()
        .map(|w| {
            let mut acc = vec![0u64; moduli.len()];
            for l in w.letters() {
                if let Letter::Coeff(c, s) = *l {
                    let x = dec.coords(binding.values[c]);
                    for (t, a) in acc.iter_mut().enumerate() {
                        let v = if s < 0 { moduli[t] - x[t] } else { x[t] };
                        *a = (*a + v) % moduli[t];
                    }
                }
            }
            acc
        })
        .collect();
    let (extended, raised_by, coords) = solve_coordinates(&system.exponent_matrix(), &rhs, &dec.group)?;
    let extended_group = extended.realize(caps)?;
    let embedding = Homomorphism::new(
        g.elements()
            .map(|x| {
                let c: Vec<u64> = dec
                    .coords(x)
                    .iter()
                    .zip(&dec.group.factors)
                    .zip(&raised_by)
                    .map(|((&v, &(q, _)), &e)| v * q.pow(e))
                    .collect();
                extended.index_of(&c)
            })
            .collect(),
    );
    let assignment: Vec<Elem> = coords.iter().map(|c| extended.index_of(c)).collect();
    let coeffs: Vec<Elem> = binding.values.iter().map(|&v| embedding.apply(v)).collect();
    for w in system.words() {
        if super::system::evaluate_word(&extended_group, w, &coeffs, &assignment) != 0 {
            return Err(Error::Invalid(
                "internal error: abelian solution failed verification".into(),
            ));
        }
    }
    Ok(AbelianSolution {
        decomposition: dec,
        extended,
        raised_by,
        extended_group,
        embedding,
        assignment,
    })
}

/// [`solve_abelian`] restricted to abelian `p`-groups.
pub fn solve_abelian_p_system(system: &EquationSystem, p: u64, caps: &Caps) -> Result<AbelianSolution> {
    let binding = system
        .binding()
        .ok_or_else(|| Error::pre("the system is not bound to a group"))?;
    let n = binding.group.order() as u64;
    if n != 1 && prime_power(n).is_none_or(|(q, _)| q != p) {
        return Err(Error::pre(format!("a group of order {n} is not a {p}-group")));
    }
    solve_abelian(system, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product};
    use alloc::sync::Arc;

    fn bound(g: FiniteGroup, vars: &[&str], coeffs: &[(&str, Elem)], eqs: &[&str]) -> EquationSystem {
        let mut s = EquationSystem::new(
            vars.iter().map(|v| v.to_string()).collect(),
            coeffs.iter().map(|c| c.0.to_string()).collect(),
        )
        .unwrap();
        for (i, e) in eqs.iter().enumerate() {
            s.push_equation(e, i + 1).unwrap();
        }
        s.bind(Arc::new(g), coeffs.iter().map(|c| c.1).collect()).unwrap();
        s
    }

    #[test]
    fn decomposition_of_products() {
        let c2 = cyclic(2).unwrap();
        let c4 = cyclic(4).unwrap();
        let g = direct_product(&c2, &c4, &Caps::default()).unwrap();
        let d = AbelianDecomposition::of(&g).unwrap();
        assert_eq!(d.group.factors, [(2, 2), (2, 1)]);
        for x in g.elements() {
            assert_eq!(d.element(&g, d.coords(x)), x);
        }
        let c6 = cyclic(6).unwrap();
        assert_eq!(AbelianDecomposition::of(&c6).unwrap().group.factors, [(2, 1), (3, 1)]);
    }

    #[test]
    fn no_extension_needed() {
        let s = bound(cyclic(3).unwrap(), &["x"], &[("g", 1)], &["x g"]);
        let sol = solve_abelian_p_system(&s, 3, &Caps::default()).unwrap();
        assert_eq!(sol.raised_by, [0]);
        assert_eq!(sol.extended_group.order(), 3);
        assert_eq!(sol.assignment, [2]);
    }

    #[test]
    fn cube_root_needs_one_more_power() {
        let s = bound(cyclic(9).unwrap(), &["x"], &[("g", 1)], &["x^3 g"]);
        let sol = solve_abelian_p_system(&s, 3, &Caps::default()).unwrap();
        assert_eq!(sol.extended_group.order(), 27);
        // g ↦ 3 in Z/27, and 3y ≡ -3 (mod 27)
        assert_eq!(sol.embedding.apply(1), 3);
        assert_eq!((3 * sol.assignment[0] + 3) % 27, 0);
    }

    #[test]
    fn two_by_two_system() {
        let s = bound(cyclic(2).unwrap(), &["x", "y"], &[("g", 1)], &["x y", "x y^-1 g"]);
        let sol = solve_abelian_p_system(&s, 2, &Caps::default()).unwrap();
        assert_eq!(sol.extended_group.order(), 4);
        // brute force over Z/4 x Z/4: x + y = 0, x - y + 2 = 0
        let (x, y) = (sol.assignment[0], sol.assignment[1]);
        assert_eq!((x + y) % 4, 0);
        assert_eq!((x + 4 - y + 2) % 4, 0);
    }

    #[test]
    fn rejects_wrong_groups() {
        let s = bound(cyclic(6).unwrap(), &["x"], &[("g", 1)], &["x g"]);
        assert!(solve_abelian_p_system(&s, 2, &Caps::default()).is_err());
        let singular = bound(cyclic(2).unwrap(), &["x"], &[("g", 1)], &["x x^-1 g"]);
        assert!(solve_abelian(&singular, &Caps::default()).is_err());
    }
}
