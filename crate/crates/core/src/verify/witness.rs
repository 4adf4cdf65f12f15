use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arith::{factorize, prime_divisors, prime_power};
use crate::group::{affine_group, FiniteGroup};
use crate::iso::isomorphism_unchecked;
use crate::subgroup::{commutator_subgroup, derived_length, normal_subgroups, quotient, Subgroup};
use crate::{Caps, Error, Result};

/// The orders covered by the case-by-case analysis of metabelian groups.
pub const LISTED_ORDERS: [usize; 8] = [12, 18, 20, 24, 28, 30, 36, 40];

/// An abelian normal subgroup `A` with `G/A` an abelian `p`-group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub subgroup: Subgroup,
    pub prime: u64,
}

/// Re-checks a witness from scratch.
pub fn verify_witness(g: &FiniteGroup, w: &Witness) -> bool {
    let a = &w.subgroup;
    if !a.is_normal(g) || !a.is_abelian(g) {
        return false;
    }
    let Ok((q, _)) = quotient(g, a) else {
        return false;
    };
    let k = q.order() as u64;
    q.is_abelian() && (k == 1 || prime_power(k).is_some_and(|(p, _)| p == w.prime))
}

/// Exhaustive search over normal subgroups, largest `A` first, then smallest `p`.
/// The trivial quotient counts as a `p`-group for the least prime dividing `|G|`.
pub fn abelian_by_abelian_p_witness(g: &FiniteGroup, caps: &Caps) -> Result<Option<Witness>> {
    let mut normals = normal_subgroups(g, caps)?;
    normals.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.elements().cmp(b.elements())));
    let derived = commutator_subgroup(g);
    for a in normals {
        if !a.is_abelian(g) || !derived.is_subgroup_of(&a) {
            continue;
        }
        let k = (g.order() / a.order()) as u64;
        let prime = if k == 1 {
            prime_divisors(g.order() as u64).first().copied().unwrap_or(2)
        } else if let Some((p, _)) = prime_power(k) {
            p
        } else {
            continue;
        };
        return Ok(Some(Witness { subgroup: a, prime }));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub group: String,
    pub order: usize,
    pub is_abelian: bool,
    pub is_metabelian: bool,
    pub derived_length: Option<usize>,
    pub witness: Option<Witness>,
    pub witness_verified: bool,
    /// No witness, and isomorphic to the affine group of `Z_7` (order 42).
    pub known_exception: bool,
    /// Which case applied.
    pub note: String,
}

pub fn classify_group(g: &FiniteGroup, caps: &Caps) -> Result<ClassificationReport> {
    let order = g.order();
    let dl = derived_length(g);
    let is_metabelian = dl.is_some_and(|d| d <= 2);
    let factors = factorize(order as u64);
    let (witness, note) = if !is_metabelian {
        (None, "not metabelian".to_string())
    } else {
        let w = abelian_by_abelian_p_witness(g, caps)?;
        let case = if g.is_abelian() {
            "abelian"
        } else if factors.len() == 1 {
            "p-group"
        } else if factors.len() == 2 && factors.iter().all(|&(_, e)| e == 1) {
            "order pq"
        } else {
            "normal-subgroup search"
        };
        let note = if w.is_some() {
            case.to_string()
        } else {
            "no witness (exhaustive)".to_string()
        };
        (w, note)
    };
    let witness_verified = witness.as_ref().is_some_and(|w| verify_witness(g, w));
    let known_exception =
        is_metabelian && witness.is_none() && order == 42 && isomorphism_unchecked(g, &affine_group(7)?).is_some();
    Ok(ClassificationReport {
        group: g.name().to_string(),
        order,
        is_abelian: g.is_abelian(),
        is_metabelian,
        derived_length: dl,
        witness,
        witness_verified,
        known_exception,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqReport {
    pub p: u64,
    pub q: u64,
    pub sylow_count: usize,
    pub witness: Witness,
    pub witness_verified: bool,
}

/// For `|G| = pq`, `p < q`: the Sylow `q`-subgroup is unique, and gives a
/// witness with prime `p`.
pub fn lemma_pq_check(g: &FiniteGroup) -> Result<PqReport> {
    let f = factorize(g.order() as u64);
    if f.len() != 2 || f.iter().any(|&(_, e)| e != 1) {
        return Err(Error::pre(format!(
            "order {} is not a product of two distinct primes",
            g.order()
        )));
    }
    let (p, q) = (f[0].0, f[1].0);
    let of_order_q: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == q as usize).collect();
    let sylow_count = of_order_q.len() / (q as usize - 1);
    let sylow = Subgroup::generated(g, &of_order_q[..1]);
    let witness = Witness {
        subgroup: sylow,
        prime: p,
    };
    let witness_verified = verify_witness(g, &witness);
    Ok(PqReport {
        p,
        q,
        sylow_count,
        witness,
        witness_verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSummary {
    pub order: usize,
    pub groups: usize,
    pub metabelian: usize,
    pub witnessed: usize,
    pub without_witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditSummary {
    pub orders: Vec<OrderSummary>,
    /// Groups whose outcome contradicts the case analysis.
    pub deviations: Vec<String>,
    /// Every metabelian group of a listed order has a witness.
    pub reproduced: bool,
}

/// Expected: every metabelian group of order below 42 has a verified witness;
/// at order 42 only the affine group of `Z_7` lacks one.
pub fn summarize(reports: &[ClassificationReport]) -> AuditSummary {
    let mut by_order: BTreeMap<usize, OrderSummary> = BTreeMap::new();
    let mut deviations = Vec::new();
    let mut reproduced = true;
    for r in reports {
        let s = by_order.entry(r.order).or_insert_with(|| OrderSummary {
            order: r.order,
            groups: 0,
            metabelian: 0,
            witnessed: 0,
            without_witness: Vec::new(),
        });
        s.groups += 1;
        if r.witness.is_some() && !r.witness_verified {
            deviations.push(format!("{}: witness failed re-verification", r.group));
        }
        if !r.is_metabelian {
            continue;
        }
        s.metabelian += 1;
        if r.witness.is_some() {
            s.witnessed += 1;
            continue;
        }
        s.without_witness.push(r.group.clone());
        if LISTED_ORDERS.contains(&r.order) {
            reproduced = false;
        }
        if r.order < 42 || (r.order == 42 && !r.known_exception) {
            deviations.push(format!("{}: metabelian of order {} without witness", r.group, r.order));
        }
    }
    AuditSummary {
        orders: by_order.into_values().collect(),
        deviations,
        reproduced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, from_generators};
    use crate::perm::Perm;

    fn perms(g: &[&str]) -> FiniteGroup {
        let gens: Vec<Perm> = g.iter().map(|s| Perm::parse_cycles(s).unwrap()).collect();
        from_generators("G", &gens, &Caps::default()).unwrap()
    }

    #[test]
    fn a4_witness() {
        let a4 = perms(&["(1 2 3)", "(1 2)(3 4)"]);
        let w = abelian_by_abelian_p_witness(&a4, &Caps::default()).unwrap().unwrap();
        assert_eq!((w.subgroup.order(), w.prime), (4, 3));
        assert!(verify_witness(&a4, &w));
    }

    #[test]
    fn affine7_has_none() {
        let g = affine_group(7).unwrap();
        assert_eq!(abelian_by_abelian_p_witness(&g, &Caps::default()).unwrap(), None);
        let r = classify_group(&g, &Caps::default()).unwrap();
        assert!(r.is_metabelian && r.known_exception);
    }

    #[test]
    fn abelian_groups_are_their_own_witness() {
        let g = cyclic(12).unwrap();
        let w = abelian_by_abelian_p_witness(&g, &Caps::default()).unwrap().unwrap();
        assert_eq!((w.subgroup.order(), w.prime), (12, 2));
        let t = cyclic(1).unwrap();
        assert!(abelian_by_abelian_p_witness(&t, &Caps::default()).unwrap().is_some());
    }

    #[test]
    fn pq() {
        let s3 = perms(&["(1 2)", "(1 2 3)"]);
        let r = lemma_pq_check(&s3).unwrap();
        assert_eq!((r.p, r.q, r.sylow_count, r.witness.subgroup.order()), (2, 3, 1, 3));
        assert!(r.witness_verified);
        let c15 = cyclic(15).unwrap();
        let r = lemma_pq_check(&c15).unwrap();
        assert_eq!((r.p, r.witness.subgroup.order()), (3, 5));
        assert!(lemma_pq_check(&cyclic(8).unwrap()).is_err());
    }

    #[test]
    fn s4_is_not_metabelian() {
        let s4 = perms(&["(1 2)", "(1 2 3 4)"]);
        let r = classify_group(&s4, &Caps::default()).unwrap();
        assert!(!r.is_metabelian && r.witness.is_none());
        let s = summarize(&[r]);
        assert!(s.reproduced && s.deviations.is_empty());
    }

    #[test]
    fn summary_flags_missing_witness() {
        let g = affine_group(7).unwrap();
        let mut r = classify_group(&g, &Caps::default()).unwrap();
        assert!(summarize(&[r.clone()]).deviations.is_empty());
        r.order = 40;
        let s = summarize(&[r]);
        assert!(!s.reproduced);
        assert_eq!(s.deviations.len(), 1);
        let c2 = cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2, &Caps::default()).unwrap();
        assert!(summarize(&[classify_group(&v4, &Caps::default()).unwrap()]).reproduced);
    }
}
