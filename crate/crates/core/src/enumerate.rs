//! Enumeration of all groups of a given small order, up to isomorphism.
//!
//! Every finite solvable group `G` has a normal subgroup `N` of prime index
//! `p`, and then `G = N⟨g⟩` with `g^p = z ∈ N` and conjugation by `g` an
//! automorphism `α` of `N` satisfying `α(z) = z` and `α^p = (x ↦ z x z⁻¹)`.
//! Conversely every such triple `(N, α, z)` defines a group. Running over all
//! `N` of order `n/p`, all primes `p | n`, all admissible `(α, z)` therefore
//! produces every solvable group of order `n`; groups of order below 60 are
//! all solvable.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::prime_divisors;
use crate::group::{cyclic, FiniteGroup};
use crate::iso::{automorphisms, isomorphism_unchecked, Fingerprint};
use crate::{Caps, Error, Result};

/// Smallest order with a non-solvable group.
const FIRST_NON_SOLVABLE: usize = 60;

/// All groups of order `n` up to isomorphism, sorted by fingerprint.
pub fn groups_of_order(n: usize, caps: &Caps) -> Result<Vec<FiniteGroup>> {
    if n == 0 {
        return Err(Error::pre("group order must be positive"));
    }
    if n > caps.enumeration_order {
        return Err(Error::cap(
            "enumeration order",
            n as u128,
            caps.enumeration_order as u128,
        ));
    }
    if n >= FIRST_NON_SOLVABLE {
        return Err(Error::pre(
            "enumeration by cyclic extensions is complete only below order 60",
        ));
    }
    let mut memo = BTreeMap::new();
    Ok(enumerate(n, &mut memo))
}

fn enumerate(n: usize, memo: &mut BTreeMap<usize, Vec<FiniteGroup>>) -> Vec<FiniteGroup> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let result = if n == 1 {
        vec![cyclic(1).expect("trivial group")]
    } else {
        let mut buckets: BTreeMap<Fingerprint, Vec<FiniteGroup>> = BTreeMap::new();
        for p in prime_divisors(n as u64) {
            let p = p as usize;
            for base in enumerate(n / p, memo) {
                for g in cyclic_extensions(&base, p) {
                    let key = Fingerprint::of(&g);
                    let bucket = buckets.entry(key).or_default();
                    if bucket.iter().all(|h| isomorphism_unchecked(&g, h).is_none()) {
                        bucket.push(g);
                    }
                }
            }
        }
        buckets
            .into_values()
            .flatten()
            .enumerate()
            .map(|(i, g)| g.with_name(format!("G{n}_{}", i + 1)))
            .collect()
    };
    memo.insert(n, result.clone());
    result
}

/// All groups `N⟨g⟩` with `[G : N] = p`, one per admissible `(α, z)`.
fn cyclic_extensions(base: &FiniteGroup, p: usize) -> Vec<FiniteGroup> {
    let m = base.order();
    let mut out = Vec::new();
    for alpha in automorphisms(base) {
        let a = alpha.images();
        // α^p as an image list
        let mut alpha_p: Vec<usize> = base.elements().collect();
        for _ in 0..p {
            alpha_p = alpha_p.iter().map(|&x| a[x]).collect();
        }
        for z in base.elements() {
            if a[z] != z {
                continue;
            }
            let zi = base.inv(z);
            if base.elements().any(|x| alpha_p[x] != base.mul(base.mul(z, x), zi)) {
                continue;
            }
            // powers of α
            let mut powers: Vec<Vec<usize>> = vec![base.elements().collect()];
            for i in 1..p {
                let prev = &powers[i - 1];
                powers.push(prev.iter().map(|&x| a[x]).collect());
            }
            let n = m * p;
            let mut table = vec![0u32; n * n];
            for i in 0..p {
                for x in 0..m {
                    for j in 0..p {
                        for y in 0..m {
                            let mut prod = base.mul(x, powers[i][y]);
                            let mut k = i + j;
                            if k >= p {
                                prod = base.mul(prod, z);
                                k -= p;
                            }
                            table[(i * m + x) * n + j * m + y] = (k * m + prod) as u32;
                        }
                    }
                }
            }
            let names = (0..n)
                .map(|e| if e == 0 { "1".to_string() } else { format!("e{e}") })
                .collect();
            let g = FiniteGroup::from_parts(format!("ext{n}"), table, names)
                .expect("cyclic extension data defines a group");
            debug_assert!(g.check_axioms().is_ok());
            out.push(g);
        }
    }
    out
}
