//! Subgroups, normal subgroups, series and quotients.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::prime_power;
use crate::group::{Elem, FiniteGroup, Homomorphism};
use crate::{Caps, Error, Result};

/// A subgroup, stored as the sorted list of its element indices.
///
/// Subgroups order first by size, then lexicographically by elements; every
/// list returned by this module is sorted that way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: g.elements().collect(),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[Elem]) -> Self {
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { elements: members }
    }

    /// Validates that `elements` form a subgroup of `g`.
    pub fn from_elements(g: &FiniteGroup, mut elements: Vec<Elem>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::Invalid("a subgroup must contain the identity".into()));
        }
        if elements.iter().any(|&x| x >= g.order()) {
            return Err(Error::Invalid("element index out of range".into()));
        }
        let s = Subgroup { elements };
        let mask = s.mask(g.order());
        for &x in &s.elements {
            if !mask[g.inv(x)] || s.elements.iter().any(|&y| !mask[g.mul(x, y)]) {
                return Err(Error::Invalid(
                    "the set is not closed under products and inverses".into(),
                ));
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.elements {
            m[x] = true;
        }
        m
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        let mask = self.mask(g.order());
        let gens = generators(g, &Subgroup::whole(g));
        self.elements.iter().all(|&x| gens.iter().all(|&s| mask[g.conj(x, s)]))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        let gens = generators(g, self);
        gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }
}

/// A small generating set of `s`, chosen greedily by decreasing element order.
pub fn generators(g: &FiniteGroup, s: &Subgroup) -> Vec<Elem> {
    let mut cands: Vec<Elem> = s.elements().to_vec();
    cands.sort_by_key(|&x| (core::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial();
    for x in cands {
        if current.order() == s.order() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = Subgroup::generated(g, &gens);
        }
    }
    gens
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let conjugates: BTreeSet<Elem> = gens
        .iter()
        .flat_map(|&x| g.elements().map(move |h| (x, h)))
        .map(|(x, h)| g.conj(x, h))
        .collect();
    let conjugates: Vec<Elem> = conjugates.into_iter().collect();
    Subgroup::generated(g, &conjugates)
}

fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = generators(g, a);
    gens.extend(generators(g, b));
    Subgroup::generated(g, &gens)
}

fn check_cap(g: &FiniteGroup, caps: &Caps) -> Result<()> {
    if g.order() > caps.subgroup_order {
        return Err(Error::cap(
            "subgroup enumeration group order",
            g.order() as u128,
            caps.subgroup_order as u128,
        ));
    }
    Ok(())
}

fn cyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let set: BTreeSet<Subgroup> = g.elements().map(|x| Subgroup::generated(g, &[x])).collect();
    set.into_iter().collect()
}

/// Closes `seeds` under joins with the `atoms`; every subgroup in the result is
/// a join of atoms.
fn join_closure(g: &FiniteGroup, atoms: &[Subgroup]) -> Vec<Subgroup> {
    let mut found: BTreeSet<Subgroup> = atoms.iter().cloned().collect();
    found.insert(Subgroup::trivial());
    let mut queue: VecDeque<Subgroup> = found.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for c in atoms {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let j = join(g, &h, c);
            if !found.contains(&j) {
                found.insert(j.clone());
                queue.push_back(j);
            }
        }
    }
    found.into_iter().collect()
}

/// Every subgroup of `g`, sorted, without duplicates.
pub fn all_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<Vec<Subgroup>> {
    check_cap(g, caps)?;
    Ok(join_closure(g, &cyclic_subgroups(g)))
}

/// Every normal subgroup of `g`, sorted, without duplicates.
pub fn normal_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<Vec<Subgroup>> {
    check_cap(g, caps)?;
    let closures: BTreeSet<Subgroup> = g.elements().map(|x| normal_closure(g, &[x])).collect();
    let closures: Vec<Subgroup> = closures.into_iter().collect();
    Ok(join_closure(g, &closures))
}

/// `[A, B]`, the subgroup generated by commutators `[a, b]`.
pub fn commutator_of(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let comms: BTreeSet<Elem> = a
        .elements()
        .iter()
        .flat_map(|&x| b.elements().iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    let comms: Vec<Elem> = comms.into_iter().collect();
    Subgroup::generated(g, &comms)
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let whole = Subgroup::whole(g);
    commutator_of(g, &whole, &whole)
}

/// `G ⊵ G' ⊵ G'' ⊵ …`, listing each distinct term once and stopping when the
/// series stabilizes.
pub fn derived_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let last = series.last().expect("series is non-empty");
        let next = commutator_of(g, last, last);
        if &next == last {
            return series;
        }
        series.push(next);
    }
}

/// `γ1 = G, γ_{i+1} = [γ_i, G]`, until it stabilizes.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = Subgroup::whole(g);
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().expect("series is non-empty");
        let next = commutator_of(g, last, &whole);
        if &next == last {
            return series;
        }
        series.push(next);
    }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let gens = generators(g, &Subgroup::whole(g));
    Subgroup {
        elements: g
            .elements()
            .filter(|&z| gens.iter().all(|&x| g.mul(x, z) == g.mul(z, x)))
            .collect(),
    }
}

pub fn centralizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let gens = generators(g, s);
    Subgroup {
        elements: g
            .elements()
            .filter(|&z| gens.iter().all(|&x| g.mul(x, z) == g.mul(z, x)))
            .collect(),
    }
}

pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let gens = generators(g, s);
    Subgroup {
        elements: g
            .elements()
            .filter(|&h| gens.iter().all(|&x| s.contains(g.conj(x, h))))
            .collect(),
    }
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).last().is_some_and(|s| s.order() == 1)
}

/// Derived length, or `None` for non-solvable groups. The trivial group has length 0.
pub fn derived_length(g: &FiniteGroup) -> Option<usize> {
    let s = derived_series(g);
    (s.last()?.order() == 1).then(|| s.len() - 1)
}

pub fn is_metabelian(g: &FiniteGroup) -> bool {
    derived_length(g).is_some_and(|d| d <= 2)
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    lower_central_series(g).last().is_some_and(|s| s.order() == 1)
}

/// A Sylow `p`-subgroup, grown one normalizer step at a time.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    let n = g.order() as u64;
    if p < 2 || !n.is_multiple_of(p) {
        return Err(Error::pre(format!("{p} does not divide the group order {n}")));
    }
    let mut target = 1u64;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        target *= p;
    }
    let is_p_power = |k: usize| k == 1 || prime_power(k as u64).is_some_and(|(q, _)| q == p);
    let mut sub = Subgroup::trivial();
    while (sub.order() as u64) < target {
        let norm = normalizer(g, &sub);
        let mut gens = generators(g, &sub);
        let next = norm
            .elements()
            .iter()
            .filter(|&&x| !sub.contains(x))
            .find_map(|&x| {
                gens.push(x);
                let cand = Subgroup::generated(g, &gens);
                gens.pop();
                is_p_power(cand.order()).then_some(cand)
            })
            .expect("Sylow's theorem guarantees a larger p-subgroup in the normalizer");
        sub = next;
    }
    Ok(sub)
}

/// Realizes a subgroup as a group of its own, with the inclusion map.
pub fn subgroup_as_group(g: &FiniteGroup, s: &Subgroup) -> (FiniteGroup, Homomorphism) {
    let n = s.order();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in s.elements().iter().enumerate() {
        pos[x] = i;
    }
    let mut table = vec![0u32; n * n];
    for (i, &x) in s.elements().iter().enumerate() {
        for (j, &y) in s.elements().iter().enumerate() {
            table[i * n + j] = pos[g.mul(x, y)] as u32;
        }
    }
    let names = s.elements().iter().map(|&x| g.element_name(x).to_string()).collect();
    let h = FiniteGroup::from_parts(format!("{}_sub{}", g.name(), n), table, names)
        .expect("a subgroup table is a group table");
    (h, Homomorphism::new(s.elements().to_vec()))
}

/// `G/N` on cosets labelled by their least element, with the projection.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Homomorphism)> {
    if !n.is_normal(g) {
        return Err(Error::pre("quotient by a subgroup that is not normal"));
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &y in n.elements() {
            coset[g.mul(x, y)] = id;
        }
    }
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * k + j] = coset[g.mul(a, b)] as u32;
        }
    }
    let names = reps.iter().map(|&r| g.element_name(r).to_string()).collect();
    let q = FiniteGroup::from_parts(format!("{}/N{}", g.name(), n.order()), table, names)?;
    Ok((q, Homomorphism::new(coset)))
}
