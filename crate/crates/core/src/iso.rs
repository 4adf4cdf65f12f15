//! Isomorphism testing and automorphism enumeration by backtracking over
//! generator images, pruned by invariant fingerprints.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::{Elem, FiniteGroup, Homomorphism};
use crate::subgroup::{center, derived_series, generators, Subgroup};
use crate::{Caps, Error, Result};

/// Isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub center: usize,
    pub derived: Vec<usize>,
    /// Sorted multiset of (element order, conjugacy class size).
    pub classes: Vec<(usize, usize)>,
}

impl Fingerprint {
    pub fn of(g: &FiniteGroup) -> Self {
        let classes = class_sizes(g);
        let mut pairs: Vec<(usize, usize)> = g.elements().map(|x| (g.element_order(x), classes[x])).collect();
        pairs.sort_unstable();
        Fingerprint {
            order: g.order(),
            center: center(g).order(),
            derived: derived_series(g).iter().map(Subgroup::order).collect(),
            classes: pairs,
        }
    }
}

/// Size of the conjugacy class of each element.
fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut size = vec![0; n];
    let mut done = vec![false; n];
    let mut mark = vec![usize::MAX; n];
    for x in g.elements() {
        if done[x] {
            continue;
        }
        let mut class = Vec::new();
        for h in g.elements() {
            let y = g.conj(x, h);
            if mark[y] != x {
                mark[y] = x;
                class.push(y);
            }
        }
        for &y in &class {
            done[y] = true;
            size[y] = class.len();
        }
    }
    size
}

/// Extends generator images to a partial map on the subgroup they generate.
/// Returns `None` when the images are inconsistent or not injective.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                stack.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    images: Vec<Elem>,
}

impl Search<'_> {
    /// Depth-first search; `visit` returns `false` to stop.
    fn run(&mut self, visit: &mut dyn FnMut(Homomorphism) -> bool) -> bool {
        let k = self.images.len();
        if k == self.gens.len() {
            let map = extend(self.g, self.h, &self.gens, &self.images)
                .expect("consistency was checked when the last image was chosen");
            if map.iter().all(|&y| y != usize::MAX) {
                return visit(Homomorphism::new(map));
            }
            return true;
        }
        for i in 0..self.candidates[k].len() {
            let c = self.candidates[k][i];
            self.images.push(c);
            let ok = extend(self.g, self.h, &self.gens[..=k], &self.images).is_some();
            if ok && !self.run(visit) {
                self.images.pop();
                return false;
            }
            self.images.pop();
        }
        true
    }
}

fn search<'a>(g: &'a FiniteGroup, h: &'a FiniteGroup) -> Search<'a> {
    let gens = generators(g, &Subgroup::whole(g));
    let gc = class_sizes(g);
    let hc = class_sizes(h);
    let candidates = gens
        .iter()
        .map(|&s| {
            let key = (g.element_order(s), gc[s]);
            h.elements().filter(|&t| (h.element_order(t), hc[t]) == key).collect()
        })
        .collect();
    Search {
        g,
        h,
        gens,
        candidates,
        images: Vec::new(),
    }
}

fn check_cap(g: &FiniteGroup, caps: &Caps) -> Result<()> {
    if g.order() > caps.isomorphism_order {
        return Err(Error::cap(
            "isomorphism search group order",
            g.order() as u128,
            caps.isomorphism_order as u128,
        ));
    }
    Ok(())
}

/// An isomorphism `g → h`, or `None` if the groups are not isomorphic.
pub fn isomorphism(g: &FiniteGroup, h: &FiniteGroup, caps: &Caps) -> Result<Option<Homomorphism>> {
    check_cap(g, caps)?;
    check_cap(h, caps)?;
    if g.order() != h.order() {
        return Ok(None);
    }
    Ok(isomorphism_unchecked(g, h))
}

/// Same as [`isomorphism`] without the size cap.
pub fn isomorphism_unchecked(g: &FiniteGroup, h: &FiniteGroup) -> Option<Homomorphism> {
    if g.order() != h.order() || Fingerprint::of(g) != Fingerprint::of(h) {
        return None;
    }
    let mut found = None;
    search(g, h).run(&mut |phi| {
        found = Some(phi);
        false
    });
    debug_assert!(found.as_ref().is_none_or(|phi| phi.is_isomorphism(g, h)));
    found
}

/// All automorphisms of `g`, the identity first.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Homomorphism> {
    let mut all = Vec::new();
    search(g, g).run(&mut |phi| {
        all.push(phi);
        true
    });
    all.sort_by(|a, b| a.images().cmp(b.images()));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{affine_group, cyclic, direct_product, from_generators};
    use crate::perm::Perm;

    fn perm_group(name: &str, gens: &[&str]) -> FiniteGroup {
        let gens: Vec<Perm> = gens.iter().map(|s| Perm::parse_cycles(s).unwrap()).collect();
        from_generators(name, &gens, &Caps::default()).unwrap()
    }

    #[test]
    fn reflexive() {
        let g = affine_group(7).unwrap();
        let phi = isomorphism(&g, &g, &Caps::default()).unwrap().unwrap();
        assert!(phi.is_isomorphism(&g, &g));
    }

    #[test]
    fn c4_is_not_klein() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2, &Caps::default()).unwrap();
        assert!(isomorphism(&c4, &v4, &Caps::default()).unwrap().is_none());
    }

    #[test]
    fn c2xc3_is_c6() {
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap(), &Caps::default()).unwrap();
        let phi = isomorphism(&p, &cyclic(6).unwrap(), &Caps::default()).unwrap();
        assert!(phi.is_some());
    }

    #[test]
    fn affine_three_is_s3() {
        let s3 = perm_group("S3", &["(1 2)", "(1 2 3)"]);
        assert!(isomorphism(&affine_group(3).unwrap(), &s3, &Caps::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cyclic(7).unwrap()).len(), 6);
        let c2 = cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2, &Caps::default()).unwrap();
        assert_eq!(automorphisms(&v4).len(), 6);
        let s3 = perm_group("S3", &["(1 2)", "(1 2 3)"]);
        assert_eq!(automorphisms(&s3).len(), 6);
        let d4 = perm_group("D8", &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(automorphisms(&d4).len(), 8);
    }

    #[test]
    fn cap_enforced() {
        let g = cyclic(200).unwrap();
        assert!(isomorphism(&g, &g, &Caps::default()).is_err());
    }
}
