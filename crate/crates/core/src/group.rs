//! Finite groups as dense Cayley tables.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::is_prime;
use crate::perm::Perm;
use crate::{Caps, Error, Result};

/// Element of a [`FiniteGroup`], an index into its Cayley table.
pub type Elem = usize;

/// A finite group with a validated multiplication table.
///
/// Index 0 is always the identity and is named `"1"`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    names: Vec<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.names == other.names
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates an arbitrary multiplication table and relabels it so that the
    /// identity has index 0.
    ///
    /// `names`, when given, label the rows of `rows` in their original order.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Axiom("a group has at least one element".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Axiom(format!("row {i} has {} entries, expected {n}", r.len())));
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= n) {
                return Err(Error::Axiom(format!("entry {bad} in row {i} is out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::Axiom("no two-sided identity element".into()))?;
        // swap labels of `identity` and 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[relabel(i) * n + relabel(j)] = relabel(rows[i][j]) as u32;
            }
        }
        let names = match names {
            Some(mut v) => {
                if v.len() != n {
                    return Err(Error::Invalid(format!("{} names given for {n} elements", v.len())));
                }
                v.swap(0, identity);
                v[0] = "1".into();
                v
            }
            None => default_names(n),
        };
        let g = Self::from_parts(name.into(), table, names)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Assembles a group from a table already normalized to identity 0, computing
    /// inverses. Associativity is not checked here.
    pub(crate) fn from_parts(name: String, table: Vec<u32>, names: Vec<String>) -> Result<Self> {
        let order = names.len();
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![u32::MAX; order];
        for x in 0..order {
            for y in 0..order {
                if table[x * order + y] == 0 {
                    if inverse[x] != u32::MAX {
                        return Err(Error::Axiom(format!("element {x} has two right inverses")));
                    }
                    inverse[x] = y as u32;
                }
            }
            if inverse[x] == u32::MAX {
                return Err(Error::Axiom(format!("element {x} has no inverse")));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, nm) in names.iter().enumerate() {
            if let Some(j) = seen.insert(nm.as_str(), i) {
                return Err(Error::Invalid(format!("elements {j} and {i} share the name `{nm}`")));
            }
        }
        if names[0] != "1" {
            return Err(Error::Invalid("the identity must be named `1`".into()));
        }
        Ok(FiniteGroup {
            name,
            order,
            table,
            inverse,
            names,
        })
    }

    /// Checks the group axioms: identity at 0, Latin square, associativity.
    ///
    /// Associativity is checked on a generating set only. The elements `a` with
    /// `(xy)a = x(ya)` for all `x, y` are closed under products, so this is
    /// equivalent to the full check.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::Axiom(format!("0 is not an identity for element {x}")));
            }
        }
        let mut seen = vec![0usize; n];
        for x in 0..n {
            for y in 0..n {
                let z = self.mul(x, y);
                if seen[z] == x + 1 {
                    return Err(Error::Axiom(format!("row {x} repeats element {z}")));
                }
                seen[z] = x + 1;
            }
        }
        let mut seen = vec![0usize; n];
        for y in 0..n {
            for x in 0..n {
                let z = self.mul(x, y);
                if seen[z] == y + 1 {
                    return Err(Error::Axiom(format!("column {y} repeats element {z}")));
                }
                seen[z] = y + 1;
            }
        }
        for x in 0..n {
            let i = self.inv(x);
            if self.mul(i, x) != 0 {
                return Err(Error::Axiom(format!("inverse of {x} is not two-sided")));
            }
        }
        let gens = self.magma_generators();
        for &a in &gens {
            for x in 0..n {
                for y in 0..n {
                    if self.mul(self.mul(x, y), a) != self.mul(x, self.mul(y, a)) {
                        return Err(Error::Axiom(format!(
                            "associativity fails for the triple ({x}, {y}, {a})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set with respect to right multiplication closure.
    fn magma_generators(&self) -> Vec<Elem> {
        let n = self.order;
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        let mut gens: Vec<Elem> = Vec::new();
        for cand in 1..n {
            if inside[cand] {
                continue;
            }
            gens.push(cand);
            // recompute the right closure of the identity under all gens
            let mut queue: VecDeque<Elem> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as usize
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `a^b = b^-1 a b`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn row(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.table[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&x| x as usize)
    }

    /// Product of a sequence of elements.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Multiset of element orders, sorted.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { format!("e{i}") })
        .collect()
}

/// The cyclic group of order `n` on `1, g, g^2, ...`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::pre("cyclic group order must be positive"));
    }
    let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    FiniteGroup::from_parts(format!("C{n}"), table, names)
}

/// Direct product; element `(g, h)` has index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
    let (m, k) = (g.order(), h.order());
    let n = m * k;
    if n > caps.group_order {
        return Err(Error::cap("direct product order", n as u128, caps.group_order as u128));
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (gx, hx) = (x / k, x % k);
            let (gy, hy) = (y / k, y % k);
            table[x * n + y] = (g.mul(gx, gy) * k + h.mul(hx, hy)) as u32;
        }
    }
    let names = (0..n)
        .map(|x| {
            if x == 0 {
                "1".to_string()
            } else {
                format!("({},{})", g.element_name(x / k), h.element_name(x % k))
            }
        })
        .collect();
    FiniteGroup::from_parts(format!("{}x{}", g.name(), h.name()), table, names)
}

/// Semidirect product `A ⋊ B` with `(a1, b1)(a2, b2) = (a1 · φ_{b1}(a2), b1 b2)`.
///
/// `action[b]` lists the images of the automorphism `φ_b` of `A`; the map
/// `b ↦ φ_b` must satisfy `φ_{b1 b2} = φ_{b1} ∘ φ_{b2}`. Element `(a, b)` has
/// index `b * |A| + a`.
pub fn semidirect_product(a: &FiniteGroup, b: &FiniteGroup, action: &[Vec<Elem>], caps: &Caps) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    if action.len() != nb {
        return Err(Error::Invalid("one automorphism per element of B is required".into()));
    }
    for (bi, phi) in action.iter().enumerate() {
        if !Homomorphism::new(phi.clone()).is_isomorphism(a, a) {
            return Err(Error::Invalid(format!(
                "image of {} is not an automorphism",
                b.element_name(bi)
            )));
        }
    }
    for b1 in 0..nb {
        for b2 in 0..nb {
            let phi12 = &action[b.mul(b1, b2)];
            if (0..na).any(|x| phi12[x] != action[b1][action[b2][x]]) {
                return Err(Error::Invalid("the action is not a homomorphism into Aut(A)".into()));
            }
        }
    }
    let n = na * nb;
    if n > caps.group_order {
        return Err(Error::cap(
            "semidirect product order",
            n as u128,
            caps.group_order as u128,
        ));
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (ax, bx) = (x % na, x / na);
        for y in 0..n {
            let (ay, by) = (y % na, y / na);
            table[x * n + y] = (b.mul(bx, by) * na + a.mul(ax, action[bx][ay])) as u32;
        }
    }
    let names = (0..n)
        .map(|x| {
            if x == 0 {
                "1".to_string()
            } else {
                format!("({},{})", a.element_name(x % na), b.element_name(x / na))
            }
        })
        .collect();
    let g = FiniteGroup::from_parts(format!("{}:{}", a.name(), b.name()), table, names)?;
    debug_assert!(g.check_axioms().is_ok());
    Ok(g)
}

/// The group of affine maps `x ↦ a x + b` of the field with `p` elements.
///
/// Products apply the left factor first: `(a, b)(c, d) = (ac, bc + d)`.
pub fn affine_group(p: u64) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as usize;
    let n = p * (p - 1);
    let idx = |a: usize, b: usize| (a - 1) * p + b;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (a, b) = (x / p + 1, x % p);
        for y in 0..n {
            let (c, d) = (y / p + 1, y % p);
            table[x * n + y] = idx(a * c % p, (b * c + d) % p) as u32;
        }
    }
    let names = (0..n)
        .map(|x| {
            let (a, b) = (x / p + 1, x % p);
            match (a, b) {
                (1, 0) => "1".to_string(),
                (1, b) => format!("x+{b}"),
                (a, 0) => format!("{a}x"),
                (a, b) => format!("{a}x+{b}"),
            }
        })
        .collect();
    FiniteGroup::from_parts(format!("AGL(1,{p})"), table, names)
}

/// Closure of a set of permutations, as a Cayley table.
///
/// Element 0 is the identity permutation; the others are named by their
/// cycle notation.
pub fn from_generators(name: &str, perms: &[Perm], caps: &Caps) -> Result<FiniteGroup> {
    let degree = perms.iter().map(Perm::degree).max().unwrap_or(0);
    let gens: Vec<Perm> = perms.iter().map(|p| p.extended(degree)).collect();
    let mut elements = vec![Perm::identity(degree)];
    let mut index: BTreeMap<Perm, usize> = BTreeMap::new();
    index.insert(elements[0].clone(), 0);
    // parent[j] = (i, k) with elements[j] = elements[i] * gens[k]
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut rmul: Vec<Vec<u32>> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            let y = elements[next].then(g);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= caps.group_order {
                        return Err(Error::cap("generated group", j as u128 + 1, caps.group_order as u128));
                    }
                    index.insert(y.clone(), j);
                    elements.push(y);
                    parent.push(Some((next, k)));
                    j
                }
            };
            row.push(j as u32);
        }
        rmul.push(row);
        next += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        table[i * n] = i as u32;
    }
    // columns in BFS order: x * e_j = (x * e_parent) * g_k
    for j in 1..n {
        let (pj, k) = parent[j].expect("non-identity element has a parent");
        for i in 0..n {
            let t = table[i * n + pj] as usize;
            table[i * n + j] = rmul[t][k];
        }
    }
    let names = elements
        .iter()
        .enumerate()
        .map(|(i, p)| if i == 0 { "1".to_string() } else { p.to_string() })
        .collect();
    FiniteGroup::from_parts(name.into(), table, names)
}

/// A map between finite groups, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    image: Vec<Elem>,
}

impl Homomorphism {
    pub fn new(image: Vec<Elem>) -> Self {
        Homomorphism { image }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Homomorphism::new(g.elements().collect())
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.image
    }

    /// Exhaustive check that the map is a homomorphism `source → target`.
    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.image.len() == source.order()
            && self.image.iter().all(|&y| y < target.order())
            && self.image.first() == Some(&0)
            && source.elements().all(|x| {
                source
                    .elements()
                    .all(|y| self.apply(source.mul(x, y)) == target.mul(self.apply(x), self.apply(y)))
            })
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.image.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_isomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        source.order() == target.order() && self.is_injective() && self.is_homomorphism(source, target)
    }

    pub fn kernel(&self) -> Vec<Elem> {
        (0..self.image.len()).filter(|&x| self.image[x] == 0).collect()
    }

    pub fn compose(&self, then: &Homomorphism) -> Homomorphism {
        Homomorphism::new(self.image.iter().map(|&y| then.apply(y)).collect())
    }

    pub fn inverse(&self) -> Homomorphism {
        let mut v = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            v[y] = x;
        }
        Homomorphism::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(s: &[&str]) -> Vec<Perm> {
        s.iter().map(|c| Perm::parse_cycles(c).unwrap()).collect()
    }

    #[test]
    fn trivial_groups() {
        let c1 = cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        let g = from_generators("1", &[], &Caps::default()).unwrap();
        assert_eq!(g.order(), 1);
        let g = FiniteGroup::from_table("t", &[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn symmetric_group_closure() {
        let s3 = from_generators("S3", &perms(&["(1 2)", "(1 2 3)"]), &Caps::default()).unwrap();
        assert_eq!(s3.order(), 6);
        s3.check_axioms().unwrap();
        assert!(!s3.is_abelian());
        assert_eq!(
            from_generators("C2", &perms(&["(1 2)"]), &Caps::default())
                .unwrap()
                .order(),
            2
        );
    }

    #[test]
    fn affine_groups() {
        assert_eq!(affine_group(7).unwrap().order(), 42);
        assert_eq!(affine_group(2).unwrap().order(), 2);
        let g3 = affine_group(3).unwrap();
        assert_eq!(g3.order(), 6);
        assert!(!g3.is_abelian());
        g3.check_axioms().unwrap();
        affine_group(7).unwrap().check_axioms().unwrap();
        assert!(matches!(affine_group(8), Err(Error::NotPrime(8))));
    }

    #[test]
    fn identity_relabeling() {
        // Z/3 with identity at label 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table("z3", &rows, None).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn non_associative_loop_rejected() {
        // a Latin square with identity that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table("loop", &rows, None) {
            Err(Error::Axiom(msg)) => assert!(msg.contains("associativity"), "{msg}"),
            other => panic!("expected an axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn semidirect_rejects_non_automorphism() {
        let a = cyclic(3).unwrap();
        let b = cyclic(2).unwrap();
        let bad = vec![vec![0, 1, 2], vec![0, 0, 0]];
        assert!(semidirect_product(&a, &b, &bad, &Caps::default()).is_err());
        let good = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let s = semidirect_product(&a, &b, &good, &Caps::default()).unwrap();
        assert_eq!(s.order(), 6);
        assert!(!s.is_abelian());
    }

    #[test]
    fn powers_and_orders() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.pow(1, 4), 4);
        assert_eq!(c6.pow(1, -1), 5);
        assert_eq!(c6.element_order(2), 3);
        assert_eq!(c6.order_statistics(), [1, 2, 3, 3, 6, 6]);
    }
}
