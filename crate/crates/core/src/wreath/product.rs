use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{Elem, FiniteGroup, Homomorphism};
use crate::subgroup::{quotient, subgroup_as_group, Subgroup};
use crate::{Caps, Error, Result};

/// `H ≀ B` realized as a Cayley table, with coordinate access.
///
/// Index of `(f, s)` is `s·|H|^|B| + Σ_b f(b)·|H|^(|B|-1-b)`.
#[derive(Clone, Debug)]
pub struct WreathGroup {
    base: Arc<FiniteGroup>,
    top: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
    base_size: usize,
}

pub fn wreath_product(h: &FiniteGroup, b: &FiniteGroup, caps: &Caps) -> Result<WreathGroup> {
    let (nh, nb) = (h.order() as u128, b.order() as u128);
    let base_size = nh.checked_pow(nb as u32).unwrap_or(u128::MAX);
    let order = base_size.saturating_mul(nb);
    let cap = caps.wreath_order.min(caps.group_order) as u128;
    if order > cap {
        return Err(Error::cap("wreath product order", order, cap));
    }
    let (nh, nb, base_size, order) = (nh as usize, nb as usize, base_size as usize, order as usize);
    let decode = |x: usize| -> (Vec<Elem>, Elem) {
        let mut f = vec![0; nb];
        let mut r = x % base_size;
        for slot in f.iter_mut().rev() {
            *slot = r % nh;
            r /= nh;
        }
        (f, x / base_size)
    };
    let elems: Vec<(Vec<Elem>, Elem)> = (0..order).map(decode).collect();
    let mut table = vec![0u32; order * order];
    for (x, (f, s)) in elems.iter().enumerate() {
        // b·s for every b
        let shifted: Vec<Elem> = (0..nb).map(|bb| b.mul(bb, *s)).collect();
        for (y, (g, t)) in elems.iter().enumerate() {
            let mut idx = 0;
            for bb in 0..nb {
                idx = idx * nh + h.mul(f[bb], g[shifted[bb]]);
            }
            table[x * order + y] = (b.mul(*s, *t) * base_size + idx) as u32;
        }
    }
    let names = elems
        .iter()
        .enumerate()
        .map(|(x, (f, s))| {
            if x == 0 {
                String::from("1")
            } else {
                let parts: Vec<&str> = f.iter().map(|&v| h.element_name(v)).collect();
                format!("[{};{}]", parts.join(","), b.element_name(*s))
            }
        })
        .collect();
    let name = format!("{}wr{}", h.name(), b.name());
    let group = FiniteGroup::from_parts(name, table, names)?;
    Ok(WreathGroup {
        base: Arc::new(h.clone()),
        top: Arc::new(b.clone()),
        group: Arc::new(group),
        base_size,
    })
}

impl WreathGroup {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn top(&self) -> &Arc<FiniteGroup> {
        &self.top
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn encode(&self, f: &[Elem], s: Elem) -> Elem {
        let nh = self.base.order();
        s * self.base_size + f.iter().fold(0, |acc, &v| acc * nh + v)
    }

    pub fn decode(&self, x: Elem) -> (Vec<Elem>, Elem) {
        let (nh, nb) = (self.base.order(), self.top.order());
        let mut f = vec![0; nb];
        let mut r = x % self.base_size;
        for slot in f.iter_mut().rev() {
            *slot = r % nh;
            r /= nh;
        }
        (f, x / self.base_size)
    }

    /// `[x]_b`.
    pub fn coordinate(&self, x: Elem, b: Elem) -> Elem {
        let (nh, nb) = (self.base.order(), self.top.order());
        let r = x % self.base_size;
        (r / nh.pow((nb - 1 - b) as u32)) % nh
    }

    pub fn top_component(&self, x: Elem) -> Elem {
        x / self.base_size
    }

    pub fn top_element(&self, s: Elem) -> Elem {
        s * self.base_size
    }

    pub fn is_in_base(&self, x: Elem) -> bool {
        x < self.base_size
    }

    /// The element of the base with `h` at coordinate `b` and 1 elsewhere.
    pub fn delta(&self, b: Elem, h: Elem) -> Elem {
        let mut f = vec![0; self.top.order()];
        f[b] = h;
        self.encode(&f, 0)
    }
}

/// Embeds `G` into `N ≀ (G/N)` via the transversal of least coset
/// representatives: `g ↦ (q ↦ t(q)·g·t(q·ḡ)^{-1}, ḡ)`.
pub fn kaloujnine_krasner(g: &FiniteGroup, n: &Subgroup, caps: &Caps) -> Result<(WreathGroup, Homomorphism)> {
    let (q, proj) = quotient(g, n)?;
    let (ng, incl) = subgroup_as_group(g, n);
    let w = wreath_product(&ng, &q, caps)?;
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in incl.images().iter().enumerate() {
        pos[x] = i;
    }
    let mut transversal = vec![usize::MAX; q.order()];
    for x in g.elements() {
        let c = proj.apply(x);
        if transversal[c] == usize::MAX {
            transversal[c] = x;
        }
    }
    let image = g
        .elements()
        .map(|x| {
            let xb = proj.apply(x);
            let f: Vec<Elem> = q
                .elements()
                .map(|c| {
                    let v = g.mul(g.mul(transversal[c], x), g.inv(transversal[q.mul(c, xb)]));
                    pos[v]
                })
                .collect();
            w.encode(&f, xb)
        })
        .collect();
    let hom = Homomorphism::new(image);
    if !hom.is_homomorphism(g, w.group()) || !hom.is_injective() {
        return Err(Error::Invalid("internal error: embedding check failed".into()));
    }
    Ok((w, hom))
}

/// Rebuilds `H ≀ B` over a larger top `B'` along an injection `ι: B → B'`,
/// with the embedding `(f, s) ↦ (f', ι(s))`, `f'(t·ι(b)) = f(b)` for `t` the
/// least element of each left coset of `ι(B)`.
pub fn extend_top(
    w: &WreathGroup,
    new_top: &FiniteGroup,
    iota: &Homomorphism,
    caps: &Caps,
) -> Result<(WreathGroup, Homomorphism)> {
    if !iota.is_homomorphism(w.top(), new_top) || !iota.is_injective() {
        return Err(Error::pre("the top map is not an injective homomorphism"));
    }
    let w2 = wreath_product(w.base(), new_top, caps)?;
    // c = t·ι(b): record (b) for every c
    let mut coset_of = vec![usize::MAX; new_top.order()];
    for t in new_top.elements() {
        if coset_of[t] != usize::MAX {
            continue;
        }
        for b in w.top().elements() {
            coset_of[new_top.mul(t, iota.apply(b))] = b;
        }
    }
    let image = w
        .group()
        .elements()
        .map(|x| {
            let (f, s) = w.decode(x);
            let f2: Vec<Elem> = new_top.elements().map(|c| f[coset_of[c]]).collect();
            w2.encode(&f2, iota.apply(s))
        })
        .collect();
    let hom = Homomorphism::new(image);
    if !hom.is_homomorphism(w.group(), w2.group()) {
        return Err(Error::Invalid(
            "internal error: top extension is not a homomorphism".into(),
        ));
    }
    Ok((w2, hom))
}
