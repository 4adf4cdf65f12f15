//! Cartesian wreath products `H ≀ B` of finite groups and the coordinate-wise
//! transformation of systems over them.
//!
//! Elements are pairs `(f, s)` with `f: B → H` and `s ∈ B`, multiplied by
//! `(f, s)(g, t) = (b ↦ f(b)·g(b s), s t)`. With this rule conjugation by a
//! top element `d` shifts coordinates: `[x^d]_b = [x]_{b d^{-1}}`. For finite
//! `B` the Cartesian and restricted products coincide.

mod product;
mod transform;

pub use product::{extend_top, kaloujnine_krasner, wreath_product, WreathGroup};
pub use transform::{
    extract_rows, lemma2_transform, normalize_top_component, normalize_with_shift, reconstruct_solution, RowsReport,
    TransformedSystem, WLetter, WreathSystem,
};
