//! Size limits for the exhaustive algorithms.

/// Hard limits; exceeding one is reported as [`crate::Error::CapExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group realized as a dense Cayley table.
    pub group_order: usize,
    /// Largest wreath product realized as a group.
    pub wreath_order: usize,
    /// Largest group whose full subgroup lattice may be enumerated.
    pub subgroup_order: usize,
    /// Largest group order accepted by the isomorphism search.
    pub isomorphism_order: usize,
    /// Largest number of candidate assignments tried by brute-force solvers.
    pub brute_force_work: u128,
    /// Largest order accepted by the group enumerator.
    pub enumeration_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 4096,
            wreath_order: 4096,
            subgroup_order: 512,
            isomorphism_order: 128,
            brute_force_work: 10_000_000,
            enumeration_order: 12,
        }
    }
}
