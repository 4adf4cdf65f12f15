//! Exact algorithms for systems of equations over finite solvable groups.
//!
//! The crate is `no_std` (it only needs `alloc`). It covers:
//!
//! * finite groups given by Cayley tables ([`group`], [`subgroup`], [`iso`]),
//! * equation words, exponent-sum matrices and Smith normal form ([`equations`]),
//! * group algebras of abelian groups over prime fields and the
//!   augmentation certificates for non-zero-divisors ([`algebra`]),
//! * Cartesian wreath products and the coordinate-wise system transformation
//!   ([`wreath`]),
//! * witness searches, counterexample obstructions and brute-force solving
//!   ([`verify`]).
//!
//! Everything touching files, threads or the command line lives in the
//! companion `groupeq` crate.
#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod arith;
pub mod caps;
pub mod enumerate;
pub mod equations;
mod error;
pub mod fp;
pub mod group;
pub mod iso;
pub mod perm;
pub mod subgroup;
pub mod verify;
pub mod wreath;

pub use caps::Caps;
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, Homomorphism};
pub use subgroup::Subgroup;
