//! Equations over groups: words, systems, exponent-sum matrices and their
//! classification over the rationals and the prime fields.

mod abelian;
mod classify;
mod intmat;
mod smith;
mod system;
mod word;

pub use abelian::{
    solve_abelian, solve_abelian_p_system, solve_coordinates, AbelianDecomposition, AbelianGroup, AbelianSolution,
};
pub use classify::{classify, classify_matrix, is_p_nonsingular, Classification, SingularPrimes};
pub use intmat::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
pub use system::{evaluate_word, Binding, EquationSystem};
pub use word::{parse_word, Letter, Word};
