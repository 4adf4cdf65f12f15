//! Checks that reproduce the structural case analysis for small orders, the
//! nilpotent-group shadow of the unimodular case, the explicit counterexample
//! family over `C_2 ≀ (C_p × C_q)`, and exhaustive equation solving.

mod brute;
mod counterexample;
mod pk;
mod roundtrip;
mod witness;

pub use brute::{
    all_solutions, brute_force_solve, brute_force_solve_range, brute_force_solve_reversed, search_space, BruteForce,
};
pub use counterexample::{
    counterexample_build, counterexample_coefficients, obstruction_check, obstruction_check_forced,
    CounterexampleInstance, ObstructionReport,
};
pub use pk::{lemma_pk_check, random_unimodular_equation, PkReport};
pub use roundtrip::{random_wreath_system, transform_round_trip, RoundTrip};
pub use witness::{
    abelian_by_abelian_p_witness, classify_group, lemma_pq_check, summarize, verify_witness, AuditSummary,
    ClassificationReport, OrderSummary, PqReport, Witness, LISTED_ORDERS,
};
