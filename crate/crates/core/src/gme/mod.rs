//! The VDGE and iVDGE algorithms, exact-GME oracles and the named state
//! library.

mod oracle;
mod states;
mod vqa;

pub use oracle::{exact_gme_product, exact_gme_symmetric, ProductOracle, SymmetricFamily, DEFAULT_RESTARTS};
pub use states::{make_named_state, StateFamily};
pub use vqa::{
    best_of_repetitions, classify_bp, run_ivdge, run_ivdge_from, run_repetition, run_vdge, run_vdge_from,
    GmeEstimate, IterationRecord, Method, MitigationPolicy, RunTrace, Shots, Stage, VqaConfig,
    DEFAULT_BP_THRESHOLD,
};
