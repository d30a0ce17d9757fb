//! Threshold-based belief sets over finite propositional languages, with
//! exact rational arithmetic throughout.
//!
//! The crate decides when the family of events at or above a probability
//! threshold is deductively closed, locates the threshold bands and step
//! masses that generate every closed non-trivial belief set, and revises
//! beliefs by a minimal-change kernel closely related to Jeffrey
//! conditionalization, including a sufficient-and-necessary closure bound for
//! the revised set and an auditor for the six basic revision postulates.
//!
//! Modules:
//!
//! - [`logic`]: formulas, world indexing, model sets, canonical reconstruction.
//! - [`parser`]: the concrete formula syntax.
//! - [`prob`]: exact distributions, conditioning, Jeffrey updates, the
//!   revision kernel, L1 distance, relative entropy.
//! - [`lockean`]: belief membership, threshold bands, closure decision,
//!   steps, diagnostics.
//! - [`revision`]: revision outcomes, the closure bound, the postulate
//!   auditor.
//! - [`oracle`]: seeded instance streams, exhaustive scans, and randomized
//!   cross-checks of every analysis path.
//!
//! All value types are immutable after construction and safe to share across
//! threads. With the default `parallel` feature the oracle trial loops run
//! on rayon; disabling it yields a dependency-light sequential build with
//! identical results.

pub mod error;
pub mod lockean;
pub mod logic;
pub mod oracle;
pub mod parser;
pub mod prob;
pub mod revision;

pub use error::{Error, Result};
pub use lockean::{
    believes, classify, closed_thresholds, closure_report, diagnostics, find_steps,
    minimal_members, threshold_band, BeliefSetView, Classification, ClosedThreshold,
    ClosureReport, Diagnostics, StepReport, ThresholdBand,
};
pub use logic::{
    entails, equivalent, formula_of_modelset, models_of, Formula, ModelSet, EXHAUSTIVE_GATE,
    MAX_VARS,
};
pub use oracle::{
    brute_closure, brute_conjunctive_closure, closure_instance, kl_minimality_check,
    theorem_suite, theorem_trial, Failure, InstanceGenerator, OracleVerdict, Theorem,
    KL_SAMPLES_PER_TRIAL, KL_TOLERANCE,
};
pub use parser::parse_formula;
pub use prob::{
    format_rational, kl_divergence, l1_distance, parse_rational, ratio, Distribution, Rational,
    Threshold,
};
pub use revision::{
    agm_audit, consequence_membership, predict_closure, revise, AgmReport, ClosurePrediction,
    PostulateEntry, RevisionOutcome,
};
