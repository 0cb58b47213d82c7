//! Exact wedge decompositions of suspensions.
//!
//! Given the homology data of an `(n-1)`-connected `(2n+2)`-dimensional
//! Poincare duality complex `M` (for `2 <= n <= 5`) together with the action
//! of the relevant cohomology operations, this crate computes the homotopy
//! decomposition of the suspension `SigmaM` as a wedge of spheres, Moore
//! spaces, Chang complexes, and a small catalog of cones on stable attaching
//! classes.  All arithmetic is exact; there are no floating-point values
//! anywhere in the pipeline.
//!
//! Module map:
//!
//! * [`torsion`] - finite abelian groups in primary form, graded homology.
//! * [`catalog`] - the space catalog: homology, suspension, localization,
//!   cohomology-operation signatures, and the printed wedge grammar.
//! * [`pi_tables`] - exact homotopy groups of catalog spaces in the range the
//!   decomposition needs, plus the composition relation database.
//! * [`normalizer`] - attaching vectors over a wedge, the equivalence moves,
//!   normal forms, cofibers, and bounded orbit search.
//! * [`decomposer`] - input validation, `Sq^2` rank reduction, the
//!   homology-level splitting, and the classification itself.
//! * [`oracle`] - independent cross-checks: cellular homology via Smith
//!   reduction, bounded enumeration, mode agreement, rewrite soundness and
//!   confluence.
//! * [`cli`] - the `suspsplit` command-line front end.

pub mod catalog;
pub mod cli;
pub mod decomposer;
pub mod normalizer;
pub mod oracle;
pub mod pi_tables;
pub mod torsion;

/// Error vocabulary shared by the whole pipeline.
///
/// Every failure mode carries enough context to state what was asked for.
/// Callers that need to distinguish "no" from "could not decide" must match
/// on the variant, not on the message.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A torsion summand required by the request is not present.
    #[error("summand absent: Z/{p}^{r} is not a summand of the given torsion group")]
    SummandAbsent { p: u64, r: u32 },

    /// A dimension or exponent outside the supported range.
    #[error("range exceeded: {what}")]
    RangeExceeded { what: String },

    /// A `(degree, space)` query outside the stored tables.
    #[error("unsupported pair: {what}")]
    UnsupportedPair { what: String },

    /// A composition with no entry in the relation database.
    #[error("unknown composite: {what}")]
    UnknownComposite { what: String },

    /// Rewriting exceeded its step bound.  The canonical rule set strictly
    /// decreases a lexicographic measure, so this indicates a defective
    /// (e.g. deliberately corrupted) rule table.
    #[error("non-termination: rewriting exceeded {steps} steps")]
    NonTermination { steps: u64 },

    /// Cofiber construction was handed a vector that is not in normal form.
    #[error("not normalized: {what}")]
    NotNormalized { what: String },

    /// Orbit search reached its depth bound without deciding either way.
    #[error("depth exceeded: no decision within depth {depth}")]
    DepthExceeded { depth: u32 },

    /// Matrix or coefficient data with the wrong dimensions.
    #[error("shape mismatch: {what}")]
    ShapeMismatch { what: String },

    /// An operation profile that no decomposition branch realizes.
    #[error("inconsistent profile: {what}")]
    InconsistentProfile { what: String },

    /// A sweep whose size would exceed the configured cap.
    #[error("cap exceeded: {requested} cases exceed the cap of {cap}")]
    CapExceeded { requested: u64, cap: u64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
