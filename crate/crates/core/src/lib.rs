//! Revenue sharing for broadcast audience matrices, in exact arithmetic.
//!
//! A problem is a square matrix of game audiences; a rule divides the total
//! audience among the teams. This crate implements the standard rule
//! families (uniform, equal-split, concede-and-divide, the split, general,
//! convex-combination and two-parameter extended families), a catalog of
//! axiom-separating rules, exact instance checks for thirteen axioms with
//! seeded randomized falsification, and the unit-matrix signature machinery
//! that decomposes, classifies and reconstructs additive anonymous rules.
//!
//! All values are arbitrary-precision rationals: axiom checks are exact
//! equalities and inequalities, so no tolerances appear anywhere.
//!
//! ```
//! use broadcast_sharing::{classify, decompose, rat, FamilyId, Problem, Rule, RuleSpec};
//!
//! let a = Problem::from_ints(&[
//!     &[0, 1200, 1030],
//!     &[750, 0, 140],
//!     &[630, 210, 0],
//! ])?;
//!
//! let cd = Rule::new(RuleSpec::ConcedeAndDivide)?;
//! assert_eq!(cd.evaluate(&a)?.shares(), &[rat(3260), rat(640), rat(60)]);
//!
//! let signature = decompose(&cd, 3)?;
//! assert!(signature.is_consistent());
//! assert_eq!((signature.x(), signature.y()), (&rat(1), &rat(1)));
//!
//! let regions = classify(signature.x(), signature.y(), 3);
//! assert!(regions.contains(FamilyId::ConcedeAndDivide));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod axioms;
pub mod characterize;
pub mod counterexamples;
pub mod io;
pub mod problem;
pub mod rational;
pub mod rules;

pub use axioms::{
    audit, check_instance, falsify, qualifying_pairs, AuditEntry, AuditReport, AxiomError,
    AxiomId, AxiomInstance, AxiomWitness, CheckOutcome, FalsifyOutcome, GeneratorConfig,
};
pub use characterize::{
    classify, decompose, equivalent, reconstruct, Classification, Decomposition, Equivalence,
    FamilyId, FamilyMembership,
};
pub use counterexamples::CounterexampleId;
pub use problem::{Allocation, Permutation, Problem, ProblemError, Team};
pub use rational::{parse_rat, rat, ratio, to_decimal_string, to_token, Rat};
pub use rules::{Rule, RuleError, RuleSpec, UnitValues};
