//! Dempster-Shafer evidence combination next to probabilistic logic.
//!
//! - [`frame`]: frames of discernment, subsets as bit masks, partitions.
//! - [`mass`]: mass functions, Dempster's rule, belief and plausibility.
//! - [`prob`]: joint assignments over `frame x {E1,E2 cells}`, the agreement
//!   conditions, and the members of the constrained set used to test them.
//! - [`lp`]: exact-rational LP bounds for probabilities and conditionals.
//! - [`agreement`]: the agreement identities and the divergence scenarios.
//!
//! All arithmetic is exact ([`Rational`] is a big-integer fraction).

pub mod agreement;
pub mod error;
pub mod frame;
pub mod lp;
pub mod mass;
pub mod prob;
pub mod rational;

pub use agreement::{
    agreement_report, bipartite_spec, classify_confirmation, confirmation_ratio,
    dependence_divergence, lottery, lottery_explicit, nonpartition_witness, odds_swamp,
    posterior_partition, AgreementReport, BlockAgreement, Confirmation, DependenceDivergence,
    LotteryCrossCheck, LotteryResult, NonpartitionWitness, OddsSwamp,
};
pub use error::{Error, Result};
pub use frame::{is_partition, Frame, Partition, SubsetMask, MAX_FRAME_SIZE};
pub use lp::{
    agreement_linear_fragment, cond_prob_bounds, linearize_conditional, prob_bounds, solve_lp,
    ConditionalBounds, ConstraintSystem, Interval, LinearConstraint, LpSolution, Relation, Sense,
    Statement,
};
pub use mass::{combine, CombinationResult, MassFunction};
pub use prob::{
    check_agreement_conditions, check_conditions, construct_member, extremal_member,
    random_composition, random_spec, sample_members, AgreementSpec, CellSet, ConditionCheck,
    ConditionReport, Event, EvidenceCell, EvidenceParams, ProbAssignment, Violation,
    CELLS_PER_ELEMENT,
};
pub use rational::{parse_rational, ratio, Rational};
