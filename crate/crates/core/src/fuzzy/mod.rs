//! Zero-order Takagi-Sugeno-Kang fuzzy inference.
//!
//! Crisp inputs are clamped to each variable's universe and fuzzified with
//! piecewise-linear membership functions. Each rule's firing strength is the
//! t-norm (product by default) of its antecedent degrees, and every output is
//! the firing-strength-weighted average of the rule constants, clamped to the
//! output's declared range.

mod membership;
mod system;
mod variable;

pub use membership::MembershipFunction;
pub use system::{
    firing_strength, Condition, Fuzzified, FuzzyInferenceSystem, Location, OutputVariable, TNorm,
    TskRule, Violation, ViolationKind, PARTITION_TOLERANCE,
};
pub use variable::{LinguisticVariable, Term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("expected {expected} crisp inputs, got {got}")]
    InputArity { expected: usize, got: usize },
    #[error("missing crisp value for input `{0}`")]
    MissingInput(String),
    #[error("crisp value for input `{0}` is not finite")]
    NonFiniteInput(String),
    #[error("rule references unknown term `{variable} is {label}`")]
    UnknownTerm { variable: String, label: String },
    #[error("rule has no conditions")]
    EmptyAntecedent,
    #[error("rule does not assign output `{0}`")]
    MissingConsequent(String),
    #[error("no rule fired")]
    NoRuleFired,
    #[error("invalid fuzzy system: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
