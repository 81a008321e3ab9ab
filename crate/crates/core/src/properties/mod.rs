//! Decidable hidden-variable properties.
//!
//! Every checker is exact and returns a [`PropertyVerdict`]; on failure the
//! witness names the conditioning event and the two unequal values. A
//! condition guarded by "whenever ... > 0" that never fires holds vacuously.
//! Where a definition is stated for one site "and similarly" for the
//! others, the checkers apply it symmetrically to every site.

mod empirical;
mod hidden;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use empirical::{
    check_exchangeability, check_non_contextuality, non_contextuality_violation, NcViolation,
    Permutation,
};
pub use hidden::{
    check_lambda_independence, check_locality, check_outcome_independence,
    check_parameter_independence, check_single_valuedness, check_strong_determinism,
    check_weak_determinism, outcome_independence_product_form,
};

use crate::error::{Error, Result};
use crate::model::{HiddenVariableModel, Model, PropertyVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    SingleValuedness,
    LambdaIndependence,
    StrongDeterminism,
    WeakDeterminism,
    OutcomeIndependence,
    ParameterIndependence,
    Locality,
    NonContextuality,
    Exchangeability,
}

impl PropertyId {
    pub const ALL: [PropertyId; 9] = [
        PropertyId::SingleValuedness,
        PropertyId::LambdaIndependence,
        PropertyId::StrongDeterminism,
        PropertyId::WeakDeterminism,
        PropertyId::OutcomeIndependence,
        PropertyId::ParameterIndependence,
        PropertyId::Locality,
        PropertyId::NonContextuality,
        PropertyId::Exchangeability,
    ];

    /// The properties that apply to hidden-variable models.
    pub const HIDDEN: [PropertyId; 7] = [
        PropertyId::SingleValuedness,
        PropertyId::LambdaIndependence,
        PropertyId::StrongDeterminism,
        PropertyId::WeakDeterminism,
        PropertyId::OutcomeIndependence,
        PropertyId::ParameterIndependence,
        PropertyId::Locality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::SingleValuedness => "single-valuedness",
            PropertyId::LambdaIndependence => "lambda-independence",
            PropertyId::StrongDeterminism => "strong-determinism",
            PropertyId::WeakDeterminism => "weak-determinism",
            PropertyId::OutcomeIndependence => "outcome-independence",
            PropertyId::ParameterIndependence => "parameter-independence",
            PropertyId::Locality => "locality",
            PropertyId::NonContextuality => "non-contextuality",
            PropertyId::Exchangeability => "exchangeability",
        }
    }

    /// Non-Contextuality and Exchangeability are properties of empirical
    /// models; all others of hidden-variable models.
    pub fn applies_to_hidden(self) -> bool {
        !matches!(
            self,
            PropertyId::NonContextuality | PropertyId::Exchangeability
        )
    }

    pub fn check_hidden(self, h: &HiddenVariableModel) -> Result<PropertyVerdict> {
        Ok(match self {
            PropertyId::SingleValuedness => check_single_valuedness(h),
            PropertyId::LambdaIndependence => check_lambda_independence(h),
            PropertyId::StrongDeterminism => check_strong_determinism(h),
            PropertyId::WeakDeterminism => check_weak_determinism(h),
            PropertyId::OutcomeIndependence => check_outcome_independence(h),
            PropertyId::ParameterIndependence => check_parameter_independence(h),
            PropertyId::Locality => check_locality(h),
            other => {
                return Err(Error::NotApplicable(format!(
                    "{} is a property of empirical models",
                    other.name()
                )))
            }
        })
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown property `{s}`")))
    }
}

/// Runs one checker on a model of the matching kind.
pub fn check(property: PropertyId, model: &Model) -> Result<PropertyVerdict> {
    match (model, property) {
        (Model::Hidden(h), p) => p.check_hidden(h),
        (Model::Empirical(e), PropertyId::NonContextuality) => Ok(check_non_contextuality(e)),
        (Model::Empirical(e), PropertyId::Exchangeability) => check_exchangeability(e),
        (Model::Empirical(_), p) => Err(Error::NotApplicable(format!(
            "{} is a property of hidden-variable models; this is an empirical model",
            p.name()
        ))),
    }
}
