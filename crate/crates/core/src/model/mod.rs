//! Exact finite probability models.
//!
//! An [`EmpiricalModel`] is a measure over Ψ, the product of every site's
//! outcome and measurement sets. A [`HiddenVariableModel`] is a measure over
//! Ψ × Λ for a finite set Λ of hidden-variable values. Both are stored as a
//! sparse joint weight map keyed in lexicographic (context, outcome, λ)
//! order, so every derived quantity is an exact sum of stored weights.

mod empirical;
mod equivalence;
mod event;
mod hidden;
pub mod io;
pub mod random;
mod signature;
mod verdict;

use std::collections::BTreeMap;

pub use empirical::EmpiricalModel;
pub use equivalence::{equivalent_empirical, equivalent_hvm};
pub use event::{Cylinder, Event};
pub use hidden::{project_to_empirical, HiddenVariableModel, Point};
pub use signature::{Context, Odometer, OutcomeTuple, Signature, Site};
pub use verdict::{PropertyVerdict, Witness};

pub(crate) use signature::unique;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One stored weight: context, outcome tuple, hidden-variable index (if any).
pub type Atom<'a> = (&'a Context, &'a OutcomeTuple, Option<usize>, &'a Rational);

/// Operations shared by both model kinds.
pub trait JointMeasure {
    fn signature(&self) -> &Signature;

    /// Hidden-variable labels, or `None` for an empirical model.
    fn lambda_labels(&self) -> Option<&[String]>;

    /// Nonzero weights in (context, outcome, λ) order.
    fn atoms(&self) -> Box<dyn Iterator<Item = Atom<'_>> + '_>;

    fn cylinder_prob(&self, event: &Cylinder) -> Rational {
        if event.empty {
            return Rational::zero();
        }
        self.atoms()
            .filter(|(c, o, l, _)| event.contains(c, o, *l))
            .map(|(_, _, _, w)| w)
            .sum()
    }

    /// Probability of a partial assignment: the sum over all its completions.
    fn event_prob(&self, event: &Event) -> Result<Rational> {
        let cyl = event.resolve(self.signature(), self.lambda_labels())?;
        Ok(self.cylinder_prob(&cyl))
    }

    fn cond_prob(&self, target: &Event, given: &Event) -> Result<Rational> {
        let sig = self.signature();
        let given = given.resolve(sig, self.lambda_labels())?;
        let target = target.resolve(sig, self.lambda_labels())?;
        let denom = self.cylinder_prob(&given);
        if denom.is_zero() {
            return Err(Error::NullConditioning(
                given.describe(sig, self.lambda_labels()),
            ));
        }
        Ok(self.cylinder_prob(&target.intersect(&given)) / denom)
    }

    /// Per-context slices with λ marginalised out; only non-null contexts.
    fn context_slices(&self) -> BTreeMap<Context, Slice> {
        let mut out: BTreeMap<Context, Slice> = BTreeMap::new();
        for (c, o, _, w) in self.atoms() {
            out.entry(c.clone()).or_default().add(o, w);
        }
        out
    }
}

/// The joint weights of one conditioning cell (a context, or a context and
/// a λ), keyed by outcome tuple, together with the cell's total mass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Slice {
    pub mass: Rational,
    pub weights: BTreeMap<OutcomeTuple, Rational>,
}

impl Slice {
    pub(crate) fn add(&mut self, o: &OutcomeTuple, w: &Rational) {
        self.mass += w;
        *self.weights.entry(o.clone()).or_insert_with(Rational::zero) += w;
    }

    /// Conditional probability of the outcome tuple given this cell.
    pub fn conditional(&self, o: &OutcomeTuple) -> Rational {
        match self.weights.get(o) {
            Some(w) => w / &self.mass,
            None => Rational::zero(),
        }
    }

    /// Joint weight of each outcome at one site, summed over the others.
    pub fn site_weights(&self, site: usize, outcomes: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); outcomes];
        for (o, w) in &self.weights {
            out[o.0[site]] += w;
        }
        out
    }

    /// Conditional distribution of one site's outcome given this cell.
    pub fn site_marginal(&self, site: usize, outcomes: usize) -> Vec<Rational> {
        self.site_weights(site, outcomes)
            .into_iter()
            .map(|w| w / &self.mass)
            .collect()
    }
}

/// A model read from a file: either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Empirical(EmpiricalModel),
    Hidden(HiddenVariableModel),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Empirical(_) => "empirical",
            Model::Hidden(_) => "hidden-variable",
        }
    }

    pub fn as_empirical(&self) -> Option<&EmpiricalModel> {
        match self {
            Model::Empirical(e) => Some(e),
            Model::Hidden(_) => None,
        }
    }

    pub fn as_hidden(&self) -> Option<&HiddenVariableModel> {
        match self {
            Model::Hidden(h) => Some(h),
            Model::Empirical(_) => None,
        }
    }

    /// The observable content of the model; a hidden-variable model is
    /// projected by summing out λ.
    pub fn to_empirical(&self) -> EmpiricalModel {
        match self {
            Model::Empirical(e) => e.clone(),
            Model::Hidden(h) => project_to_empirical(h),
        }
    }
}

impl From<EmpiricalModel> for Model {
    fn from(e: EmpiricalModel) -> Self {
        Model::Empirical(e)
    }
}

impl From<HiddenVariableModel> for Model {
    fn from(h: HiddenVariableModel) -> Self {
        Model::Hidden(h)
    }
}

impl JointMeasure for Model {
    fn signature(&self) -> &Signature {
        match self {
            Model::Empirical(e) => e.signature(),
            Model::Hidden(h) => h.signature(),
        }
    }

    fn lambda_labels(&self) -> Option<&[String]> {
        match self {
            Model::Empirical(e) => e.lambda_labels(),
            Model::Hidden(h) => h.lambda_labels(),
        }
    }

    fn atoms(&self) -> Box<dyn Iterator<Item = Atom<'_>> + '_> {
        match self {
            Model::Empirical(e) => e.atoms(),
            Model::Hidden(h) => h.atoms(),
        }
    }
}

/// Checks nonnegativity and total mass 1 over labelled weights.
pub(crate) fn validate_weights<'a>(
    weights: impl IntoIterator<Item = (String, &'a Rational)>,
) -> Result<()> {
    let mut total = Rational::zero();
    for (at, w) in weights {
        if w.is_negative() {
            return Err(Error::NegativeWeight {
                at,
                weight: Box::new(w.clone()),
            });
        }
        total += w;
    }
    if !total.is_one() {
        let deficit = Rational::one() - &total;
        return Err(Error::WeightSum {
            total: Box::new(total),
            deficit: Box::new(deficit),
        });
    }
    Ok(())
}
