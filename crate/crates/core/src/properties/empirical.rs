use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    Context, EmpiricalModel, JointMeasure, OutcomeTuple, PropertyVerdict, Signature, Slice,
};
use crate::rational::Rational;

/// A failure of Non-Contextuality: one site's outcome probability for one
/// measurement differs between two non-null contexts containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcViolation {
    pub site: String,
    pub measurement: String,
    pub outcome: String,
    pub context1: Vec<String>,
    pub context2: Vec<String>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl NcViolation {
    fn condition(&self) -> String {
        format!(
            "q({s}={o} | {c1}) = q({s}={o} | {c2})",
            s = self.site,
            o = self.outcome,
            c1 = self.context1.join(","),
            c2 = self.context2.join(",")
        )
    }
}

impl fmt::Display for NcViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} vs {})", self.condition(), self.lhs, self.rhs)
    }
}

/// The first Non-Contextuality violation, scanning sites, then measurements,
/// then contexts containing the measurement (each compared with the first
/// such non-null context), then outcomes.
pub fn non_contextuality_violation(e: &EmpiricalModel) -> Option<NcViolation> {
    let sig = e.signature();
    let slices = e.context_slices();
    for (s, site) in sig.sites().iter().enumerate() {
        let k = site.outcomes().len();
        let mut by_measurement: BTreeMap<usize, Vec<(&Context, &Slice)>> = BTreeMap::new();
        for (c, slice) in &slices {
            by_measurement.entry(c.0[s]).or_default().push((c, slice));
        }
        for (m, group) in by_measurement {
            let (c1, first) = group[0];
            let base = first.site_marginal(s, k);
            for &(c2, slice) in &group[1..] {
                let other = slice.site_marginal(s, k);
                if let Some(o) = (0..k).find(|&o| base[o] != other[o]) {
                    return Some(NcViolation {
                        site: site.name().to_string(),
                        measurement: sig.measurement_label(s, m).to_string(),
                        outcome: sig.outcome_label(s, o).to_string(),
                        context1: sig.context_labels(c1),
                        context2: sig.context_labels(c2),
                        lhs: base[o].clone(),
                        rhs: other[o].clone(),
                    });
                }
            }
        }
    }
    None
}

pub fn check_non_contextuality(e: &EmpiricalModel) -> PropertyVerdict {
    match non_contextuality_violation(e) {
        None => PropertyVerdict::holds(),
        Some(v) => PropertyVerdict::fails(v.condition(), v.lhs, v.rhs),
    }
}

/// A bijection on site indices: site `s` moves to position `self.0[s]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let seen: BTreeSet<_> = image.iter().collect();
        if seen.len() != image.len() || image.iter().any(|&i| i >= image.len()) {
            return Err(Error::Usage(format!("{image:?} is not a permutation")));
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// All permutations of `n` sites in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(Permutation)
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    /// `out[π(s)] = v[s]`.
    pub fn apply(&self, v: &[usize]) -> Vec<usize> {
        let mut out = vec![0; v.len()];
        for (s, &x) in v.iter().enumerate() {
            out[self.0[s]] = x;
        }
        out
    }
}

/// For every site permutation π and every context C: C is non-null iff
/// π(C) is, and q(o | C) = q(π(o) | π(C)). Requires identical measurement
/// and outcome lists at every site.
pub fn check_exchangeability(e: &EmpiricalModel) -> Result<PropertyVerdict> {
    let sig = e.signature();
    if !sig.is_homogeneous() {
        return Err(Error::Heterogeneous(
            "sites must share identical measurement and outcome lists".into(),
        ));
    }
    // Scanning non-null contexts suffices: a null C with non-null π(C) shows
    // up under π⁻¹ as a non-null context with a null image.
    let slices = e.context_slices();
    for pi in Permutation::all(sig.len()).skip(1) {
        for (c, a) in &slices {
            let pc = Context(pi.apply(&c.0));
            match slices.get(&pc) {
                Some(b) => {
                    let outcomes: BTreeSet<OutcomeTuple> = a
                        .weights
                        .keys()
                        .cloned()
                        .chain(b.weights.keys().map(|o| inverse(&pi, o)))
                        .collect();
                    for o in outcomes {
                        let po = OutcomeTuple(pi.apply(&o.0));
                        let (x, y) = (a.conditional(&o), b.conditional(&po));
                        if x != y {
                            return Ok(PropertyVerdict::fails(
                                format!(
                                    "{}: q({} | {}) = q({} | {})",
                                    describe_perm(sig, &pi),
                                    sig.describe_outcomes(&o),
                                    sig.describe_context(c),
                                    sig.describe_outcomes(&po),
                                    sig.describe_context(&pc)
                                ),
                                x,
                                y,
                            ));
                        }
                    }
                }
                None => {
                    return Ok(PropertyVerdict::fails(
                        format!(
                            "{}: q({}) > 0 iff q({}) > 0",
                            describe_perm(sig, &pi),
                            sig.describe_context(c),
                            sig.describe_context(&pc)
                        ),
                        a.mass.clone(),
                        Rational::zero(),
                    ));
                }
            }
        }
    }
    Ok(PropertyVerdict::holds())
}

fn inverse(pi: &Permutation, o: &OutcomeTuple) -> OutcomeTuple {
    OutcomeTuple(pi.image().iter().map(|&t| o.0[t]).collect())
}

fn describe_perm(sig: &Signature, pi: &Permutation) -> String {
    let names = sig.sites().iter().map(|s| s.name());
    let arrows = names
        .zip(pi.image())
        .map(|(n, &t)| format!("{n}→{}", sig.sites()[t].name()))
        .join(", ");
    format!("π = ({arrows})")
}
