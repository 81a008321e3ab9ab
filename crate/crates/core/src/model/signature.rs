use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// One party (or one measurement slot) of the experiment: its name, the
/// measurements that may be chosen there, and the possible outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    name: String,
    measurements: Vec<String>,
    outcomes: Vec<String>,
}

impl Site {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        measurements: impl IntoIterator<Item = S>,
        outcomes: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let site = Site {
            name: name.into(),
            measurements: measurements.into_iter().map(Into::into).collect(),
            outcomes: outcomes.into_iter().map(Into::into).collect(),
        };
        site.validate()?;
        Ok(site)
    }

    fn validate(&self) -> Result<()> {
        if self.measurements.is_empty() || self.outcomes.is_empty() {
            return Err(Error::EmptySite(self.name.clone()));
        }
        unique("measurement", &self.measurements)?;
        unique("outcome", &self.outcomes)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn measurements(&self) -> &[String] {
        &self.measurements
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn measurement_index(&self, label: &str) -> Result<usize> {
        position("measurement", &self.measurements, label)
    }

    pub fn outcome_index(&self, label: &str) -> Result<usize> {
        position("outcome", &self.outcomes, label)
    }
}

pub(crate) fn unique(kind: &'static str, labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel {
                kind,
                label: l.clone(),
            });
        }
    }
    Ok(())
}

pub(crate) fn position(kind: &'static str, labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::UnknownLabel {
            kind,
            label: label.to_string(),
        })
}

/// A choice of one measurement per site, stored as indices in site order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context(pub Vec<usize>);

/// One outcome per site, stored as indices in site order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeTuple(pub Vec<usize>);

/// The ordered list of sites shared by an empirical model and its
/// hidden-variable completions. Site names are unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    sites: Vec<Site>,
}

impl Signature {
    pub fn new(sites: Vec<Site>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::NoSites);
        }
        for s in &sites {
            s.validate()?;
        }
        let names: Vec<String> = sites.iter().map(|s| s.name.clone()).collect();
        unique("site", &names)?;
        Ok(Signature { sites })
    }

    /// `n` copies of a site with the same measurement and outcome labels,
    /// named by `names`.
    pub fn homogeneous(names: &[&str], measurements: &[&str], outcomes: &[&str]) -> Result<Self> {
        let sites = names
            .iter()
            .map(|n| Site::new(*n, measurements.iter().copied(), outcomes.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Signature::new(sites)
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn site_index(&self, name: &str) -> Result<usize> {
        self.sites
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::UnknownLabel {
                kind: "site",
                label: name.to_string(),
            })
    }

    pub fn measurement_radices(&self) -> Vec<usize> {
        self.sites.iter().map(|s| s.measurements.len()).collect()
    }

    pub fn outcome_radices(&self) -> Vec<usize> {
        self.sites.iter().map(|s| s.outcomes.len()).collect()
    }

    /// Resolves a full context from measurement labels in site order.
    pub fn context(&self, labels: &[&str]) -> Result<Context> {
        self.check_arity(labels.len())?;
        labels
            .iter()
            .zip(&self.sites)
            .map(|(l, s)| s.measurement_index(l))
            .collect::<Result<_>>()
            .map(Context)
    }

    /// Resolves a full outcome tuple from outcome labels in site order.
    pub fn outcomes(&self, labels: &[&str]) -> Result<OutcomeTuple> {
        self.check_arity(labels.len())?;
        labels
            .iter()
            .zip(&self.sites)
            .map(|(l, s)| s.outcome_index(l))
            .collect::<Result<_>>()
            .map(OutcomeTuple)
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.sites.len() {
            return Err(Error::Arity {
                expected: self.sites.len(),
                found,
            });
        }
        Ok(())
    }

    pub(crate) fn context_in_range(&self, c: &Context) -> bool {
        c.0.len() == self.len()
            && c.0
                .iter()
                .zip(&self.sites)
                .all(|(&i, s)| i < s.measurements.len())
    }

    pub(crate) fn outcome_in_range(&self, o: &OutcomeTuple) -> bool {
        o.0.len() == self.len()
            && o.0
                .iter()
                .zip(&self.sites)
                .all(|(&i, s)| i < s.outcomes.len())
    }

    /// Every context in lexicographic order of declared measurement labels.
    pub fn contexts(&self) -> impl Iterator<Item = Context> {
        Odometer::new(self.measurement_radices()).map(Context)
    }

    /// Every outcome tuple in lexicographic order of declared outcome labels.
    pub fn outcome_tuples(&self) -> impl Iterator<Item = OutcomeTuple> {
        Odometer::new(self.outcome_radices()).map(OutcomeTuple)
    }

    pub fn measurement_label(&self, site: usize, m: usize) -> &str {
        &self.sites[site].measurements[m]
    }

    pub fn outcome_label(&self, site: usize, o: usize) -> &str {
        &self.sites[site].outcomes[o]
    }

    pub fn context_labels(&self, c: &Context) -> Vec<String> {
        c.0.iter()
            .enumerate()
            .map(|(s, &m)| self.measurement_label(s, m).to_string())
            .collect()
    }

    pub fn outcome_labels(&self, o: &OutcomeTuple) -> Vec<String> {
        o.0.iter()
            .enumerate()
            .map(|(s, &x)| self.outcome_label(s, x).to_string())
            .collect()
    }

    /// `Ann:A, Bob:B`
    pub fn describe_context(&self, c: &Context) -> String {
        c.0.iter()
            .enumerate()
            .map(|(s, &m)| format!("{}:{}", self.sites[s].name, self.measurement_label(s, m)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// `Ann=+, Bob=-`
    pub fn describe_outcomes(&self, o: &OutcomeTuple) -> String {
        o.0.iter()
            .enumerate()
            .map(|(s, &x)| self.describe_outcome(s, x))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn describe_outcome(&self, site: usize, o: usize) -> String {
        format!("{}={}", self.sites[site].name, self.outcome_label(site, o))
    }

    pub fn describe_measurement(&self, site: usize, m: usize) -> String {
        format!(
            "{}:{}",
            self.sites[site].name,
            self.measurement_label(site, m)
        )
    }

    /// Exchangeability needs every site to carry identical measurement and
    /// outcome lists.
    pub fn is_homogeneous(&self) -> bool {
        let first = &self.sites[0];
        self.sites
            .iter()
            .all(|s| s.measurements == first.measurements && s.outcomes == first.outcomes)
    }

    /// Number of points in Ψ, the product of all measurement and outcome sets.
    pub fn psi_size(&self) -> u128 {
        self.sites
            .iter()
            .map(|s| (s.measurements.len() * s.outcomes.len()) as u128)
            .fold(1u128, |acc, n| acc.saturating_mul(n))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sites.iter().enumerate() {
            if i > 0 {
                write!(f, " × ")?;
            }
            write!(
                f,
                "{}[{} | {}]",
                s.name,
                s.measurements.join(","),
                s.outcomes.join(",")
            )?;
        }
        Ok(())
    }
}

/// Mixed-radix counter yielding every index vector in lexicographic order
/// (last position fastest).
#[derive(Clone, Debug)]
pub struct Odometer {
    radices: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(radices: Vec<usize>) -> Self {
        let current = if radices.contains(&0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        Odometer { radices, current }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.radices[pos] {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_is_lexicographic() {
        let all: Vec<_> = Odometer::new(vec![2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
        assert_eq!(Odometer::new(vec![]).count(), 1);
    }

    #[test]
    fn rejects_duplicate_and_empty_labels() {
        assert!(matches!(
            Site::new("a", ["A", "A"], ["+", "-"]),
            Err(Error::DuplicateLabel { .. })
        ));
        assert!(matches!(
            Site::new("a", Vec::<&str>::new(), vec!["+"]),
            Err(Error::EmptySite(_))
        ));
        let s = Site::new("a", ["A"], ["+"]).unwrap();
        assert!(matches!(
            Signature::new(vec![s.clone(), s]),
            Err(Error::DuplicateLabel { kind: "site", .. })
        ));
        assert!(matches!(Signature::new(vec![]), Err(Error::NoSites)));
    }

    #[test]
    fn resolves_labels() {
        let sig = Signature::homogeneous(&["A", "B"], &["1", "2", "3"], &["+", "-"]).unwrap();
        assert_eq!(sig.context(&["2", "3"]).unwrap(), Context(vec![1, 2]));
        assert_eq!(sig.outcomes(&["-", "+"]).unwrap(), OutcomeTuple(vec![1, 0]));
        assert!(matches!(
            sig.context(&["2", "9"]),
            Err(Error::UnknownLabel {
                kind: "measurement",
                ..
            })
        ));
        assert!(matches!(sig.outcomes(&["+"]), Err(Error::Arity { .. })));
        assert_eq!(sig.contexts().count(), 9);
        assert!(sig.is_homogeneous());
        assert_eq!(sig.psi_size(), 36);
    }
}
