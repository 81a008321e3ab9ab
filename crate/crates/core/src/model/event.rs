use crate::error::{Error, Result};
use crate::model::signature::{position, Context, OutcomeTuple, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
enum SiteRef {
    Name(String),
    Index(usize),
}

/// A partial assignment of outcome, measurement and hidden-variable slots,
/// written with labels. The empty event is the whole space.
///
/// ```
/// use hvw::model::Event;
/// let e = Event::new().context(&["A", "B"]).outcome("Ann", "+");
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Event {
    outcomes: Vec<(SiteRef, String)>,
    measurements: Vec<(SiteRef, String)>,
    lambda: Vec<String>,
}

impl Event {
    pub fn new() -> Self {
        Event::default()
    }

    pub fn outcome(mut self, site: &str, label: &str) -> Self {
        self.outcomes
            .push((SiteRef::Name(site.to_string()), label.to_string()));
        self
    }

    pub fn measurement(mut self, site: &str, label: &str) -> Self {
        self.measurements
            .push((SiteRef::Name(site.to_string()), label.to_string()));
        self
    }

    /// Fixes every site's measurement, labels given in site order.
    pub fn context(mut self, labels: &[&str]) -> Self {
        for (i, l) in labels.iter().enumerate() {
            self.measurements.push((SiteRef::Index(i), l.to_string()));
        }
        self
    }

    /// Fixes every site's outcome, labels given in site order.
    pub fn outcomes(mut self, labels: &[&str]) -> Self {
        for (i, l) in labels.iter().enumerate() {
            self.outcomes.push((SiteRef::Index(i), l.to_string()));
        }
        self
    }

    pub fn lambda(mut self, label: &str) -> Self {
        self.lambda.push(label.to_string());
        self
    }

    /// Intersection of two events.
    pub fn and(&self, other: &Event) -> Event {
        let mut e = self.clone();
        e.outcomes.extend(other.outcomes.iter().cloned());
        e.measurements.extend(other.measurements.iter().cloned());
        e.lambda.extend(other.lambda.iter().cloned());
        e
    }

    /// Resolves labels against a signature (and hidden-variable labels, if any).
    pub fn resolve(&self, sig: &Signature, lambdas: Option<&[String]>) -> Result<Cylinder> {
        let mut cyl = Cylinder::everything(sig.len());
        let site_of = |r: &SiteRef| -> Result<usize> {
            match r {
                SiteRef::Name(n) => sig.site_index(n),
                SiteRef::Index(i) if *i < sig.len() => Ok(*i),
                SiteRef::Index(i) => Err(Error::Arity {
                    expected: sig.len(),
                    found: i + 1,
                }),
            }
        };
        for (r, label) in &self.outcomes {
            let s = site_of(r)?;
            let o = sig.sites()[s].outcome_index(label)?;
            cyl.fix(Slot::Outcome(s), o);
        }
        for (r, label) in &self.measurements {
            let s = site_of(r)?;
            let m = sig.sites()[s].measurement_index(label)?;
            cyl.fix(Slot::Measurement(s), m);
        }
        for label in &self.lambda {
            let l = match lambdas {
                Some(ls) => position("hidden-variable", ls, label)?,
                None => {
                    return Err(Error::UnknownLabel {
                        kind: "hidden-variable",
                        label: label.clone(),
                    })
                }
            };
            cyl.fix(Slot::Lambda, l);
        }
        Ok(cyl)
    }
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Outcome(usize),
    Measurement(usize),
    Lambda,
}

/// An event in index form: each slot is either free or fixed. A cylinder
/// that fixes one slot to two different values is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub outcomes: Vec<Option<usize>>,
    pub measurements: Vec<Option<usize>>,
    pub lambda: Option<usize>,
    pub empty: bool,
}

impl Cylinder {
    pub fn everything(sites: usize) -> Self {
        Cylinder {
            outcomes: vec![None; sites],
            measurements: vec![None; sites],
            lambda: None,
            empty: false,
        }
    }

    pub fn at_context(c: &Context) -> Self {
        Cylinder {
            outcomes: vec![None; c.0.len()],
            measurements: c.0.iter().copied().map(Some).collect(),
            lambda: None,
            empty: false,
        }
    }

    pub fn with_lambda(mut self, l: usize) -> Self {
        self.fix(Slot::Lambda, l);
        self
    }

    pub fn with_outcome(mut self, site: usize, o: usize) -> Self {
        self.fix(Slot::Outcome(site), o);
        self
    }

    pub fn with_outcomes(mut self, o: &OutcomeTuple) -> Self {
        for (s, &x) in o.0.iter().enumerate() {
            self.fix(Slot::Outcome(s), x);
        }
        self
    }

    fn fix(&mut self, slot: Slot, value: usize) {
        let cell = match slot {
            Slot::Outcome(s) => &mut self.outcomes[s],
            Slot::Measurement(s) => &mut self.measurements[s],
            Slot::Lambda => &mut self.lambda,
        };
        match cell {
            Some(v) if *v != value => self.empty = true,
            _ => *cell = Some(value),
        }
    }

    pub fn intersect(&self, other: &Cylinder) -> Cylinder {
        let mut out = self.clone();
        out.empty |= other.empty;
        for (s, o) in other.outcomes.iter().enumerate() {
            if let Some(o) = o {
                out.fix(Slot::Outcome(s), *o);
            }
        }
        for (s, m) in other.measurements.iter().enumerate() {
            if let Some(m) = m {
                out.fix(Slot::Measurement(s), *m);
            }
        }
        if let Some(l) = other.lambda {
            out.fix(Slot::Lambda, l);
        }
        out
    }

    pub fn contains(&self, c: &Context, o: &OutcomeTuple, lambda: Option<usize>) -> bool {
        if self.empty {
            return false;
        }
        let slot_ok = |fixed: &Option<usize>, v: usize| fixed.is_none_or(|f| f == v);
        self.measurements
            .iter()
            .zip(&c.0)
            .all(|(f, &v)| slot_ok(f, v))
            && self.outcomes.iter().zip(&o.0).all(|(f, &v)| slot_ok(f, v))
            && match (self.lambda, lambda) {
                (None, _) => true,
                (Some(f), Some(v)) => f == v,
                (Some(_), None) => false,
            }
    }

    pub fn describe(&self, sig: &Signature, lambdas: Option<&[String]>) -> String {
        let mut parts = Vec::new();
        for (s, m) in self.measurements.iter().enumerate() {
            if let Some(m) = m {
                parts.push(sig.describe_measurement(s, *m));
            }
        }
        for (s, o) in self.outcomes.iter().enumerate() {
            if let Some(o) = o {
                parts.push(sig.describe_outcome(s, *o));
            }
        }
        if let Some(l) = self.lambda {
            let label = lambdas
                .and_then(|ls| ls.get(l))
                .map(String::as_str)
                .unwrap_or("?");
            parts.push(format!("λ={label}"));
        }
        if self.empty {
            parts.push("∅".to_string());
        }
        format!("{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::homogeneous(&["Ann", "Bob"], &["1", "2"], &["+", "-"]).unwrap()
    }

    #[test]
    fn resolves_by_name_and_position() {
        let c = Event::new()
            .context(&["2", "1"])
            .outcome("Bob", "-")
            .resolve(&sig(), None)
            .unwrap();
        assert_eq!(c.measurements, vec![Some(1), Some(0)]);
        assert_eq!(c.outcomes, vec![None, Some(1)]);
        assert!(!c.empty);
    }

    #[test]
    fn conflicting_slots_make_the_event_empty() {
        let c = Event::new()
            .outcome("Ann", "+")
            .and(&Event::new().outcome("Ann", "-"))
            .resolve(&sig(), None)
            .unwrap();
        assert!(c.empty);
        assert!(!c.contains(&Context(vec![0, 0]), &OutcomeTuple(vec![0, 0]), None));
    }

    #[test]
    fn unknown_labels_are_input_errors() {
        assert!(Event::new()
            .outcome("Eve", "+")
            .resolve(&sig(), None)
            .is_err());
        assert!(Event::new()
            .measurement("Ann", "7")
            .resolve(&sig(), None)
            .is_err());
        assert!(Event::new().lambda("x").resolve(&sig(), None).is_err());
        let ls = vec!["x".to_string()];
        assert!(Event::new().lambda("x").resolve(&sig(), Some(&ls)).is_ok());
    }
}
