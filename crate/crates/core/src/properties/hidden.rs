use std::collections::BTreeMap;

use crate::model::{Context, HiddenVariableModel, JointMeasure, PropertyVerdict, Signature, Slice};
use crate::rational::Rational;

/// Joint weights of one site's outcome at (site, measurement, λ), with all
/// other sites' measurements and outcomes summed out.
struct SiteMarginals {
    table: BTreeMap<(usize, usize, usize), (Rational, Vec<Rational>)>,
}

impl SiteMarginals {
    fn new(h: &HiddenVariableModel) -> Self {
        let sig = h.signature();
        let mut table: BTreeMap<_, (Rational, Vec<Rational>)> = BTreeMap::new();
        for (pt, w) in h.weights() {
            for (s, (&m, &o)) in pt.context.0.iter().zip(&pt.outcome.0).enumerate() {
                let entry = table.entry((s, m, pt.lambda)).or_insert_with(|| {
                    (
                        Rational::zero(),
                        vec![Rational::zero(); sig.sites()[s].outcomes().len()],
                    )
                });
                entry.0 += w;
                entry.1[o] += w;
            }
        }
        SiteMarginals { table }
    }

    /// p(o | M, λ) at site `s`; `None` when p(M, λ) = 0.
    fn conditional(&self, s: usize, m: usize, l: usize, o: usize) -> Option<Rational> {
        self.table.get(&(s, m, l)).map(|(mass, w)| &w[o] / mass)
    }
}

fn lambda_desc(h: &HiddenVariableModel, l: usize) -> String {
    format!("λ={}", h.lambdas()[l])
}

fn cell_desc(sig: &Signature, h: &HiddenVariableModel, c: &Context, l: usize) -> String {
    format!("{}, {}", sig.describe_context(c), lambda_desc(h, l))
}

/// |Λ| = 1.
pub fn check_single_valuedness(h: &HiddenVariableModel) -> PropertyVerdict {
    let n = h.lambdas().len();
    if n == 1 {
        PropertyVerdict::holds()
    } else {
        PropertyVerdict::fails("|Λ| = 1", Rational::from(n as i64), Rational::one())
    }
}

/// p(λ | C) is the same for every non-null context C. Each context is
/// compared with the first non-null one.
pub fn check_lambda_independence(h: &HiddenVariableModel) -> PropertyVerdict {
    let sig = h.signature();
    let contexts = h.context_slices();
    let mut cells: BTreeMap<&Context, Vec<Rational>> = BTreeMap::new();
    for (pt, w) in h.weights() {
        cells
            .entry(&pt.context)
            .or_insert_with(|| vec![Rational::zero(); h.lambdas().len()])[pt.lambda] += w;
    }
    let dist = |c: &Context| -> Vec<Rational> {
        let mass = &contexts[c].mass;
        cells[c].iter().map(|w| w / mass).collect()
    };
    let mut iter = contexts.keys();
    let Some(reference) = iter.next() else {
        return PropertyVerdict::holds();
    };
    let base = dist(reference);
    for c in iter {
        for (l, (x, y)) in base.iter().zip(dist(c)).enumerate() {
            if *x != y {
                return PropertyVerdict::fails(
                    format!(
                        "p({} | {}) = p({} | {})",
                        lambda_desc(h, l),
                        sig.describe_context(reference),
                        lambda_desc(h, l),
                        sig.describe_context(c)
                    ),
                    x.clone(),
                    y,
                );
            }
        }
    }
    PropertyVerdict::holds()
}

/// Whenever p(M, λ) > 0 for a single measurement M at some site, one outcome
/// of that site has p(o | M, λ) = 1. The witness reports the largest
/// conditional, which falls short of 1.
pub fn check_strong_determinism(h: &HiddenVariableModel) -> PropertyVerdict {
    let sig = h.signature();
    for (&(s, m, l), (mass, weights)) in &SiteMarginals::new(h).table {
        let (best, w) = argmax(weights);
        if w != mass {
            return PropertyVerdict::fails(
                format!(
                    "p({} | {}, {}) = 1",
                    sig.describe_outcome(s, best),
                    sig.describe_measurement(s, m),
                    lambda_desc(h, l)
                ),
                w / mass,
                Rational::one(),
            );
        }
    }
    PropertyVerdict::holds()
}

/// Whenever p(C, λ) > 0, one outcome tuple has conditional probability 1.
pub fn check_weak_determinism(h: &HiddenVariableModel) -> PropertyVerdict {
    let sig = h.signature();
    for ((c, l), slice) in h.cell_slices() {
        let (o, w) = slice
            .weights
            .iter()
            .fold(None::<(_, &Rational)>, |best, (o, w)| match best {
                Some((_, bw)) if bw >= w => best,
                _ => Some((o, w)),
            })
            .expect("non-null cell has support");
        if *w != slice.mass {
            return PropertyVerdict::fails(
                format!(
                    "p({} | {}) = 1",
                    sig.describe_outcomes(o),
                    cell_desc(sig, h, &c, l)
                ),
                w / &slice.mass,
                Rational::one(),
            );
        }
    }
    PropertyVerdict::holds()
}

/// Outcome Independence in its defining form: for every site, conditioning
/// additionally on the other sites' outcomes leaves the site's outcome
/// distribution unchanged. The product form is evaluated as well and must
/// agree.
pub fn check_outcome_independence(h: &HiddenVariableModel) -> PropertyVerdict {
    let by_definition = outcome_independence_definition(h);
    let by_product = outcome_independence_product_form(h);
    assert_eq!(
        by_definition.holds, by_product.holds,
        "the two forms of Outcome Independence disagree"
    );
    by_definition
}

fn outcome_independence_definition(h: &HiddenVariableModel) -> PropertyVerdict {
    let sig = h.signature();
    for ((c, l), slice) in h.cell_slices() {
        let marginals = site_marginals(sig, &slice);
        for o in slice.weights.keys() {
            for s in 0..sig.len() {
                // Weight of the other sites' outcomes, with site s summed out.
                let rest: Rational = slice
                    .weights
                    .iter()
                    .filter(|(o2, _)| (0..sig.len()).all(|t| t == s || o2.0[t] == o.0[t]))
                    .map(|(_, w)| w)
                    .sum();
                let lhs = &slice.weights[o] / &rest;
                let rhs = &marginals[s][o.0[s]];
                if lhs != *rhs {
                    let others = (0..sig.len())
                        .filter(|&t| t != s)
                        .map(|t| sig.describe_outcome(t, o.0[t]))
                        .collect::<Vec<_>>()
                        .join(", ");
                    return PropertyVerdict::fails(
                        format!(
                            "p({} | {}, {}, {}) = p({} | {})",
                            sig.describe_outcome(s, o.0[s]),
                            sig.describe_context(&c),
                            others,
                            lambda_desc(h, l),
                            sig.describe_outcome(s, o.0[s]),
                            cell_desc(sig, h, &c, l)
                        ),
                        lhs,
                        rhs.clone(),
                    );
                }
            }
        }
    }
    PropertyVerdict::holds()
}

/// Outcome Independence as a factorisation: whenever p(C, λ) > 0, the joint
/// outcome distribution is the product of its site marginals.
pub fn outcome_independence_product_form(h: &HiddenVariableModel) -> PropertyVerdict {
    let sig = h.signature();
    for ((c, l), slice) in h.cell_slices() {
        let marginals = site_marginals(sig, &slice);
        for o in sig.outcome_tuples() {
            let lhs = slice.conditional(&o);
            let rhs: Rational =
                o.0.iter()
                    .enumerate()
                    .fold(Rational::one(), |acc, (s, &x)| acc * &marginals[s][x]);
            if lhs != rhs {
                return PropertyVerdict::fails(
                    format!(
                        "p({} | {}) = Π p(site outcome | {})",
                        sig.describe_outcomes(&o),
                        cell_desc(sig, h, &c, l),
                        cell_desc(sig, h, &c, l)
                    ),
                    lhs,
                    rhs,
                );
            }
        }
    }
    PropertyVerdict::holds()
}

/// Whenever p(C, λ) > 0: p(o | C, λ) = p(o | M, λ) for every site, where M
/// is the site's measurement in C.
pub fn check_parameter_independence(h: &HiddenVariableModel) -> PropertyVerdict {
    let sig = h.signature();
    let single = SiteMarginals::new(h);
    for ((c, l), slice) in h.cell_slices() {
        let marginals = site_marginals(sig, &slice);
        for (s, m) in c.0.iter().copied().enumerate() {
            for (o, lhs) in marginals[s].iter().enumerate() {
                let rhs = single
                    .conditional(s, m, l, o)
                    .expect("p(M, λ) ≥ p(C, λ) > 0");
                if *lhs != rhs {
                    return PropertyVerdict::fails(
                        format!(
                            "p({} | {}) = p({} | {}, {})",
                            sig.describe_outcome(s, o),
                            cell_desc(sig, h, &c, l),
                            sig.describe_outcome(s, o),
                            sig.describe_measurement(s, m),
                            lambda_desc(h, l)
                        ),
                        lhs.clone(),
                        rhs,
                    );
                }
            }
        }
    }
    PropertyVerdict::holds()
}

/// Whenever p(C, λ) > 0, p(o | C, λ) = Π_s p(o_s | M_s, λ).
pub fn check_locality(h: &HiddenVariableModel) -> PropertyVerdict {
    let sig = h.signature();
    let single = SiteMarginals::new(h);
    for ((c, l), slice) in h.cell_slices() {
        for o in sig.outcome_tuples() {
            let lhs = slice.conditional(&o);
            let rhs =
                c.0.iter()
                    .zip(&o.0)
                    .enumerate()
                    .fold(Rational::one(), |acc, (s, (&m, &x))| {
                        acc * single
                            .conditional(s, m, l, x)
                            .expect("p(M, λ) ≥ p(C, λ) > 0")
                    });
            if lhs != rhs {
                return PropertyVerdict::fails(
                    format!(
                        "p({} | {}) = Π p(site outcome | site measurement, {})",
                        sig.describe_outcomes(&o),
                        cell_desc(sig, h, &c, l),
                        lambda_desc(h, l)
                    ),
                    lhs,
                    rhs,
                );
            }
        }
    }
    PropertyVerdict::holds()
}

fn site_marginals(sig: &Signature, slice: &Slice) -> Vec<Vec<Rational>> {
    sig.sites()
        .iter()
        .enumerate()
        .map(|(s, site)| slice.site_marginal(s, site.outcomes().len()))
        .collect()
}

/// First index of the largest value.
fn argmax(values: &[Rational]) -> (usize, &Rational) {
    values.iter().enumerate().fold(
        (0, &values[0]),
        |best, (i, v)| if v > best.1 { (i, v) } else { best },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{OutcomeTuple, Point};
    use crate::rational::frac;

    fn pt(c: &[usize], o: &[usize], l: usize) -> Point {
        Point {
            context: Context(c.to_vec()),
            outcome: OutcomeTuple(o.to_vec()),
            lambda: l,
        }
    }

    fn epr_sig() -> Signature {
        use crate::model::Site;
        Signature::new(vec![
            Site::new("Ann", ["A"], ["+", "-"]).unwrap(),
            Site::new("Bob", ["B"], ["+", "-"]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn singleton_anticorrelation_breaks_outcome_independence() {
        let h = HiddenVariableModel::new(
            epr_sig(),
            vec!["λ".into()],
            [
                (pt(&[0, 0], &[0, 1], 0), frac(1, 2)),
                (pt(&[0, 0], &[1, 0], 0), frac(1, 2)),
            ],
        )
        .unwrap();
        let v = check_outcome_independence(&h);
        assert_eq!(v.witness_values(), Some((&frac(1, 1), &frac(1, 2))));
        assert!(!outcome_independence_product_form(&h).holds);
        assert!(check_parameter_independence(&h).holds);
        assert!(!check_locality(&h).holds);
        assert!(!check_strong_determinism(&h).holds);
        assert!(!check_weak_determinism(&h).holds);
        assert!(check_single_valuedness(&h).holds);
        assert!(check_lambda_independence(&h).holds);
    }

    #[test]
    fn split_lambda_is_deterministic() {
        let h = HiddenVariableModel::new(
            epr_sig(),
            vec!["l1".into(), "l2".into()],
            [
                (pt(&[0, 0], &[0, 1], 0), frac(1, 2)),
                (pt(&[0, 0], &[1, 0], 1), frac(1, 2)),
            ],
        )
        .unwrap();
        for check in [
            check_strong_determinism,
            check_weak_determinism,
            check_outcome_independence,
            check_parameter_independence,
            check_locality,
            check_lambda_independence,
        ] {
            assert!(check(&h).holds);
        }
        assert_eq!(
            check_single_valuedness(&h).witness_values(),
            Some((&frac(2, 1), &frac(1, 1)))
        );
    }

    #[test]
    fn rigged_parameter_dependence() {
        use crate::model::Site;
        let sig = Signature::new(vec![
            Site::new("Ann", ["A"], ["+", "-"]).unwrap(),
            Site::new("Bob", ["B", "B'"], ["+", "-"]).unwrap(),
        ])
        .unwrap();
        // Ann answers + when Bob measures B and - when he measures B'.
        let h = HiddenVariableModel::new(
            sig,
            vec!["λ".into()],
            [
                (pt(&[0, 0], &[0, 0], 0), frac(1, 2)),
                (pt(&[0, 1], &[1, 0], 0), frac(1, 2)),
            ],
        )
        .unwrap();
        let v = check_parameter_independence(&h);
        assert_eq!(v.witness_values(), Some((&frac(1, 1), &frac(1, 2))));
        assert!(check_outcome_independence(&h).holds);
        assert!(!check_locality(&h).holds);
        assert!(!check_strong_determinism(&h).holds);
        assert!(check_weak_determinism(&h).holds);
    }
}
