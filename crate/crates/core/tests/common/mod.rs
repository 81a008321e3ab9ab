//! Shared corpora and brute-force oracles for the integration tests.
//!
//! The oracles recompute every property straight from the joint weight map
//! by summing over points, without the library's slices or marginal tables.
#![allow(dead_code)]

use hvw::model::random::{random_empirical, random_hvm, shape};
use hvw::model::{Context, EmpiricalModel, HiddenVariableModel, OutcomeTuple, Point, Signature};
use hvw::properties::PropertyId;
use hvw::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Up to two sites, three measurements and three outcomes per site.
pub const SHAPES: &[&[(usize, usize)]] = &[
    &[(1, 2)],
    &[(3, 3)],
    &[(2, 2), (2, 2)],
    &[(3, 2), (3, 2)],
    &[(2, 3), (3, 2)],
    &[(3, 3), (3, 3)],
];

pub const PER_SHAPE: u64 = 100;

pub fn signatures() -> Vec<Signature> {
    SHAPES.iter().map(|d| shape(d).unwrap()).collect()
}

fn seed(shape_index: usize, i: u64) -> u64 {
    shape_index as u64 * 10_000 + i
}

/// `PER_SHAPE` random empirical models per shape.
pub fn empirical_corpus() -> Vec<EmpiricalModel> {
    signatures()
        .iter()
        .enumerate()
        .flat_map(|(k, sig)| (0..PER_SHAPE).map(move |i| random_empirical(seed(k, i), sig)))
        .collect()
}

/// `PER_SHAPE` unstructured random HVMs per shape with |Λ| cycling 1..=4,
/// plus the same number of local λ-independent ones.
pub fn hvm_corpus() -> Vec<HiddenVariableModel> {
    let mut out = Vec::new();
    for (k, sig) in signatures().iter().enumerate() {
        for i in 0..PER_SHAPE {
            let lambdas = 1 + (i % 4) as usize;
            out.push(random_hvm(seed(k, i), sig, lambdas));
            out.push(local_hvm(seed(k, i), sig, lambdas));
        }
    }
    out
}

/// p(C, o, λ) = q(C) r(λ) Π_s f_s(o_s | C_s, λ) with small random integer
/// weights; some contexts may be null. Responses are deterministic for
/// even seeds so that strongly deterministic models appear too.
pub fn local_hvm(seed: u64, sig: &Signature, lambdas: usize) -> HiddenVariableModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let deterministic = seed.is_multiple_of(2);
    let contexts: Vec<Context> = sig.contexts().collect();
    let mut q: Vec<u64> = contexts.iter().map(|_| rng.gen_range(0..3)).collect();
    if q.iter().all(|&x| x == 0) {
        q[0] = 1;
    }
    let r: Vec<u64> = (0..lambdas).map(|_| rng.gen_range(1..4)).collect();
    // f[s][m][λ][o]
    let f: Vec<Vec<Vec<Vec<u64>>>> = sig
        .sites()
        .iter()
        .map(|site| {
            let n = site.outcomes().len();
            (0..site.measurements().len())
                .map(|_| {
                    (0..lambdas)
                        .map(|_| {
                            if deterministic {
                                let hit = rng.gen_range(0..n);
                                (0..n).map(|o| u64::from(o == hit)).collect()
                            } else {
                                let mut v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                                if v.iter().all(|&x| x == 0) {
                                    v[rng.gen_range(0..n)] = 1;
                                }
                                v
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut raw = Vec::new();
    for (ci, c) in contexts.iter().enumerate() {
        for l in 0..lambdas {
            let norm: u64 =
                c.0.iter()
                    .enumerate()
                    .map(|(s, &m)| f[s][m][l].iter().sum::<u64>())
                    .product();
            for o in sig.outcome_tuples() {
                let num: u64 =
                    c.0.iter()
                        .zip(&o.0)
                        .enumerate()
                        .map(|(s, (&m, &x))| f[s][m][l][x])
                        .product();
                let w = Rational::from((q[ci] * r[l] * num) as i64) / Rational::from(norm as i64);
                if !w.is_zero() {
                    raw.push((
                        Point {
                            context: c.clone(),
                            outcome: o,
                            lambda: l,
                        },
                        w,
                    ));
                }
            }
        }
    }
    let total: Rational = raw.iter().map(|(_, w)| w.clone()).sum();
    let labels = (0..lambdas).map(|l| format!("l{l}")).collect();
    HiddenVariableModel::new(
        sig.clone(),
        labels,
        raw.into_iter().map(|(p, w)| (p, w / total.clone())),
    )
    .unwrap()
}

/// Brute-force property oracle for hidden-variable models.
pub struct Oracle<'a> {
    h: &'a HiddenVariableModel,
    sig: &'a Signature,
    points: Vec<(&'a Point, &'a Rational)>,
}

impl<'a> Oracle<'a> {
    pub fn new(h: &'a HiddenVariableModel) -> Self {
        Oracle {
            h,
            sig: hvw::model::JointMeasure::signature(h),
            points: h.weights().iter().collect(),
        }
    }

    pub fn prob(&self, pred: impl Fn(&Point) -> bool) -> Rational {
        self.points
            .iter()
            .filter(|(p, _)| pred(p))
            .map(|(_, w)| (*w).clone())
            .sum()
    }

    /// p(A | B), or `None` when p(B) = 0.
    pub fn cond(&self, a: impl Fn(&Point) -> bool, b: impl Fn(&Point) -> bool) -> Option<Rational> {
        let pb = self.prob(&b);
        if pb.is_zero() {
            return None;
        }
        Some(self.prob(|p| a(p) && b(p)) / pb)
    }

    fn lambdas(&self) -> usize {
        self.h.lambdas().len()
    }

    fn sites(&self) -> usize {
        self.sig.len()
    }

    fn n_out(&self, s: usize) -> usize {
        self.sig.sites()[s].outcomes().len()
    }

    fn n_meas(&self, s: usize) -> usize {
        self.sig.sites()[s].measurements().len()
    }

    /// Non-null (context, λ) cells.
    fn cells(&self) -> Vec<(Context, usize)> {
        let mut out = Vec::new();
        for c in self.sig.contexts() {
            for l in 0..self.lambdas() {
                if !self.prob(|p| p.context == c && p.lambda == l).is_zero() {
                    out.push((c.clone(), l));
                }
            }
        }
        out
    }

    pub fn holds(&self, prop: PropertyId) -> bool {
        match prop {
            PropertyId::SingleValuedness => self.lambdas() == 1,
            PropertyId::LambdaIndependence => self.lambda_independence(),
            PropertyId::StrongDeterminism => self.strong_determinism(),
            PropertyId::WeakDeterminism => self.weak_determinism(),
            PropertyId::OutcomeIndependence => self.outcome_independence(),
            PropertyId::ParameterIndependence => self.parameter_independence(),
            PropertyId::Locality => self.locality(),
            _ => panic!("not a hidden-variable property"),
        }
    }

    fn lambda_independence(&self) -> bool {
        let rows: Vec<Vec<Rational>> = self
            .sig
            .contexts()
            .filter_map(|c| {
                (0..self.lambdas())
                    .map(|l| self.cond(|p| p.lambda == l, |p| p.context == c))
                    .collect::<Option<Vec<_>>>()
            })
            .collect();
        rows.windows(2).all(|w| w[0] == w[1])
    }

    fn strong_determinism(&self) -> bool {
        (0..self.sites()).all(|s| {
            (0..self.n_meas(s)).all(|m| {
                (0..self.lambdas()).all(|l| {
                    let given = |p: &Point| p.context.0[s] == m && p.lambda == l;
                    if self.prob(given).is_zero() {
                        return true;
                    }
                    (0..self.n_out(s))
                        .any(|o| self.cond(|p| p.outcome.0[s] == o, given).unwrap().is_one())
                })
            })
        })
    }

    fn weak_determinism(&self) -> bool {
        self.cells().into_iter().all(|(c, l)| {
            self.sig.outcome_tuples().any(|o| {
                self.cond(|p| p.outcome == o, |p| p.context == c && p.lambda == l)
                    .unwrap()
                    .is_one()
            })
        })
    }

    /// p(o_s | C, o_{-s}, λ) = p(o_s | C, λ) whenever the left side is
    /// defined, for every site.
    fn outcome_independence(&self) -> bool {
        self.cells().into_iter().all(|(c, l)| {
            let cell = |p: &Point| p.context == c && p.lambda == l;
            self.sig.outcome_tuples().all(|o: OutcomeTuple| {
                (0..self.sites()).all(|s| {
                    let rest = |p: &Point| {
                        cell(p) && (0..o.0.len()).all(|t| t == s || p.outcome.0[t] == o.0[t])
                    };
                    match self.cond(|p| p.outcome.0[s] == o.0[s], rest) {
                        None => true,
                        Some(lhs) => lhs == self.cond(|p| p.outcome.0[s] == o.0[s], cell).unwrap(),
                    }
                })
            })
        })
    }

    fn single(&self, s: usize, m: usize, l: usize, o: usize) -> Rational {
        self.cond(
            |p| p.outcome.0[s] == o,
            |p| p.context.0[s] == m && p.lambda == l,
        )
        .unwrap()
    }

    fn parameter_independence(&self) -> bool {
        self.cells().into_iter().all(|(c, l)| {
            (0..self.sites()).all(|s| {
                (0..self.n_out(s)).all(|o| {
                    let lhs = self
                        .cond(|p| p.outcome.0[s] == o, |p| p.context == c && p.lambda == l)
                        .unwrap();
                    lhs == self.single(s, c.0[s], l, o)
                })
            })
        })
    }

    fn locality(&self) -> bool {
        self.cells().into_iter().all(|(c, l)| {
            self.sig.outcome_tuples().all(|o| {
                let lhs = self
                    .cond(|p| p.outcome == o, |p| p.context == c && p.lambda == l)
                    .unwrap();
                let rhs: Rational = (0..self.sites())
                    .map(|s| self.single(s, c.0[s], l, o.0[s]))
                    .product();
                lhs == rhs
            })
        })
    }
}

/// q(o_s | C) for a site, by summing weights.
pub fn empirical_site_conditional(
    e: &EmpiricalModel,
    c: &Context,
    s: usize,
    o: usize,
) -> Option<Rational> {
    let mass: Rational = e
        .weights()
        .iter()
        .filter(|((cc, _), _)| cc == c)
        .map(|(_, w)| w.clone())
        .sum();
    if mass.is_zero() {
        return None;
    }
    let hit: Rational = e
        .weights()
        .iter()
        .filter(|((cc, oo), _)| cc == c && oo.0[s] == o)
        .map(|(_, w)| w.clone())
        .sum();
    Some(hit / mass)
}

/// Non-Contextuality by brute force over all pairs of contexts.
pub fn oracle_non_contextual(e: &EmpiricalModel) -> bool {
    let sig = hvw::model::JointMeasure::signature(e);
    let contexts: Vec<Context> = sig.contexts().collect();
    for s in 0..sig.len() {
        for o in 0..sig.sites()[s].outcomes().len() {
            let values: Vec<Option<Rational>> = contexts
                .iter()
                .map(|c| empirical_site_conditional(e, c, s, o))
                .collect();
            for (i, c1) in contexts.iter().enumerate() {
                for (j, c2) in contexts.iter().enumerate() {
                    if c1.0[s] != c2.0[s] {
                        continue;
                    }
                    if let (Some(a), Some(b)) = (&values[i], &values[j]) {
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// lcm of the denominators of q(o | C) over non-null contexts, from the raw
/// weights.
pub fn lcm_oracle(e: &EmpiricalModel) -> num_bigint::BigInt {
    let mut mass = std::collections::BTreeMap::new();
    for ((c, _), w) in e.weights() {
        *mass.entry(c.clone()).or_insert_with(Rational::zero) += w;
    }
    let mut l = num_bigint::BigInt::from(1);
    for ((c, _), w) in e.weights() {
        if w.is_zero() {
            continue;
        }
        let cond = w / &mass[c];
        l = num_integer::Integer::lcm(&l, cond.denom());
    }
    l
}
