//! Seeded random models for property-based tests.
//!
//! Every cell (a context, or a context and a λ) gets a mass in {0,1,2,3}
//! and a conditional outcome distribution whose denominators divide a
//! per-model granularity drawn from {1,2,3,4,6}. Granularity 1 yields
//! deterministic cells. The output is a pure function of the seed and shape.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{
    Context, EmpiricalModel, HiddenVariableModel, Model, OutcomeTuple, Point, Signature, Site,
};
use crate::rational::Rational;

const GRANULARITIES: [u32; 5] = [1, 2, 3, 4, 6];

/// A signature with `dims[i] = (measurements, outcomes)` for site `i`.
/// Sites are `S0, S1, ...`; every site uses the labels `M0, M1, ...` and
/// `o0, o1, ...`, so equal dimensions give an exchangeable shape.
pub fn shape(dims: &[(usize, usize)]) -> Result<Signature> {
    let sites = dims
        .iter()
        .enumerate()
        .map(|(i, &(m, o))| {
            Site::new(
                format!("S{i}"),
                (0..m).map(|k| format!("M{k}")),
                (0..o).map(|k| format!("o{k}")),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Signature::new(sites)
}

/// Parses `"3x2,3x2"` (measurements × outcomes per site).
pub fn parse_shape(text: &str) -> Result<Signature> {
    let dims =
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|part| {
                let (m, o) = part.trim().split_once('x').ok_or_else(|| {
                    Error::Usage(format!("bad site shape `{part}`, expected MxO"))
                })?;
                let n = |s: &str| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Usage(format!("bad site shape `{part}`")))
                };
                Ok((n(m)?, n(o)?))
            })
            .collect::<Result<Vec<_>>>()?;
    shape(&dims)
}

pub fn generate_random_model(
    seed: u64,
    shape: &Signature,
    lambda_size: Option<usize>,
) -> Result<Model> {
    match lambda_size {
        None => Ok(random_empirical(seed, shape).into()),
        Some(0) => Err(Error::LambdaMismatch(
            "λ set size must be at least 1".into(),
        )),
        Some(k) => Ok(random_hvm(seed, shape, k).into()),
    }
}

pub fn random_empirical(seed: u64, shape: &Signature) -> EmpiricalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells: Vec<Context> = shape.contexts().collect();
    let weights = fill(&mut rng, shape, cells.len())
        .into_iter()
        .flat_map(|(cell, dist)| dist.into_iter().map(move |(o, w)| ((cell, o), w)))
        .map(|((cell, o), w)| ((cells[cell].clone(), o), w));
    EmpiricalModel::new(shape.clone(), weights).expect("generator emits normalised weights")
}

pub fn random_hvm(seed: u64, shape: &Signature, lambda_size: usize) -> HiddenVariableModel {
    assert!(lambda_size > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells: Vec<(Context, usize)> = shape
        .contexts()
        .flat_map(|c| (0..lambda_size).map(move |l| (c.clone(), l)))
        .collect();
    let lambdas = (0..lambda_size).map(|l| format!("l{l}")).collect();
    let weights = fill(&mut rng, shape, cells.len())
        .into_iter()
        .flat_map(|(cell, dist)| dist.into_iter().map(move |(o, w)| (cell, o, w)))
        .map(|(cell, outcome, w)| {
            let (context, lambda) = cells[cell].clone();
            (
                Point {
                    context,
                    outcome,
                    lambda,
                },
                w,
            )
        });
    HiddenVariableModel::new(shape.clone(), lambdas, weights)
        .expect("generator emits normalised weights")
}

/// Draws masses and conditionals for `n` cells; returns the normalised
/// joint weights per cell index.
fn fill(
    rng: &mut ChaCha8Rng,
    shape: &Signature,
    n: usize,
) -> Vec<(usize, Vec<(OutcomeTuple, Rational)>)> {
    let outcomes: Vec<OutcomeTuple> = shape.outcome_tuples().collect();
    let granularity = *GRANULARITIES.choose(rng).expect("nonempty");
    let divisors: Vec<u32> = (1..=granularity)
        .filter(|&d| granularity.is_multiple_of(d))
        .collect();

    let mut masses: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    if masses.iter().all(|&m| m == 0) {
        masses[0] = 1;
    }
    let total: u32 = masses.iter().sum();

    let mut out = Vec::new();
    for (cell, &mass) in masses.iter().enumerate() {
        let units = *divisors.choose(rng).expect("nonempty");
        let mut counts = vec![0u32; outcomes.len()];
        for _ in 0..units {
            counts[rng.gen_range(0..outcomes.len())] += 1;
        }
        if mass == 0 {
            continue;
        }
        let dist = outcomes
            .iter()
            .zip(&counts)
            .filter(|(_, &k)| k > 0)
            .map(|(o, &k)| {
                (
                    o.clone(),
                    Rational::new(i64::from(mass * k), i64::from(total * units)),
                )
            })
            .collect();
        out.push((cell, dist));
    }
    out
}
