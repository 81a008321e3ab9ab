use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::polytope::{local_polytope_feasibility, FeasibilityResult};
use crate::constructions::construct_sv;
use crate::error::Result;
use crate::model::{
    Context, EmpiricalModel, Event, JointMeasure, OutcomeTuple, PropertyVerdict, Signature,
};
use crate::properties::{
    check_lambda_independence, check_outcome_independence, check_parameter_independence,
};
use crate::rational::{frac, Rational};

/// Ann and Bob each measure spin along one of three directions `1`, `2`,
/// `3`, with outcomes `+` and `-`. Every context has weight 1/9. Equal
/// directions are perfectly anti-correlated; unequal directions give
/// 3/8 for equal outcomes and 1/8 for unequal ones.
pub fn bell_model() -> EmpiricalModel {
    let sig = Signature::homogeneous(&["Ann", "Bob"], &["1", "2", "3"], &["+", "-"])
        .expect("valid signature");
    let mut weights = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let table = if i == j {
                [frac(0, 1), frac(1, 2), frac(1, 2), frac(0, 1)]
            } else {
                [frac(3, 8), frac(1, 8), frac(1, 8), frac(3, 8)]
            };
            for (k, cond) in table.into_iter().enumerate() {
                weights.push((
                    (Context(vec![i, j]), OutcomeTuple(vec![k / 2, k % 2])),
                    cond * frac(1, 9),
                ));
            }
        }
    }
    EmpiricalModel::new(sig, weights).expect("valid model")
}

/// One of the eight cells cut out by the three partitions K_i ∪ L_i of the
/// support of λ. `in_k[i]` says whether the cell lies in K_{i+1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellAtom {
    pub index: u8,
    pub in_k: [bool; 3],
}

/// p(K_i ∩ L_j) + p(L_i ∩ K_j) = q(+,+ | i, j) + q(-,- | i, j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellEquation {
    pub i: u8,
    pub j: u8,
    /// Atoms of K_i ∩ L_j followed by those of L_i ∩ K_j.
    pub atoms: Vec<u8>,
    pub plus_plus: Rational,
    pub minus_minus: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellCertificate {
    pub atoms: Vec<BellAtom>,
    pub equations: Vec<BellEquation>,
    /// Atoms occurring in the equations; each occurs exactly twice.
    pub summed_atoms: Vec<u8>,
    /// Sum of the right-hand sides.
    pub doubled_total: Rational,
    /// The probability forced on the union of `summed_atoms`.
    pub total: Rational,
    pub impossible: bool,
}

/// Cell memberships. Atom 1 lies in K_1, K_2, K_3; the rest follow the
/// listing K_1 = 1∪4∪5∪8, K_2 = 1∪2∪5∪6, K_3 = 1∪2∪3∪4.
const K: [[u8; 4]; 3] = [[1, 4, 5, 8], [1, 2, 5, 6], [1, 2, 3, 4]];

fn k_set(i: usize) -> BTreeSet<u8> {
    K[i].iter().copied().collect()
}

fn l_set(i: usize) -> BTreeSet<u8> {
    (1..=8).filter(|a| !K[i].contains(a)).collect()
}

/// Each λ in the support either answers (+ for Ann, - for Bob) at direction
/// i, placing it in K_i, or (- for Ann, + for Bob), placing it in L_i. On
/// the pairs (1,2), (2,3), (3,1) the observed equal-outcome rates pin down
/// sums of atoms whose total exceeds 1.
pub fn bell_certificate() -> BellCertificate {
    let model = bell_model();
    let atoms = (1..=8)
        .map(|a| BellAtom {
            index: a,
            in_k: [0, 1, 2].map(|i| K[i].contains(&a)),
        })
        .collect();

    let labels = ["1", "2", "3"];
    let mut equations = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let kl: Vec<u8> = k_set(i).intersection(&l_set(j)).copied().collect();
        let lk: Vec<u8> = l_set(i).intersection(&k_set(j)).copied().collect();
        let given = Event::new().context(&[labels[i], labels[j]]);
        let pp = model
            .cond_prob(&Event::new().outcomes(&["+", "+"]), &given)
            .expect("non-null context");
        let mm = model
            .cond_prob(&Event::new().outcomes(&["-", "-"]), &given)
            .expect("non-null context");
        equations.push(BellEquation {
            i: i as u8 + 1,
            j: j as u8 + 1,
            atoms: kl.into_iter().chain(lk).collect(),
            rhs: &pp + &mm,
            plus_plus: pp,
            minus_minus: mm,
        });
    }

    let mut counts = [0usize; 9];
    for eq in &equations {
        for &a in &eq.atoms {
            counts[a as usize] += 1;
        }
    }
    let summed_atoms: Vec<u8> = (1..=8).filter(|&a| counts[a as usize] > 0).collect();
    let twice = summed_atoms.iter().all(|&a| counts[a as usize] == 2);
    let doubled_total: Rational = equations.iter().map(|e| &e.rhs).sum();
    let total = &doubled_total / &Rational::from(2);
    BellCertificate {
        atoms,
        equations,
        summed_atoms,
        impossible: twice && total > Rational::one(),
        doubled_total,
        total,
    }
}

impl fmt::Display for BellCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Bell: partition certificate")?;
        for a in &self.atoms {
            let sets: Vec<String> = a
                .in_k
                .iter()
                .enumerate()
                .map(|(i, &k)| format!("{}{}", if k { "K" } else { "L" }, i + 1))
                .collect();
            writeln!(f, "  atom {} = {}", a.index, sets.join(" ∩ "))?;
        }
        for e in &self.equations {
            let terms: Vec<String> = e.atoms.iter().map(|a| format!("p({a})")).collect();
            writeln!(
                f,
                "  ({},{}): {} = {} + {} = {}",
                e.i,
                e.j,
                terms.join(" + "),
                e.plus_plus,
                e.minus_minus,
                e.rhs
            )?;
        }
        let terms: Vec<String> = self
            .summed_atoms
            .iter()
            .map(|a| format!("p({a})"))
            .collect();
        writeln!(
            f,
            "  sum: 2 × ({}) = {}",
            terms.join(" + "),
            self.doubled_total
        )?;
        writeln!(f, "       {} = {}", terms.join(" + "), self.total)?;
        write!(
            f,
            "verdict: {}",
            if self.impossible {
                "impossible, since a probability cannot exceed 1"
            } else {
                "NOT CONFIRMED"
            }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellPiEscape {
    pub lambda_independence: PropertyVerdict,
    pub parameter_independence: PropertyVerdict,
    pub outcome_independence: PropertyVerdict,
    pub confirmed: bool,
}

/// The single-valued completion of the Bell model keeps λ-Independence and
/// Parameter Independence and gives up Outcome Independence.
pub fn bell_pi_escape() -> BellPiEscape {
    let h = construct_sv(&bell_model());
    let lambda_independence = check_lambda_independence(&h);
    let parameter_independence = check_parameter_independence(&h);
    let outcome_independence = check_outcome_independence(&h);
    let confirmed =
        lambda_independence.holds && parameter_independence.holds && !outcome_independence.holds;
    BellPiEscape {
        lambda_independence,
        parameter_independence,
        outcome_independence,
        confirmed,
    }
}

impl fmt::Display for BellPiEscape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Bell: single-valued completion")?;
        writeln!(f, "  λ-independence:         {}", self.lambda_independence)?;
        writeln!(
            f,
            "  parameter independence: {}",
            self.parameter_independence
        )?;
        write!(f, "  outcome independence:   {}", self.outcome_independence)
    }
}

/// Every Bell check at once: the partition certificate, the local
/// polytope decision, and the single-valued escape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellReport {
    pub certificate: BellCertificate,
    pub polytope: FeasibilityResult,
    pub pi_escape: BellPiEscape,
    pub confirmed: bool,
}

pub fn verify_bell(guard: u64) -> Result<BellReport> {
    let certificate = bell_certificate();
    let polytope = local_polytope_feasibility(&bell_model(), guard)?;
    let pi_escape = bell_pi_escape();
    let confirmed = certificate.impossible
        && !polytope.feasible
        && polytope.certificate_verified
        && pi_escape.confirmed;
    Ok(BellReport {
        certificate,
        polytope,
        pi_escape,
        confirmed,
    })
}

impl fmt::Display for BellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.certificate)?;
        writeln!(f, "{}", self.polytope)?;
        writeln!(f, "{}", self.pi_escape)?;
        write!(
            f,
            "verdict: {}",
            if self.confirmed {
                "no equivalent model is λ-independent, parameter independent and outcome independent"
            } else {
                "NOT CONFIRMED"
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_numbers() {
        let c = bell_certificate();
        let atoms: Vec<Vec<u8>> = c.equations.iter().map(|e| e.atoms.clone()).collect();
        assert_eq!(
            atoms,
            vec![vec![4, 8, 2, 6], vec![5, 6, 3, 4], vec![2, 3, 5, 8]]
        );
        assert!(c.equations.iter().all(|e| e.rhs == frac(3, 4)));
        assert_eq!(c.summed_atoms, vec![2, 3, 4, 5, 6, 8]);
        assert_eq!(c.total, frac(9, 8));
        assert!(c.impossible);
    }

    #[test]
    fn escape_witness() {
        let r = bell_pi_escape();
        assert!(r.confirmed);
        assert_eq!(
            r.outcome_independence.witness_values(),
            Some((&frac(1, 1), &frac(1, 2)))
        );
    }
}
