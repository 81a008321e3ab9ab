//! Library checkers and constructions against brute-force recomputation.

mod common;

use common::{empirical_corpus, hvm_corpus, oracle_non_contextual, Oracle};
use hvw::constructions::{construct_e1, construct_e2, construct_sv, e2_lambda_size};
use hvw::model::random::{random_empirical, shape};
use hvw::model::{
    equivalent_empirical, project_to_empirical, Context, EmpiricalModel, Event, JointMeasure,
    OutcomeTuple, Signature, Site,
};
use hvw::nogo::{bell_model, epr_escape_model, epr_model, ks_model, ks_table, strategy_count};
use hvw::properties::{check_non_contextuality, PropertyId};
use hvw::{frac, Rational};

#[test]
fn hidden_checkers_match_oracle() {
    let mut models: Vec<_> = hvm_corpus().into_iter().step_by(5).collect();
    models.push(epr_escape_model());
    models.push(construct_sv(&epr_model()));
    models.push(construct_e1(&bell_model()));
    models.push(construct_e2(&bell_model()));
    models.push(construct_sv(&bell_model()));
    let mut seen = [[0usize; 2]; 7];
    for h in &models {
        let oracle = Oracle::new(h);
        for (k, p) in PropertyId::HIDDEN.into_iter().enumerate() {
            let lib = p.check_hidden(h).unwrap().holds;
            assert_eq!(lib, oracle.holds(p), "{p} disagrees on {h:?}");
            seen[k][usize::from(lib)] += 1;
        }
    }
    // Both verdicts occur for every property, so the agreement is not vacuous.
    for (k, p) in PropertyId::HIDDEN.into_iter().enumerate() {
        assert!(seen[k][0] > 0 && seen[k][1] > 0, "{p}: {:?}", seen[k]);
    }
}

#[test]
fn non_contextuality_matches_oracle() {
    let mut both = [0usize; 2];
    let projected = hvm_corpus()
        .iter()
        .step_by(3)
        .map(project_to_empirical)
        .collect::<Vec<_>>();
    for e in empirical_corpus().iter().step_by(3).chain(&projected) {
        let lib = check_non_contextuality(e).holds;
        assert_eq!(lib, oracle_non_contextual(e));
        both[usize::from(lib)] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0);
    assert!(oracle_non_contextual(&bell_model()));
    assert!(!oracle_non_contextual(&ks_model()));
}

#[test]
fn e1_on_epr() {
    let h = construct_e1(&epr_model());
    assert_eq!(h.lambdas().len(), 4);
    let p = h
        .cond_prob(
            &Event::new().lambda("(+,-,A,B)"),
            &Event::new().context(&["A", "B"]),
        )
        .unwrap();
    assert_eq!(p, frac(1, 2));
    assert!(equivalent_empirical(&epr_model(), &h).unwrap().holds);
}

#[test]
fn e1_on_point_mass_is_a_point_mass() {
    let sig = Signature::homogeneous(&["A", "B"], &["x", "y"], &["0", "1"]).unwrap();
    let c = Context(vec![1, 0]);
    let o = OutcomeTuple(vec![0, 1]);
    let e = EmpiricalModel::new(sig, [((c, o), Rational::one())]).unwrap();
    let h = construct_e1(&e);
    let support: Vec<_> = h.weights().iter().filter(|(_, w)| !w.is_zero()).collect();
    assert_eq!(support.len(), 1);
    assert_eq!(h.lambdas()[support[0].0.lambda], "(0,1,y,x)");
}

#[test]
fn e2_block_rule_single_site() {
    let sig = Signature::new(vec![Site::new("S", ["A"], ["a1", "a2"]).unwrap()]).unwrap();
    let c = Context(vec![0]);
    let e = EmpiricalModel::new(
        sig,
        [
            ((c.clone(), OutcomeTuple(vec![0])), frac(1, 3)),
            ((c.clone(), OutcomeTuple(vec![1])), frac(2, 3)),
        ],
    )
    .unwrap();
    assert_eq!(e2_lambda_size(&e), 3.into());
    let h = construct_e2(&e);
    assert_eq!(h.lambdas(), ["0", "1", "2"]);
    let outcome_of = |l: &str| {
        ["a1", "a2"]
            .into_iter()
            .find(|o| {
                h.cond_prob(
                    &Event::new().outcome("S", o),
                    &Event::new().context(&["A"]).lambda(l),
                )
                .unwrap()
                .is_one()
            })
            .unwrap()
    };
    assert_eq!(
        [outcome_of("0"), outcome_of("1"), outcome_of("2")],
        ["a1", "a2", "a2"]
    );
    let back = h
        .cond_prob(
            &Event::new().outcome("S", "a1"),
            &Event::new().context(&["A"]),
        )
        .unwrap();
    assert_eq!(back, frac(1, 3));
}

#[test]
fn e2_on_epr_matches_escape_model() {
    let h = construct_e2(&epr_model());
    assert_eq!(h.lambdas().len(), 2);
    let given = |l: &str| Event::new().context(&["A", "B"]).lambda(l);
    let pm = Event::new().outcomes(&["+", "-"]);
    let mp = Event::new().outcomes(&["-", "+"]);
    assert!(h.cond_prob(&pm, &given("0")).unwrap().is_one());
    assert!(h.cond_prob(&mp, &given("1")).unwrap().is_one());
    let escape = epr_escape_model();
    assert!(escape.cond_prob(&pm, &given("λ1")).unwrap().is_one());
    assert!(escape.cond_prob(&mp, &given("λ2")).unwrap().is_one());
}

#[test]
fn bell_completions() {
    let bell = bell_model();
    let e1 = construct_e1(&bell);
    let oracle = Oracle::new(&e1);
    assert!(!oracle.holds(PropertyId::LambdaIndependence));
    let tag = "(+,-,1,1)";
    let at = |a: &str, b: &str| {
        e1.cond_prob(&Event::new().lambda(tag), &Event::new().context(&[a, b]))
            .unwrap()
    };
    assert_ne!(at("1", "1"), at("1", "2"));

    let e2 = construct_e2(&bell);
    let oracle = Oracle::new(&e2);
    assert!(oracle.holds(PropertyId::WeakDeterminism));
    assert!(oracle.holds(PropertyId::LambdaIndependence));
    assert!(!oracle.holds(PropertyId::ParameterIndependence));

    let sv = construct_sv(&bell);
    assert!(Oracle::new(&sv).holds(PropertyId::ParameterIndependence));
}

/// Ann's deterministic answers a_1, a_2, a_3 with Bob answering the
/// opposite: the three pairs (1,2), (2,3), (3,1) can disagree at most twice,
/// yet the model's equal-outcome rates add up to 9/4.
#[test]
fn bell_bound_by_enumeration() {
    let bell = bell_model();
    let mut best = 0;
    for a in 0..8u32 {
        let bit = |i: u32| (a >> i) & 1;
        let disagreements = [(0, 1), (1, 2), (2, 0)]
            .iter()
            .filter(|(i, j)| bit(*i) != bit(*j))
            .count();
        best = best.max(disagreements);
    }
    assert_eq!(best, 2);
    let mut observed = Rational::zero();
    for (i, j) in [("1", "2"), ("2", "3"), ("3", "1")] {
        let given = Event::new().context(&[i, j]);
        for o in [["+", "+"], ["-", "-"]] {
            observed += bell.cond_prob(&Event::new().outcomes(&o), &given).unwrap();
        }
    }
    assert_eq!(observed, frac(9, 4));
    assert!(observed > Rational::from(best as i64));
    assert_eq!(observed / Rational::from(2), frac(9, 8));
}

#[test]
fn strategy_and_pattern_counts() {
    assert_eq!(strategy_count(bell_model().signature()), 64);
    let table = ks_table();
    let patterns: usize = table.columns().iter().map(|c| c.len()).product();
    assert_eq!(patterns, 262_144);
    assert_eq!(table.columns().len(), 9);
    assert_eq!(table.labels().len(), 18);
}

#[test]
fn random_generator_seeds_differ() {
    let sig = shape(&[(2, 2), (2, 2)]).unwrap();
    assert_ne!(random_empirical(1, &sig), random_empirical(2, &sig));
    assert_eq!(random_empirical(1, &sig), random_empirical(1, &sig));
}
