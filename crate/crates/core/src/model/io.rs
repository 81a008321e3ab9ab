//! The model file format.
//!
//! A model file is a JSON object:
//!
//! ```json
//! {
//!   "sites": [{"name": "Ann", "measurements": ["A"], "outcomes": ["+", "-"]}, ...],
//!   "lambda": ["l1", "l2"],
//!   "weights": [{"outcome": ["+", "-"], "measurement": ["A", "B"], "lambda": "l1", "p": "1/2"}, ...]
//! }
//! ```
//!
//! `lambda` is present exactly for hidden-variable models, and then every
//! weight names its λ. Omitted tuples weigh 0. Any valid fraction is read;
//! output is always in lowest terms, in (context, outcome, λ) order.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{
    EmpiricalModel, HiddenVariableModel, JointMeasure, Model, Point, Signature, Site,
};
use crate::rational::Rational;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    sites: Vec<SiteFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<String>>,
    weights: Vec<WeightFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SiteFile {
    name: String,
    measurements: Vec<String>,
    outcomes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightFile {
    outcome: Vec<String>,
    measurement: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    p: String,
}

pub fn parse_model(text: &str) -> Result<Model> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
    from_file(file)
}

pub fn serialize_model(model: &Model) -> String {
    let mut text = serde_json::to_string_pretty(&to_file(model)).expect("model file serializes");
    text.push('\n');
    text
}

pub fn read_model(path: impl AsRef<std::path::Path>) -> Result<Model> {
    parse_model(&std::fs::read_to_string(path)?)
}

pub fn write_model(path: impl AsRef<std::path::Path>, model: &Model) -> Result<()> {
    std::fs::write(path, serialize_model(model))?;
    Ok(())
}

fn from_file(file: ModelFile) -> Result<Model> {
    let sites = file
        .sites
        .into_iter()
        .map(|s| Site::new(s.name, s.measurements, s.outcomes))
        .collect::<Result<Vec<_>>>()?;
    let sig = Signature::new(sites)?;

    match file.lambda {
        None => {
            let mut weights = Vec::with_capacity(file.weights.len());
            for w in file.weights {
                if w.lambda.is_some() {
                    return Err(Error::LambdaMismatch(
                        "weight names a λ but the model declares no `lambda` list".into(),
                    ));
                }
                let c = sig.context(&label_refs(&w.measurement))?;
                let o = sig.outcomes(&label_refs(&w.outcome))?;
                weights.push(((c, o), w.p.parse::<Rational>()?));
            }
            let mut e = EmpiricalModel::new(sig, weights)?;
            if let Some(c) = file.comment {
                e = e.with_comment(c);
            }
            Ok(Model::Empirical(e))
        }
        Some(lambdas) => {
            let mut weights = Vec::with_capacity(file.weights.len());
            for w in file.weights {
                let label = w.lambda.ok_or_else(|| {
                    Error::LambdaMismatch(
                        "every weight of a hidden-variable model needs a λ".into(),
                    )
                })?;
                let lambda =
                    crate::model::signature::position("hidden-variable", &lambdas, &label)?;
                let context = sig.context(&label_refs(&w.measurement))?;
                let outcome = sig.outcomes(&label_refs(&w.outcome))?;
                weights.push((
                    Point {
                        context,
                        outcome,
                        lambda,
                    },
                    w.p.parse::<Rational>()?,
                ));
            }
            let mut h = HiddenVariableModel::new(sig, lambdas, weights)?;
            if let Some(c) = file.comment {
                h = h.with_comment(c);
            }
            Ok(Model::Hidden(h))
        }
    }
}

fn label_refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn to_file(model: &Model) -> ModelFile {
    let sig = model.signature();
    let sites = sig
        .sites()
        .iter()
        .map(|s| SiteFile {
            name: s.name().to_string(),
            measurements: s.measurements().to_vec(),
            outcomes: s.outcomes().to_vec(),
        })
        .collect();
    let lambdas = model.lambda_labels();
    let weights = model
        .atoms()
        .map(|(c, o, l, w)| WeightFile {
            outcome: sig.outcome_labels(o),
            measurement: sig.context_labels(c),
            lambda: l.map(|l| lambdas.expect("λ index implies λ labels")[l].clone()),
            p: w.to_string(),
        })
        .collect();
    let comment = match model {
        Model::Empirical(e) => e.comment(),
        Model::Hidden(h) => h.comment(),
    };
    ModelFile {
        sites,
        lambda: lambdas.map(<[String]>::to_vec),
        weights,
        comment: comment.map(str::to_string),
    }
}

impl Serialize for Model {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        to_file(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Model {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = ModelFile::deserialize(deserializer)?;
        from_file(file).map_err(serde::de::Error::custom)
    }
}

impl Serialize for HiddenVariableModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        to_file(&Model::Hidden(self.clone())).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HiddenVariableModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match Model::deserialize(deserializer)? {
            Model::Hidden(h) => Ok(h),
            Model::Empirical(_) => Err(serde::de::Error::custom(
                "expected a hidden-variable model (missing `lambda`)",
            )),
        }
    }
}

impl Serialize for EmpiricalModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        to_file(&Model::Empirical(self.clone())).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EmpiricalModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match Model::deserialize(deserializer)? {
            Model::Empirical(e) => Ok(e),
            Model::Hidden(_) => Err(serde::de::Error::custom(
                "expected an empirical model (unexpected `lambda`)",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Context, OutcomeTuple};
    use crate::rational::frac;

    const COIN: &str = r#"{
        "sites": [{"name": "S", "measurements": ["M"], "outcomes": ["h", "t"]}],
        "weights": [
            {"outcome": ["h"], "measurement": ["M"], "p": "2/6"},
            {"outcome": ["t"], "measurement": ["M"], "p": "2/3"}
        ]
    }"#;

    #[test]
    fn reads_fractions_exactly() {
        let m = parse_model(COIN).unwrap();
        let e = m.as_empirical().unwrap();
        assert_eq!(
            e.weight(&Context(vec![0]), &OutcomeTuple(vec![0])),
            frac(1, 3)
        );
        let text = serialize_model(&m);
        assert!(text.contains("\"1/3\""));
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn distinct_diagnostics() {
        let cases = [
            ("{ not json", "syntax"),
            (
                r#"{"sites":[{"name":"S","measurements":["M"],"outcomes":["h"]}],
                   "weights":[{"outcome":["h"],"measurement":["M"],"p":"35/36"}]}"#,
                "sum",
            ),
            (
                r#"{"sites":[{"name":"S","measurements":["M"],"outcomes":["h"]}],
                   "weights":[{"outcome":["x"],"measurement":["M"],"p":"1"}]}"#,
                "label",
            ),
            (
                r#"{"sites":[{"name":"S","measurements":["M"],"outcomes":["h","t"]}],
                   "weights":[{"outcome":["h"],"measurement":["M"],"p":"3/2"},
                              {"outcome":["t"],"measurement":["M"],"p":"-1/2"}]}"#,
                "negative",
            ),
            (
                r#"{"sites":[{"name":"S","measurements":["M"],"outcomes":["h"]}],
                   "weights":[{"outcome":["h"],"measurement":["M"],"p":"one"}]}"#,
                "fraction",
            ),
        ];
        for (text, kind) in cases {
            let err = parse_model(text).unwrap_err();
            let ok = match kind {
                "syntax" => matches!(err, Error::Syntax(_)),
                "sum" => {
                    matches!(&err, Error::WeightSum { deficit, .. } if **deficit == frac(1, 36))
                }
                "label" => matches!(err, Error::UnknownLabel { .. }),
                "negative" => matches!(err, Error::NegativeWeight { .. }),
                "fraction" => matches!(err, Error::BadFraction(_)),
                _ => unreachable!(),
            };
            assert!(ok, "{kind}: got {err:?}");
        }
    }

    #[test]
    fn lambda_presence_must_be_consistent() {
        let text = r#"{"sites":[{"name":"S","measurements":["M"],"outcomes":["h"]}],
                       "lambda":["a"],
                       "weights":[{"outcome":["h"],"measurement":["M"],"p":"1"}]}"#;
        assert!(matches!(parse_model(text), Err(Error::LambdaMismatch(_))));
        let text = r#"{"sites":[{"name":"S","measurements":["M"],"outcomes":["h"]}],
                       "weights":[{"outcome":["h"],"measurement":["M"],"lambda":"a","p":"1"}]}"#;
        assert!(matches!(parse_model(text), Err(Error::LambdaMismatch(_))));
    }
}
