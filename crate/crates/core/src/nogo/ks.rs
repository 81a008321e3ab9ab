use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    Context, EmpiricalModel, JointMeasure, Odometer, OutcomeTuple, PropertyVerdict, Signature,
};
use crate::properties::{
    check_exchangeability, non_contextuality_violation, NcViolation, Permutation,
};
use crate::rational::Rational;

/// Most distinct labels [`ks_search_colorings`] accepts.
pub const LABEL_GUARD: usize = 30;

const TABLE: [[u8; 4]; 9] = [
    [1, 2, 3, 4],
    [1, 5, 6, 7],
    [8, 9, 3, 10],
    [8, 11, 7, 12],
    [2, 5, 13, 14],
    [9, 11, 14, 15],
    [16, 17, 4, 10],
    [16, 18, 6, 12],
    [17, 18, 13, 15],
];

/// Columns of mutually exclusive directions; exactly one entry per column
/// is to be colored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsTable {
    columns: Vec<Vec<String>>,
}

impl KsTable {
    pub fn new(columns: Vec<Vec<String>>) -> Result<Self> {
        for col in &columns {
            crate::model::unique("direction", col)?;
            if col.is_empty() {
                return Err(Error::Usage("empty column".into()));
            }
        }
        Ok(KsTable { columns })
    }

    pub fn columns(&self) -> &[Vec<String>] {
        &self.columns
    }

    /// Labels in order of first appearance.
    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for l in self.columns.iter().flatten() {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }

    /// Occurrences of each label, in order of first appearance.
    pub fn counts(&self) -> Vec<(String, usize)> {
        self.labels()
            .into_iter()
            .map(|l| {
                let n = self.columns.iter().flatten().filter(|x| **x == l).count();
                (l, n)
            })
            .collect()
    }
}

/// The eighteen directions E1…E18 in nine columns of four.
pub fn ks_table() -> KsTable {
    KsTable::new(
        TABLE
            .iter()
            .map(|col| col.iter().map(|e| format!("E{e}")).collect())
            .collect(),
    )
    .expect("valid table")
}

/// A 0/1 value for every label with exactly one 1 per column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsColoring {
    /// Row index of the colored entry in each column.
    pub winners: Vec<usize>,
    /// Labels in order of first appearance, with their values.
    pub values: Vec<(String, u8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsSearch {
    pub patterns_examined: u64,
    pub colorings: Vec<KsColoring>,
}

/// Tries every choice of one winner per column, in lexicographic order, and
/// keeps the choices under which every column contains exactly one winner.
pub fn ks_search(t: &KsTable) -> Result<KsSearch> {
    let labels = t.labels();
    if labels.len() > LABEL_GUARD {
        return Err(Error::SizeGuard {
            what: "coloring search",
            count: labels.len().to_string(),
            guard: LABEL_GUARD as u64,
        });
    }
    let index = |l: &String| labels.iter().position(|x| x == l).expect("listed");
    let cols: Vec<Vec<usize>> = t
        .columns()
        .iter()
        .map(|c| c.iter().map(index).collect())
        .collect();
    let masks: Vec<u32> = cols
        .iter()
        .map(|c| c.iter().fold(0, |m, &i| m | 1 << i))
        .collect();

    let mut examined = 0u64;
    let mut colorings = Vec::new();
    for winners in Odometer::new(cols.iter().map(Vec::len).collect()) {
        examined += 1;
        let set = winners
            .iter()
            .zip(&cols)
            .fold(0u32, |m, (&w, c)| m | 1 << c[w]);
        if masks.iter().all(|&m| (m & set).count_ones() == 1) {
            let values = labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), u8::from(set & (1 << i) != 0)))
                .collect();
            colorings.push(KsColoring { winners, values });
        }
    }
    Ok(KsSearch {
        patterns_examined: examined,
        colorings,
    })
}

pub fn ks_search_colorings(t: &KsTable) -> Result<Vec<KsColoring>> {
    Ok(ks_search(t)?.colorings)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityVerdict {
    Impossible,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsParity {
    pub counts: Vec<(String, usize)>,
    pub columns: usize,
    pub all_even: bool,
    pub verdict: ParityVerdict,
}

/// Counting the colored entries column by column gives the number of
/// columns; counting them label by label gives a sum of label occurrence
/// counts. If every count is even and the column count is odd, no coloring
/// exists.
pub fn ks_parity_certificate(t: &KsTable) -> KsParity {
    let counts = t.counts();
    let all_even = counts.iter().all(|(_, n)| n % 2 == 0);
    let columns = t.columns().len();
    KsParity {
        counts,
        columns,
        all_even,
        verdict: if all_even && columns % 2 == 1 {
            ParityVerdict::Impossible
        } else {
            ParityVerdict::Undecided
        },
    }
}

impl fmt::Display for KsParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self
            .counts
            .iter()
            .map(|(l, n)| format!("{l}:{n}"))
            .collect();
        writeln!(f, "label counts: {}", counts.join(" "))?;
        writeln!(
            f,
            "all counts even: {}; columns: {} ({})",
            self.all_even,
            self.columns,
            if self.columns % 2 == 1 { "odd" } else { "even" }
        )?;
        write!(
            f,
            "verdict: {}",
            match self.verdict {
                ParityVerdict::Impossible => "impossible (no coloring exists)",
                ParityVerdict::Undecided => "undecided by parity",
            }
        )
    }
}

/// Four slots A–D over directions E1…E18 with outcomes 0/1. The support is
/// every slot permutation of every column (216 contexts, weight 1/216
/// each). In each column the row-A entry is the direction with spin: the
/// outcome puts 1 wherever that entry landed and 0 elsewhere.
pub fn ks_model() -> EmpiricalModel {
    let labels: Vec<String> = (1..=18).map(|e| format!("E{e}")).collect();
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let sig = Signature::homogeneous(&["A", "B", "C", "D"], &label_refs, &["0", "1"])
        .expect("valid signature");
    let weight = Rational::new(1, 216);
    let mut weights = Vec::new();
    for col in TABLE {
        let col: Vec<usize> = col.iter().map(|&e| usize::from(e) - 1).collect();
        for pi in Permutation::all(4) {
            let context = Context(pi.apply(&col));
            let mut outcome = vec![0; 4];
            outcome[pi.image()[0]] = 1;
            weights.push(((context, OutcomeTuple(outcome)), weight.clone()));
        }
    }
    EmpiricalModel::new(sig, weights).expect("valid model")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsReport {
    pub exchangeability: PropertyVerdict,
    /// Every non-null context has one outcome tuple of probability 1, with
    /// exactly one 1 in it.
    pub one_winner_per_context: bool,
    pub non_null_contexts: usize,
    pub non_contextuality: Option<NcViolation>,
    pub patterns_examined: u64,
    pub colorings: usize,
    pub parity: KsParity,
    pub confirmed: bool,
}

/// The model is exchangeable with one spin direction per column, and it is
/// contextual; moreover no non-contextual model of this pattern exists,
/// since the table admits no coloring. Hence no equivalent model is
/// λ-independent and parameter independent.
pub fn verify_ks() -> KsReport {
    let e = ks_model();
    let exchangeability = check_exchangeability(&e).expect("homogeneous sites");
    let slices = e.context_slices();
    let one_winner_per_context = slices.values().all(|s| {
        s.weights.len() == 1
            && s.weights
                .keys()
                .all(|o| o.0.iter().filter(|&&x| x == 1).count() == 1)
    });
    let non_contextuality = non_contextuality_violation(&e);
    let table = ks_table();
    let search = ks_search(&table).expect("18 labels");
    let parity = ks_parity_certificate(&table);
    let confirmed = exchangeability.holds
        && one_winner_per_context
        && non_contextuality.is_some()
        && search.colorings.is_empty()
        && parity.verdict == ParityVerdict::Impossible;
    KsReport {
        exchangeability,
        one_winner_per_context,
        non_null_contexts: slices.len(),
        non_contextuality,
        patterns_examined: search.patterns_examined,
        colorings: search.colorings.len(),
        parity,
        confirmed,
    }
}

impl fmt::Display for KsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Kochen-Specker")?;
        writeln!(f, "  exchangeability: {}", self.exchangeability)?;
        writeln!(
            f,
            "  one winner per context: {} ({} non-null contexts)",
            self.one_winner_per_context, self.non_null_contexts
        )?;
        match &self.non_contextuality {
            Some(v) => writeln!(f, "  non-contextuality: fails: {v}")?,
            None => writeln!(f, "  non-contextuality: holds")?,
        }
        writeln!(
            f,
            "  colorings: {} of {} winner patterns",
            self.colorings, self.patterns_examined
        )?;
        for line in self.parity.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        write!(
            f,
            "verdict: {}",
            if self.confirmed {
                "no equivalent model is λ-independent and parameter independent"
            } else {
                "NOT CONFIRMED"
            }
        )
    }
}

impl fmt::Display for KsSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "examined {} winner patterns; {} valid colorings",
            self.patterns_examined,
            self.colorings.len()
        )?;
        for c in &self.colorings {
            let ones: Vec<&str> = c
                .values
                .iter()
                .filter(|(_, v)| *v == 1)
                .map(|(l, _)| l.as_str())
                .collect();
            writeln!(f, "  colored: {}", ones.join(" "))?;
        }
        write!(
            f,
            "verdict: {}",
            if self.colorings.is_empty() {
                "the table cannot be colored"
            } else {
                "colourable"
            }
        )
    }
}

/// Label → occurrence count, for quick lookups.
pub fn count_map(t: &KsTable) -> BTreeMap<String, usize> {
    t.counts().into_iter().collect()
}
