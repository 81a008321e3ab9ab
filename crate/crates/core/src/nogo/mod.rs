//! Canonical models and exact verifiers for the three no-go arguments.

mod bell;
mod epr;
mod ks;
mod polytope;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bell::{
    bell_certificate, bell_model, bell_pi_escape, verify_bell, BellAtom, BellCertificate,
    BellEquation, BellPiEscape, BellReport,
};
pub use epr::{epr_escape_model, epr_model, verify_epr, EprReport};
pub use ks::{
    count_map, ks_model, ks_parity_certificate, ks_search, ks_search_colorings, ks_table,
    verify_ks, KsColoring, KsParity, KsReport, KsSearch, KsTable, ParityVerdict, LABEL_GUARD,
};
pub use polytope::{
    enumerate_deterministic_strategies, local_polytope_feasibility, strategy_count, verify_farkas,
    DeterministicStrategy, FeasibilityResult, StrategyWeight, DEFAULT_GUARD,
};

use crate::error::Error;
use crate::model::EmpiricalModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Canonical {
    Epr,
    Bell,
    Ks,
}

impl Canonical {
    pub const ALL: [Canonical; 3] = [Canonical::Epr, Canonical::Bell, Canonical::Ks];

    pub fn name(self) -> &'static str {
        match self {
            Canonical::Epr => "epr",
            Canonical::Bell => "bell",
            Canonical::Ks => "ks",
        }
    }

    pub fn model(self) -> EmpiricalModel {
        match self {
            Canonical::Epr => epr_model(),
            Canonical::Bell => bell_model(),
            Canonical::Ks => ks_model(),
        }
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Canonical {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Canonical::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown canonical model `{s}` (epr, bell, ks)")))
    }
}
