//! The 21 implication-closed combinations of the six hidden-variable
//! properties, each classified as achievable for every empirical model or
//! impossible for some.
//!
//! A region is achievable when every empirical model has an equivalent
//! hidden-variable model with at least the region's properties; the
//! evidence is a construction whose guarantees include the region. It is
//! impossible when it contains the property set of one of the three no-go
//! arguments.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::{e2_lambda_size, ConstructionMethod};
use crate::error::{Error, Result};
use crate::model::{equivalent_empirical, EmpiricalModel, JointMeasure};
use crate::nogo::{
    bell_certificate, local_polytope_feasibility, verify_epr, verify_ks, Canonical, DEFAULT_GUARD,
};
use crate::properties::PropertyId;

/// The six properties in bit order.
pub const PROPERTIES: [PropertyId; 6] = [
    PropertyId::SingleValuedness,
    PropertyId::LambdaIndependence,
    PropertyId::StrongDeterminism,
    PropertyId::WeakDeterminism,
    PropertyId::OutcomeIndependence,
    PropertyId::ParameterIndependence,
];

const SHORT: [&str; 6] = ["SV", "λI", "SD", "WD", "OI", "PI"];

/// SV→λI, SD→WD, SD→PI, WD→OI.
const RULES: [(usize, usize); 4] = [(0, 1), (2, 3), (2, 5), (3, 4)];

/// A subset of the six properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct PropertySet(u8);

impl PropertySet {
    pub const EMPTY: PropertySet = PropertySet(0);

    pub fn from_bits(bits: u8) -> Self {
        PropertySet(bits & 0b11_1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn of(props: &[PropertyId]) -> Result<Self> {
        let mut bits = 0;
        for p in props {
            let i = PROPERTIES.iter().position(|q| q == p).ok_or_else(|| {
                Error::Usage(format!(
                    "{p} is not one of the six hidden-variable properties"
                ))
            })?;
            bits |= 1 << i;
        }
        Ok(PropertySet(bits))
    }

    pub fn contains(self, p: PropertyId) -> bool {
        PROPERTIES
            .iter()
            .position(|q| *q == p)
            .is_some_and(|i| self.0 & (1 << i) != 0)
    }

    pub fn properties(self) -> Vec<PropertyId> {
        (0..6)
            .filter(|i| self.0 & (1 << i) != 0)
            .map(|i| PROPERTIES[i])
            .collect()
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: PropertySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_closed(self) -> bool {
        RULES
            .iter()
            .all(|&(a, b)| self.0 & (1 << a) == 0 || self.0 & (1 << b) != 0)
    }
}

impl fmt::Display for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = (0..6)
            .filter(|i| self.0 & (1 << i) != 0)
            .map(|i| SHORT[i])
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl From<PropertySet> for Vec<String> {
    fn from(s: PropertySet) -> Self {
        (0..6)
            .filter(|i| s.0 & (1 << i) != 0)
            .map(|i| SHORT[i].to_string())
            .collect()
    }
}

impl TryFrom<Vec<String>> for PropertySet {
    type Error = String;

    fn try_from(names: Vec<String>) -> std::result::Result<Self, String> {
        let mut bits = 0;
        for n in names {
            let i = SHORT
                .iter()
                .position(|s| *s == n)
                .ok_or_else(|| format!("unknown property `{n}`"))?;
            bits |= 1 << i;
        }
        Ok(PropertySet(bits))
    }
}

/// The property set of each no-go argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Epr,
    Bell,
    Ks,
}

impl Kernel {
    /// In order of preference when several apply.
    pub const ALL: [Kernel; 3] = [Kernel::Epr, Kernel::Bell, Kernel::Ks];

    pub fn properties(self) -> PropertySet {
        use PropertyId::*;
        let props: &[PropertyId] = match self {
            Kernel::Epr => &[SingleValuedness, OutcomeIndependence],
            Kernel::Bell => &[
                LambdaIndependence,
                ParameterIndependence,
                OutcomeIndependence,
            ],
            Kernel::Ks => &[LambdaIndependence, ParameterIndependence],
        };
        PropertySet::of(props).expect("hidden-variable properties")
    }

    pub fn canonical(self) -> Canonical {
        match self {
            Kernel::Epr => Canonical::Epr,
            Kernel::Bell => Canonical::Bell,
            Kernel::Ks => Canonical::Ks,
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Kernel::Epr => "EPR",
            Kernel::Bell => "Bell",
            Kernel::Ks => "KS",
        };
        write!(f, "{name} {}", self.properties())
    }
}

/// The guaranteed properties of a construction, as a set.
pub fn construction_set(m: ConstructionMethod) -> PropertySet {
    PropertySet::of(m.guarantees()).expect("hidden-variable properties")
}

/// Every implication-closed subset, ordered by size and then by bits.
pub fn enumerate_regions() -> Vec<PropertySet> {
    let mut out: Vec<PropertySet> = (0u8..64)
        .map(PropertySet)
        .filter(|s| s.is_closed())
        .collect();
    out.sort_by_key(|s| (s.len(), s.0));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum RegionStatus {
    Achievable { methods: Vec<ConstructionMethod> },
    Impossible { kernel: Kernel },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub region: PropertySet,
    #[serde(flatten)]
    pub status: RegionStatus,
}

impl RegionVerdict {
    pub fn is_achievable(&self) -> bool {
        matches!(self.status, RegionStatus::Achievable { .. })
    }
}

pub fn classify_region(r: PropertySet) -> Result<RegionVerdict> {
    if !r.is_closed() {
        return Err(Error::NotClosed(r.to_string()));
    }
    let methods: Vec<ConstructionMethod> = ConstructionMethod::ALL
        .into_iter()
        .filter(|&m| r.is_subset(construction_set(m)))
        .collect();
    let kernel = Kernel::ALL
        .into_iter()
        .find(|k| k.properties().is_subset(r));
    let status = match (methods.is_empty(), kernel) {
        (false, None) => RegionStatus::Achievable { methods },
        (true, Some(kernel)) => RegionStatus::Impossible { kernel },
        (false, Some(k)) => panic!("region {r} is both achievable and contains the {k} kernel"),
        (true, None) => panic!("region {r} is neither achievable nor impossible"),
    };
    Ok(RegionVerdict { region: r, status })
}

/// A construction run on the sample model and re-checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiveCheck {
    pub method: ConstructionMethod,
    pub properties: Vec<(PropertyId, bool)>,
    pub equivalent: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    #[serde(flatten)]
    pub verdict: RegionVerdict,
    /// For achievable regions with a sample: one entry per method.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub live: Vec<LiveCheck>,
    /// For impossible regions: the verifier of the kernel's canonical
    /// model confirmed the no-go argument.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nogo_confirmed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub regions: Vec<RegionReport>,
    pub achievable: usize,
    pub impossible: usize,
    pub note: String,
}

pub const SPLIT_NOTE: &str = "derived split: 11 achievable, 10 impossible; the empty set is \
     counted as achievable, so a tally of 10 achievable and 11 impossible regions does not \
     match these semantics";

/// Classifies all 21 regions. Each impossible region cites its kernel's
/// verifier run. With a sample model, each achievable region also runs its
/// constructions on the sample and re-checks the region's properties and
/// equivalence; `guard` caps |Ψ| for E1 and |Λ| for E2.
pub fn full_report(sample: Option<&EmpiricalModel>, guard: u64) -> Result<ClassificationReport> {
    let mut kernels: BTreeMap<&'static str, bool> = BTreeMap::new();
    let mut kernel_confirmed = |k: Kernel| -> Result<bool> {
        let key = match k {
            Kernel::Epr => "epr",
            Kernel::Bell => "bell",
            Kernel::Ks => "ks",
        };
        if let Some(&v) = kernels.get(key) {
            return Ok(v);
        }
        let v = match k {
            Kernel::Epr => verify_epr().confirmed,
            Kernel::Bell => {
                bell_certificate().impossible && {
                    let r = local_polytope_feasibility(&k.canonical().model(), DEFAULT_GUARD)?;
                    !r.feasible && r.certificate_verified
                }
            }
            Kernel::Ks => verify_ks().confirmed,
        };
        kernels.insert(key, v);
        Ok(v)
    };

    let mut built = BTreeMap::new();
    let mut regions = Vec::new();
    for r in enumerate_regions() {
        let verdict = classify_region(r)?;
        let mut report = RegionReport {
            verdict: verdict.clone(),
            live: Vec::new(),
            nogo_confirmed: None,
        };
        match &verdict.status {
            RegionStatus::Impossible { kernel } => {
                report.nogo_confirmed = Some(kernel_confirmed(*kernel)?);
            }
            RegionStatus::Achievable { methods } => {
                if let Some(e) = sample {
                    for &m in methods {
                        if let Entry::Vacant(slot) = built.entry(m) {
                            check_guard(e, m, guard)?;
                            slot.insert(m.construct(e));
                        }
                        let h = &built[&m];
                        let properties: Vec<(PropertyId, bool)> = r
                            .properties()
                            .into_iter()
                            .map(|p| Ok((p, p.check_hidden(h)?.holds)))
                            .collect::<Result<_>>()?;
                        let equivalent = equivalent_empirical(e, h)?.holds;
                        let passed = equivalent && properties.iter().all(|(_, ok)| *ok);
                        report.live.push(LiveCheck {
                            method: m,
                            properties,
                            equivalent,
                            passed,
                        });
                    }
                }
            }
        }
        regions.push(report);
    }
    let achievable = regions.iter().filter(|r| r.verdict.is_achievable()).count();
    Ok(ClassificationReport {
        impossible: regions.len() - achievable,
        achievable,
        regions,
        note: SPLIT_NOTE.to_string(),
    })
}

/// Refuses constructions whose λ set would exceed `guard` points.
pub fn check_guard(e: &EmpiricalModel, m: ConstructionMethod, guard: u64) -> Result<()> {
    let count = match m {
        ConstructionMethod::E1StrongDeterministic => {
            num_bigint::BigInt::from(e.signature().psi_size())
        }
        ConstructionMethod::E2WeakDetLambdaIndep => e2_lambda_size(e),
        ConstructionMethod::SvSingleValued => return Ok(()),
    };
    if count > num_bigint::BigInt::from(guard) {
        return Err(Error::SizeGuard {
            what: match m {
                ConstructionMethod::E1StrongDeterministic => "the E1 construction (|Λ| = |Ψ|)",
                _ => "the E2 construction (|Λ| = L)",
            },
            count: count.to_string(),
            guard,
        });
    }
    Ok(())
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<22} {:<11} evidence", "region", "status")?;
        for r in &self.regions {
            let (status, evidence) = match &r.verdict.status {
                RegionStatus::Achievable { methods } => (
                    "achievable",
                    methods
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                ),
                RegionStatus::Impossible { kernel } => ("impossible", kernel.to_string()),
            };
            let mut check = String::new();
            if !r.live.is_empty() {
                let ok = r.live.iter().all(|l| l.passed);
                check = format!("  [sample: {}]", if ok { "passed" } else { "FAILED" });
            }
            if let Some(ok) = r.nogo_confirmed {
                check = format!("  [verifier: {}]", if ok { "confirmed" } else { "FAILED" });
            }
            writeln!(
                f,
                "{:<22} {:<11} {}{}",
                r.verdict.region.to_string(),
                status,
                evidence,
                check
            )?;
        }
        writeln!(
            f,
            "{} regions: {} achievable, {} impossible",
            self.regions.len(),
            self.achievable,
            self.impossible
        )?;
        write!(f, "note: {}", self.note)
    }
}
