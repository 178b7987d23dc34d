//! Scenario files: one JSON document per engine call.
//!
//! ```json
//! {"version": 1, "kind": "combine", "frame": ["a", "b", "c"],
//!  "m1": {"a,b": "1/2", "b,c": "1/2"}, "m2": {"a,b": "1/2", "b,c": "1/2"}}
//! ```
//!
//! Numbers are strings: `"p/q"`, integers or decimals. Mass functions are
//! objects keyed by comma-separated labels.

use std::collections::BTreeMap;

use dsplogic::{
    parse_rational, AgreementSpec, CellSet, ConstraintSystem, Event, Frame, LinearConstraint,
    MassFunction, Partition, Rational, Relation, Statement, SubsetMask,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Scenario {
    Combine(CombineScenario),
    Bounds(BoundsScenario),
    Agree(AgreeScenario),
    Lottery(LotteryScenario),
    Odds(OddsScenario),
    Nonpartition(NonpartitionScenario),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Combine(_) => "combine",
            Scenario::Bounds(_) => "bounds",
            Scenario::Agree(_) => "agree",
            Scenario::Lottery(_) => "lottery",
            Scenario::Odds(_) => "odds",
            Scenario::Nonpartition(_) => "nonpartition",
        }
    }

    fn version(&self) -> u32 {
        match self {
            Scenario::Combine(s) => s.version,
            Scenario::Bounds(s) => s.version,
            Scenario::Agree(s) => s.version,
            Scenario::Lottery(s) => s.version,
            Scenario::Odds(s) => s.version,
            Scenario::Nonpartition(s) => s.version,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let scenario: Scenario = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("invalid scenario file: {e}")))?;
        if scenario.version() != VERSION {
            return Err(CliError::Usage(format!(
                "unsupported scenario version {} (expected {VERSION})",
                scenario.version()
            )));
        }
        Ok(scenario)
    }
}

pub type MassSpec = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombineScenario {
    pub version: u32,
    pub frame: Vec<String>,
    pub m1: MassSpec,
    pub m2: MassSpec,
    /// Subsets to report belief and plausibility for.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventSpec {
    /// Frame labels; all elements when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    /// Cell names (`E1&E2`, `E1&!E2`, `!E1&E2`, `!E1&!E2`) or the shorthands
    /// `E1`, `E2`, `!E1`, `!E2`; all cells when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub event: EventSpec,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConstraintSpec {
    /// `P(event) rel value`.
    Prob {
        event: EventSpec,
        rel: String,
        value: String,
    },
    /// `P(event | given) rel value`.
    Cond {
        event: EventSpec,
        given: EventSpec,
        rel: String,
        value: String,
    },
    /// `sum coef * P(event) rel rhs`.
    Linear {
        terms: Vec<TermSpec>,
        rel: String,
        rhs: String,
    },
    /// `P(a & b | given) = P(a | given) P(b | given)`; always rejected.
    Independent {
        a: EventSpec,
        b: EventSpec,
        given: EventSpec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    pub event: EventSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub given: Option<EventSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsScenario {
    pub version: u32,
    pub frame: Vec<String>,
    #[serde(default)]
    pub constraints: Vec<ConstraintSpec>,
    pub query: QuerySpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgreeScenario {
    pub version: u32,
    pub frame: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub m1: MassSpec,
    pub m2: MassSpec,
    pub query: Vec<String>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_samples() -> usize {
    100
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LotteryScenario {
    pub version: u32,
    pub n: u64,
    pub m1: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OddsScenario {
    pub version: u32,
    pub m1: String,
    pub m2: String,
    pub prior: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonpartitionScenario {
    pub version: u32,
}

pub fn number(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Usage(e.to_string()))
}

fn is_decimal(text: &str) -> bool {
    !text.contains('/') && text.contains(['.', 'e', 'E'])
}

pub fn frame(labels: &[String]) -> Result<Frame, CliError> {
    Ok(Frame::new(labels.iter().cloned())?)
}

pub fn subset(frame: &Frame, labels: &[String]) -> Result<SubsetMask, CliError> {
    Ok(frame.subset(labels)?)
}

fn subset_key(frame: &Frame, key: &str) -> Result<SubsetMask, CliError> {
    let labels: Vec<&str> = key
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(frame.subset(labels)?)
}

/// Builds a mass function; decimal literals get the `1e-9` sum tolerance.
pub fn mass(frame: &Frame, spec: &MassSpec) -> Result<MassFunction, CliError> {
    let mut items = Vec::with_capacity(spec.len());
    let mut decimal = false;
    for (key, value) in spec {
        decimal |= is_decimal(value);
        items.push((subset_key(frame, key)?, number(value)?));
    }
    let tolerance = if decimal {
        dsplogic::ratio(1, 1_000_000_000)
    } else {
        Rational::from_integer(0.into())
    };
    Ok(MassFunction::with_tolerance(frame, items, &tolerance)?)
}

/// Canonical key for a subset: labels in frame order, comma-separated.
pub fn key_of(set: &SubsetMask) -> String {
    set.labels().join(",")
}

pub fn mass_spec(m: &MassFunction) -> MassSpec {
    m.focal_sets()
        .map(|(s, v)| (key_of(&s), v.to_string()))
        .collect()
}

fn relation(text: &str) -> Result<Relation, CliError> {
    Relation::from_symbol(text).ok_or_else(|| CliError::Usage(format!("unknown relation `{text}`")))
}

fn cells(names: &[String]) -> Result<CellSet, CliError> {
    let mut bits = Vec::new();
    for name in names {
        let set = match name.as_str() {
            "E1" => CellSet::E1,
            "E2" => CellSet::E2,
            "!E1" => CellSet::E1.complement(),
            "!E2" => CellSet::E2.complement(),
            other => match dsplogic::EvidenceCell::from_name(other) {
                Some(c) => CellSet::of(&[c]),
                None => return Err(CliError::Usage(format!("unknown evidence cell `{other}`"))),
            },
        };
        bits.extend(set.cells());
    }
    Ok(CellSet::of(&bits))
}

pub fn event(frame: &Frame, spec: &EventSpec) -> Result<Event, CliError> {
    let set = match &spec.elements {
        Some(labels) => subset(frame, labels)?,
        None => frame.full(),
    };
    let cell_set = match &spec.cells {
        Some(names) => cells(names)?,
        None => CellSet::ALL,
    };
    Ok(Event::product(&set, cell_set))
}

pub fn constraint_system(
    frame: &Frame,
    specs: &[ConstraintSpec],
) -> Result<ConstraintSystem, CliError> {
    let mut system = ConstraintSystem::for_frame(frame);
    for spec in specs {
        let statement = match spec {
            ConstraintSpec::Prob {
                event: e,
                rel,
                value,
            } => Statement::Probability {
                event: event(frame, e)?,
                relation: relation(rel)?,
                value: number(value)?,
            },
            ConstraintSpec::Cond {
                event: e,
                given,
                rel,
                value,
            } => Statement::Conditional {
                event: event(frame, e)?,
                given: event(frame, given)?,
                relation: relation(rel)?,
                value: number(value)?,
            },
            ConstraintSpec::Linear { terms, rel, rhs } => {
                let mut coeffs = Vec::new();
                for t in terms {
                    let c = number(&t.coef)?;
                    coeffs.extend(event(frame, &t.event)?.atoms().map(|a| (a, c.clone())));
                }
                Statement::Linear(LinearConstraint::new(coeffs, relation(rel)?, number(rhs)?)?)
            }
            ConstraintSpec::Independent { a, b, given } => Statement::Independence {
                a: event(frame, a)?,
                b: event(frame, b)?,
                given: event(frame, given)?,
            },
        };
        system.add_statement(statement)?;
    }
    Ok(system)
}

pub fn agreement_spec(s: &AgreeScenario) -> Result<(AgreementSpec, SubsetMask), CliError> {
    let f = frame(&s.frame)?;
    let blocks = s
        .blocks
        .iter()
        .map(|b| subset(&f, b))
        .collect::<Result<Vec<_>, _>>()?;
    let partition = Partition::new(&f, blocks)?;
    let spec = AgreementSpec::new(partition, mass(&f, &s.m1)?, mass(&f, &s.m2)?)?;
    Ok((spec, subset(&f, &s.query)?))
}
