use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::harness::providers::Workload;
use crate::harness::registry::Registry;
use crate::harness::{applicable, execute};
use crate::mappers::{MapperParams, MappingResult};
use crate::topology::Backend;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    SwapCount,
    CnotCount,
    Depth,
    OptimisationTime,
}

impl Criterion {
    pub const ALL: [Criterion; 4] =
        [Criterion::SwapCount, Criterion::CnotCount, Criterion::Depth, Criterion::OptimisationTime];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::SwapCount => "swap_count",
            Criterion::CnotCount => "cnot_count",
            Criterion::Depth => "depth",
            Criterion::OptimisationTime => "optimisation_time",
        }
    }

    fn value(self, entry: &RankedEntry) -> f64 {
        match self {
            Criterion::SwapCount => entry.swap_count.unwrap_or(usize::MAX) as f64,
            Criterion::CnotCount => entry.cnot_count.unwrap_or(usize::MAX) as f64,
            Criterion::Depth => entry.depth.unwrap_or(usize::MAX) as f64,
            Criterion::OptimisationTime => entry.optimisation_time,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| HarnessError::UnknownCriterion(s.to_string()))
    }
}

pub fn default_criteria() -> Vec<Criterion> {
    vec![Criterion::SwapCount, Criterion::CnotCount, Criterion::Depth]
}

pub fn validate_criteria(criteria: &[Criterion]) -> Result<(), HarnessError> {
    if criteria.is_empty() {
        return Err(HarnessError::InvalidConfig("criteria must not be empty".into()));
    }
    for (i, c) in criteria.iter().enumerate() {
        if criteria[..i].contains(c) {
            return Err(HarnessError::InvalidConfig(format!("criterion `{c}` is listed twice")));
        }
    }
    Ok(())
}

/// Parses a comma-separated chain such as `"swap_count,depth"`.
pub fn parse_criteria(text: &str) -> Result<Vec<Criterion>, HarnessError> {
    let criteria = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(Criterion::from_str)
        .collect::<Result<Vec<_>, _>>()?;
    validate_criteria(&criteria)?;
    Ok(criteria)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedEntry {
    pub mapper: String,
    pub swap_count: Option<usize>,
    pub cnot_count: Option<usize>,
    pub depth: Option<usize>,
    pub optimisation_time: f64,
    pub failure_reason: Option<String>,
}

impl RankedEntry {
    fn from_result(mapper: String, result: &MappingResult) -> Self {
        let m = result.mapped();
        RankedEntry {
            mapper,
            swap_count: m.map(|m| m.swap_count),
            cnot_count: m.map(|m| m.cnot_count),
            depth: m.map(|m| m.depth),
            optimisation_time: result.optimisation_time,
            failure_reason: result.failure_reason().map(|r| r.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelectionReport {
    pub best: Option<String>,
    pub criteria: Vec<Criterion>,
    /// Successes in rank order, then failures by id.
    pub ranked: Vec<RankedEntry>,
}

/// Lexicographic ranking over `criteria`, ties broken by mapper id.
pub fn rank_results(results: Vec<(String, MappingResult)>, criteria: &[Criterion]) -> SelectionReport {
    let entries: Vec<RankedEntry> = results.iter().map(|(id, r)| RankedEntry::from_result(id.clone(), r)).collect();
    let (mut ok, mut failed): (Vec<_>, Vec<_>) = entries.into_iter().partition(|e| e.failure_reason.is_none());
    ok.sort_by(|a, b| {
        criteria
            .iter()
            .map(|c| c.value(a).total_cmp(&c.value(b)))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.mapper.cmp(&b.mapper))
    });
    failed.sort_by(|a, b| a.mapper.cmp(&b.mapper));
    let best = ok.first().map(|e| e.mapper.clone());
    ok.extend(failed);
    SelectionReport { best, criteria: criteria.to_vec(), ranked: ok }
}

/// Runs every applicable mapper on one (workload, backend) pair and ranks them.
pub fn select_best(
    registry: &Registry,
    workload: &Workload,
    backend: &Backend,
    seed: u64,
    params: &MapperParams,
    criteria: &[Criterion],
) -> Result<SelectionReport, HarnessError> {
    validate_criteria(criteria)?;
    let results: Vec<(String, MappingResult)> = registry
        .mappers()
        .iter()
        .filter(|m| applicable(m.descriptor(), workload))
        .map(|m| (m.descriptor().id.clone(), execute(m.as_ref(), workload, backend, seed, params)))
        .collect();
    if results.is_empty() {
        return Err(HarnessError::NoApplicableMapper);
    }
    Ok(rank_results(results, criteria))
}
