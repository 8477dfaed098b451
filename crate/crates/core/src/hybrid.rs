//! Merging manual answers with automated verdicts into one binary point per
//! indicator, and the FAIR score over those points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autoeval::{AutoReport, MetricStatus};
use crate::manual::{AnswerSet, MaturityLevel};
use crate::registry::{Letter, Mode, Registry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Override {
    pub metric_id: String,
    pub decided: Decision,
    pub justification: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HybridError {
    #[error("override for {0} has no justification")]
    OverrideWithoutJustification(String),
    #[error("{0} is decided manually; overrides apply to automated metrics only")]
    OverrideOnManualIndicator(String),
    #[error("override names unknown metric `{0}`")]
    UnknownMetric(String),
    #[error("malformed override `{0}`: expected `<metric>=pass|fail: <justification>`")]
    MalformedOverride(String),
    #[error("two overrides for {0}")]
    DuplicateOverride(String),
    #[error("automated report lacks metric {0}")]
    MissingMetric(String),
    #[error("no answer for manual indicator {0}")]
    MissingAnswer(String),
}

impl FromStr for Override {
    type Err = HybridError;

    /// `<metric>=pass|fail: <justification>`
    fn from_str(s: &str) -> Result<Self, HybridError> {
        let malformed = || HybridError::MalformedOverride(s.trim().to_string());
        let (id, rest) = s.split_once('=').ok_or_else(malformed)?;
        let id = id.trim();
        let (decision, why) = match rest.split_once(':') {
            Some((d, w)) => (d, w),
            None => (rest, ""),
        };
        let decided = match decision.trim().to_ascii_lowercase().as_str() {
            "pass" => Decision::Pass,
            "fail" => Decision::Fail,
            _ => return Err(malformed()),
        };
        if id.is_empty() {
            return Err(malformed());
        }
        let justification = why.trim();
        if justification.is_empty() {
            return Err(HybridError::OverrideWithoutJustification(id.to_string()));
        }
        Ok(Override {
            metric_id: id.to_string(),
            decided,
            justification: justification.to_string(),
        })
    }
}

impl fmt::Display for Override {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.decided {
            Decision::Pass => "pass",
            Decision::Fail => "fail",
        };
        write!(f, "{}={d}: {}", self.metric_id, self.justification)
    }
}

/// Reads an override file: one override per line, `#` comments and blank
/// lines ignored.
pub fn parse_overrides(text: &str) -> Result<Vec<Override>, HybridError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// Checks an override against the registry: the id must be an automated
/// metric (AutomatedOnly or the automated half of a Dual pair).
pub fn check_override(o: &Override, registry: &Registry) -> Result<(), HybridError> {
    if o.justification.trim().is_empty() {
        return Err(HybridError::OverrideWithoutJustification(o.metric_id.clone()));
    }
    let ind = registry
        .lookup(&o.metric_id)
        .map_err(|_| HybridError::UnknownMetric(o.metric_id.clone()))?;
    if ind.automated_id() != Some(o.metric_id.as_str()) {
        return Err(HybridError::OverrideOnManualIndicator(o.metric_id.clone()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Automated,
    Manual,
    Override,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Detail {
    Metric(MetricStatus),
    Maturity(MaturityLevel),
    Decision(Decision),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HybridOutcome {
    /// Primary id followed by the dual partner, as in the registry.
    pub ids: Vec<String>,
    pub letter: Letter,
    pub point: u8,
    pub basis: Basis,
    pub detail: Detail,
    /// The automated status an override replaced, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overridden: Option<MetricStatus>,
    pub evidence: Vec<String>,
}

impl HybridOutcome {
    pub fn primary_id(&self) -> &str {
        &self.ids[0]
    }

    /// Whether the indicator was judged not applicable, either by a level-0
    /// answer or an automated NotApplicable verdict.
    pub fn not_applicable(&self) -> bool {
        matches!(
            self.detail,
            Detail::Metric(MetricStatus::NotApplicable) | Detail::Maturity(MaturityLevel::NotApplicable)
        )
    }
}

/// Combines the inputs into exactly one outcome per registry indicator.
/// `answers` must be total over the ManualOnly indicators (see
/// `validate_answers`).
pub fn merge(
    answers: &AnswerSet,
    auto: &AutoReport,
    registry: &Registry,
    overrides: &[Override],
) -> Result<Vec<HybridOutcome>, HybridError> {
    let mut by_metric: BTreeMap<&str, &Override> = BTreeMap::new();
    for o in overrides {
        check_override(o, registry)?;
        if by_metric.insert(o.metric_id.as_str(), o).is_some() {
            return Err(HybridError::DuplicateOverride(o.metric_id.clone()));
        }
    }
    let mut out = Vec::with_capacity(registry.len());
    for ind in registry.indicators() {
        let ids: Vec<String> = ind.ids().into_iter().map(str::to_string).collect();
        let outcome = match ind.automated_id() {
            None => {
                let answer = answers
                    .answers
                    .get(ind.id)
                    .ok_or_else(|| HybridError::MissingAnswer(ind.id.to_string()))?;
                let mut evidence = vec![format!("maturity level {}", answer.level)];
                evidence.extend(answer.note.clone());
                HybridOutcome {
                    ids,
                    letter: ind.letter(),
                    point: u8::from(answer.level == MaturityLevel::FullyImplemented),
                    basis: Basis::Manual,
                    detail: Detail::Maturity(answer.level),
                    overridden: None,
                    evidence,
                }
            }
            Some(metric) => {
                let result = auto
                    .results
                    .get(metric)
                    .ok_or_else(|| HybridError::MissingMetric(metric.to_string()))?;
                let mut evidence = result.evidence.clone();
                if ind.mode == Mode::Dual {
                    if let Some(a) = answers.answers.get(ind.id) {
                        evidence.push(format!(
                            "manual answer {} superseded by automated result",
                            a.level.number()
                        ));
                    }
                }
                match by_metric.get(metric) {
                    Some(o) => {
                        evidence.push(format!("override: {}", o.justification));
                        HybridOutcome {
                            ids,
                            letter: ind.letter(),
                            point: u8::from(o.decided == Decision::Pass),
                            basis: Basis::Override,
                            detail: Detail::Decision(o.decided),
                            overridden: Some(result.status),
                            evidence,
                        }
                    }
                    None => HybridOutcome {
                        ids,
                        letter: ind.letter(),
                        point: u8::from(result.status == MetricStatus::Pass),
                        basis: Basis::Automated,
                        detail: Detail::Metric(result.status),
                        overridden: None,
                        evidence,
                    },
                }
            }
        };
        out.push(outcome);
    }
    Ok(out)
}

/// A percentage held as an integer number of tenths, so that the published
/// one-decimal figures are reproduced without floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(u32);

impl Percent {
    /// `100 * earned / max` rounded half away from zero to one decimal.
    pub fn of(earned: u32, max: u32) -> Percent {
        if max == 0 {
            return Percent(0);
        }
        let (e, m) = (earned as u64, max as u64);
        Percent(((2000 * e + m) / (2 * m)) as u32)
    }

    pub fn tenths(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 10.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.0 / 10, self.0 % 10)
    }
}

impl FromStr for Percent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("`{s}` is not a one-decimal percentage");
        let (whole, frac) = s.split_once('.').ok_or_else(bad)?;
        if frac.len() != 1 {
            return Err(bad());
        }
        let w: u32 = whole.parse().map_err(|_| bad())?;
        let d: u32 = frac.parse().map_err(|_| bad())?;
        Ok(Percent(w * 10 + d))
    }
}

impl Serialize for Percent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Percent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterScore {
    pub letter: Letter,
    pub earned: u32,
    pub max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FairScore {
    pub letters: Vec<LetterScore>,
    pub total_earned: u32,
    pub total_max: u32,
    pub percent: Percent,
    /// Indicators removed from both sides under exclude-NA.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
}

impl FairScore {
    pub fn letter(&self, l: Letter) -> Option<LetterScore> {
        self.letters.iter().copied().find(|s| s.letter == l)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoreError {
    #[error("expected one outcome per indicator; missing: {missing:?}, unexpected: {unexpected:?}")]
    IncompleteOutcomes {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },
}

pub fn compute_score(
    outcomes: &[HybridOutcome],
    registry: &Registry,
    exclude_na: bool,
) -> Result<FairScore, ScoreError> {
    let expected: BTreeSet<&str> = registry.indicators().iter().map(|i| i.id).collect();
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for o in outcomes {
        *seen.entry(o.primary_id()).or_default() += 1;
    }
    let missing: Vec<String> = expected
        .iter()
        .filter(|id| !seen.contains_key(*id))
        .map(|s| s.to_string())
        .collect();
    let unexpected: Vec<String> = seen
        .iter()
        .filter(|(id, n)| !expected.contains(*id) || **n > 1)
        .map(|(id, _)| id.to_string())
        .collect();
    if !missing.is_empty() || !unexpected.is_empty() {
        return Err(ScoreError::IncompleteOutcomes {
            missing,
            unexpected,
        });
    }
    let mut excluded = Vec::new();
    let mut letters: Vec<LetterScore> = Letter::ALL
        .iter()
        .map(|&letter| LetterScore {
            letter,
            earned: 0,
            max: 0,
        })
        .collect();
    for ind in registry.indicators() {
        let o = outcomes
            .iter()
            .find(|o| o.primary_id() == ind.id)
            .expect("checked above");
        if exclude_na && o.basis != Basis::Override && o.not_applicable() {
            excluded.push(ind.id.to_string());
            continue;
        }
        let slot = letters
            .iter_mut()
            .find(|s| s.letter == ind.letter())
            .expect("all letters present");
        slot.max += 1;
        slot.earned += u32::from(o.point);
    }
    let total_earned = letters.iter().map(|s| s.earned).sum();
    let total_max = letters.iter().map(|s| s.max).sum();
    Ok(FairScore {
        letters,
        total_earned,
        total_max,
        percent: Percent::of(total_earned, total_max),
        excluded,
    })
}
