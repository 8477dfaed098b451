//! End-to-end runs: target -> harvest -> metrics, then answers and
//! overrides -> merged outcomes -> report.

use thiserror::Error;

use crate::autoeval::{evaluate_metrics, AutoReport, EvalConfig};
use crate::harvest::{harvest, load_target, AssessmentTarget, Fetcher, HarvestError, LoadMode, ParseWarning};
use crate::hybrid::{merge, HybridError, Override};
use crate::manual::{validate_answers, AnswerSet, Finding, MissingAnswers};
use crate::registry::Registry;
use crate::report::{build_report, ReportDocument, ReportError, ReportInput};

#[derive(Debug, Error)]
pub enum AssessError {
    #[error(transparent)]
    Harvest(#[from] HarvestError),
    #[error(transparent)]
    MissingAnswers(#[from] MissingAnswers),
    #[error(transparent)]
    Hybrid(#[from] HybridError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

#[derive(Debug, Clone)]
pub struct AutoRun {
    pub target: AssessmentTarget,
    pub report: AutoReport,
    pub warnings: Vec<ParseWarning>,
}

/// Loads and harvests a target and runs every automated metric.
pub fn run_auto(
    spec: &str,
    mode: LoadMode,
    fetcher: &dyn Fetcher,
    config: &EvalConfig,
    timestamp: &str,
) -> Result<AutoRun, AssessError> {
    let mut target = load_target(spec, mode)?;
    let harvested = harvest(&target, fetcher)?;
    target.adopt_harvested_files(&harvested.graph);
    let mut report = evaluate_metrics(&harvested.graph, &target, config);
    report.harvested_at = timestamp.to_string();
    Ok(AutoRun {
        target,
        report,
        warnings: harvested.warnings,
    })
}

#[derive(Debug, Clone, Default)]
pub struct HybridOptions {
    /// Reject answer sets that miss a manual indicator instead of
    /// defaulting them to level 1.
    pub strict: bool,
    pub exclude_na: bool,
}

#[derive(Debug, Clone)]
pub struct HybridRun {
    pub report: ReportDocument,
    pub findings: Vec<Finding>,
}

pub fn run_hybrid(
    auto: &AutoRun,
    answers: &AnswerSet,
    overrides: &[Override],
    registry: &Registry,
    config: &EvalConfig,
    options: &HybridOptions,
) -> Result<HybridRun, AssessError> {
    let validation = validate_answers(answers, registry, options.strict)?;
    let outcomes = merge(&validation.answers, &auto.report, registry, overrides)?;
    let mut notes: Vec<String> = auto
        .warnings
        .iter()
        .map(|w| format!("{}: {}", w.source, w.message))
        .collect();
    notes.extend(validation.findings.iter().map(|f| f.message.clone()));
    let report = build_report(
        ReportInput {
            target: &auto.target.identifier,
            timestamp: &auto.report.harvested_at,
            exclude_na: options.exclude_na,
            outcomes: &outcomes,
            overrides,
            notes,
            config_digests: config.digests(),
        },
        registry,
    )?;
    Ok(HybridRun {
        report,
        findings: validation.findings,
    })
}
