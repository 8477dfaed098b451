//! Assessment reports: the JSON document, a terminal summary and an SVG
//! maturity chart.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autoeval::MetricStatus;
use crate::hybrid::{compute_score, Basis, Decision, Detail, FairScore, HybridOutcome, Override};
use crate::manual::MaturityLevel;
use crate::registry::{Letter, Registry};

pub const REPORT_FORMAT: &str = "fairgauge-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub ids: Vec<String>,
    pub principle: String,
    pub letter: Letter,
    pub mode: String,
    pub basis: Basis,
    pub point: u8,
    pub detail: Detail,
    /// Position on the 0-4 maturity axis used by the chart.
    pub bar_level: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overridden: Option<MetricStatus>,
    pub evidence: Vec<String>,
}

impl ReportRow {
    pub fn status_text(&self) -> String {
        match self.detail {
            Detail::Metric(s) => s.as_str().to_string(),
            Detail::Maturity(l) => format!("level {}", l.number()),
            Detail::Decision(Decision::Pass) => "override pass".into(),
            Detail::Decision(Decision::Fail) => "override fail".into(),
        }
    }

    fn outcome(&self) -> HybridOutcome {
        HybridOutcome {
            ids: self.ids.clone(),
            letter: self.letter,
            point: self.point,
            basis: self.basis,
            detail: self.detail,
            overridden: self.overridden,
            evidence: self.evidence.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format: String,
    pub target: String,
    pub timestamp: String,
    pub registry_version: String,
    pub exclude_na: bool,
    pub score: FairScore,
    pub rows: Vec<ReportRow>,
    pub overrides: Vec<Override>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub config_digests: BTreeMap<String, String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("report has no rows")]
    EmptyRows,
    #[error("report has {0} rows, expected one per indicator")]
    RowCount(usize),
    #[error("stored score {stored} does not match the rows ({recomputed})")]
    ScoreMismatch { stored: String, recomputed: String },
    #[error("row {0} does not match the registry")]
    RowMismatch(String),
    #[error("report is not valid JSON: {0}")]
    Json(String),
}

/// Maps an outcome onto the 0-4 chart axis: maturity levels as is,
/// automated Pass=4, Partial=2, Fail=1, NotApplicable=0.
pub fn bar_level(detail: &Detail) -> u8 {
    match detail {
        Detail::Maturity(l) => l.number(),
        Detail::Metric(MetricStatus::Pass) | Detail::Decision(Decision::Pass) => 4,
        Detail::Metric(MetricStatus::Partial) => 2,
        Detail::Metric(MetricStatus::Fail) | Detail::Decision(Decision::Fail) => 1,
        Detail::Metric(MetricStatus::NotApplicable) => 0,
    }
}

pub struct ReportInput<'a> {
    pub target: &'a str,
    pub timestamp: &'a str,
    pub exclude_na: bool,
    pub outcomes: &'a [HybridOutcome],
    pub overrides: &'a [Override],
    pub notes: Vec<String>,
    pub config_digests: BTreeMap<String, String>,
}

pub fn build_report(input: ReportInput<'_>, registry: &Registry) -> Result<ReportDocument, ReportError> {
    if input.outcomes.is_empty() {
        return Err(ReportError::EmptyRows);
    }
    let score = compute_score(input.outcomes, registry, input.exclude_na)
        .map_err(|_| ReportError::RowCount(input.outcomes.len()))?;
    let rows = input
        .outcomes
        .iter()
        .map(|o| {
            let ind = registry
                .lookup(o.primary_id())
                .map_err(|_| ReportError::RowMismatch(o.primary_id().to_string()))?;
            Ok(ReportRow {
                ids: o.ids.clone(),
                principle: ind.principle.sub().to_string(),
                letter: o.letter,
                mode: ind.mode.as_str().to_string(),
                basis: o.basis,
                point: o.point,
                detail: o.detail,
                bar_level: bar_level(&o.detail),
                overridden: o.overridden,
                evidence: o.evidence.clone(),
            })
        })
        .collect::<Result<Vec<_>, ReportError>>()?;
    Ok(ReportDocument {
        format: REPORT_FORMAT.to_string(),
        target: input.target.to_string(),
        timestamp: input.timestamp.to_string(),
        registry_version: registry.version().to_string(),
        exclude_na: input.exclude_na,
        score,
        rows,
        overrides: input.overrides.to_vec(),
        notes: input.notes,
        config_digests: input.config_digests,
    })
}

impl ReportDocument {
    /// Recomputes the score from the rows and compares it with the stored
    /// one; also checks each row against the registry.
    pub fn check(&self, registry: &Registry) -> Result<(), ReportError> {
        if self.rows.is_empty() {
            return Err(ReportError::EmptyRows);
        }
        if self.rows.len() != registry.len() {
            return Err(ReportError::RowCount(self.rows.len()));
        }
        for (row, ind) in self.rows.iter().zip(registry.indicators()) {
            let ids: Vec<&str> = row.ids.iter().map(String::as_str).collect();
            let consistent = ids == ind.ids()
                && row.letter == ind.letter()
                && row.principle == ind.principle.sub()
                && row.bar_level == bar_level(&row.detail)
                && row.point == expected_point(&row.detail);
            if !consistent {
                return Err(ReportError::RowMismatch(ind.id.to_string()));
            }
        }
        let outcomes: Vec<HybridOutcome> = self.rows.iter().map(ReportRow::outcome).collect();
        let recomputed = compute_score(&outcomes, registry, self.exclude_na)
            .map_err(|_| ReportError::RowCount(self.rows.len()))?;
        if recomputed != self.score {
            return Err(ReportError::ScoreMismatch {
                stored: format!("{}/{}", self.score.total_earned, self.score.total_max),
                recomputed: format!("{}/{}", recomputed.total_earned, recomputed.total_max),
            });
        }
        Ok(())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.point == 0)
    }
}

fn expected_point(detail: &Detail) -> u8 {
    u8::from(matches!(
        detail,
        Detail::Metric(MetricStatus::Pass)
            | Detail::Maturity(MaturityLevel::FullyImplemented)
            | Detail::Decision(Decision::Pass)
    ))
}

pub fn render_json(report: &ReportDocument) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

/// Parses and checks a report produced by `render_json`.
pub fn parse_report(text: &str, registry: &Registry) -> Result<ReportDocument, ReportError> {
    let report: ReportDocument =
        serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
    report.check(registry)?;
    Ok(report)
}

pub fn render_text(report: &ReportDocument) -> Result<String, ReportError> {
    if report.rows.is_empty() {
        return Err(ReportError::EmptyRows);
    }
    let mut out = String::new();
    let _ = writeln!(out, "FAIR assessment of {}", report.target);
    let _ = writeln!(
        out,
        "registry {}, assessed {}",
        report.registry_version, report.timestamp
    );
    out.push('\n');
    for l in &report.score.letters {
        let _ = writeln!(out, "{} {}/{}", l.letter, l.earned, l.max);
    }
    let _ = writeln!(out, "FAIR score: {}%", report.score.percent);
    let _ = writeln!(
        out,
        "({} of {} points{})",
        report.score.total_earned,
        report.score.total_max,
        if report.score.excluded.is_empty() {
            String::new()
        } else {
            format!(", {} not-applicable excluded", report.score.excluded.len())
        }
    );
    let failures: Vec<&ReportRow> = report.failures().collect();
    if !failures.is_empty() {
        out.push_str("\nNot earned:\n");
        for r in failures {
            let _ = writeln!(
                out,
                "  {} [{}] {} {}: {}",
                r.ids.join(" / "),
                r.principle,
                basis_word(r.basis),
                r.status_text(),
                r.evidence.join("; ")
            );
        }
    }
    if !report.overrides.is_empty() {
        out.push_str("\nOverrides:\n");
        for o in &report.overrides {
            let _ = writeln!(out, "  {o}");
        }
    }
    if !report.notes.is_empty() {
        out.push_str("\nNotes:\n");
        for n in &report.notes {
            let _ = writeln!(out, "  {n}");
        }
    }
    Ok(out)
}

fn basis_word(b: Basis) -> &'static str {
    match b {
        Basis::Automated => "automated",
        Basis::Manual => "manual",
        Basis::Override => "override",
    }
}

fn letter_color(l: Letter) -> &'static str {
    match l {
        Letter::F => "#1f77b4",
        Letter::A => "#2ca02c",
        Letter::I => "#ff7f0e",
        Letter::R => "#9467bd",
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

const ROW_H: u32 = 16;
const BAR_H: u32 = 11;
const LABEL_W: u32 = 230;
const UNIT_W: u32 = 60;
const HEADER_H: u32 = 150;
const GROUP_GAP: u32 = 24;

/// One horizontal bar per row, grouped by letter, with a semicircular
/// gauge for the overall percentage. Bars are the only `rect` elements.
pub fn render_svg(report: &ReportDocument) -> Result<String, ReportError> {
    if report.rows.is_empty() {
        return Err(ReportError::EmptyRows);
    }
    let groups = Letter::ALL
        .iter()
        .filter(|l| report.rows.iter().any(|r| r.letter == **l))
        .count() as u32;
    let width = LABEL_W + 4 * UNIT_W + 40;
    let height = HEADER_H + groups * GROUP_GAP + report.rows.len() as u32 * ROW_H + 20;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="10" y="20" font-size="14" font-weight="bold">{}</text>"#,
        xml_escape(&format!("FAIRness maturity: {}", report.target))
    );

    // Gauge: grey track and a colored arc proportional to the percentage.
    let (cx, cy, radius) = (width as f64 / 2.0, 115.0, 70.0);
    let frac = report.score.percent.tenths() as f64 / 1000.0;
    let angle = std::f64::consts::PI * (1.0 - frac);
    let (ex, ey) = (cx + radius * angle.cos(), cy - radius * angle.sin());
    let _ = writeln!(
        s,
        r##"<path class="gauge-track" d="M {:.2} {:.2} A {radius:.2} {radius:.2} 0 0 1 {:.2} {:.2}" fill="none" stroke="#dddddd" stroke-width="14"/>"##,
        cx - radius,
        cy,
        cx + radius,
        cy
    );
    if frac > 0.0 {
        let _ = writeln!(
            s,
            r##"<path class="gauge" d="M {:.2} {:.2} A {radius:.2} {radius:.2} 0 0 1 {ex:.2} {ey:.2}" fill="none" stroke="#2a9d8f" stroke-width="14"/>"##,
            cx - radius,
            cy
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="gauge-label" x="{cx:.2}" y="{:.2}" text-anchor="middle" font-size="20" font-weight="bold">{}%</text>"#,
        cy - 8.0,
        report.score.percent
    );
    let _ = writeln!(
        s,
        r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle">{} of {} points</text>"#,
        cy + 12.0,
        report.score.total_earned,
        report.score.total_max
    );

    // Scale lines for levels 0-4.
    let top = HEADER_H - 10;
    for level in 0..=4u32 {
        let x = LABEL_W + level * UNIT_W;
        let _ = writeln!(
            s,
            r##"<line x1="{x}" y1="{top}" x2="{x}" y2="{}" stroke="#eeeeee"/><text x="{x}" y="{}" text-anchor="middle" fill="#666666">{level}</text>"##,
            height - 10,
            top - 2
        );
    }

    let mut y = HEADER_H;
    for letter in Letter::ALL {
        let rows: Vec<&ReportRow> = report.rows.iter().filter(|r| r.letter == letter).collect();
        if rows.is_empty() {
            continue;
        }
        let subtotal = report.score.letter(letter);
        y += GROUP_GAP;
        let _ = writeln!(
            s,
            r#"<text x="10" y="{}" font-weight="bold" fill="{}">{} {}/{}</text>"#,
            y - 6,
            letter_color(letter),
            letter,
            subtotal.map_or(0, |l| l.earned),
            subtotal.map_or(0, |l| l.max)
        );
        for r in rows {
            let label = r.ids.join(" / ");
            let _ = writeln!(
                s,
                r#"<text x="10" y="{}">{}</text>"#,
                y + BAR_H - 1,
                xml_escape(&label)
            );
            let _ = writeln!(
                s,
                r#"<rect class="bar" x="{LABEL_W}" y="{y}" width="{}" height="{BAR_H}" fill="{}"><title>{}</title></rect>"#,
                r.bar_level as u32 * UNIT_W,
                letter_color(letter),
                xml_escape(&format!("{label}: {}", r.status_text()))
            );
            y += ROW_H;
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
