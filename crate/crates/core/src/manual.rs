//! Manual maturity answers: parsing, serialization, validation and the
//! interactive questionnaire.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::registry::{Mode, Registry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum MaturityLevel {
    NotApplicable = 0,
    NotConsidered = 1,
    UnderConsideration = 2,
    InImplementation = 3,
    FullyImplemented = 4,
}

impl MaturityLevel {
    pub const ALL: [MaturityLevel; 5] = [
        MaturityLevel::NotApplicable,
        MaturityLevel::NotConsidered,
        MaturityLevel::UnderConsideration,
        MaturityLevel::InImplementation,
        MaturityLevel::FullyImplemented,
    ];

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get(n as usize).copied()
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            MaturityLevel::NotApplicable => "NotApplicable",
            MaturityLevel::NotConsidered => "NotConsidered",
            MaturityLevel::UnderConsideration => "UnderConsideration",
            MaturityLevel::InImplementation => "InImplementation",
            MaturityLevel::FullyImplemented => "FullyImplemented",
        }
    }
}

impl TryFrom<u8> for MaturityLevel {
    type Error = String;

    fn try_from(n: u8) -> Result<Self, String> {
        Self::from_number(n).ok_or_else(|| format!("maturity level {n} outside 0-4"))
    }
}

impl From<MaturityLevel> for u8 {
    fn from(l: MaturityLevel) -> u8 {
        l.number()
    }
}

impl fmt::Display for MaturityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.number(), self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answer {
    pub level: MaturityLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerSet {
    pub subject: String,
    pub answers: BTreeMap<String, Answer>,
}

impl AnswerSet {
    pub fn level(&self, id: &str) -> Option<MaturityLevel> {
        self.answers.get(id).map(|a| a.level)
    }

    pub fn len(&self) -> usize {
        self.answers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.answers.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnswerError {
    #[error("line {line}: unknown indicator `{id}`")]
    UnknownIndicator { line: usize, id: String },
    #[error("line {line}: level `{level}` for {id} is outside 0-4")]
    LevelOutOfRange { line: usize, id: String, level: String },
    #[error("line {line}: second answer for {id} (first on line {first})")]
    DuplicateAnswer { line: usize, id: String, first: usize },
    #[error("line {line}: expected `<indicator-id> <level> [# note]`")]
    Malformed { line: usize },
}

/// Parses the answer-file format. Ids may be any registry id, including
/// automated ones; validation decides what to do with those.
pub fn parse_answers(text: &str, registry: &Registry) -> Result<AnswerSet, AnswerError> {
    let mut answers = BTreeMap::new();
    let mut first_seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut subject = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if let Some(s) = raw.trim_start().strip_prefix("# subject:") {
            subject = s.trim().to_string();
            continue;
        }
        let (body, note) = match raw.split_once('#') {
            Some((b, n)) => (b, Some(n.trim().to_string()).filter(|n| !n.is_empty())),
            None => (raw, None),
        };
        let mut fields = body.split_whitespace();
        let Some(id) = fields.next() else {
            continue;
        };
        let Some(level_text) = fields.next() else {
            return Err(AnswerError::Malformed { line });
        };
        if fields.next().is_some() {
            return Err(AnswerError::Malformed { line });
        }
        if registry.lookup(id).is_err() {
            return Err(AnswerError::UnknownIndicator {
                line,
                id: id.to_string(),
            });
        }
        let level = level_text
            .parse::<u8>()
            .ok()
            .and_then(MaturityLevel::from_number)
            .ok_or_else(|| AnswerError::LevelOutOfRange {
                line,
                id: id.to_string(),
                level: level_text.to_string(),
            })?;
        if let Some(&first) = first_seen.get(id) {
            return Err(AnswerError::DuplicateAnswer {
                line,
                id: id.to_string(),
                first,
            });
        }
        first_seen.insert(id.to_string(), line);
        answers.insert(id.to_string(), Answer { level, note });
    }
    Ok(AnswerSet { subject, answers })
}

/// Writes answers in registry order; ids the registry does not know come
/// last in key order.
pub fn serialize_answers(set: &AnswerSet, registry: &Registry) -> String {
    let mut out = String::new();
    if !set.subject.is_empty() {
        out.push_str(&format!("# subject: {}\n", set.subject));
    }
    let mut written = std::collections::BTreeSet::new();
    let ordered = registry
        .indicators()
        .iter()
        .flat_map(|i| i.ids())
        .map(str::to_string)
        .chain(set.answers.keys().cloned());
    for id in ordered {
        if written.contains(&id) {
            continue;
        }
        if let Some(a) = set.answers.get(&id) {
            out.push_str(&format!("{id} {}", a.level.number()));
            if let Some(note) = &a.note {
                out.push_str(&format!(" # {note}"));
            }
            out.push('\n');
            written.insert(id);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FindingKind {
    /// Lenient mode filled in level 1 for a missing answer.
    DefaultedMissing,
    /// A Dual indicator was answered; the automated metric decides it.
    SupersededByAutomated,
    /// The id is an automated metric, not a questionnaire item.
    UnknownManualIndicator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub indicator: String,
    pub kind: FindingKind,
    pub message: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("missing answers for {} manual indicator(s): {}", .0.len(), .0.join(", "))]
pub struct MissingAnswers(pub Vec<String>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    /// Answers keyed by questionnaire id, total over the ManualOnly set, plus
    /// any Dual answers that were supplied.
    pub answers: AnswerSet,
    pub findings: Vec<Finding>,
}

pub fn validate_answers(
    set: &AnswerSet,
    registry: &Registry,
    strict: bool,
) -> Result<Validation, MissingAnswers> {
    let mut findings = Vec::new();
    let mut kept = BTreeMap::new();
    for (id, answer) in &set.answers {
        let Ok(ind) = registry.lookup(id) else {
            findings.push(Finding {
                indicator: id.clone(),
                kind: FindingKind::UnknownManualIndicator,
                message: format!("{id} is not in the registry"),
            });
            continue;
        };
        if ind.manual_id() != Some(id.as_str()) {
            findings.push(Finding {
                indicator: id.clone(),
                kind: FindingKind::UnknownManualIndicator,
                message: format!("{id} is an automated metric and takes no manual answer"),
            });
            continue;
        }
        if ind.mode == Mode::Dual {
            findings.push(Finding {
                indicator: id.clone(),
                kind: FindingKind::SupersededByAutomated,
                message: format!(
                    "{id}: superseded by automated result {}",
                    ind.dual_partner.unwrap_or_default()
                ),
            });
        }
        kept.insert(id.clone(), answer.clone());
    }
    let missing: Vec<String> = registry
        .manual_only()
        .map(|i| i.id.to_string())
        .filter(|id| !kept.contains_key(id))
        .collect();
    if strict && !missing.is_empty() {
        return Err(MissingAnswers(missing));
    }
    for id in missing {
        findings.push(Finding {
            indicator: id.clone(),
            kind: FindingKind::DefaultedMissing,
            message: format!("{id}: no answer, assuming level 1 (NotConsidered)"),
        });
        kept.insert(
            id,
            Answer {
                level: MaturityLevel::NotConsidered,
                note: None,
            },
        );
    }
    Ok(Validation {
        answers: AnswerSet {
            subject: set.subject.clone(),
            answers: kept,
        },
        findings,
    })
}

#[derive(Debug, Error)]
pub enum FillError {
    #[error("questionnaire aborted after {answered} answer(s)")]
    Aborted { answered: usize, draft: AnswerSet },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Prompts once per ManualOnly indicator. An empty reply keeps the existing
/// answer when there is one; `q` or end of input aborts, returning the
/// answers given so far as a draft.
pub fn interactive_fill<R: BufRead, W: Write>(
    registry: &Registry,
    existing: Option<&AnswerSet>,
    input: &mut R,
    output: &mut W,
) -> Result<AnswerSet, FillError> {
    let mut set = AnswerSet {
        subject: existing.map(|e| e.subject.clone()).unwrap_or_default(),
        answers: BTreeMap::new(),
    };
    let total = registry.manual_only().count();
    for (n, ind) in registry.manual_only().enumerate() {
        let default = existing.and_then(|e| e.answers.get(ind.id));
        writeln!(output, "[{}/{total}] {}: {}", n + 1, ind.id, ind.description)?;
        for level in MaturityLevel::ALL {
            writeln!(output, "  {level}")?;
        }
        loop {
            match default {
                Some(d) => write!(output, "level [{}]> ", d.level.number())?,
                None => write!(output, "level> ")?,
            }
            output.flush()?;
            let mut line = String::new();
            let read = input.read_line(&mut line)?;
            let reply = line.trim();
            if read == 0 || reply.eq_ignore_ascii_case("q") {
                return Err(FillError::Aborted {
                    answered: set.len(),
                    draft: set,
                });
            }
            if reply.is_empty() {
                if let Some(d) = default {
                    set.answers.insert(ind.id.to_string(), d.clone());
                    break;
                }
                writeln!(output, "an answer is required")?;
                continue;
            }
            match reply.parse::<u8>().ok().and_then(MaturityLevel::from_number) {
                Some(level) => {
                    let note = default.and_then(|d| d.note.clone());
                    set.answers
                        .insert(ind.id.to_string(), Answer { level, note });
                    break;
                }
                None => writeln!(output, "enter a level from 0 to 4, or q to stop")?,
            }
        }
    }
    Ok(set)
}
