//! The consolidated registry of FAIRness indicators.
//!
//! Forty-one RDA maturity indicators and seventeen automated metrics are
//! folded into 47 scoring indicators. Eleven of them are *dual*: an RDA
//! question and an automated metric that test the same thing, stored as a
//! single entry carrying both ids.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const REGISTRY_VERSION: &str = "paper-v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown indicator `{0}`")]
    UnknownIndicator(String),
}

/// One of the four top-level FAIR letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    F,
    A,
    I,
    R,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::F, Letter::A, Letter::I, Letter::R];

    pub fn as_char(self) -> char {
        match self {
            Letter::F => 'F',
            Letter::A => 'A',
            Letter::I => 'I',
            Letter::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'F' => Some(Letter::F),
            'A' => Some(Letter::A),
            'I' => Some(Letter::I),
            'R' => Some(Letter::R),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A sub-principle label such as `F1`, `A1.1` or `R1.3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrincipleId {
    sub: &'static str,
}

const SUB_PRINCIPLES: [&str; 15] = [
    "F1", "F2", "F3", "F4", "A1", "A1.1", "A1.2", "A2", "I1", "I2", "I3", "R1", "R1.1", "R1.2",
    "R1.3",
];

impl PrincipleId {
    pub fn parse(sub: &str) -> Option<Self> {
        SUB_PRINCIPLES
            .iter()
            .find(|s| **s == sub)
            .map(|s| PrincipleId { sub: s })
    }

    pub fn letter(&self) -> Letter {
        // SUB_PRINCIPLES entries all start with a valid letter.
        Letter::from_char(self.sub.chars().next().unwrap_or('F')).unwrap_or(Letter::F)
    }

    pub fn sub(&self) -> &'static str {
        self.sub
    }
}

impl fmt::Display for PrincipleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.sub)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Rda,
    FsF,
}

/// The resource an indicator evaluates: metadata, data, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    M,
    D,
    MD,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::M => "M",
            Target::D => "D",
            Target::MD => "MD",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    ManualOnly,
    AutomatedOnly,
    Dual,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ManualOnly => "manual",
            Mode::AutomatedOnly => "automated",
            Mode::Dual => "dual",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indicator {
    pub id: &'static str,
    pub source: Source,
    pub principle: PrincipleId,
    pub target: Target,
    pub description: &'static str,
    pub mode: Mode,
    pub dual_partner: Option<&'static str>,
}

impl Indicator {
    /// The id of the automated metric deciding this indicator, if any.
    pub fn automated_id(&self) -> Option<&'static str> {
        match self.mode {
            Mode::ManualOnly => None,
            Mode::AutomatedOnly => Some(self.id),
            Mode::Dual => self.dual_partner,
        }
    }

    /// The id answered in the manual questionnaire, if any.
    pub fn manual_id(&self) -> Option<&'static str> {
        match self.mode {
            Mode::AutomatedOnly => None,
            Mode::ManualOnly | Mode::Dual => Some(self.id),
        }
    }

    /// Primary id followed by the dual partner, if there is one.
    pub fn ids(&self) -> Vec<&'static str> {
        std::iter::once(self.id).chain(self.dual_partner).collect()
    }

    pub fn letter(&self) -> Letter {
        self.principle.letter()
    }
}

#[derive(Debug, Clone)]
pub struct Registry {
    indicators: Vec<Indicator>,
    version: String,
}

impl Registry {
    pub fn indicators(&self) -> &[Indicator] {
        &self.indicators
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn len(&self) -> usize {
        self.indicators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indicators.is_empty()
    }

    /// Finds the indicator whose id or dual partner equals `id`.
    pub fn lookup(&self, id: &str) -> Result<&Indicator, RegistryError> {
        self.indicators
            .iter()
            .find(|ind| ind.id == id || ind.dual_partner == Some(id))
            .ok_or_else(|| RegistryError::UnknownIndicator(id.to_string()))
    }

    /// The 17 automated metric ids in table order.
    pub fn automated_ids(&self) -> Vec<&'static str> {
        self.indicators
            .iter()
            .filter_map(Indicator::automated_id)
            .collect()
    }

    pub fn manual_only(&self) -> impl Iterator<Item = &Indicator> {
        self.indicators
            .iter()
            .filter(|ind| ind.mode == Mode::ManualOnly)
    }

    /// Maximum points per letter, in F, A, I, R order.
    pub fn letter_maxima(&self) -> [(Letter, u32); 4] {
        Letter::ALL.map(|l| {
            let n = self.indicators.iter().filter(|i| i.letter() == l).count();
            (l, n as u32)
        })
    }
}

// (principle, id, description, partner); table order.
const TABLE: &[(&str, &str, &str, Option<&str>)] = &[
    ("F1", "RDA-F1-01M", "Metadata is identified by a persistent identifier", None),
    ("F1", "RDA-F1-01D", "Data is identified by a persistent identifier", Some("FsF-F1-02D")),
    ("F1", "RDA-F1-02M", "Metadata is identified by a globally unique identifier", None),
    ("F1", "RDA-F1-02D", "Data is identified by a globally unique identifier", Some("FsF-F1-01D")),
    ("F2", "RDA-F2-01M", "Rich metadata is provided to allow discovery", None),
    ("F2", "FsF-F2-01M", "Metadata includes descriptive core elements to support data findability", None),
    ("F3", "RDA-F3-01M", "Metadata includes the identifier for the data", Some("FsF-F3-01M")),
    ("F4", "RDA-F4-01M", "Metadata is offered in such a way that it can be harvested and indexed", Some("FsF-F4-01M")),
    ("A1", "RDA-A1-01M", "Metadata contains information to enable the user to get access to the data", None),
    ("A1", "RDA-A1-02M", "Metadata can be accessed manually", None),
    ("A1", "RDA-A1-02D", "Data can be accessed manually", None),
    ("A1", "RDA-A1-03M", "Metadata identifier resolves to a metadata record or digital object", None),
    ("A1", "RDA-A1-03D", "Data identifier resolves to a metadata record or digital object", None),
    ("A1", "RDA-A1-04M", "Metadata is accessed through standardised protocol", Some("FsF-A1-02M")),
    ("A1", "RDA-A1-04D", "Data is accessed through standardized protocol", Some("FsF-A1-03D")),
    ("A1", "RDA-A1-05D", "Data can be accessed automatically", None),
    ("A1", "FsF-A1-01M", "Metadata contains access level and access conditions of the data", None),
    ("A1.1", "RDA-A1.1-01M", "Metadata is accessible through a free access protocol", None),
    ("A1.1", "RDA-A1.1-01D", "Data is accessible through a free access protocol", None),
    ("A1.2", "RDA-A1.2-01D", "Data is accessible through an access protocol that supports authentication and authorization", None),
    ("A2", "RDA-A2-01M", "Metadata is guaranteed to remain available after data is no longer available", Some("FsF-A2-01M")),
    ("I1", "RDA-I1-01M", "Metadata uses knowledge representation expressed in standardized format", None),
    ("I1", "RDA-I1-01D", "Data uses knowledge representation expressed in standardized format", None),
    ("I1", "RDA-I1-02M", "Metadata uses machine-understandable knowledge representation", None),
    ("I1", "RDA-I1-02D", "Data uses machine-understandable knowledge representation", None),
    ("I1", "FsF-I1-01M", "Metadata is represented using a formal knowledge representation language", None),
    ("I1", "FsF-I1-02M", "Metadata uses semantic resources", None),
    ("I2", "RDA-I2-01M", "Metadata uses FAIR-compliant vocabularies", None),
    ("I2", "RDA-I2-01D", "Data uses FAIR-compliant vocabularies", None),
    ("I3", "RDA-I3-01M", "Metadata includes references to other (meta)data", Some("FsF-I3-01M")),
    ("I3", "RDA-I3-01D", "Data includes references to other (meta)data", None),
    ("I3", "RDA-I3-02M", "Metadata includes references to other data", None),
    ("I3", "RDA-I3-02D", "Data includes references to other data", None),
    ("I3", "RDA-I3-03M", "Metadata includes qualified references to other metadata", None),
    ("I3", "RDA-I3-04M", "Metadata include qualified references to other data", None),
    ("R1", "RDA-R1-01M", "Plurality of accurate and relevant attributes are provided to allow reuse", None),
    ("R1", "FsF-R1-01MD", "Metadata specifies the content of the data", None),
    ("R1.1", "RDA-R1.1-01M", "Metadata includes information about the license under which the data can be reused", None),
    ("R1.1", "RDA-R1.1-02M", "Metadata refers to a standard reuse license", None),
    ("R1.1", "RDA-R1.1-03M", "Metadata refers to a machine-understandable reuse license", Some("FsF-R1.1-01M")),
    ("R1.2", "RDA-R1.2-01M", "Metadata includes provenance information according to community-specific standards", None),
    ("R1.2", "RDA-R1.2-02M", "Metadata includes provenance information according to a cross-community language", None),
    ("R1.2", "FsF-R1.2-01M", "Metadata includes provenance information about data creation or generation", None),
    ("R1.3", "RDA-R1.3-01M", "Metadata complies with a community standard", Some("FsF-R1.3-01M")),
    ("R1.3", "RDA-R1.3-01D", "Data complies with a community standard", None),
    ("R1.3", "RDA-R1.3-02M", "Metadata is expressed in compliance with a machine-understandable community standard", None),
    ("R1.3", "RDA-R1.3-02D", "Data is in compliance with a machine-understandable community standard", Some("FsF-R1.3-02D")),
];

fn target_suffix(id: &str) -> Option<Target> {
    let local = id.rsplit('-').next()?;
    let suffix: String = local.chars().skip_while(|c| c.is_ascii_digit()).collect();
    match suffix.as_str() {
        "M" => Some(Target::M),
        "D" => Some(Target::D),
        "MD" => Some(Target::MD),
        _ => None,
    }
}

fn build(entry: &(&'static str, &'static str, &'static str, Option<&'static str>)) -> Indicator {
    let (sub, id, description, partner) = *entry;
    let principle = PrincipleId::parse(sub).expect("table principle is a known sub-principle");
    let target = target_suffix(id).expect("table id carries a target suffix");
    let source = if id.starts_with("RDA-") {
        Source::Rda
    } else {
        Source::FsF
    };
    let mode = match (partner, source) {
        (Some(_), _) => Mode::Dual,
        (None, Source::FsF) => Mode::AutomatedOnly,
        (None, Source::Rda) => Mode::ManualOnly,
    };
    Indicator {
        id,
        source,
        principle,
        target,
        description,
        mode,
        dual_partner: partner,
    }
}

/// The canonical 47-indicator registry in table order.
pub fn builtin_registry() -> Registry {
    Registry {
        indicators: TABLE.iter().map(build).collect(),
        version: REGISTRY_VERSION.to_string(),
    }
}

/// Splits `RDA-A1.1-01M` into (project, principle, local number + suffix).
pub fn split_id(id: &str) -> Option<(&str, &str, &str)> {
    let mut parts = id.splitn(3, '-');
    let project = parts.next()?;
    let principle = parts.next()?;
    let local = parts.next()?;
    if local.contains('-') {
        return None;
    }
    Some((project, principle, local))
}
