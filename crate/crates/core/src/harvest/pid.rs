//! Identifier scheme detection.

use std::fmt;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Doi,
    Handle,
    Ark,
    Purl,
    Urn,
    W3id,
    Uuid,
    Url,
    Unknown,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Doi => "doi",
            Scheme::Handle => "handle",
            Scheme::Ark => "ark",
            Scheme::Purl => "purl",
            Scheme::Urn => "urn",
            Scheme::W3id => "w3id",
            Scheme::Uuid => "uuid",
            Scheme::Url => "url",
            Scheme::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "doi" => Scheme::Doi,
            "handle" | "hdl" => Scheme::Handle,
            "ark" => Scheme::Ark,
            "purl" => Scheme::Purl,
            "urn" => Scheme::Urn,
            "w3id" => Scheme::W3id,
            "uuid" => Scheme::Uuid,
            "url" => Scheme::Url,
            _ => return None,
        })
    }

    pub fn is_persistent(self) -> bool {
        matches!(
            self,
            Scheme::Doi | Scheme::Handle | Scheme::Ark | Scheme::Purl | Scheme::Urn | Scheme::W3id
        )
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentifierClass {
    pub scheme: Scheme,
    pub persistent: bool,
    pub globally_unique: bool,
}

impl IdentifierClass {
    fn of(scheme: Scheme) -> Self {
        IdentifierClass {
            scheme,
            persistent: scheme.is_persistent(),
            globally_unique: scheme != Scheme::Unknown,
        }
    }
}

struct Patterns {
    rules: Vec<(Scheme, Regex)>,
}

fn patterns() -> &'static Patterns {
    static PATTERNS: OnceLock<Patterns> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        let rule = |scheme, re: &str| (scheme, Regex::new(re).expect("static pattern"));
        Patterns {
            rules: vec![
                rule(
                    Scheme::Doi,
                    r"(?i)^(?:(?:https?://)?(?:dx\.)?doi\.org/|doi:)?10\.\d{4,9}/\S+$",
                ),
                rule(
                    Scheme::Handle,
                    r"(?i)^(?:(?:https?://)?hdl\.handle\.net/|hdl:)\d[\w.]*/\S+$",
                ),
                rule(Scheme::Ark, r"(?i)^(?:https?://[^/\s]+/)?ark:/?\d{5,9}/\S+$"),
                rule(
                    Scheme::Purl,
                    r"(?i)^https?://purl\.(?:org|oclc\.org|obolibrary\.org|archive\.org)/\S+$",
                ),
                rule(Scheme::W3id, r"(?i)^https?://w3id\.org/\S+$"),
                rule(Scheme::Urn, r"(?i)^urn:[a-z0-9][a-z0-9-]{0,31}:\S+$"),
                rule(
                    Scheme::Uuid,
                    r"(?i)^[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}$",
                ),
            ],
        }
    })
}

/// Prefix table used to classify identifiers. Extra prefixes registered at
/// run time are tried before the built-in patterns.
#[derive(Debug, Clone, Default)]
pub struct PidTable {
    extra: Vec<(Scheme, String)>,
}

impl PidTable {
    pub fn with_prefix(mut self, scheme: Scheme, prefix: impl Into<String>) -> Self {
        self.extra.push((scheme, prefix.into().to_ascii_lowercase()));
        self
    }

    /// Builds a table from `"<scheme> <prefix>"` entries; malformed entries
    /// are returned as errors.
    pub fn from_entries<'a>(entries: impl IntoIterator<Item = &'a str>) -> Result<Self, String> {
        let mut table = PidTable::default();
        for entry in entries {
            let (scheme, prefix) = entry
                .trim()
                .split_once(char::is_whitespace)
                .ok_or_else(|| format!("pid prefix entry `{entry}` needs `<scheme> <prefix>`"))?;
            let scheme = Scheme::parse(scheme)
                .ok_or_else(|| format!("unknown identifier scheme `{scheme}`"))?;
            table = table.with_prefix(scheme, prefix.trim());
        }
        Ok(table)
    }

    pub fn classify(&self, id: &str) -> IdentifierClass {
        let id = id.trim();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return IdentifierClass::of(Scheme::Unknown);
        }
        let lower = id.to_ascii_lowercase();
        if let Some((scheme, _)) = self.extra.iter().find(|(_, p)| lower.starts_with(p.as_str())) {
            return IdentifierClass::of(*scheme);
        }
        if let Some((scheme, _)) = patterns().rules.iter().find(|(_, re)| re.is_match(id)) {
            return IdentifierClass::of(*scheme);
        }
        if is_web_url(id) {
            return IdentifierClass::of(Scheme::Url);
        }
        IdentifierClass::of(Scheme::Unknown)
    }
}

fn is_web_url(id: &str) -> bool {
    match url::Url::parse(id) {
        Ok(u) => matches!(u.scheme(), "http" | "https" | "ftp") && u.host_str().is_some(),
        Err(_) => false,
    }
}

/// Classifies with the built-in prefix table.
pub fn classify_identifier(id: &str) -> IdentifierClass {
    PidTable::default().classify(id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn doi_url_is_persistent() {
        let c = classify_identifier("https://doi.org/10.5281/zenodo.1234567");
        assert_eq!(c.scheme, Scheme::Doi);
        assert!(c.persistent && c.globally_unique);
        assert_eq!(classify_identifier("doi:10.1000/xyz").scheme, Scheme::Doi);
        assert_eq!(classify_identifier("10.1000/xyz").scheme, Scheme::Doi);
    }

    #[test]
    fn github_url_is_unique_but_not_persistent() {
        let c = classify_identifier("https://github.com/AndrewXu22/optimal_unified_memory");
        assert_eq!(c.scheme, Scheme::Url);
        assert!(!c.persistent);
        assert!(c.globally_unique);
    }

    #[test]
    fn garbage_is_unknown() {
        let c = classify_identifier("not a uri at all");
        assert_eq!(
            c,
            IdentifierClass {
                scheme: Scheme::Unknown,
                persistent: false,
                globally_unique: false
            }
        );
        assert_eq!(classify_identifier("").scheme, Scheme::Unknown);
        assert_eq!(classify_identifier("./data/file.csv").scheme, Scheme::Unknown);
    }

    #[test]
    fn other_schemes() {
        let cases = [
            ("https://hdl.handle.net/20.500.12345/678", Scheme::Handle),
            ("hdl:2027/mdp.39015", Scheme::Handle),
            ("https://n2t.net/ark:/13030/tf5p30086k", Scheme::Ark),
            ("ark:/13030/tf5p30086k", Scheme::Ark),
            ("http://purl.org/dc/terms/", Scheme::Purl),
            ("https://w3id.org/example/1", Scheme::W3id),
            ("urn:nbn:de:0000-123", Scheme::Urn),
            ("123e4567-e89b-12d3-a456-426614174000", Scheme::Uuid),
            ("ftp://ftp.example.org/pub/data.csv", Scheme::Url),
        ];
        for (id, scheme) in cases {
            assert_eq!(classify_identifier(id).scheme, scheme, "{id}");
        }
        let uuid = classify_identifier("123e4567-e89b-12d3-a456-426614174000");
        assert!(!uuid.persistent && uuid.globally_unique);
    }

    #[test]
    fn extra_prefixes_take_precedence() {
        let table = PidTable::from_entries(["doi https://data.example.org/pid/"]).unwrap();
        assert_eq!(
            table.classify("https://data.example.org/pid/42").scheme,
            Scheme::Doi
        );
        assert!(PidTable::from_entries(["nonsense"]).is_err());
        assert!(PidTable::from_entries(["foo https://x/"]).is_err());
    }

    proptest! {
        #[test]
        fn persistent_implies_unique(s in "\\PC{0,40}") {
            let c = classify_identifier(&s);
            prop_assert!(!c.persistent || c.globally_unique);
        }

        #[test]
        fn persistent_implies_unique_on_url_like(s in "(https?://|doi:|urn:|ark:/)[a-z0-9./:-]{0,30}") {
            let c = classify_identifier(&s);
            prop_assert!(!c.persistent || c.globally_unique);
        }
    }
}
