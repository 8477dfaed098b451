//! Evaluator configuration: the lists that decide what counts as trusted,
//! known, recognized or open. Defaults ship embedded; a config document
//! (JSON object of key -> list of strings) replaces individual lists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::harvest::PidTable;

const DEFAULTS: &str = include_str!("../../data/eval-defaults.json");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config is not a key -> list-of-strings document: {0}")]
    Malformed(String),
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("bad pid prefix: {0}")]
    PidPrefix(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    pub core_elements: Vec<String>,
    pub trusted_repositories: Vec<String>,
    pub known_semantic_resources: Vec<String>,
    pub license_registry: Vec<String>,
    pub community_standards: Vec<String>,
    pub open_formats: Vec<String>,
    pub pid_prefixes: Vec<String>,
}

/// Minimum number of core elements for a partial F2 verdict.
pub const CORE_PARTIAL_MIN: usize = 4;

impl Default for EvalConfig {
    fn default() -> Self {
        serde_json::from_str(DEFAULTS).expect("embedded defaults are valid")
    }
}

impl EvalConfig {
    /// Applies a config document on top of the defaults. Keys present in the
    /// document replace the corresponding default list.
    pub fn from_overrides(text: &str) -> Result<Self, ConfigError> {
        let doc: BTreeMap<String, Vec<String>> =
            serde_json::from_str(text).map_err(|e| ConfigError::Malformed(e.to_string()))?;
        let mut cfg = EvalConfig::default();
        for (key, list) in doc {
            let slot = match key.as_str() {
                "core_elements" => &mut cfg.core_elements,
                "trusted_repositories" => &mut cfg.trusted_repositories,
                "known_semantic_resources" => &mut cfg.known_semantic_resources,
                "license_registry" => &mut cfg.license_registry,
                "community_standards" => &mut cfg.community_standards,
                "open_formats" => &mut cfg.open_formats,
                "pid_prefixes" => &mut cfg.pid_prefixes,
                _ => return Err(ConfigError::UnknownKey(key)),
            };
            *slot = list;
        }
        cfg.pid_table()?;
        Ok(cfg)
    }

    pub fn pid_table(&self) -> Result<PidTable, ConfigError> {
        PidTable::from_entries(self.pid_prefixes.iter().map(String::as_str))
            .map_err(ConfigError::PidPrefix)
    }

    /// SHA-256 digest per list, for report traceability.
    pub fn digests(&self) -> BTreeMap<String, String> {
        let lists: [(&str, &Vec<String>); 7] = [
            ("core_elements", &self.core_elements),
            ("trusted_repositories", &self.trusted_repositories),
            ("known_semantic_resources", &self.known_semantic_resources),
            ("license_registry", &self.license_registry),
            ("community_standards", &self.community_standards),
            ("open_formats", &self.open_formats),
            ("pid_prefixes", &self.pid_prefixes),
        ];
        lists
            .into_iter()
            .map(|(name, list)| {
                let mut h = Sha256::new();
                for item in list {
                    h.update(item.as_bytes());
                    h.update([0u8]);
                }
                (name.to_string(), hex::encode(h.finalize()))
            })
            .collect()
    }

    pub fn defaults_text() -> &'static str {
        DEFAULTS
    }
}
