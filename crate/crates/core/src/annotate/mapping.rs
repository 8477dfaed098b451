//! Declarative column-to-property mapping specs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::vocab::{self, TermType, BUILTIN_PREFIXES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellType {
    #[serde(rename = "string")]
    String,
    #[serde(rename = "integer")]
    Integer,
    #[serde(rename = "decimal")]
    Decimal,
    #[serde(rename = "anyURI")]
    AnyUri,
    #[serde(rename = "quantity")]
    Quantity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnBinding {
    pub column: String,
    pub property: String,
    pub datatype: CellType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

fn default_row_type() -> String {
    "hpc:TableRow".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingSpec {
    pub base_iri: String,
    #[serde(default = "default_row_type")]
    pub row_type: String,
    pub id_template: String,
    /// Declared prefixes, in document order. The built-in prefixes are
    /// always available in addition.
    #[serde(default, with = "ordered_map")]
    pub prefixes: Vec<(String, String)>,
    pub bindings: Vec<ColumnBinding>,
}

mod ordered_map {
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::{Map, Value};

    pub fn serialize<S: Serializer>(v: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(v.iter().map(|(k, v)| (k, v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(String, String)>, D::Error> {
        let map = Map::<String, Value>::deserialize(d)?;
        map.into_iter()
            .map(|(k, v)| match v {
                Value::String(s) => Ok((k, s)),
                other => Err(serde::de::Error::custom(format!(
                    "prefix `{k}` maps to {other}, expected an IRI string"
                ))),
            })
            .collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MappingError {
    #[error("mapping document is malformed: {0}")]
    Malformed(String),
    #[error("prefix `{prefix}` used by `{name}` is not declared")]
    UndeclaredPrefix { prefix: String, name: String },
    #[error("id_template `{0}` must contain `{{row}}` exactly once")]
    MissingRowToken(String),
    #[error("column `{column}`: a unit requires datatype quantity and a quantity requires a unit")]
    UnitWithoutQuantity { column: String },
    #[error("column `{0}` is bound more than once")]
    DuplicateColumnBinding(String),
}

impl MappingSpec {
    /// The prefixes in effect: declared ones first, then built-ins that were
    /// not redeclared.
    pub fn effective_prefixes(&self) -> Vec<(String, String)> {
        let mut out = self.prefixes.clone();
        for (p, iri) in BUILTIN_PREFIXES {
            if !out.iter().any(|(q, _)| q == p) {
                out.push((p.to_string(), iri.to_string()));
            }
        }
        out
    }

    pub fn expand(&self, name: &str) -> Result<String, MappingError> {
        if name.contains("://") || name.starts_with("urn:") {
            return Ok(name.to_string());
        }
        let undeclared = |prefix: &str| MappingError::UndeclaredPrefix {
            prefix: prefix.to_string(),
            name: name.to_string(),
        };
        let (prefix, local) = name.split_once(':').ok_or_else(|| undeclared(""))?;
        self.effective_prefixes()
            .into_iter()
            .find(|(p, _)| p == prefix)
            .map(|(_, iri)| format!("{iri}{local}"))
            .ok_or_else(|| undeclared(prefix))
    }

    pub fn validate(&self) -> Result<(), MappingError> {
        if self.id_template.matches("{row}").count() != 1 {
            return Err(MappingError::MissingRowToken(self.id_template.clone()));
        }
        self.expand(&self.row_type)?;
        let mut seen = BTreeSet::new();
        for b in &self.bindings {
            if !seen.insert(b.column.as_str()) {
                return Err(MappingError::DuplicateColumnBinding(b.column.clone()));
            }
            self.expand(&b.property)?;
            match (&b.unit, b.datatype) {
                (Some(unit), CellType::Quantity) => {
                    self.expand(unit)?;
                }
                (None, CellType::Quantity) | (Some(_), _) => {
                    return Err(MappingError::UnitWithoutQuantity {
                        column: b.column.clone(),
                    })
                }
                (None, _) => {}
            }
        }
        Ok(())
    }

    /// Non-fatal remarks: hpc properties missing from the embedded vocabulary
    /// or bound with a different datatype, and deprecated spellings.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for b in &self.bindings {
            if vocab::canonical_name(&b.property) != b.property {
                out.push(format!(
                    "`{}` is a deprecated spelling of `{}`",
                    b.property,
                    vocab::canonical_name(&b.property)
                ));
            }
            if !b.property.starts_with("hpc:") {
                continue;
            }
            match vocab::lookup_term(&b.property) {
                None => out.push(format!(
                    "`{}` is not in the embedded vocabulary",
                    b.property
                )),
                Some(t) => {
                    let expected = match t.datatype {
                        TermType::String => Some(CellType::String),
                        TermType::Integer => Some(CellType::Integer),
                        TermType::Decimal => Some(CellType::Decimal),
                        TermType::AnyUri => Some(CellType::AnyUri),
                        TermType::Quantity => Some(CellType::Quantity),
                        _ => None,
                    };
                    if expected.is_some_and(|e| e != b.datatype) {
                        out.push(format!(
                            "column `{}` binds `{}` as {:?}; the vocabulary says {:?}",
                            b.column, b.property, b.datatype, t.datatype
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn row_id(&self, row: usize) -> String {
        format!("{}{}", self.base_iri, self.id_template.replace("{row}", &row.to_string()))
    }
}

pub fn parse_mapping(text: &str) -> Result<MappingSpec, MappingError> {
    let spec: MappingSpec =
        serde_json::from_str(text).map_err(|e| MappingError::Malformed(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}
