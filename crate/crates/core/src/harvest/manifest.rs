//! `files.manifest` parsing.
//!
//! One data file per line: `locator<TAB>size<TAB>media_type<TAB>sha256:<hex>`.
//! Trailing fields may be omitted; `-` or an empty field means unknown.
//! Header lines of the form `key=value` (`identifier`, `publisher`) may
//! appear anywhere; `#` starts a comment line.

use super::{Checksum, DataFile};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub identifier: Option<String>,
    pub publisher: Option<String>,
    pub files: Vec<DataFile>,
}

fn field(s: Option<&str>) -> Option<&str> {
    s.map(str::trim).filter(|s| !s.is_empty() && *s != "-")
}

pub fn parse_manifest(text: &str) -> Result<Manifest, String> {
    let mut manifest = Manifest::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        if !line.contains('\t') {
            if let Some((key, value)) = line.split_once('=') {
                let value = value.trim().to_string();
                match key.trim() {
                    "identifier" => manifest.identifier = Some(value),
                    "publisher" => manifest.publisher = Some(value),
                    other => return Err(format!("line {lineno}: unknown header `{other}`")),
                }
                continue;
            }
        }
        let mut cols = line.split('\t');
        let locator = field(cols.next())
            .ok_or_else(|| format!("line {lineno}: missing locator"))?
            .to_string();
        let declared_size = match field(cols.next()) {
            Some(s) => Some(
                s.parse::<u64>()
                    .map_err(|_| format!("line {lineno}: size `{s}` is not a byte count"))?,
            ),
            None => None,
        };
        let media_type = field(cols.next()).map(str::to_string);
        let checksum = match field(cols.next()) {
            Some(s) => Some(
                Checksum::parse(s)
                    .ok_or_else(|| format!("line {lineno}: malformed checksum `{s}`"))?,
            ),
            None => None,
        };
        if cols.next().is_some() {
            return Err(format!("line {lineno}: too many fields"));
        }
        manifest.files.push(
            DataFile {
                locator,
                declared_size,
                media_type,
                checksum,
                format_label: None,
            }
            .with_derived_label(),
        );
    }
    Ok(manifest)
}
