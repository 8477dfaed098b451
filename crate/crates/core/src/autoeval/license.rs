//! Resolving license strings (SPDX-style ids, names, canonical IRIs) against
//! a registry of known license ids.

fn squash(s: &str) -> String {
    s.trim()
        .chars()
        .map(|c| if c.is_whitespace() || c == '_' { '-' } else { c })
        .collect::<String>()
        .to_ascii_lowercase()
}

/// Candidate SPDX id derived from a canonical license IRI.
fn id_from_iri(iri: &str) -> Option<String> {
    let lower = iri.trim().to_ascii_lowercase();
    let rest = lower
        .strip_prefix("https://")
        .or_else(|| lower.strip_prefix("http://"))?;
    let rest = rest.strip_prefix("www.").unwrap_or(rest);
    let mut parts: Vec<&str> = rest.split('/').filter(|p| !p.is_empty()).collect();
    while let Some(last) = parts.last() {
        if last.starts_with("legalcode") || last.starts_with("deed") {
            parts.pop();
        } else {
            break;
        }
    }
    match parts.as_slice() {
        ["creativecommons.org", "licenses", kind, version, ..] => {
            Some(format!("cc-{kind}-{version}"))
        }
        ["creativecommons.org", "publicdomain", "zero", version, ..] => {
            Some(format!("cc0-{version}"))
        }
        ["spdx.org", "licenses", id] | ["opensource.org", "licenses", id] => Some(
            id.trim_end_matches(".html")
                .trim_end_matches(".json")
                .to_string(),
        ),
        ["apache.org", "licenses", "license-2.0", ..] => Some("apache-2.0".into()),
        ["opendatacommons.org", "licenses", "by", version, ..] => Some(format!("odc-by-{version}")),
        ["opendatacommons.org", "licenses", "odbl", version, ..] => Some(format!("odbl-{version}")),
        ["opendatacommons.org", "licenses", "pddl", version, ..] => Some(format!("pddl-{version}")),
        ["gnu.org", "licenses", file, ..] => {
            let f = file.trim_end_matches(".html").trim_end_matches(".txt");
            Some(format!("{f}-only"))
        }
        _ => None,
    }
}

/// Returns the registry id a license string resolves to.
pub fn resolve_license<'a>(value: &str, registry: &'a [String]) -> Option<&'a str> {
    let find = |candidate: &str| {
        let candidate = squash(candidate);
        registry
            .iter()
            .find(|id| squash(id) == candidate)
            .map(String::as_str)
    };
    if let Some(id) = find(value) {
        return Some(id);
    }
    if let Some(id) = id_from_iri(value).and_then(|c| find(&c)) {
        return Some(id);
    }
    // "CC BY 4.0", "CC-BY 4.0 International"
    let cleaned = squash(value)
        .replace("-international", "")
        .replace("-license", "");
    find(&cleaned)
}
