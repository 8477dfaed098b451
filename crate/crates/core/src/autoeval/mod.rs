//! The 17 automated metric tests.
//!
//! Each rule is a pure function of the harvested graph, the target and the
//! configuration, and reports which canonical keys it looked at.

pub mod config;
pub mod license;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::harvest::{vocab, AssessmentTarget, MetadataGraph, TargetKind};
pub use config::{ConfigError, EvalConfig};
pub use license::resolve_license;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricStatus {
    Pass,
    Partial,
    Fail,
    NotApplicable,
}

impl MetricStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MetricStatus::Pass => "pass",
            MetricStatus::Partial => "partial",
            MetricStatus::Fail => "fail",
            MetricStatus::NotApplicable => "not_applicable",
        }
    }

    /// Ordering used by monotonicity checks: Fail/NA < Partial < Pass.
    pub fn rank(self) -> u8 {
        match self {
            MetricStatus::Fail | MetricStatus::NotApplicable => 0,
            MetricStatus::Partial => 1,
            MetricStatus::Pass => 2,
        }
    }
}

impl fmt::Display for MetricStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricResult {
    pub metric_id: String,
    pub status: MetricStatus,
    pub evidence: Vec<String>,
    pub checked_keys: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutoReport {
    pub target_identifier: String,
    pub harvested_at: String,
    pub results: BTreeMap<String, MetricResult>,
}

impl AutoReport {
    pub fn status(&self, metric_id: &str) -> Option<MetricStatus> {
        self.results.get(metric_id).map(|r| r.status)
    }
}

pub const METRIC_IDS: [&str; 17] = [
    "FsF-F1-01D",
    "FsF-F1-02D",
    "FsF-F2-01M",
    "FsF-F3-01M",
    "FsF-F4-01M",
    "FsF-A1-01M",
    "FsF-A1-02M",
    "FsF-A1-03D",
    "FsF-A2-01M",
    "FsF-I1-01M",
    "FsF-I1-02M",
    "FsF-I3-01M",
    "FsF-R1-01MD",
    "FsF-R1.1-01M",
    "FsF-R1.2-01M",
    "FsF-R1.3-01M",
    "FsF-R1.3-02D",
];

struct Ctx<'a> {
    graph: &'a MetadataGraph,
    target: &'a AssessmentTarget,
    config: &'a EvalConfig,
}

struct Verdict {
    status: MetricStatus,
    evidence: Vec<String>,
    keys: &'static [&'static str],
}

fn verdict(status: MetricStatus, keys: &'static [&'static str], evidence: impl Into<String>) -> Verdict {
    Verdict {
        status,
        evidence: vec![evidence.into()],
        keys,
    }
}

fn pass_if(
    ok: bool,
    keys: &'static [&'static str],
    yes: impl Into<String>,
    no: impl Into<String>,
) -> Verdict {
    if ok {
        verdict(MetricStatus::Pass, keys, yes)
    } else {
        verdict(MetricStatus::Fail, keys, no)
    }
}

type Rule = fn(&Ctx) -> Verdict;

fn rule_for(id: &str) -> Rule {
    match id {
        "FsF-F1-01D" => unique_identifier,
        "FsF-F1-02D" => persistent_identifier,
        "FsF-F2-01M" => core_elements,
        "FsF-F3-01M" => data_identifier_in_metadata,
        "FsF-F4-01M" => machine_retrievable,
        "FsF-A1-01M" => access_level,
        "FsF-A1-02M" => metadata_protocol,
        "FsF-A1-03D" => data_protocol,
        "FsF-A2-01M" => metadata_preserved,
        "FsF-I1-01M" => formal_representation,
        "FsF-I1-02M" => semantic_resources,
        "FsF-I3-01M" => related_resources,
        "FsF-R1-01MD" => data_content,
        "FsF-R1.1-01M" => license_info,
        "FsF-R1.2-01M" => provenance,
        "FsF-R1.3-01M" => community_standard,
        "FsF-R1.3-02D" => open_file_formats,
        other => unreachable!("no rule for {other}"),
    }
}

/// Runs every automated metric. Unknown or missing inputs degrade to
/// Fail or NotApplicable; this never errors.
pub fn evaluate_metrics(
    graph: &MetadataGraph,
    target: &AssessmentTarget,
    config: &EvalConfig,
) -> AutoReport {
    let ctx = Ctx {
        graph,
        target,
        config,
    };
    let results = METRIC_IDS
        .iter()
        .map(|id| {
            let v = rule_for(id)(&ctx);
            (
                id.to_string(),
                MetricResult {
                    metric_id: id.to_string(),
                    status: v.status,
                    evidence: v.evidence,
                    checked_keys: v.keys.iter().map(|k| k.to_string()).collect(),
                },
            )
        })
        .collect();
    AutoReport {
        target_identifier: target.identifier.clone(),
        harvested_at: String::new(),
        results,
    }
}

fn identifier_class(ctx: &Ctx) -> crate::harvest::IdentifierClass {
    // from_overrides validated the entries; a hand-built bad config falls back
    // to the built-in table.
    ctx.config
        .pid_table()
        .unwrap_or_default()
        .classify(&ctx.target.identifier)
}

fn unique_identifier(ctx: &Ctx) -> Verdict {
    let c = identifier_class(ctx);
    pass_if(
        c.globally_unique,
        &[],
        format!("unique identifier scheme found: {}", c.scheme),
        format!("identifier `{}` matches no unique scheme", ctx.target.identifier),
    )
}

fn persistent_identifier(ctx: &Ctx) -> Verdict {
    let c = identifier_class(ctx);
    pass_if(
        c.persistent,
        &[],
        format!("persistent identifier scheme found: {}", c.scheme),
        format!("not a persistent identifier scheme: {}", c.scheme),
    )
}

const CORE_KEYS: &[&str] = &[
    vocab::IDENTIFIER,
    vocab::TITLE,
    vocab::CREATOR,
    vocab::PUBLISHER,
    vocab::PUBLICATION_DATE,
    vocab::RESOURCE_TYPE,
    vocab::DESCRIPTION,
    vocab::KEYWORDS,
];

fn core_elements(ctx: &Ctx) -> Verdict {
    let wanted = &ctx.config.core_elements;
    let missing: Vec<&str> = wanted
        .iter()
        .map(String::as_str)
        .filter(|k| !ctx.graph.has(k))
        .collect();
    let present = wanted.len() - missing.len();
    let status = if missing.is_empty() {
        MetricStatus::Pass
    } else if present >= config::CORE_PARTIAL_MIN {
        MetricStatus::Partial
    } else {
        MetricStatus::Fail
    };
    let mut evidence = vec![format!("{present} of {} core elements present", wanted.len())];
    if !missing.is_empty() {
        evidence.push(format!("missing: {}", missing.join(", ")));
    }
    Verdict {
        status,
        evidence,
        keys: CORE_KEYS,
    }
}

fn data_identifier_in_metadata(ctx: &Ctx) -> Verdict {
    let n = ctx.graph.values(vocab::FILE_LOCATOR).count();
    pass_if(
        n > 0,
        &[vocab::FILE_LOCATOR],
        format!("{n} data content locator(s) in metadata"),
        "no data content identifier or locator in metadata",
    )
}

const MACHINE_FORMATS: [&str; 4] = ["json-ld", "turtle", "rdf-xml", "dc-xml"];

fn machine_retrievable(ctx: &Ctx) -> Verdict {
    let found: Vec<&str> = MACHINE_FORMATS
        .iter()
        .copied()
        .filter(|f| ctx.graph.formats.contains(*f))
        .collect();
    let registry = ctx.graph.from_channel(crate::harvest::Channel::RegistryRecord);
    pass_if(
        !found.is_empty() || registry,
        &[],
        if found.is_empty() {
            "metadata registered in a registry record".to_string()
        } else {
            format!("machine-retrievable metadata: {}", found.join(", "))
        },
        "metadata cannot be retrieved by machines",
    )
}

/// Normalizes an access statement to open/embargoed/restricted/closed.
pub fn normalize_access(value: &str) -> Option<&'static str> {
    let v = value.to_ascii_lowercase();
    if v.contains("embargo") {
        Some("embargoed")
    } else if v.contains("restrict") || v.contains("authenticat") {
        Some("restricted")
    } else if v.contains("closed") || v.contains("private") {
        Some("closed")
    } else if v.contains("open") || v.contains("public") || v.contains("free") {
        Some("open")
    } else {
        None
    }
}

fn access_level(ctx: &Ctx) -> Verdict {
    let levels: Vec<&str> = ctx
        .graph
        .values(vocab::ACCESS_LEVEL)
        .filter_map(normalize_access)
        .collect();
    match levels.first() {
        Some(level) => verdict(
            MetricStatus::Pass,
            &[vocab::ACCESS_LEVEL],
            format!("access level: {level}"),
        ),
        None if ctx.graph.has(vocab::ACCESS_LEVEL) => verdict(
            MetricStatus::Fail,
            &[vocab::ACCESS_LEVEL],
            "access information present but not a recognized access level",
        ),
        None => verdict(
            MetricStatus::Fail,
            &[vocab::ACCESS_LEVEL],
            "no access level in metadata",
        ),
    }
}

const STANDARD_SCHEMES: [&str; 3] = ["https", "http", "ftp"];

fn url_scheme(locator: &str) -> Option<String> {
    let (scheme, rest) = locator.split_once(':')?;
    if rest.starts_with("//") && !scheme.is_empty() {
        Some(scheme.to_ascii_lowercase())
    } else if scheme.len() > 1 && scheme.chars().all(|c| c.is_ascii_alphanumeric() || c == '+') {
        // urn:, s3: and similar; a single letter is a Windows drive.
        Some(scheme.to_ascii_lowercase())
    } else {
        None
    }
}

fn metadata_protocol(ctx: &Ctx) -> Verdict {
    match ctx.target.kind {
        TargetKind::LiveUrl => {
            let scheme = url_scheme(&ctx.target.identifier).unwrap_or_default();
            pass_if(
                STANDARD_SCHEMES.contains(&scheme.as_str()),
                &[],
                format!("standard protocol for access to metadata: {scheme}"),
                format!("nonstandard metadata protocol `{scheme}`"),
            )
        }
        TargetKind::FixtureDir | TargetKind::ManifestFile => {
            let landing = ctx
                .target
                .root
                .as_ref()
                .is_some_and(|r| r.join("landing.html").is_file());
            pass_if(
                landing,
                &[],
                "landing page served over a standard protocol",
                "no landing page for metadata access",
            )
        }
    }
}

fn data_protocol(ctx: &Ctx) -> Verdict {
    let files = &ctx.target.data_files;
    if files.is_empty() {
        return verdict(
            MetricStatus::NotApplicable,
            &[],
            "no data files known; protocol cannot be checked",
        );
    }
    let bad: Vec<String> = files
        .iter()
        .filter_map(|f| match url_scheme(&f.locator) {
            None => None,
            Some(s) if STANDARD_SCHEMES.contains(&s.as_str()) => None,
            Some(s) => Some(format!("{} ({s})", f.locator)),
        })
        .collect();
    if bad.is_empty() {
        verdict(
            MetricStatus::Pass,
            &[],
            format!("{} data file(s) reachable via standard protocols", files.len()),
        )
    } else {
        Verdict {
            status: MetricStatus::Fail,
            evidence: bad
                .into_iter()
                .map(|b| format!("nonstandard protocol: {b}"))
                .collect(),
            keys: &[],
        }
    }
}

fn metadata_preserved(ctx: &Ctx) -> Verdict {
    const KEYS: &[&str] = &[vocab::PRESERVATION_POLICY, vocab::PUBLISHER];
    if ctx.graph.has(vocab::PRESERVATION_POLICY) {
        return verdict(MetricStatus::Pass, KEYS, "preservation policy stated");
    }
    let trusted = |name: &str| {
        ctx.config
            .trusted_repositories
            .iter()
            .any(|t| t.eq_ignore_ascii_case(name.trim()))
    };
    let host = ctx
        .target
        .publisher_hint
        .iter()
        .map(String::as_str)
        .chain(ctx.graph.values(vocab::PUBLISHER))
        .find(|p| trusted(p));
    match host {
        Some(h) => verdict(
            MetricStatus::Pass,
            KEYS,
            format!("hosted by trusted repository {h}"),
        ),
        None => verdict(
            MetricStatus::Fail,
            KEYS,
            "no preservation policy and no trusted hosting repository",
        ),
    }
}

fn formal_representation(ctx: &Ctx) -> Verdict {
    let found: Vec<&str> = ["json-ld", "turtle", "rdf-xml"]
        .into_iter()
        .filter(|f| ctx.graph.formats.contains(*f))
        .collect();
    pass_if(
        !found.is_empty(),
        &[],
        format!("formal knowledge representation: {}", found.join(", ")),
        "no metadata using formal knowledge representation languages",
    )
}

fn semantic_resources(ctx: &Ctx) -> Verdict {
    let known: BTreeSet<String> = ctx
        .config
        .known_semantic_resources
        .iter()
        .map(|ns| vocab::normalize_namespace(ns))
        .collect();
    let hits: Vec<&str> = ctx
        .graph
        .namespaces
        .iter()
        .filter(|ns| known.contains(*ns))
        .map(String::as_str)
        .collect();
    pass_if(
        !hits.is_empty(),
        &[],
        format!("semantic resources used: {}", hits.join(", ")),
        "no semantic resource found for metadata",
    )
}

fn related_resources(ctx: &Ctx) -> Verdict {
    let n = ctx.graph.values(vocab::RELATED).count();
    pass_if(
        n > 0,
        &[vocab::RELATED],
        format!("{n} related resource(s) in metadata"),
        "no related resource retrieved from metadata",
    )
}

fn data_content(ctx: &Ctx) -> Verdict {
    const KEYS: &[&str] = &[vocab::DESCRIPTION];
    let files = &ctx.target.data_files;
    if files.is_empty() {
        return verdict(MetricStatus::Fail, KEYS, "no metadata specifying the content of data");
    }
    let all = |p: fn(&crate::harvest::DataFile) -> bool| files.iter().all(p);
    let typed = all(|f| f.media_type.is_some());
    let sized = all(|f| f.declared_size.is_some());
    let summed = all(|f| f.checksum.is_some());
    let described = ctx.graph.has(vocab::DESCRIPTION);
    let mut evidence = Vec::new();
    for (ok, what) in [
        (typed, "media type"),
        (sized, "size"),
        (summed, "checksum"),
    ] {
        if !ok {
            evidence.push(format!("{what} missing for at least one data file"));
        }
    }
    if !described {
        evidence.push("no dataset-level description".into());
    }
    let status = if typed && sized && summed && described {
        evidence.push(format!(
            "{} data file(s) with size, media type and checksum",
            files.len()
        ));
        MetricStatus::Pass
    } else if typed {
        MetricStatus::Partial
    } else {
        MetricStatus::Fail
    };
    Verdict {
        status,
        evidence,
        keys: KEYS,
    }
}

fn license_info(ctx: &Ctx) -> Verdict {
    const KEYS: &[&str] = &[vocab::LICENSE];
    let values: Vec<&str> = ctx.graph.values(vocab::LICENSE).collect();
    if let Some((raw, id)) = values
        .iter()
        .find_map(|v| resolve_license(v, &ctx.config.license_registry).map(|id| (v, id)))
    {
        return verdict(
            MetricStatus::Pass,
            KEYS,
            format!("recognized license {id} ({raw})"),
        );
    }
    match values.first() {
        Some(v) => verdict(
            MetricStatus::Partial,
            KEYS,
            format!("license `{v}` not recognized"),
        ),
        None => verdict(MetricStatus::Fail, KEYS, "license information unavailable in metadata"),
    }
}

fn provenance(ctx: &Ctx) -> Verdict {
    const KEYS: &[&str] = &[
        vocab::PROVENANCE_PREFIX,
        vocab::CREATOR,
        vocab::PUBLICATION_DATE,
        vocab::PUBLISHER,
    ];
    let formal_ns = [vocab::PROV, vocab::PAV]
        .iter()
        .any(|ns| ctx.graph.namespaces.contains(*ns));
    let formal = formal_ns && ctx.graph.has_prefix(vocab::PROVENANCE_PREFIX);
    if formal {
        return verdict(MetricStatus::Pass, KEYS, "formal provenance metadata (PROV-O/PAV)");
    }
    let basic: Vec<&str> = [vocab::CREATOR, vocab::PUBLICATION_DATE, vocab::PUBLISHER]
        .into_iter()
        .filter(|k| ctx.graph.has(k))
        .collect();
    if basic.is_empty() {
        verdict(MetricStatus::Fail, KEYS, "no provenance information in metadata")
    } else {
        verdict(
            MetricStatus::Partial,
            KEYS,
            format!(
                "basic provenance ({}) but no formal provenance metadata",
                basic.join(", ")
            ),
        )
    }
}

fn community_standard(ctx: &Ctx) -> Verdict {
    const KEYS: &[&str] = &[vocab::SCHEMA_ID];
    let hit = ctx.graph.schema_ids.iter().find(|s| {
        ctx.config
            .community_standards
            .iter()
            .any(|c| c.eq_ignore_ascii_case(s))
    });
    pass_if(
        hit.is_some(),
        KEYS,
        format!("community metadata standard: {}", hit.map_or("", |s| s.as_str())),
        if ctx.graph.schema_ids.is_empty() {
            "no metadata schema recognized".to_string()
        } else {
            format!(
                "no community-recommended standard among: {}",
                ctx.graph
                    .schema_ids
                    .iter()
                    .map(String::as_str)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        },
    )
}

fn open_file_formats(ctx: &Ctx) -> Verdict {
    let files = &ctx.target.data_files;
    if files.is_empty() {
        return verdict(
            MetricStatus::NotApplicable,
            &[],
            "could not check file formats: no data files known",
        );
    }
    let open = |s: &str| {
        ctx.config
            .open_formats
            .iter()
            .any(|f| f.eq_ignore_ascii_case(s.split(';').next().unwrap_or(s).trim()))
    };
    let closed: Vec<String> = files
        .iter()
        .filter(|f| {
            !(f.format_label.as_deref().is_some_and(open)
                || f.media_type.as_deref().is_some_and(open))
        })
        .map(|f| {
            let fmt = f
                .format_label
                .as_deref()
                .or(f.media_type.as_deref())
                .unwrap_or("unknown");
            format!("{} ({fmt})", f.locator)
        })
        .collect();
    if closed.is_empty() {
        verdict(
            MetricStatus::Pass,
            &[],
            format!("{} data file(s) in open formats", files.len()),
        )
    } else {
        Verdict {
            status: MetricStatus::Fail,
            evidence: closed
                .into_iter()
                .map(|c| format!("not an open format: {c}"))
                .collect(),
            keys: &[],
        }
    }
}
