//! Target resolution and metadata harvesting.
//!
//! A target is a live URL, a fixture directory, or a manifest file. Fixture
//! directories hold the pieces a landing page and its content negotiation
//! would serve:
//!
//! ```text
//! <dir>/landing.html      HTML landing page (meta tags, JSON-LD script blocks)
//! <dir>/record.jsonld     optional sidecar records
//! <dir>/record.ttl
//! <dir>/record.dc.xml
//! <dir>/registry.json     optional registry record (DataCite JSON)
//! <dir>/files.manifest    optional data file listing
//! <dir>/publisher.txt     optional hosting repository name
//! ```

mod channels;
mod manifest;
pub mod pid;
pub mod vocab;

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use manifest::{parse_manifest, Manifest};
pub use pid::{classify_identifier, IdentifierClass, PidTable, Scheme};

#[derive(Debug, Error)]
pub enum HarvestError {
    #[error("target unreadable: {0}")]
    TargetUnreadable(String),
    #[error("fetch failed for {url}: {reason}")]
    FetchFailed { url: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    LiveUrl,
    FixtureDir,
    ManifestFile,
}

/// How `load_target` should interpret its argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LoadMode {
    #[default]
    Auto,
    Url,
    Fixture,
    Manifest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checksum {
    pub algorithm: String,
    pub digest: String,
}

impl Checksum {
    /// Parses `algo:hex`.
    pub fn parse(s: &str) -> Option<Self> {
        let (algorithm, digest) = s.trim().split_once(':')?;
        if algorithm.is_empty() || digest.is_empty() || hex::decode(digest).is_err() {
            return None;
        }
        Some(Checksum {
            algorithm: algorithm.to_ascii_lowercase(),
            digest: digest.to_ascii_lowercase(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataFile {
    pub locator: String,
    pub declared_size: Option<u64>,
    pub media_type: Option<String>,
    pub checksum: Option<Checksum>,
    pub format_label: Option<String>,
}

impl DataFile {
    pub fn new(locator: impl Into<String>) -> Self {
        DataFile {
            locator: locator.into(),
            declared_size: None,
            media_type: None,
            checksum: None,
            format_label: None,
        }
    }

    /// Fills `format_label` from the media type or, failing that, the
    /// locator's extension.
    pub fn with_derived_label(mut self) -> Self {
        if self.format_label.is_none() {
            self.format_label = self
                .media_type
                .as_deref()
                .and_then(format_for_media_type)
                .or_else(|| format_for_extension(&self.locator))
                .map(str::to_string);
        }
        self
    }
}

pub fn format_for_media_type(mt: &str) -> Option<&'static str> {
    let mt = mt.split(';').next()?.trim().to_ascii_lowercase();
    Some(match mt.as_str() {
        "text/csv" => "csv",
        "text/tab-separated-values" => "tsv",
        "application/json" => "json",
        "application/ld+json" => "json-ld",
        "text/turtle" => "turtle",
        "application/n-triples" => "n-triples",
        "application/rdf+xml" => "rdf-xml",
        "text/plain" => "txt",
        "application/xml" | "text/xml" => "xml",
        "application/x-hdf5" | "application/x-hdf" => "hdf5",
        "application/x-netcdf" | "application/netcdf" => "netcdf",
        "application/pdf" => "pdf",
        "application/zip" => "zip",
        "application/vnd.ms-excel" => "xls",
        "application/vnd.openxmlformats-officedocument.spreadsheetml.sheet" => "xlsx",
        _ => return None,
    })
}

fn format_for_extension(locator: &str) -> Option<&'static str> {
    let name = locator.rsplit('/').next()?;
    let ext = name.rsplit_once('.')?.1.to_ascii_lowercase();
    Some(match ext.as_str() {
        "csv" => "csv",
        "tsv" => "tsv",
        "json" => "json",
        "jsonld" => "json-ld",
        "ttl" => "turtle",
        "nt" => "n-triples",
        "rdf" => "rdf-xml",
        "txt" | "md" => "txt",
        "xml" => "xml",
        "h5" | "hdf5" => "hdf5",
        "nc" => "netcdf",
        "arff" => "arff",
        "pdf" => "pdf",
        "zip" => "zip",
        "xls" => "xls",
        "xlsx" => "xlsx",
        "model" => "weka-model",
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssessmentTarget {
    pub identifier: String,
    pub kind: TargetKind,
    pub data_files: Vec<DataFile>,
    pub publisher_hint: Option<String>,
    /// Directory holding landing page and sidecar files (fixture and
    /// manifest targets).
    #[serde(skip)]
    pub root: Option<PathBuf>,
}

impl AssessmentTarget {
    /// Adds data files described in harvested metadata when none are known
    /// from a listing.
    pub fn adopt_harvested_files(&mut self, graph: &MetadataGraph) {
        if self.data_files.is_empty() {
            self.data_files = graph.data_files();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Channel {
    EmbeddedStructuredBlock,
    HtmlMetaTag,
    SidecarRecord,
    RegistryRecord,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::EmbeddedStructuredBlock => "embedded-structured-block",
            Channel::HtmlMetaTag => "html-meta-tag",
            Channel::SidecarRecord => "sidecar-record",
            Channel::RegistryRecord => "registry-record",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum StatementValue {
    Text(String),
    Locator(String),
}

impl StatementValue {
    pub fn as_str(&self) -> &str {
        match self {
            StatementValue::Text(s) | StatementValue::Locator(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetadataStatement {
    pub key: String,
    pub value: StatementValue,
    pub channel: Channel,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetadataGraph {
    pub statements: Vec<MetadataStatement>,
    pub namespaces: BTreeSet<String>,
    pub formats: BTreeSet<String>,
    pub schema_ids: BTreeSet<String>,
}

impl MetadataGraph {
    pub fn values<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.statements
            .iter()
            .filter(move |s| s.key == key)
            .map(|s| s.value.as_str())
    }

    pub fn has(&self, key: &str) -> bool {
        self.statements
            .iter()
            .any(|s| s.key == key && !s.value.as_str().trim().is_empty())
    }

    pub fn has_prefix(&self, prefix: &str) -> bool {
        self.statements.iter().any(|s| s.key.starts_with(prefix))
    }

    pub fn from_channel(&self, channel: Channel) -> bool {
        self.statements.iter().any(|s| s.channel == channel)
    }

    /// Data files described by `file.*` statements. A `file.locator` opens a
    /// new file; following size/media-type/checksum statements attach to it.
    pub fn data_files(&self) -> Vec<DataFile> {
        let mut files: Vec<DataFile> = Vec::new();
        for s in &self.statements {
            let value = s.value.as_str().trim();
            match s.key.as_str() {
                vocab::FILE_LOCATOR => files.push(DataFile::new(value)),
                vocab::FILE_SIZE => {
                    if let Some(f) = files.last_mut() {
                        f.declared_size = parse_size(value);
                    }
                }
                vocab::FILE_MEDIA_TYPE => {
                    if let Some(f) = files.last_mut() {
                        f.media_type = Some(value.to_string());
                    }
                }
                vocab::FILE_CHECKSUM => {
                    if let Some(f) = files.last_mut() {
                        f.checksum = Checksum::parse(value)
                            .or_else(|| Checksum::parse(&format!("sha256:{value}")));
                    }
                }
                _ => {}
            }
        }
        files.into_iter().map(DataFile::with_derived_label).collect()
    }

    fn push(&mut self, key: impl Into<String>, value: StatementValue, channel: Channel) {
        let key = key.into();
        if key.is_empty() || value.as_str().trim().is_empty() {
            return;
        }
        self.statements.push(MetadataStatement {
            key,
            value,
            channel,
        });
    }

    fn add_namespace(&mut self, ns: &str) {
        if ns.trim().is_empty() {
            return;
        }
        let ns = vocab::normalize_namespace(ns);
        if let Some(schema) = vocab::schema_for_namespace(&ns) {
            self.schema_ids.insert(schema.to_string());
        }
        self.namespaces.insert(ns);
    }
}

fn parse_size(s: &str) -> Option<u64> {
    let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
    digits.parse().ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseWarning {
    pub channel: Channel,
    pub source: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Harvest {
    pub graph: MetadataGraph,
    pub warnings: Vec<ParseWarning>,
}

pub struct Fetched {
    pub content_type: Option<String>,
    pub body: String,
}

/// Network boundary for live targets.
pub trait Fetcher {
    fn fetch(&self, url: &str) -> Result<Fetched, String>;
}

/// Refuses every request.
pub struct NoNetwork;

impl Fetcher for NoNetwork {
    fn fetch(&self, _url: &str) -> Result<Fetched, String> {
        Err("network access disabled".into())
    }
}

fn is_url(spec: &str) -> bool {
    let lower = spec.to_ascii_lowercase();
    lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("ftp://")
}

/// Resolves a target argument.
pub fn load_target(spec: &str, mode: LoadMode) -> Result<AssessmentTarget, HarvestError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(HarvestError::TargetUnreadable("empty target".into()));
    }
    let path = Path::new(spec);
    let mode = match mode {
        LoadMode::Auto if is_url(spec) => LoadMode::Url,
        LoadMode::Auto if path.is_dir() => LoadMode::Fixture,
        LoadMode::Auto if path.is_file() => LoadMode::Manifest,
        LoadMode::Auto => {
            return Err(HarvestError::TargetUnreadable(format!(
                "`{spec}` is neither a URL nor an existing path"
            )))
        }
        m => m,
    };
    match mode {
        LoadMode::Url => {
            if !is_url(spec) {
                return Err(HarvestError::TargetUnreadable(format!("`{spec}` is not a URL")));
            }
            Ok(AssessmentTarget {
                identifier: spec.to_string(),
                kind: TargetKind::LiveUrl,
                data_files: Vec::new(),
                publisher_hint: None,
                root: None,
            })
        }
        LoadMode::Fixture => load_fixture(path),
        LoadMode::Manifest | LoadMode::Auto => load_manifest_target(path),
    }
}

fn read(path: &Path) -> Result<String, HarvestError> {
    fs::read_to_string(path)
        .map_err(|e| HarvestError::TargetUnreadable(format!("{}: {e}", path.display())))
}

fn load_fixture(dir: &Path) -> Result<AssessmentTarget, HarvestError> {
    if !dir.is_dir() {
        return Err(HarvestError::TargetUnreadable(format!(
            "{} is not a directory",
            dir.display()
        )));
    }
    let manifest_path = dir.join("files.manifest");
    let manifest = if manifest_path.is_file() {
        parse_manifest(&read(&manifest_path)?)
            .map_err(|e| HarvestError::TargetUnreadable(format!("{}: {e}", manifest_path.display())))?
    } else {
        Manifest::default()
    };
    let publisher_path = dir.join("publisher.txt");
    let publisher_hint = if publisher_path.is_file() {
        Some(read(&publisher_path)?.trim().to_string()).filter(|s| !s.is_empty())
    } else {
        None
    };
    let identifier = manifest
        .identifier
        .clone()
        .unwrap_or_else(|| dir.display().to_string());
    Ok(AssessmentTarget {
        identifier,
        kind: TargetKind::FixtureDir,
        data_files: manifest.files,
        publisher_hint: publisher_hint.or(manifest.publisher),
        root: Some(dir.to_path_buf()),
    })
}

fn load_manifest_target(path: &Path) -> Result<AssessmentTarget, HarvestError> {
    let manifest = parse_manifest(&read(path)?)
        .map_err(|e| HarvestError::TargetUnreadable(format!("{}: {e}", path.display())))?;
    let identifier = manifest.identifier.ok_or_else(|| {
        HarvestError::TargetUnreadable(format!(
            "{}: manifest lacks an `identifier=` header",
            path.display()
        ))
    })?;
    Ok(AssessmentTarget {
        identifier,
        kind: TargetKind::ManifestFile,
        data_files: manifest.files,
        publisher_hint: manifest.publisher,
        root: path.parent().map(Path::to_path_buf),
    })
}

/// Extracts a metadata graph from every available channel, in priority
/// order: embedded JSON-LD blocks, HTML meta tags, sidecar records,
/// registry records. A channel that fails to parse contributes nothing and
/// leaves a warning.
pub fn harvest(target: &AssessmentTarget, fetcher: &dyn Fetcher) -> Result<Harvest, HarvestError> {
    let mut sources = channels::Sources::default();
    match target.kind {
        TargetKind::LiveUrl => {
            let fetched =
                fetcher
                    .fetch(&target.identifier)
                    .map_err(|reason| HarvestError::FetchFailed {
                        url: target.identifier.clone(),
                        reason,
                    })?;
            let ct = fetched.content_type.unwrap_or_default().to_ascii_lowercase();
            if ct.contains("json") {
                sources.jsonld = Some(fetched.body);
            } else if ct.contains("turtle") {
                sources.turtle = Some(fetched.body);
            } else {
                sources.html = Some(fetched.body);
            }
        }
        TargetKind::FixtureDir | TargetKind::ManifestFile => {
            if let Some(root) = &target.root {
                sources = channels::Sources::from_dir(root)?;
            }
        }
    }
    Ok(channels::extract(&sources))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &Path, name: &str, body: &str) {
        let mut f = fs::File::create(dir.join(name)).unwrap();
        f.write_all(body.as_bytes()).unwrap();
    }

    #[test]
    fn empty_spec_is_unreadable() {
        assert!(matches!(
            load_target("", LoadMode::Auto),
            Err(HarvestError::TargetUnreadable(_))
        ));
        assert!(matches!(
            load_target("/definitely/not/here", LoadMode::Auto),
            Err(HarvestError::TargetUnreadable(_))
        ));
    }

    #[test]
    fn url_spec_is_live() {
        let t = load_target(
            "https://github.com/AndrewXu22/optimal_unified_memory",
            LoadMode::Auto,
        )
        .unwrap();
        assert_eq!(t.kind, TargetKind::LiveUrl);
        assert_eq!(t.identifier, "https://github.com/AndrewXu22/optimal_unified_memory");
        assert!(t.data_files.is_empty());
    }

    #[test]
    fn live_target_without_network_fails_to_fetch() {
        let t = load_target("https://example.org/dataset", LoadMode::Auto).unwrap();
        assert!(matches!(
            harvest(&t, &NoNetwork),
            Err(HarvestError::FetchFailed { .. })
        ));
    }

    #[test]
    fn single_meta_tag_fixture() {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "landing.html",
            r#"<html><head><meta name="DC.title" content="A dataset"></head><body></body></html>"#,
        );
        let t = load_target(dir.path().to_str().unwrap(), LoadMode::Auto).unwrap();
        assert_eq!(t.kind, TargetKind::FixtureDir);
        let h = harvest(&t, &NoNetwork).unwrap();
        assert_eq!(h.graph.statements.len(), 1);
        assert_eq!(h.graph.statements[0].key, "title");
        assert_eq!(h.graph.statements[0].channel, Channel::HtmlMetaTag);
        assert_eq!(h.graph.formats, BTreeSet::from(["html".to_string()]));
    }

    #[test]
    fn jsonld_sidecar_license_and_format() {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "record.jsonld",
            r#"{"@context": "https://schema.org/", "@type": "Dataset",
                "name": "X", "license": "https://creativecommons.org/licenses/by/4.0/legalcode"}"#,
        );
        let t = load_target(dir.path().to_str().unwrap(), LoadMode::Fixture).unwrap();
        let g = harvest(&t, &NoNetwork).unwrap().graph;
        assert!(g.formats.contains("json-ld"));
        assert!(g.has("license"));
        assert_eq!(
            g.values("license").collect::<Vec<_>>(),
            ["https://creativecommons.org/licenses/by/4.0/legalcode"]
        );
        assert!(g.schema_ids.contains("schema.org"));
        assert!(g.statements.iter().all(|s| s.channel == Channel::SidecarRecord));
    }

    #[test]
    fn broken_channel_is_a_warning_not_an_error() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "record.jsonld", "{ not json");
        write(
            dir.path(),
            "record.dc.xml",
            r#"<metadata xmlns:dc="http://purl.org/dc/elements/1.1/"><dc:title>T</dc:title></metadata>"#,
        );
        let t = load_target(dir.path().to_str().unwrap(), LoadMode::Fixture).unwrap();
        let h = harvest(&t, &NoNetwork).unwrap();
        assert_eq!(h.warnings.len(), 1);
        assert_eq!(h.warnings[0].channel, Channel::SidecarRecord);
        assert_eq!(h.graph.values("title").collect::<Vec<_>>(), ["T"]);
        assert!(h.graph.formats.contains("dc-xml"));
        assert!(!h.graph.formats.contains("json-ld"));
    }

    #[test]
    fn manifest_target_requires_identifier() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "m.manifest", "data.csv\t10\ttext/csv\t-\n");
        let p = dir.path().join("m.manifest");
        assert!(matches!(
            load_target(p.to_str().unwrap(), LoadMode::Auto),
            Err(HarvestError::TargetUnreadable(_))
        ));
        write(
            dir.path(),
            "m.manifest",
            "identifier=https://doi.org/10.1234/abc\ndata.csv\t10\ttext/csv\t-\n",
        );
        let t = load_target(p.to_str().unwrap(), LoadMode::Auto).unwrap();
        assert_eq!(t.kind, TargetKind::ManifestFile);
        assert_eq!(t.identifier, "https://doi.org/10.1234/abc");
        assert_eq!(t.data_files.len(), 1);
        assert_eq!(t.data_files[0].format_label.as_deref(), Some("csv"));
    }

    #[test]
    fn harvest_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "landing.html",
            r#"<html><head>
               <script type="application/ld+json">{"@context":"http://schema.org","name":"A","keywords":["x","y"]}</script>
               <meta name="DC.creator" content="B"><meta name="citation_title" content="A">
               </head></html>"#,
        );
        write(
            dir.path(),
            "record.ttl",
            "@prefix dct: <http://purl.org/dc/terms/> .\n<http://ex.org/d> dct:title \"A\" ; dct:publisher \"P\" .\n",
        );
        let t = load_target(dir.path().to_str().unwrap(), LoadMode::Fixture).unwrap();
        let a = harvest(&t, &NoNetwork).unwrap();
        let b = harvest(&t, &NoNetwork).unwrap();
        assert_eq!(a, b);
        let channels: Vec<_> = a.graph.statements.iter().map(|s| s.channel).collect();
        let mut sorted = channels.clone();
        sorted.sort();
        assert_eq!(channels, sorted, "statements ordered by channel priority");
        assert_eq!(a.graph.values("keywords").collect::<Vec<_>>(), ["x", "y"]);
        assert!(a.graph.formats.contains("turtle"));
        assert!(a.graph.namespaces.contains(vocab::DC_TERMS));
    }

    #[test]
    fn files_from_metadata_statements() {
        let mut g = MetadataGraph::default();
        g.push("file.locator", StatementValue::Locator("https://x/a.csv".into()), Channel::SidecarRecord);
        g.push("file.size", StatementValue::Text("120 bytes".into()), Channel::SidecarRecord);
        g.push("file.locator", StatementValue::Locator("https://x/b.h5".into()), Channel::SidecarRecord);
        let files = g.data_files();
        assert_eq!(files.len(), 2);
        assert_eq!(files[0].declared_size, Some(120));
        assert_eq!(files[0].format_label.as_deref(), Some("csv"));
        assert_eq!(files[1].format_label.as_deref(), Some("hdf5"));
    }

    #[test]
    fn checksum_parsing() {
        assert!(Checksum::parse("sha256:00ff").is_some());
        assert!(Checksum::parse("sha256:zz").is_none());
        assert!(Checksum::parse("00ff").is_none());
    }
}
