//! Per-channel metadata extraction.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use scraper::{Html, Selector};
use serde_json::{Map, Value};

use super::vocab::{self, canonical_key, meta_tag_key};
use super::{Channel, Harvest, HarvestError, MetadataGraph, ParseWarning, StatementValue};

#[derive(Debug, Default)]
pub(super) struct Sources {
    pub html: Option<String>,
    pub jsonld: Option<String>,
    pub turtle: Option<String>,
    pub dcxml: Option<String>,
    pub registry: Option<String>,
}

impl Sources {
    pub fn from_dir(dir: &Path) -> Result<Self, HarvestError> {
        let read = |name: &str| -> Result<Option<String>, HarvestError> {
            let p = dir.join(name);
            if !p.is_file() {
                return Ok(None);
            }
            fs::read_to_string(&p)
                .map(Some)
                .map_err(|e| HarvestError::TargetUnreadable(format!("{}: {e}", p.display())))
        };
        Ok(Sources {
            html: read("landing.html")?,
            jsonld: read("record.jsonld")?,
            turtle: read("record.ttl")?,
            dcxml: read("record.dc.xml")?,
            registry: read("registry.json")?,
        })
    }
}

struct Collector {
    graph: MetadataGraph,
    warnings: Vec<ParseWarning>,
}

impl Collector {
    fn absorb(&mut self, channel: Channel, source: &str, result: Result<MetadataGraph, String>) {
        match result {
            Ok(part) => {
                for s in part.statements.iter().filter(|s| s.key == vocab::SCHEMA_ID) {
                    let v = s.value.as_str().trim();
                    let id = vocab::schema_for_namespace(v).unwrap_or(v);
                    self.graph.schema_ids.insert(id.to_string());
                }
                self.graph.statements.extend(part.statements);
                self.graph.namespaces.extend(part.namespaces);
                self.graph.formats.extend(part.formats);
                self.graph.schema_ids.extend(part.schema_ids);
            }
            Err(message) => self.warnings.push(ParseWarning {
                channel,
                source: source.to_string(),
                message,
            }),
        }
    }
}

pub(super) fn extract(src: &Sources) -> Harvest {
    let mut c = Collector {
        graph: MetadataGraph::default(),
        warnings: Vec::new(),
    };
    if let Some(html) = &src.html {
        let doc = Html::parse_document(html);
        c.graph.formats.insert("html".into());
        for (i, block) in jsonld_blocks(&doc).into_iter().enumerate() {
            let result = parse_jsonld(&block, Channel::EmbeddedStructuredBlock);
            c.absorb(
                Channel::EmbeddedStructuredBlock,
                &format!("landing.html script block {}", i + 1),
                result,
            );
        }
        c.absorb(Channel::HtmlMetaTag, "landing.html", Ok(meta_tags(&doc)));
    }
    if let Some(text) = &src.jsonld {
        c.absorb(
            Channel::SidecarRecord,
            "record.jsonld",
            parse_jsonld(text, Channel::SidecarRecord),
        );
    }
    if let Some(text) = &src.turtle {
        c.absorb(Channel::SidecarRecord, "record.ttl", parse_turtle(text));
    }
    if let Some(text) = &src.dcxml {
        c.absorb(Channel::SidecarRecord, "record.dc.xml", parse_dc_xml(text));
    }
    if let Some(text) = &src.registry {
        c.absorb(Channel::RegistryRecord, "registry.json", parse_registry(text));
    }
    Harvest {
        graph: c.graph,
        warnings: c.warnings,
    }
}

fn selector(s: &str) -> Selector {
    Selector::parse(s).expect("static selector")
}

fn jsonld_blocks(doc: &Html) -> Vec<String> {
    doc.select(&selector(r#"script[type="application/ld+json"]"#))
        .map(|el| el.text().collect::<String>())
        .collect()
}

fn meta_tags(doc: &Html) -> MetadataGraph {
    let mut g = MetadataGraph::default();
    if let Some(prefix) = doc
        .select(&selector("html"))
        .next()
        .and_then(|el| el.value().attr("prefix"))
    {
        for pair in prefix.split_whitespace().collect::<Vec<_>>().chunks(2) {
            if let [name, iri] = pair {
                if name.ends_with(':') {
                    g.add_namespace(iri);
                }
            }
        }
    }
    for link in doc.select(&selector("link[rel][href]")) {
        let rel = link.value().attr("rel").unwrap_or_default();
        if rel.to_ascii_lowercase().starts_with("schema.") {
            g.add_namespace(link.value().attr("href").unwrap_or_default());
        }
    }
    for meta in doc.select(&selector("meta")) {
        let attrs = meta.value();
        let Some(name) = attrs.attr("name").or_else(|| attrs.attr("property")) else {
            continue;
        };
        let Some(content) = attrs.attr("content") else {
            continue;
        };
        let Some(key) = meta_tag_key(name) else {
            continue;
        };
        let lower = name.to_ascii_lowercase();
        if lower.starts_with("dc.") || lower.starts_with("dcterms.") {
            g.schema_ids.insert("dublin-core".into());
        } else if lower.starts_with("datacite.") {
            g.schema_ids.insert("datacite".into());
        }
        let value = value_for(&key, content.trim());
        g.push(key, value, Channel::HtmlMetaTag);
    }
    g
}

fn looks_like_locator(s: &str) -> bool {
    s.contains("://") || s.starts_with("doi:") || s.starts_with("urn:")
}

fn value_for(key: &str, s: &str) -> StatementValue {
    let locator_key = matches!(
        key,
        vocab::IDENTIFIER | vocab::RELATED | vocab::LICENSE | vocab::FILE_LOCATOR
    );
    if locator_key && looks_like_locator(s) {
        StatementValue::Locator(s.to_string())
    } else {
        StatementValue::Text(s.to_string())
    }
}

#[derive(Debug, Default, Clone)]
struct Context {
    vocab: Option<String>,
    prefixes: HashMap<String, String>,
    terms: HashMap<String, String>,
}

impl Context {
    fn read(&mut self, v: &Value, g: &mut MetadataGraph) {
        match v {
            Value::String(s) => {
                let ns = vocab::normalize_namespace(s);
                g.add_namespace(&ns);
                self.vocab = Some(ns);
            }
            Value::Array(items) => items.iter().for_each(|i| self.read(i, g)),
            Value::Object(map) => {
                for (k, val) in map {
                    match (k.as_str(), val) {
                        ("@vocab", Value::String(s)) => {
                            g.add_namespace(s);
                            self.vocab = Some(s.clone());
                        }
                        (k, _) if k.starts_with('@') => {}
                        (k, Value::String(s)) if s.contains("://") => {
                            if s.ends_with('/') || s.ends_with('#') {
                                g.add_namespace(s);
                                self.prefixes.insert(k.to_string(), s.clone());
                            } else {
                                self.terms.insert(k.to_string(), s.clone());
                            }
                        }
                        (k, Value::String(s)) => {
                            if let Some(iri) = self.expand(s) {
                                self.terms.insert(k.to_string(), iri);
                            }
                        }
                        (k, Value::Object(def)) => {
                            if let Some(Value::String(id)) = def.get("@id") {
                                if let Some(iri) = self.expand(id) {
                                    self.terms.insert(k.to_string(), iri);
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
            _ => {}
        }
    }

    fn expand(&self, key: &str) -> Option<String> {
        if key.contains("://") {
            return Some(key.to_string());
        }
        if let Some(iri) = self.terms.get(key) {
            return Some(iri.clone());
        }
        if let Some((prefix, local)) = key.split_once(':') {
            return self.prefixes.get(prefix).map(|ns| format!("{ns}{local}"));
        }
        self.vocab.as_ref().map(|v| format!("{v}{key}"))
    }
}

fn parse_jsonld(text: &str, channel: Channel) -> Result<MetadataGraph, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON-LD: {e}"))?;
    let mut g = MetadataGraph::default();
    g.formats.insert("json-ld".into());
    let mut ctx = Context::default();
    match &doc {
        Value::Array(items) => {
            for item in items {
                if let Value::Object(obj) = item {
                    top_node(obj, &ctx, &mut g, channel);
                }
            }
        }
        Value::Object(obj) => {
            if let Some(c) = obj.get("@context") {
                ctx.read(c, &mut g);
            }
            top_node(obj, &ctx, &mut g, channel);
        }
        _ => return Err("JSON-LD document must be an object or array".into()),
    }
    Ok(g)
}

fn top_node(obj: &Map<String, Value>, ctx: &Context, g: &mut MetadataGraph, channel: Channel) {
    let mut ctx = ctx.clone();
    if let Some(c) = obj.get("@context") {
        ctx.read(c, g);
    }
    for (k, v) in obj {
        match k.as_str() {
            "@context" => {}
            "@id" => {
                if let Value::String(s) = v {
                    g.push(vocab::IDENTIFIER, StatementValue::Locator(s.clone()), channel);
                }
            }
            "@type" => {
                for t in strings(v) {
                    g.push(vocab::RESOURCE_TYPE, StatementValue::Text(t), channel);
                }
            }
            "@graph" => {
                if let Value::Array(items) = v {
                    for item in items {
                        if let Value::Object(o) = item {
                            top_node(o, &ctx, g, channel);
                        }
                    }
                }
            }
            k if k.starts_with('@') => {}
            _ => property(k, v, &ctx, g, channel),
        }
    }
}

fn strings(v: &Value) -> Vec<String> {
    match v {
        Value::String(s) => vec![s.clone()],
        Value::Array(items) => items.iter().flat_map(strings).collect(),
        _ => Vec::new(),
    }
}

fn property(k: &str, v: &Value, ctx: &Context, g: &mut MetadataGraph, channel: Channel) {
    let iri = ctx.expand(k);
    let local = iri
        .as_deref()
        .and_then(vocab::split_iri)
        .map(|(_, l)| l)
        .unwrap_or(k);
    if local == "distribution" {
        for item in as_list(v) {
            if let Value::Object(o) = item {
                distribution(o, ctx, g, channel);
            } else if let Value::String(s) = item {
                g.push(vocab::FILE_LOCATOR, StatementValue::Locator(s.clone()), channel);
            }
        }
        return;
    }
    let key = iri
        .as_deref()
        .and_then(canonical_key)
        .or(iri)
        .unwrap_or_else(|| k.to_string());
    for item in as_list(v) {
        for value in literal_values(&key, item) {
            g.push(key.clone(), value, channel);
        }
    }
}

fn as_list(v: &Value) -> Vec<&Value> {
    match v {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    }
}

fn literal_values(key: &str, v: &Value) -> Vec<StatementValue> {
    match v {
        Value::String(s) if key == vocab::KEYWORDS => s
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| StatementValue::Text(s.to_string()))
            .collect(),
        Value::String(s) => vec![value_for(key, s)],
        Value::Bool(b) if key == vocab::ACCESS_LEVEL => vec![StatementValue::Text(
            if *b { "open" } else { "restricted" }.into(),
        )],
        Value::Bool(b) => vec![StatementValue::Text(b.to_string())],
        Value::Number(n) => vec![StatementValue::Text(n.to_string())],
        Value::Object(o) => {
            if let Some(val) = o.get("@value") {
                return literal_values(key, val);
            }
            let label = ["name", "legalName", "@id", "url", "identifier"]
                .iter()
                .find_map(|f| o.get(*f).and_then(Value::as_str));
            match label {
                Some(s) if o.contains_key("@id") && o.len() == 1 => {
                    vec![StatementValue::Locator(s.to_string())]
                }
                Some(s) => vec![value_for(key, s)],
                None => Vec::new(),
            }
        }
        _ => Vec::new(),
    }
}

fn distribution(o: &Map<String, Value>, ctx: &Context, g: &mut MetadataGraph, channel: Channel) {
    let mut ctx = ctx.clone();
    if let Some(c) = o.get("@context") {
        ctx.read(c, g);
    }
    let locator = ["contentUrl", "downloadURL", "dcat:downloadURL", "accessURL", "url", "@id"]
        .iter()
        .find_map(|f| o.get(*f).and_then(Value::as_str));
    let Some(locator) = locator else {
        return;
    };
    g.push(
        vocab::FILE_LOCATOR,
        StatementValue::Locator(locator.to_string()),
        channel,
    );
    for (k, v) in o {
        if k.starts_with('@') {
            continue;
        }
        let key = ctx.expand(k).as_deref().and_then(canonical_key);
        if let Some(key @ (vocab::FILE_SIZE | vocab::FILE_MEDIA_TYPE | vocab::FILE_CHECKSUM)) =
            key.as_deref()
        {
            for value in literal_values(key, v) {
                g.push(key, value, channel);
            }
        }
    }
}

fn parse_turtle(text: &str) -> Result<MetadataGraph, String> {
    use oxrdf::{NamedOrBlankNode, Term};
    use oxttl::TurtleParser;

    let mut g = MetadataGraph::default();
    g.formats.insert("turtle".into());
    let mut parser = TurtleParser::new().for_slice(text.as_bytes());
    let mut triples = Vec::new();
    for t in parser.by_ref() {
        triples.push(t.map_err(|e| format!("invalid Turtle: {e}"))?);
    }
    for (_, iri) in parser.prefixes() {
        g.add_namespace(iri);
    }
    for t in triples {
        let pred = t.predicate.as_str();
        if pred == format!("{}type", vocab::RDF) {
            if let (NamedOrBlankNode::NamedNode(_), Term::NamedNode(ty)) = (&t.subject, &t.object)
            {
                let local = vocab::split_iri(ty.as_str()).map_or(ty.as_str(), |(_, l)| l);
                g.push(
                    vocab::RESOURCE_TYPE,
                    StatementValue::Text(local.to_string()),
                    Channel::SidecarRecord,
                );
            }
            continue;
        }
        let key = canonical_key(pred).unwrap_or_else(|| pred.to_string());
        let value = match &t.object {
            Term::NamedNode(n) => StatementValue::Locator(n.as_str().to_string()),
            Term::Literal(l) => value_for(&key, l.value()),
            _ => continue,
        };
        g.push(key, value, Channel::SidecarRecord);
    }
    Ok(g)
}

fn parse_dc_xml(text: &str) -> Result<MetadataGraph, String> {
    let doc = roxmltree::Document::parse(text).map_err(|e| format!("invalid XML: {e}"))?;
    let mut g = MetadataGraph::default();
    g.formats.insert("dc-xml".into());
    g.schema_ids.insert("dublin-core".into());
    for node in doc.descendants().filter(|n| n.is_element()) {
        for ns in node.namespaces() {
            g.add_namespace(ns.uri());
        }
        let tag = node.tag_name();
        let Some(ns) = tag.namespace() else { continue };
        let ns = vocab::normalize_namespace(ns);
        if ns != vocab::DC_ELEMENTS && ns != vocab::DC_TERMS {
            continue;
        }
        let Some(key) = canonical_key(&format!("{ns}{}", tag.name())) else {
            continue;
        };
        let text: String = node.text().unwrap_or_default().trim().to_string();
        if !text.is_empty() {
            let value = value_for(&key, &text);
            g.push(key, value, Channel::SidecarRecord);
        }
    }
    Ok(g)
}

/// DataCite-style JSON record, either bare attributes or wrapped in
/// `data.attributes`.
fn parse_registry(text: &str) -> Result<MetadataGraph, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| format!("invalid registry JSON: {e}"))?;
    let attrs = doc
        .pointer("/data/attributes")
        .or_else(|| doc.get("attributes"))
        .unwrap_or(&doc);
    let Value::Object(attrs) = attrs else {
        return Err("registry record must be a JSON object".into());
    };
    let mut g = MetadataGraph::default();
    g.formats.insert("datacite-json".into());
    g.schema_ids.insert("datacite".into());
    let ch = Channel::RegistryRecord;
    let text_of = |v: &Value, field: &str| -> Vec<String> {
        as_list(v)
            .into_iter()
            .filter_map(|item| match item {
                Value::String(s) => Some(s.clone()),
                Value::Number(n) => Some(n.to_string()),
                Value::Object(o) => o.get(field).and_then(|x| match x {
                    Value::String(s) => Some(s.clone()),
                    Value::Number(n) => Some(n.to_string()),
                    _ => None,
                }),
                _ => None,
            })
            .collect()
    };
    let fields: [(&str, &str, &str); 9] = [
        ("titles", "title", vocab::TITLE),
        ("creators", "name", vocab::CREATOR),
        ("publisher", "name", vocab::PUBLISHER),
        ("publicationYear", "", vocab::PUBLICATION_DATE),
        ("descriptions", "description", vocab::DESCRIPTION),
        ("subjects", "subject", vocab::KEYWORDS),
        ("rightsList", "rightsUri", vocab::LICENSE),
        ("relatedIdentifiers", "relatedIdentifier", vocab::RELATED),
        ("schemaVersion", "", vocab::SCHEMA_ID),
    ];
    if let Some(Value::String(doi)) = attrs.get("doi") {
        g.push(
            vocab::IDENTIFIER,
            StatementValue::Locator(format!("https://doi.org/{doi}")),
            ch,
        );
    }
    for (field, inner, key) in fields {
        if let Some(v) = attrs.get(field) {
            for s in text_of(v, inner) {
                let value = value_for(key, &s);
                g.push(key, value, ch);
            }
        }
    }
    if let Some(t) = attrs
        .get("types")
        .and_then(|t| t.get("resourceTypeGeneral"))
        .and_then(Value::as_str)
    {
        g.push(vocab::RESOURCE_TYPE, StatementValue::Text(t.to_string()), ch);
    }
    if let Some(Value::String(sv)) = attrs.get("schemaVersion") {
        if sv.contains("://") {
            g.add_namespace(sv);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonld_distribution_yields_files() {
        let g = parse_jsonld(
            r#"{"@context": {"@vocab": "http://schema.org/"},
                "@type": "Dataset",
                "distribution": [
                  {"@type": "DataDownload", "contentUrl": "https://x/a.csv",
                   "encodingFormat": "text/csv", "contentSize": "1024"}
                ]}"#,
            Channel::SidecarRecord,
        )
        .unwrap();
        let files = g.data_files();
        assert_eq!(files.len(), 1);
        assert_eq!(files[0].locator, "https://x/a.csv");
        assert_eq!(files[0].declared_size, Some(1024));
        assert_eq!(files[0].media_type.as_deref(), Some("text/csv"));
    }

    #[test]
    fn jsonld_prefixes_and_unknown_terms() {
        let g = parse_jsonld(
            r#"{"@context": {"prov": "http://www.w3.org/ns/prov#", "ex": "http://example.org/v#"},
                "prov:wasGeneratedBy": {"@id": "http://example.org/run/1"},
                "ex:custom": "v", "plain": "kept raw"}"#,
            Channel::SidecarRecord,
        )
        .unwrap();
        assert!(g.namespaces.contains(vocab::PROV));
        assert!(g.has("provenance.wasGeneratedBy"));
        assert!(g.has("http://example.org/v#custom"));
        assert!(g.has("plain"));
    }

    #[test]
    fn accessible_for_free_is_open_access() {
        let g = parse_jsonld(
            r#"{"@context": "https://schema.org", "isAccessibleForFree": true}"#,
            Channel::SidecarRecord,
        )
        .unwrap();
        assert_eq!(g.values("access_level").collect::<Vec<_>>(), ["open"]);
    }

    #[test]
    fn registry_record_fields() {
        let g = parse_registry(
            r#"{"data": {"attributes": {
                "doi": "10.5281/zenodo.1", "titles": [{"title": "T"}],
                "creators": [{"name": "C"}], "publisher": "Zenodo", "publicationYear": 2021,
                "rightsList": [{"rightsUri": "https://creativecommons.org/licenses/by/4.0/legalcode"}],
                "types": {"resourceTypeGeneral": "Dataset"},
                "schemaVersion": "http://datacite.org/schema/kernel-4"}}}"#,
        )
        .unwrap();
        assert_eq!(g.values("identifier").collect::<Vec<_>>(), ["https://doi.org/10.5281/zenodo.1"]);
        assert_eq!(g.values("publication_date").collect::<Vec<_>>(), ["2021"]);
        assert!(g.has("license"));
        assert!(g.schema_ids.contains("datacite"));
        assert!(g.statements.iter().all(|s| s.channel == Channel::RegistryRecord));
    }

    #[test]
    fn invalid_turtle_is_rejected_whole() {
        assert!(parse_turtle("@prefix dct: <http://purl.org/dc/terms/> .\n<a> dct:title").is_err());
    }

    #[test]
    fn link_schema_declares_namespace() {
        let doc = Html::parse_document(
            r#"<html><head><link rel="schema.DC" href="http://purl.org/dc/elements/1.1/">
               <meta name="DC.rights" content="CC-BY-4.0"></head></html>"#,
        );
        let g = meta_tags(&doc);
        assert!(g.namespaces.contains(vocab::DC_ELEMENTS));
        assert!(g.has("license"));
    }
}
