//! Canonical metadata keys and the mapping from source vocabularies onto them.

pub const TITLE: &str = "title";
pub const CREATOR: &str = "creator";
pub const PUBLISHER: &str = "publisher";
pub const PUBLICATION_DATE: &str = "publication_date";
pub const DESCRIPTION: &str = "description";
pub const KEYWORDS: &str = "keywords";
pub const IDENTIFIER: &str = "identifier";
pub const RESOURCE_TYPE: &str = "resource_type";
pub const LICENSE: &str = "license";
pub const ACCESS_LEVEL: &str = "access_level";
pub const RELATED: &str = "related";
pub const PRESERVATION_POLICY: &str = "preservation_policy";
pub const SCHEMA_ID: &str = "schema_id";
pub const FILE_LOCATOR: &str = "file.locator";
pub const FILE_SIZE: &str = "file.size";
pub const FILE_MEDIA_TYPE: &str = "file.media_type";
pub const FILE_CHECKSUM: &str = "file.checksum";
pub const PROVENANCE_PREFIX: &str = "provenance.";

pub const SCHEMA_ORG: &str = "http://schema.org/";
pub const DC_ELEMENTS: &str = "http://purl.org/dc/elements/1.1/";
pub const DC_TERMS: &str = "http://purl.org/dc/terms/";
pub const DCAT: &str = "http://www.w3.org/ns/dcat#";
pub const PROV: &str = "http://www.w3.org/ns/prov#";
pub const PAV: &str = "http://purl.org/pav/";
pub const DATACITE: &str = "http://datacite.org/schema/kernel-4";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

/// Normalizes a namespace IRI for set comparisons: schema.org is folded to
/// its http form and a missing trailing separator is added.
pub fn normalize_namespace(ns: &str) -> String {
    let ns = ns.trim();
    let lower = ns.to_ascii_lowercase();
    if lower.trim_end_matches('/') == "https://schema.org"
        || lower.trim_end_matches('/') == "http://schema.org"
    {
        return SCHEMA_ORG.to_string();
    }
    if ns.ends_with('/') || ns.ends_with('#') {
        ns.to_string()
    } else {
        format!("{ns}/")
    }
}

/// Splits an absolute IRI into (namespace, local name).
pub fn split_iri(iri: &str) -> Option<(&str, &str)> {
    let idx = iri.rfind(['#', '/'])?;
    let (ns, local) = iri.split_at(idx + 1);
    if local.is_empty() {
        None
    } else {
        Some((ns, local))
    }
}

/// Maps a full property IRI to its canonical key. Properties from the
/// provenance vocabularies map to `provenance.<local>`.
pub fn canonical_key(iri: &str) -> Option<String> {
    let (ns, local) = split_iri(iri)?;
    let ns = normalize_namespace(ns);
    let key = match ns.as_str() {
        SCHEMA_ORG => schema_org(local),
        DC_ELEMENTS | DC_TERMS => dublin_core(local),
        DCAT => dcat(local),
        PROV | PAV => return Some(format!("{PROVENANCE_PREFIX}{local}")),
        _ => None,
    };
    key.map(str::to_string)
}

fn schema_org(local: &str) -> Option<&'static str> {
    Some(match local {
        "name" | "headline" => TITLE,
        "creator" | "author" => CREATOR,
        "publisher" | "provider" => PUBLISHER,
        "datePublished" | "dateCreated" | "publicationDate" => PUBLICATION_DATE,
        "description" | "abstract" => DESCRIPTION,
        "keywords" => KEYWORDS,
        "identifier" | "sameAs" => IDENTIFIER,
        "additionalType" => RESOURCE_TYPE,
        "license" => LICENSE,
        "conditionsOfAccess" | "isAccessibleForFree" => ACCESS_LEVEL,
        "isPartOf" | "hasPart" | "citation" | "isBasedOn" | "relatedLink" | "isRelatedTo" => {
            RELATED
        }
        "schemaVersion" | "conformsTo" => SCHEMA_ID,
        "contentUrl" => FILE_LOCATOR,
        "contentSize" => FILE_SIZE,
        "encodingFormat" | "fileFormat" => FILE_MEDIA_TYPE,
        "sha256" => FILE_CHECKSUM,
        _ => return None,
    })
}

fn dublin_core(local: &str) -> Option<&'static str> {
    Some(match local {
        "title" => TITLE,
        "creator" => CREATOR,
        "publisher" => PUBLISHER,
        "date" | "issued" | "created" => PUBLICATION_DATE,
        "description" | "abstract" => DESCRIPTION,
        "subject" => KEYWORDS,
        "identifier" => IDENTIFIER,
        "type" => RESOURCE_TYPE,
        "license" | "rights" => LICENSE,
        "accessRights" => ACCESS_LEVEL,
        "relation" | "isPartOf" | "hasPart" | "references" | "isReferencedBy" | "source"
        | "isVersionOf" | "requires" => RELATED,
        "conformsTo" => SCHEMA_ID,
        "format" => FILE_MEDIA_TYPE,
        "extent" => FILE_SIZE,
        "provenance" => "provenance.statement",
        _ => return None,
    })
}

fn dcat(local: &str) -> Option<&'static str> {
    Some(match local {
        "keyword" => KEYWORDS,
        "downloadURL" | "accessURL" => FILE_LOCATOR,
        "mediaType" => FILE_MEDIA_TYPE,
        "byteSize" => FILE_SIZE,
        "qualifiedRelation" => RELATED,
        _ => return None,
    })
}

/// Maps an HTML meta tag name (`DC.title`, `citation_author`, ...) to a
/// canonical key. Unprefixed names are not harvested.
pub fn meta_tag_key(name: &str) -> Option<String> {
    let lower = name.trim().to_ascii_lowercase();
    if let Some(local) = lower
        .strip_prefix("dc.")
        .or_else(|| lower.strip_prefix("dcterms."))
    {
        let original = &name.trim()[name.trim().len() - local.len()..];
        return dublin_core(original)
            .or_else(|| dublin_core(local))
            .map(str::to_string);
    }
    if let Some(local) = lower.strip_prefix("citation_") {
        return Some(
            match local {
                "title" => TITLE,
                "author" => CREATOR,
                "publisher" => PUBLISHER,
                "publication_date" | "date" | "online_date" => PUBLICATION_DATE,
                "abstract" => DESCRIPTION,
                "keywords" => KEYWORDS,
                "doi" => IDENTIFIER,
                "pdf_url" => FILE_LOCATOR,
                _ => return None,
            }
            .to_string(),
        );
    }
    if let Some(local) = lower.strip_prefix("datacite.") {
        return Some(
            match local {
                "title" => TITLE,
                "creator" => CREATOR,
                "publisher" => PUBLISHER,
                "publicationyear" => PUBLICATION_DATE,
                "description" => DESCRIPTION,
                "subject" => KEYWORDS,
                "identifier" => IDENTIFIER,
                "resourcetype" => RESOURCE_TYPE,
                "rights" => LICENSE,
                "relatedidentifier" => RELATED,
                _ => return None,
            }
            .to_string(),
        );
    }
    None
}

/// Recognized metadata-schema identifiers implied by a namespace.
pub fn schema_for_namespace(ns: &str) -> Option<&'static str> {
    match normalize_namespace(ns).as_str() {
        SCHEMA_ORG => Some("schema.org"),
        DC_ELEMENTS | DC_TERMS => Some("dublin-core"),
        DCAT => Some("dcat"),
        "http://datacite.org/schema/kernel-4/" => Some("datacite"),
        "http://rs.tdwg.org/dwc/terms/" => Some("darwin-core"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_common_vocabularies() {
        assert_eq!(canonical_key("http://schema.org/name").as_deref(), Some(TITLE));
        assert_eq!(canonical_key("https://schema.org/license").as_deref(), Some(LICENSE));
        assert_eq!(canonical_key("http://purl.org/dc/terms/issued").as_deref(), Some(PUBLICATION_DATE));
        assert_eq!(
            canonical_key("http://www.w3.org/ns/prov#wasGeneratedBy").as_deref(),
            Some("provenance.wasGeneratedBy")
        );
        assert_eq!(canonical_key("http://example.org/other#thing"), None);
    }

    #[test]
    fn meta_tags() {
        assert_eq!(meta_tag_key("DC.title").as_deref(), Some(TITLE));
        assert_eq!(meta_tag_key("DCTERMS.accessRights").as_deref(), Some(ACCESS_LEVEL));
        assert_eq!(meta_tag_key("citation_author").as_deref(), Some(CREATOR));
        assert_eq!(meta_tag_key("og:title"), None);
        assert_eq!(meta_tag_key("description"), None);
    }

    #[test]
    fn namespace_normalization() {
        assert_eq!(normalize_namespace("https://schema.org"), SCHEMA_ORG);
        assert_eq!(normalize_namespace("http://schema.org/"), SCHEMA_ORG);
        assert_eq!(normalize_namespace("http://www.w3.org/ns/prov#"), PROV);
        assert_eq!(schema_for_namespace(DATACITE), Some("datacite"));
    }
}
