//! CSV to linked data: each data row becomes one node described with
//! properties from the HPC vocabulary.

pub mod ld;
pub mod mapping;
pub mod vocab;

use std::io::Read;

use thiserror::Error;

pub use ld::{parse_linked_data, serialize_linked_data, to_ntriples, LdError, LinkedDataDoc, Node, NodeId, Value};
pub use mapping::{parse_mapping, CellType, ColumnBinding, MappingError, MappingSpec};
pub use vocab::{builtin_vocab, lookup_term, TermType, VocabTerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnnotateError {
    #[error("CSV has no column `{0}`")]
    MissingColumn(String),
    #[error("row {row}, column `{column}`: `{text}` is not a valid {expected}")]
    CellTypeError {
        row: usize,
        column: String,
        text: String,
        expected: &'static str,
    },
    #[error("CSV could not be read: {0}")]
    Csv(String),
    #[error(transparent)]
    Mapping(#[from] MappingError),
}

/// True for xsd:decimal lexical forms: optional sign, digits with at most
/// one point, at least one digit.
pub fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    !(int.is_empty() && frac.is_empty()) && digits(int) && digits(frac)
}

fn coerce(
    cell: &str,
    b: &ColumnBinding,
    row: usize,
) -> Result<Value, AnnotateError> {
    let err = |expected| AnnotateError::CellTypeError {
        row,
        column: b.column.clone(),
        text: cell.to_string(),
        expected,
    };
    Ok(match b.datatype {
        CellType::String => Value::String(cell.to_string()),
        CellType::Integer => Value::Integer(cell.parse().map_err(|_| err("integer"))?),
        CellType::Decimal | CellType::Quantity => {
            if !is_decimal_lexical(cell) {
                return Err(err("decimal"));
            }
            Value::Decimal(cell.to_string())
        }
        CellType::AnyUri => {
            if cell.chars().any(char::is_whitespace) {
                return Err(err("anyURI"));
            }
            Value::AnyUri(cell.to_string())
        }
    })
}

/// Converts CSV text with a header row into a document with one
/// `row_type` node per data row (rows numbered from 1). Quantity cells add
/// one blank QuantityValue node right after their row node.
pub fn annotate_csv<R: Read>(input: R, spec: &MappingSpec) -> Result<LinkedDataDoc, AnnotateError> {
    spec.validate()?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| AnnotateError::Csv(e.to_string()))?
        .clone();
    let columns: Vec<usize> = spec
        .bindings
        .iter()
        .map(|b| {
            headers
                .iter()
                .position(|h| h.trim() == b.column)
                .ok_or_else(|| AnnotateError::MissingColumn(b.column.clone()))
        })
        .collect::<Result<_, _>>()?;
    let units: Vec<Option<String>> = spec
        .bindings
        .iter()
        .map(|b| b.unit.as_deref().map(|u| spec.expand(u)).transpose())
        .collect::<Result<_, _>>()?;
    let properties: Vec<String> = spec
        .bindings
        .iter()
        .map(|b| vocab::canonical_name(&b.property).to_string())
        .collect();

    let mut doc = LinkedDataDoc {
        context: spec.effective_prefixes(),
        nodes: Vec::new(),
    };
    let mut blanks = 0usize;
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| AnnotateError::Csv(e.to_string()))?;
        let mut node = Node::new(NodeId::Iri(spec.row_id(row)), vec![spec.row_type.clone()]);
        let mut quantities = Vec::new();
        for (i, b) in spec.bindings.iter().enumerate() {
            let cell = record.get(columns[i]).unwrap_or("").trim();
            if cell.is_empty() {
                continue;
            }
            let value = coerce(cell, b, row)?;
            if b.datatype == CellType::Quantity {
                let id = NodeId::Blank(format!("b{blanks}"));
                blanks += 1;
                let mut q = Node::new(id.clone(), vec![vocab::QUANTITY_VALUE.to_string()]);
                let unit = units[i].clone().expect("validated: quantity has a unit");
                q.push(vocab::QUDT_UNIT, Value::Ref(NodeId::Iri(unit)));
                q.push(vocab::QUDT_VALUE, value);
                node.push(properties[i].clone(), Value::Ref(id));
                quantities.push(q);
            } else {
                node.push(properties[i].clone(), value);
            }
        }
        doc.nodes.push(node);
        doc.nodes.extend(quantities);
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE_SPEC: &str = r##"{
        "base_iri": "http://example.org/test.csv",
        "row_type": "hpc:TableRow",
        "id_template": "#L{row}",
        "prefixes": {"hpc": "http://example.org/hpc-ontology.ttl#", "unit": "http://qudt.org/vocab/unit/"},
        "bindings": [
            {"column": "Variant", "property": "hpc:codeVariant", "datatype": "string"},
            {"column": "DataSize", "property": "hpc:allocatedDataSize", "datatype": "integer"},
            {"column": "ArrayID", "property": "hpc:arrayID", "datatype": "string"},
            {"column": "commandLineOption", "property": "hpc:commandLineOption", "datatype": "string"},
            {"column": "GPUPagePault", "property": "hpc:gpuPageFault", "datatype": "integer"},
            {"column": "HtoD", "property": "hpc:hostToDeviceTransferSize", "datatype": "quantity", "unit": "unit:KiloBYTE"}
        ]
    }"##;

    const SAMPLE_CSV: &str =
        "Variant,commandLineOption,DataSize,ArrayID,GPUPagePault,HtoD\n111100,graph1MW.6,8000000,0,5,7872.0\n";

    #[test]
    fn sample_row() {
        let spec = parse_mapping(SAMPLE_SPEC).unwrap();
        let doc = annotate_csv(SAMPLE_CSV.as_bytes(), &spec).unwrap();
        assert_eq!(doc.nodes.len(), 2);
        let row = &doc.nodes[0];
        assert_eq!(row.id, NodeId::Iri("http://example.org/test.csv#L1".into()));
        let keys: Vec<&str> = row.properties.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(
            keys,
            [
                "hpc:codeVariant",
                "hpc:allocatedDataSize",
                "hpc:arrayID",
                "hpc:commandLineOption",
                "hpc:gpuPageFault",
                "hpc:hostToDeviceTransferSize"
            ]
        );
        assert_eq!(row.get("hpc:allocatedDataSize"), Some(&Value::Integer(8000000)));
        assert_eq!(row.get("hpc:arrayID"), Some(&Value::String("0".into())));
        let q = &doc.nodes[1];
        assert_eq!(q.get(vocab::QUDT_VALUE), Some(&Value::Decimal("7872.0".into())));
    }

    #[test]
    fn header_only_and_empty_cells() {
        let spec = parse_mapping(SAMPLE_SPEC).unwrap();
        let header = SAMPLE_CSV.lines().next().unwrap();
        assert!(annotate_csv(header.as_bytes(), &spec).unwrap().nodes.is_empty());
        let sparse = format!("{header}\n111100,,,,,\n");
        let doc = annotate_csv(sparse.as_bytes(), &spec).unwrap();
        assert_eq!(doc.nodes.len(), 1);
        assert_eq!(doc.nodes[0].properties.len(), 1);
    }

    #[test]
    fn coercion_and_column_errors() {
        let spec = parse_mapping(SAMPLE_SPEC).unwrap();
        let header = SAMPLE_CSV.lines().next().unwrap();
        let bad = format!("{header}\n1,a,2,0,5,1.0\n1,a,abc,0,5,1.0\n");
        assert_eq!(
            annotate_csv(bad.as_bytes(), &spec),
            Err(AnnotateError::CellTypeError {
                row: 2,
                column: "DataSize".into(),
                text: "abc".into(),
                expected: "integer"
            })
        );
        let missing = "Variant,DataSize\n1,2\n";
        assert!(matches!(
            annotate_csv(missing.as_bytes(), &spec),
            Err(AnnotateError::MissingColumn(c)) if c == "ArrayID"
        ));
    }

    #[test]
    fn decimal_lexicals() {
        for ok in ["0", "7872.0", "-1.5", "+.5", "3."] {
            assert!(is_decimal_lexical(ok), "{ok}");
        }
        for bad in ["", ".", "1e5", "abc", "1.2.3", "--1", "NaN"] {
            assert!(!is_decimal_lexical(bad), "{bad}");
        }
    }
}
