//! The embedded HPC vocabulary excerpt.

use serde::Serialize;

pub const HPC: &str = "http://example.org/hpc-ontology.ttl#";
pub const QUDT: &str = "http://qudt.org/schema/qudt/";
pub const UNIT: &str = "http://qudt.org/vocab/unit/";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_ANY_URI: &str = "http://www.w3.org/2001/XMLSchema#anyURI";
pub const QUANTITY_VALUE: &str = "http://qudt.org/schema/qudt/QuantityValue";
pub const QUDT_UNIT: &str = "http://qudt.org/schema/qudt/unit";
pub const QUDT_VALUE: &str = "http://qudt.org/schema/qudt/value";

/// Prefixes every mapping and document may use without declaring them.
pub const BUILTIN_PREFIXES: [(&str, &str); 4] =
    [("hpc", HPC), ("qudt", QUDT), ("unit", UNIT), ("xsd", XSD)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum TermType {
    Class,
    String,
    Integer,
    Decimal,
    Boolean,
    AnyUri,
    Quantity,
    /// Link to another node.
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VocabTerm {
    pub name: &'static str,
    pub datatype: TermType,
    pub description: &'static str,
}

const fn term(name: &'static str, datatype: TermType, description: &'static str) -> VocabTerm {
    VocabTerm {
        name,
        datatype,
        description,
    }
}

use TermType::*;

const TERMS: &[VocabTerm] = &[
    term("hpc:benchmark", AnyUri, "Link to the associated benchmark software ID in ontology"),
    term("hpc:kernelName", String, "Kernel name"),
    term("hpc:gpuThreadBlockSize", Integer, "Launch block size"),
    term("hpc:registersPerThread", Integer, "Register usage per thread"),
    term("hpc:gpuThreadCount", Integer, "Threads count in launched kernel"),
    term("hpc:gpuWavesPerSM", Integer, "Wave count in SM"),
    term("hpc:maxGPUThreadBlockSizeLimitedByRegister", Integer, "Max block limited by registers"),
    term("hpc:maxGPUThreadBlockSizeLimitedByWarps", Integer, "Max block limited by warps"),
    term("hpc:cpuPageFault", Integer, "CPU page fault count"),
    term("hpc:gpuPageFault", Integer, "GPU page fault count"),
    term("hpc:hostToDeviceTransferSize", Quantity, "Host to Device data transfer size"),
    term("hpc:deviceToHostTransferSize", Quantity, "Device to Host data transfer size"),
    term("hpc:TableRow", Class, "One row of a tabular dataset"),
    term("hpc:codeVariant", String, "Code variant ID"),
    term("hpc:allocatedDataSize", Integer, "Memory allocation size"),
    term("hpc:arrayID", String, "Internal ID of the array"),
    term("hpc:commandLineOption", String, "Representing data size or input files etc."),
    term("hpc:DecisionTree", Class, "A decision tree model"),
    term("hpc:DecisionTreeNode", Class, "One node of a decision tree"),
    term("hpc:name", String, "name of the decision tree"),
    term("hpc:wasDerivedFrom", String, "training datasets the tree was derived from"),
    term("hpc:decisionTreeNode", Reference, "link to one or more nodes of this decision tree"),
    term("hpc:treeNodeLevel", Integer, "level from 0"),
    term("hpc:decisionFeature", String, "feature for the condition's left operand"),
    term("hpc:relationOp", String, "operator for the decision condition"),
    term("hpc:relationValue", Decimal, "value as the right operand of the decision condition"),
    term("hpc:hasChildNode", Boolean, "if this node has children or not"),
    term("hpc:trueNode", Reference, "link to the decision tree node when condition evaluates to be true"),
    term("hpc:falseNode", Reference, "link to the decision tree node when condition evaluates to be false"),
    term("hpc:decisionLabel", String, "decision label for a leaf node in a decision tree"),
];

/// Deprecated spellings accepted on input.
const ALIASES: [(&str, &str); 1] = [("hpc:kenelName", "hpc:kernelName")];

pub fn builtin_vocab() -> &'static [VocabTerm] {
    TERMS
}

/// Resolves an alias to its current name; other names pass through.
pub fn canonical_name(name: &str) -> &str {
    ALIASES
        .iter()
        .find(|(old, _)| *old == name)
        .map_or(name, |(_, new)| new)
}

pub fn lookup_term(name: &str) -> Option<&'static VocabTerm> {
    let name = canonical_name(name);
    TERMS.iter().find(|t| t.name == name)
}
