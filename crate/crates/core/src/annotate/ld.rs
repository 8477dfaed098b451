//! A small linked-data document model with a canonical JSON-LD writer, a
//! JSON-LD reader for the same shape, and an N-Triples writer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use super::vocab::{self, BUILTIN_PREFIXES};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeId {
    Iri(String),
    /// Blank node label without the `_:` prefix.
    Blank(String),
}

impl NodeId {
    pub fn parse(s: &str) -> NodeId {
        match s.strip_prefix("_:") {
            Some(label) => NodeId::Blank(label.to_string()),
            None => NodeId::Iri(s.to_string()),
        }
    }

    pub fn to_json_ld(&self) -> String {
        match self {
            NodeId::Iri(i) => i.clone(),
            NodeId::Blank(b) => format!("_:{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    String(String),
    Integer(i64),
    /// xsd:decimal kept as its lexical form so values survive unchanged.
    Decimal(String),
    Boolean(bool),
    AnyUri(String),
    Ref(NodeId),
    List(Vec<Value>),
}

impl Value {
    /// Unwraps one-element lists, which expanded JSON-LD uses for every
    /// single value.
    pub fn single(&self) -> &Value {
        match self {
            Value::List(items) if items.len() == 1 => items[0].single(),
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub types: Vec<String>,
    pub properties: Vec<(String, Value)>,
}

impl Node {
    pub fn new(id: NodeId, types: Vec<String>) -> Node {
        Node {
            id,
            types,
            properties: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: Value) {
        self.properties.push((key.into(), value));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.properties
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinkedDataDoc {
    pub context: Vec<(String, String)>,
    pub nodes: Vec<Node>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LdError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unexpected document shape: {0}")]
    Shape(String),
    #[error("reference to blank node _:{0} that the document does not define")]
    DanglingReference(String),
    #[error("node {0} defined twice")]
    DuplicateNode(String),
    #[error("cannot expand `{0}` to an IRI")]
    UnexpandableName(String),
}

impl LinkedDataDoc {
    /// A document with the built-in prefixes as context.
    pub fn with_builtin_context() -> LinkedDataDoc {
        LinkedDataDoc {
            context: BUILTIN_PREFIXES
                .iter()
                .map(|(p, i)| (p.to_string(), i.to_string()))
                .collect(),
            nodes: Vec::new(),
        }
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.iter().find(|n| &n.id == id)
    }

    pub fn nodes_of_type<'a>(&'a self, ty: &'a str) -> impl Iterator<Item = &'a Node> + 'a {
        let want = self.expand(ty);
        self.nodes
            .iter()
            .filter(move |n| n.types.iter().any(|t| self.expand(t) == want))
    }

    /// Expands `prefix:local` through the context (then the built-in
    /// prefixes); absolute IRIs pass through.
    pub fn expand(&self, name: &str) -> Option<String> {
        if name.contains("://") || name.starts_with("urn:") {
            return Some(name.to_string());
        }
        let (prefix, local) = name.split_once(':')?;
        self.context
            .iter()
            .map(|(p, i)| (p.as_str(), i.as_str()))
            .chain(BUILTIN_PREFIXES)
            .find(|(p, _)| *p == prefix)
            .map(|(_, iri)| format!("{iri}{local}"))
    }

    /// Checks node ids are unique and every blank-node reference resolves.
    pub fn validate(&self) -> Result<(), LdError> {
        let mut ids = BTreeSet::new();
        for n in &self.nodes {
            if !ids.insert(&n.id) {
                return Err(LdError::DuplicateNode(n.id.to_json_ld()));
            }
        }
        fn check(v: &Value, ids: &BTreeSet<&NodeId>) -> Result<(), LdError> {
            match v {
                Value::Ref(id @ NodeId::Blank(b)) if !ids.contains(id) => {
                    Err(LdError::DanglingReference(b.clone()))
                }
                Value::List(items) => items.iter().try_for_each(|i| check(i, ids)),
                _ => Ok(()),
            }
        }
        self.nodes
            .iter()
            .flat_map(|n| n.properties.iter())
            .try_for_each(|(_, v)| check(v, &ids))
    }

    /// Renames blank nodes to `b0`, `b1`, ... in order of first use.
    pub fn canonicalize(&self) -> LinkedDataDoc {
        let mut names: BTreeMap<String, String> = BTreeMap::new();
        fn rename(id: &NodeId, names: &mut BTreeMap<String, String>) -> NodeId {
            match id {
                NodeId::Iri(_) => id.clone(),
                NodeId::Blank(b) => {
                    let n = names.len();
                    NodeId::Blank(names.entry(b.clone()).or_insert_with(|| format!("b{n}")).clone())
                }
            }
        }
        fn value(v: &Value, names: &mut BTreeMap<String, String>) -> Value {
            match v {
                Value::Ref(id) => Value::Ref(rename(id, names)),
                Value::List(items) => Value::List(items.iter().map(|i| value(i, names)).collect()),
                other => other.clone(),
            }
        }
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node {
                id: rename(&n.id, &mut names),
                types: n.types.clone(),
                properties: n
                    .properties
                    .iter()
                    .map(|(k, v)| (k.clone(), value(v, &mut names)))
                    .collect(),
            })
            .collect();
        LinkedDataDoc {
            context: self.context.clone(),
            nodes,
        }
    }
}

fn value_to_json(v: &Value) -> Json {
    match v {
        Value::String(s) => Json::String(s.clone()),
        Value::Integer(i) => json!(i),
        Value::Boolean(b) => json!(b),
        Value::Decimal(d) => json!({"@type": vocab::XSD_DECIMAL, "@value": d}),
        Value::AnyUri(u) => json!({"@type": vocab::XSD_ANY_URI, "@value": u}),
        Value::Ref(id) => json!({"@id": id.to_json_ld()}),
        Value::List(items) => Json::Array(items.iter().map(value_to_json).collect()),
    }
}

fn node_to_json(n: &Node) -> Json {
    let mut obj = Map::new();
    obj.insert("@id".into(), Json::String(n.id.to_json_ld()));
    match n.types.as_slice() {
        [] => {}
        [one] => {
            obj.insert("@type".into(), Json::String(one.clone()));
        }
        many => {
            obj.insert("@type".into(), json!(many));
        }
    }
    for (k, v) in &n.properties {
        obj.insert(k.clone(), value_to_json(v));
    }
    Json::Object(obj)
}

/// Canonical JSON-LD bytes: context first, nodes in document order,
/// properties in insertion order, blank nodes renamed by first use,
/// two-space indentation, trailing newline.
pub fn serialize_linked_data(doc: &LinkedDataDoc) -> String {
    let doc = doc.canonicalize();
    let mut ctx = Map::new();
    for (p, iri) in &doc.context {
        ctx.insert(p.clone(), Json::String(iri.clone()));
    }
    let mut top = Map::new();
    top.insert("@context".into(), Json::Object(ctx));
    top.insert(
        "@graph".into(),
        Json::Array(doc.nodes.iter().map(node_to_json).collect()),
    );
    let mut out = serde_json::to_string_pretty(&Json::Object(top)).expect("JSON values serialize");
    out.push('\n');
    out
}

struct Reader {
    context: Vec<(String, String)>,
    nodes: Vec<Node>,
    fresh: usize,
}

impl Reader {
    fn expand(&self, name: &str) -> String {
        let doc = LinkedDataDoc {
            context: self.context.clone(),
            nodes: Vec::new(),
        };
        doc.expand(name).unwrap_or_else(|| name.to_string())
    }

    fn literal(&self, obj: &Map<String, Json>) -> Result<Value, LdError> {
        let raw = &obj["@value"];
        let lexical = match raw {
            Json::String(s) => s.clone(),
            Json::Number(n) => n.to_string(),
            Json::Bool(b) => b.to_string(),
            other => return Err(LdError::Shape(format!("unsupported @value {other}"))),
        };
        let ty = match obj.get("@type") {
            Some(Json::String(t)) => Some(self.expand(t)),
            Some(other) => return Err(LdError::Shape(format!("bad literal @type {other}"))),
            None => None,
        };
        let bad = |what: &str| LdError::Shape(format!("`{lexical}` is not a valid {what}"));
        Ok(match ty.as_deref() {
            Some(t) if t == vocab::XSD_DECIMAL || t.ends_with("#float") || t.ends_with("#double") => {
                Value::Decimal(lexical)
            }
            Some(vocab::XSD_INTEGER) => Value::Integer(lexical.parse().map_err(|_| bad("integer"))?),
            Some(vocab::XSD_BOOLEAN) => Value::Boolean(lexical.parse().map_err(|_| bad("boolean"))?),
            Some(vocab::XSD_ANY_URI) => Value::AnyUri(lexical),
            Some(vocab::XSD_STRING) => Value::String(lexical),
            Some(other) => return Err(LdError::Shape(format!("unsupported literal type {other}"))),
            None => match raw {
                Json::Bool(b) => Value::Boolean(*b),
                Json::Number(n) => match n.as_i64() {
                    Some(i) => Value::Integer(i),
                    None => Value::Decimal(lexical),
                },
                _ => Value::String(lexical),
            },
        })
    }

    fn value(&mut self, v: &Json) -> Result<Value, LdError> {
        Ok(match v {
            Json::String(s) => Value::String(s.clone()),
            Json::Bool(b) => Value::Boolean(*b),
            Json::Number(n) => match n.as_i64() {
                Some(i) => Value::Integer(i),
                None => Value::Decimal(n.to_string()),
            },
            Json::Array(items) => Value::List(
                items
                    .iter()
                    .map(|i| self.value(i))
                    .collect::<Result<_, _>>()?,
            ),
            Json::Object(obj) if obj.contains_key("@value") => self.literal(obj)?,
            Json::Object(obj) if obj.contains_key("@list") => self.value(&obj["@list"])?,
            Json::Object(obj) if obj.len() == 1 && obj.contains_key("@id") => match &obj["@id"] {
                Json::String(id) => Value::Ref(NodeId::parse(id)),
                other => return Err(LdError::Shape(format!("bad @id {other}"))),
            },
            Json::Object(obj) => {
                // An embedded node: lift it out and refer to it.
                let id = self.node(obj)?;
                Value::Ref(id)
            }
            Json::Null => return Err(LdError::Shape("null value".into())),
        })
    }

    fn node(&mut self, obj: &Map<String, Json>) -> Result<NodeId, LdError> {
        let id = match obj.get("@id") {
            Some(Json::String(s)) => NodeId::parse(s),
            Some(other) => return Err(LdError::Shape(format!("bad @id {other}"))),
            None => {
                self.fresh += 1;
                NodeId::Blank(format!("embedded{}", self.fresh))
            }
        };
        let types = match obj.get("@type") {
            None => Vec::new(),
            Some(Json::String(t)) => vec![t.clone()],
            Some(Json::Array(ts)) => ts
                .iter()
                .map(|t| {
                    t.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| LdError::Shape(format!("bad @type entry {t}")))
                })
                .collect::<Result<_, _>>()?,
            Some(other) => return Err(LdError::Shape(format!("bad @type {other}"))),
        };
        let slot = self.nodes.len();
        self.nodes.push(Node::new(id.clone(), types));
        let mut props = Vec::new();
        for (k, v) in obj {
            if k.starts_with('@') {
                continue;
            }
            props.push((k.clone(), self.value(v)?));
        }
        self.nodes[slot].properties = props;
        Ok(id)
    }
}

/// Reads a JSON-LD document of the shape the writer produces (also
/// accepting a bare node, a bare node array, embedded nodes, `@list` and
/// expanded single-value arrays).
pub fn parse_linked_data(text: &str) -> Result<LinkedDataDoc, LdError> {
    let json: Json = serde_json::from_str(text).map_err(|e| LdError::Json(e.to_string()))?;
    let mut reader = Reader {
        context: Vec::new(),
        nodes: Vec::new(),
        fresh: 0,
    };
    let graph: Vec<Json> = match &json {
        Json::Array(items) => items.clone(),
        Json::Object(obj) => {
            match obj.get("@context") {
                None => {}
                Some(Json::Object(ctx)) => {
                    for (p, iri) in ctx {
                        let iri = iri
                            .as_str()
                            .ok_or_else(|| LdError::Shape(format!("context entry `{p}` is not an IRI")))?;
                        reader.context.push((p.clone(), iri.to_string()));
                    }
                }
                Some(other) => return Err(LdError::Shape(format!("unsupported @context {other}"))),
            }
            match obj.get("@graph") {
                Some(Json::Array(items)) => items.clone(),
                Some(other) => return Err(LdError::Shape(format!("@graph is not an array: {other}"))),
                None if obj.keys().any(|k| k != "@context") => {
                    let mut node = obj.clone();
                    node.remove("@context");
                    vec![Json::Object(node)]
                }
                None => Vec::new(),
            }
        }
        other => return Err(LdError::Shape(format!("top level is {other}"))),
    };
    for item in &graph {
        match item {
            Json::Object(obj) => {
                reader.node(obj)?;
            }
            other => return Err(LdError::Shape(format!("graph entry is not a node: {other}"))),
        }
    }
    let doc = LinkedDataDoc {
        context: reader.context,
        nodes: reader.nodes,
    };
    doc.validate()?;
    Ok(doc)
}

fn nt_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// N-Triples rendering of the same graph. Lists become RDF collections.
pub fn to_ntriples(doc: &LinkedDataDoc) -> Result<String, LdError> {
    let doc = doc.canonicalize();
    let iri = |name: &str| {
        doc.expand(name)
            .map(|i| format!("<{i}>"))
            .ok_or_else(|| LdError::UnexpandableName(name.to_string()))
    };
    let subject = |id: &NodeId| match id {
        NodeId::Blank(b) => Ok(format!("_:{b}")),
        NodeId::Iri(i) => iri(i),
    };
    let mut out = String::new();
    let mut lists = 0usize;
    fn object(
        v: &Value,
        out: &mut String,
        lists: &mut usize,
        subject: &dyn Fn(&NodeId) -> Result<String, LdError>,
    ) -> Result<String, LdError> {
        let typed = |lex: &str, ty: &str| format!("\"{}\"^^<{ty}>", nt_escape(lex));
        Ok(match v {
            Value::String(s) => format!("\"{}\"", nt_escape(s)),
            Value::Integer(i) => typed(&i.to_string(), vocab::XSD_INTEGER),
            Value::Decimal(d) => typed(d, vocab::XSD_DECIMAL),
            Value::Boolean(b) => typed(&b.to_string(), vocab::XSD_BOOLEAN),
            Value::AnyUri(u) => typed(u, vocab::XSD_ANY_URI),
            Value::Ref(id) => subject(id)?,
            Value::List(items) => {
                let nil = format!("<{}nil>", vocab::RDF);
                let heads: Vec<String> = items
                    .iter()
                    .map(|_| {
                        *lists += 1;
                        format!("_:l{}", *lists - 1)
                    })
                    .collect();
                for (i, item) in items.iter().enumerate() {
                    let o = object(item, out, lists, subject)?;
                    let rest = heads.get(i + 1).cloned().unwrap_or_else(|| nil.clone());
                    let _ = writeln!(out, "{} <{}first> {o} .", heads[i], vocab::RDF);
                    let _ = writeln!(out, "{} <{}rest> {rest} .", heads[i], vocab::RDF);
                }
                heads.into_iter().next().unwrap_or(nil)
            }
        })
    }
    for n in &doc.nodes {
        let s = subject(&n.id)?;
        for t in &n.types {
            let _ = writeln!(out, "{s} <{}type> {} .", vocab::RDF, iri(t)?);
        }
        for (k, v) in &n.properties {
            let p = iri(k)?;
            let mut side = String::new();
            let o = object(v, &mut side, &mut lists, &subject)?;
            let _ = writeln!(out, "{s} {p} {o} .");
            out.push_str(&side);
        }
    }
    Ok(out)
}
