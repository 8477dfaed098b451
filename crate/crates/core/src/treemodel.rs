//! Decision-tree models: the native JSON format, evaluation, and the
//! linked-data annotation with its inverse.

use std::collections::{BTreeMap, BTreeSet};

use percent_encoding::{percent_decode_str, utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotate::vocab::HPC;
use crate::annotate::{LinkedDataDoc, Node, NodeId, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Internal {
        feature: String,
        threshold: f64,
        true_child: String,
        false_child: String,
    },
    Leaf {
        label: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub id: String,
    pub level: u32,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    pub name: String,
    pub derived_from: Option<String>,
    pub root: String,
    pub nodes: BTreeMap<String, TreeNode>,
}

pub type FeatureVector = BTreeMap<String, f64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree file is malformed: {0}")]
    Malformed(String),
    #[error("tree has no nodes")]
    EmptyTree,
    #[error("node `{0}` is defined twice")]
    DuplicateNode(String),
    #[error("node `{0}` must be either a leaf (label only) or internal (feature, threshold, both children)")]
    MixedNodeKind(String),
    #[error("node `{node}` lacks {field}")]
    MissingField { node: String, field: &'static str },
    #[error("node `{node}` refers to missing child {child:?}")]
    DanglingChild { node: String, child: Option<String> },
    #[error("cycle through node `{0}`")]
    CycleDetected(String),
    #[error("node `{0}` is not reachable from the root")]
    UnreachableNode(String),
    #[error("node `{0}` has more than one parent")]
    SharedChild(String),
    #[error("node `{node}` has level {found}, expected {expected}")]
    LevelMismatch { node: String, expected: u32, found: u32 },
    #[error("node `{0}` has a non-finite threshold")]
    NonFiniteThreshold(String),
    #[error("unexpected term `{0}` in annotated tree")]
    UnknownTerm(String),
    #[error("unsupported relation operator `{0}`")]
    UnknownOperator(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("feature `{feature}` needed at node `{node}` is missing")]
pub struct MissingFeature {
    pub feature: String,
    pub node: String,
}

/// One entry of the native file's `nodes` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feature: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, rename = "true", skip_serializing_if = "Option::is_none")]
    pub true_child: Option<String>,
    #[serde(default, rename = "false", skip_serializing_if = "Option::is_none")]
    pub false_child: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_from: Option<String>,
    pub root: String,
    pub nodes: Vec<NodeRecord>,
}

impl DecisionTree {
    /// Builds and validates a tree from node records. Records without a
    /// level get one from their depth; given levels must match it.
    pub fn from_records(
        name: String,
        derived_from: Option<String>,
        root: String,
        records: Vec<NodeRecord>,
    ) -> Result<DecisionTree, TreeError> {
        if records.is_empty() {
            return Err(TreeError::EmptyTree);
        }
        let mut by_id: BTreeMap<String, (Option<u32>, NodeKind)> = BTreeMap::new();
        for r in records {
            let kind = record_kind(&r)?;
            if by_id.contains_key(&r.id) {
                return Err(TreeError::DuplicateNode(r.id));
            }
            by_id.insert(r.id, (r.level, kind));
        }
        if !by_id.contains_key(&root) {
            return Err(TreeError::DanglingChild {
                node: "(root)".into(),
                child: Some(root),
            });
        }
        // Depth-first walk: a child on the current path is a cycle, any other
        // second visit is a shared child.
        let mut levels: BTreeMap<String, u32> = BTreeMap::new();
        let mut on_path: BTreeSet<String> = BTreeSet::new();
        let mut seen: BTreeSet<String> = BTreeSet::from([root.clone()]);
        let mut stack: Vec<(String, u32, bool)> = vec![(root.clone(), 0, false)];
        while let Some((id, depth, done)) = stack.pop() {
            if done {
                on_path.remove(&id);
                continue;
            }
            levels.insert(id.clone(), depth);
            on_path.insert(id.clone());
            stack.push((id.clone(), depth, true));
            if let NodeKind::Internal {
                true_child,
                false_child,
                ..
            } = &by_id[&id].1
            {
                for child in [false_child, true_child] {
                    if !by_id.contains_key(child) {
                        return Err(TreeError::DanglingChild {
                            node: id.clone(),
                            child: Some(child.clone()),
                        });
                    }
                    if on_path.contains(child) {
                        return Err(TreeError::CycleDetected(child.clone()));
                    }
                    if !seen.insert(child.clone()) {
                        return Err(TreeError::SharedChild(child.clone()));
                    }
                    stack.push((child.clone(), depth + 1, false));
                }
            }
        }
        if let Some(id) = by_id.keys().find(|id| !levels.contains_key(*id)) {
            return Err(TreeError::UnreachableNode(id.clone()));
        }
        let mut nodes = BTreeMap::new();
        for (id, (given, kind)) in by_id {
            let expected = levels[&id];
            if let Some(found) = given.filter(|l| *l != expected) {
                return Err(TreeError::LevelMismatch {
                    node: id,
                    expected,
                    found,
                });
            }
            nodes.insert(
                id.clone(),
                TreeNode {
                    id,
                    level: expected,
                    kind,
                },
            );
        }
        Ok(DecisionTree {
            name,
            derived_from,
            root,
            nodes,
        })
    }

    pub fn to_file(&self) -> TreeFile {
        TreeFile {
            name: self.name.clone(),
            derived_from: self.derived_from.clone(),
            root: self.root.clone(),
            nodes: self
                .preorder()
                .into_iter()
                .map(|n| {
                    let mut r = NodeRecord {
                        id: n.id.clone(),
                        level: Some(n.level),
                        feature: None,
                        threshold: None,
                        true_child: None,
                        false_child: None,
                        label: None,
                    };
                    match &n.kind {
                        NodeKind::Leaf { label } => r.label = Some(label.clone()),
                        NodeKind::Internal {
                            feature,
                            threshold,
                            true_child,
                            false_child,
                        } => {
                            r.feature = Some(feature.clone());
                            r.threshold = Some(*threshold);
                            r.true_child = Some(true_child.clone());
                            r.false_child = Some(false_child.clone());
                        }
                    }
                    r
                })
                .collect(),
        }
    }

    /// Nodes from the root, true branch before false branch.
    pub fn preorder(&self) -> Vec<&TreeNode> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![&self.root];
        while let Some(id) = stack.pop() {
            let n = &self.nodes[id];
            out.push(n);
            if let NodeKind::Internal {
                true_child,
                false_child,
                ..
            } = &n.kind
            {
                stack.push(false_child);
                stack.push(true_child);
            }
        }
        out
    }

    pub fn depth(&self) -> u32 {
        self.nodes.values().map(|n| n.level).max().unwrap_or(0)
    }

    /// The nodes visited for `features`, root first, ending at a leaf.
    pub fn path(&self, features: &FeatureVector) -> Result<Vec<&TreeNode>, MissingFeature> {
        let mut out = Vec::new();
        let mut node = &self.nodes[&self.root];
        loop {
            out.push(node);
            match &node.kind {
                NodeKind::Leaf { .. } => return Ok(out),
                NodeKind::Internal {
                    feature,
                    threshold,
                    true_child,
                    false_child,
                } => {
                    let value = features.get(feature).ok_or_else(|| MissingFeature {
                        feature: feature.clone(),
                        node: node.id.clone(),
                    })?;
                    let next = if *value <= *threshold {
                        true_child
                    } else {
                        false_child
                    };
                    node = &self.nodes[next];
                }
            }
        }
    }

    /// Descends from the root, taking the true (left) child when the
    /// feature value is less than or equal to the threshold.
    pub fn evaluate(&self, features: &FeatureVector) -> Result<&str, MissingFeature> {
        let path = self.path(features)?;
        match &path.last().expect("path ends at a leaf").kind {
            NodeKind::Leaf { label } => Ok(label),
            NodeKind::Internal { .. } => unreachable!("path ends at a leaf"),
        }
    }
}

fn record_kind(r: &NodeRecord) -> Result<NodeKind, TreeError> {
    let internal_parts = r.feature.is_some()
        || r.threshold.is_some()
        || r.true_child.is_some()
        || r.false_child.is_some();
    match (&r.label, internal_parts) {
        (Some(label), false) => Ok(NodeKind::Leaf {
            label: label.clone(),
        }),
        (Some(_), true) => Err(TreeError::MixedNodeKind(r.id.clone())),
        (None, false) => Err(TreeError::MixedNodeKind(r.id.clone())),
        (None, true) => {
            let missing = |field| TreeError::MissingField {
                node: r.id.clone(),
                field,
            };
            let dangling = || TreeError::DanglingChild {
                node: r.id.clone(),
                child: None,
            };
            let threshold = r.threshold.ok_or_else(|| missing("threshold"))?;
            if !threshold.is_finite() {
                return Err(TreeError::NonFiniteThreshold(r.id.clone()));
            }
            Ok(NodeKind::Internal {
                feature: r.feature.clone().ok_or_else(|| missing("feature"))?,
                threshold,
                true_child: r.true_child.clone().ok_or_else(dangling)?,
                false_child: r.false_child.clone().ok_or_else(dangling)?,
            })
        }
    }
}

pub fn parse_tree(text: &str) -> Result<DecisionTree, TreeError> {
    let file: TreeFile = serde_json::from_str(text).map_err(|e| TreeError::Malformed(e.to_string()))?;
    DecisionTree::from_records(file.name, file.derived_from, file.root, file.nodes)
}

pub fn write_tree(tree: &DecisionTree) -> String {
    let mut out = serde_json::to_string_pretty(&tree.to_file()).expect("tree serializes");
    out.push('\n');
    out
}

/// Parses `k=v,k2=v2` into a feature vector.
pub fn parse_features(text: &str) -> Result<FeatureVector, String> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| format!("`{pair}` is not key=value"))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| format!("`{v}` is not a number"))?;
            if !v.is_finite() {
                return Err(format!("`{pair}` is not finite"));
            }
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

const PATH_SEGMENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'_').remove(b'.');

fn term(local: &str) -> String {
    format!("hpc:{local}")
}

/// IRI of the tree resource when the caller does not supply one.
pub fn default_tree_iri(tree: &DecisionTree) -> String {
    format!(
        "http://example.org/decisiontree/{}",
        utf8_percent_encode(&tree.name, PATH_SEGMENT)
    )
}

fn node_iri(tree_iri: &str, id: &str) -> String {
    format!("{tree_iri}/node/{}", utf8_percent_encode(id, PATH_SEGMENT))
}

/// Threshold as an xsd:decimal lexical form. `Display` for f64 prints the
/// shortest digits that read back to the same value and never uses an
/// exponent.
fn decimal_lexical(x: f64) -> String {
    let s = x.to_string();
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

/// One hpc:DecisionTree node listing its tree nodes, followed by one
/// hpc:DecisionTreeNode per tree node in preorder.
pub fn annotate_tree(tree: &DecisionTree, tree_iri: Option<&str>) -> LinkedDataDoc {
    let tree_iri = tree_iri.map_or_else(|| default_tree_iri(tree), str::to_string);
    let mut doc = LinkedDataDoc::with_builtin_context();
    let order = tree.preorder();
    let mut head = Node::new(NodeId::Iri(tree_iri.clone()), vec![term("DecisionTree")]);
    head.push(term("name"), Value::String(tree.name.clone()));
    if let Some(d) = &tree.derived_from {
        head.push(term("wasDerivedFrom"), Value::String(d.clone()));
    }
    head.push(
        term("decisionTreeNode"),
        Value::List(
            order
                .iter()
                .map(|n| Value::Ref(NodeId::Iri(node_iri(&tree_iri, &n.id))))
                .collect(),
        ),
    );
    doc.nodes.push(head);
    for n in order {
        let mut out = Node::new(
            NodeId::Iri(node_iri(&tree_iri, &n.id)),
            vec![term("DecisionTreeNode")],
        );
        out.push(term("treeNodeLevel"), Value::Integer(n.level as i64));
        match &n.kind {
            NodeKind::Internal {
                feature,
                threshold,
                true_child,
                false_child,
            } => {
                out.push(term("decisionFeature"), Value::String(feature.clone()));
                out.push(term("relationOp"), Value::String("<=".into()));
                out.push(term("relationValue"), Value::Decimal(decimal_lexical(*threshold)));
                out.push(term("trueNode"), Value::Ref(NodeId::Iri(node_iri(&tree_iri, true_child))));
                out.push(term("falseNode"), Value::Ref(NodeId::Iri(node_iri(&tree_iri, false_child))));
                out.push(term("hasChildNode"), Value::Boolean(true));
            }
            NodeKind::Leaf { label } => {
                out.push(term("decisionLabel"), Value::String(label.clone()));
                out.push(term("hasChildNode"), Value::Boolean(false));
            }
        }
        doc.nodes.push(out);
    }
    doc
}

fn node_id_from_iri(iri: &str) -> String {
    match iri.rsplit_once("/node/") {
        Some((_, tail)) => percent_decode_str(tail).decode_utf8_lossy().into_owned(),
        None => iri.to_string(),
    }
}

fn id_of(v: &Value, node: &str, field: &'static str) -> Result<String, TreeError> {
    match v.single() {
        Value::Ref(NodeId::Iri(i)) | Value::AnyUri(i) | Value::String(i) => Ok(node_id_from_iri(i)),
        Value::Ref(NodeId::Blank(b)) => Ok(format!("_:{b}")),
        _ => Err(TreeError::MissingField {
            node: node.to_string(),
            field,
        }),
    }
}

fn text_of(v: &Value) -> Option<String> {
    match v.single() {
        Value::String(s) | Value::AnyUri(s) | Value::Decimal(s) => Some(s.clone()),
        Value::Integer(i) => Some(i.to_string()),
        _ => None,
    }
}

/// Rebuilds a tree from its annotation. Relation operators other than `<=`
/// are rewritten into the `<=` convention: `<` uses the next smaller
/// threshold, `>` and `>=` swap the children.
pub fn parse_annotated(doc: &LinkedDataDoc) -> Result<DecisionTree, TreeError> {
    let expand = |k: &str| doc.expand(k).unwrap_or_else(|| k.to_string());
    let is_type = |n: &Node, local: &str| {
        n.types
            .iter()
            .any(|t| expand(t) == format!("{HPC}{local}"))
    };
    let local = |k: &str| -> Option<String> {
        expand(k).strip_prefix(HPC).map(str::to_string)
    };

    let mut name = String::new();
    let mut derived_from = None;
    if let Some(head) = doc.nodes.iter().find(|n| is_type(n, "DecisionTree")) {
        for (k, v) in &head.properties {
            match local(k).as_deref() {
                Some("name") => name = text_of(v).unwrap_or_default(),
                Some("wasDerivedFrom") => derived_from = text_of(v),
                Some("decisionTreeNode") => {}
                _ => return Err(TreeError::UnknownTerm(k.clone())),
            }
        }
    }

    let mut records = Vec::new();
    let mut referenced = BTreeSet::new();
    for n in doc.nodes.iter().filter(|n| is_type(n, "DecisionTreeNode")) {
        let id = match &n.id {
            NodeId::Iri(i) => node_id_from_iri(i),
            NodeId::Blank(b) => format!("_:{b}"),
        };
        let mut r = NodeRecord {
            id: id.clone(),
            level: None,
            feature: None,
            threshold: None,
            true_child: None,
            false_child: None,
            label: None,
        };
        let mut op = None;
        let mut has_children = None;
        for (k, v) in &n.properties {
            let bad = |field| TreeError::MissingField {
                node: id.clone(),
                field,
            };
            match local(k).as_deref() {
                Some("treeNodeLevel") => match v.single() {
                    Value::Integer(l) if *l >= 0 => r.level = Some(*l as u32),
                    _ => return Err(bad("an integer treeNodeLevel")),
                },
                Some("decisionFeature") => r.feature = text_of(v),
                Some("relationOp") => op = text_of(v),
                Some("relationValue") => {
                    let t = text_of(v)
                        .and_then(|s| s.trim().parse::<f64>().ok())
                        .ok_or_else(|| bad("a numeric relationValue"))?;
                    r.threshold = Some(t);
                }
                Some("trueNode") => r.true_child = Some(id_of(v, &id, "trueNode")?),
                Some("falseNode") => r.false_child = Some(id_of(v, &id, "falseNode")?),
                Some("decisionLabel") => r.label = text_of(v),
                Some("hasChildNode") => match v.single() {
                    Value::Boolean(b) => has_children = Some(*b),
                    _ => return Err(bad("a boolean hasChildNode")),
                },
                _ => return Err(TreeError::UnknownTerm(k.clone())),
            }
        }
        let internal = r.true_child.is_some() || r.false_child.is_some();
        if has_children.is_some_and(|h| h != internal) {
            return Err(TreeError::MixedNodeKind(id));
        }
        if internal || r.feature.is_some() {
            match op.as_deref().map(str::trim).unwrap_or("<=") {
                "<=" => {}
                "<" => r.threshold = r.threshold.map(f64::next_down),
                ">" => std::mem::swap(&mut r.true_child, &mut r.false_child),
                ">=" => {
                    std::mem::swap(&mut r.true_child, &mut r.false_child);
                    r.threshold = r.threshold.map(f64::next_down);
                }
                other => return Err(TreeError::UnknownOperator(other.to_string())),
            }
        }
        referenced.extend(r.true_child.clone());
        referenced.extend(r.false_child.clone());
        records.push(r);
    }
    if records.is_empty() {
        return Err(TreeError::EmptyTree);
    }
    let roots: Vec<&NodeRecord> = records
        .iter()
        .filter(|r| !referenced.contains(&r.id))
        .collect();
    let root = match roots.as_slice() {
        [] => return Err(TreeError::CycleDetected(records[0].id.clone())),
        [one] => one.id.clone(),
        [_, second, ..] => return Err(TreeError::UnreachableNode(second.id.clone())),
    };
    DecisionTree::from_records(name, derived_from, root, records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::{parse_linked_data, serialize_linked_data};

    const SMALL: &str = r#"{
        "name": "xplacer-demo",
        "derived_from": "https://doi.org/10.5281/zenodo.1234567",
        "root": "n0",
        "nodes": [
            {"id": "n0", "level": 0, "feature": "Block Size", "threshold": 0.5, "true": "n1", "false": "n2"},
            {"id": "n1", "level": 1, "label": "111100"},
            {"id": "n2", "level": 1, "label": "000000"}
        ]
    }"#;

    fn features(pairs: &[(&str, f64)]) -> FeatureVector {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn single_leaf() {
        let t = parse_tree(r#"{"name": "t", "root": "a", "nodes": [{"id": "a", "label": "0"}]}"#).unwrap();
        assert_eq!(t.depth(), 0);
        assert_eq!(t.evaluate(&FeatureVector::new()), Ok("0"));
    }

    #[test]
    fn boundary_goes_left() {
        let t = parse_tree(SMALL).unwrap();
        assert_eq!(t.evaluate(&features(&[("Block Size", 0.5)])), Ok("111100"));
        assert_eq!(t.evaluate(&features(&[("Block Size", 0.500001)])), Ok("000000"));
        assert_eq!(
            t.evaluate(&FeatureVector::new()),
            Err(MissingFeature {
                feature: "Block Size".into(),
                node: "n0".into()
            })
        );
    }

    #[test]
    fn structural_errors() {
        let cycle = r#"{"name": "t", "root": "a", "nodes": [
            {"id": "a", "feature": "x", "threshold": 1, "true": "a", "false": "b"},
            {"id": "b", "label": "0"}]}"#;
        assert_eq!(parse_tree(cycle), Err(TreeError::CycleDetected("a".into())));
        let dangling = r#"{"name": "t", "root": "a", "nodes": [
            {"id": "a", "feature": "x", "threshold": 1, "true": "b"},
            {"id": "b", "label": "0"}]}"#;
        assert_eq!(
            parse_tree(dangling),
            Err(TreeError::DanglingChild { node: "a".into(), child: None })
        );
        let mixed = r#"{"name": "t", "root": "a", "nodes": [
            {"id": "a", "label": "1", "feature": "x", "threshold": 1, "true": "b", "false": "b"}]}"#;
        assert_eq!(parse_tree(mixed), Err(TreeError::MixedNodeKind("a".into())));
        let orphan = r#"{"name": "t", "root": "a", "nodes": [
            {"id": "a", "label": "1"}, {"id": "z", "label": "2"}]}"#;
        assert_eq!(parse_tree(orphan), Err(TreeError::UnreachableNode("z".into())));
        let level = r#"{"name": "t", "root": "a", "nodes": [
            {"id": "a", "feature": "x", "threshold": 1, "true": "b", "false": "c"},
            {"id": "b", "label": "0", "level": 2}, {"id": "c", "label": "1"}]}"#;
        assert!(matches!(parse_tree(level), Err(TreeError::LevelMismatch { .. })));
        let shared = r#"{"name": "t", "root": "a", "nodes": [
            {"id": "a", "feature": "x", "threshold": 1, "true": "b", "false": "b"},
            {"id": "b", "label": "0"}]}"#;
        assert_eq!(parse_tree(shared), Err(TreeError::SharedChild("b".into())));
    }

    #[test]
    fn annotation_shape() {
        let t = parse_tree(SMALL).unwrap();
        let doc = annotate_tree(&t, None);
        assert_eq!(doc.nodes.len(), 4);
        let leaf = doc
            .nodes
            .iter()
            .find(|n| n.get("hpc:decisionLabel").is_some())
            .unwrap();
        assert!(leaf.get("hpc:trueNode").is_none());
        assert!(leaf.get("hpc:falseNode").is_none());
        assert_eq!(leaf.get("hpc:hasChildNode"), Some(&Value::Boolean(false)));
        let root = &doc.nodes[1];
        assert_eq!(root.get("hpc:relationValue"), Some(&Value::Decimal("0.5".into())));
        assert_eq!(root.get("hpc:relationOp"), Some(&Value::String("<=".into())));
    }

    #[test]
    fn round_trip_through_text() {
        let t = parse_tree(SMALL).unwrap();
        let text = serialize_linked_data(&annotate_tree(&t, None));
        let back = parse_annotated(&parse_linked_data(&text).unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(parse_tree(&write_tree(&t)).unwrap(), t);
    }

    #[test]
    fn relation_operators_normalize() {
        let t = parse_tree(SMALL).unwrap();
        for (op, lo, at, hi) in [
            ("<=", "111100", "111100", "000000"),
            ("<", "111100", "000000", "000000"),
            (">", "000000", "000000", "111100"),
            (">=", "000000", "111100", "111100"),
        ] {
            let mut doc = annotate_tree(&t, None);
            for (k, v) in doc.nodes[1].properties.iter_mut() {
                if k == "hpc:relationOp" {
                    *v = Value::String(op.into());
                }
            }
            let back = parse_annotated(&doc).unwrap();
            let eval = |x: f64| back.evaluate(&features(&[("Block Size", x)])).unwrap().to_string();
            // Under `op`, the true child "111100" is taken when `x op 0.5`.
            assert_eq!(eval(0.25), lo, "{op}");
            assert_eq!(eval(0.5), at, "{op}");
            assert_eq!(eval(0.75), hi, "{op}");
        }
    }

    #[test]
    fn annotated_errors() {
        let t = parse_tree(SMALL).unwrap();
        let mut doc = annotate_tree(&t, None);
        let leaf = doc.nodes.iter_mut().find(|n| n.get("hpc:decisionLabel").is_some()).unwrap();
        leaf.properties.retain(|(k, _)| k != "hpc:decisionLabel" && k != "hpc:hasChildNode");
        assert!(matches!(parse_annotated(&doc), Err(TreeError::MixedNodeKind(_))));

        let mut doc = annotate_tree(&t, None);
        doc.nodes[2].push("hpc:colour", Value::String("red".into()));
        assert_eq!(parse_annotated(&doc), Err(TreeError::UnknownTerm("hpc:colour".into())));

        assert_eq!(
            parse_annotated(&LinkedDataDoc::with_builtin_context()),
            Err(TreeError::EmptyTree)
        );
    }

    #[test]
    fn feature_parsing() {
        let f = parse_features("Block Size=0.5, x=-2").unwrap();
        assert_eq!(f["Block Size"], 0.5);
        assert_eq!(f["x"], -2.0);
        assert!(parse_features("x").is_err());
        assert!(parse_features("x=abc").is_err());
    }
}
