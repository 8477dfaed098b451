//! Input generators shared by the benchmarks.

use fairgauge_core::annotate::{CellType, ColumnBinding, MappingSpec};
use fairgauge_core::treemodel::{DecisionTree, FeatureVector, NodeRecord};

/// A `rows` x `cols` CSV alternating integer, decimal and string columns,
/// with a mapping that binds every column.
pub fn wide_csv(rows: usize, cols: usize) -> (String, MappingSpec) {
    let kinds = [CellType::Integer, CellType::Decimal, CellType::String, CellType::Quantity];
    let mut text = (0..cols).map(|c| format!("c{c}")).collect::<Vec<_>>().join(",");
    text.push('\n');
    for r in 0..rows {
        let cells: Vec<String> = (0..cols)
            .map(|c| match kinds[c % kinds.len()] {
                CellType::Integer => (r * 31 + c).to_string(),
                CellType::String => format!("k{r}_{c}"),
                _ => format!("{}.{}", r + c, c % 10),
            })
            .collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    let spec = MappingSpec {
        base_iri: "http://example.org/bench.csv".into(),
        row_type: "hpc:TableRow".into(),
        id_template: "#L{row}".into(),
        prefixes: vec![],
        bindings: (0..cols)
            .map(|c| {
                let datatype = kinds[c % kinds.len()];
                ColumnBinding {
                    column: format!("c{c}"),
                    property: format!("hpc:p{c}"),
                    datatype,
                    unit: (datatype == CellType::Quantity).then(|| "unit:KiloBYTE".into()),
                }
            })
            .collect(),
    };
    (text, spec)
}

/// A complete binary tree of the given depth splitting on `f<level>` at 0.5.
pub fn complete_tree(depth: u32) -> DecisionTree {
    fn grow(level: u32, depth: u32, out: &mut Vec<NodeRecord>) -> String {
        let id = format!("n{}", out.len());
        let idx = out.len();
        out.push(NodeRecord {
            id: id.clone(),
            level: Some(level),
            feature: None,
            threshold: None,
            true_child: None,
            false_child: None,
            label: None,
        });
        if level == depth {
            out[idx].label = Some(format!("leaf{idx}"));
        } else {
            out[idx].feature = Some(format!("f{level}"));
            out[idx].threshold = Some(0.5);
            let t = grow(level + 1, depth, out);
            let f = grow(level + 1, depth, out);
            out[idx].true_child = Some(t);
            out[idx].false_child = Some(f);
        }
        id
    }
    let mut records = Vec::new();
    let root = grow(0, depth, &mut records);
    DecisionTree::from_records("bench".into(), None, root, records).expect("generated tree is valid")
}

pub fn alternating_features(depth: u32) -> FeatureVector {
    (0..depth).map(|l| (format!("f{l}"), f64::from(l % 2))).collect()
}
