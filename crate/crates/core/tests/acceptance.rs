//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fairgauge_core::annotate::{
    annotate_csv, parse_linked_data, parse_mapping, serialize_linked_data, vocab, CellType, ColumnBinding,
    MappingSpec, NodeId, Value,
};
use fairgauge_core::assess::{run_auto, run_hybrid, AutoRun, HybridOptions};
use fairgauge_core::autoeval::{AutoReport, EvalConfig, MetricResult, MetricStatus, METRIC_IDS};
use fairgauge_core::harvest::{LoadMode, NoNetwork};
use fairgauge_core::hybrid::{compute_score, merge, parse_overrides, Percent};
use fairgauge_core::manual::{parse_answers, Answer, AnswerSet, MaturityLevel};
use fairgauge_core::report::{build_report, render_svg, render_text, ReportInput};
use fairgauge_core::treemodel::{annotate_tree, parse_annotated, DecisionTree, FeatureVector, NodeKind, NodeRecord};
use fairgauge_core::{builtin_registry, Letter, Mode, Registry};

const STAMP: &str = "2021-07-30T00:00:00Z";

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn auto_run(name: &str) -> AutoRun {
    let dir = fixtures().join(name);
    run_auto(
        dir.to_str().unwrap(),
        LoadMode::Fixture,
        &NoNetwork,
        &EvalConfig::default(),
        STAMP,
    )
    .unwrap()
}

fn status(auto: &AutoRun, id: &str) -> MetricStatus {
    auto.report.status(id).unwrap()
}

// 1. Registry shape against an independent transcription of the pair list.
fn registry_invariants() -> Check {
    let reg = builtin_registry();
    ensure(reg.len() == 47, format!("{} indicators", reg.len()))?;
    let maxima = reg.letter_maxima();
    ensure(
        maxima == [(Letter::F, 8), (Letter::A, 13), (Letter::I, 14), (Letter::R, 12)],
        format!("letter maxima {maxima:?}"),
    )?;
    let expected: BTreeSet<(&str, &str)> = [
        ("RDA-F1-01D", "FsF-F1-02D"),
        ("RDA-F1-02D", "FsF-F1-01D"),
        ("RDA-F3-01M", "FsF-F3-01M"),
        ("RDA-F4-01M", "FsF-F4-01M"),
        ("RDA-A1-04M", "FsF-A1-02M"),
        ("RDA-A1-04D", "FsF-A1-03D"),
        ("RDA-A2-01M", "FsF-A2-01M"),
        ("RDA-I3-01M", "FsF-I3-01M"),
        ("RDA-R1.1-03M", "FsF-R1.1-01M"),
        ("RDA-R1.3-01M", "FsF-R1.3-01M"),
        ("RDA-R1.3-02D", "FsF-R1.3-02D"),
    ]
    .into_iter()
    .collect();
    let duals: BTreeSet<(&str, &str)> = reg
        .indicators()
        .iter()
        .filter(|i| i.mode == Mode::Dual)
        .map(|i| (i.id, i.dual_partner.unwrap()))
        .collect();
    ensure(duals == expected, format!("dual pairs {duals:?}"))?;
    let automated = reg.automated_ids();
    ensure(automated.len() == 17, format!("{} automated ids", automated.len()))?;
    let manual = reg.manual_only().count();
    ensure(manual == 30, format!("{manual} manual-only"))?;
    Ok("47 indicators, F8/A13/I14/R12, 11 dual pairs, 17 automated, 30 manual".into())
}

fn all_pass_outcomes(reg: &Registry) -> Vec<fairgauge_core::hybrid::HybridOutcome> {
    let answers = uniform_answers(reg, MaturityLevel::FullyImplemented);
    merge(&answers, &uniform_auto(MetricStatus::Pass), reg, &[]).unwrap()
}

fn uniform_answers(reg: &Registry, level: MaturityLevel) -> AnswerSet {
    AnswerSet {
        subject: String::new(),
        answers: reg
            .manual_only()
            .map(|i| (i.id.to_string(), Answer { level, note: None }))
            .collect(),
    }
}

fn uniform_auto(status: MetricStatus) -> AutoReport {
    AutoReport {
        target_identifier: "t".into(),
        harvested_at: String::new(),
        results: METRIC_IDS
            .iter()
            .map(|id| {
                (
                    id.to_string(),
                    MetricResult {
                        metric_id: id.to_string(),
                        status,
                        evidence: vec![],
                        checked_keys: vec![],
                    },
                )
            })
            .collect(),
    }
}

// 2. n/47 -> percent at one decimal.
fn scoring_arithmetic() -> Check {
    let reg = builtin_registry();
    let mut seen = Vec::new();
    for (n, want) in [(9u32, "19.1"), (39, "83.0"), (0, "0.0"), (47, "100.0")] {
        let mut outcomes = all_pass_outcomes(&reg);
        for o in outcomes.iter_mut().skip(n as usize) {
            o.point = 0;
        }
        let score = compute_score(&outcomes, &reg, false).map_err(|e| e.to_string())?;
        let got = score.percent.to_string();
        ensure(
            score.total_earned == n && score.total_max == 47 && got == want,
            format!("{n}/47 gave {got}, want {want}"),
        )?;
        ensure(Percent::of(n, 47).to_string() == want, format!("Percent::of({n}, 47)"))?;
        seen.push(format!("{n}/47={got}%"));
    }
    Ok(seen.join(", "))
}

// 3. Initial release: URL identifier, plain page, CSV files.
fn pre_fixture() -> Check {
    let reg = builtin_registry();
    let auto = auto_run("xplacer-pre");
    for (id, want) in [
        ("FsF-F1-01D", MetricStatus::Pass),
        ("FsF-F1-02D", MetricStatus::Fail),
        ("FsF-R1.1-01M", MetricStatus::Fail),
        ("FsF-I1-01M", MetricStatus::Fail),
    ] {
        ensure(status(&auto, id) == want, format!("{id} is {}", status(&auto, id)))?;
    }
    ensure(
        status(&auto, "FsF-F2-01M") != MetricStatus::Pass,
        "FsF-F2-01M passed",
    )?;
    let answers = parse_answers(&read(&fixtures().join("xplacer-pre/answers.txt")), &reg)
        .map_err(|e| e.to_string())?;
    let run = run_hybrid(&auto, &answers, &[], &reg, &EvalConfig::default(), &HybridOptions::default())
        .map_err(|e| e.to_string())?;
    let score = &run.report.score;
    ensure(score.percent.tenths() <= 250, format!("score {}%", score.percent))?;
    let text = render_text(&run.report).map_err(|e| e.to_string())?;
    ensure(
        text.lines().any(|l| l.contains("FsF-F1-02D") && l.contains("fail")),
        "FsF-F1-02D not among failures",
    )?;
    Ok(format!(
        "F1-01D pass, F1-02D/R1.1-01M/I1-01M fail, F2-01M {}; hybrid {}/{} = {}% <= 25.0%",
        status(&auto, "FsF-F2-01M"),
        score.total_earned,
        score.total_max,
        score.percent
    ))
}

// 4. After FAIRification: DOI, hosted record, license, sidecar, manifest.
fn post_fixture() -> Check {
    let reg = builtin_registry();
    let dir = fixtures().join("xplacer-post");
    let auto = auto_run("xplacer-post");
    ensure(
        status(&auto, "FsF-I1-02M") == MetricStatus::Fail,
        format!("FsF-I1-02M is {}", status(&auto, "FsF-I1-02M")),
    )?;
    ensure(
        status(&auto, "FsF-R1.2-01M") == MetricStatus::Partial,
        format!("FsF-R1.2-01M is {}", status(&auto, "FsF-R1.2-01M")),
    )?;
    let answers = parse_answers(&read(&dir.join("answers.txt")), &reg).map_err(|e| e.to_string())?;
    let overrides = parse_overrides(&read(&dir.join("overrides.txt"))).map_err(|e| e.to_string())?;
    let config = EvalConfig::default();
    let plain = run_hybrid(&auto, &answers, &[], &reg, &config, &HybridOptions::default())
        .map_err(|e| e.to_string())?;
    let run = run_hybrid(&auto, &answers, &overrides, &reg, &config, &HybridOptions::default())
        .map_err(|e| e.to_string())?;
    let point = |r: &fairgauge_core::report::ReportDocument| {
        r.rows
            .iter()
            .find(|row| row.ids.iter().any(|i| i == "FsF-R1.2-01M"))
            .map(|row| row.point)
    };
    ensure(point(&plain.report) == Some(0), "R1.2-01M earned without override")?;
    ensure(point(&run.report) == Some(1), "R1.2-01M not earned with override")?;
    let score = &run.report.score;
    for (l, want) in [(Letter::F, 8), (Letter::A, 13)] {
        let s = score.letter(l).unwrap();
        ensure(s.earned == want && s.max == want, format!("{l} {}/{}", s.earned, s.max))?;
    }
    let t = score.percent.tenths();
    ensure((800..=850).contains(&t), format!("score {}%", score.percent))?;
    Ok(format!(
        "F 8/8, A 13/13, I1-02M fail, R1.2-01M partial -> overridden; hybrid {}/{} = {}% in [80.0, 85.0]",
        score.total_earned, score.total_max, score.percent
    ))
}

// 5. Golden row, compared structurally after blank-node renaming.
fn golden_row() -> Check {
    let dir = fixtures().join("golden-row");
    let spec = parse_mapping(&read(&dir.join("mapping.json"))).map_err(|e| e.to_string())?;
    let csv = read(&dir.join("test.csv"));
    let doc = annotate_csv(csv.as_bytes(), &spec).map_err(|e| e.to_string())?;
    let golden = parse_linked_data(&read(&dir.join("expected.jsonld"))).map_err(|e| e.to_string())?;
    let ours = parse_linked_data(&serialize_linked_data(&doc)).map_err(|e| e.to_string())?;
    let (a, b) = (ours.canonicalize(), golden.canonicalize());
    ensure(a.nodes.len() == 2 && b.nodes.len() == 2, "node count")?;
    for (x, y) in a.nodes.iter().zip(&b.nodes) {
        ensure(x.id == y.id, format!("id {:?} vs {:?}", x.id, y.id))?;
        let tx: Vec<String> = x.types.iter().map(|t| ours.expand(t).unwrap_or(t.clone())).collect();
        let ty: Vec<String> = y.types.iter().map(|t| golden.expand(t).unwrap_or(t.clone())).collect();
        ensure(tx == ty, format!("types {tx:?} vs {ty:?}"))?;
        let px: BTreeSet<(String, String)> = x
            .properties
            .iter()
            .map(|(k, v)| (ours.expand(k).unwrap_or(k.clone()), format!("{v:?}")))
            .collect();
        let py: BTreeSet<(String, String)> = y
            .properties
            .iter()
            .map(|(k, v)| (golden.expand(k).unwrap_or(k.clone()), format!("{v:?}")))
            .collect();
        ensure(px == py, format!("properties differ: {px:?} vs {py:?}"))?;
    }
    let row = &a.nodes[0];
    ensure(row.get("hpc:codeVariant") == Some(&Value::String("111100".into())), "codeVariant")?;
    ensure(row.get("hpc:allocatedDataSize") == Some(&Value::Integer(8000000)), "allocatedDataSize")?;
    ensure(row.get("hpc:gpuPageFault") == Some(&Value::Integer(5)), "gpuPageFault")?;
    let q = &a.nodes[1];
    ensure(
        q.get(vocab::QUDT_VALUE) == Some(&Value::Decimal("7872.0".into()))
            && q.get(vocab::QUDT_UNIT)
                == Some(&Value::Ref(NodeId::Iri("http://qudt.org/vocab/unit/KiloBYTE".into()))),
        "quantity value",
    )?;
    Ok("row node and QuantityValue{KiloBYTE, 7872.0} match the golden document".into())
}

const FEATURES: [&str; 6] = ["GPUPagePault", "HtoD", "DtoH", "Block Size", "SM [%]", "CPUPageFault"];

fn random_threshold(rng: &mut StdRng) -> f64 {
    match rng.gen_range(0..5) {
        0 => rng.gen_range(-10..10) as f64 + 0.5,
        1 => rng.gen_range(-1e6..1e6),
        2 => 0.1 + 0.2,
        3 => rng.gen_range(0..4) as f64,
        _ => rng.gen_range(-1e-6..1e-6),
    }
}

fn random_tree(rng: &mut StdRng, max_depth: u32) -> DecisionTree {
    fn grow(rng: &mut StdRng, depth: u32, max_depth: u32, out: &mut Vec<NodeRecord>) -> String {
        let id = format!("node {}", out.len());
        let idx = out.len();
        out.push(NodeRecord {
            id: id.clone(),
            level: Some(depth),
            feature: None,
            threshold: None,
            true_child: None,
            false_child: None,
            label: None,
        });
        if depth == max_depth || (depth > 0 && rng.gen_bool(0.45)) {
            out[idx].label = Some(format!("variant-{}", rng.gen_range(0..8)));
        } else {
            out[idx].feature = Some(FEATURES[rng.gen_range(0..FEATURES.len())].to_string());
            out[idx].threshold = Some(random_threshold(rng));
            let t = grow(rng, depth + 1, max_depth, out);
            let f = grow(rng, depth + 1, max_depth, out);
            out[idx].true_child = Some(t);
            out[idx].false_child = Some(f);
        }
        id
    }
    let mut records = Vec::new();
    let root = grow(rng, 0, max_depth, &mut records);
    DecisionTree::from_records("random".into(), Some("synthetic".into()), root, records).unwrap()
}

fn random_features(rng: &mut StdRng, thresholds: &[f64]) -> FeatureVector {
    FEATURES
        .iter()
        .map(|f| {
            let v = match rng.gen_range(0..3) {
                0 if !thresholds.is_empty() => thresholds[rng.gen_range(0..thresholds.len())],
                1 if !thresholds.is_empty() => thresholds[rng.gen_range(0..thresholds.len())].next_up(),
                _ => random_threshold(rng),
            };
            (f.to_string(), v)
        })
        .collect()
}

fn shape(tree: &DecisionTree) -> Vec<String> {
    tree.preorder()
        .iter()
        .map(|n| match &n.kind {
            NodeKind::Internal { feature, threshold, .. } => {
                format!("{}|{}|{feature}|{:x}", n.id, n.level, threshold.to_bits())
            }
            NodeKind::Leaf { label } => format!("{}|{}|{label}", n.id, n.level),
        })
        .collect()
}

// 6. Tree annotate -> serialize -> parse round trip.
fn tree_round_trip() -> Check {
    let mut rng = StdRng::seed_from_u64(0x7ee5);
    let (mut trees, mut decisions, mut deepest) = (0, 0, 0);
    for _ in 0..1000 {
        let max_depth = rng.gen_range(0..=12);
        let tree = random_tree(&mut rng, max_depth);
        let text = serialize_linked_data(&annotate_tree(&tree, None));
        let back = parse_linked_data(&text)
            .map_err(|e| e.to_string())
            .and_then(|d| parse_annotated(&d).map_err(|e| e.to_string()))?;
        ensure(shape(&tree) == shape(&back), format!("structure differs for tree {trees}"))?;
        let thresholds: Vec<f64> = tree
            .nodes
            .values()
            .filter_map(|n| match n.kind {
                NodeKind::Internal { threshold, .. } => Some(threshold),
                NodeKind::Leaf { .. } => None,
            })
            .collect();
        for _ in 0..100 {
            let fv = random_features(&mut rng, &thresholds);
            ensure(
                tree.evaluate(&fv) == back.evaluate(&fv),
                format!("decision differs on tree {trees} for {fv:?}"),
            )?;
            decisions += 1;
        }
        deepest = deepest.max(tree.depth());
        trees += 1;
    }
    Ok(format!("{trees} trees (max depth {deepest}), {decisions} decisions, 100% agreement"))
}

fn random_cell(rng: &mut StdRng, ty: CellType) -> String {
    if rng.gen_bool(0.2) {
        return if rng.gen_bool(0.5) { String::new() } else { "  ".into() };
    }
    match ty {
        CellType::String => {
            let pool = ["graph1MW.6", "a,b", "say \"hi\"", " padded ", "0", "Kernel2", "ü"];
            pool[rng.gen_range(0..pool.len())].to_string()
        }
        CellType::Integer => rng.gen_range(-1_000_000_000i64..1_000_000_000).to_string(),
        CellType::Decimal | CellType::Quantity => {
            format!("{}.{}", rng.gen_range(-99999..99999), rng.gen_range(0..1000))
        }
        CellType::AnyUri => format!("http://example.org/r/{}", rng.gen_range(0..1000)),
    }
}

// 7. Random CSVs: node and property counts, deterministic bytes.
fn csv_properties() -> Check {
    const TYPES: [CellType; 5] = [
        CellType::String,
        CellType::Integer,
        CellType::Decimal,
        CellType::AnyUri,
        CellType::Quantity,
    ];
    let mut rng = StdRng::seed_from_u64(0xc5f);
    let mut total_rows = 0;
    for case in 0..60 {
        let cols = rng.gen_range(1..=30);
        let rows = if case == 0 { 200 } else { rng.gen_range(0..=200) };
        let types: Vec<CellType> = (0..cols).map(|_| TYPES[rng.gen_range(0..TYPES.len())]).collect();
        let bound: Vec<bool> = (0..cols).map(|_| rng.gen_bool(0.8)).collect();
        let header: Vec<String> = (0..cols).map(|c| format!("col {c}")).collect();
        let spec = MappingSpec {
            base_iri: "http://example.org/t.csv".into(),
            row_type: "hpc:TableRow".into(),
            id_template: "#L{row}".into(),
            prefixes: vec![],
            bindings: (0..cols)
                .filter(|c| bound[*c])
                .map(|c| ColumnBinding {
                    column: header[c].clone(),
                    property: format!("hpc:p{c}"),
                    datatype: types[c],
                    unit: (types[c] == CellType::Quantity).then(|| "unit:KiloBYTE".to_string()),
                })
                .collect(),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).unwrap();
        let mut expected = Vec::new();
        let mut quantities = Vec::new();
        for _ in 0..rows {
            let cells: Vec<String> = types.iter().map(|t| random_cell(&mut rng, *t)).collect();
            let filled = |c: &usize| bound[*c] && !cells[*c].trim().is_empty();
            expected.push((0..cols).filter(filled).count());
            quantities.extend(
                (0..cols)
                    .filter(|c| filled(c) && types[*c] == CellType::Quantity)
                    .map(|c| cells[c].trim().to_string()),
            );
            w.write_record(&cells).unwrap();
        }
        let bytes = w.into_inner().unwrap();
        let doc = annotate_csv(bytes.as_slice(), &spec).map_err(|e| e.to_string())?;
        let again = annotate_csv(bytes.as_slice(), &spec).map_err(|e| e.to_string())?;
        let text = serialize_linked_data(&doc);
        ensure(text == serialize_linked_data(&again), "serialization not deterministic")?;
        let row_nodes: Vec<_> = doc.nodes_of_type("hpc:TableRow").collect();
        ensure(row_nodes.len() == rows, format!("{} nodes for {rows} rows", row_nodes.len()))?;
        for (i, (n, want)) in row_nodes.iter().zip(&expected).enumerate() {
            ensure(
                n.properties.len() == *want,
                format!("case {case} row {}: {} properties, want {want}", i + 1, n.properties.len()),
            )?;
        }
        let back = parse_linked_data(&text).map_err(|e| e.to_string())?;
        let recovered: Vec<String> = back
            .nodes_of_type(vocab::QUANTITY_VALUE)
            .map(|q| match (q.get(vocab::QUDT_VALUE), q.get(vocab::QUDT_UNIT)) {
                (Some(Value::Decimal(d)), Some(Value::Ref(NodeId::Iri(u))))
                    if u == "http://qudt.org/vocab/unit/KiloBYTE" =>
                {
                    d.clone()
                }
                other => format!("bad quantity {other:?}"),
            })
            .collect();
        ensure(recovered == quantities, format!("case {case}: quantities did not round-trip"))?;
        total_rows += rows;
    }
    Ok(format!("60 random CSVs, {total_rows} rows, counts exact, bytes identical across runs"))
}

// 8. Manual level never changes a Dual point.
fn dual_dominance() -> Check {
    let reg = builtin_registry();
    let mut checks = 0;
    for status in [
        MetricStatus::Pass,
        MetricStatus::Partial,
        MetricStatus::Fail,
        MetricStatus::NotApplicable,
    ] {
        let auto = uniform_auto(status);
        for ind in reg.indicators().iter().filter(|i| i.mode == Mode::Dual) {
            let mut points = BTreeSet::new();
            for level in MaturityLevel::ALL {
                let mut answers = uniform_answers(&reg, MaturityLevel::NotConsidered);
                answers.answers.insert(ind.id.to_string(), Answer { level, note: None });
                let outcomes = merge(&answers, &auto, &reg, &[]).map_err(|e| e.to_string())?;
                let o = outcomes.iter().find(|o| o.primary_id() == ind.id).unwrap();
                points.insert(o.point);
                checks += 1;
            }
            ensure(points.len() == 1, format!("{} point varies under {status}", ind.id))?;
            let want = u8::from(status == MetricStatus::Pass);
            ensure(points.contains(&want), format!("{} point is not the automated one", ind.id))?;
        }
    }
    Ok(format!("11 dual indicators x 4 statuses x 5 levels = {checks} merges, point fixed"))
}

// 9. Chart bars and the post-fixture text summary.
fn report_rendering() -> Check {
    let reg = builtin_registry();
    let mut rng = StdRng::seed_from_u64(0x5a6);
    const STATUSES: [MetricStatus; 4] = [
        MetricStatus::Pass,
        MetricStatus::Partial,
        MetricStatus::Fail,
        MetricStatus::NotApplicable,
    ];
    for _ in 0..200 {
        let mut answers = uniform_answers(&reg, MaturityLevel::NotConsidered);
        for a in answers.answers.values_mut() {
            a.level = MaturityLevel::ALL[rng.gen_range(0..5)];
        }
        let mut auto = uniform_auto(MetricStatus::Pass);
        for r in auto.results.values_mut() {
            r.status = STATUSES[rng.gen_range(0..4)];
        }
        let outcomes = merge(&answers, &auto, &reg, &[]).map_err(|e| e.to_string())?;
        let report = build_report(
            ReportInput {
                target: "t",
                timestamp: STAMP,
                exclude_na: rng.gen_bool(0.5),
                outcomes: &outcomes,
                overrides: &[],
                notes: vec![],
                config_digests: Default::default(),
            },
            &reg,
        )
        .map_err(|e| e.to_string())?;
        let svg = render_svg(&report).map_err(|e| e.to_string())?;
        let bars = svg.matches("<rect class=\"bar\"").count();
        ensure(bars == 47 && svg.matches("<rect").count() == 47, format!("{bars} bars"))?;
    }
    let dir = fixtures().join("xplacer-post");
    let auto = auto_run("xplacer-post");
    let answers = parse_answers(&read(&dir.join("answers.txt")), &reg).map_err(|e| e.to_string())?;
    let overrides = parse_overrides(&read(&dir.join("overrides.txt"))).map_err(|e| e.to_string())?;
    let run = run_hybrid(&auto, &answers, &overrides, &reg, &EvalConfig::default(), &HybridOptions::default())
        .map_err(|e| e.to_string())?;
    let text = render_text(&run.report).map_err(|e| e.to_string())?;
    for line in ["F 8/8", "A 13/13"] {
        ensure(text.lines().any(|l| l == line), format!("text lacks `{line}`"))?;
    }
    let svg = render_svg(&run.report).map_err(|e| e.to_string())?;
    ensure(svg.matches("<rect class=\"bar\"").count() == 47, "post svg bars")?;
    Ok("200 random reports with 47 bars each; post text has `F 8/8` and `A 13/13`".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("registry invariants", registry_invariants),
        ("scoring arithmetic", scoring_arithmetic),
        ("pre-FAIRification fixture", pre_fixture),
        ("post-FAIRification fixture", post_fixture),
        ("golden row annotation", golden_row),
        ("tree round trip", tree_round_trip),
        ("CSV annotation properties", csv_properties),
        ("dual dominance", dual_dominance),
        ("report rendering", report_rendering),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): panicked", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
