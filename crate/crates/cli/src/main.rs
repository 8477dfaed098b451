use std::fs;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fairgauge_core::annotate::{annotate_csv, parse_linked_data, parse_mapping, serialize_linked_data, to_ntriples};
use fairgauge_core::assess::{run_auto, run_hybrid, HybridOptions};
use fairgauge_core::autoeval::EvalConfig;
use fairgauge_core::harvest::{Fetched, Fetcher, LoadMode, NoNetwork};
use fairgauge_core::hybrid::{parse_overrides, Override};
use fairgauge_core::manual::{interactive_fill, parse_answers, serialize_answers, validate_answers, MaturityLevel};
use fairgauge_core::report::{parse_report, render_json, render_svg, render_text};
use fairgauge_core::treemodel::{annotate_tree, parse_annotated, parse_features, parse_tree, DecisionTree, NodeKind};
use fairgauge_core::builtin_registry;

#[derive(Parser)]
#[command(name = "fairgauge", version, about = "Hybrid FAIRness assessment and linked-data annotation")]
struct Cli {
    /// Refuse to fetch live URLs.
    #[arg(long, global = true)]
    no_network: bool,
    /// Evaluator config (JSON object of list overrides). Defaults to $FAIRGAUGE_CONFIG.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the indicator registry.
    #[command(subcommand)]
    Registry(RegistryCmd),
    /// Run an assessment.
    #[command(subcommand)]
    Assess(AssessCmd),
    /// Convert data into linked data.
    #[command(subcommand)]
    Annotate(AnnotateCmd),
    /// Decision-tree tools.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Render a saved hybrid result.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum RegistryCmd {
    /// List all 47 indicators.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum AssessCmd {
    /// Automated metrics only.
    Auto {
        /// URL, fixture directory or manifest file.
        target: String,
        /// Write the JSON result here (`-` for standard output).
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Validate or fill in the manual questionnaire.
    Manual(ManualArgs),
    /// Automated metrics, manual answers and overrides combined.
    Hybrid(HybridArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct ManualSource {
    /// Answer file to validate.
    #[arg(long, group = "source")]
    answers: Option<PathBuf>,
    /// Ask for each indicator on the terminal.
    #[arg(long, group = "source")]
    interactive: bool,
}

#[derive(Args)]
struct ManualArgs {
    #[command(flatten)]
    source: ManualSource,
    /// Existing answers offered as defaults in interactive mode.
    #[arg(long, value_name = "PATH", requires = "interactive")]
    draft: Option<PathBuf>,
    /// Where interactive answers are written (default: standard output).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(flatten)]
    strictness: Strictness,
}

#[derive(Args)]
struct Strictness {
    /// Reject answer sets that miss a manual indicator.
    #[arg(long, conflicts_with = "lenient")]
    strict: bool,
    /// Treat missing answers as level 1 (the default).
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct TimeArgs {
    /// Timestamp recorded in results (default: $SOURCE_DATE_EPOCH, else now).
    #[arg(long)]
    timestamp: Option<String>,
}

#[derive(Args)]
struct HybridArgs {
    target: String,
    #[arg(long, value_name = "PATH")]
    answers: PathBuf,
    /// `<metric-id>=pass|fail: <justification>`; repeatable.
    #[arg(long = "override", value_name = "OVERRIDE")]
    overrides: Vec<String>,
    #[arg(long, value_name = "PATH")]
    overrides_file: Option<PathBuf>,
    /// Drop not-applicable automated metrics from both sides of the score.
    #[arg(long)]
    exclude_na: bool,
    #[command(flatten)]
    strictness: Strictness,
    /// Write the report JSON here (`-` for standard output).
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    svg: Option<PathBuf>,
    /// Print the text summary (default when no other output is requested).
    #[arg(long)]
    text: bool,
    #[command(flatten)]
    time: TimeArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum LdFormat {
    Jsonld,
    Nt,
}

#[derive(Subcommand)]
enum AnnotateCmd {
    /// CSV rows to linked data via a mapping spec.
    Csv {
        csv: PathBuf,
        #[arg(long, value_name = "PATH")]
        mapping: PathBuf,
        #[arg(long, value_name = "OUT")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "jsonld")]
        format: LdFormat,
    },
    /// A decision tree to linked data.
    Tree {
        tree: PathBuf,
        #[arg(long, value_name = "OUT")]
        out: Option<PathBuf>,
        /// IRI of the tree node (default derived from the tree name).
        #[arg(long)]
        iri: Option<String>,
        #[arg(long, value_enum, default_value = "jsonld")]
        format: LdFormat,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Classify one feature vector.
    Eval {
        /// Native tree JSON or annotated JSON-LD.
        tree: PathBuf,
        /// `name=value,...`
        #[arg(long)]
        features: String,
        /// Also print the decision path.
        #[arg(long)]
        path: bool,
    },
}

#[derive(Args)]
struct ReportArgs {
    result: PathBuf,
    #[arg(long, value_name = "OUT")]
    svg: Option<PathBuf>,
    #[arg(long)]
    text: bool,
}

/// Live fetches over HTTP(S), preferring structured metadata.
struct HttpFetcher {
    agent: ureq::Agent,
}

impl HttpFetcher {
    fn new() -> Self {
        HttpFetcher {
            agent: ureq::AgentBuilder::new().timeout(Duration::from_secs(30)).build(),
        }
    }
}

impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &str) -> std::result::Result<Fetched, String> {
        let resp = self
            .agent
            .get(url)
            .set("Accept", "application/ld+json, text/html;q=0.8, */*;q=0.1")
            .call()
            .map_err(|e| e.to_string())?;
        let content_type = resp.header("Content-Type").map(str::to_string);
        let body = resp.into_string().map_err(|e| e.to_string())?;
        Ok(Fetched { content_type, body })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => io::stdout().write_all(text.as_bytes()).context("cannot write to standard output"),
        Some(p) if p == Path::new("-") => {
            io::stdout().write_all(text.as_bytes()).context("cannot write to standard output")
        }
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
    }
}

fn eval_config(cli: &Cli) -> Result<EvalConfig> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os("FAIRGAUGE_CONFIG").map(PathBuf::from));
    match path {
        None => Ok(EvalConfig::default()),
        Some(p) => EvalConfig::from_overrides(&read(&p)?).with_context(|| format!("config {}", p.display())),
    }
}

fn timestamp(args: &TimeArgs) -> Result<String> {
    if let Some(t) = &args.timestamp {
        return Ok(t.clone());
    }
    let when = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(s) => {
            let secs: i64 = s.trim().parse().context("SOURCE_DATE_EPOCH is not an integer")?;
            chrono::DateTime::from_timestamp(secs, 0).context("SOURCE_DATE_EPOCH out of range")?
        }
        Err(_) => chrono::Utc::now(),
    };
    Ok(when.to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

fn fetcher(cli: &Cli) -> Box<dyn Fetcher> {
    if cli.no_network {
        Box::new(NoNetwork)
    } else {
        Box::new(HttpFetcher::new())
    }
}

fn registry_list(json: bool) -> Result<()> {
    let reg = builtin_registry();
    let mut out = String::new();
    if json {
        let rows: Vec<serde_json::Value> = reg
            .indicators()
            .iter()
            .map(|i| {
                serde_json::json!({
                    "id": i.id,
                    "partner": i.dual_partner,
                    "principle": i.principle.sub(),
                    "target": i.target.as_str(),
                    "mode": i.mode.as_str(),
                    "description": i.description,
                })
            })
            .collect();
        out = serde_json::to_string_pretty(&rows)?;
        out.push('\n');
    } else {
        for i in reg.indicators() {
            let ids = match i.dual_partner {
                Some(p) => format!("{} / {p}", i.id),
                None => i.id.to_string(),
            };
            out.push_str(&format!("{ids:<28} {:<5} {:<14} {}\n", i.principle.sub(), i.mode.as_str(), i.description));
        }
        out.push_str(&format!("{} indicators ({})\n", reg.len(), reg.version()));
    }
    write_out(None, &out)
}

fn assess_auto(cli: &Cli, target: &str, json: Option<&Path>, time: &TimeArgs) -> Result<()> {
    let config = eval_config(cli)?;
    let run = run_auto(target, LoadMode::Auto, fetcher(cli).as_ref(), &config, &timestamp(time)?)?;
    for w in &run.warnings {
        eprintln!("warning: {}: {}", w.source, w.message);
    }
    if let Some(path) = json {
        let mut text = serde_json::to_string_pretty(&run.report)?;
        text.push('\n');
        return write_out(Some(path), &text);
    }
    let mut out = format!("automated assessment of {}\n", run.report.target_identifier);
    for r in run.report.results.values() {
        out.push_str(&format!("{:<14} {:<14} {}\n", r.metric_id, r.status.as_str(), r.evidence.join("; ")));
    }
    write_out(None, &out)
}

fn assess_manual(args: &ManualArgs) -> Result<()> {
    let reg = builtin_registry();
    if args.source.interactive {
        let draft = match &args.draft {
            Some(p) => Some(parse_answers(&read(p)?, &reg).with_context(|| p.display().to_string())?),
            None => None,
        };
        let stdin = io::stdin();
        let mut input = BufReader::new(stdin.lock());
        let mut prompts = io::stderr();
        let set = interactive_fill(&reg, draft.as_ref(), &mut input, &mut prompts)?;
        return write_out(args.out.as_deref(), &serialize_answers(&set, &reg));
    }
    let path = args.source.answers.as_ref().expect("clap enforces the group");
    let set = parse_answers(&read(path)?, &reg).with_context(|| path.display().to_string())?;
    let v = validate_answers(&set, &reg, args.strictness.strict)?;
    for f in &v.findings {
        eprintln!("note: {}", f.message);
    }
    let manual: Vec<_> = reg.manual_only().collect();
    let full = manual
        .iter()
        .filter(|i| v.answers.level(i.id) == Some(MaturityLevel::FullyImplemented))
        .count();
    let mut out = String::new();
    for level in MaturityLevel::ALL {
        let n = manual.iter().filter(|i| v.answers.level(i.id) == Some(level)).count();
        out.push_str(&format!("level {level}: {n}\n"));
    }
    out.push_str(&format!("manual points: {full}/{}\n", manual.len()));
    write_out(args.out.as_deref(), &out)
}

fn assess_hybrid(cli: &Cli, args: &HybridArgs) -> Result<()> {
    let reg = builtin_registry();
    let config = eval_config(cli)?;
    let answers = parse_answers(&read(&args.answers)?, &reg).with_context(|| args.answers.display().to_string())?;
    let mut overrides: Vec<Override> = match &args.overrides_file {
        Some(p) => parse_overrides(&read(p)?).with_context(|| p.display().to_string())?,
        None => Vec::new(),
    };
    for o in &args.overrides {
        overrides.push(o.parse().with_context(|| format!("--override `{o}`"))?);
    }
    let auto = run_auto(&args.target, LoadMode::Auto, fetcher(cli).as_ref(), &config, &timestamp(&args.time)?)?;
    let options = HybridOptions {
        strict: args.strictness.strict,
        exclude_na: args.exclude_na,
    };
    let run = run_hybrid(&auto, &answers, &overrides, &reg, &config, &options)?;
    for note in &run.report.notes {
        eprintln!("note: {note}");
    }
    if let Some(p) = &args.json {
        write_out(Some(p), &render_json(&run.report))?;
    }
    if let Some(p) = &args.svg {
        write_out(Some(p), &render_svg(&run.report)?)?;
    }
    let json_on_stdout = args.json.as_deref() == Some(Path::new("-"));
    if args.text || (args.json.is_none() && args.svg.is_none()) {
        if json_on_stdout {
            bail!("--text and --json - both want standard output");
        }
        write_out(None, &render_text(&run.report)?)?;
    }
    Ok(())
}

fn load_tree(path: &Path) -> Result<DecisionTree> {
    let text = read(path)?;
    let annotated = path.extension().is_some_and(|e| e == "jsonld") || text.contains("\"@graph\"");
    let tree = if annotated {
        let doc = parse_linked_data(&text).with_context(|| path.display().to_string())?;
        parse_annotated(&doc)
    } else {
        parse_tree(&text)
    };
    tree.with_context(|| path.display().to_string())
}

fn render_ld(doc: &fairgauge_core::annotate::LinkedDataDoc, format: LdFormat) -> Result<String> {
    Ok(match format {
        LdFormat::Jsonld => serialize_linked_data(doc),
        LdFormat::Nt => to_ntriples(doc)?,
    })
}

fn annotate(cmd: &AnnotateCmd) -> Result<()> {
    match cmd {
        AnnotateCmd::Csv { csv, mapping, out, format } => {
            let spec = parse_mapping(&read(mapping)?).with_context(|| mapping.display().to_string())?;
            for w in spec.warnings() {
                eprintln!("warning: {w}");
            }
            let mut data = Vec::new();
            fs::File::open(csv)
                .and_then(|mut f| f.read_to_end(&mut data))
                .with_context(|| format!("cannot read {}", csv.display()))?;
            let doc = annotate_csv(data.as_slice(), &spec).with_context(|| csv.display().to_string())?;
            write_out(out.as_deref(), &render_ld(&doc, *format)?)
        }
        AnnotateCmd::Tree { tree, out, iri, format } => {
            let t = load_tree(tree)?;
            let doc = annotate_tree(&t, iri.as_deref());
            write_out(out.as_deref(), &render_ld(&doc, *format)?)
        }
    }
}

fn tree_eval(tree: &Path, features: &str, show_path: bool) -> Result<()> {
    let t = load_tree(tree)?;
    let fv = parse_features(features).map_err(anyhow::Error::msg)?;
    let mut out = String::new();
    if show_path {
        for n in t.path(&fv)? {
            if let NodeKind::Internal { feature, threshold, .. } = &n.kind {
                let v = fv[feature];
                let op = if v <= *threshold { "<=" } else { ">" };
                out.push_str(&format!("{}: {feature} = {v} {op} {threshold}\n", n.id));
            }
        }
    }
    out.push_str(t.evaluate(&fv)?);
    out.push('\n');
    write_out(None, &out)
}

fn report(args: &ReportArgs) -> Result<()> {
    let reg = builtin_registry();
    let doc = parse_report(&read(&args.result)?, &reg).with_context(|| args.result.display().to_string())?;
    if let Some(p) = &args.svg {
        write_out(Some(p), &render_svg(&doc)?)?;
    }
    if args.text || args.svg.is_none() {
        write_out(None, &render_text(&doc)?)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Registry(RegistryCmd::List { json }) => registry_list(*json),
        Command::Assess(AssessCmd::Auto { target, json, time }) => assess_auto(cli, target, json.as_deref(), time),
        Command::Assess(AssessCmd::Manual(args)) => assess_manual(args),
        Command::Assess(AssessCmd::Hybrid(args)) => assess_hybrid(cli, args),
        Command::Annotate(cmd) => annotate(cmd),
        Command::Tree(TreeCmd::Eval { tree, features, path }) => tree_eval(tree, features, *path),
        Command::Report(args) => report(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
