//! Command-line front end.
//!
//! Reports go to stdout as JSON, human-readable summaries to stderr. Exit
//! codes: 0 completed (whatever the verdict), 1 usage error, 2 input error,
//! 3 search cap exceeded.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use helly_core::clustering::{self, ClusterInstance, InstanceKind, TesterVerdict};
use helly_core::constructions::{
    gen_interval_tight, gen_lowerbound_2piercing_with, witness_from_tables, LowerBoundCoordinates, TableReading,
};
use helly_core::helly::{
    self, check_helly_with, colorful_class_count, fraction_pierceable_with, max_pierceable_subfamily_with,
    FractionMode, HellyReport,
};
use helly_core::piercing::check_witness;
use helly_core::{pierce_n_with, ColorSystem, Family, Point, Rational, SearchCaps};
use serde_json::json;

use crate::document::{Document, DocumentError, Payload};
use crate::parallel;
use crate::report::{self, Report};
use crate::svg::{self, SvgOptions};

pub const CAP_ENV: &str = "HELLY_PIERCER_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<helly_core::Error> for CliError {
    fn from(e: helly_core::Error) -> Self {
        match e {
            helly_core::Error::CapExceeded { .. } => CliError::Cap(format!("{e} (raise it with {CAP_ENV}=<size>)")),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "helly-piercer", version, about = "Exact piercing and Helly-type checks for axis-parallel boxes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Lowerbound2,
    IntervalTight,
    Cluster,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide n-piercability of a family (colour systems are flattened).
    Pierce {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        n: usize,
    },
    /// Check that every h-subset being n-pierceable forces the family to be.
    Helly {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: usize,
    },
    /// Check the colorful statement on a colour system.
    Colorful {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        /// Also find one representative per other class.
        #[arg(long)]
        strong: bool,
    },
    /// Fraction of t-subsets that are n-pierceable.
    Fraction {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        /// Estimate from this many sampled subsets instead of enumerating.
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also report the largest n-pierceable subfamily.
        #[arg(long)]
        beta: bool,
    },
    /// Write a generated instance document.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// key=value pairs, comma separated or repeated.
        #[arg(long = "params", value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Table-driven two-point witness for a lower-bound colour system.
    WitnessTables {
        #[arg(long)]
        input: Option<PathBuf>,
        /// One box index per class.
        #[arg(long, value_delimiter = ',', required_unless_present = "all")]
        tuple: Vec<usize>,
        /// Check every colorful tuple instead.
        #[arg(long, conflicts_with = "tuple")]
        all: bool,
    },
    /// Run the randomized clusterability tester.
    ClusterTest {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        seed: u64,
    },
    /// Estimate the fraction of uncoverable tuples.
    Calibrate {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Draw a planar document as SVG.
    Render {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Marker point "x,y"; repeatable.
        #[arg(long = "mark")]
        marks: Vec<String>,
        /// Overlay the table witness of this tuple.
        #[arg(long, value_delimiter = ',')]
        tables_tuple: Option<Vec<usize>>,
    },
}

/// Parses `args`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn caps() -> CliResult<SearchCaps> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(SearchCaps::with_size_cap)
            .map_err(|_| CliError::Usage(format!("{CAP_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(SearchCaps::default()),
    }
}

fn read_document(input: Option<&Path>) -> CliResult<Document> {
    let mut text = String::new();
    match input {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(Document::parse(&text)?)
}

fn input_name(input: Option<&Path>) -> String {
    input.map_or_else(|| "-".to_owned(), |p| p.display().to_string())
}

fn as_family(doc: &Document) -> CliResult<Family> {
    match &doc.payload {
        Payload::Family { family, .. } => Ok(family.clone()),
        Payload::ColorSystem(c) => Ok(c.flatten()),
        Payload::ClusterInstance(_) => Err(CliError::Input("expected a family or color-system document".into())),
    }
}

fn as_color_system(doc: &Document) -> CliResult<&ColorSystem> {
    match &doc.payload {
        Payload::ColorSystem(c) => Ok(c),
        _ => Err(CliError::Input("expected a color-system document".into())),
    }
}

fn as_cluster_instance(doc: &Document) -> CliResult<&ClusterInstance> {
    match &doc.payload {
        Payload::ClusterInstance(inst) => Ok(inst),
        _ => Err(CliError::Input("expected a cluster-instance document".into())),
    }
}

fn parse_rational(name: &str, s: &str) -> CliResult<Rational> {
    s.parse().map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn internal(what: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("internal check failed: {what}"))
}

fn execute(command: Command) -> CliResult<String> {
    let caps = caps()?;
    match command {
        Command::Pierce { input, n } => pierce(input.as_deref(), n, &caps),
        Command::Helly { input, h, n } => helly_cmd(input.as_deref(), h, n, &caps),
        Command::Colorful { input, n, strong } => colorful(input.as_deref(), n, strong, &caps),
        Command::Fraction { input, t, n, samples, seed, beta } => {
            fraction(input.as_deref(), t, n, samples.zip(seed), beta, &caps)
        }
        Command::Gen { kind, params, seed } => gen(kind, &params, seed),
        Command::WitnessTables { input, tuple, all } => witness_tables(input.as_deref(), &tuple, all),
        Command::ClusterTest { input, gamma, delta, seed } => {
            cluster_test(input.as_deref(), gamma.as_deref(), delta.as_deref(), seed, &caps)
        }
        Command::Calibrate { input, samples, seed } => calibrate(input.as_deref(), samples, seed),
        Command::Render { input, out, marks, tables_tuple } => {
            render(input.as_deref(), &out, &marks, tables_tuple.as_deref())
        }
    }
}

fn pierce(input: Option<&Path>, n: usize, caps: &SearchCaps) -> CliResult<String> {
    let doc = read_document(input)?;
    let f = as_family(&doc)?;
    let cert = pierce_n_with(&f, n, caps)?;
    cert.validate(&f).map_err(internal)?;
    eprintln!("{} boxes: {}-pierceable: {}", f.len(), n, if cert.is_pierceable() { "yes" } else { "no" });
    let mut r = Report::new("pierce").param("input", input_name(input)).param("n", n);
    r.set("certificate", report::piercing_certificate(&cert));
    Ok(r.render())
}

fn validate_helly(f: &Family, r: &HellyReport, n: usize) -> CliResult<()> {
    if let Some(c) = &r.conclusion_certificate {
        check_witness(f, &c.witness, n).map_err(internal)?;
    }
    if let Some(v) = &r.premise_violation {
        if pierce_n_with(&f.select(v), n, &SearchCaps::default())?.is_pierceable() {
            return Err(internal("premise violation is pierceable"));
        }
    }
    Ok(())
}

fn helly_cmd(input: Option<&Path>, h: usize, n: usize, caps: &SearchCaps) -> CliResult<String> {
    let doc = read_document(input)?;
    let f = as_family(&doc)?;
    let r = check_helly_with(&f, h, n, caps)?;
    validate_helly(&f, &r, n)?;
    eprintln!(
        "every {h}-subset {n}-pierceable: {}; whole family {n}-pierceable: {}",
        r.premise_holds, r.conclusion_holds
    );
    let mut out = Report::new("helly").param("input", input_name(input)).param("h", h).param("n", n);
    out.set("report", report::helly_report(&r));
    out.set("helly_number", helly_core::helly_number(f.dim().unwrap_or(0), n));
    Ok(out.render())
}

fn colorful(input: Option<&Path>, n: usize, strong: bool, caps: &SearchCaps) -> CliResult<String> {
    let doc = read_document(input)?;
    let c = as_color_system(&doc)?;
    let premise_violation = parallel::check_all_colorful(c, n)?;
    let certificate = helly::colorful_conclusion(c, n, strong, caps)?;
    let expected = colorful_class_count(c.dim(), n);
    let r = HellyReport {
        premise_holds: premise_violation.is_none(),
        conclusion_holds: certificate.is_some(),
        premise_violation,
        conclusion_certificate: certificate,
        class_count_warning: expected != Some(c.num_classes()),
    };
    if let Some(cert) = &r.conclusion_certificate {
        let i = cert.class.ok_or_else(|| internal("colorful certificate without a class"))?;
        let mut boxes = c.class(i).boxes().to_vec();
        boxes.extend(cert.representatives.iter().map(|&(k, j)| c.class(k).get(j).clone()));
        check_witness(&Family::new(boxes)?, &cert.witness, n).map_err(internal)?;
    }
    if let Some(t) = &r.premise_violation {
        if pierce_n_with(&c.tuple_boxes(t)?, n, caps)?.is_pierceable() {
            return Err(internal("premise violation is pierceable"));
        }
    }
    if r.class_count_warning {
        eprintln!(
            "warning: {} classes; the colorful statement is made for {}",
            c.num_classes(),
            expected.map_or_else(|| "no known count".to_owned(), |e| e.to_string())
        );
    }
    eprintln!(
        "colorful tuples {n}-pierceable: {}; {} class found: {}",
        r.premise_holds,
        if strong { "extendable" } else { "pierceable" },
        r.conclusion_certificate.as_ref().and_then(|c| c.class).map_or_else(|| "none".to_owned(), |i| i.to_string())
    );
    let mut out = Report::new("colorful").param("input", input_name(input)).param("n", n).param("strong", strong);
    out.set("report", report::helly_report(&r));
    out.set("classes", c.num_classes());
    out.set("expected_classes", expected);
    out.set("colorful_tuples", c.tuple_count());
    Ok(out.render())
}

fn fraction(
    input: Option<&Path>,
    t: usize,
    n: usize,
    sampled: Option<(usize, u64)>,
    beta: bool,
    caps: &SearchCaps,
) -> CliResult<String> {
    let doc = read_document(input)?;
    let f = as_family(&doc)?;
    let mode = match sampled {
        Some((k, seed)) => FractionMode::Sampled { k, seed },
        None => FractionMode::Exhaustive,
    };
    let fr = fraction_pierceable_with(&f, t, n, mode, caps)?;
    let mut out =
        Report::new("fraction").param("input", input_name(input)).param("t", t).param("n", n).param("beta", beta);
    if let Some((k, seed)) = sampled {
        out = out.param("samples", k).param("seed", seed);
    }
    out.set("pierceable", fr.pierceable);
    out.set("total", fr.total);
    out.set("fraction", report::rational(&fr.fraction));
    out.set("fraction_approx", fr.fraction.to_f64());
    out.set("exact", fr.exact);
    eprintln!(
        "{} of {} {}-subsets are {n}-pierceable ({:.4}{})",
        fr.pierceable,
        fr.total,
        t,
        fr.fraction.to_f64(),
        if fr.exact { "" } else { ", sampled" }
    );
    if beta {
        let sub = max_pierceable_subfamily_with(&f, n, caps)?;
        check_witness(&f.select(&sub.indices), &sub.witness, n).map_err(internal)?;
        let b = Rational::new(sub.indices.len() as i64, f.len() as i64);
        eprintln!("largest {n}-pierceable subfamily: {} of {} boxes", sub.indices.len(), f.len());
        out.set(
            "max_pierceable_subfamily",
            json!({
                "indices": sub.indices,
                "witness": report::points(&sub.witness),
                "beta": report::rational(&b),
                "beta_approx": b.to_f64(),
            }),
        );
    }
    Ok(out.render())
}

fn gen_params(params: &[String], allowed: &[&str]) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for p in params.iter().filter(|p| !p.is_empty()) {
        let (k, v) =
            p.split_once('=').ok_or_else(|| CliError::Usage(format!("--params entry {p:?} is not key=value")))?;
        if !allowed.contains(&k) {
            return Err(CliError::Usage(format!("unknown parameter {k:?}; expected one of {allowed:?}")));
        }
        map.insert(k.to_owned(), v.to_owned());
    }
    Ok(map)
}

fn param<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> CliResult<T> {
    let v = map.get(key).ok_or_else(|| CliError::Usage(format!("missing parameter {key}=...")))?;
    v.parse().map_err(|_| CliError::Usage(format!("parameter {key}={v} is not valid")))
}

fn gen(kind: GenKind, params: &[String], seed: Option<u64>) -> CliResult<String> {
    let doc = match kind {
        GenKind::Lowerbound2 => {
            let p = gen_params(params, &["d", "coordinates"])?;
            let d: usize = param(&p, "d")?;
            let coordinates = match p.get("coordinates").map(String::as_str) {
                None | Some("corrected") => LowerBoundCoordinates::Corrected,
                Some("printed") => LowerBoundCoordinates::Printed,
                Some(other) => return Err(CliError::Usage(format!("coordinates={other}: use corrected or printed"))),
            };
            let sys = gen_lowerbound_2piercing_with(d, coordinates)?;
            Document::color_system(sys.system)
                .with_meta("generator", "lowerbound2".into())
                .with_meta("d", d.into())
                .with_meta("coordinates", format!("{coordinates:?}").to_lowercase().into())
        }
        GenKind::IntervalTight => {
            let p = gen_params(params, &["n"])?;
            let n: usize = param(&p, "n")?;
            Document::family(gen_interval_tight(n)?, 1)
                .with_meta("generator", "interval-tight".into())
                .with_meta("n", n.into())
        }
        GenKind::Cluster => {
            let p = gen_params(params, &["type", "d", "n", "m", "epsilon"])?;
            let seed = seed.ok_or_else(|| CliError::Usage("gen --kind cluster requires --seed".into()))?;
            let (d, n, m): (usize, usize, usize) = (param(&p, "d")?, param(&p, "n")?, param(&p, "m")?);
            let kind = match p.get("type").map(String::as_str) {
                None | Some("coverable") => InstanceKind::Coverable,
                Some("far") => {
                    InstanceKind::Far { epsilon: parse_rational("params epsilon", &param::<String>(&p, "epsilon")?)? }
                }
                Some(other) => return Err(CliError::Usage(format!("type={other}: use coverable or far"))),
            };
            let mut doc = Document::cluster_instance(clustering::gen_cluster_instance(&kind, d, n, m, seed)?)
                .with_meta("generator", "cluster".into())
                .with_meta("seed", seed.into());
            for (k, v) in &p {
                doc = doc.with_meta(k, v.clone().into());
            }
            doc
        }
    };
    eprintln!("generated {:?} document, dim = {}", doc.kind(), doc.dim());
    Ok(doc.to_canonical_string())
}

fn witness_tables(input: Option<&Path>, tuple: &[usize], all: bool) -> CliResult<String> {
    let doc = read_document(input)?;
    let c = as_color_system(&doc)?;
    let mut out = Report::new("witness-tables").param("input", input_name(input));
    if all {
        let sweep = parallel::sweep_table_witnesses(c);
        eprintln!(
            "{} tuples: {} axis-consistent, {} literal only, {} unresolved",
            sweep.tuples, sweep.axis_consistent, sweep.literal_only, sweep.failures
        );
        out = out.param("all", true);
        out.set("tuples", sweep.tuples);
        out.set("axis_consistent", sweep.axis_consistent);
        out.set("literal_only", sweep.literal_only);
        out.set("failures", sweep.failures);
        out.set("first_failure", sweep.first_failure.map(|(t, e)| json!({ "tuple": t, "error": e })));
        return Ok(out.render());
    }
    let w = witness_from_tables(c, tuple)?;
    let reading = match w.reading {
        TableReading::AxisConsistent => "axis-consistent",
        TableReading::Literal => "literal",
    };
    eprintln!("X = {:?}, Y = {:?} ({reading} reading)", w.x, w.y);
    out = out.param("tuple", tuple.to_vec());
    out.set("x", report::point(&w.x));
    out.set("y", report::point(&w.y));
    out.set("reading", reading);
    out.set(
        "spanned",
        w.spanned
            .sides()
            .iter()
            .map(|s| json!([report::rational(s.lo()), report::rational(s.hi())]))
            .collect::<Vec<_>>(),
    );
    Ok(out.render())
}

fn cluster_test(
    input: Option<&Path>,
    gamma: Option<&str>,
    delta: Option<&str>,
    seed: u64,
    caps: &SearchCaps,
) -> CliResult<String> {
    let doc = read_document(input)?;
    let mut inst = as_cluster_instance(&doc)?.clone();
    if let Some(g) = gamma {
        inst.gamma = Some(parse_rational("gamma", g)?);
    }
    if let Some(d) = delta {
        inst.delta = parse_rational("delta", d)?;
    }
    let Some(g) = inst.gamma.clone() else {
        return Err(CliError::Usage("gamma is required: pass --gamma or set it from `calibrate`".into()));
    };
    let r = clustering::cluster_test_with(&inst, seed, caps)?;
    let verdict = match r.verdict {
        TesterVerdict::Accept => "accept",
        TesterVerdict::Reject => "reject",
    };
    eprintln!("{verdict} after {} of {} trials", r.trials_run, r.trials_planned);
    let mut out = Report::new("cluster-test")
        .param("input", input_name(input))
        .param("gamma", report::rational(&g))
        .param("delta", report::rational(&inst.delta))
        .param("seed", seed);
    out.set("verdict", verdict);
    out.set("tuple_size", r.tuple_size);
    out.set("trials_run", r.trials_run);
    out.set("trials_planned", r.trials_planned);
    out.set("witness_indices", r.witness_indices);
    out.set("witness", r.witness.as_deref().map(report::points));
    Ok(out.render())
}

fn calibrate(input: Option<&Path>, samples: usize, seed: u64) -> CliResult<String> {
    let doc = read_document(input)?;
    let inst = as_cluster_instance(&doc)?;
    let gamma = clustering::calibrate_gamma(inst, samples, seed)?;
    eprintln!("gamma ~ {:.4} from {samples} samples", gamma.to_f64());
    let mut out =
        Report::new("calibrate").param("input", input_name(input)).param("samples", samples).param("seed", seed);
    out.set("gamma", report::rational(&gamma));
    out.set("gamma_approx", gamma.to_f64());
    out.set("tuple_size", clustering::default_tuple_size(inst.dim(), inst.n)?);
    Ok(out.render())
}

fn parse_mark(s: &str) -> CliResult<Point> {
    let coords = s.split(',').map(|c| parse_rational("mark", c.trim())).collect::<CliResult<Vec<_>>>()?;
    if coords.len() != 2 {
        return Err(CliError::Usage(format!("--mark {s:?}: expected x,y")));
    }
    Ok(Point(coords))
}

fn render(input: Option<&Path>, out: &Path, marks: &[String], tables_tuple: Option<&[usize]>) -> CliResult<String> {
    let doc = read_document(input)?;
    if doc.dim() != 2 {
        return Err(CliError::Input(format!("render needs dim = 2, got {}", doc.dim())));
    }
    let mut marks = marks.iter().map(|m| parse_mark(m)).collect::<CliResult<Vec<_>>>()?;
    let (classes, dots): (Vec<&Family>, Vec<Point>) = match &doc.payload {
        Payload::Family { family, .. } => (vec![family], Vec::new()),
        Payload::ColorSystem(c) => (c.classes().iter().collect(), Vec::new()),
        Payload::ClusterInstance(inst) => (Vec::new(), inst.points.clone()),
    };
    if let Some(t) = tables_tuple {
        let c = as_color_system(&doc)?;
        let w = witness_from_tables(c, t)?;
        marks.extend([w.x, w.y]);
    }
    let opts = SvgOptions {
        title: doc.meta.get("generator").and_then(|g| g.as_str()).map(str::to_owned),
        ..SvgOptions::default()
    };
    let text = svg::render(&classes, &marks, &dots, &opts).map_err(|e| CliError::Input(e.to_string()))?;
    std::fs::write(out, &text).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    eprintln!("wrote {}", out.display());
    let mut r = Report::new("render").param("input", input_name(input)).param("out", out.display().to_string());
    r.set("rects", classes.iter().map(|f| f.len()).sum::<usize>());
    r.set("groups", classes.len());
    r.set("marks", marks.len());
    Ok(r.render())
}
