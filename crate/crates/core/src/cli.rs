//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 I/O or format error, 2 violation found (the
//! witness is printed), 3 size cap refused.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::clustering::{
    self, block_tangle_correspondence, dendogram_from_kappa, dendogram_from_kappa_labelled, kappa_from_dendogram,
    minimax_ultrametric, psi, psi_inverse, remarks, single_linkage_with_tolerance, validate_dendogram,
};
use crate::connectivity::{
    check_axioms, find_violation, AverageLinkage, BuiltinKind, MaxLinkage, MinLinkage, Property,
    SetFunction, Tabulated, VertexConnectivity,
};
use crate::decomposition::{
    branch_width_exact_radius, construct_decomposition_over, exactness_transform, to_dot, validate_pre_decomposition,
    verify_duality, width_radius, DualityOutcome, SubsetFamily,
};
use crate::error::Error;
use crate::instances;
use crate::io;
use crate::metric::{distance_matrix_from_points, ultrametric_check, validate_metric, DistanceMatrix, Ultrametric};
use crate::subset::Subset;
use crate::tangle::{enumerate_tangles, verify_tangle, TangleDescriptor};

#[derive(Parser, Debug)]
#[command(name = "tangles", version, about = "Tangles, branch-width and single-linkage clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Input file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Input format; inferred from the file when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<InputFormat>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long = "out-format", global = true, value_enum)]
    pub out_format: Option<OutputFormat>,
    /// Connectivity function built from the input.
    #[arg(long, global = true, value_enum, default_value_t = FunctionName::Mind)]
    pub function: FunctionName,
    /// Threshold order k.
    #[arg(long, global = true)]
    pub order: Option<f64>,
    /// Threshold radius r = -ln k; takes precedence over --order.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Distances within this of a merge radius join in the same step.
    #[arg(long = "tie-eps", global = true, default_value_t = 0.0)]
    pub tie_eps: f64,
    /// Refuse inputs with more points than this.
    #[arg(long = "max-n", global = true)]
    pub max_n: Option<usize>,
    /// Seed for randomized check suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated core labels for `check tangle`.
    #[arg(long, global = true)]
    pub core: Option<String>,
    /// Data defining the function for `exactify`.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    #[arg(long = "data-format", global = true, value_enum)]
    pub data_format: Option<InputFormat>,
    /// Drop leaves with empty atoms after `exactify`.
    #[arg(long, global = true)]
    pub prune: bool,
    /// Largest edge count for the vertex-connectivity sweep in `check remark`.
    #[arg(long = "max-edges", global = true, default_value_t = 6)]
    pub max_edges: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Single-linkage dendogram.
    Cluster,
    /// Minimax (bottleneck) ultrametric.
    Ultrametric,
    /// Catalog of all tangles.
    Tangles,
    /// Exhaustive branch-width with a witness decomposition.
    BranchWidth,
    /// Make a pre-decomposition exact.
    Exactify,
    /// Dendogram to ultrametric and back.
    Convert,
    /// Dendogram to its connectivity function and back.
    Kappa,
    /// Verification suites.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Metric,
    Ultrametric,
    Axioms,
    Submodular,
    MaxSubmodular,
    Tangle,
    Duality,
    Equivalence,
    Remark,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Points,
    Matrix,
    Dendogram,
    Tabulated,
    Graph,
    PreDecomposition,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
    Newick,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionName {
    Mind,
    KappaDist,
    PhiDist,
    Nu,
    Tabulated,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// I/O, parse or usage problem.
    Input(String),
    /// A checked property does not hold.
    Violation(String),
    /// Size cap refused.
    Cap(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Violation(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Violation(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap { .. } => Failure::Cap(e.to_string()),
            Error::NotMaximumSubmodular { .. } | Error::NotUltrametric(..) | Error::Hypothesis(_) => {
                Failure::Violation(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let mut report = String::new();
    match execute(&cli, &mut report) {
        Ok(artifact) => {
            let _ = out.write_all(report.as_bytes());
            if let Some(text) = artifact {
                if let Err(e) = emit(&cli.opts, &text, out) {
                    let _ = writeln!(err, "error: {}", e.message());
                    return e.code();
                }
            }
            0
        }
        Err(f) => {
            let _ = out.write_all(report.as_bytes());
            let label = match f {
                Failure::Violation(_) => "violation",
                Failure::Cap(_) => "size cap",
                Failure::Input(_) => "error",
            };
            if matches!(f, Failure::Violation(_)) {
                let _ = writeln!(out, "{label}: {}", f.message());
            } else {
                let _ = writeln!(err, "{label}: {}", f.message());
            }
            f.code()
        }
    }
}

fn emit(opts: &Options, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match &opts.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("cannot write output: {e}"))),
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn infer_format(path: &Path, text: &str) -> CliResult<InputFormat> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok(if v.get("steps").is_some() {
            InputFormat::Dendogram
        } else if v.get("values").is_some() {
            InputFormat::Tabulated
        } else if v.get("gamma").is_some() {
            InputFormat::PreDecomposition
        } else if v.get("edges").is_some() {
            InputFormat::Graph
        } else {
            return Err(Failure::Input(format!("cannot tell the format of {}", path.display())));
        });
    }
    Ok(match io::read_matrix_csv_raw(text) {
        Ok(_) if text.trim_start().starts_with("label") => InputFormat::Matrix,
        _ => InputFormat::Points,
    })
}

/// Input text with its (given or inferred) format.
fn load(path: Option<&PathBuf>, format: Option<InputFormat>) -> CliResult<(String, InputFormat)> {
    let path = path.ok_or_else(|| Failure::Input("--input is required".into()))?;
    let text = read_file(path)?;
    let format = match format {
        Some(f) => f,
        None => infer_format(path, &text)?,
    };
    Ok((text, format))
}

fn check_max_n(opts: &Options, n: usize) -> CliResult<()> {
    match opts.max_n {
        Some(cap) if n > cap => Err(Failure::Cap(format!("input has {n} points, --max-n is {cap}"))),
        _ => Ok(()),
    }
}

fn matrix_from(text: &str, format: InputFormat) -> CliResult<DistanceMatrix> {
    match format {
        InputFormat::Points => Ok(distance_matrix_from_points(&io::read_points_csv(text)?)?),
        InputFormat::Matrix => Ok(io::read_matrix_csv(text)?),
        other => Err(Failure::Input(format!("expected points or matrix input, got {other:?}"))),
    }
}

fn input_matrix(opts: &Options) -> CliResult<DistanceMatrix> {
    let (text, format) = load(opts.input.as_ref(), opts.format)?;
    let m = matrix_from(&text, format)?;
    check_max_n(opts, m.n())?;
    Ok(m)
}

/// A connectivity function with names for its ground set.
struct Loaded {
    f: BuiltinKind,
    labels: Vec<String>,
}

fn function_from(opts: &Options, text: &str, format: InputFormat) -> CliResult<Loaded> {
    let loaded = match (opts.function, format) {
        (FunctionName::Nu, InputFormat::Graph) => {
            let g = io::read_graph_json(text)?;
            let labels = (0..g.edges.len()).map(|e| g.edge_label(e)).collect();
            Loaded {
                f: BuiltinKind::VertexConnectivity(VertexConnectivity::new(g)),
                labels,
            }
        }
        (FunctionName::Nu, _) => return Err(Failure::Input("--function nu needs graph input".into())),
        (_, InputFormat::Tabulated) => {
            let (t, labels) = io::read_tabulated_json(text)?;
            Loaded {
                f: BuiltinKind::Tabulated(t),
                labels,
            }
        }
        (FunctionName::Tabulated, _) => return Err(Failure::Input("--function tabulated needs tabulated input".into())),
        (name, InputFormat::Dendogram) if name == FunctionName::Mind => {
            let d = io::read_dendogram_json(text)?;
            let u = psi(&d)?.into_matrix();
            Loaded {
                labels: u.labels().to_vec(),
                f: BuiltinKind::MaxLinkage(MaxLinkage::new(u)),
            }
        }
        (name, fmt) => {
            let m = matrix_from(text, fmt)?;
            let f = match name {
                FunctionName::Mind => BuiltinKind::MaxLinkage(MaxLinkage::new(m.clone())),
                FunctionName::KappaDist => BuiltinKind::MinLinkage(MinLinkage::new(m.clone())),
                FunctionName::PhiDist => BuiltinKind::AverageLinkage(AverageLinkage::new(m.clone())),
                _ => unreachable!("handled above"),
            };
            Loaded {
                labels: m.labels().to_vec(),
                f,
            }
        }
    };
    check_max_n(opts, loaded.f.size())?;
    Ok(loaded)
}

fn input_function(opts: &Options) -> CliResult<Loaded> {
    let (text, format) = load(opts.input.as_ref(), opts.format)?;
    function_from(opts, &text, format)
}

fn threshold_radius(opts: &Options) -> CliResult<Option<f64>> {
    match (opts.radius, opts.order) {
        (Some(r), _) if r.is_nan() || r < 0.0 => Err(Failure::Input(format!("radius must be non-negative, got {r}"))),
        (Some(r), _) => Ok(Some(r)),
        (None, Some(k)) if !(k > 0.0) => Err(Failure::Input(format!("order must be positive, got {k}"))),
        (None, Some(k)) => Ok(Some(-k.ln())),
        (None, None) => Ok(None),
    }
}

fn names(x: Subset, labels: &[String]) -> String {
    let inner: Vec<&str> = x.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

fn order_text(r: f64) -> String {
    if r.is_infinite() {
        "0".to_string()
    } else {
        format!("exp(-{r})")
    }
}

fn execute(cli: &Cli, report: &mut String) -> CliResult<Option<String>> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Cluster => {
            let m = input_matrix(opts)?;
            let d = single_linkage_with_tolerance(&m, opts.tie_eps);
            Ok(Some(match opts.out_format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => io::write_dendogram_json(&d),
                OutputFormat::Newick => io::write_newick(&d),
                other => return Err(Failure::Input(format!("cluster cannot write {other:?}"))),
            }))
        }
        Command::Ultrametric => {
            let m = input_matrix(opts)?;
            Ok(Some(io::write_matrix_csv(&minimax_ultrametric(&m))))
        }
        Command::Tangles => {
            let loaded = input_function(opts)?;
            let mut catalog = enumerate_tangles(&loaded.f)?;
            if let Some(r) = threshold_radius(opts)? {
                catalog.entries = catalog.at_radius(r);
            }
            Ok(Some(io::write_catalog_json(&catalog, &loaded.labels)))
        }
        Command::BranchWidth => {
            let loaded = input_function(opts)?;
            let (r, d) = branch_width_exact_radius(&loaded.f)?;
            writeln!(report, "branch width: {} (radius {r})", order_text(r)).unwrap();
            Ok(Some(match opts.out_format.unwrap_or(OutputFormat::Dot) {
                OutputFormat::Dot => to_dot(d.as_pre(), &loaded.labels, Some(&loaded.f)),
                OutputFormat::Json => io::write_pre_decomposition_json(d.as_pre(), &loaded.labels),
                other => return Err(Failure::Input(format!("branch-width cannot write {other:?}"))),
            }))
        }
        Command::Exactify => exactify(opts, report),
        Command::Convert => {
            let (text, format) = load(opts.input.as_ref(), opts.format)?;
            match format {
                InputFormat::Dendogram => {
                    let d = io::read_dendogram_json(&text)?;
                    check_max_n(opts, d.n())?;
                    let u = psi(&d)?;
                    Ok(Some(io::write_matrix_csv(&u)))
                }
                InputFormat::Matrix => {
                    let m = io::read_matrix_csv(&text)?;
                    check_max_n(opts, m.n())?;
                    let u = Ultrametric::new(m)?;
                    let d = psi_inverse(&u);
                    Ok(Some(match opts.out_format.unwrap_or(OutputFormat::Json) {
                        OutputFormat::Newick => io::write_newick(&d),
                        _ => io::write_dendogram_json(&d),
                    }))
                }
                other => Err(Failure::Input(format!("convert expects a dendogram or matrix, got {other:?}"))),
            }
        }
        Command::Kappa => {
            let (text, format) = load(opts.input.as_ref(), opts.format)?;
            match format {
                InputFormat::Dendogram => {
                    let d = io::read_dendogram_json(&text)?;
                    check_max_n(opts, d.n())?;
                    let k = kappa_from_dendogram(&d)?;
                    let t = Tabulated::from_fn(&k)?;
                    Ok(Some(io::write_tabulated_json(&t, d.labels())))
                }
                InputFormat::Tabulated => {
                    let (t, labels) = io::read_tabulated_json(&text)?;
                    check_max_n(opts, t.size())?;
                    let d = dendogram_from_kappa_labelled(&t, labels)?;
                    Ok(Some(io::write_dendogram_json(&d)))
                }
                other => Err(Failure::Input(format!("kappa expects a dendogram or tabulated function, got {other:?}"))),
            }
        }
        Command::Check { what } => check(*what, opts, report).map(|()| None),
    }
}

fn exactify(opts: &Options, report: &mut String) -> CliResult<Option<String>> {
    let data = opts
        .data
        .as_ref()
        .ok_or_else(|| Failure::Input("exactify needs --data with the points, matrix or function".into()))?;
    let (data_text, data_format) = load(Some(data), opts.data_format)?;
    let loaded = function_from(opts, &data_text, data_format)?;
    let (text, _) = load(opts.input.as_ref(), Some(InputFormat::PreDecomposition))?;
    let named = io::read_pre_decomposition_json(&text, Some(&loaded.labels))?;
    let before = validate_pre_decomposition(&named.pre);
    writeln!(
        report,
        "inexact nodes before: {:?}, width radius before: {}",
        before.inexact_nodes,
        width_radius(&named.pre, &loaded.f)?
    )
    .unwrap();
    let mut d = exactness_transform(&named.pre, &loaded.f)?;
    if opts.prune {
        d = d.prune_empty_leaves().0;
    }
    writeln!(report, "width radius after: {}", width_radius(d.as_pre(), &loaded.f)?).unwrap();
    Ok(Some(match opts.out_format.unwrap_or(OutputFormat::Dot) {
        OutputFormat::Dot => to_dot(d.as_pre(), &loaded.labels, Some(&loaded.f)),
        OutputFormat::Json => io::write_pre_decomposition_json(d.as_pre(), &loaded.labels),
        other => return Err(Failure::Input(format!("exactify cannot write {other:?}"))),
    }))
}

fn violation(msg: String) -> Failure {
    Failure::Violation(msg)
}

fn check(what: CheckKind, opts: &Options, report: &mut String) -> CliResult<()> {
    match what {
        CheckKind::Metric | CheckKind::Ultrametric => {
            let (text, format) = load(opts.input.as_ref(), opts.format)?;
            let (labels, rows) = match format {
                InputFormat::Matrix => io::read_matrix_csv_raw(&text)?,
                InputFormat::Points => {
                    let m = distance_matrix_from_points(&io::read_points_csv(&text)?)?;
                    (m.labels().to_vec(), m.rows())
                }
                other => return Err(Failure::Input(format!("expected points or matrix input, got {other:?}"))),
            };
            check_max_n(opts, labels.len())?;
            let metric = validate_metric(&labels, &rows)?;
            if let Some(v) = metric.violations.first() {
                return Err(violation(format!("{} ({} violations in total)", v, metric.violations.len())));
            }
            writeln!(report, "pass: metric axioms hold on {} points", labels.len()).unwrap();
            if what == CheckKind::Ultrametric {
                let m = DistanceMatrix::new(labels.clone(), rows)?;
                if let Some((x, y, z)) = ultrametric_check(&m) {
                    return Err(violation(format!(
                        "strong triangle inequality fails: max(u({0},{1}), u({1},{2})) < u({0},{2})",
                        labels[x], labels[y], labels[z]
                    )));
                }
                writeln!(report, "pass: strong triangle inequality holds").unwrap();
            }
            Ok(())
        }
        CheckKind::Axioms => {
            let loaded = input_function(opts)?;
            let r = check_axioms(&loaded.f)?;
            if let Some(v) = r.violations.first() {
                return Err(violation(format!("{v}")));
            }
            writeln!(report, "pass: {} is normalized and symmetric", loaded.f.name()).unwrap();
            Ok(())
        }
        CheckKind::Submodular | CheckKind::MaxSubmodular => {
            let loaded = input_function(opts)?;
            let (property, name) = if what == CheckKind::Submodular {
                (Property::Submodular, "submodular")
            } else {
                (Property::MaxSubmodular, "maximum-submodular")
            };
            let f = &loaded.f;
            match find_violation(property, f)? {
                Some((x, y)) => Err(violation(format!(
                    "{} is not {name}: X={} Y={} f(X)={} f(Y)={} f(X∩Y)={} f(X∪Y)={}",
                    f.name(),
                    names(x, &loaded.labels),
                    names(y, &loaded.labels),
                    f.eval(x),
                    f.eval(y),
                    f.eval(x.intersection(y)),
                    f.eval(x.union(y)),
                ))),
                None => {
                    writeln!(report, "pass: {} is {name}", f.name()).unwrap();
                    Ok(())
                }
            }
        }
        CheckKind::Tangle => {
            let loaded = input_function(opts)?;
            let r = threshold_radius(opts)?.ok_or_else(|| Failure::Input("check tangle needs --radius or --order".into()))?;
            let core_text = opts
                .core
                .as_ref()
                .ok_or_else(|| Failure::Input("check tangle needs --core".into()))?;
            let mut core = Subset::EMPTY;
            for name in core_text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let i = loaded
                    .labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| Failure::Input(format!("unknown label `{name}` in --core")))?;
                core.insert(i);
            }
            let t = TangleDescriptor::new(r, core);
            let rep = verify_tangle(&loaded.f, &t)?;
            if !rep.passed() {
                return Err(violation(format!("core {} at radius {r}: {rep}", names(core, &loaded.labels))));
            }
            writeln!(
                report,
                "pass: core {} at order {} is a tangle",
                names(core, &loaded.labels),
                order_text(r)
            )
            .unwrap();
            Ok(())
        }
        CheckKind::Duality => {
            let loaded = input_function(opts)?;
            let rep = verify_duality(&loaded.f)?;
            writeln!(report, "tangle number: {} (radius {})", order_text(rep.tangle_radius), rep.tangle_radius).unwrap();
            writeln!(
                report,
                "branch width: {} (radius {})",
                order_text(rep.branch_width_radius),
                rep.branch_width_radius
            )
            .unwrap();
            if !rep.equal {
                return Err(violation("tangle number and branch width differ".into()));
            }
            let fam = SubsetFamily::singletons(loaded.f.size());
            let tn = rep.tangle_radius;
            if !matches!(construct_decomposition_over(&loaded.f, &fam, tn)?, DualityOutcome::Tangle(_)) {
                return Err(violation(format!("no tangle constructed at radius {tn}")));
            }
            match construct_decomposition_over(&loaded.f, &fam, tn.next_down())? {
                DualityOutcome::Decomposition(d) if width_radius(d.as_pre(), &loaded.f)? == rep.branch_width_radius => {}
                _ => return Err(violation("constructed decomposition does not attain the branch width".into())),
            }
            writeln!(report, "pass: tn = bw = {}", order_text(tn)).unwrap();
            Ok(())
        }
        CheckKind::Equivalence => check_equivalence(opts, report),
        CheckKind::Remark => check_remark(opts, report),
    }
}

fn check_equivalence(opts: &Options, report: &mut String) -> CliResult<()> {
    let (text, format) = load(opts.input.as_ref(), opts.format)?;
    if format == InputFormat::Dendogram {
        let d = io::read_dendogram_json(&text)?;
        check_max_n(opts, d.n())?;
        let rep = validate_dendogram(&d);
        if !rep.passed() {
            return Err(violation(rep.failures().join("; ")));
        }
        let back = dendogram_from_kappa(&kappa_from_dendogram(&d)?)?;
        if back != d {
            return Err(violation("dendogram is not recovered from its connectivity function".into()));
        }
        writeln!(report, "pass: dendogram recovered from its connectivity function").unwrap();
        return Ok(());
    }
    let m = matrix_from(&text, format)?;
    check_max_n(opts, m.n())?;
    let rep = block_tangle_correspondence(&m)?;
    if !rep.passed() {
        let mut msg = rep.failures.join("; ");
        if !rep.coincide {
            msg.insert_str(0, "blocks and tangles differ; ");
        }
        return Err(violation(msg));
    }
    writeln!(report, "pass: {} blocks match {} tangles", rep.blocks.len(), rep.catalog.entries.len()).unwrap();
    let f = MaxLinkage::new(m.clone());
    let d = dendogram_from_kappa_labelled(&f, m.labels().to_vec())?;
    if d != clustering::single_linkage(&m) {
        return Err(violation("dendogram of mind differs from single linkage".into()));
    }
    writeln!(report, "pass: separation ultrametric reproduces mind and single linkage").unwrap();
    Ok(())
}

fn check_remark(opts: &Options, report: &mut String) -> CliResult<()> {
    let mut instances = Vec::new();
    if opts.input.is_some() {
        instances.push(input_matrix(opts)?);
    } else {
        instances.push(crate::fixtures::seven_point_matrix());
        instances.push(crate::fixtures::line4_matrix());
        let mut rng = instances::rng(opts.seed);
        for n in 3..=6 {
            for _ in 0..5 {
                instances.push(instances::random_metric(&mut rng, n));
            }
        }
    }
    let mut failures = Vec::new();
    let mut cl = None;
    for (i, m) in instances.iter().enumerate() {
        if let Some((p, x)) = remarks::sl_partition_identity(m)? {
            failures.push(format!("single-linkage identity fails on instance {i} at {p:?} ({x:?})"));
        }
        if let Some((p, x)) = remarks::al_identity(m)? {
            failures.push(format!("average-linkage identity fails on instance {i} at {p:?}, block {x:?}"));
        }
        if cl.is_none() {
            cl = remarks::cl_mismatch(m)?.map(|c| (i, c));
        }
    }
    writeln!(report, "single- and average-linkage identities checked on {} instances", instances.len()).unwrap();
    match cl {
        Some((i, (p, lhs, rhs))) => writeln!(
            report,
            "complete linkage mismatch on instance {i}: partition {p:?}, min linkage {lhs}, -ln max kappa {rhs}"
        )
        .unwrap(),
        None => failures.push("no complete-linkage mismatch found".into()),
    }
    let small_ids: Vec<usize> = (0..instances.len()).filter(|&i| instances[i].n() <= 6).collect();
    let small: Vec<DistanceMatrix> = small_ids.iter().map(|&i| instances[i].clone()).collect();
    for (property, name) in [(Property::Submodular, "submodular"), (Property::MaxSubmodular, "maximum-submodular")] {
        match remarks::phi_violation(property, &small)? {
            Some((i, x, y)) => {
                writeln!(report, "phi-dist not {name} on instance {}: X={x:?} Y={y:?}", small_ids[i]).unwrap()
            }
            None => writeln!(report, "phi-dist: no {name} violation found").unwrap(),
        }
    }
    if remarks::phi_violation(Property::MaxSubmodular, &small)?.is_none() {
        failures.push("no phi-dist maximum-submodularity violation found".into());
    }
    let nu = remarks::nu_report(opts.max_edges)?;
    writeln!(report, "nu checked on {} graphs with at most {} edges", nu.graphs_checked, opts.max_edges).unwrap();
    if let Some((edges, x, y)) = &nu.submodular_failure {
        failures.push(format!("nu not submodular on {edges:?}: X={x:?} Y={y:?}"));
    }
    match &nu.max_submodular_violation {
        Some((edges, x, y)) => writeln!(report, "nu not maximum-submodular on {edges:?}: X={x:?} Y={y:?}").unwrap(),
        None => failures.push("no nu maximum-submodularity violation found".into()),
    }
    if failures.is_empty() {
        writeln!(report, "pass: remark suite").unwrap();
        Ok(())
    } else {
        Err(violation(failures.join("; ")))
    }
}
