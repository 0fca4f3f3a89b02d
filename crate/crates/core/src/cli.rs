//! Command-line front end: argument parsing, validation, dataset assembly and
//! output.
//!
//! Exit codes: 0 on success, 1 for invalid arguments, domain errors and I/O
//! failures, 2 when a numerical tolerance check fails.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{
    bulk_expansion, bulk_reexpanded_at_edge, edge_abscissa, edge_limit_density, edge_scale,
    matching_bracket,
};
use crate::contour::{density_via_contour, ContourSpec};
use crate::ensembles::{EnsembleKind, EnsembleSpec, HARD_EDGE_EPSILON};
use crate::error::Error;
use crate::exact_density::{density_curve, density_exact, moment, DensityCurve, Method};
use crate::output::{Format, Table};
use crate::report::{figure_table, linspace, scaling_report, scaling_table, Figure};

/// Largest relative kernel/contour gap accepted by `oracle-check`.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "unitary-density",
    version,
    about = "Exact and asymptotic eigenvalue densities of the GUE and LUE"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact finite-N density on an x grid
    Exact(CurveArgs),
    /// Bulk asymptotic expansion on an x grid
    Bulk(CurveArgs),
    /// Soft-edge expansion of the scaled density on a xi grid
    Edge(EdgeArgs),
    /// Bulk expansion re-expanded in edge variables (xi < 0)
    Match(EdgeArgs),
    /// Compare the kernel density against the contour-integral oracle
    OracleCheck(CurveArgs),
    /// Moments of the exact density by quadrature
    Moments(MomentArgs),
    /// Comparison datasets for the bulk and edge figures
    Figure(FigureArgs),
    /// Remainder scaling of the bulk and edge expansions
    ScalingReport(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleArg {
    Gue,
    Lue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WhichArg {
    GueBulk,
    LueBulk,
    GueEdge,
    LueEdge,
    All,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnsembleArgs {
    /// Ensemble
    #[arg(long, value_enum, default_value = "gue")]
    pub ensemble: EnsembleArg,
    /// Laguerre exponent (LUE only, > -1)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Matrix size N
    #[arg(long, default_value_t = 10)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Output file (directory for `figure --which all`); stdout when absent
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CurveArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Expansion order (bulk: 0 or 1)
    #[arg(long)]
    pub order: Option<u32>,
    /// Smallest LUE abscissa; grids are clamped to x >= epsilon
    #[arg(long, default_value_t = HARD_EDGE_EPSILON)]
    pub epsilon: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EdgeArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub ximin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ximax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Expansion order (edge: 0, 1 or 2)
    #[arg(long)]
    pub order: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    /// Highest moment order
    #[arg(long, default_value_t = 4)]
    pub max_p: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FigureArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub which: WhichArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure of a CLI run, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, domain violations, I/O problems (exit 1).
    Usage(String),
    /// A numerical tolerance check failed (exit 2).
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Tolerance(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Tolerance(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Quadrature { .. } | Error::ImaginaryResidue { .. } => {
                CliError::Tolerance(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn extension(f: FormatArg) -> &'static str {
    match f {
        FormatArg::Csv => "csv",
        FormatArg::Json => "json",
    }
}

fn to_spec(e: &EnsembleArgs) -> CliResult<EnsembleSpec> {
    if !e.alpha.is_finite() {
        return Err(usage(format!("--alpha must be finite, got {}", e.alpha)));
    }
    let kind = match e.ensemble {
        EnsembleArg::Gue => EnsembleKind::Gue,
        EnsembleArg::Lue => EnsembleKind::Lue,
    };
    EnsembleSpec::new(kind, e.alpha, e.n).map_err(|err| usage(err.to_string()))
}

fn check_grid(lo: f64, hi: f64, points: usize, lo_name: &str, hi_name: &str) -> CliResult<()> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(usage(format!("{lo_name} and {hi_name} must be finite")));
    }
    if points == 0 {
        return Err(usage("--points must be at least 1"));
    }
    if points > 1_000_000 {
        return Err(usage("--points is capped at 1000000"));
    }
    if points == 1 && lo != hi {
        return Err(usage(format!("a single point needs {lo_name} == {hi_name}")));
    }
    if points > 1 && !(lo < hi) {
        return Err(usage(format!("{lo_name} ({lo}) must be below {hi_name} ({hi})")));
    }
    Ok(())
}

/// Output destination resolved before any computation.
fn emit(table: &Table, output: &OutputArgs) -> CliResult<()> {
    let text = table.render(format_of(output.format));
    match &output.out {
        Some(path) => write_file(path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn check_out_file(output: &OutputArgs) -> CliResult<()> {
    if let Some(path) = &output.out {
        if path.is_dir() {
            return Err(usage(format!("--out {} is a directory", path.display())));
        }
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() && !parent.is_dir() {
                return Err(usage(format!(
                    "cannot write {}: parent directory does not exist",
                    path.display()
                )));
            }
        }
    }
    Ok(())
}

fn curve_table(curve: &DensityCurve, x_label: &str, config: serde_json::Value) -> Table {
    let mut t = Table::new(&[x_label, "value"]);
    for (x, v) in curve.grid.iter().zip(&curve.values) {
        t.push(vec![(*x).into(), (*v).into()]);
    }
    t.meta("spec", curve.spec);
    t.meta("method", curve.method);
    t.meta("order", curve.order);
    t.meta("negative_count", curve.negative_count);
    t.with_config(config)
}

fn config_echo(command: &str, args: &impl Serialize) -> serde_json::Value {
    let mut v = serde_json::to_value(args).expect("arguments serialize");
    if let serde_json::Value::Object(m) = &mut v {
        m.insert("command".into(), command.into());
    }
    v
}

struct Grid {
    lo: f64,
    hi: f64,
    points: usize,
}

fn x_grid(args: &CurveArgs, spec: &EnsembleSpec, defaults: (f64, f64, f64, f64, usize)) -> CliResult<Grid> {
    if !(args.epsilon > 0.0 && args.epsilon.is_finite()) {
        return Err(usage(format!("--epsilon must be positive, got {}", args.epsilon)));
    }
    let (glo, ghi, llo, lhi, pts) = defaults;
    let (dlo, dhi) = match spec.kind {
        EnsembleKind::Gue => (glo, ghi),
        EnsembleKind::Lue => (llo, lhi),
    };
    let mut lo = args.xmin.unwrap_or(dlo);
    let hi = args.xmax.unwrap_or(dhi);
    let points = args.points.unwrap_or(pts);
    if spec.kind == EnsembleKind::Lue && lo < args.epsilon {
        lo = args.epsilon;
    }
    check_grid(lo, hi, points, "--xmin", "--xmax")?;
    Ok(Grid { lo, hi, points })
}

fn run_exact(args: &CurveArgs) -> CliResult<()> {
    let spec = to_spec(&args.ensemble)?;
    if args.order.unwrap_or(0) != 0 {
        return Err(usage("exact takes no --order"));
    }
    let g = x_grid(args, &spec, (-1.2, 1.2, HARD_EDGE_EPSILON, 1.3, 201))?;
    check_out_file(&args.output)?;
    let curve = density_curve(&spec, &linspace(g.lo, g.hi, g.points), Method::ExactKernel, 0)?;
    emit(&curve_table(&curve, "x", config_echo("exact", args)), &args.output)
}

fn run_bulk(args: &CurveArgs) -> CliResult<()> {
    let spec = to_spec(&args.ensemble)?;
    let order = args.order.unwrap_or(1);
    if order > 1 {
        return Err(usage(format!("bulk --order must be 0 or 1, got {order}")));
    }
    let g = x_grid(args, &spec, (-0.9, 0.9, 0.1, 0.9, 181))?;
    check_out_file(&args.output)?;
    let curve = density_curve(
        &spec,
        &linspace(g.lo, g.hi, g.points),
        Method::BulkAsymptotic,
        order,
    )?;
    emit(&curve_table(&curve, "x", config_echo("bulk", args)), &args.output)
}

fn run_edge(args: &EdgeArgs) -> CliResult<()> {
    let spec = to_spec(&args.ensemble)?;
    let order = args.order.unwrap_or(2);
    if order > 2 {
        return Err(usage(format!("edge --order must be 0, 1 or 2, got {order}")));
    }
    let lo = args.ximin.unwrap_or(-4.0);
    let hi = args.ximax.unwrap_or(2.0);
    let points = args.points.unwrap_or(121);
    check_grid(lo, hi, points, "--ximin", "--ximax")?;
    check_out_file(&args.output)?;
    let curve = density_curve(&spec, &linspace(lo, hi, points), Method::EdgeAsymptotic, order)?;
    emit(&curve_table(&curve, "xi", config_echo("edge", args)), &args.output)
}

fn run_match(args: &EdgeArgs) -> CliResult<()> {
    let spec = to_spec(&args.ensemble)?;
    if args.order.is_some() {
        return Err(usage("match takes no --order"));
    }
    let lo = args.ximin.unwrap_or(-6.0);
    let hi = args.ximax.unwrap_or(-1.0);
    let points = args.points.unwrap_or(51);
    check_grid(lo, hi, points, "--ximin", "--ximax")?;
    if !(hi < 0.0) {
        return Err(usage(format!("match needs --ximax < 0, got {hi}")));
    }
    check_out_file(&args.output)?;
    let mut t = Table::new(&["xi", "bulk", "reexpanded", "edge_limit", "bracket"]);
    let scale = 2.0 * edge_scale(&spec);
    for xi in linspace(lo, hi, points) {
        let x = edge_abscissa(&spec, xi);
        let bulk = bulk_expansion(&spec, x, 1)?.truncated_sum * scale;
        t.push(vec![
            xi.into(),
            bulk.into(),
            bulk_reexpanded_at_edge(&spec, xi)?.into(),
            (2.0 * edge_limit_density(xi)?).into(),
            matching_bracket(xi).into(),
        ]);
    }
    t.meta("spec", spec);
    emit(&t.with_config(config_echo("match", args)), &args.output)
}

fn run_oracle_check(args: &CurveArgs) -> CliResult<()> {
    let spec = to_spec(&args.ensemble)?;
    if args.order.is_some() {
        return Err(usage("oracle-check takes no --order"));
    }
    if spec.n > crate::contour::CONTOUR_MAX_N {
        return Err(usage(format!(
            "oracle-check supports N <= {}",
            crate::contour::CONTOUR_MAX_N
        )));
    }
    let g = x_grid(args, &spec, (-0.9, 0.9, 0.1, 0.9, 50))?;
    check_out_file(&args.output)?;
    let contour = ContourSpec::default();
    let mut t = Table::new(&["x", "kernel", "contour", "rel_gap"]);
    let mut worst: f64 = 0.0;
    for x in linspace(g.lo, g.hi, g.points) {
        let k = density_exact(&spec, x)?;
        let c = density_via_contour(&spec, x, &contour)?;
        let gap = ((k - c) / k).abs();
        worst = worst.max(gap);
        t.push(vec![x.into(), k.into(), c.into(), gap.into()]);
    }
    t.meta("spec", spec);
    t.meta("max_rel_gap", worst);
    t.meta("tolerance", ORACLE_TOLERANCE);
    emit(&t.with_config(config_echo("oracle-check", args)), &args.output)?;
    if !(worst <= ORACLE_TOLERANCE) {
        return Err(CliError::Tolerance(format!(
            "kernel and contour densities differ by {worst:.3e} > {ORACLE_TOLERANCE:.0e}"
        )));
    }
    Ok(())
}

fn run_moments(args: &MomentArgs) -> CliResult<()> {
    let spec = to_spec(&args.ensemble)?;
    if args.max_p > 20 {
        return Err(usage(format!("--max-p must be <= 20, got {}", args.max_p)));
    }
    check_out_file(&args.output)?;
    let mut t = Table::new(&["p", "value", "quadrature_error_estimate"]);
    for p in 0..=args.max_p {
        let m = moment(&spec, p)?;
        t.push(vec![p.into(), m.value.into(), m.quadrature_error_estimate.into()]);
    }
    t.meta("spec", spec);
    emit(&t.with_config(config_echo("moments", args)), &args.output)
}

fn run_figure(args: &FigureArgs) -> CliResult<()> {
    let figs: Vec<Figure> = match args.which {
        WhichArg::GueBulk => vec![Figure::GueBulk],
        WhichArg::LueBulk => vec![Figure::LueBulk],
        WhichArg::GueEdge => vec![Figure::GueEdge],
        WhichArg::LueEdge => vec![Figure::LueEdge],
        WhichArg::All => Figure::ALL.to_vec(),
    };
    let multi = figs.len() > 1;
    if multi {
        match &args.output.out {
            Some(dir) if dir.is_dir() => {}
            Some(dir) => {
                return Err(usage(format!(
                    "figure --which all needs --out to be an existing directory, got {}",
                    dir.display()
                )))
            }
            None => return Err(usage("figure --which all needs --out <directory>")),
        }
    } else {
        check_out_file(&args.output)?;
    }
    for fig in figs {
        let t = figure_table(fig)?.with_config(config_echo("figure", args));
        if multi {
            let dir = args.output.out.as_ref().expect("checked above");
            let path = dir.join(format!("{}.{}", fig.name(), extension(args.output.format)));
            write_file(&path, &t.render(format_of(args.output.format)))?;
        } else {
            emit(&t, &args.output)?;
        }
    }
    Ok(())
}

fn run_scaling(args: &OutputArgs) -> CliResult<()> {
    check_out_file(args)?;
    let rows = scaling_report()?;
    let t = scaling_table(&rows).with_config(config_echo("scaling-report", args));
    emit(&t, args)?;
    for r in &rows {
        eprintln!("{}", r.verdict_line());
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CliError::Tolerance(format!(
            "{failed} scaling criteria outside their ratio window"
        )));
    }
    Ok(())
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> std::result::Result<(), CliError> {
    match &cli.command {
        Command::Exact(a) => run_exact(a),
        Command::Bulk(a) => run_bulk(a),
        Command::Edge(a) => run_edge(a),
        Command::Match(a) => run_match(a),
        Command::OracleCheck(a) => run_oracle_check(a),
        Command::Moments(a) => run_moments(a),
        Command::Figure(a) => run_figure(a),
        Command::ScalingReport(a) => run_scaling(a),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("unitary-density").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_negative_bounds() {
        let cli = parse(&["exact", "--xmin", "-1.2", "--xmax", "1.2", "--points", "801"]);
        match cli.command {
            Command::Exact(a) => {
                assert_eq!(a.xmin, Some(-1.2));
                assert_eq!(a.points, Some(801));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn validation_codes() {
        let bad = [
            vec!["exact", "--n", "0"],
            vec!["exact", "--ensemble", "lue", "--alpha", "-1.5"],
            vec!["exact", "--xmin", "1", "--xmax", "0"],
            vec!["bulk", "--order", "2"],
            vec!["edge", "--order", "3"],
            vec!["match", "--ximax", "1"],
            vec!["exact", "--ensemble", "lue", "--epsilon", "0"],
            vec!["moments", "--max-p", "21"],
            vec!["figure"],
            vec!["exact", "--out", "/nonexistent-dir/x.csv"],
            vec!["bogus"],
        ];
        for args in bad {
            let code = run(std::iter::once("unitary-density").chain(args.iter().copied()));
            assert_eq!(code, 1, "{args:?}");
        }
    }

    #[test]
    fn lue_grid_is_clamped() {
        let cli = parse(&["exact", "--ensemble", "lue", "--alpha", "0.5", "--xmin", "0"]);
        if let Command::Exact(a) = cli.command {
            let spec = to_spec(&a.ensemble).unwrap();
            let g = x_grid(&a, &spec, (-1.2, 1.2, HARD_EDGE_EPSILON, 1.3, 201)).unwrap();
            assert_eq!(g.lo, HARD_EDGE_EPSILON);
        } else {
            panic!();
        }
    }

    #[test]
    fn config_echo_omits_output_path() {
        let cli = parse(&["moments", "--out", "/tmp/a.csv"]);
        if let Command::Moments(a) = cli.command {
            let v = config_echo("moments", &a);
            assert_eq!(v["command"], "moments");
            assert!(!v.to_string().contains("/tmp/a.csv"));
            assert_eq!(v["output"]["format"], "csv");
        } else {
            panic!();
        }
    }
}
