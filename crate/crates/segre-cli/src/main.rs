//! Command-line pipeline for twisted product computations.
//!
//! Every stage command reads the same composite input file (the two side
//! presentations plus the twist seed), recomputes what it needs from
//! earlier stages, and emits one deterministic report. `report` merges the
//! emitted stage files into a single document.
//!
//! Exit codes: 0 when the stage passes, 1 for input or configuration
//! errors, 2 when a mathematical validation fails.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use segre_core::clifford::{clifford_algebra, evaluate_t_elements, stabilize, CliffordAlgebra};
use segre_core::findim::verify_explicit_iso;
use segre_core::json as exchange;
use segre_core::normality::{regularity_window, verify_normal};
use segre_core::segre::{
    cross_validate, cross_validate_presentation, density_window_check, segre_presentation,
    SmashTruncation,
};
use segre_core::twist::{validate_descent, Twist2x2, TwistData};
use segre_core::{FreeElement, MatrixPair, QuadraticPresentation, Scalar, Word};

const DEFAULT_SEED: u64 = 20260821;

#[derive(Debug, Parser)]
#[command(name = "segre")]
#[command(about = "twisted product pipeline with deterministic JSON reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the stored twist seed satisfies the descent conditions
    ValidateTwist(JobArgs),
    /// Present the twisted product with its dimension table
    Segre(JobArgs),
    /// Present the quadratic dual of the twisted product
    Dual(JobArgs),
    /// Certify a normal element of the dual with its regularity window
    Normal(JobArgs),
    /// Stabilize the dual along the normal element and emit the quotient
    Clifford(JobArgs),
    /// Classify the stable quotient (radical, center, block structure)
    Analyze(JobArgs),
    /// Merge stage reports from a directory into one document
    Report(JobArgs),
}

impl Command {
    fn job(&self) -> &JobArgs {
        match self {
            Command::ValidateTwist(a)
            | Command::Segre(a)
            | Command::Dual(a)
            | Command::Normal(a)
            | Command::Clifford(a)
            | Command::Analyze(a)
            | Command::Report(a) => a,
        }
    }
}

#[derive(Debug, Args)]
struct JobArgs {
    /// Composite input file, or the stage directory for `report`
    #[arg(long)]
    input: PathBuf,

    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,

    /// Degree horizon for dimension tables and window checks
    #[arg(long, default_value_t = 6)]
    max_degree: usize,

    /// Even-degree horizon for the stabilization scan
    #[arg(long, default_value_t = 6)]
    max_stab: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Matrix-pair assignment file for the explicit isomorphism check
    #[arg(long)]
    assignment: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Marker for failures of the mathematics rather than of the plumbing;
/// these exit with code 2.
#[derive(Debug)]
struct MathFailure(String);

impl fmt::Display for MathFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for MathFailure {}

fn math(stage: &str, err: impl fmt::Display) -> anyhow::Error {
    anyhow::Error::new(MathFailure(format!("{stage}: {err}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            if err.downcast_ref::<MathFailure>().is_some() {
                eprintln!("{err}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {err:#}");
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: &Command) -> Result<bool> {
    let args = command.job();
    if args.max_degree < 2 {
        bail!("--max-degree must be at least 2");
    }
    let (report, pass) = match command {
        Command::ValidateTwist(args) => cmd_validate_twist(args)?,
        Command::Segre(args) => cmd_segre(args)?,
        Command::Dual(args) => cmd_dual(args)?,
        Command::Normal(args) => cmd_normal(args)?,
        Command::Clifford(args) => cmd_clifford(args)?,
        Command::Analyze(args) => cmd_analyze(args)?,
        Command::Report(args) => cmd_report(args)?,
    };
    emit(args, &report)?;
    Ok(pass)
}

fn emit(args: &JobArgs, report: &Value) -> Result<()> {
    let rendered = match args.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(report)?),
        Format::Text => render_text(report),
    };
    match &args.output {
        Some(path) => fs::write(path, rendered)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn render_text(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (key, entry) in map {
            out.push_str(&format!(
                "{key}: {}\n",
                serde_json::to_string(entry).expect("report serializes")
            ));
        }
    } else {
        out.push_str(&format!("{value}\n"));
    }
    out
}

fn read_json(path: &Path) -> Result<Value> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_twist(path: &Path) -> Result<(TwistData, Value)> {
    let raw = read_json(path)?;
    let data = exchange::twist_input_from_json(&raw)
        .with_context(|| format!("interpreting {}", path.display()))?;
    Ok((data, raw))
}

fn product_of(data: &TwistData) -> Result<QuadraticPresentation> {
    Ok(segre_presentation(data)
        .map_err(|e| math("segre", e))?
        .presentation()
        .clone())
}

/// The distinguished degree-2 normal element of the dual for the
/// lower-triangular block family, read off the stored seed.
fn default_normal_element(data: &TwistData) -> Result<FreeElement> {
    let unsupported = || {
        anyhow::anyhow!(
            "the default normal element is only defined for 2x2 lower-triangular \
             diagonal-block seeds; supply an explicit \"element\" in the input"
        )
    };
    if data.seed().dim_v() != 2 || data.seed().dim_u() != 2 {
        return Err(unsupported());
    }
    let blocks = Twist2x2::from_seed(data.seed()).map_err(|_| unsupported())?;
    if !blocks.is_diagonal_shape()
        || !blocks.c().is_lower_triangular()
        || !blocks.q().is_lower_triangular()
    {
        return Err(unsupported());
    }
    let element = FreeElement::from_terms(
        2,
        [
            (Word::new(vec![2, 1]), blocks.q().get(1, 1).clone()),
            (Word::new(vec![1, 3]), blocks.c().get(1, 0).clone()),
            (Word::new(vec![1, 2]), blocks.c().get(0, 0).clone()),
        ],
    )
    .expect("degree-2 element");
    Ok(element)
}

fn normal_element(data: &TwistData, raw: &Value, dual: &QuadraticPresentation) -> Result<FreeElement> {
    match raw.get("element") {
        Some(v) => Ok(exchange::element_from_json(v, dual.gens(), "element")?),
        None => default_normal_element(data),
    }
}

fn cmd_validate_twist(args: &JobArgs) -> Result<(Value, bool)> {
    let (data, _) = load_twist(&args.input)?;
    let block_conditions = if data.seed().dim_v() == 2 && data.seed().dim_u() == 2 {
        match Twist2x2::from_seed(data.seed()) {
            Ok(blocks) => Some(
                blocks
                    .validate()
                    .map_err(|e| math("validate-twist", e))?
                    .pass(),
            ),
            Err(_) => None,
        }
    } else {
        None
    };
    let descent = validate_descent(&data, args.max_degree)
        .map_err(|e| math("validate-twist", e))?;
    let pass = descent.pass() && block_conditions.unwrap_or(true);
    let report = json!({
        "blockConditions": block_conditions,
        "descentPass": descent.pass(),
        "maxDegree": args.max_degree,
        "pass": pass,
    });
    Ok((report, pass))
}

fn cmd_segre(args: &JobArgs) -> Result<(Value, bool)> {
    let (data, raw) = load_twist(&args.input)?;
    let pres = product_of(&data)?;
    let hilbert = pres
        .hilbert_series(args.max_degree)
        .map_err(|e| math("segre", e))?;
    let cross = match raw.get("candidate") {
        Some(v) => {
            let candidate = exchange::presentation_from_json(v)
                .context("interpreting the candidate presentation")?;
            cross_validate_presentation(&candidate, &data, args.max_degree)
                .map_err(|e| math("segre", e))?
        }
        None => cross_validate(&data, args.max_degree).map_err(|e| math("segre", e))?,
    };
    let window_b = args.max_degree.min(4);
    let trunc =
        SmashTruncation::build(&data, 2, window_b).map_err(|e| math("segre", e))?;
    let covered = density_window_check(&trunc, 1, -1)
        .map_err(|e| math("segre", e))?
        .pass();
    let exact = density_window_check(&trunc, 1, 1)
        .map_err(|e| math("segre", e))?
        .pass();
    let pass = cross.pass() && covered && exact;
    let report = json!({
        "presentation": exchange::presentation_to_json(&pres),
        "hilbert": hilbert,
        "crossValidated": cross.pass(),
        "window": {
            "covered": covered,
            "exact": exact,
            "maxB": window_b,
            "pass": covered && exact,
        },
        "maxDegree": args.max_degree,
        "pass": pass,
    });
    Ok((report, pass))
}

fn cmd_dual(args: &JobArgs) -> Result<(Value, bool)> {
    let (data, _) = load_twist(&args.input)?;
    let pres = product_of(&data)?;
    let dual = pres.quadratic_dual();
    let hilbert = dual
        .hilbert_series(args.max_degree)
        .map_err(|e| math("dual", e))?;
    let pairing = pres
        .koszul_series_check(args.max_degree)
        .map_err(|e| math("dual", e))?;
    let report = json!({
        "presentation": exchange::presentation_to_json(&dual),
        "hilbert": hilbert,
        "seriesPairing": pairing,
        "maxDegree": args.max_degree,
        "pass": pairing,
    });
    Ok((report, pairing))
}

fn cmd_normal(args: &JobArgs) -> Result<(Value, bool)> {
    let (data, raw) = load_twist(&args.input)?;
    let dual = product_of(&data)?.quadratic_dual();
    let element = normal_element(&data, &raw, &dual)?;
    let cert = verify_normal(&dual, &element).map_err(|e| math("normal", e))?;
    let window = regularity_window(&dual, &element, args.max_degree)
        .map_err(|e| math("normal", e))?;
    let pass = window.pass();
    let report = json!({
        "certificate": exchange::certificate_to_json(&cert, dual.gens(), pass),
        "maxDegree": args.max_degree,
        "pass": pass,
    });
    Ok((report, pass))
}

fn build_clifford(args: &JobArgs) -> Result<(TwistData, CliffordAlgebra, Value)> {
    let (data, raw) = load_twist(&args.input)?;
    let dual = product_of(&data)?.quadratic_dual();
    let element = normal_element(&data, &raw, &dual)?;
    let cert = verify_normal(&dual, &element).map_err(|e| math("clifford", e))?;
    let stab = stabilize(&dual, &cert, args.max_stab).map_err(|e| math("clifford", e))?;
    let cliff = clifford_algebra(&dual, &cert, &stab).map_err(|e| math("clifford", e))?;
    let stab_json = json!({ "i0": stab.i0, "dims": stab.dims });
    Ok((data, cliff, stab_json))
}

fn cmd_clifford(args: &JobArgs) -> Result<(Value, bool)> {
    let (_, cliff, stab_json) = build_clifford(args)?;
    let report = json!({
        "stabilization": stab_json,
        "algebra": exchange::structure_constants_to_json(cliff.base()),
        "maxStab": args.max_stab,
        "maxDegree": args.max_degree,
        "pass": true,
    });
    Ok((report, true))
}

fn read_assignment(path: &Path, elements: &[Vec<Scalar>]) -> Result<Vec<(Vec<Scalar>, MatrixPair)>> {
    let raw = read_json(path)?;
    let pairs = raw
        .get("assignment")
        .and_then(Value::as_array)
        .with_context(|| format!("{}: expected an \"assignment\" list", path.display()))?;
    if pairs.len() != elements.len() {
        bail!(
            "{}: assignment has {} pairs, the stable quotient basis has {}",
            path.display(),
            pairs.len(),
            elements.len()
        );
    }
    let mut assignment = Vec::with_capacity(pairs.len());
    for (element, pair) in elements.iter().zip(pairs) {
        let first = pair
            .get("first")
            .context("assignment pair missing \"first\"")?;
        let second = pair
            .get("second")
            .context("assignment pair missing \"second\"")?;
        let images = MatrixPair {
            first: exchange::matrix_from_json(first, "first")?,
            second: exchange::matrix_from_json(second, "second")?,
        };
        assignment.push((element.clone(), images));
    }
    Ok(assignment)
}

fn cmd_analyze(args: &JobArgs) -> Result<(Value, bool)> {
    let (data, cliff, _) = build_clifford(args)?;
    let blocks = Twist2x2::from_seed(data.seed()).map_err(|e| math("analyze", e))?;
    let t = evaluate_t_elements(&cliff, &blocks).map_err(|e| math("analyze", e))?;
    let base = cliff.base();
    let semisimple = base.radical().dim() == 0;
    let center_dim = base.center().dim();
    let block_sizes = if semisimple {
        match base
            .wedderburn_type(twist_seed()?)
            .map_err(|e| math("analyze", e))?
        {
            segre_core::WedderburnOutcome::Split { blocks } => Some(blocks),
            segre_core::WedderburnOutcome::NotSplitOverRationals => None,
        }
    } else {
        None
    };
    let iso_verified = match &args.assignment {
        Some(path) => {
            let assignment = read_assignment(path, &t.elements)?;
            Some(verify_explicit_iso(base, &assignment).map_err(|e| math("analyze", e))?)
        }
        None => None,
    };
    let pass = iso_verified != Some(false);
    let mut report = exchange::analysis_to_json(
        semisimple,
        center_dim,
        block_sizes.as_deref(),
        iso_verified,
    );
    if let Value::Object(map) = &mut report {
        map.insert("maxDegree".into(), json!(args.max_degree));
        map.insert("pass".into(), json!(pass));
    }
    Ok((report, pass))
}

fn cmd_report(args: &JobArgs) -> Result<(Value, bool)> {
    const STAGES: [(&str, &str); 6] = [
        ("validate-twist", "twistValidation"),
        ("segre", "productRelations"),
        ("dual", "koszulDual"),
        ("normal", "normalElement"),
        ("clifford", "cliffordClassification"),
        ("analyze", "structureAnalysis"),
    ];
    if !args.input.is_dir() {
        bail!("{}: report input must be a directory", args.input.display());
    }
    let mut stages = serde_json::Map::new();
    let mut summary = serde_json::Map::new();
    let mut missing = Vec::new();
    let mut degrees = Vec::new();
    for (file, key) in STAGES {
        let path = args.input.join(format!("{file}.json"));
        if !path.exists() {
            missing.push(file.to_string());
            summary.insert(key.into(), json!("absent"));
            continue;
        }
        let doc = read_json(&path)?;
        let verdict = match doc.get("pass").and_then(Value::as_bool) {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "absent",
        };
        summary.insert(key.into(), json!(verdict));
        if key == "productRelations" {
            let window = doc
                .pointer("/window/pass")
                .and_then(Value::as_bool)
                .map(|p| if p { "pass" } else { "fail" })
                .unwrap_or("absent");
            summary.insert("densityWindow".into(), json!(window));
        }
        if let Some(d) = doc.get("maxDegree").and_then(Value::as_u64) {
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
        stages.insert(key.into(), doc);
    }
    if !summary.contains_key("densityWindow") {
        summary.insert("densityWindow".into(), json!("absent"));
    }
    let report = json!({
        "summary": Value::Object(summary),
        "stages": Value::Object(stages),
        "missing": missing,
        "maxDegreeConflict": degrees.len() > 1,
    });
    Ok((report, true))
}

fn twist_seed() -> Result<u64> {
    match std::env::var("SEGRE_TWIST_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .context("SEGRE_TWIST_SEED must be an unsigned integer"),
        Err(_) => Ok(DEFAULT_SEED),
    }
}
