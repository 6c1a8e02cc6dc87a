use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use logcontact::chow::program::parse_program;
use logcontact::chow::NormalConvention;
use logcontact::constructions::schema::{emit_atlas, load_atlas};
use logcontact::constructions::{
    arrangement_splitting, jet_b_contact_form, nonstandard_atlas, paper_suite, standard_atlas, Atlas,
    ConventionChoice, Correction, SuiteOptions,
};
use logcontact::logcalc::contact_check;
use logcontact::p1bundles::{
    ext1_dim, extension_rank_plus_rule, quotient_by_trivials_rule, rank_plus_bound_check, selfdual_shape,
    SplittingType,
};
use logcontact::params::ConstructionParams;

/// Exact verification of logarithmic contact and symplectic structures.
#[derive(Debug, Parser)]
#[command(name = "logcontact", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the contact check on every form of an atlas.
    VerifyContact {
        atlas: PathBuf,
        /// Rank: forms live on charts of dimension 2r+1, or 2r+2 if conic.
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Check that the forms of an atlas agree on every transition.
    Glue {
        atlas: PathBuf,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Run a Chern class program.
    Chern { program: PathBuf },
    /// Splitting-type arithmetic on P¹.
    Splitting(SplittingArgs),
    /// Emit the atlas of a built-in construction as JSON.
    Construct(ConstructArgs),
    /// Run every verification and report one line per check.
    PaperSuite(SuiteArgs),
}

#[derive(Debug, Args)]
struct JsonOut {
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SplittingOp {
    #[value(name = "rank+")]
    RankPlus,
    Degree,
    Dual,
    Twist,
    Ext1,
    Extension,
    Quotient,
    Selfdual,
    Bound,
    Arrangement,
}

#[derive(Debug, Args)]
struct SplittingArgs {
    op: SplittingOp,
    /// Splitting type, e.g. "2,0,-1". The quotient for ext1, `E1` otherwise.
    #[arg(long, allow_hyphen_values = true)]
    split: Option<SplittingType>,
    /// Second splitting type: the sub for ext1, `E2` for extension and quotient.
    #[arg(long, allow_hyphen_values = true)]
    other: Option<SplittingType>,
    /// Twist for twist, the line bundle degree for selfdual.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Number of trivial summands for quotient.
    #[arg(long)]
    m: Option<usize>,
    /// Rank for bound.
    #[arg(long)]
    r: Option<usize>,
    /// Dimension of the projective space for arrangement.
    #[arg(long)]
    n: Option<usize>,
    /// Number of hyperplanes in general position for arrangement.
    #[arg(long)]
    s: Option<usize>,
    /// Treat the sequence as nonsplit.
    #[arg(long)]
    nonsplit: bool,
    /// The curve misses the boundary.
    #[arg(long)]
    boundary_free: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Standard,
    Nonstandard,
    Jet,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    kind: Kind,
    /// Rank; for jet, the number of `q` coordinates.
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// Base change, one expression per base coordinate.
    #[arg(long, num_args = 1..)]
    base: Option<Vec<String>>,
    /// Transition functions `g_l`, one per line bundle.
    #[arg(long, num_args = 1..)]
    g: Option<Vec<String>>,
    /// Drop the correction term of the fiber coordinates.
    #[arg(long)]
    no_correction: bool,
    /// Write the atlas here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    #[command(flatten)]
    out: JsonOut,
    /// Residue convention on P³: OD, OD(D) or both.
    #[arg(long, default_value = "OD(D)", value_parser = parse_convention)]
    convention: ConventionChoice,
    /// Grid bounds, e.g. rmax=3.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<usize>,
    /// Random instances per calculus identity.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = SuiteOptions::default().seed)]
    seed: u64,
    /// Compare top coefficients against the opposite orientation.
    #[arg(long)]
    flip_orientation: bool,
}

fn parse_convention(s: &str) -> Result<ConventionChoice, String> {
    if s == "both" {
        return Ok(ConventionChoice::Both);
    }
    NormalConvention::from_label(s)
        .map(ConventionChoice::Single)
        .ok_or_else(|| format!("unknown convention `{s}`; use OD, OD(D) or both"))
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let value = s.strip_prefix("rmax=").ok_or("expected rmax=<n>")?;
    match value.parse() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("`{value}` is not a positive integer")),
    }
}

/// A command failure with its exit code.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "error: {e:#}"),
            Failure::Internal(e) => write!(f, "internal error: {e:#}"),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.into()))?;
    fs::write(path, text + "\n")
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::Input)
}

fn load(path: &Path) -> Result<Atlas, Failure> {
    load_atlas(&read(path)?)
        .with_context(|| format!("in {}", path.display()))
        .map_err(Failure::Input)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify_contact(path: &Path, r: usize, out: &JsonOut) -> Outcome {
    let atlas = load(path)?;
    if atlas.forms().is_empty() {
        return Err(input(anyhow!("the atlas carries no forms")));
    }
    let mut entries = Vec::new();
    let mut all = true;
    for (name, form) in atlas.forms() {
        let report = contact_check(form, r)
            .with_context(|| format!("form on chart `{name}`"))
            .map_err(Failure::Input)?;
        let ok = report.is_contact();
        all &= ok;
        println!(
            "{}  {name}  top coefficient {}  ({:?}, {:?})",
            status(ok),
            report.top_coefficient,
            report.mode,
            report.verdict
        );
        entries.push(json!({
            "chart": name,
            "top_coefficient": report.top_coefficient.to_string(),
            "mode": format!("{:?}", report.mode),
            "verdict": format!("{:?}", report.verdict),
            "status": status(ok),
        }));
    }
    if let Some(p) = &out.json {
        write_json(p, &json!({ "entries": entries }))?;
    }
    Ok(all)
}

fn glue(path: &Path, out: &JsonOut) -> Outcome {
    let atlas = load(path)?;
    let report = atlas.check_gluing();
    for c in &report.checks {
        match &c.detail {
            None => println!("{}  {}", status(c.holds), c.transition),
            Some(d) => println!("{}  {}  {d}", status(c.holds), c.transition),
        }
    }
    if let Some(p) = &out.json {
        let entries: Vec<_> = report
            .checks
            .iter()
            .map(|c| json!({ "transition": c.transition, "status": status(c.holds), "detail": c.detail }))
            .collect();
        write_json(p, &json!({ "entries": entries }))?;
    }
    Ok(report.holds())
}

fn chern(path: &Path) -> Outcome {
    let text = read(path)?;
    let program = parse_program(&text)
        .with_context(|| format!("in {}", path.display()))
        .map_err(Failure::Input)?;
    let value = program.run().map_err(input)?;
    println!("{value}");
    Ok(true)
}

fn need<T: Clone>(value: &Option<T>, flag: &str) -> Result<T, Failure> {
    value.clone().ok_or_else(|| input(anyhow!("this operation needs --{flag}")))
}

fn splitting(a: &SplittingArgs) -> Outcome {
    let verdict = |b: bool| {
        println!("{b}");
        Ok(true)
    };
    match a.op {
        SplittingOp::RankPlus => println!("{}", need(&a.split, "split")?.rank_plus()),
        SplittingOp::Degree => println!("{}", need(&a.split, "split")?.degree()),
        SplittingOp::Dual => println!("{}", need(&a.split, "split")?.dual()),
        SplittingOp::Twist => println!("{}", need(&a.split, "split")?.twist(need(&a.k, "k")?)),
        SplittingOp::Ext1 => println!("{}", ext1_dim(&need(&a.split, "split")?, &need(&a.other, "other")?)),
        SplittingOp::Extension => {
            return verdict(extension_rank_plus_rule(
                &need(&a.split, "split")?,
                &need(&a.other, "other")?,
                !a.nonsplit,
            ))
        }
        SplittingOp::Quotient => {
            return verdict(quotient_by_trivials_rule(
                &need(&a.split, "split")?,
                &need(&a.other, "other")?,
                need(&a.m, "m")?,
                !a.nonsplit,
            ))
        }
        SplittingOp::Selfdual => return verdict(selfdual_shape(&need(&a.split, "split")?, need(&a.k, "k")?)),
        SplittingOp::Bound => {
            return verdict(rank_plus_bound_check(
                &need(&a.split, "split")?,
                need(&a.r, "r")?,
                a.boundary_free,
            ))
        }
        SplittingOp::Arrangement => {
            let t = arrangement_splitting(need(&a.n, "n")?, need(&a.s, "s")?).map_err(input)?;
            println!("{t}");
        }
    }
    Ok(true)
}

/// `yᵢ ↦ yᵢ(1 + yᵢ)` on boundary coordinates and `yᵢ ↦ yᵢ + yᵢ²` on the rest.
fn default_base_change(base_dim: usize, m: usize) -> Vec<String> {
    (1..=base_dim)
        .map(|i| {
            if i <= m {
                format!("y{i}*(1 + y{i})")
            } else {
                format!("y{i} + y{i}^2")
            }
        })
        .collect()
}

fn construct(a: &ConstructArgs) -> Outcome {
    let atlas = match a.kind {
        Kind::Standard => {
            let params = ConstructionParams::standard(a.r, a.m);
            params.validate_standard().map_err(input)?;
            let base = a.base.clone().unwrap_or_else(|| default_base_change(params.base_dim, a.m));
            standard_atlas(&params, &base).map_err(input)?
        }
        Kind::Nonstandard => {
            let params = ConstructionParams::nonstandard(a.r, a.s, a.m);
            params.validate_nonstandard().map_err(input)?;
            let base = a.base.clone().unwrap_or_else(|| default_base_change(params.base_dim, a.m));
            let g = a.g.clone().unwrap_or_else(|| vec!["1 + y1".to_string(); a.s]);
            let correction = if a.no_correction {
                Correction::Dropped
            } else {
                Correction::Included
            };
            nonstandard_atlas(&params, &g, &base, correction).map_err(input)?
        }
        Kind::Jet => {
            let (chart, form) = jet_b_contact_form(a.r).map_err(input)?;
            Atlas::new(
                BTreeMap::from([("U".to_string(), chart)]),
                BTreeMap::from([("U".to_string(), form)]),
                vec![],
            )
            .map_err(|e| Failure::Internal(e.into()))?
        }
    };
    let text = emit_atlas(&atlas);
    match &a.output {
        Some(p) => fs::write(p, text + "\n")
            .with_context(|| format!("cannot write {}", p.display()))
            .map_err(Failure::Input)?,
        None => println!("{text}"),
    }
    Ok(true)
}

fn suite(a: &SuiteArgs) -> Outcome {
    let defaults = SuiteOptions::default();
    let opts = SuiteOptions {
        flip_orientation: a.flip_orientation,
        convention: a.convention,
        rmax: a.grid.unwrap_or(defaults.rmax),
        samples: a.samples,
        seed: a.seed,
    };
    let report = paper_suite(&opts);
    println!("{report}");
    if let Some(p) = &a.out.json {
        write_json(p, &report.to_json())?;
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::VerifyContact { atlas, r, out } => verify_contact(atlas, *r, out),
        Command::Glue { atlas, out } => glue(atlas, out),
        Command::Chern { program } => chern(program),
        Command::Splitting(a) => splitting(a),
        Command::Construct(a) => construct(a),
        Command::PaperSuite(a) => suite(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}
