//! Command-line front end. Reports go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cdga::{e2_page, moment_angle_bound, BettiTable, Cdga};
use crate::minimal::{check_ses_thm12, minimal_model, quadratic_part_nontrivial, MinimalError};
use crate::models::{
    dj_model, felix_tanre_model, lie_pair_base_model, lie_pair_model, moment_angle_model, CdgaFile, DatumFileSet,
    FtModelSpec, LiePairFamily, LiePairSpec, ModelError,
};
use crate::regularity::{classify_partial_quotient, is_regular_sequence, RegularityError};
use crate::simplicial::SimplicialComplex;
use crate::toric::{
    fan_to_characteristic, fan_to_complex, partial_quotient_model, toric_check_bound, toric_cohomology_ring,
    CharacteristicMatrix, Fan, ToricError,
};
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "polyrat", version, about = "Rational models of polyhedral products and toric spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology dimensions of a model.
    Betti(ModelArgs),
    /// Hilbert series of a model's underlying algebra.
    Hilbert(ModelArgs),
    /// Cohomology ring of a smooth complete toric variety.
    Toric(ToricArgs),
    /// Classify a partial quotient by a set of linear forms.
    Classify(QuotientArgs),
    /// Test whether linear forms are a regular sequence in SR(K).
    Regular(QuotientArgs),
    /// Minimal Sullivan model and rational homotopy ranks.
    Minmodel(ModelArgs),
    /// Homotopy rank bookkeeping for a Lie-pair polyhedral product.
    Ses(ModelArgs),
    /// E2 page of the fibre-inclusion spectral sequence.
    E2(ModelArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    MomentAngle,
    Dj,
    Toric,
    PartialQuotient,
    Unt,
    Susuk,
    Ft,
    /// A CDGA read from the file given by `--cdga`.
    File,
}

impl ModelKind {
    fn label(self) -> &'static str {
        match self {
            ModelKind::MomentAngle => "moment-angle",
            ModelKind::Dj => "dj",
            ModelKind::Toric => "toric",
            ModelKind::PartialQuotient => "partial-quotient",
            ModelKind::Unt => "unt",
            ModelKind::Susuk => "susuk",
            ModelKind::Ft => "ft",
            ModelKind::File => "file",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Simplicial complex JSON file.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Fan JSON file; supplies the complex and characteristic matrix.
    #[arg(long)]
    pub fan: Option<PathBuf>,
    /// Characteristic matrix JSON file, or `empty` for no torus quotient.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Surjective model datum JSON file (one datum, or one per vertex).
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// CDGA JSON file for `--model file`.
    #[arg(long)]
    pub cdga: Option<PathBuf>,
    /// Rank parameter n of U(n) or SU(n) for Lie-pair models
    #[arg(long)]
    pub n: Option<usize>,
    /// Subgroup rank k of SU(k) for `--model susuk`
    #[arg(long)]
    pub k: Option<usize>,
    /// Use the base model (G/H, *)^K of a Lie pair instead of (G, H)^K.
    #[arg(long)]
    pub base: bool,
    /// Degree bound.
    #[arg(short = 'N')]
    pub bound: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ToricArgs {
    #[arg(long)]
    pub fan: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct QuotientArgs {
    #[arg(long)]
    pub complex: Option<PathBuf>,
    #[arg(long)]
    pub fan: Option<PathBuf>,
    /// Characteristic matrix JSON file, or `empty` for no torus quotient.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Toric rank; defaults to the fan dimension or `dim K + 1`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(short = 'N')]
    pub bound: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Computation(#[from] Error),
}

impl CliError {
    /// 2 for bad input, 3 when a valid input hits a computational obstruction.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Input { .. } => 2,
            CliError::Computation(e) => match e {
                Error::Toric(ToricError::NotRegular { .. })
                | Error::Regularity(RegularityError::Toric(ToricError::NotRegular { .. })) => 3,
                Error::Minimal(MinimalError::Cdga(_)) | Error::Cdga(_) => 3,
                _ => 2,
            },
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Computation(e.into())
    }
}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        CliError::Computation(e.into())
    }
}

impl From<MinimalError> for CliError {
    fn from(e: MinimalError) -> Self {
        CliError::Computation(e.into())
    }
}

impl From<RegularityError> for CliError {
    fn from(e: RegularityError) -> Self {
        CliError::Computation(e.into())
    }
}

/// A finished report: the JSON value and its table rendering.
pub struct Report {
    pub json: Value,
    pub table: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_with<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, Error>) -> Result<T, CliError> {
    let text = read(path)?;
    f(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    parse_with(path, SimplicialComplex::from_json_str)
}

fn load_fan(path: &Path) -> Result<Fan, CliError> {
    let fan = parse_with(path, Fan::from_json_str)?;
    fan.validate()?;
    Ok(fan)
}

/// `empty` is the trivial subtorus: forms `t_1, ..., t_m`.
fn load_matrix(spec: &str, m: usize) -> Result<CharacteristicMatrix, CliError> {
    if spec == "empty" {
        let rows = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
        return Ok(CharacteristicMatrix::new(rows));
    }
    let path = Path::new(spec);
    let matrix = parse_with(path, CharacteristicMatrix::from_json_str)?;
    matrix.check_columns(m)?;
    Ok(matrix)
}

fn require<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T, CliError> {
    value
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

/// The complex from `--complex`, or from `--fan` when only that is given.
fn complex_and_fan(
    complex: &Option<PathBuf>,
    fan: &Option<PathBuf>,
) -> Result<(SimplicialComplex, Option<Fan>), CliError> {
    let fan = fan.as_deref().map(load_fan).transpose()?;
    let complex = match (complex, &fan) {
        (Some(p), _) => load_complex(p)?,
        (None, Some(f)) => fan_to_complex(f)?,
        (None, None) => return Err(CliError::Usage("one of --complex or --fan is required".into())),
    };
    Ok((complex, fan))
}

fn lie_spec(args: &ModelArgs, complex: SimplicialComplex) -> Result<LiePairSpec, CliError> {
    let n = *require(&args.n, "n")?;
    let family = match args.model {
        ModelKind::Susuk => LiePairFamily::SUnSUk {
            n,
            k: *require(&args.k, "k")?,
        },
        _ => LiePairFamily::UnT { n },
    };
    Ok(LiePairSpec::new(family, complex)?)
}

/// Builds the selected model and its default degree bound.
fn build_model(args: &ModelArgs) -> Result<(Cdga, u32), CliError> {
    let default = 8;
    if args.model == ModelKind::File {
        let path = require(&args.cdga, "cdga")?;
        let file: CdgaFile = parse_with(path, |s| Ok(serde_json::from_str(s)?))?;
        return Ok((file.build()?, default));
    }
    let (complex, fan) = complex_and_fan(&args.complex, &args.fan)?;
    Ok(match args.model {
        ModelKind::MomentAngle => {
            let bound = moment_angle_bound(&complex);
            (moment_angle_model(&complex), bound)
        }
        ModelKind::Dj => (dj_model(&complex), default),
        ModelKind::Toric => {
            let fan = fan.ok_or_else(|| CliError::Usage("--model toric requires --fan".into()))?;
            fan.check_smooth()?;
            let matrix = fan_to_characteristic(&fan);
            (partial_quotient_model(&complex, &matrix)?.cdga, toric_check_bound(fan.n))
        }
        ModelKind::PartialQuotient => {
            let matrix = match (&args.matrix, &fan) {
                (Some(spec), _) => load_matrix(spec, complex.m())?,
                (None, Some(f)) => fan_to_characteristic(f),
                (None, None) => return Err(CliError::Usage("missing required flag --matrix".into())),
            };
            let bound = 2 * complex.m() as u32;
            (partial_quotient_model(&complex, &matrix)?.cdga, bound)
        }
        ModelKind::Unt | ModelKind::Susuk => {
            let spec = lie_spec(args, complex)?;
            let model = if args.base {
                lie_pair_base_model(&spec)?
            } else {
                lie_pair_model(&spec)?
            };
            (model, default)
        }
        ModelKind::Ft => {
            let path = require(&args.datum, "datum")?;
            let set: DatumFileSet = parse_with(path, |s| Ok(serde_json::from_str(s)?))?;
            let data = set.build()?;
            let spec = FtModelSpec { complex, data };
            (felix_tanre_model(&spec)?, default)
        }
        ModelKind::File => unreachable!("handled above"),
    })
}

fn header(command: &str, bound: u32) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("bound".into(), json!(bound));
    map
}

fn list(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn betti(args: &ModelArgs) -> Result<Report, CliError> {
    let (model, default) = build_model(args)?;
    let bound = args.bound.unwrap_or(default);
    let betti = model.betti_numbers(bound);
    let table = BettiTable::from_dims(betti.clone());
    let mut json = header("betti", bound);
    json.insert("model".into(), json!(args.model.label()));
    json.insert("betti".into(), json!(betti));
    json.insert("odd_vanishes".into(), json!(table.odd_vanishes()));
    let text = format!("model {}\nbound {}\nbetti {}\n", args.model.label(), bound, list(&betti));
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

fn hilbert(args: &ModelArgs) -> Result<Report, CliError> {
    let (model, default) = build_model(args)?;
    let bound = args.bound.unwrap_or(default);
    let series = model.algebra().hilbert_series(bound).coefficients;
    let mut json = header("hilbert", bound);
    json.insert("model".into(), json!(args.model.label()));
    json.insert("hilbert".into(), json!(series));
    let text = format!("model {}\nbound {}\nhilbert {}\n", args.model.label(), bound, list(&series));
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

fn toric(args: &ToricArgs) -> Result<Report, CliError> {
    let fan = load_fan(&args.fan)?;
    let result = toric_cohomology_ring(&fan)?;
    let ring = &result.ring;
    let relations: Vec<String> = ring.relations().iter().map(|r| ring.format(r)).collect();
    let generators: Vec<Value> = ring
        .generators()
        .iter()
        .map(|g| json!({"name": g.name, "degree": g.degree}))
        .collect();
    let bound = 2 * fan.n as u32;
    let mut json = header("toric", bound);
    json.insert("n".into(), json!(fan.n));
    json.insert("betti".into(), json!(result.betti.betti));
    json.insert("ring".into(), json!({"generators": generators, "relations": relations}));
    json.insert("regularity".into(), serde_json::to_value(&result.regularity).expect("serializable"));
    let mut text = format!("n {}\nbetti {}\nring Q[", fan.n, list(&result.betti.betti));
    text.push_str(&ring.generators().iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(", "));
    text.push_str("]\n");
    for r in &relations {
        let _ = writeln!(text, "  {r} = 0");
    }
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

struct QuotientInput {
    complex: SimplicialComplex,
    matrix: CharacteristicMatrix,
    reference: Option<CharacteristicMatrix>,
    n: usize,
}

fn quotient_input(args: &QuotientArgs) -> Result<QuotientInput, CliError> {
    let (complex, fan) = complex_and_fan(&args.complex, &args.fan)?;
    if let Some(f) = &fan {
        f.check_smooth()?;
    }
    let reference = fan.as_ref().map(fan_to_characteristic);
    let matrix = match (&args.matrix, &reference) {
        (Some(spec), _) => load_matrix(spec, complex.m())?,
        (None, Some(r)) => r.clone(),
        (None, None) => return Err(CliError::Usage("missing required flag --matrix".into())),
    };
    let n = args
        .n
        .or(fan.as_ref().map(|f| f.n))
        .unwrap_or(complex.dimension() + 1);
    Ok(QuotientInput {
        complex,
        matrix,
        reference,
        n,
    })
}

fn classify(args: &QuotientArgs) -> Result<Report, CliError> {
    let input = quotient_input(args)?;
    let bound = args.bound.unwrap_or((input.complex.m() + input.n) as u32);
    let verdict = classify_partial_quotient(&input.complex, &input.matrix, input.n, input.reference.as_ref(), bound)?;
    let mut json = header("classify", bound);
    json.insert("l".into(), json!(input.matrix.l()));
    json.insert("n".into(), json!(input.n));
    json.insert("verdict".into(), serde_json::to_value(&verdict).expect("serializable"));
    let mut text = format!(
        "verdict {:?}\nl {} n {}\nbound {}\nbetti {}\nh_odd_vanishes {}\nformalizable {}\n",
        verdict.case,
        input.matrix.l(),
        input.n,
        bound,
        list(&verdict.betti),
        verdict.h_odd_vanishes,
        verdict.formalizable
    );
    if let Some(ob) = &verdict.poincare_obstruction {
        let quotient: Vec<String> = ob.p1_over_factor.iter().map(i128::to_string).collect();
        let _ = writeln!(text, "obstruction P1/(1-t^2)^{} = {}", ob.l - ob.n, quotient.join(" "));
    }
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

fn regular(args: &QuotientArgs) -> Result<Report, CliError> {
    let input = quotient_input(args)?;
    let bound = args.bound.unwrap_or(2 * input.complex.m() as u32 + 2);
    let sr = crate::models::stanley_reisner_algebra(&input.complex);
    let report = is_regular_sequence(&sr, &input.matrix.forms(0), bound)?;
    let mut json = header("regular", bound);
    json.insert("report".into(), serde_json::to_value(&report).expect("serializable"));
    let text = format!(
        "regular {}\ncertified {}\nbound {}\nwitness_degree {}\ntor_minus1 {}\n",
        report.regular,
        report.certified,
        bound,
        report.witness_degree.map_or("none".to_string(), |d| d.to_string()),
        list(&report.tor_minus1_dims)
    );
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

fn minmodel(args: &ModelArgs) -> Result<Report, CliError> {
    let (model, default) = build_model(args)?;
    let bound = args.bound.unwrap_or(default);
    let mm = minimal_model(&model, bound)?;
    let ranks = mm.ranks();
    let alg = mm.model.algebra();
    let generators: Vec<Value> = alg
        .generators()
        .iter()
        .zip(mm.model.generator_differentials())
        .zip(&mm.map)
        .map(|((g, d), image)| {
            json!({
                "name": g.name,
                "degree": g.degree,
                "differential": alg.format(d),
                "image": model.algebra().format(image),
            })
        })
        .collect();
    let quadratic = quadratic_part_nontrivial(&mm);
    let mut json = header("minmodel", bound);
    json.insert("model".into(), json!(args.model.label()));
    json.insert("pi_ranks".into(), serde_json::to_value(&ranks.pi_ranks).expect("serializable"));
    json.insert("generators".into(), json!(generators));
    json.insert("quadratic_part_nontrivial".into(), json!(quadratic));
    let mut text = format!("model {}\nbound {}\n", args.model.label(), bound);
    for (d, r) in &ranks.pi_ranks {
        let _ = writeln!(text, "pi_{d} {r}");
    }
    for (g, d) in alg.generators().iter().zip(mm.model.generator_differentials()) {
        let _ = writeln!(text, "d {} = {}", g.name, alg.format(d));
    }
    let _ = writeln!(text, "quadratic_part_nontrivial {quadratic}");
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

fn ses(args: &ModelArgs) -> Result<Report, CliError> {
    if !matches!(args.model, ModelKind::Unt | ModelKind::Susuk) {
        return Err(CliError::Usage("ses requires --model unt or --model susuk".into()));
    }
    let complex = load_complex(require(&args.complex, "complex")?)?;
    let spec = lie_spec(args, complex)?;
    let bound = args.bound.unwrap_or(8);
    let report = check_ses_thm12(&spec, bound)?;
    let mut json = header("ses", bound);
    json.insert("model".into(), json!(args.model.label()));
    json.insert("total_pi1".into(), json!(report.total_pi1));
    json.insert("rows".into(), serde_json::to_value(&report.rows).expect("serializable"));
    let mut text = format!("model {}\nbound {}\ntotal_pi1 {}\n", args.model.label(), bound, report.total_pi1);
    text.push_str("d left middle right exact\n");
    for r in &report.rows {
        let _ = writeln!(text, "{} {} {} {} {}", r.degree, r.left, r.middle, r.right, r.exactness_ok);
    }
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

/// Fibres and base for the fibre-inclusion spectral sequence:
/// `S^1 -> Z_K -> DJ(K)` per vertex, or `T^n -> (U(n), T^n)^K -> (U(n)/T^n, *)^K`.
fn e2(args: &ModelArgs) -> Result<Report, CliError> {
    let complex = load_complex(require(&args.complex, "complex")?)?;
    let bound = args.bound.unwrap_or(8);
    let m = complex.m();
    let (fibre, base) = match args.model {
        ModelKind::MomentAngle => (BettiTable::from_dims(vec![1, 1]), dj_model(&complex)),
        ModelKind::Unt => {
            let spec = lie_spec(args, complex)?;
            let n = *require(&args.n, "n")?;
            let torus = (0..=n).map(|i| binomial(n, i)).collect();
            (BettiTable::from_dims(torus), lie_pair_base_model(&spec)?)
        }
        _ => return Err(CliError::Usage("e2 supports --model moment-angle or --model unt".into())),
    };
    let fibres = vec![fibre; m];
    let base = BettiTable::from_dims(base.betti_numbers(bound));
    let page = e2_page(&fibres, &base, bound as usize);
    let mut json = header("e2", bound);
    json.insert("model".into(), json!(args.model.label()));
    json.insert("entries".into(), json!(page.entries));
    json.insert("totals".into(), json!(page.totals()));
    let mut text = format!("model {}\nbound {}\n", args.model.label(), bound);
    for (p, row) in page.entries.iter().enumerate() {
        let _ = writeln!(text, "p={p}: {}", list(row));
    }
    let _ = writeln!(text, "totals {}", list(&page.totals()));
    Ok(Report {
        json: Value::Object(json),
        table: text,
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Betti(a) => betti(a),
        Command::Hilbert(a) => hilbert(a),
        Command::Toric(a) => toric(a),
        Command::Classify(a) => classify(a),
        Command::Regular(a) => regular(a),
        Command::Minmodel(a) => minmodel(a),
        Command::Ses(a) => ses(a),
        Command::E2(a) => e2(a),
    }
}

/// Parses arguments, runs the job, prints the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
