//! Batch front end behind the `seplab` binary.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage or parse error,
//! 3 infeasible scale. Every output embeds the resolved [`RunConfig`]: JSON
//! output as a `config` field, CSV output as a leading `# config: {..}` line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::EasyClass;
use crate::error::{Error, Result};
use crate::f2lab::{distance_to_degree, gk_intersection_test, IntersectionStrategy, TruthTable};
use crate::field::{Field, Scalar};
use crate::functions::{elementary_symmetric, HardFunctionSpec};
use crate::group::{invariance_check_exhaustive, invariance_check_with, random_invertible, CoeffSpace, GroupElement, GroupKind};
use crate::linalg::Matrix;
use crate::measures::{partial_deriv_matrix, rank_exact, Measure, PartialsOptions};
use crate::poly::Poly;
use crate::sepmod::{run_separation, ModuleSpec};
use crate::seed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "seplab", version, about = "Exact rank measures, invariance suites and separation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of a measure matrix of one function.
    Measure(MeasureArgs),
    /// Compare a measure before and after random variable substitutions.
    Invariance(InvarianceArgs),
    /// Run a separation experiment of a test module against an easy class.
    Separate(SeparateArgs),
    /// dim of partials of e_{2d,n} against binom(n,d) over a grid.
    Table(TableArgs),
    /// Distance from a Boolean function to low-degree polynomials over F_2.
    RsDistance(RsArgs),
    /// Intersection of twisted derivative spaces with the ideal of GL_n(F_q).
    GkCheck(GkArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// `Q` or `Fp:<p>`; defaults to the function's natural field.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Weight residue selecting the MOD_3 function.
    #[arg(long, default_value_t = 0)]
    mod3_residue: u32,
}

#[derive(Args, Debug, Clone)]
struct MeasureSel {
    /// dim_partials | shifted | hessian_rank
    #[arg(long, default_value = "dim_partials")]
    measure: String,
    /// Derivative order for shifted partials.
    #[arg(long)]
    k: Option<u32>,
    /// Shift degree for shifted partials.
    #[arg(long)]
    l: Option<u32>,
    /// Comma-separated evaluation point for hessian_rank.
    #[arg(long)]
    point: Option<String>,
    /// Only derivatives of order at most this.
    #[arg(long)]
    max_order: Option<u32>,
    /// Leave out the order-zero row of the partials matrix.
    #[arg(long)]
    exclude_order_zero: bool,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    /// Function spec: esym:d,n | det:n | perm:n | mod3:n | rand:n,d,seed | poly:<n>:<expr>
    #[arg(long = "fn")]
    function: String,
    #[command(flatten)]
    sel: MeasureSel,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Linear,
    Affine,
    Permutation,
}

#[derive(Args, Debug)]
struct InvarianceArgs {
    #[arg(long = "fn")]
    function: String,
    #[command(flatten)]
    sel: MeasureSel,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = GroupArg::Linear)]
    group: GroupArg,
    /// Entries of sampled matrices lie in [-bound, bound] over Q.
    #[arg(long, default_value_t = 3)]
    bound: i64,
    /// Run over all of GL_n(F_q) instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SeparateArgs {
    /// minors:dim_partials:<r> | minors:shifted:<k>,<l>:<r> | empty
    #[arg(long)]
    module: String,
    /// depth3:n,d,s | depth4:n,deg,s,t; or use --n --d --s [--t]
    #[arg(long)]
    easy: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<u32>,
    /// Function spec, or `easy:<seed>` to draw the hard side from the easy class.
    #[arg(long)]
    hard: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Restrict the grid to one n.
    #[arg(long)]
    n: Option<usize>,
    /// Restrict the grid to one d.
    #[arg(long)]
    d: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RsArgs {
    /// Function spec over F_2 (e.g. mod3:4).
    #[arg(long = "fn", conflicts_with = "table")]
    function: Option<String>,
    /// Truth-table file: `n=<int>` line then one line of 0/1.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    d: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GkArgs {
    /// Function in the n*n matrix variables, row-major.
    #[arg(long = "fn")]
    function: String,
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// Size of S: the identity plus random invertible matrices from --seed.
    #[arg(long, default_value_t = 1)]
    set_size: usize,
    /// Degree cap of the function space; defaults to n^2 (q-1).
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Pairwise)]
    strategy: StrategyArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Pairwise,
    Stacked,
}

/// Resolved configuration recorded in every output.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub easy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hard: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    pub seed: u64,
    pub mod3_residue: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub format: String,
}

impl RunConfig {
    fn new(command: &str, common: &Common, field: Field) -> Self {
        RunConfig {
            command: command.into(),
            field: field.to_string(),
            seed: common.seed,
            mod3_residue: common.mod3_residue,
            out: common.out.as_ref().map(|p| p.display().to_string()),
            format: match common.format {
                Format::Json => "json".into(),
                Format::Csv => "csv".into(),
            },
            ..Default::default()
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        _ => EXIT_USAGE,
    }
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Measure(a) => cmd_measure(a),
        Command::Invariance(a) => cmd_invariance(a),
        Command::Separate(a) => cmd_separate(a),
        Command::Table(a) => cmd_table(a),
        Command::RsDistance(a) => cmd_rs_distance(a),
        Command::GkCheck(a) => cmd_gk_check(a),
    }
}

enum FunctionSpec {
    Named(HardFunctionSpec),
    Explicit { n: usize, expr: String },
}

fn parse_function(s: &str) -> Result<FunctionSpec> {
    if let Some(rest) = s.strip_prefix("poly:") {
        let (n, expr) = rest.split_once(':').ok_or_else(|| Error::Parse(format!("expected poly:<n>:<expr>, got {s:?}")))?;
        let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad variable count in {s:?}")))?;
        return Ok(FunctionSpec::Explicit { n, expr: expr.to_string() });
    }
    Ok(FunctionSpec::Named(s.parse()?))
}

impl FunctionSpec {
    fn natural_field(&self) -> Field {
        match self {
            FunctionSpec::Named(h) => h.natural_field(),
            FunctionSpec::Explicit { .. } => Field::Rationals,
        }
    }

    fn build(&self, field: Field, mod3_residue: u32) -> Result<Poly> {
        match self {
            FunctionSpec::Named(h) => h.build(field, mod3_residue),
            FunctionSpec::Explicit { n, expr } => Poly::parse(*n, field, expr),
        }
    }
}

fn resolve_field(common: &Common, default: Field) -> Result<Field> {
    common.field.as_deref().map_or(Ok(default), str::parse)
}

fn parse_point(s: &str, field: Field) -> Result<Vec<Scalar>> {
    s.split(',').map(|x| field.parse_scalar(x.trim())).collect()
}

fn build_measure(sel: &MeasureSel, field: Field, cfg: &mut RunConfig) -> Result<Measure> {
    cfg.measure = Some(sel.measure.clone());
    let measure = match sel.measure.as_str() {
        "dim_partials" => Measure::DimPartials(PartialsOptions {
            include_order_zero: !sel.exclude_order_zero,
            max_order: sel.max_order,
        }),
        "shifted" => {
            let (k, l) = (sel.k.unwrap_or(1), sel.l.unwrap_or(1));
            cfg.k = Some(k);
            cfg.l = Some(l);
            Measure::Shifted { order: k, shift_degree: l }
        }
        "hessian_rank" => {
            let raw = sel.point.as_deref().ok_or_else(|| Error::Parse("hessian_rank needs --point".into()))?;
            let pt = parse_point(raw, field)?;
            cfg.point = Some(pt.iter().map(Scalar::to_string).collect());
            Measure::HessianRankAt(pt)
        }
        // non-invariant fixture used to exercise the violation exit code
        "term_count" => Measure::TermCount,
        other => return Err(Error::Parse(format!("unknown measure {other:?}"))),
    };
    Ok(measure)
}

fn emit(common: &Common, body: &str) -> Result<()> {
    match &common.out {
        Some(p) => fs::write(p, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    result: T,
}

fn json_body<T: Serialize>(cfg: &RunConfig, result: T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { config: cfg, result })?;
    s.push('\n');
    Ok(s)
}

fn csv_body(cfg: &RunConfig, header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut out = format!("# config: {}\n", serde_json::to_string(cfg)?);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(out)
}

fn cmd_measure(a: MeasureArgs) -> Result<i32> {
    let spec = parse_function(&a.function)?;
    let field = resolve_field(&a.common, spec.natural_field())?;
    let mut cfg = RunConfig::new("measure", &a.common, field);
    cfg.function = Some(a.function.clone());
    let measure = build_measure(&a.sel, field, &mut cfg)?;
    let f = spec.build(field, a.common.mod3_residue)?;
    let report = measure.report(&f)?;
    let body = match a.common.format {
        Format::Json => json_body(&cfg, &report)?,
        Format::Csv => csv_body(
            &cfg,
            &["measure", "params", "rank", "rows", "cols"],
            vec![vec![
                report.measure.clone(),
                serde_json::to_string(&report.params)?,
                report.rank.to_string(),
                report.rows.to_string(),
                report.cols.to_string(),
            ]],
        )?,
    };
    emit(&a.common, &body)?;
    Ok(EXIT_OK)
}

fn cmd_invariance(a: InvarianceArgs) -> Result<i32> {
    let spec = parse_function(&a.function)?;
    let field = resolve_field(&a.common, spec.natural_field())?;
    let mut cfg = RunConfig::new("invariance", &a.common, field);
    cfg.function = Some(a.function.clone());
    let measure = build_measure(&a.sel, field, &mut cfg)?;
    let f = spec.build(field, a.common.mod3_residue)?;
    let (kind, name) = match a.group {
        GroupArg::Linear => (GroupKind::Linear, "linear"),
        GroupArg::Affine => (GroupKind::Affine, "affine"),
        GroupArg::Permutation => (GroupKind::Permutation, "permutation"),
    };
    let report = if a.exhaustive {
        cfg.group = Some("gl-exhaustive".into());
        invariance_check_exhaustive(&measure, &f)?
    } else {
        cfg.group = Some(name.into());
        cfg.trials = Some(a.trials);
        invariance_check_with(&measure, &f, a.trials, a.common.seed, kind, a.bound)?
    };
    let body = match a.common.format {
        Format::Json => json_body(&cfg, &report)?,
        Format::Csv => csv_body(
            &cfg,
            &["trial", "base", "value", "equal"],
            report
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    vec![i.to_string(), report.base_value.to_string(), v.to_string(), (*v == report.base_value).to_string()]
                })
                .collect(),
        )?,
    };
    emit(&a.common, &body)?;
    Ok(if report.all_equal { EXIT_OK } else { EXIT_VIOLATION })
}

fn resolve_easy(a: &SeparateArgs) -> Result<EasyClass> {
    if let Some(e) = &a.easy {
        return e.parse();
    }
    match (a.n, a.d, a.s, a.t) {
        (Some(n), Some(d), Some(s), None) => Ok(EasyClass::Depth3 { n, d, s }),
        (Some(n), Some(d), Some(s), Some(t)) => Ok(EasyClass::Depth4 { n, deg: d as u32, s, t }),
        _ => Err(Error::Parse("give --easy, or --n --d --s (and --t for depth 4)".into())),
    }
}

fn cmd_separate(a: SeparateArgs) -> Result<i32> {
    let easy = resolve_easy(&a)?;
    let module: ModuleSpec = a.module.parse()?;
    let field = resolve_field(&a.common, Field::Rationals)?;
    let mut cfg = RunConfig::new("separate", &a.common, field);
    cfg.module = Some(a.module.clone());
    cfg.easy = Some(easy.to_string());
    cfg.hard = Some(a.hard.clone());
    cfg.trials = Some(a.trials);
    match easy {
        EasyClass::Depth3 { n, d, s } => (cfg.n, cfg.d, cfg.s) = (Some(n), Some(d), Some(s)),
        EasyClass::Depth4 { n, deg, s, t } => {
            (cfg.n, cfg.d, cfg.s, cfg.t) = (Some(n), Some(deg as usize), Some(s), Some(t));
        }
    }
    let hard = match a.hard.strip_prefix("easy:") {
        Some(sd) => {
            let sd: u64 = sd.trim().parse().map_err(|_| Error::Parse(format!("bad seed in {:?}", a.hard)))?;
            easy.sample(field, &mut seed::rng_from_seed(sd))?.expand()
        }
        None => parse_function(&a.hard)?.build(field, a.common.mod3_residue)?,
    };
    let space = CoeffSpace::homogeneous(easy.n(), easy.degree(), field);
    let t = module.build(space);
    let report = run_separation(&t, &easy, &hard, &a.hard, a.trials, a.common.seed)?;
    let body = match a.common.format {
        Format::Json => json_body(&cfg, &report)?,
        Format::Csv => {
            let mut buf = format!("# config: {}\n", serde_json::to_string(&cfg)?).into_bytes();
            report.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
    };
    emit(&a.common, &body)?;
    Ok(EXIT_OK)
}

/// One cell of the `dim ∂(e_{2d,n})` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub d: usize,
    /// `computed`, or `skipped` when `2d > n`.
    pub status: String,
    pub dim: Option<usize>,
    pub binom: u64,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    /// Least top fan-in `s` with `s·4^d >= dim`.
    pub min_top_fanin: Option<u64>,
    pub ok: Option<bool>,
}

pub const TABLE_N: std::ops::RangeInclusive<usize> = 4..=10;
pub const TABLE_D: std::ops::RangeInclusive<usize> = 1..=3;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Computes one table cell; cells with `2d > n` are reported as skipped.
pub fn table_row(n: usize, d: usize, field: Field) -> Result<TableRow> {
    let binom = binomial(n as u64, d as u64);
    if 2 * d > n {
        return Ok(TableRow {
            n,
            d,
            status: "skipped".into(),
            dim: None,
            binom,
            rows: None,
            cols: None,
            min_top_fanin: None,
            ok: None,
        });
    }
    let m = partial_deriv_matrix(&elementary_symmetric(2 * d, n, field)?)?;
    let dim = rank_exact(&m);
    Ok(TableRow {
        n,
        d,
        status: "computed".into(),
        dim: Some(dim),
        binom,
        rows: Some(m.rows()),
        cols: Some(m.cols()),
        min_top_fanin: Some((dim as u64).div_ceil(1 << (2 * d))),
        ok: Some(dim as u64 >= binom),
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn cmd_table(a: TableArgs) -> Result<i32> {
    let field = resolve_field(&a.common, Field::Rationals)?;
    let mut cfg = RunConfig::new("table", &a.common, field);
    cfg.n = a.n;
    cfg.d = a.d;
    let cells: Vec<(usize, usize)> = TABLE_N
        .filter(|n| a.n.is_none_or(|m| m == *n))
        .flat_map(|n| TABLE_D.filter(|d| a.d.is_none_or(|m| m == *d)).map(move |d| (n, d)))
        .collect();
    if cells.is_empty() {
        return Err(Error::InvalidParameter(format!("grid is n in {TABLE_N:?}, d in {TABLE_D:?}")));
    }
    let rows: Vec<TableRow> = cells.par_iter().map(|&(n, d)| table_row(n, d, field)).collect::<Result<_>>()?;
    let all_ok = rows.iter().all(|r| r.ok != Some(false));
    let body = match a.common.format {
        Format::Json => json_body(&cfg, &rows)?,
        Format::Csv => csv_body(
            &cfg,
            &["n", "d", "status", "dim", "binom", "rows", "cols", "min_top_fanin", "ok"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.d.to_string(),
                        r.status.clone(),
                        opt(&r.dim),
                        r.binom.to_string(),
                        opt(&r.rows),
                        opt(&r.cols),
                        opt(&r.min_top_fanin),
                        opt(&r.ok),
                    ]
                })
                .collect(),
        )?,
    };
    emit(&a.common, &body)?;
    Ok(if all_ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_rs_distance(a: RsArgs) -> Result<i32> {
    let f2 = Field::Prime(2);
    if let Some(f) = &a.common.field {
        if f.parse::<Field>()? != f2 {
            return Err(Error::InvalidField(format!("rs-distance works over F_2, not {f}")));
        }
    }
    let mut cfg = RunConfig::new("rs-distance", &a.common, f2);
    cfg.d = Some(a.d as usize);
    let table = match (&a.function, &a.table) {
        (Some(s), None) => {
            cfg.function = Some(s.clone());
            TruthTable::from_poly(&parse_function(s)?.build(f2, a.common.mod3_residue)?)?
        }
        (None, Some(p)) => {
            cfg.function = Some(format!("table:{}", p.display()));
            fs::read_to_string(p)?.parse()?
        }
        _ => return Err(Error::Parse("give exactly one of --fn or --table".into())),
    };
    cfg.n = Some(table.n());
    let report = distance_to_degree(&table, a.d)?.to_json();
    let body = match a.common.format {
        Format::Json => json_body(&cfg, &report)?,
        Format::Csv => csv_body(
            &cfg,
            &["n", "degree_bound", "distance", "agreement", "witness"],
            vec![vec![
                report.n.to_string(),
                report.degree_bound.to_string(),
                report.distance.to_string(),
                report.agreement.to_string(),
                Poly::from_json(&report.witness)?.to_string(),
            ]],
        )?,
    };
    emit(&a.common, &body)?;
    Ok(EXIT_OK)
}

fn cmd_gk_check(a: GkArgs) -> Result<i32> {
    let spec = parse_function(&a.function)?;
    let field = resolve_field(&a.common, Field::Prime(2))?;
    let f = spec.build(field, a.common.mod3_residue)?;
    let n = (f.n() as f64).sqrt().round() as usize;
    if n * n != f.n() {
        return Err(Error::InvalidParameter(format!("{} variables is not a square matrix", f.n())));
    }
    if a.set_size == 0 {
        return Err(Error::InvalidParameter("--set-size must be positive".into()));
    }
    let mut cfg = RunConfig::new("gk-check", &a.common, field);
    cfg.function = Some(a.function.clone());
    cfg.n = Some(n);
    cfg.r = Some(a.r);
    cfg.d = a.max_degree.map(|d| d as usize);
    cfg.s = Some(a.set_size);
    let mut set = vec![Matrix::identity(field, n)];
    for i in 1..a.set_size {
        let GroupElement::Linear(m) = random_invertible(n, field, &mut seed::trial_rng(a.common.seed, i as u64), 3) else {
            unreachable!("random_invertible returns a linear element")
        };
        set.push(m);
    }
    let strategy = match a.strategy {
        StrategyArg::Pairwise => IntersectionStrategy::Pairwise,
        StrategyArg::Stacked => IntersectionStrategy::Stacked,
    };
    cfg.strategy = Some(format!("{:?}", a.strategy).to_lowercase());
    let report = gk_intersection_test(&f, n, a.r, &set, a.max_degree, strategy)?;
    let body = match a.common.format {
        Format::Json => json_body(&cfg, &report)?,
        Format::Csv => csv_body(
            &cfg,
            &["n", "q", "r", "max_degree", "set_size", "lambda_dim", "ideal_dim", "intersection_dim", "property_holds"],
            vec![vec![
                report.n.to_string(),
                report.q.to_string(),
                report.r.to_string(),
                report.max_degree.to_string(),
                report.set_size.to_string(),
                report.lambda_dim.to_string(),
                report.ideal_dim.to_string(),
                report.intersection_dim.to_string(),
                report.property_holds.to_string(),
            ]],
        )?,
    };
    emit(&a.common, &body)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (i32, String) {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let mut full = vec!["seplab"];
        full.extend_from_slice(args);
        let out_s = out.to_str().unwrap().to_string();
        full.extend_from_slice(&["--out", &out_s]);
        let code = main_with_args(full);
        (code, fs::read_to_string(&out).unwrap_or_default())
    }

    #[test]
    fn table_cells() {
        let r = table_row(4, 2, Field::Rationals).unwrap();
        assert_eq!(r.dim, Some(16));
        assert_eq!(r.ok, Some(true));
        assert_eq!(table_row(5, 3, Field::Rationals).unwrap().status, "skipped");
    }

    #[test]
    fn measure_and_exit_codes() {
        let (code, body) = run_to_string(&["measure", "--fn", "det:2", "--measure", "hessian_rank", "--point", "1,0,0,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert_eq!(v["result"]["rank"], 4);
        assert_eq!(v["config"]["command"], "measure");
        assert_eq!(run_to_string(&["measure", "--fn", "nope:1"]).0, EXIT_USAGE);
        assert_eq!(run_to_string(&["measure", "--fn", "det:9"]).0, EXIT_INFEASIBLE);
        assert_eq!(run_to_string(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn invariance_exit_codes() {
        let ok = ["invariance", "--fn", "esym:2,4", "--trials", "5", "--seed", "1"];
        assert_eq!(run_to_string(&ok).0, EXIT_OK);
        assert_eq!(run_to_string(&["invariance", "--fn", "poly:3:5", "--trials", "3"]).0, EXIT_OK);
        let bad = ["invariance", "--fn", "poly:2:x1^2", "--measure", "term_count", "--trials", "5"];
        assert_eq!(run_to_string(&bad).0, EXIT_VIOLATION);
    }

    #[test]
    fn csv_carries_config() {
        let (code, body) = run_to_string(&["table", "--n", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        let mut lines = body.lines();
        assert!(lines.next().unwrap().starts_with("# config: {\"command\":\"table\""));
        assert_eq!(lines.next().unwrap(), "n,d,status,dim,binom,rows,cols,min_top_fanin,ok");
        assert_eq!(body.lines().count(), 5);
    }
}
