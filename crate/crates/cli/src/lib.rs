//! Command-line front end: matrix emission, verification suites and fixture comparison.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use ospq::contraction::{
    contract, contracted_ybe_check, l_operator_check, r2_hopf_check, r2_negative_control, r2_relations_check,
    rll_check, tilde_t_check, Source,
};
use ospq::fixtures::fixtures_check;
use ospq::linalg::{GradedMatrix, SignConvention};
use ospq::r1::{
    antipode_transformer_check, cocycle_check, disentangle_check, map_ode_check, ohn_subalgebra_check,
    r1_generators, r1_hopf_check, r1_relations_check, r1_rmatrix_check, r1_ybe_check, series_twist,
    series_twist_check, twist_property_check, universal_rh_r1, MapFamily,
};
use ospq::reps::{classical_rep, classical_relations_check, identity_check, q_relations_check, q_rep};
use ospq::rmatrix::{rq_properties_check, universal_rq, ybe_check};
use ospq::{Error, HalfInt, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ospq", version, about = "Exact R-matrices and Hopf checks for deformed osp(2|1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, alias = "report")]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Include wall time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generator matrices of one irreducible module.
    Rep {
        #[arg(long, value_enum, default_value_t = Variant::Classical)]
        variant: Variant,
        #[arg(long, value_parser = spin)]
        j: HalfInt,
        /// Family of the r1 images (variant r1 only).
        #[arg(long, value_enum, default_value_t = Family::Minimal)]
        family: Family,
        #[arg(long, value_parser = rational)]
        h: Option<BigRational>,
    },
    /// R-matrix on V(j1) ⊗ V(j2).
    Rmatrix {
        #[arg(long, value_enum, default_value_t = Kind::Q)]
        kind: Kind,
        #[arg(long, value_parser = spin)]
        j1: HalfInt,
        #[arg(long, value_parser = spin)]
        j2: HalfInt,
        #[arg(long, value_enum, default_value_t = Family::Minimal)]
        family: Family,
        #[arg(long, value_parser = rational)]
        h: Option<BigRational>,
    },
    /// Contracted R-matrix at q = 1.
    Contract {
        #[arg(long, value_parser = spin)]
        j1: HalfInt,
        #[arg(long, value_parser = spin)]
        j2: HalfInt,
        #[arg(long, value_enum, default_value_t = SourceArg::Universal)]
        source: SourceArg,
        /// List entries whose poles cancelled, on stderr.
        #[arg(long)]
        log_cancellation: bool,
        #[arg(long, value_parser = rational)]
        h: Option<BigRational>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, required = true, num_args = 1..)]
        suite: Vec<Suite>,
        /// Defaults to both families.
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long, value_parser = spin, num_args = 1..)]
        j: Vec<HalfInt>,
        /// Series order; the default depends on the suite.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Recompute the shipped golden matrices and compare.
    Fixtures,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Classical,
    Q,
    R1,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Q,
    Contracted,
    R1,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceArg {
    Universal,
    Formula,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Minimal,
    Hdiag,
}

impl From<Family> for MapFamily {
    fn from(f: Family) -> MapFamily {
        match f {
            Family::Minimal => MapFamily::Minimal,
            Family::Hdiag => MapFamily::Hdiag,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ClassicalRelations,
    QRelations,
    Identities,
    RqProperties,
    Ybe,
    Rll,
    LOperator,
    TildeT,
    R2Relations,
    HopfR2,
    R2NegativeControl,
    R1Relations,
    OhnSubalgebra,
    R1Hopf,
    Triangularity,
    Twist,
    Cocycle,
    Antipode,
    Disentangle,
    SeriesTwist,
    Ode,
    Fixtures,
}

/// How many spins a suite consumes per run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    None,
    Each,
    Pair,
    Triple,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    pub fn arity(self) -> Arity {
        use Suite::*;
        match self {
            OhnSubalgebra | SeriesTwist | Ode | Fixtures => Arity::None,
            ClassicalRelations | QRelations | Identities | Rll | LOperator | TildeT | R2Relations | R1Relations
            | Antipode | Disentangle => Arity::Each,
            RqProperties | R2NegativeControl | Triangularity | Twist => Arity::Pair,
            Ybe | HopfR2 | R1Hopf | Cocycle => Arity::Triple,
        }
    }
}

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(Error::Precondition(_) | Error::NotHalfInteger(_) | Error::Parse(_)) => EXIT_USAGE,
            CliError::Core(_) | CliError::Io(_) => EXIT_FAIL,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Text to emit and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn spin(s: &str) -> Result<HalfInt, String> {
    let j = HalfInt::from_str(s).map_err(|e| e.to_string())?;
    if j.is_negative() {
        return Err(format!("spin must be non-negative, got {s}"));
    }
    Ok(j)
}

fn rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("not an exact rational: {s} ({e})"))
}

fn half() -> HalfInt {
    HalfInt::HALF
}

fn substituted(m: GradedMatrix, h: &Option<BigRational>) -> CliResult<GradedMatrix> {
    Ok(match h {
        Some(v) => m.substitute_h(v)?,
        None => m,
    })
}

fn matrix_json(m: &GradedMatrix) -> serde_json::Value {
    serde_json::from_str(&m.to_json()).expect("matrix JSON is valid")
}

fn csv_text(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing memory")).expect("utf-8 input")
}

fn matrix_rows(m: &GradedMatrix) -> Vec<Vec<String>> {
    (0..m.dim()).map(|r| (0..m.dim()).map(|c| m.get(r, c).to_string()).collect()).collect()
}

/// Column-aligned rows.
fn grid(m: &GradedMatrix) -> String {
    let rows = matrix_rows(m);
    let width: Vec<usize> = (0..m.dim()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(1)).collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().zip(&width).map(|(x, w)| format!("{x:>w$}")).collect();
            format!("[ {} ]\n", cells.join("  "))
        })
        .collect()
}

fn emit_matrix(m: &GradedMatrix, f: Format) -> String {
    match f {
        Format::Json => m.to_json_pretty() + "\n",
        Format::Csv => csv_text(matrix_rows(m)),
        Format::Pretty => grid(m),
    }
}

fn emit_table(named: &[(String, GradedMatrix)], f: Format) -> String {
    match f {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                named.iter().map(|(n, m)| (n.clone(), matrix_json(m))).collect();
            serde_json::to_string_pretty(&map).expect("table serializes") + "\n"
        }
        Format::Csv => {
            let mut rows = vec![vec!["generator".into(), "row".into(), "col".into(), "entry".into()]];
            for (n, m) in named {
                for (r, row) in matrix_rows(m).into_iter().enumerate() {
                    for (c, x) in row.into_iter().enumerate() {
                        rows.push(vec![n.clone(), r.to_string(), c.to_string(), x]);
                    }
                }
            }
            csv_text(rows)
        }
        Format::Pretty => named.iter().map(|(n, m)| format!("{n} =\n{}", grid(m))).collect(),
    }
}

pub fn emit_reports(reports: &[VerificationReport], f: Format, timing: bool) -> String {
    let mut reports = reports.to_vec();
    if !timing {
        for r in &mut reports {
            r.wall_time_ms = None;
        }
    }
    let params = |r: &VerificationReport| r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
    match f {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Csv => {
            let mut rows = vec![["suite", "params", "status", "label", "row", "col", "residual"]
                .map(String::from)
                .to_vec()];
            if timing {
                rows[0].push("wall_time_ms".into());
            }
            for r in &reports {
                let status = if r.passed() { "pass" } else { "fail" };
                let base = vec![r.suite.clone(), params(r), status.to_string()];
                let tail = |mut v: Vec<String>| {
                    if timing {
                        v.push(r.wall_time_ms.map(|t| t.to_string()).unwrap_or_default());
                    }
                    v
                };
                if r.failures.is_empty() {
                    rows.push(tail([base.clone(), vec![String::new(); 4]].concat()));
                }
                for x in &r.failures {
                    let at = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
                    let f = vec![x.label.clone(), at(x.row), at(x.col), x.residual.clone()];
                    rows.push(tail([base.clone(), f].concat()));
                }
            }
            csv_text(rows)
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                s += &format!("{verdict} {} [{}] {} checks", r.suite, params(r), r.checked.len());
                if let Some(t) = r.wall_time_ms {
                    s += &format!(" {t} ms");
                }
                s += "\n";
                for n in &r.notes {
                    s += &format!("  note: {n}\n");
                }
                for x in &r.failures {
                    match (x.row, x.col) {
                        (Some(a), Some(b)) => s += &format!("  fail: {} at ({a},{b}): {}\n", x.label, x.residual),
                        _ => s += &format!("  fail: {}: {}\n", x.label, x.residual),
                    }
                }
            }
            s
        }
    }
}

fn families(f: Option<Family>) -> Vec<MapFamily> {
    match f {
        Some(f) => vec![f.into()],
        None => MapFamily::ALL.to_vec(),
    }
}

fn spins_for(suite: Suite, js: &[HalfInt]) -> CliResult<Vec<HalfInt>> {
    let want = match suite.arity() {
        Arity::None => return Ok(Vec::new()),
        Arity::Each => return Ok(if js.is_empty() { vec![half()] } else { js.to_vec() }),
        Arity::Pair => 2,
        Arity::Triple => 3,
    };
    match js.len() {
        0 => Ok(vec![half(); want]),
        n if n == want => Ok(js.to_vec()),
        n => Err(CliError::Usage(format!("suite {} takes {want} spins, got {n}", suite.name()))),
    }
}

/// Reports of one suite for the given spins, family and order.
pub fn run_suite(suite: Suite, js: &[HalfInt], family: Option<Family>, order: Option<usize>) -> CliResult<Vec<VerificationReport>> {
    use Suite::*;
    let js = spins_for(suite, js)?;
    let fams = families(family);
    let triple = || [js[0], js[1], js[2]];
    let out = match suite {
        ClassicalRelations => js.iter().map(|&j| classical_relations_check(j)).collect(),
        QRelations => js.iter().map(|&j| q_relations_check(j)).collect(),
        Identities => {
            let n = order.unwrap_or(3) as u32;
            js.iter().flat_map(|&j| (1..=n).map(move |k| identity_check(j, k))).collect()
        }
        RqProperties => vec![rq_properties_check(js[0], js[1])],
        Ybe => {
            let t = triple();
            let mut v = vec![
                ybe_check("universal-q", |a, b| universal_rq(a, b, SignConvention::Column), t),
                contracted_ybe_check(t),
            ];
            v.extend(fams.iter().map(|&f| r1_ybe_check(t, f)));
            v
        }
        Rll => js.iter().map(|&j| rll_check(j)).collect(),
        LOperator => js.iter().map(|&j| l_operator_check(j)).collect(),
        TildeT => js.iter().map(|&j| tilde_t_check(j)).collect(),
        R2Relations => js.iter().map(|&j| r2_relations_check(j)).collect(),
        HopfR2 => vec![r2_hopf_check(triple())],
        R2NegativeControl => vec![r2_negative_control(js[0], js[1])],
        R1Relations => fams.iter().flat_map(|&f| js.iter().map(move |&j| r1_relations_check(j, f))).collect(),
        OhnSubalgebra => vec![Ok(ohn_subalgebra_check())],
        R1Hopf => fams.iter().map(|&f| r1_hopf_check(triple(), f)).collect(),
        Triangularity => fams.iter().map(|&f| r1_rmatrix_check(js[0], js[1], f)).collect(),
        Twist => vec![twist_property_check(js[0], js[1])],
        Cocycle => fams.iter().map(|&f| cocycle_check(triple(), f)).collect(),
        Antipode => fams.iter().flat_map(|&f| js.iter().map(move |&j| antipode_transformer_check(j, f))).collect(),
        Disentangle => js.iter().map(|&j| disentangle_check(j)).collect(),
        SeriesTwist => {
            let h = half();
            vec![
                series_twist(order.unwrap_or(2)).map(|s| s.report),
                series_twist_check(h, h),
                series_twist_check(h, HalfInt::ONE),
            ]
        }
        Ode => fams.iter().map(|&f| map_ode_check(f, order.unwrap_or(12))).collect(),
        Fixtures => vec![fixtures_check()],
    };
    Ok(out.into_iter().collect::<ospq::Result<Vec<_>>>()?)
}

fn verdict(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Dispatch one parsed command line.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let f = cli.out.format;
    let done = |text: String| Outcome { text, code: EXIT_PASS };
    match &cli.command {
        Command::Rep { variant, j, family, h } => {
            let t = match variant {
                Variant::Classical => classical_rep(*j)?,
                Variant::Q => q_rep(*j)?,
                Variant::R1 => r1_generators(*j, (*family).into())?,
            };
            let named = t
                .names()
                .map(|n| Ok((n.to_string(), substituted(t.get(n)?.clone(), h)?)))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(done(emit_table(&named, f)))
        }
        Command::Rmatrix { kind, j1, j2, family, h } => {
            let m = match kind {
                Kind::Q => universal_rq(*j1, *j2, SignConvention::Column)?,
                Kind::Contracted => contract(*j1, *j2, Source::Universal)?.r_h,
                Kind::R1 => universal_rh_r1(*j1, *j2, (*family).into())?,
            };
            Ok(done(emit_matrix(&substituted(m, h)?, f)))
        }
        Command::Contract { j1, j2, source, log_cancellation, h } => {
            let src = match source {
                SourceArg::Universal => Source::Universal,
                SourceArg::Formula => Source::Formula,
            };
            let c = contract(*j1, *j2, src)?;
            if *log_cancellation {
                for x in &c.cancellations {
                    eprintln!("cancelled pole of order {} at ({},{})", x.pole_order, x.row, x.col);
                }
            }
            Ok(done(emit_matrix(&substituted(c.r_h, h)?, f)))
        }
        Command::Verify { suite, family, j, order } => {
            let mut reports = Vec::new();
            for &s in suite {
                reports.extend(run_suite(s, j, *family, *order)?);
            }
            Ok(Outcome { text: emit_reports(&reports, f, cli.out.timing), code: verdict(&reports) })
        }
        Command::Fixtures => {
            let reports = vec![fixtures_check()?];
            Ok(Outcome { text: emit_reports(&reports, f, cli.out.timing), code: verdict(&reports) })
        }
    }
}
