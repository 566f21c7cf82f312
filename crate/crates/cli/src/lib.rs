//! Command-line front end for `linperm`.
//!
//! Exit codes: 0 success, 2 usage or configuration, 3 not a permutation
//! polynomial, 4 not in the special class, 5 correctness mismatch.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use linperm::json::{FieldJson, LinPolyJson};
use linperm::oracle::{self, MAX_TABLE_N};
use linperm::special::recognize_special;
use linperm::{
    associate_product, build_special, dickson_of, generic_inverse, p1_inverse, p1_inverse_weighted_form, Error, Felt,
    FieldSpec, LinPoly, SpecialPP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_PP: i32 = 3;
pub const EXIT_NOT_SPECIAL: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

/// Largest n for which `bench` accepts the bruteforce method.
pub const BENCH_BRUTEFORCE_MAX_N: usize = 13;

#[derive(Debug, Parser)]
#[command(name = "linperm", version, about = "Inverses of linearized permutation polynomials over GF(2^n)")]
pub struct Cli {
    /// Emit line-delimited JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build GF(2^n) and print its spec.
    Field(FieldArgs),
    /// Invert a linearized permutation polynomial.
    Invert(InvertArgs),
    /// Closed-form inverse of x + x^2 + tr(x/a).
    Special(SpecialArgs),
    /// Inverse of x + x^2 + tr(x) and its associate check.
    P1(FieldArgs),
    /// Check a candidate inverse.
    Verify(VerifyArgs),
    /// Time the inversion methods against each other.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub n: usize,
    /// Irreducible modulus as hex; defaults to the integer-least one.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Comma-separated hex coefficients, index i = 0..n-1.
    #[arg(long, value_delimiter = ',', conflicts_with = "a")]
    pub coeffs: Option<Vec<String>>,
    /// Parameter of x + x^2 + tr(x/a).
    #[arg(long)]
    pub a: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Cofactor,
    Bruteforce,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Cofactor => "cofactor",
            Method::Bruteforce => "bruteforce",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Compose,
    Oracle,
    Cofactor,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Compose,
    Bruteforce,
    Cofactor,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Debug, Clone, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Defaults to closed when --a is given, cofactor otherwise.
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub verify: Vec<Check>,
    /// Print the Dickson matrix of the input as row-major hex.
    #[arg(long)]
    pub dump_matrix: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpecialArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub a: String,
    #[arg(long, value_enum, default_value = "B")]
    pub form: Form,
    /// Print the cofactors of D(P~) from the closed formulas and from the matrix.
    #[arg(long)]
    pub dump_cofactors: bool,
    #[arg(long)]
    pub dump_matrix: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Candidate inverse; computed when omitted.
    #[arg(long, value_delimiter = ',')]
    pub inverse: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "all")]
    pub mode: VerifyMode,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "closed,cofactor")]
    pub methods: Vec<Method>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Run samples on separate threads.
    #[arg(long)]
    pub parallel: bool,
}

/// A command failure carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPermutation | Error::NotBijective => EXIT_NOT_PP,
            Error::NotSpecialClass | Error::PpConditionViolated | Error::EvenDegree(_) | Error::ZeroParameter => {
                EXIT_NOT_SPECIAL
            }
            _ => EXIT_USAGE,
        };
        Self::new(code, e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Default, Serialize)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compose_identity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactor_match: Option<bool>,
}

impl Verdicts {
    fn all_pass(&self) -> bool {
        [self.compose_identity, self.oracle_match, self.cofactor_match].iter().all(|v| v.unwrap_or(true))
    }
}

#[derive(Debug, Serialize)]
pub struct CofactorRow {
    pub i: usize,
    pub formula: String,
    pub matrix: String,
    pub matches: bool,
}

/// Everything a command reports.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub field: FieldJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<LinPolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<LinPolyJson>,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ns: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dickson_matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactors: Option<Vec<CofactorRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associate_check: Option<bool>,
}

impl RunReport {
    fn new(command: &str, field: &FieldSpec) -> Self {
        Self {
            command: command.to_string(),
            field: field.into(),
            input: None,
            output: None,
            verdicts: Verdicts::default(),
            timings_ns: BTreeMap::new(),
            dickson_matrix: None,
            cofactors: None,
            associate_check: None,
        }
    }
}

/// One line of `bench` output.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub method: Method,
    pub samples: usize,
    pub median_ns: u64,
    pub agree: bool,
}

/// Parses `args` (including the program name), runs the command, writes its
/// output to `out` and returns the exit code. Errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Field(a) => cmd_field(a, out),
        Command::Invert(a) => cmd_invert(a, cli.json, out),
        Command::Special(a) => cmd_special(a, cli.json, out),
        Command::P1(a) => cmd_p1(a, cli.json, out),
        Command::Verify(a) => cmd_verify(a, cli.json, out),
        Command::Bench(a) => cmd_bench(a, cli.json, out),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::new(EXIT_USAGE, e.to_string())
}

fn make_field(a: &FieldArgs) -> CliResult<FieldSpec> {
    Ok(match &a.modulus {
        Some(m) => FieldSpec::with_modulus_hex(a.n, m)?,
        None => FieldSpec::new(a.n)?,
    })
}

fn parse_coeffs(f: &FieldSpec, coeffs: &[String]) -> CliResult<LinPoly> {
    if coeffs.len() != f.n() {
        return Err(CliError::new(EXIT_USAGE, format!("expected {} coefficients, got {}", f.n(), coeffs.len())));
    }
    Ok(LinPoly::from_hex(f, coeffs)?)
}

enum Input {
    Plain(LinPoly),
    Special(SpecialPP),
}

impl Input {
    fn poly(&self) -> &LinPoly {
        match self {
            Input::Plain(l) => l,
            Input::Special(p) => p.poly(),
        }
    }
}

fn read_input(a: &PolyArgs) -> CliResult<(FieldSpec, Input)> {
    let f = make_field(&a.field)?;
    let input = match (&a.coeffs, &a.a) {
        (_, Some(a)) => Input::Special(build_special(&f, &f.parse_element(a)?)?),
        (Some(c), None) => Input::Plain(parse_coeffs(&f, c)?),
        (None, None) => return Err(CliError::new(EXIT_USAGE, "one of --coeffs or --a is required")),
    };
    Ok((f, input))
}

fn special_of(input: &Input) -> CliResult<SpecialPP> {
    match input {
        Input::Special(p) => Ok(p.clone()),
        Input::Plain(l) => Ok(recognize_special(l)?),
    }
}

/// Runs one inversion method and returns the inverse.
pub fn invert_with(method: Method, l: &LinPoly) -> Result<LinPoly, Error> {
    match method {
        Method::Closed => Ok(recognize_special(l)?.closed_inverse_b()),
        Method::Cofactor => generic_inverse(l),
        Method::Bruteforce => oracle::bruteforce_inverse(l),
    }
}

fn oracle_match(l: &LinPoly, inv: &LinPoly) -> CliResult<bool> {
    let t = oracle::table_of(l)?;
    let expected = oracle::invert_table(&t).map_err(|_| CliError::new(EXIT_NOT_PP, "not a permutation polynomial"))?;
    Ok(oracle::table_of(inv)? == expected)
}

fn compose_identity(l: &LinPoly, inv: &LinPoly) -> CliResult<bool> {
    Ok(l.compose(inv)?.is_identity() && inv.compose(l)?.is_identity())
}

fn emit(report: &RunReport, json: bool, out: &mut dyn Write) -> CliResult<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string(report).expect("report serializes")).map_err(io)?;
        return Ok(());
    }
    writeln!(out, "field: GF(2^{}) modulus {}", report.field.n, report.field.modulus).map_err(io)?;
    if let Some(i) = &report.input {
        writeln!(out, "input: {}", i.coeffs.join(",")).map_err(io)?;
    }
    if let Some(m) = &report.dickson_matrix {
        writeln!(out, "dickson matrix:").map_err(io)?;
        for row in m {
            writeln!(out, "  {}", row.join(" ")).map_err(io)?;
        }
    }
    if let Some(o) = &report.output {
        writeln!(out, "inverse: {}", o.coeffs.join(",")).map_err(io)?;
    }
    if let Some(rows) = &report.cofactors {
        writeln!(out, "{:>4}  {:>20}  {:>20}  match", "i", "formula", "matrix").map_err(io)?;
        for r in rows {
            writeln!(out, "{:>4}  {:>20}  {:>20}  {}", r.i, r.formula, r.matrix, if r.matches { "yes" } else { "NO" })
                .map_err(io)?;
        }
    }
    let v = &report.verdicts;
    for (name, val) in [
        ("compose identity", v.compose_identity),
        ("oracle match", v.oracle_match),
        ("cofactor match", v.cofactor_match),
    ] {
        if let Some(ok) = val {
            writeln!(out, "{name}: {}", if ok { "pass" } else { "FAIL" }).map_err(io)?;
        }
    }
    if let Some(ok) = report.associate_check {
        writeln!(out, "associate product is 1: {}", if ok { "pass" } else { "FAIL" }).map_err(io)?;
    }
    for (m, t) in &report.timings_ns {
        writeln!(out, "time {m}: {t} ns").map_err(io)?;
    }
    Ok(())
}

fn elapsed_ns(start: Instant) -> u64 {
    start.elapsed().as_nanos().min(u64::MAX as u128) as u64
}

pub fn cmd_field(a: &FieldArgs, out: &mut dyn Write) -> CliResult<()> {
    let f = make_field(a)?;
    writeln!(out, "{}", serde_json::to_string(&FieldJson::from(&f)).expect("serializes")).map_err(io)
}

pub fn cmd_invert(a: &InvertArgs, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let (f, input) = read_input(&a.poly)?;
    let l = input.poly();
    let method = a.method.unwrap_or(match input {
        Input::Special(_) => Method::Closed,
        Input::Plain(_) => Method::Cofactor,
    });
    let mut report = RunReport::new("invert", &f);
    report.input = Some(l.into());
    if a.dump_matrix {
        report.dickson_matrix = Some(dickson_of(l).to_hex_rows());
    }
    let start = Instant::now();
    let inv = match method {
        Method::Closed => special_of(&input)?.closed_inverse_b(),
        Method::Cofactor => generic_inverse(l)?,
        Method::Bruteforce => oracle::bruteforce_inverse(l)?,
    };
    report.timings_ns.insert(method.name().into(), elapsed_ns(start));
    report.output = Some((&inv).into());

    let all = a.verify.contains(&Check::All);
    if all || a.verify.contains(&Check::Compose) {
        report.verdicts.compose_identity = Some(compose_identity(l, &inv)?);
    }
    if a.verify.contains(&Check::Oracle) || (all && f.n() <= MAX_TABLE_N) {
        report.verdicts.oracle_match = Some(oracle_match(l, &inv)?);
    }
    if all || a.verify.contains(&Check::Cofactor) {
        report.verdicts.cofactor_match = Some(generic_inverse(l)? == inv);
    }
    emit(&report, json, out)?;
    if report.verdicts.all_pass() {
        Ok(())
    } else {
        Err(CliError::new(EXIT_MISMATCH, "verification failed"))
    }
}

pub fn cmd_special(a: &SpecialArgs, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let f = make_field(&a.field)?;
    let p = build_special(&f, &f.parse_element(&a.a)?)?;
    let mut report = RunReport::new("special", &f);
    report.input = Some(p.poly().into());
    let inv = match a.form {
        Form::B => p.closed_inverse_b(),
        Form::C => p.closed_inverse_c(),
    };
    report.output = Some((&inv).into());
    if a.dump_matrix {
        report.dickson_matrix = Some(dickson_of(p.poly()).to_hex_rows());
    }
    let mut mismatch = false;
    if a.dump_cofactors {
        let d = dickson_of(&p.tilde_poly());
        let mut rows = Vec::with_capacity(f.n());
        for i in 0..f.n() {
            let formula = p.ptilde_cofactor(i)?;
            let matrix = d.cofactor_col0(i)?;
            mismatch |= formula != matrix;
            rows.push(CofactorRow {
                i,
                formula: formula.to_hex(),
                matrix: matrix.to_hex(),
                matches: formula == matrix,
            });
        }
        report.cofactors = Some(rows);
    }
    emit(&report, json, out)?;
    if mismatch {
        Err(CliError::new(EXIT_MISMATCH, "cofactor formula disagrees with the Dickson matrix"))
    } else {
        Ok(())
    }
}

pub fn cmd_p1(a: &FieldArgs, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let f = make_field(a)?;
    let p = build_special(&f, &f.one())?;
    let inv = p1_inverse(&f)?;
    let mut report = RunReport::new("p1", &f);
    report.input = Some(p.poly().into());
    report.output = Some((&inv).into());
    report.verdicts.compose_identity = Some(compose_identity(p.poly(), &inv)?);
    report.verdicts.cofactor_match = Some(generic_inverse(p.poly())? == inv);
    let weighted_ok = p1_inverse_weighted_form(&f)? == inv && p.closed_inverse_b() == inv;
    let prod = associate_product(&p.poly().conventional_associate()?, &inv.conventional_associate()?)?;
    report.associate_check = Some(prod.is_one());
    emit(&report, json, out)?;
    if report.verdicts.all_pass() && weighted_ok && prod.is_one() {
        Ok(())
    } else {
        Err(CliError::new(EXIT_MISMATCH, "P1 inverse forms disagree"))
    }
}

pub fn cmd_verify(a: &VerifyArgs, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let (f, input) = read_input(&a.poly)?;
    let l = input.poly();
    let inv = match &a.inverse {
        Some(c) => parse_coeffs(&f, c)?,
        None => match &input {
            Input::Special(p) => p.closed_inverse_b(),
            Input::Plain(l) => generic_inverse(l)?,
        },
    };
    if !linperm::is_permutation(l) {
        return Err(Error::NotPermutation.into());
    }
    let mut report = RunReport::new("verify", &f);
    report.input = Some(l.into());
    report.output = Some((&inv).into());
    let all = a.mode == VerifyMode::All;
    if all || a.mode == VerifyMode::Compose {
        report.verdicts.compose_identity = Some(compose_identity(l, &inv)?);
    }
    if a.mode == VerifyMode::Bruteforce || (all && f.n() <= MAX_TABLE_N) {
        let pointwise = oracle::verify_pointwise(l, &inv)? && oracle::verify_pointwise(&inv, l)?;
        report.verdicts.oracle_match = Some(pointwise && oracle_match(l, &inv)?);
    }
    if all || a.mode == VerifyMode::Cofactor {
        report.verdicts.cofactor_match = Some(generic_inverse(l)? == inv);
    }
    emit(&report, json, out)?;
    if report.verdicts.all_pass() {
        Ok(())
    } else {
        Err(CliError::new(EXIT_MISMATCH, "verification failed"))
    }
}

/// Uniform nonzero `a` with `tr(1/a) = 1`, by rejection.
pub fn sample_special(f: &FieldSpec, rng: &mut impl Rng) -> SpecialPP {
    let n = f.n();
    loop {
        let mut words = vec![0u64; n.div_ceil(64)];
        for (k, w) in words.iter_mut().enumerate() {
            let bits = (n - 64 * k).min(64);
            *w = if bits == 64 { rng.gen() } else { rng.gen::<u64>() & ((1u64 << bits) - 1) };
        }
        let a: Felt = f.element_from_words(&words).expect("masked to n bits");
        if let Ok(p) = build_special(f, &a) {
            return p;
        }
    }
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    let k = xs.len();
    if k == 0 {
        0
    } else if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2
    }
}

type SampleResult = Result<Vec<(LinPoly, u64)>, Error>;

fn run_sample(methods: &[Method], p: &SpecialPP) -> SampleResult {
    methods
        .iter()
        .map(|&m| {
            let start = Instant::now();
            let inv = match m {
                Method::Closed => p.closed_inverse_b(),
                _ => invert_with(m, p.poly())?,
            };
            Ok((inv, elapsed_ns(start)))
        })
        .collect()
}

/// Runs the benchmark and returns its rows; fails with exit 5 on any
/// disagreement between methods, before any timing for that n is returned.
pub fn bench(a: &BenchArgs) -> CliResult<Vec<BenchRow>> {
    let mut methods: Vec<Method> = Vec::new();
    for &m in &a.methods {
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err(CliError::new(EXIT_USAGE, "no methods given"));
    }
    if a.samples == 0 {
        return Err(CliError::new(EXIT_USAGE, "--samples must be positive"));
    }
    for &n in &a.n {
        if methods.contains(&Method::Bruteforce) && n > BENCH_BRUTEFORCE_MAX_N {
            return Err(CliError::new(EXIT_USAGE, format!("bruteforce capped at n <= {BENCH_BRUTEFORCE_MAX_N}")));
        }
    }
    // Closed form is the reference when present, else cofactor.
    let reference = methods
        .iter()
        .position(|&m| m == Method::Closed)
        .or_else(|| methods.iter().position(|&m| m == Method::Cofactor))
        .unwrap_or(0);

    let mut rows = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for &n in &a.n {
        let f = FieldSpec::new(n)?;
        let specials: Vec<SpecialPP> = (0..a.samples).map(|_| sample_special(&f, &mut rng)).collect();
        let results: Vec<SampleResult> = if a.parallel {
            std::thread::scope(|s| {
                let handles: Vec<_> = specials.iter().map(|p| s.spawn(|| run_sample(&methods, p))).collect();
                handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
            })
        } else {
            specials.iter().map(|p| run_sample(&methods, p)).collect()
        };
        let mut timings = vec![Vec::with_capacity(a.samples); methods.len()];
        for (p, res) in specials.iter().zip(results) {
            let res = res?;
            let want = &res[reference].0;
            for (k, (inv, t)) in res.iter().enumerate() {
                if inv != want {
                    return Err(CliError::new(
                        EXIT_MISMATCH,
                        format!(
                            "n = {n}, a = {}: {} disagrees with {}",
                            p.a(),
                            methods[k].name(),
                            methods[reference].name()
                        ),
                    ));
                }
                timings[k].push(*t);
            }
        }
        for (k, &m) in methods.iter().enumerate() {
            rows.push(BenchRow {
                n,
                method: m,
                samples: a.samples,
                median_ns: median(timings[k].clone()),
                agree: true,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_bench(a: &BenchArgs, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let rows = bench(a)?;
    if json {
        for r in &rows {
            writeln!(out, "{}", serde_json::to_string(r).expect("serializes")).map_err(io)?;
        }
    } else {
        writeln!(out, "{:>5}  {:<10}  {:>7}  {:>14}  agree", "n", "method", "samples", "median ns").map_err(io)?;
        for r in &rows {
            writeln!(out, "{:>5}  {:<10}  {:>7}  {:>14}  {}", r.n, r.method.name(), r.samples, r.median_ns, r.agree)
                .map_err(io)?;
        }
    }
    Ok(())
}
