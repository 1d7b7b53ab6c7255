//! Command-line surface: construct and verify records, reproduce the
//! reference parameter table, encode messages and compute distances.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::charcode::build_char_code;
use crate::convo::{
    construct_multi_memory, construct_two_memory_binary, construct_unit_memory_binary,
    construct_unit_memory_lary, designed_dual_unit_memory_binary, designed_unit_memory_binary,
    dual_record, formula_params, literal_conditions, stated_two_memory_degree,
    two_memory_binary_conditions, unit_memory_binary_conditions, unit_memory_lary_conditions,
    valid_two_memory_binary, valid_unit_memory_binary, valid_unit_memory_lary, BoundKind, Check,
    CheckStatus, Condition, Construction, ConvRecord, DesignedParams, Provenance,
};
use crate::distance::{
    free_distance_search, min_dependent_columns, min_distance_enumeration, min_distance_low_weight,
    min_distance_of, Budget, DistanceKind, DistanceResult, SearchCaps, Witness,
};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, FieldSpec};
use crate::matfq::MatrixFq;
use crate::polymat::{encode, weight, Poly};

#[derive(Debug, Parser)]
#[command(
    name = "charconv",
    version,
    about = "Character codes and split convolutional codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    T2,
    Cor1,
    T3,
    T4,
    Multi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeKind {
    Char,
    Matrix,
    Record,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixRole {
    Generator,
    Parity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Enum,
    Columns,
    Support,
    Trellis,
    Auto,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 10_000_000)]
    pub codeword_budget: u64,
    #[arg(long, default_value_t = 10_000_000)]
    pub subset_budget: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub node_budget: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            codewords: self.codeword_budget,
            subsets: self.subset_budget,
            nodes: self.node_budget,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CodeParams {
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub u: Option<u32>,
    #[arg(long)]
    pub v: Option<u32>,
    /// Descending weight cuts, e.g. `4,3,1`.
    #[arg(long, value_delimiter = ',')]
    pub cuts: Vec<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a record, verify it and certify its distance bound.
    Construct {
        theorem: Theorem,
        #[command(flatten)]
        params: CodeParams,
        /// Also search for a light codeword with inputs up to this degree.
        #[arg(long)]
        degree_cap: Option<usize>,
        #[arg(long)]
        weight_cap: Option<usize>,
        /// Report the printed variants of the preconditions as well.
        #[arg(long)]
        strict_paper_conditions: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the record document here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Recompute the reference parameter table and annotate mismatches.
    Table1 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Construct and verify every matched row.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Re-run all checks on a record document.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Encode `u(D)`, given as `c0,c1,...;c0,...` (one component per row).
    Encode {
        record: PathBuf,
        message: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Minimum or free distance.
    Mindist {
        #[arg(long, value_enum, default_value = "char")]
        code: CodeKind,
        #[command(flatten)]
        params: CodeParams,
        /// Matrix or record file for `--code matrix|record`.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "generator")]
        role: MatrixRole,
        /// Distance of the dual code instead.
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        weight_cap: Option<usize>,
        #[arg(long)]
        degree_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Designed parameters by arithmetic only; `--sweep` emits CSV over the valid grid.
    Params {
        theorem: Theorem,
        #[command(flatten)]
        params: CodeParams,
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 8)]
        max_m: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A printed value that the computation does not reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub printed: String,
    pub computed: String,
    pub locus: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub locus: String,
    pub printed: String,
    pub computed: Option<String>,
    /// `(m, r, u)` found by inverse search.
    pub mru: Option<(u32, u32, u32)>,
    pub matches: bool,
    /// Prior-work parameters, copied as printed and never recomputed.
    pub reference: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub designed: Option<DesignedParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<TableRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codeword: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub passed: bool,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            passed: true,
            ..Default::default()
        }
    }

    fn param(&mut self, name: &str, value: impl ToString) {
        self.parameters.insert(name.into(), value.to_string());
    }

    fn finish(&mut self) {
        self.passed = self.checks.iter().all(|c| c.status != CheckStatus::Fail);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        if let Some(t) = &self.tuple {
            let _ = writeln!(out, "designed: {t}");
        }
        for c in &self.conditions {
            let mark = if c.holds { "holds" } else { "FAILS" };
            let _ = writeln!(out, "condition {:<28} {mark:<6} {}", c.name, c.detail);
        }
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Uncertified => "uncertified",
            };
            let _ = writeln!(out, "check {:<26} {status:<12} {}", c.name, c.detail);
        }
        if !self.rows.is_empty() {
            let _ = writeln!(
                out,
                "{:<30} {:<32} {:<32} {:<12} {:<8} prior-work reference (not recomputed)",
                "locus", "printed", "computed", "(m,r,u)", "status"
            );
            for r in &self.rows {
                let mru = r
                    .mru
                    .map(|(m, r, u)| format!("({m},{r},{u})"))
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    out,
                    "{:<30} {:<32} {:<32} {:<12} {:<8} {}",
                    r.locus,
                    r.printed,
                    r.computed.as_deref().unwrap_or("-"),
                    mru,
                    if r.matches { "match" } else { "MISMATCH" },
                    r.reference
                );
            }
        }
        for d in &self.discrepancies {
            let _ = writeln!(
                out,
                "discrepancy at {}: printed {}, computed {}",
                d.locus, d.printed, d.computed
            );
        }
        if let Some(d) = &self.distance {
            let _ = writeln!(out, "{}", describe_distance(d));
        }
        if let Some(c) = &self.codeword {
            let _ = writeln!(out, "codeword: {}", c.join(";"));
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn describe_distance(d: &DistanceResult) -> String {
    let rel = match d.kind {
        DistanceKind::Exact => "=",
        DistanceKind::AtLeast => ">=",
        DistanceKind::AtMost => "<=",
    };
    let mut s = format!("distance {rel} {} ({:?})", d.value, d.method);
    match &d.witness {
        Some(Witness::Block { support, values }) => {
            let _ = write!(s, "; witness support {support:?} values {values:?}");
        }
        Some(Witness::Convolutional { input, weight }) => {
            let _ = write!(s, "; witness input {} of weight {weight}", input.join(";"));
        }
        None => {}
    }
    s
}

/// Output of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Exit status for an error: 2 for bad parameters or usage, 3 for malformed
/// input files, 4 for exhausted budgets, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io { .. } => 3,
        Error::BudgetExceeded { .. } | Error::NoWitness { .. } => 4,
        Error::Parameter(_)
        | Error::UnsupportedOrder { .. }
        | Error::SizeGuard { .. }
        | Error::DimensionMismatch(_)
        | Error::Precondition { .. }
        | Error::RankCondition { .. }
        | Error::WrongProvenance { .. } => 2,
        _ => 1,
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn need(v: Option<u32>, name: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Parameter(format!("--{name} is required")))
}

fn field(q: u32) -> Result<FieldSpec> {
    field_of_order(q as u64)
}

pub fn run(cli: &Cli, echo: &str) -> Result<Outcome> {
    match &cli.command {
        Command::Construct {
            theorem,
            params,
            degree_cap,
            weight_cap,
            strict_paper_conditions,
            format,
            output,
            budget,
        } => {
            let caps = degree_cap.map(|d| SearchCaps {
                degree_cap: d,
                weight_cap: weight_cap.unwrap_or(usize::MAX),
            });
            cmd_construct(
                echo,
                *theorem,
                params,
                caps,
                *strict_paper_conditions,
                output.as_deref(),
                &budget.budget(),
            )
            .map(|r| outcome(&r, *format))
        }
        Command::Table1 {
            format,
            verify,
            budget,
        } => Ok(outcome(
            &cmd_table1(echo, *verify, &budget.budget())?,
            *format,
        )),
        Command::Verify {
            path,
            format,
            budget,
        } => Ok(outcome(&cmd_verify(echo, path, &budget.budget())?, *format)),
        Command::Encode {
            record,
            message,
            format,
        } => Ok(outcome(&cmd_encode(echo, record, message)?, *format)),
        Command::Mindist {
            code,
            params,
            file,
            role,
            dual,
            method,
            weight_cap,
            degree_cap,
            format,
            budget,
        } => {
            let opts = MindistOptions {
                code: *code,
                file: file.clone(),
                role: *role,
                dual: *dual,
                method: *method,
                weight_cap: *weight_cap,
                degree_cap: *degree_cap,
            };
            Ok(outcome(
                &cmd_mindist(echo, params, &opts, &budget.budget())?,
                *format,
            ))
        }
        Command::Params {
            theorem,
            params,
            sweep,
            max_m,
            format,
        } => {
            if *sweep {
                let text = cmd_params_sweep(*theorem, params, *max_m, *format)?;
                Ok(Outcome {
                    stdout: text,
                    code: 0,
                })
            } else {
                Ok(outcome(&cmd_params(echo, *theorem, params)?, *format))
            }
        }
    }
}

fn outcome(report: &RunReport, format: Format) -> Outcome {
    Outcome {
        stdout: report.render(format),
        code: if report.passed { 0 } else { 1 },
    }
}

fn construction(t: Theorem) -> Construction {
    match t {
        Theorem::T2 => Construction::UnitMemoryBinary,
        Theorem::Cor1 => Construction::DualUnitMemoryBinary,
        Theorem::T3 => Construction::TwoMemoryBinary,
        Theorem::T4 => Construction::UnitMemoryLary,
        Theorem::Multi => Construction::MultiMemory,
    }
}

/// Provenance named by the command-line parameters, before construction.
fn provenance(t: Theorem, p: &CodeParams) -> Result<Provenance> {
    let m = need(p.m, "m")?;
    let construction = construction(t);
    let l = match t {
        Theorem::T4 => need(p.l, "l")?,
        Theorem::Multi => p.l.unwrap_or(2),
        _ => {
            if let Some(l) = p.l.filter(|&l| l != 2) {
                return Err(Error::Parameter(format!(
                    "{} is a binary-group construction, --l {l} does not apply",
                    construction.id()
                )));
            }
            2
        }
    };
    let (r, u, v, cuts) = match t {
        Theorem::Multi => {
            if p.cuts.is_empty() {
                return Err(Error::Parameter("--cuts is required".into()));
            }
            let r = *p.cuts.last().unwrap();
            (
                r,
                p.cuts[0],
                (p.cuts.len() == 3).then(|| p.cuts[1]),
                p.cuts.clone(),
            )
        }
        Theorem::T3 => {
            let (r, v, u) = (need(p.r, "r")?, need(p.v, "v")?, need(p.u, "u")?);
            (r, u, Some(v), vec![u, v, r])
        }
        _ => {
            let (r, u) = (need(p.r, "r")?, need(p.u, "u")?);
            (r, u, None, vec![u, r])
        }
    };
    Ok(Provenance {
        construction,
        q: p.q,
        l,
        m,
        r,
        u,
        v,
        cuts,
    })
}

fn conditions_for(p: &Provenance) -> Vec<Condition> {
    match p.construction {
        Construction::UnitMemoryBinary | Construction::DualUnitMemoryBinary => {
            unit_memory_binary_conditions(p.q, p.m, p.r, p.u)
        }
        Construction::TwoMemoryBinary => {
            two_memory_binary_conditions(p.q, p.m, p.r, p.v.unwrap_or(0), p.u)
        }
        Construction::UnitMemoryLary => unit_memory_lary_conditions(p.q, p.l, p.m, p.r, p.u),
        Construction::MultiMemory => Vec::new(),
    }
}

fn echo_params(report: &mut RunReport, p: &Provenance) {
    report.param("construction", p.construction.id());
    report.param("q", p.q);
    report.param("l", p.l);
    report.param("m", p.m);
    report.param("r", p.r);
    report.param("u", p.u);
    if let Some(v) = p.v {
        report.param("v", v);
    }
    report.param(
        "cuts",
        p.cuts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
}

fn build(p: &Provenance) -> Result<ConvRecord> {
    let f = field(p.q)?;
    match p.construction {
        Construction::UnitMemoryBinary => construct_unit_memory_binary(&f, p.m, p.r, p.u),
        Construction::DualUnitMemoryBinary => {
            dual_record(&construct_unit_memory_binary(&f, p.m, p.r, p.u)?)
        }
        Construction::TwoMemoryBinary => {
            construct_two_memory_binary(&f, p.m, p.r, p.v.unwrap_or(0), p.u)
        }
        Construction::UnitMemoryLary => construct_unit_memory_lary(&f, p.l, p.m, p.r, p.u),
        Construction::MultiMemory => construct_multi_memory(&f, p.l, p.m, &p.cuts),
    }
}

/// Structural checks plus, when caps are given, a light-codeword search whose
/// witness must not undercut the stated bound.
fn check_record(rec: &ConvRecord, caps: Option<SearchCaps>, budget: &Budget) -> Vec<Check> {
    let mut checks = crate::convo::verify_record(rec, budget).checks;
    if let Some(caps) = caps {
        if rec.designed.bound == BoundKind::Dual {
            checks.push(Check {
                name: "free-distance-witness".into(),
                status: CheckStatus::Uncertified,
                detail: "the record carries the primal generator; no dual encoder is built".into(),
            });
        } else {
            checks.push(witness_check(rec, &caps, budget));
        }
    }
    checks
}

pub fn witness_check(rec: &ConvRecord, caps: &SearchCaps, budget: &Budget) -> Check {
    let bound = rec.designed.df_lower as usize;
    let (status, detail) = match free_distance_search(&rec.generator, caps, budget) {
        Ok(res) if res.value < bound => (
            CheckStatus::Fail,
            format!("codeword of weight {} below d_f ≥ {bound}", res.value),
        ),
        Ok(res) => (
            CheckStatus::Pass,
            format!("{} against d_f ≥ {bound}", describe_distance(&res)),
        ),
        Err(e) => (CheckStatus::Uncertified, e.to_string()),
    };
    Check {
        name: "free-distance-witness".into(),
        status,
        detail,
    }
}

fn cmd_construct(
    echo: &str,
    theorem: Theorem,
    params: &CodeParams,
    caps: Option<SearchCaps>,
    strict: bool,
    output: Option<&Path>,
    budget: &Budget,
) -> Result<RunReport> {
    let p = provenance(theorem, params)?;
    let mut report = RunReport::new(echo);
    echo_params(&mut report, &p);
    let rec = build(&p)?;
    report.conditions = conditions_for(&rec.provenance);
    if strict {
        for c in literal_conditions(&rec.provenance) {
            if !c.holds {
                report.notes.push(format!(
                    "printed variant `{}` does not hold ({}); the governing condition does",
                    c.name, c.detail
                ));
            }
            report.conditions.push(c);
        }
    }
    report.designed = Some(rec.designed.clone());
    report.tuple = Some(rec.designed.tuple_q(p.q));
    report.notes.extend(rec.notes.iter().cloned());
    report.checks = check_record(&rec, caps, budget);
    report.finish();
    if let Some(path) = output {
        let doc = rec.to_json(Some(crate::convo::VerificationReport {
            checks: report.checks.clone(),
        }));
        write_file(path, &(doc + "\n"))?;
    }
    Ok(report)
}

fn cmd_verify(echo: &str, path: &Path, budget: &Budget) -> Result<RunReport> {
    let rec = ConvRecord::from_json(&read_file(path)?)?;
    let mut report = RunReport::new(echo);
    echo_params(&mut report, &rec.provenance);
    report.designed = Some(rec.designed.clone());
    report.tuple = Some(rec.designed.tuple_q(rec.provenance.q));
    report.checks = check_record(&rec, None, budget);
    report.finish();
    Ok(report)
}

fn parse_message(message: &str, k: usize) -> Result<Vec<Poly>> {
    let parts: Vec<&str> = message.split(';').collect();
    if parts.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "message has {} components, the generator has {k} rows",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|part| {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Poly::zero());
            }
            part.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parameter(format!("bad coefficient `{c}`")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Poly::from_coeffs)
        })
        .collect()
}

fn cmd_encode(echo: &str, path: &Path, message: &str) -> Result<RunReport> {
    let rec = ConvRecord::from_json(&read_file(path)?)?;
    let g = &rec.generator;
    let u = parse_message(message, g.rows())?;
    if let Some(bad) = u
        .iter()
        .flat_map(|p| p.coeffs().iter())
        .find(|&&c| !g.field().contains(c))
    {
        return Err(Error::Parameter(format!(
            "{bad} is not an element of GF({})",
            g.field().q()
        )));
    }
    let v = encode(&u, g)?;
    let mut report = RunReport::new(echo);
    echo_params(&mut report, &rec.provenance);
    report.param("weight", weight(&v));
    report.codeword = Some(v.iter().map(Poly::to_text).collect());
    Ok(report)
}

pub struct MindistOptions {
    pub code: CodeKind,
    pub file: Option<PathBuf>,
    pub role: MatrixRole,
    pub dual: bool,
    pub method: MethodArg,
    pub weight_cap: Option<usize>,
    pub degree_cap: Option<usize>,
}

fn cmd_mindist(
    echo: &str,
    params: &CodeParams,
    opts: &MindistOptions,
    budget: &Budget,
) -> Result<RunReport> {
    let mut report = RunReport::new(echo);
    if opts.code == CodeKind::Record {
        let path = opts
            .file
            .as_ref()
            .ok_or_else(|| Error::Parameter("--file is required".into()))?;
        let rec = ConvRecord::from_json(&read_file(path)?)?;
        if !matches!(opts.method, MethodArg::Trellis | MethodArg::Auto) {
            return Err(Error::Parameter(
                "records support --method trellis or auto".into(),
            ));
        }
        echo_params(&mut report, &rec.provenance);
        let caps = SearchCaps {
            degree_cap: opts.degree_cap.unwrap_or(SearchCaps::default().degree_cap),
            weight_cap: opts.weight_cap.unwrap_or(usize::MAX),
        };
        report.distance = Some(free_distance_search(&rec.generator, &caps, budget)?);
        return Ok(report);
    }

    let (g, h) = match opts.code {
        CodeKind::Char => {
            let l = params.l.unwrap_or(2);
            let m = need(params.m, "m")?;
            let r = need(params.r, "r")?;
            report.param("q", params.q);
            report.param("l", l);
            report.param("m", m);
            report.param("r", r);
            let code = build_char_code(&field(params.q)?, l, m, r)?;
            (code.generator, code.parity_check)
        }
        CodeKind::Matrix => {
            let path = opts
                .file
                .as_ref()
                .ok_or_else(|| Error::Parameter("--file is required".into()))?;
            let mat = MatrixFq::from_text(&read_file(path)?)?;
            report.param("file", path.display());
            match opts.role {
                MatrixRole::Generator => {
                    let h = mat.kernel_basis();
                    (mat, h)
                }
                MatrixRole::Parity => (mat.kernel_basis(), mat),
            }
        }
        CodeKind::Record => unreachable!(),
    };
    let (g, h) = if opts.dual { (h, g) } else { (g, h) };
    report.param("dual", opts.dual);
    report.param("n", g.cols());
    report.param("k", g.rank());
    let cap = opts.weight_cap.unwrap_or(g.cols());
    let res = match opts.method {
        MethodArg::Enum => min_distance_enumeration(&g, budget)?,
        MethodArg::Columns => min_dependent_columns(&h, cap, budget)?,
        MethodArg::Support => min_distance_low_weight(&h, cap, budget)?,
        MethodArg::Auto => min_distance_of(&h, &g, budget)?,
        MethodArg::Trellis => {
            return Err(Error::Parameter(
                "--method trellis applies to --code record".into(),
            ))
        }
    };
    report.distance = Some(res);
    Ok(report)
}

fn cmd_params(echo: &str, theorem: Theorem, params: &CodeParams) -> Result<RunReport> {
    let p = provenance(theorem, params)?;
    let mut report = RunReport::new(echo);
    echo_params(&mut report, &p);
    report.conditions = conditions_for(&p);
    report.conditions.extend(literal_conditions(&p));
    let designed = formula_params(&p)?;
    if p.construction == Construction::TwoMemoryBinary {
        report.param(
            "stated_degree",
            stated_two_memory_degree(p.m, p.r, p.u.min(p.v.unwrap_or(0))),
        );
    }
    report.tuple = Some(designed.tuple_q(p.q));
    report.designed = Some(designed);
    Ok(report)
}

#[derive(Debug, Serialize)]
struct SweepRow {
    theorem: &'static str,
    q: u32,
    l: u32,
    m: u32,
    r: u32,
    v: Option<u32>,
    u: u32,
    n: u64,
    k: u64,
    degree: u64,
    stated_degree: Option<u64>,
    memory: String,
    df_lower: u64,
}

fn cmd_params_sweep(
    theorem: Theorem,
    params: &CodeParams,
    max_m: u32,
    format: Format,
) -> Result<String> {
    let q = params.q;
    let mut rows = Vec::new();
    let mut push = |m, r, v: Option<u32>, u, l, d: DesignedParams, stated| {
        rows.push(SweepRow {
            theorem: construction(theorem).id(),
            q,
            l,
            m,
            r,
            v,
            u,
            n: d.n,
            k: d.k,
            degree: d.degree,
            stated_degree: stated,
            memory: d.memory.map_or("mu".into(), |m| m.to_string()),
            df_lower: d.df_lower,
        });
    };
    match theorem {
        Theorem::T2 | Theorem::Cor1 => {
            for (m, r, u) in valid_unit_memory_binary(max_m) {
                let d = if theorem == Theorem::T2 {
                    designed_unit_memory_binary(m, r, u)?
                } else {
                    designed_dual_unit_memory_binary(m, r, u)?
                };
                push(m, r, None, u, 2, d, None);
            }
        }
        Theorem::T3 => {
            for (m, r, v, u) in valid_two_memory_binary(max_m) {
                let d = crate::convo::designed_two_memory_binary(m, r, v, u)?;
                push(
                    m,
                    r,
                    Some(v),
                    u,
                    2,
                    d,
                    Some(stated_two_memory_degree(m, r, v)),
                );
            }
        }
        Theorem::T4 => {
            let l = need(params.l, "l")?;
            for (m, r, u) in valid_unit_memory_lary(q, l, max_m) {
                let d = crate::convo::designed_unit_memory_lary(q, l, m, r, u)?;
                push(m, r, None, u, l, d, None);
            }
        }
        Theorem::Multi => {
            return Err(Error::Parameter(
                "the multi-memory family has no parameter grid to sweep".into(),
            ))
        }
    }
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"),
        Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row)
                    .map_err(|e| Error::Parameter(e.to_string()))?;
            }
            if rows.is_empty() {
                w.write_record([
                    "theorem",
                    "q",
                    "l",
                    "m",
                    "r",
                    "v",
                    "u",
                    "n",
                    "k",
                    "degree",
                    "stated_degree",
                    "memory",
                    "df_lower",
                ])
                .map_err(|e| Error::Parameter(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Parameter(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
    }
}

/// A printed tuple `(n, k, δ; μ, d_f ≥ b)_q`; `memory = None` is `μ`.
#[derive(Debug, Clone, Copy)]
pub struct PrintedRow {
    pub locus: &'static str,
    /// Field order of the group the row is listed under.
    pub group: u32,
    /// Subscript as printed.
    pub q: u32,
    pub n: u64,
    pub k: u64,
    pub degree: u64,
    pub memory: Option<u64>,
    pub df: u64,
    pub reference: &'static str,
}

impl PrintedRow {
    fn tuple(&self) -> String {
        DesignedParams {
            n: self.n,
            k: self.k,
            degree: self.degree,
            memory: self.memory,
            df_lower: self.df,
            bound: if self.memory.is_some() {
                BoundKind::Primal
            } else {
                BoundKind::Dual
            },
        }
        .tuple_q(self.q)
    }
}

const fn row(
    locus: &'static str,
    group: u32,
    q: u32,
    (n, k, degree): (u64, u64, u64),
    memory: Option<u64>,
    df: u64,
    reference: &'static str,
) -> PrintedRow {
    PrintedRow {
        locus,
        group,
        q,
        n,
        k,
        degree,
        memory,
        df,
        reference,
    }
}

const MU: Option<u64> = None;
const ONE: Option<u64> = Some(1);

/// Worked-example tuples followed by the table rows, as printed.
pub const PRINTED_ROWS: &[PrintedRow] = &[
    row("example, m=5 primal", 3, 3, (32, 17, 10), ONE, 4, ""),
    row("example, m=5 dual", 3, 3, (32, 15, 10), MU, 9, ""),
    row("example, m=6 primal", 3, 3, (64, 42, 15), ONE, 4, ""),
    row("example, m=6 dual", 3, 3, (64, 22, 15), MU, 17, ""),
    row(
        "table q=3 row 1",
        3,
        3,
        (32, 15, 10),
        MU,
        9,
        "(32, 16, γ; 1, d_f ≥ 5)_3",
    ),
    row(
        "table q=3 row 2",
        3,
        3,
        (64, 42, 15),
        ONE,
        4,
        "(64, 32, γ; 1, d_f ≥ 6)_3",
    ),
    row(
        "table q=3 row 3",
        3,
        3,
        (64, 22, 15),
        MU,
        17,
        "(64, 16, γ; 1, d_f ≥ 8)_3",
    ),
    row(
        "table q=3 row 4",
        3,
        3,
        (128, 64, 35),
        ONE,
        8,
        "(128, 64, γ; 1, d_f ≥ 6)_3",
    ),
    row(
        "table q=3 row 5",
        3,
        3,
        (128, 64, 35),
        ONE,
        8,
        "(128, 32, γ; 1, d_f ≥ 8)_3",
    ),
    row(
        "table q=3 row 6",
        3,
        3,
        (128, 64, 35),
        MU,
        17,
        "(128, 32, γ; 1, d_f ≥ 8)_3",
    ),
    row(
        "table q=5 row 1",
        5,
        5,
        (32, 15, 10),
        MU,
        9,
        "(32, 16, γ; 1, d_f ≥ 5)_5",
    ),
    row(
        "table q=5 row 2",
        5,
        5,
        (64, 42, 15),
        ONE,
        4,
        "(64, 32, γ; 1, d_f ≥ 5)_5",
    ),
    row(
        "table q=5 row 3",
        5,
        5,
        (64, 22, 15),
        MU,
        17,
        "(64, 16, γ; 1, d_f ≥ 6)_5",
    ),
    row(
        "table q=5 row 4",
        5,
        5,
        (128, 64, 35),
        ONE,
        8,
        "(128, 64, γ; 1, d_f ≥ 5)_5",
    ),
    row(
        "table q=5 row 5",
        5,
        5,
        (128, 64, 35),
        ONE,
        8,
        "(128, 32, γ; 1, d_f ≥ 6)_5",
    ),
    row("table q=5 row 6", 5, 5, (128, 64, 35), MU, 17, "----"),
    row(
        "table q=7 row 1",
        7,
        7,
        (32, 15, 10),
        MU,
        9,
        "(32, 16, γ; 1, d_f ≥ 8)_7",
    ),
    row(
        "table q=7 row 2",
        7,
        7,
        (64, 42, 15),
        ONE,
        4,
        "(64, 48, γ; 1, d_f ≥ 5)_7",
    ),
    row(
        "table q=7 row 3",
        7,
        7,
        (64, 22, 15),
        MU,
        17,
        "(64, 8, γ; 1, d_f ≥ 14)_7",
    ),
    row(
        "table q=7 row 4",
        7,
        7,
        (128, 64, 35),
        MU,
        17,
        "(128, 64, γ; 1, d_f ≥ 8)_7",
    ),
    row(
        "table q=7 row 5",
        7,
        7,
        (128, 64, 35),
        MU,
        17,
        "(128, 16, γ; 1, d_f ≥ 14)_7",
    ),
    row(
        "table q=9 row 1",
        9,
        9,
        (32, 15, 10),
        MU,
        9,
        "(32, 16, γ; 1, d_f ≥ 8)_9",
    ),
    row(
        "table q=9 row 2",
        9,
        9,
        (64, 42, 15),
        ONE,
        4,
        "(64, 48, γ; 1, d_f ≥ 5)_9",
    ),
    row(
        "table q=9 row 3",
        9,
        9,
        (64, 22, 15),
        MU,
        17,
        "(64, 8, γ; 1, d_f ≥ 12)_9",
    ),
    row(
        "table q=9 row 4",
        9,
        7,
        (128, 64, 35),
        MU,
        17,
        "(128, 64, γ; 1, d_f ≥ 8)_7",
    ),
    row(
        "table q=9 row 5",
        9,
        7,
        (128, 64, 35),
        MU,
        17,
        "(128, 16, γ; 1, d_f ≥ 12)_7",
    ),
    row(
        "table q=11 row 1",
        11,
        11,
        (32, 15, 10),
        MU,
        9,
        "(32, 8, γ; 1, d_f ≥ 6)_11",
    ),
    row(
        "table q=11 row 2",
        11,
        11,
        (64, 42, 15),
        ONE,
        4,
        "(64, 32, γ; 1, d_f ≥ 5)_11",
    ),
    row(
        "table q=11 row 3",
        11,
        11,
        (64, 22, 15),
        MU,
        17,
        "(64, 16, γ; 1, d_f ≥ 6)_11",
    ),
    row(
        "table q=11 row 4",
        11,
        11,
        (128, 64, 35),
        ONE,
        8,
        "(128, 64, γ; 1, d_f ≥ 5)_11",
    ),
    row(
        "table q=11 row 5",
        11,
        11,
        (128, 64, 35),
        MU,
        17,
        "(128, 32, γ; 1, d_f ≥ 6)_11",
    ),
];

/// Finds `(m, r, u)` whose unit-memory (or dual) parameters reproduce the row,
/// or else the candidate of the same length agreeing in the most fields.
pub fn match_printed_row(row: &PrintedRow) -> Option<((u32, u32, u32), DesignedParams)> {
    let dual = row.memory.is_none();
    let mut best: Option<(usize, (u32, u32, u32), DesignedParams)> = None;
    for (m, r, u) in valid_unit_memory_binary(10) {
        if 1u64 << m != row.n {
            continue;
        }
        let d = if dual {
            designed_dual_unit_memory_binary(m, r, u)
        } else {
            designed_unit_memory_binary(m, r, u)
        }
        .ok()?;
        let score = [
            d.k == row.k,
            d.degree == row.degree,
            d.memory == row.memory,
            d.df_lower == row.df,
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if best.as_ref().map_or(true, |b| score > b.0) {
            best = Some((score, (m, r, u), d));
        }
    }
    best.map(|(_, mru, d)| (mru, d))
}

pub fn cmd_table1(echo: &str, verify: bool, budget: &Budget) -> Result<RunReport> {
    let mut report = RunReport::new(echo);
    for pr in PRINTED_ROWS {
        let printed = pr.tuple();
        let found = match_printed_row(pr);
        let (computed, mru, matches) = match &found {
            Some((mru, d)) => {
                let c = d.tuple_q(pr.q);
                (Some(c.clone()), Some(*mru), c == printed)
            }
            None => (None, None, false),
        };
        if !matches {
            report.discrepancies.push(Discrepancy {
                printed: printed.clone(),
                computed: computed
                    .clone()
                    .unwrap_or_else(|| "no valid (m, r, u)".into()),
                locus: pr.locus.into(),
            });
        }
        if pr.q != pr.group {
            report.notes.push(format!(
                "{}: subscript {} printed inside the q={} group; designed parameters do not depend on q",
                pr.locus, pr.q, pr.group
            ));
        }
        if verify {
            if let Some(((m, r, u), _)) = found {
                let f = field(pr.q)?;
                let primal = construct_unit_memory_binary(&f, m, r, u)?;
                let rec = if pr.memory.is_none() {
                    dual_record(&primal)?
                } else {
                    primal
                };
                for mut c in crate::convo::verify_record(&rec, budget).checks {
                    c.name = format!("{} {}", pr.locus, c.name);
                    report.checks.push(c);
                }
            }
        }
        report.rows.push(TableRow {
            locus: pr.locus.into(),
            printed,
            computed,
            mru,
            matches,
            reference: pr.reference.into(),
        });
    }
    report.finish();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_flags_only_length_32_rows_at_q3() {
        let rep = cmd_table1("table1", false, &Budget::default()).unwrap();
        let flagged: Vec<&str> = rep
            .rows
            .iter()
            .filter(|r| r.locus.contains("q=3") || r.locus.starts_with("example"))
            .filter(|r| !r.matches)
            .map(|r| r.locus.as_str())
            .collect();
        assert_eq!(
            flagged,
            vec![
                "example, m=5 primal",
                "example, m=5 dual",
                "table q=3 row 1"
            ]
        );
        let row4 = rep
            .rows
            .iter()
            .find(|r| r.locus == "table q=3 row 4")
            .unwrap();
        assert_eq!(row4.mru, Some((7, 2, 3)));
        assert!(rep.passed);
    }

    #[test]
    fn message_parsing() {
        let u = parse_message("1,2;0;", 3).unwrap();
        assert_eq!(u[0], Poly::from_coeffs(vec![1, 2]));
        assert!(u[1].is_zero() && u[2].is_zero());
        assert!(parse_message("1;2", 3).is_err());
        assert!(parse_message("x", 1).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::parse(1, "x")), 3);
        assert_eq!(
            exit_code(&Error::BudgetExceeded {
                what: "x",
                needed: 2,
                budget: 1
            }),
            4
        );
        assert_eq!(exit_code(&Error::precondition("m >= 3", "m = 2")), 2);
    }
}
