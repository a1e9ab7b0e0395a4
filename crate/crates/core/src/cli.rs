//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error, 3 invalid
//! input (malformed MDP, trace that does not fit its instance), 4 iteration
//! budget exhausted, 5 verification failed.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{HardInstance, InstanceParams};
use crate::iteration::{run, Criterion, RunConfig, TieMode, TraceRecord};
use crate::mdp::{Mdp, MdpJson, Policy};
use crate::rational::{format, int, pow2};
use crate::trace_io::{read_trace, write_trace};
use crate::verify::{verify_criterion_equivalence, Audit, CheckReport, VerifyReport};

/// Environment variable naming the directory for outputs whose path is not
/// given explicitly.
pub const OUT_DIR_ENV: &str = "PI_LOWERBOUND_OUT_DIR";

pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_VERIFY: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "pi-lowerbound", version, about = "Greedy policy iteration on exponential lower-bound MDPs")]
pub struct Cli {
    /// TOML file with defaults for criterion, tie_mode, max_iterations,
    /// out_dir and record_values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the instance with `n` bits as JSON, plus a name map.
    Generate(GenerateArgs),
    /// Run policy iteration and write the trace.
    Run(RunArgs),
    /// Check a trace against the predicted counter behaviour.
    Verify(VerifyArgs),
    /// Iteration counts for a range of `n`.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=62))]
    pub n: u32,
    /// Instance path; the name map goes next to it as `<stem>.names.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a Graphviz rendering.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Use the generated instance with this many bits.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=62))]
    pub n: Option<u32>,
    /// Load an instance JSON file.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionArg {
    Total,
    Average,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Total => Criterion::TotalReward,
            CriterionArg::Average => Criterion::AverageReward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieArg {
    LowestIndex,
    Strict,
}

impl From<TieArg> for TieMode {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::LowestIndex => TieMode::LowestIndex,
            TieArg::Strict => TieMode::StrictError,
        }
    }
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum)]
    pub criterion: Option<CriterionArg>,
    #[arg(long, value_enum)]
    pub tie_mode: Option<TieArg>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iterations: Option<u64>,
    /// Trace output path.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Store exact values in the trace.
    #[arg(long)]
    pub record_values: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Trace to check. Without one, the instance is run afresh.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Criterion of a trace that carries no values.
    #[arg(long, value_enum)]
    pub criterion: Option<CriterionArg>,
    /// 1: exact checks only. 2: also compare every policy with the phase oracle.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub tier: u8,
    /// Also run both criteria and compare them.
    #[arg(long)]
    pub cross_check: bool,
    /// Report output path.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Inclusive range such as `1..6`, or a single value.
    #[arg(long, value_parser = parse_range)]
    pub n: (u32, u32),
    #[arg(long, value_enum)]
    pub criterion: Option<CriterionArg>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let parse = |t: &str| -> std::result::Result<u32, String> {
        t.trim().parse().map_err(|_| format!("{t:?} is not a number"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi || hi > 62 {
        return Err(format!("range {s:?} must satisfy 1 <= lo <= hi <= 62"));
    }
    Ok((lo, hi))
}

/// Defaults read from `--config`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub criterion: Option<CriterionArg>,
    pub tie_mode: Option<TieArg>,
    pub max_iterations: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub record_values: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))
    }
}

struct Ctx {
    file: FileConfig,
    out_dir: PathBuf,
}

impl Ctx {
    fn new(config: Option<&Path>) -> Result<Self> {
        let file = config.map(FileConfig::load).transpose()?.unwrap_or_default();
        let out_dir = std::env::var_os(OUT_DIR_ENV)
            .map(PathBuf::from)
            .or_else(|| file.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(Ctx { file, out_dir })
    }

    fn output(&self, explicit: Option<&PathBuf>, default_name: String) -> Result<PathBuf> {
        if let Some(p) = explicit {
            return Ok(p.clone());
        }
        fs::create_dir_all(&self.out_dir)?;
        Ok(self.out_dir.join(default_name))
    }

    fn criterion(&self, flag: Option<CriterionArg>) -> Criterion {
        flag.or(self.file.criterion).unwrap_or(CriterionArg::Total).into()
    }
}

/// Failure carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidMdp(_)
            | Error::TraceMismatch(_)
            | Error::PolicyLength { .. }
            | Error::ActionOutOfRange { .. }
            | Error::StateOutOfRange(_)
            | Error::DuplicateChange(_)
            | Error::ParseRational(_)
            | Error::Json(_)
            | Error::InvalidParams(_) => EXIT_INVALID,
            Error::IterationBudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_RUNTIME,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

type CmdResult = std::result::Result<u8, Failure>;

/// Parses `std::env::args` and runs the selected command.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(execute(cli))
}

pub fn execute(cli: Cli) -> u8 {
    let result = Ctx::new(cli.config.as_deref())
        .map_err(Failure::from)
        .and_then(|ctx| match cli.command {
            Command::Generate(a) => cmd_generate(&ctx, a),
            Command::Run(a) => cmd_run(&ctx, a),
            Command::Verify(a) => cmd_verify(&ctx, a),
            Command::Bench(a) => cmd_bench(&ctx, a),
        });
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[derive(Serialize)]
struct NameMapFile {
    params: InstanceParams,
    state_names: std::collections::BTreeMap<usize, String>,
}

fn build(n: u32) -> Result<HardInstance> {
    HardInstance::build(InstanceParams::new(n as usize)?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn cmd_generate(ctx: &Ctx, args: GenerateArgs) -> CmdResult {
    let inst = build(args.n)?;
    let out = ctx.output(args.out.as_ref(), format!("instance-n{}.json", args.n))?;
    let mut json = inst.mdp.to_json();
    json.initial_policy = Some(inst.initial_policy().choices().to_vec());
    write_json(&out, &json)?;

    let stem = out.file_stem().map_or_else(|| "instance".into(), |s| s.to_string_lossy().into_owned());
    let names_path = out.with_file_name(format!("{stem}.names.json"));
    write_json(
        &names_path,
        &NameMapFile {
            params: inst.params,
            state_names: inst.name_map(),
        },
    )?;
    if let Some(dot) = &args.dot {
        fs::write(dot, to_dot(&inst))?;
    }
    println!(
        "n={} states={} instance={} names={}",
        args.n,
        inst.mdp.n_states(),
        out.display(),
        names_path.display()
    );
    Ok(0)
}

/// Graphviz rendering: one node per state, one edge per transition labelled
/// with the action's reward (and probability when below one).
pub fn to_dot(inst: &HardInstance) -> String {
    let mut s = String::from("digraph instance {\n  rankdir=LR;\n");
    for id in inst.mdp.states() {
        s.push_str(&format!("  s{} [label=\"{}\"];\n", id.0, inst.name(id)));
    }
    for id in inst.mdp.states() {
        for a in inst.mdp.actions(id) {
            for (t, p) in &a.transitions {
                let label = if a.is_deterministic() {
                    format(&a.reward)
                } else {
                    format!("{} p={}", format(&a.reward), format(p))
                };
                s.push_str(&format!("  s{} -> s{} [label=\"{label}\"];\n", id.0, t.0));
            }
        }
    }
    s.push_str("}\n");
    s
}

/// An instance to run: the MDP, where to start, and its bit count when it is
/// (or equals) a generated instance.
struct Loaded {
    mdp: Mdp,
    initial: Policy,
    hard: Option<HardInstance>,
}

fn load(source: &Source) -> Result<Loaded> {
    if let Some(n) = source.n {
        let h = build(n)?;
        return Ok(Loaded {
            mdp: h.mdp.clone(),
            initial: h.initial_policy(),
            hard: Some(h),
        });
    }
    let path = source.instance.as_ref().expect("clap enforces one source");
    let json: MdpJson = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    let (mdp, initial) = json.into_unchecked()?;
    let report = mdp.validate();
    if !report.is_ok() {
        return Err(Error::InvalidMdp(report.to_string()));
    }
    let initial = match initial {
        Some(c) => Policy::new(&mdp, c)?,
        None => Policy::first_actions(&mdp),
    };
    let hard = recognise(&mdp)?;
    Ok(Loaded { mdp, initial, hard })
}

/// The generated instance equal to `mdp`, if there is one.
fn recognise(mdp: &Mdp) -> Result<Option<HardInstance>> {
    let k = mdp.n_states();
    if k < 11 || !(k - 4).is_multiple_of(7) || (k - 4) / 7 > crate::instance::MAX_BITS {
        return Ok(None);
    }
    let h = HardInstance::build(InstanceParams::new((k - 4) / 7)?)?;
    Ok((h.mdp == *mdp).then_some(h))
}

fn n_label(hard: &Option<HardInstance>) -> String {
    hard.as_ref().map_or_else(|| "-".to_string(), |h| h.n().to_string())
}

fn run_config(ctx: &Ctx, hard: &Option<HardInstance>, criterion: Criterion, tie: Option<TieArg>, max: Option<u64>, record: bool) -> RunConfig {
    let default_max = hard
        .as_ref()
        .map_or(RunConfig::DEFAULT_MAX_ITERATIONS, |h| RunConfig::instance_budget(h.n()));
    let max = max
        .or(ctx.file.max_iterations)
        .map_or(default_max, |m| usize::try_from(m).unwrap_or(usize::MAX));
    RunConfig::new(criterion)
        .with_max_iterations(max)
        .with_tie_mode(tie.or(ctx.file.tie_mode).unwrap_or(TieArg::LowestIndex).into())
        .with_record_values(record || ctx.file.record_values.unwrap_or(false))
}

fn cmd_run(ctx: &Ctx, args: RunArgs) -> CmdResult {
    let loaded = load(&args.source)?;
    let criterion = ctx.criterion(args.criterion);
    let config = run_config(ctx, &loaded.hard, criterion, args.tie_mode, args.max_iterations, args.record_values);
    let trace = run(&loaded.mdp, &loaded.initial, &config)?;

    let path = ctx.output(
        args.trace.as_ref(),
        format!("trace-n{}-{}.jsonl", n_label(&loaded.hard), criterion),
    )?;
    write_trace(&trace, BufWriter::new(File::create(&path)?))?;
    println!(
        "n={} criterion={} iterations={} terminated={}",
        n_label(&loaded.hard),
        criterion,
        trace.iteration_count(),
        trace.terminated
    );
    if trace.terminated {
        Ok(0)
    } else {
        eprintln!("error: {}", Error::IterationBudgetExceeded(config.max_iterations));
        Ok(EXIT_BUDGET)
    }
}

fn cmd_verify(ctx: &Ctx, args: VerifyArgs) -> CmdResult {
    let loaded = load(&args.source)?;
    let hard = loaded.hard.ok_or_else(|| {
        Error::InvalidParams("verify needs a generated lower-bound instance".into())
    })?;
    let criterion = ctx.criterion(args.criterion);
    let trace: TraceRecord = match &args.trace {
        Some(p) => read_trace(BufReader::new(File::open(p)?), &hard.mdp, &loaded.initial, criterion)?,
        None => {
            let config = run_config(ctx, &Some(hard.clone()), criterion, Some(TieArg::Strict), None, true);
            run(&hard.mdp, &loaded.initial, &config)?
        }
    };
    let audit = Audit::new(&hard, &trace)?;
    let mut report = if args.tier == 2 { audit.tier2() } else { audit.tier1() };
    if args.cross_check {
        report.extend(verify_criterion_equivalence(&hard)?);
    }
    let ok = report.all_pass();
    print_report(&report);
    let file = VerifyReport::new(&audit, report);
    println!(
        "n={} iterations={} milestones={} result={}",
        file.n,
        file.iterations,
        file.milestones.len(),
        if ok { "pass" } else { "FAIL" }
    );
    let path = ctx.output(args.report.as_ref(), format!("report-n{}.json", hard.n()))?;
    write_json(&path, &file)?;
    Ok(if ok { 0 } else { EXIT_VERIFY })
}

fn print_report(report: &CheckReport) {
    for c in &report.checks {
        let mut line = format!("{:<40} {}", c.name, if c.pass { "pass" } else { "FAIL" });
        if !c.mismatches.is_empty() {
            line.push_str(&format!(" ({} oracle mismatches)", c.mismatches.len()));
        }
        if let (false, Some(w)) = (c.pass, &c.witness) {
            line.push_str(&format!(" {}", serde_json::to_string(w).unwrap_or_default()));
        }
        println!("{line}");
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: u32,
    pub iterations: Option<usize>,
    pub pow2n: String,
    pub ratio: Option<String>,
    pub wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn bench_row(n: u32, criterion: Criterion, tie: TieMode) -> BenchRow {
    let started = Instant::now();
    let outcome = build(n).and_then(|h| {
        let config = RunConfig::new(criterion)
            .with_max_iterations(RunConfig::instance_budget(h.n()))
            .with_tie_mode(tie);
        run(&h.mdp, &h.initial_policy(), &config)?.require_terminated().map(|t| t.iteration_count())
    });
    let wall_ms = started.elapsed().as_millis();
    let pow = pow2(n);
    match outcome {
        Ok(k) => BenchRow {
            n,
            iterations: Some(k),
            pow2n: format(&pow),
            ratio: Some(format(&(int(k as i64) / &pow))),
            wall_ms,
            error: None,
        },
        Err(e) => BenchRow {
            n,
            iterations: None,
            pow2n: format(&pow),
            ratio: None,
            wall_ms,
            error: Some(e.to_string()),
        },
    }
}

fn cmd_bench(ctx: &Ctx, args: BenchArgs) -> CmdResult {
    let criterion = ctx.criterion(args.criterion);
    let tie: TieMode = ctx.file.tie_mode.unwrap_or(TieArg::LowestIndex).into();
    let (lo, hi) = args.n;
    let rows: Vec<BenchRow> = (lo..=hi)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| bench_row(n, criterion, tie))
        .collect();

    let mut text = String::new();
    match args.format {
        Format::Csv => {
            text.push_str("n,iterations,pow2n,ratio,wall_ms\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    r.iterations.map_or(String::new(), |k| k.to_string()),
                    r.pow2n,
                    r.ratio.clone().unwrap_or_default(),
                    r.wall_ms
                ));
            }
        }
        Format::Json => {
            text = serde_json::to_string_pretty(&rows).map_err(Error::from)?;
            text.push('\n');
        }
    }
    match &args.out {
        Some(p) => fs::write(p, &text)?,
        None => print!("{text}"),
    }

    let mut code = 0;
    for r in &rows {
        if let Some(e) = &r.error {
            eprintln!("error: n={}: {e}", r.n);
            code = code.max(EXIT_RUNTIME);
        } else if r.iterations.is_some_and(|k| (k as u128) < 1u128 << r.n) {
            eprintln!("error: n={}: fewer than 2^n iterations", r.n);
            code = EXIT_VERIFY;
        }
    }
    Ok(code)
}
