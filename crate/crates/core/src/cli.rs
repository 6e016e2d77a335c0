//! Command-line front end.
//!
//! Exit status: 0 for a positive verdict (or plain success), 1 for a
//! negative verdict, 2 for errors. Errors go to stderr as
//! `error[CODE]: message`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::abduce::{
    explain_credulous, gen_skeptical_consequence, gsm_enumerate, AbductionFramework,
    RankedExplanation, SkolemBudget,
};
use crate::error::{Error, Result};
use crate::herbrand::{herbrand_universe, signature};
use crate::open::{completions_nf, has_consistent_completion, open_entails, OpenMode};
use crate::parse::{parse_open_program, parse_program, parse_query};
use crate::pi::{export_text, ground_translate, open_entails_via_pi, translate, unfold};
use crate::stable::{entails_models, stable_models, EntailMode, SolveConfig};
use crate::syntax::{Interpretation, OpenProgram, Symbol};

#[derive(Debug, Parser)]
#[command(
    name = "openlp",
    version,
    about = "Open logic programs under the stable model semantics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Enumeration cap (overrides OPENLP_MAX_ATOMS).
    #[arg(long, global = true)]
    pub max_atoms: Option<usize>,
    /// Include wall time in the statistics.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print all stable models.
    Solve(SolveArgs),
    /// Credulous or skeptical entailment of a ground query.
    Query(QueryArgs),
    /// One of the four open-inference modes.
    OpenQuery(OpenQueryArgs),
    /// Print the translation of an open program.
    Translate(TranslateArgs),
    /// Explanations under (open) generalized stable models.
    Abduce(AbduceArgs),
    /// Consistency and existence of a consistent completion.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Extra term nesting for programs with function symbols.
    #[arg(long, default_value_t = 0)]
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EntailArg {
    Credulous,
    Skeptical,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: EntailArg,
    #[arg(long)]
    pub query: String,
    #[arg(long, default_value_t = 0)]
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OpenModeArg {
    Crd,
    Skp,
    Cs,
    Sc,
}

impl From<OpenModeArg> for OpenMode {
    fn from(m: OpenModeArg) -> Self {
        match m {
            OpenModeArg::Crd => OpenMode::Crd,
            OpenModeArg::Skp => OpenMode::Skp,
            OpenModeArg::Cs => OpenMode::Cs,
            OpenModeArg::Sc => OpenMode::Sc,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Engine {
    Oracle,
    Pi,
}

#[derive(Debug, Args)]
pub struct OpenQueryArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: OpenModeArg,
    #[arg(long)]
    pub query: String,
    #[arg(long, value_enum, default_value = "oracle")]
    pub engine: Engine,
    #[arg(long, default_value_t = 0)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Ground the translation.
    #[arg(long, conflicts_with = "unfold")]
    pub ground: bool,
    /// Unfold the domain machinery (no fresh symbols only).
    #[arg(long)]
    pub unfold: bool,
    #[arg(long, default_value_t = 0)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct AbduceArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Observation to explain; without it all generalized stable models are listed.
    #[arg(long)]
    pub query: Option<String>,
    /// Number of skolem individuals that may be postulated.
    #[arg(long, default_value_t = 0)]
    pub budget: usize,
    /// Look for explanations entailing the query in every stable model.
    #[arg(long)]
    pub skeptical_consequence: bool,
    /// Accept explanations with no stable model (skeptical consequences only).
    #[arg(long)]
    pub allow_inconsistent: bool,
    /// Additional abducible predicate, as name/arity.
    #[arg(long = "abducible", value_parser = parse_symbol)]
    pub abducibles: Vec<Symbol>,
    /// List non-minimal explanations too.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

fn parse_symbol(s: &str) -> std::result::Result<Symbol, String> {
    let (name, arity) = s
        .split_once('/')
        .ok_or_else(|| format!("expected name/arity, got `{s}`"))?;
    let arity = arity.parse().map_err(|_| format!("bad arity in `{s}`"))?;
    Ok(Symbol::new(name, arity))
}

#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completions: Option<usize>,
    pub models: usize,
    pub explanations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rules: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct CommandReport {
    pub verdict: Option<bool>,
    pub models: Vec<Vec<String>>,
    pub explanations: Vec<Vec<String>>,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<String>,
    #[serde(skip)]
    pub text: String,
}

impl CommandReport {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn read_inputs(files: &[PathBuf]) -> Result<String> {
    let mut text = String::new();
    for f in files {
        let chunk = std::fs::read_to_string(f)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", f.display())))?;
        text.push_str(&chunk);
        text.push('\n');
    }
    Ok(text)
}

fn verdict_line(v: bool) -> &'static str {
    if v {
        "YES"
    } else {
        "NO"
    }
}

fn write_models(text: &mut String, models: &[Interpretation]) {
    for (i, m) in models.iter().enumerate() {
        let _ = writeln!(text, "Answer {}: {m}", i + 1);
    }
}

fn solve(args: &SolveArgs, cfg: &SolveConfig) -> Result<CommandReport> {
    let p = parse_program(&read_inputs(&args.files)?)?;
    let domain = herbrand_universe(&signature(&p), args.depth);
    let models = stable_models(&p, &domain, cfg)?;
    let mut text = String::new();
    write_models(&mut text, &models);
    let consistent = !models.is_empty();
    let _ = writeln!(
        text,
        "{}",
        if consistent {
            "SATISFIABLE"
        } else {
            "UNSATISFIABLE"
        }
    );
    let _ = writeln!(text, "Models: {}", models.len());
    Ok(CommandReport {
        verdict: Some(consistent),
        models: models.iter().map(Interpretation::to_strings).collect(),
        stats: Stats {
            models: models.len(),
            ..Stats::default()
        },
        text,
        ..CommandReport::default()
    })
}

fn query(args: &QueryArgs, cfg: &SolveConfig) -> Result<CommandReport> {
    let p = parse_program(&read_inputs(&args.files)?)?;
    let q = parse_query(&args.query)?;
    let domain = herbrand_universe(&signature(&p), args.depth);
    let models = stable_models(&p, &domain, cfg)?;
    let mode = match args.mode {
        EntailArg::Credulous => EntailMode::Credulous,
        EntailArg::Skeptical => EntailMode::Skeptical,
    };
    let verdict = entails_models(&models, mode, &q);
    Ok(CommandReport {
        verdict: Some(verdict),
        stats: Stats {
            models: models.len(),
            ..Stats::default()
        },
        text: format!("{}\n", verdict_line(verdict)),
        ..CommandReport::default()
    })
}

fn open_query(args: &OpenQueryArgs, cfg: &SolveConfig) -> Result<CommandReport> {
    let omega = parse_open_program(&read_inputs(&args.files)?)?;
    let q = parse_query(&args.query)?;
    let mode = OpenMode::from(args.mode);
    let (verdict, completions) = match args.engine {
        Engine::Oracle => (
            open_entails(&omega, mode, &q, cfg)?,
            Some(completions_nf(&omega, cfg)?.len()),
        ),
        Engine::Pi => (
            open_entails_via_pi(&omega, mode, &q, args.depth, cfg)?,
            None,
        ),
    };
    Ok(CommandReport {
        verdict: Some(verdict),
        stats: Stats {
            completions,
            ..Stats::default()
        },
        text: format!("{}\n", verdict_line(verdict)),
        ..CommandReport::default()
    })
}

fn translate_cmd(args: &TranslateArgs, cfg: &SolveConfig) -> Result<CommandReport> {
    let omega = parse_open_program(&read_inputs(&args.files)?)?;
    let pi = translate(&omega)?;
    let program = if args.unfold {
        unfold(&pi, args.depth)?
    } else if args.ground {
        ground_translate(&pi, args.depth, cfg)?
    } else {
        pi.program.clone()
    };
    let text = if args.ground || args.unfold {
        export_text(&program)?
    } else {
        program.to_string()
    };
    Ok(CommandReport {
        verdict: None,
        stats: Stats {
            rules: Some(text.lines().count()),
            ..Stats::default()
        },
        program: Some(text.clone()),
        text,
        ..CommandReport::default()
    })
}

fn framework(omega: OpenProgram, extra: &[Symbol]) -> Result<AbductionFramework> {
    if let Some(f) = omega.fresh.iter().next() {
        return Err(Error::Scope(format!(
            "#fresh {f} is not used by abduce; skolem individuals come from --budget"
        )));
    }
    let mut abducibles: BTreeSet<Symbol> = omega.open;
    abducibles.extend(extra.iter().cloned());
    Ok(AbductionFramework::new(omega.program, abducibles))
}

fn abduce_cmd(args: &AbduceArgs, cfg: &SolveConfig) -> Result<CommandReport> {
    let fr = framework(
        parse_open_program(&read_inputs(&args.files)?)?,
        &args.abducibles,
    )?;
    let budget = SkolemBudget::new(args.budget);
    let mut text = String::new();

    let Some(qtext) = &args.query else {
        let pairs = gsm_enumerate(&fr, budget, cfg)?;
        for (e, m) in &pairs {
            let _ = writeln!(text, "Explanation {e}: {m}");
        }
        let _ = writeln!(text, "Models: {}", pairs.len());
        return Ok(CommandReport {
            verdict: None,
            models: pairs.iter().map(|(_, m)| m.to_strings()).collect(),
            explanations: pairs.iter().map(|(e, _)| e.atom_strings()).collect(),
            stats: Stats {
                models: pairs.len(),
                explanations: pairs.len(),
                ..Stats::default()
            },
            text,
            ..CommandReport::default()
        });
    };

    let q = parse_query(qtext)?;
    let found: Vec<RankedExplanation> = if args.skeptical_consequence {
        gen_skeptical_consequence(&fr, budget, &q, !args.allow_inconsistent, cfg)?
    } else {
        explain_credulous(&fr, budget, &q, cfg)?
    };
    let shown: Vec<&RankedExplanation> = found.iter().filter(|r| args.all || r.minimal).collect();
    for (i, r) in shown.iter().enumerate() {
        let mark = if r.minimal { "" } else { " (not minimal)" };
        let _ = writeln!(text, "Explanation {}: {}{mark}", i + 1, r.explanation);
    }
    let verdict = !found.is_empty();
    let _ = writeln!(text, "{}", verdict_line(verdict));
    Ok(CommandReport {
        verdict: Some(verdict),
        explanations: shown.iter().map(|r| r.explanation.atom_strings()).collect(),
        stats: Stats {
            explanations: shown.len(),
            ..Stats::default()
        },
        text,
        ..CommandReport::default()
    })
}

fn check(args: &CheckArgs, cfg: &SolveConfig) -> Result<CommandReport> {
    let omega = parse_open_program(&read_inputs(&args.files)?)?;
    let p = &omega.program;
    let models = stable_models(p, &herbrand_universe(&signature(p), 0), cfg)?;
    let consistent = !models.is_empty();
    let completions = completions_nf(&omega, cfg)?.len();
    let has_completion = has_consistent_completion(&omega, cfg)?;
    let text = format!(
        "consistent: {}\nconsistent completion: {}\n",
        if consistent { "yes" } else { "no" },
        if has_completion { "yes" } else { "no" },
    );
    Ok(CommandReport {
        verdict: Some(has_completion),
        stats: Stats {
            completions: Some(completions),
            models: models.len(),
            ..Stats::default()
        },
        text,
        ..CommandReport::default()
    })
}

fn dispatch(cli: &Cli, cfg: &SolveConfig) -> Result<CommandReport> {
    match &cli.command {
        Command::Solve(a) => solve(a, cfg),
        Command::Query(a) => query(a, cfg),
        Command::OpenQuery(a) => open_query(a, cfg),
        Command::Translate(a) => translate_cmd(a, cfg),
        Command::Abduce(a) => abduce_cmd(a, cfg),
        Command::Check(a) => check(a, cfg),
    }
}

/// Runs a parsed command line on a pool of `--threads` workers.
pub fn execute(cli: &Cli) -> Result<CommandReport> {
    let mut cfg = SolveConfig::from_env();
    if let Some(n) = cli.global.max_atoms {
        cfg.max_atoms = n;
    }
    cfg.parallel = crate::par::AVAILABLE && cli.global.threads > 1;
    let start = Instant::now();
    let mut report = run_pool(cli.global.threads, || dispatch(cli, &cfg))?;
    if cli.global.timing {
        let ms = start.elapsed().as_millis();
        report.stats.wall_ms = Some(ms);
        let _ = writeln!(report.text, "Time: {ms} ms");
    }
    Ok(report)
}

#[cfg(feature = "parallel")]
fn run_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(f);
        }
    }
    f()
}

#[cfg(not(feature = "parallel"))]
fn run_pool<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Parses `args`, runs the command and prints the report. Returns the exit
/// status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.global.json));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            2
        }
    }
}
