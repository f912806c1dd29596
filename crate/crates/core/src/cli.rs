//! Command-line front end used by the `pdfa` binary.
//!
//! [`run`] never touches the process: it parses arguments, does the work and
//! returns a [`CommandOutcome`] holding the exit code and both output
//! streams, which keeps the whole surface testable in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::automaton::{Alphabet, PartialDfa};
use crate::bounds::{self, BoundCheckReport, BoundId, Params, Relation};
use crate::equivalence::{distinguishing_word, equivalent};
use crate::error::Error;
use crate::format::{parse_dfa, render_dfa, render_dot};
use crate::minimize::{complexity, minimize};
use crate::ops::{complement, intersection_product, union_product};
use crate::oracle::{brute_min_transitions, verify_minimality};
use crate::witness::{WitnessFamily, WitnessSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        Self { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(exit_code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self { exit_code, stdout: String::new(), stderr }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pdfa", version, about = "State and transition complexity of incomplete DFAs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable output (key=value lines, tables)
    #[default]
    Text,
    /// One machine-readable line per report
    Lines,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print sc, tc, per-symbol tc and the Nerode class count of a DFA
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write the minimal DFA as Graphviz DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Apply a Boolean operation and report construction and minimal sizes
    Op {
        #[command(subcommand)]
        op: OpCommand,
    },
    /// Emit a witness automaton in .pdfa format
    Witness {
        #[command(subcommand)]
        family: FamilyArgs,
    },
    /// Check one bound, or the whole suite with --all
    Check(CheckArgs),
    /// Exhaustive-search oracle
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Args, Debug)]
struct OpOutput {
    /// Write the constructed (unminimized) DFA here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the minimized DFA here
    #[arg(long)]
    min_out: Option<PathBuf>,
    /// Write the minimized DFA as Graphviz DOT
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    Union {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        output: OpOutput,
    },
    Intersect {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        output: OpOutput,
    },
    Complement {
        input: PathBuf,
        #[command(flatten)]
        output: OpOutput,
    },
}

#[derive(Args, Debug)]
struct WitnessOutput {
    /// Alphabet, e.g. `abc`; defaults to the symbols the family uses
    #[arg(long)]
    alphabet: Option<String>,
    /// Write the automaton here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write Graphviz DOT
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum FamilyArgs {
    /// c-cycle of length n with b-loops on the first k states
    UnionSymbol {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 'b')]
        b: char,
        #[arg(long, default_value_t = 'c')]
        c: char,
        #[command(flatten)]
        output: WitnessOutput,
    },
    /// c-cycle of length n with loops on several symbols, e.g. --k-map a=1,b=2
    UnionMulti {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k_map: String,
        #[arg(long, default_value_t = 'c')]
        c: char,
        #[command(flatten)]
        output: WitnessOutput,
    },
    /// Cycle of length n with one loop on the start state
    UnionTotal {
        #[arg(long)]
        n: usize,
        #[arg(long = "loop", default_value_t = 'a')]
        loop_sym: char,
        #[arg(long, default_value_t = 'c')]
        cycle: char,
        #[command(flatten)]
        output: WitnessOutput,
    },
    /// (symbol^n)*
    UnaryCycle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 'b')]
        symbol: char,
        #[command(flatten)]
        output: WitnessOutput,
    },
    /// { symbol^n }
    UnarySingleton {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 'b')]
        symbol: char,
        #[command(flatten)]
        output: WitnessOutput,
    },
    /// loop* chain^(m-1)
    ChainStar {
        #[arg(long)]
        m: usize,
        #[arg(long = "loop", default_value_t = 'a')]
        loop_sym: char,
        #[arg(long, default_value_t = 'b')]
        chain: char,
        #[command(flatten)]
        output: WitnessOutput,
    },
    /// { ε }
    Epsilon {
        #[command(flatten)]
        output: WitnessOutput,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Bound to check (see `BoundId` names, e.g. union-symbol-tight)
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    bound: Option<String>,
    /// Run the whole tightness and soundness suite
    #[arg(long)]
    all: bool,
    /// Largest witness parameter used by --all
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long)]
    n1: Option<u64>,
    #[arg(long)]
    n2: Option<u64>,
    #[arg(long)]
    k1: Option<u64>,
    #[arg(long)]
    k2: Option<u64>,
    #[arg(long)]
    ka1: Option<u64>,
    #[arg(long)]
    kb1: Option<u64>,
    #[arg(long)]
    ka2: Option<u64>,
    #[arg(long)]
    kb2: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    sigma: Option<u64>,
    #[arg(long, default_value_t = bounds::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = bounds::DEFAULT_PAIRS)]
    pairs: usize,
    #[arg(long, default_value_t = bounds::DEFAULT_MAX_STATES)]
    max_states: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write the first minimized artifact of a single check as DOT
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Exhaustive minimum transition counts for the language of a DFA
    MinTransitions {
        path: PathBuf,
        /// State cap for the search; 0 means sc + 1
        #[arg(long, default_value_t = 0)]
        max_states: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write the transition-minimal witness as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the minimizer against every small automaton
    #[command(alias = "verify-lemma1")]
    VerifyMinimality {
        #[arg(long)]
        max_states: usize,
        #[arg(long)]
        alphabet: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide language equivalence of two DFAs
    Equiv {
        left: PathBuf,
        right: PathBuf,
    },
}

/// A failure carrying its exit code.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        };
        Failure(code, format!("error: {e}"))
    }
}

type CmdResult = std::result::Result<CommandOutcome, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::fail(EXIT_USAGE, text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Analyze { path, format, dot } => cmd_analyze(&path, format, dot.as_deref()),
        Command::Op { op } => cmd_op(op),
        Command::Witness { family } => cmd_witness(family),
        Command::Check(args) => cmd_check(args),
        Command::Oracle { command } => cmd_oracle(command),
    };
    result.unwrap_or_else(|Failure(code, msg)| CommandOutcome::fail(code, msg))
}

fn read_dfa(path: &Path) -> Result<PartialDfa, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_USAGE, format!("error: cannot read {}: {e}", path.display())))?;
    parse_dfa(&text).map_err(|e| Failure(EXIT_USAGE, format!("error: {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(EXIT_USAGE, format!("error: cannot write {}: {e}", path.display())))
}

fn parse_alphabet(text: &str) -> Result<Alphabet, Failure> {
    let symbols: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
    Ok(Alphabet::new(symbols)?)
}

fn counts_kv(dfa: &PartialDfa) -> String {
    let counts = dfa.transition_counts();
    let mut out = format!("states={} transitions={}", dfa.state_count(), counts.total);
    for (sym, n) in &counts.per_symbol {
        write!(out, " tc[{sym}]={n}").unwrap();
    }
    out
}

fn cmd_analyze(path: &Path, format: Format, dot: Option<&Path>) -> CmdResult {
    let dfa = read_dfa(path)?;
    let report = complexity(&dfa);
    let mut fields = vec![format!("sc={}", report.sc), format!("tc={}", report.tc)];
    fields.extend(report.tc_per_symbol.iter().map(|(s, n)| format!("tc[{s}]={n}")));
    fields.push(format!("nerode={}", report.nerode_classes));
    if let Some(dot) = dot {
        write_file(dot, &render_dot(&minimize(&dfa)))?;
    }
    let sep = if format == Format::Lines { " " } else { "\n" };
    Ok(CommandOutcome::ok(fields.join(sep) + "\n"))
}

fn cmd_op(op: OpCommand) -> CmdResult {
    let (name, constructed, output) = match op {
        OpCommand::Union { left, right, output } => {
            ("union", union_product(&read_dfa(&left)?, &read_dfa(&right)?)?.dfa, output)
        }
        OpCommand::Intersect { left, right, output } => (
            "intersect",
            intersection_product(&read_dfa(&left)?, &read_dfa(&right)?)?.dfa,
            output,
        ),
        OpCommand::Complement { input, output } => ("complement", complement(&read_dfa(&input)?), output),
    };
    let minimal = minimize(&constructed);
    if let Some(p) = &output.out {
        write_file(p, &render_dfa(&constructed))?;
    }
    if let Some(p) = &output.min_out {
        write_file(p, &render_dfa(&minimal))?;
    }
    if let Some(p) = &output.dot {
        write_file(p, &render_dot(&minimal))?;
    }
    let stdout = match output.format {
        Format::Text => format!("constructed {}\nminimized {}\n", counts_kv(&constructed), counts_kv(&minimal)),
        Format::Lines => format!(
            "{name} constructed={} minimized={} minimized_states={}\n",
            constructed.transition_counts().total,
            minimal.transition_counts().total,
            minimal.state_count()
        ),
    };
    Ok(CommandOutcome::ok(stdout))
}

fn parse_k_map(text: &str) -> Result<BTreeMap<char, usize>, Failure> {
    let bad = || Failure(EXIT_USAGE, format!("error: --k-map expects entries like a=1,b=2, got `{text}`"));
    let mut map = BTreeMap::new();
    for entry in text.split(',').filter(|e| !e.trim().is_empty()) {
        let (sym, k) = entry.split_once('=').ok_or_else(bad)?;
        let mut chars = sym.trim().chars();
        let (Some(sym), None) = (chars.next(), chars.next()) else {
            return Err(bad());
        };
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        if map.insert(sym, k).is_some() {
            return Err(bad());
        }
    }
    Ok(map)
}

fn cmd_witness(args: FamilyArgs) -> CmdResult {
    let (family, default_symbols, output): (WitnessFamily, Vec<char>, WitnessOutput) = match args {
        FamilyArgs::UnionSymbol { n, k, b, c, output } => {
            (WitnessFamily::UnionSymbol { n, k, b, c }, vec![b, c], output)
        }
        FamilyArgs::UnionMulti { n, k_map, c, output } => {
            let loops = parse_k_map(&k_map)?;
            let mut symbols: Vec<char> = loops.keys().copied().collect();
            symbols.push(c);
            (WitnessFamily::UnionMulti { n, loops, c }, symbols, output)
        }
        FamilyArgs::UnionTotal { n, loop_sym, cycle, output } => (
            WitnessFamily::UnionTotal { n, loop_sym, cycle_sym: cycle },
            vec![loop_sym, cycle],
            output,
        ),
        FamilyArgs::UnaryCycle { n, symbol, output } => (WitnessFamily::UnaryCycle { n, symbol }, vec![symbol], output),
        FamilyArgs::UnarySingleton { n, symbol, output } => {
            (WitnessFamily::UnarySingleton { n, symbol }, vec![symbol], output)
        }
        FamilyArgs::ChainStar { m, loop_sym, chain, output } => (
            WitnessFamily::ChainStar { m, loop_sym, chain_sym: chain },
            vec![loop_sym, chain],
            output,
        ),
        FamilyArgs::Epsilon { output } => (WitnessFamily::Epsilon, vec!['a', 'b'], output),
    };
    let alphabet = match &output.alphabet {
        Some(text) => parse_alphabet(text)?,
        None => {
            let mut symbols = default_symbols;
            symbols.sort_unstable();
            symbols.dedup();
            Alphabet::new(symbols)?
        }
    };
    let dfa = WitnessSpec { family, alphabet }.build()?;
    let text = render_dfa(&dfa);
    if let Some(p) = &output.dot {
        write_file(p, &render_dot(&dfa))?;
    }
    match &output.out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(CommandOutcome::ok(format!("wrote {}: {}\n", p.display(), counts_kv(&dfa))))
        }
        None => Ok(CommandOutcome::ok(text)),
    }
}

fn check_params(args: &CheckArgs) -> Params {
    let optional = [
        ("n1", args.n1),
        ("n2", args.n2),
        ("k1", args.k1),
        ("k2", args.k2),
        ("ka1", args.ka1),
        ("kb1", args.kb1),
        ("ka2", args.ka2),
        ("kb2", args.kb2),
        ("n", args.n),
        ("m", args.m),
        ("sigma", args.sigma),
    ];
    let mut p: Params = optional
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
        .collect();
    p.insert("seed".into(), args.seed);
    p.insert("pairs".into(), args.pairs as u64);
    p.insert("max_states".into(), args.max_states as u64);
    p
}

fn report_outcome(reports: &[BoundCheckReport], format: Format, details: bool) -> CommandOutcome {
    let mut stdout = match format {
        Format::Text => bounds::render_table(reports),
        Format::Lines => bounds::render_lines(reports),
    };
    if details && format == Format::Text {
        for r in reports {
            if !r.details.is_empty() {
                writeln!(stdout, "details: {}", r.details).unwrap();
            }
        }
    }
    let violated = reports.iter().any(|r| r.relation == Relation::Violation);
    CommandOutcome {
        exit_code: if violated { EXIT_VIOLATION } else { EXIT_OK },
        stdout,
        stderr: String::new(),
    }
}

fn cmd_check(args: CheckArgs) -> CmdResult {
    if args.all {
        let reports = bounds::run_suite(args.max_n, args.seed, args.pairs)?;
        return Ok(report_outcome(&reports, args.format, false));
    }
    let name = args.bound.as_deref().unwrap_or_default();
    let id = BoundId::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = BoundId::ALL.iter().map(|id| id.name()).collect();
        Failure(EXIT_USAGE, format!("error: unknown bound `{name}`; known bounds: {}", known.join(", ")))
    })?;
    let report = bounds::check_bound(id, &check_params(&args))?;
    if let (Some(dot), Some(first)) = (&args.dot, report.artifacts.first()) {
        write_file(dot, &render_dot(&parse_dfa(first)?))?;
    }
    Ok(report_outcome(std::slice::from_ref(&report), args.format, true))
}

fn cmd_oracle(command: OracleCommand) -> CmdResult {
    match command {
        OracleCommand::MinTransitions { path, max_states, format, dot } => {
            let dfa = read_dfa(&path)?;
            let result = brute_min_transitions(&dfa, max_states)?;
            let report = complexity(&dfa);
            let agree = report.tc == result.min_total
                && report.sc == result.min_states
                && report.tc_per_symbol == result.min_per_symbol;
            if let Some(p) = dot {
                write_file(&p, &render_dot(&result.witness_dfa))?;
            }
            let stdout = match format {
                Format::Text => {
                    let mut out = format!("min_total={}\nmin_states={}\n", result.min_total, result.min_states);
                    for (s, n) in &result.min_per_symbol {
                        writeln!(out, "min[{s}]={n}").unwrap();
                    }
                    writeln!(out, "minimize_tc={}\nagrees={}", report.tc, if agree { "yes" } else { "no" }).unwrap();
                    out
                }
                Format::Lines => format!(
                    "min-transitions max_states={max_states} formula={} measured={} verdict={}\n",
                    report.tc,
                    result.min_total,
                    if agree { "EQUAL" } else { "MISMATCH" }
                ),
            };
            let exit_code = if agree { EXIT_OK } else { EXIT_VALIDATION };
            Ok(CommandOutcome { exit_code, stdout, stderr: String::new() })
        }
        OracleCommand::VerifyMinimality { max_states, alphabet, format } => {
            let alphabet = parse_alphabet(&alphabet)?;
            let report = verify_minimality(max_states, alphabet)?;
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            let mut stdout = match format {
                Format::Text => format!(
                    "max_states={}\nalphabet={}\nautomata={}\nlanguages={}\ncounterexamples={}\nresult={verdict}\n",
                    report.max_states,
                    report.alphabet,
                    report.automata,
                    report.languages,
                    report.counterexamples.len()
                ),
                Format::Lines => format!(
                    "verify-minimality max_states={} automata={} languages={} counterexamples={} verdict={verdict}\n",
                    report.max_states,
                    report.automata,
                    report.languages,
                    report.counterexamples.len()
                ),
            };
            for c in &report.counterexamples {
                writeln!(stdout, "counterexample:\n{c}").unwrap();
            }
            let exit_code = if report.passed() { EXIT_OK } else { EXIT_VALIDATION };
            Ok(CommandOutcome { exit_code, stdout, stderr: String::new() })
        }
        OracleCommand::Equiv { left, right } => {
            let (d1, d2) = (read_dfa(&left)?, read_dfa(&right)?);
            if equivalent(&d1, &d2)? {
                return Ok(CommandOutcome::ok("equivalent\n".into()));
            }
            let word: String = distinguishing_word(&d1, &d2)?.unwrap_or_default().into_iter().collect();
            Ok(CommandOutcome {
                exit_code: EXIT_VALIDATION,
                stdout: format!("not equivalent: shortest distinguishing word \"{word}\"\n"),
                stderr: String::new(),
            })
        }
    }
}
