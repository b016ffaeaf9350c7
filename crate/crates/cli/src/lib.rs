//! Command line driver: evaluation, formula checks, the CZFU model suite and
//! the category, isomorphism and pullback checkers.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use czfu_core::category::{check_category, CategoryError};
use czfu_core::iterset::{canonicalize, AtomTable, IterSetError, VSet};
use czfu_core::lang::{parse_formula, parse_term, Formula, LangError, Term};
use czfu_core::model::{
    build_v_category, check_main_iso, czfu_suite, eval_formula, eval_term, Env, ModelError,
    SuiteConfig,
};
use czfu_core::pullback::{
    base_preset, pullback_report, PullbackError, DEFAULT_CARRIER_CAP, PRESETS,
};
use czfu_core::report::Report;
use czfu_core::setoid::SetoidError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "czfu",
    version,
    about = "Finite-scale checks for iterative sets with atoms"
)]
pub struct Cli {
    /// Atom classes, e.g. "a b | c". Without it every atom mentioned is its
    /// own class.
    #[arg(long, global = true, value_name = "SPEC")]
    pub atoms: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a term and print its canonical form.
    Eval { expr: String },
    /// Decide a bounded formula.
    Check { formula: String },
    /// Run the CZFU axiom suite over a finite universe.
    Axioms {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        breadth: usize,
        #[arg(long, default_value_t = 4)]
        omega: usize,
    },
    /// Build the category of sets over a slice file and check its axioms.
    Category {
        #[arg(long)]
        slice: PathBuf,
    },
    /// Check the isomorphism between the family category and the category of sets.
    Iso {
        #[arg(long)]
        slice: PathBuf,
    },
    /// Verify every chosen pullback of a staged universe.
    Pullbacks {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_CARRIER_CAP)]
        cap: usize,
    },
    /// Interactive loop with `let` bindings.
    Repl,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Cap(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Cap(_) => EXIT_CAP,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

fn setoid_is_cap(e: &SetoidError) -> bool {
    matches!(e, SetoidError::TooMany { .. })
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        let cap = match &e {
            ModelError::SizeCap { .. } => true,
            ModelError::Setoid(s) | ModelError::Category(CategoryError::Setoid(s)) => {
                setoid_is_cap(s)
            }
            _ => false,
        };
        if cap {
            CliError::Cap(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<PullbackError> for CliError {
    fn from(e: PullbackError) -> Self {
        let cap = match &e {
            PullbackError::Blowup { .. } => true,
            PullbackError::Setoid(s) | PullbackError::Category(CategoryError::Setoid(s)) => {
                setoid_is_cap(s)
            }
            _ => false,
        };
        if cap {
            CliError::Cap(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<LangError> for CliError {
    fn from(e: LangError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<IterSetError> for CliError {
    fn from(e: IterSetError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `args` (program name first) with `stdin` as REPL input and captures
/// both streams.
pub fn run_captured<I, S>(args: I, stdin: &str) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, S>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn atom_table(spec: Option<&str>, ids: BTreeSet<String>) -> Result<AtomTable, CliError> {
    match spec {
        Some(s) => Ok(AtomTable::parse_spec(s)?),
        None => Ok(AtomTable::discrete(ids)?),
    }
}

fn report_code(r: &Report) -> i32 {
    if r.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn emit(out: &mut dyn Write, text: impl fmt::Display) -> Result<(), CliError> {
    write!(out, "{text}").map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

/// Reads a slice file: one closed term per non-blank line, each evaluating
/// to a set.
pub fn read_slice(path: &Path, atoms: Option<&str>) -> Result<(AtomTable, Vec<VSet>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_slice(&text, atoms).map_err(|e| match e {
        CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse_slice(text: &str, atoms: Option<&str>) -> Result<(AtomTable, Vec<VSet>), CliError> {
    let mut terms = Vec::new();
    let mut ids = BTreeSet::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let t = parse_term(line).map_err(|e| CliError::Usage(format!("line {}: {e}", n + 1)))?;
        ids.extend(t.atom_ids());
        terms.push((n + 1, t));
    }
    let table = atom_table(atoms, ids)?;
    let mut slice = Vec::new();
    for (n, t) in terms {
        let v = eval_term(&table, &t, &Env::new()).map_err(|e| match CliError::from(e) {
            CliError::Usage(m) => CliError::Usage(format!("line {n}: {m}")),
            cap => cap,
        })?;
        if !v.is_set() {
            return Err(CliError::Usage(format!(
                "line {n}: slice entries must be sets"
            )));
        }
        slice.push(v);
    }
    Ok((table, slice))
}

fn execute(cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, CliError> {
    let atoms = cli.atoms.as_deref();
    match &cli.command {
        Command::Eval { expr } => {
            let t = parse_term(expr)?;
            let table = atom_table(atoms, t.atom_ids())?;
            let v = eval_term(&table, &t, &Env::new())?;
            emit(out, format_args!("{}\n", canonicalize(&table, &v).as_str()))?;
            Ok(EXIT_PASS)
        }
        Command::Check { formula } => {
            let phi = parse_formula(formula)?;
            let table = atom_table(atoms, phi.atom_ids())?;
            let holds = eval_formula(&table, &phi, &Env::new())?;
            emit(out, format_args!("{holds}\n"))?;
            Ok(if holds { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Axioms {
            rank,
            breadth,
            omega,
        } => {
            let table = atom_table(atoms, BTreeSet::new())?;
            let mut cfg = SuiteConfig::new(*rank, *breadth, table);
            cfg.omega = *omega;
            let r = czfu_suite(&cfg)?;
            emit(out, &r)?;
            Ok(report_code(&r))
        }
        Command::Category { slice } => {
            let (table, slice) = read_slice(slice, atoms)?;
            let v = build_v_category(&table, &slice)?;
            emit(
                out,
                format_args!(
                    "# {} objects, {} arrows, {} composable pairs\n",
                    v.cat.objects().len(),
                    v.cat.arrows().len(),
                    v.cat.pairs().len()
                ),
            )?;
            let mut r = check_category(&v.cat);
            r.title = "category of sets".into();
            emit(out, &r)?;
            Ok(report_code(&r))
        }
        Command::Iso { slice } => {
            let (table, slice) = read_slice(slice, atoms)?;
            let r = check_main_iso(&table, &slice)?;
            emit(out, &r)?;
            Ok(report_code(&r))
        }
        Command::Pullbacks { preset, depth, cap } => {
            let base = base_preset(preset).map_err(|e| match e {
                PullbackError::UnknownPreset(_) => {
                    CliError::Usage(format!("{e}; known presets: {}", PRESETS.join(", ")))
                }
                other => other.into(),
            })?;
            let r = pullback_report(&base, *depth, *cap)?;
            emit(out, &r)?;
            Ok(report_code(&r))
        }
        Command::Repl => {
            let mut repl = Repl::new(atoms)?;
            repl.run(input, out)?;
            Ok(EXIT_PASS)
        }
    }
}

/// What a REPL line evaluated to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplValue {
    Bound(String, String),
    Set(String),
    Truth(bool),
    Nothing,
}

/// Interactive state: bindings and the atoms seen so far.
pub struct Repl {
    fixed: Option<AtomTable>,
    seen: BTreeSet<String>,
    env: Env,
}

const REPL_HELP: &str = "\
let NAME = TERM   bind a name
TERM              print the canonical form
FORMULA           print true or false
:env              list bindings
:help             this text
:quit             leave
";

impl Repl {
    pub fn new(atoms: Option<&str>) -> Result<Self, CliError> {
        Ok(Repl {
            fixed: atoms.map(AtomTable::parse_spec).transpose()?,
            seen: BTreeSet::new(),
            env: Env::new(),
        })
    }

    fn table(&mut self, ids: BTreeSet<String>) -> Result<AtomTable, CliError> {
        match &self.fixed {
            Some(t) => Ok(t.clone()),
            None => {
                self.seen.extend(ids);
                Ok(AtomTable::discrete(self.seen.iter().cloned())?)
            }
        }
    }

    fn parse(line: &str) -> Result<Result<Formula, Term>, CliError> {
        match parse_formula(line) {
            Ok(phi) => Ok(Ok(phi)),
            Err(fe) => match parse_term(line) {
                Ok(t) => Ok(Err(t)),
                Err(te) => Err(if te.column() > fe.column() { te } else { fe }.into()),
            },
        }
    }

    /// Evaluates one line.
    pub fn line(&mut self, line: &str) -> Result<ReplValue, CliError> {
        let line = line.trim();
        if line.is_empty() {
            return Ok(ReplValue::Nothing);
        }
        if let Some(rest) = line.strip_prefix("let ") {
            let (name, expr) = rest
                .split_once('=')
                .ok_or_else(|| CliError::Usage("expected `let NAME = TERM`".into()))?;
            let name = name.trim();
            match parse_term(name) {
                Ok(Term::Var(_)) => {}
                _ => return Err(CliError::Usage(format!("`{name}` is not a variable name"))),
            }
            let t = parse_term(expr)?;
            let table = self.table(t.atom_ids())?;
            let v = eval_term(&table, &t, &self.env)?;
            let text = canonicalize(&table, &v).into_string();
            self.env.bind(name, v);
            return Ok(ReplValue::Bound(name.to_string(), text));
        }
        match Self::parse(line)? {
            Ok(phi) => {
                let table = self.table(phi.atom_ids())?;
                Ok(ReplValue::Truth(eval_formula(&table, &phi, &self.env)?))
            }
            Err(t) => {
                let table = self.table(t.atom_ids())?;
                let v = eval_term(&table, &t, &self.env)?;
                Ok(ReplValue::Set(canonicalize(&table, &v).into_string()))
            }
        }
    }

    fn env_listing(&mut self) -> Result<String, CliError> {
        let table = self.table(BTreeSet::new())?;
        let mut names: Vec<String> = self.env.names().map(str::to_string).collect();
        names.sort();
        Ok(names
            .iter()
            .map(|n| {
                format!(
                    "{n} = {}\n",
                    canonicalize(&table, self.env.get(n).expect("bound")).as_str()
                )
            })
            .collect())
    }

    pub fn run(&mut self, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
        let mut buf = String::new();
        loop {
            emit(out, "> ")?;
            out.flush().ok();
            buf.clear();
            let n = input
                .read_line(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read input: {e}")))?;
            if n == 0 {
                emit(out, "\n")?;
                return Ok(());
            }
            let text = match buf.trim() {
                ":quit" | ":q" => return Ok(()),
                ":help" => REPL_HELP.to_string(),
                ":env" => self.env_listing()?,
                line => match self.line(line) {
                    Ok(ReplValue::Bound(n, v)) => format!("{n} = {v}\n"),
                    Ok(ReplValue::Set(v)) => format!("{v}\n"),
                    Ok(ReplValue::Truth(b)) => format!("{b}\n"),
                    Ok(ReplValue::Nothing) => String::new(),
                    Err(e) => format!("error: {e}\n"),
                },
            };
            emit(out, text)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run_captured(std::iter::once("czfu").chain(args.iter().copied()), "")
    }

    #[test]
    fn eval_prints_canonical_form() {
        let o = run_args(&["eval", "{{},{}}"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "{{}}\n"));
    }

    #[test]
    fn check_exit_codes() {
        let o = run_args(&["check", "{} in {{}}"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "true\n"));
        assert_eq!(run_args(&["check", "{} in {}"]).code, EXIT_FAIL);
        let o = run_args(&["check", "all x . true"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("column"), "{}", o.stderr);
    }

    #[test]
    fn implicit_and_declared_atoms() {
        assert_eq!(run_args(&["check", "#a = #b"]).code, EXIT_FAIL);
        assert_eq!(
            run_args(&["--atoms", "a b", "check", "#a = #b"]).code,
            EXIT_PASS
        );
        assert_eq!(
            run_args(&["check", "#a = #b", "--atoms", "a b"]).code,
            EXIT_PASS
        );
        assert_eq!(run_args(&["--atoms", "a", "eval", "#z"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--atoms", "a a", "eval", "{}"]).code, EXIT_USAGE);
    }

    #[test]
    fn evaluation_errors() {
        assert_eq!(run_args(&["eval", "x"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["eval", "union(#a)"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["eval", "omega(500)"]).code, EXIT_CAP);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_PASS);
    }

    #[test]
    fn slices() {
        let (t, s) = parse_slice("{}\n\n{{}}\n{#a,#b}\n", None).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(t.len(), 2);
        assert!(parse_slice("#a\n", None).is_err());
        assert!(
            matches!(parse_slice("{}\n{,}\n", None), Err(CliError::Usage(m)) if m.starts_with("line 2"))
        );
    }

    #[test]
    fn pullback_presets() {
        let o = run_args(&["pullbacks", "--preset", "point", "--depth", "1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("PASS pullback squares"));
        let o = run_args(&["pullbacks", "--preset", "nope"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("swap"));
        let o = run_args(&[
            "pullbacks",
            "--preset",
            "swap",
            "--depth",
            "2",
            "--cap",
            "10",
        ]);
        assert_eq!(o.code, EXIT_CAP, "{}", o.stderr);
    }

    #[test]
    fn repl_session() {
        let mut r = Repl::new(None).unwrap();
        assert_eq!(
            r.line("let x = {{},#a}").unwrap(),
            ReplValue::Bound("x".into(), "{#a,{}}".into())
        );
        assert_eq!(
            r.line("ex y in x . atom(y)").unwrap(),
            ReplValue::Truth(true)
        );
        assert_eq!(
            r.line("sep y in x . set(y)").unwrap(),
            ReplValue::Set("{{}}".into())
        );
        assert_eq!(r.line("x").unwrap(), ReplValue::Set("{#a,{}}".into()));
        assert!(r.line("let {} = {}").is_err());
        assert!(r.line("z").is_err());
        let o = run_captured(
            ["czfu", "repl"],
            "let y = succ({})\ny\n:env\nall z . true\n:quit\n",
        );
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("y = {{},{{}}}"));
        assert!(o.stdout.contains("error: parse error"));
    }
}
