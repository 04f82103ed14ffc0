//! Argument parsing and command execution for the `classprod` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use classprod::catalog::{
    builtin_corpus, load_manifest, make_named_group_capped, Construction, GroupSpecEntry,
};
use classprod::chartab::character_table;
use classprod::classalg::inverse_class;
use classprod::group::{center, conjugacy_classes, GroupSpec};
use classprod::series::{NormalData, PrimeSet};
use classprod::verify::{
    expand_suites, reports_to_json, reproduce_remarks, run_corpus, CheckReport, SuiteInfo,
    SuiteKind,
};
use classprod::{Error, FiniteGroup, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "classprod",
    version,
    about = "Exhaustive commutator and class-product checks on finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, series and structure flags of one group.
    Inspect(GroupArgs),
    /// Conjugacy classes of one group.
    Classes(GroupArgs),
    /// Exact character table of one group.
    Chartab(GroupArgs),
    /// Run assertion suites; exits nonzero on any violation.
    Check(SuiteArgs),
    /// Run exploration suites; violations never affect the exit code.
    Explore(SuiteArgs),
    /// Reproduce the two worked examples.
    Remarks(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Write JSON output here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Element cap for group closures.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Catalog name such as `GL(2,3)` or `S4xC2`, or a path to a group-spec JSON file.
    #[arg(long)]
    group: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, conflicts_with = "corpus")]
    group: Option<String>,
    /// `builtin` or a path to a corpus manifest.
    #[arg(long)]
    corpus: Option<String>,
    /// Suite id; repeatable. `all` expands to every assertion suite.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Restrict per-prime suites to these primes.
    #[arg(long = "prime")]
    primes: Vec<u64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Inspect,
    Classes,
    Chartab,
    Check,
    Explore,
    Remarks,
}

/// Where a single group comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Named(String),
    Spec(GroupSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    None,
    Group(GroupSource),
    Corpus(Vec<GroupSpecEntry>),
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct CommandPlan {
    pub command: CommandKind,
    pub target: Target,
    pub suites: Vec<&'static SuiteInfo>,
    pub primes: Vec<u64>,
    pub out: Option<PathBuf>,
    pub cap: usize,
    pub threads: Option<usize>,
}

/// Usage errors carry clap's rendered message and exit code.
#[derive(Debug)]
pub struct UsageError {
    pub message: String,
    pub code: i32,
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for UsageError {}

fn usage(message: impl Into<String>) -> UsageError {
    UsageError {
        message: message.into(),
        code: EXIT_USAGE,
    }
}

fn resolve_group(selector: &str, cap: usize) -> Result<GroupSource, UsageError> {
    let path = Path::new(selector);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {selector}: {e}")))?;
        let spec = GroupSpec::from_json(&text).map_err(|e| usage(format!("{selector}: {e}")))?;
        return Ok(GroupSource::Spec(spec));
    }
    match make_named_group_capped(selector, cap) {
        Ok(_) | Err(Error::CapExceeded { .. }) => Ok(GroupSource::Named(selector.to_string())),
        Err(e) => Err(usage(e.to_string())),
    }
}

fn resolve_corpus(selector: &str) -> Result<Vec<GroupSpecEntry>, UsageError> {
    if selector == "builtin" {
        Ok(builtin_corpus())
    } else {
        load_manifest(Path::new(selector)).map_err(|e| usage(format!("corpus {selector}: {e}")))
    }
}

/// Parses `argv` (without the program name) into a validated plan.
pub fn parse_args<S: AsRef<str>>(argv: &[S]) -> Result<CommandPlan, UsageError> {
    let args = std::iter::once("classprod").chain(argv.iter().map(AsRef::as_ref));
    let cli = Cli::try_parse_from(args).map_err(|e| UsageError {
        message: e.render().to_string(),
        code: e.exit_code(),
    })?;
    let (command, common, target, suites, primes) = match cli.command {
        Command::Inspect(a) => group_plan(CommandKind::Inspect, a)?,
        Command::Classes(a) => group_plan(CommandKind::Classes, a)?,
        Command::Chartab(a) => group_plan(CommandKind::Chartab, a)?,
        Command::Check(a) => suite_plan(CommandKind::Check, a)?,
        Command::Explore(a) => suite_plan(CommandKind::Explore, a)?,
        Command::Remarks(c) => (
            CommandKind::Remarks,
            c,
            Target::None,
            Vec::new(),
            Vec::new(),
        ),
    };
    if command == CommandKind::Check && suites.iter().any(|s| s.kind == SuiteKind::Exploration) {
        return Err(usage("exploration suites run under `explore`, not `check`"));
    }
    if common.threads == Some(0) {
        return Err(usage("--threads must be positive"));
    }
    Ok(CommandPlan {
        command,
        target,
        suites,
        primes,
        out: common.out,
        cap: common.cap,
        threads: common.threads,
    })
}

type PlanParts = (
    CommandKind,
    CommonArgs,
    Target,
    Vec<&'static SuiteInfo>,
    Vec<u64>,
);

fn group_plan(kind: CommandKind, a: GroupArgs) -> Result<PlanParts, UsageError> {
    let target = Target::Group(resolve_group(&a.group, a.common.cap)?);
    Ok((kind, a.common, target, Vec::new(), Vec::new()))
}

fn suite_plan(kind: CommandKind, a: SuiteArgs) -> Result<PlanParts, UsageError> {
    let target = match (&a.group, &a.corpus) {
        (Some(g), None) => Target::Group(resolve_group(g, a.common.cap)?),
        (None, Some(c)) => Target::Corpus(resolve_corpus(c)?),
        (None, None) => Target::Corpus(builtin_corpus()),
        (Some(_), Some(_)) => return Err(usage("--group and --corpus are exclusive")),
    };
    let ids: Vec<String> = match (a.suites.is_empty(), kind) {
        (false, _) => a.suites,
        (true, CommandKind::Check) => vec!["all".to_string()],
        (true, _) => vec!["explore_p_singular".to_string()],
    };
    let suites = expand_suites(&ids).map_err(|e| usage(e.to_string()))?;
    if let Some(p) = a.primes.iter().find(|&&p| PrimeSet::single(p).is_err()) {
        return Err(usage(format!("--prime {p} is not prime")));
    }
    Ok((kind, a.common, target, suites, a.primes))
}

/// Writes `reports` as a JSON array, atomically: a temporary file in the
/// destination directory is renamed over `path`.
pub fn emit_report(reports: &[CheckReport], path: &Path) -> anyhow::Result<()> {
    write_atomic(path, &reports_to_json(reports))
}

fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| anyhow!(e.error))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn build_source(source: &GroupSource, cap: usize) -> anyhow::Result<(String, FiniteGroup)> {
    match source {
        GroupSource::Named(name) => {
            let g = make_named_group_capped(name, cap).map_err(|e| cap_message(name, e))?;
            Ok((name.clone(), g))
        }
        GroupSource::Spec(spec) => {
            let g = spec.build(cap).map_err(|e| cap_message(&spec.name, e))?;
            Ok((spec.name.clone(), g))
        }
    }
}

fn cap_message(name: &str, e: Error) -> anyhow::Error {
    match e {
        Error::CapExceeded { cap, partial } => {
            anyhow!("{name}: closure exceeded the element cap of {cap} (reached {partial})")
        }
        other => anyhow!("{name}: {other}"),
    }
}

/// A corpus entry for a single group, taking declared flags from the builtin
/// corpus when the name matches one of its entries.
fn entry_for(source: &GroupSource, group: &FiniteGroup) -> GroupSpecEntry {
    match source {
        GroupSource::Named(name) => builtin_corpus()
            .into_iter()
            .find(|e| &e.name == name)
            .unwrap_or_else(|| GroupSpecEntry::builtin(name, group.order())),
        GroupSource::Spec(spec) => GroupSpecEntry {
            name: spec.name.clone(),
            construction: Construction::Generators {
                degree: spec.degree,
                generators: spec.generators.clone(),
            },
            expected_order: group.order(),
            almost_simple: false,
            lie_type: false,
            characteristic: None,
        },
    }
}

/// Runs a plan, printing human-readable output to stdout and diagnostics to
/// stderr. Returns the process exit code.
pub fn execute_plan(plan: &CommandPlan) -> i32 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute_to(plan, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_FAILURE
        }
    }
}

/// As [`execute_plan`], writing human-readable output to `sink`.
pub fn execute_to(plan: &CommandPlan, sink: &mut dyn Write) -> anyhow::Result<i32> {
    if let Some(n) = plan.threads {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match plan.command {
        CommandKind::Inspect => inspect(plan, sink),
        CommandKind::Classes => classes(plan, sink),
        CommandKind::Chartab => chartab(plan, sink),
        CommandKind::Check | CommandKind::Explore => run_suites(plan, sink),
        CommandKind::Remarks => remarks(plan, sink),
    }
}

fn single_group(plan: &CommandPlan) -> anyhow::Result<(&GroupSource, String, FiniteGroup)> {
    let Target::Group(source) = &plan.target else {
        bail!("command needs --group");
    };
    let (name, g) = build_source(source, plan.cap)?;
    Ok((source, name, g))
}

fn inspect(plan: &CommandPlan, sink: &mut dyn Write) -> anyhow::Result<i32> {
    let (_, name, g) = single_group(plan)?;
    let normal = NormalData::new(&g);
    let flags = normal.simplicity()?;
    let z = center(&g);
    writeln!(sink, "group      {name}")?;
    writeln!(sink, "order      {}", g.order())?;
    writeln!(sink, "degree     {}", g.degree())?;
    writeln!(sink, "exponent   {}", g.exponent())?;
    writeln!(sink, "classes    {}", normal.classes.len())?;
    writeln!(sink, "abelian    {}", g.is_abelian())?;
    writeln!(sink, "simple     {}", flags.is_simple)?;
    writeln!(sink, "|Z(G)|     {}", z.order())?;
    writeln!(sink, "|F(G)|     {}", normal.fitting().order())?;
    writeln!(sink, "|R(G)|     {}", normal.solvable_radical().order())?;
    let mut cores = Vec::new();
    for p in classprod::arith::prime_divisors(g.order()) {
        let op = normal.o_pi(&PrimeSet::single(p)?).order();
        let opp = normal.o_p_prime(p).order();
        writeln!(sink, "p = {p:<6} |O_p| = {op:<8} |O_p'| = {opp}")?;
        cores.push(serde_json::json!({"p": p, "o_p": op, "o_p_prime": opp}));
    }
    if let Some(path) = &plan.out {
        let value = serde_json::json!({
            "name": name,
            "order": g.order(),
            "degree": g.degree(),
            "exponent": g.exponent(),
            "classes": normal.classes.len(),
            "abelian": g.is_abelian(),
            "simple": flags.is_simple,
            "center_order": z.order(),
            "fitting_order": normal.fitting().order(),
            "radical_order": normal.solvable_radical().order(),
            "cores": cores,
            "spec": serde_json::from_str::<serde_json::Value>(&GroupSpec::from_group(&name, &g).to_json())?,
        });
        write_atomic(path, &(serde_json::to_string_pretty(&value)? + "\n"))?;
    }
    Ok(EXIT_OK)
}

fn classes(plan: &CommandPlan, sink: &mut dyn Write) -> anyhow::Result<i32> {
    let (_, name, g) = single_group(plan)?;
    let classes = conjugacy_classes(&g);
    writeln!(sink, "{name}: {} classes", classes.len())?;
    writeln!(
        sink,
        "{:>5} {:>8} {:>6} {:>5}  representative",
        "class", "size", "order", "inv"
    )?;
    let mut rows = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let inv = inverse_class(&g, &classes, i)?;
        writeln!(
            sink,
            "{i:>5} {:>8} {:>6} {inv:>5}  {}",
            c.size(),
            c.element_order(),
            c.representative
        )?;
        rows.push(serde_json::json!({
            "size": c.size(),
            "element_order": c.element_order(),
            "inverse_class": inv,
            "representative": c.representative.to_cycles(),
        }));
    }
    if let Some(path) = &plan.out {
        write_atomic(path, &(serde_json::to_string_pretty(&rows)? + "\n"))?;
    }
    Ok(EXIT_OK)
}

fn chartab(plan: &CommandPlan, sink: &mut dyn Write) -> anyhow::Result<i32> {
    let (_, name, g) = single_group(plan)?;
    let table = character_table(&g)?;
    writeln!(
        sink,
        "{name}: {} characters, values in Q(z{})",
        table.len(),
        table.conductor()
    )?;
    let sizes = table.class_sizes();
    let cells: Vec<Vec<String>> = (0..table.len())
        .map(|chi| table.row(chi).iter().map(ToString::to_string).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain(sizes.iter().map(|s| s.to_string().len()))
        .max()
        .unwrap_or(1);
    write!(sink, "{:>6}", "size")?;
    for s in &sizes {
        write!(sink, " {s:>width$}")?;
    }
    writeln!(sink)?;
    for (chi, row) in cells.iter().enumerate() {
        write!(sink, "{:>6}", format!("X.{}", chi + 1))?;
        for v in row {
            write!(sink, " {v:>width$}")?;
        }
        writeln!(sink)?;
    }
    if let Some(path) = &plan.out {
        write_atomic(
            path,
            &(serde_json::to_string_pretty(&table.export())? + "\n"),
        )?;
    }
    Ok(EXIT_OK)
}

fn run_suites(plan: &CommandPlan, sink: &mut dyn Write) -> anyhow::Result<i32> {
    let entries = match &plan.target {
        Target::Corpus(entries) => entries.clone(),
        Target::Group(source) => {
            let (_, g) = build_source(source, plan.cap)?;
            vec![entry_for(source, &g)]
        }
        Target::None => bail!("command needs --group or --corpus"),
    };
    let primes = (!plan.primes.is_empty()).then_some(plan.primes.as_slice());
    let run = run_corpus(&entries, &plan.suites, primes, plan.cap)?;
    writeln!(
        sink,
        "{:<24} {:<22} {:>7} {:>10} {:>10} {:>9} {:>8}",
        "suite", "group", "order", "instances", "violations", "witnesses", "ms"
    )?;
    for (kind, r) in &run.reports {
        let marker = if *kind == SuiteKind::Exploration {
            " (exploration)"
        } else {
            ""
        };
        writeln!(
            sink,
            "{:<24} {:<22} {:>7} {:>10} {:>10} {:>9} {:>8}{marker}",
            r.suite,
            r.group_name,
            r.group_order,
            r.instances_checked,
            r.violations.len(),
            r.witnesses.len(),
            r.elapsed_ms
        )?;
    }
    let violations = run.assertion_violations();
    writeln!(
        sink,
        "{} reports over {} groups; {violations} assertion violations",
        run.reports.len(),
        entries.len()
    )?;
    let code = exit_code(violations);
    if let Some(path) = &plan.out {
        emit_report(&run.into_reports(), path)?;
    }
    Ok(code)
}

fn remarks(plan: &CommandPlan, sink: &mut dyn Write) -> anyhow::Result<i32> {
    let reports = reproduce_remarks()?;
    for r in &reports {
        writeln!(sink, "{} (order {})", r.group_name, r.group_order)?;
        for (status, records) in [("ok  ", &r.witnesses), ("FAIL", &r.violations)] {
            for rec in records {
                writeln!(
                    sink,
                    "  {status} {:<32} observed {:?} expected {:?}",
                    rec.claim, rec.observed, rec.expected
                )?;
            }
        }
    }
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    if let Some(path) = &plan.out {
        emit_report(&reports, path)?;
    }
    Ok(exit_code(violations))
}

/// Exit status as a function of assertion-suite violations alone.
pub fn exit_code(assertion_violations: usize) -> i32 {
    if assertion_violations == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}
