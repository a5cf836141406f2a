//! `groupoid`: census of finite groupoids satisfying Bol-Moufang type
//! identities.

mod output;
mod verify;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use groupoid_core::catalog::{self, CatalogError};
use groupoid_core::enumerate::{
    class_census, count_satisfying, enumerate_satisfying, EnumerateError, Progress,
};
use groupoid_core::term::{classify, parastrophe_identity, parse_identity, ParseError};
use groupoid_core::{
    identities_equal, ClassCounting, ClassMode, Engine, FillOrder, Grammar, Identity, SearchConfig,
};

#[derive(Parser, Debug)]
#[command(name = "groupoid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the tables of one order satisfying all selected identities.
    Count(CountArgs),
    /// Print every satisfying table, one per line.
    Enumerate(EnumerateArgs),
    /// Recompute the published tables and diff them against the catalog.
    Verify(VerifyArgs),
    /// Print the (12)-parastrophic identity and its catalog key, if any.
    Parastrophe(SelectorArgs),
    /// Classify an identity as classical, generalized or neither.
    Classify(SelectorArgs),
    /// Print canonical representatives of the classes of satisfying tables.
    Classes(ClassesArgs),
    /// Export the built-in catalog.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug, Clone)]
struct SelectorArgs {
    /// Catalog key such as F17 or EL; repeat for a conjunction.
    #[arg(long = "id")]
    ids: Vec<String>,
    /// Inline identity such as "xy·zx = (xy·z)x"; repeat for a conjunction.
    #[arg(long = "expr")]
    exprs: Vec<String>,
    #[arg(long, value_enum, default_value_t = GrammarArg::Compact)]
    grammar: GrammarArg,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = EngineArg::Pruned)]
    engine: EngineArg,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "GROUPOID_JOBS")]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = FillArg::Auto)]
    fill_order: FillArg,
    /// Report shard progress on stderr.
    #[arg(long)]
    progress: bool,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    selector: SelectorArgs,
    #[arg(long)]
    order: usize,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, value_enum, default_value_t = ClassesArg::None)]
    classes: ClassesArg,
    /// Permit class counting at order 4.
    #[arg(long)]
    allow_large_classes: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include elapsed time and visited nodes in the output.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    selector: SelectorArgs,
    #[arg(long)]
    order: usize,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, value_enum, default_value_t = StreamFormat::Lines)]
    format: StreamFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = verify::Scope::All)]
    scope: verify::Scope,
    #[arg(long, default_value_t = 3)]
    max_order: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "GROUPOID_JOBS")]
    jobs: Option<usize>,
    /// Skip the naive-engine cross-check at orders up to 3.
    #[arg(long)]
    no_cross_check: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    progress: bool,
}

#[derive(Args, Debug)]
struct ClassesArgs {
    #[command(flatten)]
    selector: SelectorArgs,
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Iso)]
    mode: ModeArg,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    allow_large_classes: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value_t = FilterArg::All)]
    filter: FilterArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum GrammarArg {
    Compact,
    Explicit,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum EngineArg {
    Naive,
    Pruned,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FillArg {
    Auto,
    RowMajor,
    DiagonalFirst,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ClassesArg {
    None,
    Iso,
    IsoAnti,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Iso,
    IsoAnti,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FilterArg {
    Classical,
    Generalized,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Format {
    Text,
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum StreamFormat {
    Lines,
    Jsonl,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Parse(ParseError),
    Catalog(CatalogError),
    Search(EnumerateError),
    Io(io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Catalog(e) => write!(f, "{e}"),
            CliError::Search(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Catalog(e)
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        CliError::Search(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

/// A selected identity and the catalog key it came from.
#[derive(Debug, Clone)]
pub(crate) struct Selected {
    pub key: Option<&'static str>,
    pub identity: Identity,
}

fn grammar(g: GrammarArg) -> Grammar {
    match g {
        GrammarArg::Compact => Grammar::Compact,
        GrammarArg::Explicit => Grammar::Explicit,
    }
}

fn resolve(sel: &SelectorArgs, required: bool) -> Result<Vec<Selected>, CliError> {
    let mut out = Vec::new();
    for key in &sel.ids {
        let entry = catalog::get(key)?;
        out.push(Selected {
            key: Some(entry.key),
            identity: entry.identity.clone(),
        });
    }
    for expr in &sel.exprs {
        out.push(Selected {
            key: None,
            identity: parse_identity(expr, grammar(sel.grammar))?,
        });
    }
    if required && out.is_empty() {
        return Err(CliError::Usage(
            "select an identity with --id or --expr".into(),
        ));
    }
    Ok(out)
}

fn resolve_one(sel: &SelectorArgs) -> Result<Selected, CliError> {
    let mut all = resolve(sel, true)?;
    if all.len() > 1 {
        return Err(CliError::Usage("expected exactly one identity".into()));
    }
    Ok(all.remove(0))
}

pub(crate) fn resolve_jobs(jobs: Option<usize>) -> Result<usize, CliError> {
    match jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(k) => Ok(k),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub(crate) fn progress_printer() -> Arc<dyn Fn(&Progress) + Send + Sync> {
    Arc::new(|p: &Progress| {
        eprintln!(
            "shards {}/{} nodes {}",
            p.shards_done, p.shards_total, p.nodes_visited
        )
    })
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig, CliError> {
    let mut cfg = SearchConfig::default()
        .with_engine(match args.engine {
            EngineArg::Naive => Engine::Naive,
            EngineArg::Pruned => Engine::Pruned,
        })
        .with_workers(resolve_jobs(args.jobs)?)
        .with_fill_order(match args.fill_order {
            FillArg::Auto => FillOrder::Auto,
            FillArg::RowMajor => FillOrder::RowMajor,
            FillArg::DiagonalFirst => FillOrder::DiagonalFirst,
        });
    if args.progress {
        cfg.progress = Some(progress_printer());
    }
    Ok(cfg)
}

fn identities(selected: &[Selected]) -> Vec<Identity> {
    selected.iter().map(|s| s.identity.clone()).collect()
}

fn cmd_count(args: CountArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let selected = resolve(&args.selector, true)?;
    let mut cfg = search_config(&args.search)?.allow_large_class_count(args.allow_large_classes);
    cfg.classes = match args.classes {
        ClassesArg::None => None,
        ClassesArg::Iso => Some(ClassCounting::Iso),
        ClassesArg::IsoAnti => Some(ClassCounting::IsoOrAntiIso),
        ClassesArg::Both => Some(ClassCounting::Both),
    };
    let report = count_satisfying(&identities(&selected), args.order, &cfg)?;
    output::write_count(out, &selected, &report, args.format, args.timing)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(args: EnumerateArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let selected = resolve(&args.selector, true)?;
    let cfg = search_config(&args.search)?;
    let mut failure = None;
    enumerate_satisfying(&identities(&selected), args.order, &cfg, |t| {
        if failure.is_some() {
            return;
        }
        let line = match args.format {
            StreamFormat::Lines => Ok(t.encode()),
            StreamFormat::Jsonl => serde_json::to_string(&t).map_err(CliError::from),
        };
        let written = line.and_then(|l| writeln!(out, "{l}").map_err(CliError::from));
        if let Err(e) = written {
            failure = Some(e);
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(ExitCode::SUCCESS),
    }
}

fn cmd_parastrophe(args: SelectorArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let selected = resolve_one(&args)?;
    let star = parastrophe_identity(&selected.identity);
    let mut keys: Vec<&str> = catalog::list(catalog::Filter::All)
        .into_iter()
        .filter(|e| identities_equal(&e.identity, &star))
        .map(|e| e.key)
        .collect();
    if let Some(key) = selected.key {
        if let Some(partner) = catalog::parastrophe_partner(key)? {
            keys.retain(|k| *k != partner);
            keys.insert(0, partner);
        }
    }
    let g = grammar(args.grammar);
    writeln!(
        out,
        "identity     {}{}",
        selected.key.map(|k| format!("{k}  ")).unwrap_or_default(),
        selected.identity.format(g)
    )?;
    writeln!(out, "parastrophe  {}", star.format(g))?;
    if keys.is_empty() {
        writeln!(out, "catalog      (none)")?;
    } else {
        writeln!(out, "catalog      {}", keys.join(", "))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: SelectorArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let selected = resolve_one(&args)?;
    writeln!(out, "{}", classify(&selected.identity))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classes(args: ClassesArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let selected = resolve(&args.selector, false)?;
    let cfg = search_config(&args.search)?.allow_large_class_count(args.allow_large_classes);
    let mode = match args.mode {
        ModeArg::Iso => ClassMode::Iso,
        ModeArg::IsoAnti => ClassMode::IsoOrAntiIso,
    };
    let census = class_census(&identities(&selected), args.order, mode, &cfg)?;
    output::write_classes(out, &census, args.format)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(args: CatalogArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let filter = match args.filter {
        FilterArg::Classical => catalog::Filter::Classical,
        FilterArg::Generalized => catalog::Filter::Generalized,
        FilterArg::All => catalog::Filter::All,
    };
    output::write_catalog(out, filter, args.format)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Count(a) => cmd_count(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Verify(a) => verify::cmd_verify(a, out),
        Command::Parastrophe(a) => cmd_parastrophe(a, out),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Classes(a) => cmd_classes(a, out),
        Command::Catalog(a) => cmd_catalog(a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    code
}
