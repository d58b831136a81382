//! Command-line front end: bipartite tables, the generic weighted pipeline,
//! exact series dumps and engine-vs-oracle verification.
//!
//! Exit codes: 0 success, 1 verification mismatch or I/O failure, 2 usage
//! error or oracle cap exceeded, 3 input parse failure, 4 inconsistent
//! table.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use wgc_core::enumeration::{
    bipartite_connected_table, build_aux, connected_from_all, enumerate_weighted,
    max_bipartite_size, ConnectedCountTable, CountKey, CountTable, ForbiddenComponentSet,
    IsolatedVertices, OrderCountTable,
};
use wgc_core::oracle::{self, LabeledGraph};
use wgc_core::rational::{self, Rational};
use wgc_core::series::{write_dump, WeightMode, WeightVector};

#[derive(Debug, Parser)]
#[command(
    name = "wgc",
    version,
    about = "Count labeled graphs by weighted number of components"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bipartite graphs by order, size and weighted component number.
    BipartiteTable(CommonArgs),
    /// Weighted enumeration over a user-supplied count table (JSON lines).
    Pipeline(PipelineArgs),
    /// Compare the bipartite table against brute force for every order ≤ N.
    Verify(CommonArgs),
    /// Exact series, connected table or count table of the bipartite pipeline.
    Dump(CommonArgs),
    /// Brute-force bipartite table.
    Oracle(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Largest graph order N.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    max_order: u32,

    /// Comma-separated rational weights ω_1,ω_2,… e.g. "1,1/2,2/3".
    #[arg(long, value_parser = parse_weight_list)]
    weights: Option<WeightList>,

    /// Weight for component orders past the end of --weights.
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    weight_fill: Rational,

    #[arg(long, value_enum, default_value_t = ModeArg::PerComponent)]
    weight_mode: ModeArg,

    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Also print rows whose count is zero.
    #[arg(long)]
    emit_zeros: bool,

    /// Forbidden component type "n:k" (k comma-separated for several
    /// statistics); repeatable.
    #[arg(long = "forbid", value_parser = parse_forbid)]
    forbid: Vec<(u32, Vec<u32>)>,

    /// Largest order the oracle may enumerate (at most 8).
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    oracle_cap: u32,

    /// Count bipartite graphs with isolated vertices too. By default graphs
    /// of minimum degree ≥ 1 are counted, as in the classical table.
    #[arg(long)]
    with_isolated: bool,
}

#[derive(Debug, Args)]
struct PipelineArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// JSON-lines table {"n":..,"k":[..],"count":".."}.
    table: PathBuf,

    /// Whether the table counts connected graphs or all graphs with the
    /// property (then connected counts are recovered by the logarithm).
    #[arg(long, value_enum, default_value_t = TableKind::Connected)]
    table_kind: TableKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    PerComponent,
    SizeWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
    SeriesDump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Connected,
    All,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
struct WeightList(Vec<Rational>);

fn parse_weight_list(s: &str) -> Result<WeightList, String> {
    WeightVector::parse(s)
        .map(|w| WeightList(w.entries().to_vec()))
        .map_err(|e| e.to_string())
}

fn parse_forbid(s: &str) -> Result<(u32, Vec<u32>), String> {
    ForbiddenComponentSet::parse_entry(s).map_err(|e| e.to_string())
}

/// Resolved options shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub max_order: u32,
    pub weights: WeightVector,
    pub mode: WeightMode,
    pub emit_zeros: bool,
    pub forbidden: ForbiddenComponentSet,
    pub oracle_cap: u32,
    pub isolated: IsolatedVertices,
}

impl RunConfig {
    fn from_args(a: &CommonArgs) -> Result<RunConfig, CliError> {
        let mut forbidden = ForbiddenComponentSet::new();
        for (n, k) in &a.forbid {
            forbidden.insert(*n, k.clone())?;
        }
        Ok(RunConfig {
            max_order: a.max_order,
            weights: WeightVector::with_fill(
                a.weights.clone().map(|w| w.0).unwrap_or_default(),
                a.weight_fill.clone(),
            ),
            mode: match a.weight_mode {
                ModeArg::PerComponent => WeightMode::PerComponent,
                ModeArg::SizeWeighted => WeightMode::SizeWeighted,
            },
            emit_zeros: a.emit_zeros,
            forbidden,
            oracle_cap: a.oracle_cap,
            isolated: if a.with_isolated {
                IsolatedVertices::Included
            } else {
                IsolatedVertices::Excluded
            },
        })
    }

    /// Weights to hand the engine, which always reads them per component.
    pub fn engine_weights(&self) -> WeightVector {
        self.weights.for_mode(self.mode, self.max_order)
    }

    fn check_forbidden_arity(&self, arity: usize) -> Result<(), CliError> {
        match self.forbidden.iter().find(|(_, k)| k.len() != arity) {
            Some((n, k)) => Err(CliError::Usage(format!(
                "--forbid {n}:{k:?} has {} statistics, the table has {arity}",
                k.len()
            ))),
            None => Ok(()),
        }
    }

    /// Connected bipartite counts with the isolated-vertex policy and any
    /// forbidden components applied.
    pub fn bipartite_connected(&self) -> Result<ConnectedCountTable, CliError> {
        self.check_forbidden_arity(1)?;
        Ok(bipartite_connected_table(self.max_order, self.isolated)?.without(&self.forbidden))
    }

    /// The brute-force predicate matching [`RunConfig::bipartite_connected`].
    pub fn oracle_predicate(&self) -> impl Fn(&LabeledGraph) -> bool + Sync + '_ {
        move |g: &LabeledGraph| {
            if !oracle::is_bipartite(g) {
                return false;
            }
            if self.isolated == IsolatedVertices::Excluded && !oracle::has_no_isolated_vertex(g) {
                return false;
            }
            self.forbidden.is_empty()
                || oracle::component_stats(g)
                    .iter()
                    .all(|&(o, s)| !self.forbidden.contains(o, &[s]))
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0} differing triple(s)")]
    Mismatch(usize),
    #[error(transparent)]
    Core(#[from] wgc_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Mismatch(_) => 1,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                wgc_core::Error::OracleCap { .. } | wgc_core::Error::InvalidEntry(_) => 2,
                wgc_core::Error::Parse { .. } => 3,
                wgc_core::Error::InconsistentTable { .. } => 4,
                _ => 1,
            },
        }
    }
}

/// Runs one command. Everything meant for the user goes to `out` (unless
/// `--output` names a file) and diagnostics go to `err`. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::BipartiteTable(a) => {
            let cfg = RunConfig::from_args(&a)?;
            let bytes = bipartite_table(&cfg, a.format.unwrap_or(Format::Csv))?;
            emit(&a.output, &bytes, out)
        }
        Command::Pipeline(p) => {
            let cfg = RunConfig::from_args(&p.common)?;
            let text = fs::read_to_string(&p.table)?;
            let bytes = pipeline(
                &cfg,
                &text,
                p.table_kind,
                p.common.format.unwrap_or(Format::Csv),
            )?;
            emit(&p.common.output, &bytes, out)
        }
        Command::Verify(a) => {
            let cfg = RunConfig::from_args(&a)?;
            let mut report = Vec::new();
            let outcome = verify(&cfg, &mut report);
            emit(&a.output, &report, out)?;
            if let Err(CliError::Mismatch(_)) = &outcome {
                let _ = writeln!(err, "engine and oracle disagree");
            }
            outcome
        }
        Command::Dump(a) => {
            let cfg = RunConfig::from_args(&a)?;
            let bytes = dump(&cfg, a.format.unwrap_or(Format::SeriesDump))?;
            emit(&a.output, &bytes, out)
        }
        Command::Oracle(a) => {
            let cfg = RunConfig::from_args(&a)?;
            let bytes = oracle_cmd(&cfg, a.format.unwrap_or(Format::Csv))?;
            emit(&a.output, &bytes, out)
        }
    }
}

fn emit(path: &Option<PathBuf>, bytes: &[u8], out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn write_table(
    table: &CountTable,
    format: Format,
    zeros: Option<&BTreeSet<CountKey>>,
) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => table.write_csv(&mut buf, zeros)?,
        Format::Jsonl => table.write_jsonl(&mut buf)?,
        Format::SeriesDump => {
            return Err(CliError::Usage(
                "series-dump is only available from dump and pipeline".into(),
            ))
        }
    }
    Ok(buf)
}

/// The b_{n,k,ν} table for the configuration.
pub fn bipartite_counts(cfg: &RunConfig) -> Result<CountTable, CliError> {
    let conn = cfg.bipartite_connected()?;
    Ok(enumerate_weighted(
        &conn,
        &cfg.engine_weights(),
        cfg.max_order,
    )?)
}

fn bipartite_table(cfg: &RunConfig, format: Format) -> Result<Vec<u8>, CliError> {
    let conn = cfg.bipartite_connected()?;
    let table = enumerate_weighted(&conn, &cfg.engine_weights(), cfg.max_order)?;
    let zeros = cfg.emit_zeros.then(|| {
        zero_grid(&conn, &cfg.engine_weights(), cfg.max_order, |n| {
            vec![max_bipartite_size(n)]
        })
    });
    write_table(&table, format, zeros.as_ref())
}

/// Every ν reachable by splitting n into component orders that occur in
/// `conn`.
fn reachable_nu(conn: &ConnectedCountTable, w: &WeightVector, n: u32) -> BTreeSet<Rational> {
    let orders: BTreeSet<u32> = conn.iter().map(|(o, _, _)| o).collect();
    // reach[m] = ν values of ways to split m.
    let mut reach: Vec<BTreeSet<Rational>> = vec![BTreeSet::new(); n as usize + 1];
    reach[0].insert(Rational::zero());
    for m in 1..=n as usize {
        let mut here = BTreeSet::new();
        for &o in orders.iter().filter(|&&o| o as usize <= m) {
            for nu in &reach[m - o as usize] {
                here.insert(nu + w.weight(o));
            }
        }
        reach[m] = here;
    }
    reach.swap_remove(n as usize)
}

fn zero_grid<F>(
    conn: &ConnectedCountTable,
    w: &WeightVector,
    order: u32,
    k_max: F,
) -> BTreeSet<CountKey>
where
    F: Fn(u32) -> Vec<u32>,
{
    let mut keys = BTreeSet::new();
    for n in 1..=order {
        let nus = reachable_nu(conn, w, n);
        let bounds = k_max(n);
        let mut k = vec![0u32; bounds.len()];
        loop {
            for nu in &nus {
                keys.insert(CountKey::new(n, k.clone(), nu.clone()));
            }
            // Odometer over the k box.
            let mut i = 0;
            while i < k.len() && k[i] == bounds[i] {
                k[i] = 0;
                i += 1;
            }
            if i == k.len() {
                break;
            }
            k[i] += 1;
        }
    }
    keys
}

fn pipeline(
    cfg: &RunConfig,
    text: &str,
    kind: TableKind,
    format: Format,
) -> Result<Vec<u8>, CliError> {
    let input = OrderCountTable::parse_jsonl(text, 1)?;
    let conn = match kind {
        TableKind::Connected => input,
        TableKind::All => connected_from_all(&input, cfg.max_order)?,
    };
    cfg.check_forbidden_arity(conn.arity())?;
    let conn = conn.without(&cfg.forbidden).restrict(cfg.max_order);
    let w = cfg.engine_weights();
    if format == Format::SeriesDump {
        let series = build_aux(&conn, cfg.max_order)?.apply_tau(&w)?;
        let mut buf = Vec::new();
        write_dump(&series, &mut buf)?;
        return Ok(buf);
    }
    let table = enumerate_weighted(&conn, &w, cfg.max_order)?;
    let zeros = cfg.emit_zeros.then(|| {
        // Box of k up to the largest value seen at each order.
        let arity = table.arity();
        zero_grid(&conn, &w, cfg.max_order, |n| {
            let mut bound = vec![0u32; arity];
            for (key, _) in table.iter().filter(|(key, _)| key.n == n) {
                for (b, v) in bound.iter_mut().zip(&key.k) {
                    *b = (*b).max(*v);
                }
            }
            bound
        })
    });
    write_table(&table, format, zeros.as_ref())
}

fn dump(cfg: &RunConfig, format: Format) -> Result<Vec<u8>, CliError> {
    let conn = cfg.bipartite_connected()?;
    let mut buf = Vec::new();
    match format {
        Format::SeriesDump => {
            let series = build_aux(&conn, cfg.max_order)?.apply_tau(&cfg.engine_weights())?;
            write_dump(&series, &mut buf)?;
        }
        Format::Jsonl => conn.write_jsonl(&mut buf)?,
        Format::Csv => {
            let table = enumerate_weighted(&conn, &cfg.engine_weights(), cfg.max_order)?;
            table.write_csv(&mut buf, None)?;
        }
    }
    Ok(buf)
}

fn check_cap(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.oracle_cap > oracle::HARD_CAP {
        return Err(CliError::Usage(format!(
            "--oracle-cap {} is above the hard limit {}",
            cfg.oracle_cap,
            oracle::HARD_CAP
        )));
    }
    if cfg.max_order > cfg.oracle_cap {
        return Err(wgc_core::Error::OracleCap {
            n: cfg.max_order,
            cap: cfg.oracle_cap,
        }
        .into());
    }
    cfg.check_forbidden_arity(1)
}

/// Brute-force table for orders `1..=max_order`.
pub fn oracle_counts(cfg: &RunConfig) -> Result<CountTable, CliError> {
    check_cap(cfg)?;
    let mut table = CountTable::new(1);
    for n in 1..=cfg.max_order {
        let part = oracle::oracle_table(
            n,
            cfg.oracle_cap,
            &cfg.weights,
            cfg.oracle_predicate(),
            cfg.mode,
        )?;
        for (key, c) in part.iter() {
            table.insert(key.clone(), c.clone())?;
        }
    }
    Ok(table)
}

fn oracle_cmd(cfg: &RunConfig, format: Format) -> Result<Vec<u8>, CliError> {
    write_table(&oracle_counts(cfg)?, format, None)
}

/// One line per triple where the tables disagree, in canonical order.
pub fn diff_tables(engine: &CountTable, oracle: &CountTable) -> Vec<String> {
    let keys: BTreeSet<&CountKey> = engine.iter().chain(oracle.iter()).map(|(k, _)| k).collect();
    keys.into_iter()
        .filter_map(|key| {
            let (a, b) = (engine.get_key(key), oracle.get_key(key));
            (a != b).then(|| {
                format!(
                    "mismatch {}: engine={} oracle={}",
                    CountTable::row_label(key),
                    a,
                    b
                )
            })
        })
        .collect()
}

/// Runs engine and oracle for every order up to `max_order` and writes a
/// per-order report. Fails with [`CliError::Mismatch`] on any difference.
pub fn verify(cfg: &RunConfig, report: &mut dyn Write) -> Result<(), CliError> {
    check_cap(cfg)?;
    let engine = bipartite_counts(cfg)?;
    let mut differing = 0;
    for n in 1..=cfg.max_order {
        let expected = oracle::oracle_table(
            n,
            cfg.oracle_cap,
            &cfg.weights,
            cfg.oracle_predicate(),
            cfg.mode,
        )?;
        let got = engine.of_order(n);
        let diffs = diff_tables(&got, &expected);
        let graphs: BigUint = expected.total();
        if diffs.is_empty() {
            writeln!(report, "n={n}: ok ({} triples, {graphs} graphs)", got.len())?;
        } else {
            writeln!(report, "n={n}: {} differing triple(s)", diffs.len())?;
            for line in &diffs {
                writeln!(report, "{line}")?;
            }
            differing += diffs.len();
        }
    }
    if differing > 0 {
        return Err(CliError::Mismatch(differing));
    }
    Ok(())
}
