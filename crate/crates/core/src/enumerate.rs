//! Counting and listing the Cayley tables of a given order that satisfy a
//! conjunction of identities.
//!
//! Two engines produce the same counts:
//!
//! * [`Engine::Naive`] walks all `n^(n²)` tables and checks each one with
//!   [`CayleyTable::satisfies`].
//! * [`Engine::Pruned`] fills one cell per search level. Every assignment of
//!   the identity's variables is an *instance*; an instance waits on one
//!   unfilled cell it needs and is re-examined only when that cell is set. A
//!   branch is cut as soon as some instance evaluates both sides to different
//!   values.
//!
//! Both engines split the search on the values of the first few cells and run
//! the shards on a private thread pool; results are summed in shard order, so
//! counts never depend on the worker count.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::magma::{Canonizer, CayleyTable, ClassMode, MAX_ORDER};
use crate::term::{Identity, Term};

const UNFILLED: u8 = u8::MAX;
const MAX_CELLS: usize = MAX_ORDER * MAX_ORDER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Naive,
    #[default]
    Pruned,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Naive => "naive",
            Engine::Pruned => "pruned",
        })
    }
}

/// Order in which the pruned engine fills cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillOrder {
    /// Diagonal first when some identity contains a square, else row-major.
    #[default]
    Auto,
    RowMajor,
    DiagonalFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassCounting {
    Iso,
    IsoOrAntiIso,
    Both,
}

impl ClassCounting {
    fn iso(self) -> bool {
        matches!(self, ClassCounting::Iso | ClassCounting::Both)
    }

    fn anti(self) -> bool {
        matches!(self, ClassCounting::IsoOrAntiIso | ClassCounting::Both)
    }
}

impl From<ClassMode> for ClassCounting {
    fn from(mode: ClassMode) -> ClassCounting {
        match mode {
            ClassMode::Iso => ClassCounting::Iso,
            ClassMode::IsoOrAntiIso => ClassCounting::IsoOrAntiIso,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub shards_done: usize,
    pub shards_total: usize,
    pub nodes_visited: u64,
}

pub type ProgressFn = Arc<dyn Fn(&Progress) + Send + Sync>;

#[derive(Clone)]
pub struct SearchConfig {
    pub engine: Engine,
    /// Threads in the private pool; at least 1.
    pub workers: usize,
    pub fill_order: FillOrder,
    pub classes: Option<ClassCounting>,
    /// Class counting materializes canonical forms; above order 3 it must be
    /// requested explicitly.
    pub allow_large_class_count: bool,
    pub progress: Option<ProgressFn>,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            engine: Engine::Pruned,
            workers: 1,
            fill_order: FillOrder::Auto,
            classes: None,
            allow_large_class_count: false,
            progress: None,
        }
    }
}

impl fmt::Debug for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchConfig")
            .field("engine", &self.engine)
            .field("workers", &self.workers)
            .field("fill_order", &self.fill_order)
            .field("classes", &self.classes)
            .field("allow_large_class_count", &self.allow_large_class_count)
            .field("progress", &self.progress.is_some())
            .finish()
    }
}

impl SearchConfig {
    pub fn with_engine(mut self, engine: Engine) -> SearchConfig {
        self.engine = engine;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> SearchConfig {
        self.workers = workers;
        self
    }

    pub fn with_fill_order(mut self, fill_order: FillOrder) -> SearchConfig {
        self.fill_order = fill_order;
        self
    }

    pub fn with_classes(mut self, classes: ClassCounting) -> SearchConfig {
        self.classes = Some(classes);
        self
    }

    pub fn allow_large_class_count(mut self, allow: bool) -> SearchConfig {
        self.allow_large_class_count = allow;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub identity: String,
    pub order: usize,
    pub raw_count: u64,
    pub iso_classes: Option<u64>,
    pub iso_anti_classes: Option<u64>,
    pub engine: Engine,
    #[serde(skip)]
    pub elapsed: Duration,
    pub nodes_visited: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    UnsupportedOrder(usize),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("class counting at order {0} must be enabled explicitly")]
    ClassCountingGated(usize),
    #[error("class counting is limited to orders up to 4, got {0}")]
    ClassCountingUnsupported(usize),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Satisfying tables grouped by class, with the number of satisfying tables
/// in each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub order: usize,
    pub mode: ClassMode,
    pub raw_count: u64,
    pub classes: BTreeMap<CayleyTable, u64>,
}

// ---------------------------------------------------------------------------
// compiled instances

#[derive(Debug, Clone, Copy)]
enum Op {
    Load(u8),
    Mul,
}

#[derive(Debug, Clone, Copy)]
struct Instance {
    lhs: u32,
    rhs: u32,
    values: [u8; 3],
}

enum Status {
    Holds,
    Fails,
    Waits(usize),
}

struct Compiled {
    order: usize,
    programs: Vec<Vec<Op>>,
    instances: Vec<Instance>,
    stack: usize,
}

fn postfix(t: &Term, out: &mut Vec<Op>) {
    match t {
        Term::Var(v) => out.push(Op::Load(v.index() as u8)),
        Term::Prod(l, r) => {
            postfix(l, out);
            postfix(r, out);
            out.push(Op::Mul);
        }
    }
}

impl Compiled {
    fn new(ids: &[Identity], order: usize) -> Compiled {
        let mut programs = Vec::new();
        let mut instances = Vec::new();
        for id in ids {
            if id.lhs == id.rhs {
                continue;
            }
            let vars = id.variables();
            let lhs = programs.len() as u32;
            for side in [&id.lhs, &id.rhs] {
                let mut ops = Vec::new();
                postfix(side, &mut ops);
                programs.push(ops);
            }
            let total = order.pow(vars.len() as u32);
            for mut k in 0..total {
                let mut values = [0u8; 3];
                for v in vars.iter().rev() {
                    values[v.index()] = (k % order) as u8;
                    k /= order;
                }
                instances.push(Instance {
                    lhs,
                    rhs: lhs + 1,
                    values,
                });
            }
        }
        let stack = programs.iter().map(Vec::len).max().unwrap_or(0);
        Compiled {
            order,
            programs,
            instances,
            stack,
        }
    }

    /// Value of one side, or the first unfilled cell it needs.
    fn side(
        &self,
        prog: u32,
        values: &[u8; 3],
        cells: &[u8],
        stack: &mut [u8],
    ) -> Result<u8, usize> {
        let n = self.order;
        let mut sp = 0;
        for op in &self.programs[prog as usize] {
            match *op {
                Op::Load(slot) => {
                    stack[sp] = values[slot as usize];
                    sp += 1;
                }
                Op::Mul => {
                    let cell = stack[sp - 2] as usize * n + stack[sp - 1] as usize;
                    let v = cells[cell];
                    if v == UNFILLED {
                        return Err(cell);
                    }
                    sp -= 1;
                    stack[sp - 1] = v;
                }
            }
        }
        Ok(stack[0])
    }

    fn check(&self, inst: &Instance, cells: &[u8], pos: &[usize], stack: &mut [u8]) -> Status {
        let lhs = self.side(inst.lhs, &inst.values, cells, stack);
        let rhs = self.side(inst.rhs, &inst.values, cells, stack);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => Status::Holds,
            (Ok(_), Ok(_)) => Status::Fails,
            (Err(c), Ok(_)) | (Ok(_), Err(c)) => Status::Waits(c),
            // wait on whichever cell is filled later; the other is set by then
            (Err(a), Err(b)) => Status::Waits(if pos[a] >= pos[b] { a } else { b }),
        }
    }
}

fn fill_order(ids: &[Identity], order: usize, strategy: FillOrder) -> Vec<usize> {
    let diagonal = match strategy {
        FillOrder::RowMajor => false,
        FillOrder::DiagonalFirst => true,
        FillOrder::Auto => ids.iter().any(Identity::contains_square),
    };
    let mut cells: Vec<usize> = (0..order * order).collect();
    if diagonal {
        cells.sort_by_key(|&c| (c / order != c % order, c));
    }
    cells
}

// ---------------------------------------------------------------------------
// leaves

#[derive(Clone, Copy)]
struct Wants {
    iso: bool,
    anti: bool,
    tables: bool,
    census: Option<ClassMode>,
}

#[derive(Default)]
struct Outcome {
    count: u64,
    nodes: u64,
    iso: HashSet<u64>,
    anti: HashSet<u64>,
    census: HashMap<u64, u64>,
    tables: Vec<Vec<u8>>,
}

impl Outcome {
    fn leaf(&mut self, cells: &[u8], wants: Wants, canon: &Canonizer) {
        self.count += 1;
        if wants.iso {
            self.iso.insert(canon.iso_code(cells));
        }
        if wants.anti {
            self.anti.insert(canon.iso_anti_code(cells));
        }
        if let Some(mode) = wants.census {
            let code = match mode {
                ClassMode::Iso => canon.iso_code(cells),
                ClassMode::IsoOrAntiIso => canon.iso_anti_code(cells),
            };
            *self.census.entry(code).or_default() += 1;
        }
        if wants.tables {
            self.tables.push(cells.to_vec());
        }
    }

    fn absorb(&mut self, other: Outcome) {
        self.count += other.count;
        self.nodes += other.nodes;
        self.iso.extend(other.iso);
        self.anti.extend(other.anti);
        for (code, k) in other.census {
            *self.census.entry(code).or_default() += k;
        }
        self.tables.extend(other.tables);
    }
}

// ---------------------------------------------------------------------------
// pruned engine

struct Pruned<'a> {
    compiled: &'a Compiled,
    fill: &'a [usize],
    pos: &'a [usize],
    cells: [u8; MAX_CELLS],
    watch: Vec<Vec<u32>>,
    trail: Vec<usize>,
    stack: Vec<u8>,
}

/// Watch lists for the empty table, or `None` when some instance fails
/// without reading any cell (e.g. `x = y`).
fn initial_watch(compiled: &Compiled, pos: &[usize]) -> Option<Vec<Vec<u32>>> {
    let n = compiled.order;
    let cells = [UNFILLED; MAX_CELLS];
    let mut stack = vec![0; compiled.stack];
    let mut watch = vec![Vec::new(); n * n];
    for (i, inst) in compiled.instances.iter().enumerate() {
        match compiled.check(inst, &cells, pos, &mut stack) {
            Status::Holds => {}
            Status::Fails => return None,
            Status::Waits(c) => watch[c].push(i as u32),
        }
    }
    Some(watch)
}

impl Pruned<'_> {
    fn descend(
        &mut self,
        depth: usize,
        prefix: &[u8],
        out: &mut Outcome,
        wants: Wants,
        canon: &Canonizer,
    ) {
        let compiled = self.compiled;
        let n = compiled.order;
        let cell = self.fill[depth];
        let values = match prefix.get(depth) {
            Some(&v) => v..v + 1,
            None => 0..n as u8,
        };
        for value in values {
            out.nodes += 1;
            self.cells[cell] = value;
            let mark = self.trail.len();
            let mut ok = true;
            let mut i = 0;
            while i < self.watch[cell].len() {
                let id = self.watch[cell][i];
                let inst = &compiled.instances[id as usize];
                match compiled.check(inst, &self.cells, self.pos, &mut self.stack) {
                    Status::Holds => {}
                    Status::Fails => {
                        ok = false;
                        break;
                    }
                    Status::Waits(next) => {
                        self.watch[next].push(id);
                        self.trail.push(next);
                    }
                }
                i += 1;
            }
            if ok {
                if depth + 1 == n * n {
                    out.leaf(&self.cells[..n * n], wants, canon);
                } else {
                    self.descend(depth + 1, prefix, out, wants, canon);
                }
            }
            while self.trail.len() > mark {
                let c = self.trail.pop().unwrap();
                self.watch[c].pop();
            }
        }
        self.cells[cell] = UNFILLED;
    }
}

// ---------------------------------------------------------------------------
// naive engine

fn naive_shard(
    ids: &[Identity],
    order: usize,
    prefix: &[u8],
    out: &mut Outcome,
    wants: Wants,
    canon: &Canonizer,
) {
    let total = order * order;
    let mut table = CayleyTable::from_raw(order, vec![0; total]);
    table.raw_mut()[..prefix.len()].copy_from_slice(prefix);
    loop {
        if ids.iter().all(|id| table.satisfies(id)) {
            out.leaf(table.raw(), wants, canon);
        }
        let cells = table.raw_mut();
        let mut i = total;
        loop {
            if i == prefix.len() {
                return;
            }
            i -= 1;
            if (cells[i] as usize) + 1 < order {
                cells[i] += 1;
                break;
            }
            cells[i] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// driver

fn shard_prefix_len(order: usize, workers: usize) -> usize {
    let target = 8 * workers;
    let mut k = 0;
    let mut shards = 1;
    while shards < target && k < order * order {
        k += 1;
        shards *= order;
    }
    k
}

fn prefix_of(mut index: usize, order: usize, len: usize) -> Vec<u8> {
    let mut prefix = vec![0u8; len];
    for p in prefix.iter_mut().rev() {
        *p = (index % order) as u8;
        index /= order;
    }
    prefix
}

struct Plan<'a> {
    ids: &'a [Identity],
    order: usize,
    engine: Engine,
    fill_strategy: FillOrder,
    wants: Wants,
    workers: usize,
    progress: Option<ProgressFn>,
}

fn validate(order: usize, cfg: &SearchConfig) -> Result<(), EnumerateError> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(EnumerateError::UnsupportedOrder(order));
    }
    if cfg.workers == 0 {
        return Err(EnumerateError::NoWorkers);
    }
    Ok(())
}

fn validate_classes(order: usize, cfg: &SearchConfig) -> Result<(), EnumerateError> {
    if order > 4 {
        Err(EnumerateError::ClassCountingUnsupported(order))
    } else if order > 3 && !cfg.allow_large_class_count {
        Err(EnumerateError::ClassCountingGated(order))
    } else {
        Ok(())
    }
}

/// Runs every shard, handing outcomes to `merge` in shard order.
fn run(plan: &Plan<'_>, mut merge: impl FnMut(Outcome)) -> Result<u64, EnumerateError> {
    let order = plan.order;
    let canon = Canonizer::new(order);
    let fill = match plan.engine {
        Engine::Pruned => fill_order(plan.ids, order, plan.fill_strategy),
        Engine::Naive => (0..order * order).collect(),
    };
    let mut pos = vec![0; order * order];
    for (depth, &cell) in fill.iter().enumerate() {
        pos[cell] = depth;
    }
    let compiled = Compiled::new(plan.ids, order);
    let watch = match plan.engine {
        Engine::Pruned => match initial_watch(&compiled, &pos) {
            Some(w) => Some(w),
            None => return Ok(0),
        },
        Engine::Naive => None,
    };
    let k = shard_prefix_len(order, plan.workers);
    let shards = order.pow(k as u32);

    let shard = |index: usize| -> Outcome {
        let prefix = prefix_of(index, order, k);
        let mut out = Outcome::default();
        match &watch {
            Some(watch) => {
                let mut search = Pruned {
                    compiled: &compiled,
                    fill: &fill,
                    pos: &pos,
                    cells: [UNFILLED; MAX_CELLS],
                    watch: watch.clone(),
                    trail: Vec::new(),
                    stack: vec![0; compiled.stack],
                };
                search.descend(0, &prefix, &mut out, plan.wants, &canon);
            }
            None => naive_shard(plan.ids, order, &prefix, &mut out, plan.wants, &canon),
        }
        out
    };

    let mut nodes = 0;
    let mut done = 0;
    let mut report = |o: &Outcome, done: usize| {
        nodes += o.nodes;
        if let Some(p) = &plan.progress {
            p(&Progress {
                shards_done: done,
                shards_total: shards,
                nodes_visited: nodes,
            });
        }
    };
    if plan.workers == 1 {
        for i in 0..shards {
            let o = shard(i);
            done += 1;
            report(&o, done);
            merge(o);
        }
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(plan.workers)
            .build()
            .map_err(|e| EnumerateError::ThreadPool(e.to_string()))?;
        let batch = 4 * plan.workers;
        let mut start = 0;
        while start < shards {
            let end = (start + batch).min(shards);
            let outcomes: Vec<Outcome> =
                pool.install(|| (start..end).into_par_iter().map(&shard).collect());
            for o in outcomes {
                done += 1;
                report(&o, done);
                merge(o);
            }
            start = end;
        }
    }
    Ok(nodes)
}

fn label(ids: &[Identity]) -> String {
    if ids.is_empty() {
        return "x = x".to_string();
    }
    ids.iter()
        .map(Identity::label)
        .collect::<Vec<_>>()
        .join(" & ")
}

fn execute(
    ids: &[Identity],
    order: usize,
    cfg: &SearchConfig,
    engine: Engine,
    wants: Wants,
    merge: &mut dyn FnMut(Outcome),
) -> Result<(u64, Duration), EnumerateError> {
    validate(order, cfg)?;
    if wants.iso || wants.anti || wants.census.is_some() {
        validate_classes(order, cfg)?;
    }
    let start = Instant::now();
    let plan = Plan {
        ids,
        order,
        engine,
        fill_strategy: cfg.fill_order,
        wants,
        workers: cfg.workers,
        progress: cfg.progress.clone(),
    };
    let nodes = run(&plan, merge)?;
    Ok((nodes, start.elapsed()))
}

fn count_with(
    ids: &[Identity],
    order: usize,
    cfg: &SearchConfig,
    engine: Engine,
) -> Result<CountReport, EnumerateError> {
    let classes = cfg.classes;
    let wants = Wants {
        iso: classes.is_some_and(ClassCounting::iso),
        anti: classes.is_some_and(ClassCounting::anti),
        tables: false,
        census: None,
    };
    let mut total = Outcome::default();
    let (nodes, elapsed) = execute(ids, order, cfg, engine, wants, &mut |o| total.absorb(o))?;
    Ok(CountReport {
        identity: label(ids),
        order,
        raw_count: total.count,
        iso_classes: wants.iso.then_some(total.iso.len() as u64),
        iso_anti_classes: wants.anti.then_some(total.anti.len() as u64),
        engine,
        elapsed,
        nodes_visited: (engine == Engine::Pruned).then_some(nodes),
    })
}

/// Number of order-`order` tables satisfying every identity in `ids`, with
/// class counts when `cfg.classes` asks for them.
pub fn count_satisfying(
    ids: &[Identity],
    order: usize,
    cfg: &SearchConfig,
) -> Result<CountReport, EnumerateError> {
    count_with(ids, order, cfg, cfg.engine)
}

/// [`count_satisfying`] on the pruned engine regardless of `cfg.engine`.
pub fn prune_search(
    ids: &[Identity],
    order: usize,
    cfg: &SearchConfig,
) -> Result<CountReport, EnumerateError> {
    count_with(ids, order, cfg, Engine::Pruned)
}

/// [`count_satisfying`] on the naive engine regardless of `cfg.engine`.
pub fn naive_search(
    ids: &[Identity],
    order: usize,
    cfg: &SearchConfig,
) -> Result<CountReport, EnumerateError> {
    count_with(ids, order, cfg, Engine::Naive)
}

/// Number of classes of satisfying tables under `mode`.
pub fn count_classes(
    ids: &[Identity],
    order: usize,
    mode: ClassMode,
    cfg: &SearchConfig,
) -> Result<CountReport, EnumerateError> {
    let cfg = cfg.clone().with_classes(mode.into());
    count_satisfying(ids, order, &cfg)
}

/// Canonical representatives of the classes of satisfying tables together
/// with how many satisfying tables fall in each.
pub fn class_census(
    ids: &[Identity],
    order: usize,
    mode: ClassMode,
    cfg: &SearchConfig,
) -> Result<ClassCensus, EnumerateError> {
    let wants = Wants {
        iso: false,
        anti: false,
        tables: false,
        census: Some(mode),
    };
    let mut total = Outcome::default();
    execute(ids, order, cfg, cfg.engine, wants, &mut |o| total.absorb(o))?;
    let canon = Canonizer::new(order);
    let classes = total
        .census
        .into_iter()
        .map(|(code, k)| (canon.decode(code), k))
        .collect();
    Ok(ClassCensus {
        order,
        mode,
        raw_count: total.count,
        classes,
    })
}

/// Streams every satisfying table to `sink` exactly once, in ascending
/// encoding order. Cells are always filled row-major here so that shard order
/// is encoding order; `cfg.fill_order` is ignored.
pub fn enumerate_satisfying(
    ids: &[Identity],
    order: usize,
    cfg: &SearchConfig,
    mut sink: impl FnMut(CayleyTable),
) -> Result<CountReport, EnumerateError> {
    let cfg = SearchConfig {
        fill_order: FillOrder::RowMajor,
        ..cfg.clone()
    };
    let wants = Wants {
        iso: false,
        anti: false,
        tables: true,
        census: None,
    };
    let mut count = 0;
    let (nodes, elapsed) = execute(ids, order, &cfg, cfg.engine, wants, &mut |o| {
        count += o.count;
        for cells in o.tables {
            sink(CayleyTable::from_raw(order, cells));
        }
    })?;
    Ok(CountReport {
        identity: label(ids),
        order,
        raw_count: count,
        iso_classes: None,
        iso_anti_classes: None,
        engine: cfg.engine,
        elapsed,
        nodes_visited: (cfg.engine == Engine::Pruned).then_some(nodes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::term::{parse_identity, Grammar};

    fn id(s: &str) -> Identity {
        parse_identity(s, Grammar::Compact).unwrap()
    }

    fn key(k: &str) -> Identity {
        catalog::get(k).unwrap().identity.clone()
    }

    fn raw(ids: &[Identity], order: usize, engine: Engine) -> u64 {
        let cfg = SearchConfig::default().with_engine(engine);
        count_satisfying(ids, order, &cfg).unwrap().raw_count
    }

    #[test]
    fn count_examples() {
        for engine in [Engine::Naive, Engine::Pruned] {
            assert_eq!(raw(&[key("F11")], 2, engine), 8);
            assert_eq!(raw(&[key("T6")], 2, engine), 8);
            assert_eq!(raw(&[key("EL")], 3, engine), 239);
            assert_eq!(raw(&[key("F42")], 2, engine), 12);
            assert_eq!(raw(&[key("RN")], 3, engine), 932);
            assert_eq!(raw(&[key("KR")], 1, engine), 1);
        }
    }

    #[test]
    fn unconstrained_counts() {
        for engine in [Engine::Naive, Engine::Pruned] {
            assert_eq!(raw(&[id("x = x")], 2, engine), 16);
            assert_eq!(raw(&[], 3, engine), 19683);
            assert_eq!(raw(&[id("x = y")], 2, engine), 0);
            assert_eq!(raw(&[id("x = y")], 1, engine), 1);
        }
    }

    #[test]
    fn class_examples() {
        let cfg = SearchConfig::default();
        let f17 = [key("F17")];
        assert_eq!(
            count_classes(&f17, 2, ClassMode::Iso, &cfg)
                .unwrap()
                .iso_classes,
            Some(7)
        );
        assert_eq!(
            count_classes(&f17, 2, ClassMode::IsoOrAntiIso, &cfg)
                .unwrap()
                .iso_anti_classes,
            Some(5)
        );
        let f5 = [key("F5")];
        let both = cfg.clone().with_classes(ClassCounting::Both);
        let r = count_satisfying(&f5, 2, &both).unwrap();
        assert_eq!(
            (r.raw_count, r.iso_classes, r.iso_anti_classes),
            (11, Some(7), Some(6))
        );
        let r = count_satisfying(&[id("x=x")], 2, &both).unwrap();
        assert_eq!((r.iso_classes, r.iso_anti_classes), (Some(10), Some(7)));
    }

    #[test]
    fn class_counting_is_gated() {
        let cfg = SearchConfig::default();
        assert_eq!(
            count_classes(&[key("EL")], 4, ClassMode::Iso, &cfg),
            Err(EnumerateError::ClassCountingGated(4))
        );
        let open = cfg.allow_large_class_count(true);
        assert_eq!(
            count_classes(&[key("EL")], 5, ClassMode::Iso, &open),
            Err(EnumerateError::ClassCountingUnsupported(5))
        );
    }

    #[test]
    fn config_errors() {
        let cfg = SearchConfig::default().with_workers(0);
        assert_eq!(
            count_satisfying(&[], 2, &cfg),
            Err(EnumerateError::NoWorkers)
        );
        assert_eq!(
            count_satisfying(&[], 6, &SearchConfig::default()),
            Err(EnumerateError::UnsupportedOrder(6))
        );
        assert_eq!(
            count_satisfying(&[], 0, &SearchConfig::default()),
            Err(EnumerateError::UnsupportedOrder(0))
        );
    }

    #[test]
    fn enumerate_examples() {
        let mut seen = Vec::new();
        let report = enumerate_satisfying(&[key("F1")], 2, &SearchConfig::default(), |t| {
            seen.push(t.encode())
        })
        .unwrap();
        assert_eq!(report.raw_count, 10);
        assert_eq!(seen.len(), 10);
        assert!(seen.contains(&"11 11".to_string()));
        assert!(seen.contains(&"12 12".to_string()));
        assert!(seen.windows(2).all(|w| w[0] < w[1]));

        let mut all = Vec::new();
        enumerate_satisfying(&[id("x=x")], 2, &SearchConfig::default(), |t| all.push(t)).unwrap();
        assert_eq!(all, crate::magma::all_tables(2).collect::<Vec<_>>());

        let mut n = 0;
        enumerate_satisfying(&[id("x=x")], 3, &SearchConfig::default(), |_| n += 1).unwrap();
        assert_eq!(n, 19683);
    }

    #[test]
    fn enumerated_tables_satisfy() {
        for engine in [Engine::Naive, Engine::Pruned] {
            let cfg = SearchConfig::default().with_engine(engine);
            let cm = key("CM");
            let mut tables = Vec::new();
            enumerate_satisfying(std::slice::from_ref(&cm), 3, &cfg, |t| tables.push(t)).unwrap();
            assert_eq!(tables.len(), 297);
            assert!(tables.iter().all(|t| t.satisfies(&cm)));
        }
    }

    #[test]
    fn multi_worker_enumeration_is_ordered() {
        let cfg = SearchConfig::default().with_workers(3);
        let mut a = Vec::new();
        enumerate_satisfying(&[key("T6")], 3, &cfg, |t| a.push(t)).unwrap();
        let mut b = Vec::new();
        enumerate_satisfying(&[key("T6")], 3, &SearchConfig::default(), |t| b.push(t)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 1419);
    }

    #[test]
    fn fill_orders_agree() {
        for k in ["LN", "T7", "F1", "CA"] {
            let counts: Vec<_> = [
                FillOrder::RowMajor,
                FillOrder::DiagonalFirst,
                FillOrder::Auto,
            ]
            .into_iter()
            .map(|f| {
                let cfg = SearchConfig::default().with_fill_order(f);
                count_satisfying(&[key(k)], 3, &cfg).unwrap().raw_count
            })
            .collect();
            assert!(counts.windows(2).all(|w| w[0] == w[1]), "{k}: {counts:?}");
        }
    }

    #[test]
    fn diagonal_first_when_squares() {
        let with_square = [key("LN")];
        assert_eq!(fill_order(&with_square, 3, FillOrder::Auto)[..3], [0, 4, 8]);
        assert_eq!(
            fill_order(&[key("F1")], 3, FillOrder::Auto),
            (0..9).collect::<Vec<_>>()
        );
    }

    #[test]
    fn census_sums_to_raw() {
        let cfg = SearchConfig::default();
        for mode in [ClassMode::Iso, ClassMode::IsoOrAntiIso] {
            let census = class_census(&[key("CP")], 3, mode, &cfg).unwrap();
            assert_eq!(census.classes.values().sum::<u64>(), census.raw_count);
            assert_eq!(census.raw_count, 744);
        }
        // satisfaction is isomorphism invariant: each class is a full orbit
        let census = class_census(&[key("CP")], 3, ClassMode::Iso, &cfg).unwrap();
        for (rep, members) in &census.classes {
            assert_eq!(*members, rep.orbit(ClassMode::Iso).len() as u64);
        }
    }

    #[test]
    fn progress_reports_every_shard() {
        use std::sync::Mutex;
        let seen = Arc::new(Mutex::new(Vec::new()));
        let sink = seen.clone();
        let cfg = SearchConfig {
            progress: Some(Arc::new(move |p: &Progress| sink.lock().unwrap().push(*p))),
            ..SearchConfig::default()
        };
        count_satisfying(&[key("F1")], 3, &cfg).unwrap();
        let seen = seen.lock().unwrap();
        let last = seen.last().unwrap();
        assert_eq!(last.shards_done, last.shards_total);
        assert_eq!(seen.len(), last.shards_total);
    }

    #[test]
    fn conjunction_is_monotone() {
        let a = key("LB");
        let b = key("RB");
        let both = raw(&[a.clone(), b.clone()], 3, Engine::Pruned);
        assert!(both <= raw(std::slice::from_ref(&a), 3, Engine::Pruned));
        assert!(both <= raw(std::slice::from_ref(&b), 3, Engine::Pruned));
        assert_eq!(both, raw(&[a, b], 3, Engine::Naive));
    }
}
