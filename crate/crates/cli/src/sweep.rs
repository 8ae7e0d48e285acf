use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use regwitness_core::algebra::GbBudget;
use regwitness_core::graph::{decode_graph6, encode_graph6, enumerate_connected, fixture, CompositionSpec, MAX_ENUMERATE};
use regwitness_core::oracle::OracleConfig;
use regwitness_core::theorems::{check_many, BoundCheck, CheckOptions, Counterexample, TheoremId, Verdict};
use regwitness_core::Graph;

/// Where the graphs of a sweep come from.
#[derive(Debug, Clone)]
pub enum Corpus {
    /// All connected graphs on `min_n..=max_n` vertices, up to isomorphism.
    Enumerate { min_n: usize, max_n: usize },
    /// One graph6 string per line; blank lines and `#` comments skipped.
    Graph6File(PathBuf),
    Fixtures(Vec<String>),
    /// Graphs supplied directly, each with a display name.
    Graphs(Vec<(String, Graph)>),
}

#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    /// S-pair cap per Gröbner basis.
    pub max_pairs: usize,
    /// Cap on subsets visited by the homology scan.
    pub max_subsets: Option<usize>,
    /// Wall-clock allowance for one `(G, m)` pair.
    pub per_graph: Option<Duration>,
    /// Largest `m · n` handed to the oracle for one component.
    pub max_component_vars: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        let oracle = OracleConfig::default();
        Budgets {
            max_pairs: oracle.gb.max_pairs,
            max_subsets: None,
            per_graph: Some(Duration::from_secs(60)),
            max_component_vars: oracle.max_component_vars,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub corpus: Corpus,
    pub ms: Vec<usize>,
    /// Empty means every theorem.
    pub theorems: Vec<TheoremId>,
    pub field: u64,
    pub budgets: Budgets,
    /// 0 lets rayon pick.
    pub workers: usize,
    pub force: bool,
    pub inequality_only: bool,
    pub composition: Option<CompositionSpec>,
    /// Violations are appended here as JSON lines.
    pub violations: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(corpus: Corpus, ms: Vec<usize>) -> Self {
        SweepConfig {
            corpus,
            ms,
            theorems: Vec::new(),
            field: regwitness_core::algebra::DEFAULT_PRIME,
            budgets: Budgets::default(),
            workers: 0,
            force: false,
            inequality_only: false,
            composition: None,
            violations: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.ms.is_empty() {
            bail!("no values of m given");
        }
        if let Some(&m) = self.ms.iter().find(|&&m| m < 2) {
            bail!("need m >= 2, got {m}");
        }
        if self.budgets.max_pairs == 0 || self.budgets.max_subsets == Some(0) {
            bail!("budgets must be positive");
        }
        if self.budgets.per_graph == Some(Duration::ZERO) {
            bail!("per-graph time budget must be positive");
        }
        if let Corpus::Enumerate { min_n, max_n } = self.corpus {
            if max_n > MAX_ENUMERATE || min_n == 0 || min_n > max_n {
                bail!("enumeration range {min_n}..={max_n} outside 1..={MAX_ENUMERATE}");
            }
        }
        Ok(())
    }

    fn theorem_list(&self) -> Vec<TheoremId> {
        if self.theorems.is_empty() {
            TheoremId::ALL.to_vec()
        } else {
            self.theorems.clone()
        }
    }
}

/// One `(G, m)` pair of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub name: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub checks: Vec<BoundCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub holds: usize,
    pub violated: usize,
    pub skipped: usize,
    pub oracle_budget: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::Skipped => self.skipped += 1,
            Verdict::OracleBudget => self.oracle_budget += 1,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub graphs: usize,
    pub rows: usize,
    pub errors: usize,
    pub total: Counts,
    pub by_theorem: BTreeMap<TheoremId, Counts>,
}

/// Graphs on which a bound was met with equality.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Attainment {
    /// Rows where the theorem applied and held.
    pub held: usize,
    pub attained: usize,
    /// `graph6@m` of the attaining rows.
    pub graphs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub wall_ms: u64,
    pub slowest_ms: u64,
    pub slowest: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub field: u64,
    pub ms: Vec<usize>,
    pub theorems: Vec<TheoremId>,
    pub rows: Vec<SweepRow>,
    pub summary: Summary,
    pub attainment: BTreeMap<TheoremId, Attainment>,
    pub timing: Timing,
}

impl SweepReport {
    pub fn violations(&self) -> impl Iterator<Item = &Counterexample> {
        self.rows.iter().flat_map(|r| r.checks.iter()).filter_map(|c| c.counterexample.as_ref())
    }

    /// The report as JSON with timing fields zeroed, for comparisons.
    pub fn without_timing(&self) -> SweepReport {
        let mut r = self.clone();
        r.timing = Timing { wall_ms: 0, slowest_ms: 0, slowest: None };
        for row in &mut r.rows {
            row.elapsed_ms = 0;
        }
        r
    }
}

pub fn load_corpus(corpus: &Corpus) -> Result<Vec<(String, Graph)>> {
    Ok(match corpus {
        Corpus::Enumerate { min_n, max_n } => {
            let mut out = Vec::new();
            for n in *min_n..=*max_n {
                for g in enumerate_connected(n)? {
                    out.push((encode_graph6(&g), g));
                }
            }
            out
        }
        Corpus::Graph6File(path) => {
            let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let mut out = Vec::new();
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line?;
                let s = line.trim();
                if s.is_empty() || s.starts_with('#') {
                    continue;
                }
                let g = decode_graph6(s).with_context(|| format!("{}:{}", path.display(), i + 1))?;
                out.push((s.to_string(), g));
            }
            out
        }
        Corpus::Fixtures(names) => names
            .iter()
            .map(|name| Ok((name.clone(), fixture(name)?)))
            .collect::<Result<_>>()?,
        Corpus::Graphs(gs) => gs.clone(),
    })
}

fn check_options(cfg: &SweepConfig, deadline: Option<Instant>) -> CheckOptions {
    let mut oracle = OracleConfig {
        gb: GbBudget { max_pairs: cfg.budgets.max_pairs, ..GbBudget::default() },
        max_component_vars: cfg.budgets.max_component_vars,
        max_subsets: cfg.budgets.max_subsets,
        deadline: None,
        inequality_only: cfg.inequality_only,
    };
    oracle = oracle.with_deadline(deadline);
    CheckOptions { oracle, field: cfg.field, force: cfg.force, composition: cfg.composition.clone() }
}

fn run_one(cfg: &SweepConfig, ids: &[TheoremId], name: &str, g: &Graph, m: usize) -> SweepRow {
    let start = Instant::now();
    let opts = check_options(cfg, cfg.budgets.per_graph.map(|d| start + d));
    let (checks, error) = match check_many(g, m, ids, &opts) {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    SweepRow {
        name: name.to_string(),
        graph6: encode_graph6(g),
        n: g.n(),
        m,
        checks,
        error,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every selected theorem on every `(G, m)` of the corpus.
///
/// Rows come back in corpus order whatever the worker count. Violations are
/// streamed to `cfg.violations` by a single writer as they are found.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let started = Instant::now();
    let graphs = load_corpus(&cfg.corpus)?;
    let ids = cfg.theorem_list();
    let tasks: Vec<(&str, &Graph, usize)> =
        graphs.iter().flat_map(|(name, g)| cfg.ms.iter().map(move |&m| (name.as_str(), g, m))).collect();

    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build()?;
    let (tx, rx) = mpsc::channel::<Counterexample>();
    let violations = cfg.violations.clone();
    let rows = std::thread::scope(|s| -> Result<Vec<SweepRow>> {
        let writer = s.spawn(move || -> Result<()> {
            let mut out = None;
            for cx in rx {
                if out.is_none() {
                    let Some(path) = &violations else { continue };
                    let f = File::options().create(true).append(true).open(path)?;
                    out = Some(f);
                }
                let f = out.as_mut().unwrap();
                writeln!(f, "{}", serde_json::to_string(&cx)?)?;
                f.flush()?;
            }
            Ok(())
        });
        let rows = pool.install(|| {
            tasks
                .par_iter()
                .map_with(tx, |tx, &(name, g, m)| {
                    let row = run_one(cfg, &ids, name, g, m);
                    for cx in row.checks.iter().filter_map(|c| c.counterexample.clone()) {
                        let _ = tx.send(cx);
                    }
                    row
                })
                .collect::<Vec<_>>()
        });
        writer.join().expect("violation writer panicked")?;
        Ok(rows)
    })?;

    let mut summary = Summary { graphs: graphs.len(), rows: rows.len(), ..Summary::default() };
    let mut attainment: BTreeMap<TheoremId, Attainment> = BTreeMap::new();
    for row in &rows {
        if row.error.is_some() {
            summary.errors += 1;
        }
        for c in &row.checks {
            summary.total.add(c.verdict);
            summary.by_theorem.entry(c.theorem).or_default().add(c.verdict);
            if c.verdict == Verdict::Holds {
                let a = attainment.entry(c.theorem).or_default();
                a.held += 1;
                if c.bound.is_some() && c.bound == c.reg.map(|r| r as i64) {
                    a.attained += 1;
                    a.graphs.push(format!("{}@{}", row.graph6, row.m));
                }
            }
        }
    }
    let slowest = rows.iter().max_by_key(|r| r.elapsed_ms);
    let timing = Timing {
        wall_ms: started.elapsed().as_millis() as u64,
        slowest_ms: slowest.map_or(0, |r| r.elapsed_ms),
        slowest: slowest.map(|r| format!("{}@{}", r.graph6, r.m)),
    };
    Ok(SweepReport { field: cfg.field, ms: cfg.ms.clone(), theorems: ids, rows, summary, attainment, timing })
}
