use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use regwitness_core::algebra::{build_gbei, Field, GbBudget, Style};
use regwitness_core::graph::{
    decode_graph6, encode_graph6, enumerate_connected, fixture, parse_edges, CompositionSpec, Family, FanSpec,
    PAPER_G1_LABELS,
};
use regwitness_core::invariants::{internal_vertices, InvariantReport};
use regwitness_core::oracle::{betti_table, regularity_in_char, OracleConfig};
use regwitness_core::theorems::{
    check_many, compatible_map_verify, decomposition_check, recursion_check, CheckOptions, PsiMap, RecursionHost,
    TheoremId, Verdict,
};
use regwitness_core::{with_field, Graph};

use crate::sweep::{run_sweep, Budgets, Corpus, SweepConfig};

/// Environment variable holding the default field characteristic.
pub const FIELD_ENV: &str = "REGWITNESS_FIELD";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "regwitness", version, about = "Invariants, Gröbner bases and regularity bounds for binomial edge ideals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Combinatorial invariants as one JSON object.
    Invariants {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Reduced Gröbner basis of J_{K_m,G}, one polynomial per line.
    Groebner {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_enum, default_value_t = StyleArg::Plain)]
        style: StyleArg,
        /// Print generators, basis and initial ideal as JSON instead.
        #[arg(long)]
        json: bool,
    },
    /// Regularity of S/J_{K_m,G} with a homology witness.
    Regularity {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        inequality_only: bool,
        /// Also print the graded Betti numbers of the initial ideal.
        #[arg(long)]
        betti: bool,
    },
    /// Evaluate theorems on one graph.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        opts: TheoremArgs,
        /// Also verify a compatible map (NC, ETA, GAMMA).
        #[arg(long = "compat", value_name = "MAP")]
        compat: Vec<String>,
        /// Also verify the splitting at every internal vertex by elimination.
        #[arg(long)]
        decomposition: bool,
        /// Also check the chain recursion against a host: `fm:N` or `fan:SPEC@V,F`.
        #[arg(long, value_name = "HOST")]
        recursion: Option<String>,
        /// Counterexamples are appended here.
        #[arg(long, default_value = "violations.jsonl")]
        violations: PathBuf,
    },
    /// Run theorems over a corpus of graphs.
    Sweep {
        /// Enumerate connected graphs up to this order.
        #[arg(long, conflicts_with_all = ["graph6", "fixture"])]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// File with one graph6 string per line.
        #[arg(long, value_name = "FILE")]
        graph6: Option<PathBuf>,
        /// Named fixtures; `all` for every one.
        #[arg(long, value_name = "NAME", value_delimiter = ',')]
        fixture: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        m: Vec<usize>,
        #[arg(long, env = FIELD_ENV, default_value_t = 32003)]
        field: u64,
        #[command(flatten)]
        opts: TheoremArgs,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Seconds allowed per (graph, m); 0 means no limit.
        #[arg(long, default_value_t = 60)]
        timeout: u64,
        #[arg(long)]
        max_pairs: Option<usize>,
        #[arg(long)]
        max_subsets: Option<usize>,
        #[arg(long)]
        inequality_only: bool,
        /// Full report goes here; stdout then gets the summary only.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Defaults to violations.jsonl beside --out, or in the working directory.
        #[arg(long, value_name = "FILE")]
        violations: Option<PathBuf>,
    },
    /// Connected graphs on N vertices up to isomorphism, as graph6.
    Enumerate { n: usize },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphArgs {
    /// Edge list, one `u v` pair per line, 1-based.
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    /// Graph6 string, or a file whose first line is one.
    #[arg(long, value_name = "G6|FILE")]
    graph6: Option<String>,
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
    /// Family spec such as `cycle:5`, `kbip:2,3`, `fm:3`, `cm:3,3`, `whisker:1,0,1,0`.
    #[arg(long, value_name = "SPEC")]
    family: Option<String>,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, env = FIELD_ENV, default_value_t = 32003)]
    field: u64,
}

#[derive(Debug, Args)]
struct TheoremArgs {
    /// Restrict to these theorem ids (repeatable).
    #[arg(long = "theorem", value_name = "ID")]
    theorems: Vec<String>,
    /// Treat block graphs, stars included, as generalized block graphs.
    #[arg(long)]
    force: bool,
    /// The graph is F_{m_1} ∘ ... ∘ F_{m_t} for this list.
    #[arg(long, value_name = "M1,M2,...", value_delimiter = ',')]
    composition: Vec<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StyleArg {
    Plain,
    Tex,
}

struct Loaded {
    graph: Graph,
    /// Printed vertex labels, when the source fixes them.
    labels: Vec<usize>,
    composition: Option<CompositionSpec>,
}

fn load_graph(a: &GraphArgs) -> Result<Loaded> {
    let mut labels = Vec::new();
    let mut composition = None;
    let graph = if let Some(path) = &a.edges {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        parse_edges(&text, None)?
    } else if let Some(s) = &a.graph6 {
        let text = if Path::new(s).is_file() { fs::read_to_string(s)? } else { s.clone() };
        let line = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        decode_graph6(line.ok_or_else(|| anyhow!("no graph6 string in {s}"))?)?
    } else if let Some(name) = &a.fixture {
        if name == "paper_G1" {
            labels = PAPER_G1_LABELS.to_vec();
        }
        fixture(name)?
    } else {
        let family = Family::parse(a.family.as_deref().unwrap())?;
        if let Family::Composition(spec) = &family {
            composition = Some(spec.clone());
        }
        family.build()?
    };
    Ok(Loaded { graph, labels, composition })
}

fn parse_theorems(ids: &[String]) -> Result<Vec<TheoremId>> {
    let mut out = Vec::new();
    for s in ids {
        out.push(s.to_ascii_uppercase().parse()?);
    }
    Ok(out)
}

fn composition(list: &[usize], loaded: Option<&Loaded>) -> Result<Option<CompositionSpec>> {
    if list.is_empty() {
        return Ok(loaded.and_then(|l| l.composition.clone()));
    }
    Ok(Some(CompositionSpec::new(list.to_vec())?))
}

fn parse_host(s: &str) -> Result<RecursionHost> {
    if let Some(n) = s.strip_prefix("fm:") {
        return Ok(RecursionHost::Fm(n.trim().parse().context("host fm:N")?));
    }
    if let Some(rest) = s.strip_prefix("fan:") {
        let (spec, at) = rest.rsplit_once('@').ok_or_else(|| anyhow!("fan host needs @V,F"))?;
        let (v, f) = at.split_once(',').ok_or_else(|| anyhow!("fan host needs @V,F"))?;
        return Ok(RecursionHost::Fan { spec: FanSpec::parse(spec)?, v: v.trim().parse()?, f: f.trim().parse()? });
    }
    bail!("unknown recursion host {s:?}, expected fm:N or fan:SPEC@V,F")
}

#[derive(Serialize)]
struct GroebnerOut {
    m: usize,
    #[serde(rename = "char")]
    characteristic: u64,
    generators: Vec<String>,
    basis: Vec<String>,
    initial_ideal: Vec<String>,
    squarefree: bool,
}

fn groebner_out<F: Field>(g: &Graph, m: usize, style: Style, labels: &[usize]) -> Result<GroebnerOut> {
    let ideal = build_gbei::<F>(g, m)?;
    let gb = ideal.groebner(&GbBudget::default())?;
    let init = gb.initial_ideal();
    Ok(GroebnerOut {
        m,
        characteristic: F::characteristic(),
        generators: ideal.render(style, labels),
        basis: gb.render(style, labels),
        initial_ideal: init.gens.iter().map(|t| ideal.grid.render_monomial(t, style, labels)).collect(),
        squarefree: init.is_squarefree(),
    })
}

fn print_json(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn append_violations(path: &Path, lines: &[String]) -> Result<()> {
    if lines.is_empty() {
        return Ok(());
    }
    let mut f = fs::File::options().create(true).append(true).open(path)?;
    for l in lines {
        writeln!(f, "{l}")?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.cmd {
        Cmd::Invariants { graph } => {
            let l = load_graph(&graph)?;
            let mut v = serde_json::to_value(InvariantReport::compute(&l.graph))?;
            v["graph6"] = json!(encode_graph6(&l.graph));
            print_json(out, &v)?;
        }
        Cmd::Groebner { graph, alg, style, json } => {
            let l = load_graph(&graph)?;
            let style = match style {
                StyleArg::Plain => Style::Plain,
                StyleArg::Tex => Style::Tex,
            };
            let r = with_field!(alg.field, K => groebner_out::<K>(&l.graph, alg.m, style, &l.labels))??;
            if json {
                print_json(out, &r)?;
            } else {
                for p in &r.basis {
                    writeln!(out, "{p}")?;
                }
            }
        }
        Cmd::Regularity { graph, alg, inequality_only, betti } => {
            let l = load_graph(&graph)?;
            let cfg = OracleConfig { inequality_only, ..OracleConfig::default() };
            let r = regularity_in_char(&l.graph, alg.m, alg.field, &cfg)?;
            let mut v = serde_json::to_value(&r)?;
            if betti {
                let t = with_field!(alg.field, K => betti_table::<K>(&l.graph, alg.m, &cfg))??;
                v["betti"] = serde_json::to_value(&t)?;
            }
            print_json(out, &v)?;
        }
        Cmd::Check { graph, alg, opts, compat, decomposition, recursion, violations } => {
            let l = load_graph(&graph)?;
            let mut ids = parse_theorems(&opts.theorems)?;
            let extras = !compat.is_empty() || decomposition || recursion.is_some();
            if ids.is_empty() && !extras {
                ids = TheoremId::ALL.to_vec();
            }
            let copts = CheckOptions {
                oracle: OracleConfig::default(),
                field: alg.field,
                force: opts.force,
                composition: composition(&opts.composition, Some(&l))?,
            };
            let checks = check_many(&l.graph, alg.m, &ids, &copts)?;
            let mut bad: Vec<String> = checks
                .iter()
                .filter_map(|c| c.counterexample.as_ref())
                .map(serde_json::to_string)
                .collect::<serde_json::Result<_>>()?;
            let g6 = encode_graph6(&l.graph);
            let mut doc = json!({ "graph6": g6, "m": alg.m, "checks": checks });
            if !compat.is_empty() {
                let mut reports = Vec::new();
                for name in &compat {
                    let r = compatible_map_verify(name.parse::<PsiMap>()?, alg.m, &l.graph)?;
                    if !r.holds {
                        bad.push(json!({ "compat": r.map, "graph6": g6, "m": alg.m }).to_string());
                    }
                    reports.push(r);
                }
                doc["compat"] = serde_json::to_value(reports)?;
            }
            if decomposition {
                let mut per_vertex = Vec::new();
                for v in internal_vertices(&l.graph).iter() {
                    let ok = with_field!(alg.field, K => decomposition_check::<K>(&l.graph, alg.m, v, &GbBudget::default()))??;
                    if !ok {
                        bad.push(json!({ "decomposition": v + 1, "graph6": g6, "m": alg.m }).to_string());
                    }
                    per_vertex.push(json!({ "vertex": v + 1, "holds": ok }));
                }
                doc["decomposition"] = Value::Array(per_vertex);
            }
            if let Some(host) = recursion {
                let Some(spec) = copts.composition.as_ref() else {
                    bail!("--recursion needs --composition or a cm: family");
                };
                let r = recursion_check(spec, &parse_host(&host)?, alg.field, &OracleConfig::default())?;
                if r.verdict == Verdict::Violated {
                    bad.push(json!({ "recursion": host, "composition": spec.ms(), "field": alg.field }).to_string());
                }
                doc["recursion"] = serde_json::to_value(r)?;
            }
            print_json(out, &doc)?;
            append_violations(&violations, &bad)?;
            if !bad.is_empty() {
                return Ok(EXIT_VIOLATIONS);
            }
        }
        Cmd::Sweep {
            max_n,
            min_n,
            graph6,
            fixture,
            m,
            field,
            opts,
            workers,
            timeout,
            max_pairs,
            max_subsets,
            inequality_only,
            out: out_path,
            violations,
        } => {
            let corpus = match (max_n, graph6, fixture.is_empty()) {
                (Some(max_n), None, true) => Corpus::Enumerate { min_n, max_n },
                (None, Some(path), true) => Corpus::Graph6File(path),
                (None, None, false) => {
                    let names = if fixture.iter().any(|f| f == "all") {
                        regwitness_core::graph::FIXTURE_NAMES.iter().map(|s| s.to_string()).collect()
                    } else {
                        fixture
                    };
                    Corpus::Fixtures(names)
                }
                _ => bail!("give exactly one of --max-n, --graph6, --fixture"),
            };
            let mut cfg = SweepConfig::new(corpus, m);
            cfg.theorems = parse_theorems(&opts.theorems)?;
            cfg.field = field;
            cfg.force = opts.force;
            cfg.composition = composition(&opts.composition, None)?;
            cfg.workers = workers;
            cfg.inequality_only = inequality_only;
            let defaults = Budgets::default();
            cfg.budgets = Budgets {
                max_pairs: max_pairs.unwrap_or(defaults.max_pairs),
                max_subsets,
                per_graph: (timeout > 0).then(|| Duration::from_secs(timeout)),
                ..defaults
            };
            let vpath = violations.unwrap_or_else(|| match &out_path {
                Some(p) => p.with_file_name("violations.jsonl"),
                None => PathBuf::from("violations.jsonl"),
            });
            cfg.violations = Some(vpath);
            let report = run_sweep(&cfg)?;
            let violated = report.summary.total.violated;
            match out_path {
                Some(p) => {
                    let f = fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                    serde_json::to_writer_pretty(std::io::BufWriter::new(f), &report)?;
                    print_json(out, &json!({ "summary": report.summary, "timing": report.timing }))?;
                }
                None => print_json(out, &report)?,
            }
            if violated > 0 {
                return Ok(EXIT_VIOLATIONS);
            }
        }
        Cmd::Enumerate { n } => {
            for g in enumerate_connected(n)? {
                writeln!(out, "{}", encode_graph6(&g))?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line, writing results to `out` and diagnostics to stderr.
pub fn cli_to<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(parsed, out) {
        Ok(code) => code,
        // reader went away, e.g. `| head`
        Err(e) if e.chain().any(|c| c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

/// [`cli_to`] on stdout; returns the process exit code.
pub fn cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    cli_to(argv, &mut lock)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = cli_to(std::iter::once("regwitness").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn enumerate_four() {
        let (code, out) = run_str(&["enumerate", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["regularity", "--bogus"]).0, 2);
        assert_eq!(run_str(&["regularity"]).0, 2);
        assert_eq!(run_str(&["regularity", "--family", "cycle:2"]).0, 2);
        assert_eq!(run_str(&["regularity", "--family", "path:3", "--field", "4"]).0, 2);
    }

    #[test]
    fn groebner_lines() {
        let (code, out) = run_str(&["groebner", "--family", "path:2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "x1*y2 - x2*y1");
    }

    #[test]
    fn host_specs() {
        assert_eq!(parse_host("fm:3").unwrap(), RecursionHost::Fm(3));
        assert!(matches!(parse_host("fan:3;1,2;2,3@1,4").unwrap(), RecursionHost::Fan { v: 1, f: 4, .. }));
        assert!(parse_host("cycle:3").is_err());
    }
}
