//! Bounds, equalities and characterizations of `reg(S/J_{K_m,G})` as
//! checkable predicates, evaluated against the invariants and the oracle.

mod compat;
mod decomposition;
mod families;

pub use compat::{compatible_map_verify, psi, CompatibleReport, PsiMap};
pub use decomposition::decomposition_check;
pub use families::{
    cm_formula, recursion_check, whisker_cycle_predict, whisker_structure, RecursionHost,
    RecursionReport, WhiskerStructure,
};

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, compose_cm, encode_graph6, CompositionSpec, Graph};
use crate::invariants::{
    all_spine_params, cactus_params, clique_complex_dims, clique_report, cm_bipartite_params,
    contains_jewel_subgraph, eta, gamma, internal_vertices, is_block_graph, is_cactus,
    is_caterpillar, is_chordal, is_closed, is_indecomposable, is_lobster, is_tree,
    longest_induced_path, pendant_profile,
};
use crate::oracle::{regularity_in_char, OracleConfig, RegularityResult};

macro_rules! theorem_ids {
    ($($v:ident => $s:literal, $kind:ident, $summary:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum TheoremId {
            $(#[serde(rename = $s)] $v,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$v,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TheoremId::$v => $s,)*
                }
            }

            pub fn kind(self) -> Kind {
                match self {
                    $(TheoremId::$v => Kind::$kind,)*
                }
            }

            pub fn summary(self) -> &'static str {
                match self {
                    $(TheoremId::$v => $summary,)*
                }
            }
        }

        impl FromStr for TheoremId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok(TheoremId::$v),)*
                    other => Err(Error::invalid(format!("unknown theorem id {other}"))),
                }
            }
        }
    };
}

theorem_ids! {
    MmUpper => "MM_UPPER", Upper, "m = 2: reg <= n - c";
    KumarUpper => "KUMAR_UPPER", Upper, "reg <= n - c, with equality when m is at least every component order";
    ClosedKm => "CLOSED_KM", Upper, "closed: reg <= min{C(m,2) * cliques, e}";
    ChordalC => "CHORDAL_C", Upper, "chordal, m = 2: reg <= number of maximal cliques";
    ChordalM => "CHORDAL_M", Upper, "chordal: reg <= min{(m-1) * cliques, n - c}";
    Eta2 => "ETA_2", Upper, "m = 2: reg <= eta";
    EtaM => "ETA_M", Upper, "reg <= (m-1) * eta";
    GammaM => "GAMMA_M", Upper, "reg <= n + gamma_m";
    Ert => "ERT", Upper, "m = 2: reg <= n - sum of clique complex dimensions";
    OmegaWindow => "OMEGA_WINDOW", Upper, "connected, 2 <= m <= omega - 1: reg <= n - 2";
    MmChar => "MM_CHAR", Characterization, "connected, m = 2: reg = n - 1 iff path, otherwise reg <= n - 2";
    LipLower => "LIP_LOWER", Lower, "m = 2: longest induced path <= reg";
    ClosedEq => "CLOSED_EQ", Equality, "connected closed, m = 2: reg = longest induced path";
    CycleEq => "CYCLE_EQ", Equality, "cycle C_n, m = 2: reg = n - 2";
    KbipartiteEq => "KBIPARTITE_EQ", Equality, "complete bipartite, m = 2: reg = 2";
    KmknEq => "KMKN_EQ", Equality, "complete K_n: reg = min{m-1, n-1}";
    TreeLower => "TREE_LOWER", Characterization, "tree, m = 2: reg >= iv + 1, equal iff no jewel subgraph";
    CaterpillarEq => "CATERPILLAR_EQ", Characterization, "tree, m = 2: reg = longest induced path iff caterpillar";
    BlockLower => "BLOCK_LOWER", Lower, "indecomposable block graph, m = 2: reg >= iv + 1";
    LobsterUb => "LOBSTER_UB", Upper, "lobster, m = 2: reg <= l + 2t for a spine";
    TreeUb2 => "TREE_UB2", Upper, "tree, m = 2: reg <= e_2 + l + 2 d_3";
    GbgUb => "GBG_UB", Upper, "block graph, m = 2: reg <= cliques + alpha - pv";
    CactusUb => "CACTUS_UB", Upper, "blocks cycles or cliques, m = 2: reg <= c' + sum (k-2) c_k";
    WhiskerCycle => "WHISKER_CYCLE", Characterization, "whiskered C_k, m = 2: k-1 <= reg <= k+1 by the whisker pattern";
    CmBipEq => "CM_BIP_EQ", Equality, "composition F_m1 o ... o F_mt, m = 2: reg = 2 alpha + 2 ma(H) + t";
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Upper,
    Lower,
    Equality,
    Characterization,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    Skipped,
    OracleBudget,
}

/// Everything needed to reproduce a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub theorem: TheoremId,
    pub graph6: String,
    pub m: usize,
    pub field: u64,
    pub bound: Option<i64>,
    pub reg: Option<usize>,
    pub detail: String,
}

/// Bound value for one spine, for the spine-dependent tree bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpineBound {
    /// 1-based vertices of the spine.
    pub spine: Vec<usize>,
    pub bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub theorem: TheoremId,
    pub applicable: bool,
    /// Bound or predicted value, when the statement has one.
    pub bound: Option<i64>,
    pub reg: Option<usize>,
    pub exact: Option<bool>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub spines: Vec<SpineBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Settings shared by every check on one graph.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub oracle: OracleConfig,
    pub field: u64,
    /// Treat every block graph, including stars, as a generalized block graph.
    pub force: bool,
    /// Composition the graph was built from, enabling `CM_BIP_EQ`.
    pub composition: Option<CompositionSpec>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            oracle: OracleConfig::default(),
            field: crate::algebra::DEFAULT_PRIME,
            force: false,
            composition: None,
        }
    }
}

/// Evaluates theorems on one `(G, m)`, running the oracle at most once.
pub struct Checker<'a> {
    g: &'a Graph,
    m: usize,
    opts: &'a CheckOptions,
    oracle: OnceCell<std::result::Result<RegularityResult, String>>,
}

/// What a statement predicts about `reg`.
enum Claim {
    AtMost(i64),
    AtLeast(i64),
    Exactly(i64),
    /// `k − 1 ≤ reg ≤ k + 1` together with an exact prediction.
    Window { lo: i64, hi: i64, value: i64 },
    /// `reg ≥ lo`, equal to `lo` exactly when `tight`.
    LowerTight { lo: i64, tight: bool },
    /// `reg = value` exactly when `tight`.
    EqualIff { value: i64, tight: bool },
}

impl<'a> Checker<'a> {
    pub fn new(g: &'a Graph, m: usize, opts: &'a CheckOptions) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid(format!("need m >= 2, got {m}")));
        }
        Ok(Checker { g, m, opts, oracle: OnceCell::new() })
    }

    /// The shared oracle run; budget exhaustion comes back as `Err(detail)`.
    pub fn oracle(&self) -> Result<std::result::Result<&RegularityResult, &str>> {
        if self.oracle.get().is_none() {
            let r = match regularity_in_char(self.g, self.m, self.opts.field, &self.opts.oracle) {
                Ok(r) => Ok(r),
                Err(e) if e.is_budget() => Err(e.to_string()),
                Err(e) => return Err(e),
            };
            let _ = self.oracle.set(r);
        }
        Ok(self.oracle.get().unwrap().as_ref().map_err(|s| s.as_str()))
    }

    fn not_applicable(&self, id: TheoremId, why: &str) -> BoundCheck {
        BoundCheck {
            theorem: id,
            applicable: false,
            bound: None,
            reg: None,
            exact: None,
            verdict: Verdict::Skipped,
            note: why.to_string(),
            spines: Vec::new(),
            counterexample: None,
        }
    }

    pub fn check(&self, id: TheoremId) -> Result<BoundCheck> {
        let g = self.g;
        let m = self.m;
        let n = g.n() as i64;
        let c = g.component_count() as i64;
        let m2 = m == 2;
        use TheoremId::*;
        let claim = match id {
            MmUpper | ChordalC | Eta2 | Ert | LipLower | MmChar | ClosedEq | CycleEq | KbipartiteEq
            | TreeLower | CaterpillarEq | BlockLower | LobsterUb | TreeUb2 | GbgUb | CactusUb | WhiskerCycle
            | CmBipEq
                if !m2 =>
            {
                return Ok(self.not_applicable(id, "stated for m = 2"));
            }
            MmUpper => Claim::AtMost(n - c),
            KumarUpper => {
                let largest = g.connected_components().iter().map(|s| s.len()).max().unwrap_or(0);
                if m >= largest {
                    Claim::Exactly(n - c)
                } else {
                    Claim::AtMost(n - c)
                }
            }
            ClosedKm => {
                if !is_closed(g) {
                    return Ok(self.not_applicable(id, "not closed"));
                }
                let cc = clique_report(g).clique_count as i64;
                let pairs = (m * (m - 1) / 2) as i64;
                Claim::AtMost((pairs * cc).min(g.e() as i64))
            }
            ChordalC | ChordalM => {
                if !is_chordal(g) {
                    return Ok(self.not_applicable(id, "not chordal"));
                }
                let cc = clique_report(g).clique_count as i64;
                if id == ChordalC {
                    Claim::AtMost(cc)
                } else {
                    Claim::AtMost(((m as i64 - 1) * cc).min(n - c))
                }
            }
            Eta2 => Claim::AtMost(eta(g) as i64),
            EtaM => Claim::AtMost((m as i64 - 1) * eta(g) as i64),
            GammaM => Claim::AtMost(n + gamma(g, m)?),
            Ert => Claim::AtMost(n - clique_complex_dims(g).iter().sum::<usize>() as i64),
            OmegaWindow => {
                let omega = clique_report(g).clique_number;
                if !g.is_connected() || m + 1 > omega {
                    return Ok(self.not_applicable(id, "needs a connected graph with m <= omega - 1"));
                }
                Claim::AtMost(n - 2)
            }
            MmChar => {
                if !g.is_connected() {
                    return Ok(self.not_applicable(id, "not connected"));
                }
                if is_path(g) {
                    Claim::Exactly(n - 1)
                } else {
                    Claim::AtMost(n - 2)
                }
            }
            LipLower => Claim::AtLeast(longest_induced_path(g) as i64),
            ClosedEq => {
                if !g.is_connected() || !is_closed(g) {
                    return Ok(self.not_applicable(id, "needs a connected closed graph"));
                }
                Claim::Exactly(longest_induced_path(g) as i64)
            }
            CycleEq => {
                if !is_cycle(g) {
                    return Ok(self.not_applicable(id, "not a cycle"));
                }
                Claim::Exactly(n - 2)
            }
            KbipartiteEq => match complete_bipartite_parts(g) {
                Some((a, b)) if a + b >= 3 => Claim::Exactly(2),
                _ => return Ok(self.not_applicable(id, "not a complete bipartite graph on 3 or more vertices")),
            },
            KmknEq => {
                if !(g.is_connected() && g.is_complete()) {
                    return Ok(self.not_applicable(id, "not a complete graph"));
                }
                Claim::Exactly((m as i64 - 1).min(n - 1))
            }
            TreeLower => {
                if !is_tree(g) || g.e() == 0 {
                    return Ok(self.not_applicable(id, "needs a tree with an edge"));
                }
                Claim::LowerTight {
                    lo: internal_vertices(g).len() as i64 + 1,
                    tight: !contains_jewel_subgraph(g)?,
                }
            }
            CaterpillarEq => {
                if !is_tree(g) {
                    return Ok(self.not_applicable(id, "not a tree"));
                }
                Claim::EqualIff { value: longest_induced_path(g) as i64, tight: is_caterpillar(g) }
            }
            BlockLower => {
                if !is_block_graph(g) || !is_indecomposable(g) || g.e() == 0 {
                    return Ok(self.not_applicable(id, "needs an indecomposable block graph with an edge"));
                }
                Claim::AtLeast(internal_vertices(g).len() as i64 + 1)
            }
            LobsterUb => {
                if !is_lobster(g) {
                    return Ok(self.not_applicable(id, "not a lobster"));
                }
                let spines: Vec<SpineBound> = all_spine_params(g)?
                    .into_iter()
                    .map(|s| SpineBound { spine: labels(&s.spine), bound: (s.ell + 2 * s.t) as i64 })
                    .collect();
                // some spine must work: gate on the weakest reading
                let best = spines.iter().map(|s| s.bound).max().unwrap();
                return self.finish(id, Claim::AtMost(best), spines, "max over spines");
            }
            TreeUb2 => {
                if !is_tree(g) {
                    return Ok(self.not_applicable(id, "not a tree"));
                }
                let spines: Vec<SpineBound> = all_spine_params(g)?
                    .into_iter()
                    .map(|s| SpineBound { spine: labels(&s.spine), bound: (s.e2 + s.ell + 2 * s.d3) as i64 })
                    .collect();
                // the bound is claimed for an arbitrary spine: every one must hold
                let worst = spines.iter().map(|s| s.bound).min().unwrap();
                return self.finish(id, Claim::AtMost(worst), spines, "min over spines");
            }
            GbgUb => {
                if !is_block_graph(g) {
                    return Ok(self.not_applicable(id, "not a block graph"));
                }
                if is_star(g) && !self.opts.force {
                    return Ok(self.not_applicable(id, "stars K_1,k are excluded unless forced"));
                }
                let pp = pendant_profile(g);
                let cc = clique_report(g).clique_count as i64;
                Claim::AtMost(cc + pp.alpha as i64 - pp.pv as i64)
            }
            CactusUb => {
                if !is_cactus(g) {
                    return Ok(self.not_applicable(id, "a block is neither a cycle nor a clique"));
                }
                Claim::AtMost(cactus_params(g)?.bound() as i64)
            }
            WhiskerCycle => match whisker_structure(g) {
                Some(w) => {
                    let k = w.cycle.len() as i64;
                    let value = whisker_cycle_predict(w.cycle.len(), &w.positions())? as i64;
                    Claim::Window { lo: k - 1, hi: k + 1, value }
                }
                None => return Ok(self.not_applicable(id, "not a whiskered cycle")),
            },
            CmBipEq => {
                let Some(spec) = &self.opts.composition else {
                    return Ok(self.not_applicable(id, "no composition annotation"));
                };
                if spec.t() < 2 {
                    return Ok(self.not_applicable(id, "composition needs t >= 2"));
                }
                let built = compose_cm(spec)?;
                if canonical_form(&built).1 != canonical_form(g).1 {
                    return Err(Error::precondition("graph does not match its composition annotation"));
                }
                Claim::Exactly(cm_bipartite_params(spec)?.regularity() as i64)
            }
        };
        self.finish(id, claim, Vec::new(), "")
    }

    fn finish(&self, id: TheoremId, claim: Claim, spines: Vec<SpineBound>, note: &str) -> Result<BoundCheck> {
        let bound = Some(match claim {
            Claim::AtMost(b) | Claim::AtLeast(b) | Claim::Exactly(b) => b,
            Claim::Window { value, .. } | Claim::EqualIff { value, .. } => value,
            Claim::LowerTight { lo, .. } => lo,
        });
        let mut out = BoundCheck {
            theorem: id,
            applicable: true,
            bound,
            reg: None,
            exact: None,
            verdict: Verdict::Skipped,
            note: note.to_string(),
            spines,
            counterexample: None,
        };
        let r = match self.oracle()? {
            Ok(r) => r,
            Err(detail) => {
                out.verdict = Verdict::OracleBudget;
                out.note = detail.to_string();
                return Ok(out);
            }
        };
        out.reg = Some(r.reg);
        out.exact = Some(r.exact);
        let reg = r.reg as i64;
        // an inexact run only gives reg(S/J) <= reg, so only upper bounds can
        // be confirmed, and nothing can be refuted
        let (ok, upper_only) = match claim {
            Claim::AtMost(b) => (reg <= b, true),
            Claim::AtLeast(b) => (reg >= b, false),
            Claim::Exactly(b) => (reg == b, false),
            Claim::Window { lo, hi, value } => (lo <= reg && reg <= hi && reg == value, false),
            Claim::LowerTight { lo, tight } => (if tight { reg == lo } else { reg > lo }, false),
            Claim::EqualIff { value, tight } => ((reg == value) == tight, false),
        };
        out.verdict = match (r.exact, ok) {
            (true, true) => Verdict::Holds,
            (true, false) => Verdict::Violated,
            (false, true) if upper_only => Verdict::Holds,
            (false, _) => {
                out.note = "oracle gave only an upper bound".into();
                Verdict::Skipped
            }
        };
        if out.verdict == Verdict::Violated {
            out.counterexample = Some(Counterexample {
                theorem: id,
                graph6: encode_graph6(self.g),
                m: self.m,
                field: r.characteristic,
                bound,
                reg: Some(r.reg),
                detail: id.summary().to_string(),
            });
        }
        Ok(out)
    }
}

fn labels(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

pub(crate) fn is_path(g: &Graph) -> bool {
    is_tree(g) && g.vertices().iter().all(|v| g.degree(v) <= 2)
}

pub(crate) fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && g.vertices().iter().all(|v| g.degree(v) == 2)
}

fn is_star(g: &Graph) -> bool {
    is_tree(g) && g.n() >= 2 && g.vertices().iter().any(|v| g.degree(v) == g.n() - 1)
}

/// Part sizes if `G` is a connected complete bipartite graph.
pub(crate) fn complete_bipartite_parts(g: &Graph) -> Option<(usize, usize)> {
    if g.n() < 2 || !g.is_connected() {
        return None;
    }
    let side = g.neighbors(0);
    let other = g.vertices().difference(side);
    let ok = side.iter().all(|v| g.neighbors(v) == other) && other.iter().all(|v| g.neighbors(v) == side);
    ok.then_some((other.len(), side.len()))
}

/// Checks `id` on `(G, m)`.
pub fn check(g: &Graph, m: usize, id: TheoremId, opts: &CheckOptions) -> Result<BoundCheck> {
    Checker::new(g, m, opts)?.check(id)
}

/// Every theorem on `(G, m)`, sharing one oracle run.
pub fn check_all(g: &Graph, m: usize, opts: &CheckOptions) -> Result<Vec<BoundCheck>> {
    check_many(g, m, TheoremId::ALL, opts)
}

pub fn check_many(g: &Graph, m: usize, ids: &[TheoremId], opts: &CheckOptions) -> Result<Vec<BoundCheck>> {
    let checker = Checker::new(g, m, opts)?;
    ids.iter().map(|&id| checker.check(id)).collect()
}
