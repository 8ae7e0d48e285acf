use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families addressable from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Parts of sizes `a` and `b`; the first `a` vertices form one side.
    CompleteBipartite(usize, usize),
    Fm(usize),
    Fan(FanSpec),
    Jewel,
    /// Cycle of length `k` with `counts[i]` whiskers at cycle vertex `i`.
    WhiskeredCycle(Vec<usize>),
    Composition(CompositionSpec),
    Fixture(String),
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Family::Path(n) => {
                if *n == 0 {
                    return Err(Error::invalid("path needs n >= 1"));
                }
                let e: Vec<_> = (1..*n).map(|i| (i, i + 1)).collect();
                Graph::from_edges(*n, &e)
            }
            Family::Cycle(n) => {
                if *n < 3 {
                    return Err(Error::invalid("cycle needs n >= 3"));
                }
                let mut e: Vec<_> = (1..*n).map(|i| (i, i + 1)).collect();
                e.push((1, *n));
                Graph::from_edges(*n, &e)
            }
            Family::Complete(n) => {
                if *n == 0 {
                    return Err(Error::invalid("complete graph needs n >= 1"));
                }
                let mut g = Graph::empty(*n)?;
                for u in 0..*n {
                    for v in u + 1..*n {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            Family::CompleteBipartite(a, b) => {
                if *a == 0 || *b == 0 {
                    return Err(Error::invalid("complete bipartite needs both parts nonempty"));
                }
                let mut g = Graph::empty(a + b)?;
                for u in 0..*a {
                    for v in *a..a + b {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            Family::Fm(m) => fm(*m),
            Family::Fan(spec) => fan(spec),
            Family::Jewel => Ok(jewel()),
            Family::WhiskeredCycle(counts) => whiskered_cycle(counts),
            Family::Composition(spec) => compose_cm(spec),
            Family::Fixture(name) => fixture(name),
        }
    }

    /// Parses `name:args`, e.g. `cycle:5`, `kbip:2,3`, `fm:4`, `whisker:1,0,2,0`,
    /// `cm:3,4,3`, `fan:4;1,2;3` (see [`FanSpec::parse`]), `jewel`, or a fixture name.
    pub fn parse(s: &str) -> Result<Family> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<usize>> {
            args.split(',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad number {t:?} in {s:?}")))
                })
                .collect()
        };
        let one = || -> Result<usize> {
            match nums()?.as_slice() {
                [x] => Ok(*x),
                _ => Err(Error::invalid(format!("{name} takes one argument"))),
            }
        };
        Ok(match name {
            "path" => Family::Path(one()?),
            "cycle" => Family::Cycle(one()?),
            "complete" => Family::Complete(one()?),
            "kbip" | "complete_bipartite" => match nums()?.as_slice() {
                [a, b] => Family::CompleteBipartite(*a, *b),
                _ => return Err(Error::invalid("kbip takes two arguments")),
            },
            "fm" => Family::Fm(one()?),
            "fan" => Family::Fan(FanSpec::parse(args)?),
            "jewel" => Family::Jewel,
            "whisker" | "whiskered_cycle" => Family::WhiskeredCycle(nums()?),
            "cm" | "composition" => Family::Composition(CompositionSpec::new(nums()?)?),
            other => {
                if FIXTURE_NAMES.contains(&other) {
                    Family::Fixture(other.to_string())
                } else {
                    return Err(Error::invalid(format!("unknown family {other:?}")));
                }
            }
        })
    }
}

/// `F_m` on `[2m]` with edges `{2i, 2j-1}` for `1 <= i <= j <= m`.
pub fn fm(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::invalid("F_m needs m >= 1"));
    }
    let mut e = Vec::new();
    for i in 1..=m {
        for j in i..=m {
            e.push((2 * i, 2 * j - 1));
        }
    }
    Graph::from_edges(2 * m, &e)
}

/// Ordered list `[m_1, ..., m_t]` describing `F_{m_1} ∘ ... ∘ F_{m_t}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionSpec {
    ms: Vec<usize>,
}

impl CompositionSpec {
    pub fn new(ms: Vec<usize>) -> Result<Self> {
        if ms.is_empty() {
            return Err(Error::invalid("composition needs at least one block"));
        }
        if let Some(m) = ms.iter().find(|&&m| m < 3) {
            return Err(Error::invalid(format!("composition blocks need m >= 3, got {m}")));
        }
        Ok(CompositionSpec { ms })
    }

    pub fn ms(&self) -> &[usize] {
        &self.ms
    }

    pub fn t(&self) -> usize {
        self.ms.len()
    }
}

/// Chains `F_{m_1} ∘ ... ∘ F_{m_k}`. Each step glues the right pendant `2m`
/// of the chain so far to the left pendant `1` of the next block. Blocks
/// with `m < 3` are allowed here (they show up in recursive identities).
pub fn compose_chain(ms: &[usize]) -> Result<(Graph, usize)> {
    let (&first, rest) = ms
        .split_first()
        .ok_or_else(|| Error::invalid("empty composition"))?;
    let mut g = fm(first)?;
    // 0-based index of the current right pendant
    let mut right = 2 * first - 1;
    for &m in rest {
        let next = fm(m)?;
        let (glued, map) = g.circ_glue_mapped(right, &next, 0)?;
        right = map[2 * m - 1].unwrap();
        g = glued;
    }
    Ok((g, right))
}

pub fn compose_cm(spec: &CompositionSpec) -> Result<Graph> {
    Ok(compose_chain(spec.ms())?.0)
}

/// `k`-fan of `K_n`: for each part `W_i = (v_{i,1}, ..., v_{i,r_i})` and each
/// `j`, a clique `K_{a_{i,j}}` meets `K_n` exactly in `{v_{i,1}, ..., v_{i,j}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    pub n: usize,
    /// 1-based vertices of `K_n`, one ordered list per part.
    pub parts: Vec<Vec<usize>>,
    /// `branches[i][j] = a_{i,j+1}`.
    pub branches: Vec<Vec<usize>>,
}

impl FanSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("fan base clique needs n >= 1"));
        }
        if self.parts.len() != self.branches.len() {
            return Err(Error::invalid("one branch list per part"));
        }
        let mut seen = 0u64;
        for (part, br) in self.parts.iter().zip(&self.branches) {
            if part.len() != br.len() || part.is_empty() {
                return Err(Error::invalid("each part needs one branch size per vertex"));
            }
            for &v in part {
                if v == 0 || v > self.n {
                    return Err(Error::invalid(format!("fan vertex {v} outside K_{}", self.n)));
                }
                if seen >> v & 1 == 1 {
                    return Err(Error::invalid("fan parts overlap"));
                }
                seen |= 1 << v;
            }
            for (j, &a) in br.iter().enumerate() {
                if a <= j + 1 {
                    return Err(Error::invalid(format!(
                        "branch clique K_{a} at position {} must have more than {} vertices",
                        j + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `n;v,v,...;a,a,...;v,...;a,...`: base size, then (part, branch sizes) pairs.
    pub fn parse(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split(';').collect();
        let list = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.trim().parse().map_err(|_| Error::invalid(format!("bad fan field {t:?}"))))
                .collect()
        };
        if fields.len() < 3 || fields.len() % 2 == 0 {
            return Err(Error::invalid("fan spec is n;part;branches[;part;branches...]"));
        }
        let n = fields[0]
            .trim()
            .parse()
            .map_err(|_| Error::invalid("bad fan size"))?;
        let mut parts = Vec::new();
        let mut branches = Vec::new();
        for pair in fields[1..].chunks(2) {
            parts.push(list(pair[0])?);
            branches.push(list(pair[1])?);
        }
        let spec = FanSpec { n, parts, branches };
        spec.validate()?;
        Ok(spec)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
            + self
                .branches
                .iter()
                .flat_map(|br| br.iter().enumerate().map(|(j, &a)| a - (j + 1)))
                .sum::<usize>()
    }
}

pub fn fan(spec: &FanSpec) -> Result<Graph> {
    spec.validate()?;
    let mut g = Graph::empty(spec.vertex_count())?;
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            g.add_edge(u, v);
        }
    }
    let mut next = spec.n;
    for (part, br) in spec.parts.iter().zip(&spec.branches) {
        for (j, &a) in br.iter().enumerate() {
            let shared: Vec<usize> = part[..=j].iter().map(|v| v - 1).collect();
            let fresh: Vec<usize> = (next..next + a - (j + 1)).collect();
            next += fresh.len();
            for (x, &u) in fresh.iter().enumerate() {
                for &w in &fresh[x + 1..] {
                    g.add_edge(u, w);
                }
                for &s in &shared {
                    g.add_edge(u, s);
                }
            }
        }
    }
    Ok(g)
}

/// Center 1, branch vertices 2, 3, 4, two leaves on each branch vertex.
pub fn jewel() -> Graph {
    Graph::from_edges(
        10,
        &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8), (4, 9), (4, 10)],
    )
    .unwrap()
}

/// Cycle `1..k` followed by the whisker leaves, cycle vertex by cycle vertex.
pub fn whiskered_cycle(counts: &[usize]) -> Result<Graph> {
    let k = counts.len();
    if k < 3 {
        return Err(Error::invalid("whiskered cycle needs k >= 3"));
    }
    let total: usize = counts.iter().sum();
    let mut e: Vec<_> = (1..k).map(|i| (i, i + 1)).collect();
    e.push((1, k));
    let mut next = k + 1;
    for (i, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            e.push((i + 1, next));
            next += 1;
        }
    }
    Graph::from_edges(k + total, &e)
}

pub const FIXTURE_NAMES: &[&str] = &["paper_fig1", "paper_G1", "paper_fig3_H", "jewel"];

pub fn fixture(name: &str) -> Result<Graph> {
    match name {
        "paper_fig1" => Graph::from_edges(
            11,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (3, 4),
                (4, 5),
                (4, 6),
                (6, 7),
                (6, 8),
                (6, 9),
                (6, 10),
                (9, 10),
                (9, 11),
                (10, 11),
            ],
        ),
        // labels 1,2,3,4,6 are stored as 1..5; see `PAPER_G1_LABELS`
        "paper_G1" => Graph::from_edges(5, &[(1, 2), (1, 4), (2, 3), (3, 4), (4, 5)]),
        // corners 1,2,3; midpoint 4 between 1 and 2, 5 between 1 and 3, 6 between 2 and 3
        "paper_fig3_H" => Graph::from_edges(
            6,
            &[(1, 4), (1, 5), (2, 4), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)],
        ),
        "jewel" => Ok(jewel()),
        _ => Err(Error::invalid(format!("unknown fixture {name:?}"))),
    }
}

/// Original vertex labels of the `paper_G1` fixture.
pub const PAPER_G1_LABELS: [usize; 5] = [1, 2, 3, 4, 6];
