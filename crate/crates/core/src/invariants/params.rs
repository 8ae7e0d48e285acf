use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::classes::{blocks_and_cutvertices, is_tree};
use super::cliques::{clique_degrees, clique_report};
use super::paths::{longest_paths, matching_number};
use crate::error::{Error, Result};
use crate::graph::{jewel, CompositionSpec, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PendantType {
    One,
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPendantData {
    pub cdeg: usize,
    pub pdeg: usize,
    #[serde(rename = "type")]
    pub kind: Option<PendantType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantProfile {
    pub vertices: Vec<VertexPendantData>,
    /// Number of type-1 vertices.
    pub alpha: usize,
    /// Number of pendant vertices.
    pub pv: usize,
}

pub fn pendant_profile(g: &Graph) -> PendantProfile {
    let cdeg = clique_degrees(g);
    let pendants = VertexSet::from_iter((0..g.n()).filter(|&v| g.degree(v) == 1));
    let vertices: Vec<VertexPendantData> = (0..g.n())
        .map(|v| {
            let pdeg = g.neighbors(v).intersection(pendants).len();
            let kind = match pdeg {
                0 => None,
                _ if cdeg[v] == pdeg + 1 => Some(PendantType::One),
                _ if cdeg[v] >= pdeg + 2 => Some(PendantType::Two),
                _ => None,
            };
            VertexPendantData { cdeg: cdeg[v], pdeg, kind }
        })
        .collect();
    PendantProfile {
        alpha: vertices.iter().filter(|d| d.kind == Some(PendantType::One)).count(),
        pv: pendants.len(),
        vertices,
    }
}

fn as_labels<S: Serializer>(p: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    p.iter().map(|v| v + 1).collect::<Vec<_>>().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpineParams {
    /// Vertex sequence of the spine (0-based; serialized 1-based).
    #[serde(serialize_with = "as_labels")]
    pub spine: Vec<usize>,
    /// Length in edges.
    pub ell: usize,
    /// Limbs: off-spine vertices of degree at least 2 adjacent to the spine.
    pub t: usize,
    /// Whiskers: off-spine leaves adjacent to the spine.
    pub r: usize,
    /// Edges off the spine whose endpoints both have degree at most 2.
    pub e2: usize,
    /// Off-spine vertices of degree at least 3.
    pub d3: usize,
}

fn params_for(g: &Graph, spine: Vec<usize>) -> SpineParams {
    let on = VertexSet::from_iter(spine.iter().copied());
    let off = g.vertices().difference(on);
    let mut touching = VertexSet::EMPTY;
    for &v in &spine {
        touching = touching.union(g.neighbors(v));
    }
    let touching = touching.intersection(off);
    let spine_edge = |u: usize, v: usize| {
        spine.windows(2).any(|w| (w[0], w[1]) == (u, v) || (w[0], w[1]) == (v, u))
    };
    SpineParams {
        ell: spine.len() - 1,
        t: touching.iter().filter(|&v| g.degree(v) >= 2).count(),
        r: touching.iter().filter(|&v| g.degree(v) == 1).count(),
        e2: g
            .edges()
            .into_iter()
            .filter(|&(u, v)| !spine_edge(u, v) && g.degree(u) <= 2 && g.degree(v) <= 2)
            .count(),
        d3: off.iter().filter(|&v| g.degree(v) >= 3).count(),
        spine,
    }
}

/// Parameters of the lexicographically least longest path.
pub fn spine_params(g: &Graph) -> Result<SpineParams> {
    Ok(all_spine_params(g)?.swap_remove(0))
}

/// Parameters for every longest path, ordered by vertex sequence.
pub fn all_spine_params(g: &Graph) -> Result<Vec<SpineParams>> {
    if !is_tree(g) {
        return Err(Error::precondition("spine parameters need a tree"));
    }
    Ok(longest_paths(g).into_iter().map(|p| params_for(g, p)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CactusParams {
    /// Maximal cliques other than the edges of cycle blocks of length at least 4.
    pub c_prime: usize,
    /// Cycle blocks by length, lengths at least 4 only.
    pub cycles: BTreeMap<usize, usize>,
}

impl CactusParams {
    /// `c′ + Σ_{k≥4} (k − 2) c_k`.
    pub fn bound(&self) -> usize {
        self.c_prime + self.cycles.iter().map(|(&k, &c)| (k - 2) * c).sum::<usize>()
    }
}

/// Requires every block to be a clique or a cycle.
pub fn cactus_params(g: &Graph) -> Result<CactusParams> {
    let mut cycles = BTreeMap::new();
    let mut cycle_edges = 0;
    for b in blocks_and_cutvertices(g).0 {
        if g.is_clique(b) {
            continue;
        }
        let k = b.len();
        if !b.iter().all(|v| g.neighbors(v).intersection(b).len() == 2) {
            return Err(Error::precondition(format!("block {b} is neither a clique nor a cycle")));
        }
        *cycles.entry(k).or_insert(0) += 1;
        cycle_edges += k;
    }
    Ok(CactusParams {
        c_prime: clique_report(g).clique_count - cycle_edges,
        cycles,
    })
}

/// Whether `pattern` (connected) is isomorphic to a subgraph of `host`.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.n() == 0 {
        return pattern.n() == 0;
    }
    // BFS order so every vertex after the first has an earlier neighbour
    let start = (0..pattern.n()).max_by_key(|&v| pattern.degree(v)).unwrap();
    let mut order = vec![start];
    let mut seen = VertexSet::singleton(start);
    let mut i = 0;
    while i < order.len() {
        for u in pattern.neighbors(order[i]).difference(seen).iter() {
            seen = seen.with(u);
            order.push(u);
        }
        i += 1;
    }
    if order.len() != pattern.n() {
        return false;
    }
    fn place(host: &Graph, pat: &Graph, order: &[usize], k: usize, map: &mut Vec<Option<usize>>, used: VertexSet) -> bool {
        if k == order.len() {
            return true;
        }
        let p = order[k];
        let mapped_nb: Vec<usize> = pat.neighbors(p).iter().filter_map(|q| map[q]).collect();
        let mut cands = host.vertices().difference(used);
        for &h in &mapped_nb {
            cands = cands.intersection(host.neighbors(h));
        }
        for h in cands.iter() {
            if host.degree(h) < pat.degree(p) {
                continue;
            }
            map[p] = Some(h);
            if place(host, pat, order, k + 1, map, used.with(h)) {
                return true;
            }
            map[p] = None;
        }
        false
    }
    place(host, pattern, &order, 0, &mut vec![None; pattern.n()], VertexSet::EMPTY)
}

pub fn contains_jewel_subgraph(t: &Graph) -> Result<bool> {
    if !is_tree(t) {
        return Err(Error::precondition("jewel detection is defined for trees"));
    }
    Ok(contains_subgraph(t, &jewel()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmBipartiteParams {
    pub alpha_g: usize,
    /// `H_G` on the vertices `2..t-1`, stored as `0..t-2`.
    #[serde(skip)]
    pub h_g: Graph,
    pub ma: usize,
    pub t: usize,
}

impl CmBipartiteParams {
    /// `2 α_G + 2 ma(H_G) + t`.
    pub fn regularity(&self) -> usize {
        2 * self.alpha_g + 2 * self.ma + self.t
    }
}

pub fn cm_bipartite_params(spec: &CompositionSpec) -> Result<CmBipartiteParams> {
    let ms = spec.ms();
    let t = ms.len();
    if t < 2 {
        return Err(Error::invalid("composition parameters need t >= 2"));
    }
    // ms is 0-based here; position j (1-based) is ms[j - 1]
    let alpha_g = (2..t).filter(|&j| ms[j - 1] >= 4).count() + 2;
    let mut h_g = Graph::empty(t - 2)?;
    for i in 2..t.saturating_sub(1) {
        if ms[i - 1] == 3 && ms[i] == 3 {
            h_g.add_edge(i - 2, i - 1);
        }
    }
    Ok(CmBipartiteParams {
        alpha_g,
        ma: matching_number(&h_g),
        h_g,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_connected, fixture, Family};
    use crate::invariants::classes::is_caterpillar;

    #[test]
    fn pendant_profiles() {
        let star = Family::CompleteBipartite(1, 3).build().unwrap();
        let p = pendant_profile(&star);
        assert_eq!((p.vertices[0].cdeg, p.vertices[0].pdeg, p.vertices[0].kind), (3, 3, None));
        assert_eq!((p.alpha, p.pv), (0, 3));
        let p3 = pendant_profile(&Family::Path(3).build().unwrap());
        assert_eq!((p3.vertices[1].cdeg, p3.vertices[1].pdeg, p3.pv), (2, 2, 2));
        let broom = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3), (1, 4)]).unwrap();
        let b = pendant_profile(&broom);
        assert_eq!(b.vertices[0].kind, Some(PendantType::One));
        assert_eq!(b.alpha, 1);
    }

    #[test]
    fn pdeg_never_exceeds_cdeg() {
        for n in 1..=6 {
            for g in enumerate_connected(n).unwrap() {
                assert!(pendant_profile(&g).vertices.iter().all(|d| d.pdeg <= d.cdeg));
            }
        }
    }

    #[test]
    fn path_spine() {
        let s = spine_params(&Family::Path(5).build().unwrap()).unwrap();
        assert_eq!((s.ell, s.t, s.r, s.e2, s.d3), (4, 0, 0, 0, 0));
        assert_eq!(s.spine, vec![0, 1, 2, 3, 4]);
        assert!(spine_params(&Family::Cycle(4).build().unwrap()).is_err());
    }

    #[test]
    fn caterpillar_spine_counts_legs() {
        // spine 1-2-3-4-5 with legs at 2 and 4
        let g = Graph::from_edges(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (4, 7)]).unwrap();
        let s = spine_params(&g).unwrap();
        assert_eq!(s.ell, 4);
        assert_eq!(s.spine, vec![0, 1, 2, 3, 4]);
        assert_eq!((s.t, s.r), (0, 2));
        let all = all_spine_params(&g).unwrap();
        // endpoints of longest paths are in {1,6} x {5,7}
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn jewel_spine() {
        let s = spine_params(&jewel()).unwrap();
        assert_eq!(s.ell, 4);
        assert!(s.d3 >= 1);
        assert_eq!((s.t, s.r, s.d3), (1, 2, 1));
    }

    #[test]
    fn cactus_examples() {
        let c = cactus_params(&Family::Cycle(5).build().unwrap()).unwrap();
        assert_eq!((c.c_prime, c.cycles.get(&5)), (0, Some(&1)));
        let c = cactus_params(&Family::Complete(4).build().unwrap()).unwrap();
        assert_eq!((c.c_prime, c.cycles.len()), (1, 0));
        let bowtie = Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let c = cactus_params(&bowtie).unwrap();
        assert_eq!((c.c_prime, c.cycles.len()), (2, 0));
        assert!(cactus_params(&Family::CompleteBipartite(2, 3).build().unwrap()).is_err());
    }

    #[test]
    fn jewel_detection() {
        assert!(contains_jewel_subgraph(&jewel()).unwrap());
        assert!(contains_jewel_subgraph(&fixture("jewel").unwrap()).unwrap());
        let spider = Graph::from_edges(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).unwrap();
        assert!(!contains_jewel_subgraph(&spider).unwrap());
        assert!(contains_jewel_subgraph(&Family::Cycle(5).build().unwrap()).is_err());
        // jewel plus an extra leaf still contains it
        let mut e: Vec<(usize, usize)> = jewel().edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect();
        e.push((5, 11));
        assert!(contains_jewel_subgraph(&Graph::from_edges(11, &e).unwrap()).unwrap());
    }

    #[test]
    fn caterpillars_have_no_jewel() {
        // independent oracle: a tree contains the jewel iff some vertex has three
        // neighbours of degree at least 3
        for legs in 0u32..1 << 8 {
            let mut e: Vec<(usize, usize)> = (1..6).map(|i| (i, i + 1)).collect();
            let mut n = 6;
            for bit in 0..8 {
                if legs >> bit & 1 == 1 {
                    n += 1;
                    e.push((bit % 4 + 2, n));
                }
            }
            let g = Graph::from_edges(n, &e).unwrap();
            assert!(is_caterpillar(&g));
            assert!(!contains_jewel_subgraph(&g).unwrap());
        }
    }

    #[test]
    fn composition_params() {
        let p = cm_bipartite_params(&CompositionSpec::new(vec![3, 4, 3, 3, 3]).unwrap()).unwrap();
        assert_eq!((p.alpha_g, p.ma), (3, 1));
        assert_eq!(p.regularity(), 13);
        let p = cm_bipartite_params(&CompositionSpec::new(vec![3, 3]).unwrap()).unwrap();
        assert_eq!((p.alpha_g, p.ma, p.h_g.n()), (2, 0, 0));
        assert_eq!(p.regularity(), 6);
        let p = cm_bipartite_params(&CompositionSpec::new(vec![3, 3, 3, 3]).unwrap()).unwrap();
        assert_eq!((p.alpha_g, p.ma, p.h_g.e()), (2, 1, 1));
        assert!(cm_bipartite_params(&CompositionSpec::new(vec![3]).unwrap()).is_err());
    }
}
