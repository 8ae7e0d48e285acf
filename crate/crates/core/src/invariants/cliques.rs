use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueReport {
    /// Sorted by their ascending label lists.
    pub maximal_cliques: Vec<VertexSet>,
    pub clique_count: usize,
    pub clique_number: usize,
}

fn bron_kerbosch(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| p.intersection(g.neighbors(u)).len())
        .unwrap();
    for v in p.difference(g.neighbors(pivot)).iter() {
        let nv = g.neighbors(v);
        bron_kerbosch(g, r.with(v), p.intersection(nv), x.intersection(nv), out);
        p = p.without(v);
        x = x.with(v);
    }
}

pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    bron_kerbosch(g, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut out);
    out.sort_by_key(|c| c.labels());
    out
}

pub fn clique_report(g: &Graph) -> CliqueReport {
    let maximal_cliques = maximal_cliques(g);
    CliqueReport {
        clique_count: maximal_cliques.len(),
        clique_number: maximal_cliques.iter().map(|c| c.len()).max().unwrap_or(0),
        maximal_cliques,
    }
}

pub fn clique_number(g: &Graph) -> usize {
    clique_report(g).clique_number
}

/// Number of maximal cliques containing each vertex.
pub fn clique_degrees(g: &Graph) -> Vec<usize> {
    let mut cdeg = vec![0; g.n()];
    for c in maximal_cliques(g) {
        for v in c.iter() {
            cdeg[v] += 1;
        }
    }
    cdeg
}

/// Vertices lying in at least two maximal cliques.
pub fn internal_vertices(g: &Graph) -> VertexSet {
    VertexSet::from_iter(
        clique_degrees(g)
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d >= 2)
            .map(|(v, _)| v),
    )
}

/// Fixed-size bitset wide enough for every edge of a 32-vertex graph.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Bits([u64; 8]);

impl Bits {
    const EMPTY: Bits = Bits([0; 8]);

    fn with(mut self, i: usize) -> Self {
        self.0[i / 64] |= 1 << (i % 64);
        self
    }

    fn and_not(mut self, o: &Bits) -> Self {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a &= !b;
        }
        self
    }

    fn and_count(&self, o: &Bits) -> usize {
        self.0.iter().zip(o.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let i = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(64 * k + i)
                }
            })
        })
    }
}

/// Exact maximum independent set size by branch and bound.
fn mis(adj: &[Bits], cands: Bits, size: usize, best: &mut usize) {
    if size + cands.count() <= *best {
        return;
    }
    let mut cands = cands;
    let mut size = size;
    // vertices of degree at most one inside the candidates can always be taken
    loop {
        let low = cands.iter().find(|&v| adj[v].and_count(&cands) <= 1);
        match low {
            Some(v) => {
                size += 1;
                cands = cands.and_not(&adj[v].with(v));
            }
            None => break,
        }
    }
    if cands.count() == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cands.count() <= *best {
        return;
    }
    let v = cands.iter().max_by_key(|&v| adj[v].and_count(&cands)).unwrap();
    mis(adj, cands.and_not(&adj[v].with(v)), size + 1, best);
    mis(adj, cands.and_not(&Bits::EMPTY.with(v)), size, best);
}

/// Largest edge set with no two edges inside a common clique.
///
/// Two edges lie in a common clique exactly when their endpoints span a
/// clique, so this is a maximum independent set of that conflict graph.
pub fn eta(g: &Graph) -> usize {
    let edges = g.edges();
    let mut adj = vec![Bits::EMPTY; edges.len()];
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if g.is_clique(VertexSet::from_iter([a, b, c, d])) {
                adj[i] = adj[i].with(j);
                adj[j] = adj[j].with(i);
            }
        }
    }
    let all = (0..edges.len()).fold(Bits::EMPTY, Bits::with);
    let mut best = 0;
    mis(&adj, all, 0, &mut best);
    best
}

/// `γ_m(G) = Σ_i min{m − ω(G_i) − 1, −1}` over connected components.
pub fn gamma(g: &Graph, m: usize) -> Result<i64> {
    if m < 2 {
        return Err(Error::invalid("γ_m needs m >= 2"));
    }
    Ok(g.connected_components()
        .into_iter()
        .map(|c| {
            let w = clique_number(&g.induced_unchecked(c)) as i64;
            (m as i64 - w - 1).min(-1)
        })
        .sum())
}

/// Dimension of the clique complex of each component, `0` for isolated vertices.
pub fn clique_complex_dims(g: &Graph) -> Vec<usize> {
    g.connected_components()
        .into_iter()
        .map(|c| {
            let h = g.induced_unchecked(c);
            if h.e() == 0 {
                0
            } else {
                (clique_number(&h) - 1).max(1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixture, Family};

    fn brute_cliques(g: &Graph) -> Vec<VertexSet> {
        let n = g.n();
        let cl: Vec<VertexSet> = (1u32..1 << n).map(VertexSet).filter(|&s| g.is_clique(s)).collect();
        let mut out: Vec<VertexSet> = cl
            .iter()
            .copied()
            .filter(|&s| !cl.iter().any(|&t| t != s && s.is_subset(t)))
            .collect();
        out.sort_by_key(|c| c.labels());
        out
    }

    #[test]
    fn eleven_vertex_fixture_cliques() {
        let g = fixture("paper_fig1").unwrap();
        let r = clique_report(&g);
        assert_eq!((r.clique_count, r.clique_number), (7, 4));
        assert_eq!(r.maximal_cliques, brute_cliques(&g));
        assert_eq!(internal_vertices(&g).labels(), vec![1, 4, 6, 9, 10]);
        assert_eq!(gamma(&g, 2).unwrap(), -3);
        assert_eq!(gamma(&g, 3).unwrap(), -2);
        assert_eq!(gamma(&g, 4).unwrap(), -1);
        assert_eq!(gamma(&g, 9).unwrap(), -1);
        assert_eq!(clique_complex_dims(&g), vec![3]);
    }

    #[test]
    fn clique_closure_at_six() {
        let g = fixture("paper_fig1").unwrap();
        let g6 = g.clique_close_at(5).unwrap();
        // brute-force maximum clique on the modified graph
        let best = (1u32..1 << 11).map(VertexSet).filter(|&s| g6.is_clique(s)).map(|s| s.len()).max();
        assert_eq!(best, Some(6));
        assert_eq!(clique_number(&g6), 6);
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&fixture("paper_fig3_H").unwrap()), 3);
        assert_eq!(clique_report(&fixture("paper_fig3_H").unwrap()).clique_count, 4);
        for n in 2..7 {
            assert_eq!(eta(&Family::Complete(n).build().unwrap()), 1);
            assert_eq!(eta(&Family::Path(n).build().unwrap()), n - 1);
        }
        assert_eq!(eta(&Graph::empty(3).unwrap()), 0);
    }

    #[test]
    fn gamma_small() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(gamma(&k1, 2).unwrap(), -1);
        assert_eq!(gamma(&k1, 7).unwrap(), -1);
        let k3 = Family::Complete(3).build().unwrap();
        assert_eq!(gamma(&k3.disjoint_union(&k3).unwrap(), 2).unwrap(), -4);
        assert!(gamma(&k3, 1).is_err());
    }

    #[test]
    fn complex_dims() {
        assert_eq!(clique_complex_dims(&Family::Complete(4).build().unwrap()), vec![3]);
        let g = Family::Path(3).build().unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(clique_complex_dims(&g), vec![1, 0]);
    }
}
