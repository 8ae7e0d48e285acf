//! Labeled simple graphs on at most 32 vertices.
//!
//! Vertices are addressed by 0-based indices in the API; every text format
//! (edge lists, JSON reports, rendered polynomials) uses 1-based labels.

mod canon;
mod families;
mod io;

pub use canon::{canonical_form, enumerate_connected, CanonicalCode, MAX_ENUMERATE};
pub use families::{
    compose_chain, compose_cm, fan, fixture, fm, jewel, whiskered_cycle, CompositionSpec, Family, FanSpec,
    FIXTURE_NAMES, PAPER_G1_LABELS,
};
pub use io::{decode_graph6, encode_graph6, parse_edges};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 32;

/// A subset of `0..n`, one bit per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    #[inline]
    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(v)
            }
        })
    }

    /// 1-based labels, ascending.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// Simple undirected graph with adjacency stored as one bit row per vertex.
///
/// Immutable once built: every operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based edge pairs. Duplicates are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for l in [u, v] {
                if l == 0 || l > n {
                    return Err(Error::VertexOutOfRange { label: l, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            g.add_edge(u - 1, v - 1);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as 0-based pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] >> u >> 1 << u << 1).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.neighbors(v)))
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertices())
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                label: v + 1,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Graph on `|X|` vertices, relabeled order-preservingly.
    pub fn induced_subgraph(&self, x: VertexSet) -> Result<Graph> {
        if x.is_empty() {
            return Err(Error::precondition("induced subgraph on the empty set"));
        }
        if !x.is_subset(self.vertices()) {
            return Err(Error::precondition("vertex set not contained in the graph"));
        }
        Ok(self.induced_unchecked(x))
    }

    pub(crate) fn induced_unchecked(&self, x: VertexSet) -> Graph {
        let map: Vec<usize> = x.iter().collect();
        let mut g = Graph {
            n: map.len(),
            adj: vec![0; map.len()],
        };
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// `G \ v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Err(Error::precondition("cannot delete the only vertex"));
        }
        Ok(self.induced_unchecked(self.vertices().without(v)))
    }

    /// `G_v`: the neighborhood of `v` completed to a clique.
    pub fn clique_close_at(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        let nb = self.neighbors(v);
        for a in nb.iter() {
            g.adj[a] |= nb.without(a).0;
        }
        Ok(g)
    }

    /// Same vertex set, every edge at `v` removed. Keeps the labels of `G \ v`
    /// aligned with `G`, which the ideal identities need.
    pub fn isolate_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        for u in self.neighbors(v).iter() {
            g.remove_edge(u, v);
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Operation `*`: identify the pendant vertices `f1` and `f2`.
    ///
    /// The glued vertex takes the label of `f1`; `G2`'s other vertices follow
    /// `G1`'s in their original order.
    pub fn star_glue(&self, f1: usize, other: &Graph, f2: usize) -> Result<Graph> {
        self.check_vertex(f1)?;
        other.check_vertex(f2)?;
        if self.degree(f1) != 1 || other.degree(f2) != 1 {
            return Err(Error::precondition("operation * needs pendant vertices"));
        }
        let n = self.n + other.n - 1;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        let map = |w: usize| -> usize {
            if w == f2 {
                f1
            } else if w < f2 {
                self.n + w
            } else {
                self.n + w - 1
            }
        };
        for (u, v) in other.edges() {
            g.add_edge(map(u), map(v));
        }
        Ok(g)
    }

    /// Operation `∘`: drop the pendants `f1`, `f2` and identify their neighbors.
    ///
    /// Labels: `G1` minus `f1` first (order kept), then `G2` minus `f2` and
    /// minus its identified neighbor.
    pub fn circ_glue(&self, f1: usize, other: &Graph, f2: usize) -> Result<Graph> {
        Ok(self.circ_glue_mapped(f1, other, f2)?.0)
    }

    /// Like [`Graph::circ_glue`], also returning where each vertex of `G2`
    /// landed (`None` for the removed pendant).
    pub(crate) fn circ_glue_mapped(
        &self,
        f1: usize,
        other: &Graph,
        f2: usize,
    ) -> Result<(Graph, Vec<Option<usize>>)> {
        self.check_vertex(f1)?;
        other.check_vertex(f2)?;
        if self.degree(f1) != 1 || other.degree(f2) != 1 {
            return Err(Error::precondition("operation ∘ needs pendant vertices"));
        }
        let v1 = self.neighbors(f1).first().unwrap();
        let v2 = other.neighbors(f2).first().unwrap();
        if self.degree(v1) < 2 || other.degree(v2) < 2 {
            return Err(Error::precondition(
                "operation ∘ needs the pendant's neighbor to have degree at least 2",
            ));
        }
        let n = self.n + other.n - 3;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let map1 = |w: usize| if w < f1 { w } else { w - 1 };
        let mut map2 = vec![None; other.n];
        let mut next = self.n - 1;
        for (w, slot) in map2.iter_mut().enumerate() {
            if w == f2 {
                continue;
            }
            if w == v2 {
                *slot = Some(map1(v1));
            } else {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            if u != f1 && v != f1 {
                g.add_edge(map1(u), map1(v));
            }
        }
        for (u, v) in other.edges() {
            if let (Some(a), Some(b)) = (map2[u], map2[v]) {
                g.add_edge(a, b);
            }
        }
        Ok((g, map2))
    }

    /// Connected components, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let comp = self.component_of(s, self.vertices());
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Component of `s` inside the induced subgraph on `within`.
    pub(crate) fn component_of(&self, s: usize, within: VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(s);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = 0u32;
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            let next = VertexSet(next).intersection(within).difference(comp);
            comp = comp.union(next);
            frontier = next;
        }
        comp
    }

    /// Number of components of the induced subgraph on `within`.
    pub(crate) fn component_count_within(&self, within: VertexSet) -> usize {
        let mut rest = within;
        let mut c = 0;
        while let Some(s) = rest.first() {
            rest = rest.difference(self.component_of(s, within));
            c += 1;
        }
        c
    }

    pub fn component_count(&self) -> usize {
        self.component_count_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet::from_iter((0..self.n).filter(|&v| self.adj[v] == 0))
    }

    /// Relabels so that vertex `perm[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut inv = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for (u, v) in self.edges() {
            g.add_edge(inv[u], inv[v]);
        }
        g
    }

    /// Edge list text, 1-based, one edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Family::Path(n).build().unwrap()
    }

    #[test]
    fn induced_subgraph_relabels_in_order() {
        let c4 = Family::Cycle(4).build().unwrap();
        let k2 = c4.induced_subgraph(VertexSet::from_iter([0, 1])).unwrap();
        assert_eq!(k2.n(), 2);
        assert_eq!(k2.e(), 1);
        let one = c4.induced_subgraph(VertexSet::singleton(2)).unwrap();
        assert_eq!((one.n(), one.e()), (1, 0));
        assert!(c4.induced_subgraph(VertexSet::EMPTY).is_err());
    }

    #[test]
    fn eleven_vertex_fixture_induced_on_a_block_side() {
        let g = fixture("paper_fig1").unwrap();
        let x = VertexSet::from_iter([6, 7, 9, 10, 11].map(|l: usize| l - 1));
        let g2 = g.induced_subgraph(x).unwrap();
        // labels 6,7,9,10,11 become 1..5
        let want = Graph::from_edges(5, &[(1, 2), (1, 3), (1, 4), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(g2, want);
    }

    #[test]
    fn delete_vertex_cases() {
        let p3 = path(3);
        assert_eq!(p3.delete_vertex(1).unwrap().component_count(), 2);
        let k5 = Family::Complete(5).build().unwrap();
        assert_eq!(k5.delete_vertex(2).unwrap(), Family::Complete(4).build().unwrap());
        assert!(p3.delete_vertex(3).is_err());
        assert!(Graph::empty(1).unwrap().delete_vertex(0).is_err());
        // the eleven-vertex fixture minus vertex 4
        let g = fixture("paper_fig1").unwrap();
        let h = g.delete_vertex(3).unwrap();
        assert_eq!(h.component_count(), 2);
    }

    #[test]
    fn clique_close_examples() {
        let p3 = path(3);
        assert_eq!(p3.clique_close_at(1).unwrap(), Family::Complete(3).build().unwrap());
        let star = Family::CompleteBipartite(1, 3).build().unwrap();
        assert!(star.clique_close_at(0).unwrap().is_complete());
        assert!(p3.clique_close_at(5).is_err());
    }

    #[test]
    fn disjoint_union_counts() {
        let p2 = path(2);
        let u = p2.disjoint_union(&p2).unwrap();
        assert_eq!((u.n(), u.e(), u.component_count()), (4, 2, 2));
        let k3k1 = Family::Complete(3).build().unwrap().disjoint_union(&path(1)).unwrap();
        assert_eq!(k3k1.isolated_vertices().len(), 1);
        let c4 = Family::Cycle(4).build().unwrap();
        assert_eq!(c4.disjoint_union(&c4).unwrap().e(), 8);
        let big = Graph::empty(20).unwrap();
        assert!(big.disjoint_union(&big).is_err());
    }

    #[test]
    fn star_glue_of_two_edges_is_p3() {
        let p2 = path(2);
        let g = p2.star_glue(1, &p2, 0).unwrap();
        assert_eq!(g, path(3));
        assert_eq!(g.degree(1), 2);
        assert!(path(3).star_glue(1, &p2, 0).is_err());
    }

    #[test]
    fn circ_glue_rejects_bad_pendants() {
        let p2 = path(2);
        // neighbor of the pendant has degree 1
        assert!(p2.circ_glue(0, &p2, 0).is_err());
        let f3 = fm(3).unwrap();
        assert!(f3.circ_glue(1, &f3, 0).is_err());
        assert_eq!(f3.circ_glue(5, &f3, 0).unwrap().n(), 9);
    }

    #[test]
    fn components_of_small_graphs() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(g.connected_components().len(), 3);
        assert_eq!(fixture("paper_fig1").unwrap().connected_components().len(), 1);
    }
}
