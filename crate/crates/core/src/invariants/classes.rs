use serde::Serialize;

use super::cliques::clique_degrees;
use super::paths::is_traceable;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub tree: bool,
    pub bipartite: bool,
    pub chordal: bool,
    /// Closed under some labeling of the vertices.
    pub closed: bool,
    pub block_graph: bool,
    pub cactus: bool,
    pub caterpillar: bool,
    pub lobster: bool,
    pub traceable: bool,
    /// `None` above [`MAX_CUT_SET_N`] vertices.
    pub accessible: Option<bool>,
    pub indecomposable: bool,
}

pub fn classify(g: &Graph) -> ClassFlags {
    let tree = is_tree(g);
    ClassFlags {
        tree,
        bipartite: is_bipartite(g),
        chordal: is_chordal(g),
        closed: is_closed(g),
        block_graph: is_block_graph(g),
        cactus: is_cactus(g),
        caterpillar: tree && is_caterpillar(g),
        lobster: tree && is_lobster(g),
        traceable: is_traceable(g),
        accessible: is_accessible(g).ok(),
        indecomposable: is_indecomposable(g),
    }
}

pub fn is_tree(g: &Graph) -> bool {
    g.is_connected() && g.e() + 1 == g.n()
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for u in g.neighbors(v).iter() {
                match side[u] {
                    None => {
                        side[u] = Some(!sv);
                        stack.push(u);
                    }
                    Some(su) if su == sv => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Maximum cardinality search order, reversed into a candidate perfect
/// elimination order.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = g
            .vertices()
            .difference(done)
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        order.push(v);
        done = done.with(v);
        for u in g.neighbors(v).difference(done).iter() {
            weight[u] += 1;
        }
    }
    order.reverse();
    order
}

pub fn is_chordal(g: &Graph) -> bool {
    let peo = mcs_order(g);
    let mut later = g.vertices();
    for &v in &peo {
        later = later.without(v);
        if !g.is_clique(g.neighbors(v).intersection(later)) {
            return false;
        }
    }
    true
}

/// Searches labelings vertex by vertex. With vertices placed in label order,
/// `g` is closed iff for every vertex both its smaller and its larger
/// neighbours form cliques.
fn closed_search(g: &Graph, comp: VertexSet, placed: VertexSet, order: &mut Vec<usize>) -> bool {
    if placed == comp {
        return true;
    }
    for w in comp.difference(placed).iter() {
        let earlier = g.neighbors(w).intersection(placed);
        if !g.is_clique(earlier) {
            continue;
        }
        // w joins the larger neighbourhood of each earlier neighbour u
        let ok = earlier.iter().all(|u| {
            let pos = order.iter().position(|&x| x == u).unwrap();
            let larger = VertexSet::from_iter(order[pos + 1..].iter().copied())
                .intersection(g.neighbors(u));
            larger.is_subset(g.neighbors(w))
        });
        if !ok {
            continue;
        }
        order.push(w);
        if closed_search(g, comp, placed.with(w), order) {
            return true;
        }
        order.pop();
    }
    false
}

pub fn is_closed(g: &Graph) -> bool {
    closed_labeling(g).is_some()
}

/// A labeling witnessing closedness: `order[i]` gets label `i + 1`.
pub fn closed_labeling(g: &Graph) -> Option<Vec<usize>> {
    // closed graphs are chordal and claw-free; both are cheap to refute
    if has_induced_claw(g) || !is_chordal(g) {
        return None;
    }
    let mut full = Vec::new();
    for comp in g.connected_components() {
        let mut order = Vec::new();
        if !closed_search(g, comp, VertexSet::EMPTY, &mut order) {
            return None;
        }
        full.extend(order);
    }
    Some(full)
}

fn has_induced_claw(g: &Graph) -> bool {
    (0..g.n()).any(|v| {
        let nb = g.neighbors(v);
        nb.iter().any(|a| {
            let rest = nb.difference(g.neighbors(a)).without(a);
            rest.iter().any(|b| !rest.difference(g.neighbors(b)).without(b).is_empty())
        })
    })
}

/// Whether `g` is closed in its given labeling.
pub fn is_closed_labeled(g: &Graph) -> bool {
    (0..g.n()).all(|v| {
        let nb = g.neighbors(v);
        let lower = VertexSet(nb.0 & ((1u32 << v) - 1));
        g.is_clique(lower) && g.is_clique(nb.difference(lower))
    })
}

/// Blocks and cut vertices. Isolated vertices form singleton blocks.
pub fn blocks_and_cutvertices(g: &Graph) -> (Vec<VertexSet>, VertexSet) {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<VertexSet>,
        cut: VertexSet,
    }
    fn dfs(st: &mut St, v: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[v] = st.time;
        st.low[v] = st.time;
        let mut children = 0;
        for u in st.g.neighbors(v).iter() {
            if st.disc[u] == 0 {
                children += 1;
                st.stack.push((v, u));
                dfs(st, u, Some(v));
                st.low[v] = st.low[v].min(st.low[u]);
                if st.low[u] >= st.disc[v] {
                    if parent.is_some() || children > 1 {
                        st.cut = st.cut.with(v);
                    }
                    let mut b = VertexSet::EMPTY;
                    while let Some((a, c)) = st.stack.pop() {
                        b = b.with(a).with(c);
                        if (a, c) == (v, u) {
                            break;
                        }
                    }
                    st.blocks.push(b);
                }
            } else if Some(u) != parent && st.disc[u] < st.disc[v] {
                st.stack.push((v, u));
                st.low[v] = st.low[v].min(st.disc[u]);
            }
        }
    }
    let n = g.n();
    let mut st = St {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: VertexSet::EMPTY,
    };
    for v in 0..n {
        if st.disc[v] == 0 {
            if g.degree(v) == 0 {
                st.disc[v] = usize::MAX;
                st.blocks.push(VertexSet::singleton(v));
            } else {
                dfs(&mut st, v, None);
            }
        }
    }
    let mut blocks = st.blocks;
    blocks.sort_by_key(|b| b.labels());
    (blocks, st.cut)
}

fn is_cycle_block(g: &Graph, b: VertexSet) -> bool {
    b.len() >= 3 && b.iter().all(|v| g.neighbors(v).intersection(b).len() == 2)
}

pub fn is_block_graph(g: &Graph) -> bool {
    blocks_and_cutvertices(g).0.into_iter().all(|b| g.is_clique(b))
}

/// Every block is a cycle or a single edge (or an isolated vertex).
pub fn is_cactus(g: &Graph) -> bool {
    blocks_and_cutvertices(g)
        .0
        .into_iter()
        .all(|b| b.len() <= 2 || is_cycle_block(g, b))
}

fn strip_leaves(g: &Graph) -> Graph {
    let keep = VertexSet::from_iter((0..g.n()).filter(|&v| g.degree(v) != 1));
    g.induced_unchecked(keep)
}

fn is_path_or_empty(g: &Graph) -> bool {
    g.n() == 0 || (is_tree(g) && (0..g.n()).all(|v| g.degree(v) <= 2))
}

pub fn is_caterpillar(g: &Graph) -> bool {
    is_tree(g) && is_path_or_empty(&strip_leaves(g))
}

pub fn is_lobster(g: &Graph) -> bool {
    if !is_tree(g) {
        return false;
    }
    let core = strip_leaves(g);
    core.n() == 0 || is_caterpillar(&core)
}

/// No vertex lies in exactly two maximal cliques.
pub fn is_indecomposable(g: &Graph) -> bool {
    clique_degrees(g).into_iter().all(|d| d != 2)
}

pub const MAX_CUT_SET_N: usize = 12;

/// Nonempty `T` such that putting back any single `v ∈ T` merges components
/// of `G ∖ T`.
pub fn cut_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > MAX_CUT_SET_N {
        return Err(Error::budget(
            crate::error::BudgetKind::Size,
            format!("cut sets enumerate all subsets, n = {n} > {MAX_CUT_SET_N}"),
        ));
    }
    let all = g.vertices();
    let mut out = Vec::new();
    for t in 1u32..1 << n {
        let t = VertexSet(t);
        let rest = all.difference(t);
        let c = g.component_count_within(rest);
        if t.iter().all(|v| g.component_count_within(rest.with(v)) < c) {
            out.push(t);
        }
    }
    out.sort_by_key(|t| (t.len(), t.labels()));
    Ok(out)
}

/// Every cut set `T` has some `v` with `T ∖ {v}` a cut set or empty.
pub fn is_accessible(g: &Graph) -> Result<bool> {
    let cs = cut_sets(g)?;
    let set: std::collections::HashSet<VertexSet> = cs.iter().copied().collect();
    Ok(cs.iter().all(|&t| {
        t.iter().any(|v| {
            let s = t.without(v);
            s.is_empty() || set.contains(&s)
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_connected, fixture, Family};

    fn brute_closed(g: &Graph) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(g.n()).into_iter().any(|p| is_closed_labeled(&g.permuted(&p)))
    }

    fn has_long_induced_cycle(g: &Graph) -> bool {
        (1u32..1 << g.n()).any(|s| {
            let h = g.induced_unchecked(VertexSet(s));
            h.n() >= 4 && h.is_connected() && (0..h.n()).all(|v| h.degree(v) == 2)
        })
    }

    #[test]
    fn closed_and_chordal_match_brute_force() {
        for n in 1..=6 {
            for g in enumerate_connected(n).unwrap() {
                assert_eq!(is_closed(&g), brute_closed(&g), "{g:?}");
                assert_eq!(is_chordal(&g), !has_long_induced_cycle(&g), "{g:?}");
                if let Some(order) = closed_labeling(&g) {
                    assert!(is_closed_labeled(&g.permuted(&order)));
                }
            }
        }
    }

    #[test]
    fn eleven_vertex_fixture_blocks() {
        let g = fixture("paper_fig1").unwrap();
        let (blocks, cut) = blocks_and_cutvertices(&g);
        let b = VertexSet::from_iter([5, 8, 9, 10]);
        assert!(blocks.contains(&b));
        assert!(!g.is_clique(b));
        assert!(!is_block_graph(&g));
        assert_eq!(cut.labels(), vec![4, 6]);
    }

    #[test]
    fn simple_block_counts() {
        let (b, c) = blocks_and_cutvertices(&Family::Path(4).build().unwrap());
        assert_eq!((b.len(), c.len()), (3, 2));
        let (b, c) = blocks_and_cutvertices(&Family::Complete(5).build().unwrap());
        assert_eq!((b.len(), c.len()), (1, 0));
        let (b, _) = blocks_and_cutvertices(&Graph::empty(2).unwrap());
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn path_flags() {
        for n in 1..7 {
            let f = classify(&Family::Path(n).build().unwrap());
            assert!(f.tree && f.caterpillar && f.lobster && f.closed && f.traceable && f.chordal);
        }
    }

    #[test]
    fn cycle_cut_sets() {
        let c4 = Family::Cycle(4).build().unwrap();
        let cs = cut_sets(&c4).unwrap();
        assert_eq!(cs, vec![VertexSet::from_iter([0, 2]), VertexSet::from_iter([1, 3])]);
        for n in 4..8 {
            assert!(!is_accessible(&Family::Cycle(n).build().unwrap()).unwrap());
        }
        let p3 = Family::Path(3).build().unwrap();
        assert_eq!(cut_sets(&p3).unwrap(), vec![VertexSet::singleton(1)]);
        assert!(is_accessible(&p3).unwrap());
        let k5 = Family::Complete(5).build().unwrap();
        assert!(cut_sets(&k5).unwrap().is_empty());
        assert!(is_accessible(&k5).unwrap());
        assert!(cut_sets(&Graph::empty(13).unwrap()).is_err());
    }

    #[test]
    fn caterpillar_and_lobster() {
        let j = fixture("jewel").unwrap();
        assert!(!is_caterpillar(&j) && is_lobster(&j));
        let spider = Graph::from_edges(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).unwrap();
        assert!(!is_caterpillar(&spider) && is_lobster(&spider));
        assert!(is_caterpillar(&Family::CompleteBipartite(1, 4).build().unwrap()));
    }

    #[test]
    fn cactus_and_indecomposable() {
        assert!(is_cactus(&Family::Cycle(5).build().unwrap()));
        assert!(!is_cactus(&Family::Complete(4).build().unwrap()));
        assert!(is_indecomposable(&Family::Complete(4).build().unwrap()));
        assert!(!is_indecomposable(&Family::Path(3).build().unwrap()));
        assert!(is_bipartite(&Family::Cycle(6).build().unwrap()));
        assert!(!is_bipartite(&Family::Cycle(5).build().unwrap()));
    }
}
