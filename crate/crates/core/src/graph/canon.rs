use std::collections::BTreeSet;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Isomorphism-invariant code: the adjacency rows of the canonical relabeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: usize,
    rows: Vec<u32>,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n
    }
}

/// Colour refinement by neighbour-colour counts until the partition is stable.
/// Colours are ranks of invariant keys, so the result respects isomorphism.
fn refine(g: &Graph, mut color: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    loop {
        let k = color.iter().max().map_or(0, |m| m + 1);
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut cnt = vec![0; k];
                for u in g.neighbors(v).iter() {
                    cnt[color[u]] += 1;
                }
                (color[v], cnt)
            })
            .collect();
        let ranks: Vec<&(usize, Vec<usize>)> =
            keys.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = keys
            .iter()
            .map(|key| ranks.binary_search(&key).unwrap())
            .collect();
        if ranks.len() == k {
            return next;
        }
        color = next;
    }
}

fn code_for(g: &Graph, color: &[usize]) -> Vec<u32> {
    // color is a bijection onto 0..n here
    let n = g.n();
    let mut rows = vec![0u32; n];
    for (u, v) in g.edges() {
        rows[color[u]] |= 1 << color[v];
        rows[color[v]] |= 1 << color[u];
    }
    rows
}

fn search(g: &Graph, color: Vec<usize>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
    let n = g.n();
    let k = color.iter().max().map_or(0, |m| m + 1);
    if k == n {
        let code = code_for(g, &color);
        if best.as_ref().map_or(true, |(b, _)| code > *b) {
            *best = Some((code, color));
        }
        return;
    }
    // first (smallest colour) non-singleton cell
    let mut size = vec![0; k];
    for &c in &color {
        size[c] += 1;
    }
    let target = (0..k).find(|&c| size[c] > 1).unwrap();
    let cell = VertexSet::from_iter((0..n).filter(|&v| color[v] == target));
    let mut tried = VertexSet::EMPTY;
    for v in cell.iter() {
        // vertices with identical neighbourhoods inside the cell are interchangeable
        let twin = tried.iter().any(|u| {
            g.neighbors(u).without(v) == g.neighbors(v).without(u)
        });
        if twin {
            continue;
        }
        tried = tried.with(v);
        let split: Vec<usize> = (0..n)
            .map(|w| 2 * color[w] + usize::from(color[w] == target && w != v))
            .collect();
        search(g, refine(g, split), best);
    }
}

/// Canonical relabeling of `g` and its code. Isomorphic graphs get equal codes
/// and identical canonical graphs.
pub fn canonical_form(g: &Graph) -> (Graph, CanonicalCode) {
    let n = g.n();
    if n == 0 {
        return (g.clone(), CanonicalCode { n: 0, rows: Vec::new() });
    }
    let mut best = None;
    search(g, refine(g, vec![0; n]), &mut best);
    let (rows, color) = best.unwrap();
    // vertex color[v] of the canonical graph is v
    let mut perm = vec![0; n];
    for (v, &c) in color.iter().enumerate() {
        perm[c] = v;
    }
    (g.permuted(&perm), CanonicalCode { n, rows })
}

pub const MAX_ENUMERATE: usize = 7;

/// All connected graphs on `n` vertices up to isomorphism, in canonical form,
/// sorted by code.
///
/// Every connected graph has a vertex whose removal keeps it connected, so
/// extending each class on `n - 1` vertices by one new vertex with a nonempty
/// neighbourhood reaches every class on `n`.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATE {
        return Err(Error::invalid(format!(
            "enumeration supports 1 <= n <= {MAX_ENUMERATE}, got {n}"
        )));
    }
    let mut level = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for base in &level {
            for mask in 1u32..(1 << (m - 1)) {
                let mut g = Graph::empty(m)?;
                for (u, v) in base.edges() {
                    g.add_edge(u, v);
                }
                for u in VertexSet(mask).iter() {
                    g.add_edge(u, m - 1);
                }
                let (c, code) = canonical_form(&g);
                if seen.insert(code.clone()) {
                    next.push((code, c));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(level)
}
