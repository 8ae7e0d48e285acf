use std::collections::{HashMap, HashSet};

use crate::graph::{Graph, VertexSet};

fn extend_induced(g: &Graph, path: VertexSet, last: usize, allowed: VertexSet, len: usize, best: &mut usize) {
    *best = (*best).max(len);
    // every further vertex must come from `allowed`
    if len + allowed.len() <= *best {
        return;
    }
    for w in g.neighbors(last).intersection(allowed).iter() {
        // w may touch the path only at `last`
        let blocked = g.neighbors(last).union(path);
        let next_allowed = allowed.difference(blocked).without(w);
        extend_induced(g, path.with(w), w, next_allowed, len + 1, best);
    }
}

/// Edge count of a longest induced path.
pub fn longest_induced_path(g: &Graph) -> usize {
    let mut best = 0;
    for s in 0..g.n() {
        let allowed = g.vertices().without(s);
        extend_induced(g, VertexSet::singleton(s), s, allowed, 0, &mut best);
    }
    best
}

fn matching_rec(g: &Graph, rest: VertexSet, memo: &mut HashMap<u32, usize>) -> usize {
    let Some(v) = rest.iter().find(|&v| !g.neighbors(v).intersection(rest).is_empty()) else {
        return 0;
    };
    if let Some(&m) = memo.get(&rest.0) {
        return m;
    }
    let mut best = matching_rec(g, rest.without(v), memo);
    for u in g.neighbors(v).intersection(rest).iter() {
        best = best.max(1 + matching_rec(g, rest.without(v).without(u), memo));
    }
    memo.insert(rest.0, best);
    best
}

pub fn matching_number(g: &Graph) -> usize {
    matching_rec(g, g.vertices(), &mut HashMap::new())
}

fn ham_from(g: &Graph, v: usize, seen: VertexSet, dead: &mut HashSet<(u32, usize)>) -> bool {
    if seen == g.vertices() {
        return true;
    }
    if dead.contains(&(seen.0, v)) {
        return false;
    }
    for w in g.neighbors(v).difference(seen).iter() {
        if ham_from(g, w, seen.with(w), dead) {
            return true;
        }
    }
    dead.insert((seen.0, v));
    false
}

/// Whether `g` has a Hamiltonian path.
pub fn is_traceable(g: &Graph) -> bool {
    if g.n() == 0 {
        return false;
    }
    if !g.is_connected() {
        return false;
    }
    let mut dead = HashSet::new();
    (0..g.n()).any(|s| ham_from(g, s, VertexSet::singleton(s), &mut dead))
}

fn longest_paths_from(g: &Graph, path: &mut Vec<usize>, seen: VertexSet, out: &mut Vec<Vec<usize>>, best: &mut usize) {
    let last = *path.last().unwrap();
    let mut extended = false;
    for w in g.neighbors(last).difference(seen).iter() {
        extended = true;
        path.push(w);
        longest_paths_from(g, path, seen.with(w), out, best);
        path.pop();
    }
    if !extended {
        let len = path.len() - 1;
        if len > *best {
            *best = len;
            out.clear();
        }
        if len == *best {
            out.push(path.clone());
        }
    }
}

/// Every longest path as a vertex sequence, one orientation each, sorted.
///
/// Exponential in general; intended for trees, where paths are determined by
/// their endpoints.
pub fn longest_paths(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut best = 0;
    for s in 0..g.n() {
        longest_paths_from(g, &mut vec![s], VertexSet::singleton(s), &mut out, &mut best);
    }
    let mut canon: Vec<Vec<usize>> = out
        .into_iter()
        .map(|p| {
            let mut r = p.clone();
            r.reverse();
            p.min(r)
        })
        .collect();
    canon.sort();
    canon.dedup();
    canon
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn brute_lip(g: &Graph) -> usize {
        // a set induces a path iff it is connected, acyclic and has max degree <= 2
        let mut best = 0;
        for s in 1u32..1 << g.n() {
            let x = VertexSet(s);
            let h = g.induced_unchecked(x);
            if h.is_connected() && h.e() + 1 == h.n() && (0..h.n()).all(|v| h.degree(v) <= 2) {
                best = best.max(h.e());
            }
        }
        best
    }

    fn brute_matching(g: &Graph) -> usize {
        let e = g.edges();
        (0u32..1 << e.len())
            .filter(|&s| {
                let mut used = VertexSet::EMPTY;
                for (i, &(u, v)) in e.iter().enumerate() {
                    if s >> i & 1 == 1 {
                        if used.contains(u) || used.contains(v) {
                            return false;
                        }
                        used = used.with(u).with(v);
                    }
                }
                true
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn induced_path_cycles() {
        for n in 3..=8 {
            let c = Family::Cycle(n).build().unwrap();
            assert_eq!(longest_induced_path(&c), n - 2);
            assert_eq!(brute_lip(&c), n - 2);
        }
        for n in 1..6 {
            assert_eq!(longest_induced_path(&Family::Path(n).build().unwrap()), n - 1);
        }
        assert_eq!(longest_induced_path(&Family::Complete(5).build().unwrap()), 1);
        assert_eq!(longest_induced_path(&Graph::empty(1).unwrap()), 0);
    }

    #[test]
    fn induced_path_matches_brute_force() {
        for n in 1..=6 {
            for g in crate::graph::enumerate_connected(n).unwrap() {
                assert_eq!(longest_induced_path(&g), brute_lip(&g), "{g:?}");
                assert_eq!(matching_number(&g), brute_matching(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn matchings() {
        assert_eq!(matching_number(&Family::Path(4).build().unwrap()), 2);
        assert_eq!(matching_number(&Family::Complete(3).build().unwrap()), 1);
        let c6 = Family::Cycle(6).build().unwrap();
        assert_eq!(matching_number(&c6), 3);
        assert_eq!(brute_matching(&c6), 3);
    }

    #[test]
    fn traceability() {
        assert!(is_traceable(&Family::Path(6).build().unwrap()));
        assert!(!is_traceable(&Family::CompleteBipartite(1, 3).build().unwrap()));
        assert!(is_traceable(&Family::CompleteBipartite(3, 3).build().unwrap()));
        assert!(!is_traceable(&Graph::empty(2).unwrap()));
        assert!(is_traceable(&Graph::empty(1).unwrap()));
    }

    #[test]
    fn longest_paths_of_a_star() {
        let s = Family::CompleteBipartite(1, 3).build().unwrap();
        assert_eq!(longest_paths(&s), vec![vec![1, 0, 2], vec![1, 0, 3], vec![2, 0, 3]]);
    }
}
