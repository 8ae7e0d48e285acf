//! Exact combinatorial invariants of small graphs.

mod classes;
mod cliques;
mod params;
mod paths;

pub use classes::{
    blocks_and_cutvertices, classify, closed_labeling, cut_sets, is_accessible, is_bipartite,
    is_block_graph, is_cactus, is_caterpillar, is_chordal, is_closed, is_closed_labeled,
    is_indecomposable, is_lobster, is_tree, ClassFlags, MAX_CUT_SET_N,
};
pub use cliques::{
    clique_complex_dims, clique_degrees, clique_number, clique_report, eta, gamma,
    internal_vertices, maximal_cliques, CliqueReport,
};
pub use params::{
    all_spine_params, cactus_params, cm_bipartite_params, contains_jewel_subgraph,
    contains_subgraph, pendant_profile, spine_params, CactusParams, CmBipartiteParams,
    PendantProfile, PendantType, SpineParams, VertexPendantData,
};
pub use paths::{is_traceable, longest_induced_path, longest_paths, matching_number};

use serde::Serialize;

use crate::graph::{Graph, VertexSet};

/// Flat summary of every invariant, as printed by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub e: usize,
    pub c: usize,
    pub isolated: usize,
    pub clique_count: usize,
    pub omega: usize,
    pub maximal_cliques: Vec<VertexSet>,
    pub internal_vertices: VertexSet,
    pub iv: usize,
    pub eta: usize,
    pub gamma_2: i64,
    pub gamma_3: i64,
    pub clique_complex_dims: Vec<usize>,
    pub ell: usize,
    pub matching_number: usize,
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    pub alpha: usize,
    pub pv: usize,
    pub flags: ClassFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spine: Option<SpineParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cactus: Option<CactusParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains_jewel: Option<bool>,
}

impl InvariantReport {
    pub fn compute(g: &Graph) -> Self {
        let cr = clique_report(g);
        let iv = internal_vertices(g);
        let (blocks, cut) = blocks_and_cutvertices(g);
        let pp = pendant_profile(g);
        let flags = classify(g);
        InvariantReport {
            n: g.n(),
            e: g.e(),
            c: g.component_count(),
            isolated: g.isolated_vertices().len(),
            clique_count: cr.clique_count,
            omega: cr.clique_number,
            maximal_cliques: cr.maximal_cliques,
            internal_vertices: iv,
            iv: iv.len(),
            eta: eta(g),
            gamma_2: gamma(g, 2).unwrap(),
            gamma_3: gamma(g, 3).unwrap(),
            clique_complex_dims: clique_complex_dims(g),
            ell: longest_induced_path(g),
            matching_number: matching_number(g),
            blocks,
            cut_vertices: cut,
            alpha: pp.alpha,
            pv: pp.pv,
            spine: spine_params(g).ok(),
            cactus: cactus_params(g).ok(),
            contains_jewel: contains_jewel_subgraph(g).ok(),
            flags,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_connected, Family};
    use proptest::prelude::*;

    fn internal(g: &Graph) -> Vec<usize> {
        internal_vertices(g).iter().collect()
    }

    #[test]
    fn eta_at_most_clique_count() {
        for n in 1..=7 {
            for g in enumerate_connected(n).unwrap() {
                assert!(eta(&g) <= clique_report(&g).clique_count, "{g:?}");
            }
        }
    }

    #[test]
    fn internal_vertex_lemma() {
        for n in 2..=6 {
            for g in enumerate_connected(n).unwrap() {
                let iv = internal_vertices(&g).len();
                for v in internal(&g) {
                    let gv = g.clique_close_at(v).unwrap();
                    let gvv = gv.delete_vertex(v).unwrap();
                    let gdel = g.delete_vertex(v).unwrap();
                    // deleting the simplicial vertex v can only lower clique degrees
                    assert!(internal_vertices(&gvv).len() <= internal_vertices(&gv).len());
                    assert!(internal_vertices(&gv).len() < iv);
                    assert!(internal_vertices(&gvv).len() < iv);
                    assert!(internal_vertices(&gdel).len() < iv);
                    let (w, wv, wvv) = (clique_number(&g), clique_number(&gv), clique_number(&gvv));
                    assert!(wv >= wvv && wvv >= w, "{g:?} at {v}");
                    assert!(gdel.component_count() >= g.component_count());
                }
            }
        }
    }

    #[test]
    fn closing_and_deleting_can_drop_internal_vertices() {
        // C_4 at v = 1: G_v has cliques {1,3,4}, {2,3,4}; removing 1 leaves one triangle
        let c4 = Graph::from_edges(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        let gv = c4.clique_close_at(0).unwrap();
        assert_eq!(internal_vertices(&gv).len(), 2);
        assert_eq!(internal_vertices(&gv.delete_vertex(0).unwrap()).len(), 0);
    }

    #[test]
    fn closed_implies_chordal_and_blocks_are_chordal() {
        for n in 1..=7 {
            for g in enumerate_connected(n).unwrap() {
                let f = classify(&g);
                assert!(!f.closed || f.chordal);
                assert!(!f.block_graph || f.chordal);
                assert!(!f.tree || f.chordal);
            }
        }
    }

    #[test]
    fn ert_gamma_relation() {
        for n in 1..=6 {
            for g in enumerate_connected(n).unwrap() {
                let dims: usize = clique_complex_dims(&g).iter().sum();
                assert!(n as i64 + gamma(&g, 2).unwrap() <= n as i64 - dims as i64);
            }
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut e = Vec::new();
                let mut k = 0;
                for u in 1..=n {
                    for v in u + 1..=n {
                        if bits[k] {
                            e.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &e).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn maximal_cliques_cover_every_edge(g in arb_graph(9)) {
            let cl = maximal_cliques(&g);
            for (u, v) in g.edges() {
                prop_assert!(cl.iter().any(|c| c.contains(u) && c.contains(v)));
            }
            for (i, a) in cl.iter().enumerate() {
                prop_assert!(g.is_clique(*a));
                for (j, b) in cl.iter().enumerate() {
                    prop_assert!(i == j || !a.is_subset(*b));
                }
            }
        }

        #[test]
        fn clique_closure_is_idempotent(g in arb_graph(9), v in 0usize..9) {
            let v = v % g.n();
            let gv = g.clique_close_at(v).unwrap();
            prop_assert_eq!(gv.clique_close_at(v).unwrap(), gv);
        }

        #[test]
        fn canonical_form_is_label_free(g in arb_graph(8), seed in any::<u64>()) {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.permuted(&perm);
            prop_assert_eq!(crate::graph::canonical_form(&g), crate::graph::canonical_form(&h));
            prop_assert_eq!(eta(&g), eta(&h));
            prop_assert_eq!(longest_induced_path(&g), longest_induced_path(&h));
        }

        #[test]
        fn graph6_roundtrip(g in arb_graph(12)) {
            let s = crate::graph::encode_graph6(&g);
            prop_assert_eq!(crate::graph::decode_graph6(&s).unwrap(), g);
        }

        #[test]
        fn gluing_vertex_counts(a in 1usize..5, b in 1usize..5) {
            let (fa, fb) = (crate::graph::fm(a).unwrap(), crate::graph::fm(b).unwrap());
            prop_assert_eq!(fa.star_glue(2 * a - 1, &fb, 0).unwrap().n(), 2 * a + 2 * b - 1);
            if a >= 2 && b >= 2 {
                prop_assert_eq!(fa.circ_glue(2 * a - 1, &fb, 0).unwrap().n(), 2 * a + 2 * b - 3);
            }
        }
    }

    #[test]
    fn enumerated_graphs_differ_in_invariants_or_code() {
        let gs = enumerate_connected(5).unwrap();
        let mut keys = std::collections::HashSet::new();
        for g in &gs {
            assert!(keys.insert(crate::graph::canonical_form(g).1));
        }
        assert_eq!(keys.len(), 21);
        assert!(Family::Path(3).build().is_ok());
    }
}
