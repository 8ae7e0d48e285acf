use crate::algebra::{build_gbei, Field, GbBudget, Ideal};
use crate::error::{BudgetKind, Error, Result};
use crate::graph::Graph;
use crate::invariants::internal_vertices;

/// Largest `m · n` accepted; elimination adds one more variable.
pub const MAX_DECOMPOSITION_VARS: usize = 12;

/// Whether `J_{K_m,G} = J_{K_m,G_v} ∩ (P_v + J_{K_m,G∖v})` for an internal
/// vertex `v` (0-based), computed by elimination.
pub fn decomposition_check<F: Field>(g: &Graph, m: usize, v: usize, budget: &GbBudget) -> Result<bool> {
    if !internal_vertices(g).contains(v) {
        return Err(Error::precondition(format!("vertex {} is not internal", v + 1)));
    }
    if m * g.n() > MAX_DECOMPOSITION_VARS {
        return Err(Error::budget(
            BudgetKind::Size,
            format!("m * n = {} exceeds {MAX_DECOMPOSITION_VARS}", m * g.n()),
        ));
    }
    let j = build_gbei::<F>(g, m)?;
    let jv = build_gbei::<F>(&g.clique_close_at(v)?, m)?;
    // G \ v kept on the same vertex set so every ideal lives in one ring
    let minus = build_gbei::<F>(&g.isolate_vertex(v)?, m)?;
    let right = Ideal::column_variables(j.grid, v).sum(&minus)?;
    jv.intersection(&right, budget)?.equals(&j, budget)
}
