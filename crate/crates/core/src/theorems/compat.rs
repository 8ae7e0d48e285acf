use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{eta, gamma, internal_vertices};

/// The three maps shown to be `(reg, m)`-compatible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PsiMap {
    /// `n − c`.
    Nc,
    /// `(m − 1) η`.
    Eta,
    /// `n + γ_m`.
    Gamma,
}

impl PsiMap {
    pub const ALL: [PsiMap; 3] = [PsiMap::Nc, PsiMap::Eta, PsiMap::Gamma];
}

impl fmt::Display for PsiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PsiMap::Nc => "NC",
            PsiMap::Eta => "ETA",
            PsiMap::Gamma => "GAMMA",
        })
    }
}

impl FromStr for PsiMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NC" => Ok(PsiMap::Nc),
            "ETA" => Ok(PsiMap::Eta),
            "GAMMA" => Ok(PsiMap::Gamma),
            _ => Err(Error::invalid(format!("unknown map {s}, expected NC, ETA or GAMMA"))),
        }
    }
}

/// `ψ(G)`; the graph with no vertices maps to 0.
pub fn psi(map: PsiMap, m: usize, g: &Graph) -> Result<i64> {
    if g.n() == 0 {
        return Ok(0);
    }
    Ok(match map {
        PsiMap::Nc => g.n() as i64 - g.component_count() as i64,
        PsiMap::Eta => (m as i64 - 1) * eta(g) as i64,
        PsiMap::Gamma => g.n() as i64 + gamma(g, m)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibleReport {
    pub map: PsiMap,
    pub m: usize,
    pub psi: i64,
    /// `ψ(Ĝ) ≤ ψ(G)`, `Ĝ` being `G` without isolated vertices.
    pub condition_a: bool,
    /// Checked when `G` (or `Ĝ`) is a union of complete graphs.
    pub condition_b: Option<bool>,
    /// Checked when some component is not complete.
    pub condition_c: Option<bool>,
    /// 1-based internal vertex satisfying (c).
    pub witness: Option<usize>,
    /// Which disjunct of (c) the witness meets.
    pub disjunct: Option<u8>,
    pub holds: bool,
}

/// Checks the three compatibility conditions for `ψ` on this one graph.
pub fn compatible_map_verify(map: PsiMap, m: usize, g: &Graph) -> Result<CompatibleReport> {
    if m < 2 {
        return Err(Error::invalid(format!("need m >= 2, got {m}")));
    }
    let value = psi(map, m, g)?;
    let keep = g.vertices().difference(g.isolated_vertices());
    let hat = if keep.is_empty() { Graph::empty(0)? } else { g.induced_subgraph(keep)? };
    let condition_a = psi(map, m, &hat)? <= value;

    let internal = internal_vertices(g);
    let (mut condition_b, mut condition_c, mut witness, mut disjunct) = (None, None, None, None);
    if internal.is_empty() {
        // every component is complete; (b) concerns the ones with n_i >= 2,
        // read off Ĝ when there are isolated vertices
        let base = if g.isolated_vertices().is_empty() { g } else { &hat };
        let floor: i64 = base
            .connected_components()
            .iter()
            .map(|c| (m as i64 - 1).min(c.len() as i64 - 1))
            .sum();
        condition_b = Some(psi(map, m, base)? >= floor);
    } else {
        let found = find_witness(map, m, g, value, internal)?;
        condition_c = Some(found.is_some());
        if let Some((v, d)) = found {
            witness = Some(v + 1);
            disjunct = Some(d);
        }
    }
    let holds = condition_a && condition_b.unwrap_or(true) && condition_c.unwrap_or(true);
    Ok(CompatibleReport { map, m, psi: value, condition_a, condition_b, condition_c, witness, disjunct, holds })
}

fn find_witness(map: PsiMap, m: usize, g: &Graph, value: i64, internal: VertexSet) -> Result<Option<(usize, u8)>> {
    for v in internal.iter() {
        if psi(map, m, &g.delete_vertex(v)?)? > value {
            continue;
        }
        let gv = g.clique_close_at(v)?;
        let at_gv = psi(map, m, &gv)?;
        if at_gv < value {
            return Ok(Some((v, 1)));
        }
        if at_gv == value && psi(map, m, &gv.delete_vertex(v)?)? < value {
            return Ok(Some((v, 2)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_connected, fixture, Family};

    #[test]
    fn nc_uses_the_second_disjunct() {
        let p4 = Family::Path(4).build().unwrap();
        let r = compatible_map_verify(PsiMap::Nc, 2, &p4).unwrap();
        assert!(r.holds);
        assert_eq!(r.disjunct, Some(2));
        assert_eq!(r.witness, Some(2));
    }

    #[test]
    fn eta_on_the_eta_fixture() {
        let h = fixture("paper_fig3_H").unwrap();
        let r = compatible_map_verify(PsiMap::Eta, 2, &h).unwrap();
        assert!(r.holds);
        let v = r.witness.unwrap() - 1;
        assert!(eta(&h.clique_close_at(v).unwrap()) < eta(&h));
    }

    #[test]
    fn gamma_boundary_case() {
        let g = Family::Complete(3).build().unwrap().disjoint_union(&Family::Complete(2).build().unwrap()).unwrap();
        let r = compatible_map_verify(PsiMap::Gamma, 2, &g).unwrap();
        assert_eq!(r.psi, 2);
        assert_eq!(r.condition_b, Some(true));
        assert!(r.holds);
    }

    #[test]
    fn isolated_vertices_go_through_the_hat() {
        let g = Family::Complete(3).build().unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        for map in PsiMap::ALL {
            let r = compatible_map_verify(map, 3, &g).unwrap();
            assert!(r.holds, "{map}");
            assert_eq!(r.condition_c, None);
        }
    }

    #[test]
    fn small_connected_graphs() {
        for n in 1..=5 {
            for g in enumerate_connected(n).unwrap() {
                for map in PsiMap::ALL {
                    let r = compatible_map_verify(map, 2, &g).unwrap();
                    assert!(r.holds, "{map} {g:?}");
                    assert_eq!(r.witness.is_some(), !internal_vertices(&g).is_empty());
                }
            }
        }
    }
}
