//! Regularity of `S/J_{K_m,G}` at desk scale: reduced Gröbner basis, initial
//! ideal, Stanley-Reisner complex and a Hochster scan, one connected
//! component at a time.

mod complex;
mod hochster;

pub use complex::{SimplicialComplex, MAX_SUPPORT};
pub use hochster::{complex_regularity, monomial_betti, monomial_regularity, HochsterWitness, ScanBudget};

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{build_gbei, Field, GbBudget, Style, VarGrid};
use crate::error::{BudgetKind, Error, Result};
use crate::graph::Graph;
use crate::with_field;

/// Knobs for one oracle call.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub gb: GbBudget,
    /// Largest `m · n` allowed for a single component.
    pub max_component_vars: usize,
    pub max_subsets: Option<usize>,
    pub deadline: Option<Instant>,
    /// Never claim equality with `reg(S/in(J))`.
    pub inequality_only: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            gb: GbBudget::default(),
            max_component_vars: MAX_SUPPORT,
            max_subsets: None,
            deadline: None,
            inequality_only: false,
        }
    }
}

impl OracleConfig {
    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self.gb.deadline = deadline;
        self
    }
}

/// Set of variables and homological degree `r − 1` at which `H̃` of the
/// restricted Stanley-Reisner complex is nonzero, with `r = reg`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub variables: Vec<String>,
    pub homology_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityResult {
    pub reg: usize,
    /// `true` when every initial ideal was squarefree, so `reg(S/J)` equals
    /// the regularity of the initial ideal.
    pub exact: bool,
    pub witness: Option<Witness>,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub m: usize,
    /// First non-squarefree initial generator seen, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_squarefree: Option<String>,
}

/// Per-component data: the component's own grid and its vertex labels.
struct Piece {
    grid: VarGrid,
    labels: Vec<usize>,
    reg: usize,
    squarefree: bool,
    offender: Option<String>,
    witness: Option<(u64, i64)>,
}

fn component_graphs(g: &Graph) -> Vec<(Graph, Vec<usize>)> {
    g.connected_components()
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| (g.induced_subgraph(c).unwrap(), c.labels()))
        .collect()
}

fn check_size(m: usize, k: usize, cfg: &OracleConfig) -> Result<()> {
    if m * k > cfg.max_component_vars {
        return Err(Error::budget(
            BudgetKind::Size,
            format!("component with {k} vertices at m = {m} needs {} variables", m * k),
        ));
    }
    Ok(())
}

fn component_regularity<F: Field>(h: &Graph, labels: Vec<usize>, m: usize, cfg: &OracleConfig) -> Result<Piece> {
    check_size(m, h.n(), cfg)?;
    let ideal = build_gbei::<F>(h, m)?;
    let init = ideal.groebner(&cfg.gb)?.initial_ideal();
    let offender = init
        .gens
        .iter()
        .find(|g| !g.is_squarefree())
        .map(|g| ideal.grid.render_monomial(g, Style::Plain, &labels));
    let squarefree = offender.is_none();
    let scan = ScanBudget { deadline: cfg.deadline, max_subsets: cfg.max_subsets };
    let (reg, witness) = if squarefree {
        monomial_regularity::<F>(&init, &scan)?
    } else {
        // polarization keeps the Betti table, so this is still reg(S/in(J)),
        // an upper bound for reg(S/J); the witness lives in the polarized ring
        (monomial_regularity::<F>(&init.polarize()?, &scan)?.0, None)
    };
    Ok(Piece { grid: ideal.grid, labels, reg, squarefree, offender, witness })
}

/// `reg(S/J_{K_m,G})` over `F`, summed over connected components.
pub fn regularity<F: Field>(g: &Graph, m: usize, cfg: &OracleConfig) -> Result<RegularityResult> {
    if m < 2 {
        return Err(Error::invalid(format!("need m >= 2, got {m}")));
    }
    let comps = component_graphs(g);
    for (h, _) in &comps {
        check_size(m, h.n(), cfg)?;
    }
    let mut pieces = Vec::with_capacity(comps.len());
    for (h, labels) in comps {
        pieces.push(component_regularity::<F>(&h, labels, m, cfg)?);
    }
    let reg = pieces.iter().map(|p| p.reg).sum();
    let exact = !cfg.inequality_only && pieces.iter().all(|p| p.squarefree);
    let witness = if pieces.iter().all(|p| p.witness.is_some()) {
        // the complex of a sum in disjoint variables is a join, so the
        // component witnesses combine by union with degrees adding up
        let mut variables = Vec::new();
        let mut degree = -1;
        for p in &pieces {
            let (sigma, d) = p.witness.unwrap();
            variables.extend(
                (0..64).filter(|&v| sigma >> v & 1 == 1).map(|v| p.grid.var_name(v, Style::Plain, &p.labels)),
            );
            degree += d + 1;
        }
        Some(Witness { variables, homology_degree: degree })
    } else {
        None
    };
    Ok(RegularityResult {
        reg,
        exact,
        witness,
        characteristic: F::characteristic(),
        m,
        non_squarefree: pieces.iter().find_map(|p| p.offender.clone()),
    })
}

/// [`regularity`] with the characteristic chosen at run time.
pub fn regularity_in_char(g: &Graph, m: usize, p: u64, cfg: &OracleConfig) -> Result<RegularityResult> {
    with_field!(p, K => regularity::<K>(g, m, cfg))?
}

/// Graded Betti numbers of `S/in(J_{K_m,G})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `(i, j, β_{i,j})` for the nonzero entries.
    pub entries: Vec<(usize, usize, usize)>,
    /// Always `true`: the numbers are those of the initial ideal.
    pub of_initial_ideal: bool,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.iter().find(|e| e.0 == i && e.1 == j).map_or(0, |e| e.2)
    }

    pub fn regularity(&self) -> usize {
        self.entries.iter().map(|&(i, j, _)| j - i).max().unwrap_or(0)
    }
}

pub fn betti_table<F: Field>(g: &Graph, m: usize, cfg: &OracleConfig) -> Result<BettiTable> {
    if m < 2 {
        return Err(Error::invalid(format!("need m >= 2, got {m}")));
    }
    let mut total: BTreeMap<(usize, usize), usize> = BTreeMap::from([((0, 0), 1)]);
    for (h, _) in component_graphs(g) {
        check_size(m, h.n(), cfg)?;
        let mut init = build_gbei::<F>(&h, m)?.groebner(&cfg.gb)?.initial_ideal();
        if !init.is_squarefree() {
            init = init.polarize()?;
        }
        let part = monomial_betti::<F>(&init)?;
        // tensor product of resolutions
        let mut next = BTreeMap::new();
        for (&(i1, j1), &b1) in &total {
            for (&(i2, j2), &b2) in &part {
                *next.entry((i1 + i2, j1 + j2)).or_insert(0) += b1 * b2;
            }
        }
        total = next;
    }
    Ok(BettiTable {
        entries: total.into_iter().map(|((i, j), b)| (i, j, b)).collect(),
        of_initial_ideal: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fp;
    use crate::graph::{enumerate_connected, Family};
    use crate::invariants::longest_induced_path;

    type F = Fp<32003>;
    type F2 = Fp<2>;

    fn reg(g: &Graph, m: usize) -> RegularityResult {
        regularity::<F>(g, m, &OracleConfig::default()).unwrap()
    }

    #[test]
    fn small_families() {
        for n in 2..=5 {
            let r = reg(&Family::Path(n).build().unwrap(), 2);
            assert_eq!(r.reg, n - 1);
            assert!(r.exact);
        }
        assert_eq!(reg(&Family::Cycle(4).build().unwrap(), 2).reg, 2);
        assert_eq!(reg(&Family::Complete(4).build().unwrap(), 2).reg, 1);
        assert_eq!(reg(&Family::Complete(3).build().unwrap(), 3).reg, 2);
        assert_eq!(reg(&Graph::empty(4).unwrap(), 2).reg, 0);
    }

    #[test]
    fn disjoint_union_adds() {
        let a = Family::Path(3).build().unwrap();
        let b = Family::Complete(3).build().unwrap();
        let u = a.disjoint_union(&b).unwrap();
        let r = reg(&u, 2);
        assert_eq!(r.reg, 2 + 1);
        let w = r.witness.unwrap();
        assert_eq!(w.homology_degree, 2);
    }

    #[test]
    fn sandwich_on_small_graphs() {
        for n in 2..=5 {
            for g in enumerate_connected(n).unwrap() {
                let r = reg(&g, 2);
                assert!(r.exact);
                assert!(longest_induced_path(&g) <= r.reg && r.reg < n, "{g:?}");
            }
        }
    }

    #[test]
    fn same_answer_in_characteristic_two() {
        for g in enumerate_connected(4).unwrap() {
            let a = reg(&g, 2).reg;
            let b = regularity::<F2>(&g, 2, &OracleConfig::default()).unwrap().reg;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn betti_tables() {
        let k2 = Family::Path(2).build().unwrap();
        let t = betti_table::<F>(&k2, 2, &OracleConfig::default()).unwrap();
        assert_eq!(t.entries, vec![(0, 0, 1), (1, 2, 1)]);
        let p3 = Family::Path(3).build().unwrap();
        let t = betti_table::<F>(&p3, 2, &OracleConfig::default()).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.regularity(), 2);
    }

    #[test]
    fn size_budget() {
        let big = Family::Path(12).build().unwrap();
        assert!(regularity::<F>(&big, 2, &OracleConfig::default()).unwrap_err().is_budget());
        assert!(regularity_in_char(&big, 2, 4, &OracleConfig::default()).is_err());
    }
}
