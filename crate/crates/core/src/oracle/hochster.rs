use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::complex::SimplicialComplex;
use crate::algebra::{Field, MonomialIdeal};
use crate::error::{BudgetKind, Error, Result};

/// Subset `σ` of complex vertices and the homological degree `r − 1` with
/// `H̃_{r−1}(Δ|σ) ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HochsterWitness {
    pub sigma: u32,
    pub degree: i64,
}

/// Subsets of the vertex set that are unions of nonfaces. Every other `σ`
/// has a cone point in `Δ|σ` and contributes nothing.
fn lcm_lattice(c: &SimplicialComplex) -> Vec<u32> {
    let full = c.vertex_mask();
    let mut out = Vec::new();
    let mut s = full;
    loop {
        let covered = c.nonfaces().iter().filter(|&&g| g & !s == 0).fold(0, |a, &g| a | g);
        if covered == s && s != 0 {
            out.push(s);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & full;
    }
    out
}

/// Upper bound on `r` with `H̃_{r−1}(Δ|σ) ≠ 0`: the Taylor resolution puts
/// `σ` in homological degree at least the size of a smallest cover of `σ`
/// by nonfaces, so `r ≤ |σ| − cover(σ)`.
fn taylor_bound(c: &SimplicialComplex, sigma: u32) -> usize {
    let gens = c.nonfaces_within(sigma);
    sigma.count_ones() as usize - min_cover(sigma, &gens)
}

/// Smallest number of sets from `gens` whose union is `target`.
fn min_cover(target: u32, gens: &[u32]) -> usize {
    fn go(left: u32, gens: &[u32], used: usize, best: &mut usize) {
        if left == 0 {
            *best = (*best).min(used);
            return;
        }
        if used + 1 >= *best {
            return;
        }
        let largest = gens.iter().map(|g| (g & left).count_ones()).max().unwrap_or(0);
        if largest == 0 {
            return;
        }
        // lower bound: even the largest set leaves this many uncovered
        if used + (left.count_ones() as usize).div_ceil(largest as usize) >= *best {
            return;
        }
        // branch on the sets covering the lowest uncovered vertex
        let v = left & left.wrapping_neg();
        for &g in gens.iter().filter(|&&g| g & v != 0) {
            go(left & !g, gens, used + 1, best);
        }
    }
    let mut best = gens.len() + 1;
    go(target, gens, 0, &mut best);
    best
}

/// Options for [`monomial_regularity`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanBudget {
    pub deadline: Option<Instant>,
    /// Cap on the number of candidate subsets; `None` means unlimited.
    pub max_subsets: Option<usize>,
}

/// `reg(S/I)` for a squarefree monomial ideal by Hochster's formula,
/// together with a witness attaining it (absent for the zero ideal).
pub fn monomial_regularity<F: Field>(
    ideal: &MonomialIdeal,
    budget: &ScanBudget,
) -> Result<(usize, Option<(u64, i64)>)> {
    if ideal.is_zero() {
        return Ok((0, None));
    }
    let (c, vars) = SimplicialComplex::from_ideal(ideal)?;
    if c.is_void() {
        return Err(Error::precondition("regularity of the unit ideal"));
    }
    let (reg, w) = complex_regularity::<F>(&c, budget)?;
    let sigma = (0..vars.len()).filter(|&k| w.sigma >> k & 1 == 1).fold(0u64, |a, k| a | 1 << vars[k]);
    Ok((reg, Some((sigma, w.degree))))
}

/// `max { r : H̃_{r−1}(Δ|σ) ≠ 0 }` over nonempty `σ`, with a witness.
pub fn complex_regularity<F: Field>(c: &SimplicialComplex, budget: &ScanBudget) -> Result<(usize, HochsterWitness)> {
    let mut cands: Vec<(u32, usize)> = lcm_lattice(c).into_iter().map(|s| (s, taylor_bound(c, s))).collect();
    if let Some(cap) = budget.max_subsets {
        if cands.len() > cap {
            return Err(Error::budget(BudgetKind::Subsets, format!("{} candidate subsets", cands.len())));
        }
    }
    // most promising first, so the running max rises quickly
    cands.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let best = AtomicUsize::new(0);
    let timed_out = std::sync::atomic::AtomicBool::new(false);
    cands.par_iter().for_each(|&(s, ub)| {
        if timed_out.load(Ordering::Relaxed) {
            return;
        }
        if budget.deadline.is_some_and(|d| Instant::now() > d) {
            timed_out.store(true, Ordering::Relaxed);
            return;
        }
        if let Some(r) = c.top_homology::<F>(s, best.load(Ordering::Relaxed), ub) {
            best.fetch_max(r, Ordering::Relaxed);
        }
    });
    if timed_out.load(Ordering::Relaxed) {
        return Err(Error::budget(BudgetKind::Deadline, "homology scan"));
    }
    let reg = best.into_inner();
    // deterministic witness: first candidate in the fixed order
    let hit = |s: u32| match reg {
        0 => c.reduced_homology_dim::<F>(s, -1) > 0,
        _ => c.top_homology::<F>(s, reg - 1, reg).is_some(),
    };
    let found = cands
        .par_iter()
        .filter(|&&(_, ub)| ub >= reg)
        .find_first(|&&(s, _)| {
            if budget.deadline.is_some_and(|d| Instant::now() > d) {
                timed_out.store(true, Ordering::Relaxed);
                return true;
            }
            hit(s)
        })
        .map(|&(s, _)| s);
    if timed_out.load(Ordering::Relaxed) {
        return Err(Error::budget(BudgetKind::Deadline, "witness search"));
    }
    let sigma = found.expect("some nonface yields a witness");
    Ok((reg, HochsterWitness { sigma, degree: reg as i64 - 1 }))
}

/// Graded Betti numbers `β_{i,j}(S/I)` of a squarefree monomial ideal by the
/// full Hochster sum.
pub fn monomial_betti<F: Field>(ideal: &MonomialIdeal) -> Result<BTreeMap<(usize, usize), usize>> {
    let mut table = BTreeMap::from([((0, 0), 1)]);
    if ideal.is_zero() {
        return Ok(table);
    }
    let (c, _) = SimplicialComplex::from_ideal(ideal)?;
    let rows: Vec<Vec<((usize, usize), usize)>> = lcm_lattice(&c)
        .into_par_iter()
        .map(|s| {
            let j = s.count_ones() as usize;
            c.reduced_homology_dims::<F>(s)
                .into_iter()
                .enumerate()
                .filter(|&(_, d)| d > 0)
                // index k holds degree k − 1, so i = j − k
                .map(|(k, d)| ((j - k, j), d))
                .collect()
        })
        .collect();
    for ((i, j), d) in rows.into_iter().flatten() {
        *table.entry((i, j)).or_insert(0) += d;
    }
    Ok(table)
}
