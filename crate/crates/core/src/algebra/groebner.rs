use std::time::Instant;

use super::field::Field;
use super::monomial::Monomial;
use super::polynomial::{reduce_with, Polynomial};
use crate::error::{BudgetKind, Error, Result};

/// Resource caps for one Buchberger run.
#[derive(Debug, Clone, Copy)]
pub struct GbBudget {
    /// S-pairs processed (after the criteria) before giving up.
    pub max_pairs: usize,
    /// Largest polynomial allowed during reduction.
    pub max_terms: usize,
    pub deadline: Option<Instant>,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget {
            max_pairs: 5_000_000,
            max_terms: 200_000,
            deadline: None,
        }
    }
}

impl GbBudget {
    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::budget(BudgetKind::Deadline, "wall-clock deadline passed")),
            _ => Ok(()),
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

struct Basis<F: Field> {
    polys: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl<F: Field> Basis<F> {
    fn find_divisor(&self, m: &Monomial) -> Option<&Polynomial<F>> {
        let mask = m.support();
        (0..self.polys.len())
            .find(|&k| self.active[k] && self.masks[k] & !mask == 0 && self.lms[k].divides(m))
            .map(|k| &self.polys[k])
    }

    fn push(&mut self, p: Polynomial<F>) -> usize {
        let lm = *p.leading_monomial().unwrap();
        self.masks.push(lm.support());
        self.lms.push(lm);
        self.polys.push(p);
        self.active.push(true);
        self.polys.len() - 1
    }
}

/// Gebauer-Möller update after adding basis element `h`.
fn update<F: Field>(basis: &mut Basis<F>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = basis.lms[h];
    let mut cands: Vec<(usize, Monomial)> = (0..h)
        .filter(|&g| basis.active[g])
        .map(|g| (g, basis.lms[g].lcm(&lh)))
        .collect();
    // keep a new pair if its leading terms are coprime or no other new pair
    // has an lcm dividing it
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g, l)) = cands.pop() {
        let coprime = basis.lms[g].gcd_is_one(&lh);
        let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l));
        if coprime || !dominated {
            kept.push((g, l));
        }
    }
    // Buchberger's coprime criterion
    kept.retain(|&(g, _)| !basis.lms[g].gcd_is_one(&lh));
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && basis.lms[p.i].lcm(&lh) != p.lcm
            && basis.lms[p.j].lcm(&lh) != p.lcm)
    });
    pairs.extend(kept.into_iter().map(|(g, lcm)| Pair { i: g, j: h, deg: lcm.degree(), lcm }));
    for g in 0..h {
        if basis.active[g] && lh.divides(&basis.lms[g]) {
            basis.active[g] = false;
        }
    }
}

/// Reduced Gröbner basis under lex, sorted by decreasing leading monomial.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], budget: &GbBudget) -> Result<Vec<Polynomial<F>>> {
    let binomial_input = gens.iter().all(|g| g.len() <= 2);
    let mut basis = Basis {
        polys: Vec::new(),
        lms: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
    };
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.make_monic()).collect();
    input.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in input {
        let r = reduce_with(g, |m| basis.find_divisor(m), budget.max_terms)
            .ok_or_else(|| Error::budget(BudgetKind::Terms, "input reduction"))?;
        if r.is_zero() {
            continue;
        }
        let h = basis.push(r.make_monic());
        update(&mut basis, &mut pairs, h);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        budget.check_deadline()?;
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::budget(BudgetKind::Pairs, format!("more than {} S-pairs", budget.max_pairs)));
        }
        // normal strategy: smallest lcm, by degree first
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                (pairs[a].deg, pairs[a].lcm).cmp(&(pairs[b].deg, pairs[b].lcm))
            })
            .unwrap();
        let Pair { i, j, .. } = pairs.swap_remove(k);
        let s = basis.polys[i].s_polynomial(&basis.polys[j]);
        let r = reduce_with(s, |m| basis.find_divisor(m), budget.max_terms).ok_or_else(|| {
            Error::budget(BudgetKind::Terms, format!("polynomial above {} terms", budget.max_terms))
        })?;
        if r.is_zero() {
            continue;
        }
        debug_assert!(!binomial_input || r.len() <= 2, "binomial ideal produced {} terms", r.len());
        let h = basis.push(r.make_monic());
        update(&mut basis, &mut pairs, h);
    }

    // interreduce the minimal basis
    let keep: Vec<usize> = (0..basis.polys.len()).filter(|&k| basis.active[k]).collect();
    let mut out = Vec::with_capacity(keep.len());
    for &k in &keep {
        let p = &basis.polys[k];
        let lead = Polynomial::term(*p.leading_monomial().unwrap(), p.leading_coefficient().unwrap());
        let tail = p.sub(&lead);
        let others = |m: &Monomial| {
            keep.iter()
                .copied()
                .find(|&o| o != k && basis.lms[o].divides(m))
                .map(|o| &basis.polys[o])
        };
        let tail = reduce_with(tail, others, budget.max_terms)
            .ok_or_else(|| Error::budget(BudgetKind::Terms, "interreduction"))?;
        out.push(lead.add(&tail).make_monic());
    }
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    Ok(out)
}

/// Checks the Buchberger criterion directly: every S-polynomial reduces to 0.
pub fn is_groebner_basis<F: Field>(basis: &[Polynomial<F>]) -> bool {
    for (a, f) in basis.iter().enumerate() {
        for g in &basis[a + 1..] {
            if !f.s_polynomial(g).normal_form(basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Whether a sorted list is a reduced basis: monic, no leading monomial
/// divides any term of another element.
pub fn is_reduced<F: Field>(basis: &[Polynomial<F>]) -> bool {
    basis.iter().enumerate().all(|(a, f)| {
        f.is_monic()
            && basis.iter().enumerate().all(|(b, g)| {
                a == b
                    || f.terms()
                        .iter()
                        .all(|(m, _)| !g.leading_monomial().unwrap().divides(m))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fp;
    use num_traits::One;

    type F = Fp<32003>;

    fn poly(terms: &[(&[u8], i64)]) -> Polynomial<F> {
        Polynomial::from_terms(terms.iter().map(|&(e, c)| (Monomial::from_exponents(e), F::from_i64(c))).collect())
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        assert!(buchberger::<F>(&[], &GbBudget::default()).unwrap().is_empty());
        assert!(buchberger(&[Polynomial::<F>::zero()], &GbBudget::default()).unwrap().is_empty());
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&[poly(&[(&[1], 1), (&[], 1)]), poly(&[(&[1], 1)])], &GbBudget::default()).unwrap();
        assert_eq!(gb, vec![Polynomial::constant(F::one())]);
    }

    #[test]
    fn univariate_gcd() {
        // (x^2 - 1, x^3 - 1) = (x - 1)
        let gb = buchberger(
            &[poly(&[(&[2], 1), (&[], -1)]), poly(&[(&[3], 1), (&[], -1)])],
            &GbBudget::default(),
        )
        .unwrap();
        assert_eq!(gb, vec![poly(&[(&[1], 1), (&[], -1)])]);
    }

    #[test]
    fn classic_example_is_a_reduced_basis() {
        // x^2 y - 1, x y^2 - x in lex x > y
        let gens = vec![poly(&[(&[2, 1], 1), (&[], -1)]), poly(&[(&[1, 2], 1), (&[1, 0], -1)])];
        let gb = buchberger(&gens, &GbBudget::default()).unwrap();
        assert!(is_groebner_basis(&gb));
        assert!(is_reduced(&gb));
        for g in &gens {
            assert!(g.normal_form(&gb).is_zero());
        }
        // idempotent
        assert_eq!(buchberger(&gb, &GbBudget::default()).unwrap(), gb);
    }

    #[test]
    fn pair_budget_is_reported() {
        let gens = vec![poly(&[(&[2, 1], 1), (&[], -1)]), poly(&[(&[1, 2], 1), (&[1, 0], -1)])];
        let tight = GbBudget { max_pairs: 0, ..GbBudget::default() };
        let err = buchberger(&gens, &tight).unwrap_err();
        assert!(err.is_budget());
    }
}
