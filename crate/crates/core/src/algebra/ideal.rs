use std::fmt::Write as _;

use serde::Serialize;

use super::field::Field;
use super::groebner::{buchberger, GbBudget};
use super::monomial::{Monomial, MAX_VARS};
use super::polynomial::Polynomial;
use crate::error::{BudgetKind, Error, Result};
use crate::graph::Graph;

/// The `m × n` variable grid `x_{i,j}`, ordered row-major with `x_{1,1}`
/// greatest. For `m = 2` rows one and two are the usual `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VarGrid {
    pub m: usize,
    pub n: usize,
}

/// How variables are written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// `x1*y2 - x2*y1`, or `x1,1*x2,2 - ...` for three or more rows.
    Plain,
    /// `x_1y_2-x_2y_1`, or `x_{11}x_{22}-...` for three or more rows.
    Tex,
}

impl VarGrid {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid(format!("need m >= 2 rows, got {m}")));
        }
        if m * n > MAX_VARS - 1 {
            return Err(Error::budget(
                BudgetKind::Size,
                format!("{m} x {n} grid exceeds {} variables", MAX_VARS - 1),
            ));
        }
        Ok(VarGrid { m, n })
    }

    pub fn nvars(&self) -> usize {
        self.m * self.n
    }

    /// Index of `x_{i,j}` (0-based row and column).
    #[inline]
    pub fn var(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    /// Column (vertex) of a variable index.
    pub fn column(&self, idx: usize) -> usize {
        idx % self.n
    }

    pub fn row(&self, idx: usize) -> usize {
        idx / self.n
    }

    /// Name of a variable; `labels` maps columns to printed vertex labels.
    pub fn var_name(&self, idx: usize, style: Style, labels: &[usize]) -> String {
        let (i, j) = (self.row(idx), self.column(idx));
        let l = labels.get(j).copied().unwrap_or(j + 1);
        match (style, self.m) {
            (Style::Plain, 2) => format!("{}{l}", ["x", "y"][i]),
            (Style::Plain, _) => format!("x{},{l}", i + 1),
            (Style::Tex, 2) if l < 10 => format!("{}_{l}", ["x", "y"][i]),
            (Style::Tex, 2) => format!("{}_{{{l}}}", ["x", "y"][i]),
            (Style::Tex, _) => format!("x_{{{}{l}}}", i + 1),
        }
    }

    pub fn render_monomial(&self, m: &Monomial, style: Style, labels: &[usize]) -> String {
        let mut s = String::new();
        for idx in 0..self.nvars() {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            if style == Style::Plain && !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.var_name(idx, style, labels));
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn render<F: Field>(&self, p: &Polynomial<F>, style: Style, labels: &[usize]) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let (plus, minus) = match style {
            Style::Plain => (" + ", " - "),
            Style::Tex => ("+", "-"),
        };
        let mut s = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let c = c.centered();
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { minus } else { plus });
            }
            let mono = self.render_monomial(m, style, labels);
            if mag != 1 || mono == "1" {
                let _ = write!(s, "{mag}");
                if mono != "1" {
                    if style == Style::Plain {
                        s.push('*');
                    }
                    s.push_str(&mono);
                }
            } else {
                s.push_str(&mono);
            }
        }
        s
    }
}

/// Ideal of the polynomial ring on a variable grid, given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal<F: Field> {
    pub grid: VarGrid,
    pub gens: Vec<Polynomial<F>>,
}

/// 2-minor `x_{ik} x_{jl} − x_{il} x_{jk}` for rows `i < j`, columns `k < l`.
fn minor<F: Field>(grid: &VarGrid, i: usize, j: usize, k: usize, l: usize) -> Polynomial<F> {
    let a = Monomial::var(grid.var(i, k)).mul(&Monomial::var(grid.var(j, l)));
    let b = Monomial::var(grid.var(i, l)).mul(&Monomial::var(grid.var(j, k)));
    Polynomial::from_terms(vec![(a, F::one()), (b, -F::one())])
}

/// `J_{K_m,G}`: one generator per row pair and edge, row pairs outermost.
pub fn build_gbei<F: Field>(g: &Graph, m: usize) -> Result<Ideal<F>> {
    let grid = VarGrid::new(m, g.n())?;
    let edges = g.edges();
    let mut gens = Vec::with_capacity(m * (m - 1) / 2 * edges.len());
    for i in 0..m {
        for j in i + 1..m {
            for &(k, l) in &edges {
                gens.push(minor(&grid, i, j, k, l));
            }
        }
    }
    Ok(Ideal { grid, gens })
}

/// `J_G`, the binomial edge ideal.
pub fn build_bei<F: Field>(g: &Graph) -> Result<Ideal<F>> {
    build_gbei(g, 2)
}

impl<F: Field> Ideal<F> {
    pub fn zero(grid: VarGrid) -> Self {
        Ideal { grid, gens: Vec::new() }
    }

    /// `P_v = (x_{1,v}, …, x_{m,v})`.
    pub fn column_variables(grid: VarGrid, v: usize) -> Self {
        let gens = (0..grid.m)
            .map(|i| Polynomial::term(Monomial::var(grid.var(i, v)), F::one()))
            .collect();
        Ideal { grid, gens }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal { grid: self.grid, gens })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::precondition("ideals live in different rings"));
        }
        Ok(())
    }

    pub fn groebner(&self, budget: &GbBudget) -> Result<GroebnerBasis<F>> {
        Ok(GroebnerBasis {
            grid: self.grid,
            polys: buchberger(&self.gens, budget)?,
        })
    }

    /// `I ∩ J` by eliminating `t` from `t I + (1 − t) J`, with `t` greater
    /// than every grid variable.
    pub fn intersection(&self, other: &Self, budget: &GbBudget) -> Result<Self> {
        self.same_ring(other)?;
        let t = Polynomial::term(Monomial::var(0), F::one());
        let one_minus_t = Polynomial::constant(F::one()).sub(&t);
        let lift = |p: &Polynomial<F>| p.map_monomials_monotone(|m| m.shift_up(1));
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|f| t.mul(&lift(f))).collect();
        gens.extend(other.gens.iter().map(|g| one_minus_t.mul(&lift(g))));
        let gb = buchberger(&gens, budget)?;
        let gens = gb
            .into_iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0))
            .map(|p| p.map_monomials_monotone(|m| m.shift_down(1)))
            .collect();
        Ok(Ideal { grid: self.grid, gens })
    }

    /// Equality via reduced Gröbner bases.
    pub fn equals(&self, other: &Self, budget: &GbBudget) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.groebner(budget)?.polys == other.groebner(budget)?.polys)
    }

    pub fn render(&self, style: Style, labels: &[usize]) -> Vec<String> {
        self.gens.iter().map(|p| self.grid.render(p, style, labels)).collect()
    }
}

/// Reduced Gröbner basis under row-major lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    pub grid: VarGrid,
    pub polys: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    /// Minimal generators of the initial ideal.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.grid.nvars(),
            self.polys.iter().map(|p| *p.leading_monomial().unwrap()).collect(),
        )
    }

    pub fn render(&self, style: Style, labels: &[usize]) -> Vec<String> {
        self.polys.iter().map(|p| self.grid.render(p, style, labels)).collect()
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        f.normal_form(&self.polys).is_zero()
    }
}

/// Monomial ideal with minimal generators, sorted decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub nvars: usize,
    pub gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(|a, b| b.cmp(a));
        gens.dedup();
        let minimal: Vec<Monomial> = gens
            .iter()
            .copied()
            .filter(|g| !gens.iter().any(|h| h != g && h.divides(g)))
            .collect();
        MonomialIdeal { nvars, gens: minimal }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Union of the generators' supports.
    pub fn support(&self) -> u64 {
        self.gens.iter().fold(0, |m, g| m | g.support())
    }

    /// Polarization: `x_i^e` becomes `x_{i,1} ⋯ x_{i,e}` with fresh variables
    /// appended after the originals. Regularity is unchanged.
    pub fn polarize(&self) -> Result<MonomialIdeal> {
        let mut extra = vec![0usize; self.nvars];
        for g in &self.gens {
            for (i, e) in extra.iter_mut().enumerate() {
                *e = (*e).max(g.exp(i).saturating_sub(1) as usize);
            }
        }
        let total = self.nvars + extra.iter().sum::<usize>();
        if total > MAX_VARS {
            return Err(Error::budget(BudgetKind::Size, format!("polarization needs {total} variables")));
        }
        let mut offset = vec![0; self.nvars];
        let mut next = self.nvars;
        for i in 0..self.nvars {
            offset[i] = next;
            next += extra[i];
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = [0u8; MAX_VARS];
                for i in 0..self.nvars {
                    let k = g.exp(i) as usize;
                    if k >= 1 {
                        e[i] = 1;
                    }
                    for s in 1..k {
                        e[offset[i] + s - 1] = 1;
                    }
                }
                Monomial::from_exponents(&e)
            })
            .collect();
        Ok(MonomialIdeal::new(total, gens))
    }
}

/// `true` iff every generator of a monomial ideal has exponents at most one.
pub fn is_squarefree(m: &MonomialIdeal) -> bool {
    m.is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{groebner::is_groebner_basis, Fp};
    use num_traits::One;
    use crate::graph::{enumerate_connected, Family};

    type F = Fp<32003>;

    fn budget() -> GbBudget {
        GbBudget::default()
    }

    #[test]
    fn k2_generator_and_initial_ideal() {
        let j = build_bei::<F>(&Family::Path(2).build().unwrap()).unwrap();
        assert_eq!(j.render(Style::Plain, &[]), vec!["x1*y2 - x2*y1"]);
        let gb = j.groebner(&budget()).unwrap();
        let init = gb.initial_ideal();
        assert_eq!(init.gens.len(), 1);
        assert!(init.is_squarefree());
    }

    #[test]
    fn generator_counts() {
        let k2 = Family::Path(2).build().unwrap();
        assert_eq!(build_gbei::<F>(&k2, 3).unwrap().gens.len(), 3);
        let c5 = Family::Cycle(5).build().unwrap();
        for m in 2..=5 {
            assert_eq!(build_gbei::<F>(&c5, m).unwrap().gens.len(), m * (m - 1) / 2 * 5);
        }
        assert!(build_gbei::<F>(&k2, 1).is_err());
        assert!(build_bei::<F>(&Graph::empty(3).unwrap()).unwrap().gens.is_empty());
    }

    #[test]
    fn k3_edges_are_already_a_basis() {
        let j = build_bei::<F>(&Family::Complete(3).build().unwrap()).unwrap();
        assert!(is_groebner_basis(&j.gens));
        assert_eq!(j.groebner(&budget()).unwrap().polys.len(), 3);
    }

    #[test]
    fn path_with_centre_first_needs_a_cubic() {
        // centre labelled 1: edges {1,2}, {1,3}
        let g = Graph::from_edges(3, &[(1, 2), (1, 3)]).unwrap();
        let gb = build_bei::<F>(&g).unwrap().groebner(&budget()).unwrap();
        assert_eq!(gb.polys.len(), 3);
        assert_eq!(gb.render(Style::Plain, &[])[2], "x2*y1*y3 - x3*y1*y2");
        let init = gb.initial_ideal();
        assert!(init.is_squarefree());
        assert_eq!(init.gens.len(), 3);
    }

    #[test]
    fn initial_ideals_squarefree_on_small_graphs() {
        for n in 2..=5 {
            for g in enumerate_connected(n).unwrap() {
                let gb = build_bei::<F>(&g).unwrap().groebner(&budget()).unwrap();
                assert!(is_groebner_basis(&gb.polys), "{g:?}");
                assert!(gb.initial_ideal().is_squarefree(), "{g:?}");
            }
        }
    }

    #[test]
    fn monomial_intersection() {
        let grid = VarGrid::new(2, 1).unwrap();
        let x = Ideal::<F> { grid, gens: vec![Polynomial::term(Monomial::var(0), F::one())] };
        let y = Ideal::<F> { grid, gens: vec![Polynomial::term(Monomial::var(1), F::one())] };
        let xy = x.intersection(&y, &budget()).unwrap();
        assert_eq!(xy.gens, vec![Polynomial::term(Monomial::var(0).mul(&Monomial::var(1)), F::one())]);
        assert!(x.intersection(&x, &budget()).unwrap().equals(&x, &budget()).unwrap());
    }

    #[test]
    fn ideal_equality() {
        let p3 = build_bei::<F>(&Family::Path(3).build().unwrap()).unwrap();
        let k3 = build_bei::<F>(&Family::Complete(3).build().unwrap()).unwrap();
        assert!(!p3.equals(&k3, &budget()).unwrap());
        let mut rev = p3.clone();
        rev.gens.reverse();
        assert!(p3.equals(&rev, &budget()).unwrap());
        assert!(p3.equals(&p3.sum(&Ideal::zero(p3.grid)).unwrap(), &budget()).unwrap());
    }

    #[test]
    fn polarization_makes_squarefree() {
        let m = MonomialIdeal::new(2, vec![Monomial::from_exponents(&[2, 0]), Monomial::from_exponents(&[1, 1])]);
        assert!(!m.is_squarefree());
        let p = m.polarize().unwrap();
        assert!(p.is_squarefree());
        assert_eq!(p.nvars, 3);
    }
}
