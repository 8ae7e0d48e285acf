use std::cmp::Ordering;


use super::field::Field;
use super::monomial::Monomial;

/// Sparse polynomial with terms in strictly decreasing lex order and no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F: Field> {
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<F> {
        self.terms.first().map(|&(_, c)| c)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().map_or(true, |c| c == F::one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(m, a)| (m, a * c)).collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if c != F::one() => self.scale(c.inv()),
            _ => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), *a * c)).collect(),
        }
    }

    /// `self - c * m * other`, merging in one pass.
    pub fn sub_scaled(&self, c: F, m: &Monomial, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, x)| (t.mul(m), *x * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ta, ca)), Some(&(tb, cb))) => match ta.cmp(&tb) {
                    Ordering::Greater => {
                        out.push((ta, ca));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((tb, -cb));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = ca - cb;
                        if !s.is_zero() {
                            out.push((ta, s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&t), None) => {
                    out.push(t);
                    a.next();
                }
                (None, Some(&(tb, cb))) => {
                    out.push((tb, -cb));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.sub_scaled(-F::one(), &Monomial::ONE, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.sub_scaled(F::one(), &Monomial::ONE, other)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &other.terms {
            acc = acc.sub_scaled(-*c, m, self);
        }
        acc
    }

    /// Applies a monomial map that preserves the relative order of terms.
    pub(crate) fn map_monomials_monotone(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (f(m), *c)).collect(),
        }
    }

    /// S-polynomial of two monic polynomials.
    pub fn s_polynomial(&self, other: &Self) -> Self {
        let (a, b) = (self.leading_monomial().unwrap(), other.leading_monomial().unwrap());
        let l = a.lcm(b);
        let ca = self.leading_coefficient().unwrap().inv();
        let cb = other.leading_coefficient().unwrap().inv();
        self.mul_term(&l.div(a), ca).sub_scaled(cb, &l.div(b), other)
    }

    /// Full reduction of `self` by `divisors` (each with nonzero leading term).
    pub fn normal_form(&self, divisors: &[Self]) -> Self {
        reduce_by(self.clone(), divisors.iter(), usize::MAX).unwrap()
    }
}

/// Reduces `p` completely. Returns `None` if an intermediate polynomial
/// exceeds `max_terms`.
pub(crate) fn reduce_by<'a, F: Field + 'a>(
    p: Polynomial<F>,
    divisors: impl Iterator<Item = &'a Polynomial<F>> + Clone,
    max_terms: usize,
) -> Option<Polynomial<F>> {
    reduce_with(
        p,
        |m| divisors.clone().find(|g| g.leading_monomial().unwrap().divides(m)),
        max_terms,
    )
}

/// Like [`reduce_by`], with the divisor lookup supplied by the caller.
pub(crate) fn reduce_with<'a, F: Field + 'a>(
    mut p: Polynomial<F>,
    find: impl Fn(&Monomial) -> Option<&'a Polynomial<F>>,
    max_terms: usize,
) -> Option<Polynomial<F>> {
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    let mut start = 0;
    while let Some(&(m, c)) = p.terms.get(start) {
        match find(&m) {
            Some(g) => {
                p.terms.drain(..start);
                start = 0;
                let q = m.div(g.leading_monomial().unwrap());
                let coef = c / g.leading_coefficient().unwrap();
                p = p.sub_scaled(coef, &q, g);
                if p.terms.len() + rem.len() > max_terms {
                    return None;
                }
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    Some(Polynomial { terms: rem })
}
