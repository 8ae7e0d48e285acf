use std::fmt;

/// Largest number of variables in any ring, including the auxiliary
/// elimination variable.
pub const MAX_VARS: usize = 64;

/// Exponent vector. Variable 0 is the greatest, so the derived `Ord`
/// (lexicographic on the array) is exactly the lex term order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial([u8; MAX_VARS]);

impl Default for Monomial {
    fn default() -> Self {
        Monomial::ONE
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(&o.0) {
            *a = (*a).max(*b);
        }
        Monomial(e)
    }

    pub fn gcd_is_one(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(&o.0) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(e)
    }

    /// `self / o`; requires `o | self`.
    #[inline]
    pub fn div(&self, o: &Monomial) -> Monomial {
        debug_assert!(o.divides(self));
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(&o.0) {
            *a -= *b;
        }
        Monomial(e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Variables with positive exponent, as a bit mask.
    pub fn support(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Moves every variable `i` to `i + k`. Panics if that overflows the array.
    pub fn shift_up(&self, k: usize) -> Monomial {
        assert!(self.0[MAX_VARS - k..].iter().all(|&e| e == 0), "shift out of range");
        let mut e = [0; MAX_VARS];
        e[k..].copy_from_slice(&self.0[..MAX_VARS - k]);
        Monomial(e)
    }

    /// Inverse of [`Monomial::shift_up`]; the low `k` exponents must be zero.
    pub fn shift_down(&self, k: usize) -> Monomial {
        debug_assert!(self.0[..k].iter().all(|&e| e == 0));
        let mut e = [0; MAX_VARS];
        e[..MAX_VARS - k].copy_from_slice(&self.0[k..]);
        Monomial(e)
    }

    /// Squarefree part: every positive exponent set to 1.
    pub fn radical(&self) -> Monomial {
        let mut e = self.0;
        for a in e.iter_mut() {
            *a = (*a).min(1);
        }
        Monomial(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "v{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_puts_variable_zero_first() {
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        assert!(x0 > x1);
        assert!(x0 > x1.mul(&x1).mul(&Monomial::var(2)));
        assert!(x0.mul(&x1) > x0.mul(&Monomial::var(2)));
        assert!(Monomial::var(63) > Monomial::ONE);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[1, 0, 2]);
        let b = Monomial::from_exponents(&[0, 1, 1]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[1, 1, 2]));
        assert!(b.divides(&a.lcm(&b)));
        assert!(!b.divides(&a));
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.degree(), 3);
        assert!(!a.is_squarefree() && b.is_squarefree());
        assert_eq!(a.shift_up(1).shift_down(1), a);
        assert_eq!(a.shift_up(1).exp(1), 1);
        assert_eq!(b.support(), 0b110);
    }
}
