use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

/// Exact coefficient field.
pub trait Field:
    Copy
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(self) -> Self;

    fn characteristic() -> u64;

    fn from_i64(x: i64) -> Self;

    /// Representative in `(-p/2, p/2]`, used for printing.
    fn centered(self) -> i64;
}

/// The prime field `Z/PZ`. `P` must be prime and below `2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const fn new(x: u32) -> Self {
        Fp(x % P)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.centered())
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Fp((self.0 as u64 * o.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u32> AddAssign for Fp<P> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const P: u32> SubAssign for Fp<P> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<const P: u32> MulAssign for Fp<P> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in GF({P})");
        self.pow(P as u64 - 2)
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn from_i64(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u32)
    }

    fn centered(self) -> i64 {
        let v = self.0 as i64;
        if v > P as i64 / 2 {
            v - P as i64
        } else {
            v
        }
    }
}

/// Characteristics selectable at run time.
pub const SUPPORTED_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 101, 1009, 32003, 65521];

pub const DEFAULT_PRIME: u64 = 32003;

/// Calls `$body` with the type alias `$F` bound to `Fp<p>` for a runtime `p`.
#[macro_export]
macro_rules! with_field {
    ($p:expr, $F:ident => $body:expr) => {{
        match $p {
            2 => { type $F = $crate::algebra::Fp<2>; Ok($body) }
            3 => { type $F = $crate::algebra::Fp<3>; Ok($body) }
            5 => { type $F = $crate::algebra::Fp<5>; Ok($body) }
            7 => { type $F = $crate::algebra::Fp<7>; Ok($body) }
            11 => { type $F = $crate::algebra::Fp<11>; Ok($body) }
            13 => { type $F = $crate::algebra::Fp<13>; Ok($body) }
            101 => { type $F = $crate::algebra::Fp<101>; Ok($body) }
            1009 => { type $F = $crate::algebra::Fp<1009>; Ok($body) }
            32003 => { type $F = $crate::algebra::Fp<32003>; Ok($body) }
            65521 => { type $F = $crate::algebra::Fp<65521>; Ok($body) }
            other => Err($crate::error::Error::UnsupportedField(other)),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F7 = Fp<7>;
    type F = Fp<32003>;

    #[test]
    fn small_arithmetic() {
        assert_eq!(F7::new(3) + F7::new(5), F7::new(1));
        assert_eq!(F7::new(3) - F7::new(5), F7::new(5));
        assert_eq!(F7::new(3).inv(), F7::new(5));
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert_eq!(F7::new(6).centered(), -1);
        assert_eq!(Fp::<2>::one() + Fp::<2>::one(), Fp::<2>::zero());
    }

    #[test]
    fn dispatch_rejects_unknown_primes() {
        let ok: Result<u64, crate::error::Error> = with_field!(101u64, K => K::characteristic());
        assert_eq!(ok.unwrap(), 101);
        let bad: Result<u64, crate::error::Error> = with_field!(4u64, K => K::characteristic());
        assert!(bad.is_err());
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(x in 1u32..32003) {
            let a = F::new(x);
            prop_assert_eq!(a * a.inv(), F::one());
        }

        #[test]
        fn distributive(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let (a, b, c) = (F::new(a), F::new(b), F::new(c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - b + b, a);
        }
    }
}
