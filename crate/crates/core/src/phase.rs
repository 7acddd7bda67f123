//! Exact phases `e^{iπq}` with rational `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_integer::Integer;
use num_traits::Zero;

use crate::{Q, C64};

/// The unimodular number `e^{iπq}`, stored with `q` reduced to `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPhase {
    q: Q,
}

impl RationalPhase {
    pub const ONE: RationalPhase = RationalPhase { q: Q::new_raw(0, 1) };

    /// `e^{iπ num/den}`. Works in 128-bit arithmetic so that callers may pass
    /// large unreduced numerators.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "phase with zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let num = num.mod_floor(&(2 * den));
        RationalPhase {
            q: Q::new(
                i64::try_from(num).expect("phase numerator overflow"),
                i64::try_from(den).expect("phase denominator overflow"),
            ),
        }
    }

    pub fn from_q(q: Q) -> Self {
        Self::new(*q.numer() as i128, *q.denom() as i128)
    }

    /// `e^{2πi x}`.
    pub fn turns(x: Q) -> Self {
        Self::new(2 * *x.numer() as i128, *x.denom() as i128)
    }

    /// The exponent `q ∈ [0, 2)`.
    pub fn q(&self) -> Q {
        self.q
    }

    pub fn pow(self, n: i64) -> Self {
        Self::new(*self.q.numer() as i128 * n as i128, *self.q.denom() as i128)
    }

    pub fn conj(self) -> Self {
        -self
    }

    pub fn is_one(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_c64(self) -> C64 {
        // Exact values at the eight points where cos/sin are rational.
        let (n, d) = (*self.q.numer(), *self.q.denom());
        match (n, d) {
            (0, 1) => C64::new(1.0, 0.0),
            (1, 2) => C64::new(0.0, 1.0),
            (1, 1) => C64::new(-1.0, 0.0),
            (3, 2) => C64::new(0.0, -1.0),
            _ => {
                let t = std::f64::consts::PI * n as f64 / d as f64;
                C64::new(t.cos(), t.sin())
            }
        }
    }
}

impl Add for RationalPhase {
    type Output = RationalPhase;
    fn add(self, o: Self) -> Self {
        Self::from_q(self.q + o.q)
    }
}

impl Neg for RationalPhase {
    type Output = RationalPhase;
    fn neg(self) -> Self {
        Self::from_q(-self.q)
    }
}

impl Mul<i64> for RationalPhase {
    type Output = RationalPhase;
    fn mul(self, n: i64) -> Self {
        self.pow(n)
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(iπ·{})", self.q)
    }
}

/// Shorthand for `e^{iπ num/den}` as a complex number.
pub fn expi_pi(num: i128, den: i128) -> C64 {
    RationalPhase::new(num, den).to_c64()
}

/// Reduce a rational to its representative in `[0, 1)`.
pub fn mod1(x: Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representative() {
        assert_eq!(RationalPhase::new(5, 2).q(), Q::new(1, 2));
        assert_eq!(RationalPhase::new(-1, 2).q(), Q::new(3, 2));
        assert_eq!(RationalPhase::new(4, -6).q(), Q::new(4, 3));
        assert!(RationalPhase::new(-8, 4).is_one());
    }

    #[test]
    fn arithmetic() {
        let a = RationalPhase::new(1, 3);
        assert_eq!(a + a + a, RationalPhase::new(1, 1));
        assert_eq!(a.pow(6), RationalPhase::ONE);
        assert_eq!(a.conj(), RationalPhase::new(5, 3));
        assert!((RationalPhase::turns(Q::new(1, 4)).to_c64() - C64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn mod1_range() {
        assert_eq!(mod1(Q::new(-1, 4)), Q::new(3, 4));
        assert_eq!(mod1(Q::new(7, 3)), Q::new(1, 3));
        assert_eq!(mod1(Q::from_integer(-2)), Q::from_integer(0));
    }
}
