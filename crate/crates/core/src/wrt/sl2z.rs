//! SL(2,Z): words in S and T, conjugacy classes, and S/T word products.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_integer::Integer;
use num_traits::Zero;

use super::{s_matrix, t_phase_rows, BundleClass, FiniteOrderTag};
use crate::error::{invalid, Error, Result};
use crate::phase::RationalPhase;
use crate::C64;

/// An integer matrix `[[a,b],[c,d]]` of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SL2ZMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2ZMatrix {
    pub const IDENTITY: SL2ZMatrix = SL2ZMatrix { a: 1, b: 0, c: 0, d: 1 };
    pub const S: SL2ZMatrix = SL2ZMatrix { a: 0, b: -1, c: 1, d: 0 };
    pub const T: SL2ZMatrix = SL2ZMatrix { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NotUnimodular(det.clamp(i64::MIN as i128, i64::MAX as i128) as i64));
        }
        Ok(SL2ZMatrix { a, b, c, d })
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        SL2ZMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        SL2ZMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::IDENTITY, |acc, _| acc * *self)
    }
}

impl Mul for SL2ZMatrix {
    type Output = SL2ZMatrix;
    fn mul(self, o: Self) -> Self {
        SL2ZMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Display for SL2ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Parses `a,b,c,d`.
impl FromStr for SL2ZMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidArgument(format!("matrix {s:?}: {e}")))?;
        if v.len() != 4 {
            return invalid(format!("matrix {s:?} needs four entries a,b,c,d"));
        }
        SL2ZMatrix::new(v[0], v[1], v[2], v[3])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    S,
    T,
    TInv,
}

impl Gen {
    pub fn matrix(self) -> SL2ZMatrix {
        match self {
            Gen::S => SL2ZMatrix::S,
            Gen::T => SL2ZMatrix::T,
            Gen::TInv => SL2ZMatrix::T.inverse(),
        }
    }
}

/// A word in the generators; its product is `U`, or `−U` when `negated`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub gens: Vec<Gen>,
    pub negated: bool,
}

impl Word {
    pub fn product(&self) -> SL2ZMatrix {
        self.gens.iter().fold(SL2ZMatrix::IDENTITY, |acc, g| acc * g.matrix())
    }
}

fn push_t(gens: &mut Vec<Gen>, q: i64) {
    let g = if q > 0 { Gen::T } else { Gen::TInv };
    gens.extend(std::iter::repeat_n(g, q.unsigned_abs() as usize));
}

/// Euclidean reduction on the first column: `U = T^q S U'` until the lower
/// left entry vanishes, leaving `±T^m`.
pub fn sl2z_word(u: SL2ZMatrix) -> Word {
    let SL2ZMatrix { mut a, mut b, mut c, mut d } = u;
    let mut gens = Vec::new();
    while c != 0 {
        let q = Integer::div_floor(&a, &c);
        push_t(&mut gens, q);
        a -= q * c;
        b -= q * d;
        gens.push(Gen::S);
        (a, b, c, d) = (c, d, -a, -b);
    }
    push_t(&mut gens, a * b);
    Word { gens, negated: a == -1 }
}

/// Trace of the product of S and T matrices along the word. `T` acts by
/// `diag(a^{−E})`, being the inverse of the shear `t_μ`.
pub fn word_trace(k: u32, word: &Word) -> C64 {
    let n = k as usize + 1;
    let s = s_matrix(k).map(|x| C64::new(x, 0.0));
    let t: Vec<C64> = (0..=k).map(|j| t_phase_rows(2, k, &[j]).conj().to_c64()).collect();
    let mut p = DMatrix::<C64>::identity(n, n);
    for g in &word.gens {
        match g {
            Gen::S => p = &p * &s,
            Gen::T | Gen::TInv => {
                for (j, mut col) in p.column_iter_mut().enumerate() {
                    col *= if *g == Gen::T { t[j] } else { t[j].conj() };
                }
            }
        }
    }
    p.trace()
}

/// `|tr ρ(U)|` through [`sl2z_word`].
pub fn invariant_word_modulus(k: u32, u: SL2ZMatrix) -> f64 {
    word_trace(k, &sl2z_word(u)).norm()
}

/// Modulus of the double Gauss sum for a hyperbolic monodromy:
///
/// `Σ_± ±sign(t∓2) / (2|c|√|t∓2|) Σ_{β<|c|} Σ_{γ=1}^{|t∓2|} e^{2πir(−cγ² + (a−d)γβ + bβ²)/(t∓2)}`.
///
/// The framing-dependent prefactor is dropped, so only the modulus is
/// returned.
pub fn hyperbolic_modulus(k: u32, u: SL2ZMatrix) -> Result<f64> {
    if !u.is_hyperbolic() {
        return invalid(format!("{u} is not hyperbolic"));
    }
    let r = k as i128 + 2;
    let (a, b, c, d) = (u.a as i128, u.b as i128, u.c as i128, u.d as i128);
    let t = a + d;
    let mut total = C64::zero();
    for (sgn, dd) in [(1.0, t - 2), (-1.0, t + 2)] {
        let mut s = C64::zero();
        for beta in 0..c.abs() {
            for gamma in 1..=dd.abs() {
                let quad = -c * gamma * gamma + (a - d) * gamma * beta + b * beta * beta;
                s += RationalPhase::new(2 * r * quad, dd).to_c64();
            }
        }
        total += s * (sgn * dd.signum() as f64 / (2.0 * c.abs() as f64 * (dd.abs() as f64).sqrt()));
    }
    Ok(total.norm())
}

/// [`hyperbolic_modulus`] at level k.
pub fn invariant_hyperbolic_modulus(k: u32, u: SL2ZMatrix) -> Result<f64> {
    hyperbolic_modulus(k, u)
}

/// A matrix `P ∈ SL(2,Z)` with `P⁻¹UP` upper triangular, for `|tr U| = 2`.
pub fn conjugating_matrix(u: SL2ZMatrix) -> Result<SL2ZMatrix> {
    let eps = u.trace().signum();
    if u.trace().abs() != 2 {
        return invalid(format!("{u} is not parabolic"));
    }
    let (p, q) = if u.a - eps != 0 || u.b != 0 { (-u.b, u.a - eps) } else { (u.d - eps, -u.c) };
    if p == 0 && q == 0 {
        return Ok(SL2ZMatrix::IDENTITY);
    }
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    // p·y − q·x = 1
    let e = p.extended_gcd(&q);
    let (x, y) = (-e.y * e.gcd, e.x * e.gcd);
    SL2ZMatrix::new(p, x, q, y)
}

/// The binary form `f_U(x, y) = ω(v, Uv) = cx² + (d−a)xy − by²`, which
/// satisfies `f_{MUM⁻¹} = f_U ∘ M⁻¹`.
type Form = (i128, i128, i128);

fn is_reduced(f: Form, s: i128) -> bool {
    // 0 < B < √D and √D − B < 2|A| < √D + B, with s = ⌊√D⌋ and D not a square.
    let (a, b, _) = f;
    b > 0 && b <= s && 2 * a.abs() + b > s && 2 * a.abs() - b <= s
}

/// One reduction step `(A, B, C) ↦ (C, r, (r² − D)/4C)` with `r ≡ −B mod 2C`
/// normalised into `(−|C|, |C|]` when `|C| > √D` and into
/// `(√D − 2|C|, √D)` otherwise.
fn rho(f: Form, d: i128, s: i128) -> Form {
    let (_, b, c) = f;
    let m = 2 * c.abs();
    let r = if c.abs() > s {
        let r0 = (-b).rem_euclid(m);
        if r0 > c.abs() {
            r0 - m
        } else {
            r0
        }
    } else {
        s - (s + b).rem_euclid(m)
    };
    (c, r, (r * r - d) / (4 * c))
}

/// A distinguished representative of the conjugacy class of a hyperbolic
/// element: the smallest form in the cycle of reduced forms equivalent to
/// `f_U`, turned back into a matrix of the same trace.
pub fn canonical_hyperbolic(u: SL2ZMatrix) -> SL2ZMatrix {
    let t = u.trace() as i128;
    let d = t * t - 4;
    let s = d.isqrt();
    let mut f: Form = (u.c as i128, (u.d - u.a) as i128, -(u.b as i128));
    while !is_reduced(f, s) {
        f = rho(f, d, s);
    }
    let start = f;
    let mut best = f;
    loop {
        f = rho(f, d, s);
        if f == start {
            break;
        }
        best = best.min(f);
    }
    let (a, b, c) = best;
    let m = SL2ZMatrix { a: ((t - b) / 2) as i64, b: -c as i64, c: a as i64, d: ((t + b) / 2) as i64 };
    debug_assert_eq!(m.a as i128 * m.d as i128 - m.b as i128 * m.c as i128, 1);
    m
}

/// Conjugacy class. Parabolic elements are conjugated to `±[[1,−b],[0,1]]`;
/// elliptic ones are read off from the trace and the sign of `c`;
/// hyperbolic ones carry [`canonical_hyperbolic`].
pub fn classify(u: SL2ZMatrix) -> Result<BundleClass> {
    let u = SL2ZMatrix::new(u.a, u.b, u.c, u.d)?;
    let t = u.trace();
    if u == SL2ZMatrix::IDENTITY {
        return Ok(BundleClass::FiniteOrder(FiniteOrderTag::Id));
    }
    if u == SL2ZMatrix::IDENTITY.neg() {
        return Ok(BundleClass::FiniteOrder(FiniteOrderTag::Varpi));
    }
    let class = match t {
        2 | -2 => {
            let p = conjugating_matrix(u)?;
            let m = p.inverse() * u * p;
            debug_assert_eq!(m.c, 0);
            if t == 2 {
                BundleClass::Trace2(-m.b)
            } else {
                BundleClass::TraceMinus2(m.b)
            }
        }
        -1 => BundleClass::FiniteOrder(if u.c > 0 { FiniteOrderTag::F3 } else { FiniteOrderTag::F3Inv }),
        0 => BundleClass::FiniteOrder(if u.c > 0 { FiniteOrderTag::F4 } else { FiniteOrderTag::F4Inv }),
        1 => BundleClass::FiniteOrder(if u.c < 0 { FiniteOrderTag::F6 } else { FiniteOrderTag::F6Inv }),
        _ => BundleClass::Hyperbolic(canonical_hyperbolic(u)),
    };
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wrt::invariant_su2_closed;

    fn m(a: i64, b: i64, c: i64, d: i64) -> SL2ZMatrix {
        SL2ZMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn simple_words() {
        assert_eq!(sl2z_word(SL2ZMatrix::S).gens, vec![Gen::S]);
        assert_eq!(sl2z_word(SL2ZMatrix::T).gens, vec![Gen::T]);
        for u in [m(2, 1, 1, 1), m(-1, 0, 4, -1), m(5, 2, 2, 1), m(0, 1, -1, 1)] {
            let w = sl2z_word(u);
            let want = if w.negated { u.neg() } else { u };
            assert_eq!(w.product(), want);
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(m(1, -5, 0, 1)).unwrap(), BundleClass::Trace2(5));
        assert_eq!(classify(m(0, -1, 1, 0)).unwrap(), BundleClass::FiniteOrder(FiniteOrderTag::F4));
        let u = m(-1, 0, 4, -1);
        let BundleClass::TraceMinus2(b) = classify(u).unwrap() else { panic!() };
        let p = conjugating_matrix(u).unwrap();
        assert_eq!(p.inverse() * u * p, m(-1, b, 0, -1));
        assert!(classify(SL2ZMatrix { a: 2, b: 0, c: 0, d: 1 }).is_err());
        for t in FiniteOrderTag::ALL {
            assert_eq!(classify(t.matrix()).unwrap(), BundleClass::FiniteOrder(t));
        }
    }

    #[test]
    fn word_moduli() {
        for k in 0..8 {
            assert!((invariant_word_modulus(k, SL2ZMatrix::IDENTITY) - (k as f64 + 1.0)).abs() < 1e-10);
            for b in [-3, 1, 4] {
                let w = invariant_word_modulus(k, m(1, -b, 0, 1));
                assert!((w - invariant_su2_closed(k, b).unwrap().norm()).abs() < 1e-9);
            }
        }
        let u = m(2, 1, 1, 1);
        let h = hyperbolic_modulus(3, u).unwrap();
        assert!((h - invariant_word_modulus(3, u)).abs() < 1e-8);
        assert!((h - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
    }
}
