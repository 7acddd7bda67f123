//! Quantum SU(N) invariants of torus bundles.
//!
//! The level-k representation of the torus mapping class group acts on the
//! span of Γ_{N,k}. With `a = e^{−2πi/(2Nr)}`, `r = k + N`, the shear
//! `t_μ = [[1,−1],[0,1]]` acts diagonally by `a^{E(λ)}`, so the bundle with
//! monodromy `t_μ^b` has invariant `Σ_λ a^{bE(λ)}`.

mod sl2z;
mod su2;
mod su3;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

pub use sl2z::{
    canonical_hyperbolic, classify, conjugating_matrix, hyperbolic_modulus, invariant_hyperbolic_modulus, invariant_word_modulus,
    sl2z_word, word_trace, Gen, SL2ZMatrix, Word,
};
pub use su2::{
    anomaly_phase, central_charge, curve_operator_eigenvalue, framing_factor, invariant_finite_order,
    invariant_su2_closed, invariant_su2_link_closed, invariant_su2_link_direct, quantum_integer, rank_d, s_hopf,
    s_matrix, t_cft,
};
pub use su3::{invariant_su3_closed, invariant_su3_tilde1};

use crate::error::{invalid, Error, Result};
use crate::phase::RationalPhase;
use crate::weightlat::{casimir_exponent_rows, for_each_diagram, is_self_dual_rows, YoungDiagram};
use crate::{Q, C64};

/// The periodic mapping classes, up to conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteOrderTag {
    Id,
    /// The hyperelliptic involution `−id`.
    Varpi,
    F3,
    F3Inv,
    F4,
    F4Inv,
    F6,
    F6Inv,
}

impl FiniteOrderTag {
    pub const ALL: [FiniteOrderTag; 8] = [
        FiniteOrderTag::Id,
        FiniteOrderTag::Varpi,
        FiniteOrderTag::F3,
        FiniteOrderTag::F3Inv,
        FiniteOrderTag::F4,
        FiniteOrderTag::F4Inv,
        FiniteOrderTag::F6,
        FiniteOrderTag::F6Inv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FiniteOrderTag::Id => "id",
            FiniteOrderTag::Varpi => "varpi",
            FiniteOrderTag::F3 => "f3",
            FiniteOrderTag::F3Inv => "f3inv",
            FiniteOrderTag::F4 => "f4",
            FiniteOrderTag::F4Inv => "f4inv",
            FiniteOrderTag::F6 => "f6",
            FiniteOrderTag::F6Inv => "f6inv",
        }
    }

    /// A representative matrix.
    pub fn matrix(self) -> SL2ZMatrix {
        let (a, b, c, d) = match self {
            FiniteOrderTag::Id => (1, 0, 0, 1),
            FiniteOrderTag::Varpi => (-1, 0, 0, -1),
            FiniteOrderTag::F3 => (0, -1, 1, -1),
            FiniteOrderTag::F3Inv => (-1, 1, -1, 0),
            FiniteOrderTag::F4 => (0, -1, 1, 0),
            FiniteOrderTag::F4Inv => (0, 1, -1, 0),
            FiniteOrderTag::F6 => (0, 1, -1, 1),
            FiniteOrderTag::F6Inv => (1, -1, 1, 0),
        };
        SL2ZMatrix::new(a, b, c, d).expect("representatives are unimodular")
    }

    pub fn order(self) -> u32 {
        match self {
            FiniteOrderTag::Id => 1,
            FiniteOrderTag::Varpi => 2,
            FiniteOrderTag::F3 | FiniteOrderTag::F3Inv => 3,
            FiniteOrderTag::F4 | FiniteOrderTag::F4Inv => 4,
            FiniteOrderTag::F6 | FiniteOrderTag::F6Inv => 6,
        }
    }
}

impl fmt::Display for FiniteOrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FiniteOrderTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = match s {
            "id" => FiniteOrderTag::Id,
            "varpi" | "-id" => FiniteOrderTag::Varpi,
            "f3" => FiniteOrderTag::F3,
            "f3inv" | "f3^-1" => FiniteOrderTag::F3Inv,
            "f4" => FiniteOrderTag::F4,
            "f4inv" | "f4^-1" => FiniteOrderTag::F4Inv,
            "f6" => FiniteOrderTag::F6,
            "f6inv" | "f6^-1" => FiniteOrderTag::F6Inv,
            _ => return invalid(format!("unknown finite-order tag {s:?}")),
        };
        Ok(t)
    }
}

/// Conjugacy class of a monodromy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BundleClass {
    /// Class of `[[1,−b],[0,1]]`.
    Trace2(i64),
    /// Class of `−[[1,−b],[0,1]]`.
    TraceMinus2(i64),
    Hyperbolic(SL2ZMatrix),
    FiniteOrder(FiniteOrderTag),
}

impl BundleClass {
    /// A matrix in the class.
    pub fn representative(&self) -> SL2ZMatrix {
        match *self {
            BundleClass::Trace2(b) => SL2ZMatrix::new(1, -b, 0, 1).unwrap(),
            BundleClass::TraceMinus2(b) => SL2ZMatrix::new(-1, b, 0, -1).unwrap(),
            BundleClass::Hyperbolic(u) => u,
            BundleClass::FiniteOrder(t) => t.matrix(),
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleClass::Trace2(b) => write!(f, "trace2({b})"),
            BundleClass::TraceMinus2(b) => write!(f, "trace-2({b})"),
            BundleClass::Hyperbolic(u) => write!(f, "hyperbolic({u})"),
            BundleClass::FiniteOrder(t) => write!(f, "finite({t})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Closed,
    Word,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Closed => "closed",
            Method::Word => "word",
        }
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "closed" => Ok(Method::Closed),
            "word" => Ok(Method::Word),
            _ => invalid(format!("unknown method {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantResult {
    pub value: C64,
    pub n: usize,
    pub k: u32,
    pub r: i64,
    pub method: Method,
    pub framing_corrected: bool,
}

impl InvariantResult {
    fn new(value: C64, n: usize, k: u32, method: Method) -> Self {
        InvariantResult { value, n, k, r: k as i64 + n as i64, method, framing_corrected: false }
    }

    /// Multiply by `framing_factor(k)^p`. Only the SU(2) anomaly is
    /// available.
    pub fn with_framing(mut self, p: i64) -> Result<Self> {
        if self.n != 2 {
            return Err(Error::Unsupported(format!("framing correction for N = {}", self.n)));
        }
        self.value *= framing_factor(self.k).powi(p as i32);
        self.framing_corrected = true;
        Ok(self)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("rank parameter N = {n} must be at least 2"));
    }
    Ok(())
}

/// The exponent of `a^{E(λ)}` as a phase, `−E(λ)/(Nr)`.
pub(crate) fn t_phase_rows(n: usize, k: u32, rows: &[u32]) -> RationalPhase {
    let r = k as i128 + n as i128;
    RationalPhase::new(-(casimir_exponent_rows(rows, n) as i128), n as i128 * r)
}

/// Diagonal entry `a^{E(λ)}` of the image of `t_μ`.
pub fn t_matrix_entry(n: usize, k: u32, lambda: &YoungDiagram) -> Result<C64> {
    check_n(n)?;
    if !lambda.in_gamma(n, k) {
        return invalid(format!("{lambda} is not a level-{k} SU({n}) label"));
    }
    Ok(t_phase_rows(n, k, lambda.rows()).to_c64())
}

fn trace_sum(n: usize, k: u32, b: i64, self_dual_only: bool) -> C64 {
    let r = k as i128 + n as i128;
    let mut acc = C64::zero();
    for_each_diagram(n, k, |rows| {
        if self_dual_only && !is_self_dual_rows(rows, n) {
            return;
        }
        let e = casimir_exponent_rows(rows, n) as i128;
        acc += RationalPhase::new(-(b as i128) * e, n as i128 * r).to_c64();
    });
    acc
}

/// The trace sum over labels, for the shear classes and `±id`.
pub fn invariant_direct(n: usize, k: u32, class: BundleClass) -> Result<InvariantResult> {
    check_n(n)?;
    let value = match class {
        BundleClass::Trace2(b) => trace_sum(n, k, b, false),
        BundleClass::TraceMinus2(b) => trace_sum(n, k, b, true),
        BundleClass::FiniteOrder(FiniteOrderTag::Id) => trace_sum(n, k, 0, false),
        BundleClass::FiniteOrder(FiniteOrderTag::Varpi) => trace_sum(n, k, 0, true),
        other => return Err(Error::Unsupported(format!("no trace sum for {other}"))),
    };
    Ok(InvariantResult::new(value, n, k, Method::Direct))
}

/// Closed-form evaluation: the SU(2) Gauss-sum formulas and finite-order
/// values, the SU(3) formulas, and the label counts for `±id`.
pub fn invariant_closed(n: usize, k: u32, class: BundleClass) -> Result<InvariantResult> {
    check_n(n)?;
    let unsupported = || Err(Error::Unsupported(format!("no closed form for {class} at N = {n}")));
    let value = match (n, class) {
        (_, BundleClass::FiniteOrder(FiniteOrderTag::Id)) => C64::new(verlinde_dim(n, k)? as f64, 0.0),
        (_, BundleClass::FiniteOrder(FiniteOrderTag::Varpi)) | (_, BundleClass::TraceMinus2(0)) => {
            tilde_verlinde(n, k)?
        }
        (_, BundleClass::Trace2(0)) => C64::new(verlinde_dim(n, k)? as f64, 0.0),
        (2, BundleClass::Trace2(b)) | (2, BundleClass::TraceMinus2(b)) => invariant_su2_closed(k, b)?,
        (2, BundleClass::FiniteOrder(t)) => invariant_finite_order(k, t),
        (2, BundleClass::Hyperbolic(u)) => C64::new(invariant_hyperbolic_modulus(k, u)?, 0.0),
        (3, BundleClass::Trace2(b)) => invariant_su3_closed(k, b)?,
        (3, BundleClass::TraceMinus2(1)) => invariant_su3_tilde1(k),
        _ => return unsupported(),
    };
    Ok(InvariantResult::new(value, n, k, Method::Closed))
}

/// Trace of the S/T word product (SU(2) only); only the modulus is
/// meaningful.
pub fn invariant_word(n: usize, k: u32, class: BundleClass) -> Result<InvariantResult> {
    if n != 2 {
        return Err(Error::Unsupported(format!("word products for N = {n}")));
    }
    let value = word_trace(k, &sl2z_word(class.representative()));
    Ok(InvariantResult::new(value, n, k, Method::Word))
}

pub fn invariant(n: usize, k: u32, class: BundleClass, method: Method) -> Result<InvariantResult> {
    match method {
        Method::Direct => invariant_direct(n, k, class),
        Method::Closed => invariant_closed(n, k, class),
        Method::Word => invariant_word(n, k, class),
    }
}

/// `|Γ_{N,k}| = (r−1)(r−2)⋯(r−N+1)/(N−1)!`.
pub fn verlinde_dim(n: usize, k: u32) -> Result<u128> {
    check_n(n)?;
    let r = k as u128 + n as u128;
    let mut acc: u128 = 1;
    for i in 1..n as u128 {
        // Running product of consecutive integers stays divisible by i!.
        acc = acc * (r - i) / i;
    }
    Ok(acc)
}

/// Number of self-dual labels, by the closed formula with `e^{iπr} = (−1)^r`.
pub fn tilde_verlinde_exact(n: usize, k: u32) -> Result<Q> {
    check_n(n)?;
    let r = Q::from_integer(k as i64 + n as i64);
    let half = Q::new(1, 2);
    let sign = if (k as usize + n) % 2 == 0 { Q::one() } else { -Q::one() };
    let fact = |m: usize| Q::from_integer((1..=m as i64).product());
    let (a, b, norm) = if n % 2 == 0 {
        let m = n / 2;
        let a = (r * half - Q::new(m as i64, 2)) * (1..m).map(|l| r * half - Q::from_integer(l as i64)).product::<Q>();
        let b = (1..=m).map(|l| (r + 1) * half - Q::from_integer(l as i64)).product::<Q>();
        (a, b, fact(m))
    } else {
        let m = (n + 1) / 2;
        let a = (1..m).map(|l| r * half - Q::from_integer(l as i64)).product::<Q>();
        let b = (1..m).map(|l| (r + 1) * half - Q::from_integer(l as i64)).product::<Q>();
        (a, b, fact(m - 1) * 2)
    };
    Ok(((a + b) + (a - b) * sign) / norm)
}

/// [`tilde_verlinde_exact`] as a complex number.
pub fn tilde_verlinde(n: usize, k: u32) -> Result<C64> {
    let q = tilde_verlinde_exact(n, k)?;
    Ok(C64::new(*q.numer() as f64 / *q.denom() as f64, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn t_entries() {
        let one = C64::new(1.0, 0.0);
        assert!(close(t_matrix_entry(4, 3, &YoungDiagram::empty()).unwrap(), one, 0.0));
        let z = t_matrix_entry(2, 1, &YoungDiagram::row(1)).unwrap();
        assert!(close(z, C64::new(0.0, -1.0), 0.0));
        assert!(t_matrix_entry(2, 1, &YoungDiagram::row(2)).is_err());
    }

    #[test]
    fn direct_examples() {
        for b in [-3, 0, 1, 5] {
            let z = invariant_direct(2, 0, BundleClass::Trace2(b)).unwrap().value;
            assert!(close(z, C64::new(1.0, 0.0), 1e-15));
        }
        for k in 0..10 {
            let z = invariant_direct(2, k, BundleClass::Trace2(0)).unwrap().value;
            assert!(close(z, C64::new(k as f64 + 1.0, 0.0), 1e-12));
        }
        let z = invariant_direct(2, 1, BundleClass::Trace2(1)).unwrap().value;
        assert!(close(z, C64::new(1.0, -1.0), 1e-15));
        assert!(invariant_direct(2, 1, BundleClass::FiniteOrder(FiniteOrderTag::F4)).is_err());
    }

    #[test]
    fn trace_minus_two_is_trace_two_for_su2() {
        for k in 0..30 {
            for b in -5..=5 {
                let p = invariant_direct(2, k, BundleClass::Trace2(b)).unwrap().value;
                let m = invariant_direct(2, k, BundleClass::TraceMinus2(b)).unwrap().value;
                assert_eq!(p, m);
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(verlinde_dim(2, 7).unwrap(), 8);
        assert_eq!(verlinde_dim(3, 1).unwrap(), 3);
        assert_eq!(verlinde_dim(4, 2).unwrap(), 10);
        for k in 0..20 {
            assert_eq!(tilde_verlinde_exact(2, k).unwrap(), Q::from_integer(k as i64 + 1));
        }
    }

    #[test]
    fn closed_dispatch() {
        let z = invariant_closed(2, 5, BundleClass::FiniteOrder(FiniteOrderTag::Id)).unwrap();
        assert_eq!(z.value, C64::new(6.0, 0.0));
        assert!(matches!(invariant_closed(4, 2, BundleClass::Trace2(1)), Err(Error::Unsupported(_))));
        let z = invariant_closed(3, 0, BundleClass::Trace2(7)).unwrap().value;
        assert!(close(z, C64::new(1.0, 0.0), 1e-12));
    }
}
