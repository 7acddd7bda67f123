//! Stretch factors of Anosov torus maps recovered from quantum invariants,
//! and fixed-point growth on the moduli space.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};
use crate::wrt::{hyperbolic_modulus, SL2ZMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StretchMethod {
    Invariant,
    RootLimit,
    Spectral,
}

impl fmt::Display for StretchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StretchMethod::Invariant => "invariant",
            StretchMethod::RootLimit => "root",
            StretchMethod::Spectral => "spectral",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StretchEstimate {
    pub lambda: f64,
    pub n: u32,
    pub method: StretchMethod,
}

/// `U^m` over the integers, entries as `[a, b, c, d]`.
pub fn big_power(u: SL2ZMatrix, m: u32) -> [BigInt; 4] {
    let base = [u.a, u.b, u.c, u.d].map(BigInt::from);
    let mut acc = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for _ in 0..m {
        acc = [
            &acc[0] * &base[0] + &acc[1] * &base[2],
            &acc[0] * &base[1] + &acc[1] * &base[3],
            &acc[2] * &base[0] + &acc[3] * &base[2],
            &acc[2] * &base[1] + &acc[3] * &base[3],
        ];
    }
    acc
}

fn require_hyperbolic(u: SL2ZMatrix) -> Result<()> {
    if !u.is_hyperbolic() {
        return invalid(format!("{u} is not Anosov (|trace| ≤ 2)"));
    }
    Ok(())
}

/// Largest eigenvalue modulus `(|t| + √(t²−4))/2`; 1 when `|t| ≤ 2`.
pub fn spectral_radius(u: SL2ZMatrix) -> f64 {
    let t = u.trace().abs() as f64;
    if t <= 2.0 {
        return 1.0;
    }
    (t + (t * t - 4.0).sqrt()) / 2.0
}

pub fn spectral_estimate(u: SL2ZMatrix) -> Result<StretchEstimate> {
    require_hyperbolic(u)?;
    Ok(StretchEstimate { lambda: spectral_radius(u), n: 1, method: StretchMethod::Spectral })
}

/// The level `n((a+d)² − 4) − 2` at which the invariant collapses to
/// `λ^{−1/2}`.
pub fn invariant_level(u: SL2ZMatrix, n: u32) -> Result<u32> {
    require_hyperbolic(u)?;
    let t = u.trace() as i128;
    let k = n as i128 * (t * t - 4) - 2;
    u32::try_from(k).map_err(|_| crate::Error::InvalidArgument(format!("level {k} out of range")))
}

/// `λ = |Z_k(T_U)|^{−2}` at `k = n((a+d)² − 4) − 2`.
pub fn stretch_via_invariant(u: SL2ZMatrix, n: u32) -> Result<StretchEstimate> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let k = invariant_level(u, n)?;
    let z = hyperbolic_modulus(k, u)?;
    Ok(StretchEstimate { lambda: z.powi(-2), n, method: StretchMethod::Invariant })
}

/// Number of fixed points of `U^m` on the SU(2) moduli space of the torus:
/// `|2 + t| + |2 − t| − n`, `t = tr U^m`, `n` the number of points of
/// `R²/Z²` fixed by both `U^m` and `−U^m` (the half-periods fixed by `U^m`).
pub fn fixed_point_count(u: SL2ZMatrix, m: u32) -> Result<BigInt> {
    if m == 0 {
        return invalid("m must be at least 1");
    }
    let p = big_power(u, m);
    let t = &p[0] + &p[3];
    let two = BigInt::from(2);
    if t.abs() == two {
        return invalid(format!("trace of U^{m} is ±2"));
    }
    let mut shared = 0;
    for (x, y) in [(0i64, 0i64), (1, 0), (0, 1), (1, 1)] {
        // (U^m − 1)·(x, y)/2 ∈ Z²
        let fx: BigInt = (&p[0] - 1) * x + &p[1] * y;
        let fy: BigInt = &p[2] * x + (&p[3] - 1) * y;
        if fx.is_even() && fy.is_even() {
            shared += 1;
        }
    }
    Ok((&two + &t).abs() + (&two - &t).abs() - shared)
}

/// `c_{m+1}/c_m`.
pub fn fixed_point_ratio(u: SL2ZMatrix, m: u32) -> Result<f64> {
    let (a, b) = (fixed_point_count(u, m + 1)?, fixed_point_count(u, m)?);
    Ok(a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY))
}

/// `|(√|t−2| − √|t+2|)/2| = 2/(√|t+2| + √|t−2|)`, the collapsed invariant of
/// a hyperbolic monodromy of trace `t` at a level where `r` is divisible by
/// `t² − 4`.
pub fn collapsed_modulus(t: &BigInt) -> f64 {
    let tf = t.to_f64().unwrap_or(f64::INFINITY).abs();
    2.0 / ((tf + 2.0).sqrt() + (tf - 2.0).sqrt())
}

/// The level `k_n = t_n² − 6` attached to `U^n`, `t_n = tr U^n`. It is at
/// least 3 for every Anosov `U` since `|t_n| ≥ 3`.
pub fn root_level(u: SL2ZMatrix, n: u32) -> Result<BigInt> {
    require_hyperbolic(u)?;
    let p = big_power(u, n);
    let t = &p[0] + &p[3];
    Ok(&t * &t - 6)
}

/// `|Z_{k_n}(T_{U^n})|^{−2/n}`, which tends to `λ`.
pub fn root_limit(u: SL2ZMatrix, n: u32) -> Result<StretchEstimate> {
    require_hyperbolic(u)?;
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let p = big_power(u, n);
    let z = collapsed_modulus(&(&p[0] + &p[3]));
    Ok(StretchEstimate { lambda: z.powf(-2.0 / n as f64), n, method: StretchMethod::RootLimit })
}
