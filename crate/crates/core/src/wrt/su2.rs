//! SU(2): closed forms, colours, S-matrix and the framing anomaly.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_traits::Zero;

use super::{t_phase_rows, FiniteOrderTag};
use crate::error::{invalid, Result};
use crate::phase::{expi_pi, RationalPhase};
use crate::weightlat::{inner_product, WeightVector};
use crate::{Q, C64};

fn check_colour(k: u32, j: u32) -> Result<()> {
    if j > k {
        return invalid(format!("colour {j} exceeds level {k}"));
    }
    Ok(())
}

fn nonzero_shear(b: i64) -> Result<()> {
    if b == 0 {
        return invalid("shear b = 0 has no Gauss-sum closed form; use the trace sum");
    }
    Ok(())
}

/// `a^{2m}` for SU(2), i.e. `e^{−iπm/r}`.
fn a2(r: i128, m: i128) -> C64 {
    expi_pi(-m, r)
}

/// Eigenvalue of the colour-j curve operator on basis vector l:
/// `(a^{2(j+1)(l+1)} − a^{−2(j+1)(l+1)}) / (a^{2(l+1)} − a^{−2(l+1)})`.
pub fn curve_operator_eigenvalue(k: u32, j: u32, l: u32) -> Result<f64> {
    check_colour(k, j)?;
    if l > k {
        return invalid(format!("basis index {l} exceeds level {k}"));
    }
    let r = k as i128 + 2;
    let m = (j as i128 + 1) * (l as i128 + 1);
    let num = a2(r, m) - a2(r, -m);
    let den = a2(r, l as i128 + 1) - a2(r, -(l as i128) - 1);
    Ok((num / den).re)
}

/// Invariant of the bundle with a colour-j fibre-parallel knot, summed
/// directly: `Σ_n a^{b(n²+2n)} · eigenvalue(j, n)`.
pub fn invariant_su2_link_direct(k: u32, b: i64, j: u32) -> Result<C64> {
    check_colour(k, j)?;
    let mut acc = C64::zero();
    for n in 0..=k {
        let t = t_phase_rows(2, k, &[n]).pow(b).to_c64();
        acc += t * curve_operator_eigenvalue(k, j, n)?;
    }
    Ok(acc)
}

/// Gauss-sum closed form of [`invariant_su2_link_direct`].
pub fn invariant_su2_link_closed(k: u32, b: i64, j: u32) -> Result<C64> {
    check_colour(k, j)?;
    nonzero_shear(b)?;
    let (r, bb, jj) = (k as i128 + 2, b as i128, j as i128);
    let sgn = b.signum() as i128;
    let mut gauss = C64::zero();
    for n in 0..bb.abs() {
        for l in 0..=jj {
            // e^{2πi r n²/b} e^{2πi((2l−j)²/(4br) + (2l−j)n/b)} = e^{iπ(2rn+2l−j)²/(2br)}
            let m = 2 * r * n + 2 * l - jj;
            gauss += expi_pi(m * m, 2 * bb * r);
        }
    }
    let jf = j as f64 + 1.0;
    let parity = if j % 2 == 0 { 1.0 } else { -1.0 };
    let inner = (r as f64 / (2.0 * bb.abs() as f64)).sqrt() * expi_pi(-sgn, 4) * gauss
        - jf / 2.0
        - parity * jf / 2.0 * expi_pi(-bb * r, 2);
    Ok(expi_pi(bb, 2 * r) * inner)
}

/// `e^{iπb/2r} (√(r/2|b|) e^{−iπ sgn(b)/4} Σ_{n<|b|} e^{2πirn²/b} − ½ − ½e^{−iπrb/2})`.
pub fn invariant_su2_closed(k: u32, b: i64) -> Result<C64> {
    nonzero_shear(b)?;
    let (r, bb) = (k as i128 + 2, b as i128);
    let gauss: C64 = (0..bb.abs()).map(|n| expi_pi(2 * r * n * n, bb)).sum();
    let inner = (r as f64 / (2.0 * bb.abs() as f64)).sqrt() * expi_pi(-(b.signum() as i128), 4) * gauss
        - 0.5
        - 0.5 * expi_pi(-r * bb, 2);
    Ok(expi_pi(bb, 2 * r) * inner)
}

/// Values on the periodic mapping tori, up to framing.
pub fn invariant_finite_order(k: u32, tag: FiniteOrderTag) -> C64 {
    let r = k as i128 + 2;
    let c = 1.0 / (2.0 * 3f64.sqrt());
    let i = C64::i();
    match tag {
        FiniteOrderTag::Id | FiniteOrderTag::Varpi => C64::new(r as f64 - 1.0, 0.0),
        FiniteOrderTag::F3 => i * c * (2.0 * expi_pi(-2 * r, 3) + 1.0) - 0.5,
        FiniteOrderTag::F4 => (expi_pi(r, 1) + 1.0) / 2.0,
        FiniteOrderTag::F6 => i * c * (2.0 * expi_pi(2 * r, 3) + 1.0) + 0.5,
        FiniteOrderTag::F3Inv => invariant_finite_order(k, FiniteOrderTag::F3).conj(),
        FiniteOrderTag::F4Inv => invariant_finite_order(k, FiniteOrderTag::F4).conj(),
        FiniteOrderTag::F6Inv => invariant_finite_order(k, FiniteOrderTag::F6).conj(),
    }
}

/// `S_{jl} = √(2/r) sin(π(j+1)(l+1)/r)`.
pub fn s_matrix(k: u32) -> DMatrix<f64> {
    let r = k as f64 + 2.0;
    let n = k as usize + 1;
    DMatrix::from_fn(n, n, |j, l| (2.0 / r).sqrt() * (PI * ((j + 1) * (l + 1)) as f64 / r).sin())
}

/// Quantum integer `[n] = (a^{2n} − a^{−2n})/(a² − a^{−2})`.
pub fn quantum_integer(k: u32, n: i64) -> f64 {
    let r = k as i128 + 2;
    let n = n as i128;
    ((a2(r, n) - a2(r, -n)) / (a2(r, 1) - a2(r, -1))).re
}

/// The Hopf-link matrix `s_{jl} = [(j+1)(l+1)]`.
pub fn s_hopf(k: u32) -> DMatrix<f64> {
    let n = k as usize + 1;
    DMatrix::from_fn(n, n, |j, l| quantum_integer(k, ((j + 1) * (l + 1)) as i64))
}

/// `D = √(r/2) / sin(π/r)`, so that `S = D⁻¹ s`.
pub fn rank_d(k: u32) -> f64 {
    let r = k as f64 + 2.0;
    (r / 2.0).sqrt() / (PI / r).sin()
}

/// `D⁻¹ Σ_j T_{jj}⁻¹ [j+1]²`.
pub fn framing_factor(k: u32) -> C64 {
    let delta: C64 = (0..=k)
        .map(|j| {
            let q = quantum_integer(k, j as i64 + 1);
            t_phase_rows(2, k, &[j]).conj().to_c64() * (q * q)
        })
        .sum();
    delta / rank_d(k)
}

/// Level-k central charge `(N²−1)k/r`.
pub fn central_charge(n: usize, k: u32) -> Q {
    let nn = n as i64;
    Q::new((nn * nn - 1) * k as i64, k as i64 + nn)
}

/// `e^{2πic/24}`.
pub fn anomaly_phase(n: usize, k: u32) -> RationalPhase {
    RationalPhase::turns(central_charge(n, k) / 24)
}

/// Conformal-field-theory normalisation of the T-matrix,
/// `exp(iπ⟨λ+ρ,λ+ρ⟩/r − iπ⟨ρ,ρ⟩/N)`, from weights.
pub fn t_cft(n: usize, k: u32, weight: &WeightVector) -> Result<RationalPhase> {
    if weight.rank() != n {
        return invalid("weight has the wrong rank");
    }
    let rho = WeightVector::rho(n);
    let shifted = weight.add(&rho)?;
    let q = inner_product(&shifted, &shifted)? / (k as i64 + n as i64) - inner_product(&rho, &rho)? / n as i64;
    Ok(RationalPhase::from_q(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wrt::{invariant_direct, BundleClass};

    #[test]
    fn eigenvalues() {
        for k in 0..6 {
            for l in 0..=k {
                assert!((curve_operator_eigenvalue(k, 0, l).unwrap() - 1.0).abs() < 1e-12);
            }
        }
        assert!(curve_operator_eigenvalue(2, 1, 1).unwrap().abs() < 1e-12);
        let want = (PI * 8.0 / 9.0).sin() / (PI / 9.0).sin();
        assert!((curve_operator_eigenvalue(7, 7, 0).unwrap() - want).abs() < 1e-12);
        assert!(curve_operator_eigenvalue(2, 3, 0).is_err());
    }

    #[test]
    fn small_links() {
        let z = invariant_su2_link_direct(1, 1, 1).unwrap();
        assert!((z - C64::new(1.0, 1.0)).norm() < 1e-12);
        let z = invariant_su2_link_closed(1, 1, 1).unwrap();
        assert!((z - C64::new(1.0, 1.0)).norm() < 1e-12);
        let z = invariant_su2_link_closed(1, 1, 0).unwrap();
        assert!((z - C64::new(1.0, -1.0)).norm() < 1e-12);
        for (k, b, j) in [(2, -1, 2), (10, 3, 2)] {
            let d = invariant_su2_link_direct(k, b, j).unwrap();
            let c = invariant_su2_link_closed(k, b, j).unwrap();
            assert!((d - c).norm() < 1e-10);
        }
    }

    #[test]
    fn linkless_closed_form() {
        for (k, b) in [(1, 1), (200, 5), (7, -4)] {
            let d = invariant_direct(2, k, BundleClass::Trace2(b)).unwrap().value;
            let c = invariant_su2_closed(k, b).unwrap();
            assert!((d - c).norm() < 1e-9, "{k} {b}");
        }
        assert!(invariant_su2_closed(3, 0).is_err());
    }

    #[test]
    fn finite_order_values() {
        for k in 0..20 {
            assert_eq!(invariant_finite_order(k, FiniteOrderTag::Id), C64::new(k as f64 + 1.0, 0.0));
            if k % 2 == 1 {
                assert!(invariant_finite_order(k, FiniteOrderTag::F4).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn s_matrix_basics() {
        assert!((s_matrix(0)[(0, 0)] - 1.0).abs() < 1e-15);
        let s = s_matrix(1)[(0, 0)];
        assert!((s - (2.0f64 / 3.0).sqrt() * (PI / 3.0).sin()).abs() < 1e-15);
        for k in [1, 5, 40] {
            let s = s_matrix(k);
            let id = DMatrix::<f64>::identity(k as usize + 1, k as usize + 1);
            assert!((&s * s.transpose() - id).amax() < 1e-10);
            assert!((s_hopf(k) / rank_d(k) - s).amax() < 1e-10);
        }
    }

    #[test]
    fn framing_anomaly() {
        for k in [0, 1, 2, 50] {
            let want = anomaly_phase(2, k).pow(3).to_c64();
            assert!((framing_factor(k) - want).norm() < 1e-10, "k = {k}");
        }
    }
}
