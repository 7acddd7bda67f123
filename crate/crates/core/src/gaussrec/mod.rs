//! Quadratic Gauss sums and their reciprocity transforms.
//!
//! Every summand's exponent is reduced modulo 2 as an exact rational before
//! the single call that turns it into a complex number.

mod lattice;
mod snf;

pub use lattice::{
    audit_branch, lattice_gauss_lhs, lattice_gauss_rhs, lattice_gauss_rhs_principal, random_problem, BranchAudit,
    GaussSumProblem, IntegralLattice,
};
pub use snf::{enumerate_quotient, smith_normal_form, Smith};

use crate::error::{invalid, Result};
use crate::phase::expi_pi;
use crate::C64;

fn check_triple(a: i64, b: i64, c: i64) -> Result<()> {
    if a == 0 || c == 0 {
        return invalid(format!("Gauss sum ({a},{b},{c}) needs a and c non-zero"));
    }
    if (a as i128 * c as i128 + b as i128) % 2 != 0 {
        return invalid(format!("Gauss sum ({a},{b},{c}) needs ac+b even"));
    }
    Ok(())
}

/// `Σ_{n=0}^{|c|−1} e^{iπ(an²+bn)/c}`, summed directly.
pub fn gauss_sum_1d(a: i64, b: i64, c: i64) -> Result<C64> {
    check_triple(a, b, c)?;
    let (a, b, c) = (a as i128, b as i128, c as i128);
    Ok((0..c.abs()).map(|n| expi_pi(a * n * n + b * n, c)).sum())
}

/// The reciprocal side:
/// `|c/a|^{1/2} e^{iπ(|ac|−b²)/(4ac)} Σ_{n=0}^{|a|−1} e^{−iπ(cn²+bn)/a}`.
pub fn reciprocity_rhs_1d(a: i64, b: i64, c: i64) -> Result<C64> {
    check_triple(a, b, c)?;
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let pre = ((c as f64) / (a as f64)).abs().sqrt() * expi_pi((a * c).abs() - b * b, 4 * a * c);
    let s: C64 = (0..a.abs()).map(|n| expi_pi(-(c * n * n + b * n), a)).sum();
    Ok(pre * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let z = gauss_sum_1d(2, 0, 3).unwrap();
        assert!((z - C64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        assert!((gauss_sum_1d(2, 0, 1).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        let r = reciprocity_rhs_1d(2, 0, 3).unwrap();
        assert!((r - C64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn both_sides_agree() {
        for (a, b, c) in [(4, 2, 5), (-3, 1, 5), (1, 1, 7), (1, -1, 3), (6, 0, -7), (5, 3, 9)] {
            let l = gauss_sum_1d(a, b, c).unwrap();
            let r = reciprocity_rhs_1d(a, b, c).unwrap();
            assert!((l - r).norm() < 1e-12, "({a},{b},{c}): {l} vs {r}");
        }
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(gauss_sum_1d(1, 0, 3).is_err());
        assert!(gauss_sum_1d(0, 0, 2).is_err());
        assert!(reciprocity_rhs_1d(2, 0, 0).is_err());
    }
}
