//! SU(3) closed forms.

use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::phase::expi_pi;
use crate::C64;

/// Gauss-sum closed form for the shear bundle `M^b` at SU(3):
///
/// `e^{2πib/r} ( −(√3 i r/54b) Σ_{n,m<3|b|} e^{2πir(n²+m²−nm)/b}
///   − ½√(3r/2|b|) e^{−iπ sgn(b)/4} Σ_{n<2|b|} e^{3πirn²/2b} + ⅓ + ⅔e^{−2πirb/3} )`.
pub fn invariant_su3_closed(k: u32, b: i64) -> Result<C64> {
    if b == 0 {
        return invalid("shear b = 0 has no Gauss-sum closed form; use the trace sum");
    }
    let (r, bb) = (k as i128 + 3, b as i128);
    let ab = bb.abs();
    let mut double = C64::zero();
    for n in 0..3 * ab {
        for m in 0..3 * ab {
            double += expi_pi(2 * r * (n * n + m * m - n * m), bb);
        }
    }
    let single: C64 = (0..2 * ab).map(|n| expi_pi(3 * r * n * n, 2 * bb)).sum();
    let rf = r as f64;
    let inner = -C64::i() * (3f64.sqrt() * rf / (54.0 * b as f64)) * double
        - 0.5 * (3.0 * rf / (2.0 * ab as f64)).sqrt() * expi_pi(-(b.signum() as i128), 4) * single
        + 1.0 / 3.0
        + 2.0 / 3.0 * expi_pi(-2 * r * bb, 3);
    Ok(expi_pi(2 * bb, r) * inner)
}

/// The trace −2 bundle `M̃^1` at SU(3):
/// `e^{2πi/r}(½(s−1) + (½s − ¼)e^{iπr/2} − ¼e^{−iπr/2})` with `s = √(r/2) e^{−iπ/4}`.
pub fn invariant_su3_tilde1(k: u32) -> C64 {
    let r = k as i128 + 3;
    let s = (r as f64 / 2.0).sqrt() * expi_pi(-1, 4);
    expi_pi(2, r) * (0.5 * (s - 1.0) + (0.5 * s - 0.25) * expi_pi(r, 2) - 0.25 * expi_pi(-r, 2))
}
