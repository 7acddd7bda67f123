use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{invalid, precondition, Result};
use crate::phase::mod1;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// An isolated irreducible connection.
    Point,
    Pillowcase,
    Torus,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Point => "point",
            ComponentKind::Pillowcase => "pillowcase",
            ComponentKind::Torus => "torus",
        })
    }
}

/// A component of the SU(2) moduli space of `M^b`. Reducible components
/// `M_{j/b}` carry their index `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliComponent {
    pub kind: ComponentKind,
    /// Chern-Simons value in `[0, 1)`.
    pub cs: Q,
    pub irreducible: bool,
    pub j: Option<i64>,
}

impl ModuliComponent {
    fn reducible(kind: ComponentKind, j: i64, b: i64) -> Self {
        ModuliComponent { kind, cs: mod1(Q::new(j * j, b)), irreducible: false, j: Some(j) }
    }
}

/// Components for the shear `b`: pillowcases at `j = 0` (and `j = |b|/2`
/// for even b), tori `M_{j/b}` in between, and for odd b one irreducible
/// point with value `−b/4`.
pub fn su2_components(b: i64) -> Result<Vec<ModuliComponent>> {
    if b == 0 {
        return invalid("shear b must be non-zero");
    }
    let ab = b.abs();
    let mut out = vec![ModuliComponent::reducible(ComponentKind::Pillowcase, 0, b)];
    let last_torus = if ab % 2 == 0 { ab / 2 - 1 } else { (ab - 1) / 2 };
    for j in 1..=last_torus {
        out.push(ModuliComponent::reducible(ComponentKind::Torus, j, b));
    }
    if ab % 2 == 0 {
        out.push(ModuliComponent::reducible(ComponentKind::Pillowcase, ab / 2, b));
    } else {
        out.push(ModuliComponent { kind: ComponentKind::Point, cs: mod1(Q::new(-b, 4)), irreducible: true, j: None });
    }
    Ok(out)
}

pub fn cs_set(components: &[ModuliComponent]) -> BTreeSet<Q> {
    components.iter().map(|c| c.cs).collect()
}

fn integral(x: Q) -> bool {
    x.is_integer()
}

/// Chern-Simons value of a completely reducible SU(N) connection with
/// holonomy exponents `a_1, …, a_N`:
/// `½b(Σa_l² + (Σa_l)² − 2a_N Σa_l)` mod 1.
pub fn sun_cs_completely_reducible(n: usize, b: i64, a: &[Q]) -> Result<Q> {
    if a.len() != n {
        return invalid(format!("expected {n} exponents, got {}", a.len()));
    }
    let sum: Q = a.iter().sum();
    if !integral(sum) {
        return precondition("Σa_l must be an integer");
    }
    if a.iter().any(|&x| !integral(x * b)) {
        return precondition("b·a_l must be an integer");
    }
    let sq: Q = a.iter().map(|x| x * x).sum();
    Ok(mod1(Q::new(b, 2) * (sq + sum * sum - a[n - 1] * sum * 2)))
}

/// Chern-Simons value of a connection reducing to blocks of sizes `i_l`
/// with exponents `a_l`:
/// `−½b Σ i_l a_l (i_r a_r − a_l) + ¼((−1)^{b(1 − a_r i_r) Σ i_l a_l} − 1)` mod 1,
/// `r` being the last block.
pub fn sun_cs_partially_reducible(n: usize, b: i64, blocks: &[i64], a: &[Q]) -> Result<Q> {
    if blocks.is_empty() || blocks.len() != a.len() {
        return invalid("need one exponent per block");
    }
    if blocks.iter().any(|&i| i <= 0) || blocks.iter().sum::<i64>() != n as i64 {
        return precondition(format!("block sizes must be positive and sum to {n}"));
    }
    let weighted: Q = blocks.iter().zip(a).map(|(&i, &x)| x * i).sum();
    if !integral(weighted) {
        return precondition("Σ i_l a_l must be an integer");
    }
    if blocks.iter().zip(a).any(|(&i, &x)| !integral(x * (b * i))) {
        return precondition("b·i_l·a_l must be an integer");
    }
    let last = blocks.len() - 1;
    let tail = a[last] * blocks[last];
    let main: Q = blocks.iter().zip(a).map(|(&i, &x)| x * i * (tail - x)).sum::<Q>() * Q::new(-b, 2);
    let expo = ((Q::from_integer(1) - tail) * b * weighted).to_integer();
    let sign = if expo.rem_euclid(2) == 0 { Q::zero() } else { Q::new(-1, 2) };
    Ok(mod1(main + sign))
}

/// `{(n²+m²+nm)/b} ∪ {3n²/4b} ∪ {−b/3}` mod 1, the SU(3) values.
pub fn su3_cs_phase_set(b: i64) -> Result<BTreeSet<Q>> {
    if b == 0 {
        return invalid("shear b must be non-zero");
    }
    let ab = b.abs();
    let mut out = BTreeSet::new();
    for n in 0..3 * ab {
        for m in 0..3 * ab {
            out.insert(mod1(Q::new(n * n + m * m + n * m, b)));
        }
    }
    for n in 0..2 * ab {
        out.insert(mod1(Q::new(3 * n * n, 4 * b)));
    }
    out.insert(mod1(Q::new(-b, 3)));
    debug_assert!(out.iter().all(|q| !q.is_negative()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[(i64, i64)]) -> BTreeSet<Q> {
        v.iter().map(|&(n, d)| Q::new(n, d)).collect()
    }

    #[test]
    fn su2_examples() {
        let c = su2_components(3).unwrap();
        assert_eq!(cs_set(&c), set(&[(0, 1), (1, 3), (1, 4)]));
        assert_eq!(c.iter().filter(|x| x.kind == ComponentKind::Torus).count(), 1);
        assert_eq!(c.iter().filter(|x| x.irreducible).count(), 1);
        let c = su2_components(2).unwrap();
        assert_eq!(cs_set(&c), set(&[(0, 1), (1, 2)]));
        assert_eq!(c.iter().filter(|x| x.kind == ComponentKind::Pillowcase).count(), 2);
        let c = su2_components(-4).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(cs_set(&c), set(&[(0, 1), (3, 4)]));
        assert!(su2_components(0).is_err());
    }

    #[test]
    fn reducible_formulas() {
        assert_eq!(sun_cs_completely_reducible(3, 5, &[Q::zero(); 3]).unwrap(), Q::zero());
        for b in [-5i64, 3, 8] {
            for j in 0..b.abs() {
                let a = [Q::new(j, b), Q::new(-j, b)];
                assert_eq!(sun_cs_completely_reducible(2, b, &a).unwrap(), mod1(Q::new(j * j, b)));
            }
        }
        let a = [Q::from_integer(2), Q::from_integer(-5), Q::from_integer(3)];
        assert_eq!(sun_cs_completely_reducible(3, 1, &a).unwrap(), Q::zero());
        assert!(sun_cs_completely_reducible(2, 3, &[Q::new(1, 2), Q::new(1, 2)]).is_err());
    }

    #[test]
    fn partially_reducible_formula() {
        for b in [-7i64, -2, 1, 3, 6] {
            let v = sun_cs_partially_reducible(2, b, &[2], &[Q::new(1, 2)]).unwrap();
            assert_eq!(v, mod1(Q::new(-b, 4)));
            let v = sun_cs_partially_reducible(3, b, &[3], &[Q::new(1, 3)]).unwrap();
            assert_eq!(v, mod1(Q::new(-b, 3)));
            for n in 0..2 * b.abs() {
                let a = [Q::new(b - n, b), Q::new(n, 2 * b)];
                let v = sun_cs_partially_reducible(3, b, &[1, 2], &a).unwrap();
                assert_eq!(v, mod1(Q::new(3 * n * n, 4 * b)), "b={b} n={n}");
            }
        }
        assert!(sun_cs_partially_reducible(3, 1, &[1, 1], &[Q::zero(), Q::zero()]).is_err());
    }

    #[test]
    fn su3_example() {
        assert_eq!(su3_cs_phase_set(1).unwrap(), set(&[(0, 1), (3, 4), (2, 3)]));
        // The two quadratic forms n²+m²±nm take the same values mod b.
        for b in [1i64, 2, -3, 5] {
            let plus: BTreeSet<Q> =
                (0..3 * b.abs()).flat_map(|n| (0..3 * b.abs()).map(move |m| mod1(Q::new(n * n + m * m + n * m, b)))).collect();
            let minus: BTreeSet<Q> =
                (0..3 * b.abs()).flat_map(|n| (0..3 * b.abs()).map(move |m| mod1(Q::new(n * n + m * m - n * m, b)))).collect();
            assert_eq!(plus, minus);
        }
    }
}
