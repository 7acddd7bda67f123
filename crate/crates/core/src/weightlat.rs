//! Young diagrams, SU(N) weights and the quadratic Casimir exponent.
//!
//! Labels of the level-k theory are the diagrams in Γ_{N,k}: fewer than `N`
//! rows, each of length at most `k`. A diagram λ corresponds to the dominant
//! weight with fundamental-weight coordinates `ε_i = λ_i − λ_{i+1}`.

use std::fmt;

use crate::error::{invalid, Result};
use crate::Q;

/// A Young diagram, stored as its non-zero rows in weakly decreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    /// Builds a diagram from rows; trailing zero rows are dropped, anything
    /// else that is not weakly decreasing is rejected.
    pub fn new(rows: &[u32]) -> Result<Self> {
        let mut rows = rows.to_vec();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return invalid(format!("rows {rows:?} are not weakly decreasing and positive"));
        }
        Ok(YoungDiagram { rows })
    }

    /// A single-row diagram with `j` cells (the SU(2) colour `j`).
    pub fn row(j: u32) -> Self {
        if j == 0 {
            Self::empty()
        } else {
            YoungDiagram { rows: vec![j] }
        }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of non-zero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of cells |λ|.
    pub fn size(&self) -> u64 {
        self.rows.iter().map(|&r| r as u64).sum()
    }

    /// `λ_i` with 1-based `i`; zero past the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            panic!("rows are 1-indexed");
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    /// Membership in Γ_{N,k}.
    pub fn in_gamma(&self, n: usize, k: u32) -> bool {
        self.rows.len() < n && self.part(1) <= k
    }

    /// Σ over cells of the content `j − i`.
    pub fn content_sum(&self) -> i64 {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let (i, r) = (i as i64 + 1, r as i64);
                r * (r + 1) / 2 - i * r
            })
            .sum()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("rank parameter N = {n} must be at least 2"));
    }
    Ok(())
}

/// Calls `f` on every diagram of Γ_{N,k} (as a row slice), in graded
/// lexicographic order: by number of cells, then lexicographically by rows.
pub fn for_each_diagram(n: usize, k: u32, mut f: impl FnMut(&[u32])) {
    assert!(n >= 2, "N must be at least 2");
    let max_rows = n - 1;
    let mut buf: Vec<u32> = Vec::with_capacity(max_rows);
    for size in 0..=(max_rows as u64 * k as u64) {
        fill(&mut buf, size, k, max_rows, &mut f);
    }

    fn fill(buf: &mut Vec<u32>, left: u64, cap: u32, rows_left: usize, f: &mut impl FnMut(&[u32])) {
        if left == 0 {
            f(buf);
            return;
        }
        if rows_left == 0 {
            return;
        }
        let lo = left.div_ceil(rows_left as u64);
        let hi = left.min(cap as u64);
        for first in lo..=hi {
            buf.push(first as u32);
            fill(buf, left - first, first as u32, rows_left - 1, f);
            buf.pop();
        }
    }
}

/// All diagrams of Γ_{N,k} in graded lexicographic order. There are
/// `binomial(k+N−1, N−1)` of them.
pub fn enumerate_diagrams(n: usize, k: u32) -> Result<Vec<YoungDiagram>> {
    check_rank(n)?;
    let mut out = Vec::new();
    for_each_diagram(n, k, |rows| out.push(YoungDiagram { rows: rows.to_vec() }));
    Ok(out)
}

/// Coordinates of a weight over the fundamental weights Λ_1, …, Λ_{N−1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    n: usize,
    coeffs: Vec<i64>,
}

impl WeightVector {
    pub fn new(n: usize, coeffs: Vec<i64>) -> Result<Self> {
        check_rank(n)?;
        if coeffs.len() != n - 1 {
            return invalid(format!("SU({n}) weight needs {} coordinates, got {}", n - 1, coeffs.len()));
        }
        Ok(WeightVector { n, coeffs })
    }

    /// ρ = Λ_1 + … + Λ_{N−1}.
    pub fn rho(n: usize) -> Self {
        WeightVector { n, coeffs: vec![1; n - 1] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&e| e >= 0)
    }

    /// Dominant and `⟨λ, θ⟩ = Σ ε_i ≤ k`.
    pub fn in_alcove(&self, k: u32) -> bool {
        self.is_dominant() && self.coeffs.iter().sum::<i64>() <= k as i64
    }

    pub fn add(&self, other: &WeightVector) -> Result<WeightVector> {
        if self.n != other.n {
            return invalid("rank mismatch");
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(WeightVector { n: self.n, coeffs })
    }
}

/// `ε_i = λ_i − λ_{i+1}`, with `λ_N = 0`.
pub fn diagram_to_weight(lambda: &YoungDiagram, n: usize) -> Result<WeightVector> {
    check_rank(n)?;
    if lambda.len() >= n {
        return invalid(format!("diagram {lambda} has {} rows, SU({n}) allows at most {}", lambda.len(), n - 1));
    }
    let coeffs = (1..n).map(|i| lambda.part(i) as i64 - lambda.part(i + 1) as i64).collect();
    Ok(WeightVector { n, coeffs })
}

/// Inverse of [`diagram_to_weight`] on dominant weights: `λ_i = Σ_{m≥i} ε_m`.
pub fn weight_to_diagram(w: &WeightVector) -> Result<YoungDiagram> {
    if !w.is_dominant() {
        return invalid("weight is not dominant");
    }
    let mut rows = vec![0u32; w.n - 1];
    let mut acc = 0i64;
    for i in (0..w.n - 1).rev() {
        acc += w.coeffs[i];
        rows[i] = acc as u32;
    }
    YoungDiagram::new(&rows)
}

/// Gram matrix of the fundamental weights: `G_ij = min(i,j) − ij/N`, the
/// inverse Cartan matrix of A_{N−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProductTable {
    n: usize,
    g: Vec<Vec<Q>>,
}

impl InnerProductTable {
    pub fn new(n: usize) -> Result<Self> {
        check_rank(n)?;
        let nn = n as i64;
        let g = (1..n as i64)
            .map(|i| (1..n as i64).map(|j| Q::from_integer(i.min(j)) - Q::new(i * j, nn)).collect())
            .collect();
        Ok(InnerProductTable { n, g })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Q {
        self.g[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.g
    }

    pub fn pair(&self, mu: &WeightVector, nu: &WeightVector) -> Result<Q> {
        if mu.n != self.n || nu.n != self.n {
            return invalid("rank mismatch");
        }
        let mut s = Q::from_integer(0);
        for (i, &a) in mu.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in nu.coeffs.iter().enumerate() {
                s += self.g[i][j] * (a * b);
            }
        }
        Ok(s)
    }
}

/// `⟨μ, ν⟩ = Σ μ_i ν_j G_ij`, exactly.
pub fn inner_product(mu: &WeightVector, nu: &WeightVector) -> Result<Q> {
    if mu.n != nu.n {
        return invalid(format!("rank mismatch: SU({}) vs SU({})", mu.n, nu.n));
    }
    InnerProductTable::new(mu.n)?.pair(mu, nu)
}

/// `E(λ) = −|λ|² + N²|λ| + 2N Σ cn(i,j)`; the T-matrix entry of λ is `a^{E(λ)}`.
pub fn casimir_exponent(lambda: &YoungDiagram, n: usize) -> i64 {
    casimir_exponent_rows(lambda.rows(), n)
}

pub(crate) fn casimir_exponent_rows(rows: &[u32], n: usize) -> i64 {
    let nn = n as i64;
    let mut size = 0i64;
    let mut cn = 0i64;
    for (i, &r) in rows.iter().enumerate() {
        let (i, r) = (i as i64 + 1, r as i64);
        size += r;
        cn += r * (r + 1) / 2 - i * r;
    }
    -size * size + nn * nn * size + 2 * nn * cn
}

/// Both sides of the Casimir identity
/// `⟨λ+ρ, λ+ρ⟩ − N(N²−1)/12 = E(λ)/N`, evaluated independently.
pub fn casimir_identity_sides(lambda: &YoungDiagram, n: usize) -> Result<(Q, Q)> {
    let table = InnerProductTable::new(n)?;
    let shifted = diagram_to_weight(lambda, n)?.add(&WeightVector::rho(n))?;
    let nn = n as i64;
    let lhs = table.pair(&shifted, &shifted)? - Q::new(nn * (nn * nn - 1), 12);
    let rhs = Q::new(casimir_exponent(lambda, n), nn);
    Ok((lhs, rhs))
}

/// The duality `λ_i ↦ λ_1 − λ_{N+1−i}`; on weights it reverses the
/// coordinates.
pub fn involution_star(lambda: &YoungDiagram, n: usize) -> Result<YoungDiagram> {
    if lambda.len() >= n {
        return invalid(format!("diagram {lambda} is not an SU({n}) label"));
    }
    Ok(YoungDiagram { rows: star_rows(lambda.rows(), n) })
}

pub(crate) fn star_rows(rows: &[u32], n: usize) -> Vec<u32> {
    let part = |i: usize| rows.get(i - 1).copied().unwrap_or(0);
    let first = part(1);
    let mut out: Vec<u32> = (1..n).map(|i| first - part(n + 1 - i)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

pub(crate) fn is_self_dual_rows(rows: &[u32], n: usize) -> bool {
    // ε_i = ε_{N−i}
    let part = |i: usize| rows.get(i - 1).copied().unwrap_or(0) as i64;
    (1..n).all(|i| part(i) - part(i + 1) == part(n - i) - part(n - i + 1))
}

pub fn is_self_dual(lambda: &YoungDiagram, n: usize) -> bool {
    is_self_dual_rows(lambda.rows(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows).unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_diagrams(2, 3).unwrap(), vec![d(&[]), d(&[1]), d(&[2]), d(&[3])]);
        assert_eq!(enumerate_diagrams(5, 0).unwrap(), vec![d(&[])]);
        assert_eq!(enumerate_diagrams(3, 1).unwrap(), vec![d(&[]), d(&[1]), d(&[1, 1])]);
        let g = enumerate_diagrams(3, 2).unwrap();
        assert_eq!(g, vec![d(&[]), d(&[1]), d(&[1, 1]), d(&[2]), d(&[2, 1]), d(&[2, 2])]);
        assert!(enumerate_diagrams(1, 3).is_err());
    }

    #[test]
    fn weights() {
        let w = diagram_to_weight(&d(&[2, 1]), 3).unwrap();
        assert_eq!(w, WeightVector::rho(3));
        assert_eq!(diagram_to_weight(&d(&[]), 4).unwrap().coeffs(), &[0, 0, 0]);
        assert_eq!(diagram_to_weight(&d(&[3]), 2).unwrap().coeffs(), &[3]);
        assert!(diagram_to_weight(&d(&[1, 1, 1]), 3).is_err());
        assert_eq!(weight_to_diagram(&w).unwrap(), d(&[2, 1]));
    }

    #[test]
    fn inner_products() {
        let l1 = WeightVector::new(2, vec![1]).unwrap();
        assert_eq!(inner_product(&l1, &l1).unwrap(), Q::new(1, 2));
        let rho = WeightVector::rho(3);
        assert_eq!(inner_product(&rho, &rho).unwrap(), Q::from_integer(2));
        let v = WeightVector::new(3, vec![2, 1]).unwrap();
        assert_eq!(inner_product(&v, &v).unwrap(), Q::new(14, 3));
        assert!(inner_product(&rho, &l1).is_err());
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_exponent(&d(&[]), 4), 0);
        assert_eq!(casimir_exponent(&d(&[3]), 2), 15);
        assert_eq!(casimir_exponent(&d(&[1]), 3), 8);
        let (lhs, rhs) = casimir_identity_sides(&d(&[1]), 3).unwrap();
        assert_eq!(lhs, Q::new(8, 3));
        assert_eq!(rhs, Q::new(8, 3));
    }

    #[test]
    fn star_examples() {
        assert_eq!(involution_star(&d(&[4]), 2).unwrap(), d(&[4]));
        assert_eq!(involution_star(&d(&[1]), 3).unwrap(), d(&[1, 1]));
        assert_eq!(involution_star(&d(&[2, 1]), 3).unwrap(), d(&[2, 1]));
        assert!(is_self_dual(&d(&[2, 1]), 3));
        assert!(!is_self_dual(&d(&[1]), 3));
    }

    #[test]
    fn self_dual_su3_labels_are_multiples_of_rho() {
        for k in 0..12 {
            let sd: Vec<_> = enumerate_diagrams(3, k).unwrap().into_iter().filter(|l| is_self_dual(l, 3)).collect();
            let expected: Vec<_> = (0..=k / 2).map(|m| d(&[2 * m, m])).collect();
            assert_eq!(sd, expected);
        }
    }
}
