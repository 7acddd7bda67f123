//! Reciprocity for Gauss sums over a lattice:
//!
//! `vol(Λ*) Σ_{λ∈Λ/rΛ} e^{iπ⟨λ,Bλ⟩/r} e^{2πi⟨λ,ψ⟩}
//!   = det(B/i)^{−1/2} r^{l/2} Σ_{μ∈Λ*/BΛ*} e^{−iπ r⟨μ+ψ, B⁻¹(μ+ψ)⟩}`.
//!
//! Lattice vectors are written in the chosen basis, dual vectors and `ψ` in
//! the dual basis, so `⟨x, y⟩ = xᵀGy` for lattice vectors and
//! `⟨x, ψ⟩ = x·ψ`. With `S = GB`, the dual lattice picks up the action of
//! `Bᵀ` and the form on the right-hand side is `S⁻¹`.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::snf::enumerate_quotient;
use crate::error::{invalid, precondition, Error, Result};
use crate::phase::RationalPhase;
use crate::{Q, C64};

type QMat = Vec<Vec<Q>>;

fn qmat(m: &[Vec<i64>]) -> QMat {
    m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect()
}

fn is_square(m: &[Vec<Q>], n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Determinant over Q by fraction-free-free Gaussian elimination.
pub(crate) fn det_q(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a[c][j];
                a[r][j] -= f * v;
            }
        }
    }
    det
}

pub(crate) fn inverse_q(m: &[Vec<Q>]) -> Result<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(p, c);
        let inv = Q::one() / a[c][c];
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for j in 0..2 * n {
                    let v = a[c][j];
                    a[r][j] -= f * v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Signature of a non-singular symmetric rational matrix, by symmetric
/// elimination (Sylvester's law of inertia).
pub(crate) fn signature_q(m: &[Vec<Q>]) -> Result<i32> {
    let mut a = m.to_vec();
    let mut sig = 0;
    while !a.is_empty() {
        let n = a.len();
        if a[0][0].is_zero() {
            if let Some(j) = (1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(0, j);
                for row in a.iter_mut() {
                    row.swap(0, j);
                }
            } else if let Some(j) = (1..n).find(|&j| !a[0][j].is_zero()) {
                // e_0 ← e_0 + e_j makes the leading entry 2a_{0j}.
                for c in 0..n {
                    let v = a[j][c];
                    a[0][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j];
                    row[0] += v;
                }
            } else {
                return Err(Error::Singular);
            }
        }
        let p = a[0][0];
        sig += if p.is_positive() { 1 } else { -1 };
        let rest: QMat = (1..n).map(|i| (1..n).map(|j| a[i][j] - a[i][0] * a[0][j] / p).collect()).collect();
        a = rest;
    }
    Ok(sig)
}

/// A lattice given by the Gram matrix of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: QMat,
    dual_gram: QMat,
}

impl IntegralLattice {
    pub fn new(gram: QMat) -> Result<Self> {
        let l = gram.len();
        if l == 0 || !is_square(&gram, l) {
            return invalid("Gram matrix must be square and non-empty");
        }
        for i in 0..l {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return invalid("Gram matrix is not symmetric");
                }
            }
        }
        for t in 1..=l {
            let minor: QMat = gram[..t].iter().map(|r| r[..t].to_vec()).collect();
            if !det_q(&minor).is_positive() {
                return invalid("Gram matrix is not positive definite");
            }
        }
        let dual_gram = inverse_q(&gram)?;
        Ok(IntegralLattice { gram, dual_gram })
    }

    pub fn from_integer_gram(g: &[Vec<i64>]) -> Result<Self> {
        Self::new(qmat(g))
    }

    /// The standard lattice Z^l.
    pub fn standard(l: usize) -> Self {
        let g: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| (i == j) as i64).collect()).collect();
        Self::from_integer_gram(&g).expect("identity is a Gram matrix")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn dual_gram(&self) -> &[Vec<Q>] {
        &self.dual_gram
    }

    pub fn vol(&self) -> f64 {
        let d = det_q(&self.gram);
        (*d.numer() as f64 / *d.denom() as f64).sqrt()
    }

    pub fn dual_vol(&self) -> f64 {
        1.0 / self.vol()
    }
}

/// Data of one reciprocity instance. Construction enforces self-adjointness
/// of `B` and the six integrality conditions; `r` must be positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSumProblem {
    lattice: IntegralLattice,
    b: Vec<Vec<i64>>,
    psi: Vec<Q>,
    r: i64,
    /// `S = GB`, the quadratic form on the lattice.
    s: QMat,
    s_inv: QMat,
    audit: bool,
}

impl GaussSumProblem {
    pub fn new(lattice: IntegralLattice, b: Vec<Vec<i64>>, psi: Vec<Q>, r: i64) -> Result<Self> {
        let l = lattice.rank();
        if b.len() != l || b.iter().any(|row| row.len() != l) || psi.len() != l {
            return invalid("dimension mismatch between lattice, B and ψ");
        }
        if r <= 0 {
            return invalid(format!("modulus r = {r} must be positive"));
        }
        let bq = qmat(&b);
        let g = lattice.gram();
        let s: QMat = (0..l).map(|i| (0..l).map(|j| (0..l).map(|k| g[i][k] * bq[k][j]).sum()).collect()).collect();
        for i in 0..l {
            for j in 0..i {
                if s[i][j] != s[j][i] {
                    return invalid("B is not self-adjoint for the Gram matrix");
                }
            }
        }
        let s_inv = inverse_q(&s).map_err(|_| Error::Singular)?;
        let p = GaussSumProblem { lattice, b, psi, r, s, s_inv, audit: false };
        let bad = p.integrality_violations();
        if !bad.is_empty() {
            return precondition(bad.join("; "));
        }
        Ok(p)
    }

    /// Request a brute-force comparison of both sides whenever the
    /// reciprocal side is evaluated.
    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn psi(&self) -> &[Q] {
        &self.psi
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// The integrality hypotheses, checked on basis vectors. Returns a
    /// description of each failure.
    pub fn integrality_violations(&self) -> Vec<String> {
        let l = self.rank();
        let r = Q::from_integer(self.r);
        let half_r = r / 2;
        let ginv = self.lattice.dual_gram();
        // ⟨μ, Bμ'⟩ on the dual lattice has matrix G⁻¹ S G⁻¹ = B G⁻¹.
        let bq = qmat(&self.b);
        let mstar: QMat = (0..l).map(|i| (0..l).map(|j| (0..l).map(|k| bq[i][k] * ginv[k][j]).sum()).collect()).collect();
        let mut bad = Vec::new();
        for i in 0..l {
            if !is_integer(&(half_r * self.s[i][i])) {
                bad.push(format!("r⟨e{i},Be{i}⟩/2 not integral"));
            }
            if !is_integer(&(half_r * mstar[i][i])) {
                bad.push(format!("r⟨e*{i},Be*{i}⟩/2 not integral"));
            }
            if !is_integer(&(r * self.psi[i])) {
                bad.push(format!("r⟨e{i},ψ⟩ not integral"));
            }
            let gpsi: Q = (0..l).map(|j| ginv[i][j] * self.psi[j]).sum();
            if !is_integer(&(r * gpsi)) {
                bad.push(format!("r⟨e*{i},ψ⟩ not integral"));
            }
            for j in 0..l {
                if !is_integer(&self.s[i][j]) {
                    bad.push(format!("⟨e{i},Be{j}⟩ not integral"));
                }
                if !is_integer(&(r * ginv[i][j])) {
                    bad.push(format!("r⟨e*{i},e*{j}⟩ not integral"));
                }
                if i != j && !is_integer(&(r * mstar[i][j])) {
                    bad.push(format!("r⟨e*{i},Be*{j}⟩ not integral"));
                }
            }
        }
        bad
    }

    pub fn det_b(&self) -> i64 {
        let d = det_q(&qmat(&self.b));
        d.to_integer()
    }

    /// Signature of `B` as a self-adjoint operator.
    pub fn signature(&self) -> i32 {
        signature_q(&self.s).expect("B is invertible")
    }

    fn bt(&self) -> Vec<Vec<i64>> {
        let l = self.rank();
        (0..l).map(|i| (0..l).map(|j| self.b[j][i]).collect()).collect()
    }

    fn rhs_sum(&self) -> C64 {
        let l = self.rank();
        let reps = enumerate_quotient(&self.bt()).expect("B is invertible");
        let r = Q::from_integer(self.r);
        let mut acc = C64::new(0.0, 0.0);
        for y in reps {
            let z: Vec<Q> = (0..l).map(|i| Q::from_integer(y[i]) + self.psi[i]).collect();
            let mut quad = Q::zero();
            for i in 0..l {
                for j in 0..l {
                    quad += z[i] * self.s_inv[i][j] * z[j];
                }
            }
            acc += RationalPhase::from_q(-r * quad).to_c64();
        }
        acc
    }
}

/// `vol(Λ*) Σ_{x∈[0,r)^l} e^{iπ xᵀSx/r} e^{2πi x·ψ}`, in lexicographic order
/// of `x`.
pub fn lattice_gauss_lhs(p: &GaussSumProblem) -> C64 {
    let l = p.rank();
    let r = p.r;
    let mut x = vec![0i64; l];
    let mut acc = C64::new(0.0, 0.0);
    let total = (r as usize).pow(l as u32);
    for _ in 0..total {
        let mut q = Q::zero();
        for i in 0..l {
            q += p.psi[i] * (2 * x[i]);
            for j in 0..l {
                q += p.s[i][j] * Q::new(x[i] * x[j], r);
            }
        }
        acc += RationalPhase::from_q(q).to_c64();
        for xi in x.iter_mut().rev() {
            *xi += 1;
            if *xi < r {
                break;
            }
            *xi = 0;
        }
    }
    acc * p.lattice.dual_vol()
}

/// Right-hand side with `det(B/i)^{−1/2} = |det B|^{−1/2} e^{iπσ/4}`, σ the
/// signature of `B`; this is the product of principal square roots taken
/// eigenvalue by eigenvalue. With `audit` set, the result is checked
/// against the left-hand side.
pub fn lattice_gauss_rhs(p: &GaussSumProblem) -> Result<C64> {
    let l = p.rank() as i32;
    let pre = (p.det_b().abs() as f64).powf(-0.5)
        * RationalPhase::new(p.signature() as i128, 4).to_c64()
        * (p.r as f64).powf(l as f64 / 2.0);
    let rhs = pre * p.rhs_sum();
    if p.audit {
        let lhs = lattice_gauss_lhs(p);
        let tol = 1e-9 * (p.r as f64).powi(l);
        if (lhs - rhs).norm() > tol {
            return precondition(format!("branch audit failed: |LHS − RHS| = {:.3e}", (lhs - rhs).norm()));
        }
    }
    Ok(rhs)
}

/// Right-hand side with the principal branch of `det(B/i)^{−1/2}` taken on
/// the full determinant (cut on the negative real axis).
pub fn lattice_gauss_rhs_principal(p: &GaussSumProblem) -> C64 {
    let l = p.rank();
    // (1/i)^l = (−i)^l, exactly.
    let unit = [C64::new(1.0, 0.0), C64::new(0.0, -1.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0)][l % 4];
    let w = unit * p.det_b() as f64;
    w.powf(-0.5) * (p.r as f64).powf(l as f64 / 2.0) * p.rhs_sum()
}

/// Residuals of both branch conventions against the brute-force sum.
#[derive(Clone, Copy, Debug)]
pub struct BranchAudit {
    pub signature_residual: f64,
    pub principal_residual: f64,
}

pub fn audit_branch(p: &GaussSumProblem) -> BranchAudit {
    let lhs = lattice_gauss_lhs(p);
    let q = p.clone().with_audit(false);
    BranchAudit {
        signature_residual: (lhs - lattice_gauss_rhs(&q).expect("audit disabled")).norm(),
        principal_residual: (lhs - lattice_gauss_rhs_principal(&q)).norm(),
    }
}

const GRAMS: &[&[&[i64]]] = &[
    &[&[1]],
    &[&[2]],
    &[&[1, 0], &[0, 1]],
    &[&[1, 0], &[0, 2]],
    &[&[2, -1], &[-1, 2]],
    &[&[2, 1], &[1, 2]],
    &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
    &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]],
    &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]],
];

/// A random problem of rank ≤ 3, modulus ≤ 8 and `|B_ij| ≤ 4` satisfying
/// every hypothesis. `B = TG` with `T` symmetric, so `GB = GTG` is
/// automatically symmetric; the remaining conditions are met by rejection.
pub fn random_problem<R: Rng>(rng: &mut R) -> GaussSumProblem {
    loop {
        let g: Vec<Vec<i64>> = GRAMS[rng.random_range(0..GRAMS.len())].iter().map(|r| r.to_vec()).collect();
        let l = g.len();
        let mut t = vec![vec![0i64; l]; l];
        for i in 0..l {
            for j in i..l {
                let v = rng.random_range(-2..=2);
                t[i][j] = v;
                t[j][i] = v;
            }
        }
        let b: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| (0..l).map(|k| t[i][k] * g[k][j]).sum()).collect()).collect();
        if b.iter().flatten().any(|x| x.abs() > 4) {
            continue;
        }
        let r = rng.random_range(1..=8);
        let psi: Vec<Q> = (0..l)
            .map(|_| if rng.random_bool(0.5) { Q::zero() } else { Q::new(rng.random_range(0..r), r) })
            .collect();
        let lattice = IntegralLattice::from_integer_gram(&g).expect("table entries are Gram matrices");
        if let Ok(p) = GaussSumProblem::new(lattice, b, psi, r) {
            return p;
        }
    }
}
