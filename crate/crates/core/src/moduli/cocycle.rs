//! Twisted cohomology `H^*(π₁(M^b); su(2))` at a flat connection.
//!
//! `π₁` is generated by `A, B` (the fibre) and `C` (the circle) with
//! `AB = BA`, `CAC⁻¹ = A`, `CBC⁻¹ = A^m B`, `m = −b`. A 1-cocycle is fixed
//! by its values `(x₁, x₂, x₃)` on the generators; the relator map `R`
//! cuts out the cocycles and the coboundaries are
//! `(x − Ad(A)x, x − Ad(B)x, x − Ad(C)x)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ComponentKind, ModuliComponent};
use crate::error::{invalid, precondition, Result};
use crate::{Q, C64};

pub const RANK_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
const RELATION_TOLERANCE: f64 = 1e-10;
const SAMPLES: usize = 32;

type M2 = Matrix2<C64>;

/// Holonomies of a flat SU(2) connection on `M^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionTriple {
    pub a: M2,
    pub b: M2,
    pub c: M2,
    pub m: i64,
}

fn is_su2(g: &M2) -> bool {
    (g * g.adjoint() - M2::identity()).norm() < RELATION_TOLERANCE && (g.determinant() - C64::one()).norm() < RELATION_TOLERANCE
}

fn su2_pow(g: &M2, n: i64) -> M2 {
    let base = if n < 0 { g.adjoint() } else { *g };
    (0..n.unsigned_abs()).fold(M2::identity(), |acc, _| acc * base)
}

impl ConnectionTriple {
    pub fn new(a: M2, b: M2, c: M2, m: i64) -> Result<Self> {
        if ![a, b, c].iter().all(is_su2) {
            return invalid("holonomies must lie in SU(2)");
        }
        let t = ConnectionTriple { a, b, c, m };
        let worst = t.relation_residual();
        if worst > RELATION_TOLERANCE {
            return precondition(format!("relations fail by {worst:.3e}"));
        }
        Ok(t)
    }

    /// Largest of `‖AB − BA‖`, `‖CAC⁻¹ − A‖`, `‖CBC⁻¹ − A^m B‖`.
    pub fn relation_residual(&self) -> f64 {
        let ci = self.c.adjoint();
        [
            (self.a * self.b - self.b * self.a).norm(),
            (self.c * self.a * ci - self.a).norm(),
            (self.c * self.b * ci - su2_pow(&self.a, self.m) * self.b).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Simultaneous conjugation by `g`.
    pub fn conjugate(&self, g: &M2) -> Self {
        let gi = g.adjoint();
        ConnectionTriple { a: g * self.a * gi, b: g * self.b * gi, c: g * self.c * gi, m: self.m }
    }
}

fn basis() -> [M2; 3] {
    let i = C64::i();
    let (z, o) = (C64::zero(), C64::one());
    [M2::new(z, i, i, z), M2::new(z, -o, o, z), M2::new(i, z, z, -i)]
}

fn coords(x: &M2) -> [f64; 3] {
    [x[(0, 1)].im, -x[(0, 1)].re, x[(0, 0)].im]
}

/// `Ad(g)x = gxg⁻¹` on su(2) in the basis `e₁, e₂, e₃`.
fn ad(g: &M2) -> Matrix3<f64> {
    let gi = g.adjoint();
    let mut out = Matrix3::zeros();
    for (col, e) in basis().iter().enumerate() {
        let v = coords(&(g * e * gi));
        for row in 0..3 {
            out[(row, col)] = v[row];
        }
    }
    out
}

/// `Σ_{0≤n<m} Ad(Aⁿ)` for `m ≥ 0` and `−Σ_{1≤n≤|m|} Ad(A^{−n})` for
/// `m < 0`: the derivative of `A^m` along a cocycle.
fn power_sum(a: &M2, m: i64) -> Matrix3<f64> {
    let mut s = Matrix3::zeros();
    if m >= 0 {
        for n in 0..m {
            s += ad(&su2_pow(a, n));
        }
    } else {
        for n in 1..=-m {
            s -= ad(&su2_pow(a, -n));
        }
    }
    s
}

fn place(out: &mut DMatrix<f64>, bi: usize, bj: usize, block: &Matrix3<f64>) {
    out.view_mut((3 * bi, 3 * bj), (3, 3)).copy_from(block);
}

/// The 9×9 relator matrix acting on `(x₁, x₂, x₃) ∈ su(2)³`.
pub fn cocycle_matrix(t: &ConnectionTriple) -> Result<DMatrix<f64>> {
    let worst = t.relation_residual();
    if worst > RELATION_TOLERANCE {
        return precondition(format!("relations fail by {worst:.3e}"));
    }
    let id = Matrix3::identity();
    let (ad_a, ad_b, ad_c) = (ad(&t.a), ad(&t.b), ad(&t.c));
    let ad_amb = ad(&(su2_pow(&t.a, t.m) * t.b));
    let mut r = DMatrix::zeros(9, 9);
    place(&mut r, 0, 0, &(id - ad_b));
    place(&mut r, 0, 1, &(ad_a - id));
    place(&mut r, 1, 0, &(id - ad_c));
    place(&mut r, 1, 2, &(ad_a - id));
    place(&mut r, 2, 0, &(-ad_b * power_sum(&t.a, t.m)));
    place(&mut r, 2, 1, &(ad_c - id));
    place(&mut r, 2, 2, &(id - ad_amb));
    Ok(r)
}

/// Columns spanning the coboundaries `(x − Ad(A)x, x − Ad(B)x, x − Ad(C)x)`.
pub fn coboundary_matrix(t: &ConnectionTriple) -> DMatrix<f64> {
    let id = Matrix3::identity();
    let mut out = DMatrix::zeros(9, 3);
    for (i, g) in [t.a, t.b, t.c].iter().enumerate() {
        out.view_mut((3 * i, 0), (3, 3)).copy_from(&(id - ad(g)));
    }
    out
}

/// Number of singular values above [`RANK_TOLERANCE`].
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    m.clone().svd(false, false).singular_values.iter().filter(|&&s| s > RANK_TOLERANCE).count()
}

pub fn kernel_dim(m: &DMatrix<f64>) -> usize {
    m.ncols() - numerical_rank(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyDims {
    pub h0: usize,
    pub h1: usize,
}

impl CohomologyDims {
    /// `(h¹ − h⁰)/2`.
    pub fn growth(&self) -> Q {
        Q::new(self.h1 as i64 - self.h0 as i64, 2)
    }
}

pub fn cohomology_dims(t: &ConnectionTriple) -> Result<CohomologyDims> {
    let cob = coboundary_matrix(t);
    let h0 = kernel_dim(&cob);
    let z1 = kernel_dim(&cocycle_matrix(t)?);
    Ok(CohomologyDims { h0, h1: z1 - numerical_rank(&cob) })
}

fn diag_phase(x: f64) -> M2 {
    let z = C64::from_polar(1.0, 2.0 * PI * x);
    M2::new(z, C64::zero(), C64::zero(), z.conj())
}

/// A point of `M_{j/b}` (with `m = −b`): diagonal holonomies with angles
/// `j/m`, `s`, `t`.
pub fn generic_triple(j: i64, m: i64, s: f64, t: f64) -> Result<ConnectionTriple> {
    if m == 0 {
        return invalid("m must be non-zero");
    }
    ConnectionTriple::new(diag_phase(j as f64 / m as f64), diag_phase(s), diag_phase(t), m)
}

/// The irreducible connection for odd `m`:
/// `A = −1`, `B = diag(i, −i)`, `C = [[0,1],[−1,0]]`.
pub fn point_triple(m: i64) -> Result<ConnectionTriple> {
    if m % 2 == 0 {
        return invalid("the irreducible point exists only for odd b");
    }
    let (z, o, i) = (C64::zero(), C64::one(), C64::i());
    ConnectionTriple::new(-M2::identity(), M2::new(i, z, z, -i), M2::new(z, o, -o, z), m)
}

/// Haar-random element of SU(2) from a uniform point of S³.
pub fn random_su2<R: Rng>(rng: &mut R) -> M2 {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            let (p, q) = (C64::new(v[0] / n, v[1] / n), C64::new(v[2] / n, v[3] / n));
            return M2::new(p, -q.conj(), q, p.conj());
        }
    }
}

/// An angle in (0,1) at distance at least 0.05 from 0, ½ and 1.
fn generic_angle<R: Rng>(rng: &mut R) -> f64 {
    let x = rng.random_range(0.05..0.45);
    if rng.random_bool(0.5) {
        x
    } else {
        x + 0.5
    }
}

/// `(h¹ − h⁰)/2` at generic points of a component: the most frequent value
/// over 32 seeded samples, each conjugated by a random unitary.
pub fn growth_rate_seeded(component: &ModuliComponent, b: i64, seed: u64) -> Result<Q> {
    if b == 0 {
        return invalid("shear b must be non-zero");
    }
    let m = -b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<Q, usize> = BTreeMap::new();
    for _ in 0..SAMPLES {
        let base = match (component.kind, component.j) {
            (ComponentKind::Point, _) => point_triple(m)?,
            (_, Some(j)) => generic_triple(j, m, generic_angle(&mut rng), generic_angle(&mut rng))?,
            (_, None) => return invalid("reducible component without an index j"),
        };
        let t = base.conjugate(&random_su2(&mut rng));
        *counts.entry(cohomology_dims(&t)?.growth()).or_default() += 1;
    }
    let (mode, _) = counts.into_iter().max_by_key(|&(q, n)| (n, std::cmp::Reverse(q))).expect("samples");
    Ok(mode)
}

pub fn growth_rate(component: &ModuliComponent, b: i64) -> Result<Q> {
    growth_rate_seeded(component, b, DEFAULT_SEED)
}
