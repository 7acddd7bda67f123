//! Verification suites. Each returns a list of named checks with the
//! observed value, the tolerance it is held to and the verdict.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use torus_wrt::asymp::{aec_terms_su2, aec_terms_su3, evaluate_expansion, phase_set, table_row, verify_aec};
use torus_wrt::dynamics::{fixed_point_ratio, root_limit, spectral_radius, stretch_via_invariant};
use torus_wrt::gaussrec::{enumerate_quotient, gauss_sum_1d, lattice_gauss_lhs, lattice_gauss_rhs, random_problem, reciprocity_rhs_1d};
use torus_wrt::moduli::{
    cocycle_matrix, cs_set, generic_triple, growth_rate, kernel_dim, point_triple, su2_components, su3_cs_phase_set,
    ComponentKind,
};
use torus_wrt::weightlat::{casimir_identity_sides, enumerate_diagrams, for_each_diagram};
use torus_wrt::wrt::{
    anomaly_phase, classify, framing_factor, invariant_direct, invariant_su2_closed, invariant_su2_link_closed,
    invariant_su2_link_direct, invariant_su3_closed, invariant_su3_tilde1, invariant_word_modulus, tilde_verlinde_exact,
    verlinde_dim, BundleClass, FiniteOrderTag, SL2ZMatrix,
};
use torus_wrt::{Q, C64};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance, pass: value <= tolerance }
    }

    /// A yes/no check; `value` counts failures.
    pub fn exact(name: impl Into<String>, failures: usize) -> Self {
        Check { name: name.into(), value: failures as f64, tolerance: 0.0, pass: failures == 0 }
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "value": self.value, "tolerance": self.tolerance, "pass": self.pass })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub seed: u64,
    pub trials: usize,
    pub kmax: u32,
    pub bmax: i64,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 0xC0FFEE, trials: 1000, kmax: 200, bmax: 12 }
    }
}

fn shears(bmax: i64) -> Vec<i64> {
    (-bmax..=bmax).filter(|&b| b != 0).collect()
}

fn fmax(it: impl ParallelIterator<Item = f64>) -> f64 {
    it.reduce(|| 0.0, f64::max)
}

/// Scalar and lattice reciprocity on seeded random instances, and the size
/// of quotient enumerations.
pub fn gauss(p: &Params) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut scalar = 0.0f64;
    for _ in 0..p.trials {
        let (a, c) = loop {
            let (a, c): (i64, i64) = (rng.random_range(-30..=30), rng.random_range(-30..=30));
            if a != 0 && c != 0 {
                break (a, c);
            }
        };
        let b = 2 * rng.random_range(-30..30) + (a * c).rem_euclid(2);
        let d = (gauss_sum_1d(a, b, c).unwrap() - reciprocity_rhs_1d(a, b, c).unwrap()).norm();
        scalar = scalar.max(d);
    }
    let mut lattice = 0.0f64;
    for _ in 0..200 {
        let prob = random_problem(&mut rng);
        let d = (lattice_gauss_lhs(&prob) - lattice_gauss_rhs(&prob).unwrap()).norm();
        lattice = lattice.max(d);
    }
    let mut wrong = 0;
    for _ in 0..200 {
        let m: Vec<Vec<i64>> = (0..2).map(|_| (0..2).map(|_| rng.random_range(-8..=8)).collect()).collect();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det == 0 {
            continue;
        }
        if enumerate_quotient(&m).map(|r| r.len() as i64) != Ok(det.abs()) {
            wrong += 1;
        }
    }
    vec![
        Check::at_most(format!("scalar reciprocity, {} instances", p.trials), scalar, 1e-9),
        Check::at_most("lattice reciprocity, 200 instances", lattice, 1e-9),
        Check::exact("quotient sizes equal |det|", wrong),
    ]
}

/// Trace sums against closed forms and word products.
pub fn oracle(p: &Params) -> Vec<Check> {
    let start = Instant::now();
    let bs = shears(p.bmax);
    let su2 = fmax(bs.par_iter().flat_map_iter(|&b| {
        (0..=p.kmax).map(move |k| {
            let d = invariant_direct(2, k, BundleClass::Trace2(b)).unwrap().value;
            let c = invariant_su2_closed(k, b).unwrap();
            (d - c).norm() / (1.0 + c.norm())
        })
    }));
    let word = fmax(shears(p.bmax.min(6)).into_par_iter().flat_map_iter(|b| {
        (0..=p.kmax.min(60)).map(move |k| {
            let c = invariant_su2_closed(k, b).unwrap().norm();
            (c - invariant_word_modulus(k, BundleClass::Trace2(b).representative())).abs()
        })
    }));
    let elapsed = start.elapsed().as_secs_f64();
    vec![
        Check::at_most(format!("SU(2) direct vs closed, |b| <= {}, k <= {} (relative)", p.bmax, p.kmax), su2, 1e-9),
        Check::at_most("SU(2) |closed| vs word modulus, |b| <= 6, k <= 60", word, 1e-8),
        Check::at_most("runtime in seconds", elapsed, 60.0),
    ]
}

/// Colour-j invariants: closed form against the curve-operator sum.
pub fn links(kmax: u32, bmax: i64) -> Vec<Check> {
    let worst = fmax(shears(bmax).into_par_iter().flat_map_iter(|b| {
        (0..=kmax).flat_map(move |k| {
            (0..=k).map(move |j| {
                let d = invariant_su2_link_direct(k, b, j).unwrap();
                (d - invariant_su2_link_closed(k, b, j).unwrap()).norm()
            })
        })
    }));
    let spot = (invariant_su2_link_closed(1, 1, 0).unwrap() - C64::new(1.0, -1.0)).norm();
    vec![
        Check::at_most(format!("link closed vs direct, j <= k <= {kmax}, |b| <= {bmax}"), worst, 1e-9),
        Check::at_most("(k,b,j) = (1,1,0) gives 1 - i", spot, 1e-12),
    ]
}

pub fn su3(kmax: u32, bmax: i64, tilde_kmax: u32) -> Vec<Check> {
    let closed = fmax(shears(bmax).into_par_iter().flat_map_iter(|b| {
        (0..=kmax).map(move |k| {
            let d = invariant_direct(3, k, BundleClass::Trace2(b)).unwrap().value;
            (d - invariant_su3_closed(k, b).unwrap()).norm()
        })
    }));
    let tilde = fmax((0..=tilde_kmax).into_par_iter().map(|k| {
        let d = invariant_direct(3, k, BundleClass::TraceMinus2(1)).unwrap().value;
        (d - invariant_su3_tilde1(k)).norm()
    }));
    vec![
        Check::at_most(format!("SU(3) closed vs direct, k <= {kmax}, |b| <= {bmax}"), closed, 1e-8),
        Check::at_most(format!("SU(3) trace -2, b = 1, k <= {tilde_kmax}"), tilde, 1e-10),
    ]
}

/// Label counts against enumeration.
pub fn counting(nmax: usize, kmax: u32) -> Vec<Check> {
    let cases: Vec<(usize, u32)> = (2..=nmax).flat_map(|n| (0..=kmax).map(move |k| (n, k))).collect();
    let bad: Vec<(bool, bool)> = cases
        .par_iter()
        .map(|&(n, k)| {
            let (mut all, mut dual) = (0u128, 0i64);
            for_each_diagram(n, k, |rows| {
                all += 1;
                if torus_wrt::weightlat::is_self_dual(&torus_wrt::weightlat::YoungDiagram::new(rows).unwrap(), n) {
                    dual += 1;
                }
            });
            (verlinde_dim(n, k).unwrap() != all, tilde_verlinde_exact(n, k).unwrap() != Q::from_integer(dual))
        })
        .collect();
    let collapse = (0..=kmax).filter(|&k| tilde_verlinde_exact(2, k).unwrap() != Q::from_integer(k as i64 + 1)).count();
    vec![
        Check::exact(format!("Verlinde count, N <= {nmax}, k <= {kmax}"), bad.iter().filter(|b| b.0).count()),
        Check::exact(format!("self-dual count, N <= {nmax}, k <= {kmax}"), bad.iter().filter(|b| b.1).count()),
        Check::exact("N = 2 self-dual count is r - 1", collapse),
    ]
}

/// The Casimir identity, exactly.
pub fn lemma(nmax: usize, kmax: u32) -> Vec<Check> {
    let mut failures = 0;
    let mut total = 0;
    for n in 2..=nmax {
        for lam in enumerate_diagrams(n, kmax).unwrap() {
            total += 1;
            let (l, r) = casimir_identity_sides(&lam, n).unwrap();
            if l != r {
                failures += 1;
            }
        }
    }
    vec![Check::exact(format!("Casimir identity on {total} labels, N <= {nmax}, k <= {kmax}"), failures)]
}

pub fn framing(kmax: u32) -> Vec<Check> {
    let worst = fmax((1..=kmax).into_par_iter().map(|k| (framing_factor(k) - anomaly_phase(2, k).pow(3).to_c64()).norm()));
    vec![Check::at_most(format!("framing factor vs e^(2 pi i c/8), 1 <= k <= {kmax}"), worst, 1e-10)]
}

/// Exact expansions, truncation decay and phase sets.
pub fn aec(bmax: i64, kmax: u32, converged_kmax: u32) -> Vec<Check> {
    let bs = shears(bmax);
    let exact = fmax(bs.par_iter().flat_map_iter(|&b| {
        let terms = aec_terms_su2(b).unwrap();
        (3..=kmax as i64 + 2).map(move |r| {
            let z = invariant_su2_closed((r - 2) as u32, b).unwrap();
            (evaluate_expansion(&terms, r, None) - z).norm()
        })
    }));
    let reports: Vec<_> = bs.par_iter().map(|&b| verify_aec(b, kmax, 3).unwrap()).collect();
    let converged: Vec<_> = bs.par_iter().map(|&b| verify_aec(b, converged_kmax, 3).unwrap()).collect();
    let bound_fail = reports.iter().flat_map(|r| &r.slopes).filter(|s| !s.bound_holds).count();
    let worst_dev = |rs: &[torus_wrt::asymp::AecReport]| {
        rs.iter().flat_map(|r| &r.slopes).map(|s| (s.slope - s.expected).abs()).fold(0.0, f64::max)
    };
    let cs_fail = bs
        .iter()
        .filter(|&&b| phase_set(&aec_terms_su2(b).unwrap()) != cs_set(&su2_components(b).unwrap()))
        .count();
    let su3_fail = shears(bmax.min(6))
        .into_iter()
        .filter(|&b| phase_set(&aec_terms_su3(b).unwrap()) != su3_cs_phase_set(b).unwrap())
        .count();
    vec![
        Check::at_most(format!("exact expansion vs closed form, r <= {}, |b| <= {bmax}", kmax + 2), exact, 1e-12),
        Check::exact(format!("slope <= d - (L+1)/2 + 0.3, L <= 3, k in [{}, {kmax}]", kmax / 2), bound_fail),
        Check::at_most(
            format!("max |slope - (d - (L+1)/2)|, L <= 3, k in [{}, {converged_kmax}]", converged_kmax / 2),
            worst_dev(&converged),
            0.3,
        ),
        Check::exact("SU(2) expansion phases equal moduli CS values", cs_fail),
        Check::exact("SU(3) closed-form phases equal CS values, |b| <= 6", su3_fail),
    ]
}

pub fn growth(bmax: i64) -> Vec<Check> {
    let mut wrong = 0;
    for b in shears(bmax) {
        for c in su2_components(b).unwrap() {
            let want = if c.kind == ComponentKind::Point { Q::from_integer(0) } else { Q::new(1, 2) };
            if growth_rate(&c, b).unwrap() != want {
                wrong += 1;
            }
        }
    }
    let kd = |t: torus_wrt::moduli::ConnectionTriple| kernel_dim(&cocycle_matrix(&t).unwrap());
    let mut kernels = 0;
    if kd(generic_triple(1, 5, 0.13, 0.71).unwrap()) != 4 {
        kernels += 1;
    }
    if kd(generic_triple(1, 2, 0.5, 0.0).unwrap()) != 6 {
        kernels += 1;
    }
    if kd(point_triple(3).unwrap()) != 3 {
        kernels += 1;
    }
    vec![
        Check::exact(format!("generic d' = 1/2 on M_(j/b), 0 on the point, |b| <= {bmax}"), wrong),
        Check::exact("kernel dimensions 4 / 6 / 3", kernels),
    ]
}

fn random_anosov(rng: &mut ChaCha8Rng) -> SL2ZMatrix {
    loop {
        let (a, c, d): (i64, i64, i64) = (rng.random_range(-20..=20), rng.random_range(-20..=20), rng.random_range(-20..=20));
        if c == 0 || (a * d - 1) % c != 0 {
            continue;
        }
        let b = (a * d - 1) / c;
        if b.abs() <= 20 && (a + d).abs() > 2 {
            return SL2ZMatrix::new(a, b, c, d).unwrap();
        }
    }
}

pub fn dynamics(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family: Vec<SL2ZMatrix> = (0..10).map(|_| random_anosov(&mut rng)).collect();
    let mut stretch = 0.0f64;
    let mut ratio = 0.0f64;
    let mut root = 0.0f64;
    for &u in &family {
        let lam = spectral_radius(u);
        for n in 1..=5 {
            stretch = stretch.max((stretch_via_invariant(u, n).unwrap().lambda - lam).abs());
        }
        ratio = ratio.max((fixed_point_ratio(u, 15).unwrap() / lam - 1.0).abs());
        root = root.max((root_limit(u, 20).unwrap().lambda / lam - 1.0).abs());
    }
    let golden = SL2ZMatrix::new(2, 1, 1, 1).unwrap();
    let spot = (stretch_via_invariant(golden, 1).unwrap().lambda - (3.0 + 5f64.sqrt()) / 2.0).abs();
    vec![
        Check::at_most("stretch via invariant vs spectral radius, n <= 5", stretch, 1e-9),
        Check::at_most("fixed-point ratio at m = 15 (relative)", ratio, 0.01),
        Check::at_most("root limit at n = 20 (relative)", root, 0.01),
        Check::at_most("[[2,1],[1,1]] gives (3 + sqrt 5)/2", spot, 1e-12),
    ]
}

/// The summary table, row by row, against its literal formulas.
pub fn table() -> Vec<Check> {
    use std::collections::BTreeSet;
    let mut wrong = Vec::new();
    let set = |v: &[Q]| v.iter().copied().collect::<BTreeSet<Q>>();
    let m1 = |x: Q| torus_wrt::phase::mod1(x);
    let half = Q::new(1, 2);
    for tag in [FiniteOrderTag::Id, FiniteOrderTag::Varpi] {
        let row = table_row(&BundleClass::FiniteOrder(tag)).unwrap();
        if row.cs != set(&[Q::from_integer(0)]) || row.d != set(&[Q::from_integer(1)]) {
            wrong.push("±id");
        }
    }
    for b in shears(12) {
        let top = if b % 2 == 0 { b.abs() / 2 } else { (b.abs() - 1) / 2 };
        let mut cs: BTreeSet<Q> = (0..=top).map(|j| m1(Q::new(j * j, b))).collect();
        let d = if b % 2 == 0 {
            set(&[half])
        } else {
            cs.insert(m1(Q::new(-b, 4)));
            set(&[half, Q::from_integer(0)])
        };
        for u in [SL2ZMatrix::new(1, -b, 0, 1).unwrap(), SL2ZMatrix::new(-1, b, 0, -1).unwrap()] {
            let row = table_row(&classify(u).unwrap()).unwrap();
            if row.cs != cs || row.d != d {
                wrong.push(if b % 2 == 0 { "trace ±2, b even" } else { "trace ±2, b odd" });
            }
        }
    }
    for (a, b, c, d) in [(2, 1, 1, 1), (3, 1, 2, 1), (5, 2, 2, 1), (-3, 1, -1, 0), (4, 3, 5, 4)] {
        let u = SL2ZMatrix::new(a, b, c, d).unwrap();
        let t = a + d;
        let mut cs = BTreeSet::new();
        for den in [t - 2, t + 2] {
            for beta in 0..c.abs() {
                for gamma in 1..=den.abs() {
                    cs.insert(m1(Q::new(-c * gamma * gamma + (a - d) * gamma * beta + b * beta * beta, den)));
                }
            }
        }
        let row = table_row(&BundleClass::Hyperbolic(u)).unwrap();
        let via_class = table_row(&classify(u).unwrap()).unwrap();
        if row.cs != cs || row.d != set(&[Q::from_integer(0)]) || via_class != row {
            wrong.push("|trace| != 2");
        }
    }
    vec![Check::exact(format!("table rows mismatched: {wrong:?}"), wrong.len())]
}

pub const SUITES: [&str; 11] =
    ["gauss", "oracle", "links", "su3", "counting", "lemma", "framing", "aec", "growth", "dynamics", "table"];

/// Runs a suite by name with the given parameters.
pub fn run_suite(name: &str, p: &Params) -> Option<Vec<Check>> {
    let checks = match name {
        "gauss" => gauss(p),
        "oracle" => oracle(p),
        "links" => links(p.kmax.min(100), p.bmax.min(6)),
        "su3" => su3(p.kmax.min(60), p.bmax.min(6), p.kmax),
        "counting" => counting(6, p.kmax.min(40)),
        "lemma" => lemma(6, p.kmax.min(12)),
        "framing" => framing(p.kmax),
        "aec" => aec(p.bmax, p.kmax.max(300), 3000),
        "growth" => growth(p.bmax),
        "dynamics" => dynamics(p.seed),
        "table" => table(),
        _ => return None,
    };
    Some(checks)
}
