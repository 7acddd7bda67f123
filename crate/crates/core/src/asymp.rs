//! Asymptotic expansions `Z ~ Σ_j e^{2πirc_j} r^{d_j} b_j (1 + Σ_l a_j^l r^{−l/2})`
//! read off from the closed forms, and numerical checks of their accuracy.
//!
//! For the shear bundles every term has the shape
//! `e^{2πirc} r^d e^{iπp/r}(lead + sub·r^{−1/2})` with a rational `p`
//! common to all terms. Expanding `e^{iπp/r}` gives the `a^l`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::moduli::{cs_set, su2_components};
use crate::phase::{expi_pi, mod1, RationalPhase};
use crate::wrt::{BundleClass, FiniteOrderTag, SL2ZMatrix};
use crate::wrt::{invariant_su2_closed, invariant_su3_closed};
use crate::{Q, C64};

/// One term of an exact expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AecTerm {
    /// Chern-Simons phase, in `[0, 1)`.
    pub c: Q,
    /// Power of `r`.
    pub d: Q,
    pub lead: C64,
    pub sub: C64,
    /// The prefactor is `e^{iπ·prefactor/r}`.
    pub prefactor: Q,
}

impl AecTerm {
    /// `β(r) = e^{iπp/r}(lead + sub·r^{−1/2})`.
    pub fn beta(&self, r: f64) -> C64 {
        let x = std::f64::consts::PI * (*self.prefactor.numer() as f64 / *self.prefactor.denom() as f64) / r;
        C64::from_polar(1.0, x) * (self.lead + self.sub / r.sqrt())
    }

    /// `a^1, …, a^L`: with `x = iπp`, `a^{2n} = xⁿ/n!` and
    /// `a^{2n+1} = (sub/lead)·xⁿ/n!`.
    pub fn series(&self, order: usize) -> Vec<C64> {
        let x = C64::new(0.0, std::f64::consts::PI * (*self.prefactor.numer() as f64 / *self.prefactor.denom() as f64));
        let ratio = self.sub / self.lead;
        let mut out = Vec::with_capacity(order);
        let mut xn = C64::new(1.0, 0.0);
        for l in 1..=order {
            if l % 2 == 0 {
                xn *= x / (l / 2) as f64;
                out.push(xn);
            } else {
                out.push(ratio * xn);
            }
        }
        out
    }

    fn phase(&self, r: i64) -> C64 {
        RationalPhase::turns(self.c * r).to_c64()
    }

    fn power(&self, r: i64) -> f64 {
        (r as f64).powf(*self.d.numer() as f64 / *self.d.denom() as f64)
    }
}

fn merge(raw: Vec<(Q, Q, C64, C64)>, prefactor: Q) -> Vec<AecTerm> {
    let mut acc: BTreeMap<(Q, Q), (C64, C64)> = BTreeMap::new();
    for (c, d, lead, sub) in raw {
        let e = acc.entry((mod1(c), d)).or_insert((C64::zero(), C64::zero()));
        e.0 += lead;
        e.1 += sub;
    }
    acc.into_iter().map(|((c, d), (lead, sub))| AecTerm { c, d, lead, sub, prefactor }).collect()
}

/// Terms of the SU(2) invariant of `M^b`, regrouped from the closed form.
/// Terms with the same `(c, d)` are merged.
pub fn aec_terms_su2(b: i64) -> Result<Vec<AecTerm>> {
    if b == 0 {
        return invalid("shear b must be non-zero");
    }
    let ab = b.abs();
    let unit = expi_pi(-(b.signum() as i128), 4);
    let half = Q::new(1, 2);
    let interior = unit * (2.0 / ab as f64).sqrt();
    let endpoint = unit * (1.0 / (2.0 * ab as f64)).sqrt();
    let zero = C64::zero();
    let mut raw = vec![(Q::zero(), half, endpoint, C64::new(-0.5, 0.0))];
    let top = if ab % 2 == 0 { ab / 2 - 1 } else { (ab - 1) / 2 };
    for n in 1..=top {
        raw.push((Q::new(n * n, b), half, interior, zero));
    }
    if ab % 2 == 0 {
        raw.push((Q::new(ab * ab / 4, b), half, endpoint, C64::new(-0.5, 0.0)));
    } else {
        raw.push((Q::new(-b, 4), Q::zero(), C64::new(-0.5, 0.0), zero));
    }
    Ok(merge(raw, Q::new(b, 2)))
}

/// Leading terms of the SU(3) closed form, one per phase; this regrouping
/// is still exact.
pub fn aec_terms_su3(b: i64) -> Result<Vec<AecTerm>> {
    if b == 0 {
        return invalid("shear b must be non-zero");
    }
    let ab = b.abs();
    let zero = C64::zero();
    let double = C64::new(0.0, -(3f64.sqrt()) / (54.0 * b as f64));
    let single = -0.5 * (3.0 / (2.0 * ab as f64)).sqrt() * expi_pi(-(b.signum() as i128), 4);
    let mut raw = Vec::new();
    for n in 0..3 * ab {
        for m in 0..3 * ab {
            raw.push((Q::new(n * n + m * m - n * m, b), Q::from_integer(1), double, zero));
        }
    }
    for n in 0..2 * ab {
        raw.push((Q::new(3 * n * n, 4 * b), Q::new(1, 2), single, zero));
    }
    raw.push((Q::zero(), Q::zero(), C64::new(1.0 / 3.0, 0.0), zero));
    raw.push((Q::new(-b, 3), Q::zero(), C64::new(2.0 / 3.0, 0.0), zero));
    let mut terms = merge(raw, Q::from_integer(2 * b));
    // Phases whose coefficients cancel do not contribute.
    terms.retain(|t| t.lead.norm() > 1e-12);
    Ok(terms)
}

/// `Σ_j e^{2πirc_j} r^{d_j} β_j`, with the exact `β_j(r)` when `order` is
/// `None` and the truncation `b_j(1 + Σ_{l≤L} a^l r^{−l/2})` otherwise.
pub fn evaluate_expansion(terms: &[AecTerm], r: i64, order: Option<usize>) -> C64 {
    let rf = r as f64;
    terms
        .iter()
        .map(|t| {
            let beta = match order {
                None => t.beta(rf),
                Some(l) => {
                    let tail: C64 = t.series(l).iter().enumerate().map(|(i, a)| a * rf.powf(-((i + 1) as f64) / 2.0)).sum();
                    t.lead * (1.0 + tail)
                }
            };
            t.phase(r) * t.power(r) * beta
        })
        .sum()
}

/// Largest growth exponent.
pub fn leading_d(terms: &[AecTerm]) -> Q {
    terms.iter().map(|t| t.d).max().unwrap_or(Q::zero())
}

pub fn phase_set(terms: &[AecTerm]) -> BTreeSet<Q> {
    terms.iter().map(|t| t.c).collect()
}

/// Least-squares slope of `log y` against `log x`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| {
        let dx = x.ln() - mx;
        (a + dx * (y.ln() - my), b + dx * dx)
    });
    num / den
}

const NOISE_FLOOR: f64 = 1e-13;

/// Decay exponent of `|Z − truncation|` over `r` in the given range. The
/// oscillating phases make the residual periodic in `r` modulo the common
/// denominator of the `c_j`, so each residue class is fitted separately
/// and the class with the largest residuals is reported.
pub fn residual_slope(b: i64, terms: &[AecTerm], order: usize, r_range: std::ops::RangeInclusive<i64>) -> Option<f64> {
    let period = terms.iter().fold(1i64, |acc, t| acc.lcm(t.c.denom()));
    let mut classes: BTreeMap<i64, Vec<(f64, f64)>> = BTreeMap::new();
    for r in r_range {
        let z = invariant_su2_closed((r - 2) as u32, b).ok()?;
        let res = (z - evaluate_expansion(terms, r, Some(order))).norm();
        if res >= NOISE_FLOOR {
            classes.entry(r.rem_euclid(period)).or_default().push((r as f64, res));
        }
    }
    classes
        .values()
        .filter(|pts| pts.len() >= 3)
        .map(|pts| (pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64, loglog_slope(pts)))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, s)| s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlopeCheck {
    pub order: usize,
    pub slope: f64,
    /// `d − (L+1)/2`.
    pub expected: f64,
    /// `slope ≤ expected + 0.3`.
    pub bound_holds: bool,
    /// `|slope − expected| ≤ 0.3`.
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AecReport {
    pub b: i64,
    pub k_max: u32,
    pub d: Q,
    pub exact_max_residual: f64,
    pub slopes: Vec<SlopeCheck>,
    /// Exact residual within 1e−12 and every slope bound satisfied.
    pub pass: bool,
}

/// Compares the SU(2) closed form for `M^b` with its expansion for
/// `k ≤ k_max`: the exact coefficients over all levels, and truncations at
/// `L ≤ L_max` through the residual decay over `k ∈ [k_max/2, k_max]`.
pub fn verify_aec(b: i64, k_max: u32, l_max: usize) -> Result<AecReport> {
    let terms = aec_terms_su2(b)?;
    let d = leading_d(&terms);
    let df = *d.numer() as f64 / *d.denom() as f64;
    let mut exact_max_residual = 0.0f64;
    for k in 0..=k_max {
        let z = invariant_su2_closed(k, b)?;
        exact_max_residual = exact_max_residual.max((z - evaluate_expansion(&terms, k as i64 + 2, None)).norm());
    }
    let lo = k_max as i64 / 2 + 2;
    let hi = k_max as i64 + 2;
    let mut slopes = Vec::new();
    for order in 0..=l_max {
        let expected = df - (order as f64 + 1.0) / 2.0;
        let slope = residual_slope(b, &terms, order, lo..=hi).unwrap_or(f64::NEG_INFINITY);
        slopes.push(SlopeCheck {
            order,
            slope,
            expected,
            bound_holds: slope <= expected + 0.3,
            matches: (slope - expected).abs() <= 0.3,
        });
    }
    let pass = exact_max_residual <= 1e-12 && slopes.iter().all(|s| s.bound_holds);
    Ok(AecReport { b, k_max, d, exact_max_residual, slopes, pass })
}

/// Phases and growth exponents of one row of the summary table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub cs: BTreeSet<Q>,
    pub d: BTreeSet<Q>,
}

/// `{(−cγ² + (a−d)γβ + bβ²)/(a+d∓2) : 0 ≤ β < |c|, 0 < γ ≤ |a+d∓2|}` mod 1.
pub fn quadratic_phase_set(u: SL2ZMatrix) -> Result<BTreeSet<Q>> {
    let t = u.trace();
    if t.abs() == 2 || u.c == 0 {
        return invalid(format!("{u} needs |trace| ≠ 2 and c ≠ 0"));
    }
    let mut out = BTreeSet::new();
    for dd in [t - 2, t + 2] {
        for beta in 0..u.c.abs() {
            for gamma in 1..=dd.abs() {
                let quad = -u.c * gamma * gamma + (u.a - u.d) * gamma * beta + u.b * beta * beta;
                out.insert(mod1(Q::new(quad, dd)));
            }
        }
    }
    Ok(out)
}

pub fn table_row(class: &BundleClass) -> Result<TableRow> {
    let half = Q::new(1, 2);
    let row = match *class {
        BundleClass::FiniteOrder(FiniteOrderTag::Id | FiniteOrderTag::Varpi)
        | BundleClass::Trace2(0)
        | BundleClass::TraceMinus2(0) => {
            TableRow { cs: BTreeSet::from([Q::zero()]), d: BTreeSet::from([Q::from_integer(1)]) }
        }
        BundleClass::Trace2(b) | BundleClass::TraceMinus2(b) => {
            let cs = cs_set(&su2_components(b)?);
            let d = if b % 2 == 0 { BTreeSet::from([half]) } else { BTreeSet::from([half, Q::zero()]) };
            TableRow { cs, d }
        }
        BundleClass::FiniteOrder(tag) => {
            TableRow { cs: quadratic_phase_set(tag.matrix())?, d: BTreeSet::from([Q::zero()]) }
        }
        BundleClass::Hyperbolic(u) => TableRow { cs: quadratic_phase_set(u)?, d: BTreeSet::from([Q::zero()]) },
    };
    Ok(row)
}

/// The SU(3) closed form rebuilt from [`aec_terms_su3`]; equal to
/// [`invariant_su3_closed`] up to rounding.
pub fn su3_expansion_residual(k: u32, b: i64) -> Result<f64> {
    let terms = aec_terms_su3(b)?;
    Ok((invariant_su3_closed(k, b)? - evaluate_expansion(&terms, k as i64 + 3, None)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(terms: &[AecTerm]) -> BTreeSet<(Q, Q)> {
        terms.iter().map(|t| (t.c, t.d)).collect()
    }

    #[test]
    fn term_sets() {
        let h = Q::new(1, 2);
        assert_eq!(pairs(&aec_terms_su2(2).unwrap()), BTreeSet::from([(Q::zero(), h), (h, h)]));
        let want = BTreeSet::from([(Q::zero(), h), (Q::new(1, 3), h), (Q::new(1, 4), Q::zero())]);
        assert_eq!(pairs(&aec_terms_su2(3).unwrap()), want);
        let want = BTreeSet::from([(Q::zero(), h), (Q::new(3, 4), Q::zero())]);
        assert_eq!(pairs(&aec_terms_su2(1).unwrap()), want);
    }

    #[test]
    fn exact_expansion() {
        let terms = aec_terms_su2(1).unwrap();
        assert!((evaluate_expansion(&terms, 3, None) - C64::new(1.0, -1.0)).norm() < 1e-12);
        let terms = aec_terms_su2(4).unwrap();
        let z = invariant_su2_closed(98, 4).unwrap();
        assert!((evaluate_expansion(&terms, 100, None) - z).norm() < 1e-12);
    }

    #[test]
    fn series_reproduces_prefactor() {
        // With many terms the truncation converges to the exact value.
        let terms = aec_terms_su2(3).unwrap();
        let exact = evaluate_expansion(&terms, 200, None);
        let approx = evaluate_expansion(&terms, 200, Some(30));
        assert!((exact - approx).norm() < 1e-12);
    }

    #[test]
    fn su3_regrouping() {
        for b in [-2, 1, 3] {
            for k in [0, 5, 17] {
                assert!(su3_expansion_residual(k, b).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn table() {
        let r = table_row(&BundleClass::FiniteOrder(FiniteOrderTag::Id)).unwrap();
        assert_eq!(r.cs, BTreeSet::from([Q::zero()]));
        assert_eq!(r.d, BTreeSet::from([Q::from_integer(1)]));
        let r = table_row(&BundleClass::Trace2(3)).unwrap();
        assert_eq!(r.cs, BTreeSet::from([Q::zero(), Q::new(1, 3), Q::new(1, 4)]));
        let u = SL2ZMatrix::new(2, 1, 1, 1).unwrap();
        assert_eq!(table_row(&BundleClass::Hyperbolic(u)).unwrap().d, BTreeSet::from([Q::zero()]));
        let r = table_row(&BundleClass::FiniteOrder(FiniteOrderTag::F4)).unwrap();
        assert_eq!(r.cs, BTreeSet::from([Q::zero(), Q::new(1, 2)]));
    }

    #[test]
    fn slopes_small_b() {
        let rep = verify_aec(2, 300, 0).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.slopes[0].matches);
    }
}
