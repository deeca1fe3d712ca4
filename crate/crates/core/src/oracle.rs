//! Brute-force ground truth for the resultant pipeline: dense sampling of
//! the circle, spatial hashing of near-coincident image points, and
//! Newton refinement of candidate parameter pairs on the defining system
//! `p(e^{iα}) = p(e^{iβ})`.
//!
//! Quadratic in the grid size in the worst case; this is a correctness
//! instrument for small degrees, not a performance path.

use crate::error::{Error, Result};
use crate::intersect::{circ_dist, pair_dist, upper_bound, SelfIntersection, ToleranceSet};
use crate::laurent::{unit, LaurentPolynomial};
use crate::{C64, TAU};
use serde::Serialize;
use std::collections::HashMap;

/// Configuration of the sampling oracle.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleConfig {
    /// Number of uniform angular samples (≥ 64).
    pub grid_size: usize,
    /// Image-space pairing radius; `None` selects
    /// `3 · max|p'| · (2π/grid_size)`, the local Lipschitz bound times the
    /// grid step.
    pub capture_radius: Option<f64>,
    /// Angular distance excluding the diagonal; `None` selects
    /// `3 · 2π/grid_size`. Must stay above one grid step.
    pub min_separation: Option<f64>,
    /// Newton iterations per candidate pair.
    pub newton_iters: usize,
    /// Accepted-residual threshold.
    pub residual_tol: f64,
    /// Angular clustering radius for deduplication.
    pub cluster: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_size: 4096,
            capture_radius: None,
            min_separation: None,
            newton_iters: 30,
            residual_tol: 1e-10,
            cluster: 1e-6,
        }
    }
}

/// Agreement report between the resultant pipeline and the oracle.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub pipeline_count: usize,
    pub oracle_count: usize,
    pub counts_agree: bool,
    /// Hausdorff distance between the two sets of angle pairs.
    pub max_pair_distance: f64,
}

fn newton_refine(
    p: &LaurentPolynomial,
    mut alpha: f64,
    mut beta: f64,
    iters: usize,
) -> Option<(f64, f64, f64)> {
    for _ in 0..iters {
        let za = unit(alpha);
        let zb = unit(beta);
        let f = p.evaluate(za).ok()? - p.evaluate(zb).ok()?;
        let ja = C64::new(0.0, 1.0) * za * p.eval_derivative(za).ok()?;
        let jb = -C64::new(0.0, 1.0) * zb * p.eval_derivative(zb).ok()?;
        let det = ja.re * jb.im - jb.re * ja.im;
        if det.abs() < 1e-300 {
            break;
        }
        let da = (f.re * jb.im - jb.re * f.im) / det;
        let db = (ja.re * f.im - f.re * ja.im) / det;
        alpha -= da;
        beta -= db;
        if !alpha.is_finite() || !beta.is_finite() {
            return None;
        }
        if da.abs() + db.abs() < 1e-15 {
            break;
        }
    }
    let res = (p.evaluate(unit(alpha)).ok()? - p.evaluate(unit(beta)).ok()?).norm();
    Some((alpha.rem_euclid(TAU), beta.rem_euclid(TAU), res))
}

/// Enumerate self-intersections by dense sampling plus Newton refinement.
///
/// Errors with [`Error::Saturation`] when the accepted pairs exceed four
/// times the theorem bound, which signals an exceptional input with a
/// continuum of self-intersections.
pub fn oracle_self_intersections(
    p: &LaurentPolynomial,
    cfg: &OracleConfig,
) -> Result<Vec<SelfIntersection>> {
    if cfg.grid_size < 64 {
        return Err(Error::Range(format!("grid_size must be ≥ 64, got {}", cfg.grid_size)));
    }
    let g = cfg.grid_size;
    let step = TAU / g as f64;
    let min_sep = cfg.min_separation.unwrap_or(3.0 * step);
    if min_sep <= step {
        return Err(Error::Range("min_separation must exceed one grid step".into()));
    }
    let (pn, _) = p.normalize()?;
    let bound = if pn.is_monomial() { 0 } else { upper_bound(pn.n(), pn.m())? };
    let saturation_cap = 4 * bound as usize;
    // Raw-acceptance cap: bail out of a continuum before the grid work
    // explodes; anything past this is already saturated many times over.
    let raw_cap = 16 * (bound as usize + 4);

    let angles: Vec<f64> = (0..g).map(|j| j as f64 * step).collect();
    let values: Vec<C64> = angles.iter().map(|&a| p.evaluate(unit(a)).unwrap()).collect();
    let max_dp = angles
        .iter()
        .map(|&a| p.eval_derivative(unit(a)).unwrap().norm())
        .fold(0.0, f64::max);
    let capture = cfg.capture_radius.unwrap_or(3.0 * max_dp * step).max(1e-12);

    // Spatial hash of image points with cell size = capture radius.
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let key = |w: C64| ((w.re / capture).floor() as i64, (w.im / capture).floor() as i64);
    for (j, &w) in values.iter().enumerate() {
        buckets.entry(key(w)).or_default().push(j);
    }

    let mut accepted: Vec<(f64, f64)> = Vec::new();
    let push_pair = |list: &mut Vec<(f64, f64)>, a: f64, b: f64| {
        let pr = if a <= b { (a, b) } else { (b, a) };
        if list.iter().all(|q| pair_dist(pr, *q) >= cfg.cluster) {
            list.push(pr);
        }
    };

    'outer: for (j, &wj) in values.iter().enumerate() {
        let (kx, ky) = key(wj);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(cell) = buckets.get(&(kx + dx, ky + dy)) else { continue };
                for &i in cell {
                    if i <= j {
                        continue;
                    }
                    if (values[i] - wj).norm() > capture {
                        continue;
                    }
                    if circ_dist(angles[j], angles[i]) < min_sep {
                        continue;
                    }
                    let Some((a, b, res)) =
                        newton_refine(p, angles[j], angles[i], cfg.newton_iters)
                    else {
                        continue;
                    };
                    if res > cfg.residual_tol {
                        continue;
                    }
                    // Newton collapsing onto the diagonal is the trivial zero.
                    if circ_dist(a, b) < min_sep {
                        continue;
                    }
                    push_pair(&mut accepted, a, b);
                    if accepted.len() > raw_cap {
                        break 'outer;
                    }
                }
            }
        }
    }

    if accepted.len() > saturation_cap {
        return Err(Error::Saturation { accepted: accepted.len(), bound });
    }
    accepted.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    Ok(accepted
        .into_iter()
        .map(|(a, b)| {
            let va = p.evaluate(unit(a)).unwrap();
            let vb = p.evaluate(unit(b)).unwrap();
            let theta = (b - a) / 2.0;
            SelfIntersection {
                alpha: a,
                beta: b,
                image: (va + vb) / 2.0,
                t: theta.cos(),
                z: unit((a + b) / 2.0),
                residual: (va - vb).norm(),
            }
        })
        .collect())
}

/// Run both pipelines and report the match quality.
pub fn compare(p: &LaurentPolynomial) -> Result<EquivalenceReport> {
    let pipeline = crate::intersect::self_intersections(p, &ToleranceSet::default())?;
    let oracle = oracle_self_intersections(p, &OracleConfig::default())?;
    let a: Vec<(f64, f64)> = pipeline.intersections.iter().map(|s| (s.alpha, s.beta)).collect();
    let b: Vec<(f64, f64)> = oracle.iter().map(|s| (s.alpha, s.beta)).collect();
    let mut hausdorff = 0.0f64;
    for x in &a {
        let d = b.iter().map(|y| pair_dist(*x, *y)).fold(f64::INFINITY, f64::min);
        hausdorff = hausdorff.max(d);
    }
    for y in &b {
        let d = a.iter().map(|x| pair_dist(*x, *y)).fold(f64::INFINITY, f64::min);
        hausdorff = hausdorff.max(d);
    }
    if a.is_empty() && b.is_empty() {
        hausdorff = 0.0;
    }
    Ok(EquivalenceReport {
        pipeline_count: pipeline.count,
        oracle_count: oracle.len(),
        counts_agree: pipeline.count == oracle.len(),
        max_pair_distance: hausdorff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p_of(terms: &[(i32, f64)]) -> LaurentPolynomial {
        let t: Vec<(i32, C64)> = terms.iter().map(|&(k, v)| (k, C64::new(v, 0.0))).collect();
        LaurentPolynomial::from_terms(&t).unwrap()
    }

    #[test]
    fn triple_point_pairs() {
        let p = p_of(&[(2, 1.0), (-1, 1.0)]);
        let found = oracle_self_intersections(&p, &OracleConfig::default()).unwrap();
        assert_eq!(found.len(), 3);
        let expected = [(PI / 3.0, PI), (PI / 3.0, 5.0 * PI / 3.0), (PI, 5.0 * PI / 3.0)];
        for e in expected {
            assert!(
                found.iter().any(|s| pair_dist((s.alpha, s.beta), e) < 1e-8),
                "missing {e:?}"
            );
        }
    }

    #[test]
    fn identity_is_empty() {
        let p = p_of(&[(1, 1.0)]);
        assert!(oracle_self_intersections(&p, &OracleConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn balanced_input_saturates() {
        let p = LaurentPolynomial::from_terms(&[
            (1, C64::new(1.0, 0.0)),
            (-1, unit(1.1)),
        ])
        .unwrap();
        match oracle_self_intersections(&p, &OracleConfig::default()) {
            Err(Error::Saturation { .. }) => {}
            other => panic!("expected saturation, got {other:?}"),
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let p = p_of(&[(3, 0.7), (1, -0.4), (-2, 0.5)]);
        let h = 1e-5;
        for j in 0..100 {
            let a = TAU * j as f64 / 100.0;
            // d/dα p(e^{iα}) = i e^{iα} p'(e^{iα})
            let exact = C64::new(0.0, 1.0) * unit(a) * p.eval_derivative(unit(a)).unwrap();
            let fd = (p.evaluate(unit(a + h)).unwrap() - p.evaluate(unit(a - h)).unwrap())
                / C64::new(2.0 * h, 0.0);
            assert!((exact - fd).norm() < 1e-6 * (1.0 + exact.norm()), "angle {a}");
        }
    }

    #[test]
    fn compare_agrees_on_quine_case() {
        let p = p_of(&[(3, 1.0), (1, 0.05)]);
        let r = compare(&p).unwrap();
        assert!(r.counts_agree, "{r:?}");
        assert_eq!(r.pipeline_count, 4);
        assert!(r.max_pair_distance < 1e-6);
    }

    #[test]
    fn grid_size_stability() {
        let p = p_of(&[(3, 1.0), (-2, 0.6)]);
        let base = oracle_self_intersections(&p, &OracleConfig::default()).unwrap();
        let double = oracle_self_intersections(
            &p,
            &OracleConfig { grid_size: 8192, ..OracleConfig::default() },
        )
        .unwrap();
        assert_eq!(base.len(), double.len());
    }
}
