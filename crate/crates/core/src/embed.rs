//! Constructive approximation of a sampled circle map by a simple closed,
//! positively oriented polyline curve in the L^p norm.
//!
//! Pipeline: Fourier-truncate the target to a Laurent polynomial (degree
//! range grown until the truncation fits its budget), perturb into a
//! non-exceptional transversal configuration, enumerate the
//! self-intersections, excise parameter neighborhoods of the crossing
//! angles, reconnect the surviving arcs in parameter order inside a disk,
//! and certify simplicity, orientation and the L^p distance. Each budget
//! third (truncation, perturbation, surgery) is tracked explicitly; the
//! final certificate is computed, never assumed.

use crate::error::{Error, Result};
use crate::geometry::{
    open_polyline_is_simple, plan_connector, polyline_is_simple, signed_area, Arc, PlanarCurve,
    SegmentIndex,
};
use crate::intersect::{self_intersections, SelfIntersection, ToleranceSet};
use crate::laurent::{unit, LaurentPolynomial};
use crate::{C64, TAU};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A request to approximate circle samples by an embedding.
#[derive(Debug, Clone)]
pub struct EmbeddingRequest {
    /// Samples `(angle, value)` of the target map.
    pub target: Vec<(f64, C64)>,
    /// Norm exponent `p ≥ 1`.
    pub p_exponent: f64,
    /// L^p budget `ε > 0`.
    pub epsilon: f64,
    /// Seed driving every randomized step.
    pub seed: u64,
    /// Fixed Fourier truncation range, or `None` for automatic growth.
    pub degree_range: Option<(i32, i32)>,
}

/// Budget accounting and pipeline counters for one embedding run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct EmbedDiagnostics {
    pub disk_radius: f64,
    pub truncation_error: f64,
    pub perturbation_error: f64,
    pub surgery_budget: f64,
    pub crossings: usize,
    pub degree_range: (i32, i32),
    pub delta_param: f64,
    pub attempts: u32,
}

/// A certified embedding: simple, positively oriented, within budget.
#[derive(Debug, Clone)]
pub struct EmbeddingResult {
    pub curve: PlanarCurve,
    pub lp_distance: f64,
    /// Fourier coefficients of the output curve over
    /// `fourier_k_min ..= fourier_k_min + fourier.len() - 1`.
    pub fourier_k_min: i32,
    pub fourier: Vec<C64>,
    pub simple: bool,
    pub signed_area: f64,
    /// Total parameter length on which the target's truncation was
    /// replaced by connectors.
    pub modified_measure: f64,
    pub diagnostics: EmbedDiagnostics,
}

impl Serialize for EmbeddingResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            curve: &'a PlanarCurve,
            lp_distance: f64,
            fourier_k_min: i32,
            fourier: Vec<(f64, f64)>,
            simple: bool,
            signed_area: f64,
            modified_measure: f64,
            diagnostics: &'a EmbedDiagnostics,
        }
        Repr {
            curve: &self.curve,
            lp_distance: self.lp_distance,
            fourier_k_min: self.fourier_k_min,
            fourier: self.fourier.iter().map(|c| (c.re, c.im)).collect(),
            simple: self.simple,
            signed_area: self.signed_area,
            modified_measure: self.modified_measure,
            diagnostics: &self.diagnostics,
        }
        .serialize(s)
    }
}

fn sort_samples(samples: &[(f64, C64)]) -> Vec<(f64, C64)> {
    let mut s: Vec<(f64, C64)> = samples.iter().map(|&(a, v)| (a.rem_euclid(TAU), v)).collect();
    s.sort_by(|x, y| x.0.total_cmp(&y.0));
    s
}

fn interp_sorted(sorted: &[(f64, C64)], theta: f64) -> C64 {
    let n = sorted.len();
    let theta = theta.rem_euclid(TAU);
    let idx = sorted.partition_point(|&(a, _)| a <= theta);
    let (a0, v0) = sorted[(idx + n - 1) % n];
    let (a1, v1) = sorted[idx % n];
    let span = (a1 - a0).rem_euclid(TAU);
    if span == 0.0 {
        return v0;
    }
    v0 + (v1 - v0) * ((theta - a0).rem_euclid(TAU) / span)
}

/// `((1/2π) ∫ |a(θ) - b(θ)|^p dθ)^{1/p}` by the composite trapezoid rule
/// on the common parameter refinement of the curve and the samples.
pub fn lp_distance(a: &PlanarCurve, b: &[(f64, C64)], p_exponent: f64) -> f64 {
    let sorted = sort_samples(b);
    let mut grid: Vec<f64> = a.params().to_vec();
    grid.extend(sorted.iter().map(|&(t, _)| t));
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
    let h = |theta: f64| (a.at_param(theta) - interp_sorted(&sorted, theta)).norm().powf(p_exponent);
    let mut acc = 0.0;
    for i in 0..grid.len() {
        let t0 = grid[i];
        let t1 = if i + 1 < grid.len() { grid[i + 1] } else { grid[0] + TAU };
        let dt = t1 - t0;
        if dt <= 0.0 {
            continue;
        }
        acc += 0.5 * dt * (h(t0) + h(t1 % TAU));
    }
    (acc / TAU).powf(1.0 / p_exponent)
}

fn lp_between_polys(q0: &LaurentPolynomial, q1: &LaurentPolynomial, grid: usize, p: f64) -> f64 {
    let mut acc = 0.0;
    for j in 0..grid {
        let z = unit(TAU * j as f64 / grid as f64);
        acc += (q0.evaluate(z).unwrap() - q1.evaluate(z).unwrap()).norm().powf(p);
    }
    (acc / grid as f64).powf(1.0 / p)
}

fn lp_poly_vs_samples(q: &LaurentPolynomial, sorted: &[(f64, C64)], p: f64) -> f64 {
    let mut acc = 0.0;
    for &(theta, v) in sorted {
        acc += (q.evaluate(unit(theta)).unwrap() - v).norm().powf(p);
    }
    (acc / sorted.len() as f64).powf(1.0 / p)
}

/// Perturb `q` until it is non-exceptional and its self-intersections are
/// a finite transversal set. Adds independent pseudo-random complex
/// perturbations of modulus ≤ δ to every coefficient (plus, when the
/// exponent support has gcd ≥ 2, a δ-size coefficient at exponent m+1 to
/// break it), retrying with fresh draws up to 16 times.
pub fn perturb_to_generic(
    q: &LaurentPolynomial,
    seed: u64,
    delta: f64,
) -> Result<LaurentPolynomial> {
    Ok(perturb_with_report(q, seed, delta, &ToleranceSet { seed, ..Default::default() })?.0)
}

pub(crate) fn perturb_with_report(
    q: &LaurentPolynomial,
    seed: u64,
    delta: f64,
    tol: &ToleranceSet,
) -> Result<(LaurentPolynomial, crate::intersect::AnalysisReport)> {
    if !(delta > 0.0) {
        return Err(Error::Range(format!("perturbation size must be positive, got {delta}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let max_dp = {
        let steps = 256;
        (0..steps)
            .map(|j| q.eval_derivative(unit(TAU * j as f64 / steps as f64)).unwrap().norm())
            .fold(0.0, f64::max)
    };
    let jac_floor = 1e-9 * (1.0 + max_dp * max_dp);
    for attempt in 0..16u32 {
        let mut terms: Vec<(i32, C64)> = Vec::new();
        for k in q.m()..=q.n() {
            let bump = C64::from_polar(delta * rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU));
            let c = q.coeff(k) + bump;
            if c.norm() > 0.0 {
                terms.push((k, c));
            }
        }
        if q.support_gcd() >= 2 {
            let e = q.m() + 1;
            debug_assert!(e != 0);
            terms.push((e, C64::from_polar(delta, rng.gen_range(0.0..TAU))));
        }
        let Ok(candidate) = LaurentPolynomial::from_terms(&terms) else { continue };
        let Ok((pn, _)) = candidate.normalize() else { continue };
        if pn.detect_exceptional(tol.balance) != crate::laurent::ExceptionalStatus::None {
            continue;
        }
        match self_intersections(&candidate, tol) {
            Ok(report) => {
                let transversal = report.count == 0
                    || (report.diagnostics.min_pair_jacobian > jac_floor
                        && report.diagnostics.min_pair_separation > 10.0 * tol.cluster);
                if transversal {
                    return Ok((candidate, report));
                }
            }
            Err(_) => continue,
        }
        let _ = attempt;
    }
    Err(Error::GenericityFailure(16))
}

/// Remove open parameter neighborhoods of half-width `δ_param` around
/// every crossing angle and sample `q` on the surviving closed arcs.
/// Verifies that the image arcs are pairwise disjoint simple arcs,
/// doubling `δ_param` up to 6 times when they are not.
pub fn excise_neighborhoods(
    q: &LaurentPolynomial,
    crossings: &[SelfIntersection],
    delta_param: f64,
) -> Result<Vec<Arc>> {
    let angles = crossing_angles(crossings);
    excise_at_angles(q, &angles, delta_param, 4096).map(|(arcs, _, _)| arcs)
}

pub(crate) fn crossing_angles(crossings: &[SelfIntersection]) -> Vec<f64> {
    let mut angles: Vec<f64> = Vec::new();
    for s in crossings {
        for a in [s.alpha, s.beta] {
            let a = a.rem_euclid(TAU);
            if angles.iter().all(|&b| crate::intersect::circ_dist(a, b) > 1e-9) {
                angles.push(a);
            }
        }
    }
    angles.sort_by(f64::total_cmp);
    angles
}

pub(crate) fn excise_at_angles(
    q: &LaurentPolynomial,
    angles: &[f64],
    delta0: f64,
    base_samples: usize,
) -> Result<(Vec<Arc>, f64, f64)> {
    if angles.is_empty() {
        // Nothing to excise: return the full circle as one open arc whose
        // closure gap is a single sample step.
        let step = TAU / base_samples as f64;
        let params: Vec<f64> = (0..base_samples).map(|j| j as f64 * step).collect();
        let points: Vec<C64> =
            params.iter().map(|&a| q.evaluate(unit(a)).unwrap()).collect();
        let arc = Arc { points, params: params.clone(), param_interval: (0.0, TAU - step) };
        return Ok((vec![arc], 0.0, step));
    }
    let min_gap = {
        let mut g = f64::INFINITY;
        for (i, &a) in angles.iter().enumerate() {
            let b = angles[(i + 1) % angles.len()];
            let gap = (b - a).rem_euclid(TAU);
            let gap = if gap == 0.0 { TAU } else { gap };
            g = g.min(gap);
        }
        g
    };
    let base_step = TAU / base_samples as f64;
    let mut delta = delta0.max(1e-13);
    let mut last_err = String::new();
    for _ in 0..=6 {
        if 2.0 * delta >= min_gap {
            return Err(Error::ExcisionFailure(format!(
                "excision half-width {delta} overlaps adjacent crossing angles (min gap {min_gap})"
            )));
        }
        let arcs = build_arcs(q, angles, delta, base_step)?;
        match arcs_disjoint_and_simple(&arcs) {
            Ok(()) => {
                let measure = 2.0 * delta * angles.len() as f64;
                return Ok((arcs, delta, measure));
            }
            Err(e) => last_err = e,
        }
        delta *= 2.0;
    }
    Err(Error::ExcisionFailure(format!("no excision width yielded disjoint simple arcs: {last_err}")))
}

fn build_arcs(
    q: &LaurentPolynomial,
    angles: &[f64],
    delta: f64,
    base_step: f64,
) -> Result<Vec<Arc>> {
    let k = angles.len();
    let mut arcs = Vec::with_capacity(k);
    for i in 0..k {
        let a0 = angles[i] + delta;
        let mut a1 = angles[(i + 1) % k] - delta;
        while a1 <= a0 {
            a1 += TAU;
        }
        // Geometric refinement toward both endpoints keeps the stub
        // geometry resolved at the excision scale.
        let mut params = vec![a0];
        let mut off = delta;
        while off < base_step && a0 + off < a1 {
            params.push(a0 + off);
            off *= 2.0;
        }
        let mut u = (a0 / base_step).ceil() * base_step;
        while u < a1 {
            if u > *params.last().unwrap() + 1e-15 && a1 - u > 1e-15 {
                params.push(u);
            }
            u += base_step;
        }
        let mut off = delta;
        let mut tail = Vec::new();
        while off < base_step && a1 - off > *params.last().unwrap() + 1e-15 {
            tail.push(a1 - off);
            off *= 2.0;
        }
        tail.reverse();
        params.extend(tail);
        params.push(a1);
        params.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
        let points: Vec<C64> =
            params.iter().map(|&t| q.evaluate(unit(t.rem_euclid(TAU))).unwrap()).collect();
        arcs.push(Arc { points, params: params.clone(), param_interval: (a0, a1) });
    }
    Ok(arcs)
}

fn arcs_disjoint_and_simple(arcs: &[Arc]) -> std::result::Result<(), String> {
    for (i, arc) in arcs.iter().enumerate() {
        if arc.points.len() < 2 {
            return Err(format!("arc {i} degenerate"));
        }
        if !open_polyline_is_simple(&arc.points) {
            return Err(format!("arc {i} self-crosses"));
        }
    }
    // Pairwise distance by sampling each arc's points against the other
    // arcs' segments.
    let mut segs = Vec::new();
    let mut owner = Vec::new();
    for (i, arc) in arcs.iter().enumerate() {
        for s in arc.segments() {
            segs.push(s);
            owner.push(i);
        }
    }
    let scale = arcs
        .iter()
        .flat_map(|a| a.points.iter().map(|p| p.norm()))
        .fold(0.0, f64::max)
        .max(1e-12);
    let index = SegmentIndex::new(segs.clone(), scale / 64.0);
    let _ = &index;
    for (i, arc) in arcs.iter().enumerate() {
        for &w in &arc.points {
            for (s, &o) in segs.iter().zip(owner.iter()) {
                if o == i {
                    continue;
                }
                let d = dist_point_seg(w, s.0, s.1);
                if d <= 1e-12 * scale {
                    return Err(format!("arcs {i} and {o} touch"));
                }
            }
        }
    }
    Ok(())
}

fn dist_point_seg(w: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = ((w - a).re * ab.re + (w - a).im * ab.im) / len2;
    (w - (a + ab * t.clamp(0.0, 1.0))).norm()
}

/// Join the arcs in circular parameter order with connectors planned in
/// the complement of everything built so far, and close the final gap with
/// the variant (direct, or detouring around the blocked direct route)
/// whose signed area is positive.
pub fn reconnect(arcs: &[Arc], radius: f64, clearance: f64) -> Result<PlanarCurve> {
    if arcs.is_empty() {
        return Err(Error::Range("reconnect needs at least one arc".into()));
    }
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by(|&i, &j| arcs[i].param_interval.0.total_cmp(&arcs[j].param_interval.0));
    let sorted: Vec<Arc> = order.iter().map(|&i| arcs[i].clone()).collect();
    let arcs: Vec<&Arc> = sorted.iter().collect();
    let n = arcs.len();

    // Plan the n-1 interior connectors in parameter order; everything
    // already built is a hard obstacle for the next connector.
    let mut connectors: Vec<Vec<C64>> = Vec::new();
    for i in 0..n - 1 {
        let start = arcs[i].end();
        let end = arcs[i + 1].start();
        let gap = (end - start).norm();
        let cl = clearance.min(0.35 * gap).max(1e-13);
        let (mut hard, soft) = crate::geometry::split_stub_segments(&sorted, start, end, cl);
        for done in &connectors {
            hard.extend(done.windows(2).map(|w| (w[0], w[1])));
        }
        let path = plan_connector(&hard, &soft, &[], start, end, cl, radius)?;
        connectors.push(path);
    }

    // The closure: try the direct plan first. If it closes with negative
    // area, dam its side off (the route itself plus a wall from its
    // outermost point to the disk boundary) and search again in the other
    // homotopy class; keep whichever variant has positive signed area.
    let start = arcs[n - 1].end();
    let end = arcs[0].start();
    let gap = (end - start).norm();
    let cl = clearance.min(0.35 * gap).max(1e-13);
    let (mut hard, soft) = crate::geometry::split_stub_segments(&sorted, start, end, cl);
    for done in &connectors {
        hard.extend(done.windows(2).map(|w| (w[0], w[1])));
    }
    let mut walls: Vec<(C64, C64)> = Vec::new();
    let mut last_err = Error::OrientationFailure;
    for _attempt in 0..3 {
        let closure = match plan_connector(&hard, &soft, &walls, start, end, cl, radius) {
            Ok(p) => p,
            Err(e) => {
                last_err = e;
                break;
            }
        };
        let curve = assemble(&arcs, &connectors, &closure)?;
        if signed_area(&curve) > 0.0 {
            return Ok(curve);
        }
        // Wrong winding: wall off what this route encircles. The wall runs
        // from the nearest obstacle point, through the route's outermost
        // point, to the disk boundary; the route itself stays free, so the
        // wedge corridors shared by both homotopy classes remain usable.
        last_err = Error::OrientationFailure;
        let Some(&far) = closure
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .filter(|w| w.norm() > 0.0)
        else {
            break;
        };
        let mut anchor = far;
        let mut best = f64::INFINITY;
        for &(a, b) in &hard {
            let ab = b - a;
            let t = if ab.norm_sqr() == 0.0 {
                0.0
            } else {
                (((far - a).re * ab.re) + ((far - a).im * ab.im)) / ab.norm_sqr()
            };
            let p = a + ab * t.clamp(0.0, 1.0);
            let d = (far - p).norm();
            if d < best {
                best = d;
                anchor = p;
            }
        }
        walls.push((anchor, far));
        walls.push((far, far * (0.999 * radius / far.norm())));
    }
    Err(last_err)
}

/// Stitch arcs and connectors into a closed curve. Connector interiors
/// receive the excised parameter interval, distributed proportionally to
/// arclength; the whole parameter sequence is then rotated to start just
/// after its wrap point so that params increase strictly within [0, 2π).
fn assemble(arcs: &[&Arc], connectors: &[Vec<C64>], closure: &[C64]) -> Result<PlanarCurve> {
    let n = arcs.len();
    let mut points: Vec<C64> = Vec::new();
    let mut params: Vec<f64> = Vec::new();
    for i in 0..n {
        points.extend(arcs[i].points.iter().copied());
        params.extend(arcs[i].params.iter().copied());
        let conn: &[C64] = if i + 1 < n { &connectors[i] } else { closure };
        let p_start = arcs[i].param_interval.1;
        let mut p_end = if i + 1 < n {
            arcs[i + 1].param_interval.0
        } else {
            arcs[0].param_interval.0 + TAU
        };
        while p_end <= p_start {
            p_end += TAU;
        }
        if conn.len() > 2 {
            let total: f64 = conn.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
            let mut acc = 0.0;
            for w in conn.windows(2).take(conn.len() - 2) {
                acc += (w[1] - w[0]).norm();
                let frac = if total > 0.0 { acc / total } else { 0.5 };
                points.push(w[1]);
                params.push(p_start + (p_end - p_start) * frac.clamp(1e-9, 1.0 - 1e-9));
            }
        }
    }
    // Rotate so the parameter sequence is increasing in [0, 2π).
    let modded: Vec<f64> = params.iter().map(|p| p.rem_euclid(TAU)).collect();
    let rot = (1..modded.len()).find(|&i| modded[i] < modded[i - 1]).unwrap_or(0);
    let mut pts2: Vec<C64> = Vec::with_capacity(points.len());
    let mut par2: Vec<f64> = Vec::with_capacity(params.len());
    for i in 0..points.len() {
        let j = (rot + i) % points.len();
        pts2.push(points[j]);
        par2.push(modded[j]);
    }
    // Collapse parameter ties introduced by rounding.
    let mut pts3 = Vec::with_capacity(pts2.len());
    let mut par3: Vec<f64> = Vec::with_capacity(par2.len());
    for (pt, pr) in pts2.into_iter().zip(par2.into_iter()) {
        if par3.last().map_or(true, |&last| pr > last) {
            pts3.push(pt);
            par3.push(pr);
        }
    }
    PlanarCurve::new(pts3, par3)
}

/// Fourier coefficients of a parameterized polyline curve, integrating the
/// piecewise-linear map exactly against `e^{-ikθ}`.
pub fn curve_fourier(curve: &PlanarCurve, k_min: i32, k_max: i32) -> Vec<C64> {
    let n = curve.len();
    let mut out = Vec::with_capacity((k_max - k_min + 1) as usize);
    for k in k_min..=k_max {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            let t0 = curve.params()[i];
            let (t1, w1) = if i + 1 < n {
                (curve.params()[i + 1], curve.point(i + 1))
            } else {
                (curve.params()[0] + TAU, curve.point(0))
            };
            let w0 = curve.point(i);
            let dt = t1 - t0;
            if dt <= 0.0 {
                continue;
            }
            if k == 0 {
                acc += (w0 + w1) * 0.5 * dt;
                continue;
            }
            let ik = C64::new(0.0, -(k as f64));
            let e0 = (ik * t0).exp();
            let e1 = (ik * t1).exp();
            // ∫ (w0 + s (θ - t0)) e^{-ikθ} dθ with s the segment slope
            let s = (w1 - w0) / dt;
            let j0 = (e1 - e0) / ik;
            let j1 = (t1 * e1 - t0 * e0) / ik - j0 / ik;
            acc += w0 * j0 + s * (j1 - t0 * j0);
        }
        out.push(acc / TAU);
    }
    out
}

/// Run the full surgery pipeline for an embedding request.
pub fn embed(request: &EmbeddingRequest) -> Result<EmbeddingResult> {
    if !(request.epsilon > 0.0) {
        return Err(Error::Range(format!("epsilon must be positive, got {}", request.epsilon)));
    }
    if !(request.p_exponent >= 1.0) {
        return Err(Error::Range(format!("p must be ≥ 1, got {}", request.p_exponent)));
    }
    if request.target.len() < 16 {
        return Err(Error::Range(format!("need at least 16 target samples, got {}", request.target.len())));
    }
    let eps = request.epsilon;
    let p = request.p_exponent;
    let sorted = sort_samples(&request.target);

    // Truncation: grow the range until its share of the budget holds.
    let ranges: Vec<(i32, i32)> = match request.degree_range {
        Some(r) => vec![r],
        None => vec![(-4, 4), (-8, 8), (-16, 16), (-32, 32), (-64, 64)],
    };
    let mut chosen: Option<(LaurentPolynomial, f64, (i32, i32))> = None;
    for &(m, n) in &ranges {
        let fit = match LaurentPolynomial::fit_from_samples(&sorted, m, n) {
            Ok(f) => f,
            Err(Error::DegenerateInput(_)) => {
                // Constant-ish target: a small circle around its mean is
                // already an embedding candidate.
                let mean = sorted.iter().fold(C64::new(0.0, 0.0), |a, &(_, v)| a + v)
                    / sorted.len() as f64;
                LaurentPolynomial::from_terms(&[(0, mean), (1, C64::new(eps / 4.0, 0.0))])?
            }
            Err(e) => return Err(e),
        };
        let err = lp_poly_vs_samples(&fit, &sorted, p);
        if err <= eps / 3.0 {
            chosen = Some((fit, err, (m, n)));
            break;
        }
    }
    let Some((q0, trunc_err, range)) = chosen else {
        return Err(Error::BudgetExceeded(format!(
            "truncation error above ε/3 = {} for every degree range up to [-64, 64]",
            eps / 3.0
        )));
    };

    // Perturbation into a generic transversal configuration.
    let span = (q0.n() - q0.m() + 2) as f64;
    let max_coeff = q0.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let delta = (eps / (12.0 * span)).min(0.05 * eps).min(1e-3 * max_coeff).max(1e-12);
    let tol = ToleranceSet { seed: request.seed, ..Default::default() };
    let (q1, report) = perturb_with_report(&q0, request.seed, delta, &tol)?;
    let pert_err = lp_between_polys(&q0, &q1, sorted.len().max(1024), p);

    let mut angles = crossing_angles(&report.intersections);
    // Spectral orientation of the truncation: π Σ k |a_k|²; a negatively
    // oriented crossing-free target still needs one cut for the
    // winding-reversing closure.
    let spectral: f64 = q1.terms().map(|(k, c)| k as f64 * c.norm_sqr()).sum();
    if angles.is_empty() && spectral <= 0.0 {
        angles.push(0.0);
    }

    let grid_max = q1.max_on_circle(2048);
    let radius = 1.5 * grid_max.max(eps / 4.0);
    let surgery_budget = (eps - trunc_err - pert_err).max(eps / 3.0 * 0.999);
    let k_angles = angles.len().max(1) as f64;
    let delta_param0 = if angles.is_empty() {
        0.0
    } else {
        let measure_cap = TAU * (0.8 * surgery_budget / (2.0 * radius)).powf(p);
        (measure_cap / (2.0 * k_angles)).max(1e-12)
    };

    let base_samples = 4096usize.max(sorted.len());
    let mut attempt_delta = delta_param0;
    let mut attempts = 0u32;
    let mut last_err: Option<Error> = None;
    for _ in 0..4 {
        attempts += 1;
        let (arcs, delta_used, measure) =
            match excise_at_angles(&q1, &angles, attempt_delta, base_samples) {
                Ok(x) => x,
                Err(e) => {
                    last_err = Some(e);
                    break;
                }
            };
        let curve = match reconnect(&arcs, radius, radius) {
            Ok(c) => c,
            Err(e) => {
                last_err = Some(e);
                attempt_delta = (attempt_delta * 0.5).max(1e-13);
                continue;
            }
        };
        let (simple, _) = polyline_is_simple(&curve);
        let area = signed_area(&curve);
        let dist = lp_distance(&curve, &sorted, p);
        if simple && area > 0.0 && dist <= eps {
            let guard = 8;
            let k_min = range.0 - guard;
            let k_max = range.1 + guard;
            let fourier = curve_fourier(&curve, k_min, k_max);
            return Ok(EmbeddingResult {
                curve,
                lp_distance: dist,
                fourier_k_min: k_min,
                fourier,
                simple,
                signed_area: area,
                modified_measure: measure,
                diagnostics: EmbedDiagnostics {
                    disk_radius: radius,
                    truncation_error: trunc_err,
                    perturbation_error: pert_err,
                    surgery_budget,
                    crossings: report.count,
                    degree_range: range,
                    delta_param: delta_used,
                    attempts,
                },
            });
        }
        last_err = Some(Error::BudgetExceeded(format!(
            "certification failed: simple={simple}, signed_area={area:.3e}, distance={dist:.3e} vs ε={eps:.3e}"
        )));
        attempt_delta = (attempt_delta * 0.5).max(1e-13);
    }
    Err(last_err.unwrap_or(Error::BudgetExceeded("no surgery attempt certified".into())))
}

/// Realize a target Fourier sequence: synthesize samples of
/// `Σ c_k e^{ikθ}`, embed with an L² budget, and certify
/// `‖c - f̂‖₂ < ε` with `f̂` recomputed from the output curve over the
/// stated range plus a guard band.
pub fn match_fourier(
    k_min: i32,
    coeffs: &[C64],
    epsilon: f64,
    seed: u64,
) -> Result<EmbeddingResult> {
    if coeffs.is_empty() || coeffs.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::Range("target coefficient sequence must be nonzero".into()));
    }
    let k_max = k_min + coeffs.len() as i32 - 1;
    let samples = 4096usize;
    let target: Vec<(f64, C64)> = (0..samples)
        .map(|j| {
            let theta = TAU * j as f64 / samples as f64;
            let mut v = C64::new(0.0, 0.0);
            for (i, c) in coeffs.iter().enumerate() {
                v += c * unit((k_min + i as i32) as f64 * theta);
            }
            (theta, v)
        })
        .collect();
    let request = EmbeddingRequest {
        target,
        p_exponent: 2.0,
        epsilon,
        seed,
        degree_range: Some((k_min.min(-1), k_max.max(1))),
    };
    let mut result = embed(&request)?;
    let guard = 8;
    let w_min = k_min - guard;
    let w_max = k_max + guard;
    let fhat = curve_fourier(&result.curve, w_min, w_max);
    let mut l2 = 0.0;
    for (i, f) in fhat.iter().enumerate() {
        let k = w_min + i as i32;
        let c = if k >= k_min && k <= k_max {
            coeffs[(k - k_min) as usize]
        } else {
            C64::new(0.0, 0.0)
        };
        l2 += (c - f).norm_sqr();
    }
    let l2 = l2.sqrt();
    if l2 >= epsilon {
        return Err(Error::BudgetExceeded(format!(
            "recomputed Fourier distance {l2:.3e} exceeds ε = {epsilon:.3e}"
        )));
    }
    result.fourier_k_min = w_min;
    result.fourier = fhat;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_samples(n: usize, r: f64, dir: f64) -> Vec<(f64, C64)> {
        (0..n)
            .map(|j| {
                let th = TAU * j as f64 / n as f64;
                (th, C64::from_polar(r, dir * th))
            })
            .collect()
    }

    fn curve_of(samples: &[(f64, C64)]) -> PlanarCurve {
        PlanarCurve::new(
            samples.iter().map(|&(_, v)| v).collect(),
            samples.iter().map(|&(a, _)| a).collect(),
        )
        .unwrap()
    }

    #[test]
    fn lp_distance_basic_identities() {
        let a = circle_samples(256, 1.0, 1.0);
        let curve = curve_of(&a);
        assert!(lp_distance(&curve, &a, 2.0) < 1e-12);
        let shifted: Vec<(f64, C64)> =
            a.iter().map(|&(t, v)| (t, v + C64::new(0.3, -0.4))).collect();
        assert!((lp_distance(&curve, &shifted, 2.0) - 0.5).abs() < 1e-9);
        let scaled = circle_samples(256, 1.1, 1.0);
        assert!((lp_distance(&curve, &scaled, 2.0) - 0.1).abs() < 1e-9);
        assert!((lp_distance(&curve, &scaled, 1.0) - 0.1).abs() < 1e-9);
    }

    #[test]
    fn perturbation_breaks_gcd_and_balance() {
        let q = LaurentPolynomial::from_terms(&[
            (4, C64::new(1.0, 0.0)),
            (-2, C64::new(1.0, 0.0)),
        ])
        .unwrap();
        let out = perturb_to_generic(&q, 5, 1e-4).unwrap();
        assert_eq!(out.support_gcd(), 1);
        let q = LaurentPolynomial::from_terms(&[
            (1, C64::new(1.0, 0.0)),
            (-1, unit(0.7)),
        ])
        .unwrap();
        let out = perturb_to_generic(&q, 5, 1e-4).unwrap();
        let (a1, am1) = (out.coeff(1).norm(), out.coeff(-1).norm());
        assert!((a1 - am1).abs() > 0.0);
    }

    #[test]
    fn perturbation_of_generic_input_is_small() {
        let q = LaurentPolynomial::from_terms(&[
            (3, C64::new(1.0, 0.0)),
            (1, C64::new(0.05, 0.0)),
        ])
        .unwrap();
        let out = perturb_to_generic(&q, 9, 1e-8).unwrap();
        for k in q.m()..=q.n() {
            assert!((out.coeff(k) - q.coeff(k)).norm() <= 1e-8 + 1e-15);
        }
        let r = self_intersections(&out, &ToleranceSet::default()).unwrap();
        assert_eq!(r.count, 4);
    }

    #[test]
    fn excise_no_crossings_returns_whole_curve() {
        let q = LaurentPolynomial::from_terms(&[(1, C64::new(1.0, 0.0))]).unwrap();
        let arcs = excise_neighborhoods(&q, &[], 0.01).unwrap();
        assert_eq!(arcs.len(), 1);
        assert!(arcs[0].points.len() >= 4096);
    }

    #[test]
    fn excise_overlapping_width_fails() {
        let q = LaurentPolynomial::from_terms(&[
            (2, C64::new(1.0, 0.0)),
            (-1, C64::new(1.0, 0.0)),
        ])
        .unwrap();
        let crossings =
            self_intersections(&q, &ToleranceSet::default()).unwrap().intersections;
        assert!(matches!(
            excise_neighborhoods(&q, &crossings, 2.0),
            Err(Error::ExcisionFailure(_))
        ));
    }

    #[test]
    fn curve_fourier_of_circle() {
        let samples = circle_samples(512, 1.0, 1.0);
        let curve = curve_of(&samples);
        let f = curve_fourier(&curve, -2, 2);
        assert!((f[3] - C64::new(1.0, 0.0)).norm() < 1e-4); // k = 1
        for (i, k) in (-2..=2).enumerate() {
            if k != 1 {
                assert!(f[i].norm() < 1e-6, "k={k}: {}", f[i]);
            }
        }
    }

    #[test]
    fn embed_rejects_bad_requests() {
        let samples = circle_samples(256, 1.0, 1.0);
        let r = embed(&EmbeddingRequest {
            target: samples.clone(),
            p_exponent: 2.0,
            epsilon: 0.0,
            seed: 1,
            degree_range: None,
        });
        assert!(matches!(r, Err(Error::Range(_))));
        let r = embed(&EmbeddingRequest {
            target: samples,
            p_exponent: 0.5,
            epsilon: 0.1,
            seed: 1,
            degree_range: None,
        });
        assert!(matches!(r, Err(Error::Range(_))));
    }

    #[test]
    fn embed_circle_target_is_near_identity() {
        let samples = circle_samples(1024, 1.0, 1.0);
        let out = embed(&EmbeddingRequest {
            target: samples,
            p_exponent: 2.0,
            epsilon: 0.01,
            seed: 7,
            degree_range: None,
        })
        .unwrap();
        assert!(out.simple);
        assert!(out.signed_area > 0.0);
        assert!(out.lp_distance < 0.01);
        assert!((out.signed_area - std::f64::consts::PI).abs() < 0.05);
    }
}
