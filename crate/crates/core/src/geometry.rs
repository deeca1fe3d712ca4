//! Planar primitives for the embedding surgery: signed area, polyline
//! simplicity testing, obstacle-avoiding connector construction in the
//! complement of a set of arcs, and corner-cutting smoothing.
//!
//! The connector planner works at two scales. Excision gaps are orders of
//! magnitude smaller than the curve itself, so a single uniform grid
//! cannot resolve both; instead each endpoint first *escapes* to
//! macro-clear space through a ladder of progressively coarser local
//! grids (cell size doubling per level, every transit respecting the
//! clearance contract), and a global coarse A* joins the escape exits.
//! Distance queries against the obstacle segments are exact and
//! accelerated by a bucket index; segment transits are validated by
//! sphere marching on the 1-Lipschitz distance field.

use crate::error::{Error, Result};
use crate::C64;
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

/// Closed sampled curve with the circle parameterization carried through
/// surgery. `points[i]` is the curve at angle `params[i]`; the last point
/// connects back to the first.
#[derive(Debug, Clone, Serialize)]
pub struct PlanarCurve {
    points: Vec<(f64, f64)>,
    params: Vec<f64>,
}

impl PlanarCurve {
    /// Validates: at least 3 points, matching lengths, params strictly
    /// increasing within [0, 2π).
    pub fn new(points: Vec<C64>, params: Vec<f64>) -> Result<Self> {
        if points.len() < 3 || points.len() != params.len() {
            return Err(Error::Range(format!(
                "curve needs ≥ 3 points with matching params, got {} / {}",
                points.len(),
                params.len()
            )));
        }
        if params.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Range("params must be strictly increasing".into()));
        }
        if params[0] < 0.0 || *params.last().unwrap() >= crate::TAU {
            return Err(Error::Range("params must lie in [0, 2π)".into()));
        }
        Ok(Self { points: points.iter().map(|p| (p.re, p.im)).collect(), params })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> C64 {
        C64::new(self.points[i].0, self.points[i].1)
    }

    pub fn points(&self) -> impl Iterator<Item = C64> + '_ {
        self.points.iter().map(|&(x, y)| C64::new(x, y))
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Curve position at an arbitrary angle, by linear interpolation in
    /// the parameter (wrapping around the closing segment).
    pub fn at_param(&self, theta: f64) -> C64 {
        let theta = theta.rem_euclid(crate::TAU);
        let n = self.points.len();
        let idx = self.params.partition_point(|&a| a <= theta);
        let (i0, i1) = if idx == 0 || idx == n { (n - 1, 0) } else { (idx - 1, idx) };
        let a0 = self.params[i0];
        let span = (self.params[i1] - a0).rem_euclid(crate::TAU);
        let frac = if span == 0.0 { 0.0 } else { (theta - a0).rem_euclid(crate::TAU) / span };
        self.point(i0) + (self.point(i1) - self.point(i0)) * frac
    }
}

/// Open sub-arc of a curve: a polyline with its parameter interval.
#[derive(Debug, Clone)]
pub struct Arc {
    pub points: Vec<C64>,
    /// Parameter interval; the end may exceed 2π for arcs wrapping the
    /// parameter origin.
    pub param_interval: (f64, f64),
    /// Angles of the sample points, increasing, matching `points`.
    pub params: Vec<f64>,
}

impl Arc {
    pub fn start(&self) -> C64 {
        self.points[0]
    }

    pub fn end(&self) -> C64 {
        *self.points.last().unwrap()
    }

    pub fn segments(&self) -> impl Iterator<Item = (C64, C64)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Shoelace signed area of the closed curve; positive for counterclockwise
/// orientation.
pub fn signed_area(curve: &PlanarCurve) -> f64 {
    let n = curve.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = curve.point(i);
        let q = curve.point((i + 1) % n);
        acc += p.re * q.im - q.re * p.im;
    }
    0.5 * acc
}

fn orient(a: C64, b: C64, c: C64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

fn on_segment(a: C64, b: C64, p: C64) -> bool {
    p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
}

/// Whether closed segments [a,b] and [c,d] share any point.
fn segments_intersect(a: C64, b: C64, c: C64, d: C64) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Simplicity test for the closed polyline: no two non-adjacent segments
/// may intersect; adjacent segments may share only their common endpoint.
/// Returns the verdict and up to 32 witness segment-index pairs.
///
/// Sweeps segments ordered by their minimum x, keeping an active list
/// pruned by x-interval overlap.
pub fn polyline_is_simple(curve: &PlanarCurve) -> (bool, Vec<(usize, usize)>) {
    let n = curve.len();
    let seg = |i: usize| (curve.point(i), curve.point((i + 1) % n));
    let witnesses = sweep_intersections(n, &seg, true);
    (witnesses.is_empty(), witnesses)
}

/// Simplicity test for an open polyline (no wrap segment).
pub fn open_polyline_is_simple(points: &[C64]) -> bool {
    if points.len() < 2 {
        return true;
    }
    let n = points.len() - 1;
    let seg = |i: usize| (points[i], points[i + 1]);
    sweep_intersections(n, &seg, false).is_empty()
}

fn sweep_intersections(
    n: usize,
    seg: &dyn Fn(usize) -> (C64, C64),
    closed: bool,
) -> Vec<(usize, usize)> {
    let adjacent = |i: usize, j: usize| {
        if closed {
            (i + 1) % n == j || (j + 1) % n == i
        } else {
            i + 1 == j || j + 1 == i
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    let min_x = |i: usize| {
        let (a, b) = seg(i);
        a.re.min(b.re)
    };
    let max_x = |i: usize| {
        let (a, b) = seg(i);
        a.re.max(b.re)
    };
    order.sort_by(|&i, &j| min_x(i).total_cmp(&min_x(j)).then(i.cmp(&j)));
    let mut active: Vec<usize> = Vec::new();
    let mut witnesses = Vec::new();
    for &i in &order {
        let xi = min_x(i);
        active.retain(|&j| max_x(j) >= xi);
        let (a, b) = seg(i);
        for &j in &active {
            let (c, d) = seg(j);
            if a.im.max(b.im) < c.im.min(d.im) || c.im.max(d.im) < a.im.min(b.im) {
                continue;
            }
            if adjacent(i, j) {
                // Sharing more than the common endpoint means a collinear
                // backtrack.
                let (p, q, r) = if (i + 1) % n == j {
                    (seg(i).0, seg(i).1, seg(j).1)
                } else {
                    (seg(j).0, seg(j).1, seg(i).1)
                };
                if orient(p, q, r) == 0.0 && (p - q).norm() > 0.0 {
                    let back = (r - q).re * (p - q).re + (r - q).im * (p - q).im;
                    if back > 0.0 {
                        witnesses.push((j.min(i), j.max(i)));
                    }
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                witnesses.push((j.min(i), j.max(i)));
                if witnesses.len() >= 32 {
                    return witnesses;
                }
            }
        }
        active.push(i);
    }
    witnesses
}

/// Corner-cutting smoothing of an open polyline. Each round replaces
/// every interior corner by points at 1/4 and 3/4 of the adjacent
/// segments; endpoints stay fixed and the maximum turning angle never
/// increases.
pub fn smooth_path(path: &[C64], rounds: usize) -> Vec<C64> {
    let mut cur: Vec<C64> = path.to_vec();
    for _ in 0..rounds {
        if cur.len() < 3 {
            break;
        }
        let mut next = Vec::with_capacity(2 * cur.len());
        next.push(cur[0]);
        for w in cur.windows(2) {
            next.push(w[0] * 0.75 + w[1] * 0.25);
            next.push(w[0] * 0.25 + w[1] * 0.75);
        }
        next.push(*cur.last().unwrap());
        cur = next;
    }
    cur
}

/// Maximum absolute turning angle over interior corners.
pub fn max_turning_angle(path: &[C64]) -> f64 {
    let mut worst = 0.0f64;
    for w in path.windows(3) {
        let u = w[1] - w[0];
        let v = w[2] - w[1];
        if u.norm() == 0.0 || v.norm() == 0.0 {
            continue;
        }
        let ang = (v / u).arg().abs();
        worst = worst.max(ang);
    }
    worst
}

fn dist_point_segment(w: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = (((w - a).re * ab.re) + ((w - a).im * ab.im)) / len2;
    let t = t.clamp(0.0, 1.0);
    (w - (a + ab * t)).norm()
}

/// Bucketed exact distance queries against a set of segments.
pub(crate) struct SegmentIndex {
    segs: Vec<(C64, C64)>,
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<u32>>,
}

impl SegmentIndex {
    pub fn new(segs: Vec<(C64, C64)>, cell: f64) -> Self {
        let cell = cell.max(1e-12);
        let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (id, (a, b)) in segs.iter().enumerate() {
            let x0 = (a.re.min(b.re) / cell).floor() as i64;
            let x1 = (a.re.max(b.re) / cell).floor() as i64;
            let y0 = (a.im.min(b.im) / cell).floor() as i64;
            let y1 = (a.im.max(b.im) / cell).floor() as i64;
            for x in x0..=x1 {
                for y in y0..=y1 {
                    buckets.entry((x, y)).or_default().push(id as u32);
                }
            }
        }
        Self { segs, cell, buckets }
    }

    /// Exact distance when it is below `need`; otherwise a value ≥ `need`.
    pub fn distance_within(&self, w: C64, need: f64) -> f64 {
        if self.segs.is_empty() {
            return f64::INFINITY;
        }
        let r = (need / self.cell).ceil() as i64 + 1;
        let cx = (w.re / self.cell).floor() as i64;
        let cy = (w.im / self.cell).floor() as i64;
        let mut best = f64::INFINITY;
        for x in cx - r..=cx + r {
            for y in cy - r..=cy + r {
                let Some(ids) = self.buckets.get(&(x, y)) else { continue };
                for &id in ids {
                    let (a, b) = self.segs[id as usize];
                    best = best.min(dist_point_segment(w, a, b));
                }
            }
        }
        if best.is_infinite() {
            need
        } else {
            best
        }
    }
}

/// Obstacle field with the disk constraint and attachment bubbles.
///
/// Hard segments are obstacles everywhere. Soft segments are the stub
/// pieces of the arcs this connector attaches to: they stop counting
/// inside the bubbles around the attachment points (a connector must be
/// allowed to leave its own arc), but remain obstacles outside them.
pub(crate) struct ObstacleField {
    hard: SegmentIndex,
    soft: SegmentIndex,
    radius: f64,
    bubbles: Vec<(C64, f64)>,
}

impl ObstacleField {
    pub fn new(
        hard: Vec<(C64, C64)>,
        soft: Vec<(C64, C64)>,
        radius: f64,
        bucket_cell: f64,
        bubbles: Vec<(C64, f64)>,
    ) -> Self {
        Self {
            hard: SegmentIndex::new(hard, bucket_cell),
            soft: SegmentIndex::new(soft, bucket_cell),
            radius,
            bubbles,
        }
    }

    fn in_bubble(&self, w: C64) -> bool {
        self.bubbles.iter().any(|&(c, r)| (w - c).norm() < r)
    }

    /// Distance to live obstacles; exact when below `need`.
    pub fn clearance_within(&self, w: C64, need: f64) -> f64 {
        let d = self.hard.distance_within(w, need);
        if self.in_bubble(w) {
            d
        } else {
            d.min(self.soft.distance_within(w, need))
        }
    }

    pub fn point_free(&self, w: C64, margin: f64) -> bool {
        w.norm() < self.radius && self.clearance_within(w, margin * 1.5 + 1e-12) >= margin
    }

    /// Sphere-march the segment: every point keeps `margin` clearance and
    /// stays inside the disk.
    pub fn segment_free(&self, u: C64, v: C64, margin: f64) -> bool {
        if u.norm() >= self.radius || v.norm() >= self.radius {
            return false;
        }
        let len = (v - u).norm();
        if len == 0.0 {
            return self.point_free(u, margin);
        }
        let dir = (v - u) / len;
        let advance_cap = (self.radius / 64.0).max(margin);
        let mut s = 0.0;
        loop {
            let w = u + dir * s;
            let d = self.clearance_within(w, margin + advance_cap);
            if d < margin {
                return false;
            }
            if s >= len {
                return true;
            }
            let step = (d - margin).min(advance_cap).max(0.25 * margin);
            s = (s + step).min(len);
        }
    }
}

#[derive(Clone, Copy)]
struct GridSpec {
    origin: C64,
    cell: f64,
    nx: i64,
    ny: i64,
}

impl GridSpec {
    fn center(&self, ix: i64, iy: i64) -> C64 {
        self.origin + C64::new((ix as f64 + 0.5) * self.cell, (iy as f64 + 0.5) * self.cell)
    }

    fn locate(&self, w: C64) -> (i64, i64) {
        (
            (((w.re - self.origin.re) / self.cell).floor() as i64).clamp(0, self.nx - 1),
            (((w.im - self.origin.im) / self.cell).floor() as i64).clamp(0, self.ny - 1),
        )
    }

    fn idx(&self, ix: i64, iy: i64) -> usize {
        (iy * self.nx + ix) as usize
    }
}

/// A* over a uniform grid. `targets` marks goal cells; returns the cell
/// path from start to the first goal reached.
fn grid_astar(
    grid: &GridSpec,
    free: &dyn Fn(C64) -> bool,
    start: (i64, i64),
    heuristic_to: Option<C64>,
    target: &dyn Fn(C64) -> bool,
    node_cap: usize,
) -> Option<Vec<C64>> {
    let nn = (grid.nx * grid.ny) as usize;
    if nn == 0 || nn > 16_000_000 {
        return None;
    }
    let mut came: Vec<i32> = vec![-2; nn]; // -2 unseen, -1 start
    let mut cost: Vec<f64> = vec![f64::INFINITY; nn];
    let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
    let h = |w: C64| heuristic_to.map_or(0.0, |t| (w - t).norm());
    let key = |c: f64| (c * 1e12) as u64;
    let s_idx = grid.idx(start.0, start.1);
    if !free(grid.center(start.0, start.1)) {
        return None;
    }
    cost[s_idx] = 0.0;
    came[s_idx] = -1;
    heap.push(Reverse((key(h(grid.center(start.0, start.1))), s_idx as u32)));
    let mut expanded = 0usize;
    while let Some(Reverse((_, cur))) = heap.pop() {
        let cur = cur as usize;
        let (ix, iy) = (cur as i64 % grid.nx, cur as i64 / grid.nx);
        let w = grid.center(ix, iy);
        if target(w) {
            // walk back
            let mut path = vec![w];
            let mut at = cur;
            while came[at] >= 0 {
                at = came[at] as usize;
                path.push(grid.center(at as i64 % grid.nx, at as i64 / grid.nx));
            }
            path.reverse();
            return Some(path);
        }
        expanded += 1;
        if expanded > node_cap {
            return None;
        }
        for dx in -1i64..=1 {
            for dy in -1i64..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let (jx, jy) = (ix + dx, iy + dy);
                if jx < 0 || jy < 0 || jx >= grid.nx || jy >= grid.ny {
                    continue;
                }
                let j = grid.idx(jx, jy);
                let wj = grid.center(jx, jy);
                if !free(wj) {
                    continue;
                }
                let step = grid.cell * ((dx * dx + dy * dy) as f64).sqrt();
                let c2 = cost[cur] + step;
                if c2 < cost[j] - 1e-15 {
                    cost[j] = c2;
                    came[j] = cur as i32;
                    heap.push(Reverse((key(c2 + h(wj)), j as u32)));
                }
            }
        }
    }
    None
}

/// One escape candidate: a transit path ending at a macro-clear exit.
struct EscapeExit {
    path: Vec<C64>,
    exit: C64,
}

/// Escape from `start` to macro-clear space through a ladder of local
/// grids with doubling cell size. Keeps up to `beam` alternatives at each
/// level, binned by exit direction, so that topologically different
/// escape routes (e.g. into a lobe vs. out of it) all survive.
fn escape_ladder(
    field: &ObstacleField,
    start: C64,
    clearance: f64,
    macro_cell: f64,
    beam: usize,
) -> Vec<EscapeExit> {
    // Exits safe to hand to the macro grid: the exit's cell center stays
    // clear after the center-offset, and the joint segment cannot dip
    // into an obstacle.
    let macro_exit_clear = 3.0 * macro_cell;
    let mut frontier = vec![EscapeExit { path: vec![start], exit: start }];
    let mut cell = clearance / 4.0;
    let mut level = 0;
    while cell < macro_cell && level < 48 {
        // Transit margin keeps adjacent free cell centers crossing-free:
        // the segment between them dips at most 0.71·cell below either.
        let margin = (clearance / 2.0).max(1.5 * cell);
        let next_cell = (2.0 * cell).min(macro_cell);
        // Clearance needed before climbing a level (or exiting to the
        // macro grid on the last one).
        let advance_clear = (3.0 * next_cell).min(macro_exit_clear).max(margin + 1.5 * cell);
        let mut next: Vec<EscapeExit> = Vec::new();
        for cand in &frontier {
            if field.clearance_within(cand.exit, macro_exit_clear * 1.5) >= macro_exit_clear {
                next.push(EscapeExit { path: cand.path.clone(), exit: cand.exit });
                continue;
            }
            for half_cells in [40i64, 96] {
                let half = half_cells as f64 * cell;
                let grid = GridSpec {
                    origin: cand.exit - C64::new(half, half),
                    cell,
                    nx: 2 * half_cells,
                    ny: 2 * half_cells,
                };
                let diag = cell * std::f64::consts::SQRT_2;
                let free = |w: C64| field.point_free(w, margin);
                let target =
                    |w: C64| field.clearance_within(w, advance_clear + diag) >= advance_clear;
                let found = collect_exits(&grid, &free, &target, cand, field, beam);
                if !found.is_empty() {
                    next.extend(found);
                    break;
                }
            }
        }
        if next.is_empty() {
            return Vec::new();
        }
        // Deduplicate by direction from start, keep the shortest per bin.
        next.sort_by(|a, b| path_len(&a.path).total_cmp(&path_len(&b.path)));
        let mut binned: Vec<EscapeExit> = Vec::new();
        for cand in next {
            let dir = (cand.exit - start).arg();
            let far = (cand.exit - start).norm();
            let distinct = binned.iter().all(|kept| {
                let kd = (kept.exit - start).arg();
                let diff = (dir - kd).rem_euclid(crate::TAU);
                let diff = diff.min(crate::TAU - diff);
                diff > 0.6 || ((kept.exit - start).norm() - far).abs() > 8.0 * cell
            });
            if distinct && binned.len() < beam {
                binned.push(cand);
            }
        }
        frontier = binned;
        cell = next_cell;
        level += 1;
    }
    frontier
        .into_iter()
        .filter(|c| {
            field.clearance_within(c.exit, macro_exit_clear * 1.5) >= macro_exit_clear
        })
        .collect()
}

fn collect_exits(
    grid: &GridSpec,
    free: &dyn Fn(C64) -> bool,
    target: &dyn Fn(C64) -> bool,
    cand: &EscapeExit,
    _field: &ObstacleField,
    beam: usize,
) -> Vec<EscapeExit> {
    let start_cell = grid.locate(cand.exit);
    let mut found = Vec::new();
    let mut blocked_dirs: Vec<f64> = Vec::new();
    for _ in 0..beam {
        let avoid = blocked_dirs.clone();
        let target_masked = |w: C64| {
            if !target(w) {
                return false;
            }
            let dir = (w - cand.exit).arg();
            avoid.iter().all(|&d| {
                let diff = (dir - d).rem_euclid(crate::TAU);
                diff.min(crate::TAU - diff) > 0.7
            })
        };
        match grid_astar(grid, free, start_cell, None, &target_masked, 80_000) {
            Some(mut path) => {
                path[0] = cand.exit; // exact attachment
                let exit = *path.last().unwrap();
                blocked_dirs.push((exit - cand.exit).arg());
                let mut full = cand.path.clone();
                full.extend(path.into_iter().skip(1));
                found.push(EscapeExit { exit, path: full });
            }
            None => break,
        }
    }
    found
}

fn path_len(path: &[C64]) -> f64 {
    path.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}

/// Greedy shortcut: replace runs of vertices by straight segments that
/// keep the clearance contract.
fn shortcut(field: &ObstacleField, path: &[C64], margin: f64) -> Vec<C64> {
    if path.len() <= 2 {
        return path.to_vec();
    }
    let mut out = vec![path[0]];
    let mut i = 0usize;
    while i + 1 < path.len() {
        let mut j = path.len() - 1;
        let mut advanced = false;
        while j > i + 1 {
            if field.segment_free(path[i], path[j], margin) {
                advanced = true;
                break;
            }
            j = i + (j - i) / 2 + ((j - i) % 2).min(1); // shrink toward i
            if j <= i + 1 {
                break;
            }
        }
        if !advanced {
            j = i + 1;
        }
        out.push(path[j]);
        i = j;
    }
    out
}

/// Plan a connector from `start` to `end`. `hard` segments are obstacles
/// everywhere; `soft` segments (the attached arc stubs) are exempt inside
/// the attachment bubbles. `extra_block` adds temporary hard obstacles
/// (used to force the opposite winding of the final closure).
pub(crate) fn plan_connector(
    hard: &[(C64, C64)],
    soft: &[(C64, C64)],
    extra_block: &[(C64, C64)],
    start: C64,
    end: C64,
    clearance: f64,
    radius: f64,
) -> Result<Vec<C64>> {
    let macro_cell = radius / 256.0;
    let mut attempt_clearance = clearance;
    for _attempt in 0..5 {
        if let Some(path) =
            plan_once(hard, soft, extra_block, start, end, attempt_clearance, radius, macro_cell)
        {
            return Ok(path);
        }
        attempt_clearance /= 2.0;
    }
    Err(Error::NoPathFound(format!(
        "no connector from {start} to {end} at clearance {clearance} after 4 halvings"
    )))
}

#[allow(clippy::too_many_arguments)]
fn plan_once(
    hard: &[(C64, C64)],
    soft: &[(C64, C64)],
    extra_block: &[(C64, C64)],
    start: C64,
    end: C64,
    clearance: f64,
    radius: f64,
    macro_cell: f64,
) -> Option<Vec<C64>> {
    let bubble = 2.0 * clearance;
    let mut all_hard: Vec<(C64, C64)> = Vec::with_capacity(hard.len() + extra_block.len());
    all_hard.extend_from_slice(hard);
    all_hard.extend_from_slice(extra_block);
    let field = ObstacleField::new(
        all_hard,
        soft.to_vec(),
        radius,
        macro_cell,
        vec![(start, bubble), (end, bubble)],
    );
    let margin = clearance / 2.0;
    let fine_cell = clearance / 4.0;

    // Fast path: straight connection.
    if field.segment_free(start, end, margin) {
        let mid = (start + end) / 2.0;
        return finish_path(&field, vec![start, mid, end], margin, fine_cell);
    }
    if fine_cell >= macro_cell {
        // One scale is enough: a single global grid.
        let nx = (2.0 * radius / fine_cell).ceil() as i64 + 1;
        let grid = GridSpec {
            origin: C64::new(-radius, -radius),
            cell: fine_cell,
            nx,
            ny: nx,
        };
        let free = |w: C64| field.point_free(w, margin);
        let end_cell = grid.locate(end);
        let end_center = grid.center(end_cell.0, end_cell.1);
        let target = |w: C64| (w - end_center).norm() < 0.5 * fine_cell;
        let mut path = grid_astar(&grid, &free, grid.locate(start), Some(end), &target, 4_000_000)?;
        path[0] = start;
        path.push(end);
        return finish_path(&field, path, margin, fine_cell);
    }

    // Two scales: escape ladders plus a macro join.
    let exits_s = escape_ladder(&field, start, clearance, macro_cell, 4);
    let exits_e = escape_ladder(&field, end, clearance, macro_cell, 4);
    if exits_s.is_empty() || exits_e.is_empty() {
        return None;
    }
    let macro_margin = 2.0 * macro_cell;
    let nx = (2.0 * radius / macro_cell).ceil() as i64 + 1;
    let grid = GridSpec { origin: C64::new(-radius, -radius), cell: macro_cell, nx, ny: nx };
    // Precompute the free map and its connected components: exits in
    // different components can never be joined, and the map saves the
    // A* from re-querying the distance field per cell.
    let nn = (nx * nx) as usize;
    let mut free_map = vec![false; nn];
    for iy in 0..nx {
        for ix in 0..nx {
            free_map[grid.idx(ix, iy)] = field.point_free(grid.center(ix, iy), macro_margin);
        }
    }
    let comp = label_components(&free_map, nx);
    let comp_of = |w: C64| {
        let (ix, iy) = grid.locate(w);
        comp[grid.idx(ix, iy)]
    };
    let free = |w: C64| {
        let (ix, iy) = grid.locate(w);
        free_map[grid.idx(ix, iy)]
    };
    let mut pairs: Vec<(usize, usize)> = (0..exits_s.len())
        .flat_map(|i| (0..exits_e.len()).map(move |j| (i, j)))
        .collect();
    pairs.sort_by(|&(i1, j1), &(i2, j2)| {
        let d1 = (exits_s[i1].exit - exits_e[j1].exit).norm();
        let d2 = (exits_s[i2].exit - exits_e[j2].exit).norm();
        d1.total_cmp(&d2)
    });
    for (i, j) in pairs {
        let es = &exits_s[i];
        let ee = &exits_e[j];
        if comp_of(es.exit) < 0 || comp_of(es.exit) != comp_of(ee.exit) {
            continue;
        }
        let goal = ee.exit;
        let goal_cell = grid.locate(goal);
        let goal_center = grid.center(goal_cell.0, goal_cell.1);
        let target = |w: C64| (w - goal_center).norm() < 0.5 * macro_cell;
        let macro_path =
            match grid_astar(&grid, &free, grid.locate(es.exit), Some(goal), &target, 2_000_000) {
                Some(p) => p,
                None => continue,
            };
        let mut full = es.path.clone();
        full.extend(macro_path.into_iter().skip(1));
        full.push(ee.exit);
        full.extend(ee.path.iter().rev().skip(1));
        if let Some(done) = finish_path(&field, full, margin, fine_cell) {
            return Some(done);
        }
    }
    None
}

/// 8-connected component labels over a boolean grid; -1 for blocked cells.
fn label_components(free_map: &[bool], nx: i64) -> Vec<i32> {
    let mut comp = vec![-1i32; free_map.len()];
    let mut next = 0;
    let mut stack = Vec::new();
    for s in 0..free_map.len() {
        if !free_map[s] || comp[s] >= 0 {
            continue;
        }
        comp[s] = next;
        stack.push(s);
        while let Some(cur) = stack.pop() {
            let (ix, iy) = (cur as i64 % nx, cur as i64 / nx);
            for dx in -1i64..=1 {
                for dy in -1i64..=1 {
                    let (jx, jy) = (ix + dx, iy + dy);
                    if jx < 0 || jy < 0 || jx >= nx || jy >= nx {
                        continue;
                    }
                    let j = (jy * nx + jx) as usize;
                    if free_map[j] && comp[j] < 0 {
                        comp[j] = next;
                        stack.push(j);
                    }
                }
            }
        }
        next += 1;
    }
    comp
}

fn finish_path(
    field: &ObstacleField,
    path: Vec<C64>,
    margin: f64,
    fine_cell: f64,
) -> Option<Vec<C64>> {
    let mut cleaned: Vec<C64> = Vec::with_capacity(path.len());
    for p in path {
        if cleaned.last().map_or(true, |&q| (q - p).norm() > 1e-15) {
            cleaned.push(p);
        }
    }
    let short = shortcut(field, &cleaned, margin);
    for rounds in [2usize, 0] {
        let smoothed = smooth_path(&short, rounds);
        let diag = fine_cell * std::f64::consts::SQRT_2;
        let check = (margin - diag).max(0.25 * margin);
        if smoothed.windows(2).all(|w| field.segment_free(w[0], w[1], check)) {
            return Some(smoothed);
        }
    }
    None
}

/// Construct an open polyline from `start` to `end` whose interior keeps
/// distance ≥ `clearance/2` from every obstacle arc (attachment
/// neighborhoods exempt) and stays within the disk `|w| < radius`.
///
/// Retries with halved clearance up to 4 times before giving up.
pub fn connect_in_complement(
    obstacles: &[Arc],
    start: C64,
    end: C64,
    clearance: f64,
    radius: f64,
) -> Result<Vec<C64>> {
    let (hard, soft) = split_stub_segments(obstacles, start, end, clearance);
    plan_connector(&hard, &soft, &[], start, end, clearance, radius)
}

/// Partition arc segments into hard obstacles and the soft stub pieces of
/// arcs attached at this connector's endpoints.
pub(crate) fn split_stub_segments(
    obstacles: &[Arc],
    start: C64,
    end: C64,
    clearance: f64,
) -> (Vec<(C64, C64)>, Vec<(C64, C64)>) {
    let bubble = 2.2 * clearance;
    let mut hard = Vec::new();
    let mut soft = Vec::new();
    for arc in obstacles {
        let tips: Vec<C64> = [arc.start(), arc.end()]
            .into_iter()
            .filter(|tip| (tip - start).norm() < 1e-9 || (tip - end).norm() < 1e-9)
            .collect();
        for (a, b) in arc.segments() {
            // The exemption is doubly gated: soft segments only stop
            // counting for queries inside the attachment bubbles.
            let near_own_tip = tips.iter().any(|&t| dist_point_segment(t, a, b) < bubble);
            if near_own_tip {
                soft.push((a, b));
            } else {
                hard.push((a, b));
            }
        }
    }
    (hard, soft)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{unit, LaurentPolynomial};
    use crate::TAU;

    fn c(x: f64, y: f64) -> C64 {
        C64::new(x, y)
    }

    fn circle_curve(n: usize, r: f64, ccw: bool) -> PlanarCurve {
        let pts: Vec<C64> = (0..n)
            .map(|i| {
                let th = TAU * i as f64 / n as f64;
                let th = if ccw { th } else { -th };
                C64::from_polar(r, th)
            })
            .collect();
        let params: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        PlanarCurve::new(pts, params).unwrap()
    }

    #[test]
    fn area_of_circle() {
        let cw = circle_curve(256, 1.0, true);
        assert!((signed_area(&cw) - std::f64::consts::PI).abs() < 1e-3);
        let ccw = circle_curve(256, 1.0, false);
        assert!((signed_area(&ccw) + std::f64::consts::PI).abs() < 1e-3);
    }

    #[test]
    fn area_identity_for_laurent_curve() {
        // area = π Σ k |a_k|^2: for z + 0.5 z^{-1}, π(1 - 0.25)
        let p = LaurentPolynomial::from_terms(&[(1, c(1.0, 0.0)), (-1, c(0.5, 0.0))]).unwrap();
        let n = 4096;
        let pts: Vec<C64> =
            (0..n).map(|i| p.evaluate(unit(TAU * i as f64 / n as f64)).unwrap()).collect();
        let params: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        let curve = PlanarCurve::new(pts, params).unwrap();
        let expect = std::f64::consts::PI * 0.75;
        assert!((signed_area(&curve) - expect).abs() < 1e-3 * (1.0 + expect));
    }

    #[test]
    fn square_is_simple_bowtie_is_not() {
        let square = PlanarCurve::new(
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)],
            vec![0.0, 1.0, 2.0, 3.0],
        )
        .unwrap();
        assert!(polyline_is_simple(&square).0);
        let bowtie = PlanarCurve::new(
            vec![c(0.0, 0.0), c(1.0, 1.0), c(1.0, 0.0), c(0.0, 1.0)],
            vec![0.0, 1.0, 2.0, 3.0],
        )
        .unwrap();
        let (ok, witnesses) = polyline_is_simple(&bowtie);
        assert!(!ok);
        assert_eq!(witnesses.len(), 1);
    }

    #[test]
    fn dense_triple_point_curve_is_not_simple() {
        let p = LaurentPolynomial::from_terms(&[(2, c(1.0, 0.0)), (-1, c(1.0, 0.0))]).unwrap();
        let n = 2048;
        let pts: Vec<C64> =
            (0..n).map(|i| p.evaluate(unit(TAU * i as f64 / n as f64)).unwrap()).collect();
        let params: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        let curve = PlanarCurve::new(pts, params).unwrap();
        let (ok, witnesses) = polyline_is_simple(&curve);
        assert!(!ok);
        assert!(!witnesses.is_empty());
        // witnesses sit near the crossings, whose common image is 0
        for &(i, j) in &witnesses {
            for k in [i, j] {
                assert!(curve.point(k).norm() < 0.2, "witness segment far from origin");
            }
        }
    }

    #[test]
    fn smoothing_contracts_corners() {
        let elbow = vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0)];
        let before = max_turning_angle(&elbow);
        let after = max_turning_angle(&smooth_path(&elbow, 3));
        assert!(after < before);
        let straight = vec![c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)];
        assert_eq!(max_turning_angle(&smooth_path(&straight, 2)), 0.0);
        assert_eq!(smooth_path(&straight, 0), straight);
    }

    #[test]
    fn connector_with_no_obstacles_is_near_straight() {
        let path = connect_in_complement(&[], c(0.0, 0.0), c(1.0, 0.0), 0.05, 3.0).unwrap();
        assert!((path[0] - c(0.0, 0.0)).norm() < 1e-12);
        assert!((path.last().unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(path_len(&path) < 1.05);
    }

    #[test]
    fn connector_detours_around_wall() {
        let wall = Arc {
            points: (0..41).map(|i| c(0.5, -1.0 + i as f64 * 0.05)).collect(),
            param_interval: (0.0, 1.0),
            params: (0..41).map(|i| i as f64 * 0.025).collect(),
        };
        let clearance = 0.08;
        let path =
            connect_in_complement(&[wall.clone()], c(0.0, 0.0), c(1.0, 0.0), clearance, 3.0)
                .unwrap();
        // interior keeps clearance from the wall
        for w in &path[1..path.len() - 1] {
            let d = wall
                .segments()
                .map(|(a, b)| dist_point_segment(*w, a, b))
                .fold(f64::INFINITY, f64::min);
            assert!(d >= clearance / 2.0 - clearance / 4.0 * std::f64::consts::SQRT_2 - 1e-9);
        }
        assert!(path_len(&path) > 2.0); // forced around an end of the wall
    }

    #[test]
    fn boxed_in_start_has_no_path() {
        // a closed box of arcs around the start
        let mut pts = Vec::new();
        for i in 0..=400 {
            let th = TAU * i as f64 / 400.0;
            pts.push(C64::from_polar(0.3, th));
        }
        let box_arc = Arc {
            points: pts,
            param_interval: (0.0, 1.0),
            params: (0..=400).map(|i| i as f64 * 0.01).collect(),
        };
        let r = connect_in_complement(&[box_arc], c(0.0, 0.0), c(2.0, 0.0), 0.04, 3.0);
        assert!(matches!(r, Err(Error::NoPathFound(_))));
    }

    #[test]
    fn simplicity_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for trial in 0..50 {
            let n = rng.gen_range(4..60);
            let pts: Vec<C64> =
                (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let params: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
            let curve = PlanarCurve::new(pts.clone(), params).unwrap();
            let (fast, _) = polyline_is_simple(&curve);
            // O(N^2) reference
            let mut brute = true;
            'outer: for i in 0..n {
                for j in i + 1..n {
                    let adjacent = (i + 1) % n == j || (j + 1) % n == i;
                    if adjacent {
                        continue;
                    }
                    let (a, b) = (pts[i], pts[(i + 1) % n]);
                    let (cc, d) = (pts[j], pts[(j + 1) % n]);
                    if segments_intersect(a, b, cc, d) {
                        brute = false;
                        break 'outer;
                    }
                }
            }
            assert_eq!(fast, brute, "trial {trial}");
        }
    }
}

/// Test-only re-export of the stub split.
pub fn split_stub_segments_public(
    obstacles: &[Arc],
    start: C64,
    end: C64,
    clearance: f64,
) -> (Vec<(C64, C64)>, Vec<(C64, C64)>) {
    split_stub_segments(obstacles, start, end, clearance)
}
