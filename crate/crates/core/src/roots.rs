//! Aberth–Ehrlich simultaneous root iteration.
//!
//! Two entry points: one for short polynomials in the monomial basis
//! (Horner evaluation), one for interpolated polynomials held in the
//! Chebyshev basis (Clenshaw evaluation), which stays accurate at the
//! degrees the resultant pipeline produces. Initial guesses sit on a
//! slightly eccentric circle with seeded random jitter; every root gets a
//! final Newton polish.

use crate::pairing::{cheb_derivative, clenshaw};
use crate::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) struct RootSet {
    pub roots: Vec<C64>,
    pub unconverged: usize,
}

const CONV_TOL: f64 = 1e-13;

/// All roots of `Σ coeffs[k] x^k`. Roots at the origin (trailing zero
/// coefficients) are returned explicitly.
pub(crate) fn aberth_monomial(coeffs: &[C64], seed: u64, max_sweeps: usize) -> RootSet {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return RootSet { roots: Vec::new(), unconverged: 0 };
    }
    let thr = 1e-14 * max;
    let hi = coeffs.iter().rposition(|c| c.norm() > thr).unwrap();
    let lo = coeffs.iter().position(|c| c.norm() > thr).unwrap();
    let mut roots = vec![C64::new(0.0, 0.0); lo];
    if hi == lo {
        return RootSet { roots, unconverged: 0 };
    }
    let c = &coeffs[lo..=hi];
    let d = c.len() - 1;
    let dc: Vec<C64> = (1..=d).map(|k| c[k] * k as f64).collect();
    // Fujiwara-style radius bound from the coefficient moduli.
    let lead = c[d].norm();
    let mut radius: f64 = 0.0;
    for k in 1..=d {
        let r = (c[d - k].norm() / lead).powf(1.0 / k as f64);
        radius = radius.max(r);
    }
    let radius = (2.0 * radius).clamp(0.5, 8.0);
    let eval = |x: C64| horner(c, x);
    let eval_d = |x: C64| horner(&dc, x);
    let inner = aberth_iterate(d, radius, seed, max_sweeps, &eval, &eval_d);
    roots.extend(inner.roots);
    RootSet { roots, unconverged: inner.unconverged }
}

/// All roots of a polynomial given by Chebyshev coefficients on `[-1, 1]`.
pub(crate) fn aberth_chebyshev(cheb: &[C64], seed: u64, max_sweeps: usize) -> RootSet {
    let max = cheb.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return RootSet { roots: Vec::new(), unconverged: 0 };
    }
    let hi = cheb.iter().rposition(|c| c.norm() > 1e-13 * max).unwrap();
    if hi == 0 {
        return RootSet { roots: Vec::new(), unconverged: 0 };
    }
    let a = cheb[..=hi].to_vec();
    let da = cheb_derivative(&a);
    let d = hi;
    let eval = move |x: C64| clenshaw(&a, x);
    let eval_d = move |x: C64| clenshaw(&da, x);
    aberth_iterate(d, 1.3, seed, max_sweeps, &eval, &eval_d)
}

fn horner(c: &[C64], x: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for ck in c.iter().rev() {
        acc = acc * x + ck;
    }
    acc
}

fn aberth_iterate(
    degree: usize,
    radius: f64,
    seed: u64,
    max_sweeps: usize,
    eval: &dyn Fn(C64) -> C64,
    eval_d: &dyn Fn(C64) -> C64,
) -> RootSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e1f_c0de);
    let mut x: Vec<C64> = (0..degree)
        .map(|i| {
            let ang = crate::TAU * (i as f64 + 0.29) / degree as f64;
            let r = radius * (1.0 + 0.08 * rng.gen_range(-1.0..1.0));
            C64::from_polar(r, ang + 0.01 * rng.gen_range(-1.0..1.0))
        })
        .collect();
    let mut converged = vec![false; degree];
    // Iterates are kept inside a safety disk so Clenshaw growth cannot
    // overflow at high degree.
    let safe_radius = 1e3;
    for _ in 0..max_sweeps {
        let mut all_done = true;
        for i in 0..degree {
            if converged[i] {
                continue;
            }
            let p = eval(x[i]);
            let mut dp = eval_d(x[i]);
            if !p.is_finite() || !dp.is_finite() {
                x[i] = C64::from_polar(
                    radius * rng.gen_range(0.8..1.4),
                    rng.gen_range(0.0..crate::TAU),
                );
                all_done = false;
                continue;
            }
            if dp.norm() == 0.0 {
                dp = C64::new(1e-290, 0.0);
            }
            let newton = p / dp;
            let mut sum = C64::new(0.0, 0.0);
            for (j, xj) in x.iter().enumerate() {
                if j != i {
                    let diff = x[i] - xj;
                    if diff.norm() > 0.0 {
                        sum += C64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - newton * sum;
            let w = if denom.norm() == 0.0 { newton } else { newton / denom };
            let mut next = x[i] - w;
            if !next.is_finite() || next.norm() > safe_radius {
                next = C64::from_polar(
                    radius * rng.gen_range(0.8..1.4),
                    rng.gen_range(0.0..crate::TAU),
                );
            }
            x[i] = next;
            if w.norm() < CONV_TOL * (1.0 + next.norm()) {
                converged[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    // One Newton polish per root.
    for xi in x.iter_mut() {
        let p = eval(*xi);
        let dp = eval_d(*xi);
        if p.is_finite() && dp.is_finite() && dp.norm() > 0.0 {
            let step = p / dp;
            if step.is_finite() && step.norm() < 1.0 {
                *xi -= step;
            }
        }
    }
    let unconverged = converged.iter().filter(|&&c| !c).count();
    RootSet { roots: x, unconverged }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted_re(mut roots: Vec<C64>) -> Vec<C64> {
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        roots
    }

    #[test]
    fn monomial_quadratic() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let r = aberth_monomial(&[c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], 1, 100);
        let r = sorted_re(r.roots);
        assert!((r[0] - c(-2.0, 0.0)).norm() < 1e-10);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn monomial_with_origin_roots() {
        // x^2 (x - 3)
        let r = aberth_monomial(&[c(0.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)], 1, 100);
        assert_eq!(r.roots.len(), 3);
        assert_eq!(r.roots[0], c(0.0, 0.0));
        assert_eq!(r.roots[1], c(0.0, 0.0));
        assert!((r.roots[2] - c(3.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn roots_of_unity() {
        // x^8 - 1
        let mut coeffs = vec![c(0.0, 0.0); 9];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[8] = c(1.0, 0.0);
        let r = aberth_monomial(&coeffs, 7, 200);
        assert_eq!(r.unconverged, 0);
        for root in &r.roots {
            assert!((root.norm() - 1.0).abs() < 1e-10);
            assert!((root.powi(8) - c(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn chebyshev_basis_roots() {
        // T_12 itself: roots cos(π(2i+1)/24), all in (-1, 1)
        let mut cheb = vec![C64::new(0.0, 0.0); 13];
        cheb[12] = C64::new(1.0, 0.0);
        let r = aberth_chebyshev(&cheb, 3, 300);
        assert_eq!(r.roots.len(), 12);
        let mut expected: Vec<f64> =
            (0..12).map(|i| (std::f64::consts::PI * (2 * i + 1) as f64 / 24.0).cos()).collect();
        expected.sort_by(f64::total_cmp);
        let got = sorted_re(r.roots);
        for (g, e) in got.iter().zip(expected.iter()) {
            assert!(g.im.abs() < 1e-9);
            assert!((g.re - e).abs() < 1e-9, "{} vs {}", g.re, e);
        }
    }

    #[test]
    fn same_seed_same_roots() {
        let coeffs = vec![c(-1.0, 0.3), c(0.4, 0.0), c(0.0, -1.2), c(1.0, 0.0)];
        let a = aberth_monomial(&coeffs, 42, 200).roots;
        let b = aberth_monomial(&coeffs, 42, 200).roots;
        assert_eq!(a, b);
    }
}
