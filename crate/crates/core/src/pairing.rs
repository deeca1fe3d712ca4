//! The bivariate pairing polynomials
//! `g(t, z) = Σ a_k U_{k-1}(t) z^{k-m}` and
//! `g*(t, z) = z^{n-m} conj(g(conj t, 1/conj z))`, the structural identity
//! linking them to `p(e^{iθ}z) - p(e^{-iθ}z)`, and their resultant in `z`.
//!
//! The resultant is computed by evaluation–interpolation: the Sylvester
//! determinant (LU with partial pivoting, row-scaled) is sampled at
//! Chebyshev nodes and interpolated in the Chebyshev basis, which stays
//! well conditioned at the degrees that arise here (up to a few hundred).
//! The monomial form is recovered from the Chebyshev coefficients; root
//! finding evaluates the Chebyshev form directly.

use crate::chebyshev::u_coeffs;
use crate::error::{Error, Result};
use crate::laurent::{unit, LaurentPolynomial};
use crate::C64;

/// Relative threshold for trimming stored degrees.
const GRID_TRIM_REL: f64 = 1e-14;

/// Relative threshold used to detect the degree of an interpolated
/// polynomial.
pub const DEGREE_TRIM_REL: f64 = 1e-10;

/// Per-sample singular-system threshold: |det| below this multiple of the
/// product of row norms counts as a structural zero.
const SINGULAR_REL: f64 = 1e-10;

/// Dense bivariate polynomial `Σ c[i][j] t^i z^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePolynomial {
    /// `coeffs[i][j]` multiplies `t^i z^j`; rows `0..=deg_t`, cols `0..=deg_z`.
    coeffs: Vec<Vec<C64>>,
    deg_t: usize,
    deg_z: usize,
}

impl BivariatePolynomial {
    /// Build from a dense grid, trimming all-zero boundary rows/columns.
    pub fn from_grid(grid: Vec<Vec<C64>>) -> Result<Self> {
        let max = grid
            .iter()
            .flat_map(|r| r.iter().map(|c| c.norm()))
            .fold(0.0, f64::max);
        if max == 0.0 {
            return Err(Error::DegenerateInput("zero bivariate polynomial".into()));
        }
        let thr = GRID_TRIM_REL * max;
        let deg_t = grid
            .iter()
            .rposition(|row| row.iter().any(|c| c.norm() > thr))
            .unwrap();
        let deg_z = grid
            .iter()
            .map(|row| row.iter().rposition(|c| c.norm() > thr).map_or(0, |j| j))
            .max()
            .unwrap();
        let coeffs = grid[..=deg_t]
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.resize(deg_z + 1, C64::new(0.0, 0.0));
                r.truncate(deg_z + 1);
                r
            })
            .collect();
        Ok(Self { coeffs, deg_t, deg_z })
    }

    pub fn deg_t(&self) -> usize {
        self.deg_t
    }

    pub fn deg_z(&self) -> usize {
        self.deg_z
    }

    /// Total degree `max{i + j : c[i][j] ≠ 0}`.
    pub fn total_degree(&self) -> usize {
        let max = self
            .coeffs
            .iter()
            .flat_map(|r| r.iter().map(|c| c.norm()))
            .fold(0.0, f64::max);
        let thr = GRID_TRIM_REL * max;
        let mut deg = 0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.norm() > thr {
                    deg = deg.max(i + j);
                }
            }
        }
        deg
    }

    pub fn coeff(&self, i: usize, j: usize) -> C64 {
        if i <= self.deg_t && j <= self.deg_z {
            self.coeffs[i][j]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    /// Coefficients in `z` after substituting a numeric `t` (Horner down
    /// each column).
    pub fn z_coeffs_at(&self, t: C64) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.deg_z + 1];
        for j in 0..=self.deg_z {
            let mut acc = C64::new(0.0, 0.0);
            for i in (0..=self.deg_t).rev() {
                acc = acc * t + self.coeffs[i][j];
            }
            out[j] = acc;
        }
        out
    }

    /// `∂/∂t` of each `z`-coefficient at a numeric `t`.
    pub fn z_coeffs_dt_at(&self, t: C64) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.deg_z + 1];
        for j in 0..=self.deg_z {
            let mut acc = C64::new(0.0, 0.0);
            for i in (1..=self.deg_t).rev() {
                acc = acc * t + self.coeffs[i][j] * i as f64;
            }
            out[j] = acc;
        }
        out
    }

    pub fn eval(&self, t: C64, z: C64) -> C64 {
        let zc = self.z_coeffs_at(t);
        let mut acc = C64::new(0.0, 0.0);
        for c in zc.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|r| r.iter().map(|c| c.norm()))
            .fold(0.0, f64::max)
    }
}

/// Univariate polynomial with complex coefficients, stored both in the
/// monomial basis (ascending degree) and in the Chebyshev basis on
/// `[-1, 1]`; the latter is what evaluation and root finding use, since
/// the monomial form of a high-degree interpolant is ill conditioned.
#[derive(Debug, Clone)]
pub struct UnivariatePolynomial {
    /// Monomial coefficients, ascending degree.
    pub coeffs: Vec<C64>,
    cheb: Vec<C64>,
}

impl UnivariatePolynomial {
    pub fn from_monomial(coeffs: Vec<C64>) -> Self {
        let cheb = monomial_to_chebyshev(&coeffs);
        Self { coeffs, cheb }
    }

    pub(crate) fn from_chebyshev(cheb: Vec<C64>) -> Self {
        let coeffs = chebyshev_to_monomial(&cheb);
        Self { coeffs, cheb }
    }

    /// Degree after trimming at [`DEGREE_TRIM_REL`] relative to the
    /// largest coefficient.
    pub fn degree(&self) -> usize {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return 0;
        }
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > DEGREE_TRIM_REL * max)
            .unwrap_or(0)
    }

    /// Monomial coefficient at the trimmed degree.
    pub fn leading(&self) -> C64 {
        self.coeffs[self.degree()]
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Evaluate by Clenshaw recurrence on the Chebyshev form.
    pub fn eval(&self, x: C64) -> C64 {
        clenshaw(&self.cheb, x)
    }

    pub(crate) fn cheb_coeffs(&self) -> &[C64] {
        &self.cheb
    }
}

pub(crate) fn clenshaw(cheb: &[C64], x: C64) -> C64 {
    if cheb.is_empty() {
        return C64::new(0.0, 0.0);
    }
    let mut b1 = C64::new(0.0, 0.0);
    let mut b2 = C64::new(0.0, 0.0);
    for j in (1..cheb.len()).rev() {
        let b0 = cheb[j] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    cheb[0] + x * b1 - b2
}

pub(crate) fn cheb_derivative(a: &[C64]) -> Vec<C64> {
    let n = a.len().saturating_sub(1);
    if n == 0 {
        return vec![C64::new(0.0, 0.0)];
    }
    let mut b = vec![C64::new(0.0, 0.0); n];
    // b_{k-1} = b_{k+1} + 2k a_k, descending k
    for k in (1..=n).rev() {
        let high = if k + 1 < n { b[k + 1] } else { C64::new(0.0, 0.0) };
        b[k - 1] = high + 2.0 * k as f64 * a[k];
    }
    b[0] *= 0.5;
    b
}

fn monomial_to_chebyshev(mono: &[C64]) -> Vec<C64> {
    // Build Chebyshev coefficients of t^k by repeated multiplication by t:
    // t·T_0 = T_1, t·T_j = (T_{j+1} + T_{j-1})/2.
    let n = mono.len();
    let mut out = vec![C64::new(0.0, 0.0); n.max(1)];
    let mut power = vec![0.0f64; n.max(1)];
    power[0] = 1.0;
    for (k, &c) in mono.iter().enumerate() {
        if k > 0 {
            let mut next = vec![0.0f64; n];
            for (j, &pj) in power.iter().enumerate().take(k) {
                if pj == 0.0 {
                    continue;
                }
                if j == 0 {
                    next[1] += pj;
                } else {
                    next[j + 1] += 0.5 * pj;
                    next[j - 1] += 0.5 * pj;
                }
            }
            power = next;
        }
        for (o, &pj) in out.iter_mut().zip(power.iter()) {
            *o += c * pj;
        }
    }
    out
}

fn chebyshev_to_monomial(cheb: &[C64]) -> Vec<C64> {
    let n = cheb.len();
    let mut out = vec![C64::new(0.0, 0.0); n.max(1)];
    let mut t_prev = vec![1.0f64]; // T_0
    let mut t_cur = vec![0.0f64, 1.0]; // T_1
    if n >= 1 {
        out[0] += cheb[0];
    }
    if n >= 2 {
        for (o, &c) in out.iter_mut().zip(t_cur.iter()) {
            *o += cheb[1] * c;
        }
    }
    for j in 2..n {
        let mut t_next = vec![0.0f64; j + 1];
        for (i, &c) in t_cur.iter().enumerate() {
            t_next[i + 1] += 2.0 * c;
        }
        for (i, &c) in t_prev.iter().enumerate() {
            t_next[i] -= c;
        }
        t_prev = std::mem::replace(&mut t_cur, t_next);
        for (o, &c) in out.iter_mut().zip(t_cur.iter()) {
            *o += cheb[j] * c;
        }
    }
    out
}

fn check_build_range(p: &LaurentPolynomial) -> Result<(i32, i32)> {
    let (m, n) = (p.m(), p.n());
    if m == 0 || m <= -n || m > n {
        return Err(Error::Range(format!(
            "pairing polynomials need -n < m ≤ n and m ≠ 0, got m={m}, n={n}"
        )));
    }
    Ok((m, n))
}

/// Assemble `g(t, z) = Σ_{k=m}^{n} a_k U_{k-1}(t) z^{k-m}`.
pub fn build_g(p: &LaurentPolynomial) -> Result<BivariatePolynomial> {
    let (m, n) = check_build_range(p)?;
    let rows = n.max(1) as usize;
    let cols = (n - m) as usize + 1;
    let mut grid = vec![vec![C64::new(0.0, 0.0); cols]; rows];
    for (k, a) in p.terms() {
        let u = u_coeffs(k - 1);
        for (i, &uc) in u.coeffs.iter().enumerate() {
            grid[i][(k - m) as usize] += a * uc;
        }
    }
    BivariatePolynomial::from_grid(grid)
}

/// Assemble `g*(t, z) = Σ_{k=m}^{n} conj(a_k) U_{k-1}(t) z^{n-k}`.
pub fn build_g_star(p: &LaurentPolynomial) -> Result<BivariatePolynomial> {
    let (m, n) = check_build_range(p)?;
    let rows = n.max(-m).max(1) as usize;
    let cols = (n - m) as usize + 1;
    let mut grid = vec![vec![C64::new(0.0, 0.0); cols]; rows];
    for (k, a) in p.terms() {
        let u = u_coeffs(k - 1);
        for (i, &uc) in u.coeffs.iter().enumerate() {
            grid[i][(n - k) as usize] += a.conj() * uc;
        }
    }
    BivariatePolynomial::from_grid(grid)
}

/// Residual of the defining identity
/// `g(cos θ, z) = z^{-m} (p(e^{iθ}z) - p(e^{-iθ}z)) / (e^{iθ} - e^{-iθ})`.
pub fn verify_identity(p: &LaurentPolynomial, theta: f64, z: C64) -> Result<f64> {
    if theta.sin().abs() < 1e-12 {
        return Err(Error::Domain(format!("identity denominator vanishes at θ = {theta}")));
    }
    let g = build_g(p)?;
    let lhs = g.eval(C64::new(theta.cos(), 0.0), z);
    let e_plus = unit(theta);
    let e_minus = unit(-theta);
    let num = p.evaluate(e_plus * z)? - p.evaluate(e_minus * z)?;
    let rhs = z.powi(-p.m()) * num / (e_plus - e_minus);
    Ok((lhs - rhs).norm())
}

/// One Sylvester determinant sample: `Res_z(g, g*)` at a numeric `t`,
/// together with the product of row norms used by the singular test.
pub fn sylvester_det_at(g: &BivariatePolynomial, gs: &BivariatePolynomial, t: f64) -> (C64, f64) {
    let tc = C64::new(t, 0.0);
    let a = g.z_coeffs_at(tc);
    let b = gs.z_coeffs_at(tc);
    sylvester_det(&a, &b)
}

fn sylvester_det(a: &[C64], b: &[C64]) -> (C64, f64) {
    let d = a.len() - 1;
    debug_assert_eq!(b.len(), a.len());
    if d == 0 {
        return (C64::new(1.0, 0.0), 1.0);
    }
    let n = 2 * d;
    let mut mat = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..d {
        for j in 0..=d {
            mat[i][i + j] = a[d - j];
            mat[d + i][i + j] = b[d - j];
        }
    }
    // Row scaling keeps the pivots comparable; the coefficient spread grows
    // like 2^{n-1} through the Chebyshev leading terms.
    let mut scale_prod = 1.0f64;
    for row in mat.iter_mut() {
        let s = row.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if s > 0.0 {
            for c in row.iter_mut() {
                *c /= s;
            }
            scale_prod *= s;
        }
    }
    // LU with partial pivoting.
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let (piv, piv_norm) = (k..n)
            .map(|r| (r, mat[r][k].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if piv_norm == 0.0 {
            return (C64::new(0.0, 0.0), scale_prod);
        }
        if piv != k {
            mat.swap(piv, k);
            det = -det;
        }
        det *= mat[k][k];
        for r in k + 1..n {
            let f = mat[r][k] / mat[k][k];
            if f.norm() == 0.0 {
                continue;
            }
            for c in k..n {
                let sub = f * mat[k][c];
                mat[r][c] -= sub;
            }
        }
    }
    (det * scale_prod, scale_prod)
}

/// `Res_z(g, g*)` as a polynomial in `t`, via Sylvester determinants at
/// Chebyshev nodes followed by Chebyshev interpolation.
///
/// For a non-exceptional normalized input the result has degree exactly
/// `2(n-1)(n-m)` with nonzero leading coefficient. Errors with
/// [`Error::SingularSystem`] when every sampled determinant vanishes
/// relative to its row norms.
pub fn resultant_in_z(
    g: &BivariatePolynomial,
    gs: &BivariatePolynomial,
) -> Result<UnivariatePolynomial> {
    if g.deg_z() != gs.deg_z() {
        return Err(Error::Range(format!(
            "resultant needs equal z-degrees, got {} and {}",
            g.deg_z(),
            gs.deg_z()
        )));
    }
    let d = g.deg_z();
    if d == 0 {
        return Ok(UnivariatePolynomial::from_monomial(vec![C64::new(1.0, 0.0)]));
    }
    let degree_bound = d * (g.deg_t() + gs.deg_t());
    let n_nodes = degree_bound + 1;
    let mut vals = Vec::with_capacity(n_nodes);
    let mut angles = Vec::with_capacity(n_nodes);
    let mut any_significant = false;
    for i in 0..n_nodes {
        let theta = std::f64::consts::PI * (2 * i + 1) as f64 / (2 * n_nodes) as f64;
        let (det, row_norms) = sylvester_det_at(g, gs, theta.cos());
        if det.norm() > SINGULAR_REL * row_norms {
            any_significant = true;
        }
        vals.push(det);
        angles.push(theta);
    }
    if !any_significant {
        return Err(Error::SingularSystem(
            "all sampled Sylvester determinants vanish relative to row norms".into(),
        ));
    }
    // Chebyshev coefficients by discrete orthogonality at first-kind nodes.
    let nn = n_nodes as f64;
    let mut cheb = vec![C64::new(0.0, 0.0); n_nodes];
    for (j, cj) in cheb.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (v, th) in vals.iter().zip(angles.iter()) {
            acc += v * (j as f64 * th).cos();
        }
        let w = if j == 0 { 1.0 } else { 2.0 };
        *cj = acc * (w / nn);
    }
    Ok(UnivariatePolynomial::from_chebyshev(cheb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPolynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn p_of(terms: &[(i32, f64)]) -> LaurentPolynomial {
        let t: Vec<(i32, C64)> = terms.iter().map(|&(k, v)| (k, c(v, 0.0))).collect();
        LaurentPolynomial::from_terms(&t).unwrap()
    }

    fn random_p(rng: &mut ChaCha8Rng, n: i32, m: i32) -> LaurentPolynomial {
        let terms: Vec<(i32, C64)> = (m..=n)
            .filter(|&k| k != 0)
            .map(|k| {
                let r = rng.gen_range(0.2..1.0);
                let ph = rng.gen_range(0.0..crate::TAU);
                (k, C64::from_polar(r, ph))
            })
            .collect();
        LaurentPolynomial::from_terms(&terms).unwrap()
    }

    #[test]
    fn g_hand_expansion_triple_point() {
        // p = z^2 + z^{-1}: g = U_1(t) z^3 + U_{-2}(t) = 2t z^3 - 1
        let g = build_g(&p_of(&[(2, 1.0), (-1, 1.0)])).unwrap();
        assert_eq!(g.deg_z(), 3);
        assert_eq!(g.coeff(1, 3), c(2.0, 0.0));
        assert_eq!(g.coeff(0, 0), c(-1.0, 0.0));
        assert_eq!(g.total_degree(), 4); // 2n - m - 1
    }

    #[test]
    fn g_hand_expansion_quine_like() {
        // p = z^3 + εz: g = ε + U_2(t) z^2 = ε + (4t^2 - 1) z^2
        let eps = 1e-3;
        let g = build_g(&p_of(&[(3, 1.0), (1, eps)])).unwrap();
        assert_eq!(g.coeff(0, 0), c(eps, 0.0));
        assert_eq!(g.coeff(0, 2), c(-1.0, 0.0));
        assert_eq!(g.coeff(2, 2), c(4.0, 0.0));
    }

    #[test]
    fn g_star_hand_expansion() {
        // p = z^2 + z^{-1}: g* = 2t - z^3
        let gs = build_g_star(&p_of(&[(2, 1.0), (-1, 1.0)])).unwrap();
        assert_eq!(gs.coeff(1, 0), c(2.0, 0.0));
        assert_eq!(gs.coeff(0, 3), c(-1.0, 0.0));
        assert_eq!(gs.total_degree(), 3); // n - m + |m| - 1
    }

    #[test]
    fn g_star_total_degree() {
        // p = z^3 + 0.1 z^{-2}: total degree n - m + |m| - 1 = 6
        let gs = build_g_star(&p_of(&[(3, 1.0), (-2, 0.1)])).unwrap();
        assert_eq!(gs.total_degree(), 6);
    }

    #[test]
    fn g_star_is_z_reversal_of_g_for_real_coeffs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = p_of(&[(3, 0.8), (1, -0.4), (-2, 0.6)]);
        let g = build_g(&p).unwrap();
        let gs = build_g_star(&p).unwrap();
        let d = g.deg_z() as i32;
        for _ in 0..100 {
            let t = c(rng.gen_range(-1.0..1.0), 0.0);
            let z = C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..crate::TAU));
            let lhs = gs.eval(t, z);
            let rhs = z.powi(d) * g.eval(t, 1.0 / z);
            assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn identity_residual_is_tiny() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..20 {
            let n = rng.gen_range(2..=6);
            let m = loop {
                let m = rng.gen_range(-n + 1..n);
                if m != 0 {
                    break m;
                }
            };
            let p = random_p(&mut rng, n, m);
            for _ in 0..50 {
                let theta = rng.gen_range(0.05..std::f64::consts::PI - 0.05);
                let z = C64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..crate::TAU));
                let r = verify_identity(&p, theta, z).unwrap();
                assert!(r < 1e-9 * (1.0 + p.max_on_circle(32)), "trial {trial}: residual {r}");
            }
        }
        // the specific point from the worked example
        let p = p_of(&[(2, 1.0), (-1, 1.0)]);
        let r = verify_identity(&p, std::f64::consts::FRAC_PI_2, c(1.0, 0.0)).unwrap();
        assert!(r < 1e-12);
        assert!(matches!(verify_identity(&p, 0.0, c(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn resultant_degrees_match_lemma() {
        // p = z^2 + z^{-1}: deg R = 2(n-1)(n-m) = 6
        let p = p_of(&[(2, 1.0), (-1, 1.0)]);
        let r = resultant_in_z(&build_g(&p).unwrap(), &build_g_star(&p).unwrap()).unwrap();
        assert_eq!(r.degree(), 6);
        // p = z^3 + 0.05 z: deg R = 2·2·2 = 8
        let p = p_of(&[(3, 1.0), (1, 0.05)]);
        let r = resultant_in_z(&build_g(&p).unwrap(), &build_g_star(&p).unwrap()).unwrap();
        assert_eq!(r.degree(), 8);
        assert!(r.leading().norm() > 1e-8 * r.max_coeff());
    }

    #[test]
    fn resultant_of_power_substituted_input_has_deep_zeros() {
        // p = z^4 + z^{-2} = q(z^2). The resultant is not identically zero
        // (its leading coefficient comes from the Sylvester diagonal), but
        // g and g* share the factor structure of the substitution: R
        // vanishes at the U-zeros t = 0 and t = ±1/2 where g(t, ·) ≡ 0.
        let p = p_of(&[(4, 1.0), (-2, 1.0)]);
        let g = build_g(&p).unwrap();
        let gs = build_g_star(&p).unwrap();
        let r = resultant_in_z(&g, &gs).unwrap();
        assert_eq!(r.degree(), 36);
        let scale = (0..=100)
            .map(|i| r.eval(c(-1.0 + i as f64 / 50.0, 0.0)).norm())
            .fold(0.0, f64::max);
        for t in [0.0, 0.5, -0.5] {
            assert!(r.eval(c(t, 0.0)).norm() < 1e-8 * scale, "t={t}");
        }
        assert!(r.eval(c(0.8, 0.0)).norm() > 1e-8 * scale);
    }

    #[test]
    fn interpolated_resultant_matches_direct_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let p = random_p(&mut rng, 4, -2);
        let g = build_g(&p).unwrap();
        let gs = build_g_star(&p).unwrap();
        let r = resultant_in_z(&g, &gs).unwrap();
        for _ in 0..20 {
            let t = rng.gen_range(-0.999..0.999);
            let (direct, _) = sylvester_det_at(&g, &gs, t);
            let interp = r.eval(c(t, 0.0));
            assert!(
                (direct - interp).norm() <= 1e-7 * (1.0 + direct.norm()),
                "t={t}: {direct} vs {interp}"
            );
        }
    }

    #[test]
    fn degree_law_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..12 {
            let n = rng.gen_range(2..=5);
            let m = loop {
                let m = rng.gen_range(-n + 1..n);
                if m != 0 {
                    break m;
                }
            };
            let p = random_p(&mut rng, n, m);
            let r = resultant_in_z(&build_g(&p).unwrap(), &build_g_star(&p).unwrap()).unwrap();
            let expected = 2 * (n - 1) as usize * (n - m) as usize;
            assert_eq!(r.degree(), expected, "n={n} m={m}");
            assert!(r.leading().norm() > 1e-8 * r.max_coeff());
        }
    }

    #[test]
    fn build_rejects_out_of_range_inputs() {
        let p = p_of(&[(3, 1.0), (-3, 0.5)]); // m = -n
        assert!(matches!(build_g(&p), Err(Error::Range(_))));
    }

    #[test]
    fn univariate_basis_round_trip() {
        let mono = vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 3.0), c(4.0, -1.0)];
        let u = UnivariatePolynomial::from_monomial(mono.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let x = c(rng.gen_range(-1.2..1.2), rng.gen_range(-0.5..0.5));
            let mut horner = C64::new(0.0, 0.0);
            for cc in mono.iter().rev() {
                horner = horner * x + cc;
            }
            assert!((u.eval(x) - horner).norm() < 1e-12 * (1.0 + horner.norm()));
        }
        assert_eq!(u.degree(), 3);
    }
}
