//! Laurent polynomials `p(z) = Σ_{k=m}^{n} a_k z^k` with complex
//! coefficients, their evaluation on and off the unit circle, exponent
//! normalization, detection of the exceptional classes with infinitely
//! many self-intersections, and the ψ-reduction of the balanced case
//! `n = -m`.

use crate::error::{Error, Result};
use crate::{C64, TAU};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Relative threshold below which a coefficient counts as zero when
/// computing the exponent range and the support. Floating-point noise must
/// not change which case of the theorem applies.
pub const TRIM_REL: f64 = 1e-14;

/// Default relative tolerance for the balanced-modulus test `|a_n| = |a_m|`.
pub const TOL_BALANCE: f64 = 1e-9;

/// `e^{iθ}`.
pub fn unit(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

pub(crate) fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A Laurent polynomial with trimmed exponent range `[m, n]`.
///
/// Invariants: `m ≤ n`, and the coefficients at both ends are nonzero
/// (relative to the largest coefficient modulus, threshold [`TRIM_REL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    m: i32,
    /// Coefficient of `z^{m+i}` at position `i`; length `n - m + 1`.
    coeffs: Vec<C64>,
}

/// Which exceptional class of the self-intersection theorem an input
/// falls into, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionalStatus {
    /// Not exceptional: the self-intersection count is finite and bounded.
    None,
    /// `p(z) = q(z^j)` with `j ≥ 2`: the curve is traced multiply and the
    /// self-intersection set is a continuum. Carries `j`, the gcd of the
    /// exponent support.
    PowerSubstitution(u32),
    /// `n = -m` with `|a_n| = |a_m|`: the ψ-reduction degenerates and the
    /// intersection set may be infinite.
    BalancedModulus,
}

impl fmt::Display for ExceptionalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExceptionalStatus::None => write!(f, "None"),
            ExceptionalStatus::PowerSubstitution(j) => write!(f, "PowerSubstitution({j})"),
            ExceptionalStatus::BalancedModulus => write!(f, "BalancedModulus"),
        }
    }
}

impl Serialize for ExceptionalStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Record of the reversible transforms applied by [`LaurentPolynomial::normalize`].
///
/// Applying the inverse transform recovers the original polynomial exactly:
/// a conjugate flip reverses the parameter sign, and the dropped constant
/// is re-added verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationLog {
    /// Whether `z ↦ 1/z` (θ ↦ -θ) was applied to force `n ≥ |m|`.
    pub conjugate_flipped: bool,
    /// The removed constant term `a_0`.
    pub constant_dropped: (f64, f64),
}

impl NormalizationLog {
    /// Map an angle of the normalized polynomial back to the original
    /// parameterization.
    pub fn angle_to_original(&self, theta: f64) -> f64 {
        if self.conjugate_flipped {
            (TAU - theta).rem_euclid(TAU)
        } else {
            theta.rem_euclid(TAU)
        }
    }

    /// Undo the recorded transforms, reconstructing the original polynomial.
    pub fn apply_inverse(&self, p: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        let q = if self.conjugate_flipped { p.conjugate_flip() } else { p.clone() };
        let c = C64::new(self.constant_dropped.0, self.constant_dropped.1);
        if c == C64::new(0.0, 0.0) {
            return Ok(q);
        }
        let mut terms: Vec<(i32, C64)> = q.terms().collect();
        terms.push((0, c));
        LaurentPolynomial::from_terms(&terms)
    }
}

impl LaurentPolynomial {
    /// Build from the coefficient slice of `z^{m}, z^{m+1}, …`.
    ///
    /// Trims leading/trailing coefficients below [`TRIM_REL`] relative to
    /// the largest modulus. Errors on non-finite input and on the zero
    /// polynomial.
    pub fn new(m: i32, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return Err(Error::DegenerateInput("zero polynomial".into()));
        }
        let thr = TRIM_REL * max;
        let lo = coeffs.iter().position(|c| c.norm() > thr).unwrap();
        let hi = coeffs.iter().rposition(|c| c.norm() > thr).unwrap();
        Ok(Self { m: m + lo as i32, coeffs: coeffs[lo..=hi].to_vec() })
    }

    /// Build from sparse `(exponent, coefficient)` terms.
    pub fn from_terms(terms: &[(i32, C64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::DegenerateInput("zero polynomial".into()));
        }
        let m = terms.iter().map(|t| t.0).min().unwrap();
        let n = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C64::new(0.0, 0.0); (n - m) as usize + 1];
        for &(k, c) in terms {
            coeffs[(k - m) as usize] += c;
        }
        Self::new(m, coeffs)
    }

    /// Lowest exponent.
    pub fn m(&self) -> i32 {
        self.m
    }

    /// Highest exponent.
    pub fn n(&self) -> i32 {
        self.m + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `z^k` (zero outside the stored range).
    pub fn coeff(&self, k: i32) -> C64 {
        let i = k - self.m;
        if i >= 0 && (i as usize) < self.coeffs.len() {
            self.coeffs[i as usize]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    /// Stored coefficients, ascending exponent.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, C64)> + '_ {
        let thr = self.trim_threshold();
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.norm() > thr)
            .map(move |(i, &c)| (self.m + i as i32, c))
    }

    fn trim_threshold(&self) -> f64 {
        TRIM_REL * self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True if the polynomial is a single term `a_n z^n`.
    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    /// Evaluate at `z ≠ 0` by two Horner passes: the `k ≥ 0` part in `z`,
    /// the `k < 0` part in `1/z`.
    pub fn evaluate(&self, z: C64) -> Result<C64> {
        if z == C64::new(0.0, 0.0) {
            return Err(Error::Domain("evaluation at z = 0".into()));
        }
        let n = self.n();
        let mut nonneg = C64::new(0.0, 0.0);
        if n >= 0 {
            for k in (0.max(self.m)..=n).rev() {
                nonneg = nonneg * z + self.coeff(k);
            }
            nonneg *= z.powi(0.max(self.m));
        }
        let mut neg = C64::new(0.0, 0.0);
        if self.m < 0 {
            let w = C64::new(1.0, 0.0) / z;
            for k in self.m..=(-1).min(n) {
                neg = neg * w + self.coeff(k);
            }
            neg *= w;
        }
        Ok(nonneg + neg)
    }

    /// Evaluate the derivative `p'(z) = Σ k a_k z^{k-1}` at `z ≠ 0`.
    pub fn eval_derivative(&self, z: C64) -> Result<C64> {
        if z == C64::new(0.0, 0.0) {
            return Err(Error::Domain("evaluation at z = 0".into()));
        }
        let mut acc = C64::new(0.0, 0.0);
        for (k, c) in self.terms() {
            acc += c * (k as f64) * z.powi(k - 1);
        }
        Ok(acc)
    }

    /// Maximum modulus over a uniform sample of the unit circle.
    pub fn max_on_circle(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|j| self.evaluate(unit(TAU * j as f64 / samples as f64)).unwrap().norm())
            .fold(0.0, f64::max)
    }

    /// The substitution `z ↦ 1/z`, i.e. reparameterization by `θ ↦ -θ`.
    pub fn conjugate_flip(&self) -> LaurentPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPolynomial { m: -self.n(), coeffs }
    }

    /// Normalize to the theorem's standing assumptions: `n ≥ |m|`, `m ≠ 0`,
    /// zero constant term. The log records the applied transforms;
    /// self-intersection pairs of the result map to those of the input by
    /// the inverse transform (a flip reverses parameter signs).
    pub fn normalize(&self) -> Result<(LaurentPolynomial, NormalizationLog)> {
        let constant = self.coeff(0);
        let terms: Vec<(i32, C64)> = self.terms().filter(|&(k, _)| k != 0).collect();
        if terms.is_empty() {
            return Err(Error::DegenerateInput(
                "constant polynomial: image is a point, self-intersections are not countable"
                    .into(),
            ));
        }
        let q = LaurentPolynomial::from_terms(&terms)?;
        let flip = q.n() < q.m().abs();
        let q = if flip { q.conjugate_flip() } else { q };
        Ok((q, NormalizationLog {
            conjugate_flipped: flip,
            constant_dropped: (constant.re, constant.im),
        }))
    }

    /// Gcd of `{|k| : a_k ≠ 0}`. The polynomial is a polynomial in `z^j`
    /// exactly when `j` divides this value.
    pub fn support_gcd(&self) -> u32 {
        let mut g = 0u32;
        for (k, _) in self.terms() {
            if k != 0 {
                g = gcd_u32(g, k.unsigned_abs());
            }
        }
        g
    }

    /// Classify against the theorem's exceptional cases. Case (a), the
    /// power substitution, takes precedence.
    pub fn detect_exceptional(&self, tol_balance: f64) -> ExceptionalStatus {
        let g = self.support_gcd();
        if g >= 2 {
            return ExceptionalStatus::PowerSubstitution(g);
        }
        let (m, n) = (self.m(), self.n());
        if m == -n && n > 0 {
            let (am, an) = (self.coeff(m).norm(), self.coeff(n).norm());
            if (an - am).abs() <= tol_balance * an.max(am) {
                return ExceptionalStatus::BalancedModulus;
            }
        }
        ExceptionalStatus::None
    }

    /// The ψ-reduction of the balanced case: with `c = -a_{-n}/conj(a_n)`,
    /// returns the Laurent polynomial equal to `ψ∘p` on the unit circle,
    /// where `ψ(w) = w + c·conj(w)`. The coefficient of `z^{-n}` vanishes by
    /// the choice of `c`, and the self-intersection pairs are unchanged
    /// because ψ is a plane bijection when `|c| ≠ 1`.
    pub fn reduce_balanced(&self) -> Result<LaurentPolynomial> {
        let n = self.n();
        let a_neg = self.coeff(-n);
        if a_neg.norm() == 0.0 {
            return Ok(self.clone());
        }
        if self.m() != -n {
            return Err(Error::Range("reduce_balanced requires n = -m".into()));
        }
        let c = -a_neg / self.coeff(n).conj();
        if (c.norm() - 1.0).abs() <= TOL_BALANCE {
            return Err(Error::ExceptionalInput(ExceptionalStatus::BalancedModulus));
        }
        let mut terms = Vec::new();
        for k in -n..=n {
            if k == -n {
                continue; // vanishes exactly by the choice of c
            }
            let b = self.coeff(k) + c * self.coeff(-k).conj();
            if b.norm() > 0.0 {
                terms.push((k, b));
            }
        }
        LaurentPolynomial::from_terms(&terms)
    }

    /// Discrete-Fourier truncation of circle samples to exponents `[m, n]`.
    ///
    /// Exact (to roundoff) when the sampled function is already a Laurent
    /// polynomial with exponents inside `[m, n]`. Non-uniform sample grids
    /// are resampled by circular linear interpolation first.
    pub fn fit_from_samples(samples: &[(f64, C64)], m: i32, n: i32) -> Result<LaurentPolynomial> {
        if m > n {
            return Err(Error::Range(format!("empty exponent range [{m}, {n}]")));
        }
        let needed = 2 * (n - m + 1) as usize;
        if samples.len() < needed {
            return Err(Error::InsufficientSamples { needed, got: samples.len() });
        }
        let coeffs = fourier_coefficients(samples, m, n)?;
        LaurentPolynomial::new(m, coeffs)
    }
}

/// Quadrature Fourier coefficients `f̂(k) = (1/2π)∫ f(e^{iθ})e^{-ikθ}dθ`
/// for `k = k_min..=k_max`, by the rectangle rule on a uniform periodic
/// grid (equal to the trapezoid rule there). Non-uniform grids are
/// resampled by circular linear interpolation first.
pub fn fourier_coefficients(samples: &[(f64, C64)], k_min: i32, k_max: i32) -> Result<Vec<C64>> {
    if samples.is_empty() || k_min > k_max {
        return Err(Error::Range("empty samples or exponent range".into()));
    }
    for &(a, v) in samples {
        if !a.is_finite() || !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Domain("non-finite sample".into()));
        }
    }
    let uniform = resample_uniform(samples);
    let nn = uniform.len() as f64;
    let mut out = Vec::with_capacity((k_max - k_min + 1) as usize);
    for k in k_min..=k_max {
        let mut acc = C64::new(0.0, 0.0);
        for &(theta, v) in &uniform {
            acc += v * unit(-(k as f64) * theta);
        }
        out.push(acc / nn);
    }
    Ok(out)
}

/// Return samples on a uniform grid, resampling by circular linear
/// interpolation when the input grid is not uniform.
fn resample_uniform(samples: &[(f64, C64)]) -> Vec<(f64, C64)> {
    let n = samples.len();
    let mut sorted: Vec<(f64, C64)> = samples.iter().map(|&(a, v)| (a.rem_euclid(TAU), v)).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let step = TAU / n as f64;
    let uniform = sorted
        .iter()
        .enumerate()
        .all(|(j, &(a, _))| (a - (sorted[0].0 + j as f64 * step)).abs() < 1e-9 * step.max(1.0));
    if uniform {
        return sorted;
    }
    (0..n)
        .map(|j| {
            let theta = j as f64 * step;
            (theta, interp_circular(&sorted, theta))
        })
        .collect()
}

fn interp_circular(sorted: &[(f64, C64)], theta: f64) -> C64 {
    let n = sorted.len();
    // Find the bracketing pair, wrapping around 2π.
    let idx = sorted.partition_point(|&(a, _)| a <= theta);
    let (a0, v0) = sorted[(idx + n - 1) % n];
    let (a1, v1) = sorted[idx % n];
    let span = (a1 - a0).rem_euclid(TAU);
    if span == 0.0 {
        return v0;
    }
    let frac = (theta - a0).rem_euclid(TAU) / span;
    v0 + (v1 - v0) * frac
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    m: i32,
    n: i32,
    coeffs: Vec<(f64, f64)>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            m: self.m(),
            n: self.n(),
            coeffs: self.coeffs.iter().map(|c| (c.re, c.im)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        let len = (raw.n as i64 - raw.m as i64 + 1).max(0) as usize;
        if raw.coeffs.len() != len {
            return Err(D::Error::custom(format!(
                "coeffs length {} does not match range [{}, {}]",
                raw.coeffs.len(),
                raw.m,
                raw.n
            )));
        }
        if raw.coeffs.iter().any(|(re, im)| !re.is_finite() || !im.is_finite()) {
            return Err(D::Error::custom("non-finite coefficient"));
        }
        LaurentPolynomial::new(raw.m, raw.coeffs.iter().map(|&(re, im)| C64::new(re, im)).collect())
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn p_of(terms: &[(i32, C64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms).unwrap()
    }

    #[test]
    fn evaluate_triple_point_example() {
        // p = z^2 + z^{-1} vanishes at -1 and e^{iπ/3}
        let p = p_of(&[(2, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        assert!(p.evaluate(c(-1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(p.evaluate(unit(std::f64::consts::PI / 3.0)).unwrap().norm() < 1e-15);
        let id = p_of(&[(1, c(1.0, 0.0))]);
        assert_eq!(id.evaluate(c(0.0, 1.0)).unwrap(), c(0.0, 1.0));
        assert!(matches!(p.evaluate(c(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn normalize_flips_and_drops_constant() {
        // z^{-3} + z  →  z^3 + z^{-1}, flipped
        let p = p_of(&[(-3, c(1.0, 0.0)), (1, c(1.0, 0.0))]);
        let (q, log) = p.normalize().unwrap();
        assert!(log.conjugate_flipped);
        assert_eq!((q.m(), q.n()), (-1, 3));
        // 5 + z^2 + z^{-1}  →  z^2 + z^{-1}, constant dropped
        let p = p_of(&[(0, c(5.0, 0.0)), (2, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        let (q, log) = p.normalize().unwrap();
        assert!(!log.conjugate_flipped);
        assert_eq!(log.constant_dropped, (5.0, 0.0));
        assert_eq!((q.m(), q.n()), (-1, 2));
        // constants are rejected
        let p = p_of(&[(0, c(7.0, 0.0))]);
        assert!(matches!(p.normalize(), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn normalize_round_trip_is_exact() {
        let p = p_of(&[(-4, c(0.3, -0.7)), (0, c(2.0, 1.0)), (1, c(-0.2, 0.9))]);
        let (q, log) = p.normalize().unwrap();
        let back = log.apply_inverse(&q).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn support_gcd_cases() {
        assert_eq!(p_of(&[(2, c(1.0, 0.0)), (-1, c(1.0, 0.0))]).support_gcd(), 1);
        assert_eq!(p_of(&[(4, c(1.0, 0.0)), (-2, c(1.0, 0.0))]).support_gcd(), 2);
        assert_eq!(p_of(&[(6, c(1.0, 0.0)), (3, c(1.0, 0.0))]).support_gcd(), 3);
    }

    #[test]
    fn exceptional_detection() {
        let p = p_of(&[(4, c(1.0, 0.0)), (-2, c(1.0, 0.0))]);
        assert_eq!(p.detect_exceptional(TOL_BALANCE), ExceptionalStatus::PowerSubstitution(2));
        let w = unit(std::f64::consts::PI / 4.0);
        let p = p_of(&[(1, c(1.0, 0.0)), (-1, w)]);
        assert_eq!(p.detect_exceptional(TOL_BALANCE), ExceptionalStatus::BalancedModulus);
        let p = p_of(&[(3, c(1.0, 0.0)), (1, c(0.1, 0.0))]);
        assert_eq!(p.detect_exceptional(TOL_BALANCE), ExceptionalStatus::None);
    }

    #[test]
    fn reduce_balanced_kills_negative_end() {
        // z + 0.5 z^{-1} → 0.75 z
        let p = p_of(&[(1, c(1.0, 0.0)), (-1, c(0.5, 0.0))]);
        let r = p.reduce_balanced().unwrap();
        assert_eq!((r.m(), r.n()), (1, 1));
        assert!((r.coeff(1) - c(0.75, 0.0)).norm() < 1e-15);
        // a_{-n} = 0 → unchanged
        let p = p_of(&[(2, c(1.0, 0.0)), (1, c(0.3, 0.0))]);
        assert_eq!(p.reduce_balanced().unwrap(), p);
        // |c| = 1 → balanced error
        let p = p_of(&[(1, c(1.0, 0.0)), (-1, unit(0.4))]);
        assert!(matches!(
            p.reduce_balanced(),
            Err(Error::ExceptionalInput(ExceptionalStatus::BalancedModulus))
        ));
    }

    #[test]
    fn reduce_balanced_agrees_with_psi_on_circle() {
        // z^2 + 0.25 z^{-2} + z, c = -0.25
        let p = p_of(&[(2, c(1.0, 0.0)), (-2, c(0.25, 0.0)), (1, c(1.0, 0.0))]);
        let r = p.reduce_balanced().unwrap();
        let cc = -p.coeff(-2) / p.coeff(2).conj();
        for j in 0..64 {
            let z = unit(TAU * j as f64 / 64.0);
            let w = p.evaluate(z).unwrap();
            let psi = w + cc * w.conj();
            assert!((r.evaluate(z).unwrap() - psi).norm() < 1e-10);
        }
    }

    #[test]
    fn fit_recovers_band_limited_input() {
        let p = p_of(&[(2, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        let samples: Vec<(f64, C64)> = (0..64)
            .map(|j| {
                let th = TAU * j as f64 / 64.0;
                (th, p.evaluate(unit(th)).unwrap())
            })
            .collect();
        let q = LaurentPolynomial::fit_from_samples(&samples, -1, 2).unwrap();
        assert_eq!((q.m(), q.n()), (-1, 2));
        assert!((q.coeff(2) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((q.coeff(-1) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(q.coeff(0).norm() < 1e-12);

        let few: Vec<(f64, C64)> = samples[..3].to_vec();
        assert!(matches!(
            LaurentPolynomial::fit_from_samples(&few, -2, 2),
            Err(Error::InsufficientSamples { needed: 10, got: 3 })
        ));
    }

    #[test]
    fn fourier_coefficients_basics() {
        let samples: Vec<(f64, C64)> = (0..128)
            .map(|j| {
                let th = TAU * j as f64 / 128.0;
                (th, unit(th))
            })
            .collect();
        let f = fourier_coefficients(&samples, -2, 2).unwrap();
        for (i, k) in (-2..=2).enumerate() {
            let expect = if k == 1 { 1.0 } else { 0.0 };
            assert!((f[i].norm() - expect).abs() < 1e-12, "k={k}");
        }
        // f = |cos θ| has f̂(0) = 2/π
        let samples: Vec<(f64, C64)> = (0..4096)
            .map(|j| {
                let th = TAU * j as f64 / 4096.0;
                (th, c(th.cos().abs(), 0.0))
            })
            .collect();
        let f = fourier_coefficients(&samples, 0, 0).unwrap();
        assert!((f[0].re - 2.0 / std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn json_schema_round_trip() {
        let p = p_of(&[(-1, c(0.5, -0.25)), (2, c(1.0, 0.0))]);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"m\":-1") && s.contains("\"n\":2"));
        let q: LaurentPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        // length mismatch and NaN are rejected
        assert!(serde_json::from_str::<LaurentPolynomial>(r#"{"m":0,"n":2,"coeffs":[[1,0]]}"#)
            .is_err());
        assert!(serde_json::from_str::<LaurentPolynomial>(
            r#"{"m":0,"n":0,"coeffs":[[null,0]]}"#
        )
        .is_err());
    }
}
