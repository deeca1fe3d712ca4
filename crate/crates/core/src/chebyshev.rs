//! Chebyshev polynomials of the second kind for arbitrary integer index.
//!
//! `U_n(cos θ) = sin((n+1)θ) / sin θ` for `n ≥ 0`, extended by the
//! conventions `U_{-1} ≡ 0` and `U_{-n-1} = -U_{n-1}`, which keep the
//! trigonometric identity valid for every integer index.
//!
//! Evaluation uses the three-term recurrence `U_{k+1} = 2t·U_k - U_{k-1}`
//! rather than the sine ratio, so it stays valid for complex `t` and at
//! the points where `sin θ` vanishes.

use crate::C64;

/// A second-kind Chebyshev polynomial in the monomial basis.
///
/// For `index ≥ 0` the degree equals `index` and the leading coefficient
/// is `2^index`. `index = -1` is the zero polynomial (empty coefficient
/// vector); `index ≤ -2` stores the negated coefficients of `U_{-index-2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevU {
    pub index: i32,
    /// Monomial coefficients in ascending degree; empty for the zero polynomial.
    pub coeffs: Vec<f64>,
}

impl ChebyshevU {
    /// Evaluate at a complex point by Horner's scheme.
    pub fn eval(&self, t: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

/// Evaluate `U_index(t)` for any integer index.
pub fn u_eval(index: i32, t: C64) -> C64 {
    if index >= 0 {
        let mut prev = C64::new(1.0, 0.0); // U_0
        if index == 0 {
            return prev;
        }
        let mut cur = 2.0 * t; // U_1
        for _ in 1..index {
            let next = 2.0 * t * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else if index == -1 {
        C64::new(0.0, 0.0)
    } else {
        -u_eval(-index - 2, t)
    }
}

/// Monomial coefficients of `U_index` for any integer index.
pub fn u_coeffs(index: i32) -> ChebyshevU {
    if index == -1 {
        return ChebyshevU { index, coeffs: Vec::new() };
    }
    if index < -1 {
        let mut u = u_coeffs(-index - 2);
        for c in &mut u.coeffs {
            *c = -*c;
        }
        u.index = index;
        return u;
    }
    let mut prev = vec![1.0]; // U_0
    if index == 0 {
        return ChebyshevU { index, coeffs: prev };
    }
    let mut cur = vec![0.0, 2.0]; // U_1
    for _ in 1..index {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    ChebyshevU { index, coeffs: cur }
}
