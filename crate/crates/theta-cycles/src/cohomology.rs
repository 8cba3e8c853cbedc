//! Bigraded Poincaré polynomials from Levi blocks.
//!
//! Each Levi factor `u(x,y)` contributes the cohomology of the compact dual
//! of its Hermitian symmetric space — a complex Grassmannian — whose
//! Poincaré polynomial in the `(m,m)` bigrading is the Gaussian binomial
//! `[x+y choose x]_q`: the coefficient of `q^m` counts the partitions with m
//! cells inside an `x * y` box. The class as a whole gets the convolution of
//! its level polynomials, shifted into bidegree by `(R+, R-)`: the nonzero
//! Hodge bidegrees `(a,b)` all satisfy `a - b = R+ - R-`, and the diagonal
//! index m corresponds to total degree `R + 2m`.
//!
//! Coefficients are exact big integers.

use crate::parabolic::{invariants, LevelPattern};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Poincaré polynomial of one class: coefficient `diag[m]` is the dimension
/// in bidegree `(R+ + m, R- + m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    shift: (u64, u64),
    diag: Vec<BigUint>,
}

impl PoincarePolynomial {
    /// The `(R+, R-)` bidegree of the lowest nonzero class.
    pub fn shift(&self) -> (u64, u64) {
        self.shift
    }

    pub fn diag(&self) -> &[BigUint] {
        &self.diag
    }

    /// Total dimension, `sum_m diag[m]`.
    pub fn total_dimension(&self) -> BigUint {
        self.diag.iter().sum()
    }

    /// Largest total degree carrying cohomology: `R+ + R- + 2(len-1)`.
    pub fn top_total_degree(&self) -> u64 {
        self.shift.0 + self.shift.1 + 2 * (self.diag.len() as u64 - 1)
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.diag.len();
        (0..n / 2).all(|m| self.diag[m] == self.diag[n - 1 - m])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("gaussian binomial needs k <= n, got n={n}, k={k}")]
pub struct GaussianBinomialError {
    pub n: u32,
    pub k: u32,
}

/// Coefficient vector of the Gaussian binomial `[n choose k]_q`, degree
/// `k(n-k)`.
///
/// Built by the q-Pascal recurrence
/// `[n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q`.
pub fn gaussian_binomial(n: u32, k: u32) -> Result<Vec<BigUint>, GaussianBinomialError> {
    if k > n {
        return Err(GaussianBinomialError { n, k });
    }
    // row[j] = coefficients of [m choose j]_q for the current m
    let mut row: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for m in 1..=n {
        let mut next: Vec<Vec<BigUint>> = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            if j == 0 || j == m {
                next.push(vec![BigUint::one()]);
                continue;
            }
            let left = &row[j as usize - 1];
            let right = &row[j as usize];
            let mut coeffs = vec![BigUint::zero(); (j * (m - j)) as usize + 1];
            for (d, c) in left.iter().enumerate() {
                coeffs[d] += c;
            }
            for (d, c) in right.iter().enumerate() {
                coeffs[d + j as usize] += c;
            }
            next.push(coeffs);
        }
        row = next;
    }
    Ok(row.swap_remove(k as usize))
}

fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Poincaré polynomial of a class: level-wise Gaussian binomials convolved
/// together, shifted by `(R+, R-)`.
pub fn hodge_polynomial(pat: &LevelPattern) -> PoincarePolynomial {
    let inv = invariants(pat);
    let mut diag = vec![BigUint::one()];
    for &(x, y) in pat.levels() {
        let factor = gaussian_binomial(x + y, x).expect("x <= x + y");
        diag = convolve(&diag, &factor);
    }
    PoincarePolynomial {
        shift: (inv.r_plus, inv.r_minus),
        diag,
    }
}

/// The diagonal-Hodge-type filter defining membership in Q:
/// `R+ = R- <= t`.
pub fn hodge_type_admissible(pat: &LevelPattern, t: u64) -> bool {
    let inv = invariants(pat);
    inv.r_plus == inv.r_minus && inv.r_plus <= t
}
