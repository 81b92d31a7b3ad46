//! Hermite-window short-time Fourier transforms through the Bargmann
//! calculus, and zeros of polyanalytic polynomials.
//!
//! Hermite functions are h_n(t) = 2^{1/4} (2ⁿ n!)^{−1/2} H_n(√(2π) t) e^{−πt²},
//! whose Bargmann transforms are √(πⁿ/n!) zⁿ. A Hermite combination is
//! stored through its associated polynomial P(z) = Σ cₙ zⁿ, meaning the
//! function Σ √(πⁿ n!) cₙ hₙ.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{FunctionSpec, GridSpec, PhaseSpacePoint};
use crate::scan::{scan, ZeroReport};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// h_0(t) … h_n(t) by the three-term recurrence.
pub fn hermite_functions(n: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let h0 = 2f64.powf(0.25) * (-PI * t * t).exp();
    out.push(h0);
    if n == 0 {
        return out;
    }
    let u = (2.0 * PI).sqrt() * t;
    out.push(2f64.sqrt() * u * h0);
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * u * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

fn sqrt_pi_pow_fact(n: usize) -> f64 {
    // √(πⁿ n!) accumulated as a product to stay finite for moderate n.
    (1..=n).fold(1.0, |acc, k| acc * (PI * k as f64).sqrt())
}

/// Coefficients of the hₙ in the combination with associated polynomial
/// coefficients `p`: wₙ = √(πⁿ n!) pₙ.
pub fn hermite_weights(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().map(|(n, c)| c * sqrt_pi_pow_fact(n)).collect()
}

/// Inverse of [`hermite_weights`]: plain Hermite coefficients to P.
pub fn hermite_to_p_coeffs(plain: &[Complex64]) -> Vec<Complex64> {
    plain.iter().enumerate().map(|(n, c)| c / sqrt_pi_pow_fact(n)).collect()
}

/// The Hermite combination whose Bargmann transform is the polynomial Q.
pub fn function_with_bargmann(q: &ComplexPolynomial) -> Result<FunctionSpec> {
    // B hₘ = √(πᵐ/m!) zᵐ, so f = Σ qₘ √(m!/πᵐ) hₘ = Σ √(πᵐ m!) (qₘ/πᵐ) hₘ.
    let coeffs = q.coeffs.iter().enumerate().map(|(m, c)| c / PI.powi(m as i32)).collect();
    FunctionSpec::hermite_combo(coeffs)
}

/// Univariate polynomial with complex coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexPolynomial {
    pub coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// k-th derivative.
    pub fn derivative(&self, k: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(m, c)| c * falling(m, k))
            .collect();
        Self::new(coeffs)
    }
}

// m!/(m−k)!
fn falling(m: usize, k: usize) -> f64 {
    ((m - k + 1)..=m).fold(1.0, |acc, v| acc * v as f64)
}

/// Σ c[j][k] z^j z̄^k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyanalyticPolynomial {
    pub c: Vec<Vec<Complex64>>,
}

impl PolyanalyticPolynomial {
    pub fn new(c: Vec<Vec<Complex64>>) -> Self {
        Self { c }
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.c
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().map(move |(k, v)| (j, k, *v)))
            .filter(|t| t.2 != ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_terms().next().is_none()
    }

    pub fn deg_z(&self) -> Option<usize> {
        self.nonzero_terms().map(|t| t.0).max()
    }

    pub fn deg_conj(&self) -> Option<usize> {
        self.nonzero_terms().map(|t| t.1).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.nonzero_terms().map(|t| t.0 + t.1).max()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut acc = ZERO;
        for row in self.c.iter().rev() {
            let inner = row.iter().rev().fold(ZERO, |a, c| a * zb + c);
            acc = acc * z + inner;
        }
        acc
    }

    fn add_term(&mut self, j: usize, k: usize, v: Complex64) {
        if self.c.len() <= j {
            self.c.resize(j + 1, Vec::new());
        }
        if self.c[j].len() <= k {
            self.c[j].resize(k + 1, ZERO);
        }
        self.c[j][k] += v;
    }

    /// Σ |c| divided by the largest modulus among the top-total-degree terms.
    fn root_radius(&self) -> f64 {
        let Some(top) = self.total_degree() else { return 1.0 };
        let lead = self
            .nonzero_terms()
            .filter(|t| t.0 + t.1 == top)
            .fold(0.0_f64, |m, t| m.max(t.2.norm()));
        let sum: f64 = self.nonzero_terms().map(|t| t.2.norm()).sum();
        1.0 + sum / lead
    }
}

/// V_{h_n} f(x, −ξ) for z = x + iξ, where Bf is a polynomial:
/// (πⁿ n!)^{−1/2} e^{πixξ} e^{−π|z|²/2} Σ_k C(n,k) (−π z̄)^{n−k} Bf^{(k)}(z).
pub fn hermite_window_stft(n: usize, bf: &ComplexPolynomial, z: Complex64) -> Complex64 {
    let mut sum = ZERO;
    let w = -PI * z.conj();
    let mut binom = 1.0;
    for k in 0..=n {
        sum += binom * w.powu((n - k) as u32) * bf.derivative(k).eval(z);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    let (x, xi) = (z.re, z.im);
    let pre = Complex64::from_polar((-PI * z.norm_sqr() / 2.0).exp() / sqrt_pi_pow_fact(n), PI * x * xi);
    pre * sum
}

/// Σ_k (1/k!) Q^{(k)}(z) conj(P^{(k)}(−π z)), expanded in z and z̄.
pub fn polyanalytic_bargmann(p: &ComplexPolynomial, q: &ComplexPolynomial) -> Result<PolyanalyticPolynomial> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Invalid("window and function polynomials must be nonzero".into()));
    }
    let mut out = PolyanalyticPolynomial::new(Vec::new());
    let kmax = p.coeffs.len().min(q.coeffs.len());
    let mut inv_fact = 1.0;
    for k in 0..kmax {
        if k > 0 {
            inv_fact /= k as f64;
        }
        for (m, qm) in q.coeffs.iter().enumerate().skip(k) {
            for (n, pn) in p.coeffs.iter().enumerate().skip(k) {
                let v = qm * falling(m, k) * pn.conj() * falling(n, k) * (-PI).powi((n - k) as i32) * inv_fact;
                out.add_term(m - k, n - k, v);
            }
        }
    }
    Ok(out)
}

/// Balk's criterion: a zero is guaranteed when the total degree exceeds
/// twice the smaller of the two partial degrees.
pub fn balk_degree_check(q: &PolyanalyticPolynomial) -> bool {
    match (q.total_degree(), q.deg_z(), q.deg_conj()) {
        (Some(s), Some(nz), Some(nb)) => s > 2 * nz.min(nb),
        _ => false,
    }
}

/// The two roots of π(z + a)(z̄ + b̄) − 1 on the line through the
/// direction fixed by c = √π(b̄ − ā) = ρe^{iθ}.
pub fn degree1_roots(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    // With ζ = √π(z + a) the equation reads ζ(ζ̄ + c) = 1; ζ = s e^{−iθ}
    // with real s gives s² + ρs − 1 = 0.
    let sp = PI.sqrt();
    let c = sp * (b.conj() - a.conj());
    let (rho, theta) = (c.norm(), if c.norm() == 0.0 { 0.0 } else { c.arg() });
    let disc = (rho * rho + 4.0).sqrt();
    let rot = Complex64::from_polar(1.0, -theta);
    let roots = [(-rho + disc) / 2.0, (-rho - disc) / 2.0].map(|s| rot * s / sp - a);
    (roots[0], roots[1])
}

/// Residual π(z + a)(z̄ + b̄) − 1.
pub fn degree1_residual(a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
    PI * (z + a) * (z.conj() + b.conj()) - 1.0
}

/// Zero scan of Q(z, z̄) over a box in the (Re z, Im z) plane.
pub fn polyanalytic_zero_search(q: &PolyanalyticPolynomial, grid: &GridSpec, zero_tol: f64) -> Result<ZeroReport> {
    scan(|p: PhaseSpacePoint| q.eval(Complex64::new(p.x, p.xi)), grid, zero_tol)
}

/// Searches [−R, R]² with R = 1 + Σ|c|/|leading|, doubling R up to four
/// times until a zero is found. Returns the last report.
pub fn guaranteed_zero_search(q: &PolyanalyticPolynomial, n: usize, zero_tol: f64) -> Result<ZeroReport> {
    let mut r = q.root_radius();
    let mut report = polyanalytic_zero_search(q, &GridSpec::square(r, n)?, zero_tol)?;
    for _ in 0..4 {
        if !report.zeros.is_empty() {
            break;
        }
        r *= 2.0;
        report = polyanalytic_zero_search(q, &GridSpec::square(r, n)?, zero_tol)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        let n = 6;
        let h = 0.002;
        let mut gram = vec![vec![0.0; n + 1]; n + 1];
        let mut t = -6.0;
        while t <= 6.0 {
            let v = hermite_functions(n, t);
            for i in 0..=n {
                for j in 0..=n {
                    gram[i][j] += h * v[i] * v[j];
                }
            }
            t += h;
        }
        for i in 0..=n {
            for j in 0..=n {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i][j] - e).abs() < 1e-10, "({i},{j}) = {}", gram[i][j]);
            }
        }
    }

    #[test]
    fn h1_window_on_h0() {
        let one = ComplexPolynomial::from_real(&[1.0]);
        assert!((hermite_window_stft(0, &one, ZERO) - 1.0).norm() < 1e-15);
        for z in [c(0.3, 0.4), c(-1.0, 0.2)] {
            let v = hermite_window_stft(1, &one, z);
            let m = PI.sqrt() * z.norm() * (-PI * z.norm_sqr() / 2.0).exp();
            assert!((v.norm() - m).abs() < 1e-14);
        }
        assert_eq!(hermite_window_stft(1, &one, ZERO), ZERO);
    }

    #[test]
    fn degree_one_worked_example() {
        let (a, b) = (c(0.4, -0.2), c(1.1, 0.7));
        let p = ComplexPolynomial::new(vec![PI * b, c(-1.0, 0.0)]);
        let q = ComplexPolynomial::new(vec![a, c(1.0, 0.0)]);
        let qp = polyanalytic_bargmann(&p, &q).unwrap();
        for z in [c(0.1, 0.2), c(-0.7, 1.3)] {
            assert!((qp.eval(z) - degree1_residual(a, b, z)).norm() < 1e-12);
        }
        assert_eq!((qp.deg_z(), qp.deg_conj(), qp.total_degree()), (Some(1), Some(1), Some(2)));
    }

    #[test]
    fn degree_one_roots_reference_cases() {
        let r = 1.0 / PI.sqrt();
        let (z1, z2) = degree1_roots(ZERO, ZERO);
        assert!((z1 - r).norm() < 1e-15 && (z2 + r).norm() < 1e-15);
        let (z1, z2) = degree1_roots(c(1.0, 0.0), c(1.0, 0.0));
        assert!((z1 - (r - 1.0)).norm() < 1e-15 && (z2 - (-r - 1.0)).norm() < 1e-15);
        let (a, b) = (c(0.0, 1.0), ZERO);
        let (z1, z2) = degree1_roots(a, b);
        assert!(degree1_residual(a, b, z1).norm() < 1e-12);
        assert!(degree1_residual(a, b, z2).norm() < 1e-12);
    }

    #[test]
    fn balk_examples() {
        let mut q = PolyanalyticPolynomial::new(vec![]);
        q.add_term(3, 1, c(1.0, 0.0));
        q.add_term(0, 0, c(2.0, 0.0));
        assert!(balk_degree_check(&q));
        let mut q = PolyanalyticPolynomial::new(vec![]);
        q.add_term(0, 0, c(1.0, 0.0));
        q.add_term(1, 1, c(1.0, 0.0));
        assert!(!balk_degree_check(&q));
        let r = polyanalytic_zero_search(&q, &GridSpec::square(1.0, 21).unwrap(), 1e-10).unwrap();
        assert!(r.zeros.is_empty());
        assert!((r.min_modulus - 1.0).abs() < 1e-15);
        assert_eq!(r.argmin, PhaseSpacePoint::raw(0.0, 0.0));
        let constant = PolyanalyticPolynomial::new(vec![vec![c(3.0, 0.0)]]);
        assert!(!balk_degree_check(&constant));
    }

    #[test]
    fn circle_zero_set() {
        // P = −z, Q = z gives π z z̄ − 1
        let p = ComplexPolynomial::from_real(&[0.0, -1.0]);
        let q = ComplexPolynomial::from_real(&[0.0, 1.0]);
        let qp = polyanalytic_bargmann(&p, &q).unwrap();
        let r = polyanalytic_zero_search(&qp, &GridSpec::square(1.0, 41).unwrap(), 1e-10).unwrap();
        assert!(!r.zeros.is_empty());
        for z in &r.zeros {
            assert!((z.point.norm_sqr().sqrt() - 1.0 / PI.sqrt()).abs() < 1e-8);
        }
    }
}
