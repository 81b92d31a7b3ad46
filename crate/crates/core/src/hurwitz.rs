//! Exact Hurwitz-stability tools for integer polynomials, and the
//! polynomials A_n(z) = Σ_{k=0}^n C(n,k)(n+k)! z^{n−k}.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::polynomial_roots;

/// Largest n accepted by [`build_an`].
pub const MAX_AN_DEGREE: u32 = 64;

/// γ of the sufficient coefficient condition, as the exact ratio
/// GAMMA_NUM / GAMMA_DEN.
pub const GAMMA_NUM: u32 = 21479;
pub const GAMMA_DEN: u32 = 10000;

mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|b| b.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(D::Error::custom)).collect()
    }
}

/// Integer polynomial a₀zⁿ + a₁z^{n−1} + ⋯ + a_n. JSON stores the
/// coefficients as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPolynomial {
    #[serde(with = "decimal")]
    pub coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// Degree counted from the first coefficient, which is assumed nonzero.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// a_j with a_j = 0 outside 0..=n.
    pub fn coeff(&self, j: i64) -> BigInt {
        if j < 0 || j as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[j as usize].clone()
        }
    }

    /// Nearest-double image of the coefficients.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.to_f64().iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    fn check_leading(&self) -> Result<()> {
        match self.coeffs.first() {
            Some(a0) if a0.is_positive() => Ok(()),
            Some(a0) => Err(Error::Domain(format!("leading coefficient must be positive, got {a0}"))),
            None => Err(Error::Domain("empty coefficient list".into())),
        }
    }
}

/// A_n with exact coefficients C(n,k)(n+k)!, highest degree first.
pub fn build_an(n: u32) -> Result<IntPolynomial> {
    if n > MAX_AN_DEGREE {
        return Err(Error::Domain(format!("n = {n} exceeds the cap {MAX_AN_DEGREE}")));
    }
    let mut fact = BigInt::one(); // (n+k)!
    for m in 1..=n {
        fact *= m;
    }
    let mut binom = BigInt::one(); // C(n,k)
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        if k > 0 {
            fact *= n + k;
            binom = binom * (n - k + 1) / k;
        }
        coeffs.push(&binom * &fact);
    }
    Ok(IntPolynomial { coeffs })
}

/// Coefficients of A_n rounded to double precision.
pub fn an_coefficients_f64(n: u32) -> Result<Vec<f64>> {
    Ok(build_an(n)?.to_f64())
}

/// The n×n Hurwitz matrix, ℋ[i][j] = a_{2j−i} in 1-based indices.
pub fn hurwitz_matrix(p: &IntPolynomial) -> Result<Vec<Vec<BigInt>>> {
    p.check_leading()?;
    let n = p.degree();
    if n == 0 {
        return Err(Error::Domain("constant polynomials have no Hurwitz matrix".into()));
    }
    Ok((1..=n as i64)
        .map(|i| (1..=n as i64).map(|j| p.coeff(2 * j - i)).collect())
        .collect())
}

/// Determinant by Bareiss elimination with row pivoting.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

/// Leading principal minors Δ₁…Δ_n. One unpivoted Bareiss sweep yields
/// them all as successive pivots; after a zero pivot the remaining minors
/// are computed one by one.
pub fn principal_minors(h: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = h.len();
    let mut m: Vec<Vec<BigInt>> = h.to_vec();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k].is_zero() {
            minors.push(BigInt::zero());
            for size in k + 2..=n {
                let sub = h[..size].iter().map(|row| row[..size].to_vec()).collect();
                minors.push(bareiss_det(sub));
            }
            return minors;
        }
        minors.push(m[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    minors
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub is_hurwitz: bool,
    #[serde(with = "decimal")]
    pub minors: Vec<BigInt>,
    /// a_j a_{j+1} − a_{j−1} a_{j+2} > 0 for j = 1..n−2.
    pub necessary_ok: bool,
    /// a_j a_{j+1} > γ a_{j−1} a_{j+2} for j = 1..n−2.
    pub sufficient_ok: bool,
    /// First 1-based index i with Δ_i ≤ 0.
    pub failing_index: Option<usize>,
}

/// Routh–Hurwitz verdict from exact minors, plus the two coefficient
/// conditions. A zero minor counts as failure (open left half-plane).
pub fn routh_hurwitz(p: &IntPolynomial) -> Result<StabilityReport> {
    let minors = principal_minors(&hurwitz_matrix(p)?);
    let failing_index = minors.iter().position(|d| !d.is_positive()).map(|i| i + 1);
    let n = p.degree() as i64;
    let mut necessary_ok = true;
    let mut sufficient_ok = true;
    for j in 1..=n - 2 {
        let lhs = p.coeff(j) * p.coeff(j + 1);
        let rhs = p.coeff(j - 1) * p.coeff(j + 2);
        necessary_ok &= lhs > rhs;
        sufficient_ok &= lhs * GAMMA_DEN > rhs * GAMMA_NUM;
    }
    Ok(StabilityReport { is_hurwitz: failing_index.is_none(), minors, necessary_ok, sufficient_ok, failing_index })
}

/// max Re z over the roots of the floating image of p, from an
/// Aberth iteration refined to relative residual 1e−10.
pub fn max_real_root_part(p: &IntPolynomial) -> Result<f64> {
    if p.degree() == 0 || p.coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::Domain("need a polynomial of degree at least 1".into()));
    }
    let c: Vec<Complex64> = p.to_f64().into_iter().map(|a| Complex64::new(a, 0.0)).collect();
    let roots = polynomial_roots(&c, 1e-10)?;
    Ok(roots.roots.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
}
