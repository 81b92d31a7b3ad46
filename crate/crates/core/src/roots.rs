//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;

/// Roots found together with the largest relative residual
/// |p(z)| / Σ|a_k||z|^k over them.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residual: f64,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let scale = coeffs.iter().fold(0.0, |acc, a| acc * r + a.norm());
    let (p, _) = horner(coeffs, z);
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All roots of Σ coeffs[k] z^{n−k} (highest degree first).
///
/// Leading zeros are stripped. Fails with `NoConvergence` when the
/// iteration stalls before every root reaches a relative residual of
/// `tol`; the best iterate's residual is reported.
pub fn polynomial_roots(coeffs: &[Complex64], tol: f64) -> Result<RootSet> {
    let start = coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0));
    let Some(start) = start else {
        return Err(Error::Domain("the zero polynomial has no finite root set".into()));
    };
    let coeffs: Vec<Complex64> = coeffs[start..].iter().map(|c| c / coeffs[start]).collect();
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(RootSet { roots: vec![], residual: 0.0 });
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain("polynomial coefficients must be finite".into()));
    }

    // Starting points on a circle of the Cauchy-type radius, rotated off the axes.
    let radius = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm().powf(1.0 / (k + 1) as f64))
        .fold(0.0_f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();

    let mut iterations = 0;
    loop {
        let mut biggest = 0.0_f64;
        for i in 0..n {
            let (p, dp) = horner(&coeffs, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                biggest = biggest.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        iterations += 1;
        if biggest < 1e-15 || iterations >= MAX_ITERATIONS {
            break;
        }
    }

    // Newton polish against the original coefficients.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&coeffs, *zi);
            let step = p / dp;
            if !step.is_finite() || step.norm() < 1e-17 * zi.norm() {
                break;
            }
            let cand = *zi - step;
            if relative_residual(&coeffs, cand) <= relative_residual(&coeffs, *zi) {
                *zi = cand;
            } else {
                break;
            }
        }
    }

    let residual = z.iter().map(|&r| relative_residual(&coeffs, r)).fold(0.0, f64::max);
    if residual > tol || z.iter().any(|r| !r.is_finite()) {
        return Err(Error::NoConvergence { iterations, residual });
    }
    Ok(RootSet { roots: z, residual })
}

/// Real-coefficient convenience wrapper of [`polynomial_roots`].
pub fn real_polynomial_roots(coeffs: &[f64], tol: f64) -> Result<RootSet> {
    let c: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    polynomial_roots(&c, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut r: Vec<Complex64>) -> Vec<Complex64> {
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        r
    }

    #[test]
    fn linear_and_quadratic() {
        let r = real_polynomial_roots(&[1.0, 2.0], 1e-12).unwrap();
        assert!((r.roots[0] + 2.0).norm() < 1e-15);
        let r = sorted_re(real_polynomial_roots(&[2.0, 12.0, 24.0], 1e-12).unwrap().roots);
        let s3 = 3f64.sqrt();
        assert!((r[0] - Complex64::new(-3.0, -s3)).norm() < 1e-13);
        assert!((r[1] - Complex64::new(-3.0, s3)).norm() < 1e-13);
    }

    #[test]
    fn roots_of_unity() {
        let mut c = vec![0.0; 13];
        c[0] = 1.0;
        c[12] = -1.0;
        let r = real_polynomial_roots(&c, 1e-12).unwrap();
        for z in r.roots {
            assert!((z.norm() - 1.0).abs() < 1e-13);
            assert!((z.powu(12) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn known_integer_roots() {
        // (z−1)(z−2)(z−3)(z+4)
        let r = sorted_re(real_polynomial_roots(&[1.0, -2.0, -13.0, 38.0, -24.0], 1e-12).unwrap().roots);
        for (z, want) in r.iter().zip([-4.0, 1.0, 2.0, 3.0]) {
            assert!((z - want).norm() < 1e-11);
        }
    }

    #[test]
    fn leading_zeros_and_constants() {
        let r = real_polynomial_roots(&[0.0, 0.0, 3.0, -6.0], 1e-12).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!((r.roots[0] - 2.0).norm() < 1e-15);
        assert!(real_polynomial_roots(&[5.0], 1e-12).unwrap().roots.is_empty());
        assert!(real_polynomial_roots(&[0.0, 0.0], 1e-12).is_err());
    }
}
