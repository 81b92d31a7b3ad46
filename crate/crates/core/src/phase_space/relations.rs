use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FunctionSpec, GridSpec, PhaseSpacePoint, TransformKind};
use crate::error::{Error, Result};
use crate::oracle::{fourier_sampled, oracle_ambiguity, oracle_wigner};
use crate::quad::integrate;
use crate::TAU;

/// Result of [`convert_value`]: the target transform, evaluated at `point`
/// for the pair (f, g), or (f, Ig) when `reflect_window` is set, equals
/// `value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conversion {
    pub value: Complex64,
    pub point: PhaseSpacePoint,
    pub reflect_window: bool,
}

fn cis(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

/// Rewrites a value of one transform of (f, g) at z as a value of another.
///
/// The relations used are
/// A(f,g)(x,ξ) = e^{iπxξ} V_g f(x,ξ),
/// W(f,g)(x,ξ) = 2 e^{4πixξ} V_{Ig} f(2x,2ξ),
/// A(f,g)(x,ξ) = ½ W(f,Ig)(x/2,ξ/2).
pub fn convert_value(from: TransformKind, to: TransformKind, value: Complex64, z: PhaseSpacePoint) -> Conversion {
    use TransformKind::*;
    let (x, xi) = (z.x, z.xi);
    let half = PhaseSpacePoint::raw(0.5 * x, 0.5 * xi);
    let double = PhaseSpacePoint::raw(2.0 * x, 2.0 * xi);
    let (value, point, reflect_window) = match (from, to) {
        (Ambiguity, Stft) => (value * cis(-0.5 * TAU * x * xi), z, false),
        (Stft, Ambiguity) => (value * cis(0.5 * TAU * x * xi), z, false),
        (Wigner, Stft) => (value * cis(-2.0 * TAU * x * xi) * 0.5, double, true),
        (Stft, Wigner) => (value * cis(0.5 * TAU * x * xi) * 2.0, half, true),
        (Ambiguity, Wigner) => (value * 2.0, half, true),
        (Wigner, Ambiguity) => (value * 0.5, double, true),
        _ => (value, z, false),
    };
    Conversion { value, point, reflect_window }
}

/// σ(w, z) = w_ξ z_x − w_x z_ξ.
pub fn symplectic_form(w: PhaseSpacePoint, z: PhaseSpacePoint) -> f64 {
    w.xi * z.x - w.x * z.xi
}

/// max over the grid of
/// |W(π(w)f, π(w′)g)(z) − e^{2πiσ(w−w′, z) + iπ(b+b′)(a−a′)} W(f,g)(z − (w+w′)/2)|
/// with w = (a, b), w′ = (a′, b′), both sides by quadrature to `tol`.
pub fn shift_covariance_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    w: PhaseSpacePoint,
    w2: PhaseSpacePoint,
    grid: &GridSpec,
    tol: f64,
) -> Result<f64> {
    grid.validate()?;
    if w == PhaseSpacePoint::raw(0.0, 0.0) && w2 == w {
        return Ok(0.0);
    }
    let fs = f.sampled()?;
    let gs = g.sampled()?;
    let fw = fs.shifted(w);
    let gw = gs.shifted(w2);
    let centre = (w + w2) * 0.5;
    let d = w - w2;
    let mut worst = 0.0_f64;
    for z in grid.points() {
        let lhs = oracle_wigner(&fw, &gw, z, tol)?;
        let phase = TAU * symplectic_form(d, z) + 0.5 * TAU * (w.xi + w2.xi) * (w.x - w2.x);
        let rhs = cis(phase) * oracle_wigner(&fs, &gs, z - centre, tol)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// max over the grid of |W(f̂, ĝ)(z) − W(f, g)(Jz)| with Jz = (−ξ, x),
/// the Fourier transforms themselves computed by quadrature.
pub fn fourier_covariance_check(f: &FunctionSpec, g: &FunctionSpec, grid: &GridSpec, tol: f64) -> Result<f64> {
    fourier_covariance_with(f, g, grid, tol, |z| PhaseSpacePoint::raw(-z.xi, z.x))
}

/// Same as [`fourier_covariance_check`] with an arbitrary linear map in
/// place of J; used to show that the transposed orientation fails.
pub fn fourier_covariance_with<M>(f: &FunctionSpec, g: &FunctionSpec, grid: &GridSpec, tol: f64, map: M) -> Result<f64>
where
    M: Fn(PhaseSpacePoint) -> PhaseSpacePoint,
{
    grid.validate()?;
    let inner = tol * 1e-3;
    let fh = fourier_sampled(f, inner)?;
    let gh = fourier_sampled(g, inner)?;
    let fs = f.sampled()?;
    let gs = g.sampled()?;
    let mut worst = 0.0_f64;
    for z in grid.points() {
        let lhs = oracle_wigner(&fh, &gh, z, tol)?;
        let rhs = oracle_wigner(&fs, &gs, map(z), tol)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// max over `points` of |W(f+g, f+g) − W(f−g, f−g) − 4 Re W(f,g)|.
pub fn polarization_check(f: &FunctionSpec, g: &FunctionSpec, points: &[PhaseSpacePoint], tol: f64) -> Result<f64> {
    let fs = f.sampled()?;
    let gs = g.sampled()?;
    let plus = fs.sum(&gs, Complex64::new(1.0, 0.0))?;
    let minus = fs.sum(&gs, Complex64::new(-1.0, 0.0))?;
    let mut worst = 0.0_f64;
    for &z in points {
        let lhs = oracle_wigner(&plus, &plus, z, tol)? - oracle_wigner(&minus, &minus, z, tol)?;
        let rhs = 4.0 * oracle_wigner(&fs, &gs, z, tol)?.re;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// max over `points` of
/// |A(η_a∗η_b, η_a∗η_b)(x,ξ) − ∫ A(η_a,η_a)(t,ξ) A(η_b,η_b)(x−t,ξ) dt|,
/// every ambiguity value computed by the oracle.
pub fn convolution_identity_check(a: f64, b: f64, points: &[PhaseSpacePoint], tol: f64) -> Result<f64> {
    if a == b {
        return Err(Error::Domain("the convolution check needs a != b".into()));
    }
    let ea = FunctionSpec::one_sided(a)?.sampled()?;
    let eb = FunctionSpec::one_sided(b)?.sampled()?;
    let conv = FunctionSpec::conv_exp_exp(a, b, 1)?.sampled()?;
    // A(η_c, η_c)(t, ·) decays like e^{−c|t|}.
    let reach = 40.0 / a.min(b);
    let inner = tol * 1e-2;
    let mut worst = 0.0_f64;
    for &z in points {
        let lhs = oracle_ambiguity(&conv, &conv, z, tol * 1e-2)?;
        let failure = std::cell::Cell::new(None);
        let integrand = |t: f64| {
            let left = oracle_ambiguity(&ea, &ea, PhaseSpacePoint::raw(t, z.xi), inner);
            let right = oracle_ambiguity(&eb, &eb, PhaseSpacePoint::raw(z.x - t, z.xi), inner);
            match (left, right) {
                (Ok(l), Ok(r)) => l * r,
                (Err(e), _) | (_, Err(e)) => {
                    failure.set(Some(e));
                    Complex64::new(0.0, 0.0)
                }
            }
        };
        let lo = z.x.min(0.0) - reach;
        let hi = z.x.max(0.0) + reach;
        let rhs = integrate(integrand, lo, hi, &[0.0, z.x], tol * 0.1)?.value;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_invert_each_other() {
        let z = PhaseSpacePoint::raw(0.37, -1.21);
        let v = Complex64::new(0.3, -0.8);
        for from in TransformKind::ALL {
            for to in TransformKind::ALL {
                let there = convert_value(from, to, v, z);
                let back = convert_value(to, from, there.value, there.point);
                assert!((back.value - v).norm() < 1e-15);
                assert_eq!(back.point, z);
                assert!(!(there.reflect_window ^ back.reflect_window) || from == to);
            }
        }
    }

    #[test]
    fn origin_conversion_is_trivial() {
        let z = PhaseSpacePoint::raw(0.0, 0.0);
        let v = Complex64::new(1.5, 0.25);
        let c = convert_value(TransformKind::Ambiguity, TransformKind::Stft, v, z);
        assert_eq!(c, Conversion { value: v, point: z, reflect_window: false });
    }

    #[test]
    fn identity_shift_has_no_deviation() {
        let f = FunctionSpec::one_sided(1.0).unwrap();
        let grid = GridSpec::square(1.0, 3).unwrap();
        let o = PhaseSpacePoint::raw(0.0, 0.0);
        assert_eq!(shift_covariance_check(&f, &f, o, o, &grid, 1e-8).unwrap(), 0.0);
    }
}
