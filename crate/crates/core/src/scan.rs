//! Grid search for zeros of complex-valued functions on phase space and
//! for sign changes of real-valued ones.
//!
//! A cell is refined when the bilinear interpolant of its four corner
//! values comes within 10·zero_tol of zero, measured relative to the
//! largest corner modulus. The relative test keeps rapidly decaying but
//! zero-free kernels (whose moduli reach 1e−20 at the edge of the window)
//! from flooding the refinement stage.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{GridSpec, PhaseSpacePoint};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a zero-freeness verdict is supported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Positive minimum over a finite grid; evidence, not proof.
    GridEvidence,
    /// An analytic lower bound of the modulus is available; `bound` is its
    /// value at the grid minimiser.
    Analytic { bound: f64 },
    /// A per-x analytic argument (convexity of a monotone step triple).
    AnalyticPerX { certified_columns: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocatedZero {
    pub point: PhaseSpacePoint,
    pub residual_modulus: f64,
}

/// A cell whose corners suggested a zero but whose refinement did not
/// converge to one. `best_point` lies within one cell width of the cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuspectCell {
    pub cell: (usize, usize),
    pub best_point: PhaseSpacePoint,
    pub best_modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroReport {
    pub zeros: Vec<LocatedZero>,
    pub min_modulus: f64,
    pub argmin: PhaseSpacePoint,
    pub grid: GridSpec,
    pub refined: bool,
    pub zero_tol: f64,
    pub suspect_cells: Vec<SuspectCell>,
    pub certificates: Vec<Certificate>,
}

impl ZeroReport {
    pub fn is_zero_free(&self) -> bool {
        self.zeros.is_empty() && self.suspect_cells.is_empty() && self.min_modulus > 0.0
    }

    /// Attaches the analytic tag given a modulus lower-bound function of
    /// the scanned closed form.
    pub fn with_analytic_bound<B: Fn(PhaseSpacePoint) -> f64>(mut self, bound: B) -> Self {
        let b = bound(self.argmin);
        if b > 0.0 && self.zeros.is_empty() {
            self.certificates.push(Certificate::Analytic { bound: b });
        }
        self
    }
}

/// Options of the Newton refinement.
#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { max_iterations: 60, max_halvings: 40 }
    }
}

/// Scans an infallible evaluator.
pub fn scan<F>(eval: F, grid: &GridSpec, zero_tol: f64) -> Result<ZeroReport>
where
    F: Fn(PhaseSpacePoint) -> Complex64 + Sync,
{
    try_scan(|z| Ok(eval(z)), grid, zero_tol)
}

/// Scans an evaluator that may fail (quadrature-backed functions).
pub fn try_scan<F>(eval: F, grid: &GridSpec, zero_tol: f64) -> Result<ZeroReport>
where
    F: Fn(PhaseSpacePoint) -> Result<Complex64> + Sync,
{
    if !(zero_tol > 0.0) {
        return Err(Error::Invalid(format!("zero tolerance must be positive, got {zero_tol}")));
    }
    grid.validate()?;
    let values = evaluate_grid(&eval, grid)?;
    let (nx, nxi) = (grid.nx, grid.nxi);
    let at = |i: usize, j: usize| values[j * nx + i];

    let mut min_modulus = f64::INFINITY;
    let mut argmin = grid.point(0, 0);
    for j in 0..nxi {
        for i in 0..nx {
            let m = at(i, j).norm();
            let p = grid.point(i, j);
            if m < min_modulus || (m == min_modulus && (p.x, p.xi) < (argmin.x, argmin.xi)) {
                min_modulus = m;
                argmin = p;
            }
        }
    }

    let mut flagged = Vec::new();
    for j in 0..nxi - 1 {
        for i in 0..nx - 1 {
            let corners = [at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)];
            let scale = corners.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
            if scale == 0.0 || bilinear_min_modulus(corners) < 10.0 * zero_tol * scale {
                flagged.push((i, j, scale));
            }
        }
    }

    let refine = |&(i, j, scale): &(usize, usize, f64)| refine_cell(&eval, grid, i, j, scale, zero_tol);
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Result<CellOutcome>> = flagged.par_iter().map(refine).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Result<CellOutcome>> = flagged.iter().map(refine).collect();

    let (dx, dxi) = grid.cell_width();
    let merge = 1e-3 * dx.min(dxi);
    let mut zeros: Vec<LocatedZero> = Vec::new();
    let mut suspect_cells = Vec::new();
    for outcome in outcomes {
        match outcome? {
            CellOutcome::Zero(z) => {
                let dup = zeros.iter().any(|o| {
                    (o.point.x - z.point.x).abs() < merge && (o.point.xi - z.point.xi).abs() < merge
                });
                if !dup {
                    zeros.push(z);
                }
            }
            CellOutcome::Suspect(s) => suspect_cells.push(s),
        }
    }
    zeros.sort_by(|a, b| (a.point.x, a.point.xi).partial_cmp(&(b.point.x, b.point.xi)).unwrap());

    let mut certificates = Vec::new();
    if zeros.is_empty() && min_modulus > 0.0 {
        certificates.push(Certificate::GridEvidence);
    }
    Ok(ZeroReport {
        zeros,
        min_modulus,
        argmin,
        grid: *grid,
        refined: !flagged.is_empty(),
        zero_tol,
        suspect_cells,
        certificates,
    })
}

fn evaluate_grid<F>(eval: &F, grid: &GridSpec) -> Result<Vec<Complex64>>
where
    F: Fn(PhaseSpacePoint) -> Result<Complex64> + Sync,
{
    let row = |j: usize| -> Result<Vec<Complex64>> {
        (0..grid.nx)
            .map(|i| {
                let v = eval(grid.point(i, j))?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    let p = grid.point(i, j);
                    Err(Error::Invalid(format!("evaluator returned {v} at ({}, {})", p.x, p.xi)))
                }
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Result<Vec<Complex64>>> = (0..grid.nxi).into_par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Result<Vec<Complex64>>> = (0..grid.nxi).map(row).collect();
    let mut out = Vec::with_capacity(grid.len());
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

/// Minimum modulus of the bilinear interpolant of corner values
/// [F00, F10, F01, F11] over the unit square.
pub fn bilinear_min_modulus(c: [Complex64; 4]) -> f64 {
    let a = c[0];
    let b = c[1] - c[0];
    let cc = c[2] - c[0];
    let d = c[3] - c[2] - c[1] + c[0];
    let value = |s: f64, t: f64| a + b * s + cc * t + d * s * t;

    // Interior zero: for fixed t the map is linear in s, with root
    // s = −(a + ct)/(b + dt), real iff Im[(a + ct) conj(b + dt)] = 0.
    let p0 = (a * b.conj()).im;
    let p1 = (cc * b.conj() + a * d.conj()).im;
    let p2 = (cc * d.conj()).im;
    for t in real_roots_quadratic(p2, p1, p0) {
        if (0.0..=1.0).contains(&t) {
            let den = b + d * t;
            if den.norm() > 0.0 {
                let s = (-(a + cc * t) / den).re;
                if (0.0..=1.0).contains(&s) {
                    return value(s, t).norm();
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    for (p, q) in [(c[0], c[1]), (c[2], c[3]), (c[0], c[2]), (c[1], c[3])] {
        best = best.min(segment_min_modulus(p, q));
    }
    for k in 1..5 {
        for l in 1..5 {
            best = best.min(value(k as f64 / 5.0, l as f64 / 5.0).norm());
        }
    }
    best
}

fn segment_min_modulus(p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let dd = d.norm_sqr();
    if dd == 0.0 {
        return p.norm();
    }
    let s = (-(p.conj() * d).re / dd).clamp(0.0, 1.0);
    (p + d * s).norm()
}

fn real_roots_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return vec![0.0, 0.5, 1.0];
    }
    let (a, b, c) = (a / scale, b / scale, c / scale);
    if a.abs() < 1e-14 {
        if b.abs() < 1e-14 {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = vec![q / a];
    if q != 0.0 {
        roots.push(c / q);
    }
    roots
}

enum CellOutcome {
    Zero(LocatedZero),
    Suspect(SuspectCell),
}

fn refine_cell<F>(eval: &F, grid: &GridSpec, i: usize, j: usize, scale: f64, zero_tol: f64) -> Result<CellOutcome>
where
    F: Fn(PhaseSpacePoint) -> Result<Complex64>,
{
    let (dx, dxi) = grid.cell_width();
    let start = PhaseSpacePoint::raw(grid.x_at(i) + 0.5 * dx, grid.xi_at(j) + 0.5 * dxi);
    let (best, fbest) = newton_refine(eval, start, zero_tol * 1e-3, NewtonOptions::default())?;
    let inside = best.x >= grid.x_at(i) - dx
        && best.x <= grid.x_at(i + 1) + dx
        && best.xi >= grid.xi_at(j) - dxi
        && best.xi <= grid.xi_at(j + 1) + dxi;
    let m = fbest.norm();
    if inside && m < zero_tol && m < 1e-3 * scale.max(f64::MIN_POSITIVE) {
        Ok(CellOutcome::Zero(LocatedZero { point: best, residual_modulus: m }))
    } else if inside {
        Ok(CellOutcome::Suspect(SuspectCell { cell: (i, j), best_point: best, best_modulus: m }))
    } else {
        // The iteration left the cell's neighbourhood; report the centre.
        let m0 = eval(start)?.norm();
        Ok(CellOutcome::Suspect(SuspectCell { cell: (i, j), best_point: start, best_modulus: m0 }))
    }
}

/// Damped Gauss–Newton iteration on (x, ξ) ↦ (Re F, Im F) with central
/// differences (h = 1e−6·(1+|z|)) and a Levenberg regularisation so that
/// rank-deficient Jacobians on zero curves still give a minimum-norm step.
/// Returns the best point found and its value.
pub fn newton_refine<F>(
    eval: &F,
    start: PhaseSpacePoint,
    target: f64,
    opts: NewtonOptions,
) -> Result<(PhaseSpacePoint, Complex64)>
where
    F: Fn(PhaseSpacePoint) -> Result<Complex64>,
{
    let mut z = start;
    let mut fz = eval(z)?;
    for _ in 0..opts.max_iterations {
        if fz.norm() <= target {
            break;
        }
        let h = 1e-6 * (1.0 + z.x.abs().max(z.xi.abs()));
        let fx = (eval(PhaseSpacePoint::raw(z.x + h, z.xi))? - eval(PhaseSpacePoint::raw(z.x - h, z.xi))?) / (2.0 * h);
        let fxi = (eval(PhaseSpacePoint::raw(z.x, z.xi + h))? - eval(PhaseSpacePoint::raw(z.x, z.xi - h))?) / (2.0 * h);
        // J = [[Re fx, Re fxi], [Im fx, Im fxi]]
        let (j11, j12, j21, j22) = (fx.re, fxi.re, fx.im, fxi.im);
        let a11 = j11 * j11 + j21 * j21;
        let a12 = j11 * j12 + j21 * j22;
        let a22 = j12 * j12 + j22 * j22;
        let lambda = 1e-12 * (a11 + a22);
        let (a11, a22) = (a11 + lambda, a22 + lambda);
        let g1 = -(j11 * fz.re + j21 * fz.im);
        let g2 = -(j12 * fz.re + j22 * fz.im);
        let det = a11 * a22 - a12 * a12;
        if !(det.abs() > 0.0) || !det.is_finite() {
            break;
        }
        let mut step = ((a22 * g1 - a12 * g2) / det, (a11 * g2 - a12 * g1) / det);
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial = PhaseSpacePoint::raw(z.x + step.0, z.xi + step.1);
            let ft = eval(trial)?;
            if ft.is_finite() && ft.norm() < fz.norm() {
                z = trial;
                fz = ft;
                accepted = true;
                break;
            }
            step = (0.5 * step.0, 0.5 * step.1);
        }
        if !accepted {
            break;
        }
        if step.0.abs().max(step.1.abs()) < 1e-15 * (1.0 + z.x.abs().max(z.xi.abs())) {
            break;
        }
    }
    Ok((z, fz))
}

/// Witnesses of both signs of a real-valued function on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignWitnesses {
    pub positive: Option<(PhaseSpacePoint, f64)>,
    pub negative: Option<(PhaseSpacePoint, f64)>,
}

impl SignWitnesses {
    /// (z₊, z₋) when both signs were observed.
    pub fn both(&self) -> Option<(PhaseSpacePoint, PhaseSpacePoint)> {
        Some((self.positive?.0, self.negative?.0))
    }
}

/// Records the largest and the smallest value; a witness is kept only when
/// its value has the corresponding strict sign.
pub fn sign_change_scan<F>(eval: F, grid: &GridSpec) -> Result<SignWitnesses>
where
    F: Fn(PhaseSpacePoint) -> Result<f64> + Sync,
{
    grid.validate()?;
    let values = evaluate_grid(&|z| eval(z).map(|v| Complex64::new(v, 0.0)), grid)?;
    let mut hi: Option<(PhaseSpacePoint, f64)> = None;
    let mut lo: Option<(PhaseSpacePoint, f64)> = None;
    for (k, v) in values.iter().enumerate() {
        let p = grid.point(k % grid.nx, k / grid.nx);
        if hi.is_none_or(|(_, h)| v.re > h) {
            hi = Some((p, v.re));
        }
        if lo.is_none_or(|(_, l)| v.re < l) {
            lo = Some((p, v.re));
        }
    }
    Ok(SignWitnesses { positive: hi.filter(|w| w.1 > 0.0), negative: lo.filter(|w| w.1 < 0.0) })
}
