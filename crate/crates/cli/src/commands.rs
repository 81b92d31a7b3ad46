//! The single-shot subcommands.

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tfzero::hurwitz::{build_an, max_real_root_part, routh_hurwitz, IntPolynomial, StabilityReport};
use tfzero::kernels::{FormulaId, KernelPair};
use tfzero::oracle::{oracle_ambiguity, oracle_stft, oracle_wigner, SampledFunction};
use tfzero::phase_space::GridSpec;
use tfzero::polyanalytic::{
    balk_degree_check, guaranteed_zero_search, polyanalytic_bargmann, polyanalytic_zero_search, ComplexPolynomial,
    PolyanalyticPolynomial,
};
use tfzero::scan::{scan, try_scan, ZeroReport};
use tfzero::step::{counterexample_verify, stft_box_closed_form, Alpha, AlphaStepSpec, StepMode};
use tfzero::{FunctionSpec, PhaseSpacePoint, TransformKind};

use crate::output::{csv_rows, emit, pgm, sidecar, to_json, write_file};
use crate::CliError;

/// Values on the grid in [`GridSpec::point`] order (`i * nxi + j`).
pub fn grid_values<F>(grid: &GridSpec, eval: F) -> Vec<Complex64>
where
    F: Fn(PhaseSpacePoint) -> Complex64 + Sync,
{
    (0..grid.nx * grid.nxi).into_par_iter().map(|k| eval(grid.point(k / grid.nxi, k % grid.nxi))).collect()
}

pub fn write_heatmap(path: &Path, grid: &GridSpec, values: &[Complex64]) -> Result<(), CliError> {
    let moduli: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    write_file(path, &pgm(grid, &moduli))
}

fn finish(out: Option<&Path>, json: &str, log: &[String]) -> Result<(), CliError> {
    emit(out, json)?;
    if let Some(p) = out {
        sidecar(p, log)?;
    }
    Ok(())
}

pub fn kernel_from(pair: FormulaId, params: Option<&serde_json::Value>) -> Result<KernelPair, CliError> {
    let kernel = match params {
        None => KernelPair::reference(pair),
        Some(serde_json::Value::Object(map)) => {
            let mut map = map.clone();
            map.insert("formula".into(), serde_json::to_value(pair).map_err(|e| CliError::Usage(e.to_string()))?);
            serde_json::from_value(serde_json::Value::Object(map))
                .map_err(|e| CliError::Usage(format!("--params: {e}")))?
        }
        Some(_) => return Err(CliError::Usage("--params must be a JSON object".into())),
    };
    kernel.validate().map_err(|e| CliError::Usage(format!("--params: {e}")))?;
    Ok(kernel)
}

pub fn eval(
    pair: FormulaId,
    params: Option<&serde_json::Value>,
    grid: Option<&GridSpec>,
    point: Option<(f64, f64)>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let kernel = kernel_from(pair, params)?;
    let rows: Vec<(f64, f64, Complex64)> = match (grid, point) {
        (_, Some((x, xi))) => {
            let z = PhaseSpacePoint::new(x, xi).map_err(|e| CliError::Usage(format!("--point: {e}")))?;
            vec![(x, xi, kernel.eval(z)?)]
        }
        (Some(g), None) => {
            let values = grid_values(g, |z| kernel.eval(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN)));
            (0..g.nx * g.nxi)
                .map(|k| {
                    let z = g.point(k / g.nxi, k % g.nxi);
                    (z.x, z.xi, values[k])
                })
                .collect()
        }
        (None, None) => return Err(CliError::Usage("eval needs --grid or --point".into())),
    };
    finish(out, &csv_rows(&rows)?, &[format!("eval {:?}: {} rows", pair, rows.len())])
}

/// A transform of an explicit pair, evaluated by the quadrature oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleTarget {
    pub transform: TransformKind,
    pub f: FunctionSpec,
    pub g: FunctionSpec,
    #[serde(default = "default_oracle_tol")]
    pub tol: f64,
}

fn default_oracle_tol() -> f64 {
    1e-10
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScanTarget {
    Kernel(KernelPair),
    Oracle(OracleTarget),
}

impl ScanTarget {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--spec: {e}")))?;
        let target = if value.get("formula").is_some() {
            ScanTarget::Kernel(serde_json::from_value(value).map_err(|e| CliError::Usage(format!("--spec: {e}")))?)
        } else {
            ScanTarget::Oracle(serde_json::from_value(value).map_err(|e| CliError::Usage(format!("--spec: {e}")))?)
        };
        match &target {
            ScanTarget::Kernel(k) => k.validate(),
            ScanTarget::Oracle(o) => o.f.validate().and(o.g.validate()),
        }
        .map_err(|e| CliError::Usage(format!("--spec: {e}")))?;
        Ok(target)
    }
}

#[derive(Debug, Serialize)]
struct ScanOutput<'a> {
    target: &'a ScanTarget,
    report: &'a ZeroReport,
}

fn oracle_eval<'a>(
    kind: TransformKind,
    f: &'a SampledFunction,
    g: &'a SampledFunction,
    tol: f64,
) -> impl Fn(PhaseSpacePoint) -> tfzero::Result<Complex64> + Sync + 'a {
    move |z| match kind {
        TransformKind::Wigner => oracle_wigner(f, g, z, tol),
        TransformKind::Ambiguity => oracle_ambiguity(f, g, z, tol),
        TransformKind::Stft => oracle_stft(f, g, z, tol),
    }
}

/// Scans a target; kernels with an analytic modulus bound get tagged.
pub fn scan_target(target: &ScanTarget, grid: &GridSpec, zero_tol: f64) -> Result<(ZeroReport, Vec<Complex64>), CliError> {
    match target {
        ScanTarget::Kernel(k) => {
            let eval = |z| k.eval(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            let mut report = scan(eval, grid, zero_tol)?;
            if k.formula_id() != FormulaId::SymExp {
                report = report.with_analytic_bound(|z| k.analytic_modulus(z).unwrap_or(0.0));
            }
            Ok((report, grid_values(grid, eval)))
        }
        ScanTarget::Oracle(o) => {
            let (f, g) = (o.f.sampled()?, o.g.sampled()?);
            let eval = oracle_eval(o.transform, &f, &g, o.tol);
            let report = try_scan(&eval, grid, zero_tol)?;
            let values = grid_values(grid, |z| eval(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN)));
            Ok((report, values))
        }
    }
}

pub fn scan_cmd(
    target: &ScanTarget,
    grid: &GridSpec,
    zero_tol: f64,
    out: Option<&Path>,
    heatmap: Option<&Path>,
) -> Result<(), CliError> {
    let (report, values) = scan_target(target, grid, zero_tol)?;
    if let Some(h) = heatmap {
        write_heatmap(h, grid, &values)?;
    }
    let json = to_json(&ScanOutput { target, report: &report })?;
    finish(out, &json, &[format!("scan: {} zeros, min modulus {:e}", report.zeros.len(), report.min_modulus)])
}

#[derive(Debug, Serialize)]
pub struct HurwitzOutput {
    pub polynomial: IntPolynomial,
    pub report: StabilityReport,
    /// Largest real part among floating-point roots, when they converge.
    pub max_real_root_part: Option<f64>,
}

pub fn hurwitz_report(p: IntPolynomial) -> Result<HurwitzOutput, CliError> {
    if p.coeffs.len() < 2 {
        return Err(CliError::Usage("--coeffs needs a polynomial of degree at least 1".into()));
    }
    let report = routh_hurwitz(&p).map_err(|e| CliError::Usage(e.to_string()))?;
    let max_re = max_real_root_part(&p).ok();
    Ok(HurwitzOutput { polynomial: p, report, max_real_root_part: max_re })
}

pub fn hurwitz(an: Option<u32>, coeffs: Option<&[i64]>, out: Option<&Path>) -> Result<(), CliError> {
    let p = match (an, coeffs) {
        (Some(n), None) => build_an(n).map_err(|e| CliError::Usage(format!("--An: {e}")))?,
        (None, Some(c)) => IntPolynomial::from_i64(c),
        _ => return Err(CliError::Usage("give exactly one of --An and --coeffs".into())),
    };
    let result = hurwitz_report(p)?;
    finish(out, &to_json(&result)?, &[format!("hurwitz: is_hurwitz = {}", result.report.is_hurwitz)])
}

#[derive(Debug, Serialize)]
pub struct PolybOutput {
    pub p: ComplexPolynomial,
    pub q: ComplexPolynomial,
    /// c[j][k] multiplies z^j z̄^k.
    pub coefficients: PolyanalyticPolynomial,
    pub deg_z: Option<usize>,
    pub deg_conj: Option<usize>,
    pub balk_guarantees_zero: bool,
    pub report: Option<ZeroReport>,
}

pub fn polyb(
    p: &[Complex64],
    q: &[Complex64],
    do_scan: bool,
    grid: Option<&GridSpec>,
    zero_tol: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (pp, qq) = (ComplexPolynomial::new(p.to_vec()), ComplexPolynomial::new(q.to_vec()));
    let poly = polyanalytic_bargmann(&pp, &qq).map_err(|e| CliError::Usage(format!("--P/--Q: {e}")))?;
    let report = if do_scan {
        Some(match grid {
            Some(g) => polyanalytic_zero_search(&poly, g, zero_tol)?,
            None => guaranteed_zero_search(&poly, 121, zero_tol)?,
        })
    } else {
        None
    };
    let result = PolybOutput {
        deg_z: poly.deg_z(),
        deg_conj: poly.deg_conj(),
        balk_guarantees_zero: balk_degree_check(&poly),
        p: pp,
        q: qq,
        coefficients: poly,
        report,
    };
    finish(out, &to_json(&result)?, &["polyb".to_string()])
}

#[derive(Debug, Serialize)]
pub struct StepfnOutput {
    pub mode: StepMode,
    pub alpha: Alpha,
    pub report: ZeroReport,
}

pub fn stepfn(
    mode: StepMode,
    alpha: &str,
    grid: &GridSpec,
    zero_tol: f64,
    out: Option<&Path>,
    heatmap: Option<&Path>,
) -> Result<(), CliError> {
    let alpha = Alpha::parse(alpha).map_err(|e| CliError::Usage(format!("--alpha: {e}")))?;
    let report = counterexample_verify(mode, &alpha, grid, zero_tol)?;
    if let Some(h) = heatmap {
        let spec = AlphaStepSpec::fixture(mode, alpha.clone())?;
        let values = grid_values(grid, |z| {
            stft_box_closed_form(&spec, z.x, z.xi).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        });
        write_heatmap(h, grid, &values)?;
    }
    let line = format!("stepfn {mode:?}: {} zeros", report.zeros.len());
    finish(out, &to_json(&StepfnOutput { mode, alpha, report })?, &[line])
}
