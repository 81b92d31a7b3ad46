//! Browser demo: three phase-space heatmaps rendered to RGBA buffers.
//!
//! Colour encodes the value by domain colouring: hue follows the phase,
//! brightness the log-modulus over the run's range. Zeros show up as
//! dark points where every hue meets.

use std::f64::consts::PI;

use tfzero::kernels::{FormulaId, KernelPair};
use tfzero::phase_space::GridSpec;
use tfzero::polyanalytic::{degree1_residual, degree1_roots};
use tfzero::step::{
    find_nonmonotone_triple, nonmonotone_zero, stft_box_closed_form, Alpha, AlphaStepSpec, StepMode,
};
use tfzero::{Complex64, PhaseSpacePoint};
use wasm_bindgen::prelude::*;

fn hsv(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h6 = h.rem_euclid(1.0) * 6.0;
    let f = h6 - h6.floor();
    let (p, q, t) = (v * (1.0 - s), v * (1.0 - s * f), v * (1.0 - s * (1.0 - f)));
    let (r, g, b) = match h6 as u32 {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    [(255.0 * r).round() as u8, (255.0 * g).round() as u8, (255.0 * b).round() as u8]
}

/// RGBA pixels, row 0 at the largest ξ; `values` in `i * nxi + j` order.
pub fn domain_colour(grid: &GridSpec, values: &[Complex64]) -> Vec<u8> {
    let logs: Vec<f64> = values.iter().map(|v| v.norm().ln()).collect();
    let finite = logs.iter().copied().filter(|l| l.is_finite());
    let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| (lo.min(l), hi.max(l)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut out = Vec::with_capacity(4 * values.len());
    for j in (0..grid.nxi).rev() {
        for i in 0..grid.nx {
            let k = i * grid.nxi + j;
            let l = logs[k];
            let px = if l.is_nan() {
                [128, 128, 128]
            } else if l == f64::NEG_INFINITY {
                [0, 0, 0]
            } else {
                let level = (l - lo) / span;
                hsv(values[k].arg() / (2.0 * PI), 0.85, 0.15 + 0.85 * level.sqrt())
            };
            out.extend_from_slice(&px);
            out.push(255);
        }
    }
    out
}

fn grid(x0: f64, x1: f64, xi0: f64, xi1: f64, nx: usize, nxi: usize) -> Result<GridSpec, String> {
    if nx * nxi > 1 << 20 {
        return Err("at most 2^20 pixels".into());
    }
    GridSpec::new((x0, x1), (xi0, xi1), nx, nxi).map_err(|e| e.to_string())
}

fn sample<F: Fn(PhaseSpacePoint) -> Complex64>(g: &GridSpec, f: F) -> Vec<Complex64> {
    (0..g.nx * g.nxi).map(|k| f(g.point(k / g.nxi, k % g.nxi))).collect()
}

/// Ambiguity function of a closed-form kernel. `params` is a JSON object
/// of the kernel's parameters, or empty for the reference choice.
pub fn render_kernel(formula: &str, params: &str, g: &GridSpec) -> Result<Vec<u8>, String> {
    let id: FormulaId = serde_json::from_value(serde_json::Value::String(formula.into()))
        .map_err(|_| format!("unknown kernel '{formula}'"))?;
    let pair = if params.trim().is_empty() {
        KernelPair::reference(id)
    } else {
        let mut obj: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(params).map_err(|e| format!("params: {e}"))?;
        obj.insert("formula".into(), formula.into());
        serde_json::from_value(obj.into()).map_err(|e| format!("params: {e}"))?
    };
    pair.validate().map_err(|e| e.to_string())?;
    let nan = Complex64::new(f64::NAN, f64::NAN);
    Ok(domain_colour(g, &sample(g, |z| pair.eval(z).unwrap_or(nan))))
}

/// π(z + a)(z̄ + b̄) − 1 over the box, z = x + iξ.
pub fn render_degree1(a: Complex64, b: Complex64, g: &GridSpec) -> Vec<u8> {
    domain_colour(g, &sample(g, |z| degree1_residual(a, b, Complex64::new(z.x, z.xi))))
}

fn step_spec(mode: &str, alpha: &str) -> Result<AlphaStepSpec, String> {
    let mode = match mode {
        "monotone" => StepMode::Monotone,
        "lp" => StepMode::Lp,
        other => return Err(format!("unknown mode '{other}'")),
    };
    let alpha = Alpha::parse(alpha).map_err(|e| e.to_string())?;
    AlphaStepSpec::fixture(mode, alpha).map_err(|e| e.to_string())
}

/// Box-window STFT of the α-step fixture.
pub fn render_step(mode: &str, alpha: &str, g: &GridSpec) -> Result<Vec<u8>, String> {
    let spec = step_spec(mode, alpha)?;
    let nan = Complex64::new(f64::NAN, f64::NAN);
    Ok(domain_colour(g, &sample(g, |z| stft_box_closed_form(&spec, z.x, z.xi).unwrap_or(nan))))
}

/// [x, ξ, |V|] of the zero forced by a non-monotone triple, or empty.
pub fn step_zero(mode: &str, alpha: &str) -> Result<Vec<f64>, String> {
    let spec = step_spec(mode, alpha)?;
    let Some(triple) = find_nonmonotone_triple(&spec, 64).map_err(|e| e.to_string())? else {
        return Ok(Vec::new());
    };
    let z = nonmonotone_zero(&spec, triple, 1e-12).map_err(|e| e.to_string())?;
    Ok(vec![z.point.x, z.point.xi, z.residual_modulus])
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn kernel_heatmap(
    formula: &str,
    params: &str,
    x0: f64,
    x1: f64,
    xi0: f64,
    xi1: f64,
    nx: usize,
    nxi: usize,
) -> Result<Vec<u8>, JsValue> {
    let g = grid(x0, x1, xi0, xi1, nx, nxi)?;
    Ok(render_kernel(formula, params, &g)?)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn degree1_heatmap(a_re: f64, a_im: f64, b_re: f64, b_im: f64, radius: f64, n: usize) -> Result<Vec<u8>, JsValue> {
    let g = grid(-radius, radius, -radius, radius, n, n)?;
    Ok(render_degree1(Complex64::new(a_re, a_im), Complex64::new(b_re, b_im), &g))
}

/// [re₁, im₁, re₂, im₂].
#[wasm_bindgen]
pub fn degree1_zeros(a_re: f64, a_im: f64, b_re: f64, b_im: f64) -> Vec<f64> {
    let (z1, z2) = degree1_roots(Complex64::new(a_re, a_im), Complex64::new(b_re, b_im));
    vec![z1.re, z1.im, z2.re, z2.im]
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn step_heatmap(
    mode: &str,
    alpha: &str,
    x0: f64,
    x1: f64,
    xi0: f64,
    xi1: f64,
    nx: usize,
    nxi: usize,
) -> Result<Vec<u8>, JsValue> {
    let g = grid(x0, x1, xi0, xi1, nx, nxi)?;
    Ok(render_step(mode, alpha, &g)?)
}

#[wasm_bindgen]
pub fn step_forced_zero(mode: &str, alpha: &str) -> Result<Vec<f64>, JsValue> {
    Ok(step_zero(mode, alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_buffer_has_rgba_size() {
        let g = grid(-2.0, 2.0, -1.0, 1.0, 30, 20).unwrap();
        let px = render_kernel("gauss", "", &g).unwrap();
        assert_eq!(px.len(), 30 * 20 * 4);
        assert!(px.chunks(4).all(|p| p[3] == 255));
        assert!(render_kernel("one_sided", r#"{"a": 1.0, "b": 3.0}"#, &g).is_ok());
        assert!(render_kernel("nope", "", &g).is_err());
        assert!(render_kernel("one_sided", r#"{"a": -1.0, "b": 3.0}"#, &g).is_err());
    }

    #[test]
    fn degree1_zeros_are_dark() {
        let (a, b) = (Complex64::new(0.2, -0.1), Complex64::new(-0.4, 0.3));
        let z = degree1_zeros(a.re, a.im, b.re, b.im);
        for k in 0..2 {
            let r = degree1_residual(a, b, Complex64::new(z[2 * k], z[2 * k + 1]));
            assert!(r.norm() < 1e-12);
        }
        // A pixel centred on a root is the darkest of the image.
        let n = 101;
        let radius = 2.0;
        let (cx, cy) = (z[0], z[1]);
        let g = grid(cx - radius, cx + radius, cy - radius, cy + radius, n, n).unwrap();
        let px = render_degree1(a, b, &g);
        let centre = (50 * n + 50) * 4;
        let bright = |k: usize| px[k] as u32 + px[k + 1] as u32 + px[k + 2] as u32;
        assert!((0..n * n).all(|p| bright(centre) <= bright(4 * p)));
    }

    #[test]
    fn step_modes() {
        let g = grid(0.0, 3.0, -5.0, 5.0, 40, 40).unwrap();
        assert_eq!(render_step("monotone", "sqrt2/2", &g).unwrap().len(), 40 * 40 * 4);
        assert!(step_zero("monotone", "sqrt2/2").unwrap().is_empty());
        let z = step_zero("lp", "sqrt2/2").unwrap();
        assert!(z[2] < 1e-10);
        assert!(render_step("lp", "1/2", &g).is_err());
    }
}
