//! Adaptive quadrature for integrands of the form h(t) e^{−2πiνt} on a
//! finite interval.
//!
//! Panels that see less than a quarter period of the carrier use the
//! 21-point Gauss–Kronrod pair on the full integrand. Wider panels expand
//! h in Legendre polynomials on 24 Gauss nodes and integrate the carrier
//! exactly against each polynomial (a Filon-type rule), so the number of
//! panels does not grow with ν. Panels are bisected globally by largest
//! error estimate until the total estimate meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::TAU;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_063_515_741,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Number of Gauss–Legendre nodes of the Filon panel rule.
const FILON_NODES: usize = 24;

/// Default cap on the number of panels of one adaptive integration.
pub const DEFAULT_MAX_PANELS: usize = 40_000;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub panels: usize,
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

struct FilonTable {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // legendre[k][i] = P_k(nodes[i])
    legendre: Vec<Vec<f64>>,
}

fn filon_table() -> &'static FilonTable {
    static TABLE: OnceLock<FilonTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let (nodes, weights) = gauss_legendre(FILON_NODES);
        let mut legendre = vec![vec![0.0; FILON_NODES]; FILON_NODES];
        for (i, &s) in nodes.iter().enumerate() {
            let mut p0 = 1.0;
            let mut p1 = s;
            legendre[0][i] = 1.0;
            legendre[1][i] = s;
            for k in 2..FILON_NODES {
                let p2 = ((2 * k - 1) as f64 * s * p1 - (k - 1) as f64 * p0) / k as f64;
                legendre[k][i] = p2;
                p0 = p1;
                p1 = p2;
            }
        }
        FilonTable { nodes, weights, legendre }
    })
}

/// Spherical Bessel functions j_0(ω) … j_{n−1}(ω).
pub fn spherical_bessel_j(n: usize, omega: f64) -> Vec<f64> {
    let mut out = vec![0.0; n];
    if n == 0 {
        return out;
    }
    let w = omega.abs();
    if w < 1e-8 {
        out[0] = 1.0 - w * w / 6.0;
        if n > 1 {
            out[1] = w / 3.0;
        }
    } else if w >= n as f64 {
        out[0] = w.sin() / w;
        if n > 1 {
            out[1] = w.sin() / (w * w) - w.cos() / w;
        }
        for k in 1..n - 1 {
            out[k + 1] = (2 * k + 1) as f64 / w * out[k] - out[k - 1];
        }
    } else {
        // Miller's backward recurrence, normalised by Σ (2k+1) j_k² = 1.
        let start = n + w.ceil() as usize + 40;
        let mut hi = 0.0_f64;
        let mut cur = 1.0_f64;
        let mut buf = vec![0.0; n];
        let mut norm = 0.0_f64;
        for k in (1..=start).rev() {
            let lower = (2 * k + 1) as f64 / w * cur - hi;
            hi = cur;
            cur = lower;
            let idx = k - 1;
            norm += (2 * idx + 1) as f64 * cur * cur;
            if idx < n {
                buf[idx] = cur;
            }
            if cur.abs() > 1e100 {
                cur *= 1e-100;
                hi *= 1e-100;
                norm *= 1e-200;
                for v in buf.iter_mut() {
                    *v *= 1e-100;
                }
            }
        }
        let scale = 1.0 / norm.sqrt();
        let j0 = w.sin() / w;
        let sign = if (j0 >= 0.0) == (buf[0] >= 0.0) { 1.0 } else { -1.0 };
        if j0.abs() < 1e-3 && n > 1 {
            let j1 = w.sin() / (w * w) - w.cos() / w;
            let s1 = if (j1 >= 0.0) == (buf[1] >= 0.0) { 1.0 } else { -1.0 };
            for (o, b) in out.iter_mut().zip(&buf) {
                *o = s1 * scale * b;
            }
        } else {
            for (o, b) in out.iter_mut().zip(&buf) {
                *o = sign * scale * b;
            }
        }
    }
    if omega < 0.0 {
        for (k, v) in out.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err;
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

fn carrier(nu: f64, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -TAU * nu * t)
}

fn kronrod_panel<F: Fn(f64) -> Complex64>(f: &F, nu: f64, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let g = |t: f64| f(t) * carrier(nu, t);
    let fc = g(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_abs = fc.norm() * WGK[10];
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = g(center - dx);
        let f2 = g(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let h = half.abs();
    let err = rescale_error(((res_k - res_g) * h).norm(), res_abs * h, res_asc * h);
    (res_k * half, err)
}

fn filon_panel<F: Fn(f64) -> Complex64>(f: &F, nu: f64, a: f64, b: f64) -> (Complex64, f64) {
    let table = filon_table();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let values: Vec<Complex64> = table.nodes.iter().map(|&s| f(center + half * s)).collect();
    let omega = TAU * nu * half;
    let jk = spherical_bessel_j(FILON_NODES, omega);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coeffs = [Complex64::new(0.0, 0.0); FILON_NODES];
    let mut minus_i_pow = Complex64::new(1.0, 0.0);
    for k in 0..FILON_NODES {
        let mut ak = Complex64::new(0.0, 0.0);
        for i in 0..FILON_NODES {
            ak += values[i] * (table.weights[i] * table.legendre[k][i]);
        }
        ak *= (2 * k + 1) as f64 / 2.0;
        coeffs[k] = ak;
        sum += ak * minus_i_pow * (2.0 * jk[k]);
        minus_i_pow *= Complex64::new(0.0, -1.0);
    }
    let tail = coeffs[FILON_NODES - 1].norm() + coeffs[FILON_NODES - 2].norm();
    let value = sum * carrier(nu, center) * half;
    let err = (2.0 * half.abs() * tail).max(50.0 * f64::EPSILON * value.norm());
    (value, err)
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, nu: f64, a: f64, b: f64) -> (Complex64, f64) {
    if (nu * (b - a)).abs() <= 0.25 {
        kronrod_panel(f, nu, a, b)
    } else {
        filon_panel(f, nu, a, b)
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// ∫_lo^hi f(t) e^{−2πiνt} dt to absolute tolerance `tol`.
///
/// `breakpoints` inside (lo, hi) become fixed panel edges; use them for
/// jumps and kinks of f.
pub fn integrate_oscillatory<F>(
    f: F,
    nu: f64,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Invalid("integration limits must be finite".into()));
    }
    if hi <= lo {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error: 0.0, panels: 0 });
    }
    let mut edges: Vec<f64> = breakpoints.iter().copied().filter(|&p| p > lo && p < hi).collect();
    edges.push(lo);
    edges.push(hi);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    let mut finished = Vec::new();
    for w in edges.windows(2) {
        let (value, error) = panel(&f, nu, w[0], w[1]);
        total_err += error;
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }
    let mut panels = heap.len();
    let min_width = 1e-13 * (hi - lo).max(1.0);
    while total_err > tol {
        let Some(worst) = heap.pop() else { break };
        if worst.b - worst.a < min_width {
            finished.push(worst);
            continue;
        }
        if panels >= max_panels {
            return Err(Error::QuadratureBudget { tol, estimate: total_err, panels });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = panel(&f, nu, worst.a, mid);
        let (v2, e2) = panel(&f, nu, mid, worst.b);
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        panels += 1;
    }
    // Summing in position order makes the result independent of heap layout.
    let mut all: Vec<Panel> = heap.into_vec();
    all.extend(finished);
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = all.iter().map(|p| p.value).sum();
    let error = all.iter().map(|p| p.error).sum::<f64>();
    if error > tol {
        return Err(Error::QuadratureBudget { tol, estimate: error, panels });
    }
    Ok(QuadResult { value, error, panels })
}

/// ∫_lo^hi f(t) dt to absolute tolerance `tol`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, breakpoints: &[f64], tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_oscillatory(f, 0.0, lo, hi, breakpoints, tol, DEFAULT_MAX_PANELS)
}
