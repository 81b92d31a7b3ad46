//! Quadrature ground truth for A, W, V, the Bargmann transform and the
//! Fourier transform.
//!
//! Every transform is an integral of a product of shifted, dilated and
//! possibly conjugated factors against a carrier e^{−2πiνt}. The integral
//! is split into a core interval, where the factors live, and two tails
//! integrated on geometrically growing panels until the declared decay
//! bounds of the factors push the remainder below the budget.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase_space::{FunctionSpec, PhaseSpacePoint};
use crate::quad::{integrate_oscillatory, DEFAULT_MAX_PANELS};
use crate::TAU;

pub use crate::phase_space::GridSpec;

/// Decay of a function outside its support hint, in terms of the distance
/// d to the hint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// Identically zero outside the hint.
    Compact,
    /// |f| ≤ scale · e^{−rate·d}.
    Exponential { rate: f64, scale: f64 },
    /// |f| ≤ scale · d^{−power}.
    Algebraic { power: f64, scale: f64 },
}

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A function known through an evaluator together with the decay data
/// that fixes the truncation of every integral it enters.
///
/// The represented function is e^{2πi·modulation·t} · evaluator(t); keeping
/// the carrier separate lets the integrator treat it exactly.
#[derive(Clone)]
pub struct SampledFunction {
    evaluator: Evaluator,
    support: (f64, f64),
    tail: Tail,
    sup: f64,
    breakpoints: Vec<f64>,
    modulation: f64,
}

impl std::fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledFunction")
            .field("support", &self.support)
            .field("tail", &self.tail)
            .field("sup", &self.sup)
            .field("breakpoints", &self.breakpoints.len())
            .field("modulation", &self.modulation)
            .finish()
    }
}

impl SampledFunction {
    pub fn new<F>(f: F, support: (f64, f64), tail: Tail) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self::from_arc(Arc::new(f), support, tail)
    }

    /// Exponentially decaying function: |f(t)| ≤ scale · e^{−decay_rate·d}
    /// at distance d outside `support`.
    pub fn with_decay<F>(f: F, support: (f64, f64), decay_rate: f64, scale: f64) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self::new(f, support, Tail::Exponential { rate: decay_rate, scale }).with_sup(scale)
    }

    pub(crate) fn from_arc(evaluator: Evaluator, support: (f64, f64), tail: Tail) -> Self {
        let sup = match tail {
            Tail::Compact => 0.0,
            Tail::Exponential { scale, .. } | Tail::Algebraic { scale, .. } => scale,
        };
        Self { evaluator, support, tail, sup, breakpoints: Vec::new(), modulation: 0.0 }
    }

    /// Global bound on |f|.
    pub fn with_sup(mut self, sup: f64) -> Self {
        self.sup = sup;
        self
    }

    /// Points where f jumps or has a kink.
    pub fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.breakpoints = breakpoints;
        self
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let v = (self.evaluator)(t);
        if self.modulation == 0.0 {
            v
        } else {
            v * Complex64::from_polar(1.0, TAU * self.modulation * t)
        }
    }

    /// The phase-space shift π(w)f(t) = e^{2πiξt} f(t − x) with w = (x, ξ).
    pub fn shifted(&self, w: PhaseSpacePoint) -> Self {
        let inner = self.evaluator.clone();
        let phase = Complex64::from_polar(1.0, -TAU * self.modulation * w.x);
        let a = w.x;
        Self {
            evaluator: Arc::new(move |t| phase * inner(t - a)),
            support: (self.support.0 + a, self.support.1 + a),
            tail: self.tail,
            sup: self.sup,
            breakpoints: self.breakpoints.iter().map(|b| b + a).collect(),
            modulation: self.modulation + w.xi,
        }
    }

    /// Pointwise sum; the result keeps the weaker of the two tails.
    pub fn sum(&self, other: &Self, weight: Complex64) -> Result<Self> {
        if self.modulation != other.modulation {
            return Err(Error::Invalid("sum of differently modulated functions".into()));
        }
        let (fa, fb) = (self.evaluator.clone(), other.evaluator.clone());
        let support = (self.support.0.min(other.support.0), self.support.1.max(other.support.1));
        let tail = weaker_tail(self.tail, other.tail, weight.norm());
        let mut breakpoints = self.breakpoints.clone();
        breakpoints.extend(&other.breakpoints);
        Ok(Self {
            evaluator: Arc::new(move |t| fa(t) + weight * fb(t)),
            support,
            tail,
            sup: self.sup + weight.norm() * other.sup,
            breakpoints,
            modulation: self.modulation,
        })
    }
}

fn weaker_tail(a: Tail, b: Tail, wb: f64) -> Tail {
    use Tail::*;
    match (a, b) {
        (Compact, Compact) => Compact,
        (Compact, Exponential { rate, scale }) => Exponential { rate, scale: wb * scale },
        (Compact, Algebraic { power, scale }) => Algebraic { power, scale: wb * scale },
        (t, Compact) => t,
        (Exponential { rate: r1, scale: s1 }, Exponential { rate: r2, scale: s2 }) => {
            Exponential { rate: r1.min(r2), scale: s1 + wb * s2 }
        }
        (Algebraic { power: p1, scale: s1 }, Algebraic { power: p2, scale: s2 }) => {
            Algebraic { power: p1.min(p2), scale: s1 + wb * s2 }
        }
        // An exponential tail is bounded by an algebraic one with the same
        // power once d ≥ power/rate; the sum uses that coarse bound.
        (Exponential { rate, scale: se }, Algebraic { power, scale: sa })
        | (Algebraic { power, scale: sa }, Exponential { rate, scale: se }) => {
            let c = se * (power / (rate * std::f64::consts::E)).powf(power);
            Algebraic { power, scale: c + wb.max(1.0) * sa }
        }
    }
}

/// One factor F(s·t + c) (or its conjugate) of a product integrand.
#[derive(Clone, Copy)]
pub struct Factor<'a> {
    pub func: &'a SampledFunction,
    pub scale: f64,
    pub shift: f64,
    pub conjugate: bool,
}

impl<'a> Factor<'a> {
    pub fn new(func: &'a SampledFunction, scale: f64, shift: f64, conjugate: bool) -> Self {
        Self { func, scale, shift, conjugate }
    }

    fn preimage(&self, lo: f64, hi: f64) -> (f64, f64) {
        let p = (lo - self.shift) / self.scale;
        let q = (hi - self.shift) / self.scale;
        (p.min(q), p.max(q))
    }

    fn value(&self, t: f64) -> Complex64 {
        let v = (self.func.evaluator)(self.scale * t + self.shift);
        if self.conjugate {
            v.conj()
        } else {
            v
        }
    }

    // Bound on |F| at distance d ≥ 0 from the support hint.
    fn bound(&self, d: f64) -> f64 {
        match self.func.tail {
            Tail::Compact => 0.0,
            Tail::Exponential { rate, scale } => scale * (-rate * d).exp(),
            Tail::Algebraic { power, scale } => {
                if d <= 0.0 {
                    self.func.sup
                } else {
                    (scale * d.powf(-power)).min(self.func.sup)
                }
            }
        }
    }
}

/// ∫ Π F_i(s_i t + c_i) e^{−2πiνt} dt to absolute tolerance `tol`.
pub fn integrate_product(factors: &[Factor<'_>], nu: f64, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    if factors.iter().any(|f| f.scale == 0.0 || !f.scale.is_finite() || !f.shift.is_finite()) {
        return Err(Error::Invalid("factor scale must be nonzero and finite".into()));
    }
    // Carriers of the factors fold into the integration frequency.
    let mut nu_eff = nu;
    let mut phase = 0.0;
    for f in factors {
        let m = if f.conjugate { -f.func.modulation } else { f.func.modulation };
        nu_eff -= m * f.scale;
        phase += m * f.shift;
    }
    let prefactor = Complex64::from_polar(1.0, TAU * phase);

    let integrand = |t: f64| -> Complex64 { factors.iter().map(|f| f.value(t)).product() };
    let mut breaks = Vec::new();
    for f in factors {
        breaks.extend(f.func.breakpoints.iter().map(|b| (b - f.shift) / f.scale));
    }

    let checked = |v: Complex64| -> Result<Complex64> {
        if v.is_finite() {
            Ok(prefactor * v)
        } else {
            Err(Error::Invalid("integrand evaluated to a non-finite value".into()))
        }
    };

    let compact: Vec<(f64, f64)> = factors
        .iter()
        .filter(|f| f.func.tail == Tail::Compact)
        .map(|f| f.preimage(f.func.support.0, f.func.support.1))
        .collect();
    if !compact.is_empty() {
        let lo = compact.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let hi = compact.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        if hi <= lo {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let r = integrate_oscillatory(integrand, nu_eff, lo, hi, &breaks, tol, DEFAULT_MAX_PANELS)?;
        return checked(r.value);
    }

    let pre: Vec<(f64, f64)> = factors.iter().map(|f| f.preimage(f.func.support.0, f.func.support.1)).collect();
    let core_lo = pre.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let core_hi = pre.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let core = integrate_oscillatory(&integrand, nu_eff, core_lo, core_hi, &breaks, 0.5 * tol, DEFAULT_MAX_PANELS)?;
    let mut total = core.value;

    // Distance of factor i's argument from its hint is at least |s_i|·τ at
    // distance τ beyond the core.
    let tail_bound = |tau: f64| -> f64 { factors.iter().map(|f| f.bound(f.scale.abs() * tau)).product() };
    let exp_rate: f64 = factors
        .iter()
        .map(|f| match f.func.tail {
            Tail::Exponential { rate, .. } => rate * f.scale.abs(),
            _ => 0.0,
        })
        .sum();
    let alg_power: f64 = factors
        .iter()
        .map(|f| match f.func.tail {
            Tail::Algebraic { power, .. } => power,
            _ => 0.0,
        })
        .sum();
    let alg_const: f64 = factors
        .iter()
        .map(|f| match f.func.tail {
            Tail::Algebraic { power, scale } => scale * f.scale.abs().powf(-power),
            Tail::Exponential { scale, .. } => scale,
            Tail::Compact => 0.0,
        })
        .product();
    let remainder = |d: f64| -> f64 {
        if exp_rate > 0.0 {
            tail_bound(d) / exp_rate
        } else if alg_power > 1.0 {
            alg_const * d.powf(1.0 - alg_power) / (alg_power - 1.0)
        } else {
            f64::INFINITY
        }
    };
    if exp_rate == 0.0 && alg_power <= 1.0 {
        return Err(Error::TruncationBudget {
            tol,
            reason: format!("product of tails decays like |t|^-{alg_power}, not integrable"),
        });
    }
    let step0 = if exp_rate > 0.0 { (1.0 / exp_rate).max(1.0) } else { 1.0 };
    for side in [1.0, -1.0] {
        let edge = if side > 0.0 { core_hi } else { core_lo };
        let mut d = 0.0;
        let mut width = step0;
        let mut m = 0;
        loop {
            if remainder(d) < 0.05 * tol {
                break;
            }
            if m >= 80 {
                return Err(Error::TruncationBudget { tol, reason: format!("tail bound still {:e} at distance {d:e}", remainder(d)) });
            }
            let panel_tol = 0.2 * tol * 0.5f64.powi(m + 1);
            let (a, b) = if side > 0.0 { (edge + d, edge + d + width) } else { (edge - d - width, edge - d) };
            let r = integrate_oscillatory(&integrand, nu_eff, a, b, &[], panel_tol, DEFAULT_MAX_PANELS)?;
            total += r.value;
            d += width;
            width *= 2.0;
            m += 1;
        }
    }
    checked(total)
}

/// A(f,g)(x,ξ) = ∫ f(t + x/2) conj(g(t − x/2)) e^{−2πiξt} dt.
pub fn oracle_ambiguity(f: &SampledFunction, g: &SampledFunction, z: PhaseSpacePoint, tol: f64) -> Result<Complex64> {
    integrate_product(&[Factor::new(f, 1.0, 0.5 * z.x, false), Factor::new(g, 1.0, -0.5 * z.x, true)], z.xi, tol)
}

/// W(f,g)(x,ξ) = ∫ f(x + t/2) conj(g(x − t/2)) e^{−2πiξt} dt.
pub fn oracle_wigner(f: &SampledFunction, g: &SampledFunction, z: PhaseSpacePoint, tol: f64) -> Result<Complex64> {
    integrate_product(&[Factor::new(f, 0.5, z.x, false), Factor::new(g, -0.5, z.x, true)], z.xi, tol)
}

/// V_g f(x,ξ) = ∫ f(t) conj(g(t − x)) e^{−2πiξt} dt.
pub fn oracle_stft(f: &SampledFunction, g: &SampledFunction, z: PhaseSpacePoint, tol: f64) -> Result<Complex64> {
    integrate_product(&[Factor::new(f, 1.0, 0.0, false), Factor::new(g, 1.0, -z.x, true)], z.xi, tol)
}

/// f̂(ξ) = ∫ f(t) e^{−2πiξt} dt.
pub fn oracle_fourier(f: &SampledFunction, xi: f64, tol: f64) -> Result<Complex64> {
    integrate_product(&[Factor::new(f, 1.0, 0.0, false)], xi, tol)
}

/// Bf(z) = 2^{1/4} e^{−πz²/2} ∫ f(t) e^{−πt²} e^{2πtz} dt.
pub fn oracle_bargmann(f: &SampledFunction, z: Complex64, tol: f64) -> Result<Complex64> {
    // −πt² + 2πtz = −π(t − a)² + πa² + 2πibt with z = a + ib.
    let (a, b) = (z.re, z.im);
    let window = gaussian_window();
    let pre = 2f64.powf(0.25) * (-PI * z * z / 2.0 + PI * a * a).exp();
    let scale = pre.norm().max(1e-300);
    let v = integrate_product(&[Factor::new(f, 1.0, 0.0, false), Factor::new(&window, 1.0, -a, false)], -b, tol / scale)?;
    Ok(pre * v)
}

/// Re-evaluates a real quantity with tolerances shrinking by 10⁻³ until
/// its modulus exceeds twice the tolerance, so the sign is settled by the
/// error bound. Stops at `floor`, returning the last value; quadrature
/// failures at a tightened tolerance also end the loop.
pub fn resolve_sign<F>(eval: F, tol: f64, floor: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut tol = tol;
    let mut v = eval(tol)?;
    while v.abs() <= 2.0 * tol && tol * 1e-3 >= floor {
        tol *= 1e-3;
        match eval(tol) {
            Ok(next) => v = next,
            Err(_) => break,
        }
    }
    Ok(v)
}

fn gaussian_window() -> SampledFunction {
    let t0 = 1.0 / PI;
    SampledFunction::new(|t: f64| Complex64::new((-PI * t * t).exp(), 0.0), (-t0, t0), Tail::Exponential { rate: 1.0, scale: 1.0 })
        .with_sup(1.0)
}

/// The Fourier transform of `spec` as a function, each value computed by
/// [`oracle_fourier`] to `inner_tol`. Failed inner integrals surface as
/// non-finite values, which [`integrate_product`] reports as errors.
pub fn fourier_sampled(spec: &FunctionSpec, inner_tol: f64) -> Result<SampledFunction> {
    let f = spec.sampled()?;
    let (support, tail, sup) = spec.fourier_tail()?;
    let eval = move |w: f64| oracle_fourier(&f, w, inner_tol).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    Ok(SampledFunction::new(eval, support, tail).with_sup(sup))
}
