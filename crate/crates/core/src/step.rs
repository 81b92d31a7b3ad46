//! Step functions against the box window χ = 1_{[0,1]}.
//!
//! For f = Σ c_k 1_{[a_k, a_{k+1})} on (0,1) the transform is governed by
//! I(ξ) = Σ c_k (e^{2πi a_{k+1} ξ} − e^{2πi a_k ξ}) = 2πiξ f̂(−ξ).
//! Global step functions with jumps at a_{2k} = k and a_{2k+1} = k + α
//! reduce, window by window, to three-piece steps on (0,1).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{FunctionSpec, GridSpec, PhaseSpacePoint};
use crate::scan::{scan, Certificate, LocatedZero, ZeroReport};
use crate::TAU;

/// Largest denominator tried when deciding whether a double is rational.
pub const MAX_DENOMINATOR: u64 = 1_000_000;

/// A step function on (0,1): value `values[k]` on
/// [breakpoints[k], breakpoints[k+1]) with the last interval ending at 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOnUnit {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepOnUnit {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let s = Self { breakpoints, values };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() || self.breakpoints.len() != self.values.len() {
            return Err(Error::Domain("need one breakpoint per value".into()));
        }
        if self.breakpoints[0] != 0.0 {
            return Err(Error::Domain("the first breakpoint must be 0".into()));
        }
        let mut edges = self.breakpoints.clone();
        edges.push(1.0);
        if edges.iter().any(|b| !b.is_finite()) || edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("breakpoints must increase strictly inside [0, 1)".into()));
        }
        if self.values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Domain("step values must be positive".into()));
        }
        Ok(())
    }

    fn edges(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n = self.values.len();
        (0..n).map(move |k| {
            let hi = if k + 1 < n { self.breakpoints[k + 1] } else { 1.0 };
            (self.breakpoints[k], hi, self.values[k])
        })
    }

    /// The same function as a catalog entry, for the oracle.
    pub fn to_function_spec(&self) -> Result<FunctionSpec> {
        let mut b = self.breakpoints.clone();
        b.push(1.0);
        FunctionSpec::step(b, self.values.clone())
    }

    /// f̂(ξ) = ∫₀¹ f(t) e^{−2πiξt} dt.
    pub fn fourier(&self, xi: f64) -> Complex64 {
        self.edges().map(|(lo, hi, c)| c * segment(lo, hi, xi)).sum()
    }

    /// +1 for strictly increasing values, −1 for strictly decreasing, 0
    /// otherwise. A single value counts as decreasing.
    pub fn monotonicity(&self) -> i8 {
        let v = &self.values;
        if v.windows(2).all(|w| w[0] > w[1]) {
            -1
        } else if v.windows(2).all(|w| w[0] < w[1]) {
            1
        } else {
            0
        }
    }
}

/// ∫_lo^hi e^{−2πiξs} ds, written through sin so that small ξ is exact.
fn segment(lo: f64, hi: f64, xi: f64) -> Complex64 {
    let len = hi - lo;
    if len <= 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let arg = PI * xi * len;
    let sinc = if arg.abs() < 1e-8 { len * (1.0 - arg * arg / 6.0) } else { arg.sin() / (PI * xi) };
    Complex64::from_polar(sinc, -PI * xi * (lo + hi))
}

/// I(ξ) as the finite exponential sum; I(0) = 0 by construction.
pub fn box_fourier_i(s: &StepOnUnit, xi: f64) -> Complex64 {
    s.edges()
        .map(|(lo, hi, c)| c * (Complex64::from_polar(1.0, TAU * hi * xi) - Complex64::from_polar(1.0, TAU * lo * xi)))
        .sum()
}

/// Smallest-denominator fraction p/q (q ≤ `max_q`) among the continued
/// fraction convergents of `v` that reproduces `v` exactly in double
/// precision.
pub fn exact_rational(v: f64, max_q: u64) -> Option<(i64, u64)> {
    if !v.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > max_q as i128 {
            return None;
        }
        if (p2 as f64) / (q2 as f64) == v {
            return Some((p2 as i64, q2 as u64));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac == 0.0 {
            return None;
        }
        x = 1.0 / frac;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepDecision {
    pub zero_exists: bool,
    pub witness_xi: Option<f64>,
    /// |f̂(−ξ)| at the witness.
    pub witness_residual: Option<f64>,
}

/// For strictly monotone values, f̂ has a real zero iff every interior
/// breakpoint is rational; the witness is the product of their
/// denominators.
pub fn lemma_step_decision(s: &StepOnUnit) -> Result<StepDecision> {
    s.validate()?;
    if s.values.len() > 1 && s.monotonicity() == 0 {
        return Err(Error::NonMonotone);
    }
    let mut witness = 1.0_f64;
    for &b in &s.breakpoints[1..] {
        match exact_rational(b, MAX_DENOMINATOR) {
            Some((_, q)) => witness *= q as f64,
            None => return Ok(StepDecision { zero_exists: false, witness_xi: None, witness_residual: None }),
        }
    }
    let residual = s.fourier(-witness).norm();
    if residual >= 1e-12 {
        return Err(Error::NoConvergence { iterations: 0, residual });
    }
    Ok(StepDecision { zero_exists: true, witness_xi: Some(witness), witness_residual: Some(residual) })
}

/// Weights of the convexity argument. For decreasing values c₁ > … > c_n
/// they are (c_{k−1} − c_k)/c₁ for k = 2..n and c_n/c₁; for increasing
/// values the roles of the ends swap: c₁/c_n and (c_k − c_{k−1})/c_n.
pub fn convexity_weights(values: &[f64]) -> Result<Vec<f64>> {
    let n = values.len();
    if n == 0 {
        return Err(Error::Domain("empty step".into()));
    }
    let dec = values.windows(2).all(|w| w[0] > w[1]);
    let inc = values.windows(2).all(|w| w[0] < w[1]);
    if n > 1 && !(dec || inc) {
        return Err(Error::NonMonotone);
    }
    if dec || n == 1 {
        let c1 = values[0];
        let mut w: Vec<f64> = values.windows(2).map(|p| (p[0] - p[1]) / c1).collect();
        w.push(values[n - 1] / c1);
        Ok(w)
    } else {
        let cn = values[n - 1];
        let mut w = vec![values[0] / cn];
        w.extend(values.windows(2).map(|p| (p[1] - p[0]) / cn));
        Ok(w)
    }
}

/// An irrational α ∈ (0,1), kept with the text it was parsed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alpha {
    pub value: f64,
    pub label: String,
}

impl Alpha {
    /// Accepts decimals and the forms `sqrtN/M`, `sqrt(N)/M`, `1/sqrtN`,
    /// `(sqrtN-K)/M` and `(K-sqrtN)/M`. Rejects values in which a
    /// continued-fraction convergent with denominator ≤ 10⁶ is exact.
    pub fn parse(text: &str) -> Result<Self> {
        let value = parse_surd(text).ok_or_else(|| Error::Invalid(format!("cannot parse alpha {text:?}")))?;
        Self::from_value(value, text.trim().to_string())
    }

    pub fn from_value(value: f64, label: String) -> Result<Self> {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::Domain(format!("alpha must lie in (0,1), got {value}")));
        }
        if let Some((p, q)) = exact_rational(value, MAX_DENOMINATOR) {
            return Err(Error::RationalAlpha(format!("{label} = {p}/{q}")));
        }
        Ok(Self { value, label })
    }
}

fn parse_surd(text: &str) -> Option<f64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.replace("sqrt(", "sqrt").replace(')', "");
    let t = t.trim_start_matches('(');
    let term = |s: &str| -> Option<f64> {
        match s.strip_prefix("sqrt") {
            Some(r) => r.parse::<f64>().ok().filter(|v| *v >= 0.0).map(f64::sqrt),
            None => s.parse::<f64>().ok(),
        }
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, term(d)?),
        None => (t, 1.0),
    };
    let num = if let Some(i) = num[1..].find(['-', '+']).map(|i| i + 1) {
        let (l, r) = num.split_at(i);
        let rv = term(&r[1..])?;
        term(l)? + if r.starts_with('-') { -rv } else { rv }
    } else {
        term(num)?
    };
    let v = num / den;
    v.is_finite().then_some(v)
}

/// Coefficients c_k of the global step function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum CoeffRule {
    /// c_k = 2 − tanh(k): strictly decreasing, bounded in (1, 3).
    Monotone,
    /// c_k = 2^{−|k|}: square-summable, increasing then decreasing.
    Lp,
    /// Explicit values for k = start, start+1, …; indices outside fail.
    Window { start: i64, values: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    Monotone,
    Lp,
}

/// f = Σ_k c_k 1_{[a_k, a_{k+1})} with a_{2k} = k, a_{2k+1} = k + α.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaStepSpec {
    pub alpha: Alpha,
    pub coeffs: CoeffRule,
}

/// Which three-piece reduction applies at x = j + u.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowCase {
    /// u ∈ [0, α)
    Early,
    /// u ∈ [α, 1)
    Late,
}

/// The window [x, x+1] of an [`AlphaStepSpec`] moved to (0,1): three
/// pieces (value, lo, hi) and the first coefficient index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalStep {
    pub j: i64,
    pub u: f64,
    pub case: WindowCase,
    pub first_index: i64,
    pub pieces: [(f64, f64, f64); 3],
}

impl LocalStep {
    /// The pieces of positive length as a [`StepOnUnit`].
    pub fn to_step(&self) -> Result<StepOnUnit> {
        let kept: Vec<_> = self.pieces.iter().filter(|p| p.2 > p.1).collect();
        StepOnUnit::new(kept.iter().map(|p| p.1).collect(), kept.iter().map(|p| p.0).collect())
    }
}

impl AlphaStepSpec {
    pub fn new(alpha: Alpha, coeffs: CoeffRule) -> Result<Self> {
        let alpha = Alpha::from_value(alpha.value, alpha.label)?;
        if let CoeffRule::Window { values, .. } = &coeffs {
            if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Error::Domain("coefficients must be positive".into()));
            }
        }
        Ok(Self { alpha, coeffs })
    }

    /// The fixture of the given mode.
    pub fn fixture(mode: StepMode, alpha: Alpha) -> Result<Self> {
        let rule = match mode {
            StepMode::Monotone => CoeffRule::Monotone,
            StepMode::Lp => CoeffRule::Lp,
        };
        Self::new(alpha, rule)
    }

    pub fn coeff(&self, k: i64) -> Result<f64> {
        match &self.coeffs {
            CoeffRule::Monotone => Ok(2.0 - (k as f64).tanh()),
            CoeffRule::Lp => Ok(0.5f64.powi(k.unsigned_abs().min(2000) as i32)),
            CoeffRule::Window { start, values } => usize::try_from(k - start)
                .ok()
                .and_then(|i| values.get(i).copied())
                .ok_or(Error::CoefficientWindow { index: k }),
        }
    }

    /// Left end of piece k.
    pub fn breakpoint(&self, k: i64) -> f64 {
        k.div_euclid(2) as f64 + if k.rem_euclid(2) == 1 { self.alpha.value } else { 0.0 }
    }

    /// f(t), right-continuous.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let j = t.floor();
        let k = 2 * j as i64 + i64::from(t - j >= self.alpha.value);
        self.coeff(k)
    }

    pub fn local_step(&self, x: f64) -> Result<LocalStep> {
        let j = x.floor();
        let u = x - j;
        let case = if u < self.alpha.value { WindowCase::Early } else { WindowCase::Late };
        self.local_step_case(j as i64, u, case)
    }

    /// The reduction of the given case at x = j + u; both cases are valid
    /// at u = α, where they agree.
    pub fn local_step_case(&self, j: i64, u: f64, case: WindowCase) -> Result<LocalStep> {
        let a = self.alpha.value;
        let (k, cuts) = match case {
            WindowCase::Early => (2 * j, [0.0, a - u, 1.0 - u, 1.0]),
            WindowCase::Late => (2 * j + 1, [0.0, 1.0 - u, 1.0 - u + a, 1.0]),
        };
        let mut pieces = [(0.0, 0.0, 0.0); 3];
        for (m, p) in pieces.iter_mut().enumerate() {
            let lo = cuts[m].clamp(0.0, 1.0);
            let hi = cuts[m + 1].clamp(lo, 1.0);
            *p = (self.coeff(k + m as i64)?, lo, hi);
        }
        Ok(LocalStep { j, u, case, first_index: k, pieces })
    }

    /// A compactly supported catalog function equal to f on [lo, hi].
    pub fn truncated(&self, lo: f64, hi: f64) -> Result<FunctionSpec> {
        let (k0, k1) = (2 * lo.floor() as i64, 2 * hi.ceil() as i64);
        let mut b = Vec::new();
        let mut v = Vec::new();
        for k in k0..k1 {
            b.push(self.breakpoint(k));
            v.push(self.coeff(k)?);
        }
        b.push(self.breakpoint(k1));
        FunctionSpec::step(b, v)
    }
}

/// V_χ f(x, ξ) = ∫_x^{x+1} f(t) e^{−2πiξt} dt via the three-piece reduction.
pub fn stft_box_closed_form(spec: &AlphaStepSpec, x: f64, xi: f64) -> Result<Complex64> {
    Ok(local_value(&spec.local_step(x)?, x, xi))
}

/// The same as [`stft_box_closed_form`] with the case forced.
pub fn stft_box_case(spec: &AlphaStepSpec, x: f64, xi: f64, case: WindowCase) -> Result<Complex64> {
    let j = x.floor();
    Ok(local_value(&spec.local_step_case(j as i64, x - j, case)?, x, xi))
}

fn local_value(l: &LocalStep, x: f64, xi: f64) -> Complex64 {
    let inner: Complex64 = l.pieces.iter().map(|&(c, lo, hi)| c * segment(lo, hi, xi)).sum();
    Complex64::from_polar(1.0, -TAU * x * xi) * inner
}

/// ψ(ξ) = (1−b−c+bc) cos 2παξ − bc cos 2πξ.
pub fn almost_periodic_psi(alpha: f64, b: f64, c: f64, xi: f64) -> f64 {
    (1.0 - b - c + b * c) * (TAU * alpha * xi).cos() - b * c * (TAU * xi).cos()
}

/// Zero of a three-piece step with a non-monotone middle: finds ξ > 0 and
/// a ∈ (0, 1−α) such that the step b on (0,a), 1 on (a, a+α), c on
/// (a+α, 1) has f̂(ξ) = 0.
///
/// ξ solves ψ(ξ) = 1 − b − c, located by a sign scan over
/// [1, 10³/(1−α)] (the horizon doubling up to ten times) and bisection.
/// Then e^{2πiaξ} = (b − c e^{2πiξ}) / ((1−c) e^{2πiαξ} − (1−b)) has unit
/// modulus and fixes a modulo 1/ξ.
pub fn nonmono_zero_solve(alpha: f64, b: f64, c: f64, tol: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if exact_rational(alpha, MAX_DENOMINATOR).is_some() {
        return Err(Error::RationalAlpha(alpha.to_string()));
    }
    if !(b > 0.0 && b < 1.0 && c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("need 0 < b, c < 1, got b = {b}, c = {c}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let level = 1.0 - b - c;
    let g = |xi: f64| almost_periodic_psi(alpha, b, c, xi) - level;
    let step = 1.0 / 64.0;
    let mut lo_edge = 1.0;
    let mut hi_edge = 1e3 / (1.0 - alpha);
    for _ in 0..=10 {
        let n = ((hi_edge - lo_edge) / step).ceil() as usize;
        let mut left = lo_edge;
        let mut g_left = g(left);
        for i in 1..=n {
            let right = lo_edge + i as f64 * step;
            let g_right = g(right);
            if g_left * g_right < 0.0 {
                let xi = bisect(&g, left, right, g_left);
                if let Some(a) = extract_a(alpha, b, c, xi) {
                    let piece = StepOnUnit::new(vec![0.0, a, a + alpha], vec![b, 1.0, c])?;
                    if piece.fourier(xi).norm() < 10.0 * tol {
                        return Ok((a, xi));
                    }
                }
            }
            left = right;
            g_left = g_right;
        }
        lo_edge = hi_edge;
        hi_edge *= 2.0;
    }
    Err(Error::CrossingNotFound { horizon: lo_edge })
}

fn bisect<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, mut g_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
        }
    }
    if g(lo).abs() <= g(hi).abs() {
        lo
    } else {
        hi
    }
}

fn extract_a(alpha: f64, b: f64, c: f64, xi: f64) -> Option<f64> {
    let q = Complex64::from_polar(1.0, TAU * xi);
    let p = Complex64::from_polar(1.0, TAU * alpha * xi);
    let den = (1.0 - c) * p - (1.0 - b);
    if den.norm() < 1e-12 {
        return None;
    }
    let theta = ((b - c * q) / den).arg();
    let base = theta / TAU;
    let m = (-base).floor() + 1.0;
    (0..4)
        .map(|k| (base + m + k as f64) / xi)
        .find(|&a| a > 0.0 && a < 1.0 - alpha)
}

/// Where the non-monotone triple sits in the global step function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonMonotoneTriple {
    pub j: i64,
    pub case: WindowCase,
    pub first_index: i64,
}

/// First index window j ∈ [−search, search] (ordered by |j|, Late before
/// Early) whose triple has its middle coefficient strictly largest.
pub fn find_nonmonotone_triple(spec: &AlphaStepSpec, search: i64) -> Result<Option<NonMonotoneTriple>> {
    let mut js: Vec<i64> = (-search..=search).collect();
    js.sort_by_key(|j| (j.abs(), *j));
    for j in js {
        for (case, k) in [(WindowCase::Late, 2 * j + 1), (WindowCase::Early, 2 * j)] {
            let (l, m, r) = match (spec.coeff(k), spec.coeff(k + 1), spec.coeff(k + 2)) {
                (Ok(l), Ok(m), Ok(r)) => (l, m, r),
                _ => continue,
            };
            if m > l && m > r {
                return Ok(Some(NonMonotoneTriple { j, case, first_index: k }));
            }
        }
    }
    Ok(None)
}

/// A zero of V_χ f produced from a non-monotone triple: the point and the
/// closed-form modulus there.
pub fn nonmonotone_zero(spec: &AlphaStepSpec, triple: NonMonotoneTriple, tol: f64) -> Result<LocatedZero> {
    let k = triple.first_index;
    let (l, m, r) = (spec.coeff(k)?, spec.coeff(k + 1)?, spec.coeff(k + 2)?);
    let alpha = spec.alpha.value;
    // In the Late case the middle piece has length α and starts at 1 − u;
    // in the Early case it has length 1 − α and starts at α − u.
    let (middle, offset) = match triple.case {
        WindowCase::Late => (alpha, 1.0),
        WindowCase::Early => (1.0 - alpha, alpha),
    };
    let (a, xi) = nonmono_zero_solve(middle, l / m, r / m, tol)?;
    let x = triple.j as f64 + offset - a;
    // f is real, so f̂ vanishes at ±ξ; V_χ f(x, ·) carries f̂ of the window.
    let xi = -xi;
    let point = PhaseSpacePoint::new(x, xi)?;
    let residual_modulus = stft_box_case(spec, x, xi, triple.case)?.norm();
    Ok(LocatedZero { point, residual_modulus })
}

/// Checks the convexity certificate at every grid column: the window
/// triple must be strictly monotone with weights that are nonnegative and
/// sum to one. Interior breakpoints α − u and 1 − u (or 1 − u and
/// 1 − u + α) differ by an irrational amount, so at least one of them is
/// irrational and the weighted unit-circle points cannot all equal 1.
pub fn convexity_certificate(spec: &AlphaStepSpec, grid: &GridSpec) -> Result<usize> {
    let mut certified = 0;
    for i in 0..grid.nx {
        let local = spec.local_step(grid.x_at(i))?;
        let values: Vec<f64> = local.pieces.iter().map(|p| p.0).collect();
        let Ok(w) = convexity_weights(&values) else {
            continue;
        };
        if w.iter().all(|v| *v >= 0.0) && (w.iter().sum::<f64>() - 1.0).abs() < 1e-12 {
            certified += 1;
        }
    }
    Ok(certified)
}

/// Scans V_χ f over the grid in closed form. Monotone mode adds the
/// per-x convexity certificate when every column passes it; lp mode adds
/// the zero produced by the non-monotone triple.
pub fn counterexample_verify(mode: StepMode, alpha: &Alpha, grid: &GridSpec, zero_tol: f64) -> Result<ZeroReport> {
    let spec = AlphaStepSpec::fixture(mode, alpha.clone())?;
    let eval = |z: PhaseSpacePoint| stft_box_closed_form(&spec, z.x, z.xi).unwrap_or(Complex64::new(f64::NAN, 0.0));
    let mut report = scan(eval, grid, zero_tol)?;
    match mode {
        StepMode::Monotone => {
            let certified = convexity_certificate(&spec, grid)?;
            if certified == grid.nx && report.zeros.is_empty() {
                report.certificates.push(Certificate::AnalyticPerX { certified_columns: certified });
            }
        }
        StepMode::Lp => {
            if let Some(triple) = find_nonmonotone_triple(&spec, 64)? {
                let z = nonmonotone_zero(&spec, triple, 1e-12)?;
                report.certificates.retain(|c| *c != Certificate::GridEvidence);
                let (dx, dxi) = grid.cell_width();
                let merge = 1e-3 * dx.min(dxi);
                let seen = report.zeros.iter().any(|o| {
                    (o.point.x - z.point.x).abs() < merge && (o.point.xi - z.point.xi).abs() < merge
                });
                if !seen {
                    report.zeros.push(z);
                }
            }
        }
    }
    Ok(report)
}
