use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{SampledFunction, Tail};
use crate::polyanalytic::{hermite_functions, hermite_weights};
use crate::special::gamma_complex;

/// Symbolic descriptor of a function on the real line.
///
/// The JSON encoding is internally tagged by `"family"`; complex numbers are
/// written as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FunctionSpec {
    /// e^{−aπt²}, Re a > 0.
    Gaussian { a: Complex64 },
    /// η_a(t) = e^{−at} 1_{(0,∞)}(t), or its reflection η_a(−t).
    OneSidedExp {
        a: f64,
        #[serde(default)]
        reflected: bool,
    },
    /// η_a ∗ η_b (sign = 1) or η_a ∗ Iη_b (sign = −1).
    ConvExpExp { a: f64, b: f64, sign: i8 },
    /// tⁿ e^{−at} 1_{(0,∞)}(t).
    MonomialExp { n: u32, a: f64 },
    /// exp(at − b eᵗ).
    GumbelExp { a: f64, b: f64 },
    /// Σ √(πⁿ n!) cₙ hₙ, stored through P(z) = Σ cₙ zⁿ.
    HermiteCombo { coeffs: Vec<Complex64> },
    /// values[k] on [breakpoints[k], breakpoints[k+1]), zero elsewhere.
    StepFunction { breakpoints: Vec<f64>, values: Vec<f64> },
    /// Piecewise-linear interpolation of values at t0 + k·dt, zero outside.
    Sampled { t0: f64, dt: f64, values: Vec<Complex64> },
    /// 1_{(lo,hi)}; defaults to the unit interval.
    Indicator {
        #[serde(default)]
        lo: f64,
        #[serde(default = "one")]
        hi: f64,
    },
    /// t ↦ inner(−t) for families without a symbolic reflection.
    Reflected { inner: Box<FunctionSpec> },
}

fn one() -> f64 {
    1.0
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

impl FunctionSpec {
    pub fn gaussian(a: Complex64) -> Result<Self> {
        let s = Self::Gaussian { a };
        s.validate()?;
        Ok(s)
    }

    pub fn one_sided(a: f64) -> Result<Self> {
        let s = Self::OneSidedExp { a, reflected: false };
        s.validate()?;
        Ok(s)
    }

    pub fn conv_exp_exp(a: f64, b: f64, sign: i8) -> Result<Self> {
        let s = Self::ConvExpExp { a, b, sign };
        s.validate()?;
        Ok(s)
    }

    pub fn monomial_exp(n: u32, a: f64) -> Result<Self> {
        let s = Self::MonomialExp { n, a };
        s.validate()?;
        Ok(s)
    }

    pub fn gumbel(a: f64, b: f64) -> Result<Self> {
        let s = Self::GumbelExp { a, b };
        s.validate()?;
        Ok(s)
    }

    pub fn hermite_combo(coeffs: Vec<Complex64>) -> Result<Self> {
        let s = Self::HermiteCombo { coeffs };
        s.validate()?;
        Ok(s)
    }

    pub fn step(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let s = Self::StepFunction { breakpoints, values };
        s.validate()?;
        Ok(s)
    }

    pub fn sampled_data(t0: f64, dt: f64, values: Vec<Complex64>) -> Result<Self> {
        let s = Self::Sampled { t0, dt, values };
        s.validate()?;
        Ok(s)
    }

    /// 1_{(0,1)}.
    pub fn unit_indicator() -> Self {
        Self::Indicator { lo: 0.0, hi: 1.0 }
    }

    /// Parses and validates the JSON encoding.
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Self = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Gaussian { a } => {
                if !(a.re > 0.0 && a.is_finite()) {
                    return Err(Error::Domain(format!("Gaussian parameter needs Re a > 0, got {a}")));
                }
            }
            Self::OneSidedExp { a, .. } => positive("a", *a)?,
            Self::ConvExpExp { a, b, sign } => {
                positive("a", *a)?;
                positive("b", *b)?;
                if *sign != 1 && *sign != -1 {
                    return Err(Error::Domain(format!("sign must be +1 or -1, got {sign}")));
                }
            }
            Self::MonomialExp { a, .. } => positive("a", *a)?,
            Self::GumbelExp { a, b } => {
                positive("a", *a)?;
                positive("b", *b)?;
            }
            Self::HermiteCombo { coeffs } => {
                match coeffs.last() {
                    None => return Err(Error::Domain("Hermite combination needs at least one coefficient".into())),
                    Some(c) if *c == Complex64::new(0.0, 0.0) => {
                        return Err(Error::Domain("leading Hermite coefficient must be nonzero".into()))
                    }
                    _ => {}
                }
                if coeffs.len() > 120 || coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Domain("Hermite coefficients must be finite, degree at most 119".into()));
                }
            }
            Self::StepFunction { breakpoints, values } => {
                if values.is_empty() || breakpoints.len() != values.len() + 1 {
                    return Err(Error::Domain("step function needs n values and n+1 breakpoints".into()));
                }
                if breakpoints.iter().chain(values).any(|v| !v.is_finite())
                    || breakpoints.windows(2).any(|w| w[0] >= w[1])
                {
                    return Err(Error::Domain("step breakpoints must be finite and strictly increasing".into()));
                }
            }
            Self::Sampled { t0, dt, values } => {
                positive("dt", *dt)?;
                if values.len() < 2 || !t0.is_finite() || values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Domain("sampled data needs at least two finite samples".into()));
                }
            }
            Self::Indicator { lo, hi } => {
                if !(lo < hi && lo.is_finite() && hi.is_finite()) {
                    return Err(Error::Domain(format!("indicator interval ({lo}, {hi}) is empty")));
                }
            }
            Self::Reflected { inner } => inner.validate()?,
        }
        Ok(())
    }

    /// The spec of If(t) = f(−t).
    pub fn reflect(&self) -> FunctionSpec {
        match self {
            Self::Gaussian { a } => Self::Gaussian { a: *a },
            Self::OneSidedExp { a, reflected } => Self::OneSidedExp { a: *a, reflected: !reflected },
            Self::ConvExpExp { a, b, sign: -1 } => Self::ConvExpExp { a: *b, b: *a, sign: -1 },
            Self::HermiteCombo { coeffs } => Self::HermiteCombo {
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| if n % 2 == 1 { -c } else { *c })
                    .collect(),
            },
            Self::StepFunction { breakpoints, values } => Self::StepFunction {
                breakpoints: breakpoints.iter().rev().map(|b| -b).collect(),
                values: values.iter().rev().copied().collect(),
            },
            Self::Sampled { t0, dt, values } => Self::Sampled {
                t0: -(t0 + dt * (values.len() - 1) as f64),
                dt: *dt,
                values: values.iter().rev().copied().collect(),
            },
            Self::Indicator { lo, hi } => Self::Indicator { lo: -hi, hi: -lo },
            Self::Reflected { inner } => (**inner).clone(),
            other => Self::Reflected { inner: Box::new(other.clone()) },
        }
    }

    /// Pointwise value f(t). Jump points take the right limit.
    pub fn eval(&self, t: f64) -> Complex64 {
        let re = |v: f64| Complex64::new(v, 0.0);
        match self {
            Self::Gaussian { a } => (-a * PI * t * t).exp(),
            Self::OneSidedExp { a, reflected } => {
                let s = if *reflected { -t } else { t };
                re(if s >= 0.0 { (-a * s).exp() } else { 0.0 })
            }
            Self::ConvExpExp { a, b, sign } => re(conv_value(*a, *b, *sign, t)),
            Self::MonomialExp { n, a } => re(if t >= 0.0 { t.powi(*n as i32) * (-a * t).exp() } else { 0.0 }),
            Self::GumbelExp { a, b } => re((a * t - b * t.exp()).exp()),
            Self::HermiteCombo { coeffs } => {
                let h = hermite_functions(coeffs.len() - 1, t);
                hermite_weights(coeffs).iter().zip(h).map(|(w, h)| w * h).sum()
            }
            Self::StepFunction { breakpoints, values } => {
                if t < breakpoints[0] || t >= breakpoints[breakpoints.len() - 1] {
                    return re(0.0);
                }
                let k = breakpoints.partition_point(|&b| b <= t) - 1;
                re(values[k])
            }
            Self::Sampled { t0, dt, values } => {
                let s = (t - t0) / dt;
                let last = (values.len() - 1) as f64;
                if !(0.0..=last).contains(&s) {
                    return re(0.0);
                }
                let k = (s.floor() as usize).min(values.len() - 2);
                let w = s - k as f64;
                values[k] * (1.0 - w) + values[k + 1] * w
            }
            Self::Indicator { lo, hi } => re(if t > *lo && t < *hi { 1.0 } else { 0.0 }),
            Self::Reflected { inner } => inner.eval(-t),
        }
    }

    /// Quadrature-ready view of the function: evaluator, breakpoints and a
    /// tail bound.
    pub fn sampled(&self) -> Result<SampledFunction> {
        self.validate()?;
        let this = self.clone();
        let eval = Arc::new(move |t: f64| this.eval(t));
        let (support, tail, sup, breaks) = self.tail_data();
        Ok(SampledFunction::from_arc(eval, support, tail).with_sup(sup).with_breakpoints(breaks))
    }

    fn tail_data(&self) -> ((f64, f64), Tail, f64, Vec<f64>) {
        match self {
            Self::Gaussian { a } => {
                let t = 1.0 / (PI * a.re);
                ((-t, t), Tail::Exponential { rate: 1.0, scale: 1.0 }, 1.0, vec![])
            }
            Self::OneSidedExp { a, .. } => ((0.0, 0.0), Tail::Exponential { rate: *a, scale: 1.0 }, 1.0, vec![0.0]),
            Self::ConvExpExp { a, b, sign: 1 } => {
                let m = a.min(*b);
                let scale = 2.0 / (m * std::f64::consts::E);
                ((0.0, 0.0), Tail::Exponential { rate: m / 2.0, scale }, scale / 2.0, vec![0.0])
            }
            Self::ConvExpExp { a, b, .. } => {
                let s = 1.0 / (a + b);
                ((0.0, 0.0), Tail::Exponential { rate: a.min(*b), scale: s }, s, vec![0.0])
            }
            Self::MonomialExp { n, a } => {
                let nf = *n as f64;
                let sup = if *n == 0 { 1.0 } else { (nf / a).powf(nf) * (-nf).exp() };
                let scale = if *n == 0 { 1.0 } else { (2.0 * nf / a).powf(nf) * (-nf).exp() };
                ((0.0, 0.0), Tail::Exponential { rate: a / 2.0, scale }, sup, vec![0.0])
            }
            Self::GumbelExp { a, b } => {
                let sup = (a / b).powf(*a) * (-a).exp();
                let right = ((2.0 * a + 1.0) / b).ln().max(0.0);
                ((0.0, right), Tail::Exponential { rate: *a, scale: sup.max(1.0) }, sup, vec![])
            }
            Self::HermiteCombo { coeffs } => {
                let sup: f64 = hermite_weights(coeffs).iter().map(|w| w.norm()).sum();
                let n = (coeffs.len() - 1) as f64;
                let t = ((2.0 * n + 1.0) / (2.0 * PI)).sqrt() + 3.0;
                ((-t, t), Tail::Exponential { rate: 1.0, scale: sup }, sup, vec![])
            }
            Self::StepFunction { breakpoints, values } => {
                let sup = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                ((breakpoints[0], breakpoints[breakpoints.len() - 1]), Tail::Compact, sup, breakpoints.clone())
            }
            Self::Sampled { t0, dt, values } => {
                let sup = values.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
                let nodes: Vec<f64> = (0..values.len()).map(|k| t0 + dt * k as f64).collect();
                ((nodes[0], nodes[nodes.len() - 1]), Tail::Compact, sup, nodes)
            }
            Self::Indicator { lo, hi } => ((*lo, *hi), Tail::Compact, 1.0, vec![*lo, *hi]),
            Self::Reflected { inner } => {
                let ((lo, hi), tail, sup, breaks) = inner.tail_data();
                ((-hi, -lo), tail, sup, breaks.iter().map(|b| -b).collect())
            }
        }
    }

    /// Support hint, tail bound and supremum of the Fourier transform
    /// f̂(ω) = ∫ f(t) e^{−2πiωt} dt.
    pub fn fourier_tail(&self) -> Result<((f64, f64), Tail, f64)> {
        self.validate()?;
        let tau = 2.0 * PI;
        Ok(match self {
            Self::Gaussian { a } => {
                let beta = (1.0 / a).re;
                let t = 1.0 / (PI * beta);
                let s = a.norm().powf(-0.5);
                ((-t, t), Tail::Exponential { rate: 1.0, scale: s }, s)
            }
            Self::OneSidedExp { a, .. } => ((0.0, 0.0), Tail::Algebraic { power: 1.0, scale: 1.0 / tau }, 1.0 / a),
            Self::ConvExpExp { a, b, .. } => {
                ((0.0, 0.0), Tail::Algebraic { power: 2.0, scale: 1.0 / (tau * tau) }, 1.0 / (a * b))
            }
            Self::MonomialExp { n, a } => {
                let fact: f64 = (1..=*n).map(|k| k as f64).product();
                let p = *n as f64 + 1.0;
                ((0.0, 0.0), Tail::Algebraic { power: p, scale: fact / tau.powf(p) }, fact / a.powf(p))
            }
            Self::GumbelExp { a, b } => {
                // f̂(ξ) = b^{−a+2πiξ} Γ(a − 2πiξ); Stirling gives decay like
                // |ξ|^{a−1/2} e^{−π²|ξ|}. Heuristic envelope: half that rate,
                // with the polynomial factor absorbed into the scale.
                let g = gamma_complex(Complex64::new(*a, 0.0))?.re;
                let m = a - 0.5;
                let k = if m > 0.0 { tau.sqrt() * (4.0 * m / PI).powf(m) * (-m).exp() } else { tau.sqrt() };
                let scale = 2.0 * b.powf(-a) * g.max(k);
                ((0.0, 0.0), Tail::Exponential { rate: PI * PI / 2.0, scale }, b.powf(-a) * g)
            }
            Self::HermiteCombo { .. } => {
                let ((lo, hi), tail, sup, _) = self.tail_data();
                ((lo, hi), tail, sup)
            }
            Self::StepFunction { .. } | Self::Sampled { .. } | Self::Indicator { .. } => {
                let (tv, l1) = self.variation_and_mass();
                ((0.0, 0.0), Tail::Algebraic { power: 1.0, scale: tv / tau }, l1)
            }
            Self::Reflected { inner } => {
                let ((lo, hi), tail, sup) = inner.fourier_tail()?;
                ((-hi, -lo), tail, sup)
            }
        })
    }

    fn variation_and_mass(&self) -> (f64, f64) {
        match self {
            Self::StepFunction { breakpoints, values } => {
                let mut tv = values[0].abs() + values[values.len() - 1].abs();
                tv += values.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>();
                let l1 = values.iter().zip(breakpoints.windows(2)).map(|(v, w)| v.abs() * (w[1] - w[0])).sum();
                (tv, l1)
            }
            Self::Sampled { dt, values, .. } => {
                let mut tv = values[0].norm() + values[values.len() - 1].norm();
                tv += values.windows(2).map(|w| (w[1] - w[0]).norm()).sum::<f64>();
                let l1 = values.windows(2).map(|w| 0.5 * (w[0].norm() + w[1].norm()) * dt).sum();
                (tv, l1)
            }
            Self::Indicator { lo, hi } => (2.0, hi - lo),
            _ => (f64::INFINITY, f64::INFINITY),
        }
    }
}

fn conv_value(a: f64, b: f64, sign: i8, t: f64) -> f64 {
    if sign == 1 {
        if t <= 0.0 {
            0.0
        } else if a == b {
            t * (-a * t).exp()
        } else {
            // (e^{−bt} − e^{−at})/(a − b) = e^{−bt}(1 − e^{−(a−b)t})/(a − b)
            let d = a - b;
            (-b * t).exp() * -(-d * t).exp_m1() / d
        }
    } else if t >= 0.0 {
        (-a * t).exp() / (a + b)
    } else {
        (b * t).exp() / (a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn catalog() -> Vec<FunctionSpec> {
        vec![
            FunctionSpec::gaussian(c(1.0, 0.5)).unwrap(),
            FunctionSpec::one_sided(1.5).unwrap(),
            FunctionSpec::OneSidedExp { a: 2.0, reflected: true },
            FunctionSpec::conv_exp_exp(1.0, 2.0, 1).unwrap(),
            FunctionSpec::conv_exp_exp(1.0, 3.0, -1).unwrap(),
            FunctionSpec::monomial_exp(3, 1.0).unwrap(),
            FunctionSpec::gumbel(1.0, 2.0).unwrap(),
            FunctionSpec::hermite_combo(vec![c(1.0, 0.0), c(0.0, -2.0), c(0.5, 0.5)]).unwrap(),
            FunctionSpec::step(vec![0.0, 0.3, 1.0], vec![2.0, 1.0]).unwrap(),
            FunctionSpec::sampled_data(-1.0, 0.5, vec![c(0.0, 0.0), c(1.0, 1.0), c(2.0, 0.0), c(0.0, 0.0)]).unwrap(),
            FunctionSpec::unit_indicator(),
        ]
    }

    #[test]
    fn reflection_is_an_involution() {
        for f in catalog() {
            assert_eq!(f.reflect().reflect(), f);
        }
    }

    #[test]
    fn reflection_matches_pointwise() {
        for f in catalog() {
            let r = f.reflect();
            for k in 0..200 {
                let t = -4.0 + 0.04 * k as f64 + 0.0013;
                assert!((r.eval(t) - f.eval(-t)).norm() < 1e-12, "{f:?} at {t}");
            }
        }
    }

    #[test]
    fn json_round_trip_is_lossless() {
        for f in catalog() {
            let text = serde_json::to_string(&f).unwrap();
            assert_eq!(FunctionSpec::from_json(&text).unwrap(), f, "{text}");
        }
        let f = FunctionSpec::from_json(r#"{"family":"indicator"}"#).unwrap();
        assert_eq!(f, FunctionSpec::unit_indicator());
    }

    #[test]
    fn domain_checks() {
        assert!(FunctionSpec::gaussian(c(0.0, 1.0)).is_err());
        assert!(FunctionSpec::one_sided(-1.0).is_err());
        assert!(FunctionSpec::conv_exp_exp(1.0, 1.0, 0).is_err());
        assert!(FunctionSpec::hermite_combo(vec![c(1.0, 0.0), c(0.0, 0.0)]).is_err());
        assert!(FunctionSpec::step(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(FunctionSpec::from_json(r#"{"family":"gaussian","a":[-1.0,0.0]}"#).is_err());
    }

    #[test]
    fn convolutions_are_convolutions() {
        // η_1 ∗ η_2 at t = 1 is ∫_0^1 e^{−s} e^{−2(1−s)} ds = e^{−1} − e^{−2}
        let v = FunctionSpec::conv_exp_exp(1.0, 2.0, 1).unwrap().eval(1.0).re;
        assert!((v - ((-1.0f64).exp() - (-2.0f64).exp())).abs() < 1e-15);
        // η_1 ∗ Iη_1 = e^{−|t|}/2
        let f = FunctionSpec::conv_exp_exp(1.0, 1.0, -1).unwrap();
        assert!((f.eval(-0.7).re - 0.5 * (-0.7f64).exp()).abs() < 1e-15);
    }
}
