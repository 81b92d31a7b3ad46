//! Reproduction pipelines. Each id runs a fixed, seed-free battery and
//! returns a list of claims; the verdict passes when every claim does.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use tfzero::hurwitz::{build_an, max_real_root_part, routh_hurwitz};
use tfzero::kernels::{amb_conv_exp, amb_monomial, amb_monomial_bessel, amb_onesided, sym_exp_zero, FormulaId, KernelPair};
use tfzero::oracle::{oracle_ambiguity, oracle_stft, oracle_wigner, resolve_sign, SampledFunction, Tail};
use tfzero::phase_space::GridSpec;
use tfzero::polyanalytic::{
    degree1_residual, degree1_roots, function_with_bargmann, guaranteed_zero_search, polyanalytic_bargmann,
    polyanalytic_zero_search, ComplexPolynomial,
};
use tfzero::scan::{sign_change_scan, Certificate};
use tfzero::step::{counterexample_verify, lemma_step_decision, Alpha, StepMode, StepOnUnit};
use tfzero::{FunctionSpec, PhaseSpacePoint};

use crate::commands::{scan_target, write_heatmap, ScanTarget};
use crate::output::{sidecar, to_json, write_file};
use crate::CliError;

pub const IDS: [&str; 11] = [
    "ex3_1",
    "ex3_2",
    "ex3_3",
    "ex3_4",
    "ex3_5",
    "ex3_6",
    "sec4_hurwitz",
    "sec5_signs",
    "sec6_degree1",
    "sec7_monotone",
    "sec7_lp",
];

#[derive(Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub example: String,
    pub claims: Vec<Claim>,
    pub pass: bool,
    pub artifacts: Vec<String>,
}

struct Run<'a> {
    dir: &'a Path,
    id: &'a str,
    claims: Vec<Claim>,
    artifacts: Vec<String>,
}

impl Run<'_> {
    fn claim(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.claims.push(Claim { name: name.into(), pass, detail: detail.into() });
    }

    fn heatmap(&mut self, suffix: &str, grid: &GridSpec, values: &[Complex64]) -> Result<(), CliError> {
        let name = format!("{}_{suffix}.pgm", self.id);
        write_heatmap(&self.dir.join(&name), grid, values)?;
        self.artifacts.push(name);
        Ok(())
    }
}

fn p(x: f64, xi: f64) -> PhaseSpacePoint {
    PhaseSpacePoint::new(x, xi).expect("finite point")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Runs `id`, writes `<dir>/<id>.json` plus its sidecar log and heatmaps.
pub fn reproduce(id: &str, dir: &Path) -> Result<Verdict, CliError> {
    if !IDS.contains(&id) {
        return Err(CliError::Usage(format!("unknown example id '{id}'; known ids: {}", IDS.join(", "))));
    }
    let started = std::time::Instant::now();
    let mut run = Run { dir, id, claims: Vec::new(), artifacts: Vec::new() };
    match id {
        "ex3_1" => kernel_example(&mut run, KernelPair::reference(FormulaId::Gauss))?,
        "ex3_2" => ex_onesided(&mut run)?,
        "ex3_3" => ex_convolutions(&mut run)?,
        "ex3_4" => kernel_example(&mut run, KernelPair::reference(FormulaId::TEtaCross))?,
        "ex3_5" => ex_gumbel(&mut run)?,
        "ex3_6" => ex_fourier_side(&mut run)?,
        "sec4_hurwitz" => sec4(&mut run)?,
        "sec5_signs" => sec5(&mut run)?,
        "sec6_degree1" => sec6(&mut run)?,
        "sec7_monotone" => sec7_monotone(&mut run)?,
        "sec7_lp" => sec7_lp(&mut run)?,
        _ => unreachable!(),
    }
    let pass = run.claims.iter().all(|c| c.pass);
    let json_name = format!("{id}.json");
    let verdict = Verdict { example: id.into(), claims: run.claims, pass, artifacts: run.artifacts };
    let path: PathBuf = dir.join(&json_name);
    write_file(&path, to_json(&verdict)?.as_bytes())?;
    sidecar(&path, &[format!("example={id}"), format!("elapsed_s={:.3}", started.elapsed().as_secs_f64())])?;
    Ok(verdict)
}

/// Closed form against the oracle on a 21² grid of [−3,3]², then a 201²
/// zero scan of [−4,4]².
fn kernel_example(run: &mut Run, pair: KernelPair) -> Result<(), CliError> {
    let id = pair.formula_id();
    let name = serde_json::to_value(id).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let (f, g) = pair.functions()?;
    let (fs, gs) = (f.sampled()?, g.sampled()?);
    let mut worst = 0.0_f64;
    for z in GridSpec::square(3.0, 21)?.points() {
        let want = pair.oracle_scale() * oracle_ambiguity(&fs, &gs, z, 1e-11)?;
        worst = worst.max((pair.eval(z)? - want).norm());
    }
    run.claim(format!("{name}: closed form equals quadrature"), worst < 1e-6, format!("max deviation {worst:.3e} < 1e-6"));

    let grid = GridSpec::square(4.0, 201)?;
    let (report, values) = scan_target(&ScanTarget::Kernel(pair), &grid, 1e-10)?;
    let analytic = report.certificates.iter().any(|c| matches!(c, Certificate::Analytic { .. }));
    run.claim(
        format!("{name}: no zeros on [-4,4]^2"),
        report.is_zero_free(),
        format!(
            "min modulus {:.3e} at ({:.4}, {:.4}); analytic bound attached: {analytic}",
            report.min_modulus, report.argmin.x, report.argmin.xi
        ),
    );
    run.heatmap(&name, &grid, &values)
}

fn ex_onesided(run: &mut Run) -> Result<(), CliError> {
    let pair @ KernelPair::OneSided { a, b } = KernelPair::reference(FormulaId::OneSided) else { unreachable!() };
    kernel_example(run, pair)?;

    // A(Iη_b, Iη_b)(x, ξ) = A(η_b, η_b)(−x, −ξ).
    let ib = FunctionSpec::one_sided(b)?.reflect().sampled()?;
    let mut worst = 0.0_f64;
    for z in GridSpec::square(2.0, 9)?.points() {
        let want = amb_onesided(b, b, p(-z.x, -z.xi))?;
        worst = worst.max((oracle_ambiguity(&ib, &ib, z, 1e-11)? - want).norm());
    }
    run.claim("reflected one-sided exponential", worst < 1e-6, format!("max deviation {worst:.3e} < 1e-6"));

    let ea = FunctionSpec::one_sided(a)?.sampled()?;
    let mut largest = 0.0_f64;
    for z in GridSpec::new((-3.0, -0.25), (-2.0, 2.0), 6, 5)?.points() {
        largest = largest.max(oracle_ambiguity(&ea, &ib, z, 1e-12)?.norm());
    }
    run.claim("A(eta_a, I eta_b) vanishes for x < 0", largest < 1e-12, format!("max modulus {largest:.3e}"));
    Ok(())
}

fn ex_convolutions(run: &mut Run) -> Result<(), CliError> {
    kernel_example(run, KernelPair::reference(FormulaId::ConvSameSign))?;
    kernel_example(run, KernelPair::reference(FormulaId::ConvMixedSign))?;

    // e^{−a|t|}: the zeros predicted by the phase equation.
    let pair @ KernelPair::SymExp { a } = KernelPair::reference(FormulaId::SymExp) else { unreachable!() };
    let mut worst = 0.0_f64;
    for (xi, k) in [(0.5, 1), (1.0, 1), (-1.5, 2), (2.0, 3)] {
        let z = sym_exp_zero(a, xi, k)?;
        worst = worst.max(pair.eval(z)?.norm());
    }
    run.claim("e^{-a|t|}: predicted zeros vanish", worst < 1e-10, format!("max |A| at predicted zeros {worst:.3e}"));

    let grid = GridSpec::square(4.0, 201)?;
    let (report, values) = scan_target(&ScanTarget::Kernel(pair), &grid, 1e-10)?;
    let best = report.zeros.iter().map(|z| z.residual_modulus).fold(f64::INFINITY, f64::min);
    run.claim(
        "e^{-a|t|}: scan locates zeros",
        best < 1e-8,
        format!("{} zeros located, best residual {best:.3e} < 1e-8", report.zeros.len()),
    );
    run.heatmap("sym_exp", &grid, &values)
}

fn ex_gumbel(run: &mut Run) -> Result<(), CliError> {
    kernel_example(run, KernelPair::reference(FormulaId::Gumbel))?;
    kernel_example(run, KernelPair::Gumbel { a: 1.5, b: 0.5, c: 1.5, d: 0.5 })
}

/// c_a(t) = 1/(a + 2πit) and products of two such factors.
fn rational(a: f64, b: Option<(f64, f64)>) -> SampledFunction {
    let tau = 2.0 * PI;
    match b {
        None => SampledFunction::new(move |t| c(a, tau * t).inv(), (0.0, 0.0), Tail::Algebraic { power: 1.0, scale: 1.0 / tau })
            .with_sup(1.0 / a),
        Some((b, s)) => SampledFunction::new(
            move |t| (c(a, tau * t) * c(b, s * tau * t)).inv(),
            (0.0, 0.0),
            Tail::Algebraic { power: 2.0, scale: 1.0 / (tau * tau) },
        )
        .with_sup(1.0 / (a * b)),
    }
}

fn ex_fourier_side(run: &mut Run) -> Result<(), CliError> {
    // A(f̂, ĝ)(x, ξ) = A(f, g)(−ξ, x).
    let (a, b) = (1.0, 2.0);
    let cases: [(&str, SampledFunction, SampledFunction, Box<dyn Fn(PhaseSpacePoint) -> tfzero::Result<Complex64>>); 3] = [
        ("A(c_a, c_b)", rational(a, None), rational(b, None), Box::new(move |z| amb_onesided(a, b, z))),
        ("A(c_a c_b)", rational(a, Some((3.0, 1.0))), rational(a, Some((3.0, 1.0))), Box::new(move |z| amb_conv_exp(a, 3.0, 1, z))),
        ("A(c_a I c_b)", rational(a, Some((b, -1.0))), rational(a, Some((b, -1.0))), Box::new(move |z| amb_conv_exp(a, b, -1, z))),
    ];
    let grid = GridSpec::square(4.0, 201)?;
    for (name, f, g, closed) in cases {
        let mut worst = 0.0_f64;
        for z in GridSpec::square(2.0, 5)?.points() {
            let got = oracle_ambiguity(&f, &g, z, 1e-9)?;
            worst = worst.max((got - closed(p(-z.xi, z.x))?).norm());
        }
        run.claim(format!("{name}: rotated closed form equals quadrature"), worst < 1e-6, format!("max deviation {worst:.3e} < 1e-6"));
        let min = grid.points().map(|z| closed(p(-z.xi, z.x)).map(|v| v.norm())).try_fold(f64::INFINITY, |m, v| v.map(|v| m.min(v)))?;
        run.claim(format!("{name}: no zeros on [-4,4]^2"), min > 0.0, format!("min modulus {min:.3e}"));
    }
    Ok(())
}

fn sec4(run: &mut Run) -> Result<(), CliError> {
    let mut not_hurwitz = Vec::new();
    let mut worst_re = f64::NEG_INFINITY;
    let mut necessary_fail = Vec::new();
    let mut sufficient_hold = Vec::new();
    for n in 1..=30u32 {
        let an = build_an(n)?;
        let r = routh_hurwitz(&an)?;
        if !r.is_hurwitz {
            not_hurwitz.push(n);
        }
        worst_re = worst_re.max(max_real_root_part(&an)?);
        if n >= 2 && !r.necessary_ok {
            necessary_fail.push(n);
        }
        if n >= 2 && r.sufficient_ok {
            sufficient_hold.push(n);
        }
    }
    run.claim("A_n Hurwitz by exact minors, n = 1..30", not_hurwitz.is_empty(), format!("failures: {not_hurwitz:?}"));
    run.claim("A_n roots in Re z < -1e-6, n = 1..30", worst_re < -1e-6, format!("max real part {worst_re:.6e}"));
    run.claim("necessary coefficient condition, n = 2..30", necessary_fail.is_empty(), format!("failures: {necessary_fail:?}"));
    let beyond: Vec<u32> = sufficient_hold.iter().copied().filter(|&n| n >= 8).collect();
    run.claim(
        "gamma = 2.1479 sufficient condition fails, n = 8..30",
        beyond.is_empty(),
        format!("sufficient condition holds for n = {sufficient_hold:?}"),
    );

    let mut worst = 0.0_f64;
    for n in 0..=10u32 {
        for (x, xi) in [(0.3, 0.0), (-1.2, 0.7), (2.5, -1.9), (0.05, 3.0), (-3.5, -0.2)] {
            let z = p(x, xi);
            let (l, r) = (amb_monomial(n, z)?, amb_monomial_bessel(n, z)?);
            worst = worst.max((l - r).norm() / r.norm());
        }
    }
    run.claim("Macdonald route equals the A_n form, n <= 10", worst < 1e-10, format!("max relative deviation {worst:.3e}"));
    kernel_example(run, KernelPair::reference(FormulaId::MonomialSelf))
}

fn sec5(run: &mut Run) -> Result<(), CliError> {
    let grid = GridSpec::square(2.0, 21)?;
    for (name, f) in [
        ("eta_1", FunctionSpec::one_sided(1.0)?),
        ("t e^-t", FunctionSpec::monomial_exp(1, 1.0)?),
        ("1_(0,1)", FunctionSpec::unit_indicator()),
    ] {
        let s = f.sampled()?;
        let w = sign_change_scan(|z| oracle_wigner(&s, &s, z, 1e-10).map(|v| v.re), &grid)?;
        let detail = match (w.positive, w.negative) {
            (Some((zp, vp)), Some((zn, vn))) => {
                format!("W = {vp:.3e} at ({}, {}), W = {vn:.3e} at ({}, {})", zp.x, zp.xi, zn.x, zn.xi)
            }
            _ => "one sign only".into(),
        };
        run.claim(format!("W({name}) takes both signs on [-2,2]^2"), w.both().is_some(), detail);
    }
    let h0 = FunctionSpec::gaussian(c(1.0, 0.0))?.sampled()?;
    let mut min = f64::INFINITY;
    for z in grid.points() {
        min = min.min(resolve_sign(|tol| oracle_wigner(&h0, &h0, z, tol).map(|v| v.re), 1e-10, 1e-40)?);
    }
    run.claim("W(h_0) is positive on [-2,2]^2", min > 0.0, format!("min {min:.3e}"));
    Ok(())
}

fn sec6(run: &mut Run) -> Result<(), CliError> {
    // V_g f against the polyanalytic polynomial, both sides independent.
    let polys = [
        vec![c(0.8, -0.3)],
        vec![c(0.2, 0.4), c(-0.7, 0.5)],
        vec![c(-0.1, 0.3), c(0.6, 0.0), c(0.3, -0.4)],
    ];
    let mut worst = 0.0_f64;
    for pc in &polys {
        for qc in &polys {
            let (pp, qq) = (ComplexPolynomial::new(pc.clone()), ComplexPolynomial::new(qc.clone()));
            let g = FunctionSpec::hermite_combo(pc.clone())?.sampled()?;
            let f = function_with_bargmann(&qq)?.sampled()?;
            let poly = polyanalytic_bargmann(&pp, &qq)?;
            for z in [c(0.3, -0.4), c(-1.1, 0.6), c(0.9, 1.2)] {
                let v = oracle_stft(&f, &g, p(z.re, -z.im), 1e-12)?;
                let lhs = Complex64::from_polar((PI * z.norm_sqr() / 2.0).exp(), -PI * z.re * z.im) * v;
                worst = worst.max((lhs - poly.eval(z)).norm());
            }
        }
    }
    run.claim("Hermite-window STFT equals its polyanalytic polynomial", worst < 1e-6, format!("max deviation {worst:.3e}"));

    let mut root_worst = 0.0_f64;
    for k in 0..100 {
        let t = k as f64;
        let a = c((0.37 * t).sin() * 2.0, (0.91 * t).cos() * 2.0);
        let b = c((1.3 * t + 0.5).cos() * 2.0, (0.23 * t + 1.0).sin() * 2.0);
        let (z1, z2) = degree1_roots(a, b);
        root_worst = root_worst.max(degree1_residual(a, b, z1).norm()).max(degree1_residual(a, b, z2).norm());
    }
    run.claim("degree-1 roots", root_worst < 1e-12, format!("max residual {root_worst:.3e} over 100 (a, b)"));

    // Pairs from span{h_0, h_1} other than the Gaussian itself vanish.
    let mut missed = Vec::new();
    let cases = [
        ([c(1.0, 0.0), c(0.5, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]),
        ([c(0.3, -0.2), c(1.0, 0.4)], [c(-0.5, 0.9), c(0.7, 0.0)]),
        ([c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]),
        ([c(1.0, 0.0), c(0.0, 0.0)], [c(0.2, 0.1), c(0.0, 1.0)]),
    ];
    for (k, (pc, qc)) in cases.iter().enumerate() {
        let poly = polyanalytic_bargmann(&ComplexPolynomial::new(pc.to_vec()), &ComplexPolynomial::new(qc.to_vec()))?;
        if guaranteed_zero_search(&poly, 121, 1e-10)?.zeros.is_empty() {
            missed.push(k);
        }
    }
    run.claim("span{h_0, h_1} pairs have zeros", missed.is_empty(), format!("cases without a zero: {missed:?}"));

    let gauss = polyanalytic_bargmann(&ComplexPolynomial::new(vec![c(1.0, 0.0)]), &ComplexPolynomial::new(vec![c(2.0, 0.0)]))?;
    let grid = GridSpec::square(3.0, 61)?;
    let report = polyanalytic_zero_search(&gauss, &grid, 1e-10)?;
    run.claim("(h_0, h_0) has no zeros", report.is_zero_free(), format!("min modulus {:.3e}", report.min_modulus));

    let (pc, qc) = &cases[1];
    let poly = polyanalytic_bargmann(&ComplexPolynomial::new(pc.to_vec()), &ComplexPolynomial::new(qc.to_vec()))?;
    let values: Vec<Complex64> = grid.points().map(|z| poly.eval(c(z.x, z.xi))).collect();
    run.heatmap("degree1", &grid, &values)
}

fn sec7_monotone(run: &mut Run) -> Result<(), CliError> {
    let alpha = Alpha::parse("sqrt2/2")?;
    let grid = GridSpec::new((0.0, 3.0), (-5.0, 5.0), 201, 201)?;
    let report = counterexample_verify(StepMode::Monotone, &alpha, &grid, 1e-10)?;
    let per_x = report.certificates.iter().any(|c| *c == Certificate::AnalyticPerX { certified_columns: grid.nx });
    run.claim(
        "monotone coefficients: no zeros on [0,3]x[-5,5]",
        report.is_zero_free(),
        format!("min modulus {:.3e}", report.min_modulus),
    );
    run.claim("every sampled x carries the convexity certificate", per_x, format!("{:?}", report.certificates));

    let rational = StepOnUnit::new(vec![0.0, 1.0 / 3.0, 0.5], vec![3.0, 2.0, 1.0])?;
    let d = lemma_step_decision(&rational)?;
    run.claim(
        "rational jumps give a Fourier zero",
        d.zero_exists && d.witness_residual.is_some_and(|r| r < 1e-12),
        format!("witness {:?}, residual {:?}", d.witness_xi, d.witness_residual),
    );
    let irrational = StepOnUnit::new(vec![0.0, 2f64.sqrt() - 1.0], vec![2.0, 1.0])?;
    let d = lemma_step_decision(&irrational)?;
    run.claim("an irrational jump rules the zero out", !d.zero_exists, format!("{d:?}"));

    let spec = tfzero::step::AlphaStepSpec::fixture(StepMode::Monotone, alpha)?;
    let values: Vec<Complex64> = grid
        .points()
        .map(|z| tfzero::step::stft_box_closed_form(&spec, z.x, z.xi).unwrap_or(c(f64::NAN, f64::NAN)))
        .collect();
    run.heatmap("stft", &grid, &values)
}

fn sec7_lp(run: &mut Run) -> Result<(), CliError> {
    let alpha = Alpha::parse("sqrt2/2")?;
    let grid = GridSpec::new((0.0, 3.0), (-5.0, 5.0), 201, 201)?;
    let report = counterexample_verify(StepMode::Lp, &alpha, &grid, 1e-10)?;
    let best = report.zeros.iter().min_by(|a, b| a.residual_modulus.total_cmp(&b.residual_modulus));
    let detail = match best {
        Some(z) => format!("zero at ({:.12}, {:.12}) with |V| = {:.3e}", z.point.x, z.point.xi, z.residual_modulus),
        None => "no zero located".into(),
    };
    run.claim("summable coefficients: a located zero with |V| < 1e-8", best.is_some_and(|z| z.residual_modulus < 1e-8), detail);
    if let Some(z) = best {
        // Independent check of the located zero by quadrature.
        let spec = tfzero::step::AlphaStepSpec::fixture(StepMode::Lp, alpha)?;
        let f = spec.truncated(z.point.x - 1.0, z.point.x + 2.0)?.sampled()?;
        let chi = FunctionSpec::unit_indicator().sampled()?;
        let v = oracle_stft(&f, &chi, z.point, 1e-13)?;
        run.claim("quadrature confirms the zero", v.norm() < 1e-8, format!("|V| by quadrature {:.3e}", v.norm()));
    }
    Ok(())
}
