//! Evaluators and identity checkers that put the series and the contour
//! integrals side by side.
//!
//! Every checker returns an [`IdentityReport`] with both sides and the
//! scale-free residual |lhs - rhs| / max(|lhs|, |rhs|, 1). The `tol` passed
//! to a checker is the pass threshold; quadratures inside run ten times
//! tighter.

use num_complex::Complex64;

use crate::contour::{
    integrate_with_residue_correction, plan_contour, residue_correction, trapezoid_line,
    GammaProductIntegrand, QuadratureResult, QuadratureSettings,
};
use crate::error::{MbError, Result};
use crate::gamma::{exp_checked, is_admissible, is_nonpositive_integer, log_gamma, pochhammer};
use crate::series::{
    f21_series, f32_unit, gauss_sum, rice_generating_check, rice_poly, HypParams, RiceParams,
};

/// Step of the centered difference in the derivative-shift check.
pub const FD_STEP: f64 = 1e-5;

/// Contour metadata attached to reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourDiagnostics {
    pub sigma: f64,
    pub height: f64,
    pub step: f64,
    pub nodes: usize,
    pub crossed_poles: usize,
}

impl From<&QuadratureResult> for ContourDiagnostics {
    fn from(q: &QuadratureResult) -> Self {
        ContourDiagnostics {
            sigma: q.contour.sigma,
            height: q.contour.height,
            step: q.contour.step,
            nodes: q.nodes,
            crossed_poles: q.crossed_poles,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    pub diagnostics: Vec<ContourDiagnostics>,
}

impl IdentityReport {
    fn new(
        name: &'static str,
        lhs: Complex64,
        rhs: Complex64,
        tol: f64,
        diagnostics: Vec<ContourDiagnostics>,
    ) -> Self {
        Self::with_residual(name, lhs, rhs, residual(lhs, rhs), tol, diagnostics)
    }

    fn with_residual(
        name: &'static str,
        lhs: Complex64,
        rhs: Complex64,
        residual: f64,
        tol: f64,
        diagnostics: Vec<ContourDiagnostics>,
    ) -> Self {
        IdentityReport {
            name,
            lhs,
            rhs,
            residual,
            tol,
            passed: residual <= tol,
            diagnostics,
        }
    }
}

/// Pass threshold and quadrature limits for a checker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub tol: f64,
    pub max_height: f64,
}

impl From<f64> for CheckConfig {
    fn from(tol: f64) -> Self {
        CheckConfig {
            tol,
            max_height: QuadratureSettings::default().max_height,
        }
    }
}

impl CheckConfig {
    /// Quadrature settings for integrals inside a check.
    fn quadrature(&self, factor: f64) -> QuadratureSettings {
        QuadratureSettings {
            tol: (factor * self.tol).max(1e-15),
            max_height: self.max_height,
            ..QuadratureSettings::default()
        }
    }

    fn series_tol(&self) -> f64 {
        (1e-3 * self.tol).max(1e-16)
    }
}

/// |lhs - rhs| / max(|lhs|, |rhs|, 1)
pub fn residual(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0)
}

fn require_admissible(label: &str, x: Complex64) -> Result<()> {
    if is_admissible(x) {
        Ok(())
    } else {
        Err(MbError::NonAdmissible(format!("{label} = {x}")))
    }
}

/// exp(Σ log Γ(num) - Σ log Γ(den)).
fn gamma_quotient(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &x in num {
        acc += log_gamma(x)?;
    }
    for &x in den {
        acc -= log_gamma(x)?;
    }
    exp_checked(acc)
}

/// A value computed through a contour integral, with the quadrature behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourEvaluation {
    pub value: Complex64,
    pub quadrature: QuadratureResult,
}

/// Γ(a+s)Γ(b+s)Γ(-s)/Γ(c+s) · (-z)^s
pub fn barnes_integrand(params: &HypParams, z: Complex64) -> GammaProductIntegrand {
    GammaProductIntegrand::new(
        vec![params.a, params.b],
        vec![Complex64::new(0.0, 0.0)],
        vec![params.c],
        Some(-z),
    )
}

/// Γ(a+s)Γ(b+s)Γ(c-s)Γ(d-s)
pub fn barnes_lemma_integrand(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> GammaProductIntegrand {
    GammaProductIntegrand::new(vec![a, b], vec![c, d], vec![], None)
}

/// Γ(a+s)Γ(b+s)Γ(c-a-b-s)Γ(n-s) · z^s; `n = 0` is the main-theorem integrand.
pub fn main_theorem_integrand(
    params: &HypParams,
    z: Option<Complex64>,
    n: u32,
) -> GammaProductIntegrand {
    let HypParams { a, b, c } = *params;
    GammaProductIntegrand::new(
        vec![a, b],
        vec![c - a - b, Complex64::new(n as f64, 0.0)],
        vec![],
        z,
    )
}

/// F(a, b; c; z) from the Barnes integral, for z off [0, inf).
pub fn f21_barnes(
    params: &HypParams,
    z: Complex64,
    settings: impl Into<QuadratureSettings>,
) -> Result<ContourEvaluation> {
    let settings = settings.into();
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(MbError::Domain(format!(
            "z = {z} lies on [0, inf), where (-z)^s has no principal branch"
        )));
    }
    let HypParams { a, b, c } = *params;
    require_admissible("a", a)?;
    require_admissible("b", b)?;
    require_admissible("c", c)?;
    let quadrature = integrate_with_residue_correction(&barnes_integrand(params, z), &settings)?;
    let prefactor = gamma_quotient(&[c], &[a, b])?;
    Ok(ContourEvaluation {
        value: prefactor * quadrature.value,
        quadrature,
    })
}

/// F(a, b; c; 1 - z) from the main-theorem integral, for z off (-inf, 0].
pub fn f21_main_theorem(
    params: &HypParams,
    z: Complex64,
    settings: impl Into<QuadratureSettings>,
) -> Result<ContourEvaluation> {
    let settings = settings.into();
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(MbError::Domain(format!(
            "z = {z} lies on the cut (-inf, 0]"
        )));
    }
    let HypParams { a, b, c } = *params;
    require_admissible("a", a)?;
    require_admissible("c - a", c - a)?;
    require_admissible("b", b)?;
    require_admissible("c - b", c - b)?;
    require_admissible("c", c)?;
    let quadrature =
        integrate_with_residue_correction(&main_theorem_integrand(params, Some(z), 0), &settings)?;
    let prefactor = gamma_quotient(&[c], &[a, c - a, b, c - b])?;
    Ok(ContourEvaluation {
        value: prefactor * quadrature.value,
        quadrature,
    })
}

/// (1/2πi)∫Γ(a+s)Γ(b+s)Γ(c-s)Γ(d-s) ds against Γ(a+c)Γ(a+d)Γ(b+c)Γ(b+d)/Γ(a+b+c+d).
pub fn first_barnes_lemma(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    require_admissible("a + c", a + c)?;
    require_admissible("a + d", a + d)?;
    require_admissible("b + c", b + c)?;
    require_admissible("b + d", b + d)?;
    require_admissible("a + b + c + d", a + b + c + d)?;
    let q = integrate_with_residue_correction(
        &barnes_lemma_integrand(a, b, c, d),
        &cfg.quadrature(0.1),
    )?;
    let rhs = gamma_quotient(&[a + c, a + d, b + c, b + d], &[a + b + c + d])?;
    Ok(IdentityReport::new(
        "barnes1",
        q.value,
        rhs,
        tol,
        vec![(&q).into()],
    ))
}

/// n-th derivative of both sides of the main theorem at z = 1.
///
/// lhs is the integral with Γ(n-s) in place of Γ(-s); rhs is
/// Γ(c-a)Γ(c-b)Γ(a+n)Γ(b+n)/Γ(c+n). The rhs is also cross-checked against
/// (a)_n(b)_n/(c)_n · Γ(a)Γ(c-a)Γ(b)Γ(c-b)/Γ(c); the reported residual is
/// the larger of the two.
pub fn derivative_match_at_one(
    params: &HypParams,
    n: u32,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    if n > 10 {
        return Err(MbError::Domain(format!("derivative order {n} exceeds 10")));
    }
    let HypParams { a, b, c } = *params;
    require_admissible("a", a)?;
    require_admissible("c - a", c - a)?;
    require_admissible("b", b)?;
    require_admissible("c - b", c - b)?;
    require_admissible("c", c)?;
    let nf = n as f64;
    let q = integrate_with_residue_correction(
        &main_theorem_integrand(params, None, n),
        &cfg.quadrature(0.1),
    )?;
    let rhs = gamma_quotient(&[c - a, c - b, a + nf, b + nf], &[c + nf])?;
    let poch = pochhammer(a, n) * pochhammer(b, n) / pochhammer(c, n);
    let cross = poch * gamma_quotient(&[a, c - a, b, c - b], &[c])?;
    let r = residual(q.value, rhs).max(residual(rhs, cross));
    Ok(IdentityReport::with_residual(
        "derivative",
        q.value,
        rhs,
        r,
        tol,
        vec![(&q).into()],
    ))
}

/// The proof's derivative device: d/dz of the main-theorem integral equals
/// minus the same integral with (a, b, c) -> (a+1, b+1, c+1), from
/// -sΓ(-s) = Γ(1-s) and s -> 1+s.
///
/// lhs is a centered difference with step [`FD_STEP`] on one fixed line, so
/// quadrature error largely cancels; rhs is the shifted integral.
pub fn derivative_shift_check(
    params: &HypParams,
    z0: Complex64,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    if z0.im == 0.0 && z0.re <= FD_STEP {
        return Err(MbError::Domain(format!(
            "z0 = {z0} is too close to the cut"
        )));
    }
    let settings = QuadratureSettings {
        tol: 1e-12,
        ..cfg.quadrature(1.0)
    };
    let base = main_theorem_integrand(params, Some(z0), 0);
    let central = integrate_with_residue_correction(&base, &settings)?;
    let plan = plan_contour(&base)?;
    let on_line = |z: Complex64| -> Result<Complex64> {
        let f = main_theorem_integrand(params, Some(z), 0);
        Ok(
            trapezoid_line(&f, plan.sigma, central.contour.height, central.contour.step)?
                + residue_correction(&f, &plan)?,
        )
    };
    let lhs = (on_line(z0 + FD_STEP)? - on_line(z0 - FD_STEP)?) / (2.0 * FD_STEP);

    let one = Complex64::new(1.0, 0.0);
    let shifted = HypParams::new(params.a + one, params.b + one, params.c + one);
    let q = integrate_with_residue_correction(
        &main_theorem_integrand(&shifted, Some(z0), 0),
        &settings,
    )?;
    let rhs = -q.value;
    Ok(IdentityReport::new(
        "derivative_shift",
        lhs,
        rhs,
        tol,
        vec![(&central).into(), (&q).into()],
    ))
}

/// Right side of the z <-> 1-z connection formula, as a value of F(a, b; c; x).
pub fn connection_rhs(params: &HypParams, x: Complex64, tol: f64) -> Result<Complex64> {
    let HypParams { a, b, c } = *params;
    let excess = c - a - b;
    let nearest = excess.re.round();
    if excess.im.abs() <= 1e-9 && (excess.re - nearest).abs() <= 1e-9 {
        return Err(MbError::Degenerate(format!(
            "c - a - b = {excess} is an integer; the connection coefficients are singular"
        )));
    }
    require_admissible("c", c)?;
    let one = Complex64::new(1.0, 0.0);
    let y = one - x;

    // Grouped so that a = 0 or b = 0 gives an exactly unit coefficient.
    let first_coeff = if is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b) {
        Complex64::new(0.0, 0.0)
    } else {
        exp_checked((log_gamma(c)? - log_gamma(c - a)?) + (log_gamma(excess)? - log_gamma(c - b)?))?
    };
    let second_coeff = if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        Complex64::new(0.0, 0.0)
    } else {
        exp_checked((log_gamma(c)? - log_gamma(a)?) + (log_gamma(-excess)? - log_gamma(b)?))?
    };

    let mut total = Complex64::new(0.0, 0.0);
    if first_coeff != Complex64::new(0.0, 0.0) {
        let f = f21_series(&HypParams::new(a, b, one - excess), y, tol)?;
        total += first_coeff * f.value;
    }
    if second_coeff != Complex64::new(0.0, 0.0) {
        let f = f21_series(&HypParams::new(c - a, c - b, one + excess), y, tol)?;
        total += second_coeff * (excess * y.ln()).exp() * f.value;
    }
    Ok(total)
}

/// F(a, b; c; z) by its series against the connection formula built from
/// series at 1 - z.
pub fn connection_formula_check(
    params: &HypParams,
    z: Complex64,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    let one = Complex64::new(1.0, 0.0);
    if !(z.norm() > 0.0 && z.norm() < 1.0 && (one - z).norm() < 1.0) {
        return Err(MbError::Domain(format!(
            "z = {z} must satisfy 0 < |z| < 1 and |1 - z| < 1"
        )));
    }
    let series_tol = cfg.series_tol();
    let rhs = connection_rhs(params, z, series_tol)?;
    let lhs = f21_series(params, z, series_tol)?.value;
    Ok(IdentityReport::new("connection", lhs, rhs, tol, Vec::new()))
}

/// The main-theorem integral at z against the connection formula evaluated
/// at 1 - z, both as values of F(a, b; c; 1 - z).
pub fn main_vs_connection(
    params: &HypParams,
    z: Complex64,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    let main = f21_main_theorem(params, z, cfg.quadrature(0.1))?;
    let rhs = connection_rhs(params, Complex64::new(1.0, 0.0) - z, cfg.series_tol())?;
    Ok(IdentityReport::new(
        "main_connection",
        main.value,
        rhs,
        tol,
        vec![(&main.quadrature).into()],
    ))
}

/// The main-theorem integral against the power series at 1 - z.
pub fn main_theorem_check(
    params: &HypParams,
    z: Complex64,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    let main = f21_main_theorem(params, z, cfg.quadrature(0.1))?;
    let one = Complex64::new(1.0, 0.0);
    let series = f21_series(params, one - z, cfg.series_tol())?;
    Ok(IdentityReport::new(
        "main",
        main.value,
        series.value,
        tol,
        vec![(&main.quadrature).into()],
    ))
}

/// The Barnes integral against the power series at z.
pub fn barnes_series_check(
    params: &HypParams,
    z: Complex64,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    let barnes = f21_barnes(params, z, cfg.quadrature(0.1))?;
    let series = f21_series(params, z, cfg.series_tol())?;
    Ok(IdentityReport::new(
        "barnes",
        barnes.value,
        series.value,
        tol,
        vec![(&barnes.quadrature).into()],
    ))
}

/// A terminating (or convergent) series at z = 1 against the Gauss gamma ratio.
pub fn gauss_summation_check(
    params: &HypParams,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    let lhs = f21_series(params, Complex64::new(1.0, 0.0), cfg.series_tol())?.value;
    let rhs = gauss_sum(params)?;
    Ok(IdentityReport::new("gauss", lhs, rhs, tol, Vec::new()))
}

/// ₃F₂(α₁,α₂,α₃; β₁,β₂; 1) against its contour-integral form.
///
/// The inner F(α₃, -s; β₂; 1) is replaced by its Gauss value
/// Γ(β₂)Γ(β₂+s-α₃)/(Γ(β₂+s)Γ(β₂-α₃)), so the integrand is a pure gamma
/// product. A terminating α₁ or α₂ would pinch the contour, so such a
/// parameter is moved into the α₃ slot first; the left side is symmetric in
/// the α's.
pub fn bailey_3f2_check(
    alpha: [Complex64; 3],
    beta: [Complex64; 2],
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    let mut al = alpha;
    if is_nonpositive_integer(al[0]) {
        al.swap(0, 2);
    } else if is_nonpositive_integer(al[1]) {
        al.swap(1, 2);
    }
    if is_nonpositive_integer(al[0]) || is_nonpositive_integer(al[1]) {
        return Err(MbError::Degenerate(
            "more than one terminating numerator parameter".into(),
        ));
    }
    let [a1, a2, a3] = al;
    let [b1, b2] = beta;
    require_admissible("beta1", b1)?;
    require_admissible("beta2", b2)?;
    require_admissible("beta1 - alpha1", b1 - a1)?;
    require_admissible("beta1 - alpha2", b1 - a2)?;
    require_admissible("beta2 - alpha3", b2 - a3)?;

    let lhs = f32_unit(al, beta, (0.1 * tol).max(1e-16))?;

    let f = GammaProductIntegrand::new(
        vec![a1, a2, b2 - a3],
        vec![b1 - a1 - a2, Complex64::new(0.0, 0.0)],
        vec![b2],
        None,
    );
    let q = integrate_with_residue_correction(&f, &cfg.quadrature(0.1))?;
    let prefactor = gamma_quotient(&[b1, b2], &[a1, b1 - a1, a2, b1 - a2, b2 - a3])?;
    let rhs = prefactor * q.value;
    Ok(IdentityReport::new(
        "bailey",
        lhs,
        rhs,
        tol,
        vec![(&q).into()],
    ))
}

/// Rice's contour identity for H_n.
///
/// The polynomial H_n(s, q; v) = Σ_j c_j (s)_j is folded into the gamma
/// product via (s)_j Γ(s) = Γ(s+j), giving n+1 pure gamma-product integrals
/// Γ(s+j)Γ(q-s)Γ(ξ-s)Γ(p-q-ξ+s), each on its own separating line.
pub fn rice_integral_check(
    xi: Complex64,
    p: Complex64,
    q: Complex64,
    v: Complex64,
    n: u32,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    if n > 6 {
        return Err(MbError::Domain(format!("Rice degree {n} exceeds 6")));
    }
    require_admissible("q", q)?;
    require_admissible("xi", xi)?;
    require_admissible("p - q", p - q)?;
    require_admissible("p - xi", p - xi)?;

    let h = rice_poly(&RiceParams { xi, p, v, n })?;
    let lhs = gamma_quotient(&[p - q, q, p - xi, xi], &[])? * h;

    // Coefficients of H_n(s, q; v) in the (s)_j basis.
    let coeffs = RiceParams {
        xi: Complex64::new(0.0, 0.0),
        p: q,
        v,
        n,
    }
    .pochhammer_coefficients()?;
    let gamma_p = gamma_quotient(&[p], &[])?;
    let integrate_all =
        |settings: &QuadratureSettings| -> Result<(Complex64, f64, Vec<ContourDiagnostics>)> {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut magnitude = 0.0;
            let mut diags = Vec::new();
            for (j, c) in coeffs.iter().enumerate() {
                if *c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let f = GammaProductIntegrand::new(
                    vec![Complex64::new(j as f64, 0.0), p - q - xi],
                    vec![q, xi],
                    vec![],
                    None,
                );
                let res = integrate_with_residue_correction(&f, settings)?;
                sum += c * res.value;
                magnitude += (c * res.value).norm();
                diags.push((&res).into());
            }
            Ok((gamma_p * sum, gamma_p.norm() * magnitude, diags))
        };
    let mut settings = cfg.quadrature(0.1);
    let (mut rhs, magnitude, mut diags) = integrate_all(&settings)?;
    let amplification = magnitude / rhs.norm().max(1.0);
    if amplification > 1.0 {
        settings.tol = (settings.tol / amplification).max(1e-15);
        (rhs, _, diags) = integrate_all(&settings)?;
    }
    Ok(IdentityReport::new("rice", lhs, rhs, tol, diags))
}

/// The Rice generating function, as a report with a scale-free residual.
pub fn rice_generating_report(
    xi: Complex64,
    p: Complex64,
    v: Complex64,
    t: Complex64,
    terms: u32,
    config: impl Into<CheckConfig>,
) -> Result<IdentityReport> {
    let cfg = config.into();
    let tol = cfg.tol;
    let g = rice_generating_check(xi, p, v, t, terms, cfg.series_tol())?;
    Ok(IdentityReport::new(
        "generating",
        g.lhs,
        g.rhs,
        tol,
        Vec::new(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    fn g(x: f64) -> f64 {
        gamma(r(x)).unwrap().re
    }

    #[test]
    fn barnes_at_minus_one_is_ln2() {
        let v = f21_barnes(&HypParams::real(1.0, 1.0, 2.0), r(-1.0), 1e-12).unwrap();
        assert!(
            (v.value - r(std::f64::consts::LN_2)).norm() < 1e-11,
            "{}",
            v.value
        );
    }

    #[test]
    fn barnes_near_zero_is_one() {
        let p = HypParams::new(c(0.3, 0.2), r(0.7), c(1.1, -0.3));
        let v = f21_barnes(&p, r(-1e-8), 1e-10).unwrap();
        assert!((v.value - 1.0).norm() < 1e-7, "{}", v.value);
    }

    #[test]
    fn barnes_matches_reference_value() {
        let v = f21_barnes(&HypParams::real(0.3, 0.7, 1.1), r(-0.4), 1e-12).unwrap();
        assert!((v.value.re - 0.936_389_313_636_560_5).abs() < 1e-11);
    }

    #[test]
    fn barnes_domain() {
        let p = HypParams::real(0.3, 0.7, 1.1);
        assert!(matches!(
            f21_barnes(&p, r(2.0), 1e-10),
            Err(MbError::Domain(_))
        ));
        assert!(matches!(
            f21_barnes(&p, r(0.0), 1e-10),
            Err(MbError::Domain(_))
        ));
        let bad = HypParams::real(0.3, 0.7, -1.0);
        assert!(matches!(
            f21_barnes(&bad, r(-0.5), 1e-10),
            Err(MbError::NonAdmissible(_))
        ));
    }

    #[test]
    fn barnes_with_negative_parameter_uses_residue() {
        // a = -0.5 puts the first left pole at s = 0.5, right of Γ(-s)'s pole at 0.
        let p = HypParams::new(r(-0.5), c(0.3, 0.2), r(1.2));
        let v = f21_barnes(&p, r(-0.7), 1e-12).unwrap();
        assert!(v.quadrature.crossed_poles > 0);
        let want = c(1.080_819_251_821_161_2, 0.052_427_213_432_463_46);
        let want_series = f21_series(&p, r(-0.7), 1e-16).unwrap().value;
        assert!((want - want_series).norm() < 1e-14);
        assert!((v.value - want).norm() < 1e-11, "{}", v.value);
    }

    #[test]
    fn barnes_lemma_examples() {
        let rep = first_barnes_lemma(r(0.5), r(0.5), r(0.5), r(0.5), 1e-10).unwrap();
        assert!(rep.passed && (rep.rhs - 1.0).norm() < 1e-15);

        let rep = first_barnes_lemma(c(0.3, 0.2), r(0.5), c(0.4, -0.1), r(0.6), 1e-10).unwrap();
        assert!(rep.passed, "{rep:?}");

        let rep = first_barnes_lemma(r(0.25), r(0.75), r(0.5), r(1.0), 1e-10).unwrap();
        let want = g(0.75) * g(1.25) * g(1.25) * g(1.75) / g(2.5);
        assert!(
            (rep.rhs.re - want).abs() < 1e-14 && (want - 0.696_040_999_603_963_5).abs() < 1e-14
        );
        assert!(rep.passed);

        assert!(matches!(
            first_barnes_lemma(r(-0.5), r(0.5), r(-0.5), r(0.5), 1e-10),
            Err(MbError::NonAdmissible(_))
        ));
    }

    #[test]
    fn main_theorem_examples() {
        let p = HypParams::real(0.3, 0.4, 0.9);
        let at_one = f21_main_theorem(&p, r(1.0), 1e-12).unwrap();
        assert!((at_one.value - 1.0).norm() < 1e-11);
        let half = f21_main_theorem(&p, r(0.5), 1e-12).unwrap();
        assert!((half.value.re - 1.090_714_371_417_006_5).abs() < 1e-11);
        assert!(matches!(
            f21_main_theorem(&p, r(-0.5), 1e-10),
            Err(MbError::Domain(_))
        ));
        let bad = HypParams::real(0.3, 1.4, 0.4);
        assert!(matches!(
            f21_main_theorem(&bad, r(0.5), 1e-10),
            Err(MbError::NonAdmissible(_))
        ));
    }

    #[test]
    fn derivative_examples() {
        let p = HypParams::real(0.3, 0.4, 0.9);
        let rep = derivative_match_at_one(&p, 0, 1e-9).unwrap();
        let want = g(0.3) * g(0.6) * g(0.4) * g(0.5) / g(0.9);
        assert!((rep.rhs.re - want).abs() / want < 1e-13 && rep.passed);

        let rep = derivative_match_at_one(&p, 1, 1e-9).unwrap();
        let want = g(0.6) * g(0.5) * g(1.3) * g(1.4) / g(1.9);
        assert!((want - 2.185_392_296_658_388_6).abs() < 1e-13);
        assert!((rep.rhs.re - want).abs() < 1e-13 && rep.passed, "{rep:?}");

        let rep = derivative_match_at_one(&p, 3, 1e-9).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn derivative_shift_matches_difference_quotient() {
        let p = HypParams::real(0.3, 0.4, 0.9);
        let rep = derivative_shift_check(&p, r(0.9), 1e-6).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn connection_examples() {
        let rep =
            connection_formula_check(&HypParams::real(1.0 / 3.0, 0.2, 1.1), r(0.4), 1e-10).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!((rep.lhs.re - 1.029_051_904_623_220_5).abs() < 1e-14);
        let rep = connection_formula_check(&HypParams::real(0.3, 0.4, 0.9), r(0.5), 1e-10).unwrap();
        assert!(rep.passed, "{rep:?}");

        let rep = connection_formula_check(
            &HypParams::new(r(0.0), c(0.4, 0.3), r(1.3)),
            c(0.3, 0.2),
            1e-10,
        )
        .unwrap();
        assert_eq!(rep.lhs, r(1.0));
        assert_eq!(rep.rhs, r(1.0));

        let degenerate = HypParams::real(0.3, 0.7, 2.0);
        assert!(matches!(
            connection_formula_check(&degenerate, r(0.5), 1e-10),
            Err(MbError::Degenerate(_))
        ));
        assert!(matches!(
            connection_formula_check(&HypParams::real(0.3, 0.4, 0.9), r(1.5), 1e-10),
            Err(MbError::Domain(_))
        ));
    }

    #[test]
    fn bailey_examples() {
        let rep = bailey_3f2_check([r(0.2), r(0.3), r(0.4)], [r(1.5), r(1.6)], 1e-9).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!((rep.lhs.re - 1.012_814_124_376_82).abs() < 1e-10);

        // α₃ = 0: the sum is 1 and the integral is a first-Barnes-lemma instance.
        let rep = bailey_3f2_check([r(0.2), r(0.3), r(0.0)], [r(1.5), r(1.6)], 1e-10).unwrap();
        assert_eq!(rep.lhs, r(1.0));
        assert!(rep.passed, "{rep:?}");

        let rep =
            bailey_3f2_check([r(-2.0), c(0.3, 0.2), r(0.4)], [r(1.5), r(1.6)], 1e-10).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn rice_examples() {
        let rep = rice_integral_check(r(0.4), r(2.2), r(1.1), r(0.3), 2, 1e-9).unwrap();
        assert!(rep.passed, "{rep:?}");
        for n in 0..4 {
            let rep = rice_integral_check(r(0.4), r(2.2), r(1.1), r(0.0), n, 1e-9).unwrap();
            let want = g(1.1) * g(0.4) * g(1.1) * g(1.8);
            assert!((rep.lhs.re - want).abs() / want < 1e-13 && rep.passed);
        }
    }

    #[test]
    fn generating_report() {
        let rep = rice_generating_report(r(0.3), r(1.7), r(0.2), r(0.1), 25, 1e-10).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn gauss_terminating() {
        let p = HypParams::new(r(-3.0), c(0.4, 0.3), c(1.7, -0.2));
        let rep = gauss_summation_check(&p, 1e-12).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
