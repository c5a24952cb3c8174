//! Mellin-Barnes engine.
//!
//! Integrands are products Γ(α+s)…Γ(β-s)… / Γ(γ+s)… · z^s evaluated in log
//! space. Contours are vertical lines `Re s = σ`; when no straight line
//! separates the left pole families from the right ones, the line is kept
//! straight and the poles it wrongly passes are accounted for by explicit
//! residues. Quadrature is the trapezoid rule with step halving.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{MbError, Result};
use crate::gamma::{self, gamma_line_decay, is_nonpositive_integer, log_gamma};

/// Narrowest separation interval a straight contour may use.
pub const MIN_SEPARATION_GAP: f64 = 2e-3;
/// Largest margin recorded on a contour certificate.
pub const MAX_MARGIN: f64 = 0.5;
/// Integrand values below this absolute size count as converged.
pub const ABS_FLOOR: f64 = 1e-14;
/// Two poles closer than this are treated as coincident.
pub const CONFLUENCE_TOL: f64 = 1e-9;

/// Which side of the contour a pole family must stay on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A gamma factor of the integrand, by position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// Γ(plus_shifts[i] + s)
    Plus(usize),
    /// Γ(minus_shifts[j] - s)
    Minus(usize),
}

/// ∏Γ(αᵢ+s) · ∏Γ(βⱼ-s) / ∏Γ(γₖ+s) · z^s, with z^s on the principal branch.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GammaProductIntegrand {
    pub plus_shifts: Vec<Complex64>,
    pub minus_shifts: Vec<Complex64>,
    pub den_shifts: Vec<Complex64>,
    pub power_base: Option<Complex64>,
}

impl GammaProductIntegrand {
    pub fn new(
        plus_shifts: Vec<Complex64>,
        minus_shifts: Vec<Complex64>,
        den_shifts: Vec<Complex64>,
        power_base: Option<Complex64>,
    ) -> Self {
        GammaProductIntegrand {
            plus_shifts,
            minus_shifts,
            den_shifts,
            power_base,
        }
    }

    fn log_power(&self) -> Option<Complex64> {
        self.power_base.map(|z| z.ln())
    }

    /// Decay rates (up, down) of |f(σ+it)| as t -> ±inf.
    pub fn decay_rates(&self) -> (f64, f64) {
        let arg = self.power_base.map_or(0.0, |z| z.arg());
        gamma_line_decay(
            self.plus_shifts.len(),
            self.minus_shifts.len(),
            self.den_shifts.len(),
            arg,
        )
    }

    /// Exponent p in |f(σ+it)| ~ |t|^p e^{-rate |t|}.
    pub fn algebraic_growth(&self, sigma: f64) -> f64 {
        let sum = |v: &[Complex64]| v.iter().map(|x| x.re).sum::<f64>();
        let (np, nm, nd) = (
            self.plus_shifts.len() as f64,
            self.minus_shifts.len() as f64,
            self.den_shifts.len() as f64,
        );
        sum(&self.plus_shifts) + sum(&self.minus_shifts) - sum(&self.den_shifts)
            + sigma * (np - nm - nd)
            - 0.5 * (np + nm - nd)
    }

    /// Rejects integrands whose magnitude does not decay in both directions.
    pub fn check_integrable(&self) -> Result<(f64, f64)> {
        if let Some(z) = self.power_base {
            if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
                return Err(MbError::Domain(format!(
                    "power base {z} must be finite and nonzero"
                )));
            }
        }
        let (up, down) = self.decay_rates();
        if up <= 0.0 || down <= 0.0 {
            return Err(MbError::DivergentIntegrand {
                rate_up: up,
                rate_down: down,
            });
        }
        Ok((up, down))
    }

    /// log f(s), or `None` where a denominator gamma makes f vanish exactly.
    pub fn log_eval(&self, s: Complex64) -> Result<Option<Complex64>> {
        self.log_eval_skipping(s, None)
    }

    fn log_eval_skipping(&self, s: Complex64, skip: Option<Factor>) -> Result<Option<Complex64>> {
        let mut acc = Complex64::new(0.0, 0.0);
        for &g in &self.den_shifts {
            if is_nonpositive_integer(g + s) {
                return Ok(None);
            }
            acc -= log_gamma(g + s)?;
        }
        for (i, &a) in self.plus_shifts.iter().enumerate() {
            if skip != Some(Factor::Plus(i)) {
                acc += log_gamma(a + s)?;
            }
        }
        for (j, &b) in self.minus_shifts.iter().enumerate() {
            if skip != Some(Factor::Minus(j)) {
                acc += log_gamma(b - s)?;
            }
        }
        if let Some(lz) = self.log_power() {
            acc += s * lz;
        }
        Ok(Some(acc))
    }

    /// f(s). Errors at poles and on overflow.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        match self.log_eval(s)? {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some(l) => gamma::exp_checked(l),
        }
    }

    /// Residue of f at the n-th member of the family generated by `factor`.
    pub fn residue(&self, factor: Factor, n: u64) -> Result<Complex64> {
        let (s0, sign) = match factor {
            Factor::Plus(i) => (-self.plus_shifts[i] - n as f64, 1.0),
            Factor::Minus(j) => (self.minus_shifts[j] + n as f64, -1.0),
        };
        for (k, &a) in self.plus_shifts.iter().enumerate() {
            if Factor::Plus(k) != factor && is_near_pole(a + s0) {
                return Err(confluent(s0));
            }
        }
        for (k, &b) in self.minus_shifts.iter().enumerate() {
            if Factor::Minus(k) != factor && is_near_pole(b - s0) {
                return Err(confluent(s0));
            }
        }
        let rest = match self.log_eval_skipping(s0, Some(factor))? {
            None => return Ok(Complex64::new(0.0, 0.0)),
            Some(l) => l,
        };
        // Res Γ(x) at x = -n is (-1)^n / n!.
        let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let log_fact = log_gamma(Complex64::new(n as f64 + 1.0, 0.0))?;
        Ok(gamma::exp_checked(rest - log_fact)? * (sign * parity))
    }
}

fn is_near_pole(x: Complex64) -> bool {
    x.im.abs() <= CONFLUENCE_TOL
        && x.re <= CONFLUENCE_TOL
        && (x.re - x.re.round()).abs() <= CONFLUENCE_TOL
}

fn confluent(s0: Complex64) -> MbError {
    MbError::SeparationImpossible {
        left_max: s0.re,
        right_min: s0.re,
        detail: format!("double pole at s = {s0}"),
    }
}

/// Poles {base - n} (left) or {base + n} (right), n = 0, 1, 2, ...
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleFamily {
    pub base: Complex64,
    pub side: Side,
    pub source: Factor,
}

impl PoleFamily {
    pub fn member(&self, n: u64) -> Complex64 {
        match self.side {
            Side::Left => self.base - n as f64,
            Side::Right => self.base + n as f64,
        }
    }

    /// Members lying on the wrong side of the line Re s = sigma.
    pub fn crossings(&self, sigma: f64) -> u64 {
        let d = match self.side {
            Side::Left => self.base.re - sigma,
            Side::Right => sigma - self.base.re,
        };
        if d > 0.0 {
            d.ceil() as u64
        } else {
            0
        }
    }

    /// Distance from sigma to the nearest member's real part.
    pub fn distance(&self, sigma: f64) -> f64 {
        let offset = match self.side {
            Side::Left => self.base.re - sigma,
            Side::Right => sigma - self.base.re,
        };
        let n = offset.round().max(0.0);
        (offset - n).abs()
    }
}

/// Γ(α+s) gives the left family {-α-n}; Γ(β-s) gives the right family
/// {β+n}; denominator factors give zeros, not poles.
pub fn pole_families(f: &GammaProductIntegrand) -> Vec<PoleFamily> {
    let left = f.plus_shifts.iter().enumerate().map(|(i, &a)| PoleFamily {
        base: -a,
        side: Side::Left,
        source: Factor::Plus(i),
    });
    let right = f.minus_shifts.iter().enumerate().map(|(j, &b)| PoleFamily {
        base: b,
        side: Side::Right,
        source: Factor::Minus(j),
    });
    left.chain(right).collect()
}

/// Rightmost left-family real part and leftmost right-family real part
/// (`-inf` / `+inf` when a side is empty).
pub fn separation_interval(families: &[PoleFamily]) -> (f64, f64) {
    let mut left_max = f64::NEG_INFINITY;
    let mut right_min = f64::INFINITY;
    for fam in families {
        match fam.side {
            Side::Left => left_max = left_max.max(fam.base.re),
            Side::Right => right_min = right_min.min(fam.base.re),
        }
    }
    (left_max, right_min)
}

/// A straight separating line and the interval it was chosen from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    pub left_max: f64,
    pub right_min: f64,
    pub sigma: f64,
    pub margin: f64,
}

/// Midpoint of the separation interval.
pub fn choose_abscissa(families: &[PoleFamily]) -> Result<Separation> {
    let (left_max, right_min) = separation_interval(families);
    let gap = right_min - left_max;
    if gap.is_nan() || gap < MIN_SEPARATION_GAP {
        return Err(MbError::SeparationImpossible {
            left_max,
            right_min,
            detail: format!("separation interval has width {gap}"),
        });
    }
    let sigma = match (left_max.is_finite(), right_min.is_finite()) {
        (true, true) => 0.5 * (left_max + right_min),
        (true, false) => left_max + MAX_MARGIN,
        (false, true) => right_min - MAX_MARGIN,
        (false, false) => 0.0,
    };
    Ok(Separation {
        left_max,
        right_min,
        sigma,
        margin: (0.5 * gap).min(MAX_MARGIN),
    })
}

/// Vertical integration line with its separation certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub sigma: f64,
    pub height: f64,
    pub step: f64,
    pub separation_margin: f64,
}

impl Contour {
    /// Whether no left family reaches past `sigma - margin` and no right
    /// family past `sigma + margin`, up to rounding in the margin.
    pub fn separates(&self, families: &[PoleFamily]) -> bool {
        let (left_max, right_min) = separation_interval(families);
        let slack = 1e-12 * (1.0 + self.sigma.abs());
        self.separation_margin >= 0.5 * MIN_SEPARATION_GAP
            && left_max <= self.sigma - self.separation_margin + slack
            && right_min >= self.sigma + self.separation_margin - slack
    }
}

/// A pole passed on the wrong side by a straight line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossedPole {
    pub location: Complex64,
    pub source: Factor,
    pub n: u64,
    pub side: Side,
}

/// Where to put the line and which poles it crosses.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPlan {
    pub sigma: f64,
    /// Distance from the line to the nearest pole real part (capped at 0.5).
    pub margin: f64,
    pub left_max: f64,
    pub right_min: f64,
    pub separable: bool,
    pub crossings: Vec<CrossedPole>,
}

/// Picks the abscissa for an integrand.
///
/// Separable integrands use [`choose_abscissa`]. Otherwise the line is put
/// where it crosses the fewest poles, breaking ties by distance to the
/// nearest pole. Fails when a left and a right family share a pole, since
/// then no separating contour exists at all.
pub fn plan_contour(f: &GammaProductIntegrand) -> Result<ContourPlan> {
    let families = pole_families(f);
    let (left_max, right_min) = separation_interval(&families);
    if let Ok(sep) = choose_abscissa(&families) {
        return Ok(ContourPlan {
            sigma: sep.sigma,
            margin: sep.margin,
            left_max,
            right_min,
            separable: true,
            crossings: Vec::new(),
        });
    }

    for &a in &f.plus_shifts {
        for &b in &f.minus_shifts {
            if is_near_pole(a + b) {
                return Err(MbError::SeparationImpossible {
                    left_max,
                    right_min,
                    detail: format!("left family of Γ({a}+s) meets right family of Γ({b}-s)"),
                });
            }
        }
    }

    // Candidate lines: midpoints between consecutive pole real parts in the
    // overlap window, plus one line just outside each end.
    let lo = right_min - 1.0;
    let hi = left_max + 1.0;
    let mut reals = Vec::new();
    for fam in &families {
        let mut n = 0;
        loop {
            let re = fam.member(n).re;
            if re < lo || re > hi {
                if (fam.side == Side::Left && re < lo) || (fam.side == Side::Right && re > hi) {
                    break;
                }
            } else {
                reals.push(re);
            }
            n += 1;
        }
    }
    reals.sort_by(|x, y| x.total_cmp(y));
    reals.dedup_by(|x, y| (*x - *y).abs() < CONFLUENCE_TOL);
    let mut candidates: Vec<f64> = reals.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    if let (Some(first), Some(last)) = (reals.first(), reals.last()) {
        candidates.push(first - MAX_MARGIN);
        candidates.push(last + MAX_MARGIN);
    }

    let score = |sigma: f64| {
        let crossed: u64 = families.iter().map(|fam| fam.crossings(sigma)).sum();
        let dist = families
            .iter()
            .map(|fam| fam.distance(sigma))
            .fold(f64::INFINITY, f64::min);
        (crossed, dist)
    };
    let best = candidates
        .iter()
        .map(|&s| (s, score(s)))
        .filter(|(_, (_, d))| *d >= 0.5 * MIN_SEPARATION_GAP)
        .min_by(|(_, (c1, d1)), (_, (c2, d2))| c1.cmp(c2).then(d2.total_cmp(d1)));
    let Some((sigma, (_, dist))) = best else {
        return Err(MbError::SeparationImpossible {
            left_max,
            right_min,
            detail: "no straight line keeps clear of the poles".into(),
        });
    };

    let mut crossings = Vec::new();
    for fam in &families {
        for n in 0..fam.crossings(sigma) {
            crossings.push(CrossedPole {
                location: fam.member(n),
                source: fam.source,
                n,
                side: fam.side,
            });
        }
    }
    Ok(ContourPlan {
        sigma,
        margin: dist.min(MAX_MARGIN),
        left_max,
        right_min,
        separable: false,
        crossings,
    })
}

/// Quadrature knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Relative tolerance (absolute floor [`ABS_FLOOR`]).
    pub tol: f64,
    /// Upper limit for the truncation height.
    pub max_height: f64,
    pub max_halvings: u32,
    pub initial_step: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            tol: 1e-10,
            max_height: 200.0,
            max_halvings: 20,
            initial_step: 0.5,
        }
    }
}

impl From<f64> for QuadratureSettings {
    fn from(tol: f64) -> Self {
        Self::with_tol(tol)
    }
}

impl QuadratureSettings {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSettings {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureStatus {
    Converged,
    ToleranceNotMet,
}

impl QuadratureStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadratureStatus::Converged => "converged",
            QuadratureStatus::ToleranceNotMet => "tolerance_not_met",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    /// The value of (1/2πi) ∫ f(s) ds.
    pub value: Complex64,
    /// Last step-halving difference relative to max(|value|, 2·floor/tol).
    pub error_estimate: f64,
    pub nodes: usize,
    pub status: QuadratureStatus,
    /// The line actually integrated, with the final step.
    pub contour: Contour,
    /// Sum of the residue corrections included in `value`.
    pub correction: Complex64,
    pub crossed_poles: usize,
}

/// Truncation height for tolerance `tol`, capped at the default maximum.
pub fn truncation_height(f: &GammaProductIntegrand, sigma: f64, tol: f64) -> Result<f64> {
    let cap = QuadratureSettings::default().max_height;
    truncation_height_capped(f, sigma, tol, cap).map(|(t, _)| t)
}

/// Smallest T whose estimated tail beyond ±T is at most tol/4 of the
/// integral's scale; the flag is false when the cap was reached first.
///
/// The tail past T is bounded by |f(σ±iT)| / rate, with the rate reduced
/// for the algebraic factor |t|^p.
pub fn truncation_height_capped(
    f: &GammaProductIntegrand,
    sigma: f64,
    tol: f64,
    cap: f64,
) -> Result<(f64, bool)> {
    let (up, down) = f.check_integrable()?;
    let p = f.algebraic_growth(sigma).max(0.0);
    let magnitude = |t: f64| -> Result<f64> {
        Ok(match f.log_eval(Complex64::new(sigma, t))? {
            None => 0.0,
            Some(l) if l.re > gamma::MAX_LOG_MAGNITUDE => f64::INFINITY,
            Some(l) => l.re.exp(),
        })
    };
    let tail = |t: f64| -> Result<f64> {
        let r_up = (up - p / t).max(0.5 * up);
        let r_down = (down - p / t).max(0.5 * down);
        Ok((magnitude(t)? / r_up + magnitude(-t)? / r_down) / (2.0 * PI))
    };

    // Scale of the integral from a coarse trapezoid over the central part.
    let mut coarse = Complex64::new(0.0, 0.0);
    let mut peak: f64 = 0.0;
    for k in -32..=32 {
        let v = f.eval(Complex64::new(sigma, 0.25 * k as f64))?;
        peak = peak.max(v.norm());
        coarse += v;
    }
    let scale = (coarse.norm() * 0.25 / (2.0 * PI)).max(1e-6 * peak);
    let target = (tol * scale).max(ABS_FLOOR) / 4.0;

    let mut hi = 1.0;
    while tail(hi)? > target {
        if hi >= cap {
            return Ok((cap, false));
        }
        hi = (2.0 * hi).min(cap);
    }
    let mut lo = 0.5 * hi;
    if tail(lo)? > target {
        for _ in 0..8 {
            let mid = 0.5 * (lo + hi);
            if tail(mid)? > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    Ok((hi, true))
}

fn eval_nodes(f: &GammaProductIntegrand, sigma: f64, ts: &[f64]) -> Result<Complex64> {
    let values: Vec<Complex64> = ts
        .par_iter()
        .map(|&t| f.eval(Complex64::new(sigma, t)))
        .collect::<Result<_>>()?;
    // Fixed index order keeps the sum bit-reproducible.
    Ok(values
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v))
}

/// One trapezoid sum (1/2π) h Σ f(σ + i k h) over |k h| ≤ height.
pub fn trapezoid_line(
    f: &GammaProductIntegrand,
    sigma: f64,
    height: f64,
    step: f64,
) -> Result<Complex64> {
    let n = (height / step).ceil() as i64;
    let interior: Vec<f64> = (-n + 1..n).map(|k| k as f64 * step).collect();
    let ends = f.eval(Complex64::new(sigma, n as f64 * step))?
        + f.eval(Complex64::new(sigma, -(n as f64) * step))?;
    let sum = eval_nodes(f, sigma, &interior)? + 0.5 * ends;
    Ok(sum * step / (2.0 * PI))
}

/// Step-halving trapezoid on the line, without any separation check.
fn integrate_line(
    f: &GammaProductIntegrand,
    sigma: f64,
    height: f64,
    height_ok: bool,
    margin: f64,
    settings: &QuadratureSettings,
) -> Result<QuadratureResult> {
    let h0 = settings.initial_step;
    let n0 = (height / h0).ceil().max(1.0) as i64;
    let top = n0 as f64 * h0;

    let interior: Vec<f64> = (-n0 + 1..n0).map(|k| k as f64 * h0).collect();
    let ends = f.eval(Complex64::new(sigma, top))? + f.eval(Complex64::new(sigma, -top))?;
    let mut sum = eval_nodes(f, sigma, &interior)? + 0.5 * ends;
    let mut nodes = interior.len() + 2;
    let mut step = h0;
    let mut estimate = sum * step / (2.0 * PI);
    let mut diff = f64::INFINITY;

    for level in 1..=settings.max_halvings {
        step *= 0.5;
        let half = n0 << (level - 1);
        let fresh: Vec<f64> = (-half..half).map(|j| (2 * j + 1) as f64 * step).collect();
        sum += eval_nodes(f, sigma, &fresh)?;
        nodes += fresh.len();
        let next = sum * step / (2.0 * PI);
        diff = (next - estimate).norm();
        estimate = next;
        if level >= 2 && diff <= (0.5 * settings.tol * estimate.norm()).max(ABS_FLOOR) {
            let scale = estimate.norm().max(2.0 * ABS_FLOOR / settings.tol);
            return Ok(QuadratureResult {
                value: estimate,
                error_estimate: diff / scale,
                nodes,
                status: if height_ok {
                    QuadratureStatus::Converged
                } else {
                    QuadratureStatus::ToleranceNotMet
                },
                contour: Contour {
                    sigma,
                    height: top,
                    step,
                    separation_margin: margin,
                },
                correction: Complex64::new(0.0, 0.0),
                crossed_poles: 0,
            });
        }
    }
    Err(MbError::NoConvergence {
        iterations: settings.max_halvings as usize,
        last_difference: diff,
    })
}

/// (1/2πi) ∫ f(s) ds along a separating vertical contour.
///
/// `contour.height` and `contour.step` are the truncation height and the
/// starting step; the result carries the final step.
pub fn integrate(
    f: &GammaProductIntegrand,
    contour: &Contour,
    settings: &QuadratureSettings,
) -> Result<QuadratureResult> {
    f.check_integrable()?;
    let families = pole_families(f);
    if !contour.separates(&families) {
        let (left_max, right_min) = separation_interval(&families);
        return Err(MbError::SeparationImpossible {
            left_max,
            right_min,
            detail: format!(
                "line at sigma = {} with margin {} does not separate the poles",
                contour.sigma, contour.separation_margin
            ),
        });
    }
    let settings = QuadratureSettings {
        initial_step: contour.step,
        ..*settings
    };
    integrate_line(
        f,
        contour.sigma,
        contour.height,
        true,
        contour.separation_margin,
        &settings,
    )
}

/// Builds the separating contour for `f` (straight line, truncation height
/// from the decay rates) and integrates along it.
pub fn integrate_auto(
    f: &GammaProductIntegrand,
    settings: &QuadratureSettings,
) -> Result<QuadratureResult> {
    f.check_integrable()?;
    let sep = choose_abscissa(&pole_families(f))?;
    let (height, _) = truncation_height_capped(f, sep.sigma, settings.tol, settings.max_height)?;
    let contour = Contour {
        sigma: sep.sigma,
        height,
        step: settings.initial_step,
        separation_margin: sep.margin,
    };
    integrate(f, &contour, settings)
}

/// What must be added to the line integral at `plan.sigma` to obtain the
/// separating-contour integral.
pub fn residue_correction(f: &GammaProductIntegrand, plan: &ContourPlan) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for pole in &plan.crossings {
        let res = f.residue(pole.source, pole.n)?;
        match pole.side {
            Side::Right => total -= res,
            Side::Left => total += res,
        }
    }
    Ok(total)
}

/// (1/2πi) ∫ f(s) ds over a contour that separates the left families from
/// the right ones, realized as a straight line plus residues.
///
/// A right-family pole left of the line and a left-family pole right of it
/// are both reached by deforming the separating contour across them; the
/// curved integral equals the line integral minus Res f at the former and
/// plus Res f at the latter.
pub fn integrate_with_residue_correction(
    f: &GammaProductIntegrand,
    settings: &QuadratureSettings,
) -> Result<QuadratureResult> {
    f.check_integrable()?;
    let plan = plan_contour(f)?;
    let correction = residue_correction(f, &plan)?;
    // Corrections can dominate the line integral; aim the line tolerance at
    // the size of the final answer.
    let (height, height_ok) =
        truncation_height_capped(f, plan.sigma, settings.tol, settings.max_height)?;
    let mut result = integrate_line(f, plan.sigma, height, height_ok, plan.margin, settings)?;
    if !plan.crossings.is_empty() {
        let line = result.value;
        let total = line + correction;
        if total.norm() < line.norm() {
            // Cancellation against the residues: tighten and redo the line.
            let boost = (total.norm() / line.norm()).max(1e-4);
            let tighter = QuadratureSettings {
                tol: (settings.tol * boost).max(1e-15),
                ..*settings
            };
            let (height, height_ok) =
                truncation_height_capped(f, plan.sigma, tighter.tol, settings.max_height)?;
            result = integrate_line(f, plan.sigma, height, height_ok, plan.margin, &tighter)?;
        }
        let line_abs_err =
            result.error_estimate * result.value.norm().max(2.0 * ABS_FLOOR / settings.tol);
        result.value += correction;
        let scale = result.value.norm().max(2.0 * ABS_FLOOR / settings.tol);
        result.error_estimate = line_abs_err / scale;
        if result.error_estimate > settings.tol {
            result.status = QuadratureStatus::ToleranceNotMet;
        }
    }
    result.correction = correction;
    result.crossed_poles = plan.crossings.len();
    Ok(result)
}

/// (t, log10 |f(σ+it)|) on an even grid over [-height, height]; `None`
/// where f vanishes.
pub fn magnitude_samples(
    f: &GammaProductIntegrand,
    sigma: f64,
    height: f64,
    count: usize,
) -> Result<Vec<(f64, Option<f64>)>> {
    let count = count.max(2);
    (0..count)
        .map(|k| {
            let t = -height + 2.0 * height * k as f64 / (count - 1) as f64;
            let l = f.log_eval(Complex64::new(sigma, t))?;
            Ok((t, l.map(|l| l.re / std::f64::consts::LN_10)))
        })
        .collect()
}
