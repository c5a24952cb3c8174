//! Direct series evaluation: the ₂F₁ power series, Gauss summation at z = 1,
//! Rice polynomials and their generating function, and the ₃F₂ value at 1.
//! These are the reference values the contour integrals are checked against.

use num_complex::Complex64;

use crate::error::{MbError, Result};
use crate::gamma::{self, as_nonpositive_integer, is_admissible, log_gamma, pochhammer, POLE_TOL};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 100_000;

/// Width of the band below the unit circle that is accepted but flagged.
pub const NEAR_BOUNDARY: f64 = 1e-3;

/// Parameters (a, b, c) of F(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl HypParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        HypParams { a, b, c }
    }

    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    /// Degree of the polynomial when a or b is a non-positive integer.
    pub fn terminating_degree(&self) -> Option<u64> {
        match (
            as_nonpositive_integer(self.a),
            as_nonpositive_integer(self.b),
        ) {
            (Some(m), Some(n)) => Some(m.min(n)),
            (m, n) => m.or(n),
        }
    }

    /// Checks that the series is well defined: c admissible, or the series
    /// terminates before (c)_k vanishes. The second branch is only accepted
    /// for real parameters.
    pub fn validate(&self) -> Result<()> {
        if is_admissible(self.c) {
            return Ok(());
        }
        let big_m = as_nonpositive_integer(self.c).unwrap_or(0);
        let real = [self.a, self.b, self.c]
            .iter()
            .all(|p| p.im.abs() <= POLE_TOL);
        match self.terminating_degree() {
            Some(m) if real && m <= big_m => Ok(()),
            _ => Err(MbError::NonAdmissible(format!(
                "c = {} is a non-positive integer and the series does not terminate before (c)_k vanishes",
                self.c
            ))),
        }
    }
}

/// Outcome of a power-series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Number of terms accumulated.
    pub terms: usize,
    /// The series was a finite polynomial and was summed exactly.
    pub terminated: bool,
    /// |z| lies within [`NEAR_BOUNDARY`] of the unit circle.
    pub near_boundary: bool,
}

/// Sums a hypergeometric-type series given the ratio t_{k+1}/t_k.
///
/// Stops once three consecutive terms are below `tol * |partial sum|`.
fn sum_until_small(
    tol: f64,
    max_terms: usize,
    mut ratio: impl FnMut(usize) -> Complex64,
) -> Result<(Complex64, Complex64, usize)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..max_terms {
        term *= ratio(k);
        sum += term;
        if term.norm() < tol * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok((sum, term, k + 2));
            }
        } else {
            small = 0;
        }
    }
    Err(MbError::NoConvergence {
        iterations: max_terms,
        last_difference: term.norm(),
    })
}

/// F(a, b; c; z) by its power series.
///
/// Valid on |z| < 1, or anywhere if the series terminates. The accumulated
/// value is within about `tol / (1 - |z|)` of the true sum.
pub fn f21_series(params: &HypParams, z: Complex64, tol: f64) -> Result<SeriesSum> {
    params.validate()?;
    let HypParams { a, b, c } = *params;
    let ratio = |k: usize| {
        let k = k as f64;
        (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
    };

    if let Some(m) = params.terminating_degree() {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 0..m as usize {
            term *= ratio(k);
            sum += term;
        }
        return Ok(SeriesSum {
            value: sum,
            terms: m as usize + 1,
            terminated: true,
            near_boundary: false,
        });
    }

    let r = z.norm();
    if r >= 1.0 {
        return Err(MbError::Domain(format!(
            "|z| = {r} >= 1 and the series does not terminate"
        )));
    }
    let (value, _, terms) = sum_until_small(tol, MAX_TERMS, ratio)?;
    Ok(SeriesSum {
        value,
        terms,
        terminated: false,
        near_boundary: r >= 1.0 - NEAR_BOUNDARY,
    })
}

/// F(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)).
///
/// Terminating series whose gamma factors hit poles fall back to the
/// Vandermonde form (c-b)_m / (c)_m, which is the limit of the same ratio.
pub fn gauss_sum(params: &HypParams) -> Result<Complex64> {
    let HypParams { a, b, c } = *params;
    let excess = c - a - b;
    let gamma_args = [c, excess, c - a, c - b];

    if let Some(m) = params.terminating_degree() {
        if gamma_args.iter().all(|&g| is_admissible(g)) {
            return gamma_ratio(c, excess, c - a, c - b);
        }
        params.validate()?;
        // The terminating parameter is a or b; the other one enters (c-x)_m.
        let other = if as_nonpositive_integer(a) == Some(m) {
            b
        } else {
            a
        };
        let m = m as u32;
        return Ok(pochhammer(c - other, m) / pochhammer(c, m));
    }

    if !is_admissible(c) {
        return Err(MbError::NonAdmissible(format!("c = {c}")));
    }
    if !is_admissible(c - a) || !is_admissible(c - b) {
        return Err(MbError::NonAdmissible(format!(
            "c - a = {} or c - b = {} is a non-positive integer",
            c - a,
            c - b
        )));
    }
    if excess.re <= 0.0 {
        return Err(MbError::Domain(format!(
            "Re(c - a - b) = {} <= 0: the series diverges at z = 1",
            excess.re
        )));
    }
    gamma_ratio(c, excess, c - a, c - b)
}

fn gamma_ratio(n1: Complex64, n2: Complex64, d1: Complex64, d2: Complex64) -> Result<Complex64> {
    let log = log_gamma(n1)? + log_gamma(n2)? - log_gamma(d1)? - log_gamma(d2)?;
    gamma::exp_checked(log)
}

/// Parameters of the Rice polynomial H_n(ξ, p; v).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiceParams {
    pub xi: Complex64,
    pub p: Complex64,
    pub v: Complex64,
    pub n: u32,
}

impl RiceParams {
    pub fn validate(&self) -> Result<()> {
        for j in 0..self.n {
            if (self.p + j as f64).norm() <= POLE_TOL {
                return Err(MbError::Degenerate(format!(
                    "(p)_{} vanishes for p = {}",
                    j + 1,
                    self.p
                )));
            }
        }
        Ok(())
    }

    /// Coefficients c_j of H_n(ξ, p; v) = Σ_j c_j (ξ)_j.
    pub fn pochhammer_coefficients(&self) -> Result<Vec<Complex64>> {
        self.validate()?;
        let n = self.n as f64;
        let mut coeffs = Vec::with_capacity(self.n as usize + 1);
        let mut c = Complex64::new(1.0, 0.0);
        coeffs.push(c);
        for j in 0..self.n {
            let jf = j as f64;
            c *= (jf - n) * (n + 1.0 + jf) / ((jf + 1.0) * (jf + 1.0) * (self.p + jf)) * self.v;
            coeffs.push(c);
        }
        Ok(coeffs)
    }
}

/// H_n(ξ, p; v) = Σ_{j=0}^{n} (-n)_j (n+1)_j (ξ)_j / (j!² (p)_j) v^j.
pub fn rice_poly(params: &RiceParams) -> Result<Complex64> {
    let coeffs = params.pochhammer_coefficients()?;
    let mut xi_j = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, c) in coeffs.iter().enumerate() {
        sum += c * xi_j;
        xi_j *= params.xi + j as f64;
    }
    Ok(sum)
}

/// Both sides of the Rice generating function
/// Σ_{n≤N} tⁿ H_n(ξ,p;v) = (1-t)⁻¹ F(ξ, 1/2; p; -4vt(1-t)⁻²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// |lhs - rhs|
    pub residual: f64,
    /// 2|t|^{N+1}/(1-|t|) · max_{n≤N} |H_n|, the expected truncation size.
    pub tail_bound: f64,
}

pub fn rice_generating_check(
    xi: Complex64,
    p: Complex64,
    v: Complex64,
    t: Complex64,
    terms: u32,
    tol: f64,
) -> Result<GeneratingCheck> {
    if t.norm() >= 0.3 {
        return Err(MbError::Domain(format!(
            "|t| = {} must be below 0.3",
            t.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let w = -4.0 * v * t / ((one - t) * (one - t));
    if w.norm() >= 1.0 {
        return Err(MbError::Domain(format!(
            "series argument -4vt/(1-t)^2 = {w} lies outside the unit disc"
        )));
    }

    let mut lhs = Complex64::new(0.0, 0.0);
    let mut t_n = one;
    let mut h_max: f64 = 0.0;
    for n in 0..=terms {
        let h = rice_poly(&RiceParams { xi, p, v, n })?;
        h_max = h_max.max(h.norm());
        lhs += t_n * h;
        t_n *= t;
    }
    let f = f21_series(&HypParams::new(xi, Complex64::new(0.5, 0.0), p), w, tol)?;
    let rhs = f.value / (one - t);
    let r = t.norm();
    Ok(GeneratingCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        tail_bound: 2.0 * r.powi(terms as i32 + 1) / (1.0 - r) * h_max,
    })
}

/// Cap on terms for the ₃F₂ value at 1, whose terms decay only algebraically.
pub const MAX_TERMS_3F2: usize = 2_000_000;

/// ₃F₂(α₁, α₂, α₃; β₁, β₂; 1) by direct summation.
///
/// Non-terminating sums need Re(β₁+β₂-α₁-α₂-α₃) > 0. Their terms decay like
/// n^{-1-s} for that excess s, and the remainder after the last term t_K is
/// added as t_K (K/s - 1/2).
pub fn f32_unit(alpha: [Complex64; 3], beta: [Complex64; 2], tol: f64) -> Result<Complex64> {
    for b in beta {
        if !is_admissible(b) {
            // Only safe if the sum stops before (b)_k vanishes.
            let stop = alpha
                .iter()
                .filter_map(|&x| as_nonpositive_integer(x))
                .min();
            let bound = as_nonpositive_integer(b).unwrap_or(0);
            if stop.is_none_or(|m| m > bound) {
                return Err(MbError::NonAdmissible(format!("beta = {b}")));
            }
        }
    }
    let ratio = |k: usize| {
        let k = k as f64;
        (alpha[0] + k) * (alpha[1] + k) * (alpha[2] + k)
            / ((beta[0] + k) * (beta[1] + k) * (k + 1.0))
    };

    if let Some(m) = alpha
        .iter()
        .filter_map(|&x| as_nonpositive_integer(x))
        .min()
    {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 0..m as usize {
            term *= ratio(k);
            sum += term;
        }
        return Ok(sum);
    }

    let excess = beta[0] + beta[1] - alpha[0] - alpha[1] - alpha[2];
    if excess.re <= 0.0 {
        return Err(MbError::Domain(format!(
            "Re(β₁+β₂-α₁-α₂-α₃) = {} <= 0: the 3F2(1) series diverges",
            excess.re
        )));
    }
    let (sum, last, terms) = sum_until_small(tol, MAX_TERMS_3F2, ratio)?;
    let k = (terms - 1) as f64;
    Ok(sum + last * (k / excess - 0.5))
}
