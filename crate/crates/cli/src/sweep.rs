//! Seeded random sweeps over identity checks.
//!
//! Parameters are drawn with Re uniform in [0.1, 1.4] and Im uniform in
//! [-1, 1]. Draws that sit near a gamma pole, or whose contour would have to
//! pass close to a pole, are rejected and counted. Accepted cases are checked
//! in parallel and returned in draw order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use mbkit_core::contour::{plan_contour, GammaProductIntegrand};
use mbkit_core::identities::{
    bailey_3f2_check, barnes_integrand, barnes_lemma_integrand, barnes_series_check,
    connection_formula_check, derivative_match_at_one, first_barnes_lemma, gauss_summation_check,
    main_theorem_check, main_theorem_integrand, rice_generating_report, rice_integral_check,
    CheckConfig, IdentityReport,
};
use mbkit_core::series::HypParams;
use mbkit_core::{Complex64, MbError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Smallest accepted distance from a contour to the nearest pole.
pub const MIN_MARGIN: f64 = 0.02;
/// Smallest accepted distance from a gamma argument to a pole.
pub const MIN_POLE_DISTANCE: f64 = 0.05;
/// Smallest accepted |arg z| for Barnes-integral draws; below it the
/// integrand decays too slowly for the height cap.
pub const MIN_BARNES_ANGLE: f64 = 0.35;
/// Terms kept in the generating-function check.
pub const GENERATING_TERMS: u32 = 25;
/// Highest derivative order cycled through by the derivative sweep.
pub const MAX_DERIVATIVE_ORDER: u32 = 6;
/// Highest Rice degree cycled through by the Rice sweep.
pub const MAX_RICE_DEGREE: u32 = 5;

const MAX_ATTEMPTS_PER_SAMPLE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Barnes1,
    Barnes,
    Gauss,
    Connection,
    Main,
    Derivative,
    Bailey,
    Rice,
    Generating,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Barnes1,
        Identity::Barnes,
        Identity::Gauss,
        Identity::Connection,
        Identity::Main,
        Identity::Derivative,
        Identity::Bailey,
        Identity::Rice,
        Identity::Generating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Barnes1 => "barnes1",
            Identity::Barnes => "barnes",
            Identity::Gauss => "gauss",
            Identity::Connection => "connection",
            Identity::Main => "main",
            Identity::Derivative => "derivative",
            Identity::Bailey => "bailey",
            Identity::Rice => "rice",
            Identity::Generating => "generating",
        }
    }

    /// Column names of the drawn parameters, in output order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Identity::Barnes1 => &["a", "b", "c", "d"],
            Identity::Barnes | Identity::Connection | Identity::Main => &["a", "b", "c", "z"],
            Identity::Gauss => &["a", "b", "c"],
            Identity::Derivative => &["a", "b", "c", "n"],
            Identity::Bailey => &["alpha1", "alpha2", "alpha3", "beta1", "beta2"],
            Identity::Rice => &["xi", "p", "q", "v", "n"],
            Identity::Generating => &["xi", "p", "v", "t"],
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Identity::ALL.iter().map(|i| i.name()).collect();
                format!(
                    "unknown identity '{s}' (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamValue {
    Complex(Complex64),
    Order(u32),
}

/// One accepted draw.
#[derive(Debug, Clone, PartialEq)]
pub enum Case {
    Barnes1 {
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    },
    Barnes {
        params: HypParams,
        z: Complex64,
    },
    Gauss {
        params: HypParams,
    },
    Connection {
        params: HypParams,
        z: Complex64,
    },
    Main {
        params: HypParams,
        z: Complex64,
    },
    Derivative {
        params: HypParams,
        n: u32,
    },
    Bailey {
        alpha: [Complex64; 3],
        beta: [Complex64; 2],
    },
    Rice {
        xi: Complex64,
        p: Complex64,
        q: Complex64,
        v: Complex64,
        n: u32,
    },
    Generating {
        xi: Complex64,
        p: Complex64,
        v: Complex64,
        t: Complex64,
    },
}

impl Case {
    /// Parameter values in the order of [`Identity::param_names`].
    pub fn values(&self) -> Vec<ParamValue> {
        use ParamValue::{Complex as C, Order as N};
        match *self {
            Case::Barnes1 { a, b, c, d } => vec![C(a), C(b), C(c), C(d)],
            Case::Barnes { params: p, z }
            | Case::Connection { params: p, z }
            | Case::Main { params: p, z } => {
                vec![C(p.a), C(p.b), C(p.c), C(z)]
            }
            Case::Gauss { params: p } => vec![C(p.a), C(p.b), C(p.c)],
            Case::Derivative { params: p, n } => vec![C(p.a), C(p.b), C(p.c), N(n)],
            Case::Bailey { alpha, beta } => {
                alpha.iter().chain(beta.iter()).map(|&x| C(x)).collect()
            }
            Case::Rice { xi, p, q, v, n } => vec![C(xi), C(p), C(q), C(v), N(n)],
            Case::Generating { xi, p, v, t } => vec![C(xi), C(p), C(v), C(t)],
        }
    }

    pub fn check(&self, cfg: CheckConfig) -> Result<IdentityReport, MbError> {
        match *self {
            Case::Barnes1 { a, b, c, d } => first_barnes_lemma(a, b, c, d, cfg),
            Case::Barnes { params, z } => barnes_series_check(&params, z, cfg),
            Case::Gauss { params } => gauss_summation_check(&params, cfg),
            Case::Connection { params, z } => connection_formula_check(&params, z, cfg),
            Case::Main { params, z } => main_theorem_check(&params, z, cfg),
            Case::Derivative { params, n } => derivative_match_at_one(&params, n, cfg),
            Case::Bailey { alpha, beta } => bailey_3f2_check(alpha, beta, cfg),
            Case::Rice { xi, p, q, v, n } => rice_integral_check(xi, p, q, v, n, cfg),
            Case::Generating { xi, p, v, t } => {
                rice_generating_report(xi, p, v, t, GENERATING_TERMS, cfg)
            }
        }
    }
}

/// Parameters given on the command line instead of drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExplicitParams {
    pub a: Option<Complex64>,
    pub b: Option<Complex64>,
    pub c: Option<Complex64>,
    pub d: Option<Complex64>,
    pub z: Option<Complex64>,
    pub xi: Option<Complex64>,
    pub p: Option<Complex64>,
    pub q: Option<Complex64>,
    pub v: Option<Complex64>,
    pub n: Option<u32>,
}

impl ExplicitParams {
    pub fn is_empty(&self) -> bool {
        *self == ExplicitParams::default()
    }

    /// The single case these parameters describe. For `generating`, `z`
    /// supplies t.
    pub fn case(&self, identity: Identity) -> Result<Case, String> {
        fn need<T>(x: Option<T>, name: &str, identity: Identity) -> Result<T, String> {
            x.ok_or_else(|| format!("--{name} is required for an explicit {identity} check"))
        }
        let hyp = || -> Result<HypParams, String> {
            Ok(HypParams::new(
                need(self.a, "a", identity)?,
                need(self.b, "b", identity)?,
                need(self.c, "c", identity)?,
            ))
        };
        let z = || need(self.z, "z", identity);
        Ok(match identity {
            Identity::Barnes1 => {
                let h = hyp()?;
                Case::Barnes1 {
                    a: h.a,
                    b: h.b,
                    c: h.c,
                    d: need(self.d, "d", identity)?,
                }
            }
            Identity::Barnes => Case::Barnes {
                params: hyp()?,
                z: z()?,
            },
            Identity::Connection => Case::Connection {
                params: hyp()?,
                z: z()?,
            },
            Identity::Main => Case::Main {
                params: hyp()?,
                z: z()?,
            },
            Identity::Gauss => Case::Gauss { params: hyp()? },
            Identity::Derivative => Case::Derivative {
                params: hyp()?,
                n: need(self.n, "n", identity)?,
            },
            Identity::Rice => Case::Rice {
                xi: need(self.xi, "xi", identity)?,
                p: need(self.p, "p", identity)?,
                q: need(self.q, "q", identity)?,
                v: need(self.v, "v", identity)?,
                n: need(self.n, "n", identity)?,
            },
            Identity::Generating => Case::Generating {
                xi: need(self.xi, "xi", identity)?,
                p: need(self.p, "p", identity)?,
                v: need(self.v, "v", identity)?,
                t: z()?,
            },
            Identity::Bailey => {
                return Err("bailey parameters cannot be given explicitly; they are drawn".into())
            }
        })
    }
}

fn param(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(0.1..=1.4), rng.gen_range(-1.0..=1.0))
}

/// Uniform point of the closed disc |w - center| ≤ radius.
fn disc(rng: &mut ChaCha8Rng, center: Complex64, radius: f64) -> Complex64 {
    let r = radius * rng.gen_range(0.0f64..=1.0).sqrt();
    let theta = rng.gen_range(-PI..PI);
    center + Complex64::from_polar(r, theta)
}

/// Distance from x to the nearest non-positive integer.
pub fn pole_distance(x: Complex64) -> f64 {
    let k = x.re.round().min(0.0);
    (x - Complex64::new(k, 0.0)).norm()
}

fn clear_of_poles(xs: &[Complex64]) -> bool {
    xs.iter().all(|&x| pole_distance(x) >= MIN_POLE_DISTANCE)
}

/// A straight line separates the pole families with room to spare.
pub fn well_separated(f: &GammaProductIntegrand) -> bool {
    plan_contour(f)
        .map(|p| p.separable && p.margin >= MIN_MARGIN)
        .unwrap_or(false)
}

fn draw_case(identity: Identity, rng: &mut ChaCha8Rng, index: usize) -> Option<Case> {
    let one = Complex64::new(1.0, 0.0);
    match identity {
        Identity::Barnes1 => {
            let (a, b, c, d) = (param(rng), param(rng), param(rng), param(rng));
            (clear_of_poles(&[a + c, a + d, b + c, b + d, a + b + c + d])
                && well_separated(&barnes_lemma_integrand(a, b, c, d)))
            .then_some(Case::Barnes1 { a, b, c, d })
        }
        Identity::Barnes => {
            let params = HypParams::new(param(rng), param(rng), param(rng));
            let r = 0.6 * rng.gen_range(0.0f64..=1.0).sqrt();
            let theta = rng.gen_range(-PI..PI);
            let z = Complex64::from_polar(r, theta);
            (r > 0.0
                && theta.abs() >= MIN_BARNES_ANGLE
                && clear_of_poles(&[params.c])
                && well_separated(&barnes_integrand(&params, z)))
            .then_some(Case::Barnes { params, z })
        }
        Identity::Gauss => {
            let m = rng.gen_range(0..=8u32);
            let (b, c) = (param(rng), param(rng));
            let params = HypParams::new(Complex64::new(-(m as f64), 0.0), b, c);
            clear_of_poles(&[c, c - b]).then_some(Case::Gauss { params })
        }
        Identity::Connection => {
            let params = HypParams::new(param(rng), param(rng), param(rng));
            let z = disc(rng, Complex64::new(0.5, 0.0), 0.35);
            let excess = params.c - params.a - params.b;
            let off_integer =
                (excess - Complex64::new(excess.re.round(), 0.0)).norm() >= MIN_POLE_DISTANCE;
            (off_integer && clear_of_poles(&[params.c, params.c - params.a, params.c - params.b]))
                .then_some(Case::Connection { params, z })
        }
        Identity::Main => {
            let params = HypParams::new(param(rng), param(rng), param(rng));
            let z = disc(rng, one, 0.6);
            let HypParams { a, b, c } = params;
            (clear_of_poles(&[c, c - a, c - b])
                && well_separated(&main_theorem_integrand(&params, Some(z), 0)))
            .then_some(Case::Main { params, z })
        }
        Identity::Derivative => {
            let params = HypParams::new(param(rng), param(rng), param(rng));
            let n = (index as u32) % (MAX_DERIVATIVE_ORDER + 1);
            let HypParams { a, b, c } = params;
            (clear_of_poles(&[c, c - a, c - b])
                && well_separated(&main_theorem_integrand(&params, None, n)))
            .then_some(Case::Derivative { params, n })
        }
        Identity::Bailey => {
            let (a1, a2) = (param(rng), param(rng));
            let u1 = param(rng);
            let u2 = param(rng);
            // Every fourth draw terminates through alpha3 = -m.
            let (a3, b2) = if index % 4 == 3 {
                let m = rng.gen_range(1..=4u32);
                (Complex64::new(-(m as f64), 0.0), u2)
            } else {
                let a3 = param(rng);
                (a3, a3 + one + u2)
            };
            let b1 = a1 + a2 + u1;
            let f = GammaProductIntegrand::new(
                vec![a1, a2, b2 - a3],
                vec![b1 - a1 - a2, Complex64::new(0.0, 0.0)],
                vec![b2],
                None,
            );
            (clear_of_poles(&[b1, b2, b1 - a1, b1 - a2, b2 - a3]) && well_separated(&f)).then_some(
                Case::Bailey {
                    alpha: [a1, a2, a3],
                    beta: [b1, b2],
                },
            )
        }
        Identity::Rice => {
            let (xi, q, u, v) = (param(rng), param(rng), param(rng), param(rng));
            let p = q + xi + u;
            let n = (index as u32) % (MAX_RICE_DEGREE + 1);
            clear_of_poles(&[p, p - q, p - xi]).then_some(Case::Rice { xi, p, q, v, n })
        }
        Identity::Generating => {
            let (xi, p) = (param(rng), param(rng));
            let v = 0.4 * param(rng);
            let t = disc(rng, Complex64::new(0.0, 0.0), 0.2);
            (clear_of_poles(&[p]) && t.norm() > 0.0).then_some(Case::Generating { xi, p, v, t })
        }
    }
}

/// Accepted draws in order, plus the number of rejected ones.
pub fn draw_cases(identity: Identity, seed: u64, samples: usize) -> (Vec<Case>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(samples);
    let mut rejected = 0;
    let budget = samples.saturating_mul(MAX_ATTEMPTS_PER_SAMPLE);
    while cases.len() < samples && cases.len() + rejected < budget {
        match draw_case(identity, &mut rng, cases.len()) {
            Some(c) => cases.push(c),
            None => rejected += 1,
        }
    }
    (cases, rejected)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub case: Case,
    pub outcome: Result<IdentityReport, MbError>,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(r) if r.passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub samples: usize,
    pub rejected: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass_rate: f64,
    /// Largest residual over rows that produced one.
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub identity: Identity,
    pub rows: Vec<SweepRow>,
    pub rejected: usize,
}

impl Sweep {
    pub fn summary(&self) -> SweepSummary {
        let passed = self.rows.iter().filter(|r| r.passed()).count();
        let max_residual = self
            .rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok().map(|rep| rep.residual))
            .fold(0.0, f64::max);
        let samples = self.rows.len();
        SweepSummary {
            samples,
            rejected: self.rejected,
            passed,
            failed: samples - passed,
            pass_rate: if samples == 0 {
                1.0
            } else {
                passed as f64 / samples as f64
            },
            max_residual,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(SweepRow::passed)
    }
}

/// Draws `samples` cases and checks them concurrently.
pub fn run_sweep(identity: Identity, seed: u64, samples: usize, cfg: CheckConfig) -> Sweep {
    let (cases, rejected) = draw_cases(identity, seed, samples);
    run_cases(identity, cases, rejected, cfg)
}

/// Checks given cases concurrently, keeping their order.
pub fn run_cases(identity: Identity, cases: Vec<Case>, rejected: usize, cfg: CheckConfig) -> Sweep {
    let rows = cases
        .into_par_iter()
        .enumerate()
        .map(|(index, case)| {
            let outcome = case.check(cfg);
            SweepRow {
                index,
                case,
                outcome,
            }
        })
        .collect();
    Sweep {
        identity,
        rows,
        rejected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_round_trip() {
        for i in Identity::ALL {
            assert_eq!(i.name().parse::<Identity>(), Ok(i));
        }
        assert!("barnes2".parse::<Identity>().is_err());
    }

    #[test]
    fn draws_are_reproducible() {
        for i in Identity::ALL {
            let (a, ra) = draw_cases(i, 7, 12);
            let (b, rb) = draw_cases(i, 7, 12);
            assert_eq!(a, b);
            assert_eq!(ra, rb);
            assert_eq!(a.len(), 12, "{i}");
            for c in &a {
                assert_eq!(c.values().len(), i.param_names().len());
            }
        }
    }

    #[test]
    fn draws_stay_in_range() {
        let (cases, _) = draw_cases(Identity::Barnes1, 3, 200);
        for c in cases {
            for v in c.values() {
                let ParamValue::Complex(x) = v else {
                    unreachable!()
                };
                assert!((0.1..=1.4).contains(&x.re) && (-1.0..=1.0).contains(&x.im));
            }
        }
    }

    #[test]
    fn empty_sweep() {
        let s = run_sweep(Identity::Gauss, 1, 0, CheckConfig::from(1e-10));
        assert!(s.rows.is_empty() && s.all_passed());
        assert_eq!(s.summary().pass_rate, 1.0);
    }

    #[test]
    fn pole_distance_examples() {
        assert!((pole_distance(Complex64::new(-1.02, 0.0)) - 0.02).abs() < 1e-12);
        assert!((pole_distance(Complex64::new(0.3, 0.4)) - 0.5).abs() < 1e-12);
        assert!((pole_distance(Complex64::new(2.0, 0.0)) - 2.0).abs() < 1e-12);
    }
}
