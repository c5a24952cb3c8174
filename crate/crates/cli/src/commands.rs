use std::fmt;
use std::str::FromStr;

use mbkit_core::contour::{
    magnitude_samples, plan_contour, pole_families, separation_interval, truncation_height_capped,
    Factor, GammaProductIntegrand, QuadratureSettings, Side,
};
use mbkit_core::identities::{
    barnes_integrand, barnes_lemma_integrand, f21_barnes, f21_main_theorem, main_theorem_integrand,
};
use mbkit_core::series::{f21_series, HypParams};
use mbkit_core::{Complex64, ErrorKind, MbError};
use serde::Serialize;

use crate::config::{exit, OutputFormat, RunConfig};
use crate::report::{
    fmt_f64, single_row_csv, sweep_csv, Cx, ErrorObject, RowReport, SummaryReport,
};
use crate::sweep::{run_cases, run_sweep, ExplicitParams, Identity};

/// Members listed per pole family in the contour layout.
pub const LISTED_MEMBERS: u64 = 8;
/// Magnitude samples along the line in the contour layout.
pub const MAGNITUDE_SAMPLES: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Barnes,
    MainTheorem,
    /// The four-gamma Barnes-lemma integrand; contour layouts only.
    Lemma,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Barnes => "barnes",
            Method::MainTheorem => "main-theorem",
            Method::Lemma => "lemma",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "series" => Ok(Method::Series),
            "barnes" => Ok(Method::Barnes),
            "main-theorem" => Ok(Method::MainTheorem),
            "lemma" => Ok(Method::Lemma),
            other => Err(format!(
                "unknown method '{other}' (expected series, barnes, main-theorem or lemma)"
            )),
        }
    }
}

/// What a command prints and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

fn exit_code_for(e: &MbError) -> i32 {
    match e.kind() {
        ErrorKind::Domain => exit::DOMAIN,
        ErrorKind::Numerical => exit::NUMERICAL,
    }
}

#[derive(Serialize)]
struct ConfigReport<'a> {
    #[serde(flatten)]
    run: &'a RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identity: Option<&'static str>,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    command: &'static str,
    config: ConfigReport<'a>,
    error: ErrorObject,
    summary: ErrorSummary,
}

#[derive(Serialize)]
struct ErrorSummary {
    status: &'static str,
    exit_code: i32,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn error_outcome(
    command: &'static str,
    config: ConfigReport<'_>,
    error: ErrorObject,
    exit_code: i32,
) -> Outcome {
    let stdout = match config.run.format {
        OutputFormat::Json => to_json(&ErrorDocument {
            command,
            config,
            error,
            summary: ErrorSummary {
                status: "error",
                exit_code,
            },
        }),
        OutputFormat::Csv => single_row_csv(
            &["error_kind", "error_type", "message"],
            &[
                error.kind.to_string(),
                error.label.to_string(),
                error.message,
            ],
        ),
    };
    Outcome { stdout, exit_code }
}

/// Inputs to `eval`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRequest {
    pub method: Method,
    pub params: HypParams,
    pub z: Complex64,
}

#[derive(Serialize)]
struct EvalResult {
    value: Cx,
    error_estimate: f64,
    nodes: usize,
    status: &'static str,
    contour: Option<EvalContour>,
}

#[derive(Serialize)]
struct EvalContour {
    sigma: f64,
    height: f64,
    step: f64,
    crossed_poles: usize,
}

#[derive(Serialize)]
struct EvalDocument<'a> {
    command: &'static str,
    config: ConfigReport<'a>,
    result: EvalResult,
    summary: ErrorSummary,
}

fn evaluate(req: &EvalRequest, config: &RunConfig) -> Result<EvalResult, MbError> {
    let settings = QuadratureSettings {
        tol: config.tolerance,
        max_height: config.max_height,
        ..QuadratureSettings::default()
    };
    let from_quadrature = |value: Complex64, q: mbkit_core::contour::QuadratureResult| EvalResult {
        value: value.into(),
        error_estimate: q.error_estimate,
        nodes: q.nodes,
        status: q.status.as_str(),
        contour: Some(EvalContour {
            sigma: q.contour.sigma,
            height: q.contour.height,
            step: q.contour.step,
            crossed_poles: q.crossed_poles,
        }),
    };
    match req.method {
        Method::Series => {
            let s = f21_series(&req.params, req.z, config.tolerance)?;
            Ok(EvalResult {
                value: s.value.into(),
                // The sum stops once terms fall below tol relative to it.
                error_estimate: if s.terminated { 0.0 } else { config.tolerance },
                nodes: s.terms,
                status: if s.terminated { "terminated" } else { "converged" },
                contour: None,
            })
        }
        Method::Barnes => {
            let e = f21_barnes(&req.params, req.z, settings)?;
            Ok(from_quadrature(e.value, e.quadrature))
        }
        Method::MainTheorem => {
            let e = f21_main_theorem(&req.params, req.z, settings)?;
            Ok(from_quadrature(e.value, e.quadrature))
        }
        Method::Lemma => Err(MbError::Domain(
            "the lemma integrand has no function value to evaluate; use series, barnes or main-theorem".into(),
        )),
    }
}

/// `eval`: one function value by the chosen method.
pub fn cmd_eval(req: &EvalRequest, config: &RunConfig) -> Outcome {
    let cfg = || ConfigReport {
        run: config,
        method: Some(req.method.name()),
        identity: None,
    };
    if let Err(e) = config.validate() {
        return error_outcome("eval", cfg(), ErrorObject::usage(e.0), exit::DOMAIN);
    }
    let result = match evaluate(req, config) {
        Ok(r) => r,
        Err(e) => return error_outcome("eval", cfg(), (&e).into(), exit_code_for(&e)),
    };
    let exit_code = if result.status == "tolerance_not_met" {
        exit::NUMERICAL
    } else {
        exit::OK
    };
    let stdout = match config.format {
        OutputFormat::Json => to_json(&EvalDocument {
            command: "eval",
            config: cfg(),
            summary: ErrorSummary {
                status: result.status,
                exit_code,
            },
            result,
        }),
        OutputFormat::Csv => {
            let c = result.contour.as_ref();
            single_row_csv(
                &[
                    "method",
                    "value_re",
                    "value_im",
                    "error_estimate",
                    "nodes",
                    "status",
                    "sigma",
                    "height",
                    "step",
                ],
                &[
                    req.method.name().to_string(),
                    fmt_f64(result.value.re),
                    fmt_f64(result.value.im),
                    fmt_f64(result.error_estimate),
                    result.nodes.to_string(),
                    result.status.to_string(),
                    c.map(|c| fmt_f64(c.sigma)).unwrap_or_default(),
                    c.map(|c| fmt_f64(c.height)).unwrap_or_default(),
                    c.map(|c| fmt_f64(c.step)).unwrap_or_default(),
                ],
            )
        }
    };
    Outcome { stdout, exit_code }
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    command: &'static str,
    config: ConfigReport<'a>,
    rows: Vec<RowReport>,
    summary: SummaryReport,
}

/// `verify`: a seeded sweep of one identity, or a single check when
/// `explicit` carries parameters. Exit 0 iff every row passed.
pub fn cmd_verify(identity: Identity, explicit: &ExplicitParams, config: &RunConfig) -> Outcome {
    let cfg = || ConfigReport {
        run: config,
        method: None,
        identity: Some(identity.name()),
    };
    if let Err(e) = config.validate() {
        return error_outcome("verify", cfg(), ErrorObject::usage(e.0), exit::DOMAIN);
    }
    let sweep = if explicit.is_empty() {
        run_sweep(identity, config.seed, config.samples, config.check_config())
    } else {
        match explicit.case(identity) {
            Ok(case) => run_cases(identity, vec![case], 0, config.check_config()),
            Err(msg) => {
                return error_outcome("verify", cfg(), ErrorObject::usage(msg), exit::DOMAIN)
            }
        }
    };
    let exit_code = if sweep.all_passed() {
        exit::OK
    } else {
        exit::NUMERICAL
    };
    let stdout = match config.format {
        OutputFormat::Json => to_json(&VerifyDocument {
            command: "verify",
            config: cfg(),
            rows: sweep
                .rows
                .iter()
                .map(|r| RowReport::new(identity, r))
                .collect(),
            summary: sweep.summary().into(),
        }),
        OutputFormat::Csv => sweep_csv(&sweep),
    };
    Outcome { stdout, exit_code }
}

/// Inputs to `contour`. `d` is used by the lemma integrand only; `z` by the
/// other two.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourRequest {
    pub method: Method,
    pub params: HypParams,
    pub d: Complex64,
    pub z: Complex64,
}

#[derive(Serialize)]
struct FamilyReport {
    base: Cx,
    side: &'static str,
    source: String,
    members: Vec<Cx>,
}

#[derive(Serialize)]
struct Interval {
    left_max: f64,
    right_min: f64,
}

#[derive(Serialize)]
struct CrossingReport {
    location: Cx,
    source: String,
    n: u64,
    side: &'static str,
}

#[derive(Serialize)]
struct MagnitudeSample {
    t: f64,
    /// `None` where the integrand vanishes.
    log10_abs: Option<f64>,
}

#[derive(Serialize)]
struct Layout {
    integrand: &'static str,
    families: Vec<FamilyReport>,
    interval: Interval,
    separable: bool,
    /// Pole coordinates that block a straight separating line.
    conflict: Option<Interval>,
    sigma: Option<f64>,
    margin: Option<f64>,
    crossed_poles: Vec<CrossingReport>,
    decay: Option<Decay>,
    height: Option<f64>,
    height_capped: bool,
    samples: Vec<MagnitudeSample>,
    errors: Vec<ErrorObject>,
}

#[derive(Serialize)]
struct Decay {
    up: f64,
    down: f64,
}

#[derive(Serialize)]
struct ContourSummary {
    separable: bool,
    sigma: Option<f64>,
    height: Option<f64>,
    errors: usize,
}

#[derive(Serialize)]
struct ContourDocument<'a> {
    command: &'static str,
    config: ConfigReport<'a>,
    layout: Layout,
    summary: ContourSummary,
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn factor_name(f: &GammaProductIntegrand, factor: Factor) -> String {
    match factor {
        Factor::Plus(i) => format!("gamma({} + s)", fmt_complex(f.plus_shifts[i])),
        Factor::Minus(j) => format!("gamma({} - s)", fmt_complex(f.minus_shifts[j])),
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_f64(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", fmt_f64(z.re), fmt_f64(z.im.abs()))
    }
}

fn build_integrand(req: &ContourRequest) -> (&'static str, GammaProductIntegrand) {
    let HypParams { a, b, c } = req.params;
    match req.method {
        Method::Lemma => ("lemma", barnes_lemma_integrand(a, b, c, req.d)),
        Method::Barnes | Method::Series => ("barnes", barnes_integrand(&req.params, req.z)),
        Method::MainTheorem => (
            "main-theorem",
            main_theorem_integrand(&req.params, Some(req.z), 0),
        ),
    }
}

fn layout(req: &ContourRequest, config: &RunConfig) -> Layout {
    let (name, f) = build_integrand(req);
    let families = pole_families(&f);
    let (left_max, right_min) = separation_interval(&families);
    let separable = left_max < right_min;
    let mut errors = Vec::new();

    let plan = plan_contour(&f)
        .map_err(|e| errors.push(ErrorObject::from(&e)))
        .ok();
    let decay = f
        .check_integrable()
        .map_err(|e| errors.push(ErrorObject::from(&e)))
        .ok();
    let mut height = None;
    let mut height_capped = false;
    let mut samples = Vec::new();
    if let (Some(plan), Some(_)) = (&plan, decay) {
        match truncation_height_capped(&f, plan.sigma, config.tolerance, config.max_height) {
            Ok((h, capped)) => {
                height = Some(h);
                height_capped = capped;
            }
            Err(e) => errors.push((&e).into()),
        }
        let span = height.unwrap_or(config.max_height.min(10.0));
        match magnitude_samples(&f, plan.sigma, span, MAGNITUDE_SAMPLES) {
            Ok(s) => {
                samples = s
                    .into_iter()
                    .map(|(t, log10_abs)| MagnitudeSample { t, log10_abs })
                    .collect()
            }
            Err(e) => errors.push((&e).into()),
        }
    }

    Layout {
        integrand: name,
        families: families
            .iter()
            .map(|fam| FamilyReport {
                base: fam.base.into(),
                side: side_name(fam.side),
                source: factor_name(&f, fam.source),
                members: (0..LISTED_MEMBERS).map(|n| fam.member(n).into()).collect(),
            })
            .collect(),
        interval: Interval {
            left_max,
            right_min,
        },
        separable,
        conflict: (!separable).then_some(Interval {
            left_max,
            right_min,
        }),
        sigma: plan.as_ref().map(|p| p.sigma),
        margin: plan.as_ref().map(|p| p.margin),
        crossed_poles: plan
            .as_ref()
            .map(|p| {
                p.crossings
                    .iter()
                    .map(|c| CrossingReport {
                        location: c.location.into(),
                        source: factor_name(&f, c.source),
                        n: c.n,
                        side: side_name(c.side),
                    })
                    .collect()
            })
            .unwrap_or_default(),
        decay: decay.map(|(up, down)| Decay { up, down }),
        height,
        height_capped,
        samples,
        errors,
    }
}

/// `contour`: pole families, the chosen line and magnitude samples. Never
/// fails on mathematical grounds; problems are reported inside the layout.
pub fn cmd_contour(req: &ContourRequest, config: &RunConfig) -> Outcome {
    let cfg = || ConfigReport {
        run: config,
        method: Some(req.method.name()),
        identity: None,
    };
    if let Err(e) = config.validate() {
        return error_outcome("contour", cfg(), ErrorObject::usage(e.0), exit::DOMAIN);
    }
    if req.method == Method::Series {
        return error_outcome(
            "contour",
            cfg(),
            ErrorObject::usage(
                "the series method has no contour; use barnes, main-theorem or lemma",
            ),
            exit::DOMAIN,
        );
    }
    let layout = layout(req, config);
    let stdout = match config.format {
        OutputFormat::Json => to_json(&ContourDocument {
            command: "contour",
            config: cfg(),
            summary: ContourSummary {
                separable: layout.separable,
                sigma: layout.sigma,
                height: layout.height,
                errors: layout.errors.len(),
            },
            layout,
        }),
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(Vec::new());
            w.write_record(["t", "log10_abs"]).expect("in-memory write");
            for s in &layout.samples {
                w.write_record([fmt_f64(s.t), s.log10_abs.map(fmt_f64).unwrap_or_default()])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
        }
    };
    Outcome {
        stdout,
        exit_code: exit::OK,
    }
}
