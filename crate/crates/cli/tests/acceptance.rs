//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always print. Exits non-zero
//! if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use mbkit_cli::sweep::{draw_cases, run_sweep, Case, Identity, Sweep};
use mbkit_core::contour::{
    integrate, pole_families, separation_interval, truncation_height, Contour, QuadratureSettings,
};
use mbkit_core::gamma::gamma;
use mbkit_core::identities::{
    bailey_3f2_check, barnes_lemma_integrand, connection_rhs, derivative_match_at_one,
    derivative_shift_check, f21_main_theorem, first_barnes_lemma, residual, rice_integral_check,
    CheckConfig,
};
use mbkit_core::series::{f21_series, HypParams};
use mbkit_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// Max residual and failure count of a sweep at its own threshold.
fn sweep_stats(s: &Sweep) -> (f64, usize) {
    let sum = s.summary();
    (sum.max_residual, sum.failed)
}

fn sweep_verdict(s: &Sweep, want: usize, tol: f64) -> Verdict {
    let (max, failed) = sweep_stats(s);
    let errors: Vec<String> = s
        .rows
        .iter()
        .filter_map(|r| {
            r.outcome
                .as_ref()
                .err()
                .map(|e| format!("row {}: {e}", r.index))
        })
        .take(3)
        .collect();
    let ok = s.rows.len() == want && failed == 0 && max <= tol;
    let mut d = format!(
        "{} draws ({} rejected), max residual {max:.2e} (<= {tol:e}), {failed} failed",
        s.rows.len(),
        s.rejected
    );
    if !errors.is_empty() {
        d.push_str(&format!("; {}", errors.join("; ")));
    }
    Verdict::new(ok, d)
}

fn criterion_1() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut rec_max, mut refl_max) = (0.0f64, 0.0f64);
    let mut points = 0;
    while points < 1000 {
        let z = c(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
        let near = |w: Complex64| (w - c(w.re.round().min(0.0), 0.0)).norm() < 1e-2;
        if near(z) || near(1.0 - z) {
            continue;
        }
        points += 1;
        let g = gamma(z).unwrap();
        rec_max = rec_max.max(rel(gamma(z + 1.0).unwrap(), z * g));
        let sin = (PI * z).sin();
        refl_max = refl_max.max(rel(g * gamma(1.0 - z).unwrap(), PI / sin));
    }
    let exact = [
        (gamma(c(1.0, 0.0)).unwrap(), 1.0),
        (gamma(c(0.5, 0.0)).unwrap(), PI.sqrt()),
        (gamma(c(5.0, 0.0)).unwrap(), 24.0),
    ];
    let exact_max = exact
        .iter()
        .map(|(g, want)| (g - want).norm() / want)
        .fold(0.0, f64::max);
    Verdict::new(
        rec_max <= 1e-12 && refl_max <= 1e-12 && exact_max <= 1e-14,
        format!(
            "1000 points: recurrence {rec_max:.2e}, reflection {refl_max:.2e} (<= 1e-12); Gamma(1), Gamma(1/2), Gamma(5) {exact_max:.2e} (<= 1e-14)"
        ),
    )
}

fn criterion_2() -> Verdict {
    let s = run_sweep(Identity::Barnes1, SEED, 100, CheckConfig::from(1e-10));
    sweep_verdict(&s, 100, 1e-10)
}

fn criterion_3() -> Verdict {
    let s = run_sweep(Identity::Barnes, SEED, 50, CheckConfig::from(1e-9));
    let in_disc = s.rows.iter().all(|r| match r.case {
        Case::Barnes { z, .. } => z.norm() <= 0.6 && !(z.im == 0.0 && z.re >= 0.0),
        _ => false,
    });
    let v = sweep_verdict(&s, 50, 1e-9);
    Verdict::new(
        v.passed && in_disc,
        format!("{}, |z| <= 0.6: {in_disc}", v.detail),
    )
}

fn criterion_4() -> Verdict {
    let s = run_sweep(Identity::Main, SEED, 50, CheckConfig::from(1e-9));
    let v = sweep_verdict(&s, 50, 1e-9);
    // z = 1: the integral equals Γ(a)Γ(b)Γ(c-a)Γ(c-b)/Γ(c), so the
    // normalized value is exactly F(a, b; c; 0) = 1.
    let mut at_one: f64 = 0.0;
    let mut failures = 0;
    for row in &s.rows {
        let Case::Main { params, .. } = row.case else {
            unreachable!()
        };
        let q = QuadratureSettings::with_tol(1e-11);
        match f21_main_theorem(&params, c(1.0, 0.0), q) {
            Ok(m) => at_one = at_one.max(residual(m.value, c(1.0, 0.0))),
            Err(_) => failures += 1,
        }
    }
    Verdict::new(
        v.passed && failures == 0 && at_one <= 1e-10,
        format!(
            "{}; z = 1 against gamma product {at_one:.2e} (<= 1e-10)",
            v.detail
        ),
    )
}

fn criterion_5() -> Verdict {
    let (cases, _) = draw_cases(Identity::Derivative, SEED, 20);
    let mut worst: f64 = 0.0;
    let mut fd_worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        let Case::Derivative { params, .. } = *case else {
            unreachable!()
        };
        for n in 0..=6 {
            match derivative_match_at_one(&params, n, 1e-9) {
                Ok(r) => {
                    worst = worst.max(r.residual);
                    if !r.passed {
                        failures.push(format!("draw {i} n={n}"));
                    }
                }
                Err(e) => failures.push(format!("draw {i} n={n}: {e}")),
            }
        }
        match derivative_shift_check(&params, c(0.7, 0.2), 1e-6) {
            Ok(r) => {
                fd_worst = fd_worst.max(r.residual);
                if !r.passed {
                    failures.push(format!("draw {i} finite difference"));
                }
            }
            Err(e) => failures.push(format!("draw {i} finite difference: {e}")),
        }
    }
    Verdict::new(
        failures.is_empty() && cases.len() == 20,
        format!(
            "20 draws x n = 0..6: max residual {worst:.2e} (<= 1e-9); finite difference vs shifted integrand {fd_worst:.2e} (<= 1e-6){}",
            if failures.is_empty() { String::new() } else { format!("; failed: {}", failures.join(", ")) }
        ),
    )
}

fn criterion_6() -> Verdict {
    let s = run_sweep(Identity::Connection, SEED, 50, CheckConfig::from(1e-9));
    let v = sweep_verdict(&s, 50, 1e-9);
    let params = HypParams::new(c(0.0, 0.0), c(0.7, 0.3), c(1.2, -0.4));
    let z = c(0.45, 0.2);
    let lhs = f21_series(&params, z, 1e-16).map(|s| s.value);
    let rhs = connection_rhs(&params, z, 1e-16);
    let exact = lhs == Ok(c(1.0, 0.0)) && rhs == Ok(c(1.0, 0.0));
    Verdict::new(
        v.passed && exact,
        format!("{}; a = 0 gives exactly 1 on both sides: {exact}", v.detail),
    )
}

fn criterion_7() -> Verdict {
    let s = run_sweep(Identity::Gauss, SEED, 50, CheckConfig::from(1e-12));
    let terminating = s.rows.iter().all(|r| match r.case {
        Case::Gauss { params } => params.a.im == 0.0 && params.a.re <= 0.0 && params.a.re >= -8.0,
        _ => false,
    });
    let v = sweep_verdict(&s, 50, 1e-12);
    Verdict::new(
        v.passed && terminating,
        format!("a = -m, m <= 8: {}", v.detail),
    )
}

fn criterion_8() -> Verdict {
    let s = run_sweep(Identity::Rice, SEED, 20, CheckConfig::from(1e-9));
    let v = sweep_verdict(&s, 20, 1e-9);
    let degrees: std::collections::BTreeSet<u32> = s
        .rows
        .iter()
        .filter_map(|r| match r.case {
            Case::Rice { n, .. } => Some(n),
            _ => None,
        })
        .collect();

    // n = 0: H_0 = 1 and the integral is the first Barnes lemma with a = 0.
    let mut reduction: f64 = 0.0;
    let mut reduction_ok = true;
    for row in &s.rows {
        let Case::Rice { xi, p, q, v, n: 0 } = row.case else {
            continue;
        };
        let rice = rice_integral_check(xi, p, q, v, 0, 1e-10);
        let lemma = first_barnes_lemma(c(0.0, 0.0), p - q - xi, q, xi, 1e-10);
        match (rice, lemma, gamma(p)) {
            (Ok(r), Ok(l), Ok(gp)) => {
                reduction = reduction.max(r.residual).max(residual(r.rhs, gp * l.lhs));
                reduction_ok &= r.passed && l.passed;
            }
            _ => reduction_ok = false,
        }
    }
    reduction_ok &= reduction <= 1e-10;

    let g = run_sweep(Identity::Generating, SEED, 50, CheckConfig::from(1e-10));
    let gv = sweep_verdict(&g, 50, 1e-10);
    let t_ok = g
        .rows
        .iter()
        .all(|r| matches!(r.case, Case::Generating { t, .. } if t.norm() <= 0.2));
    Verdict::new(
        v.passed && degrees.len() == 6 && reduction_ok && gv.passed && t_ok,
        format!(
            "n = 0..5 ({} degrees): {}; n = 0 against lemma {reduction:.2e} (<= 1e-10); generating, |t| <= 0.2, N = 25: {}",
            degrees.len(),
            v.detail,
            gv.detail
        ),
    )
}

fn criterion_9() -> Verdict {
    let s = run_sweep(Identity::Bailey, SEED, 20, CheckConfig::from(1e-9));
    let v = sweep_verdict(&s, 20, 1e-9);
    let (mut term_max, mut conv_max): (f64, f64) = (0.0, 0.0);
    let mut ok = v.passed;
    for row in &s.rows {
        let Case::Bailey { alpha, .. } = row.case else {
            unreachable!()
        };
        let Ok(r) = &row.outcome else {
            ok = false;
            continue;
        };
        if alpha[2].im == 0.0 && alpha[2].re < 0.0 {
            term_max = term_max.max(r.residual);
        } else {
            conv_max = conv_max.max(r.residual);
        }
    }
    // A terminating first parameter exercises the reordering path.
    let extra = [
        (
            [c(-2.0, 0.0), c(0.4, 0.3), c(0.7, -0.2)],
            [c(1.3, 0.5), c(1.9, 0.1)],
        ),
        (
            [c(0.5, 0.0), c(-3.0, 0.0), c(0.6, 0.4)],
            [c(1.1, -0.3), c(2.2, 0.2)],
        ),
    ];
    for (alpha, beta) in extra {
        match bailey_3f2_check(alpha, beta, 1e-10) {
            Ok(r) => term_max = term_max.max(r.residual),
            Err(_) => ok = false,
        }
    }
    ok &= term_max <= 1e-10 && conv_max <= 1e-9;
    Verdict::new(
        ok,
        format!(
            "{}; terminating {term_max:.2e} (<= 1e-10), convergent {conv_max:.2e} (<= 1e-9)",
            v.detail
        ),
    )
}

fn criterion_10() -> Verdict {
    let tol = 1e-10;
    let settings = QuadratureSettings::with_tol(tol);
    let fine = QuadratureSettings::with_tol(1e-13);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (cases, _) = draw_cases(Identity::Barnes1, SEED + 1, 20);
    let (mut shift_max, mut trunc_max): (f64, f64) = (0.0, 0.0);
    let mut ok = true;
    for case in &cases {
        let Case::Barnes1 { a, b, c: cc, d } = *case else {
            unreachable!()
        };
        let f = barnes_lemma_integrand(a, b, cc, d);
        let (left, right) = separation_interval(&pole_families(&f));
        let line = |sigma: f64, height: Option<f64>, s: &QuadratureSettings| {
            let contour = Contour {
                sigma,
                height: height.unwrap_or_else(|| truncation_height(&f, sigma, s.tol).unwrap()),
                step: s.initial_step,
                separation_margin: (sigma - left).min(right - sigma),
            };
            integrate(&f, &contour, s)
        };
        let mid = 0.5 * (left + right);
        let other = left + rng.gen_range(0.2..0.8) * (right - left);
        match (line(mid, None, &settings), line(other, None, &settings)) {
            (Ok(x), Ok(y)) => shift_max = shift_max.max(rel(x.value, y.value)),
            _ => ok = false,
        }
        let t = truncation_height(&f, mid, tol).unwrap();
        match (line(mid, Some(t), &fine), line(mid, Some(2.0 * t), &fine)) {
            (Ok(x), Ok(y)) => trunc_max = trunc_max.max(rel(x.value, y.value)),
            _ => ok = false,
        }
    }

    let bin = env!("CARGO_BIN_EXE_mbkit");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("run mbkit");
    let commands: [&[&str]; 3] = [
        &[
            "verify",
            "--identity",
            "rice",
            "--samples",
            "12",
            "--seed",
            "7",
        ],
        &[
            "verify",
            "--identity",
            "main",
            "--samples",
            "12",
            "--seed",
            "7",
            "--format",
            "csv",
        ],
        &[
            "contour",
            "--method",
            "main-theorem",
            "--a",
            "0.3",
            "--b",
            "0.4",
            "--c",
            "0.2",
            "--z",
            "0.5",
        ],
    ];
    let mut identical = true;
    for args in commands {
        let (x, y) = (run(args), run(args));
        identical &= x.status.code() == Some(0) && x.stdout == y.stdout && !x.stdout.is_empty();
    }
    ok &= shift_max <= 2.0 * tol && trunc_max <= tol / 2.0 && identical;
    Verdict::new(
        ok,
        format!(
            "abscissa shift {shift_max:.2e} (<= {:e}); T doubling {trunc_max:.2e} (<= {:e}); byte-identical reports: {identical}",
            2.0 * tol,
            tol / 2.0
        ),
    )
}

type Criterion = (u32, &'static str, fn() -> Verdict, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "gamma kernel", criterion_1, Some(Duration::from_secs(1))),
        (
            2,
            "first Barnes lemma",
            criterion_2,
            Some(Duration::from_secs(30)),
        ),
        (
            3,
            "Barnes integral vs series",
            criterion_3,
            Some(Duration::from_secs(30)),
        ),
        (
            4,
            "main theorem vs series at 1 - z",
            criterion_4,
            Some(Duration::from_secs(30)),
        ),
        (
            5,
            "derivative matching",
            criterion_5,
            Some(Duration::from_secs(60)),
        ),
        (6, "connection formula", criterion_6, None),
        (7, "Gauss summation", criterion_7, None),
        (8, "Rice identity", criterion_8, None),
        (9, "Bailey 3F2 formula", criterion_9, None),
        (10, "engine invariants", criterion_10, None),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let t0 = Instant::now();
        let v = run();
        let elapsed = t0.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let passed = v.passed && in_time;
        if !passed {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" < {}s", l.as_secs()));
        println!(
            "{} [{id:>2}] {name}: {}; {:.2}s{budget}",
            if passed { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of 10 criteria passed in {:.1}s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
