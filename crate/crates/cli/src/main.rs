use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mbkit_cli::config::{DEFAULT_MAX_HEIGHT, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE};
use mbkit_cli::{
    cmd_contour, cmd_eval, cmd_verify, parse_complex, ContourRequest, EvalRequest, ExplicitParams,
    Identity, Method, OutputFormat, RunConfig,
};
use mbkit_core::series::HypParams;
use mbkit_core::Complex64;

#[derive(Parser)]
#[command(
    name = "mbkit",
    version,
    about = "Hypergeometric functions by series and Mellin-Barnes integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F(a, b; c; z) by series, Barnes integral or main-theorem integral.
    Eval(Flags),
    /// Run a seeded sweep of one identity check.
    Verify(Flags),
    /// Describe the pole families and integration line of an integrand.
    Contour(Flags),
}

#[derive(Args)]
struct Flags {
    /// Complex values are written 0.3+0.2i. eval and contour default to a = b = 1, c = 2.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    a: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c: Option<Complex64>,
    /// Fourth parameter of the lemma integrand (default 1).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    d: Option<Complex64>,
    /// Argument z (default 0.5); t for an explicit generating check.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Option<Complex64>,
    /// Rice parameters. Giving any parameter to verify runs that single case.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    xi: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    p: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    q: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    v: Option<Complex64>,
    #[arg(long)]
    n: Option<u32>,
    /// series, barnes, main-theorem or lemma (contour only).
    #[arg(long, default_value = "series")]
    method: Method,
    /// barnes1, barnes, gauss, connection, main, derivative, bailey, rice or generating.
    #[arg(long, default_value = "barnes1")]
    identity: Identity,
    #[arg(long, env = "MBKIT_TOL", default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// json or csv.
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_MAX_HEIGHT)]
    max_height: f64,
}

impl Flags {
    fn hyp(&self) -> HypParams {
        let one = Complex64::new(1.0, 0.0);
        HypParams::new(
            self.a.unwrap_or(one),
            self.b.unwrap_or(one),
            self.c.unwrap_or(2.0 * one),
        )
    }

    fn z(&self) -> Complex64 {
        self.z.unwrap_or(Complex64::new(0.5, 0.0))
    }

    fn explicit(&self) -> ExplicitParams {
        ExplicitParams {
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
            z: self.z,
            xi: self.xi,
            p: self.p,
            q: self.q,
            v: self.v,
            n: self.n,
        }
    }

    fn config(&self) -> RunConfig {
        RunConfig {
            tolerance: self.tol,
            max_height: self.max_height,
            seed: self.seed,
            samples: self.samples,
            format: self.format,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(f) => cmd_eval(
            &EvalRequest {
                method: f.method,
                params: f.hyp(),
                z: f.z(),
            },
            &f.config(),
        ),
        Command::Verify(f) => cmd_verify(f.identity, &f.explicit(), &f.config()),
        Command::Contour(f) => {
            let method = if f.method == Method::Series {
                Method::Barnes
            } else {
                f.method
            };
            cmd_contour(
                &ContourRequest {
                    method,
                    params: f.hyp(),
                    d: f.d.unwrap_or(Complex64::new(1.0, 0.0)),
                    z: f.z(),
                },
                &f.config(),
            )
        }
    };
    print!("{}", outcome.stdout);
    ExitCode::from(outcome.exit_code as u8)
}
