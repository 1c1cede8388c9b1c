//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when the analysis itself refuses the
//! input (no center, degenerate parameters, ...) and 2 for usage, parse and
//! I/O problems. Failures are reported on the error stream as one JSON
//! object. `PWQH_THREADS` caps the number of worker threads.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{canonicalize, minimal_weight_vector, CanonicalForm, FormI, PiecewiseField, Variant, Zone};
use crate::center::{beta0, center_report, period_closed_form, period_numeric_with_tol};
use crate::error::Error;
use crate::filippov::switching_analysis;
use crate::melnikov::{melnikov_poly, positive_roots, realize_roots, xi_max, PerturbationSpec};
use crate::portrait::{classify_case, render, RenderOptions};
use crate::simulate::{find_limit_cycles, integrate_with, IntegrateOptions};

#[derive(Debug, Parser)]
#[command(name = "pwqh", version, about = "Piecewise smooth quadratic quasi-homogeneous planar systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

impl From<FormArg> for Variant {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::I => Variant::I,
            FormArg::II => Variant::II,
            FormArg::III => Variant::III,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ZoneArg {
    Upper,
    Lower,
}

#[derive(Debug, Args)]
struct FormOpts {
    #[arg(long, value_enum, default_value = "I")]
    form: FormArg,
    /// Comma-separated parameters in canonical order.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<List>,
}

#[derive(Debug, Args)]
struct Output {
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonicalize a system given as JSON and report its switching sets,
    /// center status and portrait case.
    Analyze {
        input: Option<PathBuf>,
        #[command(flatten)]
        form: FormOpts,
        #[command(flatten)]
        output: Output,
    },
    /// Center condition and period function of Form I.
    Center {
        #[arg(long, allow_hyphen_values = true, default_value = "-1,1,1")]
        params: List,
        #[arg(long, default_value = "0.5,1,2,5,10")]
        radii: List,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// First order Melnikov function of a perturbation of Form I.
    Melnikov {
        /// Perturbation JSON as written by `realize`.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-1,1,1")]
        params: List,
        #[command(flatten)]
        output: Output,
    },
    /// Perturbation of degree n whose Melnikov function has the given zeros.
    Realize {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "")]
        roots: List,
        #[arg(long, allow_hyphen_values = true, default_value = "-1,1,1")]
        params: List,
        #[command(flatten)]
        output: Output,
    },
    /// Limit cycles of the perturbed system from the displacement map.
    Cycles {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-1,1,1")]
        params: List,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long = "h-range", default_value = "0.3,40")]
        h_range: List,
        #[arg(long, default_value_t = 60)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
    /// SVG phase portrait on the Poincaré disk.
    Portrait {
        #[command(flatten)]
        form: FormOpts,
        #[arg(long, default_value_t = 12)]
        grid: usize,
        #[arg(long, default_value_t = 4.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// One trajectory as CSV rows `t,x,y,event`.
    Simulate {
        #[command(flatten)]
        form: FormOpts,
        #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
        x0: List,
        #[arg(long, default_value_t = 20.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Zone to use when the start point lies on the switching line.
        #[arg(long, value_enum)]
        zone: Option<ZoneArg>,
        #[arg(long)]
        max_crossings: Option<usize>,
        #[arg(long)]
        backward: bool,
        /// Stop once the orbit leaves this distance from the origin.
        #[arg(long)]
        escape: Option<f64>,
        /// Perturbation added to Form I with weight `--eps`.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Maximum number of limit cycles from the first order Melnikov function.
    XiMax {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: Output,
    },
}

/// Comma-separated reals.
#[derive(Debug, Clone, PartialEq)]
struct List(Vec<f64>);

impl std::str::FromStr for List {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(List(Vec::new()));
        }
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"))).collect::<Result<_, _>>().map(List)
    }
}

/// Failure of a subcommand with its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            Failure::Usage(m) => ("Usage", m.clone()),
            Failure::Io(m) => ("Io", m.clone()),
            Failure::Domain(e) => (error_kind(e), e.to_string()),
        };
        json!({ "error": kind, "message": message, "exit_code": self.code() })
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroField => "ZeroField",
        Error::NotQuasiHomogeneous(_) => "NotQuasiHomogeneous",
        Error::NotQuadraticNonHomogeneous(_) => "NotQuadraticNonHomogeneous",
        Error::ZeroParameter(_) => "ZeroParameter",
        Error::DomainError { .. } => "DomainError",
        Error::NotACenter => "NotACenter",
        Error::IntegrationFailure(_) => "IntegrationFailure",
        Error::QuadratureFailure { .. } => "QuadratureFailure",
        Error::DegreeMismatch { .. } => "DegreeMismatch",
        Error::EmptyPoly => "EmptyPoly",
        Error::TooManyRoots { .. } => "TooManyRoots",
        Error::DuplicateRoots => "DuplicateRoots",
        Error::DegenerateParameter(_) => "DegenerateParameter",
        Error::RenderBudgetExceeded(_) => "RenderBudgetExceeded",
        Error::StartOnSliding { .. } => "StartOnSliding",
        Error::StepBudgetExceeded(_) => "StepBudgetExceeded",
        Error::NoReturn { .. } => "NoReturn",
        Error::InvalidArgument(_) => "InvalidArgument",
    }
}

type Outcome = Result<(Option<PathBuf>, Vec<u8>), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_file(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec(v).expect("serializable output");
    s.push(b'\n');
    s
}

fn form_from(opts: &FormOpts) -> Result<CanonicalForm, Failure> {
    let params = opts.params.as_ref().ok_or_else(|| Failure::Usage("--params is required".into()))?;
    Ok(CanonicalForm::from_params(opts.form.into(), &params.0)?)
}

fn form_i(params: &[f64]) -> Result<FormI, Failure> {
    match CanonicalForm::from_params(Variant::I, params)? {
        CanonicalForm::I(f) => Ok(f),
        _ => unreachable!(),
    }
}

fn read_spec(path: &Path) -> Result<PerturbationSpec, Failure> {
    let spec: PerturbationSpec = read_json(path)?;
    spec.validate()?;
    Ok(spec)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Analyze { input, form, output } => {
            let field: PiecewiseField = match &input {
                Some(path) => read_json(path)?,
                None => form_from(&form)?.field(),
            };
            let (canonical, record) = canonicalize(&field)?;
            let weights = [Zone::Upper, Zone::Lower]
                .map(|z| minimal_weight_vector(&field.zone(z).p, &field.zone(z).q).ok().flatten());
            let case = match classify_case(&canonical) {
                Ok(c) => json!(c),
                Err(e) => json!({ "error": error_kind(&e), "message": e.to_string() }),
            };
            let report = json!({
                "canonical": canonical,
                "transform": record,
                "weight_vectors": { "upper": weights[0], "lower": weights[1] },
                "switching": switching_analysis(&field),
                "center": center_report(&canonical),
                "case": case,
            });
            Ok((output.out, to_json(&report)))
        }
        Command::Center { params, radii, tol, output } => {
            let f = form_i(&params.0)?;
            let report = center_report(&CanonicalForm::I(f));
            let mut table = Vec::new();
            if report.is_center {
                for &r in &radii.0 {
                    let closed = period_closed_form(&f, r)?.period;
                    let quad = period_numeric_with_tol(&f, r, tol)?;
                    table.push(json!({
                        "r0": r, "T_closed": closed, "T_quad": quad,
                        "rel_err": (closed - quad).abs() / closed,
                    }));
                }
            }
            let out = json!({
                "params": params.0,
                "condition": report,
                "is_center": report.is_center,
                "beta0": beta0(&f).ok(),
                "table": table,
            });
            Ok((output.out, to_json(&out)))
        }
        Command::Melnikov { spec, params, output } => {
            let f = form_i(&params.0)?;
            let spec = read_spec(&spec)?;
            let m = melnikov_poly(&f, &spec)?;
            let roots = match positive_roots(&m) {
                Ok(r) => r,
                Err(Error::EmptyPoly) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            let xi = serde_json::to_value(&m).expect("serializable")["xi"].clone();
            let out = json!({
                "exponents": m.hhat_coefficients().iter().map(|c| c.0).collect::<Vec<_>>(),
                "xi": xi,
                "variations": m.variations(),
                "roots": roots.iter().map(|r| r.value).collect::<Vec<_>>(),
                "root_multiplicity": roots.iter().map(|r| r.multiplicity).collect::<Vec<_>>(),
                "xi_max": xi_max(spec.n),
            });
            Ok((output.out, to_json(&out)))
        }
        Command::Realize { n, roots, params, output } => {
            let f = form_i(&params.0)?;
            Ok((output.out, to_json(&realize_roots(&f, n, &roots.0)?)))
        }
        Command::Cycles { spec, params, eps, h_range, grid, output } => {
            let f = form_i(&params.0)?;
            let spec = read_spec(&spec)?;
            let &[lo, hi] = h_range.0.as_slice() else {
                return Err(Failure::Usage("--h-range takes two values `lo,hi`".into()));
            };
            let scan = find_limit_cycles(&f, &spec, eps, (lo, hi), grid)?;
            let m = melnikov_poly(&f, &spec)?;
            let mroots = match positive_roots(&m) {
                Ok(r) => r.iter().map(|r| r.value).collect(),
                Err(Error::EmptyPoly) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            let out = json!({ "eps": eps, "zeros": scan.zeros, "melnikov_roots": mroots, "skipped": scan.skipped });
            Ok((output.out, to_json(&out)))
        }
        Command::Portrait { form, grid, radius, tol, output } => {
            let f = form_from(&form)?;
            let opts = RenderOptions { grid, radius, tol, ..RenderOptions::default() };
            Ok((output.out, render(&f, &opts)?.into_bytes()))
        }
        Command::Simulate { form, x0, tmax, tol, zone, max_crossings, backward, escape, spec, eps, output } => {
            let f = form_from(&form)?;
            let &[x, y] = x0.0.as_slice() else {
                return Err(Failure::Usage("--x0 takes two values `x,y`".into()));
            };
            let field = match (&spec, f) {
                (None, _) => f.field(),
                (Some(path), CanonicalForm::I(fi)) => read_spec(path)?.perturbed_field(&fi, eps),
                (Some(_), _) => return Err(Failure::Usage("--spec applies to Form I only".into())),
            };
            let opts = IntegrateOptions {
                backward,
                start_zone: zone.map(|z| match z {
                    ZoneArg::Upper => Zone::Upper,
                    ZoneArg::Lower => Zone::Lower,
                }),
                max_crossings,
                escape_radius: escape,
                ..IntegrateOptions::new(tmax, tol)
            };
            Ok((output.out, integrate_with(&field, [x, y], &opts)?.to_csv().into_bytes()))
        }
        Command::XiMax { n, output } => Ok((output.out, to_json(&json!({ "n": n, "xi_max": xi_max(n) })))),
    }
}

fn run_pooled(cmd: Command) -> Outcome {
    let threads = std::env::var("PWQH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cmd)),
            Err(e) => Err(Failure::Usage(format!("PWQH_THREADS: {e}"))),
        },
        None => run(cmd),
    }
}

/// Runs one command line (without the program name) and returns the exit
/// status. Results go to `out` or to the `--out` file, errors to `err`.
pub fn dispatch<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("pwqh".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let f = Failure::Usage(e.to_string().trim_end().to_string());
            let _ = writeln!(err, "{}", f.to_json());
            return f.code();
        }
    };
    let result = run_pooled(cli.command).and_then(|(path, bytes)| match path {
        Some(p) => fs::write(&p, &bytes).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(&bytes).map_err(|e| Failure::Io(e.to_string())),
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.to_json());
            f.code()
        }
    }
}
