//! Command-line front end over the whole analysis pipeline.
//!
//! Every operation is exposed as a subcommand with plain flags (no config
//! files), so any run is reproducible from its command line. Results go to
//! stdout in one of three formats (`--format text|json|csv`), diagnostics to
//! stderr. Exit codes: 0 on success (including `--help`), 1 for argument
//! and domain errors, 2 for numerical failures (missing sign change,
//! exhausted bracket, non-convergence).
//!
//! Text output prints lengths and eigenvalues with 12 decimal places and
//! renders unbounded critical lengths as `inf`; JSON output always carries
//! `"schema_version": 1`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::diagram::{sweep, SweepSpec};
use crate::error::{Error, Result};
use crate::fmt::{fmt_sig, opt_sig_json_number, sig_json_number};
use crate::oracle::{
    assemble_operator, oracle_critical_length_for_uprime, smallest_admissible_eigenvalue,
};
use crate::potential::{eval_du_dr, validate_properties, PotentialParams};
use crate::regimes::{boundaries, classify};
use crate::spectrum::{
    critical_length_for_mode, governing_mode, is_admissible, mode_eigenvalue, CriticalLength,
    ModeIndex,
};

/// Parse `args` and run the requested subcommand, writing results to `out`
/// and diagnostics to `err`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes; everything else is an
            // argument error.
            let is_info = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let (target, code): (&mut dyn Write, i32) = if is_info { (out, 0) } else { (err, 1) };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Parser)]
#[command(
    name = "filmstab",
    version,
    about = "Stability analysis for cylindrical films of wetting fluid on a rod"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Critical length of a free liquid cylinder (no wall potential).
    Classic(ClassicArgs),
    /// Regime and critical length of one film radius over a potential.
    Classify(ClassifyArgs),
    /// Regime boundary radii r1 and r2 (and the closed form when omega = 0).
    Boundaries(BoundariesArgs),
    /// Eigenvalues of the admissible perturbation modes at one geometry.
    Modes(ModesArgs),
    /// Discrete-operator verification of an eigenvalue or critical length.
    Oracle(OracleArgs),
    /// Stability diagram swept over a (radius, length) grid.
    Diagram(DiagramArgs),
    /// Check the structural properties a wall potential must satisfy.
    ValidatePotential(ValidatePotentialArgs),
}

/// Flags of the rotating Van der Waals potential.
#[derive(Args)]
struct PotentialFlags {
    /// Rod radius.
    #[arg(long)]
    r0: f64,
    /// Wall attraction strength.
    #[arg(long)]
    alpha: f64,
    /// Fluid mass density (rotational term).
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    /// Angular speed of rod and film (rotational term).
    #[arg(long, default_value_t = 0.0)]
    omega: f64,
}

impl PotentialFlags {
    fn build(&self) -> Result<PotentialParams> {
        PotentialParams::new(self.rho, self.omega, self.alpha, self.r0)
    }
}

/// Optional potential: either explicit `--u-prime` or full potential flags;
/// neither means a free cylinder (`dU/dr = 0`).
#[derive(Args)]
struct DerivativeFlags {
    /// Radial derivative of the potential at the film radius
    /// (default 0: free cylinder).
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["r0", "alpha", "rho", "omega"])]
    u_prime: Option<f64>,
    /// Rod radius.
    #[arg(long, requires = "alpha")]
    r0: Option<f64>,
    /// Wall attraction strength.
    #[arg(long, requires = "r0")]
    alpha: Option<f64>,
    /// Fluid mass density (rotational term).
    #[arg(long, requires = "alpha")]
    rho: Option<f64>,
    /// Angular speed of rod and film (rotational term).
    #[arg(long, requires = "alpha")]
    omega: Option<f64>,
}

impl DerivativeFlags {
    fn resolve(&self, radius: f64) -> Result<f64> {
        match (self.r0, self.alpha) {
            (Some(r0), Some(alpha)) => {
                let p = PotentialParams::new(
                    self.rho.unwrap_or(0.0),
                    self.omega.unwrap_or(0.0),
                    alpha,
                    r0,
                )?;
                eval_du_dr(radius, &p)
            }
            (None, None) => Ok(self.u_prime.unwrap_or(0.0)),
            _ => Err(Error::Domain(
                "potential flags --r0 and --alpha must be given together".into(),
            )),
        }
    }
}

#[derive(Args)]
struct ClassicArgs {
    /// Radius of the liquid cylinder.
    #[arg(long)]
    radius: f64,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    potential: PotentialFlags,
    /// Film radius to classify.
    #[arg(long)]
    radius: f64,
}

#[derive(Args)]
struct BoundariesArgs {
    #[command(flatten)]
    potential: PotentialFlags,
    /// Search ceiling for the boundary roots (default: 1e6 times r0).
    #[arg(long)]
    r_max: Option<f64>,
}

#[derive(Args)]
struct ModesArgs {
    /// Film radius.
    #[arg(long)]
    radius: f64,
    /// Film length.
    #[arg(long)]
    length: f64,
    #[command(flatten)]
    derivative: DerivativeFlags,
    /// Largest azimuthal index listed.
    #[arg(long, default_value_t = 4)]
    k_max: u32,
    /// Largest axial index listed.
    #[arg(long, default_value_t = 4)]
    m_max: u32,
}

#[derive(Args)]
struct OracleArgs {
    /// Azimuthal index of the discretized operator.
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Film radius.
    #[arg(long)]
    radius: f64,
    #[command(flatten)]
    derivative: DerivativeFlags,
    /// Interior grid points of the discretization.
    #[arg(long, default_value_t = 2000)]
    n: usize,
    /// Film length: report the smallest admissible eigenvalue there.
    #[arg(long, conflicts_with_all = ["bracket_lo", "bracket_hi"])]
    length: Option<f64>,
    /// Lower end of a length bracket for critical-length bisection.
    #[arg(long, requires = "bracket_hi")]
    bracket_lo: Option<f64>,
    /// Upper end of a length bracket for critical-length bisection.
    #[arg(long, requires = "bracket_lo")]
    bracket_hi: Option<f64>,
}

#[derive(Args)]
struct DiagramArgs {
    #[command(flatten)]
    potential: PotentialFlags,
    /// Smallest film radius of the grid.
    #[arg(long)]
    r_min: f64,
    /// Largest film radius of the grid.
    #[arg(long)]
    r_max: f64,
    /// Grid points along the radius axis.
    #[arg(long, default_value_t = 40)]
    r_steps: usize,
    /// Smallest film length of the grid.
    #[arg(long)]
    l_min: f64,
    /// Largest film length of the grid.
    #[arg(long)]
    l_max: f64,
    /// Grid points along the length axis.
    #[arg(long, default_value_t = 40)]
    l_steps: usize,
    /// Also render the diagram as SVG into this file.
    #[arg(long)]
    svg_out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidatePotentialArgs {
    #[command(flatten)]
    potential: PotentialFlags,
    /// Outer radius of the sampling window (default: 100 times r0).
    #[arg(long)]
    r_max: Option<f64>,
    /// Number of geometrically spaced sample radii.
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Classic(args) => run_classic(args, cli.format, out),
        Command::Classify(args) => run_classify(args, cli.format, out),
        Command::Boundaries(args) => run_boundaries(args, cli.format, out),
        Command::Modes(args) => run_modes(args, cli.format, out),
        Command::Oracle(args) => run_oracle(args, cli.format, out),
        Command::Diagram(args) => run_diagram(args, cli.format, out),
        Command::ValidatePotential(args) => run_validate(args, cli.format, out),
    }
}

/// Twelve decimal places, the text-format convention for lengths and
/// eigenvalues.
fn fixed(x: f64) -> String {
    format!("{x:.12}")
}

fn opt_fixed(x: Option<f64>) -> String {
    x.map_or_else(|| "inf".into(), fixed)
}

/// CSV cell: 12 significant digits, empty for a missing value.
fn csv_opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| fmt_sig(v, 12))
}

fn params_json(p: &PotentialParams) -> Value {
    json!({
        "rho": sig_json_number(p.rho),
        "omega": sig_json_number(p.omega),
        "alpha": sig_json_number(p.alpha),
        "r0": sig_json_number(p.r0),
    })
}

fn write_json(out: &mut dyn Write, doc: &Value) -> Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(doc).expect("constructed JSON is serializable")
    )?;
    Ok(())
}

fn run_classic(args: &ClassicArgs, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let critical = governing_mode(args.radius, 0.0)?;
    let (length, mode) = match critical {
        CriticalLength::Finite { length, mode } => (length, mode),
        CriticalLength::Unbounded => unreachable!("a free cylinder always destabilizes"),
    };
    match format {
        OutputFormat::Text => writeln!(out, "{}", fixed(length))?,
        OutputFormat::Json => write_json(
            out,
            &json!({
                "schema_version": 1,
                "radius": sig_json_number(args.radius),
                "l_crit": sig_json_number(length),
                "k": mode.k(),
                "m": mode.m(),
                "ratio_to_diameter": sig_json_number(length / (2.0 * args.radius)),
            }),
        )?,
        OutputFormat::Csv => {
            writeln!(out, "r,l_crit,k,m")?;
            writeln!(
                out,
                "{},{},{},{}",
                fmt_sig(args.radius, 12),
                fmt_sig(length, 12),
                mode.k(),
                mode.m()
            )?;
        }
    }
    Ok(())
}

fn run_classify(args: &ClassifyArgs, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let params = args.potential.build()?;
    let report = classify(args.radius, &params)?;
    let mode = report.critical.mode();
    match format {
        OutputFormat::Text => {
            writeln!(out, "regime {}", report.regime)?;
            writeln!(out, "l_crit {}", opt_fixed(report.critical.length()))?;
            if let Some(mode) = mode {
                writeln!(out, "mode {} {}", mode.k(), mode.m())?;
            }
        }
        OutputFormat::Json => write_json(
            out,
            &json!({
                "schema_version": 1,
                "params": params_json(&params),
                "radius": sig_json_number(args.radius),
                "regime": report.regime.to_string(),
                "l_crit": opt_sig_json_number(report.critical.length()),
                "k": mode.map_or(Value::Null, |m| m.k().into()),
                "m": mode.map_or(Value::Null, |m| m.m().into()),
            }),
        )?,
        OutputFormat::Csv => {
            writeln!(out, "r,regime,l_crit,k,m")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt_sig(args.radius, 12),
                report.regime,
                report
                    .critical
                    .length()
                    .map_or_else(|| "inf".into(), |l| fmt_sig(l, 12)),
                mode.map_or_else(String::new, |m| m.k().to_string()),
                mode.map_or_else(String::new, |m| m.m().to_string()),
            )?;
        }
    }
    Ok(())
}

fn run_boundaries(args: &BoundariesArgs, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let params = args.potential.build()?;
    let r_max = args.r_max.unwrap_or(1e6 * params.r0);
    let b = boundaries(&params, r_max)?;
    match format {
        OutputFormat::Text => {
            let line = |x: Option<f64>| x.map_or_else(|| "none".into(), fixed);
            writeln!(out, "r1 {}", line(b.r1))?;
            writeln!(out, "r2 {}", line(b.r2))?;
            writeln!(
                out,
                "r_critical_closed_form {}",
                line(b.r_critical_closed_form)
            )?;
        }
        OutputFormat::Json => write_json(
            out,
            &json!({
                "schema_version": 1,
                "params": params_json(&params),
                "r_max": sig_json_number(r_max),
                "r1": opt_sig_json_number(b.r1),
                "r2": opt_sig_json_number(b.r2),
                "r_critical_closed_form": opt_sig_json_number(b.r_critical_closed_form),
            }),
        )?,
        OutputFormat::Csv => {
            writeln!(out, "r1,r2,r_critical_closed_form")?;
            writeln!(
                out,
                "{},{},{}",
                csv_opt(b.r1),
                csv_opt(b.r2),
                csv_opt(b.r_critical_closed_form)
            )?;
        }
    }
    Ok(())
}

fn run_modes(args: &ModesArgs, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let u_prime = args.derivative.resolve(args.radius)?;
    let mut rows = Vec::new();
    for k in 0..=args.k_max {
        for m in 1..=args.m_max {
            if !is_admissible(k, m) {
                continue;
            }
            let mode = ModeIndex::new(k, m)?;
            let mu = mode_eigenvalue(mode, args.radius, args.length, u_prime)?;
            let l_crit = critical_length_for_mode(mode, args.radius, u_prime)?;
            rows.push((k, m, mu, l_crit));
        }
    }
    match format {
        OutputFormat::Text => {
            writeln!(out, "k m mu l_crit")?;
            for (k, m, mu, l_crit) in &rows {
                writeln!(out, "{k} {m} {} {}", fixed(*mu), opt_fixed(*l_crit))?;
            }
        }
        OutputFormat::Json => {
            let modes: Vec<Value> = rows
                .iter()
                .map(|(k, m, mu, l_crit)| {
                    json!({
                        "k": k,
                        "m": m,
                        "mu": sig_json_number(*mu),
                        "l_crit": opt_sig_json_number(*l_crit),
                    })
                })
                .collect();
            write_json(
                out,
                &json!({
                    "schema_version": 1,
                    "radius": sig_json_number(args.radius),
                    "length": sig_json_number(args.length),
                    "u_prime": sig_json_number(u_prime),
                    "modes": modes,
                }),
            )?;
        }
        OutputFormat::Csv => {
            writeln!(out, "k,m,mu,l_crit")?;
            for (k, m, mu, l_crit) in &rows {
                writeln!(
                    out,
                    "{k},{m},{},{}",
                    fmt_sig(*mu, 12),
                    l_crit.map_or_else(|| "inf".into(), |l| fmt_sig(l, 12))
                )?;
            }
        }
    }
    Ok(())
}

fn run_oracle(args: &OracleArgs, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let u_prime = args.derivative.resolve(args.radius)?;
    // The analytic counterpart: smallest admissible m for this k.
    let analytic_mode = ModeIndex::new(args.k, if args.k == 0 { 2 } else { 1 })
        .expect("smallest admissible m is admissible by construction");

    match (args.length, args.bracket_lo, args.bracket_hi) {
        (Some(length), None, None) => {
            let op = assemble_operator(args.k, args.radius, length, u_prime, args.n)?;
            let result = smallest_admissible_eigenvalue(&op)?;
            let analytic = mode_eigenvalue(analytic_mode, args.radius, length, u_prime)?;
            let abs_error = (result.mu_min - analytic).abs();
            match format {
                OutputFormat::Text => {
                    writeln!(out, "mu_min {}", fixed(result.mu_min))?;
                    writeln!(out, "constrained {}", result.constrained)?;
                    writeln!(out, "residual {}", fmt_sig(result.residual, 3))?;
                    writeln!(out, "analytic_mu {}", fixed(analytic))?;
                    writeln!(out, "abs_error {}", fmt_sig(abs_error, 3))?;
                }
                OutputFormat::Json => write_json(
                    out,
                    &json!({
                        "schema_version": 1,
                        "k": args.k,
                        "radius": sig_json_number(args.radius),
                        "length": sig_json_number(length),
                        "u_prime": sig_json_number(u_prime),
                        "n": args.n,
                        "mu_min": sig_json_number(result.mu_min),
                        "constrained": result.constrained,
                        "residual": sig_json_number(result.residual),
                        "analytic_mu": sig_json_number(analytic),
                    }),
                )?,
                OutputFormat::Csv => {
                    writeln!(out, "k,r,l,n,mu_min,constrained,residual,analytic_mu")?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        args.k,
                        fmt_sig(args.radius, 12),
                        fmt_sig(length, 12),
                        args.n,
                        fmt_sig(result.mu_min, 12),
                        result.constrained,
                        fmt_sig(result.residual, 12),
                        fmt_sig(analytic, 12)
                    )?;
                }
            }
        }
        (None, Some(lo), Some(hi)) => {
            let l_crit =
                oracle_critical_length_for_uprime(args.k, args.radius, u_prime, args.n, (lo, hi))?;
            let analytic = critical_length_for_mode(analytic_mode, args.radius, u_prime)?;
            match format {
                OutputFormat::Text => {
                    writeln!(out, "l_crit {}", fixed(l_crit))?;
                    writeln!(out, "analytic {}", opt_fixed(analytic))?;
                    if let Some(a) = analytic {
                        writeln!(out, "abs_error {}", fmt_sig((l_crit - a).abs(), 3))?;
                    }
                }
                OutputFormat::Json => write_json(
                    out,
                    &json!({
                        "schema_version": 1,
                        "k": args.k,
                        "radius": sig_json_number(args.radius),
                        "u_prime": sig_json_number(u_prime),
                        "n": args.n,
                        "l_crit": sig_json_number(l_crit),
                        "analytic_l_crit": opt_sig_json_number(analytic),
                    }),
                )?,
                OutputFormat::Csv => {
                    writeln!(out, "k,r,n,l_crit,analytic_l_crit")?;
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        args.k,
                        fmt_sig(args.radius, 12),
                        args.n,
                        fmt_sig(l_crit, 12),
                        analytic.map_or_else(|| "inf".into(), |l| fmt_sig(l, 12))
                    )?;
                }
            }
        }
        _ => {
            return Err(Error::Domain(
                "specify either --length or both --bracket-lo and --bracket-hi".into(),
            ))
        }
    }
    Ok(())
}

fn run_diagram(args: &DiagramArgs, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    let spec = SweepSpec {
        r_min: args.r_min,
        r_max: args.r_max,
        r_steps: args.r_steps,
        l_min: args.l_min,
        l_max: args.l_max,
        l_steps: args.l_steps,
        params: args.potential.build()?,
    };
    let diagram = sweep(&spec)?;
    if let Some(path) = &args.svg_out {
        std::fs::write(path, diagram.to_svg()?)?;
    }
    match format {
        OutputFormat::Text => {
            let stable = diagram.cells.iter().filter(|c| c.stable).count();
            writeln!(out, "grid {}x{}", args.r_steps, args.l_steps)?;
            let line = |x: Option<f64>| x.map_or_else(|| "none".into(), fixed);
            writeln!(out, "r1 {}", line(diagram.boundaries.r1))?;
            writeln!(out, "r2 {}", line(diagram.boundaries.r2))?;
            writeln!(out, "stable_cells {stable}")?;
            writeln!(out, "unstable_cells {}", diagram.cells.len() - stable)?;
        }
        OutputFormat::Json => writeln!(out, "{}", diagram.to_json())?,
        OutputFormat::Csv => write!(out, "{}", diagram.to_csv())?,
    }
    Ok(())
}

fn run_validate(
    args: &ValidatePotentialArgs,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<()> {
    let params = args.potential.build()?;
    let r_max = args.r_max.unwrap_or(100.0 * params.r0);
    let report = validate_properties(&params, r_max, args.samples)?;
    let decay_text = report
        .derivative_decays
        .map_or_else(|| "n/a".into(), |b| b.to_string());
    match format {
        OutputFormat::Text => {
            writeln!(out, "diverges_at_wall {}", report.diverges_at_wall)?;
            writeln!(out, "concave_everywhere {}", report.concave_everywhere)?;
            writeln!(out, "derivative_decays {decay_text}")?;
            writeln!(out, "all_pass {}", report.all_pass())?;
        }
        OutputFormat::Json => write_json(
            out,
            &json!({
                "schema_version": 1,
                "params": params_json(&params),
                "r_max": sig_json_number(r_max),
                "samples": args.samples,
                "diverges_at_wall": report.diverges_at_wall,
                "concave_everywhere": report.concave_everywhere,
                "derivative_decays": report.derivative_decays.map_or(Value::Null, Value::from),
                "all_pass": report.all_pass(),
            }),
        )?,
        OutputFormat::Csv => {
            writeln!(
                out,
                "diverges_at_wall,concave_everywhere,derivative_decays,all_pass"
            )?;
            writeln!(
                out,
                "{},{},{},{}",
                report.diverges_at_wall,
                report.concave_everywhere,
                decay_text,
                report.all_pass()
            )?;
        }
    }
    Ok(())
}
