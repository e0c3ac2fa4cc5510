//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a deviation above
//! tolerance (or output cannot be written), 2 on bad arguments or input.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::asymptotics::{high_t_coefficients, scaled_branches, HighTCoefficients};
use crate::closed_form::{correlations, wm_diagonal_raw, CorrelationBranches};
use crate::oracle::{lqfi_oracle, lqu_oracle, m_matrix_with_skip, PAIR_SKIP};
use crate::presets::{self, Preset};
use crate::state::{random_state, ASDensityMatrix};
use crate::sweep::{
    count_crossings, detect_transitions_with_records, emit_csv, format_sig12, sweep, Axis, Measure,
    SweepSpec, DEFAULT_POINTS,
};
use crate::thermal::{apply_config, energy_levels, gibbs_state, HamiltonianParams, Temperature};
use crate::{Error, Result};

/// Closed-form vs oracle tolerance used by `verify`.
pub const VERIFY_TOL: f64 = 1e-8;
/// Raw vs compact tolerance used by `verify`.
pub const RAW_TOL: f64 = 1e-10;
/// Alternative pair-skip threshold compared against [`PAIR_SKIP`] in `verify`.
const ALT_PAIR_SKIP: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(
    name = "axial-qq",
    version,
    about = "LQU and LQFI of qubit-qutrit axially symmetric states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Branch table for a state given as p1 a b c d p6 Re(u) Im(u) Re(v) Im(v)
    Correlations(CorrelationsArgs),
    /// Gibbs state, partition function and branch table at one temperature
    Thermal(ParamArgs),
    /// CSV of all branches along a sweep
    Sweep(SweepArgs),
    /// Branch crossings along a sweep
    Transitions(SweepArgs),
    /// Compare closed forms against the dense oracles on random states
    Verify(VerifyArgs),
    /// High-temperature coefficients and finite-T residuals
    Asympt(AsymptArgs),
    /// List the built-in parameter sets
    Presets,
}

#[derive(Args, Debug)]
struct CorrelationsArgs {
    #[arg(num_args = 10, required = true, allow_negative_numbers = true, value_name = "X")]
    record: Vec<f64>,
    /// Also print the dense-oracle values
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug, Default, Clone)]
struct ParamArgs {
    /// Start from a built-in parameter set (see `presets`)
    #[arg(long)]
    preset: Option<String>,
    /// key=value file with any of B1 B2 J Jz K K1 K2 Dz Gamma Lambda T
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "B1", allow_negative_numbers = true)]
    b1: Option<f64>,
    #[arg(long = "B2", allow_negative_numbers = true)]
    b2: Option<f64>,
    #[arg(long = "J", allow_negative_numbers = true)]
    j: Option<f64>,
    #[arg(long = "Jz", allow_negative_numbers = true)]
    jz: Option<f64>,
    #[arg(long = "K", allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long = "K1", allow_negative_numbers = true)]
    k1: Option<f64>,
    #[arg(long = "K2", allow_negative_numbers = true)]
    k2: Option<f64>,
    #[arg(long = "Dz", allow_negative_numbers = true)]
    dz: Option<f64>,
    #[arg(long = "Gamma", allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long = "Lambda", allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Temperature
    #[arg(long = "T", allow_negative_numbers = true)]
    t: Option<f64>,
}

/// Parameters after applying preset, config file and flags, in that order.
struct Resolved {
    params: HamiltonianParams,
    t: Option<f64>,
    preset: Option<Preset>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<Resolved> {
        let preset = match &self.preset {
            Some(name) => Some(presets::by_name(name).ok_or_else(|| {
                let names: Vec<&str> = presets::all().iter().map(|p| p.name).collect();
                Error::Parse(format!("unknown preset `{name}` (known: {})", names.join(", ")))
            })?),
            None => None,
        };
        let mut params = preset.map(|p| p.params).unwrap_or_default();
        let mut t = preset.map(|p| p.t);
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            if let Some(ct) = apply_config(&text, &mut params)? {
                t = Some(ct);
            }
        }
        let flags = [
            ("B1", self.b1),
            ("B2", self.b2),
            ("J", self.j),
            ("Jz", self.jz),
            ("K", self.k),
            ("K1", self.k1),
            ("K2", self.k2),
            ("Dz", self.dz),
            ("Gamma", self.gamma),
            ("Lambda", self.lambda),
        ];
        for (name, value) in flags {
            if let Some(v) = value {
                params.set(name, v)?;
            }
        }
        if self.t.is_some() {
            t = self.t;
        }
        if !params.is_finite() {
            return Err(Error::Parse("non-finite Hamiltonian parameter".into()));
        }
        Ok(Resolved { params, t, preset })
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// T or one of B1 B2 J Jz K K1 K2 Dz Gamma Lambda
    #[arg(long)]
    axis: Option<Axis>,
    #[arg(long, allow_negative_numbers = true)]
    lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    hi: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    n: Option<usize>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SweepArgs {
    fn spec(&self) -> Result<SweepSpec> {
        let r = self.params.resolve()?;
        let axis = self
            .axis
            .or(r.preset.map(|p| p.axis))
            .ok_or_else(|| Error::InvalidSweep("missing --axis".into()))?;
        // the preset range only applies along the preset's own axis
        let preset_range = r.preset.filter(|p| p.axis == axis).map(|p| (p.lo, p.hi));
        let lo = self
            .lo
            .or(preset_range.map(|r| r.0))
            .ok_or_else(|| Error::InvalidSweep("missing --lo".into()))?;
        let hi = self
            .hi
            .or(preset_range.map(|r| r.1))
            .ok_or_else(|| Error::InvalidSweep("missing --hi".into()))?;
        let t = match axis {
            Axis::T => r.t.unwrap_or(1.0),
            Axis::Param(_) => r
                .t
                .ok_or_else(|| Error::InvalidSweep(format!("sweeping {axis} needs --T")))?,
        };
        let spec = SweepSpec {
            base: r.params,
            t,
            axis,
            lo,
            hi,
            n: self.n.unwrap_or(DEFAULT_POINTS),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    states: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct AsymptArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Temperatures at which to compare T²·branch with its coefficient
    #[arg(long = "at", value_delimiter = ',', default_values_t = [50.0, 100.0, 200.0])]
    at: Vec<f64>,
}

enum Outcome {
    Success,
    VerificationFailed,
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::VerificationFailed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Sink(_) => 1,
                _ => 2,
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Correlations(a) => cmd_correlations(&a, out),
        Command::Thermal(a) => cmd_thermal(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Transitions(a) => cmd_transitions(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Asympt(a) => cmd_asympt(&a, out),
        Command::Presets => cmd_presets(out),
    }
}

fn g(x: f64) -> String {
    format_sig12(x)
}

fn write_branches(c: &CorrelationBranches, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "U0 {}", g(c.u0))?;
    writeln!(out, "U1 {}", g(c.u1))?;
    writeln!(out, "U {} {}", g(c.u), c.active_u)?;
    writeln!(out, "F0 {}", g(c.f0))?;
    writeln!(out, "F1 {}", g(c.f1))?;
    writeln!(out, "F {} {}", g(c.f), c.active_f)?;
    Ok(())
}

fn cmd_correlations(a: &CorrelationsArgs, out: &mut dyn Write) -> Result<Outcome> {
    let record: [f64; 10] = a
        .record
        .as_slice()
        .try_into()
        .map_err(|_| Error::Parse("expected 10 numbers".into()))?;
    let m = ASDensityMatrix::from_record(record);
    let c = correlations(&m)?;
    write_branches(&c, out)?;
    if a.oracle {
        let rho = m.to_dense();
        writeln!(out, "U_oracle {}", g(lqu_oracle(&rho)?))?;
        writeln!(out, "F_oracle {}", g(lqfi_oracle(&rho)?))?;
    }
    Ok(Outcome::Success)
}

fn cmd_thermal(a: &ParamArgs, out: &mut dyn Write) -> Result<Outcome> {
    let r = a.resolve()?;
    let t = Temperature::new(r.t.ok_or_else(|| Error::Parse("missing --T".into()))?)?;
    let gibbs = gibbs_state(&r.params, t)?;
    let levels = energy_levels(&r.params).levels;
    let joined = |xs: &[f64]| xs.iter().map(|&x| g(x)).collect::<Vec<_>>().join(" ");
    writeln!(out, "T {}", g(t.value()))?;
    writeln!(out, "E {}", joined(&levels))?;
    writeln!(out, "Z {}", g(gibbs.z))?;
    writeln!(out, "lnZ {}", g(gibbs.ln_z))?;
    writeln!(out, "state {}", joined(&gibbs.state.to_record()))?;
    write_branches(&gibbs.correlations()?, out)?;
    Ok(Outcome::Success)
}

fn with_sink<F>(path: &Option<PathBuf>, out: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let mut file = BufWriter::new(File::create(p)?);
            f(&mut file)
        }
        None => f(out),
    }
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<Outcome> {
    let records = sweep(&a.spec()?)?;
    with_sink(&a.out, out, |sink| emit_csv(&records, &[], sink))?;
    Ok(Outcome::Success)
}

fn cmd_transitions(a: &SweepArgs, out: &mut dyn Write) -> Result<Outcome> {
    let spec = a.spec()?;
    let (records, events) = detect_transitions_with_records(&spec)?;
    if a.out.is_some() {
        with_sink(&a.out, out, |sink| emit_csv(&records, &events, sink))?;
    }
    writeln!(out, "axis {} [{}, {}] n={}", spec.axis, g(spec.lo), g(spec.hi), spec.n)?;
    for e in &events {
        writeln!(
            out,
            "{} {} x*={} bracket=[{}, {}] {}->{}{}",
            e.measure.as_str(),
            e.kind.as_str(),
            g(e.x_star),
            g(e.bracket.0),
            g(e.bracket.1),
            e.branch_from,
            e.branch_to,
            if e.refined { "" } else { " unrefined" }
        )?;
    }
    for m in [Measure::Lqu, Measure::Lqfi] {
        writeln!(out, "{} crossings {}", m.as_str(), count_crossings(&events, m))?;
    }
    Ok(Outcome::Success)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    if a.states == 0 {
        return Err(Error::Parse("--states must be positive".into()));
    }
    let (mut dev_u, mut dev_f, mut dev_raw, mut skip_sens) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..a.states {
        let m = random_state(a.seed.wrapping_add(i));
        let s = m.spectrum()?;
        let c = correlations(&m)?;
        let rho = m.to_dense();
        dev_u = dev_u.max((c.u - lqu_oracle(&rho)?).abs());
        dev_f = dev_f.max((c.f - lqfi_oracle(&rho)?).abs());
        let raw = wm_diagonal_raw(&m, &s);
        for (r, b) in [
            (1.0 - raw.wzz, c.u0),
            (1.0 - raw.wxx, c.u1),
            (1.0 - raw.mzz, c.f0),
            (1.0 - raw.mxx, c.f1),
        ] {
            dev_raw = dev_raw.max((r - b).abs());
        }
        let lo = m_matrix_with_skip(&rho, PAIR_SKIP)?.max_eigenvalue();
        let hi = m_matrix_with_skip(&rho, ALT_PAIR_SKIP)?.max_eigenvalue();
        skip_sens = skip_sens.max((lo - hi).abs());
    }
    let ok = dev_u <= VERIFY_TOL && dev_f <= VERIFY_TOL && dev_raw <= RAW_TOL;
    writeln!(out, "states {} seeds {}..{}", a.states, a.seed, a.seed.wrapping_add(a.states - 1))?;
    writeln!(out, "max|U-oracle| {dev_u:.3e}")?;
    writeln!(out, "max|F-oracle| {dev_f:.3e}")?;
    writeln!(out, "max|raw-compact| {dev_raw:.3e}")?;
    writeln!(out, "pair-skip sensitivity ({PAIR_SKIP:e} vs {ALT_PAIR_SKIP:e}) {skip_sens:.3e}")?;
    writeln!(
        out,
        "{} (oracle tol {VERIFY_TOL:e}, raw tol {RAW_TOL:e})",
        if ok { "ok" } else { "FAILED" }
    )?;
    Ok(if ok {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

fn rel(x: f64, c: f64) -> String {
    if c == 0.0 {
        format!("abs {:.3e}", x.abs())
    } else {
        format!("rel {:.3e}", ((x - c) / c).abs())
    }
}

fn cmd_asympt(a: &AsymptArgs, out: &mut dyn Write) -> Result<Outcome> {
    let r = a.params.resolve()?;
    let c: HighTCoefficients = high_t_coefficients(&r.params);
    writeln!(out, "cU0 {}", g(c.c_u0))?;
    writeln!(out, "cU1 {}", g(c.c_u1))?;
    writeln!(out, "cF0 {}", g(c.c_f0))?;
    writeln!(out, "cF1 {}", g(c.c_f1))?;
    for &t in &a.at {
        let s = scaled_branches(&r.params, Temperature::new(t)?)?;
        writeln!(
            out,
            "T {} T2U0 {} ({}) T2U1 {} ({}) T2F0 {} ({}) T2F1 {} ({})",
            g(t),
            g(s.c_u0),
            rel(s.c_u0, c.c_u0),
            g(s.c_u1),
            rel(s.c_u1, c.c_u1),
            g(s.c_f0),
            rel(s.c_f0, c.c_f0),
            g(s.c_f1),
            rel(s.c_f1, c.c_f1)
        )?;
    }
    Ok(Outcome::Success)
}

fn cmd_presets(out: &mut dyn Write) -> Result<Outcome> {
    for p in presets::all() {
        let params: Vec<String> = HamiltonianParams::NAMES
            .iter()
            .map(|n| format!("{n}={}", g(p.params.get(n).unwrap_or(0.0))))
            .collect();
        let t = match p.axis {
            Axis::T => String::new(),
            Axis::Param(_) => format!(" T={}", g(p.t)),
        };
        writeln!(
            out,
            "{} axis {} [{}, {}]{t} {}",
            p.name,
            p.axis,
            g(p.lo),
            g(p.hi),
            params.join(" ")
        )?;
    }
    Ok(Outcome::Success)
}
