//! Command-line driver: single-point evaluation, parameter sweeps with CSV
//! output, and the verification suite. Natural units throughout (hbar = c =
//! k_B = 1; acceleration and temperature share dimension). Exit codes:
//! 0 success, 1 verification failure, 2 input error, 3 numerical failure.

use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::shift::{self, AtomPairConfig, Channel, EnergyShiftResult, Method, StateSymmetry};

/// Preset tolerance bundles for the oracle integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TolProfile {
    Default,
    Strict,
    Fast,
}

impl TolProfile {
    pub fn quadrature_spec(self) -> QuadratureSpec {
        let mut spec = QuadratureSpec::default_oracle();
        match self {
            TolProfile::Default => {}
            TolProfile::Strict => {
                spec.abs_tol = 1e-9;
                spec.rel_tol = 1e-7;
                spec.max_subdivisions = 12_000;
                spec.regulator_schedule = vec![0.1, 0.05, 0.025, 0.0125, 0.00625];
            }
            TolProfile::Fast => {
                spec.abs_tol = 1e-6;
                spec.rel_tol = 1e-4;
                spec.max_subdivisions = 3_000;
                spec.regulator_schedule = vec![0.1, 0.05, 0.025];
            }
        }
        spec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VaryParam {
    Z,
    A,
    Omega0,
}

impl VaryParam {
    fn name(self) -> &'static str {
        match self {
            VaryParam::Z => "z",
            VaryParam::A => "a",
            VaryParam::Omega0 => "omega0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub num_points: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub channel: Channel,
    pub vary: VaryParam,
    pub range: SweepRange,
    pub fixed: AtomPairConfig,
    pub methods: Vec<Method>,
    pub output_path: PathBuf,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let r = &self.range;
        if r.num_points < 2 {
            return Err(Error::Config("num_points must be >= 2".into()));
        }
        if !(r.start < r.stop) {
            return Err(Error::Config(format!(
                "start ({}) must be < stop ({})",
                r.start, r.stop
            )));
        }
        if r.spacing == Spacing::Log && !(r.start > 0.0) {
            return Err(Error::Config("log spacing requires start > 0".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods must be non-empty".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let r = &self.range;
        let n = r.num_points;
        let mut out = Vec::with_capacity(n);
        match r.spacing {
            Spacing::Linear => {
                let step = (r.stop - r.start) / (n - 1) as f64;
                for i in 0..n {
                    out.push(r.start + i as f64 * step);
                }
            }
            Spacing::Log => {
                let (la, lb) = (r.start.ln(), r.stop.ln());
                let step = (lb - la) / (n - 1) as f64;
                for i in 0..n {
                    out.push((la + i as f64 * step).exp());
                }
            }
        }
        out
    }
}

/// One record of the verification suite.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: String,
    pub grid_point: String,
    pub reference: f64,
    pub computed: f64,
    pub rel_error: f64,
    pub pass: bool,
    pub runtime_secs: f64,
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

// ---------------------------------------------------------------------------
// argument parsing
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "rindler-resonance",
    about = "Resonance interaction energy of two uniformly accelerated atoms \
             (coaccelerated-frame evaluation with independent oracles). \
             Natural units: hbar = c = k_B = 1; acceleration and temperature \
             share dimension. No unit conversion is performed.",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the energy shift at a single parameter point
    Point(PointArgs),
    /// Sweep one parameter and write a CSV table
    Sweep(SweepArgs),
    /// Run the verification suite (frame equivalence, limits, symmetries)
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, value_enum)]
    channel: Option<CliChannel>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    omega0: Option<f64>,
    #[arg(long, value_enum)]
    state: Option<CliState>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Dipole moment of atom A as x,y,z
    #[arg(long, value_parser = parse_vec3)]
    dipole_a: Option<[f64; 3]>,
    /// Dipole moment of atom B as x,y,z
    #[arg(long, value_parser = parse_vec3)]
    dipole_b: Option<[f64; 3]>,
    #[arg(long, value_enum, default_value = "closed")]
    method: CliMethod,
    /// JSON file of defaults; explicit flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "default")]
    tol_profile: TolProfile,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep description (see README for the schema)
    #[arg(long)]
    config: PathBuf,
    /// Overrides output_path from the config
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "default")]
    tol_profile: TolProfile,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "default")]
    tol_profile: TolProfile,
    /// Restrict the grid to a = 0, where both frames coincide trivially
    /// and the equivalence checks run at 1e-8
    #[arg(long)]
    inertial_only: bool,
    /// Override every check tolerance (negative control / experimentation)
    #[arg(long)]
    tol_override: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliChannel {
    Scalar,
    Em,
}

impl From<CliChannel> for Channel {
    fn from(c: CliChannel) -> Channel {
        match c {
            CliChannel::Scalar => Channel::Scalar,
            CliChannel::Em => Channel::Em,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliState {
    Sym,
    Antisym,
}

impl From<CliState> for StateSymmetry {
    fn from(s: CliState) -> StateSymmetry {
        match s {
            CliState::Sym => StateSymmetry::Symmetric,
            CliState::Antisym => StateSymmetry::Antisymmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliMethod {
    Closed,
    Oracle,
}

impl From<CliMethod> for Method {
    fn from(m: CliMethod) -> Method {
        match m {
            CliMethod::Closed => Method::ClosedForm,
            CliMethod::Oracle => Method::Oracle,
        }
    }
}

fn parse_vec3(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad component {p:?}: {e}"))?;
    }
    Ok(out)
}

/// Flat key-value config file shared by `point` (all keys optional) and
/// `sweep` (sweep keys required).
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    channel: Option<Channel>,
    omega0: Option<f64>,
    a: Option<f64>,
    z: Option<f64>,
    state: Option<StateSymmetry>,
    lambda: Option<f64>,
    dipole_a: Option<[f64; 3]>,
    dipole_b: Option<[f64; 3]>,
    // sweep-only keys
    vary: Option<String>,
    start: Option<f64>,
    stop: Option<f64>,
    num_points: Option<usize>,
    spacing: Option<Spacing>,
    methods: Option<Vec<Method>>,
    output_path: Option<String>,
}

fn load_file_config(path: &PathBuf) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// subcommand implementations
// ---------------------------------------------------------------------------

/// Evaluates one point and prints the result to stdout.
pub fn run_point(
    cfg: &AtomPairConfig,
    channel: Channel,
    method: Method,
    spec: &QuadratureSpec,
) -> Result<EnergyShiftResult> {
    cfg.validate()?;
    let res = match (channel, method) {
        (Channel::Scalar, Method::ClosedForm) => shift::delta_e_scalar_closed(cfg)?,
        (Channel::Scalar, Method::Oracle) => shift::delta_e_scalar_oracle(cfg, spec)?,
        (Channel::Em, Method::ClosedForm) => shift::delta_e_em_closed(cfg)?,
        (Channel::Em, Method::Oracle) => shift::delta_e_em_oracle(cfg, spec)?,
    };
    println!(
        "channel={} method={} state={} omega0={} a={} z={}",
        res.channel,
        res.method,
        cfg.symmetry,
        fmt17(cfg.omega0),
        fmt17(cfg.a),
        fmt17(cfg.z)
    );
    println!("delta_e={}", fmt17(res.value));
    println!("error_estimate={}", fmt17(res.error_estimate));
    for (eps, v) in &res.regulator_report {
        println!("regulator eps={} value={}", fmt17(*eps), fmt17(*v));
    }
    Ok(res)
}

/// 17 significant digits, locale-independent.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Runs the sweep and writes the CSV; rows are emitted in grid order.
pub fn run_sweep(sweep: &SweepConfig, spec: &QuadratureSpec) -> Result<()> {
    sweep.validate()?;
    sweep.fixed.validate()?;
    // fail on an unwritable path before any computation starts
    let file = std::fs::File::create(&sweep.output_path)?;
    let mut rows: Vec<String> = Vec::new();
    for value in sweep.grid() {
        let mut cfg = sweep.fixed.clone();
        match sweep.vary {
            VaryParam::Z => cfg.z = value,
            VaryParam::A => cfg.a = value,
            VaryParam::Omega0 => cfg.omega0 = value,
        }
        for &method in &sweep.methods {
            let res = match (sweep.channel, method) {
                (Channel::Scalar, Method::ClosedForm) => shift::delta_e_scalar_closed(&cfg)?,
                (Channel::Scalar, Method::Oracle) => shift::delta_e_scalar_oracle(&cfg, spec)?,
                (Channel::Em, Method::ClosedForm) => shift::delta_e_em_closed(&cfg)?,
                (Channel::Em, Method::Oracle) => shift::delta_e_em_oracle(&cfg, spec)?,
            };
            rows.push(format!(
                "{},{},{},{},{},{},{},{},{},{}",
                sweep.vary.name(),
                fmt17(value),
                fmt17(cfg.a),
                fmt17(cfg.z),
                fmt17(cfg.omega0),
                sweep.channel,
                cfg.symmetry,
                method,
                fmt17(res.value),
                fmt17(res.error_estimate),
            ));
        }
    }
    let mut w = std::io::BufWriter::new(file);
    w.write_all(b"varied_param,value,a,z,omega0,channel,state,method,delta_e,error_estimate\n")?;
    for row in rows {
        w.write_all(row.as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub struct VerifyOptions {
    pub spec: QuadratureSpec,
    /// Restrict to a = 0, where the equivalence checks tighten to 1e-8.
    pub inertial_only: bool,
    /// Replaces every per-check tolerance when set.
    pub tol_override: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            spec: QuadratureSpec::default_oracle(),
            inertial_only: false,
            tol_override: None,
        }
    }
}

fn push_check(
    report: &mut VerificationReport,
    name: &str,
    grid_point: String,
    reference: f64,
    computed: Result<f64>,
    tol: f64,
    t0: Instant,
) {
    let runtime_secs = t0.elapsed().as_secs_f64();
    match computed {
        Ok(c) => {
            let scale = reference.abs().max(1e-300);
            let rel = (c - reference).abs() / scale;
            report.records.push(CheckRecord {
                name: name.into(),
                grid_point,
                reference,
                computed: c,
                rel_error: rel,
                pass: rel <= tol,
                runtime_secs,
            });
        }
        Err(e) => {
            // an oracle failure marks the record failed; the run continues
            report.records.push(CheckRecord {
                name: format!("{name} [error: {e}]"),
                grid_point,
                reference,
                computed: f64::NAN,
                rel_error: f64::INFINITY,
                pass: false,
                runtime_secs,
            });
        }
    }
}

/// Runs the verification grid and returns the report. Failures never abort
/// the run; they are recorded and reflected in the overall status.
pub fn run_verify(opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::default();
    let spec = &opts.spec;
    let tol = |default: f64| opts.tol_override.unwrap_or(default);
    let a_grid: Vec<f64> = vec![0.5, 1.0];
    let eq_tol = 1e-3;

    // With the grid restricted to a = 0 the two frames coincide and the
    // equivalence checks reduce to comparing the closed forms (evaluated
    // through the a = 0 branch) against independently coded Minkowski
    // expressions, at a tightened 1e-8 tolerance.
    if opts.inertial_only {
        for &omega in &[0.5f64, 1.0, 2.0] {
            for &z in &[0.5f64, 1.0, 2.0] {
                let t0 = Instant::now();
                let geo = crate::kinematics::geometry_scalars(z, 0.0).unwrap();
                let expect = -(omega * z).sin() / (8.0 * std::f64::consts::PI.powi(2) * z);
                let got = crate::scalar::chi_scalar_spectral_closed(omega, &geo);
                push_check(
                    &mut report,
                    "scalar_chi_inertial_frame",
                    format!("omega={omega} z={z} a=0"),
                    expect,
                    got,
                    tol(1e-8),
                    t0,
                );
                let t0 = Instant::now();
                let cfg = AtomPairConfig {
                    omega0: omega,
                    a: 0.0,
                    z,
                    symmetry: StateSymmetry::Symmetric,
                    coupling_lambda: 1.0,
                    dipole_a: [0.0, 0.0, 1.0],
                    dipole_b: [0.0, 0.0, 1.0],
                };
                let expect = -(omega * z).cos() / (16.0 * std::f64::consts::PI * z);
                let got = shift::delta_e_scalar_closed(&cfg).map(|r| r.value);
                push_check(
                    &mut report,
                    "scalar_shift_inertial_frame",
                    format!("omega0={omega} z={z} a=0"),
                    expect,
                    got,
                    tol(1e-8),
                    t0,
                );
                // dipole channel against the explicit Minkowski tensor
                for &(da, db, label) in &[
                    ([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], "xx"),
                    ([0.0, 1.0, 0.0], [0.0, 1.0, 0.0], "yy"),
                    ([0.0, 0.0, 1.0], [0.0, 0.0, 1.0], "zz"),
                    ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], "xz"),
                ] {
                    let t0 = Instant::now();
                    let mut cfg = cfg.clone();
                    cfg.dipole_a = da;
                    cfg.dipole_b = db;
                    let (z2, z3) = (z * z, z * z * z);
                    let (f_t, g_t) = match label {
                        "xx" | "yy" => (omega / z2, -(1.0 - omega * omega * z2) / z3),
                        "zz" => (-2.0 * omega / z2, 2.0 / z3),
                        _ => (0.0, 0.0),
                    };
                    let (sn, cs) = ((omega * z).sin(), (omega * z).cos());
                    let expect = (f_t * sn - g_t * cs) / (4.0 * std::f64::consts::PI);
                    let got = shift::delta_e_em_closed(&cfg).map(|r| r.value);
                    push_check(
                        &mut report,
                        "em_shift_inertial_frame",
                        format!("dipoles={label} omega0={omega} z={z} a=0"),
                        expect,
                        got,
                        tol(1e-8),
                        t0,
                    );
                }
            }
        }
    }

    // scalar susceptibility: closed form vs Rindler mode sum (a > 0 only)
    if !opts.inertial_only {
        for &omega in &[0.5, 1.0, 2.0] {
            for &z in &[0.5, 1.0] {
                for &a in &a_grid {
                    let t0 = Instant::now();
                    let geo = crate::kinematics::geometry_scalars(z, a).unwrap();
                    let closed = crate::scalar::chi_scalar_spectral_closed(omega, &geo).unwrap();
                    let ms = crate::scalar::chi_scalar_mode_sum(omega, &geo, spec);
                    push_check(
                        &mut report,
                        "scalar_mode_sum_vs_closed",
                        format!("omega={omega} z={z} a={a}"),
                        closed,
                        ms,
                        tol(1e-5),
                        t0,
                    );
                }
            }
        }
    }

    // scalar susceptibility: closed form vs inertial Wightman extraction
    if !opts.inertial_only {
        for &omega in &[0.5, 1.0, 2.0] {
            for &z in &[0.5, 1.0] {
                for &a in &a_grid {
                    let t0 = Instant::now();
                    let geo = crate::kinematics::geometry_scalars(z, a).unwrap();
                    let closed = crate::scalar::chi_scalar_spectral_closed(omega, &geo).unwrap();
                    let ex = crate::scalar::chi_scalar_from_wightman(omega, &geo, spec);
                    push_check(
                        &mut report,
                        "scalar_wightman_vs_closed",
                        format!("omega={omega} z={z} a={a}"),
                        closed,
                        ex,
                        tol(eq_tol),
                        t0,
                    );
                }
            }
        }
    }

    // scalar shift: closed form vs frequency-domain and time-domain oracles
    if !opts.inertial_only {
        for &omega0 in &[0.5, 1.0] {
            for &z in &[0.5, 1.0] {
                for &a in &a_grid {
                    let cfg = AtomPairConfig {
                        omega0,
                        a,
                        z,
                        symmetry: StateSymmetry::Symmetric,
                        coupling_lambda: 1.0,
                        dipole_a: [0.0, 0.0, 1.0],
                        dipole_b: [0.0, 0.0, 1.0],
                    };
                    let closed = shift::delta_e_scalar_closed(&cfg).unwrap().value;
                    let t0 = Instant::now();
                    let freq = shift::delta_e_scalar_oracle(&cfg, spec).map(|r| r.value);
                    push_check(
                        &mut report,
                        "scalar_shift_frequency_oracle",
                        format!("omega0={omega0} z={z} a={a}"),
                        closed,
                        freq,
                        tol(eq_tol),
                        t0,
                    );
                    let t0 = Instant::now();
                    let td = shift::delta_e_scalar_inertial_oracle(&cfg, spec).map(|r| r.value);
                    push_check(
                        &mut report,
                        "scalar_shift_inertial_oracle",
                        format!("omega0={omega0} z={z} a={a}"),
                        closed,
                        td,
                        tol(eq_tol),
                        t0,
                    );
                }
            }
        }
    }

    // dipole shift: closed form vs time-domain oracle
    if !opts.inertial_only {
        let em_eq_tol = 1e-2;
        for &(da, db, label) in &[
            ([0.0, 0.0, 1.0], [0.0, 0.0, 1.0], "zz"),
            ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], "xz"),
        ] {
            for &a in &a_grid {
                let cfg = AtomPairConfig {
                    omega0: 1.0,
                    a,
                    z: 1.0,
                    symmetry: StateSymmetry::Symmetric,
                    coupling_lambda: 1.0,
                    dipole_a: da,
                    dipole_b: db,
                };
                let closed = shift::delta_e_em_closed(&cfg).unwrap().value;
                let t0 = Instant::now();
                let orc = shift::delta_e_em_oracle(&cfg, spec).map(|r| r.value);
                push_check(
                    &mut report,
                    "em_shift_oracle",
                    format!("dipoles={label} a={a}"),
                    closed,
                    orc,
                    tol(em_eq_tol),
                    t0,
                );
            }
        }
    }

    // inertial-limit recovery at a = 1e-6
    {
        let t0 = Instant::now();
        let cfg = AtomPairConfig {
            omega0: 1.0,
            a: 1e-6,
            z: 1.0,
            symmetry: StateSymmetry::Symmetric,
            coupling_lambda: 1.0,
            dipole_a: [0.0, 0.0, 1.0],
            dipole_b: [0.0, 0.0, 1.0],
        };
        let expect = -(1.0f64.cos()) / (16.0 * std::f64::consts::PI);
        let got = shift::delta_e_scalar_closed(&cfg).map(|r| r.value);
        push_check(
            &mut report,
            "scalar_inertial_limit",
            "omega0=1 z=1 a=1e-6".into(),
            expect,
            got,
            tol(1e-6),
            t0,
        );
    }

    // exact symmetries: state sign flip and the vanishing cross term
    {
        let t0 = Instant::now();
        let mut cfg = AtomPairConfig {
            omega0: 0.8,
            a: 1.3,
            z: 0.9,
            symmetry: StateSymmetry::Symmetric,
            coupling_lambda: 1.0,
            dipole_a: [0.4, 0.2, 0.7],
            dipole_b: [0.1, 0.9, 0.3],
        };
        let s1 = shift::delta_e_scalar_closed(&cfg).unwrap().value
            + shift::delta_e_em_closed(&cfg).unwrap().value;
        cfg.symmetry = StateSymmetry::Antisymmetric;
        let s2 = shift::delta_e_scalar_closed(&cfg).unwrap().value
            + shift::delta_e_em_closed(&cfg).unwrap().value;
        push_check(
            &mut report,
            "state_sign_flip",
            "omega0=0.8 z=0.9 a=1.3".into(),
            0.0,
            Ok((s1 + s2).abs()),
            tol(1e-15),
            t0,
        );
        let t0 = Instant::now();
        push_check(
            &mut report,
            "vf_cross_term_zero",
            "omega0=0.8 z=0.9 a=1.3".into(),
            0.0,
            Ok(shift::vf_cross_term(&cfg)),
            tol(0.0),
            t0,
        );
    }

    report
}

fn print_report(report: &VerificationReport) {
    println!(
        "{:<34} {:<28} {:>24} {:>24} {:>10} {:>8} {:>8}",
        "check", "grid point", "reference", "computed", "rel_err", "time_s", "status"
    );
    for r in &report.records {
        println!(
            "{:<34} {:<28} {:>24.16e} {:>24.16e} {:>10.2e} {:>8.2} {:>8}",
            r.name,
            r.grid_point,
            r.reference,
            r.computed,
            r.rel_error,
            r.runtime_secs,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    let n_fail = report.records.iter().filter(|r| !r.pass).count();
    println!(
        "overall: {} ({} checks, {} failed)",
        if report.all_pass() { "pass" } else { "FAIL" },
        report.records.len(),
        n_fail
    );
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

fn point_config(args: &PointArgs) -> Result<(AtomPairConfig, Channel)> {
    let file = match &args.config {
        Some(p) => load_file_config(p)?,
        None => FileConfig::default(),
    };
    let cfg = AtomPairConfig {
        omega0: args.omega0.or(file.omega0).unwrap_or(1.0),
        a: args.a.or(file.a).unwrap_or(0.0),
        z: args.z.or(file.z).unwrap_or(1.0),
        symmetry: args
            .state
            .map(StateSymmetry::from)
            .or(file.state)
            .unwrap_or(StateSymmetry::Symmetric),
        coupling_lambda: args.lambda.or(file.lambda).unwrap_or(1.0),
        dipole_a: args.dipole_a.or(file.dipole_a).unwrap_or([0.0, 0.0, 1.0]),
        dipole_b: args.dipole_b.or(file.dipole_b).unwrap_or([0.0, 0.0, 1.0]),
    };
    let channel = args
        .channel
        .map(Channel::from)
        .or(file.channel)
        .unwrap_or(Channel::Scalar);
    Ok((cfg, channel))
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    let file = load_file_config(&args.config)?;
    let need = |field: &str| Error::Config(format!("sweep config missing key {field:?}"));
    let vary = match file.vary.as_deref() {
        Some("z") => VaryParam::Z,
        Some("a") => VaryParam::A,
        Some("omega0") => VaryParam::Omega0,
        Some(other) => {
            return Err(Error::Config(format!(
                "vary must be one of z, a, omega0; got {other:?}"
            )))
        }
        None => return Err(need("vary")),
    };
    let range = SweepRange {
        start: file.start.ok_or_else(|| need("start"))?,
        stop: file.stop.ok_or_else(|| need("stop"))?,
        num_points: file.num_points.ok_or_else(|| need("num_points"))?,
        spacing: file.spacing.unwrap_or(Spacing::Linear),
    };
    let fixed = AtomPairConfig {
        omega0: file.omega0.unwrap_or(1.0),
        a: file.a.unwrap_or(0.0),
        z: file.z.unwrap_or(1.0),
        symmetry: file.state.unwrap_or(StateSymmetry::Symmetric),
        coupling_lambda: file.lambda.unwrap_or(1.0),
        dipole_a: file.dipole_a.unwrap_or([0.0, 0.0, 1.0]),
        dipole_b: file.dipole_b.unwrap_or([0.0, 0.0, 1.0]),
    };
    let output_path = args
        .out
        .clone()
        .or_else(|| file.output_path.as_ref().map(PathBuf::from))
        .ok_or_else(|| need("output_path"))?;
    Ok(SweepConfig {
        channel: file.channel.unwrap_or(Channel::Scalar),
        vary,
        range,
        fixed,
        methods: file.methods.unwrap_or(vec![Method::ClosedForm]),
        output_path,
    })
}

/// Parses the process arguments, executes the subcommand, and returns the
/// exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version through this path with code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Point(args) => {
            let spec = args.tol_profile.quadrature_spec();
            match point_config(&args).and_then(|(cfg, channel)| {
                run_point(&cfg, channel, Method::from(args.method), &spec)
            }) {
                Ok(_) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Sweep(args) => {
            let spec = args.tol_profile.quadrature_spec();
            match sweep_config(&args).and_then(|sweep| run_sweep(&sweep, &spec)) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Verify(args) => {
            let opts = VerifyOptions {
                spec: args.tol_profile.quadrature_spec(),
                inertial_only: args.inertial_only,
                tol_override: args.tol_override,
            };
            let report = run_verify(&opts);
            print_report(&report);
            if report.all_pass() {
                0
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vec3_parsing() {
        assert_eq!(parse_vec3("1,0,0").unwrap(), [1.0, 0.0, 0.0]);
        assert_eq!(parse_vec3(" 0.5, -2, 3e-1 ").unwrap(), [0.5, -2.0, 0.3]);
        assert!(parse_vec3("1,2").is_err());
        assert!(parse_vec3("a,b,c").is_err());
    }

    #[test]
    fn grid_spacing() {
        let mut sweep = SweepConfig {
            channel: Channel::Scalar,
            vary: VaryParam::Z,
            range: SweepRange {
                start: 1.0,
                stop: 3.0,
                num_points: 3,
                spacing: Spacing::Linear,
            },
            fixed: AtomPairConfig {
                omega0: 1.0,
                a: 0.0,
                z: 1.0,
                symmetry: StateSymmetry::Symmetric,
                coupling_lambda: 1.0,
                dipole_a: [0.0, 0.0, 1.0],
                dipole_b: [0.0, 0.0, 1.0],
            },
            methods: vec![Method::ClosedForm],
            output_path: PathBuf::from("/dev/null"),
        };
        assert_eq!(sweep.grid(), vec![1.0, 2.0, 3.0]);
        sweep.range = SweepRange {
            start: 1.0,
            stop: 100.0,
            num_points: 3,
            spacing: Spacing::Log,
        };
        let g = sweep.grid();
        assert!((g[1] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_validation() {
        let mut sweep = SweepConfig {
            channel: Channel::Scalar,
            vary: VaryParam::A,
            range: SweepRange {
                start: 0.0,
                stop: 1.0,
                num_points: 2,
                spacing: Spacing::Linear,
            },
            fixed: AtomPairConfig {
                omega0: 1.0,
                a: 0.0,
                z: 1.0,
                symmetry: StateSymmetry::Symmetric,
                coupling_lambda: 1.0,
                dipole_a: [0.0, 0.0, 1.0],
                dipole_b: [0.0, 0.0, 1.0],
            },
            methods: vec![Method::ClosedForm],
            output_path: PathBuf::from("/dev/null"),
        };
        assert!(sweep.validate().is_ok());
        sweep.range.num_points = 1;
        assert!(sweep.validate().is_err());
        sweep.range.num_points = 2;
        sweep.range.spacing = Spacing::Log;
        assert!(sweep.validate().is_err()); // log with start = 0
        sweep.range.spacing = Spacing::Linear;
        sweep.range.stop = -1.0;
        assert!(sweep.validate().is_err());
    }

    #[test]
    fn format_is_17_significant_digits() {
        assert_eq!(fmt17(1.0), "1.0000000000000000e0");
        assert_eq!(fmt17(-0.25), "-2.5000000000000000e-1");
    }
}
