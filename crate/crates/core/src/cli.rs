//! Command-line front end. Every subcommand renders CSV (plus a JSON sidecar
//! for stability maps) to `--out` or stdout.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::freq::{default_sweep_range, magnitude_sweep, verify_root_design, Spacing, DEFAULT_SWEEP_POINTS};
use crate::integrators::{build_coefficients, IntegratorKind};
use crate::report;
use crate::simulate::{case_table, simulate, CaseId, SwitchPolicy, TestCaseParams, DEFAULT_STARTUP_STEPS};
use crate::stability::stability_map;
use crate::transient::transient_gain;

pub const DEFAULT_H: f64 = 2e-3;
pub const DEFAULT_FSELECT_HZ: f64 = 60.0;
pub const DEFAULT_DEMO_TEND: f64 = 0.05;
pub const DEFAULT_MAP_N: usize = 201;
pub const DEFAULT_GAIN_POINTS: usize = 91;
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "froi", version, about = "Frequency-response-optimized integrator analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the coefficient set of one integrator.
    Coeffs,
    /// Sample the relative error E(j*omega) over frequency.
    FreqSweep,
    /// |g| over a grid of lambda*h.
    StabilityMap,
    /// Real-axis gains of every integrator against exp(lambda*h).
    TransientGains,
    /// Check the designed root multiplicities of E(s).
    VerifyRoots,
    /// Reproduce a benchmark error table (6 step sizes x 6 integrators).
    Case {
        /// 1 (steady state) or 2 (initial transient).
        #[arg(long)]
        id: Option<u8>,
    },
    /// Fast-transient comparison: all integrators on the a = -5000 system.
    DemoTransient,
}

/// Flags shared by all subcommands. Any of them may also come from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// A, B, C, D, TR or BE
    #[arg(long, global = true)]
    pub integrator: Option<IntegratorKind>,
    /// Step size in seconds.
    #[arg(long, global = true)]
    pub h: Option<f64>,
    /// Tuning frequency in Hz for kinds A and B.
    #[arg(long, global = true)]
    pub fselect: Option<f64>,
    /// End time in seconds (demo-transient).
    #[arg(long, global = true)]
    pub tend: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub re_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub re_max: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub im_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub im_max: Option<f64>,
    /// Grid points (per axis for stability maps).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Lower sweep frequency, Hz.
    #[arg(long, global = true)]
    pub fmin: Option<f64>,
    /// Upper sweep frequency, Hz.
    #[arg(long, global = true)]
    pub fmax: Option<f64>,
    /// Logarithmic frequency spacing.
    #[arg(long, global = true)]
    pub log: bool,
    /// Scaled tolerance for verify-roots.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// History-free integrator used for the first steps (demo-transient).
    #[arg(long, global = true)]
    pub startup: Option<IntegratorKind>,
    #[arg(long, global = true)]
    pub startup_steps: Option<usize>,
    /// JSON file with any of the above (snake_case keys); flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Options after merging the config file with the command-line flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub integrator: Option<IntegratorKind>,
    pub h: Option<f64>,
    pub fselect: Option<f64>,
    pub tend: Option<f64>,
    pub out: Option<PathBuf>,
    pub re_min: Option<f64>,
    pub re_max: Option<f64>,
    pub im_min: Option<f64>,
    pub im_max: Option<f64>,
    pub n: Option<usize>,
    pub fmin: Option<f64>,
    pub fmax: Option<f64>,
    pub log: Option<bool>,
    pub tol: Option<f64>,
    pub startup: Option<IntegratorKind>,
    pub startup_steps: Option<usize>,
    pub id: Option<u8>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Flags given on the command line replace values from the file.
    pub fn overlay(mut self, flags: &Flags) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f.clone(); } )* };
        }
        take!(
            integrator,
            h,
            fselect,
            tend,
            out,
            re_min,
            re_max,
            im_min,
            im_max,
            n,
            fmin,
            fmax,
            tol,
            startup,
            startup_steps
        );
        if flags.log {
            self.log = Some(true);
        }
        self
    }

    fn integrator(&self) -> Result<IntegratorKind> {
        self.integrator
            .ok_or_else(|| Error::InvalidArgument("--integrator is required".into()))
    }

    fn h(&self) -> Result<f64> {
        let h = self.h.unwrap_or(DEFAULT_H);
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::NonPositiveStep(h));
        }
        Ok(h)
    }

    fn omega_select(&self) -> Result<f64> {
        let f = self.fselect.unwrap_or(DEFAULT_FSELECT_HZ);
        if !(f > 0.0) || !f.is_finite() {
            return Err(Error::InvalidArgument(format!("--fselect must be positive, got {f}")));
        }
        Ok(2.0 * PI * f)
    }
}

/// Rendered output of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub csv: String,
    pub sidecar: Option<String>,
}

pub fn load_config(flags: &Flags) -> Result<RunConfig> {
    let base = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    Ok(base.overlay(flags))
}

pub fn run(cli: Cli) -> Result<()> {
    let config = load_config(&cli.flags)?;
    dispatch(cli.command, &config)
}

/// Renders the subcommand and writes it to `config.out` (sidecar next to it
/// as `<out>.json`) or to stdout (sidecar to stderr).
pub fn dispatch(command: Command, config: &RunConfig) -> Result<()> {
    let rendered = render(command, config)?;
    match &config.out {
        Some(path) => {
            write_file(path, &rendered.csv)?;
            if let Some(side) = &rendered.sidecar {
                let mut side_path = path.clone().into_os_string();
                side_path.push(".json");
                write_file(Path::new(&side_path), side)?;
            }
        }
        None => {
            let io = |source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            };
            match std::io::stdout().write_all(rendered.csv.as_bytes()) {
                // A closed pipe (e.g. `| head`) is a normal way to stop reading.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
                other => other.map_err(io)?,
            }
            if let Some(side) = &rendered.sidecar {
                eprint!("{side}");
            }
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Validates every option the subcommand needs, then computes its output.
pub fn render(command: Command, config: &RunConfig) -> Result<Rendered> {
    let csv = |csv| Ok(Rendered { csv, sidecar: None });
    match command {
        Command::Coeffs => {
            let c = build_coefficients(config.integrator()?, config.omega_select()?, config.h()?)?;
            csv(report::coeffs_csv(&c))
        }
        Command::FreqSweep => {
            let c = build_coefficients(config.integrator()?, config.omega_select()?, config.h()?)?;
            let (lo, hi) = default_sweep_range(&c);
            let lo = config.fmin.map_or(lo, |f| 2.0 * PI * f);
            let hi = config.fmax.map_or(hi, |f| 2.0 * PI * f);
            let spacing = if config.log.unwrap_or(false) {
                Spacing::Log
            } else {
                Spacing::Linear
            };
            let n = config.n.unwrap_or(DEFAULT_SWEEP_POINTS);
            csv(report::sweep_csv(&magnitude_sweep(&c, lo, hi, n, spacing)?))
        }
        Command::StabilityMap => {
            let c = build_coefficients(config.integrator()?, config.omega_select()?, config.h()?)?;
            let re = (config.re_min.unwrap_or(-50.0), config.re_max.unwrap_or(0.0));
            let im = (config.im_min.unwrap_or(-50.0), config.im_max.unwrap_or(50.0));
            let map = stability_map(&c, re, im, config.n.unwrap_or(DEFAULT_MAP_N))?;
            Ok(Rendered {
                csv: report::map_csv(&map),
                sidecar: Some(report::map_sidecar_json(&map)),
            })
        }
        Command::TransientGains => {
            let h = config.h()?;
            let omega = config.omega_select()?;
            let n = config.n.unwrap_or(DEFAULT_GAIN_POINTS);
            if n < 2 {
                return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
            }
            let coeffs = IntegratorKind::ALL
                .iter()
                .map(|&k| build_coefficients(k, omega, h))
                .collect::<Result<Vec<_>>>()?;
            // lambda h from -1e-3 to -1e6, log spaced
            let rows = (0..n)
                .map(|i| {
                    let mu = -(10f64).powf(-3.0 + 9.0 * i as f64 / (n - 1) as f64);
                    let gains = coeffs
                        .iter()
                        .map(|c| transient_gain(c, mu / h))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((mu, gains, mu.exp()))
                })
                .collect::<Result<Vec<_>>>()?;
            csv(report::gains_csv(&IntegratorKind::ALL, &rows))
        }
        Command::VerifyRoots => {
            let kind = config.integrator()?;
            let c = build_coefficients(kind, config.omega_select()?, config.h()?)?;
            let tol = config.tol.unwrap_or(DEFAULT_ROOT_TOL);
            if !(tol > 0.0) {
                return Err(Error::InvalidArgument(format!("--tol must be positive, got {tol}")));
            }
            csv(report::roots_csv(&verify_root_design(kind, &c, tol)))
        }
        Command::Case { id } => {
            let id = id
                .or(config.id)
                .ok_or_else(|| Error::InvalidArgument("case needs --id 1 or --id 2".into()))?;
            let id = CaseId::try_from(id)?;
            csv(report::table_csv(&case_table(id)?))
        }
        Command::DemoTransient => demo_transient(config),
    }
}

fn demo_transient(config: &RunConfig) -> Result<Rendered> {
    let params = TestCaseParams::fast_transient();
    let h = config.h()?;
    let t_end = config.tend.unwrap_or(DEFAULT_DEMO_TEND);
    let system = params.system();
    let x0 = params.x0_vector();

    let policy = match config.startup {
        Some(startup) => {
            let main = config.integrator()?;
            let steps = config.startup_steps.unwrap_or(DEFAULT_STARTUP_STEPS);
            Some(SwitchPolicy::new(startup, main, steps)?)
        }
        None => None,
    };

    let mut names = vec!["exact".to_string()];
    let mut traces = Vec::new();
    for kind in IntegratorKind::ALL {
        names.push(kind.to_string());
        traces.push(simulate(&system, kind, params.omega_syn, h, t_end, &x0, None)?);
    }
    if let Some(p) = &policy {
        names.push(format!("{}_then_{}", p.startup_kind, p.main_kind));
        traces.push(simulate(
            &system,
            p.main_kind,
            params.omega_syn,
            h,
            t_end,
            &x0,
            Some(p),
        )?);
    }
    let base = &traces[0];
    let exact: Vec<f64> = base.times().map(|t| params.analytic(t)).collect();
    let mut columns = vec![exact];
    columns.extend(traces.iter().map(|t| t.component(0)));
    Ok(Rendered {
        csv: report::columns_csv(base, &names, &columns),
        sidecar: None,
    })
}
