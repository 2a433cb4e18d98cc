//! `pibell` — batch front end for the three-outcome permutationally-invariant
//! Bell inequality toolkit.
//!
//! Each subcommand reproduces one batch of figure data or bound computations
//! as a CSV/JSON table plus a machine-readable JSON summary of the key
//! scalars. Outputs are deterministic given the flags (including `--seed`)
//! and written atomically.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Settings {
    Qubit,
    Qutrit,
}

/// Inclusive n range `start:end:step`.
#[derive(Clone, Debug)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl std::str::FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err("expected start:end:step".into());
        }
        let parse = |p: &str| p.parse::<usize>().map_err(|e| e.to_string());
        let (start, end, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        if step == 0 || end < start {
            return Err("need step ≥ 1 and end ≥ start".into());
        }
        Ok(NRange { start, end, step })
    }
}

impl NRange {
    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.step).collect()
    }
}

/// Inclusive float interval `lo:hi`.
#[derive(Clone, Copy, Debug)]
pub struct FRange {
    pub lo: f64,
    pub hi: f64,
}

impl std::str::FromStr for FRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 2 {
            return Err("expected lo:hi".into());
        }
        let lo = parts[0].parse::<f64>().map_err(|e| e.to_string())?;
        let hi = parts[1].parse::<f64>().map_err(|e| e.to_string())?;
        if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
            return Err("need finite hi ≥ lo".into());
        }
        Ok(FRange { lo, hi })
    }
}

impl FRange {
    pub fn grid(&self, points: usize) -> Vec<f64> {
        if points <= 1 {
            return vec![self.lo];
        }
        (0..points)
            .map(|k| self.lo + (self.hi - self.lo) * k as f64 / (points - 1) as f64)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Pseudospin,
    Wineland,
    Type1,
}

#[derive(Parser, Debug)]
#[command(name = "pibell", version, about = "Three-outcome PI Bell inequalities: bounds, witnesses, spin-1 dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical bound, PSD certificate and facet check of the PI polytope.
    Polytope {
        #[arg(long)]
        n: usize,
        /// Inequality coefficients α₀,α₁,α₂,α₃,α₄ (integers).
        #[arg(long, value_delimiter = ',', num_args = 5, allow_hyphen_values = true, default_values_t = [1i64, 1, 0, 0, -2])]
        coeffs: Vec<i64>,
        /// Classical shift β_c.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        /// Saturating-vertex table destination.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Ground energies of the optimal-settings Bell operator vs n
    /// (per row: n, λ_min, HP bound, −n/4 reference line).
    BoundsVsN {
        #[arg(long, conflicts_with = "n_range")]
        n: Option<usize>,
        #[arg(long)]
        n_range: Option<NRange>,
        #[arg(long, value_enum, default_value_t = Settings::Qutrit)]
        settings: Settings,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Ground state of the Bell operator as Dicke-basis amplitudes
    /// (qutrit optimal settings, or spin-1 settings at --theta).
    GroundState {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Spin-mixing trajectory of a polar spin-1 condensate with witness data.
    Bec {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1.0)]
        c: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.2)]
        g: f64,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 400)]
        t_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Variational dimension-constrained bound β̃_d.
    DimBound {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 20260615)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Witness value over an (x, y, z) data grid; rows outside the witness
    /// domain are omitted.
    Surface {
        #[arg(long, value_enum)]
        witness: WitnessKind,
        /// Points per axis.
        #[arg(long, default_value_t = 25)]
        grid: usize,
        #[arg(long, allow_hyphen_values = true)]
        x_range: Option<FRange>,
        #[arg(long, allow_hyphen_values = true)]
        y_range: Option<FRange>,
        #[arg(long, allow_hyphen_values = true)]
        z_range: Option<FRange>,
        /// Bound β for the type-1 witness.
        #[arg(long, allow_hyphen_values = true, default_value_t = -0.25)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Minimal-eigenvector data of the spin-1 Bell operator over a θ grid,
    /// with the type-1 witness at --beta.
    Type1Scan {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 32)]
        theta_grid: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -0.25)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Worker-thread cap from PIBELL_THREADS (default: all available).
pub fn thread_cap() -> usize {
    let available = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("PIBELL_THREADS") {
        Ok(v) => v.parse::<usize>().ok().filter(|&n| n >= 1).unwrap_or(1).min(available),
        Err(_) => available,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version print and exit cleanly; usage errors map to the
            // input-error exit code.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.command {
        Command::Polytope { n, coeffs, shift, out, format } => {
            let c: [i64; 5] = coeffs.try_into().expect("clap enforces five values");
            commands::polytope(n, &c, shift, out.as_deref(), format)
        }
        Command::BoundsVsN { n, n_range, settings, out, format } => {
            let ns = match (n, n_range) {
                (Some(n), None) => vec![n],
                (None, Some(r)) => r.values(),
                (None, None) => {
                    eprintln!("error: provide --n or --n-range");
                    return ExitCode::from(1);
                }
                _ => unreachable!("clap conflict rule"),
            };
            commands::bounds_vs_n(&ns, settings, out.as_deref(), format)
        }
        Command::GroundState { n, theta, out, format } => {
            commands::ground_state(n, theta, out.as_deref(), format)
        }
        Command::Bec { n, c, g, t_max, t_steps, out, format } => {
            commands::bec(n, c, g, t_max, t_steps, out.as_deref(), format)
        }
        Command::DimBound { d, restarts, seed, out, format } => {
            commands::dim_bound(d, restarts, seed, out.as_deref(), format)
        }
        Command::Surface { witness, grid, x_range, y_range, z_range, beta, out, format } => {
            commands::surface(witness, grid, x_range, y_range, z_range, beta, out.as_deref(), format)
        }
        Command::Type1Scan { n, theta_grid, beta, out, format } => {
            commands::type1_scan(n, theta_grid, beta, out.as_deref(), format)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::CmdError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(commands::CmdError::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(3)
        }
    }
}
