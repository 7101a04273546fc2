use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spectral_tail_cli::config::{check_eps, EpsGrid, Format, RunConfig};
use spectral_tail_cli::emit::emit;
use spectral_tail_cli::{init_thread_pool, records, CliError};

#[derive(Parser, Debug)]
#[command(name = "spectral-tail", version, about = "Brackets, Weyl sums and reference spectra below -eps")]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Single level eps (overrides the config).
    #[arg(long, global = true)]
    epsilon: Option<f64>,

    /// Geometric level grid START:STOP:COUNT (overrides the config).
    #[arg(long, global = true)]
    eps_grid: Option<EpsGrid>,

    /// Partition exponent.
    #[arg(long, global = true)]
    a: Option<f64>,

    #[arg(long, global = true, value_enum)]
    oracle: Option<OnOff>,

    /// Oracle coarse grid spacing.
    #[arg(long, global = true)]
    h: Option<f64>,

    /// Oracle padding past psi_j, as a fraction of psi_j.
    #[arg(long, global = true)]
    pad: Option<f64>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the standing hypotheses on the configured family.
    Validate,
    /// Count and sum bracket at one level.
    Bracket {
        /// Emit the per-cell table instead of the summary record.
        #[arg(long)]
        per_cell: bool,
    },
    /// Weyl tail sum at one level.
    Weyl,
    /// Finite-difference reference at one level.
    Oracle,
    /// Bracket, Weyl sum and oracle over a level grid.
    Sweep,
    /// Main term and correction terms with constants C1, C2.
    Theorem,
    /// The refined width sequence delta_i.
    Partition,
    /// Partition exponent and rate for a power-decaying envelope.
    Exponents {
        #[arg(long)]
        a0: f64,
        #[arg(long)]
        m: f64,
    },
    /// The log-log decaying example family, alpha_j = j^-2 alpha(x).
    Example33 {
        /// Breakpoint b, must exceed e^3.
        #[arg(long, default_value_t = 25.0)]
        b: f64,
    },
}

struct Resolved {
    cfg: Option<RunConfig>,
    args: Args,
}

impl Resolved {
    fn new(args: Args) -> Result<Self, CliError> {
        let mut cfg = args.config.as_deref().map(RunConfig::load).transpose()?;
        if let Some(cfg) = cfg.as_mut() {
            if let Some(eps) = args.epsilon {
                cfg.run.eps = Some(eps);
                cfg.run.eps_list = None;
                cfg.run.eps_grid = None;
            }
            if let Some(grid) = args.eps_grid {
                cfg.run.eps_grid = Some(grid);
                cfg.run.eps_list = None;
            }
            if let Some(a) = args.a {
                cfg.run.a = a;
            }
            if let Some(flag) = args.oracle {
                cfg.oracle.enabled = matches!(flag, OnOff::On);
            }
            if args.h.is_some() {
                cfg.oracle.h = args.h;
            }
            if let Some(pad) = args.pad {
                cfg.oracle.pad = pad;
            }
            if let Some(format) = args.format {
                cfg.output.format = format;
            }
            if args.out.is_some() {
                cfg.output.path = args.out.clone();
            }
            cfg.validate()?;
        }
        Ok(Self { cfg, args })
    }

    fn config(&self) -> Result<&RunConfig, CliError> {
        self.cfg.as_ref().ok_or_else(|| CliError::Config("this command needs --config PATH".into()))
    }

    fn format(&self) -> Format {
        self.cfg.as_ref().map_or(self.args.format.unwrap_or_default(), |c| c.output.format)
    }

    fn out(&self) -> Option<PathBuf> {
        self.cfg.as_ref().map_or(self.args.out.clone(), |c| c.output.path.clone())
    }

    fn a(&self) -> f64 {
        self.cfg.as_ref().map_or(self.args.a.unwrap_or(spectral_tail::partition::DEFAULT_A), |c| c.run.a)
    }

    fn oracle_policy(&self) -> Option<spectral_tail::OraclePolicy> {
        match &self.cfg {
            Some(c) => c.oracle.enabled.then(|| c.oracle.policy()),
            None => {
                let enabled = !matches!(self.args.oracle, Some(OnOff::Off));
                let defaults = spectral_tail::OraclePolicy::default();
                let policy = spectral_tail::OraclePolicy {
                    h: self.args.h,
                    pad: self.args.pad.unwrap_or(defaults.pad),
                    ..defaults
                };
                enabled.then_some(policy)
            }
        }
    }

    /// The single level of a one-point command.
    fn eps(&self) -> Result<f64, CliError> {
        let eps = match (&self.cfg, self.args.epsilon) {
            (_, Some(e)) => e,
            (Some(c), None) => c.run.eps.ok_or_else(|| CliError::Config("no eps: set run.eps or pass --epsilon".into()))?,
            (None, None) => return Err(CliError::Config("no eps: pass --epsilon".into())),
        };
        check_eps(eps)?;
        Ok(eps)
    }

    fn emit<T: serde::Serialize>(&self, rows: &[T]) -> Result<(), CliError> {
        emit(rows, self.format(), self.out().as_deref())
    }
}

fn run(args: Args) -> Result<(), CliError> {
    init_thread_pool()?;
    let r = Resolved::new(args)?;
    match &r.args.command {
        Command::Validate => {
            let report = r.config()?.validation_report()?;
            for c in &report.checks {
                println!("{:<7} {}  {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::Hypotheses(failed));
            }
        }
        Command::Bracket { per_cell } => {
            let cfg = r.config()?;
            let b = records::bracket(&cfg.family()?, &cfg.potential.p, r.eps()?, cfg.run.a)?;
            if *per_cell {
                r.emit(&records::cell_rows(&b))?;
            } else {
                r.emit(&[records::BracketRow::from(&b)])?;
            }
        }
        Command::Weyl => {
            let cfg = r.config()?;
            r.emit(&[records::weyl(&cfg.family()?, &cfg.potential.p, r.eps()?)?])?;
        }
        Command::Oracle => {
            let cfg = r.config()?;
            let policy = cfg.oracle.policy();
            r.emit(&[records::oracle(&cfg.family()?, &cfg.potential.p, r.eps()?, &policy)?])?;
        }
        Command::Sweep => {
            let cfg = r.config()?;
            let levels = cfg
                .levels()
                .ok_or_else(|| CliError::Config("no levels: set run.eps_grid, run.eps_list or run.eps".into()))?;
            let policy = r.oracle_policy();
            let rows = records::sweep(&cfg.family()?, &cfg.potential.p, &levels, cfg.run.a, policy.as_ref())?;
            r.emit(&rows)?;
        }
        Command::Theorem => {
            let cfg = r.config()?;
            let row = records::theorem(&cfg.family()?, &cfg.potential.p, r.eps()?, cfg.run.a, cfg.run.c1, cfg.run.c2)?;
            r.emit(&[row])?;
        }
        Command::Partition => {
            let cfg = r.config()?;
            r.emit(&records::delta_sequence(&cfg.family()?, r.eps()?, cfg.run.a, cfg.run.refine_depth)?)?;
        }
        Command::Exponents { a0, m } => {
            r.emit(&[records::exponents(*a0, *m)?])?;
        }
        Command::Example33 { b } => {
            let eps = r.eps()?;
            let policy = r.oracle_policy();
            r.emit(&[records::example33(*b, eps, r.a(), policy.as_ref())?])?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.into()
        }
    }
}
