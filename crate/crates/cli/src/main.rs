//! `onecut`: equilibrium measures, diagonal recurrence coefficients and
//! their large-n expansions from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a verification check
//! fails, 2 for configuration and convergence errors. Data is written to
//! standard output, diagnostics to standard error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use config::CommandKind;

#[derive(Parser)]
#[command(name = "onecut", version, about = "Orthogonal polynomials with varying weights e^{-nV}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Common {
    /// `poly:c0,c1,...,cd` (ascending) or `jacobi:A,B`
    #[arg(long)]
    potential: Option<String>,
    /// Significand bits [default: 256, or $ONECUT_PRECISION_BITS]
    #[arg(long)]
    precision_bits: Option<String>,
    /// Digits to certify and print [default: 30]
    #[arg(long)]
    digits: Option<String>,
    /// Output format
    #[arg(long)]
    format: Option<String>,
    /// Flat `key = value` file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write the run metadata as JSON to this file
    #[arg(long)]
    meta_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Equilibrium measure: endpoints, density factor, regularity
    Eqm {
        #[command(flatten)]
        common: Common,
    },
    /// Diagonal recurrence coefficients as CSV `n,a_nn,b_nn`
    Rec {
        #[command(flatten)]
        common: Common,
        /// Largest index n [default: 40, 64 for jacobi-check]
        #[arg(long)]
        n_max: Option<String>,
    },
    /// Endpoint Laurent data, correction moments and beta1
    Rh {
        #[command(flatten)]
        common: Common,
        /// Which report to produce
        #[arg(long)]
        report: Option<String>,
    },
    /// Inverse-power fit of a recurrence table produced by `rec`
    Fit {
        #[command(flatten)]
        common: Common,
        /// `lo:hi` [default: n_max/2:n_max]
        #[arg(long)]
        window: Option<String>,
        /// Comma-separated exponents of 1/n
        #[arg(long)]
        powers: Option<String>,
        /// a, b or both
        #[arg(long)]
        column: Option<String>,
        /// CSV file [default: standard input]
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Full pipeline: equilibrium, recurrence, fits, comparison
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest index n [default: 40, 64 for jacobi-check]
        #[arg(long)]
        n_max: Option<String>,
        /// `lo:hi` fit window
        #[arg(long)]
        window: Option<String>,
        /// `name=value`; names: limit, beta1, odd_alpha
        #[arg(long)]
        tol: Vec<String>,
        /// Write (n, b_nn - fitted limit) for gnuplot
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Cross-check the b fit with Richardson extrapolation
        #[arg(long)]
        richardson: bool,
    },
    /// Compare the Jacobi field against its closed-form coefficients
    JacobiCheck {
        #[command(flatten)]
        common: Common,
        /// Exponent of (1-x) per unit n
        #[arg(long = "A")]
        a: Option<String>,
        /// Exponent of (1+x) per unit n
        #[arg(long = "B")]
        b: Option<String>,
        /// Largest index n [default: 40, 64 for jacobi-check]
        #[arg(long)]
        n_max: Option<String>,
        /// `lo:hi` fit window
        #[arg(long)]
        window: Option<String>,
        /// `name=value`; names: limit, beta1, jacobi_rel
        #[arg(long)]
        tol: Vec<String>,
    },
}

#[derive(Default)]
struct Flags(Vec<(String, String)>);

impl Flags {
    fn opt<T: ToString>(&mut self, key: &str, value: &Option<T>) -> &mut Self {
        if let Some(v) = value {
            self.0.push((key.to_string(), v.to_string()));
        }
        self
    }

    fn path(&mut self, key: &str, value: &Option<PathBuf>) -> &mut Self {
        self.opt(key, &value.as_ref().map(|p| p.display().to_string()))
    }

    fn common(&mut self, c: &Common) -> &mut Self {
        self.opt("potential", &c.potential)
            .opt("precision-bits", &c.precision_bits)
            .opt("digits", &c.digits)
            .opt("format", &c.format)
            .path("meta-out", &c.meta_out)
    }

    fn tols(&mut self, tols: &[String]) -> &mut Self {
        for t in tols {
            self.0.push(("tol".to_string(), t.clone()));
        }
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut flags = Flags::default();
    let (kind, common) = match &cli.command {
        Command::Eqm { common } => {
            flags.common(common);
            (CommandKind::Eqm, common)
        }
        Command::Rec { common, n_max } => {
            flags.common(common).opt("n-max", n_max);
            (CommandKind::Rec, common)
        }
        Command::Rh { common, report } => {
            flags.common(common).opt("report", report);
            (CommandKind::Rh, common)
        }
        Command::Fit { common, window, powers, column, input } => {
            flags.common(common).opt("window", window).opt("powers", powers).opt("column", column).path("input", input);
            (CommandKind::Fit, common)
        }
        Command::Verify { common, n_max, window, tol, plot, richardson } => {
            flags.common(common).opt("n-max", n_max).opt("window", window).tols(tol).path("plot", plot);
            if *richardson {
                flags.opt("richardson", &Some("true"));
            }
            (CommandKind::Verify, common)
        }
        Command::JacobiCheck { common, a, b, n_max, window, tol } => {
            flags.common(common).opt("A", a).opt("B", b).opt("n-max", n_max).opt("window", window).tols(tol);
            (CommandKind::JacobiCheck, common)
        }
    };

    let cfg = match config::resolve(kind, flags.0, common.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprint!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match kind {
        CommandKind::Eqm => commands::eqm(&cfg, &mut out),
        CommandKind::Rec => commands::rec(&cfg, &mut out),
        CommandKind::Rh => commands::rh(&cfg, &mut out),
        CommandKind::Fit => commands::fit(&cfg, &mut std::io::stdin().lock(), &mut out),
        CommandKind::Verify => commands::verify(&cfg, &mut out),
        CommandKind::JacobiCheck => commands::jacobi_check(&cfg, &mut out),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
