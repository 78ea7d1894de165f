//! `nadslab`: verification reports for the Thue–Morse shift system and the
//! quad-exponent rotation model.
//!
//! Exit codes: 0 every check passed, 1 a check was falsified, 2 invalid
//! parameters or syntax, 3 the materialization cap was exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nadslab_core::checkers::{self, BanksConfig, Example1Config};
use nadslab_core::schedule::{quad_exponent, Lab};
use nadslab_core::{Cap, LabError, Point, Report, CAP_ENV_VAR};

#[derive(Parser, Debug)]
#[command(
    name = "nadslab",
    version,
    about = "Exact verifier for two non-autonomous dynamical systems"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    /// Materialization cap in symbols.
    #[arg(long, value_name = "N", env = CAP_ENV_VAR, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verifier and emit its report.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Point in `u(v)` syntax (claim2 single-point mode).
        #[arg(long)]
        point: Option<String>,
        /// Block index n.
        #[arg(long)]
        n: Option<usize>,
        /// Periodicity or fixed-point horizon; defaults depend on the target.
        #[arg(long)]
        k: Option<usize>,
        /// Cylinder resolution L.
        #[arg(long, default_value_t = 6)]
        resolution: usize,
    },
    /// Emit a raw sequence.
    Emit {
        #[arg(value_enum)]
        what: Sequence,
        #[arg(long)]
        length: usize,
    },
    /// Construct a sensitivity witness near a point.
    Witness {
        /// Point in `u(v)` syntax.
        #[arg(long)]
        point: String,
        /// Radius exponent: the witness lies within 2^(-m).
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Claim1,
    Claim2,
    Claim3,
    Example1,
    Banks,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Sequence {
    /// ξ_1 ⋯ ξ_L
    ThueMorse,
    /// Per-step shift power of g_i (1 for σ, 2 for σ²).
    Schedule,
    /// S(1) ⋯ S(L)
    ShiftAmounts,
    /// e_1 ⋯ e_L of the quad-exponent schedule.
    Exponents,
}

impl Sequence {
    fn name(self) -> &'static str {
        match self {
            Sequence::ThueMorse => "thue-morse",
            Sequence::Schedule => "schedule",
            Sequence::ShiftAmounts => "shift-amounts",
            Sequence::Exponents => "exponents",
        }
    }
}

fn exit_code_for(e: &LabError) -> u8 {
    match e {
        LabError::CapExceeded { .. } => 3,
        LabError::BlockMismatch { .. } | LabError::NoWitnessFound { .. } => 1,
        _ => 2,
    }
}

fn verify(
    lab: &Lab,
    target: Target,
    point: Option<&str>,
    n: Option<usize>,
    k: Option<usize>,
    resolution: usize,
) -> Result<Report, LabError> {
    let banks_config = || {
        let mut c = BanksConfig::at_resolution(resolution);
        if let Some(n) = n {
            c.n = n;
        }
        if let Some(k) = k {
            c.horizon = k;
        }
        c
    };
    let example1_config = || {
        let mut c = Example1Config::default();
        if let Some(k) = k {
            c.horizon = k as u64;
        }
        c
    };
    Ok(match target {
        Target::Claim1 => checkers::mixing_report(lab, resolution)?,
        Target::Claim2 => {
            let n = n.unwrap_or(3);
            let k = k.unwrap_or(100);
            match point {
                Some(p) => checkers::verify_claim2(lab, &p.parse::<Point>()?, n, k)?.report(),
                None => checkers::dense_periodic_points(lab, resolution, n, k)?.report(),
            }
        }
        Target::Claim3 => checkers::verify_claim3(lab, k.unwrap_or(10_000))?.report(),
        Target::Example1 => checkers::example1_report(&example1_config()),
        Target::Banks => checkers::banks_hypotheses_report(lab, &banks_config())?,
        Target::All => {
            let mut r = Report::new("all").param("resolution", resolution);
            r.section(checkers::banks_hypotheses_report(lab, &banks_config())?);
            r.section(checkers::example1_report(&example1_config()));
            r
        }
    })
}

fn emit(lab: &Lab, what: Sequence, length: usize, format: Format) -> Result<String, LabError> {
    lab.cap().check(length)?;
    let values: Vec<i64> = match what {
        Sequence::ThueMorse => lab.prefix(length)?.iter().map(i64::from).collect(),
        Sequence::Schedule => lab
            .prefix(length)?
            .iter()
            .map(|s| 1 + i64::from(s))
            .collect(),
        Sequence::ShiftAmounts => lab
            .shift_amounts(length)?
            .into_iter()
            .skip(1)
            .map(|s| s as i64)
            .collect(),
        Sequence::Exponents => (1..=length as u64).map(quad_exponent).collect(),
    };
    Ok(match format {
        Format::Structured => {
            let doc = serde_json::json!({
                "sequence": what.name(),
                "length": length,
                "values": values,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json");
            s.push('\n');
            s
        }
        Format::Text if what == Sequence::ThueMorse => {
            let mut s: String = values
                .iter()
                .map(|v| if *v == 0 { '0' } else { '1' })
                .collect();
            s.push('\n');
            s
        }
        Format::Text => {
            let tokens: Vec<String> = values.iter().map(i64::to_string).collect();
            format!("{}\n", tokens.join(" "))
        }
    })
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json(),
    }
}

fn run(cli: &Cli) -> Result<(String, bool), LabError> {
    let lab = Lab::new(cli.cap.map(Cap).unwrap_or_default());
    match &cli.command {
        Command::Verify {
            target,
            point,
            n,
            k,
            resolution,
        } => {
            let report = verify(&lab, *target, point.as_deref(), *n, *k, *resolution)?;
            Ok((render(&report, cli.format), report.passed()))
        }
        Command::Emit { what, length } => Ok((emit(&lab, *what, *length, cli.format)?, true)),
        Command::Witness { point, m } => {
            let x: Point = point.parse()?;
            let report = checkers::sensitivity_witness(&lab, &x, *m)?.report();
            Ok((render(&report, cli.format), report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, passed)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &output) {
                    eprintln!("nadslab: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{output}");
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("nadslab: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
