use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rademacher_cli::commands::rows_svg;
use rademacher_cli::report::{csv_string, json_string};
use rademacher_cli::{
    cmd_check, cmd_constants, cmd_disproof, cmd_figures, CliError, CliResult, ComparisonRow, Modes, OutputFormat,
    RunConfig, Session,
};

#[derive(Parser)]
#[command(name = "rademacher", version, about = "Exact values and asymptotics of C_{0,1,l}(N)")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = rademacher::DEFAULT_PRECISION)]
    prec_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Directory for output files; stdout when absent (figures default to the current directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args, Clone)]
struct Range {
    #[arg(long, default_value_t = 100)]
    from: u32,
    #[arg(long, default_value_t = 150)]
    to: u32,
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// Significant digits of exact decimals.
    #[arg(long, default_value_t = 17)]
    digits: usize,
    /// Evaluate exact values in floats for N above this bound.
    #[arg(long)]
    float_exact_above: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Saddle point and derived constants.
    Constants {
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Exact rational coefficients for one N.
    Exact {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, default_value_t = 17)]
        digits: usize,
    },
    /// Asymptotic main term over a range.
    Asymptotic(Range),
    /// Approximate contour integral over a range.
    Integral(Range),
    /// Exact values against the approximations.
    Compare {
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value = "exact,asymptotic")]
        modes: String,
    },
    /// Data (and with --format svg, charts) for the three comparison figures.
    Figures,
    /// Peak growth of the exact values.
    Disproof {
        #[arg(long, default_value_t = 80)]
        from: u32,
        #[arg(long, default_value_t = 150)]
        to: u32,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long)]
        float_exact_above: Option<u32>,
    },
    /// Numeric witnesses; exits 1 on any failure.
    Check,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
            Format::Svg => OutputFormat::Svg,
        }
    }
}

fn emit(cli: &Cli, stem: &str, text: String) -> CliResult<()> {
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let ext = match cli.format {
                Format::Csv => "csv",
                Format::Json => "json",
                Format::Svg => "svg",
            };
            let path = dir.join(format!("{stem}.{ext}"));
            std::fs::write(&path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_rows(cli: &Cli, stem: &str, rows: &[ComparisonRow]) -> CliResult<()> {
    for r in rows {
        if let Some(note) = &r.note {
            eprintln!("N = {}: {note}", r.n);
        }
    }
    let text = match cli.format {
        Format::Csv => csv_string(rows)?,
        Format::Json => json_string(&rows)? + "\n",
        Format::Svg => rows_svg(rows, stem),
    };
    emit(cli, stem, text)
}

fn emit_report<T: serde::Serialize + std::fmt::Display>(cli: &Cli, stem: &str, report: &T) -> CliResult<()> {
    let text = match cli.format {
        Format::Json => json_string(report)? + "\n",
        _ => report.to_string(),
    };
    emit(cli, stem, text)
}

fn range_config(cli: &Cli, r: &Range, modes: Modes) -> RunConfig {
    RunConfig {
        precision_bits: cli.prec_bits,
        n_from: r.from,
        n_to: r.to,
        l: r.l,
        output_format: cli.format.into(),
        modes,
        digits: r.digits,
        float_exact_above: r.float_exact_above,
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    if cli.prec_bits < rademacher::MIN_PRECISION {
        return Err(CliError::Usage(format!("--prec-bits must be at least {}", rademacher::MIN_PRECISION)));
    }
    let mut session = Session::new(cli.prec_bits);
    match &cli.command {
        Command::Constants { digits } => {
            let report = cmd_constants(&mut session, *digits)?;
            emit_report(cli, "constants", &report)?;
        }
        Command::Exact { n, l, digits } => {
            let ls: Vec<u32> = match l {
                Some(l) => vec![*l],
                None => (1..=*n).collect(),
            };
            let mut rows = Vec::new();
            for l in ls {
                let cfg = RunConfig {
                    precision_bits: cli.prec_bits,
                    n_from: *n,
                    n_to: *n,
                    l,
                    output_format: cli.format.into(),
                    modes: Modes { exact: true, asymptotic: false, integral: false },
                    digits: *digits,
                    float_exact_above: None,
                };
                if l > *n {
                    return Err(CliError::Core(rademacher::Error::Range { l, n: *n }));
                }
                rows.extend(session.compare(&cfg)?);
            }
            emit_rows(cli, "exact", &rows)?;
        }
        Command::Asymptotic(r) => {
            let modes = Modes { exact: false, asymptotic: true, integral: false };
            let rows = session.compare(&range_config(cli, r, modes))?;
            emit_rows(cli, "asymptotic", &rows)?;
        }
        Command::Integral(r) => {
            let modes = Modes { exact: false, asymptotic: false, integral: true };
            let rows = session.compare(&range_config(cli, r, modes))?;
            emit_rows(cli, "integral", &rows)?;
        }
        Command::Compare { range, modes } => {
            let rows = session.compare(&range_config(cli, range, Modes::parse(modes)?))?;
            emit_rows(cli, "compare", &rows)?;
        }
        Command::Figures => {
            let cfg = RunConfig {
                precision_bits: cli.prec_bits,
                output_format: cli.format.into(),
                ..Default::default()
            };
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            for path in cmd_figures(&mut session, &cfg, &dir)? {
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Disproof { from, to, l, float_exact_above } => {
            let cfg = RunConfig {
                precision_bits: cli.prec_bits,
                n_from: *from,
                n_to: *to,
                l: *l,
                float_exact_above: *float_exact_above,
                ..Default::default()
            };
            let report = cmd_disproof(&mut session, &cfg)?;
            emit_report(cli, "disproof", &report)?;
        }
        Command::Check => {
            let report = cmd_check(&mut session)?;
            emit_report(cli, "check", &report)?;
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
