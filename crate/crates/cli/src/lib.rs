//! Command-line front end: counts, tables, sequences, generating-function
//! dumps, raw oracle runs and the verification harness.
//!
//! Exit codes: 0 success, 1 verification mismatch or internal error, 2 usage
//! error, 3 oracle size guard.

pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use matrixavoid::formulas::{self, Provenance};
use matrixavoid::patterns::{AvoidanceSpec, Oracle, HARD_MAX_CELLS};
use matrixavoid::series::{self, DEFAULT_BIVARIATE_ORDER};
use matrixavoid::{Error, PhiResult};

use crate::output::{write_csv, write_csv_rows, write_json_lines, CoefficientRecord, Format, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

/// Overrides the oracle's `k·n` guard (still capped at 30).
pub const MAX_CELLS_ENV: &str = "MATRIXAVOID_ORACLE_MAX_CELLS";

#[derive(Debug, Parser)]
#[command(name = "matrixavoid", version, about = "Count (0,1)-matrices avoiding 2x2 pattern classes")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    pub format: Format,
    /// Suppress headers and informational messages.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Size {
    /// Number of rows.
    #[arg(short = 'k')]
    pub k: usize,
    /// Number of columns.
    #[arg(short = 'n')]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// φ(k, n; α) from the closed form, or the oracle when none exists.
    Phi {
        #[arg(long)]
        alpha: AvoidanceSpec,
        #[command(flatten)]
        size: Size,
        /// Force exhaustive counting.
        #[arg(long)]
        oracle: bool,
    },
    /// Exhaustive count over all 2^(k·n) matrices.
    Oracle {
        #[arg(long)]
        alpha: AvoidanceSpec,
        #[command(flatten)]
        size: Size,
    },
    /// Grid of φ(k, n; α) for 1 ≤ k ≤ kmax, 1 ≤ n ≤ nmax.
    Table {
        #[arg(long)]
        alpha: AvoidanceSpec,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: u64,
        #[arg(long)]
        oracle: bool,
    },
    /// φ(n, n; α) for n = 0..count-1.
    Seq {
        #[arg(long)]
        alpha: AvoidanceSpec,
        /// Diagonal terms (the only sequence kind).
        #[arg(long, default_value_t = true)]
        diagonal: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Emit "index value" lines starting at index 0.
        #[arg(long)]
        bfile: bool,
    },
    /// Exact generating-function coefficients and their scaled counts.
    Egf {
        #[arg(long)]
        alpha: AvoidanceSpec,
        /// Dump the diagonal series Φ(z; α) instead of Φ(x, y; α).
        #[arg(long)]
        diag: bool,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Formula vs oracle, series vs formula, and library invariants.
    Verify {
        /// `all`, or one avoidance set per flag (repeatable).
        #[arg(long, default_value = "all")]
        alpha: Vec<String>,
        /// Compare against the oracle for every k·n up to this bound.
        #[arg(long, default_value_t = 16)]
        max_cells: usize,
        /// Bivariate series are checked on 0 ≤ k, n ≤ this order.
        #[arg(long, default_value_t = 6)]
        egf_order: usize,
        /// Diagonal series are checked on 0 ≤ n ≤ this order.
        #[arg(long, default_value_t = 8)]
        diag_order: usize,
    },
}

/// Errors that end a command with a specific exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    SizeGuard(String),
    Internal(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimitExceeded { .. } => CliError::SizeGuard(format!("{e}; use a closed form")),
            Error::UnknownSymbol(_) | Error::EmptyAlpha | Error::NoGeneratingFunction(_) | Error::InvalidArgument(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::SizeGuard(_) => EXIT_SIZE_GUARD,
            CliError::Internal(_) | CliError::Io(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::SizeGuard(m) | CliError::Internal(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

/// Oracle configured from the environment.
pub fn oracle_from_env() -> Result<Oracle, CliError> {
    match std::env::var(MAX_CELLS_ENV) {
        Ok(v) => {
            let cells: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MAX_CELLS_ENV}={v} is not a cell count")))?;
            Ok(Oracle::with_max_cells(cells.min(HARD_MAX_CELLS)))
        }
        Err(_) => Ok(Oracle::default()),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let oracle = oracle_from_env()?;
    match &cli.command {
        Command::Phi { alpha, size, oracle: force } => {
            let r = if *force {
                oracle_result(&oracle, size.k, size.n, *alpha)?
            } else {
                formulas::phi_with_oracle(size.k, size.n, alpha, &oracle)?
            };
            print_records(cli, out, &[OutputRecord::from(&r)])?;
        }
        Command::Oracle { alpha, size } => {
            let r = oracle_result(&oracle, size.k, size.n, *alpha)?;
            print_records(cli, out, &[OutputRecord::from(&r)])?;
        }
        Command::Table {
            alpha,
            kmax,
            nmax,
            oracle: force,
        } => table(cli, out, &oracle, *alpha, *kmax as usize, *nmax as usize, *force)?,
        Command::Seq {
            alpha,
            diagonal: _,
            count,
            bfile,
        } => seq(cli, out, &oracle, *alpha, *count as usize, *bfile)?,
        Command::Egf { alpha, diag, kmax, nmax } => egf(cli, out, *alpha, *diag, *kmax, *nmax)?,
        Command::Verify {
            alpha,
            max_cells,
            egf_order,
            diag_order,
        } => {
            let alphas = verify::parse_alpha_list(alpha)?;
            if *max_cells > oracle.max_cells() {
                return Err(CliError::SizeGuard(format!(
                    "--max-cells {max_cells} exceeds the oracle guard {}",
                    oracle.max_cells()
                )));
            }
            let opts = verify::VerifyOptions {
                alphas,
                max_cells: *max_cells,
                egf_order: *egf_order,
                diag_order: *diag_order,
                oracle,
            };
            let report = verify::run(&opts);
            report.write(out, cli.format, cli.quiet)?;
            if !cli.quiet && cli.format == Format::Plain {
                writeln!(err, "{} checks, {} failed", report.checks.len(), report.failures())?;
            }
            return Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH });
        }
    }
    Ok(EXIT_OK)
}

fn oracle_result(oracle: &Oracle, k: usize, n: usize, alpha: AvoidanceSpec) -> Result<PhiResult, CliError> {
    Ok(PhiResult {
        k,
        n,
        alpha,
        value: oracle.count(k, n, alpha)?,
        provenance: Provenance::Oracle,
    })
}

fn count(oracle: &Oracle, k: usize, n: usize, alpha: AvoidanceSpec, force_oracle: bool) -> Result<PhiResult, CliError> {
    if force_oracle {
        oracle_result(oracle, k, n, alpha)
    } else {
        Ok(formulas::phi_with_oracle(k, n, &alpha, oracle)?)
    }
}

fn print_records(cli: &Cli, out: &mut dyn Write, records: &[OutputRecord]) -> Result<(), CliError> {
    match cli.format {
        Format::Plain => {
            for r in records {
                writeln!(out, "{}", r.value)?;
            }
        }
        Format::Csv => write_csv(out, records)?,
        Format::Json => write_json_lines(out, records)?,
    }
    Ok(())
}

fn table(
    cli: &Cli,
    out: &mut dyn Write,
    oracle: &Oracle,
    alpha: AvoidanceSpec,
    kmax: usize,
    nmax: usize,
    force_oracle: bool,
) -> Result<(), CliError> {
    let symmetric = alpha.is_transpose_symmetric();
    let mut grid: Vec<Vec<Option<PhiResult>>> = vec![vec![None; nmax]; kmax];
    for k in 1..=kmax {
        for n in 1..=nmax {
            if symmetric && n < k && k <= nmax {
                // mirror of (n, k), filled below
                continue;
            }
            grid[k - 1][n - 1] = Some(count(oracle, k, n, alpha, force_oracle)?);
        }
    }
    for k in 1..=kmax {
        for n in 1..=nmax {
            if grid[k - 1][n - 1].is_none() {
                let mut r = grid[n - 1][k - 1].clone().expect("upper triangle computed");
                (r.k, r.n) = (k, n);
                grid[k - 1][n - 1] = Some(r);
            }
        }
    }
    let cells: Vec<Vec<PhiResult>> = grid
        .into_iter()
        .map(|row| row.into_iter().map(Option::unwrap).collect())
        .collect();
    match cli.format {
        Format::Plain => {
            let width = cells
                .iter()
                .flatten()
                .map(|r| r.value.to_string().len())
                .max()
                .unwrap_or(1)
                .max(nmax.to_string().len());
            if !cli.quiet {
                write!(out, "{:>4} |", "k\\n")?;
                for n in 1..=nmax {
                    write!(out, " {n:>width$}")?;
                }
                writeln!(out)?;
            }
            for (i, row) in cells.iter().enumerate() {
                write!(out, "{:>4} |", i + 1)?;
                for r in row {
                    write!(out, " {:>width$}", r.value.to_string())?;
                }
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut rows = Vec::with_capacity(kmax + 1);
            let mut header = vec!["k".to_string()];
            header.extend((1..=nmax).map(|n| n.to_string()));
            rows.push(header);
            for (i, row) in cells.iter().enumerate() {
                let mut line = vec![(i + 1).to_string()];
                line.extend(row.iter().map(|r| r.value.to_string()));
                rows.push(line);
            }
            write_csv_rows(out, &rows)?;
        }
        Format::Json => {
            let records: Vec<OutputRecord> = cells.iter().flatten().map(OutputRecord::from).collect();
            write_json_lines(out, &records)?;
        }
    }
    Ok(())
}

fn seq(
    cli: &Cli,
    out: &mut dyn Write,
    oracle: &Oracle,
    alpha: AvoidanceSpec,
    count_terms: usize,
    bfile: bool,
) -> Result<(), CliError> {
    let terms = (0..count_terms)
        .map(|n| count(oracle, n, n, alpha, false))
        .collect::<Result<Vec<_>, _>>()?;
    if bfile {
        for r in &terms {
            writeln!(out, "{} {}", r.n, r.value)?;
        }
        return Ok(());
    }
    match cli.format {
        Format::Plain => {
            let line: Vec<String> = terms.iter().map(|r| r.value.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Format::Csv => {
            let mut rows = vec![vec!["n".to_string(), "value".to_string()]];
            rows.extend(terms.iter().map(|r| vec![r.n.to_string(), r.value.to_string()]));
            write_csv_rows(out, &rows)?;
        }
        Format::Json => {
            let records: Vec<OutputRecord> = terms.iter().map(OutputRecord::from).collect();
            write_json_lines(out, &records)?;
        }
    }
    Ok(())
}

fn egf(
    cli: &Cli,
    out: &mut dyn Write,
    alpha: AvoidanceSpec,
    diag: bool,
    kmax: Option<usize>,
    nmax: Option<usize>,
) -> Result<(), CliError> {
    let records = if diag {
        let order = nmax.unwrap_or(series::DEFAULT_UNIVARIATE_ORDER);
        let s = series::egf_diag(alpha, order)?;
        (0..=order)
            .map(|n| {
                Ok(CoefficientRecord {
                    k: None,
                    n,
                    coefficient: s.coeff(n)?.to_string(),
                    count: s.egf_count(n)?.to_string(),
                })
            })
            .collect::<Result<Vec<_>, Error>>()?
    } else {
        let kmax = kmax.unwrap_or(DEFAULT_BIVARIATE_ORDER.0);
        let nmax = nmax.unwrap_or(DEFAULT_BIVARIATE_ORDER.1);
        let s = series::egf_bivar(alpha, kmax, nmax)?;
        let mut v = Vec::new();
        for k in 0..=kmax {
            for n in 0..=nmax {
                v.push(CoefficientRecord {
                    k: Some(k),
                    n,
                    coefficient: s.coeff(k, n)?.to_string(),
                    count: s.egf_count(k, n)?.to_string(),
                });
            }
        }
        v
    };
    match cli.format {
        Format::Plain => {
            if !cli.quiet {
                let head = if diag { "n\tcoefficient\tcount" } else { "k\tn\tcoefficient\tcount" };
                writeln!(out, "{head}")?;
            }
            for r in &records {
                match r.k {
                    Some(k) => writeln!(out, "{k}\t{}\t{}\t{}", r.n, r.coefficient, r.count)?,
                    None => writeln!(out, "{}\t{}\t{}", r.n, r.coefficient, r.count)?,
                }
            }
        }
        Format::Csv => {
            let mut rows = Vec::new();
            if diag {
                rows.push(vec!["n".into(), "coefficient".into(), "count".into()]);
                rows.extend(records.iter().map(|r| vec![r.n.to_string(), r.coefficient.clone(), r.count.clone()]));
            } else {
                rows.push(vec!["k".into(), "n".into(), "coefficient".into(), "count".into()]);
                rows.extend(records.iter().map(|r| {
                    vec![
                        r.k.unwrap_or_default().to_string(),
                        r.n.to_string(),
                        r.coefficient.clone(),
                        r.count.clone(),
                    ]
                }));
            }
            write_csv_rows(out, &rows)?;
        }
        Format::Json => write_json_lines(out, &records)?,
    }
    Ok(())
}
