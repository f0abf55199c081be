//! The `sparse-monge` command line.
//!
//! All I/O goes through the handles passed to [`run`], so the commands can be
//! driven in-process.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::format::{
    condensed_to_string, dense_to_string, parse_condensed, parse_dense, parse_permutation,
    parse_sequence, rank_reduce,
};
use crate::lis::{build_lis_index, RangeLisIndex};
use crate::matrix::{to_condensed, CondensedMatrix};
use crate::minplus::{multiply, multiply_with_witness};
use crate::reference::{minplus_dense, random_monge_condensed, random_permutation, GeneratorSpec};

/// Largest `p + q + r` for which `multiply --check` runs the dense oracle.
pub const CHECK_LIMIT: usize = 512;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) | Error::InvalidArgument(_) => EXIT_PARSE,
        Error::DimensionMismatch(_) | Error::IndexOutOfRange { .. } => EXIT_DIMENSION,
        Error::Overflow => EXIT_OVERFLOW,
        Error::InvalidMatrix(_) | Error::NotMonge(_) | Error::NotPermutation(_) => EXIT_INVARIANT,
    }
}

/// Reports the peak heap usage of a measured region. The binary backs this
/// with a counting global allocator.
pub trait AllocProbe {
    /// Starts a new region at the current heap size.
    fn reset(&self);
    /// Peak heap size since the last reset, minus the size at the reset.
    fn peak(&self) -> usize;
}

#[derive(Parser, Debug)]
#[command(name = "sparse-monge", version, about = "Core-sparse Monge matrix products and range LIS queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random Monge matrix in condensed form.
    GenMonge {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Exact number of core elements.
        #[arg(long, conflicts_with = "density")]
        delta: Option<usize>,
        /// Probability that a density cell is occupied.
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, default_value_t = 1 << 28)]
        max_boundary: i64,
        #[arg(long, default_value_t = 1 << 10)]
        max_core: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Min-plus product of two condensed matrices.
    Multiply {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Answer `i k` witness queries read from standard input.
        #[arg(long)]
        witness: bool,
        /// Compare against the dense product (small inputs only).
        #[arg(long)]
        check: bool,
    },
    /// Check that a `.cm` file is well formed.
    Verify {
        path: PathBuf,
        /// Also require every core value to be positive.
        #[arg(long)]
        monge: bool,
    },
    /// Convert a dense matrix file to condensed form.
    Dense2cm {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a condensed matrix file to dense form.
    Cm2dense {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a range LIS index and answer `value i j` / `report i j` queries
    /// from standard input.
    Lis {
        perm: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Accept any distinct integers and replace them by their ranks.
        #[arg(long)]
        rank_reduce: bool,
    },
    /// Time multiply or LIS index construction over a range of sizes.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Multiply,
    Lis,
}

pub struct Io<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, io: Io<'_>, probe: Option<&dyn AllocProbe>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io.stdout, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(io.stderr, "{line}");
            return EXIT_PARSE;
        }
    };
    let outcome = dispatch(cli.command, io.stdin, io.stdout, probe);
    let flushed = io.stdout.flush().map_err(Error::from);
    match outcome.and(flushed) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn emit(output: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
        })?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(
    command: Command,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    probe: Option<&dyn AllocProbe>,
) -> Result<()> {
    match command {
        Command::GenMonge {
            rows,
            cols,
            delta,
            density,
            max_boundary,
            max_core,
            seed,
            output,
        } => {
            let spec = match (delta, density) {
                (_, Some(p)) => GeneratorSpec::with_probability(rows, cols, p, seed),
                (d, None) => GeneratorSpec::with_count(rows, cols, d.unwrap_or(0), seed),
            }
            .values(max_boundary, max_core);
            let m = random_monge_condensed(&spec)?;
            emit(&output, &condensed_to_string(&m), stdout)
        }
        Command::Multiply {
            a,
            b,
            output,
            witness,
            check,
        } => cmd_multiply(&a, &b, &output, witness, check, stdin, stdout),
        Command::Verify { path, monge } => {
            let m = parse_condensed(&read(&path)?)?;
            if monge {
                if let Some(e) = m.core().iter().find(|e| e.v <= 0) {
                    return Err(Error::NotMonge(format!(
                        "core value {} at ({}, {})",
                        e.v, e.i, e.j
                    )));
                }
            }
            writeln!(stdout, "ok {} {} {}", m.rows(), m.cols(), m.delta())?;
            Ok(())
        }
        Command::Dense2cm { input, output } => {
            let m = to_condensed(&parse_dense(&read(&input)?)?)?;
            emit(&output, &condensed_to_string(&m), stdout)
        }
        Command::Cm2dense { input, output } => {
            let m = parse_condensed(&read(&input)?)?.to_dense()?;
            emit(&output, &dense_to_string(&m), stdout)
        }
        Command::Lis {
            perm,
            alpha,
            rank_reduce: reduce,
        } => {
            let text = read(&perm)?;
            let perm = if reduce {
                rank_reduce(&parse_sequence(&text)?)?
            } else {
                parse_permutation(&text)?
            };
            let index = build_lis_index(&perm, alpha)?;
            lis_queries(&index, stdin, stdout)
        }
        Command::Bench {
            suite,
            sizes,
            reps,
            csv,
            seed,
            alpha,
        } => {
            if reps == 0 {
                return Err(Error::InvalidArgument("--reps must be positive".into()));
            }
            let mut out = String::from("size,delta,time_ns,alloc_bytes\n");
            for &n in &sizes {
                let (delta, time_ns, alloc) = match suite {
                    Suite::Multiply => bench_multiply(n, reps, seed, probe)?,
                    Suite::Lis => bench_lis(n, reps, seed, alpha, probe)?,
                };
                out.push_str(&format!("{n},{delta},{time_ns},{alloc}\n"));
            }
            emit(&csv, &out, stdout)
        }
    }
}

fn cmd_multiply(
    a: &Path,
    b: &Path,
    output: &Option<PathBuf>,
    witness: bool,
    check: bool,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
) -> Result<()> {
    let a = parse_condensed(&read(a)?)?;
    let b = parse_condensed(&read(b)?)?;
    if a.cols() != b.rows() {
        return Err(Error::dims(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let total = a.rows() + a.cols() + b.cols();
    if check && total > CHECK_LIMIT {
        return Err(Error::dims(format!(
            "--check needs p + q + r <= {CHECK_LIMIT}, got {total}"
        )));
    }
    let (c, oracle) = if witness || check {
        let (c, w) = multiply_with_witness(&a, &b)?;
        (c, Some(w))
    } else {
        (multiply(&a, &b)?, None)
    };
    if check {
        check_product(&a, &b, &c, oracle.as_ref().expect("witness computed"))?;
    }
    emit(output, &condensed_to_string(&c), stdout)?;
    if witness {
        let oracle = oracle.expect("witness computed");
        for (n, line) in stdin.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (i, k) = two_indices(&line, n + 1)?;
            writeln!(stdout, "{}", oracle.query(i, k)?)?;
        }
    }
    Ok(())
}

fn check_product(
    a: &CondensedMatrix,
    b: &CondensedMatrix,
    c: &CondensedMatrix,
    w: &crate::minplus::WitnessOracle,
) -> Result<()> {
    let (dense, wit) = minplus_dense(&a.to_dense()?, &b.to_dense()?)?;
    let got = c.to_dense()?;
    for i in 0..dense.rows() {
        for k in 0..dense.cols() {
            if got.get(i, k) != dense.get(i, k) {
                return Err(Error::invalid(format!(
                    "check failed at ({i}, {k}): {} but the dense product has {}",
                    got.get(i, k),
                    dense.get(i, k)
                )));
            }
            if w.query(i, k)? as i64 != wit.get(i, k) {
                return Err(Error::invalid(format!(
                    "check failed at ({i}, {k}): witness {} but the smallest is {}",
                    w.query(i, k)?,
                    wit.get(i, k)
                )));
            }
        }
    }
    Ok(())
}

fn two_indices(text: &str, line: usize) -> Result<(usize, usize)> {
    let t: Vec<&str> = text.split_whitespace().collect();
    if t.len() != 2 {
        return Err(Error::parse(line, format!("expected two indices, got `{text}`")));
    }
    let n = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("`{s}` is not an index")))
    };
    Ok((n(t[0])?, n(t[1])?))
}

fn lis_queries(index: &RangeLisIndex, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<()> {
    let mut positions = Vec::new();
    for (n, line) in stdin.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (kind, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let (i, j) = two_indices(rest, n + 1)?;
        match kind {
            "value" => writeln!(stdout, "{}", index.lis_value(i, j)?)?,
            "report" => {
                positions.clear();
                index.lis_report_into(i, j, &mut positions)?;
                for &p in &positions {
                    writeln!(stdout, "({p}, {})", index.permutation()[p])?;
                }
            }
            other => {
                return Err(Error::parse(
                    n + 1,
                    format!("unknown query `{other}`, expected `value` or `report`"),
                ))
            }
        }
    }
    Ok(())
}

/// Runs `f` `reps` times and keeps the fastest run and the largest peak.
fn measure<T>(
    reps: usize,
    probe: Option<&dyn AllocProbe>,
    mut f: impl FnMut() -> Result<T>,
) -> Result<(T, u128, usize)> {
    let mut best = u128::MAX;
    let mut peak = 0;
    let mut last = None;
    for _ in 0..reps {
        if let Some(p) = probe {
            p.reset();
        }
        let t = Instant::now();
        let out = f()?;
        best = best.min(t.elapsed().as_nanos());
        if let Some(p) = probe {
            peak = peak.max(p.peak());
        }
        last = Some(out);
    }
    Ok((last.expect("reps > 0"), best, peak))
}

/// `n x n` factors with `n` core elements each.
fn bench_multiply(
    n: usize,
    reps: usize,
    seed: u64,
    probe: Option<&dyn AllocProbe>,
) -> Result<(usize, u128, usize)> {
    let a = random_monge_condensed(&GeneratorSpec::with_count(n, n, n, seed))?;
    let b = random_monge_condensed(&GeneratorSpec::with_count(n, n, n, seed ^ 0x5eed))?;
    let (_, t, alloc) = measure(reps, probe, || multiply(&a, &b))?;
    Ok((a.delta() + b.delta(), t, alloc))
}

fn bench_lis(
    n: usize,
    reps: usize,
    seed: u64,
    alpha: f64,
    probe: Option<&dyn AllocProbe>,
) -> Result<(usize, u128, usize)> {
    let perm = random_permutation(n, seed);
    let mut delta = 0;
    let (_, t, alloc) = measure(reps, probe, || {
        RangeLisIndex::build_traced(&perm, alpha, |s, m| {
            if s.len() == n {
                delta = m.delta();
            }
        })
    })?;
    Ok((delta, t, alloc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("sparse-monge").chain(args.iter().copied()),
            Io {
                stdin: &mut stdin,
                stdout: &mut out,
                stderr: &mut err,
            },
            None,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [
            exit_code(&Error::parse(1, "x")),
            exit_code(&Error::dims("x")),
            exit_code(&Error::Overflow),
            exit_code(&Error::invalid("x")),
        ];
        assert_eq!(codes, [2, 3, 4, 5]);
    }

    #[test]
    fn unknown_flag_is_one_line() {
        let (code, out, err) = run_capture(&["verify", "--bogus", "x"], "");
        assert_eq!(code, EXIT_PARSE);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("multiply"));
    }

    #[test]
    fn gen_monge_is_deterministic() {
        let args = ["gen-monge", "--rows", "6", "--cols", "5", "--delta", "7", "--seed", "3"];
        let (code, first, _) = run_capture(&args, "");
        assert_eq!(code, 0);
        assert_eq!(run_capture(&args, "").1, first);
        let m = parse_condensed(&first).unwrap();
        assert_eq!((m.rows(), m.cols(), m.delta()), (6, 5, 7));
        assert!(m.is_monge());
    }

    #[test]
    fn bench_csv_shape() {
        let (code, out, _) =
            run_capture(&["bench", "--suite", "multiply", "--sizes", "16,32", "--reps", "1"], "");
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "size,delta,time_ns,alloc_bytes");
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.split(',').count() == 4));
        assert!(lines[1].starts_with("16,32,"));
    }
}
