//! Command-line front end. [`run`] parses arguments and returns the exit
//! code together with everything the command printed, so the binary is a
//! thin wrapper and the commands are testable in-process.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bipoly::{rat, Poly2};
use crate::error::Error;
use crate::geometry::{Board, Enumerator, DEFAULT_MAX_CELLS};
use crate::layerdp::LayerDp;
use crate::recurrences::{
    baseline_2xn, baseline_u, charpoly, iterate_system, matrix_bricks, matrix_m, matrix_u,
    reference_recurrence_bricks, reference_recurrence_r, reference_recurrence_unbreakable,
    system_m_initial,
};
use crate::verify::{verify_identities, verify_oracle, verify_theorems, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cubetile",
    version,
    about = "Exact counts of colored cube and brick tilings of 2x2xn boards"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weighted tiling counts for one index or an inclusive range.
    Count(CountArgs),
    /// Monic characteristic polynomial of a transfer system.
    Charpoly(CharpolyArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Emit an OEIS b-file (`n value` lines, offset 0).
    Oeis(OeisArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// All tilings of the full board.
    Full,
    /// Tilings breakable at no interior layer boundary.
    Unbreakable,
    /// Tilings without cubes (a = 0).
    Bricks,
    /// Defect board family J1..J5, selected with --j.
    Defect,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendArg {
    Exhaustive,
    #[default]
    Dp,
    Recurrence,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Bfile,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("index").required(true).args(["n", "range"])))]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Defect family, 1..=5 (only with --family defect).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub j: Option<u8>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Inclusive range `A..B` (or `A..=B`).
    #[arg(long, value_parser = parse_range)]
    pub range: Option<RangeInclusive<usize>>,
    /// Cube weight.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    /// Brick weight.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Cell limit for the exhaustive backend.
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixArg {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "U", alias = "u")]
    U,
    Bricks,
}

#[derive(Args, Debug)]
pub struct CharpolyArgs {
    #[arg(long, value_enum)]
    pub matrix: MatrixArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Identities,
    Oracle,
    Theorems,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub scope: Scope,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    /// Print the report as JSON instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Cell limit for exhaustive enumeration in the oracle suite.
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SequenceId {
    /// Fibonacci numbers F_n.
    #[value(name = "A000045")]
    A000045,
    /// 2xn boards with squares and dominoes.
    #[value(name = "A030186")]
    A030186,
    /// 2x2xn boards with cubes and bricks.
    #[value(name = "A033516")]
    A033516,
    /// 2x2xn boards with bricks only.
    #[value(name = "A006253")]
    A006253,
    /// Unbreakable 2x2xn tilings (no OEIS entry).
    Unbreakable,
}

#[derive(Args, Debug)]
#[command(after_help = "All sequences are emitted from offset 0.")]
pub struct OeisArgs {
    #[arg(long, value_enum)]
    pub id: SequenceId,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
}

/// JSON document emitted by `count --format json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub backend: String,
    pub results: Vec<ResultRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: usize,
    pub value: Poly2,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {lo:?}"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::Count(args) => cmd_count(args),
        Command::Charpoly(args) => cmd_charpoly(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oeis(args) => cmd_oeis(args),
    }
}

/// Symbolic values for indices `0..=hi` (defect families start at 1 and
/// hold zero at index 0).
fn family_values(args: &CountArgs, hi: usize) -> Result<Vec<Poly2>, Error> {
    let enumerator = Enumerator::with_limit(args.max_cells);
    let exhaustive = |f: &dyn Fn(usize) -> Result<Poly2, Error>| (0..=hi).map(f).collect();
    let top = hi as i64;
    match (args.family, args.backend) {
        (Family::Full, BackendArg::Exhaustive) => {
            exhaustive(&|n| enumerator.count_exhaustive(&Board::full(n)))
        }
        (Family::Full, BackendArg::Dp) => Ok(LayerDp::default().sequence(hi)),
        (Family::Full, BackendArg::Recurrence) => reference_recurrence_r().sequence(top),
        (Family::Unbreakable, BackendArg::Exhaustive) => {
            exhaustive(&|n| enumerator.count_unbreakable_exhaustive(&Board::full(n)))
        }
        (Family::Unbreakable, BackendArg::Dp) => Ok(LayerDp::default().unbreakable_sequence(hi)),
        (Family::Unbreakable, BackendArg::Recurrence) => {
            reference_recurrence_unbreakable().sequence(top)
        }
        (Family::Bricks, BackendArg::Exhaustive) => exhaustive(&|n| {
            Ok(enumerator
                .count_exhaustive(&Board::full(n))?
                .substitute(Some(&rat(0)), None))
        }),
        (Family::Bricks, BackendArg::Dp) => {
            Ok(LayerDp::new(&Poly2::zero(), &Poly2::b()).sequence(hi))
        }
        (Family::Bricks, BackendArg::Recurrence) => reference_recurrence_bricks().sequence(top),
        (Family::Defect, backend) => {
            let j = args.j.expect("checked by caller");
            let dp = LayerDp::default();
            let mut out = vec![Poly2::zero()];
            for n in 1..=hi {
                out.push(match backend {
                    BackendArg::Exhaustive => enumerator.count_defect_exhaustive(j, n)?,
                    BackendArg::Dp => dp.count_defect(j, n)?,
                    BackendArg::Recurrence => {
                        iterate_system(&matrix_m(), &system_m_initial(), n)?.swap_remove(j as usize)
                    }
                });
            }
            Ok(out)
        }
    }
}

fn cmd_count(args: &CountArgs) -> Outcome {
    let range = match (&args.range, args.n) {
        (Some(r), _) => r.clone(),
        (None, Some(n)) => n..=n,
        (None, None) => return Outcome::usage("one of --n or --range is required"),
    };
    match (args.family, args.j) {
        (Family::Defect, None) => return Outcome::usage("--family defect requires --j"),
        (Family::Defect, Some(_)) if *range.start() == 0 => {
            return Outcome::usage("defect boards need n >= 1")
        }
        (f, Some(_)) if f != Family::Defect => {
            return Outcome::usage("--j is only valid with --family defect")
        }
        _ => {}
    }
    if args.family == Family::Bricks && args.a.is_some_and(|a| a != 0) {
        return Outcome::usage("the bricks family fixes a = 0");
    }

    let values = match family_values(args, *range.end()) {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let a_val = args.a.map(rat);
    let b_val = args.b.map(rat);
    let rows: Vec<ResultRow> = range
        .clone()
        .map(|n| ResultRow {
            n,
            value: values[n].substitute(a_val.as_ref(), b_val.as_ref()),
        })
        .collect();

    let mut out = String::new();
    match args.format {
        Format::Table => {
            let width = range.end().to_string().len();
            for r in &rows {
                let _ = writeln!(out, "{:>width$}  {}", r.n, r.value);
            }
        }
        Format::Bfile => {
            for r in &rows {
                match r.value.as_integer() {
                    Some(v) => {
                        let _ = writeln!(out, "{} {v}", r.n);
                    }
                    None => {
                        return Outcome::usage(
                            "bfile output needs integer values; pass --a and --b",
                        )
                    }
                }
            }
        }
        Format::Json => {
            let mut params = BTreeMap::new();
            params.insert("family".to_string(), enum_name(&args.family));
            if let Some(j) = args.j {
                params.insert("j".to_string(), j.to_string());
            }
            params.insert(
                "range".to_string(),
                format!("{}..{}", range.start(), range.end()),
            );
            if let Some(a) = args.a {
                params.insert("a".to_string(), a.to_string());
            }
            if let Some(b) = args.b {
                params.insert("b".to_string(), b.to_string());
            }
            let record = OutputRecord {
                command: "count".to_string(),
                params,
                backend: enum_name(&args.backend),
                results: rows,
            };
            out = serde_json::to_string_pretty(&record).expect("serializable") + "\n";
        }
    }
    Outcome::ok(out)
}

fn enum_name<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => unreachable!("unit variants serialize to strings"),
    }
}

fn cmd_charpoly(args: &CharpolyArgs) -> Outcome {
    let m = match args.matrix {
        MatrixArg::M => matrix_m(),
        MatrixArg::U => matrix_u(),
        MatrixArg::Bricks => matrix_bricks(),
    };
    match charpoly(&m) {
        Ok(c) => Outcome::ok(c.to_string()),
        Err(e) => Outcome {
            code: EXIT_FAILURE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let n_max = args.n_max as usize;
    let report: SuiteReport = match args.scope {
        Scope::Identities => verify_identities(n_max),
        Scope::Oracle => verify_oracle(n_max, &Enumerator::with_limit(args.max_cells)),
        Scope::Theorems => verify_theorems(),
    };
    let stdout = if args.json {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    } else {
        report.summary()
    };
    match report.first_failure() {
        None => Outcome::ok(stdout),
        Some(f) => Outcome {
            code: EXIT_FAILURE,
            stdout,
            stderr: format!("first failure: {}: {}\n", f.name, f.detail),
        },
    }
}

/// First `count` terms of a vendored sequence, from offset 0.
pub fn oeis_terms(id: SequenceId, count: usize) -> Vec<Poly2> {
    let one = rat(1);
    let at_one = |p: &Poly2| p.substitute(Some(&one), Some(&one));
    let last = count as i64 - 1;
    let raw = match id {
        SequenceId::A000045 => (0..count as i64)
            .map(|n| baseline_u(n - 1).expect("n >= -1"))
            .collect(),
        SequenceId::A030186 => baseline_2xn().sequence(last).expect("n >= 0"),
        SequenceId::A033516 => reference_recurrence_r().sequence(last).expect("n >= 0"),
        SequenceId::A006253 => reference_recurrence_bricks()
            .sequence(last)
            .expect("n >= 0"),
        SequenceId::Unbreakable => reference_recurrence_unbreakable()
            .sequence(last)
            .expect("n >= 0"),
    };
    raw.iter().map(at_one).collect()
}

fn cmd_oeis(args: &OeisArgs) -> Outcome {
    let mut out = String::new();
    for (n, v) in oeis_terms(args.id, args.count as usize).iter().enumerate() {
        let _ = writeln!(out, "{n} {v}");
    }
    Outcome::ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(line: &str) -> Outcome {
        run(std::iter::once("cubetile").chain(line.split_whitespace()))
    }

    fn values(o: &Outcome) -> Vec<String> {
        o.stdout
            .lines()
            .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
            .collect()
    }

    #[test]
    fn count_full_range() {
        let o = cli("count --family full --range 0..6 --a 1 --b 1");
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(
            values(&o),
            ["1", "7", "108", "1511", "21497", "305184", "4334009"]
        );
    }

    #[test]
    fn count_bricks_and_unbreakable() {
        let o = cli("count --family bricks --range 0..=8 --b 1");
        assert_eq!(
            values(&o),
            ["1", "2", "9", "32", "121", "450", "1681", "6272", "23409"]
        );
        assert_eq!(values(&cli("count --family unbreakable --n 0")), ["1"]);
    }

    #[test]
    fn count_symbolic_and_partial() {
        let o = cli("count --family full --n 1");
        assert_eq!(o.stdout, "1  a^4 + 4*a^2*b + 2*b^2\n");
        let o = cli("count --family full --n 1 --b 1");
        assert_eq!(o.stdout, "1  a^4 + 4*a^2 + 2\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(cli("count --family full").code, EXIT_USAGE);
        assert_eq!(cli("count --family defect --n 2").code, EXIT_USAGE);
        assert_eq!(
            cli("count --family full --n 2 --format bfile").code,
            EXIT_USAGE
        );
        assert_eq!(
            cli("count --family full --n 6 --backend exhaustive").code,
            EXIT_USAGE
        );
        assert_eq!(cli("count --family full --range 5..2").code, EXIT_USAGE);
        assert_eq!(cli("oeis --id A999999 --count 3").code, EXIT_USAGE);
        assert_eq!(cli("verify --scope oracle --n-max 0").code, EXIT_USAGE);
        assert_eq!(cli("--help").code, EXIT_OK);
    }

    #[test]
    fn negative_weights() {
        let o = cli("count --family full --n 1 --a -1 --b -2 --format bfile");
        assert_eq!(o.stdout, "1 1\n");
    }

    #[test]
    fn charpoly_constant_terms() {
        let o = cli("charpoly --matrix M");
        assert!(o.stdout.lines().any(|l| l == "x^0: b^12"));
        let o = cli("charpoly --matrix U");
        assert!(o.stdout.lines().any(|l| l == "x^0: 0"));
        let o = cli("charpoly --matrix bricks");
        assert_eq!(o.stdout, "x^3: 1\nx^2: -3*b^2\nx^1: -3*b^4\nx^0: b^6\n");
    }

    #[test]
    fn oeis_exports() {
        assert_eq!(
            cli("oeis --id A000045 --count 5").stdout,
            "0 0\n1 1\n2 1\n3 2\n4 3\n"
        );
        assert_eq!(
            values(&cli("oeis --id A006253 --count 5")),
            ["1", "2", "9", "32", "121"]
        );
        assert_eq!(
            values(&cli("oeis --id unbreakable --count 7")),
            ["1", "7", "59", "342", "2154", "13542", "85210"]
        );
        assert_eq!(
            values(&cli("oeis --id A030186 --count 4")),
            ["1", "2", "7", "22"]
        );
    }

    #[test]
    fn parse_range_forms() {
        assert_eq!(parse_range("0..6"), Ok(0..=6));
        assert_eq!(parse_range("2..=3"), Ok(2..=3));
        assert!(parse_range("3").is_err());
    }
}
