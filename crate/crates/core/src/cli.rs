//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a usage, parse or domain error, 2 when
//! `verify` reports a failed check.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::composition::{self, OddComposition};
use crate::error::{Error, Result};
use crate::poset;
use crate::topology::{self, IntPolynomial};
use crate::verify::{self, Budgets};

/// Largest `n` accepted by any verb.
pub const MAX_N: u32 = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qfib", version, about = "Odd compositions, their poset, and the matching fixed-quadric checks")]
struct Cli {
    /// Output format; not every verb supports every format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Write output to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    /// Refuse to list posets with more than this many elements.
    #[arg(long, env = "QFIB_MAX_ELEMENTS", default_value_t = 250_000, global = true)]
    max_elements: u64,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// List F_n in lexicographic order.
    Enumerate {
        n: u32,
        /// Accept n = 0 and return the empty composition.
        #[arg(long)]
        allow_empty: bool,
    },
    /// Hasse diagram of F_n.
    Hasse { n: u32 },
    /// Poincare polynomial, one coefficient per cell dimension.
    Poincare {
        n: u32,
        /// Accept n = 0, whose polynomial is 1.
        #[arg(long)]
        allow_empty: bool,
    },
    /// Maximal elements of F_n with their dimensions.
    Components { n: u32 },
    /// Greatest common lower bound of two compositions of n, e.g. `meet 6 5,1 3,3`.
    Meet { n: u32, a: String, b: String },
    /// Run every cross-check up to n_max.
    Verify {
        n_max: u32,
        /// Append wall-clock time to each line.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Table of Fibonacci numbers, component counts and Poincare polynomials.
    Sequences {
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long, default_value_t = 25)]
        to: u32,
    },
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Cap for all-pairs poset checks.
    #[arg(long, env = "QFIB_POSET_BUDGET", default_value_t = 12)]
    poset_budget: u32,
    /// Cap for polynomial and count checks.
    #[arg(long, env = "QFIB_POLY_BUDGET", default_value_t = 25)]
    poly_budget: u32,
    /// Cap for exact matrix checks.
    #[arg(long, env = "QFIB_QUADRIC_BUDGET", default_value_t = 9)]
    quadric_budget: u32,
    /// Cap for the all-triples associativity check.
    #[arg(long, env = "QFIB_TRIPLE_BUDGET", default_value_t = 9)]
    triple_budget: u32,
    /// Cap for finite-field flag enumeration.
    #[arg(long, env = "QFIB_FLAG_BUDGET", default_value_t = 4)]
    flag_budget: u32,
    /// Subspaces visited per flag check.
    #[arg(long, env = "QFIB_SUBSPACE_BUDGET", default_value_t = 1_000_000)]
    subspace_budget: u128,
    /// Random samples per size in sampled matrix checks.
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

impl From<&BudgetArgs> for Budgets {
    fn from(b: &BudgetArgs) -> Self {
        Budgets {
            poset: b.poset_budget,
            poly: b.poly_budget,
            quadric: b.quadric_budget,
            triples: b.triple_budget,
            flags: b.flag_budget,
            subspaces: b.subspace_budget,
            samples: b.samples,
        }
    }
}

/// Parses `args` (including the program name), runs the verb and writes the
/// result to `out`, or to `--out FILE`. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_ERROR
                }
            };
        }
    };
    match execute(&cli) {
        Ok((body, code)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &body),
                None => out.write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_ERROR;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn check_n(n: u32, allow_empty: bool) -> Result<()> {
    if n == 0 && !allow_empty {
        return Err(Error::Domain("n must be at least 1 (pass --allow-empty for n = 0)".into()));
    }
    if n > MAX_N {
        return Err(Error::Domain(format!("n = {n} exceeds the supported maximum {MAX_N}")));
    }
    Ok(())
}

fn check_size(n: u32, max_elements: u64) -> Result<()> {
    let size = composition::count(n.max(1))?;
    if size > max_elements {
        return Err(Error::Budget(format!(
            "F_{n} has {size} elements, more than --max-elements {max_elements}"
        )));
    }
    Ok(())
}

fn unsupported(verb: &str, format: Format) -> Error {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Error::Domain(format!("{verb} does not support --format {name}"))
}

fn parse_member(literal: &str, n: u32) -> Result<OddComposition> {
    let g: OddComposition = literal.parse()?;
    if g.n() != n {
        return Err(Error::Domain(format!("({g}) is a composition of {}, not {n}", g.n())));
    }
    Ok(g)
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(|e| Error::Parse(format!("csv output failed: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json_line<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let fmt = cli.format;
    let body = match &cli.verb {
        Verb::Enumerate { n, allow_empty } => {
            check_n(*n, *allow_empty)?;
            check_size(*n, cli.max_elements)?;
            let all = if *allow_empty { composition::enumerate_allow_empty(*n) } else { composition::enumerate(*n)? };
            match fmt {
                Format::Text => all.iter().map(|g| format!("{g}\n")).collect(),
                Format::Json => to_json_line(&all)?,
                Format::Csv => {
                    let mut rows = vec![vec!["parts".to_string(), "rank".to_string()]];
                    rows.extend(all.iter().map(|g| vec![g.to_string(), poset::rank(g).to_string()]));
                    csv_string(rows)?
                }
                Format::Dot => return Err(unsupported("enumerate", fmt)),
            }
        }
        Verb::Hasse { n } => {
            check_n(*n, false)?;
            check_size(*n, cli.max_elements)?;
            let d = poset::hasse(*n)?;
            match fmt {
                Format::Text => d.to_text(),
                Format::Json => format!("{}\n", d.to_json()),
                Format::Dot => d.to_dot(),
                Format::Csv => {
                    let mut rows = vec![vec!["lower".to_string(), "upper".to_string()]];
                    rows.extend(d.edges.iter().map(|e| vec![e.lower.to_string(), e.upper.to_string()]));
                    csv_string(rows)?
                }
            }
        }
        Verb::Poincare { n, allow_empty } => {
            check_n(*n, *allow_empty)?;
            let p = if *n == 0 { IntPolynomial::one() } else { topology::poincare_closed_form(*n)? };
            match fmt {
                Format::Text => format!("{p}\n"),
                Format::Json => format!("{}\n", p.to_json(*n)),
                Format::Csv => csv_string(vec![
                    vec!["n".into(), "coeffs".into()],
                    vec![n.to_string(), p.csv_field()],
                ])?,
                Format::Dot => return Err(unsupported("poincare", fmt)),
            }
        }
        Verb::Components { n } => {
            check_n(*n, false)?;
            check_size(*n, cli.max_elements)?;
            let maximal = poset::maximal_elements(*n)?;
            let dims: Vec<u32> = maximal.iter().map(topology::cell_dimension).collect();
            match fmt {
                Format::Text => {
                    let mut s = format!("n = {n}: {} components\n", maximal.len());
                    for (g, d) in maximal.iter().zip(&dims) {
                        s.push_str(&format!("{g}\tdim {d}\n"));
                    }
                    s
                }
                Format::Json => {
                    let items: Vec<_> =
                        maximal.iter().zip(&dims).map(|(g, d)| json!({"parts": g, "dim": d})).collect();
                    to_json_line(&json!({"n": n, "count": maximal.len(), "components": items}))?
                }
                Format::Csv => {
                    let mut rows = vec![vec!["parts".to_string(), "dim".to_string()]];
                    rows.extend(maximal.iter().zip(&dims).map(|(g, d)| vec![g.to_string(), d.to_string()]));
                    csv_string(rows)?
                }
                Format::Dot => return Err(unsupported("components", fmt)),
            }
        }
        Verb::Meet { n, a, b } => {
            check_n(*n, false)?;
            let (a, b) = (parse_member(a, *n)?, parse_member(b, *n)?);
            let m = poset::meet(&a, &b)?;
            match fmt {
                Format::Text => format!("{m}\n"),
                Format::Json => to_json_line(&m)?,
                _ => return Err(unsupported("meet", fmt)),
            }
        }
        Verb::Verify { n_max, timing, budgets } => {
            check_n(*n_max, false)?;
            if fmt != Format::Text {
                return Err(unsupported("verify", fmt));
            }
            let report = verify::verify_all(*n_max, &Budgets::from(budgets));
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            return Ok((report.render(*timing), code));
        }
        Verb::Sequences { from, to } => {
            check_n(*from, false)?;
            check_n(*to, false)?;
            check_size(*to, cli.max_elements)?;
            let rows = topology::sequence_rows(*from, *to)?;
            if let Some(bad) = rows.iter().find(|r| !r.consistent()) {
                return Err(Error::Inconsistency(format!("sequence identities fail at n = {}", bad.n)));
            }
            match fmt {
                Format::Csv => {
                    let mut buf = Vec::new();
                    topology::write_sequences_csv(&rows, &mut buf)?;
                    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))?
                }
                Format::Text => rows
                    .iter()
                    .map(|r| {
                        format!("n = {}: |F_n| = {}, components = {}, P = {}\n", r.n, r.fib, r.a_direct, r.poincare)
                    })
                    .collect(),
                Format::Json => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "fib": r.fib,
                                "a_direct": r.a_direct,
                                "a_recur": r.a_recur.to_string(),
                                "a_gf": r.a_gf.to_string(),
                                "a_alt": r.a_alt,
                                "poincare": r.poincare.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    to_json_line(&items)?
                }
                Format::Dot => return Err(unsupported("sequences", fmt)),
            }
        }
    };
    Ok((body, EXIT_OK))
}
