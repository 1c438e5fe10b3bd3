//! Command-line front end. Exit codes: 0 success, 1 identity failed,
//! 2 usage or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::thread;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::arith::{BiSeries, Rational};
use crate::dsl::{eval, parse, parse_equation, Expr};
use crate::error::{Error, Result};
use crate::identities::{compare_series, verify, Discrepancy, IdentityId, IdentityReport, Params, SeriesLabels};
use crate::partitions::{lassalle_binom, partitions_of, z_of, Partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "waring", version, about = "Exact verification of symmetric-function identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify an identity instance; integer flags accept lists `1,2,3` and ranges `1..4`
    Verify(Box<VerifyArgs>),
    /// Compare two expressions `lhs == rhs`
    Check {
        equation: String,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long, default_value_t = 4)]
        t_order: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Expand an expression in concrete variables
    Expand {
        expression: String,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long, default_value_t = 4)]
        t_order: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Nonzero values of <mu/k> as CSV rows `k,value`
    Binom {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        max_k: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Export a coefficient table as CSV over all partitions of weight 1..=n
    Table {
        #[arg(long, value_enum, default_value_t = TableKind::Binom)]
        kind: TableKind,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// List identity ids with their statements
    ListIdentities {
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum TableKind {
    /// columns mu,k,value for every nonzero <mu/k>
    Binom,
    /// columns mu,weight,length,z
    Z,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    id: IdentityId,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    i: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    r: Option<String>,
    /// Partition `a,b,c`; for cor4 the default is every partition of j
    #[arg(long)]
    mu: Option<Partition>,
    #[arg(long)]
    lambda: Option<Partition>,
    /// Rational `P/Q`
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    #[arg(long)]
    vars: Option<usize>,
    #[arg(long)]
    t_order: Option<usize>,
    #[arg(long)]
    u_order: Option<usize>,
    #[arg(long)]
    w_order: Option<usize>,
    #[command(flatten)]
    output: Output,
}

/// Parses `3`, `1,2,5` or the inclusive range `1..4`.
pub fn parse_int_list(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameters(format!("bad integer list `{s}`"));
    let mut out = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        if let Some((a, b)) = piece.split_once("..") {
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(piece.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

fn list(v: &Option<String>) -> Result<Vec<Option<usize>>> {
    match v {
        None => Ok(vec![None]),
        Some(s) => Ok(parse_int_list(s)?.into_iter().map(Some).collect()),
    }
}

fn instances(args: &VerifyArgs) -> Result<Vec<Params>> {
    let mut out = Vec::new();
    for k in list(&args.k)? {
        for i in list(&args.i)? {
            for j in list(&args.j)? {
                for n in list(&args.n)? {
                    for r in list(&args.r)? {
                        let base = Params {
                            k,
                            i,
                            j,
                            n,
                            r,
                            mu: args.mu.clone(),
                            lambda: args.lambda.clone(),
                            alpha: args.alpha.clone(),
                            vars: args.vars,
                            t_order: args.t_order,
                            u_order: args.u_order,
                            w_order: args.w_order,
                        };
                        match (args.id, &base.mu, base.j) {
                            (IdentityId::Cor4, None, Some(j)) => {
                                for mu in partitions_of(j) {
                                    out.push(Params {
                                        mu: Some(mu),
                                        ..base.clone()
                                    });
                                }
                            }
                            _ => out.push(base),
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Verifies every instance on a pool of scoped threads; reports come back
/// sorted by parameter tuple whatever the completion order.
pub fn verify_all(id: IdentityId, params: Vec<Params>) -> Result<Vec<IdentityReport>> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(params.len().max(1));
    let chunk = params.len().div_ceil(workers).max(1);
    let mut results: Vec<IdentityReport> = thread::scope(|s| {
        let handles: Vec<_> = params
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(|p| verify(id, p)).collect::<Result<Vec<_>>>()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification worker panicked"))
            .collect::<Result<Vec<Vec<_>>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    results.sort_by(|a, b| a.params.cmp(&b.params));
    Ok(results)
}

#[derive(Serialize)]
struct CheckReport<'a> {
    lhs: String,
    rhs: String,
    status: &'a str,
    vars: usize,
    t_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<Discrepancy>,
}

#[derive(Serialize)]
struct SeriesTerm {
    t: usize,
    poly: String,
}

#[derive(Serialize)]
struct BinomRow {
    k: usize,
    value: String,
}

#[derive(Serialize)]
struct IdentityEntry {
    id: IdentityId,
    statement: &'static str,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_text<R: Serialize>(header: Option<&[&str]>, rows: &[R]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(header.is_none())
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h).map_err(csv_error)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameters(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidParameters(format!("csv: {e}"))
}

fn series_text(s: &BiSeries) -> String {
    let mut out = String::new();
    for (t, _, poly) in s.iter() {
        out.push_str(&format!("t^{t}: {poly}\n"));
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    out
}

fn default_vars(exprs: &[&Expr], vars: Option<usize>) -> usize {
    vars.unwrap_or_else(|| exprs.iter().map(|e| e.degree()).max().unwrap_or(0).max(1))
}

/// Runs one command; returns the text to emit and the exit code.
fn execute(command: Command) -> Result<(String, Option<String>, i32)> {
    match command {
        Command::Verify(args) => {
            let reports = verify_all(args.id, instances(&args)?)?;
            let code = if reports.iter().all(IdentityReport::verified) {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            let text = if args.output.json {
                match reports.as_slice() {
                    [one] => to_json(one),
                    many => to_json(&many),
                }
            } else {
                reports.iter().map(|r| r.to_string()).collect()
            };
            Ok((text, args.output.out, code))
        }
        Command::Check {
            equation,
            vars,
            t_order,
            output,
        } => {
            let (lhs, rhs) = parse_equation(&equation)?;
            let nvars = default_vars(&[&lhs, &rhs], vars);
            let (a, b) = (eval(&lhs, nvars, t_order)?, eval(&rhs, nvars, t_order)?);
            let labels = SeriesLabels::standard("t", None, "x", nvars);
            let discrepancy = compare_series(&a, &b, &labels)?;
            let status = if discrepancy.is_none() { "equal" } else { "different" };
            let code = if discrepancy.is_none() { EXIT_OK } else { EXIT_FAILED };
            let report = CheckReport {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                status,
                vars: nvars,
                t_order,
                discrepancy,
            };
            let text = if output.json {
                to_json(&report)
            } else {
                let mut s = format!("{} == {}: {status} ({nvars} variables, t^{t_order})\n", report.lhs, report.rhs);
                if let Some(d) = &report.discrepancy {
                    s.push_str(&format!("  first difference at {}\n    lhs: {}\n    rhs: {}\n", d.monomial, d.expected, d.actual));
                }
                s
            };
            Ok((text, output.out, code))
        }
        Command::Expand {
            expression,
            vars,
            t_order,
            output,
        } => {
            let e = parse(&expression)?;
            let series = eval(&e, default_vars(&[&e], vars), t_order)?;
            let text = if output.json {
                let terms: Vec<SeriesTerm> = series
                    .iter()
                    .map(|(t, _, p)| SeriesTerm { t, poly: p.to_string() })
                    .collect();
                to_json(&terms)
            } else {
                series_text(&series)
            };
            Ok((text, output.out, EXIT_OK))
        }
        Command::Binom { mu, max_k, output } => {
            let max_k = max_k.unwrap_or(mu.weight());
            let rows: Vec<BinomRow> = (0..=max_k)
                .map(|k| (k, lassalle_binom(&mu, k)))
                .filter(|(_, v)| *v != 0.into())
                .map(|(k, v)| BinomRow { k, value: v.to_string() })
                .collect();
            let text = if output.json { to_json(&rows) } else { csv_text(None, &rows)? };
            Ok((text, output.out, EXIT_OK))
        }
        Command::Table { kind, n, output } => {
            let text = match kind {
                TableKind::Binom => {
                    let mut rows = Vec::new();
                    for w in 1..=n {
                        for mu in partitions_of(w) {
                            for k in mu.len()..=w {
                                rows.push((mu.to_string(), k, lassalle_binom(&mu, k).to_string()));
                            }
                        }
                    }
                    csv_text(Some(&["mu", "k", "value"]), &rows)?
                }
                TableKind::Z => {
                    let rows: Vec<_> = (1..=n)
                        .flat_map(partitions_of)
                        .map(|mu| (mu.to_string(), mu.weight(), mu.len(), z_of(&mu).to_string()))
                        .collect();
                    csv_text(Some(&["mu", "weight", "length", "z"]), &rows)?
                }
            };
            Ok((text, output.out, EXIT_OK))
        }
        Command::ListIdentities { output } => {
            let text = if output.json {
                let entries: Vec<IdentityEntry> = IdentityId::ALL
                    .iter()
                    .map(|&id| IdentityEntry {
                        id,
                        statement: id.statement(),
                    })
                    .collect();
                to_json(&entries)
            } else {
                IdentityId::ALL
                    .iter()
                    .map(|id| format!("{:<18} {}\n", id.as_str(), id.statement()))
                    .collect()
            };
            Ok((text, output.out, EXIT_OK))
        }
    }
}

/// Entry point behind `main`, with injectable streams.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, out, code)) => {
            let written = match out {
                Some(path) => fs::write(&path, &text).map_err(|e| format!("cannot write {path}: {e}")),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("3").unwrap(), vec![3]);
        assert_eq!(parse_int_list("1,4").unwrap(), vec![1, 4]);
        assert_eq!(parse_int_list("1..3,7").unwrap(), vec![1, 2, 3, 7]);
        assert!(parse_int_list("3..1").is_err());
        assert!(parse_int_list("x").is_err());
    }

    #[test]
    fn parallel_results_are_sorted() {
        let params: Vec<Params> = (1..=5)
            .rev()
            .map(|i| Params {
                i: Some(i),
                j: Some(3),
                mu: Some("2,1".parse().unwrap()),
                ..Params::default()
            })
            .collect();
        let reports = verify_all(IdentityId::Cor4, params).unwrap();
        let is: Vec<_> = reports.iter().map(|r| r.params.i.unwrap()).collect();
        assert_eq!(is, vec![1, 2, 3, 4, 5]);
        assert!(reports.iter().all(IdentityReport::verified));
    }
}
