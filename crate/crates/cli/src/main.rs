//! Command-line front end: every verification as a reproducible command with
//! machine-readable output.
//!
//! Binary vertex strings are printed and parsed in coordinate order:
//! coordinate 1 is the least significant bit and the leftmost character.
//! Exit codes: 0 success, 1 usage error, 2 capability (budget) error,
//! 3 verification failure.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use qrips::error::Error;
use qrips::homology::BettiResult;
use qrips::reduce::Field;
use qrips::{bounds, generators, geometric, homology, rips};
use std::io::Write;
use std::process::ExitCode;

mod verify;

#[derive(Parser)]
#[command(
    name = "qrips",
    about = "Exact homology, generators, and lower bounds for Vietoris-Rips complexes of hypercube graphs",
    long_about = "Exact homology, generators, and lower bounds for Vietoris-Rips complexes of \
                  hypercube graphs Q_n (binary strings under Hamming distance).\n\nVertex strings \
                  are little-endian in bit index: coordinate 1 is the least significant bit and \
                  is printed first. Exit codes: 0 success, 1 usage error, 2 capability (budget) \
                  error, 3 verification failure."
)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Cap on boundary-matrix column entries before a capability error.
    #[arg(long, global = true, env = "QRIPS_BUDGET")]
    budget: Option<u64>,

    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Betti numbers of VR(Q_n; r) over a prime field.
    Betti {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Single homology dimension to compute.
        #[arg(long, conflicts_with = "q_max")]
        q: Option<usize>,
        /// Compute all dimensions 0..=q_max from one skeleton.
        #[arg(long)]
        q_max: Option<usize>,
        /// Prime field modulus (2 or an odd prime up to 251).
        #[arg(long, default_value_t = 2)]
        field: u32,
    },
    /// Run a named verification suite; prints one pass/fail line per check.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        /// Largest ambient dimension for exhaustive suites.
        #[arg(long)]
        n_max: Option<u32>,
        /// Ambient dimension for generator suites.
        #[arg(long)]
        n: Option<u32>,
        /// Scale parameter where a suite needs one.
        #[arg(long)]
        r: Option<u32>,
        /// LP-test cap for coverage searches.
        #[arg(long, default_value_t = geometric::DEFAULT_SEARCH_BUDGET)]
        search_budget: u64,
    },
    /// Emit the lower-bound table for a scale column.
    Table {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n_max: u32,
        /// JSON seed file; defaults to the bundled seeds.
        #[arg(long)]
        seed_file: Option<std::path::PathBuf>,
        /// Also compute exact Betti numbers where the budget allows.
        #[arg(long)]
        compare: bool,
    },
    /// Dump all simplices of a skeleton, dimension-major, one per line.
    Skeleton {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        dim_cap: usize,
    },
    /// Dump the cross-polytopal generator family for (n, r).
    Family {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // usage error (exit 1, not clap's default 2).
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    if cli.threads > 0 {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global()
        {
            eprintln!("error: could not configure {} threads: {e}", cli.threads);
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) => ExitCode::from(1),
                Error::Capability(_) => ExitCode::from(2),
                Error::Verification(_) => ExitCode::from(3),
            }
        }
    }
}

fn run(cli: Cli) -> qrips::Result<()> {
    let budget = cli.budget.unwrap_or(rips::DEFAULT_BUDGET);
    match cli.command {
        Command::Betti { n, r, q, q_max, field } => {
            let field = Field::new(field)?;
            let results = match (q, q_max) {
                (Some(q), None) => vec![homology::betti(n, r, q, field, budget)?],
                (None, Some(qm)) => homology::betti_profile(n, r, qm, field, budget)?,
                (None, None) => {
                    return Err(Error::Usage("pass --q or --q-max".into()));
                }
                _ => unreachable!("clap enforces the conflict"),
            };
            for res in &results {
                eprintln!(
                    "VR(Q_{}; {}) dim {}: {} simplices in dims [{}, {}, {}], ranks {} and {} ({} ms)",
                    res.n,
                    res.r,
                    res.q,
                    res.counts[1],
                    res.counts[0],
                    res.counts[1],
                    res.counts[2],
                    res.rank_lower,
                    res.rank_upper,
                    res.millis
                );
            }
            emit_betti(&results, cli.format)
        }
        Command::Verify { suite, n_max, n, r, search_budget } => {
            verify::run_suite(suite, verify::SuiteConfig { n_max, n, r, budget, search_budget })
        }
        Command::Table { r, n_max, seed_file, compare } => {
            let seeds = match seed_file {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        Error::Usage(format!("cannot read seed file {}: {e}", path.display()))
                    })?;
                    bounds::parse_seeds(&text)?
                }
                None => bounds::default_seeds(),
            };
            let rows = bounds::table(r, n_max, &seeds)?;
            let compared = if compare { Some(compare_column(&rows, budget)?) } else { None };
            emit_table(&rows, compared.as_deref(), cli.format)
        }
        Command::Skeleton { n, r, dim_cap } => {
            let skel = rips::build_skeleton(n, r, dim_cap, budget)?;
            for k in 0..=dim_cap {
                eprintln!("dimension {k}: {} simplices", skel.count(k));
            }
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            skel.dump(&mut lock).map_err(|e| Error::Usage(format!("write failed: {e}")))?;
            Ok(())
        }
        Command::Family { n, r } => {
            let fam = generators::build_family(n, r)?;
            eprintln!("{} generator entries for VR(Q_{n}; {r})", fam.len());
            print!("{}", fam.dump());
            Ok(())
        }
    }
}

fn emit_betti(results: &[BettiResult], format: Format) -> qrips::Result<()> {
    match format {
        Format::Text => {
            for res in results {
                println!(
                    "betti(n={}, r={}, q={}, Z/{}) = {}{}",
                    res.n,
                    res.r,
                    res.q,
                    res.field,
                    res.betti,
                    if res.q == 0 { "  (unreduced: connected components)" } else { "" }
                );
            }
        }
        Format::Json => {
            let value = if results.len() == 1 {
                serde_json::to_value(&results[0])
            } else {
                serde_json::to_value(results)
            }
            .expect("serializable");
            println!("{}", serde_json::to_string_pretty(&value).expect("stringify"));
        }
        Format::Csv => {
            println!("{}", BettiResult::csv_header());
            for res in results {
                println!("{}", res.csv_row());
            }
        }
        Format::Markdown => {
            println!("| n | r | q | field | betti |");
            println!("|---|---|---|---|---|");
            for res in results {
                println!(
                    "| {} | {} | {} | Z/{} | {} |",
                    res.n, res.r, res.q, res.field, res.betti
                );
            }
        }
    }
    Ok(())
}

/// Exact Betti numbers per table cell, where the budget allows; None marks a
/// cell whose skeleton exceeds the budget.
fn compare_column(
    rows: &[bounds::TableRow],
    budget: u64,
) -> qrips::Result<Vec<Vec<Option<usize>>>> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut cells = Vec::with_capacity(row.cells.len());
        for cell in &row.cells {
            let q = cell.q as usize;
            eprintln!("comparing: betti(n={}, r={}, q={q})", row.n, row.r);
            match homology::betti(row.n, row.r, q, Field::GF2, budget) {
                Ok(res) => {
                    let bound = &cell.total;
                    if BigUint::from(res.betti) < *bound {
                        return Err(Error::Verification(format!(
                            "bound {} exceeds exact betti {} at (n={}, r={}, q={})",
                            bound, res.betti, row.n, row.r, q
                        )));
                    }
                    cells.push(Some(res.betti));
                }
                Err(Error::Capability(msg)) => {
                    eprintln!("  skipped: {msg}");
                    cells.push(None);
                }
                Err(other) => return Err(other),
            }
        }
        out.push(cells);
    }
    Ok(out)
}

fn emit_table(
    rows: &[bounds::TableRow],
    compared: Option<&[Vec<Option<usize>>]>,
    format: Format,
) -> qrips::Result<()> {
    match format {
        Format::Csv | Format::Text => {
            let mut out = String::from("n,r,q,bound,decomposition,sources");
            if compared.is_some() {
                out.push_str(",betti");
            }
            out.push('\n');
            for (i, row) in rows.iter().enumerate() {
                for (j, cell) in row.cells.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}",
                        row.n,
                        row.r,
                        cell.q,
                        cell.total,
                        cell.decomposition(),
                        cell.sources()
                    ));
                    if let Some(cmp) = compared {
                        match cmp[i][j] {
                            Some(b) => out.push_str(&format!(",{b}")),
                            None => out.push_str(",-"),
                        }
                    }
                    out.push('\n');
                }
            }
            print!("{out}");
        }
        Format::Json => {
            let mut value = bounds::table_json(rows);
            if let Some(cmp) = compared {
                let arr = value.as_array_mut().expect("rows array");
                for (row_value, row_cmp) in arr.iter_mut().zip(cmp) {
                    let cells =
                        row_value["cells"].as_array_mut().expect("cells array");
                    for (cell_value, betti) in cells.iter_mut().zip(row_cmp) {
                        cell_value["betti"] = match betti {
                            Some(b) => serde_json::json!(b),
                            None => serde_json::Value::Null,
                        };
                    }
                }
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("stringify"));
        }
        Format::Markdown => {
            print!("{}", bounds::table_markdown(rows));
            if compared.is_some() {
                eprintln!("note: --compare is not rendered in markdown; use csv or json");
            }
        }
    }
    std::io::stdout().flush().ok();
    Ok(())
}
