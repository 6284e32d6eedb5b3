//! The `picard` command-line front end.

pub mod record;
pub mod sweep;
pub mod verify;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::arith::{format_rational, parse_rational};
use crate::bernoulli::{b3, class_number, generalized_bernoulli, l_value_3};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::ideals::{parse_ideal, FactoredIdeal};
use crate::invariants::{compute_invariants, cusp_form_dimension, euler_number_full_group};
use crate::oracle::EnumerationBudget;
use crate::quadfield::QuadraticField;
use record::{OutputRecord, CSV_HEADER};
use sweep::SweepConfig;
use verify::{all_passed, run_checks, B3_REFERENCE};

/// Inclusive weight range `A..B` (also accepts `A..=B` or a single `A`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for WeightRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad weight `{t}`"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => (parse(s)?, parse(s)?),
        };
        if lo > hi {
            return Err(format!("empty weight range {s}"));
        }
        if hi - lo > 1000 {
            return Err(format!("weight range {s} is too long"));
        }
        Ok(WeightRange { lo, hi })
    }
}

impl WeightRange {
    fn weights(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "picard",
    version,
    about = "Invariants of compactified Picard modular surfaces"
)]
pub struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Log progress and skipped cases to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    /// Squarefree d > 0, for K = Q(sqrt(-d)).
    pub d: u64,
    /// Ideal expression, e.g. `sqrtd`, `(3)`, `(1+2*w)`, `P(2,0)^2*P(7)`.
    pub ideal: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field data: discriminant, unit and cusp constants, h, B_1, B_3, L(3).
    Field { d: u64 },
    /// Hermite normal form and prime factorization of an ideal.
    Factor(IdealArgs),
    /// Chern numbers, index, neatness and verdict for Gamma_K(a).
    Invariants {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Also report cusp form dimensions for these weights.
        #[arg(long)]
        k: Option<WeightRange>,
    },
    /// Cusp form dimensions for a neat ideal.
    Cuspdim {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        k: WeightRange,
    },
    /// Evaluate every prime-power ideal of bounded norm over squarefree d <= dmax.
    Sweep {
        #[arg(long)]
        dmax: u64,
        #[arg(long)]
        normmax: u64,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include products of distinct prime powers.
        #[arg(long)]
        composite: bool,
    },
    /// Check the closed formulas against brute-force enumeration.
    Verify {
        /// Maximum number of matrices a single enumeration may visit.
        #[arg(long, default_value_t = EnumerationBudget::default().max_elements)]
        budget: u128,
        /// Replacement B3 reference table (CSV rows `abs_disc,value`).
        #[arg(long, hide = true)]
        b3_table: Option<PathBuf>,
    },
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Field { d } => field(*d, cli.json, out)?,
        Command::Factor(args) => factor(args, cli.json, out)?,
        Command::Invariants { ideal, k } => invariants(ideal, *k, cli.json, out)?,
        Command::Cuspdim { ideal, k } => cuspdim(ideal, *k, cli.json, out)?,
        Command::Sweep {
            dmax,
            normmax,
            csv,
            out: path,
            composite,
        } => {
            let config = SweepConfig {
                dmax: *dmax,
                normmax: *normmax,
                composite: *composite,
            };
            let format = if *csv {
                Format::Csv
            } else if cli.json {
                Format::Json
            } else {
                Format::Table
            };
            sweep_cmd(config, format, path.as_deref(), out)?
        }
        Command::Verify { budget, b3_table } => {
            let table = match b3_table {
                Some(path) => read_b3_table(path)?,
                None => B3_REFERENCE.to_vec(),
            };
            let checks = run_checks(
                EnumerationBudget::new(*budget),
                &table,
                Execution::default(),
            );
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&checks).map_err(json_err)?
                )?;
            } else {
                for c in &checks {
                    writeln!(out, "{}  {}: {}", c.status, c.name, c.detail)?;
                }
            }
            if !all_passed(&checks) {
                return Ok(5);
            }
        }
    }
    Ok(0)
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_table(out: &mut dyn Write, rows: &[(&str, String)]) -> io::Result<()> {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

fn load(args: &IdealArgs) -> Result<(QuadraticField, FactoredIdeal)> {
    let field = QuadraticField::new(args.d)?;
    let ideal = parse_ideal(field, &args.ideal)?.factorize()?;
    Ok((field, ideal))
}

fn field(d: u64, json: bool, out: &mut dyn Write) -> Result<()> {
    let k = QuadraticField::new(d)?;
    let rows = [
        ("d", d.to_string()),
        ("D", k.disc().to_string()),
        ("mu", k.mu().to_string()),
        ("eta", format_rational(&k.eta())),
        ("delta", format_rational(&k.delta())),
        ("h", class_number(&k)?.to_string()),
        ("B1", format_rational(&generalized_bernoulli(&k, 1).value)),
        ("B3", format_rational(&b3(&k))),
        ("L3", l_value_3(&k).float_value.to_string()),
        ("c2_full", format_rational(&euler_number_full_group(&k))),
    ];
    if json {
        let mut map = serde_json::Map::new();
        for (key, v) in rows {
            let value = match key {
                "d" | "D" | "mu" | "h" => json!(v.parse::<i64>().expect("integer field")),
                "L3" => json!(l_value_3(&k).float_value),
                _ => json!(v),
            };
            map.insert(key.to_string(), value);
        }
        writeln!(out, "{}", serde_json::Value::Object(map))?;
    } else {
        write_table(out, &rows)?;
    }
    Ok(())
}

fn factor(args: &IdealArgs, json: bool, out: &mut dyn Write) -> Result<()> {
    let field = QuadraticField::new(args.d)?;
    let ideal = parse_ideal(field, &args.ideal)?;
    let factored = ideal.factorize()?;
    let (a, b, c) = ideal.hnf();
    if json {
        let factors: Vec<_> = factored
            .factors()
            .iter()
            .map(|(p, e)| {
                json!({
                    "prime": p.to_string(),
                    "p": p.p(),
                    "splitting": p.splitting().as_str(),
                    "exponent": e,
                })
            })
            .collect();
        let v = json!({
            "d": args.d,
            "D": field.disc(),
            "ideal": factored.to_string(),
            "hnf": [a, b, c],
            "norm": ideal.norm(),
            "theta": ideal.theta(),
            "neat": ideal.neat_status().as_str(),
            "factors": factors,
        });
        writeln!(out, "{v}")?;
    } else {
        write_table(
            out,
            &[
                ("ideal", factored.to_string()),
                ("hnf", ideal.to_string()),
                ("norm", ideal.norm().to_string()),
                ("theta", ideal.theta().to_string()),
                ("neat", ideal.neat_status().to_string()),
            ],
        )?;
    }
    Ok(())
}

fn dimensions(
    field: &QuadraticField,
    ideal: &FactoredIdeal,
    k: WeightRange,
) -> Result<BTreeMap<u32, num_bigint::BigUint>> {
    k.weights()
        .map(|w| {
            let dim = cusp_form_dimension(field, ideal, w)?;
            Ok((w as u32, dim))
        })
        .collect()
}

fn record_table(r: &OutputRecord) -> Vec<(&'static str, String)> {
    let mut rows: Vec<_> = CSV_HEADER.iter().copied().zip(r.csv_row()).collect();
    if let Some(dims) = &r.dims {
        rows.push((
            "dims",
            dims.iter()
                .map(|(k, v)| format!("{k}:{v}"))
                .collect::<Vec<_>>()
                .join(" "),
        ));
    }
    rows
}

fn invariants(
    args: &IdealArgs,
    k: Option<WeightRange>,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let (field, ideal) = load(args)?;
    let inv = compute_invariants(&field, &ideal)?;
    let mut record = OutputRecord::from_invariants(&inv);
    if let Some(k) = k {
        record = record.with_dims(dimensions(&field, &ideal, k)?);
    }
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&record).map_err(json_err)?
        )?;
    } else {
        write_table(out, &record_table(&record))?;
    }
    Ok(())
}

fn cuspdim(args: &IdealArgs, k: WeightRange, json: bool, out: &mut dyn Write) -> Result<()> {
    let (field, ideal) = load(args)?;
    let dims = dimensions(&field, &ideal, k)?;
    if json {
        let dims: BTreeMap<u32, String> =
            dims.into_iter().map(|(k, v)| (k, v.to_string())).collect();
        let v = json!({
            "d": args.d,
            "D": field.disc(),
            "ideal": ideal.to_string(),
            "dims": dims,
            "vanishing_assumed": true,
        });
        writeln!(out, "{v}")?;
    } else {
        for (w, dim) in dims {
            writeln!(out, "k={w}  {dim}")?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Csv,
    Json,
}

fn sweep_cmd(
    config: SweepConfig,
    format: Format,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let result = sweep::sweep(config, Execution::default())?;
    log::info!(
        "{} rows, {} skipped",
        result.rows.len(),
        result.skipped.len()
    );
    let records: Vec<OutputRecord> = result
        .rows
        .iter()
        .map(OutputRecord::from_invariants)
        .collect();

    let mut file;
    let sink: &mut dyn Write = match path {
        Some(p) => {
            file = BufWriter::new(
                File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
            );
            &mut file
        }
        None => out,
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *sink);
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in &records {
                w.write_record(r.csv_row()).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *sink, &records).map_err(json_err)?;
            writeln!(sink)?;
        }
        Format::Table => {
            writeln!(sink, "{}", CSV_HEADER.join("\t"))?;
            for r in &records {
                writeln!(sink, "{}", r.csv_row().join("\t"))?;
            }
        }
    }
    sink.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn read_b3_table(path: &Path) -> Result<Vec<(u64, i64, i64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(csv_err)?;
    let mut table = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_err)?;
        let bad = || Error::Parse(format!("bad B3 table row: {row:?}"));
        let abs_d = row
            .get(0)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(bad)?;
        let value = parse_rational(row.get(1).ok_or_else(bad)?.trim())?;
        let num = i64::try_from(value.numer()).map_err(|_| bad())?;
        let den = i64::try_from(value.denom()).map_err(|_| bad())?;
        table.push((abs_d, num, den));
    }
    Ok(table)
}
