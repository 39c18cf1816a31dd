//! Command-line front end. Exit codes: 0 success, 1 input error, 2 numeric
//! failure.

pub mod commands;
pub mod io;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::chirality::{projected_chirality, root_chirality, PointGroup};
use crate::error::Error;
use crate::metrics::Minkowski;
use commands::EquivalenceMode;
use io::{array, basis, num, nums, object, string, superbase, LatticeRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lattice(#[from] Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lattice(e) if e.is_numeric() => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "lattice2d",
    version,
    about = "Continuous invariants and metrics of 2D lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Files {
    /// Input file (JSON Lines or CSV); stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Metric {
    #[arg(long, value_enum, default_value = "isometry")]
    mode: EquivalenceMode,
    /// Minkowski parameter, a real >= 1 or `inf`
    #[arg(long, default_value = "2")]
    q: Minkowski,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Preset {
    Deformation,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced superbase, invariants, chiralities, metric tensor and area per record
    Invariant {
        #[command(flatten)]
        files: Files,
    },
    /// Distance between the first two records
    Dist {
        #[command(flatten)]
        files: Files,
        #[command(flatten)]
        metric: Metric,
    },
    /// Pairwise distance matrix as CSV
    Matrix {
        #[command(flatten)]
        files: Files,
        #[command(flatten)]
        metric: Metric,
    },
    /// Invariants along a linear path of bases, as CSV
    #[command(allow_negative_numbers = true)]
    Path {
        #[arg(long, value_enum, conflicts_with_all = ["start", "end"])]
        preset: Option<Preset>,
        /// Start basis as `[[v1x,v1y],[v2x,v2y]]`
        #[arg(long, requires = "end")]
        start: Option<String>,
        #[arg(long, requires = "start")]
        end: Option<String>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mirror-image pairs that are close in RM_inf° but far as superbases
    #[command(allow_negative_numbers = true)]
    Discontinuity {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001")]
        deltas: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice with given projected invariant, size and sign
    #[command(allow_negative_numbers = true)]
    Design {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 1)]
        sign: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced sequence of distances and the vonorms recovered from it
    Rsd {
        #[command(flatten)]
        files: Files,
        #[arg(long, default_value_t = 16)]
        k: usize,
    },
    /// Obtuse superbase and reduced basis per record
    Reduce {
        #[command(flatten)]
        files: Files,
        #[arg(long, value_enum, default_value = "isometry")]
        mode: EquivalenceMode,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p)?,
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn writer(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout())),
    })
}

fn strict_records(text: &str) -> CliResult<Vec<LatticeRecord>> {
    io::parse_records(text)
        .into_iter()
        .map(|r| r.map_err(|(id, e)| CliError::Input(format!("record {id}: {e}"))))
        .collect()
}

fn parse_basis(s: &str) -> CliResult<[[f64; 2]; 2]> {
    serde_json::from_str(s).map_err(|e| CliError::Input(format!("basis '{s}': {e}")))
}

fn error_line(id: &str, e: &str) -> String {
    object(&[("id", string(id)), ("error", string(e))])
}

fn execute(cmd: Command) -> CliResult<i32> {
    match cmd {
        Command::Invariant { files } => cmd_invariant(&files),
        Command::Dist { files, metric } => cmd_dist(&files, &metric),
        Command::Matrix { files, metric } => cmd_matrix(&files, &metric),
        Command::Path {
            preset,
            start,
            end,
            samples,
            out,
        } => {
            let (start, end) = match (preset, start, end) {
                (_, Some(s), Some(e)) => (parse_basis(&s)?, parse_basis(&e)?),
                _ => (commands::DEFORMATION_START, commands::DEFORMATION_END),
            };
            cmd_path(start, end, samples, &out)
        }
        Command::Discontinuity { a, b, deltas, out } => cmd_discontinuity(a, b, &deltas, &out),
        Command::Design {
            x,
            y,
            sigma,
            sign,
            out,
        } => cmd_design(x, y, sigma, sign, &out),
        Command::Rsd { files, k } => cmd_rsd(&files, k),
        Command::Reduce { files, mode } => cmd_reduce(&files, mode),
    }
}

/// Runs `f` on every record, writing one JSON line each; failures become
/// error lines and the worst exit code is returned.
fn per_record(
    files: &Files,
    f: impl Fn(&LatticeRecord) -> std::result::Result<Vec<(&'static str, String)>, Error>,
) -> CliResult<i32> {
    let text = read_input(&files.input)?;
    let mut out = writer(&files.out)?;
    let mut code = 0;
    for rec in io::parse_records(&text) {
        let line = match rec {
            Ok(r) => match f(&r) {
                Ok(mut fields) => {
                    fields.insert(0, ("id", string(&r.id)));
                    object(&fields)
                }
                Err(e) => {
                    code = code.max(CliError::from(e.clone()).exit_code());
                    error_line(&r.id, &e.to_string())
                }
            },
            Err((id, e)) => {
                code = code.max(1);
                error_line(&id, &e)
            }
        };
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(code)
}

fn chiralities(
    ri: &crate::invariants::RootInvariant,
    pi: &crate::invariants::ProjectedInvariant,
) -> Result<String, Error> {
    let mut fields = Vec::new();
    for (qname, q) in [("2", Minkowski::TWO), ("inf", Minkowski::INF)] {
        for g in PointGroup::ALL {
            fields.push((format!("RC{qname}[{g}]"), num(root_chirality(ri, g, q)?)));
            fields.push((
                format!("PC{qname}[{g}]"),
                num(projected_chirality(pi, g, q)?),
            ));
        }
    }
    let refs: Vec<(&str, String)> = fields
        .iter()
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();
    Ok(object(&refs))
}

fn cmd_invariant(files: &Files) -> CliResult<i32> {
    per_record(files, |r| {
        let rep = commands::invariant_report(&r.to_basis()?)?;
        let m = rep.metric_tensor;
        Ok(vec![
            ("superbase", superbase(&rep.superbase)),
            ("ri", nums(&rep.ri.as_array())),
            ("sign", rep.sign.value().to_string()),
            ("size", num(rep.size)),
            ("pi", nums(&[rep.pi.x, rep.pi.y])),
            (
                "pi_oriented",
                array([
                    num(rep.pi_oriented.pi.x),
                    num(rep.pi_oriented.pi.y),
                    rep.pi_oriented.sign.value().to_string(),
                ]),
            ),
            ("metric_tensor", nums(&[m.q11, m.q12, m.q22])),
            ("cell_area", num(rep.cell_area)),
            ("chirality", chiralities(&rep.ri, &rep.pi)?),
        ])
    })
}

fn cmd_dist(files: &Files, metric: &Metric) -> CliResult<i32> {
    let recs = strict_records(&read_input(&files.input)?)?;
    if recs.len() < 2 {
        return Err(CliError::Input(format!(
            "need two records, got {}",
            recs.len()
        )));
    }
    let d = commands::distance(
        &recs[0].to_basis()?,
        &recs[1].to_basis()?,
        metric.mode,
        metric.q,
    )?;
    let mut out = writer(&files.out)?;
    writeln!(out, "{}", num(d))?;
    out.flush()?;
    Ok(0)
}

fn csv_writer(path: &Option<PathBuf>) -> CliResult<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new()
        .flexible(false)
        .from_writer(writer(path)?))
}

fn cmd_matrix(files: &Files, metric: &Metric) -> CliResult<i32> {
    let recs = strict_records(&read_input(&files.input)?)?;
    if recs.len() < 2 {
        return Err(CliError::Input(format!(
            "need at least two records, got {}",
            recs.len()
        )));
    }
    let m = commands::distance_matrix(&recs, metric.mode, metric.q)?;
    let mut w = csv_writer(&files.out)?;
    w.write_record(std::iter::once("id").chain(recs.iter().map(|r| r.id.as_str())))?;
    for (r, row) in recs.iter().zip(&m) {
        w.write_record(std::iter::once(r.id.clone()).chain(row.iter().map(|&x| num(x))))?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_path(
    start: [[f64; 2]; 2],
    end: [[f64; 2]; 2],
    samples: usize,
    out: &Option<PathBuf>,
) -> CliResult<i32> {
    let trace = commands::path_trace(start, end, samples)?;
    let mut w = csv_writer(out)?;
    w.write_record([
        "t", "r12", "r01", "r02", "x", "y", "sign", "b1x", "b1y", "b2x", "b2y",
    ])?;
    for s in trace {
        let b = s.reduced;
        let mut row: Vec<String> = [s.t, s.ri.r12, s.ri.r01, s.ri.r02, s.pi.x, s.pi.y]
            .iter()
            .map(|&x| num(x))
            .collect();
        row.push(s.sign.value().to_string());
        row.extend([b.v1.x, b.v1.y, b.v2.x, b.v2.y].iter().map(|&x| num(x)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_discontinuity(a: f64, b: f64, deltas: &[f64], out: &Option<PathBuf>) -> CliResult<i32> {
    let rows = commands::discontinuity_table(a, b, deltas)?;
    let mut w = csv_writer(out)?;
    w.write_record([
        "delta",
        "rm_inf",
        "rm_bound",
        "cm_inf",
        "sim_inf",
        "sim_lower_bound",
    ])?;
    for r in rows {
        w.write_record(
            [
                r.delta,
                r.rm_inf,
                r.rm_bound,
                r.cm_inf,
                r.sim_inf,
                r.sim_lower_bound,
            ]
            .map(num),
        )?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_design(x: f64, y: f64, sigma: f64, sign: i64, out: &Option<PathBuf>) -> CliResult<i32> {
    let d = commands::design(x, y, sigma, sign)?;
    let mut w = writer(out)?;
    let line = object(&[
        ("ri", nums(&d.ri.as_array())),
        ("superbase", superbase(&d.superbase)),
        ("angle", num(d.angle)),
    ]);
    writeln!(w, "{line}")?;
    w.flush()?;
    Ok(0)
}

fn cmd_rsd(files: &Files, k: usize) -> CliResult<i32> {
    per_record(files, |r| {
        let (d, vn) = commands::distances(&r.to_basis()?, k)?;
        let vn = match vn {
            Ok(v) => nums(&v),
            Err(e) => object(&[("error", string(&e.to_string()))]),
        };
        Ok(vec![("rsd", nums(&d.distances)), ("vonorms", vn)])
    })
}

fn cmd_reduce(files: &Files, mode: EquivalenceMode) -> CliResult<i32> {
    per_record(files, |r| {
        let (s, b) = commands::reduce(&r.to_basis()?, mode)?;
        Ok(vec![
            ("superbase", superbase(&s)),
            ("reduced_basis", basis(&b)),
        ])
    })
}
