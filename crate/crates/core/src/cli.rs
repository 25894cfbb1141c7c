//! Command-line front end for `moncurv`.
//!
//! Numbers are written with 17 significant digits so repeated runs can be
//! diffed byte for byte. Exit codes: 0 on success, 1 for invalid input and
//! 2 when a verification tolerance is breached.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremum::{
    classify_origin, family_measure, series_coefficients, t_double_pair, FamilyParams, OriginInput,
};
use crate::function::{function_from_measure, CatalogEntry, MonotoneFunction};
use crate::measure::SymmetricMeasure;
use crate::nlevel::{scalar_curvature, Spectrum};
use crate::numeric::linspace;
use crate::qubit::CurvatureSample;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

/// Formats a float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Inclusive grid `min:max:count` generated by index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts.as_slice() else {
            return Err(Error::Config(format!("grid `{s}` is not of the form min:max:count")));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| Error::Config(format!("grid `{s}`: {e}")));
        let (min, max) = (num(min)?, num(max)?);
        let count: usize = count.trim().parse().map_err(|e| Error::Config(format!("grid `{s}`: {e}")))?;
        if count < 2 {
            return Err(Error::Config(format!("grid `{s}`: count must be at least 2")));
        }
        if !(min < max) {
            return Err(Error::Config(format!("grid `{s}`: min must be below max")));
        }
        Ok(Self { min, max, count })
    }
}

/// A single value or a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Values {
    Single(f64),
    Grid(GridSpec),
}

impl Values {
    pub fn points(&self) -> Vec<f64> {
        match self {
            Values::Single(v) => vec![*v],
            Values::Grid(g) => g.points(),
        }
    }
}

impl FromStr for Values {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains(':') {
            Ok(Values::Grid(s.parse()?))
        } else {
            s.trim()
                .parse()
                .map(Values::Single)
                .map_err(|e| Error::Config(format!("`{s}`: {e}")))
        }
    }
}

/// Which function (and, when available, which measure) to analyze.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Catalog(String),
    Measure(PathBuf),
    Family { p: f64, q: f64 },
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some(("catalog", name)) => Ok(Self::Catalog(name.to_string())),
            Some(("measure", path)) => Ok(Self::Measure(PathBuf::from(path))),
            Some(("family", pq)) => {
                let (p, q) = pq
                    .split_once(',')
                    .ok_or_else(|| Error::Config(format!("`{s}`: expected family:p,q")))?;
                let num = |t: &str| t.trim().parse::<f64>().map_err(|e| Error::Config(format!("`{s}`: {e}")));
                Ok(Self::Family { p: num(p)?, q: num(q)? })
            }
            // a bare catalog name, optionally with a parameter (`power:0.3`)
            _ => Ok(Self::Catalog(s.to_string())),
        }
    }
}

impl std::fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctionSpec::Catalog(name) => write!(f, "catalog:{name}"),
            FunctionSpec::Measure(path) => write!(f, "measure:{}", path.display()),
            FunctionSpec::Family { p, q } => write!(f, "family:{p},{q}"),
        }
    }
}

/// A resolved function together with its measure, if it has one.
pub struct Resolved {
    pub function: MonotoneFunction,
    pub measure: Option<SymmetricMeasure>,
}

impl FunctionSpec {
    pub fn resolve(&self) -> Result<Resolved> {
        match self {
            FunctionSpec::Catalog(name) => {
                let entry: CatalogEntry = name.parse()?;
                Ok(Resolved { function: entry.into(), measure: None })
            }
            FunctionSpec::Measure(path) => {
                let mu = SymmetricMeasure::load(path)?;
                Ok(Resolved { function: function_from_measure(&mu), measure: Some(mu) })
            }
            FunctionSpec::Family { p, q } => {
                let mu = family_measure(FamilyParams::new(*p, *q)?)?;
                Ok(Resolved { function: function_from_measure(&mu), measure: Some(mu) })
            }
        }
    }
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("tolerance must be positive, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(name = "moncurv", version, about = "Scalar curvature of monotone metrics on quantum state spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in functions with their expansion at the origin.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the qubit curvature over a grid of Bloch radii by all three routes.
    Curve {
        #[arg(long = "f", value_name = "SPEC")]
        function: FunctionSpec,
        #[arg(long, default_value = "-0.95:0.95:39", allow_hyphen_values = true)]
        grid: GridSpec,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6, value_parser = parse_tol)]
        tol: f64,
    },
    /// Classify the maximally mixed qubit state as a local minimum or maximum.
    Classify {
        #[arg(long = "f", value_name = "SPEC")]
        function: FunctionSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the two-pair family over p and q.
    FamilyScan {
        #[arg(long, allow_hyphen_values = true)]
        p: Values,
        #[arg(long, allow_hyphen_values = true)]
        q: Values,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scalar curvature of an n-level state given by its spectrum.
    Nlevel {
        #[arg(long = "f", value_name = "SPEC")]
        function: FunctionSpec,
        #[arg(long, value_name = "L1,L2,...")]
        spectrum: Spectrum,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every acceptance check and report one line per check.
    Verify {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn catalog_table() -> Result<String> {
    let mut s = String::from("name,f2,c0,c2,c4\n");
    for entry in CatalogEntry::all() {
        let f = MonotoneFunction::from(entry);
        let e = series_coefficients(&f)?;
        let f2 = f.jet(1.0, 2)?.derivative(2);
        writeln!(s, "{},{},{},{},{}", entry.name(), fmt17(f2), fmt17(e.c0), fmt17(e.c2), fmt17(e.c4)).unwrap();
    }
    Ok(s)
}

/// Three-route sweep; the flag is true when some row exceeds `tol`.
pub fn curve_table(f: &MonotoneFunction, grid: &GridSpec, tol: f64) -> Result<(String, bool)> {
    let rows: Vec<CurvatureSample> = grid
        .points()
        .par_iter()
        .map(|&a| CurvatureSample::compute(f, a))
        .collect::<Result<_>>()?;
    let mut s = String::from("a,r_closed,r_sums,r_geometric,max_rel_disagreement\n");
    let mut breached = false;
    for r in &rows {
        breached |= !(r.max_rel_disagreement < tol);
        writeln!(
            s,
            "{},{},{},{},{}",
            fmt17(r.a),
            fmt17(r.r_closed),
            fmt17(r.r_sums),
            fmt17(r.r_geometric),
            fmt17(r.max_rel_disagreement)
        )
        .unwrap();
    }
    Ok((s, breached))
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    function: String,
    c0: f64,
    c2: f64,
    c4: f64,
    verdict: crate::extremum::Verdict,
    decided_by: crate::extremum::DecidedBy,
    moment_summary: &'a Option<crate::measure::MomentSummary>,
}

fn classify_report(spec: &FunctionSpec) -> Result<String> {
    let resolved = spec.resolve()?;
    let c = match &resolved.measure {
        Some(mu) => classify_origin(OriginInput::Measure(mu))?,
        None => classify_origin(OriginInput::Function(&resolved.function))?,
    };
    let report = ClassifyReport {
        function: spec.to_string(),
        c0: c.values.c0,
        c2: c.values.c2,
        c4: c.values.c4,
        verdict: c.verdict,
        decided_by: c.decided_by,
        moment_summary: &c.moment_summary,
    };
    Ok(serde_json::to_string_pretty(&report)? + "\n")
}

pub fn family_table(p: &Values, q: &Values) -> Result<String> {
    let mut cells = Vec::new();
    for pv in p.points() {
        for qv in q.points() {
            cells.push((pv, qv));
        }
    }
    let rows: Vec<String> = cells
        .par_iter()
        .map(|&(pv, qv)| {
            let mu = family_measure(FamilyParams::new(pv, qv)?)?;
            let c = classify_origin(OriginInput::Measure(&mu))?;
            Ok(format!(
                "{},{},{},{},{:?}\n",
                fmt17(pv),
                fmt17(qv),
                fmt17(t_double_pair(pv, qv)?),
                fmt17(c.values.c2),
                c.verdict
            ))
        })
        .collect::<Result<_>>()?;
    Ok(std::iter::once("p,q,t_value,c2,verdict\n".to_string()).chain(rows).collect())
}

fn verify_text() -> (String, bool) {
    let mut s = String::new();
    let mut ok = true;
    for r in verify::run_all() {
        match r {
            Ok(report) => {
                ok &= report.passed;
                writeln!(s, "{report}").unwrap();
            }
            Err(e) => {
                ok = false;
                writeln!(s, "[FAIL] check aborted: {e}").unwrap();
            }
        }
    }
    (s, ok)
}

/// Runs one command, writing to `out` files or `stdout`; returns the exit code.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Catalog { out } => {
            emit(&out, &catalog_table()?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Curve { function, grid, out, tol } => {
            let f = function.resolve()?.function;
            let (text, breached) = curve_table(&f, &grid, tol)?;
            emit(&out, &text, stdout)?;
            Ok(if breached { EXIT_VERIFY } else { EXIT_OK })
        }
        Command::Classify { function, out } => {
            emit(&out, &classify_report(&function)?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::FamilyScan { p, q, out } => {
            emit(&out, &family_table(&p, &q)?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Nlevel { function, spectrum, out } => {
            let f = function.resolve()?.function;
            let r = scalar_curvature(&f, &spectrum)?;
            emit(&out, &format!("{}\n", fmt17(r)), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify { out } => {
            let (text, ok) = verify_text();
            emit(&out, &text, stdout)?;
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

/// Parses arguments and runs; argument errors map to exit code 1.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}
