//! Serializable records and the tabular writers used for every output file.
//!
//! Floating-point values are written with 12 significant digits. Each file
//! starts with a metadata block: `# key=value` comment lines for CSV, a
//! leading `{"meta": {...}}` line for JSON lines.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::decomp::{Decomposition, DecompositionKind};
use crate::error::{Error, Result};
use crate::gstate::{to_standard_form, CovMatrix, StandardForm};
use crate::measures::{self, log_negativity, nu_tilde_minus, r_tilde_interval};
use crate::oracle::{EofResult, EprResult};

pub const CONVENTION: &str = "vacuum-variance-1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits. Non-finite values
/// pass through unchanged.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

pub fn ser12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

fn ser12_vec<S: Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| round_sig(*x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json-lines" | "jsonl" => Ok(OutputFormat::JsonLines),
            other => Err(Error::InvalidArgument(format!("unknown output format {other:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::JsonLines => "json-lines",
        })
    }
}

/// Provenance block written at the top of every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub command: String,
    pub seed: Option<u64>,
    pub version: String,
    pub convention: String,
    /// Remaining run settings, stored as text so that key order and
    /// formatting are stable across runs.
    pub params: BTreeMap<String, String>,
}

impl Metadata {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            seed,
            version: VERSION.to_string(),
            convention: CONVENTION.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// Writes the metadata block followed by one row per record.
pub fn write_records<T: Serialize, W: Write>(
    mut out: W,
    meta: &Metadata,
    format: OutputFormat,
    rows: &[T],
) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "# command={}", meta.command)?;
            if let Some(seed) = meta.seed {
                writeln!(out, "# seed={seed}")?;
            }
            writeln!(out, "# version={}", meta.version)?;
            writeln!(out, "# convention={}", meta.convention)?;
            for (k, v) in &meta.params {
                writeln!(out, "# {k}={v}")?;
            }
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::JsonLines => {
            serde_json::to_writer(&mut out, &serde_json::json!({ "meta": meta }))?;
            writeln!(out)?;
            for row in rows {
                serde_json::to_writer(&mut out, row)?;
                writeln!(out)?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses a state from either the four standard-form parameters or the 16
/// entries of a covariance matrix in row-major order.
pub fn parse_state(values: &[f64]) -> Result<StandardForm> {
    match values.len() {
        4 => StandardForm::new(values[0], values[1], values[2], values[3]),
        16 => to_standard_form(&CovMatrix::from_row_slice(values)?),
        n => Err(Error::Malformed(format!("expected 4 or 16 numbers, got {n}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateRecord {
    #[serde(serialize_with = "ser12")]
    pub a: f64,
    #[serde(serialize_with = "ser12")]
    pub b: f64,
    #[serde(serialize_with = "ser12")]
    pub c1: f64,
    #[serde(serialize_with = "ser12")]
    pub c2: f64,
    #[serde(serialize_with = "ser12")]
    pub nu_tilde_minus: f64,
    pub separable: bool,
}

impl From<&StandardForm> for StateRecord {
    fn from(sf: &StandardForm) -> Self {
        let [a, b, c1, c2] = sf.params();
        Self { a, b, c1, c2, nu_tilde_minus: nu_tilde_minus(sf), separable: measures::is_separable(sf) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureRecord {
    #[serde(serialize_with = "ser12")]
    pub a: f64,
    #[serde(serialize_with = "ser12")]
    pub b: f64,
    #[serde(serialize_with = "ser12")]
    pub c1: f64,
    #[serde(serialize_with = "ser12")]
    pub c2: f64,
    #[serde(rename = "E_N", serialize_with = "ser12")]
    pub e_n: f64,
    #[serde(rename = "E_F_tilde", serialize_with = "ser12")]
    pub e_f_tilde: f64,
    #[serde(serialize_with = "ser12")]
    pub r_tilde_minus: f64,
    #[serde(serialize_with = "ser12")]
    pub r_tilde_plus: f64,
    #[serde(serialize_with = "ser12")]
    pub nu_tilde_minus: f64,
    pub separable: bool,
}

impl MeasureRecord {
    pub fn of(sf: &StandardForm) -> Result<Self> {
        let [a, b, c1, c2] = sf.params();
        let interval = r_tilde_interval(sf)?;
        Ok(Self {
            a,
            b,
            c1,
            c2,
            e_n: log_negativity(sf),
            e_f_tilde: measures::eof_lower_bound(sf)?,
            r_tilde_minus: interval.r_minus,
            r_tilde_plus: interval.r_plus,
            nu_tilde_minus: nu_tilde_minus(sf),
            separable: measures::is_separable(sf),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EofRecord {
    #[serde(serialize_with = "ser12")]
    pub a: f64,
    #[serde(serialize_with = "ser12")]
    pub b: f64,
    #[serde(serialize_with = "ser12")]
    pub c1: f64,
    #[serde(serialize_with = "ser12")]
    pub c2: f64,
    #[serde(serialize_with = "ser12")]
    pub r_o: f64,
    #[serde(rename = "E_F", serialize_with = "ser12")]
    pub eof: f64,
    #[serde(serialize_with = "ser12")]
    pub r1_o: f64,
    #[serde(serialize_with = "ser12")]
    pub r2_o: f64,
    #[serde(serialize_with = "ser12")]
    pub r_tilde_minus: f64,
    #[serde(rename = "E_F_tilde", serialize_with = "ser12")]
    pub eof_lower_bound: f64,
    #[serde(serialize_with = "ser12")]
    pub certified_gap: f64,
    #[serde(serialize_with = "ser12")]
    pub residual_min_eigenvalue: f64,
    pub iterations: usize,
}

impl EofRecord {
    pub fn new(sf: &StandardForm, res: &EofResult) -> Self {
        let [a, b, c1, c2] = sf.params();
        Self {
            a,
            b,
            c1,
            c2,
            r_o: res.r_o,
            eof: res.eof,
            r1_o: res.r1_o,
            r2_o: res.r2_o,
            r_tilde_minus: res.r_tilde_minus,
            eof_lower_bound: measures::eof_from_squeezing(res.r_tilde_minus.max(0.0)).unwrap_or(f64::NAN),
            certified_gap: res.certified_gap,
            residual_min_eigenvalue: res.residual_min_eigenvalue,
            iterations: res.iterations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EprRecord {
    #[serde(serialize_with = "ser12")]
    pub beta_min: f64,
    #[serde(serialize_with = "ser12")]
    pub gx: f64,
    #[serde(serialize_with = "ser12")]
    pub gp: f64,
    #[serde(serialize_with = "ser12")]
    pub nu_tilde_minus_sq: f64,
    pub iterations: usize,
}

impl From<&EprResult> for EprRecord {
    fn from(r: &EprResult) -> Self {
        Self { beta_min: r.beta_min, gx: r.gx, gp: r.gp, nu_tilde_minus_sq: r.nu_tilde_minus_sq, iterations: r.iterations }
    }
}

/// Debug/fixture form of a decomposition: the order tag, the three
/// squeezings and the 16 residual entries in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionRecord {
    pub kind: DecompositionKind,
    #[serde(serialize_with = "ser12")]
    pub r: f64,
    #[serde(serialize_with = "ser12")]
    pub r1: f64,
    #[serde(serialize_with = "ser12")]
    pub r2: f64,
    #[serde(serialize_with = "ser12_vec")]
    pub classical_part: Vec<f64>,
}

impl From<&Decomposition> for DecompositionRecord {
    fn from(d: &Decomposition) -> Self {
        Self {
            kind: d.kind,
            r: d.params.r,
            r1: d.params.r1,
            r2: d.params.r2,
            classical_part: d.classical_part.to_row_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gstate::{apply, tmsv, SqueezeParams, SymplecticOp};

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.234_567_890_123_456), 1.234_567_890_12);
        assert_eq!(round_sig(-9.876_543_210_987_654e-7), -9.876_543_210_99e-7);
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(f64::INFINITY).is_infinite());
    }

    #[test]
    fn parse_four_and_sixteen() {
        let sf = parse_state(&[2.0, 3.0, 1.5, -1.0]).unwrap();
        let rotated = apply(&SymplecticOp::local_rotation(0.4, -1.1), &sf.to_cov());
        let dense = parse_state(&rotated.to_row_vec()).unwrap();
        for (x, y) in sf.params().iter().zip(dense.params()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(matches!(parse_state(&[1.0, 2.0, 3.0]), Err(Error::Malformed(_))));
        assert!(parse_state(&[0.5, 1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = [StateRecord::from(&tmsv(1.0).unwrap())];
        let mut buf = Vec::new();
        write_records(&mut buf, &Metadata::new("sample", Some(7)).with("n", 1), OutputFormat::Csv, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command=sample");
        assert_eq!(lines[1], "# seed=7");
        assert_eq!(lines[3], "# convention=vacuum-variance-1");
        assert_eq!(lines[4], "# n=1");
        assert_eq!(lines[5], "a,b,c1,c2,nu_tilde_minus,separable");
        assert!(lines[6].starts_with("3.76219569108,3.76219569108,3.62686040785,-3.62686040785,"));
    }

    #[test]
    fn json_lines_layout() {
        let rec = MeasureRecord::of(&tmsv(1.0).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_records(&mut buf, &Metadata::new("measure", None), OutputFormat::JsonLines, &[rec]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let meta: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(meta["meta"]["convention"], "vacuum-variance-1");
        let row: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(row["E_N"], 2.88539008178);
        assert_eq!(row["separable"], false);
    }

    #[test]
    fn decomposition_record_shape() {
        let sf = tmsv(0.5).unwrap();
        let d = Decomposition::new(&sf, SqueezeParams::new(0.5, 0.0, 0.0), DecompositionKind::SqueezeThenLocal);
        let json = serde_json::to_value(DecompositionRecord::from(&d)).unwrap();
        assert_eq!(json["kind"], "squeeze-then-local");
        assert_eq!(json["classical_part"].as_array().unwrap().len(), 16);
    }
}
