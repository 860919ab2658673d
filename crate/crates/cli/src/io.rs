//! JSON file formats and output serialization.

use std::io::Write;

use serde::{Deserialize, Serialize};
use varorder::{ComplexMatrix, DensityState, HermitianObservable, PureState, UnitaryMap, C64};

use crate::error::{CliError, CliResult};

/// A matrix entry: `[re, im]`, or a bare real number.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Complex([f64; 2]),
    Real(f64),
}

impl From<Entry> for C64 {
    fn from(e: Entry) -> C64 {
        match e {
            Entry::Complex([re, im]) => C64::new(re, im),
            Entry::Real(re) => C64::new(re, 0.0),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub vector: Option<Vec<Entry>>,
    pub density: Option<Vec<Vec<Entry>>>,
}

#[derive(Debug, Serialize)]
pub struct MatrixOut {
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixOut {
    pub fn new(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            matrix: m.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }
}

pub fn pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_string(),
        source,
    })
}

fn square(dim: usize, rows: Vec<Vec<Entry>>, what: &str) -> CliResult<ComplexMatrix> {
    if dim == 0 {
        return Err(CliError::Input(format!("{what}: dim must be positive")));
    }
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Input(format!("{what}: expected a {dim}x{dim} matrix")));
    }
    let rows: Vec<Vec<C64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(C64::from).collect())
        .collect();
    Ok(ComplexMatrix::from_rows(&rows)?)
}

pub fn read_matrix(path: &str) -> CliResult<ComplexMatrix> {
    let file: MatrixFile = read_json(path)?;
    square(file.dim, file.matrix, path)
}

pub fn read_observable(path: &str) -> CliResult<HermitianObservable> {
    Ok(HermitianObservable::new(read_matrix(path)?)?)
}

pub fn read_unitary(path: &str, antiunitary: bool) -> CliResult<UnitaryMap> {
    Ok(UnitaryMap::new(read_matrix(path)?, antiunitary)?)
}

pub enum StateInput {
    Pure(PureState),
    Mixed(DensityState),
}

pub fn read_state(path: &str) -> CliResult<StateInput> {
    let file: StateFile = read_json(path)?;
    match (file.vector, file.density) {
        (Some(v), None) => {
            if v.len() != file.dim {
                return Err(CliError::Input(format!(
                    "{path}: expected a vector of length {}",
                    file.dim
                )));
            }
            Ok(StateInput::Pure(PureState::new(
                v.into_iter().map(C64::from).collect(),
            )?))
        }
        (None, Some(rows)) => Ok(StateInput::Mixed(DensityState::new(square(file.dim, rows, path)?)?)),
        _ => Err(CliError::Input(format!(
            "{path}: a state file needs exactly one of \"vector\" or \"density\""
        ))),
    }
}

/// Spectrum given inline as `0,1,3,7` or as a path to a JSON array of reals.
pub fn read_spectrum(arg: &str) -> CliResult<Vec<f64>> {
    let inline: Result<Vec<f64>, _> = arg.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match inline {
        Ok(v) if !std::path::Path::new(arg).exists() => Ok(v),
        _ => read_json(arg),
    }
}

/// A q-matrix file: either a bare square array or the object printed by `q-matrix`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum QFile {
    Bare(Vec<Vec<f64>>),
    Report { q: Vec<Vec<f64>> },
}

impl QFile {
    pub fn into_rows(self) -> Vec<Vec<f64>> {
        match self {
            QFile::Bare(rows) | QFile::Report { q: rows } => rows,
        }
    }
}

/// Writes floats with 17 significant digits so every value round-trips exactly.
struct ExactFloats;

impl serde_json::ser::Formatter for ExactFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats);
    value.serialize(&mut ser).expect("reports serialize");
    String::from_utf8(buf).expect("JSON is UTF-8")
}
