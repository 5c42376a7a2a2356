//! The on-disk formats: a symmetry (`ybx-symmetry/1`) or a subspace family
//! (`ybx-family/1`), both JSON with every scalar written as a string in the
//! scalar grammar.

use serde::Deserialize;
use ybx_core::quadratic::SubspaceFamily;
use ybx_core::symmetry::SymmetryKind;
use ybx_core::{parse_scalar, Matrix, RatFun};

use crate::CliError;

pub const SYMMETRY_FORMAT: &str = "ybx-symmetry/1";
pub const FAMILY_FORMAT: &str = "ybx-family/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryFile {
    pub name: String,
    pub n: usize,
    pub kind: SymmetryKind,
    pub eigenvalues: Vec<RatFun>,
    pub matrix: Matrix<RatFun>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFile {
    pub name: String,
    pub n: usize,
    pub family: SubspaceFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputFile {
    Symmetry(SymmetryFile),
    Family(FamilyFile),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSymmetry {
    format: String,
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    kind: Option<String>,
    eigenvalues: Vec<String>,
    matrix: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    format: String,
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    rows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct Probe {
    format: Option<String>,
}

fn scalar(text: &str, place: impl FnOnce() -> String) -> Result<RatFun, CliError> {
    parse_scalar(text).map_err(|e| CliError::Input(format!("{}: `{text}`: {e}", place())))
}

fn scalar_rows(rows: &[Vec<String>], width: usize, what: &str) -> Result<Matrix<RatFun>, CliError> {
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(CliError::Input(format!("{what}[{i}] has {} entries, expected {width}", row.len())));
        }
        let entries = row
            .iter()
            .enumerate()
            .map(|(j, s)| scalar(s, || format!("{what}[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(entries);
    }
    Matrix::from_rows(width, parsed).map_err(|e| CliError::Input(e.to_string()))
}

fn json_error(path: &str, e: serde_json::Error) -> CliError {
    CliError::Input(format!("{path}: {e}"))
}

fn default_name(path: &str) -> String {
    std::path::Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_string())
}

pub fn parse_input(text: &str, path: &str) -> Result<InputFile, CliError> {
    let probe: Probe = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
    match probe.format.as_deref() {
        Some(SYMMETRY_FORMAT) => parse_symmetry(text, path).map(InputFile::Symmetry),
        Some(FAMILY_FORMAT) => {
            let raw: RawFamily = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
            debug_assert_eq!(raw.format, FAMILY_FORMAT);
            let nn = raw.dim * raw.dim;
            if raw.dim == 0 {
                return Err(CliError::Input("dim must be positive".into()));
            }
            let rows = scalar_rows(&raw.rows, nn, "rows")?;
            let family = SubspaceFamily::new(rows)
                .map_err(|_| CliError::Input("family rows are linearly dependent over ℚ(q)".into()))?;
            Ok(InputFile::Family(FamilyFile {
                name: raw.name.unwrap_or_else(|| default_name(path)),
                n: raw.dim,
                family,
            }))
        }
        Some(other) => Err(CliError::Input(format!(
            "{path}: unknown format `{other}` (expected `{SYMMETRY_FORMAT}` or `{FAMILY_FORMAT}`)"
        ))),
        None => Err(CliError::Input(format!("{path}: missing `format` field"))),
    }
}

fn parse_symmetry(text: &str, path: &str) -> Result<SymmetryFile, CliError> {
    let raw: RawSymmetry = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
    debug_assert_eq!(raw.format, SYMMETRY_FORMAT);
    if raw.dim == 0 {
        return Err(CliError::Input("dim must be positive".into()));
    }
    let nn = raw.dim * raw.dim;
    if raw.matrix.len() != nn {
        return Err(CliError::Input(format!("matrix has {} rows, expected {nn}", raw.matrix.len())));
    }
    let matrix = scalar_rows(&raw.matrix, nn, "matrix")?;
    let eigenvalues = raw
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, s)| scalar(s, || format!("eigenvalues[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let kind = match raw.kind.as_deref() {
        None => SymmetryKind::GenericYb,
        Some(k) => SymmetryKind::parse(k).ok_or_else(|| {
            CliError::Input(format!("unknown kind `{k}` (expected generic-yb, hecke or birman-wenzl)"))
        })?,
    };
    Ok(SymmetryFile { name: raw.name.unwrap_or_else(|| default_name(path)), n: raw.dim, kind, eigenvalues, matrix })
}

pub fn load(path: &str) -> Result<InputFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    parse_input(&text, path)
}

pub fn load_symmetry(path: &str) -> Result<SymmetryFile, CliError> {
    match load(path)? {
        InputFile::Symmetry(s) => Ok(s),
        InputFile::Family(_) => Err(CliError::Input(format!("{path}: expected a symmetry file, found a family"))),
    }
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn string_row(row: &[RatFun]) -> String {
    let cells: Vec<String> = row.iter().map(|x| quoted(&x.to_string())).collect();
    format!("[{}]", cells.join(", "))
}

fn matrix_block(m: &Matrix<RatFun>) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| format!("    {}", string_row(m.row(i)))).collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

/// Canonical text: one matrix row per line, scalars in canonical form.
pub fn emit_symmetry(f: &SymmetryFile) -> String {
    format!(
        "{{\n  \"format\": {},\n  \"name\": {},\n  \"dim\": {},\n  \"kind\": {},\n  \"eigenvalues\": {},\n  \"matrix\": {}\n}}\n",
        quoted(SYMMETRY_FORMAT),
        quoted(&f.name),
        f.n,
        quoted(f.kind.as_str()),
        string_row(&f.eigenvalues),
        matrix_block(&f.matrix),
    )
}

pub fn emit_family(f: &FamilyFile) -> String {
    format!(
        "{{\n  \"format\": {},\n  \"name\": {},\n  \"dim\": {},\n  \"rows\": {}\n}}\n",
        quoted(FAMILY_FORMAT),
        quoted(&f.name),
        f.n,
        matrix_block(f.family.rows()),
    )
}
