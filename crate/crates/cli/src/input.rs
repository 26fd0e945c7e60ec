use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use dynsamp::field::{unit, FieldKind, Scalar, ToleranceProfile};
use dynsamp::io::{vectors_from_json, ProblemData, ProblemFile};
use serde_json::Value;

/// A malformed or unreadable input. Maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

pub fn bad_input(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| bad_input(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| bad_input(format!("cannot write {}: {e}", path.display())))
}

/// Loads a problem file; `mode` overrides the declared field mode.
pub fn problem_file(path: &Path, mode: Option<FieldKind>) -> Result<ProblemFile> {
    let text = read_text(path)?;
    let mut file =
        ProblemFile::parse(&text).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
    if let Some(m) = mode {
        file.mode = m;
    }
    Ok(file)
}

pub fn typed<S: Scalar>(file: &ProblemFile, path: &Path) -> Result<ProblemData<S>> {
    let data: ProblemData<S> = file
        .typed()
        .map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
    data.problem()
        .map_err(|e| bad_input(format!("{}: invalid problem: {e}", path.display())))?;
    Ok(data)
}

/// Candidate pool: `standard` or `file:<path>` holding a JSON list of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoolSpec {
    Standard,
    File(PathBuf),
}

impl std::str::FromStr for PoolSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "standard" {
            Ok(PoolSpec::Standard)
        } else if let Some(path) = s.strip_prefix("file:") {
            Ok(PoolSpec::File(PathBuf::from(path)))
        } else {
            Err(format!(
                "pool must be `standard` or `file:<path>`, got `{s}`"
            ))
        }
    }
}

impl PoolSpec {
    pub fn load<S: Scalar>(&self, d: usize, tol: &ToleranceProfile) -> Result<Vec<Vec<S>>> {
        match self {
            PoolSpec::Standard => Ok((0..d).map(|k| unit(d, k)).collect()),
            PoolSpec::File(path) => {
                let v = read_json(path)?;
                vectors_from_json(&v, d, tol)
                    .map_err(|e| bad_input(format!("{}: {e}", path.display())))
            }
        }
    }
}

/// One scalar from the command line: a JSON number or a `p/q` string.
pub fn scalar_arg<S: Scalar>(text: &str, tol: &ToleranceProfile) -> Result<S> {
    let t = text.trim();
    let v = serde_json::from_str::<Value>(t)
        .ok()
        .filter(Value::is_number)
        .unwrap_or_else(|| Value::String(t.to_string()));
    S::from_json(&v, tol)
        .with_context(|| format!("bad scalar `{t}`"))
        .map_err(|e| bad_input(format!("{e:#}")))
}

pub fn vector_arg<S: Scalar>(
    text: &str,
    len: usize,
    what: &str,
    tol: &ToleranceProfile,
) -> Result<Vec<S>> {
    let v = text
        .split(',')
        .map(|t| scalar_arg(t, tol))
        .collect::<Result<Vec<S>>>()?;
    if v.len() != len {
        return Err(bad_input(format!(
            "{what} needs {len} entries, got {}",
            v.len()
        )));
    }
    Ok(v)
}

/// Reads the `mode` field of a plan or measurement file.
pub fn declared_mode(v: &Value, path: &Path) -> Result<FieldKind> {
    v.get("mode")
        .and_then(Value::as_str)
        .ok_or_else(|| bad_input(format!("{}: missing `mode`", path.display())))?
        .parse()
        .map_err(|e| bad_input(format!("{}: {e}", path.display())))
}
