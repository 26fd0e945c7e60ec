//! JSON file formats for problems, measurements and recovery plans.
//!
//! Exact scalars are written as `"p/q"` strings (Gaussian ones as
//! `"p/q+r/si"`); float scalars as JSON numbers. On input, vectors may also
//! be given as `{"e": k}`, the `k`-th standard basis vector (1-based).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::completeness::ProblemDef;
use crate::error::{Error, Result};
use crate::field::{unit, FieldKind, Mat, Scalar, ToleranceProfile};
use crate::recovery::{MeasurementSeries, RecoveryPlan};

/// Largest state dimension accepted from files.
pub const MAX_DIM: usize = 64;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn scalar_from_json<S: Scalar>(v: &Value, tol: &ToleranceProfile) -> Result<S> {
    S::from_json(v, tol)
}

pub fn vector_to_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

pub fn vector_from_json<S: Scalar>(v: &Value, d: usize, tol: &ToleranceProfile) -> Result<Vec<S>> {
    match v {
        Value::Array(items) => {
            if items.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: items.len(),
                });
            }
            items.iter().map(|x| S::from_json(x, tol)).collect()
        }
        Value::Object(map) => {
            let k = map
                .get("e")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("vector object must look like {\"e\": k}"))?
                as usize;
            if k == 0 || k > d {
                return Err(parse_err(format!("basis index e{k} outside 1..={d}")));
            }
            Ok(unit(d, k - 1))
        }
        other => Err(parse_err(format!("expected a vector, got {other}"))),
    }
}

pub fn vectors_from_json<S: Scalar>(
    v: &Value,
    d: usize,
    tol: &ToleranceProfile,
) -> Result<Vec<Vec<S>>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected a list of vectors"))?
        .iter()
        .map(|x| vector_from_json(x, d, tol))
        .collect()
}

pub fn matrix_to_json<S: Scalar>(m: &Mat<S>) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn matrix_from_json<S: Scalar>(v: &Value, tol: &ToleranceProfile) -> Result<Mat<S>> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err("matrix must be a list of rows"))?;
    let cols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let parsed = rows
        .iter()
        .map(|r| vector_from_json(r, cols, tol))
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(&parsed)
}

/// One `(λ, n)` factor of the minimal polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenFactor {
    pub value: Value,
    pub multiplicity: usize,
}

/// Problem description as stored on disk, before the scalar field is fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub mode: FieldKind,
    pub a: Value,
    pub w: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensors: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<EigenFactor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceProfile>,
}

/// A parsed problem over a concrete field.
#[derive(Clone, Debug)]
pub struct ProblemData<S> {
    pub a: Mat<S>,
    pub w: Vec<Vec<S>>,
    pub sensors: Vec<Vec<S>>,
    pub eigenvalues: Option<Vec<(S, usize)>>,
    pub tolerance: ToleranceProfile,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    pub fn tolerance(&self) -> Result<ToleranceProfile> {
        match self.tolerance {
            None => Ok(ToleranceProfile::DEFAULT),
            Some(t) => ToleranceProfile::new(t.rank_threshold, t.equality_threshold),
        }
    }

    pub fn typed<S: Scalar>(&self) -> Result<ProblemData<S>> {
        if self.mode != S::KIND {
            return Err(parse_err(format!(
                "problem is in {} mode, expected {}",
                self.mode,
                S::KIND
            )));
        }
        let tol = self.tolerance()?;
        let a: Mat<S> = matrix_from_json(&self.a, &tol)?;
        let d = a.rows();
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: a.cols(),
            });
        }
        if d == 0 || d > MAX_DIM {
            return Err(parse_err(format!("dimension {d} outside 1..={MAX_DIM}")));
        }
        let w = vectors_from_json(&self.w, d, &tol)?;
        let sensors = match &self.sensors {
            Some(v) => vectors_from_json(v, d, &tol)?,
            None => Vec::new(),
        };
        let eigenvalues = self
            .eigenvalues
            .as_ref()
            .map(|list| {
                list.iter()
                    .map(|f| Ok((S::from_json(&f.value, &tol)?, f.multiplicity)))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(ProblemData {
            a,
            w,
            sensors,
            eigenvalues,
            tolerance: tol,
        })
    }
}

impl<S: Scalar> ProblemData<S> {
    pub fn problem(&self) -> Result<ProblemDef<S>> {
        ProblemDef::new(self.a.clone(), &self.w, self.sensors.clone())
    }

    pub fn to_file(&self) -> ProblemFile {
        ProblemFile {
            mode: S::KIND,
            a: matrix_to_json(&self.a),
            w: Value::Array(self.w.iter().map(|v| vector_to_json(v)).collect()),
            sensors: (!self.sensors.is_empty())
                .then(|| Value::Array(self.sensors.iter().map(|v| vector_to_json(v)).collect())),
            eigenvalues: self.eigenvalues.as_ref().map(|list| {
                list.iter()
                    .map(|(l, n)| EigenFactor {
                        value: l.to_json(),
                        multiplicity: *n,
                    })
                    .collect()
            }),
            tolerance: (self.tolerance != ToleranceProfile::DEFAULT).then_some(self.tolerance),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Sample {
    n: usize,
    y: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct SensorSeries {
    sensor: usize,
    samples: Vec<Sample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasurementFile {
    mode: FieldKind,
    series: Vec<SensorSeries>,
}

pub fn measurements_to_json<S: Scalar>(m: &MeasurementSeries<S>) -> Value {
    let file = MeasurementFile {
        mode: S::KIND,
        series: m
            .series
            .iter()
            .enumerate()
            .map(|(l, ys)| SensorSeries {
                sensor: l + 1,
                samples: ys
                    .iter()
                    .enumerate()
                    .map(|(n, y)| Sample { n, y: y.to_json() })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_value(file).expect("measurement file serializes")
}

/// Reads a measurement file. Sensors are numbered from 1 and samples must
/// cover `n = 0, 1, ...` without gaps (a shorter series is fine).
pub fn measurements_from_json<S: Scalar>(
    v: &Value,
    tol: &ToleranceProfile,
) -> Result<MeasurementSeries<S>> {
    let file: MeasurementFile =
        serde_json::from_value(v.clone()).map_err(|e| parse_err(e.to_string()))?;
    if file.mode != S::KIND {
        return Err(parse_err(format!(
            "measurements are in {} mode, expected {}",
            file.mode,
            S::KIND
        )));
    }
    let mut entries = file.series;
    entries.sort_by_key(|s| s.sensor);
    let mut series = Vec::with_capacity(entries.len());
    for (idx, mut s) in entries.into_iter().enumerate() {
        if s.sensor != idx + 1 {
            return Err(parse_err(format!(
                "sensor numbering must be 1..L, found {}",
                s.sensor
            )));
        }
        s.samples.sort_by_key(|x| x.n);
        let mut ys = Vec::with_capacity(s.samples.len());
        for (expect, sample) in s.samples.iter().enumerate() {
            if sample.n != expect {
                return Err(parse_err(format!(
                    "sensor {} is missing sample n = {expect}",
                    s.sensor
                )));
            }
            ys.push(S::from_json(&sample.y, tol)?);
        }
        series.push(ys);
    }
    Ok(MeasurementSeries { series })
}

pub fn plan_to_json<S: Scalar>(plan: &RecoveryPlan<S>) -> Value {
    let vecs = |vs: &[Vec<S>]| Value::Array(vs.iter().map(|v| vector_to_json(v)).collect());
    json!({
        "mode": S::KIND,
        "horizon": plan.horizon,
        "sensors": plan.sensors(),
        "alpha": plan.alpha.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "characteristic": vecs(&plan.characteristic),
        "frame": vecs(&plan.frame),
        "mu": vecs(&plan.mu),
        "w_basis": vecs(&plan.w_basis),
        "frame_matrix": matrix_to_json(&plan.frame_matrix),
        "dual": matrix_to_json(&plan.dual),
    })
}

pub fn plan_from_json<S: Scalar>(v: &Value, tol: &ToleranceProfile) -> Result<RecoveryPlan<S>> {
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| parse_err(format!("plan file lacks `{k}`")))
    };
    let mode: FieldKind =
        serde_json::from_value(field("mode")?.clone()).map_err(|e| parse_err(e.to_string()))?;
    if mode != S::KIND {
        return Err(parse_err(format!(
            "plan is in {mode} mode, expected {}",
            S::KIND
        )));
    }
    let horizon = field("horizon")?
        .as_u64()
        .ok_or_else(|| parse_err("horizon must be a count"))? as usize;
    let sensors = field("sensors")?
        .as_u64()
        .ok_or_else(|| parse_err("sensors must be a count"))? as usize;
    let alpha = field("alpha")?
        .as_array()
        .ok_or_else(|| parse_err("alpha must be a list of tables"))?
        .iter()
        .map(|t| {
            let m: Mat<S> = matrix_from_json(t, tol)?;
            if m.rows() != horizon || m.cols() != sensors {
                return Err(parse_err(
                    "alpha table shape disagrees with horizon and sensors",
                ));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let w_raw = field("w_basis")?;
    let d = w_raw
        .as_array()
        .and_then(|a| a.first())
        .and_then(Value::as_array)
        .map_or(0, Vec::len);
    let plan = RecoveryPlan {
        horizon,
        alpha,
        characteristic: vectors_from_json(field("characteristic")?, d, tol)?,
        frame: vectors_from_json(field("frame")?, d, tol)?,
        mu: vectors_from_json(field("mu")?, sensors, tol)?,
        w_basis: vectors_from_json(w_raw, d, tol)?,
        frame_matrix: matrix_from_json(field("frame_matrix")?, tol)?,
        dual: matrix_from_json(field("dual")?, tol)?,
    };
    if plan.dual.cols() != plan.alpha.len() || plan.dual.rows() != plan.w_basis.len() {
        return Err(parse_err("dual matrix shape disagrees with the plan"));
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    #[test]
    fn problem_file_with_basis_shorthand() {
        let text = r#"{
            "mode": "exact",
            "a": [["1","0"],["1","1"]],
            "w": [{"e": 1}],
            "sensors": [["1/2", "-3"]]
        }"#;
        let data: ProblemData<Q> = ProblemFile::parse(text).unwrap().typed().unwrap();
        assert_eq!(data.w, vec![unit(2, 0)]);
        assert_eq!(data.sensors[0][0], Q::new(1.into(), 2.into()));
    }

    #[test]
    fn oversized_and_bad_inputs_rejected() {
        let big = vec![vec!["0"; 65]; 65];
        let text = json!({"mode": "exact", "a": big, "w": [{"e": 1}]}).to_string();
        assert!(ProblemFile::parse(&text).unwrap().typed::<Q>().is_err());
        assert!(ProblemFile::parse("{").is_err());
        let text = r#"{"mode": "exact", "a": [["1"]], "w": [{"e": 2}]}"#;
        assert!(ProblemFile::parse(text).unwrap().typed::<Q>().is_err());
    }

    #[test]
    fn measurement_gaps_rejected() {
        let v = json!({"mode": "exact", "series": [{"sensor": 1, "samples": [{"n": 0, "y": "1"}, {"n": 2, "y": "1"}]}]});
        assert!(measurements_from_json::<Q>(&v, &ToleranceProfile::DEFAULT).is_err());
    }
}
