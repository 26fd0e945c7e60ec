use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Result};
use dynsamp::completeness::{placement_greedy, single_source_construct, test_auto, ProblemDef};
use dynsamp::field::{unit, vadd, vscale, Scalar, Zero, Q};
use dynsamp::instances::grid_operator;
use dynsamp::recovery::{build_plan, recover, simulate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;

use crate::commands::{plan_summary, Status};
use crate::input::{bad_input, read_text, scalar_arg, write_json};
use crate::report::label;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Scenario {
    rows: usize,
    cols: usize,
    #[serde(default = "nilpotent")]
    wind: String,
    sources: Vec<Source>,
    #[serde(default)]
    sensors: Option<Vec<usize>>,
    #[serde(default)]
    seed: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Source {
    cell: usize,
    intensity: serde_json::Value,
}

fn nilpotent() -> String {
    "nilpotent".into()
}

/// Cells are numbered from 1, row by row.
fn cell_index(cell: usize, d: usize, path: &Path) -> Result<usize> {
    if cell == 0 || cell > d {
        return Err(bad_input(format!(
            "{}: cell {cell} is outside 1..={d}",
            path.display()
        )));
    }
    Ok(cell - 1)
}

fn render(rows: usize, cols: usize, sources: &[usize], sensors: &[usize]) -> String {
    let mut out = String::new();
    for r in 0..rows {
        let line: String = (0..cols)
            .map(|c| {
                let i = r * cols + c;
                match (sources.contains(&i), sensors.contains(&i)) {
                    (true, true) => 'X',
                    (true, false) => 'S',
                    (false, true) => 'B',
                    (false, false) => '.',
                }
            })
            .flat_map(|ch| [ch, ' '])
            .collect();
        writeln!(out, "  {}", line.trim_end()).unwrap();
    }
    out
}

pub fn demo(path: &Path, out: Option<&Path>) -> Result<Status> {
    let scenario: Scenario = serde_json::from_str(&read_text(path)?)
        .map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
    if scenario.wind != "nilpotent" {
        return Err(bad_input(format!(
            "{}: unsupported wind `{}`, only `nilpotent` is available",
            path.display(),
            scenario.wind
        )));
    }
    if scenario.rows == 0 || scenario.cols == 0 {
        return Err(bad_input(format!(
            "{}: grid must have at least one cell",
            path.display()
        )));
    }
    if scenario.sources.is_empty() {
        return Err(bad_input(format!(
            "{}: at least one source is required",
            path.display()
        )));
    }
    let d = scenario.rows * scenario.cols;
    let a: dynsamp::field::Mat<Q> = grid_operator(scenario.rows, scenario.cols);
    let tol = Default::default();

    let mut cells = Vec::new();
    let mut intensity = Vec::new();
    for s in &scenario.sources {
        let i = cell_index(s.cell, d, path)?;
        if cells.contains(&i) {
            return Err(bad_input(format!(
                "{}: cell {} listed twice",
                path.display(),
                s.cell
            )));
        }
        cells.push(i);
        let text = match &s.intensity {
            serde_json::Value::String(t) => t.clone(),
            v => v.to_string(),
        };
        intensity.push(scalar_arg::<Q>(&text, &tol)?);
    }
    let w: Vec<Vec<Q>> = cells.iter().map(|&i| unit(d, i)).collect();
    let base = ProblemDef::new(a.clone(), &w, vec![])?;

    let (sensors, how): (Vec<Vec<Q>>, &str) = match &scenario.sensors {
        Some(list) => {
            let s = list
                .iter()
                .map(|&c| cell_index(c, d, path).map(|i| unit(d, i)))
                .collect::<Result<Vec<_>>>()?;
            (s, "given")
        }
        None if w.len() == 1 => (
            vec![single_source_construct(&a, &w[0])?],
            "single-source construction",
        ),
        None => {
            let pool: Vec<Vec<Q>> = (0..d).map(|i| unit(d, i)).collect();
            match placement_greedy(&base, &pool)? {
                Some(chosen) => (
                    chosen.into_iter().map(|i| pool[i].clone()).collect(),
                    "greedy over cells",
                ),
                None => bail!(dynsamp::Error::NotComplete),
            }
        }
    };
    let problem = base.with_sensors(sensors.clone())?;
    let verdict = test_auto(&problem)?;
    let sensor_cells: Vec<usize> = sensors
        .iter()
        .filter_map(|b| {
            let nonzero: Vec<usize> = (0..d).filter(|&i| !b[i].is_zero()).collect();
            (nonzero.len() == 1).then(|| nonzero[0])
        })
        .collect();

    let mut r = String::new();
    writeln!(
        r,
        "grid: {} x {} cells, wind: {}",
        scenario.rows, scenario.cols, scenario.wind
    )
    .unwrap();
    let src: Vec<String> = cells.iter().map(|i| (i + 1).to_string()).collect();
    writeln!(r, "sources at cells: {}", src.join(", ")).unwrap();
    let names: Vec<String> = sensors
        .iter()
        .map(|b| match label(b).strip_prefix('e') {
            Some(n) if n.parse::<usize>().is_ok() => format!("cell {n}"),
            _ => label(b),
        })
        .collect();
    writeln!(r, "sensors ({how}): {}", names.join(", ")).unwrap();
    writeln!(
        r,
        "verdict: {} ({})",
        if verdict.complete {
            "COMPLETE"
        } else {
            "INCOMPLETE"
        },
        verdict.method
    )
    .unwrap();
    r.push_str(&render(scenario.rows, scenario.cols, &cells, &sensor_cells));
    if !verdict.complete {
        print!("{r}");
        return Ok(Status::Incomplete);
    }

    let plan = build_plan(&problem)?;
    let mut omega = vec![Q::zero(); d];
    for (v, c) in w.iter().zip(&intensity) {
        omega = vadd(&omega, &vscale(v, c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let x0: Vec<Q> = (0..d)
        .map(|_| Q::from_i64(rng.random_range(-5..=5)))
        .collect();
    let (_, m) = simulate(&a, &x0, &omega, &sensors, plan.horizon)?;
    let rec = recover(&plan, &m)?;
    writeln!(r, "samples per sensor: T = {}", plan.horizon).unwrap();
    writeln!(r, "recovered intensities:").unwrap();
    for ((cell, c), truth) in cells.iter().zip(&rec.coeffs).zip(&intensity) {
        writeln!(
            r,
            "  cell {}: {} (true {})",
            cell + 1,
            c.render(),
            truth.render()
        )
        .unwrap();
    }
    let exact = rec.coeffs == intensity;
    writeln!(r, "exact recovery: {}", if exact { "yes" } else { "no" }).unwrap();
    print!("{r}");
    if let Some(p) = out {
        let v = json!({
            "mode": Q::KIND,
            "sensors": sensor_cells.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "plan": plan_summary(&plan),
            "recovered": rec.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "exact": exact,
        });
        write_json(p, &v)?;
    }
    if !exact {
        bail!("recovered intensities differ from the scenario");
    }
    Ok(Status::Complete)
}
