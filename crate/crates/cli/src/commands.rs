use std::fmt::Write;
use std::path::Path;

use anyhow::Result;
use dynsamp::completeness::{
    has_eigenvalue_one, placement_default, placement_search, test_auto, ProblemDef,
};
use dynsamp::field::{render_vec, unit, vadd, vscale, Scalar, ToleranceProfile};
use dynsamp::io::{
    matrix_to_json, measurements_from_json, measurements_to_json, plan_from_json, plan_to_json,
    vector_to_json, ProblemData, ProblemFile,
};
use dynsamp::recovery::{build_plan, recover, simulate, RecoveryPlan};
use dynsamp::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{bad_input, read_json, typed, vector_arg, write_json, PoolSpec};
use crate::report::{self, label};

/// Outcome of a command that ran to the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    Incomplete,
}

/// Roots tried when factoring polynomials for display: the supplied
/// eigenvalues plus 0 and 1, which cover the nilpotent and unipotent cases.
fn display_roots<S: Scalar>(data: &ProblemData<S>) -> Vec<S> {
    let mut roots: Vec<S> = data
        .eigenvalues
        .iter()
        .flatten()
        .map(|(l, _)| l.clone())
        .collect();
    for r in [S::zero(), S::one()] {
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots
}

fn header<S: Scalar>(out: &mut String, problem: &ProblemDef<S>) {
    writeln!(out, "field: {}", S::KIND).unwrap();
    writeln!(
        out,
        "dimension: d = {}, dim W = {}, sensors L = {}",
        problem.d(),
        problem.k(),
        problem.l()
    )
    .unwrap();
    let w: Vec<String> = problem.w().vectors().iter().map(|v| label(v)).collect();
    writeln!(out, "source basis: {}", w.join(", ")).unwrap();
    writeln!(
        out,
        "eigenvalue 1: {}",
        if has_eigenvalue_one(problem.a()) {
            "present"
        } else {
            "absent"
        }
    )
    .unwrap();
}

fn sensor_line<S: Scalar>(out: &mut String, sensors: &[Vec<S>]) {
    if sensors.is_empty() {
        writeln!(out, "sensor order: none").unwrap();
        return;
    }
    let s: Vec<String> = sensors
        .iter()
        .enumerate()
        .map(|(i, b)| format!("b{} = {}", i + 1, label(b)))
        .collect();
    writeln!(out, "sensor order: {}", s.join(", ")).unwrap();
}

pub fn check<S: Scalar>(path: &Path, file: &ProblemFile, out: Option<&Path>) -> Result<Status> {
    let data = typed::<S>(file, path)?;
    let problem = data.problem()?;
    let mut r = String::new();
    header(&mut r, &problem);
    sensor_line(&mut r, problem.sensors());
    let verdict = test_auto(&problem)?;
    r.push_str(&report::verdict(&verdict));
    if problem.l() > 0 {
        let chain = problem.chain()?;
        writeln!(r, "\nconductor chain:").unwrap();
        r.push_str(&report::indent(
            &report::chain_table(&chain, &display_roots(&data)),
            2,
        ));
    }
    print!("{r}");
    if let Some(path) = out {
        write_json(path, &serde_json::to_value(verdict.record())?)?;
    }
    Ok(if verdict.complete {
        Status::Complete
    } else {
        Status::Incomplete
    })
}

pub fn place<S: Scalar>(
    path: &Path,
    file: &ProblemFile,
    pool: &PoolSpec,
    max_l: Option<usize>,
    exec: Execution,
    out: Option<&Path>,
) -> Result<Status> {
    let data = typed::<S>(file, path)?;
    let base = ProblemDef::new(data.a.clone(), &data.w, vec![])?;
    let candidates: Vec<Vec<S>> = pool.load(base.d(), &data.tolerance)?;
    let max_l = max_l.unwrap_or(base.k() + 1);
    let mut r = String::new();
    header(&mut r, &base);
    let pool_name = match pool {
        PoolSpec::Standard => "standard basis".to_string(),
        PoolSpec::File(p) => p.display().to_string(),
    };
    writeln!(r, "pool: {pool_name} ({} vectors)", candidates.len()).unwrap();

    let default = if has_eigenvalue_one(base.a()) {
        writeln!(r, "default placement: unavailable, 1 is an eigenvalue of A").unwrap();
        None
    } else {
        let sensors = placement_default(base.a(), &data.w)?;
        let verdict = test_auto(&base.with_sensors(sensors.clone())?)?;
        writeln!(r, "default placement b_k = (I - A) ω_k:").unwrap();
        for (k, b) in sensors.iter().enumerate() {
            writeln!(r, "  b{} = {}", k + 1, render_vec(b)).unwrap();
        }
        writeln!(
            r,
            "  verdict: {} ({})",
            if verdict.complete {
                "COMPLETE"
            } else {
                "INCOMPLETE"
            },
            verdict.method
        )
        .unwrap();
        Some(sensors)
    };

    let found = placement_search(&base, &candidates, max_l, exec)?;
    writeln!(
        r,
        "search: max L = {max_l}, {} subsets evaluated",
        found.evaluated
    )
    .unwrap();
    let name = |i: usize| match pool {
        PoolSpec::Standard => label(&candidates[i]),
        PoolSpec::File(_) => format!("p{}", i + 1),
    };
    match found.size() {
        None => writeln!(r, "no complete set of size ≤ {max_l}").unwrap(),
        Some(size) => {
            writeln!(r, "minimal complete sets (size {size}):").unwrap();
            for s in &found.subsets {
                let names: Vec<String> = s.iter().map(|&i| name(i)).collect();
                writeln!(r, "  {{{}}}", names.join(", ")).unwrap();
            }
            if matches!(pool, PoolSpec::File(_)) {
                writeln!(r, "pool members:").unwrap();
                let used: std::collections::BTreeSet<usize> =
                    found.subsets.iter().flatten().copied().collect();
                for i in used {
                    writeln!(r, "  p{} = {}", i + 1, render_vec(&candidates[i])).unwrap();
                }
            }
        }
    }
    print!("{r}");
    if let Some(path) = out {
        let v = json!({
            "mode": S::KIND,
            "max_l": max_l,
            "evaluated": found.evaluated,
            "size": found.size(),
            "subsets": found.subsets.iter().map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "default": default.map(|d| d.iter().map(|b| vector_to_json(b)).collect::<Vec<_>>()),
        });
        write_json(path, &v)?;
    }
    Ok(if found.subsets.is_empty() {
        Status::Incomplete
    } else {
        Status::Complete
    })
}

/// For every standard basis source `ω_1 = e_k`, the minimal complete sets of
/// standard basis sensors, grouped as in a `ω_1 | b_1 | b_2` table.
pub fn tables<S: Scalar>(
    path: &Path,
    file: &ProblemFile,
    max_l: usize,
    exec: Execution,
) -> Result<Status> {
    let data = typed::<S>(file, path)?;
    let d = data.a.rows();
    let pool: Vec<Vec<S>> = (0..d).map(|k| unit(d, k)).collect();
    let mut rows = Vec::new();
    let mut widest = 1;
    for k in 0..d {
        let base = ProblemDef::new(data.a.clone(), &[unit(d, k)], vec![])?;
        let found = placement_search(&base, &pool, max_l, exec)?;
        let omega = format!("e{}", k + 1);
        let Some(size) = found.size() else {
            rows.push(vec![omega, format!("none with L ≤ {max_l}")]);
            continue;
        };
        widest = widest.max(size);
        if size == 1 {
            let opts: Vec<String> = found
                .subsets
                .iter()
                .map(|s| format!("e{}", s[0] + 1))
                .collect();
            rows.push(vec![omega, opts.join(" or ")]);
            continue;
        }
        // Group by the lower members; the top member varies within a group.
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for s in &found.subsets {
            let (top, rest) = s.split_last().expect("nonempty subset");
            match groups.iter_mut().find(|(r, _)| r.as_slice() == rest) {
                Some((_, tops)) => tops.push(*top),
                None => groups.push((rest.to_vec(), vec![*top])),
            }
        }
        for (rest, mut tops) in groups {
            tops.sort_unstable_by(|a, b| b.cmp(a));
            let mut row = vec![omega.clone()];
            row.push(
                tops.iter()
                    .map(|i| format!("e{}", i + 1))
                    .collect::<Vec<_>>()
                    .join(" or "),
            );
            row.extend(rest.iter().rev().map(|i| format!("e{}", i + 1)));
            rows.push(row);
        }
    }
    let headers: Vec<String> = std::iter::once("ω_1".to_string())
        .chain((1..=widest).map(|i| format!("b_{i}")))
        .collect();
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    print!("{}", report::table(&headers, &rows));
    Ok(Status::Complete)
}

#[allow(clippy::too_many_arguments)]
pub fn simulate_cmd<S: Scalar>(
    path: &Path,
    file: &ProblemFile,
    coeffs: &str,
    x0: Option<&str>,
    seed: u64,
    samples: Option<usize>,
    out: Option<&Path>,
) -> Result<Status> {
    let data = typed::<S>(file, path)?;
    if data.sensors.is_empty() {
        return Err(bad_input(format!(
            "{}: simulation needs sensors",
            path.display()
        )));
    }
    let d = data.a.rows();
    let tol = data.tolerance;
    let c: Vec<S> = vector_arg(coeffs, data.w.len(), "--coeffs", &tol)?;
    let omega = combine(&data.w, &c, d);
    let x0: Vec<S> = match x0 {
        Some(text) => vector_arg(text, d, "--x0", &tol)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..d)
                .map(|_| S::from_i64(rng.random_range(-5..=5)))
                .collect()
        }
    };
    let samples = samples.unwrap_or(d + 1);
    let (_, m) = simulate(&data.a, &x0, &omega, &data.sensors, samples)?;
    let v = measurements_to_json(&m);
    match out {
        Some(p) => {
            write_json(p, &v)?;
            println!("field: {}", S::KIND);
            println!(
                "samples: n = 0..{} for {} sensors",
                samples.saturating_sub(1),
                m.sensors()
            );
            println!("initial state: {}", render_vec(&x0));
            println!("wrote {}", p.display());
        }
        None => println!("{}", serde_json::to_string_pretty(&v)?),
    }
    Ok(Status::Complete)
}

fn combine<S: Scalar>(w: &[Vec<S>], c: &[S], d: usize) -> Vec<S> {
    let mut omega = vec![S::zero(); d];
    for (v, s) in w.iter().zip(c) {
        omega = vadd(&omega, &vscale(v, s));
    }
    omega
}

pub fn plan_report<S: Scalar>(plan: &RecoveryPlan<S>) -> String {
    let mut r = String::new();
    let l = plan.sensors();
    writeln!(
        r,
        "plan: T = {} samples per sensor (n = 0..{}), {} equations, dim W = {}",
        plan.horizon,
        plan.horizon - 1,
        plan.alpha.len(),
        plan.w_basis.len()
    )
    .unwrap();
    writeln!(r, "frame condition number: {:.6e}", plan.condition_number()).unwrap();
    writeln!(r, "characteristic vectors:").unwrap();
    for (j, (g, f)) in plan.characteristic.iter().zip(&plan.frame).enumerate() {
        writeln!(
            r,
            "  g{} = {}  P_W g{} = {}",
            j + 1,
            label(g),
            j + 1,
            label(f)
        )
        .unwrap();
    }
    let cols: Vec<String> = (1..=l).map(|i| format!("b{i}")).collect();
    for (j, table) in plan.alpha.iter().enumerate() {
        writeln!(r, "alpha for z{}:", j + 1).unwrap();
        r.push_str(&report::indent(&report::matrix(table, "n", &cols), 2));
    }
    r
}

pub fn plan<S: Scalar>(path: &Path, file: &ProblemFile, out: Option<&Path>) -> Result<Status> {
    let data = typed::<S>(file, path)?;
    let problem = data.problem()?;
    let plan = build_plan(&problem)?;
    let mut r = String::new();
    header(&mut r, &problem);
    sensor_line(&mut r, problem.sensors());
    r.push_str(&plan_report(&plan));
    print!("{r}");
    if let Some(p) = out {
        write_json(p, &plan_to_json(&plan))?;
    }
    Ok(Status::Complete)
}

pub fn recover_cmd<S: Scalar>(
    plan_path: &Path,
    plan_json: &Value,
    measurements_path: &Path,
    out: Option<&Path>,
) -> Result<Status> {
    let tol = ToleranceProfile::DEFAULT;
    let plan: RecoveryPlan<S> = plan_from_json(plan_json, &tol)
        .map_err(|e| bad_input(format!("{}: {e}", plan_path.display())))?;
    let m = measurements_from_json(&read_json(measurements_path)?, &tol)
        .map_err(|e| bad_input(format!("{}: {e}", measurements_path.display())))?;
    let rec = recover(&plan, &m)?;
    println!("field: {}", S::KIND);
    println!(
        "samples used: n = 0..{} from {} sensors",
        plan.horizon - 1,
        plan.sensors()
    );
    for (k, c) in rec.coeffs.iter().enumerate() {
        println!("c_{} = {}", k + 1, c.render());
    }
    println!("omega = {}", render_vec(&rec.omega));
    if rec.omega.iter().all(|x| x.is_zero()) {
        println!("the recovered source is zero");
    }
    if let Some(p) = out {
        let v = json!({
            "mode": S::KIND,
            "coeffs": vector_to_json(&rec.coeffs),
            "omega": vector_to_json(&rec.omega),
        });
        write_json(p, &v)?;
    }
    Ok(Status::Complete)
}

/// Frame and dual matrices in JSON, for the grid demo's `--out`.
pub fn plan_summary<S: Scalar>(plan: &RecoveryPlan<S>) -> Value {
    json!({
        "horizon": plan.horizon,
        "frame_matrix": matrix_to_json(&plan.frame_matrix),
        "dual": matrix_to_json(&plan.dual),
    })
}
