use std::fmt::Write;

use dynsamp::completeness::Verdict;
use dynsamp::field::{render_vec, Mat, Scalar};
use dynsamp::krylov::KrylovChain;
use dynsamp::poly::Poly;

/// `e3` for standard basis vectors, the coordinate tuple otherwise.
pub fn label<S: Scalar>(v: &[S]) -> String {
    let mut hit = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if hit.is_some() || !x.is_one() {
            return render_vec(v);
        }
        hit = Some(i);
    }
    match hit {
        Some(i) => format!("e{}", i + 1),
        None => render_vec(v),
    }
}

/// Left-aligned columns separated by ` | `, trailing spaces trimmed.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str(" | ");
            }
            s.push_str(cell);
            if i + 1 < cols {
                s.extend(std::iter::repeat_n(' ', width[i] - cell.chars().count()));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = String::new();
    writeln!(out, "{}", line(headers.to_vec())).unwrap();
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", rule.join("-+-")).unwrap();
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
    }
    out
}

/// Factored form over the candidate roots when they split the polynomial.
pub fn poly<S: Scalar>(p: &Poly<S>, roots: &[S]) -> String {
    p.render_factored(roots)
}

pub fn chain_table<S: Scalar>(chain: &KrylovChain<S>, roots: &[S]) -> String {
    let rows: Vec<Vec<String>> = chain
        .links
        .iter()
        .enumerate()
        .map(|(j, link)| {
            let reps = if link.reps.is_empty() {
                "-".to_string()
            } else {
                link.reps
                    .iter()
                    .enumerate()
                    .map(|(i, q)| format!("q^{} = {}", i + 1, poly(q, roots)))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            vec![
                (j + 1).to_string(),
                label(&chain.sensors[j]),
                poly(&link.conductor, roots),
                link.degree().to_string(),
                reps,
                label(&link.characteristic),
            ]
        })
        .collect();
    table(&["j", "b_j", "κ_j", "s_j", "q_j^i", "g_j"], &rows)
}

pub fn verdict<S: Scalar>(v: &Verdict<S>) -> String {
    let mut out = String::new();
    writeln!(out, "method: {}", v.method).unwrap();
    writeln!(
        out,
        "verdict: {}",
        if v.complete { "COMPLETE" } else { "INCOMPLETE" }
    )
    .unwrap();
    writeln!(
        out,
        "rank: {} of {} ({})",
        v.rank, v.required, v.explanation
    )
    .unwrap();
    if !v.witness.is_empty() {
        writeln!(out, "witness:").unwrap();
        for (j, w) in v.witness.iter().enumerate() {
            writeln!(out, "  w{} = {}", j + 1, render_vec(w)).unwrap();
        }
    }
    out
}

pub fn matrix<S: Scalar>(m: &Mat<S>, row_label: &str, col_labels: &[String]) -> String {
    let mut headers = vec![row_label];
    headers.extend(col_labels.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| {
            let mut row = vec![i.to_string()];
            row.extend(m.row(i).iter().map(Scalar::render));
            row
        })
        .collect();
    table(&headers, &rows)
}

pub fn indent(text: &str, by: usize) -> String {
    let pad = " ".repeat(by);
    text.lines()
        .map(|l| {
            if l.is_empty() {
                String::new()
            } else {
                format!("{pad}{l}")
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}
