//! Output documents and their json, csv and latex renderings.

use kmk_core::{CheckReport, Poly, RootVector, Weight};
use serde::Serialize;

use crate::job::Format;

pub const SCHEMA: &str = "kmk/1";

#[derive(Serialize)]
pub struct Document {
    pub schema: &'static str,
    pub command: String,
    pub algebra: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Serialize)]
pub struct Row {
    pub mu: Weight,
    pub offset: RootVector,
    pub value: Poly,
}

#[derive(Serialize)]
pub struct StringRow {
    pub mu: Weight,
    /// Coefficient of `q^k` at index `k`.
    pub coefficients: Vec<Poly>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Body {
    Table { lambda: Weight, depth: usize, rows: Vec<Row> },
    Strings { lambda: Weight, order: usize, strings: Vec<StringRow> },
    Report(CheckReport),
}

fn labels(w: &Weight) -> String {
    w.labels.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn coeffs(p: &Poly) -> String {
    p.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `a Lambda_0 + b Lambda_1 - k delta` in the usual notation.
fn latex_weight(w: &Weight) -> String {
    let mut out = String::new();
    for (i, &c) in w.labels.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = format!("\\Lambda_{{{i}}}");
        push_term(&mut out, c, &term);
    }
    if w.delta != 0 {
        push_term(&mut out, w.delta, "\\delta");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn push_term(out: &mut String, c: i64, term: &str) {
    if out.is_empty() {
        if c < 0 {
            out.push('-');
        }
    } else {
        out.push_str(if c < 0 { " - " } else { " + " });
    }
    if c.abs() != 1 {
        out.push_str(&c.abs().to_string());
    }
    out.push_str(term);
}

fn table(doc: &Document, latex: bool) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let poly = |p: &Poly| if latex { format!("${}$", p.to_latex()) } else { coeffs(p) };
    let weight_cells = |w: &Weight| {
        if latex {
            vec![format!("${}$", latex_weight(w))]
        } else {
            vec![labels(w), w.delta.to_string()]
        }
    };
    match &doc.body {
        Body::Table { rows, .. } => {
            let header = if latex { vec!["$\\mu$", "value"] } else { vec!["mu", "mu_delta", "value"] };
            let rows = rows
                .iter()
                .map(|r| {
                    let mut cells = weight_cells(&r.mu);
                    cells.push(poly(&r.value));
                    cells
                })
                .collect();
            (header, rows)
        }
        Body::Strings { strings, .. } => {
            let header = if latex { vec!["$\\mu$", "$k$", "coefficient"] } else { vec!["mu", "mu_delta", "k", "coefficient"] };
            let mut out = Vec::new();
            for s in strings {
                for (k, c) in s.coefficients.iter().enumerate() {
                    let mut cells = weight_cells(&s.mu);
                    cells.push(k.to_string());
                    cells.push(poly(c));
                    out.push(cells);
                }
            }
            (header, out)
        }
        Body::Report(r) => {
            let header = vec!["label", "q_order", "offset", "lhs", "rhs", "equal"];
            let rows = r
                .comparisons
                .iter()
                .map(|c| {
                    vec![
                        c.label.clone(),
                        c.q_order.map(|k| k.to_string()).unwrap_or_default(),
                        c.offset.as_ref().map(|o| o.to_string()).unwrap_or_default(),
                        poly(&c.lhs),
                        poly(&c.rhs),
                        (c.lhs == c.rhs).to_string(),
                    ]
                })
                .collect();
            (header, rows)
        }
    }
}

fn escape_text(cell: String) -> String {
    if cell.starts_with('$') {
        return cell;
    }
    cell.replace('\\', "\\textbackslash{}")
        .replace('_', "\\_")
        .replace('~', "\\textasciitilde{}")
        .replace('^', "\\textasciicircum{}")
}

pub fn render(doc: &Document, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).map(|s| s + "\n").map_err(|e| e.to_string()),
        Format::Csv => {
            let (header, rows) = table(doc, false);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).map_err(|e| e.to_string())?;
            for r in rows {
                w.write_record(&r).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
        Format::Latex => {
            let (header, rows) = table(doc, true);
            let mut out = format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(header.len()));
            let header: Vec<String> = header.into_iter().map(|h| escape_text(h.to_string())).collect();
            out.push_str(&header.join(" & "));
            out.push_str(" \\\\\n\\hline\n");
            for r in rows {
                let cells: Vec<String> = r.into_iter().map(escape_text).collect();
                out.push_str(&cells.join(" & "));
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{tabular}\n");
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_weights() {
        assert_eq!(latex_weight(&Weight::new(vec![2, 0], -1)), "2\\Lambda_{0} - \\delta");
        assert_eq!(latex_weight(&Weight::new(vec![0, -1], 0)), "-\\Lambda_{1}");
        assert_eq!(latex_weight(&Weight::zero(3)), "0");
    }
}
