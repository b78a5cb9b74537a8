//! Serialized forms: type tables (CSV and JSON), certificates, verification
//! reports, infeasibility witnesses, registry dumps and extremal reports.

use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use turanlab_core::canon::canonical_form;
use turanlab_core::certify::{Certificate, ColumnCheck, InfeasibilityWitness, VerificationReport};
use turanlab_core::graph6;
use turanlab_core::registry::{GoodnessEntry, KCondition, Provenance, Registry};
use turanlab_core::tables::{TypeColumn, TypeTable};
use turanlab_core::{ExtremalReport, SmallGraph};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Core(#[from] turanlab_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error("bad rational {0:?}")]
    Rational(String),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// A JSON number holding an arbitrarily large integer exactly.
pub fn big_number(n: &BigUint) -> Value {
    Value::Number(serde_json::Number::from_str(&n.to_string()).expect("decimal digits form a JSON number"))
}

pub fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| FormatError::Rational(s.to_string()))
}

#[derive(Serialize, Deserialize)]
struct ColumnJson {
    #[serde(rename = "type")]
    ty: String,
    gadget_counts: Vec<u64>,
    h_count: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    h: String,
    k: Option<usize>,
    m: usize,
    gadgets: Vec<String>,
    columns: Vec<ColumnJson>,
}

/// Deterministic text form of a table; columns are identified by graph6.
pub fn render_table(t: &TypeTable, format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let j = TableJson {
                h: graph6::encode(&t.h),
                k: t.k,
                m: t.m,
                gadgets: t.gadgets.iter().map(graph6::encode).collect(),
                columns: t
                    .columns
                    .iter()
                    .map(|c| ColumnJson {
                        ty: graph6::encode(&c.ty),
                        gadget_counts: c.gadget_counts.clone(),
                        h_count: c.h_count,
                    })
                    .collect(),
            };
            serde_json::to_string_pretty(&j).expect("table serializes") + "\n"
        }
        TableFormat::Csv => {
            let mut out = String::new();
            let k = t.k.map_or_else(|| "unbounded".to_string(), |k| k.to_string());
            out.push_str(&format!("k,{k}\nm,{}\n", t.m));
            let header: Vec<String> = t.columns.iter().map(|c| graph6::encode(&c.ty)).collect();
            out.push_str(&format!("row,graph6{}\n", header.iter().map(|s| format!(",{s}")).collect::<String>()));
            let row = |label: &str, g: &SmallGraph, vals: Vec<u64>| {
                format!("{label},{}{}\n", graph6::encode(g), vals.iter().map(|v| format!(",{v}")).collect::<String>())
            };
            for (j, g) in t.gadgets.iter().enumerate() {
                out.push_str(&row("gadget", g, t.gadget_row(j)));
            }
            out.push_str(&row("h", &t.h, t.h_row()));
            out
        }
    }
}

/// Inverse of [`render_table`].
pub fn parse_table(text: &str, format: TableFormat) -> Result<TypeTable> {
    match format {
        TableFormat::Json => {
            let j: TableJson = serde_json::from_str(text)?;
            let columns = j
                .columns
                .into_iter()
                .map(|c| {
                    Ok(TypeColumn { ty: graph6::decode(&c.ty)?, gadget_counts: c.gadget_counts, h_count: c.h_count })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TypeTable {
                h: graph6::decode(&j.h)?,
                k: j.k,
                m: j.m,
                gadgets: j.gadgets.iter().map(|g| graph6::decode(g)).collect::<Result<_, _>>()?,
                columns,
            })
        }
        TableFormat::Csv => parse_table_csv(text),
    }
}

fn parse_table_csv(text: &str) -> Result<TypeTable> {
    let bad = |line: usize, reason: &str| FormatError::Csv { line, reason: reason.to_string() };
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.split(',').collect()))
        .collect();
    let field = |idx: usize, key: &str| -> Result<&str> {
        let (line, cells) = lines.get(idx).ok_or_else(|| bad(idx + 1, "missing line"))?;
        if cells.len() != 2 || cells[0] != key {
            return Err(bad(*line, &format!("expected `{key},<value>`")));
        }
        Ok(cells[1])
    };
    let k = match field(0, "k")? {
        "unbounded" => None,
        v => Some(v.parse().map_err(|_| bad(1, "bad k"))?),
    };
    let m: usize = field(1, "m")?.parse().map_err(|_| bad(2, "bad m"))?;
    let (hline, header) = lines.get(2).ok_or_else(|| bad(3, "missing header"))?;
    if header.len() < 2 || header[0] != "row" || header[1] != "graph6" {
        return Err(bad(*hline, "expected `row,graph6,...` header"));
    }
    let types = header[2..].iter().map(|s| graph6::decode(s)).collect::<Result<Vec<_>, _>>()?;
    let mut gadgets = Vec::new();
    let mut gadget_rows = Vec::new();
    let mut h = None;
    for (line, cells) in &lines[3..] {
        if cells.len() != types.len() + 2 {
            return Err(bad(*line, "wrong number of cells"));
        }
        let g = graph6::decode(cells[1])?;
        let vals = cells[2..]
            .iter()
            .map(|v| v.parse::<u64>().map_err(|_| bad(*line, "bad count")))
            .collect::<Result<Vec<_>>>()?;
        match cells[0] {
            "gadget" => {
                gadgets.push(g);
                gadget_rows.push(vals);
            }
            "h" => h = Some((g, vals)),
            _ => return Err(bad(*line, "row label must be `gadget` or `h`")),
        }
    }
    let (h, h_row) = h.ok_or_else(|| bad(lines.len(), "missing `h` row"))?;
    let columns = types
        .into_iter()
        .enumerate()
        .map(|(i, ty)| TypeColumn { ty, gadget_counts: gadget_rows.iter().map(|r| r[i]).collect(), h_count: h_row[i] })
        .collect();
    Ok(TypeTable { h, k, m, gadgets, columns })
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    h: String,
    k: usize,
    gadgets: Vec<String>,
    coefficients: Vec<String>,
    #[serde(default)]
    provenance: Vec<String>,
}

fn provenance_text(e: &GoodnessEntry) -> String {
    e.provenance_chain().iter().map(|p| p.tag()).collect::<Vec<_>>().join("<-")
}

pub fn certificate_to_json(c: &Certificate) -> String {
    let j = CertificateJson {
        h: graph6::encode(&c.h),
        k: c.k,
        gadgets: c.gadgets.iter().map(graph6::encode).collect(),
        coefficients: c.coefficients.iter().map(rational_text).collect(),
        provenance: c.provenance.iter().map(provenance_text).collect(),
    };
    serde_json::to_string_pretty(&j).expect("certificate serializes") + "\n"
}

/// Read a certificate. Provenance in the file is informational only; it is
/// re-derived from `registry`, so an unregistered gadget is an error here.
pub fn certificate_from_json(text: &str, registry: &Registry) -> Result<Certificate> {
    let j: CertificateJson = serde_json::from_str(text)?;
    let h = graph6::decode(&j.h)?;
    let gadgets = j.gadgets.iter().map(|g| graph6::decode(g)).collect::<Result<Vec<_>, _>>()?;
    let coefficients = j.coefficients.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
    Ok(Certificate::new(h, j.k, &gadgets, coefficients, registry)?)
}

fn check_json(c: &ColumnCheck) -> Value {
    json!({
        "column": graph6::encode(&c.column),
        "h_count": big_number(&c.h_count),
        "combination": rational_text(&c.combination),
        "margin": rational_text(&c.margin),
    })
}

pub fn report_to_json(r: &VerificationReport, k: usize) -> String {
    let v = json!({
        "verdict": if r.passed { "pass" } else { "fail" },
        "failing_column": r.failing_column.as_ref().map(graph6::encode),
        "conclusion": r.conclusion(k),
        "provenance": r.provenance.iter().map(provenance_text).collect::<Vec<_>>(),
        "inequality_checks": r.inequality_checks.iter().map(check_json).collect::<Vec<_>>(),
        "equality_checks": r.equality_checks.iter().map(check_json).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
}

pub fn witness_to_json(w: &InfeasibilityWitness) -> String {
    let v = json!({
        "feasible": false,
        "h": graph6::encode(&w.h),
        "k": w.k,
        "gadgets": w.gadgets.iter().map(graph6::encode).collect::<Vec<_>>(),
        "separating_column": w.separating_column().map(graph6::encode),
        "witness_verified": w.verify(),
        "rows": w.rows.iter().map(|r| json!({
            "column": graph6::encode(&r.column),
            "equality": r.equality,
            "multiplier": rational_text(&r.multiplier),
        })).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&v).expect("witness serializes") + "\n"
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    canonical: String,
    k_condition: String,
    provenance: String,
    note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Box<EntryJson>>,
}

fn entry_json(e: &GoodnessEntry) -> EntryJson {
    EntryJson {
        canonical: e.canonical.as_str().to_string(),
        k_condition: e.k_condition.to_string(),
        provenance: e.provenance.tag().to_string(),
        note: e.note.clone(),
        basis: e.basis.as_ref().map(|b| Box::new(entry_json(b))),
    }
}

fn entry_from_json(j: EntryJson) -> Result<GoodnessEntry> {
    Ok(GoodnessEntry {
        canonical: canonical_form(&graph6::decode(&j.canonical)?)?,
        k_condition: KCondition::from_str(&j.k_condition)?,
        provenance: Provenance::from_str(&j.provenance)?,
        note: j.note,
        basis: j.basis.map(|b| entry_from_json(*b).map(Box::new)).transpose()?,
    })
}

pub fn entry_to_json_line(e: &GoodnessEntry) -> String {
    serde_json::to_string(&entry_json(e)).expect("entry serializes")
}

/// One JSON object per line, in registry order.
pub fn registry_to_json_lines(r: &Registry) -> String {
    r.entries().map(|e| entry_to_json_line(e) + "\n").collect()
}

pub fn registry_from_json_lines(text: &str) -> Result<Registry> {
    let mut r = Registry::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        r.insert_entry(entry_from_json(serde_json::from_str(line)?)?);
    }
    Ok(r)
}

pub fn extremal_to_json(r: &ExtremalReport) -> String {
    let v = json!({
        "n": r.n,
        "k": r.k,
        "h": graph6::encode(&r.h),
        "maximal_only": r.maximal_only,
        "classes_searched": r.classes_searched,
        "maximum": big_number(&r.maximum),
        "extremal_graphs": r.extremal_graphs.iter().map(graph6::encode).collect::<Vec<_>>(),
        "turan_value": big_number(&r.turan_value),
        "turan_is_max": r.turan_is_max,
        "turan_is_unique_max": r.turan_is_unique_max,
        "note": r.note(),
    });
    serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
}
