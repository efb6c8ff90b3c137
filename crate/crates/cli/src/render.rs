//! Rendering of reports as aligned text tables, JSON, and CSV.
//!
//! The JSON schema for `analyze` is fixed:
//!
//! ```json
//! {
//!   "map": {"r": "...", "s": "..."},
//!   "levels": [{"n", "a", "b", "d", "nielsen", "an"}, ...],
//!   "summary": {"On", "In", "nbpn", "Mn", "n_toral", "flags": {...}}
//! }
//! ```
//!
//! Every integer is a decimal string (no precision loss at any size), a
//! missing value is `null`, and each flag is a tri-state object
//! `{"status": "true" | "false" | "not_evaluated"}` carrying a `witness`
//! or `reason` where applicable. Output is deterministic byte for byte:
//! field order is fixed by the struct declarations and every collection
//! is explicitly ordered.

use serde::Serialize;

use crate::report::{
    Cell, Flag, HperReport, PeriodicReport, SummaryTable, ToralFlag, VerifyReport,
};

#[derive(Serialize)]
struct JsonMap {
    r: String,
    s: String,
}

#[derive(Serialize)]
struct JsonLevel {
    n: String,
    a: String,
    b: String,
    d: String,
    nielsen: String,
    an: String,
}

#[derive(Serialize)]
struct JsonToralWitness {
    level: String,
    residue: String,
    depth: String,
    length: String,
}

#[derive(Serialize)]
struct JsonFlag {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl JsonFlag {
    fn from_flag(flag: &Flag) -> Self {
        match flag {
            Flag::True => JsonFlag {
                status: "true",
                witness: None,
                reason: None,
            },
            Flag::False { witness } => JsonFlag {
                status: "false",
                witness: Some(serde_json::Value::String(witness.clone())),
                reason: None,
            },
            Flag::NotEvaluated { reason, .. } => JsonFlag {
                status: "not_evaluated",
                witness: None,
                reason: Some(reason.clone()),
            },
        }
    }

    fn from_toral(flag: &ToralFlag) -> Self {
        match flag {
            ToralFlag::True => JsonFlag {
                status: "true",
                witness: None,
                reason: None,
            },
            ToralFlag::False(w) => {
                let witness = JsonToralWitness {
                    level: w.level.to_string(),
                    residue: w.residue.to_string(),
                    depth: w.depth.to_string(),
                    length: w.length.to_string(),
                };
                JsonFlag {
                    status: "false",
                    witness: Some(serde_json::to_value(witness).expect("plain strings")),
                    reason: None,
                }
            }
            ToralFlag::NotEvaluated { reason, .. } => JsonFlag {
                status: "not_evaluated",
                witness: None,
                reason: Some(reason.clone()),
            },
        }
    }
}

#[derive(Serialize)]
struct JsonFlags {
    formulas_agree: JsonFlag,
    #[serde(rename = "an_equals_In")]
    an_equals_in: JsonFlag,
    #[serde(rename = "an_equals_nOn")]
    an_equals_non: JsonFlag,
    #[serde(rename = "nbpn_le_Mn")]
    nbpn_le_mn: JsonFlag,
    geometric_equals_algebraic: JsonFlag,
}

#[derive(Serialize)]
struct JsonSummary {
    #[serde(rename = "On")]
    on: Option<String>,
    #[serde(rename = "In")]
    irreducible: Option<String>,
    nbpn: Option<String>,
    #[serde(rename = "Mn")]
    mn: Option<String>,
    n_toral: JsonFlag,
    flags: JsonFlags,
}

#[derive(Serialize)]
struct JsonReport {
    map: JsonMap,
    levels: Vec<JsonLevel>,
    summary: JsonSummary,
}

/// `analyze` as canonical JSON.
pub fn periodic_report_json(report: &PeriodicReport) -> String {
    let doc = JsonReport {
        map: JsonMap {
            r: report.r.to_string(),
            s: report.s.to_string(),
        },
        levels: report
            .rows
            .iter()
            .map(|row| JsonLevel {
                n: row.k.to_string(),
                a: row.a.to_string(),
                b: row.b.to_string(),
                d: row.d.to_string(),
                nielsen: row.nielsen.to_string(),
                an: row.an.to_string(),
            })
            .collect(),
        summary: JsonSummary {
            on: report.orbits.as_ref().map(|v| v.to_string()),
            irreducible: report.irreducible.as_ref().map(|v| v.to_string()),
            nbpn: report.nbpn.as_ref().map(|v| v.to_string()),
            mn: report.minimal_components.as_ref().map(|v| v.to_string()),
            n_toral: JsonFlag::from_toral(&report.n_toral),
            flags: JsonFlags {
                formulas_agree: JsonFlag::from_flag(&report.formulas_agree),
                an_equals_in: JsonFlag::from_flag(&report.an_equals_in),
                an_equals_non: JsonFlag::from_flag(&report.an_equals_non),
                nbpn_le_mn: JsonFlag::from_flag(&report.nbpn_le_mn),
                geometric_equals_algebraic: JsonFlag::from_flag(&report.geometric_equals_algebraic),
            },
        },
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

fn render_columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = String::new();
    for (i, h) in header.iter().enumerate() {
        line.push_str(&format!("{:>width$}  ", h, width = widths[i]));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line.push_str(&format!("{:>width$}  ", cell, width = widths[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn flag_text(flag: &Flag) -> String {
    match flag {
        Flag::True => "true".into(),
        Flag::False { witness } => format!("false ({witness})"),
        Flag::NotEvaluated { reason, .. } => format!("not evaluated ({reason})"),
    }
}

fn toral_text(flag: &ToralFlag) -> String {
    match flag {
        ToralFlag::True => "true".into(),
        ToralFlag::False(w) => format!(
            "false (level {}: residue {} has depth {} but length {})",
            w.level, w.residue, w.depth, w.length
        ),
        ToralFlag::NotEvaluated { reason, .. } => format!("not evaluated ({reason})"),
    }
}

fn option_text(v: &Option<nbp_core::BigInt>, report: &PeriodicReport) -> String {
    match v {
        Some(v) => v.to_string(),
        None => match &report.orbits_unavailable {
            Some(Flag::NotEvaluated {
                resource_limited: true,
                ..
            }) => "UNAVAILABLE".into(),
            _ => "-".into(),
        },
    }
}

/// `analyze` as an aligned text table.
pub fn periodic_report_table(report: &PeriodicReport) -> String {
    let mut out = format!(
        "map f(x, y) = (x^{} y^{}, y)    level n = {}\n\n",
        report.r, report.s, report.n
    );
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|row| {
            vec![
                row.k.to_string(),
                row.a.to_string(),
                row.b.to_string(),
                row.d.to_string(),
                row.nielsen.to_string(),
                row.an.to_string(),
            ]
        })
        .collect();
    out.push_str(&render_columns(
        &["k", "a", "b", "d", "nielsen", "an"],
        &rows,
    ));
    out.push('\n');
    let summary = [
        ("On", option_text(&report.orbits, report)),
        (
            "In",
            report
                .irreducible
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into()),
        ),
        ("nbpn", option_text(&report.nbpn, report)),
        (
            "Mn",
            report
                .minimal_components
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into()),
        ),
        ("n_toral", toral_text(&report.n_toral)),
        ("formulas_agree", flag_text(&report.formulas_agree)),
        ("an_equals_In", flag_text(&report.an_equals_in)),
        ("an_equals_nOn", flag_text(&report.an_equals_non)),
        ("nbpn_le_Mn", flag_text(&report.nbpn_le_mn)),
        (
            "geometric_equals_algebraic",
            flag_text(&report.geometric_equals_algebraic),
        ),
    ];
    for (name, value) in summary {
        out.push_str(&format!("{name:<28}{value}\n"));
    }
    out
}

/// `analyze` as CSV: the divisor-lattice rows.
pub fn periodic_report_csv(report: &PeriodicReport) -> String {
    let mut out = String::from("k,a,b,d,nielsen,an\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.k, row.a, row.b, row.d, row.nielsen, row.an
        ));
    }
    out
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Value(v) => v.to_string(),
        Cell::Degenerate => "-".into(),
        Cell::Unavailable => "UNAVAILABLE".into(),
    }
}

fn cell_json(cell: &Cell) -> Option<String> {
    match cell {
        Cell::Value(v) => Some(v.to_string()),
        _ => None,
    }
}

#[derive(Serialize)]
struct JsonTableRow {
    n: String,
    d: String,
    nielsen: String,
    an: String,
    nbpn: Option<String>,
    #[serde(rename = "mn")]
    minimal_components: Option<String>,
}

#[derive(Serialize)]
struct JsonTable {
    map: JsonMap,
    rows: Vec<JsonTableRow>,
}

/// `table` as an aligned text table.
pub fn summary_table_text(table: &SummaryTable) -> String {
    let mut out = format!(
        "map f(x, y) = (x^{} y^{}, y)    n = 1..{}\n\n",
        table.r, table.s, table.max_n
    );
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| {
            vec![
                row.n.to_string(),
                row.d.to_string(),
                row.nielsen.to_string(),
                row.an.to_string(),
                cell_text(&row.nbpn),
                cell_text(&row.mn),
            ]
        })
        .collect();
    out.push_str(&render_columns(
        &["n", "d", "nielsen", "an", "nbpn", "mn"],
        &rows,
    ));
    out
}

/// `table` as JSON.
pub fn summary_table_json(table: &SummaryTable) -> String {
    let doc = JsonTable {
        map: JsonMap {
            r: table.r.to_string(),
            s: table.s.to_string(),
        },
        rows: table
            .rows
            .iter()
            .map(|row| JsonTableRow {
                n: row.n.to_string(),
                d: row.d.to_string(),
                nielsen: row.nielsen.to_string(),
                an: row.an.to_string(),
                nbpn: cell_json(&row.nbpn),
                minimal_components: cell_json(&row.mn),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("table serializes");
    out.push('\n');
    out
}

/// `table` as CSV.
pub fn summary_table_csv(table: &SummaryTable) -> String {
    let mut out = String::from("n,d,nielsen,an,nbpn,mn\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.n,
            row.d,
            row.nielsen,
            row.an,
            cell_text(&row.nbpn),
            cell_text(&row.mn)
        ));
    }
    out
}

/// `hper` as text: one certified period per line with its certificates.
pub fn hper_text(report: &HperReport) -> String {
    let mut out = format!(
        "certified minimal periods of f(x, y) = (x^{} y^{}, y), n <= {}\n",
        report.r, report.s, report.max_n
    );
    if report.certified.is_empty() {
        out.push_str("(none)\n");
        return out;
    }
    for cert in &report.certified {
        let nbpn = cert
            .nbpn
            .as_ref()
            .map(|v| v.to_string())
            .unwrap_or_else(|| "UNAVAILABLE".into());
        out.push_str(&format!("{:>6}  nbpn = {}, an = {}", cert.n, nbpn, cert.an));
        if cert.values_disagree {
            out.push_str("  [certificates disagree in value; both are nonzero]");
        }
        if cert.nbpn.is_none() {
            out.push_str("  [certified via In != 0]");
        }
        out.push('\n');
    }
    out
}

/// `verify` as text: one line per level plus a closing summary.
pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = format!(
        "verify f(x, y) = (x^{} y^{}, y) for n = 1..{}\n",
        report.r, report.s, report.max_n
    );
    for lv in &report.levels {
        if lv.clean() && lv.skipped.is_empty() {
            out.push_str(&format!("n={}: ok\n", lv.n));
            continue;
        }
        if lv.clean() {
            out.push_str(&format!("n={}: ok (skipped: {})\n", lv.n, lv.skipped.join("; ")));
            continue;
        }
        for v in &lv.violations {
            out.push_str(&format!("n={}: VIOLATION {v}\n", lv.n));
        }
        for f in &lv.findings {
            out.push_str(&format!("n={}: finding: {f}\n", lv.n));
        }
        for s in &lv.skipped {
            out.push_str(&format!("n={}: skipped: {s}\n", lv.n));
        }
    }
    out.push_str(&format!(
        "violations: {}, findings: {}\n",
        report.violation_count(),
        report.finding_count()
    ));
    out
}
