//! Rendering of invariant tables and check reports.
//!
//! Every number leaves this module as a decimal string (`"a"` or `"a/b"`),
//! so output never passes through floating point.

use std::fmt::Display;

use serde::{Serialize, Serializer};

use crate::bps::kkv_table;
use crate::k3counts::{table1, table1_cell_present};
use crate::series::format_rational;
use crate::Result;

/// Serializes any `Display` value as a JSON string, so big integers and
/// rationals keep every digit.
pub fn ser_display<T: Display, S: Serializer>(
    value: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

/// Serializes a rational as `"a"` or `"a/b"`.
pub fn ser_rational<S: Serializer>(
    value: &crate::Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}

/// A rectangular grid of exact values with optional empty cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    /// Label of the top-left cell, e.g. `p\δ`.
    pub corner: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<Option<String>>,
}

impl Table {
    /// Tab-separated rendering with a header line and a trailing newline.
    /// Empty cells render as nothing between tabs.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.corner);
        for c in &self.columns {
            out.push('\t');
            out.push_str(c);
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.label);
            for cell in &row.cells {
                out.push('\t');
                out.push_str(cell.as_deref().unwrap_or(""));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize") + "\n"
    }

    /// The cell at (row label, column label), if present.
    pub fn cell(&self, row: &str, column: &str) -> Option<&str> {
        let j = self.columns.iter().position(|c| c == column)?;
        let r = self.rows.iter().find(|r| r.label == row)?;
        r.cells[j].as_deref()
    }
}

/// The `table1` layout: rows `p = 1..=p_max`, columns `δ = 1..=9`, each cell holding
/// `N_{p−δ}^p`.
pub fn table1_grid(p_max: u32) -> Result<Table> {
    let values = table1(p_max)?;
    let rows = (1..=p_max)
        .map(|p| TableRow {
            label: p.to_string(),
            cells: (1..=9)
                .map(|delta| {
                    table1_cell_present(p, delta)
                        .then(|| values.primitive(p - delta, p).map(format_rational))
                        .flatten()
                })
                .collect(),
        })
        .collect();
    Ok(Table {
        corner: "p\\δ".into(),
        columns: (1..=9).map(|d| d.to_string()).collect(),
        rows,
    })
}

/// The `table2` layout: rows `g = 0..=p_max`, columns `p = 0..=p_max`, cells `r_g^p`
/// for `g ≤ p`.
pub fn table2_grid(p_max: u32) -> Result<Table> {
    let values = kkv_table(p_max)?;
    let rows = (0..=p_max)
        .map(|g| TableRow {
            label: g.to_string(),
            cells: (0..=p_max)
                .map(|p| (g <= p).then(|| format_rational(&values.get(g, 1, p))))
                .collect(),
        })
        .collect();
    Ok(Table {
        corner: "g\\p".into(),
        columns: (0..=p_max).map(|p| p.to_string()).collect(),
        rows,
    })
}

/// Outcome of one named identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub details: serde_json::Value,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, pass: bool, details: impl Serialize) -> Self {
        let details = serde_json::to_value(details).expect("details serialize");
        Self {
            name: name.into(),
            pass,
            details,
        }
    }

    /// One line: `PASS name` or `FAIL name`.
    pub fn summary_line(&self) -> String {
        format!("{} {}", if self.pass { "PASS" } else { "FAIL" }, self.name)
    }
}
