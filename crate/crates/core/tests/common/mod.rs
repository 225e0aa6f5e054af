#![allow(dead_code)]

use std::collections::BTreeMap;

pub const TABLE1_TSV: &str = include_str!("../fixtures/table1.tsv");
pub const TABLE2_TSV: &str = include_str!("../fixtures/table2.tsv");

/// Non-empty cells of a fixture, keyed by (row label, column label).
pub fn parse_fixture(tsv: &str) -> BTreeMap<(u32, u32), String> {
    let mut lines = tsv.lines();
    let header: Vec<u32> = lines
        .next()
        .expect("header line")
        .split('\t')
        .skip(1)
        .map(|c| c.parse().expect("numeric column label"))
        .collect();
    let mut cells = BTreeMap::new();
    for line in lines {
        let mut fields = line.split('\t');
        let row: u32 = fields
            .next()
            .expect("row label")
            .parse()
            .expect("numeric row label");
        for (col, value) in header.iter().zip(fields) {
            if !value.is_empty() {
                cells.insert((row, *col), value.to_string());
            }
        }
    }
    cells
}
