mod common;

use k3curves::report::{table1_grid, table2_grid};

use common::{TABLE1_TSV, TABLE2_TSV};

#[test]
fn table1_matches_fixture() {
    assert_eq!(table1_grid(18).unwrap().to_tsv(), TABLE1_TSV);
}

#[test]
fn table2_matches_fixture() {
    assert_eq!(table2_grid(4).unwrap().to_tsv(), TABLE2_TSV);
}

#[test]
fn smaller_tables_are_prefixes() {
    let full: Vec<&str> = TABLE1_TSV.lines().collect();
    let small = table1_grid(7).unwrap().to_tsv();
    assert_eq!(small.lines().collect::<Vec<_>>(), full[..8]);
}

#[test]
fn table1_range_is_enforced() {
    assert!(table1_grid(0).is_err());
    assert!(table1_grid(19).is_err());
}

#[test]
fn json_rendering_keeps_empty_cells() {
    let json: serde_json::Value = serde_json::from_str(&table2_grid(2).unwrap().to_json()).unwrap();
    assert_eq!(json["rows"][1]["cells"][0], serde_json::Value::Null);
    assert_eq!(json["rows"][1]["cells"][1], "-2");
}
