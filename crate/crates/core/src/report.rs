//! CSV and JSON encodings of count tables and extremal tables.
//!
//! Both encodings go through the same flat row types, so a CSV file and a JSON
//! document produced from the same records carry identical values. Big
//! integers are written as decimal strings.

use serde::{Deserialize, Serialize};

use crate::enumeration::CountRecord;
use crate::matrix::ExtremalRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    pub m: String,
    pub pattern: String,
    pub count: String,
    pub total: String,
    pub growth: f64,
}

impl From<&CountRecord> for CountRow {
    fn from(r: &CountRecord) -> Self {
        CountRow {
            n: r.n,
            m: r.spec.label(),
            pattern: r.pattern.to_string(),
            count: r.count.to_string(),
            total: r.total.to_string(),
            growth: r.growth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalRow {
    pub n: usize,
    pub value: usize,
    pub slope: String,
    pub witness: Vec<String>,
}

impl From<&ExtremalRecord> for ExtremalRow {
    fn from(r: &ExtremalRecord) -> Self {
        ExtremalRow {
            n: r.n,
            value: r.value,
            slope: r.slope.to_string(),
            witness: r.witness.row_strings(),
        }
    }
}

pub fn count_rows(records: &[CountRecord]) -> Vec<CountRow> {
    records.iter().map(CountRow::from).collect()
}

pub fn counts_to_csv(records: &[CountRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in count_rows(records) {
        writer.serialize(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn counts_to_json(records: &[CountRecord]) -> String {
    serde_json::to_string_pretty(&count_rows(records)).expect("serializable")
}

pub fn counts_from_csv(text: &str) -> Result<Vec<CountRow>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

/// Tabular extremal output; witnesses are flattened to `row/row/..` in CSV.
pub fn extremal_to_csv(records: &[ExtremalRecord]) -> String {
    let mut out = String::from("n,value,slope,witness\n");
    for r in records.iter().map(ExtremalRow::from) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.value,
            r.slope,
            r.witness.join("/")
        ));
    }
    out
}

pub fn extremal_to_json(records: &[ExtremalRecord]) -> String {
    serde_json::to_string_pretty(records).expect("serializable")
}
