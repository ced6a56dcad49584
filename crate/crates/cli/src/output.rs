//! Scan tables: RFC 4180 CSV or a JSON object `{"rows": [...], "summary": {...}}`.
//!
//! Big integers are emitted as decimal strings in JSON; absent values are
//! `null` in JSON and empty fields in CSV.

use std::io::{self, Write};

use hyperpic::SpecializationRow;
use serde::{Deserialize, Serialize};

pub const COLUMNS: [&str; 13] = [
    "n",
    "f_n",
    "S_n",
    "primitive",
    "form_a",
    "form_b2",
    "form_c",
    "order_order",
    "order_maximal",
    "h_order",
    "h_maximal",
    "error",
    "pairing_status",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub n: String,
    pub f_n: String,
    #[serde(rename = "S_n")]
    pub s_n: Option<String>,
    pub primitive: Option<bool>,
    pub form_a: Option<String>,
    pub form_b2: Option<String>,
    pub form_c: Option<String>,
    pub order_order: Option<u64>,
    pub order_maximal: Option<u64>,
    pub h_order: Option<u64>,
    pub h_maximal: Option<u64>,
    pub error: Option<String>,
    pub pairing_status: Option<String>,
}

impl From<&SpecializationRow> for RowRecord {
    fn from(r: &SpecializationRow) -> Self {
        let rep = r.delta.as_ref().map(|c| c.rep());
        RowRecord {
            n: r.n.to_string(),
            f_n: r.f_n.to_string(),
            s_n: r.s_n.as_ref().map(ToString::to_string),
            primitive: r.primitive,
            form_a: rep.map(|f| f.a.to_string()),
            form_b2: rep.map(|f| f.b.to_string()),
            form_c: rep.map(|f| f.c.to_string()),
            order_order: r.order_order,
            order_maximal: r.order_maximal,
            h_order: r.h_order,
            h_maximal: r.h_maximal,
            error: r.error.as_ref().map(ToString::to_string),
            pairing_status: r.pairing_status.map(|s| s.as_str().to_string()),
        }
    }
}

impl RowRecord {
    fn fields(&self) -> [String; 13] {
        let s = |v: &Option<String>| v.clone().unwrap_or_default();
        let u = |v: &Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.n.clone(),
            self.f_n.clone(),
            s(&self.s_n),
            self.primitive.map(|p| p.to_string()).unwrap_or_default(),
            s(&self.form_a),
            s(&self.form_b2),
            s(&self.form_c),
            u(&self.order_order),
            u(&self.order_maximal),
            u(&self.h_order),
            u(&self.h_maximal),
            s(&self.error),
            s(&self.pairing_status),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: u64,
    pub computed: u64,
    pub nontrivial: u64,
    /// Largest order of the pairing value in the maximal order.
    pub max_order_maximal: Option<u64>,
    /// Largest `n` attaining it.
    pub max_order_at: Option<String>,
    pub max_order_order: Option<u64>,
}

impl Summary {
    pub fn of(rows: &[SpecializationRow]) -> Self {
        let mut best: Option<(u64, &SpecializationRow)> = None;
        for r in rows {
            if let Some(o) = r.order_maximal {
                // rows arrive in descending n, so strict > keeps the largest n
                if best.is_none_or(|(b, _)| o > b) {
                    best = Some((o, r));
                }
            }
        }
        Summary {
            rows: rows.len() as u64,
            computed: rows.iter().filter(|r| r.error.is_none()).count() as u64,
            nontrivial: rows.iter().filter(|r| r.is_nontrivial()).count() as u64,
            max_order_maximal: best.map(|(o, _)| o),
            max_order_at: best.map(|(_, r)| r.n.to_string()),
            max_order_order: rows.iter().filter_map(|r| r.order_order).max(),
        }
    }

    pub fn footer_lines(&self) -> Vec<String> {
        let opt = |v: Option<u64>| v.map_or_else(|| "none".to_string(), |x| x.to_string());
        vec![
            format!("rows: {} ({} computed)", self.rows, self.computed),
            format!("nontrivial: {}", self.nontrivial),
            format!(
                "max order (maximal order): {}{}",
                opt(self.max_order_maximal),
                self.max_order_at
                    .as_ref()
                    .map(|n| format!(" at n = {n}"))
                    .unwrap_or_default()
            ),
            format!("max order (Z[sqrt(f(n))]): {}", opt(self.max_order_order)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTable {
    pub rows: Vec<RowRecord>,
    pub summary: Summary,
}

impl ScanTable {
    pub fn new(rows: &[SpecializationRow]) -> Self {
        ScanTable {
            rows: rows.iter().map(RowRecord::from).collect(),
            summary: Summary::of(rows),
        }
    }
}

pub fn write_csv<W: Write>(table: &ScanTable, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in &table.rows {
        w.write_record(r.fields())?;
    }
    w.flush()
}

pub fn write_json<W: Write>(table: &ScanTable, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, table)?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperpic::specialize::{scan, ScanOptions};
    use hyperpic::{IntPoly, MumfordDivisor, OddHyperellipticCurve};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn table() -> ScanTable {
        let curve = OddHyperellipticCurve::new(IntPoly::from_i64s(&[-4, 0, 0, 1])).unwrap();
        let p = MumfordDivisor::from_point(
            &curve,
            &BigRational::from_integer(2.into()),
            &BigRational::from_integer(2.into()),
        )
        .unwrap();
        let rows = scan(&curve, &p, &BigInt::from(-6), &BigInt::from(1), &ScanOptions::default()).unwrap();
        ScanTable::new(&rows)
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let t = table();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], COLUMNS.join(","));
        assert_eq!(lines.len(), 1 + t.rows.len());
        // n = 1 gives f(1) = -3 and n = -1 gives [2, 2, 3]
        assert!(lines[1].starts_with("1,-3,"));
        assert!(lines
            .iter()
            .any(|l| l.starts_with("-1,-5,1,true,2,2,3,2,2,2,2,,certified")));
    }

    #[test]
    fn json_round_trips() {
        let t = table();
        let mut buf = Vec::new();
        write_json(&t, &mut buf).unwrap();
        let back: ScanTable = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, t);
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v["rows"][0]["n"].is_string());
        assert_eq!(
            v["summary"]["max_order_maximal"],
            serde_json::json!(t.summary.max_order_maximal)
        );
    }
}
