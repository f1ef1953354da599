// SPDX-License-Identifier: Apache-2.0

//! Published benchmark figures, for side-by-side comparison with computed
//! reports.

use serde::Serialize;

use super::report::{BenchmarkReport, CircuitReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceRow {
    pub name: &'static str,
    pub gates: usize,
    pub wires: usize,
    pub garbage: usize,
    pub natural: usize,
    pub natural_avg: f64,
    pub artificial: usize,
    pub artificial_avg: f64,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    name: &'static str,
    gates: usize,
    wires: usize,
    garbage: usize,
    natural: usize,
    natural_avg: f64,
    artificial: usize,
    artificial_avg: f64,
) -> ReferenceRow {
    ReferenceRow { name, gates, wires, garbage, natural, natural_avg, artificial, artificial_avg }
}

pub const REFERENCE: [ReferenceRow; 10] = [
    row("rd32", 4, 4, 2, 1, 12.5, 1, 18.75),
    row("rd53-130", 30, 7, 4, 3, 7.14, 0, 0.0),
    row("rd84-143", 21, 15, 11, 1, 0.0, 0, 0.0),
    row("sym6-145", 36, 7, 6, 5, 5.12, 0, 0.0),
    row("4gt4-v0-73", 17, 5, 4, 0, 0.0, 0, 0.0),
    row("alu-v4-6", 7, 5, 4, 1, 10.0, 0, 0.0),
    row("9symd2", 28, 12, 11, 2, 8.2, 7, 22.5),
    row("ckt1-149", 11553, 9, 0, 0, 0.0, 0, 0.0),
    row("ham7-25-49", 25, 7, 6, 0, 0.0, 0, 0.0),
    row("hwb6-56", 126, 6, 0, 0, 0.0, 0, 0.0),
];

/// Allowed gap between a published and a computed average impact, in
/// percentage points.
pub const IMPACT_TOLERANCE: f64 = 0.01;

pub fn reference_row(name: &str) -> Option<&'static ReferenceRow> {
    REFERENCE.iter().find(|r| r.name == name)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub name: String,
    pub reference: Option<ReferenceRow>,
    pub computed: Option<[f64; 4]>,
    /// Names of the columns that differ.
    pub mismatches: Vec<&'static str>,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.reference.is_some() && self.computed.is_some() && self.mismatches.is_empty()
    }
}

pub fn compare_row(r: &CircuitReport) -> Comparison {
    let reference = reference_row(&r.circuit).copied();
    let computed = r.error.is_none().then(|| {
        [r.natural.len() as f64, r.natural_avg(), r.artificial.len() as f64, r.artificial_avg()]
    });
    let mut mismatches = Vec::new();
    if let (Some(p), Some(c)) = (reference, computed) {
        if (r.gates, r.wires, r.garbage) != (p.gates, p.wires, p.garbage) {
            mismatches.push("shape");
        }
        if c[0] as usize != p.natural {
            mismatches.push("natural");
        }
        if (c[1] - p.natural_avg).abs() > IMPACT_TOLERANCE {
            mismatches.push("natural_avg");
        }
        if c[2] as usize != p.artificial {
            mismatches.push("artificial");
        }
        if (c[3] - p.artificial_avg).abs() > IMPACT_TOLERANCE {
            mismatches.push("artificial_avg");
        }
    }
    Comparison { name: r.circuit.clone(), reference, computed, mismatches }
}

pub fn compare(report: &BenchmarkReport) -> Vec<Comparison> {
    report.rows.iter().map(compare_row).collect()
}

/// Plain-text table: published figures next to computed ones, mismatching
/// rows flagged.
pub fn side_by_side(report: &BenchmarkReport) -> String {
    let mut out = format!(
        "{:<12} {:>13} {:>13} {:>13} {:>13}  {}\n",
        "benchmark", "nat(pub/got)", "avg(pub/got)", "art(pub/got)", "avg(pub/got)", "status"
    );
    for c in compare(report) {
        let p = |f: fn(&ReferenceRow) -> String| c.reference.as_ref().map_or("-".to_string(), f);
        let g = |i: usize, int: bool| {
            c.computed.map_or("-".to_string(), |v| if int { format!("{}", v[i] as usize) } else { format!("{:.2}", v[i]) })
        };
        let status = match (&c.reference, &c.computed) {
            (_, None) => "FAILED".to_string(),
            (None, _) => "no reference".to_string(),
            _ if c.mismatches.is_empty() => "match".to_string(),
            _ => format!("MISMATCH {}", c.mismatches.join(",")),
        };
        out.push_str(&format!(
            "{:<12} {:>13} {:>13} {:>13} {:>13}  {}\n",
            c.name,
            format!("{}/{}", p(|r| r.natural.to_string()), g(0, true)),
            format!("{}/{}", p(|r| format!("{:.2}", r.natural_avg)), g(1, false)),
            format!("{}/{}", p(|r| r.artificial.to_string()), g(2, true)),
            format!("{}/{}", p(|r| format!("{:.2}", r.artificial_avg)), g(3, false)),
            status
        ));
    }
    out
}
