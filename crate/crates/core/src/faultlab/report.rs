// SPDX-License-Identifier: Apache-2.0

//! Per-circuit analysis rows and their JSON/CSV renderings.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{impact_many, ImpactError, ImpactReport};
use crate::engine::{simulate_exhaustive_packed, SimError, SimLimits};
use crate::implications::{
    discover_artificial, discover_natural_scoped, GateLibrary, Implication, ImplicationKind, Placement, SiteScope,
};
use crate::netlist::{fault_universe, load_real, Circuit, GateTemplate, Wire};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    pub limits: SimLimits,
    pub library: GateLibrary,
    pub scope: SiteScope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationRecord {
    pub id: String,
    pub text: String,
    pub in_wire: Wire,
    pub out_wire: Wire,
    pub kind: ImplicationKind,
}

impl ImplicationRecord {
    pub fn new(circuit: &Circuit, imp: &Implication, placement: Option<&Placement>) -> Self {
        ImplicationRecord {
            id: imp.id(placement),
            text: imp.report_text(circuit),
            in_wire: imp.in_wire,
            out_wire: imp.out_wire,
            kind: imp.kind,
        }
    }

    pub fn implication(&self) -> Implication {
        Implication::new(self.in_wire, self.out_wire, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactRecord {
    pub error_detected: u64,
    pub error_missed: u64,
    pub impact_percent: f64,
    pub impact_text: String,
    pub denominator_zero: bool,
}

impl From<&ImpactReport> for ImpactRecord {
    fn from(r: &ImpactReport) -> Self {
        ImpactRecord {
            error_detected: r.error_detected,
            error_missed: r.error_missed,
            impact_percent: r.impact_percent,
            impact_text: r.impact_text(),
            denominator_zero: r.denominator_zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub gate: String,
    pub template: GateTemplate,
    pub wires: Vec<Wire>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaturalEntry {
    pub implication: ImplicationRecord,
    pub impact: ImpactRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtificialEntry {
    pub placement: PlacementRecord,
    pub implication: ImplicationRecord,
    pub impact: ImpactRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitReport {
    pub circuit: String,
    pub gates: usize,
    pub wires: usize,
    pub garbage: usize,
    pub natural: Vec<NaturalEntry>,
    pub artificial: Vec<ArtificialEntry>,
    pub fault_count: usize,
    pub vectors: u64,
    pub wall_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (n, s) = xs.fold((0usize, 0.0), |(n, s), x| (n + 1, s + x));
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}

impl CircuitReport {
    pub fn failed(name: impl Into<String>, error: impl ToString) -> Self {
        CircuitReport {
            circuit: name.into(),
            gates: 0,
            wires: 0,
            garbage: 0,
            natural: Vec::new(),
            artificial: Vec::new(),
            fault_count: 0,
            vectors: 0,
            wall_ms: 0,
            error: Some(error.to_string()),
        }
    }

    pub fn is_failed(&self) -> bool {
        self.error.is_some()
    }

    /// Arithmetic mean of natural impacts; 0 when there are none.
    pub fn natural_avg(&self) -> f64 {
        mean(self.natural.iter().map(|e| e.impact.impact_percent))
    }

    pub fn artificial_avg(&self) -> f64 {
        mean(self.artificial.iter().map(|e| e.impact.impact_percent))
    }

    pub fn natural_inverted(&self) -> usize {
        self.natural.iter().filter(|e| e.implication.kind == ImplicationKind::Inverted).count()
    }

    pub fn artificial_inverted(&self) -> usize {
        self.artificial.iter().filter(|e| e.implication.kind == ImplicationKind::Inverted).count()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Impact(#[from] ImpactError),
}

/// Natural and artificial discovery plus impact scoring for one circuit.
pub fn analyze_circuit(circuit: &Circuit, opts: &AnalysisOptions) -> Result<CircuitReport, AnalysisError> {
    let start = Instant::now();
    let table = simulate_exhaustive_packed(circuit, &opts.limits)?;
    let natural_imps = discover_natural_scoped(&table, circuit, opts.scope);
    let natural_impacts = impact_many(circuit, &table, &natural_imps, &opts.limits)?;
    let natural = natural_imps
        .iter()
        .zip(&natural_impacts)
        .map(|(i, r)| NaturalEntry { implication: ImplicationRecord::new(circuit, i, None), impact: r.into() })
        .collect();

    let mut artificial = Vec::new();
    for finding in discover_artificial(circuit, &table, &opts.library, opts.scope) {
        let p = &finding.placement;
        let appended = crate::netlist::append_gate(circuit, p.template, &p.wires)
            .expect("search only yields garbage-wire placements");
        let t2 = simulate_exhaustive_packed(&appended, &opts.limits)?;
        let impacts = impact_many(&appended, &t2, &finding.new_implications, &opts.limits)?;
        for (i, r) in finding.new_implications.iter().zip(&impacts) {
            artificial.push(ArtificialEntry {
                placement: PlacementRecord { gate: p.describe(circuit), template: p.template, wires: p.wires.clone() },
                implication: ImplicationRecord::new(circuit, i, Some(p)),
                impact: r.into(),
            });
        }
    }

    Ok(CircuitReport {
        circuit: circuit.name().to_string(),
        gates: circuit.num_gates(),
        wires: circuit.num_wires(),
        garbage: circuit.num_garbage(),
        natural,
        artificial,
        fault_count: fault_universe(circuit).len(),
        vectors: table.rows() as u64,
        wall_ms: start.elapsed().as_millis() as u64,
        error: None,
    })
}

/// One row per circuit, in the given order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BenchmarkReport {
    pub rows: Vec<CircuitReport>,
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Loads and analyzes every file. A file that fails to load or analyze
/// becomes a failed row; the rest still run.
pub fn build_report(paths: &[PathBuf], opts: &AnalysisOptions) -> BenchmarkReport {
    let rows = paths
        .iter()
        .map(|p| match load_real(p) {
            Err(e) => CircuitReport::failed(stem(p), e),
            Ok(c) => analyze_circuit(&c, opts).unwrap_or_else(|e| CircuitReport::failed(c.name(), e)),
        })
        .collect();
    BenchmarkReport { rows }
}

impl BenchmarkReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.is_failed()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// benchmark, gates, wires, garbage, fault_count, vectors, status
    pub fn tables1_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["benchmark", "gates", "wires", "garbage", "fault_count", "vectors", "status"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.circuit.clone(),
                r.gates.to_string(),
                r.wires.to_string(),
                r.garbage.to_string(),
                r.fault_count.to_string(),
                r.vectors.to_string(),
                status(r),
            ])
            .expect("in-memory write");
        }
        finish(w)
    }

    /// Natural count and average impact, artificial count and average
    /// impact, then inverted counts, timing and status.
    pub fn tables2_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "benchmark",
            "natural_number",
            "natural_avg_impact",
            "artificial_number",
            "artificial_avg_impact",
            "natural_inverted",
            "artificial_inverted",
            "wall_ms",
            "status",
        ])
        .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.circuit.clone(),
                r.natural.len().to_string(),
                format!("{:.2}", r.natural_avg()),
                r.artificial.len().to_string(),
                format!("{:.2}", r.artificial_avg()),
                r.natural_inverted().to_string(),
                r.artificial_inverted().to_string(),
                r.wall_ms.to_string(),
                status(r),
            ])
            .expect("in-memory write");
        }
        finish(w)
    }
}

fn status(r: &CircuitReport) -> String {
    match &r.error {
        None => "ok".into(),
        Some(e) => format!("failed: {e}"),
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::Gate;

    fn rd32() -> Circuit {
        Circuit::new(
            ["a", "b", "c", "d"],
            vec![Gate::toffoli(vec![0, 1], 3), Gate::cnot(0, 1), Gate::toffoli(vec![1, 2], 3), Gate::cnot(1, 2)],
        )
        .unwrap()
        .with_garbage(vec![true, true, false, false])
        .unwrap()
        .named("rd32")
    }

    #[test]
    fn empty_corpus_gives_empty_report() {
        let r = build_report(&[], &AnalysisOptions::default());
        assert!(r.rows.is_empty());
        assert_eq!(r.to_json().trim(), "[]");
    }

    #[test]
    fn json_round_trips() {
        let row = analyze_circuit(&rd32(), &AnalysisOptions::default()).unwrap();
        let report = BenchmarkReport { rows: vec![row, CircuitReport::failed("x", "boom")] };
        assert_eq!(BenchmarkReport::from_json(&report.to_json()).unwrap(), report);
    }

    #[test]
    fn rd32_row_shape() {
        let row = analyze_circuit(&rd32(), &AnalysisOptions::default()).unwrap();
        assert_eq!((row.gates, row.wires, row.garbage), (4, 4, 2));
        assert_eq!(row.fault_count, 32);
        assert_eq!(row.vectors, 16);
        assert_eq!(row.natural.len(), 1);
        let csv = BenchmarkReport { rows: vec![row] }.tables2_csv();
        assert!(csv.starts_with("benchmark,natural_number,natural_avg_impact,artificial_number"));
    }

    #[test]
    fn missing_file_is_isolated() {
        let r = build_report(&[PathBuf::from("/nonexistent/foo.real")], &AnalysisOptions::default());
        assert_eq!(r.failures(), 1);
        assert_eq!(r.rows[0].circuit, "foo");
        assert!(r.tables1_csv().contains("failed"));
    }
}
