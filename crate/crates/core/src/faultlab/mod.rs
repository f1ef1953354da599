// SPDX-License-Identifier: Apache-2.0

//! Implication impact over the single stuck-at fault universe, and the
//! per-circuit benchmark report built on top of it.
//!
//! For every free-input vector and every fault, a pair is *propagated* when
//! the faulty run differs from the golden run on some non-garbage output. A
//! propagated pair is *detected* when the implication is also violated
//! (antecedent read from the applied input, consequent from the faulty
//! output) and *missed* otherwise. Impact is `100 * detected / (detected +
//! missed)`.

pub mod reference;
pub mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::packed::{prefix_trace, PackedStates};
use crate::engine::{valid_mask, words_for, SimError, SimLimits, TruthTable};
use crate::implications::{implication_holds, Implication};
use crate::netlist::Circuit;

pub use report::{
    analyze_circuit, build_report, AnalysisOptions, ArtificialEntry, BenchmarkReport, CircuitReport, NaturalEntry,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Tally {
    pub detected: u64,
    pub missed: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally { detected: self.detected + o.detected, missed: self.missed + o.missed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactReport {
    pub implication: Implication,
    pub error_detected: u64,
    pub error_missed: u64,
    pub impact_percent: f64,
    pub denominator_zero: bool,
}

impl ImpactReport {
    pub fn from_tally(implication: Implication, t: Tally) -> Self {
        let den = t.detected + t.missed;
        let impact_percent = if den == 0 { 0.0 } else { 100.0 * t.detected as f64 / den as f64 };
        ImpactReport {
            implication,
            error_detected: t.detected,
            error_missed: t.missed,
            impact_percent,
            denominator_zero: den == 0,
        }
    }

    /// Impact in hundredths of a percent, rounded half up from the exact
    /// ratio.
    pub fn impact_hundredths(&self) -> u64 {
        let den = (self.error_detected + self.error_missed) as u128;
        if den == 0 {
            return 0;
        }
        ((20_000 * self.error_detected as u128 + den) / (2 * den)) as u64
    }

    /// Impact with two decimals, e.g. `12.50`.
    pub fn impact_text(&self) -> String {
        format_hundredths(self.impact_hundredths())
    }
}

pub fn format_hundredths(h: u64) -> String {
    format!("{}.{:02}", h / 100, h % 100)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ImpactError {
    #[error("implication does not hold on the fault-free circuit; impact is undefined")]
    DoesNotHold(Implication),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Impact of one implication on `circuit`, sweeping `G * W * 2` faults over
/// every free-input vector.
pub fn implication_impact(
    circuit: &Circuit,
    table: &TruthTable,
    implication: &Implication,
    limits: &SimLimits,
) -> Result<ImpactReport, ImpactError> {
    Ok(impact_many(circuit, table, std::slice::from_ref(implication), limits)?.remove(0))
}

/// Impact of several implications of the same circuit in one fault sweep.
pub fn impact_many(
    circuit: &Circuit,
    table: &TruthTable,
    implications: &[Implication],
    limits: &SimLimits,
) -> Result<Vec<ImpactReport>, ImpactError> {
    if let Some(bad) = implications.iter().find(|i| !implication_holds(table, i)) {
        return Err(ImpactError::DoesNotHold(*bad));
    }
    let tallies = sweep(circuit, implications, limits)?;
    Ok(implications.iter().zip(tallies).map(|(i, t)| ImpactReport::from_tally(*i, t)).collect())
}

/// Raw detected/missed tallies, without the holds-check.
///
/// Uses one shared fault-free prefix trace per 64-vector batch. A single
/// suffix run with the fault wire inverted covers both stuck values: stuck-0
/// only differs from the golden run on lanes where the wire was 1, stuck-1
/// on lanes where it was 0.
pub fn sweep(circuit: &Circuit, implications: &[Implication], limits: &SimLimits) -> Result<Vec<Tally>, SimError> {
    let k = limits.check(circuit)?;
    if implications.is_empty() {
        return Ok(Vec::new());
    }
    let rows = 1usize << k;
    let free = circuit.free_wires();
    let gates = circuit.gates();
    let w = circuit.num_wires();
    let observed: Vec<usize> = (0..w).filter(|&x| !circuit.is_garbage(x)).collect();
    let zero = vec![Tally::default(); implications.len()];

    let per_batch: Vec<Vec<Tally>> = (0..words_for(rows))
        .into_par_iter()
        .map(|word| {
            let mask = valid_mask(rows, word);
            let input = PackedStates::exhaustive_input(circuit, &free, word);
            let trace = prefix_trace(gates, &input);
            let golden = &trace[gates.len()];
            let mut acc = zero.clone();
            for pos in 0..gates.len() {
                for wire in 0..w {
                    let mut s = trace[pos].clone();
                    let before = s.wire(wire);
                    s.words_mut()[wire] = !before;
                    s.run(&gates[pos..]);
                    let propagated = observed.iter().fold(0u64, |m, &x| m | (s.wire(x) ^ golden.wire(x))) & mask;
                    if propagated == 0 {
                        continue;
                    }
                    // lanes where stuck-0 (resp. stuck-1) actually changes the wire
                    let affected = [before & mask, !before & mask];
                    for (imp, t) in implications.iter().zip(acc.iter_mut()) {
                        let viol = imp.kind.violation_mask(input.wire(imp.in_wire), s.wire(imp.out_wire));
                        for lanes in affected {
                            let p = propagated & lanes;
                            t.detected += (p & viol).count_ones() as u64;
                            t.missed += (p & !viol).count_ones() as u64;
                        }
                    }
                }
            }
            acc
        })
        .collect();

    Ok(per_batch.into_iter().fold(zero, |acc, b| acc.into_iter().zip(b).map(|(x, y)| x + y).collect()))
}
