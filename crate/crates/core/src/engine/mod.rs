// SPDX-License-Identifier: Apache-2.0

//! Gate evaluation and circuit simulation.
//!
//! Two independent paths are provided: a naive one that walks a single
//! [`StateVector`] through the cascade, and a bit-parallel one
//! ([`packed`]) that pushes 64 input vectors per machine word. Both produce
//! the same [`TruthTable`] bit for bit.

pub mod packed;

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::netlist::{Circuit, Fault, Gate, Wire};

pub use packed::{simulate_exhaustive_packed, simulate_faulty_exhaustive_packed, PackedStates};

/// Free-input count above which exhaustive simulation is refused unless the
/// caller raises the cap.
pub const DEFAULT_MAX_FREE_INPUTS: usize = 24;

/// Hard ceiling on free inputs regardless of configuration.
pub const ABSOLUTE_MAX_FREE_INPUTS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimLimits {
    pub max_free_inputs: usize,
}

impl Default for SimLimits {
    fn default() -> Self {
        SimLimits { max_free_inputs: DEFAULT_MAX_FREE_INPUTS }
    }
}

impl SimLimits {
    pub fn with_max_free_inputs(max_free_inputs: usize) -> Self {
        SimLimits { max_free_inputs }
    }

    /// Returns the number of free inputs if the circuit is within the cap.
    pub fn check(&self, circuit: &Circuit) -> Result<usize, SimError> {
        let free = circuit.num_free_inputs();
        let cap = self.max_free_inputs.min(ABSOLUTE_MAX_FREE_INPUTS);
        if free > cap {
            Err(SimError::TooManyInputs { free, cap })
        } else {
            Ok(free)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("circuit has {free} free inputs, above the exhaustive-simulation cap of {cap} (raise it with --max-inputs)")]
    TooManyInputs { free: usize, cap: usize },
}

/// One bit per wire.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector(Vec<bool>);

impl StateVector {
    pub fn zeros(num_wires: usize) -> Self {
        StateVector(vec![false; num_wires])
    }

    /// Parses a string of `0`/`1` characters, wire 0 first.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(StateVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }
}

impl From<Vec<bool>> for StateVector {
    fn from(v: Vec<bool>) -> Self {
        StateVector(v)
    }
}

impl Index<Wire> for StateVector {
    type Output = bool;
    fn index(&self, w: Wire) -> &bool {
        &self.0[w]
    }
}

impl IndexMut<Wire> for StateVector {
    fn index_mut(&mut self, w: Wire) -> &mut bool {
        &mut self.0[w]
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Applies one gate in place.
pub fn apply_gate_in_place(state: &mut StateVector, gate: &Gate) {
    let s = &mut state.0;
    match gate {
        Gate::Toffoli { controls, target } => {
            if controls.iter().all(|&c| s[c]) {
                s[*target] = !s[*target];
            }
        }
        Gate::Fredkin { controls, targets: (t0, t1) } => {
            if controls.iter().all(|&c| s[c]) {
                s.swap(*t0, *t1);
            }
        }
        Gate::Peres { a, b, c } => {
            let (va, vb) = (s[*a], s[*b]);
            s[*c] ^= va & vb;
            s[*b] = va ^ vb;
        }
        Gate::FeynmanDouble { a, b, c } => {
            let va = s[*a];
            s[*b] ^= va;
            s[*c] ^= va;
        }
    }
}

pub fn apply_gate(state: &StateVector, gate: &Gate) -> StateVector {
    let mut out = state.clone();
    apply_gate_in_place(&mut out, gate);
    out
}

/// Folds the gate list over `input`. Constant wires are not re-checked; the
/// caller supplies inputs that respect them.
pub fn simulate(circuit: &Circuit, input: &StateVector) -> StateVector {
    assert_eq!(input.len(), circuit.num_wires(), "input width does not match the circuit");
    let mut s = input.clone();
    for g in circuit.gates() {
        apply_gate_in_place(&mut s, g);
    }
    s
}

/// Simulates with `fault` forced once, right before gate `fault.position`.
pub fn simulate_faulty(circuit: &Circuit, fault: Fault, input: &StateVector) -> StateVector {
    assert_eq!(input.len(), circuit.num_wires(), "input width does not match the circuit");
    let mut s = input.clone();
    for (i, g) in circuit.gates().iter().enumerate() {
        if i == fault.position {
            s[fault.wire] = fault.stuck;
        }
        apply_gate_in_place(&mut s, g);
    }
    s
}

/// The full input vector for row `row` of the exhaustive enumeration. The
/// first free wire is the most significant bit of the row index.
pub fn input_for_row(circuit: &Circuit, free_wires: &[Wire], row: usize) -> StateVector {
    let k = free_wires.len();
    let mut s: StateVector = circuit.constants().iter().map(|c| c.unwrap_or(false)).collect::<Vec<_>>().into();
    for (j, &w) in free_wires.iter().enumerate() {
        s[w] = (row >> (k - 1 - j)) & 1 == 1;
    }
    s
}

/// Exhaustive input/output map over every assignment of the free inputs,
/// stored column-wise: one packed bit column per wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    num_wires: usize,
    free_wires: Vec<Wire>,
    rows: usize,
    inputs: Vec<Vec<u64>>,
    outputs: Vec<Vec<u64>>,
}

pub(crate) fn words_for(rows: usize) -> usize {
    rows.div_ceil(64)
}

/// Lanes of word `word` that correspond to real rows.
pub(crate) fn valid_mask(rows: usize, word: usize) -> u64 {
    let start = word * 64;
    let n = rows.saturating_sub(start).min(64);
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

impl TruthTable {
    pub(crate) fn from_columns(
        num_wires: usize,
        free_wires: Vec<Wire>,
        rows: usize,
        inputs: Vec<Vec<u64>>,
        outputs: Vec<Vec<u64>>,
    ) -> Self {
        debug_assert_eq!(inputs.len(), num_wires);
        debug_assert_eq!(outputs.len(), num_wires);
        TruthTable { num_wires, free_wires, rows, inputs, outputs }
    }

    pub fn num_wires(&self) -> usize {
        self.num_wires
    }

    pub fn free_wires(&self) -> &[Wire] {
        &self.free_wires
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn words(&self) -> usize {
        words_for(self.rows)
    }

    pub fn valid_mask(&self, word: usize) -> u64 {
        valid_mask(self.rows, word)
    }

    pub fn input_column(&self, wire: Wire) -> &[u64] {
        &self.inputs[wire]
    }

    pub fn output_column(&self, wire: Wire) -> &[u64] {
        &self.outputs[wire]
    }

    pub fn input_bit(&self, row: usize, wire: Wire) -> bool {
        (self.inputs[wire][row / 64] >> (row % 64)) & 1 == 1
    }

    pub fn output_bit(&self, row: usize, wire: Wire) -> bool {
        (self.outputs[wire][row / 64] >> (row % 64)) & 1 == 1
    }

    pub fn input_row(&self, row: usize) -> StateVector {
        (0..self.num_wires).map(|w| self.input_bit(row, w)).collect::<Vec<_>>().into()
    }

    pub fn output_row(&self, row: usize) -> StateVector {
        (0..self.num_wires).map(|w| self.output_bit(row, w)).collect::<Vec<_>>().into()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = (StateVector, StateVector)> + '_ {
        (0..self.rows).map(|r| (self.input_row(r), self.output_row(r)))
    }

    /// True when no two rows share an output vector.
    pub fn outputs_distinct(&self) -> bool {
        let mut outs: Vec<StateVector> = (0..self.rows).map(|r| self.output_row(r)).collect();
        outs.sort();
        outs.windows(2).all(|w| w[0] != w[1])
    }

    /// Text dump: a header of wire labels, then `<inputbits> -> <outputbits>`
    /// per row in ascending free-input order.
    pub fn dump(&self, labels: &[String]) -> String {
        let mut out = labels.join(" ");
        out.push('\n');
        for (i, o) in self.iter_rows() {
            out.push_str(&format!("{i} -> {o}\n"));
        }
        out
    }
}

/// Naive exhaustive simulation: one [`simulate`] call per row.
pub fn simulate_exhaustive(circuit: &Circuit, limits: &SimLimits) -> Result<TruthTable, SimError> {
    exhaustive_naive_with(circuit, limits, |input| simulate(circuit, input))
}

/// Naive exhaustive simulation of a faulty circuit.
pub fn simulate_faulty_exhaustive(circuit: &Circuit, fault: Fault, limits: &SimLimits) -> Result<TruthTable, SimError> {
    exhaustive_naive_with(circuit, limits, |input| simulate_faulty(circuit, fault, input))
}

fn exhaustive_naive_with(
    circuit: &Circuit,
    limits: &SimLimits,
    run: impl Fn(&StateVector) -> StateVector,
) -> Result<TruthTable, SimError> {
    let k = limits.check(circuit)?;
    let w = circuit.num_wires();
    let rows = 1usize << k;
    let words = words_for(rows);
    let free = circuit.free_wires();
    let mut inputs = vec![vec![0u64; words]; w];
    let mut outputs = vec![vec![0u64; words]; w];
    for row in 0..rows {
        let input = input_for_row(circuit, &free, row);
        let output = run(&input);
        for wire in 0..w {
            if input[wire] {
                inputs[wire][row / 64] |= 1 << (row % 64);
            }
            if output[wire] {
                outputs[wire][row / 64] |= 1 << (row % 64);
            }
        }
    }
    Ok(TruthTable::from_columns(w, free, rows, inputs, outputs))
}
