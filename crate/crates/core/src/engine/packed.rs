// SPDX-License-Identifier: Apache-2.0

//! Bit-parallel simulation: lane `l` of word `i` carries exhaustive row
//! `64 * i + l`.

use rayon::prelude::*;

use super::{valid_mask, words_for, SimError, SimLimits, TruthTable};
use crate::netlist::{Circuit, Fault, Gate, Wire};

/// Lane patterns for the six lowest row bits.
const LOW_BIT_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Lane word for row bit `bit` within batch `word`.
pub fn row_bit_word(bit: usize, word: usize) -> u64 {
    if bit < 6 {
        LOW_BIT_PATTERNS[bit]
    } else if (word >> (bit - 6)) & 1 == 1 {
        !0
    } else {
        0
    }
}

/// One batch of 64 circuit states, one word per wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedStates {
    words: Vec<u64>,
}

impl PackedStates {
    /// Input states for batch `word` of the exhaustive enumeration. Lanes past
    /// the last row are zero.
    pub fn exhaustive_input(circuit: &Circuit, free_wires: &[Wire], word: usize) -> Self {
        let k = free_wires.len();
        let mask = valid_mask(1usize << k, word);
        let mut words: Vec<u64> = circuit
            .constants()
            .iter()
            .map(|c| if *c == Some(true) { mask } else { 0 })
            .collect();
        for (j, &w) in free_wires.iter().enumerate() {
            words[w] = row_bit_word(k - 1 - j, word) & mask;
        }
        PackedStates { words }
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        PackedStates { words }
    }

    pub fn wire(&self, w: Wire) -> u64 {
        self.words[w]
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn apply(&mut self, gate: &Gate) {
        apply_gate_packed(&mut self.words, gate);
    }

    pub fn run(&mut self, gates: &[Gate]) {
        for g in gates {
            apply_gate_packed(&mut self.words, g);
        }
    }
}

pub fn apply_gate_packed(s: &mut [u64], gate: &Gate) {
    match gate {
        Gate::Toffoli { controls, target } => {
            let m = controls.iter().fold(!0u64, |acc, &c| acc & s[c]);
            s[*target] ^= m;
        }
        Gate::Fredkin { controls, targets: (t0, t1) } => {
            let m = controls.iter().fold(!0u64, |acc, &c| acc & s[c]);
            let d = (s[*t0] ^ s[*t1]) & m;
            s[*t0] ^= d;
            s[*t1] ^= d;
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

/// States before each gate, plus the final state: `G + 1` entries.
pub fn prefix_trace(gates: &[Gate], input: &PackedStates) -> Vec<PackedStates> {
    let mut trace = Vec::with_capacity(gates.len() + 1);
    let mut s = input.clone();
    for g in gates {
        trace.push(s.clone());
        s.apply(g);
    }
    trace.push(s);
    trace
}

/// Runs `gates[from..]` starting from `state`.
pub fn run_suffix(gates: &[Gate], from: usize, mut state: PackedStates) -> PackedStates {
    state.run(&gates[from..]);
    state
}

fn collect_table(
    circuit: &Circuit,
    limits: &SimLimits,
    run: impl Fn(&PackedStates) -> PackedStates + Sync,
) -> Result<TruthTable, SimError> {
    let k = limits.check(circuit)?;
    let w = circuit.num_wires();
    let rows = 1usize << k;
    let words = words_for(rows);
    let free = circuit.free_wires();
    let batches: Vec<(PackedStates, PackedStates)> = (0..words)
        .into_par_iter()
        .map(|i| {
            let input = PackedStates::exhaustive_input(circuit, &free, i);
            let mut output = run(&input);
            let mask = valid_mask(rows, i);
            output.words.iter_mut().for_each(|x| *x &= mask);
            (input, output)
        })
        .collect();
    let mut inputs = vec![vec![0u64; words]; w];
    let mut outputs = vec![vec![0u64; words]; w];
    for (i, (inp, out)) in batches.iter().enumerate() {
        for wire in 0..w {
            inputs[wire][i] = inp.words[wire];
            outputs[wire][i] = out.words[wire];
        }
    }
    Ok(TruthTable::from_columns(w, free, rows, inputs, outputs))
}

/// Bit-parallel exhaustive simulation.
pub fn simulate_exhaustive_packed(circuit: &Circuit, limits: &SimLimits) -> Result<TruthTable, SimError> {
    collect_table(circuit, limits, |input| {
        let mut s = input.clone();
        s.run(circuit.gates());
        s
    })
}

/// Bit-parallel exhaustive simulation with one stuck-at fault injected.
pub fn simulate_faulty_exhaustive_packed(
    circuit: &Circuit,
    fault: Fault,
    limits: &SimLimits,
) -> Result<TruthTable, SimError> {
    let gates = circuit.gates();
    collect_table(circuit, limits, |input| {
        let mut s = input.clone();
        s.run(&gates[..fault.position]);
        s.words[fault.wire] = if fault.stuck { !0 } else { 0 };
        s.run(&gates[fault.position..]);
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{simulate_exhaustive, simulate_faulty_exhaustive};
    use crate::netlist::{fault_universe, Gate};

    fn sample() -> Circuit {
        Circuit::with_default_labels(
            4,
            vec![
                Gate::toffoli(vec![0, 1], 2),
                Gate::fredkin(vec![2], 0, 3),
                Gate::Peres { a: 3, b: 1, c: 0 },
                Gate::FeynmanDouble { a: 1, b: 2, c: 3 },
                Gate::not(1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn patterns_match_row_bits() {
        for bit in 0..8 {
            for word in 0..4 {
                let x = row_bit_word(bit, word);
                for lane in 0..64 {
                    let row = word * 64 + lane;
                    assert_eq!((x >> lane) & 1, ((row >> bit) & 1) as u64);
                }
            }
        }
    }

    #[test]
    fn packed_equals_naive() {
        let c = sample();
        let lim = SimLimits::default();
        assert_eq!(simulate_exhaustive_packed(&c, &lim).unwrap(), simulate_exhaustive(&c, &lim).unwrap());
        for f in fault_universe(&c) {
            assert_eq!(
                simulate_faulty_exhaustive_packed(&c, f, &lim).unwrap(),
                simulate_faulty_exhaustive(&c, f, &lim).unwrap(),
                "{f:?}"
            );
        }
    }

    #[test]
    fn multi_word_tables_match() {
        let mut gates = Vec::new();
        for i in 0..8 {
            gates.push(Gate::toffoli(vec![i, (i + 3) % 8], (i + 5) % 8));
        }
        let c = Circuit::with_default_labels(8, gates).unwrap();
        let lim = SimLimits::default();
        let t = simulate_exhaustive_packed(&c, &lim).unwrap();
        assert_eq!(t.words(), 4);
        assert_eq!(t, simulate_exhaustive(&c, &lim).unwrap());
    }

    #[test]
    fn trace_ends_at_output() {
        let c = sample();
        let free = c.free_wires();
        let input = PackedStates::exhaustive_input(&c, &free, 0);
        let trace = prefix_trace(c.gates(), &input);
        assert_eq!(trace.len(), c.num_gates() + 1);
        assert_eq!(run_suffix(c.gates(), 2, trace[2].clone()), trace[c.num_gates()]);
    }
}
