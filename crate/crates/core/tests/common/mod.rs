// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference implementations for the integration tests.
//!
//! Nothing here touches the library's simulation, discovery or impact code:
//! states are plain `Vec<u8>`, every (vector, fault) pair is re-simulated
//! from scratch and every candidate relation is checked row by row.

#![allow(dead_code)]

use std::path::PathBuf;

use revfault::netlist::{load_real, Circuit, Gate};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_circuit(name: &str) -> Circuit {
    load_real(corpus_dir().join(format!("{name}.real"))).unwrap()
}

pub const CORPUS: [&str; 10] = [
    "rd32",
    "rd53-130",
    "rd84-143",
    "sym6-145",
    "4gt4-v0-73",
    "alu-v4-6",
    "9symd2",
    "ckt1-149",
    "ham7-25-49",
    "hwb6-56",
];

pub fn eval_gate(gate: &Gate, s: &mut [u8]) {
    match gate {
        Gate::Toffoli { controls, target } => {
            let mut all = 1;
            for &c in controls {
                all &= s[c];
            }
            s[*target] ^= all;
        }
        Gate::Fredkin { controls, targets } => {
            let mut all = 1;
            for &c in controls {
                all &= s[c];
            }
            if all == 1 {
                s.swap(targets.0, targets.1);
            }
        }
        Gate::Peres { a, b, c } => {
            // Toffoli(a, b; c) followed by CNOT(a; b)
            s[*c] ^= s[*a] & s[*b];
            s[*b] ^= s[*a];
        }
        Gate::FeynmanDouble { a, b, c } => {
            s[*b] ^= s[*a];
            s[*c] ^= s[*a];
        }
    }
}

/// Runs the cascade; `fault = (position, wire, value)` is forced once
/// before gate `position`.
pub fn run(circuit: &Circuit, input: &[u8], fault: Option<(usize, usize, u8)>) -> Vec<u8> {
    let mut s = input.to_vec();
    for (i, g) in circuit.gates().iter().enumerate() {
        if let Some((p, w, v)) = fault {
            if p == i {
                s[w] = v;
            }
        }
        eval_gate(g, &mut s);
    }
    s
}

/// All input vectors, first free wire most significant.
pub fn vectors(circuit: &Circuit) -> Vec<Vec<u8>> {
    let free: Vec<usize> = (0..circuit.num_wires()).filter(|&w| circuit.constant(w).is_none()).collect();
    let k = free.len();
    (0..1usize << k)
        .map(|row| {
            let mut v: Vec<u8> = (0..circuit.num_wires()).map(|w| circuit.constant(w).unwrap_or(false) as u8).collect();
            for (j, &w) in free.iter().enumerate() {
                v[w] = ((row >> (k - 1 - j)) & 1) as u8;
            }
            v
        })
        .collect()
}

pub fn faults(circuit: &Circuit) -> Vec<(usize, usize, u8)> {
    let mut f = Vec::new();
    for p in 0..circuit.num_gates() {
        for w in 0..circuit.num_wires() {
            for v in 0..2 {
                f.push((p, w, v));
            }
        }
    }
    f
}

/// Relation kinds as (antecedent, consequent) literal sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rel {
    Lit(u8, u8),
    Eq,
    Inv,
}

pub fn violated(rel: Rel, input: u8, output: u8) -> bool {
    match rel {
        Rel::Lit(a, b) => input == a && output != b,
        Rel::Eq => input != output,
        Rel::Inv => input == output,
    }
}

/// (detected, missed) by re-simulating every (vector, fault) pair.
pub fn impact(circuit: &Circuit, in_wire: usize, out_wire: usize, rel: Rel) -> (u64, u64) {
    let observed: Vec<usize> = (0..circuit.num_wires()).filter(|&w| !circuit.is_garbage(w)).collect();
    let (mut det, mut mis) = (0, 0);
    for v in vectors(circuit) {
        let gold = run(circuit, &v, None);
        for f in faults(circuit) {
            let bad = run(circuit, &v, Some(f));
            let propagated = observed.iter().any(|&w| bad[w] != gold[w]);
            let viol = violated(rel, v[in_wire], bad[out_wire]);
            if propagated && viol {
                det += 1;
            }
            if propagated && !viol {
                mis += 1;
            }
        }
    }
    (det, mis)
}

/// Every holding relation from a free input wire to any output wire, with
/// two-sided literal pairs merged into Eq/Inv.
pub fn implications(circuit: &Circuit, same_wire_only: bool) -> Vec<(usize, usize, Rel)> {
    let rows: Vec<(Vec<u8>, Vec<u8>)> = vectors(circuit).into_iter().map(|v| {
        let o = run(circuit, &v, None);
        (v, o)
    }).collect();
    let mut found = Vec::new();
    for i in 0..circuit.num_wires() {
        if circuit.constant(i).is_some() {
            continue;
        }
        for o in 0..circuit.num_wires() {
            if same_wire_only && i != o {
                continue;
            }
            let holds = |a: u8, b: u8| rows.iter().all(|(x, y)| !(x[i] == a && y[o] != b));
            let l = [[holds(0, 0), holds(0, 1)], [holds(1, 0), holds(1, 1)]];
            if l[0][0] && l[1][1] {
                found.push((i, o, Rel::Eq));
            } else if l[0][1] && l[1][0] {
                found.push((i, o, Rel::Inv));
            } else {
                for a in 0..2u8 {
                    for b in 0..2u8 {
                        if l[a as usize][b as usize] {
                            found.push((i, o, Rel::Lit(a, b)));
                        }
                    }
                }
            }
        }
    }
    found
}

pub fn to_rel(kind: revfault::implications::ImplicationKind) -> Rel {
    use revfault::implications::ImplicationKind as K;
    match kind {
        K::Literal { antecedent, consequent } => Rel::Lit(antecedent as u8, consequent as u8),
        K::Equal => Rel::Eq,
        K::Inverted => Rel::Inv,
    }
}
