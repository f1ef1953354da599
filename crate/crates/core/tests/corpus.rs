// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{corpus_circuit, corpus_dir, run, CORPUS};
use revfault::corpus::{corpus_files, load_manifest};
use revfault::engine::{simulate_exhaustive, simulate_exhaustive_packed, SimLimits};
use revfault::netlist::{parse_real, serialize_real, Circuit};

fn weight(bits: &[u8]) -> u32 {
    bits.iter().map(|&b| b as u32).sum()
}

/// Output vector for an input given as an integer, wire `i` = bit `i`.
fn eval(c: &Circuit, x: u32) -> Vec<u8> {
    let input: Vec<u8> = (0..c.num_wires()).map(|i| ((x >> i) & 1) as u8).collect();
    run(c, &input, None)
}

#[test]
fn manifest_matches_files() {
    let m = load_manifest(&corpus_dir()).unwrap().unwrap();
    let names: Vec<&str> = m.circuits.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names, CORPUS);
    for e in &m.circuits {
        let c = corpus_circuit(&e.name);
        assert_eq!(c.name(), e.name);
        assert_eq!((c.num_gates(), c.num_wires(), c.num_garbage()), (e.gates, e.wires, e.garbage), "{}", e.name);
        assert!(c.constants().iter().all(Option::is_none));
    }
    assert_eq!(corpus_files(&corpus_dir()).unwrap().len(), 10);
}

#[test]
fn corpus_round_trips() {
    for name in CORPUS {
        let c = corpus_circuit(name);
        let back = parse_real(&serialize_real(&c)).unwrap().named(name);
        assert_eq!(back, c, "{name}");
    }
}

#[test]
fn packed_equals_naive_and_outputs_are_distinct() {
    let lim = SimLimits::default();
    for name in CORPUS {
        let c = corpus_circuit(name);
        let packed = simulate_exhaustive_packed(&c, &lim).unwrap();
        assert_eq!(packed, simulate_exhaustive(&c, &lim).unwrap(), "{name}");
        assert!(packed.outputs_distinct(), "{name}");
        assert_eq!(packed.rows(), 1 << c.num_wires());
    }
}

#[test]
fn rd32_is_a_full_adder() {
    let c = corpus_circuit("rd32");
    for x in 0..16u32 {
        let i: Vec<u8> = (0..4).map(|k| ((x >> k) & 1) as u8).collect();
        let o = eval(&c, x);
        let (a, b, cin, d) = (i[0], i[1], i[2], i[3]);
        assert_eq!(o[0], a);
        assert_eq!(o[1], a ^ b);
        assert_eq!(o[2], (a + b + cin) % 2);
        assert_eq!(o[3], d ^ u8::from(a + b + cin >= 2));
    }
}

#[test]
fn rd53_counts_ones() {
    let c = corpus_circuit("rd53-130");
    for x in 0..128u32 {
        let i: Vec<u8> = (0..7).map(|k| ((x >> k) & 1) as u8).collect();
        let w = weight(&i[..5]);
        let o = eval(&c, x);
        assert_eq!(o[4], (w & 1) as u8);
        assert_eq!(o[5], i[5] ^ ((w >> 1) & 1) as u8);
        assert_eq!(o[6], i[6] ^ ((w >> 2) & 1) as u8);
    }
}

#[test]
fn rd84_counts_ones_with_clean_ancillas() {
    let c = corpus_circuit("rd84-143");
    for x in 0..256u32 {
        let w = x.count_ones();
        let o = eval(&c, x);
        // x7, a2, a4, a5 carry weight bits 0..3
        let got = o[7] as u32 | (o[10] as u32) << 1 | (o[12] as u32) << 2 | (o[13] as u32) << 3;
        assert_eq!(got, w, "input {x:08b}");
        assert_eq!(o[14], 0);
    }
}

#[test]
fn sym6_flags_weight_two_to_four() {
    let c = corpus_circuit("sym6-145");
    for x in 0..128u32 {
        let w = (x & 0x3f).count_ones();
        let o = eval(&c, x);
        assert_eq!(o[6], ((x >> 6) & 1) as u8 ^ u8::from((2..=4).contains(&w)));
        assert_eq!(&o[..6], &(0..6).map(|k| ((x >> k) & 1) as u8).collect::<Vec<_>>()[..]);
    }
}

#[test]
fn gt4_compares_against_four() {
    let c = corpus_circuit("4gt4-v0-73");
    for x in 0..32u32 {
        let i: Vec<u8> = (0..5).map(|k| ((x >> k) & 1) as u8).collect();
        let value = (i[0] as u32) << 3 | (i[1] as u32) << 2 | (i[2] as u32) << 1 | i[3] as u32;
        assert_eq!(eval(&c, x)[4], i[4] ^ u8::from(value > 4));
    }
}

#[test]
fn ninesym_flags_weight_three_to_six() {
    let c = corpus_circuit("9symd2");
    // x0, a0, a1, a2 start at 0; x1..x8 free
    for y in 0..256u32 {
        let x = y << 1;
        let o = eval(&c, x);
        let w = y.count_ones();
        assert_eq!(o[10], u8::from((3..=6).contains(&w)), "weight {w}");
    }
}

#[test]
fn hwb6_rotates_by_weight() {
    let c = corpus_circuit("hwb6-56");
    for x in 0..64u32 {
        let w = x.count_ones() % 6;
        let want = if w == 0 { x } else { ((x << w) | (x >> (6 - w))) & 63 };
        let o = eval(&c, x);
        let got = (0..6).fold(0, |acc, k| acc | (o[k] as u32) << k);
        assert_eq!(got, want, "input {x:06b}");
    }
}

#[test]
fn zero_garbage_circuits_have_no_placements() {
    use revfault::implications::{placements, GateLibrary};
    for name in ["ckt1-149", "hwb6-56"] {
        assert!(placements(&corpus_circuit(name), &GateLibrary::default()).is_empty());
    }
}
