// SPDX-License-Identifier: Apache-2.0

//! Invariant relations between an input site and an output site.
//!
//! Natural implications are read straight off the exhaustive truth table.
//! Artificial ones come from appending a single extra gate on garbage wires
//! and keeping whatever relations the base circuit did not already have.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::packed::apply_gate_packed;
use crate::engine::TruthTable;
use crate::netlist::{Circuit, Gate, GateTemplate, Wire};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ImplicationKind {
    /// `input = antecedent` forces `output = consequent`.
    Literal { antecedent: bool, consequent: bool },
    /// Output always equals input.
    Equal,
    /// Output is always the complement of input.
    Inverted,
}

impl ImplicationKind {
    /// Whether one (input bit, output bit) observation contradicts the relation.
    pub fn violated_by(self, input: bool, output: bool) -> bool {
        match self {
            ImplicationKind::Literal { antecedent, consequent } => input == antecedent && output != consequent,
            ImplicationKind::Equal => input != output,
            ImplicationKind::Inverted => input == output,
        }
    }

    /// Lane-wise [`violated_by`](Self::violated_by) over 64 observations.
    pub fn violation_mask(self, input: u64, output: u64) -> u64 {
        match self {
            ImplicationKind::Literal { antecedent, consequent } => {
                let hit = if antecedent { input } else { !input };
                let bad = if consequent { !output } else { output };
                hit & bad
            }
            ImplicationKind::Equal => input ^ output,
            ImplicationKind::Inverted => !(input ^ output),
        }
    }

    fn canonical(self) -> String {
        match self {
            ImplicationKind::Literal { antecedent, consequent } => {
                format!("lit{}{}", antecedent as u8, consequent as u8)
            }
            ImplicationKind::Equal => "eq".into(),
            ImplicationKind::Inverted => "inv".into(),
        }
    }
}

/// A relation from free input wire `in_wire` to output wire `out_wire`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Implication {
    pub in_wire: Wire,
    pub out_wire: Wire,
    pub kind: ImplicationKind,
}

fn input_label(circuit: &Circuit, w: Wire) -> &str {
    circuit.input_labels().map_or(circuit.label(w), |l| l[w].as_str())
}

fn output_label(circuit: &Circuit, w: Wire) -> &str {
    circuit.output_labels().map_or(circuit.label(w), |l| l[w].as_str())
}

impl Implication {
    pub fn new(in_wire: Wire, out_wire: Wire, kind: ImplicationKind) -> Self {
        Implication { in_wire, out_wire, kind }
    }

    pub fn equal(in_wire: Wire, out_wire: Wire) -> Self {
        Self::new(in_wire, out_wire, ImplicationKind::Equal)
    }

    pub fn inverted(in_wire: Wire, out_wire: Wire) -> Self {
        Self::new(in_wire, out_wire, ImplicationKind::Inverted)
    }

    pub fn literal(in_wire: Wire, antecedent: bool, out_wire: Wire, consequent: bool) -> Self {
        Self::new(in_wire, out_wire, ImplicationKind::Literal { antecedent, consequent })
    }

    /// Report form, e.g. `in:b=0/1 => out:a=0/1` or `in:c=1 => out:d=0`.
    pub fn report_text(&self, circuit: &Circuit) -> String {
        let (lhs, rhs) = match self.kind {
            ImplicationKind::Literal { antecedent, consequent } => {
                ((antecedent as u8).to_string(), (consequent as u8).to_string())
            }
            ImplicationKind::Equal => ("0/1".into(), "0/1".into()),
            ImplicationKind::Inverted => ("0/1".into(), "~".into()),
        };
        format!(
            "in:{}={lhs} => out:{}={rhs}",
            input_label(circuit, self.in_wire),
            output_label(circuit, self.out_wire)
        )
    }

    /// Human form, e.g. `(b=0/1) ⟹ (q=0/1)`.
    pub fn notation(&self, circuit: &Circuit) -> String {
        let (lhs, rhs) = match self.kind {
            ImplicationKind::Literal { antecedent, consequent } => {
                ((antecedent as u8).to_string(), (consequent as u8).to_string())
            }
            ImplicationKind::Equal => ("0/1".into(), "0/1".into()),
            ImplicationKind::Inverted => ("0/1".into(), "1/0".into()),
        };
        format!(
            "({}={lhs}) \u{27f9} ({}={rhs})",
            input_label(circuit, self.in_wire),
            output_label(circuit, self.out_wire)
        )
    }

    /// Stable content hash of the relation and, for artificial findings, the
    /// placement that produced it.
    pub fn id(&self, placement: Option<&Placement>) -> String {
        let mut canon = format!("in={};out={};kind={}", self.in_wire, self.out_wire, self.kind.canonical());
        match placement {
            Some(p) => canon.push_str(&format!(";placement={}", p.canonical())),
            None => canon.push_str(";placement=none"),
        }
        let digest = Sha256::digest(canon.as_bytes());
        digest[..6].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Which (input, output) wire pairs are considered as implication sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum SiteScope {
    /// Any free input wire against any output wire.
    #[default]
    AllPairs,
    /// Only an input wire against the output of the same wire.
    SameWire,
}

impl SiteScope {
    pub fn admits(self, in_wire: Wire, out_wire: Wire) -> bool {
        match self {
            SiteScope::AllPairs => true,
            SiteScope::SameWire => in_wire == out_wire,
        }
    }
}

impl FromStr for SiteScope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" | "all-pairs" | "allpairs" => Ok(SiteScope::AllPairs),
            "same" | "same-wire" | "samewire" => Ok(SiteScope::SameWire),
            other => Err(format!("unknown site scope `{other}` (expected all-pairs or same-wire)")),
        }
    }
}

impl fmt::Display for SiteScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SiteScope::AllPairs => "all-pairs",
            SiteScope::SameWire => "same-wire",
        })
    }
}

/// A candidate gate bound to an ordered tuple of garbage wires.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub template: GateTemplate,
    pub wires: Vec<Wire>,
}

impl Placement {
    pub fn gate(&self) -> Gate {
        self.template.instantiate(&self.wires).expect("placement arity is checked on construction")
    }

    /// `.real`-style gate line, e.g. `t2 a b`.
    pub fn describe(&self, circuit: &Circuit) -> String {
        let mut s = self.template.mnemonic();
        for &w in &self.wires {
            s.push(' ');
            s.push_str(circuit.label(w));
        }
        s
    }

    fn canonical(&self) -> String {
        format!("{}:{}", self.template.mnemonic(), self.wires.iter().join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtificialFinding {
    pub placement: Placement,
    pub new_implications: Vec<Implication>,
}

/// Candidate gates tried by the artificial search, in search order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateLibrary(Vec<GateTemplate>);

impl Default for GateLibrary {
    /// CNOT, 3-wire Toffoli, 3-wire Fredkin, Peres, Feynman-double.
    fn default() -> Self {
        GateLibrary(vec![
            GateTemplate::CNOT,
            GateTemplate::TOFFOLI3,
            GateTemplate::FREDKIN3,
            GateTemplate::Peres,
            GateTemplate::FeynmanDouble,
        ])
    }
}

impl GateLibrary {
    pub fn new(templates: Vec<GateTemplate>) -> Self {
        let mut seen = HashSet::new();
        GateLibrary(templates.into_iter().filter(|t| seen.insert(*t)).collect())
    }

    pub fn templates(&self) -> &[GateTemplate] {
        &self.0
    }
}

impl FromStr for GateLibrary {
    type Err = String;
    /// Comma-separated template names, e.g. `cnot,t3,p3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let templates = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<GateTemplate>, _>>()?;
        if templates.is_empty() {
            return Err("gate library is empty".into());
        }
        Ok(GateLibrary::new(templates))
    }
}

/// True iff no row of `table` contradicts `imp`.
pub fn implication_holds(table: &TruthTable, imp: &Implication) -> bool {
    let ins = table.input_column(imp.in_wire);
    let outs = table.output_column(imp.out_wire);
    (0..table.words()).all(|i| imp.kind.violation_mask(ins[i], outs[i]) & table.valid_mask(i) == 0)
}

/// Holding relations for one wire pair, coalesced.
fn pair_implications(table: &TruthTable, in_wire: Wire, out_wire: Wire, out: &mut Vec<Implication>) {
    let mut holds = [[true; 2]; 2];
    let ins = table.input_column(in_wire);
    let outs = table.output_column(out_wire);
    for i in 0..table.words() {
        let m = table.valid_mask(i);
        for a in [false, true] {
            for b in [false, true] {
                let kind = ImplicationKind::Literal { antecedent: a, consequent: b };
                if kind.violation_mask(ins[i], outs[i]) & m != 0 {
                    holds[a as usize][b as usize] = false;
                }
            }
        }
    }
    if holds[0][0] && holds[1][1] {
        out.push(Implication::equal(in_wire, out_wire));
    } else if holds[0][1] && holds[1][0] {
        out.push(Implication::inverted(in_wire, out_wire));
    } else {
        for a in [false, true] {
            for b in [false, true] {
                if holds[a as usize][b as usize] {
                    out.push(Implication::literal(in_wire, a, out_wire, b));
                }
            }
        }
    }
}

fn scan(table: &TruthTable, scope: SiteScope, out_wires: &[Wire]) -> Vec<Implication> {
    let mut found = Vec::new();
    for &iw in table.free_wires() {
        for &ow in out_wires {
            if scope.admits(iw, ow) {
                pair_implications(table, iw, ow, &mut found);
            }
        }
    }
    found.sort();
    found
}

/// Every holding implication from a free input wire to any output wire.
pub fn discover_natural(table: &TruthTable, circuit: &Circuit) -> Vec<Implication> {
    discover_natural_scoped(table, circuit, SiteScope::AllPairs)
}

pub fn discover_natural_scoped(table: &TruthTable, circuit: &Circuit, scope: SiteScope) -> Vec<Implication> {
    debug_assert_eq!(table.num_wires(), circuit.num_wires());
    let outs: Vec<Wire> = (0..circuit.num_wires()).collect();
    scan(table, scope, &outs)
}

/// Every placement of every library gate on an ordered tuple of distinct
/// garbage wires, in search order.
pub fn placements(circuit: &Circuit, library: &GateLibrary) -> Vec<Placement> {
    let garbage = circuit.garbage_wires();
    let mut out = Vec::new();
    for &t in library.templates() {
        if t.arity() > garbage.len() {
            continue;
        }
        for wires in garbage.iter().copied().permutations(t.arity()) {
            out.push(Placement { template: t, wires });
        }
    }
    out
}

/// Truth table of `circuit` followed by `gate`, derived from the base table.
pub fn appended_table(table: &TruthTable, gate: &Gate) -> TruthTable {
    let w = table.num_wires();
    let words = table.words();
    let mut outputs: Vec<Vec<u64>> = (0..w).map(|x| table.output_column(x).to_vec()).collect();
    let mut state = vec![0u64; w];
    for i in 0..words {
        for (s, col) in state.iter_mut().zip(&outputs) {
            *s = col[i];
        }
        apply_gate_packed(&mut state, gate);
        let m = table.valid_mask(i);
        for (s, col) in state.iter().zip(outputs.iter_mut()) {
            col[i] = s & m;
        }
    }
    let inputs = (0..w).map(|x| table.input_column(x).to_vec()).collect();
    TruthTable::from_columns(w, table.free_wires().to_vec(), table.rows(), inputs, outputs)
}

fn output_digest(table: &TruthTable) -> [u8; 32] {
    let mut h = Sha256::new();
    for x in 0..table.num_wires() {
        for word in table.output_column(x) {
            h.update(word.to_le_bytes());
        }
    }
    h.finalize().into()
}

/// Single-gate append search over garbage wires.
///
/// `table` must be the base circuit's exhaustive table. Placements whose
/// appended circuit computes the same output table as an earlier placement
/// are skipped. Findings without new implications are omitted.
pub fn discover_artificial(
    circuit: &Circuit,
    table: &TruthTable,
    library: &GateLibrary,
    scope: SiteScope,
) -> Vec<ArtificialFinding> {
    let base: BTreeSet<Implication> = discover_natural_scoped(table, circuit, scope).into_iter().collect();
    let candidates = placements(circuit, library);
    let evaluated: Vec<([u8; 32], Vec<Implication>)> = candidates
        .par_iter()
        .map(|p| {
            let gate = p.gate();
            let t = appended_table(table, &gate);
            let mut written = gate.written_wires();
            written.sort_unstable();
            let new = scan(&t, scope, &written).into_iter().filter(|i| !base.contains(i)).collect();
            (output_digest(&t), new)
        })
        .collect();
    let mut seen = HashSet::new();
    candidates
        .into_iter()
        .zip(evaluated)
        .filter(|(_, (digest, _))| seen.insert(*digest))
        .filter(|(_, (_, new))| !new.is_empty())
        .map(|(placement, (_, new_implications))| ArtificialFinding { placement, new_implications })
        .collect()
}

/// Total implication count of a finding list.
pub fn count_artificial(findings: &[ArtificialFinding]) -> usize {
    findings.iter().map(|f| f.new_implications.len()).sum()
}
