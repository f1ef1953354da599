// SPDX-License-Identifier: Apache-2.0

//! Reversible netlists: the circuit model, the `.real` text format, the
//! single stuck-at fault universe and garbage-only gate appending.

mod gate;
mod real;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use gate::{Gate, GateError, GateTemplate, Wire};
pub use real::{load_real, parse_real, serialize_real, LoadError, ParseError, ParseErrorKind};

/// A cascade of reversible gates over `num_wires` lines.
///
/// Lines carry an optional constant input value and a garbage-output flag.
/// Values are immutable once built; [`append_gate`] returns a new circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    name: String,
    version: Option<String>,
    wire_labels: Vec<String>,
    input_labels: Option<Vec<String>>,
    output_labels: Option<Vec<String>>,
    constants: Vec<Option<bool>>,
    garbage: Vec<bool>,
    gates: Vec<Gate>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("wire label `{0}` is declared twice")]
    DuplicateLabel(String),
    #[error("wire label `{0}` is not a valid identifier")]
    BadLabel(String),
    #[error("{what} has {got} entries but the circuit has {expected} wires")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },
    #[error("gate {index}: {source}")]
    Gate { index: usize, source: GateError },
}

impl Circuit {
    /// Builds a circuit with every input free and no garbage outputs.
    pub fn new(
        wire_labels: impl IntoIterator<Item = impl Into<String>>,
        gates: Vec<Gate>,
    ) -> Result<Self, CircuitError> {
        let wire_labels: Vec<String> = wire_labels.into_iter().map(Into::into).collect();
        let w = wire_labels.len();
        Self::from_parts(CircuitParts {
            wire_labels,
            constants: vec![None; w],
            garbage: vec![false; w],
            gates,
            ..CircuitParts::default()
        })
    }

    /// Builds a circuit with single-letter labels `a`, `b`, ... (then `w26`, ...).
    pub fn with_default_labels(num_wires: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        Self::new(default_labels(num_wires), gates)
    }

    pub fn from_parts(parts: CircuitParts) -> Result<Self, CircuitError> {
        let w = parts.wire_labels.len();
        let mut seen = HashSet::new();
        for label in &parts.wire_labels {
            if !is_identifier(label) {
                return Err(CircuitError::BadLabel(label.clone()));
            }
            if !seen.insert(label.as_str()) {
                return Err(CircuitError::DuplicateLabel(label.clone()));
            }
        }
        let check_len = |what, got| {
            if got == w {
                Ok(())
            } else {
                Err(CircuitError::LengthMismatch { what, expected: w, got })
            }
        };
        check_len("constants", parts.constants.len())?;
        check_len("garbage", parts.garbage.len())?;
        if let Some(l) = &parts.input_labels {
            check_len("inputs", l.len())?;
        }
        if let Some(l) = &parts.output_labels {
            check_len("outputs", l.len())?;
        }
        for (index, g) in parts.gates.iter().enumerate() {
            g.check(w).map_err(|source| CircuitError::Gate { index, source })?;
        }
        Ok(Circuit {
            name: parts.name,
            version: parts.version,
            wire_labels: parts.wire_labels,
            input_labels: parts.input_labels,
            output_labels: parts.output_labels,
            constants: parts.constants,
            garbage: parts.garbage,
            gates: parts.gates,
        })
    }

    pub fn into_parts(self) -> CircuitParts {
        CircuitParts {
            name: self.name,
            version: self.version,
            wire_labels: self.wire_labels,
            input_labels: self.input_labels,
            output_labels: self.output_labels,
            constants: self.constants,
            garbage: self.garbage,
            gates: self.gates,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_garbage(mut self, garbage: Vec<bool>) -> Result<Self, CircuitError> {
        if garbage.len() != self.num_wires() {
            return Err(CircuitError::LengthMismatch { what: "garbage", expected: self.num_wires(), got: garbage.len() });
        }
        self.garbage = garbage;
        Ok(self)
    }

    pub fn with_constants(mut self, constants: Vec<Option<bool>>) -> Result<Self, CircuitError> {
        if constants.len() != self.num_wires() {
            return Err(CircuitError::LengthMismatch {
                what: "constants",
                expected: self.num_wires(),
                got: constants.len(),
            });
        }
        self.constants = constants;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn version(&self) -> Option<&str> {
        self.version.as_deref()
    }

    pub fn num_wires(&self) -> usize {
        self.wire_labels.len()
    }

    pub fn num_gates(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn wire_labels(&self) -> &[String] {
        &self.wire_labels
    }

    pub fn label(&self, wire: Wire) -> &str {
        &self.wire_labels[wire]
    }

    pub fn wire_index(&self, label: &str) -> Option<Wire> {
        self.wire_labels.iter().position(|l| l == label)
    }

    pub fn input_labels(&self) -> Option<&[String]> {
        self.input_labels.as_deref()
    }

    pub fn output_labels(&self) -> Option<&[String]> {
        self.output_labels.as_deref()
    }

    pub fn constants(&self) -> &[Option<bool>] {
        &self.constants
    }

    pub fn constant(&self, wire: Wire) -> Option<bool> {
        self.constants[wire]
    }

    pub fn garbage(&self) -> &[bool] {
        &self.garbage
    }

    pub fn is_garbage(&self, wire: Wire) -> bool {
        self.garbage[wire]
    }

    pub fn garbage_wires(&self) -> Vec<Wire> {
        (0..self.num_wires()).filter(|&w| self.garbage[w]).collect()
    }

    pub fn num_garbage(&self) -> usize {
        self.garbage.iter().filter(|&&g| g).count()
    }

    /// Wires without a fixed constant input, in index order.
    pub fn free_wires(&self) -> Vec<Wire> {
        (0..self.num_wires()).filter(|&w| self.constants[w].is_none()).collect()
    }

    pub fn num_free_inputs(&self) -> usize {
        self.constants.iter().filter(|c| c.is_none()).count()
    }

    /// Wires that no gate can write, so their output always equals their input.
    pub fn untouched_wires(&self) -> Vec<Wire> {
        let mut written = vec![false; self.num_wires()];
        for g in &self.gates {
            for w in g.written_wires() {
                written[w] = true;
            }
        }
        (0..self.num_wires()).filter(|&w| !written[w]).collect()
    }
}

/// Unvalidated field bundle for [`Circuit::from_parts`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircuitParts {
    pub name: String,
    pub version: Option<String>,
    pub wire_labels: Vec<String>,
    pub input_labels: Option<Vec<String>>,
    pub output_labels: Option<Vec<String>>,
    pub constants: Vec<Option<bool>>,
    pub garbage: Vec<bool>,
    pub gates: Vec<Gate>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with(['.', '#', '-'])
        && s.chars().all(|c| !c.is_whitespace() && !c.is_control())
}

pub fn default_labels(num_wires: usize) -> Vec<String> {
    (0..num_wires)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("w{i}") })
        .collect()
}

/// A single stuck-at fault forced onto `wire` immediately before gate
/// `position`. The value then propagates normally through the rest of the
/// cascade; it is not re-forced later.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fault {
    pub position: usize,
    pub wire: Wire,
    pub stuck: bool,
}

/// Every stuck-at-0/1 fault on every wire before every gate, ordered by
/// position, then wire, then stuck value. Length is `G * W * 2`; there is no
/// site after the last gate.
pub fn fault_universe(circuit: &Circuit) -> Vec<Fault> {
    let (g, w) = (circuit.num_gates(), circuit.num_wires());
    let mut faults = Vec::with_capacity(g * w * 2);
    for position in 0..g {
        for wire in 0..w {
            for stuck in [false, true] {
                faults.push(Fault { position, wire, stuck });
            }
        }
    }
    faults
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AppendError {
    #[error("{template} needs {arity} garbage wires but the circuit only has {available}")]
    NotEnoughGarbage { template: GateTemplate, arity: usize, available: usize },
    #[error("wire {0} is not a garbage output; appended gates may only touch garbage wires")]
    NotGarbage(Wire),
    #[error(transparent)]
    Gate(#[from] GateError),
}

/// Appends one gate at the end of the cascade, touching garbage wires only.
///
/// The original circuit is left as is; annotations carry over unchanged.
pub fn append_gate(circuit: &Circuit, template: GateTemplate, wires: &[Wire]) -> Result<Circuit, AppendError> {
    let available = circuit.num_garbage();
    if template.arity() > available {
        return Err(AppendError::NotEnoughGarbage { template, arity: template.arity(), available });
    }
    let gate = template.instantiate(wires)?;
    gate.check(circuit.num_wires())?;
    if let Some(&w) = wires.iter().find(|&&w| !circuit.is_garbage(w)) {
        return Err(AppendError::NotGarbage(w));
    }
    let mut out = circuit.clone();
    out.gates.push(gate);
    Ok(out)
}
