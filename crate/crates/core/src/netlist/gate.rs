// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a circuit line. Labels are cosmetic; everything downstream
/// addresses wires by index.
pub type Wire = usize;

/// One reversible primitive acting on pairwise-distinct wires.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    /// Multiple-control Toffoli: `target ^= AND(controls)`. No controls is NOT,
    /// one control is CNOT.
    Toffoli { controls: Vec<Wire>, target: Wire },
    /// Multiple-control Fredkin: swaps the two targets when every control is 1.
    Fredkin { controls: Vec<Wire>, targets: (Wire, Wire) },
    /// `(a, b, c) -> (a, a ^ b, c ^ ab)`.
    Peres { a: Wire, b: Wire, c: Wire },
    /// `(a, b, c) -> (a, a ^ b, a ^ c)`.
    FeynmanDouble { a: Wire, b: Wire, c: Wire },
}

impl Gate {
    pub fn not(target: Wire) -> Self {
        Gate::Toffoli { controls: Vec::new(), target }
    }

    pub fn cnot(control: Wire, target: Wire) -> Self {
        Gate::Toffoli { controls: vec![control], target }
    }

    pub fn toffoli(controls: impl Into<Vec<Wire>>, target: Wire) -> Self {
        Gate::Toffoli { controls: controls.into(), target }
    }

    pub fn fredkin(controls: impl Into<Vec<Wire>>, t0: Wire, t1: Wire) -> Self {
        Gate::Fredkin { controls: controls.into(), targets: (t0, t1) }
    }

    /// All wires touched by the gate in terminal order (controls first).
    pub fn wires(&self) -> Vec<Wire> {
        match self {
            Gate::Toffoli { controls, target } => {
                let mut w = controls.clone();
                w.push(*target);
                w
            }
            Gate::Fredkin { controls, targets } => {
                let mut w = controls.clone();
                w.push(targets.0);
                w.push(targets.1);
                w
            }
            Gate::Peres { a, b, c } | Gate::FeynmanDouble { a, b, c } => vec![*a, *b, *c],
        }
    }

    /// Wires whose value the gate can change.
    pub fn written_wires(&self) -> Vec<Wire> {
        match self {
            Gate::Toffoli { target, .. } => vec![*target],
            Gate::Fredkin { targets, .. } => vec![targets.0, targets.1],
            Gate::Peres { b, c, .. } | Gate::FeynmanDouble { b, c, .. } => vec![*b, *c],
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::Toffoli { controls, .. } => controls.len() + 1,
            Gate::Fredkin { controls, .. } => controls.len() + 2,
            Gate::Peres { .. } | Gate::FeynmanDouble { .. } => 3,
        }
    }

    pub fn template(&self) -> GateTemplate {
        match self {
            Gate::Toffoli { controls, .. } => GateTemplate::Toffoli { controls: controls.len() },
            Gate::Fredkin { controls, .. } => GateTemplate::Fredkin { controls: controls.len() },
            Gate::Peres { .. } => GateTemplate::Peres,
            Gate::FeynmanDouble { .. } => GateTemplate::FeynmanDouble,
        }
    }

    /// `.real` mnemonic: `t<k>`, `f<k>`, `p3` or `fd3`.
    pub fn mnemonic(&self) -> String {
        self.template().mnemonic()
    }

    /// Checks wire bounds and pairwise distinctness.
    pub fn check(&self, num_wires: usize) -> Result<(), GateError> {
        let wires = self.wires();
        for (i, &w) in wires.iter().enumerate() {
            if w >= num_wires {
                return Err(GateError::WireOutOfRange { wire: w, num_wires });
            }
            if wires[..i].contains(&w) {
                return Err(GateError::DuplicateWire { wire: w });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GateError {
    #[error("wire {wire} is out of range for a {num_wires}-wire circuit")]
    WireOutOfRange { wire: Wire, num_wires: usize },
    #[error("wire {wire} appears more than once in one gate")]
    DuplicateWire { wire: Wire },
    #[error("gate template {template} expects {expected} wires, got {got}")]
    ArityMismatch { template: String, expected: usize, got: usize },
}

/// A gate kind with its shape fixed but no wires bound yet. Used by the
/// artificial-implication search to place candidate gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateTemplate {
    Toffoli { controls: usize },
    Fredkin { controls: usize },
    Peres,
    FeynmanDouble,
}

impl GateTemplate {
    pub const CNOT: GateTemplate = GateTemplate::Toffoli { controls: 1 };
    pub const TOFFOLI3: GateTemplate = GateTemplate::Toffoli { controls: 2 };
    pub const FREDKIN3: GateTemplate = GateTemplate::Fredkin { controls: 1 };

    pub fn arity(self) -> usize {
        match self {
            GateTemplate::Toffoli { controls } => controls + 1,
            GateTemplate::Fredkin { controls } => controls + 2,
            GateTemplate::Peres | GateTemplate::FeynmanDouble => 3,
        }
    }

    pub fn mnemonic(self) -> String {
        match self {
            GateTemplate::Peres => "p3".to_string(),
            GateTemplate::FeynmanDouble => "fd3".to_string(),
            t => match t {
                GateTemplate::Toffoli { .. } => format!("t{}", t.arity()),
                _ => format!("f{}", t.arity()),
            },
        }
    }

    /// Binds the template to concrete wires, in terminal order.
    pub fn instantiate(self, wires: &[Wire]) -> Result<Gate, GateError> {
        if wires.len() != self.arity() {
            return Err(GateError::ArityMismatch {
                template: self.mnemonic(),
                expected: self.arity(),
                got: wires.len(),
            });
        }
        let n = wires.len();
        Ok(match self {
            GateTemplate::Toffoli { .. } => Gate::Toffoli {
                controls: wires[..n - 1].to_vec(),
                target: wires[n - 1],
            },
            GateTemplate::Fredkin { .. } => Gate::Fredkin {
                controls: wires[..n - 2].to_vec(),
                targets: (wires[n - 2], wires[n - 1]),
            },
            GateTemplate::Peres => Gate::Peres { a: wires[0], b: wires[1], c: wires[2] },
            GateTemplate::FeynmanDouble => Gate::FeynmanDouble { a: wires[0], b: wires[1], c: wires[2] },
        })
    }
}

impl fmt::Display for GateTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.mnemonic())
    }
}

impl std::str::FromStr for GateTemplate {
    type Err = String;

    /// Accepts `.real` mnemonics (`t2`, `f3`, `p3`, `fd3`) and the aliases
    /// `not`, `cnot`, `toffoli`, `fredkin`, `peres`, `feynman-double`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "not" => return Ok(GateTemplate::Toffoli { controls: 0 }),
            "cnot" => return Ok(GateTemplate::CNOT),
            "toffoli" => return Ok(GateTemplate::TOFFOLI3),
            "fredkin" => return Ok(GateTemplate::FREDKIN3),
            "p3" | "peres" => return Ok(GateTemplate::Peres),
            "fd3" | "feynman-double" | "feynmandouble" => return Ok(GateTemplate::FeynmanDouble),
            _ => {}
        }
        let parse_k = |rest: &str| rest.parse::<usize>().ok();
        if let Some(k) = s.strip_prefix('t').and_then(parse_k) {
            if k >= 1 {
                return Ok(GateTemplate::Toffoli { controls: k - 1 });
            }
        }
        if let Some(k) = s.strip_prefix('f').and_then(parse_k) {
            if k >= 2 {
                return Ok(GateTemplate::Fredkin { controls: k - 2 });
            }
        }
        Err(format!("unknown gate `{s}` (expected t<k>, f<k>, p3, fd3 or an alias)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_round_trips_through_mnemonic() {
        for t in [
            GateTemplate::Toffoli { controls: 0 },
            GateTemplate::CNOT,
            GateTemplate::TOFFOLI3,
            GateTemplate::Toffoli { controls: 5 },
            GateTemplate::Fredkin { controls: 0 },
            GateTemplate::FREDKIN3,
            GateTemplate::Peres,
            GateTemplate::FeynmanDouble,
        ] {
            assert_eq!(t.mnemonic().parse::<GateTemplate>().unwrap(), t);
        }
        assert!("q3".parse::<GateTemplate>().is_err());
        assert!("f1".parse::<GateTemplate>().is_err());
    }

    #[test]
    fn instantiate_places_terminals_in_order() {
        assert_eq!(GateTemplate::TOFFOLI3.instantiate(&[4, 1, 2]).unwrap(), Gate::toffoli(vec![4, 1], 2));
        assert_eq!(GateTemplate::FREDKIN3.instantiate(&[0, 1, 2]).unwrap(), Gate::fredkin(vec![0], 1, 2));
        assert!(matches!(
            GateTemplate::CNOT.instantiate(&[0, 1, 2]),
            Err(GateError::ArityMismatch { expected: 2, got: 3, .. })
        ));
    }

    #[test]
    fn check_rejects_repeats_and_range() {
        assert!(Gate::cnot(0, 0).check(2).is_err());
        assert!(Gate::cnot(0, 2).check(2).is_err());
        assert!(Gate::Peres { a: 0, b: 1, c: 2 }.check(3).is_ok());
    }

    #[test]
    fn arity_matches_wire_count() {
        let g = Gate::fredkin(vec![0, 1], 2, 3);
        assert_eq!(g.arity(), g.wires().len());
        assert_eq!(g.written_wires(), vec![2, 3]);
        assert_eq!(g.mnemonic(), "f4");
        assert_eq!(Gate::not(0).mnemonic(), "t1");
    }
}
