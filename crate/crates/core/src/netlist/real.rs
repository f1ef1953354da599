// SPDX-License-Identifier: Apache-2.0

//! RevLib-style `.real` documents restricted to the `t<k>`, `f<k>`, `p3` and
//! `fd3` gate families. `fd3` (Feynman double) has no RevLib code of its own.

use std::fmt;
use std::path::Path;

use super::{Circuit, CircuitError, CircuitParts, Gate, Wire};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// 1-based line number, `None` for document-level problems.
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing .numvars")]
    MissingNumvars,
    #[error("missing .variables")]
    MissingVariables,
    #[error("missing .begin")]
    MissingBegin,
    #[error("missing .end")]
    MissingEnd,
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("directive `{0}` appears more than once")]
    DuplicateDirective(String),
    #[error("directive `{0}` is not allowed inside the gate block")]
    DirectiveInGateBlock(String),
    #[error("gate line outside .begin/.end: `{0}`")]
    GateOutsideBlock(String),
    #[error("unexpected content after .end: `{0}`")]
    TrailingContent(String),
    #[error("malformed {directive}: {detail}")]
    Malformed { directive: &'static str, detail: String },
    #[error(".variables declares {got} wires but .numvars is {expected}")]
    WireCountMismatch { expected: usize, got: usize },
    #[error("unknown gate mnemonic `{0}`")]
    UnknownGate(String),
    #[error("gate `{mnemonic}` expects {expected} operands, got {got}")]
    OperandCount { mnemonic: String, expected: usize, got: usize },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("variable `{0}` appears more than once in a gate")]
    DuplicateWire(String),
    #[error("negative control `{0}` is not supported")]
    NegativeControl(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line: Some(line), kind }
}

#[derive(Debug, Clone, Copy)]
enum Family {
    Toffoli,
    Fredkin,
    Peres,
    FeynmanDouble,
}

fn parse_mnemonic(m: &str) -> Option<(Family, usize)> {
    let lower = m.to_ascii_lowercase();
    if lower == "p3" {
        return Some((Family::Peres, 3));
    }
    if lower == "fd3" {
        return Some((Family::FeynmanDouble, 3));
    }
    let digits_only = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if let Some(k) = lower.strip_prefix('t').filter(|s| digits_only(s)) {
        let k: usize = k.parse().ok()?;
        return (k >= 1).then_some((Family::Toffoli, k));
    }
    if let Some(k) = lower.strip_prefix('f').filter(|s| digits_only(s)) {
        let k: usize = k.parse().ok()?;
        return (k >= 2).then_some((Family::Fredkin, k));
    }
    None
}

#[derive(PartialEq)]
enum Section {
    Header,
    Gates,
    Done,
}

/// Parses a `.real` document. The returned circuit is unnamed; see
/// [`load_real`] for file-backed parsing.
pub fn parse_real(text: &str) -> Result<Circuit, ParseError> {
    let mut version = None;
    let mut numvars: Option<(usize, usize)> = None;
    let mut variables: Option<(usize, Vec<String>)> = None;
    let mut inputs: Option<(usize, Vec<String>)> = None;
    let mut outputs: Option<(usize, Vec<String>)> = None;
    let mut constants: Option<(usize, String)> = None;
    let mut garbage: Option<(usize, String)> = None;
    let mut raw_gates: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut section = Section::Header;
    let mut seen = Vec::<String>::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap_or_default();
        let rest: Vec<String> = tokens.map(str::to_string).collect();

        if section == Section::Done {
            return Err(err(lineno, ParseErrorKind::TrailingContent(line.to_string())));
        }
        if let Some(directive) = head.strip_prefix('.') {
            let directive = directive.to_ascii_lowercase();
            match (&section, directive.as_str()) {
                (Section::Gates, "end") => {
                    section = Section::Done;
                    continue;
                }
                (Section::Gates, _) => {
                    return Err(err(lineno, ParseErrorKind::DirectiveInGateBlock(head.to_string())));
                }
                _ => {}
            }
            if seen.contains(&directive) {
                return Err(err(lineno, ParseErrorKind::DuplicateDirective(head.to_string())));
            }
            seen.push(directive.clone());
            match directive.as_str() {
                "version" => version = Some(rest.join(" ")),
                "numvars" => {
                    let n = match rest.as_slice() {
                        [n] => n.parse::<usize>().map_err(|_| {
                            err(
                                lineno,
                                ParseErrorKind::Malformed { directive: ".numvars", detail: format!("`{n}` is not a count") },
                            )
                        })?,
                        _ => {
                            return Err(err(
                                lineno,
                                ParseErrorKind::Malformed { directive: ".numvars", detail: "expected one integer".into() },
                            ))
                        }
                    };
                    numvars = Some((lineno, n));
                }
                "variables" => variables = Some((lineno, rest)),
                "inputs" => inputs = Some((lineno, rest)),
                "outputs" => outputs = Some((lineno, rest)),
                "constants" => constants = Some((lineno, rest.concat())),
                "garbage" => garbage = Some((lineno, rest.concat())),
                "begin" => section = Section::Gates,
                "end" => return Err(err(lineno, ParseErrorKind::MissingBegin)),
                _ => return Err(err(lineno, ParseErrorKind::UnknownDirective(head.to_string()))),
            }
            continue;
        }
        if section != Section::Gates {
            return Err(err(lineno, ParseErrorKind::GateOutsideBlock(line.to_string())));
        }
        raw_gates.push((lineno, head.to_string(), rest));
    }

    let (numvars_line, numvars) = numvars.ok_or(ParseError { line: None, kind: ParseErrorKind::MissingNumvars })?;
    let (vars_line, labels) = variables.ok_or(ParseError { line: None, kind: ParseErrorKind::MissingVariables })?;
    if labels.len() != numvars {
        return Err(err(vars_line.max(numvars_line), ParseErrorKind::WireCountMismatch { expected: numvars, got: labels.len() }));
    }
    for (i, l) in labels.iter().enumerate() {
        if !super::is_identifier(l) {
            return Err(err(vars_line, CircuitError::BadLabel(l.clone()).into()));
        }
        if labels[..i].contains(l) {
            return Err(err(vars_line, CircuitError::DuplicateLabel(l.clone()).into()));
        }
    }
    match section {
        Section::Header => return Err(ParseError { line: None, kind: ParseErrorKind::MissingBegin }),
        Section::Gates => return Err(ParseError { line: None, kind: ParseErrorKind::MissingEnd }),
        Section::Done => {}
    }

    let check_io = |entry: Option<(usize, Vec<String>)>, directive: &'static str| -> Result<Option<Vec<String>>, ParseError> {
        match entry {
            None => Ok(None),
            Some((line, list)) if list.len() == numvars => {
                let _ = line;
                Ok(Some(list))
            }
            Some((line, list)) => Err(err(
                line,
                ParseErrorKind::Malformed {
                    directive,
                    detail: format!("{} entries for {numvars} wires", list.len()),
                },
            )),
        }
    };
    let input_labels = check_io(inputs, ".inputs")?;
    let output_labels = check_io(outputs, ".outputs")?;

    let constants = match constants {
        None => vec![None; numvars],
        Some((line, s)) => {
            if s.chars().count() != numvars {
                return Err(err(
                    line,
                    ParseErrorKind::Malformed {
                        directive: ".constants",
                        detail: format!("length {} for {numvars} wires", s.chars().count()),
                    },
                ));
            }
            s.chars()
                .map(|c| match c {
                    '0' => Ok(Some(false)),
                    '1' => Ok(Some(true)),
                    '-' => Ok(None),
                    other => Err(err(
                        line,
                        ParseErrorKind::Malformed { directive: ".constants", detail: format!("unexpected `{other}`") },
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let garbage = match garbage {
        None => vec![false; numvars],
        Some((line, s)) => {
            if s.chars().count() != numvars {
                return Err(err(
                    line,
                    ParseErrorKind::Malformed {
                        directive: ".garbage",
                        detail: format!("length {} for {numvars} wires", s.chars().count()),
                    },
                ));
            }
            s.chars()
                .map(|c| match c {
                    '1' => Ok(true),
                    '-' => Ok(false),
                    other => Err(err(
                        line,
                        ParseErrorKind::Malformed { directive: ".garbage", detail: format!("unexpected `{other}`") },
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    let mut gates = Vec::with_capacity(raw_gates.len());
    for (line, mnemonic, operands) in raw_gates {
        let (family, k) =
            parse_mnemonic(&mnemonic).ok_or_else(|| err(line, ParseErrorKind::UnknownGate(mnemonic.clone())))?;
        if operands.len() != k {
            return Err(err(line, ParseErrorKind::OperandCount { mnemonic, expected: k, got: operands.len() }));
        }
        let mut wires: Vec<Wire> = Vec::with_capacity(k);
        for op in &operands {
            if op.starts_with('-') {
                return Err(err(line, ParseErrorKind::NegativeControl(op.clone())));
            }
            let w = labels
                .iter()
                .position(|l| l == op)
                .ok_or_else(|| err(line, ParseErrorKind::UndeclaredVariable(op.clone())))?;
            if wires.contains(&w) {
                return Err(err(line, ParseErrorKind::DuplicateWire(op.clone())));
            }
            wires.push(w);
        }
        gates.push(match family {
            Family::Toffoli => Gate::Toffoli { controls: wires[..k - 1].to_vec(), target: wires[k - 1] },
            Family::Fredkin => Gate::Fredkin { controls: wires[..k - 2].to_vec(), targets: (wires[k - 2], wires[k - 1]) },
            Family::Peres => Gate::Peres { a: wires[0], b: wires[1], c: wires[2] },
            Family::FeynmanDouble => Gate::FeynmanDouble { a: wires[0], b: wires[1], c: wires[2] },
        });
    }

    Circuit::from_parts(CircuitParts {
        name: String::new(),
        version,
        wire_labels: labels,
        input_labels,
        output_labels,
        constants,
        garbage,
        gates,
    })
    .map_err(|e| ParseError { line: None, kind: e.into() })
}

/// Canonical `.real` text. Optional header lines are emitted only when they
/// carry information, so `parse_real(serialize_real(c)) == c` for any
/// unnamed circuit.
pub fn serialize_real(circuit: &Circuit) -> String {
    let mut out = String::new();
    if let Some(v) = circuit.version() {
        out.push_str(&format!(".version {v}\n"));
    }
    out.push_str(&format!(".numvars {}\n", circuit.num_wires()));
    out.push_str(&format!(".variables {}\n", circuit.wire_labels().join(" ")));
    if let Some(l) = circuit.input_labels() {
        out.push_str(&format!(".inputs {}\n", l.join(" ")));
    }
    if let Some(l) = circuit.output_labels() {
        out.push_str(&format!(".outputs {}\n", l.join(" ")));
    }
    if circuit.constants().iter().any(Option::is_some) {
        let s: String = circuit
            .constants()
            .iter()
            .map(|c| match c {
                Some(false) => '0',
                Some(true) => '1',
                None => '-',
            })
            .collect();
        out.push_str(&format!(".constants {s}\n"));
    }
    if circuit.garbage().iter().any(|&g| g) {
        let s: String = circuit.garbage().iter().map(|&g| if g { '1' } else { '-' }).collect();
        out.push_str(&format!(".garbage {s}\n"));
    }
    out.push_str(".begin\n");
    for g in circuit.gates() {
        out.push_str(&g.mnemonic());
        for w in g.wires() {
            out.push(' ');
            out.push_str(circuit.label(w));
        }
        out.push('\n');
    }
    out.push_str(".end\n");
    out
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// Reads and parses a `.real` file, naming the circuit after the file stem.
pub fn load_real(path: impl AsRef<Path>) -> Result<Circuit, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_real(&text)
        .map(|c| c.named(name))
        .map_err(|source| LoadError::Parse { path: path.display().to_string(), source })
}
