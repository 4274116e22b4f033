//! Clifford+T gate lists and their conversion to Pauli rotations.
//!
//! Every rotation means `exp(iθP)` and sequences are listed in time order.
//! Each gate's sequence reproduces the gate's matrix up to a global phase;
//! the tests check this against dense matrices.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::io::text::{content_lines, parse_header};
use crate::pauli::{Circuit, Pauli, PauliString, RotationAngle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
}

impl GateKind {
    pub const ALL: [GateKind; 9] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cnot,
    ];

    pub fn arity(self) -> usize {
        if self == GateKind::Cnot {
            2
        } else {
            1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::T => "T",
            GateKind::Tdg => "Tdg",
            GateKind::Cnot => "CNOT",
        }
    }

    /// Case-insensitive; `CX` is accepted for `CNOT`.
    pub fn from_name(name: &str) -> Option<Self> {
        let upper = name.to_ascii_uppercase();
        match upper.as_str() {
            "CX" => Some(GateKind::Cnot),
            _ => GateKind::ALL
                .into_iter()
                .find(|k| k.name().eq_ignore_ascii_case(&upper)),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateOp {
    pub kind: GateKind,
    pub targets: Vec<usize>,
}

impl GateOp {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self> {
        if targets.len() != kind.arity() {
            return Err(Error::Validation(format!(
                "{kind} takes {} target(s), got {}",
                kind.arity(),
                targets.len()
            )));
        }
        if kind == GateKind::Cnot && targets[0] == targets[1] {
            return Err(Error::Validation(format!(
                "CNOT control and target are both qubit {}",
                targets[0]
            )));
        }
        Ok(GateOp { kind, targets })
    }

    pub fn single(kind: GateKind, q: usize) -> Result<Self> {
        Self::new(kind, vec![q])
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cnot, vec![control, target])
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

/// Parses `qubits <N>` followed by `<GATE> <q>[ <q2>]` lines.
pub fn parse_gate_circuit(text: &str) -> Result<(usize, Vec<GateOp>)> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut gates = Vec::new();
    for (line, body) in lines {
        let mut tok = body.split_whitespace();
        let name = tok.next().unwrap_or_default();
        let kind = GateKind::from_name(name)
            .ok_or_else(|| Error::parse(line, format!("unknown gate {name:?}")))?;
        let targets = tok
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("invalid qubit index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(&q) = targets.iter().find(|&&q| q >= n) {
            return Err(Error::parse(line, format!("qubit {q} out of range for {n} qubits")));
        }
        gates.push(GateOp::new(kind, targets).map_err(|e| Error::parse(line, e.to_string()))?);
    }
    Ok((n, gates))
}

pub fn emit_gate_circuit(n: usize, gates: &[GateOp]) -> String {
    let mut s = format!("qubits {n}\n");
    for g in gates {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

/// Rotation sequence, in time order, for one gate.
pub fn gate_rotations(g: &GateOp, n: usize) -> Result<Vec<(RotationAngle, PauliString)>> {
    use RotationAngle::*;
    if let Some(&q) = g.targets.iter().find(|&&q| q >= n) {
        return Err(Error::Validation(format!(
            "{} targets qubit {q}, circuit has {n}",
            g.kind
        )));
    }
    let on = |q: usize, p: Pauli| PauliString::single(n, q, p);
    let q = g.targets[0];
    Ok(match g.kind {
        GateKind::X => vec![(PlusPi2, on(q, Pauli::X))],
        GateKind::Y => vec![(PlusPi2, on(q, Pauli::Y))],
        GateKind::Z => vec![(PlusPi2, on(q, Pauli::Z))],
        GateKind::S => vec![(MinusPi4, on(q, Pauli::Z))],
        GateKind::Sdg => vec![(PlusPi4, on(q, Pauli::Z))],
        GateKind::T => vec![(MinusPi8, on(q, Pauli::Z))],
        GateKind::Tdg => vec![(PlusPi8, on(q, Pauli::Z))],
        GateKind::H => vec![
            (PlusPi4, on(q, Pauli::Z)),
            (PlusPi4, on(q, Pauli::X)),
            (PlusPi4, on(q, Pauli::Z)),
        ],
        GateKind::Cnot => {
            let t = g.targets[1];
            let mut zx = on(q, Pauli::Z);
            zx.set(t, Pauli::X);
            vec![
                (PlusPi4, zx),
                (MinusPi4, on(q, Pauli::Z)),
                (MinusPi4, on(t, Pauli::X)),
            ]
        }
    })
}

/// Replaces every gate by its rotation sequence.
pub fn convert_gates(gates: &[GateOp], n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n);
    for g in gates {
        for (angle, pauli) in gate_rotations(g, n)? {
            c.push(angle, pauli)?;
        }
    }
    Ok(c)
}

/// Uniformly random Clifford+T gates; CNOT only when `n >= 2`.
pub fn random_gate_list(n: usize, len: usize, rng: &mut impl Rng) -> Vec<GateOp> {
    let kinds: &[GateKind] = if n >= 2 {
        &GateKind::ALL
    } else {
        &GateKind::ALL[..8]
    };
    (0..len)
        .map(|_| {
            let kind = kinds[rng.random_range(0..kinds.len())];
            let q = rng.random_range(0..n);
            if kind == GateKind::Cnot {
                let t = (q + rng.random_range(1..n)) % n;
                GateOp { kind, targets: vec![q, t] }
            } else {
                GateOp { kind, targets: vec![q] }
            }
        })
        .collect()
}
