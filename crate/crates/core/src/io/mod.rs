//! Text formats, gate conversion, random circuits and JSON output.

pub mod gates;
pub mod json;
pub mod random;
pub mod text;

pub use gates::{convert_gates, parse_gate_circuit, GateKind, GateOp};
pub use json::{parse_layout_json, schedule_to_json};
pub use random::{gen_random, RandomSpec};
pub use text::{emit_circuit, parse_rotation_circuit};

use crate::error::Result;
use crate::pauli::{Circuit, RotationAngle};

/// Which text format a circuit file uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitFormat {
    Rotations,
    Gates,
}

/// Guesses the format from the first operation line; files without
/// operations read the same either way.
pub fn detect_format(text: &str) -> CircuitFormat {
    let first = text::content_lines(text)
        .nth(1)
        .and_then(|(_, body)| body.split_whitespace().next());
    match first {
        Some(tok) if RotationAngle::from_token(tok).is_none() && GateKind::from_name(tok).is_some() => {
            CircuitFormat::Gates
        }
        _ => CircuitFormat::Rotations,
    }
}

/// Parses either format; gate circuits are converted to rotations.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    match detect_format(text) {
        CircuitFormat::Rotations => parse_rotation_circuit(text),
        CircuitFormat::Gates => {
            let (n, g) = parse_gate_circuit(text)?;
            convert_gates(&g, n)
        }
    }
}
