//! The rotation circuit text format.
//!
//! ```text
//! qubits 4
//! pi/8 IXYI   # comments run to end of line
//! M ZZII
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::pauli::{Circuit, PauliString, RotationAngle};

/// Lines with comments stripped, blank lines dropped, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((k + 1, body))
    })
}

/// Reads the `qubits <N>` header from the first content line.
pub(crate) fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<usize> {
    let Some((line, body)) = lines.next() else {
        return Err(Error::parse(1, "missing `qubits <N>` header"));
    };
    let mut tok = body.split_whitespace();
    match (tok.next(), tok.next(), tok.next()) {
        (Some("qubits"), Some(n), None) => match n.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::parse(line, format!("invalid qubit count {n:?}"))),
        },
        _ => Err(Error::parse(line, "expected `qubits <N>` header")),
    }
}

pub fn parse_rotation_circuit(text: &str) -> Result<Circuit> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut c = Circuit::new(n);
    for (line, body) in lines {
        let mut tok = body.split_whitespace();
        let (Some(angle), Some(letters), None) = (tok.next(), tok.next(), tok.next()) else {
            return Err(Error::parse(line, "expected `<angle> <paulistring>`"));
        };
        let angle = RotationAngle::from_token(angle)
            .ok_or_else(|| Error::parse(line, format!("unknown angle {angle:?}")))?;
        let pauli =
            PauliString::from_letters(letters).map_err(|e| Error::parse(line, e.to_string()))?;
        if pauli.num_qubits() != n {
            return Err(Error::parse(
                line,
                format!(
                    "Pauli string has length {}, expected {n}",
                    pauli.num_qubits()
                ),
            ));
        }
        if pauli.is_identity() {
            return Err(Error::parse(line, "operation acts on no qubit"));
        }
        c.push(angle, pauli)?;
    }
    Ok(c)
}

/// Canonical text form; `parse_rotation_circuit(emit_circuit(c))` gives
/// back `c` with source indices renumbered from zero.
pub fn emit_circuit(c: &Circuit) -> String {
    let mut s = String::with_capacity(16 + c.len() * (c.num_qubits() + 8));
    let _ = writeln!(s, "qubits {}", c.num_qubits());
    for r in c.ops() {
        let _ = writeln!(s, "{} {}", r.angle.token(), r.pauli);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_file() {
        let c = parse_rotation_circuit("qubits 4\npi/8 IXYI\nM ZZII").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.ops()[0].pauli.support(), vec![1, 2]);
        assert_eq!(c.ops()[0].angle, RotationAngle::PlusPi8);
        assert_eq!(c.ops()[1].angle, RotationAngle::Measure);
    }

    #[test]
    fn parses_negative_quarter_turn() {
        let c = parse_rotation_circuit("qubits 2\n-pi/4 XY").unwrap();
        let r = &c.ops()[0];
        assert_eq!(r.angle, RotationAngle::MinusPi4);
        assert!(r.pauli.x_bit(0) && r.pauli.x_bit(1));
        assert!(!r.pauli.z_bit(0) && r.pauli.z_bit(1));
    }

    #[test]
    fn rejects_bad_input_with_line_numbers() {
        let cases = [
            ("qubits 2\npi/8 XYZ", 2),
            ("pi/8 XY", 1),
            ("", 1),
            ("qubits 2\n\n# note\npi/3 XY", 4),
            ("qubits 2\npi/8 XQ", 2),
            ("qubits 2\npi/8 II", 2),
            ("qubits 2\npi/8", 2),
            ("qubits 0", 1),
        ];
        for (text, want) in cases {
            match parse_rotation_circuit(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_signs() {
        let c = parse_rotation_circuit("# header\nqubits 2 # two\nM -ZZ # signed\n").unwrap();
        assert!(c.ops()[0].pauli.sign());
        assert_eq!(emit_circuit(&c), "qubits 2\nM -ZZ\n");
    }

    #[test]
    fn empty_circuit_emits_header_only() {
        assert_eq!(emit_circuit(&Circuit::new(3)), "qubits 3\n");
    }

    #[test]
    fn round_trip() {
        let text = "qubits 3\npi/8 XYZ\n-pi/8 IIZ\npi/4 XII\n-pi/4 IYI\npi/2 ZZZ\n-pi/2 XXX\nM -IZI\n";
        let c = parse_rotation_circuit(text).unwrap();
        assert_eq!(emit_circuit(&c), text);
        assert_eq!(parse_rotation_circuit(&emit_circuit(&c)).unwrap(), c);
    }
}
