//! Removal of Clifford rotations from a rotation circuit.
//!
//! Every Clifford rotation is commuted to the end of the circuit. The
//! non-Clifford rotations and measurements it passes are conjugated on the
//! way, so the result is a pure π/8 + measurement sequence followed by a
//! single terminal Clifford, held as a tableau.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pauli::{Circuit, Rotation, RotationAngle};
use crate::tableau::CliffordTableau;

/// Splits `c` into a π/8 + measurement circuit and a terminal Clifford `C`
/// such that `c = C · output` as unitaries.
///
/// Two tableaux are maintained: the terminal Clifford, extended on the
/// left, and its inverse, extended on the right. A later operation `P`
/// is emitted as `C†·P·C` using the inverse. Each Clifford costs one
/// update of each tableau, so the pass is linear in the circuit length for
/// a fixed qubit count.
pub fn transpile(c: &Circuit) -> Result<(Circuit, CliffordTableau)> {
    let n = c.num_qubits();
    let mut inverse = CliffordTableau::identity(n)?;
    let mut terminal = CliffordTableau::identity(n)?;
    let mut out = Vec::with_capacity(c.len());
    for r in c.ops() {
        if r.angle.is_clifford() {
            inverse.apply_rotation_right(r.angle.negated(), &r.pauli)?;
            terminal.apply_rotation_left(r.angle, &r.pauli)?;
            continue;
        }
        let pauli = inverse.conjugate(&r.pauli)?;
        out.push(Rotation::new(r.angle, pauli, r.source_index).fold_sign());
    }
    Ok((Circuit::from_ops(n, out)?, terminal))
}

/// Combines π/8 rotations on the same Pauli inside greedy commuting layers.
///
/// A layer grows while each new rotation commutes with all members; the
/// first rotation that does not, or any measurement, closes it. Inside a
/// layer every group of rotations on identical letters collapses to its net
/// eighth-turn count `k mod 8`, emitted at the group's first position as a
/// Clifford part (π/4 or π/2) followed by at most one π/8 remainder.
pub fn merge_commuting_layers(c: &Circuit) -> Result<Circuit> {
    if let Some(r) = c
        .ops()
        .iter()
        .find(|r| !(r.angle.is_pi8() || r.angle.is_measurement()))
    {
        return Err(Error::Validation(format!(
            "operation {} is {}, expected only pi/8 rotations and measurements",
            r.source_index, r.angle
        )));
    }
    let n = c.num_qubits();
    let mut out: Vec<Rotation> = Vec::with_capacity(c.len());
    let mut layer: Vec<Rotation> = Vec::new();
    for r in c.ops() {
        if r.angle.is_measurement() {
            flush_layer(&mut layer, &mut out);
            out.push(r.clone());
            continue;
        }
        let r = r.clone().fold_sign();
        if !layer.iter().all(|m| m.pauli.commutes_unchecked(&r.pauli)) {
            flush_layer(&mut layer, &mut out);
        }
        layer.push(r);
    }
    flush_layer(&mut layer, &mut out);
    for (k, r) in out.iter_mut().enumerate() {
        r.source_index = k;
    }
    Circuit::from_ops(n, out)
}

fn flush_layer(layer: &mut Vec<Rotation>, out: &mut Vec<Rotation>) {
    // group key -> (first member, net eighth turns)
    let mut groups: Vec<(Rotation, i64)> = Vec::new();
    let mut index: HashMap<(Vec<u64>, Vec<u64>), usize> = HashMap::new();
    for r in layer.drain(..) {
        let step = if r.angle.is_negative() { -1 } else { 1 };
        let key = (r.pauli.x_words().to_vec(), r.pauli.z_words().to_vec());
        match index.get(&key) {
            Some(&g) => groups[g].1 += step,
            None => {
                index.insert(key, groups.len());
                groups.push((r, step));
            }
        }
    }
    for (first, net) in groups {
        let (clifford, eighth) = split_eighth_turns(net);
        let idx = first.source_index;
        out.extend(clifford.map(|a| Rotation::new(a, first.pauli.clone(), idx)));
        out.extend(eighth.map(|a| Rotation::new(a, first.pauli.clone(), idx)));
    }
}

/// `exp(i·k·π/8·P)` as an optional Clifford part and an optional π/8
/// remainder, modulo a global phase (`exp(iπP) = -I`).
fn split_eighth_turns(net: i64) -> (Option<RotationAngle>, Option<RotationAngle>) {
    use RotationAngle::*;
    match net.rem_euclid(8) {
        0 => (None, None),
        1 => (None, Some(PlusPi8)),
        2 => (Some(PlusPi4), None),
        3 => (Some(PlusPi4), Some(PlusPi8)),
        4 => (Some(PlusPi2), None),
        5 => (Some(MinusPi4), Some(MinusPi8)),
        6 => (Some(MinusPi4), None),
        _ => (None, Some(MinusPi8)),
    }
}

/// Alternates [`transpile`] and [`merge_commuting_layers`] until a merge
/// round no longer lowers the π/8 count.
///
/// Returns the last transpiled circuit and the product of every round's
/// terminal Clifford, so `c = C_total · output` still holds.
pub fn optimize_fixpoint(c: &Circuit) -> Result<(Circuit, CliffordTableau)> {
    let mut total = CliffordTableau::identity(c.num_qubits())?;
    let mut current = c.clone();
    loop {
        let (pure, round) = transpile(&current)?;
        total = total.multiply(&round)?;
        let merged = merge_commuting_layers(&pure)?;
        if merged.pi8_count() >= pure.pi8_count() {
            return Ok((pure, total));
        }
        current = merged;
    }
}
