//! Dense `2^n × 2^n` semantics for small circuits.
//!
//! Qubit `j` is bit `j` of the computational-basis index. Circuit products
//! are time ordered: the first operation is the rightmost factor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Circuit, Pauli, PauliString, Phase, RotationAngle};
use crate::tableau::CliffordTableau;

pub const MAX_DENSE_QUBITS: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            m.data[r * dim..(r + 1) * dim].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        CMatrix {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        CMatrix {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product with `self` on the low-order qubits.
    pub fn kron_low(&self, high: &CMatrix) -> CMatrix {
        let (a, b) = (self.dim, high.dim);
        let d = a * b;
        let mut out = Self::zeros(d);
        for hr in 0..b {
            for hc in 0..b {
                let h = high.data[hr * b + hc];
                for lr in 0..a {
                    for lc in 0..a {
                        out.data[(hr * a + lr) * d + hc * a + lc] = h * self.data[lr * a + lc];
                    }
                }
            }
        }
        out
    }

    /// `‖self − e^{iφ}·other‖_max ≤ tol` for some global phase `φ`.
    pub fn approx_eq_up_to_phase(&self, other: &CMatrix, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some((k, pivot)) = other
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        else {
            return true;
        };
        if pivot.norm() < tol {
            return self.max_abs() <= tol;
        }
        let ratio = self.data[k] / pivot;
        if (ratio.norm() - 1.0).abs() > tol {
            return false;
        }
        let phase = ratio / ratio.norm();
        self.sub(&other.scale(phase)).max_abs() <= tol
    }
}

pub fn phase_value(p: Phase) -> Complex64 {
    match p.exponent() {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Action of a Pauli string on a basis state: `P|b⟩ = coeff·|b ⊕ x⟩`.
fn pauli_action(p: &PauliString, b: usize) -> (usize, Complex64) {
    let n = p.num_qubits();
    let mut flip = 0usize;
    let mut exp = 2 * usize::from(p.sign());
    for q in 0..n {
        let (x, z) = (p.x_bit(q), p.z_bit(q));
        if x {
            flip |= 1 << q;
        }
        if x && z {
            exp += 1;
        }
        if z && (b >> q) & 1 == 1 {
            exp += 2;
        }
    }
    (b ^ flip, phase_value(Phase::from_exponent(exp as i64)))
}

pub fn pauli_matrix(p: &PauliString) -> CMatrix {
    let d = 1usize << p.num_qubits();
    let mut m = CMatrix::zeros(d);
    for b in 0..d {
        let (r, c) = pauli_action(p, b);
        m.set(r, b, c);
    }
    m
}

/// `exp(iθP) = cos θ·I + i sin θ·P`.
pub fn rotation_matrix(theta: f64, p: &PauliString) -> CMatrix {
    let d = 1usize << p.num_qubits();
    let pm = pauli_matrix(p);
    CMatrix::identity(d)
        .scale(Complex64::new(theta.cos(), 0.0))
        .add(&pm.scale(Complex64::new(0.0, theta.sin())))
}

/// Left-multiplies `u` in place by `exp(iθP)`.
fn apply_rotation(u: &mut CMatrix, theta: f64, p: &PauliString) {
    let d = u.dim;
    let (c, s) = (theta.cos(), theta.sin());
    let mut out = u.scale(Complex64::new(c, 0.0));
    let is = Complex64::new(0.0, s);
    for b in 0..d {
        let (r, coeff) = pauli_action(p, b);
        let k = coeff * is;
        for col in 0..d {
            out.data[r * d + col] += k * u.data[b * d + col];
        }
    }
    *u = out;
}

/// Ordered product of `exp(iθ_k P_k)` over the circuit, last op leftmost.
pub fn dense_unitary(c: &Circuit) -> Result<CMatrix> {
    let n = c.num_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Capacity(format!(
            "dense semantics limited to {MAX_DENSE_QUBITS} qubits, circuit has {n}"
        )));
    }
    let mut u = CMatrix::identity(1 << n);
    for r in c.ops() {
        let theta = r.angle.radians().ok_or_else(|| {
            Error::Validation(format!(
                "measurement at {} has no unitary semantics",
                r.source_index
            ))
        })?;
        apply_rotation(&mut u, theta, &r.pauli);
    }
    Ok(u)
}

/// Dense product of only the non-measurement operations.
pub fn dense_unitary_skip_measurements(c: &Circuit) -> Result<CMatrix> {
    let ops = c
        .ops()
        .iter()
        .filter(|r| r.angle != RotationAngle::Measure)
        .cloned()
        .collect();
    dense_unitary(&Circuit::from_ops(c.num_qubits(), ops)?)
}

/// True when `u` acts on every generator exactly like the tableau does:
/// `u·G_k·u† == dense(row_k)` for all `2n` generators. Since the Pauli
/// group spans the full matrix algebra, this pins `u` to the tableau's
/// Clifford up to a global phase.
pub fn tableau_matches_unitary(t: &CliffordTableau, u: &CMatrix, tol: f64) -> bool {
    let n = t.num_qubits();
    if u.dim() != 1 << n {
        return false;
    }
    let ud = u.adjoint();
    (0..n).all(|q| {
        [(Pauli::X, t.x_image(q)), (Pauli::Z, t.z_image(q))]
            .into_iter()
            .all(|(g, row)| {
                let gm = pauli_matrix(&PauliString::single(n, q, g));
                u.mul(&gm).mul(&ud).sub(&pauli_matrix(row)).max_abs() <= tol
            })
    })
}

/// Checks a transpilation result against the input's dense semantics.
///
/// Requires `input = C · output` as unitaries (measurements dropped) with
/// `C` the tableau, and every output measurement `Q_j` to equal
/// `K_j† P_j K_j` where `K_j` is the Clifford relating the two prefixes
/// in front of the `j`-th input measurement `P_j`.
pub fn transpile_equivalent(
    input: &Circuit,
    output: &Circuit,
    tableau: &CliffordTableau,
    tol: f64,
) -> Result<bool> {
    let n = input.num_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Capacity(format!(
            "dense semantics limited to {MAX_DENSE_QUBITS} qubits, circuit has {n}"
        )));
    }
    if output.num_qubits() != n || tableau.num_qubits() != n {
        return Err(Error::Dimension {
            expected: n,
            found: output.num_qubits(),
        });
    }
    let meas_in: Vec<usize> = measurement_positions(input);
    let meas_out: Vec<usize> = measurement_positions(output);
    if meas_in.len() != meas_out.len() {
        return Ok(false);
    }
    let mut u = CMatrix::identity(1 << n);
    let mut v = CMatrix::identity(1 << n);
    let (mut i, mut o) = (0, 0);
    for (&mi, &mo) in meas_in.iter().zip(&meas_out) {
        for r in &input.ops()[i..mi] {
            apply_rotation(&mut u, r.angle.radians().unwrap_or(0.0), &r.pauli);
        }
        for r in &output.ops()[o..mo] {
            apply_rotation(&mut v, r.angle.radians().unwrap_or(0.0), &r.pauli);
        }
        let k = u.mul(&v.adjoint());
        let expected = k
            .adjoint()
            .mul(&pauli_matrix(&input.ops()[mi].pauli))
            .mul(&k);
        if expected.sub(&pauli_matrix(&output.ops()[mo].pauli)).max_abs() > tol {
            return Ok(false);
        }
        i = mi + 1;
        o = mo + 1;
    }
    for r in &input.ops()[i..] {
        apply_rotation(&mut u, r.angle.radians().unwrap_or(0.0), &r.pauli);
    }
    for r in &output.ops()[o..] {
        apply_rotation(&mut v, r.angle.radians().unwrap_or(0.0), &r.pauli);
    }
    Ok(tableau_matches_unitary(tableau, &u.mul(&v.adjoint()), tol))
}

fn measurement_positions(c: &Circuit) -> Vec<usize> {
    c.ops()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.angle.is_measurement())
        .map(|(k, _)| k)
        .collect()
}
