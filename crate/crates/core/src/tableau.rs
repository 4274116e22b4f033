//! Clifford tableaux: the images `C·G·C†` of the `2n` single-qubit
//! generators, stored in the order `X_0, Z_0, X_1, Z_1, ...`.

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, Phase, Rotation, RotationAngle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordTableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        let rows = (0..n)
            .flat_map(|q| {
                [
                    PauliString::single(n, q, Pauli::X),
                    PauliString::single(n, q, Pauli::Z),
                ]
            })
            .collect();
        Ok(CliffordTableau { n, rows })
    }

    /// Builds a tableau from explicit generator images.
    pub fn from_rows(rows: Vec<PauliString>) -> Result<Self> {
        if rows.is_empty() || !rows.len().is_multiple_of(2) {
            return Err(Error::Validation(format!(
                "a tableau needs 2n rows, got {}",
                rows.len()
            )));
        }
        let n = rows.len() / 2;
        if let Some(r) = rows.iter().find(|r| r.num_qubits() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: r.num_qubits(),
            });
        }
        let t = CliffordTableau { n, rows };
        if !t.is_symplectic() {
            return Err(Error::Invariant(
                "rows do not satisfy the symplectic commutation structure".into(),
            ));
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn x_image(&self, q: usize) -> &PauliString {
        &self.rows[2 * q]
    }

    pub fn z_image(&self, q: usize) -> &PauliString {
        &self.rows[2 * q + 1]
    }

    pub fn is_identity(&self) -> bool {
        CliffordTableau::identity(self.n).is_ok_and(|id| id == *self)
    }

    /// Image rows of `X_j` and `Z_j` anticommute; every other pair commutes.
    pub fn is_symplectic(&self) -> bool {
        for a in 0..self.rows.len() {
            for b in (a + 1)..self.rows.len() {
                let partner = a / 2 == b / 2;
                if self.rows[a].commutes_unchecked(&self.rows[b]) == partner {
                    return false;
                }
            }
        }
        true
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }

    /// `C·P·C†`.
    ///
    /// `P` is expanded as `(-1)^θ · i^{#Y} · Π_j X_j^{x_j} Z_j^{z_j}` and the
    /// generator images are multiplied left to right with exact phase
    /// tracking. The accumulated phase must come out real.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        self.check_dim(p.num_qubits())?;
        let mut phase = Phase::from_exponent(p.y_count() as i64 + 2 * i64::from(p.sign()));
        let mut acc = PauliString::identity(self.n);
        for q in p.support() {
            if p.x_bit(q) {
                let (ph, next) = acc.multiply_unchecked(&self.rows[2 * q]);
                phase = phase * ph;
                acc = next;
            }
            if p.z_bit(q) {
                let (ph, next) = acc.multiply_unchecked(&self.rows[2 * q + 1]);
                phase = phase * ph;
                acc = next;
            }
        }
        acc.apply_real_phase(phase)
    }

    /// Tableau of `U·V`: row `k` is `U` applied to row `k` of `V`.
    pub fn multiply(&self, v: &CliffordTableau) -> Result<CliffordTableau> {
        self.check_dim(v.n)?;
        let rows = v
            .rows
            .iter()
            .map(|r| self.conjugate(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(CliffordTableau { n: self.n, rows })
    }

    /// Tableau of `exp(iθP)` for `θ ∈ {±π/4, ±π/2}`.
    pub fn from_rotation(r: &Rotation) -> Result<CliffordTableau> {
        let mut t = CliffordTableau::identity(r.pauli.num_qubits())?;
        t.apply_rotation_left(r.angle, &r.pauli)?;
        Ok(t)
    }

    /// Image of a generator-valued `q` under a single Clifford rotation.
    fn rotate(angle: RotationAngle, p: &PauliString, q: &PauliString) -> Result<PauliString> {
        if p.commutes_unchecked(q) {
            return Ok(q.clone());
        }
        if angle.is_pi2() {
            // exp(±iπ/2 P) Q exp(∓iπ/2 P) = P Q P = -Q
            return Ok(q.clone().negated());
        }
        // exp(±iπ/4 P) Q exp(∓iπ/4 P) = ±i P Q for anticommuting P, Q
        let (ph, r) = p.multiply_unchecked(q);
        let sigma = if angle.is_negative() {
            Phase::MINUS_I
        } else {
            Phase::I
        };
        r.apply_real_phase(ph * sigma)
    }

    fn check_clifford(angle: RotationAngle) -> Result<()> {
        if angle.is_clifford() {
            Ok(())
        } else {
            Err(Error::UnsupportedAngle(format!(
                "{angle} is not a Clifford rotation"
            )))
        }
    }

    /// `self ← R · self` where `R = exp(iθP)`.
    pub fn apply_rotation_left(&mut self, angle: RotationAngle, p: &PauliString) -> Result<()> {
        Self::check_clifford(angle)?;
        self.check_dim(p.num_qubits())?;
        for row in &mut self.rows {
            if !p.commutes_unchecked(row) {
                *row = Self::rotate(angle, p, row)?;
            }
        }
        Ok(())
    }

    /// `self ← self · R` where `R = exp(iθP)`.
    ///
    /// Only generators anticommuting with `P` change: `X_q` when `z_q(P) = 1`
    /// and `Z_q` when `x_q(P) = 1`. For a quarter turn the new image is
    /// `±i · C(P) · C(G)`, so `C(P)` is computed once.
    pub fn apply_rotation_right(&mut self, angle: RotationAngle, p: &PauliString) -> Result<()> {
        Self::check_clifford(angle)?;
        self.check_dim(p.num_qubits())?;
        let image = if angle.is_pi4() {
            Some(self.conjugate(p)?)
        } else {
            None
        };
        let sigma = if angle.is_negative() {
            Phase::MINUS_I
        } else {
            Phase::I
        };
        for q in p.support() {
            for (k, flips) in [(2 * q, p.z_bit(q)), (2 * q + 1, p.x_bit(q))] {
                if !flips {
                    continue;
                }
                match &image {
                    None => {
                        let r = std::mem::replace(&mut self.rows[k], PauliString::identity(0));
                        self.rows[k] = r.negated();
                    }
                    Some(cp) => {
                        let (ph, r) = cp.multiply_unchecked(&self.rows[k]);
                        self.rows[k] = r.apply_real_phase(ph * sigma)?;
                    }
                }
            }
        }
        Ok(())
    }
}
