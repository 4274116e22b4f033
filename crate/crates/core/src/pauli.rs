//! Symplectic Pauli strings, rotation angles and rotation circuits.
//!
//! A [`PauliString`] on `n` qubits is a sign bit plus two packed bit vectors.
//! Qubit `j` carries `I`, `X`, `Y` or `Z` for `(x_j, z_j)` equal to `(0,0)`,
//! `(1,0)`, `(1,1)` and `(0,1)`. The string denotes the Hermitian operator
//! `(-1)^sign * P_0 ⊗ P_1 ⊗ ...`; the factor of `i` in `Y = iXZ` is never
//! stored and is recomputed from `popcount(x & z)` when needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Power of `i`: the unit phases `1, i, -1, -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: i64) -> Self {
        Phase(e.rem_euclid(4) as u8)
    }

    /// Exponent `k` in `i^k`, in `0..4`.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `true` for `-1` and `-i`.
    pub fn is_negative(self) -> bool {
        self.0 >= 2
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    sign: bool,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString {
            n,
            sign: false,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    /// Single-qubit Pauli `p` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut s = Self::identity(paulis.len());
        for (q, p) in paulis.iter().enumerate() {
            s.set(q, *p);
        }
        s
    }

    /// Parses letters over `{I,X,Y,Z}`, optionally prefixed by `+` or `-`.
    pub fn from_letters(text: &str) -> Result<Self> {
        let (sign, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let paulis = body
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::Validation(format!("invalid Pauli letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut s = Self::from_paulis(&paulis);
        s.sign = sign;
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> bool {
        self.sign
    }

    pub fn set_sign(&mut self, sign: bool) {
        self.sign = sign;
    }

    pub fn with_sign(mut self, sign: bool) -> Self {
        self.sign = sign;
        self
    }

    pub fn negated(mut self) -> Self {
        self.sign = !self.sign;
        self
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (xb, zb) = p.bits();
        let (w, b) = (q / WORD, q % WORD);
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | (u64::from(xb) << b);
        self.z[w] = (self.z[w] & !mask) | (u64::from(zb) << b);
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Same operator ignoring the sign bit.
    pub fn same_letters(&self, other: &PauliString) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Qubits acted on non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, (xw, zw)) in self.x.iter().zip(&self.z).enumerate() {
            let mut bits = xw | zw;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * WORD + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Number of `Y` letters, i.e. `|x · z|`.
    pub fn y_count(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn check_dim(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Symplectic product `x_P · z_Q + x_Q · z_P mod 2` is zero.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        let mut acc = 0u32;
        for w in 0..self.x.len() {
            acc += ((self.x[w] & other.z[w]) ^ (other.x[w] & self.z[w])).count_ones();
        }
        acc.is_multiple_of(2)
    }

    /// Supports share no qubit: `(x_P ∨ z_P) · (x_Q ∨ z_Q) = 0`.
    pub fn trivially_disjoint(&self, other: &PauliString) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.disjoint_unchecked(other))
    }

    pub(crate) fn disjoint_unchecked(&self, other: &PauliString) -> bool {
        (0..self.x.len()).all(|w| (self.x[w] | self.z[w]) & (other.x[w] | other.z[w]) == 0)
    }

    /// Matrix product `self · other = φ · R` with `R` sign-free.
    pub fn multiply(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        self.check_dim(other)?;
        Ok(self.multiply_unchecked(other))
    }

    pub(crate) fn multiply_unchecked(&self, other: &PauliString) -> (Phase, PauliString) {
        // Per qubit the product of two letters contributes i^{+1}
        // for XY, YZ, ZX and i^{-1} for XZ, YX, ZY.
        let mut plus = 0i64;
        let mut minus = 0i64;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (px, py, pz) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (qx, qy, qz) = (x2 & !z2, x2 & z2, !x2 & z2);
            plus += ((px & qy) | (py & qz) | (pz & qx)).count_ones() as i64;
            minus += ((px & qz) | (py & qx) | (pz & qy)).count_ones() as i64;
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        let signs = 2 * (i64::from(self.sign) + i64::from(other.sign));
        let phase = Phase::from_exponent(plus - minus + signs);
        (
            phase,
            PauliString {
                n: self.n,
                sign: false,
                x,
                z,
            },
        )
    }

    /// Folds a real phase into the sign bit. Imaginary phases are rejected.
    pub(crate) fn apply_real_phase(mut self, phase: Phase) -> Result<PauliString> {
        if !phase.is_real() {
            return Err(Error::Invariant(format!(
                "non-Hermitian product: phase {phase} on {self}"
            )));
        }
        if phase.is_negative() {
            self.sign = !self.sign;
        }
        Ok(self)
    }

    /// Letters without the sign, e.g. `IXYI`.
    pub fn letters(&self) -> String {
        (0..self.n).map(|q| self.get(q).as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign {
            f.write_str("-")?;
        }
        f.write_str(&self.letters())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RotationAngle {
    PlusPi8,
    MinusPi8,
    PlusPi4,
    MinusPi4,
    PlusPi2,
    MinusPi2,
    Measure,
}

impl RotationAngle {
    pub const ALL: [RotationAngle; 7] = [
        RotationAngle::PlusPi8,
        RotationAngle::MinusPi8,
        RotationAngle::PlusPi4,
        RotationAngle::MinusPi4,
        RotationAngle::PlusPi2,
        RotationAngle::MinusPi2,
        RotationAngle::Measure,
    ];

    pub fn radians(self) -> Option<f64> {
        use std::f64::consts::PI;
        match self {
            RotationAngle::PlusPi8 => Some(PI / 8.0),
            RotationAngle::MinusPi8 => Some(-PI / 8.0),
            RotationAngle::PlusPi4 => Some(PI / 4.0),
            RotationAngle::MinusPi4 => Some(-PI / 4.0),
            RotationAngle::PlusPi2 => Some(PI / 2.0),
            RotationAngle::MinusPi2 => Some(-PI / 2.0),
            RotationAngle::Measure => None,
        }
    }

    pub fn is_measurement(self) -> bool {
        self == RotationAngle::Measure
    }

    pub fn is_pi8(self) -> bool {
        matches!(self, RotationAngle::PlusPi8 | RotationAngle::MinusPi8)
    }

    pub fn is_pi4(self) -> bool {
        matches!(self, RotationAngle::PlusPi4 | RotationAngle::MinusPi4)
    }

    pub fn is_pi2(self) -> bool {
        matches!(self, RotationAngle::PlusPi2 | RotationAngle::MinusPi2)
    }

    /// π/4 and π/2 rotations.
    pub fn is_clifford(self) -> bool {
        self.is_pi4() || self.is_pi2()
    }

    pub fn is_negative(self) -> bool {
        matches!(
            self,
            RotationAngle::MinusPi8 | RotationAngle::MinusPi4 | RotationAngle::MinusPi2
        )
    }

    /// `exp(iθP)^† = exp(-iθP)`. Measurements are returned unchanged.
    pub fn negated(self) -> Self {
        match self {
            RotationAngle::PlusPi8 => RotationAngle::MinusPi8,
            RotationAngle::MinusPi8 => RotationAngle::PlusPi8,
            RotationAngle::PlusPi4 => RotationAngle::MinusPi4,
            RotationAngle::MinusPi4 => RotationAngle::PlusPi4,
            RotationAngle::PlusPi2 => RotationAngle::MinusPi2,
            RotationAngle::MinusPi2 => RotationAngle::PlusPi2,
            RotationAngle::Measure => RotationAngle::Measure,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            RotationAngle::PlusPi8 => "pi/8",
            RotationAngle::MinusPi8 => "-pi/8",
            RotationAngle::PlusPi4 => "pi/4",
            RotationAngle::MinusPi4 => "-pi/4",
            RotationAngle::PlusPi2 => "pi/2",
            RotationAngle::MinusPi2 => "-pi/2",
            RotationAngle::Measure => "M",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.token() == token)
    }
}

impl fmt::Display for RotationAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// `exp(iθP)` for a rotation angle, or a measurement of `P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rotation {
    pub angle: RotationAngle,
    pub pauli: PauliString,
    pub source_index: usize,
}

impl Rotation {
    pub fn new(angle: RotationAngle, pauli: PauliString, source_index: usize) -> Self {
        Rotation {
            angle,
            pauli,
            source_index,
        }
    }

    /// Moves a negative sign on a rotation Pauli into the angle:
    /// `exp(iθ(-P)) = exp(i(-θ)P)`. Measurements keep their sign.
    pub fn fold_sign(mut self) -> Self {
        if self.pauli.sign() && !self.angle.is_measurement() {
            self.pauli.set_sign(false);
            self.angle = self.angle.negated();
        }
        self
    }
}

/// Ordered rotation sequence on a fixed number of qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<Rotation>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            ops: Vec::new(),
        }
    }

    /// Builds a circuit and checks every invariant.
    pub fn from_ops(num_qubits: usize, ops: Vec<Rotation>) -> Result<Self> {
        let c = Circuit { num_qubits, ops };
        c.validate()?;
        Ok(c)
    }

    /// Appends with the next source index.
    pub fn push(&mut self, angle: RotationAngle, pauli: PauliString) -> Result<()> {
        if pauli.num_qubits() != self.num_qubits {
            return Err(Error::Dimension {
                expected: self.num_qubits,
                found: pauli.num_qubits(),
            });
        }
        if pauli.is_identity() {
            return Err(Error::Validation("operation on the identity Pauli".into()));
        }
        let idx = self.ops.last().map_or(0, |r| r.source_index + 1);
        self.ops.push(Rotation::new(angle, pauli, idx));
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[Rotation] {
        &self.ops
    }

    pub fn into_ops(self) -> Vec<Rotation> {
        self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn count(&self, pred: impl Fn(RotationAngle) -> bool) -> usize {
        self.ops.iter().filter(|r| pred(r.angle)).count()
    }

    pub fn pi8_count(&self) -> usize {
        self.count(RotationAngle::is_pi8)
    }

    /// Copy with source indices renumbered `0..len`.
    pub fn renumbered(&self) -> Circuit {
        let ops = self
            .ops
            .iter()
            .enumerate()
            .map(|(i, r)| Rotation::new(r.angle, r.pauli.clone(), i))
            .collect();
        Circuit {
            num_qubits: self.num_qubits,
            ops,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut prev: Option<usize> = None;
        for r in &self.ops {
            if r.pauli.num_qubits() != self.num_qubits {
                return Err(Error::Dimension {
                    expected: self.num_qubits,
                    found: r.pauli.num_qubits(),
                });
            }
            if r.pauli.is_identity() {
                return Err(Error::Validation(format!(
                    "operation {} acts on no qubit",
                    r.source_index
                )));
            }
            if prev.is_some_and(|p| r.source_index <= p) {
                return Err(Error::Validation(format!(
                    "source indices not strictly increasing at {}",
                    r.source_index
                )));
            }
            prev = Some(r.source_index);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense::{pauli_matrix, CMatrix};

    fn p(s: &str) -> PauliString {
        PauliString::from_letters(s).unwrap()
    }

    fn all_paulis(n: usize) -> Vec<PauliString> {
        (0..4usize.pow(n as u32))
            .map(|mut k| {
                let letters: Vec<Pauli> = (0..n)
                    .map(|_| {
                        let l = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][k % 4];
                        k /= 4;
                        l
                    })
                    .collect();
                PauliString::from_paulis(&letters)
            })
            .collect()
    }

    #[test]
    fn commutes_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("X").commutes(&p("X")).unwrap());
        assert!(p("XY").commutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn xy_zz_dense_commutator_is_zero() {
        let a = pauli_matrix(&p("XY"));
        let b = pauli_matrix(&p("ZZ"));
        let comm = a.mul(&b).sub(&b.mul(&a));
        assert!(comm.max_abs() < 1e-12);
    }

    #[test]
    fn multiply_examples() {
        let (ph, r) = p("X").multiply(&p("X")).unwrap();
        assert_eq!((ph, r.letters()), (Phase::ONE, "I".to_string()));
        let (ph, r) = p("X").multiply(&p("Z")).unwrap();
        assert_eq!((ph, r.letters()), (Phase::MINUS_I, "Y".to_string()));
        let (ph, r) = p("Y").multiply(&p("Z")).unwrap();
        assert_eq!((ph, r.letters()), (Phase::I, "X".to_string()));
    }

    #[test]
    fn trivially_disjoint_examples() {
        assert!(p("XI").trivially_disjoint(&p("IZ")).unwrap());
        assert!(!p("IXYI").trivially_disjoint(&p("IYIY")).unwrap());
        assert!(!p("XI").trivially_disjoint(&p("XI")).unwrap());
        // commuting but not trivially disjoint
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(!p("XX").trivially_disjoint(&p("ZZ")).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let e = p("X").commutes(&p("XX")).unwrap_err();
        assert_eq!(
            e,
            Error::Dimension {
                expected: 1,
                found: 2
            }
        );
        assert!(p("X").multiply(&p("XX")).is_err());
        assert!(p("X").trivially_disjoint(&p("XX")).is_err());
    }

    #[test]
    fn commutes_matches_dense_exhaustively() {
        for n in 1..=4 {
            let all = all_paulis(n);
            let dense: Vec<CMatrix> = all.iter().map(pauli_matrix).collect();
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    let comm = dense[i].mul(&dense[j]).sub(&dense[j].mul(&dense[i]));
                    assert_eq!(
                        a.commutes(b).unwrap(),
                        comm.max_abs() < 1e-12,
                        "{a} vs {b}"
                    );
                    if a.trivially_disjoint(b).unwrap() {
                        assert!(a.commutes(b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn multiply_matches_dense_exhaustively() {
        for n in 1..=3 {
            let mut all = all_paulis(n);
            let negs: Vec<_> = all.iter().map(|q| q.clone().negated()).collect();
            all.extend(negs);
            for a in &all {
                for b in &all {
                    let (ph, r) = a.multiply(b).unwrap();
                    assert!(!r.sign());
                    let lhs = pauli_matrix(a).mul(&pauli_matrix(b));
                    let rhs = pauli_matrix(&r).scale(crate::oracle::dense::phase_value(ph));
                    assert!(lhs.sub(&rhs).max_abs() < 1e-12, "{a} * {b}");
                    // reversed order differs by ±1 according to commutation
                    let (ph2, r2) = b.multiply(a).unwrap();
                    assert_eq!(r, r2);
                    let flip = if a.commutes(b).unwrap() {
                        Phase::ONE
                    } else {
                        Phase::MINUS_ONE
                    };
                    assert_eq!(ph2, ph * flip);
                }
            }
        }
    }

    #[test]
    fn support_and_letters() {
        let s = p("IXYI");
        assert_eq!(s.support(), vec![1, 2]);
        assert_eq!(s.weight(), 2);
        assert_eq!(s.y_count(), 1);
        assert_eq!(p("-XZ").to_string(), "-XZ");
        let wide = PauliString::single(130, 129, Pauli::Y);
        assert_eq!(wide.support(), vec![129]);
        assert_eq!(wide.get(129), Pauli::Y);
    }

    #[test]
    fn fold_sign_negates_rotation_angle() {
        let r = Rotation::new(RotationAngle::PlusPi8, p("-Z"), 0).fold_sign();
        assert_eq!(r.angle, RotationAngle::MinusPi8);
        assert!(!r.pauli.sign());
        let m = Rotation::new(RotationAngle::Measure, p("-Z"), 0).fold_sign();
        assert!(m.pauli.sign());
    }

    #[test]
    fn circuit_rejects_bad_ops() {
        let mut c = Circuit::new(2);
        assert!(c.push(RotationAngle::PlusPi8, p("XI")).is_ok());
        assert!(matches!(
            c.push(RotationAngle::PlusPi8, p("X")),
            Err(Error::Dimension { .. })
        ));
        assert!(c.push(RotationAngle::PlusPi8, p("II")).is_err());
        let bad = vec![
            Rotation::new(RotationAngle::PlusPi8, p("XI"), 3),
            Rotation::new(RotationAngle::PlusPi8, p("XI"), 3),
        ];
        assert!(Circuit::from_ops(2, bad).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
            (prop::collection::vec(0u8..4, n), any::<bool>()).prop_map(|(v, s)| {
                let letters: Vec<Pauli> = v
                    .into_iter()
                    .map(|k| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][k as usize])
                    .collect();
                PauliString::from_paulis(&letters).with_sign(s)
            })
        }

        proptest! {
            #[test]
            fn commutation_is_symmetric(a in pauli_strategy(70), b in pauli_strategy(70)) {
                prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
            }

            #[test]
            fn multiplication_is_associative_up_to_phase(
                a in pauli_strategy(9), b in pauli_strategy(9), c in pauli_strategy(9)
            ) {
                let (p1, ab) = a.multiply(&b).unwrap();
                let (p2, ab_c) = ab.multiply(&c).unwrap();
                let (q1, bc) = b.multiply(&c).unwrap();
                let (q2, a_bc) = a.multiply(&bc).unwrap();
                prop_assert_eq!(&ab_c, &a_bc);
                prop_assert_eq!(p1 * p2, q1 * q2);
            }
        }
    }
}
