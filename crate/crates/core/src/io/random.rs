//! Random π/8 circuits shaped like transpiler output.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::pauli::{Circuit, Pauli, PauliString, RotationAngle};

/// Standard deviation of the support-size distribution, in qubits.
pub const SUPPORT_STD_DEV: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    /// Number of π/8 rotations.
    pub m: usize,
    /// Number of qubits.
    pub n: usize,
    /// Mean support size as a fraction of `n`.
    pub n_pct: f64,
    pub seed: u64,
}

impl RandomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::Validation(
                "random circuits need m >= 1 and N >= 1".into(),
            ));
        }
        if !(self.n_pct > 0.0 && self.n_pct <= 1.0) {
            return Err(Error::Validation(format!(
                "support fraction {} outside (0, 1]",
                self.n_pct
            )));
        }
        Ok(())
    }
}

/// `m` rotations `exp(iπ/8·P)` followed by a Z measurement on every qubit.
///
/// Each support size is a normal sample around `n·n_pct`, rounded half to
/// even and clamped to `[1, n]`; the support is a uniform subset of that
/// size and each of its qubits gets X, Y or Z uniformly.
pub fn gen_random(spec: &RandomSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normal = Normal::new(n as f64 * spec.n_pct, SUPPORT_STD_DEV)
        .map_err(|e| Error::Validation(e.to_string()))?;
    let mut c = Circuit::new(n);
    for _ in 0..spec.m {
        let size = normal.sample(&mut rng).round_ties_even().clamp(1.0, n as f64) as usize;
        let mut p = PauliString::identity(n);
        for q in index::sample(&mut rng, n, size) {
            p.set(q, [Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..3)]);
        }
        c.push(RotationAngle::PlusPi8, p)?;
    }
    for q in 0..n {
        c.push(RotationAngle::Measure, PauliString::single(n, q, Pauli::Z))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, n: usize, n_pct: f64, seed: u64) -> RandomSpec {
        RandomSpec { m, n, n_pct, seed }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = gen_random(&spec(3, 4, 0.5, 9)).unwrap();
        let b = gen_random(&spec(3, 4, 0.5, 9)).unwrap();
        assert_eq!(a, b);
        let other = gen_random(&spec(30, 4, 0.5, 10)).unwrap();
        assert_ne!(gen_random(&spec(30, 4, 0.5, 9)).unwrap(), other);
    }

    #[test]
    fn shape_of_output() {
        let c = gen_random(&spec(50, 6, 0.3, 1)).unwrap();
        assert_eq!(c.len(), 56);
        assert!(c.ops()[..50]
            .iter()
            .all(|r| r.angle == RotationAngle::PlusPi8));
        for (q, r) in c.ops()[50..].iter().enumerate() {
            assert_eq!(r.angle, RotationAngle::Measure);
            assert_eq!(r.pauli, PauliString::single(6, q, Pauli::Z));
        }
    }

    #[test]
    fn single_qubit_clamps_to_one() {
        let c = gen_random(&spec(1, 1, 0.15, 0)).unwrap();
        assert_eq!(c.ops()[0].pauli.support(), vec![0]);
    }

    #[test]
    fn mean_support_tracks_target() {
        let c = gen_random(&spec(10_000, 10, 0.5, 123)).unwrap();
        let total: usize = c.ops()[..10_000].iter().map(|r| r.pauli.weight()).sum();
        let mean = total as f64 / 10_000.0;
        assert!((4.5..=5.5).contains(&mean), "mean support {mean}");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(gen_random(&spec(0, 3, 0.5, 0)).is_err());
        assert!(gen_random(&spec(3, 0, 0.5, 0)).is_err());
        assert!(gen_random(&spec(3, 3, 0.0, 0)).is_err());
        assert!(gen_random(&spec(3, 3, 1.5, 0)).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn supports_stay_in_range(seed in any::<u64>(), n in 1usize..12, pct in 0.01f64..=1.0) {
                let c = gen_random(&spec(40, n, pct, seed)).unwrap();
                prop_assert_eq!(c.len(), 40 + n);
                for r in &c.ops()[..40] {
                    prop_assert!((1..=n).contains(&r.pauli.weight()));
                }
            }
        }
    }
}
