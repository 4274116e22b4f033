//! Clifford+T transpilation to π/8 Pauli-rotation sequences and
//! lattice-surgery scheduling on surface-code layouts.
//!
//! The pipeline is: parse or convert a circuit ([`io`]), absorb its
//! Clifford rotations into a terminal tableau ([`transpiler`]), build a
//! dependency graph ([`dependency`]) and schedule it onto a layout
//! ([`layout`], [`router`], [`scheduler`]). Small instances can be checked
//! against exact baselines in [`oracle`].

pub mod dependency;
pub mod error;
pub mod io;
pub mod layout;
pub mod oracle;
pub mod pauli;
pub mod router;
pub mod scheduler;
pub mod tableau;
pub mod transpiler;

pub use error::{Error, Result};
pub use pauli::{Circuit, Pauli, PauliString, Phase, Rotation, RotationAngle};
pub use tableau::CliffordTableau;
