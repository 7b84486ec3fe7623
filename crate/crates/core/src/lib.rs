//! Quasi-Bell states: entangled superpositions of products of two nonorthogonal
//! states, their entanglement, quasi-Werner mixtures, the entangled coherent
//! state instance and its behaviour under photon loss.
//!
//! The closed forms live in [`quasi_bell`], [`measures`], [`werner`],
//! [`coherent`] and [`decoherence`]. [`fock`] rebuilds the same objects in a
//! truncated photon-number basis and is used to check them; [`report`] drives
//! the `qbell` command line tool.

pub mod coherent;
pub mod decoherence;
pub mod error;
pub mod fock;
pub mod format;
pub mod linalg;
pub mod measures;
pub mod optimize;
pub mod quasi_bell;
pub mod report;
pub mod werner;

pub use coherent::{CharFuncPoint, CoherentQuasiBell};
pub use decoherence::{DecoheredState, FractionCurvePoint, LossChannel};
pub use error::{Error, Result};
pub use measures::{EntFraction, TwoQubitDensity};
pub use quasi_bell::{Overlap, QbIndex, QuasiBellSpec, Spectrum, TwoQubitPure};
pub use werner::QuasiWernerSpec;
