//! Quasi-Werner mixtures: weight `F` on `|Psi2>` and `(1-F)/3` on each of the
//! other three quasi-Bell states.

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, outer, Matrix4c};
use crate::measures::{binary_entropy, EntFraction, TwoQubitDensity};
use crate::quasi_bell::{embed_qubit, Overlap, QbIndex, QuasiBellSpec, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiWernerSpec {
    pub fidelity: f64,
    pub kappa: Overlap,
}

impl QuasiWernerSpec {
    pub fn new(fidelity: f64, kappa: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::InvalidProbability(fidelity));
        }
        Ok(Self {
            fidelity,
            kappa: Overlap::new(kappa)?,
        })
    }

    /// Mixture weights for indices 1..4.
    pub fn weights(&self) -> [f64; 4] {
        let rest = (1.0 - self.fidelity) / 3.0;
        [rest, self.fidelity, rest, rest]
    }
}

pub fn build_quasi_werner(spec: QuasiWernerSpec) -> TwoQubitDensity {
    let mut m = Matrix4c::zeros();
    for (index, w) in QbIndex::ALL.into_iter().zip(spec.weights()) {
        let state = embed_qubit(QuasiBellSpec { index, kappa: spec.kappa });
        m += outer(state.coeffs()) * c(w);
    }
    TwoQubitDensity::from_matrix_unchecked(m)
}

/// Gram matrix of the weighted states `sqrt(w_i) |Psi_i>`; its spectrum is the
/// spectrum of the mixture.
pub fn quasi_werner_gram(spec: QuasiWernerSpec) -> Matrix4<f64> {
    let rest = (1.0 - spec.fidelity) / 3.0;
    let mut g = Matrix4::from_diagonal(&nalgebra::Vector4::new(rest, spec.fidelity, rest, rest));
    let off = rest * spec.kappa.gram_d();
    g[(0, 2)] = off;
    g[(2, 0)] = off;
    g
}

/// `{F, (1-F)/3, (1+D)(1-F)/3, (1-D)(1-F)/3}`, sorted descending.
pub fn quasi_werner_spectrum(spec: QuasiWernerSpec) -> Spectrum {
    let rest = (1.0 - spec.fidelity) / 3.0;
    let d = spec.kappa.gram_d();
    Spectrum::new(vec![spec.fidelity, rest, (1.0 + d) * rest, (1.0 - d) * rest])
}

/// Overlap of the mixture with `|Psi2>`, which is `F`.
pub fn quasi_werner_fraction(spec: QuasiWernerSpec) -> EntFraction {
    EntFraction::new(spec.fidelity).expect("fidelity validated at construction")
}

/// Entanglement of formation of the standard Werner state, `H(1/2 + sqrt(F(1-F)))`.
/// Only meaningful for `F >= 1/2`; below that the Werner state is separable and
/// this returns an error rather than the formula's spurious positive value.
pub fn werner_eof_reference(fidelity: f64) -> Result<f64> {
    if !(0.5..=1.0).contains(&fidelity) {
        return Err(Error::InvalidArgument(format!(
            "Werner formation formula holds for F in [1/2, 1], got {fidelity}"
        )));
    }
    binary_entropy((0.5 + (fidelity * (1.0 - fidelity)).sqrt()).min(1.0))
}
