//! Abstract quasi-Bell states built on two nonorthogonal states `|psi1>`, `|psi2>`
//! with real overlap `kappa`.
//!
//! The four states are
//!
//! ```text
//! |Psi1> = h1 (|psi1>|psi2> + |psi2>|psi1>)    h1 = h3 = 1/sqrt(2(1+k^2))
//! |Psi2> = h2 (|psi1>|psi2> - |psi2>|psi1>)    h2 = h4 = 1/sqrt(2(1-k^2))
//! |Psi3> = h3 (|psi1>|psi1> + |psi2>|psi2>)
//! |Psi4> = h4 (|psi1>|psi1> - |psi2>|psi2>)
//! ```
//!
//! Everything here depends on the basis states only through `kappa`, so the
//! two-dimensional span of `{|psi1>, |psi2>}` is represented by the orthonormal
//! pair `|+-> = (|psi1> +- |psi2>)/sqrt(2 +- 2k)`.

use std::fmt;

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues, partial_trace_second, outer, Vector4c, C64};
use crate::measures::binary_entropy;

/// Real overlap `<psi1|psi2>` of the two basis states, restricted to `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Overlap(f64);

impl Overlap {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.is_finite() && (0.0..1.0).contains(&kappa) {
            Ok(Overlap(kappa))
        } else {
            Err(Error::InvalidOverlap(kappa))
        }
    }

    /// Only real overlaps are supported; a nonzero imaginary part is an error.
    pub fn from_complex(z: C64) -> Result<Self> {
        if z.im != 0.0 {
            return Err(Error::InvalidArgument(format!(
                "overlap must be real, got {} + {}i",
                z.re, z.im
            )));
        }
        Self::new(z.re)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `D = 2k / (1 + k^2)`, the only nonzero off-diagonal Gram entry.
    pub fn gram_d(self) -> f64 {
        2.0 * self.0 / (1.0 + self.0 * self.0)
    }
}

/// Which of the four quasi-Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QbIndex {
    One,
    Two,
    Three,
    Four,
}

impl QbIndex {
    pub const ALL: [QbIndex; 4] = [QbIndex::One, QbIndex::Two, QbIndex::Three, QbIndex::Four];

    pub fn number(self) -> u8 {
        match self {
            QbIndex::One => 1,
            QbIndex::Two => 2,
            QbIndex::Three => 3,
            QbIndex::Four => 4,
        }
    }

    /// Indices 2 and 4 carry the `1/sqrt(2(1-k^2))` normalization and are maximally entangled.
    pub fn is_antisymmetric_norm(self) -> bool {
        matches!(self, QbIndex::Two | QbIndex::Four)
    }

    /// True for the states built from `|psi1>|psi2>` cross products (indices 1 and 2).
    pub fn is_cross(self) -> bool {
        matches!(self, QbIndex::One | QbIndex::Two)
    }

    /// Relative sign between the two product terms.
    pub fn sign(self) -> f64 {
        if self.is_antisymmetric_norm() {
            -1.0
        } else {
            1.0
        }
    }
}

impl TryFrom<u8> for QbIndex {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(QbIndex::One),
            2 => Ok(QbIndex::Two),
            3 => Ok(QbIndex::Three),
            4 => Ok(QbIndex::Four),
            other => Err(Error::InvalidIndex(other)),
        }
    }
}

impl fmt::Display for QbIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiBellSpec {
    pub index: QbIndex,
    pub kappa: Overlap,
}

impl QuasiBellSpec {
    pub fn new(index: QbIndex, kappa: f64) -> Result<Self> {
        Ok(Self {
            index,
            kappa: Overlap::new(kappa)?,
        })
    }
}

/// Eigenvalues of a density operator, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn entropy_bits(&self) -> f64 {
        crate::linalg::shannon_bits(&self.0, 0.0)
    }
}

/// Two-qubit pure state in the `|++>, |+->, |-+>, |-->` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPure(Vector4c);

impl TwoQubitPure {
    /// Wraps normalized amplitudes; rejects norms off by more than 1e-12.
    pub fn new(coeffs: Vector4c) -> Result<Self> {
        let norm2 = coeffs.norm_squared();
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "two-qubit pure state must be normalized, got squared norm {norm2}"
            )));
        }
        Ok(TwoQubitPure(coeffs))
    }

    pub fn normalized(coeffs: Vector4c) -> Result<Self> {
        let norm = coeffs.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        Ok(TwoQubitPure(coeffs / c(norm)))
    }

    pub fn coeffs(&self) -> &Vector4c {
        &self.0
    }

    pub fn density(&self) -> crate::measures::TwoQubitDensity {
        crate::measures::TwoQubitDensity::from_matrix_unchecked(outer(&self.0))
    }

    /// Spectrum of the reduced state of the first qubit.
    pub fn reduced_spectrum(&self) -> Spectrum {
        let rho_a = partial_trace_second(&outer(&self.0));
        let m = nalgebra::DMatrix::from_iterator(2, 2, rho_a.iter().copied());
        Spectrum::new(hermitian_eigenvalues(&m))
    }
}

pub fn normalization_constant(index: QbIndex, kappa: Overlap) -> f64 {
    let k2 = kappa.value() * kappa.value();
    if index.is_antisymmetric_norm() {
        1.0 / (2.0 * (1.0 - k2)).sqrt()
    } else {
        1.0 / (2.0 * (1.0 + k2)).sqrt()
    }
}

/// Entrywise magnitudes of the pairwise overlaps of the four states.
pub fn gram_matrix(kappa: Overlap) -> Matrix4<f64> {
    let d = kappa.gram_d();
    let mut g = Matrix4::identity();
    g[(0, 2)] = d;
    g[(2, 0)] = d;
    g
}

pub fn reduced_spectrum(spec: QuasiBellSpec) -> Spectrum {
    if spec.index.is_antisymmetric_norm() {
        return Spectrum::new(vec![0.5, 0.5]);
    }
    let k = spec.kappa.value();
    let denom = 2.0 * (1.0 + k * k);
    Spectrum::new(vec![(1.0 + k).powi(2) / denom, (1.0 - k).powi(2) / denom])
}

/// Entropy of entanglement in ebits.
pub fn entropy_of_entanglement(spec: QuasiBellSpec) -> f64 {
    if spec.index.is_antisymmetric_norm() {
        return 1.0;
    }
    binary_entropy((1.0 + spec.kappa.gram_d()) / 2.0).expect("(1+D)/2 lies in [1/2, 1]")
}

/// Coordinates of `|psi1>` and `|psi2>` in the orthonormal `|+>, |->` basis.
pub(crate) fn basis_coordinates(kappa: f64) -> ([f64; 2], [f64; 2]) {
    let p = ((1.0 + kappa) / 2.0).sqrt();
    let m = ((1.0 - kappa) / 2.0).sqrt();
    ([p, m], [p, -m])
}

fn kron2(a: [f64; 2], b: [f64; 2]) -> Vector4c {
    Vector4c::new(c(a[0] * b[0]), c(a[0] * b[1]), c(a[1] * b[0]), c(a[1] * b[1]))
}

/// Unnormalized superposition for `index` (no `h_i` factor), in the `|+->` product basis.
pub(crate) fn unnormalized_embedding(index: QbIndex, kappa: f64) -> Vector4c {
    let (psi1, psi2) = basis_coordinates(kappa);
    let (first, second) = if index.is_cross() {
        (kron2(psi1, psi2), kron2(psi2, psi1))
    } else {
        (kron2(psi1, psi1), kron2(psi2, psi2))
    };
    first + second * c(index.sign())
}

/// Expresses `|Psi_i>` in the orthonormal product basis. The global phase makes the
/// `|+->` amplitude real and non-negative, or the first nonzero amplitude when that one vanishes.
pub fn embed_qubit(spec: QuasiBellSpec) -> TwoQubitPure {
    let h = normalization_constant(spec.index, spec.kappa);
    let v = unnormalized_embedding(spec.index, spec.kappa.value()) * c(h);
    TwoQubitPure(fix_phase(v))
}

pub(crate) fn fix_phase(v: Vector4c) -> Vector4c {
    let reference = if v[1].norm() > 1e-15 {
        v[1]
    } else {
        match v.iter().find(|z| z.norm() > 1e-15) {
            Some(z) => *z,
            None => return v,
        }
    };
    let phase = reference.conj() / reference.norm();
    v * phase
}
