//! Entanglement functionals on two-qubit states: binary entropy, concurrence,
//! Wootters entanglement of formation, fully entangled fraction and its
//! entanglement-of-formation lower bound. Logarithms are base 2 throughout.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues4, max_abs, psd_sqrt, Matrix4c, Vector4c, C64};
use crate::optimize::nelder_mead_max;
use crate::quasi_bell::TwoQubitPure;

pub const DENSITY_TOLERANCE: f64 = 1e-10;
pub const EIGENVALUE_FLOOR: f64 = -1e-12;

/// Number of starts for the entangled-fraction maximizer.
pub const FEF_STARTS: usize = 8;
const FEF_SEED: u64 = 0x5eed_fef0;

/// Two-qubit density matrix in the `|+->` product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity(Matrix4c);

impl TwoQubitDensity {
    /// Validates Hermiticity and trace to 1e-10 and eigenvalues against the -1e-12 floor.
    pub fn new(m: Matrix4c) -> Result<Self> {
        let herm_dev = max_abs((m - m.adjoint()).iter());
        if herm_dev > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm_dev:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOLERANCE || tr.im.abs() > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
        }
        let hermitian = (m + m.adjoint()) * c(0.5);
        let min_eig = hermitian_eigenvalues4(&hermitian)[3];
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(TwoQubitDensity(hermitian))
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix4c) -> Self {
        TwoQubitDensity(m)
    }

    pub fn matrix(&self) -> &Matrix4c {
        &self.0
    }

    /// Eigenvalues sorted descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues4(&self.0)
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// `<v| rho |v>` for a (not necessarily normalized) vector.
    pub fn expectation(&self, v: &Vector4c) -> f64 {
        v.dotc(&(self.0 * v)).re
    }
}

/// Fully entangled fraction, a probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct EntFraction(f64);

impl EntFraction {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(EntFraction(value))
        } else {
            Err(Error::InvalidProbability(value))
        }
    }

    /// Clamps values within 1e-12 of the unit interval before validating.
    pub(crate) fn clamped(value: f64) -> Result<Self> {
        if value > -1e-12 && value < 1.0 + 1e-12 {
            Self::new(value.clamp(0.0, 1.0))
        } else {
            Self::new(value)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidProbability(x));
    }
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// Entanglement in ebits carried by concurrence `conc`: `H((1 + sqrt(1 - C^2))/2)`.
pub fn entanglement_from_concurrence(conc: f64) -> f64 {
    let conc = conc.clamp(0.0, 1.0);
    let x = 0.5 * (1.0 + (1.0 - conc * conc).max(0.0).sqrt());
    binary_entropy(x.min(1.0)).expect("x lies in [1/2, 1]")
}

fn spin_flip() -> Matrix4c {
    let mut yy = Matrix4c::zeros();
    yy[(0, 3)] = c(-1.0);
    yy[(1, 2)] = c(1.0);
    yy[(2, 1)] = c(1.0);
    yy[(3, 0)] = c(-1.0);
    yy
}

/// `|<psi| sigma_y (x) sigma_y |psi*>|`.
pub fn concurrence_pure(state: &TwoQubitPure) -> f64 {
    let v = state.coeffs();
    let flipped = spin_flip() * v.conjugate();
    v.dotc(&flipped).norm()
}

/// Wootters concurrence of a two-qubit density.
pub fn concurrence(rho: &TwoQubitDensity) -> f64 {
    let m = rho.matrix();
    let yy = spin_flip();
    let tilde = yy * m.conjugate() * yy;
    let root = psd_sqrt(m);
    let r = root * tilde * root;
    let r = (r + r.adjoint()) * c(0.5);
    let mut lambdas: Vec<f64> = SymmetricEigen::new(r)
        .eigenvalues
        .iter()
        .map(|&v| v.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Exact entanglement of formation of a two-qubit density, in ebits.
pub fn eof_wootters(rho: &TwoQubitDensity) -> f64 {
    entanglement_from_concurrence(concurrence(rho))
}

/// `h[f] = H(1/2 + sqrt(f(1-f)))` for `f >= 1/2`, zero below.
pub fn eof_lower_bound(f: EntFraction) -> f64 {
    let f = f.value();
    if f < 0.5 {
        return 0.0;
    }
    let x = (0.5 + (f * (1.0 - f)).sqrt()).min(1.0);
    binary_entropy(x).expect("x lies in [1/2, 1]")
}

/// Maximally entangled state `(U (x) I)|Phi+>` with `U = q0 I + i(q . sigma)` and the
/// unit quaternion `q` given by three hyperspherical angles.
pub fn maximally_entangled_state(angles: &[f64]) -> Vector4c {
    let (t1, t2, phi) = (angles[0], angles[1], angles[2]);
    let q0 = t1.cos();
    let q1 = t1.sin() * t2.cos();
    let q2 = t1.sin() * t2.sin() * phi.cos();
    let q3 = t1.sin() * t2.sin() * phi.sin();
    let i = C64::i();
    let u = Matrix2::new(
        c(q0) + i * c(q3),
        i * c(q1) + c(q2),
        i * c(q1) - c(q2),
        c(q0) - i * c(q3),
    );
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Vector4c::new(u[(0, 0)] * s, u[(0, 1)] * s, u[(1, 0)] * s, u[(1, 1)] * s)
}

/// Maximum overlap of `rho` with any maximally entangled two-qubit state, found by
/// multi-start Nelder–Mead over local-unitary angles followed by restarts from the
/// incumbent until the value stops moving by more than 1e-12.
pub fn fully_entangled_fraction(rho: &TwoQubitDensity) -> Result<EntFraction> {
    let objective = |x: &[f64]| rho.expectation(&maximally_entangled_state(x));
    let mut rng = ChaCha8Rng::seed_from_u64(FEF_SEED);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..FEF_STARTS {
        let start: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        let r = nelder_mead_max(&objective, &start, 0.6, 1e-15, 4000);
        if best.as_ref().is_none_or(|(_, v)| r.value > *v) {
            best = Some((r.x, r.value));
        }
    }
    let (mut x, mut value) = best.expect("at least one start");
    let mut settled = false;
    for _ in 0..20 {
        let r = nelder_mead_max(&objective, &x, 1e-3, 1e-17, 4000);
        let gain = r.value - value;
        if r.value > value {
            x = r.x;
            value = r.value;
        }
        if gain.abs() <= 1e-12 {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(Error::NonConvergence {
            message: "entangled-fraction refinement kept improving".into(),
            best_value: value,
        });
    }
    EntFraction::clamped(value)
}

/// Product-basis spin-flip operator, exposed for tests and diagnostics.
pub fn spin_flip_operator() -> Matrix4<C64> {
    spin_flip()
}
