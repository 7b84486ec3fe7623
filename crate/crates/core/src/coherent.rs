//! Quasi-Bell states on the coherent pair `|+-alpha>` of a bosonic mode, with an
//! optional different amplitude `beta` on mode B.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, C64};
use crate::quasi_bell::{Overlap, QbIndex, Spectrum};

/// Number of phase-space samples used by the gaussianity witness by default.
pub const DEFAULT_WITNESS_SAMPLES: usize = 128;
/// Points whose characteristic-function magnitude falls below this are left out of the fit.
pub const WITNESS_MAGNITUDE_FLOOR: f64 = 1e-10;

/// `<alpha|-alpha> = exp(-2 alpha^2)`.
pub fn overlap_of_amplitude(alpha: f64) -> f64 {
    (-2.0 * alpha * alpha).exp()
}

/// Overlap of two real-amplitude coherent states, `exp(-(a-b)^2/2)`.
pub fn coherent_overlap(a: f64, b: f64) -> f64 {
    (-(a - b) * (a - b) / 2.0).exp()
}

/// A quasi-Bell state on coherent states: `|alpha>,|-alpha>` on mode A and
/// `|beta>,|-beta>` on mode B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentQuasiBell {
    index: QbIndex,
    alpha: f64,
    beta: f64,
}

impl CoherentQuasiBell {
    pub fn new(index: QbIndex, alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidAmplitude(format!("amplitudes must be finite, got {alpha}, {beta}")));
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(Error::InvalidAmplitude(
                "alpha = beta = 0 makes the two coherent states identical (overlap 1)".into(),
            ));
        }
        Ok(CoherentQuasiBell { index, alpha, beta })
    }

    pub fn symmetric(index: QbIndex, alpha: f64) -> Result<Self> {
        Self::new(index, alpha, alpha)
    }

    pub fn index(&self) -> QbIndex {
        self.index
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    /// The overlap `kappa` of the symmetric state, for use with the abstract layer.
    pub fn overlap(&self) -> Result<Overlap> {
        if !self.is_symmetric() {
            return Err(Error::InvalidArgument("overlap is a single number only when beta = alpha".into()));
        }
        Overlap::new(overlap_of_amplitude(self.alpha))
    }

    /// The two product terms `(a1, b1)`, `(a2, b2)` and their relative sign.
    fn terms(&self) -> ([(f64, f64); 2], f64) {
        let (a, b) = (self.alpha, self.beta);
        let pairs = if matches!(self.index, QbIndex::One | QbIndex::Two) {
            [(a, -b), (-a, b)]
        } else {
            [(a, b), (-a, -b)]
        };
        let sign = if matches!(self.index, QbIndex::Two | QbIndex::Four) { -1.0 } else { 1.0 };
        (pairs, sign)
    }

    /// `h^2` computed from the coherent overlaps of the two product terms.
    fn norm_factor(&self) -> f64 {
        let ([(a1, b1), (a2, b2)], sign) = self.terms();
        let cross = coherent_overlap(a1, a2) * coherent_overlap(b1, b2);
        1.0 / (2.0 * (1.0 + sign * cross))
    }
}

/// Reduced mean photon numbers `(<n_A>, <n_B>)` of a symmetric state.
pub fn mean_photon_numbers(state: &CoherentQuasiBell) -> Result<(f64, f64)> {
    if !state.is_symmetric() {
        return Err(Error::InvalidArgument("mean photon numbers require beta = alpha".into()));
    }
    let a2 = state.alpha * state.alpha;
    let k2 = overlap_of_amplitude(state.alpha).powi(2);
    let n = if state.index.is_antisymmetric_norm() {
        (1.0 + k2) / (1.0 - k2) * a2
    } else {
        (1.0 - k2) / (1.0 + k2) * a2
    };
    Ok((n, n))
}

/// Phase-space argument of the two-mode characteristic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharFuncPoint {
    pub zeta_a: C64,
    pub zeta_b: C64,
}

impl CharFuncPoint {
    pub fn new(zeta_a: C64, zeta_b: C64) -> Self {
        CharFuncPoint { zeta_a, zeta_b }
    }

    pub fn is_finite(&self) -> bool {
        self.zeta_a.re.is_finite() && self.zeta_a.im.is_finite() && self.zeta_b.re.is_finite() && self.zeta_b.im.is_finite()
    }
}

/// `<gamma| e^{z a^dag} e^{-z* a} |delta>` for real coherent amplitudes.
fn displaced_element(z: C64, gamma: f64, delta: f64) -> C64 {
    (z * gamma - z.conj() * delta).exp() * coherent_overlap(gamma, delta)
}

/// `C(za, zb) = Tr[rho e^{za a^dag} e^{-za* a} e^{zb b^dag} e^{-zb* b}] e^{-(|za|^2+|zb|^2)/2}`,
/// summed term by term over the coherent dyads of `rho`.
pub fn characteristic_function(state: &CoherentQuasiBell, p: CharFuncPoint) -> C64 {
    let (pairs, sign) = state.terms();
    let weights = [1.0, sign];
    let mut total = C64::new(0.0, 0.0);
    for (k, &(ak, bk)) in pairs.iter().enumerate() {
        for (l, &(al, bl)) in pairs.iter().enumerate() {
            let w = weights[k] * weights[l];
            total += displaced_element(p.zeta_a, al, ak) * displaced_element(p.zeta_b, bl, bk) * w;
        }
    }
    let gauss = (-(p.zeta_a.norm_sqr() + p.zeta_b.norm_sqr()) / 2.0).exp();
    total * c(state.norm_factor() * gauss)
}

/// Sample points for the witness: half on a square grid of real arguments in
/// `[-2, 2]^2`, half on the same grid of purely imaginary arguments.
pub fn witness_points(sample_count: usize) -> Vec<CharFuncPoint> {
    let side = ((sample_count / 2) as f64).sqrt().floor() as usize;
    let side = side.max(2);
    let coord = |i: usize| -2.0 + 4.0 * i as f64 / (side - 1) as f64;
    let mut points = Vec::with_capacity(2 * side * side);
    for i in 0..side {
        for j in 0..side {
            points.push(CharFuncPoint::new(c(coord(i)), c(coord(j))));
        }
    }
    for i in 0..side {
        for j in 0..side {
            points.push(CharFuncPoint::new(C64::new(0.0, coord(i)), C64::new(0.0, coord(j))));
        }
    }
    points
}

fn quadratic_features(p: &CharFuncPoint) -> Vec<f64> {
    let x = [p.zeta_a.re, p.zeta_a.im, p.zeta_b.re, p.zeta_b.im];
    let mut row = Vec::with_capacity(15);
    row.push(1.0);
    row.extend_from_slice(&x);
    for i in 0..4 {
        for j in i..4 {
            row.push(x[i] * x[j]);
        }
    }
    row
}

/// Fits `ln|C|` over `witness_points(sample_count)` to the closest quadratic form in the
/// four real phase-space coordinates and returns the largest absolute residual.
/// A Gaussian state gives zero up to rounding.
pub fn gaussianity_residual<F>(charfunc: F, sample_count: usize) -> Result<f64>
where
    F: Fn(CharFuncPoint) -> Result<C64>,
{
    let mut rows = Vec::new();
    let mut targets = Vec::new();
    for p in witness_points(sample_count) {
        let value = charfunc(p)?;
        let magnitude = value.norm();
        if magnitude < WITNESS_MAGNITUDE_FLOOR {
            continue;
        }
        rows.push(quadratic_features(&p));
        targets.push(magnitude.ln());
    }
    if rows.len() < 15 {
        return Err(Error::InvalidArgument(format!(
            "only {} usable sample points for the quadratic fit",
            rows.len()
        )));
    }
    let design = DMatrix::from_fn(rows.len(), 15, |r, k| rows[r][k]);
    let y = DVector::from_vec(targets);
    let svd = design.clone().svd(true, true);
    let coeffs = svd
        .solve(&y, 1e-12)
        .map_err(|e| Error::InvalidArgument(format!("least squares failed: {e}")))?;
    let residual = design * coeffs - y;
    Ok(residual.amax())
}

pub fn gaussianity_witness(state: &CoherentQuasiBell, sample_count: usize) -> Result<f64> {
    if state.alpha == 0.0 {
        return Err(Error::InvalidAmplitude("witness needs alpha > 0".into()));
    }
    gaussianity_residual(|p| Ok(characteristic_function(state, p)), sample_count)
}

/// Reduced spectrum of `|Psi2>` or `|Psi4>` with amplitude `alpha` on A and `beta` on B.
pub fn asymmetric_spectrum(alpha: f64, beta: f64, index: QbIndex) -> Result<Spectrum> {
    if !index.is_antisymmetric_norm() {
        return Err(Error::InvalidArgument(format!("asymmetric spectrum is defined for indices 2 and 4, got {index}")));
    }
    let ka = overlap_of_amplitude(alpha);
    let kb = overlap_of_amplitude(beta);
    if ka * kb >= 1.0 {
        return Err(Error::InvalidAmplitude("alpha and beta cannot both be zero".into()));
    }
    let denom = 2.0 * (1.0 - ka * kb);
    Ok(Spectrum::new(vec![(1.0 + ka) * (1.0 - kb) / denom, (1.0 - ka) * (1.0 + kb) / denom]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock;
    use crate::quasi_bell::{entropy_of_entanglement, QuasiBellSpec};

    #[test]
    fn overlap_examples() {
        assert!((overlap_of_amplitude(1.0) - 0.1353352832366127).abs() < 1e-16);
        assert_eq!(overlap_of_amplitude(0.0), 1.0);
        assert!(overlap_of_amplitude(30.0) < 1e-300);
        let p = fock::coherent_vector(1.0, 40).unwrap();
        let m = fock::coherent_vector(-1.0, 40).unwrap();
        assert!((p.inner(&m).re - overlap_of_amplitude(1.0)).abs() < 1e-12);
    }

    #[test]
    fn constructor_rejects_degenerate() {
        assert!(CoherentQuasiBell::symmetric(QbIndex::Two, 0.0).is_err());
        assert!(CoherentQuasiBell::symmetric(QbIndex::One, 0.0).is_err());
        assert!(CoherentQuasiBell::symmetric(QbIndex::One, f64::INFINITY).is_err());
        assert!(CoherentQuasiBell::new(QbIndex::Two, 0.0, 1.0).is_ok());
    }

    #[test]
    fn mean_photon_examples() {
        let n1 = mean_photon_numbers(&CoherentQuasiBell::symmetric(QbIndex::One, 1.0).unwrap()).unwrap();
        assert!((n1.0 - 0.964_027_580_075_816_8).abs() < 1e-12);
        let n2 = mean_photon_numbers(&CoherentQuasiBell::symmetric(QbIndex::Two, 1.0).unwrap()).unwrap();
        assert!((n2.1 - 1.037_314_720_727_548_2).abs() < 1e-12);
        let n = mean_photon_numbers(&CoherentQuasiBell::symmetric(QbIndex::Two, 3.0).unwrap()).unwrap();
        assert!((n.0 - 9.0).abs() < 1e-6);
        assert!(mean_photon_numbers(&CoherentQuasiBell::new(QbIndex::Two, 1.0, 2.0).unwrap()).is_err());
    }

    #[test]
    fn mean_photon_matches_oracle() {
        for index in QbIndex::ALL {
            let s = CoherentQuasiBell::symmetric(index, 1.0).unwrap();
            let psi = fock::build_quasi_bell_fock(&s, 36).unwrap();
            let numeric = psi.partial_trace(&[0]).mean_photon_number();
            assert!((numeric - mean_photon_numbers(&s).unwrap().0).abs() < 1e-10);
        }
    }

    #[test]
    fn charfunc_normalization_and_oracle() {
        for index in QbIndex::ALL {
            let s = CoherentQuasiBell::symmetric(index, 0.5).unwrap();
            let v = characteristic_function(&s, CharFuncPoint::new(c(0.0), c(0.0)));
            assert!((v - c(1.0)).norm() < 1e-14);
        }
        let s = CoherentQuasiBell::symmetric(QbIndex::Two, 1.0).unwrap();
        let p = CharFuncPoint::new(C64::new(0.0, 0.3), c(0.0));
        let psi = fock::build_quasi_bell_fock(&s, 36).unwrap();
        let oracle = fock::operator_trace_charfunc(&psi, p).unwrap();
        assert!((characteristic_function(&s, p) - oracle).norm() < 1e-8);

        let s = CoherentQuasiBell::symmetric(QbIndex::Three, 1.0).unwrap();
        let p = CharFuncPoint::new(c(0.5), c(0.5));
        let v = characteristic_function(&s, p);
        assert!(v.im.abs() < 1e-10);
        let psi = fock::build_quasi_bell_fock(&s, 36).unwrap();
        assert!((fock::operator_trace_charfunc(&psi, p).unwrap() - v).norm() < 1e-8);
    }

    #[test]
    fn charfunc_hermiticity() {
        let s = CoherentQuasiBell::symmetric(QbIndex::Four, 0.9).unwrap();
        let p = CharFuncPoint::new(C64::new(0.3, -0.8), C64::new(1.2, 0.4));
        let q = CharFuncPoint::new(-p.zeta_a.conj(), -p.zeta_b.conj());
        let a = characteristic_function(&s, p);
        let b = characteristic_function(&s, q);
        assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn witness_examples() {
        let control = fock::coherent_vector(1.0, 40).unwrap().tensor(&fock::coherent_vector(-0.5, 40).unwrap());
        let r = gaussianity_residual(|p| fock::operator_trace_charfunc(&control, p), DEFAULT_WITNESS_SAMPLES).unwrap();
        assert!(r <= 1e-9, "{r}");
        let r2 = gaussianity_witness(&CoherentQuasiBell::symmetric(QbIndex::Two, 1.0).unwrap(), DEFAULT_WITNESS_SAMPLES).unwrap();
        assert!(r2 > 0.01, "{r2}");
        let r4 = gaussianity_witness(&CoherentQuasiBell::symmetric(QbIndex::Four, 0.2).unwrap(), DEFAULT_WITNESS_SAMPLES).unwrap();
        assert!(r4 > 0.0, "{r4}");
        println!("witness residuals: index 2 alpha 1 -> {r2:e}, index 4 alpha 0.2 -> {r4:e}");
    }

    #[test]
    fn asymmetric_examples() {
        let s = asymmetric_spectrum(1.0, 1.0, QbIndex::Two).unwrap();
        assert!((s.values()[0] - 0.5).abs() < 1e-15 && (s.values()[1] - 0.5).abs() < 1e-15);
        let ka = overlap_of_amplitude(1.0);
        let s = asymmetric_spectrum(1.0, 6.0, QbIndex::Four).unwrap();
        assert!((s.values()[0] - (1.0 + ka) / 2.0).abs() < 1e-15);
        assert!((s.values()[1] - (1.0 - ka) / 2.0).abs() < 1e-15);
        assert!(asymmetric_spectrum(0.0, 0.0, QbIndex::Two).is_err());
        assert!(asymmetric_spectrum(1.0, 2.0, QbIndex::One).is_err());

        let psi = fock::build_quasi_bell_fock(&CoherentQuasiBell::new(QbIndex::Two, 1.0, 2.0).unwrap(), 50).unwrap();
        let eig = psi.partial_trace(&[0]).eigenvalues();
        let s = asymmetric_spectrum(1.0, 2.0, QbIndex::Two).unwrap();
        assert!((eig[0] - s.values()[0]).abs() < 1e-10);
        assert!((eig[1] - s.values()[1]).abs() < 1e-10);
    }

    #[test]
    fn photon_number_ordering() {
        for i in 1..=30 {
            let a = 0.1 * i as f64;
            let n1 = mean_photon_numbers(&CoherentQuasiBell::symmetric(QbIndex::One, a).unwrap()).unwrap().0;
            let n2 = mean_photon_numbers(&CoherentQuasiBell::symmetric(QbIndex::Two, a).unwrap()).unwrap().0;
            assert!(n1 < a * a && a * a < n2, "alpha {a}");
        }
    }

    #[test]
    fn symmetric_layer_matches_abstract_entropy() {
        let s = CoherentQuasiBell::symmetric(QbIndex::One, 1.0).unwrap();
        let e = entropy_of_entanglement(QuasiBellSpec { index: s.index(), kappa: s.overlap().unwrap() });
        assert!((e - 0.948_418_466_236_661_4).abs() < 1e-12);
    }
}
