//! Brute-force verifier in the truncated photon-number basis.
//!
//! Every state is built explicitly from Fock amplitudes: coherent vectors,
//! superpositions, beam-splitter action, partial traces and operator traces.
//! Nothing in here calls the closed-form modules it is used to check; the only
//! shared code is the bit-entropy sum.

use nalgebra::{DMatrix, Matrix4};

use crate::coherent::{CharFuncPoint, CoherentQuasiBell};
use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues, shannon_bits, C64};
use crate::quasi_bell::QbIndex;

/// Population allowed in the top levels before a result is considered truncation-limited.
pub const TAIL_TOLERANCE: f64 = 1e-13;
const TAIL_LEVELS: usize = 5;
/// Eigenvalues at or below this contribute nothing to the entropy.
pub const ENTROPY_FLOOR: f64 = 1e-14;

/// `ceil(a^2 + 10 sqrt(a^2 + 1) + 20)`; keeps the Poisson tail below 1e-12 through `a = 3`.
pub fn required_truncation(alpha_max: f64) -> usize {
    let a2 = alpha_max * alpha_max;
    (a2 + 10.0 * (a2 + 1.0).sqrt() + 20.0).ceil() as usize
}

pub fn check_truncation(truncation: usize, alpha_max: f64) -> Result<()> {
    let required = required_truncation(alpha_max);
    if truncation < required {
        Err(Error::TruncationTooSmall { truncation, required })
    } else {
        Ok(())
    }
}

/// Pure state of `modes` bosonic modes, each truncated at photon number `truncation`.
/// Amplitudes are stored row-major with mode 0 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    modes: usize,
    truncation: usize,
    amps: Vec<C64>,
}

impl FockVector {
    pub fn zeros(modes: usize, truncation: usize) -> Self {
        let dim = (truncation + 1).pow(modes as u32);
        FockVector {
            modes,
            truncation,
            amps: vec![C64::new(0.0, 0.0); dim],
        }
    }

    pub fn from_amplitudes(modes: usize, truncation: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != (truncation + 1).pow(modes as u32) {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes do not fit {modes} modes at truncation {truncation}",
                amps.len()
            )));
        }
        Ok(FockVector { modes, truncation, amps })
    }

    /// `|n>` for a single mode.
    pub fn number_state(n: usize, truncation: usize) -> Self {
        let mut v = Self::zeros(1, truncation);
        v.amps[n] = c(1.0);
        v
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn levels(&self) -> usize {
        self.truncation + 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    fn stride(&self, mode: usize) -> usize {
        self.levels().pow((self.modes - 1 - mode) as u32)
    }

    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_squared().sqrt();
        if n == 0.0 {
            return Err(Error::InvalidArgument("cannot normalize the zero vector".into()));
        }
        self.amps.iter_mut().for_each(|z| *z /= n);
        Ok(self)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockVector) -> C64 {
        assert_eq!(self.amps.len(), other.amps.len(), "shape mismatch");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scaled(&self, s: C64) -> Self {
        FockVector {
            amps: self.amps.iter().map(|z| z * s).collect(),
            ..*self
        }
    }

    pub fn plus(&self, other: &FockVector) -> Self {
        assert_eq!(self.amps.len(), other.amps.len(), "shape mismatch");
        FockVector {
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
            ..*self
        }
    }

    pub fn tensor(&self, other: &FockVector) -> Self {
        assert_eq!(self.truncation, other.truncation, "truncation mismatch");
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        FockVector {
            modes: self.modes + other.modes,
            truncation: self.truncation,
            amps,
        }
    }

    /// Largest single-mode population found in the top `TAIL_LEVELS` photon numbers.
    pub fn tail_mass(&self) -> f64 {
        let levels = self.levels();
        let start = levels.saturating_sub(TAIL_LEVELS);
        (0..self.modes)
            .map(|mode| {
                let stride = self.stride(mode);
                self.amps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (i / stride) % levels >= start)
                    .map(|(_, z)| z.norm_sqr())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Reduced density on the modes listed in `keep` (in that order).
    pub fn partial_trace(&self, keep: &[usize]) -> FockDensity {
        let m = self.reshape(keep);
        FockDensity {
            modes: keep.len(),
            truncation: self.truncation,
            matrix: &m * m.adjoint(),
        }
    }

    /// Matrix with rows indexed by the kept modes and columns by the rest.
    fn reshape(&self, keep: &[usize]) -> DMatrix<C64> {
        let levels = self.levels();
        let rest: Vec<usize> = (0..self.modes).filter(|m| !keep.contains(m)).collect();
        let rows = levels.pow(keep.len() as u32);
        let cols = levels.pow(rest.len() as u32);
        let mut m = DMatrix::zeros(rows, cols);
        for (i, z) in self.amps.iter().enumerate() {
            let digit = |mode: usize| (i / self.stride(mode)) % levels;
            let r = keep.iter().fold(0, |acc, &k| acc * levels + digit(k));
            let col = rest.iter().fold(0, |acc, &k| acc * levels + digit(k));
            m[(r, col)] = *z;
        }
        m
    }
}

/// Density operator on `modes` truncated modes.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensity {
    modes: usize,
    truncation: usize,
    matrix: DMatrix<C64>,
}

impl FockDensity {
    pub fn from_matrix(modes: usize, truncation: usize, matrix: DMatrix<C64>) -> Result<Self> {
        let dim = (truncation + 1).pow(modes as u32);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::InvalidArgument(format!("density must be {dim}x{dim}")));
        }
        Ok(FockDensity { modes, truncation, matrix })
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Mean photon number of a single-mode density.
    pub fn mean_photon_number(&self) -> f64 {
        assert_eq!(self.modes, 1, "photon number is defined here for one mode");
        (0..self.matrix.nrows()).map(|n| n as f64 * self.matrix[(n, n)].re).sum()
    }

    /// Reduced density on `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> FockDensity {
        let levels = self.truncation + 1;
        let stride = |mode: usize| levels.pow((self.modes - 1 - mode) as u32);
        let rest: Vec<usize> = (0..self.modes).filter(|m| !keep.contains(m)).collect();
        let kept_dim = levels.pow(keep.len() as u32);
        let mut out = DMatrix::zeros(kept_dim, kept_dim);
        let dim = self.matrix.nrows();
        let split = |i: usize| {
            let digit = |mode: usize| (i / stride(mode)) % levels;
            let k = keep.iter().fold(0, |acc, &m| acc * levels + digit(m));
            let r = rest.iter().fold(0, |acc, &m| acc * levels + digit(m));
            (k, r)
        };
        let parts: Vec<(usize, usize)> = (0..dim).map(split).collect();
        for i in 0..dim {
            for j in 0..dim {
                if parts[i].1 == parts[j].1 {
                    out[(parts[i].0, parts[j].0)] += self.matrix[(i, j)];
                }
            }
        }
        FockDensity {
            modes: keep.len(),
            truncation: self.truncation,
            matrix: out,
        }
    }
}

/// Pure-state density `|v><v|`.
pub fn density_of(v: &FockVector) -> FockDensity {
    let col = DMatrix::from_column_slice(v.amps.len(), 1, &v.amps);
    FockDensity {
        modes: v.modes,
        truncation: v.truncation,
        matrix: &col * col.adjoint(),
    }
}

/// `-sum lambda log2 lambda` over eigenvalues above `ENTROPY_FLOOR`.
pub fn von_neumann_entropy(rho: &FockDensity) -> f64 {
    shannon_bits(&rho.eigenvalues(), ENTROPY_FLOOR)
}

/// Coherent state `|alpha>` with amplitudes `e^{-a^2/2} a^n / sqrt(n!)`; the truncation
/// must satisfy the adequacy rule.
pub fn coherent_vector(alpha: f64, truncation: usize) -> Result<FockVector> {
    check_truncation(truncation, alpha.abs())?;
    Ok(coherent_vector_unchecked(alpha, truncation))
}

/// Coherent vector at an explicitly overridden truncation.
pub fn coherent_vector_unchecked(alpha: f64, truncation: usize) -> FockVector {
    let mut amps = Vec::with_capacity(truncation + 1);
    let mut term = (-alpha * alpha / 2.0).exp();
    amps.push(c(term));
    for n in 1..=truncation {
        term *= alpha / (n as f64).sqrt();
        amps.push(c(term));
    }
    FockVector {
        modes: 1,
        truncation,
        amps,
    }
}

/// Unnormalized two-mode superposition of the requested quasi-Bell state,
/// `|a>|-b> +- |-a>|b>` (indices 1, 2) or `|a>|b> +- |-a>|-b>` (indices 3, 4).
pub fn quasi_bell_fock_unnormalized(state: &CoherentQuasiBell, truncation: usize) -> Result<FockVector> {
    let (a, b) = (state.alpha(), state.beta());
    check_truncation(truncation, a.abs().max(b.abs()))?;
    let pa = coherent_vector_unchecked(a, truncation);
    let ma = coherent_vector_unchecked(-a, truncation);
    let pb = coherent_vector_unchecked(b, truncation);
    let mb = coherent_vector_unchecked(-b, truncation);
    let (first, second, sign) = match state.index() {
        QbIndex::One => (pa.tensor(&mb), ma.tensor(&pb), 1.0),
        QbIndex::Two => (pa.tensor(&mb), ma.tensor(&pb), -1.0),
        QbIndex::Three => (pa.tensor(&pb), ma.tensor(&mb), 1.0),
        QbIndex::Four => (pa.tensor(&pb), ma.tensor(&mb), -1.0),
    };
    Ok(first.plus(&second.scaled(c(sign))))
}

pub fn build_quasi_bell_fock(state: &CoherentQuasiBell, truncation: usize) -> Result<FockVector> {
    quasi_bell_fock_unnormalized(state, truncation)?.normalized()
}

/// Block of the beam-splitter unitary on the sector with `total` photons shared
/// between the two modes, in the basis `|k, total-k>`, `k = 0..=total`.
fn beam_splitter_block(total: usize, eta: f64) -> DMatrix<f64> {
    let theta = eta.sqrt().clamp(0.0, 1.0).acos();
    let size = total + 1;
    // generator theta (b e^dag - b^dag e)
    let generator = DMatrix::from_fn(size, size, |row, col| {
        let k = col as f64;
        let rest = (total - col) as f64;
        if row + 1 == col {
            theta * (k * (rest + 1.0)).sqrt()
        } else if row == col + 1 {
            -theta * ((k + 1.0) * rest).sqrt()
        } else {
            0.0
        }
    });
    generator.exp()
}

/// Applies the transmissivity-`eta` beam splitter coupling `mode_b` and `mode_e`.
/// On coherent inputs it maps `|a>|0>` to `|sqrt(eta) a>|sqrt(1-eta) a>`.
/// Amplitude pushed beyond the truncation box is reported as an overflow error.
pub fn beam_splitter(vec: &FockVector, mode_b: usize, mode_e: usize, eta: f64) -> Result<FockVector> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidTransmissivity(eta));
    }
    if mode_b == mode_e || mode_b >= vec.modes || mode_e >= vec.modes {
        return Err(Error::InvalidArgument("beam splitter needs two distinct modes".into()));
    }
    let levels = vec.levels();
    let n_max = vec.truncation;
    let (sb, se) = (vec.stride(mode_b), vec.stride(mode_e));
    let spectator_bases: Vec<usize> = (0..vec.amps.len())
        .filter(|i| (i / sb) % levels == 0 && (i / se) % levels == 0)
        .collect();

    let mut out = FockVector::zeros(vec.modes, vec.truncation);
    let mut lost = 0.0;
    for total in 0..=2 * n_max {
        let k_lo = total.saturating_sub(n_max);
        let k_hi = total.min(n_max);
        let occupied = spectator_bases.iter().any(|&base| {
            (k_lo..=k_hi).any(|k| vec.amps[base + k * sb + (total - k) * se].norm_sqr() > 0.0)
        });
        if !occupied {
            continue;
        }
        let u = beam_splitter_block(total, eta);
        for &base in &spectator_bases {
            let input: Vec<(usize, C64)> = (k_lo..=k_hi)
                .map(|k| (k, vec.amps[base + k * sb + (total - k) * se]))
                .filter(|(_, z)| z.norm_sqr() > 0.0)
                .collect();
            if input.is_empty() {
                continue;
            }
            for row in 0..=total {
                let value: C64 = input.iter().map(|&(k, z)| z * u[(row, k)]).sum();
                if row > n_max || total - row > n_max {
                    lost += value.norm_sqr();
                } else {
                    out.amps[base + row * sb + (total - row) * se] += value;
                }
            }
        }
    }
    if lost > TAIL_TOLERANCE {
        return Err(Error::TruncationOverflow {
            tail_mass: lost,
            tolerance: TAIL_TOLERANCE,
        });
    }
    Ok(out)
}

/// Exponential of a nilpotent matrix by its terminating power series.
fn nilpotent_exp(m: &DMatrix<C64>) -> DMatrix<C64> {
    let dim = m.nrows();
    let mut result = DMatrix::identity(dim, dim);
    let mut term = DMatrix::identity(dim, dim);
    for k in 1..=dim {
        term = &term * m / c(k as f64);
        if term.iter().all(|z| *z == C64::new(0.0, 0.0)) {
            break;
        }
        result += &term;
    }
    result
}

fn creation(levels: usize) -> DMatrix<C64> {
    DMatrix::from_fn(levels, levels, |row, col| {
        if row == col + 1 {
            c((row as f64).sqrt())
        } else {
            c(0.0)
        }
    })
}

/// `e^{z a^dag} e^{-z* a}` on one truncated mode.
pub fn displacement_factor(z: C64, levels: usize) -> DMatrix<C64> {
    let a_dag = creation(levels);
    let a = a_dag.adjoint();
    nilpotent_exp(&(a_dag * z)) * nilpotent_exp(&(a * (-z.conj())))
}

/// `Tr[rho e^{za a^dag} e^{-za* a} (x) e^{zb b^dag} e^{-zb* b}] e^{-(|za|^2+|zb|^2)/2}` for
/// a two-mode pure state.
pub fn operator_trace_charfunc(vec: &FockVector, p: CharFuncPoint) -> Result<C64> {
    if vec.modes != 2 {
        return Err(Error::InvalidArgument("characteristic function needs two modes".into()));
    }
    let tail = vec.tail_mass();
    if tail > TAIL_TOLERANCE {
        return Err(Error::TruncationOverflow {
            tail_mass: tail,
            tolerance: TAIL_TOLERANCE,
        });
    }
    let levels = vec.levels();
    let xa = displacement_factor(p.zeta_a, levels);
    let xb = displacement_factor(p.zeta_b, levels);
    // psi as a matrix psi[m, n]; (Xa (x) Xb) psi = Xa psi Xb^T
    let psi = DMatrix::from_row_slice(levels, levels, &vec.amps);
    let moved = &xa * &psi * xb.transpose();
    let value: C64 = psi.iter().zip(moved.iter()).map(|(a, b)| a.conj() * b).sum();
    let gauss = (-(p.zeta_a.norm_sqr() + p.zeta_b.norm_sqr()) / 2.0).exp();
    Ok(value * gauss)
}

/// `|Psi2(alpha)>_AB (x) |0>_E` after the loss beam splitter on B: the three-mode
/// purification of the decohered Alice–Bob state.
pub fn lossy_tripartite(alpha: f64, eta: f64, truncation: usize) -> Result<FockVector> {
    let psi = build_quasi_bell_fock(&CoherentQuasiBell::symmetric(QbIndex::Two, alpha)?, truncation)?;
    let vacuum = FockVector::number_state(0, truncation);
    beam_splitter(&psi.tensor(&vacuum), 1, 2, eta)
}

/// `<Psi2(beta)| rho_AB |Psi2(beta)>` with `rho_AB = Tr_E |tri><tri|`.
pub fn family_overlap(tripartite: &FockVector, beta: f64) -> Result<f64> {
    let probe = build_quasi_bell_fock(&CoherentQuasiBell::symmetric(QbIndex::Two, beta)?, tripartite.truncation)?;
    let levels = tripartite.levels();
    let ab = levels * levels;
    let mut total = 0.0;
    for e in 0..levels {
        let amp: C64 = (0..ab).map(|i| probe.amps[i].conj() * tripartite.amps[i * levels + e]).sum();
        total += amp.norm_sqr();
    }
    Ok(total)
}

/// Even and odd cat vectors `(|a> +- |-a>)/norm`; when the odd one vanishes (`a = 0`)
/// `|1>` stands in for it.
pub fn cat_basis(alpha: f64, truncation: usize) -> [FockVector; 2] {
    let p = coherent_vector_unchecked(alpha, truncation);
    let m = coherent_vector_unchecked(-alpha, truncation);
    let even = p.plus(&m).normalized().expect("even cat never vanishes");
    let odd_raw = p.plus(&m.scaled(c(-1.0)));
    let odd = if odd_raw.norm_squared() > 1e-24 {
        odd_raw.normalized().expect("nonzero")
    } else {
        FockVector::number_state(1, truncation)
    };
    [even, odd]
}

/// Alice–Bob density of a three-mode vector projected onto `basis_a (x) basis_b`, tracing
/// mode 2 exactly.
pub fn reduced_in_basis(tripartite: &FockVector, basis_a: &[FockVector; 2], basis_b: &[FockVector; 2]) -> Matrix4<C64> {
    let levels = tripartite.levels();
    let mut coeffs = vec![[C64::new(0.0, 0.0); 4]; levels];
    for (e, slot) in coeffs.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C64::new(0.0, 0.0);
                for a in 0..levels {
                    let ua = basis_a[i].amps[a].conj();
                    if ua.norm_sqr() == 0.0 {
                        continue;
                    }
                    for b in 0..levels {
                        acc += ua * basis_b[j].amps[b].conj() * tripartite.amps[(a * levels + b) * levels + e];
                    }
                }
                slot[2 * i + j] = acc;
            }
        }
    }
    Matrix4::from_fn(|r, s| coeffs.iter().map(|v| v[r] * v[s].conj()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn truncation_rule() {
        assert_eq!(required_truncation(0.0), 30);
        assert_eq!(required_truncation(1.0), 36);
        assert_eq!(required_truncation(3.0), 61);
        assert!(matches!(coherent_vector(3.0, 20), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn coherent_vector_examples() {
        let v = coherent_vector(0.0, 30).unwrap();
        assert_eq!(v.amplitudes()[0], c(1.0));
        assert!(v.amplitudes()[1..].iter().all(|z| z.norm() == 0.0));

        let p = coherent_vector(1.0, 40).unwrap();
        let m = coherent_vector(-1.0, 40).unwrap();
        assert!((p.norm_squared() - 1.0).abs() < 1e-14);
        assert!((p.inner(&m).re - (-2.0f64).exp()).abs() < 1e-12);

        // N = 60 is below the default rule for alpha = 3, hence the override
        let v = coherent_vector_unchecked(3.0, 60);
        let rho = density_of(&v);
        assert!((rho.mean_photon_number() - 9.0).abs() < 1e-9);
    }

    #[test]
    fn beam_splitter_on_coherent_input() {
        let n = 40;
        let input = coherent_vector(1.0, n).unwrap().tensor(&FockVector::number_state(0, n));
        let out = beam_splitter(&input, 0, 1, 0.5).unwrap();
        let s = 0.5f64.sqrt();
        let target = coherent_vector_unchecked(s, n).tensor(&coherent_vector_unchecked(s, n));
        let fidelity = target.inner(&out).norm_sqr();
        assert!(fidelity >= 1.0 - 1e-9, "{fidelity}");
    }

    #[test]
    fn beam_splitter_vacuum_and_unitarity() {
        let n = 12;
        let vac = FockVector::number_state(0, n).tensor(&FockVector::number_state(0, n));
        let out = beam_splitter(&vac, 0, 1, 0.3).unwrap();
        assert!((out.inner(&vac).norm() - 1.0).abs() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let levels = n + 1;
        let amps: Vec<C64> = (0..levels * levels)
            .map(|i| {
                if i / levels + i % levels <= n {
                    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                } else {
                    c(0.0)
                }
            })
            .collect();
        let v = FockVector::from_amplitudes(2, n, amps).unwrap().normalized().unwrap();
        let out = beam_splitter(&v, 0, 1, 0.37).unwrap();
        assert!((out.norm_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beam_splitter_overflow_is_reported() {
        let n = 4;
        let v = FockVector::number_state(n, n).tensor(&FockVector::number_state(n, n));
        let err = beam_splitter(&v, 0, 1, 0.5).unwrap_err();
        assert!(matches!(err, Error::TruncationOverflow { .. }));
    }

    #[test]
    fn partial_trace_examples() {
        let n = 40;
        let prod = coherent_vector(1.0, n).unwrap().tensor(&coherent_vector(0.7, n).unwrap());
        let rho_a = prod.partial_trace(&[0]);
        assert!((rho_a.purity() - 1.0).abs() < 1e-12);
        assert!((rho_a.trace() - 1.0).abs() < 1e-12);

        let psi = build_quasi_bell_fock(&CoherentQuasiBell::symmetric(QbIndex::Two, 1.0).unwrap(), n).unwrap();
        let eig = psi.partial_trace(&[0]).eigenvalues();
        assert!((eig[0] - 0.5).abs() < 1e-12 && (eig[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn density_partial_trace_agrees_with_vector_route() {
        let n = 6;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let amps: Vec<C64> = (0..49).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let v = FockVector::from_amplitudes(2, n, amps).unwrap().normalized().unwrap();
        for keep in [[0usize], [1]] {
            let direct = v.partial_trace(&keep);
            let via_density = density_of(&v).partial_trace(&keep);
            assert!(crate::linalg::max_abs((direct.matrix() - via_density.matrix()).iter()) < 1e-14);
        }
    }

    #[test]
    fn entropy_examples() {
        let n = 36;
        let pure = density_of(&coherent_vector(1.0, n).unwrap());
        assert!(von_neumann_entropy(&pure).abs() < 1e-10);
        let mut m = DMatrix::zeros(n + 1, n + 1);
        m[(0, 0)] = c(0.5);
        m[(1, 1)] = c(0.5);
        let mixed = FockDensity::from_matrix(1, n, m).unwrap();
        assert!((von_neumann_entropy(&mixed) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quasi_bell_norms_and_entropy() {
        let n = 36;
        let k = (-2.0f64).exp();
        for (index, expected) in [(QbIndex::One, 2.0 * (1.0 + k * k)), (QbIndex::Two, 2.0 * (1.0 - k * k))] {
            let s = CoherentQuasiBell::symmetric(index, 1.0).unwrap();
            let raw = quasi_bell_fock_unnormalized(&s, n).unwrap();
            assert!((raw.norm_squared() - expected).abs() < 1e-10);
        }
        let psi = build_quasi_bell_fock(&CoherentQuasiBell::symmetric(QbIndex::Four, 0.3).unwrap(), 31).unwrap();
        assert!((von_neumann_entropy(&psi.partial_trace(&[0])) - 1.0).abs() < 1e-9);
        let psi = build_quasi_bell_fock(&CoherentQuasiBell::symmetric(QbIndex::One, 1.0).unwrap(), n).unwrap();
        let e = von_neumann_entropy(&psi.partial_trace(&[0]));
        assert!((e - 0.948_418_466_236_661_4).abs() < 1e-9);
    }

    #[test]
    fn charfunc_of_coherent_product() {
        let n = 40;
        let (a, b) = (0.8, -0.4);
        let v = coherent_vector(a, n).unwrap().tensor(&coherent_vector(b, n).unwrap());
        let zero = operator_trace_charfunc(&v, CharFuncPoint::new(c(0.0), c(0.0))).unwrap();
        assert!((zero - c(1.0)).norm() < 1e-12);
        let p = CharFuncPoint::new(C64::new(0.3, -0.7), C64::new(-1.1, 0.4));
        let gauss = |z: C64, alpha: f64| (z * alpha - z.conj() * alpha - c(z.norm_sqr() / 2.0)).exp();
        let expected = gauss(p.zeta_a, a) * gauss(p.zeta_b, b);
        let got = operator_trace_charfunc(&v, p).unwrap();
        assert!((got - expected).norm() < 1e-8, "{got} vs {expected}");
    }

    #[test]
    fn schmidt_symmetry() {
        let psi = build_quasi_bell_fock(&CoherentQuasiBell::new(QbIndex::Two, 0.8, 1.7).unwrap(), 50).unwrap();
        let ea = psi.partial_trace(&[0]).eigenvalues();
        let eb = psi.partial_trace(&[1]).eigenvalues();
        for (x, y) in ea.iter().zip(&eb).take(4) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn tripartite_purity_at_half_transmission() {
        let n = required_truncation(1.0);
        let tri = lossy_tripartite(1.0, 0.5, n).unwrap();
        assert!((tri.norm_squared() - 1.0).abs() < 1e-12);
        let rho_e = tri.partial_trace(&[2]);
        let purity = rho_e.purity();
        assert!(purity < 1.0 && purity > 0.5);
    }
}
