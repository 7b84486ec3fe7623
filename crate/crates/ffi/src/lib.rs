//! C ABI over the `qbell` library.
//!
//! Every entry point returns a [`QbellStatus`] and writes results through out
//! pointers. Matrices cross the boundary as row-major arrays of 16 real parts and
//! 16 imaginary parts. The message of the most recent failure on the calling
//! thread is available from [`qbell_last_error`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qbell::coherent::{self, CharFuncPoint, CoherentQuasiBell};
use qbell::decoherence::{self, DecoheredState, LossChannel};
use qbell::linalg::{C64, Matrix4c};
use qbell::measures::{self, EntFraction, TwoQubitDensity};
use qbell::quasi_bell::{self, Overlap, QbIndex, QuasiBellSpec};
use qbell::werner::{self, QuasiWernerSpec};
use qbell::Error;

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QbellStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidOverlap = 2,
    InvalidIndex = 3,
    InvalidProbability = 4,
    InvalidTransmissivity = 5,
    InvalidAmplitude = 6,
    InvalidDensity = 7,
    NonConvergence = 8,
    Truncation = 9,
    InvalidArgument = 10,
    Panic = 11,
}

impl From<&Error> for QbellStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidOverlap(_) => QbellStatus::InvalidOverlap,
            Error::InvalidIndex(_) => QbellStatus::InvalidIndex,
            Error::InvalidProbability(_) => QbellStatus::InvalidProbability,
            Error::InvalidTransmissivity(_) => QbellStatus::InvalidTransmissivity,
            Error::InvalidAmplitude(_) => QbellStatus::InvalidAmplitude,
            Error::InvalidDensity(_) => QbellStatus::InvalidDensity,
            Error::NonConvergence { .. } => QbellStatus::NonConvergence,
            Error::TruncationTooSmall { .. } | Error::TruncationOverflow { .. } => QbellStatus::Truncation,
            Error::InvalidArgument(_) => QbellStatus::InvalidArgument,
        }
    }
}

/// Two-qubit density matrix.
pub struct QbellDensity(TwoQubitDensity);

/// Alice-Bob state after photon loss on Bob's mode.
pub struct QbellDecohered(DecoheredState);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard<F>(f: F) -> QbellStatus
where
    F: FnOnce() -> Result<(), QbellStatus>,
{
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QbellStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            QbellStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, QbellStatus>;
}

impl<T> OrStatus<T> for qbell::Result<T> {
    fn or_status(self) -> Result<T, QbellStatus> {
        self.map_err(|e| {
            set_last_error(e.to_string());
            QbellStatus::from(&e)
        })
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), QbellStatus> {
    if p.is_null() {
        set_last_error(format!("{name} is null"));
        Err(QbellStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn parse_index(n: u8) -> Result<QbIndex, QbellStatus> {
    QbIndex::try_from(n).or_status()
}

unsafe fn write<T>(out: *mut T, value: T) {
    out.write(value);
}

unsafe fn write_slice(out: *mut f64, values: &[f64]) {
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn qbell_status_message(status: QbellStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        QbellStatus::Ok => b"ok\0",
        QbellStatus::NullPointer => b"null pointer argument\0",
        QbellStatus::InvalidOverlap => b"invalid overlap\0",
        QbellStatus::InvalidIndex => b"invalid quasi-Bell index\0",
        QbellStatus::InvalidProbability => b"invalid probability\0",
        QbellStatus::InvalidTransmissivity => b"invalid transmissivity\0",
        QbellStatus::InvalidAmplitude => b"invalid amplitude\0",
        QbellStatus::InvalidDensity => b"invalid density matrix\0",
        QbellStatus::NonConvergence => b"maximizer did not converge\0",
        QbellStatus::Truncation => b"truncation inadequate\0",
        QbellStatus::InvalidArgument => b"invalid argument\0",
        QbellStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (NUL terminated,
/// truncated to `len`). Returns the buffer size needed for the whole message,
/// or 0 when the last call succeeded.
#[no_mangle]
pub unsafe extern "C" fn qbell_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Normalization constant of quasi-Bell state `index` (1..4) at overlap `kappa`.
#[no_mangle]
pub unsafe extern "C" fn qbell_normalization_constant(index: u8, kappa: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let kappa = Overlap::new(kappa).or_status()?;
        write(out, quasi_bell::normalization_constant(parse_index(index)?, kappa));
        Ok(())
    })
}

/// Off-diagonal Gram entry `2 kappa / (1 + kappa^2)`.
#[no_mangle]
pub unsafe extern "C" fn qbell_gram_d(kappa: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        write(out, Overlap::new(kappa).or_status()?.gram_d());
        Ok(())
    })
}

/// Reduced single-party spectrum, two values written descending to `out`.
#[no_mangle]
pub unsafe extern "C" fn qbell_reduced_spectrum(index: u8, kappa: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = QuasiBellSpec::new(parse_index(index)?, kappa).or_status()?;
        write_slice(out, quasi_bell::reduced_spectrum(spec).values());
        Ok(())
    })
}

/// Entanglement of the pure state in ebits.
#[no_mangle]
pub unsafe extern "C" fn qbell_entropy_of_entanglement(index: u8, kappa: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = QuasiBellSpec::new(parse_index(index)?, kappa).or_status()?;
        write(out, quasi_bell::entropy_of_entanglement(spec));
        Ok(())
    })
}

/// Four eigenvalues of the quasi-Werner state, descending.
#[no_mangle]
pub unsafe extern "C" fn qbell_quasi_werner_spectrum(fidelity: f64, kappa: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = QuasiWernerSpec::new(fidelity, kappa).or_status()?;
        write_slice(out, werner::quasi_werner_spectrum(spec).values());
        Ok(())
    })
}

/// Lower bound `H(1/2 + sqrt(f(1-f)))` on the entanglement of formation, 0 below f = 1/2.
#[no_mangle]
pub unsafe extern "C" fn qbell_eof_lower_bound(fraction: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = EntFraction::new(fraction).or_status()?;
        write(out, measures::eof_lower_bound(f));
        Ok(())
    })
}

/// `<alpha|-alpha> = exp(-2 alpha^2)`.
#[no_mangle]
pub extern "C" fn qbell_overlap_of_amplitude(alpha: f64) -> f64 {
    coherent::overlap_of_amplitude(alpha)
}

/// Mean photon numbers of modes A and B for the symmetric coherent state.
#[no_mangle]
pub unsafe extern "C" fn qbell_mean_photon_numbers(
    index: u8,
    alpha: f64,
    out_a: *mut f64,
    out_b: *mut f64,
) -> QbellStatus {
    guard(|| {
        non_null(out_a, "out_a")?;
        non_null(out_b, "out_b")?;
        let state = CoherentQuasiBell::symmetric(parse_index(index)?, alpha).or_status()?;
        let (na, nb) = coherent::mean_photon_numbers(&state).or_status()?;
        write(out_a, na);
        write(out_b, nb);
        Ok(())
    })
}

/// Symmetrically ordered characteristic function at `(zeta_a, zeta_b)`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn qbell_characteristic_function(
    index: u8,
    alpha: f64,
    beta: f64,
    za_re: f64,
    za_im: f64,
    zb_re: f64,
    zb_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QbellStatus {
    guard(|| {
        non_null(out_re, "out_re")?;
        non_null(out_im, "out_im")?;
        let state = CoherentQuasiBell::new(parse_index(index)?, alpha, beta).or_status()?;
        let p = CharFuncPoint::new(C64::new(za_re, za_im), C64::new(zb_re, zb_im));
        if !p.is_finite() {
            set_last_error("characteristic function argument is not finite".into());
            return Err(QbellStatus::InvalidArgument);
        }
        let v = coherent::characteristic_function(&state, p);
        write(out_re, v.re);
        write(out_im, v.im);
        Ok(())
    })
}

/// RMS residual of a quadratic fit to `ln|C|`; zero for Gaussian states.
#[no_mangle]
pub unsafe extern "C" fn qbell_gaussianity_witness(index: u8, alpha: f64, beta: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let state = CoherentQuasiBell::new(parse_index(index)?, alpha, beta).or_status()?;
        write(out, coherent::gaussianity_witness(&state, coherent::DEFAULT_WITNESS_SAMPLES).or_status()?);
        Ok(())
    })
}

/// Reduced spectrum of index 2 or 4 with amplitude `alpha` on A and `beta` on B.
#[no_mangle]
pub unsafe extern "C" fn qbell_asymmetric_spectrum(index: u8, alpha: f64, beta: f64, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let spectrum = coherent::asymmetric_spectrum(alpha, beta, parse_index(index)?).or_status()?;
        write_slice(out, spectrum.values());
        Ok(())
    })
}

/// Best amplitude of the `|Psi2(beta)>` family and the entangled fraction it reaches.
#[no_mangle]
pub unsafe extern "C" fn qbell_optimal_beta(
    alpha: f64,
    eta: f64,
    out_beta: *mut f64,
    out_fraction: *mut f64,
) -> QbellStatus {
    guard(|| {
        non_null(out_beta, "out_beta")?;
        non_null(out_fraction, "out_fraction")?;
        let channel = LossChannel::new(eta).or_status()?;
        let opt = decoherence::optimal_beta(alpha, channel).or_status()?;
        write(out_beta, opt.beta_star);
        write(out_fraction, opt.f_star);
        Ok(())
    })
}

/// Builds a density from row-major real and imaginary parts (16 each).
/// Free with [`qbell_density_free`].
#[no_mangle]
pub unsafe extern "C" fn qbell_density_new(re: *const f64, im: *const f64, out: *mut *mut QbellDensity) -> QbellStatus {
    guard(|| {
        non_null(re, "re")?;
        non_null(im, "im")?;
        non_null(out, "out")?;
        let re = std::slice::from_raw_parts(re, 16);
        let im = std::slice::from_raw_parts(im, 16);
        let m = Matrix4c::from_fn(|i, j| C64::new(re[4 * i + j], im[4 * i + j]));
        let rho = TwoQubitDensity::new(m).or_status()?;
        write(out, Box::into_raw(Box::new(QbellDensity(rho))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qbell_density_free(handle: *mut QbellDensity) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Row-major copy of the matrix into two arrays of 16.
#[no_mangle]
pub unsafe extern "C" fn qbell_density_matrix(
    handle: *const QbellDensity,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out_re, "out_re")?;
        non_null(out_im, "out_im")?;
        let m = (*handle).0.matrix();
        for i in 0..4 {
            for j in 0..4 {
                *out_re.add(4 * i + j) = m[(i, j)].re;
                *out_im.add(4 * i + j) = m[(i, j)].im;
            }
        }
        Ok(())
    })
}

/// Four eigenvalues, descending.
#[no_mangle]
pub unsafe extern "C" fn qbell_density_eigenvalues(handle: *const QbellDensity, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        write_slice(out, &(*handle).0.eigenvalues());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qbell_density_concurrence(handle: *const QbellDensity, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        write(out, measures::concurrence(&(*handle).0));
        Ok(())
    })
}

/// Wootters entanglement of formation in ebits.
#[no_mangle]
pub unsafe extern "C" fn qbell_density_eof(handle: *const QbellDensity, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        write(out, measures::eof_wootters(&(*handle).0));
        Ok(())
    })
}

/// Fully entangled fraction (maximum overlap with any maximally entangled state).
#[no_mangle]
pub unsafe extern "C" fn qbell_density_fef(handle: *const QbellDensity, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        write(out, measures::fully_entangled_fraction(&(*handle).0).or_status()?.value());
        Ok(())
    })
}

/// Quasi-Werner density. Free with [`qbell_density_free`].
#[no_mangle]
pub unsafe extern "C" fn qbell_quasi_werner_new(fidelity: f64, kappa: f64, out: *mut *mut QbellDensity) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = QuasiWernerSpec::new(fidelity, kappa).or_status()?;
        write(out, Box::into_raw(Box::new(QbellDensity(werner::build_quasi_werner(spec)))));
        Ok(())
    })
}

/// Sends the B mode of `|Psi2>` with amplitude `alpha` through a channel of
/// transmissivity `eta`. Free with [`qbell_decohered_free`].
#[no_mangle]
pub unsafe extern "C" fn qbell_decohered_new(alpha: f64, eta: f64, out: *mut *mut QbellDecohered) -> QbellStatus {
    guard(|| {
        non_null(out, "out")?;
        let channel = LossChannel::new(eta).or_status()?;
        let state = decoherence::apply_loss(alpha, channel).or_status()?;
        write(out, Box::into_raw(Box::new(QbellDecohered(state))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qbell_decohered_free(handle: *mut QbellDecohered) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// `L = exp(-2(1-eta) alpha^2)`.
#[no_mangle]
pub unsafe extern "C" fn qbell_decohered_coherence_factor(handle: *const QbellDecohered, out: *mut f64) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        write(out, (*handle).0.coherence_factor());
        Ok(())
    })
}

/// Overlap of the state with `|Psi2(beta)>`.
#[no_mangle]
pub unsafe extern "C" fn qbell_decohered_fraction(
    handle: *const QbellDecohered,
    beta: f64,
    out: *mut f64,
) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        write(out, decoherence::fraction_over_family(&(*handle).0, beta).or_status()?);
        Ok(())
    })
}

/// Copy of the two-qubit density. Free with [`qbell_density_free`].
#[no_mangle]
pub unsafe extern "C" fn qbell_decohered_density(
    handle: *const QbellDecohered,
    out: *mut *mut QbellDensity,
) -> QbellStatus {
    guard(|| {
        non_null(handle, "handle")?;
        non_null(out, "out")?;
        write(out, Box::into_raw(Box::new(QbellDensity(*(*handle).0.density()))));
        Ok(())
    })
}
