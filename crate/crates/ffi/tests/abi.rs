use std::ffi::CStr;
use std::ptr;

use qbell_ffi::*;

fn last_error() -> String {
    unsafe {
        let needed = qbell_last_error(ptr::null_mut(), 0);
        if needed == 0 {
            return String::new();
        }
        let mut buf = vec![0 as std::ffi::c_char; needed];
        qbell_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn scalar_functions() {
    let kappa = (-2.0f64).exp();
    let mut h = 0.0;
    let mut e = 0.0;
    let mut d = 0.0;
    unsafe {
        assert_eq!(qbell_normalization_constant(2, kappa, &mut h), QbellStatus::Ok);
        assert_eq!(qbell_entropy_of_entanglement(2, kappa, &mut e), QbellStatus::Ok);
        assert_eq!(qbell_gram_d(kappa, &mut d), QbellStatus::Ok);
    }
    assert!((h - 0.713672670194037).abs() < 1e-14);
    assert!((e - 1.0).abs() < 1e-12);
    assert!((d - 2.0 * kappa / (1.0 + kappa * kappa)).abs() < 1e-15);

    let mut spec = [0.0; 2];
    unsafe { assert_eq!(qbell_reduced_spectrum(1, kappa, spec.as_mut_ptr()), QbellStatus::Ok) };
    let expected = (1.0 + kappa).powi(2) / (2.0 * (1.0 + kappa * kappa));
    assert!((spec[0] - expected).abs() < 1e-14);
    assert!((spec[0] + spec[1] - 1.0).abs() < 1e-14);
}

#[test]
fn invalid_inputs_return_codes_and_messages() {
    let mut out = 0.0;
    unsafe {
        assert_eq!(qbell_normalization_constant(2, 1.0, &mut out), QbellStatus::InvalidOverlap);
        assert!(last_error().contains("overlap"));
        assert_eq!(qbell_normalization_constant(5, 0.1, &mut out), QbellStatus::InvalidIndex);
        assert_eq!(qbell_gram_d(0.1, ptr::null_mut()), QbellStatus::NullPointer);
        assert_eq!(qbell_optimal_beta(1.0, 1.5, &mut out, &mut out), QbellStatus::InvalidTransmissivity);
        assert_eq!(qbell_asymmetric_spectrum(1, 1.0, 0.5, [0.0; 2].as_mut_ptr()), QbellStatus::InvalidArgument);
        assert_eq!(qbell_gram_d(0.1, &mut out), QbellStatus::Ok);
        assert_eq!(qbell_last_error(ptr::null_mut(), 0), 0);
    }
}

#[test]
fn status_messages_are_static() {
    let msg = unsafe { CStr::from_ptr(qbell_status_message(QbellStatus::Truncation)) };
    assert_eq!(msg.to_str().unwrap(), "truncation inadequate");
}

#[test]
fn last_error_truncates_to_buffer() {
    let mut out = 0.0;
    unsafe {
        qbell_gram_d(2.0, &mut out);
        let needed = qbell_last_error(ptr::null_mut(), 0);
        let mut buf = [1 as std::ffi::c_char; 8];
        assert_eq!(qbell_last_error(buf.as_mut_ptr(), buf.len()), needed);
        assert_eq!(buf[7], 0);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_bytes().len(), 7);
    }
}

#[test]
fn density_handle_round_trip() {
    let fidelity = 0.8;
    let mut handle: *mut QbellDensity = ptr::null_mut();
    unsafe {
        assert_eq!(qbell_quasi_werner_new(fidelity, 0.0, &mut handle), QbellStatus::Ok);
        let mut re = [0.0; 16];
        let mut im = [0.0; 16];
        assert_eq!(qbell_density_matrix(handle, re.as_mut_ptr(), im.as_mut_ptr()), QbellStatus::Ok);

        let mut copy: *mut QbellDensity = ptr::null_mut();
        assert_eq!(qbell_density_new(re.as_ptr(), im.as_ptr(), &mut copy), QbellStatus::Ok);

        let (mut eof, mut fef, mut conc) = (0.0, 0.0, 0.0);
        assert_eq!(qbell_density_eof(copy, &mut eof), QbellStatus::Ok);
        assert_eq!(qbell_density_fef(copy, &mut fef), QbellStatus::Ok);
        assert_eq!(qbell_density_concurrence(copy, &mut conc), QbellStatus::Ok);
        assert!((fef - fidelity).abs() < 1e-9);
        assert!((conc - (2.0 * fidelity - 1.0)).abs() < 1e-10);
        let p = 0.5 + (fidelity * (1.0 - fidelity)).sqrt();
        let reference = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((eof - reference).abs() < 1e-10);

        let mut eig = [0.0; 4];
        assert_eq!(qbell_density_eigenvalues(copy, eig.as_mut_ptr()), QbellStatus::Ok);
        assert!((eig[0] - fidelity).abs() < 1e-12);

        qbell_density_free(copy);
        qbell_density_free(handle);
        qbell_density_free(ptr::null_mut());
    }
}

#[test]
fn density_rejects_non_hermitian() {
    let mut re = [0.0; 16];
    let im = [0.0; 16];
    re[0] = 1.0;
    re[1] = 0.3;
    let mut handle: *mut QbellDensity = ptr::null_mut();
    unsafe {
        assert_eq!(qbell_density_new(re.as_ptr(), im.as_ptr(), &mut handle), QbellStatus::InvalidDensity);
    }
    assert!(handle.is_null());
    assert!(last_error().contains("Hermitian"));
}

#[test]
fn decohered_handle() {
    let (alpha, eta) = (1.0, 0.5);
    let mut handle: *mut QbellDecohered = ptr::null_mut();
    unsafe {
        assert_eq!(qbell_decohered_new(alpha, eta, &mut handle), QbellStatus::Ok);
        let mut l = 0.0;
        assert_eq!(qbell_decohered_coherence_factor(handle, &mut l), QbellStatus::Ok);
        assert!((l - (-2.0 * (1.0 - eta) * alpha * alpha).exp()).abs() < 1e-15);

        let (mut beta, mut f_star) = (0.0, 0.0);
        assert_eq!(qbell_optimal_beta(alpha, eta, &mut beta, &mut f_star), QbellStatus::Ok);
        assert!((beta - alpha * (1.0 + eta.sqrt()) / 2.0).abs() < 1e-15);

        let mut f = 0.0;
        assert_eq!(qbell_decohered_fraction(handle, beta, &mut f), QbellStatus::Ok);
        assert!((f - f_star).abs() < 1e-15);
        let mut off = 0.0;
        assert_eq!(qbell_decohered_fraction(handle, beta * 1.1, &mut off), QbellStatus::Ok);
        assert!(off < f);

        let mut rho: *mut QbellDensity = ptr::null_mut();
        assert_eq!(qbell_decohered_density(handle, &mut rho), QbellStatus::Ok);
        let mut eig = [0.0; 4];
        assert_eq!(qbell_density_eigenvalues(rho, eig.as_mut_ptr()), QbellStatus::Ok);
        assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-12);

        qbell_density_free(rho);
        qbell_decohered_free(handle);
    }
}

#[test]
fn coherent_functions() {
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        assert_eq!(
            qbell_characteristic_function(2, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, &mut re, &mut im),
            QbellStatus::Ok
        );
    }
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);

    let (mut na, mut nb) = (0.0, 0.0);
    unsafe { assert_eq!(qbell_mean_photon_numbers(2, 1.0, &mut na, &mut nb), QbellStatus::Ok) };
    let k = qbell_overlap_of_amplitude(1.0);
    assert!((na - (1.0 + k * k) / (1.0 - k * k)).abs() < 1e-12);
    assert_eq!(na, nb);

    let mut w = 0.0;
    unsafe { assert_eq!(qbell_gaussianity_witness(2, 1.0, 1.0, &mut w), QbellStatus::Ok) };
    assert!(w > 1e-3);

    let mut spec = [0.0; 2];
    unsafe { assert_eq!(qbell_asymmetric_spectrum(2, 1.0, 1.0, spec.as_mut_ptr()), QbellStatus::Ok) };
    assert!((spec[0] - 0.5).abs() < 1e-14 && (spec[1] - 0.5).abs() < 1e-14);
}
