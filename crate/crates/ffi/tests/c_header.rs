use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "qbell.h"

int main(void) {
    double h = 0.0;
    if (qbell_normalization_constant(2, exp(-2.0), &h) != QBELL_STATUS_OK) return 1;
    if (fabs(h - 0.713672670194037) > 1e-12) return 2;

    QbellDecohered *state = NULL;
    if (qbell_decohered_new(1.0, 0.5, &state) != QBELL_STATUS_OK) return 3;
    double beta = 0.0, f = 0.0;
    if (qbell_optimal_beta(1.0, 0.5, &beta, &f) != QBELL_STATUS_OK) return 4;
    double g = 0.0;
    if (qbell_decohered_fraction(state, beta, &g) != QBELL_STATUS_OK) return 5;
    qbell_decohered_free(state);
    if (fabs(f - g) > 1e-14) return 6;

    char buf[256];
    if (qbell_gram_d(1.5, &h) != QBELL_STATUS_INVALID_OVERLAP) return 7;
    if (qbell_last_error(buf, sizeof buf) == 0) return 8;
    printf("%s\n", buf);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/qbell.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "typedef struct QbellDensity QbellDensity;",
        "typedef struct QbellDecohered QbellDecohered;",
        "QBELL_STATUS_OK = 0",
        "qbell_last_error(",
        "qbell_optimal_beta(",
        "qbell_density_fef(",
        "qbell_characteristic_function(",
    ] {
        assert!(text.contains(name), "header is missing {name}");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libqbell_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("overlap"));
}
