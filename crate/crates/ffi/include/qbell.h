#ifndef QBELL_H
#define QBELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every function.
typedef enum QbellStatus {
  QBELL_STATUS_OK = 0,
  QBELL_STATUS_NULL_POINTER = 1,
  QBELL_STATUS_INVALID_OVERLAP = 2,
  QBELL_STATUS_INVALID_INDEX = 3,
  QBELL_STATUS_INVALID_PROBABILITY = 4,
  QBELL_STATUS_INVALID_TRANSMISSIVITY = 5,
  QBELL_STATUS_INVALID_AMPLITUDE = 6,
  QBELL_STATUS_INVALID_DENSITY = 7,
  QBELL_STATUS_NON_CONVERGENCE = 8,
  QBELL_STATUS_TRUNCATION = 9,
  QBELL_STATUS_INVALID_ARGUMENT = 10,
  QBELL_STATUS_PANIC = 11,
} QbellStatus;

// Alice-Bob state after photon loss on Bob's mode.
typedef struct QbellDecohered QbellDecohered;

// Two-qubit density matrix.
typedef struct QbellDensity QbellDensity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null.
const char *qbell_status_message(enum QbellStatus status);

// Copies the last error message of this thread into `buf` (NUL terminated,
// truncated to `len`). Returns the buffer size needed for the whole message,
// or 0 when the last call succeeded.
uintptr_t qbell_last_error(char *buf, uintptr_t len);

// Normalization constant of quasi-Bell state `index` (1..4) at overlap `kappa`.
enum QbellStatus qbell_normalization_constant(uint8_t index, double kappa, double *out);

// Off-diagonal Gram entry `2 kappa / (1 + kappa^2)`.
enum QbellStatus qbell_gram_d(double kappa, double *out);

// Reduced single-party spectrum, two values written descending to `out`.
enum QbellStatus qbell_reduced_spectrum(uint8_t index, double kappa, double *out);

// Entanglement of the pure state in ebits.
enum QbellStatus qbell_entropy_of_entanglement(uint8_t index, double kappa, double *out);

// Four eigenvalues of the quasi-Werner state, descending.
enum QbellStatus qbell_quasi_werner_spectrum(double fidelity, double kappa, double *out);

// Lower bound `H(1/2 + sqrt(f(1-f)))` on the entanglement of formation, 0 below f = 1/2.
enum QbellStatus qbell_eof_lower_bound(double fraction, double *out);

// `<alpha|-alpha> = exp(-2 alpha^2)`.
double qbell_overlap_of_amplitude(double alpha);

// Mean photon numbers of modes A and B for the symmetric coherent state.
enum QbellStatus qbell_mean_photon_numbers(uint8_t index,
                                           double alpha,
                                           double *out_a,
                                           double *out_b);

// Symmetrically ordered characteristic function at `(zeta_a, zeta_b)`.
enum QbellStatus qbell_characteristic_function(uint8_t index,
                                               double alpha,
                                               double beta,
                                               double za_re,
                                               double za_im,
                                               double zb_re,
                                               double zb_im,
                                               double *out_re,
                                               double *out_im);

// RMS residual of a quadratic fit to `ln|C|`; zero for Gaussian states.
enum QbellStatus qbell_gaussianity_witness(uint8_t index, double alpha, double beta, double *out);

// Reduced spectrum of index 2 or 4 with amplitude `alpha` on A and `beta` on B.
enum QbellStatus qbell_asymmetric_spectrum(uint8_t index, double alpha, double beta, double *out);

// Best amplitude of the `|Psi2(beta)>` family and the entangled fraction it reaches.
enum QbellStatus qbell_optimal_beta(double alpha,
                                    double eta,
                                    double *out_beta,
                                    double *out_fraction);

// Builds a density from row-major real and imaginary parts (16 each).
// Free with [`qbell_density_free`].
enum QbellStatus qbell_density_new(const double *re, const double *im, struct QbellDensity **out);

void qbell_density_free(struct QbellDensity *handle);

// Row-major copy of the matrix into two arrays of 16.
enum QbellStatus qbell_density_matrix(const struct QbellDensity *handle,
                                      double *out_re,
                                      double *out_im);

// Four eigenvalues, descending.
enum QbellStatus qbell_density_eigenvalues(const struct QbellDensity *handle, double *out);

enum QbellStatus qbell_density_concurrence(const struct QbellDensity *handle, double *out);

// Wootters entanglement of formation in ebits.
enum QbellStatus qbell_density_eof(const struct QbellDensity *handle, double *out);

// Fully entangled fraction (maximum overlap with any maximally entangled state).
enum QbellStatus qbell_density_fef(const struct QbellDensity *handle, double *out);

// Quasi-Werner density. Free with [`qbell_density_free`].
enum QbellStatus qbell_quasi_werner_new(double fidelity, double kappa, struct QbellDensity **out);

// Sends the B mode of `|Psi2>` with amplitude `alpha` through a channel of
// transmissivity `eta`. Free with [`qbell_decohered_free`].
enum QbellStatus qbell_decohered_new(double alpha, double eta, struct QbellDecohered **out);

void qbell_decohered_free(struct QbellDecohered *handle);

// `L = exp(-2(1-eta) alpha^2)`.
enum QbellStatus qbell_decohered_coherence_factor(const struct QbellDecohered *handle, double *out);

// Overlap of the state with `|Psi2(beta)>`.
enum QbellStatus qbell_decohered_fraction(const struct QbellDecohered *handle,
                                          double beta,
                                          double *out);

// Copy of the two-qubit density. Free with [`qbell_density_free`].
enum QbellStatus qbell_decohered_density(const struct QbellDecohered *handle,
                                         struct QbellDensity **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QBELL_H */
