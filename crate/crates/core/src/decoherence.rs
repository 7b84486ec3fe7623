//! Photon loss on mode B of `|Psi2(alpha)>` through a half-mirror (beam splitter)
//! coupling to a vacuum environment, and the entangled fraction of the result.
//!
//! With `L = exp(-2(1-eta) alpha^2)` the shared state is
//!
//! ```text
//! rho_AB = h2^2 { |a><a| (x) |-b><-b| + |-a><-a| (x) |b><b|
//!               - L |-a><a| (x) |b><-b| - L |a><-a| (x) |-b><b| },   b = sqrt(eta) a
//! ```
//!
//! represented here in the orthonormal bases built from `{|+-a>}` on A and
//! `{|+-b>}` on B.

use serde::Serialize;

use crate::coherent::{coherent_overlap, overlap_of_amplitude};
use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigenvalues4, Matrix4c, Vector4c};
use crate::measures::{eof_lower_bound, fully_entangled_fraction, EntFraction, TwoQubitDensity};
use crate::optimize::{bracketed_max, parabolic_polish};
use crate::quasi_bell::basis_coordinates;

/// Relative agreement required between the closed-form maximizer and the numeric search.
pub const BETA_AGREEMENT: f64 = 1e-6;
const SEARCH_GRID: usize = 401;

/// Half-mirror loss channel with energy transmissivity `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossChannel(f64);

impl LossChannel {
    pub fn new(eta: f64) -> Result<Self> {
        if eta.is_finite() && (0.0..=1.0).contains(&eta) {
            Ok(LossChannel(eta))
        } else {
            Err(Error::InvalidTransmissivity(eta))
        }
    }

    pub fn eta(self) -> f64 {
        self.0
    }
}

/// The decohered Alice–Bob state for a given input amplitude and channel.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoheredState {
    alpha: f64,
    channel: LossChannel,
    coherence: f64,
    density: TwoQubitDensity,
}

impl DecoheredState {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn channel(&self) -> LossChannel {
        self.channel
    }

    /// `L = exp(-2(1-eta) alpha^2)`.
    pub fn coherence_factor(&self) -> f64 {
        self.coherence
    }

    pub fn density(&self) -> &TwoQubitDensity {
        &self.density
    }

    pub fn purity(&self) -> f64 {
        self.density.purity()
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues4(self.density.matrix())
    }

    /// General two-qubit fully entangled fraction of the density on its four-dimensional
    /// support. Diagnostic only; the reported fraction is the `|Psi2(beta)>` family maximum.
    pub fn diagnostic_fef(&self) -> Result<EntFraction> {
        fully_entangled_fraction(&self.density)
    }
}

fn product(a: [f64; 2], b: [f64; 2]) -> Vector4c {
    Vector4c::new(c(a[0] * b[0]), c(a[0] * b[1]), c(a[1] * b[0]), c(a[1] * b[1]))
}

/// `1 - exp(-x)` without cancellation for small `x`.
fn one_minus_exp_neg(x: f64) -> f64 {
    -(-x).exp_m1()
}

pub fn apply_loss(alpha: f64, channel: LossChannel) -> Result<DecoheredState> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAmplitude(format!("loss model needs alpha > 0, got {alpha}")));
    }
    let eta = channel.eta();
    let a2 = alpha * alpha;
    let coherence = (-2.0 * (1.0 - eta) * a2).exp();
    let h2_sq = 1.0 / (2.0 * one_minus_exp_neg(4.0 * a2));

    let (plus_a, minus_a) = basis_coordinates(overlap_of_amplitude(alpha));
    let (plus_b, minus_b) = basis_coordinates(overlap_of_amplitude(eta.sqrt() * alpha));
    // u = |a>|-b>, v = |-a>|b>
    let u = product(plus_a, minus_b);
    let v = product(minus_a, plus_b);
    let m: Matrix4c = (u * u.adjoint() + v * v.adjoint() - (v * u.adjoint() + u * v.adjoint()) * c(coherence)) * c(h2_sq);
    let density = TwoQubitDensity::new(m)?;
    Ok(DecoheredState {
        alpha,
        channel,
        coherence,
        density,
    })
}

/// `<Psi2(beta)| rho_AB |Psi2(beta)>` in the printed closed form
/// `(1+L)(k1^2 k2^2 + k3^2 k4^2 - 2 k1 k2 k3 k4) / (2(1-kA^2)(1-k0^2))`.
pub fn fraction_over_family_literal(state: &DecoheredState, beta: f64) -> Result<f64> {
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::InvalidAmplitude(format!("beta must be nonzero and finite, got {beta}")));
    }
    let alpha = state.alpha;
    let attenuated = state.channel.eta().sqrt() * alpha;
    let k0 = overlap_of_amplitude(beta);
    let ka = overlap_of_amplitude(alpha);
    let k1 = coherent_overlap(alpha, beta);
    let k2 = coherent_overlap(beta, attenuated);
    let k3 = coherent_overlap(alpha, -beta);
    let k4 = coherent_overlap(beta, -attenuated);
    let num = (1.0 + state.coherence) * (k1 * k1 * k2 * k2 + k3 * k3 * k4 * k4 - 2.0 * k1 * k2 * k3 * k4);
    Ok(num / (2.0 * (1.0 - ka * ka) * (1.0 - k0 * k0)))
}

/// Same quantity as [`fraction_over_family_literal`], evaluated in the factored form
/// `(1+L) e^{-Q} (1 - e^{-2 beta s})^2 / (2(1-kA^2)(1-k0^2))` with
/// `Q = (alpha-beta)^2 + (beta - sqrt(eta) alpha)^2` and `s = alpha + sqrt(eta) alpha`,
/// which stays accurate at small amplitudes.
pub fn fraction_over_family(state: &DecoheredState, beta: f64) -> Result<f64> {
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::InvalidAmplitude(format!("beta must be nonzero and finite, got {beta}")));
    }
    let alpha = state.alpha;
    let attenuated = state.channel.eta().sqrt() * alpha;
    let q = (alpha - beta).powi(2) + (beta - attenuated).powi(2);
    let s = alpha + attenuated;
    let interference = one_minus_exp_neg(2.0 * beta * s);
    let num = (1.0 + state.coherence) * (-q).exp() * interference * interference;
    let den = 2.0 * one_minus_exp_neg(4.0 * alpha * alpha) * one_minus_exp_neg(4.0 * beta * beta);
    Ok(num / den)
}

/// Closed-form maximizer and value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalBeta {
    pub beta_star: f64,
    pub f_star: f64,
    /// Location found by the independent bracketed search.
    pub beta_numeric: f64,
}

/// `beta* = (alpha + sqrt(eta) alpha)/2`, halfway between the sent and the attenuated
/// amplitude, cross-checked by a grid scan plus golden-section search over `(0, 2 alpha]`
/// and a finite-difference parabolic polish (the peak is very flat at small alpha).
pub fn optimal_beta(alpha: f64, channel: LossChannel) -> Result<OptimalBeta> {
    let state = apply_loss(alpha, channel)?;
    let beta_star = alpha * (1.0 + channel.eta().sqrt()) / 2.0;
    let f_star = fraction_over_family(&state, beta_star)?;

    let lo = alpha * 1e-6;
    let hi = 2.0 * alpha;
    let objective = |b: f64| fraction_over_family(&state, b).map(f64::ln).unwrap_or(f64::NEG_INFINITY);
    let coarse = bracketed_max(objective, lo, hi, SEARCH_GRID, alpha * 1e-12)?;
    let found = parabolic_polish(objective, coarse, coarse.x * 5e-4, lo, hi, 3);
    let rel = (found.x - beta_star).abs() / beta_star;
    if rel > BETA_AGREEMENT {
        return Err(Error::NonConvergence {
            message: format!(
                "numeric maximum at beta = {} disagrees with closed form {beta_star} (relative {rel:e}) for alpha {alpha}, eta {}",
                found.x,
                channel.eta()
            ),
            best_value: found.value.exp(),
        });
    }
    Ok(OptimalBeta {
        beta_star,
        f_star,
        beta_numeric: found.x,
    })
}

/// The lossy single-photon polarization Bell pair has entangled fraction `eta`.
pub fn biphoton_fraction(channel: LossChannel) -> EntFraction {
    EntFraction::new(channel.eta()).expect("eta lies in [0, 1]")
}

/// One point of the entangled-fraction curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FractionCurvePoint {
    pub alpha: f64,
    pub eta: f64,
    pub f: f64,
    pub beta_star: f64,
    pub eof_lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub alpha: f64,
    pub eta: f64,
    pub result: Result<FractionCurvePoint>,
}

/// Evaluates every `(alpha, eta)` pair, ordered by `eta` descending then `alpha`
/// ascending. Per-point failures are kept in place rather than aborting the sweep.
pub fn fraction_sweep(alphas: &[f64], etas: &[f64]) -> Vec<SweepEntry> {
    let mut etas_sorted = etas.to_vec();
    etas_sorted.sort_by(|a, b| b.total_cmp(a));
    let mut alphas_sorted = alphas.to_vec();
    alphas_sorted.sort_by(|a, b| a.total_cmp(b));

    let mut out = Vec::with_capacity(alphas.len() * etas.len());
    for &eta in &etas_sorted {
        for &alpha in &alphas_sorted {
            let result = LossChannel::new(eta).and_then(|channel| {
                let opt = optimal_beta(alpha, channel)?;
                let f = EntFraction::clamped(opt.f_star)?;
                Ok(FractionCurvePoint {
                    alpha,
                    eta,
                    f: f.value(),
                    beta_star: opt.beta_star,
                    eof_lower_bound: eof_lower_bound(f),
                })
            });
            out.push(SweepEntry { alpha, eta, result });
        }
    }
    out
}

/// Inclusive, evenly spaced grid.
pub fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![start];
    }
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                end
            } else {
                start + (end - start) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// The curves' default transmissivities, top to bottom.
pub const DEFAULT_ETAS: [f64; 5] = [0.9, 0.7, 0.5, 0.3, 0.1];
pub const DEFAULT_ALPHA_MIN: f64 = 0.05;
pub const DEFAULT_ALPHA_MAX: f64 = 3.0;
pub const DEFAULT_STEPS: usize = 60;
