//! Report builders behind the `qbell` subcommands, plus the closed-form versus
//! Fock-oracle verification suite.

use serde::Serialize;

use crate::coherent::{
    asymmetric_spectrum, characteristic_function, gaussianity_witness, mean_photon_numbers, overlap_of_amplitude,
    CharFuncPoint, CoherentQuasiBell, DEFAULT_WITNESS_SAMPLES,
};
use crate::decoherence::{
    apply_loss, fraction_sweep, fraction_over_family, linspace, optimal_beta, LossChannel, DEFAULT_ALPHA_MAX,
    DEFAULT_ALPHA_MIN, DEFAULT_ETAS, DEFAULT_STEPS,
};
use crate::error::{Error, Result};
use crate::fock;
use crate::format::format_float;
use crate::linalg::{c, hermitian_eigenvalues4, C64};
use crate::measures::{concurrence_pure, eof_lower_bound, eof_wootters, fully_entangled_fraction};
use crate::quasi_bell::{
    embed_qubit, entropy_of_entanglement, gram_matrix, normalization_constant, reduced_spectrum, Overlap, QbIndex,
    QuasiBellSpec,
};
use crate::werner::{build_quasi_werner, quasi_werner_fraction, quasi_werner_spectrum, QuasiWernerSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasuresReport {
    pub index: u8,
    pub kappa: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub h: f64,
    pub d: f64,
    pub spectrum: Vec<f64>,
    pub entropy: f64,
    pub concurrence: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_photon_numbers: Option<[f64; 2]>,
}

/// Exactly one of `kappa` / `alpha` must be given.
pub fn measures(kappa: Option<f64>, alpha: Option<f64>, index: u8) -> Result<MeasuresReport> {
    let index = QbIndex::try_from(index)?;
    let (kappa, coherent) = match (kappa, alpha) {
        (Some(k), None) => (Overlap::new(k)?, None),
        (None, Some(a)) => {
            let state = CoherentQuasiBell::symmetric(index, a)?;
            (state.overlap()?, Some(state))
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --kappa or --alpha".into())),
    };
    let spec = QuasiBellSpec { index, kappa };
    let mean = match coherent {
        Some(s) => {
            let (na, nb) = mean_photon_numbers(&s)?;
            Some([na, nb])
        }
        None => None,
    };
    Ok(MeasuresReport {
        index: index.number(),
        kappa: kappa.value(),
        alpha,
        h: normalization_constant(index, kappa),
        d: gram_matrix(kappa)[(0, 2)],
        spectrum: reduced_spectrum(spec).values().to_vec(),
        entropy: entropy_of_entanglement(spec),
        concurrence: concurrence_pure(&embed_qubit(spec)),
        mean_photon_numbers: mean,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WernerReport {
    pub fidelity: f64,
    pub kappa: f64,
    pub d: f64,
    pub eigenvalues: Vec<f64>,
    pub f_w: f64,
    pub numeric_fef: f64,
    pub eof_lower_bound: f64,
    pub eof_wootters: f64,
}

pub fn werner(fidelity: f64, kappa: f64) -> Result<WernerReport> {
    let spec = QuasiWernerSpec::new(fidelity, kappa)?;
    let rho = build_quasi_werner(spec);
    let f_w = quasi_werner_fraction(spec);
    Ok(WernerReport {
        fidelity,
        kappa,
        d: spec.kappa.gram_d(),
        eigenvalues: quasi_werner_spectrum(spec).values().to_vec(),
        f_w: f_w.value(),
        numeric_fef: fully_entangled_fraction(&rho)?.value(),
        eof_lower_bound: eof_lower_bound(f_w),
        eof_wootters: eof_wootters(&rho),
    })
}

/// Parameters of the entangled-fraction sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub steps: usize,
    pub etas: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            alpha_min: DEFAULT_ALPHA_MIN,
            alpha_max: DEFAULT_ALPHA_MAX,
            steps: DEFAULT_STEPS,
            etas: DEFAULT_ETAS.to_vec(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_min > 0.0) || !self.alpha_min.is_finite() {
            return Err(Error::InvalidArgument(format!("alpha_min must be > 0, got {}", self.alpha_min)));
        }
        if !(self.alpha_max >= self.alpha_min) || !self.alpha_max.is_finite() {
            return Err(Error::InvalidArgument("alpha_max must be finite and >= alpha_min".into()));
        }
        if self.steps < 2 {
            return Err(Error::InvalidArgument(format!("steps must be >= 2, got {}", self.steps)));
        }
        if self.etas.is_empty() {
            return Err(Error::InvalidArgument("at least one eta is required".into()));
        }
        for &eta in &self.etas {
            LossChannel::new(eta)?;
        }
        Ok(())
    }
}

/// Sweep rows as CSV with header `alpha,eta,f,beta_star,eof_lower_bound`, or as a
/// JSON object `{"points": [...]}`. Any failing point aborts with its error.
pub fn decohere(config: &SweepConfig, format: OutputFormat) -> Result<String> {
    config.validate()?;
    let alphas = linspace(config.alpha_min, config.alpha_max, config.steps);
    let mut points = Vec::with_capacity(alphas.len() * config.etas.len());
    for entry in fraction_sweep(&alphas, &config.etas) {
        points.push(entry.result.map_err(|e| {
            Error::InvalidArgument(format!("sweep point alpha={} eta={}: {e}", entry.alpha, entry.eta))
        })?);
    }
    Ok(match format {
        OutputFormat::Csv => {
            let mut out = String::from("alpha,eta,f,beta_star,eof_lower_bound\n");
            for p in &points {
                let row = [p.alpha, p.eta, p.f, p.beta_star, p.eof_lower_bound].map(format_float).join(",");
                out.push_str(&row);
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Points<'a> {
                points: &'a [crate::decoherence::FractionCurvePoint],
            }
            let mut s = serde_json::to_string_pretty(&Points { points: &points }).expect("serializable");
            s.push('\n');
            s
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CharFuncReport {
    pub index: u8,
    pub alpha: f64,
    pub beta: f64,
    pub zeta_a: [f64; 2],
    pub zeta_b: [f64; 2],
    pub re: f64,
    pub im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaussianity_residual: Option<f64>,
}

pub struct CharFuncRequest {
    pub index: u8,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub point: CharFuncPoint,
    pub oracle: bool,
    pub witness: bool,
    pub truncation: Option<usize>,
}

pub fn charfunc(req: &CharFuncRequest) -> Result<CharFuncReport> {
    let index = QbIndex::try_from(req.index)?;
    let beta = req.beta.unwrap_or(req.alpha);
    let state = CoherentQuasiBell::new(index, req.alpha, beta)?;
    if !req.point.is_finite() {
        return Err(Error::InvalidArgument("phase-space point must be finite".into()));
    }
    let value = characteristic_function(&state, req.point);
    let (oracle, oracle_deviation) = if req.oracle {
        let n = resolve_truncation(req.truncation, req.alpha.abs().max(beta.abs()))?;
        let psi = fock::build_quasi_bell_fock(&state, n)?;
        let o = fock::operator_trace_charfunc(&psi, req.point)?;
        (Some([o.re, o.im]), Some((o - value).norm()))
    } else {
        (None, None)
    };
    let gaussianity_residual = if req.witness {
        Some(gaussianity_witness(&state, DEFAULT_WITNESS_SAMPLES)?)
    } else {
        None
    };
    Ok(CharFuncReport {
        index: index.number(),
        alpha: req.alpha,
        beta,
        zeta_a: [req.point.zeta_a.re, req.point.zeta_a.im],
        zeta_b: [req.point.zeta_b.re, req.point.zeta_b.im],
        re: value.re,
        im: value.im,
        oracle,
        oracle_deviation,
        gaussianity_residual,
    })
}

/// Characteristic function on a `side x side` grid of real arguments in `[-2, 2]^2`.
pub fn charfunc_grid(index: u8, alpha: f64, side: usize, format: OutputFormat) -> Result<String> {
    if side < 2 {
        return Err(Error::InvalidArgument("grid side must be >= 2".into()));
    }
    let state = CoherentQuasiBell::symmetric(QbIndex::try_from(index)?, alpha)?;
    let coords = linspace(-2.0, 2.0, side);
    let mut rows = Vec::with_capacity(side * side);
    for &x in &coords {
        for &y in &coords {
            let v = characteristic_function(&state, CharFuncPoint::new(c(x), c(y)));
            rows.push([x, y, v.re, v.im]);
        }
    }
    Ok(match format {
        OutputFormat::Csv => {
            let mut out = String::from("zeta_a,zeta_b,re,im\n");
            for r in rows {
                out.push_str(&r.map(format_float).join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                zeta_a: f64,
                zeta_b: f64,
                re: f64,
                im: f64,
            }
            #[derive(Serialize)]
            struct Grid {
                index: u8,
                alpha: f64,
                points: Vec<Row>,
            }
            let grid = Grid {
                index,
                alpha,
                points: rows
                    .into_iter()
                    .map(|r| Row { zeta_a: r[0], zeta_b: r[1], re: r[2], im: r[3] })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&grid).expect("serializable");
            s.push('\n');
            s
        }
    })
}

/// Settings of the verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub truncation: Option<usize>,
    pub tolerance: f64,
    pub alpha_max: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            truncation: None,
            tolerance: 1e-9,
            alpha_max: 3.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub points: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub truncation: Option<usize>,
    pub tolerance: f64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failing(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            out.push_str(&format!(
                "{:<4} {:<28} points={:<4} max_deviation={:.3e} tolerance={:.1e}\n",
                if check.passed { "ok" } else { "FAIL" },
                check.name,
                check.points,
                check.max_deviation,
                check.tolerance
            ));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "verification FAILED\n" });
        out
    }
}

/// Truncation for amplitudes up to `alpha_max`: the override when given (it must
/// still satisfy the adequacy rule), else the rule itself.
pub fn resolve_truncation(override_n: Option<usize>, alpha_max: f64) -> Result<usize> {
    match override_n {
        Some(n) => {
            fock::check_truncation(n, alpha_max)?;
            Ok(n)
        }
        None => Ok(fock::required_truncation(alpha_max)),
    }
}

struct Check {
    name: &'static str,
    points: usize,
    max_deviation: f64,
    fixed_tolerance: Option<f64>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, points: 0, max_deviation: 0.0, fixed_tolerance: None }
    }

    fn record(&mut self, deviation: f64) {
        self.points += 1;
        // NaN deviations must fail the check
        if deviation.is_nan() {
            self.max_deviation = f64::INFINITY;
        } else {
            self.max_deviation = self.max_deviation.max(deviation);
        }
    }
}

/// Runs every closed-form versus oracle comparison on a grid capped at `alpha_max`.
pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if !(config.alpha_max > 0.0) {
        return Err(Error::InvalidArgument("alpha_max must be > 0".into()));
    }
    resolve_truncation(config.truncation, config.alpha_max)?;
    let trunc = |a: f64| resolve_truncation(config.truncation, a);
    let alphas: Vec<f64> = [0.1, 0.5, 1.0, 2.0, 3.0].into_iter().filter(|&a| a <= config.alpha_max).collect();
    let mut checks = Vec::new();

    let mut overlap = Check::new("coherent_overlap");
    let mut spectra = Check::new("reduced_spectra");
    let mut entropy = Check::new("entropy_of_entanglement");
    let mut photons = Check::new("mean_photon_numbers");
    for &a in &alphas {
        let n = trunc(a)?;
        let plus = fock::coherent_vector(a, n)?;
        let minus = fock::coherent_vector(-a, n)?;
        overlap.record((plus.inner(&minus).re - overlap_of_amplitude(a)).abs());
        for index in QbIndex::ALL {
            let state = CoherentQuasiBell::symmetric(index, a)?;
            let rho_a = fock::build_quasi_bell_fock(&state, n)?.partial_trace(&[0]);
            let numeric = rho_a.eigenvalues();
            let spec = QuasiBellSpec { index, kappa: state.overlap()? };
            let closed = reduced_spectrum(spec);
            for (k, v) in closed.values().iter().enumerate() {
                spectra.record((numeric[k] - v).abs());
            }
            spectra.record(numeric[2].abs());
            entropy.record((fock::von_neumann_entropy(&rho_a) - entropy_of_entanglement(spec)).abs());
            photons.record((rho_a.mean_photon_number() - mean_photon_numbers(&state)?.0).abs());
        }
    }
    checks.extend([overlap, spectra, entropy, photons]);

    let mut charf = Check::new("characteristic_function");
    let points = [
        (0.3, -0.2, 0.1, 0.4),
        (-1.0, 0.5, 0.7, -0.3),
        (0.0, 1.2, -0.6, 0.0),
        (1.5, -1.5, 0.2, 0.9),
        (-0.4, -0.8, -1.1, 1.3),
    ];
    for &a in alphas.iter().filter(|&&a| (0.5..=1.0).contains(&a)) {
        let n = trunc(a)?;
        for index in QbIndex::ALL {
            let state = CoherentQuasiBell::symmetric(index, a)?;
            let psi = fock::build_quasi_bell_fock(&state, n)?;
            for &(ar, ai, br, bi) in &points {
                let p = CharFuncPoint::new(C64::new(ar, ai), C64::new(br, bi));
                let o = fock::operator_trace_charfunc(&psi, p)?;
                charf.record((o - characteristic_function(&state, p)).norm());
            }
        }
    }
    checks.push(charf);

    let mut asym = Check::new("asymmetric_spectra");
    for &(a, b) in &[(0.5, 1.0), (1.0, 2.0), (2.0, 0.7), (0.3, 3.0), (1.0, 1.0)] {
        if a > config.alpha_max || b > config.alpha_max {
            continue;
        }
        let n = trunc(a.max(b))?;
        for index in [QbIndex::Two, QbIndex::Four] {
            let psi = fock::build_quasi_bell_fock(&CoherentQuasiBell::new(index, a, b)?, n)?;
            let numeric = psi.partial_trace(&[0]).eigenvalues();
            for (k, v) in asymmetric_spectrum(a, b, index)?.values().iter().enumerate() {
                asym.record((numeric[k] - v).abs());
            }
        }
    }
    checks.push(asym);

    let mut density = Check::new("decohered_density");
    let mut family = Check::new("fraction_over_family");
    // relative beta agreement, judged against its own threshold
    let mut maximizer = Check::new("optimal_beta_search");
    maximizer.fixed_tolerance = Some(crate::decoherence::BETA_AGREEMENT);
    for &a in alphas.iter().filter(|&&a| a >= 0.5) {
        let n = config.truncation.unwrap_or_else(|| fock::required_truncation(1.5 * a));
        fock::check_truncation(n, a)?;
        for &eta in &[0.1, 0.5, 0.9] {
            let channel = LossChannel::new(eta)?;
            let state = apply_loss(a, channel)?;
            let tri = fock::lossy_tripartite(a, eta, n)?;
            let oracle = fock::reduced_in_basis(&tri, &fock::cat_basis(a, n), &fock::cat_basis(eta.sqrt() * a, n));
            density.record(crate::linalg::max_abs((oracle - state.density().matrix()).iter()));
            for &frac in &[0.25, 0.6, 1.0, 1.5] {
                let beta = frac * a;
                if fock::check_truncation(n, beta).is_err() {
                    continue;
                }
                family.record((fock::family_overlap(&tri, beta)? - fraction_over_family(&state, beta)?).abs());
            }
            let opt = optimal_beta(a, channel)?;
            maximizer.record((opt.beta_numeric - opt.beta_star).abs() / opt.beta_star);
        }
    }
    checks.extend([density, family, maximizer]);

    let mut werner_check = Check::new("quasi_werner_spectrum");
    for &f in &[0.0, 0.3, 0.7, 1.0] {
        for &k in &[0.0, 0.2, 0.6, 0.95] {
            let spec = QuasiWernerSpec::new(f, k)?;
            let numeric = hermitian_eigenvalues4(build_quasi_werner(spec).matrix());
            for (x, y) in numeric.iter().zip(quasi_werner_spectrum(spec).values()) {
                werner_check.record((x - y).abs());
            }
        }
    }
    checks.push(werner_check);

    let results: Vec<CheckResult> = checks
        .into_iter()
        .map(|c| {
            let tolerance = c.fixed_tolerance.unwrap_or(config.tolerance);
            CheckResult {
                name: c.name,
                points: c.points,
                max_deviation: c.max_deviation,
                tolerance,
                passed: c.max_deviation <= tolerance,
            }
        })
        .collect();
    let passed = results.iter().all(|c| c.passed);
    Ok(VerifyReport {
        truncation: config.truncation,
        tolerance: config.tolerance,
        checks: results,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measures_examples() {
        let r = measures(Some(0.0), None, 2).unwrap();
        assert_eq!(r.entropy, 1.0);
        let r = measures(None, Some(1.0), 1).unwrap();
        assert!((r.entropy - 0.948_418_466_236_661_4).abs() < 1e-12);
        assert!((r.d - 0.265_802_228_834_079_7).abs() < 1e-12);
        assert!(r.mean_photon_numbers.is_some());
        assert_eq!(measures(Some(1.0), None, 2).unwrap_err().to_string(), "overlap must be < 1 and >= 0, got 1");
        assert!(measures(Some(0.1), Some(1.0), 2).is_err());
        assert!(measures(None, None, 2).is_err());
        assert!(measures(Some(0.1), None, 7).is_err());
    }

    #[test]
    fn werner_examples() {
        let r = werner(1.0, 0.3).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 0.0, 0.0, 0.0]);
        assert!((r.eof_wootters - 1.0).abs() < 1e-10);
        let r = werner(0.8, 0.0).unwrap();
        assert!((r.eof_wootters - 0.468_995_593_589_281_1).abs() < 1e-9);
        assert!(werner(1.5, 0.1).is_err());
    }

    #[test]
    fn sweep_config_validation() {
        assert!(SweepConfig::default().validate().is_ok());
        let bad = SweepConfig { alpha_min: 0.0, ..SweepConfig::default() };
        assert!(bad.validate().is_err());
        let bad = SweepConfig { steps: 1, ..SweepConfig::default() };
        assert!(bad.validate().is_err());
        let bad = SweepConfig { etas: vec![1.2], ..SweepConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn decohere_csv_shape() {
        let config = SweepConfig { etas: vec![0.5, 1.0], steps: 3, ..SweepConfig::default() };
        let csv = decohere(&config, OutputFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "alpha,eta,f,beta_star,eof_lower_bound");
        assert_eq!(lines.len(), 7);
        assert!(lines[1].starts_with("0.0500000000000,1.000000000000,1.000000000000,"), "{}", lines[1]);
        let json = decohere(&config, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn truncation_rule_is_enforced() {
        let config = VerifyConfig { truncation: Some(5), ..VerifyConfig::default() };
        assert!(matches!(verify(&config), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn charfunc_report_with_oracle() {
        let req = CharFuncRequest {
            index: 2,
            alpha: 1.0,
            beta: None,
            point: CharFuncPoint::new(C64::new(0.0, 0.3), c(0.0)),
            oracle: true,
            witness: true,
            truncation: None,
        };
        let r = charfunc(&req).unwrap();
        assert!(r.oracle_deviation.unwrap() < 1e-8);
        assert!(r.gaussianity_residual.unwrap() > 0.01);
    }
}
