//! Fixed float formatting for data files, so identical runs give identical bytes.

/// At least 12 fractional digits and at least 12 significant digits in plain
/// notation; nonzero magnitudes below 1e-12 switch to scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("{:.12}", 0.0);
    }
    let magnitude = x.abs();
    if magnitude < 1e-12 {
        return format!("{x:.11e}");
    }
    let exponent = magnitude.log10().floor() as i32;
    let decimals = (11 - exponent).max(12) as usize;
    format!("{x:.decimals$}")
}
