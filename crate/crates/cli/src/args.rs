//! Value parsers for command-line flags.

use gion_core::geometry::constants;
use gion_core::ratpoly::parse_rational;
use gion_core::QInput;

fn parse_float(text: &str) -> Result<f64, String> {
    let x: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {text:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("not a finite number: {text:?}"))
    }
}

/// Finite float flag value.
pub fn finite(text: &str) -> Result<f64, String> {
    parse_float(text)
}

/// Angle in radians. Accepts a `rad` (default) or `deg` suffix, and `max`
/// for the largest admissible half-angle.
pub fn angle(text: &str) -> Result<f64, String> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("max") {
        return Ok(constants().phi0);
    }
    if let Some(deg) = text.strip_suffix("deg") {
        return Ok(parse_float(deg)?.to_radians());
    }
    parse_float(text.strip_suffix("rad").unwrap_or(text))
}

/// `q` as a decimal float or as an exact `num/den` rational.
pub fn q_input(text: &str) -> Result<QInput, String> {
    if text.contains('/') {
        parse_rational(text)
            .map(QInput::Exact)
            .map_err(|e| e.to_string())
    } else {
        parse_float(text).map(QInput::Float)
    }
}

/// Exact rational given as `num/den` or as an integer.
pub fn rational(text: &str) -> Result<gion_core::Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}
