//! Presentation rounding. All arithmetic stays in `f64`; values are rounded
//! only when turned into display strings.

use std::str::FromStr;

use rust_decimal::{Decimal, RoundingStrategy};

/// Rounds half away from zero at `places` decimals, working on the shortest
/// decimal representation of `value` so that e.g. `1.005` rounds to `1.01`.
pub fn round_half_up(value: f64, places: u32) -> f64 {
    match to_decimal(value) {
        Some(d) => d
            .round_dp_with_strategy(places, RoundingStrategy::MidpointAwayFromZero)
            .to_string()
            .parse()
            .unwrap_or(value),
        None => {
            let scale = 10f64.powi(places as i32);
            (value * scale).round() / scale
        }
    }
}

/// Formats a value to exactly two decimal places, half-up, no grouping.
pub fn format_amount(value: f64) -> String {
    format_fixed(value, 2)
}

pub fn format_fixed(value: f64, places: u32) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let formatted = match to_decimal(value) {
        Some(d) => {
            let mut r = d.round_dp_with_strategy(places, RoundingStrategy::MidpointAwayFromZero);
            r.rescale(places);
            r.to_string()
        }
        None => format!("{:.*}", places as usize, value),
    };
    // "-0.00" reads badly in result panels
    match formatted.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => formatted,
    }
}

fn to_decimal(value: f64) -> Option<Decimal> {
    if !value.is_finite() {
        return None;
    }
    Decimal::from_str(&value.to_string()).ok()
}

/// Parses user-entered text as a finite number, the way a form's
/// "is number?" check does: surrounding whitespace is ignored, and empty,
/// non-numeric, infinite and NaN inputs are rejected.
pub fn parse_number(text: &str) -> Option<f64> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    // Rust accepts "inf" and "NaN"; a form field does not.
    if !t
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
    {
        return None;
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}
