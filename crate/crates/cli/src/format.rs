//! Decimal rendering shared by every output format.

/// Renders `x` with at most `digits` significant digits. At 17 digits this is
/// the shortest string that parses back to the same `f64`.
pub fn real(x: f64, digits: u32) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let value = if digits >= 17 {
        x
    } else {
        format!("{:.*e}", digits.saturating_sub(1) as usize, x)
            .parse()
            .expect("formatted float parses")
    };
    let magnitude = value.abs();
    if value == 0.0 || (1e-5..1e16).contains(&magnitude) {
        format!("{value}")
    } else {
        format!("{value:e}")
    }
}

pub fn json_real(x: f64, digits: u32) -> serde_json::Value {
    let rounded: f64 = real(x, digits).parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}
