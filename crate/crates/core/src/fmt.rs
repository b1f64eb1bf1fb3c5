//! Number formatting for artifacts.
//!
//! Every number written by the library carries 17 significant digits, which
//! is enough to round-trip any `f64` exactly.

use serde_json::{Number, Value};

/// Formats `x` with 17 significant digits in scientific notation.
///
/// ```
/// assert_eq!(soliton_core::fmt::f17(0.5), "5.0000000000000000e-1");
/// ```
pub fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number carrying 17 significant digits, or `null` when `x` is not
/// finite.
pub fn json_num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    f17(x)
        .parse::<Number>()
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// A complex number as the JSON pair `[re, im]`.
pub fn json_complex(z: num_complex::Complex64) -> Value {
    Value::Array(vec![json_num(z.re), json_num(z.im)])
}

/// Serializes a JSON value with two-space indentation and a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap_or_else(|_| "null".to_owned());
    s.push('\n');
    s
}

/// Reads a number from a JSON value, accepting integers and floats.
pub fn as_f64(v: &Value) -> Option<f64> {
    v.as_f64().or_else(|| v.as_str().and_then(|s| s.parse().ok()))
}
