//! Deterministic text output.
//!
//! Floats are written in their shortest round-trip decimal form, which never
//! needs more than 17 significant digits and parses back to the same value.
//! Non-finite values become `null`.

use serde::Serialize;

/// Text form of a float for CSV cells and JSON values.
pub fn format_float(x: f64) -> String {
    serde_json::to_string(&x).expect("floats serialize")
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory serialization");
    s.push('\n');
    s
}
