//! Deterministic number rendering for the serialization formats.

use serde_json::Value;

/// Finite float as a JSON number, rounded to 12 significant digits.
pub(crate) fn sig_json_number(x: f64) -> Value {
    let rounded: f64 = fmt_sig(x, 12)
        .parse()
        .expect("fmt_sig yields a parseable number for finite input");
    Value::Number(serde_json::Number::from_f64(rounded).expect("rounded finite value stays finite"))
}

/// Like [`sig_json_number`], with `None` becoming JSON null.
pub(crate) fn opt_sig_json_number(x: Option<f64>) -> Value {
    x.map_or(Value::Null, sig_json_number)
}

/// Render `x` with at most `sig` significant digits, printf `%g` style:
/// fixed notation for moderate exponents, scientific otherwise, trailing
/// zeros trimmed. Byte-deterministic for identical input.
pub(crate) fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }

    let formatted = format!("{:.*e}", sig - 1, x); // e.g. "6.28318530718e0"
    let (mantissa, exp) = formatted
        .split_once('e')
        .expect("exponential format always contains 'e'");
    let exp: i32 = exp.parse().expect("valid exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trimmed = digits.trim_end_matches('0');
    let digits = if trimmed.is_empty() { "0" } else { trimmed };

    let body = if exp < -4 || exp >= sig as i32 {
        let (first, rest) = digits.split_at(1);
        if rest.is_empty() {
            format!("{first}e{exp}")
        } else {
            format!("{first}.{rest}e{exp}")
        }
    } else if exp >= 0 {
        let point = exp as usize + 1;
        if digits.len() > point {
            format!("{}.{}", &digits[..point], &digits[point..])
        } else {
            format!("{}{}", digits, "0".repeat(point - digits.len()))
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };

    if negative {
        format!("-{body}")
    } else {
        body
    }
}
