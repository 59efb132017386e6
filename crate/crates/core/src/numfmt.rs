//! Numeric formatting for CSV emission: `.` decimal separator, no grouping,
//! 6 significant digits, trailing zeros trimmed. Non-finite values render as
//! `NA`.

/// Formats with 6 significant digits, switching to exponent notation when
/// the decimal exponent falls outside [-4, 5].
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return "NA".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sign = if x < 0.0 { "-" } else { "" };
    let sci = format!("{:.5e}", x.abs());
    let (mantissa, exp_str) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp_str.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 6);

    if !(-4..6).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    } else if exp >= 0 {
        let split = exp as usize + 1;
        let int_part = &digits[..split];
        let frac_part = digits[split..].trim_end_matches('0');
        if frac_part.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = format!("{zeros}{digits}");
        let frac = frac.trim_end_matches('0');
        format!("{sign}0.{frac}")
    }
}

/// Renders an optional value, mapping `None` to `NA`.
pub fn sig6_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => sig6(v),
        None => "NA".to_string(),
    }
}
