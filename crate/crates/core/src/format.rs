//! Numeric text formatting shared by result tables and the CLI.

/// Formats `v` as a plain decimal with 10 significant digits.
///
/// Very large or very small magnitudes fall back to scientific notation.
pub fn sig10(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-6..=15).contains(&exp) {
        return format!("{v:.9e}");
    }
    // rounding can carry into a new leading digit (9.9999999999 -> 10.00000000)
    let decimals = (9 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let parsed: f64 = s.parse().unwrap_or(v);
    let exp2 = parsed.abs().log10().floor() as i32;
    if exp2 != exp {
        let decimals = (9 - exp2).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(1.25), "1.250000000");
        assert_eq!(sig10(1234.5), "1234.500000");
        assert_eq!(sig10(0.000123), "0.0001230000000");
        assert_eq!(sig10(-2.0 / 3.0), "-0.6666666667");
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(9.99999999999), "10.00000000");
        assert_eq!(sig10(1e-9), "1.000000000e-9");
    }

    #[test]
    fn round_trips_to_ten_digits() {
        for v in [std::f64::consts::PI, 1e-5 / 3.0, 123456.789123, -0.5] {
            let back: f64 = sig10(v).parse().unwrap();
            assert!(((back - v) / v).abs() < 1e-9);
        }
    }
}
