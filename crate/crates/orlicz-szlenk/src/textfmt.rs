//! Locale-independent numeric formatting for CSV and CLI output.

/// Formats with 12 significant digits, plain decimal notation, `.`
/// separator. Golden-file tests rely on this being byte-stable.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 17) as usize;
    let s = format!("{x:.decimals$}");
    // trim trailing zeros but keep at least one digit after the point
    if s.contains('.') {
        let t = s.trim_end_matches('0');
        let t = t.strip_suffix('.').unwrap_or(t);
        t.to_string()
    } else {
        s
    }
}
