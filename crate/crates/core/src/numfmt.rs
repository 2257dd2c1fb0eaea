/// Formats `x` with 12 significant digits, trailing zeros removed and `.`
/// as the decimal separator. Infinities print as `inf`.
pub fn decimal(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-30..=15).contains(&magnitude) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
