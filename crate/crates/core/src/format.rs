//! Locale-independent number formatting for the CSV outputs.

/// Formats `x` with six significant digits, `%g` style: fixed notation for
/// decimal exponents in `-4..6`, scientific otherwise, trailing zeros dropped.
pub fn sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Round first so that e.g. 999999.5 is classified by its rounded exponent.
    let sci = format!("{:.5e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("rust always emits an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn fixed_and_scientific() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.5), "1.5");
        assert_eq!(sig6(-0.0762661669), "-0.0762662");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(4.8e9), "4.8e9");
        assert_eq!(sig6(0.00001234567), "1.23457e-5");
        assert_eq!(sig6(0.0001234567), "0.000123457");
        assert_eq!(sig6(999999.6), "1e6");
        assert_eq!(sig6(f64::NEG_INFINITY), "-inf");
    }
}
