//! Text formatting for reports.

/// Decimal rendering with 12 significant digits and trailing zeros removed.
/// Magnitudes below `1e-6` use exponent notation.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -6 {
        return format!("{}e{exp}", trim(mantissa));
    }
    let decimals = (11 - exp).max(0) as usize;
    trim(&format!("{x:.decimals$}")).to_string()
}

/// `serialize_with` adapter writing an `f64` through [`sig12`].
pub fn ser_sig12<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&sig12(*x))
}

/// `serialize_with` adapter for optional values; `None` becomes `null`.
pub fn ser_opt_sig12<S: serde::Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&sig12(*v)),
        None => s.serialize_none(),
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(2.0 / 3.0), "0.666666666667");
        assert_eq!(sig12(123456.789), "123456.789");
        assert_eq!(sig12(1.0 / 3.0 * 1e-8), "3.33333333333e-9");
        assert_eq!(sig12(-0.25), "-0.25");
        assert_eq!(sig12(0.999_999_999_999_9), "1");
    }
}
