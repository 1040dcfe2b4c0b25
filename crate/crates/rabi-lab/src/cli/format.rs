//! Deterministic numeric formatting for the emitted CSV files: 12
//! significant digits, '.' decimal separator, fixed-point where the
//! magnitude allows and scientific otherwise, trailing zeros trimmed.
//! Identical inputs format to identical bytes.

/// printf-%g-style rendering at 12 significant digits.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let epos = sci.find('e').expect("exponent marker");
    let exp: i32 = sci[epos + 1..].parse().expect("exponent digits");
    if (-4..12).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        let mut out = format!("{x:.prec$}");
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
        out
    } else {
        let mut mantissa = sci[..epos].to_string();
        if mantissa.contains('.') {
            while mantissa.ends_with('0') {
                mantissa.pop();
            }
            if mantissa.ends_with('.') {
                mantissa.pop();
            }
        }
        format!("{mantissa}e{exp}")
    }
}

/// Render an optional value, `nan` when absent.
pub fn fmt_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt_g(v),
        None => "nan".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_range() {
        assert_eq!(fmt_g(0.25), "0.25");
        assert_eq!(fmt_g(-0.5), "-0.5");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(123.456), "123.456");
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(-0.0), "0");
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_g(0.498212729195687), "0.498212729196");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn scientific_range() {
        assert_eq!(fmt_g(7.670160340200738e-9), "7.6701603402e-9");
        assert_eq!(fmt_g(1e-9), "1e-9");
        assert_eq!(fmt_g(2.5e15), "2.5e15");
    }

    #[test]
    fn specials() {
        assert_eq!(fmt_g(f64::NAN), "nan");
        assert_eq!(fmt_g(f64::INFINITY), "inf");
        assert_eq!(fmt_g(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_opt(None), "nan");
        assert_eq!(fmt_opt(Some(2.0)), "2");
    }

    #[test]
    fn deterministic_bytes() {
        let vals = [0.1 + 0.2, 1e-17, 3.9999999999999996];
        for v in vals {
            assert_eq!(fmt_g(v), fmt_g(v));
        }
    }
}
