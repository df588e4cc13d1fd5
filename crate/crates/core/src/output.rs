//! Number formatting shared by the CSV writers.

/// 17 significant digits; `inf`, `-inf` and `nan` for non-finite values.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Like [`fmt_real`] but renders `+∞` as an empty field.
pub fn fmt_real_or_empty(x: f64) -> String {
    if x == f64::INFINITY {
        String::new()
    } else {
        fmt_real(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_real(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(fmt_real_or_empty(f64::INFINITY), "");
        let x = std::f64::consts::PI;
        assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
    }
}
