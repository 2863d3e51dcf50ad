//! Number formatting shared by every output format.

use num_bigint::BigInt;
use num_rational::BigRational;
use pisot_core::RealApprox;

/// `x` with 12 significant digits, fixed-point notation.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    // scientific formatting rounds first, so a carry shows up in the exponent
    let sci = format!("{:.11e}", x.abs());
    let (mant, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits = mant.replace('.', "");
    let body = if exp >= 11 {
        format!("{digits}{}", "0".repeat((exp - 11) as usize))
    } else if exp >= 0 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    if x < 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    sig12(x).parse().unwrap_or(x)
}

/// Exact rational as `p/q`.
pub fn ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or an integer.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// Comma-separated integers such as `-1,-1,1`.
pub fn parse_int_list(text: &str) -> Option<Vec<i64>> {
    text.split(',').map(|t| t.trim().parse().ok()).collect()
}

pub fn approx_json(x: &RealApprox) -> serde_json::Value {
    serde_json::json!({
        "lower": ratio(x.lower()),
        "upper": ratio(x.upper()),
        "approx": round12(x.to_f64()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(2.0 * std::f64::consts::PI / 10.0), "0.628318530718");
        assert_eq!(sig12(-0.000123456789012345), "-0.000123456789012");
        assert_eq!(sig12(9.9999999999996), "10.0000000000");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
    }

    #[test]
    fn rationals() {
        let q = parse_ratio("6/-4").unwrap();
        assert_eq!(ratio(&q), "-3/2");
        assert_eq!(ratio(&parse_ratio("5").unwrap()), "5/1");
        assert!(parse_ratio("1/0").is_none());
        assert!(parse_ratio("x").is_none());
        assert_eq!(parse_int_list("-1, -1,1"), Some(vec![-1, -1, 1]));
        assert_eq!(parse_int_list("1,,2"), None);
    }
}
