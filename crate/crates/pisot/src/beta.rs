//! Step angles for the spacing walks: decimals or named constants.

use pisot_core::algebraic::pv_root;
use pisot_core::IntPolynomial;

#[derive(Debug, thiserror::Error)]
pub enum BetaError {
    #[error("cannot read {0:?} as an angle (expected a number or one of tau, rho, 1+sqrt2, golden-angle)")]
    Unknown(String),
    #[error("angle {0} outside [0, 2pi)")]
    Range(f64),
}

fn pv_constant(coeffs: &[i64], bits: u32) -> f64 {
    let p = IntPolynomial::from_i64(coeffs).expect("nonzero");
    pv_root(&p).expect("PV").approx(bits).to_f64()
}

/// Resolves a named constant through its minimal polynomial, refined to
/// `bits` bits before rounding to `f64`.
pub fn named_constant(name: &str, bits: u32) -> Option<f64> {
    let tau = || pv_constant(&[-1, -1, 1], bits);
    Some(match name {
        "tau" | "phi" | "golden" => tau(),
        "rho" | "plastic" => pv_constant(&[-1, -1, 0, 1], bits),
        "1+sqrt2" | "silver" => pv_constant(&[-1, -2, 1], bits),
        "golden-angle" => std::f64::consts::TAU / (tau() * tau()),
        _ => return None,
    })
}

pub fn parse_beta(text: &str, bits: u32) -> Result<f64, BetaError> {
    let t = text.trim();
    let v = match named_constant(t, bits) {
        Some(v) => v,
        None => t.parse::<f64>().map_err(|_| BetaError::Unknown(t.to_string()))?,
    };
    if !(0.0..std::f64::consts::TAU).contains(&v) {
        return Err(BetaError::Range(v));
    }
    Ok(v)
}

/// Comma-separated list of angles.
pub fn parse_betas(text: &str, bits: u32) -> Result<Vec<f64>, BetaError> {
    text.split(',').map(|t| parse_beta(t, bits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(parse_beta("tau", 128).unwrap(), (1.0 + 5f64.sqrt()) / 2.0);
        assert!((parse_beta("rho", 128).unwrap() - 1.324_717_957_244_746).abs() < 1e-15);
        assert_eq!(parse_beta("1+sqrt2", 128).unwrap(), 1.0 + 2f64.sqrt());
        assert_eq!(parse_betas("tau, 1", 64).unwrap().len(), 2);
        assert!(matches!(parse_beta("7", 64), Err(BetaError::Range(_))));
        assert!(matches!(parse_beta("e", 64), Err(BetaError::Unknown(_))));
    }
}
