//! Independent cross-checks that share no code path with the routines they check.

use std::f64::consts::TAU;

use crate::series::RealPolynomial;

/// `int_0^{2 pi} |P(r e^{i theta})|^2 d theta = 2 pi sum_d c_d^2 r^{2d}` from the
/// coefficients alone.
pub fn parseval_mean(poly: &RealPolynomial, r: f64) -> f64 {
    TAU * poly.terms().map(|(d, c)| c * c * r.powi(2 * d as i32)).sum::<f64>()
}

/// `Gamma(k + delta) / Gamma(p + delta)` through the log-gamma function rather than
/// a finite product.
pub fn gamma_ratio_via_lgamma(k: u32, p: u32, delta: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    (ln_gamma(k as f64 + delta) - ln_gamma(p as f64 + delta)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parseval_of_a_binomial() {
        let poly = RealPolynomial::from_terms([(1, 1.0), (2, -0.5)]);
        assert!((parseval_mean(&poly, 0.5) - TAU * 0.265625).abs() < 1e-15);
    }

    #[test]
    fn lgamma_ratio_matches_factorials() {
        assert!((gamma_ratio_via_lgamma(5, 1, 0.0) - 24.0).abs() < 1e-12);
    }
}
