//! Quadrature rules: generalized Gauss-Laguerre for half-line integrals against
//! `x^alpha e^{-x}`, and the composite trapezoid rule for periodic integrands.

use std::f64::consts::TAU;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Nodes and probability-normalized weights of an `n`-point Gauss rule for the
/// density proportional to `x^alpha e^{-x}` on `(0, inf)`.
///
/// Weights sum to one; multiply by `Gamma(alpha + 1)` for the unnormalized rule.
#[derive(Debug, Clone)]
pub struct LaguerreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

// Rescale threshold for the three-term recurrence.
const BIG: f64 = 1e150;

struct RecurrenceAt {
    value: f64,
    slope: f64,
    /// `ln(sum_{j<n} q_j(x)^2)` for the orthonormal family with `q_0 = 1`.
    ln_christoffel_sum: f64,
}

/// Runs the orthonormal three-term recurrence at `x` up to degree `n`, keeping
/// everything finite by rescaling.
fn recurrence(n: usize, alpha: f64, x: f64) -> RecurrenceAt {
    let mut q_prev = 0.0;
    let mut q = 1.0;
    let mut d_prev = 0.0;
    let mut d = 0.0;
    let mut sum = 0.0;
    let mut ln_scale = 0.0;
    let mut b_j = 0.0;
    for j in 0..n {
        sum += q * q;
        let jf = j as f64;
        let a_j = 2.0 * jf + alpha + 1.0;
        let b_next = ((jf + 1.0) * (jf + 1.0 + alpha)).sqrt();
        let q_next = ((x - a_j) * q - b_j * q_prev) / b_next;
        let d_next = (q + (x - a_j) * d - b_j * d_prev) / b_next;
        q_prev = q;
        q = q_next;
        d_prev = d;
        d = d_next;
        b_j = b_next;
        if q.abs() > BIG || d.abs() > BIG {
            q /= BIG;
            q_prev /= BIG;
            d /= BIG;
            d_prev /= BIG;
            sum /= BIG * BIG;
            ln_scale += 2.0 * BIG.ln();
        }
    }
    RecurrenceAt {
        value: q,
        slope: d,
        ln_christoffel_sum: sum.ln() + ln_scale,
    }
}

impl LaguerreRule {
    /// Golub-Welsch eigenvalues refined by Newton steps on the recurrence; weights
    /// from the Christoffel function, which keeps tiny weights relatively accurate.
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 || alpha <= -1.0 {
            return Err(Error::Domain(format!("no Laguerre rule for n = {n}, alpha = {alpha}")));
        }
        let jacobi = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                2.0 * i as f64 + alpha + 1.0
            } else if i + 1 == j || j + 1 == i {
                let m = i.max(j) as f64;
                (m * (m + alpha)).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
        nodes.sort_by(f64::total_cmp);

        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            for _ in 0..8 {
                let r = recurrence(n, alpha, *x);
                let step = r.value / r.slope;
                if !step.is_finite() {
                    break;
                }
                *x -= step;
                if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                    break;
                }
            }
            let r = recurrence(n, alpha, *x);
            weights.push((-r.ln_christoffel_sum).exp());
        }
        Ok(Self { nodes, weights })
    }
}

/// Composite trapezoid rule for a `2 pi`-periodic integrand on `n` equally spaced
/// nodes starting at `theta = 0`.
pub fn periodic_trapezoid<F: FnMut(f64) -> f64>(n: usize, mut g: F) -> f64 {
    let h = TAU / n as f64;
    h * (0..n).map(|j| g(h * j as f64)).sum::<f64>()
}

/// Midpoint sum on the same spacing; averaging it with the `n`-node trapezoid gives
/// the `2n`-node trapezoid.
pub fn periodic_midpoints<F: FnMut(f64) -> f64>(n: usize, mut g: F) -> f64 {
    let h = TAU / n as f64;
    h * (0..n).map(|j| g(h * (j as f64 + 0.5))).sum::<f64>()
}
