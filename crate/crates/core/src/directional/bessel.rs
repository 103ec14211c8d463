//! Modified Bessel function of the first kind, evaluated in the log domain.
//!
//! Two branches, neither of which forms `I_ν(x)` itself:
//!
//! * `x <= max(30, ν)`: the ascending power series
//!   `I_ν(x) = (x/2)^ν / Γ(ν+1) · Σ_j r_j`, with `r_0 = 1` and
//!   `r_{j+1} = r_j · (x/2)² / ((j+1)(ν+j+1))`. The partial sum is rescaled
//!   whenever it grows past `1e280`, so only its logarithm is ever reported.
//! * otherwise: the uniform (Debye) large-order expansion
//!   `I_ν(x) ≈ e^{r + ν ln(x/(ν+r))} / sqrt(2π r) · Σ_k u_k(t)/ν^k`, with
//!   `r = sqrt(ν² + x²)` and `t = ν/r`. Each `u_k` is a polynomial whose
//!   lowest power is `t^k`, so `u_k(t)/ν^k` is rewritten as
//!   `Σ_j c_kj ν^(j-k) r^(-j)` which stays finite at `ν = 0`. In that branch
//!   `r > 30`, so the series behaves like an expansion in `1/r`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Number of Debye polynomials kept.
const DEBYE_TERMS: usize = 20;
const RESCALE_AT: f64 = 1e280;
const SERIES_CUTOFF: f64 = 30.0;

/// `ln I_order(x)` for `order >= 0`, `x >= 0`.
///
/// `ln I_0(0) = 0`; for positive order `ln I_order(0) = -inf`.
pub fn log_bessel_i(order: f64, x: f64) -> Result<f64> {
    if !(order >= 0.0) || !order.is_finite() {
        return Err(Error::Domain(format!("bessel order must be >= 0, got {order}")));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel argument must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if order == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if uses_series(order, x) {
        Ok(order * (0.5 * x).ln() - libm::lgamma(order + 1.0) + log_series_sum(order, x))
    } else {
        Ok(log_debye(order, x))
    }
}

pub(crate) fn uses_series(order: f64, x: f64) -> bool {
    x <= SERIES_CUTOFF.max(order)
}

/// `ln Σ_j r_j` of the ascending series, i.e. `ln I_ν(x) - ν ln(x/2) + ln Γ(ν+1)`.
pub(crate) fn log_series_sum(order: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut log_scale = 0.0_f64;
    let mut j = 0.0_f64;
    loop {
        let ratio = q / ((j + 1.0) * (order + j + 1.0));
        term *= ratio;
        sum += term;
        j += 1.0;
        if sum > RESCALE_AT {
            term /= RESCALE_AT;
            sum /= RESCALE_AT;
            log_scale += RESCALE_AT.ln();
        }
        // past the peak the tail is bounded by a geometric series in `ratio`
        if ratio < 1.0 && term <= sum * f64::EPSILON * 1e-2 * (1.0 - ratio) {
            break;
        }
        if term == 0.0 {
            break;
        }
    }
    sum.ln() + log_scale
}

fn log_debye(order: f64, x: f64) -> f64 {
    let r = order.hypot(x);
    let inv_r = 1.0 / r;
    let polys = debye_polynomials();

    let mut sum = 1.0_f64;
    let mut small_run = 0;
    for (k, poly) in polys.iter().enumerate().skip(1) {
        // Σ_j c_kj ν^(j-k) r^(-j), j >= k
        let mut term = 0.0;
        let mut inv_r_pow = inv_r.powi(k as i32);
        let mut nu_pow = 1.0;
        for &c in &poly[k..] {
            term += c * nu_pow * inv_r_pow;
            inv_r_pow *= inv_r;
            nu_pow *= order;
        }
        sum += term;
        // terms change sign, so one small term alone does not end the sum
        if term.abs() <= f64::EPSILON * 1e-2 * sum.abs() {
            small_run += 1;
            if small_run == 2 {
                break;
            }
        } else {
            small_run = 0;
        }
    }

    let log_exponent = if order == 0.0 {
        r
    } else {
        r + order * (x / (order + r)).ln()
    };
    log_exponent - 0.5 * (2.0 * PI * r).ln() + sum.ln()
}

/// Coefficients (ascending powers of `t`) of the Debye polynomials `u_0..u_K`.
fn debye_polynomials() -> &'static [Vec<f64>] {
    static POLYS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    POLYS.get_or_init(|| {
        let mut polys: Vec<Vec<f64>> = vec![vec![1.0]];
        for k in 0..DEBYE_TERMS {
            let u = &polys[k];
            let mut next = vec![0.0; u.len() + 3];
            // 1/2 t^2 (1 - t^2) u'(t)
            for (p, &c) in u.iter().enumerate().skip(1) {
                let dc = 0.5 * p as f64 * c;
                next[p + 1] += dc;
                next[p + 3] -= dc;
            }
            // 1/8 ∫_0^t (1 - 5 s^2) u(s) ds
            for (p, &c) in u.iter().enumerate() {
                next[p + 1] += 0.125 * c / (p as f64 + 1.0);
                next[p + 3] -= 0.625 * c / (p as f64 + 3.0);
            }
            polys.push(next);
        }
        polys
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument() {
        assert_eq!(log_bessel_i(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(log_bessel_i(2.0, 0.0).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn rejects_negative_inputs() {
        assert!(matches!(log_bessel_i(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(log_bessel_i(1.0, -1.0), Err(Error::Domain(_))));
        assert!(log_bessel_i(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn low_order_polynomials() {
        let polys = debye_polynomials();
        let u1 = [0.0, 3.0 / 24.0, 0.0, -5.0 / 24.0];
        for (a, b) in polys[1].iter().zip(u1) {
            assert!((a - b).abs() < 1e-15);
        }
        // u_2 = (81 t^2 - 462 t^4 + 385 t^6) / 1152
        let u2 = [0.0, 0.0, 81.0, 0.0, -462.0, 0.0, 385.0];
        for (a, b) in polys[2].iter().zip(u2) {
            assert!((a - b / 1152.0).abs() < 1e-15);
        }
    }

    #[test]
    fn half_order_closed_form_both_branches() {
        // I_{1/2}(x) = sqrt(2 / (pi x)) sinh x
        for &x in &[0.1, 1.0, 2.0, 10.0, 29.0, 31.0, 80.0, 300.0, 700.0] {
            let exact = 0.5 * (2.0 / (PI * x)).ln() + x + (-(-2.0 * x).exp_m1()).ln() - 2f64.ln();
            let got = log_bessel_i(0.5, x).unwrap();
            assert!(((got - exact) / exact).abs() < 1e-13, "x={x} got={got} exact={exact}");
        }
    }

    #[test]
    fn branches_agree_at_the_switch() {
        for &nu in &[0.0, 3.0, 17.5, 40.0, 383.0] {
            let x = SERIES_CUTOFF.max(nu);
            let series =
                nu * (0.5 * x).ln() - libm::lgamma(nu + 1.0) + log_series_sum(nu, x);
            let debye = log_debye(nu, x);
            assert!(((series - debye) / series).abs() < 1e-12, "nu={nu}: {series} vs {debye}");
        }
    }
}
