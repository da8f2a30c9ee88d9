//! Bessel function of the first kind, order zero.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 4.0;
const ASYMPTOTIC_LIMIT: f64 = 100.0;

/// `J₀(x)`, absolute error below 1e-12 on `|x| ≤ 100`.
///
/// Power series for `|x| ≤ 4`, Miller's backward recurrence normalized by
/// `J₀ + 2ΣJ₂ₖ = 1` up to 100, Hankel asymptotic expansion beyond.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Argument(format!("J0 of non-finite argument {x}")));
    }
    let ax = x.abs();
    Ok(if ax <= SERIES_LIMIT {
        series(ax)
    } else if ax <= ASYMPTOTIC_LIMIT {
        backward_recurrence(ax)
    } else {
        asymptotic(ax)
    })
}

fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) && k > 2.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

fn backward_recurrence(x: f64) -> f64 {
    let start = x + 12.0 * x.cbrt() + 40.0;
    let mut n = start.ceil() as usize;
    n += n % 2;
    let two_over_x = 2.0 / x;
    let (mut next, mut cur) = (0.0_f64, 1e-300_f64);
    let mut even_sum = 0.0;
    let mut j0 = 0.0;
    for k in (0..n).rev() {
        // cur holds J_{k+1}, next J_{k+2} (unnormalized)
        let prev = (k + 1) as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            even_sum *= 1e-250;
        }
        if k == 0 {
            j0 = cur;
        } else if k % 2 == 0 {
            even_sum += cur;
        }
    }
    j0 / (j0 + 2.0 * even_sum)
}

fn asymptotic(x: f64) -> f64 {
    // P = a₀ − a₂ + a₄ − …, Q = −a₁ + a₃ − … with
    // aₖ = 1²·3²·…·(2k−1)² / (k! (8x)ᵏ).
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    for k in 0..30usize {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a *= odd * odd / (k as f64 * 8.0 * x);
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q -= sign * a;
        }
        if a < 1e-18 {
            break;
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
