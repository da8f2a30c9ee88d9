//! Oracles shared by the integration test targets.
#![allow(dead_code)]

use num_bigint::BigInt;

/// Fixed-point scale of the big-integer series oracle.
const FRAC_BITS: u64 = 512;

/// Exact `(mantissa, exponent)` with `x = mantissa · 2^exponent`.
pub fn decode(x: f64) -> (i64, i32) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let mant =
        if exp == 0 { (bits & 0xf_ffff_ffff_ffff) << 1 } else { (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000 };
    (sign * mant as i64, exp - 1075)
}

/// J₀ by its power series in 512-bit fixed point, rounded to f64.
pub fn j0_oracle(x: f64) -> f64 {
    let (m, e) = decode(x);
    let one = BigInt::from(1) << FRAC_BITS;
    // q = x²/4 in fixed point; exact because x is dyadic.
    let m2 = BigInt::from(m) * BigInt::from(m);
    let shift = FRAC_BITS as i64 + 2 * e as i64 - 2;
    let q = if shift >= 0 { m2 << shift as u64 } else { m2 >> (-shift) as u64 };
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut k: u64 = 1;
    while term != BigInt::from(0) {
        term = -((term * &q) >> FRAC_BITS) / BigInt::from(k * k);
        sum += &term;
        k += 1;
    }
    let top: BigInt = sum >> (FRAC_BITS - 100);
    i128::try_from(&top).unwrap() as f64 / 2f64.powi(100)
}
