//! Exact arithmetic on finite `f64` values.
//!
//! Every finite double is an integer multiple of `2^-1074`, so sums and
//! integer multiples can be carried out without rounding in a big integer.

use std::cmp::Ordering;

use num_bigint::BigInt;

const SCALE_EXP: i32 = 1074;

/// `v * 2^1074` as an exact integer.
pub fn scaled(v: f64) -> BigInt {
    assert!(v.is_finite(), "exact arithmetic on a non-finite value");
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if exp_field == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_field - 1075)
    };
    let magnitude = BigInt::from(mantissa) << (exp + SCALE_EXP) as usize;
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Exact running sum of doubles.
#[derive(Clone, Debug, Default)]
pub struct ExactSum(BigInt);

impl ExactSum {
    pub fn new() -> Self {
        ExactSum::default()
    }

    pub fn add(&mut self, v: f64) {
        self.0 += scaled(v);
    }

    /// Compares the exact sum with `count * v`, also computed exactly.
    pub fn cmp_multiple(&self, count: u64, v: f64) -> Ordering {
        self.0.cmp(&(scaled(v) * BigInt::from(count)))
    }
}

impl FromIterator<f64> for ExactSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = ExactSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}
