//! Process-wide resource guard against runaway deg(f)ⁿ growth.

use std::sync::atomic::{AtomicU64, Ordering};

use super::poly::Poly;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_COEFF_WORDS: u64 = 10_000_000;

static MAX_COEFF_WORDS: AtomicU64 = AtomicU64::new(DEFAULT_MAX_COEFF_WORDS);

pub fn max_coeff_words() -> u64 {
    MAX_COEFF_WORDS.load(Ordering::Relaxed)
}

pub fn set_max_coeff_words(limit: u64) {
    MAX_COEFF_WORDS.store(limit, Ordering::Relaxed);
}

/// Upper bound on the number of 64-bit words needed to store fₙ.
///
/// Uses ‖f∘g‖₁ ≤ ‖f‖₁·max(1, ‖g‖₁)^deg f, so ‖fₙ‖₁ ≤ ‖f‖₁^((dⁿ−1)/(d−1)).
pub fn predicted_iterate_words(f: &Poly, n: usize) -> u128 {
    let d = f.degree().unwrap_or(0).max(1) as f64;
    let n = n as f64;
    let slots = d.powf(n) + 1.0;
    let log_norm = f.l1_norm().bits().max(1) as f64;
    let exponent = if d > 1.0 {
        (d.powf(n) - 1.0) / (d - 1.0)
    } else {
        n
    };
    let bits = log_norm * exponent.max(1.0) + 1.0;
    let words = slots * (bits / 64.0).ceil();
    if words.is_finite() && words < u128::MAX as f64 {
        words as u128
    } else {
        u128::MAX
    }
}

pub fn check_iterate(f: &Poly, n: usize) -> Result<()> {
    check_iterate_with(f, n, max_coeff_words())
}

pub fn check_iterate_with(f: &Poly, n: usize, limit: u64) -> Result<()> {
    let predicted = predicted_iterate_words(f, n);
    if predicted > limit as u128 {
        return Err(Error::ResourceLimit { predicted, limit });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_rejects_large_iterates() {
        let f = Poly::from_i64(&[0, 0, 0, 1, 1]);
        assert!(check_iterate_with(&f, 3, DEFAULT_MAX_COEFF_WORDS).is_ok());
        assert!(matches!(
            check_iterate_with(&f, 12, DEFAULT_MAX_COEFF_WORDS),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(check_iterate_with(&f, 3, 10).is_err());
    }

    #[test]
    fn prediction_bounds_actual_size() {
        let f = Poly::from_i64(&[-1, -1, 1, 1]);
        for n in 0..4 {
            let it = f.iterate(n).unwrap();
            let words: u128 = it
                .coeffs()
                .iter()
                .map(|c| c.bits().div_ceil(64).max(1) as u128)
                .sum();
            assert!(words <= predicted_iterate_words(&f, n));
        }
    }
}
