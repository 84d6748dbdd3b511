//! Polynomial multiplication kernels.
//!
//! Small products use the schoolbook method. Large ones pack each operand
//! into a single big integer (Kronecker substitution) so the work is handed to
//! the big-integer multiplier, which is subquadratic.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::poly::Poly;

const KRONECKER_MIN_LEN: usize = 24;

pub(crate) fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.len().min(b.len()) < KRONECKER_MIN_LEN {
        schoolbook(a, b)
    } else {
        kronecker(a, b)
    }
}

pub(crate) fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Poly::from_coeffs(out)
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Σ v[i]·2^(slot·i), built by halving so each level costs linear time.
fn pack(v: &[BigInt], slot: u64) -> BigInt {
    if v.len() <= 8 {
        let mut acc = BigInt::zero();
        for c in v.iter().rev() {
            acc <<= slot;
            acc += c;
        }
        return acc;
    }
    let mid = v.len() / 2;
    let lo = pack(&v[..mid], slot);
    let hi = pack(&v[mid..], slot);
    (hi << (slot * mid as u64)) + lo
}

fn kronecker(a: &[BigInt], b: &[BigInt]) -> Poly {
    let n = a.len() + b.len() - 1;
    let terms = a.len().min(b.len()) as u64;
    let bound = max_bits(a) + max_bits(b) + (64 - terms.leading_zeros() as u64) + 2;
    let limbs_per_slot = bound.div_ceil(64) as usize;
    let slot = 64 * limbs_per_slot as u64;

    let product = pack(a, slot) * pack(b, slot);

    // Adding half a slot to every coefficient makes all digits nonnegative,
    // so the packed value can be read back limb by limb.
    let half = BigUint::one() << (slot - 1);
    let mut offset_limbs = vec![0u64; n * limbs_per_slot];
    for i in 0..n {
        offset_limbs[i * limbs_per_slot + limbs_per_slot - 1] = 1u64 << 63;
    }
    let offset = BigInt::from_biguint(Sign::Plus, BigUint::from_slice_u64(&offset_limbs));
    let shifted = (product + offset)
        .to_biguint()
        .expect("offset product is nonnegative");
    let limbs = shifted.to_u64_digits();
    let half = BigInt::from_biguint(Sign::Plus, half);

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let start = i * limbs_per_slot;
        let end = (start + limbs_per_slot).min(limbs.len());
        let digit = if start < limbs.len() {
            BigUint::from_slice_u64(&limbs[start..end])
        } else {
            BigUint::zero()
        };
        out.push(BigInt::from_biguint(Sign::Plus, digit) - &half);
    }
    Poly::from_coeffs(out)
}

trait FromU64Limbs {
    fn from_slice_u64(limbs: &[u64]) -> Self;
}

impl FromU64Limbs for BigUint {
    fn from_slice_u64(limbs: &[u64]) -> Self {
        let mut words = Vec::with_capacity(limbs.len() * 2);
        for &l in limbs {
            words.push(l as u32);
            words.push((l >> 32) as u32);
        }
        BigUint::new(words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64], scale: u32) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c) << scale).collect()
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(
            a in proptest::collection::vec(-1000i64..1000, 1..60),
            b in proptest::collection::vec(-1000i64..1000, 1..60),
            scale in 0u32..200,
        ) {
            let a = big(&a, scale);
            let b = big(&b, scale / 2);
            prop_assert_eq!(kronecker(&a, &b), schoolbook(&a, &b));
        }
    }
}
