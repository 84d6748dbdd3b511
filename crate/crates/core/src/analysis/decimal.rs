//! Decimal rendering and logarithms of exact values. Rounding is half-even.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn pow10(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), e)
}

/// Round a non-negative rational to the nearest integer, ties to even.
fn round_half_even(r: &BigRational) -> BigInt {
    let (q, rem) = r.numer().div_mod_floor(r.denom());
    let twice: BigInt = rem << 1u8;
    match twice.cmp(r.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal if q.is_even() => q,
        std::cmp::Ordering::Equal => q + 1,
    }
}

fn with_point(digits: BigInt, frac_digits: usize, negative: bool) -> String {
    let mut s = digits.to_string();
    if s.len() <= frac_digits {
        s = "0".repeat(frac_digits + 1 - s.len()) + &s;
    }
    if frac_digits > 0 {
        s.insert(s.len() - frac_digits, '.');
    }
    if negative && digits_nonzero(&s) {
        s.insert(0, '-');
    }
    s
}

fn digits_nonzero(s: &str) -> bool {
    s.bytes().any(|b| (b'1'..=b'9').contains(&b))
}

/// Fixed-point rendering with `frac_digits` digits after the point.
pub fn fixed(r: &BigRational, frac_digits: usize) -> String {
    let scaled = r.abs() * BigRational::from_integer(pow10(frac_digits));
    with_point(round_half_even(&scaled), frac_digits, r.is_negative())
}

/// √r to `frac_digits` digits after the point.
pub fn sqrt_fixed(r: &BigRational, frac_digits: usize) -> String {
    assert!(!r.is_negative(), "square root of a negative value");
    let x = r * BigRational::from_integer(pow10(2 * frac_digits));
    let s = x.floor().to_integer().sqrt();
    // round up iff x ≥ (s + 1/2)², ties to even
    let four_x = &x * BigRational::from_integer(BigInt::from(4));
    let bound = BigRational::from_integer(BigInt::from(4) * &s * &s + BigInt::from(4) * &s + 1);
    let up = match four_x.cmp(&bound) {
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => s.is_odd(),
    };
    with_point(if up { s + 1 } else { s }, frac_digits, false)
}

/// Scientific rendering with `sig` significant digits, e.g. "1.25e-7".
pub fn scientific(r: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if r.is_zero() {
        return "0".into();
    }
    let a = r.abs();
    let mut e = (ln_rational(&a) / std::f64::consts::LN_10).floor() as i64;
    let pow = |e: i64| {
        if e >= 0 {
            BigRational::from_integer(pow10(e as usize))
        } else {
            BigRational::new(BigInt::one(), pow10((-e) as usize))
        }
    };
    while pow(e) > a {
        e -= 1;
    }
    while pow(e + 1) <= a {
        e += 1;
    }
    let mut n = round_half_even(&(&a * pow(sig as i64 - 1 - e)));
    if n == pow10(sig) {
        n /= 10;
        e += 1;
    }
    let digits = n.to_string();
    let mantissa = if sig > 1 {
        format!("{}.{}", &digits[..1], &digits[1..])
    } else {
        digits
    };
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{mantissa}e{e}")
}

/// Natural logarithm of a positive integer.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert_eq!(x.sign(), Sign::Plus, "logarithm of a non-positive value");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(r: &BigRational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// Number of decimal digits of |x|.
pub fn digit_count(x: &BigInt) -> usize {
    if x.is_zero() {
        1
    } else {
        x.magnitude().to_str_radix(10).len()
    }
}

/// Length of the common prefix of two decimal renderings, counted in
/// significant digits.
pub fn matching_digits(a: &str, b: &str) -> usize {
    let strip = |s: &str| -> Vec<u8> {
        s.bytes()
            .filter(u8::is_ascii_digit)
            .skip_while(|&c| c == b'0')
            .collect()
    };
    let (a, b) = (strip(a), strip(b));
    a.iter().zip(&b).take_while(|(x, y)| x == y).count()
}
