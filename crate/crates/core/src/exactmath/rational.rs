//! Reduced big-rational arithmetic.
//!
//! `num_rational::BigRational` normalizes every result with a binary gcd,
//! which is quadratic in the bit length with a large constant. The helpers
//! here keep the same reduced representation but reduce with Lehmer's
//! algorithm and skip reduction where coprimality is already known
//! (powers, products with cross-cancelled factors).

use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactMathError;

/// Greatest common divisor of two unsigned integers (Lehmer's algorithm).
pub fn gcd_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = if a >= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while b.bits() > 64 {
        let shift = a.bits() - 64;
        let mut x = (&a >> shift).to_u64().expect("64 leading bits") as i128;
        let mut y = (&b >> shift).to_u64().expect("64 leading bits") as i128;
        let (mut ca, mut cb, mut cc, mut cd) = (1i128, 0i128, 0i128, 1i128);
        loop {
            if y + cc == 0 || y + cd == 0 {
                break;
            }
            let q = (x + ca) / (y + cc);
            if q != (x + cb) / (y + cd) {
                break;
            }
            (ca, cc) = (cc, ca - q * cc);
            (cb, cd) = (cd, cb - q * cd);
            (x, y) = (y, x - q * y);
        }
        if cb == 0 {
            let r = &a % &b;
            a = b;
            b = r;
        } else {
            let ai = BigInt::from_biguint(Sign::Plus, a);
            let bi = BigInt::from_biguint(Sign::Plus, b);
            let na = &ai * ca + &bi * cb;
            let nb = &ai * cc + &bi * cd;
            a = na.into_parts().1;
            b = nb.into_parts().1;
            if a < b {
                std::mem::swap(&mut a, &mut b);
            }
        }
    }
    if b.is_zero() {
        return a;
    }
    let mut y = b.to_u64().expect("fits in u64");
    let mut x = (&a % y).to_u64().expect("remainder fits");
    while x != 0 {
        (x, y) = (y % x, x);
    }
    BigUint::from(y)
}

/// Nonnegative gcd of two signed integers.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from_biguint(Sign::Plus, gcd_biguint(a.magnitude(), b.magnitude()))
}

/// Builds `n/d` in lowest terms. Panics on a zero denominator.
pub fn reduce(n: BigInt, d: BigInt) -> BigRational {
    assert!(!d.is_zero(), "zero denominator");
    if n.is_zero() {
        return BigRational::zero();
    }
    let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
    let g = gcd(&n, &d);
    if g.is_one() {
        BigRational::new_raw(n, d)
    } else {
        BigRational::new_raw(n / &g, d / &g)
    }
}

/// Builds `n/d` in lowest terms when every prime factor of `d` is listed in
/// `primes`. Cancels by trial division only, so the cost is linear in the
/// size of `n` per listed prime.
pub fn reduce_over_primes(mut n: BigInt, mut d: BigInt, primes: &[u64]) -> BigRational {
    debug_assert!(d.is_positive());
    if n.is_zero() {
        return BigRational::zero();
    }
    for &p in primes {
        loop {
            if d.is_one() {
                break;
            }
            if !(&d % p).is_zero() || !(&n % p).is_zero() {
                break;
            }
            n /= p;
            d /= p;
        }
    }
    BigRational::new_raw(n, d)
}

pub fn add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.denom() == b.denom() {
        return reduce(a.numer() + b.numer(), a.denom().clone());
    }
    let g = gcd(a.denom(), b.denom());
    if g.is_one() {
        return BigRational::new_raw(
            a.numer() * b.denom() + b.numer() * a.denom(),
            a.denom() * b.denom(),
        );
    }
    let bd = b.denom() / &g;
    let t = a.numer() * &bd + b.numer() * (a.denom() / &g);
    if t.is_zero() {
        return BigRational::zero();
    }
    let g2 = gcd(&t, &g);
    if g2.is_one() {
        BigRational::new_raw(t, a.denom() * bd)
    } else {
        BigRational::new_raw(t / &g2, (a.denom() / &g2) * bd)
    }
}

pub fn neg(a: &BigRational) -> BigRational {
    BigRational::new_raw(-a.numer(), a.denom().clone())
}

pub fn sub(a: &BigRational, b: &BigRational) -> BigRational {
    add(a, &neg(b))
}

pub fn mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    let g1 = gcd(a.numer(), b.denom());
    let g2 = gcd(b.numer(), a.denom());
    let n = (a.numer() / &g1) * (b.numer() / &g2);
    let d = (a.denom() / &g2) * (b.denom() / &g1);
    BigRational::new_raw(n, d)
}

/// Reciprocal; `None` for zero.
pub fn recip(a: &BigRational) -> Option<BigRational> {
    if a.is_zero() {
        return None;
    }
    let (n, d) = (a.numer().clone(), a.denom().clone());
    Some(if n.is_negative() {
        BigRational::new_raw(-d, -n)
    } else {
        BigRational::new_raw(d, n)
    })
}

pub fn div(a: &BigRational, b: &BigRational) -> Option<BigRational> {
    recip(b).map(|r| mul(a, &r))
}

/// `a^k`; numerator and denominator stay coprime so no reduction is needed.
pub fn pow(a: &BigRational, k: u32) -> BigRational {
    BigRational::new_raw(
        num_traits::pow(a.numer().clone(), k as usize),
        num_traits::pow(a.denom().clone(), k as usize),
    )
}

/// Integer power with a signed exponent; `None` for `0^negative`.
pub fn powi(a: &BigRational, k: i64) -> Option<BigRational> {
    if k >= 0 {
        Some(pow(a, k as u32))
    } else {
        recip(a).map(|r| pow(&r, k.unsigned_abs() as u32))
    }
}

pub fn from_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    reduce(BigInt::from(n), BigInt::from(d))
}

/// Nearest binary64 value (correctly rounded by `num-rational`).
pub fn to_f64(a: &BigRational) -> f64 {
    a.to_f64().unwrap_or_else(|| {
        if a.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// The exact rational value of a finite binary64 number.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.25` into an
/// exact rational.
pub fn parse(text: &str) -> Result<BigRational, ExactMathError> {
    let s = text.trim();
    let bad = || ExactMathError::Parse(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(reduce(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut n = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(reduce(n, d));
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| {
        let g = gcd(&acc, v.denom());
        acc / g * v.denom()
    })
}
