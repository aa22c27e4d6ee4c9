//! Prime factorization of rationals and the multiplicative-dependence tests
//! for logarithms of rational numbers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational as q;
use super::ExactMathError;

/// Trial division stops here unless the cofactor is provably prime.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// The factorization `r = prod p^e` of a positive rational.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeExponentVector {
    exponents: BTreeMap<BigUint, i64>,
}

impl PrimeExponentVector {
    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn get(&self, p: &BigUint) -> i64 {
        self.exponents.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, i64)> {
        self.exponents.iter().map(|(p, &e)| (p, e))
    }

    pub fn to_rational(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in self.iter() {
            let pe = num_traits::pow(BigInt::from(p.clone()), e.unsigned_abs() as usize);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        BigRational::new_raw(num, den)
    }

    /// True when `self` and `other` are rational multiples of each other
    /// (the zero vector is parallel to everything).
    pub fn is_parallel(&self, other: &Self) -> bool {
        let (Some((p0, a0)), false) = (self.iter().next(), other.is_empty()) else {
            return true;
        };
        let b0 = other.get(p0);
        if b0 == 0 {
            return false;
        }
        let keys = self.exponents.keys().chain(other.exponents.keys());
        for p in keys {
            let a = self.get(p) as i128;
            let b = other.get(p) as i128;
            if a * b0 as i128 != b * a0 as i128 {
                return false;
            }
        }
        true
    }
}

/// Factors `n > 0` by trial division up to `bound`. A cofactor left over is
/// accepted when it is smaller than the square of the last trial divisor,
/// which proves it prime.
pub fn factor_biguint(n: &BigUint, bound: u64) -> Result<Vec<(BigUint, u32)>, ExactMathError> {
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(ExactMathError::Domain("cannot factor zero".into()));
    }
    let mut rest = n.clone();
    let mut d: u64 = 2;
    loop {
        if let Some(small) = rest.to_u64() {
            let (small, found) = factor_small(small, d, bound, &mut out);
            if small == 1 {
                return Ok(out);
            }
            if found {
                out.push((BigUint::from(small), 1));
                return Ok(out);
            }
            return Err(ExactMathError::FactorBound(small.to_string(), bound));
        }
        if d > bound {
            break;
        }
        let mut e = 0u32;
        while (&rest % d).is_zero() {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
        }
        if BigUint::from(d) * d > rest {
            break;
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if rest.is_one() {
        Ok(out)
    } else if BigUint::from(d) * d > rest {
        out.push((rest, 1));
        Ok(out)
    } else {
        Err(ExactMathError::FactorBound(rest.to_string(), bound))
    }
}

/// Trial division in machine words, continuing from divisor `d`. Returns
/// the cofactor and whether it is proven prime (or one).
fn factor_small(mut n: u64, mut d: u64, bound: u64, out: &mut Vec<(BigUint, u32)>) -> (u64, bool) {
    while d <= bound && (d as u128) * (d as u128) <= n as u128 {
        let mut e = 0u32;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    let proven = n == 1 || (d as u128) * (d as u128) > n as u128;
    (n, proven && n != 1)
}

/// The distinct prime factors of `|n|` when all of them fit in a machine
/// word and the factorization completes within `bound`.
pub fn small_prime_factors(n: &BigInt, bound: u64) -> Option<Vec<u64>> {
    let f = factor_biguint(n.magnitude(), bound).ok()?;
    f.into_iter().map(|(p, _)| p.to_u64()).collect()
}

/// Prime-exponent vector of a positive rational with the default bound.
pub fn prime_exponents(r: &BigRational) -> Result<PrimeExponentVector, ExactMathError> {
    prime_exponents_with_bound(r, DEFAULT_TRIAL_BOUND)
}

pub fn prime_exponents_with_bound(
    r: &BigRational,
    bound: u64,
) -> Result<PrimeExponentVector, ExactMathError> {
    if !r.is_positive() {
        return Err(ExactMathError::Domain(format!("{r} is not positive")));
    }
    let mut exponents = BTreeMap::new();
    for (p, e) in factor_biguint(r.numer().magnitude(), bound)? {
        exponents.insert(p, e as i64);
    }
    for (p, e) in factor_biguint(r.denom().magnitude(), bound)? {
        exponents.insert(p, -(e as i64));
    }
    Ok(PrimeExponentVector { exponents })
}

fn check_positive(bases: &[BigRational]) -> Result<(), ExactMathError> {
    match bases.iter().find(|b| !b.is_positive()) {
        Some(b) => Err(ExactMathError::Domain(format!("base {b} is not positive"))),
        None => Ok(()),
    }
}

/// Whether the nonzero numbers among `log b` all share one sign.
pub fn logs_same_sign(bases: &[BigRational]) -> Result<bool, ExactMathError> {
    check_positive(bases)?;
    let one = q::from_int(1);
    let above = bases.iter().any(|b| *b > one);
    let below = bases.iter().any(|b| *b < one);
    Ok(!(above && below))
}

/// Whether all `log b` are rational multiples of one common real.
pub fn logs_rationally_equivalent(bases: &[BigRational]) -> Result<bool, ExactMathError> {
    check_positive(bases)?;
    let one = q::from_int(1);
    let mut reference: Option<PrimeExponentVector> = None;
    for b in bases.iter().filter(|b| **b != one) {
        let v = prime_exponents(b)?;
        match &reference {
            None => reference = Some(v),
            Some(r) => {
                if !r.is_parallel(&v) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
