use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::automata::Automaton;
use crate::exactmath::Scalar;

use super::LangError;

/// Tolerance for inclusive/exclusive tests on binary64 values.
pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutpointMode {
    /// `f(w) > lambda`
    Strict,
    /// `f(w) = lambda`
    Inclusive,
    /// `f(w) != lambda`
    Exclusive,
}

impl FromStr for CutpointMode {
    type Err = LangError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Self::Strict),
            "inclusive" => Ok(Self::Inclusive),
            "exclusive" => Ok(Self::Exclusive),
            other => Err(LangError::CutpointRange(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for CutpointMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strict => "strict",
            Self::Inclusive => "inclusive",
            Self::Exclusive => "exclusive",
        })
    }
}

/// A cutpoint value with its comparison mode.
#[derive(Clone, Debug, PartialEq)]
pub struct CutpointSpec {
    pub value: Scalar,
    pub mode: CutpointMode,
    /// Used for inclusive/exclusive comparisons of binary64 values.
    pub epsilon: f64,
}

impl CutpointSpec {
    pub fn new(value: Scalar, mode: CutpointMode) -> Self {
        Self {
            value,
            mode,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn strict(value: BigRational) -> Self {
        Self::new(Scalar::ExactReal(value), CutpointMode::Strict)
    }

    pub fn inclusive(value: BigRational) -> Self {
        Self::new(Scalar::ExactReal(value), CutpointMode::Inclusive)
    }

    pub fn exclusive(value: BigRational) -> Self {
        Self::new(Scalar::ExactReal(value), CutpointMode::Exclusive)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    /// Probabilistic models only admit cutpoints in `[0, 1)` (strict) or
    /// `[0, 1]` (inclusive, exclusive); GFA cutpoints are unrestricted.
    pub fn check_for(&self, aut: &Automaton) -> Result<(), LangError> {
        if !self.value.is_real() {
            return Err(LangError::ComplexValue(self.value.to_string()));
        }
        if aut.model_name() == "gfa" {
            return Ok(());
        }
        let ok = match self.value.as_exact_real() {
            Some(r) => {
                r >= BigRational::zero()
                    && match self.mode {
                        CutpointMode::Strict => r < BigRational::one(),
                        _ => r <= BigRational::one(),
                    }
            }
            None => {
                let x = self.value.to_f64();
                x >= 0.0
                    && match self.mode {
                        CutpointMode::Strict => x < 1.0,
                        _ => x <= 1.0,
                    }
            }
        };
        if ok {
            Ok(())
        } else {
            Err(LangError::CutpointRange(format!(
                "{} cutpoint {} for a {} must lie in {}",
                self.mode,
                self.value,
                aut.model_name(),
                if self.mode == CutpointMode::Strict { "[0, 1)" } else { "[0, 1]" }
            )))
        }
    }
}

impl fmt::Display for CutpointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.mode, self.value)
    }
}

/// Whether an accepting value lies in the cutpoint language. Two exact
/// values are compared exactly; otherwise both sides are rounded to
/// binary64 and inclusive/exclusive use `cp.epsilon`.
pub fn cut_member(v: &Scalar, cp: &CutpointSpec) -> Result<bool, LangError> {
    if !v.is_real() {
        return Err(LangError::ComplexValue(v.to_string()));
    }
    if !cp.value.is_real() {
        return Err(LangError::ComplexValue(cp.value.to_string()));
    }
    if let (Some(a), Some(b)) = (v.as_exact_real(), cp.value.as_exact_real()) {
        return Ok(match cp.mode {
            CutpointMode::Strict => a > b,
            CutpointMode::Inclusive => a == b,
            CutpointMode::Exclusive => a != b,
        });
    }
    let (a, b) = (v.to_f64(), cp.value.to_f64());
    Ok(match cp.mode {
        CutpointMode::Strict => a > b,
        CutpointMode::Inclusive => (a - b).abs() <= cp.epsilon,
        CutpointMode::Exclusive => (a - b).abs() > cp.epsilon,
    })
}

/// Membership of `a^0, ..., a^n` in the cutpoint language of a unary
/// automaton.
pub fn enum_unary(aut: &Automaton, cp: &CutpointSpec, n: usize) -> Result<Vec<bool>, LangError> {
    cp.check_for(aut)?;
    aut.unary_values(n)?
        .iter()
        .map(|v| cut_member(v, cp))
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational as q;

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::ExactReal(q::ratio(n, d))
    }

    #[test]
    fn exact_comparisons() {
        assert!(cut_member(&ex(3, 5), &CutpointSpec::strict(q::ratio(2, 5))).unwrap());
        assert!(cut_member(&ex(2, 5), &CutpointSpec::inclusive(q::ratio(2, 5))).unwrap());
        assert!(!cut_member(&ex(2, 5), &CutpointSpec::strict(q::ratio(2, 5))).unwrap());
        assert!(!cut_member(&ex(2, 5), &CutpointSpec::exclusive(q::ratio(2, 5))).unwrap());
    }

    #[test]
    fn approximate_comparisons() {
        let c = (std::f64::consts::PI).cos();
        let v = Scalar::ApproxReal(c * c);
        assert!(cut_member(&v, &CutpointSpec::inclusive(q::from_int(1))).unwrap());
        let near = Scalar::ApproxReal(0.5 + 1e-7);
        let cp = CutpointSpec::inclusive(q::ratio(1, 2));
        assert!(!cut_member(&near, &cp).unwrap());
        assert!(cut_member(&near, &cp.clone().with_epsilon(1e-6)).unwrap());
    }

    #[test]
    fn complex_values_rejected() {
        let z = Scalar::ApproxComplex(num_complex::Complex64::new(0.0, 1.0));
        assert!(cut_member(&z, &CutpointSpec::strict(q::from_int(0))).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exclusive".parse::<CutpointMode>().unwrap(), CutpointMode::Exclusive);
        assert!("greater".parse::<CutpointMode>().is_err());
    }

    proptest::proptest! {
        #[test]
        fn inclusive_and_exclusive_partition(n in -20i64..20, d in 1i64..7, ln in -20i64..20, ld in 1i64..7, x in -2.0f64..2.0) {
            let lam = q::ratio(ln, ld);
            for v in [ex(n, d), Scalar::ApproxReal(x)] {
                let a = cut_member(&v, &CutpointSpec::inclusive(lam.clone())).unwrap();
                let b = cut_member(&v, &CutpointSpec::exclusive(lam.clone())).unwrap();
                proptest::prop_assert!(a ^ b);
            }
        }
    }
}
