use std::collections::HashSet;

use num_rational::BigRational;

use crate::automata::{Automaton, AutomatonError};
use crate::constructions::{px, px_params};
use crate::exactmath::{Matrix, Scalar};
use crate::langsem::{cut_member, CutpointSpec};

use super::AnalysisError;

/// A length `m` on which two cutpoint languages disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationWitness {
    pub m: u64,
    pub value_a: Scalar,
    pub value_b: Scalar,
    pub member_a: bool,
    pub member_b: bool,
}

/// The least `m <= n` such that `a^m` is in exactly one of `L(a, cp_a)` and
/// `L(b, cp_b)`.
pub fn separate(
    a: &Automaton,
    cp_a: &CutpointSpec,
    b: &Automaton,
    cp_b: &CutpointSpec,
    n: usize,
) -> Result<Option<SeparationWitness>, AnalysisError> {
    for aut in [a, b] {
        if !aut.is_unary() {
            return Err(AutomatonError::NotUnary(aut.alphabet().len()).into());
        }
    }
    cp_a.check_for(a)?;
    cp_b.check_for(b)?;
    let va = a.unary_values(n)?;
    let vb = b.unary_values(n)?;
    for (m, (x, y)) in va.into_iter().zip(vb).enumerate() {
        let ma = cut_member(&x, cp_a)?;
        let mb = cut_member(&y, cp_b)?;
        if ma != mb {
            return Ok(Some(SeparationWitness {
                m: m as u64,
                value_a: x,
                value_b: y,
                member_a: ma,
                member_b: mb,
            }));
        }
    }
    Ok(None)
}

/// Outcome of [`px_separation`].
#[derive(Clone, Debug, PartialEq)]
pub struct PxSeparation {
    /// `m` from the angle inequality, computed in binary64.
    pub candidate: u64,
    /// The verified length: `candidate` or `candidate + 1` unless rounding
    /// pushed it to a neighbour.
    pub m: u64,
    pub value_x1: BigRational,
    pub value_x2: BigRational,
    pub member_x1: bool,
    pub member_x2: bool,
}

impl PxSeparation {
    pub fn at_candidate_or_next(&self) -> bool {
        self.m == self.candidate || self.m == self.candidate + 1
    }
}

/// A length on which `L(px(x1), lambda_{x1})` and `L(px(x2), lambda_{x2})`
/// differ, found from the angle inequality and checked exactly.
pub fn px_separation(x1: &BigRational, x2: &BigRational) -> Result<PxSeparation, AnalysisError> {
    if x1 >= x2 {
        return Err(AnalysisError::Domain(format!("need x1 < x2, got {x1} and {x2}")));
    }
    let p1 = px_params(x1)?;
    let p2 = px_params(x2)?;
    let ratio = (std::f64::consts::PI - (p2.gamma - p1.gamma)) / (p2.theta - p1.theta);
    if !ratio.is_finite() || ratio < 0.0 || ratio > u32::MAX as f64 {
        return Err(AnalysisError::Domain(format!(
            "angle gap between {x1} and {x2} is too small"
        )));
    }
    let candidate = ratio.floor() as u64;
    let a1 = px(x1)?.as_gfa().transitions()[0].clone();
    let a2 = px(x2)?.as_gfa().transitions()[0].clone();
    let value = |a: &Matrix<BigRational>, k: u64| -> Result<BigRational, AnalysisError> {
        Ok(a.pow(k)?.get(2, 0).clone())
    };
    let mut order = vec![candidate, candidate + 1];
    if candidate > 0 {
        order.push(candidate - 1);
    }
    order.push(candidate + 2);
    for k in order {
        let v1 = value(&a1, k)?;
        let v2 = value(&a2, k)?;
        let m1 = v1 > p1.lambda;
        let m2 = v2 > p2.lambda;
        if m1 != m2 {
            return Ok(PxSeparation {
                candidate,
                m: k,
                value_x1: v1,
                value_x2: v2,
                member_x1: m1,
                member_x2: m2,
            });
        }
    }
    Err(AnalysisError::Anomaly(format!(
        "lengths {}..={} do not separate x1 = {x1} and x2 = {x2}",
        candidate.saturating_sub(1),
        candidate + 2
    )))
}

/// Whether the values on `a^0, ..., a^n` are pairwise distinct.
pub fn aperiodicity_check(aut: &Automaton, n: usize) -> Result<bool, AnalysisError> {
    if !aut.is_exact() {
        return Err(AnalysisError::NotExact("aperiodicity needs exact values".into()));
    }
    if !aut.is_unary() {
        return Err(AutomatonError::NotUnary(aut.alphabet().len()).into());
    }
    let mut seen = HashSet::new();
    for v in aut.unary_values(n)? {
        if !seen.insert(v.as_exact_real().expect("exact real value")) {
            return Ok(false);
        }
    }
    Ok(true)
}
