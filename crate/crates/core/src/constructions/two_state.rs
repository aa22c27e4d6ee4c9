use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automata::{Automaton, AutomatonError, Machine, Pfa};
use crate::exactmath::rational as q;
use crate::exactmath::Matrix;
use crate::langsem::UnaryRegularName;

use super::ConstructionError;

/// Stabilization indices beyond this are reported as a domain error.
const MAX_STABILIZATION: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoStateCase {
    /// `x = y = 0`
    Identity,
    /// `x = y = 1`
    Alternating,
    /// both final entries equal
    ConstantF,
    /// `x + y = 1`, so `t = 0`
    XySumOne,
    /// `0 < t < 1`
    Monotone,
    /// `-1 < t < 0`
    Oscillating,
}

impl fmt::Display for TwoStateCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Identity => "identity",
            Self::Alternating => "alternating",
            Self::ConstantF => "constant-f",
            Self::XySumOne => "xy-sum-one",
            Self::Monotone => "monotone",
            Self::Oscillating => "oscillating",
        })
    }
}

/// The transition matrix is `[[1-x, y], [x, 1-y]]`; after folding the end
/// markers into the initial and final vectors, `f(a^m) = z + r t^m`.
/// `c`, `z` and `r` are undefined when `x + y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStatePfaAnalysis {
    pub case: TwoStateCase,
    pub x: BigRational,
    pub y: BigRational,
    pub c: Option<BigRational>,
    pub z: Option<BigRational>,
    pub r: Option<BigRational>,
    pub t: BigRational,
    /// Membership of `a^m` is 2-periodic in `m` from this length on.
    pub stabilization: u64,
    pub language: UnaryRegularName,
}

/// Names the strict cutpoint language `L(p, lambda)` of a 2-state unary PFA.
pub fn classify_2state_pfa(
    p: &Pfa<BigRational>,
    lambda: &BigRational,
) -> Result<TwoStatePfaAnalysis, ConstructionError> {
    let g = p.as_gfa();
    if g.alphabet().len() != 1 {
        return Err(AutomatonError::NotUnary(g.alphabet().len()).into());
    }
    if g.states() != 2 {
        return Err(ConstructionError::Domain(format!(
            "expected 2 states, found {}",
            g.states()
        )));
    }
    let violations = p.violations(0.0)?;
    if !violations.is_empty() {
        return Err(AutomatonError::Invalid(violations).into());
    }
    let a = &g.transitions()[0];
    let v0 = match g.left_marker() {
        Some(m) => m.matmul(g.initial())?,
        None => g.initial().clone(),
    };
    let f = g.effective_final();
    let (v1, f1, f2) = (v0.get(0, 0).clone(), f.get(0, 0).clone(), f.get(0, 1).clone());
    let x = a.get(1, 0).clone();
    let y = a.get(0, 1).clone();
    let t = BigRational::one() - &x - &y;
    let direct0 = dot(&f, &v0);
    let one = BigRational::one();

    let mut c = None;
    let mut z = None;
    let mut r = None;
    // bits[m] for small m, and the length from which they are 2-periodic
    let (case, horizon, bit_fn): (TwoStateCase, u64, Box<dyn Fn(u64) -> bool>) = if x.is_zero()
        && y.is_zero()
    {
        let b = &direct0 > lambda;
        (TwoStateCase::Identity, 0, Box::new(move |_| b))
    } else if x == one && y == one {
        let even = &direct0 > lambda;
        let odd = &dot(&f, &a.matmul(&v0)?) > lambda;
        (
            TwoStateCase::Alternating,
            0,
            Box::new(move |m| if m % 2 == 0 { even } else { odd }),
        )
    } else {
        let s = &x + &y;
        let pi1 = &y / &s;
        let cc = &v1 - &pi1;
        let zz = (&f1 * &y + &f2 * &x) / &s;
        let rr = &cc * (&f1 - &f2);
        c = Some(cc);
        z = Some(zz.clone());
        r = Some(rr.clone());
        if f1 == f2 {
            let b = &f1 > lambda;
            (TwoStateCase::ConstantF, 0, Box::new(move |_| b))
        } else if t.is_zero() {
            let b0 = &direct0 > lambda;
            let b = &zz > lambda;
            (
                TwoStateCase::XySumOne,
                1,
                Box::new(move |m| if m == 0 { b0 } else { b }),
            )
        } else {
            let case = if t.is_positive() {
                TwoStateCase::Monotone
            } else {
                TwoStateCase::Oscillating
            };
            let d = &zz - lambda;
            let horizon = if d.is_zero() || rr.is_zero() {
                1
            } else {
                stabilization_index(&rr.abs(), &t.abs(), &d.abs())?
            };
            let limit = 2 * horizon + 6;
            let mut bits = Vec::with_capacity(limit as usize + 1);
            bits.push(&direct0 > lambda);
            let mut tm = BigRational::one();
            for _ in 1..=limit {
                tm = q::mul(&tm, &t);
                bits.push(q::add(&zz, &q::mul(&rr, &tm)) > *lambda);
            }
            (case, horizon, Box::new(move |m| bits[m as usize]))
        }
    };

    let language = match_name(&*bit_fn, horizon).ok_or_else(|| {
        ConstructionError::Anomaly(format!(
            "no named unary language fits the {case} case below length {}",
            horizon + 4
        ))
    })?;
    Ok(TwoStatePfaAnalysis {
        case,
        x,
        y,
        c,
        z,
        r,
        t,
        stabilization: horizon,
        language,
    })
}

/// Classifies an exact 2-state unary PFA given as an [`Automaton`].
pub fn classify_2state(
    aut: &Automaton,
    lambda: &BigRational,
) -> Result<TwoStatePfaAnalysis, ConstructionError> {
    match aut {
        Automaton::Exact(Machine::Pfa(p)) => classify_2state_pfa(p, lambda),
        other => Err(ConstructionError::Domain(format!(
            "expected an exact pfa, got a{} {}",
            if other.is_exact() { "n exact" } else { "n approximate" },
            other.model_name()
        ))),
    }
}

fn dot(row: &Matrix<BigRational>, col: &Matrix<BigRational>) -> BigRational {
    row.matmul(col).expect("matching sizes").get(0, 0).clone()
}

/// Least `M >= 1` with `r t^M < d` (all arguments positive, `t < 1`).
fn stabilization_index(
    r: &BigRational,
    t: &BigRational,
    d: &BigRational,
) -> Result<u64, ConstructionError> {
    let holds = |m: u64| q::mul(r, &q::pow(t, m as u32)) < *d;
    let mut hi = 1u64;
    while !holds(hi) {
        hi *= 2;
        if hi > MAX_STABILIZATION {
            return Err(ConstructionError::Domain(format!(
                "membership stabilizes only beyond length {MAX_STABILIZATION}"
            )));
        }
    }
    let mut lo = hi / 2;
    // holds(hi), and lo == 0 or !holds(lo)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn match_name(bit: &dyn Fn(u64) -> bool, horizon: u64) -> Option<UnaryRegularName> {
    use UnaryRegularName::*;
    let fits = |name: &UnaryRegularName, n: u64| {
        (0..=horizon.max(n) + 2).all(|m| crate::langsem::named_member(name, m) == bit(m))
    };
    for name in [Empty, All, Even, CoEven, EpsilonOnly, APlus] {
        if fits(&name, 1) {
            return Some(name);
        }
    }
    let families: [fn(u64) -> UnaryRegularName; 11] = [
        Less,
        CoLess,
        SingletonLength,
        LessAndEven,
        LessAndCoEven,
        CoLessAndEven,
        CoLessAndCoEven,
        LessOrEven,
        LessOrCoEven,
        CoLessOrEven,
        CoLessOrCoEven,
    ];
    for n in 0..=horizon + 2 {
        for make in families {
            let name = make(n);
            if fits(&name, n) {
                return Some(name);
            }
        }
    }
    None
}
