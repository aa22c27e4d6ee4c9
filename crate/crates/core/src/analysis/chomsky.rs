use std::fmt;

use num_traits::{One, Zero};

use crate::constructions::{decompose_1state, OneStateGfaSpec, OneStateMode};
use crate::exactmath::{logs_rationally_equivalent, logs_same_sign};
use crate::langsem::{Coefficients, Relation, SolutionDescriptor, Threshold};

use super::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChomskyVerdict {
    Regular,
    ContextFreeNonRegular,
    NonContextFree,
}

impl fmt::Display for ChomskyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Regular => "Regular",
            Self::ContextFreeNonRegular => "ContextFreeNonRegular",
            Self::NonContextFree => "NonContextFree",
        })
    }
}

/// Drops the letters whose coefficient is zero (base 1).
pub fn decimate(d: &SolutionDescriptor) -> SolutionDescriptor {
    let (letters, coefficients) = match &d.coefficients {
        Coefficients::ExactLog(bases) => {
            let (l, b): (Vec<char>, Vec<_>) = d
                .letters
                .iter()
                .zip(bases)
                .filter(|(_, b)| !b.is_one())
                .map(|(c, b)| (*c, b.clone()))
                .unzip();
            (l, Coefficients::ExactLog(b))
        }
        Coefficients::Approx(bs) => {
            let (l, b): (Vec<char>, Vec<f64>) = d
                .letters
                .iter()
                .zip(bs)
                .filter(|(_, b)| !b.is_zero())
                .map(|(c, b)| (*c, *b))
                .unzip();
            (l, Coefficients::Approx(b))
        }
    };
    SolutionDescriptor {
        letters,
        coefficients,
        threshold: d.threshold.clone(),
        relation: d.relation,
    }
}

/// Chomsky level of the inequality solution language `d`.
pub fn chomsky_classify(d: &SolutionDescriptor) -> Result<ChomskyVerdict, AnalysisError> {
    if d.relation != Relation::Less {
        return Err(AnalysisError::Domain(
            "only inequality solution languages are classified".into(),
        ));
    }
    let reduced = decimate(d);
    let bases = match &reduced.coefficients {
        Coefficients::ExactLog(b) => b,
        Coefficients::Approx(_) => {
            return Err(AnalysisError::NotExact(
                "approximate coefficients cannot be classified".into(),
            ))
        }
    };
    if reduced.threshold == Threshold::Infinite || logs_same_sign(bases)? {
        return Ok(ChomskyVerdict::Regular);
    }
    Ok(if logs_rationally_equivalent(bases)? {
        ChomskyVerdict::ContextFreeNonRegular
    } else {
        ChomskyVerdict::NonContextFree
    })
}

/// Classifies the solution component of a strict 1-state spec.
pub fn chomsky_classify_gfa(s: &OneStateGfaSpec) -> Result<ChomskyVerdict, AnalysisError> {
    if s.mode != OneStateMode::Strict {
        return Err(AnalysisError::Domain("the criterion applies to strict cutpoints".into()));
    }
    let d = decompose_1state(s)?;
    match d.solution() {
        Some(sol) => chomsky_classify(sol),
        None => Ok(ChomskyVerdict::Regular),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Direction;
    use crate::exactmath::rational as q;
    use num_rational::BigRational;

    fn sol(bases: &[(i64, i64)], tau: (i64, i64)) -> SolutionDescriptor {
        SolutionDescriptor::new(
            "abcdef".chars().take(bases.len()).collect(),
            Coefficients::ExactLog(bases.iter().map(|&(n, d)| q::ratio(n, d)).collect()),
            Threshold::ExactLog(q::ratio(tau.0, tau.1)),
            Relation::Less,
        )
        .unwrap()
    }

    #[test]
    fn fixed_verdicts() {
        use ChomskyVerdict::*;
        assert_eq!(chomsky_classify(&sol(&[(2, 1), (1, 2)], (1, 1))).unwrap(), ContextFreeNonRegular);
        assert_eq!(chomsky_classify(&sol(&[(2, 1), (3, 1)], (1, 1))).unwrap(), Regular);
        assert_eq!(chomsky_classify(&sol(&[(2, 1), (1, 3)], (1, 1))).unwrap(), NonContextFree);
        assert_eq!(chomsky_classify(&sol(&[(4, 1), (1, 8)], (5, 1))).unwrap(), ContextFreeNonRegular);
        assert_eq!(chomsky_classify(&sol(&[(1, 1), (1, 1)], (5, 1))).unwrap(), Regular);
    }

    #[test]
    fn decimation_examples() {
        let d = decimate(&sol(&[(2, 1), (1, 1), (1, 2)], (1, 1)));
        assert_eq!(d.letters, vec!['a', 'c']);
        assert_eq!(d.coefficients, Coefficients::ExactLog(vec![q::from_int(2), q::ratio(1, 2)]));
        let d = decimate(&sol(&[(1, 1)], (3, 1)));
        assert!(d.letters.is_empty() && d.coefficients.is_empty());
        let orig = sol(&[(2, 1), (3, 1)], (1, 1));
        assert_eq!(decimate(&orig), orig);
    }

    #[test]
    fn gfa_verdicts() {
        use ChomskyVerdict::*;
        let spec = |nums: &[(i64, i64)], lam: i64, dir| {
            OneStateGfaSpec::new(
                vec!['a', 'b'],
                nums.iter().map(|&(n, d)| q::ratio(n, d)).collect::<Vec<BigRational>>(),
                q::from_int(lam),
                dir,
                OneStateMode::Strict,
            )
            .unwrap()
        };
        assert_eq!(chomsky_classify_gfa(&spec(&[(1, 2), (2, 1)], 1, Direction::Greater)).unwrap(), ContextFreeNonRegular);
        assert_eq!(chomsky_classify_gfa(&spec(&[(-2, 1), (-3, 1)], -1, Direction::Less)).unwrap(), Regular);
        assert_eq!(chomsky_classify_gfa(&spec(&[(2, 1), (1, 3)], 1, Direction::Greater)).unwrap(), NonContextFree);
    }

    #[test]
    fn rejected_inputs() {
        let approx = SolutionDescriptor::new(
            vec!['a'],
            Coefficients::Approx(vec![1.0]),
            Threshold::Approx(1.0),
            Relation::Less,
        )
        .unwrap();
        assert!(matches!(chomsky_classify(&approx), Err(AnalysisError::NotExact(_))));
        let eq = SolutionDescriptor::new(
            vec!['a'],
            Coefficients::ExactLog(vec![q::from_int(2)]),
            Threshold::ExactLog(q::from_int(2)),
            Relation::Equals,
        )
        .unwrap();
        assert!(chomsky_classify(&eq).is_err());
    }
}
