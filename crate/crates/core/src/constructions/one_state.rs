use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automata::Gfa;
use crate::exactmath::rational as q;
use crate::exactmath::Matrix;
use crate::langsem::{
    Coefficients, IndicatorDescriptor, LangError, LanguageDescriptor, LanguageForm,
    ParityDescriptor, Relation, SolutionDescriptor, Threshold,
};

use super::ConstructionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// accept when the product is below the cutpoint
    Less,
    /// accept when the product is above the cutpoint
    Greater,
}

impl FromStr for Direction {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lt" | "<" | "less" => Ok(Self::Less),
            "gt" | ">" | "greater" => Ok(Self::Greater),
            other => Err(ConstructionError::Domain(format!("unknown direction `{other}`"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Less => "<",
            Self::Greater => ">",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OneStateMode {
    Strict,
    /// accept exactly when the product equals the cutpoint; the direction
    /// is ignored
    Inclusive,
}

/// A 1-state GFA with initial and final value 1: the value of `w` is
/// `prod_j A_j^{|w|_j}` (with `0^0 = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct OneStateGfaSpec {
    pub alphabet: Vec<char>,
    pub numbers: Vec<BigRational>,
    pub cutpoint: BigRational,
    pub direction: Direction,
    pub mode: OneStateMode,
}

impl OneStateGfaSpec {
    pub fn new(
        alphabet: Vec<char>,
        numbers: Vec<BigRational>,
        cutpoint: BigRational,
        direction: Direction,
        mode: OneStateMode,
    ) -> Result<Self, ConstructionError> {
        if alphabet.len() != numbers.len() {
            return Err(ConstructionError::Domain(format!(
                "{} letters but {} transition numbers",
                alphabet.len(),
                numbers.len()
            )));
        }
        for (i, c) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(c) {
                return Err(ConstructionError::Domain(format!("letter `{c}` listed twice")));
            }
        }
        Ok(Self {
            alphabet,
            numbers,
            cutpoint,
            direction,
            mode,
        })
    }

    /// Normalizes a 1-state GFA (end markers allowed) with a cutpoint test
    /// `f(w) <> lambda` to the unit initial/final form.
    pub fn from_gfa(
        g: &Gfa<BigRational>,
        lambda: &BigRational,
        direction: Direction,
        mode: OneStateMode,
    ) -> Result<Self, ConstructionError> {
        if g.states() != 1 {
            return Err(ConstructionError::Domain(format!(
                "expected a 1-state gfa, found {} states",
                g.states()
            )));
        }
        let mut scale = q::mul(g.initial().get(0, 0), g.effective_final().get(0, 0));
        if let Some(m) = g.left_marker() {
            scale = q::mul(&scale, m.get(0, 0));
        }
        let alphabet = g.alphabet().to_vec();
        let numbers: Vec<BigRational> = g.transitions().iter().map(|m| m.get(0, 0).clone()).collect();
        if scale.is_zero() {
            // every value is 0: the language is empty or everything
            let all = match mode {
                OneStateMode::Inclusive => lambda.is_zero(),
                OneStateMode::Strict => match direction {
                    Direction::Less => lambda.is_positive(),
                    Direction::Greater => lambda.is_negative(),
                },
            };
            let ones = vec![BigRational::one(); alphabet.len()];
            let cut = match (mode, direction, all) {
                (OneStateMode::Inclusive, _, true) => q::from_int(1),
                (OneStateMode::Inclusive, _, false) => q::from_int(2),
                (_, Direction::Less, true) | (_, Direction::Greater, false) => q::from_int(2),
                (_, Direction::Less, false) | (_, Direction::Greater, true) => q::from_int(0),
            };
            return Self::new(alphabet, ones, cut, direction, mode);
        }
        let cut = q::div(lambda, &scale).expect("nonzero scale");
        let direction = if scale.is_negative() && mode == OneStateMode::Strict {
            match direction {
                Direction::Less => Direction::Greater,
                Direction::Greater => Direction::Less,
            }
        } else {
            direction
        };
        Self::new(alphabet, numbers, cut, direction, mode)
    }

    /// `prod_j A_j^{|w|_j}`
    pub fn product(&self, word: &str) -> Result<BigRational, LangError> {
        let p = crate::langsem::parikh(word, &self.alphabet)?;
        let mut out = BigRational::one();
        for (a, &x) in self.numbers.iter().zip(&p.counts) {
            if x > 0 {
                out = q::mul(&out, &q::pow(a, x as u32));
            }
        }
        Ok(out)
    }

    pub fn accepts(&self, word: &str) -> Result<bool, LangError> {
        let p = self.product(word)?;
        Ok(match (self.mode, self.direction) {
            (OneStateMode::Inclusive, _) => p == self.cutpoint,
            (OneStateMode::Strict, Direction::Less) => p < self.cutpoint,
            (OneStateMode::Strict, Direction::Greater) => p > self.cutpoint,
        })
    }

    /// The same machine as a [`Gfa`] with `v_0 = f = (1)`.
    pub fn to_gfa(&self) -> Gfa<BigRational> {
        let one = || Matrix::from_rows(vec![vec![BigRational::one()]]).expect("1x1");
        Gfa::new(
            self.alphabet.clone(),
            self.numbers
                .iter()
                .map(|a| Matrix::from_rows(vec![vec![a.clone()]]).expect("1x1"))
                .collect(),
            one(),
            one(),
        )
        .expect("1-state gfa")
    }
}

impl fmt::Display for OneStateGfaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .alphabet
            .iter()
            .zip(&self.numbers)
            .map(|(c, a)| format!("{c}={a}"))
            .collect();
        let rel = match self.mode {
            OneStateMode::Inclusive => "=".to_string(),
            OneStateMode::Strict => self.direction.to_string(),
        };
        write!(f, "[{}] {rel} {}", parts.join(", "), self.cutpoint)
    }
}

/// The descriptor of the language accepted by a 1-state spec.
pub fn decompose_1state(s: &OneStateGfaSpec) -> Result<LanguageDescriptor, ConstructionError> {
    let sigma = s.alphabet.clone();
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut abs = Vec::new();
    let mut zeros = Vec::new();
    for (c, a) in sigma.iter().zip(&s.numbers) {
        if a.is_zero() {
            zeros.push(*c);
        } else {
            x.push(*c);
            abs.push(a.abs());
            if a.is_negative() {
                y.push(*c);
            }
        }
    }
    let lam = &s.cutpoint;
    let inverse = || -> Vec<BigRational> { abs.iter().map(|a| a.recip()).collect() };
    let sol = |bases: Vec<BigRational>, threshold: Threshold, rel: Relation| {
        SolutionDescriptor::new(x.clone(), Coefficients::ExactLog(bases), threshold, rel)
    };
    let par = |bit: u8| ParityDescriptor::new(x.clone(), y.clone(), bit);
    let ind = || IndicatorDescriptor::new(sigma.clone(), zeros.clone());
    let inv_threshold = |l: &BigRational| {
        if l.is_zero() {
            Threshold::Infinite
        } else {
            Threshold::ExactLog(l.abs().recip())
        }
    };
    let form = match s.mode {
        OneStateMode::Inclusive => {
            if lam.is_zero() {
                LanguageForm::IndicatorOnly(ind()?)
            } else {
                LanguageForm::Inclusive(
                    sol(abs.clone(), Threshold::ExactLog(lam.abs()), Relation::Equals)?,
                    par(if lam.is_positive() { 0 } else { 1 })?,
                )
            }
        }
        OneStateMode::Strict => match s.direction {
            Direction::Less if !lam.is_positive() => {
                LanguageForm::Lambda(sol(inverse(), inv_threshold(lam), Relation::Less)?, par(1)?)
            }
            Direction::Less => LanguageForm::V(
                sol(abs.clone(), Threshold::ExactLog(lam.clone()), Relation::Less)?,
                par(1)?,
                ind()?,
            ),
            Direction::Greater if !lam.is_negative() => {
                LanguageForm::Lambda(sol(inverse(), inv_threshold(lam), Relation::Less)?, par(0)?)
            }
            Direction::Greater => LanguageForm::V(
                sol(abs.clone(), Threshold::ExactLog(lam.abs()), Relation::Less)?,
                par(0)?,
                ind()?,
            ),
        },
    };
    Ok(LanguageDescriptor::new(sigma, form)?)
}

/// A 1-state spec accepting exactly the language of `d`.
pub fn build_1state(d: &LanguageDescriptor) -> Result<OneStateGfaSpec, ConstructionError> {
    let numbers_for = |sol: &SolutionDescriptor,
                       par: &ParityDescriptor,
                       invert: bool|
     -> Result<Vec<BigRational>, ConstructionError> {
        let bases = match &sol.coefficients {
            Coefficients::ExactLog(b) => b,
            Coefficients::Approx(_) => {
                return Err(ConstructionError::Domain(
                    "approximate coefficients have no rational transition numbers".into(),
                ))
            }
        };
        Ok(d.alphabet
            .iter()
            .map(|c| match sol.letters.iter().position(|l| l == c) {
                None => BigRational::zero(),
                Some(i) => {
                    let m = if invert { bases[i].recip() } else { bases[i].clone() };
                    if par.odd_letters.contains(c) {
                        -m
                    } else {
                        m
                    }
                }
            })
            .collect())
    };
    let finite = |t: &Threshold| -> Result<BigRational, ConstructionError> {
        match t {
            Threshold::ExactLog(tau) => Ok(tau.clone()),
            Threshold::Infinite => Err(ConstructionError::Domain("unexpected infinite threshold".into())),
            Threshold::Approx(_) => Err(ConstructionError::Domain(
                "approximate thresholds have no rational cutpoint".into(),
            )),
        }
    };
    let alphabet = d.alphabet.clone();
    match &d.form {
        LanguageForm::Lambda(sol, par) => {
            let numbers = numbers_for(sol, par, true)?;
            let mag = match &sol.threshold {
                Threshold::Infinite => BigRational::zero(),
                t => finite(t)?.recip(),
            };
            let (dir, cut) = if par.bit == 1 {
                (Direction::Less, -mag)
            } else {
                (Direction::Greater, mag)
            };
            OneStateGfaSpec::new(alphabet, numbers, cut, dir, OneStateMode::Strict)
        }
        LanguageForm::V(sol, par, _) => {
            let numbers = numbers_for(sol, par, false)?;
            let tau = finite(&sol.threshold)?;
            let (dir, cut) = if par.bit == 1 {
                (Direction::Less, tau)
            } else {
                (Direction::Greater, -tau)
            };
            OneStateGfaSpec::new(alphabet, numbers, cut, dir, OneStateMode::Strict)
        }
        LanguageForm::Inclusive(sol, par) => {
            let numbers = numbers_for(sol, par, false)?;
            let tau = finite(&sol.threshold)?;
            let cut = if par.bit == 0 { tau } else { -tau };
            OneStateGfaSpec::new(alphabet, numbers, cut, Direction::Less, OneStateMode::Inclusive)
        }
        LanguageForm::IndicatorOnly(ind) => {
            let numbers = alphabet
                .iter()
                .map(|c| {
                    if ind.letters.contains(c) {
                        BigRational::zero()
                    } else {
                        BigRational::one()
                    }
                })
                .collect();
            OneStateGfaSpec::new(
                alphabet,
                numbers,
                BigRational::zero(),
                Direction::Less,
                OneStateMode::Inclusive,
            )
        }
    }
}
