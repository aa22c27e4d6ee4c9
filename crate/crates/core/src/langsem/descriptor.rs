use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::exactmath::rational as q;

use super::LangError;

/// Letter counts of a word, in alphabet order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParikhVector {
    pub counts: Vec<u64>,
}

impl ParikhVector {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn parikh(word: &str, alphabet: &[char]) -> Result<ParikhVector, LangError> {
    let mut counts = vec![0u64; alphabet.len()];
    for c in word.chars() {
        let i = alphabet
            .iter()
            .position(|&s| s == c)
            .ok_or(LangError::UnknownLetter(c))?;
        counts[i] += 1;
    }
    Ok(ParikhVector { counts })
}

/// Coefficients `b_j` of a linear form, one per letter of `X`.
///
/// Exact coefficients are stored as positive bases `c_j` with
/// `b_j = log c_j`, so `(b, x) < log tau` is decided as
/// `prod c_j^{x_j} < tau` in exact arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    ExactLog(Vec<BigRational>),
    Approx(Vec<f64>),
}

impl Coefficients {
    pub fn len(&self) -> usize {
        match self {
            Coefficients::ExactLog(v) => v.len(),
            Coefficients::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Threshold {
    /// `alpha = log tau` for a positive rational `tau`.
    ExactLog(BigRational),
    Approx(f64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    Equals,
}

/// The words over `X` whose Parikh vector solves `(b, x) < alpha` (or
/// `= alpha`).
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionDescriptor {
    pub letters: Vec<char>,
    pub coefficients: Coefficients,
    pub threshold: Threshold,
    pub relation: Relation,
}

impl SolutionDescriptor {
    pub fn new(
        letters: Vec<char>,
        coefficients: Coefficients,
        threshold: Threshold,
        relation: Relation,
    ) -> Result<Self, LangError> {
        if letters.len() != coefficients.len() {
            return Err(LangError::Descriptor(format!(
                "{} letters but {} coefficients",
                letters.len(),
                coefficients.len()
            )));
        }
        check_distinct(&letters)?;
        if let Coefficients::ExactLog(bases) = &coefficients {
            if let Some(b) = bases.iter().find(|b| !b.is_positive()) {
                return Err(LangError::Descriptor(format!("base {b} is not positive")));
            }
        }
        match (&coefficients, &threshold) {
            (_, Threshold::ExactLog(t)) if !t.is_positive() => {
                return Err(LangError::Descriptor(format!("threshold base {t} is not positive")));
            }
            (Coefficients::ExactLog(_), Threshold::Approx(_))
            | (Coefficients::Approx(_), Threshold::ExactLog(_)) => {
                return Err(LangError::Descriptor(
                    "coefficients and threshold must both be exact or both approximate".into(),
                ));
            }
            _ => {}
        }
        if relation == Relation::Equals && threshold == Threshold::Infinite {
            return Err(LangError::Descriptor("an equation cannot have an infinite right side".into()));
        }
        Ok(Self {
            letters,
            coefficients,
            threshold,
            relation,
        })
    }

    /// Membership of a word whose letters are all in `X`, given its counts
    /// over `X`.
    pub fn holds(&self, counts: &[u64]) -> bool {
        if self.threshold == Threshold::Infinite {
            return true;
        }
        match (&self.coefficients, &self.threshold) {
            (Coefficients::ExactLog(bases), Threshold::ExactLog(tau)) => {
                let mut product = BigRational::one();
                for (c, &x) in bases.iter().zip(counts) {
                    if x > 0 {
                        product = q::mul(&product, &q::pow(c, x as u32));
                    }
                }
                match self.relation {
                    Relation::Less => product < *tau,
                    Relation::Equals => product == *tau,
                }
            }
            (Coefficients::Approx(b), Threshold::Approx(alpha)) => {
                let lhs: f64 = b.iter().zip(counts).map(|(b, &x)| b * x as f64).sum();
                match self.relation {
                    Relation::Less => lhs < *alpha,
                    Relation::Equals => (lhs - alpha).abs() <= super::DEFAULT_EPSILON,
                }
            }
            _ => unreachable!("checked at construction"),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coefficients, Coefficients::ExactLog(_))
    }
}

/// Words over `X` with an even (`bit = 0`) or odd (`bit = 1`) number of
/// letters from `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityDescriptor {
    pub letters: Vec<char>,
    pub odd_letters: Vec<char>,
    pub bit: u8,
}

impl ParityDescriptor {
    pub fn new(letters: Vec<char>, odd_letters: Vec<char>, bit: u8) -> Result<Self, LangError> {
        check_distinct(&letters)?;
        if bit > 1 {
            return Err(LangError::Descriptor(format!("parity bit must be 0 or 1, got {bit}")));
        }
        if let Some(c) = odd_letters.iter().find(|c| !letters.contains(c)) {
            return Err(LangError::Descriptor(format!("`{c}` is in Y but not in X")));
        }
        Ok(Self {
            letters,
            odd_letters,
            bit,
        })
    }
}

/// Words over `Sigma` containing at least one letter of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorDescriptor {
    pub alphabet: Vec<char>,
    pub letters: Vec<char>,
}

impl IndicatorDescriptor {
    pub fn new(alphabet: Vec<char>, letters: Vec<char>) -> Result<Self, LangError> {
        check_distinct(&alphabet)?;
        if let Some(c) = letters.iter().find(|c| !alphabet.contains(c)) {
            return Err(LangError::Descriptor(format!("`{c}` is not in the alphabet")));
        }
        Ok(Self { alphabet, letters })
    }

    pub fn holds(&self, word: &str) -> bool {
        word.chars().any(|c| self.letters.contains(&c))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LanguageForm {
    /// `Sol(X, b, alpha) & Par(X, Y, i)`
    Lambda(SolutionDescriptor, ParityDescriptor),
    /// `Sol(X, b, alpha) | Par(X, Y, i) | Ind(Sigma, Sigma \ X)`
    V(SolutionDescriptor, ParityDescriptor, IndicatorDescriptor),
    /// `Sol=(X, b, alpha) & Par(X, Y, i)`
    Inclusive(SolutionDescriptor, ParityDescriptor),
    /// `Ind(Sigma, Z)`
    IndicatorOnly(IndicatorDescriptor),
}

/// A Parikh-closed language over `alphabet` in one of the normal forms
/// describing one-state automata.
#[derive(Clone, Debug, PartialEq)]
pub struct LanguageDescriptor {
    pub alphabet: Vec<char>,
    pub form: LanguageForm,
}

impl LanguageDescriptor {
    pub fn new(alphabet: Vec<char>, form: LanguageForm) -> Result<Self, LangError> {
        check_distinct(&alphabet)?;
        let subset = |xs: &[char], what: &str| -> Result<(), LangError> {
            match xs.iter().find(|c| !alphabet.contains(c)) {
                Some(c) => Err(LangError::Descriptor(format!("{what} letter `{c}` is not in the alphabet"))),
                None => Ok(()),
            }
        };
        let same_x = |sol: &SolutionDescriptor, par: &ParityDescriptor| -> Result<(), LangError> {
            let mut a = sol.letters.clone();
            let mut b = par.letters.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(LangError::Descriptor(
                    "solution and parity components must share X".into(),
                ));
            }
            subset(&sol.letters, "solution")
        };
        match &form {
            LanguageForm::Lambda(sol, par) => {
                same_x(sol, par)?;
                if sol.relation != Relation::Less {
                    return Err(LangError::Descriptor("lambda form needs an inequality".into()));
                }
            }
            LanguageForm::V(sol, par, ind) => {
                same_x(sol, par)?;
                if sol.relation != Relation::Less {
                    return Err(LangError::Descriptor("V form needs an inequality".into()));
                }
                if sol.threshold == Threshold::Infinite {
                    return Err(LangError::Descriptor("V form needs a finite threshold".into()));
                }
                let mut expected: Vec<char> = alphabet
                    .iter()
                    .filter(|c| !sol.letters.contains(c))
                    .copied()
                    .collect();
                let mut got = ind.letters.clone();
                expected.sort_unstable();
                got.sort_unstable();
                if got != expected || ind.alphabet.len() != alphabet.len() {
                    return Err(LangError::Descriptor(
                        "V form indicator must cover exactly the letters outside X".into(),
                    ));
                }
            }
            LanguageForm::Inclusive(sol, par) => {
                same_x(sol, par)?;
                if sol.relation != Relation::Equals {
                    return Err(LangError::Descriptor("inclusive form needs an equation".into()));
                }
            }
            LanguageForm::IndicatorOnly(ind) => subset(&ind.letters, "indicator")?,
        }
        Ok(Self { alphabet, form })
    }

    /// The solution component, if any.
    pub fn solution(&self) -> Option<&SolutionDescriptor> {
        match &self.form {
            LanguageForm::Lambda(s, _) | LanguageForm::V(s, _, _) | LanguageForm::Inclusive(s, _) => Some(s),
            LanguageForm::IndicatorOnly(_) => None,
        }
    }
}

fn check_distinct(letters: &[char]) -> Result<(), LangError> {
    for (i, c) in letters.iter().enumerate() {
        if letters[..i].contains(c) {
            return Err(LangError::Descriptor(format!("letter `{c}` listed twice")));
        }
    }
    Ok(())
}

/// Counts over `X`, or `None` if the word uses a letter outside `X`.
fn counts_over(word: &str, letters: &[char]) -> Option<Vec<u64>> {
    let mut counts = vec![0u64; letters.len()];
    for c in word.chars() {
        counts[letters.iter().position(|&x| x == c)?] += 1;
    }
    Some(counts)
}

fn parity_holds(par: &ParityDescriptor, word: &str) -> bool {
    let n = word.chars().filter(|c| par.odd_letters.contains(c)).count();
    (n % 2) as u8 == par.bit
}

/// Membership of `word` in the language described by `d`.
pub fn desc_member(d: &LanguageDescriptor, word: &str) -> Result<bool, LangError> {
    if let Some(c) = word.chars().find(|c| !d.alphabet.contains(c)) {
        return Err(LangError::UnknownLetter(c));
    }
    Ok(match &d.form {
        LanguageForm::Lambda(sol, par) | LanguageForm::Inclusive(sol, par) => {
            match counts_over(word, &sol.letters) {
                Some(counts) => parity_holds(par, word) && sol.holds(&counts),
                None => false,
            }
        }
        LanguageForm::V(sol, par, ind) => {
            ind.holds(word)
                || match counts_over(word, &sol.letters) {
                    Some(counts) => parity_holds(par, word) || sol.holds(&counts),
                    None => false,
                }
        }
        LanguageForm::IndicatorOnly(ind) => ind.holds(word),
    })
}

fn letter_set(letters: &[char]) -> String {
    let inner: Vec<String> = letters.iter().map(char::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for SolutionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.relation {
            Relation::Less => "Sol",
            Relation::Equals => "Sol=",
        };
        write!(f, "{name}({}; ", letter_set(&self.letters))?;
        match &self.coefficients {
            Coefficients::ExactLog(bases) => {
                let parts: Vec<String> = self
                    .letters
                    .iter()
                    .zip(bases)
                    .map(|(c, b)| format!("{c}:log {b}"))
                    .collect();
                write!(f, "{}", parts.join(", "))?;
            }
            Coefficients::Approx(bs) => {
                let parts: Vec<String> = self
                    .letters
                    .iter()
                    .zip(bs)
                    .map(|(c, b)| format!("{c}:{b:?}"))
                    .collect();
                write!(f, "{}", parts.join(", "))?;
            }
        }
        match &self.threshold {
            Threshold::ExactLog(t) => write!(f, "; log {t})"),
            Threshold::Approx(a) => write!(f, "; {a:?})"),
            Threshold::Infinite => write!(f, "; inf)"),
        }
    }
}

impl fmt::Display for ParityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Par({}, {}, {})",
            letter_set(&self.letters),
            letter_set(&self.odd_letters),
            self.bit
        )
    }
}

impl fmt::Display for IndicatorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ind({}, {})", letter_set(&self.alphabet), letter_set(&self.letters))
    }
}

impl fmt::Display for LanguageDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            LanguageForm::Lambda(s, p) | LanguageForm::Inclusive(s, p) => write!(f, "{s} & {p}"),
            LanguageForm::V(s, p, i) => write!(f, "{s} | {p} | {i}"),
            LanguageForm::IndicatorOnly(i) => write!(f, "{i}"),
        }
    }
}
