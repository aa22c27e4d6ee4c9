//! JSON descriptor documents for the languages of one-state automata.
//!
//! ```json
//! {
//!   "alphabet": ["a", "b", "c"],
//!   "form": "lambda",
//!   "solution": { "letters": ["a", "b"], "bases": {"a": "2", "b": "1/3"}, "threshold": "inf", "relation": "<" },
//!   "parity": { "X": ["a", "b"], "Y": ["b"], "i": 1 }
//! }
//! ```
//!
//! `form` is one of `lambda`, `v`, `inclusive`, `indicator`. A V-form
//! indicator defaults to the letters outside `X`; an `indicator` form lists
//! its letters under `indicator`. Approximate coefficients go under
//! `coefficients` with a numeric threshold.

use std::collections::BTreeMap;

use cutpoint::langsem::{
    Coefficients, IndicatorDescriptor, LanguageDescriptor, LanguageForm, ParityDescriptor, Relation,
    SolutionDescriptor, Threshold,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::document::parse_rational_value;
use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDocument {
    pub alphabet: Vec<String>,
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<SolutionDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<ParityDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indicator: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<BTreeMap<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<BTreeMap<String, f64>>,
    pub threshold: Value,
    #[serde(default = "less_than")]
    pub relation: String,
}

fn less_than() -> String {
    "<".into()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParityDocument {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "Y")]
    pub y: Vec<String>,
    pub i: u8,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn letter(s: &str) -> Result<char, CliError> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(bad(format!("letters must be single characters, got `{s}`"))),
    }
}

fn letters(v: &[String]) -> Result<Vec<char>, CliError> {
    v.iter().map(|s| letter(s)).collect()
}

fn strings(v: &[char]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

impl SolutionDocument {
    fn to_descriptor(&self, alphabet: Option<&[char]>) -> Result<SolutionDescriptor, CliError> {
        let keys: Vec<String> = match (&self.bases, &self.coefficients) {
            (Some(b), None) => b.keys().cloned().collect(),
            (None, Some(c)) => c.keys().cloned().collect(),
            _ => return Err(bad("a solution needs exactly one of `bases` and `coefficients`")),
        };
        let order: Vec<char> = match (&self.letters, alphabet) {
            (Some(ls), _) => letters(ls)?,
            (None, Some(sigma)) => sigma
                .iter()
                .filter(|c| keys.contains(&c.to_string()))
                .copied()
                .collect(),
            (None, None) => letters(&keys)?,
        };
        if order.len() != keys.len() || order.iter().any(|c| !keys.contains(&c.to_string())) {
            return Err(bad("solution letters and coefficient keys differ"));
        }
        let relation = match self.relation.as_str() {
            "<" => Relation::Less,
            "=" => Relation::Equals,
            other => return Err(bad(format!("unknown relation `{other}`"))),
        };
        let infinite = self.threshold.as_str() == Some("inf");
        let (coefficients, threshold) = match (&self.bases, &self.coefficients) {
            (Some(b), _) => {
                let bases = order
                    .iter()
                    .map(|c| parse_rational_value(&b[&c.to_string()]))
                    .collect::<Result<_, _>>()?;
                let t = if infinite {
                    Threshold::Infinite
                } else {
                    Threshold::ExactLog(parse_rational_value(&self.threshold)?)
                };
                (Coefficients::ExactLog(bases), t)
            }
            (_, Some(cs)) => {
                let t = match (&self.threshold, infinite) {
                    (_, true) => Threshold::Infinite,
                    (Value::Number(n), _) => Threshold::Approx(n.as_f64().unwrap_or(f64::NAN)),
                    (other, _) => return Err(bad(format!("approximate threshold must be a number, got {other}"))),
                };
                (Coefficients::Approx(order.iter().map(|c| cs[&c.to_string()]).collect()), t)
            }
            _ => unreachable!("checked above"),
        };
        SolutionDescriptor::new(order, coefficients, threshold, relation).map_err(|e| bad(e.to_string()))
    }

    fn from_descriptor(s: &SolutionDescriptor) -> Self {
        let keyed = |vals: Vec<Value>| -> BTreeMap<String, Value> {
            s.letters.iter().map(|c| c.to_string()).zip(vals).collect()
        };
        let (bases, coefficients) = match &s.coefficients {
            Coefficients::ExactLog(b) => (Some(keyed(b.iter().map(|x| Value::String(x.to_string())).collect())), None),
            Coefficients::Approx(c) => (None, Some(s.letters.iter().map(|l| l.to_string()).zip(c.iter().copied()).collect())),
        };
        SolutionDocument {
            letters: Some(strings(&s.letters)),
            bases,
            coefficients,
            threshold: match &s.threshold {
                Threshold::Infinite => Value::String("inf".into()),
                Threshold::ExactLog(t) => Value::String(t.to_string()),
                Threshold::Approx(a) => Value::from(*a),
            },
            relation: match s.relation {
                Relation::Less => "<".into(),
                Relation::Equals => "=".into(),
            },
        }
    }
}

impl DescriptorDocument {
    pub fn to_descriptor(&self) -> Result<LanguageDescriptor, CliError> {
        let sigma = letters(&self.alphabet)?;
        let solution = || -> Result<SolutionDescriptor, CliError> {
            self.solution
                .as_ref()
                .ok_or_else(|| bad(format!("form `{}` needs a solution", self.form)))?
                .to_descriptor(Some(&sigma))
        };
        let parity = |sol: &SolutionDescriptor| -> Result<ParityDescriptor, CliError> {
            let p = match &self.parity {
                Some(p) => ParityDescriptor::new(letters(&p.x)?, letters(&p.y)?, p.i),
                None => ParityDescriptor::new(sol.letters.clone(), Vec::new(), 0),
            };
            p.map_err(|e| bad(e.to_string()))
        };
        let indicator = |default: Vec<char>| -> Result<IndicatorDescriptor, CliError> {
            let z = match &self.indicator {
                Some(z) => letters(z)?,
                None => default,
            };
            IndicatorDescriptor::new(sigma.clone(), z).map_err(|e| bad(e.to_string()))
        };
        let form = match self.form.as_str() {
            "lambda" => {
                let s = solution()?;
                let p = parity(&s)?;
                LanguageForm::Lambda(s, p)
            }
            "inclusive" => {
                let s = solution()?;
                let p = parity(&s)?;
                LanguageForm::Inclusive(s, p)
            }
            "v" => {
                let s = solution()?;
                let p = parity(&s)?;
                let outside = sigma.iter().filter(|c| !s.letters.contains(c)).copied().collect();
                LanguageForm::V(s, p, indicator(outside)?)
            }
            "indicator" => LanguageForm::IndicatorOnly(indicator(Vec::new())?),
            other => return Err(bad(format!("unknown form `{other}`"))),
        };
        LanguageDescriptor::new(sigma, form).map_err(|e| bad(e.to_string()))
    }

    pub fn from_descriptor(d: &LanguageDescriptor) -> Self {
        let par = |p: &ParityDescriptor| ParityDocument {
            x: strings(&p.letters),
            y: strings(&p.odd_letters),
            i: p.bit,
        };
        let (form, solution, parity, indicator) = match &d.form {
            LanguageForm::Lambda(s, p) => ("lambda", Some(s), Some(par(p)), None),
            LanguageForm::Inclusive(s, p) => ("inclusive", Some(s), Some(par(p)), None),
            LanguageForm::V(s, p, i) => ("v", Some(s), Some(par(p)), Some(strings(&i.letters))),
            LanguageForm::IndicatorOnly(i) => ("indicator", None, None, Some(strings(&i.letters))),
        };
        DescriptorDocument {
            alphabet: strings(&d.alphabet),
            form: form.into(),
            solution: solution.map(SolutionDocument::from_descriptor),
            parity,
            indicator,
        }
    }
}

pub fn parse_descriptor(text: &str) -> Result<LanguageDescriptor, CliError> {
    let doc: DescriptorDocument = serde_json::from_str(text)?;
    doc.to_descriptor()
}

pub fn serialize_descriptor(d: &LanguageDescriptor) -> Value {
    serde_json::to_value(DescriptorDocument::from_descriptor(d)).expect("descriptors are plain JSON")
}

/// What `chomsky` reads: a full descriptor, or a bare solution object.
pub enum ChomskyInput {
    Descriptor(LanguageDescriptor),
    Solution(SolutionDescriptor),
}

pub fn parse_chomsky_input(text: &str) -> Result<ChomskyInput, CliError> {
    let v: Value = serde_json::from_str(text)?;
    if v.get("form").is_some() {
        Ok(ChomskyInput::Descriptor(serde_json::from_value::<DescriptorDocument>(v)?.to_descriptor()?))
    } else {
        let doc: SolutionDocument = serde_json::from_value(v)?;
        Ok(ChomskyInput::Solution(doc.to_descriptor(None)?))
    }
}
