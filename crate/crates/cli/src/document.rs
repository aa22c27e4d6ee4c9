//! JSON automaton documents.
//!
//! ```json
//! {
//!   "model": "pfa",
//!   "states": 3,
//!   "alphabet": ["a"],
//!   "scalar": "rational",
//!   "transitions": { "a": [["0", "0", "1/2"], ["1", "0", "1/2"], ["0", "1", "0"]] },
//!   "initial": 1,
//!   "final": ["0", "0", "1"]
//! }
//! ```
//!
//! Matrices are row-major and act on column vectors from the left. State
//! indices (`initial` given as a number, and the accept list in `final` for
//! quantum models) are 1-based.

use std::collections::BTreeMap;

use cutpoint::automata::{Automaton, Gfa, Machine, Mcqfa, Pfa, Qfa};
use cutpoint::exactmath::rational as q;
use cutpoint::exactmath::{BigRational, Complex64, Field, GaussianRational, Matrix, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub model: String,
    pub states: usize,
    pub alphabet: Vec<String>,
    pub scalar: String,
    pub transitions: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_marker: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_marker: Option<Value>,
    pub initial: Value,
    #[serde(rename = "final")]
    pub final_: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ScalarKind {
    Rational,
    Float,
    ComplexRational,
    ComplexFloat,
}

impl ScalarKind {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "rational" => Ok(Self::Rational),
            "float" => Ok(Self::Float),
            "complex-rational" => Ok(Self::ComplexRational),
            "complex-float" => Ok(Self::ComplexFloat),
            other => Err(bad(format!("unknown scalar kind `{other}`"))),
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn parse_rational_value(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::String(s) => Ok(q::parse(s)?),
        Value::Number(n) if n.is_i64() => Ok(q::from_int(n.as_i64().unwrap_or_default())),
        Value::Number(n) if n.is_u64() => Ok(BigRational::from_integer(n.as_u64().unwrap_or_default().into())),
        other => Err(bad(format!("expected an exact rational (\"p/q\" or an integer), got {other}"))),
    }
}

fn parse_float_value(v: &Value) -> Result<f64, CliError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad(format!("bad number {n}"))),
        Value::String(s) => match q::parse(s) {
            Ok(r) => Ok(q::to_f64(&r)),
            Err(_) => s.trim().parse::<f64>().map_err(|_| bad(format!("bad number `{s}`"))),
        },
        other => Err(bad(format!("expected a number, got {other}"))),
    }
}

fn complex_parts(v: &Value) -> Option<(&Value, &Value)> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Some((re, im)),
        _ => None,
    }
}

fn parse_gaussian(v: &Value) -> Result<GaussianRational, CliError> {
    match complex_parts(v) {
        Some((re, im)) => Ok(GaussianRational::new(parse_rational_value(re)?, parse_rational_value(im)?)),
        None => Ok(GaussianRational::real(parse_rational_value(v)?)),
    }
}

fn parse_complex(v: &Value) -> Result<Complex64, CliError> {
    match complex_parts(v) {
        Some((re, im)) => Ok(Complex64::new(parse_float_value(re)?, parse_float_value(im)?)),
        None => Ok(Complex64::new(parse_float_value(v)?, 0.0)),
    }
}

type EntryParser<'a, T> = &'a dyn Fn(&Value) -> Result<T, CliError>;

fn parse_list<T>(v: &Value, what: &str, entry: EntryParser<T>) -> Result<Vec<T>, CliError> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what}: expected an array")))?
        .iter()
        .map(entry)
        .collect()
}

fn parse_matrix<T: Field>(v: &Value, n: usize, what: &str, entry: EntryParser<T>) -> Result<Matrix<T>, CliError> {
    let rows = v.as_array().ok_or_else(|| bad(format!("{what}: expected a matrix")))?;
    let rows: Vec<Vec<T>> = rows
        .iter()
        .map(|r| parse_list(r, what, entry))
        .collect::<Result<_, _>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(bad(format!("{what}: expected a {n}x{n} matrix")));
    }
    Matrix::from_rows(rows).map_err(|e| bad(format!("{what}: {e}")))
}

fn parse_vector<T: Field>(v: &Value, n: usize, what: &str, entry: EntryParser<T>) -> Result<Vec<T>, CliError> {
    let out = parse_list(v, what, entry)?;
    if out.len() != n {
        return Err(bad(format!("{what}: expected {n} entries, got {}", out.len())));
    }
    Ok(out)
}

fn parse_index(v: &Value, n: usize, what: &str) -> Result<usize, CliError> {
    match v.as_u64() {
        Some(i) if i >= 1 && (i as usize) <= n => Ok(i as usize - 1),
        _ => Err(bad(format!("{what}: expected a state index in 1..={n}, got {v}"))),
    }
}

fn parse_start<T: Field>(v: &Value, n: usize, entry: EntryParser<T>) -> Result<Matrix<T>, CliError> {
    if v.is_number() {
        return Ok(Matrix::basis(n, parse_index(v, n, "initial")?));
    }
    Ok(Matrix::column(parse_vector(v, n, "initial", entry)?)?)
}

fn parse_accept(v: &Value, n: usize) -> Result<Vec<usize>, CliError> {
    v.as_array()
        .ok_or_else(|| bad("final: expected a list of accepting state indices"))?
        .iter()
        .map(|i| parse_index(i, n, "final"))
        .collect()
}

fn symbol_of(s: &str) -> Result<char, CliError> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(bad(format!("alphabet symbols must be single characters, got `{s}`"))),
    }
}

impl AutomatonDocument {
    fn symbols(&self) -> Result<Vec<char>, CliError> {
        let symbols: Vec<char> = self.alphabet.iter().map(|s| symbol_of(s)).collect::<Result<_, _>>()?;
        for key in self.transitions.keys() {
            if !self.alphabet.contains(key) {
                return Err(bad(format!("transition for `{key}` which is not in the alphabet")));
            }
        }
        Ok(symbols)
    }

    fn transition(&self, symbol: &str) -> Result<&Value, CliError> {
        self.transitions
            .get(symbol)
            .ok_or_else(|| bad(format!("no transition for symbol `{symbol}`")))
    }

    fn gfa<R: cutpoint::exactmath::RealField>(&self, entry: EntryParser<R>) -> Result<Gfa<R>, CliError> {
        let n = self.states;
        let alphabet = self.symbols()?;
        let transitions = self
            .alphabet
            .iter()
            .map(|s| parse_matrix(self.transition(s)?, n, &format!("transition '{s}'"), entry))
            .collect::<Result<Vec<_>, _>>()?;
        let initial = parse_start(&self.initial, n, entry)?;
        let final_row = Matrix::row(parse_vector(&self.final_, n, "final", entry)?)?;
        let mut g = Gfa::new(alphabet, transitions, initial, final_row)?;
        if let Some(m) = &self.left_marker {
            g = g.with_left_marker(parse_matrix(m, n, "left_marker", entry)?)?;
        }
        if let Some(m) = &self.right_marker {
            g = g.with_right_marker(parse_matrix(m, n, "right_marker", entry)?)?;
        }
        Ok(g)
    }

    fn mcqfa<C: Field>(&self, entry: EntryParser<C>) -> Result<Mcqfa<C>, CliError> {
        let n = self.states;
        let alphabet = self.symbols()?;
        let unitaries = self
            .alphabet
            .iter()
            .map(|s| parse_matrix(self.transition(s)?, n, &format!("transition '{s}'"), entry))
            .collect::<Result<Vec<_>, _>>()?;
        let initial = parse_start(&self.initial, n, entry)?;
        let mut mc = Mcqfa::new(alphabet, unitaries, initial, parse_accept(&self.final_, n)?)?;
        if let Some(m) = &self.left_marker {
            mc = mc.with_left_marker(parse_matrix(m, n, "left_marker", entry)?)?;
        }
        if let Some(m) = &self.right_marker {
            mc = mc.with_right_marker(parse_matrix(m, n, "right_marker", entry)?)?;
        }
        Ok(mc)
    }

    fn kraus_list<C: Field>(&self, v: &Value, what: &str, entry: EntryParser<C>) -> Result<Vec<Matrix<C>>, CliError> {
        v.as_array()
            .ok_or_else(|| bad(format!("{what}: expected a list of Kraus matrices")))?
            .iter()
            .map(|m| parse_matrix(m, self.states, what, entry))
            .collect()
    }

    fn qfa<C: Field>(&self, entry: EntryParser<C>) -> Result<Qfa<C>, CliError> {
        let n = self.states;
        let alphabet = self.symbols()?;
        let kraus = self
            .alphabet
            .iter()
            .map(|s| self.kraus_list(self.transition(s)?, &format!("transition '{s}'"), entry))
            .collect::<Result<Vec<_>, _>>()?;
        let accept = parse_accept(&self.final_, n)?;
        let mut qf = if self.initial.is_number() {
            Qfa::with_basis_start(alphabet, kraus, n, parse_index(&self.initial, n, "initial")?, accept)?
        } else {
            Qfa::new(alphabet, kraus, parse_matrix(&self.initial, n, "initial", entry)?, accept)?
        };
        if let Some(m) = &self.left_marker {
            qf = qf.with_left_marker(self.kraus_list(m, "left_marker", entry)?)?;
        }
        if let Some(m) = &self.right_marker {
            qf = qf.with_right_marker(self.kraus_list(m, "right_marker", entry)?)?;
        }
        Ok(qf)
    }

    /// Builds the automaton without checking the model conditions.
    pub fn to_automaton_unchecked(&self) -> Result<Automaton, CliError> {
        use ScalarKind::*;
        let kind = ScalarKind::parse(&self.scalar)?;
        if self.states == 0 {
            return Err(bad("states must be positive"));
        }
        let gauss: EntryParser<GaussianRational> = &parse_gaussian;
        let complex: EntryParser<Complex64> = &parse_complex;
        Ok(match (self.model.as_str(), kind) {
            ("gfa", Rational) => Automaton::Exact(Machine::Gfa(self.gfa(&parse_rational_value)?)),
            ("gfa", Float) => Automaton::Approx(Machine::Gfa(self.gfa(&parse_float_value)?)),
            ("pfa", Rational) => {
                Automaton::Exact(Machine::Pfa(Pfa::new_unchecked(self.gfa(&parse_rational_value)?)))
            }
            ("pfa", Float) => Automaton::Approx(Machine::Pfa(Pfa::new_unchecked(self.gfa(&parse_float_value)?))),
            ("gfa" | "pfa", k) => {
                return Err(bad(format!("a {} needs a real scalar kind, got {k:?}", self.model)))
            }
            ("mcqfa", Rational | ComplexRational) => Automaton::Exact(Machine::Mcqfa(self.mcqfa(gauss)?)),
            ("mcqfa", Float | ComplexFloat) => Automaton::Approx(Machine::Mcqfa(self.mcqfa(complex)?)),
            ("qfa", Rational | ComplexRational) => Automaton::Exact(Machine::Qfa(self.qfa(gauss)?)),
            ("qfa", Float | ComplexFloat) => Automaton::Approx(Machine::Qfa(self.qfa(complex)?)),
            (other, _) => return Err(bad(format!("unknown model `{other}`"))),
        })
    }

    /// Builds and validates (exactly for exact scalars, within the
    /// validation tolerance otherwise).
    pub fn to_automaton(&self) -> Result<Automaton, CliError> {
        let aut = self.to_automaton_unchecked()?;
        let violations = aut.validate(0.0);
        if violations.is_empty() {
            Ok(aut)
        } else {
            Err(CliError::Invalid(violations))
        }
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton, CliError> {
    let doc: AutomatonDocument = serde_json::from_str(text)?;
    doc.to_automaton()
}

/// Exact values become strings, binary64 values numbers, and non-real
/// values `[re, im]` pairs.
pub fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::ExactReal(r) => Value::String(r.to_string()),
        Scalar::ExactComplex(z) if z.is_real() => Value::String(z.re.to_string()),
        Scalar::ExactComplex(z) => Value::Array(vec![Value::String(z.re.to_string()), Value::String(z.im.to_string())]),
        Scalar::ApproxReal(x) => Value::from(*x),
        Scalar::ApproxComplex(z) if z.im == 0.0 => Value::from(z.re),
        Scalar::ApproxComplex(z) => Value::Array(vec![Value::from(z.re), Value::from(z.im)]),
    }
}

fn entries_json<T: Field>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| scalar_json(&x.to_scalar())).collect())
}

pub fn matrix_json<T: Field>(m: &Matrix<T>) -> Value {
    Value::Array((0..m.rows()).map(|i| entries_json(&m.row_vec(i))).collect())
}

fn accept_json(accept: &[usize]) -> Value {
    Value::Array(accept.iter().map(|i| Value::from(i + 1)).collect())
}

fn gfa_document<R: cutpoint::exactmath::RealField>(model: &str, scalar: &str, g: &Gfa<R>) -> AutomatonDocument {
    AutomatonDocument {
        model: model.into(),
        states: g.states(),
        alphabet: g.alphabet().iter().map(|c| c.to_string()).collect(),
        scalar: scalar.into(),
        transitions: g
            .alphabet()
            .iter()
            .zip(g.transitions())
            .map(|(c, m)| (c.to_string(), matrix_json(m)))
            .collect(),
        left_marker: g.left_marker().map(matrix_json),
        right_marker: g.right_marker().map(matrix_json),
        initial: entries_json(g.initial().entries()),
        final_: entries_json(g.final_row().entries()),
    }
}

fn mcqfa_document<C: Field>(scalar: &str, mc: &Mcqfa<C>) -> AutomatonDocument {
    AutomatonDocument {
        model: "mcqfa".into(),
        states: mc.states(),
        alphabet: mc.alphabet().iter().map(|c| c.to_string()).collect(),
        scalar: scalar.into(),
        transitions: mc
            .alphabet()
            .iter()
            .zip(mc.unitaries())
            .map(|(c, m)| (c.to_string(), matrix_json(m)))
            .collect(),
        left_marker: mc.left_marker().map(matrix_json),
        right_marker: mc.right_marker().map(matrix_json),
        initial: entries_json(mc.initial().entries()),
        final_: accept_json(mc.accept()),
    }
}

fn kraus_json<C: Field>(list: &[Matrix<C>]) -> Value {
    Value::Array(list.iter().map(matrix_json).collect())
}

fn qfa_document<C: Field>(scalar: &str, qf: &Qfa<C>) -> AutomatonDocument {
    AutomatonDocument {
        model: "qfa".into(),
        states: qf.states(),
        alphabet: qf.alphabet().iter().map(|c| c.to_string()).collect(),
        scalar: scalar.into(),
        transitions: qf
            .alphabet()
            .iter()
            .zip(qf.kraus())
            .map(|(c, l)| (c.to_string(), kraus_json(l)))
            .collect(),
        left_marker: qf.left_marker().map(kraus_json),
        right_marker: qf.right_marker().map(kraus_json),
        initial: matrix_json(qf.initial()),
        final_: accept_json(qf.accept()),
    }
}

pub fn to_document(aut: &Automaton) -> AutomatonDocument {
    match aut {
        Automaton::Exact(Machine::Gfa(g)) => gfa_document("gfa", "rational", g),
        Automaton::Exact(Machine::Pfa(p)) => gfa_document("pfa", "rational", p.as_gfa()),
        Automaton::Exact(Machine::Mcqfa(mc)) => mcqfa_document("complex-rational", mc),
        Automaton::Exact(Machine::Qfa(qf)) => qfa_document("complex-rational", qf),
        Automaton::Approx(Machine::Gfa(g)) => gfa_document("gfa", "float", g),
        Automaton::Approx(Machine::Pfa(p)) => gfa_document("pfa", "float", p.as_gfa()),
        Automaton::Approx(Machine::Mcqfa(mc)) => mcqfa_document("complex-float", mc),
        Automaton::Approx(Machine::Qfa(qf)) => qfa_document("complex-float", qf),
    }
}

pub fn serialize_automaton(aut: &Automaton) -> String {
    serde_json::to_string_pretty(&to_document(aut)).expect("documents are plain JSON")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cutpoint::constructions::{modn_mcqfa, px, rotation, PythTriple, RotationModel};

    const PX_HALF: &str = r#"{
        "model": "pfa", "states": 3, "alphabet": ["a"], "scalar": "rational",
        "transitions": {"a": [["0", "0", "1/2"], ["1", "0", "1/2"], ["0", "1", "0"]]},
        "initial": 1, "final": [0, 0, 1]
    }"#;

    #[test]
    fn parses_px_half() {
        let aut = parse_automaton(PX_HALF).unwrap();
        let expected = Automaton::Exact(Machine::Pfa(px(&q::ratio(1, 2)).unwrap()));
        assert_eq!(aut.unary_values(12).unwrap(), expected.unary_values(12).unwrap());
        assert_eq!(aut.value("aa").unwrap(), Scalar::ExactReal(q::from_int(1)));
    }

    #[test]
    fn column_sum_violation_is_exit_1() {
        let text = r#"{
            "model": "pfa", "states": 2, "alphabet": ["a"], "scalar": "rational",
            "transitions": {"a": [["0.5", "0"], ["0.4", "1"]]},
            "initial": 1, "final": [0, 1]
        }"#;
        let err = parse_automaton(text).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(matches!(err, CliError::Invalid(ref v) if !v.is_empty()));
    }

    #[test]
    fn malformed_text_is_exit_2() {
        for text in [
            "{",
            r#"{"model": "dfa", "states": 1, "alphabet": ["a"], "scalar": "rational", "transitions": {"a": [["1"]]}, "initial": 1, "final": ["1"]}"#,
            r#"{"model": "gfa", "states": 2, "alphabet": ["a"], "scalar": "rational", "transitions": {"a": [["1"]]}, "initial": 1, "final": ["1", "0"]}"#,
            r#"{"model": "gfa", "states": 1, "alphabet": ["ab"], "scalar": "rational", "transitions": {"ab": [["1"]]}, "initial": 1, "final": ["1"]}"#,
            r#"{"model": "gfa", "states": 1, "alphabet": ["a"], "scalar": "rational", "transitions": {"a": [[0.5]]}, "initial": 1, "final": ["1"]}"#,
            r#"{"model": "mcqfa", "states": 1, "alphabet": ["a"], "scalar": "rational", "transitions": {"a": [["1"]]}, "initial": 2, "final": [1]}"#,
        ] {
            assert_eq!(parse_automaton(text).unwrap_err().exit_code(), 2, "{text}");
        }
    }

    #[test]
    fn qfa_reset_pair_is_valid() {
        let text = r#"{
            "model": "qfa", "states": 2, "alphabet": ["a"], "scalar": "complex-rational",
            "transitions": {"a": [[["1", "0"], ["0", "0"]], [["0", "1"], ["0", "0"]]]},
            "initial": 2, "final": [1]
        }"#;
        let aut = parse_automaton(text).unwrap();
        assert_eq!(aut.value("a").unwrap(), Scalar::ExactReal(q::from_int(1)));
        assert_eq!(aut.value("").unwrap(), Scalar::ExactReal(q::from_int(0)));
    }

    #[test]
    fn non_unitary_mcqfa_is_rejected() {
        let text = r#"{
            "model": "mcqfa", "states": 2, "alphabet": ["a"], "scalar": "rational",
            "transitions": {"a": [["1", "1"], ["0", "1"]]},
            "initial": 1, "final": [1]
        }"#;
        assert_eq!(parse_automaton(text).unwrap_err().exit_code(), 1);
    }

    fn words(max_len: usize, alphabet: &[char]) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}")))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn round_trips_preserve_values() {
        let t = PythTriple::new(2, 1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let hadamard = Matrix::from_rows(vec![
            vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)],
            vec![Complex64::new(0.0, h), Complex64::new(h, 0.0)],
        ])
        .unwrap();
        let marked = modn_mcqfa(5).unwrap().with_left_marker(hadamard).unwrap();
        let machines = vec![
            rotation(t, RotationModel::Gfa),
            rotation(t, RotationModel::Mcqfa),
            Automaton::Exact(Machine::Pfa(px(&q::ratio(3, 10)).unwrap())),
            Automaton::Approx(Machine::Mcqfa(modn_mcqfa(7).unwrap())),
            Automaton::Approx(Machine::Mcqfa(marked)),
            rotation(t, RotationModel::Gfa).to_approx(),
        ];
        for aut in machines {
            let back = parse_automaton(&serialize_automaton(&aut)).unwrap();
            assert_eq!(back, aut);
            for w in &words(20, aut.alphabet()) {
                assert_eq!(back.value(w).unwrap(), aut.value(w).unwrap());
            }
        }
    }

    #[test]
    fn two_letter_round_trip_all_short_words() {
        let text = r#"{
            "model": "gfa", "states": 2, "alphabet": ["a", "b"], "scalar": "rational",
            "transitions": {"a": [["1/2", "-3"], ["0", "2"]], "b": [["0", "1"], ["1", "0"]]},
            "left_marker": [["1", "1"], ["0", "1"]],
            "initial": ["1", "-1/3"], "final": ["2", "0.25"]
        }"#;
        let aut = parse_automaton(text).unwrap();
        let back = parse_automaton(&serialize_automaton(&aut)).unwrap();
        for w in words(12, &['a', 'b']) {
            assert_eq!(back.value(&w).unwrap(), aut.value(&w).unwrap());
        }
    }
}
