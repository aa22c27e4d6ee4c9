use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::exactmath::primes::small_prime_factors;
use crate::exactmath::rational as q;
use crate::exactmath::DEFAULT_TRIAL_BOUND;
use crate::exactmath::{DynMatrix, Field, GaussianRational, Matrix, RealField, Scalar};

use super::{symbol_indices, AutomatonError, Gfa, Mcqfa, ModelViolation, Pfa, Qfa, VALIDATION_TOL};

/// One of the four models over a fixed pair of real/complex fields.
#[derive(Clone, Debug, PartialEq)]
pub enum Machine<R, C> {
    Gfa(Gfa<R>),
    Pfa(Pfa<R>),
    Mcqfa(Mcqfa<C>),
    Qfa(Qfa<C>),
}

pub type ExactMachine = Machine<BigRational, GaussianRational>;
pub type ApproxMachine = Machine<f64, Complex64>;

/// A machine state after some prefix of the input.
#[derive(Clone, Debug, PartialEq)]
pub enum RunState {
    Vector(DynMatrix),
    Density(DynMatrix),
}

impl RunState {
    pub fn matrix(&self) -> &DynMatrix {
        match self {
            RunState::Vector(m) | RunState::Density(m) => m,
        }
    }
}

fn drive<T: Field, V>(
    start: Matrix<T>,
    symbols: &[usize],
    step: impl Fn(&Matrix<T>, usize) -> Matrix<T>,
    accept: impl Fn(&Matrix<T>) -> V,
) -> V {
    let end = symbols.iter().fold(start, |v, &s| step(&v, s));
    accept(&end)
}

fn drive_unary<T: Field, V>(
    start: Matrix<T>,
    n: usize,
    step: impl Fn(&Matrix<T>, usize) -> Matrix<T>,
    accept: impl Fn(&Matrix<T>) -> V,
) -> Vec<V> {
    let mut out = Vec::with_capacity(n + 1);
    let mut v = start;
    out.push(accept(&v));
    for _ in 0..n {
        v = step(&v, 0);
        out.push(accept(&v));
    }
    out
}

fn trace_states<T: Field>(
    start: Matrix<T>,
    symbols: &[usize],
    step: impl Fn(&Matrix<T>, usize) -> Matrix<T>,
    wrap: impl Fn(DynMatrix) -> RunState,
) -> Vec<RunState> {
    let mut out = Vec::with_capacity(symbols.len() + 1);
    let mut v = start;
    out.push(wrap(T::wrap_matrix(v.clone())));
    for &s in symbols {
        v = step(&v, s);
        out.push(wrap(T::wrap_matrix(v.clone())));
    }
    out
}

impl<R: RealField, C: Field<Real = R>> Machine<R, C> {
    pub fn model_name(&self) -> &'static str {
        match self {
            Machine::Gfa(_) => "gfa",
            Machine::Pfa(_) => "pfa",
            Machine::Mcqfa(_) => "mcqfa",
            Machine::Qfa(_) => "qfa",
        }
    }

    pub fn alphabet(&self) -> &[char] {
        match self {
            Machine::Gfa(g) => g.alphabet(),
            Machine::Pfa(p) => p.as_gfa().alphabet(),
            Machine::Mcqfa(m) => m.alphabet(),
            Machine::Qfa(m) => m.alphabet(),
        }
    }

    pub fn states(&self) -> usize {
        match self {
            Machine::Gfa(g) => g.states(),
            Machine::Pfa(p) => p.as_gfa().states(),
            Machine::Mcqfa(m) => m.states(),
            Machine::Qfa(m) => m.states(),
        }
    }

    fn gfa(&self) -> Option<&Gfa<R>> {
        match self {
            Machine::Gfa(g) => Some(g),
            Machine::Pfa(p) => Some(p.as_gfa()),
            _ => None,
        }
    }

    pub fn value(&self, word: &str) -> Result<R, AutomatonError> {
        let symbols = symbol_indices(self.alphabet(), word)?;
        Ok(self.value_of_symbols(&symbols))
    }

    pub fn value_of_symbols(&self, symbols: &[usize]) -> R {
        if let Some(g) = self.gfa() {
            return drive(g.start_vector(), symbols, |v, s| g.step_vector(v, s), |v| g.accept_vector(v));
        }
        match self {
            Machine::Mcqfa(m) => {
                drive(m.start_vector(), symbols, |v, s| m.step_vector(v, s), |v| m.accept_vector(v))
            }
            Machine::Qfa(m) => {
                drive(m.start_density(), symbols, |v, s| m.step_density(v, s), |v| m.accept_density(v))
            }
            _ => unreachable!(),
        }
    }

    /// Values on `a^0, ..., a^n` for a unary machine.
    pub fn unary_values(&self, n: usize) -> Result<Vec<R>, AutomatonError> {
        let k = self.alphabet().len();
        if k != 1 {
            return Err(AutomatonError::NotUnary(k));
        }
        Ok(match self {
            Machine::Gfa(g) => drive_unary(g.start_vector(), n, |v, s| g.step_vector(v, s), |v| g.accept_vector(v)),
            Machine::Pfa(p) => {
                let g = p.as_gfa();
                drive_unary(g.start_vector(), n, |v, s| g.step_vector(v, s), |v| g.accept_vector(v))
            }
            Machine::Mcqfa(m) => {
                drive_unary(m.start_vector(), n, |v, s| m.step_vector(v, s), |v| m.accept_vector(v))
            }
            Machine::Qfa(m) => {
                drive_unary(m.start_density(), n, |v, s| m.step_density(v, s), |v| m.accept_density(v))
            }
        })
    }

    /// The initial object (after the left marker) followed by the state
    /// after each symbol.
    pub fn trace(&self, word: &str) -> Result<Vec<RunState>, AutomatonError> {
        let symbols = symbol_indices(self.alphabet(), word)?;
        Ok(match self {
            Machine::Gfa(_) | Machine::Pfa(_) => {
                let g = self.gfa().expect("real model");
                trace_states(g.start_vector(), &symbols, |v, s| g.step_vector(v, s), RunState::Vector)
            }
            Machine::Mcqfa(m) => {
                trace_states(m.start_vector(), &symbols, |v, s| m.step_vector(v, s), RunState::Vector)
            }
            Machine::Qfa(m) => {
                trace_states(m.start_density(), &symbols, |v, s| m.step_density(v, s), RunState::Density)
            }
        })
    }

    pub fn violations(&self, tol: f64) -> Result<Vec<ModelViolation>, AutomatonError> {
        match self {
            Machine::Gfa(_) => Ok(Vec::new()),
            Machine::Pfa(p) => p.violations(tol),
            Machine::Mcqfa(m) => m.violations(tol),
            Machine::Qfa(m) => m.violations(tol),
        }
    }
}

/// Values of an exact unary GFA on `a^0..a^n`, computed over the integers:
/// the vector is kept as an integer vector over a known denominator so no
/// gcd is taken until each value is emitted.
fn exact_gfa_unary_values(g: &Gfa<BigRational>, n: usize) -> Vec<BigRational> {
    let a = &g.transitions()[0];
    let dim = g.states();
    let d_a = q::common_denominator(a.entries());
    let k: Vec<BigInt> = a
        .entries()
        .iter()
        .map(|v| v.numer() * (&d_a / v.denom()))
        .collect();
    let start = g.start_vector();
    let d_v = q::common_denominator(start.entries());
    let mut u: Vec<BigInt> = start
        .entries()
        .iter()
        .map(|v| v.numer() * (&d_v / v.denom()))
        .collect();
    let f = g.effective_final();
    let d_f = q::common_denominator(f.entries());
    let fi: Vec<BigInt> = f
        .entries()
        .iter()
        .map(|v| v.numer() * (&d_f / v.denom()))
        .collect();
    // denominators are d_f d_v d_a^m
    let primes = small_prime_factors(&(&d_a * &d_v * &d_f), DEFAULT_TRIAL_BOUND);
    let mut denom = d_f * d_v;
    let mut out = Vec::with_capacity(n + 1);
    let emit = |u: &[BigInt], denom: &BigInt| {
        let num: BigInt = fi.iter().zip(u).map(|(x, y)| x * y).sum();
        match &primes {
            Some(ps) => q::reduce_over_primes(num, denom.clone(), ps),
            None => q::reduce(num, denom.clone()),
        }
    };
    out.push(emit(&u, &denom));
    for _ in 0..n {
        u = (0..dim)
            .map(|i| (0..dim).map(|j| &k[i * dim + j] * &u[j]).sum())
            .collect();
        denom *= &d_a;
        out.push(emit(&u, &denom));
    }
    out
}

/// An automaton over exact (rational / Gaussian rational) or approximate
/// (binary64) scalars.
#[derive(Clone, Debug, PartialEq)]
pub enum Automaton {
    Exact(ExactMachine),
    Approx(ApproxMachine),
}

impl From<ExactMachine> for Automaton {
    fn from(m: ExactMachine) -> Self {
        Automaton::Exact(m)
    }
}

impl From<ApproxMachine> for Automaton {
    fn from(m: ApproxMachine) -> Self {
        Automaton::Approx(m)
    }
}

impl Automaton {
    pub fn is_exact(&self) -> bool {
        matches!(self, Automaton::Exact(_))
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            Automaton::Exact(m) => m.model_name(),
            Automaton::Approx(m) => m.model_name(),
        }
    }

    pub fn alphabet(&self) -> &[char] {
        match self {
            Automaton::Exact(m) => m.alphabet(),
            Automaton::Approx(m) => m.alphabet(),
        }
    }

    pub fn states(&self) -> usize {
        match self {
            Automaton::Exact(m) => m.states(),
            Automaton::Approx(m) => m.states(),
        }
    }

    pub fn is_unary(&self) -> bool {
        self.alphabet().len() == 1
    }

    /// The accepting value (probability for PFA/MCQFA/QFA) of `word`.
    pub fn value(&self, word: &str) -> Result<Scalar, AutomatonError> {
        Ok(match self {
            Automaton::Exact(m) => Scalar::ExactReal(m.value(word)?),
            Automaton::Approx(m) => Scalar::ApproxReal(m.value(word)?),
        })
    }

    /// `value(a^m)` for `m = 0..=n` on a unary automaton.
    pub fn unary_values(&self, n: usize) -> Result<Vec<Scalar>, AutomatonError> {
        Ok(match self {
            Automaton::Exact(m) => {
                let vals = match m {
                    Machine::Gfa(g) if g.alphabet().len() == 1 => exact_gfa_unary_values(g, n),
                    Machine::Pfa(p) if p.as_gfa().alphabet().len() == 1 => {
                        exact_gfa_unary_values(p.as_gfa(), n)
                    }
                    _ => m.unary_values(n)?,
                };
                vals.into_iter().map(Scalar::ExactReal).collect()
            }
            Automaton::Approx(m) => m.unary_values(n)?.into_iter().map(Scalar::ApproxReal).collect(),
        })
    }

    /// The unary word of length `m`.
    pub fn unary_word(&self, m: usize) -> Result<String, AutomatonError> {
        match self.alphabet() {
            [c] => Ok(std::iter::repeat(*c).take(m).collect()),
            other => Err(AutomatonError::NotUnary(other.len())),
        }
    }

    pub fn trace_run(&self, word: &str) -> Result<Vec<RunState>, AutomatonError> {
        match self {
            Automaton::Exact(m) => m.trace(word),
            Automaton::Approx(m) => m.trace(word),
        }
    }

    /// Structural violations. Exact machines are checked exactly when
    /// `tol = 0`; approximate machines fall back to [`VALIDATION_TOL`] then.
    pub fn validate(&self, tol: f64) -> Vec<ModelViolation> {
        let result = match self {
            Automaton::Exact(m) => m.violations(tol),
            Automaton::Approx(m) => m.violations(if tol == 0.0 { VALIDATION_TOL } else { tol }),
        };
        result.unwrap_or_else(|e| vec![ModelViolation::new("automaton", e.to_string())])
    }

    /// Rounds every entry to binary64.
    pub fn to_approx(&self) -> Automaton {
        match self {
            Automaton::Approx(_) => self.clone(),
            Automaton::Exact(m) => Automaton::Approx(match m {
                Machine::Gfa(g) => Machine::Gfa(g.map_field(q::to_f64)),
                Machine::Pfa(p) => Machine::Pfa(Pfa::new_unchecked(p.as_gfa().map_field(q::to_f64))),
                Machine::Mcqfa(mc) => Machine::Mcqfa(mc.map_field(|z| z.to_c64())),
                Machine::Qfa(qf) => Machine::Qfa(qf.map_field(|z| z.to_c64())),
            }),
        }
    }
}
