use num_complex::Complex64;
use num_rational::BigRational;

use crate::automata::{AutomatonError, Mcqfa};
use crate::exactmath::rational as q;
use crate::exactmath::{complete_to_unitary, Matrix};

use super::ConstructionError;

/// Result of [`exclusive_to_zero`]: a machine whose value on `w` is
/// `(c^2 / 2) (f(w) - lambda)^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExclusiveTransform {
    pub machine: Mcqfa<Complex64>,
    pub lambda: f64,
    /// `1 / (lambda^2 + |accept set|)`
    pub c_squared: f64,
    /// Set when the input was returned unchanged.
    pub notice: Option<String>,
}

impl ExclusiveTransform {
    /// The value the transformed machine should give a word on which the
    /// original machine has value `f`.
    pub fn predicted(&self, f: f64) -> f64 {
        if self.notice.is_some() {
            return f;
        }
        self.c_squared / 2.0 * (f - self.lambda) * (f - self.lambda)
    }
}

/// Builds an `(n^2 + 1)`-state MCQFA with a right end marker that accepts
/// with positive probability exactly the words on which `mc` does not have
/// value `lambda`. The new state is index 0 and is the only accepting one.
pub fn exclusive_to_zero(
    mc: &Mcqfa<Complex64>,
    lambda: f64,
) -> Result<ExclusiveTransform, ConstructionError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(ConstructionError::Domain(format!(
            "cutpoint {lambda} is not in (0, 1]"
        )));
    }
    if lambda == 0.0 {
        return Ok(ExclusiveTransform {
            machine: mc.clone(),
            lambda,
            c_squared: f64::NAN,
            notice: Some("exclusive cutpoint is already 0; machine returned unchanged".into()),
        });
    }
    let violations = mc.violations(crate::automata::VALIDATION_TOL)?;
    if !violations.is_empty() {
        return Err(AutomatonError::Invalid(violations).into());
    }
    let n = mc.states();
    let lift = |u: &Matrix<Complex64>| Matrix::identity(1).direct_sum(&u.conj().kron(u));
    let unitaries: Vec<Matrix<Complex64>> = mc.unitaries().iter().map(lift).collect();

    let v = mc.start_vector();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut init = vec![Complex64::new(half, 0.0)];
    init.extend(v.conj().kron(&v).entries().iter().map(|z| z * half));
    let initial = Matrix::column(init)?;

    let c_squared = 1.0 / (lambda * lambda + mc.accept().len() as f64);
    let c = c_squared.sqrt();
    let mut row = vec![Complex64::new(0.0, 0.0); n * n + 1];
    row[0] = Complex64::new(-lambda * c, 0.0);
    for &j in mc.accept() {
        row[1 + j * n + j] = Complex64::new(c, 0.0);
    }
    let w = complete_to_unitary(&row)?;
    let right = match mc.right_marker() {
        Some(r) => lift(r),
        None => Matrix::identity(n * n + 1),
    };
    let machine = Mcqfa::new(mc.alphabet().to_vec(), unitaries, initial, vec![0])?
        .with_right_marker(w.matmul(&right)?)?;
    Ok(ExclusiveTransform {
        machine,
        lambda,
        c_squared,
        notice: None,
    })
}

/// `(c^2 / 2) (f - lambda)^2` with `c^2 = 1 / (lambda^2 + accept_count)`,
/// exactly.
pub fn exclusive_value_exact(f: &BigRational, lambda: &BigRational, accept_count: usize) -> BigRational {
    let denom = q::add(&q::mul(lambda, lambda), &q::from_int(accept_count as i64));
    let diff = q::sub(f, lambda);
    q::div(&q::mul(&diff, &diff), &q::mul(&denom, &q::from_int(2))).expect("positive denominator")
}

/// A 2-state MCQFA rotating by `pi / n` per letter and accepting `q_1`, so
/// `value(a^k) = cos^2(k pi / n)`.
pub fn modn_mcqfa(n: u64) -> Result<Mcqfa<Complex64>, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::Domain(format!("n = {n} is below 2")));
    }
    let phi = std::f64::consts::PI / n as f64;
    let (s, c) = phi.sin_cos();
    let re = |x: f64| Complex64::new(x, 0.0);
    let u = Matrix::from_rows(vec![vec![re(c), re(-s)], vec![re(s), re(c)]])?;
    Ok(Mcqfa::new(vec!['a'], vec![u], Matrix::basis(2, 0), vec![0])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Automaton, Machine};
    use crate::constructions::{rotation, PythTriple, RotationModel};
    use crate::exactmath::Field;
    use crate::langsem::{bits_to_string, enum_unary, CutpointSpec};

    fn rotation_mc() -> Mcqfa<Complex64> {
        match rotation(PythTriple::new(2, 1).unwrap(), RotationModel::Mcqfa) {
            Automaton::Exact(Machine::Mcqfa(m)) => m.map_field(|z| z.to_c64()),
            _ => unreachable!(),
        }
    }

    fn approx(mc: Mcqfa<Complex64>) -> Automaton {
        Automaton::Approx(Machine::Mcqfa(mc))
    }

    #[test]
    fn exclusive_goldens() {
        let half = q::ratio(1, 2);
        assert_eq!(exclusive_value_exact(&q::from_int(1), &half, 1), q::ratio(1, 10));
        assert_eq!(exclusive_value_exact(&q::ratio(9, 25), &half, 1), q::ratio(49, 6250));
        assert_eq!(exclusive_value_exact(&half, &half, 1), q::from_int(0));

        let t = exclusive_to_zero(&rotation_mc(), 0.5).unwrap();
        assert_eq!(t.machine.states(), 5);
        let vals = approx(t.machine).unary_values(1).unwrap();
        assert!((vals[0].to_f64() - 0.1).abs() < 1e-12);
        assert!((vals[1].to_f64() - 49.0 / 6250.0).abs() < 1e-12);
    }

    #[test]
    fn transform_matches_formula() {
        let mc = rotation_mc();
        let orig = approx(mc.clone()).unary_values(60).unwrap();
        for lambda in [0.25, 0.5, 0.75, 1.0] {
            let t = exclusive_to_zero(&mc, lambda).unwrap();
            assert!(approx(t.machine.clone()).validate(0.0).is_empty());
            let vals = approx(t.machine.clone()).unary_values(60).unwrap();
            for (f, v) in orig.iter().zip(&vals) {
                assert!((t.predicted(f.to_f64()) - v.to_f64()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn transform_keeps_markers() {
        let mc = rotation_mc();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = Matrix::from_rows(vec![
            vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            vec![Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        ])
        .unwrap();
        let marked = mc.with_left_marker(h.clone()).unwrap().with_right_marker(h).unwrap();
        let orig = approx(marked.clone()).unary_values(20).unwrap();
        let t = exclusive_to_zero(&marked, 0.3).unwrap();
        let vals = approx(t.machine.clone()).unary_values(20).unwrap();
        for (f, v) in orig.iter().zip(&vals) {
            assert!((t.predicted(f.to_f64()) - v.to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_cutpoint_is_identity() {
        let mc = rotation_mc();
        let t = exclusive_to_zero(&mc, 0.0).unwrap();
        assert!(t.notice.is_some());
        assert_eq!(t.machine, mc);
        assert!(exclusive_to_zero(&mc, 1.5).is_err());
    }

    #[test]
    fn modn_goldens() {
        let v = approx(modn_mcqfa(2).unwrap()).unary_values(1).unwrap();
        assert!(v[1].to_f64().abs() < 1e-12);
        let v = approx(modn_mcqfa(4).unwrap()).unary_values(4).unwrap();
        assert!((v[4].to_f64() - 1.0).abs() < 1e-12);
        let bits = enum_unary(
            &approx(modn_mcqfa(5).unwrap()),
            &CutpointSpec::inclusive(q::from_int(1)),
            10,
        )
        .unwrap();
        assert_eq!(bits_to_string(&bits), "10000100001");
        assert!(modn_mcqfa(1).is_err());
    }
}
