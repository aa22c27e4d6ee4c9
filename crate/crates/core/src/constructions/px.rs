use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automata::{Gfa, Pfa};
use crate::exactmath::rational as q;
use crate::exactmath::Matrix;

use super::ConstructionError;

/// Quantities of the closed form `lambda + D x^{m/2} cos(m theta + gamma)`
/// for the 3-state PFA `px(x)`. `a`, `b`, `c` solve the initial conditions
/// for `a + 2 x^{m/2} (b cos(m theta) - c sin(m theta))`, so `a = lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct PxParams {
    pub x: BigRational,
    /// `1 / (3x + 1)`
    pub lambda: BigRational,
    pub lambda_f64: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub theta: f64,
    pub gamma: f64,
}

fn check_x(x: &BigRational) -> Result<(), ConstructionError> {
    if !x.is_positive() || x > &q::ratio(1, 2) {
        return Err(ConstructionError::Domain(format!("x = {x} is not in (0, 1/2]")));
    }
    Ok(())
}

/// The unary PFA with matrix columns `(0,1,0)`, `(0,0,1)`, `(x,x,1-2x)`,
/// starting in `q_1` and accepting in `q_3`.
pub fn px(x: &BigRational) -> Result<Pfa<BigRational>, ConstructionError> {
    check_x(x)?;
    let z = BigRational::zero;
    let o = BigRational::one;
    let rest = BigRational::one() - x * BigRational::from_integer(2.into());
    let a = Matrix::from_rows(vec![
        vec![z(), z(), x.clone()],
        vec![o(), z(), x.clone()],
        vec![z(), o(), rest],
    ])?;
    let g = Gfa::new(
        vec!['a'],
        vec![a],
        Matrix::basis(3, 0),
        Matrix::basis(3, 2).transpose(),
    )?;
    Ok(Pfa::new(g, 0.0)?)
}

pub fn px_params(x: &BigRational) -> Result<PxParams, ConstructionError> {
    check_x(x)?;
    let lambda = (BigRational::from_integer(3.into()) * x + BigRational::one())
        .recip();
    let xf = q::to_f64(x);
    let lf = q::to_f64(&lambda);
    let s = 3.0 * xf + 1.0;
    let w = xf - xf * xf;
    let theta = (-xf.sqrt()).acos();
    let d = 1.0 / (s * w).sqrt();
    let gamma = (-(w / s).sqrt()).acos();
    Ok(PxParams {
        x: x.clone(),
        lambda,
        lambda_f64: lf,
        a: lf,
        b: -1.0 / (6.0 * xf + 2.0),
        c: (xf + 1.0) / ((6.0 * xf + 2.0) * w.sqrt()),
        d,
        theta,
        gamma,
    })
}

impl PxParams {
    pub fn closed(&self, m: u64) -> f64 {
        let mf = m as f64;
        self.lambda_f64
            + self.d * q::to_f64(&self.x).powf(mf / 2.0) * (mf * self.theta + self.gamma).cos()
    }
}

/// Closed-form value of `px(x)` on `a^m`, in binary64.
pub fn px_closed(x: &BigRational, m: u64) -> Result<f64, ConstructionError> {
    Ok(px_params(x)?.closed(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Automaton, Machine};
    use crate::exactmath::{validate_matrix, MatrixProperty, Scalar};

    fn values(x: &BigRational, n: usize) -> Vec<Scalar> {
        Automaton::Exact(Machine::Pfa(px(x).unwrap())).unary_values(n).unwrap()
    }

    #[test]
    fn px_half_is_stochastic_with_known_values() {
        let x = q::ratio(1, 2);
        let p = px(&x).unwrap();
        assert!(validate_matrix(MatrixProperty::Stochastic, p.as_gfa().transitions(), 0.0)
            .unwrap()
            .is_empty());
        let v = values(&x, 4);
        assert_eq!(v[0], Scalar::ExactReal(q::from_int(0)));
        assert_eq!(v[1], Scalar::ExactReal(q::from_int(0)));
        assert_eq!(v[2], Scalar::ExactReal(q::from_int(1)));
        assert_eq!(v[4], Scalar::ExactReal(q::ratio(1, 2)));
    }

    #[test]
    fn domain_is_enforced() {
        assert!(px(&q::from_int(0)).is_err());
        assert!(px(&q::ratio(3, 5)).is_err());
        assert!(px_params(&q::ratio(-1, 5)).is_err());
    }

    #[test]
    fn parameter_goldens() {
        let p = px_params(&q::ratio(1, 2)).unwrap();
        assert_eq!(p.lambda, q::ratio(2, 5));
        assert!((p.d - 1.2649111).abs() < 1e-7);
        assert!((p.gamma - 1.8925469).abs() < 1e-7);
        let p = px_params(&q::ratio(1, 4)).unwrap();
        assert!((p.theta - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        assert!(p.theta > std::f64::consts::FRAC_PI_2 && p.theta <= 0.75 * std::f64::consts::PI + 1e-15);
    }

    #[test]
    fn closed_form_goldens() {
        let x = q::ratio(1, 2);
        assert!((px_closed(&x, 0).unwrap()).abs() < 1e-9);
        assert!((px_closed(&x, 2).unwrap() - 1.0).abs() < 1e-9);
        assert!((px_closed(&x, 4).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn closed_form_tracks_exact_values() {
        for (n, d) in [(1, 10), (1, 5), (1, 4), (3, 10), (2, 5), (1, 2), (1, 3), (1, 100)] {
            let x = q::ratio(n, d);
            let p = px_params(&x).unwrap();
            for (m, v) in values(&x, 300).iter().enumerate() {
                assert!((p.closed(m as u64) - v.to_f64()).abs() <= 1e-9, "x={x} m={m}");
            }
        }
    }

    #[test]
    fn abc_reproduce_the_closed_form() {
        let p = px_params(&q::ratio(3, 10)).unwrap();
        let xf = 0.3f64;
        for m in 0..20u64 {
            let mf = m as f64;
            let alt = p.a
                + 2.0 * xf.powf(mf / 2.0) * (p.b * (mf * p.theta).cos() - p.c * (mf * p.theta).sin());
            assert!((alt - p.closed(m)).abs() < 1e-12);
        }
    }
}
