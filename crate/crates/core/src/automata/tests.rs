use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::exactmath::rational as q;
use crate::exactmath::{Field, GaussianRational, Matrix, Scalar};

fn rq(rows: &[&[(i64, i64)]]) -> Matrix<BigRational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| q::ratio(n, d)).collect())
            .collect(),
    )
    .unwrap()
}

fn gq(m: &Matrix<BigRational>) -> Matrix<GaussianRational> {
    m.map(|v| GaussianRational::real(v.clone()))
}

fn px_half() -> Automaton {
    let a = rq(&[
        &[(0, 1), (0, 1), (1, 2)],
        &[(1, 1), (0, 1), (1, 2)],
        &[(0, 1), (1, 1), (0, 1)],
    ]);
    let g = Gfa::new(
        vec!['a'],
        vec![a],
        Matrix::basis(3, 0),
        Matrix::basis(3, 2).transpose(),
    )
    .unwrap();
    Automaton::Exact(Machine::Pfa(Pfa::new(g, 0.0).unwrap()))
}

fn rotation() -> Matrix<BigRational> {
    rq(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]])
}

fn rotation_gfa() -> Automaton {
    let g = Gfa::new(vec!['a'], vec![rotation()], Matrix::basis(2, 0), Matrix::basis(2, 0).transpose()).unwrap();
    Automaton::Exact(Machine::Gfa(g))
}

fn rotation_mcqfa() -> Mcqfa<GaussianRational> {
    Mcqfa::new(vec!['a'], vec![gq(&rotation())], Matrix::basis(2, 0), vec![0]).unwrap()
}

fn exact(s: Scalar) -> BigRational {
    s.as_exact_real().unwrap()
}

#[test]
fn px_half_values() {
    let p = px_half();
    assert_eq!(exact(p.value("aa").unwrap()), q::from_int(1));
    assert_eq!(exact(p.value("").unwrap()), q::from_int(0));
    assert_eq!(exact(p.value("aaaa").unwrap()), q::ratio(1, 2));
    assert!(matches!(p.value("ab"), Err(AutomatonError::UnknownSymbol('b'))));
}

#[test]
fn rotation_values() {
    assert_eq!(exact(rotation_gfa().value("").unwrap()), q::from_int(1));
    assert_eq!(exact(rotation_gfa().value("aa").unwrap()), q::ratio(-7, 25));
    let m = Automaton::Exact(Machine::Mcqfa(rotation_mcqfa()));
    assert_eq!(exact(m.value("a").unwrap()), q::ratio(9, 25));
}

#[test]
fn trace_of_px() {
    let states = px_half().trace_run("aa").unwrap();
    assert_eq!(states.len(), 3);
    for (k, s) in states.iter().enumerate() {
        let RunState::Vector(dm) = s else { panic!("vector expected") };
        let expected: Matrix<BigRational> = Matrix::basis(3, k);
        assert_eq!(dm, &crate::exactmath::DynMatrix::Rational(expected));
    }
    assert_eq!(px_half().trace_run("").unwrap().len(), 1);
}

fn reset_qfa(start: usize) -> Qfa<GaussianRational> {
    let e1 = gq(&rq(&[&[(1, 1), (0, 1)], &[(0, 1), (0, 1)]]));
    let e2 = gq(&rq(&[&[(0, 1), (1, 1)], &[(0, 1), (0, 1)]]));
    Qfa::with_basis_start(vec!['a'], vec![vec![e1, e2]], 2, start, vec![0]).unwrap()
}

#[test]
fn reset_channel_trace() {
    let aut = Automaton::Exact(Machine::Qfa(reset_qfa(1)));
    assert!(aut.validate(0.0).is_empty());
    let states = aut.trace_run("a").unwrap();
    let mut q1: Matrix<GaussianRational> = Matrix::zeros(2, 2);
    q1.set(0, 0, GaussianRational::one_elem());
    let mut q2: Matrix<GaussianRational> = Matrix::zeros(2, 2);
    q2.set(1, 1, GaussianRational::one_elem());
    assert_eq!(states[0], RunState::Density(crate::exactmath::DynMatrix::ComplexRational(q2)));
    assert_eq!(states[1], RunState::Density(crate::exactmath::DynMatrix::ComplexRational(q1)));
    assert_eq!(exact(aut.value("a").unwrap()), q::from_int(1));
    assert_eq!(exact(aut.value("").unwrap()), q::from_int(0));
}

#[test]
fn validation_reports() {
    let bad = rq(&[&[(1, 2), (0, 1)], &[(2, 5), (1, 1)]]);
    let g = Gfa::new(vec!['a'], vec![bad], Matrix::basis(2, 0), Matrix::basis(2, 0).transpose()).unwrap();
    let err = Pfa::new(g.clone(), 0.0).unwrap_err();
    let AutomatonError::Invalid(list) = err else { panic!() };
    assert_eq!(list.len(), 1);
    assert!(list[0].to_string().contains("9/10"));
    let unchecked = Automaton::Exact(Machine::Pfa(Pfa::new_unchecked(g)));
    assert_eq!(unchecked.validate(0.0).len(), 1);

    let shear = gq(&rq(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]));
    let m = Mcqfa::new(vec!['a'], vec![shear], Matrix::basis(2, 0), vec![0]).unwrap();
    assert!(!Automaton::Exact(Machine::Mcqfa(m)).validate(0.0).is_empty());
    assert!(px_half().validate(0.0).is_empty());
}

#[test]
fn final_vector_rules() {
    let a = rq(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
    let f = rq(&[&[(1, 2), (0, 1)]]);
    let g = Gfa::new(vec!['a'], vec![a.clone()], Matrix::basis(2, 0), f.clone()).unwrap();
    assert!(Pfa::new(g, 0.0).is_err());
    let g = Gfa::new(vec!['a'], vec![a.clone()], Matrix::basis(2, 0), f)
        .unwrap()
        .with_right_marker(a)
        .unwrap();
    assert!(Pfa::new(g, 0.0).is_ok());
}

#[test]
fn malformed_inputs() {
    let a = rotation();
    assert!(Gfa::new(vec!['a', 'a'], vec![a.clone(), a.clone()], Matrix::basis(2, 0), Matrix::basis(2, 0).transpose()).is_err());
    assert!(Gfa::new(vec!['a'], vec![a.clone()], Matrix::basis(3, 0), Matrix::basis(3, 0).transpose()).is_err());
    assert!(Mcqfa::new(vec!['a'], vec![gq(&a)], Matrix::basis(2, 0), vec![2]).is_err());
}

#[test]
fn markers_apply_in_order() {
    // Left marker swaps, so a GFA starting in q1 effectively starts in q2.
    let swap = rq(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
    let id = rq(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
    let g = Gfa::new(vec!['a'], vec![id], Matrix::basis(2, 0), Matrix::basis(2, 0).transpose())
        .unwrap()
        .with_left_marker(swap.clone())
        .unwrap();
    let aut = Automaton::Exact(Machine::Gfa(g.clone()));
    assert_eq!(exact(aut.value("a").unwrap()), q::from_int(0));
    let g = g.with_right_marker(swap).unwrap();
    let aut = Automaton::Exact(Machine::Gfa(g));
    assert_eq!(exact(aut.value("a").unwrap()), q::from_int(1));
}

#[test]
fn tensor_square_matches_mcqfa_value() {
    let m = rotation_mcqfa();
    let u = &m.unitaries()[0];
    let big = u.conj().kron(u);
    let v0 = m.initial();
    let mut w = v0.conj().kron(v0);
    let aut = Automaton::Exact(Machine::Mcqfa(m.clone()));
    let values = aut.unary_values(50).unwrap();
    for (k, value) in values.iter().enumerate() {
        if k > 0 {
            w = big.matmul(&w).unwrap();
        }
        let n = m.states();
        let sum = m.accept().iter().fold(GaussianRational::zero_elem(), |acc, &j| acc.add_ref(w.get(j * n + j, 0)));
        assert!(sum.is_real());
        assert_eq!(Scalar::ExactReal(sum.re), *value);
    }
}

#[test]
fn integer_fast_path_matches_stepping() {
    let aut = px_half();
    let fast = aut.unary_values(40).unwrap();
    for (m, v) in fast.iter().enumerate() {
        let slow = aut.value(&"a".repeat(m)).unwrap();
        assert_eq!(*v, slow);
        if let (Some(a), Some(b)) = (v.as_exact_real(), slow.as_exact_real()) {
            assert_eq!((a.numer(), a.denom()), (b.numer(), b.denom()));
        }
    }
}

#[test]
fn approximate_copy_agrees() {
    let aut = px_half();
    let approx = aut.to_approx();
    for m in 0..30 {
        let w = "a".repeat(m);
        let e = aut.value(&w).unwrap().to_f64();
        let f = approx.value(&w).unwrap().to_f64();
        assert!((e - f).abs() < 1e-12);
    }
    assert!(approx.validate(0.0).is_empty());
}

fn arb_stochastic(n: usize) -> impl Strategy<Value = Matrix<BigRational>> {
    prop::collection::vec(prop::collection::vec(0i64..5, n), n).prop_map(move |cols| {
        let mut m = Matrix::zeros(n, n);
        for (j, col) in cols.iter().enumerate() {
            let total: i64 = col.iter().sum::<i64>();
            for (i, &w) in col.iter().enumerate() {
                let v = if total == 0 {
                    if i == j { q::from_int(1) } else { q::from_int(0) }
                } else {
                    q::ratio(w, total)
                };
                m.set(i, j, v);
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfa_values_are_probabilities(
        a in arb_stochastic(3), b in arb_stochastic(3),
        f in prop::collection::vec(0i64..2, 3),
        word in "[ab]{0,12}",
    ) {
        let fr = Matrix::row(f.iter().map(|&x| q::from_int(x)).collect()).unwrap();
        let g = Gfa::new(vec!['a', 'b'], vec![a, b], Matrix::basis(3, 0), fr).unwrap();
        let pfa = Pfa::new(g.clone(), 0.0).unwrap();
        let as_pfa = Automaton::Exact(Machine::Pfa(pfa));
        let as_gfa = Automaton::Exact(Machine::Gfa(g));
        let v = exact(as_pfa.value(&word).unwrap());
        prop_assert!(v >= q::from_int(0) && v <= q::from_int(1));
        prop_assert_eq!(as_gfa.value(&word).unwrap(), Scalar::ExactReal(v));
        for s in as_pfa.trace_run(&word).unwrap() {
            let crate::exactmath::DynMatrix::Rational(m) = s.matrix() else { panic!() };
            let sum = m.entries().iter().fold(q::from_int(0), |acc, x| q::add(&acc, x));
            prop_assert_eq!(sum, q::from_int(1));
        }
    }

    #[test]
    fn mcqfa_states_stay_normalized(word in "a{0,30}") {
        let aut = Automaton::Exact(Machine::Mcqfa(rotation_mcqfa()));
        for s in aut.trace_run(&word).unwrap() {
            let crate::exactmath::DynMatrix::ComplexRational(m) = s.matrix() else { panic!() };
            prop_assert_eq!(m.frobenius_sqr(), q::from_int(1));
        }
        let v = exact(aut.value(&word).unwrap());
        prop_assert!(v >= q::from_int(0) && v <= q::from_int(1));
    }

    #[test]
    fn qfa_densities_keep_trace_one(word in "a{0,10}", start in 0usize..2) {
        let aut = Automaton::Exact(Machine::Qfa(reset_qfa(start)));
        for s in aut.trace_run(&word).unwrap() {
            let crate::exactmath::DynMatrix::ComplexRational(m) = s.matrix() else { panic!() };
            let list = crate::exactmath::validate_matrix(crate::exactmath::MatrixProperty::Density, std::slice::from_ref(m), 0.0).unwrap();
            prop_assert!(list.is_empty());
        }
    }
}
