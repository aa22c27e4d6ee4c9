use cutpoint::analysis::{aperiodicity_check, chomsky_classify, decimate, px_separation};
use cutpoint::automata::{Automaton, Gfa, Machine, Pfa};
use cutpoint::constructions::*;
use cutpoint::exactmath::rational as q;
use cutpoint::exactmath::{BigRational, Matrix};
use cutpoint::langsem::{
    desc_member, named_member, Coefficients, Relation, SolutionDescriptor, Threshold,
};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    q::ratio(n, d)
}

fn arb_prob() -> impl Strategy<Value = BigRational> {
    (0i64..=12, 1i64..=12).prop_map(|(n, d)| r(n.min(d), d))
}

fn column(p: BigRational) -> Vec<BigRational> {
    vec![p.clone(), q::sub(&q::from_int(1), &p)]
}

fn stochastic(p: BigRational, s: BigRational) -> Matrix<BigRational> {
    let (c0, c1) = (column(p), column(s));
    Matrix::from_rows(vec![vec![c0[0].clone(), c1[0].clone()], vec![c0[1].clone(), c1[1].clone()]]).unwrap()
}

fn arb_2pfa() -> impl Strategy<Value = Pfa<BigRational>> {
    (
        arb_prob(),
        arb_prob(),
        arb_prob(),
        (arb_prob(), arb_prob()),
        proptest::option::of((arb_prob(), arb_prob())),
        proptest::option::of((arb_prob(), arb_prob())),
    )
        .prop_map(|(p, s, v, (f1, f2), left, right)| {
            let bit = |f: BigRational| if f >= r(1, 2) { q::from_int(1) } else { q::from_int(0) };
            let (f1, f2) = if right.is_some() { (f1, f2) } else { (bit(f1), bit(f2)) };
            let mut g = Gfa::new(
                vec!['a'],
                vec![stochastic(p, s)],
                Matrix::column(column(v)).unwrap(),
                Matrix::row(vec![f1, f2]).unwrap(),
            )
            .unwrap();
            if let Some((a, b)) = left {
                g = g.with_left_marker(stochastic(a, b)).unwrap();
            }
            if let Some((a, b)) = right {
                g = g.with_right_marker(stochastic(a, b)).unwrap();
            }
            Pfa::new(g, 0.0).unwrap()
        })
}

fn words(alphabet: &[char], max_len: usize) -> Vec<String> {
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_state_names_agree_with_values(p in arb_2pfa(), lam in arb_prob()) {
        let lam = if lam == q::from_int(1) { r(1, 2) } else { lam };
        let res = classify_2state_pfa(&p, &lam).unwrap();
        let vals = Automaton::Exact(Machine::Pfa(p)).unary_values(80).unwrap();
        for (m, v) in vals.iter().enumerate() {
            prop_assert_eq!(named_member(&res.language, m as u64), v.as_exact_real().unwrap() > lam);
        }
    }

    #[test]
    fn one_state_round_trip_three_letters(
        nums in proptest::collection::vec((-4i64..=4, 1i64..=4), 3),
        lam in (-2i64..=2, 1i64..=3),
        less in any::<bool>(),
        incl in any::<bool>(),
    ) {
        let s = OneStateGfaSpec::new(
            vec!['a', 'b', 'c'],
            nums.iter().map(|&(n, d)| r(n, d)).collect(),
            r(lam.0, lam.1),
            if less { Direction::Less } else { Direction::Greater },
            if incl { OneStateMode::Inclusive } else { OneStateMode::Strict },
        ).unwrap();
        let d = decompose_1state(&s).unwrap();
        let back = decompose_1state(&build_1state(&d).unwrap()).unwrap();
        for w in words(&['a', 'b', 'c'], 4) {
            let expected = s.accepts(&w).unwrap();
            prop_assert_eq!(desc_member(&d, &w).unwrap(), expected);
            prop_assert_eq!(desc_member(&back, &w).unwrap(), expected);
        }
    }

    #[test]
    fn chomsky_invariances(
        bases in proptest::collection::vec((1i64..=6, 1i64..=6), 1..4),
        ones in 0usize..3,
        power in 1u32..4,
    ) {
        let mut bs: Vec<BigRational> = bases.iter().map(|&(n, d)| r(n, d)).collect();
        bs.extend(std::iter::repeat(q::from_int(1)).take(ones));
        let letters: Vec<char> = "abcdefg".chars().take(bs.len()).collect();
        let d = SolutionDescriptor::new(
            letters.clone(),
            Coefficients::ExactLog(bs.clone()),
            Threshold::ExactLog(r(3, 2)),
            Relation::Less,
        ).unwrap();
        let verdict = chomsky_classify(&d).unwrap();
        prop_assert_eq!(chomsky_classify(&decimate(&d)).unwrap(), verdict);
        let scaled = SolutionDescriptor::new(
            letters,
            Coefficients::ExactLog(bs.iter().map(|b| q::pow(b, power)).collect()),
            Threshold::ExactLog(q::pow(&r(3, 2), power)),
            Relation::Less,
        ).unwrap();
        prop_assert_eq!(chomsky_classify(&scaled).unwrap(), verdict);
    }

    #[test]
    fn px_separation_verifies_near_candidate(a in 1i64..=20, b in 1i64..=20, d in 2i64..=40) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assume!(lo < hi && 2 * hi <= d);
        let s = px_separation(&r(lo, d), &r(hi, d)).unwrap();
        prop_assert!(s.at_candidate_or_next());
        prop_assert_ne!(s.member_x1, s.member_x2);
    }
}

#[test]
fn rotations_are_aperiodic() {
    for (m, n) in [(2, 1), (3, 2), (4, 1), (4, 3), (5, 2), (6, 1)] {
        let aut = rotation(PythTriple::new(m, n).unwrap(), RotationModel::Gfa);
        assert!(aperiodicity_check(&aut, 400).unwrap(), "({m}, {n})");
    }
}

#[test]
fn unary_inclusive_specs_have_few_shapes() {
    use cutpoint::langsem::UnaryRegularName::*;
    for an in -4i64..=4 {
        for ad in 1i64..=3 {
            for ln in -4i64..=4 {
                let s = OneStateGfaSpec::new(vec!['a'], vec![r(an, ad)], r(ln, 2), Direction::Less, OneStateMode::Inclusive).unwrap();
                let d = decompose_1state(&s).unwrap();
                let bits: Vec<bool> = (0..=40).map(|m| desc_member(&d, &"a".repeat(m)).unwrap()).collect();
                let mut names = vec![Empty, All, APlus, Even, CoEven];
                names.extend((0..=40).map(SingletonLength));
                assert!(
                    names.iter().any(|nm| bits.iter().enumerate().all(|(m, b)| named_member(nm, m as u64) == *b)),
                    "{s}"
                );
            }
        }
    }
}
