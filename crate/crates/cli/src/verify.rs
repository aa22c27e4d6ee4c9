//! Desk-scale checks of the constructions and decision procedures, grouped
//! into suites. Random inputs come from fixed seeds, so every run checks the
//! same cases.

use std::fmt;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use cutpoint::analysis::{
    aperiodicity_check, chomsky_classify, chomsky_classify_gfa, decimate, density_report, px_separation, separate,
    ChomskyVerdict,
};
use cutpoint::automata::{Automaton, Gfa, Machine, Pfa};
use cutpoint::constructions::{
    build_1state, classify_2state_pfa, decompose_1state, exclusive_to_zero, exclusive_value_exact, modn_mcqfa, px,
    px_closed, rotation, rotation_cosines, Direction, OneStateGfaSpec, OneStateMode, PythTriple, RotationModel,
};
use cutpoint::exactmath::rational as q;
use cutpoint::exactmath::{BigRational, Field, Matrix, Scalar};
use cutpoint::langsem::{
    cut_member, desc_member, enum_unary, named_member, Coefficients, CutpointSpec, IndicatorDescriptor,
    LanguageDescriptor, LanguageForm, ParityDescriptor, Relation, SolutionDescriptor, Threshold, UnaryRegularName,
};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Rotation,
    Px,
    Onestate,
    Mcqfa,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Rotation => "rotation",
            Suite::Px => "px",
            Suite::Onestate => "onestate",
            Suite::Mcqfa => "mcqfa",
        })
    }
}

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: u8,
    suite: Suite,
    title: &'static str,
    limit: Duration,
    check: Check,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 13] = [
    Criterion { id: 1, suite: Suite::Px, title: "px initial values 0, 0, 1", limit: secs(1), check: c1_px_initial },
    Criterion { id: 2, suite: Suite::Px, title: "px closed form vs exact powers, m <= 300", limit: secs(5), check: c2_px_closed_form },
    Criterion { id: 3, suite: Suite::Rotation, title: "Chebyshev cosines vs matrix powers, k <= 10^4", limit: secs(10), check: c3_chebyshev },
    Criterion { id: 4, suite: Suite::Rotation, title: "rotation (2,1) aperiodic, k <= 2000", limit: secs(5), check: c4_aperiodic },
    Criterion { id: 5, suite: Suite::Rotation, title: "100 bins of [-1,1] hit, k <= 50000", limit: secs(30), check: c5_density },
    Criterion { id: 6, suite: Suite::Rotation, title: "cutpoints 1/10 vs 1/5 separate at m = 12", limit: secs(1), check: c6_rotation_separation },
    Criterion { id: 7, suite: Suite::Px, title: "px separation witnesses", limit: secs(30), check: c7_px_separation },
    Criterion { id: 8, suite: Suite::Px, title: "2-state PFA names agree with values, m <= 200", limit: secs(60), check: c8_two_state },
    Criterion { id: 9, suite: Suite::Onestate, title: "1-state decompose/build round trips, |w| <= 8", limit: secs(120), check: c9_one_state },
    Criterion { id: 10, suite: Suite::Onestate, title: "unary inclusive 1-state shapes, m <= 64", limit: secs(10), check: c10_unary_inclusive },
    Criterion { id: 11, suite: Suite::Mcqfa, title: "exclusive-to-zero transform on rotation (2,1)", limit: secs(30), check: c11_exclusive },
    Criterion { id: 12, suite: Suite::Onestate, title: "regular / context-free verdicts and invariances", limit: secs(5), check: c12_chomsky },
    Criterion { id: 13, suite: Suite::Mcqfa, title: "mod-n machines accept multiples of n", limit: secs(5), check: c13_modn },
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub suite: Suite,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} [{}] {} ({:.2}s, limit {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.suite,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        CRITERIA
            .iter()
            .filter(|c| self == Suite::All || c.suite == self)
            .map(|c| c.id)
            .collect()
    }
}

pub fn run_criterion(id: u8) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let outcome = (c.check)();
    let elapsed = start.elapsed();
    let (passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let in_time = elapsed <= c.limit;
    if !in_time {
        detail.push_str("; time limit exceeded");
    }
    Some(CriterionResult {
        id: c.id,
        suite: c.suite,
        title: c.title,
        passed: passed && in_time,
        elapsed,
        limit: c.limit,
        detail,
    })
}

/// Runs every criterion of `suite` in order, handing each result to
/// `report` as soon as it is known.
pub fn verify_with(suite: Suite, mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    suite
        .criteria()
        .into_iter()
        .filter_map(|id| {
            let r = run_criterion(id)?;
            report(&r);
            Some(r)
        })
        .collect()
}

pub fn verify(suite: Suite) -> Vec<CriterionResult> {
    verify_with(suite, |_| {})
}

fn r(n: i64, d: i64) -> BigRational {
    q::ratio(n, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x00c0_ffee_0000 + id as u64)
}

/// A rational in `[lo, hi]` with denominator at most `max_den`.
fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> BigRational {
    let d = rng.gen_range(1..=max_den);
    r(rng.gen_range(lo * d..=hi * d), d)
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

const PX_XS: [(i64, i64); 6] = [(1, 10), (1, 5), (1, 4), (3, 10), (2, 5), (1, 2)];

fn px_aut(x: &BigRational) -> Result<Automaton, String> {
    Ok(Automaton::Exact(Machine::Pfa(px(x).map_err(|e| e.to_string())?)))
}

fn exact_values(aut: &Automaton, n: usize) -> Result<Vec<BigRational>, String> {
    aut.unary_values(n)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|v| v.as_exact_real().ok_or_else(|| format!("value {v} is not exact")))
        .collect()
}

fn c1_px_initial() -> Result<String, String> {
    for (n, d) in PX_XS {
        let x = r(n, d);
        let v = exact_values(&px_aut(&x)?, 2)?;
        ensure(v == [r(0, 1), r(0, 1), r(1, 1)], || format!("x = {x}: got {v:?}"))?;
    }
    Ok(format!("{} values of x", PX_XS.len()))
}

fn c2_px_closed_form() -> Result<String, String> {
    let mut worst = 0.0f64;
    for (n, d) in PX_XS {
        let x = r(n, d);
        let exact = exact_values(&px_aut(&x)?, 300)?;
        for (m, v) in exact.iter().enumerate() {
            let closed = px_closed(&x, m as u64).map_err(|e| e.to_string())?;
            let diff = (closed - q::to_f64(v)).abs();
            worst = worst.max(diff);
            ensure(diff <= 1e-9, || format!("x = {x}, m = {m}: closed {closed} vs exact {v}"))?;
        }
    }
    Ok(format!("max |difference| {worst:.3e}"))
}

fn c3_chebyshev() -> Result<String, String> {
    const N: usize = 10_000;
    for (m, n) in [(2, 1), (3, 2)] {
        let t = PythTriple::new(m, n).map_err(|e| e.to_string())?;
        let cos = rotation_cosines(t, N);
        let mat = t.rotation_matrix();
        for (k, c) in cos.iter().enumerate() {
            let p = mat.pow(k as u64).map_err(|e| e.to_string())?;
            ensure(p.get(0, 0) == c, || format!("triple {t}, k = {k}: recurrence and power differ"))?;
        }
    }
    Ok(format!("triples (2, 1) and (3, 2), {} values each", N + 1))
}

fn rot21() -> Automaton {
    rotation(PythTriple::new(2, 1).expect("valid triple"), RotationModel::Gfa)
}

fn c4_aperiodic() -> Result<String, String> {
    let ok = aperiodicity_check(&rot21(), 2000).map_err(|e| e.to_string())?;
    ensure(ok, || "repeated value among k <= 2000".into())?;
    Ok("2001 distinct values".into())
}

fn c5_density() -> Result<String, String> {
    let t = PythTriple::new(2, 1).map_err(|e| e.to_string())?;
    let rep = density_report(t, 100, 50_000).map_err(|e| e.to_string())?;
    ensure(rep.misses() == 0, || format!("{} of 100 bins missed", rep.misses()))?;
    let last = rep.first_hit.iter().flatten().max().copied().unwrap_or(0);
    Ok(format!("all bins hit by k = {last}"))
}

fn c6_rotation_separation() -> Result<String, String> {
    let w = separate(&rot21(), &CutpointSpec::strict(r(1, 10)), &rot21(), &CutpointSpec::strict(r(1, 5)), 100)
        .map_err(|e| e.to_string())?
        .ok_or("no separating length up to 100")?;
    let expected = Scalar::ExactReal(r(32_125_393, 244_140_625));
    ensure(w.m == 12 && w.value_a == expected, || format!("m = {} with value {}", w.m, w.value_a))?;
    Ok(format!("m = {}, value {}", w.m, w.value_a))
}

fn px_member(x: &BigRational, m: u64) -> Result<(BigRational, bool), String> {
    let aut = px_aut(x)?;
    let word = aut.unary_word(m as usize).map_err(|e| e.to_string())?;
    let v = aut.value(&word).map_err(|e| e.to_string())?.as_exact_real().ok_or("inexact value")?;
    let lambda = q::div(&r(1, 1), &(x * r(3, 1) + r(1, 1))).ok_or("bad x")?;
    let member = v > lambda;
    Ok((v, member))
}

fn c7_px_separation() -> Result<String, String> {
    let (x1, x2) = (r(1, 4), r(1, 2));
    let s = px_separation(&x1, &x2).map_err(|e| e.to_string())?;
    ensure(s.m == 12, || format!("px_separation(1/4, 1/2) gave m = {}", s.m))?;
    let (_, in1) = px_member(&x1, 12)?;
    let (_, in2) = px_member(&x2, 12)?;
    ensure(in2 && !in1, || format!("a^12: member of L(P_1/4) = {in1}, of L(P_1/2) = {in2}"))?;

    let mut rng = rng(7);
    let mut at_next = 0;
    for _ in 0..20 {
        let d = rng.gen_range(4..=40i64);
        let mut nums: Vec<i64> = (1..=d / 2).collect();
        nums.shuffle(&mut rng);
        let (a, b) = (nums[0].min(nums[1]), nums[0].max(nums[1]));
        let (x1, x2) = (r(a, d), r(b, d));
        let s = px_separation(&x1, &x2).map_err(|e| format!("({x1}, {x2}): {e}"))?;
        ensure(s.at_candidate_or_next(), || {
            format!("({x1}, {x2}): verified m = {} but candidate {}", s.m, s.candidate)
        })?;
        let (v1, in1) = px_member(&x1, s.m)?;
        let (v2, in2) = px_member(&x2, s.m)?;
        ensure(in1 != in2 && v1 == s.value_x1 && v2 == s.value_x2, || {
            format!("({x1}, {x2}): m = {} does not separate", s.m)
        })?;
        if s.m == s.candidate + 1 {
            at_next += 1;
        }
    }
    Ok(format!("m = 12 for (1/4, 1/2); 20 random pairs verified ({at_next} at m + 1)"))
}

fn prob(rng: &mut ChaCha8Rng) -> BigRational {
    if rng.gen_bool(0.2) {
        return r(rng.gen_range(0..=1), 1);
    }
    let d = rng.gen_range(1..=12);
    r(rng.gen_range(0..=d), d)
}

fn stochastic(p: BigRational, s: BigRational) -> Matrix<BigRational> {
    let one = BigRational::one();
    Matrix::from_rows(vec![vec![p.clone(), s.clone()], vec![&one - p, &one - s]]).expect("2x2")
}

fn random_2pfa(rng: &mut ChaCha8Rng) -> Result<Pfa<BigRational>, String> {
    let a = stochastic(prob(rng), prob(rng));
    let v = prob(rng);
    let v0 = Matrix::column(vec![v.clone(), BigRational::one() - v]).map_err(|e| e.to_string())?;
    let right = rng.gen_bool(0.5);
    let f: Vec<BigRational> = (0..2)
        .map(|_| if right { prob(rng) } else { r(rng.gen_range(0..=1), 1) })
        .collect();
    let mut g = Gfa::new(vec!['a'], vec![a], v0, Matrix::row(f).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    if rng.gen_bool(0.5) {
        g = g.with_left_marker(stochastic(prob(rng), prob(rng))).map_err(|e| e.to_string())?;
    }
    if right {
        g = g.with_right_marker(stochastic(prob(rng), prob(rng))).map_err(|e| e.to_string())?;
    }
    Pfa::new(g, 0.0).map_err(|e| e.to_string())
}

fn c8_two_state() -> Result<String, String> {
    let mut rng = rng(8);
    let mut marked = 0;
    for i in 0..200 {
        let p = random_2pfa(&mut rng)?;
        if p.as_gfa().left_marker().is_some() || p.as_gfa().right_marker().is_some() {
            marked += 1;
        }
        let d = rng.gen_range(1..=12);
        let lambda = r(rng.gen_range(0..d), d);
        let res = classify_2state_pfa(&p, &lambda).map_err(|e| format!("case {i}: {e}"))?;
        let values = Automaton::Exact(Machine::Pfa(p)).unary_values(200).map_err(|e| e.to_string())?;
        let cp = CutpointSpec::strict(lambda.clone());
        for (m, v) in values.iter().enumerate() {
            let direct = cut_member(v, &cp).map_err(|e| e.to_string())?;
            ensure(named_member(&res.language, m as u64) == direct, || {
                format!("case {i}: {} disagrees with f(a^{m}) = {v} at cutpoint {lambda}", res.language)
            })?;
        }
    }
    Ok(format!("200 PFAs ({marked} with markers), 100% agreement"))
}

fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    if rng.gen_bool(0.5) {
        Direction::Less
    } else {
        Direction::Greater
    }
}

/// A cutpoint in `[-2, 2]`; inclusive specs usually get the value of a
/// short word, so that the equation has solutions.
fn spec_cutpoint(rng: &mut ChaCha8Rng, numbers: &[BigRational], inclusive: bool) -> BigRational {
    if inclusive && rng.gen_bool(0.75) {
        let v = (0..rng.gen_range(0..=4)).fold(BigRational::one(), |acc, _| {
            acc * numbers.choose(rng).cloned().unwrap_or_else(BigRational::one)
        });
        if v.abs() <= r(2, 1) {
            return v;
        }
    }
    random_rational(rng, -2, 2, 4)
}

fn c9_one_state() -> Result<String, String> {
    let mut rng = rng(9);
    let sigma = ['a', 'b', 'c'];
    let all = words(&sigma, 8);
    let mut checked = 0usize;
    for i in 0..200 {
        let numbers: Vec<BigRational> = (0..3).map(|_| random_rational(&mut rng, -4, 4, 4)).collect();
        let inclusive = rng.gen_bool(0.25);
        let mode = if inclusive { OneStateMode::Inclusive } else { OneStateMode::Strict };
        let lambda = spec_cutpoint(&mut rng, &numbers, inclusive);
        let s = OneStateGfaSpec::new(sigma.to_vec(), numbers, lambda, random_direction(&mut rng), mode)
            .map_err(|e| e.to_string())?;
        let d = decompose_1state(&s).map_err(|e| format!("spec {i} {s}: {e}"))?;
        for w in &all {
            let direct = s.accepts(w).map_err(|e| e.to_string())?;
            let via = desc_member(&d, w).map_err(|e| e.to_string())?;
            ensure(direct == via, || format!("spec {s}: word `{w}` accepted = {direct}, descriptor {d} says {via}"))?;
            checked += 1;
        }
    }
    for i in 0..100 {
        let d = random_descriptor(&mut rng, &sigma)?;
        let s = build_1state(&d).map_err(|e| format!("descriptor {i} {d}: {e}"))?;
        let back = decompose_1state(&s).map_err(|e| e.to_string())?;
        for w in &all {
            let want = desc_member(&d, w).map_err(|e| e.to_string())?;
            let got = desc_member(&back, w).map_err(|e| e.to_string())?;
            ensure(want == got, || format!("descriptor {d} via {s}: word `{w}` gives {got}, expected {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("200 specs and 100 descriptors, {checked} word checks agree"))
}

fn subset(rng: &mut ChaCha8Rng, from: &[char]) -> Vec<char> {
    from.iter().filter(|_| rng.gen_bool(0.5)).copied().collect()
}

fn positive_rational(rng: &mut ChaCha8Rng) -> BigRational {
    r(rng.gen_range(1..=5), rng.gen_range(1..=5))
}

fn random_descriptor(rng: &mut ChaCha8Rng, sigma: &[char]) -> Result<LanguageDescriptor, String> {
    let err = |e: cutpoint::langsem::LangError| e.to_string();
    let form = rng.gen_range(0..4);
    if form == 3 {
        let z = subset(rng, sigma);
        let ind = IndicatorDescriptor::new(sigma.to_vec(), z).map_err(err)?;
        return LanguageDescriptor::new(sigma.to_vec(), LanguageForm::IndicatorOnly(ind)).map_err(err);
    }
    let x = subset(rng, sigma);
    let y = subset(rng, &x);
    let bases: Vec<BigRational> = x.iter().map(|_| positive_rational(rng)).collect();
    let par = ParityDescriptor::new(x.clone(), y, rng.gen_range(0..=1)).map_err(err)?;
    let threshold = match form {
        0 if rng.gen_bool(0.2) => Threshold::Infinite,
        2 if rng.gen_bool(0.75) && !bases.is_empty() => {
            let word: Vec<usize> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..bases.len())).collect();
            Threshold::ExactLog(word.iter().fold(BigRational::one(), |acc, &j| acc * &bases[j]))
        }
        _ => Threshold::ExactLog(positive_rational(rng)),
    };
    let relation = if form == 2 { Relation::Equals } else { Relation::Less };
    let sol = SolutionDescriptor::new(x.clone(), Coefficients::ExactLog(bases), threshold, relation).map_err(err)?;
    let form = match form {
        0 => LanguageForm::Lambda(sol, par),
        1 => {
            let outside = sigma.iter().filter(|c| !x.contains(c)).copied().collect();
            LanguageForm::V(sol, par, IndicatorDescriptor::new(sigma.to_vec(), outside).map_err(err)?)
        }
        _ => LanguageForm::Inclusive(sol, par),
    };
    LanguageDescriptor::new(sigma.to_vec(), form).map_err(err)
}

fn c10_unary_inclusive() -> Result<String, String> {
    use UnaryRegularName::*;
    let mut rng = rng(10);
    let mut names = vec![Empty, All, APlus, Even, CoEven];
    names.extend((0..=64).map(SingletonLength));
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..200 {
        let a = random_rational(&mut rng, -4, 4, 4);
        let lambda = spec_cutpoint(&mut rng, std::slice::from_ref(&a), true);
        let s = OneStateGfaSpec::new(vec!['a'], vec![a], lambda, Direction::Less, OneStateMode::Inclusive)
            .map_err(|e| e.to_string())?;
        let d = decompose_1state(&s).map_err(|e| e.to_string())?;
        let mut bits = Vec::with_capacity(65);
        for m in 0..=64 {
            let w = "a".repeat(m);
            let via = desc_member(&d, &w).map_err(|e| e.to_string())?;
            ensure(via == s.accepts(&w).map_err(|e| e.to_string())?, || format!("spec {s}: a^{m} disagrees"))?;
            bits.push(via);
        }
        let name = names
            .iter()
            .find(|nm| bits.iter().enumerate().all(|(m, &b)| named_member(nm, m as u64) == b))
            .ok_or_else(|| format!("spec {s}: language {d} has none of the expected shapes"))?;
        seen.insert(match name {
            SingletonLength(_) => "{a^n}".to_string(),
            other => other.to_string(),
        });
    }
    Ok(format!("200 specs; shapes seen: {}", seen.into_iter().collect::<Vec<_>>().join(", ")))
}

fn c11_exclusive() -> Result<String, String> {
    let t = PythTriple::new(2, 1).map_err(|e| e.to_string())?;
    let mc = match rotation(t, RotationModel::Mcqfa) {
        Automaton::Exact(Machine::Mcqfa(m)) => m.map_field(|z| z.to_c64()),
        _ => return Err("rotation MCQFA is not exact".into()),
    };
    let cos = rotation_cosines(t, 2000);
    let f: Vec<BigRational> = cos.iter().map(|c| c * c).collect();
    let mut worst = 0.0f64;
    for (n, d) in [(1, 4), (1, 2), (3, 4)] {
        let lambda = r(n, d);
        let tr = exclusive_to_zero(&mc, q::to_f64(&lambda)).map_err(|e| e.to_string())?;
        ensure(tr.machine.states() == 5, || format!("{} states", tr.machine.states()))?;
        let sim = Automaton::Approx(Machine::Mcqfa(tr.machine)).unary_values(100).map_err(|e| e.to_string())?;
        for (k, v) in sim.iter().enumerate() {
            let want = q::to_f64(&exclusive_value_exact(&f[k], &lambda, 1));
            let diff = (v.to_f64() - want).abs();
            worst = worst.max(diff);
            ensure(diff <= 1e-9, || format!("lambda = {lambda}, k = {k}: simulated {v} vs {want}"))?;
        }
        for (k, fk) in f.iter().enumerate() {
            let exact = exclusive_value_exact(fk, &lambda, 1);
            ensure(exact.is_zero() == (*fk == lambda), || format!("lambda = {lambda}, k = {k}: zero test"))?;
            ensure(!exact.is_zero(), || format!("lambda = {lambda}: cos^2({k} theta) = lambda"))?;
        }
    }
    Ok(format!("max simulation error {worst:.3e}; no zero for k <= 2000"))
}

fn verdict_of(numbers: (BigRational, BigRational)) -> Result<ChomskyVerdict, String> {
    let s = OneStateGfaSpec::new(vec!['a', 'b'], vec![numbers.0, numbers.1], r(1, 1), Direction::Greater, OneStateMode::Strict)
        .map_err(|e| e.to_string())?;
    chomsky_classify_gfa(&s).map_err(|e| e.to_string())
}

fn c12_chomsky() -> Result<String, String> {
    use ChomskyVerdict::*;
    for (nums, want) in [
        ((r(1, 2), r(2, 1)), ContextFreeNonRegular),
        ((r(2, 1), r(3, 1)), Regular),
        ((r(2, 1), r(1, 3)), NonContextFree),
    ] {
        let got = verdict_of(nums.clone())?;
        ensure(got == want, || format!("({}, {}): {got}, expected {want}", nums.0, nums.1))?;
    }
    let mut rng = rng(12);
    let mut counts = [0usize; 3];
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let (p, qq) = (rng.gen_range(1..=3u32), rng.gen_range(1..=3u32));
        let roots: Vec<BigRational> = (0..k)
            .map(|_| if rng.gen_bool(0.25) { BigRational::one() } else { r(rng.gen_range(1..=6), rng.gen_range(1..=6)) })
            .collect();
        let t = if rng.gen_bool(0.1) { None } else { Some(r(rng.gen_range(1..=6), rng.gen_range(1..=6))) };
        let letters: Vec<char> = "abc".chars().take(k).collect();
        let make = |e: u32| -> Result<SolutionDescriptor, String> {
            SolutionDescriptor::new(
                letters.clone(),
                Coefficients::ExactLog(roots.iter().map(|c| q::pow(c, e)).collect()),
                t.as_ref().map_or(Threshold::Infinite, |t| Threshold::ExactLog(q::pow(t, e))),
                Relation::Less,
            )
            .map_err(|e| e.to_string())
        };
        let d = make(qq)?;
        let verdict = chomsky_classify(&d).map_err(|e| e.to_string())?;
        let decimated = chomsky_classify(&decimate(&d)).map_err(|e| e.to_string())?;
        let scaled = chomsky_classify(&make(p)?).map_err(|e| e.to_string())?;
        ensure(decimated == verdict && scaled == verdict, || {
            format!("{d}: {verdict}, decimated {decimated}, rescaled by {p}/{qq} {scaled}")
        })?;
        counts[verdict as usize] += 1;
    }
    Ok(format!(
        "fixed verdicts match; 100 invariance checks (regular {}, cf non-regular {}, non-cf {})",
        counts[0], counts[1], counts[2]
    ))
}

fn c13_modn() -> Result<String, String> {
    for n in 2..=8u64 {
        let aut = Automaton::Approx(Machine::Mcqfa(modn_mcqfa(n).map_err(|e| e.to_string())?));
        let cp = CutpointSpec::inclusive(r(1, 1)).with_epsilon(1e-6);
        let bits = enum_unary(&aut, &cp, 100).map_err(|e| e.to_string())?;
        for (k, b) in bits.iter().enumerate() {
            ensure(*b == (k as u64 % n == 0), || format!("n = {n}, k = {k}: accepted = {b}"))?;
        }
    }
    Ok("n = 2..8, k <= 100".into())
}
