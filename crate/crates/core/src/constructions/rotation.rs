use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::automata::{Automaton, Gfa, Machine, Mcqfa};
use crate::exactmath::primes::small_prime_factors;
use crate::exactmath::rational as q;
use crate::exactmath::{GaussianRational, Matrix, DEFAULT_TRIAL_BOUND};

use super::ConstructionError;

/// A primitive Pythagorean triple `(m^2 - n^2, 2mn, m^2 + n^2)` given by its
/// generator pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PythTriple {
    m: u64,
    n: u64,
}

impl PythTriple {
    pub fn new(m: u64, n: u64) -> Result<Self, ConstructionError> {
        if n == 0 || m <= n {
            return Err(ConstructionError::Domain(format!(
                "triple generators need m > n > 0, got ({m}, {n})"
            )));
        }
        if m.gcd(&n) != 1 || (m + n) % 2 == 0 {
            return Err(ConstructionError::Domain(format!(
                "({m}, {n}) does not generate a primitive triple"
            )));
        }
        if m > u32::MAX as u64 {
            return Err(ConstructionError::Domain(format!("generator {m} is too large")));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `m^2 - n^2`
    pub fn leg_a(&self) -> BigInt {
        BigInt::from(self.m * self.m - self.n * self.n)
    }

    /// `2mn`
    pub fn leg_b(&self) -> BigInt {
        BigInt::from(2 * self.m * self.n)
    }

    /// `m^2 + n^2`
    pub fn hypotenuse(&self) -> BigInt {
        BigInt::from(self.m * self.m + self.n * self.n)
    }

    pub fn cos(&self) -> BigRational {
        BigRational::new(self.leg_a(), self.hypotenuse())
    }

    pub fn sin(&self) -> BigRational {
        BigRational::new(self.leg_b(), self.hypotenuse())
    }

    pub fn angle(&self) -> f64 {
        q::to_f64(&self.sin()).atan2(q::to_f64(&self.cos()))
    }

    pub fn rotation_matrix(&self) -> Matrix<BigRational> {
        let (c, s) = (self.cos(), self.sin());
        Matrix::from_rows(vec![vec![c.clone(), -s.clone()], vec![s, c]]).expect("2x2")
    }
}

impl fmt::Display for PythTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationModel {
    Gfa,
    Mcqfa,
}

/// The unary rotation automaton for `t`. The GFA starts in `e_1` and reads
/// off the first coordinate; the MCQFA starts in `|q_1>` and accepts `q_1`.
pub fn rotation(t: PythTriple, model: RotationModel) -> Automaton {
    let r = t.rotation_matrix();
    match model {
        RotationModel::Gfa => {
            let g = Gfa::new(
                vec!['a'],
                vec![r],
                Matrix::basis(2, 0),
                Matrix::basis(2, 0).transpose(),
            )
            .expect("rotation GFA is well formed");
            Automaton::Exact(Machine::Gfa(g))
        }
        RotationModel::Mcqfa => {
            let mc = Mcqfa::new(
                vec!['a'],
                vec![r.map(|x| GaussianRational::real(x.clone()))],
                Matrix::basis(2, 0),
                vec![0],
            )
            .expect("rotation MCQFA is well formed");
            Automaton::Exact(Machine::Mcqfa(mc))
        }
    }
}

/// Streams `cos(k theta) = N_k / h^k` for `k = 0, 1, ...` using the integer
/// recurrence `N_k = 2a N_{k-1} - h^2 N_{k-2}`.
#[derive(Clone, Debug)]
pub struct ChebyshevCosines {
    two_a: BigInt,
    h: BigInt,
    h_sq: BigInt,
    prev: BigInt,
    cur: BigInt,
    h_pow: BigInt,
    k: u64,
}

impl ChebyshevCosines {
    pub fn new(t: PythTriple) -> Self {
        let h = t.hypotenuse();
        Self {
            two_a: t.leg_a() * 2,
            h_sq: &h * &h,
            h,
            prev: BigInt::from(0),
            cur: BigInt::from(1),
            h_pow: BigInt::from(1),
            k: 0,
        }
    }

    /// Index of the term `current` returns.
    pub fn index(&self) -> u64 {
        self.k
    }

    /// `(N_k, h^k)` for the current index.
    pub fn current(&self) -> (&BigInt, &BigInt) {
        (&self.cur, &self.h_pow)
    }

    pub fn advance(&mut self) {
        let next = if self.k == 0 {
            &self.two_a / 2
        } else {
            &self.two_a * &self.cur - &self.h_sq * &self.prev
        };
        self.prev = std::mem::replace(&mut self.cur, next);
        self.h_pow *= &self.h;
        self.k += 1;
    }
}

/// `cos(k theta)` for `k = 0..=n` in lowest terms.
pub fn rotation_cosines(t: PythTriple, n: usize) -> Vec<BigRational> {
    let primes = small_prime_factors(&t.hypotenuse(), DEFAULT_TRIAL_BOUND)
        .expect("hypotenuse fits in u64");
    let mut seq = ChebyshevCosines::new(t);
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let (num, den) = seq.current();
        out.push(q::reduce_over_primes(num.clone(), den.clone(), &primes));
        seq.advance();
    }
    out
}
