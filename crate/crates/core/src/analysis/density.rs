use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::constructions::{ChebyshevCosines, PythTriple};
use crate::exactmath::rational as q;

use super::AnalysisError;

/// First hits of `cos(k theta)` in `bins` equal subintervals of `[-1, 1]`.
/// Bin `j` is `[-1 + j w, -1 + (j + 1) w)`, the last one closed at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub triple: PythTriple,
    pub width: BigRational,
    pub horizon: u64,
    /// Least `k <= horizon` landing in each bin, `None` for a miss.
    pub first_hit: Vec<Option<u64>>,
}

impl DensityReport {
    pub fn misses(&self) -> usize {
        self.first_hit.iter().filter(|h| h.is_none()).count()
    }

    /// Left edge of bin `j`.
    pub fn lower_edge(&self, j: usize) -> BigRational {
        q::sub(&q::mul(&self.width, &q::from_int(j as i64)), &q::from_int(1))
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "triple {} bins {} width {} horizon {} misses {}",
            self.triple,
            self.first_hit.len(),
            self.width,
            self.horizon,
            self.misses()
        )?;
        for (j, hit) in self.first_hit.iter().enumerate() {
            match hit {
                Some(k) => writeln!(f, "bin {j} [{}]: k={k}", self.lower_edge(j))?,
                None => writeln!(f, "bin {j} [{}]: miss", self.lower_edge(j))?,
            }
        }
        Ok(())
    }
}

/// Scans `k = 0..=n`, stopping early once every bin has been hit.
pub fn density_report(t: PythTriple, bins: usize, n: u64) -> Result<DensityReport, AnalysisError> {
    if bins == 0 {
        return Err(AnalysisError::Domain("bins must be positive".into()));
    }
    let mut first_hit = vec![None; bins];
    let mut remaining = bins;
    let mut seq = ChebyshevCosines::new(t);
    let b = BigInt::from(bins);
    while seq.index() <= n && remaining > 0 {
        let (num, den) = seq.current();
        let j = bin_of(num, den, bins, &b);
        if first_hit[j].is_none() {
            first_hit[j] = Some(seq.index());
            remaining -= 1;
        }
        seq.advance();
    }
    Ok(DensityReport {
        triple: t,
        width: q::ratio(2, bins as i64),
        horizon: n,
        first_hit,
    })
}

/// The bin of `num / den` in `[-1, 1]`: `floor((c + 1) bins / 2)`, clamped.
/// A binary64 guess is confirmed with exact integer comparisons.
fn bin_of(num: &BigInt, den: &BigInt, bins: usize, b: &BigInt) -> usize {
    // scaled = (num + den) * bins, bin j holds 2 j den <= scaled < 2 (j+1) den
    let scaled = (num + den) * b;
    let two_den = den * 2;
    let guess = q::to_f64(&BigRational::new_raw(num.clone(), den.clone()));
    let mut j = (((guess + 1.0) * bins as f64 / 2.0).floor().max(0.0) as usize).min(bins - 1);
    loop {
        if j > 0 && scaled < &two_den * BigInt::from(j) {
            j -= 1;
        } else if j + 1 < bins && scaled >= &two_den * BigInt::from(j + 1) {
            j += 1;
        } else {
            return j;
        }
    }
}
