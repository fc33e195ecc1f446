use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::linalg::fraction_string;
use crate::geometry::{hull, volume, VectorSetND};
use crate::nd::sumset::SumsetLevelsND;
use crate::Budget;

fn fractions<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fraction_string))
}

fn fraction<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fraction_string(v))
}

/// Exact polynomial matching `#NA` from `onset` on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KhovanskiiFit {
    pub onset: u64,
    pub degree: usize,
    /// Constant term first.
    #[serde(serialize_with = "fractions")]
    pub coefficients: Vec<BigRational>,
    #[serde(serialize_with = "fraction")]
    pub leading: BigRational,
    #[serde(serialize_with = "fraction")]
    pub volume: BigRational,
    pub counts: Vec<u64>,
}

impl KhovanskiiFit {
    pub fn evaluate(&self, n: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn leading_matches_volume(&self) -> bool {
        self.leading == self.volume
    }
}

/// Coefficients (constant first) of the polynomial through the given points.
fn interpolate(xs: &[i64], ys: &[u64]) -> Vec<BigRational> {
    let k = xs.len();
    let mut coeffs = vec![BigRational::zero(); k];
    for i in 0..k {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in (0..k).filter(|&j| j != i) {
            let xj = BigRational::from_integer(BigInt::from(xs[j]));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[i] - xs[j]));
        }
        let scale = BigRational::from_integer(BigInt::from(ys[i])) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    coeffs
}

/// Counts `#NA` for `N = 1..=n_max`, finds where the `(n+1)`-st finite
/// differences vanish through `n_max`, and interpolates the tail exactly.
///
/// Returns `None` when fewer than `n + 2` consecutive counts at the end fit a
/// polynomial of degree `n`.
pub fn khovanskii_fit(
    set: &VectorSetND,
    n_max: u64,
    budget: &Budget,
) -> Result<Option<KhovanskiiFit>> {
    let dim = set.dim();
    let vol = volume(&hull(set)?)?;
    let mut levels = SumsetLevelsND::new(set, *budget);
    let mut counts = Vec::new();
    for _ in 0..n_max {
        counts.push(levels.advance()?.len() as u64);
    }
    if counts.len() < dim + 2 {
        return Err(Error::InvalidInput(format!(
            "need at least {} levels for a degree-{dim} fit",
            dim + 2
        )));
    }
    let mut diffs: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
    for _ in 0..=dim {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    // diffs[i] involves counts[i..=i+dim+1]
    if *diffs.last().unwrap() != 0 {
        return Ok(None);
    }
    let mut start = diffs.len() - 1;
    while start > 0 && diffs[start - 1] == 0 {
        start -= 1;
    }
    let tail = counts.len() - dim - 1;
    let xs: Vec<i64> = (tail..counts.len()).map(|i| i as i64 + 1).collect();
    let coefficients = interpolate(&xs, &counts[tail..]);
    let leading = coefficients[dim].clone();
    let fit = KhovanskiiFit {
        onset: start as u64 + 1,
        degree: dim,
        coefficients,
        leading,
        volume: vol,
        counts,
    };
    debug_assert!((fit.onset..=n_max)
        .all(|n| fit.evaluate(n)
            == BigRational::from_integer(BigInt::from(fit.counts[n as usize - 1]))));
    Ok(Some(fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_lattice;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn ex1_leading_is_area() {
        let a = validate_lattice(&[vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 1]]).unwrap();
        let fit = khovanskii_fit(&a, 12, &Budget::default()).unwrap().unwrap();
        assert_eq!(fit.leading, rat(3, 1));
        assert!(fit.leading_matches_volume());
        for n in fit.onset..=12 {
            assert_eq!(fit.evaluate(n), rat(fit.counts[n as usize - 1] as i64, 1));
        }
    }

    #[test]
    fn simplex_counts_are_binomial() {
        let a = validate_lattice(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let fit = khovanskii_fit(&a, 8, &Budget::default()).unwrap().unwrap();
        assert_eq!(fit.onset, 1);
        assert_eq!(fit.coefficients, vec![rat(1, 1), rat(3, 2), rat(1, 2)]);
    }

    #[test]
    fn one_dimensional_leading_is_b() {
        let a = validate_lattice(&[vec![0], vec![1], vec![7]]).unwrap();
        let fit = khovanskii_fit(&a, 20, &Budget::default()).unwrap().unwrap();
        assert_eq!(fit.leading, rat(7, 1));
        assert!(khovanskii_fit(&a, 3, &Budget::default()).unwrap().is_none());
    }
}
