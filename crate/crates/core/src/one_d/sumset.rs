use crate::bitset::Bitmap;
use crate::error::{Error, Result};
use crate::one_d::profile::apery_set;
use crate::one_d::stamp::StampSet1D;
use crate::Budget;

/// The exact set `N A` as a bitmap over `0..=b*N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sumset1D {
    n: u64,
    b: u64,
    members: Bitmap,
}

impl Sumset1D {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Upper end of the interval the bitmap covers, `b * N`.
    pub fn max(&self) -> u64 {
        self.b * self.n
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.get(x as usize)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter_ones().map(|x| x as u64)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub(crate) fn bitmap(&self) -> &Bitmap {
        &self.members
    }
}

/// Successive sumsets `1A, 2A, 3A, ...`, each built from the previous one
/// by one shifted-OR pass per element.
pub struct SumsetLevels<'a> {
    set: &'a StampSet1D,
    current: Sumset1D,
}

impl<'a> SumsetLevels<'a> {
    pub fn new(set: &'a StampSet1D) -> Self {
        let mut members = Bitmap::new(1);
        members.set(0);
        SumsetLevels {
            set,
            current: Sumset1D {
                n: 0,
                b: set.b(),
                members,
            },
        }
    }

    pub fn current(&self) -> &Sumset1D {
        &self.current
    }

    pub fn advance(&mut self) -> &Sumset1D {
        let b = self.set.b();
        let n = self.current.n + 1;
        let mut next = Bitmap::new((b * n + 1) as usize);
        for &a in self.set.elements() {
            next.or_shifted(&self.current.members, a as usize);
        }
        self.current = Sumset1D {
            n,
            b,
            members: next,
        };
        &self.current
    }
}

pub fn sumset_1d(set: &StampSet1D, n: u64) -> Sumset1D {
    let mut levels = SumsetLevels::new(set);
    for _ in 0..n {
        levels.advance();
    }
    levels.current
}

/// [`sumset_1d`] with a guard on the bitmap length `b * N`.
pub fn sumset_1d_with_budget(set: &StampSet1D, n: u64, budget: &Budget) -> Result<Sumset1D> {
    let range = set.b().saturating_mul(n);
    if range > budget.max_range {
        return Err(Error::Budget(format!(
            "b*N = {range} exceeds {}",
            budget.max_range
        )));
    }
    Ok(sumset_1d(set, n))
}

/// Point queries `n in N A` for a fixed set, without building `N A`.
///
/// Uses the least element of each residue class of `P(A)` and of `P(b - A)`
/// to settle most queries; the rest fall back to a fewest-summands table over
/// the smaller of `n` and `bN - n`.
pub struct MembershipOracle<'a> {
    set: &'a StampSet1D,
    reflected: StampSet1D,
    least: Vec<u64>,
    least_reflected: Vec<u64>,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(set: &'a StampSet1D) -> Self {
        let reflected = set.reflect();
        MembershipOracle {
            least: apery_set(set),
            least_reflected: apery_set(&reflected),
            reflected,
            set,
        }
    }

    pub fn member(&self, n_fold: u64, x: i64, budget: &Budget) -> Result<bool> {
        let b = self.set.b();
        let top = b.saturating_mul(n_fold);
        if x < 0 || x as u64 > top {
            return Err(Error::OutOfRange {
                value: x,
                max: top as i64,
            });
        }
        let x = x as u64;
        if x == 0 {
            return Ok(true);
        }
        if b == 0 {
            return Ok(false);
        }
        let dual = top - x;
        // Outside P(A), or reflected outside P(b - A).
        if x < self.least[(x % b) as usize] || dual < self.least_reflected[(dual % b) as usize] {
            return Ok(false);
        }
        let (value, coins) = if x <= dual {
            (x, self.set.elements())
        } else {
            (dual, self.reflected.elements())
        };
        if value > budget.max_range {
            return Err(Error::Budget(format!("membership table of size {value}")));
        }
        let fewest = fewest_summands(coins, value);
        Ok(fewest.is_some_and(|k| k <= n_fold))
    }
}

/// Fewest nonzero summands from `coins` adding to `target`, by a table over `0..=target`.
pub(crate) fn fewest_summands(coins: &[u64], target: u64) -> Option<u64> {
    let table = fewest_summands_table(coins, target);
    let v = table[target as usize];
    (v != u32::MAX).then_some(v as u64)
}

pub(crate) fn fewest_summands_table(coins: &[u64], limit: u64) -> Vec<u32> {
    let mut table = vec![u32::MAX; limit as usize + 1];
    table[0] = 0;
    for v in 1..=limit as usize {
        let mut best = u32::MAX;
        for &c in coins {
            let c = c as usize;
            if c != 0 && c <= v && table[v - c] != u32::MAX {
                best = best.min(table[v - c] + 1);
            }
        }
        table[v] = best;
    }
    table
}

/// `n in N A`, checked without materializing `N A`.
pub fn member(set: &StampSet1D, n_fold: u64, x: i64) -> Result<bool> {
    MembershipOracle::new(set).member(n_fold, x, &Budget::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::one_d::normalize;

    fn set(xs: &[u64]) -> StampSet1D {
        StampSet1D::from_normalized(xs).unwrap()
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(
            sumset_1d(&set(&[0, 3, 5]), 2).to_vec(),
            vec![0, 3, 5, 6, 8, 10]
        );
        assert_eq!(sumset_1d(&normalize(&[0]).unwrap(), 5).to_vec(), vec![0]);
        assert_eq!(sumset_1d(&set(&[0, 1]), 3).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(sumset_1d(&set(&[0, 3, 5]), 0).to_vec(), vec![0]);
    }

    #[test]
    fn budget_guard() {
        let tiny = Budget {
            max_range: 5,
            ..Budget::default()
        };
        assert!(sumset_1d_with_budget(&set(&[0, 3, 5]), 2, &tiny)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn member_examples() {
        assert!(!member(&set(&[0, 1, 5, 6]), 3, 4).unwrap());
        assert!(member(&set(&[0, 3, 5]), 2, 8).unwrap());
        assert!(member(&set(&[0, 3, 5]), 7, 0).unwrap());
        assert!(matches!(
            member(&set(&[0, 3, 5]), 2, 11),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            member(&set(&[0, 3, 5]), 2, -1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn member_matches_bitmap() {
        for xs in [
            &[0u64, 1, 5, 6][..],
            &[0, 3, 5],
            &[0, 2, 7, 9],
            &[0, 4, 6, 11, 13],
        ] {
            let s = set(xs);
            let oracle = MembershipOracle::new(&s);
            for n in 0..8 {
                let bits = sumset_1d(&s, n);
                for x in 0..=bits.max() {
                    assert_eq!(
                        oracle.member(n, x as i64, &Budget::default()).unwrap(),
                        bits.contains(x),
                        "{s} N={n} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn levels_are_monotone() {
        let s = set(&[0, 2, 7, 9]);
        let mut levels = SumsetLevels::new(&s);
        let mut prev = levels.current().clone();
        for _ in 0..6 {
            let next = levels.advance().clone();
            assert!(prev.iter().all(|x| next.contains(x)));
            assert!(next.contains(0) && next.contains(next.max()));
            prev = next;
        }
    }
}
