use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::one_d::stamp::StampSet1D;
use crate::one_d::sumset::{fewest_summands_table, Sumset1D, SumsetLevels};

/// Least element of `P(A)` in each residue class mod `b` (the Apéry set of `b`).
///
/// Dijkstra on `Z/bZ` with an edge `r -> r + c` of weight `c` for every
/// `0 < c < b` in `A`.
pub fn apery_set(set: &StampSet1D) -> Vec<u64> {
    let b = set.b();
    if b == 0 {
        return vec![0];
    }
    let b_us = b as usize;
    let mut dist = vec![u64::MAX; b_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    let steps: Vec<u64> = set.interior().collect();
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &c in &steps {
            let t = (r + c as usize) % b_us;
            let nd = d + c;
            if nd < dist[t] {
                dist[t] = nd;
                heap.push(Reverse((nd, t)));
            }
        }
    }
    dist
}

/// One residue class `a mod b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub a: u64,
    /// Least element of `P(A)` congruent to `a`.
    #[serde(rename = "n_aA")]
    pub least: u64,
    /// Least `N` with `least` in `N A`.
    #[serde(rename = "N_aA")]
    pub least_count: u64,
    /// `least + least'` where `least'` is the corresponding value for `b - a`
    /// in `b - A`; the lower bound for `least_count` is this over `b`.
    #[serde(rename = "Nstar_num")]
    pub nstar_num: u64,
    /// Least `N0 >= 1` such that the residue-`a` part of the interval
    /// description of `N A` holds for every `N >= N0`.
    pub threshold: u64,
}

impl ResidueRow {
    /// `ceil(nstar_num / b)`, the smallest integer `N` at which residue `a`
    /// can contain anything outside the two exceptional sets.
    pub fn nstar_ceil(&self, b: u64) -> u64 {
        self.nstar_num.div_ceil(b.max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueProfile {
    pub b: u64,
    pub rows: Vec<ResidueRow>,
}

impl ResidueProfile {
    pub fn row(&self, a: u64) -> &ResidueRow {
        &self.rows[a as usize]
    }

    /// Overall threshold: the largest per-residue threshold.
    pub fn threshold(&self) -> u64 {
        self.rows.iter().map(|r| r.threshold).max().unwrap_or(0)
    }
}

/// Least element and fewest summands for every residue; thresholds left at 0.
fn profile_without_thresholds(set: &StampSet1D) -> ResidueProfile {
    let b = set.b();
    let least = apery_set(set);
    let least_reflected = apery_set(&set.reflect());
    // Neither 0 nor b appears in a representation of a least element.
    let coins: Vec<u64> = set.interior().collect();
    let limit = least.iter().copied().max().unwrap_or(0);
    let table = fewest_summands_table(&coins, limit);
    let rows = (0..b.max(1))
        .map(|a| {
            let dual = ((b - a) % b.max(1)) as usize;
            ResidueRow {
                a,
                least: least[a as usize],
                least_count: table[least[a as usize] as usize] as u64,
                nstar_num: least[a as usize] + least_reflected[dual],
                threshold: 0,
            }
        })
        .collect();
    ResidueProfile { b, rows }
}

/// The per-residue check at a single `N`: every `x = a mod b` in `[0, bN]`
/// lies in `N A` exactly when `x >= n_a` and `bN - x >= n'_{b-a}`.
fn residue_statement_holds(
    sumset: &Sumset1D,
    b: u64,
    row: &ResidueRow,
    least_reflected_dual: u64,
) -> bool {
    let top = sumset.max();
    let mut x = row.a;
    while x <= top {
        let expected = x >= row.least && top - x >= least_reflected_dual;
        if sumset.contains(x) != expected {
            return false;
        }
        x += b;
    }
    true
}

/// Residue profile with exact per-residue thresholds.
///
/// Scans `N` upward from `max(1, ceil(N*_a))` for each residue. Below `N*_a`
/// the statement is vacuous, and once it holds at some `N >= N*_a` it holds
/// forever after, so the first success is the answer. A residue still failing
/// at `2 floor(b/2) + 1` contradicts the known bound and is reported as a
/// counterexample.
pub fn residue_profile(set: &StampSet1D) -> Result<ResidueProfile> {
    if set.len() < 2 {
        return Err(Error::InvalidInput(
            "residue profile needs at least two elements".into(),
        ));
    }
    let mut profile = profile_without_thresholds(set);
    let b = profile.b;
    let least_reflected = apery_set(&set.reflect());
    let cap = 2 * (b / 2) + 1;

    let mut pending: Vec<usize> = (0..profile.rows.len()).collect();
    let mut levels = SumsetLevels::new(set);
    for n in 1..=cap {
        if pending.is_empty() {
            break;
        }
        let sumset = levels.advance();
        pending.retain(|&i| {
            let row = &mut profile.rows[i];
            let start = row.nstar_ceil(b).max(1);
            if n < start {
                return true;
            }
            let dual = least_reflected[((b - row.a) % b) as usize];
            if residue_statement_holds(sumset, b, row, dual) {
                row.threshold = if n == start { 1 } else { n };
                false
            } else {
                true
            }
        });
    }
    if let Some(&i) = pending.first() {
        return Err(Error::Counterexample(format!(
            "residue {} of {{{set}}} still fails at N = {cap}",
            profile.rows[i].a
        )));
    }
    Ok(profile)
}

/// Least `N0` such that `N A = [0, bN] \ (E(A) u (bN - E(b - A)))` for all
/// `N >= N0`, reported as at least 1. Sets with one element give 0.
pub fn threshold(set: &StampSet1D) -> Result<u64> {
    if set.len() < 2 {
        return Ok(0);
    }
    Ok(residue_profile(set)?.threshold())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSet1D {
    pub members: Vec<u64>,
}

impl ExceptionalSet1D {
    /// Largest exceptional element (the Frobenius number).
    pub fn frobenius(&self) -> Option<u64> {
        self.members.last().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// `E(A)`: positive integers below the least element of their residue class.
pub fn exceptional_set_1d(set: &StampSet1D) -> ExceptionalSet1D {
    let b = set.b();
    if b == 0 {
        return ExceptionalSet1D {
            members: Vec::new(),
        };
    }
    let least = apery_set(set);
    let mut members: Vec<u64> = (1..b)
        .flat_map(|a| (a..least[a as usize]).step_by(b as usize))
        .collect();
    members.sort_unstable();
    ExceptionalSet1D { members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::one_d::normalize;

    fn set(xs: &[u64]) -> StampSet1D {
        StampSet1D::from_normalized(xs).unwrap()
    }

    #[test]
    fn profile_of_0_3_5() {
        let p = residue_profile(&set(&[0, 3, 5])).unwrap();
        let least: Vec<u64> = p.rows.iter().map(|r| r.least).collect();
        let count: Vec<u64> = p.rows.iter().map(|r| r.least_count).collect();
        assert_eq!(least, vec![0, 6, 12, 3, 9]);
        assert_eq!(count, vec![0, 2, 4, 1, 3]);
    }

    #[test]
    fn profile_of_0_1_b() {
        let p = residue_profile(&set(&[0, 1, 7])).unwrap();
        assert_eq!(p.row(6).least_count, 6);
        for a in 1..7 {
            assert_eq!(p.row(a).least, a);
            assert_eq!(p.row(a).least_count, a);
        }
    }

    #[test]
    fn three_element_closed_form() {
        // a = c r mod b gives n_a = c r and N_a = r.
        for (c, b) in [(3u64, 5u64), (4, 7), (5, 12), (7, 9)] {
            let p = residue_profile(&set(&[0, c, b])).unwrap();
            for r in 1..b {
                let row = p.row(c * r % b);
                assert_eq!(
                    (row.least, row.least_count),
                    (c * r, r),
                    "c={c} b={b} r={r}"
                );
            }
        }
    }

    #[test]
    fn row_invariants() {
        for xs in [
            &[0u64, 3, 5][..],
            &[0, 1, 5, 6],
            &[0, 2, 7, 9, 10],
            &[0, 4, 9, 13],
        ] {
            let s = set(xs);
            let b = s.b();
            let p = residue_profile(&s).unwrap();
            assert_eq!((p.row(0).least, p.row(0).least_count), (0, 0));
            for r in &p.rows {
                assert_eq!(r.least % b, r.a);
                assert!(r.least <= (b - 1) * r.least_count);
                assert!(r.least_count < b);
                assert!(r.least_count * b >= r.nstar_num);
            }
        }
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(
            exceptional_set_1d(&set(&[0, 3, 5])).members,
            vec![1, 2, 4, 7]
        );
        assert_eq!(exceptional_set_1d(&set(&[0, 3, 5])).frobenius(), Some(7));
        assert!(exceptional_set_1d(&set(&[0, 1])).is_empty());
        let e = exceptional_set_1d(&set(&[0, 4, 7]));
        assert_eq!((e.frobenius(), e.len()), (Some(17), 9));
        assert!(exceptional_set_1d(&normalize(&[5]).unwrap()).is_empty());
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold(&set(&[0, 3, 5])).unwrap(), 1);
        assert_eq!(threshold(&set(&[0, 4, 9])).unwrap(), 1);
        assert_eq!(threshold(&set(&[0, 1, 5, 6])).unwrap(), 4);
        assert_eq!(threshold(&set(&[0, 1, 2, 8])).unwrap(), 1);
        assert_eq!(threshold(&set(&[0, 1])).unwrap(), 1);
        assert_eq!(threshold(&normalize(&[3]).unwrap()).unwrap(), 0);
        assert!(residue_profile(&normalize(&[3]).unwrap()).is_err());
    }
}
