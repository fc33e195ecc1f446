//! Slow, obviously-correct reference implementations.
//!
//! Nothing here is shared with `sumset-core`: sets are plain slices, results
//! are ordered std collections, and every routine is a direct enumeration of
//! its definition. These exist to be compared against the fast paths.

use std::collections::BTreeSet;
use std::fmt;

/// Largest `b * N` accepted by [`oracle_sumset_1d`].
pub const MAX_SUMSET_RANGE: i64 = 100_000;
/// Largest `w . v` accepted by [`oracle_mu`].
pub const MAX_MU_WEIGHT: i64 = 40;
/// Largest input accepted by [`oracle_minimal_antichain`].
pub const MAX_ANTICHAIN_INPUT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge(String),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge(what) => write!(f, "oracle instance too large: {what}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// All sums of exactly `n` elements of `set` (repetition allowed).
///
/// Works level by level over the summand count with no bit tricks.
pub fn oracle_sumset_1d(set: &[i64], n: usize) -> Result<BTreeSet<i64>, OracleError> {
    let max = set.iter().copied().max().unwrap_or(0);
    let min = set.iter().copied().min().unwrap_or(0);
    let span = (max - min).saturating_mul(n as i64);
    if span > MAX_SUMSET_RANGE {
        return Err(OracleError::TooLarge(format!("range {span}")));
    }
    let mut level: BTreeSet<i64> = BTreeSet::new();
    level.insert(0);
    if set.is_empty() {
        return Ok(if n == 0 { level } else { BTreeSet::new() });
    }
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for &s in &level {
            for &a in set {
                next.insert(s + a);
            }
        }
        level = next;
    }
    Ok(level)
}

/// Membership table of the additive monoid generated by `set` on `0..=limit`.
///
/// `table[v]` is true iff `v` is a nonnegative integer combination of `set`.
pub fn oracle_semigroup_1d(set: &[i64], limit: usize) -> Vec<bool> {
    let mut table = vec![false; limit + 1];
    table[0] = true;
    for v in 1..=limit {
        table[v] = set
            .iter()
            .filter(|&&a| a > 0 && (a as usize) <= v)
            .any(|&a| table[v - a as usize]);
    }
    table
}

/// Fewest positive summands from `set` adding to `target`, by exhaustive
/// recursion over nonincreasing sequences of summands.
pub fn oracle_min_summands_1d(set: &[i64], target: i64) -> Option<usize> {
    fn go(coins: &[i64], target: i64, used: usize, best: &mut Option<usize>) {
        if target == 0 {
            if best.is_none_or(|b| used < b) {
                *best = Some(used);
            }
            return;
        }
        if let Some(b) = *best {
            if used + 1 >= b {
                return;
            }
        }
        for (i, &c) in coins.iter().enumerate() {
            if c <= target {
                go(&coins[i..], target - c, used + 1, best);
            }
        }
    }
    let mut coins: Vec<i64> = set.iter().copied().filter(|&a| a > 0).collect();
    coins.sort_unstable_by(|a, b| b.cmp(a));
    coins.dedup();
    let mut best = None;
    go(&coins, target, 0, &mut best);
    best
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Least number of summands from `set` whose sum is `v`, or `None` when `v`
/// is not a nonnegative combination.
///
/// `witness` must satisfy `witness . a >= 1` for every nonzero `a` in `set`;
/// the search enumerates every multiset of nonzero elements of total size at
/// most `witness . v`.
pub fn oracle_mu(
    set: &[Vec<i64>],
    witness: &[i64],
    v: &[i64],
) -> Result<Option<usize>, OracleError> {
    let bound = dot(witness, v);
    if bound > MAX_MU_WEIGHT {
        return Err(OracleError::TooLarge(format!("weight {bound}")));
    }
    if v.iter().all(|&x| x == 0) {
        return Ok(Some(0));
    }
    if bound < 0 {
        return Ok(None);
    }
    let gens: Vec<&Vec<i64>> = set.iter().filter(|a| a.iter().any(|&x| x != 0)).collect();
    let mut best: Option<usize> = None;
    let mut acc = vec![0i64; v.len()];

    fn rec(
        gens: &[&Vec<i64>],
        start: usize,
        remaining: i64,
        used: usize,
        acc: &mut Vec<i64>,
        v: &[i64],
        best: &mut Option<usize>,
    ) {
        if acc.as_slice() == v && best.is_none_or(|b| used < b) {
            *best = Some(used);
        }
        if remaining <= 0 {
            return;
        }
        for i in start..gens.len() {
            for (x, g) in acc.iter_mut().zip(gens[i].iter()) {
                *x += g;
            }
            rec(gens, i, remaining - 1, used + 1, acc, v, best);
            for (x, g) in acc.iter_mut().zip(gens[i].iter()) {
                *x -= g;
            }
        }
    }

    rec(&gens, 0, bound, 0, &mut acc, v, &mut best);
    Ok(best)
}

/// Coordinatewise-minimal elements of `points`, by comparing every pair.
pub fn oracle_minimal_antichain(points: &[Vec<i64>]) -> Result<BTreeSet<Vec<i64>>, OracleError> {
    if points.len() > MAX_ANTICHAIN_INPUT {
        return Err(OracleError::TooLarge(format!("{} points", points.len())));
    }
    let leq = |a: &Vec<i64>, b: &Vec<i64>| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out = BTreeSet::new();
    for p in points {
        let dominated = points.iter().any(|q| q != p && leq(q, p));
        if !dominated {
            out.insert(p.clone());
        }
    }
    Ok(out)
}
