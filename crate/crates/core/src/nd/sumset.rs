use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::{add, dot, is_zero, sub, IVec};
use crate::geometry::{pointedness, VectorSetND};
use crate::Budget;

/// The point set `N A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsetImageND {
    n: u64,
    points: HashSet<IVec>,
}

impl SumsetImageND {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.points.contains(v)
    }

    pub fn points(&self) -> &HashSet<IVec> {
        &self.points
    }

    pub fn sorted(&self) -> Vec<IVec> {
        let mut v: Vec<IVec> = self.points.iter().cloned().collect();
        v.sort();
        v
    }
}

/// Iterates `A, 2A, 3A, ...` by repeated Minkowski addition.
pub struct SumsetLevelsND<'a> {
    set: &'a VectorSetND,
    current: SumsetImageND,
    budget: Budget,
}

impl<'a> SumsetLevelsND<'a> {
    /// Starts at `0 A = {0}`.
    pub fn new(set: &'a VectorSetND, budget: Budget) -> Self {
        let points = HashSet::from([vec![0; set.dim()]]);
        SumsetLevelsND {
            set,
            current: SumsetImageND { n: 0, points },
            budget,
        }
    }

    pub fn current(&self) -> &SumsetImageND {
        &self.current
    }

    pub fn advance(&mut self) -> Result<&SumsetImageND> {
        let mut next = self.current.points.clone();
        for p in &self.current.points {
            for a in self.set.nonzero() {
                next.insert(add(p, a));
            }
            if next.len() > self.budget.max_points {
                return Err(Error::Budget(format!(
                    "{}A exceeds {} points",
                    self.current.n + 1,
                    self.budget.max_points
                )));
            }
        }
        self.current = SumsetImageND {
            n: self.current.n + 1,
            points: next,
        };
        Ok(&self.current)
    }
}

pub fn sumset_nd(set: &VectorSetND, n: u64) -> Result<SumsetImageND> {
    sumset_nd_with_budget(set, n, &Budget::default())
}

pub fn sumset_nd_with_budget(set: &VectorSetND, n: u64, budget: &Budget) -> Result<SumsetImageND> {
    let mut levels = SumsetLevelsND::new(set, *budget);
    for _ in 0..n {
        levels.advance()?;
    }
    Ok(levels.current)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuValue {
    pub v: IVec,
    pub mu: Option<u64>,
}

/// Least number of summands from `A` adding to `v`.
///
/// Breadth-first over summand count; a partial sum `y` is kept only while
/// `v - y` stays in the cone, and the pointedness weight bounds the depth.
pub fn mu(set: &VectorSetND, v: &[i64]) -> Result<MuValue> {
    mu_with_budget(set, v, &Budget::default())
}

pub fn mu_with_budget(set: &VectorSetND, v: &[i64], budget: &Budget) -> Result<MuValue> {
    if v.len() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: v.len(),
        });
    }
    let cone = pointedness(set)?;
    let w = cone.pointed_witness.clone().ok_or(Error::NotPointed)?;
    let value = |mu| MuValue { v: v.to_vec(), mu };
    if is_zero(v) {
        return Ok(value(Some(0)));
    }
    if !cone.cone.contains(v) {
        return Ok(value(None));
    }
    let depth = dot(&w, v);
    let mut seen: HashSet<IVec> = HashSet::new();
    let mut frontier = vec![vec![0; set.dim()]];
    for k in 1..=depth {
        let mut next = Vec::new();
        for y in &frontier {
            for a in set.nonzero() {
                let z = add(y, a);
                if z == v {
                    return Ok(value(Some(k as u64)));
                }
                if cone.cone.contains(&sub(v, &z)) && seen.insert(z.clone()) {
                    next.push(z);
                }
            }
        }
        if seen.len() > budget.max_points {
            return Err(Error::Budget(format!(
                "representation search exceeds {} points",
                budget.max_points
            )));
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(value(None))
}

pub fn p_membership(set: &VectorSetND, v: &[i64]) -> Result<bool> {
    Ok(mu(set, v)?.mu.is_some())
}

/// Coordinatewise-minimal elements of `points` (nonnegative coordinates).
///
/// After a lexicographic sort every element can only be dominated by an
/// earlier one, so one pass against the growing antichain suffices.
pub fn mann_minimal(points: &[IVec]) -> Result<BTreeSet<IVec>> {
    if let Some(p) = points.iter().find(|p| p.iter().any(|&x| x < 0)) {
        return Err(Error::InvalidInput(format!("negative coordinate in {p:?}")));
    }
    let mut sorted: Vec<&IVec> = points.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut kept: Vec<&IVec> = Vec::new();
    for p in sorted {
        if !kept.iter().any(|t| t.iter().zip(p).all(|(a, b)| a <= b)) {
            kept.push(p);
        }
    }
    Ok(kept.into_iter().cloned().collect())
}
