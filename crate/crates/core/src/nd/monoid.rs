//! Membership in the additive monoid `P(S)` generated by a finite set `S`
//! containing the origin.
//!
//! When the cone of `S` contains a line, the generators inside its lineality
//! space generate a group, so `P(S)` is a union of cosets of that group.
//! Vectors are reduced to a canonical coset representative and the search
//! runs in the quotient, where the cone is pointed and a weight bounds it.

use std::collections::{HashMap, HashSet};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::geometry::linalg::{add, dot, is_zero, IVec};
use crate::geometry::{hermite_normal_form, Cone};
use crate::Budget;

#[derive(Debug, Clone)]
pub struct Monoid {
    dim: usize,
    cone: Cone,
    weight: IVec,
    /// Nonzero generators outside the lineality space.
    steps: Vec<IVec>,
    /// Echelon basis (positive pivots) of the group generated inside the
    /// lineality space.
    group_basis: Vec<(usize, IVec)>,
}

impl Monoid {
    /// `points` must contain the origin and span `R^n` affinely.
    pub fn new(points: &[IVec]) -> Result<Self> {
        let cone = Cone::generated_by(points)?;
        let weight = cone.weight();
        let mut steps = Vec::new();
        let mut inside = Vec::new();
        for p in points.iter().filter(|p| !is_zero(p)) {
            if cone.in_lineality(p) {
                inside.push(p.clone());
            } else {
                steps.push(p.clone());
            }
        }
        let group_basis = if inside.is_empty() {
            Vec::new()
        } else {
            let hnf = hermite_normal_form(&inside);
            (0..hnf.rank)
                .map(|i| {
                    let row: IVec = hnf.basis[i]
                        .iter()
                        .map(|x| x.to_i64().expect("small entries"))
                        .collect();
                    (hnf.pivots[i], row)
                })
                .collect()
        };
        Ok(Monoid {
            dim: cone.dim,
            cone,
            weight,
            steps,
            group_basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn is_pointed(&self) -> bool {
        self.group_basis.is_empty() && self.cone.is_pointed()
    }

    /// Linear form positive on every generator outside the lineality space.
    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    pub fn steps(&self) -> &[IVec] {
        &self.steps
    }

    fn reduce(&self, v: &mut IVec) {
        for (p, row) in &self.group_basis {
            let q = v[*p].div_euclid(row[*p]);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
    }

    /// All of `P(S)` with weight at most `max_weight`, as reduced representatives.
    pub fn index(&self, max_weight: i64, budget: &Budget) -> Result<MonoidIndex<'_>> {
        let mut members = HashSet::new();
        let origin = vec![0; self.dim];
        members.insert(origin.clone());
        let mut stack = vec![origin];
        while let Some(y) = stack.pop() {
            for s in &self.steps {
                if dot(&self.weight, &y) + dot(&self.weight, s) > max_weight {
                    continue;
                }
                let mut z = add(&y, s);
                self.reduce(&mut z);
                if members.insert(z.clone()) {
                    if members.len() > budget.max_points {
                        return Err(Error::Budget(format!(
                            "monoid closure exceeds {} points",
                            budget.max_points
                        )));
                    }
                    stack.push(z);
                }
            }
        }
        Ok(MonoidIndex {
            monoid: self,
            max_weight,
            members,
        })
    }

    pub fn contains(&self, v: &[i64], budget: &Budget) -> Result<bool> {
        if !self.cone.contains(v) {
            return Ok(false);
        }
        self.index(dot(&self.weight, v), budget)?.contains(v)
    }
}

/// Precomputed membership table for a [`Monoid`] up to a weight bound.
pub struct MonoidIndex<'a> {
    monoid: &'a Monoid,
    max_weight: i64,
    members: HashSet<IVec>,
}

impl MonoidIndex<'_> {
    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if !self.monoid.cone.contains(v) {
            return Ok(false);
        }
        let w = dot(&self.monoid.weight, v);
        if w > self.max_weight {
            return Err(Error::Budget(format!(
                "query weight {w} above indexed bound {}",
                self.max_weight
            )));
        }
        let mut r = v.to_vec();
        self.monoid.reduce(&mut r);
        Ok(self.members.contains(&r))
    }

    /// In the cone but not in the monoid.
    pub fn is_exceptional(&self, v: &[i64]) -> Result<bool> {
        Ok(self.monoid.cone.contains(v) && !self.contains(v)?)
    }
}

/// Memoized membership for a pointed [`Monoid`], exploring only the part of
/// the cone below each query.
pub struct LazyMembership<'a> {
    monoid: &'a Monoid,
    memo: HashMap<IVec, bool>,
    max_points: usize,
}

impl<'a> LazyMembership<'a> {
    pub fn new(monoid: &'a Monoid, budget: &Budget) -> Result<Self> {
        if !monoid.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(LazyMembership {
            monoid,
            memo: HashMap::new(),
            max_points: budget.max_points,
        })
    }

    pub fn contains(&mut self, v: &[i64]) -> Result<bool> {
        if is_zero(v) {
            return Ok(true);
        }
        if !self.monoid.cone.contains(v) {
            return Ok(false);
        }
        if let Some(&m) = self.memo.get(v) {
            return Ok(m);
        }
        let steps = &self.monoid.steps;
        let mut stack: Vec<(IVec, usize)> = vec![(v.to_vec(), 0)];
        while let Some((x, i)) = stack.last_mut() {
            if *i == steps.len() {
                let (x, _) = stack.pop().expect("nonempty");
                self.memo.insert(x, false);
                continue;
            }
            let y: IVec = x.iter().zip(&steps[*i]).map(|(a, b)| a - b).collect();
            *i += 1;
            if !self.monoid.cone.contains(&y) {
                continue;
            }
            let found = is_zero(&y) || self.memo.get(&y) == Some(&true);
            if found {
                // every point on the stack is one step above the next
                for (x, _) in stack.drain(..) {
                    self.memo.insert(x, true);
                }
                break;
            }
            if !self.memo.contains_key(&y) {
                stack.push((y, 0));
            }
            if self.memo.len() + stack.len() > self.max_points {
                return Err(Error::Budget(format!(
                    "membership search exceeds {} points",
                    self.max_points
                )));
            }
        }
        Ok(self.memo[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn ex1_membership() {
        let m = Monoid::new(&[vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 1]]).unwrap();
        assert!(m.is_pointed());
        let idx = m.index(20, &budget()).unwrap();
        for v in [[0, 0], [4, 3], [2, 2], [1, 1], [3, 1]] {
            assert!(idx.contains(&v).unwrap(), "{v:?}");
        }
        for v in [[1, 0], [0, 1], [1, 2], [3, 0], [2, 1], [-1, 0]] {
            assert!(!idx.contains(&v).unwrap(), "{v:?}");
        }
        assert!(idx.is_exceptional(&[3, 2]).unwrap());
        assert!(!idx.is_exceptional(&[-1, 2]).unwrap());
        assert!(idx.contains(&[30, 30]).is_err());
    }

    #[test]
    fn lazy_agrees_with_index() {
        let m =
            Monoid::new(&[vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 1], vec![3, -1]]).unwrap();
        let idx = m.index(60, &budget()).unwrap();
        let mut lazy = LazyMembership::new(&m, &budget()).unwrap();
        for x in -5..15 {
            for y in -5..15 {
                let v = [x, y];
                if dot(m.weight(), &v) <= 60 {
                    assert_eq!(
                        lazy.contains(&v).unwrap(),
                        idx.contains(&v).unwrap(),
                        "{v:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn interior_point_gives_whole_lattice() {
        // (1,1) is interior to the hull of ex1, so (1,1) - A generates Z^2 as a monoid.
        let reflected: Vec<IVec> = [[0, 0], [2, 0], [0, 3], [1, 1]]
            .iter()
            .map(|a| vec![1 - a[0], 1 - a[1]])
            .collect();
        let m = Monoid::new(&reflected).unwrap();
        assert!(!m.is_pointed());
        let idx = m.index(0, &budget()).unwrap();
        for v in [[0, 0], [5, -7], [-3, 2], [1, 0]] {
            assert!(idx.contains(&v).unwrap());
        }
    }

    #[test]
    fn half_plane_with_lattice_gaps() {
        // Lineality along x generated by +-2; steps (1,1). P = {(x,y): y >= 0, x = y mod 2}.
        let m = Monoid::new(&[vec![0, 0], vec![2, 0], vec![-2, 0], vec![1, 1]]).unwrap();
        assert!(!m.is_pointed());
        let idx = m.index(10, &budget()).unwrap();
        assert!(idx.contains(&[-7, 3]).unwrap());
        assert!(idx.contains(&[100, 0]).unwrap());
        assert!(!idx.contains(&[1, 0]).unwrap());
        assert!(!idx.contains(&[0, 3]).unwrap());
        assert!(!idx.contains(&[0, -1]).unwrap());
    }

    #[test]
    fn one_dimensional_matches_semigroup() {
        let m = Monoid::new(&[vec![0], vec![3], vec![5]]).unwrap();
        let idx = m.index(20, &budget()).unwrap();
        let gaps: Vec<i64> = (0..=20).filter(|&x| !idx.contains(&[x]).unwrap()).collect();
        assert_eq!(gaps, vec![1, 2, 4, 7]);
    }
}
