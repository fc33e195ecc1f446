use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::{dot, scale, sub, IVec};
use crate::geometry::{hull, RationalPolytope, VectorSetND};
use crate::nd::monoid::{Monoid, MonoidIndex};
use crate::nd::sumset::SumsetLevelsND;
use crate::Budget;

fn max_weight(w: &[i64], region: &RationalPolytope) -> i64 {
    region
        .vertices
        .iter()
        .map(|v| {
            let s = v.iter().zip(w).fold(
                num_rational::BigRational::from_integer(0.into()),
                |acc, (x, &wi)| acc + x * num_rational::BigRational::from_integer(wi.into()),
            );
            num_traits::ToPrimitive::to_i64(&s.ceil().to_integer()).expect("weight fits in i64")
        })
        .max()
        .unwrap_or(0)
        .max(0)
}

fn pointed_monoid(set: &VectorSetND) -> Result<Monoid> {
    let m = Monoid::new(set.points())?;
    if !m.is_pointed() {
        return Err(Error::NotPointed);
    }
    Ok(m)
}

/// `E(A)` restricted to the integer points of `region`, sorted.
pub fn exceptional_truncated(
    set: &VectorSetND,
    region: &RationalPolytope,
    budget: &Budget,
) -> Result<Vec<IVec>> {
    if region.dim != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: region.dim,
        });
    }
    let monoid = pointed_monoid(set)?;
    let index = monoid.index(max_weight(monoid.weight(), region), budget)?;
    let mut out = Vec::new();
    for x in region.lattice_points(budget)? {
        if index.is_exceptional(&x)? {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// The set `E_N(A)` at one `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ENSlice {
    pub n: u64,
    pub points: Vec<IVec>,
}

impl ENSlice {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `A` together with the monoids of every reflection `a - A`.
///
/// Reflections at non-vertices have cones containing lines; their monoids
/// are handled modulo the lineality group rather than rejected.
struct Reflections<'a> {
    set: &'a VectorSetND,
    hull: RationalPolytope,
    base: Monoid,
    reflected: Vec<(IVec, Monoid)>,
}

struct Indexes<'m> {
    base: MonoidIndex<'m>,
    reflected: Vec<MonoidIndex<'m>>,
}

impl<'a> Reflections<'a> {
    fn new(set: &'a VectorSetND) -> Result<Self> {
        let base = pointed_monoid(set)?;
        let hull = hull(set)?;
        let reflected = set
            .points()
            .iter()
            .map(|a| {
                let pts: Vec<IVec> = set.points().iter().map(|x| sub(a, x)).collect();
                Ok((a.clone(), Monoid::new(&pts)?))
            })
            .collect::<Result<_>>()?;
        Ok(Reflections {
            set,
            hull,
            base,
            reflected,
        })
    }

    fn indexes(&self, n_max: u64, budget: &Budget) -> Result<Indexes<'_>> {
        let region = self.hull.scaled(n_max);
        let base = self
            .base
            .index(max_weight(self.base.weight(), &region), budget)?;
        let reflected = self
            .reflected
            .iter()
            .map(|(a, m)| {
                // max of w.(aN - x) over x in NH(A)
                let neg: Vec<i64> = m.weight().iter().map(|x| -x).collect();
                let bound = dot(m.weight(), &scale(a, n_max as i64)) + max_weight(&neg, &region);
                m.index(bound.max(0), budget)
            })
            .collect::<Result<_>>()?;
        Ok(Indexes { base, reflected })
    }

    fn is_member(&self, idx: &Indexes<'_>, x: &[i64], n: u64) -> Result<bool> {
        if idx.base.is_exceptional(x)? {
            return Ok(true);
        }
        for ((a, _), ri) in self.reflected.iter().zip(&idx.reflected) {
            if ri.is_exceptional(&sub(&scale(a, n as i64), x))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Integer points of `N H(A)` and the slice `E_N(A)` among them.
    fn slice(&self, idx: &Indexes<'_>, n: u64, budget: &Budget) -> Result<(Vec<IVec>, ENSlice)> {
        let lattice = self.hull.scaled(n).lattice_points(budget)?;
        let mut points = Vec::new();
        for x in &lattice {
            if self.is_member(idx, x, n)? {
                points.push(x.clone());
            }
        }
        points.sort();
        Ok((lattice, ENSlice { n, points }))
    }
}

pub fn e_n_slice(set: &VectorSetND, n: u64, budget: &Budget) -> Result<ENSlice> {
    let r = Reflections::new(set)?;
    let idx = r.indexes(n, budget)?;
    Ok(r.slice(&idx, n, budget)?.1)
}

/// `E_N(A)` for every `N` in `1..=n_max`, sharing one membership index.
pub fn e_n_slices(set: &VectorSetND, n_max: u64, budget: &Budget) -> Result<Vec<ENSlice>> {
    let r = Reflections::new(set)?;
    let idx = r.indexes(n_max, budget)?;
    (1..=n_max)
        .map(|n| Ok(r.slice(&idx, n, budget)?.1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Row {
    pub n: u64,
    pub holds: bool,
    pub sumset_size: usize,
    pub hull_points: usize,
    pub exceptional: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub rows: Vec<Theorem2Row>,
    /// Least `N'` with equality on all of `[N', n_max]`; absent if it fails at `n_max`.
    pub onset: Option<u64>,
}

/// Checks `NA = (NH(A) ∩ Z^n) ∖ E_N(A)` for `N = 1..=n_max`.
///
/// The inclusion of the left side in the right side always holds; a
/// violation is reported as a counterexample.
pub fn verify_theorem2(set: &VectorSetND, n_max: u64, budget: &Budget) -> Result<Theorem2Report> {
    let r = Reflections::new(set)?;
    let idx = r.indexes(n_max, budget)?;
    let mut levels = SumsetLevelsND::new(r.set, *budget);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let na = levels.advance()?;
        let (lattice, slice) = r.slice(&idx, n, budget)?;
        let mut allowed = 0;
        for x in &lattice {
            if slice.points.binary_search(x).is_err() {
                allowed += 1;
            }
        }
        for x in na.points() {
            if slice.points.binary_search(x).is_ok() || !r.hull.contains_scaled(x, n) {
                return Err(Error::Counterexample(format!(
                    "{x:?} in {n}A but outside NH(A) minus E_N"
                )));
            }
        }
        rows.push(Theorem2Row {
            n,
            holds: allowed == na.len(),
            sumset_size: na.len(),
            hull_points: lattice.len(),
            exceptional: slice.len(),
        });
    }
    let onset = if rows.last().is_some_and(|r| r.holds) {
        let failing = rows.iter().rev().find(|r| !r.holds).map_or(0, |r| r.n);
        Some(failing + 1)
    } else {
        None
    };
    Ok(Theorem2Report { rows, onset })
}
