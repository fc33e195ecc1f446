use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::combinations;
use crate::geometry::lattice::VectorSetND;
use crate::geometry::linalg::{dot, is_zero, rank, solve_independent, IVec};
use crate::geometry::polytope::IntHull;

/// The cone `{x : normal . x <= 0 for every inequality}` generated by a finite
/// set containing the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub dim: usize,
    pub inequalities: Vec<IVec>,
}

impl Cone {
    /// Cone of `points`, read off the facets of their hull through the origin.
    pub fn generated_by(points: &[IVec]) -> Result<Cone> {
        let hull = IntHull::new(points)?;
        if !hull.contains(&vec![0; hull.dim]) {
            return Err(Error::MissingZero);
        }
        let inequalities = hull
            .facets
            .iter()
            .filter(|f| f.offset == 0)
            .map(|f| f.normal.clone())
            .collect();
        Ok(Cone {
            dim: hull.dim,
            inequalities,
        })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.inequalities.iter().all(|n| dot(n, x) <= 0)
    }

    /// Whether `x` lies in the largest linear subspace inside the cone.
    pub fn in_lineality(&self, x: &[i64]) -> bool {
        self.inequalities.iter().all(|n| dot(n, x) == 0)
    }

    pub fn is_pointed(&self) -> bool {
        rank(&self.inequalities) == self.dim
    }

    /// A linear form vanishing on the lineality space and positive on every
    /// other point of the cone.
    pub fn weight(&self) -> IVec {
        let mut w = vec![0; self.dim];
        for n in &self.inequalities {
            for (wi, ni) in w.iter_mut().zip(n) {
                *wi -= ni;
            }
        }
        w
    }
}

/// The cone `C_A` with either a pointedness witness or a certificate that it
/// contains a line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeND {
    pub generators: Vec<IVec>,
    /// Integer `w` with `w . a >= 1` for every nonzero generator.
    pub pointed_witness: Option<IVec>,
    /// Positive integer multiples of nonzero generators summing to zero.
    pub null_combination: Option<Vec<(IVec, u64)>>,
    #[serde(skip)]
    pub cone: Cone,
}

fn null_combination(gens: &[IVec], dim: usize) -> Option<Vec<(IVec, u64)>> {
    // 0 lies in the hull of the nonzero generators; Carathéodory lets us look
    // only at affinely independent subsets of size <= dim + 1.
    for size in 1..=(dim + 1).min(gens.len()) {
        for subset in combinations(gens.len(), size) {
            let cols: Vec<IVec> = subset
                .iter()
                .map(|&i| {
                    let mut c = gens[i].clone();
                    c.push(1);
                    c
                })
                .collect();
            let mut rhs = vec![0; dim];
            rhs.push(1);
            let Some(lambda) = solve_independent(&cols, &rhs) else {
                continue;
            };
            if lambda
                .iter()
                .any(|l| l.is_negative() || l.numer().sign() == num_bigint::Sign::NoSign)
            {
                continue;
            }
            let den = lambda
                .iter()
                .fold(BigInt::from(1), |acc, l| acc.lcm(l.denom()));
            return Some(
                subset
                    .iter()
                    .zip(&lambda)
                    .map(|(&i, l)| {
                        let k =
                            (l * num_rational::BigRational::from_integer(den.clone())).to_integer();
                        (gens[i].clone(), k.to_u64().expect("small coefficient"))
                    })
                    .collect(),
            );
        }
    }
    None
}

/// Finds `w` with `w . a >= 1` on all nonzero `a ∈ A`, or a nonnegative
/// combination of nonzero elements summing to zero when no such `w` exists.
pub fn pointedness(set: &VectorSetND) -> Result<ConeND> {
    let cone = Cone::generated_by(set.points())?;
    let generators: Vec<IVec> = set.nonzero().cloned().collect();
    if cone.is_pointed() {
        let w = cone.weight();
        debug_assert!(generators.iter().all(|a| dot(&w, a) >= 1));
        return Ok(ConeND {
            generators,
            pointed_witness: Some(w),
            null_combination: None,
            cone,
        });
    }
    let combo = null_combination(&generators, set.dim());
    debug_assert!(combo.as_ref().is_some_and(|c| {
        let mut s = vec![0; set.dim()];
        for (g, k) in c {
            for (si, gi) in s.iter_mut().zip(g) {
                *si += *k as i64 * gi;
            }
        }
        is_zero(&s)
    }));
    Ok(ConeND {
        generators,
        pointed_witness: None,
        null_combination: combo,
        cone,
    })
}
