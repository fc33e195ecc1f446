use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::geometry::lattice::VectorSetND;
use crate::geometry::linalg::{
    det_i64, dot, fraction_string, gcd_all, orthogonal_complement, rank, sub, IVec,
};
use crate::geometry::{combinations, for_each_in_box};
use crate::Budget;

/// Facet `normal . x <= offset` of the hull of a set of integer points, with
/// the indices of the points lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: IVec,
    pub offset: i64,
    pub tight: Vec<usize>,
}

/// Convex hull of finitely many integer points spanning `R^n` affinely.
///
/// Facets are found by testing the hyperplane through every affinely
/// independent `n`-subset, which is exact and dimension-generic but only
/// meant for small point sets.
#[derive(Debug, Clone)]
pub struct IntHull {
    pub dim: usize,
    pub points: Vec<IVec>,
    pub facets: Vec<Facet>,
    pub vertices: Vec<usize>,
}

impl IntHull {
    pub fn new(points: &[IVec]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptySet);
        };
        let dim = first.len();
        let diffs: Vec<IVec> = points.iter().map(|p| sub(p, first)).collect();
        if rank(&diffs) < dim {
            return Err(Error::NotFullDimensional);
        }
        let mut seen = HashSet::new();
        let mut facets = Vec::new();
        for subset in combinations(points.len(), dim) {
            let base = &points[subset[0]];
            let rows: Vec<IVec> = subset[1..].iter().map(|&i| sub(&points[i], base)).collect();
            let mut normal = orthogonal_complement(&rows, dim);
            let g = gcd_all(&normal);
            if g == 0 {
                continue;
            }
            normal.iter_mut().for_each(|x| *x /= g);
            let offset = dot(&normal, base);
            let (mut above, mut below) = (false, false);
            for p in points {
                let v = dot(&normal, p);
                above |= v > offset;
                below |= v < offset;
            }
            let (normal, offset) = match (above, below) {
                (false, _) => (normal, offset),
                (true, false) => (normal.iter().map(|x| -x).collect(), -offset),
                (true, true) => continue,
            };
            if !seen.insert((normal.clone(), offset)) {
                continue;
            }
            let tight = (0..points.len())
                .filter(|&i| dot(&normal, &points[i]) == offset)
                .collect();
            facets.push(Facet {
                normal,
                offset,
                tight,
            });
        }
        let vertices = (0..points.len())
            .filter(|&i| {
                let normals: Vec<IVec> = facets
                    .iter()
                    .filter(|f| f.tight.contains(&i))
                    .map(|f| f.normal.clone())
                    .collect();
                rank(&normals) == dim
            })
            .collect();
        Ok(IntHull {
            dim,
            points: points.to_vec(),
            facets,
            vertices,
        })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) <= f.offset)
    }

    fn lex_min_vertex(&self) -> usize {
        *self
            .vertices
            .iter()
            .min_by_key(|&&i| &self.points[i])
            .expect("full-dimensional hull has vertices")
    }
}

/// Splits the hull of `points` into simplices, each returned as `dim + 1`
/// indices into `points`.
///
/// Pyramids from `apex` (default: the lexicographically least vertex) over
/// every facet not containing it, with each facet triangulated recursively
/// in one dimension lower.
pub fn triangulate(points: &[IVec], apex: Option<usize>) -> Result<Vec<Vec<usize>>> {
    let idx: Vec<usize> = (0..points.len()).collect();
    triangulate_rec(points, &idx, apex)
}

fn triangulate_rec(points: &[IVec], idx: &[usize], apex: Option<usize>) -> Result<Vec<Vec<usize>>> {
    if points.first().map_or(0, |p| p.len()) == 0 {
        return Ok(vec![vec![idx[0]]]);
    }
    let hull = IntHull::new(points)?;
    let apex = apex.unwrap_or_else(|| hull.lex_min_vertex());
    let mut out = Vec::new();
    for f in hull.facets.iter().filter(|f| !f.tight.contains(&apex)) {
        // Dropping a coordinate where the normal is nonzero is injective on
        // the facet hyperplane.
        let j = f
            .normal
            .iter()
            .position(|&x| x != 0)
            .expect("nonzero normal");
        let sub_pts: Vec<IVec> = f
            .tight
            .iter()
            .map(|&t| {
                points[t]
                    .iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sub_idx: Vec<usize> = f.tight.iter().map(|&t| idx[t]).collect();
        for mut s in triangulate_rec(&sub_pts, &sub_idx, None)? {
            s.insert(0, idx[apex]);
            out.push(s);
        }
    }
    Ok(out)
}

/// Half-space `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: IVec,
    pub offset: BigRational,
}

/// A full-dimensional polytope carried in both vertex and half-space form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<BigRational>>,
    pub halfspaces: Vec<HalfSpace>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn dot_rat(normal: &[i64], x: &[BigRational]) -> BigRational {
    normal
        .iter()
        .zip(x)
        .fold(BigRational::zero(), |acc, (&a, v)| acc + v * rat(a))
}

impl RationalPolytope {
    fn from_int_hull(h: &IntHull) -> Self {
        let mut vertices: Vec<IVec> = h.vertices.iter().map(|&i| h.points[i].clone()).collect();
        vertices.sort();
        let mut halfspaces: Vec<HalfSpace> = h
            .facets
            .iter()
            .map(|f| HalfSpace {
                normal: f.normal.clone(),
                offset: rat(f.offset),
            })
            .collect();
        halfspaces.sort_by(|a, b| a.normal.cmp(&b.normal));
        RationalPolytope {
            dim: h.dim,
            vertices: vertices
                .iter()
                .map(|v| v.iter().map(|&x| rat(x)).collect())
                .collect(),
            halfspaces,
        }
    }

    /// The box `lo <= x <= hi`.
    pub fn from_box(lo: &[i64], hi: &[i64]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.iter().zip(hi).any(|(l, h)| l >= h) {
            return Err(Error::NotFullDimensional);
        }
        let n = lo.len();
        let mut corners = Vec::new();
        for_each_in_box(&vec![0; n], &vec![1; n], |bits| {
            corners.push(
                (0..n)
                    .map(|i| if bits[i] == 0 { lo[i] } else { hi[i] })
                    .collect::<IVec>(),
            );
        });
        Ok(Self::from_int_hull(&IntHull::new(&corners)?))
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.halfspaces
            .iter()
            .all(|h| dot_rat(&h.normal, x) <= h.offset)
    }

    /// Whether the integer point `x` lies in `n_fold * self`.
    pub fn contains_scaled(&self, x: &[i64], n_fold: u64) -> bool {
        self.halfspaces.iter().all(|h| {
            let lhs = BigInt::from(dot(&h.normal, x)) * h.offset.denom();
            lhs <= h.offset.numer() * BigInt::from(n_fold)
        })
    }

    pub fn scaled(&self, n_fold: u64) -> RationalPolytope {
        let k = rat(n_fold as i64);
        RationalPolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x * &k).collect())
                .collect(),
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpace {
                    normal: h.normal.clone(),
                    offset: &h.offset * &k,
                })
                .collect(),
        }
    }

    /// Smallest integer box containing the polytope.
    pub fn integer_bounding_box(&self) -> (IVec, IVec) {
        let lo = (0..self.dim)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v[i].ceil().to_integer())
                    .min()
                    .unwrap()
                    .to_i64()
                    .unwrap()
            })
            .collect();
        let hi = (0..self.dim)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v[i].floor().to_integer())
                    .max()
                    .unwrap()
                    .to_i64()
                    .unwrap()
            })
            .collect();
        (lo, hi)
    }

    /// All integer points, enumerated over the bounding box.
    pub fn lattice_points(&self, budget: &Budget) -> Result<Vec<IVec>> {
        let (lo, hi) = self.integer_bounding_box();
        let volume: u128 = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| (h - l + 1).max(0) as u128)
            .product();
        if volume > budget.max_points as u128 {
            return Err(Error::Budget(format!("{volume} candidate lattice points")));
        }
        let one = BigInt::one();
        let mut out = Vec::new();
        for_each_in_box(&lo, &hi, |x| {
            if self.halfspaces.iter().all(|h| {
                debug_assert!(h.offset.denom() == &one || !h.offset.denom().is_negative());
                BigInt::from(dot(&h.normal, x)) * h.offset.denom() <= *h.offset.numer()
            }) {
                out.push(x.to_vec());
            }
        });
        Ok(out)
    }
}

impl Serialize for RationalPolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct H<'a> {
            normal: &'a [i64],
            offset: String,
        }
        let vertices: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(fraction_string).collect())
            .collect();
        let halfspaces: Vec<H> = self
            .halfspaces
            .iter()
            .map(|h| H {
                normal: &h.normal,
                offset: fraction_string(&h.offset),
            })
            .collect();
        let mut st = s.serialize_struct("RationalPolytope", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("halfspaces", &halfspaces)?;
        st.serialize_field("vertices", &vertices)?;
        st.end()
    }
}

/// `H(A)` in vertex and half-space form.
pub fn hull(set: &VectorSetND) -> Result<RationalPolytope> {
    Ok(RationalPolytope::from_int_hull(&IntHull::new(
        set.points(),
    )?))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact volume, by triangulating and summing simplex volumes.
pub fn volume(p: &RationalPolytope) -> Result<BigRational> {
    let n = p.dim;
    let lcm = p
        .vertices
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<IVec> = p
        .vertices
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    (x * BigRational::from_integer(lcm.clone()))
                        .to_integer()
                        .to_i64()
                        .expect("coordinate fits")
                })
                .collect()
        })
        .collect();
    let mut total = BigInt::zero();
    for simplex in triangulate(&scaled, None)? {
        let base = &scaled[simplex[0]];
        let rows: Vec<IVec> = simplex[1..]
            .iter()
            .map(|&i| sub(&scaled[i], base))
            .collect();
        total += BigInt::from(det_i64(&rows).abs());
    }
    Ok(BigRational::new(total, factorial(n) * lcm.pow(n as u32)))
}

/// Simplices `B ⊂ A` with `0 ∈ B` and `#B = n + 1`, affinely independent,
/// whose hulls cover `H(A)` (and hence whose scaled hulls cover `N H(A)`).
///
/// Pyramids from the origin over a triangulation of each facet of `H(A)` not
/// containing the origin.
pub fn caratheodory_cover(set: &VectorSetND) -> Result<Vec<Vec<IVec>>> {
    let zero = set
        .points()
        .iter()
        .position(|p| p.iter().all(|&x| x == 0))
        .ok_or(Error::MissingZero)?;
    let simplices = triangulate(set.points(), Some(zero))?;
    Ok(simplices
        .into_iter()
        .map(|s| {
            let mut b: Vec<IVec> = s.into_iter().map(|i| set.points()[i].clone()).collect();
            b[1..].sort();
            b
        })
        .collect())
}
