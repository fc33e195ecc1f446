//! Integer lattices: Hermite normal form, elementary divisors, lattice
//! validation and fundamental domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::linalg::{det, IVec};

/// Row-style Hermite normal form `H = U M` of an integer matrix `M`.
///
/// The first `rank` rows of `basis` are in echelon form with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`; the remaining rows
/// are zero. `transform` is unimodular.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub basis: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn row_axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let s = rows[src].clone();
    for (d, x) in rows[dst].iter_mut().zip(&s) {
        *d -= q * x;
    }
}

pub fn hermite_normal_form(rows: &[IVec]) -> Hnf {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == k {
            break;
        }
        loop {
            // Smallest nonzero entry at or below row r moves up to row r.
            let best = (r..k)
                .filter(|&i| !h[i][c].is_zero())
                .min_by_key(|&i| h[i][c].abs());
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..k {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    row_axpy(&mut h, i, r, &q);
                    row_axpy(&mut u, i, r, &q);
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf {
        basis: h,
        transform: u,
        rank: r,
        pivots,
    }
}

fn big_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    // Laplace expansion; only used for tiny minors.
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * big_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::geometry::combinations(n, k)
}

/// Elementary divisors of the lattice spanned by `rows` in `Z^n`, padded with
/// zeros up to `n` when the rank is deficient.
pub fn elementary_divisors(rows: &[IVec], n: usize) -> Vec<BigInt> {
    let hnf = hermite_normal_form(rows);
    let basis: Vec<Vec<BigInt>> = hnf.basis[..hnf.rank].to_vec();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for size in 1..=hnf.rank {
        let mut g = BigInt::zero();
        for rs in subsets(basis.len(), size) {
            for cs in subsets(n, size) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| basis[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&big_det(&minor));
            }
        }
        out.push(&g / &prev);
        prev = g;
    }
    out.resize(n, BigInt::zero());
    out
}

/// A finite set of integer vectors containing 0 whose integer span is `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorSetND {
    dim: usize,
    points: Vec<IVec>,
    /// Row `j` expresses the unit vector `e_j` as an integer combination of `points`.
    #[serde(skip)]
    unit_combinations: Vec<Vec<BigInt>>,
}

/// Checks that `points` contains 0, has a common dimension and generates `Z^n`.
pub fn validate_lattice(points: &[IVec]) -> Result<VectorSetND> {
    let Some(first) = points.first() else {
        return Err(Error::EmptySet);
    };
    let dim = first.len();
    if dim == 0 {
        return Err(Error::InvalidInput("zero-dimensional vectors".into()));
    }
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if !pts.iter().any(|p| p.iter().all(|&x| x == 0)) {
        return Err(Error::MissingZero);
    }
    let hnf = hermite_normal_form(&pts);
    let full = hnf.rank == dim
        && hnf
            .pivots
            .iter()
            .enumerate()
            .all(|(i, &c)| hnf.basis[i][c].is_one());
    if !full {
        return Err(Error::ProperSublattice {
            divisors: elementary_divisors(&pts, dim),
        });
    }
    // With a unimodular H equal to the identity on its first `dim` rows,
    // row j of the transform writes e_j in terms of the points.
    Ok(VectorSetND {
        dim,
        unit_combinations: hnf.transform[..dim].to_vec(),
        points: pts,
    })
}

impl VectorSetND {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted, distinct points; includes the zero vector.
    pub fn points(&self) -> &[IVec] {
        &self.points
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &IVec> {
        self.points.iter().filter(|p| p.iter().any(|&x| x != 0))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integer coefficients `c` with `v = sum_i c_i points[i]`.
    pub fn integer_combination(&self, v: &[i64]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.points.len()];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0 {
                continue;
            }
            for (o, u) in out.iter_mut().zip(&self.unit_combinations[j]) {
                *o += u * vj;
            }
        }
        out
    }

    /// Embeds a one-dimensional set.
    pub fn from_1d(elements: &[i64]) -> Result<VectorSetND> {
        let pts: Vec<IVec> = elements.iter().map(|&x| vec![x]).collect();
        validate_lattice(&pts)
    }
}

/// `n` linearly independent integer vectors, with the lattice they span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasisB {
    basis: Vec<IVec>,
    det: i128,
    /// `adjugate[i]` dotted with `x` gives `det * (coordinate i of x)`.
    adjugate: Vec<Vec<i128>>,
}

impl LatticeBasisB {
    pub fn new(basis: Vec<IVec>) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|b| b.len() != n) {
            return Err(Error::InvalidInput("basis must be n vectors in Z^n".into()));
        }
        // Columns are the basis vectors.
        let m: Vec<Vec<i128>> = (0..n)
            .map(|i| basis.iter().map(|b| b[i] as i128).collect())
            .collect();
        let d = det(&m);
        if d == 0 {
            return Err(Error::InvalidInput(
                "basis vectors are linearly dependent".into(),
            ));
        }
        let mut adjugate = vec![vec![0i128; n]; n];
        for (i, row) in adjugate.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let minor: Vec<Vec<i128>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                    .collect();
                let cof = det(&minor);
                *entry = if (i + j) % 2 == 0 { cof } else { -cof };
            }
        }
        let (det, adjugate) = if d < 0 {
            (
                -d,
                adjugate
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| -x).collect())
                    .collect(),
            )
        } else {
            (d, adjugate)
        };
        Ok(LatticeBasisB {
            basis,
            det,
            adjugate,
        })
    }

    pub fn basis(&self) -> &[IVec] {
        &self.basis
    }

    /// `|det|`, the index of the lattice in `Z^n`.
    pub fn det(&self) -> i128 {
        self.det
    }

    /// Numerators of the coordinates of `x` in the basis, over [`Self::det`].
    pub fn coordinate_numerators(&self, x: &[i64]) -> Vec<i128> {
        self.adjugate
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, &v)| a * v as i128).sum())
            .collect()
    }

    /// Writes `x = l + sum k_i b_i` with `l` in the half-open fundamental
    /// parallelepiped and integer `k`.
    pub fn reduce(&self, x: &[i64]) -> (IVec, Vec<i64>) {
        let k: Vec<i64> = self
            .coordinate_numerators(x)
            .into_iter()
            .map(|num| {
                Integer::div_floor(&num, &self.det)
                    .to_i64()
                    .expect("coordinate fits i64")
            })
            .collect();
        let mut l = x.to_vec();
        for (ki, b) in k.iter().zip(&self.basis) {
            for (lj, bj) in l.iter_mut().zip(b) {
                *lj -= ki * bj;
            }
        }
        (l, k)
    }

    pub fn in_fundamental_domain(&self, x: &[i64]) -> bool {
        self.coordinate_numerators(x)
            .iter()
            .all(|&c| 0 <= c && c < self.det)
    }

    /// Integer points of `{sum c_i b_i : c_i in [0, 1)}`; there are exactly
    /// `det` of them.
    pub fn fundamental_points(&self) -> Vec<IVec> {
        let n = self.basis.len();
        let lo: Vec<i64> = (0..n)
            .map(|j| self.basis.iter().map(|b| b[j].min(0)).sum())
            .collect();
        let hi: Vec<i64> = (0..n)
            .map(|j| self.basis.iter().map(|b| b[j].max(0)).sum())
            .collect();
        let mut out = Vec::with_capacity(self.det as usize);
        crate::geometry::for_each_in_box(&lo, &hi, |x| {
            if self.in_fundamental_domain(x) {
                out.push(x.to_vec());
            }
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ex1() -> Vec<IVec> {
        vec![vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 1]]
    }

    #[test]
    fn validate_examples() {
        assert!(validate_lattice(&ex1()).is_ok());
        match validate_lattice(&[vec![0, 0], vec![2, 0], vec![0, 2]]) {
            Err(Error::ProperSublattice { divisors }) => {
                assert_eq!(divisors, vec![BigInt::from(2), BigInt::from(2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(validate_lattice(&[vec![0], vec![1]]).is_ok());
        assert_eq!(
            validate_lattice(&[vec![1, 0], vec![0, 1]]),
            Err(Error::MissingZero)
        );
        assert!(matches!(
            validate_lattice(&[vec![0, 0], vec![1]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(validate_lattice(&[]), Err(Error::EmptySet));
        match validate_lattice(&[vec![0, 0], vec![1, 1]]) {
            Err(Error::ProperSublattice { divisors }) => {
                assert_eq!(divisors, vec![BigInt::one(), BigInt::zero()])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn integer_combination_reconstructs() {
        let a = validate_lattice(&ex1()).unwrap();
        for v in [vec![1, 0], vec![0, 1], vec![-3, 7], vec![1, 2]] {
            let c = a.integer_combination(&v);
            let mut sum = vec![BigInt::zero(); 2];
            for (ci, p) in c.iter().zip(a.points()) {
                for (s, &x) in sum.iter_mut().zip(p) {
                    *s += ci * x;
                }
            }
            assert_eq!(sum, v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn hnf_is_echelon_and_unimodular_transform() {
        let m = vec![vec![4, 6, 2], vec![2, 3, 7], vec![6, 9, 9], vec![0, 1, 1]];
        let h = hermite_normal_form(&m);
        assert_eq!(h.rank, 3);
        for (i, row) in h.transform.iter().enumerate() {
            let prod: Vec<BigInt> = (0..3)
                .map(|c| {
                    row.iter()
                        .zip(&m)
                        .map(|(u, r)| u * BigInt::from(r[c]))
                        .sum()
                })
                .collect();
            assert_eq!(prod, h.basis[i]);
        }
    }

    #[test]
    fn fundamental_domain_of_ex1_basis() {
        let b = LatticeBasisB::new(vec![vec![2, 0], vec![0, 3]]).unwrap();
        let mut pts = b.fundamental_points();
        pts.sort();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![0, 0]);
        assert_eq!(pts[5], vec![1, 2]);
        let (l, k) = b.reduce(&[5, -1]);
        assert_eq!((l, k), (vec![1, 2], vec![2, -1]));
    }

    proptest! {
        #[test]
        fn fundamental_points_count_det(
            a in -6i64..7, b in -6i64..7, c in -6i64..7, d in -6i64..7,
            x in -20i64..20, y in -20i64..20,
        ) {
            let det = (a * d - b * c).abs();
            prop_assume!(det != 0 && det <= 50);
            let basis = LatticeBasisB::new(vec![vec![a, b], vec![c, d]]).unwrap();
            let pts = basis.fundamental_points();
            prop_assert_eq!(pts.len() as i64, det);
            // Every integer vector reduces to exactly one representative.
            let (l, k) = basis.reduce(&[x, y]);
            prop_assert!(pts.contains(&l));
            prop_assert_eq!(vec![l[0] + k[0] * a + k[1] * c, l[1] + k[0] * b + k[1] * d], vec![x, y]);
        }
    }
}
