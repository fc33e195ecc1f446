//! Exact rational geometry: hulls, cones, lattices and volumes.
//!
//! No floating point is used anywhere; facet normals are primitive integer
//! vectors and all fractions are arbitrary precision.

mod cone;
mod lattice;
pub mod linalg;
mod polytope;

pub use cone::{pointedness, Cone, ConeND};
pub use lattice::{
    elementary_divisors, hermite_normal_form, validate_lattice, Hnf, LatticeBasisB, VectorSetND,
};
pub use linalg::IVec;
pub use polytope::{
    caratheodory_cover, hull, triangulate, volume, HalfSpace, IntHull, RationalPolytope,
};

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Calls `f` on every integer point of the box `lo <= x <= hi`.
pub fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == x.len() {
                return;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn box_iteration() {
        let mut n = 0;
        for_each_in_box(&[0, -1], &[2, 1], |_| n += 1);
        assert_eq!(n, 9);
        let mut n = 0;
        for_each_in_box(&[], &[], |_| n += 1);
        assert_eq!(n, 1);
    }
}
