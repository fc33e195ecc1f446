use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::linalg::{add, is_nonnegative, is_zero, scale, solve_independent, sub, IVec};
use crate::geometry::{caratheodory_cover, for_each_in_box, LatticeBasisB, VectorSetND};
use crate::nd::monoid::{LazyMembership, Monoid};
use crate::Budget;

/// `v + P(B ∪ {0})` for linearly independent nonzero `B`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Piece {
    pub v: IVec,
    #[serde(rename = "B")]
    pub generators: Vec<IVec>,
}

impl Piece {
    pub fn contains(&self, x: &[i64]) -> bool {
        let d = sub(x, &self.v);
        if self.generators.is_empty() {
            return is_zero(&d);
        }
        solve_independent(&self.generators, &d)
            .is_some_and(|c| c.iter().all(|q| q.is_integer() && is_nonnegative(q)))
    }
}

/// `E(A)` as a finite union of pieces.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredExceptionalSet {
    pub pieces: Vec<Piece>,
}

impl StructuredExceptionalSet {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    /// Members with `lo <= x <= hi`, sorted.
    pub fn points_in_box(&self, lo: &[i64], hi: &[i64]) -> Vec<IVec> {
        let mut out = Vec::new();
        for_each_in_box(lo, hi, |x| {
            if self.contains(x) {
                out.push(x.to_vec());
            }
        });
        out
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    Integer::div_ceil(&a, &b)
}

/// Upper bound on the box side past which every `ℓ + Σ k_b b` lies in `P(A)`,
/// from the constructive translate `cMγ`, `γ = Σ_B b + (1/M) Σ_A a`.
fn translate_bound(set: &VectorSetND, lattice: &LatticeBasisB, classes: &[IVec]) -> i128 {
    let det = lattice.det();
    let total = set
        .points()
        .iter()
        .fold(vec![0; set.dim()], |acc, a| add(&acc, a));
    let p = lattice.coordinate_numerators(&total);
    // least M >= 1 with M det + p_i > 0 for every i
    let m = p
        .iter()
        .map(|&pi| if pi < 0 { (-pi).div_euclid(det) + 1 } else { 1 })
        .max()
        .unwrap_or(1)
        .max(1);
    let c = classes
        .iter()
        .flat_map(|l| set.integer_combination(l))
        .map(|x| -x)
        .max()
        .filter(|x| x.is_positive())
        .unwrap_or_else(BigInt::zero)
        .to_i128()
        .expect("coefficient fits i128");
    p.iter()
        .map(|&pi| ceil_div(c * m * det + c * pi, det))
        .max()
        .unwrap_or(0)
        .max(0)
}

struct ClassBox {
    side: usize,
    dim: usize,
    member: Vec<bool>,
}

impl ClassBox {
    fn at(&self, k: &[i64]) -> bool {
        let idx = k
            .iter()
            .rev()
            .fold(0usize, |acc, &x| acc * self.side + x as usize);
        self.member[idx]
    }
}

fn classify(
    oracle: &mut LazyMembership<'_>,
    l: &[i64],
    basis: &[IVec],
    side: i64,
) -> Result<ClassBox> {
    let n = basis.len();
    let mut member = Vec::with_capacity((side as usize + 1).pow(n as u32));
    let mut err = None;
    for_each_in_box(&vec![0; n], &vec![side; n], |k| {
        if err.is_some() {
            return;
        }
        let mut x = l.to_vec();
        for (ki, b) in k.iter().zip(basis) {
            x = add(&x, &scale(b, *ki));
        }
        match oracle.contains(&x) {
            Ok(m) => member.push(m),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ClassBox {
            side: side as usize + 1,
            dim: n,
            member,
        }),
    }
}

/// Whether membership on `[0, big]^n` is read off `[0, r]^n` by clamping.
fn stabilized(big: &ClassBox, r: i64) -> bool {
    let n = big.dim;
    let hi = vec![big.side as i64 - 1; n];
    let mut ok = true;
    for_each_in_box(&vec![0; n], &hi, |k| {
        if ok {
            let clamped: IVec = k.iter().map(|&x| x.min(r)).collect();
            ok = big.at(k) == big.at(&clamped);
        }
    });
    ok
}

/// Axis-parallel pieces of the complement of an upward-closed set that
/// stabilizes at `r`, as `(free coordinates, fixed values)`.
fn mann_pieces(class: &ClassBox, r: i64) -> Vec<(Vec<usize>, IVec)> {
    let n = class.dim;
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) - 1 {
        let free: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let fixed: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        for_each_in_box(&vec![0; fixed.len()], &vec![r - 1; fixed.len()], |c| {
            let mut k = vec![r; n];
            for (j, &cj) in fixed.iter().zip(c) {
                k[*j] = cj;
            }
            if class.at(&k) {
                return;
            }
            let extendable = fixed.iter().any(|&j| {
                let mut k2 = k.clone();
                k2[j] = r;
                !class.at(&k2)
            });
            if !extendable {
                out.push((free.clone(), k));
            }
        });
    }
    out
}

/// Decomposes `E(A)` into pieces `v + P(B_I ∪ {0})`, one simplicial cone of
/// the cover at a time, one residue class `ℓ` modulo the cone's lattice at
/// a time.
pub fn structure_decompose(set: &VectorSetND, budget: &Budget) -> Result<StructuredExceptionalSet> {
    let monoid = Monoid::new(set.points())?;
    if !monoid.is_pointed() {
        return Err(Error::NotPointed);
    }
    let mut oracle = LazyMembership::new(&monoid, budget)?;
    let n = set.dim();
    let mut pieces = BTreeSet::new();
    for simplex in caratheodory_cover(set)? {
        let basis: Vec<IVec> = simplex.into_iter().filter(|b| !is_zero(b)).collect();
        let lattice = LatticeBasisB::new(basis.clone())?;
        let classes = lattice.fundamental_points();
        let beta = basis.iter().fold(vec![0; n], |acc, b| add(&acc, b));
        let cap = i64::try_from(translate_bound(set, &lattice, &classes))
            .map_err(|_| Error::Budget("translate bound".into()))?;
        let check_size = |side: i64| -> Result<()> {
            let cells = (side as u128 + 1).pow(n as u32) * classes.len() as u128;
            if cells > budget.max_points as u128 {
                return Err(Error::Budget(format!(
                    "decomposition box of side {side} needs {cells} queries"
                )));
            }
            Ok(())
        };

        // smallest m with ℓ + m β in P(A), for every class
        let mut r = 0;
        for l in &classes {
            let mut found = None;
            for m in 0..=cap {
                if oracle.contains(&add(l, &scale(&beta, m)))? {
                    found = Some(m);
                    break;
                }
            }
            let m = found.ok_or_else(|| {
                Error::StructureViolation(format!("class {l:?} not in P(A) by the translate bound"))
            })?;
            r = r.max(m);
        }

        loop {
            let big = (2 * r + 1).max(cap + 1);
            check_size(big)?;
            let boxes = classes
                .iter()
                .map(|l| classify(&mut oracle, l, &basis, big))
                .collect::<Result<Vec<_>>>()?;
            if !boxes.iter().all(|b| stabilized(b, r)) {
                r = big;
                continue;
            }
            for (l, class) in classes.iter().zip(&boxes) {
                for (free, k) in mann_pieces(class, r) {
                    let mut v = l.clone();
                    for (j, b) in basis.iter().enumerate().filter(|(j, _)| !free.contains(j)) {
                        v = add(&v, &scale(b, k[j]));
                    }
                    let mut generators: Vec<IVec> =
                        free.iter().map(|&i| basis[i].clone()).collect();
                    generators.sort();
                    pieces.insert(Piece { v, generators });
                }
            }
            break;
        }
    }
    Ok(StructuredExceptionalSet {
        pieces: pieces.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_lattice;

    #[test]
    fn ex1_has_nine_families() {
        let a = validate_lattice(&[vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 1]]).unwrap();
        let d = structure_decompose(&a, &Budget::default()).unwrap();
        let mut expect: Vec<Piece> = [[0, 1], [1, 0], [1, 2]]
            .iter()
            .map(|v| Piece {
                v: v.to_vec(),
                generators: vec![vec![2, 0]],
            })
            .chain(
                // (3,0) + P((0,3)) would contain (3,3) = 3 (1,1)
                [[0, 1], [0, 2], [1, 0], [1, 2], [2, 1], [3, 2]]
                    .iter()
                    .map(|v| Piece {
                        v: v.to_vec(),
                        generators: vec![vec![0, 3]],
                    }),
            )
            .collect();
        expect.sort();
        assert_eq!(d.pieces, expect);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.starts_with(r#"{"pieces":[{"v":[0,1],"B":[[0,3]]}"#));
        let back: StructuredExceptionalSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn one_dimensional_pieces_are_points() {
        let a = validate_lattice(&[vec![0], vec![3], vec![5]]).unwrap();
        let d = structure_decompose(&a, &Budget::default()).unwrap();
        assert!(d.pieces.iter().all(|p| p.generators.is_empty()));
        let pts: Vec<IVec> = d.pieces.iter().map(|p| p.v.clone()).collect();
        assert_eq!(pts, vec![vec![1], vec![2], vec![4], vec![7]]);
    }

    #[test]
    fn simplex_is_empty() {
        let a = validate_lattice(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
        assert!(structure_decompose(&a, &Budget::default())
            .unwrap()
            .pieces
            .is_empty());
    }
}
