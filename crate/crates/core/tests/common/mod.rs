#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use sumset_core::geometry::{pointedness, validate_lattice, VectorSetND};
use sumset_core::one_d::StampSet1D;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Random normalized `A` with `#A` in `sizes` and `b <= b_max`.
pub fn random_1d(
    rng: &mut impl Rng,
    sizes: std::ops::RangeInclusive<usize>,
    b_max: u64,
) -> StampSet1D {
    loop {
        let k = rng.gen_range(sizes.clone());
        let b = rng.gen_range((k as u64 - 1).max(1)..=b_max);
        let mut interior: Vec<u64> = (1..b).collect();
        interior.shuffle(rng);
        let mut elements: Vec<u64> = interior.into_iter().take(k - 2).collect();
        elements.extend([0, b]);
        elements.sort_unstable();
        if elements.len() == k && elements.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            return StampSet1D::from_normalized(&elements).unwrap();
        }
    }
}

/// Random `A ⊂ [lo, hi]^2` containing the origin, generating `Z^2`, with a
/// pointed cone.
pub fn random_pointed_2d(
    rng: &mut impl Rng,
    extra: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> VectorSetND {
    loop {
        let k = rng.gen_range(extra.clone());
        let mut pts = vec![vec![0, 0]];
        for _ in 0..k {
            pts.push(vec![rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)]);
        }
        let Ok(set) = validate_lattice(&pts) else {
            continue;
        };
        if pointedness(&set).unwrap().pointed_witness.is_some() {
            return set;
        }
    }
}

pub fn ex1() -> VectorSetND {
    validate_lattice(&[vec![0, 0], vec![2, 0], vec![0, 3], vec![1, 1]]).unwrap()
}

pub fn simplex(n: usize) -> VectorSetND {
    let mut pts = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    validate_lattice(&pts).unwrap()
}
