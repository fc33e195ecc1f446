use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::Bitmap;
use crate::error::{Error, Result};
use crate::one_d::profile::{exceptional_set_1d, residue_profile};
use crate::one_d::stamp::StampSet1D;
use crate::one_d::sumset::{sumset_1d, Sumset1D};

/// The set `[0, bN] \ (E(A) u (bN - E(b - A)))` as a bitmap.
pub fn interval_description(set: &StampSet1D, n_fold: u64) -> Bitmap {
    let top = set.b() * n_fold;
    let mut rhs = Bitmap::new(top as usize + 1);
    let low = exceptional_set_1d(set);
    let high = exceptional_set_1d(&set.reflect());
    for x in 0..=top {
        if !low.contains(x) && !(x <= top && high.contains(top - x)) {
            rhs.set(x as usize);
        }
    }
    rhs
}

/// Whether `N A` equals [`interval_description`] at this `N`.
pub fn theorem1_statement_holds(set: &StampSet1D, n_fold: u64) -> Result<bool> {
    if set.len() < 2 {
        return Err(Error::InvalidInput("need at least two elements".into()));
    }
    Ok(statement_holds_for(&sumset_1d(set, n_fold), set))
}

pub(crate) fn statement_holds_for(sumset: &Sumset1D, set: &StampSet1D) -> bool {
    sumset.bitmap() == &interval_description(set, sumset.n())
}

/// Witness that a long minimal representation is `copies` copies of `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SavchevChenCertificate {
    pub residue: u64,
    pub h: u64,
    pub copies: u64,
    /// `(k, (k / h) mod b)` for every `k` in `A` other than `0`, `h`, `b`.
    pub obstruction_checks: Vec<(u64, u64)>,
}

fn mod_inverse(h: u64, b: u64) -> Option<u64> {
    let e = (h as i64).extended_gcd(&(b as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(b as i64) as u64)
}

/// Certificates for every residue whose fewest-summand count exceeds `b / 2`.
///
/// Each certificate is validated: `n_a = copies * h`, `gcd(h, b) = 1`, and
/// `(k / h) mod b >= copies + 1` for the other elements `k`. Any failure is
/// returned as a structure violation.
pub fn savchev_chen_certify(set: &StampSet1D) -> Result<Vec<SavchevChenCertificate>> {
    if set.len() < 2 {
        return Err(Error::InvalidInput("need at least two elements".into()));
    }
    let b = set.b();
    let profile = residue_profile(set)?;
    let mut out = Vec::new();
    for row in &profile.rows {
        if 2 * row.least_count <= b {
            continue;
        }
        let copies = row.least_count;
        if row.least % copies != 0 {
            return Err(Error::StructureViolation(format!(
                "residue {}: n_a = {} is not a multiple of N_a = {copies}",
                row.a, row.least
            )));
        }
        let h = row.least / copies;
        if !(1..b).contains(&h) {
            return Err(Error::StructureViolation(format!(
                "residue {}: h = {h} out of range",
                row.a
            )));
        }
        let Some(inv) = mod_inverse(h, b) else {
            return Err(Error::StructureViolation(format!(
                "residue {}: gcd({h}, {b}) > 1",
                row.a
            )));
        };
        let mut obstruction_checks = Vec::new();
        for k in set.interior().filter(|&k| k != h) {
            let ratio = (k as u128 * inv as u128 % b as u128) as u64;
            if ratio < copies + 1 {
                return Err(Error::StructureViolation(format!(
                    "residue {}: ({k}/{h}) mod {b} = {ratio} < {}",
                    row.a,
                    copies + 1
                )));
            }
            obstruction_checks.push((k, ratio));
        }
        out.push(SavchevChenCertificate {
            residue: row.a,
            h,
            copies,
            obstruction_checks,
        });
    }
    Ok(out)
}

/// Coefficients `m_a` with `sum m_a a = 1`, chaining the extended Euclidean
/// algorithm over the nonzero elements.
pub fn bezout_coefficients(set: &StampSet1D) -> Option<Vec<(u64, BigInt)>> {
    let mut coeffs: Vec<(u64, BigInt)> = Vec::new();
    let mut g = BigInt::zero();
    for &a in set.elements().iter().filter(|&&a| a != 0) {
        let e = g.extended_gcd(&BigInt::from(a));
        for c in coeffs.iter_mut() {
            c.1 *= &e.x;
        }
        coeffs.push((a, e.y));
        g = e.gcd;
    }
    g.is_one().then_some(coeffs)
}

/// An explicit `N` with `E(A) ⊆ [0, N]`: with `sum m_a a = 1` and
/// `m = max(-m_a)`, take `N = b m sum(A)`.
pub fn ebound_construction(set: &StampSet1D) -> Result<BigInt> {
    if set.len() < 2 {
        return Err(Error::InvalidInput("need at least two elements".into()));
    }
    let coeffs = bezout_coefficients(set).expect("normalized sets have gcd 1");
    let m = coeffs
        .iter()
        .map(|(_, c)| -c)
        .fold(BigInt::zero(), |acc, x| acc.max(x));
    let total: u64 = set.elements().iter().sum();
    Ok(BigInt::from(set.b()) * m * BigInt::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> StampSet1D {
        StampSet1D::from_normalized(xs).unwrap()
    }

    #[test]
    fn statement_examples() {
        for n in 1..12 {
            assert!(theorem1_statement_holds(&set(&[0, 3, 5]), n).unwrap());
            assert!(theorem1_statement_holds(&set(&[0, 4, 9]), n).unwrap());
        }
        assert!(!theorem1_statement_holds(&set(&[0, 1, 5, 6]), 3).unwrap());
        assert!(theorem1_statement_holds(&set(&[0, 1, 5, 6]), 4).unwrap());
        let s = set(&[0, 2, 7, 9, 11]);
        for n in 2 * (11 / 2)..=33 {
            assert!(theorem1_statement_holds(&s, n).unwrap());
        }
    }

    #[test]
    fn certificates_for_0_1_b() {
        let certs = savchev_chen_certify(&set(&[0, 1, 9])).unwrap();
        let c = certs.iter().find(|c| c.residue == 8).unwrap();
        assert_eq!((c.h, c.copies), (1, 8));
        // Every residue r > 4.5 needs r copies of 1.
        assert_eq!(certs.len(), 4);
    }

    #[test]
    fn certificates_for_0_3_5() {
        let certs = savchev_chen_certify(&set(&[0, 3, 5])).unwrap();
        assert_eq!(certs.len(), 2);
        let c = certs.iter().find(|c| c.residue == 2).unwrap();
        assert_eq!((c.h, c.copies), (3, 4));
        assert!(c.obstruction_checks.is_empty());
        // Residue 4: n = 9 = 3 * 3 with N = 3 > 2.5.
        let c = certs.iter().find(|c| c.residue == 4).unwrap();
        assert_eq!((c.h, c.copies), (3, 3));
    }

    #[test]
    fn certificates_vacuous_for_b_1() {
        assert!(savchev_chen_certify(&set(&[0, 1])).unwrap().is_empty());
    }

    #[test]
    fn ebound_examples() {
        let s = set(&[0, 3, 5]);
        let bound = ebound_construction(&s).unwrap();
        let e = exceptional_set_1d(&s);
        assert!(BigInt::from(e.frobenius().unwrap()) <= bound);
        assert_eq!(ebound_construction(&set(&[0, 1])).unwrap(), BigInt::zero());
        let s = set(&[0, 2, 3]);
        assert_eq!(exceptional_set_1d(&s).frobenius(), Some(1));
        assert!(BigInt::from(1) <= ebound_construction(&s).unwrap());
    }

    #[test]
    fn bezout_sums_to_one() {
        let s = set(&[0, 6, 10, 15]);
        let total: BigInt = bezout_coefficients(&s)
            .unwrap()
            .iter()
            .map(|(a, c)| BigInt::from(*a) * c)
            .sum();
        assert!(total.is_one());
    }
}
