mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumset_core::one_d::{
    ebound_construction, exceptional_set_1d, member, residue_profile, sumset_1d,
    theorem1_statement_holds, threshold, StampSet1D,
};
use sumset_oracle::{oracle_semigroup_1d, oracle_sumset_1d};

fn stamp() -> impl Strategy<Value = StampSet1D> {
    (2u64..=20, proptest::collection::btree_set(1u64..20, 0..5)).prop_filter_map(
        "normalized",
        |(b, inner)| {
            let mut el: Vec<u64> = inner.into_iter().filter(|&x| x < b).collect();
            el.insert(0, 0);
            el.push(b);
            StampSet1D::from_normalized(&el).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sumset_matches_oracle(s in stamp(), n in 0u64..=25) {
        let raw: Vec<i64> = s.elements().iter().map(|&x| x as i64).collect();
        let fast: Vec<i64> = sumset_1d(&s, n).iter().map(|x| x as i64).collect();
        let slow: Vec<i64> = oracle_sumset_1d(&raw, n as usize).unwrap().into_iter().collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn member_matches_bitmap(s in stamp(), n in 1u64..=8) {
        let image = sumset_1d(&s, n);
        for x in 0..=(s.b() * n) as i64 {
            prop_assert_eq!(member(&s, n, x).unwrap(), image.contains(x as u64));
        }
    }

    #[test]
    fn statement_is_reflection_invariant(s in stamp(), n in 1u64..=30) {
        prop_assert_eq!(theorem1_statement_holds(&s, n).unwrap(), theorem1_statement_holds(&s.reflect(), n).unwrap());
    }

    #[test]
    fn exceptional_set_matches_semigroup(s in stamp()) {
        let raw: Vec<i64> = s.elements().iter().map(|&x| x as i64).collect();
        let limit = (s.b() * s.b()) as usize;
        let table = oracle_semigroup_1d(&raw, limit);
        let gaps: Vec<u64> = (0..=limit as u64).filter(|&x| !table[x as usize]).collect();
        prop_assert_eq!(exceptional_set_1d(&s).members, gaps);
        let bound = ebound_construction(&s).unwrap();
        if let Some(f) = exceptional_set_1d(&s).frobenius() {
            prop_assert!(num_bigint::BigInt::from(f) <= bound);
        }
    }

    #[test]
    fn profile_bounds(s in stamp()) {
        prop_assume!(s.len() >= 2);
        let p = residue_profile(&s).unwrap();
        for r in &p.rows {
            prop_assert!(r.least_count * s.b() >= r.nstar_num);
            prop_assert!(r.a == 0 || r.least_count < s.b());
            prop_assert_eq!(r.least % s.b(), r.a);
        }
        let t = threshold(&s).unwrap();
        prop_assert_eq!(t, p.threshold());
        for n in t.max(1)..=3 * s.b() {
            prop_assert!(theorem1_statement_holds(&s, n).unwrap());
        }
        if t > 1 {
            prop_assert!(!theorem1_statement_holds(&s, t - 1).unwrap());
        }
    }
}

#[test]
fn random_sets_respect_threshold_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let s = common::random_1d(&mut rng, 3..=10, 40);
        assert!(threshold(&s).unwrap() <= 2 * (s.b() / 2), "{s}");
    }
}
