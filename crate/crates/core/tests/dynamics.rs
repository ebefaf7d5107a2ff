mod common;

use binodyn_core::check::int;
use binodyn_core::dynlab::eps::orbit_identity_check;
use binodyn_core::dynlab::height::{escape_exactness, sandwich_check};
use binodyn_core::dynlab::identities::eps2bar_identity;
use binodyn_core::dynlab::{
    classify, eps_sequences, global_canonical_height, preperiodic, prep_verdict, BinomialFamily, OrbitStatus, Regime,
};
use binodyn_core::gfq::{Elem, Field, FieldSpec};
use binodyn_core::places::{abs_log, exceptional_set};
use binodyn_core::ratfunc::RatFunc;
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn f3() -> Field {
    FieldSpec::prime(3).unwrap()
}

fn pairs(p: u64, max_d2: u64) -> Vec<(u64, u64)> {
    (2..=max_d2)
        .flat_map(|d2| (1..d2).map(move |d1| (d1, d2)))
        .filter(|&(d1, d2)| classify(p, d1, d2) != Regime::Other)
        .collect()
}

fn collision_partner<R: Rng>(fam: &BinomialFamily, alpha: &RatFunc, r: &mut R) -> RatFunc {
    let f = &fam.field;
    let zs: Vec<Elem> = f
        .elements()
        .filter(|&z| !z.is_zero() && f.pow(z, fam.d1 as u128) == Elem::ONE && f.pow(z, fam.d2 as u128) == Elem::ONE)
        .collect();
    alpha.scale(zs[r.gen_range(0..zs.len())])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn eps_orbit_identity_and_mirror(seed in any::<u64>()) {
        let f = f3();
        let mut r = rng(seed);
        let fam = random_family(&f, &mut r, &pairs(3, 3));
        let alpha = random_rat(&f, &mut r, 2, 1);
        let beta = random_rat(&f, &mut r, 2, 1);
        let seq = eps_sequences(&fam, &alpha, &beta, 5, None).unwrap();
        prop_assert!(orbit_identity_check(&fam, &alpha, &beta, &seq).all_pass());
        let mirror = eps_sequences(&fam, &beta, &alpha, 5, None).unwrap();
        prop_assert_eq!(&seq.eps, &mirror.delta);
        prop_assert_eq!(&seq.delta, &mirror.eps);
    }

    #[test]
    fn infinite_outcomes_keep_absolute_values(seed in any::<u64>()) {
        let f = FieldSpec::with_degree(3, 2).unwrap();
        let mut r = rng(seed);
        let fam = random_family(&f, &mut r, &pairs(3, 6));
        let alpha = random_nonconstant_rat(&f, &mut r, 2, 2);
        let beta = collision_partner(&fam, &alpha, &mut r);
        let v = prep_verdict(&fam, &alpha, &beta).unwrap();
        prop_assert!(v.outcome.is_infinite());
        prop_assert!(v.assertions.all_pass());
        for (place, _) in &exceptional_set(&alpha, &beta).unwrap().places {
            prop_assert_eq!(abs_log(&alpha, place).unwrap(), abs_log(&beta, place).unwrap());
        }
    }

    #[test]
    fn eps1_membership_flag_matches_direct_computation(seed in any::<u64>()) {
        let f = f3();
        let mut r = rng(seed);
        let mut ps = degree_pairs(3, 9, Regime::StrictLess);
        ps.extend(degree_pairs(3, 9, Regime::Equal));
        let fam = random_family(&f, &mut r, &ps);
        let alpha = random_nonconstant_rat(&f, &mut r, 2, 1);
        let beta = random_rat(&f, &mut r, 2, 1);
        let v = prep_verdict(&fam, &alpha, &beta).unwrap();
        let rho = fam.rho.unwrap();
        let cap = int(1) / int(fam.p_l1() as i128) - int(fam.s1 as i128) + int(1);
        for (place, c) in &exceptional_set(&alpha, &beta).unwrap().places {
            let direct = match abs_log(&v.eps1, place) {
                Err(_) => true,
                Ok(e) => e == (int(1) - rho) * *c || e <= cap * *c,
            };
            let name = format!("log |eps_1|_v in {{(1-rho)C}} or <= (1/p^l1 - s1 + 1)C at {place}");
            let flag = v.evidence.checks.iter().find(|ch| ch.name == name).map(|ch| ch.pass);
            prop_assert_eq!(flag, Some(direct));
        }
    }

    #[test]
    fn escape_grows_by_d2(seed in any::<u64>()) {
        let f = f3();
        let mut r = rng(seed);
        let fam = random_family(&f, &mut r, &pairs(3, 4));
        let lambda = random_rat(&f, &mut r, 2, 2);
        let x = random_nonconstant_rat(&f, &mut r, 2, 2);
        let rep = preperiodic(&fam, &lambda, &x, 50).unwrap();
        if let OrbitStatus::Escaping { place, index, .. } = rep.status {
            let z = rep.orbit_prefix.get(index).cloned().unwrap_or_else(|| binodyn_core::dynlab::iterate(&fam, &lambda, &x, index));
            prop_assert!(escape_exactness(&fam, &lambda, &z, &place, 3));
        }
    }

    #[test]
    fn expansion_identity(seed in any::<u64>()) {
        let f = FieldSpec::with_degree(3, 2).unwrap();
        let mut r = rng(seed);
        let fam = random_family(&f, &mut r, &pairs(3, 9));
        let alpha = random_rat(&f, &mut r, 2, 1);
        let eps1 = random_rat(&f, &mut r, 1, 1);
        prop_assert!(eps2bar_identity(&fam, &alpha, &eps1).all_pass());
    }

    #[test]
    fn height_sandwich(seed in any::<u64>()) {
        let f = f3();
        let mut r = rng(seed);
        let fam = random_family(&f, &mut r, &pairs(3, 4));
        let lambda = random_rat(&f, &mut r, 3, 2);
        let alpha = random_rat(&f, &mut r, 2, 2);
        let rep = global_canonical_height(&fam, &lambda, &alpha, 6).unwrap();
        prop_assert!(rep.lower <= rep.upper);
        prop_assert!(sandwich_check(&fam, &lambda, &alpha, &rep).all_pass());
    }
}

#[test]
fn preperiodic_points_have_height_zero() {
    let f = f3();
    let fam = BinomialFamily::from_ints(&f, 1, 2, 1, 3).unwrap();
    let t = RatFunc::t(&f);
    // alpha_bar = t lies in its own fiber, so lambda = t - f(t) fixes t.
    let lambda = t.sub(&fam.eval(&t));
    let rep = preperiodic(&fam, &lambda, &t, 100).unwrap();
    assert!(rep.is_preperiodic());
    let h = global_canonical_height(&fam, &lambda, &t, 6).unwrap();
    assert_eq!(h.global(), Some(int(0)));
}
