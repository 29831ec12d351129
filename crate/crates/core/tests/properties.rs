mod common;

use common::wp;
use eschenburg::construct::alpha_vanishes;
use eschenburg::lattice::{gcd_slice, kappa_slice, lattice_points_slice, minor_gcd_slice};
use eschenburg::space::{
    invariant_h, is_manifold, is_orbifold, is_positively_curved, is_positively_curved_alt, normalize,
};
use eschenburg::{Convention, Int, Perm3, WeightPair};
use num_bigint::BigInt;
use proptest::prelude::*;

fn balanced(r: Int) -> impl Strategy<Value = WeightPair> {
    (prop::array::uniform3(-r..=r), -r..=r, -r..=r).prop_filter_map("unbalanced", move |(p, q1, q2)| {
        let q3 = p.iter().sum::<Int>() - q1 - q2;
        (q3.abs() <= r).then(|| wp(p, [q1, q2, q3]))
    })
}

fn perm() -> impl Strategy<Value = Perm3> {
    (0..6usize).prop_map(|k| Perm3::ALL[k])
}

#[test]
fn curvature_tests_agree_on_small_box() {
    let r = -6i64..=6;
    let mut seen = 0;
    for p0 in r.clone() {
        for p1 in r.clone() {
            for p2 in r.clone() {
                for q0 in r.clone() {
                    for q1 in r.clone() {
                        let q2 = p0 + p1 + p2 - q0 - q1;
                        if q2.abs() > 6 {
                            continue;
                        }
                        let w = wp([p0, p1, p2], [q0, q1, q2]);
                        assert_eq!(is_positively_curved(&w), is_positively_curved_alt(&w), "{w}");
                        seen += 1;
                    }
                }
            }
        }
    }
    assert!(seen > 100_000);
}

#[test]
fn manifolds_have_odd_h() {
    let r = -10i64..=10;
    let mut found = 0;
    for p0 in r.clone() {
        for p1 in r.clone() {
            for p2 in r.clone() {
                for q1 in r.clone() {
                    let w = wp([p0, p1, p2], [0, q1, p0 + p1 + p2 - q1]);
                    if is_manifold(&w) && invariant_h(&w) <= 200 {
                        assert_eq!(invariant_h(&w) % 2, 1, "{w}");
                        found += 1;
                    }
                }
            }
        }
    }
    assert!(found > 1000);
}

#[test]
fn generic_kernel_agrees_across_integer_types() {
    let cases: [(&[i64], &[i64]); 4] =
        [(&[3, -2, 5], &[1, 4, 1]), (&[6, 0, 4, 2], &[3, 3, 1, -1]), (&[2, 0], &[1, 3]), (&[-5, 7, 1], &[2, 2, 2])];
    for (v, w) in cases {
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let wb: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        let vi: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let wi: Vec<i128> = w.iter().map(|&x| x as i128).collect();
        assert_eq!(BigInt::from(gcd_slice(v)), gcd_slice(&vb));
        assert_eq!(BigInt::from(minor_gcd_slice(v, w).unwrap()), minor_gcd_slice(&vb, &wb).unwrap());
        assert_eq!(BigInt::from(kappa_slice(v, w).unwrap()), kappa_slice(&vb, &wb).unwrap());
        assert_eq!(kappa_slice(v, w).unwrap() as i128, kappa_slice(&vi, &wi).unwrap());
        assert_eq!(
            lattice_points_slice(v, w, 1 << 20).unwrap().len(),
            lattice_points_slice(&vi, &wi, 1 << 20).unwrap().len()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn canonical_key_is_constant_on_orbits(
        w in balanced(9), tau in perm(), rho in perm(), k in -5i64..=5,
    ) {
        for conv in [Convention::TransposeIdentified, Convention::TransposeDistinct] {
            let key = normalize(&w, conv);
            prop_assert_eq!(normalize(&w.permuted(tau, rho), conv), key);
            prop_assert_eq!(normalize(&w.negated(), conv), key);
            prop_assert_eq!(normalize(&w.translated(k).unwrap(), conv), key);
            let rep = key.representative();
            prop_assert_eq!(normalize(&rep, conv), key);
        }
        prop_assert_eq!(
            normalize(&w.swapped(), Convention::TransposeIdentified),
            normalize(&w, Convention::TransposeIdentified)
        );
    }

    #[test]
    fn invariants_are_constant_on_orbits(w in balanced(9), tau in perm(), rho in perm()) {
        let images = [w.permuted(tau, rho), w.negated(), w.swapped(), w.translated(3).unwrap()];
        for other in &images {
            prop_assert_eq!(invariant_h(other), invariant_h(&w));
            prop_assert_eq!(is_orbifold(other), is_orbifold(&w));
            prop_assert_eq!(is_manifold(other), is_manifold(&w));
            prop_assert_eq!(is_positively_curved(other), is_positively_curved(&w));
        }
        if is_manifold(&w) {
            let b = alpha_vanishes(&w).unwrap();
            for other in &images {
                prop_assert_eq!(alpha_vanishes(other).unwrap(), b, "{} vs {}", w, other);
            }
        }
    }
}
