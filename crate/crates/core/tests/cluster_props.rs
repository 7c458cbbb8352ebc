mod common;

use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use valcalc_core::cluster::{
    antinef_closure, antinef_closure_with, integral_antinef_closure, values_of_divisorial,
    ClosureOptions,
};
use valcalc_core::oracle::antinef_closure_lp;
use valcalc_core::rational::{int, is_integral, rat};
use valcalc_core::{Basis, Cluster, ExceptionalDivisor, Rational};

use common::{cluster_from_choices, le_all};

fn cluster_strategy(max_len: usize) -> impl Strategy<Value = Cluster> {
    prop::collection::vec(prop::option::of(0usize..2), 0..max_len)
        .prop_map(|choices| cluster_from_choices(&choices))
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn divisor_strategy(max_len: usize) -> impl Strategy<Value = ExceptionalDivisor> {
    (cluster_strategy(max_len), prop::bool::ANY).prop_flat_map(|(c, prime)| {
        let n = c.len();
        let basis = if prime { Basis::Prime } else { Basis::TotalTransform };
        prop::collection::vec(rational_strategy(), n).prop_map(move |coeffs| {
            ExceptionalDivisor::new(Arc::new(c.clone()), basis, coeffs).unwrap()
        })
    })
}

fn unit(c: &Arc<Cluster>, basis: Basis, i: usize) -> ExceptionalDivisor {
    ExceptionalDivisor::unit(Arc::clone(c), basis, i).unwrap()
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn basis_change_is_an_involution(d in divisor_strategy(9)) {
        for target in [Basis::Prime, Basis::TotalTransform] {
            let there = d.to_basis(target);
            let back = there.to_basis(d.basis());
            prop_assert_eq!(back.coeffs(), d.coeffs());
            prop_assert_eq!(there.coeffs_in(d.basis()), d.coeffs().to_vec());
        }
    }

    #[test]
    fn prime_intersections_match_total_transform_expansion(c in cluster_strategy(9)) {
        let c = Arc::new(c);
        let n = c.len();
        for i in 0..n {
            for j in 0..n {
                let direct = unit(&c, Basis::Prime, i).intersect(&unit(&c, Basis::Prime, j)).unwrap();
                prop_assert_eq!(&direct, &c.prime_intersection(i, j));
                if i == j {
                    let k = c.proximate_points(i).count() as i64;
                    prop_assert_eq!(direct, int(-(1 + k)));
                } else if !(0..n).any(|k| c.is_proximate(k, i) && c.is_proximate(k, j)) {
                    let adjacent = c.is_proximate(i, j) || c.is_proximate(j, i);
                    prop_assert_eq!(direct, int(i64::from(adjacent)));
                }
            }
        }
    }

    #[test]
    fn divisorial_values_satisfy_proximity_equalities(c in cluster_strategy(9), norm in 1i64..6) {
        let vm = c.values_matrix();
        for last in 0..c.len() {
            let v = values_of_divisorial(&c, last, &int(norm)).unwrap();
            let sub = c.truncate(last + 1).unwrap();
            prop_assert!(v.satisfies_proximity_equalities(&sub));
            prop_assert_eq!(v.last(), &int(norm));
            let row: Vec<Rational> = vm.row(last)[..=last].iter().map(|x| x * int(norm)).collect();
            prop_assert_eq!(v.as_slice(), row.as_slice());
        }
    }

    #[test]
    fn closure_is_idempotent_and_above_its_input(d in divisor_strategy(8)) {
        let closed = antinef_closure(&d);
        prop_assert!(closed.is_antinef());
        prop_assert!(d.le_prime(&closed).unwrap());
        prop_assert_eq!(antinef_closure(&closed), closed.clone());
        if d.is_antinef() {
            prop_assert_eq!(closed.coeffs_in(Basis::Prime), d.coeffs_in(Basis::Prime));
        }
    }

    #[test]
    fn closure_is_monotone(
        d in divisor_strategy(8),
        bumps in prop::collection::vec(0i64..4, 8),
    ) {
        let lower = d.coeffs_in(Basis::Prime);
        let upper: Vec<Rational> = lower.iter().zip(&bumps).map(|(a, b)| a + int(*b)).collect();
        let e = ExceptionalDivisor::new(Arc::clone(d.cluster()), Basis::Prime, upper).unwrap();
        prop_assert!(antinef_closure(&d).le_prime(&antinef_closure(&e)).unwrap());
    }

    #[test]
    fn every_iteration_cap_gives_the_same_closure(d in divisor_strategy(8), cap in 0usize..12) {
        let reference = antinef_closure(&d);
        let capped = antinef_closure_with(&d, &ClosureOptions { iteration_cap: Some(cap) });
        prop_assert_eq!(capped.divisor, reference);
    }

    #[test]
    fn integral_closure_rounds_the_real_one_up(d in divisor_strategy(7)) {
        let out = integral_antinef_closure(&d, &ClosureOptions::default()).unwrap();
        let a = out.divisor.coeffs_in(Basis::Prime);
        prop_assert!(a.iter().all(is_integral));
        prop_assert!(out.divisor.is_antinef());
        let real = antinef_closure(&d).coeffs_in(Basis::Prime);
        prop_assert!(le_all(&real, &a));
    }
}

proptest! {
    #![proptest_config(common::config(24))]

    #[test]
    fn closure_is_minimal_against_the_lp(d in divisor_strategy(6)) {
        let lower = d.coeffs_in(Basis::Prime);
        let closed = antinef_closure(&d).coeffs_in(Basis::Prime);
        for (k, (value, x)) in antinef_closure_lp(d.cluster(), &lower).into_iter().enumerate() {
            prop_assert_eq!(&closed[k], &value);
            prop_assert!(le_all(&closed, &x));
        }
    }
}

/// p1 <- p2 free, p3 proximate to p2 and p1.
fn c211() -> Arc<Cluster> {
    Arc::new(Cluster::new(vec![vec![], vec![0], vec![1, 0]]).unwrap())
}

#[test]
fn satellite_strict_transforms_are_disjoint() {
    // p3 separates Ẽ1 from Ẽ2, so the pair meets in 0 even though p2 is proximate to p1
    let c = c211();
    assert_eq!(unit(&c, Basis::Prime, 0).intersect(&unit(&c, Basis::Prime, 1)).unwrap(), int(0));
    assert_eq!(unit(&c, Basis::Prime, 0).intersect(&unit(&c, Basis::Prime, 2)).unwrap(), int(1));
    assert_eq!(unit(&c, Basis::Prime, 1).intersect(&unit(&c, Basis::Prime, 2)).unwrap(), int(1));
    assert_eq!(unit(&c, Basis::Prime, 0).intersect(&unit(&c, Basis::Prime, 0)).unwrap(), int(-3));
}

#[test]
fn last_exceptional_total_transform_is_not_antinef() {
    let c = c211();
    assert!(!unit(&c, Basis::TotalTransform, 2).is_antinef());
    assert!(unit(&c, Basis::TotalTransform, 0).is_antinef());
    let chain = Arc::new(Cluster::chain(3).unwrap());
    assert!(!unit(&chain, Basis::TotalTransform, 2).is_antinef());
}

#[test]
fn closure_of_the_last_strict_transform() {
    let c = c211();
    let closed = antinef_closure(&unit(&c, Basis::Prime, 2));
    assert_eq!(closed.coeffs_in(Basis::Prime), vec![rat(1, 3), rat(1, 2), int(1)]);
    assert_eq!(closed.coeffs_in(Basis::TotalTransform), vec![rat(1, 3), rat(1, 6), rat(1, 6)]);
    let lp = antinef_closure_lp(&c, &[Rational::zero(), Rational::zero(), int(1)]);
    let values: Vec<Rational> = lp.into_iter().map(|(v, _)| v).collect();
    assert_eq!(values, closed.coeffs_in(Basis::Prime));
}

#[test]
fn malformed_clusters_are_rejected() {
    assert!(Cluster::new(vec![]).is_err());
    assert!(Cluster::new(vec![vec![0]]).is_err());
    assert!(Cluster::new(vec![vec![], vec![]]).is_err());
    assert!(Cluster::new(vec![vec![], vec![0], vec![0]]).is_err());
    // p4 cannot be proximate to p1 once p3 lies only on E2
    assert!(Cluster::new(vec![vec![], vec![0], vec![1], vec![2, 0]]).is_err());
    assert!(Cluster::from_one_based(&[vec![], vec![0]]).is_err());
    let c = Cluster::from_one_based(&[vec![], vec![1], vec![2, 1]]).unwrap();
    assert_eq!(c.to_one_based(), vec![vec![], vec![1], vec![2, 1]]);
}
