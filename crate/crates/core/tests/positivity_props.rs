mod common;

use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use valcalc_core::monomial::dxi_trace;
use valcalc_core::oracle::psef_threshold_lp;
use valcalc_core::positivity::{
    example_family, scan_point, semicontinuity_scan, seshadri, seshadri_curve_bound,
    seshadri_limit, seshadri_model, seshadri_step, waldschmidt, weight_ray, witness_curves,
    CertificateKind, CurveGermSpec, Family, Invariant, PointKind, Route,
};
use valcalc_core::rational::{int, rat};
use valcalc_core::toric::{nef_threshold, Ray};
use valcalc_core::{Extended, Rational, ToricDivisor, ToricSurface, WeightVector};

fn weight_strategy() -> impl Strategy<Value = [Rational; 2]> {
    ((1i64..=12, 1i64..=4), (1i64..=12, 1i64..=4)).prop_map(|((a, b), (c, d))| [rat(a, b), rat(c, d)])
}

fn ray_strategy() -> impl Strategy<Value = Ray> {
    (-6i64..=6, -6i64..=6).prop_filter("nonzero", |r| *r != (0, 0)).prop_map(|(a, b)| [a, b])
}

fn wv(w: &[Rational; 2]) -> WeightVector {
    WeightVector::finite(w.to_vec()).unwrap()
}

fn line_at_infinity(s: &Arc<ToricSurface>) -> ToricDivisor {
    ToricDivisor::from_fn(Arc::clone(s), |r| if r == [-1, -1] { Rational::one() } else { Rational::zero() })
}

/// The trace of `D_ξ` on a fan, taken ray by ray.
fn trace_divisor(s: &Arc<ToricSurface>, w: &WeightVector) -> ToricDivisor {
    ToricDivisor::from_fn(Arc::clone(s), |r| {
        if r[0] >= 0 && r[1] >= 0 {
            dxi_trace(w, &[r[0] as u64, r[1] as u64]).unwrap().finite().unwrap().clone()
        } else {
            Rational::zero()
        }
    })
}

fn model_surface(w: &[Rational; 2]) -> Arc<ToricSurface> {
    Arc::new(ToricSurface::projective_plane().refine(weight_ray(w).unwrap()).unwrap())
}

fn refine_all(s: &Arc<ToricSurface>, rays: &[Ray]) -> Arc<ToricSurface> {
    let mut out = (**s).clone();
    for &r in rays {
        out = out.refine(r).unwrap();
    }
    Arc::new(out)
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn pullback_preserves_intersections(
        coeffs in prop::collection::vec(-5i64..=5, 3),
        other in prop::collection::vec(-5i64..=5, 3),
        rays in prop::collection::vec(ray_strategy(), 1..4),
    ) {
        let base = Arc::new(ToricSurface::projective_plane());
        let d = ToricDivisor::new(Arc::clone(&base), coeffs.into_iter().map(int).collect()).unwrap();
        let e = ToricDivisor::new(Arc::clone(&base), other.into_iter().map(int).collect()).unwrap();
        let fine = refine_all(&base, &rays);
        let (pd, pe) = (d.pullback(&fine).unwrap(), e.pullback(&fine).unwrap());
        prop_assert_eq!(pd.intersect(&pe).unwrap(), d.intersect(&e).unwrap());
        // a pulled-back divisor is trivial on every new curve
        for (i, r) in fine.rays().iter().enumerate() {
            if base.position(*r).is_none() {
                prop_assert!(pd.intersect_curve(i).is_zero());
            }
        }
    }

    #[test]
    fn trace_divisor_is_a_pullback_from_the_model(w in weight_strategy(), rays in prop::collection::vec(ray_strategy(), 1..4)) {
        let w_v = wv(&w);
        let model = model_surface(&w);
        let fine = refine_all(&model, &rays);
        let z = trace_divisor(&model, &w_v);
        prop_assert_eq!(z.pullback(&fine).unwrap(), trace_divisor(&fine, &w_v));
        prop_assert_eq!(z.intersect(&z).unwrap(), trace_divisor(&fine, &w_v).intersect(&trace_divisor(&fine, &w_v)).unwrap());
    }

    #[test]
    fn the_model_fan_suffices(w in weight_strategy(), rays in prop::collection::vec(ray_strategy(), 1..4)) {
        let w_v = wv(&w);
        let model = model_surface(&w);
        let fine = refine_all(&model, &rays);
        let h = line_at_infinity(&model).pullback(&fine).unwrap();
        let t = nef_threshold(&h, &trace_divisor(&fine, &w_v)).unwrap();
        prop_assert_eq!(t, Extended::Finite(seshadri_model(&w_v).unwrap()));
    }

    #[test]
    fn epsilon_is_below_omega_and_curve_bounds(w in weight_strategy()) {
        let w_v = wv(&w);
        let eps = seshadri_model(&w_v).unwrap();
        let omega = waldschmidt(&w_v, 3).unwrap();
        prop_assert!(eps <= omega.value);
        for c in witness_curves(12) {
            prop_assert!(eps <= seshadri_curve_bound(&w_v, &c).unwrap(), "{}", c.name);
        }
    }

    #[test]
    fn omega_is_the_psef_threshold(w in weight_strategy()) {
        let w_v = wv(&w);
        let s = model_surface(&w);
        let h = line_at_infinity(&s);
        let z = trace_divisor(&s, &w_v);
        let lp = psef_threshold_lp(s.rays(), h.coeffs(), z.coeffs());
        let omega = waldschmidt(&w_v, 4).unwrap();
        prop_assert_eq!(lp, Extended::Finite(omega.value.clone()));
        prop_assert_eq!(&omega.value, w.iter().max().unwrap());
        prop_assert!(omega.certified_exact && omega.attained_at == 1);
    }

    #[test]
    fn invariants_are_homogeneous(w in weight_strategy(), p in 1i64..6, q in 1i64..4) {
        let lambda = rat(p, q);
        let scaled = [&w[0] * &lambda, &w[1] * &lambda];
        let (a, b) = (wv(&w), wv(&scaled));
        prop_assert_eq!(seshadri_model(&b).unwrap(), seshadri_model(&a).unwrap() * &lambda);
        prop_assert_eq!(waldschmidt(&b, 2).unwrap().value, waldschmidt(&a, 2).unwrap().value * &lambda);
    }
}

proptest! {
    #![proptest_config(common::config(24))]

    #[test]
    fn limit_route_agrees_with_the_model(w in weight_strategy()) {
        let w_v = wv(&w);
        let report = seshadri(&w_v, Route::Both).unwrap();
        prop_assert!(!report.disagreement());
        let limit = report.limit.unwrap();
        prop_assert!(limit.monotone);
        prop_assert!(limit.lattice_terms.iter().all(|t| t <= report.model.as_ref().unwrap()));
        // off the lattice a step never exceeds the limit either
        let half = &limit.m_used / int(2);
        prop_assert!(seshadri_step(&w_v, &half).unwrap() <= limit.value);
    }
}

#[test]
fn seshadri_examples() {
    let cases = [
        ([int(1), int(1)], int(1)),
        ([int(1), rat(1, 3)], rat(1, 3)),
        ([int(2), int(3)], int(2)),
        ([int(1), int(0)], int(1)),
        ([int(0), int(0)], int(0)),
    ];
    for (w, eps) in cases {
        assert_eq!(seshadri_model(&wv(&w)).unwrap(), eps, "w={w:?}");
    }
    assert!(seshadri_limit(&wv(&[int(1), int(0)]), 2).is_err());
    assert!(WeightVector::finite(vec![int(-1), int(1)]).is_err());
    assert_eq!(seshadri(&wv(&[int(1), rat(1, 3)]), Route::Limit).unwrap().value(), &rat(1, 3));
}

#[test]
fn one_point_blowup_of_the_plane() {
    // H - tE is nef exactly for t <= 1
    let s = Arc::new(ToricSurface::projective_plane().refine([1, 1]).unwrap());
    let e = ToricDivisor::from_fn(Arc::clone(&s), |r| if r == [1, 1] { -Rational::one() } else { Rational::zero() });
    assert_eq!(nef_threshold(&line_at_infinity(&s), &e).unwrap(), Extended::Finite(int(1)));
    let zero = ToricDivisor::zero(Arc::clone(&s));
    assert_eq!(nef_threshold(&line_at_infinity(&s), &zero).unwrap(), Extended::PosInf);
    assert_eq!(s.self_intersection(s.position([1, 1]).unwrap()), int(-1));
}

#[test]
fn curve_bounds() {
    let w = wv(&[int(1), rat(1, 2)]);
    let fin = |k: i64| Extended::Finite(int(k));
    let line = CurveGermSpec { name: "y=0".into(), degree: 1, orders: vec![fin(1), Extended::PosInf] };
    assert_eq!(seshadri_curve_bound(&w, &line).unwrap(), int(1));
    let conic = CurveGermSpec { name: "x=y^2".into(), degree: 2, orders: vec![fin(2), fin(1)] };
    assert_eq!(seshadri_curve_bound(&w, &conic).unwrap(), int(1));
    let bad = CurveGermSpec { name: "none".into(), degree: 1, orders: vec![Extended::PosInf, Extended::PosInf] };
    assert!(seshadri_curve_bound(&w, &bad).is_err());
    assert_eq!(witness_curves(12).len(), 3 + 2 * 11);
}

fn sample_points() -> Vec<[Rational; 2]> {
    vec![[int(1), int(1)], [int(0), int(2)], [rat(1, 2), int(0)], [int(0), int(0)], [rat(3, 2), rat(2, 3)]]
}

#[test]
fn scan_is_deterministic_and_ordered() {
    let points = sample_points();
    let families = [example_family(6)];
    let a = semicontinuity_scan(&points, &families, Invariant::Epsilon).unwrap();
    let b = semicontinuity_scan(&points, &families, Invariant::Epsilon).unwrap();
    assert_eq!(a, b);
    let mut expected = points.clone();
    expected.extend(families[0].members());
    expected.push(families[0].limit.clone());
    let order: Vec<[Rational; 2]> = a.rows.iter().map(|r| r.w.clone()).collect();
    assert_eq!(order, expected);
    let kinds: Vec<PointKind> = a.rows[..5].iter().map(|r| r.kind.clone()).collect();
    assert_eq!(
        kinds,
        vec![PointKind::Interior, PointKind::Boundary, PointKind::Boundary, PointKind::Trivial, PointKind::Interior]
    );
    assert!(a.rows.iter().all(|r| r.routes_agree));
    for row in &a.rows {
        assert_eq!(row, &scan_point(&row.w).unwrap());
    }
}

#[test]
fn family_certificates() {
    let fam = example_family(8);
    let report = |inv| semicontinuity_scan(&[], std::slice::from_ref(&fam), inv).unwrap().certificates.remove(0);
    let eps = report(Invariant::Epsilon);
    assert_eq!(eps.kind, CertificateKind::Counterexample);
    assert_eq!(eps.tail_limit, Some(int(0)));
    assert_eq!(eps.value_at_limit, Extended::Finite(int(1)));
    let omega = report(Invariant::Omega);
    assert_eq!(omega.kind, CertificateKind::Semicontinuous);
    assert_eq!(omega.tail_limit, Some(int(1)));
    let d1 = report(Invariant::Dxi(0));
    assert_eq!(d1.kind, CertificateKind::Semicontinuous);
    // the members sit at 0 and the boundary point drops to -1
    assert_eq!(d1.tail_limit, Some(int(0)));
    assert_eq!(d1.value_at_limit, Extended::Finite(int(-1)));
    let rows = semicontinuity_scan(&[], std::slice::from_ref(&fam), Invariant::Epsilon).unwrap().rows;
    for (k, row) in rows[..fam.len].iter().enumerate() {
        assert_eq!(row.epsilon, rat(1, k as i64 + 1));
        assert_eq!(row.omega, int(1));
    }
}

#[test]
fn scans_reject_bad_input() {
    assert!(semicontinuity_scan(&[], &[], Invariant::Omega).is_err());
    let short = Family { limit: [int(1), int(0)], direction: [int(0), int(1)], len: 2 };
    assert!(semicontinuity_scan(&[], &[short], Invariant::Omega).is_err());
    assert!(scan_point(&[int(-1), int(1)]).is_err());
}
