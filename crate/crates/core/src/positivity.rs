//! Seshadri constants and asymptotic orders of vanishing of monomial
//! valuations centred at the torus-fixed point `[0:0:1]` of `ℙ²`.
//!
//! With `H` the line at infinity (the ray `(-1,-1)`), `ε(H, ξ_w)` is the nef
//! threshold of `H + t D_ξ` and `ω(H, ξ_w)` the largest `v_w(s)/k` over
//! sections of `O(k)`. The trace of `D_ξ` at a ray `u` of the positive
//! quadrant is `-min_i u_i/w_i`; it is linear on both sides of the ray through
//! `w`, so `H + t D_ξ` is nef as a b-divisor as soon as it is nef on the
//! blowup whose fan contains that ray.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::{dxi_trace, valuation_ideal, NewtonPolyhedron, WeightVector};
use crate::rational::{from_u64, int, Extended, Rational};
use crate::toric::{nef_threshold, primitive, Ray, ToricDivisor, ToricSurface};

const INFINITY_RAY: Ray = [-1, -1];

fn two_weights(w: &WeightVector) -> Result<[Rational; 2]> {
    match w.entries() {
        [Extended::Finite(a), Extended::Finite(b)] => Ok([a.clone(), b.clone()]),
        _ => Err(Error::InvalidWeights(format!(
            "two finite weights required, got {w}"
        ))),
    }
}

/// The primitive integer vector on the ray through `(w_1, w_2)`.
pub fn weight_ray(w: &[Rational; 2]) -> Result<Ray> {
    let l = w[0].denom().lcm(w[1].denom());
    let scaled: Vec<i64> = w
        .iter()
        .map(|x| {
            (x * Rational::from_integer(l.clone()))
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::InvalidWeights("weights too large".into()))
        })
        .collect::<Result<_>>()?;
    if scaled.iter().any(|&x| x < 0) || scaled.iter().all(|&x| x == 0) {
        return Err(Error::InvalidWeights("weights must be nonnegative and not all zero".into()));
    }
    Ok(primitive([scaled[0], scaled[1]]))
}

fn hyperplane(surface: &Arc<ToricSurface>, scale: &Rational) -> ToricDivisor {
    ToricDivisor::from_fn(Arc::clone(surface), |r| {
        if r == INFINITY_RAY {
            scale.clone()
        } else {
            Rational::zero()
        }
    })
}

fn in_quadrant(r: Ray) -> bool {
    r[0] >= 0 && r[1] >= 0
}

/// `ε(H, ξ_w)` from the single model containing the ray of `w`.
///
/// Boundary weights `(a, 0)` are allowed (the order of vanishing along a
/// line scaled by `a`); the trivial weights `(0, 0)` give `0`.
pub fn seshadri_model(w: &WeightVector) -> Result<Rational> {
    let ws = two_weights(w)?;
    if ws.iter().any(Signed::is_negative) {
        return Err(Error::InvalidWeights("weights must be nonnegative".into()));
    }
    if ws.iter().all(Zero::is_zero) {
        return Ok(Rational::zero());
    }
    let surface = Arc::new(ToricSurface::projective_plane().refine(weight_ray(&ws)?)?);
    let mut coeffs = Vec::with_capacity(surface.len());
    for &r in surface.rays() {
        if !in_quadrant(r) {
            coeffs.push(Rational::zero());
            continue;
        }
        let u = [r[0] as u64, r[1] as u64];
        match dxi_trace(w, &u)? {
            Extended::Finite(c) => coeffs.push(c),
            other => return Err(Error::InvalidWeights(format!("trace {other} at ray {r:?}"))),
        }
    }
    let z = ToricDivisor::new(Arc::clone(&surface), coeffs)?;
    match nef_threshold(&hyperplane(&surface, &Rational::one()), &z)? {
        Extended::Finite(t) => Ok(t),
        other => Err(Error::InvalidArgument(format!("unexpected nef threshold {other}"))),
    }
}

/// `t_m = sup { t : m H + t Z(a_m) is nef }`, decided on the blowup given by
/// the normal fan of `Newt(a_m)`, where `Z(a_m)` is Cartier.
pub fn seshadri_step(w: &WeightVector, m: &Rational) -> Result<Rational> {
    let a = valuation_ideal(w, m)?;
    if a.nvars() != 2 {
        return Err(Error::InvalidWeights("two weights required".into()));
    }
    let newt = NewtonPolyhedron::new(&a)?;
    let mut rays: Vec<Ray> = ToricSurface::projective_plane().rays().to_vec();
    for f in newt.facets() {
        if f.rhs > 0 {
            rays.push([f.normal[0] as i64, f.normal[1] as i64]);
        }
    }
    let surface = Arc::new(ToricSurface::new(rays)?);
    let mut coeffs = Vec::with_capacity(surface.len());
    for &r in surface.rays() {
        coeffs.push(if in_quadrant(r) {
            a.z_divisor_coefficient(&[r[0] as u64, r[1] as u64])?
        } else {
            Rational::zero()
        });
    }
    let z = ToricDivisor::new(Arc::clone(&surface), coeffs)?;
    match nef_threshold(&hyperplane(&surface, m), &z)? {
        Extended::Finite(t) => Ok(t),
        other => Err(Error::InvalidArgument(format!("unexpected nef threshold {other}"))),
    }
}

/// The least `m > 0` with every `m / w_i` an integer: `lcm(p_i) / gcd(q_i)`
/// for `w_i = p_i / q_i`.
pub fn stabilizing_step(w: &[Rational; 2]) -> Rational {
    let num = w[0].numer().lcm(w[1].numer());
    let den = w[0].denom().gcd(w[1].denom());
    Rational::new(num, den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitRoute {
    /// `sup t_m` over the computed lattice terms.
    pub value: Rational,
    /// The lattice step `m_0`; terms are evaluated at `m_0, 2 m_0, ...`.
    pub m_used: Rational,
    pub lattice_terms: Vec<Rational>,
    pub monotone: bool,
}

/// The sequence `t_m` along multiples of the stabilizing step.
pub fn seshadri_limit(w: &WeightVector, terms: usize) -> Result<LimitRoute> {
    let ws = two_weights(w)?;
    w.positive_finite()?;
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one term is required".into()));
    }
    let m0 = stabilizing_step(&ws);
    let lattice_terms = (1..=terms)
        .map(|k| seshadri_step(w, &(&m0 * from_u64(k as u64))))
        .collect::<Result<Vec<_>>>()?;
    let monotone = lattice_terms.windows(2).all(|p| p[0] <= p[1]);
    let value = lattice_terms.iter().max().expect("nonempty").clone();
    Ok(LimitRoute { value, m_used: m0, lattice_terms, monotone })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Model,
    Limit,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeshadriReport {
    pub model: Option<Rational>,
    pub limit: Option<LimitRoute>,
}

impl SeshadriReport {
    pub fn disagreement(&self) -> bool {
        matches!((&self.model, &self.limit), (Some(a), Some(l)) if *a != l.value)
    }

    pub fn value(&self) -> &Rational {
        self.model
            .as_ref()
            .or(self.limit.as_ref().map(|l| &l.value))
            .expect("at least one route is computed")
    }
}

pub fn seshadri(w: &WeightVector, route: Route) -> Result<SeshadriReport> {
    let model = match route {
        Route::Model | Route::Both => Some(seshadri_model(w)?),
        Route::Limit => None,
    };
    let limit = match route {
        Route::Limit | Route::Both => Some(seshadri_limit(w, 3)?),
        Route::Model => None,
    };
    Ok(SeshadriReport { model, limit })
}

/// A curve through the point, by its degree and the orders
/// `a_j = ord_t z_j` of the coordinates along its branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGermSpec {
    pub name: String,
    pub degree: u64,
    pub orders: Vec<Extended>,
}

/// `ε_C = deg C · max_j w_j / a_j` with `w_j / inf = 0`.
pub fn seshadri_curve_bound(w: &WeightVector, c: &CurveGermSpec) -> Result<Rational> {
    let ws = w.positive_finite()?;
    if c.orders.len() != ws.len() {
        return Err(Error::LengthMismatch { expected: ws.len(), got: c.orders.len() });
    }
    if c.degree == 0 {
        return Err(Error::InvalidArgument("curves have positive degree".into()));
    }
    let mut best: Option<Rational> = None;
    for (wj, a) in ws.iter().zip(&c.orders) {
        let term = match a {
            Extended::PosInf => Rational::zero(),
            Extended::Finite(a) if a.is_positive() => wj / a,
            _ => return Err(Error::InvalidArgument("branch orders must be positive".into())),
        };
        best = Some(best.map_or(term.clone(), |b| b.max(term)));
    }
    if c.orders.iter().all(|a| *a == Extended::PosInf) {
        return Err(Error::InvalidArgument("some branch order must be finite".into()));
    }
    Ok(from_u64(c.degree) * best.expect("nonempty"))
}

/// Coordinate lines, lines through the point, and `y = x^k`, `x = y^k` for `k <= k_max`.
pub fn witness_curves(k_max: u64) -> Vec<CurveGermSpec> {
    let fin = |k: u64| Extended::Finite(from_u64(k));
    let mut out = vec![
        CurveGermSpec { name: "x=0".into(), degree: 1, orders: vec![Extended::PosInf, fin(1)] },
        CurveGermSpec { name: "y=0".into(), degree: 1, orders: vec![fin(1), Extended::PosInf] },
        CurveGermSpec { name: "y=x".into(), degree: 1, orders: vec![fin(1), fin(1)] },
    ];
    for k in 2..=k_max {
        out.push(CurveGermSpec { name: format!("y=x^{k}"), degree: k, orders: vec![fin(1), fin(k)] });
        out.push(CurveGermSpec { name: format!("x=y^{k}"), degree: k, orders: vec![fin(k), fin(1)] });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaldschmidtReport {
    pub value: Rational,
    /// The degree at which the supremum was first attained.
    pub attained_at: u64,
    /// No degree up to the cap improves on degree one.
    pub certified_exact: bool,
}

/// `sup { v_w(x^a y^b z^{k-a-b}) / k : k <= k_cap }`.
pub fn waldschmidt(w: &WeightVector, k_cap: u64) -> Result<WaldschmidtReport> {
    let ws = two_weights(w)?;
    if ws.iter().any(Signed::is_negative) {
        return Err(Error::InvalidWeights("weights must be nonnegative".into()));
    }
    if k_cap < 1 {
        return Err(Error::InvalidArgument("the degree cap must be at least 1".into()));
    }
    let mut best: Option<(Rational, u64)> = None;
    let mut degree_one = Rational::zero();
    for k in 1..=k_cap {
        let kr = from_u64(k);
        for a in 0..=k {
            for b in 0..=(k - a) {
                let value = (&ws[0] * from_u64(a) + &ws[1] * from_u64(b)) / &kr;
                if best.as_ref().is_none_or(|(bv, _)| value > *bv) {
                    best = Some((value.clone(), k));
                }
            }
        }
        if k == 1 {
            degree_one = best.as_ref().expect("degree one evaluated").0.clone();
        }
    }
    let (value, attained_at) = best.expect("nonempty enumeration");
    let certified_exact = attained_at == 1 && value == degree_one;
    Ok(WaldschmidtReport { value, attained_at, certified_exact })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Epsilon,
    Omega,
    /// The coefficient of `D_ξ` along the ray `(1, 0)` or `(0, 1)`.
    Dxi(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointKind {
    Interior,
    Boundary,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub w: [Rational; 2],
    pub kind: PointKind,
    pub epsilon: Rational,
    pub omega: Rational,
    pub dxi_u1: Extended,
    pub dxi_u2: Extended,
    /// Lattice step of the limit route, `0` when only the model route applies.
    pub m_used: Rational,
    /// Whether the two routes to `ε` agree (always true off the interior).
    pub routes_agree: bool,
}

impl ScanRow {
    pub fn value(&self, invariant: Invariant) -> Extended {
        match invariant {
            Invariant::Epsilon => Extended::Finite(self.epsilon.clone()),
            Invariant::Omega => Extended::Finite(self.omega.clone()),
            Invariant::Dxi(0) => self.dxi_u1.clone(),
            Invariant::Dxi(_) => self.dxi_u2.clone(),
        }
    }
}

/// Every invariant at one weight vector with nonnegative entries.
pub fn scan_point(w: &[Rational; 2]) -> Result<ScanRow> {
    if w.iter().any(Signed::is_negative) {
        return Err(Error::InvalidWeights("scan weights must be nonnegative".into()));
    }
    let wv = WeightVector::finite(w.to_vec())?;
    let kind = if w.iter().all(Zero::is_zero) {
        PointKind::Trivial
    } else if w.iter().any(Zero::is_zero) {
        PointKind::Boundary
    } else {
        PointKind::Interior
    };
    let epsilon = seshadri_model(&wv)?;
    let omega = waldschmidt(&wv, 1)?.value;
    let dxi_u1 = dxi_trace(&wv, &[1, 0])?;
    let dxi_u2 = dxi_trace(&wv, &[0, 1])?;
    let (m_used, routes_agree) = if kind == PointKind::Interior {
        let limit = seshadri_limit(&wv, 1)?;
        let agree = limit.value == epsilon;
        (limit.m_used, agree)
    } else {
        (Rational::zero(), true)
    };
    Ok(ScanRow { w: w.clone(), kind, epsilon, omega, dxi_u1, dxi_u2, m_used, routes_agree })
}

/// The weights `limit + direction / k` for `k = 1, ..., len`, converging to `limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub limit: [Rational; 2],
    pub direction: [Rational; 2],
    pub len: usize,
}

impl Family {
    pub fn member(&self, k: usize) -> [Rational; 2] {
        let kr = from_u64(k as u64);
        [&self.limit[0] + &self.direction[0] / &kr, &self.limit[1] + &self.direction[1] / &kr]
    }

    pub fn members(&self) -> Vec<[Rational; 2]> {
        (1..=self.len).map(|k| self.member(k)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// `f(limit) <= lim f(w_k)`, as lower semicontinuity requires.
    Semicontinuous,
    /// `f(limit) > lim f(w_k)`: a witness that `f` is not lower semicontinuous there.
    Counterexample,
    /// The tail was not certified to be of the form `A + B/k`.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub family: Family,
    pub invariant: Invariant,
    pub value_at_limit: Extended,
    /// The exact limit `A` of the tail.
    pub tail_limit: Option<Rational>,
    pub kind: CertificateKind,
}

/// The tail of `f_k` is fitted to `A + B/k` from the last two samples and the
/// fit is confirmed on the third to last. Along a segment every invariant
/// here is eventually of that form, being piecewise a ratio of linear forms.
fn tail_limit(samples: &[Extended]) -> Option<Rational> {
    let n = samples.len();
    if n < 3 {
        return None;
    }
    let f: Vec<&Rational> = samples[n - 3..].iter().map(Extended::finite).collect::<Option<_>>()?;
    let k = |i: usize| from_u64((n - 2 + i) as u64);
    let (x0, x1, x2) = (k(0).recip(), k(1).recip(), k(2).recip());
    let b = (f[1] - f[2]) / (&x1 - &x2);
    let a = f[2] - &b * &x2;
    (a.clone() + &b * x0 == *f[0]).then_some(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub certificates: Vec<FamilyCertificate>,
}

/// Evaluates every point, then every family followed by its limit, in input
/// order. Points are computed in parallel; aggregation keeps the order.
pub fn semicontinuity_scan(
    points: &[[Rational; 2]],
    families: &[Family],
    invariant: Invariant,
) -> Result<ScanReport> {
    if points.is_empty() && families.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    let mut all: Vec<[Rational; 2]> = points.to_vec();
    for fam in families {
        if fam.len < 3 {
            return Err(Error::InvalidArgument("families need at least three members".into()));
        }
        all.extend(fam.members());
        all.push(fam.limit.clone());
    }
    let rows = all.par_iter().map(scan_point).collect::<Result<Vec<_>>>()?;
    let mut certificates = Vec::with_capacity(families.len());
    let mut offset = points.len();
    for fam in families {
        let samples: Vec<Extended> =
            rows[offset..offset + fam.len].iter().map(|r| r.value(invariant)).collect();
        let value_at_limit = rows[offset + fam.len].value(invariant);
        offset += fam.len + 1;
        let tail = tail_limit(&samples);
        let kind = match &tail {
            None => CertificateKind::Inconclusive,
            Some(a) if value_at_limit <= Extended::Finite(a.clone()) => {
                CertificateKind::Semicontinuous
            }
            Some(_) => CertificateKind::Counterexample,
        };
        certificates.push(FamilyCertificate {
            family: fam.clone(),
            invariant,
            value_at_limit,
            tail_limit: tail,
            kind,
        });
    }
    Ok(ScanReport { rows, certificates })
}

/// `(1, 1/k)` for `k = 1..len`, approaching the line valuation `(1, 0)`.
pub fn example_family(len: usize) -> Family {
    Family { limit: [int(1), int(0)], direction: [int(0), int(1)], len }
}
