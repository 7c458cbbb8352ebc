//! The verification suites behind `valcalc verify`.
//!
//! Each check computes the two sides of an identity by separate routes and
//! emits a [`Certificate`]: `EXACT_PASS` with the common value, `BOUND_PASS`
//! when a chain of inequalities holds, `FAIL` with both sides otherwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use valcalc_core::cluster::{
    antinef_closure_with, noether_value, values_of_divisorial, ClosureOptions,
};
use valcalc_core::monomial::{
    arnold, arnold_of_filtration, asymptotic_multiplier_divisor, boundary_jump, dxi_coefficient,
    dxi_trace, lct, monomial_value, multiplier_ideal, valuation_ideal,
};
use valcalc_core::oracle::{
    antinef_closure_lp, interior_point_lp, lct_lp, psef_threshold_lp, standard_monomial_count,
    valuation_ideal_brute,
};
use valcalc_core::positivity::{
    example_family, semicontinuity_scan, seshadri_curve_bound, seshadri_limit, seshadri_model,
    seshadri_step, waldschmidt, weight_ray, witness_curves, CertificateKind, CurveGermSpec,
    Invariant,
};
use valcalc_core::rational::{from_u64, int, rat};
use valcalc_core::surface::{
    divisorial_approximants, dxi, hd_length, ord_dxi, toric_valuation,
    valuation_ideal_multiplicities, volume, z_closed_form, z_of_valuation_ideal_with,
    PartialQuotients,
};
use valcalc_core::toric::nef_threshold;
use valcalc_core::{
    format_rational, Basis, Cluster, Error, ExceptionalDivisor, Extended, MonomialIdeal, Rational,
    ToricDivisor, ToricSurface, WeightVector,
};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    ExactPass,
    BoundPass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Side {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub status: Status,
    pub inputs: BTreeMap<String, String>,
    pub sides: Vec<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Monomial,
    Surface,
    Positivity,
}

trait Render {
    fn render(&self) -> String;
}

impl Render for Rational {
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Render for Extended {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for u64 {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for bool {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for &str {
    fn render(&self) -> String {
        (*self).to_string()
    }
}

impl<T: Render> Render for Vec<T> {
    fn render(&self) -> String {
        let parts: Vec<String> = self.iter().map(Render::render).collect();
        format!("[{}]", parts.join(","))
    }
}

type Core<T> = valcalc_core::Result<T>;

struct Checks {
    out: Vec<Certificate>,
    opts: ClosureOptions,
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| ((*k).to_string(), v.clone())).collect()
}

impl Checks {
    fn fail(&mut self, claim: &str, ins: &[(&str, String)], sides: Vec<Side>, error: Option<String>) {
        self.out.push(Certificate {
            claim: claim.into(),
            status: Status::Fail,
            inputs: inputs(ins),
            sides,
            value: None,
            error,
        });
    }

    /// Aborts the run only when a cap was hit; other errors become a FAIL.
    fn settle<T>(&mut self, claim: &str, ins: &[(&str, String)], r: Core<T>) -> Result<Option<T>, CliError> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::IterationCap(_)) => Err(e.into()),
            Err(e) => {
                self.fail(claim, ins, Vec::new(), Some(e.to_string()));
                Ok(None)
            }
        }
    }

    fn exact<T: PartialEq + Render>(
        &mut self,
        claim: &str,
        ins: &[(&str, String)],
        lhs: (&str, Core<T>),
        rhs: (&str, Core<T>),
    ) -> Result<(), CliError> {
        let (Some(a), Some(b)) = (self.settle(claim, ins, lhs.1)?, self.settle(claim, ins, rhs.1)?) else {
            return Ok(());
        };
        let sides = vec![
            Side { label: lhs.0.into(), value: a.render() },
            Side { label: rhs.0.into(), value: b.render() },
        ];
        if a == b {
            self.out.push(Certificate {
                claim: claim.into(),
                status: Status::ExactPass,
                inputs: inputs(ins),
                sides,
                value: Some(a.render()),
                error: None,
            });
        } else {
            self.fail(claim, ins, sides, None);
        }
        Ok(())
    }

    /// Passes when the values are nondecreasing along the chain.
    fn bound(
        &mut self,
        claim: &str,
        ins: &[(&str, String)],
        chain: Vec<(&str, Core<Rational>)>,
    ) -> Result<(), CliError> {
        let mut sides = Vec::new();
        let mut values = Vec::new();
        for (label, r) in chain {
            let Some(v) = self.settle(claim, ins, r)? else { return Ok(()) };
            sides.push(Side { label: label.into(), value: v.render() });
            values.push(v);
        }
        if values.windows(2).all(|p| p[0] <= p[1]) {
            self.out.push(Certificate {
                claim: claim.into(),
                status: Status::BoundPass,
                inputs: inputs(ins),
                sides,
                value: None,
                error: None,
            });
        } else {
            self.fail(claim, ins, sides, None);
        }
        Ok(())
    }
}

fn wv(w: &[Rational]) -> Core<WeightVector> {
    WeightVector::finite(w.to_vec())
}

fn show(w: &[Rational]) -> String {
    w.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn sorted(mut gens: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    gens.sort();
    gens
}

fn gens_of(a: &MonomialIdeal) -> Vec<Vec<u64>> {
    sorted(a.gens().to_vec())
}

fn pairing(u: &[u64], a: &[u64]) -> u64 {
    u.iter().zip(a).map(|(x, y)| x * y).sum()
}

fn min_pairing(u: &[u64], gens: &[Vec<u64>]) -> Rational {
    from_u64(gens.iter().map(|g| pairing(u, g)).min().expect("nonempty"))
}

/// `-min_i u_i / w_i` straight from the weights.
fn dxi_direct(w: &[Rational], u: &[u64]) -> Rational {
    -w.iter().zip(u).map(|(wi, ui)| from_u64(*ui) / wi).min().expect("nonempty")
}

fn monomial(c: &mut Checks) -> Result<(), CliError> {
    let w12 = [int(1), int(2)];
    let w23 = [int(2), int(3)];
    let w11 = [int(1), int(1)];

    let support = vec![vec![0, 1], vec![3, 0]];
    let direct = support
        .iter()
        .map(|a| &w12[0] * from_u64(a[0]) + &w12[1] * from_u64(a[1]))
        .min()
        .map(Extended::Finite)
        .expect("nonempty");
    c.exact(
        "monomial_value.y_minus_x3",
        &[("w", show(&w12)), ("support", support.iter().map(|a| a.iter().map(u64::render).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(";"))],
        ("monomial_value", wv(&w12).and_then(|w| monomial_value(&w, &support))),
        ("min over support", Ok(direct)),
    )?;

    for (w, m, expected) in [
        (&w12, 2, vec![vec![0, 1], vec![2, 0]]),
        (&w23, 6, vec![vec![0, 2], vec![2, 1], vec![3, 0]]),
    ] {
        let ins = [("w", show(w)), ("m", int(m).render())];
        let core = wv(w).and_then(|wv| valuation_ideal(&wv, &int(m))).map(|a| gens_of(&a));
        c.exact(
            "valuation_ideal.generators",
            &ins,
            ("valuation_ideal", core.clone()),
            ("lattice enumeration", Ok(sorted(valuation_ideal_brute(w, &int(m))))),
        )?;
        c.exact("valuation_ideal.expected", &ins, ("valuation_ideal", core), ("expected", Ok(expected)))?;
    }

    for (w, m) in [(&w11, 2), (&w23, 6)] {
        let u = [1u64, 1];
        let a = wv(w).and_then(|wv| valuation_ideal(&wv, &int(m)));
        c.exact(
            "z_divisor_coefficient",
            &[("w", show(w)), ("m", int(m).render()), ("u", "1,1".into())],
            ("z_divisor_coefficient", a.clone().and_then(|a| a.z_divisor_coefficient(&u))),
            ("minus least pairing", a.map(|a| -min_pairing(&u, a.gens()))),
        )?;
    }

    for w in [&w11, &w23] {
        let u = [1u64, 1];
        let ins = [("w", show(w)), ("u", "1,1".into())];
        c.exact(
            "dxi_coefficient.formula",
            &ins,
            ("dxi_coefficient", wv(w).and_then(|wv| dxi_coefficient(&wv, &u))),
            ("-min u_i/w_i", Ok(dxi_direct(w, &u))),
        )?;
        // on the lattice m/w_i ∈ ℤ the Newton polyhedron is the half space
        let m = int(12);
        c.exact(
            "dxi_coefficient.lattice_value",
            &ins,
            ("dxi_coefficient", wv(w).and_then(|wv| dxi_coefficient(&wv, &u))),
            (
                "Z(a_12)/12",
                wv(w).and_then(|wv| valuation_ideal(&wv, &m)).and_then(|a| a.z_divisor_coefficient(&u)).map(|z| z / &m),
            ),
        )?;
    }

    let mut jumps: Vec<(Vec<Rational>, Vec<u64>)> = vec![
        (vec![int(1), int(0)], vec![1, 0]),
        (vec![int(2), int(3), int(0)], vec![1, 1, 0]),
    ];
    for q in [rat(1, 2), int(2), rat(5, 3)] {
        jumps.push((vec![q, int(0)], vec![1, 0]));
    }
    for (w, u) in &jumps {
        let ins = [("w", show(w)), ("u", u.iter().map(u64::render).collect::<Vec<_>>().join(","))];
        let jump = wv(w).and_then(|wv| boundary_jump(&wv, u));
        let expected = -w
            .iter()
            .filter(|x| !x.is_zero())
            .map(Rational::recip)
            .min()
            .expect("some weight is nonzero");
        c.exact(
            "boundary_jump",
            &ins,
            ("boundary_jump", jump.clone().map(|j| vec![j.limit_from_interior, j.value_at_boundary])),
            ("(0, -min 1/w_i)", Ok(vec![Rational::zero(), expected])),
        )?;
        c.bound(
            "boundary_jump.semicontinuity",
            &ins,
            vec![
                ("value at boundary", jump.clone().map(|j| j.value_at_boundary)),
                ("interior limit", jump.map(|j| j.limit_from_interior)),
            ],
        )?;
    }

    // multiplier ideals against the interior-point test on a box
    for (gens, c_exp) in [(vec![vec![2u64, 0], vec![0, 3]], rat(5, 6)), (vec![vec![1, 0], vec![0, 1]], int(1)), (vec![vec![3, 1], vec![0, 2], vec![4, 0]], rat(3, 2))] {
        let ins = [("ideal", IdealRender(&gens).render()), ("c", c_exp.render())];
        let j = MonomialIdeal::new(2, gens.clone()).and_then(|a| multiplier_ideal(&a, &c_exp));
        let boxed: Vec<Vec<u64>> = (0..5u64).flat_map(|a| (0..5u64).map(move |b| vec![a, b])).collect();
        c.exact(
            "multiplier_ideal.membership",
            &ins,
            ("multiplier_ideal", j.map(|j| boxed.iter().map(|a| j.contains(a)).collect::<Vec<bool>>())),
            (
                "interior point of c·Newt",
                Ok(boxed
                    .iter()
                    .map(|a| {
                        let x: Vec<Rational> = a.iter().map(|&v| from_u64(v + 1)).collect();
                        interior_point_lp(&gens, &c_exp, &x)
                    })
                    .collect()),
            ),
        )?;
    }
    let j = MonomialIdeal::new(2, vec![vec![2, 0], vec![0, 3]]).and_then(|a| multiplier_ideal(&a, &rat(5, 6)));
    c.exact(
        "multiplier_ideal.boundary_case",
        &[("ideal", "(2,0);(0,3)".into()), ("c", "5/6".into())],
        ("J inside the maximal ideal", j.map(|j| MonomialIdeal::maximal(2).contains_ideal(&j))),
        ("expected", Ok(true)),
    )?;

    let mut lct_cases: Vec<(Vec<Vec<u64>>, Rational)> = vec![(vec![vec![2, 0], vec![0, 3]], rat(5, 6))];
    for n in 1..=3usize {
        let gens = (0..n).map(|i| (0..n).map(|k| u64::from(i == k)).collect()).collect();
        lct_cases.push((gens, from_u64(n as u64)));
    }
    for k in 1..=5u64 {
        lct_cases.push((vec![vec![k, 0]], rat(1, k as i64)));
    }
    for (gens, expected) in &lct_cases {
        let ins = [("ideal", IdealRender(gens).render())];
        let a = MonomialIdeal::new(gens[0].len(), gens.clone());
        let via_lp = lct_lp(gens).ok_or(Error::InvalidArgument("the linear program found no threshold".into()));
        c.exact("lct.newton_polyhedron", &ins, ("lct", a.clone().and_then(|a| lct(&a))), ("linear program", via_lp))?;
        c.exact("lct.expected", &ins, ("lct", a.and_then(|a| lct(&a))), ("expected", Ok(expected.clone())))?;
    }
    let a = MonomialIdeal::new(2, vec![vec![2, 0], vec![0, 3]]);
    c.exact(
        "arnold",
        &[("ideal", "(2,0);(0,3)".into())],
        ("arnold", a.and_then(|a| arnold(&a))),
        ("1 / lct by linear program", lct_lp(&[vec![2, 0], vec![0, 3]]).map(|t| t.recip()).ok_or(Error::UnitIdeal)),
    )?;

    // J(a_{pm}^{1/p}) rebuilt from the interior-point test
    let (w, m, u) = (&w11, int(2), [1u64, 1]);
    let p = 2u64;
    let pm = &m * from_u64(p);
    let gens = valuation_ideal_brute(w, &pm);
    let bound = 2 * (pm.to_integer().try_into().unwrap_or(0u64)) + 2;
    let via_points = (0..=bound)
        .flat_map(|a| (0..=bound).map(move |b| [a, b]))
        .filter(|a| {
            let x: Vec<Rational> = a.iter().map(|&v| from_u64(v + 1)).collect();
            interior_point_lp(&gens, &from_u64(p).recip(), &x)
        })
        .map(|a| pairing(&u, &a))
        .min()
        .map(|v| -from_u64(v))
        .ok_or(Error::InvalidArgument("empty multiplier ideal".into()));
    c.exact(
        "asymptotic_multiplier_divisor",
        &[("w", show(w)), ("m", m.render()), ("u", "1,1".into())],
        ("asymptotic_multiplier_divisor", wv(w).and_then(|wv| asymptotic_multiplier_divisor(&wv, &m, &u))),
        ("interior points at p=2", via_points),
    )?;

    let m = int(6);
    let u = [1u64, 1];
    let w = wv(&w23);
    c.bound(
        "sandwich",
        &[("w", show(&w23)), ("m", m.render()), ("u", "1,1".into())],
        vec![
            ("Z(a_m)", w.clone().and_then(|w| valuation_ideal(&w, &m)).and_then(|a| a.z_divisor_coefficient(&u))),
            ("m·D_ξ", w.clone().and_then(|w| dxi_coefficient(&w, &u)).map(|d| d * &m)),
            ("Z(j_m)", w.and_then(|w| asymptotic_multiplier_divisor(&w, &m, &u))),
            ("zero", Ok(Rational::zero())),
        ],
    )?;

    for (w, lattice) in [(&w11, 1i64), (&w23, 6)] {
        let ins = [("w", show(w))];
        let seq = |ms: Vec<i64>| -> Core<Vec<Rational>> {
            let wvv = wv(w)?;
            ms.into_iter()
                .map(|m| Ok(arnold(&valuation_ideal(&wvv, &int(m))?)? / int(m)))
                .collect()
        };
        c.exact(
            "arnold_of_filtration.infimum",
            &ins,
            ("arnold_of_filtration", wv(w).and_then(|w| arnold_of_filtration(&w))),
            ("min over m<=24 of Arn(a_m)/m", seq((1..=24).collect()).map(|s| s.into_iter().min().expect("nonempty"))),
        )?;
        let on_lattice: Vec<i64> = (1..=3).map(|k| k * lattice).collect();
        c.exact(
            "arnold_of_filtration.lattice_sequence",
            &ins,
            ("Arn(a_m)/m on the lattice", seq(on_lattice)),
            ("arnold_of_filtration", wv(w).and_then(|w| arnold_of_filtration(&w)).map(|v| vec![v.clone(), v.clone(), v])),
        )?;
    }

    let weights: Vec<[Rational; 2]> =
        (1..=10).flat_map(|p| (1..=5).map(move |q| [rat(p, q), rat(q, p + 1)])).collect();
    let signs: Core<Vec<bool>> = weights
        .iter()
        .map(|w| {
            let wvv = wv(w)?;
            Ok(arnold_of_filtration(&wvv)?.is_positive() && dxi_coefficient(&wvv, &[1, 1])?.is_negative())
        })
        .collect();
    c.exact(
        "arnold_of_filtration.sign",
        &[("weights", format!("{} rational pairs", weights.len()))],
        ("Arn > 0 and D_ξ(1,1) < 0", signs),
        ("expected", Ok(vec![true; weights.len()])),
    )?;
    Ok(())
}

struct IdealRender<'a>(&'a [Vec<u64>]);

impl Render for IdealRender<'_> {
    fn render(&self) -> String {
        self.0
            .iter()
            .map(|g| format!("({})", g.iter().map(u64::render).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn prox(c: &Cluster) -> String {
    format!("{:?}", c.to_one_based())
}

fn surface(c: &mut Checks) -> Result<(), CliError> {
    let chain2 = Arc::new(Cluster::chain(2)?);
    let c211 = Arc::new(Cluster::new(vec![vec![], vec![0], vec![1, 0]])?);

    for (cluster, w) in [(&chain2, [int(1), int(2)]), (&c211, [int(2), int(3)])] {
        let ins = [("cluster", prox(cluster)), ("norm", "1/1".into())];
        let v = values_of_divisorial(cluster, cluster.len() - 1, &Rational::one());
        c.exact(
            "values_of_divisorial",
            &ins,
            ("values_of_divisorial", v.clone().map(|v| v.as_slice().to_vec())),
            ("toric valuation", toric_valuation(&w[0], &w[1]).map(|t| t.valuation.values().as_slice().to_vec())),
        )?;
        c.exact(
            "values_of_divisorial.proximity_equalities",
            &ins,
            ("equalities hold", v.map(|v| v.satisfies_proximity_equalities(cluster))),
            ("expected", Ok(true)),
        )?;
    }

    let e1 = ExceptionalDivisor::unit(Arc::clone(&chain2), Basis::TotalTransform, 0)?;
    c.exact(
        "basis_change",
        &[("cluster", prox(&chain2)), ("divisor", "total transform of E_1".into())],
        ("prime coordinates", Ok(e1.coeffs_in(Basis::Prime))),
        ("expected", Ok(vec![int(1), int(1)])),
    )?;

    for (i, j) in [(0usize, 0usize), (0, 1)] {
        let a = ExceptionalDivisor::unit(Arc::clone(&chain2), Basis::Prime, i)?;
        let b = ExceptionalDivisor::unit(Arc::clone(&chain2), Basis::Prime, j)?;
        // total transforms are orthonormal up to sign
        let expanded: Rational = a
            .coeffs_in(Basis::TotalTransform)
            .iter()
            .zip(b.coeffs_in(Basis::TotalTransform))
            .map(|(x, y)| -(x * y))
            .sum();
        c.exact(
            "prime_intersection",
            &[("cluster", prox(&chain2)), ("pair", format!("E_{} E_{}", i + 1, j + 1))],
            ("intersect", a.intersect(&b)),
            ("total transform expansion", Ok(expanded)),
        )?;
    }

    let strict3 = ExceptionalDivisor::unit(Arc::clone(&c211), Basis::Prime, 2)?;
    let closed = antinef_closure_with(&strict3, &c.opts).divisor;
    let lower = strict3.coeffs_in(Basis::Prime);
    let ins = [("cluster", prox(&c211)), ("divisor", "strict transform of E_3".into())];
    c.exact(
        "antinef_closure.linear_program",
        &ins,
        ("antinef_closure", Ok(closed.coeffs_in(Basis::Prime))),
        ("linear program", Ok(antinef_closure_lp(&c211, &lower).into_iter().map(|(v, _)| v).collect())),
    )?;
    let v211 = toric_valuation(&int(2), &int(3))?.valuation;
    c.exact(
        "antinef_closure.envelope",
        &ins,
        ("antinef_closure", Ok(closed.coeffs_in(Basis::TotalTransform))),
        ("-D_ξ", Ok(dxi(&v211).exceptional.neg().coeffs_in(Basis::TotalTransform))),
    )?;

    let ins = [("cluster", prox(&c211)), ("mults", "1,1,0".into())];
    let y = wv(&[int(2), int(3)]).and_then(|w| monomial_value(&w, &[vec![0, 1]]));
    c.exact(
        "noether_value",
        &ins,
        ("noether_value", noether_value(v211.values(), &[int(1), int(1), int(0)]).map(Extended::Finite)),
        ("v(y)", y.clone()),
    )?;
    c.exact(
        "ord_dxi",
        &ins,
        ("ord_dxi", ord_dxi(&v211, &[int(1), int(1), int(0)], &Rational::zero()).map(Extended::Finite)),
        ("v(y)", y),
    )?;
    let v11 = toric_valuation(&int(1), &int(2))?.valuation;
    c.exact(
        "ord_dxi",
        &[("cluster", prox(&chain2)), ("mults", "1,0".into())],
        ("ord_dxi", ord_dxi(&v11, &[int(1), int(0)], &Rational::zero()).map(Extended::Finite)),
        ("v(x)", wv(&[int(1), int(2)]).and_then(|w| monomial_value(&w, &[vec![1, 0]]))),
    )?;

    let m = int(6);
    let z = z_of_valuation_ideal_with(&v211, &m, &c.opts);
    let ins = [("values", "2,1,1".into()), ("m", m.render())];
    c.exact(
        "z_of_valuation_ideal.lattice",
        &ins,
        ("z_of_valuation_ideal", z.clone().map(|z| z.exceptional.coeffs_in(Basis::TotalTransform))),
        ("closed form", Ok(z_closed_form(&v211, &m).coeffs_in(Basis::TotalTransform))),
    )?;
    c.exact(
        "z_of_valuation_ideal.expected",
        &ins,
        ("z_of_valuation_ideal", z.map(|z| z.exceptional.coeffs_in(Basis::TotalTransform))),
        ("expected", Ok(vec![int(-2), int(-1), int(-1)])),
    )?;

    // Z(a_m) on the toric clusters against the monomial ideal, ray by ray
    for (p, q) in [(1, 2), (2, 3), (3, 5)] {
        let t = toric_valuation(&int(p), &int(q))?;
        for m in 1..=6 {
            let m = int(m);
            let ins = [("w", format!("{p},{q}")), ("m", m.render())];
            let surface_side = z_of_valuation_ideal_with(&t.valuation, &m, &c.opts)
                .map(|z| z.exceptional.coeffs_in(Basis::Prime));
            let monomial_side = wv(&[int(p), int(q)]).and_then(|w| valuation_ideal(&w, &m)).and_then(|a| {
                t.rays.iter().map(|r| a.z_divisor_coefficient(r)).collect::<Core<Vec<_>>>()
            });
            c.exact("z_of_valuation_ideal.monomial", &ins, ("cluster", surface_side), ("monomial ideal", monomial_side))?;
        }
    }

    for (p, q, m, expected) in [(2i64, 3i64, 6i64, 5u64), (1, 2, 2, 2)] {
        let t = toric_valuation(&int(p), &int(q))?;
        let mults = valuation_ideal_multiplicities(&t.valuation, &int(m));
        let hd = mults.clone().and_then(|e| hd_length(t.valuation.cluster(), &e));
        let ins = [("w", format!("{p},{q}")), ("m", int(m).render())];
        c.exact("hd_length.count", &ins, ("hd_length", hd.clone()), ("standard monomials", Ok(standard_monomial_count(&[int(p), int(q)], &int(m)))))?;
        c.exact("hd_length.expected", &ins, ("hd_length", hd), ("expected", Ok(expected)))?;
    }
    let c211_mults = valuation_ideal_multiplicities(&v211, &int(6));
    c.exact(
        "valuation_ideal_multiplicities",
        &[("values", "2,1,1".into()), ("m", "6/1".into())],
        ("multiplicities", c211_mults),
        ("expected", Ok(vec![2u64, 1, 1])),
    )?;

    for (p, q) in [(2i64, 3i64), (1, 2), (3, 5), (4, 7)] {
        let t = toric_valuation(&int(p), &int(q))?;
        c.exact(
            "volume",
            &[("w", format!("{p},{q}"))],
            ("volume", Ok(volume(&t.valuation))),
            ("1/(pq)", Ok(rat(1, p * q))),
        )?;
    }
    c.exact(
        "dxi.expected",
        &[("values", "2,1,1".into())],
        ("dxi", Ok(dxi(&v211).exceptional.coeffs_in(Basis::TotalTransform))),
        ("expected", Ok(vec![rat(-1, 3), rat(-1, 6), rat(-1, 6)])),
    )?;
    for (p, q) in [(1i64, 2i64), (2, 3), (3, 5), (1, 1)] {
        let t = toric_valuation(&int(p), &int(q))?;
        let prime = dxi(&t.valuation).exceptional.coeffs_in(Basis::Prime);
        let mono = wv(&[int(p), int(q)])
            .and_then(|w| t.rays.iter().map(|r| dxi_coefficient(&w, r)).collect::<Core<Vec<_>>>());
        c.exact("dxi.monomial", &[("w", format!("{p},{q}"))], ("cluster", Ok(prime)), ("monomial", mono))?;
    }

    let golden = PartialQuotients::Periodic { prefix: vec![], period: vec![1] };
    let approx = divisorial_approximants(&Rational::one(), &golden, 4);
    let fib: Vec<u64> = {
        let mut f = vec![1u64, 1];
        while f.len() < 10 {
            let n = f.len();
            f.push(f[n - 1] + f[n - 2]);
        }
        f
    };
    // the even convergents are F_{2k+2}/F_{2k+1} and w = (1, p/q) has volume q/p
    let expected: Vec<Rational> = (0..4).map(|k| rat(fib[2 * k] as i64, fib[2 * k + 1] as i64)).collect();
    let vols = approx.map(|a| a.iter().map(volume).collect::<Vec<_>>());
    c.exact("approximants.golden_volumes", &[("beta", "[1;1,1,...]".into()), ("k_max", "4".into())], ("volumes", vols.clone()), ("Fibonacci ratios", Ok(expected)))?;
    c.exact(
        "approximants.golden_decreasing",
        &[("beta", "[1;1,1,...]".into())],
        ("strictly decreasing", vols.map(|v| v.windows(2).all(|p| p[0] > p[1]))),
        ("expected", Ok(true)),
    )?;
    let exact = PartialQuotients::of_rational(&rat(3, 2))
        .and_then(|b| divisorial_approximants(&int(2), &b, 3))
        .map(|a| a.iter().map(|v| v.values().as_slice().to_vec()).collect::<Vec<_>>());
    c.exact(
        "approximants.rational",
        &[("w", "2,3".into())],
        ("approximants", exact),
        ("the valuation itself", Ok(vec![v211.values().as_slice().to_vec()])),
    )?;
    Ok(())
}

fn line_at_infinity(s: &Arc<ToricSurface>) -> ToricDivisor {
    ToricDivisor::from_fn(Arc::clone(s), |r| if r == [-1, -1] { Rational::one() } else { Rational::zero() })
}

/// `H` and the trace of `D_ξ` on the fan refined at the ray of `w`.
fn model_divisors(w: &[Rational; 2]) -> Core<(Arc<ToricSurface>, ToricDivisor, ToricDivisor)> {
    let s = Arc::new(ToricSurface::projective_plane().refine(weight_ray(w)?)?);
    let wvv = wv(w)?;
    let coeffs = s
        .rays()
        .iter()
        .map(|r| {
            if r[0] >= 0 && r[1] >= 0 {
                dxi_trace(&wvv, &[r[0] as u64, r[1] as u64])?
                    .finite()
                    .cloned()
                    .ok_or(Error::InvalidArgument("infinite trace".into()))
            } else {
                Ok(Rational::zero())
            }
        })
        .collect::<Core<Vec<_>>>()?;
    let z = ToricDivisor::new(Arc::clone(&s), coeffs)?;
    Ok((Arc::clone(&s), line_at_infinity(&s), z))
}

fn positivity(c: &mut Checks) -> Result<(), CliError> {
    let s = Arc::new(ToricSurface::projective_plane().refine([1, 1])?);
    let e = ToricDivisor::from_fn(Arc::clone(&s), |r| if r == [1, 1] { -Rational::one() } else { Rational::zero() });
    c.exact(
        "nef_threshold.one_point_blowup",
        &[("fan", "P2 refined at (1,1)".into()), ("Z", "-E".into())],
        ("nef_threshold", nef_threshold(&line_at_infinity(&s), &e)),
        ("H·L / E·L for the strict line", Ok(Extended::Finite(int(1)))),
    )?;

    let mut weights: Vec<[Rational; 2]> = vec![[int(1), int(1)]];
    weights.extend((2..=10).map(|m| [int(1), rat(1, m)]));
    for w in &weights {
        let ins = [("w", show(w))];
        let model = wv(w).and_then(|w| seshadri_model(&w));
        c.exact(
            "seshadri.routes",
            &ins,
            ("model", model.clone()),
            ("limit", wv(w).and_then(|w| seshadri_limit(&w, 3)).map(|l| l.value)),
        )?;
        c.exact("seshadri.expected", &ins, ("model", model), ("min weight", Ok(w[1].clone())))?;
    }
    let w11 = wv(&[int(1), int(1)]);
    c.bound(
        "seshadri.step_below_limit",
        &[("w", "1/1,1/1".into()), ("m", "12/1".into())],
        vec![
            ("t_12", w11.clone().and_then(|w| seshadri_step(&w, &int(12)))),
            ("model", w11.and_then(|w| seshadri_model(&w))),
        ],
    )?;

    let fin = |k: u64| Extended::Finite(from_u64(k));
    for m in [2i64, 3, 5] {
        let w = [int(1), rat(1, m)];
        let mut specs = vec![
            (CurveGermSpec { name: "x=0".into(), degree: 1, orders: vec![Extended::PosInf, fin(1)] }, rat(1, m)),
            (CurveGermSpec { name: "y=0".into(), degree: 1, orders: vec![fin(1), Extended::PosInf] }, int(1)),
        ];
        for k in 2..=4u64 {
            let spec = CurveGermSpec { name: format!("y=x^{k}"), degree: k, orders: vec![fin(1), fin(k)] };
            specs.push((spec, from_u64(k)));
        }
        for (spec, expected) in specs {
            c.exact(
                "seshadri_curve_bound",
                &[("w", show(&w)), ("curve", spec.name.clone())],
                ("seshadri_curve_bound", wv(&w).and_then(|w| seshadri_curve_bound(&w, &spec))),
                ("deg · max w_j/a_j", Ok(expected)),
            )?;
        }
    }

    let mut omega_weights = vec![[int(1), int(1)], [int(2), int(3)]];
    omega_weights.extend((2..=5).map(|m| [int(1), rat(1, m)]));
    for w in &omega_weights {
        let ins = [("w", show(w)), ("deg_cap", "12".into())];
        let report = wv(w).and_then(|w| waldschmidt(&w, 12));
        let lp = model_divisors(w).map(|(s, h, z)| psef_threshold_lp(s.rays(), h.coeffs(), z.coeffs()));
        c.exact("waldschmidt.psef_threshold", &ins, ("waldschmidt", report.clone().map(|r| Extended::Finite(r.value))), ("linear program", lp))?;
        c.exact("waldschmidt.max_weight", &ins, ("waldschmidt", report.clone().map(|r| r.value)), ("max weight", Ok(w.iter().max().expect("two").clone())))?;
        c.exact("waldschmidt.degree_one", &ins, ("certified at degree one", report.map(|r| r.certified_exact && r.attained_at == 1)), ("expected", Ok(true)))?;
    }

    for w in [[int(1), int(1)], [int(3), rat(1, 2)], [rat(2, 3), rat(5, 4)]] {
        let ins = [("w", show(&w))];
        let eps = wv(&w).and_then(|w| seshadri_model(&w));
        c.bound(
            "seshadri.below_waldschmidt",
            &ins,
            vec![("epsilon", eps.clone()), ("omega", wv(&w).and_then(|w| waldschmidt(&w, 4)).map(|r| r.value))],
        )?;
        let best_curve = wv(&w).and_then(|wvv| {
            witness_curves(12)
                .iter()
                .map(|spec| seshadri_curve_bound(&wvv, spec))
                .collect::<Core<Vec<_>>>()
                .map(|b| b.into_iter().min().expect("nonempty"))
        });
        c.bound("seshadri.below_curves", &ins, vec![("epsilon", eps), ("least curve bound", best_curve)])?;
    }

    let fam = example_family(10);
    let fam_ins = [("family", "(1,1/k), k=1..10, limit (1,0)".into())];
    let eps_scan = semicontinuity_scan(&[], std::slice::from_ref(&fam), Invariant::Epsilon);
    let omega_scan = semicontinuity_scan(&[], std::slice::from_ref(&fam), Invariant::Omega);
    let dxi_scan = semicontinuity_scan(&[], std::slice::from_ref(&fam), Invariant::Dxi(0));
    c.exact(
        "scan.epsilon_column",
        &fam_ins,
        ("epsilon", eps_scan.clone().map(|r| r.rows[..fam.len].iter().map(|row| row.epsilon.clone()).collect::<Vec<_>>())),
        ("1/k", Ok((1..=10).map(|k| rat(1, k)).collect())),
    )?;
    c.exact(
        "scan.omega_column",
        &fam_ins,
        ("omega", omega_scan.clone().map(|r| r.rows.iter().map(|row| row.omega.clone()).collect::<Vec<_>>())),
        ("constant 1", Ok(vec![int(1); fam.len + 1])),
    )?;
    let verdict = |r: Core<valcalc_core::positivity::ScanReport>| {
        r.map(|r| {
            let cert = &r.certificates[0];
            vec![
                format!("{:?}", cert.kind),
                cert.tail_limit.as_ref().map_or("none".into(), format_rational),
                cert.value_at_limit.to_string(),
            ]
        })
    };
    let expect = |kind: CertificateKind, tail: Rational, at: Rational| {
        Ok(vec![format!("{kind:?}"), format_rational(&tail), format_rational(&at)])
    };
    c.exact(
        "scan.omega_semicontinuous",
        &fam_ins,
        ("certificate", verdict(omega_scan).map(strings)),
        ("expected", expect(CertificateKind::Semicontinuous, int(1), int(1)).map(strings)),
    )?;
    c.exact(
        "scan.dxi_semicontinuous",
        &[("family", "(1,1/k), k=1..10, limit (1,0)".into()), ("u", "1,0".into())],
        ("certificate", verdict(dxi_scan).map(strings)),
        ("expected", expect(CertificateKind::Semicontinuous, int(0), int(-1)).map(strings)),
    )?;
    c.exact(
        "scan.epsilon_counterexample",
        &fam_ins,
        ("certificate", verdict(eps_scan).map(strings)),
        ("expected", expect(CertificateKind::Counterexample, int(0), int(1)).map(strings)),
    )?;
    Ok(())
}

fn strings(v: Vec<String>) -> Vec<StringRender> {
    v.into_iter().map(StringRender).collect()
}

#[derive(PartialEq)]
struct StringRender(String);

impl Render for StringRender {
    fn render(&self) -> String {
        self.0.clone()
    }
}

pub fn run(suite: Suite, opts: ClosureOptions) -> Result<Vec<Certificate>, CliError> {
    let mut checks = Checks { out: Vec::new(), opts };
    if matches!(suite, Suite::All | Suite::Monomial) {
        monomial(&mut checks)?;
    }
    if matches!(suite, Suite::All | Suite::Surface) {
        surface(&mut checks)?;
    }
    if matches!(suite, Suite::All | Suite::Positivity) {
        positivity(&mut checks)?;
    }
    Ok(checks.out)
}
