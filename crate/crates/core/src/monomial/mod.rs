//! Monomial valuations `v_w(Σ a_α z^α) = min { ⟨w, α⟩ : a_α ≠ 0 }`.
//!
//! Valuation ideals of `v_w` are monomial, and every b-divisor attached to
//! them is determined by its coefficients `ord_P` along toric divisors `P`,
//! one per primitive ray `u ∈ ℕ^c`.

mod ideal;
mod multiplier;
mod newton;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use ideal::{Exponent, MonomialIdeal};
pub use multiplier::multiplier_ideal;
pub use newton::{arnold, lct, Facet, NewtonPolyhedron};

use crate::error::{Error, Result};
use crate::rational::{ceil_int, from_u64, Extended, Rational};

/// Weights of a monomial valuation or seminorm; entries are `>= 0` or `INF`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Extended>);

impl WeightVector {
    pub fn new(entries: Vec<Extended>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeights("at least one weight is required".into()));
        }
        for e in &entries {
            match e {
                Extended::NegInf => return Err(Error::InvalidWeights("-inf weight".into())),
                Extended::Finite(r) if r.is_negative() => {
                    return Err(Error::InvalidWeights(format!("negative weight {e}")))
                }
                _ => {}
            }
        }
        if entries.iter().all(|e| *e == Extended::PosInf) {
            return Err(Error::InvalidWeights("all weights infinite".into()));
        }
        Ok(WeightVector(entries))
    }

    pub fn finite(values: Vec<Rational>) -> Result<Self> {
        WeightVector::new(values.into_iter().map(Extended::Finite).collect())
    }

    /// Parses `2/1,3/1`; entries may also be `inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s.split(',').map(Extended::parse).collect::<Result<Vec<_>>>()?;
        WeightVector::new(entries)
    }

    pub fn entries(&self) -> &[Extended] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The weights as rationals, provided all are finite and positive.
    pub fn positive_finite(&self) -> Result<Vec<Rational>> {
        self.0
            .iter()
            .map(|e| match e {
                Extended::Finite(r) if r.is_positive() => Ok(r.clone()),
                _ => Err(Error::InvalidWeights(format!(
                    "finite positive weights required, got {self}"
                ))),
            })
            .collect()
    }

    pub fn is_positive_finite(&self) -> bool {
        self.positive_finite().is_ok()
    }

    pub fn scaled(&self, factor: &Rational) -> Result<WeightVector> {
        if !factor.is_positive() {
            return Err(Error::InvalidArgument("scaling factor must be positive".into()));
        }
        Ok(WeightVector(
            self.0
                .iter()
                .map(|e| match e {
                    Extended::Finite(r) => Extended::Finite(r * factor),
                    other => other.clone(),
                })
                .collect(),
        ))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `min_α ⟨w, α⟩` over the support of a polynomial, with `INF · 0 = 0`.
pub fn monomial_value(w: &WeightVector, support: &[Exponent]) -> Result<Extended> {
    if support.is_empty() {
        return Err(Error::InvalidArgument("the zero function has no value".into()));
    }
    let mut best = Extended::PosInf;
    for alpha in support {
        if alpha.len() != w.len() {
            return Err(Error::LengthMismatch { expected: w.len(), got: alpha.len() });
        }
        let mut total = Rational::zero();
        let mut infinite = false;
        for (wi, &a) in w.entries().iter().zip(alpha) {
            if a == 0 {
                continue;
            }
            match wi {
                Extended::Finite(r) => total += r * from_u64(a),
                _ => infinite = true,
            }
        }
        let value = if infinite { Extended::PosInf } else { Extended::Finite(total) };
        best = best.min(value);
    }
    Ok(best)
}

/// Minimal generators of `a_m = { z^α : ⟨w, α⟩ >= m }`; the unit ideal when `m <= 0`.
pub fn valuation_ideal(w: &WeightVector, m: &Rational) -> Result<MonomialIdeal> {
    let w = w.positive_finite()?;
    let c = w.len();
    if !m.is_positive() {
        return Ok(MonomialIdeal::unit(c));
    }
    let mut gens = Vec::new();
    let mut prefix = Vec::with_capacity(c);
    enumerate_staircase(&w, m, &mut prefix, &Rational::zero(), &mut gens);
    MonomialIdeal::new(c, gens)
}

/// Candidates whose last coordinate is the least one reaching `m` given the
/// others; every earlier coordinate stops at the first value that reaches `m`.
fn enumerate_staircase(
    w: &[Rational],
    m: &Rational,
    prefix: &mut Vec<u64>,
    partial: &Rational,
    out: &mut Vec<Exponent>,
) {
    let i = prefix.len();
    if i + 1 == w.len() {
        let rest = m - partial;
        let last = if rest.is_positive() {
            ceil_int(&(rest / &w[i])).to_u64().expect("exponent fits in u64")
        } else {
            0
        };
        let mut alpha = prefix.clone();
        alpha.push(last);
        out.push(alpha);
        return;
    }
    let mut k = 0u64;
    let mut sum = partial.clone();
    loop {
        prefix.push(k);
        enumerate_staircase(w, m, prefix, &sum, out);
        prefix.pop();
        if sum >= *m {
            break;
        }
        k += 1;
        sum += &w[i];
    }
}

/// `ord_P(D_ξ) = -min_i u_i / w_i` for finite positive weights.
pub fn dxi_coefficient(w: &WeightVector, u: &[u64]) -> Result<Rational> {
    let w = w.positive_finite()?;
    check_ray(u, w.len())?;
    let min = w
        .iter()
        .zip(u)
        .map(|(wi, &ui)| from_u64(ui) / wi)
        .min()
        .expect("nonempty weights");
    Ok(-min)
}

/// `ord_P(D_ξ)` for any weight vector, boundary points included.
///
/// If some weight is infinite the seminorm has a kernel and `D_ξ = 0`.
/// Otherwise zero weights drop out of the minimum; when every weight is zero
/// (the trivial valuation) the coefficient is `-inf`.
pub fn dxi_trace(w: &WeightVector, u: &[u64]) -> Result<Extended> {
    check_ray(u, w.len())?;
    if w.entries().contains(&Extended::PosInf) {
        return Ok(Extended::zero());
    }
    let min = w
        .entries()
        .iter()
        .zip(u)
        .filter_map(|(wi, &ui)| match wi {
            Extended::Finite(r) if r.is_positive() => Some(from_u64(ui) / r),
            _ => None,
        })
        .min();
    Ok(match min {
        Some(m) => Extended::Finite(-m),
        None => Extended::NegInf,
    })
}

fn check_ray(u: &[u64], c: usize) -> Result<()> {
    if u.len() != c {
        return Err(Error::LengthMismatch { expected: c, got: u.len() });
    }
    if u.iter().all(|&x| x == 0) {
        return Err(Error::InvalidArgument("the ray must be nonzero".into()));
    }
    if u.iter().fold(0u64, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::InvalidArgument(format!("ray {u:?} is not primitive")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryJump {
    pub limit_from_interior: Rational,
    pub value_at_boundary: Rational,
}

/// Coefficient of `D_ξ` along the blowup of `(z_i)_{i ∉ I}`, approached from
/// the open orthant and evaluated on the face `I = { i : w_i = 0 }`.
///
/// Interior weights replace the zeros by `1/k`; the coefficient along the
/// indicatrix ray is then `0` for every `k`, which is the limit returned.
pub fn boundary_jump(w: &WeightVector, u: &[u64]) -> Result<BoundaryJump> {
    let c = w.len();
    let zero_set: Vec<bool> = w.entries().iter().map(|e| *e == Extended::zero()).collect();
    let k = zero_set.iter().filter(|&&z| z).count();
    if k == 0 || k == c {
        return Err(Error::InvalidWeights(
            "the boundary face must be nonempty and proper".into(),
        ));
    }
    if !w.entries().iter().all(Extended::is_finite) {
        return Err(Error::InvalidWeights("boundary weights must be finite".into()));
    }
    let indicatrix: Vec<u64> = zero_set.iter().map(|&z| u64::from(!z)).collect();
    if u != indicatrix.as_slice() {
        return Err(Error::InvalidArgument(format!(
            "ray {u:?} is not the indicatrix {indicatrix:?} of the support"
        )));
    }
    let mut limit: Option<Rational> = None;
    for denom in [1u64, 10, 100, 1000] {
        let interior: Vec<Rational> = w
            .entries()
            .iter()
            .map(|e| match e {
                Extended::Finite(r) if r.is_zero() => Rational::new(One::one(), denom.into()),
                Extended::Finite(r) => r.clone(),
                _ => unreachable!(),
            })
            .collect();
        let value = dxi_coefficient(&WeightVector::finite(interior)?, u)?;
        match &limit {
            Some(l) if *l != value => {
                return Err(Error::InvalidArgument("interior coefficients are not constant".into()))
            }
            _ => limit = Some(value),
        }
    }
    let boundary = match dxi_trace(w, u)? {
        Extended::Finite(r) => r,
        other => return Err(Error::InvalidArgument(format!("unexpected boundary trace {other}"))),
    };
    Ok(BoundaryJump { limit_from_interior: limit.expect("sampled"), value_at_boundary: boundary })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticMultiplier {
    pub ideal: MonomialIdeal,
    /// The exponent `p` with `J(a_{pm}^{1/p})` already stable.
    pub stabilizing_p: u64,
}

/// The asymptotic multiplier ideal `J(a_{p m}^{1/p})` for `p` large.
///
/// Once every `p m / w_i` is an integer the Newton polyhedron of `a_{pm}` is
/// exactly `{ ⟨w, α⟩ >= pm }`, and the ideal no longer changes; stability is
/// checked on the next multiple as well.
pub fn asymptotic_multiplier_ideal(w: &WeightVector, m: &Rational) -> Result<AsymptoticMultiplier> {
    let weights = w.positive_finite()?;
    let c = weights.len();
    if !m.is_positive() {
        return Ok(AsymptoticMultiplier { ideal: MonomialIdeal::unit(c), stabilizing_p: 1 });
    }
    let p0 = weights.iter().fold(num_bigint::BigInt::one(), |acc, wi| {
        acc.lcm((m / wi).denom())
    });
    let p0 = p0.to_u64().ok_or(Error::IterationCap(u64::MAX as usize))?;
    let at = |p: u64| -> Result<MonomialIdeal> {
        let pr = from_u64(p);
        multiplier_ideal(&valuation_ideal(w, &(m * &pr))?, &pr.recip())
    };
    let ideal = at(p0)?;
    if at(2 * p0)? != ideal {
        return Err(Error::IterationCap(2));
    }
    Ok(AsymptoticMultiplier { ideal, stabilizing_p: p0 })
}

/// `ord_P Z(j_m)` for the asymptotic multiplier ideal `j_m` of the filtration.
pub fn asymptotic_multiplier_divisor(w: &WeightVector, m: &Rational, u: &[u64]) -> Result<Rational> {
    check_ray(u, w.len())?;
    asymptotic_multiplier_ideal(w, m)?.ideal.z_divisor_coefficient(u)
}

/// `inf_m Arn(a_m) / m = 1 / Σ w_i`.
///
/// `Newt(a_m)` lies in `{ ⟨w, α⟩ >= m }`, with equality when every `m / w_i`
/// is integral, so `lct(a_m) <= Σ w_i / m` with equality on that lattice.
pub fn arnold_of_filtration(w: &WeightVector) -> Result<Rational> {
    let w = w.positive_finite()?;
    Ok(w.iter().sum::<Rational>().recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn wv(xs: &[(i64, i64)]) -> WeightVector {
        WeightVector::finite(xs.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    #[test]
    fn weight_parsing() {
        let w = WeightVector::parse("2/1,inf").unwrap();
        assert_eq!(w.entries()[1], Extended::PosInf);
        assert!(WeightVector::parse("inf,inf").is_err());
        assert!(WeightVector::parse("-1,2").is_err());
        assert_eq!(w.to_string(), "2/1,inf");
    }

    #[test]
    fn monomial_value_examples() {
        let w = wv(&[(1, 1), (2, 1)]);
        assert_eq!(
            monomial_value(&w, &[vec![0, 1], vec![3, 0]]).unwrap(),
            Extended::Finite(int(2))
        );
        assert_eq!(
            monomial_value(&wv(&[(1, 1), (1, 1)]), &[vec![0, 0], vec![1, 3]]).unwrap(),
            Extended::zero()
        );
        let winf = WeightVector::parse("1,inf").unwrap();
        assert_eq!(monomial_value(&winf, &[vec![0, 1]]).unwrap(), Extended::PosInf);
        assert_eq!(monomial_value(&winf, &[vec![2, 0]]).unwrap(), Extended::Finite(int(2)));
        assert!(monomial_value(&winf, &[]).is_err());
    }

    #[test]
    fn valuation_ideal_examples() {
        let gens = |w: &[(i64, i64)], m: i64| valuation_ideal(&wv(w), &int(m)).unwrap().gens().to_vec();
        assert_eq!(gens(&[(1, 1), (1, 1)], 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(gens(&[(1, 1), (2, 1)], 2), vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(gens(&[(2, 1), (3, 1)], 6), vec![vec![0, 2], vec![2, 1], vec![3, 0]]);
        assert!(valuation_ideal(&wv(&[(1, 1)]), &int(0)).unwrap().is_unit());
        assert!(valuation_ideal(&WeightVector::parse("1,inf").unwrap(), &int(1)).is_err());
    }

    #[test]
    fn z_and_dxi_examples() {
        let a = valuation_ideal(&wv(&[(1, 1), (1, 1)]), &int(2)).unwrap();
        assert_eq!(a.z_divisor_coefficient(&[1, 1]).unwrap(), int(-2));
        let a = valuation_ideal(&wv(&[(2, 1), (3, 1)]), &int(6)).unwrap();
        assert_eq!(a.z_divisor_coefficient(&[1, 1]).unwrap(), int(-2));
        assert_eq!(dxi_coefficient(&wv(&[(1, 1), (1, 1)]), &[1, 1]).unwrap(), int(-1));
        assert_eq!(dxi_coefficient(&wv(&[(2, 1), (3, 1)]), &[1, 1]).unwrap(), rat(-1, 3));
        // along x = 0 the generator y^k has order zero
        assert_eq!(dxi_coefficient(&wv(&[(1, 1), (7, 3)]), &[1, 0]).unwrap(), int(0));
        assert_eq!(dxi_coefficient(&wv(&[(1, 1), (7, 3)]), &[1, 1]).unwrap(), rat(-3, 7));
        assert!(dxi_coefficient(&wv(&[(1, 1), (1, 1)]), &[2, 2]).is_err());
    }

    #[test]
    fn trace_at_degenerate_weights() {
        let w = WeightVector::parse("1,inf").unwrap();
        assert_eq!(dxi_trace(&w, &[1, 1]).unwrap(), Extended::zero());
        let w = WeightVector::parse("0,0").unwrap();
        assert_eq!(dxi_trace(&w, &[1, 0]).unwrap(), Extended::NegInf);
        let w = WeightVector::parse("1,0").unwrap();
        assert_eq!(dxi_trace(&w, &[1, 0]).unwrap(), Extended::Finite(int(-1)));
        assert_eq!(dxi_trace(&w, &[0, 1]).unwrap(), Extended::zero());
    }

    #[test]
    fn boundary_jump_examples() {
        let j = boundary_jump(&WeightVector::parse("1,0").unwrap(), &[1, 0]).unwrap();
        assert_eq!(j, BoundaryJump { limit_from_interior: int(0), value_at_boundary: int(-1) });
        let j = boundary_jump(&WeightVector::parse("2,3,0").unwrap(), &[1, 1, 0]).unwrap();
        assert_eq!(j.value_at_boundary, rat(-1, 3));
        assert_eq!(j.limit_from_interior, int(0));
        let j = boundary_jump(&WeightVector::parse("5/2,0").unwrap(), &[1, 0]).unwrap();
        assert_eq!(j.value_at_boundary, rat(-2, 5));
        assert!(boundary_jump(&wv(&[(1, 1), (1, 1)]), &[1, 1]).is_err());
        assert!(boundary_jump(&WeightVector::parse("0,0").unwrap(), &[1, 1]).is_err());
        assert!(boundary_jump(&WeightVector::parse("1,0").unwrap(), &[1, 1]).is_err());
    }

    #[test]
    fn asymptotic_multiplier_examples() {
        let w = wv(&[(1, 1), (1, 1)]);
        assert_eq!(asymptotic_multiplier_divisor(&w, &int(2), &[1, 1]).unwrap(), int(-1));
        let w = wv(&[(2, 1), (3, 1)]);
        let am = asymptotic_multiplier_ideal(&w, &int(6)).unwrap();
        assert_eq!(am.ideal, MonomialIdeal::maximal(2));
        let r = am.ideal.z_divisor_coefficient(&[1, 1]).unwrap();
        let left = valuation_ideal(&w, &int(6)).unwrap().z_divisor_coefficient(&[1, 1]).unwrap();
        let mid = int(6) * dxi_coefficient(&w, &[1, 1]).unwrap();
        assert!(left <= mid && mid <= r && r <= int(0));
        assert_eq!(asymptotic_multiplier_divisor(&w, &int(0), &[1, 1]).unwrap(), int(0));
    }

    #[test]
    fn arnold_of_filtration_examples() {
        assert_eq!(arnold_of_filtration(&wv(&[(1, 1), (1, 1)])).unwrap(), rat(1, 2));
        let w = wv(&[(2, 1), (3, 1)]);
        let target = arnold_of_filtration(&w).unwrap();
        assert_eq!(target, rat(1, 5));
        for m in 1..=18 {
            let a = valuation_ideal(&w, &int(m)).unwrap();
            let seq = arnold(&a).unwrap() / int(m);
            assert!(seq >= target);
            if m % 6 == 0 {
                assert_eq!(seq, target);
            }
        }
    }
}
