//! Divisorial valuations on a smooth surface and their b-divisors.
//!
//! A divisorial valuation centred at a point is `v = v_n · ord_{E_n}` for the
//! last exceptional divisor of a cluster; its values `v_i = v(E_i)` satisfy the
//! proximity equalities. The b-divisor `D_ξ` is determined on the blowup of
//! the cluster and equals `-vol(v) Σ v_i Ē_i` with `vol(v) = 1 / Σ v_i²`.

use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cluster::{
    integral_antinef_closure, values_of_divisorial, Basis, ClosureOptions, Cluster,
    ExceptionalDivisor, ValueVector,
};
use crate::error::{Error, Result};
use crate::rational::{ceil_int, from_u64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceValuation {
    cluster: Arc<Cluster>,
    values: ValueVector,
}

impl SurfaceValuation {
    /// `normalization · ord_{E_n}` for the last point of the cluster.
    pub fn divisorial(cluster: Arc<Cluster>, normalization: &Rational) -> Result<Self> {
        let values = values_of_divisorial(&cluster, cluster.len() - 1, normalization)?;
        Ok(SurfaceValuation { cluster, values })
    }

    pub fn new(cluster: Arc<Cluster>, values: ValueVector) -> Result<Self> {
        if values.len() != cluster.len() {
            return Err(Error::LengthMismatch { expected: cluster.len(), got: values.len() });
        }
        if !values.satisfies_proximity_equalities(&cluster) {
            return Err(Error::InvalidArgument(
                "values violate the proximity equalities".into(),
            ));
        }
        Ok(SurfaceValuation { cluster, values })
    }

    pub fn cluster(&self) -> &Arc<Cluster> {
        &self.cluster
    }

    pub fn values(&self) -> &ValueVector {
        &self.values
    }

    pub fn normalization(&self) -> &Rational {
        self.values.last()
    }
}

/// A monomial valuation in two variables, seen through its cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricValuation {
    pub valuation: SurfaceValuation,
    /// The toric ray of each exceptional divisor `E_i`.
    pub rays: Vec<[u64; 2]>,
}

/// The cluster of centres of `v_w` for `w = (w_1, w_2)` positive rationals.
///
/// Each blowup of the current centre replaces the weights `(a, b)` by
/// `(a, b - a)` or `(a - b, b)` and records `v_i = min(a, b)`; the process
/// stops when the two weights agree. A new centre is a satellite point
/// exactly when the other curve through it is an earlier exceptional divisor.
pub fn toric_valuation(w1: &Rational, w2: &Rational) -> Result<ToricValuation> {
    if !w1.is_positive() || !w2.is_positive() {
        return Err(Error::InvalidWeights("toric weights must be positive".into()));
    }
    #[derive(Clone, Copy)]
    enum Label {
        Axis,
        Exceptional(usize),
    }
    let (mut a, mut b) = (w1.clone(), w2.clone());
    let (mut rx, mut ry) = ([1u64, 0], [0u64, 1]);
    let (mut lx, mut ly) = (Label::Axis, Label::Axis);
    let mut prox: Vec<Vec<usize>> = Vec::new();
    let mut values = Vec::new();
    let mut rays = Vec::new();
    loop {
        let i = values.len();
        let mut list = Vec::new();
        if i > 0 {
            list.push(i - 1);
            let other = if matches!(lx, Label::Exceptional(j) if j == i - 1) { ly } else { lx };
            if let Label::Exceptional(j) = other {
                list.push(j);
            }
        }
        prox.push(list);
        let u = [rx[0] + ry[0], rx[1] + ry[1]];
        rays.push(u);
        if a == b {
            values.push(a);
            break;
        }
        if a < b {
            values.push(a.clone());
            b -= &a;
            rx = u;
            lx = Label::Exceptional(i);
        } else {
            values.push(b.clone());
            a -= &b;
            ry = u;
            ly = Label::Exceptional(i);
        }
    }
    let cluster = Arc::new(Cluster::new(prox)?);
    let valuation = SurfaceValuation::new(cluster, ValueVector::new(values)?)?;
    Ok(ToricValuation { valuation, rays })
}

/// Trace of a b-divisor on the blowup of a cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BDivisorTrace {
    /// Coefficient of the centre on the base surface; zero for point centres.
    pub base_component: Rational,
    pub exceptional: ExceptionalDivisor,
    /// Whether the coefficients are those of an actual ideal (integral) or a limit.
    pub integral: bool,
}

impl BDivisorTrace {
    /// Every prime coefficient `<= 0`.
    pub fn is_anti_effective(&self) -> bool {
        self.exceptional.neg().is_effective()
    }

    /// Nonnegative against every exceptional curve, i.e. `-D` is antinef.
    pub fn is_nef(&self) -> bool {
        self.exceptional.neg().is_antinef()
    }
}

/// `Z(a_m)` for `a_m = { f : v(f) >= m }`.
///
/// `v(f) >= m` means `ord_{E_n}(f) >= k := ⌈m / v_n⌉`, and the complete ideal
/// of that condition corresponds to the least integral antinef divisor whose
/// `Ẽ_n` coefficient is at least `k`; `Z` is its negative.
pub fn z_of_valuation_ideal(v: &SurfaceValuation, m: &Rational) -> Result<BDivisorTrace> {
    z_of_valuation_ideal_with(v, m, &ClosureOptions::default())
}

pub fn z_of_valuation_ideal_with(
    v: &SurfaceValuation,
    m: &Rational,
    opts: &ClosureOptions,
) -> Result<BDivisorTrace> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let n = v.cluster.len();
    let k = Rational::from_integer(ceil_int(&(m / v.normalization())));
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[n - 1] = k;
    let d = ExceptionalDivisor::new(Arc::clone(&v.cluster), Basis::Prime, coeffs)?;
    let closed = integral_antinef_closure(&d, opts)?.divisor;
    Ok(BDivisorTrace {
        base_component: Rational::zero(),
        exceptional: closed.neg().to_basis(Basis::TotalTransform),
        integral: true,
    })
}

/// `-(m / 𝐯²) Σ v_i Ē_i`, which is `Z(a_m)` when `m v_n / 𝐯²` is an integer.
pub fn z_closed_form(v: &SurfaceValuation, m: &Rational) -> ExceptionalDivisor {
    let factor = -(m / v.values.norm_squared());
    let coeffs = v.values.as_slice().iter().map(|x| x * &factor).collect();
    ExceptionalDivisor::new(Arc::clone(&v.cluster), Basis::TotalTransform, coeffs)
        .expect("one value per point")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffLatticeReport {
    pub on_lattice: bool,
    /// Whether `Z(a_m)` differs from [`z_closed_form`] at this `m`.
    pub closed_form_differs: bool,
}

pub fn off_lattice_report(v: &SurfaceValuation, m: &Rational) -> Result<OffLatticeReport> {
    let z = z_of_valuation_ideal(v, m)?;
    let closed = z_closed_form(v, m);
    let on_lattice = (m * v.normalization() / v.values.norm_squared()).is_integer();
    Ok(OffLatticeReport { on_lattice, closed_form_differs: z.exceptional != closed })
}

/// The Hoskin–Deligne colength `Σ e_i (e_i + 1) / 2` of the complete ideal
/// with multiplicities `e` (total transform coordinates).
pub fn hd_length(cluster: &Cluster, mults: &[u64]) -> Result<u64> {
    if mults.len() != cluster.len() {
        return Err(Error::LengthMismatch { expected: cluster.len(), got: mults.len() });
    }
    for i in 0..mults.len() {
        let sum: u64 = cluster.proximate_points(i).map(|k| mults[k]).sum();
        if mults[i] < sum {
            return Err(Error::NotProximityCompliant(i + 1));
        }
    }
    Ok(mults.iter().map(|e| e * (e + 1) / 2).sum())
}

/// Multiplicities of `a_m` at the points, read off `Z(a_m)`.
pub fn valuation_ideal_multiplicities(v: &SurfaceValuation, m: &Rational) -> Result<Vec<u64>> {
    let z = z_of_valuation_ideal(v, m)?;
    z.exceptional
        .coeffs_in(Basis::TotalTransform)
        .iter()
        .map(|c| {
            (-c).to_integer().to_u64().ok_or_else(|| {
                Error::InvalidArgument("multiplicities must be nonnegative integers".into())
            })
        })
        .collect()
}

/// `1 / Σ v_i²`.
pub fn volume(v: &SurfaceValuation) -> Rational {
    v.values.norm_squared().recip()
}

/// `D_ξ = -vol(v) Σ v_i Ē_i`.
pub fn dxi(v: &SurfaceValuation) -> BDivisorTrace {
    BDivisorTrace {
        base_component: Rational::zero(),
        exceptional: z_closed_form(v, &Rational::one()),
        integral: false,
    }
}

/// `ord_{D_ξ}(div f) = sup { t : π*div(f) + t D_ξ >= 0 }` on the blowup of the cluster.
///
/// `f_mults` are the multiplicities of the strict transforms of `f` at the
/// points. `ord_{E_j}(π*f) = Σ_i f_i V[j][i]` and the prime coefficients of
/// `D_ξ` are `-vol Σ_i v_i V[j][i]`; the supremum is the least ratio. For a
/// divisorial valuation the strict transform of `f` misses the general point
/// of `E_n`, so `residual` has to be zero.
pub fn ord_dxi(v: &SurfaceValuation, f_mults: &[Rational], residual: &Rational) -> Result<Rational> {
    let n = v.cluster.len();
    if f_mults.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: f_mults.len() });
    }
    if !residual.is_zero() {
        return Err(Error::InvalidArgument(
            "a divisorial valuation has no residual term".into(),
        ));
    }
    let germ = ExceptionalDivisor::new(
        Arc::clone(&v.cluster),
        Basis::TotalTransform,
        f_mults.to_vec(),
    )?;
    if f_mults.iter().any(Signed::is_negative) || !germ.is_antinef() {
        return Err(Error::NotProximityCompliant(
            (0..n)
                .find(|&i| {
                    f_mults[i].is_negative()
                        || f_mults[i]
                            < v.cluster.proximate_points(i).map(|k| f_mults[k].clone()).sum()
                })
                .map_or(0, |i| i + 1),
        ));
    }
    let vm = v.cluster.values_matrix();
    let vol = volume(v);
    let mut best: Option<Rational> = None;
    for j in 0..n {
        let num: Rational = (0..n).map(|i| &f_mults[i] * vm.get(j, i)).sum();
        let den: Rational = (0..n).map(|i| &v.values.as_slice()[i] * vm.get(j, i)).sum::<Rational>() * &vol;
        let ratio = num / den;
        best = Some(match best {
            Some(b) if b <= ratio => b,
            _ => ratio,
        });
    }
    Ok(best.expect("clusters are nonempty"))
}

/// Partial quotients `[a_0; a_1, a_2, ...]` of a real number `β >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartialQuotients {
    /// The full expansion of a rational number.
    Finite(Vec<u64>),
    /// An eventually periodic expansion (a quadratic irrational).
    Periodic { prefix: Vec<u64>, period: Vec<u64> },
    /// A known prefix of an infinite expansion.
    Truncated(Vec<u64>),
}

impl PartialQuotients {
    pub fn of_rational(beta: &Rational) -> Result<Self> {
        if *beta < Rational::one() {
            return Err(Error::InvalidWeights("the ratio must be at least 1".into()));
        }
        let mut out = Vec::new();
        let mut x = beta.clone();
        loop {
            let a = x.floor();
            out.push(a.to_integer().to_u64().ok_or_else(|| {
                Error::InvalidWeights("partial quotient too large".into())
            })?);
            let frac = &x - &a;
            if frac.is_zero() {
                return Ok(PartialQuotients::Finite(out));
            }
            x = frac.recip();
        }
    }

    fn validate(&self) -> Result<()> {
        let (first, rest_ok) = match self {
            PartialQuotients::Finite(v) | PartialQuotients::Truncated(v) => {
                (v.first().copied(), v.iter().skip(1).all(|&a| a > 0))
            }
            PartialQuotients::Periodic { prefix, period } => {
                if period.is_empty() || period.contains(&0) {
                    return Err(Error::InvalidArgument("period must be nonempty and positive".into()));
                }
                (
                    prefix.first().or(period.first()).copied(),
                    prefix.iter().skip(1).all(|&a| a > 0),
                )
            }
        };
        match first {
            Some(a0) if a0 >= 1 && rest_ok => Ok(()),
            _ => Err(Error::InvalidArgument(
                "partial quotients must be positive with a_0 >= 1".into(),
            )),
        }
    }

    /// The first `k` partial quotients, if the stream has that many.
    fn take(&self, k: usize) -> Option<Vec<u64>> {
        match self {
            PartialQuotients::Finite(v) | PartialQuotients::Truncated(v) => {
                (k <= v.len()).then(|| v[..k].to_vec())
            }
            PartialQuotients::Periodic { prefix, period } => Some(
                prefix.iter().chain(period.iter().cycle()).take(k).copied().collect(),
            ),
        }
    }
}

/// Convergent `p/q` of `[a_0; ..., a_k]`.
fn convergent(quotients: &[u64]) -> Rational {
    let mut x = from_u64(*quotients.last().expect("nonempty"));
    for &a in quotients.iter().rev().skip(1) {
        x = from_u64(a) + x.recip();
    }
    x
}

/// Divisorial valuations increasing to the monomial valuation of weights
/// `scale · (1, β)`.
///
/// The approximants are the valuations of weights `scale · (1, p_k/q_k)` for
/// the even convergents, which lie below `β`. A rational `β` yields the
/// valuation itself.
pub fn divisorial_approximants(
    scale: &Rational,
    beta: &PartialQuotients,
    k_max: usize,
) -> Result<Vec<SurfaceValuation>> {
    beta.validate()?;
    if !scale.is_positive() {
        return Err(Error::InvalidWeights("scale must be positive".into()));
    }
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let at = |ratio: Rational| -> Result<SurfaceValuation> {
        Ok(toric_valuation(scale, &(scale * ratio))?.valuation)
    };
    if let PartialQuotients::Finite(v) = beta {
        return Ok(vec![at(convergent(v))?]);
    }
    let mut out = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let len = 2 * k + 1;
        let prefix = beta.take(len).ok_or_else(|| {
            let available = match beta {
                PartialQuotients::Truncated(v) => v.len().div_ceil(2),
                _ => 0,
            };
            Error::StreamExhausted { requested: k_max, available }
        })?;
        out.push(at(convergent(&prefix))?);
    }
    Ok(out)
}
