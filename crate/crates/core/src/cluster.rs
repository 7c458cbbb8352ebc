//! Clusters of infinitely near points on a smooth surface.
//!
//! A cluster `p_1, ..., p_n` is produced by successive point blowups, each
//! `p_i` lying on the exceptional divisor `E_{i-1}` of the previous one. The
//! only combinatorial datum needed is the proximity relation: `p_i` is
//! proximate to `p_j` when it lies on the strict transform of `E_j`.
//!
//! Exceptional divisors on the final blowup are written either in the basis of
//! total transforms `Ē_i` (where the intersection form is `-identity`) or in
//! the basis of strict transforms `Ẽ_i = Ē_i - Σ_{k prox. to i} Ē_k`.
//!
//! Points are indexed from `0` in this API; the JSON format used by the CLI is
//! one-based and is converted with [`Cluster::from_one_based`].

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{ceil_int, is_integral, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cluster {
    /// `prox[i]` is `[]` for `i = 0` and `[i-1]` or `[i-1, j]` otherwise.
    prox: Vec<Vec<usize>>,
}

impl Cluster {
    /// Builds a cluster from zero-based proximity lists.
    ///
    /// Each later point must be proximate to its predecessor and to at most
    /// one other point `j`. Such a `j` must itself be a point its predecessor
    /// is proximate to, since the strict transform of `E_j` has to meet
    /// `E_{i-1}`.
    pub fn new(proximities: Vec<Vec<usize>>) -> Result<Self> {
        if proximities.is_empty() {
            return Err(Error::InvalidCluster("a cluster needs at least one point".into()));
        }
        let mut prox: Vec<Vec<usize>> = Vec::with_capacity(proximities.len());
        for (i, list) in proximities.into_iter().enumerate() {
            let mut list = list;
            list.sort_unstable_by(|a, b| b.cmp(a));
            list.dedup();
            if i == 0 {
                if !list.is_empty() {
                    return Err(Error::InvalidCluster(
                        "the first point cannot be proximate to anything".into(),
                    ));
                }
                prox.push(list);
                continue;
            }
            if list.first() != Some(&(i - 1)) {
                return Err(Error::InvalidCluster(format!(
                    "point {} must be proximate to its predecessor (and only to earlier points)",
                    i + 1
                )));
            }
            match list.len() {
                1 => {}
                2 => {
                    let j = list[1];
                    if !prox[i - 1].contains(&j) {
                        return Err(Error::InvalidCluster(format!(
                            "satellite point {} is proximate to point {}, whose exceptional \
                             curve does not pass through point {}",
                            i + 1,
                            j + 1,
                            i
                        )));
                    }
                }
                _ => {
                    return Err(Error::InvalidCluster(format!(
                        "point {} is proximate to more than two points",
                        i + 1
                    )))
                }
            }
            prox.push(list);
        }
        Ok(Cluster { prox })
    }

    /// Builds a cluster from one-based lists, as in the JSON schema
    /// `{"points": [{"proximate_to": []}, {"proximate_to": [1]}, ...]}`.
    pub fn from_one_based(lists: &[Vec<usize>]) -> Result<Self> {
        let zero_based = lists
            .iter()
            .map(|l| {
                l.iter()
                    .map(|&j| {
                        j.checked_sub(1).ok_or_else(|| {
                            Error::InvalidCluster("point indices are one-based".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Cluster::new(zero_based)
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.prox.iter().map(|l| l.iter().map(|j| j + 1).collect()).collect()
    }

    /// The single point blowup.
    pub fn point() -> Self {
        Cluster { prox: vec![vec![]] }
    }

    /// `n` free points, each on the previous exceptional divisor only.
    pub fn chain(n: usize) -> Result<Self> {
        Cluster::new((0..n).map(|i| if i == 0 { vec![] } else { vec![i - 1] }).collect())
    }

    pub fn len(&self) -> usize {
        self.prox.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prox.is_empty()
    }

    pub fn proximate_to(&self, i: usize) -> &[usize] {
        &self.prox[i]
    }

    /// Whether `p_i` is proximate to `p_j`.
    pub fn is_proximate(&self, i: usize, j: usize) -> bool {
        self.prox[i].contains(&j)
    }

    pub fn is_satellite(&self, i: usize) -> bool {
        self.prox[i].len() == 2
    }

    /// Indices of the points proximate to `p_j`.
    pub fn proximate_points(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (j + 1..self.len()).filter(move |&i| self.is_proximate(i, j))
    }

    /// The sub-cluster `p_1, ..., p_len`.
    pub fn truncate(&self, len: usize) -> Result<Cluster> {
        if len == 0 || len > self.len() {
            return Err(Error::IndexOutOfRange { index: len, len: self.len() });
        }
        Ok(Cluster { prox: self.prox[..len].to_vec() })
    }

    /// The intersection number `Ẽ_i · Ẽ_j` of strict transforms on the last blowup.
    ///
    /// `Ẽ_i² = -(1 + #{k prox. to i})`; for `i ≠ j` the curves meet exactly
    /// once when one point is proximate to the other and no later point is
    /// proximate to both (a satellite point at their intersection separates them).
    pub fn prime_intersection(&self, i: usize, j: usize) -> Rational {
        if i == j {
            let k = self.proximate_points(i).count() as i64;
            return Rational::from_integer((-(1 + k)).into());
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let direct = i64::from(self.is_proximate(hi, lo));
        let separated = (hi + 1..self.len())
            .filter(|&k| self.is_proximate(k, lo) && self.is_proximate(k, hi))
            .count() as i64;
        Rational::from_integer((direct - separated).into())
    }

    pub fn prime_intersection_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.prime_intersection(i, j)).collect())
            .collect()
    }

    /// `V[j][i] = ord_{E_j}(Ē_i)`, i.e. the values of `ord_{E_j}` at the points.
    pub fn values_matrix(&self) -> ValuesMatrix {
        let rows = (0..self.len())
            .map(|j| {
                let mut row = proximity_recursion(self, j, Rational::one());
                row.resize(self.len(), Rational::zero());
                row
            })
            .collect();
        ValuesMatrix { rows }
    }
}

/// Values `v_1, ..., v_n` of a valuation at the exceptional divisors of its centers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueVector(Vec<Rational>);

impl ValueVector {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty value vector".into()));
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidArgument("values must be strictly positive".into()));
        }
        Ok(ValueVector(values))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &Rational {
        self.0.last().expect("value vectors are nonempty")
    }

    /// `𝐯² = Σ v_i²`.
    pub fn norm_squared(&self) -> Rational {
        self.0.iter().map(|v| v * v).sum()
    }

    /// Checks `v_j = Σ_{i prox. to j} v_i` for every non-final point.
    pub fn satisfies_proximity_equalities(&self, cluster: &Cluster) -> bool {
        let n = self.len();
        if cluster.len() != n {
            return false;
        }
        (0..n - 1).all(|j| {
            let sum: Rational = cluster.proximate_points(j).map(|i| self.0[i].clone()).sum();
            sum == self.0[j]
        })
    }

    pub fn scaled(&self, factor: &Rational) -> ValueVector {
        ValueVector(self.0.iter().map(|v| v * factor).collect())
    }
}

/// Backward recursion over the proximity equalities on the sub-cluster ending at `last`.
fn proximity_recursion(cluster: &Cluster, last: usize, normalization: Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); last + 1];
    v[last] = normalization;
    for j in (0..last).rev() {
        let sum: Rational = (j + 1..=last)
            .filter(|&i| cluster.is_proximate(i, j))
            .map(|i| v[i].clone())
            .sum();
        v[j] = sum;
    }
    v
}

/// Values of `normalization · ord_{E_last}` at the points `p_0, ..., p_last`.
pub fn values_of_divisorial(
    cluster: &Cluster,
    last: usize,
    normalization: &Rational,
) -> Result<ValueVector> {
    if last >= cluster.len() {
        return Err(Error::IndexOutOfRange { index: last, len: cluster.len() });
    }
    if !normalization.is_positive() {
        return Err(Error::InvalidArgument("normalization must be positive".into()));
    }
    ValueVector::new(proximity_recursion(cluster, last, normalization.clone()))
}

/// `Σ_i mults_i · v_i`: Noether's formula with vanishing residual term.
pub fn noether_value(values: &ValueVector, mults: &[Rational]) -> Result<Rational> {
    if mults.len() != values.len() {
        return Err(Error::LengthMismatch { expected: values.len(), got: mults.len() });
    }
    Ok(values.as_slice().iter().zip(mults).map(|(v, m)| v * m).sum())
}

/// Lower-triangular matrix of values of the divisorial valuations `ord_{E_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuesMatrix {
    rows: Vec<Vec<Rational>>,
}

impl ValuesMatrix {
    /// `ord_{E_j}(Ē_i)`.
    pub fn get(&self, j: usize, i: usize) -> &Rational {
        &self.rows[j][i]
    }

    pub fn row(&self, j: usize) -> &[Rational] {
        &self.rows[j]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Total transforms `Ē_i`.
    TotalTransform,
    /// Strict transforms `Ẽ_i`.
    Prime,
}

/// A divisor supported on the exceptional locus of a cluster's blowup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalDivisor {
    cluster: Arc<Cluster>,
    basis: Basis,
    coeffs: Vec<Rational>,
}

impl ExceptionalDivisor {
    pub fn new(cluster: Arc<Cluster>, basis: Basis, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != cluster.len() {
            return Err(Error::LengthMismatch { expected: cluster.len(), got: coeffs.len() });
        }
        Ok(ExceptionalDivisor { cluster, basis, coeffs })
    }

    pub fn zero(cluster: Arc<Cluster>, basis: Basis) -> Self {
        let coeffs = vec![Rational::zero(); cluster.len()];
        ExceptionalDivisor { cluster, basis, coeffs }
    }

    /// The basis vector `Ē_i` or `Ẽ_i`.
    pub fn unit(cluster: Arc<Cluster>, basis: Basis, i: usize) -> Result<Self> {
        if i >= cluster.len() {
            return Err(Error::IndexOutOfRange { index: i, len: cluster.len() });
        }
        let mut d = ExceptionalDivisor::zero(cluster, basis);
        d.coeffs[i] = Rational::one();
        Ok(d)
    }

    pub fn cluster(&self) -> &Arc<Cluster> {
        &self.cluster
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients in `basis`, converting if necessary.
    pub fn coeffs_in(&self, basis: Basis) -> Vec<Rational> {
        if basis == self.basis {
            return self.coeffs.clone();
        }
        let n = self.cluster.len();
        match basis {
            Basis::TotalTransform => {
                // Σ a_i Ẽ_i = Σ a_i Ē_i - Σ_i a_i Σ_{k prox i} Ē_k
                (0..n)
                    .map(|k| {
                        let mut rho = self.coeffs[k].clone();
                        for &i in self.cluster.proximate_to(k) {
                            rho -= &self.coeffs[i];
                        }
                        rho
                    })
                    .collect()
            }
            Basis::Prime => {
                let mut a: Vec<Rational> = Vec::with_capacity(n);
                for k in 0..n {
                    let mut ak = self.coeffs[k].clone();
                    for &i in self.cluster.proximate_to(k) {
                        ak += &a[i];
                    }
                    a.push(ak);
                }
                a
            }
        }
    }

    pub fn to_basis(&self, basis: Basis) -> ExceptionalDivisor {
        ExceptionalDivisor {
            cluster: Arc::clone(&self.cluster),
            basis,
            coeffs: self.coeffs_in(basis),
        }
    }

    /// The intersection number, computed in the total transform basis.
    pub fn intersect(&self, other: &ExceptionalDivisor) -> Result<Rational> {
        if self.cluster != other.cluster {
            return Err(Error::ClusterMismatch);
        }
        let a = self.coeffs_in(Basis::TotalTransform);
        let b = other.coeffs_in(Basis::TotalTransform);
        Ok(-a.iter().zip(&b).map(|(x, y)| x * y).sum::<Rational>())
    }

    /// All coefficients `>= 0` in the prime basis.
    pub fn is_effective(&self) -> bool {
        self.coeffs_in(Basis::Prime).iter().all(|c| !c.is_negative())
    }

    /// `ρ_i >= Σ_{k prox. to i} ρ_k` in total transform coordinates,
    /// equivalently `D · Ẽ_i <= 0` for every `i`.
    pub fn is_antinef(&self) -> bool {
        let rho = self.coeffs_in(Basis::TotalTransform);
        (0..rho.len()).all(|i| {
            let sum: Rational = self.cluster.proximate_points(i).map(|k| rho[k].clone()).sum();
            rho[i] >= sum
        })
    }

    /// `self <= other` coefficientwise in the prime basis.
    pub fn le_prime(&self, other: &ExceptionalDivisor) -> Result<bool> {
        if self.cluster != other.cluster {
            return Err(Error::ClusterMismatch);
        }
        let a = self.coeffs_in(Basis::Prime);
        let b = other.coeffs_in(Basis::Prime);
        Ok(a.iter().zip(&b).all(|(x, y)| x <= y))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs_in(Basis::Prime).iter().all(is_integral)
    }

    pub fn scale(&self, factor: &Rational) -> ExceptionalDivisor {
        ExceptionalDivisor {
            cluster: Arc::clone(&self.cluster),
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn neg(&self) -> ExceptionalDivisor {
        self.scale(&-Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Tuning for [`antinef_closure_with`].
#[derive(Clone, Debug, Default)]
pub struct ClosureOptions {
    /// Cap on single-curve unloading steps; defaults to `10 n²`.
    pub iteration_cap: Option<usize>,
}

impl ClosureOptions {
    fn cap(&self, n: usize) -> usize {
        self.iteration_cap.unwrap_or(10 * n * n)
    }
}

#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub divisor: ExceptionalDivisor,
    /// Unloading steps performed before stopping.
    pub unloading_steps: usize,
    /// Linear solves on the active set, zero when unloading reached the fixpoint.
    pub active_set_rounds: usize,
}

/// The smallest antinef divisor that is `>= d` in prime coordinates.
pub fn antinef_closure(d: &ExceptionalDivisor) -> ExceptionalDivisor {
    antinef_closure_with(d, &ClosureOptions::default()).divisor
}

/// Unloading: while some `d · Ẽ_i > 0`, raise the coefficient of `Ẽ_i` by
/// `(d · Ẽ_i) / (-Ẽ_i²)`. Exact steps can converge only in the limit, so
/// after the iteration cap, or once `n` steps in a row raise no new curve,
/// the remaining work is done by solving
/// `(d · Ẽ_i) = 0` exactly on the set of curves that were raised, enlarging
/// the set until no inequality is violated. Each active set solve only
/// raises coefficients and never overshoots the closure, so at most `n`
/// rounds are needed.
pub fn antinef_closure_with(d: &ExceptionalDivisor, opts: &ClosureOptions) -> ClosureOutcome {
    let cluster = Arc::clone(d.cluster());
    let n = cluster.len();
    let m = cluster.prime_intersection_matrix();
    let mut a = d.coeffs_in(Basis::Prime);
    let mut touched = vec![false; n];
    let cap = opts.cap(n);

    let pairing = |a: &[Rational], i: usize| -> Rational {
        m[i].iter().zip(a).map(|(x, y)| x * y).sum()
    };

    let mut steps = 0;
    let mut since_new = 0;
    let mut fixpoint = false;
    while steps < cap && since_new < n {
        let Some((i, s)) = (0..n).map(|i| (i, pairing(&a, i))).find(|(_, s)| s.is_positive())
        else {
            fixpoint = true;
            break;
        };
        a[i] += s / -&m[i][i];
        since_new = if touched[i] { since_new + 1 } else { 0 };
        touched[i] = true;
        steps += 1;
    }

    let mut rounds = 0;
    let mut active: Vec<bool> = (0..n).map(|i| touched[i] || pairing(&a, i).is_positive()).collect();
    if !fixpoint && (0..n).any(|i| pairing(&a, i).is_positive()) {
        loop {
            let idx: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
            let sub: Vec<Vec<Rational>> =
                idx.iter().map(|&r| idx.iter().map(|&c| m[r][c].clone()).collect()).collect();
            let rhs: Vec<Rational> = idx
                .iter()
                .map(|&r| {
                    -(0..n)
                        .filter(|c| !active[*c])
                        .map(|c| &m[r][c] * &a[c])
                        .sum::<Rational>()
                })
                .collect();
            let x = linalg::solve(sub, rhs)
                .expect("principal minors of a negative definite form are nonsingular");
            for (k, &i) in idx.iter().enumerate() {
                a[i] = x[k].clone();
            }
            rounds += 1;
            let violated: Vec<usize> =
                (0..n).filter(|&i| !active[i] && pairing(&a, i).is_positive()).collect();
            if violated.is_empty() {
                break;
            }
            for i in violated {
                active[i] = true;
            }
        }
    }

    let closed = ExceptionalDivisor { cluster, basis: Basis::Prime, coeffs: a };
    ClosureOutcome {
        divisor: closed.to_basis(d.basis()),
        unloading_steps: steps,
        active_set_rounds: rounds,
    }
}

/// The smallest antinef divisor with integral prime coefficients that is `>= d`.
///
/// Starts from the round-up of the rational closure, which never exceeds the
/// integral one, and unloads by whole curves from there.
pub fn integral_antinef_closure(
    d: &ExceptionalDivisor,
    opts: &ClosureOptions,
) -> Result<ClosureOutcome> {
    let real = antinef_closure_with(d, opts);
    let cluster = Arc::clone(d.cluster());
    let n = cluster.len();
    let m = cluster.prime_intersection_matrix();
    let mut a: Vec<Rational> = real
        .divisor
        .coeffs_in(Basis::Prime)
        .iter()
        .map(|c| Rational::from_integer(ceil_int(c)))
        .collect();
    let cap = opts.cap(n).max(n);
    let mut steps = 0;
    loop {
        let violated = (0..n)
            .map(|i| (i, m[i].iter().zip(&a).map(|(x, y)| x * y).sum::<Rational>()))
            .find(|(_, s)| s.is_positive());
        let Some((i, s)) = violated else { break };
        if steps == cap {
            return Err(Error::IterationCap(cap));
        }
        a[i] += Rational::from_integer(ceil_int(&(s / -&m[i][i])));
        steps += 1;
    }
    let closed = ExceptionalDivisor { cluster, basis: Basis::Prime, coeffs: a };
    Ok(ClosureOutcome {
        divisor: closed.to_basis(d.basis()),
        unloading_steps: real.unloading_steps + steps,
        active_set_rounds: real.active_set_rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn chain2() -> Arc<Cluster> {
        Arc::new(Cluster::chain(2).unwrap())
    }

    /// p1 <- p2 free, p3 proximate to p2 and p1: the cluster of weights (2,3).
    fn c211() -> Arc<Cluster> {
        Arc::new(Cluster::new(vec![vec![], vec![0], vec![1, 0]]).unwrap())
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rejects_malformed_clusters() {
        assert!(Cluster::new(vec![]).is_err());
        assert!(Cluster::new(vec![vec![0]]).is_err());
        assert!(Cluster::new(vec![vec![], vec![]]).is_err());
        // p3 proximate to p1 only, skipping its predecessor
        assert!(Cluster::new(vec![vec![], vec![0], vec![0]]).is_err());
        // p4 on E1 while p3 is free on E2: E1 does not pass through p3's divisor
        assert!(Cluster::new(vec![vec![], vec![0], vec![1], vec![2, 0]]).is_err());
        assert!(Cluster::new(vec![vec![], vec![0], vec![1, 0], vec![2, 1, 0]]).is_err());
        assert!(Cluster::from_one_based(&[vec![], vec![0]]).is_err());
    }

    #[test]
    fn one_based_round_trip() {
        let c = Cluster::from_one_based(&[vec![], vec![1], vec![2, 1]]).unwrap();
        assert_eq!(c, *c211());
        assert_eq!(c.to_one_based(), vec![vec![], vec![1], vec![2, 1]]);
        assert!(c.is_satellite(2));
        assert!(!c.is_satellite(1));
    }

    #[test]
    fn values_examples() {
        let v = values_of_divisorial(&chain2(), 1, &int(1)).unwrap();
        assert_eq!(v.as_slice(), ints(&[1, 1]).as_slice());
        let v = values_of_divisorial(&c211(), 2, &int(1)).unwrap();
        assert_eq!(v.as_slice(), ints(&[2, 1, 1]).as_slice());
        assert!(v.satisfies_proximity_equalities(&c211()));
        let v = values_of_divisorial(&Cluster::point(), 0, &int(5)).unwrap();
        assert_eq!(v.as_slice(), ints(&[5]).as_slice());
        // sub-cluster ending at the second point
        let v = values_of_divisorial(&c211(), 1, &int(1)).unwrap();
        assert_eq!(v.as_slice(), ints(&[1, 1]).as_slice());
        assert!(values_of_divisorial(&c211(), 3, &int(1)).is_err());
        assert!(values_of_divisorial(&c211(), 0, &int(0)).is_err());
    }

    #[test]
    fn basis_examples() {
        let c = chain2();
        let e1 = ExceptionalDivisor::unit(c.clone(), Basis::Prime, 0).unwrap();
        assert_eq!(e1.coeffs_in(Basis::TotalTransform), ints(&[1, -1]));
        let t1 = ExceptionalDivisor::unit(c.clone(), Basis::TotalTransform, 0).unwrap();
        assert_eq!(t1.coeffs_in(Basis::Prime), ints(&[1, 1]));
        let z = ExceptionalDivisor::zero(c, Basis::Prime);
        assert!(z.to_basis(Basis::TotalTransform).is_zero());
    }

    #[test]
    fn intersection_examples() {
        let c = chain2();
        let t1 = ExceptionalDivisor::unit(c.clone(), Basis::TotalTransform, 0).unwrap();
        assert_eq!(t1.intersect(&t1).unwrap(), int(-1));
        let e1 = ExceptionalDivisor::unit(c.clone(), Basis::Prime, 0).unwrap();
        let e2 = ExceptionalDivisor::unit(c.clone(), Basis::Prime, 1).unwrap();
        assert_eq!(e1.intersect(&e1).unwrap(), int(-2));
        assert_eq!(e1.intersect(&e2).unwrap(), int(1));
        let other = ExceptionalDivisor::unit(c211(), Basis::Prime, 0).unwrap();
        assert_eq!(e1.intersect(&other), Err(Error::ClusterMismatch));
    }

    #[test]
    fn satellite_separates_strict_transforms() {
        // E1 and E2 meet at p3; after blowing it up they are disjoint.
        let c = c211();
        assert_eq!(c.prime_intersection(0, 1), int(0));
        assert_eq!(c.prime_intersection(0, 2), int(1));
        assert_eq!(c.prime_intersection(1, 2), int(1));
        assert_eq!(c.prime_intersection(0, 0), int(-3));
        assert_eq!(c.prime_intersection(1, 1), int(-2));
        assert_eq!(c.prime_intersection(2, 2), int(-1));
    }

    #[test]
    fn closure_of_last_prime_on_c211() {
        let c = c211();
        let d = ExceptionalDivisor::unit(c.clone(), Basis::Prime, 2).unwrap();
        let closed = antinef_closure(&d);
        let expected = ExceptionalDivisor::new(
            c,
            Basis::TotalTransform,
            vec![rat(1, 3), rat(1, 6), rat(1, 6)],
        )
        .unwrap();
        assert_eq!(closed.coeffs_in(Basis::TotalTransform), expected.coeffs());
        assert_eq!(closed.coeffs_in(Basis::Prime), vec![rat(1, 3), rat(1, 2), int(1)]);
    }

    #[test]
    fn closure_fixpoints() {
        let c = c211();
        let t1 = ExceptionalDivisor::unit(c.clone(), Basis::TotalTransform, 0).unwrap();
        assert!(t1.is_antinef());
        assert_eq!(antinef_closure(&t1), t1);
        let d = ExceptionalDivisor::new(c.clone(), Basis::TotalTransform, ints(&[2, 1, 1])).unwrap();
        assert_eq!(antinef_closure(&d), d);
        // Ē_n equals Ẽ_n here, whose closure is known
        let last = ExceptionalDivisor::unit(c, Basis::TotalTransform, 2).unwrap();
        assert!(!last.is_antinef());
        let closed = antinef_closure(&last);
        assert!(closed.is_antinef());
        assert_eq!(closed.coeffs_in(Basis::TotalTransform), vec![rat(1, 3), rat(1, 6), rat(1, 6)]);
    }

    #[test]
    fn closure_cap_paths_agree() {
        let c = c211();
        let d = ExceptionalDivisor::new(c, Basis::Prime, ints(&[0, 2, 5])).unwrap();
        let reference = antinef_closure(&d);
        for cap in [0, 1, 2, 5, 1000] {
            let out = antinef_closure_with(&d, &ClosureOptions { iteration_cap: Some(cap) });
            assert_eq!(out.divisor, reference, "cap {cap}");
        }
        let out = antinef_closure_with(&d, &ClosureOptions { iteration_cap: Some(0) });
        assert!(out.active_set_rounds >= 1);
    }

    #[test]
    fn integral_closure_on_chain() {
        // minimal integral antinef above Ẽ2 on the free chain is Ē1
        let c = chain2();
        let d = ExceptionalDivisor::unit(c.clone(), Basis::Prime, 1).unwrap();
        let out = integral_antinef_closure(&d, &ClosureOptions::default()).unwrap();
        assert_eq!(out.divisor.coeffs_in(Basis::TotalTransform), ints(&[1, 0]));
        let real = antinef_closure(&d);
        assert_eq!(real.coeffs_in(Basis::Prime), vec![rat(1, 2), int(1)]);
    }

    #[test]
    fn noether_examples() {
        let v = ValueVector::new(ints(&[2, 1, 1])).unwrap();
        assert_eq!(noether_value(&v, &ints(&[1, 1, 0])).unwrap(), int(3));
        assert_eq!(noether_value(&v, &ints(&[0, 0, 0])).unwrap(), int(0));
        let single = ValueVector::new(ints(&[1])).unwrap();
        assert_eq!(noether_value(&single, &ints(&[7])).unwrap(), int(7));
        assert!(matches!(noether_value(&v, &ints(&[1])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn values_matrix_rows() {
        let vm = c211().values_matrix();
        assert_eq!(vm.row(0), ints(&[1, 0, 0]).as_slice());
        assert_eq!(vm.row(1), ints(&[1, 1, 0]).as_slice());
        assert_eq!(vm.row(2), ints(&[2, 1, 1]).as_slice());
    }
}
