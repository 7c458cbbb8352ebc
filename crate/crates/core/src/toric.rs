//! Complete toric surfaces and intersection numbers of invariant divisors.
//!
//! A fan is stored as its rays in counterclockwise order. Consecutive rays
//! `u_i, u_{i+1}` span a cone with `d_i = det(u_i, u_{i+1}) > 0`; the invariant
//! curves meet with `D_i · D_{i+1} = 1 / d_i`, and the self-intersections are
//! fixed by linear equivalence: `u_{i-1}/d_{i-1} + u_{i+1}/d_i = -D_i² u_i`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::det2;
use crate::rational::{int, Extended, Rational};

pub type Ray = [i64; 2];

/// Upper half plane (including the positive x-axis) first, then the rest.
fn half(u: Ray) -> u8 {
    if u[1] > 0 || (u[1] == 0 && u[0] > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &Ray, b: &Ray) -> Ordering {
    half(*a).cmp(&half(*b)).then_with(|| 0.cmp(&det2(*a, *b)))
}

pub fn primitive(u: Ray) -> Ray {
    let g = u[0].gcd(&u[1]);
    if g == 0 {
        u
    } else {
        [u[0] / g, u[1] / g]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricSurface {
    rays: Vec<Ray>,
}

impl ToricSurface {
    /// The complete fan with the given rays, which are sorted by angle.
    pub fn new(mut rays: Vec<Ray>) -> Result<Self> {
        for r in &rays {
            if *r == [0, 0] || primitive(*r) != *r {
                return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
            }
        }
        rays.sort_by(angle_cmp);
        rays.dedup();
        if rays.len() < 3 {
            return Err(Error::InvalidFan("a complete fan needs at least three rays".into()));
        }
        let n = rays.len();
        for i in 0..n {
            let (u, v) = (rays[i], rays[(i + 1) % n]);
            if det2(u, v) <= 0 {
                return Err(Error::InvalidFan(format!(
                    "rays {u:?} and {v:?} do not span a strictly convex cone"
                )));
            }
        }
        Ok(ToricSurface { rays })
    }

    /// `ℙ²`, with rays `e_1`, `e_2` and `-e_1 - e_2`.
    pub fn projective_plane() -> Self {
        ToricSurface::new(vec![[1, 0], [0, 1], [-1, -1]]).expect("valid fan")
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn position(&self, u: Ray) -> Option<usize> {
        self.rays.iter().position(|r| *r == u)
    }

    fn det_after(&self, i: usize) -> i64 {
        det2(self.rays[i], self.rays[(i + 1) % self.len()])
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.len()).all(|i| self.det_after(i) == 1)
    }

    pub fn intersection(&self, i: usize, j: usize) -> Rational {
        let n = self.len();
        if i == j {
            return self.self_intersection(i);
        }
        let mut total = Rational::zero();
        if (i + 1) % n == j {
            total += Rational::new(1.into(), self.det_after(i).into());
        }
        if (j + 1) % n == i {
            total += Rational::new(1.into(), self.det_after(j).into());
        }
        total
    }

    pub fn self_intersection(&self, i: usize) -> Rational {
        let n = self.len();
        let prev = (i + n - 1) % n;
        let (dp, dn) = (self.det_after(prev), self.det_after(i));
        let (up, u, un) = (self.rays[prev], self.rays[i], self.rays[(i + 1) % n]);
        let k = if u[0] != 0 { 0 } else { 1 };
        let sum = Rational::new(up[k].into(), dp.into()) + Rational::new(un[k].into(), dn.into());
        -sum / int(u[k])
    }

    /// The cone `(rays[i], rays[i+1])` containing `u`, with `u = λ rays[i] + μ rays[i+1]`.
    fn locate(&self, u: Ray) -> (usize, Rational, Rational) {
        let n = self.len();
        for i in 0..n {
            let (a, b) = (self.rays[i], self.rays[(i + 1) % n]);
            if det2(a, u) >= 0 && det2(u, b) > 0 {
                let d = int(det2(a, b));
                let lambda = int(det2(u, b)) / &d;
                let mu = int(det2(a, u)) / &d;
                return (i, lambda, mu);
            }
        }
        unreachable!("a complete fan covers the plane")
    }

    /// Star subdivision at the primitive ray `u`.
    pub fn refine(&self, u: Ray) -> Result<ToricSurface> {
        if u == [0, 0] {
            return Err(Error::InvalidFan("cannot refine at the zero vector".into()));
        }
        let u = primitive(u);
        let mut rays = self.rays.clone();
        if !rays.contains(&u) {
            rays.push(u);
        }
        ToricSurface::new(rays)
    }
}

/// A torus-invariant `ℚ`-divisor `Σ a_i D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisor {
    surface: Arc<ToricSurface>,
    coeffs: Vec<Rational>,
}

impl ToricDivisor {
    pub fn new(surface: Arc<ToricSurface>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != surface.len() {
            return Err(Error::LengthMismatch { expected: surface.len(), got: coeffs.len() });
        }
        Ok(ToricDivisor { surface, coeffs })
    }

    /// Coefficients given as a function of the ray.
    pub fn from_fn(surface: Arc<ToricSurface>, f: impl Fn(Ray) -> Rational) -> Self {
        let coeffs = surface.rays().iter().map(|&r| f(r)).collect();
        ToricDivisor { surface, coeffs }
    }

    pub fn zero(surface: Arc<ToricSurface>) -> Self {
        let coeffs = vec![Rational::zero(); surface.len()];
        ToricDivisor { surface, coeffs }
    }

    pub fn surface(&self) -> &Arc<ToricSurface> {
        &self.surface
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, u: Ray) -> Option<&Rational> {
        self.surface.position(u).map(|i| &self.coeffs[i])
    }

    /// `D · D_i`.
    pub fn intersect_curve(&self, i: usize) -> Rational {
        let n = self.surface.len();
        [(i + n - 1) % n, i, (i + 1) % n]
            .into_iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|j| &self.coeffs[j] * self.surface.intersection(i, j))
            .sum()
    }

    pub fn intersect(&self, other: &ToricDivisor) -> Result<Rational> {
        if self.surface != other.surface {
            return Err(Error::FanMismatch);
        }
        Ok((0..self.coeffs.len()).map(|i| &other.coeffs[i] * self.intersect_curve(i)).sum())
    }

    pub fn is_nef(&self) -> bool {
        (0..self.coeffs.len()).all(|i| !self.intersect_curve(i).is_negative())
    }

    pub fn scale(&self, t: &Rational) -> ToricDivisor {
        ToricDivisor {
            surface: Arc::clone(&self.surface),
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
        }
    }

    pub fn add(&self, other: &ToricDivisor) -> Result<ToricDivisor> {
        if self.surface != other.surface {
            return Err(Error::FanMismatch);
        }
        Ok(ToricDivisor {
            surface: Arc::clone(&self.surface),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Pullback to a refinement: a new ray `λ r_a + μ r_b` in the cone of
    /// `r_a, r_b` gets the coefficient `λ a_a + μ a_b`.
    pub fn pullback(&self, finer: &Arc<ToricSurface>) -> Result<ToricDivisor> {
        if !self.surface.rays().iter().all(|r| finer.position(*r).is_some()) {
            return Err(Error::FanMismatch);
        }
        let n = self.surface.len();
        let coeffs = finer
            .rays()
            .iter()
            .map(|&u| match self.coefficient(u) {
                Some(c) => c.clone(),
                None => {
                    let (i, lambda, mu) = self.surface.locate(u);
                    lambda * &self.coeffs[i] + mu * &self.coeffs[(i + 1) % n]
                }
            })
            .collect();
        Ok(ToricDivisor { surface: Arc::clone(finer), coeffs })
    }
}

/// `sup { t >= 0 : D + t Z is nef }`, an exact minimum of ratios over the
/// invariant curves, or `inf` when no curve constrains `t`.
pub fn nef_threshold(d: &ToricDivisor, z: &ToricDivisor) -> Result<Extended> {
    if d.surface != z.surface {
        return Err(Error::FanMismatch);
    }
    let mut best = Extended::PosInf;
    for i in 0..d.surface.len() {
        let a = d.intersect_curve(i);
        let b = z.intersect_curve(i);
        if a.is_negative() {
            return Err(Error::NotNef);
        }
        if b.is_negative() {
            best = best.min(Extended::Finite(a / -b));
        }
    }
    Ok(best)
}
