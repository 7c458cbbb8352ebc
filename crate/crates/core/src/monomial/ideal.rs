use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rational::{from_u64, Rational};

/// An exponent vector `α ∈ ℕ^c`, standing for the monomial `z^α`.
pub type Exponent = Vec<u64>;

pub(crate) fn pairing(u: &[u64], g: &[u64]) -> u64 {
    u.iter().zip(g).map(|(a, b)| a * b).sum()
}

fn divides(g: &[u64], a: &[u64]) -> bool {
    g.iter().zip(a).all(|(x, y)| x <= y)
}

/// A nonzero monomial ideal, stored by its minimal generators in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Exponent>,
}

impl MonomialIdeal {
    /// The ideal generated by `gens`; redundant generators are dropped.
    pub fn new(nvars: usize, gens: Vec<Exponent>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidIdeal("at least one variable is required".into()));
        }
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        if let Some(g) = gens.iter().find(|g| g.len() != nvars) {
            return Err(Error::InvalidIdeal(format!(
                "exponent {g:?} has {} entries, expected {nvars}",
                g.len()
            )));
        }
        Ok(MonomialIdeal { nvars, gens: minimalize(gens) })
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![vec![0; nvars]] }
    }

    /// `(z_1, ..., z_c)`.
    pub fn maximal(nvars: usize) -> Self {
        let gens = (0..nvars)
            .map(|i| {
                let mut e = vec![0; nvars];
                e[i] = 1;
                e
            })
            .collect();
        MonomialIdeal { nvars, gens: minimalize(gens) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, alpha: &[u64]) -> bool {
        self.gens.iter().any(|g| divides(g, alpha))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        self.nvars == other.nvars && other.gens.iter().all(|g| self.contains(g))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: other.nvars });
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..k {
            acc = acc.product(self).expect("same number of variables");
        }
        acc
    }

    /// `ord_P Z(a) = -min_g ⟨u, g⟩` for the divisor `P` of the primitive ray `u`.
    pub fn z_divisor_coefficient(&self, u: &[u64]) -> Result<Rational> {
        if u.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: u.len() });
        }
        if u.iter().all(|&x| x == 0) {
            return Err(Error::InvalidArgument("the ray must be nonzero".into()));
        }
        let min = self.gens.iter().map(|g| pairing(u, g)).min().expect("nonzero ideal");
        Ok(-from_u64(min))
    }

    /// Number of monomials outside the ideal, or `None` when it is not
    /// primary to the maximal ideal.
    pub fn colength(&self) -> Option<u64> {
        let mut bounds = vec![u64::MAX; self.nvars];
        for g in &self.gens {
            let support: Vec<usize> = (0..self.nvars).filter(|&i| g[i] > 0).collect();
            match support.as_slice() {
                [] => return Some(0),
                [i] => bounds[*i] = bounds[*i].min(g[*i]),
                _ => {}
            }
        }
        if bounds.contains(&u64::MAX) {
            return None;
        }
        let mut count = 0;
        let mut alpha = vec![0u64; self.nvars];
        loop {
            if !self.contains(&alpha) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return Some(count);
                }
                alpha[i] += 1;
                if alpha[i] < bounds[i] {
                    break;
                }
                alpha[i] = 0;
                i += 1;
            }
        }
    }
}

/// Keeps the divisibility-minimal elements, sorted and deduplicated.
///
/// A proper divisor has smaller degree, so scanning by degree only needs to
/// compare against the elements already kept.
pub(crate) fn minimalize(gens: Vec<Exponent>) -> Vec<Exponent> {
    let set: BTreeSet<(u64, Exponent)> =
        gens.into_iter().map(|g| (g.iter().sum(), g)).collect();
    let mut kept: Vec<Exponent> = Vec::new();
    for (_, a) in set {
        if !kept.iter().any(|b| divides(b, &a)) {
            kept.push(a);
        }
    }
    kept.sort();
    kept
}
