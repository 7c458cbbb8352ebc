use std::collections::BTreeSet;

use num_integer::Integer;

use super::ideal::{pairing, MonomialIdeal};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{from_u64, Rational};

/// A facet `⟨normal, α⟩ >= rhs` of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub rhs: u64,
}

/// `conv(gens) + ℝ^c_{>=0}` together with its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    ideal: MonomialIdeal,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    /// Facets are found by brute force: every facet normal is orthogonal to
    /// `c - 1` independent directions among the differences of generators and
    /// the coordinate vectors, so all such normals are tried.
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        let c = ideal.nvars();
        if c > 3 {
            return Err(Error::UnsupportedDimension(c));
        }
        let gens = ideal.gens();
        let mut candidates: BTreeSet<Vec<u64>> = BTreeSet::new();
        let units: Vec<Vec<i64>> = (0..c)
            .map(|i| (0..c).map(|j| i64::from(i == j)).collect())
            .collect();
        if c == 1 {
            candidates.insert(vec![1]);
        }
        for g0 in gens {
            let mut dirs: Vec<Vec<i64>> = gens
                .iter()
                .filter(|g| *g != g0)
                .map(|g| g.iter().zip(g0).map(|(&a, &b)| a as i64 - b as i64).collect())
                .collect();
            dirs.extend(units.iter().cloned());
            match c {
                2 => {
                    for d in &dirs {
                        if let Some(u) = orient(vec![d[1], -d[0]]) {
                            candidates.insert(u);
                        }
                    }
                }
                3 => {
                    for (k, a) in dirs.iter().enumerate() {
                        for b in &dirs[k + 1..] {
                            let cross = vec![
                                a[1] * b[2] - a[2] * b[1],
                                a[2] * b[0] - a[0] * b[2],
                                a[0] * b[1] - a[1] * b[0],
                            ];
                            if let Some(u) = orient(cross) {
                                candidates.insert(u);
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        let mut facets = Vec::new();
        for u in candidates {
            let rhs = gens.iter().map(|g| pairing(&u, g)).min().expect("nonzero ideal");
            let face: Vec<&Vec<u64>> = gens.iter().filter(|g| pairing(&u, g) == rhs).collect();
            let base = face[0];
            let mut span: Vec<Vec<i64>> = face[1..]
                .iter()
                .map(|g| g.iter().zip(base).map(|(&a, &b)| a as i64 - b as i64).collect())
                .collect();
            span.extend((0..c).filter(|&i| u[i] == 0).map(|i| units[i].clone()));
            if linalg::rank(&span) == c - 1 {
                facets.push(Facet { normal: u, rhs });
            }
        }
        Ok(NewtonPolyhedron { ideal: ideal.clone(), facets })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Whether `x` lies in `t · Newt(a)` (`strict`: in its interior).
    pub fn contains_scaled(&self, x: &[Rational], t: &Rational, strict: bool) -> bool {
        self.facets.iter().all(|f| {
            let lhs: Rational =
                f.normal.iter().zip(x).map(|(&u, xi)| from_u64(u) * xi).sum();
            let rhs = t * from_u64(f.rhs);
            if strict {
                lhs > rhs
            } else {
                lhs >= rhs
            }
        })
    }

    /// `min_{facets, b > 0} ⟨u, 1⟩ / b`.
    pub fn lct(&self) -> Result<Rational> {
        if self.ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        self.facets
            .iter()
            .filter(|f| f.rhs > 0)
            .map(|f| Rational::new(f.normal.iter().sum::<u64>().into(), f.rhs.into()))
            .min()
            .ok_or(Error::UnitIdeal)
    }
}

/// Primitive representative with nonnegative entries, if the line has one.
fn orient(v: Vec<i64>) -> Option<Vec<u64>> {
    if v.iter().all(|&x| x == 0) {
        return None;
    }
    let v = if v.iter().all(|&x| x >= 0) {
        v
    } else if v.iter().all(|&x| x <= 0) {
        v.into_iter().map(|x| -x).collect()
    } else {
        return None;
    };
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Some(v.into_iter().map(|x| (x / g) as u64).collect())
}

/// Log-canonical threshold of a proper nonzero monomial ideal.
pub fn lct(a: &MonomialIdeal) -> Result<Rational> {
    NewtonPolyhedron::new(a)?.lct()
}

/// Arnold multiplicity, the reciprocal of [`lct`].
pub fn arnold(a: &MonomialIdeal) -> Result<Rational> {
    lct(a).map(|t| t.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ideal(c: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(c, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn facets_of_x2_y3() {
        let n = NewtonPolyhedron::new(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap();
        let facets: Vec<_> = n.facets().iter().map(|f| (f.normal.clone(), f.rhs)).collect();
        assert_eq!(facets, vec![(vec![0, 1], 0), (vec![1, 0], 0), (vec![3, 2], 6)]);
    }

    #[test]
    fn lct_examples() {
        let a = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(lct(&a).unwrap(), rat(5, 6));
        assert_eq!(arnold(&a).unwrap(), rat(6, 5));
        for c in 1..=3 {
            assert_eq!(lct(&MonomialIdeal::maximal(c)).unwrap(), int(c as i64));
        }
        for k in 1..=4 {
            assert_eq!(lct(&ideal(2, &[&[k, 0]])).unwrap(), rat(1, k as i64));
        }
        assert_eq!(lct(&MonomialIdeal::unit(2)), Err(Error::UnitIdeal));
    }

    #[test]
    fn non_vertex_generators_are_redundant() {
        // (1,1) lies on the segment from (2,0) to (0,2)
        let a = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let n = NewtonPolyhedron::new(&a).unwrap();
        assert_eq!(n.facets().iter().filter(|f| f.rhs > 0).count(), 1);
        assert_eq!(n.lct().unwrap(), int(1));
    }

    #[test]
    fn three_variables() {
        let a = ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 6]]);
        assert_eq!(lct(&a).unwrap(), int(1));
        let b = ideal(3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(lct(&b).unwrap(), int(2));
        assert_eq!(
            NewtonPolyhedron::new(&MonomialIdeal::maximal(4)),
            Err(Error::UnsupportedDimension(4))
        );
    }
}
