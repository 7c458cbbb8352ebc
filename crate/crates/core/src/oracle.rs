//! Independent reference computations used to certify the main routines.
//!
//! Nothing here calls into the algorithms it checks: the linear programs are
//! solved by a dense two-phase simplex method over exact rationals, and the
//! combinatorial oracles enumerate lattice points directly.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cluster::Cluster;
use crate::rational::{ceil_int, from_u64, Extended, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Minimize `objective · x` subject to the constraints; variables are
/// nonnegative unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub free: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); nvars],
            constraints: Vec::new(),
            free: vec![false; nvars],
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.objective.len());
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.objective.len();
        // column layout: split free variables into x+ and x-
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
        let mut ncols = 0;
        for j in 0..n {
            if self.free[j] {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let nstruct = ncols;
        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); nstruct];
            for j in 0..n {
                let (p, m) = col_of[j];
                row[p] = c.coeffs[j].clone();
                if let Some(m) = m {
                    row[m] = -c.coeffs[j].clone();
                }
            }
            let (mut rel, mut rhs) = (c.relation, c.rhs.clone());
            if rhs.is_negative() {
                for x in &mut row {
                    *x = -x.clone();
                }
                rhs = -rhs;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            rows.push((row, rel, rhs));
        }
        let m = rows.len();
        let nslack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let nart = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let total = nstruct + nslack + nart;
        let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut s, mut a) = (nstruct, nstruct + nslack);
        for (row, rel, rhs) in rows {
            let mut t = row;
            t.resize(total + 1, Rational::zero());
            t[total] = rhs;
            match rel {
                Relation::Le => {
                    t[s] = Rational::one();
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    t[s] = -Rational::one();
                    s += 1;
                    t[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    t[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
            }
            tab.push(t);
        }
        let artificial = |j: usize| j >= nstruct + nslack && j < total;

        let mut phase1 = vec![Rational::zero(); total];
        for c in phase1.iter_mut().skip(nstruct + nslack) {
            *c = Rational::one();
        }
        simplex(&mut tab, &mut basis, &phase1, &|_| true);
        let infeasibility: Rational =
            basis.iter().enumerate().filter(|(_, &b)| artificial(b)).map(|(i, _)| tab[i][total].clone()).sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive remaining (zero) artificials out of the basis
        let mut i = 0;
        while i < tab.len() {
            if artificial(basis[i]) {
                match (0..nstruct + nslack).find(|&j| !tab[i][j].is_zero()) {
                    Some(j) => pivot(&mut tab, &mut basis, i, j),
                    None => {
                        tab.remove(i);
                        basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        let mut phase2 = vec![Rational::zero(); total];
        for j in 0..n {
            let (p, mm) = col_of[j];
            phase2[p] = self.objective[j].clone();
            if let Some(mm) = mm {
                phase2[mm] = -self.objective[j].clone();
            }
        }
        if !simplex(&mut tab, &mut basis, &phase2, &|j| !artificial(j)) {
            return LpOutcome::Unbounded;
        }
        let mut values = vec![Rational::zero(); total];
        for (i, &b) in basis.iter().enumerate() {
            values[b] = tab[i][total].clone();
        }
        let x: Vec<Rational> = (0..n)
            .map(|j| {
                let (p, mm) = col_of[j];
                match mm {
                    Some(mm) => &values[p] - &values[mm],
                    None => values[p].clone(),
                }
            })
            .collect();
        let value = x.iter().zip(&self.objective).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { value, x }
    }
}

fn pivot(tab: &mut [Vec<Rational>], basis: &mut [usize], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    for x in tab[r].iter_mut() {
        *x *= &inv;
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
    }
    basis[r] = c;
}

/// Minimizes `cost` from a feasible basis with Bland's rule. Returns `false`
/// when the objective is unbounded below.
fn simplex(
    tab: &mut [Vec<Rational>],
    basis: &mut [usize],
    cost: &[Rational],
    allowed: &dyn Fn(usize) -> bool,
) -> bool {
    let total = cost.len();
    loop {
        let entering = (0..total).filter(|&j| allowed(j) && !basis.contains(&j)).find(|&j| {
            let mut r = cost[j].clone();
            for (i, &b) in basis.iter().enumerate() {
                r -= &cost[b] * &tab[i][j];
            }
            r.is_negative()
        });
        let Some(j) = entering else { return true };
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..tab.len() {
            if tab[i][j].is_positive() {
                let ratio = &tab[i][total] / &tab[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = best else { return false };
        pivot(tab, basis, r, j);
    }
}

/// `Ẽ_i · Ẽ_j` expanded in total transforms, where the form is `-identity`.
fn strict_transform_form(cluster: &Cluster) -> Vec<Vec<Rational>> {
    let n = cluster.len();
    let expansion: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            for k in 0..n {
                if cluster.proximate_to(k).contains(&i) {
                    e[k] -= 1;
                }
            }
            e
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dot: i64 = expansion[i].iter().zip(&expansion[j]).map(|(a, b)| a * b).sum();
                    Rational::from_integer((-dot).into())
                })
                .collect()
        })
        .collect()
}

/// For each `k`, an optimal point of `min a_k` over antinef `a` with
/// `a >= lower`, everything in prime coordinates, together with the optimal value.
pub fn antinef_closure_lp(cluster: &Cluster, lower: &[Rational]) -> Vec<(Rational, Vec<Rational>)> {
    let n = cluster.len();
    let form = strict_transform_form(cluster);
    let mut lp = LinearProgram::new(n);
    lp.free = vec![true; n];
    for j in 0..n {
        lp.constrain(form[j].clone(), Relation::Le, Rational::zero());
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        lp.constrain(e, Relation::Ge, lower[j].clone());
    }
    (0..n)
        .map(|k| {
            let mut p = lp.clone();
            p.objective = vec![Rational::zero(); n];
            p.objective[k] = Rational::one();
            match p.solve() {
                LpOutcome::Optimal { value, x } => (value, x),
                other => panic!("closure LP must be solvable, got {other:?}"),
            }
        })
        .collect()
}

/// `lct = 1 / min { s : Σ λ_g g <= s·1, Σ λ_g = 1, λ >= 0 }`; `None` for the unit ideal.
pub fn lct_lp(gens: &[Vec<u64>]) -> Option<Rational> {
    let c = gens[0].len();
    let ng = gens.len();
    let mut lp = LinearProgram::new(ng + 1);
    for i in 0..c {
        let mut row: Vec<Rational> = gens.iter().map(|g| from_u64(g[i])).collect();
        row.push(-Rational::one());
        lp.constrain(row, Relation::Le, Rational::zero());
    }
    let mut sum = vec![Rational::one(); ng];
    sum.push(Rational::zero());
    lp.constrain(sum, Relation::Eq, Rational::one());
    lp.objective[ng] = Rational::one();
    match lp.solve() {
        LpOutcome::Optimal { value, .. } if value.is_positive() => Some(value.recip()),
        _ => None,
    }
}

/// Whether `x` lies in the interior of `t · (conv(gens) + ℝ^c_{>=0})`: the
/// largest `δ` with `x/t - δ·1` in the polyhedron is positive.
pub fn interior_point_lp(gens: &[Vec<u64>], t: &Rational, x: &[Rational]) -> bool {
    let c = x.len();
    let ng = gens.len();
    let mut lp = LinearProgram::new(ng + 1);
    for i in 0..c {
        let mut row: Vec<Rational> = gens.iter().map(|g| from_u64(g[i])).collect();
        row.push(Rational::one());
        lp.constrain(row, Relation::Le, &x[i] / t);
    }
    let mut sum = vec![Rational::one(); ng];
    sum.push(Rational::zero());
    lp.constrain(sum, Relation::Eq, Rational::one());
    lp.objective[ng] = -Rational::one();
    matches!(lp.solve(), LpOutcome::Optimal { value, .. } if value.is_negative())
}

/// Largest `t >= 0` such that `Σ (h_i + t z_i) D_i` is linearly equivalent to
/// an effective divisor, i.e. `{ m : ⟨m, u_i⟩ >= -(h_i + t z_i) }` is nonempty.
pub fn psef_threshold_lp(rays: &[[i64; 2]], h: &[Rational], z: &[Rational]) -> Extended {
    let mut lp = LinearProgram::new(3);
    lp.free = vec![true, true, false];
    for ((u, hi), zi) in rays.iter().zip(h).zip(z) {
        lp.constrain(
            vec![Rational::from_integer(u[0].into()), Rational::from_integer(u[1].into()), zi.clone()],
            Relation::Ge,
            -hi.clone(),
        );
    }
    lp.objective[2] = -Rational::one();
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Extended::Finite(-value),
        LpOutcome::Unbounded => Extended::PosInf,
        LpOutcome::Infeasible => Extended::NegInf,
    }
}

/// `#{ α ∈ ℕ^c : ⟨w, α⟩ < m }`.
pub fn standard_monomial_count(w: &[Rational], m: &Rational) -> u64 {
    fn go(w: &[Rational], m: &Rational, i: usize, acc: &Rational) -> u64 {
        if i == w.len() {
            return u64::from(acc < m);
        }
        let mut count = 0;
        let mut s = acc.clone();
        while s < *m {
            count += go(w, m, i + 1, &s);
            s += &w[i];
        }
        count
    }
    go(w, m, 0, &Rational::zero())
}

/// Minimal generators of `{ α : ⟨w, α⟩ >= m }` by scanning the box
/// `α_i <= ⌈m / w_i⌉` and discarding every point with a smaller one below it.
pub fn valuation_ideal_brute(w: &[Rational], m: &Rational) -> Vec<Vec<u64>> {
    let c = w.len();
    let bounds: Vec<u64> = w
        .iter()
        .map(|wi| ceil_int(&(m / wi)).to_u64().unwrap_or(0))
        .collect();
    let mut points = Vec::new();
    let mut alpha = vec![0u64; c];
    loop {
        let value: Rational = w.iter().zip(&alpha).map(|(a, &b)| a * from_u64(b)).sum();
        if value >= *m {
            points.push(alpha.clone());
        }
        let mut i = 0;
        loop {
            if i == c {
                let mut minimal: Vec<Vec<u64>> = points
                    .iter()
                    .filter(|a| {
                        !points
                            .iter()
                            .any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x <= y))
                    })
                    .cloned()
                    .collect();
                minimal.sort();
                return minimal;
            }
            alpha[i] += 1;
            if alpha[i] <= bounds[i] {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_lp() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.constrain(vec![int(1), int(2)], Relation::Le, int(4));
        lp.constrain(vec![int(3), int(1)], Relation::Le, int(6));
        lp.objective = vec![int(-1), int(-1)];
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(-14, 5));
                assert_eq!(x, vec![rat(8, 5), rat(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(vec![int(1)], Relation::Ge, int(2));
        lp.constrain(vec![int(1)], Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(1);
        lp.free = vec![true];
        lp.objective = vec![int(1)];
        lp.constrain(vec![int(1)], Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn closure_lp_example() {
        let c = Cluster::new(vec![vec![], vec![0], vec![1, 0]]).unwrap();
        let values: Vec<Rational> =
            antinef_closure_lp(&c, &[int(0), int(0), int(1)]).into_iter().map(|(v, _)| v).collect();
        assert_eq!(values, vec![rat(1, 3), rat(1, 2), int(1)]);
    }

    #[test]
    fn lct_and_interior() {
        assert_eq!(lct_lp(&[vec![2, 0], vec![0, 3]]), Some(rat(5, 6)));
        assert_eq!(lct_lp(&[vec![0, 0]]), None);
        let gens = [vec![2, 0], vec![0, 3]];
        assert!(!interior_point_lp(&gens, &rat(5, 6), &[int(1), int(1)]));
        assert!(interior_point_lp(&gens, &rat(4, 5), &[int(1), int(1)]));
    }

    #[test]
    fn psef_of_blowup() {
        let rays = [[1, 0], [1, 1], [0, 1], [-1, -1]];
        let h = [int(0), int(0), int(0), int(1)];
        let z = [int(0), int(-1), int(0), int(0)];
        assert_eq!(psef_threshold_lp(&rays, &h, &z), Extended::Finite(int(1)));
    }

    #[test]
    fn counting() {
        assert_eq!(standard_monomial_count(&[int(2), int(3)], &int(6)), 5);
        assert_eq!(standard_monomial_count(&[int(1), int(1)], &int(3)), 6);
        assert_eq!(
            valuation_ideal_brute(&[int(2), int(3)], &int(6)),
            vec![vec![0, 2], vec![2, 1], vec![3, 0]]
        );
    }
}
