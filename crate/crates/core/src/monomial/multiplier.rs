use super::ideal::{Exponent, MonomialIdeal};
use super::newton::NewtonPolyhedron;
use crate::error::{Error, Result};
use crate::rational::{floor_int, from_u64, Rational};

use num_traits::{Signed, ToPrimitive};

/// `J(a^c) = { z^α : α + 1 ∈ interior of c · Newt(a) }`.
///
/// A minimal generator `α` has, for each `i` with `α_i > 0`, a facet with
/// `u_i > 0` that `α - e_i + 1` fails, which forces `α_i <= c · b_u / u_i`.
/// If `z_i^k ∈ a` then also `α_i <= c k`, since otherwise `α - e_i + 1`
/// strictly dominates the point `c k e_i` of `c · Newt(a)`. The generators
/// therefore lie in an explicit box that is scanned exhaustively.
pub fn multiplier_ideal(a: &MonomialIdeal, c_exp: &Rational) -> Result<MonomialIdeal> {
    if !c_exp.is_positive() {
        return Err(Error::InvalidArgument("the exponent must be positive".into()));
    }
    let newt = NewtonPolyhedron::new(a)?;
    let nvars = a.nvars();
    let to_u64 = |q: Rational| floor_int(&q).to_u64().expect("exponent bound fits in u64");
    let mut bounds = vec![0u64; nvars];
    for f in newt.facets() {
        for i in 0..nvars {
            if f.normal[i] > 0 {
                bounds[i] = bounds[i].max(to_u64(c_exp * from_u64(f.rhs) / from_u64(f.normal[i])));
            }
        }
    }
    for g in a.gens() {
        let support: Vec<usize> = (0..nvars).filter(|&i| g[i] > 0).collect();
        if let [i] = support.as_slice() {
            bounds[*i] = bounds[*i].min(to_u64(c_exp * from_u64(g[*i])));
        }
    }
    let thresholds: Vec<Rational> = newt.facets().iter().map(|f| c_exp * from_u64(f.rhs)).collect();
    let member = |alpha: &[u64]| {
        newt.facets().iter().zip(&thresholds).all(|(f, t)| {
            let lhs: u64 = f.normal.iter().zip(alpha).map(|(u, x)| u * (x + 1)).sum();
            from_u64(lhs) > *t
        })
    };
    let mut gens: Vec<Exponent> = Vec::new();
    let mut alpha = vec![0u64; nvars];
    'outer: loop {
        if member(&alpha) {
            gens.push(alpha.clone());
        }
        let mut i = 0;
        loop {
            if i == nvars {
                break 'outer;
            }
            alpha[i] += 1;
            if alpha[i] <= bounds[i] {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
    }
    MonomialIdeal::new(nvars, gens)
}
