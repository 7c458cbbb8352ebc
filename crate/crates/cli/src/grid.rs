//! Scan grids.
//!
//! A spec is a `;`-separated list of items:
//!
//! * `lo:hi:step`: the square grid with both axes running from `lo` to `hi`
//!   inclusive;
//! * `A,B` where each axis is `lo:hi:step` or a single value: a product grid;
//! * `family:P1,P2:D1,D2:K`: the points `P + D/k` for `k = 1..K`, then `P`.

use num_traits::{Signed, Zero};
use valcalc_core::positivity::Family;
use valcalc_core::{parse_rational, Rational};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub points: Vec<[Rational; 2]>,
    pub families: Vec<Family>,
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse(format!("grid: {e}")))
}

fn axis(s: &str) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(vec![rational(x)?]),
        [lo, hi, step] => {
            let (lo, hi, step) = (rational(lo)?, rational(hi)?, rational(step)?);
            if !step.is_positive() {
                return Err(CliError::Parse(format!("grid: step {step} must be positive")));
            }
            if lo > hi {
                return Err(CliError::Parse(format!("grid: empty range {lo}..{hi}")));
            }
            let mut out = Vec::new();
            let mut x = lo;
            while x <= hi {
                out.push(x.clone());
                x += &step;
            }
            Ok(out)
        }
        _ => Err(CliError::Parse(format!("grid: bad axis {s:?}"))),
    }
}

fn pair(s: &str) -> Result<[Rational; 2], CliError> {
    match s.split(',').collect::<Vec<_>>().as_slice() {
        [a, b] => Ok([rational(a)?, rational(b)?]),
        _ => Err(CliError::Parse(format!("grid: expected two coordinates in {s:?}"))),
    }
}

fn family(rest: &str) -> Result<Family, CliError> {
    let parts: Vec<&str> = rest.split(':').collect();
    let [limit, direction, len] = parts.as_slice() else {
        return Err(CliError::Parse(format!("grid: bad family {rest:?}")));
    };
    let len: usize = len
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("grid: bad family length {len:?}")))?;
    let direction = pair(direction)?;
    if direction.iter().all(Zero::is_zero) {
        return Err(CliError::Parse("grid: family direction must be nonzero".into()));
    }
    Ok(Family { limit: pair(limit)?, direction, len })
}

pub fn parse(spec: &str) -> Result<Grid, CliError> {
    let mut grid = Grid { points: Vec::new(), families: Vec::new() };
    for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some(rest) = item.strip_prefix("family:") {
            grid.families.push(family(rest)?);
            continue;
        }
        let (xs, ys) = match item.split_once(',') {
            Some((a, b)) => (axis(a)?, axis(b)?),
            None => {
                let a = axis(item)?;
                (a.clone(), a)
            }
        };
        for x in &xs {
            for y in &ys {
                grid.points.push([x.clone(), y.clone()]);
            }
        }
    }
    if grid.points.is_empty() && grid.families.is_empty() {
        return Err(CliError::Parse("grid: empty".into()));
    }
    Ok(grid)
}
