#![allow(dead_code)]

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use valcalc_core::rational::{int, rat};
use valcalc_core::{Cluster, MonomialIdeal, Rational, SurfaceValuation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A cluster from per-point choices: `None` for a free point, `Some(k)` for
/// a satellite on `E_{i-1}` and the `k`-th (mod len) curve its predecessor lies on.
pub fn cluster_from_choices(choices: &[Option<usize>]) -> Cluster {
    let mut prox: Vec<Vec<usize>> = vec![vec![]];
    for (idx, choice) in choices.iter().enumerate() {
        let i = idx + 1;
        let mut list = vec![i - 1];
        if let Some(k) = choice {
            let prev = &prox[i - 1];
            if !prev.is_empty() {
                list.push(prev[k % prev.len()]);
            }
        }
        prox.push(list);
    }
    Cluster::new(prox).expect("choices always describe a legal cluster")
}

pub fn random_cluster(rng: &mut ChaCha8Rng, max_len: usize) -> Cluster {
    let n = rng.gen_range(1..=max_len);
    let choices: Vec<Option<usize>> = (1..n)
        .map(|_| rng.gen_bool(0.5).then(|| rng.gen_range(0..2)))
        .collect();
    cluster_from_choices(&choices)
}

pub fn divisorial(cluster: Cluster) -> SurfaceValuation {
    SurfaceValuation::divisorial(Arc::new(cluster), &int(1)).expect("positive normalization")
}

/// Multiplicities of a curve germ through the cluster: nonnegative integers
/// satisfying the proximity inequalities, built from the last point backwards.
pub fn random_germ(rng: &mut ChaCha8Rng, cluster: &Cluster) -> Vec<Rational> {
    let n = cluster.len();
    let mut e = vec![0i64; n];
    for i in (0..n).rev() {
        let forced: i64 = cluster.proximate_points(i).map(|k| e[k]).sum();
        let slack = if i == n - 1 { rng.gen_range(0..=3) } else { rng.gen_range(0..=2) };
        e[i] = forced + slack;
    }
    e.into_iter().map(int).collect()
}

pub fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    rat(rng.gen_range(lo * den..=hi * den), den)
}

/// A proper monomial ideal with up to `max_gens` generators in `c` variables.
pub fn random_ideal(rng: &mut ChaCha8Rng, c: usize, max_gens: usize, max_exp: u64) -> MonomialIdeal {
    loop {
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Vec<u64>> =
            (0..k).map(|_| (0..c).map(|_| rng.gen_range(0..=max_exp)).collect()).collect();
        let a = MonomialIdeal::new(c, gens).expect("nonempty generators");
        if !a.is_unit() {
            return a;
        }
    }
}

pub fn coprime_pairs(max: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in 1..=max {
        for q in 1..=max {
            if num_integer::gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn le_all(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn all_nonpositive(a: &[Rational]) -> bool {
    a.iter().all(|x| *x <= Rational::zero())
}

/// Fixed-seed proptest settings so runs are reproducible.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_2026),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}
