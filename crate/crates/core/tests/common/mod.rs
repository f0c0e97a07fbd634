//! Sweep drivers shared by the integration tests.
#![allow(dead_code)]

use mixbraid::cover::{Character, CoverSpec};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every root of unity `ζ_d^k ≠ 1` with `d ≤ max_d`, once, as `(order, k)`.
/// Characters depend on `ρ` only, so sweeping these pairs covers every
/// `d_j ≤ max_d`.
pub fn distinct_roots(max_d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for k in 1..d {
            if num_integer::gcd(k, d) == 1 {
                out.push((d, k));
            }
        }
    }
    out
}

/// Compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct SweepPlan {
    pub min_n: usize,
    pub max_n: usize,
    pub max_d: u32,
    /// Partitions with at most this many blocks get every root tuple.
    pub exhaustive_blocks: usize,
    /// Root tuples drawn per partition with more blocks.
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SweepStats {
    pub exhaustive: usize,
    pub sampled: usize,
}

impl SweepStats {
    pub fn total(&self) -> usize {
        self.exhaustive + self.sampled
    }
}

impl std::fmt::Display for SweepStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} cases ({} exhaustive, {} sampled)", self.total(), self.exhaustive, self.sampled)
    }
}

/// Visits `(cover, character)` pairs accepted by `keep`, with primed
/// characters built from [`distinct_roots`].
pub fn sweep(
    plan: SweepPlan,
    keep: impl Fn(&CoverSpec, &Character) -> bool,
    mut visit: impl FnMut(&CoverSpec, &Character),
) -> SweepStats {
    let roots = distinct_roots(plan.max_d);
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut stats = SweepStats::default();
    for n in plan.min_n..=plan.max_n {
        for parts in compositions(n) {
            let m = parts.len();
            let mut run = |choice: &[(u32, u32)], stats: &mut usize| {
                let degrees = choice.iter().map(|r| r.0).collect();
                let exps = choice.iter().map(|r| r.1).collect();
                let c = CoverSpec::new(parts.clone(), degrees).unwrap();
                let rho = Character::new(&c, exps).unwrap();
                if keep(&c, &rho) {
                    *stats += 1;
                    visit(&c, &rho);
                }
            };
            if m <= plan.exhaustive_blocks {
                let mut idx = vec![0usize; m];
                'odometer: loop {
                    let choice: Vec<(u32, u32)> = idx.iter().map(|&i| roots[i]).collect();
                    run(&choice, &mut stats.exhaustive);
                    for slot in idx.iter_mut() {
                        *slot += 1;
                        if *slot < roots.len() {
                            continue 'odometer;
                        }
                        *slot = 0;
                    }
                    break;
                }
            } else {
                for _ in 0..plan.samples {
                    let choice: Vec<(u32, u32)> = (0..m).map(|_| *roots.choose(&mut rng).unwrap()).collect();
                    run(&choice, &mut stats.sampled);
                }
            }
        }
    }
    stats
}

pub fn nondegenerate(c: &CoverSpec, rho: &Character) -> bool {
    rho.is_primed() && rho.is_nondegenerate(c)
}

pub fn nondegenerate_generic(c: &CoverSpec, rho: &Character) -> bool {
    nondegenerate(c, rho) && !rho.total_product_is_one(c)
}
