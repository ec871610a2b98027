//! Seeded generators of Steiner maps for the randomized checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chow::rank_bound;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;
use crate::steiner::{find_violation_exhaustive, SteinerMap};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(k, n, s)` with `k < n`, `s >= k+2` and `s(n+1) <= max_tensor`.
pub fn dualizable_shapes(max_tensor: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..max_tensor {
        for k in 0..n {
            for s in k + 2..=max_tensor / (n + 1) {
                out.push((k, n, s));
            }
        }
    }
    out
}

/// A map with `t` rows whose image has dimension exactly `rank`: a random
/// `t x rank` matrix of full rank times a random injective `rank`-row map.
pub fn random_rank_deficient<F: Field, R: Rng + ?Sized>(
    field: F,
    k: usize,
    n: usize,
    s: usize,
    t: usize,
    rank: usize,
    rng: &mut R,
) -> Result<SteinerMap<F>> {
    if rank == 0 || rank > t || rank > s * (n + 1) {
        return Err(Error::InvalidParameters(format!("no rank-{rank} map with {t} rows into a {}-dimensional space", s * (n + 1))));
    }
    let base = loop {
        let b = SteinerMap::random(field.clone(), k, n, s, rank, rng)?;
        if b.is_reduced() {
            break b;
        }
    };
    let mix = loop {
        let data = (0..t * rank).map(|_| field.random_elem(rng)).collect();
        let m = Matrix::new(field.clone(), t, rank, data)?;
        if m.rank() == rank {
            break m;
        }
    };
    SteinerMap::new(k, n, s, t, mix.mul(base.phi())?)
}

/// A random injective map that passes the exhaustive check over `F_p`,
/// or `None` after `tries` rejections.
pub fn random_valid_reduced<R: Rng + ?Sized>(
    field: PrimeField,
    k: usize,
    n: usize,
    s: usize,
    t: usize,
    tries: usize,
    budget: u128,
    rng: &mut R,
) -> Result<Option<SteinerMap<PrimeField>>> {
    for _ in 0..tries {
        let sm = SteinerMap::random(field, k, n, s, t, rng)?;
        if sm.is_reduced() && find_violation_exhaustive(&sm, budget)?.is_none() {
            return Ok(Some(sm));
        }
    }
    Ok(None)
}

/// Smallest `t` a genuine bundle of type `(s, *)` on `G(k,n)` can have:
/// `s(k+1)` plus the rank bound.
pub fn min_valid_t(k: usize, n: usize, s: usize) -> usize {
    s * (k + 1) + rank_bound(k, n, s).expect("k < n and s >= 1")
}

pub fn pick<'a, T, R: Rng + ?Sized>(items: &'a [T], rng: &mut R) -> &'a T {
    items.choose(rng).expect("nonempty choice")
}
