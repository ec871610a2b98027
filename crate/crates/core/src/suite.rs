//! The batch verification run behind `steiner-lab verify-all`.
//!
//! Each check builds its instances deterministically from the seed and
//! returns one outcome line; nothing here short-circuits on failure.

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::{json, Value};

use crate::chow::{multiply, porteous_class, power, rank_bound, ChowClass, Grassmannian};
use crate::error::Result;
use crate::field::PrimeField;
use crate::grassmann::{gaussian_binomial, DEFAULT_BUDGET};
use crate::jumping::{
    dim_bounds, induce, jumping_enumerate, sigma_enumerate, sigma_nonempty_over_closure, tangent_dim, JumpingPair,
};
use crate::random::{dualizable_shapes, min_valid_t, pick, random_rank_deficient, random_valid_reduced, seeded};
use crate::schwarzenberger::{pair_key, random_case3_surjection, rnc_points, verify_family, FamilySpec};
use crate::steiner::{dualize, find_violation_exhaustive, reduce, valid_over_closure, SteinerMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{:>2}] {:<16} {}  ({} ms) {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.millis,
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({"id": self.id, "name": self.name, "pass": self.pass, "detail": self.detail})
    }
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome { id, name, pass, detail, millis: start.elapsed().as_millis() }
}

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).expect("small prime")
}

/// Rank bound formula and vanishing of the degeneracy class, `n <= 4`, `s <= 3`.
pub fn rank_bounds() -> Outcome {
    timed(1, "rank-bound", || {
        let mut cases = 0;
        for n in 1..=4 {
            for k in 0..n {
                let g = Grassmannian::new(k, n)?;
                let c = ChowClass::chern_q(g);
                for s in 1..=3 {
                    let rb = rank_bound(k, n, s)?;
                    if rb != ((k + 1) * (n - k)).min((n - k) * s) {
                        return Ok((false, format!("rank_bound({k},{n},{s}) = {rb}")));
                    }
                    let cs = power(&c, s)?;
                    for t in s * (k + 1)..=s * (k + 1) + g.dim() + 1 {
                        let r = t - s * (k + 1);
                        let pc = porteous_class(k, n, s, t)?;
                        let expected = if r + 1 <= g.dim() { cs.component(r + 1) } else { ChowClass::zero(g) };
                        if pc != expected || pc.is_zero() != (r >= rb) || !pc.has_nonneg_integer_coeffs() {
                            return Ok((false, format!("porteous({k},{n},{s},{t}) = {pc}")));
                        }
                        cases += 1;
                    }
                }
            }
            if rank_bound(0, n, 1)? != n || porteous_class(0, n, 1, n)?.is_zero() {
                return Ok((false, format!("P^{n}: rank n-1 is not forced to degenerate")));
            }
        }
        Ok((true, format!("{cases} (k,n,s,t) cases")))
    })
}

/// Commutativity and the degree of the Plücker quadric (the full Schur-oracle
/// comparison lives in the test suite).
pub fn schubert_products() -> Outcome {
    timed(2, "schubert", || {
        let g = Grassmannian::new(1, 3)?;
        let s1 = ChowClass::special(g, 1)?;
        let top = ChowClass::schubert(g, crate::chow::Partition::new(vec![2, 2])?)?;
        if power(&s1, 4)? != top.scale(&crate::field::rat(2, 1)) {
            return Ok((false, "sigma_1^4 != 2 [pt] in G(1,3)".into()));
        }
        let mut pairs = 0;
        for (k, n) in [(1, 3), (1, 4), (2, 4)] {
            let g = Grassmannian::new(k, n)?;
            let parts = g.box_partitions();
            for a in &parts {
                for b in &parts {
                    let x = multiply(&ChowClass::schubert(g, a.clone())?, &ChowClass::schubert(g, b.clone())?)?;
                    let y = multiply(&ChowClass::schubert(g, b.clone())?, &ChowClass::schubert(g, a.clone())?)?;
                    if x != y || !x.has_nonneg_integer_coeffs() {
                        return Ok((false, format!("sigma_{a} * sigma_{b} in G({k},{n})")));
                    }
                    pairs += 1;
                }
            }
        }
        Ok((true, format!("{pairs} products commutative with nonnegative integer coefficients")))
    })
}

fn family_outcome(id: u8, name: &'static str, spec: FamilySpec, primes: &[u64], extra: impl Fn(&crate::schwarzenberger::FamilyReport) -> Result<Option<String>>) -> Outcome {
    timed(id, name, || {
        let r = verify_family(&spec, primes, DEFAULT_BUDGET)?;
        if !r.pass() {
            return Ok((false, format!("failing predicates: {}", r.failing().join(", "))));
        }
        let upper = dim_bounds(r.k, r.n, r.s, r.t).upper;
        for lr in &r.locus.reports {
            if lr.tangent_dims.keys().any(|&d| d as i64 != upper) {
                return Ok((false, format!("tangent dims {:?} over F_{} vs upper {upper}", lr.tangent_dims, lr.prime)));
            }
        }
        if let Some(msg) = extra(&r)? {
            return Ok((false, msg));
        }
        let est: Vec<String> = r.locus.reports.iter().map(|l| format!("F_{}: {} pairs", l.prime, l.pairs)).collect();
        Ok((true, format!("(k,n,s,t)=({},{},{},{}), dim {upper}; {}", r.k, r.n, r.s, r.t, est.join(", "))))
    })
}

pub fn family_rnc() -> Outcome {
    family_outcome(3, "family-rnc", FamilySpec::Rnc { d: 2, n: 3 }, &[5, 7], |r| {
        if r.t != r.n + r.s || r.t != 6 {
            return Ok(Some(format!("t = {}", r.t)));
        }
        for lr in &r.locus.reports {
            let sigma: BTreeSet<Vec<u64>> = lr.sigma.iter().cloned().collect();
            if sigma.len() as u64 != lr.prime + 1 || sigma != rnc_points(2, lr.prime)? {
                return Ok(Some(format!("Sigma over F_{} is not the conic", lr.prime)));
            }
        }
        Ok(None)
    })
}

pub fn family_veronese() -> Outcome {
    family_outcome(4, "family-veronese", FamilySpec::Veronese, &[3, 5], |r| {
        if (r.k, r.n, r.s, r.t) != (0, 2, 3, 6) {
            return Ok(Some("wrong type".into()));
        }
        for lr in &r.locus.reports {
            let p = lr.prime;
            if lr.sigma.len() as u64 != p * p + p + 1 {
                return Ok(Some(format!("|Sigma| = {} over F_{p}", lr.sigma.len())));
            }
        }
        Ok(None)
    })
}

/// Seeded `s = k+2` instance with `k = 1`, `n = 2`, `t = 8` over `F_5`.
pub fn family_case3(seed: u64) -> Outcome {
    timed(5, "family-case3", || {
        let (k, n, t, p) = (1, 2, 8, 5);
        let surjection = random_case3_surjection(k, n, t, seed, &[p])?;
        let spec = FamilySpec::CaseIII { k, n, surjection };
        let r = verify_family(&spec, &[p], DEFAULT_BUDGET)?;
        if !r.pass() {
            return Ok((false, format!("failing predicates: {}", r.failing().join(", "))));
        }
        let sm = crate::schwarzenberger::build_triple(&spec)?.steiner_map().over_prime(p)?;
        let sigma = sigma_enumerate(&sm, p, DEFAULT_BUDGET)?;
        let pairs = jumping_enumerate(&sm, p, DEFAULT_BUDGET)?;
        for fd in &sigma {
            let over: usize = pairs.iter().filter(|jp| jp.a == fd.a).count();
            if over as u128 != gaussian_binomial(fd.fiber_dim(), k + 1, p) {
                return Ok((false, format!("{over} pairs over a point with fiber dim {}", fd.fiber_dim())));
            }
        }
        let expected = ((k + 1) * (t - (k + 1) * (n + 1) - k)) as usize;
        for jp in &pairs {
            let d = tangent_dim(&sm, jp)?.tangent_dim;
            if d != expected {
                return Ok((false, format!("tangent dim {d}, expected {expected}")));
            }
        }
        Ok((true, format!("{} points, {} pairs, tangent dim {expected}", sigma.len(), pairs.len())))
    })
}

/// Validity agrees between a map and its dual; dualizing twice is the identity.
pub fn duality(seed: u64, count: usize) -> Outcome {
    timed(6, "duality", || {
        let f = fp(3);
        let mut rng = seeded(seed);
        let shapes = dualizable_shapes(12);
        let mut valid = 0;
        for _ in 0..count {
            let &(k, n, s) = pick(&shapes, &mut rng);
            let t = rng_range(&mut rng, s * (k + 1), s * (n + 1));
            let sm = SteinerMap::random(f, k, n, s, t, &mut rng)?;
            let d = dualize(&sm)?;
            if dualize(&d)? != sm {
                return Ok((false, format!("double dual differs on type ({k},{n},{s},{t})")));
            }
            let a = find_violation_exhaustive(&sm, DEFAULT_BUDGET)?.is_none();
            let b = find_violation_exhaustive(&d, DEFAULT_BUDGET)?.is_none();
            if a != b {
                return Ok((false, format!("verdicts {a} vs {b} on type ({k},{n},{s},{t})")));
            }
            valid += a as usize;
        }
        Ok((true, format!("{count} instances, {valid} valid")))
    })
}

fn rng_range<R: rand::Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// Reduction is idempotent and leaves the enumerated jumping locus alone.
pub fn reduction(seed: u64, count: usize) -> Outcome {
    timed(7, "reduction", || {
        let mut rng = seeded(seed);
        let shapes = [(0, 1, 2), (0, 2, 2), (0, 1, 3), (0, 2, 3), (1, 2, 2), (1, 2, 3), (0, 3, 2)];
        let mut pairs_seen = 0;
        for _ in 0..count {
            let p = *pick(&[3u64, 5], &mut rng);
            let &(k, n, s) = pick(&shapes, &mut rng);
            let full = s * (n + 1);
            let rank = rng_range(&mut rng, 1, full - 1);
            let t = rng_range(&mut rng, rank + 1, full + 2);
            let sm = random_rank_deficient(fp(p), k, n, s, t, rank, &mut rng)?;
            let (red, trivial) = reduce(&sm);
            if trivial == 0 || reduce(&red) != (red.clone(), 0) || red.t() + trivial != t {
                return Ok((false, format!("reduce is not a fixpoint on type ({k},{n},{s},{t})")));
            }
            let sig = |m: &SteinerMap<PrimeField>| -> Result<BTreeSet<Vec<u64>>> {
                Ok(sigma_enumerate(m, p, DEFAULT_BUDGET)?.iter().map(|fd| fd.point().to_vec()).collect())
            };
            let jumps = |m: &SteinerMap<PrimeField>| -> Result<BTreeSet<(Vec<u64>, Vec<Vec<u64>>)>> {
                Ok(jumping_enumerate(m, p, DEFAULT_BUDGET)?.iter().map(pair_key).collect())
            };
            if sig(&sm)? != sig(&red)? {
                return Ok((false, format!("Sigma changed on type ({k},{n},{s},{t}) over F_{p}")));
            }
            let before = jumps(&sm)?;
            if before != jumps(&red)? {
                return Ok((false, format!("J~ changed on type ({k},{n},{s},{t}) over F_{p}")));
            }
            pairs_seen += before.len();
        }
        Ok((true, format!("{count} instances, {pairs_seen} pairs compared")))
    })
}

/// Tangent dimension never exceeds the upper bound; a nonnegative lower
/// bound comes with a nonempty locus. Instances must be valid over the
/// algebraic closure, and emptiness is decided there too when no rational
/// pair exists.
pub fn bounds(seed: u64, count: usize) -> Outcome {
    timed(8, "bounds", || {
        let mut rng = seeded(seed);
        let shapes = dualizable_shapes(12);
        let (mut pairs_total, mut nonneg_lower, mut nonrational, mut made) = (0, 0, 0, 0);
        let mut failures = Vec::new();
        while made < count {
            let p = *pick(&[3u64, 5], &mut rng);
            let &(k, n, s) = pick(&shapes, &mut rng);
            let t = rng_range(&mut rng, min_valid_t(k, n, s), s * (n + 1));
            let Some(sm) = random_valid_reduced(fp(p), k, n, s, t, 50, DEFAULT_BUDGET, &mut rng)? else {
                continue;
            };
            if !valid_over_closure(&sm)? {
                continue;
            }
            made += 1;
            let b = dim_bounds(k, n, s, t);
            let pairs = jumping_enumerate(&sm, p, DEFAULT_BUDGET)?;
            for jp in &pairs {
                let d = tangent_dim(&sm, jp)?.tangent_dim as i64;
                if d > b.upper {
                    failures.push(format!("tangent {d} > {} on ({k},{n},{s},{t}) over F_{p}", b.upper));
                }
            }
            if b.lower >= 0 {
                nonneg_lower += 1;
                if pairs.is_empty() {
                    if sigma_nonempty_over_closure(&sm)? {
                        nonrational += 1;
                    } else {
                        failures.push(format!("empty locus with lower bound {} on ({k},{n},{s},{t}) over F_{p}", b.lower));
                    }
                }
            }
            pairs_total += pairs.len();
        }
        if failures.is_empty() {
            Ok((
                true,
                format!("{count} instances, {pairs_total} pairs, {nonneg_lower} with lower >= 0 ({nonrational} without rational pairs)"),
            ))
        } else {
            Ok((false, format!("{} violations, first: {}", failures.len(), failures[0])))
        }
    })
}

/// For `s <= k+1` a valid reduced map is all of `S* (x) V`.
pub fn trivial_range(seed: u64, per_shape: usize) -> Outcome {
    timed(9, "trivial-range", || {
        let f = fp(3);
        let mut rng = seeded(seed);
        let (mut tested, mut valid) = (0, 0);
        for (k, n) in [(1, 2), (1, 3), (2, 3)] {
            for s in 1..=k + 1 {
                let full = s * (n + 1);
                for i in 0..per_shape {
                    let rank = if i % 3 == 0 { full } else { rng_range(&mut rng, s * (k + 1), full) };
                    let t = rank + rng_range(&mut rng, 0, 2);
                    let sm = random_rank_deficient(f, k, n, s, t, rank, &mut rng)?;
                    let (red, _) = reduce(&sm);
                    tested += 1;
                    if find_violation_exhaustive(&red, DEFAULT_BUDGET)?.is_none() {
                        valid += 1;
                        if red.t() != full {
                            return Ok((false, format!("valid proper subspace of dim {} < {full} on ({k},{n},{s})", red.t())));
                        }
                    }
                }
            }
        }
        Ok((true, format!("{tested} instances, {valid} valid, all full")))
    })
}

/// Inducing from every pair of the Veronese map over `F_5`.
pub fn induction() -> Outcome {
    timed(10, "induction", || {
        let p = 5;
        let sm = crate::schwarzenberger::build_triple(&FamilySpec::Veronese)?.steiner_map().over_prime(p)?;
        let pairs = jumping_enumerate(&sm, p, DEFAULT_BUDGET)?;
        let j_f: BTreeSet<Vec<Vec<u64>>> = pairs.iter().map(|jp| jp.gamma.basis_vecs()).collect();
        for jp in &pairs {
            let ind = induce(&sm, jp)?;
            if (ind.map.s(), ind.map.t()) != (2, 5) {
                return Ok((false, format!("induced type ({}, {})", ind.map.s(), ind.map.t())));
            }
            let mut cover: BTreeSet<Vec<Vec<u64>>> =
                jumping_enumerate(&ind.map, p, DEFAULT_BUDGET)?.iter().map(|q| q.gamma.basis_vecs()).collect();
            cover.extend(pairs.iter().filter(|q: &&JumpingPair<PrimeField>| q.a == jp.a).map(|q| q.gamma.basis_vecs()));
            if !j_f.is_subset(&cover) {
                return Ok((false, format!("containment fails at a = {:?}", jp.a.basis_vec(0))));
            }
        }
        Ok((true, format!("{} base points, |J(F)| = {}", pairs.len(), j_f.len())))
    })
}

/// All checks with the default instance counts.
pub fn verify_all(seed: u64) -> Vec<Outcome> {
    verify_with_counts(seed, 100, 100, 200, 12)
}

/// All checks with every randomized check cut to `instances` instances.
pub fn verify_all_scaled(seed: u64, instances: usize) -> Vec<Outcome> {
    verify_with_counts(seed, instances, instances, instances, instances.div_ceil(7).max(1))
}

fn verify_with_counts(seed: u64, dual: usize, red: usize, bnd: usize, per_shape: usize) -> Vec<Outcome> {
    vec![
        rank_bounds(),
        schubert_products(),
        family_rnc(),
        family_veronese(),
        family_case3(seed),
        duality(seed, dual),
        reduction(seed, red),
        bounds(seed, bnd),
        trivial_range(seed, per_shape),
        induction(),
    ]
}
