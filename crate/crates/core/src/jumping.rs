//! Jumping pairs `(a, Gamma)` with `a (x) Gamma` inside `T0* = Im(phi)`.
//!
//! Over a point `a` of `P(S*)` the jumping fiber `E_a` is the subspace of `V`
//! with `a (x) E_a = (<a> (x) V) ∩ T0*`, and the pairs over `a` are exactly
//! the `(k+1)`-subspaces of `E_a`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::grassmann;
use crate::linalg::{dot, Matrix, Subspace};
use crate::groebner::projectively_empty;
use crate::poly::{linear_minors, Polynomial};
use crate::steiner::{reduce, SteinerMap};

/// Cap on the number of minors `sigma_equations` will expand.
pub const MINOR_BUDGET: u128 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberData<F: Field> {
    pub a: Subspace<F>,
    /// `E_a` as a subspace of `V`.
    pub fiber: Subspace<F>,
}

impl<F: Field> FiberData<F> {
    pub fn fiber_dim(&self) -> usize {
        self.fiber.dim()
    }
    /// Normalized coordinates of `a`.
    pub fn point(&self) -> &[F::Elem] {
        self.a.basis_vec(0)
    }
}

/// `a (x) v` flattened as an `s x (n+1)` tensor.
pub fn tensor_vec<F: Field>(f: &F, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().flat_map(|x| v.iter().map(move |y| f.mul(x, y))).collect()
}

fn check_point<F: Field>(sm: &SteinerMap<F>, a: &Subspace<F>) -> Result<()> {
    if a.dim() != 1 || a.ambient_dim() != sm.s() {
        return Err(Error::DimensionMismatch(format!(
            "a point of P(S*) is a line in F^{}, got a {}-subspace of F^{}",
            sm.s(),
            a.dim(),
            a.ambient_dim()
        )));
    }
    Ok(())
}

pub fn jumping_fiber<F: Field>(sm: &SteinerMap<F>, a: &Subspace<F>) -> Result<FiberData<F>> {
    check_point(sm, a)?;
    let f = sm.field().clone();
    let v = sm.v_dim();
    let av = a.basis_vec(0);
    let slice = Subspace::from_rows(
        f.clone(),
        sm.s() * v,
        (0..v)
            .map(|j| {
                let mut e = vec![f.zero(); v];
                e[j] = f.one();
                tensor_vec(&f, av, &e)
            })
            .collect(),
    )?;
    let meet = slice.intersect(&sm.image())?;
    // a is in echelon form, so its first nonzero coordinate is 1
    let b0 = a.pivots()[0];
    let rows = meet.basis_vecs().into_iter().map(|w| w[b0 * v..(b0 + 1) * v].to_vec()).collect();
    Ok(FiberData { a: a.clone(), fiber: Subspace::from_rows(f, v, rows)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JumpingPair<F: Field> {
    pub a: Subspace<F>,
    pub gamma: Subspace<F>,
    /// Preimage of `a (x) Gamma` in `T*`, one particular lift per basis vector.
    pub lambda: Subspace<F>,
}

impl<F: Field> JumpingPair<F> {
    pub fn new(sm: &SteinerMap<F>, a: Subspace<F>, gamma: Subspace<F>) -> Result<Self> {
        check_point(sm, &a)?;
        if gamma.ambient_dim() != sm.v_dim() || gamma.dim() != sm.k() + 1 {
            return Err(Error::InvalidJumpingPair(format!(
                "Gamma must be a {}-subspace of F^{}",
                sm.k() + 1,
                sm.v_dim()
            )));
        }
        let f = sm.field().clone();
        let phit = sm.phi().transpose();
        let mut lifts = Vec::with_capacity(gamma.dim());
        for g in gamma.basis_vecs() {
            let target = tensor_vec(&f, a.basis_vec(0), &g);
            match phit.solve(&target)? {
                Some(x) => lifts.push(x),
                None => return Err(Error::InvalidJumpingPair("a (x) Gamma is not contained in Im(phi)".into())),
            }
        }
        let lambda = Subspace::from_rows(f, sm.t(), lifts)?;
        Ok(JumpingPair { a, gamma, lambda })
    }

    /// `a (x) Gamma` as a subspace of `S* (x) V`.
    pub fn product(&self) -> Subspace<F> {
        let f = self.a.field().clone();
        let rows = self.gamma.basis_vecs().iter().map(|g| tensor_vec(&f, self.a.basis_vec(0), g)).collect();
        Subspace::from_rows(f, self.a.ambient_dim() * self.gamma.ambient_dim(), rows).expect("tensor length")
    }

    /// `phi(lambda) = a (x) Gamma` and `dim lambda = k+1`.
    pub fn verify(&self, sm: &SteinerMap<F>) -> Result<bool> {
        if self.lambda.dim() != sm.k() + 1 || self.lambda.ambient_dim() != sm.t() {
            return Ok(false);
        }
        Ok(self.lambda.image_under(sm.phi())? == self.product())
    }
}

/// Points of `P(S*)(F_p)` whose jumping fiber has dimension at least `k+1`.
pub fn sigma_enumerate<F: Field>(sm: &SteinerMap<F>, p: u64, budget: u128) -> Result<Vec<FiberData<PrimeField>>> {
    let smp = sm.over_prime(p)?;
    let pts = grassmann::subspaces(*smp.field(), smp.s(), 1, budget)?;
    let fibers = pts
        .into_par_iter()
        .map(|a| jumping_fiber(&smp, &a))
        .collect::<Result<Vec<_>>>()?;
    Ok(fibers.into_iter().filter(|fd| fd.fiber_dim() > smp.k()).collect())
}

/// All jumping pairs over `F_p`, as the Grassmann bundle `G(k+1, E)` over `Sigma`.
pub fn jumping_enumerate<F: Field>(sm: &SteinerMap<F>, p: u64, budget: u128) -> Result<Vec<JumpingPair<PrimeField>>> {
    let smp = sm.over_prime(p)?;
    let f = *smp.field();
    let sigma = sigma_enumerate(&smp, p, budget)?;
    let needed: u128 = sigma.iter().map(|fd| grassmann::gaussian_binomial(fd.fiber_dim(), smp.k() + 1, p)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let mut pairs = Vec::with_capacity(needed as usize);
    for fd in sigma {
        for coeffs in grassmann::subspaces(f, fd.fiber_dim(), smp.k() + 1, budget)? {
            let gamma = Subspace::from_matrix(coeffs.basis().mul(fd.fiber.basis())?);
            pairs.push(JumpingPair::new(&smp, fd.a.clone(), gamma)?);
        }
    }
    Ok(pairs)
}

/// The `q x (n+1)` matrix `M(a)` of linear forms whose kernel is `E_a`,
/// one coefficient matrix per coordinate of `a`.
pub fn fiber_condition_matrices<F: Field>(sm: &SteinerMap<F>) -> Vec<Matrix<F>> {
    let ann = sm.image().annihilator();
    let v = sm.v_dim();
    let f = sm.field();
    (0..sm.s())
        .map(|b| {
            let mut m = Matrix::zeros(f.clone(), ann.dim(), v);
            for r in 0..ann.dim() {
                for j in 0..v {
                    m.set(r, j, ann.basis_vec(r)[b * v + j].clone());
                }
            }
            m
        })
        .collect()
}

/// The nonzero `(n-k+1)`-minors of `M(a)`: they vanish exactly where `dim E_a >= k+1`.
pub fn sigma_equations<F: Field>(sm: &SteinerMap<F>) -> Result<Vec<Polynomial<F>>> {
    linear_minors(sm.field(), &fiber_condition_matrices(sm), sm.n() - sm.k() + 1, MINOR_BUDGET)
}

/// Whether `Sigma` has a point over the algebraic closure of `F_p`.
pub fn sigma_nonempty_over_closure(sm: &SteinerMap<PrimeField>) -> Result<bool> {
    let eqs = sigma_equations(sm)?;
    Ok(!projectively_empty(*sm.field(), sm.s(), &eqs)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentSystem<F: Field> {
    /// `phi_i = v1 (x) gamma_i` as `s x (n+1)` tensors.
    pub lambda_basis: Vec<Matrix<F>>,
    /// Rows `u_1..u_{n+1}` with `gamma_i(u_j) = delta_ij` for `i <= k+1`.
    pub u_basis: Matrix<F>,
    pub v1: Vec<F::Elem>,
    pub constraint_matrix: Matrix<F>,
    pub tangent_dim: usize,
}

/// Tangent dimension of `J~(F)` at a pair, with the echelon basis of `Gamma`
/// completed by unit vectors.
pub fn tangent_dim<F: Field>(sm: &SteinerMap<F>, jp: &JumpingPair<F>) -> Result<TangentSystem<F>> {
    let f = sm.field();
    let ext = jp.gamma.complement();
    tangent_dim_with(sm, jp, &f.one(), jp.gamma.basis(), ext.basis())
}

/// Tangent dimension from explicit choices: `v1 = scale * a`, `gamma_basis`
/// spanning `Gamma`, and `extension` completing it to a basis of `V`.
///
/// Unknowns are `psi(phi_i) = sum_r c_{i,r} R_r` over a basis `R_r` of `T0*`;
/// the constraints say `psi(phi_i)(u_j)` lies in `<v1>` for `j != i` and
/// `psi(phi_i)(u_i) = psi(phi_1)(u_1)` modulo `v1`. Solutions with values in
/// `Lambda` are the `(k+1)^2` trivial ones and are subtracted.
pub fn tangent_dim_with<F: Field>(
    sm: &SteinerMap<F>,
    jp: &JumpingPair<F>,
    scale: &F::Elem,
    gamma_basis: &Matrix<F>,
    extension: &Matrix<F>,
) -> Result<TangentSystem<F>> {
    let f = sm.field().clone();
    let (s, v, m) = (sm.s(), sm.v_dim(), sm.k() + 1);
    let img = sm.image();
    if !img.contains_subspace(&jp.product())? {
        return Err(Error::InvalidJumpingPair("a (x) Gamma is not contained in Im(phi)".into()));
    }
    if gamma_basis.rows() != m || Subspace::from_matrix(gamma_basis.clone()) != jp.gamma {
        return Err(Error::InvalidJumpingPair("gamma_basis does not span Gamma".into()));
    }
    if f.is_zero(scale) {
        return Err(Error::InvalidJumpingPair("v1 must be nonzero".into()));
    }
    let full = gamma_basis.stack(extension)?;
    let inv = full
        .inverse()
        .ok_or_else(|| Error::InvalidJumpingPair("basis of Gamma does not extend to a basis of V".into()))?;
    // columns of the inverse are the dual basis
    let u = inv.transpose();
    let v1: Vec<F::Elem> = jp.a.basis_vec(0).iter().map(|x| f.mul(x, scale)).collect();
    let ells = Subspace::span_of(f.clone(), v1.clone()).annihilator().basis_vecs();

    let t0 = img.dim();
    // w[r][b][j] = ell_b . R_r . u_j
    let w: Vec<Vec<Vec<F::Elem>>> = (0..t0)
        .map(|r| {
            let rr = Matrix::new(f.clone(), s, v, img.basis_vec(r).to_vec()).expect("tensor shape");
            let cols: Vec<Vec<F::Elem>> = (0..v).map(|j| rr.apply(u.row(j)).expect("length v")).collect();
            ells.iter().map(|l| cols.iter().map(|c| dot(&f, l, c)).collect()).collect()
        })
        .collect();

    let nvars = m * t0;
    let mut rows = Vec::new();
    for i in 0..m {
        for j in (0..v).filter(|&j| j != i) {
            for b in 0..ells.len() {
                let mut row = vec![f.zero(); nvars];
                for r in 0..t0 {
                    row[i * t0 + r] = w[r][b][j].clone();
                }
                rows.push(row);
            }
        }
    }
    for i in 1..m {
        for b in 0..ells.len() {
            let mut row = vec![f.zero(); nvars];
            for r in 0..t0 {
                row[i * t0 + r] = w[r][b][i].clone();
                row[r] = f.neg(&w[r][b][0]);
            }
            rows.push(row);
        }
    }
    let constraint_matrix = Matrix::from_rows(f.clone(), nvars, rows)?;
    let nullity = nvars - constraint_matrix.rank();
    let tangent_dim = nullity
        .checked_sub(m * m)
        .ok_or_else(|| Error::InvalidJumpingPair("solution space misses End(Lambda)".into()))?;
    let lambda_basis = (0..m)
        .map(|i| Matrix::new(f.clone(), s, v, tensor_vec(&f, &v1, gamma_basis.row(i))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TangentSystem { lambda_basis, u_basis: u, v1, constraint_matrix, tangent_dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimBounds {
    pub lower: i64,
    pub upper: i64,
}

impl DimBounds {
    pub fn to_json(&self) -> Value {
        json!({"lower": self.lower, "upper": self.upper})
    }
}

/// `lower = (k+1)(t-k-sn-s+n) + s - 1` and `upper = (k+1)(t-(k+1)(s+n-k-1)-k)`.
pub fn dim_bounds(k: usize, n: usize, s: usize, t: usize) -> DimBounds {
    let (k, n, s, t) = (k as i64, n as i64, s as i64, t as i64);
    DimBounds {
        lower: (k + 1) * (t - k - s * n - s + n) + s - 1,
        upper: (k + 1) * (t - (k + 1) * (s + n - k - 1) - k),
    }
}

pub fn map_bounds<F: Field>(sm: &SteinerMap<F>) -> DimBounds {
    dim_bounds(sm.k(), sm.n(), sm.s(), sm.t())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced<F: Field> {
    pub map: SteinerMap<F>,
    pub reduced: bool,
}

/// `phi': T*/Lambda -> (S*/<a>) (x) V`, of type `(s-1, t-k-1)`.
pub fn induce<F: Field>(sm: &SteinerMap<F>, jp: &JumpingPair<F>) -> Result<Induced<F>> {
    if sm.s() < 2 {
        return Err(Error::InvalidParameters("inducing needs s >= 2".into()));
    }
    if !jp.verify(sm)? {
        return Err(Error::InvalidJumpingPair("phi(Lambda) differs from a (x) Gamma".into()));
    }
    let f = sm.field().clone();
    let v = sm.v_dim();
    let ells = jp.a.annihilator().basis_vecs();
    // unit vectors off the pivots of Lambda span a complement in T*
    let keep: Vec<usize> = (0..sm.t()).filter(|c| !jp.lambda.pivots().contains(c)).collect();
    if keep.is_empty() {
        return Err(Error::InvalidParameters("t = k+1 leaves nothing after the quotient".into()));
    }
    let rows = keep
        .iter()
        .map(|&i| {
            let x = sm.tensor(i);
            ells.iter().flat_map(|l| x.left_apply(l).expect("length s")).collect()
        })
        .collect();
    let phi = Matrix::from_rows(f, (sm.s() - 1) * v, rows)?;
    let map = SteinerMap::new(sm.k(), sm.n(), sm.s() - 1, keep.len(), phi)?;
    let reduced = map.is_reduced();
    Ok(Induced { map, reduced })
}

/// Jumping-locus summary at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusReport {
    pub prime: u64,
    pub sigma: Vec<Vec<u64>>,
    pub pairs: usize,
    pub tangent_dims: BTreeMap<usize, usize>,
    pub bounds: DimBounds,
    pub estimate: Option<usize>,
    pub maximal: bool,
}

impl LocusReport {
    pub fn to_json(&self) -> Value {
        let hist: serde_json::Map<String, Value> =
            self.tangent_dims.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
        json!({
            "prime": self.prime,
            "sigma": self.sigma,
            "pairs": self.pairs,
            "tangent_dims": hist,
            "bounds": self.bounds.to_json(),
            "estimate": self.estimate,
            "maximal": self.maximal,
        })
    }
}

pub fn locus_report<F: Field>(sm: &SteinerMap<F>, p: u64, budget: u128) -> Result<LocusReport> {
    let (red, _) = reduce(sm);
    let smp = red.over_prime(p)?;
    let bounds = map_bounds(&smp);
    let sigma: Vec<Vec<u64>> = sigma_enumerate(&smp, p, budget)?.iter().map(|fd| fd.point().to_vec()).collect();
    let pairs = jumping_enumerate(&smp, p, budget)?;
    let dims = pairs
        .par_iter()
        .map(|jp| tangent_dim(&smp, jp).map(|ts| ts.tangent_dim))
        .collect::<Result<Vec<_>>>()?;
    let mut tangent_dims = BTreeMap::new();
    for d in &dims {
        *tangent_dims.entry(*d).or_insert(0) += 1;
    }
    let estimate = dims.iter().copied().max();
    let maximal = !dims.is_empty() && dims.iter().all(|&d| d as i64 == bounds.upper);
    Ok(LocusReport { prime: p, sigma, pairs: pairs.len(), tangent_dims, bounds, estimate, maximal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub reports: Vec<LocusReport>,
    pub maximal: bool,
}

impl MaximalityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "reports": self.reports.iter().map(LocusReport::to_json).collect::<Vec<_>>(),
            "maximal": self.maximal,
        })
    }
}

/// Tangent dimension at every enumerated pair, compared with the upper bound.
pub fn maximality_report<F: Field>(sm: &SteinerMap<F>, primes: &[u64], budget: u128) -> Result<MaximalityReport> {
    let reports = primes.iter().map(|&p| locus_report(sm, p, budget)).collect::<Result<Vec<_>>>()?;
    let maximal = !reports.is_empty() && reports.iter().all(|r| r.maximal);
    Ok(MaximalityReport { reports, maximal })
}
