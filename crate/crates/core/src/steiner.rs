//! Steiner maps `phi: T* -> S* (x) V` with `V = H^0(U^dual)` of dimension `n+1`.
//!
//! Row `i` of `phi` is the image of the `i`-th basis vector of `T*`, stored as
//! an `s x (n+1)` tensor flattened row-major: entry `(a, j)` sits in column
//! `a*(n+1) + j`. A point of `G(k,n)` is a `(k+1)`-dimensional subspace of
//! `V* = F^{n+1}`; the bundle condition asks that restricting `phi` to every
//! such subspace be surjective onto `Hom(Gamma, S*)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::grassmann::{self, DEFAULT_BUDGET};
use crate::groebner::projectively_empty;
use crate::jumping::MINOR_BUDGET;
use crate::linalg::{Matrix, Subspace};
use crate::poly::linear_minors;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SteinerMap<F: Field> {
    k: usize,
    n: usize,
    s: usize,
    t: usize,
    phi: Matrix<F>,
}

impl<F: Field> SteinerMap<F> {
    pub fn new(k: usize, n: usize, s: usize, t: usize, phi: Matrix<F>) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidParameters(format!("G({k},{n}) needs k < n")));
        }
        if s == 0 || t == 0 {
            return Err(Error::InvalidParameters(format!("s = {s} and t = {t} must be positive")));
        }
        if phi.rows() != t || phi.cols() != s * (n + 1) {
            return Err(Error::DimensionMismatch(format!(
                "phi is {}x{}, expected t x s(n+1) = {t}x{}",
                phi.rows(),
                phi.cols(),
                s * (n + 1)
            )));
        }
        Ok(SteinerMap { k, n, s, t, phi })
    }

    /// The identity `T* = S* (x) V`, with `t = s(n+1)`.
    pub fn full(field: F, k: usize, n: usize, s: usize) -> Result<Self> {
        let t = s * (n + 1);
        Self::new(k, n, s, t, Matrix::identity(field, t))
    }

    /// Rows given as `s x (n+1)` tensors.
    pub fn from_tensors(field: F, k: usize, n: usize, s: usize, tensors: &[Matrix<F>]) -> Result<Self> {
        let rows = tensors
            .iter()
            .map(|m| {
                if m.rows() != s || m.cols() != n + 1 {
                    return Err(Error::DimensionMismatch(format!(
                        "tensor is {}x{}, expected {s}x{}",
                        m.rows(),
                        m.cols(),
                        n + 1
                    )));
                }
                Ok(m.data().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = Matrix::from_rows(field, s * (n + 1), rows)?;
        Self::new(k, n, s, tensors.len(), phi)
    }

    /// Entries drawn from [`Field::random_elem`].
    pub fn random<R: rand::Rng + ?Sized>(field: F, k: usize, n: usize, s: usize, t: usize, rng: &mut R) -> Result<Self> {
        let data = (0..t * s * (n + 1)).map(|_| field.random_elem(rng)).collect();
        Self::new(k, n, s, t, Matrix::new(field, t, s * (n + 1), data)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn phi(&self) -> &Matrix<F> {
        &self.phi
    }
    pub fn field(&self) -> &F {
        self.phi.field()
    }
    pub fn v_dim(&self) -> usize {
        self.n + 1
    }
    /// `t - s(k+1)`, the rank of the bundle when `phi` is valid.
    pub fn bundle_rank(&self) -> i64 {
        crate::chow::bundle_rank(self.k, self.s, self.t)
    }

    /// `T0* = Im(phi)` inside `S* (x) V`.
    pub fn image(&self) -> Subspace<F> {
        self.phi.row_space()
    }

    pub fn is_reduced(&self) -> bool {
        self.phi.rank() == self.t
    }

    /// Row `i` as an `s x (n+1)` tensor.
    pub fn tensor(&self, i: usize) -> Matrix<F> {
        Matrix::new(self.field().clone(), self.s, self.n + 1, self.phi.row(i).to_vec()).expect("row has s(n+1) entries")
    }

    /// Same map on `G(k',n)`; used to compare `P_k` with `P_{k'}`.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(k, self.n, self.s, self.t, self.phi.clone())
    }

    pub fn reduce_mod(&self, target: PrimeField) -> Result<SteinerMap<PrimeField>> {
        SteinerMap::new(self.k, self.n, self.s, self.t, self.phi.reduce_mod(target)?)
    }

    /// `sm` over `F_p`: reduced when `F = Q`, checked to match when `F = F_p`.
    pub fn over_prime(&self, p: u64) -> Result<SteinerMap<PrimeField>> {
        let target = PrimeField::new(p)?;
        if let FieldSpec::PrimeField(q) = self.field().spec() {
            if q != p {
                return Err(Error::FieldMismatch(format!("map is over F_{q}, asked for F_{p}")));
            }
        }
        self.reduce_mod(target)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "k": self.k,
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "phi": self.phi.to_json(),
        });
        match self.field().spec() {
            FieldSpec::Rationals => v["field"] = json!("Q"),
            FieldSpec::PrimeField(p) => {
                v["field"] = json!("Fp");
                v["p"] = json!(p);
            }
        }
        v
    }
}

/// A map over either supported field, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySteinerMap {
    Rational(SteinerMap<Rationals>),
    Prime(SteinerMap<PrimeField>),
}

impl AnySteinerMap {
    pub fn from_json(v: &Value) -> Result<Self> {
        let count = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Schema(format!("Steiner map needs a nonnegative integer {key:?}")))
        };
        let (k, n, s, t) = (count("k")?, count("n")?, count("s")?, count("t")?);
        let phi = v.get("phi").ok_or_else(|| Error::Schema("Steiner map needs \"phi\"".into()))?;
        let check_shape = |rows: usize, cols: usize| {
            if rows != t || cols != s * (n + 1) {
                return Err(Error::Schema(format!(
                    "phi is {rows}x{cols} but t = {t}, s(n+1) = {}",
                    s * (n + 1)
                )));
            }
            Ok(())
        };
        match v.get("field").and_then(Value::as_str) {
            Some("Q") => {
                let m = Matrix::from_json(Rationals, phi)?;
                check_shape(m.rows(), m.cols())?;
                Ok(AnySteinerMap::Rational(SteinerMap::new(k, n, s, t, m)?))
            }
            Some("Fp") => {
                let p = v
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Schema("field \"Fp\" needs a prime \"p\"".into()))?;
                let m = Matrix::from_json(PrimeField::new(p)?, phi)?;
                check_shape(m.rows(), m.cols())?;
                Ok(AnySteinerMap::Prime(SteinerMap::new(k, n, s, t, m)?))
            }
            _ => Err(Error::Schema("\"field\" must be \"Q\" or \"Fp\"".into())),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySteinerMap::Rational(m) => m.to_json(),
            AnySteinerMap::Prime(m) => m.to_json(),
        }
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnySteinerMap::Rational(m) => m.field().spec(),
            AnySteinerMap::Prime(m) => m.field().spec(),
        }
    }

    pub fn over_prime(&self, p: u64) -> Result<SteinerMap<PrimeField>> {
        match self {
            AnySteinerMap::Rational(m) => m.over_prime(p),
            AnySteinerMap::Prime(m) => m.over_prime(p),
        }
    }
}

/// A point of `G(k,n)`: a `(k+1)`-subspace of `F^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannPoint<F: Field> {
    k: usize,
    n: usize,
    gamma: Subspace<F>,
}

impl<F: Field> GrassmannPoint<F> {
    pub fn new(k: usize, n: usize, gamma: Subspace<F>) -> Result<Self> {
        if gamma.ambient_dim() != n + 1 || gamma.dim() != k + 1 {
            return Err(Error::DimensionMismatch(format!(
                "a point of G({k},{n}) is a {}-subspace of F^{}, got a {}-subspace of F^{}",
                k + 1,
                n + 1,
                gamma.dim(),
                gamma.ambient_dim()
            )));
        }
        Ok(GrassmannPoint { k, n, gamma })
    }
    pub fn gamma(&self) -> &Subspace<F> {
        &self.gamma
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
}

/// The `t x s(k+1)` matrix of `T* -> Hom(Gamma, S*)`; column `(a, l)` holds
/// `sum_j phi[i][a,j] u_l[j]` for the echelon basis `u_l` of the point.
pub fn fiber_map<F: Field>(sm: &SteinerMap<F>, p: &GrassmannPoint<F>) -> Result<Matrix<F>> {
    if p.k != sm.k || p.n != sm.n {
        return Err(Error::DimensionMismatch(format!(
            "point of G({},{}) for a map on G({},{})",
            p.k, p.n, sm.k, sm.n
        )));
    }
    if p.gamma.field() != sm.field() {
        return Err(Error::FieldMismatch("point and map live over different fields".into()));
    }
    Ok(fiber_matrix(sm, p.gamma.basis()))
}

fn fiber_matrix<F: Field>(sm: &SteinerMap<F>, u: &Matrix<F>) -> Matrix<F> {
    let f = sm.field();
    let (s, v, m) = (sm.s, sm.n + 1, u.rows());
    let mut out = Matrix::zeros(f.clone(), sm.t, s * m);
    for i in 0..sm.t {
        let row = sm.phi.row(i);
        for a in 0..s {
            for l in 0..m {
                let ul = u.row(l);
                let mut acc = f.zero();
                for j in 0..v {
                    acc = f.mul_add(&acc, &row[a * v + j], &ul[j]);
                }
                out.set(i, a * m + l, acc);
            }
        }
    }
    out
}

fn surjective_at<F: Field>(sm: &SteinerMap<F>, u: &Matrix<F>) -> bool {
    sm.t >= sm.s * u.rows() && fiber_matrix(sm, u).rank() == sm.s * u.rows()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every point of `G(k,n)(F_p)`; `prime` defaults to the map's own field.
    Exhaustive { prime: Option<u64> },
    /// `trials` random points, over `F_p` when `prime` is given, else over the map's field.
    Sampled { prime: Option<u64>, trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PkVerdict {
    Valid { field: FieldSpec, points: u128 },
    /// `witness` holds the echelon basis of a failing point, as entry strings.
    Invalid { field: FieldSpec, witness: Vec<Vec<String>> },
}

impl PkVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PkVerdict::Valid { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            PkVerdict::Valid { field, points } => json!({
                "verdict": "valid",
                "field": field.to_string(),
                "points": points.to_string(),
            }),
            PkVerdict::Invalid { field, witness } => json!({
                "verdict": "invalid",
                "field": field.to_string(),
                "witness": witness,
            }),
        }
    }
}

fn witness_strings<F: Field>(p: &GrassmannPoint<F>) -> Vec<Vec<String>> {
    p.gamma
        .basis_vecs()
        .iter()
        .map(|r| r.iter().map(|x| p.gamma.field().elem_to_string(x)).collect())
        .collect()
}

/// The bundle condition over the algebraic closure of `F_p`: no nonzero
/// element of `Im(phi)`'s annihilator, viewed as an `s x (n+1)` matrix, has
/// rank at most `k+1`.
pub fn valid_over_closure(sm: &SteinerMap<PrimeField>) -> Result<bool> {
    let ann = sm.image().annihilator();
    if ann.dim() == 0 {
        return Ok(true);
    }
    let (s, v) = (sm.s, sm.v_dim());
    if s.min(v) <= sm.k + 1 {
        return Ok(false);
    }
    let f = *sm.field();
    let per_var: Vec<Matrix<PrimeField>> = (0..ann.dim())
        .map(|r| Matrix::new(f, s, v, ann.basis_vec(r).to_vec()))
        .collect::<Result<_>>()?;
    let minors = linear_minors(&f, &per_var, sm.k + 2, MINOR_BUDGET)?;
    projectively_empty(f, ann.dim(), &minors)
}

/// First point of `G(k,n)(F_p)` (in enumeration order) where the fiber map drops rank.
pub fn find_violation_exhaustive(
    sm: &SteinerMap<PrimeField>,
    budget: u128,
) -> Result<Option<GrassmannPoint<PrimeField>>> {
    let f = *sm.field();
    let points = grassmann::subspaces(f, sm.n + 1, sm.k + 1, budget)?;
    Ok(points
        .into_par_iter()
        .find_first(|g| !surjective_at(sm, g.basis()))
        .map(|g| GrassmannPoint { k: sm.k, n: sm.n, gamma: g }))
}

/// Random points of `G(k,n)(F)`; returns the first failing one.
pub fn find_violation_sampled<F: Field>(sm: &SteinerMap<F>, trials: usize, seed: u64) -> Option<GrassmannPoint<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = sm.field().clone();
    for _ in 0..trials {
        let g = grassmann::random_subspace(&f, sm.n + 1, sm.k + 1, &mut rng, |r| f.random_elem(r));
        if !surjective_at(sm, g.basis()) {
            return Some(GrassmannPoint { k: sm.k, n: sm.n, gamma: g });
        }
    }
    None
}

/// Property `P_k`: the fiber map has rank `s(k+1)` at every checked point.
pub fn check_pk<F: Field>(sm: &SteinerMap<F>, mode: &CheckMode) -> Result<PkVerdict> {
    check_pk_with_budget(sm, mode, DEFAULT_BUDGET)
}

pub fn check_pk_with_budget<F: Field>(sm: &SteinerMap<F>, mode: &CheckMode, budget: u128) -> Result<PkVerdict> {
    match mode {
        CheckMode::Exhaustive { prime } => {
            let p = match (prime, sm.field().spec()) {
                (Some(p), _) => *p,
                (None, FieldSpec::PrimeField(p)) => p,
                (None, FieldSpec::Rationals) => {
                    return Err(Error::InvalidParameters(
                        "exhaustive checking over Q needs a reduction prime".into(),
                    ))
                }
            };
            let smp = sm.over_prime(p)?;
            let field = smp.field().spec();
            Ok(match find_violation_exhaustive(&smp, budget)? {
                None => PkVerdict::Valid { field, points: grassmann::gaussian_binomial(sm.n + 1, sm.k + 1, p) },
                Some(w) => PkVerdict::Invalid { field, witness: witness_strings(&w) },
            })
        }
        CheckMode::Sampled { prime, trials, seed } => {
            let sampled = |w: Option<Vec<Vec<String>>>, field: FieldSpec| match w {
                None => PkVerdict::Valid { field, points: *trials as u128 },
                Some(witness) => PkVerdict::Invalid { field, witness },
            };
            match prime {
                Some(p) => {
                    let smp = sm.over_prime(*p)?;
                    let w = find_violation_sampled(&smp, *trials, *seed).map(|g| witness_strings(&g));
                    Ok(sampled(w, smp.field().spec()))
                }
                None => {
                    let w = find_violation_sampled(sm, *trials, *seed).map(|g| witness_strings(&g));
                    Ok(sampled(w, sm.field().spec()))
                }
            }
        }
    }
}

/// Canonical echelon basis of `Im(phi)` and the number `p = t - t'` of trivial summands split off.
pub fn reduce<F: Field>(sm: &SteinerMap<F>) -> (SteinerMap<F>, usize) {
    let img = sm.image();
    let t0 = img.dim();
    if t0 == 0 {
        // Nothing survives: keep a single zero row so the type stays well formed.
        let phi = Matrix::zeros(sm.field().clone(), 1, sm.s * (sm.n + 1));
        return (SteinerMap { t: 1, phi, ..sm.clone() }, sm.t - 1);
    }
    let reduced = SteinerMap { t: t0, phi: img.basis().clone(), ..sm.clone() };
    (reduced, sm.t - t0)
}

/// Transposes every row tensor: a map on `G(k, s-1)` with `s' = n+1`.
pub fn dualize<F: Field>(sm: &SteinerMap<F>) -> Result<SteinerMap<F>> {
    if sm.s < sm.k + 2 {
        return Err(Error::InvalidParameters(format!(
            "dualizing needs s >= k+2 (s = {}, k = {}): G({}, {}) is degenerate",
            sm.s,
            sm.k,
            sm.k,
            sm.s as i64 - 1
        )));
    }
    let v = sm.n + 1;
    let f = sm.field();
    let mut phi = Matrix::zeros(f.clone(), sm.t, sm.s * v);
    for i in 0..sm.t {
        for a in 0..sm.s {
            for j in 0..v {
                phi.set(i, j * sm.s + a, sm.phi.get(i, a * v + j).clone());
            }
        }
    }
    SteinerMap::new(sm.k, sm.s - 1, v, sm.t, phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialRangeReport {
    pub reduced_t: usize,
    pub trivial_summands: usize,
    pub full_dim: usize,
    pub verdict: PkVerdict,
    /// `true` unless the reduced map is valid yet `T0*` is a proper subspace.
    pub pass: bool,
}

impl TrivialRangeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "reduced_t": self.reduced_t,
            "trivial_summands": self.trivial_summands,
            "full_dim": self.full_dim,
            "check": self.verdict.to_json(),
            "pass": self.pass,
        })
    }
}

/// For `s <= k+1` a valid reduced map must be all of `S* (x) V`.
pub fn verify_trivial_range<F: Field>(sm: &SteinerMap<F>, mode: &CheckMode) -> Result<TrivialRangeReport> {
    if sm.s > sm.k + 1 {
        return Err(Error::InvalidParameters(format!(
            "trivial range needs s <= k+1 (s = {}, k = {})",
            sm.s, sm.k
        )));
    }
    let (red, p) = reduce(sm);
    let verdict = check_pk(&red, mode)?;
    let full_dim = sm.s * (sm.n + 1);
    let pass = !verdict.is_valid() || red.t == full_dim;
    Ok(TrivialRangeReport { reduced_t: red.t, trivial_summands: p, full_dim, verdict, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// s=1, k=0, n=2: phi spans the hyperplane annihilated by `w`.
    fn hyperplane_map(p: u64) -> SteinerMap<PrimeField> {
        let phi = Matrix::from_i64(f(p), &[&[1, 0, 0], &[0, 1, 0]]);
        SteinerMap::new(0, 2, 1, 2, phi).unwrap()
    }

    #[test]
    fn shape_is_validated() {
        let phi = Matrix::zeros(f(3), 2, 5);
        assert!(SteinerMap::new(0, 2, 2, 2, phi).is_err());
        assert!(SteinerMap::full(f(3), 2, 2, 1).is_err());
    }

    #[test]
    fn full_map_is_valid_everywhere() {
        let sm = SteinerMap::full(f(3), 1, 3, 2).unwrap();
        let v = check_pk(&sm, &CheckMode::Exhaustive { prime: None }).unwrap();
        assert_eq!(v, PkVerdict::Valid { field: FieldSpec::PrimeField(3), points: 130 });
    }

    #[test]
    fn hyperplane_map_fails_at_annihilator_point() {
        let sm = hyperplane_map(5);
        let w = find_violation_exhaustive(&sm, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(w.gamma().basis_vecs(), vec![vec![0, 0, 1]]);
        let fm = fiber_map(&sm, &w).unwrap();
        assert_eq!(fm.rank(), 0);
    }

    #[test]
    fn exhaustive_over_q_needs_a_prime() {
        let sm = SteinerMap::full(Rationals, 0, 1, 1).unwrap();
        assert!(check_pk(&sm, &CheckMode::Exhaustive { prime: None }).is_err());
        assert!(check_pk(&sm, &CheckMode::Exhaustive { prime: Some(7) }).unwrap().is_valid());
    }

    #[test]
    fn budget_error_surfaces() {
        let sm = SteinerMap::full(f(5), 1, 3, 1).unwrap();
        let r = check_pk_with_budget(&sm, &CheckMode::Exhaustive { prime: None }, 10);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn reduce_strips_zero_rows() {
        let mut rows = SteinerMap::full(f(5), 0, 1, 1).unwrap().phi().row_vecs();
        rows.push(vec![0, 0]);
        rows.push(vec![0, 0]);
        let sm = SteinerMap::new(0, 1, 1, 4, Matrix::from_rows(f(5), 2, rows).unwrap()).unwrap();
        let (red, p) = reduce(&sm);
        assert_eq!((red.t(), p), (2, 2));
        assert_eq!(reduce(&red), (red.clone(), 0));
    }

    #[test]
    fn dualize_is_an_involution_and_rejects_small_s() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sm = SteinerMap::random(f(7), 0, 2, 3, 5, &mut rng).unwrap();
        let d = dualize(&sm).unwrap();
        assert_eq!((d.k(), d.n(), d.s(), d.t()), (0, 2, 3, 5));
        assert_eq!(dualize(&d).unwrap(), sm);
        assert!(dualize(&SteinerMap::full(f(7), 1, 3, 2).unwrap()).is_err());
    }

    #[test]
    fn dual_of_full_map_is_full() {
        let sm = SteinerMap::full(Rationals, 0, 2, 2).unwrap();
        let d = dualize(&sm).unwrap();
        assert_eq!(d.image(), SteinerMap::full(Rationals, 0, 1, 3).unwrap().image());
    }

    #[test]
    fn trivial_range_examples() {
        let mode = CheckMode::Exhaustive { prime: Some(3) };
        let full = SteinerMap::full(Rationals, 1, 3, 1).unwrap();
        let r = verify_trivial_range(&full, &mode).unwrap();
        assert!(r.pass && r.verdict.is_valid() && r.reduced_t == 4);
        let phi = Matrix::from_i64(Rationals, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let proper = SteinerMap::new(1, 3, 1, 3, phi).unwrap();
        let r = verify_trivial_range(&proper, &mode).unwrap();
        assert!(r.pass && !r.verdict.is_valid());
        assert!(verify_trivial_range(&SteinerMap::full(Rationals, 0, 2, 2).unwrap(), &mode).is_err());
    }

    #[test]
    fn json_round_trip_both_fields() {
        let sm = SteinerMap::full(f(5), 0, 1, 2).unwrap();
        let any = AnySteinerMap::from_json(&sm.to_json()).unwrap();
        assert_eq!(any, AnySteinerMap::Prime(sm));
        let q = SteinerMap::full(Rationals, 0, 1, 1).unwrap();
        assert_eq!(AnySteinerMap::from_json(&q.to_json()).unwrap(), AnySteinerMap::Rational(q));
    }

    #[test]
    fn json_schema_rejects_wrong_t() {
        let mut v = SteinerMap::full(Rationals, 0, 1, 1).unwrap().to_json();
        v["t"] = json!(3);
        assert!(matches!(AnySteinerMap::from_json(&v), Err(Error::Schema(_))));
    }
}
