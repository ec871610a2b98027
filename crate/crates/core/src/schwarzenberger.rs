//! Steiner maps from multiplication of sections: `phi` is the transpose of
//! `H^0(L) (x) H^0(M) -> H^0(L (x) M)` for the families built here.
//!
//! Monomial bases are ordered lexicographically with the exponent of `x0`
//! descending, so on `P^1` the index of a monomial is its `x1` exponent.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::grassmann::{self, gaussian_binomial};
use crate::jumping::{jumping_enumerate, maximality_report, sigma_enumerate, JumpingPair, MaximalityReport};
use crate::linalg::{normalize_projective, Matrix, Subspace};
use crate::steiner::{check_pk, CheckMode, PkVerdict, SteinerMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `(P^1, O(d), O(n))`.
    Rnc { d: usize, n: usize },
    /// `(P^2, O(1), O(1))`.
    Veronese,
    /// `(P^1, E(-1), O(1))` with `E = sum O(a_i)`.
    SplitP1 { degrees: Vec<usize> },
    /// `(P^{k+1}, O(1), E^dual(-1))`, `E` the kernel of the given surjection
    /// `S* (x) V -> F^q` (so `T* = ker`), with `s = k+2`.
    CaseIII { k: usize, n: usize, surjection: Matrix<Rationals> },
    /// `(P^k, O(1), T(-1))`.
    TangentTwist { k: usize },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Rnc { .. } => "rnc",
            FamilySpec::Veronese => "veronese",
            FamilySpec::SplitP1 { .. } => "split_p1",
            FamilySpec::CaseIII { .. } => "case3",
            FamilySpec::TangentTwist { .. } => "tangent_twist",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FamilySpec::Rnc { d, n } => json!({"family": "rnc", "d": d, "n": n}),
            FamilySpec::Veronese => json!({"family": "veronese"}),
            FamilySpec::SplitP1 { degrees } => json!({"family": "split_p1", "degrees": degrees}),
            FamilySpec::CaseIII { k, n, surjection } => {
                json!({"family": "case3", "k": k, "n": n, "surjection": surjection.to_json()})
            }
            FamilySpec::TangentTwist { k } => json!({"family": "tangent_twist", "k": k}),
        }
    }

    /// Parses a family spec. A `case3` spec may give `"t"` and `"seed"` instead
    /// of an explicit `"surjection"`; the surjection is then drawn with
    /// [`random_case3_surjection`] so that the map is valid over `primes`.
    pub fn from_json(v: &Value, primes: &[u64]) -> Result<Self> {
        let count = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Schema(format!("family spec needs a nonnegative integer {key:?}")))
        };
        match v.get("family").and_then(Value::as_str) {
            Some("rnc") => Ok(FamilySpec::Rnc { d: count("d")?, n: count("n")? }),
            Some("veronese") => Ok(FamilySpec::Veronese),
            Some("split_p1") => {
                let degrees = v
                    .get("degrees")
                    .and_then(Value::as_array)
                    .and_then(|a| a.iter().map(|x| x.as_u64().map(|u| u as usize)).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| Error::Schema("split_p1 needs a \"degrees\" list".into()))?;
                Ok(FamilySpec::SplitP1 { degrees })
            }
            Some("case3") => {
                let (k, n) = (count("k")?, count("n")?);
                let surjection = match v.get("surjection") {
                    Some(m) => Matrix::from_json(Rationals, m)?,
                    None => {
                        let seed = v.get("seed").and_then(Value::as_u64).unwrap_or(0);
                        random_case3_surjection(k, n, count("t")?, seed, primes)?
                    }
                };
                Ok(FamilySpec::CaseIII { k, n, surjection })
            }
            Some("tangent_twist") => Ok(FamilySpec::TangentTwist { k: count("k")? }),
            other => Err(Error::Schema(format!(
                "unknown family {other:?}; expected rnc, veronese, split_p1, case3 or tangent_twist"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwTriple {
    pub family: String,
    pub k: usize,
    /// `X = P^base_dim`.
    pub base_dim: usize,
    pub l_basis: Vec<String>,
    pub m_basis: Vec<String>,
    pub lm_basis: Vec<String>,
    /// `s(n+1) x t`: row `(a, j)` is the product of `l_a` and `m_j`.
    pub mult: Matrix<Rationals>,
    /// Set when the section counts do not match the family's advertised target.
    pub note: Option<String>,
}

impl SchwTriple {
    pub fn from_parts(
        family: &str,
        k: usize,
        base_dim: usize,
        l_basis: Vec<String>,
        m_basis: Vec<String>,
        lm_basis: Vec<String>,
        mult: Matrix<Rationals>,
    ) -> Result<Self> {
        let (s, v, t) = (l_basis.len(), m_basis.len(), lm_basis.len());
        if mult.rows() != s * v || mult.cols() != t {
            return Err(Error::DimensionMismatch(format!(
                "multiplication is {}x{}, expected h0(L)h0(M) x h0(LM) = {}x{t}",
                mult.rows(),
                mult.cols(),
                s * v
            )));
        }
        if v < k + 2 {
            return Err(Error::InvalidParameters(format!("h0(M) = {v} leaves no G({k}, {})", v as i64 - 1)));
        }
        Ok(SchwTriple {
            family: family.to_string(),
            k,
            base_dim,
            l_basis,
            m_basis,
            lm_basis,
            mult,
            note: None,
        })
    }

    pub fn s(&self) -> usize {
        self.l_basis.len()
    }
    pub fn n(&self) -> usize {
        self.m_basis.len() - 1
    }
    pub fn t(&self) -> usize {
        self.lm_basis.len()
    }

    /// `phi = mult^T`, without the injectivity check.
    pub fn steiner_map(&self) -> SteinerMap<Rationals> {
        SteinerMap::new(self.k, self.n(), self.s(), self.t(), self.mult.transpose()).expect("shape checked at construction")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "base": format!("P^{}", self.base_dim),
            "k": self.k,
            "n": self.n(),
            "s": self.s(),
            "t": self.t(),
            "l_basis": self.l_basis,
            "m_basis": self.m_basis,
            "lm_basis": self.lm_basis,
            "mult": self.mult.to_json(),
            "note": self.note,
        })
    }
}

/// Exponent vectors of degree `d` in `vars` variables, `x0` exponent descending.
pub fn monomials(vars: usize, d: usize) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for mut rest in monomials(vars - 1, d - e0) {
            rest.insert(0, e0 as u32);
            out.push(rest);
        }
    }
    out
}

pub fn monomial_label(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| if x == 1 { format!("x{i}") } else { format!("x{i}^{x}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Multiplication `Sym^a (x) Sym^b -> Sym^{a+b}` in `vars` variables.
fn monomial_mult(vars: usize, a: usize, b: usize) -> (Vec<Vec<u32>>, Vec<Vec<u32>>, Vec<Vec<u32>>, Matrix<Rationals>) {
    let (la, lb, lab) = (monomials(vars, a), monomials(vars, b), monomials(vars, a + b));
    let index: BTreeMap<&Vec<u32>, usize> = lab.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let q = Rationals;
    let mut mult = Matrix::zeros(q, la.len() * lb.len(), lab.len());
    for (i, x) in la.iter().enumerate() {
        for (j, y) in lb.iter().enumerate() {
            let e: Vec<u32> = x.iter().zip(y).map(|(p, r)| p + r).collect();
            mult.set(i * lb.len() + j, index[&e], q.one());
        }
    }
    (la, lb, lab, mult)
}

fn labels(es: &[Vec<u32>]) -> Vec<String> {
    es.iter().map(|e| monomial_label(e)).collect()
}

pub fn build_triple(spec: &FamilySpec) -> Result<SchwTriple> {
    let q = Rationals;
    match spec {
        FamilySpec::Rnc { d, n } => {
            if *n == 0 {
                return Err(Error::InvalidParameters("rnc needs n >= 1".into()));
            }
            let (la, lb, lab, mult) = monomial_mult(2, *d, *n);
            SchwTriple::from_parts("rnc", 0, 1, labels(&la), labels(&lb), labels(&lab), mult)
        }
        FamilySpec::Veronese => {
            let (la, lb, lab, mult) = monomial_mult(3, 1, 1);
            SchwTriple::from_parts("veronese", 0, 2, labels(&la), labels(&lb), labels(&lab), mult)
        }
        FamilySpec::SplitP1 { degrees } => {
            if degrees.is_empty() || degrees.iter().any(|&a| a == 0) {
                return Err(Error::InvalidParameters("split_p1 needs a nonempty list of degrees a_i >= 1".into()));
            }
            let blocks: Vec<_> = degrees.iter().map(|&a| monomial_mult(2, a - 1, 1)).collect();
            let s: usize = blocks.iter().map(|b| b.0.len()).sum();
            let t: usize = blocks.iter().map(|b| b.2.len()).sum();
            let mut mult = Matrix::zeros(q, s * 2, t);
            let (mut l_basis, mut lm_basis) = (Vec::new(), Vec::new());
            let (mut row0, mut col0) = (0, 0);
            for (bi, (la, _, lab, m)) in blocks.iter().enumerate() {
                for a in 0..la.len() {
                    for j in 0..2 {
                        for c in 0..lab.len() {
                            mult.set((row0 + a) * 2 + j, col0 + c, m.get(a * 2 + j, c).clone());
                        }
                    }
                }
                l_basis.extend(la.iter().map(|e| format!("{}[{bi}]", monomial_label(e))));
                lm_basis.extend(lab.iter().map(|e| format!("{}[{bi}]", monomial_label(e))));
                row0 += la.len();
                col0 += lab.len();
            }
            SchwTriple::from_parts("split_p1", 0, 1, l_basis, vec!["x0".into(), "x1".into()], lm_basis, mult)
        }
        FamilySpec::CaseIII { k, n, surjection } => {
            let s = k + 2;
            let v = n + 1;
            if k >= n {
                return Err(Error::InvalidParameters(format!("G({k},{n}) needs k < n")));
            }
            if surjection.cols() != s * v {
                return Err(Error::DimensionMismatch(format!(
                    "surjection must have s(n+1) = {} columns, got {}",
                    s * v,
                    surjection.cols()
                )));
            }
            if surjection.rank() != surjection.rows() {
                return Err(Error::InvalidParameters("case3 kernel data is not surjective".into()));
            }
            let ker = surjection.kernel();
            if ker.dim() == 0 {
                return Err(Error::InvalidParameters("case3 kernel is zero".into()));
            }
            let l_basis = (0..s).map(|i| format!("x{i}")).collect();
            let m_basis = (0..v).map(|j| format!("m{j}")).collect();
            let lm_basis = (0..ker.dim()).map(|c| format!("w{c}")).collect();
            SchwTriple::from_parts("case3", *k, k + 1, l_basis, m_basis, lm_basis, ker.basis().transpose())
        }
        FamilySpec::TangentTwist { k } => {
            let k = *k;
            if k == 0 {
                return Err(Error::InvalidParameters(
                    "tangent_twist on P^0: h0(T(-1)) = 1 gives no Grassmannian".into(),
                ));
            }
            let m = k + 1;
            // H^0(T) = gl(m) / <identity>; E_kk is dropped and rewritten as -sum_{i<k} E_ii
            let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&c| c != (k, k)).collect();
            let col: BTreeMap<(usize, usize), usize> = cells.iter().enumerate().map(|(c, &ij)| (ij, c)).collect();
            let mut mult = Matrix::zeros(q, m * m, cells.len());
            for i in 0..m {
                for j in 0..m {
                    if (i, j) == (k, k) {
                        for d in 0..k {
                            mult.set(i * m + j, col[&(d, d)], q.from_i64(-1));
                        }
                    } else {
                        mult.set(i * m + j, col[&(i, j)], q.one());
                    }
                }
            }
            let l_basis = (0..m).map(|i| format!("x{i}")).collect();
            let m_basis = (0..m).map(|j| format!("d{j}")).collect();
            let lm_basis = cells.iter().map(|(i, j)| format!("x{i}*d{j}")).collect();
            let mut tr = SchwTriple::from_parts("tangent_twist", k - 1, k, l_basis, m_basis, lm_basis, mult)?;
            tr.note = Some(format!(
                "T(-1) on P^{k} has rank {k} and h0 = {m}, so the triple lives on G({}, {k}), not G({k}, {})",
                k - 1,
                k + 1
            ));
            Ok(tr)
        }
    }
}

/// `phi = mult^T` after checking injectivity of `H^0(L) (x) Delta -> H^0(L (x) M)`
/// on the `(k+1)`-subspaces `Delta` visited by `mode`.
pub fn to_steiner(tr: &SchwTriple, mode: &CheckMode) -> Result<SteinerMap<Rationals>> {
    let sm = tr.steiner_map();
    match check_pk(&sm, mode)? {
        PkVerdict::Valid { .. } => Ok(sm),
        PkVerdict::Invalid { witness, .. } => Err(Error::InjectivityViolation { dim: tr.k + 1, witness }),
    }
}

/// Seeded surjection `S* (x) V -> F^q` with `q = s(n+1) - t`, `s = k+2`,
/// redrawn until it stays surjective and gives a valid map modulo every prime.
pub fn random_case3_surjection(k: usize, n: usize, t: usize, seed: u64, primes: &[u64]) -> Result<Matrix<Rationals>> {
    let s = k + 2;
    let dim = s * (n + 1);
    if k >= n {
        return Err(Error::InvalidParameters(format!("G({k},{n}) needs k < n")));
    }
    if t < s * (k + 1) || t >= dim {
        return Err(Error::InvalidParameters(format!(
            "case3 needs s(k+1) = {} <= t < s(n+1) = {dim}, got t = {t}",
            s * (k + 1)
        )));
    }
    let q = dim - t;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let data: Vec<i64> = (0..q * dim).map(|_| rng.gen_range(-3..=3)).collect();
        let rows: Vec<&[i64]> = data.chunks(dim).collect();
        let m = Matrix::from_i64(Rationals, &rows);
        if m.rank() != q {
            continue;
        }
        let spec = FamilySpec::CaseIII { k, n, surjection: m.clone() };
        let sm = build_triple(&spec)?.steiner_map();
        let mut ok = true;
        for &p in primes {
            let red = m.reduce_mod(PrimeField::new(p)?)?;
            if red.rank() != q || !check_pk(&sm, &CheckMode::Exhaustive { prime: Some(p) })?.is_valid() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(m);
        }
    }
    Err(Error::InvalidParameters(format!("no valid case3 surjection found for k={k}, n={n}, t={t}")))
}

/// All `(a, Gamma)` in `P(S*) x G(k,n)` over `F_p` with `a (x) Gamma` inside `Im(phi)`,
/// found by testing every pair.
pub fn brute_force_pairs(sm: &SteinerMap<PrimeField>, budget: u128) -> Result<BTreeSet<(Vec<u64>, Vec<Vec<u64>>)>> {
    let f = *sm.field();
    let p = f.p();
    let needed = gaussian_binomial(sm.s(), 1, p) * gaussian_binomial(sm.v_dim(), sm.k() + 1, p);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let img = sm.image();
    let points = grassmann::subspaces(f, sm.s(), 1, budget)?;
    let planes = grassmann::subspaces(f, sm.v_dim(), sm.k() + 1, budget)?;
    let mut out = BTreeSet::new();
    for a in &points {
        for g in &planes {
            let rows = g.basis_vecs().iter().map(|x| crate::jumping::tensor_vec(&f, a.basis_vec(0), x)).collect();
            let prod = Subspace::from_rows(f, sm.s() * sm.v_dim(), rows)?;
            if img.contains_subspace(&prod)? {
                out.insert((a.basis_vec(0).to_vec(), g.basis_vecs()));
            }
        }
    }
    Ok(out)
}

pub fn pair_key(jp: &JumpingPair<PrimeField>) -> (Vec<u64>, Vec<Vec<u64>>) {
    (jp.a.basis_vec(0).to_vec(), jp.gamma.basis_vecs())
}

/// `(l0^d, l0^{d-1} l1, ..., l1^d)` for every point of `P^1(F_p)`, normalized.
pub fn rnc_points(d: usize, p: u64) -> Result<BTreeSet<Vec<u64>>> {
    let f = PrimeField::new(p)?;
    let pts = grassmann::projective_points(f, 2, grassmann::DEFAULT_BUDGET)?;
    Ok(pts
        .iter()
        .map(|l| {
            let v: Vec<u64> = (0..=d as u64).map(|i| f.mul(&f.pow(l[0], d as u64 - i), &f.pow(l[1], i))).collect();
            normalize_projective(&f, &v).expect("a power of a nonzero point is nonzero")
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub spec: FamilySpec,
    pub k: usize,
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub predicates: BTreeMap<String, bool>,
    pub locus: MaximalityReport,
    pub note: Option<String>,
}

impl FamilyReport {
    pub fn pass(&self) -> bool {
        self.predicates.values().all(|&b| b)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.predicates.iter().filter(|(_, &b)| !b).map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.spec.name(),
            "spec": self.spec.to_json(),
            "k": self.k,
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "predicates": self.predicates,
            "locus": self.locus.to_json(),
            "note": self.note,
            "pass": self.pass(),
        })
    }
}

/// Builds the family's map and checks it: reduced, valid over each prime,
/// maximal jumping locus, and a family-specific description of the locus.
pub fn verify_family(spec: &FamilySpec, primes: &[u64], budget: u128) -> Result<FamilyReport> {
    if primes.is_empty() {
        return Err(Error::InvalidParameters("verify_family needs at least one prime".into()));
    }
    let tr = build_triple(spec)?;
    let sm = tr.steiner_map();
    let (k, n, s, t) = (sm.k(), sm.n(), sm.s(), sm.t());
    let mut pred = BTreeMap::new();
    pred.insert("reduced".to_string(), sm.is_reduced());
    for &p in primes {
        let valid = check_pk(&sm, &CheckMode::Exhaustive { prime: Some(p) })?.is_valid();
        pred.insert(format!("valid_F{p}"), valid);
    }
    let locus = maximality_report(&sm, primes, budget)?;
    pred.insert("maximal".to_string(), locus.maximal);

    match spec {
        FamilySpec::Rnc { d, .. } => {
            pred.insert("t_eq_n_plus_s".into(), t == n + s);
            for &p in primes {
                let sigma: BTreeSet<Vec<u64>> =
                    sigma_enumerate(&sm, p, budget)?.iter().map(|fd| fd.point().to_vec()).collect();
                let rnc = rnc_points(*d, p)?;
                pred.insert(format!("sigma_is_rnc_F{p}"), sigma == rnc && sigma.len() as u64 == p + 1);
            }
        }
        FamilySpec::Veronese => {
            pred.insert("type_0_2_3_6".into(), (k, n, s, t) == (0, 2, 3, 6));
            for &p in primes {
                let sigma = sigma_enumerate(&sm, p, budget)?;
                pred.insert(format!("sigma_is_plane_F{p}"), sigma.len() as u64 == p * p + p + 1);
                let pairs = jumping_enumerate(&sm, p, budget)?;
                let gammas: BTreeSet<Vec<Vec<u64>>> = pairs.iter().map(|jp| jp.gamma.basis_vecs()).collect();
                let bijective = pairs.len() == sigma.len() && gammas.len() == pairs.len();
                pred.insert(format!("sigma_to_j_bijective_F{p}"), bijective);
                pred.insert(format!("gamma_equals_a_F{p}"), pairs.iter().all(|jp| jp.gamma == jp.a));
            }
        }
        FamilySpec::SplitP1 { degrees } => {
            pred.insert("base_case_k0_n1".into(), k == 0 && n == 1);
            pred.insert("t_eq_s_plus_summands".into(), t == s + degrees.len());
        }
        FamilySpec::CaseIII { .. } => {
            pred.insert("s_eq_k_plus_2".into(), s == k + 2);
            for &p in primes {
                let smp = sm.over_prime(p)?;
                let sigma = sigma_enumerate(&smp, p, budget)?;
                let bundle_count: u128 = sigma.iter().map(|fd| gaussian_binomial(fd.fiber_dim(), k + 1, p)).sum();
                let enumerated: BTreeSet<_> = jumping_enumerate(&smp, p, budget)?.iter().map(pair_key).collect();
                let brute = brute_force_pairs(&smp, budget)?;
                pred.insert(
                    format!("grassmann_bundle_F{p}"),
                    enumerated == brute && brute.len() as u128 == bundle_count,
                );
            }
        }
        FamilySpec::TangentTwist { .. } => {}
    }
    Ok(FamilyReport { spec: spec.clone(), k, n, s, t, predicates: pred, locus, note: tr.note.clone() })
}
